//! Projective modules as sums of P(i), maps between them as matrices of
//! algebra elements, projective covers and resolutions, the Nakayama
//! functor and the Auslander-Reiten translate.

use std::sync::Arc;

use serde::Serialize;

use crate::linalg::{Matrix, Subspace};
use crate::module::{
    dual_over, injective, kernel, projective, radical_spaces, socle_spaces, submodule, Alg, ModuleMap,
    Representation,
};

/// P(v_1) ⊕ ... ⊕ P(v_k).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjSum {
    pub vertices: Vec<usize>,
}

impl ProjSum {
    pub fn new(vertices: Vec<usize>) -> Self {
        ProjSum { vertices }
    }
    pub fn empty() -> Self {
        ProjSum { vertices: vec![] }
    }
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn concat(&self, other: &ProjSum) -> ProjSum {
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices);
        ProjSum { vertices: v }
    }

    pub fn representation(&self, alg: &Alg) -> Representation {
        if self.vertices.is_empty() {
            return Representation::zero(alg.clone());
        }
        Representation::direct_sum(&self.vertices.iter().map(|&v| projective(alg, v)).collect::<Vec<_>>())
    }

    /// ν of this sum: the matching sum of indecomposable injectives.
    pub fn nakayama(&self, alg: &Alg) -> Representation {
        if self.vertices.is_empty() {
            return Representation::zero(alg.clone());
        }
        Representation::direct_sum(&self.vertices.iter().map(|&v| injective(alg, v)).collect::<Vec<_>>())
    }

    /// Offset of summand `r` inside the vertex-`s` space of the representation.
    pub fn summand_offsets(&self, alg: &Alg, s: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut acc = 0;
        for &v in &self.vertices {
            out.push(acc);
            acc += alg.basis_between(v, s).len();
        }
        out
    }

    /// Split a vector of the vertex-`s` space into algebra elements, one
    /// per summand (element of e_{v_r} A e_s).
    pub fn split_vector(&self, alg: &Alg, s: usize, x: &[u32]) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.len());
        let mut off = 0;
        for &v in &self.vertices {
            let idx = alg.basis_between(v, s);
            let mut e = vec![0u32; alg.dim()];
            for (k, &b) in idx.iter().enumerate() {
                e[b] = x[off + k];
            }
            off += idx.len();
            out.push(e);
        }
        out
    }

    /// Inverse of `split_vector`.
    pub fn join_elements(&self, alg: &Alg, s: usize, elems: &[Vec<u32>]) -> Vec<u32> {
        let mut out = Vec::new();
        for (&v, e) in self.vertices.iter().zip(elems) {
            for b in alg.basis_between(v, s) {
                out.push(e[b]);
            }
        }
        out
    }

    pub fn to_string(&self, alg: &Alg) -> String {
        if self.vertices.is_empty() {
            return "0".into();
        }
        self.vertices.iter().map(|&v| format!("P({})", alg.vertex_name(v))).collect::<Vec<_>>().join(" + ")
    }
}

/// A map of projective sums; `entries[r][c]` is the element of
/// e_{target_r} A e_{source_c} by which P(source_c) -> P(target_r) multiplies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub source: ProjSum,
    pub target: ProjSum,
    pub entries: Vec<Vec<Vec<u32>>>,
}

impl ProjMap {
    pub fn zero(alg: &Alg, source: ProjSum, target: ProjSum) -> ProjMap {
        let entries = vec![vec![vec![0u32; alg.dim()]; source.len()]; target.len()];
        ProjMap { source, target, entries }
    }

    pub fn identity(alg: &Alg, ps: &ProjSum) -> ProjMap {
        let mut m = ProjMap::zero(alg, ps.clone(), ps.clone());
        for (i, &v) in ps.vertices.iter().enumerate() {
            m.entries[i][i] = alg.vertex_element(v);
        }
        m
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &Alg, other: &ProjMap) -> ProjMap {
        let f = alg.field();
        let mut out = ProjMap::zero(alg, other.source.clone(), self.target.clone());
        for r in 0..self.target.len() {
            for c in 0..other.source.len() {
                let mut acc = vec![0u32; alg.dim()];
                for k in 0..self.source.len() {
                    let prod = alg.mul(&self.entries[r][k], &other.entries[k][c]);
                    f.axpy(&mut acc, 1, &prod);
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    pub fn add(&self, alg: &Alg, other: &ProjMap) -> ProjMap {
        let f = alg.field();
        let mut out = self.clone();
        for (ro, rb) in out.entries.iter_mut().zip(&other.entries) {
            for (e, b) in ro.iter_mut().zip(rb) {
                f.axpy(e, 1, b);
            }
        }
        out
    }

    pub fn scale(&self, alg: &Alg, c: u32) -> ProjMap {
        let f = alg.field();
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                f.scale_vec(e, c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(|&x| x == 0)
    }

    /// Flattened coordinates over the basis of all admissible entries.
    pub fn flatten(&self, alg: &Alg) -> Vec<u32> {
        let mut out = Vec::new();
        for (r, &t) in self.target.vertices.iter().enumerate() {
            for (c, &s) in self.source.vertices.iter().enumerate() {
                for k in alg.basis_between(t, s) {
                    out.push(self.entries[r][c][k]);
                }
            }
        }
        out
    }

    pub fn unflatten(alg: &Alg, source: &ProjSum, target: &ProjSum, v: &[u32]) -> ProjMap {
        let mut m = ProjMap::zero(alg, source.clone(), target.clone());
        let mut i = 0;
        for (r, &t) in target.vertices.iter().enumerate() {
            for (c, &s) in source.vertices.iter().enumerate() {
                for k in alg.basis_between(t, s) {
                    m.entries[r][c][k] = v[i];
                    i += 1;
                }
            }
        }
        m
    }

    /// Basis of Hom(source, target) as flattened-coordinate unit maps.
    pub fn hom_space_dim(alg: &Alg, source: &ProjSum, target: &ProjSum) -> usize {
        let mut n = 0;
        for &t in &target.vertices {
            for &s in &source.vertices {
                n += alg.basis_between(t, s).len();
            }
        }
        n
    }

    pub fn hom_basis(alg: &Alg, source: &ProjSum, target: &ProjSum) -> Vec<ProjMap> {
        let n = ProjMap::hom_space_dim(alg, source, target);
        (0..n)
            .map(|i| ProjMap::unflatten(alg, source, target, &crate::linalg::unit_vec(n, i)))
            .collect()
    }

    /// Restrict to the given source columns and target rows.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ProjMap {
        ProjMap {
            source: ProjSum::new(cols.iter().map(|&c| self.source.vertices[c]).collect()),
            target: ProjSum::new(rows.iter().map(|&r| self.target.vertices[r]).collect()),
            entries: rows.iter().map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect()).collect(),
        }
    }

    /// The induced module map between the representations.
    pub fn to_module_map(&self, alg: &Alg) -> ModuleMap {
        let f = alg.field();
        let n = alg.num_vertices();
        let blocks = (0..n)
            .map(|s| {
                let src_off = self.source.summand_offsets(alg, s);
                let tgt_off = self.target.summand_offsets(alg, s);
                let rows = self.target.vertices.iter().map(|&t| alg.basis_between(t, s).len()).sum();
                let cols = self.source.vertices.iter().map(|&v| alg.basis_between(v, s).len()).sum();
                let mut m = Matrix::zeros(f, rows, cols);
                for (c, &sv) in self.source.vertices.iter().enumerate() {
                    let qs = alg.basis_between(sv, s);
                    for (r, &tv) in self.target.vertices.iter().enumerate() {
                        let u = &self.entries[r][c];
                        if u.iter().all(|&x| x == 0) {
                            continue;
                        }
                        let targets = alg.basis_between(tv, s);
                        for (j, &q) in qs.iter().enumerate() {
                            let img = alg.mul(u, &crate::linalg::unit_vec(alg.dim(), q));
                            for (i, &t) in targets.iter().enumerate() {
                                if img[t] != 0 {
                                    m.set(tgt_off[r] + i, src_off[c] + j, img[t]);
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Read off a ProjMap from a module map between the representations.
    pub fn from_module_map(alg: &Alg, source: &ProjSum, target: &ProjSum, m: &ModuleMap) -> ProjMap {
        let mut out = ProjMap::zero(alg, source.clone(), target.clone());
        for (c, &sv) in source.vertices.iter().enumerate() {
            let off = source.summand_offsets(alg, sv)[c];
            let trivial = alg.basis_between(sv, sv).iter().position(|&k| alg.basis()[k].is_trivial()).unwrap();
            let img = m.blocks[sv].column(off + trivial);
            for (r, e) in target.split_vector(alg, sv, &img).into_iter().enumerate() {
                out.entries[r][c] = e;
            }
        }
        out
    }

    /// ν applied to this map: νP(source) -> νP(target) as a module map,
    /// φ ↦ φ(- · u) on each entry u.
    pub fn nakayama(&self, alg: &Alg) -> ModuleMap {
        let f = alg.field();
        let n = alg.num_vertices();
        let dual_offsets = |ps: &ProjSum, k: usize| -> (Vec<usize>, usize) {
            let mut out = Vec::new();
            let mut acc = 0;
            for &v in &ps.vertices {
                out.push(acc);
                acc += alg.basis_between(k, v).len();
            }
            (out, acc)
        };
        let blocks = (0..n)
            .map(|k| {
                let (so, scols) = dual_offsets(&self.source, k);
                let (to, trows) = dual_offsets(&self.target, k);
                let mut m = Matrix::zeros(f, trows, scols);
                for (r, &tv) in self.target.vertices.iter().enumerate() {
                    let rhos = alg.basis_between(k, tv);
                    for (c, &sv) in self.source.vertices.iter().enumerate() {
                        let u = &self.entries[r][c];
                        if u.iter().all(|&x| x == 0) {
                            continue;
                        }
                        let qs = alg.basis_between(k, sv);
                        for (i, &rho) in rhos.iter().enumerate() {
                            let prod = alg.mul(&crate::linalg::unit_vec(alg.dim(), rho), u);
                            for (j, &q) in qs.iter().enumerate() {
                                if prod[q] != 0 {
                                    m.set(to[r] + i, so[c] + j, prod[q]);
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap { blocks }
    }

    pub fn to_string(&self, alg: &Alg) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|e| alg.element_to_string(e)).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Module map from a projective sum determined by images of the generators:
/// `gens[c]` lies in X at vertex `source.vertices[c]`.
pub fn map_from_projective(alg: &Alg, source: &ProjSum, x: &Representation, gens: &[Vec<u32>]) -> ModuleMap {
    let f = alg.field();
    let n = alg.num_vertices();
    let blocks = (0..n)
        .map(|s| {
            let cols: usize = source.vertices.iter().map(|&v| alg.basis_between(v, s).len()).sum();
            let mut m = Matrix::zeros(f, x.dim_at(s), cols);
            let mut off = 0;
            for (c, &v) in source.vertices.iter().enumerate() {
                for q in alg.basis_between(v, s) {
                    let img = x.path_matrix(&alg.basis()[q]).mul_vec(&gens[c]);
                    for (i, &val) in img.iter().enumerate() {
                        m.set(i, off, val);
                    }
                    off += 1;
                }
            }
            m
        })
        .collect();
    ModuleMap { blocks }
}

/// x ∘ u for x: P(target) -> X given by generator images and u a ProjMap:
/// (x∘u)_c = Σ_r x_r · u_{rc}.
pub fn precompose_generators(alg: &Alg, x: &Representation, gens: &[Vec<u32>], u: &ProjMap) -> Vec<Vec<u32>> {
    let f = alg.field();
    u.source
        .vertices
        .iter()
        .enumerate()
        .map(|(c, &sv)| {
            let mut acc = vec![0u32; x.dim_at(sv)];
            for (r, &tv) in u.target.vertices.iter().enumerate() {
                let e = &u.entries[r][c];
                if e.iter().all(|&v| v == 0) {
                    continue;
                }
                let m = x.element_matrix(e, tv, sv);
                f.axpy(&mut acc, 1, &m.mul_vec(&gens[r]));
            }
            acc
        })
        .collect()
}

/// Generators of a projective cover: lifts of a basis of top(X), in vertex
/// order, as (vertex, vector).
pub fn top_generators(x: &Representation) -> Vec<(usize, Vec<u32>)> {
    let rad = radical_spaces(x);
    let mut out = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for c in r.complement_basis() {
            out.push((v, c));
        }
    }
    out
}

/// Projective cover P -> X.
pub fn projective_cover(x: &Representation) -> (ProjSum, ModuleMap) {
    let gens = top_generators(x);
    let ps = ProjSum::new(gens.iter().map(|(v, _)| *v).collect());
    let images: Vec<Vec<u32>> = gens.into_iter().map(|(_, g)| g).collect();
    let map = map_from_projective(x.algebra(), &ps, x, &images);
    (ps, map)
}

pub fn is_projective(x: &Representation) -> bool {
    let (ps, _) = projective_cover(x);
    ps.representation(x.algebra()).total_dim() == x.total_dim()
}

pub fn is_injective(x: &Representation) -> bool {
    let alg = x.algebra();
    let soc = socle_spaces(x);
    let env: usize = soc
        .iter()
        .enumerate()
        .map(|(v, s)| s.dim() * injective(alg, v).total_dim())
        .sum();
    env == x.total_dim()
}

/// Cover of a submodule K of rep(P) (given by vertex spaces) as a ProjMap Q -> P.
fn cover_of_subspaces(alg: &Alg, p: &ProjSum, prep: &Representation, spaces: &[Subspace]) -> ProjMap {
    let (k, incl) = submodule(prep, spaces);
    let gens = top_generators(&k);
    let q = ProjSum::new(gens.iter().map(|(v, _)| *v).collect());
    let mut out = ProjMap::zero(alg, q.clone(), p.clone());
    for (c, (v, g)) in gens.iter().enumerate() {
        let in_p = incl.blocks[*v].mul_vec(g);
        for (r, e) in p.split_vector(alg, *v, &in_p).into_iter().enumerate() {
            out.entries[r][c] = e;
        }
    }
    out
}

/// Minimal projective presentation P1 -f-> P0 -π-> X -> 0.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: ProjSum,
    pub p0: ProjSum,
    pub f: ProjMap,
    pub cover: ModuleMap,
}

pub fn minimal_presentation(x: &Representation) -> Presentation {
    let alg = x.algebra();
    let (p0, cover) = projective_cover(x);
    let p0rep = p0.representation(alg);
    let (_, kincl) = kernel(&cover, &p0rep);
    let spaces = crate::module::image_spaces(&kincl, &p0rep);
    let f = cover_of_subspaces(alg, &p0, &p0rep, &spaces);
    Presentation { p1: f.source.clone(), p0, f, cover }
}

/// Minimal projective resolution ... -> P2 -> P1 -> P0 -> X.
#[derive(Clone, Debug)]
pub struct ProjResolution {
    pub terms: Vec<ProjSum>,
    /// `differentials[k]`: terms[k+1] -> terms[k].
    pub differentials: Vec<ProjMap>,
    pub augmentation: ModuleMap,
    /// A nonzero syzygy remains beyond the computed terms.
    pub truncated: bool,
}

impl ProjResolution {
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0)
    }
}

/// Resolution with at most `max_len + 1` terms (P0..P_max_len).
pub fn min_proj_resolution(x: &Representation, max_len: usize) -> ProjResolution {
    let alg = x.algebra();
    let (p0, cover) = projective_cover(x);
    let mut terms = vec![p0.clone()];
    let mut diffs = Vec::new();
    let mut cur_rep = p0.representation(alg);
    let (_, kincl) = kernel(&cover, &cur_rep);
    let mut spaces = crate::module::image_spaces(&kincl, &cur_rep);
    let mut truncated = false;
    loop {
        if spaces.iter().all(|s| s.is_zero()) {
            break;
        }
        if terms.len() > max_len {
            truncated = true;
            break;
        }
        let cur = terms.last().unwrap().clone();
        let d = cover_of_subspaces(alg, &cur, &cur_rep, &spaces);
        let next_rep = d.source.representation(alg);
        let dm = d.to_module_map(alg);
        let (_, kincl) = kernel(&dm, &next_rep);
        spaces = crate::module::image_spaces(&kincl, &next_rep);
        terms.push(d.source.clone());
        diffs.push(d);
        cur_rep = next_rep;
    }
    ProjResolution { terms, differentials: diffs, augmentation: cover, truncated }
}

/// A dimension that may only be known to be at least some bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dim {
    Exactly(usize),
    AtLeast(usize),
}

impl Dim {
    pub fn value(self) -> Option<usize> {
        match self {
            Dim::Exactly(n) => Some(n),
            Dim::AtLeast(_) => None,
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::Exactly(n) => write!(f, "{n}"),
            Dim::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

pub fn proj_dim(x: &Representation, bound: usize) -> Dim {
    if x.is_zero() {
        return Dim::Exactly(0);
    }
    let r = min_proj_resolution(x, bound);
    if r.truncated {
        Dim::AtLeast(bound)
    } else {
        Dim::Exactly(r.length())
    }
}

pub fn opposite_of(alg: &Alg) -> Alg {
    Arc::new(alg.opposite())
}

pub fn inj_dim(x: &Representation, bound: usize) -> Dim {
    let op = opposite_of(x.algebra());
    proj_dim(&dual_over(x, &op), bound)
}

/// τX = ker(ν f) for a minimal presentation f.
pub fn tau(x: &Representation) -> Representation {
    let alg = x.algebra();
    let pres = minimal_presentation(x);
    let nf = pres.f.nakayama(alg);
    let src = pres.p1.nakayama(alg);
    kernel(&nf, &src).0
}

/// τ⁻¹X = D τ D X, computed over the opposite algebra.
pub fn tau_inv(x: &Representation) -> Representation {
    let alg = x.algebra();
    let op = opposite_of(alg);
    let t = tau(&dual_over(x, &op));
    dual_over(&t, alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::{hom_dim, indecomposable_isomorphic, is_isomorphic, simple};

    fn gen4() -> Alg {
        Arc::new(fixtures::alg_gen4())
    }
    fn a3() -> Alg {
        Arc::new(fixtures::alg_a3())
    }
    fn v(alg: &Alg, name: &str) -> usize {
        alg.quiver().vertex_index(name).unwrap()
    }

    #[test]
    fn projmap_round_trip() {
        let g = gen4();
        let src = ProjSum::new(vec![v(&g, "3"), v(&g, "2")]);
        let tgt = ProjSum::new(vec![v(&g, "4")]);
        for u in ProjMap::hom_basis(&g, &src, &tgt) {
            let m = u.to_module_map(&g);
            assert!(m.is_homomorphism(&src.representation(&g), &tgt.representation(&g)));
            assert_eq!(ProjMap::from_module_map(&g, &src, &tgt, &m), u);
            let nu = u.nakayama(&g);
            assert!(nu.is_homomorphism(&src.nakayama(&g), &tgt.nakayama(&g)));
        }
        assert_eq!(ProjMap::hom_space_dim(&g, &src, &tgt), 2);
    }

    #[test]
    fn composition_matches_module_maps() {
        let a = a3();
        let p1 = ProjSum::new(vec![0]);
        let p2 = ProjSum::new(vec![1]);
        let p3 = ProjSum::new(vec![2]);
        let f = ProjMap::hom_basis(&a, &p1, &p2).remove(0);
        let g = ProjMap::hom_basis(&a, &p2, &p3).remove(0);
        let gf = g.compose(&a, &f);
        assert_eq!(gf.to_module_map(&a), g.to_module_map(&a).compose(&f.to_module_map(&a)));
        assert!(!gf.is_zero());
    }

    #[test]
    fn resolutions() {
        let g = gen4();
        let s4 = simple(&g, v(&g, "4"));
        let r = min_proj_resolution(&s4, 8);
        assert_eq!(r.length(), 2);
        assert_eq!(r.terms[0].vertices, vec![v(&g, "4")]);
        let mut t1 = r.terms[1].vertices.clone();
        t1.sort();
        assert_eq!(t1, vec![v(&g, "2"), v(&g, "3")]);
        assert_eq!(r.terms[2].vertices, vec![v(&g, "1"), v(&g, "1")]);
        assert_eq!(proj_dim(&s4, 8), Dim::Exactly(2));
        assert_eq!(inj_dim(&simple(&g, v(&g, "1")), 8), Dim::Exactly(2));
        let a = a3();
        let s2 = simple(&a, v(&a, "2"));
        assert_eq!(proj_dim(&s2, 8), Dim::Exactly(1));
        assert_eq!(proj_dim(&projective(&a, 2), 8), Dim::Exactly(0));
        assert_eq!(proj_dim(&s4, 1), Dim::AtLeast(1));
    }

    #[test]
    fn tau_examples() {
        let g = gen4();
        let s4 = simple(&g, v(&g, "4"));
        let t = tau(&s4);
        assert!(is_isomorphic(&t, &projective(&g, v(&g, "4"))).unwrap());
        let s3 = simple(&g, v(&g, "3"));
        assert!(is_isomorphic(&tau(&s3), &projective(&g, v(&g, "2"))).unwrap());
        assert!(tau(&projective(&g, 0)).is_zero());
        assert!(tau_inv(&injective(&g, 0)).is_zero());
        let back = tau_inv(&t);
        assert!(indecomposable_isomorphic(&s4, &back));
    }

    #[test]
    fn nakayama_of_projectives() {
        let a = a3();
        let nu = ProjSum::new(vec![0]).nakayama(&a);
        assert_eq!(nu.loewy_name(), "3/2/1");
        assert!(is_projective(&projective(&a, 1)));
        assert!(!is_projective(&simple(&a, 1)));
        assert!(is_injective(&injective(&a, 1)));
        assert!(!is_injective(&simple(&a, 1)));
        assert_eq!(hom_dim(&nu, &injective(&a, 0)), 1);
    }

    #[test]
    fn presentation_cokernel_is_module() {
        let g = gen4();
        let x = crate::module::injective(&g, 0);
        let pres = minimal_presentation(&x);
        let fm = pres.f.to_module_map(&g);
        let (c, _) = crate::module::cokernel(&fm, &pres.p0.representation(&g));
        assert!(is_isomorphic(&c, &x).unwrap());
    }
}
