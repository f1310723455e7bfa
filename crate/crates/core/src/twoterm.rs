//! Two-term complexes of projectives P⁻¹ -> P⁰, morphisms in the homotopy
//! category, silting and tilting predicates, cohomology and the Nakayama
//! image.

use crate::dsl::{lines, parse_element, parse_matrix_literal, ParseError};
use crate::linalg::{Matrix, Subspace};
use crate::matalg::MatrixAlgebra;
use crate::module::{cokernel, kernel, same_algebra, submodule, Alg, ModuleError, ModuleMap, Representation};
use crate::ar::IndecCatalog;
use crate::module::hom_dim;
use crate::projective::{minimal_presentation, tau, top_generators, ProjMap, ProjSum};

/// P⁻¹ -d-> P⁰, with P⁻¹ = `d.source` and P⁰ = `d.target`.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub name: String,
    pub alg: Alg,
    pub d: ProjMap,
}

impl PartialEq for TwoTermComplex {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.d == other.d
    }
}

impl TwoTermComplex {
    pub fn new(alg: Alg, name: impl Into<String>, d: ProjMap) -> Self {
        TwoTermComplex { name: name.into(), alg, d }
    }

    /// A projective sum in degree 0 (`shift = 0`) or degree -1 (`shift = 1`).
    pub fn stalk(alg: &Alg, ps: ProjSum, shift: usize) -> Self {
        let d = if shift == 0 {
            ProjMap::zero(alg, ProjSum::empty(), ps)
        } else {
            ProjMap::zero(alg, ps, ProjSum::empty())
        };
        TwoTermComplex::new(alg.clone(), if shift == 0 { "P[0]" } else { "P[1]" }, d)
    }

    /// A[0].
    pub fn regular(alg: &Alg) -> Self {
        let mut c = TwoTermComplex::stalk(alg, ProjSum::new((0..alg.num_vertices()).collect()), 0);
        c.name = "A[0]".into();
        c
    }

    pub fn pm1(&self) -> &ProjSum {
        &self.d.source
    }
    pub fn p0(&self) -> &ProjSum {
        &self.d.target
    }
    pub fn is_zero(&self) -> bool {
        self.pm1().is_empty() && self.p0().is_empty()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn direct_sum(alg: &Alg, parts: &[TwoTermComplex]) -> TwoTermComplex {
        let src = parts.iter().fold(ProjSum::empty(), |a, p| a.concat(p.pm1()));
        let tgt = parts.iter().fold(ProjSum::empty(), |a, p| a.concat(p.p0()));
        let mut d = ProjMap::zero(alg, src, tgt);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for r in 0..p.p0().len() {
                for c in 0..p.pm1().len() {
                    d.entries[r0 + r][c0 + c] = p.d.entries[r][c].clone();
                }
            }
            r0 += p.p0().len();
            c0 += p.pm1().len();
        }
        TwoTermComplex::new(alg.clone(), "P", d)
    }

    pub fn differential(&self) -> ModuleMap {
        self.d.to_module_map(&self.alg)
    }

    /// H⁰ = coker d.
    pub fn h0(&self) -> Representation {
        cokernel(&self.differential(), &self.p0().representation(&self.alg)).0
    }

    /// H⁻¹ = ker d.
    pub fn hm1(&self) -> Representation {
        kernel(&self.differential(), &self.pm1().representation(&self.alg)).0
    }

    /// νP⁻¹ -> νP⁰ with its cohomology.
    pub fn nakayama(&self) -> NakayamaImage {
        let map = self.d.nakayama(&self.alg);
        let src = self.pm1().nakayama(&self.alg);
        let tgt = self.p0().nakayama(&self.alg);
        let h0 = cokernel(&map, &tgt).0;
        let hm1 = kernel(&map, &src).0;
        NakayamaImage { source: src, target: tgt, map, h0, hm1 }
    }

    /// Short description like `P(3) -> P(4)`.
    pub fn shape(&self) -> String {
        format!("{} -> {}", self.pm1().to_string(&self.alg), self.p0().to_string(&self.alg))
    }

    pub fn to_text(&self) -> String {
        let alg = &self.alg;
        let mut out = format!("complex {} over {}\n", self.name, alg.name());
        out.push_str(&format!("deg -1: {}\n", self.pm1().to_string(alg)));
        out.push_str(&format!("deg 0: {}\n", self.p0().to_string(alg)));
        if !self.pm1().is_empty() && !self.p0().is_empty() {
            let rows: Vec<String> = self
                .d
                .entries
                .iter()
                .map(|row| format!("[{}]", row.iter().map(|e| alg.element_to_string(e)).collect::<Vec<_>>().join(",")))
                .collect();
            out.push_str(&format!("d = [{}]\n", rows.join(",")));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "degree_minus_one": self.pm1().vertices.iter().map(|&v| self.alg.vertex_name(v)).collect::<Vec<_>>(),
            "degree_zero": self.p0().vertices.iter().map(|&v| self.alg.vertex_name(v)).collect::<Vec<_>>(),
            "d": self.d.to_string(&self.alg),
        })
    }
}

#[derive(Clone, Debug)]
pub struct NakayamaImage {
    pub source: Representation,
    pub target: Representation,
    pub map: ModuleMap,
    pub h0: Representation,
    pub hm1: Representation,
}

/// A chain map (f⁻¹, f⁰).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub m1: ProjMap,
    pub m0: ProjMap,
}

impl ChainMap {
    pub fn zero(p: &TwoTermComplex, q: &TwoTermComplex) -> ChainMap {
        ChainMap {
            m1: ProjMap::zero(&p.alg, p.pm1().clone(), q.pm1().clone()),
            m0: ProjMap::zero(&p.alg, p.p0().clone(), q.p0().clone()),
        }
    }
    pub fn identity(p: &TwoTermComplex) -> ChainMap {
        ChainMap { m1: ProjMap::identity(&p.alg, p.pm1()), m0: ProjMap::identity(&p.alg, p.p0()) }
    }
    /// `self ∘ other`.
    pub fn compose(&self, alg: &Alg, other: &ChainMap) -> ChainMap {
        ChainMap { m1: self.m1.compose(alg, &other.m1), m0: self.m0.compose(alg, &other.m0) }
    }
    pub fn add(&self, alg: &Alg, other: &ChainMap) -> ChainMap {
        ChainMap { m1: self.m1.add(alg, &other.m1), m0: self.m0.add(alg, &other.m0) }
    }
    pub fn scale(&self, alg: &Alg, c: u32) -> ChainMap {
        ChainMap { m1: self.m1.scale(alg, c), m0: self.m0.scale(alg, c) }
    }
    pub fn flatten(&self, alg: &Alg) -> Vec<u32> {
        let mut v = self.m1.flatten(alg);
        v.extend(self.m0.flatten(alg));
        v
    }
    pub fn is_chain_map(&self, alg: &Alg, p: &TwoTermComplex, q: &TwoTermComplex) -> bool {
        let lhs = self.m0.compose(alg, &p.d);
        let rhs = q.d.compose(alg, &self.m1);
        lhs == rhs
    }
    /// Block-diagonal matrix of the two module maps.
    pub fn total_matrix(&self, alg: &Alg) -> Matrix {
        let a = self.m1.to_module_map(alg).total_matrix();
        let b = self.m0.to_module_map(alg).total_matrix();
        Matrix::block_diag(alg.field(), &[a, b])
    }
}

impl ChainMap {
    pub fn unflatten(alg: &Alg, p: &TwoTermComplex, q: &TwoTermComplex, v: &[u32]) -> ChainMap {
        let n1 = ProjMap::hom_space_dim(alg, p.pm1(), q.pm1());
        ChainMap {
            m1: ProjMap::unflatten(alg, p.pm1(), q.pm1(), &v[..n1]),
            m0: ProjMap::unflatten(alg, p.p0(), q.p0(), &v[n1..]),
        }
    }
}

fn unflatten_chain(alg: &Alg, p: &TwoTermComplex, q: &TwoTermComplex, v: &[u32]) -> ChainMap {
    ChainMap::unflatten(alg, p, q, v)
}

/// Matrix of s ↦ a∘s on Hom(src, a.source).
fn left_mult(alg: &Alg, a: &ProjMap, src: &ProjSum) -> Matrix {
    let cols: Vec<Vec<u32>> =
        ProjMap::hom_basis(alg, src, &a.source).iter().map(|s| a.compose(alg, s).flatten(alg)).collect();
    Matrix::from_columns(alg.field(), ProjMap::hom_space_dim(alg, src, &a.target), &cols)
}

/// Matrix of s ↦ s∘b on Hom(b.target, tgt).
fn right_mult(alg: &Alg, b: &ProjMap, tgt: &ProjSum) -> Matrix {
    let cols: Vec<Vec<u32>> =
        ProjMap::hom_basis(alg, &b.target, tgt).iter().map(|s| s.compose(alg, b).flatten(alg)).collect();
    Matrix::from_columns(alg.field(), ProjMap::hom_space_dim(alg, &b.source, tgt), &cols)
}

/// Basis of all chain maps P -> Q.
pub fn chain_maps(p: &TwoTermComplex, q: &TwoTermComplex) -> Vec<ChainMap> {
    let alg = &p.alg;
    // f⁰ d_P - d_Q f⁻¹ = 0
    let a = left_mult(alg, &q.d, p.pm1()).scale(alg.field().neg(1));
    let b = right_mult(alg, &p.d, q.p0());
    let m = a.hstack(&b);
    m.kernel_basis().iter().map(|v| unflatten_chain(alg, p, q, v)).collect()
}

/// Spanning set of null-homotopic maps (s d_P, d_Q s), s: P⁰ -> Q⁻¹.
pub fn null_homotopic(p: &TwoTermComplex, q: &TwoTermComplex) -> Vec<ChainMap> {
    let alg = &p.alg;
    ProjMap::hom_basis(alg, p.p0(), q.pm1())
        .iter()
        .map(|s| ChainMap { m1: s.compose(alg, &p.d), m0: q.d.compose(alg, s) })
        .collect()
}

/// Hom_K(P, Σ^i Q) as a space: its dimension and representatives.
#[derive(Clone, Debug)]
pub struct HomotopyClassBasis {
    pub shift: i32,
    pub dim: usize,
    /// For i = 0: flattened chain maps (f⁻¹, f⁰). For i = 1: flattened maps
    /// P⁻¹ -> Q⁰. For i = -1: flattened maps P⁰ -> Q⁻¹.
    pub representatives: Vec<Vec<u32>>,
}

pub fn hom_shift(p: &TwoTermComplex, q: &TwoTermComplex, i: i32) -> HomotopyClassBasis {
    let alg = &p.alg;
    let f = alg.field();
    let reps: Vec<Vec<u32>> = match i {
        0 => {
            let n = ProjMap::hom_space_dim(alg, p.pm1(), q.pm1()) + ProjMap::hom_space_dim(alg, p.p0(), q.p0());
            let nulls: Vec<Vec<u32>> = null_homotopic(p, q).iter().map(|c| c.flatten(alg)).collect();
            let chains: Vec<Vec<u32>> = chain_maps(p, q).iter().map(|c| c.flatten(alg)).collect();
            let mut s = Subspace::span(f, n, &nulls);
            s.extend_greedy(&chains).into_iter().map(|k| chains[k].clone()).collect()
        }
        1 => {
            let n = ProjMap::hom_space_dim(alg, p.pm1(), q.p0());
            let a = left_mult(alg, &q.d, p.pm1());
            let b = right_mult(alg, &p.d, q.p0());
            let mut gens = a.column_space_basis();
            gens.extend(b.column_space_basis());
            Subspace::span(f, n, &gens).complement_basis()
        }
        -1 => {
            let a = left_mult(alg, &q.d, p.p0());
            let b = right_mult(alg, &p.d, q.pm1());
            a.vstack(&b).kernel_basis()
        }
        _ => vec![],
    };
    HomotopyClassBasis { shift: i, dim: reps.len(), representatives: reps }
}

/// Inverse of λ e_v + n in e_v A e_v, n radical.
fn local_inverse(alg: &Alg, u: &[u32], v: usize) -> Vec<u32> {
    let f = alg.field();
    let ev = alg.vertex_element(v);
    let triv = ev.iter().position(|&x| x != 0).unwrap();
    let lam = u[triv];
    let linv = f.inv(lam);
    // u = λ (e + m), m = λ⁻¹ u - e; (e + m)⁻¹ = Σ (-m)^k
    let mut m = u.to_vec();
    f.scale_vec(&mut m, linv);
    f.axpy(&mut m, f.neg(1), &ev);
    f.scale_vec(&mut m, f.neg(1));
    let mut acc = ev.clone();
    let mut power = ev;
    for _ in 0..=alg.loewy_bound() + 1 {
        power = alg.mul(&power, &m);
        if power.iter().all(|&x| x == 0) {
            break;
        }
        f.axpy(&mut acc, 1, &power);
    }
    f.scale_vec(&mut acc, linv);
    acc
}

/// A complex with contractible summands removed, with the homotopy
/// equivalences to and from the original.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: TwoTermComplex,
    /// original -> minimal
    pub pi: ChainMap,
    /// minimal -> original
    pub iota: ChainMap,
}

/// Remove summands P(v) =id P(v) by eliminating invertible entries of d.
pub fn minimize(p: &TwoTermComplex) -> Minimized {
    let alg = &p.alg;
    let f = alg.field();
    let mut cur = p.clone();
    let mut pi = ChainMap::identity(p);
    let mut iota = ChainMap::identity(p);
    loop {
        let mut pivot = None;
        'search: for (r, &tv) in cur.p0().vertices.iter().enumerate() {
            for (c, &sv) in cur.pm1().vertices.iter().enumerate() {
                if tv == sv {
                    let ev = alg.vertex_element(tv);
                    let triv = ev.iter().position(|&x| x != 0).unwrap();
                    if cur.d.entries[r][c][triv] != 0 {
                        pivot = Some((r, c, tv));
                        break 'search;
                    }
                }
            }
        }
        let Some((r, c, v)) = pivot else { break };
        let d = &cur.d;
        let uinv = local_inverse(alg, &d.entries[r][c], v);
        let rows: Vec<usize> = (0..cur.p0().len()).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..cur.pm1().len()).filter(|&j| j != c).collect();
        let new_src = ProjSum::new(cols.iter().map(|&j| cur.pm1().vertices[j]).collect());
        let new_tgt = ProjSum::new(rows.iter().map(|&i| cur.p0().vertices[i]).collect());
        let mut nd = ProjMap::zero(alg, new_src.clone(), new_tgt.clone());
        for (ii, &i) in rows.iter().enumerate() {
            let ciu = alg.mul(&d.entries[i][c], &uinv);
            for (jj, &j) in cols.iter().enumerate() {
                let mut e = d.entries[i][j].clone();
                let corr = alg.mul(&ciu, &d.entries[r][j]);
                f.axpy(&mut e, f.neg(1), &corr);
                nd.entries[ii][jj] = e;
            }
        }
        // π⁰ = [-c u⁻¹ | 1], π⁻¹ drops column c; ι⁻¹ = [-u⁻¹ r ; 1], ι⁰ skips row r
        let mut p0m = ProjMap::zero(alg, cur.p0().clone(), new_tgt.clone());
        for (ii, &i) in rows.iter().enumerate() {
            p0m.entries[ii][i] = alg.vertex_element(cur.p0().vertices[i]);
            let mut e = alg.mul(&d.entries[i][c], &uinv);
            f.scale_vec(&mut e, f.neg(1));
            p0m.entries[ii][r] = e;
        }
        let mut p1m = ProjMap::zero(alg, cur.pm1().clone(), new_src.clone());
        for (jj, &j) in cols.iter().enumerate() {
            p1m.entries[jj][j] = alg.vertex_element(cur.pm1().vertices[j]);
        }
        let mut i1m = ProjMap::zero(alg, new_src.clone(), cur.pm1().clone());
        for (jj, &j) in cols.iter().enumerate() {
            i1m.entries[j][jj] = alg.vertex_element(cur.pm1().vertices[j]);
            let mut e = alg.mul(&uinv, &d.entries[r][j]);
            f.scale_vec(&mut e, f.neg(1));
            i1m.entries[c][jj] = e;
        }
        let mut i0m = ProjMap::zero(alg, new_tgt.clone(), cur.p0().clone());
        for (ii, &i) in rows.iter().enumerate() {
            i0m.entries[i][ii] = alg.vertex_element(cur.p0().vertices[i]);
        }
        let step_pi = ChainMap { m1: p1m, m0: p0m };
        let step_iota = ChainMap { m1: i1m, m0: i0m };
        pi = step_pi.compose(alg, &pi);
        iota = iota.compose(alg, &step_iota);
        cur = TwoTermComplex::new(alg.clone(), cur.name.clone(), nd);
    }
    Minimized { complex: cur, pi, iota }
}

/// End of a complex as a matrix algebra of chain maps, with the chain-map basis.
pub fn chain_endomorphism_algebra(p: &TwoTermComplex) -> (MatrixAlgebra, Vec<ChainMap>) {
    let alg = &p.alg;
    let basis = chain_maps(p, p);
    let n = p.pm1().representation(alg).total_dim() + p.p0().representation(alg).total_dim();
    let mats = basis.iter().map(|c| c.total_matrix(alg)).collect();
    (MatrixAlgebra::new(alg.field(), n, mats), basis)
}

/// Split an idempotent e of a projective sum: returns Q with ι: Q -> P and
/// π: P -> Q such that πι = 1 and ιπ = e.
pub fn split_projective_idempotent(alg: &Alg, ps: &ProjSum, e: &ProjMap) -> (ProjSum, ProjMap, ProjMap) {
    let prep = ps.representation(alg);
    let em = e.to_module_map(alg);
    let spaces = crate::module::image_spaces(&em, &prep);
    let (im, incl) = submodule(&prep, &spaces);
    let gens = top_generators(&im);
    let q = ProjSum::new(gens.iter().map(|(v, _)| *v).collect());
    let mut iota = ProjMap::zero(alg, q.clone(), ps.clone());
    for (c, (v, g)) in gens.iter().enumerate() {
        let x = incl.blocks[*v].mul_vec(g);
        for (r, el) in ps.split_vector(alg, *v, &x).into_iter().enumerate() {
            iota.entries[r][c] = el;
        }
    }
    let im_map = iota.to_module_map(alg);
    let pi_blocks: Vec<Matrix> = im_map
        .blocks
        .iter()
        .zip(&em.blocks)
        .map(|(i, e)| i.solve_matrix(e).ok().flatten().expect("image of an idempotent is the image of its splitting"))
        .collect();
    let pi = ProjMap::from_module_map(alg, ps, &q, &ModuleMap { blocks: pi_blocks });
    (q, iota, pi)
}

/// An indecomposable summand of a minimal complex.
#[derive(Clone, Debug)]
pub struct ComplexSummand {
    pub complex: TwoTermComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// Krull-Schmidt decomposition of a complex after removing contractible
/// summands; the maps refer to the minimized complex.
pub fn decompose_complex_with_maps(p: &TwoTermComplex) -> Result<(Minimized, Vec<ComplexSummand>), ModuleError> {
    let alg = &p.alg;
    let min = minimize(p);
    let m = &min.complex;
    if m.is_zero() {
        return Ok((min, vec![]));
    }
    let (end, basis) = chain_endomorphism_algebra(m);
    let dec = end.primitive_idempotents()?;
    let mut out = Vec::new();
    for e in &dec.idempotents {
        let coords = end.coords(e).expect("idempotent lies in the algebra");
        let mut ch = ChainMap::zero(m, m);
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                ch = ch.add(alg, &basis[k].scale(alg, c));
            }
        }
        let (q1, i1, p1) = split_projective_idempotent(alg, m.pm1(), &ch.m1);
        let (q0, i0, p0) = split_projective_idempotent(alg, m.p0(), &ch.m0);
        let _ = (&q1, &q0);
        let d = p0.compose(alg, &m.d).compose(alg, &i1);
        out.push(ComplexSummand {
            complex: TwoTermComplex::new(alg.clone(), format!("{}#{}", p.name, out.len() + 1), d),
            inclusion: ChainMap { m1: i1, m0: i0 },
            projection: ChainMap { m1: p1, m0: p0 },
        });
    }
    Ok((min, out))
}

pub fn decompose_complex(p: &TwoTermComplex) -> Result<Vec<TwoTermComplex>, ModuleError> {
    Ok(decompose_complex_with_maps(p)?.1.into_iter().map(|s| s.complex).collect())
}

fn sorted(ps: &ProjSum) -> Vec<usize> {
    let mut v = ps.vertices.clone();
    v.sort();
    v
}

/// Isomorphism of indecomposable minimal complexes: some g∘f of chain maps
/// is not nilpotent.
pub fn indecomposable_complexes_isomorphic(p: &TwoTermComplex, q: &TwoTermComplex) -> bool {
    if sorted(p.pm1()) != sorted(q.pm1()) || sorted(p.p0()) != sorted(q.p0()) {
        return false;
    }
    let alg = &p.alg;
    let fs = chain_maps(p, q);
    if fs.is_empty() {
        return p.is_zero();
    }
    let gs = chain_maps(q, p);
    fs.iter().any(|f| gs.iter().any(|g| !g.compose(alg, f).total_matrix(alg).is_nilpotent()))
}

/// A chain isomorphism between isomorphic indecomposable minimal complexes.
pub fn complex_isomorphism(p: &TwoTermComplex, q: &TwoTermComplex) -> Option<ChainMap> {
    if sorted(p.pm1()) != sorted(q.pm1()) || sorted(p.p0()) != sorted(q.p0()) {
        return None;
    }
    let alg = &p.alg;
    let fs = chain_maps(p, q);
    let gs = chain_maps(q, p);
    for f in &fs {
        for g in &gs {
            if !g.compose(alg, f).total_matrix(alg).is_nilpotent() {
                return Some(f.clone());
            }
        }
    }
    None
}

/// Indecomposable summands of a complex, one per isomorphism class.
pub fn basic_summands(p: &TwoTermComplex) -> Result<Vec<TwoTermComplex>, ModuleError> {
    let mut out: Vec<TwoTermComplex> = Vec::new();
    for s in decompose_complex(p)? {
        if !out.iter().any(|t| indecomposable_complexes_isomorphic(t, &s)) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Homotopy equivalence, via isomorphism of minimal forms.
pub fn homotopy_equivalent(p: &TwoTermComplex, q: &TwoTermComplex) -> Result<bool, ModuleError> {
    let a = decompose_complex(p)?;
    let mut b = decompose_complex(q)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    for x in &a {
        match b.iter().position(|y| indecomposable_complexes_isomorphic(x, y)) {
            Some(i) => {
                b.remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// dim Hom_K(P, X[shift]) for a module X and shift 0 or 1.
pub fn hom_to_stalk_dim(p: &TwoTermComplex, x: &Representation, shift: usize) -> usize {
    let m = crate::homological::hom_into(&p.alg, x, &p.d);
    let r = m.rank();
    match shift {
        0 => m.cols() - r,
        1 => m.rows() - r,
        _ => 0,
    }
}

pub fn is_presilting(p: &TwoTermComplex) -> bool {
    hom_shift(p, p, 1).dim == 0
}

/// Presilting with as many non-isomorphic indecomposable summands as simples.
pub fn is_silting(p: &TwoTermComplex) -> Result<bool, ModuleError> {
    Ok(is_presilting(p) && basic_summands(p)?.len() == p.alg.num_vertices())
}

pub fn is_tilting(p: &TwoTermComplex) -> Result<bool, ModuleError> {
    Ok(is_silting(p)? && hom_shift(p, p, -1).dim == 0)
}

/// Minimal projective presentation of M as a complex (H⁰ = M).
pub fn proj_presentation(m: &Representation) -> TwoTermComplex {
    let pres = minimal_presentation(m);
    TwoTermComplex::new(m.algebra().clone(), "P(M)", pres.f)
}

fn parse_proj_sum(alg: &Alg, s: &str, line: usize, col: usize) -> Result<ProjSum, ParseError> {
    let t = s.trim();
    if t == "0" || t.is_empty() {
        return Ok(ProjSum::empty());
    }
    let mut out = Vec::new();
    let mut off = 0;
    for part in s.split('+') {
        let lead = part.len() - part.trim_start().len();
        let p = part.trim();
        let err = || ParseError::new(line, col + off + lead, format!("expected `P(<vertex>)`, found `{p}`"));
        let inner = p.strip_prefix("P(").and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        let v = alg
            .quiver()
            .vertex_index(inner.trim())
            .ok_or_else(|| ParseError::new(line, col + off + lead, format!("unknown vertex `{}`", inner.trim())))?;
        out.push(v);
        off += part.len() + 1;
    }
    Ok(ProjSum::new(out))
}

/// Parse the complex file format:
///
/// ```text
/// complex P over ALG
/// deg -1: P(1) + P(3)
/// deg 0: P(2)
/// d = [[b, 0]]
/// ```
///
/// Rows of `d` are the degree-0 summands, columns the degree -1 summands;
/// the entry in row r, column c is a path combination from the vertex of
/// row r to the vertex of column c.
pub fn parse_complex(text: &str, alg: &Alg) -> Result<TwoTermComplex, ModuleError> {
    let mut name = None;
    let mut src = None;
    let mut tgt = None;
    let mut d_lit = None;
    let mut header = 1;
    for l in lines(text) {
        match l.keyword {
            "complex" => {
                let words: Vec<&str> = l.rest.split_whitespace().collect();
                if words.len() != 3 || words[1] != "over" {
                    return Err(l.error(0, "expected `complex <name> over <algebra>`").into());
                }
                if words[2] != alg.name() {
                    return Err(l.error(0, format!("complex is over `{}`, not `{}`", words[2], alg.name())).into());
                }
                name = Some(words[0].to_string());
                header = l.number;
            }
            "deg" => {
                let colon = l.rest.find(':').ok_or_else(|| l.error(0, "expected `deg <n>: <sum>`"))?;
                let deg = l.rest[..colon].trim();
                let ps = parse_proj_sum(alg, &l.rest[colon + 1..], l.number, l.rest_column + colon + 1)?;
                match deg {
                    "-1" => src = Some(ps),
                    "0" => tgt = Some(ps),
                    _ => return Err(l.error(0, format!("degree must be -1 or 0, found `{deg}`")).into()),
                }
            }
            "d" => {
                let eq = l.rest.find('=').ok_or_else(|| l.error(0, "expected `d = [[..]]`"))?;
                let rows = parse_matrix_literal(&l.rest[eq + 1..], l.number, l.rest_column + eq + 1)?;
                d_lit = Some((l.number, rows));
            }
            other => return Err(ParseError::new(l.number, 1, format!("unknown keyword `{other}`")).into()),
        }
    }
    let src = src.ok_or_else(|| ParseError::new(header, 1, "missing `deg -1` line"))?;
    let tgt = tgt.ok_or_else(|| ParseError::new(header, 1, "missing `deg 0` line"))?;
    let mut d = ProjMap::zero(alg, src.clone(), tgt.clone());
    if let Some((line, rows)) = d_lit {
        if rows.len() != tgt.len() || rows.iter().any(|r| r.len() != src.len()) {
            return Err(ParseError::new(line, 1, format!("d must be {}x{}", tgt.len(), src.len())).into());
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, (s, col)) in row.iter().enumerate() {
                let e = parse_element(alg, s).map_err(|e| ParseError::new(line, *col, e.message))?;
                let allowed = alg.basis_between(tgt.vertices[r], src.vertices[c]);
                if e.iter().enumerate().any(|(k, &x)| x != 0 && !allowed.contains(&k)) {
                    return Err(ParseError::new(
                        line,
                        *col,
                        format!(
                            "entry `{s}` must be a combination of paths from {} to {}",
                            alg.vertex_name(tgt.vertices[r]),
                            alg.vertex_name(src.vertices[c])
                        ),
                    )
                    .into());
                }
                d.entries[r][c] = e;
            }
        }
    } else if !src.is_empty() && !tgt.is_empty() {
        return Err(ParseError::new(header, 1, "missing `d = [[..]]` line").into());
    }
    Ok(TwoTermComplex::new(alg.clone(), name.unwrap_or_else(|| "P".into()), d))
}

/// All basic two-term silting complexes, built as M ⊕ P[1] from support
/// τ-tilting pairs (M τ-rigid from the catalog, P projective with
/// Hom(P, M) = 0) and checked with [`is_silting`].
pub fn enumerate_2term_silting(catalog: &IndecCatalog) -> Result<Vec<TwoTermComplex>, ModuleError> {
    if !catalog.exhaustive {
        return Err(ModuleError::IncompleteCatalog(catalog.bound));
    }
    let alg = &catalog.algebra;
    let n = alg.num_vertices();
    let mods = catalog.modules();
    let taus: Vec<Representation> = mods.iter().map(tau).collect();
    let rigid: Vec<usize> = (0..mods.len()).filter(|&i| hom_dim(&mods[i], &taus[i]) == 0).collect();
    let compatible = |i: usize, j: usize| hom_dim(&mods[i], &taus[j]) == 0 && hom_dim(&mods[j], &taus[i]) == 0;
    let compat: Vec<Vec<bool>> =
        (0..mods.len()).map(|i| (0..mods.len()).map(|j| compatible(i, j)).collect()).collect();
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    fn grow(
        start: usize,
        chosen: &mut Vec<usize>,
        rigid: &[usize],
        compat: &[Vec<bool>],
        mods: &[Representation],
        n: usize,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let free: Vec<usize> = (0..n).filter(|&v| chosen.iter().all(|&m| mods[m].dim_at(v) == 0)).collect();
        if chosen.len() + free.len() >= n {
            // the projectives must be exactly the complement of the support
            if chosen.len() + free.len() == n {
                out.push((chosen.clone(), free));
            }
        }
        if chosen.len() == n {
            return;
        }
        for k in start..rigid.len() {
            let m = rigid[k];
            if chosen.iter().all(|&c| compat[c][m]) {
                chosen.push(m);
                grow(k + 1, chosen, rigid, compat, mods, n, out);
                chosen.pop();
            }
        }
    }
    grow(0, &mut Vec::new(), &rigid, &compat, &mods, n, &mut pairs);
    let mut out = Vec::new();
    for (ms, ps) in pairs {
        let mut parts: Vec<TwoTermComplex> = ms.iter().map(|&m| proj_presentation(&mods[m])).collect();
        if !ps.is_empty() {
            parts.push(TwoTermComplex::stalk(alg, ProjSum::new(ps.clone()), 1));
        }
        let mut c = TwoTermComplex::direct_sum(alg, &parts);
        let names: Vec<String> = ms
            .iter()
            .map(|&m| catalog.entries[m].name.clone())
            .chain(ps.iter().map(|&v| format!("P({})[1]", alg.vertex_name(v))))
            .collect();
        c.name = names.join(" + ");
        if is_silting(&c)? {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::{is_isomorphic, projective, simple};
    use std::sync::Arc;

    fn gen4() -> Alg {
        Arc::new(fixtures::alg_gen4())
    }
    fn a3() -> Alg {
        Arc::new(fixtures::alg_a3())
    }

    #[test]
    fn regular_complex() {
        let a = a3();
        let p = TwoTermComplex::regular(&a);
        assert_eq!(hom_shift(&p, &p, 0).dim, a.dim());
        assert_eq!(hom_shift(&p, &p, 1).dim, 0);
        assert_eq!(hom_shift(&p, &p, 2).dim, 0);
        assert!(is_silting(&p).unwrap());
        assert!(is_tilting(&p).unwrap());
        assert!(p.hm1().is_zero());
        assert_eq!(p.h0().total_dim(), a.dim());
        let nu = p.nakayama();
        assert_eq!(nu.h0.total_dim(), a.dim());
    }

    #[test]
    fn fixture_complexes() {
        let g = gen4();
        let p42 = parse_complex(fixtures::P_42, &g).unwrap();
        assert_eq!(p42.name, "P-42");
        assert_eq!(hom_shift(&p42, &p42, 1).dim, 0);
        assert!(is_silting(&p42).unwrap());
        assert!(is_tilting(&p42).unwrap());
        assert_eq!(decompose_complex(&p42).unwrap().len(), 4);
        let a = a3();
        let p43 = parse_complex(fixtures::P_43, &a).unwrap();
        assert!(is_silting(&p43).unwrap());
        let parts = decompose_complex(&p43).unwrap();
        assert_eq!(parts.len(), 3);
        let h0 = p43.h0();
        let expected = Representation::direct_sum(&[simple(&a, 1), crate::module::injective(&a, 1)]);
        assert!(is_isomorphic(&h0, &expected).unwrap());
        let round = parse_complex(&p43.to_text(), &a).unwrap();
        assert_eq!(round, p43);
    }

    #[test]
    fn contractible_summands_vanish() {
        let a = a3();
        let p43 = parse_complex(fixtures::P_43, &a).unwrap();
        let mut d = ProjMap::zero(&a, ProjSum::new(vec![0]), ProjSum::new(vec![0]));
        d.entries[0][0] = a.vertex_element(0);
        let cone = TwoTermComplex::new(a.clone(), "C", d);
        assert_eq!(minimize(&cone).complex.is_zero(), true);
        let sum = TwoTermComplex::direct_sum(&a, &[p43.clone(), cone]);
        assert!(homotopy_equivalent(&sum, &p43).unwrap());
        assert_eq!(decompose_complex(&sum).unwrap().len(), 3);
    }

    #[test]
    fn minimize_keeps_homotopy_type() {
        let a = a3();
        // P(2) -> P(3) ⊕ P(2) with entries (a, e2): contractible part plus P(2) -> ... leaves 0 -> P(3)
        let mut d = ProjMap::zero(&a, ProjSum::new(vec![1]), ProjSum::new(vec![2, 1]));
        d.entries[0][0] = a.arrow_element(a.quiver().arrow_index("a").unwrap());
        d.entries[1][0] = a.vertex_element(1);
        let p = TwoTermComplex::new(a.clone(), "X", d);
        let m = minimize(&p);
        assert!(m.pi.is_chain_map(&a, &p, &m.complex));
        assert!(m.iota.is_chain_map(&a, &m.complex, &p));
        assert_eq!(m.pi.compose(&a, &m.iota), ChainMap::identity(&m.complex));
        assert!(m.complex.pm1().is_empty());
        assert_eq!(m.complex.p0().vertices, vec![2]);
    }

    #[test]
    fn presentations() {
        let a = a3();
        let s2 = simple(&a, 1);
        let p = proj_presentation(&s2);
        assert!(is_isomorphic(&p.h0(), &s2).unwrap());
        assert!(p.hm1().is_zero());
        let proj = proj_presentation(&projective(&a, 2));
        assert!(proj.pm1().is_empty());
    }

    #[test]
    fn shifted_homs() {
        let a = a3();
        let p1 = TwoTermComplex::stalk(&a, ProjSum::new(vec![0]), 0);
        let p1s = TwoTermComplex::stalk(&a, ProjSum::new(vec![0]), 1);
        // Hom(P(1)[1], ΣP(1)[0]) = Hom(P(1), P(1))
        assert_eq!(hom_shift(&p1s, &p1, 1).dim, 1);
        assert_eq!(hom_shift(&p1, &p1s, -1).dim, 1);
        assert_eq!(hom_shift(&p1, &p1s, 0).dim, 0);
    }

    #[test]
    fn silting_enumeration() {
        use crate::ar::{enumerate_indecomposables, CatalogOptions};
        let a = a3();
        let cat = enumerate_indecomposables(&a, CatalogOptions::with_bound(3)).unwrap();
        let all = enumerate_2term_silting(&cat).unwrap();
        assert_eq!(all.len(), 14);
        let p43 = parse_complex(fixtures::P_43, &a).unwrap();
        assert_eq!(all.iter().filter(|c| homotopy_equivalent(c, &p43).unwrap()).count(), 1);
    }

    #[test]
    fn presentation_fixture() {
        let h = Arc::new(fixtures::alg_her4());
        let (_, t) = crate::module::parse_module(fixtures::T_41, &h).unwrap();
        let p = parse_complex(fixtures::P_41, &h).unwrap();
        assert_eq!(p.d, proj_presentation(&t).d);
        assert!(is_silting(&p).unwrap());
        assert!(crate::module::is_isomorphic(&p.h0(), &t).unwrap());
    }

    #[test]
    fn parse_errors() {
        let a = a3();
        let bad = "complex X over ALG-A3\ndeg -1: P(1)\ndeg 0: P(3)\nd = [[b]]\n";
        let err = parse_complex(bad, &a).unwrap_err();
        assert!(err.to_string().contains("line 4"));
        let bad = "complex X over ALG-A3\ndeg -1: P(9)\ndeg 0: 0\n";
        assert!(parse_complex(bad, &a).unwrap_err().to_string().contains("unknown vertex"));
    }
}
