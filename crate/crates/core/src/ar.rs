//! Almost split sequences and enumeration of indecomposable modules by
//! knitting, with an exhaustive matrix search as fallback.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{CoordinateSystem, Matrix, Subspace};
use crate::module::{
    decompose, endomorphism_algebra, factor_through_quotient, hom_basis, image_spaces,
    indecomposable_isomorphic, injective, is_indecomposable, projective, quotient_module, radical, simple, socle_spaces,
    Alg, ModuleError, ModuleMap, Representation,
};
use crate::projective::{is_injective, is_projective, map_from_projective, min_proj_resolution, precompose_generators};

/// 0 -> τY -f-> E -g-> Y -> 0.
#[derive(Clone, Debug)]
pub struct AlmostSplit {
    pub left: Representation,
    pub middle: Representation,
    pub right: Representation,
    pub f: ModuleMap,
    pub g: ModuleMap,
    pub middle_summands: Vec<Representation>,
}

fn flatten(parts: &[Vec<u32>]) -> Vec<u32> {
    parts.iter().flatten().copied().collect()
}

fn unflatten(v: &[u32], sizes: &[usize]) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut off = 0;
    for &s in sizes {
        out.push(v[off..off + s].to_vec());
        off += s;
    }
    out
}

/// Almost split sequence ending in an indecomposable non-projective Y.
///
/// Extensions of Y by Z = τY are cocycles P1 -> Z modulo maps factoring
/// through P0; the sequence is given by a nonzero extension killed by
/// rad End(Z), and the middle term is the pushout along it.
pub fn almost_split_sequence(y: &Representation) -> Result<AlmostSplit, ModuleError> {
    if y.is_zero() {
        return Err(ModuleError::ZeroModule);
    }
    let alg = y.algebra().clone();
    let f = alg.field();
    let res = min_proj_resolution(y, 2);
    if res.differentials.is_empty() {
        return Err(ModuleError::Projective);
    }
    let d1 = &res.differentials[0];
    let p1 = &res.terms[1];
    let p0 = &res.terms[0];
    let nu = d1.nakayama(&alg);
    let (z, _) = crate::module::kernel(&nu, &p1.nakayama(&alg));
    if z.is_zero() {
        return Err(ModuleError::Projective);
    }

    let sizes1: Vec<usize> = p1.vertices.iter().map(|&v| z.dim_at(v)).collect();
    let sizes0: Vec<usize> = p0.vertices.iter().map(|&v| z.dim_at(v)).collect();
    let n1: usize = sizes1.iter().sum();
    let n0: usize = sizes0.iter().sum();

    // cocycles: ξ with ξ∘d2 = 0
    let cocycles: Vec<Vec<u32>> = match res.differentials.get(1) {
        None => (0..n1).map(|i| crate::linalg::unit_vec(n1, i)).collect(),
        Some(d2) => {
            let cols: Vec<Vec<u32>> = (0..n1)
                .map(|i| {
                    let xi = unflatten(&crate::linalg::unit_vec(n1, i), &sizes1);
                    flatten(&precompose_generators(&alg, &z, &xi, d2))
                })
                .collect();
            let n2: usize = d2.source.vertices.iter().map(|&v| z.dim_at(v)).sum();
            Matrix::from_columns(f, n2, &cols).kernel_basis()
        }
    };
    let coboundaries: Vec<Vec<u32>> = (0..n0)
        .map(|i| {
            let eta = unflatten(&crate::linalg::unit_vec(n0, i), &sizes0);
            flatten(&precompose_generators(&alg, &z, &eta, d1))
        })
        .collect();
    let mut b = Subspace::span(f, n1, &coboundaries);
    let b_basis = b.basis();
    let ext: Vec<Vec<u32>> = b.extend_greedy(&cocycles).into_iter().map(|i| cocycles[i].clone()).collect();
    if ext.is_empty() {
        return Err(ModuleError::Projective);
    }

    // socle of Ext¹(Y, Z) under rad End(Z)
    let (end, end_maps) = endomorphism_algebra(&z);
    let rad = end.radical();
    let rad_maps: Vec<ModuleMap> = rad
        .basis()
        .iter()
        .map(|c| {
            let mut m = ModuleMap::zero(&z, &z);
            for (k, &ck) in c.iter().enumerate() {
                if ck != 0 {
                    m.add_scaled(ck, &end_maps[k]);
                }
            }
            m
        })
        .collect();
    let mut gens = b_basis.clone();
    gens.extend(ext.iter().cloned());
    let cs = CoordinateSystem::new(f, n1, &gens);
    let nb = b_basis.len();
    let k = ext.len();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for psi in &rad_maps {
        let images: Vec<Vec<u32>> = ext
            .iter()
            .map(|xi| {
                let parts = unflatten(xi, &sizes1);
                let moved: Vec<Vec<u32>> = parts
                    .iter()
                    .zip(&p1.vertices)
                    .map(|(x, &v)| psi.blocks[v].mul_vec(x))
                    .collect();
                let c = cs.coordinates(&flatten(&moved)).expect("End(Z) preserves cocycles");
                c[nb..].to_vec()
            })
            .collect();
        for r in 0..k {
            rows.push(images.iter().map(|col| col[r]).collect());
        }
    }
    let coeffs = if rows.is_empty() {
        crate::linalg::unit_vec(k, 0)
    } else {
        Matrix::from_row_vectors(f, k, &rows)
            .kernel_basis()
            .into_iter()
            .next()
            .ok_or_else(|| ModuleError::Shape("extension group has no socle".into()))?
    };
    let mut xi = vec![0u32; n1];
    for (c, e) in coeffs.iter().zip(&ext) {
        f.axpy(&mut xi, *c, e);
    }

    // E = coker(P1 -> Z ⊕ P0, x ↦ (ξ(x), -d1(x)))
    let p0rep = p0.representation(&alg);
    let p1rep = p1.representation(&alg);
    let xi_map = map_from_projective(&alg, p1, &z, &unflatten(&xi, &sizes1));
    let d1m = d1.to_module_map(&alg);
    let sum = Representation::direct_sum(&[z.clone(), p0rep.clone()]);
    let h = ModuleMap {
        blocks: (0..alg.num_vertices())
            .map(|v| xi_map.blocks[v].vstack(&d1m.blocks[v].scale(f.neg(1))))
            .collect(),
    };
    debug_assert!(h.is_homomorphism(&p1rep, &sum));
    let spaces = image_spaces(&h, &sum);
    let (e, proj) = quotient_module(&sum, &spaces);
    let incl_z = ModuleMap {
        blocks: (0..alg.num_vertices())
            .map(|v| Matrix::identity(f, z.dim_at(v)).vstack(&Matrix::zeros(f, p0rep.dim_at(v), z.dim_at(v))))
            .collect(),
    };
    let fmap = proj.compose(&incl_z);
    let to_y = ModuleMap {
        blocks: (0..alg.num_vertices())
            .map(|v| Matrix::zeros(f, y.dim_at(v), z.dim_at(v)).hstack(&res.augmentation.blocks[v]))
            .collect(),
    };
    let gmap = factor_through_quotient(&spaces, &to_y);
    let middle_summands = decompose(&e)?;
    Ok(AlmostSplit { left: z, middle: e, right: y.clone(), f: fmap, g: gmap, middle_summands })
}

/// One indecomposable in a catalog.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub module: Representation,
    pub is_projective: bool,
    pub is_injective: bool,
    /// Index of τX, when X is not projective and τX is listed.
    pub tau: Option<usize>,
    /// Indices of the summands of the almost split middle term ending in X
    /// (with multiplicity), when all of them are listed.
    pub ar_middle: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct IndecCatalog {
    pub algebra: Alg,
    pub entries: Vec<CatalogEntry>,
    /// Closure under τ, τ⁻¹ and almost split sequences stayed inside the
    /// bound: the algebra is representation-finite and these are all the
    /// indecomposables.
    pub complete: bool,
    /// Every indecomposable with all vertex dimensions at most `bound` is
    /// listed (known when `complete`, or after an exhaustive search).
    pub exhaustive: bool,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogOptions {
    pub bound: usize,
    /// Stop knitting after this many modules.
    pub max_modules: usize,
    /// Largest number of matrix tuples the exhaustive fallback may visit.
    pub brute_force_cap: u64,
}

impl CatalogOptions {
    pub fn with_bound(bound: usize) -> Self {
        CatalogOptions { bound, max_modules: 500, brute_force_cap: 1 << 20 }
    }
}

impl IndecCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn modules(&self) -> Vec<Representation> {
        self.entries.iter().map(|e| e.module.clone()).collect()
    }

    /// Index of the entry isomorphic to an indecomposable X.
    pub fn find(&self, x: &Representation) -> Option<usize> {
        self.entries.iter().position(|e| indecomposable_isomorphic(&e.module, x))
    }

    pub fn by_name(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn projectives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i].is_projective).collect()
    }
    pub fn injectives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i].is_injective).collect()
    }

    /// τ-orbits: chains X, τX, τ²X, ... grouped into classes, each sorted.
    pub fn tau_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut Vec<usize>, i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for i in 0..n {
            if let Some(t) = self.entries[i].tau {
                let (a, b) = (root(&mut parent, i), root(&mut parent, t));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = root(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut m = e.module.to_json();
                let obj = m.as_object_mut().unwrap();
                obj.insert("name".into(), e.name.clone().into());
                obj.insert("is_projective".into(), e.is_projective.into());
                obj.insert("is_injective".into(), e.is_injective.into());
                obj.insert(
                    "tau_of".into(),
                    e.tau.map(|t| serde_json::Value::from(self.entries[t].name.clone())).unwrap_or_default(),
                );
                m
            })
            .collect();
        serde_json::json!({
            "algebra": self.algebra.name(),
            "bound": self.bound,
            "complete": self.complete,
            "exhaustive": self.exhaustive,
            "count": self.entries.len(),
            "modules": entries,
        })
    }
}

fn within(x: &Representation, bound: usize) -> bool {
    x.dims().iter().all(|&d| d <= bound)
}

/// Enumerate indecomposables by knitting from projectives, injectives and
/// simples; fall back to an exhaustive search when knitting leaves the bound.
pub fn enumerate_indecomposables(alg: &Alg, opts: CatalogOptions) -> Result<IndecCatalog, ModuleError> {
    let n = alg.num_vertices();
    let mut found: Vec<Representation> = Vec::new();
    let mut overflow = false;
    let mut capped = false;

    let push = |found: &mut Vec<Representation>, overflow: &mut bool, x: Representation| {
        if x.is_zero() {
            return;
        }
        if !within(&x, opts.bound) {
            *overflow = true;
            return;
        }
        if !found.iter().any(|y| indecomposable_isomorphic(y, &x)) {
            found.push(x);
        }
    };
    for i in 0..n {
        push(&mut found, &mut overflow, projective(alg, i));
    }
    for i in 0..n {
        push(&mut found, &mut overflow, injective(alg, i));
    }
    for i in 0..n {
        push(&mut found, &mut overflow, simple(alg, i));
    }

    let mut idx = 0;
    while idx < found.len() {
        if found.len() > opts.max_modules {
            capped = true;
            break;
        }
        let x = found[idx].clone();
        idx += 1;
        let mut next: Vec<Representation> = Vec::new();
        if is_projective(&x) {
            next.extend(decompose(&radical(&x).0)?);
        } else {
            let ar = almost_split_sequence(&x)?;
            next.push(ar.left.clone());
            next.extend(ar.middle_summands);
        }
        if is_injective(&x) {
            let soc = socle_spaces(&x);
            next.extend(decompose(&quotient_module(&x, &soc).0)?);
        } else {
            next.push(crate::projective::tau_inv(&x));
        }
        for y in next {
            push(&mut found, &mut overflow, y);
        }
    }

    let complete = !overflow && !capped;
    let mut exhaustive = complete;
    if !complete {
        if let Some(all) = brute_force_indecomposables(alg, opts.bound, opts.brute_force_cap) {
            for x in all {
                if !found.iter().any(|y| indecomposable_isomorphic(y, &x)) {
                    found.push(x);
                }
            }
            exhaustive = true;
        }
    }
    build_catalog(alg, found, complete, exhaustive, opts.bound)
}

fn build_catalog(
    alg: &Alg,
    mut modules: Vec<Representation>,
    complete: bool,
    exhaustive: bool,
    bound: usize,
) -> Result<IndecCatalog, ModuleError> {
    modules.sort_by_cached_key(|m| (m.total_dim(), m.loewy_name(), m.dims().to_vec()));
    let mut entries: Vec<CatalogEntry> = modules
        .into_iter()
        .map(|m| CatalogEntry {
            name: m.loewy_name(),
            is_projective: is_projective(&m),
            is_injective: is_injective(&m),
            module: m,
            tau: None,
            ar_middle: None,
        })
        .collect();
    let find = |entries: &[CatalogEntry], x: &Representation| {
        entries.iter().position(|e| indecomposable_isomorphic(&e.module, x))
    };
    for i in 0..entries.len() {
        if entries[i].is_projective {
            continue;
        }
        let ar = almost_split_sequence(&entries[i].module)?;
        let t = find(&entries, &ar.left);
        let mid: Option<Vec<usize>> = ar.middle_summands.iter().map(|s| find(&entries, s)).collect();
        entries[i].tau = t;
        entries[i].ar_middle = mid.map(|mut v| {
            v.sort();
            v
        });
    }
    Ok(IndecCatalog { algebra: alg.clone(), entries, complete, exhaustive, bound })
}

/// Every dimension vector with entries at most `bound`, excluding zero.
fn dimension_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        if cur.iter().any(|&d| d > 0) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Number of arrow-matrix tuples with the given dimension vector, saturating.
fn tuple_count(alg: &Alg, dims: &[usize]) -> u64 {
    let entries: u64 = alg.quiver().arrows().iter().map(|a| (dims[a.source] * dims[a.target]) as u64).sum();
    (alg.field().p() as u64).checked_pow(entries as u32).unwrap_or(u64::MAX)
}

/// Quick decomposability test: a random endomorphism that is neither
/// nilpotent nor invertible splits X.
fn visibly_decomposable(x: &Representation, rng: &mut ChaCha8Rng, tries: usize) -> Option<bool> {
    let basis = hom_basis(x, x);
    if basis.len() == 1 {
        return Some(false);
    }
    let f = x.field();
    let n = x.total_dim();
    let mats: Vec<Matrix> = basis.iter().map(|m| m.total_matrix()).collect();
    for _ in 0..tries {
        let mut m = Matrix::zeros(f, n, n);
        for b in &mats {
            let c = rng.gen_range(0..f.p());
            if c != 0 {
                m.add_scaled(c, b);
            }
        }
        let r = m.pow(n as u64).rank();
        if r != 0 && r != n {
            return Some(true);
        }
    }
    None
}

/// All indecomposables with vertex dimensions at most `bound`, by running
/// through every tuple of arrow matrices. `None` if that exceeds `cap`.
pub fn brute_force_indecomposables(alg: &Alg, bound: usize, cap: u64) -> Option<Vec<Representation>> {
    let n = alg.num_vertices();
    let dvs = dimension_vectors(n, bound);
    let mut total: u64 = 0;
    for d in &dvs {
        total = total.saturating_add(tuple_count(alg, d));
    }
    if total > cap {
        return None;
    }
    let f = alg.field();
    let p = f.p() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x51171e);
    let mut out: Vec<Representation> = Vec::new();
    for d in dvs {
        let shapes: Vec<(usize, usize)> =
            alg.quiver().arrows().iter().map(|a| (d[a.target], d[a.source])).collect();
        let count = tuple_count(alg, &d);
        let mut found: Vec<Representation> = Vec::new();
        for code in 0..count {
            let mut c = code;
            let maps: Vec<Matrix> = shapes
                .iter()
                .map(|&(r, cc)| {
                    let mut data = Vec::with_capacity(r * cc);
                    for _ in 0..r * cc {
                        data.push((c % p) as u32);
                        c /= p;
                    }
                    Matrix::from_flat(f, r, cc, data)
                })
                .collect();
            let Ok(x) = Representation::new(alg.clone(), d.clone(), maps) else {
                continue;
            };
            match visibly_decomposable(&x, &mut rng, 24) {
                Some(true) => continue,
                Some(false) => {}
                None => {
                    if !is_indecomposable(&x).unwrap_or(false) {
                        continue;
                    }
                }
            }
            if !found.iter().any(|y| indecomposable_isomorphic(y, &x)) {
                found.push(x);
            }
        }
        out.extend(found);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::is_isomorphic;
    use std::sync::Arc;

    fn right_end(ar: &AlmostSplit) -> Representation {
        crate::module::cokernel(&ar.f, &ar.middle).0
    }

    fn names(c: &IndecCatalog) -> Vec<String> {
        let mut v: Vec<String> = c.entries.iter().map(|e| e.name.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn almost_split_over_gen4() {
        let g = Arc::new(fixtures::alg_gen4());
        let s4 = simple(&g, g.quiver().vertex_index("4").unwrap());
        let ar = almost_split_sequence(&s4).unwrap();
        assert_eq!(ar.left.loewy_name(), "4/2 3");
        let mut mids: Vec<String> = ar.middle_summands.iter().map(|m| m.loewy_name()).collect();
        mids.sort();
        assert_eq!(mids, vec!["4/2", "4/3"]);
        assert!(ar.f.is_injective() && ar.g.is_surjective());
        assert!(ar.g.compose(&ar.f).is_zero());
        assert!(ar.f.is_homomorphism(&ar.left, &ar.middle));
        assert!(ar.g.is_homomorphism(&ar.middle, &ar.right));
        assert!(is_isomorphic(&right_end(&ar), &s4).unwrap());
        assert!(almost_split_sequence(&projective(&g, 0)).is_err());
    }

    #[test]
    fn catalogs_of_fixtures() {
        let a = Arc::new(fixtures::alg_a3());
        let c = enumerate_indecomposables(&a, CatalogOptions::with_bound(3)).unwrap();
        assert!(c.complete && c.exhaustive);
        assert_eq!(names(&c), vec!["1", "2", "2/1", "3", "3/2", "3/2/1"]);
        let g = Arc::new(fixtures::alg_gen4());
        let c = enumerate_indecomposables(&g, CatalogOptions::with_bound(3)).unwrap();
        assert!(c.complete);
        assert_eq!(c.len(), 10);
        for e in &c.entries {
            assert_eq!(e.tau.is_none(), e.is_projective);
        }
        assert_eq!(c.tau_orbits().len(), 4);
    }

    #[test]
    fn hereditary_euclidean_is_incomplete() {
        let h = Arc::new(fixtures::alg_her4());
        let c = enumerate_indecomposables(&h, CatalogOptions::with_bound(2)).unwrap();
        assert!(!c.complete);
        assert!(c.len() > 10);
    }

    #[test]
    fn brute_force_agrees_on_a3() {
        let a = Arc::new(fixtures::alg_a3());
        let bf = brute_force_indecomposables(&a, 2, 1 << 20).unwrap();
        assert_eq!(bf.len(), 6);
        assert!(brute_force_indecomposables(&a, 3, 10).is_none());
    }
}
