//! Ext groups, projective/injective/global dimensions, add M
//! approximations and resolutions, and global dimensions of endomorphism
//! algebras.

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::{unit_vec, Matrix, Subspace};
use crate::matalg::{QuiverizeOptions, Quiverization};
use crate::module::{
    endomorphism_algebra, hom_basis, hom_dim, in_add, kernel, simple, Alg, ModuleError, ModuleMap, Representation,
};
use crate::projective::{min_proj_resolution, precompose_generators, proj_dim, Dim, ProjMap};

/// Matrix of Hom(u, Y): Hom(target, Y) -> Hom(source, Y), in generator coordinates.
pub fn hom_into(alg: &Alg, y: &Representation, u: &ProjMap) -> Matrix {
    let f = alg.field();
    let tsizes: Vec<usize> = u.target.vertices.iter().map(|&v| y.dim_at(v)).collect();
    let n_in: usize = tsizes.iter().sum();
    let n_out: usize = u.source.vertices.iter().map(|&v| y.dim_at(v)).sum();
    let cols: Vec<Vec<u32>> = (0..n_in)
        .map(|i| {
            let e = unit_vec(n_in, i);
            let mut parts = Vec::with_capacity(tsizes.len());
            let mut off = 0;
            for &s in &tsizes {
                parts.push(e[off..off + s].to_vec());
                off += s;
            }
            precompose_generators(alg, y, &parts, u).concat()
        })
        .collect();
    Matrix::from_columns(f, n_out, &cols)
}

/// dim Ext^i(X, Y).
pub fn ext_dim(x: &Representation, y: &Representation, i: usize) -> usize {
    if i == 0 {
        return hom_dim(x, y);
    }
    if x.is_zero() || y.is_zero() {
        return 0;
    }
    let alg = x.algebra();
    let res = min_proj_resolution(x, i + 1);
    if res.terms.len() <= i {
        return 0;
    }
    let dim_hom = |k: usize| -> usize { res.terms[k].vertices.iter().map(|&v| y.dim_at(v)).sum() };
    let n_i = dim_hom(i);
    let ker = match res.differentials.get(i) {
        Some(d) => n_i - hom_into(alg, y, d).rank(),
        None => n_i,
    };
    let im = hom_into(alg, y, &res.differentials[i - 1]).rank();
    ker - im
}

pub fn global_dim(alg: &Alg, bound: usize) -> Dim {
    let mut best = 0;
    for v in 0..alg.num_vertices() {
        match proj_dim(&simple(alg, v), bound) {
            Dim::Exactly(d) => best = best.max(d),
            Dim::AtLeast(b) => return Dim::AtLeast(b),
        }
    }
    Dim::Exactly(best)
}

/// A right add M-approximation ⊕ M_{summands[k]} -> X.
#[derive(Clone, Debug)]
pub struct Approximation {
    /// Index into M for each summand of the source.
    pub summands: Vec<usize>,
    pub source: Representation,
    pub map: ModuleMap,
}

/// Components M_j -> X, kept while none factors through the others.
fn factors_through(m: &[Representation], x: &Representation, comps: &[(usize, ModuleMap)], cand: (usize, &ModuleMap), skip: Option<usize>) -> bool {
    let f = x.field();
    let (j, phi) = cand;
    let ambient = phi.flatten().len();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for (k, (l, psi)) in comps.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        for h in hom_basis(&m[j], &m[*l]) {
            gens.push(psi.compose(&h).flatten());
        }
    }
    if ambient == 0 {
        return true;
    }
    Subspace::span(f, ambient, &gens).contains(&phi.flatten())
}

/// Right add M-approximation of X, pruned so that no component factors
/// through the remaining ones.
pub fn right_add_approximation(m: &[Representation], x: &Representation) -> Approximation {
    let mut comps: Vec<(usize, ModuleMap)> = Vec::new();
    for (j, mj) in m.iter().enumerate() {
        for phi in hom_basis(mj, x) {
            if !factors_through(m, x, &comps, (j, &phi), None) {
                comps.push((j, phi));
            }
        }
    }
    loop {
        let redundant =
            (0..comps.len()).find(|&k| factors_through(m, x, &comps, (comps[k].0, &comps[k].1), Some(k)));
        match redundant {
            Some(k) => {
                comps.remove(k);
            }
            None => break,
        }
    }
    let alg = x.algebra();
    let f = x.field();
    let summands: Vec<usize> = comps.iter().map(|(j, _)| *j).collect();
    let source = if summands.is_empty() {
        Representation::zero(alg.clone())
    } else {
        Representation::direct_sum(&summands.iter().map(|&j| m[j].clone()).collect::<Vec<_>>())
    };
    let map = ModuleMap {
        blocks: (0..alg.num_vertices())
            .map(|v| {
                let mut blk = Matrix::zeros(f, x.dim_at(v), 0);
                for (_, phi) in &comps {
                    blk = blk.hstack(&phi.blocks[v]);
                }
                blk
            })
            .collect(),
    };
    Approximation { summands, source, map }
}

/// Iterated approximations with their kernels.
#[derive(Clone, Debug)]
pub struct AddMResolution {
    pub steps: Vec<Approximation>,
    pub length: Dim,
}

/// Least n with an exact 0 -> M_n -> ... -> M_0 -> X -> 0 built from right
/// add M-approximations; "≥ bound" when the kernels keep leaving add M.
pub fn addm_resolution(m: &[Representation], x: &Representation, bound: usize) -> Result<AddMResolution, ModuleError> {
    let mut steps = Vec::new();
    let mut cur = x.clone();
    let mut n = 0;
    while !cur.is_zero() {
        let ap = right_add_approximation(m, &cur);
        let done = in_add(m, &cur)?;
        let next = kernel(&ap.map, &ap.source).0;
        steps.push(ap);
        if done {
            break;
        }
        if n >= bound {
            return Ok(AddMResolution { steps, length: Dim::AtLeast(bound) });
        }
        cur = next;
        n += 1;
    }
    Ok(AddMResolution { steps, length: Dim::Exactly(n) })
}

pub fn addm_resolution_length(m: &[Representation], x: &Representation, bound: usize) -> Result<Dim, ModuleError> {
    Ok(addm_resolution(m, x, bound)?.length)
}

/// End(M) presented as a bound quiver algebra, one vertex per summand of M
/// (the summands must be pairwise non-isomorphic indecomposables).
pub fn endomorphism_quiver(m: &[Representation], name: &str) -> Result<Quiverization, ModuleError> {
    let alg = m[0].algebra();
    let f = alg.field();
    let sum = Representation::direct_sum(m);
    let (end, _) = endomorphism_algebra(&sum);
    let n = sum.total_dim();
    // the sum's basis is vertex-major, summand-minor
    let offs = sum.offsets();
    let mut before = vec![0usize; alg.num_vertices()];
    let mut idems = Vec::with_capacity(m.len());
    for mj in m {
        let mut e = Matrix::zeros(f, n, n);
        for v in 0..alg.num_vertices() {
            for k in 0..mj.dim_at(v) {
                let i = offs[v] + before[v] + k;
                e.set(i, i, 1);
            }
            before[v] += mj.dim_at(v);
        }
        idems.push(e);
    }
    let opts = QuiverizeOptions {
        name: Some(name.to_string()),
        allow_morita_reduction: true,
        vertex_names: Some((1..=m.len()).map(|i| i.to_string()).collect()),
    };
    Ok(end.quiverize_with_idempotents(idems, &opts)?)
}

/// gl.dim End(M).
pub fn gldim_end(m: &[Representation], bound: usize) -> Result<Dim, ModuleError> {
    let q = endomorphism_quiver(m, "End(M)")?;
    Ok(global_dim(&std::sync::Arc::new(q.algebra), bound))
}

pub fn gldim_of(alg: &BoundQuiverAlgebra, bound: usize) -> Dim {
    global_dim(&std::sync::Arc::new(alg.clone()), bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::{enumerate_indecomposables, CatalogOptions};
    use crate::fixtures;
    use crate::module::{injective, projective};
    use std::sync::Arc;

    #[test]
    fn ext_and_dimensions() {
        let a = Arc::new(fixtures::alg_a3());
        assert_eq!(ext_dim(&simple(&a, 1), &simple(&a, 0), 1), 1);
        assert_eq!(ext_dim(&simple(&a, 0), &simple(&a, 1), 1), 0);
        assert_eq!(ext_dim(&simple(&a, 2), &simple(&a, 0), 2), 0);
        assert_eq!(global_dim(&a, 8), Dim::Exactly(1));
        let g = Arc::new(fixtures::alg_gen4());
        assert_eq!(global_dim(&g, 8), Dim::Exactly(2));
        assert_eq!(ext_dim(&simple(&g, 3), &simple(&g, 0), 2), 2);
        let h = Arc::new(fixtures::alg_her4());
        assert_eq!(global_dim(&h, 8), Dim::Exactly(1));
    }

    #[test]
    fn approximations() {
        let a = Arc::new(fixtures::alg_a3());
        let m: Vec<Representation> = (0..3).map(|i| projective(&a, i)).chain((0..3).map(|i| injective(&a, i))).collect();
        let ap = right_add_approximation(&m, &simple(&a, 1));
        let mut names: Vec<String> = ap.summands.iter().map(|&j| m[j].loewy_name()).collect();
        names.sort();
        names.dedup();
        assert!(ap.map.is_surjective());
        assert_eq!(names, vec!["2/1"]);
        let s = projective(&a, 2);
        assert_eq!(addm_resolution_length(&m, &s, 8).unwrap(), Dim::Exactly(0));
        let l = addm_resolution_length(&m, &simple(&a, 1), 8).unwrap();
        let gd = gldim_end(&dedup(&m), 8).unwrap();
        assert_eq!(gd, Dim::Exactly(2 + l.value().unwrap()));
    }

    fn dedup(m: &[Representation]) -> Vec<Representation> {
        let mut out: Vec<Representation> = Vec::new();
        for x in m {
            if !out.iter().any(|y| crate::module::indecomposable_isomorphic(y, x)) {
                out.push(x.clone());
            }
        }
        out
    }

    #[test]
    fn auslander_algebras() {
        for alg in [fixtures::alg_a3(), fixtures::alg_gen4()] {
            let a = Arc::new(alg);
            let c = enumerate_indecomposables(&a, CatalogOptions::with_bound(3)).unwrap();
            assert_eq!(gldim_end(&c.modules(), 8).unwrap(), Dim::Exactly(2));
        }
    }
}
