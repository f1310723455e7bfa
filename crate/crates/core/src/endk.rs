//! B = End_K(P) for a two-term complex P, the functors Hom_K(P, -) and
//! Hom_K(P, Σ-) into mod B, and the complex Q over B induced by the
//! approximation triangle A -> P' -> P'' -> ΣA.

use std::sync::Arc;

use crate::algebra::{find_isomorphism, BoundQuiverAlgebra};
use crate::homological::hom_into;
use crate::linalg::{CoordinateSystem, Matrix, Subspace};
use crate::matalg::{AbstractModule, MatrixAlgebra, QuiverizeOptions, Quiverization};
use crate::module::{abstract_to_representation, Alg, ModuleError, Representation};
use crate::projective::{ProjMap, ProjSum};
use crate::twoterm::{
    basic_summands, chain_maps, complex_isomorphism, decompose_complex_with_maps, hom_shift, is_silting, is_tilting,
    minimize, null_homotopic, ChainMap, TwoTermComplex,
};

/// End_K(P) of a basic two-term complex, quiverized with one vertex per
/// indecomposable summand (named "1", "2", ... in summand order).
#[derive(Clone, Debug)]
pub struct EndK {
    /// The basic complex ⊕ summands.
    pub complex: TwoTermComplex,
    pub summands: Vec<TwoTermComplex>,
    pub inclusions: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
    /// Basis of all chain maps P -> P.
    pub chains: Vec<ChainMap>,
    chain_coords: CoordinateSystem,
    /// Null-homotopic maps, in chain coordinates.
    pub null: Subspace,
    /// Chain basis indices representing the basis of B.
    pub kept: Vec<usize>,
    /// B as the left regular representation on itself.
    pub regular: MatrixAlgebra,
    pub quiver: Quiverization,
    pub algebra: Alg,
    path_coords: CoordinateSystem,
    /// B vertex of each summand.
    pub vertex_of_summand: Vec<usize>,
}

fn block_maps(alg: &Alg, parts: &[TwoTermComplex], total: &TwoTermComplex) -> (Vec<ChainMap>, Vec<ChainMap>) {
    let (mut r1, mut r0) = (0, 0);
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for p in parts {
        let mut i = ChainMap::zero(p, total);
        let mut q = ChainMap::zero(total, p);
        for (k, &v) in p.pm1().vertices.iter().enumerate() {
            i.m1.entries[r1 + k][k] = alg.vertex_element(v);
            q.m1.entries[k][r1 + k] = alg.vertex_element(v);
        }
        for (k, &v) in p.p0().vertices.iter().enumerate() {
            i.m0.entries[r0 + k][k] = alg.vertex_element(v);
            q.m0.entries[k][r0 + k] = alg.vertex_element(v);
        }
        r1 += p.pm1().len();
        r0 += p.p0().len();
        inc.push(i);
        proj.push(q);
    }
    (inc, proj)
}

impl EndK {
    pub fn new(p: &TwoTermComplex, name: &str) -> Result<EndK, ModuleError> {
        let alg = &p.alg;
        let f = alg.field();
        let summands = basic_summands(p)?;
        if summands.is_empty() {
            return Err(ModuleError::ZeroModule);
        }
        let complex = TwoTermComplex::direct_sum(alg, &summands).with_name(p.name.clone());
        let (inclusions, projections) = block_maps(alg, &summands, &complex);
        let chains = chain_maps(&complex, &complex);
        let flat: Vec<Vec<u32>> = chains.iter().map(|c| c.flatten(alg)).collect();
        let ambient = ChainMap::zero(&complex, &complex).flatten(alg).len();
        let chain_coords = CoordinateSystem::new(f, ambient, &flat);
        let nulls: Vec<Vec<u32>> = null_homotopic(&complex, &complex)
            .iter()
            .map(|c| chain_coords.coordinates(&c.flatten(alg)).expect("null-homotopic maps are chain maps"))
            .collect();
        let null = Subspace::span(f, chains.len(), &nulls);
        let size = complex.pm1().representation(alg).total_dim() + complex.p0().representation(alg).total_dim();
        let ma = MatrixAlgebra::new(f, size, chains.iter().map(|c| c.total_matrix(alg)).collect());
        let (abs, kept) = ma.quotient(&null)?;
        let regular = abs.to_matrix_algebra();
        let class = |c: &ChainMap| class_coords(&chain_coords, &null, &kept, &c.flatten(alg));
        let idems: Vec<Matrix> = (0..summands.len())
            .map(|k| regular.element(&class(&inclusions[k].compose(alg, &projections[k]))))
            .collect();
        let opts = QuiverizeOptions {
            name: Some(name.to_string()),
            allow_morita_reduction: false,
            vertex_names: Some((1..=summands.len()).map(|i| i.to_string()).collect()),
        };
        let quiver = regular.quiverize_with_idempotents(idems, &opts)?;
        let images: Vec<Vec<u32>> =
            quiver.basis_images.iter().map(|m| regular.coords(m).expect("basis image lies in B")).collect();
        let path_coords = CoordinateSystem::new(f, regular.dim(), &images);
        let mut vertex_of_summand = vec![0; summands.len()];
        for (v, &k) in quiver.vertex_sources.iter().enumerate() {
            vertex_of_summand[k] = v;
        }
        let algebra = Arc::new(quiver.algebra.clone());
        Ok(EndK {
            complex,
            summands,
            inclusions,
            projections,
            chains,
            chain_coords,
            null,
            kept,
            regular,
            quiver,
            algebra,
            path_coords,
            vertex_of_summand,
        })
    }

    pub fn dim(&self) -> usize {
        self.regular.dim()
    }

    fn base(&self) -> &Alg {
        &self.complex.alg
    }

    /// Coordinates of the homotopy class of a chain endomorphism in the basis of B.
    pub fn class_coords(&self, c: &ChainMap) -> Vec<u32> {
        class_coords(&self.chain_coords, &self.null, &self.kept, &c.flatten(self.base()))
    }

    pub fn is_null_homotopic(&self, c: &ChainMap) -> bool {
        self.class_coords(c).iter().all(|&x| x == 0)
    }

    /// The class of a chain endomorphism as an element of the bound quiver
    /// algebra B.
    pub fn to_b_element(&self, c: &ChainMap) -> Vec<u32> {
        self.path_coords.coordinates(&self.class_coords(c)).expect("B is spanned by its paths")
    }

    /// The class of a chain map between summands j -> k, placed in e_k B e_j.
    pub fn summand_map_element(&self, j: usize, k: usize, g: &ChainMap) -> Vec<u32> {
        let alg = self.base();
        self.to_b_element(&self.inclusions[k].compose(alg, g).compose(alg, &self.projections[j]))
    }

    fn build(&self, dim: usize, action: Vec<Matrix>) -> Result<Representation, ModuleError> {
        let m = AbstractModule { dim, action };
        abstract_to_representation(&m, &self.regular, &self.quiver, &self.algebra)
    }

    /// H(X) = Hom_K(P, X) as a right B-module.
    pub fn h_module(&self, x: &Representation) -> Result<Representation, ModuleError> {
        let alg = self.base();
        let f = alg.field();
        let p = &self.complex;
        let d = hom_into(alg, x, &p.d);
        let ker = d.kernel_basis();
        let n0 = d.cols();
        let space = CoordinateSystem::new(f, n0, &ker);
        let action = self
            .kept
            .iter()
            .map(|&i| {
                let act = hom_into(alg, x, &self.chains[i].m0);
                let cols: Vec<Vec<u32>> =
                    ker.iter().map(|v| space.coordinates(&act.mul_vec(v)).expect("H(X) is B-stable")).collect();
                Matrix::from_columns(f, ker.len(), &cols)
            })
            .collect();
        self.build(ker.len(), action)
    }

    /// E(X) = Hom_K(P, ΣX) as a right B-module.
    pub fn e_module(&self, x: &Representation) -> Result<Representation, ModuleError> {
        let alg = self.base();
        let f = alg.field();
        let p = &self.complex;
        let d = hom_into(alg, x, &p.d);
        let n1 = d.rows();
        let image = Subspace::span(f, n1, &d.column_space_basis());
        let reps = image.complement_basis();
        let mut is_pivot = vec![false; n1];
        for &c in image.pivots() {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n1).filter(|&i| !is_pivot[i]).collect();
        let action = self
            .kept
            .iter()
            .map(|&i| {
                let act = hom_into(alg, x, &self.chains[i].m1);
                let cols: Vec<Vec<u32>> = reps
                    .iter()
                    .map(|v| {
                        let r = image.reduce(&act.mul_vec(v));
                        free.iter().map(|&k| r[k]).collect()
                    })
                    .collect();
                Matrix::from_columns(f, reps.len(), &cols)
            })
            .collect();
        self.build(reps.len(), action)
    }
}

fn class_coords(chain_coords: &CoordinateSystem, null: &Subspace, kept: &[usize], flat: &[u32]) -> Vec<u32> {
    let v = chain_coords.coordinates(flat).expect("argument is a chain map");
    let r = null.reduce(&v);
    kept.iter().map(|&i| r[i]).collect()
}

/// The complex Q over B with its ingredients.
#[derive(Clone, Debug)]
pub struct InducedQ {
    pub endk: EndK,
    /// Summand index of each copy in P'.
    pub p_prime: Vec<usize>,
    /// Summand index of each indecomposable summand of P''.
    pub p_double_prime: Vec<usize>,
    /// Q = Hom_K(P, P') -> Hom_K(P, P''), minimized, in degrees -1 and 0.
    pub q: TwoTermComplex,
}

/// Build Q from a left add P-approximation A[0] -> P' and its cone P''.
pub fn induced_q(p: &TwoTermComplex) -> Result<InducedQ, ModuleError> {
    if !is_silting(p)? {
        return Err(ModuleError::NotSilting(p.name.clone()));
    }
    let endk = EndK::new(p, &format!("End({})", p.name))?;
    let alg = p.alg.clone();
    let regular = TwoTermComplex::regular(&alg);
    // approximation: a basis of Hom_K(A[0], P_j) for every summand
    let mut p_prime = Vec::new();
    let mut alphas: Vec<ProjMap> = Vec::new();
    for (j, s) in endk.summands.iter().enumerate() {
        for rep in hom_shift(&regular, s, 0).representatives {
            let c = ChainMap::unflatten(&alg, &regular, s, &rep);
            p_prime.push(j);
            alphas.push(c.m0);
        }
    }
    let parts: Vec<TwoTermComplex> = p_prime.iter().map(|&j| endk.summands[j].clone()).collect();
    let pp = TwoTermComplex::direct_sum(&alg, &parts);
    let (copy_inc, _) = block_maps(&alg, &parts, &pp);
    let a_sum = regular.p0().clone();
    // cone: A ⊕ P'⁻¹ -> P'⁰ with d = [α | d_P']
    let cone_src = a_sum.concat(pp.pm1());
    let mut cd = ProjMap::zero(&alg, cone_src.clone(), pp.p0().clone());
    let mut row = 0;
    for (alpha, part) in alphas.iter().zip(&parts) {
        for r in 0..part.p0().len() {
            for c in 0..a_sum.len() {
                cd.entries[row + r][c] = alpha.entries[r][c].clone();
            }
        }
        row += part.p0().len();
    }
    for r in 0..pp.p0().len() {
        for c in 0..pp.pm1().len() {
            cd.entries[r][a_sum.len() + c] = pp.d.entries[r][c].clone();
        }
    }
    let cone = TwoTermComplex::new(alg.clone(), "cone", cd);
    let mut incl = ChainMap::zero(&pp, &cone);
    for (k, &v) in pp.pm1().vertices.iter().enumerate() {
        incl.m1.entries[a_sum.len() + k][k] = alg.vertex_element(v);
    }
    incl.m0 = ProjMap::identity(&alg, pp.p0());
    let (min, cone_parts) = decompose_complex_with_maps(&cone)?;
    let mut p_double_prime = Vec::new();
    let mut to_summand = Vec::new();
    for part in &cone_parts {
        let (k, iso) = endk
            .summands
            .iter()
            .enumerate()
            .find_map(|(k, s)| complex_isomorphism(&part.complex, s).map(|iso| (k, iso)))
            .ok_or_else(|| ModuleError::NotSilting(format!("cone summand {} is not in add P", part.complex.shape())))?;
        p_double_prime.push(k);
        to_summand.push(iso.compose(&alg, &part.projection).compose(&alg, &min.pi));
    }
    let b = endk.algebra.clone();
    let src = ProjSum::new(p_prime.iter().map(|&j| endk.vertex_of_summand[j]).collect());
    let tgt = ProjSum::new(p_double_prime.iter().map(|&k| endk.vertex_of_summand[k]).collect());
    let mut qd = ProjMap::zero(&b, src, tgt);
    for (s, (&k, g)) in p_double_prime.iter().zip(&to_summand).enumerate() {
        for (c, &j) in p_prime.iter().enumerate() {
            let h = g.compose(&alg, &incl).compose(&alg, &copy_inc[c]);
            qd.entries[s][c] = endk.summand_map_element(j, k, &h);
        }
    }
    let q = minimize(&TwoTermComplex::new(b, format!("Q({})", p.name), qd)).complex;
    Ok(InducedQ { endk, p_prime, p_double_prime, q })
}

/// Comparison of A with End_K(Q) over B.
#[derive(Clone, Debug)]
pub struct DoubleEndoReport {
    pub dim_a: usize,
    pub dim_end_q: usize,
    pub tilting: bool,
    /// Whether End_K(Q) ≅ A; `None` when the search was cut off or not run.
    pub isomorphic: Option<bool>,
    pub end_q: BoundQuiverAlgebra,
}

impl DoubleEndoReport {
    /// dim End(Q) ≤ dim A, with an isomorphism exactly for tilting P.
    pub fn holds(&self) -> Option<bool> {
        if self.dim_end_q > self.dim_a {
            return Some(false);
        }
        match self.isomorphic {
            Some(iso) => Some(iso == self.tilting),
            None if !self.tilting => Some(self.dim_end_q < self.dim_a),
            None => None,
        }
    }
}

pub fn verify_double_endo(p: &TwoTermComplex, cap: usize) -> Result<DoubleEndoReport, ModuleError> {
    let iq = induced_q(p)?;
    let endq = EndK::new(&iq.q, &format!("End({})", iq.q.name))?;
    let tilting = is_tilting(p)?;
    let a = p.alg.as_ref();
    let end_q = endq.quiver.algebra.clone();
    let isomorphic = if end_q.dim() != a.dim() {
        Some(false)
    } else {
        find_isomorphism(a, &end_q, cap).map(|r| r.is_some())
    };
    Ok(DoubleEndoReport { dim_a: a.dim(), dim_end_q: endq.dim(), tilting, isomorphic, end_q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::{enumerate_indecomposables, CatalogOptions};
    use crate::fixtures;
    use crate::module::{is_isomorphic, projective};
    use crate::twoterm::{hom_to_stalk_dim, parse_complex};

    #[test]
    fn regular_complex_gives_a() {
        let a: Alg = Arc::new(fixtures::alg_gen4());
        let r = TwoTermComplex::regular(&a);
        let e = EndK::new(&r, "B").unwrap();
        assert_eq!(e.dim(), a.dim());
        assert!(find_isomorphism(&a, &e.quiver.algebra, 10_000).unwrap().is_some());
        // H(P(i)) is the projective B-module of the same summand
        for v in 0..4 {
            let h = e.h_module(&projective(&a, v)).unwrap();
            assert_eq!(h.total_dim(), projective(&a, v).total_dim());
            assert!(e.e_module(&projective(&a, v)).unwrap().is_zero());
        }
        let iq = induced_q(&r).unwrap();
        // T(Q) = X(A[0]) = 0 forces Q = B[1]
        assert!(iq.q.p0().is_empty());
        assert_eq!(iq.q.pm1().len(), 4);
        let rep = verify_double_endo(&r, 10_000).unwrap();
        assert_eq!(rep.holds(), Some(true));
    }

    #[test]
    fn gentle_square_complex() {
        let a: Alg = Arc::new(fixtures::alg_gen4());
        let p = parse_complex(fixtures::P_42, &a).unwrap();
        let e = EndK::new(&p, "B").unwrap();
        let b = &e.quiver.algebra;
        assert_eq!(b.num_vertices(), 4);
        assert!(b.relations().is_empty());
        assert_eq!(b.quiver().num_arrows(), 4);
        let iq = induced_q(&p).unwrap();
        assert!(is_silting(&iq.q).unwrap());
        let rep = verify_double_endo(&p, 100_000).unwrap();
        assert!(rep.tilting);
        assert_eq!(rep.holds(), Some(true));
        // H and E agree with the stalk dimensions
        let cat = enumerate_indecomposables(&a, CatalogOptions::with_bound(4)).unwrap();
        for x in cat.modules() {
            assert_eq!(e.h_module(&x).unwrap().total_dim(), hom_to_stalk_dim(&p, &x, 0));
            assert_eq!(e.e_module(&x).unwrap().total_dim(), hom_to_stalk_dim(&p, &x, 1));
            // T(Q) = X(P): E(X) for X torsion-free lies in T(Q)
            if hom_to_stalk_dim(&p, &x, 0) == 0 {
                let ex = e.e_module(&x).unwrap();
                assert_eq!(hom_to_stalk_dim(&iq.q, &ex, 1), 0);
            }
            if hom_to_stalk_dim(&p, &x, 1) == 0 {
                let hx = e.h_module(&x).unwrap();
                assert_eq!(hom_to_stalk_dim(&iq.q, &hx, 0), 0);
            }
        }
        let _ = is_isomorphic;
    }
}
