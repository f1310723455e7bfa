//! Torsion pairs induced by two-term silting complexes, the separating and
//! splitting properties, the functors H and E into mod B, annihilator
//! quotients, classical tilting modules, and executable versions of the
//! structural lemmas relating mod A and mod B.

use std::sync::Arc;

use serde::Serialize;

use crate::ar::{almost_split_sequence, enumerate_indecomposables, CatalogOptions, IndecCatalog};
use crate::endk::EndK;
use crate::homological::{addm_resolution_length, ext_dim, hom_into};
use crate::linalg::{Matrix, Subspace};
use crate::matalg::{AbstractModule, MatrixAlgebra, QuiverizeOptions};
use crate::module::{
    abstract_to_representation, decompose, hom_dim, in_add, in_fac, indecomposable_isomorphic, injective, is_isomorphic,
    projective, Alg, ModuleError, Representation,
};
use crate::projective::{inj_dim, is_injective, is_projective, proj_dim, tau, Dim};
use crate::twoterm::{is_silting, proj_presentation, TwoTermComplex};

/// Bound used for projective and injective dimensions.
pub const DIM_BOUND: usize = 12;

/// Outcome of a check whose hypotheses may fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(String),
    Inapplicable(String),
}

impl Verdict {
    pub fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(why())
        }
    }
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
    /// Pass and inapplicable both count as "not failed".
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail(a), _) => Verdict::Fail(a),
            (_, Verdict::Fail(b)) => Verdict::Fail(b),
            (Verdict::Inapplicable(a), _) => Verdict::Inapplicable(a),
            (_, b) => b,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(s) => write!(f, "FAIL ({s})"),
            Verdict::Inapplicable(s) => write!(f, "inapplicable ({s})"),
        }
    }
}

fn at_most(d: Dim, k: usize) -> bool {
    matches!(d, Dim::Exactly(n) if n <= k)
}

/// The complex Hom_A(P, X): degree k holds Hom(P^{-k}, X).
#[derive(Clone, Debug)]
pub struct HomComplex {
    /// (degree, dimension) of the non-zero terms.
    pub terms: Vec<(i32, usize)>,
    /// Differential from degree 0 to degree 1.
    pub d0: Matrix,
}

pub fn hom_complex(p: &TwoTermComplex, x: &Representation) -> HomComplex {
    let d0 = hom_into(&p.alg, x, &p.d);
    HomComplex { terms: vec![(0, d0.cols()), (1, d0.rows())], d0 }
}

impl HomComplex {
    fn dim(&self, k: i32) -> usize {
        self.terms.iter().find(|(d, _)| *d == k).map_or(0, |t| t.1)
    }
    fn rank_from(&self, k: i32) -> usize {
        if k == 0 {
            self.d0.rank()
        } else {
            0
        }
    }
    /// dim H^k.
    pub fn cohomology(&self, k: i32) -> usize {
        self.dim(k) - self.rank_from(k) - self.rank_from(k - 1)
    }
}

/// dim Hom_D(P, Σ^i X), as the i-th cohomology of Hom_A(P, X).
pub fn dbhom(p: &TwoTermComplex, x: &Representation, i: i32) -> usize {
    hom_complex(p, x).cohomology(i)
}

/// Classification of a complete catalog by the torsion pair of P.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionPairReport {
    pub complex: String,
    pub torsion: Vec<String>,
    pub torsion_free: Vec<String>,
    pub unassigned: Vec<String>,
    #[serde(skip)]
    pub t_indices: Vec<usize>,
    #[serde(skip)]
    pub f_indices: Vec<usize>,
    pub split: bool,
}

pub fn torsion_pair(p: &TwoTermComplex, catalog: &IndecCatalog) -> Result<TorsionPairReport, ModuleError> {
    if !catalog.exhaustive {
        return Err(ModuleError::IncompleteCatalog(catalog.bound));
    }
    Ok(classify(p, catalog))
}

/// Classify whatever the catalog lists, exhaustive or not.
fn classify(p: &TwoTermComplex, catalog: &IndecCatalog) -> TorsionPairReport {
    let mut rep = TorsionPairReport {
        complex: p.name.clone(),
        torsion: vec![],
        torsion_free: vec![],
        unassigned: vec![],
        t_indices: vec![],
        f_indices: vec![],
        split: false,
    };
    for (i, e) in catalog.entries.iter().enumerate() {
        let in_t = dbhom(p, &e.module, 1) == 0;
        let in_f = dbhom(p, &e.module, 0) == 0;
        if in_t {
            rep.torsion.push(e.name.clone());
            rep.t_indices.push(i);
        }
        if in_f {
            rep.torsion_free.push(e.name.clone());
            rep.f_indices.push(i);
        }
        if !in_t && !in_f {
            rep.unassigned.push(e.name.clone());
        }
    }
    rep.split = rep.unassigned.is_empty();
    rep
}

/// Catalog bounds for an analysis.
#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    /// Dimension bound for the catalog of A.
    pub bound_a: usize,
    /// Minimum dimension bound for the catalog of B; raised above the
    /// largest module of X(P) ∪ Y(P).
    pub bound_b: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { bound_a: 6, bound_b: 6 }
    }
}

/// Everything derived from a silting complex P over a representation-finite A.
#[derive(Clone, Debug)]
pub struct SiltingAnalysis {
    pub complex: TwoTermComplex,
    pub catalog: IndecCatalog,
    pub torsion: TorsionPairReport,
    /// Whether (T(P), F(P)) splits mod A; T(P) and F(P) themselves are always complete.
    pub separating: bool,
    pub endk: EndK,
    /// (catalog index of X ∈ F(P), E(X)).
    pub x_modules: Vec<(usize, Representation)>,
    /// (catalog index of X ∈ T(P), H(X)).
    pub y_modules: Vec<(usize, Representation)>,
    pub b_catalog: IndecCatalog,
    pub h0_summands: Vec<Representation>,
    pub hm1: Representation,
    /// Indecomposable summands of H⁻¹(νP) and H⁰(νP).
    pub nu_hm1_summands: Vec<Representation>,
    pub nu_h0: Representation,
}

fn basic(parts: Vec<Representation>) -> Vec<Representation> {
    let mut out: Vec<Representation> = Vec::new();
    for x in parts {
        if !out.iter().any(|y| indecomposable_isomorphic(y, &x)) {
            out.push(x);
        }
    }
    out
}

impl SiltingAnalysis {
    pub fn new(p: &TwoTermComplex, opts: AnalysisOptions) -> Result<SiltingAnalysis, ModuleError> {
        if !is_silting(p)? {
            return Err(ModuleError::NotSilting(p.name.clone()));
        }
        let alg = p.alg.clone();
        let catalog = enumerate_indecomposables(&alg, CatalogOptions::with_bound(opts.bound_a))?;
        let torsion = classify(p, &catalog);
        let endk = EndK::new(p, &format!("End({})", p.name))?;
        let x_modules = torsion
            .f_indices
            .iter()
            .map(|&i| Ok((i, endk.e_module(&catalog.entries[i].module)?)))
            .collect::<Result<Vec<_>, ModuleError>>()?;
        let y_modules = torsion
            .t_indices
            .iter()
            .map(|&i| Ok((i, endk.h_module(&catalog.entries[i].module)?)))
            .collect::<Result<Vec<_>, ModuleError>>()?;
        let largest = x_modules.iter().chain(&y_modules).map(|(_, m)| m.total_dim()).max().unwrap_or(0);
        let b_catalog =
            enumerate_indecomposables(&endk.algebra, CatalogOptions::with_bound(opts.bound_b.max(largest + 1)))?;
        // H and E are equivalences onto Y(P) and X(P), so covering a complete
        // B-catalog certifies that the listed T(P) and F(P) are complete
        let covered = b_catalog.complete
            && b_catalog.entries.iter().all(|e| {
                x_modules.iter().chain(&y_modules).any(|(_, m)| indecomposable_isomorphic(m, &e.module))
            });
        if !catalog.exhaustive && !covered {
            return Err(ModuleError::IncompleteCatalog(catalog.bound));
        }
        // with T(P) and F(P) certified finite, a rep-infinite A has
        // indecomposables in neither
        let separating = torsion.unassigned.is_empty() && catalog.complete;
        let h0_summands = basic(decompose(&p.h0())?);
        let nu = p.nakayama();
        let nu_hm1_summands = basic(decompose(&nu.hm1)?);
        Ok(SiltingAnalysis {
            complex: p.clone(),
            catalog,
            torsion,
            separating,
            endk,
            x_modules,
            y_modules,
            b_catalog,
            h0_summands,
            hm1: p.hm1(),
            nu_hm1_summands,
            nu_h0: nu.h0,
        })
    }

    pub fn algebra(&self) -> &Alg {
        &self.complex.alg
    }
    pub fn b(&self) -> &Alg {
        &self.endk.algebra
    }
    fn module(&self, i: usize) -> &Representation {
        &self.catalog.entries[i].module
    }
    fn t_modules(&self) -> Vec<&Representation> {
        self.torsion.t_indices.iter().map(|&i| self.module(i)).collect()
    }
    fn f_modules(&self) -> Vec<&Representation> {
        self.torsion.f_indices.iter().map(|&i| self.module(i)).collect()
    }
    fn x_reps(&self) -> Vec<Representation> {
        self.x_modules.iter().map(|(_, m)| m.clone()).collect()
    }

    pub fn is_separating(&self) -> bool {
        self.separating
    }

    /// Splitting, decided by the B-catalog route and by Ext² vanishing;
    /// the two routes must agree.
    pub fn is_splitting(&self) -> Result<SplittingReport, ModuleError> {
        let ext2 = self
            .t_modules()
            .iter()
            .all(|t| self.f_modules().iter().all(|f| ext_dim(t, f, 2) == 0));
        let images: Vec<&Representation> = self.x_modules.iter().chain(&self.y_modules).map(|(_, m)| m).collect();
        let listed = self.b_catalog.entries.iter().all(|e| images.iter().any(|m| indecomposable_isomorphic(m, &e.module)));
        // knitting past a bound above every image found a B-module outside
        // X(P) and Y(P); that only settles it when A has finitely many images
        let catalog_route = if self.b_catalog.complete {
            Some(listed)
        } else if self.catalog.complete {
            Some(false)
        } else {
            None
        };
        if let Some(route) = catalog_route.filter(|&r| r != ext2) {
            return Err(ModuleError::RouteDisagreement(format!(
                "{}: B-catalog route says {route}, Ext² route says {ext2}",
                self.complex.name
            )));
        }
        Ok(SplittingReport { splitting: ext2, b_catalog_complete: self.b_catalog.complete })
    }

    /// Id_A X ≤ 1 on F(P).
    pub fn check_id_restriction(&self) -> Restriction {
        let offenders = self
            .torsion
            .f_indices
            .iter()
            .filter_map(|&i| {
                let d = inj_dim(self.module(i), DIM_BOUND);
                (!at_most(d, 1)).then(|| (self.catalog.entries[i].name.clone(), d.to_string()))
            })
            .collect::<Vec<_>>();
        Restriction { holds: offenders.is_empty(), offenders }
    }

    /// Pd_A X ≤ 1 on T(P).
    pub fn check_pd_restriction(&self) -> Restriction {
        let offenders = self
            .torsion
            .t_indices
            .iter()
            .filter_map(|&i| {
                let d = proj_dim(self.module(i), DIM_BOUND);
                (!at_most(d, 1)).then(|| (self.catalog.entries[i].name.clone(), d.to_string()))
            })
            .collect::<Vec<_>>();
        Restriction { holds: offenders.is_empty(), offenders }
    }

    /// Max pd_B over X(P) and max id_B over Y(P).
    pub fn b_side_dimensions(&self) -> (Vec<(String, Dim)>, Vec<(String, Dim)>) {
        let xs = self.x_modules.iter().map(|(_, m)| (m.loewy_name(), proj_dim(m, DIM_BOUND))).collect();
        let ys = self.y_modules.iter().map(|(_, m)| (m.loewy_name(), inj_dim(m, DIM_BOUND))).collect();
        (xs, ys)
    }

    /// Separating ⟺ pd_B ≤ 1 on X(P) (under Id ≤ 1 on F), and dually
    /// separating ⟺ id_B ≤ 1 on Y(P) (under Pd ≤ 1 on T).
    pub fn verify_separating_criterion(&self) -> (Verdict, Verdict) {
        let sep = self.is_separating();
        let (xs, ys) = self.b_side_dimensions();
        let primary = if !self.check_id_restriction().holds {
            Verdict::Inapplicable("Id_A X <= 1 fails on F(P)".into())
        } else {
            let small = xs.iter().all(|(_, d)| at_most(*d, 1));
            Verdict::from_bool(sep == small, || {
                format!("separating = {sep} but pd_B <= 1 on X(P) = {small}: {}", fmt_dims(&xs))
            })
        };
        let dual = if !self.check_pd_restriction().holds {
            Verdict::Inapplicable("Pd_A X <= 1 fails on T(P)".into())
        } else {
            let small = ys.iter().all(|(_, d)| at_most(*d, 1));
            Verdict::from_bool(sep == small, || {
                format!("separating = {sep} but id_B <= 1 on Y(P) = {small}: {}", fmt_dims(&ys))
            })
        };
        (primary, dual)
    }

    /// Ext-projectives of T(P) are add H⁰(P); Ext-injectives of F(P) are
    /// add H⁻¹(νP).
    pub fn verify_ext_projectives(&self) -> Verdict {
        let ts = self.t_modules();
        let fs = self.f_modules();
        for (&i, x) in self.torsion.t_indices.iter().zip(&ts) {
            let ext_proj = ts.iter().all(|y| ext_dim(x, y, 1) == 0);
            let in_h0 = self.h0_summands.iter().any(|h| indecomposable_isomorphic(h, x));
            if ext_proj != in_h0 {
                return Verdict::Fail(format!(
                    "{}: Ext-projective in T = {ext_proj}, summand of H0 = {in_h0}",
                    self.catalog.entries[i].name
                ));
            }
        }
        for (&i, x) in self.torsion.f_indices.iter().zip(&fs) {
            let ext_inj = fs.iter().all(|y| ext_dim(y, x, 1) == 0);
            let in_nu = self.nu_hm1_summands.iter().any(|h| indecomposable_isomorphic(h, x));
            if ext_inj != in_nu {
                return Verdict::Fail(format!(
                    "{}: Ext-injective in F = {ext_inj}, summand of H-1(nu P) = {in_nu}",
                    self.catalog.entries[i].name
                ));
            }
        }
        Verdict::Pass
    }

    /// The middle term of the almost split sequence ending in a
    /// non-projective summand of H⁰(P) lies in add(H⁰(P) ⊕ H⁻¹(νP)).
    pub fn verify_ar_middle_lemma(&self) -> Result<Verdict, ModuleError> {
        if !self.is_separating() {
            return Ok(Verdict::Inapplicable("P is not separating".into()));
        }
        let allowed: Vec<Representation> =
            self.h0_summands.iter().chain(&self.nu_hm1_summands).cloned().collect();
        for y in &self.h0_summands {
            if is_projective(y) {
                continue;
            }
            let seq = almost_split_sequence(y)?;
            if !in_add(&allowed, &seq.middle)? {
                return Ok(Verdict::Fail(format!(
                    "middle term {} of the sequence ending in {}",
                    seq.middle.loewy_name(),
                    y.loewy_name()
                )));
            }
        }
        Ok(Verdict::Pass)
    }

    fn e(&self, x: &Representation) -> Result<Representation, ModuleError> {
        self.endk.e_module(x)
    }
    fn h(&self, x: &Representation) -> Result<Representation, ModuleError> {
        self.endk.h_module(x)
    }

    /// The three Hom-vanishing statements in mod B: Hom(E(I), E(X)) = 0,
    /// Hom(E(τH⁰P), E(X)) = 0 and Hom(H(X), H(H⁰P)) = 0.
    pub fn verify_hom_vanishing_lemmas(&self) -> Result<Vec<(String, Verdict)>, ModuleError> {
        let id_ok = self.check_id_restriction().holds;
        let pd_ok = self.check_pd_restriction().holds;
        let sep = self.is_separating();
        let outside_nu: Vec<(usize, &Representation)> = self
            .torsion
            .f_indices
            .iter()
            .map(|&i| (i, self.module(i)))
            .filter(|(_, x)| !self.nu_hm1_summands.iter().any(|h| indecomposable_isomorphic(h, x)))
            .collect();
        let name = |i: usize| self.catalog.entries[i].name.clone();

        let injective_source = if !id_ok {
            Verdict::Inapplicable("Id_A X <= 1 fails on F(P)".into())
        } else {
            let mut v = Verdict::Pass;
            'outer: for &i in &self.torsion.f_indices {
                if !is_injective(self.module(i)) {
                    continue;
                }
                let ei = self.e(self.module(i))?;
                for &(j, x) in &outside_nu {
                    if hom_dim(&ei, &self.e(x)?) != 0 {
                        v = Verdict::Fail(format!("Hom_B(E({}), E({})) != 0", name(i), name(j)));
                        break 'outer;
                    }
                }
            }
            v
        };

        let tau_source = if !id_ok || !sep {
            Verdict::Inapplicable(if sep { "Id_A X <= 1 fails on F(P)" } else { "P is not separating" }.into())
        } else {
            let taus: Vec<Representation> = self.h0_summands.iter().map(tau).filter(|t| !t.is_zero()).collect();
            let mut v = Verdict::Pass;
            'outer2: for t in &taus {
                let et = self.e(t)?;
                for &(j, x) in &outside_nu {
                    if hom_dim(&et, &self.e(x)?) != 0 {
                        v = Verdict::Fail(format!("Hom_B(E({}), E({})) != 0", t.loewy_name(), name(j)));
                        break 'outer2;
                    }
                }
            }
            v
        };

        let h0_target = if !pd_ok || !sep {
            Verdict::Inapplicable(if sep { "Pd_A X <= 1 fails on T(P)" } else { "P is not separating" }.into())
        } else {
            let hh = self.h(&self.complex.h0())?;
            let mut v = Verdict::Pass;
            for &i in &self.torsion.t_indices {
                let x = self.module(i);
                if self.h0_summands.iter().any(|h| indecomposable_isomorphic(h, x)) {
                    continue;
                }
                if hom_dim(&self.h(x)?, &hh) != 0 {
                    v = Verdict::Fail(format!("Hom_B(H({}), H(H0 P)) != 0", name(i)));
                    break;
                }
            }
            v
        };
        Ok(vec![
            ("Hom_B(E(I), E(X)) = 0".into(), injective_source),
            ("Hom_B(E(tau H0 P), E(X)) = 0".into(), tau_source),
            ("Hom_B(H(X), H(H0 P)) = 0".into(), h0_target),
        ])
    }

    /// When P is splitting: H(H⁰P) is projective with B ≅ H(H⁰P) ⊕ E(H⁻¹P),
    /// and E(H⁻¹νP) is injective with DB ≅ E(H⁻¹νP) ⊕ H(H⁰νP).
    pub fn verify_b_decompositions(&self) -> Result<Verdict, ModuleError> {
        if !self.is_splitting()?.splitting {
            return Ok(Verdict::Inapplicable("P is not splitting".into()));
        }
        let b = self.b();
        let n = b.num_vertices();
        let bb = Representation::direct_sum(&(0..n).map(|v| projective(b, v)).collect::<Vec<_>>());
        let db = Representation::direct_sum(&(0..n).map(|v| injective(b, v)).collect::<Vec<_>>());
        let h_h0 = self.h(&self.complex.h0())?;
        let e_hm1 = self.e(&self.hm1)?;
        let e_nu = self.e(&Representation::direct_sum(&self.nu_hm1_summands_or_zero()))?;
        let nu_hm1 = self.complex.nakayama().hm1;
        let e_nu_full = self.e(&nu_hm1)?;
        let h_nu = self.h(&self.nu_h0)?;
        let _ = e_nu;
        if !h_h0.is_zero() && !is_projective(&h_h0) {
            return Ok(Verdict::Fail("H(H0 P) is not projective".into()));
        }
        if !e_nu_full.is_zero() && !is_injective(&e_nu_full) {
            return Ok(Verdict::Fail("E(H-1(nu P)) is not injective".into()));
        }
        if h_h0.total_dim() + e_hm1.total_dim() != b.dim() {
            return Ok(Verdict::Fail(format!(
                "dim H(H0 P) + dim E(H-1 P) = {} + {} != dim B = {}",
                h_h0.total_dim(),
                e_hm1.total_dim(),
                b.dim()
            )));
        }
        if !is_isomorphic(&Representation::direct_sum(&[h_h0, e_hm1]), &bb)? {
            return Ok(Verdict::Fail("B is not H(H0 P) + E(H-1 P)".into()));
        }
        if !is_isomorphic(&Representation::direct_sum(&[e_nu_full, h_nu]), &db)? {
            return Ok(Verdict::Fail("DB is not E(H-1 nu P) + H(H0 nu P)".into()));
        }
        Ok(Verdict::Pass)
    }

    fn nu_hm1_summands_or_zero(&self) -> Vec<Representation> {
        if self.nu_hm1_summands.is_empty() {
            vec![Representation::zero(self.algebra().clone())]
        } else {
            self.nu_hm1_summands.clone()
        }
    }

    /// Torsion-pair axioms, T(P) = Fac H⁰(P), the dimension form of the
    /// equivalence Hom_D(P, -), and (when splitting) that E(F) ∪ H(T) is the
    /// catalog of B.
    pub fn verify_torsion_axioms(&self) -> Result<Verdict, ModuleError> {
        let name = |i: usize| self.catalog.entries[i].name.clone();
        for &t in &self.torsion.t_indices {
            for &f in &self.torsion.f_indices {
                if hom_dim(self.module(t), self.module(f)) != 0 {
                    return Ok(Verdict::Fail(format!("Hom({}, {}) != 0", name(t), name(f))));
                }
            }
        }
        let h0 = self.complex.h0();
        for (i, e) in self.catalog.entries.iter().enumerate() {
            let in_t = self.torsion.t_indices.contains(&i);
            if in_fac(&h0, &e.module) != in_t {
                return Ok(Verdict::Fail(format!("{}: Fac H0 membership differs from T(P)", e.name)));
            }
        }
        for (a, (i, hx)) in self.y_modules.iter().enumerate() {
            if hx.total_dim() != dbhom(&self.complex, self.module(*i), 0) {
                return Ok(Verdict::Fail(format!("dim H({}) differs from dbhom", name(*i))));
            }
            for (j, hy) in &self.y_modules[a..] {
                if hom_dim(hx, hy) != hom_dim(self.module(*i), self.module(*j)) {
                    return Ok(Verdict::Fail(format!("Hom_B(H({}), H({})) has the wrong dimension", name(*i), name(*j))));
                }
            }
        }
        if self.is_splitting()?.splitting {
            if self.b_catalog.len() != self.x_modules.len() + self.y_modules.len() {
                return Ok(Verdict::Fail(format!(
                    "B has {} indecomposables but |X| + |Y| = {}",
                    self.b_catalog.len(),
                    self.x_modules.len() + self.y_modules.len()
                )));
            }
            for (_, m) in self.x_modules.iter().chain(&self.y_modules) {
                if self.b_catalog.find(m).is_none() {
                    return Ok(Verdict::Fail(format!("{} is not an indecomposable B-module", m.loewy_name())));
                }
            }
        }
        Ok(Verdict::Pass)
    }

    /// Pd over End_B(N) of Hom_B(N, H(U)) ≤ Pd over End_A(M) of Hom_A(M, U)
    /// for U ∈ T(P), with N = B ⊕ H(M) ⊕ X(P), measured as add-resolution
    /// lengths.
    pub fn verify_resolution_comparison(&self, m: &[Representation]) -> Result<Verdict, ModuleError> {
        if !self.is_separating() {
            return Ok(Verdict::Inapplicable("P is not separating".into()));
        }
        if !self.check_id_restriction().holds {
            return Ok(Verdict::Inapplicable("Id_A X <= 1 fails on F(P)".into()));
        }
        let alg = self.algebra();
        let gens: Vec<Representation> = (0..alg.num_vertices()).map(|v| projective(alg, v)).collect();
        if !in_add(m, &Representation::direct_sum(&gens))? {
            return Ok(Verdict::Inapplicable("M is not a generator".into()));
        }
        let b = self.b();
        let mut n: Vec<Representation> = (0..b.num_vertices()).map(|v| projective(b, v)).collect();
        for x in m {
            let hx = self.h(x)?;
            if !hx.is_zero() {
                n.extend(decompose(&hx)?);
            }
        }
        n.extend(self.x_reps());
        let n = basic(n);
        for &i in &self.torsion.t_indices {
            let u = self.module(i);
            let lhs = addm_resolution_length(&n, &self.h(u)?, DIM_BOUND)?;
            let rhs = addm_resolution_length(m, u, DIM_BOUND)?;
            let ok = match (lhs, rhs) {
                (_, Dim::AtLeast(_)) => true,
                (Dim::Exactly(a), Dim::Exactly(b)) => a <= b,
                (Dim::AtLeast(_), Dim::Exactly(_)) => false,
            };
            if !ok {
                return Ok(Verdict::Fail(format!(
                    "U = {}: {lhs} over End_B(N) exceeds {rhs} over End_A(M)",
                    self.catalog.entries[i].name
                )));
            }
        }
        Ok(Verdict::Pass)
    }
}

fn fmt_dims(v: &[(String, Dim)]) -> String {
    v.iter().map(|(n, d)| format!("{n}:{d}")).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub splitting: bool,
    pub b_catalog_complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Restriction {
    pub holds: bool,
    /// (module, dimension) pairs violating the bound.
    pub offenders: Vec<(String, String)>,
}

/// Kernel of the action map A -> End_k(M), in the path basis of A.
pub fn annihilator(m: &Representation) -> Subspace {
    let alg = m.algebra();
    let f = alg.field();
    let n = m.total_dim();
    let cols: Vec<Vec<u32>> = (0..alg.dim())
        .map(|k| {
            let mut e = vec![0u32; alg.dim()];
            e[k] = 1;
            let a = m.action_matrix(&e);
            (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| a.get(r, c)).collect()
        })
        .collect();
    let map = Matrix::from_columns(f, n * n, &cols);
    Subspace::span(f, alg.dim(), &map.kernel_basis())
}

/// A/ann(M) as a bound quiver algebra, with M as a module over it.
#[derive(Clone, Debug)]
pub struct AnnihilatorQuotient {
    pub ideal: Subspace,
    pub algebra: Alg,
    pub module: Representation,
}

pub fn annihilator_quotient(m: &Representation, name: &str) -> Result<AnnihilatorQuotient, ModuleError> {
    let alg = m.algebra();
    let f = alg.field();
    let ideal = annihilator(m);
    let ma = MatrixAlgebra::from_bound_quiver(alg);
    let (abs, kept) = ma.quotient(&ideal)?;
    let regular = abs.to_matrix_algebra();
    let project = |x: &[u32]| -> Vec<u32> {
        let r = ideal.reduce(x);
        kept.iter().map(|&i| r[i]).collect()
    };
    let mut idems = Vec::new();
    let mut names = Vec::new();
    for v in 0..alg.num_vertices() {
        let e = project(&alg.vertex_element(v));
        if e.iter().any(|&x| x != 0) {
            idems.push(regular.element(&e));
            names.push(alg.vertex_name(v).to_string());
        }
    }
    let opts = QuiverizeOptions { name: Some(name.into()), allow_morita_reduction: false, vertex_names: Some(names) };
    let quiv = regular.quiverize_with_idempotents(idems, &opts)?;
    let target: Alg = Arc::new(quiv.algebra.clone());
    let action = kept
        .iter()
        .map(|&k| {
            let mut e = vec![0u32; alg.dim()];
            e[k] = 1;
            m.action_matrix(&e)
        })
        .collect();
    let am = AbstractModule { dim: m.total_dim(), action };
    let module = abstract_to_representation(&am, &regular, &quiv, &target)?;
    let _ = f;
    Ok(AnnihilatorQuotient { ideal, algebra: target, module })
}

/// pd T ≤ 1, Ext¹(T, T) = 0 and as many distinct indecomposable summands as
/// simples.
pub fn is_tilting_module(t: &Representation) -> Result<bool, ModuleError> {
    if !at_most(proj_dim(t, DIM_BOUND), 1) || ext_dim(t, t, 1) != 0 {
        return Ok(false);
    }
    Ok(basic(decompose(t)?).len() == t.algebra().num_vertices())
}

/// Basic classical tilting modules built from catalog modules, as sets of
/// catalog indices; all of them when the catalog is exhaustive.
pub fn tilting_modules(catalog: &IndecCatalog) -> Result<Vec<Vec<usize>>, ModuleError> {
    let mods = catalog.modules();
    let n = catalog.algebra.num_vertices();
    let cands: Vec<usize> = (0..mods.len())
        .filter(|&i| at_most(proj_dim(&mods[i], DIM_BOUND), 1) && ext_dim(&mods[i], &mods[i], 1) == 0)
        .collect();
    let ok = |i: usize, j: usize| ext_dim(&mods[i], &mods[j], 1) == 0 && ext_dim(&mods[j], &mods[i], 1) == 0;
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() == n {
            out.push(chosen);
            continue;
        }
        for k in (start..cands.len()).rev() {
            let c = cands[k];
            if chosen.iter().all(|&x| ok(x, c)) {
                let mut next = chosen.clone();
                next.push(c);
                stack.push((k + 1, next));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Classical tilting data of T: Gen T = {X : Ext¹(T, X) = 0} and
/// {X : Hom(T, X) = 0} on the catalog, plus separating/splitting flags from
/// its projective presentation (None when they cannot be certified).
#[derive(Clone, Debug, Serialize)]
pub struct TiltingReport {
    pub summands: Vec<String>,
    pub torsion: Vec<String>,
    pub torsion_free: Vec<String>,
    pub separating: Option<bool>,
    pub splitting: Option<bool>,
}

pub fn tilting_report(t: &Representation, catalog: &IndecCatalog, opts: AnalysisOptions) -> Result<TiltingReport, ModuleError> {
    let mut torsion = Vec::new();
    let mut torsion_free = Vec::new();
    for e in &catalog.entries {
        if ext_dim(t, &e.module, 1) == 0 {
            torsion.push(e.name.clone());
        }
        if hom_dim(t, &e.module) == 0 {
            torsion_free.push(e.name.clone());
        }
    }
    let p = proj_presentation(t).with_name("T");
    let (separating, splitting) = match SiltingAnalysis::new(&p, opts) {
        Ok(an) => (Some(an.is_separating()), Some(an.is_splitting()?.splitting)),
        Err(ModuleError::IncompleteCatalog(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(TiltingReport {
        summands: basic(decompose(t)?).iter().map(|x| x.loewy_name()).collect(),
        torsion,
        torsion_free,
        separating,
        splitting,
    })
}

/// Every tilting module of the catalog with its classes, and whether its
/// torsion class equals `target` (compared as name sets).
#[derive(Clone, Debug, Serialize)]
pub struct TiltingScan {
    pub algebra: String,
    pub exhaustive: bool,
    pub modules: Vec<TiltingReport>,
    /// Indices into `modules` whose torsion class equals the target class.
    pub matches: Vec<usize>,
}

pub fn tilting_scan(catalog: &IndecCatalog, target: Option<&[String]>, opts: AnalysisOptions) -> Result<TiltingScan, ModuleError> {
    let mods = catalog.modules();
    let mut modules = Vec::new();
    let mut matches = Vec::new();
    let sorted = |v: &[String]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    for set in tilting_modules(catalog)? {
        let t = Representation::direct_sum(&set.iter().map(|&i| mods[i].clone()).collect::<Vec<_>>());
        let rep = tilting_report(&t, catalog, opts)?;
        if target.is_some_and(|tg| sorted(tg) == sorted(&rep.torsion)) {
            matches.push(modules.len());
        }
        modules.push(rep);
    }
    Ok(TiltingScan { algebra: catalog.algebra.name().to_string(), exhaustive: catalog.exhaustive, modules, matches })
}

/// H⁰(P) over A/ann H⁰(P) is a splitting and separating tilting module.
pub fn verify_quotient_tilting(an: &SiltingAnalysis, opts: AnalysisOptions) -> Result<Verdict, ModuleError> {
    if !an.is_separating() {
        return Ok(Verdict::Inapplicable("P is not separating".into()));
    }
    if !an.is_splitting()?.splitting {
        return Ok(Verdict::Inapplicable("P is not splitting".into()));
    }
    if an.h0_summands.is_empty() {
        return Ok(Verdict::Inapplicable("H0(P) = 0".into()));
    }
    let q = annihilator_quotient(&an.complex.h0(), "A/ann")?;
    if !is_tilting_module(&q.module)? {
        return Ok(Verdict::Fail("H0(P) is not tilting over A/ann".into()));
    }
    let aq = SiltingAnalysis::new(&proj_presentation(&q.module).with_name("H0(P)"), opts)?;
    let (sep, split) = (aq.is_separating(), aq.is_splitting()?.splitting);
    Ok(Verdict::from_bool(sep && split, || format!("over A/ann: separating = {sep}, splitting = {split}")))
}

/// For splitting and separating P, the complex Q over B with T(Q) = X(P)
/// is again separating and splitting.
pub fn verify_q_separating(an: &SiltingAnalysis, opts: AnalysisOptions) -> Result<Verdict, ModuleError> {
    if !an.is_separating() {
        return Ok(Verdict::Inapplicable("P is not separating".into()));
    }
    if !an.is_splitting()?.splitting {
        return Ok(Verdict::Inapplicable("P is not splitting".into()));
    }
    let q = crate::endk::induced_q(&an.complex)?.q;
    let aq = SiltingAnalysis::new(&q, opts)?;
    let (sep, split) = (aq.is_separating(), aq.is_splitting()?.splitting);
    Ok(Verdict::from_bool(sep && split, || format!("Q: separating = {sep}, splitting = {split}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::{parse_module, simple};
    use crate::twoterm::{hom_to_stalk_dim, parse_complex};

    fn a3() -> Alg {
        Arc::new(fixtures::alg_a3())
    }

    #[test]
    fn a3_torsion_pair_without_tilting() {
        let a = a3();
        let p = parse_complex(fixtures::P_43, &a).unwrap();
        let an = SiltingAnalysis::new(&p, AnalysisOptions::default()).unwrap();
        let mut t = an.torsion.torsion.clone();
        t.sort();
        let mut f = an.torsion.torsion_free.clone();
        f.sort();
        assert_eq!(t, vec!["2", "3", "3/2"]);
        assert_eq!(f, vec!["1", "2/1", "3/2/1"]);
        assert!(an.is_separating());
        assert!(an.is_splitting().unwrap().splitting);
        assert!(an.check_id_restriction().holds);
        assert_eq!(an.verify_ext_projectives(), Verdict::Pass);
        assert_eq!(an.verify_ar_middle_lemma().unwrap(), Verdict::Pass);
        assert_eq!(an.verify_torsion_axioms().unwrap(), Verdict::Pass);
        assert_eq!(an.verify_b_decompositions().unwrap(), Verdict::Pass);
        let (a1, a2) = an.verify_separating_criterion();
        assert!(!a1.is_fail() && !a2.is_fail());
        for (_, v) in an.verify_hom_vanishing_lemmas().unwrap() {
            assert!(!v.is_fail(), "{v}");
        }
        assert_eq!(an.verify_resolution_comparison(&an.catalog.modules()).unwrap(), Verdict::Pass);
        assert_eq!(verify_quotient_tilting(&an, AnalysisOptions::default()).unwrap(), Verdict::Pass);
    }

    #[test]
    fn hom_complex_matches_stalk_homs() {
        for (name, alg, text) in fixtures::COMPLEXES {
            let a: Alg = Arc::new(fixtures::algebra(alg).unwrap());
            let p = parse_complex(text, &a).unwrap();
            let cat = enumerate_indecomposables(&a, CatalogOptions::with_bound(2)).unwrap();
            for x in cat.modules() {
                assert_eq!(dbhom(&p, &x, 0), hom_to_stalk_dim(&p, &x, 0), "{name}");
                assert_eq!(dbhom(&p, &x, 1), hom_to_stalk_dim(&p, &x, 1), "{name}");
                for i in [-2, -1, 2, 3] {
                    assert_eq!(dbhom(&p, &x, i), 0);
                }
            }
        }
    }

    #[test]
    fn annihilators() {
        let a = a3();
        let p = parse_complex(fixtures::P_43, &a).unwrap();
        let ann = annihilator(&p.h0());
        assert_eq!(ann.dim(), 3);
        let q = annihilator_quotient(&p.h0(), "A/ann").unwrap();
        assert_eq!(q.algebra.dim(), 3);
        assert_eq!(q.algebra.num_vertices(), 2);
        assert!(is_tilting_module(&q.module).unwrap());
        let regular = Representation::direct_sum(&(0..3).map(|v| projective(&a, v)).collect::<Vec<_>>());
        assert_eq!(annihilator(&regular).dim(), 0);
        let s = simple(&a, 1);
        let ann = annihilator(&s);
        for v in [0, 2] {
            assert!(ann.contains(&a.vertex_element(v)));
        }
    }

    #[test]
    fn tilting_modules_of_a3() {
        let a = a3();
        let cat = enumerate_indecomposables(&a, CatalogOptions::with_bound(3)).unwrap();
        let all = tilting_modules(&cat).unwrap();
        assert_eq!(all.len(), 5);
        let p = parse_complex(fixtures::P_43, &a).unwrap();
        let target = SiltingAnalysis::new(&p, AnalysisOptions::default()).unwrap().torsion.torsion;
        let scan = tilting_scan(&cat, Some(&target), AnalysisOptions::default()).unwrap();
        assert!(scan.exhaustive && scan.matches.is_empty());
        let regular = scan.modules.iter().find(|r| r.torsion.len() == cat.len()).unwrap();
        assert_eq!(regular.torsion_free.len(), 0);
        let h = Arc::new(fixtures::alg_her4());
        let (_, t41) = parse_module(fixtures::T_41, &h).unwrap();
        assert!(is_tilting_module(&t41).unwrap());
        let hc = enumerate_indecomposables(&h, CatalogOptions::with_bound(1)).unwrap();
        let found = tilting_modules(&hc).unwrap().into_iter().any(|s| {
            let t = Representation::direct_sum(&s.iter().map(|&i| hc.entries[i].module.clone()).collect::<Vec<_>>());
            is_isomorphic(&t, &t41).unwrap()
        });
        assert!(found);
    }
}
