//! Representation-finiteness, representation dimension via
//! generator-cogenerator search, Auslander generators, and the checks
//! comparing rep.dim A with rep.dim of an endomorphism algebra.

use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::ar::{enumerate_indecomposables, CatalogOptions, IndecCatalog};
use crate::homological::{addm_resolution_length, endomorphism_quiver, global_dim};
use crate::module::{decompose, injective, projective, Alg, ModuleError, Representation};
use crate::projective::Dim;
use crate::silting::{
    annihilator_quotient, is_tilting_module, AnalysisOptions, SiltingAnalysis, Verdict, DIM_BOUND,
};
use crate::twoterm::proj_presentation;

/// Representation type of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Finiteness {
    /// Number of indecomposables.
    Finite(usize),
    Infinite(String),
    /// The catalog did not close up within this bound.
    Unknown(usize),
}

impl Finiteness {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finiteness::Finite(_))
    }
    pub fn is_infinite(&self) -> bool {
        matches!(self, Finiteness::Infinite(_))
    }
}

impl std::fmt::Display for Finiteness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Finiteness::Finite(n) => write!(f, "finite ({n} indecomposables)"),
            Finiteness::Infinite(why) => write!(f, "infinite ({why})"),
            Finiteness::Unknown(b) => write!(f, "unknown (bound {b})"),
        }
    }
}

/// Signs of the Tits form of the underlying graph of one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphType {
    Dynkin,
    Euclidean,
    Wild,
}

fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Classify a connected component by its symmetrized Tits form 2I - adjacency.
pub fn graph_type(alg: &crate::algebra::BoundQuiverAlgebra, component: &[usize]) -> GraphType {
    let q = alg.quiver();
    let n = component.len();
    let pos = |v: usize| component.iter().position(|&w| w == v);
    let mut form = vec![vec![0i128; n]; n];
    for i in 0..n {
        form[i][i] = 2;
    }
    for a in q.arrows() {
        if let (Some(s), Some(t)) = (pos(a.source), pos(a.target)) {
            form[s][t] -= 1;
            form[t][s] -= 1;
        }
    }
    let minor = |idx: &[usize]| det_i128(idx.iter().map(|&i| idx.iter().map(|&j| form[i][j]).collect()).collect());
    if (1..=n).all(|k| minor(&(0..k).collect::<Vec<_>>()) > 0) {
        return GraphType::Dynkin;
    }
    // positive semidefinite iff every principal minor is non-negative
    let psd = (1..=n).all(|k| (0..n).combinations(k).all(|idx| minor(&idx) >= 0));
    if psd {
        GraphType::Euclidean
    } else {
        GraphType::Wild
    }
}

/// Finite, infinite or unknown. Path algebras are decided by the graph
/// classification; other algebras by whether the AR-knitting closes up.
pub fn is_rep_finite(alg: &Alg, bound: usize) -> Result<Finiteness, ModuleError> {
    if alg.is_hereditary_presentation() {
        for comp in alg.quiver().components() {
            match graph_type(alg, &comp) {
                GraphType::Dynkin => {}
                GraphType::Euclidean => return Ok(Finiteness::Infinite("Euclidean underlying graph".into())),
                GraphType::Wild => return Ok(Finiteness::Infinite("wild underlying graph".into())),
            }
        }
        // root coordinates of Dynkin graphs never exceed 6
        let c = enumerate_indecomposables(alg, CatalogOptions::with_bound(bound.max(6)))?;
        return Ok(if c.complete { Finiteness::Finite(c.len()) } else { Finiteness::Unknown(c.bound) });
    }
    let c = enumerate_indecomposables(alg, CatalogOptions::with_bound(bound))?;
    Ok(if c.complete { Finiteness::Finite(c.len()) } else { Finiteness::Unknown(bound) })
}

/// rep.dim, exactly or as bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepDimValue {
    Exactly { value: usize },
    Bounds { lower: usize, upper: Option<usize> },
}

impl RepDimValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            RepDimValue::Exactly { value } => Some(value),
            RepDimValue::Bounds { .. } => None,
        }
    }
    pub fn upper(self) -> Option<usize> {
        match self {
            RepDimValue::Exactly { value } => Some(value),
            RepDimValue::Bounds { upper, .. } => upper,
        }
    }
}

impl std::fmt::Display for RepDimValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepDimValue::Exactly { value } => write!(f, "{value}"),
            RepDimValue::Bounds { lower, upper: Some(u) } => write!(f, "between {lower} and {u}"),
            RepDimValue::Bounds { lower, upper: None } => write!(f, ">= {lower}"),
        }
    }
}

/// One evaluated generator-cogenerator.
#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub summands: Vec<String>,
    pub gldim_end: Dim,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepDimReport {
    pub algebra: String,
    pub finiteness: Finiteness,
    pub rep_dim: RepDimValue,
    /// A generator-cogenerator attaining the value (or the upper bound).
    pub generator: Option<Vec<String>>,
    pub gldim_end: Option<Dim>,
    pub candidates: Vec<Candidate>,
}

fn names(ms: &[Representation]) -> Vec<String> {
    ms.iter().map(|m| m.loewy_name()).collect()
}

fn basic_summands(parts: &[Representation]) -> Result<Vec<Representation>, ModuleError> {
    let mut out: Vec<Representation> = Vec::new();
    for x in parts {
        for y in decompose(x)? {
            if !out.iter().any(|z| crate::module::indecomposable_isomorphic(z, &y)) {
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// Basic summands of A ⊕ D(A).
pub fn projectives_and_injectives(alg: &Alg) -> Result<Vec<Representation>, ModuleError> {
    let n = alg.num_vertices();
    let all: Vec<Representation> = (0..n).map(|v| projective(alg, v)).chain((0..n).map(|v| injective(alg, v))).collect();
    basic_summands(&all)
}

/// gl.dim End(M) for pairwise non-isomorphic indecomposables M.
pub fn gldim_end_of(m: &[Representation]) -> Result<Dim, ModuleError> {
    let q = endomorphism_quiver(m, "End(M)")?;
    Ok(global_dim(&Arc::new(q.algebra), DIM_BOUND))
}

/// Catalog subsets containing every projective and injective, by size then
/// catalog order.
pub fn generator_cogenerators(catalog: &IndecCatalog) -> Vec<Vec<usize>> {
    let required: Vec<usize> = catalog
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_projective || e.is_injective)
        .map(|(i, _)| i)
        .collect();
    let optional: Vec<usize> = (0..catalog.len()).filter(|i| !required.contains(i)).collect();
    let mut out = Vec::new();
    for k in 0..=optional.len() {
        for extra in optional.iter().copied().combinations(k) {
            let mut s = required.clone();
            s.extend(extra);
            s.sort();
            out.push(s);
        }
    }
    out
}

/// Search generator-cogenerators of a representation-finite algebra for the
/// least gl.dim End(M); stops early at 2 (the floor for non-semisimple
/// algebras) or after `max_candidates`.
pub fn auslander_generator(alg: &Alg, bound: usize, max_candidates: usize) -> Result<(Vec<Representation>, Dim, Vec<Candidate>), ModuleError> {
    let catalog = enumerate_indecomposables(alg, CatalogOptions::with_bound(bound))?;
    if !catalog.complete {
        return Err(ModuleError::IncompleteCatalog(bound));
    }
    let mods = catalog.modules();
    let floor = if alg.is_semisimple() { 0 } else { 2 };
    let mut best: Option<(Vec<Representation>, Dim)> = None;
    let mut table = Vec::new();
    for subset in generator_cogenerators(&catalog).into_iter().take(max_candidates.max(1)) {
        let m: Vec<Representation> = subset.iter().map(|&i| mods[i].clone()).collect();
        let d = gldim_end_of(&m)?;
        table.push(Candidate { summands: names(&m), gldim_end: d });
        let better = match (&best, d) {
            (None, _) => true,
            (Some((_, Dim::Exactly(b))), Dim::Exactly(x)) => x < *b,
            (Some((_, Dim::AtLeast(_))), Dim::Exactly(_)) => true,
            _ => false,
        };
        if better {
            best = Some((m, d));
        }
        if d == Dim::Exactly(floor) {
            break;
        }
    }
    let (m, d) = best.expect("at least one candidate");
    Ok((m, d, table))
}

/// rep.dim A: 0 for semisimple algebras, 2 for representation-finite ones
/// (certified by a generator-cogenerator with gl.dim End = 2), 3 for
/// representation-infinite path algebras (certified by gl.dim End(A ⊕ DA) ≤ 3),
/// bounds otherwise.
pub fn rep_dim(alg: &Alg, bound: usize, max_candidates: usize) -> Result<RepDimReport, ModuleError> {
    let finiteness = is_rep_finite(alg, bound)?;
    let mut report = RepDimReport {
        algebra: alg.name().to_string(),
        finiteness: finiteness.clone(),
        rep_dim: RepDimValue::Bounds { lower: 0, upper: None },
        generator: None,
        gldim_end: None,
        candidates: vec![],
    };
    if alg.is_semisimple() {
        let m = projectives_and_injectives(alg)?;
        let d = gldim_end_of(&m)?;
        report.rep_dim = RepDimValue::Exactly { value: d.value().unwrap_or(0) };
        report.generator = Some(names(&m));
        report.gldim_end = Some(d);
        return Ok(report);
    }
    match finiteness {
        Finiteness::Finite(_) => {
            let (m, d, table) = auslander_generator(alg, bound.max(6), max_candidates)?;
            report.rep_dim = match d {
                Dim::Exactly(2) => RepDimValue::Exactly { value: 2 },
                Dim::Exactly(v) => RepDimValue::Bounds { lower: 2, upper: Some(v) },
                Dim::AtLeast(_) => RepDimValue::Bounds { lower: 2, upper: None },
            };
            report.generator = Some(names(&m));
            report.gldim_end = Some(d);
            report.candidates = table;
        }
        Finiteness::Infinite(_) | Finiteness::Unknown(_) => {
            let lower = if finiteness.is_infinite() { 3 } else { 2 };
            let m = projectives_and_injectives(alg)?;
            let d = gldim_end_of(&m)?;
            report.candidates = vec![Candidate { summands: names(&m), gldim_end: d }];
            let upper = d.value().map(|v| v.max(lower));
            report.rep_dim = match upper {
                Some(u) if u == lower => RepDimValue::Exactly { value: u },
                _ => RepDimValue::Bounds { lower, upper },
            };
            report.generator = Some(names(&m));
            report.gldim_end = Some(d);
        }
    }
    Ok(report)
}

/// rep.dim with the default catalog bound and candidate cap.
pub fn rep_dim_default(alg: &Alg) -> Result<RepDimReport, ModuleError> {
    rep_dim(alg, 6, 4096)
}

/// Outcome of comparing rep.dim A with rep.dim B.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub rep_dim_a: Option<RepDimValue>,
    pub rep_dim_b: Option<RepDimValue>,
}

fn compare(a: &RepDimReport, b: &RepDimReport) -> Verdict {
    match (a.rep_dim.exact(), b.rep_dim.exact()) {
        (Some(x), Some(y)) => Verdict::from_bool(x == y, || format!("rep.dim {} = {x} but rep.dim {} = {y}", a.algebra, b.algebra)),
        _ => Verdict::Inapplicable(format!("rep.dim not determined: {} vs {}", a.rep_dim, b.rep_dim)),
    }
}

/// rep.dim B = rep.dim A for separating P with id ≤ 1 on F(P). The
/// representation dimensions are always computed so that examples outside
/// the hypotheses can be compared too.
pub fn verify_repdim_equality(an: &SiltingAnalysis) -> Result<Comparison, ModuleError> {
    let ra = rep_dim_default(an.algebra())?;
    let rb = rep_dim_default(an.b())?;
    let verdict = if !an.is_separating() {
        Verdict::Inapplicable("separating".into())
    } else if !an.check_id_restriction().holds {
        Verdict::Inapplicable("id-restriction".into())
    } else {
        compare(&ra, &rb)
    };
    Ok(Comparison { verdict, rep_dim_a: Some(ra.rep_dim), rep_dim_b: Some(rb.rep_dim) })
}

/// rep.dim End_A(H⁰P) = rep.dim A/ann H⁰P for splitting separating P.
pub fn verify_quotient_repdim(an: &SiltingAnalysis) -> Result<Comparison, ModuleError> {
    if !an.is_separating() {
        return Ok(Comparison { verdict: Verdict::Inapplicable("separating".into()), rep_dim_a: None, rep_dim_b: None });
    }
    if !an.is_splitting()?.splitting {
        return Ok(Comparison { verdict: Verdict::Inapplicable("splitting".into()), rep_dim_a: None, rep_dim_b: None });
    }
    if an.h0_summands.is_empty() {
        return Ok(Comparison { verdict: Verdict::Inapplicable("H0(P) = 0".into()), rep_dim_a: None, rep_dim_b: None });
    }
    let end = Arc::new(endomorphism_quiver(&an.h0_summands, "End(H0 P)")?.algebra);
    let quot = annihilator_quotient(&an.complex.h0(), "A/ann")?;
    let re = rep_dim_default(&end)?;
    let rq = rep_dim_default(&quot.algebra)?;
    Ok(Comparison { verdict: compare(&rq, &re), rep_dim_a: Some(rq.rep_dim), rep_dim_b: Some(re.rep_dim) })
}

/// For a path algebra A and separating silting P: rep.dim B ≤ 3, and B is
/// representation-finite whenever A is.
pub fn verify_hereditary_bound(an: &SiltingAnalysis) -> Result<Comparison, ModuleError> {
    if !an.algebra().is_hereditary_presentation() {
        return Ok(Comparison { verdict: Verdict::Inapplicable("hereditary".into()), rep_dim_a: None, rep_dim_b: None });
    }
    if !an.is_separating() {
        return Ok(Comparison { verdict: Verdict::Inapplicable("separating".into()), rep_dim_a: None, rep_dim_b: None });
    }
    let ra = rep_dim_default(an.algebra())?;
    let rb = rep_dim_default(an.b())?;
    let bounded = rb.rep_dim.upper().is_some_and(|u| u <= 3);
    let transfer = !ra.finiteness.is_finite() || rb.finiteness.is_finite();
    let verdict = Verdict::from_bool(bounded && transfer, || {
        format!("rep.dim B = {}, A {}, B {}", rb.rep_dim, ra.finiteness, rb.finiteness)
    });
    Ok(Comparison { verdict, rep_dim_a: Some(ra.rep_dim), rep_dim_b: Some(rb.rep_dim) })
}

/// rep.dim A = rep.dim End_A(T) for a separating and splitting tilting module T.
pub fn verify_tilting_repdim(t: &Representation, opts: AnalysisOptions) -> Result<Comparison, ModuleError> {
    if !is_tilting_module(t)? {
        return Ok(Comparison { verdict: Verdict::Inapplicable("tilting".into()), rep_dim_a: None, rep_dim_b: None });
    }
    let an = SiltingAnalysis::new(&proj_presentation(t).with_name("T"), opts)?;
    if !an.is_separating() {
        return Ok(Comparison { verdict: Verdict::Inapplicable("separating".into()), rep_dim_a: None, rep_dim_b: None });
    }
    if !an.is_splitting()?.splitting {
        return Ok(Comparison { verdict: Verdict::Inapplicable("splitting".into()), rep_dim_a: None, rep_dim_b: None });
    }
    let ra = rep_dim_default(an.algebra())?;
    let rb = rep_dim_default(an.b())?;
    Ok(Comparison { verdict: compare(&ra, &rb), rep_dim_a: Some(ra.rep_dim), rep_dim_b: Some(rb.rep_dim) })
}

/// gl.dim End(M) - 2 against the longest add M-resolution over the catalog.
pub fn resolution_length_identity(m: &[Representation], catalog: &IndecCatalog) -> Result<(Dim, Dim), ModuleError> {
    let gd = gldim_end_of(m)?;
    let mut longest = Dim::Exactly(0);
    for x in catalog.modules() {
        match addm_resolution_length(m, &x, DIM_BOUND)? {
            Dim::Exactly(l) => {
                if let Dim::Exactly(cur) = longest {
                    longest = Dim::Exactly(cur.max(l));
                }
            }
            at_least => longest = at_least,
        }
    }
    let shifted = match longest {
        Dim::Exactly(l) => Dim::Exactly(l + 2),
        Dim::AtLeast(l) => Dim::AtLeast(l + 2),
    };
    Ok((gd, shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_algebra;
    use crate::fixtures;

    fn alg(text: &str) -> Alg {
        Arc::new(parse_algebra(text, None).unwrap())
    }

    #[test]
    fn finiteness() {
        let a3 = Arc::new(fixtures::alg_a3());
        assert_eq!(is_rep_finite(&a3, 6).unwrap(), Finiteness::Finite(6));
        let g = Arc::new(fixtures::alg_gen4());
        assert_eq!(is_rep_finite(&g, 6).unwrap(), Finiteness::Finite(10));
        let h = Arc::new(fixtures::alg_her4());
        assert!(is_rep_finite(&h, 3).unwrap().is_infinite());
        let tilde = alg(fixtures::ALG_A3_TILDE);
        assert!(is_rep_finite(&tilde, 3).unwrap().is_infinite());
        let wild = alg("vertices 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 1 -> 2\n");
        assert_eq!(graph_type(&wild, &[0, 1]), GraphType::Wild);
        let d4 = alg("vertices 1 2 3 4\narrow a : 2 -> 1\narrow b : 3 -> 1\narrow c : 4 -> 1\n");
        assert_eq!(is_rep_finite(&d4, 3).unwrap(), Finiteness::Finite(12));
    }

    #[test]
    fn representation_dimensions() {
        let semisimple = alg("vertices 1 2\n");
        assert_eq!(rep_dim_default(&semisimple).unwrap().rep_dim.exact(), Some(0));
        let a3 = Arc::new(fixtures::alg_a3());
        assert_eq!(rep_dim_default(&a3).unwrap().rep_dim.exact(), Some(2));
        let g = Arc::new(fixtures::alg_gen4());
        let r = rep_dim_default(&g).unwrap();
        assert_eq!(r.rep_dim.exact(), Some(2));
        assert_eq!(r.gldim_end, Some(Dim::Exactly(2)));
        let h = Arc::new(fixtures::alg_her4());
        assert_eq!(rep_dim_default(&h).unwrap().rep_dim.exact(), Some(3));
        let tilde = alg(fixtures::ALG_A3_TILDE);
        assert_eq!(rep_dim_default(&tilde).unwrap().rep_dim.exact(), Some(3));
        let op = Arc::new(fixtures::alg_gen4().opposite());
        assert_eq!(rep_dim_default(&op).unwrap().rep_dim.exact(), Some(2));
    }

    #[test]
    fn generator_subsets() {
        let a3 = Arc::new(fixtures::alg_a3());
        let c = enumerate_indecomposables(&a3, CatalogOptions::with_bound(3)).unwrap();
        let subsets = generator_cogenerators(&c);
        assert_eq!(subsets.len(), 2);
        for s in subsets {
            let m: Vec<Representation> = s.iter().map(|&i| c.entries[i].module.clone()).collect();
            let (gd, shifted) = resolution_length_identity(&m, &c).unwrap();
            assert_eq!(gd, shifted);
        }
    }
}
