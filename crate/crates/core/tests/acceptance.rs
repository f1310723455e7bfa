//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! with its wall time against the pinned limit. Arithmetic is exact, so no
//! numeric tolerance applies anywhere.

use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use itertools::Itertools;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use silting_core::algebra::find_isomorphism;
use silting_core::ar::{brute_force_indecomposables, enumerate_indecomposables, CatalogOptions, IndecCatalog};
use silting_core::dsl::parse_algebra;
use silting_core::fixtures;
use silting_core::linalg::{Field, Matrix};
use silting_core::module::{decompose, indecomposable_isomorphic, parse_module, simple, Alg, Representation};
use silting_core::projective::{proj_dim, Dim};
use silting_core::repdim::{
    generator_cogenerators, is_rep_finite, resolution_length_identity, verify_hereditary_bound, verify_quotient_repdim,
    verify_repdim_equality, Finiteness, RepDimValue,
};
use silting_core::report::{self, complex_report, fixture_algebra, ComplexReport, ISO_CAP};
use silting_core::silting::{
    annihilator, annihilator_quotient, is_tilting_module, tilting_scan, verify_quotient_tilting, AnalysisOptions,
    SiltingAnalysis, Verdict,
};
use silting_core::twoterm::{
    basic_summands, enumerate_2term_silting, hom_shift, is_tilting, parse_complex, proj_presentation, TwoTermComplex,
};

/// Like `println!`, but written straight to stdout so the lines show up
/// without `--nocapture`.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

/// Collects failures for one criterion and prints its verdict line.
struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    start: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str, limit_secs: Option<u64>) -> Self {
        Criterion { id, title, limit: limit_secs.map(Duration::from_secs), start: Instant::now(), failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        if let Some(limit) = self.limit {
            if elapsed > limit {
                self.failures.push(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        let limit = self.limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        say!(
            "criterion {}: {verdict} ({:.2}s, limit {limit}) {}",
            self.id,
            elapsed.as_secs_f64(),
            self.title
        );
        for f in &self.failures {
            say!("    {f}");
        }
        assert!(self.failures.is_empty(), "criterion {} failed: {:?}", self.id, self.failures);
    }
}

fn alg(name: &str) -> Alg {
    fixture_algebra(name).unwrap_or_else(|| panic!("fixture algebra {name}"))
}

fn complex(name: &str) -> TwoTermComplex {
    let (_, over, text) = fixtures::COMPLEXES.iter().find(|(n, _, _)| *n == name).expect("fixture complex");
    parse_complex(text, &alg(over)).expect("fixture complex parses")
}

fn sorted(v: &[String]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn names(v: &[&str]) -> Vec<String> {
    sorted(&v.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

fn opts() -> AnalysisOptions {
    AnalysisOptions::default()
}

fn verdict(r: &ComplexReport, check: &str) -> Verdict {
    r.check(check).cloned().unwrap_or_else(|| Verdict::Fail(format!("check `{check}` missing")))
}

#[test]
fn criterion_1_tilting_module_over_square_quiver() {
    let mut c = Criterion::new(1, "hereditary square quiver: tilting module, splitting but not separating", Some(60));
    let her4 = alg("ALG-HER4");
    let gen4 = alg("ALG-GEN4");
    let (_, t) = parse_module(fixtures::T_41, &her4).expect("T-41 parses");
    c.check(is_tilting_module(&t).unwrap(), || "T-41 is not a tilting module".into());

    let p = proj_presentation(&t).with_name("P-41");
    c.eq("presentation matches the P-41 fixture", p.d.clone(), complex("P-41").d);
    let r = complex_report(&p, Some(&gen4), opts()).expect("report");
    c.check(r.silting, || "P-41 is not silting".into());
    c.check(r.splitting, || "P-41 is not splitting".into());
    c.check(!r.separating, || "P-41 is separating".into());
    c.eq("End(P-41) is the square quiver with both length-two paths zero", r.b_isomorphic_to_reference, Some(true));
    c.eq("X(P)", sorted(&r.x_modules), names(&["4/2", "4/3", "4"]));
    c.eq("Y(P)", sorted(&r.y_modules), names(&["1", "2/1", "3/1", "2 3/1", "3", "2", "4/2 3"]));

    let s4 = simple(&gen4, gen4.quiver().vertex_index("4").expect("vertex 4"));
    c.eq("pd_B S(4)", proj_dim(&s4, 12), Dim::Exactly(2));
    c.eq("rep.dim A", r.rep_dim_a, Some(RepDimValue::Exactly { value: 3 }));
    c.eq("rep.dim B", r.rep_dim_b, Some(RepDimValue::Exactly { value: 2 }));
    c.eq("rep.dim comparison", verdict(&r, report::REPDIM_EQUALITY), Verdict::Inapplicable("separating".into()));
    c.finish();
}

#[test]
fn criterion_2_separating_complex_without_id_restriction() {
    let mut c = Criterion::new(2, "gentle square: separating, id-restriction fails, rep.dim 2 < 3", Some(60));
    let p = complex("P-42");
    let tilde = alg("ALG-A3-TILDE");
    let r = complex_report(&p, Some(&tilde), opts()).expect("report");
    c.eq("T(P)", sorted(&r.torsion), names(&["4/2 3", "4/2", "4/3", "4"]));
    c.eq("F(P)", sorted(&r.torsion_free), names(&["1", "2/1", "3/1", "2 3/1", "3", "2"]));
    c.check(r.separating, || "P-42 is not separating".into());
    c.eq("End(P-42) is the Euclidean A3 path algebra", r.b_isomorphic_to_reference, Some(true));
    let an = SiltingAnalysis::new(&p, opts()).expect("analysis");
    c.check(matches!(is_rep_finite(an.b(), 6).unwrap(), Finiteness::Infinite(_)), || "B is not rep-infinite".into());
    c.eq("rep.dim A", r.rep_dim_a, Some(RepDimValue::Exactly { value: 2 }));
    c.eq("rep.dim B", r.rep_dim_b, Some(RepDimValue::Exactly { value: 3 }));
    c.check(!r.id_restriction.holds, || "id-restriction holds".into());
    c.check(r.id_restriction.offenders.contains(&("1".to_string(), "2".to_string())), || {
        format!("S(1) with id 2 is not among the offenders {:?}", r.id_restriction.offenders)
    });
    c.eq("rep.dim comparison", verdict(&r, report::REPDIM_EQUALITY), Verdict::Inapplicable("id-restriction".into()));
    c.finish();
}

#[test]
fn criterion_3_separating_complex_not_from_a_tilting_module() {
    let mut c = Criterion::new(3, "A3: separating silting complex induced by no tilting module", Some(30));
    let p = complex("P-43");
    let r = complex_report(&p, None, opts()).expect("report");
    c.eq("T(P)", sorted(&r.torsion), names(&["2", "3/2", "3"]));
    c.eq("F(P)", sorted(&r.torsion_free), names(&["1", "2/1", "3/2/1"]));
    let catalog = enumerate_indecomposables(&p.alg, CatalogOptions::with_bound(6)).unwrap();
    let ts = tilting_scan(&catalog, Some(&r.torsion), opts()).unwrap();
    c.check(ts.exhaustive, || "the A3 catalog is not exhaustive".into());
    c.eq("tilting modules of A3", ts.modules.len(), 5);
    c.eq("tilting modules inducing T(P)", ts.matches.len(), 0);
    c.check(r.separating, || "not separating".into());
    c.check(r.id_restriction.holds, || format!("id-restriction fails: {:?}", r.id_restriction.offenders));
    c.eq("rep.dim comparison", verdict(&r, report::REPDIM_EQUALITY), Verdict::Pass);
    c.eq("rep.dim A", r.rep_dim_a, Some(RepDimValue::Exactly { value: 2 }));
    c.eq("rep.dim B", r.rep_dim_b, Some(RepDimValue::Exactly { value: 2 }));
    c.eq("hereditary bound", verdict(&r, report::HEREDITARY_BOUND), Verdict::Pass);
    c.finish();
}

/// Everything the scan criteria need about one silting complex.
struct ScanItem {
    name: String,
    tilting: bool,
    silting_by_hom_shift: bool,
    separating: bool,
    splitting: bool,
    id_restriction: bool,
    h0_zero: bool,
    repdim: Verdict,
    hereditary: Verdict,
    quotient_tilting: Verdict,
    quotient_repdim: Verdict,
    sep_pd: Verdict,
    sep_id: Verdict,
}

struct AlgebraScan {
    algebra: String,
    n: usize,
    enumerated: usize,
    oracle: usize,
    items: Vec<ScanItem>,
}

const SCAN_ALGEBRAS: [&str; 4] = ["ALG-A3", "ALG-A3-SOURCE", "ALG-A3-SINK", "ALG-GEN4"];

/// Basic silting complexes counted directly: indecomposable candidates are
/// presentations of catalog modules and shifted projectives; keep those with
/// Hom(P, P[1]) = 0, then count n-element sets with Hom(X, Y[1]) = 0 in both
/// directions.
fn brute_force_silting_count(catalog: &IndecCatalog) -> usize {
    let alg = &catalog.algebra;
    let n = alg.num_vertices();
    let mut cands: Vec<TwoTermComplex> = catalog.entries.iter().map(|e| proj_presentation(&e.module)).collect();
    cands.extend((0..n).map(|v| TwoTermComplex::stalk(alg, silting_core::projective::ProjSum::new(vec![v]), 1)));
    let cands: Vec<TwoTermComplex> = cands.into_iter().filter(|p| hom_shift(p, p, 1).dim == 0).collect();
    let ok: Vec<Vec<bool>> = cands
        .iter()
        .map(|x| cands.iter().map(|y| hom_shift(x, y, 1).dim == 0 && hom_shift(y, x, 1).dim == 0).collect())
        .collect();
    (0..cands.len()).combinations(n).filter(|s| s.iter().array_combinations().all(|[i, j]| ok[*i][*j])).count()
}

fn scan_algebra(name: &str) -> AlgebraScan {
    let a = alg(name);
    let n = a.num_vertices();
    let catalog = enumerate_indecomposables(&a, CatalogOptions::with_bound(6)).unwrap();
    assert!(catalog.complete, "{name} catalog is complete");
    let found = enumerate_2term_silting(&catalog).unwrap();
    let oracle = brute_force_silting_count(&catalog);
    let items = found
        .iter()
        .map(|p| {
            let an = SiltingAnalysis::new(p, opts()).unwrap();
            let (sep_pd, sep_id) = an.verify_separating_criterion();
            ScanItem {
                name: p.name.clone(),
                tilting: is_tilting(p).unwrap(),
                silting_by_hom_shift: hom_shift(p, p, 1).dim == 0 && basic_summands(p).unwrap().len() == n,
                separating: an.is_separating(),
                splitting: an.is_splitting().unwrap().splitting,
                id_restriction: an.check_id_restriction().holds,
                h0_zero: p.h0().is_zero(),
                repdim: verify_repdim_equality(&an).unwrap().verdict,
                hereditary: verify_hereditary_bound(&an).unwrap().verdict,
                quotient_tilting: verify_quotient_tilting(&an, opts()).unwrap(),
                quotient_repdim: verify_quotient_repdim(&an).unwrap().verdict,
                sep_pd,
                sep_id,
            }
        })
        .collect();
    AlgebraScan { algebra: name.to_string(), n, enumerated: found.len(), oracle, items }
}

fn scans() -> &'static [AlgebraScan] {
    static SCANS: OnceLock<Vec<AlgebraScan>> = OnceLock::new();
    SCANS.get_or_init(|| {
        std::thread::scope(|s| {
            let handles: Vec<_> = SCAN_ALGEBRAS.iter().map(|name| s.spawn(move || scan_algebra(name))).collect();
            handles.into_iter().map(|h| h.join().expect("scan thread")).collect()
        })
    })
}

#[test]
fn criterion_4_exhaustive_scan() {
    let mut c = Criterion::new(4, "every two-term silting complex of A3 (three orientations) and the gentle square", None);
    for s in scans() {
        c.eq(&format!("{}: enumerated vs brute-force count", s.algebra), s.enumerated, s.oracle);
        if s.algebra != "ALG-GEN4" {
            // type A3 in any orientation: the Catalan number C_4
            c.eq(&format!("{}: silting count", s.algebra), s.enumerated, 14);
        }
        c.check(s.n > 0, || format!("{}: no vertices", s.algebra));
        for it in &s.items {
            c.check(it.silting_by_hom_shift, || format!("{} / {}: fails the direct silting test", s.algebra, it.name));
            if it.separating && it.id_restriction {
                c.eq(&format!("{} / {}: rep.dim A = rep.dim B", s.algebra, it.name), it.repdim.clone(), Verdict::Pass);
            }
            c.check(!it.hereditary.is_fail(), || format!("{} / {}: hereditary bound {}", s.algebra, it.name, it.hereditary));
        }
        say!(
            "    {}: {} silting, {} separating, {} satisfy the rep.dim hypotheses",
            s.algebra,
            s.enumerated,
            s.items.iter().filter(|i| i.separating).count(),
            s.items.iter().filter(|i| i.separating && i.id_restriction).count()
        );
    }
    c.finish();
}

/// The fixture complexes plus A[0] and A[1] over each rep-finite fixture.
fn property_fixtures() -> Vec<(TwoTermComplex, Option<Alg>)> {
    let mut out = vec![
        (complex("P-41"), Some(alg("ALG-GEN4"))),
        (complex("P-42"), Some(alg("ALG-A3-TILDE"))),
        (complex("P-43"), None),
    ];
    for name in SCAN_ALGEBRAS {
        let a = alg(name);
        out.push((TwoTermComplex::regular(&a).with_name(format!("{name}[0]")), None));
        let all = silting_core::projective::ProjSum::new((0..a.num_vertices()).collect());
        out.push((TwoTermComplex::stalk(&a, all, 1).with_name(format!("{name}[1]")), None));
    }
    out
}

#[test]
fn criterion_5_property_suites() {
    let mut c = Criterion::new(5, "vanishing, Ext-projectives, routes, decompositions, separating criteria, AR middles", None);
    let props = [
        report::VANISHING,
        report::EXT_PROJECTIVES,
        report::ROUTES,
        report::B_DECOMPOSITIONS,
        report::SEP_PD,
        report::SEP_ID,
        report::AR_MIDDLE,
        report::TORSION_AXIOMS,
    ];
    let mut passes = vec![0usize; props.len()];
    let mut vanishing_passes = 0;
    for (p, reference) in property_fixtures() {
        let r = complex_report(&p, reference.as_ref(), opts()).expect("report");
        for (k, name) in props.iter().enumerate() {
            let v = verdict(&r, name);
            c.check(!v.is_fail(), || format!("{}: {name}: {v}", p.name));
            passes[k] += usize::from(v.is_pass());
        }
        for ch in r.checks.iter().filter(|ch| ch.name.starts_with("Hom_B")) {
            c.check(!ch.verdict.is_fail(), || format!("{}: {}: {}", p.name, ch.name, ch.verdict));
            vanishing_passes += usize::from(ch.verdict.is_pass());
        }
    }
    for (k, name) in props.iter().enumerate() {
        c.check(passes[k] > 0, || format!("{name} never applied"));
    }
    c.check(vanishing_passes > 0, || "no Hom_B vanishing lemma applied".into());
    c.finish();
}

/// Separating criterion over whole scans: it can fail only on complexes
/// that are not tilting.
#[test]
fn separating_criterion_counterexamples_are_not_tilting() {
    let mut c = Criterion::new(5, "supplement: separating-criterion counterexamples in scans are non-tilting", None);
    let mut counterexamples = 0;
    for s in scans() {
        for it in &s.items {
            if it.sep_pd.is_fail() || it.sep_id.is_fail() {
                counterexamples += 1;
                c.check(!it.tilting, || format!("{} / {}: tilting yet {} / {}", s.algebra, it.name, it.sep_pd, it.sep_id));
            }
        }
    }
    say!("    {counterexamples} non-tilting counterexamples across the scans");
    c.finish();
}

#[test]
fn criterion_6_resolution_length_identity() {
    let mut c = Criterion::new(6, "gl.dim End(M) = 2 + longest add M-resolution, all generator-cogenerators", Some(120));
    for (name, expected) in [("ALG-A3", 2), ("ALG-GEN4", 4)] {
        let a = alg(name);
        let catalog = enumerate_indecomposables(&a, CatalogOptions::with_bound(6)).unwrap();
        let subsets = generator_cogenerators(&catalog);
        c.eq(&format!("{name}: generator-cogenerator subsets"), subsets.len(), expected);
        for set in subsets {
            let m: Vec<Representation> = set.iter().map(|&i| catalog.entries[i].module.clone()).collect();
            let (gd, shifted) = resolution_length_identity(&m, &catalog).unwrap();
            let label: Vec<&str> = set.iter().map(|&i| catalog.entries[i].name.as_str()).collect();
            c.check(gd.value().is_some() && gd == shifted, || {
                format!("{name} {{{}}}: gl.dim {gd}, 2 + resolution length {shifted}", label.join(", "))
            });
        }
    }
    c.finish();
}

#[test]
fn criterion_7_quotient_by_annihilator() {
    let mut c = Criterion::new(7, "H0(P) over A/ann: tilting and rep.dim equality", None);
    let mut fixtures_checked = Vec::new();
    for p in [complex("P-43"), TwoTermComplex::regular(&alg("ALG-A3")).with_name("A[0]")] {
        let an = SiltingAnalysis::new(&p, opts()).unwrap();
        c.check(an.is_separating() && an.is_splitting().unwrap().splitting, || format!("{}: not separating and splitting", p.name));
        c.eq(&format!("{}: quotient tilting", p.name), verify_quotient_tilting(&an, opts()).unwrap(), Verdict::Pass);
        c.eq(&format!("{}: quotient rep.dim", p.name), verify_quotient_repdim(&an).unwrap().verdict, Verdict::Pass);
        fixtures_checked.push(p.name.clone());
    }
    let mut hits = 0;
    for s in scans() {
        for it in s.items.iter().filter(|i| i.separating && i.splitting) {
            hits += 1;
            for (what, v) in [("quotient tilting", &it.quotient_tilting), ("quotient rep.dim", &it.quotient_repdim)] {
                let ok = if it.h0_zero { matches!(v, Verdict::Inapplicable(_)) } else { v.is_pass() };
                c.check(ok, || format!("{} / {}: {what}: {v}", s.algebra, it.name));
            }
        }
    }
    c.check(hits > 0, || "no separating and splitting scan hits".into());

    let h0 = complex("P-43").h0();
    c.eq("dim ann H0(P-43)", annihilator(&h0).dim(), 3);
    let q = annihilator_quotient(&h0, "A/ann").unwrap();
    let a2 = Arc::new(
        parse_algebra("algebra A2\nfield 2\nvertices 1 2\narrow a : 2 -> 1\n", None).expect("A2 parses"),
    );
    c.check(matches!(find_isomorphism(&a2, &q.algebra, ISO_CAP), Some(Some(_))), || {
        format!("A/ann is not the A2 path algebra:\n{}", q.algebra.to_dsl())
    });
    say!("    fixtures {}, {hits} scan hits", fixtures_checked.join(", "));
    c.finish();
}

fn random_invertible(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.p()));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Summands of x matched one-to-one with summands of y up to isomorphism.
fn same_summands(x: &[Representation], y: &[Representation]) -> bool {
    let mut used = vec![false; y.len()];
    x.len() == y.len()
        && x.iter().all(|a| {
            match (0..y.len()).find(|&j| !used[j] && indecomposable_isomorphic(a, &y[j])) {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
}

#[test]
fn criterion_8_infrastructure_invariants() {
    let mut c = Criterion::new(8, "decomposition under base change, rank-nullity, catalog flags against brute force", None);

    let her4 = alg("ALG-HER4");
    let (_, t41) = parse_module(fixtures::T_41, &her4).unwrap();
    let mut modules = vec![("T-41".to_string(), t41)];
    for (name, _, _) in fixtures::COMPLEXES {
        modules.push((format!("H0({name})"), complex(name).h0()));
    }
    for (name, m) in &modules {
        let base = decompose(m).unwrap();
        let f = m.field();
        let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
        let res = runner.run(&any::<u64>(), |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g: Vec<Matrix> = m.dims().iter().map(|&d| random_invertible(f, d, &mut rng)).collect();
            let moved = m.base_change(&g).unwrap();
            let parts = decompose(&moved).unwrap();
            prop_assert!(same_summands(&parts, &base));
            for part in &parts {
                prop_assert_eq!(decompose(part).unwrap().len(), 1);
            }
            prop_assert_eq!(parts.iter().map(|x| x.total_dim()).sum::<usize>(), m.total_dim());
            Ok(())
        });
        c.check(res.is_ok(), || format!("{name}: {res:?}"));
    }

    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let strategy = (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..9, 1usize..9, any::<u64>());
    let res = runner.run(&strategy, |(p, rows, cols, seed)| {
        let f = Field::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_fn(f, rows, cols, |_, _| rng.gen_range(0..p));
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(Matrix::from_columns(f, cols, &kernel).rank(), kernel.len());
        Ok(())
    });
    c.check(res.is_ok(), || format!("rank-nullity: {res:?}"));

    let a3 = alg("ALG-A3");
    let catalog = enumerate_indecomposables(&a3, CatalogOptions::with_bound(3)).unwrap();
    let brute = brute_force_indecomposables(&a3, 3, 1 << 24).expect("brute force fits its budget");
    c.check(catalog.complete && catalog.exhaustive, || "A3 catalog flags not set".into());
    c.check(same_summands(&catalog.modules(), &brute), || {
        format!("catalog has {} modules, brute force {}", catalog.len(), brute.len())
    });
    // a rep-infinite algebra must not be flagged complete
    let her = enumerate_indecomposables(&her4, CatalogOptions::with_bound(2)).unwrap();
    c.check(!her.complete, || "HER4 catalog flagged complete".into());
    if her.exhaustive {
        let brute = brute_force_indecomposables(&her4, 2, 1 << 24).expect("brute force fits its budget");
        c.check(same_summands(&her.modules(), &brute), || {
            format!("HER4 bound 2: catalog has {} modules, brute force {}", her.len(), brute.len())
        });
    }
    c.finish();
}
