//! Acceptance suite: one PASS/FAIL line per criterion, with time limits.
//!
//! Runs without the libtest harness so that the lines always reach stdout.
//! The process fails when any criterion fails, except those listed in
//! `UNATTAINABLE`, which are still reported as FAIL.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use curvecount::catalog::{Catalog, Flavor};
use curvecount::fit::{
    expected_leading, fit_nodes, leading_x_coefficient, threshold_scan, threshold_scan_quadric, FitProblem, FitResult,
};
use curvecount::germ::{monomial_count, Analyzer, GermError, GermPoly};
use curvecount::series::{ChernPolynomial, Parts, TruncatedSeries};
use curvecount::severi::{floor_diagram_oracle, pencil_discriminant_oracle, Degree, MemoStore, SeveriEngine};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Criteria whose stated value contradicts the definition it is derived from.
const UNATTAINABLE: &[(u32, &str)] =
    &[(1, "N(x^n - y^n) at k = n is dim C{x,y}/<f, m^(n+1)> = (n+1)(n+2)/2 - 1, which differs from n(n+1)/2")];

const SEED: [u8; 32] = *b"curvecount acceptance seed 00001";

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn germ(s: &str) -> GermPoly {
    s.parse().expect("test germ parses")
}

fn germ_examples() -> Outcome {
    let mut o = Outcome::new();
    let lab = Analyzer::default();
    let catalog = Catalog::builtin();

    let node = catalog.lookup("node").expect("node");
    o.eq((node.tjurina, node.n, node.codim), (1, 5, 1), "node tau, N, codim");
    let (lo, hi) = lab.determinacy_window(&node.normal_form).expect("node window");
    o.check(lo <= 2 && 2 <= hi, format!("node window ({lo}, {hi}) misses k = 2"));

    let cusp = catalog.lookup("cusp").expect("cusp");
    o.eq((cusp.tjurina, cusp.n, cusp.codim), (2, 7, 2), "cusp tau, N, codim");
    let (lo, hi) = lab.determinacy_window(&cusp.normal_form).expect("cusp window");
    o.check(lo <= 3 && 3 <= hi, format!("cusp window ({lo}, {hi}) misses k = 3"));

    let mut lengths = Vec::new();
    for n in 3u32..=6 {
        let f = germ(&format!("x^{n} - y^{n}"));
        let tau = lab.tjurina_number(&f).expect("n-fold tau");
        o.eq(tau, (n - 1) * (n - 1), &format!("ord{n} tau"));
        let topological = catalog.lookup(&format!("ord{n}-topological")).expect("n-fold entry");
        o.eq(topological.flavor, Flavor::Topological, "flavor");
        o.eq(topological.codim, (n - 1) * (n - 1) - (n - 3), &format!("ord{n} topological codim"));
        let length = lab.scheme_length(&f, n);
        lengths.push(length);
        o.eq(length, n * (n + 1) / 2, &format!("ord{n} N at k = {n}"));
    }
    o.detail = format!("n-fold N at k = n: {lengths:?}");
    o
}

fn dimension_identity() -> Outcome {
    let mut o = Outcome::new();
    let lab = Analyzer::default();
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for entry in Catalog::builtin().entries().iter().filter(|e| e.flavor == Flavor::Analytic) {
        let start = Instant::now();
        let f = &entry.normal_form;
        let k = entry.k_used;
        let m = f.multiplicity().expect("singular germ");
        let lhs = 2 + i64::from(lab.orbit_tangent_dim(f, k)) - monomial_count(k + 1 - m) as i64;
        let rhs = i64::from(lab.scheme_length(f, k)) - i64::from(lab.tjurina_number(f).expect("tau"));
        o.eq(lhs, rhs, &format!("{} at k = {k}", entry.label));
        if entry.label == "A2" {
            o.eq(lhs, 5, "cusp dim S0");
        }
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        o.check(elapsed < Duration::from_secs(1), format!("{} took {elapsed:?}", entry.label));
        count += 1;
    }
    o.detail = format!("{count} analytic entries, slowest {slowest:.2?}");
    o
}

fn severi_anchors() -> Outcome {
    let mut o = Outcome::new();
    let engine = SeveriEngine::new();
    for (d, delta, want) in [(2, 1, 3), (3, 1, 12), (4, 1, 27), (4, 2, 225), (4, 3, 675)] {
        o.eq(engine.severi_p2(d, delta).expect("anchor"), BigInt::from(want), &format!("N({d}, {delta})"));
    }
    let mut compared = 0;
    for d in 1..=5 {
        for delta in 0..=3 {
            let floor = floor_diagram_oracle(d, delta).expect("floor oracle range");
            let recursion =
                if delta <= d * (d - 1) / 2 { engine.severi_p2(d, delta).expect("recursion") } else { BigInt::from(0) };
            o.eq(recursion, floor, &format!("floor diagrams at ({d}, {delta})"));
            compared += 1;
        }
    }
    for (seed, d) in (1..=5).enumerate() {
        let pencil = pencil_discriminant_oracle(Degree::Plane(d), seed as u64).expect("pencil oracle");
        // a line has no nodal members: the count is 0 rather than a recursion value
        let recursion = if d > 1 { engine.severi_p2(d, 1).expect("recursion") } else { BigInt::from(0) };
        o.eq(recursion, BigInt::from(pencil.count), &format!("pencil at d = {d}"));
    }
    for (a, b, want) in [(1, 1, 2), (2, 2, 12)] {
        let recursion = engine.severi_quadric(a, b, 1).expect("quadric");
        o.eq(recursion.clone(), BigInt::from(want), &format!("N(({a}, {b}), 1)"));
        let pencil = pencil_discriminant_oracle(Degree::Quadric(a, b), 9).expect("pencil oracle");
        o.eq(recursion, BigInt::from(pencil.count), &format!("pencil at ({a}, {b})"));
    }
    o.detail = format!("{compared} floor-diagram values, 7 pencils");
    o
}

fn acceptance_fit(engine: &SeveriEngine) -> Result<FitResult, String> {
    let quadrics: Vec<(u32, u32)> = (3..=5).flat_map(|a| (3..=5).map(move |b| (a, b))).collect();
    fit_nodes(engine, &FitProblem::new(4, (6..=12).collect(), quadrics)).map_err(|e| e.to_string())
}

fn multiplicativity(engine: &SeveriEngine) -> Outcome {
    let mut o = Outcome::new();
    let fit = match acceptance_fit(engine) {
        Ok(fit) => fit,
        Err(e) => {
            o.check(false, e);
            return o;
        }
    };
    o.check(fit.residual_consistent, "residual not exactly zero");
    for order in &fit.orders {
        o.check(order.equations > 4, format!("order {} has only {} rows", order.r, order.equations));
        o.eq(order.rank, 4, &format!("rank at order {}", order.r));
    }
    for (r, a) in &fit.a {
        o.check(a.is_linear(), format!("a{r} = {a} is not linear"));
    }
    for r in 1..=4 {
        let t = &fit.t[&r];
        o.eq(t.degree(), Some(r), &format!("degree of T{r}"));
        o.eq(leading_x_coefficient(t, r), expected_leading(r), &format!("x^{r} coefficient of T{r}"));
    }
    let rows: Vec<String> = fit.orders.iter().map(|o| o.equations.to_string()).collect();
    o.detail = format!("rows per order {}", rows.join("/"));
    o
}

fn closed_loop(engine: &SeveriEngine) -> Outcome {
    let mut o = Outcome::new();
    let fit = match acceptance_fit(engine) {
        Ok(fit) => fit,
        Err(e) => {
            o.check(false, e);
            return o;
        }
    };
    let mut thresholds = Vec::new();
    let mut checked = 0;
    for r in 1..=4 {
        let t = &fit.t[&r];
        match threshold_scan(engine, &fit, r, 1..=12) {
            Ok(scan) => {
                for d in scan.threshold..=12 {
                    let want = engine.severi_p2(d, r).map(BigRational::from_integer).unwrap_or_else(|_| q(0));
                    o.eq(t.eval(&Degree::Plane(d).chern()), want, &format!("T{r} at d = {d}"));
                    checked += 1;
                }
                thresholds.push(format!("P2 r={r}: d>={}", scan.threshold));
            }
            Err(e) => o.check(false, format!("plane scan r = {r}: {e}")),
        }
        match threshold_scan_quadric(engine, &fit, r, 1..=6) {
            Ok(scan) => {
                for a in scan.threshold..=6 {
                    for b in scan.threshold..=6 {
                        let want =
                            engine.severi_quadric(a, b, r).map(BigRational::from_integer).unwrap_or_else(|_| q(0));
                        o.eq(t.eval(&Degree::Quadric(a, b).chern()), want, &format!("T{r} at ({a}, {b})"));
                        checked += 1;
                    }
                }
                thresholds.push(format!("P1xP1 r={r}: min(a,b)>={}", scan.threshold));
            }
            Err(e) => o.check(false, format!("quadric scan r = {r}: {e}")),
        }
    }
    o.detail = format!("{checked} pairs; {}", thresholds.join(", "));
    o
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn report_property(
    o: &mut Outcome,
    name: &str,
    result: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>,
) {
    if let Err(e) = result {
        o.check(false, format!("{name}: {e}"));
    }
}

fn coordinate_invariance(o: &mut Outcome) {
    let lab = Analyzer::default();
    let forms: Vec<GermPoly> = Catalog::builtin()
        .entries()
        .iter()
        .filter(|e| e.flavor == Flavor::Analytic && e.milnor <= 9)
        .map(|e| e.normal_form.clone())
        .collect();
    let matrix = (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4).prop_filter("invertible", |(a, b, c, d)| a * d != b * c);
    let strategy = (0..forms.len(), matrix);
    let result = runner(20).run(&strategy, |(i, (a, b, c, d))| {
        let f = &forms[i];
        let g = f.linear_substitute(&q(a), &q(b), &q(c), &q(d));
        prop_assert_eq!(lab.milnor_number(&g).unwrap(), lab.milnor_number(f).unwrap(), "mu of {}", g);
        prop_assert_eq!(lab.tjurina_number(&g).unwrap(), lab.tjurina_number(f).unwrap(), "tau of {}", g);
        Ok(())
    });
    report_property(o, "coordinate change", result);
}

fn weights() -> BTreeMap<String, u32> {
    [("A1", 1), ("A2", 2), ("A3", 3)].into_iter().map(|(l, w)| (l.to_string(), w)).collect()
}

const LABELS: [&str; 3] = ["A1", "A2", "A3"];

fn chern_poly() -> impl Strategy<Value = ChernPolynomial> {
    proptest::collection::vec(((0u32..2, 0u32..2, 0u32..2, 0u32..2), -6i64..=6, 1i64..=3), 1..4).prop_map(|terms| {
        ChernPolynomial::from_terms(
            terms.into_iter().map(|((a, b, c, d), n, den)| ([a, b, c, d], BigRational::new(n.into(), den.into()))),
        )
    })
}

fn series_without_constant() -> impl Strategy<Value = TruncatedSeries> {
    let parts =
        proptest::collection::vec(0usize..3, 1..4).prop_map(|idx| Parts::new(idx.into_iter().map(|i| LABELS[i])));
    proptest::collection::vec((parts, chern_poly()), 0..6).prop_map(|terms| {
        let mut s = TruncatedSeries::zero(weights(), 6).expect("weights");
        for (p, c) in terms {
            if s.weight(&p).expect("known labels") <= 6 {
                s.set(p, c).expect("within truncation");
            }
        }
        s
    })
}

fn exp_log_roundtrip(o: &mut Outcome) {
    let result = runner(48).run(&series_without_constant(), |s| {
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s.clone());
        let one_plus = s.add(&TruncatedSeries::one(weights(), 6).unwrap()).unwrap();
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
        Ok(())
    });
    report_property(o, "exp/log", result);
}

fn random_germ() -> impl Strategy<Value = GermPoly> {
    let monomial = (0u32..6, 0u32..6).prop_filter("degree 2..=5", |(i, j)| (2..=5).contains(&(i + j)));
    proptest::collection::vec((monomial, -3i64..=3), 2..6)
        .prop_filter_map("nonzero", |terms| GermPoly::from_int_terms(&terms).ok().filter(|g| !g.is_zero()))
}

fn tau_at_most_mu(o: &mut Outcome) {
    let lab = Analyzer::with_ceiling(24);
    let isolated = std::cell::Cell::new(0);
    let result = runner(40).run(&random_germ(), |f| {
        let mu = match lab.milnor_number(&f) {
            Ok(mu) => mu,
            Err(GermError::NotIsolated { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        isolated.set(isolated.get() + 1);
        let tau = lab.tjurina_number(&f).unwrap();
        prop_assert!(tau <= mu, "tau {} > mu {} for {}", tau, mu, f);
        Ok(())
    });
    report_property(o, "tau <= mu", result);
    let isolated = isolated.get();
    o.check(isolated >= 10, format!("only {isolated} random germs were isolated"));
}

fn cache_determinism(o: &mut Outcome) {
    let work: Vec<(Degree, u32)> = (1..=7)
        .flat_map(|d| (0..=4).map(move |delta| (Degree::Plane(d), delta)))
        .chain(
            (1..=4).flat_map(|a| (1..=4).flat_map(move |b| (0..=3).map(move |delta| (Degree::Quadric(a, b), delta)))),
        )
        .filter(|(c, delta)| *delta <= c.max_delta())
        .collect();
    let forward = SeveriEngine::new();
    for (c, delta) in &work {
        forward.severi(*c, *delta).unwrap();
    }
    let concurrent = SeveriEngine::new();
    std::thread::scope(|scope| {
        for lane in 0..4 {
            let (engine, work) = (&concurrent, &work);
            scope.spawn(move || {
                for (c, delta) in work.iter().rev().skip(lane).step_by(4) {
                    engine.severi(*c, *delta).unwrap();
                }
            });
        }
    });
    let text = forward.store().to_text();
    o.check(text == concurrent.store().to_text(), "cache text depends on evaluation order");
    let dir = std::env::temp_dir().join(format!("curvecount-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("memo.txt");
    forward.store().save_file(&path).unwrap();
    let reloaded = MemoStore::new();
    reloaded.load_file(&path).unwrap();
    let again = dir.join("memo-again.txt");
    reloaded.save_file(&again).unwrap();
    o.check(std::fs::read(&path).unwrap() == std::fs::read(&again).unwrap(), "save/load/save changes bytes");
    o.check(std::fs::read(&path).unwrap() == text.as_bytes(), "saved file differs from text form");
    let _ = std::fs::remove_dir_all(&dir);
}

fn properties() -> Outcome {
    let mut o = Outcome::new();
    coordinate_invariance(&mut o);
    exp_log_roundtrip(&mut o);
    tau_at_most_mu(&mut o);
    cache_determinism(&mut o);
    o.detail = "20 substitutions, 48 series, 40 random germs, cache bytes".into();
    o
}

fn main() {
    let engine = SeveriEngine::new();
    type Criterion<'a> = (u32, &'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "germ example table", Duration::from_secs(1), Box::new(germ_examples)),
        (2, "dimension identity", Duration::from_secs(60), Box::new(dimension_identity)),
        (3, "Severi anchors and oracles", Duration::from_secs(10), Box::new(severi_anchors)),
        (4, "multiplicativity at desk scale", Duration::from_secs(60), Box::new(|| multiplicativity(&engine))),
        (5, "closed loop", Duration::from_secs(60), Box::new(|| closed_loop(&engine))),
        (6, "property suites", Duration::from_secs(30), Box::new(properties)),
    ];
    let mut unexpected = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let mut outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(&check)).unwrap_or_else(|_| {
            let mut o = Outcome::new();
            o.check(false, "panicked");
            o
        });
        let elapsed = start.elapsed();
        outcome.check(elapsed <= limit, format!("took {elapsed:.2?}, limit {limit:?}"));
        let pass = outcome.failures.is_empty();
        let known = UNATTAINABLE.iter().find(|(n, _)| *n == id);
        println!(
            "[{}] criterion {id}: {name} ({elapsed:.2?}, limit {limit:?}) {}",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
        for failure in &outcome.failures {
            println!("       - {failure}");
        }
        match (pass, known) {
            (false, Some((_, why))) => println!("       unattainable as stated: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("       listed as unattainable but passed"),
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
