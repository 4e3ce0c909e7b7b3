//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::sync::Arc;
use std::time::{Duration, Instant};

use gkm_core::braden::{self, invariant_checks};
use gkm_core::parity::torsion_scan;
use gkm_core::verify::{run_suite, Criterion};
use gkm_core::*;

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, details: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.details.push(what.into());
        }
    }

    fn check(&mut self, c: &Check) {
        self.require(c.passed, c.to_string());
    }
}

fn datum(ty: CartanType, n: usize) -> Arc<RootDatum> {
    Arc::new(RootDatum::simple_type(ty, n).unwrap())
}

fn braden_reproduction(out: &mut Outcome, torsion: &mut Outcome, invariants: &mut Outcome) {
    let t = Instant::now();
    let report = match braden::run() {
        Ok(r) => r,
        Err(e) => {
            out.require(false, format!("pipeline error: {e}"));
            torsion.require(false, "pipeline did not run");
            invariants.require(false, "pipeline did not run");
            return;
        }
    };
    let elapsed = t.elapsed();
    for c in &report.checks {
        if c.name.starts_with("defect over") {
            torsion.check(c);
        } else if ["fiber size", "H entries", "Euler class", "row 29 of (H^-1)^T", "P / e_x", "triple product (r29, r29, p)"]
            .contains(&c.name.as_str())
        {
            out.check(c);
        } else {
            invariants.check(c);
        }
    }
    out.require(report.checks.len() >= 6, "golden checks missing");
    out.require(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"));

    for rep in &report.defects {
        let c = rep.field.characteristic();
        let want = if c == 2 { 0 } else { 1 };
        torsion.require(rep.multiplicities.get(&0).copied().unwrap_or(0) == want, format!("m(x,0) over {}", rep.field));
        torsion.require(rep.multiplicities.iter().all(|(&d, &m)| d == 0 || m == 0), format!("extra multiplicities over {}", rep.field));
    }
    torsion.require(report.defects.len() == 5, "expected five fields");
    match FiberPipeline::new(&braden::word(), &braden::x()).and_then(|pl| torsion_scan(&pl, &[2, 3, 5, 7])) {
        Ok(t) => torsion.require(t.torsion_primes == vec![2], format!("torsion primes {:?}", t.torsion_primes)),
        Err(e) => torsion.require(false, e.to_string()),
    }
}

fn sl2_oracle(out: &mut Outcome, invariants: &mut Outcome) {
    let w = Word::new(datum(CartanType::A, 1), vec![1, 1]).unwrap();
    let d = w.datum();
    let p = |s: &str| Poly::parse(s, 1).unwrap();
    let m = |rows: [[&str; 2]; 2]| Matrix::from_fn(2, 2, |i, j| p(rows[i][j]));

    let s1 = d.simple_reflection(1).unwrap();
    let pl = FiberPipeline::new(&w, &s1).unwrap();
    out.require(pl.h() == &m([["1", "1"], ["0", "a1"]]), "H at s1");
    out.require(pl.transition() == &m([["-a1^2", "a1"], ["a1", "0"]]), "transition at s1");
    out.require(pl.divided() == &m([["-a1", "1"], ["1", "0"]]), "divided at s1");
    let mut want = LaurentV::monomial(0, 1);
    want.add_term(-2, 1);
    for c in [0, 2, 3, 5, 7] {
        let rep = pl.defect(FieldSpec::new(c).unwrap()).unwrap();
        out.require(rep.defect == want, format!("defect at s1 over {}: {}", rep.field, rep.defect));
    }
    for c in invariant_checks(&pl) {
        invariants.check(&c);
    }

    let e = d.identity();
    let pl = FiberPipeline::new(&w, &e).unwrap();
    out.require(pl.h() == &m([["1", "1"], ["0", "a1"]]), "H at e");
    out.require(pl.transition() == &m([["a1^2", "-a1"], ["-a1", "0"]]), "transition at e");
    for c in [0, 2, 3, 5, 7] {
        let rep = pl.defect(FieldSpec::new(c).unwrap()).unwrap();
        out.require(rep.defect.is_zero(), format!("defect at e over {}: {}", rep.field, rep.defect));
    }
    for c in invariant_checks(&pl) {
        invariants.check(&c);
    }
}

fn property_suite(out: &mut Outcome, invariants: &mut Outcome) {
    let t = Instant::now();
    let cfg = SuiteConfig::new(vec![datum(CartanType::A, 2), datum(CartanType::B, 2)], 5);
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            out.require(false, format!("suite error: {e}"));
            return;
        }
    };
    let required = [
        Criterion::BasisInX,
        Criterion::BInFiberImage,
        Criterion::CInComplementImage,
        Criterion::BasisSize,
        Criterion::Triangularity,
        Criterion::BInRhoFamily,
        Criterion::CEqualsXi,
        Criterion::Alternation,
        Criterion::PQRelation,
    ];
    out.require(report.words == 126, format!("{} words visited", report.words));
    out.require(report.passed_for(&required), "a required property has failures or no instances");
    for c in report.checks() {
        if c.name == Criterion::PipelineInvariants.name() {
            invariants.check(&c);
        } else {
            out.check(&c);
        }
    }
    let elapsed = t.elapsed();
    out.require(elapsed < Duration::from_secs(600), format!("took {elapsed:?}"));

    let mut neg = SuiteConfig::new(vec![datum(CartanType::A, 2)], 2);
    neg.inject_fault = true;
    let caught = run_suite(&neg).map(|r| !r.passed_for(&[Criterion::BasisInX])).unwrap_or(false);
    out.require(caught, "injected fault was not detected");
}

fn characteristic_guard(out: &mut Outcome) {
    let c2 = Word::new(datum(CartanType::C, 2), vec![1, 2, 1]).unwrap();
    let x = c2.datum().simple_reflection(1).unwrap();
    let pl = FiberPipeline::new(&c2, &x).unwrap();
    out.require(pl.defect(FieldSpec::new(2).unwrap()) == Err(Error::Char2Forbidden), "C2 over F2 must be refused");
    out.require(pl.defect(FieldSpec::new(3).unwrap()).is_ok(), "C2 over F3");
    for (ty, n, letters) in [
        (CartanType::A, 2, vec![1, 2, 1]),
        (CartanType::B, 2, vec![1, 2, 1]),
        (CartanType::D, 4, vec![2, 1, 3, 4]),
        (CartanType::E, 6, vec![1, 3, 4]),
        (CartanType::F, 4, vec![2, 3, 2]),
        (CartanType::G, 2, vec![1, 2, 1]),
    ] {
        let w = Word::new(datum(ty, n), letters).unwrap();
        let ok = FiberPipeline::new(&w, &w.datum().identity()).and_then(|pl| pl.defect(FieldSpec::new(2).unwrap()));
        out.require(ok.is_ok(), format!("{ty:?}{n} over F2: {:?}", ok.err()));
    }
    let mixed = Arc::new(RootDatum::new(&[Component::new(CartanType::A, 1), Component::new(CartanType::C, 2)]).unwrap());
    out.require(FieldSpec::for_datum(2, &mixed) == Err(Error::Char2Forbidden), "A1 x C2 over F2 must be refused");
}

fn main() {
    let mut c1 = Outcome::new();
    let mut c2 = Outcome::new();
    let mut c3 = Outcome::new();
    let mut c4 = Outcome::new();
    let mut c5 = Outcome::new();
    let mut c6 = Outcome::new();
    braden_reproduction(&mut c1, &mut c2, &mut c5);
    sl2_oracle(&mut c3, &mut c5);
    property_suite(&mut c4, &mut c5);
    characteristic_guard(&mut c6);

    let rows = [
        (1, "Braden example: fiber, H entries, e_x, r29, triple product", c1),
        (2, "torsion example defects and multiplicities over F2, Q, F3, F5, F7", c2),
        (3, "SL2 oracle for word (1,1)", c3),
        (4, "criterion property suite over A2 and B2, r <= 5", c4),
        (5, "algebraic invariants on every pipeline run", c5),
        (6, "characteristic 2 guard for type C", c6),
    ];
    let mut all = true;
    for (n, what, o) in rows {
        println!("criterion {n}: {} {what}", if o.passed { "PASS" } else { "FAIL" });
        for d in &o.details {
            println!("    {d}");
        }
        all &= o.passed;
    }
    if !all {
        std::process::exit(1);
    }
}
