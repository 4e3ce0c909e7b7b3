//! The torsion example in `SL_8`: a Bott-Samelson resolution whose direct
//! image contains `E(x,k)` exactly when `char k != 2`.

pub mod golden;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::check::{all_passed, Check};
use crate::error::{Error, Result};
use crate::gallery::Word;
use crate::parity::{DefectReport, FiberPipeline};
use crate::poly::{FieldSpec, LaurentV, Poly, RatFn};
use crate::rootsys::{CartanType, RootDatum, WeylElement};

pub const WORD: [usize; 14] = [3, 2, 1, 5, 4, 3, 2, 6, 5, 4, 3, 7, 6, 5];
pub const X_WORD: [usize; 6] = [2, 3, 2, 5, 6, 5];
pub const FIBER_SIZE: usize = 29;
pub const CHARACTERISTICS: [u64; 5] = [0, 2, 3, 5, 7];

pub fn word() -> Word {
    let datum = Arc::new(RootDatum::simple_type(CartanType::A, 7).expect("A7"));
    Word::new(datum, WORD.to_vec()).expect("valid word")
}

pub fn x() -> WeylElement {
    word().datum().word_to_element(&X_WORD).expect("valid word")
}

/// Expected defect: zero in characteristic 2, `v^-8` otherwise.
pub fn expected_defect(characteristic: u64) -> LaurentV {
    if characteristic == 2 {
        LaurentV::zero()
    } else {
        LaurentV::monomial(-8, 1)
    }
}

/// Reads `"±1/(f)"` or `"0"` as a rational function.
pub fn parse_reciprocal(s: &str, datum: &RootDatum) -> Result<RatFn> {
    let n = datum.rank();
    if s == "0" {
        return Ok(RatFn::zero(n));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, s),
    };
    let den = body
        .strip_prefix("1/(")
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected 1/(...): {s}")))?;
    let den = Poly::parse(den, n)?;
    let (dsign, factors) = den
        .factor_root_product(datum)
        .ok_or_else(|| Error::Parse(format!("denominator is not a product of roots: {s}")))?;
    Ok(RatFn::inverse_of_root_product(n, sign * dsign, factors))
}

#[derive(Debug, Clone, Serialize)]
pub struct BradenReport {
    pub checks: Vec<Check>,
    pub defects: Vec<DefectReport>,
}

impl BradenReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// Runs the pipeline on the example and compares against the embedded values.
pub fn run() -> Result<BradenReport> {
    let w = word();
    let x = x();
    let datum = w.datum();
    let n = datum.rank();
    let pl = FiberPipeline::new(&w, &x)?;
    let mut checks = Vec::new();

    let m = pl.size();
    checks.push(if m == FIBER_SIZE {
        Check::pass("fiber size", format!("{m}"))
    } else {
        Check::fail("fiber size", format!("{m}, expected {FIBER_SIZE}"))
    });
    if m != FIBER_SIZE {
        return Ok(BradenReport { checks, defects: Vec::new() });
    }

    checks.push(check_h(&pl, datum)?);

    let euler = Poly::parse(golden::EULER, n)?;
    checks.push(if pl.euler() == &euler {
        Check::pass("Euler class", pl.euler().render_factored(datum))
    } else {
        Check::fail("Euler class", format!("{} vs {}", pl.euler().render_factored(datum), golden::EULER))
    });

    let row: Vec<RatFn> = (0..m).map(|i| pl.h_inverse().get(i, m - 1).clone()).collect();
    let mut bad = Vec::new();
    for (i, s) in golden::ROW_29.iter().enumerate() {
        if row[i] != parse_reciprocal(s, datum)? {
            bad.push(format!("entry {}: {} vs {s}", i + 1, row[i]));
        }
    }
    checks.push(mismatch_check("row 29 of (H^-1)^T", m, bad));

    let mut p = Vec::with_capacity(m);
    let mut bad = Vec::new();
    for (i, s) in golden::P_OVER_EULER.iter().enumerate() {
        let pi = pl.p_diagonal()[i].exact_divide(pl.euler())?;
        if pi != Poly::parse(s, n)? {
            bad.push(format!("entry {}: {} vs {s}", i + 1, pi.render_factored(datum)));
        }
        p.push(pi);
    }
    checks.push(mismatch_check("P / e_x", m, bad));

    let mut triple = RatFn::zero(n);
    for i in 0..m {
        triple = &triple + &(&row[i] * &row[i]).scalar_mul_poly(&p[i]);
    }
    let two = RatFn::from_poly(Poly::constant(n, 2));
    checks.push(if triple == two && pl.divided().get(m - 1, m - 1) == &Poly::constant(n, 2) {
        Check::pass("triple product (r29, r29, p)", "2")
    } else {
        Check::fail("triple product (r29, r29, p)", format!("{triple}, divided corner {}", pl.divided().get(m - 1, m - 1)))
    });

    checks.extend(invariant_checks(&pl));

    let mut defects = Vec::new();
    for c in CHARACTERISTICS {
        let rep = pl.defect(FieldSpec::new(c)?)?;
        let want = expected_defect(c);
        let mult: BTreeMap<i64, i64> = if c == 2 { BTreeMap::new() } else { BTreeMap::from([(0, 1)]) };
        let name = format!("defect over {}", rep.field);
        checks.push(if rep.defect == want && rep.multiplicities == mult {
            Check::pass(name, rep.defect.to_string())
        } else {
            Check::fail(name, format!("{}, expected {want}", rep.defect))
        });
        defects.push(rep);
    }
    Ok(BradenReport { checks, defects })
}

fn check_h(pl: &FiberPipeline, datum: &RootDatum) -> Result<Check> {
    let n = datum.rank();
    let m = pl.size();
    let mut listed = vec![vec![None; m]; m];
    for &(i, j, s) in golden::H_ENTRIES {
        listed[i - 1][j - 1] = Some(Poly::parse(s, n)?);
    }
    let mut bad = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let got = pl.h().get(i, j);
            let got_s = got.render_factored(datum);
            let want_s = match &listed[i][j] {
                Some(p) => p.render_factored(datum),
                None => "0".to_string(),
            };
            if got_s != want_s {
                bad.push(format!("h[{},{}] = {got_s}, expected {want_s}", i + 1, j + 1));
            }
        }
    }
    Ok(mismatch_check("H entries", golden::H_ENTRIES.len(), bad))
}

fn mismatch_check(name: &str, total: usize, bad: Vec<String>) -> Check {
    if bad.is_empty() {
        Check::pass(name, format!("{total} values match"))
    } else {
        Check::fail(name, format!("{} mismatches, first {}", bad.len(), bad[0]))
    }
}

/// The algebraic invariants every pipeline run must satisfy.
pub fn invariant_checks(pl: &FiberPipeline) -> Vec<Check> {
    let ok = |r: std::result::Result<(), String>| r.map(|_| String::new());
    let mut out = vec![
        Check::from_result("H * H^-1 = I", ok(pl.check_inverse())),
        Check::from_result("transition symmetric and polynomial", ok(pl.check_symmetric())),
        Check::from_result("divided entries have predicted degrees", ok(pl.check_degrees())),
    ];
    match pl.defect(FieldSpec::rationals()) {
        Ok(rep) => out.push(Check::from_result("defect/multiplicity bookkeeping", ok(rep.check_bookkeeping()))),
        Err(e) => out.push(Check::fail("defect/multiplicity bookkeeping", e.to_string())),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_tables_are_well_formed() {
        let w = word();
        let d = w.datum();
        assert_eq!(golden::H_ENTRIES.len(), 178);
        for &(i, j, s) in golden::H_ENTRIES {
            assert!(i <= j && j <= FIBER_SIZE);
            let p = Poly::parse(s, 7).unwrap();
            assert!(p.factor_root_product(d).is_some(), "{s}");
        }
        for s in golden::ROW_29 {
            parse_reciprocal(s, d).unwrap();
        }
        assert_eq!(d.length(&x()), 6);
    }
}
