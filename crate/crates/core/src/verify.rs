//! Exhaustive property suite over all short words of a root datum: the
//! membership criteria on every basis the construction produces, the
//! identifications between bases, and the fiber pipeline invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braden::invariant_checks;
use crate::check::Check;
use crate::cohom::{a_value, b_value, check_in_x, check_in_fiber, check_in_complement, BasisFamily, PointClass, Support, Tower};
use crate::error::Result;
use crate::gallery::{check_alternation, Gallery, TreeIndex, Word};
use crate::parity::FiberPipeline;
use crate::poly::{FieldSpec, Poly};
use crate::rootsys::{RootDatum, WeylElement};

/// What the suite checks, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Criterion {
    BasisInX,
    BasisSize,
    BasisIndependent,
    DotPreservesX,
    Decomposition,
    BFormula,
    Triangularity,
    BInFiberImage,
    BInRhoFamily,
    CEqualsXi,
    CInComplementImage,
    BRestrictsToComplement,
    Alternation,
    PQRelation,
    FiberSurjectivity,
    PipelineInvariants,
    CostalkClasses,
}

impl Criterion {
    pub const ALL: [Criterion; 17] = [
        Criterion::BasisInX,
        Criterion::BasisSize,
        Criterion::BasisIndependent,
        Criterion::DotPreservesX,
        Criterion::Decomposition,
        Criterion::BFormula,
        Criterion::Triangularity,
        Criterion::BInFiberImage,
        Criterion::BInRhoFamily,
        Criterion::CEqualsXi,
        Criterion::CInComplementImage,
        Criterion::BRestrictsToComplement,
        Criterion::Alternation,
        Criterion::PQRelation,
        Criterion::FiberSurjectivity,
        Criterion::PipelineInvariants,
        Criterion::CostalkClasses,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::BasisInX => "every B_rho element satisfies the X criterion",
            Criterion::BasisSize => "|B_rho| = 2^r",
            Criterion::BasisIndependent => "B_rho elements decompose to unit vectors",
            Criterion::DotPreservesX => "dot preserves the X criterion",
            Criterion::Decomposition => "random combinations round-trip through decompose",
            Criterion::BFormula => "b recursion agrees with the closed formula",
            Criterion::Triangularity => "b values on the fiber are triangular with diagonal a",
            Criterion::BInFiberImage => "b restrictions satisfy the X^x criterion",
            Criterion::BInRhoFamily => "b_gamma = +-element of B_rho(x)",
            Criterion::CEqualsXi => "c family equals B_xi(x)",
            Criterion::CInComplementImage => "c restrictions satisfy the complement criterion",
            Criterion::BRestrictsToComplement => "B_rho(x) restrictions satisfy the complement criterion",
            Criterion::Alternation => "alternation along M_alpha",
            Criterion::PQRelation => "2^(|M|-|J|) p = q",
            Criterion::FiberSurjectivity => "X^x classes have polynomial b coordinates",
            Criterion::PipelineInvariants => "pipeline invariants",
            Criterion::CostalkClasses => "costalk classes lie in X^x and extend by zero into X",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub datums: Vec<Arc<RootDatum>>,
    /// Longest word checked; every word up to this length is visited.
    pub max_len: usize,
    /// Longest word for the `p`/`q` identity and the surjectivity shadow.
    pub pq_max_len: usize,
    /// Random trees checked per word besides the constant and `ρ`, `ξ` trees.
    pub random_trees: usize,
    /// Random `S`-combinations per word for the round trips.
    pub random_combinations: usize,
    pub seed: u64,
    /// Run the transition-matrix pipeline on every fiber.
    pub pipeline: bool,
    pub primes: Vec<u64>,
    /// Corrupt one class per word before the `X` check (negative control).
    pub inject_fault: bool,
}

impl SuiteConfig {
    pub fn new(datums: Vec<Arc<RootDatum>>, max_len: usize) -> Self {
        SuiteConfig {
            datums,
            max_len,
            pq_max_len: max_len.min(4),
            random_trees: 4,
            random_combinations: 2,
            seed: 0x5eed,
            pipeline: true,
            primes: vec![2, 3, 5],
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub instances: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub words: u64,
    pub tallies: BTreeMap<Criterion, Tally>,
    /// Signs observed for `b_γ = ± B_{ρ(x)}` matches: `(+, -)`.
    pub sign_counts: (u64, u64),
}

impl SuiteReport {
    fn record(&mut self, c: Criterion, outcome: std::result::Result<(), String>) {
        let t = self.tallies.entry(c).or_default();
        t.instances += 1;
        if let Err(e) = outcome {
            t.failures += 1;
            t.first_failure.get_or_insert(e);
        }
    }

    fn merge(&mut self, other: SuiteReport) {
        self.words += other.words;
        self.sign_counts.0 += other.sign_counts.0;
        self.sign_counts.1 += other.sign_counts.1;
        for (c, t) in other.tallies {
            let mine = self.tallies.entry(c).or_default();
            mine.instances += t.instances;
            mine.failures += t.failures;
            if mine.first_failure.is_none() {
                mine.first_failure = t.first_failure;
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.tallies.values().all(|t| t.failures == 0)
    }

    pub fn passed_for(&self, cs: &[Criterion]) -> bool {
        cs.iter().all(|c| self.tallies.get(c).is_some_and(|t| t.failures == 0 && t.instances > 0))
    }

    pub fn checks(&self) -> Vec<Check> {
        self.tallies
            .iter()
            .map(|(c, t)| match &t.first_failure {
                None => Check::pass(c.name(), format!("{} instances", t.instances)),
                Some(e) => Check::fail(c.name(), format!("{} of {} failed; first: {e}", t.failures, t.instances)),
            })
            .collect()
    }
}

/// Every word over `1..=n` of length at most `max_len`, shortest first.
pub fn all_words(datum: &Arc<RootDatum>, max_len: usize) -> Vec<Word> {
    let n = datum.rank();
    let mut out = vec![Word::new(datum.clone(), Vec::new()).expect("empty word")];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 1..=n {
                let mut v: Vec<usize> = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        for v in &next {
            out.push(Word::new(datum.clone(), v.clone()).expect("valid letters"));
        }
        layer = next;
    }
    out
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let words: Vec<Word> = cfg.datums.iter().flat_map(|d| all_words(d, cfg.max_len)).collect();
    let parts: Vec<Result<SuiteReport>> = words
        .par_iter()
        .enumerate()
        .map(|(k, word)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            verify_word(word, cfg, &mut rng)
        })
        .collect();
    let mut report = SuiteReport::default();
    for p in parts {
        report.merge(p?);
    }
    Ok(report)
}

/// All checks for one word.
pub fn verify_word(word: &Word, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport { words: 1, ..Default::default() };
    let tower = Tower::new(word)?;
    let r = word.len();
    let datum = word.datum();
    let endpoints = word.endpoints();

    // Every element of every B_ρ is a composition of Δ and ∇_t.
    for (idx, (ops, f)) in tower.all_compositions()?.into_iter().enumerate() {
        let f = if cfg.inject_fault && idx == 0 && r > 0 { corrupt(&f) } else { f };
        let tag = || ops.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(".");
        rep.record(Criterion::BasisInX, check_in_x(&f).map_err(|v| format!("word {word}, class {}: {v}", tag())));
        if r > 0 {
            let d = f.compose_dot()?;
            rep.record(Criterion::DotPreservesX, check_in_x(&d).map_err(|v| format!("word {word}, class {}: {v}", tag())));
        }
    }

    let mut trees = vec![TreeIndex::constant(r, false), TreeIndex::constant(r, true)];
    for x in &endpoints {
        trees.push(TreeIndex::rho(word, x));
        trees.push(TreeIndex::xi(word, x));
    }
    let labels = (1u64 << r) - 1;
    for _ in 0..cfg.random_trees {
        let bits = if labels == 0 { 0 } else { rng.random_range(0..=labels) };
        trees.push(TreeIndex::from_bits(r, bits));
    }
    for rho in &trees {
        let basis = tower.basis_b_tree(rho)?;
        rep.record(
            Criterion::BasisSize,
            expect(basis.len() == 1 << r, || format!("word {word}, tree {rho}: {} elements", basis.len())),
        );
        rep.record(Criterion::BasisIndependent, unit_vectors(&tower, &basis, rho, word));
    }
    for _ in 0..cfg.random_combinations {
        let rho = &trees[rng.random_range(0..trees.len())];
        let basis = tower.basis_b_tree(rho)?;
        let coeffs: Vec<Poly> = (0..basis.len()).map(|_| random_poly(datum, rng)).collect();
        let f = combine(tower.top(), &basis.elements, &coeffs);
        let back = tower.decompose_in_b(&f, rho);
        rep.record(
            Criterion::Decomposition,
            match back {
                Ok(c) if c == coeffs => Ok(()),
                Ok(_) => Err(format!("word {word}, tree {rho}: coordinates differ")),
                Err(e) => Err(format!("word {word}, tree {rho}: {e}")),
            },
        );
    }

    let top = tower.top();
    for (&g, gw) in top.galleries().iter().zip(top.walls()) {
        for alpha in datum.positive_roots() {
            rep.record(
                Criterion::Alternation,
                expect(check_alternation(gw, alpha), || format!("word {word}, gallery {g}, root {alpha}")),
            );
            if r <= cfg.pq_max_len {
                let (p, q) = tower.p_q_classes(g, alpha)?;
                let e = gw.m_alpha(alpha).count_ones() - gw.j_alpha(alpha).count_ones();
                let two = Poly::constant(datum.rank(), BigInt::from(1u64 << e));
                rep.record(
                    Criterion::PQRelation,
                    expect(p.scale(&two) == q, || format!("word {word}, gallery {g}, root {alpha}")),
                );
            }
        }
    }

    for x in &endpoints {
        verify_fiber(&tower, x, cfg, rng, &mut rep)?;
    }
    Ok(rep)
}

fn verify_fiber(tower: &Tower, x: &WeylElement, cfg: &SuiteConfig, rng: &mut ChaCha8Rng, rep: &mut SuiteReport) -> Result<()> {
    let word = tower.word();
    let datum = word.datum();
    let r = word.len();
    let top = tower.top();
    let fiber = Support::fiber(word, x)?;
    let cof = Support::cofiber(word, x);
    let b_full = tower.basis_b_fiber(x)?;
    let xs = datum.reduced_word(x);
    let at = |what: &str| format!("word {word}, x = {xs:?}: {what}");

    // Closed formula against the operator recursion, on all of Γ.
    for (i, &g) in fiber.galleries().iter().enumerate() {
        let gw = &fiber.walls()[i];
        let ok = top
            .galleries()
            .iter()
            .zip(top.walls())
            .all(|(&d, dw)| b_full.elements[i].values()[d.index()] == b_value(g, gw, d, dw));
        rep.record(Criterion::BFormula, expect(ok, || at(&format!("b_{g}"))));
    }

    let b = b_full.restrict(&fiber)?;
    let m = fiber.len();
    let mut tri = Ok(());
    for i in 0..m {
        for j in 0..m {
            let v = &b.elements[i].values()[j];
            let good = if i == j { *v == a_value(&fiber.walls()[i]) } else { j > i || v.is_zero() };
            if !good && tri.is_ok() {
                tri = Err(at(&format!("entry ({}, {}) = {v}", i + 1, j + 1)));
            }
        }
    }
    rep.record(Criterion::Triangularity, tri);
    for (i, e) in b.elements.iter().enumerate() {
        rep.record(Criterion::BInFiberImage, check_in_fiber(e).map_err(|v| at(&format!("b_{}: {v}", fiber.galleries()[i]))));
    }

    let rho = tower.basis_b_tree(&TreeIndex::rho(word, x))?;
    for (i, e) in b_full.elements.iter().enumerate() {
        let neg = e.neg();
        let found = if rho.elements.iter().any(|f| f == e) {
            rep.sign_counts.0 += 1;
            true
        } else if rho.elements.contains(&neg) {
            rep.sign_counts.1 += 1;
            true
        } else {
            false
        };
        rep.record(Criterion::BInRhoFamily, expect(found, || at(&format!("b_{} not in B_rho(x)", fiber.galleries()[i]))));
    }
    for (i, f) in rho.elements.iter().enumerate() {
        let g = f.restrict(&cof)?;
        rep.record(Criterion::BRestrictsToComplement, check_in_complement(&g).map_err(|v| at(&format!("element {}: {v}", rho.index[i]))));
    }

    let xi = tower.basis_b_tree(&TreeIndex::xi(word, x))?;
    let c = tower.basis_c_all(x)?;
    rep.record(Criterion::CEqualsXi, expect(same_multiset(&c.elements, &xi.elements), || at("c family differs from B_xi(x)")));
    for (i, e) in tower.basis_c_cofiber(x)?.elements.iter().enumerate() {
        rep.record(Criterion::CInComplementImage, check_in_complement(e).map_err(|v| at(&format!("c_{}: {v}", cof.galleries()[i]))));
    }

    if r <= cfg.pq_max_len {
        for _ in 0..cfg.random_combinations {
            let coeffs: Vec<Poly> = (0..m).map(|_| random_poly(datum, rng)).collect();
            let f = combine(&fiber, &b.elements, &coeffs);
            let mut out = check_in_fiber(&f).map_err(|v| at(&format!("combination: {v}")));
            if out.is_ok() {
                out = match solve_in_b(&b, &f) {
                    Some(c) if c == coeffs => Ok(()),
                    Some(_) => Err(at("coordinates differ")),
                    None => Err(at("coordinates are not polynomial")),
                };
            }
            rep.record(Criterion::FiberSurjectivity, out);
        }
    }

    if cfg.pipeline {
        verify_pipeline(word, x, cfg, &fiber, top, rep, &at)?;
    }
    Ok(())
}

fn verify_pipeline(
    word: &Word,
    x: &WeylElement,
    cfg: &SuiteConfig,
    fiber: &Arc<Support>,
    top: &Arc<Support>,
    rep: &mut SuiteReport,
    at: &dyn Fn(&str) -> String,
) -> Result<()> {
    let datum = word.datum();
    let pl = match FiberPipeline::new(word, x) {
        Ok(pl) => pl,
        Err(e) => {
            rep.record(Criterion::PipelineInvariants, Err(at(&e.to_string())));
            return Ok(());
        }
    };
    for c in invariant_checks(&pl) {
        rep.record(Criterion::PipelineInvariants, expect(c.passed, || at(&c.to_string())));
    }
    for &p in &cfg.primes {
        if p == 2 && datum.has_c_component() {
            continue;
        }
        let outcome = pl
            .defect(FieldSpec::new(p)?)
            .map_err(|e| e.to_string())
            .and_then(|d| d.check_bookkeeping());
        rep.record(Criterion::PipelineInvariants, outcome.map_err(|e| at(&format!("F{p}: {e}"))));
    }
    let q = pl.dual_times_p();
    for i in 0..fiber.len() {
        let row = PointClass::new(fiber.clone(), q.row(i).to_vec())?;
        let mut out = check_in_x(&row.extend_by_zero(top)).map_err(|v| at(&format!("row {}: {v}", i + 1)));
        if out.is_ok() {
            let divided: std::result::Result<Vec<Poly>, _> = row.values().iter().map(|v| v.exact_divide(pl.euler())).collect();
            out = match divided {
                Ok(vs) => check_in_fiber(&PointClass::new(fiber.clone(), vs)?).map_err(|v| at(&format!("row {} / e_x: {v}", i + 1))),
                Err(_) => Err(at(&format!("row {} is not divisible by e_x", i + 1))),
            };
        }
        rep.record(Criterion::CostalkClasses, out);
    }
    Ok(())
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Adds 1 at the all-`s` gallery, where `1 ∈ J`; no sum can absorb it.
fn corrupt(f: &PointClass) -> PointClass {
    let r = f.support().word().len();
    let n = f.support().word().datum().rank();
    let target = Gallery::new(r, (1u64 << r) - 1);
    PointClass::from_fn(f.support(), |g, _| {
        let v = f.value(g).cloned().unwrap_or_else(|| Poly::zero(n));
        if g == target {
            &v + &Poly::one(n)
        } else {
            v
        }
    })
}

fn unit_vectors(tower: &Tower, basis: &BasisFamily, rho: &TreeIndex, word: &Word) -> std::result::Result<(), String> {
    let n = word.datum().rank();
    for (i, e) in basis.elements.iter().enumerate() {
        let c = tower.decompose_in_b(e, rho).map_err(|err| format!("word {word}, tree {rho}: {err}"))?;
        for (j, v) in c.iter().enumerate() {
            let want = if i == j { Poly::one(n) } else { Poly::zero(n) };
            if *v != want {
                return Err(format!("word {word}, tree {rho}: element {} has coordinate {v} at {}", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// A constant or a linear form with small coefficients.
fn random_poly(datum: &RootDatum, rng: &mut ChaCha8Rng) -> Poly {
    let n = datum.rank();
    if rng.random_bool(0.5) {
        return Poly::constant(n, rng.random_range(-3i64..=3));
    }
    (1..=n).fold(Poly::zero(n), |acc, i| {
        &acc + &Poly::var(n, i).scalar_mul(&BigInt::from(rng.random_range(-2i64..=2)))
    })
}

fn combine(support: &Arc<Support>, elements: &[PointClass], coeffs: &[Poly]) -> PointClass {
    elements
        .iter()
        .zip(coeffs)
        .fold(PointClass::zero(support), |acc, (e, c)| acc.add(&e.scale(c)))
}

/// Coordinates of `f` in the restricted `b` family by back substitution
/// along the fiber order; `None` when a division is inexact.
fn solve_in_b(b: &BasisFamily, f: &PointClass) -> Option<Vec<Poly>> {
    let m = b.len();
    let mut c: Vec<Poly> = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = f.values()[k].clone();
        for (j, cj) in c.iter().enumerate() {
            acc = &acc - &(cj * &b.elements[j].values()[k]);
        }
        c.push(acc.exact_divide(&b.elements[k].values()[k]).ok()?);
    }
    Some(c)
}

fn same_multiset(a: &[PointClass], b: &[PointClass]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|e| match (0..b.len()).find(|&j| !used[j] && b[j] == *e) {
        Some(j) => {
            used[j] = true;
            true
        }
        None => false,
    })
}
