use std::fmt::Write as _;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::sync::Arc;

use gkm_core::cohom::{a_value, b_value, BasisFamily, PointClass, Support, Tower};
use gkm_core::parity::DefectReport;
use gkm_core::verify::{all_words, run_suite};
use gkm_core::{braden, FiberPipeline, FieldSpec, RootDatum, SuiteConfig, TreeIndex, WeylElement, Word};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{make_word, BasisKind, RunConfig};
use crate::Failure;

/// A command's result: JSON for machines, a table for people, and whether
/// every check passed.
pub struct Output {
    pub json: Value,
    pub human: String,
    pub ok: bool,
}

fn core_err(e: gkm_core::Error) -> Failure {
    match e {
        gkm_core::Error::Invariant(_) | gkm_core::Error::NotDivisible | gkm_core::Error::NotHomogeneous => {
            Failure::Check(e.to_string())
        }
        other => Failure::Config(other.to_string()),
    }
}

fn x_word(datum: &RootDatum, x: &WeylElement) -> Vec<usize> {
    datum.reduced_word(x)
}

fn show_x(letters: &[usize]) -> String {
    if letters.is_empty() {
        "e".into()
    } else {
        letters.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
    }
}

fn set(mask: &[usize]) -> String {
    let v: Vec<String> = mask.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

struct Setup {
    datum: Arc<RootDatum>,
    word: Word,
    x: WeylElement,
}

fn setup(cfg: &RunConfig) -> Result<Setup, Failure> {
    let datum = cfg.datum()?;
    let word = cfg.word(&datum)?;
    let x = cfg.x(&datum)?;
    Ok(Setup { datum, word, x })
}

fn header(s: &Setup) -> Value {
    json!({
        "root_datum": s.datum.to_string(),
        "word": s.word.letters(),
        "x": x_word(&s.datum, &s.x),
    })
}

pub fn galleries(cfg: &RunConfig) -> Result<Output, Failure> {
    let s = setup(cfg)?;
    let fiber = Support::fiber(&s.word, &s.x).map_err(core_err)?;
    let mut rows = Vec::new();
    let mut human = format!("{} word {} fiber of {}: {} galleries\n", s.datum, s.word, show_x(&x_word(&s.datum, &s.x)), fiber.len());
    let _ = writeln!(human, "{:>5}  {:<w$}  {:<16}  {:<16}  a", "index", "gallery", "J", "D", w = s.word.len().max(7));
    for (k, (g, w)) in fiber.galleries().iter().zip(fiber.walls()).enumerate() {
        let a = a_value(w).render_factored(&s.datum);
        let _ = writeln!(
            human,
            "{:>5}  {:<width$}  {:<16}  {:<16}  {}",
            k + 1,
            if g.is_empty() { "-".to_string() } else { g.to_string() },
            set(&w.j_set()),
            set(&w.d_set()),
            a,
            width = s.word.len().max(7)
        );
        rows.push(json!({"index": k + 1, "gallery": g.to_string(), "j": w.j_set(), "d": w.d_set(), "a": a}));
    }
    let mut j = header(&s);
    j["galleries"] = Value::Array(rows);
    Ok(Output { json: j, human, ok: true })
}

fn family_json(family: &BasisFamily, support: &Support, datum: &RootDatum) -> Result<Value, Failure> {
    let mut elements = Vec::new();
    for (idx, e) in family.index.iter().zip(&family.elements) {
        let degree = e.degree().map_err(core_err)?;
        let (index, gallery) = match idx {
            gkm_core::BasisIndex::Path(_) => (idx.to_string(), Value::Null),
            gkm_core::BasisIndex::Gallery(g) => (idx.to_string(), Value::String(g.to_string())),
        };
        let values: Vec<String> = e.values().iter().map(|v| v.render_factored(datum)).collect();
        elements.push(json!({"index": index, "gallery": gallery, "degree": degree, "values": values}));
    }
    let galleries: Vec<String> = support.galleries().iter().map(|g| g.to_string()).collect();
    Ok(json!({"label": family.label, "galleries": galleries, "elements": elements}))
}

pub fn basis(cfg: &RunConfig) -> Result<Output, Failure> {
    let s = setup(cfg)?;
    let (family, support) = match cfg.basis {
        BasisKind::B => {
            // The closed formula needs no tower, so long words stay cheap.
            let fiber = Support::fiber(&s.word, &s.x).map_err(core_err)?;
            let mut index = Vec::new();
            let mut elements = Vec::new();
            for (&g, gw) in fiber.galleries().iter().zip(fiber.walls()) {
                index.push(gkm_core::BasisIndex::Gallery(g));
                elements.push(PointClass::from_fn(&fiber, |d, dw| b_value(g, gw, d, dw)));
            }
            (BasisFamily { label: "b".into(), index, elements }, fiber)
        }
        kind => {
            let tower = Tower::new(&s.word).map_err(core_err)?;
            match kind {
                BasisKind::C => {
                    let f = tower.basis_c_cofiber(&s.x).map_err(core_err)?;
                    (f, Support::cofiber(&s.word, &s.x))
                }
                BasisKind::Rho => (tower.basis_b_tree(&TreeIndex::rho(&s.word, &s.x)).map_err(core_err)?, tower.top().clone()),
                _ => (tower.basis_b_tree(&TreeIndex::xi(&s.word, &s.x)).map_err(core_err)?, tower.top().clone()),
            }
        }
    };
    let fj = family_json(&family, &support, &s.datum)?;
    let mut human = format!("{} word {} x = {}: family {} with {} elements\n", s.datum, s.word, show_x(&x_word(&s.datum, &s.x)), family.label, family.len());
    let gal: Vec<String> = support.galleries().iter().map(|g| g.to_string()).collect();
    let _ = writeln!(human, "galleries: {}", gal.join(" "));
    for e in fj["elements"].as_array().into_iter().flatten() {
        let vals: Vec<&str> = e["values"].as_array().into_iter().flatten().filter_map(|v| v.as_str()).collect();
        let _ = writeln!(human, "{:<12} deg {:<3} [{}]", e["index"].as_str().unwrap_or(""), e["degree"], vals.join(", "));
    }
    let mut j = header(&s);
    j["family"] = fj;
    Ok(Output { json: j, human, ok: true })
}

pub fn verify(cfg: &RunConfig) -> Result<Output, Failure> {
    let datum = cfg.datum()?;
    let fields = cfg.fields(&datum)?;
    let depth = cfg.verify_depth.unwrap_or(3);
    let mut suite = SuiteConfig::new(vec![datum.clone()], depth);
    suite.primes = fields.iter().map(FieldSpec::characteristic).filter(|&c| c != 0).collect();
    suite.inject_fault = cfg.inject_fault;
    if let Some(seed) = cfg.seed {
        suite.seed = seed;
    }
    let report = run_suite(&suite).map_err(core_err)?;
    let checks = report.checks();
    let mut human = format!("{datum}, all words of length <= {depth}: {} words\n", report.words);
    for c in &checks {
        let _ = writeln!(human, "{c}");
    }
    let _ = writeln!(human, "signs in b = +-B_rho matches: {} positive, {} negative", report.sign_counts.0, report.sign_counts.1);
    let criteria: Vec<Value> = report
        .tallies
        .iter()
        .map(|(c, t)| {
            json!({"name": c.name(), "passed": t.failures == 0, "instances": t.instances, "failures": t.failures, "first_failure": t.first_failure})
        })
        .collect();
    let ok = report.passed();
    let j = json!({
        "root_datum": datum.to_string(),
        "depth": depth,
        "words": report.words,
        "passed": ok,
        "criteria": criteria,
        "signs": {"positive": report.sign_counts.0, "negative": report.sign_counts.1},
    });
    Ok(Output { json: j, human, ok })
}

struct DefectRun {
    setup: Setup,
    reports: Vec<DefectReport>,
    invariants: Vec<gkm_core::Check>,
}

fn run_defects(cfg: &RunConfig) -> Result<DefectRun, Failure> {
    let s = setup(cfg)?;
    let fields = cfg.fields(&s.datum)?;
    let pl = FiberPipeline::new(&s.word, &s.x).map_err(core_err)?;
    let invariants = braden::invariant_checks(&pl);
    let reports = fields.into_iter().map(|k| pl.defect(k).map_err(core_err)).collect::<Result<Vec<_>, _>>()?;
    Ok(DefectRun { setup: s, reports, invariants })
}

fn invariants_human(human: &mut String, checks: &[gkm_core::Check]) {
    for c in checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(human, "{c}");
    }
}

pub fn defect(cfg: &RunConfig) -> Result<Output, Failure> {
    let run = run_defects(cfg)?;
    let s = &run.setup;
    let xs = x_word(&s.datum, &s.x);
    let mut human = format!("{} word {} x = {} (length {}, r = {})\n", s.datum, s.word, show_x(&xs), xs.len(), s.word.len());
    for rep in &run.reports {
        human.push_str(&rep.to_string());
    }
    invariants_human(&mut human, &run.invariants);
    let ok = run.invariants.iter().all(|c| c.passed);
    let mut j = header(s);
    j["reports"] = serde_json::to_value(&run.reports).expect("serializable");
    j["invariants"] = serde_json::to_value(&run.invariants).expect("serializable");
    Ok(Output { json: j, human, ok })
}

pub fn multiplicities(cfg: &RunConfig) -> Result<Output, Failure> {
    let run = run_defects(cfg)?;
    let s = &run.setup;
    let xs = x_word(&s.datum, &s.x);
    let mut human = format!("{} word {} x = {}\n{:<6} {:>6} {:>6}\n", s.datum, s.word, show_x(&xs), "field", "d", "m(x,d)");
    let mut fields = Vec::new();
    for rep in &run.reports {
        if rep.multiplicities.is_empty() {
            let _ = writeln!(human, "{:<6} {:>6} {:>6}", rep.field.name(), "-", 0);
        }
        for (d, m) in &rep.multiplicities {
            let _ = writeln!(human, "{:<6} {:>6} {:>6}", rep.field.name(), d, m);
        }
        fields.push(json!({"field": rep.field, "multiplicities": rep.multiplicities}));
    }
    invariants_human(&mut human, &run.invariants);
    let ok = run.invariants.iter().all(|c| c.passed);
    let mut j = header(s);
    j["fields"] = Value::Array(fields);
    Ok(Output { json: j, human, ok })
}

pub fn braden_cmd() -> Result<Output, Failure> {
    let report = braden::run().map_err(core_err)?;
    let mut human = format!(
        "A7 word ({}), x = {}\n",
        braden::WORD.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
        show_x(&braden::X_WORD)
    );
    for c in &report.checks {
        let _ = writeln!(human, "{c}");
    }
    let _ = writeln!(human, "{:<6} defect", "field");
    for d in &report.defects {
        let _ = writeln!(human, "{:<6} {}", d.field.name(), d.defect);
    }
    let ok = report.passed();
    let _ = writeln!(human, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(Output { json: serde_json::to_value(&report).expect("serializable"), human, ok })
}

pub fn scan(cfg: &RunConfig) -> Result<Output, Failure> {
    let datum = cfg.datum()?;
    let fields = cfg.fields(&datum)?;
    let range = cfg.scan.clone().unwrap_or_default();
    let words: Vec<Word> = match (&range.words, range.max_len) {
        (Some(ws), _) => ws.iter().map(|w| make_word(&datum, w)).collect::<Result<_, _>>()?,
        (None, Some(n)) => all_words(&datum, n),
        (None, None) => vec![cfg.word(&datum)?],
    };
    let mut jobs: Vec<(Word, WeylElement)> = Vec::new();
    for w in &words {
        match &range.x {
            Some(xs) => {
                for x in xs {
                    let x = datum.word_to_element(x).map_err(|e| Failure::Config(format!("x: {e}")))?;
                    if !w.fiber(&x).is_empty() {
                        jobs.push((w.clone(), x));
                    }
                }
            }
            None => jobs.extend(w.endpoints().into_iter().map(|x| (w.clone(), x))),
        }
    }
    let results: Vec<Result<(Vec<Value>, bool), Failure>> = jobs
        .par_iter()
        .map(|(w, x)| {
            let pl = FiberPipeline::new(w, x).map_err(core_err)?;
            let inv_ok = braden::invariant_checks(&pl).iter().all(|c| c.passed);
            let mut recs = Vec::new();
            for k in &fields {
                let rep = pl.defect(*k).map_err(core_err)?;
                let defect: Vec<[i64; 2]> = rep.defect.terms().map(|(e, c)| [e, c]).collect();
                recs.push(json!({
                    "word": w.letters(),
                    "x": x_word(&datum, x),
                    "char": k.characteristic(),
                    "defect": defect,
                    "multiplicities": rep.multiplicities,
                }));
            }
            Ok((recs, inv_ok))
        })
        .collect();
    let mut records = Vec::new();
    let mut ok = true;
    for r in results {
        let (recs, inv_ok) = r?;
        ok &= inv_ok;
        records.extend(recs);
    }
    let mut human = String::new();
    match &cfg.out {
        Some(path) => {
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Failure::Config(format!("cannot open {}: {e}", path.display())))?;
            for r in &records {
                // One write per record keeps appends whole.
                let line = format!("{r}\n");
                f.write_all(line.as_bytes()).map_err(|e| Failure::Config(format!("write {}: {e}", path.display())))?;
            }
            let _ = writeln!(human, "appended {} records for {} fibers to {}", records.len(), jobs.len(), path.display());
        }
        None => {
            for r in &records {
                let _ = writeln!(human, "{r}");
            }
        }
    }
    if !ok {
        let _ = writeln!(human, "FAIL pipeline invariants");
    }
    let j = json!({"records": records.len(), "fibers": jobs.len(), "passed": ok});
    Ok(Output { json: j, human, ok })
}
