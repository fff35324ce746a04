//! Command evaluation: every command fans out over the ring blocks, modules
//! and sequences of the input and yields one report item per target.

use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{json, Value};

use nagata_core::cm::{auto_pool, cm_check, equivalence_row, CmOptions, CmOutcome, CmVerdict};
use nagata_core::invariants::{grade, height_on_module, module_dimension, pgrade};
use nagata_core::koszul::koszul_complex;
use nagata_core::modpres::{ModulePresentation, RingSequence};
use nagata_core::poly::Field;
use nagata_core::sequences::{
    is_parameter_sequence, is_regular_sequence, is_strong_parameter_sequence, is_weakly_proregular,
    verify_zero_divisor, Outcome, SequenceVerdict, WprBounds, Witness,
};
use nagata_core::trivial_ext::{
    build_trivial_extension, lemma_w_check, quotient_iso_check, theorem_th_harness, HarnessOptions,
};
use nagata_core::{Error, ExtInt};

use crate::input::{self, BuiltRing, InputError};
use crate::report::{InputDigest, Item, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Th,
    Corollary,
    LemmaW,
    Thm62,
    Prop53,
    Prop54,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Th => "th",
            Theorem::Corollary => "corollary",
            Theorem::LemmaW => "lemma-w",
            Theorem::Thm62 => "thm62",
            Theorem::Prop53 => "prop53",
            Theorem::Prop54 => "prop54",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dim,
    Height,
    Grade,
    Pgrade,
    Koszul,
    Regular,
    Wpr,
    Param,
    StrongParam,
    Cm,
    TrivialExt,
    Verify(Theorem),
}

impl Command {
    pub fn name(self) -> String {
        match self {
            Command::Dim => "dim".into(),
            Command::Height => "height".into(),
            Command::Grade => "grade".into(),
            Command::Pgrade => "pgrade".into(),
            Command::Koszul => "koszul".into(),
            Command::Regular => "regular".into(),
            Command::Wpr => "wpr".into(),
            Command::Param => "param".into(),
            Command::StrongParam => "strong-param".into(),
            Command::Cm => "cm".into(),
            Command::TrivialExt => "trivial-ext".into(),
            Command::Verify(t) => format!("verify --theorem {}", t.name()),
        }
    }

    fn scope(self) -> Scope {
        match self {
            Command::Dim | Command::Cm | Command::Verify(Theorem::Thm62) => Scope::Module,
            Command::TrivialExt | Command::Verify(Theorem::Th | Theorem::Corollary | Theorem::LemmaW) => Scope::Pair,
            _ => Scope::Sequence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scope {
    Module,
    Sequence,
    /// Nonzero modules, each forming a trivial extension with its ring.
    Pair,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub bounds: WprBounds,
    pub pool_budget: usize,
    pub strict: bool,
    pub field: Option<Field>,
    pub module: Option<String>,
    pub seq: Option<String>,
    pub auto_pool: bool,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bounds: WprBounds::default(),
            pool_budget: 256,
            strict: false,
            field: None,
            module: None,
            seq: None,
            auto_pool: false,
            timings: false,
        }
    }
}

impl Options {
    fn to_json(&self) -> Value {
        json!({
            "bounds": self.bounds,
            "pool_budget": self.pool_budget,
            "strict": self.strict,
            "field": self.field.map(|f| match f {
                Field::Rational => "q".to_string(),
                Field::Prime(p) => format!("p:{p}"),
            }),
            "module": self.module,
            "seq": self.seq,
            "auto_pool": self.auto_pool,
        })
    }

    fn cm(&self) -> CmOptions {
        CmOptions { bounds: self.bounds, certify_wpr: false }
    }
}

#[derive(Debug)]
pub enum RunError {
    Input(InputError),
    Usage(String),
    Core(Error),
}

impl RunError {
    /// `1` for failed internal cross-checks, `2` for bad input or usage.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Core(Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Input(e) => write!(f, "input error: {e}"),
            RunError::Usage(m) => write!(f, "usage error: {m}"),
            RunError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

type Res<T> = std::result::Result<T, RunError>;

struct Target<'a> {
    ring: &'a BuiltRing,
    module: Option<(&'a str, &'a ModulePresentation)>,
    sequence: Option<(String, RingSequence)>,
}

fn seq_text(x: &RingSequence) -> Vec<String> {
    x.elements().iter().map(|p| p.to_string()).collect()
}

fn outcome_status(o: Outcome) -> Status {
    match o {
        Outcome::Yes => Status::Pass,
        Outcome::No => Status::Fail,
        Outcome::UndeterminedAtBound => Status::Undetermined,
    }
}

fn outcome_text(o: Outcome) -> &'static str {
    match o {
        Outcome::Yes => "yes",
        Outcome::No => "no",
        Outcome::UndeterminedAtBound => "undetermined",
    }
}

fn bool_status(b: Option<bool>) -> Status {
    match b {
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
        None => Status::Undetermined,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Declared sequences (filtered by `--seq`), then the automatic pool when asked.
fn sequences_for(ring: &BuiltRing, m: &ModulePresentation, opts: &Options, with_auto: bool) -> Res<Vec<(String, RingSequence)>> {
    let mut out: Vec<(String, RingSequence)> = ring
        .sequences
        .iter()
        .filter(|(n, _)| opts.seq.as_deref().is_none_or(|s| s == n))
        .cloned()
        .collect();
    if with_auto {
        for (i, x) in auto_pool(m, opts.pool_budget)?.into_iter().enumerate() {
            if !out.iter().any(|(_, y)| *y == x) {
                out.push((format!("auto{i}"), x));
            }
        }
    }
    Ok(out)
}

fn targets<'a>(rings: &'a [BuiltRing], scope: Scope, opts: &Options) -> Res<Vec<Target<'a>>> {
    let mut out = Vec::new();
    let mut module_seen = opts.module.is_none();
    let mut seq_seen = opts.seq.is_none();
    for ring in rings {
        seq_seen |= opts.seq.as_deref().is_some_and(|s| ring.sequences.iter().any(|(n, _)| n == s));
        for (name, m) in &ring.modules {
            if opts.module.as_deref().is_some_and(|s| s != name) {
                continue;
            }
            module_seen = true;
            match scope {
                Scope::Module => out.push(Target { ring, module: Some((name, m)), sequence: None }),
                Scope::Pair => {
                    if m.is_zero() && opts.module.is_none() {
                        continue;
                    }
                    out.push(Target { ring, module: Some((name, m)), sequence: None });
                }
                Scope::Sequence => {
                    for s in sequences_for(ring, m, opts, opts.auto_pool)? {
                        out.push(Target { ring, module: Some((name, m)), sequence: Some(s) });
                    }
                }
            }
        }
    }
    if !module_seen {
        return Err(RunError::Usage(format!("no module named `{}`", opts.module.as_deref().unwrap_or_default())));
    }
    if !seq_seen {
        return Err(RunError::Usage(format!("no sequence named `{}`", opts.seq.as_deref().unwrap_or_default())));
    }
    Ok(out)
}

/// Parses `text`, evaluates `command` on every target and assembles the report
/// in input order.
pub fn run(command: Command, file: &str, text: &[u8], opts: &Options) -> Res<Report> {
    let start = Instant::now();
    let src = std::str::from_utf8(text).map_err(|_| RunError::Usage(format!("{file} is not UTF-8")))?;
    let parsed = input::parse(src, opts.field).map_err(RunError::Input)?;
    let rings: Vec<BuiltRing> = parsed.rings.iter().map(|r| r.build()).collect::<nagata_core::Result<_>>()?;
    let ts = targets(&rings, command.scope(), opts)?;
    let results: Vec<Res<Item>> = ts
        .par_iter()
        .map(|t| {
            let t0 = Instant::now();
            let mut item = evaluate(command, t, opts)?;
            if opts.timings {
                item.elapsed_ms = Some(t0.elapsed().as_millis() as u64);
            }
            Ok(item)
        })
        .collect();
    let items: Vec<Item> = results.into_iter().collect::<Res<_>>()?;
    let mut options = opts.to_json();
    if let Command::Verify(t) = command {
        options["theorem"] = json!(t.name());
    }
    let mut report = Report::new(&command.name(), InputDigest::new(file, text), options, items, opts.strict);
    if let Command::Verify(t @ (Theorem::Th | Theorem::Corollary)) = command {
        let held = report.items.iter().filter(|i| i.status == Status::Pass).count();
        report.headline = Some(format!("{}: {}/{} equivalences hold", t.name(), held, report.items.len()));
    }
    if opts.timings {
        report.total_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn item(t: &Target, status: Status, summary: String, result: Value) -> Item {
    Item {
        ring: t.ring.name.clone(),
        module: t.module.map(|(n, _)| n.to_string()),
        sequence: t.sequence.as_ref().map(|(n, _)| n.clone()),
        status,
        summary,
        result,
        elapsed_ms: None,
    }
}

fn evaluate(command: Command, t: &Target, opts: &Options) -> Res<Item> {
    let (_, m) = t.module.expect("every target has a module");
    let seq = t.sequence.as_ref().map(|(_, x)| x);
    let seq_label = || seq.map(|x| x.to_string()).unwrap_or_default();
    Ok(match command {
        Command::Dim => {
            let d = module_dimension(m)?;
            item(t, Status::Info, format!("dim = {d}"), json!({ "dimension": d }))
        }
        Command::Height => {
            let x = seq.expect("sequence target");
            let h = height_on_module(x.elements(), m)?;
            item(t, Status::Info, format!("height of {} = {h}", seq_label()), json!({ "sequence": seq_text(x), "height": h }))
        }
        Command::Grade => {
            let x = seq.expect("sequence target");
            let g = grade(x, m)?;
            item(t, Status::Info, format!("grade of {} = {g}", seq_label()), json!({ "sequence": seq_text(x), "grade": g }))
        }
        Command::Pgrade => {
            let x = seq.expect("sequence target");
            let r = pgrade(x, m)?;
            let mut v = to_value(&r);
            v["sequence"] = json!(seq_text(x));
            item(t, Status::Info, format!("pgrade of {} = {}", seq_label(), r.grade), v)
        }
        Command::Koszul => koszul_item(t, m, seq.expect("sequence target"))?,
        Command::Regular => {
            let x = seq.expect("sequence target");
            verdict_item(t, m, x, is_regular_sequence(x, m, false)?)?
        }
        Command::Wpr => {
            let x = seq.expect("sequence target");
            verdict_item(t, m, x, is_weakly_proregular(x, m, opts.bounds)?)?
        }
        Command::Param => {
            let x = seq.expect("sequence target");
            verdict_item(t, m, x, is_parameter_sequence(x, m, opts.bounds, true)?)?
        }
        Command::StrongParam => {
            let x = seq.expect("sequence target");
            verdict_item(t, m, x, is_strong_parameter_sequence(x, m, opts.bounds, true)?)?
        }
        Command::Cm => cm_item(t, m, opts)?,
        Command::TrivialExt => trivial_ext_item(t, m)?,
        Command::Verify(Theorem::Th | Theorem::Corollary) => harness_item(t, m, opts, command)?,
        Command::Verify(Theorem::LemmaW) => lemma_w_item(t, m, opts)?,
        Command::Verify(Theorem::Thm62) => thm62_item(t, m, opts)?,
        Command::Verify(Theorem::Prop53) => prop53_item(t, m, seq.expect("sequence target"), opts)?,
        Command::Verify(Theorem::Prop54) => prop54_item(t, m, seq.expect("sequence target"))?,
    })
}

/// Re-checks a zero-divisor witness with one membership query.
fn witness_check(x: &RingSequence, m: &ModulePresentation, v: &SequenceVerdict) -> Res<Option<bool>> {
    match &v.witness {
        Some(Witness::ZeroDivisor { index, element }) => Ok(Some(verify_zero_divisor(x, m, *index, element)?)),
        _ => Ok(None),
    }
}

fn verdict_item(t: &Target, m: &ModulePresentation, x: &RingSequence, v: SequenceVerdict) -> Res<Item> {
    let reverified = witness_check(x, m, &v)?;
    let mut status = outcome_status(v.outcome);
    if reverified == Some(false) {
        status = Status::Fail;
    }
    let mut summary = format!("{} on {}: {}", x, m, outcome_text(v.outcome));
    if let Some(d) = v.defect {
        summary.push_str(&format!(" (defect {d})"));
    }
    if let Some(Witness::ZeroDivisor { index, element }) = &v.witness {
        summary.push_str(&format!(", x{index} kills {element}"));
    }
    let mut value = to_value(&v);
    value["sequence"] = json!(seq_text(x));
    if let Some(ok) = reverified {
        value["witness_reverified"] = json!(ok);
    }
    Ok(item(t, status, summary, value))
}

fn koszul_item(t: &Target, m: &ModulePresentation, x: &RingSequence) -> Res<Item> {
    let c = koszul_complex(x, m, 1)?;
    let ranks: Vec<usize> = (0..=x.len()).map(|i| c.rank(i)).collect();
    let mut homology = Vec::new();
    for i in 0..=x.len() {
        homology.push(json!({ "degree": i, "zero": c.homology_is_zero(i)? }));
    }
    let d2 = c.d_squared_zero();
    let h0 = c.homology(0)?.same_presentation(&m.quotient_by_sequence(x)?);
    let top = c.top_nonvanishing()?;
    let status = if d2 && h0 { Status::Pass } else { Status::Fail };
    let summary = format!(
        "K({x}; M): ranks {ranks:?}, top nonvanishing H_{}, d^2 = 0: {d2}, H_0 = M/xM: {h0}",
        top.map(|i| i.to_string()).unwrap_or_else(|| "none".into())
    );
    Ok(item(
        t,
        status,
        summary,
        json!({
            "sequence": seq_text(x),
            "ranks": ranks,
            "homology": homology,
            "top_nonvanishing": top,
            "d_squared_zero": d2,
            "h0_is_quotient": h0,
        }),
    ))
}

fn cm_pool(t: &Target, m: &ModulePresentation, opts: &Options) -> Res<Vec<RingSequence>> {
    Ok(sequences_for(t.ring, m, opts, true)?.into_iter().map(|(_, x)| x).collect())
}

fn cm_item(t: &Target, m: &ModulePresentation, opts: &Options) -> Res<Item> {
    let pool = cm_pool(t, m, opts)?;
    let v = cm_check(m, &pool, opts.cm())?;
    let mut value = to_value(&v);
    let mut status = match v.outcome {
        CmOutcome::Cm => Status::Pass,
        CmOutcome::NotCm => Status::Fail,
        CmOutcome::Inconclusive => Status::Undetermined,
    };
    let mut summary = format!("{}: {}", m, to_value(&v.outcome).as_str().unwrap_or_default());
    if let Some(w) = &v.witness {
        let strong = is_strong_parameter_sequence(w, m, opts.bounds, false)?;
        let reg = is_regular_sequence(w, m, false)?;
        let zd = witness_check(w, m, &reg)?;
        let ok = strong.is_yes() && !reg.is_yes() && zd == Some(true);
        value["witness_check"] = json!({
            "strong_parameter": strong.is_yes(),
            "regular": reg.is_yes(),
            "zero_divisor": reg.witness,
            "reverified": ok,
        });
        summary.push_str(&format!(", witness {w}"));
        if let Some(Witness::ZeroDivisor { index, element }) = &reg.witness {
            summary.push_str(&format!(" (x{index} kills {element})"));
        }
        if !ok {
            status = Status::Fail;
        }
    }
    if let Some(c) = &v.certificate {
        summary.push_str(&format!("; depth {} dim {}", c.depth, c.dim));
    }
    Ok(item(t, status, summary, value))
}

fn trivial_ext_item(t: &Target, m: &ModulePresentation) -> Res<Item> {
    let ext = build_trivial_extension(&t.ring.ring, m)?;
    let dim_t = ext.ring().dimension();
    let dim_r = t.ring.ring.dimension();
    let dim_m = m.dimension()?;
    let dim_ok = dim_t == dim_r.max(dim_m);
    let mut quotients = Vec::new();
    let mut all_iso = true;
    for (name, x) in &t.ring.sequences {
        let iso = quotient_iso_check(&ext, x)?;
        all_iso &= iso;
        quotients.push(json!({ "sequence": name, "elements": seq_text(x), "isomorphic": iso }));
    }
    let checks = ext.checks();
    let status = if checks.all() && dim_ok && all_iso { Status::Pass } else { Status::Fail };
    let summary = format!("T = {}, dim T = {dim_t}, build checks {}", ext.ring(), if checks.all() { "hold" } else { "FAIL" });
    Ok(item(
        t,
        status,
        summary,
        json!({
            "extension": ext.ring().to_string(),
            "module_variables": ext.module_vars().iter().map(|&v| ext.ring().poly_ring().vars()[v].clone()).collect::<Vec<_>>(),
            "build_checks": checks,
            "dim_extension": dim_t,
            "dim_ring": dim_r,
            "dim_module": dim_m,
            "dimension_formula": dim_ok,
            "quotients": quotients,
        }),
    ))
}

fn cm_word(v: &CmVerdict) -> &'static str {
    match v.outcome {
        CmOutcome::Cm => "cm",
        CmOutcome::NotCm => "not cm",
        CmOutcome::Inconclusive => "inconclusive",
    }
}

fn harness_item(t: &Target, m: &ModulePresentation, opts: &Options, command: Command) -> Res<Item> {
    let pool: Vec<RingSequence> = sequences_for(t.ring, m, opts, false)?.into_iter().map(|(_, x)| x).collect();
    let hopts = HarnessOptions { cm: opts.cm(), pool_budget: opts.pool_budget, pool: Some(pool) };
    let rep = theorem_th_harness(&t.ring.ring, m, &hopts)?;
    let equivalence = if command == Command::Verify(Theorem::Th) { rep.equivalence_1_2 } else { rep.equivalence_1_3 };
    let dims_ok = rep.dim_extension == rep.dim_ring.max(rep.dim_module);
    let status = match (equivalence, rep.build_checks.all() && dims_ok) {
        (_, false) => Status::Fail,
        (e, true) => bool_status(e),
    };
    let summary = format!(
        "T = {}: T {}, R {}, M maximal CM {}, equivalence {}",
        rep.extension_ring,
        cm_word(&rep.cm_extension),
        cm_word(&rep.cm_ring),
        rep.maximal_cm_module.holds,
        match equivalence {
            Some(true) => "holds",
            Some(false) => "FAILS",
            None => "undetermined",
        }
    );
    let mut value = to_value(&rep);
    value["dimension_formula"] = json!(dims_ok);
    Ok(item(t, status, summary, value))
}

fn lemma_w_item(t: &Target, m: &ModulePresentation, opts: &Options) -> Res<Item> {
    let ext = build_trivial_extension(&t.ring.ring, m)?;
    let tr = ext.ring();
    let mut seqs: Vec<RingSequence> =
        sequences_for(t.ring, m, opts, false)?.iter().map(|(_, x)| ext.lift_sequence(x)).collect();
    let poly = tr.poly_ring();
    for &v in ext.module_vars() {
        seqs.push(RingSequence::new(tr, &[poly.var(v)])?);
        seqs.push(RingSequence::new(tr, &[&poly.var(0) + &poly.var(v)])?);
    }
    let mut rows = Vec::new();
    let mut status = Status::Pass;
    for x in seqs {
        let rep = lemma_w_check(&ext, &x, opts.bounds)?;
        match rep.holds {
            Some(false) => status = Status::Fail,
            None if status == Status::Pass => status = Status::Undetermined,
            _ => {}
        }
        rows.push(rep);
    }
    let held = rows.iter().filter(|r| r.holds == Some(true)).count();
    let summary = format!("T = {}: biconditional holds on {}/{} sequences", tr, held, rows.len());
    Ok(item(t, status, summary, json!({ "extension": tr.to_string(), "rows": rows })))
}

fn thm62_item(t: &Target, m: &ModulePresentation, opts: &Options) -> Res<Item> {
    let pool = cm_pool(t, m, opts)?;
    let mut rows = Vec::new();
    for x in &pool {
        if !x.is_empty() && is_strong_parameter_sequence(x, m, opts.bounds, false)?.is_yes() {
            rows.push(equivalence_row(x, m)?);
        }
    }
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    let here = cm_check(m, &pool, opts.cm())?;
    let ext = m.extend_to_polynomial_ring()?;
    let lifted: Vec<RingSequence> = pool.iter().map(|x| x.embed(ext.ring())).collect();
    let there = cm_check(&ext, &lifted, opts.cm())?;
    let flat = here.outcome == there.outcome;
    let status = if disagreements == 0 && flat { Status::Pass } else { Status::Fail };
    let summary = format!(
        "{} strong parameter sequences, {} disagreements; cm {} over R and {} over R[t]",
        rows.len(),
        disagreements,
        cm_word(&here),
        cm_word(&there)
    );
    Ok(item(
        t,
        status,
        summary,
        json!({
            "strong_parameter_sequences": rows.len(),
            "disagreements": disagreements,
            "rows": rows,
            "cm": here.outcome,
            "cm_extended": there.outcome,
            "flat_descent": flat,
        }),
    ))
}

fn prop53_item(t: &Target, m: &ModulePresentation, x: &RingSequence, opts: &Options) -> Res<Item> {
    let b = opts.bounds;
    let param = |y: &RingSequence| -> Res<Outcome> { Ok(is_parameter_sequence(y, m, b, false)?.outcome) };
    let verdict = param(x)?;
    let mut permutation = true;
    let orders: Vec<Vec<usize>> = if x.len() <= 3 {
        (0..x.len()).permutations(x.len()).collect()
    } else {
        vec![(0..x.len()).rev().collect()]
    };
    for order in orders {
        let els: Vec<_> = order.iter().map(|&i| x.elements()[i].clone()).collect();
        permutation &= param(&RingSequence::new(x.ring(), &els)?)? == verdict;
    }
    let mut power = true;
    for k in 2..=3 {
        power &= param(&x.power(k))? == verdict;
    }
    let regular = is_regular_sequence(x, m, false)?.is_yes();
    let strong = is_strong_parameter_sequence(x, m, b, false)?.is_yes();
    let ext = m.extend_to_polynomial_ring()?;
    let flat = is_parameter_sequence(&x.embed(ext.ring()), &ext, b, false)?.outcome == verdict;
    let wpr = is_weakly_proregular(x, m, b)?;
    let total = wpr.is_yes() && wpr.defect.is_none_or(|d| d <= b.defect_max);
    let ok = permutation && power && (!regular || strong) && flat && total;
    let summary = format!(
        "{x}: parameter {}, permutation {permutation}, powers {power}, regular {regular} => strong {strong}, R[t] {flat}, wpr {}",
        outcome_text(verdict),
        outcome_text(wpr.outcome)
    );
    Ok(item(
        t,
        if ok { Status::Pass } else { Status::Fail },
        summary,
        json!({
            "sequence": seq_text(x),
            "parameter": verdict,
            "permutation_invariant": permutation,
            "power_invariant": power,
            "regular": regular,
            "strong_parameter": strong,
            "regular_implies_strong": !regular || strong,
            "flat_probe": flat,
            "weakly_proregular": wpr.outcome,
            "defect": wpr.defect,
        }),
    ))
}

fn prop54_item(t: &Target, m: &ModulePresentation, x: &RingSequence) -> Res<Item> {
    let len = ExtInt::Finite(x.len() as i64);
    let v = is_parameter_sequence(x, m, WprBounds::default(), false)?;
    let height = if x.is_empty() { ExtInt::Finite(0) } else { height_on_module(x.elements(), m)? };
    let pg = pgrade(x, m)?;
    let fires = pg.grade == len;
    let accepted = v.is_yes();
    let agree = !fires || accepted;
    let exact = !accepted || height == len;
    let summary = format!(
        "{x}: height {height}, length {}, pgrade {}, parameter {}, grade test {}",
        x.len(),
        pg.grade,
        outcome_text(v.outcome),
        if fires { "fires" } else { "silent" }
    );
    Ok(item(
        t,
        if agree && exact { Status::Pass } else { Status::Fail },
        summary,
        json!({
            "sequence": seq_text(x),
            "height": height,
            "length": x.len(),
            "pgrade": pg.grade,
            "parameter": v.outcome,
            "grade_test_fires": fires,
            "agree": agree,
            "height_equals_length": exact,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = "ring plane\n vars x y\n module M cyclic x^2, x*y\n module Z zero\n sequence s y\n sequence t x\nend\n";

    fn go(c: Command, opts: &Options) -> Report {
        run(c, "plane.wb", PLANE.as_bytes(), opts).unwrap()
    }

    #[test]
    fn fan_out_follows_input_order() {
        let r = go(Command::Param, &Options::default());
        let labels: Vec<String> = r.items.iter().map(|i| i.label()).collect();
        assert_eq!(labels, ["plane/M/s", "plane/M/t", "plane/Z/s", "plane/Z/t"]);
        assert_eq!(r.items[0].status, Status::Pass);
        assert_eq!(r.items[1].status, Status::Fail);
        assert_eq!(r.summary.exit_code, 1);
    }

    #[test]
    fn filters() {
        let opts = Options { module: Some("M".into()), seq: Some("s".into()), ..Options::default() };
        let r = go(Command::Regular, &opts);
        assert_eq!(r.items.len(), 1);
        let missing = Options { module: Some("nope".into()), ..Options::default() };
        assert!(matches!(run(Command::Dim, "f", PLANE.as_bytes(), &missing), Err(RunError::Usage(_))));
    }

    #[test]
    fn zero_module_dimension() {
        let opts = Options { module: Some("Z".into()), ..Options::default() };
        let r = go(Command::Dim, &opts);
        assert_eq!(r.items[0].result["dimension"], json!("-inf"));
        assert_eq!(r.summary.exit_code, 0);
    }

    #[test]
    fn cm_witness_is_reverified() {
        let opts = Options { module: Some("M".into()), ..Options::default() };
        let r = go(Command::Cm, &opts);
        let res = &r.items[0].result;
        assert_eq!(res["outcome"], json!("not_cm"));
        assert_eq!(res["witness"], json!(["y"]));
        assert_eq!(res["witness_check"]["reverified"], json!(true));
    }

    #[test]
    fn pair_scope_skips_zero_modules_unless_named() {
        let r = go(Command::TrivialExt, &Options::default());
        assert_eq!(r.items.len(), 1);
        let opts = Options { module: Some("Z".into()), ..Options::default() };
        let e = run(Command::TrivialExt, "f", PLANE.as_bytes(), &opts).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
