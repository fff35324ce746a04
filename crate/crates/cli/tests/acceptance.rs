//! Acceptance run over the example corpus: one PASS/FAIL line per criterion,
//! nonzero exit if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nagata_cli::input::parse;
use nagata_cli::{run, Command, Options, Report, Status, Theorem};
use nagata_core::groebner::syzygies;
use nagata_core::invariants::auslander_buchsbaum;
use nagata_core::koszul::koszul_complex;

const CORPUS: &str = include_str!("../examples/corpus.wb");

fn report(command: Command, opts: &Options) -> Report {
    run(command, "corpus.wb", CORPUS.as_bytes(), opts).expect("corpus runs")
}

fn all_pass(r: &Report) -> bool {
    r.items.iter().all(|i| i.status == Status::Pass)
}

fn count(r: &Report, key: &str) -> u64 {
    r.items.iter().map(|i| i.result[key].as_u64().or_else(|| i.result[key].as_bool().map(u64::from)).unwrap_or(0)).sum()
}

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn corollary() -> Outcome {
    let start = Instant::now();
    let r = report(Command::Verify(Theorem::Corollary), &Options::default());
    let elapsed = start.elapsed();
    let required = ["line/R", "line/K", "plane/Kx", "plane/R", "node/R", "plane/E"];
    let labels: Vec<String> = r.items.iter().map(|i| i.label()).collect();
    let covered = required.iter().all(|l| labels.iter().any(|x| x == l));
    let ok = r.items.len() >= 6 && covered && all_pass(&r) && elapsed < Duration::from_secs(60);
    (ok, format!("{} pairs, {} mismatches, {:.2?}", r.items.len(), r.summary.failed, elapsed))
}

fn two_routes() -> Outcome {
    let r = report(Command::Verify(Theorem::Prop54), &Options::default());
    let fires = count(&r, "grade_test_fires");
    (r.items.len() >= 20 && all_pass(&r), format!("{} pairs, grade test fires on {fires}, {} disagreements", r.items.len(), r.summary.failed))
}

fn equivalence_table() -> Outcome {
    let r = report(Command::Verify(Theorem::Thm62), &Options::default());
    let strong = count(&r, "strong_parameter_sequences");
    let disagreements = count(&r, "disagreements");
    (strong >= 10 && disagreements == 0 && all_pass(&r), format!("{strong} strong parameter sequences, {disagreements} disagreements"))
}

fn invariances() -> Outcome {
    let r = report(Command::Verify(Theorem::Prop53), &Options::default());
    (all_pass(&r), format!("{} sequence/module pairs, {} failures", r.items.len(), r.summary.failed))
}

fn wpr_totality() -> Outcome {
    let opts = Options { strict: true, ..Options::default() };
    let r = report(Command::Wpr, &opts);
    let defects: Vec<u64> = r.items.iter().filter_map(|i| i.result["defect"].as_u64()).collect();
    let max = defects.iter().copied().max().unwrap_or(0);
    let ok = all_pass(&r)
        && r.items.iter().all(|i| i.result["outcome"] == "yes")
        && max <= 4;
    (ok, format!("{} pairs, {} undetermined, max defect {max}", r.items.len(), r.summary.undetermined))
}

fn kernel_soundness() -> Outcome {
    let input = parse(CORPUS, None).expect("corpus parses");
    let (mut bases, mut complexes, mut ab, mut h0) = (0usize, 0usize, 0usize, 0usize);
    let mut bad = Vec::new();
    for block in &input.rings {
        let built = block.build().expect("corpus builds");
        let ring = &built.ring;
        bases += 1;
        if !ring.ideal_gb().s_pair_certificate() {
            bad.push(format!("{}: ideal basis", built.name));
        }
        for (name, m) in &built.modules {
            let poly = m.poly_ring();
            bases += 1;
            if !m.rel_gb().s_pair_certificate() {
                bad.push(format!("{}/{name}: relation basis", built.name));
            }
            let syz = syzygies(poly, m.gens(), m.relations()).expect("syzygies");
            for s in &syz {
                let mut acc = nagata_core::groebner::FreeModuleElement::zero(poly, m.gens());
                for (c, rel) in s.components().iter().zip(m.relations()) {
                    acc = acc.add(&rel.scale(c)).unwrap();
                }
                if !acc.is_zero() {
                    bad.push(format!("{}/{name}: syzygy does not evaluate to zero", built.name));
                }
            }
            if ring.ideal_gens().is_empty() {
                ab += 1;
                let rep = auslander_buchsbaum(m).expect("depth and pd");
                if !rep.holds {
                    bad.push(format!("{}/{name}: depth {} + pd {:?} != {}", built.name, rep.depth, rep.projective_dimension, rep.nvars));
                }
            }
            for (seq_name, x) in &built.sequences {
                for n in 1..=2 {
                    let c = koszul_complex(x, m, n).expect("koszul");
                    complexes += 1;
                    if !c.d_squared_zero() {
                        bad.push(format!("{}/{name}/{seq_name}: d^2 != 0", built.name));
                    }
                    for i in 0..=c.length() {
                        bases += 1;
                        if !c.boundaries(i).expect("boundaries").s_pair_certificate() {
                            bad.push(format!("{}/{name}/{seq_name}: boundary basis in degree {i}", built.name));
                        }
                    }
                    h0 += 1;
                    let q = m.quotient_by_sequence(&x.power(n)).expect("quotient");
                    if !c.homology(0).expect("homology").same_presentation(&q) {
                        bad.push(format!("{}/{name}/{seq_name}: H_0 differs from M/x^{n}M", built.name));
                    }
                }
            }
        }
    }
    let detail = format!("{bases} bases certified, {complexes} complexes with d^2 = 0, {ab} depth + pd checks, {h0} H_0 comparisons");
    if bad.is_empty() {
        (true, detail)
    } else {
        (false, format!("{detail}; failures: {}", bad.join("; ")))
    }
}

fn determinism() -> Outcome {
    let commands = [
        Command::Dim,
        Command::Height,
        Command::Grade,
        Command::Pgrade,
        Command::Koszul,
        Command::Regular,
        Command::Wpr,
        Command::Param,
        Command::StrongParam,
        Command::Cm,
        Command::TrivialExt,
        Command::Verify(Theorem::Th),
        Command::Verify(Theorem::Corollary),
        Command::Verify(Theorem::LemmaW),
        Command::Verify(Theorem::Thm62),
        Command::Verify(Theorem::Prop53),
        Command::Verify(Theorem::Prop54),
    ];
    let full = || -> String { commands.iter().map(|c| report(*c, &Options::default()).to_json()).collect() };
    let (a, b) = (full(), full());
    (a == b, format!("{} commands, {} bytes per run", commands.len(), a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("trivial extension corollary equivalence", corollary),
        ("parameter verdict two-route agreement", two_routes),
        ("strong parameter equivalence table", equivalence_table),
        ("parameter verdict invariances", invariances),
        ("weak proregularity totality", wpr_totality),
        ("kernel soundness", kernel_soundness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check();
        if !ok {
            failed += 1;
        }
        println!("{} criterion {}: {name}: {detail}", if ok { "PASS" } else { "FAIL" }, n + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
