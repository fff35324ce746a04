//! Cohen-Macaulay verdicts: a strong parameter sequence that is not regular
//! refutes, and an exhausted pool together with `depth = dim` certifies.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::invariants::{grade, variables_sequence};
use crate::koszul::koszul_complex;
use crate::modpres::{ModulePresentation, RingSequence};
use crate::poly::Polynomial;
use crate::sequences::{is_parameter_sequence, is_regular_sequence, WprBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CmOutcome {
    Cm,
    NotCm,
    Inconclusive,
}

/// Which piece of evidence carried the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecidedBy {
    ZeroModule,
    DimensionAtMostZero,
    RegularityWitness,
    ClassicalCertificate,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalCertificate {
    pub depth: ExtInt,
    pub dim: ExtInt,
    pub equal: bool,
}

/// One strong parameter sequence: regularity, `grade = l`, and vanishing
/// of `H_i(x; M)` for `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceRow {
    pub sequence: Vec<String>,
    pub regular: bool,
    pub grade_is_length: bool,
    pub koszul_vanishes: bool,
    pub agree: bool,
}

fn seq_text<S: Serializer>(x: &Option<RingSequence>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        None => s.serialize_none(),
        Some(x) => s.collect_seq(x.elements().iter().map(|p| p.to_string())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CmVerdict {
    pub outcome: CmOutcome,
    pub decided_by: DecidedBy,
    #[serde(serialize_with = "seq_text")]
    pub witness: Option<RingSequence>,
    pub certificate: Option<ClassicalCertificate>,
    pub pool_size: usize,
    pub strong_parameter_count: usize,
    pub pool_exhausted: bool,
    pub table: Vec<EquivalenceRow>,
}

#[derive(Debug, Clone, Copy)]
#[derive(Default)]
pub struct CmOptions {
    pub bounds: WprBounds,
    /// Also run the bounded weak-proregularity check on every prefix.
    pub certify_wpr: bool,
}


/// `depth M` (grade of the ideal of all variables) against `dim M`.
pub fn classical_certificate(m: &ModulePresentation) -> Result<ClassicalCertificate> {
    if m.is_zero() {
        return Err(Error::ZeroModule("no depth or dimension certificate for 0".into()));
    }
    let depth = grade(&variables_sequence(m)?, m)?;
    let dim = m.dimension()?;
    Ok(ClassicalCertificate { depth, dim, equal: depth == dim })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaximalCm {
    pub certificate: ClassicalCertificate,
    pub ring_dim: ExtInt,
    pub holds: bool,
}

/// `depth M = dim M = dim R`.
pub fn maximal_cm_check(m: &ModulePresentation) -> Result<MaximalCm> {
    let certificate = classical_certificate(m)?;
    let ring_dim = m.ring().dimension();
    Ok(MaximalCm { certificate, ring_dim, holds: certificate.equal && certificate.dim == ring_dim })
}

/// Strong parameter test with a per-prefix cache keyed by element text.
struct PrefixCache<'a> {
    module: &'a ModulePresentation,
    options: CmOptions,
    verdicts: HashMap<Vec<String>, bool>,
}

impl PrefixCache<'_> {
    fn is_parameter(&mut self, x: &RingSequence) -> Result<bool> {
        let key: Vec<String> = x.elements().iter().map(|p| p.to_string()).collect();
        if let Some(&v) = self.verdicts.get(&key) {
            return Ok(v);
        }
        let v = is_parameter_sequence(x, self.module, self.options.bounds, self.options.certify_wpr)?.is_yes();
        self.verdicts.insert(key, v);
        Ok(v)
    }

    fn is_strong_parameter(&mut self, x: &RingSequence) -> Result<bool> {
        for k in 1..=x.len() {
            if !self.is_parameter(&x.prefix(k))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The three per-sequence items, evaluated independently.
pub fn equivalence_row(x: &RingSequence, m: &ModulePresentation) -> Result<EquivalenceRow> {
    let regular = is_regular_sequence(x, m, false)?.is_yes();
    let grade_is_length = grade(x, m)? == ExtInt::Finite(x.len() as i64);
    let c = koszul_complex(x, m, 1)?;
    let mut koszul_vanishes = true;
    for i in 1..=x.len() {
        if !c.homology_is_zero(i)? {
            koszul_vanishes = false;
            break;
        }
    }
    Ok(EquivalenceRow {
        sequence: x.elements().iter().map(|p| p.to_string()).collect(),
        regular,
        grade_is_length,
        koszul_vanishes,
        agree: regular == grade_is_length && grade_is_length == koszul_vanishes,
    })
}

/// Runs the pool in order; the first strong parameter sequence that is not
/// regular decides `not_cm`.
pub fn cm_check(m: &ModulePresentation, pool: &[RingSequence], options: CmOptions) -> Result<CmVerdict> {
    for x in pool {
        if **x.ring() != **m.ring() {
            return Err(Error::RingMismatch { left: m.ring().to_string(), right: x.ring().to_string() });
        }
    }
    let mut verdict = CmVerdict {
        outcome: CmOutcome::Cm,
        decided_by: DecidedBy::ZeroModule,
        witness: None,
        certificate: None,
        pool_size: pool.len(),
        strong_parameter_count: 0,
        pool_exhausted: false,
        table: Vec::new(),
    };
    if m.is_zero() {
        return Ok(verdict);
    }
    let certificate = classical_certificate(m)?;
    verdict.certificate = Some(certificate);
    if certificate.dim <= ExtInt::Finite(0) {
        verdict.decided_by = DecidedBy::DimensionAtMostZero;
        return Ok(verdict);
    }
    let mut cache = PrefixCache { module: m, options, verdicts: HashMap::new() };
    for x in pool {
        if x.is_empty() || !cache.is_strong_parameter(x)? {
            continue;
        }
        verdict.strong_parameter_count += 1;
        let row = equivalence_row(x, m)?;
        let regular = row.regular;
        verdict.table.push(row);
        if !regular {
            verdict.outcome = CmOutcome::NotCm;
            verdict.decided_by = DecidedBy::RegularityWitness;
            verdict.witness = Some(x.clone());
            return Ok(verdict);
        }
    }
    verdict.pool_exhausted = true;
    if certificate.equal {
        verdict.decided_by = DecidedBy::ClassicalCertificate;
    } else {
        verdict.outcome = CmOutcome::Inconclusive;
        verdict.decided_by = DecidedBy::Undecided;
    }
    Ok(verdict)
}

/// Candidate elements: variables, sums of two variables, then degree-two
/// monomials, reduced modulo `J` without zeros or repeats.
pub fn pool_elements(m: &ModulePresentation) -> Vec<Polynomial> {
    let poly = m.poly_ring();
    let n = poly.nvars();
    let mut cands: Vec<Polynomial> = (0..n).map(|i| poly.var(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            cands.push(&poly.var(i) + &poly.var(j));
        }
    }
    for i in 0..n {
        for j in i..n {
            cands.push(&poly.var(i) * &poly.var(j));
        }
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for c in cands {
        let r = m.ring().reduce(&c);
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Ordered tuples of distinct pool elements of length `1..=dim M`, shorter
/// first, at most `budget` of them.
pub fn auto_pool(m: &ModulePresentation, budget: usize) -> Result<Vec<RingSequence>> {
    let dim = match m.dimension()? {
        ExtInt::Finite(d) if d > 0 => d as usize,
        _ => return Ok(Vec::new()),
    };
    let els = pool_elements(m);
    let mut out = Vec::new();
    fn rec(
        els: &[Polynomial],
        len: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) {
        if out.len() >= budget {
            return;
        }
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..els.len() {
            if !cur.contains(&i) {
                cur.push(i);
                rec(els, len, cur, out, budget);
                cur.pop();
            }
        }
    }
    let mut idx = Vec::new();
    for len in 1..=dim.min(els.len()) {
        rec(&els, len, &mut Vec::new(), &mut idx, budget);
    }
    for tuple in idx {
        let chosen: Vec<Polynomial> = tuple.iter().map(|&i| els[i].clone()).collect();
        out.push(RingSequence::new(m.ring(), &chosen)?);
    }
    Ok(out)
}
