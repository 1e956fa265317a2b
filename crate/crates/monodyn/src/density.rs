//! Bulk scans over ranges of a: empirical densities of dynamically monogenic
//! pairs against the truncated Euler-product predictions.
//!
//! Squarefreeness over a range is decided by a segmented sieve (marking
//! multiples of q^2), not per-a factorization: that is the performance path.
//! The congruence conditions mod p^2 are table lookups. Scans are data-parallel
//! over fixed-size chunks with an order-fixed merge, so results do not depend
//! on the worker count.

use crate::arith;
use crate::families::{self, CheckMode, CondStatus, FamilyOutcome, FamilyVerdict};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

const CHUNK: i64 = 1 << 16;

/// Families addressable by the scanner. The scanned variable is `a` for the
/// first three and the tower parameter `b` for the last two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    OneMinusXd { d: u32 },
    Chebyshev { d: u32 },
    Unicritical { u: i8, d: u32, b: BigInt },
    RadicalTower { d: u32 },
    RealTower { d: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::OneMinusXd { .. } => "one-minus-xd",
            Family::Chebyshev { .. } => "chebyshev",
            Family::Unicritical { .. } => "unicritical",
            Family::RadicalTower { .. } => "radical-tower",
            Family::RealTower { .. } => "real-tower",
        }
    }

    /// Run the per-point checker (the slow path / cross-check route).
    pub fn check_point(&self, point: &BigInt, budget: &arith::FactorBudget) -> Option<FamilyVerdict> {
        match self {
            Family::OneMinusXd { d } => Some(families::one_minus_xd_check(*d, point, budget)),
            Family::Chebyshev { d } => Some(families::cheby_check(*d, point, budget)),
            Family::Unicritical { u, d, b } => Some(families::unicritical_check(
                *u,
                *d,
                b,
                point,
                CheckMode::AllN,
                budget,
            )),
            Family::RadicalTower { d } => {
                if *point >= BigInt::from(2) {
                    Some(families::rad_fields_check(*d, point, budget))
                } else {
                    None
                }
            }
            Family::RealTower { d } => {
                if *point < BigInt::from(-1) {
                    Some(families::real_mono2_check(*d, point, budget))
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVerdict {
    Pass,
    Fail,
    Conditional,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub a: i64,
    pub verdict: ScanVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing_condition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_prime: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub family: String,
    pub params: Vec<(String, String)>,
    pub range: (i64, i64),
    pub pass: u64,
    pub fail: u64,
    pub conditional: u64,
    pub empirical: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<f64>,
    pub truncation_prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
}

fn euler_totient(mut d: u64) -> u64 {
    let mut phi = d;
    let mut q = 2;
    while q * q <= d {
        if d % q == 0 {
            phi -= phi / q;
            while d % q == 0 {
                d /= q;
            }
        }
        q += 1;
    }
    if d > 1 {
        phi -= phi / d;
    }
    phi
}

/// num/den rounded to f64 via a 64-bit scaled quotient (works for huge exact
/// products where a naive to_f64 of either side would overflow).
fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    let scaled: BigInt = (num << 64u32) / den;
    scaled.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
}

/// phi(d)/d * prod over primes l <= trunc, l not dividing d, of (1 - 2/l^2),
/// accumulated exactly and rounded once at output.
pub fn predicted_density_one_minus_xd(d: u32, trunc: u64) -> f64 {
    let mut num = BigInt::from(euler_totient(d as u64));
    let mut den = BigInt::from(d);
    for &l in arith::primes_up_to(trunc).iter() {
        if d as u64 % l == 0 {
            continue;
        }
        num *= BigInt::from(l * l - 2);
        den *= BigInt::from(l * l);
    }
    ratio_to_f64(&num, &den)
}

/// The Chebyshev prediction: the even-d case matches the 1-x^d shape; for odd
/// d the prime 2 contributes 3/4 (a-2 and a+2 collide mod 4).
pub fn predicted_density_cheby(d: u32, trunc: u64) -> f64 {
    let mut num = BigInt::from(euler_totient(d as u64));
    let mut den = BigInt::from(d);
    if d % 2 == 1 {
        num *= BigInt::from(3);
        den *= BigInt::from(4);
    }
    for &l in arith::primes_up_to(trunc).iter() {
        if d as u64 % l == 0 || (d % 2 == 1 && l == 2) {
            continue;
        }
        num *= BigInt::from(l * l - 2);
        den *= BigInt::from(l * l);
    }
    ratio_to_f64(&num, &den)
}

pub fn predicted_density(family: &Family, trunc: u64) -> Option<f64> {
    match family {
        Family::OneMinusXd { d } => Some(predicted_density_one_minus_xd(*d, trunc)),
        Family::Chebyshev { d } => Some(predicted_density_cheby(*d, trunc)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Sieve fast path
// ---------------------------------------------------------------------------

/// A squarefreeness condition on the value a - shift, tested away from the
/// excluded primes, plus congruence conditions mod p^2 per prime p | d.
struct SieveSpec {
    /// (label, shift): the value is a - shift; zero fails outright.
    value_conds: Vec<(String, i64)>,
    excluded: Vec<u64>,
    /// (label, p, pass-table indexed by a mod p^2).
    congruences: Vec<(String, u64, Vec<bool>)>,
}

fn one_minus_xd_spec(d: u32) -> SieveSpec {
    let mut congruences = Vec::new();
    for p in families::prime_divisors_u64(d as u64) {
        let p2 = p * p;
        let pb = BigInt::from(p);
        let p2b = BigInt::from(p2);
        let table: Vec<bool> = (0..p2)
            .map(|ra| {
                let v = BigInt::from((1i64 - ra as i64).rem_euclid(p2 as i64));
                if (&v % &pb).is_zero() {
                    true
                } else {
                    !v.modpow(&(&pb - 1), &p2b).is_one()
                }
            })
            .collect();
        congruences.push((format!("(1 - a)^(p-1) != 1 mod {}^2", p), p, table));
    }
    SieveSpec {
        value_conds: vec![("a squarefree".into(), 0), ("1 - a squarefree".into(), 1)],
        excluded: vec![],
        congruences,
    }
}

fn cheby_spec(d: u32) -> SieveSpec {
    let dps = families::prime_divisors_u64(d as u64);
    let mut congruences = Vec::new();
    for &p in &dps {
        let p2 = p * p;
        let p2b = BigInt::from(p2);
        let table: Vec<bool> = (0..p2)
            .map(|ra| {
                let a = BigInt::from(ra);
                families::cheby_eval_mod(p, &a, &p2b) != a
            })
            .collect();
        congruences.push((format!("T_{}(a) != a mod {}^2", p, p), p, table));
    }
    SieveSpec {
        value_conds: vec![
            ("a - 2 squarefree away from p | d".into(), 2),
            ("a + 2 squarefree away from p | d".into(), -2),
        ],
        excluded: dps,
        congruences,
    }
}

/// Scan one chunk [lo, hi] with the sieve: returns (cond_index, witness) per
/// point, None for pass. The witness prime is the smallest q with q^2 | value
/// (0 encodes "the value itself is zero").
fn sieve_chunk(spec: &SieveSpec, lo: i64, hi: i64, primes: &[u64]) -> Vec<Option<(usize, u64)>> {
    let len = (hi - lo + 1) as usize;
    let mut marks: Vec<Option<(usize, u64)>> = vec![None; len];
    for (ci, (_, shift)) in spec.value_conds.iter().enumerate() {
        // value a - shift = 0
        let zero_at = *shift;
        if zero_at >= lo && zero_at <= hi {
            let idx = (zero_at - lo) as usize;
            if marks[idx].is_none() {
                marks[idx] = Some((ci, 0));
            }
        }
        for &q in primes {
            if spec.excluded.contains(&q) {
                continue;
            }
            let q2 = (q as i64).checked_mul(q as i64).expect("q^2 fits");
            // positions with a = shift mod q^2
            let first = lo + (shift - lo).rem_euclid(q2);
            let mut x = first;
            while x <= hi {
                let idx = (x - lo) as usize;
                if marks[idx].is_none() && x != zero_at {
                    marks[idx] = Some((ci, q));
                }
                x += q2;
            }
        }
    }
    let base = spec.value_conds.len();
    for (k, (_, p, table)) in spec.congruences.iter().enumerate() {
        let p2 = (p * p) as i64;
        for (idx, mark) in marks.iter_mut().enumerate() {
            if mark.is_some() {
                continue;
            }
            let a = lo + idx as i64;
            if !table[a.rem_euclid(p2) as usize] {
                *mark = Some((base + k, *p));
            }
        }
    }
    marks
}

fn spec_labels(spec: &SieveSpec) -> Vec<String> {
    spec.value_conds
        .iter()
        .map(|(l, _)| l.clone())
        .chain(spec.congruences.iter().map(|(l, _, _)| l.clone()))
        .collect()
}

fn chunk_ranges(lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = (start + CHUNK - 1).min(hi);
        out.push((start, end));
        start = end + 1;
    }
    out
}

fn rows_from_marks(lo: i64, marks: &[Option<(usize, u64)>], labels: &[String]) -> Vec<ScanRow> {
    marks
        .iter()
        .enumerate()
        .map(|(idx, m)| match m {
            None => ScanRow {
                a: lo + idx as i64,
                verdict: ScanVerdict::Pass,
                first_failing_condition: None,
                witness_prime: None,
            },
            Some((ci, q)) => ScanRow {
                a: lo + idx as i64,
                verdict: ScanVerdict::Fail,
                first_failing_condition: Some(labels[*ci].clone()),
                witness_prime: if *q == 0 { None } else { Some(*q) },
            },
        })
        .collect()
}

fn slow_chunk(family: &Family, lo: i64, hi: i64, budget: &arith::FactorBudget) -> Vec<ScanRow> {
    (lo..=hi)
        .map(|a| {
            let point = BigInt::from(a);
            match family.check_point(&point, budget) {
                None => ScanRow {
                    a,
                    verdict: ScanVerdict::Conditional,
                    first_failing_condition: Some("parameter outside family domain".into()),
                    witness_prime: None,
                },
                Some(v) => match v.overall {
                    FamilyOutcome::Pass => ScanRow {
                        a,
                        verdict: ScanVerdict::Pass,
                        first_failing_condition: None,
                        witness_prime: None,
                    },
                    FamilyOutcome::Conditional => ScanRow {
                        a,
                        verdict: ScanVerdict::Conditional,
                        first_failing_condition: v
                            .conditions
                            .iter()
                            .find(|c| c.status == CondStatus::Unknown)
                            .map(|c| c.label.clone()),
                        witness_prime: None,
                    },
                    FamilyOutcome::Fail => {
                        let cond = v.first_failure().expect("fail has a failing condition");
                        // smallest q with q^2 dividing the witness value, when
                        // the failure is a squarefreeness condition
                        let witness_prime = cond.witness.as_ref().and_then(|w| {
                            w.parse::<BigInt>().ok().and_then(|v| smallest_square_prime(&v))
                        });
                        ScanRow {
                            a,
                            verdict: ScanVerdict::Fail,
                            first_failing_condition: Some(cond.label.clone()),
                            witness_prime,
                        }
                    }
                },
            }
        })
        .collect()
}

fn smallest_square_prime(v: &BigInt) -> Option<u64> {
    if v.is_zero() {
        return None;
    }
    let m = v.abs();
    for &q in arith::small_primes() {
        let q2 = BigInt::from(q) * BigInt::from(q);
        if q2 > m {
            return None;
        }
        if (&m % &q2).is_zero() {
            return Some(q);
        }
    }
    None
}

/// Scan the family over [lo, hi], feeding ordered chunks of rows to `sink`,
/// and return the aggregated report. Deterministic for any worker count.
pub fn scan_with_rows(
    family: &Family,
    lo: i64,
    hi: i64,
    workers: usize,
    trunc: u64,
    mut sink: Option<&mut dyn FnMut(&[ScanRow])>,
) -> Result<DensityReport> {
    if hi < lo {
        return Err(Error::BadRange);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let spec = match family {
        Family::OneMinusXd { d } => Some(one_minus_xd_spec(*d)),
        Family::Chebyshev { d } => Some(cheby_spec(*d)),
        _ => None,
    };
    let budget = arith::FactorBudget::default();
    let maxval = lo.unsigned_abs().max(hi.unsigned_abs()) + 2;
    let primes = arith::primes_up_to((maxval as f64).sqrt() as u64 + 1);
    let labels = spec.as_ref().map(spec_labels).unwrap_or_default();

    let mut pass = 0u64;
    let mut fail = 0u64;
    let mut conditional = 0u64;
    let ranges = chunk_ranges(lo, hi);
    // batches sized by worker count keep memory bounded while the serial
    // emission preserves row order
    for batch in ranges.chunks(workers.max(1) * 4) {
        let chunk_rows: Vec<Vec<ScanRow>> = pool.install(|| {
            batch
                .par_iter()
                .map(|&(a, b)| match &spec {
                    Some(spec) => {
                        let marks = sieve_chunk(spec, a, b, &primes);
                        rows_from_marks(a, &marks, &labels)
                    }
                    None => slow_chunk(family, a, b, &budget),
                })
                .collect()
        });
        for rows in &chunk_rows {
            for r in rows {
                match r.verdict {
                    ScanVerdict::Pass => pass += 1,
                    ScanVerdict::Fail => fail += 1,
                    ScanVerdict::Conditional => conditional += 1,
                }
            }
            if let Some(s) = sink.as_deref_mut() {
                s(rows);
            }
        }
    }

    let total = (hi - lo + 1) as f64;
    let predicted = predicted_density(family, trunc);
    let empirical = pass as f64 / total;
    let params = match family {
        Family::OneMinusXd { d } | Family::Chebyshev { d } => {
            vec![("d".to_string(), d.to_string())]
        }
        Family::Unicritical { u, d, b } => vec![
            ("u".to_string(), u.to_string()),
            ("d".to_string(), d.to_string()),
            ("b".to_string(), b.to_string()),
        ],
        Family::RadicalTower { d } | Family::RealTower { d } => {
            vec![("d".to_string(), d.to_string())]
        }
    };
    Ok(DensityReport {
        family: family.name().to_string(),
        params,
        range: (lo, hi),
        pass,
        fail,
        conditional,
        empirical,
        predicted,
        truncation_prime: trunc,
        deviation: predicted.map(|p| (empirical - p).abs()),
    })
}

pub fn scan_report(
    family: &Family,
    lo: i64,
    hi: i64,
    workers: usize,
    trunc: u64,
) -> Result<DensityReport> {
    scan_with_rows(family, lo, hi, workers, trunc, None)
}
