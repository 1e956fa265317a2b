//! Closed-form checkers for the polynomial families with known monogenicity
//! criteria: unicritical u*x^d + b, 1 - x^d, Chebyshev T_d, and the radical /
//! totally-real towers reached through the reciprocal transform. Each check
//! reduces to integer congruence and squarefreeness conditions.

use crate::arith::{self, FactorBudget};
use crate::intpoly::{IntPoly, RatScalar};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::sync::LazyLock;

const CHEB_CACHE_LIMIT: usize = 128;

/// T_0..T_128 and U_0..U_128, built once; larger indices are computed fresh.
static CHEB_T: LazyLock<Vec<IntPoly>> = LazyLock::new(|| build_cheb(true, CHEB_CACHE_LIMIT));
static CHEB_U: LazyLock<Vec<IntPoly>> = LazyLock::new(|| build_cheb(false, CHEB_CACHE_LIMIT));

fn build_cheb(first_kind: bool, up_to: usize) -> Vec<IntPoly> {
    let t0 = if first_kind {
        IntPoly::constant(BigInt::from(2))
    } else {
        IntPoly::one()
    };
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(t0);
    if up_to >= 1 {
        out.push(IntPoly::x());
    }
    let x = IntPoly::x();
    for k in 2..=up_to {
        let next = x.mul(&out[k - 1]).sub(&out[k - 2]);
        out.push(next);
    }
    out
}

/// Normalized Chebyshev polynomial of the first kind (T_0 = 2, T_1 = x,
/// T_{d+1} = x T_d - T_{d-1}).
pub fn chebyshev_t(d: usize) -> IntPoly {
    if d <= CHEB_CACHE_LIMIT {
        return CHEB_T[d].clone();
    }
    let mut a = CHEB_T[CHEB_CACHE_LIMIT - 1].clone();
    let mut b = CHEB_T[CHEB_CACHE_LIMIT].clone();
    let x = IntPoly::x();
    for _ in CHEB_CACHE_LIMIT..d {
        let next = x.mul(&b).sub(&a);
        a = b;
        b = next;
    }
    b
}

/// Normalized Chebyshev polynomial of the second kind (U_0 = 1, U_1 = x).
pub fn chebyshev_u(d: usize) -> IntPoly {
    if d <= CHEB_CACHE_LIMIT {
        return CHEB_U[d].clone();
    }
    let mut a = CHEB_U[CHEB_CACHE_LIMIT - 1].clone();
    let mut b = CHEB_U[CHEB_CACHE_LIMIT].clone();
    let x = IntPoly::x();
    for _ in CHEB_CACHE_LIMIT..d {
        let next = x.mul(&b).sub(&a);
        a = b;
        b = next;
    }
    b
}

/// T_d together with U_{d-1} (so that T_d' = d U_{d-1}).
#[derive(Debug, Clone)]
pub struct ChebyshevPair {
    pub d: usize,
    pub t: IntPoly,
    pub u_prev: IntPoly,
}

pub fn cheby(d: usize) -> ChebyshevPair {
    assert!(d >= 1);
    ChebyshevPair {
        d,
        t: chebyshev_t(d),
        u_prev: chebyshev_u(d - 1),
    }
}

/// Is f the normalized Chebyshev polynomial of its degree?
pub fn as_chebyshev(f: &IntPoly) -> Option<usize> {
    let d = f.degree()?;
    if d >= 2 && *f == chebyshev_t(d) {
        Some(d)
    } else {
        None
    }
}

/// T_d(x) mod m by the value recurrence: O(d) ring operations, no polynomial
/// construction. This is what the density scans lean on.
pub fn cheby_eval_mod(d: u64, x: &BigInt, m: &BigInt) -> BigInt {
    let x = x.mod_floor(m);
    if d == 0 {
        return BigInt::from(2).mod_floor(m);
    }
    let mut prev = BigInt::from(2).mod_floor(m);
    let mut cur = x.clone();
    for _ in 1..d {
        let next = (&x * &cur - &prev).mod_floor(m);
        prev = cur;
        cur = next;
    }
    cur
}

/// Is x a p-th power modulo p^2? The nonzero p-th powers in Z/p^2 are exactly
/// the (p-1)-torsion of the unit group, so for p not dividing x this is
/// x^(p-1) = 1 mod p^2; v_p(x) = 1 is never a p-th power, v_p(x) >= 2 is 0.
pub fn pth_power_mod_p2(x: &RatScalar, p: &BigInt) -> Result<bool> {
    let p2 = p * p;
    let den = x.denom();
    if den.gcd(p) != BigInt::one() {
        return Err(Error::NonInvertibleDenominator);
    }
    let inv = arith::mod_inverse(den, &p2).ok_or(Error::NonInvertibleDenominator)?;
    let v = (x.numer() * inv).mod_floor(&p2);
    if v.is_zero() {
        return Ok(true);
    }
    if (&v % p).is_zero() {
        return Ok(false);
    }
    let e: BigInt = p - 1;
    Ok(v.modpow(&e, &p2).is_one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CondStatus {
    Pass,
    Fail,
    /// The factorization budget ran out before the condition was settled.
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCondition {
    pub label: String,
    pub status: CondStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyOutcome {
    Pass,
    Fail,
    Conditional,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyVerdict {
    pub family: &'static str,
    pub params: Vec<(String, String)>,
    pub conditions: Vec<FamilyCondition>,
    pub overall: FamilyOutcome,
    /// Whether a Pass certifies every iterate (finite critical orbit data) or
    /// only the bounded range that was actually checked.
    pub covers_all_n: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_prediction: Option<f64>,
}

impl FamilyVerdict {
    fn assemble(
        family: &'static str,
        params: Vec<(String, String)>,
        conditions: Vec<FamilyCondition>,
        covers_all_n: bool,
    ) -> Self {
        let overall = if conditions.iter().any(|c| c.status == CondStatus::Fail) {
            FamilyOutcome::Fail
        } else if conditions.iter().any(|c| c.status == CondStatus::Unknown) {
            FamilyOutcome::Conditional
        } else {
            FamilyOutcome::Pass
        };
        FamilyVerdict {
            family,
            params,
            conditions,
            overall,
            covers_all_n,
            density_prediction: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == FamilyOutcome::Pass
    }

    /// First failing condition, if any (deterministic: condition order).
    pub fn first_failure(&self) -> Option<&FamilyCondition> {
        self.conditions.iter().find(|c| c.status == CondStatus::Fail)
    }
}

fn sf_status(v: Option<bool>) -> CondStatus {
    match v {
        Some(true) => CondStatus::Pass,
        Some(false) => CondStatus::Fail,
        None => CondStatus::Unknown,
    }
}

pub fn prime_divisors_u64(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= d {
        if d % q == 0 {
            out.push(q);
            while d % q == 0 {
                d /= q;
            }
        }
        q += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    AllN,
    UpTo(u32),
}

/// Forward orbit of 0 under u*x^d + b, for n >= 1. Finite when a repeat occurs
/// within the escape bound, otherwise truncated at `cap` values.
fn unicritical_orbit(u: i8, d: u32, b: &BigInt, cap: usize) -> (Vec<BigInt>, bool) {
    let bound = BigInt::from(2) + b.abs();
    let mut values: Vec<BigInt> = Vec::new();
    let mut v = b.clone(); // f(0) = b
    loop {
        if values.contains(&v) {
            return (values, true);
        }
        if v.abs() > bound {
            values.push(v);
            return (values, false);
        }
        values.push(v.clone());
        if values.len() >= cap {
            return (values, false);
        }
        let mut next = v.pow(d);
        if u < 0 {
            next = -next;
        }
        v = next + b;
    }
}

/// Conditions for (u*x^d + b, a) to be dynamically monogenic: every forward
/// orbit value omega of the critical point 0 has omega - a squarefree away
/// from p | d, and (a-b)/u is not a p-th power mod p^2 for each p | d.
pub fn unicritical_check(
    u: i8,
    d: u32,
    b: &BigInt,
    a: &BigInt,
    mode: CheckMode,
    budget: &FactorBudget,
) -> FamilyVerdict {
    assert!(u == 1 || u == -1);
    assert!(d >= 2);
    let cap = match mode {
        CheckMode::AllN => 64,
        CheckMode::UpTo(n) => n.max(1) as usize,
    };
    let (orbit, pcf) = unicritical_orbit(u, d, b, cap);
    let dps: Vec<BigInt> = prime_divisors_u64(d as u64)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let mut conditions = Vec::new();
    for (k, omega) in orbit.iter().enumerate() {
        let val = omega - a;
        let status = if val.is_zero() {
            CondStatus::Fail
        } else {
            sf_status(arith::is_squarefree_away_from(&val, &dps, budget))
        };
        conditions.push(FamilyCondition {
            label: format!("f^{}(0) - a squarefree away from p | d", k + 1),
            status,
            witness: Some(val.to_string()),
        });
    }
    let ratio = if u == 1 { a - b } else { b - a };
    for p in &dps {
        let status = match pth_power_mod_p2(&RatScalar::from(ratio.clone()), p) {
            Ok(true) => CondStatus::Fail,
            Ok(false) => CondStatus::Pass,
            Err(_) => CondStatus::Unknown,
        };
        conditions.push(FamilyCondition {
            label: format!("(a - b)/u not a p-th power mod {}^2", p),
            status,
            witness: Some(ratio.to_string()),
        });
    }
    FamilyVerdict::assemble(
        "unicritical",
        vec![
            ("u".into(), u.to_string()),
            ("d".into(), d.to_string()),
            ("b".into(), b.to_string()),
            ("a".into(), a.to_string()),
        ],
        conditions,
        pcf,
    )
}

/// f = 1 - x^d: pass iff a and 1-a are squarefree and (1-a)^(p-1) != 1 mod p^2
/// for every prime p | d. A pass certifies dynamical monogenicity outright.
pub fn one_minus_xd_check(d: u32, a: &BigInt, budget: &FactorBudget) -> FamilyVerdict {
    assert!(d >= 2);
    let one_minus_a: BigInt = BigInt::one() - a;
    let mut conditions = vec![
        FamilyCondition {
            label: "a squarefree".into(),
            status: sf_status(arith::is_squarefree(a, budget)),
            witness: Some(a.to_string()),
        },
        FamilyCondition {
            label: "1 - a squarefree".into(),
            status: sf_status(arith::is_squarefree(&one_minus_a, budget)),
            witness: Some(one_minus_a.to_string()),
        },
    ];
    for p in prime_divisors_u64(d as u64) {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        let v = one_minus_a.mod_floor(&p2);
        let pass = if (&v % &pb).is_zero() {
            // divisible by p: the (p-1)-st power is 0 mod p, never 1
            true
        } else {
            !v.modpow(&(&pb - 1), &p2).is_one()
        };
        conditions.push(FamilyCondition {
            label: format!("(1 - a)^(p-1) != 1 mod {}^2", p),
            status: if pass { CondStatus::Pass } else { CondStatus::Fail },
            witness: Some(v.to_string()),
        });
    }
    FamilyVerdict::assemble(
        "one-minus-xd",
        vec![("d".into(), d.to_string()), ("a".into(), a.to_string())],
        conditions,
        true,
    )
}

/// (T_d, a): pass iff a-2 and a+2 are squarefree away from p | d and
/// T_p(a) != a mod p^2 for every prime p | d.
pub fn cheby_check(d: u32, a: &BigInt, budget: &FactorBudget) -> FamilyVerdict {
    assert!(d >= 2);
    let dps: Vec<BigInt> = prime_divisors_u64(d as u64)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let mut conditions = Vec::new();
    for (label, val) in [
        ("a - 2 squarefree away from p | d", a - BigInt::from(2)),
        ("a + 2 squarefree away from p | d", a + BigInt::from(2)),
    ] {
        let status = if val.is_zero() {
            CondStatus::Fail
        } else {
            sf_status(arith::is_squarefree_away_from(&val, &dps, budget))
        };
        conditions.push(FamilyCondition {
            label: label.into(),
            status,
            witness: Some(val.to_string()),
        });
    }
    for p in prime_divisors_u64(d as u64) {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        let tp = cheby_eval_mod(p, a, &p2);
        let pass = tp != a.mod_floor(&p2);
        conditions.push(FamilyCondition {
            label: format!("T_{}(a) != a mod {}^2", p, p),
            status: if pass { CondStatus::Pass } else { CondStatus::Fail },
            witness: Some(format!("T_p(a) = {} mod p^2", tp)),
        });
    }
    FamilyVerdict::assemble(
        "chebyshev",
        vec![("d".into(), d.to_string()), ("a".into(), a.to_string())],
        conditions,
        true,
    )
}

/// Which of the three (d, a) shapes makes T_d - a generate a totally real
/// monogenic field: 1 <=> a=1, d=2^b 3^c; 2 <=> a=-1, d=3^c; 3 <=> a=0, d=2^b.
pub fn totally_real_classify(d: u32, a: &BigInt) -> Option<u8> {
    assert!(d >= 2);
    let strip = |mut n: u32, q: u32| {
        while n % q == 0 {
            n /= q;
        }
        n
    };
    if a.is_one() && strip(strip(d, 2), 3) == 1 {
        return Some(1);
    }
    if *a == BigInt::from(-1) && strip(d, 3) == 1 && d % 3 == 0 {
        return Some(2);
    }
    if a.is_zero() && strip(d, 2) == 1 && d % 2 == 0 {
        return Some(3);
    }
    None
}

/// Totally real tower at the non-integral value 2 + 1/b, b < -1: pass iff
/// b and 1+4b are squarefree and T_p(2 + 1/b) != 2 + 1/b mod p^2 for the
/// prime divisors p of d coprime to b.
pub fn real_mono2_check(d: u32, b: &BigInt, budget: &FactorBudget) -> FamilyVerdict {
    assert!(*b < BigInt::from(-1));
    let one_plus_4b: BigInt = BigInt::one() + b * BigInt::from(4);
    let mut conditions = vec![
        FamilyCondition {
            label: "b squarefree".into(),
            status: sf_status(arith::is_squarefree(b, budget)),
            witness: Some(b.to_string()),
        },
        FamilyCondition {
            label: "1 + 4b squarefree".into(),
            status: sf_status(arith::is_squarefree(&one_plus_4b, budget)),
            witness: Some(one_plus_4b.to_string()),
        },
    ];
    for p in prime_divisors_u64(d as u64) {
        let pb = BigInt::from(p);
        if (b % &pb).is_zero() {
            continue; // the condition only quantifies over p not dividing b
        }
        let p2 = &pb * &pb;
        let inv = arith::mod_inverse(b, &p2).expect("p does not divide b");
        let x = (BigInt::from(2) + &inv).mod_floor(&p2);
        let tp = cheby_eval_mod(p, &x, &p2);
        let pass = tp != x;
        conditions.push(FamilyCondition {
            label: format!("T_{}(2 + 1/b) != 2 + 1/b mod {}^2", p, p),
            status: if pass { CondStatus::Pass } else { CondStatus::Fail },
            witness: Some(format!("2 + 1/b = {}, T_p = {} mod p^2", x, tp)),
        });
    }
    FamilyVerdict::assemble(
        "real-tower",
        vec![("d".into(), d.to_string()), ("b".into(), b.to_string())],
        conditions,
        true,
    )
}

/// Radical tower via 1 - x^d at the value 1/b, b >= 2: pass iff b and b-1 are
/// squarefree and (1 - 1/b)^(p-1) != 1 mod p^2 for p | d, p not dividing b.
pub fn rad_fields_check(d: u32, b: &BigInt, budget: &FactorBudget) -> FamilyVerdict {
    assert!(*b >= BigInt::from(2));
    let b_minus_1: BigInt = b - BigInt::one();
    let mut conditions = vec![
        FamilyCondition {
            label: "b squarefree".into(),
            status: sf_status(arith::is_squarefree(b, budget)),
            witness: Some(b.to_string()),
        },
        FamilyCondition {
            label: "b - 1 squarefree".into(),
            status: sf_status(arith::is_squarefree(&b_minus_1, budget)),
            witness: Some(b_minus_1.to_string()),
        },
    ];
    for p in prime_divisors_u64(d as u64) {
        let pb = BigInt::from(p);
        if (b % &pb).is_zero() {
            continue;
        }
        let p2 = &pb * &pb;
        let inv = arith::mod_inverse(b, &p2).expect("p does not divide b");
        let x = (BigInt::one() - &inv).mod_floor(&p2);
        let pass = if (&x % &pb).is_zero() {
            true
        } else {
            !x.modpow(&(&pb - 1), &p2).is_one()
        };
        conditions.push(FamilyCondition {
            label: format!("(1 - 1/b)^(p-1) != 1 mod {}^2", p),
            status: if pass { CondStatus::Pass } else { CondStatus::Fail },
            witness: Some(x.to_string()),
        });
    }
    FamilyVerdict::assemble(
        "radical-tower",
        vec![("d".into(), d.to_string()), ("b".into(), b.to_string())],
        conditions,
        true,
    )
}

/// All non-leading coefficients divisible by p, constant term not by p^2,
/// leading coefficient not by p.
pub fn is_eisenstein(f: &IntPoly, p: &BigInt) -> bool {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if (f.leading_coeff() % p).is_zero() {
        return false;
    }
    for i in 0..d {
        if !(f.coeff(i) % p).is_zero() {
            return false;
        }
    }
    !(f.constant_term() % (p * p)).is_zero()
}

#[derive(Debug, Clone, Serialize)]
pub struct EisenReport {
    pub eisenstein: bool,
    /// (n, f^n still p-Eisenstein) for the iterates that fit the degree guard.
    pub iterates: Vec<(u32, bool)>,
}

/// Check p-Eisenstein-ness of f and (when it holds) of f^2 and f^3.
pub fn eisen_checks(f: &IntPoly, p: &BigInt, max_degree: usize) -> Result<EisenReport> {
    if !f.has_unit_lc() {
        return Err(Error::BadLeadingCoeff);
    }
    let eisenstein = is_eisenstein(f, p);
    let mut iterates = Vec::new();
    if eisenstein {
        for n in 2..=3u32 {
            match f.iterate(n, max_degree) {
                Ok(fi) => iterates.push((n, is_eisenstein(&fi, p))),
                Err(_) => break,
            }
        }
    }
    Ok(EisenReport {
        eisenstein,
        iterates,
    })
}

/// Minimal polynomial of 1/alpha when the constant term is a unit: the
/// sign-normalized coefficient reversal (Z[alpha] = Z[1/alpha]).
pub fn inverse_generator(f: &IntPoly) -> Result<IntPoly> {
    let c0 = f.constant_term();
    if !(c0.is_one() || c0 == BigInt::from(-1)) {
        return Err(Error::NonUnitConstantTerm);
    }
    let rev = f.reverse();
    if rev.leading_coeff().is_negative() {
        Ok(rev.neg())
    } else {
        Ok(rev)
    }
}

/// Number of distinct real roots of a squarefree polynomial, by an exact
/// integer Sturm sequence (pseudo-remainders with sign-corrected scaling).
pub fn sturm_real_roots(f: &IntPoly) -> usize {
    if f.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    debug_assert_eq!(
        f.gcd_primitive(&f.derivative()).degree(),
        Some(0),
        "sturm needs squarefree input"
    );
    let mut seq: Vec<IntPoly> = vec![f.primitive_part(), f.derivative().primitive_part()];
    loop {
        let a = &seq[seq.len() - 2];
        let b = &seq[seq.len() - 1];
        if b.degree().map_or(true, |d| d == 0) {
            break;
        }
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        // pseudo_rem scales by lc(b)^(delta+1); keep the Sturm sign convention
        let scale_negative = b.leading_coeff().is_negative() && (delta + 1) % 2 == 1;
        let next = if scale_negative { r } else { r.neg() };
        seq.push(next.div_scalar_exact(&next.content()));
    }
    let signs_at = |neg_inf: bool| -> Vec<i8> {
        seq.iter()
            .map(|q| {
                let lc = q.leading_coeff();
                let mut s = if lc.is_positive() { 1i8 } else { -1 };
                if neg_inf && q.degree().unwrap_or(0) % 2 == 1 {
                    s = -s;
                }
                s
            })
            .collect()
    };
    let changes = |signs: &[i8]| signs.windows(2).filter(|w| w[0] != w[1]).count();
    changes(&signs_at(true)) - changes(&signs_at(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn chebyshev_construction() {
        assert_eq!(chebyshev_t(2), p("x^2-2"));
        assert_eq!(chebyshev_t(3), p("x^3-3*x"));
        assert_eq!(chebyshev_t(4), p("x^4-4*x^2+2"));
        assert_eq!(chebyshev_u(1), p("x"));
        assert_eq!(chebyshev_u(2), p("x^2-1"));
        assert_eq!(as_chebyshev(&p("x^4-4*x^2+2")), Some(4));
        assert_eq!(as_chebyshev(&p("x^4-4*x^2+1")), None);
    }

    #[test]
    fn chebyshev_identities_small() {
        for d in 2..=16usize {
            let pair = cheby(d);
            // T_d^2 = 4 + (x^2-4) U_{d-1}^2
            let lhs = pair.t.mul(&pair.t);
            let rhs = p("x^2-4")
                .mul(&pair.u_prev.mul(&pair.u_prev))
                .add(&IntPoly::constant(big(4)));
            assert_eq!(lhs, rhs, "quadratic relation at d={d}");
            // T_d' = d U_{d-1}
            assert_eq!(
                pair.t.derivative(),
                pair.u_prev.mul_scalar(&big(d as i64)),
                "derivative relation at d={d}"
            );
            // endpoint values
            assert_eq!(pair.t.eval(&big(2)), big(2));
            let want = if d % 2 == 0 { big(2) } else { big(-2) };
            assert_eq!(pair.t.eval(&big(-2)), want);
        }
        // commutation on a few pairs
        for (d, e) in [(2usize, 3usize), (3, 4), (2, 8), (4, 4)] {
            assert_eq!(
                chebyshev_t(d).compose(&chebyshev_t(e)),
                chebyshev_t(d * e),
                "T_{d} o T_{e}"
            );
        }
    }

    #[test]
    fn cheby_eval_mod_matches_poly() {
        for d in 1..=12u64 {
            for x in -6i64..=6 {
                for m in [4i64, 9, 25, 49] {
                    let direct = chebyshev_t(d as usize).eval(&big(x)).mod_floor(&big(m));
                    assert_eq!(cheby_eval_mod(d, &big(x), &big(m)), direct);
                }
            }
        }
    }

    #[test]
    fn pth_power_examples() {
        let two = big(2);
        assert!(!pth_power_mod_p2(&RatScalar::from(big(2)), &two).unwrap());
        assert!(pth_power_mod_p2(&RatScalar::from(big(1)), &big(7)).unwrap());
        assert!(!pth_power_mod_p2(&RatScalar::from(big(-1)), &two).unwrap());
        assert!(pth_power_mod_p2(&RatScalar::from(big(0)), &two).unwrap());
        assert!(matches!(
            pth_power_mod_p2(&RatScalar::new(big(1), big(2)), &two),
            Err(Error::NonInvertibleDenominator)
        ));
    }

    #[test]
    fn pth_power_matches_enumeration() {
        for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let pb = big(q as i64);
            let p2 = (q * q) as i64;
            let mut powers = std::collections::HashSet::new();
            for c in 0..p2 {
                powers.insert(BigInt::from(c).modpow(&pb, &big(p2)));
            }
            for x in 0..p2 {
                let got = pth_power_mod_p2(&RatScalar::from(big(x)), &pb).unwrap();
                assert_eq!(got, powers.contains(&big(x)), "x={x}, p={q}");
            }
        }
    }

    #[test]
    fn unicritical_examples() {
        let b = FactorBudget::default();
        // (-1, 2, 1, 5): orbit {1, 0}; 1-5=-4 fails squarefreeness
        let v = unicritical_check(-1, 2, &big(1), &big(5), CheckMode::AllN, &b);
        assert_eq!(v.overall, FamilyOutcome::Fail);
        // (-1, 2, 1, 2) passes
        let v = unicritical_check(-1, 2, &big(1), &big(2), CheckMode::AllN, &b);
        assert!(v.passed() && v.covers_all_n);
        // (1, 2, 0, 2): x^2, orbit {0}; -2 squarefree, 2 not a square mod 4
        let v = unicritical_check(1, 2, &big(0), &big(2), CheckMode::AllN, &b);
        assert!(v.passed());
        // (1, 2, 0, -1) recovers the 2-power cyclotomic case
        let v = unicritical_check(1, 2, &big(0), &big(-1), CheckMode::AllN, &b);
        assert!(v.passed());
        // (1, 2, 0, 4): 4 is 0 mod 4, a square
        let v = unicritical_check(1, 2, &big(0), &big(4), CheckMode::AllN, &b);
        assert_eq!(v.overall, FamilyOutcome::Fail);
        // non-PCF example: x^2 + 1 has escaping critical orbit
        let v = unicritical_check(1, 2, &big(1), &big(7), CheckMode::UpTo(3), &b);
        assert!(!v.covers_all_n);
    }

    #[test]
    fn one_minus_xd_examples() {
        let b = FactorBudget::default();
        assert!(one_minus_xd_check(2, &big(2), &b).passed());
        assert_eq!(
            one_minus_xd_check(2, &big(5), &b).overall,
            FamilyOutcome::Fail
        );
        assert_eq!(
            one_minus_xd_check(3, &big(1), &b).overall,
            FamilyOutcome::Fail
        );
        // agreement with the unicritical specialization u=-1, b=1
        for d in [2u32, 3, 4, 6] {
            for a in -30i64..=30 {
                let lhs = one_minus_xd_check(d, &big(a), &b).passed();
                let rhs =
                    unicritical_check(-1, d, &big(1), &big(a), CheckMode::AllN, &b).passed();
                assert_eq!(lhs, rhs, "d={d}, a={a}");
            }
        }
    }

    #[test]
    fn cheby_check_examples() {
        let b = FactorBudget::default();
        assert!(cheby_check(2, &big(1), &b).passed());
        assert!(cheby_check(2, &big(0), &b).passed());
        // a = 2 hits the postcritical point: a-2 = 0 is not squarefree
        assert_eq!(cheby_check(2, &big(2), &b).overall, FamilyOutcome::Fail);
        // a = 3: T_2(3) = 7 = 3 mod 4, condition ii fails
        assert_eq!(cheby_check(2, &big(3), &b).overall, FamilyOutcome::Fail);
    }

    #[test]
    fn totally_real_cases() {
        assert_eq!(totally_real_classify(6, &big(1)), Some(1));
        assert_eq!(totally_real_classify(9, &big(-1)), Some(2));
        assert_eq!(totally_real_classify(8, &big(1)), Some(1));
        assert_eq!(totally_real_classify(8, &big(-1)), None);
        assert_eq!(totally_real_classify(4, &big(0)), Some(3));
        assert_eq!(totally_real_classify(12, &big(0)), None);
        assert_eq!(totally_real_classify(5, &big(1)), None);
        // d = 2 extension used by the CLI
        assert_eq!(totally_real_classify(2, &big(0)), Some(3));
        assert_eq!(totally_real_classify(2, &big(1)), Some(1));
    }

    #[test]
    fn real_mono2_examples() {
        let bud = FactorBudget::default();
        assert_eq!(
            real_mono2_check(2, &big(-3), &bud).overall,
            FamilyOutcome::Fail
        );
        assert!(real_mono2_check(2, &big(-2), &bud).passed());
        assert_eq!(
            real_mono2_check(3, &big(-5), &bud).overall,
            FamilyOutcome::Fail
        );
    }

    #[test]
    fn rad_fields_examples() {
        let bud = FactorBudget::default();
        assert!(rad_fields_check(2, &big(3), &bud).passed());
        assert_eq!(
            rad_fields_check(2, &big(4), &bud).overall,
            FamilyOutcome::Fail
        );
        assert!(rad_fields_check(3, &big(2), &bud).passed());
    }

    #[test]
    fn eisenstein_cases() {
        let two = big(2);
        assert!(is_eisenstein(&p("x^2-2"), &two));
        assert!(is_eisenstein(&p("x^4-4*x^2+2"), &two));
        assert!(!is_eisenstein(&p("x^2-4"), &two));
        assert!(!is_eisenstein(&p("x^2-3"), &two));
        let rep = eisen_checks(&p("x^2-2"), &two, 4096).unwrap();
        assert!(rep.eisenstein);
        assert_eq!(rep.iterates, vec![(2, true), (3, true)]);
    }

    #[test]
    fn inverse_generator_cases() {
        assert_eq!(inverse_generator(&p("x^2-x-1")).unwrap(), p("x^2+x-1"));
        assert!(matches!(
            inverse_generator(&p("x^2-2")),
            Err(Error::NonUnitConstantTerm)
        ));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_real_roots(&p("x^2-2")), 2);
        assert_eq!(sturm_real_roots(&p("x^2+1")), 0);
        assert_eq!(sturm_real_roots(&p("x^3-3*x")), 3);
        assert_eq!(sturm_real_roots(&p("x^3-2")), 1);
        // T_12 - 1 has all 12 roots real
        let f = chebyshev_t(12).sub(&IntPoly::one());
        assert_eq!(sturm_real_roots(&f), 12);
        // x^4+x-7 has exactly two real roots
        assert_eq!(sturm_real_roots(&p("x^4+x-7")), 2);
    }
}
