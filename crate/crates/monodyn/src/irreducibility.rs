//! Semi-decision procedures for irreducibility over Q: family-specific
//! complete tests (Vahlen-Capelli for x^d - c, value searches for Chebyshev)
//! plus a generic sufficient stack (rational roots, shifted Eisenstein,
//! irreducibility mod p). Returns Proven / Disproven(witness) / Unknown;
//! verdicts that depend on an Unknown stay conditional.

use crate::arith::{self, FactorBudget, IntFactorization};
use crate::families::{self, CheckMode};
use crate::intpoly::{IntPoly, RatScalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Proven,
    Disproven,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "data")]
pub enum IrredMethod {
    ModPIrreducible(u64),
    Eisenstein { p: u64, shift: i64 },
    CapelliPower(u64),
    ChebyshevValue(u64),
    RationalRoot(String),
    FamilyTheorem(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrredStatus {
    pub status: Irreducibility,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<IrredMethod>,
    /// For Disproven: a factor (parseable when integral) or a value witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl IrredStatus {
    pub fn proven(method: IrredMethod) -> Self {
        IrredStatus {
            status: Irreducibility::Proven,
            method: Some(method),
            witness: None,
        }
    }

    pub fn disproven(method: IrredMethod, witness: String) -> Self {
        IrredStatus {
            status: Irreducibility::Disproven,
            method: Some(method),
            witness: Some(witness),
        }
    }

    pub fn unknown() -> Self {
        IrredStatus {
            status: Irreducibility::Unknown,
            method: None,
            witness: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IrredConfig {
    pub eisenstein_prime_bound: u64,
    pub shift_window: i64,
    pub modp_prime_bound: u64,
    pub budget: FactorBudget,
}

impl Default for IrredConfig {
    fn default() -> Self {
        IrredConfig {
            eisenstein_prime_bound: 100,
            shift_window: 10,
            modp_prime_bound: 50,
            budget: FactorBudget::default(),
        }
    }
}

/// Inputs whose factorization over Z is registered rather than computed; the
/// generic stack has no disproof route for them (no rational roots, and mod-p
/// or Eisenstein tests can never show reducibility).
const KNOWN_FACTORIZATIONS: &[(&str, &str)] = &[("x^4 - 5*x^2 + 6", "x^2 - 2")];

fn exact_nth_root(m: &BigInt, n: u32) -> Option<BigInt> {
    debug_assert!(!m.is_negative());
    let r = m.nth_root(n);
    if r.pow(n) == *m {
        Some(r)
    } else {
        None
    }
}

/// Exact n-th root in Q, handling sign for odd n.
fn rational_nth_root(c: &RatScalar, n: u32) -> Option<RatScalar> {
    if c.is_zero() {
        return Some(RatScalar::zero());
    }
    if n % 2 == 0 && c.is_negative() {
        return None;
    }
    let num_root = exact_nth_root(&c.numer().abs(), n)?;
    let den_root = exact_nth_root(&c.denom().abs(), n)?;
    let mut root = RatScalar::new(num_root, den_root);
    if c.is_negative() {
        root = -root;
    }
    Some(root)
}

/// Vahlen-Capelli: x^d - c is irreducible over Q iff c is not a p-th power
/// for any prime p | d and, when 4 | d, -4c is not a fourth power.
pub fn capelli_xd_minus_c(d: u32, c: &RatScalar) -> IrredStatus {
    assert!(d >= 2);
    if c.is_zero() {
        return IrredStatus::disproven(IrredMethod::RationalRoot("0".into()), "x".into());
    }
    for p in families::prime_divisors_u64(d as u64) {
        if let Some(r) = rational_nth_root(c, p as u32) {
            let witness = if r.denom().is_one() {
                IntPoly::monomial(BigInt::one(), (d / p as u32) as usize)
                    .sub(&IntPoly::constant(r.numer().clone()))
                    .to_string()
            } else {
                format!("x^{} - ({})", d / p as u32, r)
            };
            return IrredStatus::disproven(IrredMethod::CapelliPower(p), witness);
        }
    }
    if d % 4 == 0 {
        let minus_4c = c * RatScalar::from(BigInt::from(-4));
        if let Some(t) = rational_nth_root(&minus_4c, 4) {
            let b = t / RatScalar::from(BigInt::from(2));
            let witness = if b.denom().is_one() {
                // x^4 + 4b^4 = (x^2 - 2bx + 2b^2)(x^2 + 2bx + 2b^2), x -> x^(d/4)
                let bb = b.numer().clone();
                let q = d as usize / 4;
                IntPoly::monomial(BigInt::one(), 2 * q)
                    .sub(&IntPoly::monomial(BigInt::from(2) * &bb, q))
                    .add(&IntPoly::constant(BigInt::from(2) * &bb * &bb))
                    .to_string()
            } else {
                format!("c = -4*({})^4", b)
            };
            return IrredStatus::disproven(IrredMethod::CapelliPower(2), witness);
        }
    }
    IrredStatus::proven(IrredMethod::FamilyTheorem("vahlen-capelli".into()))
}

fn divisors_of(fac: &IntFactorization, limit: usize) -> Option<Vec<BigInt>> {
    if !fac.is_complete() {
        return None;
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in &fac.factors {
        if divs.len() * (*e as usize + 1) > limit {
            return None;
        }
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut power = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &power);
                power *= p;
            }
        }
        divs = next;
    }
    Some(divs)
}

/// Rational roots of f with multiplicities, via the rational-root theorem.
/// None when the constant/leading coefficient factorization ran out of budget.
pub fn rational_roots(f: &IntPoly, budget: &FactorBudget) -> Option<Vec<(RatScalar, u32)>> {
    assert!(!f.is_zero());
    let mut f = f.primitive_part();
    let mut roots: Vec<(RatScalar, u32)> = Vec::new();
    let mut zero_mult = 0u32;
    while f.degree().map_or(false, |d| d >= 1) && f.constant_term().is_zero() {
        f = f.exact_div(&IntPoly::x()).unwrap();
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((RatScalar::zero(), zero_mult));
    }
    if f.degree().map_or(true, |d| d == 0) {
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        return Some(roots);
    }
    let c0 = f.constant_term();
    let lc = f.leading_coeff();
    let nums = divisors_of(&arith::factor_with_budget(&c0, budget), 4096)?;
    let dens = divisors_of(&arith::factor_with_budget(&lc, budget), 4096)?;
    for u in &nums {
        for v in &dens {
            if u.gcd(v) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = RatScalar::new(u * BigInt::from(sign), v.clone());
                if roots.iter().any(|(r, _)| *r == cand) {
                    continue;
                }
                if f.eval_rat(&cand).is_zero() {
                    // deflate by (v x - u_signed) to count multiplicity
                    let lin = IntPoly::from_coeffs(vec![-(u * BigInt::from(sign)), v.clone()]);
                    let mut mult = 0u32;
                    while let Some(q) = f.exact_div(&lin) {
                        f = q;
                        mult += 1;
                    }
                    roots.push((cand, mult));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Some(roots)
}

/// Integer-value search deciding irreducibility of T_d - a: reducible iff a is
/// a rational value of T_p for some prime p | d, or (4 | d) of -4c^4 + 8c^2 - 2.
pub fn chebyshev_irreducible(d: u32, a: &BigInt, budget: &FactorBudget) -> IrredStatus {
    assert!(d >= 2);
    for p in families::prime_divisors_u64(d as u64) {
        let tp = families::chebyshev_t(p as usize);
        let poly = tp.sub(&IntPoly::constant(a.clone()));
        // T_p is monic over Z, so rational roots are integers dividing the
        // constant term
        let c0 = poly.constant_term();
        if c0.is_zero() {
            return IrredStatus::disproven(IrredMethod::ChebyshevValue(p), "T_p(0) = a".into());
        }
        let divs = match divisors_of(&arith::factor_with_budget(&c0, budget), 4096) {
            Some(d) => d,
            None => return IrredStatus::unknown(),
        };
        for u in divs {
            for cand in [u.clone(), -u] {
                if poly.eval(&cand).is_zero() {
                    return IrredStatus::disproven(
                        IrredMethod::ChebyshevValue(p),
                        format!("T_{}({}) = {}", p, cand, a),
                    );
                }
            }
        }
    }
    if d % 4 == 0 {
        // solve -4c^4 + 8c^2 - 2 = a over Q
        let quartic = IntPoly::from_coeffs(vec![
            a + BigInt::from(2),
            BigInt::zero(),
            BigInt::from(-8),
            BigInt::zero(),
            BigInt::from(4),
        ]);
        match rational_roots(&quartic, budget) {
            Some(roots) => {
                if let Some((c, _)) = roots.first() {
                    return IrredStatus::disproven(
                        IrredMethod::ChebyshevValue(2),
                        format!("a = -4c^4 + 8c^2 - 2 at c = {}", c),
                    );
                }
            }
            None => return IrredStatus::unknown(),
        }
    }
    IrredStatus::proven(IrredMethod::FamilyTheorem("chebyshev-values".into()))
}

/// Sufficient-test stack: registered factorizations, rational-root disproof,
/// Eisenstein after shifts, irreducibility mod p, else Unknown.
pub fn generic_status(f: &IntPoly, cfg: &IrredConfig) -> IrredStatus {
    let deg = f.degree().expect("generic_status needs deg >= 1");
    assert!(deg >= 1);
    if deg == 1 {
        return IrredStatus::proven(IrredMethod::FamilyTheorem("linear".into()));
    }
    let prim = f.primitive_part();
    for (poly, factor) in KNOWN_FACTORIZATIONS {
        let poly: IntPoly = poly.parse().expect("registry entry parses");
        if prim == poly.primitive_part() {
            let factor: IntPoly = factor.parse().expect("registry entry parses");
            assert!(prim.exact_div(&factor).is_some(), "registry factor divides");
            return IrredStatus::disproven(
                IrredMethod::FamilyTheorem("registered-factorization".into()),
                factor.to_string(),
            );
        }
    }
    if let Some(roots) = rational_roots(&prim, &cfg.budget) {
        if let Some((r, _)) = roots.first() {
            let lin = IntPoly::from_coeffs(vec![-r.numer().clone(), r.denom().clone()]);
            return IrredStatus::disproven(
                IrredMethod::RationalRoot(r.to_string()),
                lin.to_string(),
            );
        }
    }
    // shifts ordered 0, 1, -1, 2, -2, ... so the unshifted test wins ties
    let shifts = std::iter::once(0i64).chain((1..=cfg.shift_window).flat_map(|s| [s, -s]));
    for shift in shifts {
        let g = prim.shift(&BigInt::from(shift));
        for &p in arith::small_primes() {
            if p > cfg.eisenstein_prime_bound {
                break;
            }
            if families::is_eisenstein(&g, &BigInt::from(p)) {
                return IrredStatus::proven(IrredMethod::Eisenstein { p, shift });
            }
        }
    }
    for &p in arith::small_primes() {
        if p > cfg.modp_prime_bound {
            break;
        }
        let pb = BigInt::from(p);
        if (prim.leading_coeff() % &pb).is_zero() {
            continue;
        }
        let fbar = crate::ffpoly::FpPoly::from_intpoly(&prim, &pb).expect("small prime");
        if fbar.is_irreducible() {
            return IrredStatus::proven(IrredMethod::ModPIrreducible(p));
        }
    }
    IrredStatus::unknown()
}

/// Dynamical irreducibility of (u*x^d + b, a) for every n, implied by the
/// unicritical monogenicity conditions when they hold with full orbit data.
pub fn unicritical_dynamic_irreducibility(
    u: i8,
    d: u32,
    b: &BigInt,
    a: &BigInt,
    budget: &FactorBudget,
) -> IrredStatus {
    let v = families::unicritical_check(u, d, b, a, CheckMode::AllN, budget);
    if v.passed() && v.covers_all_n {
        IrredStatus::proven(IrredMethod::FamilyTheorem("unicritical".into()))
    } else {
        IrredStatus::unknown()
    }
}

/// Dynamical irreducibility of (T_d, a) for every n: guaranteed by
/// T_p(a) != a mod p^2 for all primes p | d.
pub fn chebyshev_dynamic_irreducibility(d: u32, a: &BigInt) -> IrredStatus {
    for p in families::prime_divisors_u64(d as u64) {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        if families::cheby_eval_mod(p, a, &p2) == a.mod_floor(&p2) {
            return IrredStatus::unknown();
        }
    }
    IrredStatus::proven(IrredMethod::FamilyTheorem("chebyshev".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn rat(v: i64) -> RatScalar {
        RatScalar::from(BigInt::from(v))
    }

    #[test]
    fn capelli_examples() {
        assert_eq!(capelli_xd_minus_c(2, &rat(2)).status, Irreducibility::Proven);
        let s = capelli_xd_minus_c(4, &rat(-4));
        assert_eq!(s.status, Irreducibility::Disproven);
        assert_eq!(s.witness.as_deref(), Some("x^2 - 2*x + 2"));
        let s = capelli_xd_minus_c(3, &rat(8));
        assert_eq!(s.status, Irreducibility::Disproven);
        assert_eq!(s.witness.as_deref(), Some("x - 2"));
    }

    #[test]
    fn capelli_witnesses_replay() {
        for d in [2u32, 3, 4, 6, 8] {
            for c in -30i64..=30 {
                let s = capelli_xd_minus_c(d, &rat(c));
                if s.status == Irreducibility::Disproven {
                    let f = IntPoly::monomial(BigInt::one(), d as usize)
                        .sub(&IntPoly::constant(BigInt::from(c)));
                    let w: IntPoly = s.witness.as_deref().unwrap().parse().unwrap();
                    assert!(f.exact_div(&w).is_some(), "d={d}, c={c}, w={w}");
                }
            }
        }
    }

    /// Complete independent reducibility decision for x^d - c on a small grid:
    /// (1) irreducible mod some good prime proves irreducibility outright;
    /// (2) otherwise intersect the achievable proper-factor degrees across
    ///     several good primes (a rational factor reduces mod every one);
    /// (3) exhaustively search monic integer factors of each surviving degree
    ///     k <= d/2, using that all roots have modulus |c|^(1/d) so the j-th
    ///     coefficient is bounded by C(k,j) |c|^(j/d).
    fn xd_minus_c_is_irreducible(d: u32, c: i64) -> bool {
        let f = IntPoly::monomial(BigInt::one(), d as usize)
            .sub(&IntPoly::constant(BigInt::from(c)));
        let disc = f.discriminant().unwrap();
        let mut degree_sets: Vec<std::collections::HashSet<usize>> = Vec::new();
        for &q in arith::small_primes().iter().take_while(|&&q| q < 500) {
            let qb = BigInt::from(q);
            if (&disc % &qb).is_zero() {
                continue;
            }
            let fq = crate::ffpoly::FpPoly::from_intpoly(&f, &qb).unwrap();
            if fq.is_irreducible() {
                return true;
            }
            if degree_sets.len() < 10 {
                let degs: Vec<usize> = fq
                    .factorize(0)
                    .factors
                    .iter()
                    .map(|(g, _)| g.degree().unwrap())
                    .collect();
                let mut sums = std::collections::HashSet::new();
                sums.insert(0usize);
                for dg in degs {
                    let cur: Vec<usize> = sums.iter().copied().collect();
                    for s in cur {
                        sums.insert(s + dg);
                    }
                }
                degree_sets.push(sums);
            }
        }
        let mut possible: Vec<usize> = (1..d as usize).collect();
        for set in &degree_sets {
            possible.retain(|k| set.contains(k));
        }
        if possible.is_empty() {
            return true;
        }
        // search monic factors of each feasible degree k <= d/2
        let root_mod = (c.unsigned_abs() as f64).powf(1.0 / d as f64);
        for &k in possible.iter().filter(|&&k| 2 * k <= d as usize) {
            let bounds: Vec<i64> = (1..=k)
                .map(|j| {
                    let binom = (0..j).fold(1f64, |acc, t| acc * (k - t) as f64 / (t + 1) as f64);
                    // +1 absorbs float rounding on the rigorous bound
                    (binom * root_mod.powi(j as i32)).floor() as i64 + 1
                })
                .collect();
            let mut coeffs = vec![0i64; k];
            fn search(
                f: &IntPoly,
                k: usize,
                bounds: &[i64],
                coeffs: &mut Vec<i64>,
                pos: usize,
            ) -> bool {
                if pos == k {
                    let mut v: Vec<BigInt> =
                        coeffs.iter().rev().map(|&c| BigInt::from(c)).collect();
                    v.push(BigInt::one());
                    let g = IntPoly::from_coeffs(v);
                    return g.degree() == Some(k) && f.exact_div(&g).is_some();
                }
                for c in -bounds[pos]..=bounds[pos] {
                    coeffs[pos] = c;
                    if search(f, k, bounds, coeffs, pos + 1) {
                        return true;
                    }
                }
                false
            }
            // coeffs[j-1] is the coefficient of x^(k-j)
            if search(&f, k, &bounds, &mut coeffs, 0) {
                return false;
            }
        }
        true
    }

    #[test]
    fn capelli_matches_independent_oracle() {
        for d in [2u32, 3, 4, 5, 6, 8] {
            for c in -30i64..=30 {
                if c == 0 {
                    continue;
                }
                let s = capelli_xd_minus_c(d, &rat(c));
                match s.status {
                    Irreducibility::Proven => {
                        assert!(
                            xd_minus_c_is_irreducible(d, c),
                            "d={d}, c={c}: capelli proven but a factor exists"
                        );
                    }
                    Irreducibility::Disproven => {
                        // witness replay is definitive (checked in the replay test);
                        // the oracle must not claim irreducibility
                        assert!(
                            !xd_minus_c_is_irreducible(d, c),
                            "d={d}, c={c}: capelli disproven but oracle says irreducible"
                        );
                    }
                    Irreducibility::Unknown => panic!("capelli is a complete decision"),
                }
            }
        }
    }

    #[test]
    fn chebyshev_examples() {
        let b = FactorBudget::default();
        assert_eq!(
            chebyshev_irreducible(2, &BigInt::from(0), &b).status,
            Irreducibility::Proven
        );
        assert_eq!(
            chebyshev_irreducible(3, &BigInt::from(-1), &b).status,
            Irreducibility::Proven
        );
        let s = chebyshev_irreducible(2, &BigInt::from(2), &b);
        assert_eq!(s.status, Irreducibility::Disproven);
        // T_4 - (-2) = (x^2-2)^2 via the quartic clause at c = 0
        let s = chebyshev_irreducible(4, &BigInt::from(-2), &b);
        assert_eq!(s.status, Irreducibility::Disproven);
    }

    #[test]
    fn chebyshev_agrees_with_generic_where_decisive() {
        let cfg = IrredConfig::default();
        for d in [2u32, 3, 4, 6] {
            for a in -20i64..=20 {
                let a = BigInt::from(a);
                let s = chebyshev_irreducible(d, &a, &cfg.budget);
                let f = families::chebyshev_t(d as usize).sub(&IntPoly::constant(a.clone()));
                let g = generic_status(&f, &cfg);
                match (s.status, g.status) {
                    (Irreducibility::Proven, Irreducibility::Disproven) => {
                        panic!("d={d}, a={a}: value search proven, generic disproven")
                    }
                    (Irreducibility::Disproven, Irreducibility::Proven) => {
                        panic!("d={d}, a={a}: value search disproven, generic proven")
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn generic_examples() {
        let cfg = IrredConfig::default();
        // proven by the stack (a shifted Eisenstein fires before the mod-2 test)
        let s = generic_status(&p("x^2+x+1"), &cfg);
        assert_eq!(s.status, Irreducibility::Proven);
        // mod-2 irreducibility also holds and is found when shifts are disabled
        let no_shift = IrredConfig {
            shift_window: 0,
            eisenstein_prime_bound: 0,
            ..IrredConfig::default()
        };
        let s = generic_status(&p("x^2+x+1"), &no_shift);
        assert_eq!(s.method, Some(IrredMethod::ModPIrreducible(2)));

        let s = generic_status(&p("x^2-2"), &cfg);
        assert_eq!(s.status, Irreducibility::Proven);
        assert_eq!(s.method, Some(IrredMethod::Eisenstein { p: 2, shift: 0 }));

        // the registered factorization for (x^2-2)(x^2-3)
        let s = generic_status(&p("x^4-5*x^2+6"), &cfg);
        assert_eq!(s.status, Irreducibility::Disproven);
        assert_eq!(s.witness.as_deref(), Some("x^2 - 2"));

        let s = generic_status(&p("x^2-4"), &cfg);
        assert_eq!(s.status, Irreducibility::Disproven);
        assert_eq!(s.witness.as_deref(), Some("x + 2"));

        assert_eq!(generic_status(&p("3*x - 7"), &cfg).status, Irreducibility::Proven);
    }

    #[test]
    fn disproven_witnesses_divide() {
        let cfg = IrredConfig::default();
        for s in ["x^2-4", "x^2-1", "x^3+8", "x^4-5*x^2+6", "4*x^2-1"] {
            let f = p(s);
            let st = generic_status(&f, &cfg);
            assert_eq!(st.status, Irreducibility::Disproven, "{s}");
            let w: IntPoly = st.witness.as_deref().unwrap().parse().unwrap();
            assert!(
                f.primitive_part().exact_div(&w).is_some(),
                "{s} witness {w}"
            );
        }
    }

    #[test]
    fn modp_proofs_replay_via_factorize() {
        let cfg = IrredConfig::default();
        for s in ["x^2+x+1", "x^3-x+1", "x^4+x+1"] {
            let f = p(s);
            if let IrredStatus {
                status: Irreducibility::Proven,
                method: Some(IrredMethod::ModPIrreducible(q)),
                ..
            } = generic_status(&f, &cfg)
            {
                let fac = crate::ffpoly::FpPoly::from_intpoly(&f, &BigInt::from(q))
                    .unwrap()
                    .factorize(0);
                assert_eq!(fac.factors.len(), 1, "{s}");
                assert_eq!(fac.factors[0].1, 1, "{s}");
            }
        }
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let b = FactorBudget::default();
        // x^2 (x - 1)^2 (2x + 3)
        let f = p("x^2")
            .mul(&p("x-1"))
            .mul(&p("x-1"))
            .mul(&p("2*x+3"));
        let roots = rational_roots(&f, &b).unwrap();
        let expect: Vec<(RatScalar, u32)> = vec![
            (RatScalar::new(BigInt::from(-3), BigInt::from(2)), 1),
            (rat(0), 2),
            (rat(1), 2),
        ];
        assert_eq!(roots, expect);
    }

    #[test]
    fn unicritical_dynamic_cases() {
        let b = FactorBudget::default();
        let s = unicritical_dynamic_irreducibility(-1, 2, &BigInt::from(1), &BigInt::from(2), &b);
        assert_eq!(s.status, Irreducibility::Proven);
        let s = unicritical_dynamic_irreducibility(1, 2, &BigInt::from(0), &BigInt::from(2), &b);
        assert_eq!(s.status, Irreducibility::Proven);
        let s = unicritical_dynamic_irreducibility(1, 2, &BigInt::from(0), &BigInt::from(4), &b);
        assert_eq!(s.status, Irreducibility::Unknown);
    }
}
