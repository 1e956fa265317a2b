//! The iterate certification engine: classify primes as vanishing or
//! non-vanishing, run the mod-p^2 critical-lift divisibility tests across
//! iterates, detect orbit stabilization in (Z/p^2)[x]/(phi), and assemble a
//! per-pair verdict covering every n at once where the critical orbit data
//! is finite.
//!
//! All valuation conditions are executed in divisibility form: phi divides
//! f^n - a in Z/p^2[x], tested on canonical lifts. This needs no splitting
//! fields and is lift-independent in exactly the repeated-factor situations
//! the engine tests.

use crate::arith::{self, FactorBudget};
use crate::ffpoly::FpPoly;
use crate::intpoly::{IntPoly, RatScalar};
use crate::irreducibility::{self, IrredConfig, IrredMethod, IrredStatus, Irreducibility};
use crate::maximality;
use crate::modpoly::QuotRing;
use crate::{families, Error, Result, DEFAULT_MAX_DEGREE};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeKind {
    Vanishing,
    NonVanishing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionalStatus {
    /// p > deg f (tame ramification bound).
    NonExceptionalTameDegree,
    /// Every irreducible factor of f' over Q stays separable mod p.
    NonExceptionalSeparableFactors,
    PossiblyExceptional,
}

impl ExceptionalStatus {
    pub fn is_non_exceptional(&self) -> bool {
        !matches!(self, ExceptionalStatus::PossiblyExceptional)
    }
}

/// Per-prime classification record with the witness data the tests consume:
/// the p-th root polynomial g for vanishing primes, the canonical lifts of the
/// distinct irreducible factors of f' mod p otherwise.
#[derive(Debug, Clone)]
pub struct PrimeClass {
    pub prime: BigInt,
    pub kind: PrimeKind,
    pub exceptional: ExceptionalStatus,
    pub vanishing_g: Option<FpPoly>,
    pub nonvanishing_factors: Vec<IntPoly>,
}

/// Sufficient non-exceptionality tests (never needed for verdict correctness;
/// they gate the global-orbit shortcut). The separability route splits off the
/// rational roots of f' (linear factors are always separable) and requires the
/// radical of the irrational cofactor to stay separable mod p.
fn exceptionality(f: &IntPoly, p: &BigInt, budget: &FactorBudget) -> ExceptionalStatus {
    let deg = f.degree().unwrap_or(0);
    if *p > BigInt::from(deg as i64) {
        return ExceptionalStatus::NonExceptionalTameDegree;
    }
    let deriv = f.derivative();
    let roots = match irreducibility::rational_roots(&deriv, budget) {
        Some(r) => r,
        None => return ExceptionalStatus::PossiblyExceptional,
    };
    let mut cofactor = deriv.primitive_part();
    for (r, m) in &roots {
        let lin = IntPoly::from_coeffs(vec![-r.numer().clone(), r.denom().clone()]);
        for _ in 0..*m {
            cofactor = cofactor.exact_div(&lin).expect("root divides");
        }
    }
    if cofactor.degree().map_or(true, |d| d == 0) {
        return ExceptionalStatus::NonExceptionalSeparableFactors;
    }
    let gcd = cofactor.gcd_primitive(&cofactor.derivative());
    let rad = cofactor.exact_div(&gcd).expect("gcd divides").primitive_part();
    if (rad.leading_coeff() % p).is_zero() {
        return ExceptionalStatus::PossiblyExceptional;
    }
    let rad_bar = FpPoly::from_intpoly(&rad, p).expect("prime checked by caller");
    let rd = rad_bar.derivative();
    if rd.is_zero() {
        return ExceptionalStatus::PossiblyExceptional;
    }
    match rad_bar.gcd(&rd) {
        Ok(g) if g.degree() == Some(0) => ExceptionalStatus::NonExceptionalSeparableFactors,
        _ => ExceptionalStatus::PossiblyExceptional,
    }
}

/// Classify p as vanishing (f' = 0 mod p, with the p-th root g of f - a) or
/// non-vanishing (with the canonical lifts of the distinct factors of f' mod p).
pub fn classify_prime(
    f: &IntPoly,
    a: &BigInt,
    p: &BigInt,
    budget: &FactorBudget,
) -> Result<PrimeClass> {
    if !f.has_unit_lc() {
        return Err(Error::BadLeadingCoeff);
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let deriv_bar = FpPoly::from_intpoly(&f.derivative(), p)?;
    let exceptional = exceptionality(f, p, budget);
    if deriv_bar.is_zero() {
        let shifted = f.sub(&IntPoly::constant(a.clone()));
        let fbar = FpPoly::from_intpoly(&shifted, p)?;
        // f' = 0 mod p forces f - a to be a p-th power mod p
        let g = fbar
            .pth_root()
            .expect("vanishing prime implies f - a is a p-th power");
        Ok(PrimeClass {
            prime: p.clone(),
            kind: PrimeKind::Vanishing,
            exceptional,
            vanishing_g: Some(g),
            nonvanishing_factors: vec![],
        })
    } else {
        let factors = if deriv_bar.degree() == Some(0) {
            vec![]
        } else {
            deriv_bar
                .factorize(0)
                .factors
                .into_iter()
                .map(|(g, _)| g.lift())
                .collect()
        };
        Ok(PrimeClass {
            prime: p.clone(),
            kind: PrimeKind::NonVanishing,
            exceptional,
            vanishing_g: None,
            nonvanishing_factors: factors,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "state")]
pub enum DynVerdict {
    /// No iterate is ever divisible at this prime; n_p is the stabilization
    /// bound that proves it (None for vanishing primes, where n = 1 suffices).
    MaximalForAllN {
        #[serde(skip_serializing_if = "Option::is_none")]
        n_p: Option<u32>,
    },
    FailsAtIterate { n: u32, witness: String },
    /// Only a bounded range was checked (orbit cap reached before a cycle).
    MaximalUpTo { n: u32 },
}

/// Orbit of f in (Z/p^2)[x]/(phi): r_1 = f mod (p^2, phi), r_{k+1} = f(r_k).
/// phi divides f^n - a mod p^2 exactly when r_n = a in the ring.
#[derive(Debug, Clone)]
pub struct OrbitStabilization {
    pub factor: IntPoly,
    /// Preperiod and cycle length; None when the cap was reached first.
    pub tail: Option<u32>,
    pub cycle: Option<u32>,
    pub n_p: Option<u32>,
    /// Iterates n (1-based) with r_n = a, within the explored range.
    pub hits: Vec<u32>,
    pub explored: u32,
}

pub fn orbit_stabilize(
    f: &IntPoly,
    a: &BigInt,
    phi: &IntPoly,
    p: &BigInt,
    cap: u32,
) -> Result<OrbitStabilization> {
    if !phi.is_monic() {
        return Err(Error::NotMonicFactor);
    }
    if FpPoly::from_intpoly(&f.derivative(), p)?.is_zero() {
        return Err(Error::WrongKind);
    }
    let p2 = p * p;
    let ring = QuotRing::new(p2, phi)?;
    let target = ring.constant(a);
    let mut seen: HashMap<crate::modpoly::ModPoly, u32> = HashMap::new();
    let mut hits = Vec::new();
    let mut r = ring.reduce(f);
    let mut n = 1u32;
    loop {
        if r == target {
            hits.push(n);
        }
        seen.insert(r.clone(), n);
        if n >= cap {
            return Ok(OrbitStabilization {
                factor: phi.clone(),
                tail: None,
                cycle: None,
                n_p: None,
                hits,
                explored: n,
            });
        }
        let next = ring.eval_poly(f, &r);
        if let Some(&j) = seen.get(&next) {
            let tail = j - 1;
            let cycle = n + 1 - j;
            return Ok(OrbitStabilization {
                factor: phi.clone(),
                tail: Some(tail),
                cycle: Some(cycle),
                n_p: Some(tail + cycle),
                hits,
                explored: n,
            });
        }
        r = next;
        n += 1;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorEvidence {
    pub factor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hits: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DynMaxCertificate {
    #[serde(serialize_with = "crate::serde_bigint")]
    pub prime: BigInt,
    pub kind: PrimeKind,
    pub exceptional: ExceptionalStatus,
    pub verdict: DynVerdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<FactorEvidence>,
}

impl DynMaxCertificate {
    /// Does this certificate assert p-maximality of f^n - a?
    /// A failure at n0 settles every n >= n0 (non-maximality propagates up
    /// the iterate tower).
    pub fn maximal_at(&self, n: u32) -> Option<bool> {
        match &self.verdict {
            DynVerdict::MaximalForAllN { .. } => Some(true),
            DynVerdict::FailsAtIterate { n: n0, .. } => Some(n < *n0),
            DynVerdict::MaximalUpTo { n: bound } => {
                if n <= *bound {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }
}

/// Vanishing-prime test (settles every n at once): for each irreducible factor
/// of g, test whether its canonical lift divides f - a in Z/p^2[x].
pub fn vanishing_prime_test(f: &IntPoly, a: &BigInt, pc: &PrimeClass) -> Result<DynMaxCertificate> {
    if pc.kind != PrimeKind::Vanishing {
        return Err(Error::WrongKind);
    }
    let g = pc.vanishing_g.as_ref().expect("vanishing class carries g");
    let p = &pc.prime;
    let p2 = p * p;
    let shifted = f.sub(&IntPoly::constant(a.clone())).reduce_mod(&p2);
    let mut evidence = Vec::new();
    let factors = if g.degree().map_or(true, |d| d == 0) {
        vec![]
    } else {
        g.factorize(0).factors
    };
    for (phi_bar, _) in factors {
        let phi = phi_bar.lift();
        let divides = shifted.is_divisible_by(&phi.reduce_mod(&p2))?;
        evidence.push(FactorEvidence {
            factor: phi.to_string(),
            tail: None,
            cycle: None,
            hits: if divides { vec![1] } else { vec![] },
        });
        if divides {
            return Ok(DynMaxCertificate {
                prime: p.clone(),
                kind: pc.kind,
                exceptional: pc.exceptional,
                verdict: DynVerdict::FailsAtIterate {
                    n: 1,
                    witness: phi.to_string(),
                },
                evidence,
            });
        }
    }
    Ok(DynMaxCertificate {
        prime: p.clone(),
        kind: pc.kind,
        exceptional: pc.exceptional,
        verdict: DynVerdict::MaximalForAllN { n_p: None },
        evidence,
    })
}

/// Non-vanishing-prime certification by orbit stabilization over every
/// distinct irreducible factor of f' mod p.
fn nonvanishing_prime_test(
    f: &IntPoly,
    a: &BigInt,
    pc: &PrimeClass,
    cap: u32,
) -> Result<DynMaxCertificate> {
    if pc.kind != PrimeKind::NonVanishing {
        return Err(Error::WrongKind);
    }
    let mut evidence = Vec::new();
    let mut first_fail: Option<(u32, String)> = None;
    let mut all_stabilized = true;
    let mut max_np = 0u32;
    let mut min_explored = u32::MAX;
    for phi in &pc.nonvanishing_factors {
        let orbit = orbit_stabilize(f, a, phi, &pc.prime, cap)?;
        if let Some(&n) = orbit.hits.first() {
            let better = first_fail
                .as_ref()
                .map_or(true, |(best, _)| n < *best);
            if better {
                first_fail = Some((n, phi.to_string()));
            }
        }
        match orbit.n_p {
            Some(np) => max_np = max_np.max(np),
            None => {
                all_stabilized = false;
                min_explored = min_explored.min(orbit.explored);
            }
        }
        evidence.push(FactorEvidence {
            factor: phi.to_string(),
            tail: orbit.tail,
            cycle: orbit.cycle,
            hits: orbit.hits,
        });
    }
    let verdict = if let Some((n, witness)) = first_fail {
        DynVerdict::FailsAtIterate { n, witness }
    } else if all_stabilized {
        DynVerdict::MaximalForAllN {
            n_p: Some(max_np),
        }
    } else {
        DynVerdict::MaximalUpTo { n: min_explored }
    };
    Ok(DynMaxCertificate {
        prime: pc.prime.clone(),
        kind: pc.kind,
        exceptional: pc.exceptional,
        verdict,
        evidence,
    })
}

// ---------------------------------------------------------------------------
// PCF analysis
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPointReport {
    pub point: String,
    pub multiplicity: u32,
    /// Forward values f(theta), f^2(theta), ... up to the first repeat, or up
    /// to the escape witness for infinite orbits.
    pub orbit: Vec<String>,
    pub finite: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PcfReport {
    pub critical_points: Vec<CriticalPointReport>,
    /// Rational roots of f' account for its full degree.
    pub all_rational: bool,
    /// The root search itself stayed within the factorization budget.
    pub roots_known: bool,
    pub pcf: bool,
    #[serde(skip)]
    pub postcritical: Vec<(RatScalar, u32)>,
}

/// Rational critical points and their forward orbits; declares Infinite as
/// soon as a value leaves the escape region |x| <= 1 + sum |coeffs|.
pub fn pcf_analyze(f: &IntPoly, budget: &FactorBudget) -> Result<PcfReport> {
    if !f.has_unit_lc() {
        return Err(Error::BadLeadingCoeff);
    }
    let deriv = f.derivative();
    let escape: BigInt = BigInt::one() + f.coeffs().iter().map(|c| c.abs()).sum::<BigInt>();
    let escape = RatScalar::from(escape);
    let roots = irreducibility::rational_roots(&deriv, budget);
    let (roots, roots_known) = match roots {
        Some(r) => (r, true),
        None => (vec![], false),
    };
    let total_mult: u32 = roots.iter().map(|(_, m)| m).sum();
    let all_rational = roots_known && total_mult as usize == deriv.degree().unwrap_or(0);
    let mut critical_points = Vec::new();
    let mut postcritical: Vec<(RatScalar, u32)> = Vec::new();
    let mut pcf = all_rational;
    for (theta, mult) in &roots {
        let mut orbit: Vec<RatScalar> = Vec::new();
        let mut v = f.eval_rat(theta);
        let finite = loop {
            if orbit.contains(&v) {
                break true;
            }
            orbit.push(v.clone());
            if v.abs() > escape {
                break false;
            }
            v = f.eval_rat(&v);
        };
        for (k, w) in orbit.iter().enumerate() {
            let n = (k + 1) as u32;
            match postcritical.iter_mut().find(|(x, _)| x == w) {
                Some((_, first_n)) => *first_n = (*first_n).min(n),
                None => postcritical.push((w.clone(), n)),
            }
        }
        pcf &= finite;
        critical_points.push(CriticalPointReport {
            point: theta.to_string(),
            multiplicity: *mult,
            orbit: orbit.iter().map(|v| v.to_string()).collect(),
            finite,
        });
    }
    postcritical.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(PcfReport {
        critical_points,
        all_rational,
        roots_known,
        pcf,
        postcritical,
    })
}

// ---------------------------------------------------------------------------
// Pair certification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifyMode {
    AllN,
    UpTo(u32),
}

#[derive(Debug, Clone)]
pub struct CertifyConfig {
    pub max_degree: usize,
    pub budget: FactorBudget,
    pub irred: IrredConfig,
    /// Iterates reported in the irreducibility section.
    pub irred_depth: u32,
    /// Orbit exploration cap per (prime, factor).
    pub orbit_cap: u32,
    pub seed: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            max_degree: DEFAULT_MAX_DEGREE,
            budget: FactorBudget::default(),
            irred: IrredConfig::default(),
            irred_depth: 3,
            orbit_cap: 4096,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    DynamicallyMonogenic,
    Fails,
    Conditional,
    BoundedOk,
    NotApplicableReducible,
}

#[derive(Debug, Clone, Serialize)]
pub struct IterateIrred {
    pub n: u32,
    pub status: Irreducibility,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<IredMethodTag>,
}

/// Compressed method tag for the JSON report.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IredMethodTag {
    ModP,
    Eisenstein,
    Capelli,
    ChebyshevValue,
    RationalRoot,
    FamilyTheorem,
}

impl From<&IrredMethod> for IredMethodTag {
    fn from(m: &IrredMethod) -> Self {
        match m {
            IrredMethod::ModPIrreducible(_) => IredMethodTag::ModP,
            IrredMethod::Eisenstein { .. } => IredMethodTag::Eisenstein,
            IrredMethod::CapelliPower(_) => IredMethodTag::Capelli,
            IrredMethod::ChebyshevValue(_) => IredMethodTag::ChebyshevValue,
            IrredMethod::RationalRoot(_) => IredMethodTag::RationalRoot,
            IrredMethod::FamilyTheorem(_) => IredMethodTag::FamilyTheorem,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub f: String,
    #[serde(serialize_with = "crate::serde_bigint")]
    pub a: BigInt,
    pub mode: String,
    pub irreducibility: Vec<IterateIrred>,
    pub all_n_irreducible: bool,
    pub primes: Vec<DynMaxCertificate>,
    pub verdict: OverallVerdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

impl PairVerdict {
    /// The engine's claim about p-maximality of f^n - a. Primes without a
    /// certificate were outside every candidate set, hence maximal.
    pub fn claims_maximal_at(&self, p: &BigInt, n: u32) -> Option<bool> {
        match self.primes.iter().find(|c| &c.prime == p) {
            Some(cert) => cert.maximal_at(n),
            None => Some(true),
        }
    }
}

/// Shape detection for the family-specific irreducibility routes.
fn as_unicritical(f: &IntPoly) -> Option<(i8, u32, BigInt)> {
    let d = f.degree()?;
    if d < 2 {
        return None;
    }
    let lc = f.leading_coeff();
    let u: i8 = if lc.is_one() {
        1
    } else if lc == BigInt::from(-1) {
        -1
    } else {
        return None;
    };
    for i in 1..d {
        if !f.coeff(i).is_zero() {
            return None;
        }
    }
    Some((u, d as u32, f.constant_term()))
}

fn irreducibility_report(
    f: &IntPoly,
    a: &BigInt,
    cfg: &CertifyConfig,
) -> (Vec<IterateIrred>, bool) {
    let mut all_n = false;
    let mut family_status: Option<IrredStatus> = None;
    if let Some((u, d, b)) = as_unicritical(f) {
        let s = irreducibility::unicritical_dynamic_irreducibility(u, d, &b, a, &cfg.budget);
        if s.status == Irreducibility::Proven {
            all_n = true;
            family_status = Some(s);
        }
    }
    if family_status.is_none() {
        if let Some(d) = families::as_chebyshev(f) {
            let s = irreducibility::chebyshev_dynamic_irreducibility(d as u32, a);
            if s.status == Irreducibility::Proven {
                all_n = true;
                family_status = Some(s);
            }
        }
    }
    let mut out = Vec::new();
    for n in 1..=cfg.irred_depth {
        if let Some(fs) = &family_status {
            out.push(IterateIrred {
                n,
                status: Irreducibility::Proven,
                method: fs.method.as_ref().map(IredMethodTag::from),
            });
            continue;
        }
        let fi = match f.iterate(n, cfg.max_degree) {
            Ok(fi) => fi.sub(&IntPoly::constant(a.clone())),
            Err(_) => break,
        };
        // family-aware per-iterate decisions come first, the generic stack after
        let status = if let Some((u, d, b)) = as_unicritical(f) {
            if n == 1 {
                let c = RatScalar::from(if u == 1 { a - &b } else { &b - a });
                irreducibility::capelli_xd_minus_c(d, &c)
            } else {
                irreducibility::generic_status(&fi, &cfg.irred)
            }
        } else if let Some(d) = families::as_chebyshev(f) {
            let dn = (d as u64).pow(n);
            if dn <= u32::MAX as u64 {
                irreducibility::chebyshev_irreducible(dn as u32, a, &cfg.budget)
            } else {
                irreducibility::generic_status(&fi, &cfg.irred)
            }
        } else {
            irreducibility::generic_status(&fi, &cfg.irred)
        };
        out.push(IterateIrred {
            n,
            status: status.status,
            method: status.method.as_ref().map(IredMethodTag::from),
        });
    }
    (out, all_n)
}

/// Primes with f' = 0 mod p: exactly the prime divisors of content(f').
fn vanishing_primes(f: &IntPoly, budget: &FactorBudget) -> (Vec<BigInt>, Option<BigInt>) {
    let content = f.derivative().content();
    if content.is_one() {
        return (vec![], None);
    }
    let fac = arith::factor_with_budget(&content, budget);
    (
        fac.factors.into_iter().map(|(p, _)| p).collect(),
        fac.unfactored,
    )
}

/// Certify the pair (f, a): per-prime maximality certificates for every
/// iterate, assembled from the vanishing-prime test and orbit stabilization,
/// with irreducibility status reported alongside.
pub fn certify_pair(
    f: &IntPoly,
    a: &BigInt,
    mode: CertifyMode,
    cfg: &CertifyConfig,
) -> Result<PairVerdict> {
    if !f.has_unit_lc() {
        return Err(Error::BadLeadingCoeff);
    }
    let deg = f.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::Internal("certify_pair needs deg f >= 2".into()));
    }
    let mut notices: Vec<String> = Vec::new();
    let mut conditional = false;

    let (vanish, vanish_cofactor) = vanishing_primes(f, &cfg.budget);
    if let Some(c) = vanish_cofactor {
        notices.push(format!(
            "content(f') kept an unfactored cofactor {}; vanishing prime list may be incomplete",
            c
        ));
        conditional = true;
    }

    let mut candidates: BTreeSet<BigInt> = vanish.iter().cloned().collect();
    let mut orbit_hits_a: Option<u32> = None;

    let effective_mode = match mode {
        CertifyMode::AllN => {
            let pcf = pcf_analyze(f, &cfg.budget)?;
            if pcf.pcf && pcf.all_rational {
                for (omega, first_n) in &pcf.postcritical {
                    let val = omega - RatScalar::from(a.clone());
                    if val.is_zero() {
                        orbit_hits_a = Some(
                            orbit_hits_a.map_or(*first_n, |cur: u32| cur.min(*first_n)),
                        );
                        continue;
                    }
                    let fac = arith::factor_with_budget(val.numer(), &cfg.budget);
                    if let Some(c) = fac.unfactored {
                        notices.push(format!(
                            "postcritical value {} - a kept an unfactored cofactor {}",
                            omega, c
                        ));
                        conditional = true;
                    }
                    for (q, e) in fac.factors {
                        if e >= 2 && !vanish.contains(&q) {
                            candidates.insert(q);
                        }
                    }
                }
                CertifyMode::AllN
            } else {
                notices.push(
                    "all-n mode needs a PCF polynomial with rational critical points; \
                     falling back to bounded verification up to n = 3"
                        .into(),
                );
                CertifyMode::UpTo(3)
            }
        }
        up_to => up_to,
    };

    if let CertifyMode::UpTo(n_max) = effective_mode {
        for n in 1..=n_max {
            let fi = f
                .iterate(n, cfg.max_degree)?
                .sub(&IntPoly::constant(a.clone()));
            match maximality::candidate_primes(&fi, &cfg.budget) {
                Ok(c) => {
                    if let Some(u) = c.unfactored_cofactor {
                        notices.push(format!(
                            "disc(f^{} - a) kept an unfactored cofactor {}; candidate list may be incomplete",
                            n, u
                        ));
                        conditional = true;
                    }
                    candidates.extend(c.primes);
                }
                Err(Error::DiscriminantZero) => {
                    // a repeated factor: f^n - a is not squarefree, hence reducible
                    orbit_hits_a = Some(orbit_hits_a.map_or(n, |cur| cur.min(n)));
                }
                Err(e) => return Err(e),
            }
        }
    }

    let cap = match effective_mode {
        CertifyMode::AllN => cfg.orbit_cap,
        CertifyMode::UpTo(n) => cfg.orbit_cap.max(n),
    };
    let sorted: Vec<BigInt> = candidates.into_iter().collect();
    let mut certs: Vec<DynMaxCertificate> = sorted
        .par_iter()
        .map(|p| {
            let pc = classify_prime(f, a, p, &cfg.budget)?;
            match pc.kind {
                PrimeKind::Vanishing => vanishing_prime_test(f, a, &pc),
                PrimeKind::NonVanishing => nonvanishing_prime_test(f, a, &pc, cap),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    certs.sort_by(|x, y| x.prime.cmp(&y.prime));

    let (irred, all_n_irreducible) = irreducibility_report(f, a, cfg);

    let any_prime_fails = certs
        .iter()
        .any(|c| matches!(c.verdict, DynVerdict::FailsAtIterate { .. }));
    let coverage_gap = match effective_mode {
        CertifyMode::AllN => certs
            .iter()
            .any(|c| matches!(c.verdict, DynVerdict::MaximalUpTo { .. })),
        CertifyMode::UpTo(n) => certs.iter().any(|c| match &c.verdict {
            DynVerdict::MaximalUpTo { n: bound } => *bound < n,
            _ => false,
        }),
    };
    if coverage_gap {
        notices.push("some orbit explorations hit the cap before stabilizing".into());
    }
    if let Some(n) = orbit_hits_a {
        notices.push(format!(
            "f^{} - a has a repeated root (the critical orbit hits a): the iterate is reducible and non-monogenic",
            n
        ));
    }

    let relevant_irred_ok = |up_to: u32| -> (bool, bool) {
        // (all proven, any disproven) among reported iterates n <= up_to
        let mut all = true;
        let mut disproven = false;
        for it in irred.iter().filter(|it| it.n <= up_to) {
            match it.status {
                Irreducibility::Proven => {}
                Irreducibility::Disproven => disproven = true,
                Irreducibility::Unknown => all = false,
            }
        }
        (all, disproven)
    };

    let verdict = if any_prime_fails || orbit_hits_a.is_some() {
        OverallVerdict::Fails
    } else {
        let (irr_ok, irr_disproven) = match effective_mode {
            CertifyMode::AllN => {
                let (_, dis) = relevant_irred_ok(cfg.irred_depth);
                (all_n_irreducible, dis)
            }
            CertifyMode::UpTo(n) => {
                let (all, dis) = relevant_irred_ok(n);
                (all || all_n_irreducible, dis)
            }
        };
        if irr_disproven {
            OverallVerdict::NotApplicableReducible
        } else if conditional || coverage_gap {
            OverallVerdict::Conditional
        } else {
            match effective_mode {
                CertifyMode::AllN => {
                    if all_n_irreducible {
                        OverallVerdict::DynamicallyMonogenic
                    } else {
                        OverallVerdict::Conditional
                    }
                }
                CertifyMode::UpTo(_) => {
                    if irr_ok {
                        OverallVerdict::BoundedOk
                    } else {
                        OverallVerdict::Conditional
                    }
                }
            }
        }
    };

    Ok(PairVerdict {
        f: f.to_string(),
        a: a.clone(),
        mode: match (mode, effective_mode) {
            (CertifyMode::AllN, CertifyMode::AllN) => "all-n".to_string(),
            (CertifyMode::AllN, CertifyMode::UpTo(n)) => format!("up-to-{} (fallback)", n),
            (CertifyMode::UpTo(n), _) => format!("up-to-{}", n),
        },
        irreducibility: irred,
        all_n_irreducible,
        primes: certs,
        verdict,
        notices,
    })
}
