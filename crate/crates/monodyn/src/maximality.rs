//! Ground-truth p-maximality oracles for Z[x]/(f): Uchida's restatement
//! (mod-p^2 divisibility by lifts of repeated factors) and the classical
//! gcd-based Dedekind criterion as an independent second route, plus the
//! discriminant-driven candidate prime enumeration that bounds the search.

use crate::arith::{self, FactorBudget};
use crate::ffpoly::FpPoly;
use crate::intpoly::IntPoly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalityVerdict {
    Maximal,
    NonMaximal,
}

/// Per-prime certificate. A `NonMaximal` witness is the canonical lift that
/// divides f in Z/p^2[x]; re-checkable by one division. For `Maximal`, the
/// lifts that were tested (and failed to divide) are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityCertificate {
    #[serde(serialize_with = "crate::serde_bigint")]
    pub prime: BigInt,
    pub verdict: MaximalityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tested: Vec<String>,
}

impl MaximalityCertificate {
    pub fn is_maximal(&self) -> bool {
        self.verdict == MaximalityVerdict::Maximal
    }
}

/// Replace f by -f when lc(f) = -1; everything downstream assumes the monic
/// representative of the generated ring.
pub fn normalize_unit_lc(f: &IntPoly) -> Result<IntPoly> {
    let lc = f.leading_coeff();
    if lc.is_one() {
        Ok(f.clone())
    } else if lc == BigInt::from(-1) {
        Ok(f.neg())
    } else {
        Err(Error::BadLeadingCoeff)
    }
}

/// The irreducible factors of f mod p whose lifts Uchida's restatement tests:
/// factors of gcd(fbar, fbar') when f' != 0 mod p (the repeated factors),
/// every irreducible factor of fbar when f' = 0 mod p.
fn uchida_test_factors(fbar: &FpPoly) -> Result<Vec<FpPoly>> {
    let deriv = fbar.derivative();
    if deriv.is_zero() {
        // all factors of fbar are factors of its iterated p-th root
        let mut radical = fbar.clone();
        while radical.degree().map_or(false, |d| d >= 1) && radical.derivative().is_zero() {
            radical = radical.pth_root()?;
        }
        if radical.degree().map_or(true, |d| d == 0) {
            return Ok(vec![]);
        }
        Ok(radical
            .factorize(0)
            .factors
            .into_iter()
            .map(|(f, _)| f)
            .collect())
    } else {
        let g = fbar.gcd(&deriv)?;
        if g.degree().map_or(true, |d| d == 0) {
            return Ok(vec![]);
        }
        Ok(g.factorize(0).factors.into_iter().map(|(f, _)| f).collect())
    }
}

/// p-maximality by Uchida's restatement: maximal iff no canonical lift of a
/// repeated irreducible factor divides f in Z/p^2[x].
pub fn is_p_maximal_uchida(f: &IntPoly, p: &BigInt) -> Result<MaximalityCertificate> {
    let f = normalize_unit_lc(f)?;
    let fbar = FpPoly::from_intpoly(&f, p)?;
    let p2 = p * p;
    let f_mod_p2 = f.reduce_mod(&p2);
    let mut tested = Vec::new();
    for phi_bar in uchida_test_factors(&fbar)? {
        let phi = phi_bar.lift();
        if f_mod_p2.is_divisible_by(&phi.reduce_mod(&p2))? {
            return Ok(MaximalityCertificate {
                prime: p.clone(),
                verdict: MaximalityVerdict::NonMaximal,
                witness: Some(phi.to_string()),
                mode: "uchida",
                tested,
            });
        }
        tested.push(phi.to_string());
    }
    Ok(MaximalityCertificate {
        prime: p.clone(),
        verdict: MaximalityVerdict::Maximal,
        witness: None,
        mode: "uchida",
        tested,
    })
}

/// p-maximality by the classical Dedekind criterion: with g = radical of fbar,
/// h = fbar/g, T = (lift(g)*lift(h) - f)/p, maximal iff gcd(Tbar, g, h) = 1.
pub fn is_p_maximal_dedekind(f: &IntPoly, p: &BigInt) -> Result<MaximalityCertificate> {
    let f = normalize_unit_lc(f)?;
    let fbar = FpPoly::from_intpoly(&f, p)?;
    let mut radical = FpPoly::constant(p.clone(), BigInt::one());
    for (part, _) in fbar.squarefree_decomposition() {
        radical = radical.mul(&part);
    }
    let h = fbar.div_exact(&radical);
    let t = radical
        .lift()
        .mul(&h.lift())
        .sub(&f)
        .div_scalar_exact(p);
    let tbar = FpPoly::from_intpoly(&t, p)?;
    let u = if tbar.is_zero() {
        radical.gcd(&h)?
    } else {
        tbar.gcd(&radical)?.gcd(&h)?
    };
    if u.degree().map_or(true, |d| d == 0) {
        return Ok(MaximalityCertificate {
            prime: p.clone(),
            verdict: MaximalityVerdict::Maximal,
            witness: None,
            mode: "dedekind",
            tested: vec![],
        });
    }
    // exhibit a replayable witness: any irreducible factor of u divides f mod p^2
    let phi = u.factorize(0).factors[0].0.lift();
    let p2 = p * p;
    if !f.reduce_mod(&p2).is_divisible_by(&phi.reduce_mod(&p2))? {
        return Err(Error::Internal(format!(
            "dedekind witness {} does not replay at p={}",
            phi, p
        )));
    }
    Ok(MaximalityCertificate {
        prime: p.clone(),
        verdict: MaximalityVerdict::NonMaximal,
        witness: Some(phi.to_string()),
        mode: "dedekind",
        tested: vec![],
    })
}

/// Primes that could witness non-maximality: exactly those with
/// v_p(disc f) >= 2. When the discriminant cannot be fully factored within
/// budget, the unfactored cofactor is reported and verdicts become conditional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePrimes {
    pub primes: Vec<BigInt>,
    pub discriminant: BigInt,
    pub unfactored_cofactor: Option<BigInt>,
}

pub fn candidate_primes(f: &IntPoly, budget: &FactorBudget) -> Result<CandidatePrimes> {
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return Err(Error::DiscriminantZero);
    }
    let fac = arith::factor_with_budget(&disc, budget);
    let primes = fac
        .factors
        .iter()
        .filter(|(_, e)| *e >= 2)
        .map(|(p, _)| p.clone())
        .collect();
    Ok(CandidatePrimes {
        primes,
        discriminant: disc,
        unfactored_cofactor: fac.unfactored,
    })
}

/// Irreducibility knowledge supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrredInput {
    Proven,
    Disproven,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleConclusion {
    Monogenic,
    NonMonogenic,
    /// All tested primes maximal, but the verdict is conditional: either the
    /// discriminant kept an unfactored cofactor or irreducibility is unknown.
    ConditionallyMonogenic,
    NotApplicableReducible,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub conclusion: OracleConclusion,
    pub certificates: Vec<MaximalityCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "crate::serde_opt_bigint")]
    pub unfactored_cofactor: Option<BigInt>,
    pub irreducibility: IrredInput,
}

/// Monogenicity by exhaustion over candidate primes. Both oracles run on every
/// candidate and must agree; disagreement aborts the run.
pub fn is_monogenic_oracle(
    f: &IntPoly,
    irreducibility: IrredInput,
    budget: &FactorBudget,
) -> Result<OracleReport> {
    if irreducibility == IrredInput::Disproven {
        return Ok(OracleReport {
            conclusion: OracleConclusion::NotApplicableReducible,
            certificates: vec![],
            unfactored_cofactor: None,
            irreducibility,
        });
    }
    let cands = candidate_primes(f, budget)?;
    let mut certificates = Vec::new();
    let mut failed = false;
    for p in &cands.primes {
        let u = is_p_maximal_uchida(f, p)?;
        let d = is_p_maximal_dedekind(f, p)?;
        if u.verdict != d.verdict {
            return Err(Error::Internal(format!(
                "oracle disagreement at p={}: uchida={:?}, dedekind={:?}",
                p, u.verdict, d.verdict
            )));
        }
        failed |= !u.is_maximal();
        certificates.push(u);
    }
    let conclusion = if failed {
        OracleConclusion::NonMonogenic
    } else if cands.unfactored_cofactor.is_some() || irreducibility == IrredInput::Unknown {
        OracleConclusion::ConditionallyMonogenic
    } else {
        OracleConclusion::Monogenic
    };
    Ok(OracleReport {
        conclusion,
        certificates,
        unfactored_cofactor: cands.unfactored_cofactor,
        irreducibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn uchida(s: &str, q: i64) -> MaximalityCertificate {
        is_p_maximal_uchida(&p(s), &BigInt::from(q)).unwrap()
    }

    fn dedekind(s: &str, q: i64) -> MaximalityCertificate {
        is_p_maximal_dedekind(&p(s), &BigInt::from(q)).unwrap()
    }

    #[test]
    fn uchida_examples() {
        let c = uchida("x^3-x^2-2*x-8", 2);
        assert_eq!(c.verdict, MaximalityVerdict::NonMaximal);
        assert_eq!(c.witness.as_deref(), Some("x"));

        assert!(uchida("x^4+1", 2).is_maximal());

        let c = uchida("x^2-5", 2);
        assert_eq!(c.verdict, MaximalityVerdict::NonMaximal);
        assert_eq!(c.witness.as_deref(), Some("x + 1"));
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind("x^2-5", 2).verdict, MaximalityVerdict::NonMaximal);
        assert!(dedekind("x^2-2", 2).is_maximal());
        assert_eq!(
            dedekind("x^3-x^2-2*x-8", 2).verdict,
            MaximalityVerdict::NonMaximal
        );
    }

    #[test]
    fn bad_leading_coeff() {
        assert!(matches!(
            is_p_maximal_uchida(&p("2*x^2+1"), &BigInt::from(3)),
            Err(Error::BadLeadingCoeff)
        ));
        // lc = -1 is normalized, not rejected
        assert!(is_p_maximal_uchida(&p("1-x^2"), &BigInt::from(3)).is_ok());
    }

    #[test]
    fn candidate_primes_examples() {
        let b = FactorBudget::default();
        let c = candidate_primes(&p("x^2-5"), &b).unwrap();
        assert_eq!(c.primes, vec![BigInt::from(2)]);
        assert_eq!(c.discriminant, BigInt::from(20));

        let c = candidate_primes(&p("x^2-x-1"), &b).unwrap();
        assert!(c.primes.is_empty());

        let c = candidate_primes(&p("x^3-x^2-2*x-8"), &b).unwrap();
        assert_eq!(c.primes, vec![BigInt::from(2)]);
        assert_eq!(c.discriminant, BigInt::from(-2012));

        assert!(matches!(
            candidate_primes(&p("x^2"), &b),
            Err(Error::DiscriminantZero)
        ));
    }

    #[test]
    fn oracle_examples() {
        let b = FactorBudget::default();
        let r = is_monogenic_oracle(&p("x^4+1"), IrredInput::Proven, &b).unwrap();
        assert_eq!(r.conclusion, OracleConclusion::Monogenic);

        let r = is_monogenic_oracle(&p("x^2-5"), IrredInput::Proven, &b).unwrap();
        assert_eq!(r.conclusion, OracleConclusion::NonMonogenic);
        assert_eq!(r.certificates[0].prime, BigInt::from(2));

        let r = is_monogenic_oracle(&p("x^2-x-1"), IrredInput::Proven, &b).unwrap();
        assert_eq!(r.conclusion, OracleConclusion::Monogenic);

        let r = is_monogenic_oracle(&p("x^2+1"), IrredInput::Unknown, &b).unwrap();
        assert_eq!(r.conclusion, OracleConclusion::ConditionallyMonogenic);

        // Z[sqrt(-3)] is famously not 2-maximal
        let r = is_monogenic_oracle(&p("x^2+3"), IrredInput::Proven, &b).unwrap();
        assert_eq!(r.conclusion, OracleConclusion::NonMonogenic);
    }

    #[test]
    fn oracles_agree_on_small_grid() {
        for den in [
            "x^2-5", "x^2-2", "x^2+1", "x^2+x+1", "x^3-x^2-2*x-8", "x^4+1",
            "x^3+2*x+2", "x^4-4*x^2+2", "x^3-3*x-1",
        ] {
            let f = p(den);
            for q in [2i64, 3, 5, 7, 11, 13] {
                let q = BigInt::from(q);
                let u = is_p_maximal_uchida(&f, &q).unwrap();
                let d = is_p_maximal_dedekind(&f, &q).unwrap();
                assert_eq!(u.verdict, d.verdict, "{} at {}", den, q);
            }
        }
    }

    #[test]
    fn witness_replays() {
        let f = p("x^3-x^2-2*x-8");
        let q = BigInt::from(2);
        for cert in [uchida("x^3-x^2-2*x-8", 2), dedekind("x^3-x^2-2*x-8", 2)] {
            let w: IntPoly = cert.witness.as_deref().unwrap().parse().unwrap();
            let p2 = &q * &q;
            assert!(f.reduce_mod(&p2).is_divisible_by(&w.reduce_mod(&p2)).unwrap());
        }
    }

    #[test]
    fn eisenstein_polys_are_maximal() {
        use crate::arith::SplitMix64;
        let mut rng = SplitMix64::new(99);
        for &q in &[2i64, 3, 5, 7, 11] {
            for _ in 0..20 {
                let deg = 2 + (rng.below(4) as usize);
                let mut coeffs = vec![BigInt::zero(); deg + 1];
                coeffs[deg] = BigInt::one();
                for c in coeffs.iter_mut().take(deg).skip(1) {
                    *c = BigInt::from(q) * BigInt::from(rng.below(7) as i64 - 3);
                }
                // constant with v_q exactly 1
                let mut u = rng.below(5) as i64 + 1;
                if u % q == 0 {
                    u += 1;
                }
                coeffs[0] = BigInt::from(q) * BigInt::from(u);
                let f = IntPoly::from_coeffs(coeffs);
                let qq = BigInt::from(q);
                assert!(is_p_maximal_uchida(&f, &qq).unwrap().is_maximal(), "{f}");
                assert!(is_p_maximal_dedekind(&f, &qq).unwrap().is_maximal(), "{f}");
            }
        }
    }
}
