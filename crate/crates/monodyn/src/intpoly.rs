//! Dense polynomials with exact integer coefficients: the carrier for f, f',
//! f^n(x) - a, Chebyshev polynomials and critical lifts.
//!
//! Coefficients are stored low-to-high, `coeffs[i]` is the coefficient of x^i,
//! with no trailing zeros; the zero polynomial is the empty vector.

use crate::modpoly::ModPoly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar (reduced, positive denominator).
pub type RatScalar = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Leading coefficient is +1 or -1 (what the monogenicity engine requires).
    pub fn has_unit_lc(&self) -> bool {
        let lc = self.leading_coeff();
        lc.is_one() || lc == BigInt::from(-1)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact scalar division; panics when not exact.
    pub fn div_scalar_exact(&self, s: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(s);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// p(q(x)) by Horner over the coefficients of p.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            if !c.is_zero() {
                acc = acc.add(&IntPoly::constant(c.clone()));
            }
        }
        acc
    }

    /// n-fold self-composition f^n, n >= 1, guarded on the resulting degree.
    pub fn iterate(&self, n: u32, max_degree: usize) -> Result<IntPoly> {
        assert!(n >= 1, "iterate needs n >= 1");
        let d = self.degree().expect("iterate of the zero polynomial");
        assert!(d >= 1, "iterate needs deg f >= 1");
        let mut target: usize = 1;
        for _ in 0..n {
            target = target
                .checked_mul(d)
                .filter(|&t| t <= max_degree)
                .ok_or(Error::DegreeOverflow {
                    degree: usize::MAX,
                    guard: max_degree,
                })?;
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, v: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    pub fn eval_rat(&self, v: &RatScalar) -> RatScalar {
        let mut acc = RatScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + RatScalar::from(c.clone());
        }
        acc
    }

    /// Coefficient-wise reduction into [0, m).
    pub fn reduce_mod(&self, m: &BigInt) -> ModPoly {
        ModPoly::from_coeffs(m.clone(), self.coeffs.clone())
    }

    /// f(x + s)
    pub fn shift(&self, s: &BigInt) -> IntPoly {
        let xs = IntPoly::from_coeffs(vec![s.clone(), BigInt::one()]);
        self.compose(&xs)
    }

    /// x^deg * f(1/x): coefficient reversal.
    pub fn reverse(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::from_coeffs(coeffs)
    }

    /// gcd of coefficients (non-negative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder: R with lc(B)^(dA-dB+1) * A = Q*B + R, deg R < deg B.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading_coeff();
        let mut r = self.clone();
        let da = match r.degree() {
            Some(d) if d >= db => d,
            _ => return r,
        };
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lead = r.leading_coeff();
            // r <- lc(B)*r - lc(r)*x^(dr-db)*B cancels the top coefficient
            r = r.mul_scalar(&lb).sub(&IntPoly::monomial(lead, dr - db).mul(b));
            steps -= 1;
        }
        for _ in 0..steps {
            r = r.mul_scalar(&lb);
        }
        r
    }

    /// Exact division when `d` divides `self` in Z[x]; None otherwise.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.degree()?;
        let ld = d.leading_coeff();
        let mut r = self.clone();
        let mut q = vec![
            BigInt::zero();
            self.degree()?.checked_sub(dd).map(|k| k + 1)?
        ];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (c, rem) = r.leading_coeff().div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            q[dr - dd] = c.clone();
            r = r.sub(&IntPoly::monomial(c, dr - dd).mul(d));
            if r.is_zero() {
                return Some(IntPoly::from_coeffs(q));
            }
        }
        None
    }

    /// Primitive gcd in Z[x] (positive leading coefficient), via the primitive PRS.
    pub fn gcd_primitive(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return a.primitive_part();
            }
            if b.degree() == Some(0) {
                return IntPoly::one();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
    }

    /// Resultant via the subresultant PRS.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::Internal("resultant of zero polynomial".into()));
        }
        let (da, db) = (self.degree().unwrap(), other.degree().unwrap());
        if da == 0 {
            return Ok(self.leading_coeff().pow(db as u32));
        }
        if db == 0 {
            return Ok(other.leading_coeff().pow(da as u32));
        }
        let mut sign = 1i8;
        let (mut a, mut b) = (self.clone(), other.clone());
        if da < db {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
        }
        let ca = a.content();
        let cb = b.content();
        a = a.div_scalar_exact(&ca);
        b = b.div_scalar_exact(&cb);
        let mut t = ca.pow(b.degree().unwrap() as u32) * cb.pow(a.degree().unwrap() as u32);
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return Ok(BigInt::zero());
            }
            a = b;
            let denom = &g * h.pow(delta);
            b = r.div_scalar_exact(&denom);
            g = a.leading_coeff();
            h = if delta == 0 {
                h
            } else {
                let (q, rem) = g.pow(delta).div_rem(&h.pow(delta - 1));
                assert!(rem.is_zero());
                q
            };
            if b.degree() == Some(0) {
                break;
            }
        }
        let da = a.degree().unwrap() as u32;
        let (hh, rem) = b.leading_coeff().pow(da).div_rem(&h.pow(da.saturating_sub(1)));
        assert!(rem.is_zero());
        if sign < 0 {
            t = -t;
        }
        Ok(t * hh)
    }

    /// disc(p) = (-1)^(d(d-1)/2) * res(p, p') / lc(p)
    pub fn discriminant(&self) -> Result<BigInt> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Internal("discriminant needs deg >= 1".into())),
        };
        if d == 1 {
            return Ok(BigInt::one());
        }
        let res = self.resultant(&self.derivative())?;
        let (q, rem) = res.div_rem(&self.leading_coeff());
        assert!(rem.is_zero(), "lc must divide res(p, p')");
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }

    /// Reciprocal transform of -b * f^n(x + c) + (1 + b*gamma): monic exactly
    /// when f^n(c) = gamma (the constant coefficient before reversal is 1).
    pub fn reciprocal_shift(
        &self,
        c: &BigInt,
        b: &BigInt,
        gamma: &BigInt,
        n: u32,
        max_degree: usize,
    ) -> Result<IntPoly> {
        let fn_shift = self.iterate(n, max_degree)?.shift(c);
        let g = fn_shift
            .mul_scalar(&-b)
            .add(&IntPoly::constant(BigInt::one() + b * gamma));
        if !g.constant_term().is_one() {
            return Err(Error::NotMonic);
        }
        Ok(g.reverse())
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Text format: "x^4 - 4*x^2 + 2" (descending powers, '^' for exponents,
// optional '*'). The printer emits the canonical form; parse/print round-trip
// bit-exactly.
// ---------------------------------------------------------------------------

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntPoly> {
        let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if bytes.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut pos = 0usize;
        let mut terms: Vec<(BigInt, usize)> = Vec::new();
        let err = |msg: &str| Error::Parse(format!("{} (in {:?})", msg, s));
        while pos < bytes.len() {
            let mut negative = false;
            // sign run
            loop {
                match bytes.get(pos) {
                    Some('+') => pos += 1,
                    Some('-') => {
                        negative = !negative;
                        pos += 1;
                    }
                    _ => break,
                }
            }
            if pos >= bytes.len() {
                return Err(err("dangling sign"));
            }
            // coefficient digits
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = bytes[start..pos].iter().collect();
            let mut coeff = if digits.is_empty() {
                None
            } else {
                Some(digits.parse::<BigInt>().map_err(|_| err("bad number"))?)
            };
            // optional '*'
            let mut saw_star = false;
            if bytes.get(pos) == Some(&'*') {
                if coeff.is_none() {
                    return Err(err("'*' without coefficient"));
                }
                saw_star = true;
                pos += 1;
            }
            // optional x-part
            let mut exp = 0usize;
            if bytes.get(pos) == Some(&'x') {
                pos += 1;
                exp = 1;
                if bytes.get(pos) == Some(&'^') {
                    pos += 1;
                    let estart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if estart == pos {
                        return Err(err("missing exponent"));
                    }
                    let etxt: String = bytes[estart..pos].iter().collect();
                    exp = etxt.parse::<usize>().map_err(|_| err("bad exponent"))?;
                    if exp > 1_000_000 {
                        return Err(err("exponent too large"));
                    }
                }
            } else if saw_star {
                return Err(err("'*' not followed by x"));
            } else if coeff.is_none() {
                return Err(err("expected term"));
            }
            let mut c = coeff.take().unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            terms.push((c, exp));
        }
        let max_exp = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); max_exp + 1];
        for (c, e) in terms {
            coeffs[e] += c;
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn mul_difference_of_squares() {
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
    }

    #[test]
    fn additive_identity() {
        let q = p("3*x^5 - 2");
        assert_eq!(q.add(&IntPoly::zero()), q);
    }

    #[test]
    fn mul_quartic() {
        // (x^2-2)(x^2-3) expanded by hand
        assert_eq!(&p("x^2-2") * &p("x^2-3"), p("x^4 - 5*x^2 + 6"));
    }

    #[test]
    fn compose_cases() {
        assert_eq!(p("x^2").compose(&p("x^2")), p("x^4"));
        assert_eq!(p("x^2-2").compose(&p("x^2-2")), p("x^4 - 4*x^2 + 2"));
        assert_eq!(p("1-x^2").compose(&p("1-x^2")), p("2*x^2 - x^4"));
    }

    #[test]
    fn iterate_cases() {
        assert_eq!(p("x^2").iterate(3, 4096).unwrap(), p("x^8"));
        assert_eq!(p("x^2-2").iterate(2, 4096).unwrap(), p("x^4 - 4*x^2 + 2"));
        assert_eq!(p("1-x^3").iterate(1, 4096).unwrap(), p("1-x^3"));
        assert!(matches!(
            p("x^2").iterate(13, 4096),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn derivative_cases() {
        assert_eq!(p("x^3-x^2-2*x-8").derivative(), p("3*x^2-2*x-2"));
        assert_eq!(p("7").derivative(), IntPoly::zero());
        assert_eq!(p("1-x^5").derivative(), p("-5*x^4"));
    }

    #[test]
    fn eval_cases() {
        let t3 = p("x^3-3*x");
        assert_eq!(t3.eval(&BigInt::from(2)), BigInt::from(2));
        assert_eq!(t3.eval(&BigInt::from(-2)), BigInt::from(-2));
        assert_eq!(p("x^2-2").eval(&BigInt::zero()), BigInt::from(-2));
        let half = RatScalar::new(BigInt::one(), BigInt::from(2));
        assert_eq!(
            p("x^2").eval_rat(&half),
            RatScalar::new(BigInt::one(), BigInt::from(4))
        );
    }

    #[test]
    fn reduce_mod_cases() {
        let f = p("x^3-x^2-2*x-8");
        assert_eq!(f.reduce_mod(&BigInt::from(2)).to_intpoly(), p("x^3+x^2"));
        assert_eq!(
            p("3*x^2-2*x-2").reduce_mod(&BigInt::from(2)).to_intpoly(),
            p("x^2")
        );
        // idempotence of lift-then-reduce
        let m = BigInt::from(9);
        let r = f.reduce_mod(&m).to_intpoly();
        assert_eq!(r.reduce_mod(&m).to_intpoly(), r);
    }

    #[test]
    fn resultant_and_discriminant() {
        assert_eq!(p("x^2-5").discriminant().unwrap(), BigInt::from(20));
        assert_eq!(
            p("x^3-x^2-2*x-8").discriminant().unwrap(),
            BigInt::from(-2012)
        );
        // linear resultant law: res(x - a, q) = q(a)
        let q = p("x^4+3*x-7");
        for a in -5i64..=5 {
            let lin = IntPoly::from_i64(&[-a, 1]);
            assert_eq!(lin.resultant(&q).unwrap(), q.eval(&BigInt::from(a)));
        }
    }

    #[test]
    fn reciprocal_shift_cases() {
        // f = 1-x^2, gamma=0, c=1, b=3, n=1 -> x^2+6x+3 (3-Eisenstein)
        let f = p("1-x^2");
        let h = f
            .reciprocal_shift(&BigInt::one(), &BigInt::from(3), &BigInt::zero(), 1, 4096)
            .unwrap();
        assert_eq!(h, p("x^2+6*x+3"));
        // f = x^2-2, gamma=2, c=2, b=3, n=1 -> x^2-12x-3
        let g = p("x^2-2")
            .reciprocal_shift(&BigInt::from(2), &BigInt::from(3), &BigInt::from(2), 1, 4096)
            .unwrap();
        assert_eq!(g, p("x^2-12*x-3"));
        // fixed point c = gamma: constant coefficient forced to one, any b
        let ok = p("x^2-2").reciprocal_shift(
            &BigInt::from(2),
            &BigInt::from(17),
            &BigInt::from(2),
            2,
            4096,
        );
        assert!(ok.is_ok());
        // precondition violated: f(1) = -1 != 0
        assert!(matches!(
            p("x^2-2").reciprocal_shift(&BigInt::one(), &BigInt::from(3), &BigInt::zero(), 1, 4096),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn parse_print_examples() {
        for s in [
            "x^4 - 4*x^2 + 2",
            "x^3 - x^2 - 2*x - 8",
            "-x^2 + 1",
            "-x^4 + 2*x^2",
            "0",
            "7",
            "-7",
            "x",
            "x^10 + x",
        ] {
            let q: IntPoly = s.parse().unwrap();
            assert_eq!(q.to_string(), s, "canonical round trip for {s}");
        }
        // liberal inputs normalize
        assert_eq!(p("1-x^2").to_string(), "-x^2 + 1");
        assert_eq!(p("3x").to_string(), "3*x");
        assert_eq!(p("x^2 + x^2"), p("2*x^2"));
        assert!("x^".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
        assert!("2**x".parse::<IntPoly>().is_err());
    }

    // Sylvester-matrix resultant by fraction-free (Bareiss) elimination:
    // the independent oracle for the subresultant implementation.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let n = a.degree().unwrap();
        let m = b.degree().unwrap();
        let size = n + m;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..m {
            for (k, idx) in (0..=n).rev().enumerate() {
                mat[row][row + k] = a.coeff(idx);
            }
        }
        for row in 0..n {
            for (k, idx) in (0..=m).rev().enumerate() {
                mat[m + row][row + k] = b.coeff(idx);
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                let swap = (k + 1..size).find(|&i| !mat[i][k].is_zero());
                match swap {
                    Some(i) => {
                        mat.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = (&mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j]) / &prev;
                    mat[i][j] = v;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        sign * mat[size - 1][size - 1].clone()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(
            a in proptest::collection::vec(any::<i128>(), 0..17),
            b in proptest::collection::vec(any::<i128>(), 0..17),
            c in proptest::collection::vec(any::<i128>(), 0..17),
        ) {
            let pa = IntPoly::from_coeffs(a.iter().map(|&v| BigInt::from(v)).collect());
            let pb = IntPoly::from_coeffs(b.iter().map(|&v| BigInt::from(v)).collect());
            let pc = IntPoly::from_coeffs(c.iter().map(|&v| BigInt::from(v)).collect());
            prop_assert_eq!(pa.add(&pb), pb.add(&pa));
            prop_assert_eq!(pa.mul(&pb), pb.mul(&pa));
            prop_assert_eq!(pa.mul(&pb).mul(&pc), pa.mul(&pb.mul(&pc)));
            prop_assert_eq!(pa.mul(&pb.add(&pc)), pa.mul(&pb).add(&pa.mul(&pc)));
        }

        #[test]
        fn compose_associative(
            a in proptest::collection::vec(-50i64..50, 0..5),
            b in proptest::collection::vec(-50i64..50, 0..5),
            c in proptest::collection::vec(-50i64..50, 0..5),
        ) {
            let pa = IntPoly::from_i64(&a);
            let pb = IntPoly::from_i64(&b);
            let pc = IntPoly::from_i64(&c);
            prop_assert_eq!(pa.compose(&pb.compose(&pc)), pa.compose(&pb).compose(&pc));
        }

        #[test]
        fn iterate_is_homomorphism(
            coeffs in proptest::collection::vec(-9i64..9, 3..4),
            m in 1u32..3, n in 1u32..3,
        ) {
            let f = IntPoly::from_i64(&coeffs);
            prop_assume!(f.degree().map_or(false, |d| d >= 1));
            let lhs = f.iterate(m + n, 4096).unwrap();
            let rhs = f.iterate(m, 4096).unwrap().compose(&f.iterate(n, 4096).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduce_mod_is_morphism(
            a in proptest::collection::vec(-1000i64..1000, 0..8),
            b in proptest::collection::vec(-1000i64..1000, 0..8),
            m in 2u32..100,
        ) {
            let pa = IntPoly::from_i64(&a);
            let pb = IntPoly::from_i64(&b);
            let m = BigInt::from(m);
            let lhs = pa.mul(&pb).reduce_mod(&m);
            let rhs = pa.reduce_mod(&m).mul(&pb.reduce_mod(&m)).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = pa.add(&pb).reduce_mod(&m);
            let rhs = pa.reduce_mod(&m).add(&pb.reduce_mod(&m)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn subresultant_matches_sylvester(
            a in proptest::collection::vec(-20i64..20, 2..9),
            b in proptest::collection::vec(-20i64..20, 2..9),
        ) {
            let pa = IntPoly::from_i64(&a);
            let pb = IntPoly::from_i64(&b);
            prop_assume!(pa.degree().map_or(false, |d| d >= 1));
            prop_assume!(pb.degree().map_or(false, |d| d >= 1));
            prop_assert_eq!(pa.resultant(&pb).unwrap(), sylvester_resultant(&pa, &pb));
        }

        #[test]
        fn parse_print_roundtrip(coeffs in proptest::collection::vec(any::<i64>(), 0..10)) {
            let q = IntPoly::from_i64(&coeffs);
            let text = q.to_string();
            let back: IntPoly = text.parse().unwrap();
            prop_assert_eq!(back, q);
        }
    }
}
