//! Polynomial algebra over F_p: gcd, characteristic-p squarefree decomposition,
//! p-th root extraction, and full factorization into irreducibles
//! (distinct-degree then equal-degree splitting).
//!
//! Equal-degree splitting is randomized but driven by a deterministic stream
//! seeded from (p, coefficient hash), and the factor list is sorted, so runs
//! are bit-reproducible.

use crate::arith::{self, SplitMix64};
use crate::intpoly::IntPoly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpFactorization {
    pub unit: BigInt,
    pub factors: Vec<(FpPoly, u32)>,
}

impl FpFactorization {
    /// unit * prod factor^mult, for replay checks.
    pub fn product(&self, p: &BigInt) -> FpPoly {
        let mut acc = FpPoly::constant(p.clone(), self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

impl FpPoly {
    /// Checked constructor: p must be prime.
    pub fn new(p: BigInt, coeffs: Vec<BigInt>) -> Result<Self> {
        if !arith::is_prime(&p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::new_unchecked(p, coeffs))
    }

    pub(crate) fn new_unchecked(p: BigInt, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(&p)).collect();
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_intpoly(f: &IntPoly, p: &BigInt) -> Result<Self> {
        FpPoly::new(p.clone(), f.coeffs().to_vec())
    }

    pub fn zero(p: BigInt) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: BigInt, c: BigInt) -> Self {
        Self::new_unchecked(p, vec![c])
    }

    pub fn x(p: BigInt) -> Self {
        Self::new_unchecked(p, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Canonical lift to Z[x] with coefficients in [0, p).
    pub fn lift(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.clone())
    }

    fn same_field(&self, other: &FpPoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new_unchecked(self.p.clone(), coeffs)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::new_unchecked(self.p.clone(), coeffs)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p.clone());
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
        Self::new_unchecked(self.p.clone(), out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> FpPoly {
        Self::new_unchecked(self.p.clone(), self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> FpPoly {
        let mut acc = FpPoly::constant(self.p.clone(), BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = arith::mod_inverse(&self.leading_coeff(), &self.p)
            .expect("leading coefficient invertible mod prime");
        self.mul_scalar(&inv)
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new_unchecked(self.p.clone(), coeffs)
    }

    pub fn eval(&self, v: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * v + c).mod_floor(&self.p);
        }
        acc
    }

    /// Division with remainder; the divisor's leading coefficient is inverted mod p.
    pub fn divmod(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        debug_assert_eq!(self.p, d.p);
        let dd = d.degree().expect("division by zero polynomial");
        let inv = arith::mod_inverse(&d.leading_coeff(), &self.p).expect("prime modulus");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let lead = (rem.last().unwrap() * &inv).mod_floor(&self.p);
            if !lead.is_zero() {
                quot[k] = lead.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let v = (&rem[k + i] - &lead * dc).mod_floor(&self.p);
                    rem[k + i] = v;
                }
            }
            rem.pop();
        }
        (
            Self::new_unchecked(self.p.clone(), quot),
            Self::new_unchecked(self.p.clone(), rem),
        )
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divmod(d).1
    }

    pub fn div_exact(&self, d: &FpPoly) -> FpPoly {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact division in F_p[x]");
        q
    }

    /// Monic gcd; gcd(a, 0) = monic(a).
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::Internal("gcd(0, 0) undefined".into()));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// self^e mod m, square-and-multiply.
    pub fn pow_mod(&self, e: &BigInt, m: &FpPoly) -> FpPoly {
        debug_assert!(!e.is_negative());
        let mut base = self.rem(m);
        let mut acc = FpPoly::constant(self.p.clone(), BigInt::one());
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// g with g^p = self; over F_p this is coefficient transport g_j = a_(p*j).
    pub fn pth_root(&self) -> Result<FpPoly> {
        if self.degree().map_or(true, |d| d == 0) {
            // constants are fixed by Frobenius
            return Ok(self.clone());
        }
        let deg = self.degree().unwrap();
        let p = self
            .p
            .to_usize()
            .filter(|&p| p <= deg)
            .ok_or(Error::NotAPthPower)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && i % p != 0 {
                return Err(Error::NotAPthPower);
            }
        }
        let coeffs = (0..=deg / p).map(|j| self.coeff(j * p)).collect();
        Ok(Self::new_unchecked(self.p.clone(), coeffs))
    }

    /// Pairwise-coprime squarefree parts with multiplicities; the product of
    /// part^multiplicity reconstitutes monic(self). Handles zero-derivative
    /// blocks by p-th root recursion.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero());
        let f = self.monic();
        let mut out = sfd_monic(&f);
        out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        out
    }

    /// Complete factorization into monic irreducibles with multiplicities.
    /// `seed` perturbs the deterministic splitting stream (0 for the default);
    /// the sorted output does not depend on it.
    pub fn factorize(&self, seed: u64) -> FpFactorization {
        assert!(
            !self.is_zero() && self.degree() != Some(0),
            "factorize needs deg >= 1"
        );
        let unit = self.leading_coeff();
        let f = self.monic();
        let mut rng = SplitMix64::new(seed ^ self.fingerprint());
        let mut factors: Vec<(FpPoly, u32)> = Vec::new();
        for (part, mult) in f.squarefree_decomposition() {
            for (prod, d) in distinct_degree(&part) {
                for irr in equal_degree_split(&prod, d, &mut rng) {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        FpFactorization { unit, factors }
    }

    /// Rabin's irreducibility test: x^(p^n) = x mod f and, for each prime l | n,
    /// gcd(x^(p^(n/l)) - x, f) = 1. Used as the independent check on factors.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = FpPoly::x(self.p.clone());
        let frob_iter = |count: usize| {
            let mut h = x.rem(&f);
            for _ in 0..count {
                h = h.pow_mod(&self.p, &f);
            }
            h
        };
        if frob_iter(n) != x.rem(&f) {
            return false;
        }
        let mut m = n;
        let mut prime_divs = Vec::new();
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                prime_divs.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            prime_divs.push(m);
        }
        for l in prime_divs {
            let h = frob_iter(n / l);
            let g = h.sub(&x.rem(&f)).gcd(&f).expect("same field");
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut mix = |v: u64| {
            h ^= v;
            h = h.wrapping_mul(0x100000001b3);
        };
        for limb in self.p.iter_u64_digits() {
            mix(limb);
        }
        for c in &self.coeffs {
            mix(c.iter_u64_digits().next().unwrap_or(0));
            mix(0x9e37);
        }
        h
    }
}

fn cmp_poly(a: &FpPoly, b: &FpPoly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

fn sfd_monic(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    if f.degree().map_or(true, |d| d == 0) {
        return vec![];
    }
    let p = f.prime().clone();
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = f.pth_root().expect("zero derivative implies p-th power");
        let pu = p.to_u32().expect("p <= deg here");
        return sfd_monic(&root)
            .into_iter()
            .map(|(g, m)| (g, m * pu))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&deriv).expect("same field");
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.degree().map_or(false, |d| d > 0) {
        let y = w.gcd(&c).expect("same field");
        let z = w.div_exact(&y);
        if z.degree().map_or(false, |d| d > 0) {
            out.push((z, i));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if c.degree().map_or(false, |d| d > 0) {
        let root = c.pth_root().expect("leftover block is a p-th power");
        let pu = p.to_u32().expect("p <= deg here");
        out.extend(sfd_monic(&root).into_iter().map(|(g, m)| (g, m * pu)));
    }
    out
}

/// (product of all irreducible factors of degree d, d) for monic squarefree input.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.prime().clone();
    let mut out = Vec::new();
    let mut v = f.clone();
    let x = FpPoly::x(p.clone());
    let mut h = x.rem(&v);
    let mut d = 0usize;
    while let Some(dv) = v.degree() {
        if dv == 0 {
            break;
        }
        d += 1;
        if 2 * d > dv {
            out.push((v, dv));
            break;
        }
        h = h.pow_mod(&p, &v);
        let g = h.sub(&x.rem(&v)).gcd(&v).expect("same field");
        if g.degree().map_or(false, |dg| dg > 0) {
            out.push((g.clone(), d));
            v = v.div_exact(&g);
            h = h.rem(&v);
        }
    }
    out
}

fn random_poly_below(p: &BigInt, deg_bound: usize, rng: &mut SplitMix64) -> FpPoly {
    let coeffs = (0..deg_bound)
        .map(|_| {
            if let Some(pv) = p.to_u64() {
                BigInt::from(rng.below(pv))
            } else {
                let mut v = BigInt::zero();
                for _ in 0..(p.bits() / 64 + 1) {
                    v = (v << 64) + BigInt::from(rng.next_u64());
                }
                v.mod_floor(p)
            }
        })
        .collect();
    FpPoly::new_unchecked(p.clone(), coeffs)
}

/// Cantor-Zassenhaus: split a monic product of distinct irreducibles of equal
/// degree d into the irreducibles. Odd p uses the (p^d-1)/2 power map; p = 2
/// uses the trace map.
fn equal_degree_split(f: &FpPoly, d: usize, rng: &mut SplitMix64) -> Vec<FpPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let p = f.prime().clone();
    let two = BigInt::from(2);
    loop {
        let a = random_poly_below(&p, n, rng);
        if a.degree().map_or(true, |da| da < 1) {
            continue;
        }
        let b = if p == two {
            // trace: a + a^2 + a^4 + ... + a^(2^(d-1))
            let mut acc = a.rem(f);
            let mut t = a.rem(f);
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e: BigInt = (p.pow(d as u32) - 1) / &two;
            let one = FpPoly::constant(p.clone(), BigInt::one());
            a.pow_mod(&e, f).sub(&one)
        };
        let g = b.gcd(f).expect("same field");
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let mut left = equal_degree_split(&g, d, rng);
                let right = equal_degree_split(&f.div_exact(&g), d, rng);
                left.extend(right);
                return left;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(s: &str, p: u64) -> FpPoly {
        let f: IntPoly = s.parse().unwrap();
        FpPoly::from_intpoly(&f, &BigInt::from(p)).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(matches!(
            FpPoly::new(BigInt::from(6), vec![BigInt::one()]),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn gcd_cases() {
        assert_eq!(fp("x^2+1", 2).gcd(&fp("x+1", 2)).unwrap(), fp("x+1", 2));
        let a = fp("3*x^3+1", 5);
        assert_eq!(a.gcd(&FpPoly::zero(BigInt::from(5))).unwrap(), a.monic());
        assert_eq!(fp("x^3+x^2", 2).gcd(&fp("x^2", 2)).unwrap(), fp("x^2", 2));
        assert!(matches!(
            fp("x", 2).gcd(&fp("x", 3)),
            Err(Error::ModulusMismatch)
        ));
    }

    #[test]
    fn pth_root_cases() {
        assert_eq!(fp("x^2+1", 2).pth_root().unwrap(), fp("x+1", 2));
        assert_eq!(fp("x^6+x^3+1", 3).pth_root().unwrap(), fp("x^2+x+1", 3));
        assert!(matches!(fp("x", 2).pth_root(), Err(Error::NotAPthPower)));
    }

    #[test]
    fn squarefree_cases() {
        assert_eq!(
            fp("x^2+1", 2).squarefree_decomposition(),
            vec![(fp("x+1", 2), 2)]
        );
        // (x^3+x)(x+1)^2 over F_5
        let f = fp("x^3+x", 5).mul(&fp("x+1", 5)).mul(&fp("x+1", 5));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts, vec![(fp("x+1", 5), 2), (fp("x^3+x", 5), 1)]);
        // x^p over F_p
        assert_eq!(
            fp("x^5", 5).squarefree_decomposition(),
            vec![(fp("x", 5), 5)]
        );
        // p-th power times a simple factor: (x+1)^3 * (x^2+x+2) over F_3
        let g = fp("x+1", 3).pow(3).mul(&fp("x^2+x+2", 3));
        let parts = g.squarefree_decomposition();
        assert_eq!(parts, vec![(fp("x+1", 3), 3), (fp("x^2+x+2", 3), 1)]);
    }

    #[test]
    fn factorize_cases() {
        let f = fp("x^2+1", 2).factorize(0);
        assert_eq!(f.unit, BigInt::one());
        assert_eq!(f.factors, vec![(fp("x+1", 2), 2)]);

        let f = fp("x^2+1", 5).factorize(0);
        assert_eq!(f.factors, vec![(fp("x+2", 5), 1), (fp("x+3", 5), 1)]);

        // Dedekind's example: f'(x) = 3x^2-2x-2 = x^2 mod 2
        let f = fp("3*x^2-2*x-2", 2).factorize(0);
        assert_eq!(f.unit, BigInt::one());
        assert_eq!(f.factors, vec![(fp("x", 2), 2)]);
    }

    #[test]
    fn factorize_reconstructs_and_is_irreducible() {
        let mut rng = SplitMix64::new(7);
        for &p in &[2u64, 3, 5, 7, 13, 101] {
            for _ in 0..12 {
                let deg = 1 + (rng.below(8) as usize);
                let mut poly = random_poly_below(&BigInt::from(p), deg + 1, &mut rng);
                while poly.degree().map_or(true, |d| d < 1) {
                    poly = random_poly_below(&BigInt::from(p), deg + 1, &mut rng);
                }
                let fac = poly.factorize(0);
                assert_eq!(fac.product(&BigInt::from(p)), poly, "reconstruction at p={p}");
                for (irr, _) in &fac.factors {
                    assert!(irr.is_irreducible(), "factor {:?} at p={p}", irr.lift());
                    assert!(irr.is_monic());
                }
            }
        }
    }

    #[test]
    fn factorize_is_seed_independent() {
        let f = fp("x^6+x^5+3*x+4", 13);
        assert_eq!(f.factorize(0), f.factorize(12345));
    }

    #[test]
    fn factorize_bigger_degree_mix() {
        // degree-32 products over several p reconstruct exactly
        let mut rng = SplitMix64::new(41);
        for &p in &[2u64, 3, 13] {
            let a = random_poly_below(&BigInt::from(p), 17, &mut rng);
            let b = random_poly_below(&BigInt::from(p), 17, &mut rng);
            if a.degree().map_or(true, |d| d < 1) || b.degree().map_or(true, |d| d < 1) {
                continue;
            }
            let f = a.mul(&b);
            let fac = f.factorize(0);
            assert_eq!(fac.product(&BigInt::from(p)), f);
        }
    }

    #[test]
    fn pth_root_roundtrip() {
        let mut rng = SplitMix64::new(3);
        for &p in &[2u64, 3, 5] {
            for _ in 0..10 {
                let g = random_poly_below(&BigInt::from(p), 4, &mut rng);
                if g.is_zero() {
                    continue;
                }
                let gp = g.pow(p as u32);
                assert_eq!(gp.pth_root().unwrap(), g);
            }
        }
    }

    #[test]
    fn squarefree_parts_are_coprime_and_squarefree() {
        let mut rng = SplitMix64::new(11);
        for &p in &[2u64, 3, 5, 7] {
            for _ in 0..10 {
                let f = random_poly_below(&BigInt::from(p), 9, &mut rng);
                if f.degree().map_or(true, |d| d < 1) {
                    continue;
                }
                let parts = f.squarefree_decomposition();
                for (i, (gi, _)) in parts.iter().enumerate() {
                    let d = gi.derivative();
                    assert!(!d.is_zero(), "squarefree parts have nonzero derivative");
                    assert_eq!(gi.gcd(&d).unwrap().degree(), Some(0), "part is squarefree");
                    for (gj, _) in parts.iter().skip(i + 1) {
                        assert_eq!(gi.gcd(gj).unwrap().degree(), Some(0), "parts coprime");
                    }
                }
            }
        }
    }
}
