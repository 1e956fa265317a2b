//! Polynomials with coefficients in Z/m (m = p or p^2), canonical
//! representatives in [0, m), and the finite quotient rings (Z/p^2)[x]/(phi)
//! that the orbit-stabilization procedure iterates in.

use crate::intpoly::IntPoly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModPoly {
    modulus: BigInt,
    coeffs: Vec<BigInt>,
}

impl ModPoly {
    pub fn from_coeffs(modulus: BigInt, coeffs: Vec<BigInt>) -> Self {
        assert!(modulus >= BigInt::from(2), "modulus must be >= 2");
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(&modulus)).collect();
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ModPoly { modulus, coeffs }
    }

    pub fn zero(modulus: BigInt) -> Self {
        ModPoly::from_coeffs(modulus, vec![])
    }

    pub fn constant(modulus: BigInt, c: BigInt) -> Self {
        ModPoly::from_coeffs(modulus, vec![c])
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
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

    /// Canonical lift with coefficients in [0, m).
    pub fn to_intpoly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.clone())
    }

    fn check_same(&self, other: &ModPoly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(ModPoly::from_coeffs(self.modulus.clone(), coeffs))
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Ok(ModPoly::from_coeffs(self.modulus.clone(), coeffs))
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(ModPoly::zero(self.modulus.clone()));
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
        Ok(ModPoly::from_coeffs(self.modulus.clone(), out))
    }

    /// Long division by a monic divisor (well-defined over Z/m).
    pub fn divmod_monic(&self, d: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        self.check_same(d)?;
        if !d.is_monic() {
            return Err(Error::NotMonicFactor);
        }
        let dd = d.degree().unwrap();
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let lead = rem.last().unwrap().clone();
            if !lead.is_zero() {
                quot[k] = lead.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let v = (&rem[k + i] - &lead * dc).mod_floor(&self.modulus);
                    rem[k + i] = v;
                }
            }
            rem.pop();
        }
        Ok((
            ModPoly::from_coeffs(self.modulus.clone(), quot),
            ModPoly::from_coeffs(self.modulus.clone(), rem),
        ))
    }

    /// Does the monic polynomial `d` divide `self` in Z/m[x]?
    pub fn is_divisible_by(&self, d: &ModPoly) -> Result<bool> {
        Ok(self.divmod_monic(d)?.1.is_zero())
    }
}

/// The finite ring (Z/m)[x]/(phi) for monic phi; home of the orbit values
/// r_(n+1) = f(r_n) whose stabilization bounds the iterate checks.
#[derive(Clone, Debug)]
pub struct QuotRing {
    modulus: BigInt,
    phi: ModPoly,
}

/// Element of a `QuotRing`: a representative of degree < deg(phi).
pub type QuotElem = ModPoly;

impl QuotRing {
    pub fn new(modulus: BigInt, phi: &IntPoly) -> Result<Self> {
        let phi = phi.reduce_mod(&modulus);
        if !phi.is_monic() || phi.degree() == Some(0) {
            return Err(Error::NotMonicFactor);
        }
        Ok(QuotRing { modulus, phi })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn phi(&self) -> &ModPoly {
        &self.phi
    }

    pub fn reduce(&self, f: &IntPoly) -> QuotElem {
        let m = f.reduce_mod(&self.modulus);
        m.divmod_monic(&self.phi).expect("same modulus").1
    }

    pub fn constant(&self, c: &BigInt) -> QuotElem {
        self.reduce(&IntPoly::constant(c.clone()))
    }

    pub fn mul(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        a.mul(b)
            .and_then(|p| p.divmod_monic(&self.phi))
            .expect("same modulus")
            .1
    }

    pub fn add(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        a.add(b).expect("same modulus")
    }

    /// Horner evaluation of an integer polynomial at a ring element.
    pub fn eval_poly(&self, f: &IntPoly, at: &QuotElem) -> QuotElem {
        let mut acc = ModPoly::zero(self.modulus.clone());
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, at);
            acc = self
                .add(&acc, &ModPoly::constant(self.modulus.clone(), c.clone()));
        }
        acc
    }
}
