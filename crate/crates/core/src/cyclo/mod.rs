//! Exact arithmetic in cyclotomic fields `Q(zeta_R)`.
//!
//! Elements are stored as polynomials in the distinguished primitive root
//! `zeta_R`, reduced modulo the cyclotomic polynomial `Phi_R`, so every
//! element has a unique normal form and equality is plain comparison.
//!
//! The choice of `zeta_R` is the one convention that the age grading
//! depends on. The "opposite" identification is obtained by applying the
//! inverse map to group generators, never by switching roots here.

mod parse;
mod poly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_literal, LiteralError};
pub use poly::cyclotomic_polynomial;

/// The field `Q(zeta_R)` with its defining polynomial.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u64,
    min_poly: Vec<i64>,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic field of order 0");
        Arc::new(CyclotomicField {
            order,
            min_poly: cyclotomic_polynomial(order),
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Euler totient of the order.
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// `Phi_R`, lowest degree first.
    pub fn min_poly(&self) -> &[i64] {
        &self.min_poly
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

/// An element of `Q(zeta_R)`: `sum_k (num[k] / den) zeta^k` with
/// `k < phi(R)`, `den > 0` and `gcd(num..., den) = 1`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(field: &Arc<CyclotomicField>, mut num: Vec<BigInt>, den: BigInt) -> Self {
        poly::reduce_monic(&mut num, &field.min_poly);
        let mut x = CycNum {
            field: Arc::clone(field),
            num,
            den,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CycNum {
            field: Arc::clone(field),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, value: i64) -> Self {
        Self::from_rational(field, &BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, value: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = value.numer().clone();
        Self::from_parts(field, num, value.denom().clone())
    }

    /// The distinguished primitive root `zeta_R`.
    pub fn zeta(field: &Arc<CyclotomicField>) -> Self {
        Self::zeta_pow(field, 1)
    }

    /// `zeta_R^k` for any integer `k` (taken modulo `R`).
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        let mut num = vec![BigInt::zero(); (e + 1).max(field.degree())];
        num[e] = BigInt::one();
        Self::from_parts(field, num, BigInt::one())
    }

    /// Builds `sum coeffs[k] zeta^k`; `coeffs` may have any length.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        if num.len() < field.degree() {
            num.resize(field.degree(), BigInt::zero());
        }
        Self::from_parts(field, num, den)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Normal-form coefficients, one rational per power of `zeta` below
    /// `phi(R)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    fn check_field(&self, other: &CycNum) -> Result<()> {
        if self.field.order != other.field.order {
            return Err(Error::FieldMismatch {
                left: self.field.order,
                right: other.field.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_field(other)?;
        let num = if self.den == other.den {
            self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &other.den + b * &self.den)
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Ok(Self::from_parts(&self.field, num, den))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycNum::zero(&self.field));
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_parts(&self.field, prod, &self.den * &other.den))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_R` over the rationals.
    pub fn inverse(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = poly::QPoly::new(self.coeffs());
        let m = poly::QPoly::from_ints(&self.field.min_poly);
        let inv = a
            .inverse_mod(&m)
            .ok_or_else(|| Error::invariant("nonzero element without inverse modulo Phi_R"))?;
        Ok(Self::from_coeffs(&self.field, &inv.0))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut exp: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Image under `zeta_N -> zeta_M^(M/N)` in a field `Q(zeta_M)` with
    /// `N | M`.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<CycNum> {
        let (n, m) = (self.field.order, target.order);
        if m % n != 0 {
            return Err(Error::Input(format!(
                "cannot embed Q(zeta_{n}) into Q(zeta_{m}): {n} does not divide {m}"
            )));
        }
        let step = (m / n) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len().saturating_sub(1)) * step + 1];
        for (k, c) in self.num.iter().enumerate() {
            num[k * step] = c.clone();
        }
        if num.len() < target.degree() {
            num.resize(target.degree(), BigInt::zero());
        }
        Ok(Self::from_parts(target, num, self.den.clone()))
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.field.order, self)
    }
}

/// Prints in the literal grammar accepted by [`parse_literal`], highest
/// power first, e.g. `-1/2*z^3 + 1/2*z`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z")?,
                (_, false) => write!(f, "{abs}*z")?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                self.$checked(rhs).expect("cyclotomic field mismatch")
            }
        }

        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = CyclotomicField::new(4);
        let z = CycNum::zeta(&f);
        assert_eq!(&z * &z, CycNum::from_integer(&f, -1));
    }

    #[test]
    fn one_over_root_two_in_q_zeta8() {
        // (z - z^3)^2 = z^2 - 2 z^4 + z^6 = z^2 + 2 - z^2 = 2
        let f = CyclotomicField::new(8);
        let s = CycNum::zeta(&f) - CycNum::zeta_pow(&f, 3);
        assert_eq!(&s * &s, CycNum::from_integer(&f, 2));
    }

    #[test]
    fn additive_identity() {
        let f = CyclotomicField::new(9);
        let a = CycNum::from_coeffs(&f, &[q(1, 2), q(-3, 7), q(5, 1)]);
        assert_eq!(&a + &CycNum::zero(&f), a);
    }

    #[test]
    fn inverses() {
        let f8 = CyclotomicField::new(8);
        let z = CycNum::zeta(&f8);
        assert_eq!(z.inverse().unwrap(), -CycNum::zeta_pow(&f8, 3));
        assert_eq!(z.inverse().unwrap(), CycNum::zeta_pow(&f8, 7));
        assert_eq!(
            CycNum::from_integer(&f8, 2).inverse().unwrap(),
            CycNum::from_rational(&f8, &q(1, 2))
        );
        let f3 = CyclotomicField::new(3);
        let a = CycNum::one(&f3) + CycNum::zeta(&f3);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, -CycNum::zeta(&f3));
        assert!((&a * &inv).is_one());
        assert_eq!(CycNum::zero(&f3).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn embeddings() {
        let f2 = CyclotomicField::new(2);
        let f4 = CyclotomicField::new(4);
        let f8 = CyclotomicField::new(8);
        assert_eq!(
            CycNum::from_integer(&f2, -1).embed(&f4).unwrap(),
            CycNum::zeta_pow(&f4, 2)
        );
        assert_eq!(
            CycNum::zeta(&f4).embed(&f8).unwrap(),
            CycNum::zeta_pow(&f8, 2)
        );
        let f3 = CyclotomicField::new(3);
        let f12 = CyclotomicField::new(12);
        let a = CycNum::one(&f3) + CycNum::zeta(&f3);
        assert_eq!(
            a.embed(&f12).unwrap().inverse().unwrap(),
            a.inverse().unwrap().embed(&f12).unwrap()
        );
        assert!(a.embed(&f8).is_err());
    }

    #[test]
    fn rational_recognition() {
        let f5 = CyclotomicField::new(5);
        assert_eq!(
            CycNum::from_rational(&f5, &q(7, 2)).as_rational(),
            Some(q(7, 2))
        );
        assert_eq!(CycNum::zeta(&f5).as_rational(), None);
        let s = (1..5).fold(CycNum::zero(&f5), |acc, k| acc + CycNum::zeta_pow(&f5, k));
        assert_eq!(s.as_rational(), Some(q(-1, 1)));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = CycNum::one(&CyclotomicField::new(3));
        let b = CycNum::one(&CyclotomicField::new(4));
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::FieldMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn zeta_has_exact_order() {
        for r in 1..=24u64 {
            let f = CyclotomicField::new(r);
            let z = CycNum::zeta(&f);
            let mut p = CycNum::one(&f);
            for k in 1..r {
                p = &p * &z;
                assert!(!p.is_one(), "zeta_{r}^{k} = 1");
            }
            assert!((&p * &z).is_one());
        }
    }

    #[test]
    fn display_matches_literal_grammar() {
        let f = CyclotomicField::new(8);
        let a = CycNum::from_coeffs(&f, &[q(0, 1), q(1, 2), q(0, 1), q(-1, 2)]);
        assert_eq!(a.to_string(), "-1/2*z^3 + 1/2*z");
        assert_eq!(CycNum::from_integer(&f, -1).to_string(), "-1");
        assert_eq!(CycNum::zeta_pow(&f, 2).to_string(), "z^2");
    }
}
