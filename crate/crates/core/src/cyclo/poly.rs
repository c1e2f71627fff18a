//! Dense univariate polynomials used behind the cyclotomic field: exact
//! integer division for building cyclotomic polynomials and the rational
//! extended Euclidean algorithm for inversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of the `order`-th cyclotomic polynomial, lowest degree first.
///
/// Built by dividing `x^order - 1` exactly by every `Phi_d` with `d | order`,
/// `d < order`.
pub fn cyclotomic_polynomial(order: u64) -> Vec<i64> {
    assert!(order >= 1, "cyclotomic polynomial of order 0");
    let divisors: Vec<u64> = (1..=order).filter(|d| order % d == 0).collect();
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut poly = x_pow_minus_one(d);
        for (e, phi_e) in &table {
            if d % e == 0 {
                poly = exact_div_monic(&poly, phi_e);
            }
        }
        table.push((d, poly));
    }
    let (_, phi) = table.pop().expect("order has at least one divisor");
    phi.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

fn x_pow_minus_one(d: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::from(-1);
    p[d as usize] = BigInt::one();
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dn + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Reduces `poly` in place modulo the monic integer polynomial `modulus`
/// and truncates it to `deg(modulus)` coefficients.
pub(crate) fn reduce_monic(poly: &mut Vec<BigInt>, modulus: &[i64]) {
    let d = modulus.len() - 1;
    if poly.len() > d {
        for i in (d..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, &mj) in modulus[..d].iter().enumerate() {
                if mj != 0 {
                    poly[i - d + j] -= &c * mj;
                }
            }
        }
    }
    poly.resize(d, BigInt::zero());
}

/// Rational polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct QPoly(pub Vec<BigRational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.0[dd].clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] / &lead;
            for (j, dj) in divisor.0.iter().enumerate() {
                rem[i - dd + j] -= &c * dj;
            }
            quot[i - dd] = c;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Inverse of `self` modulo `modulus`, when `gcd(self, modulus)` is a
    /// nonzero constant.
    pub fn inverse_mod(&self, modulus: &QPoly) -> Option<QPoly> {
        let (_, a) = self.div_rem(modulus);
        if a.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (modulus.clone(), a);
        let (mut s0, mut s1) = (QPoly(Vec::new()), QPoly::new(vec![BigRational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.0[0].clone();
        let inv = QPoly::new(s0.0.into_iter().map(|x| x / &c).collect());
        Some(inv.div_rem(modulus).1)
    }
}
