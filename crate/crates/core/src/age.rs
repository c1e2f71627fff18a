//! Age grading of conjugacy classes.
//!
//! An element `g` of order `r` has eigenvalues `zeta_r^a_1, ..., zeta_r^a_n`
//! with `0 <= a_i < r`, written `1/r(a_1,...,a_n)`. In `SL(n)` the sum of
//! the `a_i` is a multiple of `r`, and the quotient is the age. Junior
//! classes (age 1) give crepant exceptional divisors, and for `n = 3` the
//! age grading predicts the Betti numbers of a crepant resolution.
//!
//! Exponents are read off with the trace formula
//! `m_a = (1/r) sum_k zeta_r^(-a k) Tr(g^k)`, evaluated exactly.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::matgroup::{GroupElement, MatrixGroup};
use crate::matrix::Matrix;

/// Eigenvalue exponents `1/r(a_1,...,a_n)`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FractionalExpression {
    pub order: u64,
    pub exponents: Vec<u64>,
    /// `sum a_i / r` when that is an integer.
    pub age: Option<u64>,
    /// Number of zero exponents, the dimension of the fixed subspace.
    pub fix_dim: usize,
    /// `gcd(r, a_1, ..., a_n) = 1`.
    pub primitive: bool,
}

impl FractionalExpression {
    pub fn new(order: u64, mut exponents: Vec<u64>) -> Self {
        assert!(order >= 1);
        for a in &mut exponents {
            *a %= order;
        }
        exponents.sort_unstable();
        let sum: u64 = exponents.iter().sum();
        let age = (sum % order == 0).then_some(sum / order);
        let fix_dim = exponents.iter().filter(|&&a| a == 0).count();
        let primitive = exponents.iter().fold(order, |g, a| g.gcd(a)) == 1;
        FractionalExpression {
            order,
            exponents,
            age,
            fix_dim,
            primitive,
        }
    }

    pub fn dimension(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponent_sum(&self) -> u64 {
        self.exponents.iter().sum()
    }

    pub fn is_junior(&self) -> bool {
        self.age == Some(1)
    }

    /// Expression of the inverse element: `a -> r - a` on nonzero exponents.
    pub fn inverse(&self) -> Self {
        FractionalExpression::new(
            self.order,
            self.exponents
                .iter()
                .map(|&a| if a == 0 { 0 } else { self.order - a })
                .collect(),
        )
    }

    /// Elementary symmetric functions `e_1, ..., e_n` of `a_i / r`.
    /// `e_1` is the age.
    pub fn elementary_symmetric(&self) -> Vec<BigRational> {
        let r = BigInt::from(self.order);
        let mut e = vec![BigRational::zero(); self.exponents.len() + 1];
        e[0] = BigRational::from_integer(1.into());
        for &a in &self.exponents {
            let x = BigRational::new(a.into(), r.clone());
            for k in (1..e.len()).rev() {
                let prev = e[k - 1].clone();
                e[k] += prev * &x;
            }
        }
        e.remove(0);
        e
    }
}

impl fmt::Display for FractionalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "1/{}({})", self.order, parts.join(","))
    }
}

/// Exponents of a matrix of order `order` via the trace formula.
///
/// The field must contain a primitive `order`-th root of unity.
pub fn eigen_exponents(matrix: &Matrix, order: u64) -> Result<FractionalExpression> {
    let field = matrix.field();
    if field.order() % order != 0 {
        return Err(Error::requirement(format!(
            "eigenvalues of an element of order {order} do not lie in Q(zeta_{}); lift the group to its exponent field first",
            field.order()
        )));
    }
    let n = matrix.rows();
    let step = (field.order() / order) as i64;
    let mut traces = Vec::with_capacity(order as usize);
    let mut power = Matrix::identity(n, field);
    for _ in 0..order {
        traces.push(power.trace());
        power = power.mul(matrix);
    }
    if !power.is_identity() {
        return Err(Error::Input(format!("matrix does not have order dividing {order}")));
    }
    let r = BigRational::from_integer(BigInt::from(order));
    let mut exponents = Vec::with_capacity(n);
    for a in 0..order as i64 {
        let mut sum = CycNum::zero(field);
        for (k, t) in traces.iter().enumerate() {
            let root = CycNum::zeta_pow(field, -step * a * k as i64);
            sum = &sum + &(&root * t);
        }
        let m = sum
            .as_rational()
            .map(|q| q / &r)
            .filter(|q| q.is_integer() && !q.is_negative())
            .ok_or_else(|| {
                Error::invariant(format!(
                    "eigenvalue multiplicity for exponent {a}/{order} is not a nonnegative integer"
                ))
            })?;
        let m: usize = m
            .to_integer()
            .try_into()
            .map_err(|_| Error::invariant("eigenvalue multiplicity out of range"))?;
        exponents.extend(std::iter::repeat(a as u64).take(m));
    }
    if exponents.len() != n {
        return Err(Error::invariant(format!(
            "eigenvalue multiplicities sum to {}, expected {n}",
            exponents.len()
        )));
    }
    Ok(FractionalExpression::new(order, exponents))
}

pub fn element_expression(g: &GroupElement) -> Result<FractionalExpression> {
    eigen_exponents(&g.matrix, g.order)
}

fn require_sl(group: &MatrixGroup) -> Result<()> {
    if !group.in_sl() {
        return Err(Error::requirement(
            "the age grading requires a subgroup of SL(n); some generator has determinant != 1",
        ));
    }
    Ok(())
}

fn require_dim3(group: &MatrixGroup, what: &str) -> Result<()> {
    if group.dimension() != 3 {
        return Err(Error::requirement(format!(
            "{what} requires dimension 3, got {}",
            group.dimension()
        )));
    }
    Ok(())
}

fn lifted(group: &MatrixGroup) -> Result<std::borrow::Cow<'_, MatrixGroup>> {
    Ok(if group.is_lifted() {
        std::borrow::Cow::Borrowed(group)
    } else {
        std::borrow::Cow::Owned(group.lift_to_exponent_field()?)
    })
}

/// Age of the element at `index` in an `SL(n)` group.
pub fn age_of(group: &MatrixGroup, index: usize) -> Result<u64> {
    require_sl(group)?;
    let group = lifted(group)?;
    element_expression(group.element(index))?
        .age
        .ok_or_else(|| Error::invariant("element of SL(n) with non-integral age"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    /// Position in `MatrixGroup::classes`.
    pub class: usize,
    pub representative: usize,
    pub size: usize,
    pub expression: FractionalExpression,
    pub age: u64,
}

/// Conjugacy classes bucketed by age.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClassTable {
    pub dimension: usize,
    pub classes: Vec<GradedClass>,
    /// `by_age[i]` lists the classes of age `i`, for `i` in `0..n`.
    pub by_age: Vec<Vec<usize>>,
    /// Junior classes with an isolated fixed point (`fix_dim = 0`).
    pub gamma1_zero: Vec<usize>,
    /// Expression of every element, indexed like the group.
    pub element_expressions: Vec<FractionalExpression>,
    inverse_class: Vec<usize>,
}

/// Grades every conjugacy class of an `SL(n)` group by age.
///
/// Every member of a class is checked to carry the same expression.
pub fn grade(group: &MatrixGroup) -> Result<GradedClassTable> {
    require_sl(group)?;
    let group = lifted(group)?;
    let n = group.dimension();
    let element_expressions = group
        .elements()
        .iter()
        .map(element_expression)
        .collect::<Result<Vec<_>>>()?;
    let mut classes = Vec::with_capacity(group.classes().len());
    let mut by_age = vec![Vec::new(); n.max(1)];
    for (id, class) in group.classes().iter().enumerate() {
        let expression = element_expressions[class.representative].clone();
        if let Some(&bad) = class
            .members
            .iter()
            .find(|&&m| element_expressions[m] != expression)
        {
            return Err(Error::invariant(format!(
                "class {id} is not age-constant: {expression} vs {}",
                element_expressions[bad]
            )));
        }
        let age = expression
            .age
            .ok_or_else(|| Error::invariant("element of SL(n) with non-integral age"))?;
        let is_identity = class.representative == 0;
        if (age == 0) != is_identity || age as usize >= n.max(1) {
            return Err(Error::invariant(format!(
                "class {id} has age {age}, outside the range allowed in dimension {n}"
            )));
        }
        by_age[age as usize].push(id);
        classes.push(GradedClass {
            class: id,
            representative: class.representative,
            size: class.size(),
            expression,
            age,
        });
    }
    let gamma1_zero = classes
        .iter()
        .filter(|c| c.age == 1 && c.expression.fix_dim == 0)
        .map(|c| c.class)
        .collect();
    let inverse_class = group
        .classes()
        .iter()
        .map(|c| group.class_of(group.inverse_of(c.representative)))
        .collect();
    Ok(GradedClassTable {
        dimension: n,
        classes,
        by_age,
        gamma1_zero,
        element_expressions,
        inverse_class,
    })
}

/// Predicted cohomology of a crepant resolution of `C^3/G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiPrediction {
    pub h0: usize,
    pub h2: usize,
    pub h4: usize,
    pub euler: usize,
}

impl GradedClassTable {
    pub fn junior(&self) -> &[usize] {
        self.by_age.get(1).map_or(&[], Vec::as_slice)
    }

    pub fn senior(&self, age: usize) -> &[usize] {
        self.by_age.get(age).map_or(&[], Vec::as_slice)
    }

    /// Class-level map `class(g) -> class(g^-1)` on the junior classes with
    /// isolated fixed point, checked to be a bijection onto the age-2
    /// classes.
    pub fn inverse_bijection(&self) -> Result<Vec<(usize, usize)>> {
        if self.dimension != 3 {
            return Err(Error::requirement(format!(
                "the inverse bijection requires dimension 3, got {}",
                self.dimension
            )));
        }
        let pairs: Vec<(usize, usize)> = self
            .gamma1_zero
            .iter()
            .map(|&c| (c, self.inverse_class[c]))
            .collect();
        let image: BTreeSet<usize> = pairs.iter().map(|&(_, d)| d).collect();
        let target: BTreeSet<usize> = self.senior(2).iter().copied().collect();
        if image.len() != pairs.len() || image != target {
            return Err(Error::invariant(
                "g -> g^-1 is not a bijection from isolated-fixed-point junior classes onto age-2 classes",
            ));
        }
        Ok(pairs)
    }

    pub fn betti_prediction(&self) -> Result<BettiPrediction> {
        let pairs = self.inverse_bijection()?;
        let h2 = self.junior().len();
        let h4 = self.senior(2).len();
        debug_assert_eq!(pairs.len(), h4);
        Ok(BettiPrediction {
            h0: 1,
            h2,
            h4,
            euler: 1 + h2 + h4,
        })
    }

    /// Whether every nonidentity element with a nonzero fixed vector is
    /// junior.
    pub fn fix_junior_check(&self) -> Result<bool> {
        if self.dimension != 3 {
            return Err(Error::requirement(format!(
                "the fixed-locus check requires dimension 3, got {}",
                self.dimension
            )));
        }
        Ok(self
            .element_expressions
            .iter()
            .filter(|e| e.fix_dim > 0 && e.fix_dim < self.dimension)
            .all(FractionalExpression::is_junior))
    }
}

pub fn gamma1_zero(group: &MatrixGroup) -> Result<Vec<usize>> {
    Ok(grade(group)?.gamma1_zero)
}

pub fn inverse_bijection(group: &MatrixGroup) -> Result<Vec<(usize, usize)>> {
    require_dim3(group, "the inverse bijection")?;
    grade(group)?.inverse_bijection()
}

pub fn betti_prediction(group: &MatrixGroup) -> Result<BettiPrediction> {
    require_dim3(group, "the Betti prediction")?;
    grade(group)?.betti_prediction()
}

pub fn fix_junior_check(group: &MatrixGroup) -> Result<bool> {
    require_dim3(group, "the fixed-locus check")?;
    grade(group)?.fix_junior_check()
}
