//! Monomial valuations attached to group elements, with their stabilizer
//! and ramification subgroups.
//!
//! For `g` of order `r` with eigenbasis `x_1, ..., x_n` and exponents
//! `1/r(a_1, ..., a_n)`, the valuation `v_g` sends `x_i` to `b_i`, where
//! `b = a / gcd(a)`. An element `h` stabilizes `v_g` when it preserves the
//! splitting of `C^n` into eigenspaces of equal weight, and lies in the
//! ramification group when in the eigenbasis it is `diag(e^b_1, ..., e^b_n)`
//! for a single root of unity `e`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::age::{eigen_exponents, FractionalExpression};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub element: usize,
    pub expression: FractionalExpression,
    /// Columns are eigenvectors, grouped by ascending exponent.
    pub basis: Matrix,
    basis_inverse: Matrix,
    /// Exponent of each basis column.
    pub exponents: Vec<u64>,
    /// Basis indices with equal exponent, by ascending exponent.
    pub blocks: Vec<(u64, Vec<usize>)>,
    /// Nested index sets: the `c`-th entry is the union of the first `c + 1` blocks.
    pub filtration: Vec<Vec<usize>>,
}

fn require_lifted(group: &MatrixGroup) -> Result<()> {
    if !group.is_lifted() {
        return Err(Error::requirement(format!(
            "eigenvectors need Q(zeta_{}) to contain the group exponent {}; lift the group first",
            group.field().order(),
            group.exponent()
        )));
    }
    Ok(())
}

/// Exact eigenbasis of the element at `index`, from reduced echelon
/// kernels of `g - zeta_r^a I`.
pub fn eigen_decompose(group: &MatrixGroup, index: usize) -> Result<EigenDecomposition> {
    require_lifted(group)?;
    let g = group.element(index);
    let field = group.field();
    let expression = eigen_exponents(&g.matrix, g.order)?;
    let n = group.dimension();
    let step = (field.order() / g.order) as i64;
    let mut columns = Vec::with_capacity(n);
    let mut exponents = Vec::with_capacity(n);
    let mut blocks: Vec<(u64, Vec<usize>)> = Vec::new();
    let distinct: BTreeSet<u64> = expression.exponents.iter().copied().collect();
    for a in distinct {
        let mult = expression.exponents.iter().filter(|&&x| x == a).count();
        let lambda = CycNum::zeta_pow(field, step * a as i64);
        let kernel = g.matrix.sub(&Matrix::scalar(n, &lambda)).kernel();
        if kernel.len() != mult {
            return Err(Error::invariant(format!(
                "eigenspace for exponent {a}/{} has dimension {}, trace formula gives {mult}",
                g.order,
                kernel.len()
            )));
        }
        let start = columns.len();
        columns.extend(kernel);
        exponents.extend(std::iter::repeat(a).take(mult));
        blocks.push((a, (start..start + mult).collect()));
    }
    let basis = Matrix::from_columns(&columns)?;
    let basis_inverse = basis
        .inverse()
        .ok_or_else(|| Error::invariant("eigenvectors are linearly dependent"))?;
    let mut filtration = Vec::with_capacity(blocks.len());
    let mut acc = Vec::new();
    for (_, idx) in &blocks {
        acc.extend(idx.iter().copied());
        filtration.push(acc.clone());
    }
    Ok(EigenDecomposition {
        element: index,
        expression,
        basis,
        basis_inverse,
        exponents,
        blocks,
        filtration,
    })
}

impl EigenDecomposition {
    /// `P^-1 M P` for the basis matrix `P`.
    pub fn conjugate(&self, m: &Matrix) -> Matrix {
        self.basis_inverse.mul(m).mul(&self.basis)
    }
}

/// `x_i -> b_i` in a fixed basis.
#[derive(Clone, Debug)]
pub struct MonomialValuation {
    /// Element the valuation was built from, if any.
    pub source: Option<usize>,
    /// Primitive weight vector `b`.
    pub weights: Vec<u64>,
    /// Exponents `a_i` before dividing by their gcd.
    pub exponents: Vec<u64>,
    /// Order of the source element, 1 for a coordinate valuation.
    pub order: u64,
    /// Whether dividing by the gcd changed the exponents.
    pub primitivized: bool,
    basis: Option<(Matrix, Matrix)>,
}

impl MonomialValuation {
    pub fn from_decomposition(decomp: &EigenDecomposition) -> Result<Self> {
        let g = decomp.exponents.iter().fold(0u64, |g, a| g.gcd(a));
        if g == 0 {
            return Err(Error::Input(
                "the identity element has zero weights and defines no valuation".into(),
            ));
        }
        Ok(MonomialValuation {
            source: Some(decomp.element),
            weights: decomp.exponents.iter().map(|a| a / g).collect(),
            exponents: decomp.exponents.clone(),
            order: decomp.expression.order,
            primitivized: g != 1,
            basis: Some((decomp.basis.clone(), decomp.basis_inverse.clone())),
        })
    }

    /// Valuation in the coordinate basis.
    pub fn coordinate(weights: Vec<u64>) -> Result<Self> {
        let g = weights.iter().fold(0u64, |g, a| g.gcd(a));
        if g == 0 {
            return Err(Error::Input("weight vector is zero".into()));
        }
        Ok(MonomialValuation {
            source: None,
            exponents: weights.clone(),
            weights: weights.iter().map(|b| b / g).collect(),
            order: 1,
            primitivized: g != 1,
            basis: None,
        })
    }

    fn in_basis(&self, m: &Matrix) -> Matrix {
        match &self.basis {
            Some((p, p_inv)) => p_inv.mul(m).mul(p),
            None => m.clone(),
        }
    }

    /// `a_F = sum a_i - 1` for the weighted blowup upstairs.
    pub fn upstairs_discrepancy(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.exponents.iter().sum::<u64>()) - 1)
    }
}

/// Elements whose matrix in the valuation's basis is block diagonal with
/// respect to blocks of equal weight, in index order.
pub fn stab_group(group: &MatrixGroup, v: &MonomialValuation) -> Result<Vec<usize>> {
    if v.weights.len() != group.dimension() {
        return Err(Error::Input("weight vector length differs from the dimension".into()));
    }
    let n = group.dimension();
    let stab: Vec<usize> = (0..group.order())
        .filter(|&h| {
            let m = v.in_basis(&group.element(h).matrix);
            (0..n).all(|i| (0..n).all(|j| v.weights[i] == v.weights[j] || m.get(i, j).is_zero()))
        })
        .collect();
    check_subgroup(group, &stab, "Stab")?;
    Ok(stab)
}

/// Elements of `Stab` acting as `diag(e^b_1, ..., e^b_n)` in the
/// valuation's basis, in index order. Always cyclic.
pub fn ram_group(group: &MatrixGroup, v: &MonomialValuation) -> Result<Vec<usize>> {
    require_lifted(group)?;
    let field = group.field();
    let big_l = field.order();
    let roots: Vec<CycNum> = (0..big_l as i64).map(|t| CycNum::zeta_pow(field, t)).collect();
    let stab = stab_group(group, v)?;
    let ram: Vec<usize> = stab
        .into_iter()
        .filter(|&h| {
            let m = v.in_basis(&group.element(h).matrix);
            m.is_diagonal()
                && (0..big_l).any(|t| {
                    v.weights.iter().enumerate().all(|(i, &b)| {
                        *m.get(i, i) == roots[((t * b) % big_l) as usize]
                    })
                })
        })
        .collect();
    check_subgroup(group, &ram, "Ram")?;
    if !ram.iter().any(|&h| group.element(h).order as usize == ram.len()) {
        return Err(Error::invariant("the ramification group is not cyclic"));
    }
    Ok(ram)
}

fn check_subgroup(group: &MatrixGroup, set: &[usize], name: &str) -> Result<()> {
    let members: HashSet<usize> = set.iter().copied().collect();
    let closed = members.contains(&0)
        && set
            .iter()
            .all(|&a| set.iter().all(|&b| members.contains(&group.multiply(a, b))));
    if !closed {
        return Err(Error::invariant(format!("{name} is not a subgroup")));
    }
    Ok(())
}

/// Whether `inner` is a normal subgroup of `outer` (both index lists).
pub fn is_normal_in(group: &MatrixGroup, inner: &[usize], outer: &[usize]) -> bool {
    let members: HashSet<usize> = inner.iter().copied().collect();
    inner.iter().all(|x| outer.contains(x))
        && outer.iter().all(|&s| {
            let s_inv = group.inverse_of(s);
            inner
                .iter()
                .all(|&x| members.contains(&group.multiply(group.multiply(s, x), s_inv)))
        })
}

/// Discrepancy downstairs of a divisor with upstairs discrepancy `a_F` and
/// ramification degree `r`: `(a_F - (r - 1)) / r`.
pub fn quotient_discrepancy(a_f: &BigRational, r: u64) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::Input("ramification degree must be positive".into()));
    }
    let r = BigRational::from_integer(BigInt::from(r));
    Ok((a_f - (&r - BigRational::from_integer(1.into()))) / r)
}

/// `(1/r) v_g` on every invariant monomial of total degree `1..=probe_degree`
/// of a diagonal group. Keys are exponent vectors in coordinate order.
pub fn valuation_fingerprint(
    group: &MatrixGroup,
    index: usize,
    probe_degree: u32,
) -> Result<BTreeMap<Vec<u32>, i64>> {
    if !group.is_diagonal() {
        return Err(Error::requirement(
            "a valuation fingerprint requires a diagonal group",
        ));
    }
    if probe_degree == 0 {
        return Err(Error::Input("probe degree must be at least 1".into()));
    }
    let group = if group.is_lifted() {
        std::borrow::Cow::Borrowed(group)
    } else {
        std::borrow::Cow::Owned(group.lift_to_exponent_field()?)
    };
    let big_l = group.field().order();
    let log = |m: &Matrix| -> Vec<u64> {
        m.diagonal_entries()
            .iter()
            .map(|e| {
                (0..big_l)
                    .find(|&t| *e == CycNum::zeta_pow(group.field(), t as i64))
                    .expect("diagonal entries of a finite group are roots of unity")
            })
            .collect()
    };
    let g = group.element(index);
    let r = g.order;
    let a: Vec<u64> = log(&g.matrix).iter().map(|c| c * r / big_l).collect();
    let k = a.iter().fold(0u64, |x, y| x.gcd(y));
    if k == 0 {
        return Err(Error::Input(
            "the identity element has zero weights and defines no valuation".into(),
        ));
    }
    let b: Vec<u64> = a.iter().map(|x| x / k).collect();
    let gens: Vec<Vec<u64>> = group
        .generators()
        .iter()
        .map(|&h| log(&group.element(h).matrix))
        .collect();
    let n = group.dimension();
    let mut out = BTreeMap::new();
    let mut m = vec![0u32; n];
    enumerate_monomials(&mut m, 0, probe_degree, &mut |m| {
        let total: u32 = m.iter().sum();
        if total == 0 {
            return Ok(());
        }
        let invariant = gens.iter().all(|c| {
            m.iter().zip(c).map(|(&mi, &ci)| mi as u64 * ci).sum::<u64>() % big_l == 0
        });
        if invariant {
            let v: u64 = m.iter().zip(&b).map(|(&mi, &bi)| mi as u64 * bi).sum();
            if v % r != 0 {
                return Err(Error::invariant(format!(
                    "invariant monomial {m:?} has non-integral value {v}/{r}"
                )));
            }
            out.insert(m.to_vec(), (v / r) as i64);
        }
        Ok(())
    })?;
    Ok(out)
}

fn enumerate_monomials(
    m: &mut Vec<u32>,
    pos: usize,
    budget: u32,
    visit: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if pos == m.len() {
        return visit(m);
    }
    for e in 0..=budget {
        m[pos] = e;
        enumerate_monomials(m, pos + 1, budget - e, visit)?;
    }
    m[pos] = 0;
    Ok(())
}

/// Everything the `ram` report shows for one conjugacy class.
#[derive(Clone, Debug)]
pub struct ClassValuation {
    pub class: usize,
    pub representative: usize,
    pub expression: FractionalExpression,
    pub weights: Vec<u64>,
    pub primitivized: bool,
    pub stab: Vec<usize>,
    pub ram: Vec<usize>,
    pub ramification_degree: u64,
    /// `Ram` equals the cyclic group generated by the representative.
    pub ram_is_generated: bool,
    pub ram_normal_in_stab: bool,
    pub a_f: BigRational,
    pub a_e: BigRational,
    /// Age at least 2: computed the same way, but without the guarantee
    /// that holds for junior classes.
    pub experimental: bool,
    pub fingerprint: Option<BTreeMap<Vec<u32>, i64>>,
}

/// Valuation data for the representative of class `class`. A fingerprint
/// is computed when `probe_degree` is given and the group is diagonal.
pub fn analyze_class(
    group: &MatrixGroup,
    class: usize,
    probe_degree: Option<u32>,
) -> Result<ClassValuation> {
    let Some(c) = group.classes().get(class) else {
        return Err(Error::Input(format!(
            "class {class} out of range (group has {} classes)",
            group.classes().len()
        )));
    };
    let rep = c.representative;
    if rep == 0 {
        return Err(Error::Input(
            "the identity class defines no valuation".into(),
        ));
    }
    let lifted = if group.is_lifted() {
        std::borrow::Cow::Borrowed(group)
    } else {
        std::borrow::Cow::Owned(group.lift_to_exponent_field()?)
    };
    let decomp = eigen_decompose(&lifted, rep)?;
    let v = MonomialValuation::from_decomposition(&decomp)?;
    let stab = stab_group(&lifted, &v)?;
    let ram = ram_group(&lifted, &v)?;
    let mut generated = lifted.cyclic_powers(rep);
    generated.sort_unstable();
    let a_f = v.upstairs_discrepancy();
    let a_e = quotient_discrepancy(&a_f, ram.len() as u64)?;
    let fingerprint = match probe_degree {
        Some(d) if lifted.is_diagonal() => Some(valuation_fingerprint(&lifted, rep, d)?),
        _ => None,
    };
    Ok(ClassValuation {
        class,
        representative: rep,
        experimental: decomp.expression.age.is_none_or(|a| a >= 2),
        expression: decomp.expression,
        weights: v.weights.clone(),
        primitivized: v.primitivized,
        ram_is_generated: generated == ram,
        ram_normal_in_stab: is_normal_in(&lifted, &ram, &stab),
        ramification_degree: ram.len() as u64,
        stab,
        ram,
        a_f,
        a_e,
        fingerprint,
    })
}
