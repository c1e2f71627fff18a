//! Abelian quotients `C^n / A` with `A` diagonal.
//!
//! The overlattice `L = Z^n + sum Z * 1/r(a_1,...,a_n)` has exactly one
//! representative of each class of `L / Z^n` in the half-open unit box, and
//! those box points are the group elements. Points with coordinate sum 1
//! (the junior simplex) are the crepant divisors; a toric crepant
//! resolution is a subdivision of the positive octant into cones that are
//! basic for `L` and whose rays are junior points.

mod triangulate;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;

use crate::cyclo::{CycNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub use triangulate::JuniorTriangulation;

/// `1/r(a_1,...,a_n)`, the matrix `diag(zeta_r^a_1, ..., zeta_r^a_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalGenerator {
    pub order: u64,
    pub exponents: Vec<u64>,
}

impl DiagonalGenerator {
    pub fn new(order: u64, exponents: Vec<u64>) -> Self {
        DiagonalGenerator { order, exponents }
    }

    pub fn is_sl(&self) -> bool {
        self.exponents.iter().sum::<u64>() % self.order == 0
    }

    pub fn inverse(&self) -> Self {
        DiagonalGenerator {
            order: self.order,
            exponents: self
                .exponents
                .iter()
                .map(|&a| (self.order - a) % self.order)
                .collect(),
        }
    }
}

impl fmt::Display for DiagonalGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "1/{}({})", self.order, parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalGroupSpec {
    pub dimension: usize,
    pub generators: Vec<DiagonalGenerator>,
}

impl DiagonalGroupSpec {
    pub fn new(dimension: usize, generators: Vec<DiagonalGenerator>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        for g in &generators {
            if g.order == 0 {
                return Err(Error::Input("generator order must be positive".into()));
            }
            if g.exponents.len() != dimension {
                return Err(Error::Input(format!(
                    "generator {g} has {} exponents, expected {dimension}",
                    g.exponents.len()
                )));
            }
            if let Some(a) = g.exponents.iter().find(|&&a| a >= g.order) {
                return Err(Error::Input(format!(
                    "exponent {a} out of range [0, {}) in generator {g}",
                    g.order
                )));
            }
        }
        Ok(DiagonalGroupSpec {
            dimension,
            generators,
        })
    }

    pub fn is_sl(&self) -> bool {
        self.generators.iter().all(DiagonalGenerator::is_sl)
    }

    /// Least common multiple of the generator orders.
    pub fn denominator(&self) -> u64 {
        self.generators.iter().fold(1, |acc, g| acc.lcm(&g.order))
    }

    pub fn inverted(&self) -> Self {
        DiagonalGroupSpec {
            dimension: self.dimension,
            generators: self.generators.iter().map(DiagonalGenerator::inverse).collect(),
        }
    }

    /// Generators as diagonal matrices over `Q(zeta_d)`, `d` the
    /// denominator, named `g1, g2, ...`.
    pub fn to_matrices(&self) -> Vec<(String, Matrix)> {
        let d = self.denominator();
        let field = CyclotomicField::new(d);
        let mut out: Vec<(String, Matrix)> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let step = d / g.order;
                let entries = g
                    .exponents
                    .iter()
                    .map(|&a| CycNum::zeta_pow(&field, (a * step) as i64))
                    .collect();
                (format!("g{}", i + 1), Matrix::diagonal(entries))
            })
            .collect();
        if out.is_empty() {
            out.push(("1".into(), Matrix::identity(self.dimension, &field)));
        }
        out
    }
}

/// A point of `L` written `1/r(b_1,...,b_n)` with nonnegative `b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub denominator: u64,
    pub numerators: Vec<u64>,
}

impl LatticePoint {
    pub fn new(denominator: u64, numerators: Vec<u64>) -> Self {
        LatticePoint {
            denominator,
            numerators,
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.numerators
            .iter()
            .fold(self.denominator, |g, b| g.gcd(b))
            == 1
    }

    /// Divides through by `gcd(r, b_1, ..., b_n)`.
    pub fn primitivize(&self) -> Self {
        let g = self
            .numerators
            .iter()
            .fold(self.denominator, |g, b| g.gcd(b));
        LatticePoint {
            denominator: self.denominator / g,
            numerators: self.numerators.iter().map(|b| b / g).collect(),
        }
    }

    pub fn coordinate_sum(&self) -> Rational64 {
        Rational64::new(
            self.numerators.iter().sum::<u64>() as i64,
            self.denominator as i64,
        )
    }
}

/// `"b_1/r,...,b_n/r"`.
impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .numerators
            .iter()
            .map(|b| format!("{b}/{}", self.denominator))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An element of `L` in the unit box, stored as numerators over the
/// lattice denominator `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxPoint {
    pub numerators: Vec<u64>,
    pub denominator: u64,
}

impl BoxPoint {
    pub fn sum_numerator(&self) -> u64 {
        self.numerators.iter().sum()
    }

    pub fn coordinate_sum(&self) -> Rational64 {
        Rational64::new(self.sum_numerator() as i64, self.denominator as i64)
    }

    /// `sum alpha_i` when it is an integer.
    pub fn age(&self) -> Option<u64> {
        let s = self.sum_numerator();
        (s % self.denominator == 0).then_some(s / self.denominator)
    }

    pub fn is_origin(&self) -> bool {
        self.numerators.iter().all(|&c| c == 0)
    }

    pub fn is_junior(&self) -> bool {
        self.sum_numerator() == self.denominator
    }

    /// The point in lowest terms, `1/r'(b_1,...,b_n)` with `r'` its order
    /// in `L / Z^n`.
    pub fn reduced(&self) -> LatticePoint {
        LatticePoint::new(self.denominator, self.numerators.clone()).primitivize()
    }

    /// Order of the point in `L / Z^n`.
    pub fn order(&self) -> u64 {
        self.reduced().denominator
    }

    /// Whether the point is primitive in `L`, i.e. not a proper multiple
    /// `k p` (`k >= 2`) of another box point with no coordinate wrapping.
    pub fn is_primitive_in_lattice(&self, lattice: &OverLattice) -> bool {
        let g = self.numerators.iter().fold(0u64, |g, &c| g.gcd(&c));
        if g <= 1 {
            return true;
        }
        (2..=g).filter(|k| g % k == 0).all(|k| {
            let q: Vec<u64> = self.numerators.iter().map(|c| c / k).collect();
            !lattice.contains(&q)
        })
    }
}

/// `"a_1/d,...,a_n/d"` over the common lattice denominator.
impl fmt::Display for BoxPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = LatticePoint::new(self.denominator, self.numerators.clone());
        write!(f, "{p}")
    }
}

/// `L = Z^n + sum_i Z * g_i` together with its box points.
#[derive(Clone, Debug)]
pub struct OverLattice {
    pub dimension: usize,
    /// Common denominator `d` of all box points.
    pub denominator: u64,
    /// `L` intersected with the unit box, origin first, lexicographic.
    pub points: Vec<BoxPoint>,
    sl: bool,
    members: HashSet<Vec<u64>>,
}

/// Closes the generator residues under addition modulo `Z^n`.
pub fn build_lattice(spec: &DiagonalGroupSpec) -> OverLattice {
    let n = spec.dimension;
    let d = spec.denominator();
    let gens: Vec<Vec<u64>> = spec
        .generators
        .iter()
        .map(|g| g.exponents.iter().map(|a| a * (d / g.order)).collect())
        .collect();
    let origin = vec![0u64; n];
    let mut members = HashSet::from([origin.clone()]);
    let mut queue = VecDeque::from([origin]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q: Vec<u64> = p.iter().zip(g).map(|(a, b)| (a + b) % d).collect();
            if members.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let mut points: Vec<BoxPoint> = members
        .iter()
        .map(|c| BoxPoint {
            numerators: c.clone(),
            denominator: d,
        })
        .collect();
    points.sort();
    OverLattice {
        dimension: n,
        denominator: d,
        points,
        sl: spec.is_sl(),
        members,
    }
}

impl OverLattice {
    /// `|L / Z^n|`.
    pub fn index(&self) -> usize {
        self.points.len()
    }

    pub fn is_sl(&self) -> bool {
        self.sl
    }

    /// Whether the numerator vector (over `d`, reduced mod `d`) lies in `L`.
    pub fn contains(&self, numerators: &[u64]) -> bool {
        let reduced: Vec<u64> = numerators.iter().map(|c| c % self.denominator).collect();
        self.members.contains(&reduced)
    }

    /// Sum of two box points reduced back into the box.
    pub fn add(&self, p: &BoxPoint, q: &BoxPoint) -> BoxPoint {
        BoxPoint {
            numerators: p
                .numerators
                .iter()
                .zip(&q.numerators)
                .map(|(a, b)| (a + b) % self.denominator)
                .collect(),
            denominator: self.denominator,
        }
    }

    /// Lattice exponent: least common multiple of the point orders.
    pub fn exponent(&self) -> u64 {
        self.points.iter().fold(1, |acc, p| acc.lcm(&p.order()))
    }

    /// Diagonal matrix over `Q(zeta_d)` of the group element at a box point.
    pub fn element_matrix(&self, point: &BoxPoint) -> Matrix {
        let field = CyclotomicField::new(self.denominator);
        Matrix::diagonal(
            point
                .numerators
                .iter()
                .map(|&c| CycNum::zeta_pow(&field, c as i64))
                .collect(),
        )
    }

    fn require_sl(&self, what: &str) -> Result<()> {
        if !self.sl {
            return Err(Error::requirement(format!(
                "{what} requires an SL group (every generator with exponent sum divisible by its order)"
            )));
        }
        Ok(())
    }
}

/// Box points with coordinate sum exactly 1, in lexicographic order.
pub fn junior_points(lattice: &OverLattice) -> Vec<BoxPoint> {
    lattice
        .points
        .iter()
        .filter(|p| p.is_junior())
        .cloned()
        .collect()
}

pub fn crepant_divisor_count(lattice: &OverLattice) -> usize {
    lattice.points.iter().filter(|p| p.is_junior()).count()
}

/// Number of box points on the hyperplane `sum alpha_i = 2` of a 4-fold.
pub fn gamma2_hyperplane_count(lattice: &OverLattice) -> Result<usize> {
    if lattice.dimension != 4 {
        return Err(Error::requirement(format!(
            "the Gamma_2 hyperplane count requires dimension 4, got {}",
            lattice.dimension
        )));
    }
    Ok(lattice
        .points
        .iter()
        .filter(|p| p.sum_numerator() == 2 * lattice.denominator)
        .count())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub value: Rational64,
    /// False for the coordinate rays `e_i`, whose divisors are the
    /// coordinate hyperplanes rather than exceptional divisors.
    pub exceptional: bool,
}

/// Discrepancy `(1/r') sum b_i - 1` of the toric divisor of a primitive
/// point `1/r'(b_1,...,b_n)` in the positive octant.
pub fn discrepancy(point: &LatticePoint) -> Result<Discrepancy> {
    if point.denominator == 0 || point.numerators.iter().all(|&b| b == 0) {
        return Err(Error::Input("discrepancy of the zero vector".into()));
    }
    if !point.is_primitive() {
        return Err(Error::Input(format!(
            "point 1/{}({:?}) is not primitive; primitivize it first",
            point.denominator, point.numerators
        )));
    }
    let nonzero = point.numerators.iter().filter(|&&b| b != 0).count();
    Ok(Discrepancy {
        value: point.coordinate_sum() - 1,
        exceptional: !(nonzero == 1 && point.denominator == 1),
    })
}

/// Reading of "positive integral combination" used by [`condition_i`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CombinationVariant {
    /// Every junior point used carries a coefficient `>= 1`.
    #[default]
    Positive,
    /// Coefficients `>= 0` over all junior points.
    NonNegative,
}

impl fmt::Display for CombinationVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CombinationVariant::Positive => "positive",
            CombinationVariant::NonNegative => "nonnegative",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionI {
    pub holds: bool,
    pub variant: CombinationVariant,
    /// First box point without a representation, when the condition fails.
    pub witness: Option<BoxPoint>,
    /// For each nonzero box point that has one, a representation as
    /// `(junior point index, coefficient)` pairs.
    pub representations: Vec<(BoxPoint, Vec<(usize, u64)>)>,
}

/// Checks that every nonzero box point is an integral combination of
/// junior points with exact equality in `L`.
///
/// Coordinate sums add, so the coefficients of a representation of a point
/// of age `k` sum to `k`; the search is bounded by that. With exact
/// equality and all coordinates nonnegative both variants accept the same
/// points; the variant is carried through for reporting.
pub fn condition_i(lattice: &OverLattice, variant: CombinationVariant) -> Result<ConditionI> {
    lattice.require_sl("condition (i)")?;
    let juniors = junior_points(lattice);
    let mut representations = Vec::new();
    let mut witness = None;
    for p in lattice.points.iter().filter(|p| !p.is_origin()) {
        let age = p.age().expect("SL box point has integral age");
        let mut chosen = Vec::new();
        if find_combination(&juniors, &p.numerators, age, 0, &mut chosen) {
            let mut combo: Vec<(usize, u64)> = Vec::new();
            for j in chosen {
                match combo.last_mut() {
                    Some((last, c)) if *last == j => *c += 1,
                    _ => combo.push((j, 1)),
                }
            }
            if variant == CombinationVariant::Positive {
                debug_assert!(combo.iter().all(|&(_, c)| c >= 1));
            }
            representations.push((p.clone(), combo));
        } else if witness.is_none() {
            witness = Some(p.clone());
        }
    }
    Ok(ConditionI {
        holds: witness.is_none(),
        variant,
        witness,
        representations,
    })
}

fn find_combination(
    juniors: &[BoxPoint],
    remaining: &[u64],
    terms_left: u64,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if terms_left == 0 {
        return remaining.iter().all(|&c| c == 0);
    }
    for (j, q) in juniors.iter().enumerate().skip(start) {
        if q.numerators.iter().zip(remaining).all(|(a, b)| a <= b) {
            let next: Vec<u64> = remaining
                .iter()
                .zip(&q.numerators)
                .map(|(a, b)| a - b)
                .collect();
            chosen.push(j);
            if find_combination(juniors, &next, terms_left - 1, j, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Crepant toric resolution of `C^n / A` for `n` in {2, 3}.
pub fn resolve(lattice: &OverLattice) -> Result<JuniorTriangulation> {
    lattice.require_sl("a toric resolution")?;
    let tri = match lattice.dimension {
        2 => triangulate::resolve_surface(lattice)?,
        3 => triangulate::resolve_threefold(lattice)?,
        n => {
            return Err(Error::requirement(format!(
                "a toric resolution requires dimension 2 or 3, got {n}"
            )))
        }
    };
    if tri.vertices.len() - lattice.dimension != crepant_divisor_count(lattice) {
        return Err(Error::invariant(
            "triangulation does not use every junior point as a vertex",
        ));
    }
    Ok(tri)
}

/// Unordered pairs of junior vertices that share an edge, sorted.
fn junior_adjacency(simplices: &[Vec<usize>], first_junior: usize) -> Vec<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for s in simplices {
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let (a, b) = (s[i].min(s[j]), s[i].max(s[j]));
                if a >= first_junior {
                    edges.insert((a, b));
                }
            }
        }
    }
    edges.into_iter().collect()
}
