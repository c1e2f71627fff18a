//! Finite matrix groups over a cyclotomic field: closure from generators,
//! element orders, conjugacy classes and cyclic subgroups.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;

use crate::cyclo::{CycNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Closure cap used when the caller does not supply one.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub order: u64,
    pub index: usize,
    /// Index of the inverse element.
    pub inverse: usize,
    /// Shortest word in the generators, as generator indices.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Lowest element index in the class.
    pub representative: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroup {
    /// Lowest-index element generating the subgroup.
    pub generator: usize,
    /// Sorted element indices.
    pub elements: Vec<usize>,
}

impl CyclicSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A closed finite subgroup of `GL(n, Q(zeta_N))`.
///
/// Element 0 is the identity, and elements are indexed in breadth-first
/// order from the generators, so lower indices have shorter words.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dimension: usize,
    field: Arc<CyclotomicField>,
    elements: Vec<GroupElement>,
    lookup: HashMap<Matrix, usize>,
    generators: Vec<usize>,
    generator_names: Vec<String>,
    exponent: u64,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    in_sl: bool,
}

/// Closes the group generated by `generators`, naming them `g1, g2, ...`.
pub fn close_group(generators: &[Matrix], cap: usize) -> Result<MatrixGroup> {
    let named: Vec<(String, Matrix)> = generators
        .iter()
        .enumerate()
        .map(|(i, m)| (format!("g{}", i + 1), m.clone()))
        .collect();
    close_named_group(&named, cap)
}

pub fn close_named_group(generators: &[(String, Matrix)], cap: usize) -> Result<MatrixGroup> {
    let Some((_, first)) = generators.first() else {
        return Err(Error::Input("at least one generator is required".into()));
    };
    let n = first.rows();
    let field = first.field().clone();
    for (name, g) in generators {
        if !g.is_square() || g.rows() != n {
            return Err(Error::Input(format!(
                "generator {name} is {}x{}, expected {n}x{n}",
                g.rows(),
                g.cols()
            )));
        }
        if g.field().order() != field.order() {
            return Err(Error::FieldMismatch {
                left: field.order(),
                right: g.field().order(),
            });
        }
        if g.determinant().is_zero() {
            return Err(Error::Input(format!("generator {name} is not invertible")));
        }
    }

    let identity = Matrix::identity(n, &field);
    let mut matrices = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut lookup = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, (_, g)) in generators.iter().enumerate() {
            let y = matrices[x].mul(g);
            if lookup.contains_key(&y) {
                continue;
            }
            if matrices.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            let idx = matrices.len();
            let mut w = words[x].clone();
            w.push(gi);
            words.push(w);
            lookup.insert(y.clone(), idx);
            matrices.push(y);
            queue.push_back(idx);
        }
    }

    let size = matrices.len();
    let mut elements = Vec::with_capacity(size);
    for (index, (matrix, word)) in matrices.into_iter().zip(words).enumerate() {
        let (order, inverse) = order_and_inverse(&matrix, &lookup, size)?;
        elements.push(GroupElement {
            matrix,
            order,
            index,
            inverse,
            word,
        });
    }
    let generator_idx: Vec<usize> = generators.iter().map(|(_, g)| lookup[g]).collect();
    let exponent = elements.iter().fold(1u64, |acc, e| acc.lcm(&e.order));
    let in_sl = generators.iter().all(|(_, g)| g.determinant().is_one());

    let mut group = MatrixGroup {
        dimension: n,
        field,
        elements,
        lookup,
        generators: generator_idx,
        generator_names: generators.iter().map(|(s, _)| s.clone()).collect(),
        exponent,
        classes: Vec::new(),
        class_of: Vec::new(),
        in_sl,
    };
    group.compute_classes();
    Ok(group)
}

fn order_and_inverse(
    g: &Matrix,
    lookup: &HashMap<Matrix, usize>,
    bound: usize,
) -> Result<(u64, usize)> {
    if g.is_identity() {
        return Ok((1, 0));
    }
    let mut prev = g.clone();
    let mut power = g.mul(g);
    let mut k = 2u64;
    while !power.is_identity() {
        if k as usize > bound {
            return Err(Error::invariant("element order exceeds group order"));
        }
        prev = power.clone();
        power = power.mul(g);
        k += 1;
    }
    let inverse = *lookup
        .get(&prev)
        .ok_or_else(|| Error::invariant("inverse missing from closed group"))?;
    Ok((k, inverse))
}

impl MatrixGroup {
    fn compute_classes(&mut self) {
        let size = self.elements.len();
        let mut class_of = vec![usize::MAX; size];
        let mut classes = Vec::new();
        for start in 0..size {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in &self.generators {
                    let sinv = self.elements[s].inverse;
                    let y = self.multiply(self.multiply(s, x), sinv);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
            });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &GroupElement {
        &self.elements[index]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn in_sl(&self) -> bool {
        self.in_sl
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, index: usize) -> usize {
        self.class_of[index]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].matrix.mul(&self.elements[b].matrix);
        self.lookup[&m]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.elements[a].inverse
    }

    /// `[g^0, g^1, ..., g^(r-1)]` for `g` of order `r`.
    pub fn cyclic_powers(&self, g: usize) -> Vec<usize> {
        let r = self.elements[g].order as usize;
        let mut out = Vec::with_capacity(r);
        let mut cur = 0;
        for _ in 0..r {
            out.push(cur);
            cur = self.multiply(cur, g);
        }
        out
    }

    pub fn power(&self, g: usize, k: u64) -> usize {
        let powers = self.cyclic_powers(g);
        powers[(k % powers.len() as u64) as usize]
    }

    /// True when every generator is a diagonal matrix.
    pub fn is_diagonal(&self) -> bool {
        self.generators
            .iter()
            .all(|&g| self.elements[g].matrix.is_diagonal())
    }

    /// Human-readable name of an element: its shortest word in the
    /// generators with runs collapsed (`A^2B`), suffixed with `=-1` when the
    /// element is minus the identity. The identity is `1`.
    pub fn label(&self, index: usize) -> String {
        let e = &self.elements[index];
        if e.word.is_empty() {
            return "1".to_string();
        }
        let sep = if self.generator_names.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < e.word.len() {
            let g = e.word[i];
            let mut j = i;
            while j < e.word.len() && e.word[j] == g {
                j += 1;
            }
            let name = &self.generator_names[g];
            parts.push(if j - i == 1 {
                name.clone()
            } else {
                format!("{name}^{}", j - i)
            });
            i = j;
        }
        let mut label = parts.join(sep);
        let minus_one = Matrix::scalar(self.dimension, &CycNum::from_integer(&self.field, -1));
        if e.matrix == minus_one {
            label.push_str("=-1");
        }
        label
    }

    /// All cyclic subgroups that are maximal under inclusion, ordered by
    /// generator index.
    pub fn maximal_cyclic_subgroups(&self) -> Vec<CyclicSubgroup> {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subgroups: Vec<CyclicSubgroup> = Vec::new();
        let mut sub_of = vec![0usize; self.order()];
        for g in 0..self.order() {
            let mut elems = self.cyclic_powers(g);
            elems.sort_unstable();
            let id = *ids.entry(elems.clone()).or_insert_with(|| {
                subgroups.push(CyclicSubgroup {
                    generator: g,
                    elements: elems,
                });
                subgroups.len() - 1
            });
            sub_of[g] = id;
        }
        let mut maximal = vec![true; subgroups.len()];
        for (id, s) in subgroups.iter().enumerate() {
            for &x in &s.elements {
                if sub_of[x] != id {
                    maximal[sub_of[x]] = false;
                }
            }
        }
        subgroups
            .into_iter()
            .zip(maximal)
            .filter_map(|(s, m)| m.then_some(s))
            .collect()
    }

    /// The same group with entries re-embedded into `Q(zeta_L)`,
    /// `L = lcm(N, exponent)`, so every eigenvalue lies in the field.
    pub fn lift_to_exponent_field(&self) -> Result<MatrixGroup> {
        let target = self.field.order().lcm(&self.exponent);
        if target == self.field.order() {
            return Ok(self.clone());
        }
        let field = CyclotomicField::new(target);
        let mut lifted = self.clone();
        lifted.field = field.clone();
        lifted.lookup.clear();
        for e in &mut lifted.elements {
            e.matrix = e.matrix.embed(&field)?;
            lifted.lookup.insert(e.matrix.clone(), e.index);
        }
        Ok(lifted)
    }

    /// True when the field already contains a primitive `exponent`-th root.
    pub fn is_lifted(&self) -> bool {
        self.field.order() % self.exponent == 0
    }
}

/// Replaces every generator by its inverse, keeping the names.
///
/// The resulting group is the same set of matrices, but each generator
/// name now denotes the inverse element, so per-word reports show the
/// grading obtained from the opposite choice of primitive root.
pub fn invert_generators(generators: &[(String, Matrix)]) -> Result<Vec<(String, Matrix)>> {
    generators
        .iter()
        .map(|(name, g)| {
            g.inverse()
                .map(|inv| (name.clone(), inv))
                .ok_or_else(|| Error::Input(format!("generator {name} is not invertible")))
        })
        .collect()
}
