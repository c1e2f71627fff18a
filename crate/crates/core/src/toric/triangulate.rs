use super::{junior_adjacency, junior_points, LatticePoint, OverLattice};
use crate::error::{Error, Result};

/// A subdivision of the positive octant into cones over the simplices of a
/// triangulation of the junior simplex.
///
/// Vertices `0..n` are the unit vectors `e_i`; the rest are the junior
/// points in lexicographic order. All vertices share the lattice
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JuniorTriangulation {
    pub dimension: usize,
    pub denominator: u64,
    pub vertices: Vec<LatticePoint>,
    /// Vertex index tuples, sorted. Segments for `n = 2`, triangles for `n = 3`.
    pub simplices: Vec<Vec<usize>>,
    /// Pairs of junior vertices joined by an edge.
    pub adjacency: Vec<(usize, usize)>,
    /// Normalized volume of each simplex's cone relative to `L`.
    pub volumes: Vec<u64>,
}

impl JuniorTriangulation {
    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn total_volume(&self) -> u64 {
        self.volumes.iter().sum()
    }

    pub fn is_basic(&self) -> bool {
        self.volumes.iter().all(|&v| v == 1)
    }

    pub fn junior_vertices(&self) -> std::ops::Range<usize> {
        self.dimension..self.vertices.len()
    }
}

fn vertex_set(lattice: &OverLattice) -> Vec<Vec<u64>> {
    let n = lattice.dimension;
    let d = lattice.denominator;
    let mut vertices: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { d } else { 0 }).collect())
        .collect();
    vertices.extend(junior_points(lattice).into_iter().map(|p| p.numerators));
    vertices
}

fn det_i128(rows: &[&Vec<u64>]) -> i128 {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match m.len() {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        k => unreachable!("determinant of size {k}"),
    }
}

/// `|det(v_1..v_n)| * [L : Z^n] / d^n` for vertices given as numerators
/// over `d`.
fn normalized_volume(lattice: &OverLattice, vertices: &[Vec<u64>], simplex: &[usize]) -> Result<u64> {
    let rows: Vec<&Vec<u64>> = simplex.iter().map(|&i| &vertices[i]).collect();
    let scaled = det_i128(&rows).unsigned_abs() * lattice.index() as u128;
    let dn = (lattice.denominator as u128).pow(lattice.dimension as u32);
    if scaled % dn != 0 {
        return Err(Error::invariant(format!(
            "cone {simplex:?} has non-integral normalized volume"
        )));
    }
    Ok((scaled / dn) as u64)
}

fn finish(
    lattice: &OverLattice,
    vertices: Vec<Vec<u64>>,
    mut simplices: Vec<Vec<usize>>,
) -> Result<JuniorTriangulation> {
    for s in &mut simplices {
        s.sort_unstable();
    }
    simplices.sort();
    let volumes = simplices
        .iter()
        .map(|s| normalized_volume(lattice, &vertices, s))
        .collect::<Result<Vec<_>>>()?;
    if let Some(pos) = volumes.iter().position(|&v| v != 1) {
        return Err(Error::invariant(format!(
            "cone {:?} is not basic (normalized volume {})",
            simplices[pos], volumes[pos]
        )));
    }
    let n = lattice.dimension;
    let adjacency = junior_adjacency(&simplices, n);
    Ok(JuniorTriangulation {
        dimension: n,
        denominator: lattice.denominator,
        vertices: vertices
            .into_iter()
            .map(|v| LatticePoint::new(lattice.denominator, v))
            .collect(),
        simplices,
        adjacency,
        volumes,
    })
}

pub(super) fn resolve_surface(lattice: &OverLattice) -> Result<JuniorTriangulation> {
    let vertices = vertex_set(lattice);
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by_key(|&i| vertices[i][0]);
    let simplices = order.windows(2).map(|w| w.to_vec()).collect();
    finish(lattice, vertices, simplices)
}

type Tri = [usize; 3];

fn orient(p: &[(i64, i64)], a: usize, b: usize, c: usize) -> i128 {
    let (ax, ay) = (p[a].0 as i128, p[a].1 as i128);
    let (bx, by) = (p[b].0 as i128 - ax, p[b].1 as i128 - ay);
    let (cx, cy) = (p[c].0 as i128 - ax, p[c].1 as i128 - ay);
    bx * cy - by * cx
}

/// Incremental triangulation of the junior triangle in the chart
/// `(u_1, u_2)`, which is an affine isomorphism from the plane
/// `u_1 + u_2 + u_3 = d` onto `R^2`. Every lattice point is inserted, so each
/// final triangle is empty and hence unimodular; this is re-checked in
/// `finish` through the 3-dimensional determinants.
pub(super) fn resolve_threefold(lattice: &OverLattice) -> Result<JuniorTriangulation> {
    let vertices = vertex_set(lattice);
    let chart: Vec<(i64, i64)> = vertices
        .iter()
        .map(|v| (v[0] as i64, v[1] as i64))
        .collect();
    let mut tris: Vec<Tri> = vec![[0, 1, 2]];
    debug_assert!(orient(&chart, 0, 1, 2) > 0);
    for p in 3..vertices.len() {
        insert_point(&chart, &mut tris, p)?;
    }
    let simplices = tris.iter().map(|t| t.to_vec()).collect();
    finish(lattice, vertices, simplices)
}

fn insert_point(chart: &[(i64, i64)], tris: &mut Vec<Tri>, p: usize) -> Result<()> {
    let Some(t_idx) = tris.iter().position(|&[a, b, c]| {
        orient(chart, a, b, p) >= 0 && orient(chart, b, c, p) >= 0 && orient(chart, c, a, p) >= 0
    }) else {
        return Err(Error::invariant("junior point outside the junior triangle"));
    };
    let t = tris.swap_remove(t_idx);
    let o = [
        orient(chart, t[0], t[1], p),
        orient(chart, t[1], t[2], p),
        orient(chart, t[2], t[0], p),
    ];
    match o.iter().filter(|&&x| x == 0).count() {
        0 => {
            let [a, b, c] = t;
            tris.extend([[a, b, p], [b, c, p], [c, a, p]]);
        }
        1 => {
            let k = o.iter().position(|&x| x == 0).unwrap();
            let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            tris.extend([[a, p, c], [p, b, c]]);
            // the triangle on the other side of edge ab, if any, lists it as b -> a
            let neighbour = tris.iter().position(|tri| {
                (0..3).any(|i| tri[i] == b && tri[(i + 1) % 3] == a)
            });
            if let Some(n_idx) = neighbour {
                let nt = tris.swap_remove(n_idx);
                let i = (0..3).find(|&i| nt[i] == b).unwrap();
                let x = nt[(i + 2) % 3];
                tris.extend([[b, p, x], [p, a, x]]);
            }
        }
        _ => return Err(Error::invariant("duplicate vertex in triangulation")),
    }
    Ok(())
}
