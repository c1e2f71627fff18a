//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;

use common::{ade_type, hirzebruch_jung, load, load_file, CORPUS};
use mckay_core::age::{eigen_exponents, grade, GradedClassTable};
use mckay_core::cyclo::CycNum;
use mckay_core::matgroup::{close_named_group, invert_generators, MatrixGroup, DEFAULT_CAP};
use mckay_core::matrix::Matrix;
use mckay_core::quiver::{fold, ChainOrientation, FoldedGraph};
use mckay_core::toric::{
    build_lattice, condition_i, crepant_divisor_count, gamma2_hyperplane_count, junior_points,
    resolve, CombinationVariant, DiagonalGenerator, DiagonalGroupSpec,
};
use mckay_core::valuation::{analyze_class, quotient_discrepancy};
use num_bigint::BigInt;
use num_rational::BigRational;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn minus_one(g: &MatrixGroup) -> Option<usize> {
    let m = Matrix::scalar(g.dimension(), &CycNum::from_integer(g.field(), -1));
    g.index_of(&m)
}

fn class_set(g: &MatrixGroup, elements: &[usize]) -> BTreeSet<usize> {
    elements.iter().map(|&e| g.class_of(e)).collect()
}

fn criterion_1() -> Outcome {
    let g = load("trihedral");
    ensure!(g.order() == 27, "order {}", g.order());
    ensure!(g.classes().len() == 11, "{} classes", g.classes().len());
    let t = grade(&g).map_err(|e| e.to_string())?;
    let f = g.field();
    let d = |a: i64, b: i64, c: i64| {
        Matrix::diagonal(vec![
            CycNum::zeta_pow(f, a),
            CycNum::zeta_pow(f, b),
            CycNum::zeta_pow(f, c),
        ])
    };
    let tm = g.element(g.generators()[1]).matrix.clone();
    let t2 = tm.mul(&tm);
    let listed = [
        d(0, 1, 2),
        d(0, 2, 1),
        d(1, 1, 1),
        tm.clone(),
        d(1, 1, 1).mul(&tm),
        d(2, 2, 2).mul(&tm),
        t2.clone(),
        d(1, 1, 1).mul(&t2),
        d(2, 2, 2).mul(&t2),
    ];
    let junior: BTreeSet<usize> = t.junior().iter().copied().collect();
    ensure!(junior.len() == 9, "{} junior classes", junior.len());
    let senior = g.class_of(g.index_of(&d(2, 2, 2)).unwrap());
    ensure!(t.senior(2) == [senior], "Gamma_2 = {:?}", t.senior(2));
    let iso = g.class_of(g.index_of(&d(1, 1, 1)).unwrap());
    ensure!(t.gamma1_zero == [iso], "Gamma_1^(0) = {:?}", t.gamma1_zero);
    let b = t.betti_prediction().map_err(|e| e.to_string())?;
    ensure!((b.h0, b.h2, b.h4, b.euler) == (1, 9, 1, 11), "betti {b:?}");

    let idx: Vec<usize> = listed
        .iter()
        .map(|m| g.index_of(m).ok_or("listed element not in group".to_string()))
        .collect::<Result<_, _>>()?;
    ensure!(
        idx.iter().all(|&e| junior.contains(&g.class_of(e))),
        "a listed element is not junior"
    );
    let listed_classes = class_set(&g, &idx);
    if listed_classes != junior {
        let names = ["1/3(0,1,2)", "1/3(0,2,1)", "1/3(1,1,1)", "T", "1/3(1,1,1)T",
            "1/3(2,2,2)T", "T^2", "1/3(1,1,1)T^2", "1/3(2,2,2)T^2"];
        let merged: Vec<String> = listed_classes
            .iter()
            .map(|&c| {
                let same: Vec<&str> = (0..9).filter(|&i| g.class_of(idx[i]) == c).map(|i| names[i]).collect();
                same.join(" ~ ")
            })
            .filter(|s| s.contains('~'))
            .collect();
        return Err(format!(
            "the nine listed representatives cover only {} of the 9 junior classes ({})",
            listed_classes.len(),
            merged.join("; ")
        ));
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let g = load("icosahedral");
    ensure!(g.order() == 60, "closes to order {}", g.order());
    let t = grade(&g).map_err(|e| e.to_string())?;
    let ages: Vec<u64> = t.classes.iter().map(|c| c.age).collect();
    ensure!(ages == [0, 1, 1, 1, 1], "ages {ages:?}");
    ensure!(t.junior().len() == 4, "{} junior classes", t.junior().len());
    ensure!(t.senior(2).is_empty(), "Gamma_2 nonempty");
    let b = t.betti_prediction().map_err(|e| e.to_string())?;
    ensure!(b.euler == 5, "euler {}", b.euler);
    Ok(())
}

fn folded(name: &str) -> Result<(MatrixGroup, FoldedGraph), String> {
    let g = load(name);
    let f = fold(&g, ChainOrientation::Smallest).map_err(|e| e.to_string())?;
    let r = fold(&g, ChainOrientation::Reversed).map_err(|e| e.to_string())?;
    ensure!(f == r, "{name}: orientation changes the folded graph");
    Ok((g, f))
}

fn criterion_3() -> Outcome {
    let (g, f) = folded("bd8")?;
    ensure!(ade_type(f.nodes.len(), &f.edges).as_deref() == Some("D4"), "BD8 is not D4");
    ensure!(f.nodes.len() == 4 && f.edges.len() == 3, "BD8 size");
    let center = f.position_of_class(g.class_of(minus_one(&g).unwrap())).unwrap();
    ensure!(f.degree(center) == 3, "BD8 center is not class(-1)");

    let (_, f) = folded("bd12")?;
    ensure!(ade_type(f.nodes.len(), &f.edges).as_deref() == Some("D5"), "BD12 is not D5");

    let (g, f) = folded("bt48")?;
    ensure!(ade_type(f.nodes.len(), &f.edges).as_deref() == Some("E6"), "BT48 is not E6");
    let [a, b, c] = [0, 1, 2].map(|i| g.generators()[i]);
    ensure!(
        class_set(&g, &[a, g.power(a, 3), b, g.power(b, 3)]).len() == 1,
        "A, A^3, B, B^3 are not one class"
    );
    let c_powers: Vec<usize> = (1..6).map(|k| g.power(c, k)).collect();
    ensure!(class_set(&g, &c_powers).len() == 5, "<C> classes are not distinct");
    let pos = |e: usize| f.position_of_class(g.class_of(e)).unwrap();
    let m1 = pos(minus_one(&g).unwrap());
    ensure!(m1 == pos(g.power(c, 3)), "C^3 != -1");
    let edge = |x: usize, y: usize| f.edges.contains(&(x.min(y), x.max(y)));
    let p: Vec<usize> = c_powers.iter().map(|&e| pos(e)).collect();
    ensure!(
        edge(p[0], p[1]) && edge(p[1], p[2]) && edge(p[2], p[3]) && edge(p[3], p[4]),
        "chain C - C^2 - -1 - C^4 - C^5 missing"
    );
    ensure!(edge(pos(a), m1) && f.degree(pos(a)) == 1, "A is not a leaf on -1");
    Ok(())
}

fn generator_power_ages(g: &MatrixGroup) -> Result<Vec<u64>, String> {
    let t = grade(g).map_err(|e| e.to_string())?;
    let gen = g.generators()[0];
    Ok((1..7)
        .map(|k| t.element_expressions[g.power(gen, k)].age.unwrap())
        .collect())
}

fn criterion_4() -> Outcome {
    let file = load_file("cyclic7");
    let gens = file.named_matrices();
    let g = close_named_group(&gens, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let ages = generator_power_ages(&g)?;
    ensure!(ages == [1, 1, 2, 1, 2, 2], "ages of g^1..g^6: {ages:?}");
    let inv = close_named_group(&invert_generators(&gens).unwrap(), DEFAULT_CAP)
        .map_err(|e| e.to_string())?;
    let ages = generator_power_ages(&inv)?;
    ensure!(ages == [2, 2, 1, 2, 1, 1], "inverse choice ages: {ages:?}");
    Ok(())
}

fn criterion_5() -> Outcome {
    let l = build_lattice(&load_file("terminal4").diagonal_spec().unwrap());
    ensure!(junior_points(&l).is_empty(), "junior points exist");
    let g2 = gamma2_hyperplane_count(&l).map_err(|e| e.to_string())?;
    ensure!(g2 == 4, "{g2} points on sum = 2");
    for v in [CombinationVariant::Positive, CombinationVariant::NonNegative] {
        let c = condition_i(&l, v).map_err(|e| e.to_string())?;
        ensure!(!c.holds, "condition (i) holds ({v})");
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let l = build_lattice(&load_file("quarter4").diagonal_spec().unwrap());
    let j: Vec<String> = junior_points(&l).iter().map(|p| p.to_string()).collect();
    ensure!(j == ["1/4,1/4,1/4,1/4"], "junior points {j:?}");
    Ok(())
}

/// `|det(v_1..v_n)| * index` computed from the vertex rationals.
fn cone_volume(vertices: &[Vec<BigRational>], index: usize) -> BigRational {
    let n = vertices.len();
    let mut m: Vec<Vec<BigRational>> = vertices.to_vec();
    let mut det = BigRational::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| m[i][col] != BigRational::from_integer(0.into())) else {
            return BigRational::from_integer(0.into());
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for i in col + 1..n {
            let factor = m[i][col].clone() / m[col][col].clone();
            for j in col..n {
                let v = m[col][j].clone() * factor.clone();
                m[i][j] -= v;
            }
        }
    }
    let abs = if det < BigRational::from_integer(0.into()) { -det } else { det };
    abs * BigRational::from_integer(BigInt::from(index))
}

fn resolution_checks(r: u64, a: &[u64]) -> Result<(usize, usize), String> {
    let spec = DiagonalGroupSpec::new(a.len(), vec![DiagonalGenerator::new(r, a.to_vec())]).unwrap();
    let l = build_lattice(&spec);
    let t = resolve(&l).map_err(|e| e.to_string())?;
    let one = BigRational::from_integer(1.into());
    for s in &t.simplices {
        let verts: Vec<Vec<BigRational>> = s
            .iter()
            .map(|&v| {
                let p = &t.vertices[v];
                p.numerators
                    .iter()
                    .map(|&b| BigRational::new(b.into(), p.denominator.into()))
                    .collect()
            })
            .collect();
        ensure!(cone_volume(&verts, l.index()) == one, "cone {s:?} is not basic");
    }
    Ok((t.simplex_count(), crepant_divisor_count(&l)))
}

/// `2i + b - 2` unimodular triangles for a lattice triangle with `i`
/// interior and `b` boundary points.
fn pick_count(r: u64, a: &[u64]) -> usize {
    let spec = DiagonalGroupSpec::new(3, vec![DiagonalGenerator::new(r, a.to_vec())]).unwrap();
    let juniors = junior_points(&build_lattice(&spec));
    let interior = juniors.iter().filter(|p| p.numerators.iter().all(|&x| x > 0)).count();
    let boundary = 3 + juniors.len() - interior;
    2 * interior + boundary - 2
}

fn criterion_7() -> Outcome {
    let (tri, crep) = resolution_checks(3, &[1, 1, 1])?;
    ensure!((tri, crep) == (3, 1), "1/3(1,1,1): {tri} triangles, {crep} divisors");
    ensure!(tri == pick_count(3, &[1, 1, 1]), "1/3(1,1,1) disagrees with Pick");
    let (tri, crep) = resolution_checks(7, &[1, 2, 4])?;
    ensure!((tri, crep) == (7, 3), "1/7(1,2,4): {tri} triangles, {crep} divisors");
    ensure!(tri == pick_count(7, &[1, 2, 4]), "1/7(1,2,4) disagrees with Pick");
    for r in 2..=12u64 {
        let (cones, points) = resolution_checks(r, &[1, r - 1])?;
        let chain = hirzebruch_jung(r, r - 1).len();
        ensure!(points as u64 == r - 1 && points == chain, "1/{r}(1,{}): {points} points", r - 1);
        ensure!(cones as u64 == r && cones == chain + 1, "1/{r}(1,{}): {cones} cones", r - 1);
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let zero = BigRational::from_integer(0.into());
    let mut checked = 0;
    for name in CORPUS {
        let g = load(name).lift_to_exponent_field().unwrap();
        let t = grade(&g).map_err(|e| format!("{name}: {e}"))?;
        for &c in t.junior() {
            let cv = analyze_class(&g, c, None).map_err(|e| format!("{name}: {e}"))?;
            let rep = cv.representative;
            let mut generated = g.cyclic_powers(rep);
            generated.sort_unstable();
            ensure!(cv.ram == generated, "{name} class {c}: Ram != <g>");
            let r = g.element(rep).order;
            let a_f = BigRational::from_integer(BigInt::from(cv.expression.exponent_sum()) - 1);
            let a_e = quotient_discrepancy(&a_f, r).map_err(|e| e.to_string())?;
            ensure!(a_e == zero, "{name} class {c}: a_E = {a_e}");
            ensure!(cv.ram.iter().all(|x| cv.stab.contains(x)), "{name} class {c}: Ram not in Stab");
            ensure!(
                cv.ram.iter().any(|&x| g.element(x).order as usize == cv.ram.len()),
                "{name} class {c}: Ram not cyclic"
            );
            ensure!(cv.ram_normal_in_stab, "{name} class {c}: Ram not normal in Stab");
            checked += 1;
        }
    }
    ensure!(checked > 0, "no junior classes checked");
    Ok(())
}

fn kernel_multiplicities_agree(g: &MatrixGroup, e: usize) -> Result<(), String> {
    let el = g.element(e);
    let x = eigen_exponents(&el.matrix, el.order).map_err(|err| err.to_string())?;
    ensure!(x.exponents.len() == g.dimension(), "multiplicities do not sum to n");
    let n = g.dimension();
    let step = (g.field().order() / el.order) as i64;
    for a in 0..el.order {
        let lambda = Matrix::scalar(n, &CycNum::zeta_pow(g.field(), step * a as i64));
        let kernel_dim = n - el.matrix.sub(&lambda).rank();
        let count = x.exponents.iter().filter(|&&y| y == a).count();
        ensure!(kernel_dim == count, "element {e}: exponent {a} kernel {kernel_dim} vs {count}");
    }
    Ok(())
}

fn inverse_bijection_holds(g: &MatrixGroup, t: &GradedClassTable) -> bool {
    let image: BTreeSet<usize> = t
        .gamma1_zero
        .iter()
        .map(|&c| g.class_of(g.inverse_of(g.classes()[c].representative)))
        .collect();
    let target: BTreeSet<usize> = t.senior(2).iter().copied().collect();
    image.len() == t.gamma1_zero.len() && image == target
}

fn criterion_9() -> Outcome {
    for name in CORPUS {
        let g = load(name).lift_to_exponent_field().unwrap();
        for e in 0..g.order() {
            kernel_multiplicities_agree(&g, e).map_err(|m| format!("{name}: {m}"))?;
        }
        let t = grade(&g).map_err(|e| format!("{name}: {e}"))?;
        for c in g.classes() {
            let ages: BTreeSet<Option<u64>> =
                c.members.iter().map(|&m| t.element_expressions[m].age).collect();
            ensure!(ages.len() == 1, "{name}: class {} not age-constant", c.representative);
        }
        if g.dimension() == 2 {
            ensure!(
                t.element_expressions.iter().skip(1).all(|x| x.age == Some(1)),
                "{name}: SL(2) element of age != 1"
            );
        }
        if g.dimension() == 3 {
            ensure!(
                t.element_expressions
                    .iter()
                    .filter(|x| x.fix_dim > 0 && x.fix_dim < 3)
                    .all(|x| x.is_junior()),
                "{name}: element with fixed vectors is not junior"
            );
            ensure!(
                t.gamma1_zero.len() == t.senior(2).len() && inverse_bijection_holds(&g, &t),
                "{name}: g -> g^-1 is not a bijection onto Gamma_2"
            );
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("trihedral group: 27 elements, 11 classes, 9 listed junior classes, betti (1,9,1), euler 11", criterion_1),
        ("icosahedral group: order 60, ages (0,1,1,1,1), 4 juniors, euler 5", criterion_2),
        ("folded diagrams: BD8 -> D4, BD12 -> D5, BT48 -> E6 with identifications", criterion_3),
        ("1/7(1,2,4): ages of powers, swapped under the inverse choice", criterion_4),
        ("1/5(1,4,2,3): no juniors, 4 points on sum 2, condition (i) fails", criterion_5),
        ("1/4(1,1,1,1): exactly one junior point", criterion_6),
        ("toric resolutions: triangle and cone counts, unit volumes", criterion_7),
        ("ramification: Ram(v_g) = <g>, a_E = 0, Ram in Stab, cyclic", criterion_8),
        ("invariants: multiplicities, age-constant classes, fixed loci, inverse bijection", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS  criterion {}: {name}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {}: {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
