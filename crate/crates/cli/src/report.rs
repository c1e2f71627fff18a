//! JSON and DOT reports.

use std::path::Path;

use mckay_core::age::{element_expression, grade, FractionalExpression};
use mckay_core::groupfile::{read_group_file, GroupFile};
use mckay_core::matgroup::{close_named_group, invert_generators, MatrixGroup};
use mckay_core::quiver::{fold, to_dot, ChainOrientation};
use mckay_core::toric::{
    build_lattice, condition_i, crepant_divisor_count, discrepancy, gamma2_hyperplane_count,
    junior_points, resolve, BoxPoint, CombinationVariant, DiagonalGroupSpec, OverLattice,
};
use mckay_core::valuation::analyze_class;
use mckay_core::{Error, Result};
use serde::Serialize;

use crate::{Choice, Cli, Command, DiagramFormat, ToricAction, Variant, SCHEMA_VERSION};

/// Fields present in every JSON report.
#[derive(Debug, Serialize)]
pub struct Header {
    pub schema_version: u32,
    pub command: String,
    pub choice: &'static str,
    pub dimension: usize,
    pub order: usize,
    pub exponent: u64,
    pub in_sl: bool,
    pub class_count: usize,
}

#[derive(Debug, Serialize)]
struct Report<T: Serialize> {
    #[serde(flatten)]
    header: Header,
    #[serde(flatten)]
    body: T,
}

#[derive(Debug, Serialize)]
pub struct ClassEntry {
    pub index: usize,
    pub representative: String,
    pub representative_index: usize,
    pub size: usize,
    pub order: u64,
    pub expression: String,
    pub exponents: Vec<u64>,
    pub age: Option<u64>,
    pub fix_dim: usize,
    /// `e_1, ..., e_n` of the `a_i / r`; `e_1` is the age.
    pub elementary_symmetric: Vec<String>,
}

#[derive(Debug, Serialize)]
struct ClassRef {
    index: usize,
    representative: String,
    expression: String,
}

#[derive(Debug, Serialize)]
struct PointEntry {
    point: String,
    order: u64,
    coordinate_sum: String,
    age: Option<u64>,
    discrepancy: Option<String>,
    exceptional: bool,
}

struct Loaded {
    file: GroupFile,
    group: MatrixGroup,
}

fn load(cli: &Cli, path: &Path) -> Result<Loaded> {
    let file = read_group_file(path)?;
    let mut gens = file.named_matrices();
    if cli.choice == Choice::Inverse {
        gens = invert_generators(&gens)?;
    }
    let group = close_named_group(&gens, cli.max_order)?;
    Ok(Loaded { file, group })
}

fn header(cli: &Cli, command: &str, group: &MatrixGroup) -> Header {
    Header {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        choice: match cli.choice {
            Choice::Canonical => "canonical",
            Choice::Inverse => "inverse",
        },
        dimension: group.dimension(),
        order: group.order(),
        exponent: group.exponent(),
        in_sl: group.in_sl(),
        class_count: group.classes().len(),
    }
}

fn to_json<T: Serialize>(header: Header, body: T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Report { header, body })
        .map_err(|e| Error::Invariant(format!("JSON serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Info { file } => {
            let l = load(cli, file)?;
            #[derive(Serialize)]
            struct Info {
                generators: Vec<String>,
                diagonal: bool,
            }
            let body = Info {
                generators: l.group.generator_names().to_vec(),
                diagonal: l.group.is_diagonal(),
            };
            to_json(header(cli, "info", &l.group), body)
        }
        Command::Classes { file } => {
            let l = load(cli, file)?;
            #[derive(Serialize)]
            struct Classes {
                classes: Vec<ClassEntry>,
            }
            let body = Classes {
                classes: class_entries(&l.group)?,
            };
            to_json(header(cli, "classes", &l.group), body)
        }
        Command::Betti { file } => betti(cli, file),
        Command::Toric {
            action,
            variant,
            file,
        } => toric(cli, *action, *variant, file),
        Command::Diagram { format, file } => diagram(cli, *format, file),
        Command::Ram { class, probe, file } => ram(cli, *class, *probe, file),
    }
}

/// Per-class data; for SL groups the library grading is run as well so
/// its consistency checks apply.
pub fn class_entries(group: &MatrixGroup) -> Result<Vec<ClassEntry>> {
    let lifted = group.lift_to_exponent_field()?;
    if group.in_sl() {
        grade(&lifted)?;
    }
    group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let rep = c.representative;
            let e = element_expression(lifted.element(rep))?;
            Ok(ClassEntry {
                index: i,
                representative: group.label(rep),
                representative_index: rep,
                size: c.size(),
                order: e.order,
                expression: e.to_string(),
                age: e.age,
                fix_dim: e.fix_dim,
                elementary_symmetric: e.elementary_symmetric().iter().map(|x| x.to_string()).collect(),
                exponents: e.exponents,
            })
        })
        .collect()
}

fn class_ref(group: &MatrixGroup, index: usize, e: &FractionalExpression) -> ClassRef {
    ClassRef {
        index,
        representative: group.label(group.classes()[index].representative),
        expression: e.to_string(),
    }
}

fn betti(cli: &Cli, file: &Path) -> Result<String> {
    let l = load(cli, file)?;
    let g = &l.group;
    if g.dimension() != 3 {
        return Err(Error::Requirement(format!(
            "betti requires dimension 3, got {}",
            g.dimension()
        )));
    }
    if !g.in_sl() {
        return Err(Error::Requirement(
            "betti requires a subgroup of SL(3); some generator has determinant != 1".into(),
        ));
    }
    let table = grade(g)?;
    let b = table.betti_prediction()?;
    let pairs = table.inverse_bijection()?;
    let expr = |c: usize| &table.classes[c].expression;
    #[derive(Serialize)]
    struct Betti {
        h0: usize,
        h2: usize,
        h4: usize,
        euler: usize,
        junior: Vec<ClassRef>,
        gamma2: Vec<ClassRef>,
        gamma1_zero: Vec<ClassRef>,
        inverse_pairing: Vec<[usize; 2]>,
    }
    let refs = |ids: &[usize]| ids.iter().map(|&c| class_ref(g, c, expr(c))).collect();
    let body = Betti {
        h0: b.h0,
        h2: b.h2,
        h4: b.h4,
        euler: b.euler,
        junior: refs(table.junior()),
        gamma2: refs(table.senior(2)),
        gamma1_zero: refs(&table.gamma1_zero),
        inverse_pairing: pairs.iter().map(|&(a, b)| [a, b]).collect(),
    };
    to_json(header(cli, "betti", g), body)
}

fn point_entry(p: &BoxPoint) -> Result<PointEntry> {
    let d = if p.is_origin() {
        None
    } else {
        Some(discrepancy(&p.reduced())?)
    };
    Ok(PointEntry {
        point: p.to_string(),
        order: p.order(),
        coordinate_sum: p.coordinate_sum().to_string(),
        age: p.age(),
        exceptional: d.as_ref().is_some_and(|d| d.exceptional),
        discrepancy: d.map(|d| d.value.to_string()),
    })
}

fn toric_spec(cli: &Cli, file: &GroupFile) -> Result<DiagonalGroupSpec> {
    let spec = file.diagonal_spec()?;
    Ok(match cli.choice {
        Choice::Canonical => spec,
        Choice::Inverse => spec.inverted(),
    })
}

fn toric(cli: &Cli, action: ToricAction, variant: Variant, path: &Path) -> Result<String> {
    let l = load(cli, path)?;
    let spec = toric_spec(cli, &l.file)?;
    let lattice = build_lattice(&spec);
    let variant = match variant {
        Variant::Positive => CombinationVariant::Positive,
        Variant::Nonnegative => CombinationVariant::NonNegative,
    };
    let h = |name: &str| header(cli, &format!("toric {name}"), &l.group);
    match action {
        ToricAction::Juniors => {
            #[derive(Serialize)]
            struct Juniors {
                denominator: u64,
                count: usize,
                points: Vec<PointEntry>,
            }
            let points = junior_points(&lattice)
                .iter()
                .map(point_entry)
                .collect::<Result<Vec<_>>>()?;
            let body = Juniors {
                denominator: lattice.denominator,
                count: points.len(),
                points,
            };
            to_json(h("juniors"), body)
        }
        ToricAction::Box => {
            #[derive(Serialize)]
            struct BoxReport {
                denominator: u64,
                index: usize,
                points: Vec<PointEntry>,
            }
            let body = BoxReport {
                denominator: lattice.denominator,
                index: lattice.index(),
                points: lattice
                    .points
                    .iter()
                    .map(point_entry)
                    .collect::<Result<Vec<_>>>()?,
            };
            to_json(h("box"), body)
        }
        ToricAction::Resolve => {
            let t = resolve(&lattice)?;
            let c = condition_i(&lattice, variant)?;
            if !c.holds {
                return Err(Error::Invariant(
                    "a basic subdivision exists but condition (i) fails".into(),
                ));
            }
            #[derive(Serialize)]
            struct Resolve {
                denominator: u64,
                index: usize,
                crepant_divisor_count: usize,
                vertices: Vec<String>,
                simplices: Vec<Vec<usize>>,
                volumes: Vec<u64>,
                adjacency: Vec<[usize; 2]>,
            }
            let body = Resolve {
                denominator: t.denominator,
                index: lattice.index(),
                crepant_divisor_count: crepant_divisor_count(&lattice),
                vertices: t.vertices.iter().map(|v| v.to_string()).collect(),
                simplices: t.simplices.clone(),
                volumes: t.volumes.clone(),
                adjacency: t.adjacency.iter().map(|&(a, b)| [a, b]).collect(),
            };
            to_json(h("resolve"), body)
        }
        ToricAction::Check => to_json(h("check"), check(&lattice, variant)?),
    }
}

#[derive(Serialize)]
struct ConditionReport {
    variant: String,
    holds: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct Check {
    junior_count: usize,
    condition_i: ConditionReport,
    /// Whether a basic subdivision with junior rays exists; only decided
    /// in dimensions 2 and 3.
    condition_ii: Option<bool>,
    gamma2_hyperplane_count: Option<usize>,
}

fn check(lattice: &OverLattice, variant: CombinationVariant) -> Result<Check> {
    let c = condition_i(lattice, variant)?;
    let condition_ii = match lattice.dimension {
        2 | 3 => Some(resolve(lattice).is_ok()),
        _ => None,
    };
    if condition_ii == Some(true) && !c.holds {
        return Err(Error::Invariant(
            "a basic subdivision exists but condition (i) fails".into(),
        ));
    }
    Ok(Check {
        junior_count: crepant_divisor_count(lattice),
        condition_i: ConditionReport {
            variant: c.variant.to_string(),
            holds: c.holds,
            witness: c.witness.map(|w| w.to_string()),
        },
        condition_ii,
        gamma2_hyperplane_count: if lattice.dimension == 4 {
            Some(gamma2_hyperplane_count(lattice)?)
        } else {
            None
        },
    })
}

fn diagram(cli: &Cli, format: DiagramFormat, path: &Path) -> Result<String> {
    let l = load(cli, path)?;
    let graph = fold(&l.group, ChainOrientation::Smallest)?;
    match format {
        DiagramFormat::Dot => Ok(to_dot(&graph)),
        DiagramFormat::Json => {
            #[derive(Serialize)]
            struct Diagram {
                nodes: Vec<String>,
                edges: Vec<[usize; 2]>,
            }
            let body = Diagram {
                nodes: graph.labels.clone(),
                edges: graph.edges.iter().map(|&(a, b)| [a, b]).collect(),
            };
            to_json(header(cli, "diagram", &l.group), body)
        }
    }
}

fn ram(cli: &Cli, class: usize, probe: Option<u32>, path: &Path) -> Result<String> {
    let l = load(cli, path)?;
    let g = &l.group;
    if probe.is_some() && !g.is_diagonal() {
        return Err(Error::Requirement(
            "ram --probe requires a diagonal group".into(),
        ));
    }
    let cv = analyze_class(g, class, probe)?;
    #[derive(Serialize)]
    struct Monomial {
        monomial: Vec<u32>,
        value: i64,
    }
    #[derive(Serialize)]
    struct Ram {
        class: usize,
        representative: String,
        expression: String,
        age: Option<u64>,
        weights: Vec<u64>,
        primitivized: bool,
        stab: Vec<String>,
        ram: Vec<String>,
        ramification_degree: u64,
        ram_is_generated_by_representative: bool,
        ram_normal_in_stab: bool,
        a_f: String,
        a_e: String,
        experimental: bool,
        fingerprint: Option<Vec<Monomial>>,
    }
    let labels = |ids: &[usize]| ids.iter().map(|&e| g.label(e)).collect();
    let body = Ram {
        class: cv.class,
        representative: g.label(cv.representative),
        expression: cv.expression.to_string(),
        age: cv.expression.age,
        weights: cv.weights.clone(),
        primitivized: cv.primitivized,
        stab: labels(&cv.stab),
        ram: labels(&cv.ram),
        ramification_degree: cv.ramification_degree,
        ram_is_generated_by_representative: cv.ram_is_generated,
        ram_normal_in_stab: cv.ram_normal_in_stab,
        a_f: cv.a_f.to_string(),
        a_e: cv.a_e.to_string(),
        experimental: cv.experimental,
        fingerprint: cv.fingerprint.map(|fp| {
            fp.into_iter()
                .map(|(monomial, value)| Monomial { monomial, value })
                .collect()
        }),
    };
    to_json(header(cli, "ram", g), body)
}
