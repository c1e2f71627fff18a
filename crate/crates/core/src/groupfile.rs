//! Line-based group description files.
//!
//! ```text
//! # binary dihedral group of order 8
//! format matrix
//! dimension 2
//! cyclotomic_order 4
//! generator A
//!   z, 0
//!   0, z^3
//! generator B
//!   0, 1
//!   -1, 0
//! ```
//!
//! ```text
//! format diagonal
//! dimension 3
//! generator 1/7(1,2,4)
//! ```
//!
//! `#` starts a comment. Header lines come before the first generator.
//! Matrix generators are followed by `dimension` rows of comma-separated
//! cyclotomic literals in `z = zeta_N`. A diagonal generator may carry a
//! name before its `1/r(...)` expression; unnamed ones are `g1, g2, ...`.

use std::fmt;
use std::path::Path;

use crate::cyclo::{parse_literal, CyclotomicField};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::toric::{DiagonalGenerator, DiagonalGroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Matrix,
    Diagonal,
}

impl fmt::Display for FileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FileFormat::Matrix => "matrix",
            FileFormat::Diagonal => "diagonal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Matrix { name: String, matrix: Matrix },
    Diagonal { name: String, spec: DiagonalGenerator },
}

impl Generator {
    pub fn name(&self) -> &str {
        match self {
            Generator::Matrix { name, .. } | Generator::Diagonal { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub format: FileFormat,
    pub dimension: usize,
    /// `N` of `Q(zeta_N)`; matrix format only.
    pub cyclotomic_order: Option<u64>,
    pub generators: Vec<Generator>,
}

impl GroupFile {
    /// Generators as matrices. Diagonal files are realized over
    /// `Q(zeta_lcm)` of their orders.
    pub fn named_matrices(&self) -> Vec<(String, Matrix)> {
        match self.format {
            FileFormat::Matrix => self
                .generators
                .iter()
                .map(|g| match g {
                    Generator::Matrix { name, matrix } => (name.clone(), matrix.clone()),
                    Generator::Diagonal { .. } => unreachable!("diagonal generator in matrix file"),
                })
                .collect(),
            FileFormat::Diagonal => {
                let spec = self.diagonal_spec().expect("diagonal file");
                spec.to_matrices()
                    .into_iter()
                    .zip(&self.generators)
                    .map(|((_, m), g)| (g.name().to_string(), m))
                    .collect()
            }
        }
    }

    pub fn diagonal_spec(&self) -> Result<DiagonalGroupSpec> {
        if self.format != FileFormat::Diagonal {
            return Err(Error::requirement(
                "toric requires a file in diagonal format",
            ));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| match g {
                Generator::Diagonal { spec, .. } => spec.clone(),
                Generator::Matrix { .. } => unreachable!("matrix generator in diagonal file"),
            })
            .collect();
        DiagonalGroupSpec::new(self.dimension, gens)
    }
}

/// Serializes back to the file format; `parse_group_file` of the output
/// reproduces the value.
impl fmt::Display for GroupFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "format {}", self.format)?;
        writeln!(f, "dimension {}", self.dimension)?;
        if let Some(n) = self.cyclotomic_order {
            writeln!(f, "cyclotomic_order {n}")?;
        }
        for g in &self.generators {
            match g {
                Generator::Matrix { name, matrix } => {
                    writeln!(f, "generator {name}")?;
                    for i in 0..matrix.rows() {
                        let row: Vec<String> =
                            (0..matrix.cols()).map(|j| matrix.get(i, j).to_string()).collect();
                        writeln!(f, "  {}", row.join(", "))?;
                    }
                }
                Generator::Diagonal { name, spec } => writeln!(f, "generator {name} {spec}")?,
            }
        }
        Ok(())
    }
}

pub fn read_group_file(path: impl AsRef<Path>) -> Result<GroupFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_group_file(&text)
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A line with comments removed, remembering where its content starts.
struct Line<'a> {
    number: usize,
    text: &'a str,
    /// 1-based column of `text`'s first character in the original line.
    offset: usize,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let offset = body[..body.len() - trimmed.len()].chars().count() + 1;
            let trimmed = trimmed.trim_end();
            (!trimmed.is_empty()).then_some(Line {
                number: i + 1,
                text: trimmed,
                offset,
            })
        })
        .collect()
}

fn split_keyword<'a>(line: &Line<'a>) -> (&'a str, &'a str, usize) {
    match line.text.find(char::is_whitespace) {
        Some(pos) => {
            let rest = &line.text[pos..];
            let value = rest.trim_start();
            let col = line.offset + line.text[..pos].chars().count() + rest.len() - value.len();
            (&line.text[..pos], value, col)
        }
        None => (line.text, "", line.offset + line.text.chars().count()),
    }
}

fn parse_positive(value: &str, line: usize, col: usize, what: &str) -> Result<u64> {
    match value.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(perr(line, col, format!("{what} must be a positive integer, got '{value}'"))),
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let lines = content_lines(text);
    let mut format = None;
    let mut dimension = None;
    let mut order = None;
    let mut idx = 0;
    while idx < lines.len() {
        let line = &lines[idx];
        let (key, value, col) = split_keyword(line);
        match key {
            "format" => {
                format = Some(match value {
                    "matrix" => FileFormat::Matrix,
                    "diagonal" => FileFormat::Diagonal,
                    _ => {
                        return Err(perr(
                            line.number,
                            col,
                            format!("unknown format '{value}', expected matrix or diagonal"),
                        ))
                    }
                })
            }
            "dimension" => dimension = Some(parse_positive(value, line.number, col, "dimension")? as usize),
            "cyclotomic_order" => order = Some((parse_positive(value, line.number, col, "cyclotomic_order")?, line.number)),
            "generator" => break,
            _ => {
                return Err(perr(
                    line.number,
                    line.offset,
                    format!("unknown keyword '{key}'"),
                ))
            }
        }
        idx += 1;
    }
    let end_line = lines.last().map_or(1, |l| l.number);
    let format = format.ok_or_else(|| perr(end_line, 1, "missing 'format' line"))?;
    let dimension = dimension.ok_or_else(|| perr(end_line, 1, "missing 'dimension' line"))?;
    let field = match (format, order) {
        (FileFormat::Matrix, Some((n, _))) => Some(CyclotomicField::new(n)),
        (FileFormat::Matrix, None) => {
            return Err(perr(end_line, 1, "matrix format requires a 'cyclotomic_order' line"))
        }
        (FileFormat::Diagonal, Some((_, l))) => {
            return Err(perr(l, 1, "'cyclotomic_order' applies only to matrix format"))
        }
        (FileFormat::Diagonal, None) => None,
    };

    let mut generators = Vec::new();
    while idx < lines.len() {
        let line = &lines[idx];
        let (key, value, col) = split_keyword(line);
        if key != "generator" {
            return Err(perr(
                line.number,
                line.offset,
                format!("expected 'generator', found '{key}'"),
            ));
        }
        idx += 1;
        match &field {
            Some(field) => {
                if value.is_empty() || value.contains(char::is_whitespace) {
                    return Err(perr(line.number, col, "matrix generator needs a single-word name"));
                }
                let mut rows = Vec::with_capacity(dimension);
                for r in 0..dimension {
                    let Some(row_line) = lines.get(idx) else {
                        return Err(perr(
                            line.number,
                            1,
                            format!("generator {value} has {r} rows, expected {dimension}"),
                        ));
                    };
                    if split_keyword(row_line).0 == "generator" {
                        return Err(perr(
                            row_line.number,
                            row_line.offset,
                            format!("generator {value} has {r} rows, expected {dimension}"),
                        ));
                    }
                    rows.push(parse_row(row_line, dimension, field)?);
                    idx += 1;
                }
                let matrix = Matrix::from_rows(rows)?;
                generators.push(Generator::Matrix {
                    name: value.to_string(),
                    matrix,
                });
            }
            None => {
                let (name, expr, expr_col) = match value.find(char::is_whitespace) {
                    Some(pos) if !value.starts_with(|c: char| c.is_ascii_digit()) => {
                        let rest = value[pos..].trim_start();
                        let c = col + value.chars().count() - rest.chars().count();
                        (value[..pos].to_string(), rest, c)
                    }
                    _ => (format!("g{}", generators.len() + 1), value, col),
                };
                let spec = parse_diagonal(expr, line.number, expr_col, dimension)?;
                generators.push(Generator::Diagonal { name, spec });
            }
        }
    }
    if generators.is_empty() {
        return Err(perr(end_line, 1, "no generators"));
    }
    Ok(GroupFile {
        format,
        dimension,
        cyclotomic_order: order.map(|(n, _)| n),
        generators,
    })
}

fn parse_row(
    line: &Line<'_>,
    dimension: usize,
    field: &std::sync::Arc<CyclotomicField>,
) -> Result<Vec<crate::cyclo::CycNum>> {
    let mut entries = Vec::with_capacity(dimension);
    let mut start = 0usize;
    let cells: Vec<&str> = line.text.split(',').collect();
    if cells.len() != dimension {
        return Err(perr(
            line.number,
            line.offset,
            format!("row has {} entries, expected {dimension}", cells.len()),
        ));
    }
    for cell in cells {
        let col = line.offset + line.text[..start].chars().count();
        let value = parse_literal(cell, field)
            .map_err(|e| perr(line.number, col + e.column - 1, e.message))?;
        entries.push(value);
        start += cell.len() + 1;
    }
    Ok(entries)
}

/// `1/r(a_1,...,a_n)`, whitespace allowed between tokens.
fn parse_diagonal(text: &str, line: usize, col: usize, dimension: usize) -> Result<DiagonalGenerator> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let number = |pos: &mut usize| -> Result<(u64, usize)> {
        skip_ws(pos);
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(perr(line, col + start, "expected a nonnegative integer"));
        }
        let s: String = chars[start..*pos].iter().collect();
        let v = s
            .parse()
            .map_err(|_| perr(line, col + start, "integer out of range"))?;
        Ok((v, start))
    };
    let expect = |pos: &mut usize, c: char| -> Result<()> {
        skip_ws(pos);
        if chars.get(*pos) == Some(&c) {
            *pos += 1;
            Ok(())
        } else {
            Err(perr(line, col + *pos, format!("expected '{c}'")))
        }
    };
    let (one, one_at) = number(&mut pos)?;
    if one != 1 {
        return Err(perr(line, col + one_at, "diagonal generator must start with '1/'"));
    }
    expect(&mut pos, '/')?;
    let (r, r_at) = number(&mut pos)?;
    if r == 0 {
        return Err(perr(line, col + r_at, "order must be positive"));
    }
    expect(&mut pos, '(')?;
    let mut exponents = Vec::new();
    loop {
        let (a, a_at) = number(&mut pos)?;
        if a >= r {
            return Err(perr(
                line,
                col + a_at,
                format!("exponent {a} out of range [0, {r})"),
            ));
        }
        exponents.push(a);
        skip_ws(&mut pos);
        if chars.get(pos) == Some(&',') {
            pos += 1;
            continue;
        }
        expect(&mut pos, ')')?;
        break;
    }
    skip_ws(&mut pos);
    if pos != chars.len() {
        return Err(perr(line, col + pos, "trailing characters after ')'"));
    }
    if exponents.len() != dimension {
        return Err(perr(
            line,
            col,
            format!("{} exponents, expected dimension {dimension}", exponents.len()),
        ));
    }
    Ok(DiagonalGenerator::new(r, exponents))
}

#[cfg(test)]
mod tests {
    use super::*;

    const BD8: &str = "# binary dihedral\nformat matrix\ndimension 2\ncyclotomic_order 4\n\ngenerator A\n  z, 0\n  0, z^3\ngenerator B\n  0, 1\n  -1, 0\n";

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse_group_file(text).unwrap_err() {
            Error::Parse {
                line,
                column,
                message,
            } => (line, column, message),
            e => panic!("expected parse error, got {e:?}"),
        }
    }

    #[test]
    fn matrix_file() {
        let f = parse_group_file(BD8).unwrap();
        assert_eq!(f.dimension, 2);
        assert_eq!(f.generators.len(), 2);
        assert_eq!(f.generators[1].name(), "B");
        assert_eq!(parse_group_file(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn diagonal_file() {
        let f = parse_group_file("format diagonal\ndimension 3\ngenerator 1/7( 1, 2 ,4 )\ngenerator h 1/3(1,1,1)\n").unwrap();
        assert_eq!(f.generators[0].name(), "g1");
        assert_eq!(f.generators[1].name(), "h");
        let spec = f.diagonal_spec().unwrap();
        assert_eq!(spec.denominator(), 21);
        let mats = f.named_matrices();
        assert_eq!(mats[0].1.field().order(), 21);
        assert_eq!(parse_group_file(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn errors_carry_positions() {
        let (l, c, m) = parse_err("format diagonal\ndimension 3\ngenerator 1/3(5,1,0)\n");
        assert_eq!((l, c), (3, 15));
        assert!(m.contains("out of range"));

        let bad = BD8.replace("  0, z^3", "  0, z^3.5");
        let (l, c, m) = parse_err(&bad);
        assert_eq!((l, c), (8, 9));
        assert!(m.contains("decimal"));

        let (l, _, _) = parse_err(&BD8.replace("  -1, 0\n", ""));
        assert_eq!(l, 9);
        let (l, c, _) = parse_err(&BD8.replace("  0, 1\n", "  0, 1, 2\n"));
        assert_eq!((l, c), (10, 3));
        assert_eq!(parse_err("format foo\n").0, 1);
        assert!(parse_err("format diagonal\ndimension 2\ngenerator 1/4(1,3,0)\n").2.contains("expected dimension 2"));
        assert!(parse_err("format matrix\ndimension 2\ngenerator A\n").2.contains("cyclotomic_order"));
    }

    #[test]
    fn toric_needs_diagonal_format() {
        let f = parse_group_file(BD8).unwrap();
        assert!(matches!(f.diagonal_spec(), Err(Error::Requirement(_))));
    }
}
