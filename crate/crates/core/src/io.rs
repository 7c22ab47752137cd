//! Text formats. Matrices: one row per line, whitespace-separated entries. Facet
//! lists: one simplex per line as vertex indices. Blank lines and text after `#`
//! are ignored everywhere.

use crate::binary_matroid::GroundSubset;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linalg::{F2Matrix, IntMatrix};
use crate::poset::point_index;
use crate::topology::SimplicialComplex;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_rows<T>(text: &str, parse: impl Fn(&str) -> Option<T>, what: &str) -> Result<Vec<Vec<T>>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (line, l) in content_lines(text) {
        let row = l
            .split_whitespace()
            .map(|tok| parse(tok).ok_or_else(|| Error::Parse { line, message: format!("expected {what}, found {tok:?}") }))
            .collect::<Result<Vec<T>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_f2_matrix(text: &str) -> Result<F2Matrix> {
    let rows = parse_rows(
        text,
        |t| match t {
            "0" => Some(0u8),
            "1" => Some(1u8),
            _ => None,
        },
        "0 or 1",
    )?;
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, message: "empty matrix".into() });
    }
    Ok(F2Matrix::from_rows(&rows))
}

pub fn parse_int_matrix(text: &str) -> Result<IntMatrix> {
    let rows = parse_rows(text, |t| t.parse::<i64>().ok(), "an integer")?;
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, message: "empty matrix".into() });
    }
    Ok(IntMatrix::from_rows(&rows))
}

pub fn f2_matrix_to_text(m: &F2Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<&str> = (0..m.cols()).map(|j| if m.get(i, j) { "1" } else { "0" }).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn int_matrix_to_text(m: &IntMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(i64::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Reads the columns of an `r`-row matrix as points of `F_2^r - 0` (first row most significant).
pub fn matrix_to_point_subset(m: &F2Matrix) -> Result<(usize, GroundSubset)> {
    let r = m.rows();
    if r > 6 {
        return Err(Error::RankTooLarge { rank: r, max: 6 });
    }
    let mut s = GroundSubset::EMPTY;
    for j in 0..m.cols() {
        let w = (0..r).fold(0u64, |w, i| w << 1 | m.get(i, j) as u64);
        if w == 0 {
            return Err(Error::Parse { line: 1, message: format!("column {j} is zero") });
        }
        let p = point_index(w);
        if s.contains(p) {
            return Err(Error::Parse { line: 1, message: format!("column {j} repeats an earlier column") });
        }
        s = s.with(p);
    }
    Ok((r, s))
}

/// One facet per line; the vertex count is one more than the largest index.
pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for (line, l) in content_lines(text) {
        let f = l
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("expected a vertex index, found {t:?}") }))
            .collect::<Result<Vec<usize>>>()?;
        facets.push(f);
    }
    let n = facets.iter().flatten().max().map_or(0, |&v| v + 1);
    SimplicialComplex::new(n, facets)
}

pub fn facets_to_text(k: &SimplicialComplex) -> String {
    let mut s = String::new();
    for f in k.facets() {
        let row: Vec<String> = f.iter().map(usize::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    Graph::from_text(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary_matroid::fano_matrix;

    #[test]
    fn matrix_round_trips() {
        let f = fano_matrix();
        assert_eq!(parse_f2_matrix(&f2_matrix_to_text(&f)).unwrap(), f);
        let m = IntMatrix::from_rows(&[[1, -2, 0], [3, 4, -5]]);
        assert_eq!(parse_int_matrix(&int_matrix_to_text(&m)).unwrap(), m);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(
            parse_f2_matrix("1 0\n# note\n0 2\n"),
            Err(Error::Parse { line: 3, message: "expected 0 or 1, found \"2\"".into() })
        );
        assert!(matches!(parse_int_matrix("1 2\n3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_f2_matrix("\n\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_facets("0 1\n1 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn comments_and_blank_lines() {
        let m = parse_f2_matrix("# identity\n1 0\n\n0 1  # second row\n").unwrap();
        assert_eq!(m, F2Matrix::identity(2));
    }

    #[test]
    fn point_subsets() {
        let (r, s) = matrix_to_point_subset(&F2Matrix::identity(3)).unwrap();
        assert_eq!(r, 3);
        // 100, 010, 001 are points 3, 1, 0
        assert_eq!(s, GroundSubset::from_indices([0, 1, 3]));
        assert!(matrix_to_point_subset(&F2Matrix::zeros(2, 1)).is_err());
        assert!(matrix_to_point_subset(&parse_f2_matrix("1 1\n0 0").unwrap()).is_err());
    }

    #[test]
    fn facet_files() {
        let k = parse_facets("0 1 2\n0 2 3\n").unwrap();
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(parse_facets(&facets_to_text(&k)).unwrap(), k);
    }
}
