//! Plain-text input formats. Lines may carry '#' comments; blank lines
//! are skipped. Matrices: a "rows cols" header, then one line per row.
//! Graphs: a "vertices edges" header, then one "tail head" line per
//! edge, 1-based. Correspondences: one "i j" line per element, 1-based.

use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::matroid::Graph;

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            None
        } else {
            Some((i + 1, content))
        }
    })
}

fn parse_fields<T: std::str::FromStr>(line_no: usize, s: &str, expected: usize) -> Result<Vec<T>> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::Parse {
            line: line_no,
            message: format!("expected {} fields, found {}", expected, fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid number {:?}", f),
            })
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut lines = meaningful_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
    let dims: Vec<usize> = parse_fields(line_no, header, 2)?;
    let (rows, cols) = (dims[0], dims[1]);
    if rows == 0 || cols == 0 {
        return Err(Error::Parse { line: line_no, message: "matrix must be non-empty".into() });
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line_no, row) = lines.next().ok_or(Error::Parse {
            line: line_no,
            message: format!("expected {} rows", rows),
        })?;
        entries.extend(parse_fields::<i64>(line_no, row, cols)?);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse { line: line_no, message: "trailing input".into() });
    }
    IntMatrix::new(rows, cols, entries)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = meaningful_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
    let dims: Vec<usize> = parse_fields(line_no, header, 2)?;
    let (vertices, edge_count) = (dims[0], dims[1]);
    if vertices == 0 {
        return Err(Error::Parse { line: line_no, message: "graph must have a vertex".into() });
    }
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: line_no,
            message: format!("expected {} edges", edge_count),
        })?;
        let ends: Vec<usize> = parse_fields(line_no, line, 2)?;
        if ends[0] == 0 || ends[0] > vertices || ends[1] == 0 || ends[1] > vertices {
            return Err(Error::Parse {
                line: line_no,
                message: format!("vertex out of range 1..={}", vertices),
            });
        }
        edges.push((ends[0] - 1, ends[1] - 1));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse { line: line_no, message: "trailing input".into() });
    }
    Graph::new(vertices, edges)
}

/// Zero-based correspondence vector from 1-based "i j" pairs; every i
/// from 1 to the number of lines must occur exactly once, and the j's
/// must be a permutation of the same range.
pub fn parse_correspondence(text: &str) -> Result<Vec<usize>> {
    let pairs: Vec<(usize, usize, usize)> = meaningful_lines(text)
        .map(|(line_no, line)| {
            let fields: Vec<usize> = parse_fields(line_no, line, 2)?;
            Ok((line_no, fields[0], fields[1]))
        })
        .collect::<Result<_>>()?;
    if pairs.is_empty() {
        return Err(Error::Parse { line: 1, message: "empty correspondence".into() });
    }
    let n = pairs.len();
    let mut corr = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    for (line_no, i, j) in pairs {
        if i == 0 || i > n || j == 0 || j > n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("index out of range 1..={}", n),
            });
        }
        if corr[i - 1] != usize::MAX {
            return Err(Error::Parse {
                line: line_no,
                message: format!("element {} mapped twice", i),
            });
        }
        if hit[j - 1] {
            return Err(Error::Parse {
                line: line_no,
                message: format!("element {} hit twice", j),
            });
        }
        corr[i - 1] = j - 1;
        hit[j - 1] = true;
    }
    Ok(corr)
}

pub fn read_matrix<P: AsRef<Path>>(path: P) -> Result<IntMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn read_graph<P: AsRef<Path>>(path: P) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_correspondence<P: AsRef<Path>>(path: P) -> Result<Vec<usize>> {
    parse_correspondence(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_with_comments() {
        let text = "# running example\n3 5\n1 0 0 -1 1\n\n0 1 0 -1 1  # middle row\n0 0 1 -1 0\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 5);
        assert_eq!(m.row(2), &[0, 0, 1, -1, 0]);
    }

    #[test]
    fn matrix_errors_carry_line_numbers() {
        assert!(matches!(
            parse_matrix(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("2 2\n1 0\n0 1 1"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_matrix("2 2\n1 x\n0 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("1 1\n1\n1"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_matrix("0 2").is_err());
    }

    #[test]
    fn graph_is_one_based() {
        let g = parse_graph("3 3\n2 1\n3 1\n2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(1, 0), (2, 0), (1, 2)]);
        assert!(matches!(
            parse_graph("2 1\n1 3"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n0 1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn correspondence_must_biject() {
        assert_eq!(parse_correspondence("1 2\n2 1\n3 3\n").unwrap(), vec![1, 0, 2]);
        assert!(matches!(
            parse_correspondence("1 1\n1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_correspondence("1 1\n2 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_correspondence("1 4\n2 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_correspondence("").is_err());
    }

    #[test]
    fn read_round_trip() {
        let dir = std::env::temp_dir().join("gsep-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.mat");
        std::fs::write(&path, "1 2\n1 -1\n").unwrap();
        let m = read_matrix(&path).unwrap();
        assert_eq!(m.row(0), &[1, -1]);
        assert!(read_matrix(dir.join("missing.mat")).is_err());
    }
}
