//! Undirected simple graphs on dense `0..n` vertex ids.
//!
//! A [`Graph`] is immutable once built. Every constructor funnels through
//! [`Graph::from_edges`], which rejects self-loops and out-of-range ids and
//! collapses duplicate (and reversed) pairs, so adjacency is always symmetric
//! and each neighbor list is sorted.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (i, j) in edges {
            check_pair(n, i, j, None)?;
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            adj,
            edge_count: twice / 2,
        }
    }

    /// Order of the graph (number of vertices).
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `i`. Panics if `i` is out of range.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.order() && self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn degree(&self, i: usize) -> Result<usize> {
        self.adj
            .get(i)
            .map(Vec::len)
            .ok_or(Error::VertexOutOfRange {
                vertex: i,
                n: self.order(),
            })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence {
            degrees: self.degrees(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree if every vertex has the same degree.
    ///
    /// The graph with no vertices has no degree to report and yields `None`.
    pub fn is_regular(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == first).then_some(first)
    }

    /// Number of maximal connected subgraphs (breadth-first traversal).
    pub fn connected_component_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_component_count() <= 1
    }

    /// Canonical edge-list text: `n` on the first line, then one `i j` line
    /// per edge in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 * (self.edge_count + 1));
        let _ = writeln!(out, "{}", self.order());
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    /// Parses the edge-list format written by [`Graph::to_edge_list`].
    ///
    /// Blank lines and lines whose first non-space character is `#` are
    /// skipped. Line numbers in errors are 1-based and count every line.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut data = text
            .lines()
            .enumerate()
            .map(|(idx, line)| (idx + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

        let (first_line, header) = data.next().ok_or(Error::Parse {
            line: 0,
            message: "missing vertex count".into(),
        })?;
        let n = parse_tokens::<1>(first_line, header)?[0];

        let mut adj = vec![Vec::new(); n];
        for (line_no, line) in data {
            let [i, j] = parse_tokens::<2>(line_no, line)?;
            check_pair(n, i, j, Some(line_no))?;
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.order();
        let mut a = vec![vec![0.0; n]; n];
        for (i, j) in self.edges() {
            a[i][j] = 1.0;
            a[j][i] = 1.0;
        }
        a
    }
}

fn check_pair(n: usize, i: usize, j: usize, line: Option<usize>) -> Result<()> {
    if i == j {
        return Err(Error::SelfLoop { vertex: i, line });
    }
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    Ok(())
}

fn parse_tokens<const K: usize>(line_no: usize, line: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut tokens = line.split_whitespace();
    for slot in out.iter_mut() {
        let tok = tokens.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected {K} integer token(s), got {line:?}"),
        })?;
        *slot = tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("not a nonnegative integer: {tok:?}"),
        })?;
    }
    if tokens.next().is_some() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("expected {K} integer token(s), got {line:?}"),
        });
    }
    Ok(out)
}

/// Per-vertex degrees with an even total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Rejects odd degree sums and any degree of at least `n`.
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        let sum: usize = degrees.iter().sum();
        if !sum.is_multiple_of(2) {
            return Err(Error::OddDegreeSum(sum));
        }
        let n = degrees.len();
        if let Some(&d) = degrees.iter().find(|&&d| d >= n) {
            return Err(invalid(format!("degree {d} impossible on {n} vertices")));
        }
        Ok(DegreeSequence { degrees })
    }

    pub fn regular(n: usize, degree: usize) -> Result<Self> {
        if !(n * degree).is_multiple_of(2) {
            return Err(Error::Parity { n, degree });
        }
        Self::new(vec![degree; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, ring, star};

    #[test]
    fn parses_simple_path() {
        let g = Graph::parse_edge_list("3\n0 1\n1 2").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_self_loop() {
        let err = Graph::parse_edge_list("2\n0 0").unwrap_err();
        assert!(matches!(
            err,
            Error::SelfLoop {
                vertex: 0,
                line: Some(2)
            }
        ));
    }

    #[test]
    fn symmetric_pair_is_one_edge() {
        let g = Graph::parse_edge_list("4\n0 1\n1 0").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::parse_edge_list("# header\n3\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = Graph::parse_edge_list("3\n0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Graph::parse_edge_list("3\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert!(Graph::parse_edge_list("# only comments\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let g = Graph::parse_edge_list("# c\n\n3\n  # edge list\n2 0\n\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn serializer_sorts_edges() {
        let g = Graph::from_edges(4, [(3, 2), (1, 0), (0, 3)]).unwrap();
        assert_eq!(g.to_edge_list(), "4\n0 1\n0 3\n2 3\n");
    }

    #[test]
    fn regularity() {
        assert_eq!(complete(4).is_regular(), Some(3));
        assert_eq!(star(3).is_regular(), None);
        assert_eq!(ring(5).unwrap().degree(0).unwrap(), 2);
        assert!(ring(5).unwrap().degree(5).is_err());
        assert_eq!(Graph::empty(0).is_regular(), None);
        assert_eq!(Graph::empty(3).is_regular(), Some(0));
    }

    #[test]
    fn components() {
        assert_eq!(ring(5).unwrap().connected_component_count(), 1);
        assert_eq!(Graph::empty(3).connected_component_count(), 3);
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(two_triangles.connected_component_count(), 2);
        assert_eq!(Graph::empty(0).connected_component_count(), 0);
    }

    #[test]
    fn degree_sequence_validation() {
        assert!(DegreeSequence::new(vec![1, 1]).is_ok());
        assert!(matches!(
            DegreeSequence::new(vec![1, 2]),
            Err(Error::OddDegreeSum(3))
        ));
        assert!(DegreeSequence::new(vec![2, 2]).is_err());
        assert!(matches!(
            DegreeSequence::regular(5, 3),
            Err(Error::Parity { n: 5, degree: 3 })
        ));
        assert_eq!(complete(5).degree_sequence().sum(), 20);
    }
}
