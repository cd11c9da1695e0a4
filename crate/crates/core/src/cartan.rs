//! Simply-laced Cartan data: the graph, its symmetric form on `Z[I]`,
//! weights and the words of a given weight.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::GraphError;

pub type Vertex = usize;

/// A finite graph without loops or multiple edges.
///
/// Each edge remembers the orientation it was given at construction; only the
/// polynomial representation looks at it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    edges: BTreeSet<(Vertex, Vertex)>,
    orientation: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut names: Vec<String> = Vec::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref();
            if names.iter().any(|n| n == v) {
                return Err(GraphError::DuplicateVertex(v.to_owned()));
            }
            names.push(v.to_owned());
        }
        let mut graph = Graph { names, edges: BTreeSet::new(), orientation: Vec::new() };
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = graph.vertex(a).ok_or_else(|| GraphError::UnknownVertex(a.to_owned()))?;
            let j = graph.vertex(b).ok_or_else(|| GraphError::UnknownVertex(b.to_owned()))?;
            graph.add_edge(i, j)?;
        }
        Ok(graph)
    }

    fn add_edge(&mut self, i: Vertex, j: Vertex) -> Result<(), GraphError> {
        if i == j {
            return Err(GraphError::Loop(self.names[i].clone()));
        }
        if !self.edges.insert((i.min(j), i.max(j))) {
            return Err(GraphError::MultipleEdge(self.names[i].clone(), self.names[j].clone()));
        }
        self.orientation.push((i, j));
        Ok(())
    }

    /// The path `i - j` (type A2).
    pub fn a2() -> Self {
        Self::path(&["i", "j"])
    }

    /// The path `i - j - k` (type A3).
    pub fn a3() -> Self {
        Self::path(&["i", "j", "k"])
    }

    /// Two vertices `i`, `j` with no edge.
    pub fn edgeless2() -> Self {
        Self::new::<&str>(&["i", "j"], &[]).expect("valid graph")
    }

    /// A single vertex `i`.
    pub fn single() -> Self {
        Self::new::<&str>(&["i"], &[]).expect("valid graph")
    }

    pub fn path(names: &[&str]) -> Self {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Self::new(names, &edges).expect("valid path graph")
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    pub fn vertex_or_err(&self, name: &str) -> Result<Vertex, GraphError> {
        self.vertex(name).ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
    }

    /// Edges in the order and orientation they were written.
    pub fn oriented_edges(&self) -> &[(Vertex, Vertex)] {
        &self.orientation
    }

    pub fn is_edge(&self, i: Vertex, j: Vertex) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Whether the edge `{i, j}` is oriented `i -> j`.
    pub fn is_oriented(&self, i: Vertex, j: Vertex) -> bool {
        self.orientation.contains(&(i, j))
    }

    /// `i.j`: 2 on the diagonal, -1 along edges, 0 otherwise.
    pub fn inner(&self, i: Vertex, j: Vertex) -> i64 {
        if i == j {
            2
        } else if self.is_edge(i, j) {
            -1
        } else {
            0
        }
    }

    pub fn inner_by_name(&self, i: &str, j: &str) -> Result<i64, GraphError> {
        Ok(self.inner(self.vertex_or_err(i)?, self.vertex_or_err(j)?))
    }

    /// `nu . mu` extended bilinearly.
    pub fn weight_inner(&self, a: &Weight, b: &Weight) -> i64 {
        let mut total = 0;
        for (i, &ai) in a.0.iter().enumerate() {
            for (j, &bj) in b.0.iter().enumerate() {
                total += i64::from(ai) * i64::from(bj) * self.inner(i, j);
            }
        }
        total
    }

    /// Whether the graph contains a cycle of odd length (is not bipartite).
    pub fn has_odd_cycle(&self) -> bool {
        let n = self.names.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = color[v].expect("colored");
                for w in 0..n {
                    if !self.is_edge(v, w) {
                        continue;
                    }
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return true,
                        Some(_) => {}
                    }
                }
            }
        }
        false
    }

    /// Renders a sequence with vertex names, comma separated when names are long.
    pub fn format_seq(&self, seq: &[Vertex]) -> String {
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = seq.iter().map(|v| self.names[*v].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

/// `nu = sum_i nu_i * i`, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(num_vertices: usize) -> Self {
        Weight(vec![0; num_vertices])
    }

    pub fn of_seq(num_vertices: usize, seq: &[Vertex]) -> Self {
        let mut w = Self::zero(num_vertices);
        for &v in seq {
            w.0[v] += 1;
        }
        w
    }

    /// `m = sum nu_i`
    pub fn total(&self) -> usize {
        self.0.iter().map(|c| *c as usize).sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// The smallest sequence of this weight, in vertex order.
    pub fn sorted_seq(&self) -> Seq {
        let mut s = Vec::with_capacity(self.total());
        for (v, &c) in self.0.iter().enumerate() {
            s.extend(core::iter::repeat_n(v, c as usize));
        }
        Seq(s)
    }
}

/// A sequence `i_1 ... i_m` of vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Seq(pub Vec<Vertex>);

impl Seq {
    pub fn weight(&self, num_vertices: usize) -> Weight {
        Weight::of_seq(num_vertices, &self.0)
    }

    /// The sequence with positions `k` and `k + 1` swapped (0-based).
    pub fn swapped(&self, k: usize) -> Seq {
        let mut s = self.0.clone();
        s.swap(k, k + 1);
        Seq(s)
    }

    pub fn concat(&self, other: &Seq) -> Seq {
        let mut s = self.0.clone();
        s.extend_from_slice(&other.0);
        Seq(s)
    }
}

impl Deref for Seq {
    type Target = [Vertex];
    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

impl From<Vec<Vertex>> for Seq {
    fn from(v: Vec<Vertex>) -> Self {
        Seq(v)
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq{:?}", self.0)
    }
}

/// In-place lexicographic successor; false once the last arrangement is reached.
pub(crate) fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All sequences of weight `nu`, in lexicographic order of vertex indices.
pub fn seqs(nu: &Weight) -> Vec<Seq> {
    let mut cur = nu.sorted_seq().0;
    let mut out = vec![Seq(cur.clone())];
    while next_permutation(&mut cur) {
        out.push(Seq(cur.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_products() {
        let g = Graph::a3();
        assert_eq!(g.inner_by_name("i", "i").unwrap(), 2);
        assert_eq!(g.inner_by_name("i", "j").unwrap(), -1);
        assert_eq!(g.inner_by_name("i", "k").unwrap(), 0);
        assert!(matches!(g.inner_by_name("i", "z"), Err(GraphError::UnknownVertex(_))));
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(g.inner(a, b), g.inner(b, a));
            }
        }
    }

    #[test]
    fn sequences_of_small_weights() {
        let ij = seqs(&Weight(vec![1, 1]));
        assert_eq!(ij, vec![Seq(vec![0, 1]), Seq(vec![1, 0])]);
        assert_eq!(seqs(&Weight(vec![2, 0])), vec![Seq(vec![0, 0])]);
        let iij = seqs(&Weight(vec![2, 1]));
        assert_eq!(iij, vec![Seq(vec![0, 0, 1]), Seq(vec![0, 1, 0]), Seq(vec![1, 0, 0])]);
        assert_eq!(seqs(&Weight(vec![0, 0])), vec![Seq(vec![])]);
    }

    #[test]
    fn sequence_counts_are_multinomial() {
        fn fact(n: u32) -> u64 {
            (1..=u64::from(n)).product()
        }
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for c in 0..=2u32 {
                    if a + b + c > 6 {
                        continue;
                    }
                    let nu = Weight(vec![a, b, c]);
                    let expected = fact(a + b + c) / (fact(a) * fact(b) * fact(c));
                    assert_eq!(seqs(&nu).len() as u64, expected, "{nu:?}");
                }
            }
        }
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(Graph::new(&["i"], &[("i", "i")]), Err(GraphError::Loop(_))));
        assert!(matches!(
            Graph::new(&["i", "j"], &[("i", "j"), ("j", "i")]),
            Err(GraphError::MultipleEdge(..))
        ));
        assert!(matches!(Graph::new(&["i", "i"], &[]), Err(GraphError::DuplicateVertex(_))));
        let g = Graph::a2();
        assert!(g.is_oriented(0, 1));
        assert!(!g.is_oriented(1, 0));
    }

    #[test]
    fn odd_cycles() {
        assert!(!Graph::a3().has_odd_cycle());
        let tri = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert!(tri.has_odd_cycle());
        let square =
            Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
                .unwrap();
        assert!(!square.has_odd_cycle());
    }
}
