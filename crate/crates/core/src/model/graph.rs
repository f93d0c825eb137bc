use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Simple undirected graph on `0..n` with optional per-vertex tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, ModelError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(ModelError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(ModelError::SelfLoop(u));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(ModelError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(ModelError::LabelCount {
                    expected: n,
                    got: l.len(),
                });
            }
        }
        Ok(Graph {
            n,
            edges: set,
            labels,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, edges, None).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)), None).expect("cycle n >= 3")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&w| w != v && self.has_edge(v, w))
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Graph with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        g.edges.remove(&(u.min(v), u.max(v)));
        g
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting).
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let p: BTreeSet<usize> = (0..self.n).collect();
        self.bron_kerbosch(Vec::new(), p, BTreeSet::new(), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut r = r;
            r.sort_unstable();
            out.push(r);
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| self.has_edge(u, w)).count())
            .expect("p or x nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !self.has_edge(pivot, v))
            .collect();
        for v in candidates {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            let x2 = x.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            self.bron_kerbosch(r2, p2, x2, out);
            p.remove(&v);
            x.insert(v);
        }
    }
}

impl TryFrom<GraphDoc> for Graph {
    type Error = ModelError;
    fn try_from(doc: GraphDoc) -> Result<Self, Self::Error> {
        Graph::new(
            doc.n,
            doc.edges.into_iter().map(|[u, v]| (u, v)),
            doc.labels,
        )
    }
}

impl From<Graph> for GraphDoc {
    fn from(g: Graph) -> Self {
        GraphDoc {
            n: g.n,
            edges: g.edges.into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels,
        }
    }
}
