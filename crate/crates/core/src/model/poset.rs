use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Finite strict partial order over named elements. Relations are stored
/// transitively closed; `(a, b)` means `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PosetDoc", into = "PosetDoc")]
pub struct Poset {
    elements: Vec<String>,
    relations: BTreeSet<(usize, usize)>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    elements: Vec<String>,
    relations: Vec<[String; 2]>,
}

impl Poset {
    /// Builds the poset generated by `relations` (given by element index),
    /// closing transitively. Fails on reflexive pairs or cycles.
    pub fn from_indices(
        elements: Vec<String>,
        relations: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ModelError> {
        let mut index = HashMap::with_capacity(elements.len());
        for (k, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), k).is_some() {
                return Err(ModelError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let mut less = vec![vec![false; n]; n];
        for (a, b) in relations {
            if a >= n || b >= n {
                return Err(ModelError::UnknownElement(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(ModelError::Reflexive(elements[a].clone()));
            }
            less[a][b] = true;
        }
        // Floyd–Warshall style closure
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut closed = BTreeSet::new();
        for i in 0..n {
            if less[i][i] {
                let j = (0..n)
                    .find(|&j| j != i && less[i][j] && less[j][i])
                    .unwrap_or(i);
                return Err(ModelError::Cycle(elements[i].clone(), elements[j].clone()));
            }
            for j in 0..n {
                if less[i][j] {
                    closed.insert((i, j));
                }
            }
        }
        Ok(Poset {
            elements,
            relations: closed,
            index,
        })
    }

    pub fn new(elements: Vec<String>, relations: &[(&str, &str)]) -> Result<Self, ModelError> {
        let index: HashMap<&str, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.as_str(), k))
            .collect();
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| ModelError::UnknownElement(s.to_string()))
        };
        let rel = relations
            .iter()
            .map(|&(a, b)| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>, ModelError>>()?;
        Self::from_indices(elements, rel)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.relations.iter().copied()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }
}

/// True iff the elements split into two antichains, i.e. no 3-element chain.
pub fn poset_is_bipartite(p: &Poset) -> bool {
    !p.relations
        .iter()
        .any(|&(_, b)| p.relations.range((b, 0)..(b + 1, 0)).next().is_some())
}

impl TryFrom<PosetDoc> for Poset {
    type Error = ModelError;
    fn try_from(doc: PosetDoc) -> Result<Self, Self::Error> {
        let rel: Vec<(&str, &str)> = doc
            .relations
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        Poset::new(doc.elements.clone(), &rel)
    }
}

impl From<Poset> for PosetDoc {
    fn from(p: Poset) -> Self {
        PosetDoc {
            relations: p
                .relations
                .iter()
                .map(|&(a, b)| [p.elements[a].clone(), p.elements[b].clone()])
                .collect(),
            elements: p.elements,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn closure_is_stored() {
        let p = Poset::new(names(&["a", "b", "c"]), &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.less(0, 2));
        assert_eq!(p.relation_count(), 3);
        assert!(!poset_is_bipartite(&p));
    }

    #[test]
    fn bipartite_cases() {
        let empty = Poset::new(vec![], &[]).unwrap();
        assert!(poset_is_bipartite(&empty));
        let v = Poset::new(names(&["a", "b", "c"]), &[("a", "b"), ("c", "b")]).unwrap();
        assert!(poset_is_bipartite(&v));
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(matches!(
            Poset::new(names(&["a"]), &[("a", "a")]),
            Err(ModelError::Reflexive(_))
        ));
        assert!(matches!(
            Poset::new(names(&["a", "b"]), &[("a", "b"), ("b", "a")]),
            Err(ModelError::Cycle(_, _))
        ));
        assert!(matches!(
            Poset::new(names(&["a", "a"]), &[]),
            Err(ModelError::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::new(names(&["a"]), &[("a", "z")]),
            Err(ModelError::UnknownElement(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::new(names(&["x", "y", "z"]), &[("x", "y"), ("y", "z")]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: Poset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(s.contains(r#"["x","z"]"#));
    }
}
