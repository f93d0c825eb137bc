use serde::{Deserialize, Serialize};

use super::ValidationReport;

/// Simple pseudoline arrangement as a sequence of adjacent transpositions.
/// Swap `p` crosses the wires currently on tracks `p` and `p + 1`; track 0
/// is the bottom, and wire `i` starts on track `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WiringDiagram {
    pub n: usize,
    pub swaps: Vec<usize>,
}

impl WiringDiagram {
    pub fn new(n: usize, swaps: Vec<usize>) -> Self {
        WiringDiagram { n, swaps }
    }

    /// The arrangement in which wire 0 crosses everything first, then wire
    /// 1, and so on: swaps `0..n-1, 0..n-2, ..., 0`. Realized by tangents to
    /// a conic.
    pub fn cyclic(n: usize) -> Self {
        let swaps = (1..n).rev().flat_map(|k| 0..k).collect();
        WiringDiagram { n, swaps }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_wiring(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Track-to-wire permutations: entry 0 is the identity, entry `k` the
    /// state after `k` swaps. Panics if a swap position is out of range.
    pub fn slices(&self) -> Vec<Vec<usize>> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::with_capacity(self.swaps.len() + 1);
        out.push(perm.clone());
        for &p in &self.swaps {
            perm.swap(p, p + 1);
            out.push(perm.clone());
        }
        out
    }

    /// For each wire, the other wires in the order it crosses them.
    pub fn local_sequences(&self) -> Vec<Vec<usize>> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut seq = vec![Vec::with_capacity(self.n.saturating_sub(1)); self.n];
        for &p in &self.swaps {
            let (u, v) = (perm[p], perm[p + 1]);
            seq[u].push(v);
            seq[v].push(u);
            perm.swap(p, p + 1);
        }
        seq
    }
}

pub fn validate_wiring(w: &WiringDiagram) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = w.n;
    let expected = n * n.saturating_sub(1) / 2;
    if w.swaps.len() != expected {
        report.push(format!(
            "{} swaps, expected n(n-1)/2 = {expected}",
            w.swaps.len()
        ));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut crossed = vec![vec![0usize; n]; n];
    for (k, &p) in w.swaps.iter().enumerate() {
        if p + 1 >= n {
            report.push(format!(
                "swap #{k} at position {p} is outside 0..{}",
                n.saturating_sub(1)
            ));
            return report;
        }
        let (u, v) = (perm[p].min(perm[p + 1]), perm[p].max(perm[p + 1]));
        crossed[u][v] += 1;
        if crossed[u][v] == 2 {
            report.push(format!("wires {u} and {v} cross again at swap #{k}"));
        }
        perm.swap(p, p + 1);
    }
    for u in 0..n {
        for v in u + 1..n {
            if crossed[u][v] == 0 {
                report.push(format!("wires {u} and {v} never cross"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diagrams() {
        assert!(WiringDiagram::new(2, vec![0]).is_valid());
        assert!(WiringDiagram::new(3, vec![0, 1, 0]).is_valid());
        let bad = WiringDiagram::new(3, vec![0, 0, 1]).validate();
        assert!(bad.issues.iter().any(|s| s.contains("cross again")));
        assert!(!WiringDiagram::new(3, vec![0, 2, 0]).is_valid());
        assert!(WiringDiagram::new(1, vec![]).is_valid());
    }

    #[test]
    fn cyclic_is_simple() {
        for n in 1..8 {
            assert!(WiringDiagram::cyclic(n).is_valid(), "n={n}");
        }
        assert_eq!(WiringDiagram::cyclic(3).swaps, vec![0, 1, 0]);
    }

    #[test]
    fn local_sequences_of_braid() {
        let w = WiringDiagram::new(3, vec![0, 1, 0]);
        assert_eq!(
            w.local_sequences(),
            vec![vec![1, 2], vec![0, 2], vec![0, 1]]
        );
    }
}
