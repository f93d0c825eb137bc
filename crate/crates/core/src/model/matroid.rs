use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ValidationReport;

/// Simple rank-3 matroid on `0..n`, given by its complete list of rank-2
/// flats (the maximal collinear sets of any planar realization). Flats of
/// size two are listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank3Matroid {
    pub n: usize,
    pub flats: Vec<Vec<usize>>,
}

impl Rank3Matroid {
    /// Builds a matroid, sorting each flat. No validation is performed;
    /// call [`Rank3Matroid::validate`].
    pub fn new(n: usize, flats: Vec<Vec<usize>>) -> Self {
        let flats = flats
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        Rank3Matroid { n, flats }
    }

    /// Converts 1-indexed flats (as usually written by hand) to the
    /// 0-indexed storage convention.
    pub fn from_one_indexed(n: usize, flats: &[&[usize]]) -> Self {
        Self::new(
            n,
            flats
                .iter()
                .map(|f| f.iter().map(|&e| e.wrapping_sub(1)).collect())
                .collect(),
        )
    }

    /// Completes a set of "long" flats (size >= 3) with all uncovered pairs.
    pub fn from_long_flats(n: usize, long: Vec<Vec<usize>>) -> Self {
        let mut covered = vec![vec![false; n]; n];
        for f in &long {
            for (a, &i) in f.iter().enumerate() {
                for &j in &f[a + 1..] {
                    covered[i][j] = true;
                    covered[j][i] = true;
                }
            }
        }
        let mut flats = long;
        for i in 0..n {
            for j in i + 1..n {
                if !covered[i][j] {
                    flats.push(vec![i, j]);
                }
            }
        }
        Self::new(n, flats)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_matroid(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Index of the unique flat containing both `i` and `j`.
    pub fn flat_of_pair(&self, i: usize, j: usize) -> Option<usize> {
        self.flats
            .iter()
            .position(|f| f.contains(&i) && f.contains(&j))
    }

    /// True iff some flat contains all of `elems`.
    pub fn in_common_flat(&self, elems: &[usize]) -> bool {
        self.flats
            .iter()
            .any(|f| elems.iter().all(|e| f.contains(e)))
    }

    /// Flats through element `e`, by index.
    pub fn flats_through(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.flats
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.contains(&e))
            .map(|(k, _)| k)
    }
}

pub(crate) fn validate_matroid(m: &Rank3Matroid) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = m.n;
    let mut cover: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, flat) in m.flats.iter().enumerate() {
        if flat.len() < 2 {
            report.push(format!("flat #{k} {flat:?} has fewer than 2 elements"));
        }
        if let Some(&e) = flat.iter().find(|&&e| e >= n) {
            report.push(format!(
                "flat #{k} {flat:?} contains element {e} outside 0..{n}"
            ));
            continue;
        }
        let mut sorted = flat.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            report.push(format!("flat #{k} {flat:?} repeats an element"));
            sorted.dedup();
        }
        if n >= 3 && sorted.len() == n && m.flats.len() > 1 {
            report.push(format!(
                "flat #{k} is the whole ground set but other flats exist"
            ));
        }
        for (a, &i) in sorted.iter().enumerate() {
            for &j in &sorted[a + 1..] {
                *cover.entry((i, j)).or_insert(0) += 1;
            }
        }
    }
    if n >= 2 {
        for i in 0..n {
            for j in i + 1..n {
                match cover.get(&(i, j)).copied().unwrap_or(0) {
                    1 => {}
                    0 => report.push(format!("pair {{{i},{j}}} is not covered by any flat")),
                    c => report.push(format!("pair {{{i},{j}}} is covered by {c} flats")),
                }
            }
        }
    }
    report
}
