//! Exhaustive line sweeps: lines contained in a set, and intersection sizes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::projgeom::{LineId, PointSet, Space};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineCensus {
    pub contained_lines: usize,
    /// Lines through a point → number of points of the set.
    pub per_point_histogram: BTreeMap<usize, usize>,
}

impl LineCensus {
    /// Σ (lines through P) over the points of the set.
    pub fn incidences(&self) -> usize {
        self.per_point_histogram.iter().map(|(k, v)| k * v).sum()
    }
}

pub fn contained_lines(space: &Space, set: &PointSet) -> Vec<LineId> {
    if set.len() < space.line_size() {
        return Vec::new();
    }
    let lines: Vec<LineId> = space.line_ids().collect();
    lines.into_par_iter().filter(|&l| space.line_inside(l, set)).collect()
}

/// Histogram over the points of `set` of how many of `lines` pass through
/// each of them.
pub fn census_of(space: &Space, set: &PointSet, lines: &[LineId]) -> LineCensus {
    let mut through = vec![0usize; space.num_points()];
    for &l in lines {
        space.for_each_on_line(l, |p| through[p as usize] += 1);
    }
    let mut per_point_histogram = BTreeMap::new();
    for p in set.iter() {
        *per_point_histogram.entry(through[p as usize]).or_insert(0) += 1;
    }
    LineCensus { contained_lines: lines.len(), per_point_histogram }
}

pub fn lines_in_set(space: &Space, set: &PointSet) -> LineCensus {
    census_of(space, set, &contained_lines(space, set))
}

/// |ℓ ∩ set| for every line, by line id.
pub fn line_meet_counts(space: &Space, set: &PointSet) -> Vec<u16> {
    let lines: Vec<LineId> = space.line_ids().collect();
    lines.into_par_iter().map(|l| space.line_meet_count(l, set) as u16).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::{assemble, QuasiKind};
    use crate::varieties::{curve_o, hermitian_surface};

    #[test]
    fn hermitian_lines() {
        let s = Space::for_q(3).unwrap();
        let c = lines_in_set(&s, &hermitian_surface(&s));
        assert_eq!(c.contained_lines, 112);
        assert_eq!(c.per_point_histogram, BTreeMap::from([(4, 280)]));
        assert_eq!(c.incidences(), c.contained_lines * 10);
    }

    #[test]
    fn cap_has_no_lines() {
        let s = Space::for_q(3).unwrap();
        let c = lines_in_set(&s, &curve_o(&s));
        assert_eq!(c.contained_lines, 0);
        assert_eq!(c.per_point_histogram, BTreeMap::from([(0, 10)]));
    }

    #[test]
    fn sh2_census() {
        let s = Space::for_q(3).unwrap();
        let set = assemble(&s, QuasiKind::SH2 { j: 1 }).unwrap();
        let c = lines_in_set(&s, &set);
        assert_eq!(c.contained_lines, 40);
        assert_eq!(c.per_point_histogram, BTreeMap::from([(0, 90), (2, 180), (4, 10)]));
    }

    #[test]
    fn meet_counts_agree_with_containment() {
        let s = Space::for_q(3).unwrap();
        let h = hermitian_surface(&s);
        let counts = line_meet_counts(&s, &h);
        let full = counts.iter().filter(|&&c| c as usize == s.line_size()).count();
        assert_eq!(full, 112);
        // Every other line meets ℋ in 1 or q+1 points.
        assert!(counts.iter().all(|&c| [1, 4, 10].contains(&c)));
    }
}
