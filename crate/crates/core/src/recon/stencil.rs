use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

/// How many sample interfaces feed one cell's least-squares fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StencilRule {
    /// `2(N+1)` cells around cell `i`: interfaces `i-N-1 ..= i+N+1`
    /// (`2N+3` interfaces). This is the layout that reproduces the published
    /// convergence tables.
    #[default]
    Wide,
    /// `2(N+1)` interfaces, `N+1` on each side of the cell midpoint:
    /// interfaces `i-N ..= i+N+1`.
    Compact,
}

impl StencilRule {
    /// Number of interfaces in an unclipped stencil of degree `degree`.
    pub fn width(self, degree: usize) -> usize {
        match self {
            StencilRule::Wide => 2 * degree + 3,
            StencilRule::Compact => 2 * degree + 2,
        }
    }

    /// Interfaces to the left of the cell's own left interface.
    fn left_reach(self, degree: usize) -> usize {
        match self {
            StencilRule::Wide => degree + 1,
            StencilRule::Compact => degree,
        }
    }
}

/// Contiguous run of sample (interface) indices used for one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stencil {
    pub cell: usize,
    pub first: usize,
    pub last: usize,
}

impl Stencil {
    pub fn indices(&self) -> RangeInclusive<usize> {
        self.first..=self.last
    }

    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: usize) -> bool {
        self.indices().contains(&k)
    }

    /// Row of sample `k` inside the stencil.
    pub fn row_of(&self, k: usize) -> Option<usize> {
        self.contains(k).then(|| k - self.first)
    }
}

/// Stencil of `cell` on a mesh with `num_interfaces` samples.
///
/// Interior cells get the rule's full layout. Near the ends of the track the
/// window is shifted inward so it keeps its size; if the track is shorter
/// than the window every sample is used.
pub fn build_stencil(num_interfaces: usize, cell: usize, degree: usize, rule: StencilRule) -> Stencil {
    assert!(num_interfaces >= 2 && cell + 1 < num_interfaces);
    let width = rule.width(degree);
    if width >= num_interfaces {
        return Stencil {
            cell,
            first: 0,
            last: num_interfaces - 1,
        };
    }
    let first = cell
        .saturating_sub(rule.left_reach(degree))
        .min(num_interfaces - width);
    Stencil {
        cell,
        first,
        last: first + width - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_linear_interior() {
        let s = build_stencil(10, 4, 1, StencilRule::Compact);
        assert_eq!(s.indices(), 3..=6);
    }

    #[test]
    fn compact_cubic_first_cell_shifts_right() {
        let s = build_stencil(10, 0, 3, StencilRule::Compact);
        assert_eq!(s.indices(), 0..=7);
        let s = build_stencil(10, 8, 3, StencilRule::Compact);
        assert_eq!(s.indices(), 2..=9);
    }

    #[test]
    fn two_point_track() {
        for rule in [StencilRule::Wide, StencilRule::Compact] {
            assert_eq!(build_stencil(2, 0, 1, rule).indices(), 0..=1);
        }
    }

    #[test]
    fn wide_layout() {
        let s = build_stencil(20, 10, 3, StencilRule::Wide);
        assert_eq!(s.indices(), 6..=14);
        assert_eq!(s.len(), 9);
        assert_eq!(build_stencil(20, 0, 3, StencilRule::Wide).indices(), 0..=8);
        assert_eq!(build_stencil(20, 18, 3, StencilRule::Wide).indices(), 11..=19);
    }

    #[test]
    fn always_contains_cell_interfaces() {
        for n in 2..30 {
            for degree in 1..=9 {
                for rule in [StencilRule::Wide, StencilRule::Compact] {
                    for cell in 0..n - 1 {
                        let s = build_stencil(n, cell, degree, rule);
                        assert!(s.contains(cell) && s.contains(cell + 1));
                        assert_eq!(s.len(), rule.width(degree).min(n));
                        assert!(s.last < n);
                    }
                }
            }
        }
    }
}
