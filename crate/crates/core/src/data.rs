//! Integer-domain classification datasets in canonical sorted form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One classification example: a point in `[1, N]` with a binary label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub x: u32,
    pub y: bool,
}

impl LabeledPoint {
    pub fn new(x: u32, y: bool) -> Self {
        LabeledPoint { x, y }
    }

    /// The walk increment for this label: +1 for label 1, -1 for label 0.
    pub fn step(&self) -> i64 {
        if self.y {
            1
        } else {
            -1
        }
    }
}

/// A dataset over `[1, N] x {0, 1}` held in canonical order: nondecreasing
/// in `x`, ties ordered label 0 before label 1.
///
/// The canonical order makes every mechanism in this crate a deterministic
/// function of the example multiset, which the exact privacy audits rely on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortedDataset {
    points: Vec<LabeledPoint>,
    universe_size: u32,
}

impl SortedDataset {
    /// Build from points in any order; sorts into canonical form.
    pub fn from_points(mut points: Vec<LabeledPoint>, universe_size: u32) -> Result<Self> {
        if universe_size < 1 {
            return Err(Error::invalid("universe_size", "must be at least 1"));
        }
        for p in &points {
            if p.x < 1 || p.x > universe_size {
                return Err(Error::PointOutOfRange {
                    x: p.x,
                    y: p.y as u8,
                    universe_size,
                });
            }
        }
        points.sort_unstable();
        Ok(SortedDataset { points, universe_size })
    }

    /// Build from points that are already in canonical order, without
    /// re-sorting. Returns an error if the order is not canonical.
    pub fn from_sorted(points: Vec<LabeledPoint>, universe_size: u32) -> Result<Self> {
        if points.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("points", "not in canonical sorted order"));
        }
        SortedDataset::from_points(points, universe_size)
    }

    pub fn empty(universe_size: u32) -> Result<Self> {
        SortedDataset::from_points(Vec::new(), universe_size)
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn universe_size(&self) -> u32 {
        self.universe_size
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledPoint> {
        self.points.iter()
    }

    /// Dataset with the element at `index` removed.
    pub fn remove_index(&self, index: usize) -> SortedDataset {
        let mut points = self.points.clone();
        points.remove(index);
        SortedDataset { points, universe_size: self.universe_size }
    }

    /// Replace-one neighbor: the element at `index` swapped for
    /// `replacement`, re-canonicalized.
    pub fn replace_index(&self, index: usize, replacement: LabeledPoint) -> Result<SortedDataset> {
        let mut points = self.points.clone();
        points[index] = replacement;
        SortedDataset::from_points(points, self.universe_size)
    }

    /// Count of examples carrying each label.
    pub fn label_counts(&self) -> (usize, usize) {
        let ones = self.points.iter().filter(|p| p.y).count();
        (self.points.len() - ones, ones)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(u32, u8)]) -> Vec<LabeledPoint> {
        raw.iter().map(|&(x, y)| LabeledPoint::new(x, y != 0)).collect()
    }

    #[test]
    fn canonicalizes_ties_zero_before_one() {
        let d = SortedDataset::from_points(pts(&[(2, 1), (1, 1), (2, 0), (1, 0)]), 3).unwrap();
        let order: Vec<(u32, bool)> = d.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(order, vec![(1, false), (1, true), (2, false), (2, true)]);
    }

    #[test]
    fn rejects_out_of_range_points() {
        assert!(SortedDataset::from_points(pts(&[(0, 1)]), 3).is_err());
        assert!(SortedDataset::from_points(pts(&[(4, 0)]), 3).is_err());
        assert!(SortedDataset::from_points(vec![], 0).is_err());
    }

    #[test]
    fn from_sorted_rejects_non_canonical() {
        assert!(SortedDataset::from_sorted(pts(&[(2, 0), (1, 0)]), 3).is_err());
        assert!(SortedDataset::from_sorted(pts(&[(1, 1), (1, 0)]), 3).is_err());
        assert!(SortedDataset::from_sorted(pts(&[(1, 0), (1, 1), (2, 0)]), 3).is_ok());
    }

    #[test]
    fn replace_recanonicalizes() {
        let d = SortedDataset::from_points(pts(&[(1, 0), (3, 1)]), 3).unwrap();
        let n = d.replace_index(0, LabeledPoint::new(3, false)).unwrap();
        let order: Vec<(u32, bool)> = n.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(order, vec![(3, false), (3, true)]);
    }

    #[test]
    fn remove_keeps_order() {
        let d = SortedDataset::from_points(pts(&[(1, 0), (2, 1), (2, 0)]), 3).unwrap();
        let r = d.remove_index(1);
        assert_eq!(r.len(), 2);
        assert_eq!(r.points()[1], LabeledPoint::new(2, true));
    }
}
