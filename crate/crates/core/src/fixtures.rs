//! Reference point sets used by tests, the acceptance suite and `verify`.

use crate::point::IntPoint;

/// The 26-point planar example: hull vertices (1,1), (1,2), (5,9), (13,21)
/// and (9,13); axis-aligned node volume 273, optimal node volume 30.
pub fn planar_points() -> Vec<IntPoint> {
    [
        [1, 1], [3, 4], [5, 7], [7, 10], [9, 13], [2, 3], [4, 6], [6, 9], [8, 12],
        [10, 15], [3, 5], [5, 8], [7, 11], [9, 14], [11, 17], [4, 7], [6, 10], [8, 13],
        [10, 16], [12, 19], [5, 9], [7, 12], [9, 15], [11, 18], [13, 21], [1, 2],
    ]
    .into_iter()
    .map(IntPoint::from)
    .collect()
}

/// Five planar points whose optimal node volume (9) is reached both by a
/// unimodular matrix and by `[[1, 0], [1, 2]]`.
pub fn det2_plane_points() -> Vec<IntPoint> {
    [[0, 0], [-1, 0], [-1, 1], [1, -1], [1, 0]]
        .into_iter()
        .map(IntPoint::from)
        .collect()
}

/// Hull vertices of [`det2_space_points`].
pub fn det2_space_vertices() -> Vec<IntPoint> {
    [
        [-2, -2, 1], [-2, -2, 3], [-2, 2, -1], [-2, 2, 1],
        [2, -2, -1], [2, -2, 1], [2, 2, -3], [2, 2, -1],
    ]
    .into_iter()
    .map(IntPoint::from)
    .collect()
}

/// All 63 lattice points of a polytope whose optimal transformation needs
/// `|det| = 2`: `[[1, 0, 0], [0, 1, 0], [1, 1, 2]]` gives 5 x 5 x 5 nodes.
pub fn det2_space_points() -> Vec<IntPoint> {
    [
        [-2, -2, 1], [-2, -2, 2], [-2, -2, 3], [-2, -1, 1], [-2, -1, 2], [-2, 0, 0],
        [-2, 0, 1], [-2, 0, 2], [-2, 1, 0], [-2, 1, 1], [-2, 2, -1], [-2, 2, 0], [-2, 2, 1],
        [-1, -2, 1], [-1, -2, 2], [-1, -1, 0], [-1, -1, 1], [-1, -1, 2], [-1, 0, 0],
        [-1, 0, 1], [-1, 1, -1], [-1, 1, 0], [-1, 1, 1], [-1, 2, -1], [-1, 2, 0], [0, -2, 0],
        [0, -2, 1], [0, -2, 2], [0, -1, 0], [0, -1, 1], [0, 0, -1], [0, 0, 0], [0, 0, 1],
        [0, 1, -1], [0, 1, 0], [0, 2, -2], [0, 2, -1], [0, 2, 0], [1, -2, 0], [1, -2, 1],
        [1, -1, -1], [1, -1, 0], [1, -1, 1], [1, 0, -1], [1, 0, 0], [1, 1, -2], [1, 1, -1],
        [1, 1, 0], [1, 2, -2], [1, 2, -1], [2, -2, -1], [2, -2, 0], [2, -2, 1], [2, -1, -1],
        [2, -1, 0], [2, 0, -2], [2, 0, -1], [2, 0, 0], [2, 1, -2], [2, 1, -1], [2, 2, -3],
        [2, 2, -2], [2, 2, -1],
    ]
    .into_iter()
    .map(IntPoint::from)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(planar_points().len(), 26);
        assert_eq!(det2_plane_points().len(), 5);
        assert_eq!(det2_space_points().len(), 63);
        let all = det2_space_points();
        assert!(det2_space_vertices().iter().all(|v| all.contains(v)));
    }
}
