//! Seeded map generators.
//!
//! Both generators draw from Xoshiro256++ seeded through SplitMix64
//! (`rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64`), with integer ranges
//! sampled by `rand::Rng::random_range`. Draw order is part of the output
//! contract: the same parameters always produce the same map.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::{GridError, GridMap, Terrain};

/// Rectangle-obstacle map parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomMapSpec {
    pub width: usize,
    pub height: usize,
    /// Target obstacle fraction in `[0, 1)`.
    pub obstacle_ratio: f64,
    pub rect_min: usize,
    pub rect_max: usize,
    pub seed: u64,
}

/// Places axis-aligned rectangles until the obstacle fraction reaches
/// `obstacle_ratio`.
///
/// Each rectangle draws, in order: column `x` and row `y` of its top-left
/// corner (uniform over the whole map), then width and height (uniform in
/// `[rect_min, rect_max]`). Rectangles are clipped at the map border and may
/// overlap. Placement also stops after `10 · (width·height / rect_min²)`
/// attempts, so very high ratios saturate instead of looping forever.
pub fn generate_random_map(spec: &RandomMapSpec) -> Result<GridMap, GridError> {
    let RandomMapSpec {
        width,
        height,
        obstacle_ratio,
        rect_min,
        rect_max,
        seed,
    } = *spec;
    if width < 2 || height < 2 {
        return Err(GridError::InvalidParameters(format!(
            "map must be at least 2×2, got {width}×{height}"
        )));
    }
    if !(0.0..1.0).contains(&obstacle_ratio) {
        return Err(GridError::InvalidParameters(format!(
            "obstacle ratio {obstacle_ratio} outside [0, 1)"
        )));
    }
    if rect_min < 1 || rect_max < rect_min {
        return Err(GridError::InvalidParameters(format!(
            "rectangle sizes must satisfy 1 <= min <= max, got {rect_min}..={rect_max}"
        )));
    }

    let total = width * height;
    let mut terrain = vec![Terrain::Free; total];
    let mut obstacles = 0usize;
    let max_attempts = (10 * (total / (rect_min * rect_min))).max(1);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut attempts = 0;

    while (obstacles as f64) < obstacle_ratio * total as f64 && attempts < max_attempts {
        attempts += 1;
        let x = rng.random_range(0..width);
        let y = rng.random_range(0..height);
        let w = rng.random_range(rect_min..=rect_max);
        let h = rng.random_range(rect_min..=rect_max);
        for i in y..(y + h).min(height) {
            for cell in &mut terrain[i * width + x..i * width + (x + w).min(width)] {
                if *cell == Terrain::Free {
                    *cell = Terrain::Obstacle;
                    obstacles += 1;
                }
            }
        }
    }
    GridMap::from_terrain(width, height, terrain)
}

/// Perfect-maze parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MazeSpec {
    pub width: usize,
    pub height: usize,
    /// Passage width in cells; walls are one cell thick.
    pub corridor: usize,
    pub seed: u64,
}

/// Depth-first backtracking maze: a lattice of `corridor × corridor` rooms
/// separated by one-cell walls, with exactly one route between any two rooms.
/// Cells left over at the right and bottom edges stay blocked.
pub fn generate_maze(spec: &MazeSpec) -> Result<GridMap, GridError> {
    let MazeSpec {
        width,
        height,
        corridor,
        seed,
    } = *spec;
    let pitch = corridor + 1;
    if corridor == 0 || width < pitch + 1 || height < pitch + 1 {
        return Err(GridError::InvalidParameters(format!(
            "a {width}×{height} maze cannot hold corridors of width {corridor}"
        )));
    }
    let (cols, rows) = ((width - 1) / pitch, (height - 1) / pitch);
    let mut terrain = vec![Terrain::Obstacle; width * height];
    let mut carve = |i0: usize, j0: usize, h: usize, w: usize| {
        for i in i0..i0 + h {
            for cell in &mut terrain[i * width + j0..i * width + j0 + w] {
                *cell = Terrain::Free;
            }
        }
    };

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut visited = vec![false; cols * rows];
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    carve(1, 1, corridor, corridor);
    while let Some(&(r, c)) = stack.last() {
        let mut options = Vec::with_capacity(4);
        if r > 0 && !visited[(r - 1) * cols + c] {
            options.push((r - 1, c));
        }
        if r + 1 < rows && !visited[(r + 1) * cols + c] {
            options.push((r + 1, c));
        }
        if c > 0 && !visited[r * cols + c - 1] {
            options.push((r, c - 1));
        }
        if c + 1 < cols && !visited[r * cols + c + 1] {
            options.push((r, c + 1));
        }
        options.shuffle(&mut rng);
        let Some(&(nr, nc)) = options.first() else {
            stack.pop();
            continue;
        };
        visited[nr * cols + nc] = true;
        let (top, left) = (1 + nr * pitch, 1 + nc * pitch);
        carve(top, left, corridor, corridor);
        // knock out the wall between the two rooms
        let (wall_top, wall_left) = (1 + r.min(nr) * pitch, 1 + c.min(nc) * pitch);
        if nr != r {
            carve(wall_top + corridor, left, 1, corridor);
        } else {
            carve(top, wall_left + corridor, corridor, 1);
        }
        stack.push((nr, nc));
    }
    GridMap::from_terrain(width, height, terrain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(ratio: f64, seed: u64) -> RandomMapSpec {
        RandomMapSpec {
            width: 100,
            height: 100,
            obstacle_ratio: ratio,
            rect_min: 2,
            rect_max: 10,
            seed,
        }
    }

    #[test]
    fn zero_ratio_is_empty() {
        let map = generate_random_map(&spec(0.0, 1)).unwrap();
        assert_eq!(map.obstacle_count(), 0);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = generate_random_map(&spec(0.3, 9)).unwrap();
        let b = generate_random_map(&spec(0.3, 9)).unwrap();
        let c = generate_random_map(&spec(0.3, 10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn overshoot_bounded_by_one_rectangle() {
        // the last rectangle adds at most rect_max² = 100 of 10⁴ cells
        let map = generate_random_map(&spec(0.2, 42)).unwrap();
        let fraction = map.obstacle_count() as f64 / 10_000.0;
        assert!((0.20..=0.21).contains(&fraction), "fraction {fraction}");
    }

    #[test]
    fn saturates_at_extreme_ratio() {
        let s = RandomMapSpec {
            width: 10,
            height: 10,
            obstacle_ratio: 0.999,
            rect_min: 1,
            rect_max: 1,
            seed: 3,
        };
        // terminates; with single-cell rectangles 1000 attempts may not fill everything
        let map = generate_random_map(&s).unwrap();
        assert!(map.obstacle_count() <= 100);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_random_map(&RandomMapSpec { width: 1, ..spec(0.1, 0) }).is_err());
        assert!(generate_random_map(&spec(1.0, 0)).is_err());
        assert!(generate_random_map(&RandomMapSpec { rect_min: 5, rect_max: 4, ..spec(0.1, 0) }).is_err());
    }

    #[test]
    fn maze_rooms_are_all_connected() {
        let map = generate_maze(&MazeSpec {
            width: 41,
            height: 31,
            corridor: 3,
            seed: 5,
        })
        .unwrap();
        // flood fill from the first room reaches every free cell
        let start = crate::grid::Cell::new(1, 1);
        let mut seen = std::collections::HashSet::from([start]);
        let mut todo = vec![start];
        let map = map.with_corner_rule(crate::grid::CornerRule::CutForbidden);
        while let Some(c) = todo.pop() {
            for (n, _) in map.neighbors(c).unwrap() {
                if seen.insert(n) {
                    todo.push(n);
                }
            }
        }
        assert_eq!(seen.len(), map.free_count());
        // 10 × 7 rooms of 9 cells + 69 wall openings of 3 cells
        assert_eq!(map.free_count(), 70 * 9 + 69 * 3);
    }
}
