//! Grid geometries shared by the geometric generators.
//!
//! A [`GridStructure`] names the cells of either a rectangle or a cubic
//! grid (a hypercube when the side length is 2) and answers Manhattan
//! distance and adjacency queries between them. Cells are indexed in a
//! fixed order — row-major for rectangles, lexicographic over coordinate
//! tuples for cubic grids — and this order is also the facility/location
//! order of any instance built on the grid.

use crate::error::{GenError, MAX_GENERATED_SIZE};

/// A finite grid of cells with a fixed enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridStructure {
    /// `rows x cols` cells indexed row-major.
    Rectangle { rows: usize, cols: usize },
    /// `{0..side-1}^dim` vertices indexed lexicographically (first
    /// coordinate most significant).
    CubeGrid { side: usize, dim: u32 },
}

impl GridStructure {
    /// Builds a rectangle grid.
    pub fn rectangle(rows: usize, cols: usize) -> Result<Self, GenError> {
        if rows < 1 || cols < 1 || rows * cols < 2 {
            return Err(GenError::Config {
                reason: format!("rectangle grid {rows}x{cols} has fewer than 2 cells"),
            });
        }
        if rows * cols > MAX_GENERATED_SIZE {
            return Err(GenError::TooLarge { n: rows * cols, max: MAX_GENERATED_SIZE });
        }
        Ok(GridStructure::Rectangle { rows, cols })
    }

    /// Builds a cubic grid with `side^dim` vertices.
    pub fn cube(side: usize, dim: u32) -> Result<Self, GenError> {
        if side < 2 {
            return Err(GenError::Config {
                reason: format!("cubic grid needs side length >= 2, got {side}"),
            });
        }
        if dim < 1 {
            return Err(GenError::Config { reason: "cubic grid needs dimension >= 1".to_string() });
        }
        let n = side
            .checked_pow(dim)
            .filter(|&n| n <= MAX_GENERATED_SIZE)
            .ok_or(GenError::TooLarge {
                n: MAX_GENERATED_SIZE + 1,
                max: MAX_GENERATED_SIZE,
            })?;
        debug_assert!(n >= 2);
        Ok(GridStructure::CubeGrid { side, dim })
    }

    /// Number of cells.
    pub fn n(&self) -> usize {
        match *self {
            GridStructure::Rectangle { rows, cols } => rows * cols,
            GridStructure::CubeGrid { side, dim } => side.pow(dim),
        }
    }

    /// Coordinates of cell `index` in enumeration order.
    fn coords(&self, index: usize) -> Vec<usize> {
        match *self {
            GridStructure::Rectangle { cols, .. } => vec![index / cols, index % cols],
            GridStructure::CubeGrid { side, dim } => {
                let mut digits = vec![0; dim as usize];
                let mut rest = index;
                for d in (0..dim as usize).rev() {
                    digits[d] = rest % side;
                    rest /= side;
                }
                digits
            }
        }
    }

    /// Manhattan distance between two cells.
    pub fn manhattan(&self, i: usize, j: usize) -> usize {
        self.coords(i)
            .iter()
            .zip(self.coords(j))
            .map(|(&a, b)| a.abs_diff(b))
            .sum()
    }

    /// Cells at Manhattan distance exactly 1 from `index`, in coordinate
    /// order (axis by axis, lower neighbor first).
    pub fn neighbors(&self, index: usize) -> Vec<usize> {
        let coords = self.coords(index);
        let limits: Vec<usize> = match *self {
            GridStructure::Rectangle { rows, cols } => vec![rows, cols],
            GridStructure::CubeGrid { side, dim } => vec![side; dim as usize],
        };
        let mut result = Vec::new();
        for axis in 0..coords.len() {
            for delta in [-1isize, 1] {
                let moved = coords[axis] as isize + delta;
                if moved < 0 || moved as usize >= limits[axis] {
                    continue;
                }
                let mut neighbor = coords.clone();
                neighbor[axis] = moved as usize;
                result.push(self.index_of(&neighbor));
            }
        }
        result
    }

    fn index_of(&self, coords: &[usize]) -> usize {
        match *self {
            GridStructure::Rectangle { cols, .. } => coords[0] * cols + coords[1],
            GridStructure::CubeGrid { side, .. } => {
                coords.iter().fold(0, |acc, &c| acc * side + c)
            }
        }
    }
}
