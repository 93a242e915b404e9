use crate::{Error, Result};

/// Default cap on the number of cubes `n^d`.
pub const DEFAULT_GRID_CAP: usize = 1 << 24;

/// Uniform subdivision of `[0,1]^d` into `n^d` axis-aligned cubes of edge `1/n`.
///
/// Cube `i` has coordinate indices `(a_1, ..., a_d)` in mixed radix `n` with
/// the first coordinate varying fastest, and center `((2a_k + 1) / (2n))_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    n: usize,
    d: usize,
    len: usize,
}

impl Grid {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        Self::with_cap(n, d, DEFAULT_GRID_CAP)
    }

    pub fn with_cap(n: usize, d: usize, cap: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid needs n >= 1 and d >= 1, got n={n}, d={d}"
            )));
        }
        let len = u32::try_from(d)
            .ok()
            .and_then(|d| n.checked_pow(d))
            .filter(|&len| len <= cap)
            .ok_or(Error::GridTooLarge { n, d, cap })?;
        Ok(Self { n, d, len })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of cubes `N = n^d`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Edge length `h = 1/n`.
    pub fn edge(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        debug_assert!(index < self.len);
        let mut rest = index;
        (0..self.d)
            .map(|_| {
                let a = rest % self.n;
                rest /= self.n;
                a
            })
            .collect()
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &a| acc * self.n + a)
    }

    pub fn center(&self, index: usize) -> Vec<f64> {
        let two_n = 2.0 * self.n as f64;
        self.coords(index)
            .into_iter()
            .map(|a| (2 * a + 1) as f64 / two_n)
            .collect()
    }

    /// Lower and upper corners of cube `index`.
    pub fn bounds(&self, index: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.n as f64;
        let coords = self.coords(index);
        (
            coords.iter().map(|&a| a as f64 / n).collect(),
            coords.iter().map(|&a| (a + 1) as f64 / n).collect(),
        )
    }

    /// Index of the cube containing `t` (upper faces belong to the lower cube
    /// only at the right edge of the domain).
    pub fn locate(&self, t: &[f64]) -> usize {
        let coords: Vec<usize> = t
            .iter()
            .map(|&x| ((x * self.n as f64).floor().max(0.0) as usize).min(self.n - 1))
            .collect();
        self.index_of(&coords)
    }
}

pub fn build_grid(n: usize, d: usize) -> Result<Grid> {
    Grid::new(n, d)
}
