//! Dense matrices over a [`Ring`], stored row-major.
//!
//! Zero rows and columns are allowed; they show up as empty presentations.

use crate::ring::{Ring, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<RingElement>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        for e in &entries {
            assert!(
                ring.contains(e),
                "matrix entry {e:?} does not belong to {}",
                ring.descriptor()
            );
        }
        RingMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        RingMatrix {
            entries: vec![z; rows * cols],
            ring,
            rows,
            cols,
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zero(ring.clone(), n, n);
        let one = ring.one();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    /// Build from closures row by row.
    pub fn from_fn(
        ring: Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(ring, rows, cols, entries)
    }

    /// Build from integer literals mapped through the ring.
    pub fn from_ints(ring: Ring, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows * cols);
        for row in data {
            assert_eq!(row.len(), cols, "ragged rows");
            for &v in *row {
                entries.push(ring.from_int(v));
            }
        }
        RingMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn col(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<RingElement> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn from_cols(ring: Ring, rows: usize, cols: &[Vec<RingElement>]) -> Self {
        Self::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.add(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.sub(self.get(i, j), other.get(i, j))
        })
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.neg(self.get(i, j))
        })
    }

    pub fn scale(&self, c: &RingElement) -> Self {
        Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.ring.mul(c, self.get(i, j))
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let ring = &self.ring;
        Self::from_fn(ring.clone(), self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                acc = ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j)));
            }
            acc
        })
    }

    /// Apply to a coordinate vector (length = cols).
    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let ring = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for j in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.rows, other.rows, "row mismatch");
        Self::from_fn(
            self.ring.clone(),
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        )
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.cols, "column mismatch");
        Self::from_fn(
            self.ring.clone(),
            self.rows + other.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j).clone()
                } else {
                    other.get(i - self.rows, j).clone()
                }
            },
        )
    }

    pub fn block_diag(ring: Ring, blocks: &[&RingMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zero(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Keep the listed columns, in order.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ring.clone(), self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> Self {
        Self::from_fn(self.ring.clone(), hi - lo, self.cols, |i, j| {
            self.get(lo + i, j).clone()
        })
    }
}

impl std::fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "[{}x{} over {}]",
            self.rows,
            self.cols,
            self.ring.descriptor()
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.display_elem(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_over_z6() {
        let r = Ring::IntegersMod(6);
        let a = RingMatrix::from_ints(r.clone(), &[&[2, 1], &[0, 3]]);
        let b = RingMatrix::from_ints(r.clone(), &[&[1], &[4]]);
        let c = a.mul(&b);
        assert_eq!(c, RingMatrix::from_ints(r, &[&[0], &[0]]));
    }

    #[test]
    fn empty_shapes_allowed() {
        let r = Ring::Integers;
        let a = RingMatrix::zero(r.clone(), 0, 3);
        let b = RingMatrix::zero(r.clone(), 3, 2);
        assert_eq!(a.mul(&b).rows, 0);
        let id0 = RingMatrix::identity(r, 0);
        assert!(id0.is_zero());
    }
}
