//! Dense matrices of exact rationals.
//!
//! All vectors are rows acting on matrices from the left: a matrix with
//! `rows` rows and `cols` columns represents a linear map from row vectors
//! of length `rows` to row vectors of length `cols`, `v -> v * M`.
//!
//! `rank` uses fraction-free Bareiss elimination over the integers after
//! clearing denominators. `kernel_basis` (the left kernel `{v : v M = 0}`)
//! delegates to the shared solver, which picks exact rational elimination
//! for small systems and certified modular elimination for large ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::SparseSystem;
use crate::rat::Rat;

/// Row-major dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Above this size, `rank` goes through the modular kernel instead of
/// Bareiss elimination.
const BAREISS_LIMIT: usize = 220;

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Input(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Input("ragged rows".into()));
        }
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: usize, cols: usize, ints: &[i64]) -> Result<Self> {
        RatMatrix::new(rows, cols, ints.iter().map(|&n| Rat::from_int(n)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Matrix product; `self` is applied first under the row convention.
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.entries[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Input("shape mismatch in add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn neg(&self) -> RatMatrix {
        self.scale(&Rat::from_int(-1))
    }

    /// Vertical stack: rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.cols {
            return Err(Error::Input("shape mismatch in stack".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RatMatrix::new(self.rows + other.rows, self.cols, entries)
    }

    /// `v * self` for a row vector `v` of length `rows`.
    pub fn apply_row(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.rows {
            return Err(Error::Input("vector length does not match rows".into()));
        }
        let mut out = vec![Rat::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let m = self.at(i, j);
                if !m.is_zero() {
                    out[j] += &(vi * m);
                }
            }
        }
        Ok(out)
    }

    /// Rank: fraction-free Bareiss for moderate sizes, the certified kernel
    /// for large ones (rank = rows − kernel dimension either way).
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows.min(self.cols) <= BAREISS_LIMIT {
            self.rank_bareiss()
        } else {
            self.rows - self.kernel_basis().rows()
        }
    }

    fn rank_bareiss(&self) -> usize {
        // Scaling a row by a nonzero rational leaves the rank unchanged, so
        // clear denominators row by row and work over the integers.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let lcm = self
                    .row(r)
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                self.row(r)
                    .iter()
                    .map(|e| e.numer() * (&lcm / e.denom()))
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, piv);
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() && m[rank][col].is_one() {
                    // nothing to eliminate and division is trivial
                }
                for c in col + 1..self.cols {
                    let t = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = &t / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Basis of the left kernel `{v : v M = 0}` as the rows of a matrix with
    /// `rows(self)` columns, in reduced echelon form. The row count always
    /// equals `rows(self) - rank(self)`.
    pub fn kernel_basis(&self) -> RatMatrix {
        let n = self.rows;
        if n == 0 {
            return RatMatrix::zero(0, 0);
        }
        let mut sys = SparseSystem::new(n);
        for c in 0..self.cols {
            let eq: Vec<(usize, Rat)> = (0..n)
                .filter(|&r| !self.at(r, c).is_zero())
                .map(|r| (r, self.at(r, c).clone()))
                .collect();
            if !eq.is_empty() {
                sys.push_equation(eq);
            }
        }
        let basis = sys.solution_basis();
        if basis.is_empty() {
            RatMatrix::zero(0, n)
        } else {
            RatMatrix::from_rows(basis).expect("kernel rows are rectangular")
        }
    }

    /// One exact solution of `x A = b`, if the system is consistent.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.cols {
            return Err(Error::Input(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.cols
            )));
        }
        let rhs = RatMatrix::from_rows(vec![b.to_vec()])?;
        Ok(self.solve_matrix(&rhs)?.map(|m| m.row(0).to_vec()))
    }

    /// Solve `X * self = rhs` for a whole matrix `rhs`: one elimination of
    /// the coefficient columns carries every right-hand side along.
    pub fn solve_matrix(&self, rhs: &RatMatrix) -> Result<Option<RatMatrix>> {
        if rhs.cols != self.cols {
            return Err(Error::Input("shape mismatch in solve_matrix".into()));
        }
        if rhs.rows == 0 {
            return Ok(Some(RatMatrix::zero(0, self.rows)));
        }
        let n = self.rows;
        let k = rhs.rows;
        // Equations indexed by columns of A: coefficient row over the n
        // unknowns, followed by one target entry per right-hand side.
        let mut eq: Vec<(Vec<Rat>, Vec<Rat>)> = (0..self.cols)
            .map(|c| {
                (
                    (0..n).map(|r| self.at(r, c).clone()).collect(),
                    (0..k).map(|r| rhs.at(r, c).clone()).collect(),
                )
            })
            .collect();
        let nrows = eq.len();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            if rank == nrows {
                break;
            }
            let Some(piv) = (rank..nrows).find(|&r| !eq[r].0[col].is_zero()) else {
                continue;
            };
            eq.swap(rank, piv);
            let inv = eq[rank].0[col].recip();
            for x in eq[rank].0.iter_mut() {
                *x *= &inv;
            }
            for x in eq[rank].1.iter_mut() {
                *x *= &inv;
            }
            for r in 0..nrows {
                if r != rank && !eq[r].0[col].is_zero() {
                    let f = eq[r].0[col].clone();
                    let (row_r, row_p) = if r < rank {
                        let (a, b) = eq.split_at_mut(rank);
                        (&mut a[r], &b[0])
                    } else {
                        let (a, b) = eq.split_at_mut(r);
                        (&mut b[0], &a[rank])
                    };
                    for (x, y) in row_r.0.iter_mut().zip(row_p.0.iter()) {
                        if !y.is_zero() {
                            *x -= &(&f * y);
                        }
                    }
                    for (x, y) in row_r.1.iter_mut().zip(row_p.1.iter()) {
                        if !y.is_zero() {
                            *x -= &(&f * y);
                        }
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        for r in rank..nrows {
            if !eq[r].1.iter().all(Rat::is_zero) {
                return Ok(None);
            }
        }
        let mut out = RatMatrix::zero(k, n);
        for (r, &pc) in pivots.iter().enumerate() {
            for t in 0..k {
                *out.at_mut(t, pc) = eq[r].1[t].clone();
            }
        }
        Ok(Some(out))
    }

    /// Square and invertible?
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Random matrix with integer entries drawn uniformly from `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rows: usize, cols: usize, bound: u64, rng: &mut R) -> RatMatrix {
    let b = bound as i64;
    let entries = (0..rows * cols)
        .map(|_| Rat::from_int(rng.gen_range(-b..=b)))
        .collect();
    RatMatrix::new(rows, cols, entries).expect("shape is consistent")
}
