//! Shared engine for exact solution spaces of homogeneous linear systems.
//!
//! A `SparseSystem` is a list of equations `Σ coef_k · x_{i_k} = 0` over the
//! rationals. The solution space is computed either by exact rational
//! Gauss-Jordan elimination (small systems) or by modular elimination with
//! CRT lifting, rational reconstruction and exact verification (large
//! systems). Both paths return the canonical reduced-echelon basis, so the
//! choice of path never changes the output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::modp;
use crate::rat::Rat;

/// Scale a vector to a primitive integer vector (clear denominators, divide
/// by the content, first nonzero entry positive). A deterministic function
/// of the line spanned by the input.
pub(crate) fn primitive_scale(v: &mut [Rat]) {
    use num_traits::Zero;
    let mut lcm = BigInt::one();
    for x in v.iter() {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let scaled: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for s in &scaled {
        gcd = gcd.gcd(s);
    }
    if gcd.is_zero() {
        return;
    }
    let flip = scaled
        .iter()
        .find(|s| !s.is_zero())
        .map_or(false, |s| s < &BigInt::zero());
    for (x, s) in v.iter_mut().zip(scaled.into_iter()) {
        let mut n = &s / &gcd;
        if flip {
            n = -n;
        }
        *x = Rat::from_parts(n, BigInt::one());
    }
}

/// Homogeneous equations over `unknowns` variables; each equation is a
/// sparse list of `(unknown index, coefficient)` pairs.
pub(crate) struct SparseSystem {
    pub unknowns: usize,
    pub equations: Vec<Vec<(usize, Rat)>>,
}

/// Unknown-count threshold for switching to the modular path.
const DENSE_LIMIT: usize = 48;

impl SparseSystem {
    pub fn new(unknowns: usize) -> Self {
        SparseSystem {
            unknowns,
            equations: Vec::new(),
        }
    }

    pub fn push_equation(&mut self, eq: Vec<(usize, Rat)>) {
        self.equations.push(eq);
    }

    /// Does `v` satisfy every equation exactly?
    pub fn verify(&self, v: &[Rat]) -> bool {
        self.equations.iter().all(|eq| {
            let mut acc = Rat::zero();
            for (i, c) in eq {
                if !v[*i].is_zero() {
                    acc += &(c * &v[*i]);
                }
            }
            acc.is_zero()
        })
    }

    fn dense_rows(&self) -> Vec<Vec<Rat>> {
        self.equations
            .iter()
            .map(|eq| {
                let mut row = vec![Rat::zero(); self.unknowns];
                for (i, c) in eq {
                    row[*i] = &row[*i] + c;
                }
                row
            })
            .collect()
    }

    fn residue_rows(&self, p: u64) -> Option<Vec<Vec<u64>>> {
        self.equations
            .iter()
            .map(|eq| {
                let mut row = vec![0u64; self.unknowns];
                for (i, c) in eq {
                    let r = c.residue(p)?;
                    row[*i] = (row[*i] + r) % p;
                }
                Some(row)
            })
            .collect()
    }

    /// Upper bound for the solution-space dimension: reduction mod p can
    /// only enlarge a kernel, never shrink it.
    pub fn dim_upper_bound(&self, prime_index: usize) -> Option<usize> {
        let p = *modp::PRIMES.get(prime_index)?;
        let rows = self.residue_rows(p)?;
        let (pivots, _) = modp::nullspace_mod_p(rows, self.unknowns, p);
        Some(self.unknowns - pivots.len())
    }

    /// Exact solution-space dimension given a known lower bound (for example
    /// 1 for an endomorphism system, which always contains the identity).
    /// When a modular upper bound meets the lower bound the answer is
    /// certified without any reconstruction.
    pub fn dim_exact_with_lower(&self, lower: usize) -> usize {
        if let Some(ub) = self.dim_upper_bound(0) {
            if ub <= lower {
                return lower;
            }
        }
        self.solution_basis().len()
    }

    /// Canonical basis of the solution space: the reduced-echelon basis,
    /// each vector rescaled to a primitive integer vector.
    pub fn solution_basis(&self) -> Vec<Vec<Rat>> {
        if self.unknowns == 0 {
            return Vec::new();
        }
        let mut basis = if self.equations.is_empty() {
            identity_basis(self.unknowns)
        } else if self.unknowns <= DENSE_LIMIT {
            rational_nullspace(self.dense_rows(), self.unknowns)
        } else {
            self.modular_basis()
                .unwrap_or_else(|| rational_nullspace(self.dense_rows(), self.unknowns))
        };
        for v in basis.iter_mut() {
            primitive_scale(v);
        }
        basis
    }

    fn modular_basis(&self) -> Option<Vec<Vec<Rat>>> {
        let n = self.unknowns;
        'primes: for start in 0..modp::PRIMES.len() {
            let p0 = modp::PRIMES[start];
            let Some(rows0) = self.residue_rows(p0) else {
                continue;
            };
            let (pivots, basis0) = modp::nullspace_mod_p(rows0, n, p0);
            let mut lifted: Vec<Vec<BigInt>> = basis0
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let mut modulus = BigInt::from(p0);
            let mut next = start + 1;
            loop {
                if let Some(exact) = self.try_lift(&lifted, &modulus) {
                    return Some(exact);
                }
                if next >= modp::PRIMES.len() {
                    break;
                }
                let p = modp::PRIMES[next];
                next += 1;
                let Some(rows) = self.residue_rows(p) else {
                    continue;
                };
                let (pv, basis) = modp::nullspace_mod_p(rows, n, p);
                if pv != pivots || basis.len() != lifted.len() {
                    continue 'primes;
                }
                for (lv, bv) in lifted.iter_mut().zip(basis.iter()) {
                    for (le, &be) in lv.iter_mut().zip(bv.iter()) {
                        *le = modp::crt_step(le, &modulus, be, p);
                    }
                }
                modulus *= BigInt::from(p);
            }
        }
        None
    }

    fn try_lift(&self, lifted: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<Rat>>> {
        let mut out = Vec::with_capacity(lifted.len());
        for v in lifted {
            let mut row = Vec::with_capacity(v.len());
            for e in v {
                row.push(modp::rational_reconstruct(e, modulus)?);
            }
            // integer rows verify much faster than raw echelon fractions
            primitive_scale(&mut row);
            if !self.verify(&row) {
                return None;
            }
            out.push(row);
        }
        Some(out)
    }

    /// Exact test for a nonzero solution. A trivial kernel mod p certifies
    /// a trivial kernel; otherwise one exact witness vector is lifted and
    /// verified.
    pub fn has_nontrivial_solution(&self) -> bool {
        if self.unknowns == 0 {
            return false;
        }
        // rank is at most the number of equations
        if self.equations.len() < self.unknowns {
            return true;
        }
        'primes: for start in 0..modp::PRIMES.len() {
            let p0 = modp::PRIMES[start];
            let Some(rows0) = self.residue_rows(p0) else {
                continue;
            };
            let (pivots, basis0) = modp::nullspace_mod_p(rows0, self.unknowns, p0);
            if basis0.is_empty() {
                // reduction mod p only enlarges the kernel
                return false;
            }
            let mut lifted: Vec<BigInt> = basis0[0].iter().map(|&x| BigInt::from(x)).collect();
            let mut modulus = BigInt::from(p0);
            let mut next = start + 1;
            loop {
                if let Some(mut row) = lifted
                    .iter()
                    .map(|e| modp::rational_reconstruct(e, &modulus))
                    .collect::<Option<Vec<Rat>>>()
                {
                    primitive_scale(&mut row);
                    if row.iter().any(|x| !x.is_zero()) && self.verify(&row) {
                        return true;
                    }
                }
                if next >= modp::PRIMES.len() {
                    break;
                }
                let p = modp::PRIMES[next];
                next += 1;
                let Some(rows) = self.residue_rows(p) else {
                    continue;
                };
                let (pv, basis) = modp::nullspace_mod_p(rows, self.unknowns, p);
                if basis.is_empty() {
                    return false;
                }
                if pv != pivots {
                    continue 'primes;
                }
                for (le, &be) in lifted.iter_mut().zip(basis[0].iter()) {
                    *le = modp::crt_step(le, &modulus, be, p);
                }
                modulus *= BigInt::from(p);
            }
        }
        !self.solution_basis().is_empty()
    }
}

fn identity_basis(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v
        })
        .collect()
}

/// Reduced-echelon null-space basis by exact Gauss-Jordan on the equations.
pub(crate) fn rational_nullspace(mut eq: Vec<Vec<Rat>>, unknowns: usize) -> Vec<Vec<Rat>> {
    let nrows = eq.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !eq[r][col].is_zero()) else {
            continue;
        };
        eq.swap(rank, piv);
        let inv = eq[rank][col].recip();
        for x in eq[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..nrows {
            if r != rank && !eq[r][col].is_zero() {
                let f = eq[r][col].clone();
                let (row_r, row_p) = if r < rank {
                    let (a, b) = eq.split_at_mut(rank);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = eq.split_at_mut(r);
                    (&mut b[0], &a[rank])
                };
                for (x, y) in row_r.iter_mut().zip(row_p.iter()) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut is_pivot = vec![false; unknowns];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..unknowns {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); unknowns];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            if !eq[r][free].is_zero() {
                v[pc] = -&eq[r][free];
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        // x0 + x1 = 0, x1 - x2 = 0 over 3 unknowns: solutions span (-1, 1, 1).
        let mut s = SparseSystem::new(3);
        s.push_equation(vec![(0, Rat::one()), (1, Rat::one())]);
        s.push_equation(vec![(1, Rat::one()), (2, Rat::from_int(-1))]);
        let basis = s.solution_basis();
        assert_eq!(basis.len(), 1);
        assert!(s.verify(&basis[0]));
        // primitive integer scaling with positive leading entry
        assert_eq!(
            basis[0],
            vec![Rat::one(), Rat::from_int(-1), Rat::from_int(-1)]
        );
        assert_eq!(s.dim_exact_with_lower(1), 1);
    }

    #[test]
    fn no_equations() {
        let s = SparseSystem::new(2);
        assert_eq!(s.solution_basis().len(), 2);
    }
}
