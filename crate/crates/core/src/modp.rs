//! Prime-field elimination used to accelerate exact kernel computations.
//!
//! Reducing a rational matrix modulo a prime can only enlarge its kernel, so
//! a mod-p echelon form yields an upper bound on the rational kernel
//! dimension together with a candidate pivot structure. Candidate kernel
//! vectors are lifted back to the rationals by Chinese remaindering and
//! rational reconstruction, then verified by exact multiplication, which
//! turns the modular computation into a certificate rather than a heuristic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// 31-bit primes used for modular elimination, largest first. Fixed so that
/// every computation is deterministic. Primality is asserted by a test.
pub(crate) const PRIMES: [u64; 12] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
];

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    // All primes in use are below 2^31, so the product of two reduced
    // residues fits in a u64.
    debug_assert!(a < (1 << 31) && b < (1 << 31));
    (a * b) % p
}

/// Modular inverse by Fermat; `p` prime, `a != 0 mod p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Row-reduced echelon form of a dense matrix mod p, in place.
/// Returns the pivot column of each of the first `rank` rows.
pub(crate) fn rref_mod_p(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pivot_row) = (r..nrows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r][c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..nrows {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                // row_i -= f * row_r
                let (head, tail) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in head[c..].iter_mut().zip(tail[c..].iter()) {
                    let sub = mul_mod(f, *y, p);
                    *x = (*x + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Null-space basis of the linear map given by `rows` (as a matrix acting on
/// column vectors) over the field with `p` elements. Each returned vector `x`
/// satisfies `rows * x = 0`; the basis is in reduced echelon form with one
/// unit coordinate per free column.
pub(crate) fn nullspace_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let pivots = rref_mod_p(&mut rows, p);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let coef = rows[r][free];
            if coef != 0 {
                v[pc] = p - coef;
            }
        }
        basis.push(v);
    }
    (pivots, basis)
}

/// Combine `value mod modulus` with `residue mod p` into a residue modulo
/// `modulus * p`.
pub(crate) fn crt_step(value: &BigInt, modulus: &BigInt, residue: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let cur = ((value % &pb) + &pb) % &pb;
    let cur: u64 = cur.try_into().expect("residue fits in u64");
    let diff = (residue + p - cur % p) % p;
    let m_inv = {
        let m = ((modulus % &pb) + &pb) % &pb;
        let m: u64 = m.try_into().expect("modulus residue fits");
        inv_mod(m % p, p)
    };
    let t = mul_mod(diff, m_inv, p);
    value + modulus * BigInt::from(t)
}

/// Rational reconstruction: find `n/d` with `|n|, d <= sqrt(m/2)` congruent
/// to `a` mod `m`, if one exists.
pub(crate) fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = {
        let half = m / BigInt::from(2);
        half.sqrt()
    };
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.gcd(&t1.abs()) != BigInt::one() && !r1.is_zero() {
        return None;
    }
    Some(Rat::from_parts(r1, t1))
}
