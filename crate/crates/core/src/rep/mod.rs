//! Explicit quiver representations over the rationals.
//!
//! A representation assigns a rational vector space to each vertex and a
//! matrix to each arrow; the matrix of an arrow `u -> w` has shape
//! `dims[u] x dims[w]` and acts on row vectors. A morphism `X -> Y` is a
//! tuple of vertex matrices `phi_v` with `f^X_a · phi_w = phi_u · f^Y_a`
//! for every arrow `a: u -> w` (composition left to right).

mod present;
mod rigid;

pub use present::{
    ext1_dim, ext1_dim_unchecked, ext1_positive, projective_presentation, tau, tau_inverse,
    Presentation,
};
pub use rigid::{
    derive_seed, end_radical_dim, generic_rigid_rep, is_indecomposable, is_rigid, is_schur_root,
    iso_check, kronecker_standard, rigid_indec_classify, tau_rigid, KroneckerSeries, TauDirection,
    DEFAULT_ENTRY_BOUND, DEFAULT_TRIALS,
};

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::SparseSystem;
use crate::quiver::{DimVector, Quiver};
use crate::rat::Rat;
use crate::ratmat::{random_matrix, RatMatrix};

/// A representation of an acyclic quiver.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rep {
    quiver: Quiver,
    dims: DimVector,
    /// One matrix per arrow, in arrow order.
    maps: Vec<RatMatrix>,
}

impl Rep {
    pub fn new(quiver: Quiver, dims: DimVector, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::Input("dimension vector length mismatch".into()));
        }
        if !dims.is_nonnegative() {
            return Err(Error::Input("dimension vector must be non-negative".into()));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::Input(format!(
                "expected {} arrow maps, got {}",
                quiver.arrow_count(),
                maps.len()
            )));
        }
        for ((u, w), m) in quiver.arrows0().zip(maps.iter()) {
            if m.rows() != dims.get(u) as usize || m.cols() != dims.get(w) as usize {
                return Err(Error::Input(format!(
                    "arrow {}->{} map has shape {}x{}, expected {}x{}",
                    u + 1,
                    w + 1,
                    m.rows(),
                    m.cols(),
                    dims.get(u),
                    dims.get(w)
                )));
            }
        }
        Ok(Rep { quiver, dims, maps })
    }

    pub fn zero(quiver: Quiver) -> Self {
        let n = quiver.vertex_count();
        let maps = quiver.arrows0().map(|_| RatMatrix::zero(0, 0)).collect();
        Rep {
            quiver,
            dims: DimVector::zero(n),
            maps,
        }
    }

    /// The simple representation concentrated at vertex `v` (1-indexed).
    pub fn simple(quiver: Quiver, v: usize) -> Result<Self> {
        let n = quiver.vertex_count();
        if v == 0 || v > n {
            return Err(Error::Input(format!("vertex {v} out of range")));
        }
        let dims = DimVector::simple(n, v);
        let maps = quiver
            .arrows0()
            .map(|(u, w)| RatMatrix::zero(dims.get(u) as usize, dims.get(w) as usize))
            .collect();
        Rep::new(quiver, dims, maps)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim_at(&self, v0: usize) -> usize {
        self.dims.get(v0) as usize
    }

    pub fn total_dim(&self) -> usize {
        (0..self.quiver.vertex_count()).map(|v| self.dim_at(v)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn map(&self, arrow: usize) -> &RatMatrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    /// Matrix of the action of a path starting at `src0` (a sequence of
    /// composable arrow indices), identity when the path is empty.
    pub fn path_action_from(&self, src0: usize, path: &[usize]) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.dim_at(src0));
        for &a in path {
            acc = acc.mul(&self.maps[a]).expect("path is composable");
        }
        acc
    }

    /// Direct sum, preserving quiver and summand order.
    pub fn direct_sum(parts: &[&Rep]) -> Result<Rep> {
        let Some(first) = parts.first() else {
            return Err(Error::Input("direct sum of no parts".into()));
        };
        let q = first.quiver.clone();
        if parts.iter().any(|p| p.quiver != q) {
            return Err(Error::Input("direct sum across different quivers".into()));
        }
        let n = q.vertex_count();
        let dims = DimVector(
            (0..n)
                .map(|v| parts.iter().map(|p| p.dims.get(v)).sum())
                .collect(),
        );
        let mut maps = Vec::with_capacity(q.arrow_count());
        for (ai, (u, w)) in q.arrows0().enumerate() {
            let mut m = RatMatrix::zero(dims.get(u) as usize, dims.get(w) as usize);
            let mut roff = 0;
            let mut coff = 0;
            for p in parts {
                let block = p.map(ai);
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        *m.at_mut(roff + r, coff + c) = block.at(r, c).clone();
                    }
                }
                roff += block.rows();
                coff += block.cols();
            }
            maps.push(m);
        }
        Rep::new(q, dims, maps)
    }

    /// Dual representation over the opposite quiver (all arrows reversed,
    /// all matrices transposed).
    pub fn dual(&self) -> Rep {
        let arrows: Vec<[usize; 2]> = self
            .quiver
            .arrows0()
            .map(|(u, w)| [w + 1, u + 1])
            .collect();
        let q = Quiver::new(self.quiver.vertex_count(), arrows)
            .expect("opposite of an acyclic quiver is acyclic");
        let maps = self.maps.iter().map(|m| m.transpose()).collect();
        Rep::new(q, self.dims.clone(), maps).expect("dual shapes are consistent")
    }
}

impl Serialize for Rep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            dims: &'a DimVector,
            maps: Vec<Vec<Vec<&'a Rat>>>,
            quiver: &'a Quiver,
        }
        let maps = self
            .maps
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|r| m.row(r).iter().collect())
                    .collect()
            })
            .collect();
        Wire {
            dims: &self.dims,
            maps,
            quiver: &self.quiver,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            dims: DimVector,
            maps: Vec<Vec<Vec<Rat>>>,
            quiver: Quiver,
        }
        let w = Wire::deserialize(d)?;
        if w.maps.len() != w.quiver.arrow_count() {
            return Err(D::Error::custom("wrong number of arrow maps"));
        }
        if w.dims.len() != w.quiver.vertex_count() {
            return Err(D::Error::custom("dimension vector length mismatch"));
        }
        let mut maps = Vec::with_capacity(w.maps.len());
        for ((u, v), rows) in w.quiver.arrows0().zip(w.maps.into_iter()) {
            let (r, c) = (w.dims.get(u).max(0) as usize, w.dims.get(v).max(0) as usize);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(D::Error::custom("arrow map shape mismatch"));
            }
            let m = RatMatrix::new(r, c, rows.into_iter().flatten().collect())
                .map_err(D::Error::custom)?;
            maps.push(m);
        }
        Rep::new(w.quiver, w.dims, maps).map_err(D::Error::custom)
    }
}

/// All paths of a quiver, grouped by source and target, in a deterministic
/// order (depth-first, arrows in index order).
pub struct PathTable {
    /// `by_pair[u][w]` = paths from u to w as arrow-index sequences.
    by_pair: Vec<Vec<Vec<Vec<usize>>>>,
}

impl PathTable {
    pub fn new(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let arrows: Vec<(usize, usize)> = q.arrows0().collect();
        let mut by_pair = vec![vec![Vec::new(); n]; n];
        for src in 0..n {
            // Depth-first from src; acyclicity bounds the recursion.
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(src, Vec::new())];
            while let Some((at, path)) = stack.pop() {
                by_pair[src][at].push(path.clone());
                // Push in reverse so lower arrow indices come out first.
                for ai in (0..arrows.len()).rev() {
                    if arrows[ai].0 == at {
                        let mut next = path.clone();
                        next.push(ai);
                        stack.push((arrows[ai].1, next));
                    }
                }
            }
            // Deterministic: sort by (length, lexicographic arrow indices).
            for w in 0..n {
                by_pair[src][w].sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            }
        }
        PathTable { by_pair }
    }

    pub fn paths(&self, from0: usize, to0: usize) -> &[Vec<usize>] {
        &self.by_pair[from0][to0]
    }

    pub fn count(&self, from0: usize, to0: usize) -> usize {
        self.by_pair[from0][to0].len()
    }
}

/// The indecomposable projective at vertex `v` (1-indexed): the space at
/// `w` is spanned by the paths `v -> w`, and an arrow acts by appending.
pub fn projective(q: &Quiver, v: usize) -> Result<Rep> {
    let n = q.vertex_count();
    if v == 0 || v > n {
        return Err(Error::Input(format!("vertex {v} out of range")));
    }
    let t = PathTable::new(q);
    let v0 = v - 1;
    let dims = DimVector((0..n).map(|w| t.count(v0, w) as i64).collect());
    let arrows: Vec<(usize, usize)> = q.arrows0().collect();
    let mut maps = Vec::with_capacity(arrows.len());
    for (ai, &(u, w)) in arrows.iter().enumerate() {
        let from = t.paths(v0, u);
        let to = t.paths(v0, w);
        let mut m = RatMatrix::zero(from.len(), to.len());
        for (r, p) in from.iter().enumerate() {
            let mut appended = p.clone();
            appended.push(ai);
            let c = to.iter().position(|q| q == &appended).expect("appended path exists");
            *m.at_mut(r, c) = Rat::one();
        }
        maps.push(m);
    }
    Rep::new(q.clone(), dims, maps)
}

/// The indecomposable injective at vertex `v` (1-indexed): the space at `w`
/// is the dual of the span of paths `w -> v`, and an arrow `a: u -> w` acts
/// by the transpose of precomposition with `a`.
pub fn injective(q: &Quiver, v: usize) -> Result<Rep> {
    let n = q.vertex_count();
    if v == 0 || v > n {
        return Err(Error::Input(format!("vertex {v} out of range")));
    }
    let t = PathTable::new(q);
    let v0 = v - 1;
    let dims = DimVector((0..n).map(|w| t.count(w, v0) as i64).collect());
    let arrows: Vec<(usize, usize)> = q.arrows0().collect();
    let mut maps = Vec::with_capacity(arrows.len());
    for (ai, &(u, w)) in arrows.iter().enumerate() {
        let rows = t.paths(u, v0);
        let cols = t.paths(w, v0);
        let mut m = RatMatrix::zero(rows.len(), cols.len());
        for (c, qpath) in cols.iter().enumerate() {
            let mut pre = vec![ai];
            pre.extend_from_slice(qpath);
            if let Some(r) = rows.iter().position(|p| p == &pre) {
                *m.at_mut(r, c) = Rat::one();
            }
        }
        maps.push(m);
    }
    Rep::new(q.clone(), dims, maps)
}

/// Random representation at a given dimension vector, entries uniform in
/// `[-bound, bound]`.
pub fn random_rep<R: Rng>(q: &Quiver, dims: &DimVector, bound: u64, rng: &mut R) -> Result<Rep> {
    if dims.len() != q.vertex_count() {
        return Err(Error::Input("dimension vector length mismatch".into()));
    }
    if !dims.is_nonnegative() {
        return Err(Error::Input("dimension vector must be non-negative".into()));
    }
    let maps = q
        .arrows0()
        .map(|(u, w)| random_matrix(dims.get(u) as usize, dims.get(w) as usize, bound, rng))
        .collect();
    Rep::new(q.clone(), dims.clone(), maps)
}

/// A basis of the space of morphisms `X -> Y`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    /// For each basis morphism: one matrix per vertex.
    pub basis: Vec<Vec<RatMatrix>>,
    source_dims: DimVector,
    target_dims: DimVector,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn source_dims(&self) -> &DimVector {
        &self.source_dims
    }

    pub fn target_dims(&self) -> &DimVector {
        &self.target_dims
    }

    /// Flatten a morphism (vertex matrices) into a coordinate row.
    pub fn flatten(phi: &[RatMatrix]) -> Vec<Rat> {
        phi.iter()
            .flat_map(|m| m.entries().iter().cloned())
            .collect()
    }
}

/// The homogeneous intertwiner system for `Hom(X, Y)`: unknowns are the
/// entries of the vertex matrices, one equation block per arrow.
pub(crate) fn hom_system(x: &Rep, y: &Rep) -> Result<SparseSystem> {
    if x.quiver() != y.quiver() {
        return Err(Error::Input("hom between different quivers".into()));
    }
    let n = x.quiver().vertex_count();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + x.dim_at(v) * y.dim_at(v);
    }
    let mut sys = SparseSystem::new(offset[n]);
    for (ai, (u, w)) in x.quiver().arrows0().enumerate() {
        let fx = x.map(ai);
        let fy = y.map(ai);
        let (du, dw) = (x.dim_at(u), x.dim_at(w));
        let (eu, ew) = (y.dim_at(u), y.dim_at(w));
        // Equation (i, j): sum_s fx[i,s] phi_w[s,j] - sum_t phi_u[i,t] fy[t,j] = 0
        for i in 0..du {
            for j in 0..ew {
                let mut eq: Vec<(usize, Rat)> = Vec::with_capacity(dw + eu);
                for s in 0..dw {
                    let c = fx.at(i, s);
                    if !c.is_zero() {
                        eq.push((offset[w] + s * ew + j, c.clone()));
                    }
                }
                for t in 0..eu {
                    let c = fy.at(t, j);
                    if !c.is_zero() {
                        eq.push((offset[u] + i * eu + t, -c));
                    }
                }
                if !eq.is_empty() {
                    sys.push_equation(eq);
                }
            }
        }
    }
    Ok(sys)
}

fn unflatten(x: &Rep, y: &Rep, flat: &[Rat]) -> Vec<RatMatrix> {
    let n = x.quiver().vertex_count();
    let mut out = Vec::with_capacity(n);
    let mut pos = 0;
    for v in 0..n {
        let (d, e) = (x.dim_at(v), y.dim_at(v));
        let entries = flat[pos..pos + d * e].to_vec();
        pos += d * e;
        out.push(RatMatrix::new(d, e, entries).expect("unflatten shape"));
    }
    out
}

/// Basis of all morphisms `X -> Y`, computed as the solution space of the
/// intertwiner system.
pub fn hom_space(x: &Rep, y: &Rep) -> Result<HomSpace> {
    let sys = hom_system(x, y)?;
    let basis_flat = sys.solution_basis();
    let basis: Vec<Vec<RatMatrix>> = basis_flat.iter().map(|f| unflatten(x, y, f)).collect();
    debug_assert!(basis.iter().all(|phi| morphism_ok(x, y, phi)));
    Ok(HomSpace {
        basis,
        source_dims: x.dims().clone(),
        target_dims: y.dims().clone(),
    })
}

/// `dim Hom(X, Y)` without materializing a basis (still exact).
pub fn hom_dim(x: &Rep, y: &Rep) -> Result<usize> {
    let sys = hom_system(x, y)?;
    // The self-Hom of a nonzero representation contains the identity.
    let lower = if x == y && !x.is_zero() { 1 } else { 0 };
    Ok(sys.dim_exact_with_lower(lower))
}

/// Certified check that `dim End(X) == 1` (a modular upper bound of 1 meets
/// the identity lower bound). `Some(false)` may be conservative for
/// non-generic samples, which only costs a retry.
pub(crate) fn end_dim_is_one(x: &Rep) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let sys = hom_system(x, x)?;
    for idx in 0..2 {
        match sys.dim_upper_bound(idx) {
            Some(1) => return Ok(true),
            Some(_) => return Ok(false),
            None => continue,
        }
    }
    Ok(sys.dim_exact_with_lower(1) == 1)
}

/// Do the vertex matrices define a morphism `X -> Y`?
pub fn morphism_ok(x: &Rep, y: &Rep, phi: &[RatMatrix]) -> bool {
    x.quiver().arrows0().enumerate().all(|(ai, (u, w))| {
        let lhs = x.map(ai).mul(&phi[w]).expect("shapes agree");
        let rhs = phi[u].mul(y.map(ai)).expect("shapes agree");
        lhs == rhs
    })
}

/// Compose two morphisms vertexwise (`f` then `g`).
pub fn compose(f: &[RatMatrix], g: &[RatMatrix]) -> Vec<RatMatrix> {
    f.iter()
        .zip(g.iter())
        .map(|(a, b)| a.mul(b).expect("composable vertex matrices"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::euler_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kronecker_projectives_and_injectives() {
        let q = Quiver::kronecker(3);
        let p0 = projective(&q, 1).unwrap();
        assert_eq!(p0.dims(), &DimVector(vec![1, 0]));
        let p1 = projective(&q, 2).unwrap();
        assert_eq!(p1.dims(), &DimVector(vec![3, 1]));
        let i0 = injective(&q, 2).unwrap();
        assert_eq!(i0.dims(), &DimVector(vec![0, 1]));
        let i1 = injective(&q, 1).unwrap();
        assert_eq!(i1.dims(), &DimVector(vec![1, 3]));
    }

    #[test]
    fn hom_dims_on_kronecker() {
        let q = Quiver::kronecker(3);
        let p0 = projective(&q, 1).unwrap();
        let p1 = projective(&q, 2).unwrap();
        assert_eq!(hom_dim(&p0, &p0).unwrap(), 1);
        assert_eq!(hom_dim(&p0, &p1).unwrap(), 3);
        assert_eq!(hom_dim(&p1, &p0).unwrap(), 0);
        // Hom out of a projective is evaluation at the vertex.
        let i1 = injective(&q, 1).unwrap();
        assert_eq!(hom_dim(&p0, &i1).unwrap(), 1);
        assert_eq!(hom_dim(&p1, &i1).unwrap(), 3);
    }

    #[test]
    fn hom_basis_satisfies_relations() {
        let q = Quiver::kronecker(2);
        let p1 = projective(&q, 2).unwrap();
        let h = hom_space(&p1, &p1).unwrap();
        assert_eq!(h.dim(), 1);
        for phi in &h.basis {
            assert!(morphism_ok(&p1, &p1, phi));
        }
    }

    #[test]
    fn hom_is_additive_over_sums() {
        let q = Quiver::kronecker(3);
        let p0 = projective(&q, 1).unwrap();
        let p1 = projective(&q, 2).unwrap();
        let s = Rep::direct_sum(&[&p0, &p1]).unwrap();
        assert_eq!(
            hom_dim(&s, &p1).unwrap(),
            hom_dim(&p0, &p1).unwrap() + hom_dim(&p1, &p1).unwrap()
        );
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        // Hom(P(v), M) has dimension dims(M)[v]; ext out of a projective
        // vanishes, so this also equals the Euler form.
        let q = Quiver::kronecker(3);
        let p1 = projective(&q, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_rep(&q, &DimVector(vec![4, 2]), 6, &mut rng).unwrap();
        assert_eq!(hom_dim(&p1, &m).unwrap(), 2);
        assert_eq!(
            hom_dim(&p1, &m).unwrap() as i64,
            euler_form(&q, p1.dims(), m.dims()).unwrap()
        );
    }

    #[test]
    fn serde_round_trip() {
        let q = Quiver::kronecker(2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = random_rep(&q, &DimVector(vec![2, 3]), 7, &mut rng).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: Rep = serde_json::from_str(&json).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn dual_reverses_arrows() {
        let q = Quiver::linear(2);
        let p1 = projective(&q, 1).unwrap(); // dims (1,1)
        let d = p1.dual();
        assert_eq!(d.dims(), &DimVector(vec![1, 1]));
        let arrows: Vec<(usize, usize)> = d.quiver().arrows0().collect();
        assert_eq!(arrows, vec![(1, 0)]);
    }
}
