//! Quivers, dimension vectors, the Euler and Tits forms, Weyl-group
//! reflections, bounded enumeration of positive real roots, and the
//! two-vertex recurrence sequences.
//!
//! Conventions. Vertices are numbered `1..=n` externally and `0..n`
//! internally. Dimension vectors are rows acted on from the right, so a
//! reflection is `d -> d * s_i`. The Euler form of an acyclic quiver is
//! `⟨d,e⟩ = Σ_v d_v e_v − Σ_{a:u→w} d_u e_w`; the Tits form is its diagonal.
//! Reflections use the symmetrized form `(d,e) = ⟨d,e⟩ + ⟨e,d⟩`, which only
//! depends on the underlying graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite quiver: vertex count plus a multiset of arrows.
/// Fields are declared alphabetically so serialized keys come out sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Quiver {
    /// Arrows as `[source, target]` pairs, 1-indexed.
    arrows: Vec<[usize; 2]>,
    vertices: usize,
}

impl<'de> serde::Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            arrows: Vec<[usize; 2]>,
            vertices: usize,
        }
        let w = Wire::deserialize(d)?;
        Quiver::new(w.vertices, w.arrows).map_err(serde::de::Error::custom)
    }
}

impl Quiver {
    /// Build a quiver, validating vertex ranges and acyclicity.
    pub fn new(vertices: usize, arrows: Vec<[usize; 2]>) -> Result<Self> {
        for &[u, v] in &arrows {
            if u == 0 || v == 0 || u > vertices || v > vertices {
                return Err(Error::Input(format!(
                    "arrow [{u}, {v}] out of range for {vertices} vertices"
                )));
            }
        }
        let q = Quiver { vertices, arrows };
        if q.topological_order().is_none() {
            return Err(Error::Input("quiver has an oriented cycle".into()));
        }
        Ok(q)
    }

    /// The Kronecker quiver of degree `m`: two vertices, `m` arrows `2 -> 1`,
    /// so that vertex 1 carries the simple projective.
    pub fn kronecker(m: usize) -> Quiver {
        Quiver::new(2, vec![[2, 1]; m]).expect("kronecker quiver is acyclic")
    }

    /// Linear quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Quiver {
        Quiver::new(n, (1..n).map(|i| [i, i + 1]).collect()).expect("linear quiver is acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Arrows as 0-indexed `(source, target)` pairs.
    pub fn arrows0(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().map(|&[u, v]| (u - 1, v - 1))
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Some topological order of the vertices (sources first), or `None` if
    /// the quiver has an oriented cycle. 0-indexed.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices;
        let mut indeg = vec![0usize; n];
        for &[_, v] in &self.arrows {
            indeg[v - 1] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        queue.sort();
        let mut order = Vec::with_capacity(n);
        let mut i = 0;
        while i < queue.len() {
            let v = queue[i];
            i += 1;
            order.push(v);
            for &[a, b] in &self.arrows {
                if a - 1 == v {
                    indeg[b - 1] -= 1;
                    if indeg[b - 1] == 0 {
                        queue.push(b - 1);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertices {
            return Err(Error::Input(format!(
                "dimension vector has length {}, quiver has {} vertices",
                d.len(),
                self.vertices
            )));
        }
        Ok(())
    }
}

/// Integer vector indexed by the vertices of an ambient quiver.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The i-th simple root (1-indexed vertex).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn get(&self, v0: usize) -> i64 {
        self.0[v0]
    }

    pub fn scaled(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|x| k * x).collect())
    }

    pub fn plus(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Euler form `⟨d,e⟩`.
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    q.check_dim(d)?;
    q.check_dim(e)?;
    let mut val: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
    for (u, w) in q.arrows0() {
        val -= d.0[u] * e.0[w];
    }
    Ok(val)
}

/// Tits form `q(d) = ⟨d,d⟩`.
pub fn tits_form(q: &Quiver, d: &DimVector) -> Result<i64> {
    euler_form(q, d, d)
}

/// Symmetrized form `(d,e) = ⟨d,e⟩ + ⟨e,d⟩`.
pub fn symmetric_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    Ok(euler_form(q, d, e)? + euler_form(q, e, d)?)
}

/// Simple reflection at vertex `i` (1-indexed): `s_i(d) = d − (d, α_i) α_i`.
pub fn simple_reflection(q: &Quiver, i: usize, d: &DimVector) -> Result<DimVector> {
    q.check_dim(d)?;
    if i == 0 || i > q.vertex_count() {
        return Err(Error::Input(format!("vertex {i} out of range")));
    }
    let alpha = DimVector::simple(q.vertex_count(), i);
    let c = symmetric_form(q, d, &alpha)?;
    let mut out = d.clone();
    out.0[i - 1] -= c;
    Ok(out)
}

/// All positive real roots with every entry in `[0, bound]`, enumerated by
/// breadth-first closure of the simple roots under the reflections. The
/// walk prunes at twice the bound; in rank two no in-range root is reachable
/// only through out-of-range vectors, and for larger quivers the slack
/// absorbs one overshooting reflection step.
pub fn positive_real_roots(q: &Quiver, bound: u64) -> Result<Vec<DimVector>> {
    if bound == 0 {
        return Err(Error::Input("bound must be at least 1".into()));
    }
    let n = q.vertex_count();
    let slack = 2 * bound as i64;
    let mut seen: BTreeSet<DimVector> = BTreeSet::new();
    let mut frontier: Vec<DimVector> = (1..=n).map(|i| DimVector::simple(n, i)).collect();
    for d in &frontier {
        seen.insert(d.clone());
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for d in &frontier {
            for i in 1..=n {
                let r = simple_reflection(q, i, d)?;
                if r.max_abs() <= slack && !seen.contains(&r) {
                    seen.insert(r.clone());
                    next.push(r);
                }
            }
        }
        frontier = next;
    }
    let out: Vec<DimVector> = seen
        .into_iter()
        .filter(|d| d.is_nonnegative() && d.max_abs() <= bound as i64 && !d.is_zero())
        .collect();
    for d in &out {
        debug_assert_eq!(tits_form(q, d)?, 1);
    }
    Ok(out)
}

/// Preprojective / preinjective dimension sequences of the degree-`m`
/// two-vertex quiver: both satisfy `u_{i+1} = m u_i − u_{i−1}` with seeds
/// `P_0 = (1,0)`, `P_1 = (m,1)` and `I_0 = (0,1)`, `I_1 = (1,m)`.
pub fn kronecker_sequences(m: u64, count: usize) -> Result<(Vec<DimVector>, Vec<DimVector>)> {
    if m == 0 {
        return Err(Error::Input("m must be at least 1".into()));
    }
    if count < 2 {
        return Err(Error::Input("count must be at least 2".into()));
    }
    let m = m as i64;
    let extend = |a: DimVector, b: DimVector| -> Result<Vec<DimVector>> {
        let mut seq = vec![a, b];
        while seq.len() < count {
            let last = &seq[seq.len() - 1];
            let prev = &seq[seq.len() - 2];
            let mut entries = Vec::with_capacity(last.len());
            for (x, y) in last.0.iter().zip(&prev.0) {
                let v = x
                    .checked_mul(m)
                    .and_then(|t| t.checked_sub(*y))
                    .ok_or_else(|| Error::TooLarge("recurrence overflow".into()))?;
                entries.push(v);
            }
            seq.push(DimVector(entries));
        }
        Ok(seq)
    };
    let p = extend(DimVector(vec![1, 0]), DimVector(vec![m, 1]))?;
    let i = extend(DimVector(vec![0, 1]), DimVector(vec![1, m]))?;
    Ok((p, i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterDirection {
    /// Dimension-vector action of the translate on non-projectives.
    Forward,
    /// Inverse action, defined on non-injectives.
    Inverse,
}

/// Coxeter transform of `d`: the composite of all simple reflections taken
/// in a sink-to-source order. Forward composed with inverse is the identity.
pub fn coxeter_transform(q: &Quiver, d: &DimVector, dir: CoxeterDirection) -> Result<DimVector> {
    q.check_dim(d)?;
    let topo = q
        .topological_order()
        .ok_or_else(|| Error::Input("quiver must be acyclic".into()))?;
    let mut out = d.clone();
    match dir {
        CoxeterDirection::Forward => {
            // Reflect at sinks first.
            for &v in topo.iter().rev() {
                out = simple_reflection(q, v + 1, &out)?;
            }
        }
        CoxeterDirection::Inverse => {
            for &v in topo.iter() {
                out = simple_reflection(q, v + 1, &out)?;
            }
        }
    }
    Ok(out)
}

/// The closed Weyl-word forms of the two-vertex root sequences:
/// `P_{2i} = (1,0)(s_2 s_1)^i`, `P_{2i+1} = (0,1)(s_1 s_2)^i s_1`,
/// `I_{2i} = (0,1)(s_1 s_2)^i`, `I_{2i+1} = (1,0)(s_2 s_1)^i s_2`.
pub fn kronecker_weyl_word(m: u64, preinjective: bool, index: usize) -> Result<DimVector> {
    let q = Quiver::kronecker(m as usize);
    let i = index / 2;
    let odd = index % 2 == 1;
    let (mut d, first, second) = if preinjective == odd {
        // P even: (1,0)(s2 s1)^i ; I odd: (1,0)(s2 s1)^i s2
        (DimVector(vec![1, 0]), 2usize, 1usize)
    } else {
        (DimVector(vec![0, 1]), 1usize, 2usize)
    };
    for _ in 0..i {
        d = simple_reflection(&q, first, &d)?;
        d = simple_reflection(&q, second, &d)?;
    }
    if odd {
        d = simple_reflection(&q, first, &d)?;
    }
    Ok(d)
}
