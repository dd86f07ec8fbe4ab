//! σ-systems: a root system with an involutive isometry preserving it.
//! Normality, Δ₀, σ-fundamental systems, Satake diagrams and their
//! reconstruction, restricted roots, and isomorphism of Satake diagrams.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Vector};
use crate::rootsys::{CartanType, FundamentalSystem, OrthoMap, RootAut, RootSystem, Series};
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct SigmaSystem {
    rs: Arc<RootSystem>,
    sigma: RootAut,
    perm: Vec<usize>,
}

impl fmt::Debug for SigmaSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaSystem({}, {:?})", self.rs.ctype, self.sigma)
    }
}

/// Validate an ambient map as a σ. Checks run in order: isometry on the span
/// of the roots, root preservation, involutivity.
pub fn make_sigma(rs: Arc<RootSystem>, sigma: &OrthoMap) -> Result<SigmaSystem> {
    let d = rs.ambient_dim;
    if sigma.0.rows() != d || sigma.0.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: sigma.0.rows() });
    }
    let l = rs.rank();
    let imgs: Vec<Vector> = (0..l).map(|k| sigma.apply(rs.simple_root(k))).collect();
    for i in 0..l {
        for j in 0..l {
            if imgs[i].dot(&imgs[j]) != rs.simple_gram()[(i, j)] {
                return Err(Error::NotIsometry);
            }
        }
    }
    let a = rs.root_aut(sigma)?;
    SigmaSystem::new(rs, a)
}

impl SigmaSystem {
    pub fn new(rs: Arc<RootSystem>, sigma: RootAut) -> Result<SigmaSystem> {
        if sigma.dim() != rs.rank() {
            return Err(Error::DimensionMismatch { expected: rs.rank(), got: sigma.dim() });
        }
        if !rs.is_isometry(&sigma) {
            return Err(Error::NotIsometry);
        }
        let perm = rs.root_permutation(&sigma).ok_or(Error::NotRootPreserving)?;
        if !sigma.compose(&sigma).is_identity() {
            return Err(Error::NotInvolution);
        }
        Ok(SigmaSystem { rs, sigma, perm })
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn sigma(&self) -> &RootAut {
        &self.sigma
    }

    /// Ambient form, the identity off the span of the roots.
    pub fn ambient(&self) -> OrthoMap {
        self.rs.ortho(&self.sigma)
    }

    /// `sigma` applied to root index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// Roots with `sigma(alpha) = -alpha`.
    pub fn delta0(&self) -> Vec<usize> {
        (0..self.rs.num_roots()).filter(|&i| self.perm[i] == self.rs.negative(i)).collect()
    }

    /// `dim t^sigma`.
    pub fn rank(&self) -> usize {
        self.fixed_basis().len()
    }

    /// Basis of `t^sigma` in simple-root coordinates.
    pub fn fixed_basis(&self) -> Vec<Vector> {
        eigenbasis(&self.sigma, 1)
    }

    /// Basis of `t^{-sigma}` in simple-root coordinates.
    pub fn anti_basis(&self) -> Vec<Vector> {
        eigenbasis(&self.sigma, -1)
    }

    /// A root `alpha` with `sigma(alpha) - alpha` a root, if any.
    pub fn normality_witness(&self) -> Option<usize> {
        let l = self.rs.rank();
        (0..self.rs.num_roots()).find(|&i| {
            let a = self.rs.coords(i);
            let s = self.rs.coords(self.perm[i]);
            let d: Vec<i64> = (0..l).map(|k| s[k] - a[k]).collect();
            self.rs.root_index_of_coords(&d).is_some()
        })
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    fn require_normal(&self) -> Result<()> {
        match self.normality_witness() {
            Some(witness) => Err(Error::NotNormal { witness }),
            None => Ok(()),
        }
    }

    /// Whether `fs` is a fundamental system whose positive roots outside Δ₀
    /// stay positive under sigma.
    pub fn is_sigma_fundamental(&self, fs: &FundamentalSystem) -> bool {
        let Some(bc) = self.rs.basis_coords(&fs.0) else {
            return false;
        };
        let positive = |i: usize| bc[i].iter().any(|&x| x > 0);
        (0..self.rs.num_roots())
            .filter(|&i| positive(i) && self.perm[i] != self.rs.negative(i))
            .all(|i| positive(self.perm[i]))
    }

    /// A σ-fundamental system from the lexicographic order on `t` whose
    /// leading block is a basis of `t^sigma`, followed by one of
    /// `t^{-sigma}`. Returned in standard label order.
    pub fn find_sigma_fundamental(&self) -> Result<FundamentalSystem> {
        self.require_normal()?;
        let l = self.rs.rank();
        let g = self.rs.simple_gram();
        let mut basis = self.fixed_basis();
        basis.extend(self.anti_basis());
        // Functionals alpha -> <u, alpha> as rows in simple-root coordinates.
        let rows: Vec<Vec<Scalar>> =
            basis.iter().map(|u| (0..l).map(|j| (0..l).map(|i| u[i] * g[(i, j)]).sum()).collect()).collect();
        let positive: Vec<usize> = (0..self.rs.num_roots())
            .filter(|&i| {
                let c = self.rs.coords(i);
                rows.iter()
                    .map(|r| (0..l).map(|j| r[j] * Scalar::int(c[j])).sum::<Scalar>())
                    .find(|x| !x.is_zero())
                    .is_some_and(|x| x.is_positive())
            })
            .collect();
        let fs = self.rs.standardize(&self.rs.indecomposables(&positive))?;
        debug_assert!(self.is_sigma_fundamental(&fs));
        Ok(fs)
    }

    /// The Satake diagram of sigma with respect to a σ-fundamental system.
    /// Nodes are labelled by the standard Dynkin labels of `fs`.
    pub fn satake_diagram(&self, fs: &FundamentalSystem) -> Result<SatakeDiagram> {
        if !self.is_sigma_fundamental(fs) {
            return Err(Error::NotSigmaFundamental);
        }
        let fs = self.rs.standardize(&fs.0)?;
        let l = self.rs.rank();
        let bc = self.rs.basis_coords(&fs.0).expect("fundamental");
        let black: Vec<usize> = (0..l).filter(|&k| self.perm[fs.0[k]] == self.rs.negative(fs.0[k])).collect();
        let is_black = |k: usize| black.contains(&k);
        let mut p = vec![usize::MAX; l];
        for k in (0..l).filter(|&k| !is_black(k)) {
            let img = &bc[self.perm[fs.0[k]]];
            let whites: Vec<(usize, i64)> =
                (0..l).filter(|&j| !is_black(j) && img[j] != 0).map(|j| (j, img[j])).collect();
            match whites.as_slice() {
                [(j, 1)] => p[k] = *j,
                _ => return Err(Error::AmbiguousArrow { node: k }),
            }
        }
        let mut arrows = Vec::new();
        for k in (0..l).filter(|&k| !is_black(k)) {
            let j = p[k];
            if is_black(j) || p[j] != k {
                return Err(Error::AmbiguousArrow { node: k });
            }
            if k < j {
                arrows.push((k, j));
            }
        }
        SatakeDiagram::new(self.rs.ctype, black, arrows)
    }

    /// Restricted roots `pr(alpha) = (alpha + sigma alpha)/2` for alpha outside
    /// Δ₀, with multiplicities and a type label.
    pub fn restricted_roots(&self) -> Result<RestrictedRootSystem> {
        self.require_normal()?;
        let l = self.rs.rank();
        let mut counts: BTreeMap<Vec<Scalar>, usize> = BTreeMap::new();
        for i in 0..self.rs.num_roots() {
            if self.perm[i] == self.rs.negative(i) {
                continue;
            }
            let a = self.rs.coords(i);
            let s = self.rs.coords(self.perm[i]);
            let c: Vec<Scalar> = (0..l).map(|k| Scalar::new(a[k] + s[k], 2)).collect();
            *counts.entry(c).or_default() += 1;
        }
        let roots: Vec<RestrictedRoot> = counts
            .into_iter()
            .map(|(coords, multiplicity)| RestrictedRoot { vector: self.rs.from_coords(&coords), coords, multiplicity })
            .collect();
        let vectors: Vec<Vector> = roots.iter().map(|r| r.vector.clone()).collect();
        if !root_axioms_hold(&vectors) {
            return Err(Error::Inadmissible("restricted roots violate the root-system axioms".into()));
        }
        let (label, rank) = classify_root_set(&vectors);
        Ok(RestrictedRootSystem { roots, label, rank })
    }
}

/// Basis of `{x : a x = eps x}` in simple-root coordinates.
fn eigenbasis(a: &RootAut, eps: i64) -> Vec<Vector> {
    let n = a.dim();
    QMatrix::from_fn(n, n, |i, j| Scalar::int(a.get(i, j) - if i == j { eps } else { 0 })).nullspace()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRoot {
    pub vector: Vector,
    /// Simple-root coordinates of `vector`.
    pub coords: Vec<Scalar>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRootSystem {
    pub roots: Vec<RestrictedRoot>,
    /// Type label such as `B3`, `BC2` or `A1+A1`; `0` when empty.
    pub label: String,
    pub rank: usize,
}

impl RestrictedRootSystem {
    pub fn multiplicity(&self, v: &Vector) -> Option<usize> {
        self.roots.iter().find(|r| &r.vector == v).map(|r| r.multiplicity)
    }
}

/// Reflection closure and integrality of Cartan integers on a finite set.
pub fn root_axioms_hold(vs: &[Vector]) -> bool {
    let set: std::collections::HashSet<&Vector> = vs.iter().collect();
    vs.iter().all(|l| {
        let ll = l.dot(l);
        !ll.is_zero()
            && vs.iter().all(|m| {
                let n = Scalar::int(2) * l.dot(m) / ll;
                n.is_integer() && set.contains(&m.sub(&l.scale(n)))
            })
    })
}

/// Type label and rank of a (possibly non-reduced) root system given by its
/// vectors.
pub fn classify_root_set(vs: &[Vector]) -> (String, usize) {
    if vs.is_empty() {
        return ("0".into(), 0);
    }
    let n = vs.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if !vs[i].dot(&vs[j]).is_zero() {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<&Vector>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(&vs[i]);
    }
    let mut labels = Vec::new();
    let mut total = 0;
    for g in groups.values() {
        let d = g[0].len();
        let r = QMatrix::from_fn(g.len(), d, |i, j| g[i][j]).rank();
        total += r;
        labels.push(component_label(g, r));
    }
    labels.sort_by(|a, b| b.cmp(a));
    (labels.join("+"), total)
}

fn component_label(g: &[&Vector], r: usize) -> String {
    let set: std::collections::HashSet<&Vector> = g.iter().copied().collect();
    if g.iter().any(|v| set.contains(&v.scale(Scalar::int(2)))) {
        return format!("BC{r}");
    }
    let count = g.len();
    let mut norms: Vec<Scalar> = g.iter().map(|v| v.dot(v)).collect();
    norms.sort();
    norms.dedup();
    if norms.len() == 1 {
        if count == r * (r + 1) {
            return format!("A{r}");
        }
        if count == 2 * r * (r - 1) {
            return format!("D{r}");
        }
        if r >= 6 && count == [72, 126, 240][(r - 6).min(2)] {
            return format!("E{r}");
        }
    } else {
        let long = norms[norms.len() - 1];
        let n_long = g.iter().filter(|v| v.dot(v) == long).count();
        if r == 2 && count == 12 {
            return "G2".into();
        }
        if r == 4 && count == 48 {
            return "F4".into();
        }
        if count == 2 * r * r {
            return if r == 2 || n_long == 2 * r * (r - 1) { format!("B{r}") } else { format!("C{r}") };
        }
    }
    format!("?{r}")
}

/// Dynkin diagram with black nodes and an arrow involution on white nodes.
/// Nodes are 0-based standard labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SatakeDiagram {
    pub ctype: CartanType,
    /// Sorted.
    pub black: Vec<usize>,
    /// Sorted pairs `(a, b)` with `a < b`.
    pub arrows: Vec<(usize, usize)>,
}

impl SatakeDiagram {
    /// Normalizes ordering and checks structural validity: indices in range,
    /// arrows between distinct white nodes, each node in at most one arrow.
    pub fn new(ctype: CartanType, mut black: Vec<usize>, arrows: Vec<(usize, usize)>) -> Result<SatakeDiagram> {
        let l = ctype.rank;
        black.sort_unstable();
        black.dedup();
        let mut arrows: Vec<(usize, usize)> = arrows.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        arrows.sort_unstable();
        let mut used = vec![false; l];
        if black.iter().any(|&b| b >= l) {
            return Err(Error::MalformedDiagram("black node out of range".into()));
        }
        for &b in &black {
            used[b] = true;
        }
        for &(a, b) in &arrows {
            if b >= l || a == b {
                return Err(Error::MalformedDiagram(format!("bad arrow ({a}, {b})")));
            }
            if used[a] || used[b] {
                return Err(Error::MalformedDiagram(format!("arrow ({a}, {b}) touches a black or repeated node")));
            }
            used[a] = true;
            used[b] = true;
        }
        Ok(SatakeDiagram { ctype, black, arrows })
    }

    pub fn is_black(&self, k: usize) -> bool {
        self.black.binary_search(&k).is_ok()
    }

    /// Arrow involution, extended by the identity to black nodes.
    pub fn p(&self, k: usize) -> usize {
        for &(a, b) in &self.arrows {
            if a == k {
                return b;
            }
            if b == k {
                return a;
            }
        }
        k
    }

    /// `l1 + l2`: white nodes fixed by p plus arrow pairs.
    pub fn sigma_rank(&self) -> usize {
        self.ctype.rank - self.black.len() - self.arrows.len()
    }

    /// `psi . S` for a node permutation `psi` (node `k` goes to `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> SatakeDiagram {
        SatakeDiagram::new(
            self.ctype,
            self.black.iter().map(|&b| perm[b]).collect(),
            self.arrows.iter().map(|&(a, b)| (perm[a], perm[b])).collect(),
        )
        .expect("permuting a valid diagram keeps it valid")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Debug for SatakeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Satake({}, black={:?}, arrows={:?})", self.ctype, self.black, self.arrows)
    }
}

#[derive(Serialize, Deserialize)]
struct SatakeJson {
    #[serde(rename = "type")]
    series: Series,
    rank: usize,
    black: Vec<usize>,
    arrows: Vec<[usize; 2]>,
}

impl Serialize for SatakeDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SatakeJson {
            series: self.ctype.series,
            rank: self.ctype.rank,
            black: self.black.clone(),
            arrows: self.arrows.iter().map(|&(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SatakeDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<SatakeDiagram, D::Error> {
        let j = SatakeJson::deserialize(d)?;
        let ct = CartanType::new(j.series, j.rank).map_err(serde::de::Error::custom)?;
        SatakeDiagram::new(ct, j.black, j.arrows.into_iter().map(|[a, b]| (a, b)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Rebuild sigma from a diagram on the standard fundamental system:
/// `t^{-sigma}` is spanned by the black roots and `alpha - p(alpha)` over
/// arrows, and sigma is the orthogonal reflection through it. The diagram is
/// rejected unless the result is a normal σ-system whose diagram is `sd`.
pub fn reconstruct_sigma(sd: &SatakeDiagram) -> Result<SigmaSystem> {
    let rs = RootSystem::shared(sd.ctype);
    let l = rs.rank();
    let mut cols: Vec<Vector> = sd.black.iter().map(|&k| Vector::unit(l, k)).collect();
    cols.extend(sd.arrows.iter().map(|&(a, b)| Vector::unit(l, a).sub(&Vector::unit(l, b))));
    let sigma_q = if cols.is_empty() {
        QMatrix::identity(l)
    } else {
        let b = QMatrix::from_columns(&cols, l);
        let g = rs.simple_gram();
        let bt_g = b.transpose().mul(g);
        let inner = bt_g.mul(&b).inverse().expect("Gram matrix of independent vectors");
        QMatrix::identity(l).sub(&b.mul(&inner).mul(&bt_g).scale(Scalar::int(2)))
    };
    let mut rows = vec![vec![0i64; l]; l];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = sigma_q[(i, j)]
                .to_integer()
                .ok_or_else(|| Error::Inadmissible("reconstructed map is not integral on the root lattice".into()))?;
        }
    }
    let a = RootAut::from_rows(&rows)
        .map_err(|_| Error::Inadmissible("reconstructed map does not preserve the roots".into()))?;
    let ss =
        SigmaSystem::new(rs.clone(), a).map_err(|e| Error::Inadmissible(format!("reconstructed map rejected: {e}")))?;
    if let Some(w) = ss.normality_witness() {
        return Err(Error::Inadmissible(format!("reconstructed sigma is not normal (witness root {w})")));
    }
    let std = rs.simple();
    if !ss.is_sigma_fundamental(&std) {
        return Err(Error::Inadmissible("standard fundamental system is not sigma-fundamental".into()));
    }
    let back = ss.satake_diagram(&std).map_err(|e| Error::Inadmissible(format!("diagram extraction failed: {e}")))?;
    if &back != sd {
        return Err(Error::Inadmissible(format!("diagram does not round-trip: got {back:?}")));
    }
    Ok(ss)
}

/// Backtracking search for a node bijection `i -> t` between two diagrams of
/// equal size, subject to a per-node filter and a per-pair filter. Pairs are
/// checked as soon as both ends are assigned.
pub(crate) fn find_node_bijection(
    n: usize,
    node_ok: &dyn Fn(usize, usize) -> bool,
    pair_ok: &dyn Fn(usize, usize, usize, usize) -> bool,
) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        n: usize,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        node_ok: &dyn Fn(usize, usize) -> bool,
        pair_ok: &dyn Fn(usize, usize, usize, usize) -> bool,
    ) -> bool {
        if i == n {
            return true;
        }
        for t in 0..n {
            if used[t] || !node_ok(i, t) || !pair_ok(i, i, t, t) {
                continue;
            }
            if (0..i).all(|j| pair_ok(i, j, t, img[j]) && pair_ok(j, i, img[j], t)) {
                img[i] = t;
                used[t] = true;
                if go(i + 1, n, img, used, node_ok, pair_ok) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    go(0, n, &mut img, &mut used, node_ok, pair_ok).then_some(img)
}

/// Conditions shared by single and double diagram isomorphism: Cartan
/// entries, black sets and arrow involutions must correspond.
#[allow(clippy::type_complexity)]
pub(crate) fn diagram_constraints<'a>(
    c1: &'a [Vec<i64>],
    c2: &'a [Vec<i64>],
    pairs: &'a [(&'a SatakeDiagram, &'a SatakeDiagram)],
) -> (impl Fn(usize, usize) -> bool + 'a, impl Fn(usize, usize, usize, usize) -> bool + 'a) {
    let node_ok = move |i: usize, t: usize| {
        c1[i][i] == c2[t][t]
            && pairs.iter().all(|(a, b)| a.is_black(i) == b.is_black(t) && (a.p(i) == i) == (b.p(t) == t))
    };
    let pair_ok = move |i: usize, j: usize, ti: usize, tj: usize| {
        c1[i][j] == c2[ti][tj] && pairs.iter().all(|(a, b)| a.p(i) != j || b.p(ti) == tj)
    };
    (node_ok, pair_ok)
}

/// An isomorphism of Satake diagrams, possibly across Cartan types with
/// isomorphic Dynkin graphs (A3 and D3, B2 and C2 up to relabelling).
pub fn satake_isomorphic(s1: &SatakeDiagram, s2: &SatakeDiagram) -> Option<Vec<usize>> {
    if s1.ctype.rank != s2.ctype.rank {
        return None;
    }
    let r1 = RootSystem::shared(s1.ctype);
    let r2 = RootSystem::shared(s2.ctype);
    let pairs = [(s1, s2)];
    let (node_ok, pair_ok) = diagram_constraints(r1.cartan(), r2.cartan(), &pairs);
    find_node_bijection(s1.ctype.rank, &node_ok, &pair_ok)
}
