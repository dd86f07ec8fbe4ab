//! Reduced root systems of types A–G in their Bourbaki realizations, with the
//! Weyl-group machinery the rest of the crate needs.
//!
//! Roots are stored twice: as ambient rational vectors and as integer
//! coordinates in the default simple system. Automorphisms of the root system
//! are carried as integer matrices in simple-root coordinates (`RootAut`);
//! `OrthoMap` is the ambient form used at the API boundary.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Vector};
use crate::scalar::Scalar;

/// Largest supported rank.
pub const MAX_RANK: usize = 8;

/// Default cap on Weyl group enumeration; admits E7.
pub const DEFAULT_WEYL_CAP: u64 = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<CartanType> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::InvalidCartanType(format!("{series:?}{rank}")));
        }
        Ok(CartanType { series, rank })
    }

    /// Order of the Weyl group from the classical formulas.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u64 << n) * fact(n),
            Series::D => (1u64 << (n - 1)) * fact(n),
            Series::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Number of roots from the classical formulas.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => [72, 126, 240][n - 6],
            Series::F => 48,
            Series::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl fmt::Debug for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<CartanType> {
        let s = s.trim();
        let bad = || Error::InvalidCartanType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(series, rank)
    }
}

/// Simple roots given as ordered root indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FundamentalSystem(pub Vec<usize>);

/// An ambient linear map, `ambient_dim x ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthoMap(pub QMatrix);

impl OrthoMap {
    pub fn identity(n: usize) -> OrthoMap {
        OrthoMap(QMatrix::identity(n))
    }

    /// Map `e_i -> sign_i * e_{perm[i]}` (0-based).
    pub fn signed_permutation(perm: &[usize], signs: &[i64]) -> OrthoMap {
        let n = perm.len();
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(perm[i], i)] = Scalar::int(signs[i]);
        }
        OrthoMap(m)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.0.mul_vec(v)
    }

    pub fn compose(&self, other: &OrthoMap) -> OrthoMap {
        OrthoMap(self.0.mul(&other.0))
    }
}

/// Automorphism of a root system in simple-root coordinates: column `j`
/// holds the coordinates of the image of `alpha_j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootAut {
    n: u8,
    m: [i8; MAX_RANK * MAX_RANK],
}

impl RootAut {
    pub fn identity(n: usize) -> RootAut {
        let mut a = RootAut { n: n as u8, m: [0; MAX_RANK * MAX_RANK] };
        for i in 0..n {
            a.m[i * MAX_RANK + i] = 1;
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.m[i * MAX_RANK + j] as i64
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: i64) {
        debug_assert!((i8::MIN as i64..=i8::MAX as i64).contains(&v));
        self.m[i * MAX_RANK + j] = v as i8;
    }

    /// From rows of an integer matrix; entries must fit in `i8`.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<RootAut> {
        let n = rows.len();
        if n > MAX_RANK || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: rows.first().map_or(0, |r| r.len()) });
        }
        let mut a = RootAut::identity(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(i8::MIN as i64..=i8::MAX as i64).contains(&v) {
                    return Err(Error::NotRootPreserving);
                }
                a.set(i, j, v);
            }
        }
        Ok(a)
    }

    /// Map sending `alpha_j` to `alpha_{perm[j]}`.
    pub fn from_permutation(perm: &[usize]) -> RootAut {
        let n = perm.len();
        let mut a = RootAut { n: n as u8, m: [0; MAX_RANK * MAX_RANK] };
        for (j, &p) in perm.iter().enumerate() {
            a.set(p, j, 1);
        }
        a
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn qmatrix(&self) -> QMatrix {
        let n = self.dim();
        QMatrix::from_fn(n, n, |i, j| Scalar::int(self.get(i, j)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RootAut) -> RootAut {
        let n = self.dim();
        let mut out = RootAut { n: self.n, m: [0; MAX_RANK * MAX_RANK] };
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for k in 0..n {
                    s += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn apply(&self, c: &[i64]) -> [i64; MAX_RANK] {
        let n = self.dim();
        let mut out = [0i64; MAX_RANK];
        for (i, o) in out.iter_mut().enumerate().take(n) {
            *o = (0..n).map(|j| self.get(i, j) * c[j]).sum();
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == RootAut::identity(self.dim())
    }

    pub fn inverse(&self) -> RootAut {
        let inv = self.qmatrix().inverse().expect("root automorphisms are invertible");
        let n = self.dim();
        let mut out = RootAut::identity(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, inv[(i, j)].to_integer().expect("inverse of a root automorphism is integral"));
            }
        }
        out
    }

    pub fn conjugate_by(&self, g: &RootAut) -> RootAut {
        g.compose(self).compose(&g.inverse())
    }

    /// Smallest `k` in `1..=cap` with `self^k = 1`.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let id = RootAut::identity(self.dim());
        let mut p = *self;
        for k in 1..=cap {
            if p == id {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// `self - 1` as row-major integers.
    pub fn minus_identity(&self) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.get(i, j) - i64::from(i == j);
            }
        }
        out
    }
}

impl fmt::Debug for RootAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootAut{:?}", self.rows())
    }
}

/// A named Dynkin-diagram automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAut {
    pub name: String,
    /// `alpha_j -> alpha_{perm[j]}`.
    pub perm: Vec<usize>,
    pub aut: RootAut,
}

pub struct RootSystem {
    pub ctype: CartanType,
    pub ambient_dim: usize,
    roots: Vec<Vector>,
    coords: Vec<[i64; MAX_RANK]>,
    n_pos: usize,
    simple_gram: QMatrix,
    cartan: Vec<Vec<i64>>,
    coroot: Vec<[i64; MAX_RANK]>,
    by_coords: HashMap<[i64; MAX_RANK], usize>,
    by_vector: HashMap<Vector, usize>,
    complement: Vec<Vector>,
    ext_inv: QMatrix,
    weyl: OnceLock<Arc<Vec<RootAut>>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}, {} roots)", self.ctype, self.roots.len())
    }
}

fn half(x: i64) -> Scalar {
    Scalar::new(x, 2)
}

fn bourbaki_simple_roots(ct: CartanType) -> (usize, Vec<Vector>) {
    let n = ct.rank;
    let e = |dim: usize, i: usize| Vector::unit(dim, i);
    match ct.series {
        Series::A => (n + 1, (0..n).map(|i| e(n + 1, i).sub(&e(n + 1, i + 1))).collect()),
        Series::B | Series::C | Series::D => {
            let mut s: Vec<Vector> = (0..n - 1).map(|i| e(n, i).sub(&e(n, i + 1))).collect();
            s.push(match ct.series {
                Series::B => e(n, n - 1),
                Series::C => e(n, n - 1).scale(Scalar::int(2)),
                _ => e(n, n - 2).add(&e(n, n - 1)),
            });
            (n, s)
        }
        Series::E => {
            let mut a1 = vec![half(-1); 8];
            a1[0] = half(1);
            a1[7] = half(1);
            let mut s = vec![Vector(a1), e(8, 0).add(&e(8, 1))];
            for i in 0..6 {
                s.push(e(8, i + 1).sub(&e(8, i)));
            }
            s.truncate(n);
            (8, s)
        }
        Series::F => (
            4,
            vec![
                e(4, 1).sub(&e(4, 2)),
                e(4, 2).sub(&e(4, 3)),
                e(4, 3),
                Vector(vec![half(1), half(-1), half(-1), half(-1)]),
            ],
        ),
        Series::G => (3, vec![Vector::from_ints(&[1, -1, 0]), Vector::from_ints(&[-2, 1, 1])]),
    }
}

fn height(c: &[i64; MAX_RANK]) -> i64 {
    c.iter().sum()
}

impl RootSystem {
    /// Build the Bourbaki realization of `ctype`.
    pub fn new(ctype: CartanType) -> RootSystem {
        let l = ctype.rank;
        let (ambient_dim, simple) = bourbaki_simple_roots(ctype);
        let simple_gram = QMatrix::from_fn(l, l, |i, j| simple[i].dot(&simple[j]));
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let v = Scalar::int(2) * simple_gram[(i, j)] / simple_gram[(i, i)];
                        v.to_integer().expect("Cartan entries are integers")
                    })
                    .collect()
            })
            .collect();

        // Close the simple roots under simple reflections, in coordinates.
        let mut seen: HashSet<[i64; MAX_RANK]> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            let mut c = [0i64; MAX_RANK];
            c[i] = 1;
            seen.insert(c);
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..l {
                let pairing: i64 = (0..l).map(|j| c[j] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut d = c;
                d[i] -= pairing;
                if seen.insert(d) {
                    queue.push_back(d);
                }
            }
        }
        let mut positive: Vec<[i64; MAX_RANK]> = seen.into_iter().filter(|c| height(c) > 0).collect();
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let n_pos = positive.len();
        let mut coords = positive.clone();
        coords.extend(positive.iter().map(|c| {
            let mut d = *c;
            d.iter_mut().for_each(|x| *x = -*x);
            d
        }));

        let roots: Vec<Vector> = coords
            .iter()
            .map(|c| {
                let mut v = Vector::zeros(ambient_dim);
                for (k, s) in simple.iter().enumerate() {
                    if c[k] != 0 {
                        v = v.add(&s.scale(Scalar::int(c[k])));
                    }
                }
                v
            })
            .collect();

        let coroot: Vec<[i64; MAX_RANK]> = roots
            .iter()
            .map(|b| {
                let bb = b.dot(b);
                let mut out = [0i64; MAX_RANK];
                for (i, o) in out.iter_mut().enumerate().take(l) {
                    *o = (Scalar::int(2) * b.dot(&simple[i]) / bb).to_integer().expect("integral pairing");
                }
                out
            })
            .collect();

        let by_coords = coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let by_vector = roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let simple_rows = QMatrix::from_fn(l, ambient_dim, |i, j| simple[i][j]);
        let complement = simple_rows.nullspace();
        let mut ext_cols = simple.clone();
        ext_cols.extend(complement.iter().cloned());
        let ext = QMatrix::from_columns(&ext_cols, ambient_dim);
        let ext_inv = ext.inverse().expect("simple roots and complement form a basis");

        RootSystem {
            ctype,
            ambient_dim,
            roots,
            coords,
            n_pos,
            simple_gram,
            cartan,
            coroot,
            by_coords,
            by_vector,
            complement,
            ext_inv,
            weyl: OnceLock::new(),
        }
    }

    /// Shared, cached instance.
    pub fn shared(ctype: CartanType) -> Arc<RootSystem> {
        static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rs) = cache.lock().unwrap().get(&ctype) {
            return rs.clone();
        }
        let rs = Arc::new(RootSystem::new(ctype));
        cache.lock().unwrap().entry(ctype).or_insert(rs).clone()
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    /// Simple-root coordinates of root `i` (only the first `rank` entries
    /// are meaningful).
    pub fn coords(&self, i: usize) -> &[i64; MAX_RANK] {
        &self.coords[i]
    }

    pub fn root_index_of_coords(&self, c: &[i64]) -> Option<usize> {
        let mut key = [0i64; MAX_RANK];
        key[..c.len().min(MAX_RANK)].copy_from_slice(&c[..c.len().min(MAX_RANK)]);
        self.by_coords.get(&key).copied()
    }

    pub fn root_index(&self, v: &Vector) -> Option<usize> {
        self.by_vector.get(v).copied()
    }

    pub fn negative(&self, i: usize) -> usize {
        (i + self.n_pos) % (2 * self.n_pos)
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn simple(&self) -> FundamentalSystem {
        FundamentalSystem((0..self.rank()).collect())
    }

    pub fn simple_root(&self, k: usize) -> &Vector {
        &self.roots[k]
    }

    /// Gram matrix of the simple roots.
    pub fn simple_gram(&self) -> &QMatrix {
        &self.simple_gram
    }

    /// `cartan[i][j] = 2<alpha_i, alpha_j> / <alpha_i, alpha_i>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `<alpha_i, beta^vee>` for root `beta`.
    pub fn coroot_pairing(&self, beta: usize, i: usize) -> i64 {
        self.coroot[beta][i]
    }

    /// Ambient Euclidean inner product.
    pub fn inner(&self, a: &Vector, b: &Vector) -> Scalar {
        a.dot(b)
    }

    pub fn highest_root(&self) -> usize {
        self.n_pos - 1
    }

    /// Ambient vector with the given simple-root coordinates.
    pub fn from_coords(&self, c: &[Scalar]) -> Vector {
        let mut v = Vector::zeros(self.ambient_dim);
        for (k, &x) in c.iter().enumerate() {
            if !x.is_zero() {
                v = v.add(&self.roots[k].scale(x));
            }
        }
        v
    }

    /// Simple-root coordinates of an ambient vector in the span of the roots.
    pub fn to_coords(&self, v: &Vector) -> Option<Vec<Scalar>> {
        let x = self.ext_inv.mul_vec(v);
        if x.0[self.rank()..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(x.0[..self.rank()].to_vec())
    }

    /// `w_alpha(v) = v - 2<alpha, v>/<alpha, alpha> alpha`.
    pub fn reflect(&self, alpha: &Vector, v: &Vector) -> Result<Vector> {
        if self.root_index(alpha).is_none() {
            return Err(Error::NotARoot(self.ctype.to_string()));
        }
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.len() });
        }
        let c = Scalar::int(2) * alpha.dot(v) / alpha.dot(alpha);
        Ok(v.sub(&alpha.scale(c)))
    }

    pub fn simple_reflection(&self, i: usize) -> RootAut {
        self.root_reflection(i)
    }

    /// `w_beta` in simple-root coordinates: `1 - b c^T`.
    pub fn root_reflection(&self, beta: usize) -> RootAut {
        let l = self.rank();
        let b = &self.coords[beta];
        let c = &self.coroot[beta];
        let mut a = RootAut::identity(l);
        for k in 0..l {
            for j in 0..l {
                a.set(k, j, i64::from(k == j) - b[k] * c[j]);
            }
        }
        a
    }

    /// Image of root `i` under `a`, as a root index.
    pub fn apply_to_root(&self, a: &RootAut, i: usize) -> Option<usize> {
        let img = a.apply(&self.coords[i]);
        self.by_coords.get(&img).copied()
    }

    /// The permutation of root indices induced by `a`, or `None` when `a`
    /// does not preserve the root system.
    pub fn root_permutation(&self, a: &RootAut) -> Option<Vec<usize>> {
        if a.dim() != self.rank() {
            return None;
        }
        let perm: Option<Vec<usize>> = (0..self.num_roots()).map(|i| self.apply_to_root(a, i)).collect();
        let perm = perm?;
        let mut hit = vec![false; perm.len()];
        for &p in &perm {
            if std::mem::replace(&mut hit[p], true) {
                return None;
            }
        }
        Some(perm)
    }

    pub fn is_isometry(&self, a: &RootAut) -> bool {
        let m = a.qmatrix();
        m.transpose().mul(&self.simple_gram).mul(&m) == self.simple_gram
    }

    /// Ambient form of `a`, acting as the identity on the orthogonal
    /// complement of the span of the roots.
    pub fn ortho(&self, a: &RootAut) -> OrthoMap {
        let l = self.rank();
        let d = self.ambient_dim;
        let mut blk = QMatrix::identity(d);
        for i in 0..l {
            for j in 0..l {
                blk[(i, j)] = Scalar::int(a.get(i, j));
            }
        }
        let mut cols: Vec<Vector> = (0..l).map(|k| self.roots[k].clone()).collect();
        cols.extend(self.complement.iter().cloned());
        let ext = QMatrix::from_columns(&cols, d);
        OrthoMap(ext.mul(&blk).mul(&self.ext_inv))
    }

    /// Simple-root form of an ambient map. Fails unless the map sends every
    /// root to a root.
    pub fn root_aut(&self, phi: &OrthoMap) -> Result<RootAut> {
        let d = self.ambient_dim;
        if phi.0.rows() != d || phi.0.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: phi.0.rows() });
        }
        let l = self.rank();
        let mut rows = vec![vec![0i64; l]; l];
        for j in 0..l {
            let img = phi.apply(&self.roots[j]);
            let idx = self.root_index(&img).ok_or(Error::NotRootPreserving)?;
            for (i, row) in rows.iter_mut().enumerate() {
                row[j] = self.coords[idx][i];
            }
        }
        let a = RootAut::from_rows(&rows)?;
        if self.root_permutation(&a).is_none() {
            return Err(Error::NotRootPreserving);
        }
        Ok(a)
    }

    /// Whether the indexed roots form a fundamental system: `rank` linearly
    /// independent roots through which every root has same-sign integer
    /// coordinates.
    pub fn is_fundamental(&self, fs: &[usize]) -> bool {
        self.basis_coords(fs).is_some()
    }

    /// Coordinates of every root in the basis `fs`, if `fs` is fundamental.
    pub fn basis_coords(&self, fs: &[usize]) -> Option<Vec<Vec<i64>>> {
        let l = self.rank();
        if fs.len() != l || fs.iter().any(|&i| i >= self.num_roots()) {
            return None;
        }
        let s = QMatrix::from_fn(l, l, |i, k| Scalar::int(self.coords[fs[k]][i]));
        let inv = s.inverse()?;
        let mut out = Vec::with_capacity(self.num_roots());
        for c in &self.coords {
            let mut x = vec![0i64; l];
            for (k, xk) in x.iter_mut().enumerate() {
                let v: Scalar = (0..l).map(|i| inv[(k, i)] * Scalar::int(c[i])).sum();
                *xk = v.to_integer()?;
            }
            if x.iter().any(|&v| v > 0) && x.iter().any(|&v| v < 0) {
                return None;
            }
            out.push(x);
        }
        Some(out)
    }

    /// Walk the functional `p` (values on the default simple roots) into the
    /// chamber of `dst`, returning the accumulated Weyl element.
    fn chamber_walk(&self, p: &mut [i64; MAX_RANK], dst: &[usize]) -> RootAut {
        let l = self.rank();
        let mut w = RootAut::identity(l);
        loop {
            let hit = dst.iter().find_map(|&b| {
                let fb: i64 = (0..l).map(|j| self.coords[b][j] * p[j]).sum();
                (fb < 0).then_some((b, fb))
            });
            let Some((b, fb)) = hit else { break };
            for (i, pi) in p.iter_mut().enumerate().take(l) {
                *pi -= self.coroot[b][i] * fb;
            }
            w = self.root_reflection(b).compose(&w);
        }
        w
    }

    /// The unique `w` in the Weyl group with `w(src) = dst` as sets.
    pub fn weyl_map_between(&self, src: &FundamentalSystem, dst: &FundamentalSystem) -> Result<RootAut> {
        let src_coords = self.basis_coords(&src.0).ok_or_else(|| Error::NotFundamental("source".into()))?;
        if !self.is_fundamental(&dst.0) {
            return Err(Error::NotFundamental("target".into()));
        }
        // Functional equal to 1 on every root of src.
        let mut p = [0i64; MAX_RANK];
        for (i, pi) in p.iter_mut().enumerate().take(self.rank()) {
            *pi = src_coords[i].iter().sum();
        }
        Ok(self.chamber_walk(&mut p, &dst.0))
    }

    /// Reorder a fundamental system so that entry `k` is the image of
    /// `alpha_k` under the Weyl element carrying the default simple system to
    /// it. Labels then match the standard Dynkin labels.
    pub fn standardize(&self, fs: &[usize]) -> Result<FundamentalSystem> {
        let w = self.weyl_map_between(&self.simple(), &FundamentalSystem(fs.to_vec()))?;
        Ok(FundamentalSystem((0..self.rank()).map(|k| self.apply_to_root(&w, k).expect("Weyl image")).collect()))
    }

    /// Simple roots of the positive system `{alpha : <v, alpha> > 0}`.
    pub fn fundamental_from_regular(&self, v: &Vector) -> Result<FundamentalSystem> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.len() });
        }
        let mut positive = Vec::with_capacity(self.n_pos);
        for i in 0..self.num_roots() {
            let x = v.dot(&self.roots[i]);
            if x.is_zero() {
                return Err(Error::NotRegular { root: i.min(self.negative(i)) });
            }
            if x.is_positive() {
                positive.push(i);
            }
        }
        self.standardize(&self.indecomposables(&positive))
    }

    /// Roots of a positive system that are not sums of two of its roots.
    pub fn indecomposables(&self, positive: &[usize]) -> Vec<usize> {
        let l = self.rank();
        let set: HashSet<usize> = positive.iter().copied().collect();
        let mut decomposable = HashSet::new();
        for (x, &a) in positive.iter().enumerate() {
            for &b in &positive[x + 1..] {
                let mut s = [0i64; MAX_RANK];
                for k in 0..l {
                    s[k] = self.coords[a][k] + self.coords[b][k];
                }
                if let Some(&c) = self.by_coords.get(&s) {
                    if set.contains(&c) {
                        decomposable.insert(c);
                    }
                }
            }
        }
        positive.iter().copied().filter(|i| !decomposable.contains(i)).collect()
    }

    /// Whether a root automorphism lies in the Weyl group.
    pub fn is_weyl(&self, phi: &RootAut) -> bool {
        let l = self.rank();
        let img: Vec<usize> = (0..l).map(|k| self.apply_to_root(phi, k).expect("root automorphism")).collect();
        let w = self
            .weyl_map_between(&FundamentalSystem(img), &self.simple())
            .expect("image of a fundamental system is fundamental");
        w.compose(phi).is_identity()
    }

    /// Whether an ambient map lies in the Weyl group. The map must preserve
    /// the roots.
    pub fn is_weyl_element(&self, phi: &OrthoMap) -> Result<bool> {
        let a = self.root_aut(phi)?;
        Ok(self.is_weyl(&a))
    }

    /// All Weyl group elements, sorted by encoding. Refuses when the group
    /// order exceeds `cap`, and refuses E8 unless `allow_e8` is set.
    pub fn enumerate_weyl_with(&self, cap: u64, allow_e8: bool) -> Result<Arc<Vec<RootAut>>> {
        let order = self.ctype.weyl_order();
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        if self.ctype.series == Series::E && self.ctype.rank == 8 && !allow_e8 {
            return Err(Error::E8NotEnabled);
        }
        Ok(self.weyl.get_or_init(|| Arc::new(self.bfs_weyl())).clone())
    }

    pub fn enumerate_weyl(&self, cap: u64) -> Result<Arc<Vec<RootAut>>> {
        self.enumerate_weyl_with(cap, false)
    }

    fn bfs_weyl(&self) -> Vec<RootAut> {
        let l = self.rank();
        let id = RootAut::identity(l);
        let mut seen: HashSet<RootAut> = HashSet::with_capacity(self.ctype.weyl_order() as usize);
        seen.insert(id);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for i in 0..l {
                    // s_i g only changes row i: row_i -= sum_j cartan[i][j] row_j.
                    let mut h = *g;
                    for col in 0..l {
                        let s: i64 = (0..l).map(|j| self.cartan[i][j] * g.get(j, col)).sum();
                        h.set(i, col, g.get(i, col) - s);
                    }
                    if seen.insert(h) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<RootAut> = seen.into_iter().collect();
        all.sort_unstable();
        all
    }

    /// Automorphisms of the Dynkin diagram, identity first. For D4 the order
    /// is `id, kappa, kappa2, tau, tau_kappa, tau_kappa2` with
    /// `kappa: (a1,a2,a3,a4) -> (a4,a2,a1,a3)` and `tau` swapping `a3, a4`.
    pub fn dynkin_automorphisms(&self) -> Vec<DiagramAut> {
        let l = self.rank();
        let mut found = Vec::new();
        let mut perm = vec![usize::MAX; l];
        let mut used = vec![false; l];
        self.extend_perm(0, &mut perm, &mut used, &mut found);
        let mk = |name: &str, perm: Vec<usize>| DiagramAut {
            name: name.to_string(),
            aut: RootAut::from_permutation(&perm),
            perm,
        };
        if self.ctype == (CartanType { series: Series::D, rank: 4 }) {
            let kappa = vec![3, 1, 0, 2];
            let kappa2 = vec![2, 1, 3, 0];
            let tau = vec![0, 1, 3, 2];
            let conj = |k: &[usize], k_inv: &[usize]| -> Vec<usize> { (0..4).map(|j| k[tau[k_inv[j]]]).collect() };
            let out = vec![
                mk("id", vec![0, 1, 2, 3]),
                mk("kappa", kappa.clone()),
                mk("kappa2", kappa2.clone()),
                mk("tau", tau.clone()),
                mk("tau_kappa", conj(&kappa, &kappa2)),
                mk("tau_kappa2", conj(&kappa2, &kappa)),
            ];
            debug_assert!(out.iter().all(|d| found.contains(&d.perm)));
            return out;
        }
        found.sort();
        found
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                mk(
                    if k == 0 {
                        "id"
                    } else if k == 1 {
                        "tau"
                    } else {
                        "other"
                    },
                    p,
                )
            })
            .collect()
    }

    fn extend_perm(&self, i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let l = self.rank();
        if i == l {
            out.push(perm.clone());
            return;
        }
        for t in 0..l {
            if used[t] {
                continue;
            }
            let ok = (0..i)
                .all(|j| self.cartan[i][j] == self.cartan[t][perm[j]] && self.cartan[j][i] == self.cartan[perm[j]][t])
                && self.cartan[i][i] == self.cartan[t][t];
            if ok {
                perm[i] = t;
                used[t] = true;
                self.extend_perm(i + 1, perm, used, out);
                used[t] = false;
            }
        }
        perm[i] = usize::MAX;
    }

    /// JSON encoding: `{"type","rank","roots","simple"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": format!("{:?}", self.ctype.series),
            "rank": self.rank(),
            "roots": self.roots,
            "simple": (0..self.rank()).collect::<Vec<_>>(),
        })
    }
}
