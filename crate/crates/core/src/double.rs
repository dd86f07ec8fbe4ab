//! Double σ-systems `(Δ, σ₁, σ₂)`: canonical forms, double Satake diagrams,
//! equivalence, rank and order of a class, and the projection and core
//! machinery on a common fundamental system.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::{max_until, Execution};
use crate::linalg::{int_rank, QMatrix, Vector};
use crate::rootsys::{CartanType, FundamentalSystem, OrthoMap, RootAut, RootSystem, Series};
use crate::sigma::{
    diagram_constraints, find_node_bijection, make_sigma, reconstruct_sigma, SatakeDiagram, SigmaSystem,
};

/// Largest order of `σ₁σ₂` accepted before the pair is treated as malformed.
pub const ORDER_CAP: u32 = 60;

#[derive(Clone, Debug)]
pub struct DoubleSigmaSystem {
    s1: SigmaSystem,
    s2: SigmaSystem,
}

impl DoubleSigmaSystem {
    pub fn new(s1: SigmaSystem, s2: SigmaSystem) -> Result<DoubleSigmaSystem> {
        if s1.rs().ctype != s2.rs().ctype {
            return Err(Error::TypeMismatch(s1.rs().ctype.to_string(), s2.rs().ctype.to_string()));
        }
        Ok(DoubleSigmaSystem { s1, s2 })
    }

    pub fn from_ortho(rs: Arc<RootSystem>, sigma1: &OrthoMap, sigma2: &OrthoMap) -> Result<DoubleSigmaSystem> {
        DoubleSigmaSystem::new(make_sigma(rs.clone(), sigma1)?, make_sigma(rs, sigma2)?)
    }

    /// The canonical pair whose double Satake diagram on the standard
    /// fundamental system is `d`.
    pub fn from_diagram(d: &DoubleSatakeDiagram) -> Result<DoubleSigmaSystem> {
        DoubleSigmaSystem::new(reconstruct_sigma(&d.s1)?, reconstruct_sigma(&d.s2)?)
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        self.s1.rs()
    }

    pub fn first(&self) -> &SigmaSystem {
        &self.s1
    }

    pub fn second(&self) -> &SigmaSystem {
        &self.s2
    }

    pub fn swapped(&self) -> DoubleSigmaSystem {
        DoubleSigmaSystem { s1: self.s2.clone(), s2: self.s1.clone() }
    }

    fn require_normal(&self) -> Result<()> {
        for s in [&self.s1, &self.s2] {
            if let Some(witness) = s.normality_witness() {
                return Err(Error::NotNormal { witness });
            }
        }
        Ok(())
    }

    pub fn is_canonical_for(&self, fs: &FundamentalSystem) -> bool {
        self.s1.is_sigma_fundamental(fs) && self.s2.is_sigma_fundamental(fs)
    }

    pub fn commutes(&self) -> bool {
        let (a, b) = (self.s1.sigma(), self.s2.sigma());
        a.compose(b) == b.compose(a)
    }

    /// `(Δ, σ₁, wσ₂w⁻¹)` with `w` carrying a σ₂-fundamental system onto the
    /// σ₁-fundamental system `Π₁`, which is then fundamental for both.
    pub fn quasi_canonicalize(&self) -> Result<(DoubleSigmaSystem, FundamentalSystem, RootAut)> {
        self.require_normal()?;
        let rs = self.rs();
        let p1 = self.s1.find_sigma_fundamental()?;
        let p2 = self.s2.find_sigma_fundamental()?;
        let w = rs.weyl_map_between(&p2, &p1)?;
        let sigma2 = self.s2.sigma().conjugate_by(&w);
        let ds = DoubleSigmaSystem::new(self.s1.clone(), SigmaSystem::new(rs.clone(), sigma2)?)?;
        debug_assert!(ds.is_canonical_for(&p1));
        Ok((ds, p1, w))
    }

    /// Both Satake diagrams over a common σ₁- and σ₂-fundamental system.
    pub fn double_satake(&self, fs: &FundamentalSystem) -> Result<DoubleSatakeDiagram> {
        if !self.is_canonical_for(fs) {
            return Err(Error::NotCanonical);
        }
        DoubleSatakeDiagram::new(self.s1.satake_diagram(fs)?, self.s2.satake_diagram(fs)?)
    }

    /// Double Satake diagram of the quasi-canonical form.
    pub fn canonical_diagram(&self) -> Result<DoubleSatakeDiagram> {
        let (ds, p1, _) = self.quasi_canonicalize()?;
        ds.double_satake(&p1)
    }

    fn canonical_pair(&self) -> Result<DoubleSigmaSystem> {
        if self.is_canonical_for(&self.rs().simple()) {
            self.require_normal()?;
            return Ok(self.clone());
        }
        Ok(self.quasi_canonicalize()?.0)
    }

    /// `dim(t^{σ₁} ∩ t^{σ₂})` for a canonical representative.
    pub fn class_rank(&self) -> Result<usize> {
        Ok(self.canonical_pair()?.intersection_dim())
    }

    /// Order of `σ₁σ₂` for a canonical representative.
    pub fn class_order(&self) -> Result<u32> {
        self.canonical_pair()?.product_order()
    }

    /// `dim(t^{σ₁} ∩ t^{σ₂})` for the pair as given.
    pub fn intersection_dim(&self) -> usize {
        let l = self.rs().rank();
        let mut m = self.s1.sigma().minus_identity();
        m.extend(self.s2.sigma().minus_identity());
        l - int_rank(&mut m, 2 * l, l)
    }

    /// Order of `σ₁σ₂` for the pair as given.
    pub fn product_order(&self) -> Result<u32> {
        self.s1.sigma().compose(self.s2.sigma()).order(ORDER_CAP).ok_or(Error::OrderCapExceeded(ORDER_CAP))
    }

    /// Basis of `t^{σ₁} ∩ t^{σ₂}` in simple-root coordinates.
    pub fn intersection_basis(&self) -> Vec<Vector> {
        let (a, b) = (self.s1.sigma().qmatrix(), self.s2.sigma().qmatrix());
        let id = QMatrix::identity(self.rs().rank());
        a.sub(&id).vstack(&b.sub(&id)).nullspace()
    }

    /// Orthogonal projection onto `t^{σ₁} ∩ t^{σ₂}` in simple-root
    /// coordinates: `U (UᵀGU)⁻¹ UᵀG`.
    pub fn projection(&self) -> QMatrix {
        let l = self.rs().rank();
        let basis = self.intersection_basis();
        if basis.is_empty() {
            return QMatrix::zeros(l, l);
        }
        let u = QMatrix::from_columns(&basis, l);
        let ut_g = u.transpose().mul(self.rs().simple_gram());
        let inner = ut_g.mul(&u).inverse().expect("Gram matrix of a basis is invertible");
        u.mul(&inner).mul(&ut_g)
    }

    /// Π₀, a minimum core of `Π - Π₀`, and projections of the simple roots,
    /// all with respect to the common fundamental system `fs`.
    pub fn core_data(&self, fs: &FundamentalSystem) -> Result<CoreData> {
        let d = self.double_satake(fs)?;
        let rs = self.rs();
        let fs = rs.standardize(&fs.0)?;
        let l = rs.rank();
        let cols: Vec<Vector> = fs.0.iter().map(|&i| Vector::from_ints(&rs.coords(i)[..l])).collect();
        let b = QMatrix::from_columns(&cols, l);
        let to_fs = b.inverse().expect("fundamental systems are bases");
        let p = to_fs.mul(&self.projection()).mul(&b);
        let pr_images: Vec<Vector> = (0..l).map(|k| p.column(k)).collect();
        let pi0: Vec<usize> = (0..l).filter(|&k| pr_images[k].is_zero()).collect();
        let rest: Vec<usize> = (0..l).filter(|k| !pi0.contains(k)).collect();
        let rank = self.intersection_dim();

        let cover = |set: &[usize]| {
            let mut hit = vec![false; l];
            for &a in set {
                hit[a] = true;
                hit[d.s1.p(a)] = true;
                hit[d.s2.p(a)] = true;
            }
            rest.iter().all(|&a| hit[a])
        };
        let independent = |set: &[usize]| {
            let m = QMatrix::from_fn(set.len(), l, |i, j| pr_images[set[i]][j]);
            m.rank() == set.len() && set.len() == rank
        };
        let mut core = None;
        let mut independent_core = None;
        for k in 0..=rest.len() {
            for set in rest.iter().copied().combinations(k) {
                if cover(&set) {
                    if core.is_none() {
                        core = Some(set.clone());
                    }
                    if independent(&set) {
                        independent_core = Some(set);
                        break;
                    }
                }
            }
            if core.is_some() {
                break;
            }
        }
        Ok(CoreData { pi0, core: core.expect("Π - Π₀ covers itself"), pr_images, independent_core, rank })
    }
}

/// Whether two double σ-systems, possibly on different realizations of the
/// same Dynkin graph, are equivalent.
pub fn equivalent(a: &DoubleSigmaSystem, b: &DoubleSigmaSystem) -> Result<bool> {
    let (da, db) = (a.canonical_diagram()?, b.canonical_diagram()?);
    Ok(double_satake_isomorphic(&da, &db).is_some())
}

/// Output of [`DoubleSigmaSystem::core_data`]. Indices are standard labels
/// of the common fundamental system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreData {
    pub pi0: Vec<usize>,
    /// First minimum-cardinality core in size-then-lexicographic order.
    pub core: Vec<usize>,
    /// `pr(alpha_k)` in coordinates of the common fundamental system.
    pub pr_images: Vec<Vector>,
    /// First minimum core whose projections form a basis of the joint fixed
    /// space, if any.
    pub independent_core: Option<Vec<usize>>,
    pub rank: usize,
}

/// Largest `dim(t^{σ₁} ∩ s t^{σ₂})` over the Weyl group, by enumeration.
pub fn weyl_max_rank(ds: &DoubleSigmaSystem, cap: u64) -> Result<usize> {
    weyl_max_rank_with(ds, cap, Execution::default())
}

pub fn weyl_max_rank_with(ds: &DoubleSigmaSystem, cap: u64, exec: Execution) -> Result<usize> {
    let rs = ds.rs();
    let l = rs.rank();
    let a = ds.first().sigma().minus_identity();
    let u2: Vec<Vec<i64>> = ds.second().fixed_basis().iter().map(primitive_ints).collect();
    let r2 = u2.len();
    let bound = ds.first().rank().min(r2);
    let dim_at = |s: &RootAut| -> usize {
        let mut m = vec![0i64; l * r2];
        for (j, u) in u2.iter().enumerate() {
            let su = s.apply(u);
            for i in 0..l {
                m[i * r2 + j] = (0..l).map(|k| a[i * l + k] * su[k]).sum();
            }
        }
        r2 - int_rank(&mut m, l, r2)
    };
    let at_id = dim_at(&RootAut::identity(l));
    if at_id >= bound {
        return Ok(at_id);
    }
    let w = rs.enumerate_weyl(cap)?;
    Ok(max_until(exec, &w, bound, dim_at).max(at_id))
}

/// Scale a rational vector to a primitive integer vector.
fn primitive_ints(v: &Vector) -> Vec<i64> {
    let den = v.0.iter().fold(1i64, |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<i64> = v.0.iter().map(|x| x.numer() * (den / x.denom())).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    ints.iter().map(|x| if g == 0 { 0 } else { x / g }).collect()
}

/// Two Satake diagrams over one Dynkin diagram.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleSatakeDiagram {
    pub s1: SatakeDiagram,
    pub s2: SatakeDiagram,
}

impl DoubleSatakeDiagram {
    pub fn new(s1: SatakeDiagram, s2: SatakeDiagram) -> Result<DoubleSatakeDiagram> {
        if s1.ctype != s2.ctype {
            return Err(Error::TypeMismatch(s1.ctype.to_string(), s2.ctype.to_string()));
        }
        Ok(DoubleSatakeDiagram { s1, s2 })
    }

    pub fn ctype(&self) -> CartanType {
        self.s1.ctype
    }

    pub fn swapped(&self) -> DoubleSatakeDiagram {
        DoubleSatakeDiagram { s1: self.s2.clone(), s2: self.s1.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Debug for DoubleSatakeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Double({}, s1: black={:?} arrows={:?}, s2: black={:?} arrows={:?})",
            self.s1.ctype, self.s1.black, self.s1.arrows, self.s2.black, self.s2.arrows
        )
    }
}

#[derive(Serialize, Deserialize)]
struct HalfJson {
    black: Vec<usize>,
    arrows: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct DoubleJson {
    #[serde(rename = "type")]
    series: Series,
    rank: usize,
    s1: HalfJson,
    s2: HalfJson,
}

fn half(s: &SatakeDiagram) -> HalfJson {
    HalfJson { black: s.black.clone(), arrows: s.arrows.iter().map(|&(a, b)| [a, b]).collect() }
}

impl Serialize for DoubleSatakeDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ct = self.ctype();
        DoubleJson { series: ct.series, rank: ct.rank, s1: half(&self.s1), s2: half(&self.s2) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DoubleSatakeDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<DoubleSatakeDiagram, D::Error> {
        use serde::de::Error as _;
        let j = DoubleJson::deserialize(d)?;
        let ct = CartanType::new(j.series, j.rank).map_err(D::Error::custom)?;
        let mk = |h: HalfJson| SatakeDiagram::new(ct, h.black, h.arrows.into_iter().map(|[a, b]| (a, b)).collect());
        let s1 = mk(j.s1).map_err(D::Error::custom)?;
        let s2 = mk(j.s2).map_err(D::Error::custom)?;
        Ok(DoubleSatakeDiagram { s1, s2 })
    }
}

/// A single node bijection that is an isomorphism of both Satake diagrams
/// at once.
pub fn double_satake_isomorphic(d1: &DoubleSatakeDiagram, d2: &DoubleSatakeDiagram) -> Option<Vec<usize>> {
    let (t1, t2) = (d1.ctype(), d2.ctype());
    if t1.rank != t2.rank {
        return None;
    }
    let (r1, r2) = (RootSystem::shared(t1), RootSystem::shared(t2));
    let pairs = [(&d1.s1, &d2.s1), (&d1.s2, &d2.s2)];
    let (node_ok, pair_ok) = diagram_constraints(r1.cartan(), r2.cartan(), &pairs);
    find_node_bijection(t1.rank, &node_ok, &pair_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::OrthoMap;
    use crate::scalar::Scalar;

    fn d4() -> Arc<RootSystem> {
        RootSystem::shared("D4".parse().unwrap())
    }

    fn diag(signs: &[i64]) -> OrthoMap {
        OrthoMap::signed_permutation(&[0, 1, 2, 3], signs)
    }

    fn sd(black: &[usize], arrows: &[(usize, usize)]) -> SatakeDiagram {
        SatakeDiagram::new("D4".parse().unwrap(), black.to_vec(), arrows.to_vec()).unwrap()
    }

    fn kappa() -> RootAut {
        RootAut::from_permutation(&[3, 1, 0, 2])
    }

    fn sigma(s: &SatakeDiagram) -> SigmaSystem {
        reconstruct_sigma(s).unwrap()
    }

    fn twisted(s: &SigmaSystem, g: &RootAut) -> SigmaSystem {
        SigmaSystem::new(s.rs().clone(), s.sigma().conjugate_by(g)).unwrap()
    }

    #[test]
    fn worked_so8_example() {
        // sigma1 = diag(1,-1,-1,-1), sigma2 = (e1 e2)(e3 e4).
        let s2 = OrthoMap::signed_permutation(&[1, 0, 3, 2], &[1, 1, 1, 1]);
        let ds = DoubleSigmaSystem::from_ortho(d4(), &diag(&[1, -1, -1, -1]), &s2).unwrap();
        assert!(ds.is_canonical_for(&d4().simple()));
        assert_eq!(ds.class_rank().unwrap(), 0);
        assert_eq!(ds.class_order().unwrap(), 4);
        let d = ds.double_satake(&d4().simple()).unwrap();
        assert_eq!(d.s1, sd(&[1, 2, 3], &[]));
        assert_eq!(d.s2, sd(&[0, 2], &[]));
    }

    #[test]
    fn kappa_twists_of_bdi() {
        let s3 = sigma(&sd(&[], &[(2, 3)]));
        let ds = DoubleSigmaSystem::new(s3.clone(), twisted(&s3, &kappa())).unwrap();
        assert_eq!(ds.class_rank().unwrap(), 2);
        assert_eq!(ds.class_order().unwrap(), 3);
        assert_eq!(weyl_max_rank(&ds, 1000).unwrap(), 2);
        let s1 = sigma(&sd(&[1, 2, 3], &[]));
        let ds = DoubleSigmaSystem::new(s1, twisted(&s3, &kappa())).unwrap();
        assert_eq!(ds.class_rank().unwrap(), 0);
        assert_eq!(ds.class_order().unwrap(), 6);
    }

    #[test]
    fn quasi_canonicalize_undoes_weyl_conjugation() {
        let rs = d4();
        let s = sigma(&sd(&[1, 2, 3], &[]));
        let w0 = rs.simple_reflection(0).compose(&rs.simple_reflection(1)).compose(&rs.simple_reflection(3));
        let ds = DoubleSigmaSystem::new(s.clone(), twisted(&s, &w0)).unwrap();
        assert!(!ds.is_canonical_for(&rs.simple()));
        let (qc, p1, w) = ds.quasi_canonicalize().unwrap();
        assert!(qc.is_canonical_for(&p1));
        assert!(rs.is_weyl(&w));
        assert_eq!(qc.product_order().unwrap(), 1);
        assert!(equivalent(&ds, &DoubleSigmaSystem::new(s.clone(), s).unwrap()).unwrap());
    }

    #[test]
    fn canonical_input_is_unchanged() {
        let s = sigma(&sd(&[], &[(2, 3)]));
        let ds = DoubleSigmaSystem::new(s.clone(), s).unwrap();
        let (qc, _, w) = ds.quasi_canonicalize().unwrap();
        assert!(w.is_identity());
        assert_eq!(qc.second().sigma(), ds.second().sigma());
        assert_eq!(ds.class_order().unwrap(), 1);
        assert_eq!(ds.class_rank().unwrap(), 3);
        assert_eq!(weyl_max_rank(&ds, 1000).unwrap(), 3);
    }

    #[test]
    fn equivalence_and_diagram_automorphisms() {
        let rs = d4();
        let s = sigma(&sd(&[], &[(2, 3)]));
        // (e3 e4) is a Weyl reflection; kappa is not.
        let swap = rs.root_aut(&OrthoMap::signed_permutation(&[0, 1, 3, 2], &[1, 1, 1, 1])).unwrap();
        let base = DoubleSigmaSystem::new(s.clone(), s.clone()).unwrap();
        assert!(equivalent(&base, &DoubleSigmaSystem::new(s.clone(), twisted(&s, &swap)).unwrap()).unwrap());
        assert!(!equivalent(&base, &DoubleSigmaSystem::new(s.clone(), twisted(&s, &kappa())).unwrap()).unwrap());
    }

    #[test]
    fn so8_kappa_and_kappa2_related_by_tau() {
        let a = DoubleSatakeDiagram::new(sd(&[1, 2, 3], &[]), sd(&[0, 1, 2], &[])).unwrap();
        let b = DoubleSatakeDiagram::new(sd(&[1, 2, 3], &[]), sd(&[0, 1, 3], &[])).unwrap();
        let c = DoubleSatakeDiagram::new(sd(&[1, 2, 3], &[]), sd(&[1, 2, 3], &[])).unwrap();
        assert_eq!(double_satake_isomorphic(&a, &b).unwrap(), vec![0, 1, 3, 2]);
        assert!(double_satake_isomorphic(&a, &c).is_none());
        assert_eq!(double_satake_isomorphic(&c, &c).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn core_of_the_3_5_kappa_pair() {
        let s3 = sigma(&sd(&[], &[(2, 3)]));
        let ds = DoubleSigmaSystem::new(s3.clone(), twisted(&s3, &kappa())).unwrap();
        let cd = ds.core_data(&d4().simple()).unwrap();
        assert!(cd.pi0.is_empty());
        assert_eq!(cd.core, vec![1, 2]);
        assert_eq!(cd.independent_core, Some(vec![1, 2]));
        assert_eq!(cd.pr_images[1], Vector::from_ints(&[0, 1, 0, 0]));
        let third = Scalar::new(1, 3);
        assert_eq!(cd.pr_images[2], Vector(vec![third, Scalar::ZERO, third, third]));
    }

    #[test]
    fn core_is_empty_without_fixed_directions() {
        let s = sigma(&sd(&[1, 2, 3], &[]));
        let n = sigma(&sd(&[0, 2], &[]));
        let ds = DoubleSigmaSystem::new(s, n).unwrap();
        let cd = ds.core_data(&d4().simple()).unwrap();
        assert_eq!(cd.pi0, vec![0, 1, 2, 3]);
        assert!(cd.core.is_empty());
        assert_eq!(cd.independent_core, Some(vec![]));
    }

    #[test]
    fn non_canonical_core_request_is_rejected() {
        let rs = d4();
        let s = sigma(&sd(&[1, 2, 3], &[]));
        let w0 = rs.simple_reflection(0);
        let ds = DoubleSigmaSystem::new(s.clone(), twisted(&s, &w0)).unwrap();
        assert_eq!(ds.core_data(&rs.simple()).unwrap_err(), Error::NotCanonical);
    }

    #[test]
    fn weyl_max_rank_paths_agree() {
        let s3 = sigma(&sd(&[], &[(2, 3)]));
        let s2 = sigma(&sd(&[2, 3], &[]));
        let ds = DoubleSigmaSystem::new(s2, twisted(&s3, &kappa())).unwrap();
        let seq = weyl_max_rank_with(&ds, 1000, Execution::Sequential).unwrap();
        let par = weyl_max_rank_with(&ds, 1000, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq, ds.class_rank().unwrap());
    }

    #[test]
    fn json_shape() {
        let d = DoubleSatakeDiagram::new(sd(&[1, 2, 3], &[]), sd(&[], &[(0, 2)])).unwrap();
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(
            js,
            r#"{"type":"D","rank":4,"s1":{"black":[1,2,3],"arrows":[]},"s2":{"black":[],"arrows":[[0,2]]}}"#
        );
        assert_eq!(serde_json::from_str::<DoubleSatakeDiagram>(&js).unwrap(), d);
    }
}
