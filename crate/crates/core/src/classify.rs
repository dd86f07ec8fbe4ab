//! Classification of compact simple symmetric triads through double Satake
//! diagrams: the sets DS(S₁, S₂), rank and order of each class, special
//! isomorphisms across low-rank coincidences, and self-duality.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, find_class, involution_classes, make_class, Algebra, Family, InvolutionClass};
use crate::double::{double_satake_isomorphic, equivalent, DoubleSatakeDiagram, DoubleSigmaSystem};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::rootsys::RootSystem;
use crate::sigma::SatakeDiagram;

/// One class of DS(S₁, S₂).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsEntry {
    /// Name of the first diagram automorphism ψ with `(S₁, ψ·S₂)` in the
    /// class, in the order of [`RootSystem::dynkin_automorphisms`].
    pub twist: String,
    /// Least `(S₁, ψ·S₂)` in the class.
    pub diagram: DoubleSatakeDiagram,
}

/// Classes of `(S₁, ψ·S₂)` over all diagram automorphisms ψ, in order of
/// first appearance.
pub fn ds_set(s1: &SatakeDiagram, s2: &SatakeDiagram) -> Result<Vec<DsEntry>> {
    if s1.ctype != s2.ctype {
        return Err(Error::TypeMismatch(s1.ctype.to_string(), s2.ctype.to_string()));
    }
    let rs = RootSystem::shared(s1.ctype);
    let mut out: Vec<(DsEntry, DoubleSatakeDiagram)> = Vec::new();
    for psi in rs.dynkin_automorphisms() {
        let d = DoubleSatakeDiagram::new(s1.clone(), s2.permuted(&psi.perm))?;
        match out.iter_mut().find(|(_, first)| double_satake_isomorphic(first, &d).is_some()) {
            Some((e, _)) => {
                if d < e.diagram {
                    e.diagram = d;
                }
            }
            None => out.push((DsEntry { twist: psi.name.clone(), diagram: d.clone() }, d)),
        }
    }
    Ok(out.into_iter().map(|(e, _)| e).collect())
}

/// The single class of DS(S₁, S₂) when one of the diagrams is fixed by every
/// diagram automorphism; `None` otherwise.
pub fn lemma_fixed_diagram_shortcut(s1: &SatakeDiagram, s2: &SatakeDiagram) -> Option<Vec<DsEntry>> {
    if s1.ctype != s2.ctype {
        return None;
    }
    let auts = RootSystem::shared(s1.ctype).dynkin_automorphisms();
    let fixed = |s: &SatakeDiagram| auts.iter().all(|psi| s.permuted(&psi.perm) == *s);
    if !fixed(s1) && !fixed(s2) {
        return None;
    }
    let diagram = auts
        .iter()
        .map(|psi| DoubleSatakeDiagram::new(s1.clone(), s2.permuted(&psi.perm)).expect("same type"))
        .min()
        .expect("identity is always present");
    Some(vec![DsEntry { twist: auts[0].name.clone(), diagram }])
}

/// `k` decorated with a twist: `κ(k)`, `κ²(k)`, `k′`.
pub fn twisted_label(k: &str, twist: &str) -> String {
    match twist {
        "id" => k.to_string(),
        "kappa" => format!("κ({k})"),
        "kappa2" => format!("κ²({k})"),
        "tau" => format!("{k}′"),
        other => format!("{other}({k})"),
    }
}

fn twisted_key(k: &str, twist: &str) -> String {
    match twist {
        "id" => k.to_string(),
        "tau" => format!("{k}'"),
        other => format!("{other}({k})"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriadClass {
    pub algebra: Algebra,
    pub class1: InvolutionClass,
    pub class2: InvolutionClass,
    pub twist: String,
    pub representative: DoubleSatakeDiagram,
    pub rank: usize,
    pub order: u32,
    pub self_dual: bool,
    pub display_name: String,
}

impl TriadClass {
    /// ASCII form accepted by [`parse_triad`], e.g.
    /// `so8:so1+so7,kappa(so3+so5)`.
    pub fn key(&self) -> String {
        format!("{}:{},{}", self.algebra.key(), self.class1.k_key, twisted_key(&self.class2.k_key, &self.twist))
    }

    /// Whether the two involutions are inequivalent, i.e. the row is not of
    /// the form `(g, k, k)` with trivial twist.
    pub fn distinct(&self) -> bool {
        self.class1.family != self.class2.family || self.twist != "id"
    }

    /// Reconstructed canonical pair.
    pub fn double_sigma(&self) -> Result<DoubleSigmaSystem> {
        DoubleSigmaSystem::from_diagram(&self.representative)
    }
}

#[derive(Serialize)]
struct TriadJson<'a> {
    g: String,
    k1: &'a str,
    k2: String,
    twist: &'a str,
    rank: usize,
    order: u32,
    self_dual: bool,
    name: &'a str,
    key: String,
    diagram: &'a DoubleSatakeDiagram,
}

impl Serialize for TriadClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TriadJson {
            g: self.algebra.to_string(),
            k1: &self.class1.k_label,
            k2: twisted_label(&self.class2.k_label, &self.twist),
            twist: &self.twist,
            rank: self.rank,
            order: self.order,
            self_dual: self.self_dual,
            name: &self.display_name,
            key: self.key(),
            diagram: &self.representative,
        }
        .serialize(s)
    }
}

/// Rank, order and self-duality of one DS entry for the pair `(c1, c2)`.
pub fn triad_class(c1: &InvolutionClass, c2: &InvolutionClass, e: &DsEntry) -> Result<TriadClass> {
    let ds = DoubleSigmaSystem::from_diagram(&e.diagram)?;
    let display_name = format!("({}, {}, {})", c1.algebra, c1.k_label, twisted_label(&c2.k_label, &e.twist));
    Ok(TriadClass {
        algebra: c1.algebra,
        class1: c1.clone(),
        class2: c2.clone(),
        twist: e.twist.clone(),
        representative: e.diagram.clone(),
        rank: ds.class_rank()?,
        order: ds.class_order()?,
        self_dual: double_satake_isomorphic(&e.diagram, &e.diagram.swapped()).is_some(),
        display_name,
    })
}

/// All classes for an unordered pair of involution classes.
pub fn classify_pair(c1: &InvolutionClass, c2: &InvolutionClass) -> Result<Vec<TriadClass>> {
    ds_set(&c1.diagram, &c2.diagram)?.iter().map(|e| triad_class(c1, c2, e)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    #[serde(rename = "g")]
    pub algebra: Algebra,
    pub catalog_sha256: String,
    pub classes: Vec<TriadClass>,
}

/// Every class of triads of `alg`, one row per unordered pair of involution
/// classes and DS entry, sorted by display name.
pub fn classify_algebra(alg: Algebra, exec: Execution) -> Result<ClassificationReport> {
    let classes = involution_classes(alg)?;
    let pairs: Vec<(usize, usize)> = (0..classes.len()).flat_map(|i| (i..classes.len()).map(move |j| (i, j))).collect();
    let rows = map_collect(exec, &pairs, |&(i, j)| classify_pair(&classes[i], &classes[j]));
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.display_name.cmp(&b.display_name));
    Ok(ClassificationReport {
        algebra: alg,
        catalog_sha256: catalog::sha256_hex(catalog::SNAPSHOT.as_bytes()),
        classes: out,
    })
}

impl ClassificationReport {
    /// Markdown table with the columns `(g, k1, k2) | Rank | Order | Remark`.
    /// With `distinct_only`, rows with equivalent involutions are dropped.
    pub fn to_markdown(&self, distinct_only: bool) -> String {
        let mut s = String::from("| (g, k1, k2) | Rank | Order | Remark |\n|---|---|---|---|\n");
        for c in self.classes.iter().filter(|c| !distinct_only || c.distinct()) {
            let remark = if c.self_dual && c.distinct() { "self-dual" } else { "" };
            let _ = writeln!(s, "| {} | {} | {} | {} |", c.display_name, c.rank, c.order, remark);
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} ({} classes)\n", self.algebra, self.classes.len());
        for c in &self.classes {
            let _ = writeln!(
                s,
                "  {}  rank={} order={}{}",
                c.display_name,
                c.rank,
                c.order,
                if c.self_dual { " self-dual" } else { "" }
            );
        }
        s
    }

    pub fn find(&self, k1: &str, k2: &str, twist: &str) -> Option<&TriadClass> {
        self.classes.iter().find(|c| c.class1.k_key == k1 && c.class2.k_key == k2 && c.twist == twist)
    }
}

/// A subalgebra name with an optional twist marker: `kappa(so3+so5)`,
/// `κ(so(3)⊕so(5))`, `k:kappa(...)`, `u6'`, `u(6)′`.
pub fn parse_member(s: &str) -> (String, String) {
    let t = catalog::normalize_k(s);
    let t = t.strip_prefix("k:").unwrap_or(&t).to_string();
    for (prefix, name) in
        [("kappa2(", "kappa2"), ("κ²(", "kappa2"), ("kappa(", "kappa"), ("κ(", "kappa"), ("tau(", "tau")]
    {
        if let Some(inner) = t.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            return (inner.to_string(), name.to_string());
        }
    }
    if let Some(base) = t.strip_suffix('\'').or_else(|| t.strip_suffix('′')) {
        return (base.to_string(), "tau".to_string());
    }
    (t, "id".to_string())
}

/// Parse `g:k1,k2` (the form produced by [`TriadClass::key`]) or a display
/// name `(g, k1, k2)`.
pub fn parse_triad(s: &str) -> Result<(Algebra, InvolutionClass, InvolutionClass, String)> {
    let t = s.trim();
    let bad = || Error::Parse(format!("triad {s:?}"));
    let (g, rest) = if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        inner.split_once(',').ok_or_else(bad)?
    } else {
        t.split_once(':').ok_or_else(bad)?
    };
    let alg: Algebra = g.trim().parse()?;
    let (k1, k2) = split_top_level(rest).ok_or_else(bad)?;
    let (b1, tw1) = parse_member(k1);
    if tw1 != "id" {
        return Err(bad());
    }
    let (b2, twist) = parse_member(k2);
    Ok((alg, find_class(alg, &b1)?, find_class(alg, &b2)?, twist))
}

/// Split at the single comma outside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// The class of `(alg, k1, twist(k2))`: the DS entry of the pair whose
/// orbit contains `(S₁, ψ·S₂)` for the named ψ.
pub fn lookup_triad(alg: Algebra, c1: &InvolutionClass, c2: &InvolutionClass, twist: &str) -> Result<TriadClass> {
    let rs = RootSystem::shared(alg.cartan_type());
    let psi = rs
        .dynkin_automorphisms()
        .into_iter()
        .find(|p| p.name == twist)
        .ok_or_else(|| Error::BadParameter(format!("twist {twist} on {alg}")))?;
    let target = DoubleSatakeDiagram::new(c1.diagram.clone(), c2.diagram.permuted(&psi.perm))?;
    let e = ds_set(&c1.diagram, &c2.diagram)?
        .into_iter()
        .find(|e| double_satake_isomorphic(&e.diagram, &target).is_some())
        .expect("every twist lies in some DS class");
    triad_class(c1, c2, &e)
}

/// Outcome of one cross-realization comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCheck {
    pub left: String,
    pub right: String,
    pub expected: bool,
    pub equivalent: bool,
}

impl IsoCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.equivalent
    }
}

fn triad_system(alg: Algebra, k1: &str, k2: &str) -> Result<DoubleSigmaSystem> {
    let class = |k: &str| {
        // u(4) on so(8) is kept out of the class list but needed here.
        if alg == Algebra::So(8) && k == "u4-diii" {
            make_class(alg, Family::DIII)
        } else {
            find_class(alg, k)
        }
    };
    let (c1, c2) = (class(k1)?, class(k2)?);
    DoubleSigmaSystem::from_diagram(&DoubleSatakeDiagram::new(c1.diagram, c2.diagram)?)
}

/// The eight low-rank coincidences between triads on different
/// realizations.
/// `(algebra, k1, k2)` in ASCII names.
pub type TriadName = (&'static str, &'static str, &'static str);

pub const SPECIAL_RELATIONS: [(TriadName, TriadName); 8] = [
    (("so8", "u4-diii", "so4+so4"), ("so8", "so2+so6", "so4+so4")),
    (("so5", "so1+so4", "so2+so3"), ("sp2", "sp1+sp1", "u2")),
    (("su4", "so4", "sp2"), ("so6", "so3+so3", "so1+so5")),
    (("su4", "so4", "s(u2+u2)"), ("so6", "so3+so3", "so2+so4")),
    (("su4", "so4", "s(u1+u3)"), ("so6", "so3+so3", "u3")),
    (("su4", "sp2", "s(u2+u2)"), ("so6", "so1+so5", "so2+so4")),
    (("su4", "sp2", "s(u1+u3)"), ("so6", "so1+so5", "u3")),
    (("su4", "s(u2+u2)", "s(u1+u3)"), ("so6", "so2+so4", "u3")),
];

fn describe(t: (&str, &str, &str)) -> String {
    format!("({}, {}, {})", t.0, t.1.replace("-diii", ""), t.2)
}

fn compare(l: (&str, &str, &str), r: (&str, &str, &str), expected: bool) -> Result<IsoCheck> {
    let a = triad_system(l.0.parse()?, l.1, l.2)?;
    let b = triad_system(r.0.parse()?, r.1, r.2)?;
    Ok(IsoCheck { left: describe(l), right: describe(r), expected, equivalent: equivalent(&a, &b)? })
}

/// The eight relations, each expected to hold, followed by `negatives`
/// seeded random cross-realization pairs that are not among them.
pub fn verify_special_isomorphisms(negatives: usize, seed: u64) -> Result<Vec<IsoCheck>> {
    let mut out: Vec<IsoCheck> = SPECIAL_RELATIONS.iter().map(|&(l, r)| compare(l, r, true)).collect::<Result<_>>()?;
    // Class correspondences under su(4) ≅ so(6) and so(5) ≅ sp(2).
    let a3d3 = [("so4", "so3+so3"), ("sp2", "so1+so5"), ("s(u2+u2)", "so2+so4"), ("s(u1+u3)", "u3")];
    let b2c2 = [("so1+so4", "sp1+sp1"), ("so2+so3", "u2")];
    let mut candidates = Vec::new();
    for (la, ra, table) in [("su4", "so6", &a3d3[..]), ("so5", "sp2", &b2c2[..])] {
        for (i, x1) in table.iter().enumerate() {
            for (j, x2) in table.iter().enumerate() {
                for (p, y1) in table.iter().enumerate() {
                    for (q, y2) in table.iter().enumerate() {
                        if i != j && p != q && (i, j) != (p, q) {
                            candidates.push(((la, x1.0, x2.0), (ra, y1.1, y2.1)));
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &(l, r) in candidates.choose_multiple(&mut rng, negatives) {
        out.push(compare(l, r, false)?);
    }
    Ok(out)
}

/// Self-duality of the rows with inequivalent involutions, against the
/// expected list: `(so(4m), u(2m), u(2m)′)` and `(so(8), k, κ(k))`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityCheck {
    pub name: String,
    pub self_dual: bool,
    pub expected: bool,
}

pub fn expected_self_dual(c: &TriadClass) -> bool {
    c.class1.family == c.class2.family && c.twist != "id"
}

pub fn verify_self_duality(reports: &[ClassificationReport]) -> Vec<DualityCheck> {
    reports
        .iter()
        .flat_map(|r| r.classes.iter())
        .filter(|c| c.distinct())
        .map(|c| DualityCheck { name: c.display_name.clone(), self_dual: c.self_dual, expected: expected_self_dual(c) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> Algebra {
        s.parse().unwrap()
    }

    fn class(g: &str, k: &str) -> InvolutionClass {
        find_class(alg(g), k).unwrap()
    }

    #[test]
    fn ds_cardinalities() {
        let n = |g: &str, a: &str, b: &str| ds_set(&class(g, a).diagram, &class(g, b).diagram).unwrap().len();
        assert_eq!(n("so9", "so1+so8", "so3+so6"), 1);
        assert_eq!(n("so12", "u6", "u6"), 2);
        assert_eq!(n("so16", "u8", "u8"), 2);
        assert_eq!(n("so10", "u5", "u5"), 1);
        assert_eq!(n("so8", "so1+so7", "so2+so6"), 2);
        assert_eq!(n("so8", "so4+so4", "so2+so6"), 1);
        assert_eq!(n("su6", "so6", "s(u2+u4)"), 1);
        let twists: Vec<String> = ds_set(&class("so12", "u6").diagram, &class("so12", "u6").diagram)
            .unwrap()
            .into_iter()
            .map(|e| e.twist)
            .collect();
        assert_eq!(twists, ["id", "tau"]);
    }

    #[test]
    fn shortcut_agrees_with_ds_set() {
        let cases = [("su5", "so5", "s(u2+u3)"), ("so8", "so4+so4", "so1+so7"), ("so8", "so1+so7", "so2+so6")];
        for (g, a, b) in cases {
            let (s1, s2) = (class(g, a).diagram, class(g, b).diagram);
            match lemma_fixed_diagram_shortcut(&s1, &s2) {
                Some(v) => assert_eq!(v, ds_set(&s1, &s2).unwrap()),
                None => assert_eq!((g, a), ("so8", "so1+so7")),
            }
        }
    }

    #[test]
    fn so8_rows() {
        let r = classify_algebra(Algebra::So(8), Execution::Sequential).unwrap();
        let c = r.find("so1+so7", "so3+so5", "kappa").unwrap();
        assert_eq!((c.rank, c.order), (0, 6));
        assert_eq!(c.display_name, "(so(8), so(1)⊕so(7), κ(so(3)⊕so(5)))");
        let c = r.find("so3+so5", "so3+so5", "kappa").unwrap();
        assert_eq!((c.rank, c.order, c.self_dual), (2, 3, true));
        // 4 same-class rows, 6 mixed pairs, and kappa rows for a, c in {1,2,3}.
        assert_eq!(r.classes.len(), 4 + 6 + 6);
    }

    #[test]
    fn small_reports() {
        let r = classify_algebra(Algebra::F4, Execution::Parallel).unwrap();
        let c = r.find("su2+sp3", "so9", "id").unwrap();
        assert_eq!((c.rank, c.order), (1, 2));
        let r = classify_algebra(Algebra::Su(6), Execution::Parallel).unwrap();
        let c = r.find("so6", "s(u2+u4)", "id").unwrap();
        assert_eq!((c.rank, c.order, c.self_dual), (2, 2, false));
        assert!(r.to_markdown(true).contains("| (su(6), so(6), s(u(2)⊕u(4))) | 2 | 2 |  |"));
    }

    #[test]
    fn triad_names_round_trip() {
        let r = classify_algebra(Algebra::So(8), Execution::Sequential).unwrap();
        for c in &r.classes {
            for text in [c.key(), c.display_name.clone()] {
                let (g, c1, c2, tw) = parse_triad(&text).unwrap();
                let back = lookup_triad(g, &c1, &c2, &tw).unwrap();
                assert_eq!(&back, c, "{text}");
            }
        }
        assert_eq!(parse_member("u(6)′"), ("u6".into(), "tau".into()));
        assert_eq!(parse_member("k:kappa(so3+so5)"), ("so3+so5".into(), "kappa".into()));
    }

    #[test]
    fn kappa2_twist_lands_in_the_kappa_class() {
        let (a, b) = (class("so8", "so1+so7"), class("so8", "so2+so6"));
        let k2 = lookup_triad(Algebra::So(8), &a, &b, "kappa2").unwrap();
        assert_eq!(k2.twist, "kappa");
    }

    #[test]
    fn special_isomorphisms_hold() {
        let checks = verify_special_isomorphisms(10, 7).unwrap();
        assert_eq!(checks.len(), 18);
        for c in &checks {
            assert!(c.passed(), "{c:?}");
        }
    }
}
