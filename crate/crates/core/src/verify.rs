//! Named verification suites over the classification. Each check reports
//! pass or fail with a short detail line; the CLI and the acceptance tests
//! both run these.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, involution_classes, Algebra, Family};
use crate::classify::{
    classify_algebra, ds_set, verify_self_duality, verify_special_isomorphisms, ClassificationReport, TriadClass,
};
use crate::double::{equivalent, weyl_max_rank_with, DoubleSigmaSystem};
use crate::error::Result;
use crate::exec::{map_collect, Execution};
use crate::rootsys::{CartanType, OrthoMap, RootSystem};
use crate::sigma::{reconstruct_sigma, root_axioms_hold, SigmaSystem};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub millis: u128,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn timed(suite: &str, f: impl FnOnce() -> Vec<Check>) -> SuiteResult {
    let t = Instant::now();
    let checks = f();
    SuiteResult { suite: suite.into(), millis: t.elapsed().as_millis(), checks }
}

fn error_check(name: &str, e: crate::Error) -> Vec<Check> {
    vec![Check::new(name, false, format!("error: {e}"))]
}

/// Rank and order from the published table of ranks and orders, with
/// `(rank(g, θ), 1)` for equivalent involutions. `None` for a row the table
/// does not cover.
pub fn table2_expectation(c: &TriadClass) -> Option<(usize, u32)> {
    use Family::*;
    let (f1, f2, tw) = (c.class1.family, c.class2.family, c.twist.as_str());
    if f1 == f2 && tw == "id" {
        return Some((c.class1.rank, 1));
    }
    let order_4_if = |a: usize, m: usize| if a % 2 == 1 && m > a { 4 } else { 2 };
    let hit = |alg: Algebra, x: Family, y: Family| -> Option<(usize, u32)> {
        Some(match (alg, x, y, tw) {
            (Algebra::Su(n), AI, AII, "id") => (n / 2 - 1, 2),
            (Algebra::Su(n), AI, AIII { a, .. }, "id") if n >= 2 * a => (a, 2),
            (Algebra::Su(n), AII, AIII { a, .. }, "id") if n / 2 >= a => (a / 2, order_4_if(a, n / 2)),
            (Algebra::Su(_), AIII { a, .. }, AIII { a: c, .. }, "id") if a < c => (a, 2),
            (Algebra::So(8), BDI { a, .. }, BDI { a: c, .. }, "kappa") if a <= c && c <= 3 => match (a, c) {
                (1, 1) => (0, 3),
                (1, 2) => (0, 4),
                (1, 3) => (0, 6),
                (2, 2) => (1, 2),
                (2, 3) => (1, 4),
                (3, 3) => (2, 3),
                _ => return None,
            },
            (Algebra::So(_), BDI { a, .. }, BDI { a: c, .. }, "id") if a < c => (a, 2),
            (Algebra::So(n), BDI { a, .. }, DIII, "id") if n / 2 >= a => (a / 2, order_4_if(a, n / 2)),
            (Algebra::So(n), DIII, DIII, "tau") if n % 4 == 0 => (n / 4 - 1, 2),
            (Algebra::Sp(n), CI, CII { a, .. }, "id") if n >= 2 * a => (a, 2),
            (Algebra::Sp(_), CII { a, .. }, CII { a: c, .. }, "id") if a < c => (a, 2),
            (Algebra::E6, EI, EII, "id") => (4, 2),
            (Algebra::E6, EI, EIII, "id") => (2, 2),
            (Algebra::E6, EI, EIV, "id") => (2, 2),
            (Algebra::E6, EII, EIII, "id") => (2, 2),
            (Algebra::E6, EII, EIV, "id") => (1, 2),
            (Algebra::E6, EIII, EIV, "id") => (1, 2),
            (Algebra::E7, EV, EVI, "id") => (4, 2),
            (Algebra::E7, EV, EVII, "id") => (3, 2),
            (Algebra::E7, EVI, EVII, "id") => (2, 2),
            (Algebra::E8, EVIII, EIX, "id") => (4, 2),
            (Algebra::F4, FI, FII, "id") => (1, 2),
            _ => return None,
        })
    };
    hit(c.algebra, f1, f2).or_else(|| if tw == "id" { hit(c.algebra, f2, f1) } else { None })
}

/// Membership in the published list of canonical triads with
/// `ord(θ₁θ₂) ≥ 3` and rank strictly below both symmetric-pair ranks.
pub fn in_strict_table(c: &TriadClass) -> bool {
    use Family::*;
    let odd = |x: usize| x % 2 == 1;
    match (c.algebra, c.class1.family, c.class2.family, c.twist.as_str()) {
        (Algebra::Su(_), AII, AIII { a, b }, "id") => odd(a) && odd(b) && a < b,
        (Algebra::So(_), BDI { a, b }, DIII, "id") => odd(a) && odd(b) && a < b,
        (Algebra::So(8), BDI { a, .. }, BDI { a: c, .. }, "kappa") => {
            matches!((a, c), (1, 1..=3) | (2, 2..=3) | (3, 3))
        }
        _ => false,
    }
}

pub fn strict_inequality(c: &TriadClass) -> bool {
    c.rank < c.class1.rank.min(c.class2.rank)
}

/// Reports for the given algebras, in order.
pub fn reports(algebras: &[Algebra], exec: Execution) -> Result<Vec<ClassificationReport>> {
    algebras.iter().map(|&a| classify_algebra(a, exec)).collect()
}

pub fn suite_table2(reports: &[ClassificationReport]) -> SuiteResult {
    timed("table2", || {
        reports
            .iter()
            .flat_map(|r| r.classes.iter())
            .map(|c| match table2_expectation(c) {
                Some((rank, order)) => Check::new(
                    &c.display_name,
                    (c.rank, c.order) == (rank, order),
                    format!("rank {} order {}, expected {rank} {order}", c.rank, c.order),
                ),
                None => Check::new(&c.display_name, false, "no table row covers this class"),
            })
            .collect()
    })
}

/// Expected |DS(S₁, S₂)|: 2 for `u(2m)` twice in so(4m) with m ≥ 3 and for
/// `so(a)⊕so(8-a)`, `so(c)⊕so(8-c)` with a, c ≤ 3; 1 otherwise.
pub fn expected_ds_size(alg: Algebra, f1: Family, f2: Family) -> usize {
    match (alg, f1, f2) {
        (Algebra::So(n), Family::DIII, Family::DIII) if n % 4 == 0 && n >= 12 => 2,
        (Algebra::So(8), Family::BDI { a, .. }, Family::BDI { a: c, .. }) if a <= 3 && c <= 3 => 2,
        _ => 1,
    }
}

pub fn suite_cardinalities(algebras: &[Algebra]) -> SuiteResult {
    timed("cardinality", || {
        let mut out = Vec::new();
        for &alg in algebras {
            let cs = match involution_classes(alg) {
                Ok(c) => c,
                Err(e) => return error_check(&alg.to_string(), e),
            };
            for (i, x) in cs.iter().enumerate() {
                for y in &cs[i..] {
                    let name = format!("DS({alg}: {}, {})", x.k_label, y.k_label);
                    let want = expected_ds_size(alg, x.family, y.family);
                    match ds_set(&x.diagram, &y.diagram) {
                        Ok(v) => {
                            out.push(Check::new(name, v.len() == want, format!("{} entries, expected {want}", v.len())))
                        }
                        Err(e) => out.push(Check::new(name, false, e.to_string())),
                    }
                }
            }
        }
        out
    })
}

/// The so(8) example with σ₁ = diag(1,-1,-1,-1) and σ₂ = (e₁ e₂)(e₃ e₄).
pub fn suite_worked_example() -> SuiteResult {
    timed("worked-example", || {
        let rs = RootSystem::shared("D4".parse().expect("valid"));
        let s1 = OrthoMap::signed_permutation(&[0, 1, 2, 3], &[1, -1, -1, -1]);
        let s2 = OrthoMap::signed_permutation(&[1, 0, 3, 2], &[1, 1, 1, 1]);
        let run = || -> Result<(usize, u32, bool)> {
            let ds = DoubleSigmaSystem::from_ortho(rs.clone(), &s1, &s2)?;
            Ok((ds.class_rank()?, ds.class_order()?, ds.is_canonical_for(&rs.simple())))
        };
        match run() {
            Ok((rank, order, canon)) => vec![
                Check::new("canonical on the standard Π", canon, ""),
                Check::new("rank", rank == 0, format!("{rank}")),
                Check::new("order", order == 4, format!("{order}")),
            ],
            Err(e) => error_check("worked example", e),
        }
    })
}

/// `class_rank` against the brute-force maximum over the Weyl group for
/// every class whose Weyl group has order at most `cap`.
pub fn suite_oracle(reports: &[ClassificationReport], cap: u64, exec: Execution) -> SuiteResult {
    timed("oracle", || {
        let rows: Vec<&TriadClass> = reports
            .iter()
            .filter(|r| r.algebra.cartan_type().weyl_order() <= cap)
            .flat_map(|r| r.classes.iter())
            .collect();
        // Rows run sequentially; the Weyl sweep inside each uses `exec`.
        rows.iter()
            .map(|c| match c.double_sigma().and_then(|ds| weyl_max_rank_with(&ds, cap, exec)) {
                Ok(m) => Check::new(&c.display_name, m == c.rank, format!("class rank {}, Weyl max {m}", c.rank)),
                Err(e) => Check::new(&c.display_name, false, e.to_string()),
            })
            .collect()
    })
}

pub fn suite_roundtrip(algebras: &[Algebra], exec: Execution) -> SuiteResult {
    timed("roundtrip", || {
        let classes: Vec<_> = algebras.iter().flat_map(|&a| involution_classes(a).unwrap_or_default()).collect();
        map_collect(exec, &classes, |c| {
            let name = format!("{} {}", c.algebra, c.class_label);
            let run = || -> Result<(bool, bool, usize)> {
                let ss = reconstruct_sigma(&c.diagram)?;
                let back = ss.satake_diagram(&ss.rs().simple())?;
                Ok((back == c.diagram, ss.is_normal(), ss.rank()))
            };
            match run() {
                Ok((same, normal, rank)) => Check::new(
                    name,
                    same && normal && rank == c.rank && c.diagram.sigma_rank() == c.rank,
                    format!("round trip {same}, normal {normal}, rank {rank} (encoded {})", c.rank),
                ),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
    })
}

pub fn suite_special_iso(negatives: usize, seed: u64) -> SuiteResult {
    timed("special-iso", || match verify_special_isomorphisms(negatives, seed) {
        Ok(v) => v
            .into_iter()
            .map(|c| {
                let rel = if c.expected { "~" } else { "!~" };
                Check::new(
                    format!("{} {rel} {}", c.left, c.right),
                    c.passed(),
                    format!("equivalent = {}", c.equivalent),
                )
            })
            .collect(),
        Err(e) => error_check("special isomorphisms", e),
    })
}

pub fn suite_self_duality(reports: &[ClassificationReport]) -> SuiteResult {
    timed("self-dual", || {
        verify_self_duality(reports)
            .into_iter()
            .map(|d| {
                Check::new(
                    &d.name,
                    d.self_dual == d.expected,
                    format!("self-dual {}, expected {}", d.self_dual, d.expected),
                )
            })
            .collect()
    })
}

/// A core with independent, spanning projections of size equal to the rank
/// exists for every class.
pub fn suite_cores(reports: &[ClassificationReport], exec: Execution) -> SuiteResult {
    timed("cores", || {
        let rows: Vec<&TriadClass> = reports.iter().flat_map(|r| r.classes.iter()).collect();
        map_collect(exec, &rows, |c| {
            let run = || -> Result<_> {
                let ds = c.double_sigma()?;
                ds.core_data(&ds.rs().simple())
            };
            match run() {
                Ok(cd) => Check::new(
                    &c.display_name,
                    cd.independent_core.as_ref().is_some_and(|k| k.len() == c.rank) && cd.core.len() == c.rank,
                    format!("core {:?}, independent core {:?}, rank {}", cd.core, cd.independent_core, c.rank),
                ),
                Err(e) => Check::new(&c.display_name, false, e.to_string()),
            }
        })
    })
}

/// Structural properties of every row: order in {1,2,3,4,6}, order 1 iff
/// the reconstructed involutions coincide, commuting involutions for order
/// 2, order at most 2 for exceptional algebras, rank bounded by both
/// symmetric-pair ranks.
pub fn suite_invariants(reports: &[ClassificationReport]) -> SuiteResult {
    timed("invariants", || {
        let mut out = Vec::new();
        for c in reports.iter().flat_map(|r| r.classes.iter()) {
            let ds = match c.double_sigma() {
                Ok(d) => d,
                Err(e) => {
                    out.push(Check::new(&c.display_name, false, e.to_string()));
                    continue;
                }
            };
            let same = ds.first().sigma() == ds.second().sigma();
            let exceptional = !matches!(c.algebra, Algebra::Su(_) | Algebra::So(_) | Algebra::Sp(_));
            let ok = [1, 2, 3, 4, 6].contains(&c.order)
                && (c.order == 1) == same
                && (c.order != 2 || ds.commutes())
                && (!exceptional || c.order <= 2)
                && c.rank <= c.class1.rank.min(c.class2.rank);
            out.push(Check::new(&c.display_name, ok, format!("rank {} order {}", c.rank, c.order)));
        }
        out
    })
}

/// Strict rank inequality against the published list of triads with order
/// at least 3. Every listed row must be strict; every strict row of order at
/// least 3 must be listed; the listed rows of order 2 are reported.
pub fn suite_strict_table(reports: &[ClassificationReport]) -> SuiteResult {
    timed("strict-table", || {
        let rows: Vec<&TriadClass> = reports.iter().flat_map(|r| r.classes.iter()).collect();
        let mut out = Vec::new();
        for c in &rows {
            let listed = in_strict_table(c);
            let strict = strict_inequality(c);
            if listed || (strict && c.order >= 3) {
                out.push(Check::new(
                    &c.display_name,
                    listed && strict,
                    format!("listed {listed}, strict {strict}, order {}", c.order),
                ));
            }
        }
        let order2: Vec<&str> =
            rows.iter().filter(|c| in_strict_table(c) && c.order < 3).map(|c| c.display_name.as_str()).collect();
        out.push(Check::new(
            "listed rows below order 3",
            order2 == ["(so(8), so(2)⊕so(6), κ(so(2)⊕so(6)))"]
                || order2.is_empty() && rows.iter().all(|c| c.algebra != Algebra::So(8)),
            format!("{order2:?}"),
        ));
        out
    })
}

/// Root axioms and root counts for every Cartan type of `algebras`, Weyl
/// group orders by enumeration where the group has at most `cap` elements,
/// and the three orders 192, 1152 and 51840.
pub fn suite_root_systems(algebras: &[Algebra], cap: u64) -> SuiteResult {
    timed("root-systems", || {
        let mut types: Vec<CartanType> = algebras.iter().map(|a| a.cartan_type()).collect();
        types.sort();
        types.dedup();
        let mut out = Vec::new();
        for t in types {
            let rs = RootSystem::shared(t);
            let n = rs.num_roots();
            out.push(Check::new(
                format!("{t} axioms"),
                root_axioms_hold(rs.roots()) && n == t.root_count(),
                format!("{n} roots"),
            ));
            if t.weyl_order() <= cap {
                match rs.enumerate_weyl(cap) {
                    Ok(w) => out.push(Check::new(
                        format!("|W({t})|"),
                        w.len() as u64 == t.weyl_order(),
                        format!("{} elements", w.len()),
                    )),
                    Err(e) => out.push(Check::new(format!("|W({t})|"), false, e.to_string())),
                }
            }
        }
        for (t, want) in [("D4", 192usize), ("F4", 1152), ("E6", 51_840)] {
            let rs = RootSystem::shared(t.parse().expect("valid"));
            let got = rs.enumerate_weyl(u64::MAX).map(|w| w.len()).unwrap_or(0);
            out.push(Check::new(format!("|W({t})| = {want}"), got == want, format!("{got} elements")));
        }
        out
    })
}

/// Rank and order are unchanged under `per_class` seeded random twists
/// `(φσ₁φ⁻¹, w'φσ₂φ⁻¹w'⁻¹)` of every class on an algebra of rank at most
/// `max_rank`, with φ a Weyl element times a diagram automorphism. Each twist
/// must also be equivalent to the original in both directions and to the
/// previous twist.
pub fn suite_twists(reports: &[ClassificationReport], per_class: usize, seed: u64, max_rank: usize) -> SuiteResult {
    timed("twists", || {
        let rows: Vec<&TriadClass> =
            reports.iter().filter(|r| r.algebra.rank() <= max_rank).flat_map(|r| r.classes.iter()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for c in rows {
            let run = |rng: &mut ChaCha8Rng| -> Result<Option<String>> {
                let ds = c.double_sigma()?;
                let rs = ds.rs().clone();
                let weyl = rs.enumerate_weyl(u64::MAX)?;
                let auts = rs.dynkin_automorphisms();
                if !equivalent(&ds, &ds)? {
                    return Ok(Some("not reflexive".into()));
                }
                let mut prev = ds.clone();
                for k in 0..per_class {
                    let phi = weyl[rng.gen_range(0..weyl.len())].compose(&auts[rng.gen_range(0..auts.len())].aut);
                    let w = weyl[rng.gen_range(0..weyl.len())];
                    let s1 = SigmaSystem::new(rs.clone(), ds.first().sigma().conjugate_by(&phi))?;
                    let s2 = SigmaSystem::new(rs.clone(), ds.second().sigma().conjugate_by(&w.compose(&phi)))?;
                    let t = DoubleSigmaSystem::new(s1, s2)?;
                    let (rank, order) = (t.class_rank()?, t.class_order()?);
                    if (rank, order) != (c.rank, c.order) {
                        return Ok(Some(format!("twist {k}: rank {rank} order {order}")));
                    }
                    if !equivalent(&ds, &t)? || !equivalent(&t, &ds)? || !equivalent(&prev, &t)? {
                        return Ok(Some(format!("twist {k}: equivalence laws fail")));
                    }
                    prev = t;
                }
                Ok(None)
            };
            out.push(match run(&mut rng) {
                Ok(None) => Check::new(&c.display_name, true, format!("{per_class} twists")),
                Ok(Some(msg)) => Check::new(&c.display_name, false, msg),
                Err(e) => Check::new(&c.display_name, false, e.to_string()),
            });
        }
        out
    })
}

pub fn suite_snapshot(text: &str) -> SuiteResult {
    timed("snapshot", || {
        let fresh = catalog::snapshot_json();
        vec![Check::new("catalog snapshot", fresh == text, format!("sha256 {}", catalog::sha256_hex(text.as_bytes())))]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so8_table_and_strict_list() {
        let r = reports(&[Algebra::So(8)], Execution::Sequential).unwrap();
        assert!(suite_table2(&r).passed());
        let s = suite_strict_table(&r);
        assert!(s.passed(), "{:?}", s.failures().collect::<Vec<_>>());
        assert!(suite_cores(&r, Execution::Sequential).passed());
    }

    #[test]
    fn worked_example_suite() {
        assert!(suite_worked_example().passed());
    }

    #[test]
    fn small_algebras_everything() {
        let algs = [Algebra::Su(4), Algebra::So(6), Algebra::So(5), Algebra::Sp(2), Algebra::G2];
        let r = reports(&algs, Execution::Parallel).unwrap();
        for s in [
            suite_table2(&r),
            suite_cardinalities(&algs),
            suite_oracle(&r, 10_000, Execution::Parallel),
            suite_roundtrip(&algs, Execution::Parallel),
            suite_self_duality(&r),
            suite_invariants(&r),
        ] {
            assert!(s.passed(), "{}: {:?}", s.suite, s.failures().collect::<Vec<_>>());
        }
    }
}
