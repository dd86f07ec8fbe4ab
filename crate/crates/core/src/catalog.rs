//! Involution classes of the compact simple Lie algebras and their Satake
//! diagrams on the standard fundamental system.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, Series};
use crate::sigma::SatakeDiagram;

/// Frozen catalog for every supported algebra of rank at most 8.
pub const SNAPSHOT: &str = include_str!("../data/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    Su(usize),
    So(usize),
    Sp(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Algebra {
    /// Checks the algebra is simple and of rank at most 8. `so(6)` is
    /// accepted and realized on D3.
    pub fn new(a: Algebra) -> Result<Algebra> {
        let ok = match a {
            Algebra::Su(n) => (2..=9).contains(&n),
            Algebra::So(n) => (5..=17).contains(&n),
            Algebra::Sp(n) => (2..=8).contains(&n),
            _ => true,
        };
        if ok {
            Ok(a)
        } else {
            Err(Error::UnsupportedAlgebra(a.to_string()))
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        let (s, r) = match *self {
            Algebra::Su(n) => (Series::A, n - 1),
            Algebra::So(n) if n % 2 == 1 => (Series::B, n / 2),
            Algebra::So(n) => (Series::D, n / 2),
            Algebra::Sp(n) => (Series::C, n),
            Algebra::E6 => (Series::E, 6),
            Algebra::E7 => (Series::E, 7),
            Algebra::E8 => (Series::E, 8),
            Algebra::F4 => (Series::F, 4),
            Algebra::G2 => (Series::G, 2),
        };
        CartanType::new(s, r).expect("validated algebra")
    }

    pub fn rank(&self) -> usize {
        self.cartan_type().rank
    }

    /// ASCII key such as `su6` or `e7`.
    pub fn key(&self) -> String {
        match *self {
            Algebra::Su(n) => format!("su{n}"),
            Algebra::So(n) => format!("so{n}"),
            Algebra::Sp(n) => format!("sp{n}"),
            Algebra::E6 => "e6".into(),
            Algebra::E7 => "e7".into(),
            Algebra::E8 => "e8".into(),
            Algebra::F4 => "f4".into(),
            Algebra::G2 => "g2".into(),
        }
    }

    /// Algebras within the given bounds on `n` for su(n), so(n), sp(n),
    /// followed by the exceptional ones.
    pub fn up_to(su: usize, so: usize, sp: usize) -> Vec<Algebra> {
        let mut out: Vec<Algebra> = (2..=su.min(9)).map(Algebra::Su).collect();
        out.extend((5..=so.min(17)).map(Algebra::So));
        out.extend((2..=sp.min(8)).map(Algebra::Sp));
        out.extend([Algebra::E6, Algebra::E7, Algebra::E8, Algebra::F4, Algebra::G2]);
        out
    }

    /// Default instantiation bounds: su(n) n ≤ 8, so(n) n ≤ 12, sp(n) n ≤ 6
    /// and all exceptional algebras.
    pub fn defaults() -> Vec<Algebra> {
        Algebra::up_to(8, 12, 6)
    }

    /// Every supported algebra of rank at most `r`.
    pub fn of_rank_at_most(r: usize) -> Vec<Algebra> {
        Algebra::up_to(9, 17, 8).into_iter().filter(|a| a.rank() <= r).collect()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Algebra::Su(n) => write!(f, "su({n})"),
            Algebra::So(n) => write!(f, "so({n})"),
            Algebra::Sp(n) => write!(f, "sp({n})"),
            _ => write!(f, "{}", self.key()),
        }
    }
}

impl FromStr for Algebra {
    type Err = Error;
    /// Accepts `su6`, `su(6)`, `SO8`, `e6`, `f4`, ...
    fn from_str(s: &str) -> Result<Algebra> {
        static RE: OnceLock<Regex> = OnceLock::new();
        let re = RE.get_or_init(|| Regex::new(r"^(su|so|sp|e|f|g)\(?(\d+)\)?$").unwrap());
        let t = s.trim().to_ascii_lowercase();
        let bad = || Error::UnsupportedAlgebra(s.to_string());
        let caps = re.captures(&t).ok_or_else(bad)?;
        let n: usize = caps[2].parse().map_err(|_| bad())?;
        let a = match (&caps[1], n) {
            ("su", n) => Algebra::Su(n),
            ("so", n) => Algebra::So(n),
            ("sp", n) => Algebra::Sp(n),
            ("e", 6) => Algebra::E6,
            ("e", 7) => Algebra::E7,
            ("e", 8) => Algebra::E8,
            ("f", 4) => Algebra::F4,
            ("g", 2) => Algebra::G2,
            _ => return Err(bad()),
        };
        Algebra::new(a).map_err(|_| bad())
    }
}

impl Serialize for Algebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    AI,
    AII,
    AIII { a: usize, b: usize },
    BDI { a: usize, b: usize },
    DIII,
    CI,
    CII { a: usize, b: usize },
    EI,
    EII,
    EIII,
    EIV,
    EV,
    EVI,
    EVII,
    EVIII,
    EIX,
    FI,
    FII,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::AIII { a, b } => write!(f, "AIII({a},{b})"),
            Family::BDI { a, b } => write!(f, "BDI({a},{b})"),
            Family::CII { a, b } => write!(f, "CII({a},{b})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// One conjugacy class of involutions of a compact simple Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionClass {
    #[serde(rename = "g")]
    pub algebra: Algebra,
    #[serde(skip)]
    pub family: Family,
    pub class_label: String,
    /// Fixed-point subalgebra, e.g. `s(u(2)⊕u(4))`.
    pub k_label: String,
    /// ASCII form, e.g. `s(u2+u4)`.
    #[serde(skip)]
    pub k_key: String,
    pub params: Vec<usize>,
    /// Rank of the symmetric pair.
    #[serde(skip)]
    pub rank: usize,
    pub diagram: SatakeDiagram,
}

fn k_names(alg: Algebra, fam: Family) -> (String, String) {
    let one = |name: &str, n: usize| (format!("{name}({n})"), format!("{name}{n}"));
    let two = |x: &str, a: usize, y: &str, b: usize| (format!("{x}({a})⊕{y}({b})"), format!("{x}{a}+{y}{b}"));
    let fixed = |label: &str, key: &str| (label.to_string(), key.to_string());
    match (alg, fam) {
        (Algebra::Su(n), Family::AI) => one("so", n),
        (Algebra::Su(n), Family::AII) => one("sp", n / 2),
        (_, Family::AIII { a, b }) => (format!("s(u({a})⊕u({b}))"), format!("s(u{a}+u{b})")),
        (_, Family::BDI { a, b }) => two("so", a, "so", b),
        (Algebra::So(n), Family::DIII) => one("u", n / 2),
        (Algebra::Sp(n), Family::CI) => one("u", n),
        (_, Family::CII { a, b }) => two("sp", a, "sp", b),
        (_, Family::EI) => one("sp", 4),
        (_, Family::EII) => two("su", 6, "su", 2),
        (_, Family::EIII) => two("so", 10, "so", 2),
        (_, Family::EIV) => fixed("f4", "f4"),
        (_, Family::EV) => one("su", 8),
        (_, Family::EVI) => two("so", 12, "su", 2),
        (_, Family::EVII) => fixed("e6⊕so(2)", "e6+so2"),
        (_, Family::EVIII) => one("so", 16),
        (_, Family::EIX) => fixed("e7⊕su(2)", "e7+su2"),
        (_, Family::FI) => two("su", 2, "sp", 3),
        (_, Family::FII) => one("so", 9),
        (_, Family::G) => two("su", 2, "su", 2),
        (a, f) => unreachable!("no family {f} on {a}"),
    }
}

/// Satake diagram of `fam` on the standard fundamental system of `ct`,
/// with 0-based Dynkin labels.
pub fn family_diagram(ct: CartanType, fam: Family) -> Result<SatakeDiagram> {
    let l = ct.rank;
    let bad = || Error::BadParameter(format!("{fam} on {ct}"));
    let evens = |upto: usize| (0..upto).step_by(2).collect::<Vec<_>>();
    let (black, arrows): (Vec<usize>, Vec<(usize, usize)>) = match (ct.series, fam) {
        (_, Family::AI | Family::CI | Family::EI | Family::EV | Family::EVIII | Family::FI | Family::G) => {
            (vec![], vec![])
        }
        (Series::A, Family::AII) => {
            if l.is_multiple_of(2) || l < 3 {
                return Err(bad());
            }
            (evens(l), vec![])
        }
        (Series::A, Family::AIII { a, b }) => {
            let n = l + 1;
            if a == 0 || a > b || a + b != n {
                return Err(bad());
            }
            let arrows = (1..=a).filter(|&i| i < n - i).map(|i| (i - 1, n - i - 1)).collect();
            ((a..n - a - 1).collect(), arrows)
        }
        (Series::B, Family::BDI { a, b }) => {
            if a == 0 || a > l || a + b != 2 * l + 1 {
                return Err(bad());
            }
            ((a..l).collect(), vec![])
        }
        (Series::D, Family::BDI { a, b }) => {
            if a == 0 || a > b || a + b != 2 * l {
                return Err(bad());
            }
            match l - a {
                0 => (vec![], vec![]),
                1 => (vec![], vec![(l - 2, l - 1)]),
                _ => ((a..l).collect(), vec![]),
            }
        }
        (Series::D, Family::DIII) if l.is_multiple_of(2) => (evens(l - 1), vec![]),
        (Series::D, Family::DIII) => (evens(l - 2), vec![(l - 2, l - 1)]),
        (Series::C, Family::CII { a, b }) => {
            if a == 0 || a > b || a + b != l {
                return Err(bad());
            }
            ((0..l).filter(|&k| k % 2 == 0 || k >= 2 * a).collect(), vec![])
        }
        (Series::E, Family::EII) if l == 6 => (vec![], vec![(0, 5), (2, 4)]),
        (Series::E, Family::EIII) if l == 6 => (vec![2, 3, 4], vec![(0, 5)]),
        (Series::E, Family::EIV) if l == 6 => (vec![1, 2, 3, 4], vec![]),
        (Series::E, Family::EVI) if l == 7 => (vec![1, 4, 6], vec![]),
        (Series::E, Family::EVII) if l == 7 => (vec![1, 2, 3, 4], vec![]),
        (Series::E, Family::EIX) if l == 8 => (vec![1, 2, 3, 4], vec![]),
        (Series::F, Family::FII) => (vec![0, 1, 2], vec![]),
        _ => return Err(bad()),
    };
    SatakeDiagram::new(ct, black, arrows)
}

/// Rank of the symmetric pair, from the classical tables.
fn pair_rank(alg: Algebra, fam: Family) -> usize {
    match (alg, fam) {
        (Algebra::Su(n), Family::AI) => n - 1,
        (Algebra::Su(n), Family::AII) => n / 2 - 1,
        (_, Family::AIII { a, .. } | Family::BDI { a, .. } | Family::CII { a, .. }) => a,
        (Algebra::So(n), Family::DIII) => n / 4,
        (Algebra::Sp(n), Family::CI) => n,
        (_, Family::EI) => 6,
        (_, Family::EII | Family::EVI | Family::EIX | Family::FI) => 4,
        (_, Family::EIII | Family::EIV | Family::G) => 2,
        (_, Family::EV) => 7,
        (_, Family::EVII) => 3,
        (_, Family::EVIII) => 8,
        (_, Family::FII) => 1,
        (a, f) => unreachable!("no family {f} on {a}"),
    }
}

fn families(alg: Algebra) -> Vec<Family> {
    match alg {
        Algebra::Su(n) => {
            let mut v = vec![Family::AI];
            if n >= 4 && n % 2 == 0 {
                v.push(Family::AII);
            }
            if n >= 3 {
                v.extend((1..=n / 2).map(|a| Family::AIII { a, b: n - a }));
            }
            v
        }
        Algebra::So(n) => {
            let mut v: Vec<Family> = (1..=n / 2).map(|a| Family::BDI { a, b: n - a }).collect();
            // u(4) is the image of so(2)⊕so(6) under triality.
            if n % 2 == 0 && n != 8 {
                v.push(Family::DIII);
            }
            v
        }
        Algebra::Sp(n) => {
            let mut v = vec![Family::CI];
            v.extend((1..=n / 2).map(|a| Family::CII { a, b: n - a }));
            v
        }
        Algebra::E6 => vec![Family::EI, Family::EII, Family::EIII, Family::EIV],
        Algebra::E7 => vec![Family::EV, Family::EVI, Family::EVII],
        Algebra::E8 => vec![Family::EVIII, Family::EIX],
        Algebra::F4 => vec![Family::FI, Family::FII],
        Algebra::G2 => vec![Family::G],
    }
}

/// An involution class from its family; the family need not be listed for
/// the algebra (used for `u(4)` in so(8)).
pub fn make_class(alg: Algebra, fam: Family) -> Result<InvolutionClass> {
    let diagram = family_diagram(alg.cartan_type(), fam)?;
    let (k_label, k_key) = k_names(alg, fam);
    let params = match fam {
        Family::AIII { a, b } | Family::BDI { a, b } | Family::CII { a, b } => vec![a, b],
        _ => vec![],
    };
    Ok(InvolutionClass {
        algebra: alg,
        family: fam,
        class_label: fam.to_string(),
        k_label,
        k_key,
        params,
        rank: pair_rank(alg, fam),
        diagram,
    })
}

/// One entry per conjugacy class of involutions.
pub fn involution_classes(alg: Algebra) -> Result<Vec<InvolutionClass>> {
    let alg = Algebra::new(alg)?;
    families(alg).into_iter().map(|f| make_class(alg, f)).collect()
}

/// Lowercase ASCII form of a subalgebra name: `so(3)⊕so(5)` becomes
/// `so3+so5`.
pub fn normalize_k(s: &str) -> String {
    static NUM: OnceLock<Regex> = OnceLock::new();
    let num = NUM.get_or_init(|| Regex::new(r"([a-z])\((\d+)\)").unwrap());
    let mut t: String = s.trim().to_lowercase().replace('⊕', "+").chars().filter(|c| !c.is_whitespace()).collect();
    loop {
        let next = num.replace_all(&t, "$1$2").into_owned();
        if next == t {
            return t;
        }
        t = next;
    }
}

fn summands(key: &str) -> Vec<String> {
    let inner = key.strip_prefix("s(").and_then(|k| k.strip_suffix(')')).unwrap_or(key);
    let mut v: Vec<String> = inner.split('+').map(str::to_string).collect();
    v.sort();
    v
}

/// Look up a class of `alg` by subalgebra name or class label. Summand
/// order is ignored; `u4` in so(8) resolves to `so2+so6`.
pub fn find_class(alg: Algebra, name: &str) -> Result<InvolutionClass> {
    let classes = involution_classes(alg)?;
    let key = normalize_k(name);
    let key = if alg == Algebra::So(8) && key == "u4" { "so2+so6".to_string() } else { key };
    let wanted = summands(&key);
    classes
        .into_iter()
        .find(|c| {
            c.k_key == key
                || normalize_k(&c.class_label) == key
                || (summands(&c.k_key) == wanted && c.k_key.starts_with("s(") == key.starts_with("s("))
        })
        .ok_or_else(|| Error::UnknownClass(format!("{name} in {alg}")))
}

/// JSON of the catalog for every supported algebra of rank at most 8.
pub fn snapshot_json() -> String {
    let all: Vec<InvolutionClass> =
        Algebra::of_rank_at_most(8).into_iter().flat_map(|a| involution_classes(a).expect("supported")).collect();
    let mut s = serde_json::to_string_pretty(&all).expect("serializable");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
