//! The lattice Λ_{1,n} with basis (ℓ, e1..en), its roots, subsystems and Weyl actions.

mod cache;
mod cartan;
mod orbit;
mod subsystem;
mod system;
mod weyl;

pub use cache::{cache_path, cached_subsystems, subsystems_from_json, subsystems_to_json, CacheStatus, CACHE_FORMAT_VERSION};
pub use cartan::{CartanType, Component, Family};
pub use orbit::{permutation_stabilizer_order, s7_orbit_split, weyl_orbit, S7Split};
pub use subsystem::RootSubsystem;
pub use system::{RootMask, RootSystem};
pub use weyl::WeylElement;

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("degree {0} is outside 2..=5")]
    Degree(i64),
    #[error("invalid root label {0}")]
    Label(String),
    #[error("vector is not a root: {0}")]
    NotARoot(String),
    #[error("unsupported subsystem type {0}")]
    UnsupportedType(String),
    #[error("expected type {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("matrix does not preserve the pairing or does not fix k")]
    NotWeyl,
    #[error("input is not closed under the permutation action")]
    NotPermutationClosed,
    #[error("cache: {0}")]
    Cache(String),
}

/// Λ_{1,n} with pairing diag(1, -1, ..., -1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    n: usize,
}

impl Lattice {
    pub fn new(d: i64) -> Result<Lattice, LatticeError> {
        if !(2..=5).contains(&d) {
            return Err(LatticeError::Degree(d));
        }
        Ok(Lattice { n: (9 - d) as usize })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        9 - self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn pairing(&self, x: &LatticeVector, y: &LatticeVector) -> i64 {
        let (a, b) = (&x.0, &y.0);
        a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(p, q)| p * q).sum::<i64>()
    }

    pub fn ell(&self) -> LatticeVector {
        self.basis(0)
    }

    /// `e_i` for `i` in `1..=n`.
    pub fn e(&self, i: usize) -> LatticeVector {
        assert!((1..=self.n).contains(&i));
        self.basis(i)
    }

    fn basis(&self, i: usize) -> LatticeVector {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        LatticeVector(v)
    }

    /// k = -3ℓ + e1 + ... + en.
    pub fn canonical_class(&self) -> LatticeVector {
        let mut v = vec![1; self.dim()];
        v[0] = -3;
        LatticeVector(v)
    }

    pub fn is_root(&self, v: &LatticeVector) -> bool {
        v.0.len() == self.dim() && self.pairing(v, v) == -2 && self.pairing(v, &self.canonical_class()) == 0
    }

    pub fn root(&self, v: LatticeVector) -> Result<Root, LatticeError> {
        if self.is_root(&v) {
            Ok(Root(v))
        } else {
            Err(LatticeError::NotARoot(v.to_string()))
        }
    }

    pub fn labeled_root(&self, label: RootLabel) -> Result<Root, LatticeError> {
        let n = self.n;
        let ok = |i: usize| (1..=n).contains(&i);
        let bad = || LatticeError::Label(label.to_string());
        let mut v = vec![0i64; self.dim()];
        match label {
            RootLabel::Hij(i, j) => {
                if !ok(i) || !ok(j) || i == j {
                    return Err(bad());
                }
                v[i] = 1;
                v[j] = -1;
            }
            RootLabel::Hijk(i, j, k) => {
                if !ok(i) || !ok(j) || !ok(k) || i == j || j == k || i == k {
                    return Err(bad());
                }
                v[0] = 1;
                v[i] = -1;
                v[j] = -1;
                v[k] = -1;
            }
            RootLabel::Hi(i) => {
                if n != 7 || !ok(i) {
                    return Err(bad());
                }
                v[0] = 2;
                for (idx, x) in v.iter_mut().enumerate().skip(1) {
                    *x = if idx == i { 0 } else { -1 };
                }
            }
            RootLabel::H => {
                if n != 6 {
                    return Err(bad());
                }
                v[0] = 2;
                for x in v.iter_mut().skip(1) {
                    *x = -1;
                }
            }
        }
        self.root(LatticeVector(v))
    }

    /// Simple roots h123, h12, h23, ..., h_{n-1,n}.
    pub fn simple_roots(&self) -> Vec<Root> {
        let mut out = vec![self.labeled_root(RootLabel::Hijk(1, 2, 3)).unwrap()];
        for i in 1..self.n {
            out.push(self.labeled_root(RootLabel::Hij(i, i + 1)).unwrap());
        }
        out
    }

    /// s_α(x) = x + ⟨x,α⟩α.
    pub fn reflect(&self, alpha: &Root, x: &LatticeVector) -> LatticeVector {
        let c = self.pairing(x, &alpha.0);
        LatticeVector(x.0.iter().zip(&alpha.0 .0).map(|(a, b)| a + c * b).collect())
    }

    /// All roots, sorted, found by searching the coordinate box the norm equation allows.
    pub fn enumerate_roots(&self) -> Vec<Root> {
        let n = self.n as i64;
        let mut out = Vec::new();
        let dim = self.dim();
        // ⟨v,k⟩ = 0 gives Σb = -3a, and Σb² = a² + 2 bounds a by Cauchy-Schwarz: 9a² ≤ n(a²+2).
        let amax = (0..).take_while(|a: &i64| 9 * a * a <= n * (a * a + 2)).last().unwrap_or(0);
        for a in -amax..=amax {
            let target = a * a + 2;
            let bmax = (target as f64).sqrt() as i64;
            let mut b = vec![0i64; dim - 1];
            fn rec(i: usize, b: &mut Vec<i64>, left: i64, bmax: i64, sum: i64, a: i64, out: &mut Vec<LatticeVector>) {
                if i == b.len() {
                    if left == 0 && sum == -3 * a {
                        let mut v = vec![a];
                        v.extend_from_slice(b);
                        out.push(LatticeVector(v));
                    }
                    return;
                }
                for x in -bmax..=bmax {
                    if x * x <= left {
                        b[i] = x;
                        rec(i + 1, b, left - x * x, bmax, sum + x, a, out);
                    }
                }
                b[i] = 0;
            }
            let mut found = Vec::new();
            rec(0, &mut b, target, bmax, 0, a, &mut found);
            out.extend(found.into_iter().map(Root));
        }
        out.sort();
        out
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = if i == 0 { "l".to_string() } else { format!("e{i}") };
            let s = match c {
                1 => format!("+{name}"),
                -1 => format!("-{name}"),
                _ if c > 0 => format!("+{c}{name}"),
                _ => format!("{c}{name}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let s = parts.concat();
        write!(f, "{}", s.strip_prefix('+').unwrap_or(&s))
    }
}

/// A norm -2 vector orthogonal to k.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Root(LatticeVector);

impl Root {
    pub fn vector(&self) -> &LatticeVector {
        &self.0
    }

    pub fn coords(&self) -> &[i64] {
        &self.0 .0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.neg())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Named roots; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootLabel {
    Hij(usize, usize),
    Hijk(usize, usize, usize),
    Hi(usize),
    H,
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLabel::Hij(i, j) => write!(f, "h{i}{j}"),
            RootLabel::Hijk(i, j, k) => write!(f, "h{i}{j}{k}"),
            RootLabel::Hi(i) => write!(f, "h{i}"),
            RootLabel::H => write!(f, "h"),
        }
    }
}

impl std::str::FromStr for RootLabel {
    type Err = LatticeError;

    /// Parses `h`, `h7` (n=7 family), `h12`, `h123`. Digits are single indices.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Label(s.to_string());
        let rest = s.strip_prefix('h').ok_or_else(bad)?;
        let idx: Vec<usize> = rest
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        match idx.as_slice() {
            [] => Ok(RootLabel::H),
            [i] => Ok(RootLabel::Hi(*i)),
            [i, j] => Ok(RootLabel::Hij(*i, *j)),
            [i, j, k] => Ok(RootLabel::Hijk(*i, *j, *k)),
            _ => Err(bad()),
        }
    }
}

impl Lattice {
    /// Root from a label string such as `h123`.
    pub fn root_named(&self, s: &str) -> Result<Root, LatticeError> {
        self.labeled_root(s.parse()?)
    }

    pub fn roots_named(&self, names: &[&str]) -> Result<Vec<Root>, LatticeError> {
        names.iter().map(|s| self.root_named(s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_class_norm_is_degree() {
        for d in 2..=5 {
            let l = Lattice::new(d).unwrap();
            let k = l.canonical_class();
            assert_eq!(l.pairing(&k, &k), d);
        }
        assert!(Lattice::new(6).is_err());
        assert!(Lattice::new(1).is_err());
    }

    #[test]
    fn labeled_roots() {
        let l6 = Lattice::new(3).unwrap();
        let h123 = l6.root_named("h123").unwrap();
        assert_eq!(h123.coords(), &[1, -1, -1, -1, 0, 0, 0]);
        assert_eq!(l6.root_named("h21").unwrap(), l6.root_named("h12").unwrap().neg());
        assert!(l6.root_named("h7").is_err());
        let l7 = Lattice::new(2).unwrap();
        let h7 = l7.root_named("h7").unwrap();
        assert_eq!(h7.coords(), &[2, -1, -1, -1, -1, -1, -1, 0]);
        assert!(l7.root_named("h").is_err());
        assert!(l7.root_named("h11").is_err());
    }

    #[test]
    fn reflection_examples() {
        let l = Lattice::new(3).unwrap();
        let h12 = l.root_named("h12").unwrap();
        assert_eq!(l.reflect(&h12, &l.e(1)), l.e(2));
        assert_eq!(l.reflect(&h12, h12.vector()), h12.vector().neg());
        let h123 = l.root_named("h123").unwrap();
        assert_eq!(l.reflect(&h123, &l.ell()).0, vec![2, -1, -1, -1, 0, 0, 0]);
    }

    #[test]
    fn root_counts() {
        for (d, c) in [(5, 20), (4, 40), (3, 72), (2, 126)] {
            assert_eq!(Lattice::new(d).unwrap().enumerate_roots().len(), c);
        }
    }
}
