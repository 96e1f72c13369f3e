use std::collections::HashMap;

use super::{Lattice, LatticeError, LatticeVector, Root, RootLabel};

/// A set of roots of one root system, as a bitmask over its root indices (at most 128 roots).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RootMask(pub u128);

impl RootMask {
    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, o: RootMask) -> RootMask {
        RootMask(self.0 | o.0)
    }

    pub fn intersect(&self, o: RootMask) -> RootMask {
        RootMask(self.0 & o.0)
    }

    pub fn is_subset(&self, o: RootMask) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

/// All roots of a lattice with indexed pairing and reflection tables.
#[derive(Clone, Debug)]
pub struct RootSystem {
    lattice: Lattice,
    roots: Vec<Root>,
    index: HashMap<LatticeVector, usize>,
    pairing: Vec<Vec<i8>>,
    reflect: Vec<Vec<u8>>,
    negation: Vec<usize>,
    positive: Vec<bool>,
    simple: Vec<usize>,
    orthogonal: Vec<RootMask>,
}

impl RootSystem {
    pub fn new(lattice: Lattice) -> RootSystem {
        let roots = lattice.enumerate_roots();
        assert!(roots.len() <= 128);
        let index: HashMap<LatticeVector, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.vector().clone(), i)).collect();
        let n = roots.len();
        let mut pairing = vec![vec![0i8; n]; n];
        let mut reflect = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                pairing[i][j] = lattice.pairing(roots[i].vector(), roots[j].vector()) as i8;
                let img = lattice.reflect(&roots[i], roots[j].vector());
                reflect[i][j] = index[&img] as u8;
            }
        }
        let negation: Vec<usize> = roots.iter().map(|r| index[&r.vector().neg()]).collect();
        let simple_roots = lattice.simple_roots();
        let simple: Vec<usize> = simple_roots.iter().map(|r| index[r.vector()]).collect();
        let positive = roots.iter().map(|r| simple_coordinates_sign(&lattice, &simple_roots, r) > 0).collect();
        let mut orthogonal = vec![RootMask::default(); n];
        for i in 0..n {
            for j in 0..n {
                if pairing[i][j] == 0 {
                    orthogonal[i].insert(j);
                }
            }
        }
        RootSystem { lattice, roots, index, pairing, reflect, negation, positive, simple, orthogonal }
    }

    pub fn for_degree(d: i64) -> Result<RootSystem, LatticeError> {
        Ok(RootSystem::new(Lattice::new(d)?))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r.vector()).copied()
    }

    pub fn index_of_vector(&self, v: &LatticeVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn named(&self, s: &str) -> Result<usize, LatticeError> {
        let r = self.lattice.root_named(s)?;
        Ok(self.index_of(&r).expect("labeled roots are roots"))
    }

    pub fn named_mask(&self, names: &[&str]) -> Result<RootMask, LatticeError> {
        let mut m = RootMask::default();
        for s in names {
            m.insert(self.named(s)?);
        }
        Ok(m)
    }

    pub fn label(&self, i: usize) -> RootLabel {
        label_of(&self.lattice, &self.roots[i]).expect("every root has a label up to sign")
    }

    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j] as i64
    }

    /// Index of s_i(root j).
    pub fn reflect(&self, i: usize, j: usize) -> usize {
        self.reflect[i][j] as usize
    }

    pub fn negate(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_index(&self, i: usize) -> usize {
        if self.positive[i] {
            i
        } else {
            self.negation[i]
        }
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn orthogonal_mask(&self, i: usize) -> RootMask {
        self.orthogonal[i]
    }

    pub fn all_mask(&self) -> RootMask {
        let n = self.roots.len();
        RootMask(if n == 128 { u128::MAX } else { (1u128 << n) - 1 })
    }

    /// Close a set under negation.
    pub fn symmetrize(&self, m: RootMask) -> RootMask {
        let mut out = m;
        for i in m.iter() {
            out.insert(self.negation[i]);
        }
        out
    }

    /// Image of a root set under s_i.
    pub fn reflect_mask(&self, i: usize, m: RootMask) -> RootMask {
        let mut out = RootMask::default();
        for j in m.iter() {
            out.insert(self.reflect(i, j));
        }
        out
    }

    /// Smallest reflection-closed set containing the given roots.
    pub fn closure(&self, gens: RootMask) -> RootMask {
        let mut set = self.symmetrize(gens);
        let mut queue: Vec<usize> = set.iter().collect();
        let mut k = 0;
        while k < queue.len() {
            let a = queue[k];
            k += 1;
            let current: Vec<usize> = set.iter().collect();
            for b in current {
                for (x, y) in [(a, b), (b, a)] {
                    let img = self.reflect(x, y);
                    if !set.contains(img) {
                        set.insert(img);
                        queue.push(img);
                    }
                }
            }
        }
        set
    }

    /// Roots orthogonal to every root of `m`.
    pub fn perp_mask(&self, m: RootMask) -> RootMask {
        let mut out = self.all_mask();
        for i in m.iter() {
            out = out.intersect(self.orthogonal[i]);
        }
        out
    }

    pub fn positive_part(&self, m: RootMask) -> RootMask {
        let mut out = RootMask::default();
        for i in m.iter() {
            if self.positive[i] {
                out.insert(i);
            }
        }
        out
    }

    /// Simple roots of a subsystem: positive roots that are not a sum of two positive roots.
    pub fn simple_of(&self, m: RootMask) -> Vec<usize> {
        let pos = self.positive_part(m);
        let mut out = Vec::new();
        for b in pos.iter() {
            let decomposable = pos.iter().any(|g| {
                if g == b {
                    return false;
                }
                let diff = self.roots[b].vector().sub(self.roots[g].vector());
                self.index.get(&diff).is_some_and(|&k| pos.contains(k))
            });
            if !decomposable {
                out.push(b);
            }
        }
        out
    }

    pub fn mask_of(&self, roots: &[Root]) -> Result<RootMask, LatticeError> {
        let mut m = RootMask::default();
        for r in roots {
            m.insert(self.index_of(r).ok_or_else(|| LatticeError::NotARoot(r.to_string()))?);
        }
        Ok(m)
    }

    pub fn roots_of(&self, m: RootMask) -> Vec<Root> {
        let mut v: Vec<Root> = m.iter().map(|i| self.roots[i].clone()).collect();
        v.sort();
        v
    }

    /// The roots lying in the rational span of the given roots.
    pub fn roots_in_span(&self, gens: &[usize]) -> RootMask {
        let basis: Vec<Vec<i64>> = gens.iter().map(|&g| self.roots[g].coords().to_vec()).collect();
        let r0 = integer_rank(&basis);
        let mut out = RootMask::default();
        for (i, r) in self.roots.iter().enumerate() {
            let mut b = basis.clone();
            b.push(r.coords().to_vec());
            if integer_rank(&b) == r0 {
                out.insert(i);
            }
        }
        out
    }
}

fn integer_rank(rows: &[Vec<i64>]) -> usize {
    use crate::poly::Rational;
    let r: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    crate::poly::rank(&r)
}

/// Sign of the first nonzero coordinate of `r` in the simple-root basis of k⊥.
fn simple_coordinates_sign(lattice: &Lattice, simple: &[Root], r: &Root) -> i64 {
    use crate::poly::{solve, Rational};
    let n = simple.len();
    // Solve Σ c_j s_j = r through the Gram matrix: ⟨r, s_i⟩ = Σ c_j ⟨s_j, s_i⟩.
    let gram: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(lattice.pairing(simple[i].vector(), simple[j].vector()).into())).collect())
        .collect();
    let rhs: Vec<Vec<Rational>> = (0..n)
        .map(|i| vec![Rational::from_integer(lattice.pairing(r.vector(), simple[i].vector()).into())])
        .collect();
    let c = solve(&gram, &rhs).expect("simple roots are a basis of k⊥");
    for row in c {
        let x = &row[0];
        if *x > Rational::from_integer(0.into()) {
            return 1;
        }
        if *x < Rational::from_integer(0.into()) {
            return -1;
        }
    }
    0
}

/// Recover a label (possibly of the negative root) for a root.
fn label_of(lattice: &Lattice, r: &Root) -> Option<RootLabel> {
    let n = lattice.n();
    let c = r.coords();
    let (a, b) = (c[0], &c[1..]);
    let sgn = if a < 0 || (a == 0 && b.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0) { -1 } else { 1 };
    let a = a * sgn;
    let b: Vec<i64> = b.iter().map(|x| x * sgn).collect();
    let idx = |v: i64| -> Vec<usize> { (0..n).filter(|&i| b[i] == v).map(|i| i + 1).collect() };
    match a {
        0 => {
            let p = idx(1);
            let m = idx(-1);
            Some(RootLabel::Hij(p[0], m[0]))
        }
        1 => {
            let m = idx(-1);
            Some(RootLabel::Hijk(m[0], m[1], m[2]))
        }
        2 if n == 6 => Some(RootLabel::H),
        2 if n == 7 => Some(RootLabel::Hi(idx(0)[0])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots_are_positive_and_positives_are_half() {
        for d in 2..=5 {
            let rs = RootSystem::for_degree(d).unwrap();
            for &s in rs.simple() {
                assert!(rs.is_positive(s));
            }
            let npos = (0..rs.len()).filter(|&i| rs.is_positive(i)).count();
            assert_eq!(npos * 2, rs.len());
            assert_eq!(rs.simple_of(rs.all_mask()).len(), rs.simple().len());
        }
    }

    #[test]
    fn labeled_families_are_positive() {
        let rs = RootSystem::for_degree(2).unwrap();
        for name in ["h12", "h67", "h123", "h567", "h1", "h7"] {
            assert!(rs.is_positive(rs.named(name).unwrap()), "{name}");
        }
    }

    #[test]
    fn closure_examples() {
        let rs = RootSystem::for_degree(3).unwrap();
        let m = rs.named_mask(&["h12", "h134"]).unwrap();
        assert_eq!(rs.closure(m).len(), 6);
        let m = rs.named_mask(&["h12", "h34", "h56", "h135"]).unwrap();
        assert_eq!(rs.closure(m).len(), 24);
        let m = rs.named_mask(&["h12"]).unwrap();
        assert_eq!(rs.closure(m).len(), 2);
    }

    #[test]
    fn labels_round_trip() {
        let rs = RootSystem::for_degree(2).unwrap();
        for i in 0..rs.len() {
            let l = rs.label(i);
            let r = rs.lattice().labeled_root(l).unwrap();
            assert!(r == *rs.root(i) || r == rs.root(i).neg());
        }
    }
}
