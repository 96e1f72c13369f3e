use super::{Lattice, LatticeError, LatticeVector, Root};

/// Integer matrix on Λ_{1,n} (acting on coordinate columns) that preserves the pairing and fixes k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub m: Vec<Vec<i64>>,
    pub word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(lattice: &Lattice) -> WeylElement {
        let n = lattice.dim();
        let m = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        WeylElement { m, word: Some(Vec::new()) }
    }

    pub fn reflection(lattice: &Lattice, alpha: &Root) -> WeylElement {
        let n = lattice.dim();
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let img = lattice.reflect(alpha, &LatticeVector(e));
            for i in 0..n {
                m[i][j] = img.0[i];
            }
        }
        WeylElement { m, word: None }
    }

    /// Simple reflection number `i` in the order h123, h12, h23, ...
    pub fn simple(lattice: &Lattice, i: usize) -> WeylElement {
        let mut w = Self::reflection(lattice, &lattice.simple_roots()[i]);
        w.word = Some(vec![i]);
        w
    }

    pub fn from_matrix(lattice: &Lattice, m: Vec<Vec<i64>>) -> Result<WeylElement, LatticeError> {
        let w = WeylElement { m, word: None };
        w.validate(lattice)?;
        Ok(w)
    }

    pub fn validate(&self, lattice: &Lattice) -> Result<(), LatticeError> {
        let n = lattice.dim();
        if self.m.len() != n || self.m.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotWeyl);
        }
        let k = lattice.canonical_class();
        if self.apply(&k) != k {
            return Err(LatticeError::NotWeyl);
        }
        let cols: Vec<LatticeVector> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                self.apply(&LatticeVector(e))
            })
            .collect();
        for a in 0..n {
            for b in 0..n {
                let want = if a != b { 0 } else if a == 0 { 1 } else { -1 };
                if lattice.pairing(&cols[a], &cols[b]) != want {
                    return Err(LatticeError::NotWeyl);
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector(self.m.iter().map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn apply_root(&self, r: &Root) -> Root {
        Root(self.apply(r.vector()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.m.len();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = (0..n).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElement { m, word }
    }

    /// J wᵀ J with J the Gram matrix.
    pub fn inverse(&self) -> WeylElement {
        let n = self.m.len();
        let sign = |i: usize| if i == 0 { 1 } else { -1 };
        let m = (0..n).map(|i| (0..n).map(|j| sign(i) * self.m[j][i] * sign(j)).collect()).collect();
        let word = self.word.as_ref().map(|w| w.iter().rev().copied().collect());
        WeylElement { m, word }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections_are_weyl_involutions() {
        let l = Lattice::new(2).unwrap();
        for r in l.enumerate_roots().iter().take(20) {
            let w = WeylElement::reflection(&l, r);
            w.validate(&l).unwrap();
            assert_eq!(w.compose(&w).m, WeylElement::identity(&l).m);
            assert_eq!(w.inverse().m, w.m);
        }
    }

    #[test]
    fn inverse_of_product() {
        let l = Lattice::new(3).unwrap();
        let a = WeylElement::simple(&l, 0);
        let b = WeylElement::simple(&l, 3);
        let ab = a.compose(&b);
        assert_eq!(ab.compose(&ab.inverse()).m, WeylElement::identity(&l).m);
    }

    #[test]
    fn rejects_non_weyl() {
        let l = Lattice::new(5).unwrap();
        let mut m = WeylElement::identity(&l).m;
        m[0][0] = 2;
        assert!(WeylElement::from_matrix(&l, m).is_err());
    }
}
