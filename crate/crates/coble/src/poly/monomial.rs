use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector. Ordered graded-lexicographically with t1 > t2 > ...
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if every resulting exponent is nonnegative (or `laurent`).
    pub fn div(&self, other: &Monomial, laurent: bool) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let e = a - b;
            if e < 0 && !laurent {
                return None;
            }
            out.push(e);
        }
        Some(Monomial(out))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut out: SmallVec<[i32; 8]> = SmallVec::from_elem(0, self.0.len());
        for (i, &e) in self.0.iter().enumerate() {
            out[perm[i]] = e;
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables, descending order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; nvars];
    fn rec(i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_slice(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, deg as i32, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_prefers_degree_then_first_variable() {
        let a = Monomial::from_slice(&[1, 0]);
        let b = Monomial::from_slice(&[0, 1]);
        let c = Monomial::from_slice(&[0, 2]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(7, 7).len(), 1716);
        assert_eq!(monomials_of_degree(6, 9).len(), 2002);
        let m = monomials_of_degree(3, 2);
        assert_eq!(m.len(), 6);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
    }
}
