use std::sync::Arc;

use num_traits::{One, Zero};

use super::linalg::{inverse, mat_mul, RatMatrix};
use super::polynomial::{PolyRing, Polynomial};
use super::{int, rat, PolyError, Rational};
use crate::lattice::{Lattice, LatticeVector, Root, WeylElement};

/// Linear coordinates t1..tn with φ(ℓ) = 0 and φ(e_i) = t_i.
#[derive(Clone, Debug)]
pub struct TChart {
    lattice: Lattice,
    ring: Arc<PolyRing>,
}

impl TChart {
    pub fn new(lattice: Lattice) -> TChart {
        TChart { lattice, ring: PolyRing::t_vars(lattice.n()) }
    }

    pub fn for_degree(d: i64) -> Result<TChart, crate::lattice::LatticeError> {
        Ok(TChart::new(Lattice::new(d)?))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn t(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, i - 1)
    }

    pub fn vector_form(&self, v: &LatticeVector) -> Polynomial {
        let coeffs: Vec<Rational> = v.0[1..].iter().map(|&b| int(b)).collect();
        Polynomial::linear(&self.ring, &coeffs)
    }

    /// φ_t(α) = Σ b_i t_i for α = aℓ + Σ b_i e_i.
    pub fn root_form(&self, alpha: &Root) -> Polynomial {
        self.vector_form(alpha.vector())
    }

    /// The substitution P ↦ w·P with w·root_form(β) = root_form(wβ).
    pub fn weyl_substitution(&self, w: &WeylElement) -> Result<LinearSubstitution, PolyError> {
        w.validate(&self.lattice).map_err(|_| PolyError::NotWeyl)?;
        let n = self.n();
        // t'_i = ψ(e_i) - ψ(ℓ)/3 with ψ = φ_t ∘ w
        let third = rat(1, 3);
        let matrix: RatMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| int(w.m[j + 1][i + 1]) - int(w.m[j + 1][0]) * &third)
                    .collect()
            })
            .collect();
        Ok(LinearSubstitution::new(&self.ring, matrix))
    }

    pub fn reflection_substitution(&self, alpha: &Root) -> LinearSubstitution {
        self.weyl_substitution(&WeylElement::reflection(&self.lattice, alpha)).expect("reflections are Weyl")
    }

    /// Substitutions of the simple reflections h123, h12, h23, ...
    pub fn simple_substitutions(&self) -> Vec<LinearSubstitution> {
        self.lattice.simple_roots().iter().map(|r| self.reflection_substitution(r)).collect()
    }
}

/// t_i ↦ Σ_j matrix[i][j] t_j, applied to polynomials by substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubstitution {
    ring: Arc<PolyRing>,
    matrix: RatMatrix,
    images: Vec<Polynomial>,
    perm: Option<Vec<usize>>,
}

impl LinearSubstitution {
    pub fn new(ring: &Arc<PolyRing>, matrix: RatMatrix) -> LinearSubstitution {
        let images = matrix.iter().map(|row| Polynomial::linear(ring, row)).collect();
        let perm = as_permutation(&matrix);
        LinearSubstitution { ring: ring.clone(), matrix, images, perm }
    }

    pub fn identity(ring: &Arc<PolyRing>) -> LinearSubstitution {
        Self::new(ring, super::linalg::identity(ring.nvars()))
    }

    /// t ↦ -t.
    pub fn negation(ring: &Arc<PolyRing>) -> LinearSubstitution {
        let n = ring.nvars();
        let m = (0..n).map(|i| (0..n).map(|j| if i == j { int(-1) } else { Rational::zero() }).collect()).collect();
        Self::new(ring, m)
    }

    /// Swap of variables given 0-based images: t_i ↦ t_{perm[i]}.
    pub fn permutation(ring: &Arc<PolyRing>, perm: &[usize]) -> LinearSubstitution {
        let n = ring.nvars();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if perm[i] == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self::new(ring, m)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// `Some(perm)` when every t_i goes to a single t_{perm[i]} with coefficient 1.
    pub fn as_permutation(&self) -> Option<&[usize]> {
        self.perm.as_deref()
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        if let Some(perm) = &self.perm {
            return p.permute_vars(perm);
        }
        p.substitute(&self.images)
    }

    /// Apply to a product given by its factors.
    pub fn apply_product(&self, factors: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for f in factors {
            acc = &acc * &self.apply(f);
        }
        acc
    }

    /// `self ∘ other`: first `other`, then `self`, as operators on polynomials.
    pub fn compose(&self, other: &LinearSubstitution) -> LinearSubstitution {
        Self::new(&self.ring, mat_mul(&other.matrix, &self.matrix))
    }

    pub fn inverse(&self) -> Result<LinearSubstitution, PolyError> {
        Ok(Self::new(&self.ring, inverse(&self.matrix)?))
    }
}

fn as_permutation(m: &RatMatrix) -> Option<Vec<usize>> {
    let mut perm = Vec::with_capacity(m.len());
    for row in m {
        let nz: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
        match nz.as_slice() {
            [j] if row[*j].is_one() => perm.push(*j),
            _ => return None,
        }
    }
    let mut seen = vec![false; m.len()];
    for &p in &perm {
        if seen[p] {
            return None;
        }
        seen[p] = true;
    }
    Some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_form_examples() {
        let ch = TChart::for_degree(3).unwrap();
        let l = ch.lattice();
        assert_eq!(ch.root_form(&l.root_named("h12").unwrap()), &ch.t(1) - &ch.t(2));
        let h123 = ch.root_form(&l.root_named("h123").unwrap());
        assert_eq!(h123, -&(&(&ch.t(1) + &ch.t(2)) + &ch.t(3)));
        let h = ch.root_form(&l.root_named("h").unwrap());
        let mut s = Polynomial::zero(ch.ring());
        for i in 1..=6 {
            s = &s - &ch.t(i);
        }
        assert_eq!(h, s);
    }

    #[test]
    fn permutation_reflection_swaps() {
        let ch = TChart::for_degree(3).unwrap();
        let s = ch.reflection_substitution(&ch.lattice().root_named("h12").unwrap());
        assert_eq!(s.as_permutation(), Some(&[1, 0, 2, 3, 4, 5][..]));
        assert_eq!(s.apply(&ch.t(1)), ch.t(2));
    }

    #[test]
    fn reflection_negates_own_form() {
        let ch = TChart::for_degree(3).unwrap();
        let h123 = ch.lattice().root_named("h123").unwrap();
        let s = ch.reflection_substitution(&h123);
        assert_eq!(s.apply(&ch.root_form(&h123)), -&ch.root_form(&h123));
        let id = ch.weyl_substitution(&WeylElement::identity(ch.lattice())).unwrap();
        assert_eq!(id, LinearSubstitution::identity(ch.ring()));
    }

    #[test]
    fn equivariance_on_a4() {
        let ch = TChart::for_degree(5).unwrap();
        let l = *ch.lattice();
        let roots = l.enumerate_roots();
        for a in &roots {
            let s = ch.reflection_substitution(a);
            for b in &roots {
                let img = l.root(l.reflect(a, b.vector())).unwrap();
                assert_eq!(s.apply(&ch.root_form(b)), ch.root_form(&img));
            }
        }
    }
}
