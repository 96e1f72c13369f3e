use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::polynomial::Polynomial;
use super::{PolyError, Rational};

pub type RatMatrix = Vec<Vec<Rational>>;

/// Scale every column by the lcm of its denominators.
pub fn clear_denominators_columnwise(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut lcms = vec![BigInt::one(); ncols];
    for row in rows {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                lcms[j] = lcms[j].lcm(x.denom());
            }
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, x)| (x * Rational::from_integer(lcms[j].clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Fraction-free elimination. Returns the rank and whether every division was exact.
pub fn bareiss_rank_checked(mut a: Vec<Vec<BigInt>>) -> (usize, bool) {
    let m = a.len();
    if m == 0 {
        return (0, true);
    }
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut exact = true;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..n {
                let num = &piv * &row[j] - &f * &pivot_row[j];
                if num.is_zero() {
                    row[j] = BigInt::zero();
                    continue;
                }
                let (q, rem) = num.div_rem(&prev);
                if !rem.is_zero() {
                    exact = false;
                }
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    (r, exact)
}

pub fn bareiss_rank(a: Vec<Vec<BigInt>>) -> usize {
    bareiss_rank_checked(a).0
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    bareiss_rank(clear_denominators_columnwise(rows))
}

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_mod(x: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = x.numer().mod_floor(&p).to_u64()?;
    let d = x.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, PRIME - 2)))
}

/// Indices of a maximal set of rows independent modulo a large prime.
fn independent_rows_mod_p(rows: &[Vec<Rational>], ncols: usize) -> Option<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<u64> = row.iter().map(reduce_mod).collect::<Option<_>>()?;
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for j in 0..ncols {
                    if b[j] != 0 {
                        v[j] = (v[j] + PRIME - mulmod(f, b[j])) % PRIME;
                    }
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = powmod(v[pc], PRIME - 2);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv);
            }
            basis.push((pc, v));
            chosen.push(idx);
            if basis.len() == ncols {
                break;
            }
        }
    }
    Some(chosen)
}

fn primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let lr = Rational::from_integer(l);
    let mut v: Vec<BigInt> = row.iter().map(|x| (x * &lr).to_integer()).collect();
    primitive(&mut v);
    v
}

/// Reduced echelon form with integer rows; each entry is (pivot column, row).
fn integer_rref(rows: &[Vec<Rational>]) -> Vec<(usize, Vec<BigInt>)> {
    let mut piv: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for row in rows {
        let mut v = integer_row(row);
        for (pc, p) in &piv {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                let g = p[*pc].clone();
                for j in 0..v.len() {
                    if !p[j].is_zero() || !v[j].is_zero() {
                        v[j] = &g * &v[j] - &f * &p[j];
                    }
                }
                primitive(&mut v);
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else { continue };
        if v[pc].is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        for (_, p) in piv.iter_mut() {
            if !p[pc].is_zero() {
                let f = p[pc].clone();
                let g = v[pc].clone();
                for j in 0..p.len() {
                    if !p[j].is_zero() || !v[j].is_zero() {
                        p[j] = &g * &p[j] - &f * &v[j];
                    }
                }
                primitive(p);
            }
        }
        piv.push((pc, v));
    }
    piv.sort_by_key(|(pc, _)| *pc);
    piv
}

fn kernel_from_rref(piv: &[(usize, Vec<BigInt>)], ncols: usize) -> Vec<Vec<Rational>> {
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for (pc, _) in piv {
            v[*pc] = true;
        }
        v
    };
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&j| !is_pivot[j]) {
        let mut x = vec![Rational::zero(); ncols];
        x[f] = Rational::one();
        for (pc, p) in piv {
            if !p[f].is_zero() {
                x[*pc] = -Rational::new(p[f].clone(), p[*pc].clone());
            }
        }
        out.push(x);
    }
    out
}

/// Indices of a maximal linearly independent subset of rows, preferring earlier rows.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    if let Some(sel) = independent_rows_mod_p(rows, ncols) {
        let chosen: Vec<Vec<Rational>> = sel.iter().map(|&i| rows[i].clone()).collect();
        if rank(&chosen) == sel.len() && sel.len() == rank(rows) {
            return sel;
        }
    }
    let mut out: Vec<usize> = Vec::new();
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        chosen.push(row.clone());
        if rank(&chosen) == chosen.len() {
            out.push(i);
        } else {
            chosen.pop();
        }
    }
    out
}

/// Solver for coordinates with respect to a fixed list of independent rows.
#[derive(Clone, Debug)]
pub struct SpanCoordinates {
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    inv: RatMatrix,
}

impl SpanCoordinates {
    pub fn new(basis: &[Vec<Rational>]) -> Result<SpanCoordinates, PolyError> {
        let k = basis.len();
        let ncols = basis.first().map_or(0, |r| r.len());
        if basis.iter().any(|r| r.len() != ncols) {
            return Err(PolyError::Dimension("ragged basis".into()));
        }
        let cols: Vec<Vec<Rational>> = (0..ncols).map(|j| basis.iter().map(|r| r[j].clone()).collect()).collect();
        let pivots = if k == 0 { Vec::new() } else { independent_rows(&cols) };
        if pivots.len() != k {
            return Err(PolyError::Dimension("basis rows are dependent".into()));
        }
        let a: RatMatrix = pivots.iter().map(|&j| cols[j].clone()).collect();
        let inv = if k == 0 { Vec::new() } else { inverse(&a)? };
        Ok(SpanCoordinates { basis: basis.to_vec(), pivots, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `target`, or `None` when it lies outside the span.
    pub fn coordinates(&self, target: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.basis.len();
        let b: Vec<Rational> = self.pivots.iter().map(|&j| target[j].clone()).collect();
        let c: Vec<Rational> = (0..k).map(|i| (0..k).map(|r| &self.inv[i][r] * &b[r]).sum()).collect();
        for j in 0..target.len() {
            let v: Rational = (0..k).map(|i| &c[i] * &self.basis[i][j]).sum();
            if v != target[j] {
                return None;
            }
        }
        Some(c)
    }
}

/// Coordinates of `target` in the span of `basis` (rows), or `None` if it is outside the span.
pub fn coordinates(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    SpanCoordinates::new(basis).ok()?.coordinates(target)
}

/// Exact basis of `{x : rows * x = 0}`.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|i| {
                let mut x = vec![Rational::zero(); ncols];
                x[i] = Rational::one();
                x
            })
            .collect();
    }
    let Some(sel) = independent_rows_mod_p(rows, ncols) else {
        return kernel_from_rref(&integer_rref(rows), ncols);
    };
    let mut chosen: Vec<Vec<Rational>> = sel.iter().map(|&i| rows[i].clone()).collect();
    let mut used = vec![false; rows.len()];
    for &i in &sel {
        used[i] = true;
    }
    loop {
        let ker = kernel_from_rref(&integer_rref(&chosen), ncols);
        let violated: Vec<usize> = (0..rows.len())
            .filter(|&i| !used[i])
            .filter(|&i| ker.iter().any(|x| !dot(&rows[i], x).is_zero()))
            .collect();
        if violated.is_empty() {
            return ker;
        }
        for i in violated {
            used[i] = true;
            chosen.push(rows[i].clone());
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Solve `a x = b` for square invertible `a`, several right-hand sides (columns of `b`).
pub fn solve(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix, PolyError> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut aug: RatMatrix = (0..n)
        .map(|i| a[i].iter().chain(b[i].iter()).cloned().collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero()).ok_or(PolyError::Singular)?;
        aug.swap(c, p);
        let inv = Rational::one() / &aug[c][c];
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for j in 0..n + m {
                    if !pivot[j].is_zero() {
                        row[j] -= &f * &pivot[j];
                    }
                }
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn inverse(a: &RatMatrix) -> Result<RatMatrix, PolyError> {
    solve(a, &identity(a.len()))
}

pub fn determinant(a: &RatMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det *= &m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for j in c..n {
                    row[j] -= &f * &pivot[j];
                }
            }
        }
    }
    det
}

/// Determinant of a polynomial matrix by fraction-free elimination with exact division.
pub fn poly_determinant(a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    assert!(n > 0);
    if n <= 8 {
        subset_expansion(a)
    } else {
        bareiss_poly_determinant(a)
    }
}

fn bareiss_poly_determinant(a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    let mut m: Vec<Vec<Polynomial>> = a.to_vec();
    let mut prev = Polynomial::one(&ring);
    let mut sign = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Polynomial::zero(&ring) };
        if p != c {
            m.swap(c, p);
            sign = !sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = &(&m[c][c] * &m[i][j]) - &(&m[i][c] * &m[c][j]);
                m[i][j] = num.exact_divide(&prev).expect("fraction-free step must divide");
            }
            m[i][c] = Polynomial::zero(&ring);
        }
        prev = m[c][c].clone();
    }
    if sign {
        -&m[n - 1][n - 1]
    } else {
        m[n - 1][n - 1].clone()
    }
}

/// Laplace expansion along rows, memoized by the set of columns used so far.
fn subset_expansion(a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    let mut minors: Vec<Option<Polynomial>> = vec![None; 1 << n];
    minors[0] = Some(Polynomial::one(&ring));
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Polynomial::zero(&ring);
        for (pos, j) in (0..n).filter(|j| mask >> j & 1 == 1).enumerate() {
            if a[row][j].is_zero() {
                continue;
            }
            let Some(sub) = &minors[mask & !(1 << j)] else { continue };
            if sub.is_zero() {
                continue;
            }
            let term = &a[row][j] * sub;
            acc = if (row + pos).is_multiple_of(2) { &acc + &term } else { &acc - &term };
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << n) - 1].take().expect("full minor")
}

/// Dimension of `{M : M G = G M for every G}`.
pub fn commutant_dimension(gens: &[RatMatrix]) -> Result<usize, PolyError> {
    let Some(first) = gens.first() else { return Err(PolyError::Dimension("no generators".into())) };
    let k = first.len();
    for g in gens {
        if g.len() != k || g.iter().any(|r| r.len() != k) {
            return Err(PolyError::Dimension("generator sizes differ".into()));
        }
    }
    let nvars = k * k;
    let idx = |a: usize, b: usize| a * k + b;
    let mut rows = Vec::new();
    for g in gens {
        for a in 0..k {
            for b in 0..k {
                let mut row = vec![Rational::zero(); nvars];
                for c in 0..k {
                    if !g[c][b].is_zero() {
                        row[idx(a, c)] += &g[c][b];
                    }
                    if !g[a][c].is_zero() {
                        row[idx(c, b)] -= &g[a][c];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(kernel(&rows, nvars).len())
}

/// Rank and coordinate vectors for a list of polynomials over their joint monomial support.
pub fn coefficient_matrix(polys: &[Polynomial]) -> (Vec<super::Monomial>, RatMatrix) {
    let mut mons: Vec<super::Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().keys().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    mons.reverse();
    let rows = polys.iter().map(|p| p.coefficient_vector(&mons)).collect();
    (mons, rows)
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    #[test]
    fn expansion_matches_bareiss() {
        let ring = crate::poly::PolyRing::t_vars(3);
        let t = |i| Polynomial::var(&ring, i);
        let m: Vec<Vec<Polynomial>> = (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| &t((r + c) % 3).pow((r * c % 3) as u32) + &Polynomial::from_int(&ring, (r as i64) - (c as i64)))
                    .collect()
            })
            .collect();
        assert_eq!(subset_expansion(&m), bareiss_poly_determinant(&m));
        assert!(!subset_expansion(&m).is_zero());
    }

    fn m(rows: &[&[i64]]) -> RatMatrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
        assert_eq!(rank(&m(&[&[2, 4, 6], &[1, 2, 3]])), 1);
        assert_eq!(rank(&[vec![rat(1, 2), rat(1, 3)], vec![rat(3, 1), rat(2, 1)]]), 1);
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&m(&[&[1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&[rat(1, 1), rat(2, 1), rat(3, 1)], v).is_zero());
        }
    }

    #[test]
    fn commutant_of_identity_is_everything() {
        assert_eq!(commutant_dimension(&[identity(3)]).unwrap(), 9);
    }

    #[test]
    fn commutant_of_swap_and_diag() {
        let s = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(commutant_dimension(std::slice::from_ref(&s)).unwrap(), 2);
        let d = m(&[&[1, 0], &[0, -1]]);
        assert_eq!(commutant_dimension(&[s, d]).unwrap(), 1);
    }

    #[test]
    fn solve_and_determinant() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&a), rat(5, 1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
    }
}
