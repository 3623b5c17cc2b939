use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{congruent, is_integral, is_unit, val_or_inf};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::symring::{q_int, q_pow, Q};

/// Square matrix over Q, read p-adically. Row-major storage.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicMatrix {
    n: usize,
    a: Vec<Q>,
}

impl Index<(usize, usize)> for PadicMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.a[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for PadicMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.a[i * self.n + j]
    }
}

impl PadicMatrix {
    pub fn zeros(n: usize) -> Self {
        PadicMatrix { n, a: vec![Q::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        PadicMatrix { n, a: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|x| q_int(*x)).collect()).collect())
    }

    pub fn diag(d: Vec<Q>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, x) in d.into_iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// diag(p^{e_0}, …, p^{e_{n−1}}).
    pub fn diag_ppow(p: u64, exps: &[i64]) -> Self {
        Self::diag(exps.iter().map(|e| q_pow(p, *e)).collect())
    }

    pub fn perm(w: &Perm) -> Self {
        let n = w.len();
        let mut m = Self::zeros(n);
        for j in 0..n {
            m[(w.apply(j), j)] = Q::one();
        }
        m
    }

    /// Antidiagonal w_n.
    pub fn antidiag(n: usize) -> Self {
        Self::perm(&Perm::longest(n))
    }

    /// (a b; c d) from four n×n blocks.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.n;
        let mut m = Self::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[(i, j)].clone();
                m[(i, j + n)] = b[(i, j)].clone();
                m[(i + n, j)] = c[(i, j)].clone();
                m[(i + n, j + n)] = d[(i, j)].clone();
            }
        }
        m
    }

    pub fn block_diag(a: &Self, d: &Self) -> Self {
        let z = Self::zeros(a.n);
        Self::block(a, &z, &z, d)
    }

    /// The four n×n blocks of a 2n×2n matrix.
    pub fn blocks(&self) -> (Self, Self, Self, Self) {
        assert!(self.n % 2 == 0);
        let h = self.n / 2;
        let sub = |r0: usize, c0: usize| {
            let mut m = Self::zeros(h);
            for i in 0..h {
                for j in 0..h {
                    m[(i, j)] = self[(r0 + i, c0 + j)].clone();
                }
            }
            m
        };
        (sub(0, 0), sub(0, h), sub(h, 0), sub(h, h))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Q] {
        &self.a
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = &self[(i, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &o[(k, j)];
                    if !y.is_zero() {
                        m.a[i * n + j] += x * y;
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        PadicMatrix { n: self.n, a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PadicMatrix { n: self.n, a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        PadicMatrix { n: self.n, a: self.a.iter().map(|x| x * s).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn det(&self) -> Q {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|r| !a[(*r, c)].is_zero()) else {
                return Q::zero();
            };
            if piv != c {
                for j in 0..n {
                    a.a.swap(c * n + j, piv * n + j);
                }
                det = -det;
            }
            let pv = a[(c, c)].clone();
            det *= &pv;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pv;
                for j in c..n {
                    let t = &a[(c, j)] * &f;
                    a[(r, j)] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|r| !a[(*r, c)].is_zero()).ok_or(Error::Singular)?;
            if piv != c {
                for j in 0..n {
                    a.a.swap(c * n + j, piv * n + j);
                    inv.a.swap(c * n + j, piv * n + j);
                }
            }
            let s = a[(c, c)].recip();
            for j in 0..n {
                a[(c, j)] *= &s;
                inv[(c, j)] *= &s;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let t = &a[(c, j)] * &f;
                    a[(r, j)] -= t;
                    let t = &inv[(c, j)] * &f;
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn min_valuation(&self, p: u64) -> i64 {
        self.a.iter().map(|x| val_or_inf(x, p)).min().unwrap_or(i64::MAX)
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.a.iter().all(|x| is_integral(x, p))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_upper_triangular() && self.is_lower_triangular()
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.n).all(|i| self[(i, i)].is_one())
    }

    pub fn in_gl_zp(&self, p: u64) -> bool {
        self.is_integral(p) && is_unit(&self.det(), p)
    }

    /// Iwahori subgroup: GL(Z_p) and upper triangular mod p.
    pub fn in_iwahori(&self, p: u64) -> bool {
        self.in_gl_zp(p)
            && (0..self.n).all(|i| (0..i).all(|j| val_or_inf(&self[(i, j)], p) >= 1))
    }

    /// N(Z_p): upper unipotent, integral.
    pub fn in_n_zp(&self, p: u64) -> bool {
        self.is_upper_triangular() && self.has_unit_diagonal() && self.is_integral(p)
    }

    /// N̄(pZ_p): lower unipotent with entries below the diagonal in pZ_p.
    pub fn in_nbar_p(&self, p: u64) -> bool {
        self.is_lower_triangular()
            && self.has_unit_diagonal()
            && (0..self.n).all(|i| (0..i).all(|j| val_or_inf(&self[(i, j)], p) >= 1))
    }

    /// Block diagonal with two n×n blocks.
    pub fn in_h(&self) -> bool {
        if self.n % 2 != 0 {
            return false;
        }
        let (_, b, c, _) = self.blocks();
        b.a.iter().all(Zero::is_zero) && c.a.iter().all(Zero::is_zero)
    }

    pub fn in_h_zp(&self, p: u64) -> bool {
        self.in_h() && self.in_gl_zp(p)
    }

    /// Entrywise congruence mod p^k (both integral).
    pub fn congruent(&self, o: &Self, p: u64, k: u32) -> bool {
        self.a.iter().zip(&o.a).all(|(x, y)| congruent(x, y, p, k))
    }

    pub fn diagonal(&self) -> Vec<Q> {
        (0..self.n).map(|i| self[(i, i)].clone()).collect()
    }

    /// Doolittle factorisation without pivoting: self = L·U, L unit lower.
    pub fn lu_doolittle(&self) -> Option<(Self, Self)> {
        let n = self.n;
        let mut l = Self::identity(n);
        let mut u = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = self[(i, j)].clone();
                for k in 0..i {
                    s -= &l[(i, k)] * &u[(k, j)];
                }
                u[(i, j)] = s;
            }
            if u[(i, i)].is_zero() {
                return None;
            }
            for j in i + 1..n {
                let mut s = self[(j, i)].clone();
                for k in 0..i {
                    s -= &l[(j, k)] * &u[(k, i)];
                }
                l[(j, i)] = s / &u[(i, i)];
            }
        }
        Some((l, u))
    }

    /// Embed integer matrix rows quickly from BigInt.
    pub fn from_bigints(n: usize, v: Vec<BigInt>) -> Self {
        assert_eq!(v.len(), n * n);
        PadicMatrix { n, a: v.into_iter().map(Q::from_integer).collect() }
    }
}

impl fmt::Display for PadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_det_roundtrip() {
        let m = PadicMatrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), PadicMatrix::identity(3));
        assert_eq!(m.det(), q_int(18));
        assert!(PadicMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn perm_matrices_compose() {
        let a = Perm(vec![1, 2, 0]);
        let b = Perm(vec![2, 1, 0]);
        assert_eq!(
            PadicMatrix::perm(&a).mul(&PadicMatrix::perm(&b)),
            PadicMatrix::perm(&a.compose(&b))
        );
    }

    #[test]
    fn membership_consistency() {
        let p = 3;
        let g = PadicMatrix::from_ints(&[&[1, 5], &[3, 2]]);
        assert!(g.in_iwahori(p));
        assert!(g.in_gl_zp(p));
        let h = PadicMatrix::from_ints(&[&[1, 5], &[1, 2]]);
        assert!(!h.in_iwahori(p));
        assert!(PadicMatrix::from_ints(&[&[1, 0], &[3, 1]]).in_nbar_p(p));
    }

    #[test]
    fn doolittle() {
        let m = PadicMatrix::from_ints(&[&[4, 3], &[6, 3]]);
        let (l, u) = m.lu_doolittle().unwrap();
        assert_eq!(l.mul(&u), m);
        assert!(l.is_lower_triangular() && u.is_upper_triangular());
    }
}
