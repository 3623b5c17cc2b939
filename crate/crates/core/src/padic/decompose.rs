//! Bruhat-type decompositions used throughout the local computations.

use num_traits::{One, Zero};

use super::matrix::PadicMatrix;
use super::scalar::val_or_inf;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::symring::{q_pow, Q};

/// Result of g = b·w·i with b upper triangular, w a permutation, i ∈ Iw.
#[derive(Clone, Debug)]
pub struct BruhatDecomposition {
    pub b: PadicMatrix,
    pub w: Perm,
    pub i: PadicMatrix,
}

/// Cell label and torus valuations only (the fast path used by evaluations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatCell {
    pub w: Perm,
    /// v_p of the diagonal entries of b.
    pub torus: Vec<i64>,
}

struct Reducer {
    n: usize,
    a: PadicMatrix,
    // running b = b'^{-1} and i = i'^{-1}
    b: Option<PadicMatrix>,
    i: Option<PadicMatrix>,
    pivots: Vec<Q>,
    cols: Vec<usize>,
}

impl Reducer {
    fn run(g: &PadicMatrix, p: u64, track: bool) -> Result<Reducer> {
        let n = g.size();
        let mut r = Reducer {
            n,
            a: g.clone(),
            b: track.then(|| PadicMatrix::identity(n)),
            i: track.then(|| PadicMatrix::identity(n)),
            pivots: vec![Q::zero(); n],
            cols: vec![usize::MAX; n],
        };
        let mut used = vec![false; n];
        for row in (0..n).rev() {
            // clear used columns with the finished rows below
            for k in row + 1..n {
                let c = r.cols[k];
                let x = r.a[(row, c)].clone();
                if !x.is_zero() {
                    r.a[(row, c)] = Q::zero();
                    if let Some(b) = r.b.as_mut() {
                        // b ← b·(1 + x e_{row,k})
                        for t in 0..n {
                            let y = &b[(t, row)] * &x;
                            if !y.is_zero() {
                                b[(t, k)] += y;
                            }
                        }
                    }
                }
            }
            // pivot: smallest valuation, then smallest column index
            let mut best: Option<(i64, usize)> = None;
            for c in 0..n {
                if used[c] || r.a[(row, c)].is_zero() {
                    continue;
                }
                let v = val_or_inf(&r.a[(row, c)], p);
                if best.map(|(bv, _)| v < bv).unwrap_or(true) {
                    best = Some((v, c));
                }
            }
            let (_, c) = best.ok_or(Error::Singular)?;
            let pv = r.a[(row, c)].clone();
            for j in 0..n {
                if j == c || used[j] || r.a[(row, j)].is_zero() {
                    continue;
                }
                let x = &r.a[(row, j)] / &pv;
                // column op col_j -= x·col_c (an Iwahori element by pivot choice)
                for t in 0..row + 1 {
                    let y = &r.a[(t, c)] * &x;
                    if !y.is_zero() {
                        r.a[(t, j)] -= y;
                    }
                }
                if let Some(i) = r.i.as_mut() {
                    // i ← (1 + x e_{c,j})·i
                    for t in 0..n {
                        let y = &i[(j, t)] * &x;
                        if !y.is_zero() {
                            i[(c, t)] += y;
                        }
                    }
                }
            }
            // scale row to the unit vector
            if let Some(b) = r.b.as_mut() {
                for t in 0..n {
                    if !b[(t, row)].is_zero() {
                        b[(t, row)] *= &pv;
                    }
                }
            }
            for j in 0..n {
                r.a[(row, j)] = Q::zero();
            }
            r.a[(row, c)] = Q::one();
            r.pivots[row] = pv;
            r.cols[row] = c;
            used[c] = true;
        }
        Ok(r)
    }

    fn perm(&self) -> Perm {
        // row r has its 1 in column cols[r], so w(cols[r]) = r
        let mut w = vec![0; self.n];
        for (r, &c) in self.cols.iter().enumerate() {
            w[c] = r;
        }
        Perm(w)
    }
}

/// g = b·w·i with b ∈ B(Q_p), w a permutation matrix, i ∈ Iw.
pub fn iwahori_bruhat_decompose(g: &PadicMatrix, p: u64) -> Result<BruhatDecomposition> {
    let r = Reducer::run(g, p, true)?;
    let w = r.perm();
    Ok(BruhatDecomposition { b: r.b.unwrap(), w, i: r.i.unwrap() })
}

/// Cell label and the valuations of the torus part, without building b and i.
pub fn bruhat_cell(g: &PadicMatrix, p: u64) -> Result<BruhatCell> {
    let r = Reducer::run(g, p, false)?;
    let torus = r.pivots.iter().map(|x| val_or_inf(x, p)).collect();
    Ok(BruhatCell { w: r.perm(), torus })
}

/// Coset of the cell of g in B(Q_p)\GL_n / J̄_r, returned as the sorted image
/// σ({0..r−1}) of a representative σ.
pub fn opposite_parahoric_cell(g: &PadicMatrix, r: usize, p: u64) -> Result<Vec<usize>> {
    let n = g.size();
    let w0 = Perm::longest(n);
    let cell = bruhat_cell(&g.mul(&PadicMatrix::perm(&w0)), p)?;
    // g = b·w'·i·w0 = b·(w'w0)·(w0 i w0), the last factor in the opposite Iwahori
    let sigma = cell.w.compose(&w0);
    let mut label: Vec<usize> = (0..r).map(|i| sigma.apply(i)).collect();
    label.sort_unstable();
    Ok(label)
}

/// The label of a permutation's coset in W_n/W_{r,n−r}.
pub fn coset_label(sigma: &Perm, r: usize) -> Vec<usize> {
    let mut label: Vec<usize> = (0..r).map(|i| sigma.apply(i)).collect();
    label.sort_unstable();
    label
}

/// 1 + p^β w_n X = R·S with R upper unipotent and S lower triangular.
pub fn iwahori_factorize_unit(x: &PadicMatrix, beta: u32, p: u64) -> Result<(PadicMatrix, PadicMatrix)> {
    let n = x.size();
    let w = PadicMatrix::antidiag(n);
    let a = PadicMatrix::identity(n).add(&w.mul(x).scale(&q_pow(p, beta as i64)));
    let (l, u) = w.mul(&a).mul(&w).lu_doolittle().ok_or(Error::Singular)?;
    Ok((w.mul(&l).mul(&w), w.mul(&u).mul(&w)))
}

/// g = b̄·u·diag(h_1, h_2) on the open cell.
#[derive(Clone, Debug)]
pub struct OpenCell {
    pub bbar: PadicMatrix,
    pub h1: PadicMatrix,
    pub h2: PadicMatrix,
}

/// Which torus normalisation to use in the inner UL step. The two choices
/// differ by the stabiliser of u and are used to test well-definedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellGauge {
    UnitLower,
    UnitUpper,
}

/// u = (1 w_n; 0 1) of size 2n.
pub fn u_matrix(n: usize) -> PadicMatrix {
    let one = PadicMatrix::identity(n);
    PadicMatrix::block(&one, &PadicMatrix::antidiag(n), &PadicMatrix::zeros(n), &one)
}

pub fn open_cell_factorize(g: &PadicMatrix) -> Option<OpenCell> {
    open_cell_factorize_gauged(g, CellGauge::UnitLower)
}

/// Returns `None` when g is outside B̄·u·H.
///
/// With blocks (A B; C D), b̄ = (P 0; Q R) and h = diag(h_1, h_2), one needs
/// A = P h_1, B = P w h_2 and (D − C A^{-1} B) B^{-1} = R w P^{-1}; the last
/// is a UL factorisation of w·(D − C A^{-1} B) B^{-1}.
pub fn open_cell_factorize_gauged(g: &PadicMatrix, gauge: CellGauge) -> Option<OpenCell> {
    let n = g.size() / 2;
    let (a, b, c, d) = g.blocks();
    let ainv = a.inverse().ok()?;
    let binv = b.inverse().ok()?;
    let w = PadicMatrix::antidiag(n);
    let m = d.sub(&c.mul(&ainv).mul(&b)).mul(&binv);
    let k = w.mul(&m);
    // K = U·L  ⇔  (wKw) = (wUw)(wLw) is an LU factorisation
    let kk = w.mul(&k).mul(&w);
    let (lo, up) = match gauge {
        CellGauge::UnitLower => {
            // want L unit lower ⇒ wLw unit upper: LU of kk with unit upper factor
            let (l1, u1) = kk.transpose().lu_doolittle()?;
            (u1.transpose(), l1.transpose())
        }
        CellGauge::UnitUpper => kk.lu_doolittle()?,
    };
    let uu = w.mul(&lo).mul(&w);
    let ll = w.mul(&up).mul(&w);
    let linv = ll.inverse().ok()?;
    let pmat = linv.clone();
    let rmat = w.mul(&uu).mul(&w);
    let h1 = ll.mul(&a);
    let h2 = w.mul(&ll).mul(&b);
    let qmat = c.mul(&ainv).mul(&linv);
    let bbar = PadicMatrix::block(&pmat, &PadicMatrix::zeros(n), &qmat, &rmat);
    if !bbar.is_lower_triangular() {
        return None;
    }
    let recon = bbar.mul(&u_matrix(n)).mul(&PadicMatrix::block_diag(&h1, &h2));
    if &recon != g {
        return None;
    }
    Some(OpenCell { bbar, h1, h2 })
}

/// λ(b̄)·det(h_1)^{−j}·det(h_2)^{sw+j}.
pub fn open_cell_character(cell: &OpenCell, lambda: &[i64], sw: i64, j: i64) -> Q {
    let mut v = Q::one();
    for (i, l) in lambda.iter().enumerate() {
        v *= qpow_q(&cell.bbar[(i, i)], *l);
    }
    v * qpow_q(&cell.h1.det(), -j) * qpow_q(&cell.h2.det(), sw + j)
}

pub fn qpow_q(x: &Q, k: i64) -> Q {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// g = n̄·t·n with n̄ ∈ N̄, t diagonal, n ∈ N (leading minors nonzero).
pub fn iwahori_factorization(g: &PadicMatrix) -> Option<(PadicMatrix, PadicMatrix, PadicMatrix)> {
    let (l, u) = g.lu_doolittle()?;
    let t = PadicMatrix::diag(u.diagonal());
    let tinv = t.inverse().ok()?;
    Some((l, t, tinv.mul(&u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::q_int;

    #[test]
    fn longest_element_cell() {
        let w = PadicMatrix::antidiag(4);
        let d = iwahori_bruhat_decompose(&w, 3).unwrap();
        assert_eq!(d.w, Perm::longest(4));
        assert_eq!(d.b, PadicMatrix::identity(4));
        assert_eq!(d.i, PadicMatrix::identity(4));
    }

    #[test]
    fn antidiag_times_torus() {
        let p = 3;
        let g = PadicMatrix::antidiag(2).mul(&PadicMatrix::diag_ppow(p, &[1, 0]));
        let d = iwahori_bruhat_decompose(&g, p).unwrap();
        assert_eq!(d.w, Perm(vec![1, 0]));
        assert_eq!(d.b.mul(&PadicMatrix::perm(&d.w)).mul(&d.i), g);
        assert!(d.i.in_iwahori(p));
        // g = diag(1, p)·w
        assert_eq!(bruhat_cell(&g, p).unwrap().torus, vec![0, 1]);
    }

    #[test]
    fn unit_factorization_rank_one() {
        let x = PadicMatrix::from_ints(&[&[5]]);
        let (r, s) = iwahori_factorize_unit(&x, 1, 3).unwrap();
        assert_eq!(r, PadicMatrix::identity(1));
        assert_eq!(s, PadicMatrix::from_ints(&[&[16]]));
    }

    #[test]
    fn u_is_its_own_cell() {
        let c = open_cell_factorize(&u_matrix(2)).unwrap();
        assert_eq!(c.bbar, PadicMatrix::identity(4));
        assert_eq!(c.h1, PadicMatrix::identity(2));
        assert_eq!(c.h2, PadicMatrix::identity(2));
        assert!(open_cell_factorize(&PadicMatrix::identity(4)).is_none());
    }

    #[test]
    fn opposite_identity() {
        let g = PadicMatrix::identity(3);
        assert_eq!(opposite_parahoric_cell(&g, 1, 2).unwrap(), vec![0]);
        let _ = q_int(0);
    }
}
