//! H-invariant vectors in GL(2n) representations, their p-adic interpolation
//! over a weight disc, and the κ maps on distributions.

pub mod distrib;
pub mod series;

use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::padic::decompose::{iwahori_factorization, qpow_q};
use crate::padic::scalar::is_unit;
use crate::padic::{open_cell_character, open_cell_factorize, u_matrix, OpenCell, PadicMatrix};
use crate::rootspin::{is_dominant, purity_weight};
use crate::shalikazeta::support::{rand_int, rand_unit};
use crate::symring::{q_pow, Q};

pub use distrib::{kappa_family, kappa_lambda, kappa_lambda_j, moment, pushforward, r_lambda_pair, FiniteDistribution, LocFunction, Push};
pub use series::{FamilyWeight, Precision, Series};

/// A pure dominant weight of GL(2n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureWeight {
    pub lambda: Vec<i64>,
    pub sw: i64,
}

impl PureWeight {
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        if lambda.is_empty() || lambda.len() % 2 != 0 {
            return Err(Error::Precondition("weight length must be 2n".into()));
        }
        if !is_dominant(&lambda) {
            return Err(Error::Precondition(format!("{:?} is not dominant", lambda)));
        }
        let sw = purity_weight(&lambda).ok_or_else(|| Error::Precondition(format!("{:?} is not pure", lambda)))?;
        Ok(PureWeight { lambda, sw })
    }

    pub fn n(&self) -> usize {
        self.lambda.len() / 2
    }

    /// Crit(λ) = [−λ_n, −λ_{n+1}].
    pub fn crit(&self) -> std::ops::RangeInclusive<i64> {
        let n = self.n();
        -self.lambda[n - 1]..=-self.lambda[n]
    }
}

pub fn crit_range(lambda: &[i64]) -> Result<std::ops::RangeInclusive<i64>> {
    Ok(PureWeight::new(lambda.to_vec())?.crit())
}

/// The basic H-invariant vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basic {
    /// v_(i), 1 ≤ i ≤ n − 1.
    Alpha(usize),
    /// H acts by det(h_1).
    N1,
    /// H acts by det(h_2).
    N2,
    Det,
}

/// α_i = (1^i, 0, …, 0, (−1)^i), α_n = (1^n, 0^n), α_0 = (1^{2n}).
pub fn alpha_weight(n: usize, i: usize) -> Vec<i64> {
    let mut w = vec![0; 2 * n];
    if i == 0 {
        return vec![1; 2 * n];
    }
    for k in 0..i {
        w[k] = 1;
        if i < n {
            w[2 * n - 1 - k] = -1;
        }
    }
    w
}

impl Basic {
    /// (λ, sw, j) for the open-cell character realising this vector.
    pub fn data(&self, n: usize) -> (Vec<i64>, i64, i64) {
        match *self {
            Basic::Alpha(i) => (alpha_weight(n, i), 0, 0),
            Basic::N1 => (alpha_weight(n, n), 1, -1),
            Basic::N2 => (alpha_weight(n, n), 1, 0),
            Basic::Det => (alpha_weight(n, 0), 2, -1),
        }
    }

    /// Value at g, `None` off the open cell.
    pub fn eval(&self, g: &PadicMatrix) -> Option<Q> {
        open_cell_factorize(g).map(|c| self.eval_cell(&c))
    }

    pub fn eval_cell(&self, c: &OpenCell) -> Q {
        let (l, sw, j) = self.data(c.h1.size());
        open_cell_character(c, &l, sw, j)
    }
}

/// Exponents of the basic vectors in v_{λ,j}.
pub fn product_exponents(w: &PureWeight, j: i64) -> Vec<(Basic, i64)> {
    let n = w.n();
    let l = &w.lambda;
    let mut out: Vec<(Basic, i64)> = (1..n).map(|i| (Basic::Alpha(i), l[i - 1] - l[i])).collect();
    out.push((Basic::N1, -l[n] - j));
    out.push((Basic::N2, l[n - 1] + j));
    out.push((Basic::Det, l[n]));
    out
}

/// v_{λ,j}(g) from the open-cell factorisation; zero off the cell.
pub fn v_lambda_j(w: &PureWeight, j: i64, g: &PadicMatrix) -> Result<Q> {
    if !w.crit().contains(&j) {
        return Err(Error::Precondition(format!("j = {} is not critical for {:?}", j, w.lambda)));
    }
    Ok(open_cell_factorize(g).map(|c| open_cell_character(&c, &w.lambda, w.sw, j)).unwrap_or_default())
}

/// v_{λ,j}(g) as a product of basic vectors.
pub fn v_lambda_j_product(w: &PureWeight, j: i64, g: &PadicMatrix) -> Result<Q> {
    if !w.crit().contains(&j) {
        return Err(Error::Precondition(format!("j = {} is not critical for {:?}", j, w.lambda)));
    }
    let c = match open_cell_factorize(g) {
        Some(c) => c,
        None => return Ok(Q::default()),
    };
    let mut acc = Q::one();
    for (b, e) in product_exponents(w, j) {
        acc *= qpow_q(&b.eval_cell(&c), e);
    }
    Ok(acc)
}

/// N^β: integral upper unipotent and ≡ u mod p^β.
pub fn in_n_beta(g: &PadicMatrix, beta: u32, p: u64) -> bool {
    g.size() % 2 == 0 && g.in_n_zp(p) && g.congruent(&u_matrix(g.size() / 2), p, beta)
}

/// Iw^β = N̄(pZ_p)·T(Z_p)·N^β.
pub fn in_iw_beta(g: &PadicMatrix, beta: u32, p: u64) -> bool {
    iw_beta_parts(g, beta, p).is_some()
}

fn iw_beta_parts(g: &PadicMatrix, beta: u32, p: u64) -> Option<(PadicMatrix, PadicMatrix, PadicMatrix)> {
    let (nb, t, n) = iwahori_factorization(g)?;
    let ok = nb.in_nbar_p(p) && t.diagonal().iter().all(|x| is_unit(x, p)) && in_n_beta(&n, beta, p);
    ok.then_some((nb, t, n))
}

/// Iw_H^β = H(Z_p) ∩ u^{−1}·Iw^β·u.
pub fn in_iwh_beta(h: &PadicMatrix, beta: u32, p: u64) -> bool {
    h.in_h_zp(p) && in_iw_beta(&u_matrix(h.size() / 2).mul(h), beta, p)
}

/// det(h_2)/det(h_1) on the open cell.
pub fn cell_ratio(g: &PadicMatrix) -> Option<Q> {
    let c = open_cell_factorize(g)?;
    Some(c.h2.det() / c.h1.det())
}

/// w_λ(g) for g ∈ Iw^1: λ(t)·w_λ(n).
pub fn w_chi(w: &PureWeight, g: &PadicMatrix, p: u64) -> Result<Q> {
    let (_, t, n) = iw_beta_parts(g, 1, p).ok_or_else(|| Error::Precondition("g ∉ Iw^1".into()))?;
    let mut acc = Q::one();
    for (x, l) in t.diagonal().iter().zip(&w.lambda) {
        acc *= qpow_q(x, *l);
    }
    let c = open_cell_factorize(&n).ok_or_else(|| Error::Internal("N^1 element off the open cell".into()))?;
    for (b, e) in product_exponents(w, 0) {
        acc *= qpow_q(&b.eval_cell(&c), e);
    }
    Ok(acc)
}

/// w_{χ_Ω}(g) for g ∈ Iw^1 as a series over Ω.
pub fn w_chi_family(fam: &FamilyWeight, g: &PadicMatrix) -> Result<Series> {
    let p = fam.p();
    let n = fam.n;
    let (_, t, nn) = iw_beta_parts(g, 1, p).ok_or_else(|| Error::Precondition("g ∉ Iw^1".into()))?;
    let mut acc = Series::one(fam.prec, fam.nvars());
    for (i, x) in t.diagonal().iter().enumerate() {
        acc = acc.mul(&fam.chi(i + 1, x)?);
    }
    let cell = open_cell_factorize(&nn).ok_or_else(|| Error::Internal("N^1 element off the open cell".into()))?;
    for i in 1..n {
        let x = Basic::Alpha(i).eval_cell(&cell);
        acc = acc.mul(&fam.chi(i, &x)?).mul(&fam.chi(i + 1, &x.recip())?);
    }
    let x1 = Basic::N1.eval_cell(&cell);
    acc = acc.mul(&fam.chi(n + 1, &x1.recip())?);
    let x2 = Basic::N2.eval_cell(&cell);
    acc = acc.mul(&fam.chi(n, &x2)?);
    let d = Basic::Det.eval_cell(&cell);
    Ok(acc.mul(&fam.chi(n + 1, &d)?))
}

fn rand_unipotent<R: Rng>(rng: &mut R, n: usize, p: u64, k: u32, upper: bool) -> PadicMatrix {
    let mut m = PadicMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if (upper && i < j) || (!upper && i > j) {
                m[(i, j)] = rand_int(rng, p * p) * q_pow(p, k as i64);
            }
        }
    }
    m
}

/// A random element of N^β (size 2n).
pub fn sample_n_beta<R: Rng>(rng: &mut R, n: usize, beta: u32, p: u64) -> PadicMatrix {
    let a = rand_unipotent(rng, n, p, beta, true);
    let b = rand_unipotent(rng, n, p, beta, true);
    let mut y = PadicMatrix::antidiag(n);
    for i in 0..n {
        for j in 0..n {
            y[(i, j)] += rand_int(rng, p * p) * q_pow(p, beta as i64);
        }
    }
    PadicMatrix::block(&a, &y, &PadicMatrix::zeros(n), &b)
}

/// A random element of Iw^β.
pub fn sample_iw_beta<R: Rng>(rng: &mut R, n: usize, beta: u32, p: u64) -> PadicMatrix {
    let nb = rand_unipotent(rng, 2 * n, p, 1, false);
    let t = PadicMatrix::diag((0..2 * n).map(|_| rand_unit(rng, p, p * p)).collect());
    nb.mul(&t).mul(&sample_n_beta(rng, n, beta, p))
}

/// A random element of Iw_H^1: h_1 ≡ t and h_2 ≡ w t w mod p.
pub fn sample_iwh<R: Rng>(rng: &mut R, n: usize, p: u64) -> PadicMatrix {
    loop {
        let t: Vec<Q> = (0..n).map(|_| rand_unit(rng, p, p * p)).collect();
        let mut h1 = PadicMatrix::diag(t.clone());
        let mut h2 = PadicMatrix::diag(t.into_iter().rev().collect());
        for i in 0..n {
            for j in 0..n {
                h1[(i, j)] += rand_int(rng, p) * q_pow(p, 1);
                h2[(i, j)] += rand_int(rng, p) * q_pow(p, 1);
            }
        }
        let h = PadicMatrix::block_diag(&h1, &h2);
        if in_iwh_beta(&h, 1, p) {
            return h;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::q_int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn weights(n: usize) -> Vec<PureWeight> {
        match n {
            1 => vec![vec![0, 0], vec![3, -1], vec![2, 2], vec![5, -5]],
            _ => vec![vec![2, 1, 0, -1], vec![3, 3, -2, -2], vec![1, 0, 0, -1], vec![4, 1, -1, -4]],
        }
        .into_iter()
        .map(|l| PureWeight::new(l).unwrap())
        .collect()
    }

    #[test]
    fn crit_and_alphas() {
        assert_eq!(crit_range(&[3, -1]).unwrap(), -3..=1);
        assert_eq!(crit_range(&[2, 1, 0, -1]).unwrap(), -1..=0);
        assert!(crit_range(&[2, 1, 1, -1]).is_err());
        assert_eq!(alpha_weight(3, 1), vec![1, 0, 0, 0, 0, -1]);
        assert_eq!(alpha_weight(3, 3), vec![1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn normalised_at_u() {
        for n in 1..=3 {
            let u = u_matrix(n);
            for b in [Basic::N1, Basic::N2, Basic::Det].into_iter().chain((1..n).map(Basic::Alpha)) {
                assert_eq!(b.eval(&u), Some(Q::one()));
            }
        }
    }

    #[test]
    fn product_formula_and_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, p) in [(1, 3), (2, 3), (2, 2), (1, 5)] {
            for w in weights(n) {
                for _ in 0..4 {
                    let g = sample_iw_beta(&mut rng, n, 1, p);
                    let h = sample_iwh(&mut rng, n, p);
                    let (h1, h2) = (h.blocks().0.det(), h.blocks().3.det());
                    for j in w.crit() {
                        let a = v_lambda_j(&w, j, &g).unwrap();
                        assert_eq!(a, v_lambda_j_product(&w, j, &g).unwrap());
                        let lhs = v_lambda_j(&w, j, &g.mul(&h)).unwrap();
                        assert_eq!(lhs, a * qpow_q(&h1, -j) * qpow_q(&h2, w.sw + j));
                    }
                    let wg = w_chi(&w, &g, p).unwrap();
                    let l = &w.lambda;
                    assert_eq!(w_chi(&w, &g.mul(&h), p).unwrap(), wg * qpow_q(&h2, l[n - 1] + l[n]));
                }
            }
        }
    }

    #[test]
    fn n_beta_values() {
        // v_{λ,j}(N^β) ⊂ 1 + p^β Z_p, over residue classes of the free entry
        for (p, beta) in [(3u64, 1u32), (3, 2), (2, 2)] {
            let w = PureWeight::new(vec![3, -1]).unwrap();
            for y in 0..p.pow(3) as i64 {
                let mut g = u_matrix(1);
                g[(0, 1)] = q_int(1) + q_int(y) * q_pow(p, beta as i64);
                assert!(in_n_beta(&g, beta, p));
                for j in w.crit() {
                    let v = v_lambda_j(&w, j, &g).unwrap();
                    assert!(crate::padic::scalar::congruent(&v, &Q::one(), p, beta));
                }
            }
        }
    }

    #[test]
    fn membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let g = sample_iw_beta(&mut rng, 2, 2, 3);
            assert!(in_iw_beta(&g, 2, 3));
            assert!(in_iw_beta(&g, 1, 3));
            assert!(g.in_iwahori(3));
        }
        assert!(!in_iw_beta(&PadicMatrix::identity(4), 1, 3));
        assert!(in_n_beta(&u_matrix(2), 5, 3));
        let h = sample_iwh(&mut rng, 2, 3);
        assert!(in_iwh_beta(&h, 1, 3));
    }

    #[test]
    fn family_w_chi_specializes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (centre, p) in [(vec![1, 0], 3u64), (vec![2, 1, 0, -1], 3), (vec![1, 0], 2)] {
            let prec = Precision { p, m: 8, d: 4 };
            let fam = FamilyWeight::new(centre.clone(), 2, prec).unwrap();
            let n = fam.n;
            let g = sample_iw_beta(&mut rng, n, 1, p);
            let s = w_chi_family(&fam, &g).unwrap();
            let st = fam.step();
            let mut lam = centre.clone();
            lam[0] += st;
            lam[2 * n - 1] -= st;
            for l in [centre.clone(), lam] {
                let w = PureWeight::new(l.clone()).unwrap();
                let want = prec.reduce(&w_chi(&w, &g, p).unwrap()).unwrap();
                assert_eq!(fam.specialize(&s, &l).unwrap(), want, "{l:?}");
            }
        }
    }
}
