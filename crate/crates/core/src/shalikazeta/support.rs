//! Which (δ, k, X) contribute to W(diag(w_n z^{2β}, 1)): the cell-support
//! predicate, its Bruhat-cell cross-check and the Borel part on the support.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::padic::{bruhat_cell, iwahori_bruhat_decompose, opposite_parahoric_cell, PadicMatrix};
use crate::perm::Perm;
use crate::symring::{q_pow, SymElem, Q};

/// z = diag(p^{n−1}, …, p, 1) exponents.
pub fn z_exponents(n: usize) -> Vec<i64> {
    (0..n).map(|i| (n - 1 - i) as i64).collect()
}

/// w_n·z^{2β}.
pub fn wz2b(n: usize, beta: u32, p: u64) -> PadicMatrix {
    let z: Vec<i64> = z_exponents(n).iter().map(|e| 2 * beta as i64 * e).collect();
    PadicMatrix::antidiag(n).mul(&PadicMatrix::diag_ppow(p, &z))
}

/// The permutation whose matrix is m (m must be a permutation matrix).
pub fn perm_of_matrix(m: &PadicMatrix) -> Perm {
    let n = m.size();
    Perm((0..n).map(|j| (0..n).find(|&i| !m[(i, j)].is_zero()).expect("permutation matrix")).collect())
}

/// (0 w_n; δw_n 0) as a permutation of 2n letters.
pub fn target_cell(delta: &Perm) -> Perm {
    let n = delta.len();
    let w = PadicMatrix::antidiag(n);
    let dw = PadicMatrix::perm(delta).mul(&w);
    perm_of_matrix(&PadicMatrix::block(&PadicMatrix::zeros(n), &w, &dw, &PadicMatrix::zeros(n)))
}

/// (0 1; 1 0)(1 X; 0 1)(k, k)(w_n z^{2β}, 1).
pub fn assembled_matrix(k: &PadicMatrix, x: &PadicMatrix, beta: u32, p: u64) -> PadicMatrix {
    let n = k.size();
    let one = PadicMatrix::identity(n);
    let zero = PadicMatrix::zeros(n);
    let j = PadicMatrix::block(&zero, &one, &one, &zero);
    let ux = PadicMatrix::block(&one, x, &zero, &one);
    let kk = PadicMatrix::block_diag(k, k);
    let t = PadicMatrix::block_diag(&wz2b(n, beta, p), &one);
    j.mul(&ux).mul(&kk).mul(&t)
}

/// δ = w_n, k ∈ B_n(Z_p)·w_n·Iw_n and k^{−1}X ∈ w_n z^{2β}M_n(Z_p).
pub fn shalika_support_predicate(delta: &Perm, k: &PadicMatrix, x: &PadicMatrix, beta: u32, p: u64) -> Result<bool> {
    let n = k.size();
    if !k.in_gl_zp(p) {
        return Err(Error::Precondition("k ∉ GL_n(Z_p)".into()));
    }
    if *delta != Perm::longest(n) {
        return Ok(false);
    }
    if bruhat_cell(k, p)?.w != Perm::longest(n) {
        return Ok(false);
    }
    let y = wz2b(n, beta, p).inverse()?.mul(&k.inverse()?).mul(x);
    Ok(y.is_integral(p))
}

/// Membership of the assembled matrix in B(Q_p)·(0 w_n; δw_n 0)·Iw.
pub fn support_by_cell(delta: &Perm, k: &PadicMatrix, x: &PadicMatrix, beta: u32, p: u64) -> Result<bool> {
    let m = assembled_matrix(k, x, beta, p);
    Ok(bruhat_cell(&m, p)?.w == target_cell(delta))
}

/// For δ ≠ w_n with r = min{i : δw_n(i) ≠ i}, the opposite-parahoric cells of
/// 1 and δw_n are distinct.
pub fn opposite_cells_disjoint(delta: &Perm, p: u64) -> Result<bool> {
    let n = delta.len();
    let dw = delta.compose(&Perm::longest(n));
    let r = match (0..n).find(|&i| dw.apply(i) != i) {
        None => return Ok(false),
        Some(i) => i + 1,
    };
    let a = opposite_parahoric_cell(&PadicMatrix::identity(n), r, p)?;
    let b = opposite_parahoric_cell(&PadicMatrix::perm(&dw), r, p)?;
    Ok(a != b)
}

/// Torus valuations of 𝔅 in the assembled matrix = 𝔅·(0 w_n; 1 0)·ℐ.
pub fn borel_part_torus(k: &PadicMatrix, x: &PadicMatrix, beta: u32, p: u64) -> Result<Vec<i64>> {
    let n = k.size();
    let m = assembled_matrix(k, x, beta, p);
    let d = iwahori_bruhat_decompose(&m, p)?;
    if d.w != target_cell(&Perm::longest(n)) {
        return Err(Error::Precondition("assembled matrix outside the expected cell".into()));
    }
    let torus = d
        .b
        .diagonal()
        .iter()
        .map(|q| crate::padic::valuation(q, p).ok_or(Error::Singular))
        .collect::<Result<Vec<_>>>()?;
    Ok(torus)
}

/// Valuations of diag(1, z^{2β}).
pub fn expected_borel_torus(n: usize, beta: u32) -> Vec<i64> {
    let mut v = vec![0; n];
    v.extend(z_exponents(n).iter().map(|e| 2 * beta as i64 * e));
    v
}

/// Θ(𝔅), asserting it equals Θ(diag(1, z^{2β})).
pub fn borel_part_character(
    theta: &dyn Fn(&[i64]) -> Result<SymElem>,
    k: &PadicMatrix,
    x: &PadicMatrix,
    beta: u32,
    p: u64,
) -> Result<SymElem> {
    let t = borel_part_torus(k, x, beta, p)?;
    let v = theta(&t)?;
    let expect = theta(&expected_borel_torus(k.size(), beta))?;
    if v != expect {
        return Err(Error::Internal(format!("Θ(𝔅) ≠ Θ(diag(1, z^2β)) at torus {:?}", t)));
    }
    Ok(v)
}

pub(crate) fn rand_int<R: Rng>(rng: &mut R, bound: u64) -> Q {
    Q::from_integer(BigInt::from(rng.gen_range(0..bound)))
}

pub(crate) fn rand_unit<R: Rng>(rng: &mut R, p: u64, bound: u64) -> Q {
    loop {
        let x = rng.gen_range(1..bound);
        if x % p != 0 {
            return Q::from_integer(BigInt::from(x));
        }
    }
}

/// Uniform-ish element of Iw_n: n̄(pZ_p)·t(Z_p^×)·n(Z_p), entries below p^3.
pub fn sample_iwahori<R: Rng>(rng: &mut R, n: usize, p: u64) -> PadicMatrix {
    let b = p.pow(3);
    let mut lo = PadicMatrix::identity(n);
    let mut up = PadicMatrix::identity(n);
    let mut t = PadicMatrix::identity(n);
    for i in 0..n {
        t[(i, i)] = rand_unit(rng, p, b);
        for j in 0..n {
            if i > j {
                lo[(i, j)] = rand_int(rng, b) * Q::from_integer(BigInt::from(p));
            } else if i < j {
                up[(i, j)] = rand_int(rng, b);
            }
        }
    }
    lo.mul(&t).mul(&up)
}

/// Upper triangular in GL_n(Z_p).
pub fn sample_borel_zp<R: Rng>(rng: &mut R, n: usize, p: u64) -> PadicMatrix {
    let b = p.pow(3);
    let mut m = PadicMatrix::identity(n);
    for i in 0..n {
        m[(i, i)] = rand_unit(rng, p, b);
        for j in i + 1..n {
            m[(i, j)] = rand_int(rng, b);
        }
    }
    m
}

pub fn sample_gl_zp<R: Rng>(rng: &mut R, n: usize, p: u64) -> PadicMatrix {
    loop {
        let mut m = PadicMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = rand_int(rng, p * p);
            }
        }
        if m.in_gl_zp(p) {
            return m;
        }
    }
}

/// X with entries p^{e}·a, e ∈ [−1, 2β(n−1)+1].
pub fn sample_x<R: Rng>(rng: &mut R, n: usize, beta: u32, p: u64) -> PadicMatrix {
    let top = 2 * beta as i64 * (n as i64 - 1) + 1;
    let mut m = PadicMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let e = rng.gen_range(-1..=top);
            m[(i, j)] = rand_int(rng, p * p) * q_pow(p, e);
        }
    }
    m
}

/// A triple inside the support: k = A w_n i, X = k w_n z^{2β} Y.
pub fn sample_positive<R: Rng>(rng: &mut R, n: usize, beta: u32, p: u64) -> (PadicMatrix, PadicMatrix) {
    let a = sample_borel_zp(rng, n, p);
    let i = sample_iwahori(rng, n, p);
    let k = a.mul(&PadicMatrix::antidiag(n)).mul(&i);
    let mut y = PadicMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            y[(r, c)] = rand_int(rng, p * p);
        }
    }
    let x = k.mul(&wz2b(n, beta, p)).mul(&y);
    (k, x)
}

/// A triple with k forced into a cell other than the big one (n ≥ 2).
pub fn sample_off_cell<R: Rng>(rng: &mut R, n: usize, beta: u32, p: u64) -> (PadicMatrix, PadicMatrix) {
    let all = Perm::all(n);
    let w = loop {
        let w = &all[rng.gen_range(0..all.len())];
        if *w != Perm::longest(n) || n == 1 {
            break w.clone();
        }
    };
    let k = sample_borel_zp(rng, n, p).mul(&PadicMatrix::perm(&w)).mul(&sample_iwahori(rng, n, p));
    let mut y = PadicMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            y[(r, c)] = rand_int(rng, p);
        }
    }
    (k.clone(), k.mul(&wz2b(n, beta, p)).mul(&y))
}

/// Θ = δ_B^{1/2}·θ^σ on torus valuations.
pub fn unramified_character<'a>(
    theta: &'a [SymElem],
    sigma: &Perm,
    p: u64,
) -> impl Fn(&[i64]) -> Result<SymElem> + 'a {
    let sigma = sigma.clone();
    move |a: &[i64]| {
        let mut v = crate::rootspin::delta_b_half(p, a);
        for (i, e) in a.iter().enumerate() {
            if *e != 0 {
                v = &v * &theta[sigma.apply(i)].pow(*e)?;
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::SatakeParameter;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn base_point_is_positive() {
        for n in 1..=2 {
            for beta in 1..=2 {
                let p = 3;
                let w = PadicMatrix::antidiag(n);
                // X = k·w_n z^{2β}
                let x = w.mul(&wz2b(n, beta, p));
                let d = Perm::longest(n);
                assert!(shalika_support_predicate(&d, &w, &x, beta, p).unwrap());
                assert!(support_by_cell(&d, &w, &x, beta, p).unwrap());
                assert_eq!(borel_part_torus(&w, &x, beta, p).unwrap(), expected_borel_torus(n, beta));
            }
        }
    }

    #[test]
    fn wrong_delta() {
        let p = 2;
        let n = 2;
        let k = PadicMatrix::antidiag(n);
        let x = wz2b(n, 1, p);
        let d = Perm::identity(n);
        assert!(!shalika_support_predicate(&d, &k, &x, 1, p).unwrap());
        assert!(!support_by_cell(&d, &k, &x, 1, p).unwrap());
        assert!(opposite_cells_disjoint(&d, p).unwrap());
    }

    #[test]
    fn sampled_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 2;
        for p in [2, 3] {
            for beta in 1..=2 {
                for _ in 0..60 {
                    let k = sample_gl_zp(&mut rng, n, p);
                    let x = sample_x(&mut rng, n, beta, p);
                    for d in Perm::all(n) {
                        assert_eq!(
                            shalika_support_predicate(&d, &k, &x, beta, p).unwrap(),
                            support_by_cell(&d, &k, &x, beta, p).unwrap()
                        );
                    }
                }
                for _ in 0..20 {
                    let (k, x) = sample_positive(&mut rng, n, beta, p);
                    assert!(shalika_support_predicate(&Perm::longest(n), &k, &x, beta, p).unwrap());
                    assert!(support_by_cell(&Perm::longest(n), &k, &x, beta, p).unwrap());
                    let (k, x) = sample_off_cell(&mut rng, n, beta, p);
                    assert!(!shalika_support_predicate(&Perm::longest(n), &k, &x, beta, p).unwrap());
                    assert!(!support_by_cell(&Perm::longest(n), &k, &x, beta, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn borel_part_on_positives() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = SatakeParameter::generic_ag(2, 3);
        let th = unramified_character(&s.theta, &crate::rootspin::tau(2), 3);
        for _ in 0..20 {
            let (k, x) = sample_positive(&mut rng, 2, 1, 3);
            borel_part_character(&th, &k, &x, 1, 3).unwrap();
        }
        let triv = |_: &[i64]| Ok(SymElem::one());
        let (k, x) = sample_positive(&mut rng, 2, 2, 3);
        assert!(borel_part_character(&triv, &k, &x, 2, 3).unwrap().is_one());
    }
}
