//! Root data of GL(2n) and GSpin(2n+1), the transfer maps ȷ and ȷ∨, purity
//! and the subgroup W_G^0.
//!
//! Weights are integer vectors. GL(2n) characters and cocharacters use the
//! basis e_1..e_{2n}; GSpin(2n+1) vectors use f_0, f_1, …, f_n, stored with
//! f_0 at index 0. All Weyl actions are left actions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::symring::SymElem;

pub type GLWeight = Vec<i64>;
pub type GSpinWeight = Vec<i64>;

/// Purity weight `sw` if λ_i + λ_{2n+1−i} is constant.
pub fn purity_weight(lambda: &[i64]) -> Option<i64> {
    let m = lambda.len();
    if m % 2 != 0 || m == 0 {
        return None;
    }
    let sw = lambda[0] + lambda[m - 1];
    (0..m / 2).all(|i| lambda[i] + lambda[m - 1 - i] == sw).then_some(sw)
}

pub fn is_pure(lambda: &[i64]) -> bool {
    purity_weight(lambda).is_some()
}

pub fn is_dominant(lambda: &[i64]) -> bool {
    lambda.windows(2).all(|w| w[0] >= w[1])
}

/// ȷ: 𝒳 → X, f_i ↦ e_i − e_{2n+1−i}, f_0 ↦ e_{n+1} + … + e_{2n}.
pub fn jmap_weight(mu: &[i64]) -> GLWeight {
    let n = mu.len() - 1;
    let mut out = vec![0; 2 * n];
    for i in 1..=n {
        out[i - 1] += mu[i];
        out[2 * n - i] -= mu[i];
    }
    for k in n..2 * n {
        out[k] += mu[0];
    }
    out
}

/// The unique μ with ȷ(μ) = λ, for pure λ.
pub fn jmap_preimage(lambda: &[i64]) -> Option<GSpinWeight> {
    let sw = purity_weight(lambda)?;
    let n = lambda.len() / 2;
    let mut mu = vec![sw];
    mu.extend_from_slice(&lambda[..n]);
    Some(mu)
}

/// ȷ∨(ν) = Σ_i ⟨ȷ(f_i), ν⟩ f_i^*.
pub fn jvee_cochar(nu: &[i64]) -> Vec<i64> {
    let n = nu.len() / 2;
    let mut out = vec![0; n + 1];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut f = vec![0; n + 1];
        f[i] = 1;
        *slot = pairing(&jmap_weight(&f), nu);
    }
    out
}

pub fn pairing(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// σ·λ with (σ·λ)_{σ(i)} = λ_i.
pub fn gl_act(sigma: &Perm, lambda: &[i64]) -> Vec<i64> {
    let mut out = vec![0; lambda.len()];
    for (i, x) in lambda.iter().enumerate() {
        out[sigma.apply(i)] = *x;
    }
    out
}

/// Element of W_𝒢 = {±1}^n ⋊ S_n, meaning (∏_{i ∈ signs} sgn_i)∘π.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylGSpin {
    pub perm: Perm,
    pub signs: Vec<bool>,
}

impl WeylGSpin {
    pub fn identity(n: usize) -> Self {
        WeylGSpin { perm: Perm::identity(n), signs: vec![false; n] }
    }

    pub fn sign_change(n: usize, i: usize) -> Self {
        let mut s = WeylGSpin::identity(n);
        s.signs[i] = true;
        s
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// (S₁π₁)(S₂π₂) = (S₁ △ π₁(S₂))·(π₁π₂).
    pub fn compose(&self, o: &WeylGSpin) -> WeylGSpin {
        let n = self.rank();
        let mut signs = self.signs.clone();
        for i in 0..n {
            if o.signs[i] {
                let j = self.perm.apply(i);
                signs[j] = !signs[j];
            }
        }
        WeylGSpin { perm: self.perm.compose(&o.perm), signs }
    }

    pub fn inverse(&self) -> WeylGSpin {
        let n = self.rank();
        let pinv = self.perm.inverse();
        // (Sπ)^{-1} = π^{-1}S = π^{-1}(S)·π^{-1}
        let mut signs = vec![false; n];
        for i in 0..n {
            if self.signs[i] {
                signs[pinv.apply(i)] = true;
            }
        }
        WeylGSpin { perm: pinv, signs }
    }

    /// Action on characters: π f_i = f_{π(i)}, sgn_i f_0 = f_0 + f_i, sgn_i f_i = −f_i.
    pub fn act_char(&self, mu: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0; n + 1];
        out[0] = mu[0];
        for i in 1..=n {
            out[self.perm.apply(i - 1) + 1] = mu[i];
        }
        for i in 0..n {
            if self.signs[i] {
                out[i + 1] = out[0] - out[i + 1];
            }
        }
        out
    }

    /// Action on cocharacters: sgn_i f_i^* = f_0^* − f_i^*, sgn_i f_0^* = f_0^*.
    pub fn act_cochar(&self, nu: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0; n + 1];
        out[0] = nu[0];
        for i in 1..=n {
            out[self.perm.apply(i - 1) + 1] = nu[i];
        }
        for i in 0..n {
            if self.signs[i] {
                out[0] += out[i + 1];
                out[i + 1] = -out[i + 1];
            }
        }
        out
    }

    pub fn all(n: usize) -> Vec<WeylGSpin> {
        let mut out = Vec::new();
        for perm in Perm::all(n) {
            for mask in 0..(1u32 << n) {
                let signs = (0..n).map(|i| mask >> i & 1 == 1).collect();
                out.push(WeylGSpin { perm: perm.clone(), signs });
            }
        }
        out
    }
}

/// ȷ on Weyl groups: π ↦ diag(π, w_nπw_n), sgn_i ↦ (i, 2n+1−i).
pub fn jmap_weyl(w: &WeylGSpin) -> Perm {
    let n = w.rank();
    let m = 2 * n;
    let mut pi = vec![0; m];
    for i in 0..n {
        let j = w.perm.apply(i);
        pi[i] = j;
        pi[m - 1 - i] = m - 1 - j;
    }
    let pi = Perm(pi);
    let mut s: Vec<usize> = (0..m).collect();
    for i in 0..n {
        if w.signs[i] {
            s.swap(i, m - 1 - i);
        }
    }
    Perm(s).compose(&pi)
}

/// Inverse of [`jmap_weyl`] on its image W_G^0.
pub fn jvee_weyl(sigma: &Perm) -> Result<WeylGSpin> {
    let m = sigma.len();
    let n = m / 2;
    let mut perm = vec![0; n];
    let mut signs = vec![false; n];
    for i in 0..n {
        let t = sigma.apply(i);
        if t < n {
            perm[i] = t;
        } else {
            perm[i] = m - 1 - t;
            signs[m - 1 - t] = true;
        }
    }
    let perm = Perm(perm);
    if !perm.is_valid() {
        return Err(Error::NotInWg0);
    }
    let w = WeylGSpin { perm, signs };
    if &jmap_weyl(&w) != sigma {
        return Err(Error::NotInWg0);
    }
    Ok(w)
}

/// The regular pure weight (2n−1, 2n−3, …, 1−2n), which is also 2ρ_G.
pub fn regular_pure_weight(n: usize) -> Vec<i64> {
    (0..2 * n as i64).map(|i| 2 * n as i64 - 1 - 2 * i).collect()
}

/// W_G^0 by definition: permutations preserving purity.
pub fn wg0_members(n: usize) -> Vec<Perm> {
    let lambda = regular_pure_weight(n);
    Perm::all(2 * n).into_iter().filter(|s| is_pure(&gl_act(s, &lambda))).collect()
}

pub fn in_wg0(sigma: &Perm) -> bool {
    let n = sigma.len() / 2;
    is_pure(&gl_act(sigma, &regular_pure_weight(n)))
}

/// 2ρ_𝒢 = Σ (2n−2i+1) f_i.
pub fn two_rho_gspin(n: usize) -> Vec<i64> {
    let mut out = vec![0];
    out.extend((1..=n as i64).map(|i| 2 * n as i64 - 2 * i + 1));
    out
}

/// τ = diag(1_n, w_n): fixes 1..n and sends n+k to 2n+1−k.
pub fn tau(n: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v.extend((n..2 * n).rev());
    Perm(v)
}

/// Cocharacter exponents of t_{p,r}: (1^r, 0^{m−r}).
pub fn nu_r(m: usize, r: usize) -> Vec<i64> {
    (0..m).map(|i| i64::from(i < r)).collect()
}

/// Exponent k with δ_B(diag(p^{a_i})) = p^k: k = −Σ a_i(m − 2i + 1).
pub fn delta_b_exponent(a: &[i64]) -> i64 {
    let m = a.len() as i64;
    -a.iter().enumerate().map(|(i, x)| x * (m - 2 * (i as i64 + 1) + 1)).sum::<i64>()
}

/// δ_B(t) for t = diag(p^{a_i}).
pub fn delta_b(p: u64, a: &[i64]) -> SymElem {
    SymElem::p_pow(p, delta_b_exponent(a))
}

/// δ_B^{1/2}(t) = Y^{k}.
pub fn delta_b_half(p: u64, a: &[i64]) -> SymElem {
    SymElem::y_pow(p, delta_b_exponent(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_to_e() {
        assert_eq!(jmap_weight(&[0, 1, 0]), vec![1, 0, 0, -1]);
        let l = jmap_weight(&[1, 0]);
        assert_eq!(l, vec![0, 1]);
        assert_eq!(purity_weight(&l), Some(1));
    }

    #[test]
    fn sign_change_is_transposition() {
        for n in 1..=3 {
            for i in 0..n {
                assert_eq!(
                    jmap_weyl(&WeylGSpin::sign_change(n, i)),
                    Perm::transposition(2 * n, i, 2 * n - 1 - i)
                );
            }
            assert!(jmap_weyl(&WeylGSpin::identity(n)).is_identity());
        }
    }

    #[test]
    fn wg0_sizes() {
        assert_eq!(wg0_members(1).len(), 2);
        assert_eq!(wg0_members(2).len(), 8);
        assert_eq!(wg0_members(3).len(), 48);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_b(5, &[1, 0]), SymElem::p_pow(5, -1));
        assert!(delta_b(5, &[0, 0, 0, 0]).is_one());
    }

    #[test]
    fn composition_matches_action() {
        let n = 2;
        let all = WeylGSpin::all(n);
        let basis: Vec<Vec<i64>> = (0..=n).map(|i| (0..=n).map(|k| i64::from(k == i)).collect()).collect();
        for a in &all {
            for b in &all {
                let ab = a.compose(b);
                for v in &basis {
                    assert_eq!(ab.act_char(v), a.act_char(&b.act_char(v)));
                    assert_eq!(ab.act_cochar(v), a.act_cochar(&b.act_cochar(v)));
                }
            }
            assert_eq!(a.compose(&a.inverse()), WeylGSpin::identity(n));
        }
    }

    #[test]
    fn tau_shape() {
        assert_eq!(tau(2), Perm(vec![0, 1, 3, 2]));
        assert!(in_wg0(&Perm::longest(6)));
    }
}
