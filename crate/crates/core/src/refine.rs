//! Satake data and p-refinements.
//!
//! A refinement is a pair (θ, σ). Its U_{p,r}-eigenvalue is
//! α_{p,r} = ∏_{j ≤ r} p^{(2n−2j+1)/2}·θ_{σ(2n+1−j)}, and θ^σ means
//! (θ^σ)_i = θ_{σ(i)}.

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rootspin::{jvee_cochar, jvee_weyl, nu_r, pairing, tau, two_rho_gspin};
use crate::symring::{Gen, Q, SymElem};

#[derive(Clone, Debug)]
pub struct SatakeParameter {
    pub n: usize,
    pub p: u64,
    pub theta: Vec<SymElem>,
    pub eta: SymElem,
    /// θ_iθ_{n+i} = η holds (checked on construction).
    pub ag: bool,
}

impl SatakeParameter {
    /// θ_i = X_i, θ_{n+i} = E·X_i^{-1}, η = E.
    pub fn generic_ag(n: usize, p: u64) -> Self {
        let e = SymElem::gen(Gen::E);
        let mut theta: Vec<SymElem> = (1..=n).map(|i| SymElem::gen(Gen::X(i as u8)).with_prime(p)).collect();
        for i in 0..n {
            let t = &e * &theta[i].inv().expect("symbol is a unit");
            theta.push(t);
        }
        SatakeParameter { n, p, theta, eta: e.with_prime(p), ag: true }
    }

    /// Free symbols X_1..X_{2n} and η = E, no relation.
    pub fn generic_free(n: usize, p: u64) -> Self {
        let theta = (1..=2 * n).map(|i| SymElem::gen(Gen::X(i as u8)).with_prime(p)).collect();
        SatakeParameter { n, p, theta, eta: SymElem::gen(Gen::E).with_prime(p), ag: false }
    }

    pub fn new(n: usize, p: u64, theta: Vec<SymElem>, eta: SymElem) -> Self {
        let mut s = SatakeParameter { n, p, theta, eta, ag: false };
        s.ag = s.check_ag();
        s
    }

    pub fn check_ag(&self) -> bool {
        (0..self.n).all(|i| &self.theta[i] * &self.theta[self.n + i] == self.eta)
    }

    pub fn is_regular(&self) -> bool {
        let t = &self.theta;
        (0..t.len()).all(|i| (i + 1..t.len()).all(|j| t[i] != t[j]))
    }

    /// θ^ρ: (θ^ρ)_j = θ_{ρ(j)}.
    pub fn conjugate(&self, rho: &Perm) -> SatakeParameter {
        let theta = (0..2 * self.n).map(|j| self.theta[rho.apply(j)].clone()).collect();
        SatakeParameter::new(self.n, self.p, theta, self.eta.clone())
    }

    /// θ(ν) = ∏ θ_k^{ν_k} for a cocharacter ν.
    pub fn eval_cochar(&self, nu: &[i64]) -> Result<SymElem> {
        let mut acc = SymElem::one().with_prime(self.p);
        for (k, e) in nu.iter().enumerate() {
            if *e != 0 {
                acc = &acc * &self.theta[k].pow(*e)?;
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct Refinement {
    pub satake: SatakeParameter,
    pub sigma: Perm,
}

/// Eigenvalues of 𝒰_{p,1..n} and 𝒱_p on the GSpin side.
#[derive(Clone, Debug)]
pub struct GSpinEigen {
    pub u: Vec<SymElem>,
    pub v: SymElem,
}

impl Refinement {
    pub fn new(satake: SatakeParameter, sigma: Perm) -> Self {
        assert_eq!(sigma.len(), 2 * satake.n);
        Refinement { satake, sigma }
    }

    pub fn n(&self) -> usize {
        self.satake.n
    }

    pub fn p(&self) -> u64 {
        self.satake.p
    }

    /// α_{p,r} for 1 ≤ r ≤ 2n (r = 2n gives the central eigenvalue).
    pub fn hecke_eigenvalue(&self, r: usize) -> SymElem {
        let m = 2 * self.n();
        assert!((1..=m).contains(&r));
        let mut acc = SymElem::one().with_prime(self.p());
        for j in 0..r {
            let y = SymElem::y_pow(self.p(), m as i64 - 2 * j as i64 - 1);
            acc = &(&acc * &y) * &self.satake.theta[self.sigma.apply(m - 1 - j)];
        }
        acc
    }

    /// α_p = α_{p,1}·…·α_{p,2n−1}.
    pub fn up_eigenvalue(&self) -> SymElem {
        let mut acc = SymElem::one().with_prime(self.p());
        for r in 1..2 * self.n() {
            acc = &acc * &self.hecke_eigenvalue(r);
        }
        acc
    }

    /// α°_{p,r} = p^{λ_1+…+λ_r}·α_{p,r}.
    pub fn integral_eigenvalue(&self, r: usize, lambda: &[i64]) -> SymElem {
        let s: i64 = lambda[..r].iter().sum();
        &SymElem::p_pow(self.p(), s) * &self.hecke_eigenvalue(r)
    }

    /// α_{p,n+s} = η^s·α_{p,n−s} for 0 ≤ s ≤ n−1.
    pub fn is_spin(&self) -> Result<bool> {
        if !self.satake.is_regular() {
            return Err(Error::NotRegular);
        }
        let n = self.n();
        for s in 1..n {
            let lhs = self.hecke_eigenvalue(n + s);
            let rhs = &self.satake.eta.pow(s as i64)? * &self.hecke_eigenvalue(n - s);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// τσ, the Weyl element compared against W_G^0.
    pub fn delta_tau(&self) -> Perm {
        tau(self.n()).compose(&self.sigma)
    }

    /// Factor α through the GSpin Hecke algebra, or `None` when not spin.
    pub fn gspin_factorization(&self) -> Result<Option<GSpinEigen>> {
        if !self.is_spin()? {
            return Ok(None);
        }
        let n = self.n();
        let u: Vec<SymElem> = (1..=n).map(|r| self.hecke_eigenvalue(r)).collect();
        let v = self.satake.eta.clone();
        for s in 0..n {
            let a_minus = self.hecke_eigenvalue(n - s);
            let a_plus = self.hecke_eigenvalue(n + s);
            if a_minus != u[n - s - 1] || a_plus != &v.pow(s as i64)? * &u[n - s - 1] {
                return Ok(None);
            }
        }
        if self.hecke_eigenvalue(2 * n) != v.pow(n as i64)? {
            return Ok(None);
        }
        Ok(Some(GSpinEigen { u, v }))
    }

    /// The same eigenvalues computed on the GSpin side through ȷ∨:
    /// α^𝒢(𝒰_{p,r}) = p^{⟨ρ_𝒢, ȷ∨(ν_r)⟩}·θ_𝒢(ω·ȷ∨(ν_r)) with ω = ȷ∨(τσw_{2n}).
    pub fn gspin_via_transfer(&self) -> Result<GSpinEigen> {
        let n = self.n();
        let m = 2 * n;
        if !self.satake.ag {
            return Err(Error::Precondition("transfer route needs θ_iθ_{n+i} = η".into()));
        }
        let s2 = tau(n).compose(&self.sigma).compose(&Perm::longest(m));
        let omega = jvee_weyl(&s2)?;
        let th_tau = self.satake.conjugate(&tau(n));
        // θ_𝒢 on f_0^*, f_1^*, …, f_n^*
        let mut theta_g = vec![&th_tau.theta[0] * &th_tau.theta[m - 1]];
        theta_g.extend((0..n).map(|k| th_tau.theta[k].clone()));
        for k in 1..n {
            if &th_tau.theta[k] * &th_tau.theta[m - 1 - k] != theta_g[0] {
                return Err(Error::Internal("θ^τ is not Asgari–Shahidi normalised".into()));
            }
        }
        let eval_g = |nu: &[i64]| -> Result<SymElem> {
            let mut acc = SymElem::one().with_prime(self.p());
            for (k, e) in nu.iter().enumerate() {
                if *e != 0 {
                    acc = &acc * &theta_g[k].pow(*e)?;
                }
            }
            Ok(acc)
        };
        let rho2 = two_rho_gspin(n);
        let mut u = Vec::new();
        for r in 1..=n {
            let nu = jvee_cochar(&nu_r(m, r));
            let y = SymElem::y_pow(self.p(), pairing(&rho2, &nu));
            u.push(&y * &eval_g(&omega.act_cochar(&nu))?);
        }
        let mut f0 = vec![0; n + 1];
        f0[0] = 1;
        let v = eval_g(&omega.act_cochar(&f0))?;
        Ok(GSpinEigen { u, v })
    }

    /// Non-critical slope: v_p(α°_{p,r}) < λ_r − λ_{r+1} + 1 for r ≤ 2n−1.
    /// `gen_val` gives the valuations of the symbols X_i and E.
    pub fn noncritical_slope(&self, lambda: &[i64], gen_val: &dyn Fn(Gen) -> Q) -> Result<bool> {
        for r in 1..2 * self.n() {
            let a = self.integral_eigenvalue(r, lambda);
            let v = a
                .monomial_valuation(gen_val)
                .ok_or_else(|| Error::NotUnitMonomial(a.to_string()))?;
            let bound = Q::from_integer((lambda[r - 1] - lambda[r] + 1).into());
            if v >= bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A perfect matching i ↔ ν(i) with θ_iθ_{ν(i)} = η, if one exists.
pub fn shalika_admissible(theta: &[SymElem], eta: &SymElem) -> Option<Vec<(usize, usize)>> {
    fn search(
        theta: &[SymElem],
        eta: &SymElem,
        used: &mut Vec<bool>,
        acc: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some(i) = used.iter().position(|u| !u) else {
            return true;
        };
        used[i] = true;
        for j in i + 1..theta.len() {
            if used[j] || &theta[i] * &theta[j] != *eta {
                continue;
            }
            used[j] = true;
            acc.push((i, j));
            if search(theta, eta, used, acc) {
                return true;
            }
            acc.pop();
            used[j] = false;
        }
        used[i] = false;
        false
    }
    let mut used = vec![false; theta.len()];
    let mut acc = Vec::new();
    search(theta, eta, &mut used, &mut acc).then_some(acc)
}

/// θ' = θ^{στ}, the conjugate with θ'_iθ'_{n+i} = η for which the refinement
/// becomes (θ', τ). Returns θ' and the conjugating element στ.
pub fn normalize_satake(r: &Refinement) -> Result<(SatakeParameter, Perm)> {
    if !r.is_spin()? {
        return Err(Error::Precondition("refinement is not spin".into()));
    }
    let n = r.n();
    let t = tau(n);
    let rho = r.sigma.compose(&t);
    let th = r.satake.conjugate(&rho);
    if !th.ag {
        return Err(Error::Internal("normalised θ fails θ_iθ_{n+i} = η".into()));
    }
    let r2 = Refinement::new(th.clone(), t);
    for k in 1..=2 * n {
        if r2.hecke_eigenvalue(k) != r.hecke_eigenvalue(k) {
            return Err(Error::Internal(format!("eigenvalue α_{{p,{}}} changed under normalisation", k)));
        }
    }
    Ok((th, rho))
}

/// All (2n)! refinements of θ.
pub fn all_refinements(satake: &SatakeParameter) -> Vec<Refinement> {
    Perm::all(2 * satake.n).into_iter().map(|s| Refinement::new(satake.clone(), s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootspin::in_wg0;
    use crate::symring::q_frac;

    #[test]
    fn n1_eigenvalue() {
        let s = SatakeParameter::generic_ag(1, 3);
        let r = Refinement::new(s.clone(), Perm::identity(2));
        assert_eq!(r.hecke_eigenvalue(1), &SymElem::y_pow(3, 1) * &s.theta[1]);
        let lam = [4, 0];
        assert_eq!(r.integral_eigenvalue(1, &lam), &SymElem::p_pow(3, 4) * &r.hecke_eigenvalue(1));
    }

    #[test]
    fn n2_reversal() {
        let s = SatakeParameter::generic_ag(2, 2);
        let sigma = Perm::longest(4);
        let r = Refinement::new(s.clone(), sigma.clone());
        let expect = &(&SymElem::y_pow(2, 4) * &s.theta[sigma.apply(3)]) * &s.theta[sigma.apply(2)];
        assert_eq!(r.hecke_eigenvalue(2), expect);
    }

    #[test]
    fn spin_counts_small() {
        for (n, expect) in [(1, 2), (2, 8)] {
            let s = SatakeParameter::generic_ag(n, 3);
            let refs = all_refinements(&s);
            let spin: Vec<_> = refs.iter().filter(|r| r.is_spin().unwrap()).collect();
            assert_eq!(spin.len(), expect);
            for r in &refs {
                assert_eq!(r.is_spin().unwrap(), in_wg0(&r.delta_tau()));
            }
        }
    }

    #[test]
    fn matching() {
        let s = SatakeParameter::generic_ag(2, 3);
        assert_eq!(shalika_admissible(&s.theta, &s.eta), Some(vec![(0, 2), (1, 3)]));
        let f = SatakeParameter::generic_free(2, 3);
        assert_eq!(shalika_admissible(&f.theta, &f.eta), None);
        let a = s.conjugate(&tau(2));
        assert_eq!(shalika_admissible(&a.theta, &a.eta), Some(vec![(0, 3), (1, 2)]));
    }

    #[test]
    fn transfer_route_agrees() {
        let s = SatakeParameter::generic_ag(2, 5);
        for r in all_refinements(&s) {
            if let Some(direct) = r.gspin_factorization().unwrap() {
                let other = r.gspin_via_transfer().unwrap();
                assert_eq!(direct.u.len(), other.u.len());
                for (a, b) in direct.u.iter().zip(&other.u) {
                    assert_eq!(a, b);
                }
                assert_eq!(direct.v, other.v);
            }
        }
    }

    #[test]
    fn normalization_identity_on_tau() {
        let s = SatakeParameter::generic_ag(2, 3);
        let r = Refinement::new(s, tau(2));
        let (_, rho) = normalize_satake(&r).unwrap();
        assert!(rho.is_identity());
    }

    #[test]
    fn slope_boundary() {
        // n = 1, λ = (k, 0): v(α°_{p,1}) = k + 1/2 + v(X_2)
        let s = SatakeParameter::generic_ag(1, 3);
        let r = Refinement::new(s, Perm::identity(2));
        let k = 3;
        let lam = [k, 0];
        // θ_2 = E·X_1^{-1}, so v(θ_2) = v(E) − v(X_1); shift via E
        let at = |slope_minus_k: Q| {
            let f = move |g: Gen| match g {
                Gen::E => &slope_minus_k - q_frac(1, 2),
                _ => q_frac(0, 1),
            };
            r.noncritical_slope(&lam, &f).unwrap()
        };
        assert!(!at(q_frac(1, 1)));
        assert!(at(q_frac(0, 1)));
    }
}
