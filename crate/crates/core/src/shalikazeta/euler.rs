//! Modified Euler factors at p, the Q′ factor, and the comparison of the
//! Iwahori-level and parahoric-level interpolation values.

use std::collections::BTreeMap;

use super::character::TwistCharacter;
use super::zeta::{det_minus_wn, q_factor, t_p_exponents, w_value_closed, zeta_iwahori_closed, zeta_parahoric_closed};
use crate::branchfam::crit_range;
use crate::error::{Error, Result};
use crate::padic::measure::{upsilon_double_prime, upsilon_prime};
use crate::refine::{Refinement, SatakeParameter};
use crate::rootspin::{delta_b, tau};
use crate::symring::{q_int, sym_eval, CycNum, Gen, SymElem, Q};

pub fn alpha_pn(satake: &SatakeParameter) -> SymElem {
    Refinement::new(satake.clone(), tau(satake.n)).hecke_eigenvalue(satake.n)
}

fn check_crit(lambda: &[i64], j: i64) -> Result<()> {
    if !crit_range(lambda)?.contains(&j) {
        return Err(Error::Precondition(format!("j = {} is not critical for {:?}", j, lambda)));
    }
    Ok(())
}

/// S ↦ p^j·Y, i.e. s = j + 1/2.
pub fn at_critical(e: &SymElem, p: u64, j: i64) -> Result<SymElem> {
    let assign = BTreeMap::from([(Gen::S, SymElem::y_pow(p, 2 * j + 1))]);
    sym_eval(e, &assign)
}

/// e_p(π̃, χ, j). Ramified: (p^{nj+(n²−n)/2}/α_{p,n})^β·τ(χ)^n. Unramified:
/// ∏_{i>n}(1 − p^{−1}α_i^{−1})/(1 − α_i) with α_i = θ_i/p^{j+1/2}.
pub fn ep_factor(satake: &SatakeParameter, chi: &TwistCharacter, j: i64, lambda: &[i64]) -> Result<SymElem> {
    check_crit(lambda, j)?;
    let n = satake.n as i64;
    let p = satake.p;
    if chi.is_ramified() {
        let b = chi.beta as i64;
        let num = SymElem::p_pow(p, n * j + (n * n - n) / 2);
        let base = num.div(&alpha_pn(satake))?;
        let tau_n = chi.gauss_sum()?.pow(n).expect("positive power");
        return Ok(&base.pow(b)? * &SymElem::cyc(tau_n));
    }
    let one = SymElem::one().with_prime(p);
    let mut acc = one.clone();
    for th in &satake.theta[satake.n..] {
        let a = &(th * &SymElem::p_pow(p, -j)) * &SymElem::y_pow(p, -1);
        let den = &one - &a;
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!("1 − {}", a)));
        }
        let num = &one - &(&SymElem::p_pow(p, -1) * &a.inv()?);
        acc = &acc * &num.div(&den)?;
    }
    Ok(acc)
}

/// Q′(π, χ, j) = p^{β(nj+(n²−n)/2)}·τ(χ)^n.
pub fn qprime_factor(chi: &TwistCharacter, j: i64, n: usize) -> Result<SymElem> {
    if !chi.is_ramified() {
        return Err(Error::Precondition("Q′ is defined for ramified χ".into()));
    }
    let ni = n as i64;
    let b = chi.beta as i64;
    let tau_n = chi.gauss_sum()?.pow(ni).expect("positive power");
    Ok(&SymElem::p_pow(chi.p, b * (ni * j + (ni * ni - ni) / 2)) * &SymElem::cyc(tau_n))
}

/// e_p(π̃, 1, j)/Q(π, 1, j + 1/2) divided by (1 − p)^n; a unit monomial.
pub fn unramified_ratio(satake: &SatakeParameter, j: i64, lambda: &[i64]) -> Result<SymElem> {
    let p = satake.p;
    let triv = TwistCharacter::trivial(p);
    let e = ep_factor(satake, &triv, j, lambda)?;
    let q = at_critical(&q_factor(satake, &triv)?, p, j)?;
    let one_minus_p = num_traits::pow(q_int(1) - q_int(p as i64), satake.n);
    let r = e.div(&q)?.scale(&CycNum::rational(one_minus_p.recip()));
    if !r.is_unit_monomial() {
        return Err(Error::NotUnitMonomial(r.to_string()));
    }
    Ok(r)
}

fn formal_g(p: u64) -> SymElem {
    SymElem::gen(Gen::G).with_prime(p)
}

/// Iwahori route: G·δ_B(t_p)^{−β}α_p^{−β}·ζ_Iw at s = j + 1/2 (ramified χ),
/// or γ·χ(det(−w_n))·e_p with γ = G·Υ′·Υ″ for trivial χ.
pub fn iwahori_route(satake: &SatakeParameter, chi: &TwistCharacter, j: i64, lambda: &[i64]) -> Result<SymElem> {
    let n = satake.n;
    let p = satake.p;
    if !chi.is_ramified() {
        let gamma = formal_g(p).scale(&CycNum::rational(upsilon_prime(n, p) * upsilon_double_prime(n, p)));
        let sign = SymElem::cyc(chi.eval(det_minus_wn(n)));
        return Ok(&(&gamma * &sign) * &ep_factor(satake, chi, j, lambda)?);
    }
    check_crit(lambda, j)?;
    let b = chi.beta as i64;
    let w = w_value_closed(satake, chi.beta)?;
    let z = at_critical(&zeta_iwahori_closed(&w, chi, n)?.value, p, j)?;
    let ap = Refinement::new(satake.clone(), tau(n)).up_eigenvalue();
    let scale = &delta_b(p, &t_p_exponents(n)).pow(-b)? * &ap.pow(-b)?;
    Ok(&(&formal_g(p) * &scale) * &z)
}

/// Parahoric route: G·p^{βn²}α_{p,n}^{−β}·ζ_par at s = j + 1/2, β = max(1, β′).
pub fn parahoric_route(satake: &SatakeParameter, chi: &TwistCharacter, j: i64, lambda: &[i64]) -> Result<SymElem> {
    check_crit(lambda, j)?;
    let n = satake.n as i64;
    let p = satake.p;
    let b = chi.beta.max(1) as i64;
    let z = at_critical(&zeta_parahoric_closed(satake, chi, 0)?.value, p, j)?;
    let scale = &SymElem::p_pow(p, b * n * n) * &alpha_pn(satake).pow(-b)?;
    Ok(&(&formal_g(p) * &scale) * &z)
}

/// The ratio of the two routes, required to be one element for every pair.
pub fn comparison_constant(satake: &SatakeParameter, lambda: &[i64], pairs: &[(TwistCharacter, i64)]) -> Result<SymElem> {
    if pairs.is_empty() {
        return Err(Error::Precondition("comparison needs at least one pair".into()));
    }
    let mut first: Option<(String, SymElem)> = None;
    for (chi, j) in pairs {
        if chi.is_ramified() && !chi.is_primitive() {
            return Err(Error::Precondition("ramified χ must be primitive".into()));
        }
        let r = iwahori_route(satake, chi, *j, lambda)?.div(&parahoric_route(satake, chi, *j, lambda)?)?;
        let label = format!("(χ mod {}, j = {})", chi.modulus(), j);
        match &first {
            None => first = Some((label, r)),
            Some((l0, r0)) if *r0 != r => {
                return Err(Error::RatioVaries(format!("{} gives {}, {} gives {}", l0, r0, label, r)));
            }
            _ => {}
        }
    }
    Ok(first.expect("nonempty").1)
}

/// Υ′·Υ″·((p−1)/p)^n, the value the comparison is expected to return.
pub fn expected_comparison(n: usize, p: u64) -> Q {
    let f = (q_int(p as i64) - q_int(1)) / q_int(p as i64);
    upsilon_prime(n, p) * upsilon_double_prime(n, p) * num_traits::pow(f, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramified_ep_over_qprime() {
        for (n, p, b) in [(1, 3, 1), (1, 2, 2), (2, 3, 1), (2, 2, 3)] {
            let s = SatakeParameter::generic_ag(n, p);
            let lambda: Vec<i64> = if n == 1 { vec![1, 0] } else { vec![2, 1, -1, -2] };
            for chi in TwistCharacter::all_primitive(p, b).into_iter().take(2) {
                for j in crit_range(&lambda).unwrap() {
                    let r = ep_factor(&s, &chi, j, &lambda).unwrap().div(&qprime_factor(&chi, j, n).unwrap()).unwrap();
                    assert_eq!(r, alpha_pn(&s).pow(-(b as i64)).unwrap());
                }
            }
        }
    }

    #[test]
    fn unramified_shape_n1() {
        // (1 − p^{−1}α^{−1})/(1 − α) with α = E X_1^{−1} p^{−j} Y^{−1}
        let p = 3;
        let s = SatakeParameter::generic_ag(1, p);
        let e = ep_factor(&s, &TwistCharacter::trivial(p), 0, &[1, 0]).unwrap();
        let one = SymElem::one().with_prime(p);
        let a = &s.theta[1] * &SymElem::y_pow(p, -1);
        let want = (&one - &(&SymElem::p_pow(p, -1) * &a.inv().unwrap())).div(&(&one - &a)).unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn unramified_ratio_is_unit_monomial() {
        for (n, p) in [(1, 2), (1, 3), (2, 3)] {
            let s = SatakeParameter::generic_ag(n, p);
            let lambda: Vec<i64> = if n == 1 { vec![1, 0] } else { vec![2, 1, -1, -2] };
            for j in crit_range(&lambda).unwrap() {
                assert!(unramified_ratio(&s, j, &lambda).unwrap().is_unit_monomial());
            }
        }
    }

    #[test]
    fn comparison_is_constant() {
        let p = 3;
        let s = SatakeParameter::generic_ag(1, p);
        let q = TwistCharacter::quadratic(p).unwrap();
        let pairs = vec![(q.clone(), 0), (q, -1), (TwistCharacter::trivial(p), 0)];
        let c = comparison_constant(&s, &[1, 0], &pairs).unwrap();
        assert_eq!(c, SymElem::rational(expected_comparison(1, p)).with_prime(p));

        let s2 = SatakeParameter::generic_ag(2, 2);
        let mut pairs2: Vec<_> = (-1..=1).map(|j| (TwistCharacter::all_primitive(2, 2)[0].clone(), j)).collect();
        pairs2.push((TwistCharacter::trivial(2), 0));
        let c2 = comparison_constant(&s2, &[2, 1, -1, -2], &pairs2).unwrap();
        assert_eq!(c2, SymElem::rational(expected_comparison(2, 2)).with_prime(2));
    }

    #[test]
    fn off_critical_rejected() {
        let s = SatakeParameter::generic_ag(1, 3);
        assert!(ep_factor(&s, &TwistCharacter::trivial(3), 2, &[1, 0]).is_err());
    }
}
