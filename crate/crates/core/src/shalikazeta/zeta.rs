//! Shalika-model values and local zeta integrals: closed forms for all n and
//! brute-force shell sums at n = 1.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::character::{RootSum, TwistCharacter};
use crate::error::{Error, Result};
use crate::padic::measure::{upsilon_double_prime, upsilon_prime};
use crate::padic::{bruhat_cell, valuation, PadicMatrix};
use crate::perm::Perm;
use crate::princhecke::PSVector;
use crate::refine::{Refinement, SatakeParameter};
use crate::rootspin::{delta_b, tau};
use crate::symring::{geometric_tail, q_int, q_pow, CycNum, Gen, SymElem, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
}

#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub value: SymElem,
    pub provenance: Provenance,
}

fn sym_s(p: u64, k: i64) -> Result<SymElem> {
    SymElem::gen(Gen::S).with_prime(p).pow(k)
}

fn sym_e(p: u64, k: i64) -> Result<SymElem> {
    SymElem::gen(Gen::E).with_prime(p).pow(k)
}

fn rat(p: u64, q: Q) -> SymElem {
    SymElem::rational(q).with_prime(p)
}

/// t_p = diag(p^n z, z) = diag(p^{2n−1}, …, p, 1) as exponents.
pub fn t_p_exponents(n: usize) -> Vec<i64> {
    (0..2 * n).map(|i| (2 * n - 1 - i) as i64).collect()
}

/// (−1)^n·sign(w_n) = det(−w_n).
pub fn det_minus_wn(n: usize) -> i64 {
    let s = Perm::longest(n).sign();
    if n % 2 == 0 {
        s
    } else {
        -s
    }
}

/// u^{−1}t_p^β at n = 1, i.e. (p^β, −1; 0, 1).
pub fn g0(beta: u32, p: u64) -> PadicMatrix {
    PadicMatrix::from_rows(vec![vec![q_pow(p, beta as i64), q_int(-1)], vec![Q::zero(), Q::one()]])
}

/// Smallest L ≥ 0 with g^{−1}(1 y; 0 1)g ∈ Iw for all y ∈ p^L Z_p.
fn resolution(g: &PadicMatrix, p: u64) -> Result<u32> {
    let ginv = g.inverse()?;
    let mut e = PadicMatrix::zeros(2);
    e[(0, 1)] = Q::one();
    let m = ginv.mul(&e).mul(g);
    let mut l = 0i64;
    for i in 0..2 {
        for j in 0..2 {
            if let Some(v) = valuation(&m[(i, j)], p) {
                let need = if i == 1 && j == 0 { 1 } else { 0 };
                l = l.max(need - v);
            }
        }
    }
    Ok(l as u32)
}

/// W(g) = 𝒮(f)(g) = ∫_{Q_p} f[(0 1; 1 0)(1 X; 0 1)g]ψ^{−1}(X)dX at n = 1.
///
/// X runs over p^{−shells}Z_p modulo p^L, each class weighted p^{−L}. The
/// shell v(X) = −shells must sum to zero, otherwise the truncation is
/// rejected.
pub fn ag_intertwine_value(f: &PSVector, g: &PadicMatrix, shells: u32) -> Result<SymElem> {
    if f.satake.n != 1 {
        return Err(Error::Precondition("the intertwining oracle is implemented for n = 1 only".into()));
    }
    let p = f.p();
    let l = resolution(g, p)?;
    let order = p.pow(shells);
    let count = p.pow(shells + l);
    let j = PadicMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let base = j.mul(g);
    // (cell, torus) -> counts of ψ^{−1} exponents, all X and outermost shell
    type Acc = BTreeMap<(Perm, Vec<i64>), (Vec<u64>, Vec<u64>)>;
    let mut acc: Acc = BTreeMap::new();
    let den = q_pow(p, -(shells as i64));
    for a in 0..count {
        let x = q_int(a as i64) * &den;
        // J(1 X; 0 1)g = Jg + J·X·E12·g
        let mut m = base.clone();
        for c in 0..2 {
            let add = &x * &g[(1, c)];
            m[(1, c)] = &m[(1, c)] + &add;
        }
        let cell = bruhat_cell(&m, p)?;
        if !f.coeffs.contains_key(&cell.w) {
            continue;
        }
        let e = ((order - a % order) % order) as usize;
        let ent = acc.entry((cell.w, cell.torus)).or_insert_with(|| (vec![0; order as usize], vec![0; order as usize]));
        ent.0[e] += 1;
        if shells > 0 && a % p != 0 {
            ent.1[e] += 1;
        }
    }
    let weight = rat(p, q_pow(p, -(l as i64)));
    let mut total = SymElem::zero().with_prime(p);
    let mut outer = SymElem::zero().with_prime(p);
    for ((w, t), (all, edge)) in acc {
        let c = &f.coeff(&w) * &f.torus_character(&t)?;
        let mut s = RootSum::new(order);
        s.add_counts(&all);
        total = &total + &(&c * &SymElem::cyc(s.value()));
        let mut s = RootSum::new(order);
        s.add_counts(&edge);
        outer = &outer + &(&c * &SymElem::cyc(s.value()));
    }
    if !outer.is_zero() {
        return Err(Error::Uncertified(format!("outer X-shell v = −{} contributes {}", shells, outer)));
    }
    Ok(&total * &weight)
}

/// F_{w_n}: the cell indicator of (0 w_n; 1 0) in Ind θ.
pub fn shalika_test_vector(satake: &SatakeParameter) -> PSVector {
    let n = satake.n;
    let w = super::support::target_cell(&Perm::longest(n));
    PSVector::cell_indicator(satake.clone(), Perm::identity(2 * n), w)
}

/// ∫_{Q_p^×} W(diag(x, 1)u^{−1}t_p^β)χ(x)|x|^{s−1/2}d^×x at n = 1 by shells
/// in v(x) and residues of the unit part mod p^β.
pub fn zeta_iwahori_oracle(f: &PSVector, chi: &TwistCharacter, shells: u32) -> Result<ZetaResult> {
    if f.satake.n != 1 {
        return Err(Error::Precondition("zeta oracle is implemented for n = 1 only".into()));
    }
    if !chi.is_ramified() {
        return Err(Error::Precondition("Iwahori zeta oracle needs ramified χ".into()));
    }
    let p = f.p();
    let beta = chi.beta;
    let g = g0(beta, p);
    let b = beta as i64;
    let ms: Vec<i64> = (-b - 1..=1).collect();
    let units: Vec<u64> = (1..chi.modulus()).filter(|c| c % p != 0).collect();
    let terms = ms
        .par_iter()
        .map(|&m| {
            let mut acc = SymElem::zero().with_prime(p);
            for &c in &units {
                let d = PadicMatrix::diag(vec![q_pow(p, m) * q_int(c as i64), Q::one()]);
                let w = ag_intertwine_value(f, &d.mul(&g), shells)?;
                acc = &acc + &w.scale(&chi.eval(c as i64));
            }
            let avg = rat(p, Q::one() / q_int(units.len() as i64));
            Ok(&(&acc * &avg) * &(&sym_s(p, -m)? * &SymElem::y_pow(p, m)))
        })
        .collect::<Result<Vec<_>>>()?;
    let last = terms.len() - 1;
    if !terms[0].is_zero() || !terms[last].is_zero() {
        return Err(Error::Uncertified("edge x-shells of the zeta integral are nonzero".into()));
    }
    let mut value = SymElem::zero().with_prime(p);
    for t in &terms {
        value = &value + t;
    }
    Ok(ZetaResult { value, provenance: Provenance::Oracle })
}

/// Υ′·η(det z^β)·p^{−β(n²+n)/2}·p^{βn(s−1/2)}·τ(χ)^n·χ(det(−w_n))·w_base.
pub fn zeta_iwahori_closed(w_base: &SymElem, chi: &TwistCharacter, n: usize) -> Result<ZetaResult> {
    if !chi.is_ramified() {
        return Err(Error::Precondition("Iwahori closed form needs ramified χ".into()));
    }
    let p = chi.p;
    let b = chi.beta as i64;
    let ni = n as i64;
    let tau_n = chi.gauss_sum()?.pow(ni).expect("positive power");
    let mut v = rat(p, upsilon_prime(n, p));
    v = &v * &sym_e(p, b * ni * (ni - 1) / 2)?;
    v = &v * &SymElem::y_pow(p, -b * (ni * ni + ni) - b * ni);
    v = &v * &sym_s(p, b * ni)?;
    v = &v * &SymElem::cyc(&tau_n * &chi.eval(det_minus_wn(n)));
    v = &v * w_base;
    Ok(ZetaResult { value: v, provenance: Provenance::ClosedForm })
}

/// W(diag(w_n z^{2β}, 1)) = Υ″·p^{βn²}·δ_B(t_p)^β·η(det z^β)^{−1}·(α_p/α_{p,n})^β
/// for the refinement (θ, τ), θ satisfying θ_iθ_{n+i} = η.
pub fn w_value_closed(satake: &SatakeParameter, beta: u32) -> Result<SymElem> {
    if !satake.ag {
        return Err(Error::Precondition("Satake parameter is not normalised (θ_iθ_{n+i} ≠ η)".into()));
    }
    let n = satake.n;
    let p = satake.p;
    let b = beta as i64;
    let ni = n as i64;
    let r = Refinement::new(satake.clone(), tau(n));
    let ratio = r.up_eigenvalue().div(&r.hecke_eigenvalue(n))?;
    let mut v = rat(p, upsilon_double_prime(n, p));
    v = &v * &SymElem::p_pow(p, b * ni * ni);
    v = &v * &delta_b(p, &t_p_exponents(n)).pow(b)?;
    v = &v * &sym_e(p, -b * ni * (ni - 1) / 2)?;
    v = &v * &ratio.pow(b)?;
    Ok(v)
}

/// The same value via the Borel part: δ_B^{1/2}θ(diag(1, z^{2β}))·Υ″·p^{β(n²−n³)},
/// F_{w_n} living in Ind θ for the normalised θ.
pub fn w_value_via_borel(satake: &SatakeParameter, beta: u32) -> Result<SymElem> {
    let n = satake.n;
    let p = satake.p;
    let th = super::support::unramified_character(&satake.theta, &Perm::identity(n * 2), p);
    let t = super::support::expected_borel_torus(n, beta);
    let ni = n as i64;
    let mut v = th(&t)?;
    v = &v * &rat(p, upsilon_double_prime(n, p));
    v = &v * &SymElem::p_pow(p, beta as i64 * (ni * ni - ni * ni * ni));
    Ok(v)
}

/// w_value_closed after moving a spin refinement to (θ′, τ).
pub fn w_value_for_refinement(r: &Refinement, beta: u32) -> Result<SymElem> {
    let (th, _) = crate::refine::normalize_satake(r)?;
    w_value_closed(&th, beta)
}

/// q^{βn(s−n/2)+δn(s−n/2−1)}·χ(det(−w_n))·Q(π, χ, s) with β = max(1, β′).
pub fn zeta_parahoric_closed(satake: &SatakeParameter, chi: &TwistCharacter, delta_f: i64) -> Result<ZetaResult> {
    let n = satake.n;
    let p = satake.p;
    let ni = n as i64;
    let beta = chi.beta.max(1) as i64;
    let mut pre = &sym_s(p, beta * ni + delta_f * ni)? * &SymElem::y_pow(p, -beta * ni * ni - delta_f * ni * (ni + 2));
    pre = &pre * &SymElem::cyc(chi.eval(det_minus_wn(n)));
    Ok(ZetaResult { value: &pre * &q_factor(satake, chi)?, provenance: Provenance::ClosedForm })
}

/// Q(π, χ, s): the ramified row p^{−βn}(p/(p−1))^nτ(χ)^n, or the unramified
/// row (1−p)^{−n}∏_{i>n}(1 − pθ_iS^{−1})/(1 − θ_iS^{−1}).
pub fn q_factor(satake: &SatakeParameter, chi: &TwistCharacter) -> Result<SymElem> {
    let n = satake.n;
    let p = satake.p;
    let ni = n as i64;
    let beta = chi.beta.max(1) as i64;
    let q = if chi.is_ramified() {
        let tau_n = chi.gauss_sum()?.pow(ni).expect("positive power");
        let c = q_pow(p, -beta * ni) * num_traits::pow(q_int(p as i64) / q_int(p as i64 - 1), n);
        SymElem::cyc(tau_n).scale(&CycNum::rational(c))
    } else {
        let mut acc = rat(p, num_traits::pow((Q::one() - q_int(p as i64)).recip(), n));
        for i in n..2 * n {
            let x = &satake.theta[i] * &sym_s(p, -1)?;
            let num = &SymElem::one().with_prime(p) - &(&x * &SymElem::int(p as i64));
            acc = &acc * &geometric_tail(&num, &x)?;
        }
        acc
    };
    Ok(q)
}

/// Shell sum for ∫_{O−0} θ|·|^{s−1}(t)χ(tp^{−β})ψ(−tp^{−β})dt at n = 1, δ_F = 0,
/// times the prefactor q^{β(s−1/2)}.
pub fn zeta_parahoric_oracle(satake: &SatakeParameter, chi: &TwistCharacter, shells: u32) -> Result<ZetaResult> {
    if satake.n != 1 {
        return Err(Error::Precondition("parahoric oracle is implemented for n = 1 only".into()));
    }
    if shells < 3 {
        return Err(Error::Precondition("parahoric oracle needs at least 3 shells".into()));
    }
    let p = satake.p;
    let beta = chi.beta.max(1);
    let theta = &satake.theta[1];
    let ratio = theta * &sym_s(p, -1)?;
    let terms = (0..=shells as i64)
        .map(|k| Ok(&ratio.pow(k)? * &SymElem::cyc(shell_average(chi, p, beta, k))))
        .collect::<Result<Vec<_>>>()?;
    let kk = terms.len() - 1;
    let mut sum = SymElem::zero().with_prime(p);
    for t in &terms[..kk] {
        sum = &sum + t;
    }
    let tail = if terms[kk].is_zero() && terms[kk - 1].is_zero() {
        SymElem::zero()
    } else {
        let r1 = terms[kk].div(&terms[kk - 1])?;
        let r0 = terms[kk - 1].div(&terms[kk - 2])?;
        if r1 != r0 || !r1.is_unit_monomial() {
            return Err(Error::Uncertified("parahoric shells are not yet geometric".into()));
        }
        geometric_tail(&terms[kk], &r1)?
    };
    let pre = &sym_s(p, beta as i64)? * &SymElem::y_pow(p, -(beta as i64));
    Ok(ZetaResult { value: &pre * &(&sum + &tail), provenance: Provenance::Oracle })
}

/// avg_{u ∈ (Z/p^R)^×} χ(u)ψ(−u p^{k−β}), R = max(β, 1).
pub fn shell_average(chi: &TwistCharacter, p: u64, beta: u32, k: i64) -> CycNum {
    let r = beta.max(chi.beta).max(1);
    let modulus = p.pow(r);
    let psi_order = if k < beta as i64 { p.pow(beta - k as u32) } else { 1 };
    let phi = chi.phi();
    let l = num_integer::lcm(phi, psi_order);
    let mut acc = RootSum::new(l);
    let mut count = 0i64;
    for u in 0..modulus {
        if u % p == 0 {
            continue;
        }
        count += 1;
        let e_chi = if chi.beta == 0 { 0 } else { chi.exponent(u % chi.modulus()).unwrap() };
        let e = (e_chi * (l / phi)) as i64 - (u % psi_order) as i64 * (l / psi_order) as i64;
        acc.add(e, 1);
    }
    acc.value().scale(&(Q::one() / q_int(count)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::all_refinements;
    use crate::symring::q_frac;

    #[test]
    fn ag_value_at_identity() {
        for p in [2, 3] {
            let s = SatakeParameter::generic_ag(1, p);
            let f = shalika_test_vector(&s);
            let w = ag_intertwine_value(&f, &PadicMatrix::identity(2), 3).unwrap();
            assert!(w.is_one(), "W(1) = {}", w);
            assert_eq!(w, w_value_closed(&s, 1).unwrap());
        }
    }

    #[test]
    fn ag_support_lemma() {
        let s = SatakeParameter::generic_ag(1, 3);
        let f = shalika_test_vector(&s);
        let g = PadicMatrix::diag(vec![q_frac(1, 3), Q::one()]);
        assert!(ag_intertwine_value(&f, &g, 3).unwrap().is_zero());
    }

    #[test]
    fn ag_truncation_is_checked() {
        let s = SatakeParameter::generic_ag(1, 3);
        let f = PSVector::cell_indicator(s, Perm::identity(2), Perm::identity(2));
        assert!(matches!(ag_intertwine_value(&f, &PadicMatrix::identity(2), 1), Err(Error::Uncertified(_))));
    }

    #[test]
    fn ag_shalika_equivariance() {
        let p = 3;
        let s = SatakeParameter::generic_ag(1, p);
        let f = shalika_test_vector(&s);
        let g = PadicMatrix::from_ints(&[&[3, 1], &[0, 1]]);
        let w = ag_intertwine_value(&f, &g, 3).unwrap();
        // (1 x; 0 1) with x = 2/3
        let ux = PadicMatrix::from_rows(vec![vec![Q::one(), q_frac(2, 3)], vec![Q::zero(), Q::one()]]);
        let lhs = ag_intertwine_value(&f, &ux.mul(&g), 4).unwrap();
        assert_eq!(lhs, w.scale(&CycNum::root_of_unity(3, 2)));
        // diag(p, p) acts by η(p) = E
        let pg = PadicMatrix::diag(vec![q_int(3), q_int(3)]).mul(&g);
        let lhs = ag_intertwine_value(&f, &pg, 4).unwrap();
        assert_eq!(lhs, &w * &SymElem::gen(Gen::E));
    }

    #[test]
    fn iwahori_oracle_matches_closed() {
        for (p, beta) in [(3, 1), (2, 2), (3, 2)] {
            let s = SatakeParameter::generic_ag(1, p);
            let f = shalika_test_vector(&s);
            let wb = w_value_closed(&s, beta).unwrap();
            for chi in TwistCharacter::all_primitive(p, beta) {
                let o = zeta_iwahori_oracle(&f, &chi, beta + 2).unwrap();
                let c = zeta_iwahori_closed(&wb, &chi, 1).unwrap();
                assert_eq!(o.value, c.value, "p={p} β={beta}");
            }
        }
    }

    #[test]
    fn iwahori_closed_example() {
        let chi = TwistCharacter::quadratic(3).unwrap();
        let z = zeta_iwahori_closed(&SymElem::one().with_prime(3), &chi, 1).unwrap().value;
        let tau = &CycNum::root_of_unity(3, 1) - &CycNum::root_of_unity(3, 2);
        let expect = &(&rat(3, q_frac(3, 2) * q_frac(1, 3)) * &(&sym_s(3, 1).unwrap() * &SymElem::y_pow(3, -1)))
            * &SymElem::cyc(&tau * &chi.eval(-1));
        assert_eq!(z, expect);
    }

    #[test]
    fn parahoric_oracle_matches_closed() {
        for p in [2, 3] {
            let s = SatakeParameter::generic_ag(1, p);
            let triv = TwistCharacter::trivial(p);
            let o = zeta_parahoric_oracle(&s, &triv, 4).unwrap();
            let c = zeta_parahoric_closed(&s, &triv, 0).unwrap();
            assert_eq!(o.value, c.value);
            for beta in 1..=2 {
                for chi in TwistCharacter::all_primitive(p, beta) {
                    let o = zeta_parahoric_oracle(&s, &chi, 4).unwrap();
                    let c = zeta_parahoric_closed(&s, &chi, 0).unwrap();
                    assert_eq!(o.value, c.value);
                }
            }
        }
    }

    #[test]
    fn w_value_routes_agree() {
        for n in 1..=3 {
            let p = 2;
            let s = SatakeParameter::generic_ag(n, p);
            for beta in 1..=2 {
                let a = w_value_closed(&s, beta).unwrap();
                assert!(a.is_unit_monomial());
                assert_eq!(a, w_value_via_borel(&s, beta).unwrap(), "n={n} β={beta}");
            }
        }
    }

    #[test]
    fn w_value_nonzero_on_spin() {
        let s = SatakeParameter::generic_ag(2, 3);
        for r in all_refinements(&s) {
            if r.is_spin().unwrap() {
                assert!(w_value_for_refinement(&r, 1).unwrap().is_unit_monomial());
            }
        }
    }
}
