//! Finite distributions on Iw^1 and the κ maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::series::{FamilyWeight, Series};
use super::{cell_ratio, in_iw_beta, sample_iw_beta, v_lambda_j, w_chi, w_chi_family, PureWeight};
use crate::error::{Error, Result};
use crate::padic::decompose::qpow_q;
use crate::padic::scalar::{congruent, is_unit, residue_u64};
use crate::padic::PadicMatrix;
use crate::shalikazeta::TwistCharacter;
use crate::symring::{q_int, CycNum, Q};

/// A locally Laurent-polynomial function on Z_p^×: on each unit residue class
/// mod p^c it is Σ a_e z^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocFunction {
    pub p: u64,
    pub level: u32,
    pieces: BTreeMap<u64, Vec<(i64, Q)>>,
}

impl LocFunction {
    pub fn monomial(p: u64, j: i64) -> Self {
        let mut pieces = BTreeMap::new();
        for r in (1..p).filter(|r| r % p != 0) {
            pieces.insert(r, vec![(j, Q::one())]);
        }
        LocFunction { p, level: 1, pieces }
    }

    /// Σ a_e z^e on the residue class r mod p^level, zero elsewhere.
    pub fn on_class(p: u64, level: u32, r: u64, terms: Vec<(i64, Q)>) -> Result<Self> {
        if r % p == 0 || r >= p.pow(level) {
            return Err(Error::Precondition("class must be a unit residue".into()));
        }
        Ok(LocFunction { p, level, pieces: BTreeMap::from([(r, terms)]) })
    }

    pub fn eval(&self, z: &Q) -> Result<Q> {
        if !is_unit(z, self.p) {
            return Err(Error::Precondition("locally analytic functions live on Z_p^×".into()));
        }
        let r = residue_u64(z, self.p, self.level);
        Ok(self
            .pieces
            .get(&r)
            .map(|ts| ts.iter().map(|(e, a)| a * qpow_q(z, *e)).sum())
            .unwrap_or_else(Q::zero))
    }
}

/// Σ c_k δ_{g_k} with g_k ∈ Iw^1.
#[derive(Clone, Debug)]
pub struct FiniteDistribution {
    pub p: u64,
    pub atoms: Vec<(Q, PadicMatrix)>,
}

impl FiniteDistribution {
    pub fn new(p: u64, atoms: Vec<(Q, PadicMatrix)>) -> Result<Self> {
        if atoms.iter().any(|(_, g)| !in_iw_beta(g, 1, p)) {
            return Err(Error::Precondition("atoms must lie in Iw^1".into()));
        }
        Ok(FiniteDistribution { p, atoms })
    }

    pub fn sample<R: Rng>(rng: &mut R, n: usize, p: u64, beta: u32, size: usize) -> Self {
        let atoms = (0..size)
            .map(|_| (q_int(rng.gen_range(-20..=20)), sample_iw_beta(rng, n, beta, p)))
            .collect();
        FiniteDistribution { p, atoms }
    }
}

fn ratio(g: &PadicMatrix) -> Result<Q> {
    cell_ratio(g).ok_or_else(|| Error::Internal("Iw^1 element off the open cell".into()))
}

/// κ_Ω(μ)(f) = μ(v_Ω(f)).
pub fn kappa_family(mu: &FiniteDistribution, fam: &FamilyWeight, f: &LocFunction) -> Result<Series> {
    let mut acc = Series::zero(fam.prec, fam.nvars());
    for (c, g) in &mu.atoms {
        let w = w_chi_family(fam, g)?;
        acc = acc.add(&w.scale(&(c * f.eval(&ratio(g)?)?))?);
    }
    Ok(acc)
}

/// κ_λ(μ)(f) = μ(w_λ·f(v_(n),2/v_(n),1)).
pub fn kappa_lambda(mu: &FiniteDistribution, w: &PureWeight, f: &LocFunction) -> Result<Q> {
    let mut acc = Q::zero();
    for (c, g) in &mu.atoms {
        acc += c * w_chi(w, g, mu.p)? * f.eval(&ratio(g)?)?;
    }
    Ok(acc)
}

/// μ paired with an arbitrary function on Iw^1.
pub fn r_lambda_pair(mu: &FiniteDistribution, v: impl Fn(&PadicMatrix) -> Result<Q>) -> Result<Q> {
    let mut acc = Q::zero();
    for (c, g) in &mu.atoms {
        acc += c * v(g)?;
    }
    Ok(acc)
}

/// κ_{λ,j}(μ) = μ(v_{λ,j}).
pub fn kappa_lambda_j(mu: &FiniteDistribution, w: &PureWeight, j: i64) -> Result<Q> {
    r_lambda_pair(mu, |g| v_lambda_j(w, j, g))
}

/// κ_λ(μ) as a finite distribution on Z_p^×: atoms (c·w_λ(g), ratio(g)).
#[derive(Clone, Debug)]
pub struct Push {
    pub p: u64,
    pub atoms: Vec<(Q, Q)>,
}

pub fn pushforward(mu: &FiniteDistribution, w: &PureWeight) -> Result<Push> {
    let atoms = mu
        .atoms
        .iter()
        .map(|(c, g)| Ok((c * w_chi(w, g, mu.p)?, ratio(g)?)))
        .collect::<Result<_>>()?;
    Ok(Push { p: mu.p, atoms })
}

impl Push {
    pub fn supported_in(&self, beta: u32) -> bool {
        self.atoms.iter().all(|(_, z)| congruent(z, &Q::one(), self.p, beta))
    }
}

/// ∫ χ(z) z^j dν.
pub fn moment(nu: &Push, chi: &TwistCharacter, j: i64) -> Result<CycNum> {
    let mut acc = CycNum::zero();
    for (c, z) in &nu.atoms {
        acc = &acc + &(&chi.eval_q(z)? * &CycNum::rational(c * qpow_q(z, j)));
    }
    Ok(acc)
}

pub fn residue_of(x: &Q, fam: &FamilyWeight) -> Result<BigInt> {
    fam.prec.reduce(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branchfam::series::Precision;
    use crate::branchfam::sample_iwh;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagram_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (centre, p) in [(vec![2, 0], 3u64), (vec![1, 0, 0, -1], 3), (vec![3, 1], 2)] {
            let prec = Precision { p, m: 8, d: 4 };
            let fam = FamilyWeight::new(centre.clone(), 2, prec).unwrap();
            let n = fam.n;
            let mu = FiniteDistribution::sample(&mut rng, n, p, 1, 3);
            let f = LocFunction::on_class(p, 2, 1 + p, vec![(0, q_int(2)), (1, q_int(-1))]).unwrap();
            let mut shifted = centre.clone();
            shifted[0] += fam.step();
            shifted[2 * n - 1] -= fam.step();
            for l in [centre.clone(), shifted] {
                let w = PureWeight::new(l.clone()).unwrap();
                let fam_val = kappa_family(&mu, &fam, &f).unwrap();
                let direct = kappa_lambda(&mu, &w, &f).unwrap();
                assert_eq!(fam.specialize(&fam_val, &l).unwrap(), prec.reduce(&direct).unwrap());
                for j in w.crit() {
                    let lhs = kappa_lambda(&mu, &w, &LocFunction::monomial(p, j)).unwrap();
                    assert_eq!(lhs, kappa_lambda_j(&mu, &w, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn h_action_on_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = 3;
        let prec = Precision { p, m: 8, d: 4 };
        let fam = FamilyWeight::new(vec![2, 1, 0, -1], 2, prec).unwrap();
        let f = LocFunction::on_class(p, 1, 1, vec![(2, q_int(1))]).unwrap();
        for _ in 0..3 {
            let g = sample_iw_beta(&mut rng, 2, 1, p);
            let h = sample_iwh(&mut rng, 2, p);
            let (h1, h2) = (h.blocks().0.det(), h.blocks().3.det());
            let gh = g.mul(&h);
            let rhs = w_chi_family(&fam, &gh).unwrap().scale(&f.eval(&ratio(&gh).unwrap()).unwrap()).unwrap();
            let z = &h2 / &h1 * ratio(&g).unwrap();
            let lhs = w_chi_family(&fam, &g)
                .unwrap()
                .mul(&fam.coordinate(0, &h2).unwrap())
                .scale(&f.eval(&z).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn support_of_pushforward() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for beta in 1..=3 {
            let mu = FiniteDistribution::sample(&mut rng, 1, 3, beta, 4);
            let w = PureWeight::new(vec![2, -1]).unwrap();
            let nu = pushforward(&mu, &w).unwrap();
            assert!(nu.supported_in(beta));
            // χ of conductor ≤ p^β is invisible on the support
            for chi in TwistCharacter::all(3, beta) {
                assert_eq!(moment(&nu, &chi, 1).unwrap(), moment(&nu, &TwistCharacter::trivial(3), 1).unwrap());
            }
        }
    }
}
