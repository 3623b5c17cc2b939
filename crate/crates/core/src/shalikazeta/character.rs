//! Dirichlet characters of (Z/p^β)^× with χ(p) = 1, Gauss sums and sums of
//! roots of unity.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::scalar::{residue_u64, split_unit};
use crate::symring::cyc::euler_phi;
use crate::symring::{q_int, CycNum, Q};

/// Accumulates Σ w_k ζ_L^k with integer weights before reducing once.
#[derive(Clone, Debug)]
pub struct RootSum {
    order: u64,
    raw: Vec<Q>,
}

impl RootSum {
    pub fn new(order: u64) -> Self {
        RootSum { order, raw: vec![Q::zero(); order as usize] }
    }

    pub fn add(&mut self, k: i64, w: i64) {
        let i = k.rem_euclid(self.order as i64) as usize;
        self.raw[i] += q_int(w);
    }

    pub fn add_counts(&mut self, counts: &[u64]) {
        assert_eq!(counts.len(), self.raw.len());
        for (r, c) in self.raw.iter_mut().zip(counts) {
            if *c != 0 {
                *r += q_int(*c as i64);
            }
        }
    }

    pub fn value(self) -> CycNum {
        CycNum::from_power_sums(self.order, self.raw)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCharacter {
    pub p: u64,
    pub beta: u32,
    modulus: u64,
    /// χ(c) = ζ_φ^{e(c)}, `None` on non-units.
    exps: Vec<Option<u64>>,
    phi: u64,
}

/// Generators of (Z/p^β)^× with their orders.
fn generators(p: u64, beta: u32) -> Vec<(u64, u64)> {
    let m = p.pow(beta);
    if beta == 0 || m == 2 {
        return vec![];
    }
    if p == 2 {
        if beta == 2 {
            return vec![(3, 2)];
        }
        return vec![(m - 1, 2), (5, m / 4)];
    }
    let phi = euler_phi(m);
    let g = (2..m)
        .find(|&g| g.gcd(&m) == 1 && multiplicative_order(g, m) == phi)
        .expect("p^β has a primitive root for odd p");
    vec![(g, phi)]
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

impl TwistCharacter {
    pub fn trivial(p: u64) -> Self {
        TwistCharacter { p, beta: 0, modulus: 1, exps: vec![Some(0)], phi: 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Every character mod p^β, in a fixed order.
    pub fn all(p: u64, beta: u32) -> Vec<TwistCharacter> {
        if beta == 0 {
            return vec![Self::trivial(p)];
        }
        let m = p.pow(beta);
        let phi = euler_phi(m);
        let gens = generators(p, beta);
        // index every unit by its exponent vector on the generators
        let mut coords: Vec<Option<Vec<u64>>> = vec![None; m as usize];
        coords[1] = Some(vec![0; gens.len()]);
        let mut frontier = vec![1u64];
        while let Some(x) = frontier.pop() {
            let cx = coords[x as usize].clone().unwrap();
            for (gi, (g, ord)) in gens.iter().enumerate() {
                let y = x * g % m;
                if coords[y as usize].is_none() {
                    let mut cy = cx.clone();
                    cy[gi] = (cy[gi] + 1) % ord;
                    coords[y as usize] = Some(cy);
                    frontier.push(y);
                }
            }
        }
        let mut ks: Vec<Vec<u64>> = vec![vec![]];
        for (_, ord) in &gens {
            ks = ks
                .into_iter()
                .flat_map(|k| {
                    (0..*ord).map(move |x| {
                        let mut k2 = k.clone();
                        k2.push(x);
                        k2
                    })
                })
                .collect();
        }
        ks.into_iter()
            .map(|k| {
                let exps = coords
                    .iter()
                    .map(|c| {
                        c.as_ref().map(|a| {
                            a.iter()
                                .zip(&k)
                                .zip(&gens)
                                .map(|((ai, ki), (_, ord))| ai * ki * (phi / ord))
                                .sum::<u64>()
                                % phi
                        })
                    })
                    .collect();
                TwistCharacter { p, beta, modulus: m, exps, phi }
            })
            .collect()
    }

    /// Characters of conductor exactly p^β.
    pub fn all_primitive(p: u64, beta: u32) -> Vec<TwistCharacter> {
        Self::all(p, beta).into_iter().filter(|c| c.is_primitive()).collect()
    }

    /// The quadratic character mod p (odd p).
    pub fn quadratic(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Precondition("no quadratic character mod 2".into()));
        }
        Self::all(p, 1)
            .into_iter()
            .find(|c| c.exps.iter().flatten().all(|e| (2 * e) % c.phi == 0) && !c.is_trivial())
            .ok_or_else(|| Error::Internal("quadratic character not found".into()))
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().flatten().all(|e| *e == 0)
    }

    pub fn is_ramified(&self) -> bool {
        !self.is_trivial()
    }

    pub fn is_primitive(&self) -> bool {
        match self.beta {
            0 => true,
            1 => !self.is_trivial(),
            b => {
                let step = self.p.pow(b - 1);
                (1..self.p).any(|t| self.exps[(1 + t * step) as usize] != Some(0))
            }
        }
    }

    /// Exponent e with χ(c) = ζ_φ^e, for c a unit residue.
    pub fn exponent(&self, c: u64) -> Option<u64> {
        self.exps[(c % self.modulus) as usize]
    }

    /// χ(c) on integers, zero on multiples of p when β ≥ 1.
    pub fn eval(&self, c: i64) -> CycNum {
        if self.beta == 0 {
            return CycNum::one();
        }
        let r = c.rem_euclid(self.modulus as i64) as u64;
        match self.exponent(r) {
            Some(e) if r % self.p != 0 => CycNum::root_of_unity(self.phi, e as i64),
            _ => CycNum::zero(),
        }
    }

    /// χ on Q_p^× extended by χ(p) = 1.
    pub fn eval_q(&self, x: &Q) -> Result<CycNum> {
        let (_, u) = split_unit(x, self.p).ok_or_else(|| Error::Precondition("χ(0)".into()))?;
        if self.beta == 0 {
            return Ok(CycNum::one());
        }
        Ok(self.eval(residue_u64(&u, self.p, self.beta) as i64))
    }

    pub fn conj(&self) -> Self {
        let exps = self.exps.iter().map(|e| e.map(|e| (self.phi - e) % self.phi)).collect();
        TwistCharacter { exps, ..self.clone() }
    }

    /// τ(χ) = Σ_{c ∈ (Z/p^β)^×} χ(c)ζ_{p^β}^c.
    pub fn gauss_sum(&self) -> Result<CycNum> {
        if self.beta == 0 {
            return Err(Error::Precondition("Gauss sum of an unramified character".into()));
        }
        let l = self.phi.lcm(&self.modulus);
        let (a, b) = (l / self.phi, l / self.modulus);
        let mut acc = RootSum::new(l);
        for c in 0..self.modulus {
            if let Some(e) = self.exponent(c).filter(|_| c % self.p != 0) {
                acc.add((e * a + c * b) as i64, 1);
            }
        }
        Ok(acc.value())
    }
}

/// Σ_{u mod p^β} ζ_{p^β}^{mu}.
pub fn psi_orthogonality(p: u64, beta: u32, m: i64) -> CycNum {
    let q = p.pow(beta);
    let mut acc = RootSum::new(q);
    for u in 0..q as i64 {
        acc.add(m * u, 1);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::q_pow;

    #[test]
    fn counts() {
        assert_eq!(TwistCharacter::all(3, 1).len(), 2);
        assert_eq!(TwistCharacter::all_primitive(3, 2).len(), 4);
        assert_eq!(TwistCharacter::all_primitive(2, 1).len(), 0);
        assert_eq!(TwistCharacter::all_primitive(2, 2).len(), 1);
        assert_eq!(TwistCharacter::all_primitive(2, 3).len(), 2);
        assert_eq!(TwistCharacter::all_primitive(5, 1).len(), 3);
    }

    #[test]
    fn multiplicative() {
        for (p, b) in [(3, 2), (2, 3), (5, 1)] {
            let m = (p as i64).pow(b);
            for chi in TwistCharacter::all(p, b) {
                for x in 1..m {
                    for y in 1..m {
                        if x % p as i64 != 0 && y % p as i64 != 0 {
                            assert_eq!(chi.eval(x * y), &chi.eval(x) * &chi.eval(y));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_gauss_sum_mod_3() {
        let chi = TwistCharacter::quadratic(3).unwrap();
        let z = |k| CycNum::root_of_unity(3, k);
        assert_eq!(chi.gauss_sum().unwrap(), &z(1) - &z(2));
    }

    #[test]
    fn gauss_sum_mod_4() {
        let chi = &TwistCharacter::all_primitive(2, 2)[0];
        assert_eq!(chi.eval(3), CycNum::from_int(-1));
        let i = CycNum::root_of_unity(4, 1);
        assert_eq!(chi.gauss_sum().unwrap(), &i - &i.pow(3).unwrap());
    }

    #[test]
    fn gauss_norm() {
        for (p, b) in [(3, 1), (3, 2), (2, 2), (2, 3), (5, 1)] {
            for chi in TwistCharacter::all_primitive(p, b) {
                let t = chi.gauss_sum().unwrap();
                let tb = chi.conj().gauss_sum().unwrap();
                let lhs = &(&t * &tb) * &chi.eval(-1);
                assert_eq!(lhs, CycNum::rational(q_pow(p, b as i64)), "p={p} β={b}");
            }
        }
    }

    #[test]
    fn orthogonality() {
        assert!(psi_orthogonality(3, 2, 1).is_zero());
        assert!(psi_orthogonality(2, 2, 2).is_zero());
        assert_eq!(psi_orthogonality(3, 1, 3), CycNum::from_int(3));
    }
}
