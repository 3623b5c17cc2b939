//! Truncated power series over Z/p^M and characters of Z_p^× on a disc in
//! weight space.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::padic::scalar::{is_unit, mod_inverse, pk, residue, valuation};
use crate::rootspin::purity_weight;
use crate::symring::{q_int, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub p: u64,
    /// Coefficients live in Z/p^m.
    pub m: u32,
    /// Monomials of total degree ≥ d are dropped.
    pub d: u32,
}

impl Precision {
    pub fn modulus(&self) -> BigInt {
        pk(self.p, self.m)
    }

    /// Residue of a p-integral rational.
    pub fn reduce(&self, q: &Q) -> Result<BigInt> {
        if valuation(q, self.p).is_some_and(|v| v < 0) {
            return Err(Error::Precondition(format!("{} is not p-integral", q)));
        }
        if q.is_zero() {
            return Ok(BigInt::zero());
        }
        Ok(residue(q, self.p, self.m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    prec: Precision,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Series {
    pub fn zero(prec: Precision, nvars: usize) -> Self {
        Series { prec, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(prec: Precision, nvars: usize, c: &Q) -> Result<Self> {
        let mut s = Self::zero(prec, nvars);
        s.insert(vec![0; nvars], prec.reduce(c)?);
        Ok(s)
    }

    pub fn one(prec: Precision, nvars: usize) -> Self {
        Self::constant(prec, nvars, &Q::one()).expect("1 is integral")
    }

    /// Σ_e c_e V_var^e for a univariate coefficient list.
    pub fn univariate(prec: Precision, nvars: usize, var: usize, coeffs: &[Q]) -> Result<Self> {
        let mut s = Self::zero(prec, nvars);
        for (e, c) in coeffs.iter().enumerate().take(prec.d as usize) {
            let mut ex = vec![0; nvars];
            ex[var] = e as u32;
            s.insert(ex, prec.reduce(c)?);
        }
        Ok(s)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    fn insert(&mut self, ex: Vec<u32>, c: BigInt) {
        if ex.iter().sum::<u32>() >= self.prec.d {
            return;
        }
        let m = self.prec.modulus();
        let entry = self.terms.entry(ex).or_insert_with(BigInt::zero);
        *entry = (&*entry + c).mod_floor(&m);
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, o: &Series) -> Series {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Result<Series> {
        let r = self.prec.reduce(c)?;
        let m = self.prec.modulus();
        let mut out = Series::zero(self.prec, self.nvars);
        for (e, v) in &self.terms {
            let x = (v * &r).mod_floor(&m);
            if !x.is_zero() {
                out.terms.insert(e.clone(), x);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Series) -> Series {
        let m = self.prec.modulus();
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if e.iter().sum::<u32>() >= self.prec.d {
                    continue;
                }
                let entry = acc.entry(e).or_insert_with(BigInt::zero);
                *entry = (&*entry + c1 * c2).mod_floor(&m);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Series { prec: self.prec, nvars: self.nvars, terms: acc }
    }

    /// Value at V = vals, as a residue mod p^m.
    pub fn eval(&self, vals: &[Q]) -> Result<BigInt> {
        let m = self.prec.modulus();
        let vr = vals.iter().map(|v| self.prec.reduce(v)).collect::<Result<Vec<_>>>()?;
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in vr.iter().zip(e) {
                t = (t * x.modpow(&BigInt::from(*k), &m)).mod_floor(&m);
            }
            acc = (acc + t).mod_floor(&m);
        }
        Ok(acc)
    }
}

/// γ = 1 + p, or 5 when p = 2: a topological generator of 1 + p̃Z_p.
pub fn gamma(p: u64) -> u64 {
    if p == 2 {
        5
    } else {
        1 + p
    }
}

/// Residue of the Teichmüller lift ω(x) mod p^m.
pub fn teichmuller(x: &Q, p: u64, m: u32) -> Result<BigInt> {
    if !is_unit(x, p) {
        return Err(Error::Precondition("Teichmüller lift of a non-unit".into()));
    }
    let modulus = pk(p, m);
    let r = residue(x, p, m);
    if p == 2 {
        let s = if (&r % BigInt::from(4)) == BigInt::one() { BigInt::one() } else { &modulus - 1 };
        return Ok(s.mod_floor(&modulus));
    }
    Ok(r.modpow(&pk(p, m - 1), &modulus))
}

/// ℓ mod p^m with ⟨x⟩ = γ^ℓ.
pub fn discrete_log(x: &Q, p: u64, m: u32) -> Result<BigInt> {
    let extra = if p == 2 { 2 } else { 1 };
    let work = pk(p, m + extra);
    let om = teichmuller(x, p, m + extra)?;
    let one = residue(x, p, m + extra);
    let angle = (one * mod_inverse(&om, &work).expect("unit")).mod_floor(&work);
    let g = BigInt::from(gamma(p));
    let mut ell = BigInt::zero();
    for k in 0..m {
        let step = pk(p, k);
        let check = pk(p, k + 1 + extra);
        let found = (0..p).find(|dgt| {
            let e = &ell + &step * BigInt::from(*dgt);
            (g.modpow(&e, &work) - &angle).mod_floor(&check).is_zero()
        });
        match found {
            Some(dgt) => ell += step * BigInt::from(dgt),
            None => return Err(Error::Internal("discrete log digit search failed".into())),
        }
    }
    Ok(ell)
}

/// A disc Ω of pure weights around a centre λ₀: λ ∈ Ω iff λ is pure and each
/// coordinate e = λ_i − λ₀_i (i ≤ n, and e = sw − sw₀) satisfies p^r | e with
/// ω^e = 1. Coordinate characters are x ↦ x^{k₀}·(γ^{p^r})^{ℓ(x)V}.
#[derive(Clone, Debug)]
pub struct FamilyWeight {
    pub n: usize,
    pub centre: Vec<i64>,
    pub r: u32,
    pub prec: Precision,
}

impl FamilyWeight {
    pub fn new(centre: Vec<i64>, r: u32, prec: Precision) -> Result<Self> {
        if purity_weight(&centre).is_none() || centre.len() % 2 != 0 {
            return Err(Error::Precondition("family centre must be a pure weight".into()));
        }
        if r == 0 {
            return Err(Error::Precondition("disc radius exponent must be ≥ 1".into()));
        }
        Ok(FamilyWeight { n: centre.len() / 2, centre, r, prec })
    }

    pub fn p(&self) -> u64 {
        self.prec.p
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn sw0(&self) -> i64 {
        purity_weight(&self.centre).expect("checked")
    }

    fn coordinate_centre(&self, var: usize) -> i64 {
        if var == 0 {
            self.sw0()
        } else {
            self.centre[var - 1]
        }
    }

    fn tame_order(&self) -> i64 {
        if self.p() == 2 {
            2
        } else {
            self.p() as i64 - 1
        }
    }

    /// κ_var(x) as a series; var 0 is sw_Ω, var i ≤ n is χ_{Ω,i}.
    pub fn coordinate(&self, var: usize, x: &Q) -> Result<Series> {
        let p = self.p();
        let prec = self.prec;
        let k0 = self.coordinate_centre(var);
        let base = crate::padic::decompose::qpow_q(x, k0);
        let ell = discrete_log(x, p, prec.m)?;
        // (1 + q)^{ℓV} with 1 + q = γ^{p^r}
        let q = Q::from_integer(num_traits::pow(BigInt::from(gamma(p)), p.pow(self.r) as usize) - 1);
        let vq = valuation(&q, p).expect("q ≠ 0");
        let ellq = Q::from_integer(ell);
        let mut coeffs = vec![Q::zero(); prec.d as usize];
        // binom(ℓV, d) = ∏_{i<d}(ℓV − i)/d!
        let mut poly: Vec<Q> = vec![Q::one()];
        let mut qd = Q::one();
        let mut fact = Q::one();
        let mut d = 0i64;
        loop {
            let term_val = d * vq - valuation(&fact, p).unwrap_or(0);
            if d > 0 && term_val >= prec.m as i64 + prec.d as i64 {
                break;
            }
            for (e, c) in poly.iter().enumerate().take(prec.d as usize) {
                coeffs[e] += c * &qd / &fact;
            }
            // poly ← poly·(ℓV − d)
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (e, c) in poly.iter().enumerate() {
                next[e + 1] += c * &ellq;
                next[e] -= c * q_int(d);
            }
            poly = next;
            d += 1;
            qd *= &q;
            fact *= q_int(d);
        }
        Series::univariate(prec, self.nvars(), var, &coeffs)?.scale(&base)
    }

    /// χ_{Ω,i}(x) for 1 ≤ i ≤ 2n, with χ_{Ω,2n+1−i} = sw_Ω·χ_{Ω,i}^{−1}.
    pub fn chi(&self, i: usize, x: &Q) -> Result<Series> {
        if i <= self.n {
            self.coordinate(i, x)
        } else {
            let inv = x.recip();
            Ok(self.coordinate(0, x)?.mul(&self.coordinate(2 * self.n + 1 - i, &inv)?))
        }
    }

    /// V-coordinates of λ ∈ Ω.
    pub fn point(&self, lambda: &[i64]) -> Result<Vec<Q>> {
        let sw = purity_weight(lambda).ok_or_else(|| Error::Precondition("weight is not pure".into()))?;
        if lambda.len() != self.centre.len() {
            return Err(Error::Precondition("weight has the wrong length".into()));
        }
        let pr = self.p().pow(self.r) as i64;
        let mut out = Vec::with_capacity(self.nvars());
        let mut es = vec![sw - self.sw0()];
        es.extend((0..self.n).map(|i| lambda[i] - self.centre[i]));
        for e in es {
            if e % pr != 0 || e % self.tame_order() != 0 {
                return Err(Error::Precondition(format!("weight {:?} is outside the disc", lambda)));
            }
            out.push(q_int(e / pr));
        }
        Ok(out)
    }

    pub fn contains(&self, lambda: &[i64]) -> bool {
        self.point(lambda).is_ok()
    }

    /// sp_λ: evaluation at λ ∈ Ω.
    pub fn specialize(&self, x: &Series, lambda: &[i64]) -> Result<BigInt> {
        x.eval(&self.point(lambda)?)
    }

    /// The smallest nonzero shift keeping every coordinate in Ω.
    pub fn step(&self) -> i64 {
        let pr = self.p().pow(self.r) as i64;
        pr.lcm(&self.tame_order())
    }
}

/// Residue of a p-integral rational mod p^m (for comparing with specialisations).
pub fn reduce_mod(q: &Q, prec: Precision) -> Result<BigInt> {
    prec.reduce(q)
}

pub fn is_negative(x: &BigInt) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::q_frac;

    fn prec(p: u64) -> Precision {
        Precision { p, m: 8, d: 4 }
    }

    #[test]
    fn teichmuller_is_root_of_unity() {
        for p in [3u64, 5] {
            let w = teichmuller(&q_int(2), p, 6).unwrap();
            let m = pk(p, 6);
            assert!(w.modpow(&BigInt::from(p - 1), &m).is_one());
            assert_eq!((&w - BigInt::from(2)).mod_floor(&BigInt::from(p)), BigInt::zero());
        }
    }

    #[test]
    fn discrete_log_roundtrip() {
        for p in [2u64, 3] {
            for x in [q_int(7), q_frac(5, 11), q_int(-13)] {
                let l = discrete_log(&x, p, 6).unwrap();
                let m = pk(p, 6);
                let om = teichmuller(&x, p, 6).unwrap();
                let lhs = (om * BigInt::from(gamma(p)).modpow(&l, &m)).mod_floor(&m);
                assert_eq!(lhs, residue(&x, p, 6), "p={p} x={x}");
            }
        }
    }

    #[test]
    fn coordinate_specializes_to_power() {
        for p in [2u64, 3] {
            let fam = FamilyWeight::new(vec![1, 0], 2, prec(p)).unwrap();
            let step = fam.step();
            for x in [q_int(7), q_frac(4, 5), q_int(-1)] {
                if !is_unit(&x, p) {
                    continue;
                }
                let s = fam.chi(1, &x).unwrap();
                for k in [1 - step, 1, 1 + step, 1 + 2 * step] {
                    let lam = [k, 0];
                    let got = fam.specialize(&s, &lam).unwrap();
                    let want = prec(p).reduce(&crate::padic::decompose::qpow_q(&x, k)).unwrap();
                    assert_eq!(got, want, "p={p} x={x} k={k}");
                }
            }
        }
    }

    #[test]
    fn series_ring() {
        let pr = prec(3);
        let a = Series::univariate(pr, 2, 0, &[q_int(1), q_int(1)]).unwrap();
        let b = Series::univariate(pr, 2, 1, &[q_int(2), q_int(3)]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.eval(&[q_int(2), q_int(5)]).unwrap(), BigInt::from(3 * 17));
        assert_eq!(a.add(&b).eval(&[q_int(0), q_int(0)]).unwrap(), BigInt::from(3));
    }
}
