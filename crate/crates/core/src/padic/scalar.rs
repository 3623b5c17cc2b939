//! p-adic views of rational numbers.
//!
//! Every scalar is an exact rational embedded in Q_p. Denominators prime to p
//! are allowed: inverting a p-adic unit such as 1 + p would otherwise leave
//! the representable set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::symring::Q;

pub type PadicScalar = Q;

fn big(p: u64) -> BigInt {
    BigInt::from(p)
}

fn int_valuation(x: &BigInt, p: u64) -> i64 {
    let pb = big(p);
    let mut v = 0;
    let mut y = x.clone();
    while (&y % &pb).is_zero() {
        y /= &pb;
        v += 1;
    }
    v
}

/// `v_p(q)`, `None` standing for +∞ at zero.
pub fn valuation(q: &Q, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    if p < 2 {
        return Some(0);
    }
    Some(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

/// Valuation with zero mapped to `i64::MAX`.
pub fn val_or_inf(q: &Q, p: u64) -> i64 {
    valuation(q, p).unwrap_or(i64::MAX)
}

pub fn is_integral(q: &Q, p: u64) -> bool {
    val_or_inf(q, p) >= 0
}

pub fn is_unit(q: &Q, p: u64) -> bool {
    valuation(q, p) == Some(0)
}

pub fn pk(p: u64, k: u32) -> BigInt {
    num_traits::pow(big(p), k as usize)
}

/// Residue in [0, p^k) of an integral rational.
pub fn residue(q: &Q, p: u64, k: u32) -> BigInt {
    assert!(is_integral(q, p), "residue of non-integral {}", q);
    let m = pk(p, k);
    let num = q.numer().mod_floor(&m);
    let den = q.denom().mod_floor(&m);
    let inv = mod_inverse(&den, &m).expect("denominator prime to p");
    (num * inv).mod_floor(&m)
}

pub fn residue_u64(q: &Q, p: u64, k: u32) -> u64 {
    u64::try_from(residue(q, p, k)).expect("residue fits u64")
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() && !(-&g.gcd).is_one() {
        return None;
    }
    let x = if g.gcd.is_negative() { -g.x } else { g.x };
    Some(x.mod_floor(m))
}

/// q ≡ r mod p^k, both integral.
pub fn congruent(a: &Q, b: &Q, p: u64, k: u32) -> bool {
    val_or_inf(&(a - b), p) >= k as i64
}

/// Factor q = p^v · u with u a unit; zero is rejected.
pub fn split_unit(q: &Q, p: u64) -> Option<(i64, Q)> {
    let v = valuation(q, p)?;
    let u = q * crate::symring::q_pow(p, -v);
    Some((v, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::{q_frac, q_int};

    #[test]
    fn valuations() {
        assert_eq!(valuation(&q_frac(18, 5), 3), Some(2));
        assert_eq!(valuation(&q_frac(5, 18), 3), Some(-2));
        assert_eq!(valuation(&q_int(0), 3), None);
        assert!(is_unit(&q_frac(4, 7), 3));
    }

    #[test]
    fn residues() {
        assert_eq!(residue(&q_frac(1, 2), 3, 2), BigInt::from(5));
        assert_eq!(residue(&q_int(-1), 2, 3), BigInt::from(7));
        assert!(congruent(&q_frac(1, 4), &q_int(1), 3, 1));
    }
}
