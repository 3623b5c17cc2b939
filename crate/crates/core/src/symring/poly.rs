//! Laurent polynomials over [`CycNum`] in the formal generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::cyc::{q_pow, CycNum};

/// Largest supported number of Satake symbols (so `n ≤ 4`).
pub const MAX_X: usize = 8;
pub const NGEN: usize = 4 + MAX_X;

/// Formal generators. `Y` is p^{1/2}, `S` is p^s, `E` is η(p), `G` a formal
/// unit constant, `X(i)` the Satake symbol θ_i(p) (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Y,
    S,
    E,
    G,
    X(u8),
}

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::Y => 0,
            Gen::S => 1,
            Gen::E => 2,
            Gen::G => 3,
            Gen::X(i) => {
                assert!((1..=MAX_X as u8).contains(&i), "X index {} out of range", i);
                3 + i as usize
            }
        }
    }

    pub fn from_index(i: usize) -> Gen {
        match i {
            0 => Gen::Y,
            1 => Gen::S,
            2 => Gen::E,
            3 => Gen::G,
            k => Gen::X((k - 3) as u8),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Y => write!(f, "Y"),
            Gen::S => write!(f, "S"),
            Gen::E => write!(f, "E"),
            Gen::G => write!(f, "G"),
            Gen::X(i) => write!(f, "X{}", i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [i32; NGEN]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NGEN])
    }

    pub fn gen(g: Gen, e: i32) -> Self {
        let mut m = Mono::one();
        m.0[g.index()] = e;
        m
    }

    pub fn exp(&self, g: Gen) -> i32 {
        self.0[g.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }

    pub fn inv(&self) -> Mono {
        let mut out = *self;
        for a in out.0.iter_mut() {
            *a = -*a;
        }
        out
    }

    pub fn pow(&self, k: i32) -> Mono {
        let mut out = *self;
        for a in out.0.iter_mut() {
            *a *= k;
        }
        out
    }

    /// Same monomial with the Y exponent cleared.
    pub fn without_y(&self) -> Mono {
        let mut out = *self;
        out.0[0] = 0;
        out
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.0.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", Gen::from_index(i))?;
            } else {
                write!(f, "{}^{}", Gen::from_index(i), e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Bring the Y exponent into {0, 1}, moving p-powers into the coefficient.
pub fn normalize_y(m: Mono, c: CycNum, p: u64) -> (Mono, CycNum) {
    let e = m.0[0];
    if e == 0 || e == 1 {
        return (m, c);
    }
    assert!(p != 0, "Y^2 = p needs the ambient prime");
    let mut out = m;
    out.0[0] = e.rem_euclid(2);
    let carry = e.div_euclid(2) as i64;
    (out, c.scale(&q_pow(p, carry)))
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, CycNum>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: CycNum) -> Self {
        Poly::term(Mono::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(CycNum::one())
    }

    /// A single term; the caller guarantees the Y exponent is normalized.
    pub fn term(m: Mono, c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CycNum)> {
        self.terms.iter()
    }

    pub fn single_term(&self) -> Option<(Mono, CycNum)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((*m, c.clone()))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<CycNum> {
        if self.terms.is_empty() {
            return Some(CycNum::zero());
        }
        match self.single_term() {
            Some((m, c)) if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: CycNum, p: u64) {
        let (m, c) = normalize_y(m, c, p);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone(), 0);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x * c, 0);
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &CycNum, p: u64) -> Poly {
        let mut out = Poly::zero();
        for (m2, c2) in &self.terms {
            out.add_term(m.mul(m2), c * c2, p);
        }
        out
    }

    pub fn mul(&self, other: &Poly, p: u64) -> Poly {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m.mul(m2), c * c2, p);
            }
        }
        out
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>, p: u64) -> Poly {
        let mut acc = Poly::one();
        for f in factors {
            acc = acc.mul(f, p);
        }
        acc
    }

    pub fn max_exp(&self, g: Gen) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(g)).max()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Group the terms by their Y-free part: top group under the monomial order.
    pub fn top_y_group(&self) -> Option<(Mono, CycNum, CycNum)> {
        let top = self.terms.keys().map(|m| m.without_y()).max()?;
        let mut a = CycNum::zero();
        let mut b = CycNum::zero();
        for (m, c) in &self.terms {
            if m.without_y() == top {
                if m.0[0] == 0 {
                    a = &a + c;
                } else {
                    b = &b + c;
                }
            }
        }
        Some((top, a, b))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", m)?;
            } else if c.as_rational().map(|q| q == -num_rational::BigRational::one()).unwrap_or(false) {
                write!(f, "-{}", m)?;
            } else {
                write!(f, "{}*{}", c, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_carry() {
        let y = Poly::term(Mono::gen(Gen::Y, 1), CycNum::one());
        let yy = y.mul(&y, 3);
        assert_eq!(yy, Poly::constant(CycNum::from_int(3)));
        let mut p = Poly::zero();
        p.add_term(Mono::gen(Gen::Y, -1), CycNum::one(), 5);
        let (m, c) = p.single_term().unwrap();
        assert_eq!(m, Mono::gen(Gen::Y, 1));
        assert_eq!(c, CycNum::rational(super::super::cyc::q_frac(1, 5)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = Poly::term(Mono::gen(Gen::X(1), 1), CycNum::one());
        assert!(x.sub(&x).is_zero());
    }
}
