use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::cyc::{q_pow, CycNum, Q};
use super::poly::{normalize_y, Gen, Mono, Poly};
use crate::error::{Error, Result};
use crate::padic::scalar::valuation;

/// A fraction `num / ∏ den` of Laurent polynomials. `p` is the ambient prime
/// used for `Y² = p` (0 while no Y-square has been needed).
#[derive(Clone, Debug)]
pub struct SymElem {
    p: u64,
    num: Poly,
    den: Vec<Poly>,
}

fn merge_p(a: u64, b: u64) -> u64 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        (x, y) => {
            assert_eq!(x, y, "mixing elements over different primes");
            x
        }
    }
}

fn term_inverse(m: &Mono, c: &CycNum, p: u64) -> (Mono, CycNum) {
    let ci = c.inv().expect("zero coefficient in a term");
    normalize_y(m.inv(), ci, p)
}

impl SymElem {
    pub fn zero() -> Self {
        SymElem { p: 0, num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::cyc(CycNum::one())
    }

    pub fn int(n: i64) -> Self {
        Self::cyc(CycNum::from_int(n))
    }

    pub fn rational(q: Q) -> Self {
        Self::cyc(CycNum::rational(q))
    }

    pub fn cyc(c: CycNum) -> Self {
        SymElem { p: 0, num: Poly::constant(c), den: Vec::new() }
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(CycNum::one(), Mono::gen(g, 1))
    }

    pub fn term(c: CycNum, m: Mono) -> Self {
        assert!(m.exp(Gen::Y) == 0 || m.exp(Gen::Y) == 1, "use mono() for general Y powers");
        SymElem { p: 0, num: Poly::term(m, c), den: Vec::new() }
    }

    /// `c·m` with the Y exponent normalized against `p`.
    pub fn mono(p: u64, c: CycNum, m: Mono) -> Self {
        let (m, c) = normalize_y(m, c, p);
        SymElem { p, num: Poly::term(m, c), den: Vec::new() }
    }

    /// `p^k`.
    pub fn p_pow(p: u64, k: i64) -> Self {
        SymElem { p, num: Poly::constant(CycNum::rational(q_pow(p, k))), den: Vec::new() }
    }

    /// `p^{e/2}`, i.e. `Y^e`.
    pub fn y_pow(p: u64, e: i64) -> Self {
        Self::mono(p, CycNum::one(), Mono::gen(Gen::Y, e as i32))
    }

    pub fn with_prime(mut self, p: u64) -> Self {
        self.p = merge_p(self.p, p);
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[Poly] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &SymElem::one()
    }

    fn push_den_factor(&mut self, f: Poly) -> Result<()> {
        if f.is_zero() {
            return Err(Error::DivisionByZero(f.to_string()));
        }
        let pivot = f
            .terms()
            .find(|(m, _)| m.is_one())
            .or_else(|| f.terms().next())
            .map(|(m, c)| (*m, c.clone()))
            .unwrap();
        let (mi, ci) = term_inverse(&pivot.0, &pivot.1, self.p);
        self.num = self.num.mul_term(&mi, &ci, self.p);
        let g = f.mul_term(&mi, &ci, self.p);
        if !g.is_one() {
            self.den.push(g);
        }
        Ok(())
    }

    fn den_product(&self) -> Poly {
        Poly::product(self.den.iter(), self.p)
    }

    pub fn inv(&self) -> Result<SymElem> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero(self.to_string()));
        }
        let d = self.den_product();
        let mut out = SymElem { p: self.p, num: Poly::one(), den: Vec::new() };
        match self.num.single_term() {
            Some((m, c)) => {
                let (mi, ci) = term_inverse(&m, &c, self.p);
                out.num = d.mul_term(&mi, &ci, self.p);
            }
            None => {
                out.num = d;
                out.push_den_factor(self.num.clone())?;
            }
        }
        Ok(out)
    }

    pub fn div(&self, other: &SymElem) -> Result<SymElem> {
        let p = merge_p(self.p, other.p);
        let inv = other.clone().with_prime(p).inv()?;
        Ok(&self.clone().with_prime(p) * &inv)
    }

    pub fn pow(&self, k: i64) -> Result<SymElem> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = SymElem::one().with_prime(self.p);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &CycNum) -> SymElem {
        SymElem { p: self.p, num: self.num.scale(c), den: self.den.clone() }
    }

    /// If the element equals `c·m` for a single monomial, return it.
    pub fn as_unit_monomial(&self) -> Option<(CycNum, Mono)> {
        if self.den.is_empty() {
            return self.num.single_term().map(|(m, c)| (c, m));
        }
        let n = &self.num;
        let d = self.den_product();
        if n.len() != d.len() || n.is_zero() {
            return None;
        }
        let (tn, a, b) = n.top_y_group()?;
        let (td, c, dd) = d.top_y_group()?;
        let p = CycNum::from_int(self.p as i64);
        let k = &(&c * &c) - &(&p * &(&dd * &dd));
        let ki = k.inv()?;
        let r0 = &(&(&a * &c) - &(&(&b * &dd) * &p)) * &ki;
        let r1 = &(&(&b * &c) - &(&a * &dd)) * &ki;
        let (coef, yexp) = match (r0.is_zero(), r1.is_zero()) {
            (false, true) => (r0, 0),
            (true, false) => (r1, 1),
            _ => return None,
        };
        let mut m = tn.mul(&td.inv());
        m.0[0] = yexp;
        if d.mul_term(&m, &coef, self.p) == *n {
            Some((coef, m))
        } else {
            None
        }
    }

    pub fn is_unit_monomial(&self) -> bool {
        self.as_unit_monomial().map(|(c, _)| !c.is_zero()).unwrap_or(false)
    }

    /// The constant value, if the element is a constant.
    pub fn as_constant(&self) -> Option<CycNum> {
        match self.as_unit_monomial() {
            Some((c, m)) if m.is_one() => Some(c),
            _ if self.is_zero() => Some(CycNum::zero()),
            _ => None,
        }
    }

    /// p-adic valuation of a unit monomial with rational coefficient, given
    /// valuations of the generators (Y is forced to 1/2).
    pub fn monomial_valuation(&self, gen_val: &dyn Fn(Gen) -> Q) -> Option<Q> {
        let (c, m) = self.as_unit_monomial()?;
        let q = c.as_rational()?;
        let mut v = Q::from_integer(BigInt::from(valuation(&q, self.p)?));
        for i in 0..m.0.len() {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let g = Gen::from_index(i);
            let gv = if g == Gen::Y { Q::new(1.into(), 2.into()) } else { gen_val(g) };
            v += gv * Q::from_integer(BigInt::from(e));
        }
        Some(v)
    }

    fn eval_poly(poly: &Poly, p: u64, assign: &BTreeMap<Gen, SymElem>) -> Result<SymElem> {
        let mut acc = SymElem::zero().with_prime(p);
        let mut cache: BTreeMap<(Gen, i32), SymElem> = BTreeMap::new();
        for (m, c) in poly.terms() {
            let mut t = SymElem::cyc(c.clone()).with_prime(p);
            let mut rest = Mono::one();
            for i in 0..m.0.len() {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let g = Gen::from_index(i);
                match assign.get(&g) {
                    Some(v) => {
                        let key = (g, e);
                        if !cache.contains_key(&key) {
                            cache.insert(key, v.clone().with_prime(p).pow(e as i64)?);
                        }
                        t = &t * &cache[&key];
                    }
                    None => rest.0[i] = e,
                }
            }
            t = &t * &SymElem::mono(p, CycNum::one(), rest);
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitution homomorphism; unassigned generators map to themselves.
    pub fn subst(&self, assign: &BTreeMap<Gen, SymElem>) -> Result<SymElem> {
        let p = assign.values().fold(self.p, |acc, v| merge_p(acc, v.p));
        let num = Self::eval_poly(&self.num, p, assign)?;
        let mut out = num;
        for f in &self.den {
            let fv = Self::eval_poly(f, p, assign)?;
            if fv.is_zero() {
                return Err(Error::DivisionByZero(f.to_string()));
            }
            out = out.div(&fv)?;
        }
        Ok(out)
    }
}

/// `sym_eval` of the kernel API.
pub fn sym_eval(e: &SymElem, assignment: &BTreeMap<Gen, SymElem>) -> Result<SymElem> {
    e.subst(assignment)
}

/// `first / (1 − ratio)`, the sum of the formal geometric series.
pub fn geometric_tail(first: &SymElem, ratio: &SymElem) -> Result<SymElem> {
    let (c, m) = ratio
        .as_unit_monomial()
        .ok_or_else(|| Error::NotUnitMonomial(ratio.to_string()))?;
    let cq = c
        .as_rational()
        .ok_or_else(|| Error::NotUnitMonomial(format!("cyclotomic ratio {}", ratio)))?;
    let p = merge_p(first.p, ratio.p);
    if m.is_one() {
        if cq.is_one() {
            return Err(Error::DivergentSeries);
        }
        return Ok(first.scale(&CycNum::rational((Q::one() - cq).recip())).with_prime(p));
    }
    let mut factor = Poly::one();
    factor.add_term(m, CycNum::rational(-cq), p);
    let mut out = first.clone().with_prime(p);
    out.push_den_factor(factor)?;
    Ok(out)
}

impl PartialEq for SymElem {
    fn eq(&self, other: &Self) -> bool {
        let p = merge_p(self.p, other.p);
        if self.den == other.den {
            return self.num == other.num;
        }
        let lhs = self.num.mul(&Poly::product(other.den.iter(), p), p);
        let rhs = other.num.mul(&Poly::product(self.den.iter(), p), p);
        lhs == rhs
    }
}

impl<'a> Add<&'a SymElem> for &'a SymElem {
    type Output = SymElem;
    fn add(self, rhs: &SymElem) -> SymElem {
        let p = merge_p(self.p, rhs.p);
        if self.den == rhs.den {
            return SymElem { p, num: self.num.add(&rhs.num), den: self.den.clone() };
        }
        let mut rest_a: Vec<Poly> = self.den.clone();
        let mut only_b: Vec<Poly> = Vec::new();
        for f in &rhs.den {
            if let Some(pos) = rest_a.iter().position(|g| g == f) {
                rest_a.remove(pos);
            } else {
                only_b.push(f.clone());
            }
        }
        let num = self
            .num
            .mul(&Poly::product(only_b.iter(), p), p)
            .add(&rhs.num.mul(&Poly::product(rest_a.iter(), p), p));
        let mut den = self.den.clone();
        den.extend(only_b);
        if num.is_zero() {
            den.clear();
        }
        SymElem { p, num, den }
    }
}

impl Neg for &SymElem {
    type Output = SymElem;
    fn neg(self) -> SymElem {
        SymElem { p: self.p, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for SymElem {
    type Output = SymElem;
    fn neg(self) -> SymElem {
        -&self
    }
}

impl<'a> Sub<&'a SymElem> for &'a SymElem {
    type Output = SymElem;
    fn sub(self, rhs: &SymElem) -> SymElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a SymElem> for &'a SymElem {
    type Output = SymElem;
    fn mul(self, rhs: &SymElem) -> SymElem {
        let p = merge_p(self.p, rhs.p);
        let num = self.num.mul(&rhs.num, p);
        if num.is_zero() {
            return SymElem { p, num, den: Vec::new() };
        }
        let mut den = self.den.clone();
        den.extend(rhs.den.iter().cloned());
        SymElem { p, num, den }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<SymElem> for SymElem {
            type Output = SymElem;
            fn $f(self, rhs: SymElem) -> SymElem {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, d) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", d)?;
        }
        write!(f, ")")
    }
}

impl Default for SymElem {
    fn default() -> Self {
        SymElem::zero()
    }
}

impl From<i64> for SymElem {
    fn from(n: i64) -> Self {
        SymElem::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::cyc::q_frac;
    use num_traits::Zero;

    fn x(i: u8) -> SymElem {
        SymElem::gen(Gen::X(i))
    }

    #[test]
    fn y_squared_is_p() {
        let y = SymElem::y_pow(3, 1);
        assert_eq!(&y * &y, SymElem::int(3));
    }

    #[test]
    fn ag_substitution() {
        let e = &x(1) * &x(2);
        let mut a = BTreeMap::new();
        a.insert(Gen::X(2), &SymElem::gen(Gen::E) * &x(1).inv().unwrap());
        assert_eq!(sym_eval(&e, &a).unwrap(), SymElem::gen(Gen::E));
    }

    #[test]
    fn geometric_examples() {
        let s_inv = SymElem::gen(Gen::S).inv().unwrap();
        let r = &x(2) * &s_inv;
        let t = geometric_tail(&SymElem::one(), &r).unwrap();
        assert_eq!(&t * &(&SymElem::one() - &r), SymElem::one());
        let r2 = &SymElem::p_pow(5, 1) * &s_inv.pow(2).unwrap();
        let y = SymElem::y_pow(5, 1);
        let t2 = geometric_tail(&y, &r2).unwrap();
        assert_eq!(&t2 * &(&SymElem::one() - &r2), y);
        assert_eq!(geometric_tail(&SymElem::one(), &SymElem::one()), Err(Error::DivergentSeries));
        let half = SymElem::rational(q_frac(1, 2));
        assert_eq!(geometric_tail(&SymElem::one(), &half).unwrap(), SymElem::int(2));
    }

    #[test]
    fn division_by_vanishing_factor() {
        let s = SymElem::gen(Gen::S);
        let t = geometric_tail(&SymElem::one(), &s).unwrap();
        let mut a = BTreeMap::new();
        a.insert(Gen::S, SymElem::one());
        assert!(matches!(sym_eval(&t, &a), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn unit_monomial_detection() {
        let y = SymElem::y_pow(3, 1);
        let r = &x(1) * &SymElem::gen(Gen::S).inv().unwrap();
        let f = geometric_tail(&y, &r).unwrap();
        let g = geometric_tail(&(&y * &x(3)), &r).unwrap();
        let q = g.div(&f).unwrap();
        let (c, m) = q.as_unit_monomial().unwrap();
        assert!(c.is_one());
        assert_eq!(m, Mono::gen(Gen::X(3), 1));
        assert!((&SymElem::one() + &x(1)).as_unit_monomial().is_none());
        // Y-mixing in the top group
        let a = &SymElem::one() + &y;
        let b = &a * &(&y * &x(1));
        assert!(b.div(&a).unwrap().is_unit_monomial());
    }

    #[test]
    fn valuation_of_monomial() {
        let e = &SymElem::p_pow(3, 2) * &(&SymElem::y_pow(3, 1) * &x(2));
        let v = e.monomial_valuation(&|g| if g == Gen::X(2) { q_frac(-1, 2) } else { Q::zero() });
        assert_eq!(v, Some(q_frac(2, 1)));
    }
}
