//! Elements of cyclotomic fields Q(ζ_M) in the power basis 1, ζ, …, ζ^{φ(M)−1}.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

/// `p^k` as a rational, `k` of either sign.
pub fn q_pow(p: u64, k: i64) -> Q {
    let base = Q::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base, (-k) as usize).recip()
    }
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic, low-to-high
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quot
}

/// Coefficients (low to high) of the M-th cyclotomic polynomial, cached.
pub fn cyclotomic_poly(m: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&m) {
        return v.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    let mut cur = num;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d);
            cur = poly_divexact(&cur, &phi_d);
        }
    }
    let v = Arc::new(cur);
    cache.lock().unwrap().insert(m, v.clone());
    v
}

fn reduce(order: u64, mut raw: Vec<Q>) -> Vec<Q> {
    let phi = cyclotomic_poly(order);
    let d = phi.len() - 1;
    if raw.len() < d {
        raw.resize(d, Q::zero());
    }
    for k in (d..raw.len()).rev() {
        if raw[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut raw[k], Q::zero());
        for (i, f) in phi.iter().take(d).enumerate() {
            if *f != 0 {
                raw[k - d + i] -= &c * q_int(*f);
            }
        }
    }
    raw.truncate(d);
    raw
}

#[derive(Clone, Debug)]
pub struct CycNum {
    order: u64,
    coeffs: Vec<Q>,
}

impl CycNum {
    pub fn rational(q: Q) -> Self {
        CycNum { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(q_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_order^k.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        assert!(order >= 1);
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![Q::zero(); e + 1];
        raw[e] = Q::one();
        CycNum { order, coeffs: reduce(order, raw) }
    }

    /// Σ_k raw[k]·ζ_order^k.
    pub fn from_power_sums(order: u64, raw: Vec<Q>) -> Self {
        CycNum { order, coeffs: reduce(order, raw) }.tidy()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|q| q.is_one()).unwrap_or(false)
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Q(ζ_target); `self.order` must divide `target`.
    pub fn lift(&self, target: u64) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target % self.order == 0, "order {} does not divide {}", self.order, target);
        if let Some(q) = self.as_rational() {
            let mut coeffs = vec![Q::zero(); euler_phi(target) as usize];
            coeffs[0] = q;
            return CycNum { order: target, coeffs };
        }
        let f = (target / self.order) as usize;
        let mut raw = vec![Q::zero(); (self.coeffs.len() - 1) * f + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * f] = c.clone();
        }
        CycNum { order: target, coeffs: reduce(target, raw) }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        if self.as_rational().is_some() && other.as_rational().is_some() {
            return (
                CycNum::rational(self.coeffs[0].clone()),
                CycNum::rational(other.coeffs[0].clone()),
            );
        }
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    /// Drop to order 1 when the value is rational.
    fn tidy(self) -> Self {
        if self.order != 1 {
            if let Some(q) = self.as_rational() {
                return CycNum::rational(q);
            }
        }
        self
    }

    pub fn scale(&self, q: &Q) -> Self {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }.tidy()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(CycNum::rational(q.recip()));
        }
        // Solve (multiplication by self) · y = 1 over the power basis.
        let d = self.coeffs.len();
        let mut cols: Vec<Vec<Q>> = Vec::with_capacity(d);
        let mut cur = self.clone();
        let zeta = CycNum::root_of_unity(self.order, 1);
        for _ in 0..d {
            cols.push(cur.lift(self.order).coeffs);
            cur = &cur * &zeta;
        }
        let mut a: Vec<Vec<Q>> = (0..d)
            .map(|i| {
                let mut row: Vec<Q> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Q::one() } else { Q::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|r| !a[*r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for k in col..=d {
                a[col][k] = &a[col][k] * &inv;
            }
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for k in col..=d {
                        let t = &a[col][k] * &f;
                        a[r][k] -= t;
                    }
                }
            }
        }
        Some(CycNum { order: self.order, coeffs: a.into_iter().map(|r| r[d].clone()).collect() })
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Some(acc)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let m = self.order as usize;
        let mut raw = vec![Q::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(m - i) % m] += c;
        }
        CycNum { order: self.order, coeffs: reduce(self.order, raw) }
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.order == 1 && rhs.order == 1 {
            return CycNum::rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let (a, b) = self.common(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycNum { order: a.order, coeffs }.tidy()
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q);
        }
        let (a, b) = self.common(rhs);
        let d = a.coeffs.len();
        let mut raw = vec![Q::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        CycNum { order: a.order, coeffs: reduce(a.order, raw) }.tidy()
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl From<Q> for CycNum {
    fn from(q: Q) -> Self {
        CycNum::rational(q)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let mut first = true;
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (_, true) => write!(f, "z{}^{}", self.order, i)?,
                (_, false) => write!(f, "{}*z{}^{}", mag, self.order, i)?,
            }
        }
        write!(f, ")")
    }
}
