//! Haar measure constants. vol(GL_n(Z_p)) = 1 and vol(M_n(Z_p)) = 1.

use num_traits::One;

use crate::symring::{q_int, q_pow, Q};

/// vol(Iw_n) = |B_n(F_p)| / |GL_n(F_p)|.
pub fn vol_iwahori(n: usize, p: u64) -> Q {
    let mut v = Q::one();
    for k in 1..=n as i64 {
        // number of complete flags is ∏ (p^k − 1)/(p − 1)
        v *= q_int(p as i64 - 1) / (q_pow(p, k) - Q::one());
    }
    v
}

/// vol(Iw_n)·(1 − p^{-1})^{-n}·p^{(n²−n)/2}.
pub fn upsilon_prime(n: usize, p: u64) -> Q {
    let one_minus = Q::one() - q_pow(p, -1);
    let n_i = n as i64;
    vol_iwahori(n, p) * num_traits::pow(one_minus.recip(), n) * q_pow(p, (n_i * n_i - n_i) / 2)
}

/// vol(B_n(Z_p)·w_n·Iw_n) = p^{n(n−1)/2}·vol(Iw_n).
pub fn upsilon_double_prime(n: usize, p: u64) -> Q {
    let n_i = n as i64;
    vol_iwahori(n, p) * q_pow(p, n_i * (n_i - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::q_frac;

    #[test]
    fn small_volumes() {
        assert_eq!(vol_iwahori(1, 5), Q::one());
        assert_eq!(vol_iwahori(2, 3), q_frac(1, 4));
        assert_eq!(upsilon_double_prime(1, 7), Q::one());
        assert_eq!(upsilon_double_prime(2, 3), q_frac(3, 4));
        assert_eq!(upsilon_prime(1, 3), q_frac(3, 2));
    }

    #[test]
    fn iwahori_index_by_counting() {
        // |GL_2(F_2)| = 6, |B_2(F_2)| = 1
        assert_eq!(vol_iwahori(2, 2), q_frac(1, 3));
        // |GL_3(F_2)| = 168, |B_3(F_2)| = 8
        assert_eq!(vol_iwahori(3, 2), q_frac(8, 168));
    }
}
