use proptest::prelude::*;

use shalika_core::perm::Perm;
use shalika_core::rootspin::{in_wg0, jmap_weyl, jvee_weyl, WeylGSpin};
use shalika_core::symring::CycNum;

fn perm(m: usize) -> impl Strategy<Value = Perm> {
    Just((0..m).collect::<Vec<usize>>()).prop_shuffle().prop_map(Perm)
}

proptest! {
    #[test]
    fn perm_inverse_and_sign(a in perm(6), b in perm(6)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
    }

    #[test]
    fn cyclotomic_field_axioms(xs in prop::collection::vec(-4i64..=4, 6), ys in prop::collection::vec(-4i64..=4, 6)) {
        let mk = |v: &[i64]| v.iter().enumerate().fold(CycNum::zero(), |acc, (k, c)| acc + CycNum::root_of_unity(9, k as i64) * CycNum::from_int(*c));
        let (x, y) = (mk(&xs), mk(&ys));
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        if let Some(xi) = x.inv() {
            prop_assert!((x.clone() * xi).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn transfer_roundtrip(i in 0usize..48) {
        let w = &WeylGSpin::all(3)[i];
        let s = jmap_weyl(w);
        prop_assert!(in_wg0(&s));
        prop_assert_eq!(&jvee_weyl(&s).unwrap(), w);
    }
}
