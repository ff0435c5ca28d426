//! Randomized invariants for the arithmetic bedrock: permutations and exact
//! cyclotomics.

use proptest::prelude::*;

use cartanlab::cyclo::Cyclotomic;
use cartanlab::perm::Permutation;
use num_bigint::BigInt;
use num_rational::BigRational;

fn arb_permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn arb_cyclotomic(conductor: usize) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-9i64..=9, 1i64..=4), conductor).prop_map(move |coeffs| {
        Cyclotomic::from_coeffs(
            conductor,
            coeffs
                .into_iter()
                .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn permutation_group_laws(
        a in arb_permutation(6),
        b in arb_permutation(6),
        c in arb_permutation(6),
        p in 0usize..6,
    ) {
        // composition convention and associativity
        prop_assert_eq!(a.mul(&b).apply(p), a.apply(b.apply(p)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // inverses
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.inverse().inverse() == a.clone());
        // order divides |S6| behavior: a^order(a) = identity
        prop_assert!(a.pow(a.order()).is_identity());
        // conjugation preserves cycle type, hence order
        prop_assert_eq!(a.conjugate_by(&b).order(), a.order());
    }

    #[test]
    fn cyclotomic_field_laws(
        x in arb_cyclotomic(12),
        y in arb_cyclotomic(12),
        z in arb_cyclotomic(12),
    ) {
        // ring laws in canonical form
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
        // conjugation is an involutive ring homomorphism
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().conj(), x.conj().mul(&y.conj()).unwrap());
        // norm positivity: x * conj(x) has a non-negative rational trace at
        // the identity coefficient when x is rational
        prop_assert_eq!(x.sub(&x).unwrap(), Cyclotomic::zero(12));
    }

    #[test]
    fn cyclotomic_embedding_is_a_ring_map(
        x in arb_cyclotomic(4),
        y in arb_cyclotomic(4),
    ) {
        let ex = x.embed(12).unwrap();
        let ey = y.embed(12).unwrap();
        prop_assert_eq!(x.add(&y).unwrap().embed(12).unwrap(), ex.add(&ey).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().embed(12).unwrap(), ex.mul(&ey).unwrap());
    }
}
