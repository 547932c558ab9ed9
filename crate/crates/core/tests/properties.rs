mod common;

use common::ins;
use g2enum::algebra::{diagonal, rat, CohClass};
use g2enum::chern::ChernEngine;
use g2enum::gw0::GwTable;
use g2enum::rt::{rt0_3pt, rt0_4pt, splitting_law};
use g2enum::{ConstraintProfile, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..30).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

proptest! {
    #[test]
    fn rationals_form_a_field(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a + Rational::zero(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip(), Rational::one());
        }
        prop_assert!(*a.denom() > 0.into());
        let reduced = Rational::new(a.numer().clone(), a.denom().clone());
        prop_assert_eq!(reduced.numer(), a.numer());
    }

    #[test]
    fn cup_product_is_associative_and_graded(
        x in proptest::collection::vec(-5i64..5, 4),
        y in proptest::collection::vec(-5i64..5, 4),
        z in proptest::collection::vec(-5i64..5, 4),
    ) {
        let class = |v: &Vec<i64>| CohClass::from_coeffs(3, v.iter().map(|&c| rat(c)).collect()).unwrap();
        let (x, y, z) = (class(&x), class(&y), class(&z));
        prop_assert_eq!(x.cup(&y).unwrap().cup(&z).unwrap(), x.cup(&y.cup(&z).unwrap()).unwrap());
        prop_assert_eq!(x.cup(&y).unwrap(), y.cup(&x).unwrap());
    }

    #[test]
    fn gw0_ignores_insertion_order(d in 1u32..=3, p in 0u32..=6, seed in any::<u64>()) {
        prop_assume!(2 * p <= 4 * d);
        let t = GwTable::new();
        let mut exps = vec![3u8; p as usize];
        exps.extend(std::iter::repeat_n(2, (4 * d - 2 * p) as usize));
        let sorted = t.gw0(3, d as i64, &exps).unwrap();
        let mut shuffled = exps.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(t.gw0(3, d as i64, &shuffled).unwrap(), sorted);
    }

    #[test]
    fn divisor_axiom(d in 1u32..=3, p in 0u32..=6, divisors in 1usize..=3) {
        prop_assume!(2 * p <= 4 * d);
        let t = GwTable::new();
        let mut exps = vec![3u8; p as usize];
        exps.extend(std::iter::repeat_n(2, (4 * d - 2 * p) as usize));
        let base = t.gw0(3, d as i64, &exps).unwrap();
        exps.extend(std::iter::repeat_n(1, divisors));
        let with = t.gw0(3, d as i64, &exps).unwrap();
        prop_assert_eq!(with, base * rat((d as i64).pow(divisors as u32)));
    }

    #[test]
    fn p3_point_line_counts_are_nonnegative_integers(d in 1i64..=4, p in 0u32..=8) {
        prop_assume!(2 * p as i64 <= 4 * d);
        let t = GwTable::new();
        let v = t.n_p3(d, p, (4 * d - 2 * p as i64) as u32).unwrap();
        prop_assert!(v >= 0.into());
    }

    #[test]
    fn splitting_law_is_symmetric(d in 1u32..=4, a in 1u8..=3, b in 1u8..=3, c in 1u8..=3, e in 1u8..=3) {
        let t = GwTable::new();
        let fixed = (a + b + c + e) as i64;
        let points = 4 * d as i64 + 3 - fixed;
        prop_assume!(points >= 0 && points % 2 == 0);
        let mu = ins(&vec![3; (points / 2) as usize]);
        let forward = rt0_4pt(&t, 3, d, [a, b, c, e], &mu).unwrap();
        prop_assert_eq!(&forward, &rt0_4pt(&t, 3, d, [c, e, a, b], &mu).unwrap());
        prop_assert_eq!(&forward, &rt0_4pt(&t, 3, d, [b, a, e, c], &mu).unwrap());
    }

    #[test]
    fn fundamental_class_deletion_commutes_with_splitting(
        d in 1u32..=4, a in 1u8..=3, b in 1u8..=3, c in 1u8..=3, slot in 0usize..4,
    ) {
        let t = GwTable::new();
        let points = 4 * d as i64 + 3 - (a + b + c) as i64;
        prop_assume!(points >= 0 && points % 2 == 0);
        let mu = ins(&vec![3; (points / 2) as usize]);
        let mut four = vec![a, b, c];
        four.insert(slot, 0);
        let split = splitting_law(&t, 3, d, [four[0], four[1], four[2], four[3]], &mu);
        prop_assert_eq!(split, rt0_3pt(&t, 3, d, [a, b, c], &mu).unwrap());
    }

    #[test]
    fn v2_monomials_are_label_symmetric(d in 2i64..=4, p in 0u32..=6) {
        prop_assume!(2 * p as i64 <= 4 * d - 3);
        let t = GwTable::new();
        let eng = ChernEngine::new(&t);
        let prof = ConstraintProfile::new(3, d, p, (4 * d - 3 - 2 * p as i64) as u32).unwrap();
        prop_assert_eq!(eng.pair_v2(&prof, 1, 1, 0).unwrap(), eng.pair_v2(&prof, 1, 0, 1).unwrap());
        prop_assert_eq!(eng.pair_v2(&prof, 0, 2, 0).unwrap(), eng.pair_v2(&prof, 0, 0, 2).unwrap());
    }
}

#[test]
fn diagonals_pair_dual_classes() {
    for n in 2..=3u8 {
        let diag = diagonal(n, 2).unwrap();
        let total: Rational = diag
            .terms
            .iter()
            .map(|(e, c)| {
                let x = CohClass::basis(n, e[0]).unwrap();
                let y = CohClass::basis(n, e[1]).unwrap();
                x.cup(&y).unwrap().integral() * c
            })
            .sum();
        assert_eq!(total, rat(n as i64 + 1));
    }
}

#[test]
fn triple_diagonal_is_symmetric() {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for n in 2..=3u8 {
        let mut base = diagonal(n, 3).unwrap().terms;
        base.sort();
        for perm in PERMS {
            let mut permuted: Vec<_> = base
                .iter()
                .map(|(e, c)| (perm.iter().map(|&i| e[i]).collect::<Vec<_>>(), c.clone()))
                .collect();
            permuted.sort();
            assert_eq!(permuted, base);
        }
    }
}
