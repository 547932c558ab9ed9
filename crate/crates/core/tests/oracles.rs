mod common;

use common::{ins, plane_v1_closed, tau_unordered, wdvv_side, Descendants};
use g2enum::algebra::{int_rat, rat};
use g2enum::chern::ChernEngine;
use g2enum::gw0::{candidate_relations, GwKey, GwTable};
use g2enum::nodecounts::tau_common_node;
use g2enum::ConstraintProfile;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn plane_v1_pairings_match_closed_forms() {
    let t = GwTable::new();
    let eng = ChernEngine::new(&t);
    for d in 1..=7 {
        let p = ConstraintProfile::plane(d).unwrap();
        let (ac, cc) = plane_v1_closed(&t, d);
        assert_eq!(
            eng.pair_v1(&p, 2, 0).unwrap(),
            int_rat(t.n_plane(d).unwrap())
        );
        assert_eq!(eng.pair_v1(&p, 1, 1).unwrap(), ac);
        assert_eq!(eng.pair_v1(&p, 0, 2).unwrap(), cc);
    }
}

#[test]
fn plane_v1_closed_form_values() {
    let t = GwTable::new();
    let got: Vec<_> = (1..=7).map(|d| plane_v1_closed(&t, d)).collect();
    let ac = [-1i64, 1, 24, 1564, 248_488, 80_663_184, 47_122_642_112];
    let cc = [0i64, -3, -42, -2124, -286_104, -82_387_440, -43_896_783_456];
    for (i, (a, c)) in got.into_iter().enumerate() {
        assert_eq!(a, rat(ac[i]));
        assert_eq!(c, rat(cc[i]));
    }
}

#[test]
fn cotangent_integrals_match_descendant_recursion() {
    let t = GwTable::new();
    let eng = ChernEngine::new(&t);
    let mut oracle = Descendants::new(&t);

    let mut cases = Vec::new();
    for d in 1..=5u32 {
        let mu = ins(&vec![2; 3 * d as usize - 2]);
        cases.push((2u8, d, 1u8, 1u32, mu));
        cases.push((2, d, 0, 2, mu));
    }
    for d in 1..=4i64 {
        for p in ConstraintProfile::all_p3(d).unwrap() {
            for (i, j) in [(3u8, 1u32), (2, 2), (1, 3), (0, 4)] {
                cases.push((3, d as u32, i, j, p.classes()));
            }
        }
    }
    cases.push((3, 3, 2, 2, ins(&[3, 3, 2, 2, 2, 2, 2])));
    cases.push((3, 2, 1, 3, ins(&[3, 2, 2, 2])));

    for (n, d, gx, j, g) in cases {
        let engine = eng.psi_bar(n, d, gx, j, g);
        let reference = oracle.pulled_back(n, d, gx, j, g);
        assert_eq!(
            engine,
            reference,
            "P^{n} d={d} h^{gx} c^{j} {:?}",
            g.exponents()
        );
    }
}

// Frozen from the descendant recursion above.
#[test]
fn p3_quartic_pairings() {
    let t = GwTable::new();
    let eng = ChernEngine::new(&t);
    let p = ConstraintProfile::new(3, 4, 3, 7).unwrap();
    assert_eq!(eng.pair_v1(&p, 3, 1).unwrap(), rat(13_852));
    assert_eq!(eng.pair_v1(&p, 0, 4).unwrap(), rat(-15_480));
}

#[test]
fn common_node_counts_match_unordered_enumeration() {
    let t = GwTable::new();
    let mut profiles = vec![];
    for d in 2..=4 {
        profiles.push(ConstraintProfile::plane(d).unwrap());
    }
    for d in 2..=4 {
        for p in ConstraintProfile::all_p3(d).unwrap() {
            if p.points + p.lines <= 9 {
                profiles.push(p);
            }
        }
    }
    for p in profiles {
        let mut constraints = vec![p.ambient; p.points as usize];
        constraints.extend(std::iter::repeat_n(2, p.lines as usize));
        let cases: &[(usize, u8)] = if p.ambient == 2 {
            &[(2, 0)]
        } else {
            &[(2, 0), (2, 2), (3, 0)]
        };
        for &(k, dec) in cases {
            let ordered = tau_common_node(&t, &p, k, dec).unwrap();
            let unordered = tau_unordered(&t, p.ambient, p.degree, &constraints, k, dec);
            assert_eq!(ordered, unordered, "{p:?} k={k} h^{dec}");
        }
    }
}

#[test]
fn random_associativity_relations_hold() {
    let t = GwTable::new();
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 150 {
        let d = rng.gen_range(1..=3u32);
        let slots = [0; 4].map(|_| rng.gen_range(1..=3u8));
        let extra = rng.gen_range(0..=6usize);
        let rest: Vec<u8> = (0..extra).map(|_| rng.gen_range(2..=3u8)).collect();
        let total: i64 = slots.iter().chain(&rest).map(|&c| c as i64 - 1).sum();
        if total != 4 * d as i64 + 1 {
            continue;
        }
        let lhs = wdvv_side(&t, 3, d, slots, &rest);
        let rhs = wdvv_side(&t, 3, d, [slots[0], slots[2], slots[1], slots[3]], &rest);
        assert_eq!(lhs, rhs, "d={d} {slots:?} {rest:?}");
        checked += 1;
    }
}

#[test]
fn every_reconstruction_relation_agrees() {
    let t = GwTable::new();
    for d in 1..=4u32 {
        for p in 0..=2 * d {
            let q = 4 * d - 2 * p;
            let key = GwKey {
                ambient: 3,
                degree: d,
                insertions: ins(&[vec![3; p as usize], vec![2; q as usize]].concat()),
            };
            let expected = t.invariant(3, d, key.insertions);
            for rel in candidate_relations(3, &key.insertions) {
                assert_eq!(
                    t.wdvv_evaluate(key, rel).unwrap(),
                    expected,
                    "{key:?} {rel:?}"
                );
            }
        }
    }
}
