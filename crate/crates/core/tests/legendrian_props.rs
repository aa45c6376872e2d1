mod common;

use std::collections::BTreeSet;

use contact_surgery::cfrac::{phi_vector, SlopeVector};
use contact_surgery::legendrian::{
    c1_pairing, c1_squared, enumerate_weinstein, front_stats, stabilize_to, theta, unknot_menu, validate_weinstein,
    LegendrianComponent,
};
use num::{BigInt, BigRational, Integer};
use proptest::prelude::*;

use common::hypothesis_knot;

fn unit_slopes() -> impl Strategy<Value = SlopeVector> {
    prop::collection::vec((2i64..30).prop_flat_map(|q| (1..q).prop_map(move |p| BigRational::new(p.into(), q.into()))), 1..2)
        .prop_map(SlopeVector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn enumeration_matches_phi(b in hypothesis_knot(), v in unit_slopes()) {
        let e = enumerate_weinstein(&b, &v).unwrap();
        prop_assert_eq!(e.count(), &phi_vector(&v).unwrap());
        let all: Vec<_> = e.iter().collect();
        prop_assert_eq!(BigInt::from(all.len()), e.count().clone());
        let distinct: BTreeSet<_> = all.iter().map(|w| w.rotation_tuple.clone()).collect();
        prop_assert_eq!(distinct.len(), all.len());
        for w in &all {
            prop_assert!(validate_weinstein(w));
            for (l, c) in w.legendrian.iter().zip(w.base.components()) {
                if c.kind.is_unknot() {
                    let f = c.framing.as_integer().unwrap();
                    let f: i64 = f.try_into().unwrap();
                    prop_assert_eq!((l.rot - f).rem_euclid(2), 0);
                    prop_assert!(l.rot.abs() <= (f + 1).abs() - 1);
                }
            }
        }
    }

    #[test]
    fn c1_squared_is_even_in_rot(b in hypothesis_knot(), v in unit_slopes(), pick in any::<prop::sample::Index>()) {
        let e = enumerate_weinstein(&b, &v).unwrap();
        let n = e.count().clone();
        let i = BigInt::from(pick.index(usize::try_from(&n).unwrap()));
        let w = e.nth(&i).unwrap();
        let r = c1_pairing(&w);
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        prop_assert_eq!(c1_squared(&w.base, &r).unwrap(), c1_squared(&w.base, &neg).unwrap());
    }

    #[test]
    fn theta_constant_on_one_over_n(b in hypothesis_knot(), n in 2i64..25) {
        let v = SlopeVector::new(vec![BigRational::new(1.into(), n.into())]);
        let e = enumerate_weinstein(&b, &v).unwrap();
        let thetas: BTreeSet<_> = e.iter().map(|w| theta(&w).unwrap().theta).collect();
        prop_assert_eq!(thetas.len(), 1);
        prop_assert_eq!(thetas.into_iter().next().unwrap(), BigRational::from_integer((-6).into()));
    }

    #[test]
    fn parity_condition_pins_rot(b in hypothesis_knot()) {
        let f = front_stats(&b).unwrap();
        prop_assert_eq!((f.tb - 1 - f.rot).rem_euclid(2), 0);
        prop_assert_eq!(f.rot, (b.c_minus() as i64).rem_euclid(2));
        let s = stabilize_to(&f, 1, 0).unwrap();
        prop_assert_eq!((s.tb, s.rot), (1, 0));
    }

    #[test]
    fn stabilization_hits_targets(tb in -10i64..10, rot in -10i64..10, down in 0i64..12, shift in -12i64..12) {
        let c = LegendrianComponent { tb, rot, ..Default::default() };
        match stabilize_to(&c, tb - down, rot + shift) {
            Ok(s) => {
                prop_assert!(shift.abs() <= down && (down - shift).is_even());
                prop_assert_eq!((s.tb, s.rot), (tb - down, rot + shift));
                prop_assert_eq!(s.initial(), (tb, rot));
                prop_assert!(s.tb + s.rot.abs() <= c.tb + c.rot.abs());
            }
            Err(_) => prop_assert!(shift.abs() > down || (down - shift).is_odd()),
        }
    }

    #[test]
    fn stabilizations_commute(p1 in 0i64..5, n1 in 0i64..5, p2 in 0i64..5, n2 in 0i64..5) {
        let c = LegendrianComponent { tb: 3, rot: 1, ..Default::default() };
        let step = |c: &LegendrianComponent, p: i64, n: i64| stabilize_to(c, c.tb - p - n, c.rot + p - n).unwrap();
        let ab = step(&step(&c, p1, n1), p2, n2);
        let ba = step(&step(&c, p2, n2), p1, n1);
        prop_assert_eq!(ab, ba);
    }
}

#[test]
fn menus_are_symmetric() {
    for f in -20..=-2 {
        let rots: Vec<i64> = unknot_menu(f).unwrap().iter().map(|c| c.rot).collect();
        assert_eq!(rots.len() as i64, -f - 1);
        let mut neg: Vec<i64> = rots.iter().map(|r| -r).collect();
        neg.reverse();
        assert_eq!(neg, rots);
    }
}
