use contact_surgery::braid::BraidWord;
use contact_surgery::cfrac::{eval_cfrac, neg_cfrac};
use contact_surgery::limits::{
    block_decomposition, end_slope, properly_isotopic, sign_of, truncation_consistency, CoeffStream, GluingMatrix,
    SignTuple, Tail, TupleSign,
};
use proptest::prelude::*;

fn irrational_stream() -> impl Strategy<Value = CoeffStream> {
    (prop::collection::vec(-6i64..=-2, 0..4), prop::collection::vec(-6i64..=-2, 1..4), -6i64..=-3).prop_map(
        |(prefix, mut period, big)| {
            period[0] = big;
            CoeffStream::new(prefix, period).unwrap()
        },
    )
}

/// A tuple whose entries are reduced into the menus of `s`.
fn tuple_for(s: &CoeffStream, prefix: &[i64], tail_kind: u8, periodic: &[i64]) -> SignTuple {
    let fit = |i: usize, x: i64| 1 + x.rem_euclid((s.get(i).unwrap() + 1).abs());
    let prefix: Vec<i64> = prefix.iter().enumerate().map(|(i, &x)| fit(i, x)).collect();
    let tail = match tail_kind % 3 {
        0 => Tail::Ones,
        1 => Tail::Max,
        _ => {
            // align the tail with the stream period so each entry sees a fixed menu
            let start = prefix.len().max(s.prefix().len());
            let len = s.period().len();
            let mut prefix_fill: Vec<i64> = Vec::new();
            for i in prefix.len()..start {
                prefix_fill.push(fit(i, 1));
            }
            let p: Vec<i64> = (0..len).map(|j| fit(start + j, periodic[j % periodic.len()])).collect();
            return SignTuple::new([prefix, prefix_fill].concat(), Tail::Periodic(p));
        }
    };
    SignTuple::new(prefix, tail)
}

fn tuple_strategy(s: CoeffStream) -> impl Strategy<Value = (CoeffStream, SignTuple)> {
    (prop::collection::vec(0i64..10, 0..5), any::<u8>(), prop::collection::vec(0i64..10, 1..4))
        .prop_map(move |(p, t, q)| (s.clone(), tuple_for(&s, &p, t, &q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn end_slope_is_convergent(s in irrational_stream()) {
        let mut prev = None;
        for n in 0..=30 {
            let r = end_slope(&s, n).unwrap();
            prop_assert_eq!(&r, &eval_cfrac(&s.take(n)).unwrap());
            if let Some(p) = prev {
                prop_assert!(p < r);
            }
            prev = Some(r);
        }
    }

    #[test]
    fn gluing_determinant(a in -1000i64..=-2) {
        prop_assert_eq!(GluingMatrix { a }.det(), 1);
    }

    #[test]
    fn blocks_match_menus((s, k) in irrational_stream().prop_flat_map(tuple_strategy), n in 0usize..20) {
        prop_assume!(k.validate(&s).is_ok());
        let blocks = block_decomposition(&s, &k, n).unwrap();
        for (i, b) in blocks.iter().enumerate() {
            prop_assert_eq!(b.class_count() as i64, (s.get(i).unwrap() + 1).abs());
            prop_assert!(b.positives <= b.length);
        }
    }

    #[test]
    fn sign_ignores_prefix((s, k) in irrational_stream().prop_flat_map(tuple_strategy), edits in prop::collection::vec(0i64..10, 0..6)) {
        prop_assume!(k.validate(&s).is_ok());
        let sign = sign_of(&s, &k).unwrap();
        let mut prefix = k.truncate(&s, k.prefix.len().max(edits.len()));
        for (i, e) in edits.iter().enumerate() {
            prefix[i] = 1 + e.rem_euclid((s.get(i).unwrap() + 1).abs());
        }
        // keep the tail aligned with where it started
        let mutated = match &k.tail {
            Tail::Periodic(p) => {
                let shift = prefix.len() - k.prefix.len();
                let mut p = p.clone();
                let len = p.len();
                p.rotate_left(shift % len);
                SignTuple::new(prefix, Tail::Periodic(p))
            }
            t => SignTuple::new(prefix, t.clone()),
        };
        prop_assert_eq!(sign_of(&s, &mutated).unwrap(), sign);
    }

    #[test]
    fn proper_isotopy_is_an_equivalence(
        (s1, k1) in irrational_stream().prop_flat_map(tuple_strategy),
        (s2, k2) in irrational_stream().prop_flat_map(tuple_strategy),
        (s3, k3) in irrational_stream().prop_flat_map(tuple_strategy),
        same in any::<bool>(),
    ) {
        prop_assume!(k1.validate(&s1).is_ok() && k2.validate(&s2).is_ok() && k3.validate(&s3).is_ok());
        // force some collisions so transitivity has something to bite on
        let (s2, k2) = if same { (s1.clone(), k2_on(&k2)) } else { (s2, k2) };
        let rel = |a: (&CoeffStream, &SignTuple), b: (&CoeffStream, &SignTuple)| properly_isotopic(a.0, a.1, b.0, b.1).unwrap();
        let (x, y, z) = ((&s1, &k1), (&s2, &k2), (&s3, &k3));
        prop_assert!(rel(x, x));
        prop_assert_eq!(rel(x, y), rel(y, x));
        if rel(x, y) && rel(y, z) {
            prop_assert!(rel(x, z));
        }
    }

    #[test]
    fn truncations_are_consistent((s, k) in irrational_stream().prop_flat_map(tuple_strategy), n in 0usize..8) {
        prop_assume!(k.validate(&s).is_ok());
        let beta: BraidWord = "B3 s1^7 s2^-1".parse().unwrap();
        prop_assert!(truncation_consistency(&beta, &s, &k, n).unwrap());
    }
}

/// Ones or max tail, depending on `k`; valid over any stream.
fn k2_on(k: &SignTuple) -> SignTuple {
    match k.tail {
        Tail::Ones => SignTuple::new(vec![], Tail::Ones),
        _ => SignTuple::new(vec![], Tail::Max),
    }
}

#[test]
fn menus_of_minus_two_levels() {
    let s: CoeffStream = "-2,-2(-3)".parse().unwrap();
    let k = SignTuple::new(vec![1, 1], Tail::Max);
    let blocks = block_decomposition(&s, &k, 2).unwrap();
    assert_eq!(blocks.iter().map(|b| b.class_count()).collect::<Vec<_>>(), vec![1, 1, 2]);
    let beta: BraidWord = "B3 s1^7 s2^-1".parse().unwrap();
    assert!(truncation_consistency(&beta, &s, &k, 2).unwrap());
}

#[test]
fn minus_two_stream_converges_to_minus_one() {
    let s: CoeffStream = "(-2)".parse().unwrap();
    for n in 0..40 {
        let r = end_slope(&s, n).unwrap();
        assert_eq!(neg_cfrac(&r).unwrap().len(), n + 1);
    }
    assert!(sign_of(&s, &SignTuple::new(vec![], Tail::Ones)).is_err());
}

#[test]
fn sign_examples() {
    let s: CoeffStream = "(-3)".parse().unwrap();
    assert_eq!(sign_of(&s, &SignTuple::new(vec![2, 2, 2], Tail::Ones)).unwrap(), TupleSign::Minus);
    assert_eq!(sign_of(&s, &SignTuple::new(vec![1], Tail::Max)).unwrap(), TupleSign::Plus);
}
