use cryptologic::rational::ratio;
use cryptologic::{enumerate, BitString, Condition, Expr, FieldSpec, Rational, Schema, Value, ViewMap};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn schema(wx: &[u32], wy: &[u32], constrained: bool) -> Schema {
    let field = |name: &str, len: usize, w: &[u32]| {
        let total: u32 = w.iter().sum();
        FieldSpec::sampled(
            name,
            BitString::all(len).into_iter().map(Value::Bits).collect(),
            w.iter().map(|&k| ratio(k as i64, total as i64)).collect(),
        )
    };
    let s = Schema::new(vec![
        field("x", 2, wx),
        field("y", 2, wy),
        FieldSpec::derived("z", Expr::xor(Expr::field("x"), Expr::field("y"))),
    ]);
    if constrained {
        s.with_constraint(Condition::Neq(Expr::field("z"), Expr::constant(BitString::zeros(2))))
    } else {
        s
    }
}

fn weights() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..5, 4).prop_map(|mut w| {
        w[1] += 1;
        w[2] += 1;
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn enumeration_is_a_distribution(wx in weights(), wy in weights(), constrained in any::<bool>()) {
        let space = enumerate(&schema(&wx, &wy, constrained)).unwrap();
        let total: Rational = space.states().iter().map(|(_, p)| p.clone()).sum();
        prop_assert!(total.is_one());
        prop_assert!(space.states().iter().all(|(_, p)| !p.is_zero()));
        let mut seen = std::collections::HashSet::new();
        prop_assert!(space.states().iter().all(|(s, _)| seen.insert(s.clone())));
    }

    #[test]
    fn unconstrained_mass_is_the_product(wx in weights(), wy in weights()) {
        let space = enumerate(&schema(&wx, &wy, false)).unwrap();
        let (tx, ty): (u32, u32) = (wx.iter().sum(), wy.iter().sum());
        for (s, p) in space.states() {
            let idx = |f: &str| {
                s.get(f).unwrap().as_bits().unwrap().bits().iter().fold(0usize, |a, &b| a * 2 + usize::from(b))
            };
            let expected = ratio(wx[idx("x")] as i64, tx as i64) * ratio(wy[idx("y")] as i64, ty as i64);
            prop_assert_eq!(p, &expected);
        }
    }

    #[test]
    fn information_sets_partition_the_space(wx in weights(), wy in weights(), mask in 0u8..8) {
        let space = enumerate(&schema(&wx, &wy, true)).unwrap();
        let visible: Vec<&str> = ["x", "y", "z"].into_iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, f)| f).collect();
        let view = ViewMap::new("A", visible);
        let classes = space.partition(&view);
        let covered: usize = classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(covered, space.len());
        let mass: Rational = classes.iter().map(|c| c.mass.clone()).sum();
        prop_assert!(mass.is_one());
        for (s, _) in space.states() {
            let q = view.project(s);
            prop_assert_eq!(view.project(&q), q.clone());
            let set = space.information_set(&view, s).unwrap();
            prop_assert!(set.iter().all(|(t, _)| view.same_info(t, s)));
            let class = classes.iter().find(|c| c.key == q).unwrap();
            prop_assert_eq!(set.len(), class.members.len());
        }
    }
}
