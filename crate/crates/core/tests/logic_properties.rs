use cryptologic::rational::ratio;
use cryptologic::{
    enumerate, Agent, BitString, EvalConfig, Expr, FieldSpec, Model, Predicate, Rational, Schema, State,
    SubjectiveInterval, TripleQuery, Value, ViewMap,
};
use proptest::prelude::*;

const FIELDS: [(&str, usize); 3] = [("x", 2), ("y", 1), ("z", 2)];
const ALL: [&str; 4] = ["x", "y", "z", "w"];

fn width(field: &str) -> usize {
    match field {
        "y" => 1,
        _ => 2,
    }
}

fn model(weights: &[Vec<u32>], views: &[u8]) -> Model {
    let mut fields: Vec<FieldSpec> = FIELDS
        .iter()
        .zip(weights)
        .map(|((name, len), w)| {
            let total: u32 = w.iter().sum();
            let domain = BitString::all(*len).into_iter().map(Value::Bits).collect();
            let probs = w.iter().map(|&k| ratio(k as i64, total as i64)).collect();
            FieldSpec::sampled(*name, domain, probs)
        })
        .collect();
    fields.push(FieldSpec::derived("w", Expr::xor(Expr::field("x"), Expr::field("z"))));
    let space = enumerate(&Schema::new(fields)).unwrap();
    let views = views.iter().enumerate().map(|(i, mask)| {
        let visible: Vec<&str> = ALL.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, f)| *f).collect();
        ViewMap::new(format!("A{i}"), visible)
    });
    Model::new(space, views).unwrap()
}

fn weights() -> impl Strategy<Value = Vec<Vec<u32>>> {
    FIELDS
        .iter()
        .map(|(_, len)| prop::collection::vec(0u32..4, 1 << len).prop_map(|mut w| {
            w[0] += 1;
            w
        }))
        .collect::<Vec<_>>()
}

fn interval() -> impl Strategy<Value = SubjectiveInterval> {
    (0i64..=4, 0i64..=4).prop_map(|(a, b)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        SubjectiveInterval::new(ratio(lo, 4), ratio(hi, 4)).unwrap()
    })
}

fn atom() -> impl Strategy<Value = Predicate> {
    (0usize..4, 0u64..4, any::<bool>()).prop_map(|(f, v, eq)| {
        let field = ALL[f];
        let value = BitString::from_index(v % (1 << width(field)), width(field));
        let (l, r) = (Expr::field(field), Expr::constant(value));
        if eq {
            Predicate::eq(l, r)
        } else {
            Predicate::neq(l, r)
        }
    })
}

fn predicate() -> impl Strategy<Value = Predicate> {
    let leaf = prop_oneof![
        1 => Just(Predicate::Top),
        1 => Just(Predicate::Bottom),
        6 => atom(),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            inner.clone().prop_map(Predicate::not),
            (interval(), inner.clone()).prop_map(|(i, p)| Predicate::w(i, p)),
            inner.prop_map(Predicate::k),
        ]
    })
}

fn flat_predicate() -> impl Strategy<Value = Predicate> {
    atom().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            inner.prop_map(Predicate::not),
        ]
    })
}

/// Replaces atoms on fields outside `view` with `Top`, so the predicate is
/// definite at every projection.
fn restrict(p: &Predicate, view: &ViewMap) -> Predicate {
    match p {
        Predicate::Atom { .. } => {
            if p.fields().iter().all(|f| view.visible.contains(*f)) {
                p.clone()
            } else {
                Predicate::Top
            }
        }
        Predicate::And(a, b) => restrict(a, view).and(restrict(b, view)),
        Predicate::Or(a, b) => restrict(a, view).or(restrict(b, view)),
        Predicate::Not(a) => restrict(a, view).not(),
        Predicate::W(..) | Predicate::K(_) | Predicate::Top | Predicate::Bottom => p.clone(),
    }
}

struct Case {
    model: Model,
    agent: String,
    anchor: State,
}

fn case() -> impl Strategy<Value = Case> {
    (weights(), prop::collection::vec(0u8..16, 1..3), any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<bool>())
        .prop_map(|(w, views, state, agent, partial)| {
            let model = model(&w, &views);
            let agent = format!("A{}", agent.index(views.len()));
            let full = &model.space().states()[state.index(model.space().len())].0;
            let anchor = if partial {
                model.view(&agent).unwrap().project(full)
            } else {
                full.clone()
            };
            Case { model, agent, anchor }
        })
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {} over {} states", self.agent, self.anchor, self.model.space().len())
    }
}

fn triple(c: &Case, pre: &Predicate, post: &Predicate, config: &EvalConfig) -> bool {
    c.model
        .eval_triple(
            &TripleQuery {
                pre: pre.clone(),
                anchor: c.anchor.clone(),
                agent: Agent::named(c.agent.clone()),
                post: post.clone(),
            },
            config,
        )
        .unwrap()
}

fn modes() -> [EvalConfig; 2] {
    [EvalConfig::default(), EvalConfig::objective()]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn disjunctive_precondition_splits(c in case(), p1 in predicate(), p2 in predicate(), post in predicate()) {
        let view = c.model.view(&c.agent).unwrap().clone();
        let (p1, p2) = (restrict(&p1, &view), restrict(&p2, &view));
        for config in modes() {
            let joint = triple(&c, &p1.clone().or(p2.clone()), &post, &config);
            prop_assert_eq!(joint, triple(&c, &p1, &post, &config) && triple(&c, &p2, &post, &config));
        }
    }

    #[test]
    fn conjunctive_postcondition_splits(c in case(), pre in predicate(), q1 in predicate(), q2 in predicate()) {
        let pre = restrict(&pre, c.model.view(&c.agent).unwrap());
        for config in modes() {
            let joint = triple(&c, &pre, &q1.clone().and(q2.clone()), &config);
            prop_assert_eq!(joint, triple(&c, &pre, &q1, &config) && triple(&c, &pre, &q2, &config));
        }
    }

    #[test]
    fn widening_the_interval_preserves_truth(c in case(), body in predicate(), a in interval(), b in interval()) {
        let wide = SubjectiveInterval::new(
            a.lo().min(b.lo()).clone(),
            a.hi().max(b.hi()).clone(),
        ).unwrap();
        prop_assert!(a.is_subset_of(&wide));
        for config in modes() {
            if triple(&c, &Predicate::Top, &Predicate::w(a.clone(), body.clone()), &config) {
                prop_assert!(triple(&c, &Predicate::Top, &Predicate::w(wide.clone(), body.clone()), &config));
            }
        }
    }

    #[test]
    fn stronger_pre_and_weaker_post_preserve_truth(c in case(), pre in predicate(), extra in predicate(), post in predicate(), other in predicate()) {
        let view = c.model.view(&c.agent).unwrap().clone();
        let (pre, extra) = (restrict(&pre, &view), restrict(&extra, &view));
        for config in modes() {
            if triple(&c, &pre, &post, &config) {
                prop_assert!(triple(&c, &pre.clone().and(extra.clone()), &post, &config));
                prop_assert!(triple(&c, &pre, &post.clone().or(other.clone()), &config));
            }
        }
    }

    #[test]
    fn certainty_is_knowledge(c in case(), body in predicate()) {
        let one = SubjectiveInterval::point(ratio(1, 1)).unwrap();
        for config in modes() {
            let w1 = triple(&c, &Predicate::Top, &Predicate::w(one.clone(), body.clone()), &config);
            let k = c.model.eval_knowledge(&c.agent, &c.anchor, &Predicate::Top, &body, &config).unwrap();
            prop_assert_eq!(w1, k);
            prop_assert_eq!(w1, triple(&c, &Predicate::Top, &Predicate::k(body.clone()), &config));
        }
    }

    #[test]
    fn global_is_some_agent(c in case(), pre in flat_predicate(), post in flat_predicate()) {
        let pre = c.model.views().fold(pre, |p, v| restrict(&p, v));
        let config = EvalConfig::default();
        let global = c.model.eval_triple(&TripleQuery {
            pre: pre.clone(),
            anchor: c.anchor.clone(),
            agent: Agent::Global,
            post: post.clone(),
        }, &config).unwrap();
        let any = c.model.views().any(|v| {
            c.model.eval_triple(&TripleQuery {
                pre: pre.clone(),
                anchor: c.anchor.clone(),
                agent: Agent::named(v.agent.clone()),
                post: post.clone(),
            }, &config).unwrap()
        });
        prop_assert_eq!(global, any);
    }
}

#[test]
fn prior_probabilities_read_at_the_empty_anchor() {
    let m = model(&[vec![1, 1, 1, 1], vec![1, 2], vec![1, 1, 1, 1]], &[0]);
    let target = Predicate::field_is("y", BitString::from_index(1, 1));
    let p: Rational = m.conditional_probability("A0", &State::new(), &Predicate::Top, &target, &EvalConfig::default()).unwrap();
    assert_eq!(p, ratio(2, 3));
}
