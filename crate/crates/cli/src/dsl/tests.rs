use gradal_core::element::Coeff;
use gradal_core::ringexpr::{AlgebraMode, Base};
use num_bigint::BigInt;
use proptest::prelude::*;

use super::ast::*;
use super::eval::Env;
use super::parser::*;
use super::print;
use crate::error::CliError;

#[test]
fn spec_examples_parse() {
    let r = parse_ring("Q[Z/3]coarse").unwrap();
    match r.kind {
        RingKind::Algebra(inner, g, AlgebraMode::Coarse) => {
            assert_eq!(inner.kind, RingKind::Base(Base::Q));
            assert_eq!(g.factors, vec![GroupFactor::Cyclic(3)]);
        }
        k => panic!("{k:?}"),
    }
    let r = parse_ring("coarsen(Q[Z^2]fine, [[1,1]])").unwrap();
    assert!(matches!(r.kind, RingKind::Coarsen(_, ref h) if h.rows == vec![vec![1, 1]]));
    let e = parse_elem("1/3*e(0)+1/3*e(1)+1/3*e(2)").unwrap();
    let ElemAst::Sum(s) = e else { panic!() };
    assert_eq!(s.terms.len(), 3);
    assert_eq!(s.terms[2].coeff, Coeff::new(1.into(), 3.into()));
    assert_eq!(s.terms[2].exponent, Some(vec![2]));
}

#[test]
fn evaluation() {
    let env = Env::new();
    let r = env.ring_text("Q[Z/3]coarse").unwrap();
    let f = env.element_text("1/3*e(0)+1/3*e(1)+1/3*e(2)", &r).unwrap();
    assert_eq!(&(&f * &f), &f);
    let c = env.ring_text("coarsen(Q[Z^2]fine, [[1,1]])").unwrap();
    assert_eq!(c.g.to_string(), "Z^1");
    let x = env.element_text("e(1,0) - e(0,1)", &c).unwrap();
    assert!(x.is_homogeneous());
    let q = env.ring_text("Frac(Z[Z]fine)").unwrap();
    let y = env.fraction_text("(e(2))/(2*e(1))", &q).unwrap();
    assert_eq!(y.to_string(), "1/2*e(1)");
    assert!(env.fraction_text("(e(2))/(e(0) + e(1))", &q).is_err());
    let q = env.ring_text("Frac(coarsen(Z[Z^2]fine, [[1,1]]))").unwrap();
    let z = env.fraction_text("(e(2,0))/(e(1,0) + e(0,1))", &q).unwrap();
    assert_eq!(z.to_string(), "(1*e(2,0))/(1*e(0,1) + 1*e(1,0))");
}

#[test]
fn errors_carry_positions() {
    match parse_ring("Q[Z/3]medium") {
        Err(CliError::Syntax { span, .. }) => assert_eq!((span.line, span.start), (1, 13)),
        other => panic!("{other:?}"),
    }
    let env = Env::new();
    match env.ring_text("coarsen(Q[Z^2]fine, [[1,1,1]])") {
        Err(CliError::Type { first, second, .. }) => {
            assert_eq!(first.start, 21);
            assert_eq!(second.unwrap().start, 9);
        }
        other => panic!("{other:?}"),
    }
    match env.ring_text("coarsen(Q[Z/2]fine, [] : Z/3 -> 0)") {
        Err(e @ CliError::Type { .. }) => assert_eq!(e.exit_code(), 2),
        other => panic!("{other:?}"),
    }
    let r = env.ring_text("Z[Z/3]coarse").unwrap();
    assert!(matches!(env.element_text("1/2*e(0)", &r), Err(CliError::Type { .. })));
    assert!(matches!(env.element_text("e(0,0)", &r), Err(CliError::Type { .. })));
    assert!(matches!(env.ring_text("R[Z]fine"), Err(CliError::Unbound { .. })));
}

#[test]
fn scripts() {
    let text = "# comment\nlet R = Z[Z/2]coarse\nlet f = 1/2*e(0) + 1/2*e(1)\nintegrality R \"Q[Z/2]coarse\" f --max-deg 2\n";
    let s = parse_script(text).unwrap();
    assert_eq!(s.items.len(), 3);
    assert_eq!(parse_script(&print::script(&s)).unwrap(), s);
    match &s.items[2] {
        Item::Command { words, .. } => assert_eq!(words[2], "Q[Z/2]coarse"),
        i => panic!("{i:?}"),
    }
    assert!(split_words("a \"b", 3).is_err());
    assert_eq!(split_words("classify coarsen(Q[Z^2]fine, [[1,1]])", 1).unwrap().len(), 2);
}

fn group_ast() -> impl Strategy<Value = GroupAst> {
    let factor = prop_oneof![
        Just(GroupFactor::Zero),
        (0usize..4).prop_map(GroupFactor::Free),
        (1i64..7).prop_map(GroupFactor::Cyclic),
    ];
    proptest::collection::vec(factor, 1..4).prop_map(|factors| GroupAst {
        factors,
        span: Span::default(),
    })
}

fn hom_ast() -> impl Strategy<Value = HomAst> {
    (
        proptest::collection::vec(proptest::collection::vec(-9i64..10, 0..3), 0..3),
        proptest::option::of((group_ast(), group_ast())),
    )
        .prop_map(|(rows, signature)| HomAst {
            rows,
            signature,
            span: Span::default(),
        })
}

fn tuple_ast() -> impl Strategy<Value = TupleAst> {
    proptest::collection::vec(-9i64..10, 0..3).prop_map(|coords| TupleAst {
        coords,
        span: Span::default(),
    })
}

fn ring_ast() -> impl Strategy<Value = RingAst> {
    let leaf = prop_oneof![
        Just(RingKind::Base(Base::Z)),
        Just(RingKind::Base(Base::Q)),
        "[A-Y][a-z0-9_]{0,3}"
            .prop_filter("reserved", |n| !["Q", "Frac"].contains(&n.as_str()))
            .prop_map(RingKind::Name),
    ];
    let leaf = leaf.prop_map(|kind| RingAst {
        kind,
        span: Span::default(),
    });
    leaf.prop_recursive(4, 16, 2, |inner| {
        let b = inner.prop_map(Box::new);
        prop_oneof![
            (b.clone(), group_ast(), any::<bool>()).prop_map(|(r, g, fine)| {
                let mode = if fine { AlgebraMode::Fine } else { AlgebraMode::Coarse };
                RingKind::Algebra(r, g, mode)
            }),
            (b.clone(), hom_ast()).prop_map(|(r, h)| RingKind::Coarsen(r, h)),
            (b.clone(), hom_ast()).prop_map(|(r, h)| RingKind::Extend(r, h)),
            (b.clone(), proptest::collection::vec(tuple_ast(), 0..3))
                .prop_map(|(r, t)| RingKind::Restrict(r, t)),
            b.prop_map(RingKind::Frac),
        ]
        .prop_map(|kind| RingAst {
            kind,
            span: Span::default(),
        })
    })
}

fn sum_ast() -> impl Strategy<Value = SumAst> {
    let term = (
        -50i64..50,
        1i64..7,
        proptest::option::of(proptest::collection::vec(-9i64..10, 0..3)),
    )
        .prop_map(|(n, d, exponent)| TermAst {
            coeff: Coeff::new(BigInt::from(n), BigInt::from(d)),
            exponent,
            span: Span::default(),
        });
    proptest::collection::vec(term, 1..4).prop_map(|terms| SumAst {
        terms,
        span: Span::default(),
    })
}

fn elem_ast() -> impl Strategy<Value = ElemAst> {
    prop_oneof![
        sum_ast().prop_map(ElemAst::Sum),
        (sum_ast(), sum_ast()).prop_map(|(n, d)| ElemAst::Quotient(n, d)),
    ]
}

fn word() -> impl Strategy<Value = String> {
    prop_oneof!["[a-z0-9-]{1,6}", "[a-z \"'\\\\#()\\[\\]]{0,6}"]
}

fn script_ast() -> impl Strategy<Value = Script> {
    let item = prop_oneof![
        ("[a-z][a-z0-9]{0,3}", ring_ast()).prop_map(|(name, r)| Item::Let {
            name,
            value: Value::Ring(r),
            span: Span::default(),
        }),
        ("[a-z][a-z0-9]{0,3}", elem_ast()).prop_map(|(name, e)| Item::Let {
            name,
            value: Value::Elem(e),
            span: Span::default(),
        }),
        ("[a-km-z][a-z-]{0,8}", proptest::collection::vec(word(), 0..4)).prop_map(|(head, rest)| {
            Item::Command {
                words: std::iter::once(head).chain(rest).collect(),
                span: Span::default(),
            }
        }),
    ];
    proptest::collection::vec(item, 0..5).prop_map(|items| Script { items })
}

proptest! {
    #[test]
    fn group_round_trip(g in group_ast()) {
        prop_assert_eq!(parse_group(&print::group(&g)).unwrap(), g);
    }

    #[test]
    fn hom_round_trip(h in hom_ast()) {
        prop_assert_eq!(parse_hom(&print::hom(&h)).unwrap(), h);
    }

    #[test]
    fn ring_round_trip(r in ring_ast()) {
        prop_assert_eq!(parse_ring(&print::ring(&r)).unwrap(), r);
    }

    #[test]
    fn elem_round_trip(e in elem_ast()) {
        prop_assert_eq!(parse_elem(&print::elem(&e)).unwrap(), e);
    }

    #[test]
    fn script_round_trip(s in script_ast()) {
        prop_assert_eq!(parse_script(&print::script(&s)).unwrap(), s);
    }
}
