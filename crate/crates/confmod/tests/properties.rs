//! Property tests: ordering laws, exactness of the coefficient ring,
//! locality soundness, linearity, memoization transparency, and
//! parse/render round trips.

use proptest::prelude::*;

use confmod::action::{Context, RawWord};
use confmod::coeff::Coefficient;
use confmod::display::{render_expression, render_module_element};
use confmod::element::Element;
use confmod::gsb::reduce;
use confmod::monomial::{AlgebraMonomial, ModuleMonomial, Weight};
use confmod::parse::{parse_expression, parse_module_element, ExpressionAst};
use confmod::presets::{virasoro_module, Alpha};
use confmod::symbols::{AlgGen, LocalityMap, ModGen, Symbol, SymbolTable};

fn test_context() -> Context {
    let table = SymbolTable::new(vec!["a".into(), "b".into()], vec!["y".into(), "z".into()])
        .unwrap();
    Context::new(table, LocalityMap::uniform(2).unwrap())
}

fn arb_module_word() -> impl Strategy<Value = ModuleMonomial> {
    (
        0..2u32,
        0..5u32,
        proptest::collection::vec((0..2u32, 0..2u32), 0..4),
    )
        .prop_map(|(tail, d, chain)| {
            let chain = chain.into_iter().map(|(g, n)| (AlgGen(g), n)).collect();
            ModuleMonomial::new(chain, d, ModGen(tail))
        })
}

fn arb_algebra_word() -> impl Strategy<Value = AlgebraMonomial> {
    (
        0..2u32,
        0..3u32,
        proptest::collection::vec((0..2u32, 0..2u32), 0..3),
    )
        .prop_map(|(tail, d, chain)| {
            let chain = chain.into_iter().map(|(g, n)| (AlgGen(g), n)).collect();
            AlgebraMonomial::new(chain, d, AlgGen(tail))
        })
}

fn arb_coefficient() -> impl Strategy<Value = Coefficient> {
    proptest::collection::vec((0..3u32, -5..=5i64, 1..=4i64), 0..3).prop_map(|terms| {
        let mut c = Coefficient::zero();
        for (e, p, q) in terms {
            if p == 0 {
                continue;
            }
            c = c.add_ref(&Coefficient::from_ratio(p, q).mul_ref(&Coefficient::parameter("alpha").pow(e)));
        }
        c
    })
}

fn arb_module_element() -> impl Strategy<Value = Element<ModuleMonomial>> {
    proptest::collection::vec((arb_module_word(), arb_coefficient()), 0..4).prop_map(|terms| {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    })
}

fn arb_module_raw_word() -> impl Strategy<Value = RawWord> {
    let alg_leaf = (0..2u32, 0..3u32).prop_map(|(g, d)| RawWord::Atom {
        d_degree: d,
        symbol: Symbol::Algebra(AlgGen(g)),
    });
    let alg_tree = alg_leaf.prop_recursive(3, 8, 2, |inner| {
        (inner.clone(), 0..4u32, inner).prop_map(|(l, n, r)| RawWord::Product {
            left: Box::new(l),
            n,
            right: Box::new(r),
        })
    });
    let mod_leaf = (0..2u32, 0..3u32).prop_map(|(g, d)| RawWord::Atom {
        d_degree: d,
        symbol: Symbol::Module(ModGen(g)),
    });
    (
        proptest::collection::vec((alg_tree, 0..4u32), 0..3),
        mod_leaf,
    )
        .prop_map(|(wraps, leaf)| {
            let mut tree = leaf;
            for (acting, n) in wraps {
                tree = RawWord::Product {
                    left: Box::new(acting),
                    n,
                    right: Box::new(tree),
                };
            }
            tree
        })
}

proptest! {
    #[test]
    fn order_is_a_strict_total_order(u in arb_module_word(), v in arb_module_word(), w in arb_module_word()) {
        use std::cmp::Ordering::*;
        prop_assert_eq!(u.cmp(&v), v.cmp(&u).reverse());
        prop_assert_eq!(u.cmp(&v) == Equal, u == v);
        if u.cmp(&v) == Less && v.cmp(&w) == Less {
            prop_assert_eq!(u.cmp(&w), Less);
        }
        prop_assert_eq!(u.cmp(&v), Weight::of(&u).cmp(&Weight::of(&v)));
    }

    #[test]
    fn weight_is_injective(u in arb_module_word(), v in arb_module_word()) {
        if Weight::of(&u) == Weight::of(&v) {
            prop_assert_eq!(u, v);
        }
    }

    #[test]
    fn coefficient_ring_identities(a in arb_coefficient(), b in arb_coefficient(), c in arb_coefficient()) {
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert!(a.sub_ref(&a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn locality_bound_is_sound(a in arb_algebra_word(), u in arb_module_word()) {
        let ctx = test_context();
        let bound = ctx.locality(&a, &u);
        let f = Element::monomial(u);
        for n in bound..bound + 5 {
            prop_assert!(ctx.act_monomial(&a, n, &f).is_zero());
        }
    }

    #[test]
    fn action_is_linear(f in arb_module_element(), g in arb_module_element(), k in arb_coefficient(), n in 0..5u32) {
        let ctx = test_context();
        let b = AlgGen(0);
        let mut sum = f.clone();
        sum.add_assign(&g);
        let mut rhs = ctx.act_generator(b, n, &f);
        rhs.add_assign(&ctx.act_generator(b, n, &g));
        prop_assert_eq!(ctx.act_generator(b, n, &sum), rhs);
        let acting = Element::monomial(AlgebraMonomial::atom(AlgGen(1)).prepend(AlgGen(0), 1));
        prop_assert_eq!(
            ctx.act_element(&acting, n, &f.scaled(&k)),
            ctx.act_element(&acting, n, &f).scaled(&k)
        );
    }

    #[test]
    fn memoization_is_transparent(b in 0..2u32, n in 0..9u32, u in arb_module_word()) {
        let ctx = test_context();
        let b = AlgGen(b);
        prop_assert_eq!(
            ctx.act_generator_word(b, n, &u),
            ctx.act_generator_word_unmemoized(b, n, &u)
        );
    }

    #[test]
    fn rendered_elements_reparse(e in arb_module_element()) {
        let ctx = test_context();
        let params = vec!["alpha".to_string()];
        let text = render_module_element(&e, ctx.symbols());
        let back = parse_module_element(&text, &ctx, &params).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn rendered_expressions_reparse_to_equal_asts(
        terms in proptest::collection::vec((arb_coefficient(), arb_module_raw_word()), 1..3)
    ) {
        let ctx = test_context();
        let params = vec!["alpha".to_string()];
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        prop_assume!(!terms.is_empty());
        let ast = ExpressionAst { terms };
        let text = render_expression(&ast, ctx.symbols());
        let back = parse_expression(&text, ctx.symbols(), &params).unwrap();
        prop_assert_eq!(back, ast);
    }

    #[test]
    fn normalization_is_idempotent_through_rendering(w in arb_module_raw_word()) {
        let ctx = test_context();
        let normalized = ctx.normalize_module(&w).unwrap();
        let text = render_module_element(&normalized, ctx.symbols());
        let again = parse_module_element(&text, &ctx, &[]).unwrap();
        prop_assert_eq!(again, normalized);
    }

    #[test]
    fn reduce_is_idempotent_on_the_virasoro_module(
        terms in proptest::collection::vec((0..2u32, 0..5u32, proptest::collection::vec(0..2u32, 0..3), -4..=4i64), 0..4)
    ) {
        let p = virasoro_module(0, &Alpha::Symbolic).unwrap();
        let ctx = p.context();
        let mut h = Element::zero();
        for (_, d, chain, c) in terms {
            let mut word = ModuleMonomial::d_atom(d, ModGen(0));
            for n in chain {
                word = word.prepend(AlgGen(0), n);
            }
            h.add_term(word, Coefficient::from_int(c));
        }
        let (nf, _) = reduce(ctx, p.module_relations(), &h).unwrap();
        let (nf2, trace) = reduce(ctx, p.module_relations(), &nf).unwrap();
        prop_assert_eq!(nf2, nf);
        prop_assert!(trace.is_empty());
    }
}
