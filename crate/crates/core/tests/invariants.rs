use proptest::prelude::*;
use valdim_core::mixedcell::{monomial_decompose, FactoredPoly, PuiseuxElement};
use valdim_core::semilinear::{
    cell_decompose, closure, dimension, equivalent, interior_dimension, normalize_dnf,
    parse_formula_n, union_formula,
};
use valdim_core::{Dim, DimPoint2, DimPoint3, LowerSet2, LowerSet3, Rat};

fn lower2() -> impl Strategy<Value = LowerSet2> {
    prop::collection::vec((0u32..5, 0u32..5), 0..4)
        .prop_map(|v| LowerSet2::lower_closure(v.into_iter().map(|(a, b)| DimPoint2::new(a, b))))
}

fn lower3() -> impl Strategy<Value = LowerSet3> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3), 0..4)
        .prop_map(|v| LowerSet3::lower_closure(v.into_iter().map(|(a, b, c)| DimPoint3::new3(a, b, c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lowerset_lattice_laws(a in lower2(), b in lower2(), c in lower2()) {
        prop_assert_eq!(a.join(&b), b.join(&a));
        prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
        prop_assert_eq!(a.join(&a), a.clone());
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.join(&b).dim_nat(), a.dim_nat().max(b.dim_nat()));
        prop_assert_eq!(a.add(&b).dim_nat(), a.dim_nat().plus(b.dim_nat()));
        prop_assert!(a.is_subset(&a.join(&b)));
    }

    #[test]
    fn shift_closure_is_a_closure(a in lower2(), b in lower2()) {
        let s = a.shift_closure();
        prop_assert!(a.is_subset(&s));
        prop_assert_eq!(s.shift_closure(), s.clone());
        prop_assert_eq!(s.dim_nat(), a.dim_nat());
        if a.is_subset(&b) {
            prop_assert!(s.is_subset(&b.shift_closure()));
        }
    }

    #[test]
    fn shift_closure3_is_a_closure(a in lower3()) {
        let s = a.shift_closure3();
        prop_assert!(a.is_subset(&s));
        prop_assert_eq!(s.shift_closure3(), s.clone());
        prop_assert_eq!(s.dim_nat(), a.dim_nat());
    }

    #[test]
    fn lowerset_json_round_trip(a in lower3()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LowerSet3>(&text).unwrap(), a);
    }
}

fn atom() -> impl Strategy<Value = String> {
    let rel = prop::sample::select(vec!["<", "<=", "=", ">=", ">", "!="]);
    (-2i64..=2, -2i64..=2, rel, -2i64..=2, 1i64..=2)
        .prop_map(|(a, b, r, p, q)| format!("{a}*x1 + {b}*x2 {r} {p}/{q}"))
}

fn formula() -> impl Strategy<Value = String> {
    atom().prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) & ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) | ({b})")),
            inner.prop_map(|a| format!("!({a})")),
        ]
    })
}

fn grid() -> Vec<Vec<Rat>> {
    let axis: Vec<Rat> = (-6..=6).map(|k| Rat::new(k, 2)).chain([Rat::new(1, 3), Rat::new(-5, 7)]).collect();
    axis.iter().flat_map(|a| axis.iter().map(move |b| vec![a.clone(), b.clone()])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cells_partition_the_set(text in formula()) {
        let f = parse_formula_n(&text, 2).unwrap();
        let cells = cell_decompose(&f);
        for x in grid() {
            let hits = cells.iter().filter(|c| c.contains(&x)).count();
            prop_assert_eq!(hits, usize::from(f.eval(&x)), "{} at {:?}", text, x);
        }
        for c in &cells {
            prop_assert!(f.eval(&c.sample_point()));
        }
    }

    #[test]
    fn dimension_agrees_with_interior(text in formula()) {
        let f = parse_formula_n(&text, 2).unwrap();
        prop_assert_eq!(dimension(&f), interior_dimension(&f));
    }

    #[test]
    fn dnf_and_closure(text in formula()) {
        let f = parse_formula_n(&text, 2).unwrap();
        let dnf = union_formula(2, &normalize_dnf(&f));
        prop_assert!(equivalent(&dnf, &f));
        let cl = closure(&f);
        prop_assert!(equivalent(&closure(&cl), &cl));
        if dimension(&f) == Dim::NegInf {
            prop_assert_eq!(dimension(&cl), Dim::NegInf);
        }
    }
}

fn puiseux(s: &str) -> PuiseuxElement {
    PuiseuxElement::parse(s).unwrap()
}

const ROOTS: &[&str] = &["0", "1", "-1", "t", "2*t", "1 + t", "t^2", "1 + t^2", "t^(1/2)"];

fn poly() -> impl Strategy<Value = FactoredPoly> {
    (1i64..=3, prop::collection::vec((prop::sample::select(ROOTS), 1u32..=2), 0..4)).prop_map(|(c, rs)| {
        FactoredPoly::new(Rat::from_int(c), rs.into_iter().map(|(r, m)| (puiseux(r), m))).unwrap()
    })
}

fn point() -> impl Strategy<Value = PuiseuxElement> {
    (prop::sample::select(ROOTS), -2i64..=2, -2i64..=4, 1i64..=2).prop_map(|(base, c, e, d)| {
        &puiseux(base) + &PuiseuxElement::monomial(Rat::from_int(c), Rat::new(e, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pieces_partition_and_valuations(polys in prop::collection::vec(poly(), 1..3), xs in prop::collection::vec(point(), 8)) {
        let dec = monomial_decompose(&polys);
        for x in &xs {
            let hits: Vec<_> = dec.iter().filter(|(p, _)| p.contains(x)).collect();
            prop_assert_eq!(hits.len(), 1, "{}", x);
            let (piece, vals) = hits[0];
            let rho = piece.radius_of(x);
            for (f, mv) in polys.iter().zip(vals) {
                prop_assert_eq!(mv.eval(&rho), f.valuation_at(x));
            }
        }
    }
}

fn trop_poly() -> impl Strategy<Value = valdim_core::trop::TropPoly> {
    prop::collection::btree_map((0u32..=2, 0u32..=2), (-2i64..=2, 1i64..=2), 2..=5).prop_map(|m| {
        let terms = m.into_iter().map(|((a, b), (p, q))| (vec![a, b], Rat::new(p, q))).collect();
        valdim_core::trop::TropPoly::new(terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hypersurface_matches_duplicate_min(p in trop_poly()) {
        use valdim_core::trop::{point_on_trop, pure_dimension_check, trop_hypersurface};
        let c = trop_hypersurface(&p);
        prop_assert!(pure_dimension_check(&c, 1));
        for x in grid() {
            prop_assert_eq!(c.contains(&x), point_on_trop(&p, &x).unwrap(), "{} at {:?}", p, x);
        }
    }
}
