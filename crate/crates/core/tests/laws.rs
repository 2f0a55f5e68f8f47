use proptest::prelude::*;

use lodi_core::literal::{format_dobj, format_obj, parse_dobj, parse_obj};
use lodi_core::model::{self, HomRules, Model};
use lodi_core::objects::{DObj, IndClass, IndObj};
use lodi_core::order::{Kind, LPoint, PosetSpec};
use lodi_core::probing;
use lodi_core::tilting::{self, TiltShape};

fn spec(kind: Kind) -> PosetSpec {
    PosetSpec::numbered(kind, 2, (-6, 6)).unwrap()
}

fn class(kind: Kind) -> impl Strategy<Value = IndClass> {
    let pt = (0usize..2, -5i64..5).prop_map(|(t, z)| LPoint::new(t, z));
    let d = kind == Kind::TypeD;
    (0u8..4, pt.clone(), pt).prop_filter_map("legal class", move |(f, p, q)| {
        let (i, j) = if p <= q { (p, q) } else { (q, p) };
        match f {
            0 => Some(IndClass::A(i, j)),
            1 if d => Some(IndClass::A1(j)),
            2 if d => Some(IndClass::A2(j)),
            3 if d && i < j => Some(IndClass::B(i, j)),
            _ => None,
        }
    })
}

fn obj(kind: Kind) -> impl Strategy<Value = IndObj> {
    (class(kind), -2i64..=2).prop_map(|(c, s)| c.at(s))
}

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::TypeA), Just(Kind::TypeD)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tau_is_invertible_and_serre_dual((_k, x, y) in kind().prop_flat_map(|k| (Just(k), obj(k), obj(k)))) {
        prop_assert_eq!(model::tau_inv(&model::tau(&x)), x);
        prop_assert_eq!(model::tau(&model::tau_inv(&x)), x);
        let h = |a: &IndObj, b: &IndObj| model::hom_raw(a, b, HomRules::Standard);
        prop_assert_eq!(h(&x, &y), h(&y, &model::serre(&x)));
    }

    #[test]
    fn mesh_arrows_drop_height((_k, x) in kind().prop_flat_map(|k| (Just(k), class(k)))) {
        for s in model::successors(&x) {
            prop_assert_eq!(model::height(&s), model::height(&x) - 1);
            prop_assert!(model::ar_middle(&s).contains(&x));
            prop_assert_eq!(model::hom_class(&x, &s), 1);
        }
    }

    #[test]
    fn hom_vanishes_outside_degrees_zero_and_one((_k, x, y, z) in kind().prop_flat_map(|k| (Just(k), obj(k), obj(k), -4i64..=4))) {
        let d = model::hom_raw(&x, &y.shifted(z), HomRules::Standard);
        let gap = y.shift + z - x.shift;
        if gap != 0 && gap != 1 {
            prop_assert_eq!(d, 0);
        }
        prop_assert!(d <= 2);
    }

    #[test]
    fn literals_round_trip((k, xs) in kind().prop_flat_map(|k| (Just(k), prop::collection::vec(obj(k), 0..4)))) {
        let s = spec(k);
        for x in &xs {
            prop_assert_eq!(parse_obj(&s, &format_obj(&s, x)).unwrap(), *x);
        }
        let d = DObj::new(xs);
        prop_assert_eq!(parse_dobj(&s, &format_dobj(&s, &d)).unwrap(), d);
    }

    #[test]
    fn probes_identify_their_object((k, c) in kind().prop_flat_map(|k| (Just(k), class(k)))) {
        let m = Model::new(spec(k), (-2, 2));
        prop_assume!(c.in_window(m.spec()));
        let x = c.at(0);
        let probes = probing::phi_o(&m, &x).unwrap();
        prop_assert_eq!(probes.len(), if x.is_d_peripheral() { 1 } else { 2 });
        let fiber = probing::identify(&m, &probes);
        prop_assert!(fiber.contains(&x));
        prop_assert_eq!(fiber.len(), if x.is_d_peripheral() { 2 } else { 1 });
    }
}

#[test]
fn every_quasi_simple_gives_a_tilting_set() {
    for k in [Kind::TypeA, Kind::TypeD] {
        let m = Model::new(PosetSpec::numbered(k, 2, (-3, 4)).unwrap(), (-2, 2));
        let mut built = 0;
        for s in m.quasi_simples().into_iter().filter(|s| s.shift == 0) {
            let Ok(t) = tilting::tilting_set(&m, &s) else { continue };
            built += 1;
            let want = if k == Kind::TypeA { TiltShape::AShape } else { TiltShape::DShape };
            assert_eq!(t.shape, want);
            assert!(m.is_partial_tilting(&t.elements));
            assert!(tilting::missing_predecessors(&m, &t).is_empty());
        }
        assert!(built >= 4, "{k:?}: only {built} tilting sets");
    }
}

#[test]
fn sectional_path_examples() {
    let m = Model::new(PosetSpec::numbered(Kind::TypeA, 1, (-4, 6)).unwrap(), (0, 0));
    let a = |i, j| IndClass::A(LPoint::new(0, i), LPoint::new(0, j)).at(0);
    let p = m.sectional_path(&a(2, 2), &a(0, 2)).unwrap().unwrap();
    assert_eq!(p, vec![a(2, 2), a(1, 2), a(0, 2)]);
    assert_eq!(m.sectional_path(&a(0, 0), &a(1, 1)).unwrap(), None);
}
