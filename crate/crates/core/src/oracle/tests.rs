use super::*;
use crate::field::{PrimeField, Rationals};
use crate::order::{truncate, Kind};
use proptest::prelude::*;

fn p(z: i64) -> LPoint {
    LPoint::new(0, z)
}

fn a(i: i64, j: i64) -> IndClass {
    IndClass::A(p(i), p(j))
}

fn spec(kind: Kind, lo: i64, hi: i64) -> PosetSpec {
    PosetSpec::numbered(kind, 1, (lo, hi)).unwrap()
}

fn oracle(kind: Kind, lo: i64, hi: i64, margin: u32) -> Oracle<Rationals> {
    Oracle::new(Rationals, &spec(kind, lo, hi), margin).unwrap()
}

#[test]
fn realize_interval_on_small_chain() {
    let s = spec(Kind::TypeA, -5, 5);
    let poset = Arc::new(truncate(&s, p(-1), p(3), 0).unwrap());
    let r = realize_on(&Rationals, &a(0, 2), &poset).unwrap();
    assert_eq!(r.dims(), &[0, 1, 1, 1, 0]);
}

#[test]
fn realize_d_classes() {
    let s = spec(Kind::TypeD, -5, 5);
    let poset = Arc::new(truncate(&s, p(-1), p(1), 0).unwrap());
    let r = realize_on(&Rationals, &IndClass::A1(p(0)), &poset).unwrap();
    assert_eq!(r.dims(), &[1, 0, 1, 1, 0]);
    let poset = Arc::new(truncate(&s, p(-1), p(2), 0).unwrap());
    let b = realize_on(&Rationals, &IndClass::B(p(0), p(1)), &poset).unwrap();
    assert_eq!(b.dims(), &[1, 1, 2, 2, 1, 0]);
    assert_eq!(rep::end_dim(&Rationals, &b).unwrap(), 1);
}

#[test]
fn catalog_counts_match_dynkin_type() {
    let s = spec(Kind::TypeD, 0, 3);
    let poset = truncate(&s, p(0), p(3), 0).unwrap();
    // D_6: 6 * 5 indecomposables.
    assert_eq!(local_catalog(&poset, Kind::TypeD).len(), 30);
    let s = spec(Kind::TypeA, 0, 3);
    let poset = truncate(&s, p(0), p(3), 0).unwrap();
    assert_eq!(local_catalog(&poset, Kind::TypeA).len(), 10);
}

#[test]
fn every_catalog_entry_is_a_brick() {
    for kind in [Kind::TypeA, Kind::TypeD] {
        let o = oracle(kind, -2, 2, 1);
        for c in o.catalog() {
            assert_eq!(rep::end_dim(&o.field, &o.reps[c]).unwrap(), 1, "{c:?}");
        }
    }
}

#[test]
fn hom_and_ext_examples() {
    let o = oracle(Kind::TypeA, -4, 6, 2);
    assert_eq!(o.hom_class(&a(0, 0), &a(0, 0)).unwrap(), 1);
    assert_eq!(o.ext_class(&a(-1, 1), &a(0, 3)).unwrap(), 1);
    assert_eq!(o.hom(&a(-1, 1).at(0), &a(0, 3).at(1)).unwrap(), 1);
    assert_eq!(o.hom(&a(-1, 1).at(0), &a(0, 3).at(2)).unwrap(), 0);
    assert!(matches!(o.hom_class(&a(0, 9), &a(0, 0)), Err(OracleError::SupportExceedsTruncation(_))));
}

#[test]
fn dtr_examples() {
    let o = oracle(Kind::TypeA, -4, 4, 2);
    assert_eq!(o.tau_class(&a(0, 0)).unwrap(), a(1, 1));
    assert_eq!(o.tau_class(&a(0, 1)).unwrap(), a(1, 2));
    let d = oracle(Kind::TypeD, -4, 4, 2);
    // The translate swaps the two peripheral rows.
    assert_eq!(d.tau_class(&IndClass::A1(p(0))).unwrap(), IndClass::A2(p(1)));
    assert_eq!(d.tau_class(&IndClass::A2(p(0))).unwrap(), IndClass::A1(p(1)));
    assert_eq!(d.tau_class(&IndClass::B(p(0), p(2))).unwrap(), IndClass::B(p(1), p(3)));
}

#[test]
fn dtr_is_margin_independent() {
    let o2 = oracle(Kind::TypeD, -3, 3, 2);
    let o3 = oracle(Kind::TypeD, -3, 3, 3);
    for c in o2.catalog().iter().filter(|c| c.in_window(&o2.spec)) {
        assert_eq!(o2.tau_class(c).unwrap(), o3.tau_class(c).unwrap());
    }
}

#[test]
fn decompose_examples() {
    let o = oracle(Kind::TypeA, 1, 3, 0);
    let f = Rationals;
    assert!(o.decompose(&FinQuiverRep::zero(&f, o.poset.clone())).unwrap().is_empty());
    let mut got = o.decompose_sum(&[a(1, 2), a(2, 2)]).unwrap();
    got.sort();
    assert_eq!(got, vec![a(1, 2), a(2, 2)]);

    // dims (1, 2, 1) with full-rank maps; the composite decides the split.
    let build = |second: [i64; 2]| {
        FinQuiverRep::new(
            o.poset.clone(),
            vec![1, 2, 1],
            vec![Matrix::from_i64(&f, 2, 1, &[1, 0]), Matrix::from_i64(&f, 1, 2, &second)],
        )
        .unwrap()
    };
    let mut zero_composite = o.decompose(&build([0, 1])).unwrap();
    zero_composite.sort();
    assert_eq!(zero_composite, vec![a(1, 2), a(2, 3)]);
    let mut generic = o.decompose(&build([1, 1])).unwrap();
    generic.sort();
    assert_eq!(generic, vec![a(1, 3), a(2, 2)]);
}

#[test]
fn cone_examples() {
    let o = oracle(Kind::TypeA, -4, 6, 2);
    assert!(o.cone(&a(0, 0).at(0), &a(0, 0).at(0)).unwrap().is_zero());
    assert_eq!(o.cone(&a(0, 1).at(0), &a(0, 0).at(0)).unwrap(), DObj::single(a(1, 1).at(1)));
    assert_eq!(o.cone(&a(1, 1).at(0), &a(0, 1).at(0)).unwrap(), DObj::single(a(0, 0).at(0)));
    assert_eq!(
        o.cone(&a(-1, 1).at(-1), &a(0, 3).at(0)).unwrap(),
        DObj::new(vec![a(-1, 3).at(0), a(0, 1).at(0)])
    );
    assert_eq!(o.cone(&a(0, 0).at(0), &a(3, 3).at(0)), Err(OracleError::ZeroMap));
}

#[test]
fn cone_refuses_higher_rank() {
    let o = oracle(Kind::TypeD, -4, 4, 2);
    let b = IndClass::B(p(0), p(2));
    assert_eq!(o.hom_class(&b, &b).unwrap(), 1);
    let b2 = IndClass::B(p(-2), p(0));
    assert_eq!(o.hom_class(&b, &b2).unwrap(), 2);
    assert_eq!(o.cone(&b.at(0), &b2.at(0)), Err(OracleError::NotUnique(2)));
}

#[test]
fn canonical_cone_examples() {
    let o = oracle(Kind::TypeA, -4, 4, 2);
    assert_eq!(o.canonical_cone(&a(1, 1).at(0), &a(0, 1).at(0)).unwrap(), DObj::single(a(0, 0).at(-1)));
    assert!(o.canonical_cone(&a(0, 2).at(0), &a(0, 2).at(0)).unwrap().is_zero());
}

#[test]
fn semihereditary_truncations() {
    let f = Rationals;
    for kind in [Kind::TypeA, Kind::TypeD] {
        let o = oracle(kind, -2, 2, 1);
        assert!(verify_semihereditary(&f, &o.poset, 50, 7));
    }
    let g = PrimeField::new(3).unwrap();
    let o = oracle(Kind::TypeD, -1, 1, 1);
    assert!(verify_semihereditary(&g, &o.poset, 30, 1));
}

#[test]
fn ar_certificates_small() {
    let o = oracle(Kind::TypeD, -3, 3, 2);
    for c in [a(0, 0), a(-1, 1), IndClass::A1(p(0)), IndClass::B(p(0), p(1)), IndClass::B(p(-1), p(2))] {
        let cert = o.ar_certificate(&c, 10, 3).unwrap();
        assert!(cert.ok(), "{cert:?}");
    }
    let cert = o.ar_certificate(&a(0, 0), 10, 3).unwrap();
    assert_eq!(cert.tau, vec![a(1, 1)]);
    assert_eq!(cert.middle, vec![a(0, 1)]);
    let cert = o.ar_certificate(&IndClass::A1(p(0)), 10, 3).unwrap();
    assert_eq!(cert.middle, vec![IndClass::B(p(0), p(1))]);
}

#[test]
fn field_choice_does_not_change_small_table() {
    let s = spec(Kind::TypeD, -2, 2);
    let q = Oracle::new(Rationals, &s, 2).unwrap();
    let g = Oracle::new(PrimeField::new(2).unwrap(), &s, 2).unwrap();
    let cls: Vec<IndClass> = q.catalog().iter().filter(|c| c.in_window(&s)).copied().collect();
    for x in &cls {
        for y in &cls {
            assert_eq!(q.hom_class(x, y).unwrap(), g.hom_class(x, y).unwrap());
            assert_eq!(q.ext_class(x, y).unwrap(), g.ext_class(x, y).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn krull_schmidt_round_trip(picks in prop::collection::vec(0usize..1000, 0..4)) {
        let o = oracle(Kind::TypeD, -1, 2, 1);
        let cat = o.catalog();
        let mut classes: Vec<IndClass> = picks.iter().map(|k| cat[k % cat.len()]).collect();
        classes.retain(|c| o.covers(c));
        let mut got = o.decompose_sum(&classes).unwrap();
        got.sort();
        classes.sort();
        prop_assert_eq!(got, classes);
    }
}

#[test]
fn presented_hom_matches_intertwiners() {
    let s = PosetSpec::numbered(Kind::TypeD, 2, (-1, 2)).unwrap();
    let o = Oracle::new(Rationals, &s, 2).unwrap();
    let classes: Vec<IndClass> = o.catalog.iter().copied().collect();
    for x in classes.iter().step_by(3) {
        let pres = presentation(&Rationals, &o.reps[x]);
        for y in &classes {
            let want = rep::hom_dim(&Rationals, &o.reps[x], &o.reps[y]).unwrap();
            assert_eq!(hom_from_presented(&Rationals, &pres, &o.reps[y]), want, "{x:?} {y:?}");
        }
    }
}
