use covercert::arith::{int, rat, resultant_sylvester, resultant_y, BPoly, MPoly, Rat, UPoly};
use covercert::cover::{analyze, PlaneModel};
use covercert::heights::{bound_det, bound_product, height_rational_vector};
use covercert::series::Series;
use covercert::vset::{audit, build_v, build_w, expected_equation_count, verify_membership};
use covercert::heights::LogValue;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-7i64..=7, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn upoly(max_deg: usize) -> impl Strategy<Value = UPoly<Rat>> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(UPoly::new)
}

fn bpoly() -> impl Strategy<Value = BPoly<Rat>> {
    prop::collection::vec(upoly(2), 1..=4).prop_map(BPoly::new)
}

fn mpoly() -> impl Strategy<Value = MPoly<Rat>> {
    prop::collection::vec((small_rat(), 0u32..3, 0u32..3), 1..4).prop_map(|ts| {
        ts.into_iter().fold(MPoly::zero(), |acc, (c, a, b)| {
            let mono: Vec<(u32, u32)> = [(0, a), (1, b)].into_iter().filter(|&(_, e)| e > 0).collect();
            &acc + &MPoly::monomial(c, mono)
        })
    })
}

fn series() -> impl Strategy<Value = Series<Rat>> {
    (-2i64..=2, prop::collection::vec(small_rat(), 1..6), 0i64..6)
        .prop_map(|(off, cs, extra)| Series::new(off, cs, Some(off + 6 + extra)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subresultant_matches_sylvester(p in bpoly(), q in bpoly()) {
        prop_assert_eq!(resultant_y(&p, &q), resultant_sylvester(&p, &q));
    }

    #[test]
    fn series_product_is_commutative_and_tracks_precision(a in series(), b in series()) {
        let ab = &a * &b;
        prop_assert_eq!(&ab, &(&b * &a));
        if let (Some(pa), Some(pb), Ok(Some(va)), Ok(Some(vb))) = (a.prec(), b.prec(), a.ord(), b.ord()) {
            prop_assert_eq!(ab.prec(), Some((pa + vb).min(pb + va)));
        }
    }

    #[test]
    fn series_inverse(a in series()) {
        prop_assume!(matches!(a.ord(), Ok(Some(_))));
        let inv = a.inverse(5).unwrap();
        let one = &a * &inv;
        let p = one.prec().unwrap();
        prop_assert!(p >= 5);
        prop_assert_eq!(one.coeffs_range(0, p - 1).unwrap()[0].clone(), int(1));
        prop_assert!(one.coeffs_range(1, p - 1).unwrap().iter().all(|c| *c == int(0)));
    }

    #[test]
    fn product_bound(fs in prop::collection::vec(mpoly(), 2..4)) {
        prop_assume!(fs.iter().all(|f| !f.is_zero()));
        prop_assert_eq!(bound_product(&fs).unwrap().holds(), Some(true));
    }

    #[test]
    fn det_bound(entries in prop::collection::vec(mpoly(), 4)) {
        let m = vec![entries[..2].to_vec(), entries[2..].to_vec()];
        if let Ok(c) = bound_det(&m) {
            prop_assert_eq!(c.holds(), Some(true));
        }
    }

    #[test]
    fn vector_height_ignores_sign_and_order(v in prop::collection::vec(small_rat(), 1..6)) {
        let h = height_rational_vector(&v);
        let mut w: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
        w.reverse();
        prop_assert_eq!(h.clone(), height_rational_vector(&w));
        prop_assert!(h.compare(&LogValue::zero()).unwrap().is_ge());
    }

    /// `(Y - X^2 - aX) prod (Y - c_j)` with `c_j = r_j^2 + a r_j`: every
    /// discriminant root is rational and split, so the model's point must
    /// satisfy `V` and avoid `W`.
    #[test]
    fn split_models_lie_on_v(a in -3i64..=3, rs in prop::collection::btree_set(-3i64..=3, 1..3), declare in any::<bool>()) {
        let cs: Vec<Rat> = rs.iter().map(|&r| int(r * r + a * r)).collect();
        let mut uniq = cs.clone();
        uniq.sort();
        uniq.dedup();
        prop_assume!(uniq.len() == cs.len());
        let pole = &BPoly::y() - &BPoly::from_x(UPoly::new(vec![int(0), int(a), int(1)]));
        let f = cs.iter().fold(pole, |acc, c| &acc * &(&BPoly::y() - &BPoly::constant(c.clone())));
        let model = PlaneModel::new(f, None).unwrap();
        let declared: Vec<Rat> = if declare { vec![int(*rs.iter().next().unwrap())] } else { vec![] };
        let report = analyze(&model, &declared).unwrap();
        let v = build_v(&report);
        let w = build_w(&report);
        prop_assert_eq!(v.total_count(), expected_equation_count(&report));
        let m = verify_membership(&v, &w, &report.phi()).unwrap();
        prop_assert!(m.passed(), "{:?}", m);
        let au = audit(&v, &LogValue::log_int(10)).unwrap();
        prop_assert!(au.passed());
        prop_assert!(report.audit.all_hold());
    }
}
