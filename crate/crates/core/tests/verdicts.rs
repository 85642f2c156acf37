use tap_core::catalog::{catalog, lookup};
use tap_core::finite::{enumerate_homs, regular_of_hom, HomSearchOptions, Representation};
use tap_core::group::{connected_sum, Presentation};
use tap_core::laurent::LaurentPoly;
use tap_core::obstructions::{
    fiber_check, ribbon_screen, CertificateReason, FiberOptions, FiberStatus, FiberVerdict, RibbonOptions,
    RibbonReport, RibbonVerdict,
};
use tap_core::{Budget, Error};

fn knot(name: &str) -> Presentation {
    lookup(name).unwrap().presentation()
}

fn up_to(n: usize) -> FiberOptions {
    FiberOptions { max_degree: n, max_rep_dim: 24, ..Default::default() }
}

fn sum(a: &Presentation, b: &Presentation) -> Presentation {
    connected_sum(a, &a.generators()[0], b, &b.generators()[0]).unwrap()
}

fn screen(lower: &Presentation, upper: &Presentation) -> RibbonReport {
    ribbon_screen(lower, upper, &RibbonOptions::default()).unwrap()
}

#[test]
fn fibered_catalog_knots_stay_monic() {
    for name in ["3_1", "4_1", "5_1"] {
        let v = fiber_check(&knot(name), &up_to(3)).unwrap();
        assert_eq!(v.status, FiberStatus::NoObstructionFound, "{name}");
        let reports: Vec<_> = v.tested.iter().flat_map(|d| &d.reports).collect();
        assert!(!reports.is_empty());
        for r in reports {
            assert!(!r.delta1_zero, "{name}");
            assert_eq!(r.monic, Some(true), "{name}: {}", r.delta1);
        }
        assert!(v.notes.iter().any(|n| n.contains("not evidence that the class is fibered")));
    }
}

#[test]
fn nonmonic_knots_certified_at_degree_one() {
    for (name, witness) in [("5_2", [2, -3, 2]), ("6_1", [2, -5, 2])] {
        let v = fiber_check(&knot(name), &up_to(1)).unwrap();
        assert_eq!(v.status, FiberStatus::NonfiberedCertified, "{name}");
        let c = v.certificate.unwrap();
        assert_eq!(c.degree, 1);
        assert_eq!(c.reason, CertificateReason::Delta1Nonmonic);
        assert_eq!(c.report.delta1_z, Some(LaurentPoly::from_ints(0, &witness)));
        assert!(c.reverified_by.contains("pivot"), "{}", c.reverified_by);
    }
}

#[test]
fn raising_the_degree_never_retracts_a_certificate() {
    for name in ["5_2", "6_1"] {
        let p = knot(name);
        let mut first: Option<FiberVerdict> = None;
        for n in 1..=3 {
            let v = fiber_check(&p, &up_to(n)).unwrap();
            assert_eq!(v.status, FiberStatus::NonfiberedCertified);
            if let Some(f) = &first {
                assert_eq!(f.certificate, v.certificate);
            }
            first = Some(v);
        }
    }
}

#[test]
fn vanishing_polynomial_is_certified_with_independent_ranks() {
    // a split two-component unlink: H_1 has free rank, so Delta_1 = 0
    let p = tap_core::io::parse_json(r#"{"strands":2,"word":[]}"#).unwrap();
    let v = fiber_check(&p, &up_to(1)).unwrap();
    assert_eq!(v.status, FiberStatus::NonfiberedCertified);
    let c = v.certificate.unwrap();
    assert_eq!(c.reason, CertificateReason::Delta1Zero);
    assert!(c.reverified_by.contains("free rank"));
}

#[test]
fn zero_budget_reports_exhaustion() {
    let opts = FiberOptions { budget: Budget::with_secs(0.0), ..up_to(3) };
    let v = fiber_check(&knot("3_1"), &opts).unwrap();
    assert_eq!(v.status, FiberStatus::BudgetExhausted);
    assert!(v.certificate.is_none());
}

#[test]
fn catalog_flags_are_never_contradicted() {
    for e in catalog() {
        let v = fiber_check(&e.presentation(), &up_to(2)).unwrap();
        if e.fibered {
            assert_ne!(v.status, FiberStatus::NonfiberedCertified, "{}", e.name);
        } else if !e.alexander.is_monic() {
            assert_eq!(v.status, FiberStatus::NonfiberedCertified, "{}", e.name);
        }
    }
}

#[test]
fn divisibility_screen() {
    let (u, t, f) = (knot("unknot"), knot("3_1"), knot("4_1"));
    let r = screen(&u, &t);
    assert_eq!(r.verdict, RibbonVerdict::Consistent);

    let upper = sum(&sum(&t, &f), &f);
    let r = screen(&t, &upper);
    assert_eq!(r.verdict, RibbonVerdict::Consistent);
    let expected = &(&LaurentPoly::from_ints(0, &[1, -1, 1]) * &LaurentPoly::from_ints(0, &[1, -3, 1]))
        * &LaurentPoly::from_ints(0, &[1, -3, 1]);
    assert_eq!(r.divisibility.upper_delta.canonical(), expected.canonical());

    let r = screen(&f, &t);
    assert_eq!(r.verdict, RibbonVerdict::Obstructed);
    assert!(!r.divisibility.holds);
    assert!(r.question.contains("4_1") || r.question.contains(">="), "{}", r.question);
}

#[test]
fn fibered_transfer_obstructs() {
    let opts = RibbonOptions {
        lower_name: Some("5_2".into()),
        upper_name: Some("3_1".into()),
        upper_fibered: Some(true),
        fiber: Some(up_to(1)),
        conditional_pairs: Vec::new(),
    };
    let r = ribbon_screen(&knot("5_2"), &knot("3_1"), &opts).unwrap();
    assert_eq!(r.verdict, RibbonVerdict::Obstructed);
    let ft = r.fibered_transfer.unwrap();
    assert!(ft.fires);
    assert_eq!(ft.lower_status, Some(FiberStatus::NonfiberedCertified));
}

#[test]
fn screen_is_reflexive_and_absorbs_doubles() {
    let knots: Vec<_> = catalog().into_iter().filter(|e| e.components == 1).collect();
    for a in &knots {
        let pa = a.presentation();
        assert_eq!(screen(&pa, &pa).verdict, RibbonVerdict::Consistent, "{}", a.name);
        for b in &knots {
            let pb = b.presentation();
            // B # B stands in for B # -B-bar: the classical polynomial cannot tell them apart
            let upper = sum(&pa, &sum(&pb, &pb));
            let r = screen(&pa, &upper);
            assert!(r.divisibility.holds, "{} vs {} # 2 {}", a.name, a.name, b.name);
        }
    }
}

#[test]
fn degree_comparison_carries_a_caveat() {
    let r = screen(&knot("3_1"), &knot("5_1"));
    assert!(r.degree_comparison.holds);
    assert!(r.degree_comparison.caveat.contains("informational"));
}

#[test]
fn conditional_pairs_never_decide() {
    let t = knot("3_1");
    let opts = HomSearchOptions { meridional: true, dedupe: true, budget: Budget::unlimited() };
    let h = enumerate_homs(&t, 3, &opts).unwrap().into_iter().max_by_key(|h| h.image_order()).unwrap();
    let pair = (regular_of_hom(&h), Representation::trivial(2));
    let ropts = RibbonOptions { conditional_pairs: vec![pair], ..Default::default() };
    let r = ribbon_screen(&t, &t, &ropts).unwrap();
    assert_eq!(r.verdict, RibbonVerdict::Consistent);
    assert_eq!(r.conditional.len(), 1);
    assert!(r.conditional[0].label.contains("conditional"));
}

#[test]
fn mismatched_classes_are_rejected() {
    let hopf = knot("hopf");
    let t = knot("3_1").with_phi(vec![2, 2]);
    assert!(matches!(ribbon_screen(&hopf, &knot("3_1"), &RibbonOptions::default()), Err(Error::PhiMismatch(_))));
    assert!(matches!(ribbon_screen(&t, &knot("3_1"), &RibbonOptions::default()), Err(Error::PhiMismatch(_))));
}

#[test]
fn verdicts_round_trip_through_json() {
    let v = fiber_check(&knot("5_2"), &up_to(2)).unwrap();
    let back: FiberVerdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
    let r = screen(&knot("4_1"), &knot("3_1"));
    let back: RibbonReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}
