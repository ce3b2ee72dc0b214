use std::collections::BTreeMap;

use proptest::prelude::*;
use qsf_core::catalog::*;
use qsf_core::qcore::*;
use qsf_core::qgamma::*;
use qsf_core::QContext;

fn ctx(q: f64) -> QContext {
    QContext::new(q).unwrap()
}

fn q_range() -> std::ops::Range<f64> {
    0.02..0.98
}

fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>()
}

fn value(o: &CheckOutcome, label: &str) -> f64 {
    o.values.iter().find(|v| v.label == label).unwrap_or_else(|| panic!("no {label} in {o:?}")).value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functional_equation(q in q_range(), x in 0.05f64..12.0) {
        let c = ctx(q);
        let lhs = log_gamma_q(&c, x + 1.0).unwrap();
        let rhs = log_gamma_q(&c, x).unwrap().value + q_bracket(&c, x).ln();
        prop_assert!((lhs.value - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()), "{lhs:?} vs {rhs}");
    }

    #[test]
    fn digamma_recurrence(q in q_range(), x in 0.05f64..12.0) {
        let c = ctx(q);
        let step = psi_q(&c, x + 1.0).unwrap().value - psi_q(&c, x).unwrap().value;
        let qx = q.powf(x);
        let expected = -q.ln() * qx / (1.0 - qx);
        prop_assert!((step - expected).abs() <= 1e-10 * (1.0 + expected.abs()), "{step} vs {expected}");
    }

    #[test]
    fn derivative_signs(q in q_range(), x in 0.05f64..15.0, k in 1u32..=6) {
        let d = psi_q_deriv(&ctx(q), x, PsiDerivOrder::new(k).unwrap()).unwrap();
        let positive = k % 2 == 1;
        prop_assert!(if positive { d.value > 0.0 } else { d.value < 0.0 }, "k={k}: {d:?}");
    }

    #[test]
    fn ratio_additive_and_antisymmetric(q in q_range(), s in 0.05f64..8.0, t in 0.05f64..8.0, u in 0.05f64..8.0) {
        let c = ctx(q);
        let st = ln_qpoch_ratio(&c, s, t).unwrap();
        let tu = ln_qpoch_ratio(&c, t, u).unwrap();
        let su = ln_qpoch_ratio(&c, s, u).unwrap();
        prop_assert!((st.value + tu.value - su.value).abs() <= 4.0 * (st.err + tu.err + su.err) + 1e-13);
        let ts = ln_qpoch_ratio(&c, t, s).unwrap();
        prop_assert!((st.value + ts.value).abs() <= 2.0 * (st.err + ts.err) + 1e-14);
        prop_assert_eq!(ln_qpoch_ratio(&c, s, s).unwrap().value, 0.0);
    }

    #[test]
    fn phi10_forms_agree(q in q_range(), a in -0.9f64..0.9, x in -0.9f64..0.9) {
        prop_assume!((a * x).abs() < 0.9);
        let c = ctx(q);
        let s = phi10(&c, a, x, Phi10Form::Series).unwrap();
        let p = phi10(&c, a, x, Phi10Form::Product).unwrap();
        let diff = (s.value - p.value).abs();
        prop_assert!(diff <= s.err + p.err, "{s:?} vs {p:?}");
        if s.err <= 1e-12 {
            prop_assert!(diff <= 1e-9 * s.value.abs().max(1.0), "{s:?} vs {p:?}");
        }
    }

    #[test]
    fn single_point_petrovic_is_flat(q in q_range(), x in 0.05f64..10.0) {
        let g = petrovic_gap(&ctx(q), &[x]).unwrap();
        prop_assert!(g.value.abs() <= g.err + 1e-12, "{g:?}");
    }

    #[test]
    fn ky_fan_equal_points_are_equalities(q in q_range(), x in 0.03f64..0.5, k in 2u32..=6) {
        let c = ctx(q);
        for id in ["KYFAN-A", "KYFAN-B"] {
            let mut p = params(&[("q", q), ("k", k as f64)]);
            for i in 1..=6 {
                p.insert(format!("x{i}"), x);
            }
            let o = run_check(&c, id, &p).unwrap();
            prop_assert!(o.margin.abs() <= o.margin_err + 1e-12, "{id}: {o:?}");
            prop_assert_ne!(o.verdict, Verdict::Fail);
        }
    }

    #[test]
    fn long_finite_ratio_matches_series(q in 0.02f64..0.7, x in 0.06f64..10.0, a in 0.01f64..0.99) {
        let c = ctx(q);
        let finite = run_check(&c, "QPOCH-RATIO", &params(&[("q", q), ("n", 50.0), ("x", x), ("a", a)])).unwrap();
        let series = run_check(&c, "PHI10-BOUNDS", &params(&[("q", q), ("x", x), ("a", a)])).unwrap();
        let (f, s) = (value(&finite, "finite product ratio: ratio"), value(&series, "1phi0: ln 1phi0"));
        prop_assert!((f - s).abs() <= 1e-6, "{f} vs {s}");
    }

    #[test]
    fn convexity_agrees_with_random_triples(
        q in q_range(),
        lo in 0.1f64..4.0,
        w in 0.5f64..6.0,
        t in 0.01f64..0.99,
        lam in 0.05f64..0.95,
    ) {
        let c = ctx(q);
        let hi = lo + w;
        let probe = convexity_probe(&c, FunctionHandle::LogGammaQ, lo, hi, 101, Convexity::Convex).unwrap();
        prop_assert!(probe.certified(), "{probe:?}");
        let (x, y) = (lo + t * w * 0.5, hi - t * w * 0.5);
        let f = |v: f64| log_gamma_q(&c, v).unwrap();
        let mid = f(lam * x + (1.0 - lam) * y);
        let chord = f(x) * lam + f(y) * (1.0 - lam);
        prop_assert!(chord.value - mid.value >= -(chord.err + mid.err), "{chord:?} vs {mid:?}");
    }
}

#[test]
fn registry_lookup() {
    let entries = list_entries();
    assert_eq!(entries.len(), 40);
    for e in entries {
        assert_eq!(find_entry(e.id).unwrap().id, e.id);
        assert!(e.params.iter().all(|p| !p.name.is_empty()));
    }
}

#[test]
fn domain_checks_reject_bad_input() {
    let c = ctx(0.5);
    assert!(run_check(&c, "NOPE", &params(&[("q", 0.5)])).is_err());
    assert!(run_check(&c, "ADD1-A", &params(&[("q", 0.5)])).is_err());
    assert!(run_check(&c, "ADD1-A", &params(&[("q", 0.5), ("x", -1.0)])).is_err());
    assert!(run_check(&c, "ADD1-A", &params(&[("q", 1.5), ("x", 1.0)])).is_err());
    assert!(run_check(&c, "ADD1-A", &params(&[("q", 0.5), ("x", 1.0), ("zz", 1.0)])).is_err());
    assert!(run_check(&c, "SYMM-LEMMA", &params(&[("q", 0.5), ("x", 0.5)])).is_err());
    assert!(run_check(&c, "MEANS-GLA", &params(&[("a", 2.0), ("b", 2.0)])).is_err());
    assert!(run_check(&c, "TELESCOPE", &params(&[("q", 0.5), ("x", 2.0), ("n", 1.5)])).is_err());
}

#[test]
fn log_gamma_convexity_survives_near_one() {
    let c = QContext::new(0.9995).unwrap();
    let p = convexity_probe(&c, FunctionHandle::LogGammaQ, 0.2, 6.0, 101, Convexity::Convex).unwrap();
    assert!(p.certified(), "{p:?}");
}
