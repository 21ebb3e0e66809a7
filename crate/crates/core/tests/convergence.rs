mod common;

use bicomplex::series::analyze_nonnegative;
use bicomplex::{
    absolute_convergence_check, analyze_complex_series, analyze_series, eval_power_series, evaluate_product, exp,
    log_bound_check, log_sum_equivalence, partial_products, partial_sums, AnalysisConfig, Bicomplex, Complex,
    CriterionVerdict, Error, ProductReport, ProductVerdict, SeriesReport, Verdict,
};
use bicomplex_oracle::{limits, one_plus_scaled, partial_product, partial_sum, Dd, DdBicomplex};
use common::*;
use rand::Rng;

const C: [f64; 4] = [0.3, 0.0, 0.4, 0.0];

fn cst() -> Bicomplex {
    Bicomplex::from_four_reals(C[0], C[1], C[2], C[3])
}

fn cfg() -> AnalysisConfig {
    AnalysisConfig::default()
}

fn one_plus(f: impl Fn(f64) -> f64) -> impl Iterator<Item = Bicomplex> {
    (1u64..).map(move |n| Bicomplex::ONE + cst().scale(f(n as f64)))
}

fn to_bc(x: [f64; 4]) -> Bicomplex {
    Bicomplex::from_four_reals(x[0], x[1], x[2], x[3])
}

fn series_invariants(r: &SeriesReport, tol: f64) {
    if r.verdict == Verdict::Converged {
        assert!(r.tail_delta <= tol, "{r:?}");
    }
    if r.absolute {
        assert_eq!(r.verdict, Verdict::Converged, "{r:?}");
    }
}

fn product_invariants(r: &ProductReport) {
    match r.verdict {
        ProductVerdict::ConvergedNonsingular => assert!(!r.limit_estimate.is_singular(), "{r:?}"),
        ProductVerdict::SingularTerm => assert!(r.singular_index.is_some(), "{r:?}"),
        _ => {}
    }
    if r.absolute {
        assert_eq!(r.verdict, ProductVerdict::ConvergedNonsingular, "{r:?}");
    }
}

/// Families of bicomplex series terms c_n, n >= 1.
type Family = (&'static str, Box<dyn Fn(u64) -> Bicomplex>);

fn series_zoo() -> Vec<Family> {
    let z = |n: u64| n as f64;
    vec![
        ("inverse squares", Box::new(move |n| (Bicomplex::ONE + Bicomplex::I2).scale(1.0 / (z(n) * z(n))))),
        ("geometric", Box::new(move |n| Bicomplex::from_four_reals(0.5, -1.0, 0.25, 2.0).scale(0.6f64.powi(n as i32)))),
        ("split geometric", Box::new(move |n| pair(c(0.5, 0.5).powi(n as i32), c(-0.2, 0.7).powi(n as i32)))),
        ("alternating", Box::new(move |n| Bicomplex::from_real(if n % 2 == 0 { 1.0 } else { -1.0 }))),
        ("harmonic", Box::new(move |n| Bicomplex::J.scale(1.0 / z(n)))),
        ("one divergent component", Box::new(move |n| pair(c(1.0 / (z(n) * z(n)), 0.0), c(0.0, 1.0)))),
        ("factorial", Box::new(move |n| Bicomplex::from_four_reals(1.0, 2.0, -1.0, 0.5).scale(1.0 / (1..=n).map(|k| k as f64).product::<f64>()))),
        ("exploding", Box::new(move |n| Bicomplex::E2.scale(1.5f64.powi(n as i32)))),
    ]
}

#[test]
fn inverse_square_series_matches_the_oracle() {
    let terms = (1u64..).map(|n| (Bicomplex::ONE + Bicomplex::I2).scale(1.0 / (n as f64 * n as f64)));
    let r = analyze_series(terms, cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Converged);
    assert!(r.absolute);
    let exact = partial_sum(r.terms_used, |n| {
        let t = Dd::ONE / Dd::from_f64(n as f64).powi(2);
        DdBicomplex::from_four(t, 0.0, t, 0.0)
    });
    assert!(r.limit_estimate.approx_eq(to_bc(exact.to_four()), 1e-12), "{r:?}");
}

#[test]
fn geometric_partial_sums_match_the_oracle() {
    let terms = (0..).map(|k| Bicomplex::E1.scale(0.5f64.powi(k)));
    let sums = partial_sums(terms, 60).unwrap();
    let exact = partial_sum(60, |n| {
        let t = Dd::ONE / Dd::from_f64(2.0).powi(n as u32 - 1);
        DdBicomplex::from_four(t * Dd::from_f64(0.5), 0.0, 0.0, t * Dd::from_f64(0.5))
    });
    assert!(sums[59].approx_eq(to_bc(exact.to_four()), 1e-15));
    assert!(sums[59].approx_eq(Bicomplex::E1.scale(2.0), 1e-15));
}

#[test]
fn series_verdicts_are_componentwise() {
    for (name, f) in series_zoo() {
        let r = analyze_series((1u64..).map(&f), cfg()).unwrap();
        series_invariants(&r, cfg().tol);
        let budget = AnalysisConfig { max_terms: r.terms_used.max(8), ..cfg() };
        let parts: Vec<Verdict> = [0, 1]
            .iter()
            .map(|&k| {
                let comp = (1u64..).map(|n| {
                    let p = f(n).to_idempotent();
                    if k == 0 { p.p1 } else { p.p2 }
                });
                analyze_complex_series(comp, budget).unwrap().verdict
            })
            .collect();
        assert_eq!(r.component_verdicts.to_vec(), parts, "{name}");
        assert_eq!(r.verdict, Verdict::all(parts), "{name}");
    }
}

#[test]
fn absolute_verdict_matches_componentwise_absolute_verdicts() {
    for (name, f) in series_zoo() {
        let r = analyze_series((1u64..).map(&f), cfg()).unwrap();
        let budget = AnalysisConfig { max_terms: 1_000_000, ..cfg() };
        let parts: Vec<Verdict> = [0, 1]
            .iter()
            .map(|&k| {
                let mags = (1u64..).map(|n| {
                    let p = f(n).to_idempotent();
                    if k == 0 { p.p1.norm() } else { p.p2.norm() }
                });
                analyze_nonnegative(mags, budget).unwrap().verdict
            })
            .collect();
        let both = Verdict::all(parts.iter().copied()) == Verdict::Converged;
        assert_eq!(r.absolute, both, "{name}: {r:?} vs {parts:?}");
    }
}

#[test]
fn scaling_a_series_scales_its_limit() {
    for (name, f) in series_zoo().into_iter().filter(|(n, _)| ["geometric", "split geometric", "factorial"].contains(n)) {
        let base = analyze_series((1u64..).map(&f), cfg()).unwrap();
        for a in [3.0, -0.5, 1e-3] {
            let scaled = analyze_series((1u64..).map(|n| f(n).scale(a)), cfg()).unwrap();
            assert_eq!(scaled.verdict, base.verdict, "{name} x {a}");
            let diff = (scaled.limit_estimate - base.limit_estimate.scale(a)).euclid();
            assert!(diff <= 10.0 * cfg().tol * a.abs().max(1.0), "{name} x {a}: {diff:e}");
        }
    }
}

#[test]
fn power_series_examples() {
    let w = pair(c(0.3, -0.4), c(-0.6, 0.1));
    let r = eval_power_series(std::iter::repeat(Bicomplex::ONE), w, cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Converged);
    let one = Complex::new(1.0, 0.0);
    let p = w.to_idempotent();
    assert!(r.limit_estimate.approx_eq(pair(one / (one - p.p1), one / (one - p.p2)), 1e-9));

    let r = eval_power_series(std::iter::repeat(Bicomplex::ONE), Bicomplex::E1 + Bicomplex::E2.scale(2.0), cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Diverged);
    assert_eq!(r.component_verdicts[1], Verdict::Diverged);

    let mut rng = rng(3);
    for _ in 0..50 {
        let w = cube(&mut rng, 1.5);
        let coeffs = (0u32..).scan(1.0f64, |f, n| {
            if n > 0 {
                *f /= n as f64;
            }
            Some(Bicomplex::from_real(*f))
        });
        let r = eval_power_series(coeffs, w, cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Converged);
        assert!(r.limit_estimate.approx_eq(exp(w).unwrap(), 1e-10), "{w:?}");
    }
}

#[test]
fn partial_product_examples() {
    assert!(partial_products(std::iter::repeat(Bicomplex::ONE), 10).unwrap().iter().all(|p| *p == Bicomplex::ONE));
    let ps = partial_products([Bicomplex::I2, Bicomplex::I2], 2).unwrap();
    assert_eq!(ps, vec![Bicomplex::I2, -Bicomplex::ONE]);
    let ps = partial_products((1..).map(|n| Bicomplex::from_real((n as f64 + 1.0) / n as f64)), 5).unwrap();
    let exact = partial_product(5, |n| DdBicomplex::from_four(Dd::from_f64(n as f64 + 1.0) / Dd::from_f64(n as f64), 0.0, 0.0, 0.0));
    assert!(ps[4].approx_eq(to_bc(exact.to_four()), 1e-15));
    assert!(ps[4].approx_eq(Bicomplex::from_real(6.0), 1e-15));
}

#[test]
fn inverse_square_product_matches_both_oracles() {
    let r = evaluate_product(one_plus(|n| 1.0 / (n * n)), cfg()).unwrap();
    product_invariants(&r);
    assert_eq!(r.verdict, ProductVerdict::ConvergedNonsingular);
    assert!(r.necessary_condition_ok && r.absolute && r.criteria_agreement);
    // brute force at the same N
    let brute = partial_product(r.terms_used, |n| one_plus_scaled(C, Dd::ONE / Dd::from_f64(n as f64).powi(2)));
    assert!(r.limit_estimate.approx_eq(to_bc(brute.to_four()), 1e-12), "{r:?}");
    // closed form for the infinite product
    let x = r.extrapolation.unwrap();
    assert!(x.limit.approx_eq(to_bc(limits::INV_SQUARE), 1e-11), "{x:?}");
}

#[test]
fn fast_products_match_closed_forms() {
    let r = evaluate_product(one_plus(|n| 0.5f64.powf(n)), cfg()).unwrap();
    assert_eq!(r.verdict, ProductVerdict::ConvergedNonsingular);
    // stops with a remaining tail of about tol / 2^window
    assert!(r.limit_estimate.approx_eq(to_bc(limits::GEOMETRIC_HALF), 1e-11));
    let r = evaluate_product(one_plus(|n| 1.0 / (n * n * n)), cfg()).unwrap();
    assert_eq!(r.verdict, ProductVerdict::ConvergedNonsingular);
    // the window settles near n = 3300, leaving a tail of about 1/(4 n^2)
    assert!(r.limit_estimate.approx_eq(to_bc(limits::INV_CUBE), 1e-7));
    assert!(!r.limit_estimate.approx_eq(to_bc(limits::INV_CUBE), 1e-9));
    assert!(r.extrapolation.unwrap().limit.approx_eq(to_bc(limits::INV_CUBE), 1e-12));
}

fn product_zoo() -> Vec<Family> {
    let z = |n: u64| n as f64;
    let k = cst();
    vec![
        ("1 + c/n^2", Box::new(move |n| Bicomplex::ONE + k.scale(1.0 / (z(n) * z(n))))),
        ("1 + c/n^3", Box::new(move |n| Bicomplex::ONE + k.scale(z(n).powi(-3)))),
        ("1 + c/2^n", Box::new(move |n| Bicomplex::ONE + k.scale(0.5f64.powi(n as i32)))),
        ("1 + c/n", Box::new(move |n| Bicomplex::ONE + k.scale(1.0 / z(n)))),
        ("1 + c/sqrt(n)", Box::new(move |n| Bicomplex::ONE + k.scale(1.0 / z(n).sqrt()))),
        ("1 + 1/n^2", Box::new(move |n| Bicomplex::from_real(1.0 + 1.0 / (z(n) * z(n))))),
        ("1 + i1/n", Box::new(move |n| Bicomplex::ONE + Bicomplex::I1.scale(1.0 / z(n)))),
        ("1", Box::new(|_| Bicomplex::ONE)),
        ("exp(i2/2^n)", Box::new(move |n| exp(Bicomplex::I2.scale(0.5f64.powi(n as i32))).unwrap())),
        ("1 + c(-1)^n/n^1.5", Box::new(move |n| Bicomplex::ONE + k.scale(if n % 2 == 0 { 1.0 } else { -1.0 } / z(n).powf(1.5)))),
        ("1 + j/n^2", Box::new(move |n| Bicomplex::ONE + Bicomplex::J.scale(0.9 / (z(n) * z(n))))),
    ]
}

#[test]
fn converged_products_satisfy_the_necessary_condition() {
    for (name, f) in product_zoo() {
        let r = evaluate_product((1u64..).map(&f), cfg()).unwrap();
        product_invariants(&r);
        if r.verdict == ProductVerdict::ConvergedNonsingular {
            let last: Vec<f64> = (r.terms_used - 7..=r.terms_used).map(|n| (f(n) - Bicomplex::ONE).euclid()).collect();
            assert!(last.iter().all(|&d| d < 10.0 * cfg().tol), "{name}: {last:?}");
        }
    }
}

#[test]
fn absolute_convergence_criteria_agree_on_the_zoo() {
    for (name, f) in product_zoo() {
        let a = absolute_convergence_check((1u64..).map(&f), cfg()).unwrap();
        assert_eq!(a.hypothesis_violated_at, None, "{name}");
        assert!(a.agree, "{name}: {a:?}");
    }
    let expect = |name: &str, v: CriterionVerdict| {
        let (_, f) = product_zoo().into_iter().find(|(n, _)| *n == name).unwrap();
        let a = absolute_convergence_check((1u64..).map(f), cfg()).unwrap();
        assert_eq!((a.via_log_norms, a.via_deviation_norms), (v, v), "{name}");
    };
    expect("1 + 1/n^2", CriterionVerdict::Converged);
    expect("1 + i1/n", CriterionVerdict::Diverged);
    expect("1", CriterionVerdict::Converged);
}

#[test]
fn exp_of_log_sum_tracks_the_product() {
    for (name, f) in product_zoo() {
        let e = log_sum_equivalence((1u64..).map(&f), 1000).unwrap();
        assert_eq!(e.terms_compared, 1000, "{name}");
        assert!(e.max_discrepancy < 1e-10, "{name}: {e:?}");
    }
    let e = log_sum_equivalence(std::iter::repeat(Bicomplex::ONE), 100).unwrap();
    assert_eq!((e.max_discrepancy, e.log_sum, e.product_limit), (0.0, Bicomplex::ZERO, Bicomplex::ONE));
    let e = log_sum_equivalence((1..).map(|n| exp(Bicomplex::I2.scale(0.5f64.powi(n))).unwrap()), 60).unwrap();
    assert!(e.log_sum.approx_eq(Bicomplex::I2, 1e-15));
    assert!(e.product_limit.approx_eq(exp(Bicomplex::I2).unwrap(), 1e-15));

    let mut rng = rng(23);
    let terms: Vec<Bicomplex> = (1..=1000).map(|n| Bicomplex::ONE + cube(&mut rng, 1.0).scale(0.9f64.powi(n))).collect();
    assert!(terms.iter().all(|w| !w.is_singular()));
    let e = log_sum_equivalence(terms, 1000).unwrap();
    assert!(e.max_discrepancy < 1e-10, "{e:?}");
}

#[test]
fn pathological_products() {
    let r = evaluate_product(std::iter::repeat(Bicomplex::from_real(0.9)), cfg()).unwrap();
    assert_eq!(r.verdict, ProductVerdict::DivergedToZero);
    assert!(!r.necessary_condition_ok);
    assert!(r.limit_estimate.euclid() < 1e-30);

    let r = evaluate_product(std::iter::repeat(-Bicomplex::ONE), cfg()).unwrap();
    assert_eq!(r.verdict, ProductVerdict::Diverged);

    // ||w_n|| = 1 for every factor, and the product still diverges
    let r = evaluate_product(std::iter::repeat(Bicomplex::I2), cfg()).unwrap();
    assert_eq!(r.verdict, ProductVerdict::Diverged);

    let terms = (1u64..).map(|n| if n == 57 { Bicomplex::E1 } else { Bicomplex::ONE + cst().scale(1.0 / (n * n) as f64) });
    let r = evaluate_product(terms.clone(), cfg()).unwrap();
    product_invariants(&r);
    assert_eq!((r.verdict, r.singular_index), (ProductVerdict::SingularTerm, Some(57)));
    assert_eq!(log_sum_equivalence(terms.clone(), 100), Err(Error::SingularTerm { index: 57 }));
    assert_eq!(absolute_convergence_check(terms, cfg()), Err(Error::SingularTerm { index: 57 }));
}

#[test]
fn one_component_collapsing_is_divergence_to_zero() {
    // w_n = 0.5 e1 + e2: nonsingular factors, product tends to the null cone
    let w = Bicomplex::E1.scale(0.5) + Bicomplex::E2;
    let r = evaluate_product(std::iter::repeat(w), cfg()).unwrap();
    assert_eq!(r.verdict, ProductVerdict::DivergedToZero);
    assert!(r.limit_estimate.is_singular());
}

#[test]
fn log_bound_examples() {
    let r = log_bound_check(Bicomplex::from_real(0.4)).unwrap();
    assert!(r.lower_ok && r.upper_ok);
    assert!((r.ratio - 1.4f64.ln() / 0.4).abs() < 1e-15);
    assert!((r.ratio - 0.841).abs() < 1e-3);
    let r = log_bound_check(Bicomplex::I2.scale(0.49)).unwrap();
    assert!(r.lower_ok && r.upper_ok && (0.5..=1.5).contains(&r.ratio));
    let r = log_bound_check(Bicomplex::ZERO).unwrap();
    assert!(r.lower_ok && r.upper_ok);
}

#[test]
fn log_bound_fails_near_the_negative_idempotent_axis() {
    // ||w|| < 1/2 while one idempotent component sits at -0.7
    let w = Bicomplex::E1.scale(-0.7);
    assert!(w.euclid() < 0.5);
    let r = log_bound_check(w).unwrap();
    assert!(!r.upper_ok, "{r:?}");
    // inside both component discs of radius 1/2 the bound holds
    let mut rng = rng(29);
    for _ in 0..10_000 {
        let p1 = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let p2 = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        if p1.norm() >= 0.5 || p2.norm() >= 0.5 {
            continue;
        }
        assert_eq!(bicomplex::componentwise_log_bound(pair(p1, p2)).unwrap(), [true, true]);
    }
}
