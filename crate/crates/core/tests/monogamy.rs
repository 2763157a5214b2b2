mod common;

use common::{first_qubit_rdm, pair_rdm, qubit_gd, qubit_k_spectrum};
use proptest::prelude::*;
use qdiscord::monogamy::{
    cut_discord, make_counterexample, make_gw, make_slocc_w, monogamy_report, normalize,
    pair_discord, slocc_w_pair_discord_closed_form, slocc_w_spectrum, w_pair_discord_closed_form,
};

fn coeffs(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, len)
        .prop_filter("nonzero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-3)
}

fn amplitudes(s: &qdiscord::states::MultiQubitPureState) -> Vec<num_complex::Complex64> {
    s.amplitudes().iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gw_pair_discord_matches_reference(n in 3usize..=5, raw in coeffs(5)) {
        let (c, _) = normalize(&raw[..n]).unwrap();
        let s = make_gw(&c).unwrap();
        let psi = amplitudes(&s);
        for k in 2..=n {
            let reference = qubit_gd(&pair_rdm(&psi, n, 1, k));
            let got = pair_discord(&s, k).unwrap();
            prop_assert!((got - reference).abs() < 1e-10);
            prop_assert!((w_pair_discord_closed_form(c[0], c[k - 1]) - reference).abs() < 1e-10);
            prop_assert!(got <= 2.0 * c[0] * c[0] * c[k - 1] * c[k - 1] + 1e-12);
        }
        prop_assert!(monogamy_report(&s).unwrap().deficit >= -1e-9);
    }

    #[test]
    fn slocc_w_spectrum_matches_reference(n in 3usize..=5, raw in coeffs(6)) {
        let (c, _) = normalize(&raw[..=n]).unwrap();
        let s = make_slocc_w(c[0], &c[1..]).unwrap();
        let psi = amplitudes(&s);
        for k in 2..=n {
            let (c1, ck) = (c[1], c[k]);
            let rho = pair_rdm(&psi, n, 1, k);
            let spec = slocc_w_spectrum(c[0], c1, ck).unwrap();
            let mut closed = spec.eigenvalues.to_vec();
            closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let reference = qubit_k_spectrum(&rho);
            for (a, b) in closed.iter().zip(&reference) {
                prop_assert!((a - b).abs() < 1e-10, "{closed:?} vs {reference:?}");
            }
            let gd = qubit_gd(&rho);
            prop_assert!((pair_discord(&s, k).unwrap() - gd).abs() < 1e-10);
            prop_assert!((slocc_w_pair_discord_closed_form(c[0], c1, ck).unwrap() - gd).abs() < 1e-10);
            prop_assert!(gd <= 2.0 * c1 * c1 * ck * ck + 1e-12);
            prop_assert!(spec.b >= (spec.c - spec.a).powi(2) - 1e-12,
                "b = {}, (c-a)^2 = {}", spec.b, (spec.c - spec.a).powi(2));
        }
        prop_assert!(monogamy_report(&s).unwrap().deficit >= -1e-9);
    }

    #[test]
    fn cut_discord_is_twice_determinant(n in 3usize..=5, raw in coeffs(6)) {
        let (c, _) = normalize(&raw[..=n]).unwrap();
        let s = make_slocc_w(c[0], &c[1..]).unwrap();
        let r = first_qubit_rdm(&amplitudes(&s), n);
        let det = (r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)]).re;
        prop_assert!((cut_discord(&s) - 2.0 * det).abs() < 1e-12);
    }

    #[test]
    fn counterexample_pair_discords(p in 0.0f64..=1.0, n in 3usize..=6) {
        let s = make_counterexample(p, n).unwrap();
        let expected = 0.5 * (p * p).min((1.0 - p) * (1.0 - p));
        let psi = amplitudes(&s);
        for k in 2..=n {
            prop_assert!((qubit_gd(&pair_rdm(&psi, n, 1, k)) - expected).abs() < 1e-10);
            prop_assert!((pair_discord(&s, k).unwrap() - expected).abs() < 1e-10);
        }
        prop_assert!((cut_discord(&s) - p * (1.0 - p)).abs() < 1e-12);
    }
}
