use proptest::prelude::*;
use sqg_core::io::{decode_field, encode_field, format_record, parse_record};
use sqg_core::iteration::{ChannelNorms, LedgerRecord};
use sqg_core::multiplier::{lambda_s, riesz, Axis};
use sqg_core::norms::{sobolev, x_norm, NormGrid};
use sqg_core::spectral::{multiply, random_field, TorusField};

fn field(seed: u64, band: usize, mean_zero: bool) -> TorusField {
    random_field(seed, band, mean_zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_stay_real_and_band_limited(s1 in any::<u64>(), s2 in any::<u64>(), b1 in 1usize..9, b2 in 1usize..9) {
        let f = field(s1, b1, false);
        let g = field(s2, b2, false);
        let h = multiply(&f, &g);
        prop_assert!(h.hermitian_defect() < 1e-13);
        prop_assert!(h.support_band() <= b1 + b2);
        let back = multiply(&g, &f);
        prop_assert!((&h - &back).max_abs() <= 1e-14 * h.max_abs().max(1.0));
    }

    #[test]
    fn multipliers_preserve_realness(seed in any::<u64>(), band in 1usize..12, s in -2.0f64..2.0) {
        let f = field(seed, band, true);
        prop_assert!(lambda_s(&f, s).unwrap().hermitian_defect() < 1e-13);
        for j in Axis::BOTH {
            prop_assert!(riesz(&f, j).hermitian_defect() < 1e-13);
        }
    }

    #[test]
    fn sobolev_shifts_with_lambda(seed in any::<u64>(), band in 1usize..12, s in -1.5f64..1.5, t in -1.5f64..1.5) {
        let f = field(seed, band, true);
        let lhs = sobolev(&lambda_s(&f, s).unwrap(), t);
        let rhs = sobolev(&f, s + t);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn riesz_squares_sum_to_minus_identity(seed in any::<u64>(), band in 1usize..10) {
        let f = field(seed, band, true);
        let mut acc = riesz(&riesz(&f, Axis::X1), Axis::X1);
        acc.add_scaled(&riesz(&riesz(&f, Axis::X2), Axis::X2), 1.0);
        acc.add_scaled(&f, 1.0);
        prop_assert!(acc.max_abs() <= 1e-14 * f.max_abs());
    }

    #[test]
    fn triangle_inequalities(s1 in any::<u64>(), s2 in any::<u64>(), band in 1usize..8) {
        let f = field(s1, band, true);
        let g = field(s2, band, true);
        let sum = &f + &g;
        let grid = NormGrid::default();
        prop_assert!(x_norm(&sum, grid) <= (x_norm(&f, grid) + x_norm(&g, grid)) * (1.0 + 1e-12));
        for s in [-0.5, 0.0, 1.0] {
            prop_assert!(sobolev(&sum, s) <= (sobolev(&f, s) + sobolev(&g, s)) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn sqf_round_trip(seed in any::<u64>(), band in 0usize..10, mean_zero in any::<bool>()) {
        let f = field(seed, band, mean_zero);
        let bytes = encode_field(&f);
        let g = decode_field(&bytes, std::path::Path::new("mem")).unwrap();
        prop_assert_eq!(encode_field(&g), bytes);
    }

    #[test]
    fn ledger_round_trip(
        n in 0usize..100,
        vals in proptest::collection::vec(0.0f64..1e6, 14),
        tiny in 1e-300f64..1e-10,
    ) {
        let r = LedgerRecord {
            n,
            lambda_n: 2,
            lambda_next: 97,
            r_n: vals[0] + tiny,
            r_next: vals[1] + tiny,
            mu_next: vals[2] + tiny,
            alpha: vals[3] + tiny,
            xnorm: ChannelNorms { qm1: vals[4], qm2: vals[5], qm3: tiny, qt: vals[6], qd: vals[7], q_next: vals[8] },
            ratio_q_over_r: vals[9],
            master_residual: tiny,
            decomp_residual: vals[10],
            holder_besov_f: vals[11],
            partial_sum_reg: vals[12],
            separation_ok: n % 2 == 0,
            alias_tail: vals[13],
        };
        prop_assert_eq!(parse_record(&format_record(&r), 1).unwrap(), r);
    }
}
