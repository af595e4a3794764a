use artin_kernels::algebra::{cyclotomic, factor_cyclotomic, smith_normal_form, ExactPoly, PolyMatrix};
use artin_kernels::complex::{boundary_matrix, build_flag_complex};
use artin_kernels::direct::{decompose_all, DirectOptions};
use artin_kernels::formulas::{solve_exponents, ExponentSolution, TorsionProfile};
use artin_kernels::fuzz::random_case;
use artin_kernels::graph::{Character, SimplicialGraph};
use artin_kernels::io::{parse_dot, parse_json, to_dot, to_json_input};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn case(seed: u64, max_vertices: usize) -> (SimplicialGraph, Character) {
    random_case(&mut ChaCha8Rng::seed_from_u64(seed), max_vertices, 12)
}

fn small_poly() -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(-3i64..=3, 0..4).prop_map(|c| ExactPoly::from_i64s(&c))
}

fn poly_matrix(rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(small_poly(), cols), rows)
        .prop_map(move |data| PolyMatrix::from_rows(data, cols))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let (g, _) = case(seed, 7);
        let f = build_flag_complex(&g, None);
        for k in 1..=f.dim() {
            prop_assert!(boundary_matrix(&f, k).mul(&boundary_matrix(&f, k + 1)).is_zero());
        }
    }

    #[test]
    fn decomposition_ignores_vertex_order(seed in any::<u64>(), shuffle in any::<u64>()) {
        let (g, chi) = case(seed, 6);
        let mut order: Vec<usize> = (0..g.vertex_count()).collect();
        rand::seq::SliceRandom::shuffle(&mut order[..], &mut ChaCha8Rng::seed_from_u64(shuffle));
        let f = build_flag_complex(&g, None);
        let f2 = build_flag_complex(&g.reordered(&order).unwrap(), None);
        let chi2 = chi.reordered(&order).unwrap();
        let a = decompose_all(&f, &chi, None, DirectOptions::default()).unwrap();
        let b = decompose_all(&f2, &chi2, None, DirectOptions::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn smith_form_ignores_permutations(m in poly_matrix(3, 4), rows in Just(vec![2, 0, 1]).prop_shuffle(), cols in Just(vec![0, 1, 2, 3]).prop_shuffle()) {
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m.permute_rows(&rows).permute_cols(&cols));
        prop_assert_eq!(&a.invariant_factors, &b.invariant_factors);
        for pair in a.invariant_factors.windows(2) {
            prop_assert!(pair[0].divides(&pair[1]));
        }
    }

    #[test]
    fn cyclotomic_products_factor_back(mults in prop::collection::vec(0usize..3, 6)) {
        let orders = [1u64, 2, 3, 4, 6, 12];
        let p = orders.iter().zip(&mults).fold(ExactPoly::one(), |acc, (&d, &m)| &acc * &cyclotomic(d).pow(m as u32));
        let factored = factor_cyclotomic(&p, &orders);
        prop_assert!(factored.is_complete());
        prop_assert_eq!(factored.expand(), p);
        for (&d, &m) in orders.iter().zip(&mults) {
            prop_assert_eq!(factored.multiplicities.get(&d).copied().unwrap_or(0), m);
        }
    }

    #[test]
    fn exponent_statistics_admit_the_true_vector(k in 0isize..3, raw in prop::collection::vec(0usize..4, 4)) {
        let slots = (k + 2) as usize;
        let mut r: Vec<usize> = raw[..slots].to_vec();
        let max_exponent = r.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
        let profile = TorsionProfile {
            k,
            d: 2,
            weighted_sum: r.iter().enumerate().map(|(j, &x)| (j + 1) * x).sum(),
            summand_count: r.iter().sum(),
            top_count: r[slots - 1],
            max_exponent,
            max_exponent_count: if max_exponent == 0 { 0 } else { r[max_exponent - 1] },
            exponents: None,
        };
        while r.last() == Some(&0) {
            r.pop();
        }
        match solve_exponents(&profile).unwrap() {
            ExponentSolution::Determined(v) => prop_assert_eq!(v, r),
            ExponentSolution::Undetermined { candidates } => prop_assert!(candidates >= 2),
        }
    }

    #[test]
    fn inputs_round_trip(seed in any::<u64>()) {
        let (g, chi) = case(seed, 7);
        let (g1, chi1) = parse_json(&to_json_input(&g, &chi, Some("round trip"))).unwrap();
        let (g2, chi2) = parse_dot(&to_dot(&g, &chi)).unwrap();
        for (h, psi) in [(g1, chi1), (g2, chi2)] {
            prop_assert_eq!(h.vertices(), g.vertices());
            prop_assert!(h.edges().eq(g.edges()));
            prop_assert_eq!(psi, chi.clone());
        }
    }
}
