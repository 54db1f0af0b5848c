use proptest::prelude::*;

use qdiscord::bloch::{extract_channel, linear_classical_correlation};
use qdiscord::discord::{discord_rank2, koashi_winter_residual, monogamy_residual};
use qdiscord::matrix::{hermitian_eig, partial_trace, tensor, Complex64, ComplexMatrix, Subsystem};
use qdiscord::measures::{linear_entropy, von_neumann_entropy};
use qdiscord::oracles::decomposition_linear_cc;
use qdiscord::state::{make_random_rank2, make_rho2, random_unitary, DensityMatrix};

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * n * n).prop_map(move |v| {
        let m = ComplexMatrix::from_fn(n, n, |r, c| Complex64::new(v[2 * (r * n + c)], v[2 * (r * n + c) + 1]));
        m.hermitian_part()
    })
}

fn sized_hermitian() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=8).prop_flat_map(hermitian)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigendecomposition_reconstructs(m in sized_hermitian()) {
        let eig = hermitian_eig(&m).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&m) < 1e-12);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let v = &eig.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(m.rows())) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product(a in hermitian(3), b in hermitian(2)) {
        let tb = b.trace();
        let ta = a.trace();
        let ab = tensor(&a, &b);
        prop_assert!(partial_trace(&ab, (3, 2), Subsystem::A).unwrap().max_abs_diff(&a.scale(tb)) < 1e-12);
        prop_assert!(partial_trace(&ab, (3, 2), Subsystem::B).unwrap().max_abs_diff(&b.scale(ta)) < 1e-12);
    }

    #[test]
    fn rank2_identities(seed in any::<u64>()) {
        let rho = make_random_rank2(seed, 2).unwrap();
        prop_assert!(koashi_winter_residual(&rho).unwrap().abs() <= 1e-8);
        prop_assert!(monogamy_residual(&rho).unwrap().abs() <= 1e-8);
        let r = discord_rank2(&rho).unwrap();
        let (i_cc, q) = (r.i_cc.unwrap(), r.q_discord.unwrap());
        prop_assert!(q >= -1e-10);
        prop_assert!(i_cc >= -1e-10 && i_cc <= r.s_a.min(r.i_mutual) + 1e-10);
        prop_assert!(r.i2_cc <= r.s2_a + 1e-10);
    }

    #[test]
    fn local_unitary_invariance(seed in any::<u64>()) {
        let rho = make_random_rank2(seed, 2).unwrap();
        let moved = rho
            .local_unitary(&random_unitary(seed ^ 1, 2), &random_unitary(seed ^ 2, 2))
            .unwrap();
        let (a, b) = (discord_rank2(&rho).unwrap(), discord_rank2(&moved).unwrap());
        prop_assert!((a.q_discord.unwrap() - b.q_discord.unwrap()).abs() < 1e-9);
        prop_assert!((a.i2_cc - b.i2_cc).abs() < 1e-9);
    }

    #[test]
    fn lemma_bounds_decompositions(seed in any::<u64>(), d_a in 2usize..=4) {
        let rho = make_random_rank2(seed, d_a).unwrap();
        let lemma = linear_classical_correlation(&rho).unwrap();
        let oracle = decomposition_linear_cc(&rho, 30, seed).unwrap();
        prop_assert!(oracle <= lemma + 1e-8);
        prop_assert!(oracle >= lemma - 1e-6);
        prop_assert!(extract_channel(&rho).unwrap().reassemble().max_abs_diff(rho.matrix()) < 1e-10);
    }

    #[test]
    fn rho2_states_are_valid(x in 0.0f64..=1.0, theta in 0.0f64..std::f64::consts::TAU, eta in 0.0f64..std::f64::consts::TAU) {
        let rho = make_rho2(x, theta, eta).unwrap();
        prop_assert!(rho.rank() <= 2);
        let s_a = von_neumann_entropy(&rho.reduced(Subsystem::A));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&s_a));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&linear_entropy(&rho.reduced(Subsystem::B))));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), d_a in 2usize..=4) {
        let rho = make_random_rank2(seed, d_a).unwrap();
        prop_assert_eq!(DensityMatrix::from_json_str(&rho.to_json_string()).unwrap(), rho);
    }
}
