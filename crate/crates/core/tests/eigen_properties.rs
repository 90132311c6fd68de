use crumbs::{
    eigen_hermitian, expectation, forward, reconstruct, Complex64, DenseOperator, EmbedConfig,
    InputMatrix, StateVector,
};
use proptest::prelude::*;

fn arb_complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn hermitian_of_dim(n: usize) -> impl Strategy<Value = DenseOperator> {
    proptest::collection::vec(arb_complex(), n * n).prop_map(move |v| {
        let a = DenseOperator::from_row_major(n, v).unwrap();
        let adj = a.adjoint();
        let sum = a.as_slice().iter().zip(adj.as_slice()).map(|(x, y)| (x + y) * 0.5).collect();
        DenseOperator::from_row_major(n, sum).unwrap()
    })
}

fn arb_hermitian(max_dim: usize) -> impl Strategy<Value = DenseOperator> {
    (1..=max_dim).prop_flat_map(hermitian_of_dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigenpairs_satisfy_residual_bound(a in arb_hermitian(16)) {
        let s = eigen_hermitian(&a).unwrap();
        let n = a.dim();
        let scale = a.frobenius_norm().max(1.0);
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        for k in 0..n {
            let v = s.eigenvector(k);
            let av = a.apply(&v);
            let res: f64 = av.iter().zip(&v).map(|(x, y)| (x - y * s.eigenvalues[k]).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-10 * scale, "k={k} residual {res}");
            for l in 0..n {
                let w = s.eigenvector(l);
                let dot: Complex64 = v.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                let expect = if k == l { 1.0 } else { 0.0 };
                prop_assert!((dot - expect).norm() < 1e-10);
            }
        }
        let trace: f64 = s.eigenvalues.iter().sum();
        prop_assert!((trace - a.trace().re).abs() < 1e-10 * scale);
    }

    #[test]
    fn expectation_is_quadratic_form(
        a in (1u32..=5).prop_flat_map(|q| {
            let n = 1usize << q;
            (hermitian_of_dim(n),
             proptest::collection::vec(arb_complex(), n))
        })
    ) {
        let (h, amps) = a;
        let terms = forward(&InputMatrix::from(h.clone()), &EmbedConfig::default(), 0.0).unwrap();
        let psi = StateVector::new(terms.qubits(), amps.clone()).unwrap();
        let value = expectation(&terms, &psi).unwrap();
        let hv = h.apply(&amps);
        let direct: Complex64 = amps.iter().zip(&hv).map(|(x, y)| x.conj() * y).sum();
        prop_assert!((value - direct).norm() < 1e-10 * direct.norm().max(1.0));
        prop_assert!(value.im.abs() < 1e-10 * value.norm().max(1.0));
        prop_assert!(reconstruct(&terms).unwrap().max_abs_diff(&h) < 1e-12);
    }
}
