use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qss_core::code5::{
    apply_pauli, encode_classical, encode_quantum, kl_deviations, verify_distance, Bit,
    PauliOperator, QubitSecret,
};
use qss_core::linalg::{eigenvalues_hermitian, CMatrix};
use qss_core::quantum::{
    reduced_state, trace_distance, von_neumann_entropy, DensityMatrix, PureState,
};
use qss_core::ShareSubset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_hermitian(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim);
    for r in 0..dim {
        m[(r, r)] = c(rng.gen_range(-1.0..1.0), 0.0);
        for col in (r + 1)..dim {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(r, col)] = z;
            m[(col, r)] = z.conj();
        }
    }
    m
}

fn random_state(rng: &mut impl Rng, n: usize) -> PureState {
    let amps = (0..1 << n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    PureState::normalized(n, amps).unwrap()
}

/// Eigenvalues through nalgebra's real symmetric solver applied to the
/// 2n x 2n embedding [[Re, -Im], [Im, Re]], whose spectrum is the Hermitian
/// spectrum with every value doubled.
fn oracle_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.dim();
    let big = DMatrix::from_fn(2 * n, 2 * n, |r, col| {
        let z = m[(r % n, col % n)];
        match (r < n, col < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut vals: Vec<f64> = big.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals.into_iter().step_by(2).collect()
}

/// Partial trace by walking bit strings: entry (x, y) of the reduced state
/// sums ψ(u) ψ(v)* over all full strings u, v that agree outside `keep`.
fn oracle_reduced(psi: &PureState, keep: &[usize]) -> CMatrix {
    let n = psi.num_qubits();
    let strings: Vec<String> = (0..1usize << n).map(|i| format!("{i:0n$b}")).collect();
    let project = |s: &str, inside: bool| -> String {
        s.chars()
            .enumerate()
            .filter(|(i, _)| keep.contains(&(i + 1)) == inside)
            .map(|(_, ch)| ch)
            .collect()
    };
    let dim = 1 << keep.len();
    let mut out = CMatrix::zeros(dim);
    for (u, su) in strings.iter().enumerate() {
        for (v, sv) in strings.iter().enumerate() {
            if project(su, false) != project(sv, false) {
                continue;
            }
            let x = usize::from_str_radix(&project(su, true), 2).unwrap();
            let y = usize::from_str_radix(&project(sv, true), 2).unwrap();
            out[(x, y)] += psi.amplitudes()[u] * psi.amplitudes()[v].conj();
        }
    }
    out
}

fn pauli_matrix(p: &PauliOperator) -> CMatrix {
    let single = |ch: char| match ch {
        'I' => CMatrix::identity(2),
        'X' => CMatrix::from_row_major(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap(),
        'Y' => CMatrix::from_row_major(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap(),
        'Z' => CMatrix::diag(&[1.0, -1.0]),
        _ => unreachable!(),
    };
    let text = p.to_string();
    let mut chars = text.chars();
    let first = single(chars.next().unwrap());
    chars.fold(first, |acc, ch| acc.kron(&single(ch)))
}

fn subsets() -> Vec<ShareSubset> {
    ShareSubset::all_nonempty(5).unwrap()
}

#[test]
fn jacobi_matches_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dim in [1, 2, 3, 4, 8, 16, 32] {
        for _ in 0..5 {
            let m = random_hermitian(&mut rng, dim);
            let ours = eigenvalues_hermitian(&m).unwrap();
            let theirs = oracle_eigenvalues(&m);
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-10, "dim {dim}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn eigen_reconstruction_on_random_four_by_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let m = random_hermitian(&mut rng, 4);
        let e = m.eigh().unwrap();
        assert!(e.reconstruct().max_abs_diff(&m) <= 1e-9);
    }
}

#[test]
fn partial_trace_matches_string_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let states = [
        encode_classical(Bit::Zero),
        encode_classical(Bit::One),
        random_state(&mut rng, 5),
    ];
    for psi in &states {
        for j in subsets() {
            let keep: Vec<usize> = j.members().collect();
            let ours = reduced_state(psi, j).unwrap();
            assert!(ours.matrix().max_abs_diff(&oracle_reduced(psi, &keep)) < 1e-14, "{j}");
        }
    }
}

#[test]
fn full_set_is_the_projector() {
    let psi = encode_classical(Bit::Zero);
    let rho = reduced_state(&psi, ShareSubset::full(5).unwrap()).unwrap();
    assert_eq!(rho, DensityMatrix::from_pure(&psi));
    assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
    assert!(von_neumann_entropy(&rho) < 1e-12);
}

#[test]
fn single_share_is_maximally_mixed() {
    let rho = reduced_state(&encode_classical(Bit::Zero), ShareSubset::new(&[1]).unwrap()).unwrap();
    assert!(rho.matrix().max_abs_diff(&CMatrix::diag(&[0.5, 0.5])) < 1e-15);
}

#[test]
fn pair_marginal_spectrum() {
    let rho = reduced_state(&encode_classical(Bit::Zero), ShareSubset::new(&[1, 2]).unwrap()).unwrap();
    for v in eigenvalues_hermitian(rho.matrix()).unwrap() {
        assert!((v - 0.25).abs() < 1e-12);
    }
}

#[test]
fn qualified_triple_is_perfectly_distinguishable() {
    let j = ShareSubset::new(&[1, 2, 3]).unwrap();
    let rho0 = reduced_state(&encode_classical(Bit::Zero), j).unwrap();
    let rho1 = reduced_state(&encode_classical(Bit::One), j).unwrap();
    assert!((trace_distance(&rho0, &rho1).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn reduced_states_are_valid_density_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut states = vec![encode_classical(Bit::Zero), encode_classical(Bit::One)];
    states.extend((0..3).map(|_| random_state(&mut rng, 5)));
    for psi in &states {
        for j in subsets() {
            let rho = reduced_state(psi, j).unwrap();
            let validated = DensityMatrix::new(rho.matrix().clone()).unwrap();
            assert!((validated.matrix().trace().re - 1.0).abs() <= 1e-10);
            let s = von_neumann_entropy(&rho);
            assert!(s >= 0.0 && s <= j.len() as f64 + 1e-9, "{j}: {s}");
        }
    }
}

#[test]
fn pauli_kl_values_match_explicit_matrices() {
    let zero = encode_classical(Bit::Zero);
    let one = encode_classical(Bit::One);
    let mut violations = [0usize; 4];
    for (w, count) in violations.iter_mut().enumerate().skip(1) {
        for p in PauliOperator::all_of_weight(5, w) {
            let m = pauli_matrix(&p);
            let off = m.sandwich(zero.amplitudes(), one.amplitudes()).norm();
            let diag = (m.sandwich(zero.amplitudes(), zero.amplitudes())
                - m.sandwich(one.amplitudes(), one.amplitudes()))
            .norm();
            let (our_off, our_diag) = kl_deviations(&p).unwrap();
            assert!((off - our_off).abs() < 1e-14, "{p}");
            assert!((diag - our_diag).abs() < 1e-14, "{p}");
            if off > 1e-9 || diag > 1e-9 {
                *count += 1;
            }
        }
    }
    assert_eq!(violations, [0, 0, 0, 30]);
    let report = verify_distance(3).unwrap();
    assert_eq!(report.weights[2].violations, violations[3]);
    assert_eq!(report.distance, Some(3));
}

#[test]
fn pauli_action_matches_explicit_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let psi = random_state(&mut rng, 5);
    for p in ["XYZIY", "YYYYY", "IZIXI", "ZZZZZ"] {
        let p: PauliOperator = p.parse().unwrap();
        let m = pauli_matrix(&p);
        let out = apply_pauli(&p, &psi).unwrap();
        for (row, z) in out.amplitudes().iter().enumerate() {
            let expected: Complex64 = (0..32).map(|k| m[(row, k)] * psi.amplitudes()[k]).sum();
            assert!((expected - z).norm() < 1e-15);
        }
    }
}

fn arb_letters() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Z')], 5)
        .prop_map(|v| v.into_iter().collect())
}

fn arb_secret() -> impl Strategy<Value = QubitSecret> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU).prop_map(
        |(theta, phi, global)| {
            let g = Complex64::from_polar(1.0, global);
            QubitSecret::new(
                g * (theta / 2.0).cos(),
                g * Complex64::from_polar((theta / 2.0).sin(), phi),
            )
            .unwrap()
        },
    )
}

proptest! {
    #[test]
    fn xz_paulis_are_involutions(letters in arb_letters(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(&mut rng, 5);
        let p: PauliOperator = letters.parse().unwrap();
        let twice = apply_pauli(&p, &apply_pauli(&p, &psi).unwrap()).unwrap();
        for (a, b) in twice.amplitudes().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() <= 1e-12);
        }
        prop_assert!((apply_pauli(&p, &psi).unwrap().norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn global_phase_leaves_marginals_unchanged(secret in arb_secret(), theta in 0.0..std::f64::consts::TAU) {
        let g = Complex64::from_polar(1.0, theta);
        let rotated = QubitSecret::new(g * secret.alpha0(), g * secret.alpha1()).unwrap();
        let a = encode_quantum(&secret);
        let b = encode_quantum(&rotated);
        for j in subsets() {
            let ra = reduced_state(&a, j).unwrap();
            let rb = reduced_state(&b, j).unwrap();
            prop_assert!(ra.matrix().max_abs_diff(rb.matrix()) <= 1e-12);
        }
    }

    #[test]
    fn entropy_is_additive_on_products(seed in any::<u64>(), n1 in 1usize..=2, n2 in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Mixed factors: marginals of random pure states on n + 1 qubits.
        let f1 = reduced_state(&random_state(&mut rng, n1 + 1), ShareSubset::full(n1).unwrap()).unwrap();
        let f2 = reduced_state(&random_state(&mut rng, n2 + 1), ShareSubset::full(n2).unwrap()).unwrap();
        let product = f1.tensor(&f2);
        let lhs = von_neumann_entropy(&product);
        let rhs = von_neumann_entropy(&f1) + von_neumann_entropy(&f2);
        prop_assert!((lhs - rhs).abs() <= 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn trace_distance_is_a_bounded_metric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keep = ShareSubset::new(&[1, 2]).unwrap();
        let a = reduced_state(&random_state(&mut rng, 3), keep).unwrap();
        let b = reduced_state(&random_state(&mut rng, 3), keep).unwrap();
        let d = trace_distance(&a, &b).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert!((d - trace_distance(&b, &a).unwrap()).abs() <= 1e-12);
    }
}
