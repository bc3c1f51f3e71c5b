//! Property suites: algebra laws checked against dense-matrix oracles on
//! random inputs, plus simulator norm and symmetry invariants.

use proptest::prelude::*;

use vqekit_core::ansatz::build_uccsd;
use vqekit_core::fermion::number_operator;
use vqekit_core::pauli::{PauliOp, PauliSum, PauliTerm, DEFAULT_PRUNE_TOLERANCE};
use vqekit_core::sim::Statevector;
use vqekit_core::Complex64;

fn letter() -> impl Strategy<Value = PauliOp> {
    prop_oneof![
        Just(PauliOp::I),
        Just(PauliOp::X),
        Just(PauliOp::Y),
        Just(PauliOp::Z),
    ]
}

fn term(n: usize) -> impl Strategy<Value = PauliTerm> {
    (
        proptest::collection::vec(letter(), n),
        -2.0..2.0f64,
        -2.0..2.0f64,
    )
        .prop_map(|(letters, re, im)| PauliTerm::new(letters, Complex64::new(re, im)))
}

fn sum(n: usize) -> impl Strategy<Value = PauliSum> {
    proptest::collection::vec(term(n), 1..4)
        .prop_map(move |terms| PauliSum::from_terms(n, terms).unwrap())
}

fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random_state(n: usize, seeds: &[f64]) -> Statevector {
    let dim = 1usize << n;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|k| {
            let re = ((k as f64 + 1.3) * seeds[0]).sin();
            let im = ((k as f64 + 0.7) * seeds[1]).cos();
            Complex64::new(re, im)
        })
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    Statevector::from_amplitudes(n, amps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn term_product_matches_dense_product(n in 1usize..=4, seed_a in 0u64..1000, seed_b in 0u64..1000) {
        // Derive two terms from the seeds deterministically.
        let make = |seed: u64| {
            let letters: Vec<PauliOp> = (0..n)
                .map(|q| PauliOp::ALL[((seed >> (2 * q)) & 3) as usize])
                .collect();
            let coeff = Complex64::new(
                ((seed % 17) as f64 - 8.0) / 4.0,
                ((seed % 13) as f64 - 6.0) / 4.0,
            );
            PauliTerm::new(letters, coeff)
        };
        let a = make(seed_a);
        let b = make(seed_b);
        let prod = a.mul(&b).unwrap();
        let dim = 1usize << n;
        let da = PauliSum::from_term(a).to_dense().unwrap();
        let db = PauliSum::from_term(b).to_dense().unwrap();
        let dp = PauliSum::from_term(prod).to_dense().unwrap();
        prop_assert!(max_abs_diff(&matmul(&da, &db, dim), &dp) < 1e-14);
    }

    #[test]
    fn commutator_antisymmetry(a in sum(3), b in sum(3)) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        let residual = ab.add(&ba).unwrap();
        for t in residual.iter_terms() {
            prop_assert!(t.coeff().norm() < 1e-12);
        }
    }

    #[test]
    fn addition_laws(a in sum(3), b in sum(3), c in sum(3)) {
        let ab_c = a.add(&b).unwrap().add(&c).unwrap();
        let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
        let d1 = ab_c.to_dense().unwrap();
        let d2 = a_bc.to_dense().unwrap();
        prop_assert!(max_abs_diff(&d1, &d2) < 1e-12);

        let ab = a.add(&b).unwrap();
        let ba = b.add(&a).unwrap();
        prop_assert!(max_abs_diff(&ab.to_dense().unwrap(), &ba.to_dense().unwrap()) < 1e-12);
    }

    #[test]
    fn pruning_only_drops_sub_tolerance_terms(a in sum(3)) {
        let mut pruned = a.clone();
        pruned.prune(DEFAULT_PRUNE_TOLERANCE);
        for t in pruned.iter_terms() {
            prop_assert!(t.coeff().norm() >= DEFAULT_PRUNE_TOLERANCE);
        }
        // Dropped mass is bounded by tolerance per dropped term.
        let diff = a.sub(&pruned).unwrap();
        for t in diff.iter_terms() {
            prop_assert!(t.coeff().norm() <= DEFAULT_PRUNE_TOLERANCE);
        }
    }

    #[test]
    fn exponential_roundtrip_preserves_state(
        n in 1usize..=4,
        seed in 0u64..1000,
        theta in -3.0..3.0f64,
        s1 in 0.1..4.0f64,
        s2 in 0.1..4.0f64,
    ) {
        let letters: Vec<PauliOp> = (0..n)
            .map(|q| PauliOp::ALL[((seed >> (2 * q)) & 3) as usize])
            .collect();
        let p = PauliTerm::new(letters, Complex64::new(1.0, 0.0));
        let state = random_state(n, &[s1, s2]);
        let roundtrip = state
            .apply_pauli_exponential(&p, theta)
            .unwrap()
            .apply_pauli_exponential(&p, -theta)
            .unwrap();
        let diff: f64 = state
            .amplitudes()
            .iter()
            .zip(roundtrip.amplitudes().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prop_assert!(diff < 1e-12);
        prop_assert!((roundtrip.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn uccsd_conserves_particle_number(t1 in -1.5..1.5f64, t2 in -1.5..1.5f64, t3 in -1.5..1.5f64) {
        let ansatz = build_uccsd(4, 2).unwrap();
        let hf = Statevector::basis_state(4, 0b0101).unwrap();
        let state = ansatz.prepare(&hf, &[t1, t2, t3]).unwrap();
        let n = state.expectation(&number_operator(4)).unwrap();
        prop_assert!((n - 2.0).abs() < 1e-10);
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
    }
}
