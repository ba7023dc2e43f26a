use std::f64::consts::FRAC_1_SQRT_2;

use eof2xd::bounds::{caf_lower_bound, wootters_eof};
use eof2xd::entropy::{binary_entropy, von_neumann_entropy};
use eof2xd::linalg::{hermitian_eigen, Matrix};
use eof2xd::models::{reservoir_tripartite_state, tc_amplitudes, tc_tripartite_state, ReservoirParams, TcParams};
use eof2xd::{koashi_winter_eof, ComplexMatrix, OptimizerConfig, TripartiteState, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn ac_eof(psi: &TripartiteState) -> f64 {
    koashi_winter_eof(psi, &OptimizerConfig::default()).unwrap().eof
}

#[test]
fn tc_half_period_leaves_atom_and_field_separable() {
    for alpha in [0.2, FRAC_1_SQRT_2, 0.9] {
        let p = TcParams::from_alpha(alpha, 0).unwrap();
        let psi = tc_tripartite_state(&p, p.time_from_tau(0.5)).unwrap();
        assert!(ac_eof(&psi) < 1e-9);
        let bound = caf_lower_bound(&psi.rho_ac(), [2, 3]).unwrap();
        assert!(bound.eof_lower < 1e-9, "α={alpha}: {bound:?}");
    }
}

#[test]
fn tc_n0_is_periodic_in_tau() {
    let p = TcParams::from_alpha(0.4, 0).unwrap();
    for tau in [0.0, 0.13, 0.5, 0.77] {
        let a = tc_amplitudes(&p, p.time_from_tau(tau));
        let b = tc_amplitudes(&p, p.time_from_tau(tau + 1.0));
        for (x, y) in a.c.iter().zip(b.c.iter()) {
            assert!((x - y).norm() < 1e-8, "τ={tau}");
        }
    }
}

#[test]
fn tc_n2_half_period_nearly_returns_atoms_to_ground() {
    let p = TcParams::from_alpha(FRAC_1_SQRT_2, 2).unwrap();
    let psi = tc_tripartite_state(&p, p.time_from_tau(0.5)).unwrap();
    let ground = psi.rho_ab().get(0, 0).re;
    assert!(ground > 0.95, "⟨gg|ρ_AB|gg⟩ = {ground}");
}

#[test]
fn entanglement_appears_only_with_superposed_initial_state() {
    for alpha in [0.3, 0.6, 0.9] {
        let p = TcParams::from_alpha(alpha, 0).unwrap();
        let e = ac_eof(&tc_tripartite_state(&p, p.time_from_tau(0.1)).unwrap());
        assert!(e > 1e-3, "α={alpha}: {e}");
    }
    // |gg⟩|0⟩ is stationary.
    let p = TcParams::from_alpha(1.0, 0).unwrap();
    for tau in [0.1, 0.3, 0.7] {
        assert!(ac_eof(&tc_tripartite_state(&p, p.time_from_tau(tau)).unwrap()) < 1e-12);
    }
}

#[test]
fn atoms_are_interchangeable() {
    let tc = TcParams::from_alpha(0.6, 1).unwrap();
    let res = ReservoirParams::from_alpha(0.3).unwrap();
    for t in [0.0, 0.4, 1.3, 3.0] {
        for psi in [
            tc_tripartite_state(&tc, t).unwrap(),
            reservoir_tripartite_state(&res, t).unwrap(),
        ] {
            let swapped = psi.swap_ab();
            let diff = psi
                .amplitudes()
                .iter()
                .zip(swapped.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-15, "t={t}");
        }
    }
}

#[test]
fn reservoir_decays_into_the_dressed_ground_state() {
    let p = ReservoirParams::from_alpha(0.3).unwrap();
    let psi = reservoir_tripartite_state(&p, 15.0).unwrap();
    let zero = [real(0.0); 3];
    let target =
        TripartiteState::from_blocks([&[real(p.alpha), real(0.0), real(p.beta)], &zero, &zero, &zero]).unwrap();
    let overlap: C64 = target
        .amplitudes()
        .iter()
        .zip(psi.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum();
    assert!(overlap.norm_sqr() > 1.0 - 1e-6);
    assert!(ac_eof(&psi) < 1e-6);
}

#[test]
fn reservoir_ac_entanglement_bounded_by_local_entropies() {
    let p = ReservoirParams::from_alpha(0.3).unwrap();
    for t in [0.05, 0.3, 1.0, 4.0] {
        let psi = reservoir_tripartite_state(&p, t).unwrap();
        let e = ac_eof(&psi);
        let s_a = von_neumann_entropy(&psi.rho_a()).unwrap();
        assert!(e >= -1e-12 && e <= s_a + 1e-12, "t={t}");
        assert!(e <= 1.0 + 1e-12);
    }
}

// ---- permuted monogamy: E_AB + J←_AC = S_A, with the measurement on C ----

/// Minimal Nelder–Mead for the C-side search.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, start: &[f64], step: f64, iters: usize) -> (f64, Vec<f64>) {
    let n = start.len();
    let mut simplex: Vec<(f64, Vec<f64>)> = (0..=n)
        .map(|k| {
            let mut x = start.to_vec();
            if k > 0 {
                x[k - 1] += step;
            }
            (f(&x), x)
        })
        .collect();
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(a, b)| a + t * (b - a)).collect() };
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        if simplex[n].0 - simplex[0].0 < 1e-13 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|p| p.1[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflected = lerp(&centroid, &worst.1, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].0 {
            let expanded = lerp(&centroid, &worst.1, -2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
        } else if fr < simplex[n - 1].0 {
            simplex[n] = (fr, reflected);
        } else {
            let contracted = lerp(&centroid, &worst.1, 0.5);
            let fc = f(&contracted);
            if fc < worst.0 {
                simplex[n] = (fc, contracted);
            } else {
                let best = simplex[0].1.clone();
                for p in simplex.iter_mut().skip(1) {
                    p.1 = lerp(&best, &p.1, 0.5);
                    p.0 = f(&p.1);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    simplex.swap_remove(0)
}

/// `exp(iH)` for the Hermitian `H` packed in nine reals.
fn unitary_from_params(x: &[f64]) -> ComplexMatrix {
    let h = Matrix::from_fn(3, 3, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => real(x[i]),
        std::cmp::Ordering::Less => C64::new(x[3 + i + j - 1], x[6 + i + j - 1]),
        std::cmp::Ordering::Greater => C64::new(x[3 + i + j - 1], -x[6 + i + j - 1]),
    });
    let eig = hermitian_eigen(&h).unwrap();
    &eig.map_spectrum(f64::cos) + &eig.map_spectrum(f64::sin).scale_complex(C64::i())
}

/// `Σ_k p_k S(ρ_A|k)` for the basis given by the columns of `u`.
fn c_side_conditional_entropy(rho_ac: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
    let d = u.rows();
    let mut total = 0.0;
    for k in 0..d {
        let mut block = [[C64::new(0.0, 0.0); 2]; 2];
        for (a, row) in block.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                for c in 0..d {
                    for c2 in 0..d {
                        *entry += u.get(c, k).conj() * rho_ac.get(a * d + c, b * d + c2) * u.get(c2, k);
                    }
                }
            }
        }
        let p = block[0][0].re + block[1][1].re;
        if p < 1e-14 {
            continue;
        }
        let bloch = (((block[0][0].re - block[1][1].re) / p).powi(2) + 4.0 * block[0][1].norm_sqr() / (p * p)).sqrt();
        total += p * binary_entropy((0.5 * (1.0 + bloch.min(1.0))).min(1.0)).unwrap();
    }
    total
}

fn c_side_minimum(rho_ac: &ComplexMatrix, rng: &mut ChaCha8Rng) -> f64 {
    let f = |x: &[f64]| c_side_conditional_entropy(rho_ac, &unitary_from_params(x));
    let mut best = f(&[0.0; 9]);
    for _ in 0..12 {
        let start: Vec<f64> = (0..9).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (mut v, mut x) = nelder_mead(&f, &start, 0.5, 4000);
        // Restart from the incumbent to escape simplex collapse.
        for step in [0.1, 0.02] {
            let (v2, x2) = nelder_mead(&f, &x, step, 4000);
            if v2 < v {
                (v, x) = (v2, x2);
            }
        }
        best = best.min(v);
    }
    best
}

#[test]
fn permuted_monogamy_identity_for_reservoir() {
    let p = ReservoirParams::from_alpha(0.3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in [0.1, 0.5, 1.0, 2.0] {
        let psi = reservoir_tripartite_state(&p, t).unwrap();
        let e_ab = wootters_eof(&psi.rho_ab()).unwrap();
        let s_a = von_neumann_entropy(&psi.rho_a()).unwrap();
        let j_ac = s_a - c_side_minimum(&psi.rho_ac(), &mut rng);
        let residual = (e_ab + j_ac - s_a).abs();
        assert!(residual < 1e-3, "γt={t}: E_AB={e_ab} J_AC={j_ac} S_A={s_a}");
    }
}

#[test]
fn permuted_monogamy_identity_for_tavis_cummings() {
    let p = TcParams::from_alpha(FRAC_1_SQRT_2, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for tau in [0.15, 0.3, 0.45] {
        let psi = tc_tripartite_state(&p, p.time_from_tau(tau)).unwrap();
        let e_ab = wootters_eof(&psi.rho_ab()).unwrap();
        // J←_AC = S_A - min, so the identity reduces to E_AB = min.
        let best = c_side_minimum(&psi.rho_ac(), &mut rng);
        let fock = c_side_conditional_entropy(&psi.rho_ac(), &Matrix::identity(3));
        assert!(fock > best + 1e-2, "τ={tau}: the Fock basis should not be optimal");
        assert!((e_ab - best).abs() < 1e-3, "τ={tau}: E_AB={e_ab} min={best}");
    }
}
