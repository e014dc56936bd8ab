use frame_sync::estimation::EstimateDensity;
use frame_sync::quantum::{phase_shift, random_block_unitary, Ket, Operator};
use frame_sync::{
    alice_fourier_basis, expand, min_joint_cost, sector_decompose, CostFunction, Generator,
    RandomSource, SchmidtSector,
};
use num_complex::Complex;
use proptest::prelude::*;

fn generator_strategy() -> impl Strategy<Value = Generator> {
    (-3i64..3, prop::collection::vec((1i64..3, 1usize..4), 1..5)).prop_map(|(start, steps)| {
        let mut ev = start;
        let levels = steps
            .into_iter()
            .map(|(gap, d)| {
                let l = (ev, d);
                ev += gap;
                l
            })
            .collect();
        Generator::new(levels).unwrap()
    })
}

fn amplitudes(len: usize) -> impl Strategy<Value = Vec<Complex<f64>>> {
    prop::collection::vec((0.05f64..1.0, -3.2f64..3.2), len).prop_map(|v| {
        let norm = v.iter().map(|(r, _)| r * r).sum::<f64>().sqrt();
        v.into_iter()
            .map(|(r, t)| Complex::from_polar(r / norm, t))
            .collect()
    })
}

proptest! {
    #[test]
    fn phase_shift_is_unitary_and_additive(g in generator_strategy(), a in -7.0f64..7.0, b in -7.0f64..7.0) {
        let ua = phase_shift::<f64>(&g, a);
        let ub = phase_shift::<f64>(&g, b);
        prop_assert!(ua.is_unitary(1e-12));
        prop_assert!(ua.matmul(&ub).max_abs_diff(&phase_shift(&g, a + b)) < 1e-10);
    }

    #[test]
    fn fourier_povm_is_complete(g in generator_strategy()) {
        let povm = alice_fourier_basis::<f64>(&g).unwrap();
        let mut sum = Operator::zeros(g.dim());
        for v in &povm.vectors {
            sum = &sum + &Operator::projector(v);
        }
        prop_assert!(sum.max_abs_diff(&Operator::identity(g.dim())) < 1e-12);
    }

    #[test]
    fn joint_cost_ignores_amplitude_phases(e in amplitudes(6), q in 1usize..5) {
        let cost = CostFunction::likelihood(q).unwrap();
        let mags: Vec<f64> = e.iter().map(|z| z.norm()).collect();
        let a = min_joint_cost(&e, &cost).unwrap();
        let b = min_joint_cost(&mags, &cost).unwrap();
        prop_assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn density_integrates_to_one(e in amplitudes(5)) {
        let mags: Vec<f64> = e.iter().map(|z| z.norm()).collect();
        let d = EstimateDensity::with_bins(&mags, 256).unwrap();
        prop_assert!((d.total_mass(64) - 1.0).abs() < 1e-12);
        prop_assert!(d.inverse_cdf(0.25) <= d.inverse_cdf(0.5) && d.inverse_cdf(0.5) <= d.inverse_cdf(0.75));
    }

    #[test]
    fn decompose_inverts_expand(e in amplitudes(3), seed in any::<u64>()) {
        let g = Generator::new(vec![(0, 2), (1, 3), (2, 1)]).unwrap();
        let mut rng = RandomSource::new(seed);
        let lam = |k: usize, rng: &mut RandomSource| {
            let v: Vec<f64> = (0..k).map(|_| 0.1 + rng.uniform()).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect::<Vec<_>>()
        };
        let sectors = vec![
            SchmidtSector::new(0, lam(1, &mut rng)),
            SchmidtSector::new(1, lam(3, &mut rng)),
            SchmidtSector::new(2, lam(1, &mut rng)),
        ];
        let st = frame_sync::BipartiteFrameState::new(2, g.clone(), g.clone(), e, sectors).unwrap();
        let ket = expand(&st);
        let local = random_block_unitary::<f64>(&g, &mut rng).tensor(&random_block_unitary(&g, &mut rng));
        let back = sector_decompose(&local.apply(&ket), &g, &g).unwrap();
        for (a, b) in back.magnitudes().iter().zip(st.magnitudes()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        prop_assert!(back.expand().phase_aligned_distance(&local.apply(&ket)) < 1e-10);
    }
}

#[test]
fn random_ket_is_normalized() {
    let mut rng = RandomSource::new(5);
    let k: Ket<f64> = frame_sync::quantum::random_ket(7, &mut rng);
    assert!(k.is_normalized(1e-12));
}
