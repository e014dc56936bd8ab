use frame_sync::protocols::sync::{conditional_cost, SyncProtocol};
use frame_sync::protocols::{average_mismatch_fidelity, mismatch_fidelity, monte_carlo_cost};
use frame_sync::quantum::{random_block_unitary, random_ket, Ket};
use frame_sync::{
    alice_measure, finite_group_align, flat_state, frameness, min_joint_cost, no_go_witness,
    predicted_conditional_state, sector_decompose, BipartiteFrameState, CostFunction, Generator,
    GroupTable, RandomSource, SchmidtSector, WitnessGenerators,
};
use num_complex::Complex;

fn random_degenerate_state(rng: &mut RandomSource) -> BipartiteFrameState {
    let total = 1 + rng.index_below(4);
    let gen = |rng: &mut RandomSource| {
        Generator::new(
            (0..=total as i64)
                .map(|n| (n, 1 + rng.index_below(3)))
                .collect(),
        )
        .unwrap()
    };
    let g_a = gen(rng);
    let g_b = gen(rng);
    let mut amps: Vec<Complex<f64>> = (0..=total)
        .map(|_| Complex::from_polar(0.1 + rng.uniform(), rng.angle::<f64>()))
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|z| *z /= norm);
    let sectors = (0..=total as i64)
        .map(|n| {
            let max_rank = g_a.degeneracy(total as i64 - n).min(g_b.degeneracy(n));
            let rank = 1 + rng.index_below(max_rank);
            let lam: Vec<f64> = (0..rank).map(|_| 0.1 + rng.uniform()).collect();
            let s = lam.iter().map(|x| x * x).sum::<f64>().sqrt();
            SchmidtSector::new(n, lam.into_iter().map(|x| x / s).collect())
        })
        .collect();
    BipartiteFrameState::new(total as i64, g_a, g_b, amps, sectors).unwrap()
}

#[test]
fn conditional_states_follow_closed_form() {
    let mut rng = RandomSource::new(404);
    let costs = [
        CostFunction::variance(),
        CostFunction::likelihood(2).unwrap(),
    ];
    for _ in 0..20 {
        let st = random_degenerate_state(&mut rng);
        let outs = alice_measure(&st).unwrap();
        let total: f64 = outs.iter().map(|o| o.probability).sum();
        assert!((total - 1.0).abs() < 1e-10);
        for o in &outs {
            let predicted = predicted_conditional_state(&st, &o.outcome).unwrap();
            assert!(o.bob_state.phase_aligned_distance(&predicted) < 1e-12);
            for c in &costs {
                let joint = min_joint_cost(st.amplitudes(), c).unwrap();
                assert!((conditional_cost(&st, o, c).unwrap() - joint).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn monte_carlo_mean_tracks_minimum() {
    let st = flat_state::<f64>(2).unwrap();
    let cost = CostFunction::variance();
    let target = min_joint_cost(st.amplitudes(), &cost).unwrap();
    let protocol = SyncProtocol::new(&st).unwrap();
    let master = RandomSource::new(77);
    let within = (0..100u64)
        .filter(|&i| {
            let mc = monte_carlo_cost(&protocol, &cost, 1000, &master.split(i)).unwrap();
            (mc.mean - target).abs() < 4.0 * mc.std_error
        })
        .count();
    assert!(within >= 95, "{within}/100 within 4 SE");
}

#[test]
fn teleportation_properties() {
    let mut rng = RandomSource::new(8);
    for _ in 0..20 {
        let d = 2 + rng.index_below(3);
        let input: Ket<f64> = random_ket(d, &mut rng);
        assert!((mismatch_fidelity(&input, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let gens = WitnessGenerators {
            system: Generator::uniform(d),
            alice: Generator::qubit(),
            bob: Generator::qubit(),
        };
        let bell = Ket::from_real(&[0.0, 0.5f64.sqrt(), 0.5f64.sqrt(), 0.0]);
        let report = no_go_witness(&input, &bell, &gens).unwrap();
        if report.input_ui_norm > 0.1 {
            assert!(average_mismatch_fidelity(&input, 64).unwrap() < 1.0 - 1e-6);
        }
    }
    for d in 2..5 {
        let zero = Ket::<f64>::basis(d, 0);
        assert!((average_mismatch_fidelity(&zero, 64).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn frameness_local_invariance() {
    let mut rng = RandomSource::new(21);
    let cost = CostFunction::likelihood(3).unwrap();
    for _ in 0..5 {
        let st = random_degenerate_state(&mut rng);
        let f0 = frameness(&st, &cost).unwrap();
        let ket = st.expand();
        for _ in 0..5 {
            let u = random_block_unitary::<f64>(st.generator_a(), &mut rng)
                .tensor(&random_block_unitary(st.generator_b(), &mut rng));
            let moved =
                sector_decompose(&u.apply(&ket), st.generator_a(), st.generator_b()).unwrap();
            assert!((frameness(&moved, &cost).unwrap() - f0).abs() < 1e-10);
        }
        // invariant ancilla on Bob's side
        let anc = Generator::new(
            st.generator_b()
                .levels()
                .iter()
                .map(|&(n, d)| (n, 2 * d))
                .collect(),
        )
        .unwrap();
        let mut widened = Vec::with_capacity(st.generator_a().dim() * anc.dim());
        for a in 0..st.generator_a().dim() {
            for &(n, d) in st.generator_b().levels() {
                let (start, _) = st.generator_b().block(n).unwrap();
                for l in 0..2 * d {
                    widened.push(if l < d {
                        ket[a * st.generator_b().dim() + start + l]
                    } else {
                        Complex::new(0.0, 0.0)
                    });
                }
            }
        }
        let ext = sector_decompose(&Ket::new(widened), st.generator_a(), &anc).unwrap();
        assert!((frameness(&ext, &cost).unwrap() - f0).abs() < 1e-10);
    }
}

#[test]
fn cyclic_alignment_is_exact() {
    let mut rng = RandomSource::new(12);
    for d in 2..=12 {
        let group = GroupTable::cyclic(d).unwrap();
        for g in 0..d {
            for _ in 0..50 {
                assert_eq!(finite_group_align(&group, g, &mut rng).unwrap(), g);
            }
        }
    }
}
