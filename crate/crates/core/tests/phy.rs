use biolink_core::fec::CodeScheme;
use biolink_core::link::reference;
use biolink_core::phy::{ber_monte_carlo, ber_theory, ber_vs_distance, ModScheme, PhyConfig};
use statrs::function::erf::erfc;

fn q(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

fn small(m: ModScheme, c: CodeScheme, seed: u64) -> PhyConfig {
    PhyConfig { max_bits: 400_000, ..PhyConfig::new(m, c, seed) }
}

#[test]
fn theory_matches_independent_q() {
    for ebn0 in [0.0, 3.0, 6.0, 9.0] {
        let lin = 10f64.powf(ebn0 / 10.0);
        assert!((ber_theory(ModScheme::Bpsk, ebn0) - q((2.0 * lin).sqrt())).abs() < 1e-12);
        assert!((ber_theory(ModScheme::Ask, ebn0) - q(lin.sqrt())).abs() < 1e-12);
    }
}

#[test]
fn ask_matches_theory() {
    for (i, ebn0) in [2.0, 5.0, 8.0].into_iter().enumerate() {
        let est = ber_monte_carlo(&PhyConfig::new(ModScheme::Ask, CodeScheme::None, i as u64), ebn0).unwrap();
        let th = ber_theory(ModScheme::Ask, ebn0);
        assert!((est.ber - th).abs() <= 3.5 * est.std_error, "{ebn0} dB: {} vs {th}", est.ber);
    }
}

#[test]
fn ber_falls_with_snr() {
    for code in CodeScheme::ALL {
        let mut last = 1.0;
        for ebn0 in [0.0, 2.0, 4.0, 6.0] {
            let est = ber_monte_carlo(&small(ModScheme::Bpsk, code, 11), ebn0).unwrap();
            assert!(est.ber <= last + 3.0 * est.std_error, "{code:?} at {ebn0} dB");
            last = est.ber;
        }
    }
}

#[test]
fn result_does_not_depend_on_worker_count() {
    let cfg = small(ModScheme::Bpsk, CodeScheme::Rs31_26, 5);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| ber_monte_carlo(&cfg, 5.0).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

#[test]
fn distance_sweep_degrades_with_distance() {
    let cfg = small(ModScheme::Bpsk, CodeScheme::Hamming15_11, 2);
    let pts = ber_vs_distance(&reference::table3_link(), &reference::table3_noise(), &cfg, &[0.05, 0.06, 0.07, 0.08])
        .unwrap();
    for w in pts.windows(2) {
        assert!(w[1].snr_db < w[0].snr_db);
        assert!(w[1].estimate.ber >= w[0].estimate.ber);
    }
    let rate = CodeScheme::Hamming15_11.rate();
    for p in &pts {
        assert!((p.ebn0_db - (p.snr_db - 10.0 * rate.log10())).abs() < 1e-9);
    }
}
