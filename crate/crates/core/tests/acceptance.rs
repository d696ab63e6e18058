//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use biolink_core::fec::gf32::Gf32;
use biolink_core::fec::{hamming, reed_solomon, CodeScheme};
use biolink_core::harness::{self, Params, Subcommand};
use biolink_core::link::{ac_resistance, backscatter_sweep, link_budget, reference};
use biolink_core::mac::cdma::CODE_LENGTHS;
use biolink_core::mac::{
    aloha_mean, binary_tree_iterations, cdma_simulate, compare_schemes, global_recommendation, max_fully_read,
    scenario2_optimum, scenario2_sweep, ComparisonSetup, DeploymentGeometry, MacScenario, Scheme, SpreadingFamily,
};
use biolink_core::phy::{ber_monte_carlo, ber_theory, ber_vs_distance, BerPoint, ModScheme, PhyConfig};
use biolink_core::seed::{derive, rng_for, DEFAULT_SEED};
use biolink_core::stats::MeanEstimate;
use rand::Rng;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn within_runtime(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn table1_regression() -> Outcome {
    let start = Instant::now();
    let noise = reference::table3_noise();
    let mut worst_db: f64 = 0.0;
    let mut notes = Vec::new();
    for row in reference::TABLE1_ROWS.iter().filter(|r| r.freq_hz < 20e6 && !(r.freq_hz > 2e6 && r.mu > 1.0)) {
        let b = link_budget(&reference::table1_link(row.freq_hz, row.mu, row.subcarrier_divider), &noise).unwrap();
        let err = (b.received_backscatter_power - row.p_re_dbm).abs();
        worst_db = worst_db.max(err);
        notes.push(format!("{:.2}", b.received_backscatter_power));
    }
    let mut worst_r: f64 = 0.0;
    for r in reference::TABLE1_RESISTANCES {
        let rr = ac_resistance(&reference::reader_coil(), r.freq_hz).unwrap();
        let rb = ac_resistance(&reference::mote_coil(), r.freq_hz).unwrap();
        worst_r = worst_r.max(rel(rr, r.reader_ohm)).max(rel(rb, r.mote_ohm));
    }
    let elapsed = start.elapsed();
    let pass = worst_db <= 3.0 && worst_r <= 0.15 && within_runtime(elapsed, 1.0);
    Outcome::new(
        pass,
        format!(
            "P_re [{}] dBm, worst |dP| {worst_db:.2} dB (<= 3), worst R error {:.1}% (<= 15%), {:.3} s",
            notes.join(", "),
            100.0 * worst_r,
            elapsed.as_secs_f64()
        ),
    )
}

fn power_crossover() -> Outcome {
    let start = Instant::now();
    let far: Vec<f64> = (0..=7).map(|k| 0.065 + 0.005 * k as f64).collect();
    let mut distances = vec![0.05];
    distances.extend(&far);
    let pts = backscatter_sweep(&reference::table3_link(), &reference::table3_noise(), &distances).unwrap();
    let at5 = pts[0].received_power_dbm;
    let worst_far = pts[1..].iter().map(|p| p.received_power_dbm).fold(f64::NEG_INFINITY, f64::max);
    let elapsed = start.elapsed();
    Outcome::new(
        at5 > -100.0 && worst_far <= -100.0 && within_runtime(elapsed, 1.0),
        format!(
            "P_re(5 cm) = {at5:.2} dBm (> -100), max P_re over 6.5-10 cm = {worst_far:.2} dBm (<= -100), {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn ber_properties() -> Outcome {
    let start = Instant::now();
    let params = Params::default();
    let distances = params.distances();
    let link = reference::table3_link();
    let noise = reference::table3_noise();
    let curves: Vec<Vec<BerPoint>> = params
        .ber_schemes
        .iter()
        .enumerate()
        .map(|(i, &(m, c))| {
            let cfg = PhyConfig { seed: derive(DEFAULT_SEED, &[i as u64]), ..PhyConfig::new(m, c, 0) };
            ber_vs_distance(&link, &noise, &cfg, &distances).unwrap()
        })
        .collect();
    let find = |m, c| {
        let idx = params.ber_schemes.iter().position(|&s| s == (m, c)).unwrap();
        &curves[idx]
    };
    let ask = find(ModScheme::Ask, CodeScheme::None);
    let bpsk = find(ModScheme::Bpsk, CodeScheme::None);
    let ham = find(ModScheme::Bpsk, CodeScheme::Hamming15_11);
    let rs = find(ModScheme::Bpsk, CodeScheme::Rs31_26);

    let beyond_ok =
        curves.iter().flat_map(|c| c.iter().filter(|p| p.distance > 0.06 + 1e-9)).all(|p| p.estimate.ber > 0.01);
    let rs_band = rs
        .iter()
        .filter(|p| (0.05 - 1e-9..=0.06 + 1e-9).contains(&p.distance))
        .map(|p| p.estimate.ber)
        .fold(f64::INFINITY, f64::min);
    let le = |a: &BerPoint, b: &BerPoint| {
        let sigma = (a.estimate.std_error.powi(2) + b.estimate.std_error.powi(2)).sqrt();
        a.estimate.ber <= b.estimate.ber + 3.0 * sigma
    };
    let mut order_violations = Vec::new();
    for i in 0..distances.len() {
        if !(le(&rs[i], &ham[i]) && le(&ham[i], &bpsk[i]) && le(&bpsk[i], &ask[i])) {
            order_violations.push(format!("{:.2} m", distances[i]));
        }
    }
    let elapsed = start.elapsed();
    let pass = beyond_ok && rs_band <= 1e-3 && order_violations.is_empty();
    Outcome::new(
        pass,
        format!(
            "(a) BER > 0.01 beyond 6 cm: {}; (b) best BPSK+RS BER in 5-6 cm = {rs_band:.2e} (<= 1e-3); \
             (c) ordering violations: {}; {:.1} s",
            if beyond_ok { "yes" } else { "no" },
            if order_violations.is_empty() { "none".to_string() } else { order_violations.join(" ") },
            elapsed.as_secs_f64()
        ),
    )
}

fn fec_oracles() -> Outcome {
    let start = Instant::now();
    let mut ham_fail = 0;
    for m in 0..(1u16 << hamming::K) {
        let c = hamming::encode_word(m);
        for pos in 0..hamming::N {
            let d = hamming::decode_word(c ^ (1 << pos));
            if d.message != m || d.corrected != 1 {
                ham_fail += 1;
            }
        }
    }
    let ham_time = start.elapsed();

    let mut rng = rng_for(DEFAULT_SEED, &[4]);
    let mut rs_fail = 0;
    for trial in 0..100_000 {
        let msg: Vec<Gf32> = (0..reed_solomon::K).map(|_| Gf32::new(rng.random_range(0..32)).unwrap()).collect();
        let mut w = reed_solomon::rs_encode(&msg).unwrap();
        let errors = trial % 3;
        let mut hit = Vec::new();
        while hit.len() < errors {
            let p = rng.random_range(0..reed_solomon::N);
            if !hit.contains(&p) {
                hit.push(p);
                w[p] += Gf32::new(rng.random_range(1..32)).unwrap();
            }
        }
        let d = reed_solomon::rs_decode(&w).unwrap();
        if d.failure || d.message.to_vec() != msg {
            rs_fail += 1;
        }
    }

    let mut worst_sigma: f64 = 0.0;
    for (i, ebn0) in [0.0, 2.0, 4.0, 6.0, 8.0].into_iter().enumerate() {
        let cfg = PhyConfig::new(ModScheme::Bpsk, CodeScheme::None, derive(DEFAULT_SEED, &[40, i as u64]));
        let est = ber_monte_carlo(&cfg, ebn0).unwrap();
        let z = (est.ber - ber_theory(ModScheme::Bpsk, ebn0)).abs() / est.std_error;
        worst_sigma = worst_sigma.max(z);
    }
    let elapsed = start.elapsed();
    Outcome::new(
        ham_fail == 0 && ham_time.as_secs_f64() < 10.0 && rs_fail == 0 && worst_sigma <= 3.0,
        format!(
            "Hamming failures {ham_fail}/30720 in {:.3} s; RS failures {rs_fail}/100000; \
             uncoded BPSK worst deviation {worst_sigma:.2} sigma; {:.1} s",
            ham_time.as_secs_f64(),
            elapsed.as_secs_f64()
        ),
    )
}

fn tree_iterations() -> Outcome {
    let got: Vec<f64> = [1, 2, 1024].iter().map(|&n| binary_tree_iterations(n).unwrap()).collect();
    let pass = got[0] == 1.0 && got[1] == 2.0 && (got[2] - 11.0).abs() < 1e-12;
    Outcome::new(pass, format!("L(1), L(2), L(1024) = {:?}", got))
}

fn scenario_base(rate_bps: f64, read_time_s: f64) -> MacScenario {
    MacScenario {
        n_motes: 1,
        rate_bps,
        packet_bytes: 64,
        read_time_s,
        frame_slots: Params::default().frame_slots,
        trials: 100,
        seed: DEFAULT_SEED,
    }
}

fn scenario1_anchor() -> Outcome {
    let start = Instant::now();
    let max = max_fully_read(&scenario_base(200e3, 10.0), 10).unwrap();
    let global = global_recommendation(max, &DeploymentGeometry::default()).unwrap();
    let elapsed = start.elapsed();
    let pass = rel(max as f64, 91.0) <= 0.15 && rel(global as f64, 230_906.0) <= 0.16 && within_runtime(elapsed, 30.0);
    Outcome::new(
        pass,
        format!(
            "max fully-read motes {max} (91 +/- 15%), global recommendation {global} (230906 +/- 16%), {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn scenario2_anchor() -> Outcome {
    let start = Instant::now();
    let base = scenario_base(200e3, 20.0);
    let ns: Vec<u64> = (1..=30).map(|k| 10 * k).collect();
    let rows = scenario2_sweep(&ns, &[200e3], &[20.0], 64, base.frame_slots, base.trials, base.seed).unwrap();
    let best = scenario2_optimum(&rows).unwrap();
    Outcome::new(
        rel(best.n_motes as f64, 130.0) <= 0.15,
        format!(
            "optimum deployment {} motes ({:.1} read on average; 130 +/- 15%), {:.2} s",
            best.n_motes,
            best.mean_successes.mean,
            start.elapsed().as_secs_f64()
        ),
    )
}

/// Expected singleton slots in one frame, by listing all S^n slot choices.
fn enumerate_singletons(n: u32, s: u32) -> f64 {
    let total = s.pow(n);
    let mut sum = 0u64;
    for code in 0..total {
        let mut counts = vec![0u32; s as usize];
        let mut c = code;
        for _ in 0..n {
            counts[(c % s) as usize] += 1;
            c /= s;
        }
        sum += counts.iter().filter(|&&k| k == 1).count() as u64;
    }
    sum as f64 / total as f64
}

fn single_frame(n: u64, s: u32, trials: u32, seed: u64) -> MeanEstimate {
    let sc = MacScenario {
        n_motes: n,
        rate_bps: 1000.0,
        packet_bytes: 1,
        read_time_s: MacScenario::read_time_for_slots(s as u64, 1, 1000.0),
        frame_slots: s,
        trials,
        seed,
    };
    aloha_mean(&sc).unwrap()
}

fn aloha_oracles() -> Outcome {
    let mut worst: f64 = 0.0;
    for (n, s) in [(5u64, 16u32), (10, 16), (91, 128)] {
        let m = single_frame(n, s, 2000, derive(DEFAULT_SEED, &[8, n]));
        let exact = n as f64 * (1.0 - 1.0 / s as f64).powi(n as i32 - 1);
        worst = worst.max((m.mean - exact).abs() / m.std_error);
    }
    let mut worst_enum: f64 = 0.0;
    for n in 1..=4u32 {
        for s in 1..=4u32 {
            let exact = enumerate_singletons(n, s);
            let m = single_frame(n as u64, s, 2000, derive(DEFAULT_SEED, &[9, n as u64, s as u64]));
            let z = if m.std_error == 0.0 {
                if (m.mean - exact).abs() < 1e-12 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (m.mean - exact).abs() / m.std_error
            };
            worst_enum = worst_enum.max(z);
        }
    }
    Outcome::new(
        worst <= 3.0 && worst_enum <= 3.0,
        format!("analytic worst {worst:.2} sigma; enumeration (n, S <= 4) worst {worst_enum:.2} sigma"),
    )
}

fn cdma_properties() -> Outcome {
    let start = Instant::now();
    let mut walsh_ok = true;
    for len in CODE_LENGTHS {
        for n in [1, len / 2, len] {
            let m = cdma_simulate(n, SpreadingFamily::Walsh, len, 64, 5, DEFAULT_SEED).unwrap();
            walsh_ok &= m.mean == n as f64 && m.std_error == 0.0;
        }
    }
    let params = Params::default();
    let ns = &params.cdma_n_motes;
    let table: Vec<Vec<MeanEstimate>> = CODE_LENGTHS
        .iter()
        .map(|&len| {
            let seed = derive(DEFAULT_SEED, &[0, len as u64]);
            ns.iter()
                .map(|&n| cdma_simulate(n as usize, SpreadingFamily::Random, len, 64, 100, seed).unwrap())
                .collect()
        })
        .collect();
    let mut peaks = Vec::new();
    let mut peak_ok = true;
    for (row, len) in table.iter().zip(CODE_LENGTHS) {
        let (p, best) =
            row.iter().enumerate().fold((0, &row[0]), |acc, (i, m)| if m.mean > acc.1.mean { (i, m) } else { acc });
        let last = row.last().unwrap();
        let sigma = (best.std_error.powi(2) + last.std_error.powi(2)).sqrt();
        peak_ok &= p + 1 < row.len() && last.mean < best.mean - 3.0 * sigma;
        peaks.push(format!("C={len}: peak {:.1} at n={}", best.mean, ns[p]));
    }
    let mut mono_ok = true;
    for w in table.windows(2) {
        for (a, b) in w[0].iter().zip(&w[1]) {
            let sigma = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
            mono_ok &= b.mean >= a.mean - 3.0 * sigma;
        }
    }
    Outcome::new(
        walsh_ok && peak_ok && mono_ok,
        format!(
            "Walsh exact: {walsh_ok}; random peak-then-decline: {peak_ok} ({}); longer codes never worse: {mono_ok}; {:.1} s",
            peaks.join(", "),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn comparison_anchors() -> Outcome {
    let start = Instant::now();
    let short_time = MacScenario::read_time_for_slots(128, 64, 20e3);
    let slots = MacScenario { read_time_s: short_time, ..scenario_base(20e3, 0.0) }.slots_available();
    let arithmetic_ok = short_time == 3.2768 && slots == 128;

    let ns = Params::default().compare_n_motes;
    let rows = compare_schemes(&ns, &[128, 1280], &ComparisonSetup::default()).unwrap();
    let get = |n: u64, d: u64, s: Scheme| {
        rows.iter().find(|r| r.n_motes == n && r.duration_slots == d && r.scheme == s).unwrap().mean_successes.mean
    };
    let short_ok = ns.iter().filter(|&&n| n > 20).all(|&n| get(n, 128, Scheme::Cdma) > get(n, 128, Scheme::Aloha));
    let long_ok = ns.iter().filter(|&&n| n <= 50).all(|&n| get(n, 1280, Scheme::Aloha) >= get(n, 1280, Scheme::Cdma));
    let same_ok = ns.iter().all(|&n| get(n, 128, Scheme::Cdma) == get(n, 1280, Scheme::Cdma));
    Outcome::new(
        arithmetic_ok && short_ok && long_ok && same_ok,
        format!(
            "128 slots = {short_time} s ({slots} slots); CDMA > ALOHA for n > 20 at 128 slots: {short_ok}; \
             ALOHA >= CDMA for n <= 50 at 1280 slots: {long_ok}; CDMA duration-invariant: {same_ok}; {:.1} s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn run_all_csv(threads: usize, params: &Params) -> Vec<String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| Subcommand::ALL.iter().map(|&sub| harness::run_with(sub, params, DEFAULT_SEED).unwrap()).collect())
}

fn reproducibility() -> Outcome {
    let start = Instant::now();
    let mut params = Params::default();
    // Smaller Monte Carlo sizes keep the single-thread pass short; the
    // seeding scheme is the same as for full-size runs.
    for o in ["trials=20", "ber_max_bits=500000", "scenario2_n_motes=10:20:150", "read_times_s=2,6"] {
        params.apply_override(o).unwrap();
    }
    let a = run_all_csv(4, &params);
    let b = run_all_csv(4, &params);
    let c = run_all_csv(1, &params);
    let mut mismatched = Vec::new();
    for (i, sub) in Subcommand::ALL.iter().enumerate() {
        if a[i] != b[i] || a[i] != c[i] {
            mismatched.push(sub.name());
        }
    }
    Outcome::new(
        mismatched.is_empty(),
        format!(
            "{} CSVs identical across repeat runs and 1 vs 4 workers; mismatches: {}; {:.1} s",
            Subcommand::ALL.len(),
            if mismatched.is_empty() { "none".to_string() } else { mismatched.join(" ") },
            start.elapsed().as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [(&str, Check); 11] = [
        ("Table 1 link budget regression", table1_regression),
        ("received-power crossover", power_crossover),
        ("BER-vs-distance properties", ber_properties),
        ("FEC and Monte Carlo oracles", fec_oracles),
        ("binary tree iterations", tree_iterations),
        ("Scenario 1 anchor", scenario1_anchor),
        ("Scenario 2 anchor", scenario2_anchor),
        ("ALOHA analytic and enumeration oracles", aloha_oracles),
        ("CDMA properties", cdma_properties),
        ("ALOHA vs CDMA comparison anchors", comparison_anchors),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name}: {}", i + 1, outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
