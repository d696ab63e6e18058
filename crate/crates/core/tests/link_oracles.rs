//! Independent numerical checks of the closed-form link model.

use std::f64::consts::PI;

use biolink_core::link::{
    link_budget, reference, reflected_impedance, self_inductance, Coil, CoilKind, LoadImpedance, MU0,
};
use num_complex::Complex64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Neumann's formula M = μ0/4π ∮∮ dl₁·dl₂ / |r₁ − r₂| for two coaxial
/// single-turn loops, summed over straight segments.
fn neumann_coaxial(a: f64, b: f64, d: f64, segs_a: usize, segs_b: usize) -> f64 {
    let mut sum = 0.0;
    let da = 2.0 * PI / segs_a as f64;
    let db = 2.0 * PI / segs_b as f64;
    for i in 0..segs_a {
        let t = (i as f64 + 0.5) * da;
        let (p1, dl1) = ([a * t.cos(), a * t.sin(), 0.0], [-a * t.sin() * da, a * t.cos() * da, 0.0]);
        for j in 0..segs_b {
            let s = (j as f64 + 0.5) * db;
            let p2 = [b * s.cos(), b * s.sin(), d];
            let dl2 = [-b * s.sin() * db, b * s.cos() * db, 0.0];
            let r = ((p1[0] - p2[0]).powi(2) + (p1[1] - p2[1]).powi(2) + (p1[2] - p2[2]).powi(2)).sqrt();
            sum += (dl1[0] * dl2[0] + dl1[1] * dl2[1]) / r;
        }
    }
    MU0 / (4.0 * PI) * sum
}

/// Complete elliptic integrals K(k), E(k) by the arithmetic-geometric mean.
fn elliptic_ke(k: f64) -> (f64, f64) {
    let (mut a, mut b) = (1.0, (1.0 - k * k).sqrt());
    let mut c = k;
    let mut sum = 0.5 * c * c;
    let mut pow = 0.5;
    while c.abs() > 1e-16 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow *= 2.0;
        sum += pow * c * c;
    }
    let kk = PI / (2.0 * a);
    (kk, kk * (1.0 - sum))
}

/// Maxwell's exact mutual inductance of two coaxial circular filaments.
fn maxwell_mutual(a: f64, b: f64, d: f64) -> f64 {
    let k2 = 4.0 * a * b / ((a + b).powi(2) + d * d);
    let k = k2.sqrt();
    let (kk, ee) = elliptic_ke(k);
    MU0 * (a * b).sqrt() * ((2.0 / k - k) * kk - 2.0 / k * ee)
}

/// Solenoid as N current-sheet rings of width h/N: ring self-inductance
/// μ0 a (ln(8a/g) − 2) with strip GMD g = 0.2235·width, plus all pairwise
/// Maxwell mutuals.
fn filament_solenoid(turns: u32, radius: f64, height: f64) -> f64 {
    let n = turns as usize;
    let pitch = height / turns as f64;
    let gmd = 0.2235 * pitch;
    let own = MU0 * radius * ((8.0 * radius / gmd).ln() - 2.0);
    let mut total = n as f64 * own;
    for sep in 1..n {
        total += 2.0 * (n - sep) as f64 * maxwell_mutual(radius, radius, sep as f64 * pitch);
    }
    total
}

#[test]
fn elliptic_integrals_known_values() {
    let (k, e) = elliptic_ke(0.0);
    assert!((k - PI / 2.0).abs() < 1e-14 && (e - PI / 2.0).abs() < 1e-14);
    // K(1/√2) = Γ(1/4)² / (4√π)
    let (k, _) = elliptic_ke(0.5f64.sqrt());
    assert!((k - 1.854_074_677_301_372).abs() < 1e-12);
}

#[test]
fn maxwell_and_neumann_agree() {
    for d in [0.01, 0.03, 0.06] {
        let n = neumann_coaxial(0.05, 0.02, d, 720, 360);
        let m = maxwell_mutual(0.05, 0.02, d);
        assert!(rel(n, m) < 1e-3, "d = {d}: {n} vs {m}");
    }
}

#[test]
fn dipole_mutual_within_five_percent_of_neumann() {
    let reader = reference::reader_coil();
    let mote = reference::mote_coil();
    let turns = reader.turns as f64 * mote.turns as f64;
    for d in [0.02, 0.04, 0.06, 0.08] {
        let link = reference::table3_link().with_separation(d);
        let model = link.mutual_inductance().unwrap();
        let oracle = turns * neumann_coaxial(reader.loop_radius, mote.loop_radius, d, 2000, 64);
        assert!(rel(model, oracle) < 0.05, "d = {d}: {model} vs {oracle}");
    }
}

#[test]
fn mutual_scales_with_medium_permeability() {
    let base = reference::table3_link().mutual_inductance().unwrap();
    let cored = reference::table3_link().with_permeability(10.0).mutual_inductance().unwrap();
    assert!(rel(cored, 10.0 * base) < 1e-12);
}

#[test]
fn wheeler_within_five_percent_of_filament_sum() {
    let cases = [(77, 50e-6, 200e-6), (20, 0.01, 0.02), (50, 0.02, 0.05), (275, 0.05, 0.9905)];
    for (turns, radius, height) in cases {
        let coil = Coil {
            kind: CoilKind::Reader,
            turns,
            loop_radius: radius,
            wire_diameter: 1e-6,
            coil_height: height,
            resistivity: 1.68e-8,
            core_rel_permeability: 1.0,
        };
        let wheeler = self_inductance(&coil);
        let oracle = filament_solenoid(turns, radius, height);
        assert!(rel(wheeler, oracle) < 0.05, "{turns} turns a={radius} h={height}: {wheeler} vs {oracle}");
    }
}

/// Solves the coupled reader/mote meshes directly:
/// [Z_r, −jωM; −jωM, Z_b + Z_L]·[I_r; I_b] = [V; 0].
fn mesh_solve(zr: Complex64, zb: Complex64, zl: Complex64, wm: f64, v: f64) -> (Complex64, Complex64) {
    let zm = Complex64::new(0.0, -wm);
    let det = zr * (zb + zl) - zm * zm;
    let ir = Complex64::new(v, 0.0) * (zb + zl) / det;
    let ib = -zm * Complex64::new(v, 0.0) / det;
    (ir, ib)
}

#[test]
fn budget_powers_match_mesh_solution() {
    let loads = [
        LoadImpedance::Matched,
        LoadImpedance::Fixed(Complex64::new(2.0, 0.0)),
        LoadImpedance::Fixed(Complex64::new(0.3, 5.0)),
    ];
    for load in loads {
        for d in [0.01, 0.05, 0.1] {
            for (f, mu) in [(1e6, 1.0), (13.56e6, 1.0), (13.56e6, 10.0)] {
                let mut link = reference::table1_link(f, mu, 6).with_separation(d);
                link.load_impedance = load;
                let noise = reference::table3_noise();
                let budget = link_budget(&link, &noise).unwrap();
                let w = 2.0 * PI * f;
                let zr = link.reader_impedance(f).unwrap();
                let zb = link.mote_impedance(f).unwrap();
                let zl = link.load().unwrap();
                let (ir, ib) = mesh_solve(zr, zb, zl, w * link.mutual_inductance().unwrap(), link.drive_voltage);
                let p_t = (Complex64::new(link.drive_voltage, 0.0) * ir.conj()).re;
                let p_r = ib.norm_sqr() * zl.re;
                assert!(rel(10f64.powf(budget.transmitted_power / 10.0), p_t) < 0.01);
                assert!(rel(budget.mote_power, p_r) < 0.01, "{load:?} d={d} f={f}");

                let refl = reflected_impedance(&link, f).unwrap();
                let z_in = Complex64::new(link.drive_voltage, 0.0) / ir;
                assert!((z_in - zr - refl.mote_on_reader).norm() <= 0.01 * refl.mote_on_reader.norm().max(1e-30));
            }
        }
    }
}
