//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wigner_spin::discrete::{rapidity_for_angle, two_point_entropy, two_point_entropy_closed_form};
use wigner_spin::engine::{entropy_curve, find_peak, xi_grid, BoostScenario, EntropyCurve};
use wigner_spin::lorentz::{
    boost_matrix, compose, polar_decompose, wigner_angle, BoostPair, FourMomentum, ThreeVelocity,
};
use wigner_spin::real::vec3;
use wigner_spin::spin::{
    bloch_vector, rotation_angle_of, von_neumann_entropy, wigner_spinor, DensityMatrix,
};
use wigner_spin::wavepacket::{build_grid, x_symmetric_gaussian, GaussianSpec};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{}; {:.2?} (limit {:?})", o.detail, elapsed, limit);
    o.pass &= elapsed < limit;
    o
}

/// Group-theoretic Wigner angle of `Lambda(v2 z) Lambda(v1 n_theta)`.
fn composed_angle(v1: f64, v2: f64, theta: f64) -> f64 {
    let first = boost_matrix(ThreeVelocity::along([theta.sin(), 0.0, theta.cos()], v1).unwrap());
    let second = boost_matrix(ThreeVelocity::along([0.0, 0.0, 1.0], v2).unwrap());
    let (rotation, _) = polar_decompose(&compose(&second, &first)).unwrap();
    rotation.rotation_axis_angle().1
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut rng = StdRng::seed_from_u64(1);
        let mut worst = 0.0_f64;
        for _ in 0..200 {
            let v1 = rng.gen_range(0.05..=0.995);
            let v2 = rng.gen_range(0.05..=0.995);
            let theta = rng.gen_range(0.0..=PI);
            let closed = wigner_angle(BoostPair::new(v1, v2, theta).unwrap());
            worst = worst.max((composed_angle(v1, v2, theta) - closed).abs());
        }
        outcome(
            worst <= 1e-8,
            format!("200 samples, max |dw| = {worst:.2e} rad (tol 1e-8)"),
        )
    })
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut rng = StdRng::seed_from_u64(2);
        let mut worst_angle = 0.0_f64;
        let mut worst_axis = 0.0_f64;
        for i in 0..200 {
            let in_plane = i % 2 == 0;
            let p: [f64; 3] = [
                rng.gen_range(-5.0..5.0),
                if in_plane {
                    0.0
                } else {
                    rng.gen_range(-5.0..5.0)
                },
                rng.gen_range(-5.0..5.0),
            ];
            let xi: f64 = rng.gen_range(0.0..=10.0);
            let k = FourMomentum::on_shell(1.0, p).unwrap();
            let theta = vec3::angle_between(p, [0.0, 0.0, 1.0]);
            let closed = wigner_angle(BoostPair::new(k.speed(), xi.tanh(), theta).unwrap());
            let aa = rotation_angle_of(&wigner_spinor(xi, &k).unwrap());
            worst_angle = worst_angle.max((aa.angle - closed).abs());
            if in_plane {
                if let Some(axis) = aa.axis {
                    worst_axis = worst_axis
                        .max(axis[0].abs())
                        .max(axis[2].abs())
                        .max((axis[1].abs() - 1.0).abs());
                }
            }
        }
        outcome(
            worst_angle <= 1e-8 && worst_axis <= 1e-10,
            format!("200 momenta, max |dw| = {worst_angle:.2e} rad (tol 1e-8), in-plane axis off +-y by {worst_axis:.2e} (tol 1e-10)"),
        )
    })
}

/// `(argmax theta, max omega)` on a 0.01 degree grid, and whether the curve
/// rises then falls with no other turning point.
fn omega_profile(v: f64) -> (f64, f64, bool) {
    let n = 18_000;
    let w: Vec<f64> = (0..=n)
        .map(|i| wigner_angle(BoostPair::new(v, v, PI * i as f64 / n as f64).unwrap()))
        .collect();
    let (imax, &wmax) = w
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let unimodal = imax > 0
        && imax < n
        && w[..=imax].windows(2).all(|p| p[1] > p[0])
        && w[imax..].windows(2).all(|p| p[1] < p[0]);
    (180.0 * imax as f64 / n as f64, wmax.to_degrees(), unimodal)
}

fn criterion_3() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut pass = true;
        let mut parts = Vec::new();
        let mut last_arg = 0.0;
        for v in [0.5, 0.9, 0.985] {
            let (arg, max, unimodal) = omega_profile(v);
            let end = wigner_angle(BoostPair::new(v, v, PI).unwrap());
            pass &= unimodal && arg > last_arg && end < 1e-9;
            last_arg = arg;
            parts.push(format!(
                "v={v}: max {max:.3} deg at {arg:.2} deg, w(180)={end:.1e}"
            ));
        }
        let (arg, max, unimodal) = omega_profile(0.99999);
        pass &= unimodal && arg > last_arg && max >= 175.0;
        parts.push(format!(
            "v=0.99999: max {max:.3} deg at {arg:.2} deg (need >= 175)"
        ));
        outcome(pass, parts.join("; "))
    })
}

fn criterion_4() -> Outcome {
    timed(Duration::from_secs(1), || {
        let theta = 161_f64.to_radians();
        let xi = rapidity_for_angle(0.999, theta, FRAC_PI_2).unwrap();
        let peak = two_point_entropy(0.999, theta, xi).unwrap();
        let late = two_point_entropy(0.999, theta, 8.0).unwrap();
        outcome(
            (peak - 1.0).abs() <= 1e-6 && (2.2..=2.6).contains(&xi) && peak - late >= 0.05,
            format!("w=90 deg at xi={xi:.6}, S={peak:.9}, S(8)={late:.6}"),
        )
    })
}

fn curve(v1: f64, theta_deg: f64, sigma: f64, xi_max: f64, steps: usize) -> EntropyCurve<f64> {
    let xs = xi_grid(0.0, xi_max, steps).unwrap();
    entropy_curve(&BoostScenario::new(v1, theta_deg.to_radians(), sigma, xs, 48).unwrap()).unwrap()
}

fn validity_defect(rho: &DensityMatrix<f64>, entropy: f64) -> Option<String> {
    let (lo, _) = rho.eigenvalues();
    let y = bloch_vector(rho)[1];
    if rho.hermiticity_defect() > 1e-12 {
        Some(format!("hermiticity {:.1e}", rho.hermiticity_defect()))
    } else if (rho.trace() - 1.0).norm() > 1e-10 {
        Some(format!("trace {:?}", rho.trace()))
    } else if lo < -1e-12 {
        Some(format!("eigenvalue {lo:.1e}"))
    } else if !(0.0..=1.0 + 1e-9).contains(&entropy) {
        Some(format!("entropy {entropy}"))
    } else if y.abs() >= 1e-10 {
        Some(format!("tr(rho sigma_y) = {y:.1e}"))
    } else {
        None
    }
}

fn criterion_5(curves: &mut Vec<EntropyCurve<f64>>) -> Outcome {
    timed(Duration::from_secs(120), || {
        let c = curve(0.985, 90.0, 0.01, 6.0, 61);
        let worst = c
            .points
            .iter()
            .map(|p| {
                (p.entropy - two_point_entropy_closed_form(0.985, FRAC_PI_2, p.xi).unwrap()).abs()
            })
            .fold(0.0, f64::max);
        curves.push(c);
        outcome(
            worst <= 0.02,
            format!("61 rapidities on [0, 6], max |S - S_2pt| = {worst:.2e} (tol 0.02)"),
        )
    })
}

/// Frozen `(peak, tail mean over xi in [9, 12])` at 48 nodes per axis and 60
/// rapidities on [0, 12]; 32 nodes reproduces them to 1e-7.
const GOLDEN: [(f64, f64, f64, f64); 4] = [
    (
        0.985,
        45.0,
        0.558_473_826_901_956_9,
        0.558_449_726_823_850_3,
    ),
    (
        0.985,
        90.0,
        0.976_853_057_959_029_5,
        0.976_837_585_272_781_6,
    ),
    (
        0.985,
        135.0,
        0.999_755_912_346_666_4,
        0.923_745_813_536_673_6,
    ),
    (
        0.999,
        161.0,
        0.995_885_367_123_806_8,
        0.431_249_562_068_063_25,
    ),
];

fn tail(c: &EntropyCurve<f64>) -> (f64, f64) {
    let t: Vec<f64> = c
        .points
        .iter()
        .filter(|p| p.xi >= 9.0 && p.xi <= 12.0)
        .map(|p| p.entropy)
        .collect();
    let spread =
        t.iter().cloned().fold(f64::MIN, f64::max) - t.iter().cloned().fold(f64::MAX, f64::min);
    (t.iter().sum::<f64>() / t.len() as f64, spread)
}

fn criterion_6(curves: &mut Vec<EntropyCurve<f64>>) -> Outcome {
    timed(Duration::from_secs(600), || {
        let mut pass = true;
        let mut parts = Vec::new();
        let mut summary = Vec::new();
        for &(v1, theta, gold_peak, gold_tail) in &GOLDEN {
            let c = curve(v1, theta, 1.0, 12.0, 60);
            let (level, spread) = tail(&c);
            let (_, peak) = find_peak(&c).unwrap();
            let golden_ok = (peak - gold_peak).abs() <= 1e-6 && (level - gold_tail).abs() <= 1e-6;
            pass &= golden_ok;
            if v1 == 0.985 {
                pass &= spread < 1e-3;
            }
            parts.push(format!(
                "{theta} deg: tail {level:.6} (spread {spread:.1e}), max {peak:.6}{}",
                if golden_ok { "" } else { " GOLDEN MISMATCH" }
            ));
            summary.push((level, peak));
            curves.push(c);
        }
        let [s45, s90, s135, s161] = [summary[0], summary[1], summary[2], summary[3]];
        pass &= s45.0 < s90.0 && s90.0 <= s135.1;
        pass &= s135.1 > s135.0 && s161.1 > s161.0 && s161.1 >= 0.9;
        outcome(pass, parts.join("; "))
    })
}

fn criterion_7(curves: &[EntropyCurve<f64>]) -> Outcome {
    let mut checked = 0;
    let mut first_bad = None;
    for c in curves {
        if c.points[0].xi == 0.0 && c.points[0].entropy >= 1e-9 {
            first_bad.get_or_insert(format!("S(0) = {:.1e}", c.points[0].entropy));
        }
        for p in &c.points {
            checked += 1;
            let recomputed = von_neumann_entropy(&p.density).unwrap();
            if let Some(d) = validity_defect(&p.density, recomputed) {
                first_bad.get_or_insert(format!("xi={}: {d}", p.xi));
            }
        }
    }
    match first_bad {
        None => outcome(checked > 0, format!("{checked} density matrices valid")),
        Some(d) => outcome(false, d),
    }
}

fn criterion_8() -> Outcome {
    let spec = GaussianSpec::from_scenario(0.985, FRAC_PI_2, 1.0).unwrap();
    let run = |n: usize| {
        let wf = x_symmetric_gaussian(&spec, &build_grid(&spec, n).unwrap()).unwrap();
        let c = entropy_curve(&BoostScenario::new(0.985, FRAC_PI_2, 1.0, vec![6.0], n).unwrap())
            .unwrap();
        (c.points[0].entropy, wf.normalization())
    };
    let (s32, n32) = run(32);
    let (s48, n48) = run(48);
    let ds = (s48 - s32).abs();
    let dn = ((n48 - n32) / n48).abs();
    outcome(
        ds < 1e-3 && dn < 1e-4,
        format!("|dS(xi=6)| = {ds:.2e} (tol 1e-3), |dN|/N = {dn:.2e} (tol 1e-4)"),
    )
}

fn criterion_9() -> Outcome {
    let s = two_point_entropy(0.99999, 179.9_f64.to_radians(), 14.0).unwrap();
    outcome(
        s < 0.05,
        format!("S(v1=0.99999, 179.9 deg, xi=14) = {s:.6} (need < 0.05)"),
    )
}

fn run_figure(figure: &str, dir: &Path) -> Vec<(String, Vec<u8>)> {
    let out = Command::new(env!("CARGO_BIN_EXE_wigner-spin"))
        .args(["--figure", figure, "--no-timestamp", "--output"])
        .arg(dir)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{figure} exited with {}", out.status);
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn criterion_10() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for figure in ["fig1", "fig2a", "fig2b"] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let fa = run_figure(figure, a.path());
        let fb = run_figure(figure, b.path());
        let same = !fa.is_empty() && fa == fb;
        pass &= same;
        parts.push(format!(
            "{figure}: {} files {}",
            fa.len(),
            if same { "identical" } else { "DIFFER" }
        ));
    }
    outcome(pass, parts.join(", "))
}

fn main() {
    let mut curves = Vec::new();
    let results = [
        ("1 closed-form vs composed Wigner angle", criterion_1()),
        ("2 spinor vs vector Wigner rotation", criterion_2()),
        ("3 omega(theta) shape", criterion_3()),
        ("4 two-point bump", criterion_4()),
        (
            "5 narrow packet vs two-point model",
            criterion_5(&mut curves),
        ),
        ("6 wide packet curves", criterion_6(&mut curves)),
        ("7 density matrix validity", criterion_7(&curves)),
        ("8 grid convergence", criterion_8()),
        ("9 vanishing-entanglement limit", criterion_9()),
        ("10 CLI determinism", criterion_10()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "criterion {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
