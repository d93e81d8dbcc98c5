//! Acceptance checks. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::result::Result;
use std::time::{Duration, Instant};

use gravent_core::engine::{self, Execution};
use gravent_core::linalg::hermitian_eigenvalues;
use gravent_core::oracles;
use gravent_core::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit_phases() -> PhaseSet {
    phase_gaps(&GravityConfig::dimensionless(1.0, 1.0, 2.0, 1.0).unwrap()).unwrap()
}

fn random_phases(rng: &mut ChaCha8Rng) -> PhaseSet {
    let l = rng.random_range(0.1..1.0);
    let d = l * rng.random_range(1.05..10.0);
    let cfg = GravityConfig::dimensionless(rng.random_range(0.1..5.0), rng.random_range(0.1..5.0), d, l).unwrap();
    phase_gaps(&cfg).unwrap()
}

fn random_state(rng: &mut ChaCha8Rng) -> PureBipartiteState {
    let mut z = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    PureBipartiteState::normalized([z(), z(), z(), z()]).unwrap()
}

fn random_overlap(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.random_range(0.0..=1.0), rng.random_range(0.0..2.0 * PI))
}

fn within(label: &str, err: f64, tol: f64) -> Result<(), String> {
    if err <= tol {
        Ok(())
    } else {
        Err(format!("{label}: error {err:.3e} exceeds {tol:.0e}"))
    }
}

fn mi(rho: &CMatrix) -> f64 {
    mutual_information(rho).unwrap()
}

fn bell_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = random_phases(&mut rng);
        let t = rng.random_range(0.0..100.0);
        worst = worst.max((mi(&evolve_separable(&PureBipartiteState::bell(), &p, t).rho) - 2.0).abs());
    }
    within("max |I - 2|", worst, 1e-9)?;
    Ok(format!("max |I - 2| = {worst:.1e} over 100 random (p, t)"))
}

fn entanglement_generation() -> Outcome {
    let p = unit_phases();
    let s = PureBipartiteState::uniform_product();
    let period = p.entangling_period();
    let curve = |t: f64| mi(&evolve_separable(&s, &p, t).rho);
    within("I(0)", curve(0.0).abs(), 1e-12)?;
    let times: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0 * period).collect();
    let values: Vec<f64> = times.iter().map(|&t| curve(t)).collect();
    let (imax, &vmax) = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    within("max I", (vmax - 2.0).abs(), 1e-6)?;
    let at = p.entangling_angle(times[imax]).abs();
    within("argmax phase - π", (at - PI).abs(), 1e-9)?;
    let drift = times
        .iter()
        .zip(&values)
        .map(|(&t, &v)| (curve(t + period) - v).abs())
        .fold(0.0, f64::max);
    within("periodicity", drift, 1e-9)?;
    Ok(format!(
        "I(0) = 0, max I = {vmax:.12} at phase π, period drift {drift:.1e}"
    ))
}

fn coherence_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = unit_phases();
    let (mut spread, mut closed_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let s = random_state(&mut rng);
        let m: Vec<f64> = s.amplitudes().iter().map(|z| z.norm()).collect();
        let closed = 2.0 * (m[0] * m[1] + m[0] * m[2] + m[0] * m[3] + m[1] * m[2] + m[1] * m[3] + m[2] * m[3]);
        let values: Vec<f64> = (0..50)
            .map(|i| l1_coherence(&evolve_separable(&s, &p, i as f64 * 0.913).rho).unwrap())
            .collect();
        let hi = values.iter().cloned().fold(f64::MIN, f64::max);
        let lo = values.iter().cloned().fold(f64::MAX, f64::min);
        spread = spread.max(hi - lo);
        closed_err = closed_err.max((values[0] - closed).abs());
    }
    within("spread", spread, 1e-10)?;
    within("closed form", closed_err, 1e-12)?;
    Ok(format!("spread {spread:.1e}, closed-form error {closed_err:.1e}"))
}

fn orthogonal_reduction() -> Outcome {
    let p = unit_phases();
    let bell = mi(&evolve_orthogonal(&PureBipartiteState::bell()).rho);
    let uni = mi(&evolve_orthogonal(&PureBipartiteState::uniform_product()).rho);
    within("I_ge(Bell) - 1", (bell - 1.0).abs(), 1e-10)?;
    within("I_ge(uniform)", uni.abs(), 1e-10)?;
    for s in [PureBipartiteState::bell(), PureBipartiteState::uniform_product()] {
        let bits = |t: f64| -> Vec<u64> {
            let rho = evolve(&s, &p, t, &FieldModel::Orthogonal).unwrap().rho;
            hermitian_eigenvalues(&rho)
                .unwrap()
                .iter()
                .map(|x| x.to_bits())
                .collect()
        };
        let first = bits(0.0);
        if (1..100).any(|i| bits(i as f64 * 0.37) != first) {
            return Err("spectrum changes with t".into());
        }
    }
    Ok(format!(
        "I_ge(Bell) = {bell}, I_ge(uniform) = {uni}, spectra bit-identical over 100 times"
    ))
}

fn overlap_endpoints() -> Outcome {
    within("igb(0) - 1", (oracles::igb_closed(0.0) - 1.0).abs(), 1e-12)?;
    within("igb(1) - 2", (oracles::igb_closed(1.0) - 2.0).abs(), 1e-12)?;
    within("igd(0)", oracles::igd_closed(0.0).abs(), 1e-12)?;
    let p = unit_phases();
    let mut worst: f64 = 0.0;
    for (s, oracle) in [
        (
            PureBipartiteState::uniform_product(),
            oracles::igd_closed as fn(f64) -> f64,
        ),
        (PureBipartiteState::bell(), oracles::igb_closed),
    ] {
        let curve: Vec<f64> = (0..=100)
            .map(|i| {
                let k = i as f64 / 100.0;
                let v = mi(&evolve_overlap(&s, &p, 1.0, c(k, 0.0), Reduction::PaperLiteral)
                    .unwrap()
                    .rho);
                worst = worst.max((v - oracle(k)).abs());
                v
            })
            .collect();
        if let Some(i) = curve.windows(2).position(|w| w[1] < w[0]) {
            return Err(format!(
                "curve decreases between k = {} and k = {}",
                i as f64 / 100.0,
                (i + 1) as f64 / 100.0
            ));
        }
    }
    within("pipeline vs oracle", worst, 1e-9)?;
    Ok(format!(
        "endpoints exact, pipeline vs oracle {worst:.1e}, both curves monotone"
    ))
}

fn coherence_closed_forms() -> Outcome {
    let p = unit_phases();
    let mut worst: f64 = 0.0;
    for i in 0..=100 {
        let k = i as f64 / 100.0;
        for (s, closed) in [
            (PureBipartiteState::uniform_product(), 2.0 * k / (2.0 + k * k)),
            (PureBipartiteState::bell(), 2.0 * k / (1.0 + k * k)),
        ] {
            let rho = evolve_overlap(&s, &p, 0.5, c(k, 0.0), Reduction::PaperLiteral)
                .unwrap()
                .rho;
            worst = worst.max((l1_coherence(&rho).unwrap() - closed).abs());
        }
    }
    within("coherence", worst, 1e-12)?;
    Ok(format!("max error {worst:.1e} on the 101-point k grid"))
}

fn branch_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = unit_phases();
    let (mut prob_err, mut fid_spread): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let q = UnknownQubit::new(rng.random_range(0.0..=PI), rng.random_range(0.0..2.0 * PI)).unwrap();
        let t = rng.random_range(0.0..50.0);
        let field = FieldModel::overlap(random_overlap(&mut rng), Reduction::PaperLiteral).unwrap();
        let branches = TeleportCircuit::new(&p, t, &field).unwrap().run_all(&q).unwrap();
        let fids: Vec<f64> = branches.iter().map(|b| branch_fidelity(&q, b).unwrap()).collect();
        for b in &branches {
            prob_err = prob_err.max((b.probability - 0.25).abs());
        }
        let hi = fids.iter().cloned().fold(f64::MIN, f64::max);
        let lo = fids.iter().cloned().fold(f64::MAX, f64::min);
        fid_spread = fid_spread.max(hi - lo);
    }
    within("probability - 1/4", prob_err, 1e-10)?;
    within("fidelity spread", fid_spread, 1e-10)?;
    let mut t0_err: f64 = 0.0;
    for _ in 0..20 {
        let q = UnknownQubit::new(rng.random_range(0.0..=PI), rng.random_range(0.0..2.0 * PI)).unwrap();
        for b in TeleportCircuit::new(&p, 0.0, &FieldModel::Separable)
            .unwrap()
            .run_all(&q)
            .unwrap()
        {
            t0_err = t0_err.max((branch_fidelity(&q, &b).unwrap() - 1.0).abs());
        }
    }
    within("t = 0 fidelity", t0_err, 1e-12)?;
    Ok(format!(
        "probability error {prob_err:.1e}, fidelity spread {fid_spread:.1e}, t = 0 error {t0_err:.1e}"
    ))
}

fn averaged_fidelity_curves() -> Outcome {
    let p = unit_phases();
    let times = engine::linspace(0.0, 2.0 * p.teleport_period(), 50);
    let ks = engine::linspace(0.0, 1.0, 11);
    let grid = engine::cartesian(&times, &ks);
    let quad = |t: f64, field: &FieldModel| {
        averaged_fidelity(&p, t, field, AveragingMethod::Quadrature)
            .unwrap()
            .fbar
    };

    let errs = engine::map(&grid, Execution::Parallel, |&(t, k)| {
        let x = p.angle3(t);
        let closed = 2.0 / 3.0 * (1.0 + k / (k * k + 1.0) * x.cos());
        (quad(t, &FieldModel::overlap_real(k).unwrap()) - closed).abs()
    });
    let overlap_err = errs.into_iter().fold(0.0, f64::max);
    let errs = engine::map(&times, Execution::Parallel, |&t| {
        let closed = 2.0 / 3.0 + p.angle3(t).cos() / 3.0;
        (quad(t, &FieldModel::Separable) - closed).abs()
    });
    let sep_err = errs.into_iter().fold(0.0, f64::max);
    within("separable", sep_err, 1e-8)?;
    within("overlap", overlap_err, 1e-8)?;

    let half = PI * p.hbar / p.delta3.abs();
    let top = quad(0.0, &FieldModel::Separable);
    let bottom = quad(half, &FieldModel::Separable);
    within("max F̄ - 1", (top - 1.0).abs(), 1e-10)?;
    within("min F̄ - 1/3", (bottom - 1.0 / 3.0).abs(), 1e-10)?;
    Ok(format!(
        "separable error {sep_err:.1e}, overlap error {overlap_err:.1e} on 50×11, extrema {top:.12} / {bottom:.12}"
    ))
}

fn longtime_limit() -> Outcome {
    let p = unit_phases();
    let start = Instant::now();
    let avg = longtime_average(&p, &FieldModel::Separable, 100.0 * p.teleport_period()).unwrap();
    let elapsed = start.elapsed();
    within("average - 2/3", (avg - 2.0 / 3.0).abs(), 1e-9)?;
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("average {avg:.12} in {elapsed:.2?}"))
}

fn reduction_discrepancy() -> Outcome {
    let p = unit_phases();
    let s = PureBipartiteState::bell();
    let spectrum =
        |k: f64, r: Reduction| hermitian_eigenvalues(&evolve_overlap(&s, &p, 0.8, c(k, 0.0), r).unwrap().rho).unwrap();
    for k in [0.0, 1.0] {
        let a = spectrum(k, Reduction::PaperLiteral);
        let b = spectrum(k, Reduction::GramTrace);
        let diff = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        within(&format!("spectra at k = {k}"), diff, 1e-10)?;
    }
    let lit = spectrum(0.5, Reduction::PaperLiteral);
    let gram = spectrum(0.5, Reduction::GramTrace);
    let (gap_lit, gap_gram) = (lit[0] - lit[1], gram[0] - gram[1]);
    within("literal gap - 0.8", (gap_lit - 0.8).abs(), 1e-10)?;
    within("gram gap - 0.5", (gap_gram - 0.5).abs(), 1e-10)?;
    if (gap_lit - gap_gram).abs() < 1e-3 {
        return Err("reductions agree at k = 0.5".into());
    }
    Ok(format!(
        "agree at k = 0, 1; at k = 0.5 gaps differ: {gap_lit:.12} vs {gap_gram:.12}"
    ))
}

fn oracle_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = random_phases(&mut rng);
        let s = random_state(&mut rng);
        let t = rng.random_range(0.0..100.0);
        let pipeline = mi(&evolve_separable(&s, &p, t).rho);
        let closed = oracles::mutual_info_pure(&oracles::spectrum_from_k(oracles::k1(&s, &p, t)).unwrap());
        worst = worst.max((pipeline - closed).abs());
    }
    within("pipeline vs spectrum_from_k ∘ k1", worst, 1e-9)?;
    Ok(format!("max error {worst:.1e} over 1000 random states/times"))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(
        &cfg,
        "state = 0.3,0.1; 0.5,-0.2; 0.1,0.6; 0.4898979485566356,0\nfield = overlap\nk_im = 0.1\nt_steps = 40\nk_steps = 25\n",
    )
    .map_err(|e| e.to_string())?;
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_gravent"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
        }
        Ok(out.stdout)
    };
    let a = run(&["figure", "fig3b"])?;
    let b = run(&["figure", "fig3b"])?;
    if a != b || a.is_empty() {
        return Err("figure fig3b output differs between runs".into());
    }
    let cfg = cfg.to_str().unwrap();
    let one = run(&["sweep", "--config", cfg, "--jobs", "1"])?;
    let eight = run(&["sweep", "--config", cfg, "--jobs", "8"])?;
    if one != eight {
        return Err("sweep output depends on --jobs".into());
    }
    let rows = one.iter().filter(|&&b| b == b'\n').count() - 1;
    Ok(format!(
        "fig3b byte-identical twice; {rows}-row sweep identical for --jobs 1 and 8"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Bell-state invariance", bell_invariance),
        ("entanglement generation", entanglement_generation),
        ("coherence conservation", coherence_conservation),
        ("orthogonal reduction", orthogonal_reduction),
        ("overlap endpoints", overlap_endpoints),
        ("coherence closed forms", coherence_closed_forms),
        ("teleportation branch structure", branch_structure),
        ("averaged fidelity", averaged_fidelity_curves),
        ("long-time limit", longtime_limit),
        ("reduction discrepancy", reduction_discrepancy),
        ("oracle independence", oracle_independence),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
