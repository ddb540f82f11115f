//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so every verdict is printed even when an earlier one fails.

use std::process::ExitCode;

use faa_core::archcomp::{
    angular_resolution_mimo, angular_resolution_virtual, compare, effective_aperture, range_resolution,
    reference_architectures, resolution_cell_volume,
};
use faa_core::fingerprint::{half_power_width, HALF_POWER};
use faa_core::synth::{beat_signal, dechirp_range_profile};
use faa_core::{
    ambiguity_probe, build_dictionary, build_fingerprint, localize, snr_sweep, AntennaModel, AxisRange, ChannelAxis,
    ChirpConfig, Complex64, DispersionModel, FrequencyPlan, Measurement, NoiseConfig, Position, PositionGrid,
    ProbeAxis, Scene, Simulator, Snr, Target,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn within(label: &str, got: f64, want: f64, tol: f64, notes: &mut Vec<String>) -> bool {
    let r = rel(got, want);
    notes.push(format!("{label} {got:.6} vs {want} ({:.2}%)", r * 100.0));
    r <= tol
}

fn verdict(ok: bool, notes: Vec<String>) -> Verdict {
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn reference_plan(m: usize) -> FrequencyPlan {
    FrequencyPlan::new(60e9, 66e9, m).unwrap()
}

fn reference_grid() -> PositionGrid {
    PositionGrid::new(
        AxisRange::new(-1.0, 1.0, 9).unwrap(),
        AxisRange::new(-1.0, 1.0, 9).unwrap(),
        AxisRange::new(1.0, 3.0, 9).unwrap(),
    )
    .unwrap()
}

fn criterion_1() -> Verdict {
    let mut n = vec![];
    let ok = within("range resolution (cm)", range_resolution(6e9) * 100.0, 2.5, 0.01, &mut n);
    verdict(ok, n)
}

fn criterion_2() -> Verdict {
    let mut n = vec![];
    let a = within("M=128 aperture (mm)", effective_aperture(128, 63e9) * 1e3, 304.0, 0.01, &mut n);
    let b = within("M=64 aperture (mm)", effective_aperture(64, 63e9) * 1e3, 152.0, 0.01, &mut n);
    verdict(a && b, n)
}

fn criterion_3() -> Verdict {
    let mut n = vec![];
    let t128 = angular_resolution_virtual(63e9, effective_aperture(128, 63e9)).to_degrees();
    let t64 = angular_resolution_virtual(63e9, effective_aperture(64, 63e9)).to_degrees();
    let tm = angular_resolution_mimo(60e9, 0.12).to_degrees();
    let a = within("virtual M=128 (deg)", t128, 0.9, 0.02, &mut n);
    let b = within("virtual M=64 (deg)", t64, 1.8, 0.02, &mut n);
    let c = within("MIMO (deg)", tm, 1.4, 0.03, &mut n);
    verdict(a && b && c, n)
}

fn criterion_4() -> Verdict {
    let mut n = vec![];
    let dr = range_resolution(6e9);
    let t128 = angular_resolution_virtual(63e9, effective_aperture(128, 63e9));
    let t64 = angular_resolution_virtual(63e9, effective_aperture(64, 63e9));
    let a = within("M=128 cell (m^3)", resolution_cell_volume(t128, t128, dr, 3.0), 5.0e-5, 0.15, &mut n);
    let b = within("M=64 cell (m^3)", resolution_cell_volume(t64, t64, dr, 3.0), 2.0e-4, 0.15, &mut n);
    let report = compare(&reference_architectures(), 3.0).map_err(|e| e.to_string())?;
    let mimo = report.rows.iter().find(|r| r.name == "1T3R-MIMO").ok_or("MIMO row missing")?;
    let factor = (mimo.cell_volume_m3 / 2.5e-2).max(2.5e-2 / mimo.cell_volume_m3);
    n.push(format!("MIMO cell {:.4e} (factor {factor:.3} from 2.5e-2)", mimo.cell_volume_m3));
    let single = report.rows.iter().find(|r| r.name == "FaA-Single").ok_or("single row missing")?;
    let same = rel(single.cell_volume_m3, resolution_cell_volume(t128, t128, dr, 3.0)) < 1e-12;
    verdict(a && b && factor <= 1.5 && same, n)
}

fn criterion_5() -> Verdict {
    let mut n = vec![];
    let report = compare(&reference_architectures(), 3.0).map_err(|e| e.to_string())?;
    let mut ok = true;
    for (name, want) in [("FaA-Single", 530.8), ("FaA-Dual", 132.7), ("1T3R-MIMO", 85.4)] {
        let row = report.rows.iter().find(|r| r.name == name).ok_or("row missing")?;
        let got = row.eta_from_paper_inputs.ok_or("eta from printed inputs missing")?;
        ok &= within(&format!("{name} eta"), got, want, 0.005, &mut n);
        ok &= row.eta_discrepancy && row.paper_eta.is_some();
    }
    let ratio = |a: &str, b: &str| {
        report
            .ratios
            .iter()
            .find(|p| p.numerator == a && p.denominator == b)
            .and_then(|p| p.paper_eta_ratio)
            .unwrap_or(f64::NAN)
    };
    ok &= within("printed ratio single/MIMO", ratio("FaA-Single", "1T3R-MIMO"), 16.0, 0.005, &mut n);
    ok &= within("printed ratio dual/MIMO", ratio("FaA-Dual", "1T3R-MIMO"), 4.0, 0.005, &mut n);
    let table = report.to_text_table();
    let shows_both = ["926.0", "231.0", "58.0", "530.8", "132.7", "85.4", "YES"].iter().all(|s| table.contains(s));
    n.push(format!("table shows computed, printed and flag: {shows_both}"));
    verdict(ok && shows_both, n)
}

fn criterion_6() -> Verdict {
    let plan = reference_plan(128);
    let model = DispersionModel::default_for(&plan);
    let ant = AntennaModel::default();
    let p0 = Position::new(0.0, 0.0, 3.0);
    let offsets = |span: f64, steps: i64| -> Vec<f64> { (-steps..=steps).map(|k| span * k as f64 / steps as f64).collect() };
    let az = ambiguity_probe(&p0, ProbeAxis::Direction(Position::new(1.0, 0.0, 0.0)), &offsets(0.6, 3000), &plan, &model, &ant)
        .map_err(|e| e.to_string())?;
    let rg = ambiguity_probe(&p0, ProbeAxis::Range, &offsets(2.0, 4000), &plan, &model, &ant).map_err(|e| e.to_string())?;
    let mut n = vec![];
    let az_w = az.half_power_width.map(|w| w / 3.0);
    let rg_w = rg.half_power_width;
    let a = match az_w {
        Some(w) => within("azimuth width (rad)", w, 0.015625, 0.25, &mut n),
        None => {
            n.push("azimuth curve never drops below 1/sqrt(2)".into());
            false
        }
    };
    let b = match rg_w {
        Some(w) => within("range width (m)", w, 0.02498, 0.25, &mut n),
        None => {
            n.push("range curve never drops below 1/sqrt(2)".into());
            false
        }
    };
    verdict(a && b, n)
}

/// Independent fingerprint: per-channel unit normalization of the raw
/// samples, pre-scaled by the largest magnitude so tiny gains stay finite.
fn oracle_fingerprint(sx: &[Complex64], sy: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let unit = |v: &[Complex64]| {
        let peak = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let w: Vec<Complex64> = v.iter().map(|c| c / peak).collect();
        let n = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        w.iter().map(|c| c / n).collect::<Vec<_>>()
    };
    (unit(sx), unit(sy))
}

fn oracle_similarity(a: &(Vec<Complex64>, Vec<Complex64>), b: &(Vec<Complex64>, Vec<Complex64>)) -> f64 {
    let dot = |u: &[Complex64], v: &[Complex64]| u.iter().zip(v).map(|(p, q)| p.conj() * q).sum::<Complex64>().norm();
    0.5 * (dot(&a.0, &b.0) + dot(&a.1, &b.1))
}

fn criterion_7() -> Verdict {
    let plan = reference_plan(128);
    let model = DispersionModel::default_for(&plan);
    let ant = AntennaModel::default();
    let sim = Simulator::new(plan, &model, ant).map_err(|e| e.to_string())?;
    let grid = reference_grid();
    let dict = build_dictionary(&grid, &plan, &model, &ant).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut exact = 0;
    let mut worst_score: f64 = 1.0;
    for _ in 0..50 {
        let idx = rng.gen_range(0..grid.len());
        let alpha = Complex64::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(-3.0..3.0));
        let meas = sim.measure(&Scene::single(Target::new(grid.position(idx), alpha).unwrap())).map_err(|e| e.to_string())?;
        let loc = localize(&meas, &dict).map_err(|e| e.to_string())?;
        if loc.grid_index == idx && (loc.score - 1.0).abs() <= 1e-9 {
            exact += 1;
        }
        worst_score = worst_score.min(loc.score);
    }
    let mut n = vec![format!("9x9x9 exact recoveries {exact}/50, lowest score {worst_score:.12}")];

    let mut agree = 0;
    let mut cases = 0;
    let mut clear_cases = 0;
    // geometry kept inside the beam coverage of the sparsest plans so no
    // channel gain underflows to zero; with the reference antenna each
    // channel is dominated by one beam, which makes most grid points tie; the
    // broad-beam antenna mixes several beams per channel and breaks the ties
    let broad = AntennaModel::new(0.01, false).map_err(|e| e.to_string())?;
    let configs = [(2, 5, 5, 5), (4, 3, 4, 5), (8, 5, 5, 5), (8, 5, 2, 3), (1, 5, 5, 5)];
    for (ant, (m, nx, ny, nz)) in [ant, broad].into_iter().flat_map(|a| configs.map(|c| (a, c))) {
        let plan = reference_plan(m);
        let model = DispersionModel::default_for(&plan);
        let sim = Simulator::new(plan, &model, ant).map_err(|e| e.to_string())?;
        let grid = PositionGrid::new(
            AxisRange::new(-0.3, 0.25, nx).unwrap(),
            AxisRange::new(-0.2, 0.3, ny).unwrap(),
            AxisRange::new(1.5, 2.5, nz).unwrap(),
        )
        .unwrap();
        let dict = build_dictionary(&grid, &plan, &model, &ant).map_err(|e| e.to_string())?;
        let refs: Vec<_> = grid
            .positions()
            .map(|p| {
                let sx = sim.channel_response(&p, Complex64::new(1.0, 0.0), ChannelAxis::XScan).unwrap();
                let sy = sim.channel_response(&p, Complex64::new(1.0, 0.0), ChannelAxis::YScan).unwrap();
                oracle_fingerprint(&sx, &sy)
            })
            .collect();
        for trial in 0..10 {
            let p = Position::new(rng.gen_range(-0.35..0.3), rng.gen_range(-0.25..0.35), rng.gen_range(1.4..2.6));
            let snr = if trial % 2 == 0 { Snr::Noiseless } else { Snr::Db(rng.gen_range(-5.0..20.0)) };
            let scene = Scene { targets: vec![Target::unit(p).unwrap()], noise: NoiseConfig { snr, seed: trial } };
            let meas = sim.measure(&scene).map_err(|e| e.to_string())?;
            let q = oracle_fingerprint(meas.s_x(), meas.s_y());
            let scores: Vec<f64> = refs.iter().map(|r| oracle_similarity(r, &q)).collect();
            let best = (0..scores.len()).fold(0, |b, i| if scores[i] > scores[b] { i } else { b });
            let best_s = scores[best];
            let runner_up = scores.iter().enumerate().filter(|&(i, _)| i != best).map(|(_, &s)| s).fold(f64::NEG_INFINITY, f64::max);
            let loc = localize(&meas, &dict).map_err(|e| e.to_string())?;
            cases += 1;
            // the pick must be an oracle maximizer up to rounding, and the
            // exact oracle index whenever its winner is clear of the rest
            let is_max = (scores[loc.grid_index] - best_s).abs() <= 1e-12 && (loc.score - best_s.min(1.0)).abs() <= 1e-12;
            let clear = best_s - runner_up > 1e-9;
            if is_max && (!clear || loc.grid_index == best) {
                agree += 1;
            }
            if clear {
                clear_cases += 1;
            }
        }
    }
    n.push(format!("brute-force agreement {agree}/{cases} ({clear_cases} with a unique winner)"));
    verdict(exact == 50 && worst_score >= 1.0 - 1e-9 && agree == cases, n)
}

fn half_norm_error(meas: &Measurement) -> f64 {
    let fp = build_fingerprint(meas).unwrap();
    [fp.x_half(), fp.y_half()]
        .iter()
        .map(|h| (h.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs())
        .fold(0.0, f64::max)
}

fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|q| {
            x.iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, -std::f64::consts::TAU * (q * k) as f64 / n as f64))
                .sum()
        })
        .collect()
}

fn criterion_8() -> Verdict {
    let mut n = vec![];
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ant = AntennaModel::default();

    // unit half-norms, including extreme reflectivity magnitudes; M >= 8
    // and a ±40° cone keep every target within some beam
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let plan = reference_plan(rng.gen_range(8..=128));
        let sim = Simulator::new(plan, &DispersionModel::default_for(&plan), ant).unwrap();
        let z: f64 = rng.gen_range(0.3..4.0);
        let cone = 40f64.to_radians().tan() * z;
        let p = Position::new(rng.gen_range(-cone..cone), rng.gen_range(-cone..cone), z);
        let mag = 10f64.powf(rng.gen_range(-150.0..150.0));
        let alpha = Complex64::from_polar(mag, rng.gen_range(-3.0..3.0));
        let snr = if rng.gen_bool(0.5) { Snr::Noiseless } else { Snr::Db(rng.gen_range(-10.0..30.0)) };
        let scene = Scene { targets: vec![Target::new(p, alpha).unwrap()], noise: NoiseConfig { snr, seed: rng.gen() } };
        worst = worst.max(half_norm_error(&sim.measure(&scene).unwrap()));
    }
    let plan = reference_plan(32);
    let model = DispersionModel::default_for(&plan);
    let dict = build_dictionary(&reference_grid(), &plan, &model, &ant).unwrap();
    for fp in dict.entries() {
        for h in [fp.x_half(), fp.y_half()] {
            worst = worst.max((h.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs());
        }
    }
    ok &= worst < 1e-12;
    n.push(format!("max half-norm error {worst:.1e}"));

    // argmax invariance under complex scaling
    let sim = Simulator::new(plan, &model, ant).unwrap();
    let mut invariant = true;
    for seed in 0..40 {
        let p = Position::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(1.0..3.0));
        let scene = Scene { targets: vec![Target::unit(p).unwrap()], noise: NoiseConfig { snr: Snr::Db(5.0), seed } };
        let meas = sim.measure(&scene).unwrap();
        let k = Complex64::from_polar(10f64.powf(rng.gen_range(-50.0..50.0)), rng.gen_range(-3.0..3.0));
        invariant &= localize(&meas, &dict).unwrap().grid_index == localize(&meas.scaled(k), &dict).unwrap().grid_index;
    }
    ok &= invariant;
    n.push(format!("argmax scale invariance {invariant}"));

    // superposition of noiseless measurements
    let mut lin_err: f64 = 0.0;
    for _ in 0..50 {
        let t = |rng: &mut ChaCha8Rng| {
            let p = Position::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.5..3.0));
            Target::new(p, Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).unwrap()
        };
        let (a, b) = (t(&mut rng), t(&mut rng));
        let both = sim.noiseless(&Scene { targets: vec![a, b], noise: NoiseConfig::noiseless() }).unwrap();
        let sum = sim.noiseless(&Scene::single(a)).unwrap().sum(&sim.noiseless(&Scene::single(b)).unwrap()).unwrap();
        for axis in ChannelAxis::BOTH {
            let scale = both.channel(axis).iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            for (u, v) in both.channel(axis).iter().zip(sum.channel(axis)) {
                lin_err = lin_err.max((u - v).norm() / scale);
            }
        }
    }
    ok &= lin_err < 1e-12;
    n.push(format!("superposition error {lin_err:.1e}"));

    // worker-count independence
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let d = build_dictionary(&reference_grid(), &plan, &model, &ant).unwrap();
            let target = Target::unit(Position::new(0.3, -0.2, 1.7)).unwrap();
            let sw = snr_sweep(&sim, &d, &[target], &[Snr::Db(0.0), Snr::Db(10.0)], 64, 99).unwrap();
            (d, sw)
        })
    };
    let (d1, s1) = run(1);
    let (d4, s4) = run(4);
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    let same = d1 == d4 && s1.iter().zip(&s4).all(|(a, b)| bits(&a.errors_m) == bits(&b.errors_m));
    ok &= same;
    n.push(format!("1 vs 4 workers bit-identical {same}"));

    // Parseval and peak-bin agreement with a naive DFT
    let chirp = ChirpConfig::for_plan(&reference_plan(128));
    let mut parseval: f64 = 0.0;
    let mut peaks = true;
    for _ in 0..20 {
        let targets: Vec<(f64, Complex64)> = (0..rng.gen_range(1..4))
            .map(|_| (rng.gen_range(0.2..20.0), Complex64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(-3.0..3.0))))
            .collect();
        let x = beat_signal(&chirp, &targets).unwrap();
        let prof = dechirp_range_profile(&chirp, &targets).unwrap();
        let e_t: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>() * x.len() as f64;
        let e_f: f64 = prof.bins.iter().map(|c| c.norm_sqr()).sum();
        parseval = parseval.max(rel(e_f, e_t));
        let naive = naive_dft(&x);
        let naive_peak = (0..naive.len()).fold(0, |b, i| if naive[i].norm() > naive[b].norm() { i } else { b });
        peaks &= naive_peak == prof.peak_bin();
    }
    ok &= parseval < 1e-9 && peaks;
    n.push(format!("Parseval rel error {parseval:.1e}; naive DFT peak agreement {peaks}"));
    verdict(ok, n)
}

fn criterion_9() -> Verdict {
    let plan = reference_plan(128);
    let model = DispersionModel::default_for(&plan);
    let ant = AntennaModel::default();
    let sim = Simulator::new(plan, &model, ant).map_err(|e| e.to_string())?;
    let grid = reference_grid();
    let dict = build_dictionary(&grid, &plan, &model, &ant).map_err(|e| e.to_string())?;
    let truth = grid.position(grid.index(5, 3, 4));
    let snrs = [Snr::Db(-10.0), Snr::Db(0.0), Snr::Db(10.0), Snr::Db(20.0), Snr::Db(30.0), Snr::Noiseless];
    let pts = snr_sweep(&sim, &dict, &[Target::unit(truth).unwrap()], &snrs, 200, 2024).map_err(|e| e.to_string())?;
    let n: Vec<String> = pts
        .iter()
        .map(|p| match p.snr {
            Snr::Db(v) => format!("{v} dB rmse {:.4} m", p.rmse_m),
            Snr::Noiseless => format!("noiseless rmse {:.4} m", p.rmse_m),
        })
        .collect();
    verdict(pts[4].rmse_m < pts[0].rmse_m && pts[5].rmse_m == 0.0, n)
}

fn main() -> ExitCode {
    // sanity check that the shared threshold is what the criteria assume
    assert_eq!(HALF_POWER, std::f64::consts::FRAC_1_SQRT_2);
    assert_eq!(half_power_width(&[(0.0, 1.0), (1.0, 0.0)], 0.5), Some(0.5));

    let criteria: [Criterion; 9] = [
        ("range resolution", criterion_1),
        ("effective aperture", criterion_2),
        ("angular resolution", criterion_3),
        ("resolution cell volume", criterion_4),
        ("architectural efficiency", criterion_5),
        ("simulated resolution recovery", criterion_6),
        ("localization oracle", criterion_7),
        ("property suites", criterion_8),
        ("SNR monotonicity", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} {name}: PASS | {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL | {detail}", i + 1);
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
