//! Acceptance run: one PASS/FAIL line per primary criterion.
//!
//! Runs without the libtest harness so the lines are always printed; exits
//! non-zero when any criterion fails.

use std::process::{Command, ExitCode};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tower::ServiceExt;

use tractus::geometry::{Articulator, PrototypeLibrary};
use tractus::params::{neutral, Constrictor, ControlState, Manner, Place};
use tractus::presets::PhonemeEntry;
use tractus::sequencer::{sample_frames, Curve, Keyframe, Timeline};
use tractus::solver::{active_constrictions, place_contact_distance, vocalic_weights, ArticulatorFrame};
use tractus::views::{
    compute_palatal_contact, render_sagittal, Cell, ContactMap, ContactOptions, Primitive, SagittalOptions,
};
use tractus::{solve, Model};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn model() -> &'static Model {
    Model::bundled()
}

fn lib() -> &'static PrototypeLibrary {
    &model().library
}

fn preset(sampa: &str) -> &'static PhonemeEntry {
    model().inventory.lookup(sampa).unwrap()
}

fn frame_of(state: &ControlState) -> ArticulatorFrame {
    solve(lib(), state).unwrap()
}

fn consonants() -> impl Iterator<Item = &'static PhonemeEntry> {
    model().inventory.list().iter().filter(|e| e.class.is_consonant())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn endpoint_fidelity() -> Outcome {
    let vowels = &lib().vowels;
    let mut worst: f64 = 0.0;
    for ((hl, fb), name, proto) in
        [((1.0, 1.0), "i", &vowels.i), ((1.0, -1.0), "u", &vowels.u), ((-1.0, 0.0), "a", &vowels.a)]
    {
        let mut s = neutral();
        s.vocalic.high_low = hl;
        s.vocalic.front_back = fb;
        let f = frame_of(&s);
        for a in Articulator::ALL {
            let dev = f.contour(a).max_vertex_deviation(&proto[&a]);
            worst = worst.max(dev);
            ensure(dev <= 1e-9, || format!("/{name}/ {a:?} deviates by {dev:e}"))?;
        }
    }
    Ok(format!("max vertex deviation {worst:e}"))
}

/// Independent barycentric oracle: grid search over the simplex, refined
/// down to a 1e-6 step, then the closed-form solve of the 2x2 system
/// written with I as the origin.
fn oracle_weights(p: (f64, f64)) -> (f64, f64, f64) {
    let (i, u, a) = ((1.0, 1.0), (1.0, -1.0), (-1.0, 0.0));
    let err = |wi: f64, wu: f64| {
        let wa = 1.0 - wi - wu;
        let x = wi * i.0 + wu * u.0 + wa * a.0 - p.0;
        let y = wi * i.1 + wu * u.1 + wa * a.1 - p.1;
        x * x + y * y
    };
    let (mut ci, mut cu, mut step) = (1.0 / 3.0, 1.0 / 3.0, 0.05);
    while step > 1e-6 {
        let mut best = (err(ci, cu), ci, cu);
        for di in -10..=10 {
            for du in -10..=10 {
                let (wi, wu) = (ci + di as f64 * step, cu + du as f64 * step);
                if wi < 0.0 || wu < 0.0 || wi + wu > 1.0 {
                    continue;
                }
                let e = err(wi, wu);
                if e < best.0 {
                    best = (e, wi, wu);
                }
            }
        }
        (ci, cu) = (best.1, best.2);
        step /= 4.0;
    }
    // p - I = wu (U - I) + wa (A - I)
    let (ux, uy) = (u.0 - i.0, u.1 - i.1);
    let (ax, ay) = (a.0 - i.0, a.1 - i.1);
    let (px, py) = (p.0 - i.0, p.1 - i.1);
    let det = ux * ay - uy * ax;
    let wu = (px * ay - py * ax) / det;
    let wa = (ux * py - uy * px) / det;
    let exact = (1.0 - wu - wa, wu, wa);
    assert!((exact.0 - ci).abs() < 1e-5 && (exact.1 - cu).abs() < 1e-5, "grid search disagrees with the closed form");
    exact
}

fn neutral_weights() -> Outcome {
    let (oi, ou, oa) = oracle_weights((0.0, 0.0));
    ensure((oi - 0.25).abs() <= 1e-12 && (ou - 0.25).abs() <= 1e-12 && (oa - 0.5).abs() <= 1e-12, || {
        format!("oracle gives ({oi}, {ou}, {oa})")
    })?;
    let w = vocalic_weights(0.0, 0.0);
    let dev = (w.w_i - oi).abs().max((w.w_u - ou).abs()).max((w.w_a - oa).abs());
    ensure(dev <= 1e-12, || format!("weights {w:?} differ from oracle by {dev:e}"))?;
    Ok(format!("(wI, wU, wA) = ({}, {}, {})", w.w_i, w.w_u, w.w_a))
}

/// Columns whose stations are nearer to `place` than to any other lingual place.
fn place_band(map: &ContactMap, place: Place) -> Vec<usize> {
    let stations: Vec<(Place, f64)> =
        [Place::Dental, Place::Alveolar, Place::Postalveolar, Place::Palatal, Place::Velar]
            .into_iter()
            .map(|p| (p, lib().closure_targets[&p].station.x))
            .collect();
    (0..map.cols)
        .filter(|&c| {
            let x = map.stations[c];
            let nearest = stations.iter().min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs())).unwrap();
            nearest.0 == place
        })
        .collect()
}

fn closure_exactness() -> Outcome {
    let mut checked = Vec::new();
    for e in consonants() {
        let f = frame_of(&e.state);
        let active = active_constrictions(&e.state.consonantal, &e.state.discrete);
        ensure(!active.is_empty(), || format!("[{}] has no active constriction", e.sampa))?;
        let map = compute_palatal_contact(lib(), &f, ContactOptions::default()).unwrap();
        for (k, _, place, manner) in active.into_iter().filter(|a| a.1 == 1.0) {
            let d = place_contact_distance(&f, lib(), place, manner);
            ensure(d <= 1e-9, || format!("[{}] {place} distance {d:e}", e.sampa))?;
            if k == Constrictor::Lips {
                ensure(map.labial != Cell::NoContact, || format!("[{}] labial cell empty", e.sampa))?;
            } else {
                let band = place_band(&map, place);
                let hits = map.cells(Cell::Contact).filter(|(_, col)| band.contains(col)).count();
                ensure(hits > 0, || format!("[{}] no contact in the {place} band", e.sampa))?;
            }
        }
        checked.push(e.sampa.as_str());
    }
    let t = compute_palatal_contact(lib(), &frame_of(&preset("t").state), ContactOptions::default()).unwrap();
    let k = compute_palatal_contact(lib(), &frame_of(&preset("k").state), ContactOptions::default()).unwrap();
    let in_band = |m: &ContactMap, p| {
        let band = place_band(m, p);
        m.cells(Cell::Contact).all(|(_, c)| band.contains(&c))
    };
    ensure(in_band(&t, Place::Alveolar), || "[t] contact outside the alveolar band".into())?;
    ensure(in_band(&k, Place::Velar), || "[k] contact outside the velar band".into())?;
    Ok(format!("{} consonant presets: {}", checked.len(), checked.join(" ")))
}

fn aperture_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ac7);
    let mut series = 0;
    for base in 0..5 {
        let mut s = neutral();
        s.vocalic.high_low = rng.random_range(-1.0..=1.0);
        s.vocalic.front_back = rng.random_range(-1.0..=1.0);
        s.vocalic.rounding = rng.random_range(-1.0..=1.0);
        for k in Constrictor::ALL {
            let mut prev = f64::INFINITY;
            for step in 0..=10 {
                let mut st = s;
                st.consonantal.set_degree(k, step as f64 / 10.0);
                let ap = frame_of(&st).derived.aperture(k);
                ensure(ap <= prev, || {
                    format!("base {base} {k:?}: aperture rises to {ap} at c = {}", step as f64 / 10.0)
                })?;
                prev = ap;
            }
            series += 1;
        }
    }
    Ok(format!("{series} series of 11 samples non-increasing"))
}

fn voicing_contract() -> Outcome {
    let wt = frame_of(&preset("t").state).derived.glottal_width;
    let wd = frame_of(&preset("d").state).derived.glottal_width;
    ensure(wt > 0.0 && wd == 0.0, || format!("glottalWidth t = {wt}, d = {wd}"))?;
    let mut pairs = Vec::new();
    for vl in consonants().filter(|e| e.state.phonatory.glottal_aperture > 0.0) {
        let mut key = vl.state;
        key.phonatory.glottal_aperture = 0.0;
        let voiced: Vec<_> = consonants().filter(|e| e.state == key).collect();
        ensure(voiced.len() == 1, || format!("[{}] has {} voiced counterparts", vl.sampa, voiced.len()))?;
        pairs.push(format!("{}/{}", vl.sampa, voiced[0].sampa));
    }
    ensure(pairs.len() >= 6, || format!("only {} pairs", pairs.len()))?;
    Ok(format!("t {wt:.3} > d 0; pairs {}", pairs.join(" ")))
}

fn nasality_contract() -> Outcome {
    let mut open: Vec<&str> = consonants()
        .filter(|e| frame_of(&e.state).derived.velopharyngeal_opening > 0.0)
        .map(|e| e.sampa.as_str())
        .collect();
    open.sort_unstable();
    ensure(open == ["N", "m", "n"], || format!("open port for {open:?}"))?;
    Ok(format!("open port exactly for {}", open.join(" ")))
}

fn airflow_blocking() -> Outcome {
    let mut checked = Vec::new();
    for e in model().inventory.list() {
        let f = frame_of(&e.state);
        if f.derived.velopharyngeal_opening > 0.0 {
            continue;
        }
        let closures: Vec<f64> = active_constrictions(&e.state.consonantal, &e.state.discrete)
            .into_iter()
            .filter(|(_, _, place, manner)| {
                *manner == Manner::Full && place_contact_distance(&f, lib(), *place, *manner) <= 1e-9
            })
            .map(|(_, _, place, _)| lib().closure_targets[&place].station.x)
            .collect();
        let Some(closure_x) = closures.into_iter().reduce(f64::max) else { continue };
        let scene = render_sagittal(lib(), &f, SagittalOptions { overlay: None, show_airflow: true });
        let arrows: Vec<_> = scene.primitives().filter(|p| matches!(p, Primitive::Arrow { .. })).collect();
        ensure(!arrows.is_empty(), || format!("[{}] has no airflow arrows", e.sampa))?;
        for a in arrows {
            let min_x = a.points().iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
            ensure(min_x >= closure_x, || {
                format!("[{}] arrow at x = {min_x:.3} anterior to closure {closure_x:.3}", e.sampa)
            })?;
        }
        checked.push(e.sampa.as_str());
    }
    ensure(!checked.is_empty(), || "no preset with an oral closure".into())?;
    Ok(format!("checked {}", checked.join(" ")))
}

fn animation_fidelity() -> Outcome {
    let a = preset("a").state;
    let t = preset("t").state;
    let timeline = Timeline::new(vec![
        Keyframe { time: 0.0, state: a, curve: Curve::Linear },
        Keyframe { time: 1.0, state: t, curve: Curve::Linear },
    ])
    .unwrap();
    let frames = sample_frames(lib(), &timeline, 25.0).unwrap();
    ensure(frames.len() == 26, || format!("{} frames", frames.len()))?;
    for (idx, state) in [(0, a), (25, t)] {
        let direct = frame_of(&state);
        let sampled = &frames[idx];
        let same = sampled.frame == direct
            && serde_json::to_string(&sampled.frame).unwrap() == serde_json::to_string(&direct).unwrap()
            && Articulator::ALL.iter().all(|art| {
                sampled
                    .frame
                    .contour(*art)
                    .points
                    .iter()
                    .zip(&direct.contour(*art).points)
                    .all(|(p, q)| p.x.to_bits() == q.x.to_bits() && p.y.to_bits() == q.y.to_bits())
            });
        ensure(same, || format!("frame at t = {} differs from direct solve", sampled.time))?;
    }
    Ok("26 frames; keyframe frames bit-identical".into())
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = tmp.path().join(format!("render{k}.svg"));
        let status = Command::new(env!("CARGO_BIN_EXE_tractus"))
            .args(["render", "--phoneme", "t", "--view", "composite", "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("render exited with {status}"))?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "CLI render outputs differ".into())?;

    let rt = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
    let bodies = rt.block_on(async {
        let slot = std::sync::Arc::new(std::sync::OnceLock::new());
        let _ = slot.set(model().clone());
        let app = tractus::service::router(slot, None);
        let mut bodies = Vec::new();
        for _ in 0..2 {
            let req = Request::get("/api/render?phoneme=t&view=composite").body(Body::empty()).unwrap();
            let resp = app.clone().oneshot(req).await.unwrap();
            assert_eq!(resp.status(), StatusCode::OK);
            bodies.push(resp.into_body().collect().await.unwrap().to_bytes());
        }
        bodies
    });
    ensure(bodies[0] == bodies[1], || "/api/render bodies differ".into())?;
    ensure(bodies[0].as_ref() == outputs[0].as_slice(), || "service and CLI disagree".into())?;
    Ok(format!("CLI and service both byte-identical ({} bytes)", outputs[0].len()))
}

fn lateral_seal_toggle() -> Outcome {
    let f = frame_of(&preset("t").state);
    let off =
        compute_palatal_contact(lib(), &f, ContactOptions { synthesize_lateral_seal: false, ..Default::default() })
            .unwrap();
    let on = compute_palatal_contact(lib(), &f, ContactOptions { synthesize_lateral_seal: true, ..Default::default() })
        .unwrap();
    let margins = |m: &ContactMap| m.cells(Cell::Contact).filter(|(r, _)| *r == 0 || *r == m.rows - 1).count();
    ensure(margins(&off) == 0, || format!("{} margin cells without the seal", margins(&off)))?;
    let from = on.column_at(lib().closure_targets[&Place::Alveolar].station.x);
    let to = on.column_at(lib().closure_targets[&Place::Velar].station.x);
    for c in from..=to {
        for r in [0, on.rows - 1] {
            ensure(on.cell(r, c) == Cell::Contact, || format!("margin row {r} col {c} open with the seal"))?;
        }
    }
    Ok(format!("off: 0 margin cells; on: rows 0 and {} filled over cols {from}..={to}", on.rows - 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("endpoint fidelity", endpoint_fidelity),
        ("neutral weights", neutral_weights),
        ("closure exactness", closure_exactness),
        ("aperture monotonicity", aperture_monotonicity),
        ("voicing contract", voicing_contract),
        ("nasality contract", nasality_contract),
        ("airflow blocking", airflow_blocking),
        ("animation fidelity", animation_fidelity),
        ("determinism", determinism),
        ("lateral seal toggle", lateral_seal_toggle),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS  {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL  {name}: panicked");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
