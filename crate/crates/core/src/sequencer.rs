//! Keyframe timelines and frame sampling.

use serde::{Deserialize, Serialize};

use crate::geometry::PrototypeLibrary;
use crate::params::{blend, ControlState, ValidationErrors};
use crate::presets::Inventory;
use crate::solver::{solve, ArticulatorFrame};

/// Keyframe times closer than this to a sample time count as hit exactly.
pub const TIME_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Curve {
    Linear,
    #[default]
    Smoothstep,
}

impl Curve {
    pub fn apply(self, u: f64) -> f64 {
        match self {
            Curve::Linear => u,
            Curve::Smoothstep => u * u * (3.0 - 2.0 * u),
        }
    }
}

/// `curve` shapes the segment from this keyframe to the next.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Keyframe {
    pub time: f64,
    pub state: ControlState,
    #[serde(default)]
    pub curve: Curve,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct Timing {
    pub segment_duration: f64,
    pub transition_fraction: f64,
    pub curve: Curve,
}

impl Default for Timing {
    fn default() -> Self {
        Timing { segment_duration: 0.15, transition_fraction: 0.4, curve: Curve::Smoothstep }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SequenceError {
    #[error("empty phoneme sequence")]
    EmptySequence,
    #[error("invalid timing: {0}")]
    InvalidTiming(String),
    #[error("unknown phoneme {0:?}")]
    UnknownPhoneme(String),
    #[error("keyframe {index}: {errors}")]
    InvalidKeyframe { index: usize, errors: ValidationErrors },
    #[error("frame rate must be positive and finite, got {0}")]
    InvalidFps(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timeline {
    keyframes: Vec<Keyframe>,
}

impl Timeline {
    /// Checks ordering, time values and states.
    pub fn new(keyframes: Vec<Keyframe>) -> Result<Timeline, SequenceError> {
        if keyframes.is_empty() {
            return Err(SequenceError::EmptySequence);
        }
        for (i, k) in keyframes.iter().enumerate() {
            if !k.time.is_finite() || k.time < 0.0 {
                return Err(SequenceError::InvalidTiming(format!("keyframe {i} has time {}", k.time)));
            }
            if i > 0 && k.time <= keyframes[i - 1].time {
                return Err(SequenceError::InvalidTiming(format!("keyframe {i} does not follow keyframe {}", i - 1)));
            }
            k.state.check().map_err(|errors| SequenceError::InvalidKeyframe { index: i, errors })?;
        }
        Ok(Timeline { keyframes })
    }

    pub fn keyframes(&self) -> &[Keyframe] {
        &self.keyframes
    }

    pub fn start(&self) -> f64 {
        self.keyframes[0].time
    }

    pub fn end(&self) -> f64 {
        self.keyframes[self.keyframes.len() - 1].time
    }

    pub fn span(&self) -> f64 {
        self.end() - self.start()
    }

    /// Control state at `t`, clamped to the timeline span.
    pub fn state_at(&self, t: f64) -> ControlState {
        let ks = &self.keyframes;
        if let Some(k) = ks.iter().find(|k| (k.time - t).abs() <= TIME_EPS) {
            return k.state;
        }
        if t <= self.start() {
            return ks[0].state;
        }
        if t >= self.end() {
            return ks[ks.len() - 1].state;
        }
        let i = ks.partition_point(|k| k.time <= t) - 1;
        let (a, b) = (&ks[i], &ks[i + 1]);
        if a.state == b.state {
            return a.state;
        }
        let u = a.curve.apply((t - a.time) / (b.time - a.time)).clamp(0.0, 1.0);
        blend(&a.state, &b.state, u).expect("u lies in [0, 1]")
    }
}

/// One hold per phoneme, joined by transitions of `transition_fraction` of a
/// segment centred on each segment boundary.
pub fn from_phoneme_string(inventory: &Inventory, symbols: &str, timing: Timing) -> Result<Timeline, SequenceError> {
    let Timing { segment_duration: d, transition_fraction: f, curve } = timing;
    if !(d.is_finite() && d > 0.0) {
        return Err(SequenceError::InvalidTiming(format!("segmentDuration must be positive, got {d}")));
    }
    if !(f > 0.0 && f < 1.0) {
        return Err(SequenceError::InvalidTiming(format!("transitionFraction must lie in (0, 1), got {f}")));
    }
    let entries = inventory.tokenize(symbols).map_err(|e| SequenceError::UnknownPhoneme(e.0))?;
    if entries.is_empty() {
        return Err(SequenceError::EmptySequence);
    }
    let n = entries.len();
    let half = 0.5 * f * d;
    let mut keyframes = Vec::with_capacity(2 * n);
    for (i, e) in entries.iter().enumerate() {
        let start = if i == 0 { 0.0 } else { i as f64 * d + half };
        let end = if i + 1 == n { n as f64 * d } else { (i + 1) as f64 * d - half };
        keyframes.push(Keyframe { time: start, state: e.state, curve });
        keyframes.push(Keyframe { time: end, state: e.state, curve });
    }
    Timeline::new(keyframes)
}

/// Sample times: the `1 / fps` grid over the span, plus the final keyframe
/// time when it falls off the grid.
pub fn sample_times(timeline: &Timeline, fps: f64) -> Result<Vec<f64>, SequenceError> {
    if !(fps.is_finite() && fps > 0.0) {
        return Err(SequenceError::InvalidFps(fps));
    }
    let (t0, span) = (timeline.start(), timeline.span());
    let n = (span * fps + TIME_EPS).floor() as usize;
    let mut times: Vec<f64> = (0..=n).map(|k| t0 + k as f64 / fps).collect();
    let last = times[n];
    if (timeline.end() - last).abs() > TIME_EPS {
        times.push(timeline.end());
    }
    Ok(times)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimedFrame {
    pub time: f64,
    #[serde(flatten)]
    pub frame: ArticulatorFrame,
}

pub fn sample_frames(lib: &PrototypeLibrary, timeline: &Timeline, fps: f64) -> Result<Vec<TimedFrame>, SequenceError> {
    sample_times(timeline, fps)?
        .into_iter()
        .enumerate()
        .map(|(i, time)| {
            let frame = solve(lib, &timeline.state_at(time))
                .map_err(|errors| SequenceError::InvalidKeyframe { index: i, errors })?;
            Ok(TimedFrame { time, frame })
        })
        .collect()
}
