//! Telemetry containers, lagged channels and the synthetic damped oscillator.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{check_positive, Error, Result};
use crate::math;

/// One measured signal together with its metrology.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub name: String,
    pub samples: Vec<f64>,
    /// Measurement error `X_Δ` in signal units.
    pub error: f64,
    /// Largest representable magnitude `X_max` in signal units.
    pub max_abs: f64,
}

impl Channel {
    /// Channel whose `max_abs` is the observed peak magnitude.
    pub fn new(name: impl Into<String>, samples: Vec<f64>, error: f64) -> Self {
        let max_abs = peak(&samples);
        Self {
            name: name.into(),
            samples,
            error,
            max_abs,
        }
    }

    /// Channel with an instrument range wider than the observed peak.
    pub fn with_max_abs(mut self, max_abs: f64) -> Self {
        self.max_abs = max_abs;
        self
    }
}

fn peak(samples: &[f64]) -> f64 {
    samples.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Uniformly sampled multichannel signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Telemetry {
    channels: Vec<Channel>,
    dt: f64,
}

impl Telemetry {
    pub fn new(channels: Vec<Channel>, dt: f64) -> Result<Self> {
        check_positive("dt", dt)?;
        let first = channels.first().ok_or(Error::NoChannels)?;
        let len = first.samples.len();
        if len < 2 {
            return Err(Error::TooFewSamples(len));
        }
        let mut names = BTreeSet::new();
        for c in &channels {
            if !names.insert(c.name.as_str()) {
                return Err(Error::DuplicateChannel(c.name.clone()));
            }
            if c.samples.len() != len {
                return Err(Error::RaggedChannels {
                    channel: c.name.clone(),
                    expected: len,
                    found: c.samples.len(),
                });
            }
            if let Some(index) = c.samples.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFiniteSample {
                    channel: c.name.clone(),
                    index,
                });
            }
            check_positive("channel error", c.error)?;
            let observed = peak(&c.samples);
            if !(c.max_abs >= observed) || !c.max_abs.is_finite() {
                return Err(Error::MaxAbsTooSmall {
                    channel: c.name.clone(),
                    max_abs: c.max_abs,
                    observed,
                });
            }
        }
        Ok(Self { channels, dt })
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn channel(&self, name: &str) -> Option<&Channel> {
        self.channels.iter().find(|c| c.name == name)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of samples per channel.
    pub fn len(&self) -> usize {
        self.channels[0].samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_channels(self) -> Vec<Channel> {
        self.channels
    }
}

/// Damped linear oscillator `X(t) = A e^{-ξωt} sin(ωt + φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorSpec {
    pub amplitude: f64,
    pub damping_ratio: f64,
    /// rad/s
    pub angular_frequency: f64,
    pub phase: f64,
    pub dt: f64,
    pub n_samples: usize,
    /// Standard deviation of additive Gaussian noise, truncated at 5σ.
    pub noise_sd: f64,
    pub seed: u64,
}

impl Default for OscillatorSpec {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            damping_ratio: 0.05,
            angular_frequency: core::f64::consts::TAU,
            phase: 0.0,
            dt: 0.01,
            n_samples: 2000,
            noise_sd: 0.0,
            seed: 42,
        }
    }
}

impl OscillatorSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.amplitude.is_finite() || self.amplitude == 0.0 {
            return Err(Error::OutOfRange {
                name: "amplitude",
                value: self.amplitude,
            });
        }
        if !(0.0..1.0).contains(&self.damping_ratio) {
            return Err(Error::OutOfRange {
                name: "damping_ratio",
                value: self.damping_ratio,
            });
        }
        check_positive("angular_frequency", self.angular_frequency)?;
        check_positive("dt", self.dt)?;
        if !self.phase.is_finite() {
            return Err(Error::OutOfRange {
                name: "phase",
                value: self.phase,
            });
        }
        if !(self.noise_sd >= 0.0) || !self.noise_sd.is_finite() {
            return Err(Error::OutOfRange {
                name: "noise_sd",
                value: self.noise_sd,
            });
        }
        if self.n_samples < 2 {
            return Err(Error::TooFewSamples(self.n_samples));
        }
        Ok(())
    }

    /// Channel error used for both generated channels.
    pub fn default_error(&self) -> f64 {
        self.amplitude.abs() / 100.0
    }
}

/// Position channel `x` and its analytic velocity `v`, with errors `A/100`.
pub fn synth_oscillator(spec: &OscillatorSpec) -> Result<Telemetry> {
    spec.validate()?;
    let a = spec.amplitude;
    let w = spec.angular_frequency;
    let decay = spec.damping_ratio * w;

    let mut noise = Truncated::new(spec.noise_sd, spec.seed);
    let mut x = Vec::with_capacity(spec.n_samples);
    let mut v = Vec::with_capacity(spec.n_samples);
    for i in 0..spec.n_samples {
        let t = i as f64 * spec.dt;
        let envelope = a * math::exp(-decay * t);
        let arg = w * t + spec.phase;
        let (s, c) = (math::sin(arg), math::cos(arg));
        x.push(envelope * s + noise.next());
        v.push(envelope * (w * c - decay * s) + noise.next());
    }

    let error = spec.default_error();
    Telemetry::new(
        alloc::vec![Channel::new("x", x, error), Channel::new("v", v, error)],
        spec.dt,
    )
}

struct Truncated {
    rng: ChaCha8Rng,
    normal: Option<Normal<f64>>,
    bound: f64,
}

impl Truncated {
    fn new(sd: f64, seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            normal: (sd > 0.0).then(|| Normal::new(0.0, sd).expect("sd validated")),
            bound: 5.0 * sd,
        }
    }

    fn next(&mut self) -> f64 {
        match &self.normal {
            None => 0.0,
            Some(normal) => loop {
                let z = normal.sample(&mut self.rng);
                if z.abs() <= self.bound {
                    break z;
                }
            },
        }
    }
}

/// Delayed copy of a channel, `lag_steps` samples into the past.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagSpec {
    pub source_channel: String,
    pub lag_steps: usize,
}

impl LagSpec {
    pub fn new(source_channel: impl Into<String>, lag_steps: usize) -> Self {
        Self {
            source_channel: source_channel.into(),
            lag_steps,
        }
    }

    /// Name of the derived channel, `<source>_lag<k>`.
    pub fn channel_name(&self) -> String {
        format!("{}_lag{}", self.source_channel, self.lag_steps)
    }

    /// Inverse of [`LagSpec::channel_name`].
    pub fn parse_channel_name(name: &str) -> Option<Self> {
        let (source, lag) = name.rsplit_once("_lag")?;
        let lag_steps: usize = lag.parse().ok()?;
        (!source.is_empty() && lag_steps > 0).then(|| Self::new(source.to_string(), lag_steps))
    }
}

/// Appends lagged channels, aligning every channel at the latest common
/// instant.
///
/// With `L = max(lag_steps)`, output sample `j` of every original channel is
/// input sample `j + L`, and of a lagged channel is source sample
/// `j + L - lag_steps`.
pub fn add_lag_channels(telemetry: &Telemetry, lags: &[LagSpec]) -> Result<Telemetry> {
    let len = telemetry.len();
    for lag in lags {
        if lag.lag_steps == 0 {
            return Err(Error::ZeroLag(lag.source_channel.clone()));
        }
        if telemetry.channel(&lag.source_channel).is_none() {
            return Err(Error::UnknownChannel(lag.source_channel.clone()));
        }
        if lag.lag_steps >= len {
            return Err(Error::LagTooLong {
                channel: lag.source_channel.clone(),
                lag_steps: lag.lag_steps,
                length: len,
            });
        }
    }
    let max_lag = lags.iter().map(|l| l.lag_steps).max().unwrap_or(0);
    let out_len = len - max_lag;

    let mut channels: Vec<Channel> = telemetry
        .channels()
        .iter()
        .map(|c| {
            let samples = c.samples[max_lag..].to_vec();
            Channel {
                name: c.name.clone(),
                max_abs: c.max_abs.max(peak(&samples)),
                samples,
                error: c.error,
            }
        })
        .collect();
    for lag in lags {
        let source = telemetry
            .channel(&lag.source_channel)
            .expect("checked above");
        let start = max_lag - lag.lag_steps;
        channels.push(Channel {
            name: lag.channel_name(),
            samples: source.samples[start..start + out_len].to_vec(),
            error: source.error,
            max_abs: source.max_abs,
        });
    }
    Telemetry::new(channels, telemetry.dt())
}
