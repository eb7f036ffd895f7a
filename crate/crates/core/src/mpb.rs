//! Moving Peaks Benchmark.
//!
//! A landscape of `p` peaks in `[low, high]^D`. Each call to
//! [`Landscape::advance`] moves every peak by a vector of length `s`
//! (optionally correlated with its previous move through `lambda`) and
//! perturbs height and width with Gaussian noise scaled by the severities.
//! All randomness comes from a PRNG owned by the landscape, so two
//! landscapes built from the same settings and seed evolve identically.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::{distance, norm, squared_distance, Bounds};
use crate::objective::Objective;

/// Functional form of a single peak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeakShape {
    /// `H / (1 + W * |x - X|^2)`.
    #[default]
    Sharp,
    /// `H - W * |x - X|`.
    Cone,
}

/// Benchmark settings. Defaults are the standard scenario: 10 peaks in
/// `[0, 100]^5`, shift length 1, height severity 7, width severity 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MpbSettings {
    pub dims: usize,
    pub peaks: usize,
    pub bounds: Bounds,
    pub height_range: (f64, f64),
    pub width_range: (f64, f64),
    pub initial_height: f64,
    pub shift_length: f64,
    pub lambda: f64,
    pub height_severity: f64,
    pub width_severity: f64,
    pub shape: PeakShape,
}

impl Default for MpbSettings {
    fn default() -> Self {
        MpbSettings {
            dims: 5,
            peaks: 10,
            bounds: Bounds::new(0.0, 100.0),
            height_range: (30.0, 70.0),
            width_range: (1.0, 12.0),
            initial_height: 50.0,
            shift_length: 1.0,
            lambda: 0.0,
            height_severity: 7.0,
            width_severity: 1.0,
            shape: PeakShape::Sharp,
        }
    }
}

impl MpbSettings {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("bounds_low", self.bounds.low),
            ("bounds_high", self.bounds.high),
            ("height_min", self.height_range.0),
            ("height_max", self.height_range.1),
            ("width_min", self.width_range.0),
            ("width_max", self.width_range.1),
            ("initial_height", self.initial_height),
            ("shift_length", self.shift_length),
            ("lambda", self.lambda),
            ("height_severity", self.height_severity),
            ("width_severity", self.width_severity),
        ];
        for (key, value) in finite {
            if !value.is_finite() {
                return Err(Error::config(key, "must be finite"));
            }
        }
        if self.peaks == 0 {
            return Err(Error::config("peaks", "at least one peak is required"));
        }
        if self.dims == 0 {
            return Err(Error::config("dims", "at least one dimension is required"));
        }
        if self.bounds.low > self.bounds.high {
            return Err(Error::config("bounds_low", "lower bound exceeds upper bound"));
        }
        if self.height_range.0 > self.height_range.1 {
            return Err(Error::config("height_min", "height range is inverted"));
        }
        if self.width_range.0 > self.width_range.1 {
            return Err(Error::config("width_min", "width range is inverted"));
        }
        if self.initial_height < self.height_range.0 || self.initial_height > self.height_range.1 {
            return Err(Error::config("initial_height", "must lie inside the height range"));
        }
        if self.shift_length < 0.0 {
            return Err(Error::config("shift_length", "must be non-negative"));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::config("lambda", "must lie in [0, 1]"));
        }
        if self.height_severity < 0.0 {
            return Err(Error::config("height_severity", "must be non-negative"));
        }
        if self.width_severity < 0.0 {
            return Err(Error::config("width_severity", "must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Peak {
    pub height: f64,
    pub width: f64,
    pub location: Vec<f64>,
    /// Most recent shift applied to `location`, before clamping.
    pub velocity: Vec<f64>,
}

/// A probe sphere used when counting found peaks.
#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub center: Vec<f64>,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    peaks: Vec<Peak>,
    settings: MpbSettings,
    change_count: u64,
    evaluations: u64,
    rng: ChaCha8Rng,
}

impl Landscape {
    /// Builds the initial landscape: heights at `initial_height`, widths
    /// uniform in the width range, locations uniform in the bounds.
    pub fn new(settings: MpbSettings, seed: u64) -> Result<Self> {
        Self::with_rng(settings, ChaCha8Rng::seed_from_u64(seed))
    }

    /// Like [`Landscape::new`] but draws from a caller-supplied generator.
    pub fn with_rng(settings: MpbSettings, mut rng: ChaCha8Rng) -> Result<Self> {
        settings.validate()?;
        let (w_lo, w_hi) = settings.width_range;
        let peaks = (0..settings.peaks)
            .map(|_| {
                let location = settings.bounds.sample(settings.dims, &mut rng);
                let width = Bounds::new(w_lo, w_hi).sample(1, &mut rng)[0];
                Peak { height: settings.initial_height, width, location, velocity: vec![0.0; settings.dims] }
            })
            .collect();
        Ok(Landscape { peaks, settings, change_count: 0, evaluations: 0, rng })
    }

    pub fn peaks(&self) -> &[Peak] {
        &self.peaks
    }

    pub fn settings(&self) -> &MpbSettings {
        &self.settings
    }

    pub fn dims(&self) -> usize {
        self.settings.dims
    }

    pub fn bounds(&self) -> Bounds {
        self.settings.bounds
    }

    pub fn change_count(&self) -> u64 {
        self.change_count
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    fn peak_value(&self, peak: &Peak, x: &[f64]) -> f64 {
        match self.settings.shape {
            PeakShape::Sharp => peak.height / (1.0 + peak.width * squared_distance(x, &peak.location)),
            PeakShape::Cone => peak.height - peak.width * distance(x, &peak.location),
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.peaks.iter().map(|p| self.peak_value(p, x)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Fitness of `x`; counts one evaluation.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        if x.len() != self.settings.dims {
            return Err(Error::contract(format!(
                "position has {} dimensions, landscape has {}",
                x.len(),
                self.settings.dims
            )));
        }
        self.evaluations += 1;
        Ok(self.value(x))
    }

    /// Applies one environment change.
    pub fn advance(&mut self) {
        let s = &self.settings;
        let lambda = s.lambda;
        for peak in &mut self.peaks {
            let r: Vec<f64> = (0..s.dims).map(|_| StandardNormal.sample(&mut self.rng)).collect();
            let combined: Vec<f64> =
                r.iter().zip(&peak.velocity).map(|(ri, vi)| (1.0 - lambda) * ri + lambda * vi).collect();
            let len = norm(&combined);
            let shift: Vec<f64> =
                if len > 0.0 { combined.iter().map(|c| c * s.shift_length / len).collect() } else { vec![0.0; s.dims] };
            for (x, dx) in peak.location.iter_mut().zip(&shift) {
                *x = s.bounds.clamp(*x + dx);
            }
            peak.velocity = shift;

            let height_noise: f64 = StandardNormal.sample(&mut self.rng);
            let width_noise: f64 = StandardNormal.sample(&mut self.rng);
            peak.height = (peak.height + s.height_severity * height_noise).clamp(s.height_range.0, s.height_range.1);
            peak.width = (peak.width + s.width_severity * width_noise).clamp(s.width_range.0, s.width_range.1);
        }
        self.change_count += 1;
    }

    fn optimum_index(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.peaks.iter().enumerate().skip(1) {
            if p.height > self.peaks[best].height {
                best = i;
            }
        }
        best
    }

    /// Location and fitness of the global optimum. Does not count as an
    /// evaluation. Equal heights resolve to the lowest peak index.
    pub fn current_optimum(&self) -> (Vec<f64>, f64) {
        let peak = &self.peaks[self.optimum_index()];
        (peak.location.clone(), self.value(&peak.location))
    }

    /// Number of peaks lying inside at least one probe sphere.
    pub fn peaks_found(&self, probes: &[Probe]) -> usize {
        self.peaks.iter().filter(|peak| probes.iter().any(|p| distance(&p.center, &peak.location) <= p.radius)).count()
    }
}

impl Objective for Landscape {
    fn eval(&mut self, x: &[f64]) -> f64 {
        match self.evaluate(x) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }

    fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

#[cfg(test)]
pub(crate) fn landscape_from_peaks(settings: MpbSettings, peaks: Vec<Peak>) -> Landscape {
    Landscape { peaks, settings, change_count: 0, evaluations: 0, rng: ChaCha8Rng::seed_from_u64(0) }
}
