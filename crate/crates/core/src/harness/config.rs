//! Experiment configuration and its flat key-value file format.
//!
//! The file is a flat TOML document. Every key is optional; anything left
//! out takes the default listed below. Unknown keys are rejected.
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `M` | 70 | cradle swarm size |
//! | `max_subsize` | 3 | largest allowed cluster |
//! | `w_max`, `w_min` | 0.6, 0.3 | inertia schedule endpoints |
//! | `eta1`, `eta2` | 1.7, 1.7 | cognitive and social acceleration |
//! | `v_max` | half the domain width | velocity clamp |
//! | `r_overlap` | 0.6 | overlap merge threshold |
//! | `overlap_rule` | `"above"` | merge when the ratio is `above` or `below` the threshold |
//! | `eps_conv` | 1e-4 | convergence radius |
//! | `eps_peak` | 0.5 | probe radius for counting found peaks |
//! | `diversity_enabled` | true | worst-cluster relocation on/off |
//! | `confidence_enabled` | false | require a candidate to recur before relocating |
//! | `spread` | 0.5 | relocation jitter per dimension |
//! | `diversity_interval` | 5 | run the relocation step every this many iterations |
//! | `learn_cap` | unlimited | dimension-wise lbest learning calls per cluster per iteration |
//! | `U_cf` | 10000 | evaluations between environment changes |
//! | `n_environments` | 100 | environments per run |
//! | `runs` | 50 | independent runs |
//! | `base_seed` | 1 | seed of run 0; run `i` uses `base_seed + i` |
//! | `dims` | 5 | landscape dimensions |
//! | `peaks` | 10 | number of peaks |
//! | `bounds_low`, `bounds_high` | 0, 100 | domain |
//! | `height_min`, `height_max` | 30, 70 | peak height range |
//! | `width_min`, `width_max` | 1, 12 | peak width range |
//! | `initial_height` | 50 | starting height of every peak |
//! | `shift_length` | 1.0 | length of each peak move |
//! | `lambda` | 0.0 | move correlation |
//! | `height_severity`, `width_severity` | 7.0, 1.0 | height and width noise scale |
//! | `peak_shape` | `"sharp"` | `sharp` or `cone` |

use std::path::Path;

use toml::{Table, Value};

use crate::diversity::Diversity;
use crate::error::{Error, Result};
use crate::geometry::Bounds;
use crate::mpb::{MpbSettings, PeakShape};
use crate::population::OverlapRule;
use crate::swarm::PsoParams;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub cradle_size: usize,
    pub max_subsize: usize,
    pub pso: PsoParams,
    pub r_overlap: f64,
    pub overlap_rule: OverlapRule,
    pub eps_conv: f64,
    pub eps_peak: f64,
    pub diversity: Diversity,
    pub learn_cap: Option<usize>,
    pub mpb: MpbSettings,
    pub change_frequency: u64,
    pub environments: usize,
    pub runs: usize,
    pub base_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let mpb = MpbSettings::default();
        ExperimentConfig {
            cradle_size: 70,
            max_subsize: 3,
            pso: PsoParams { v_max: mpb.bounds.width() / 2.0, ..PsoParams::default() },
            r_overlap: 0.6,
            overlap_rule: OverlapRule::Above,
            eps_conv: 1e-4,
            eps_peak: 0.5,
            diversity: Diversity::default(),
            learn_cap: None,
            mpb,
            change_frequency: 10_000,
            environments: 100,
            runs: 50,
            base_seed: 1,
        }
    }
}

const KEYS: &[&str] = &[
    "M",
    "max_subsize",
    "w_max",
    "w_min",
    "eta1",
    "eta2",
    "v_max",
    "r_overlap",
    "overlap_rule",
    "eps_conv",
    "eps_peak",
    "diversity_enabled",
    "confidence_enabled",
    "spread",
    "diversity_interval",
    "learn_cap",
    "U_cf",
    "n_environments",
    "runs",
    "base_seed",
    "dims",
    "peaks",
    "bounds_low",
    "bounds_high",
    "height_min",
    "height_max",
    "width_min",
    "width_max",
    "initial_height",
    "shift_length",
    "lambda",
    "height_severity",
    "width_severity",
    "peak_shape",
];

struct Doc(Table);

impl Doc {
    fn float(&self, key: &str, slot: &mut f64) -> Result<()> {
        match self.0.get(key) {
            None => {}
            Some(Value::Float(v)) => *slot = *v,
            Some(Value::Integer(v)) => *slot = *v as f64,
            Some(_) => return Err(Error::config(key, "expected a number")),
        }
        Ok(())
    }

    fn integer(&self, key: &str) -> Result<Option<u64>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::Integer(v)) if *v >= 0 => Ok(Some(*v as u64)),
            Some(Value::Integer(_)) => Err(Error::config(key, "must be non-negative")),
            Some(_) => Err(Error::config(key, "expected an integer")),
        }
    }

    fn size(&self, key: &str, slot: &mut usize) -> Result<()> {
        if let Some(v) = self.integer(key)? {
            *slot = v as usize;
        }
        Ok(())
    }

    fn flag(&self, key: &str, slot: &mut bool) -> Result<()> {
        match self.0.get(key) {
            None => {}
            Some(Value::Boolean(v)) => *slot = *v,
            Some(_) => return Err(Error::config(key, "expected true or false")),
        }
        Ok(())
    }

    fn text(&self, key: &str) -> Result<Option<&str>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(Error::config(key, "expected a string")),
        }
    }
}

impl ExperimentConfig {
    /// Parses a configuration document; see the module docs for the keys.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: Table =
            text.parse().map_err(|e: toml::de::Error| Error::config("<document>", e.message().to_string()))?;
        for (key, value) in &table {
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::config(key, "unknown key"));
            }
            if matches!(value, Value::Table(_) | Value::Array(_)) {
                return Err(Error::config(key, "nested values are not allowed"));
            }
        }
        let doc = Doc(table);
        let mut c = ExperimentConfig::default();

        doc.size("M", &mut c.cradle_size)?;
        doc.size("max_subsize", &mut c.max_subsize)?;
        doc.float("w_max", &mut c.pso.w_max)?;
        doc.float("w_min", &mut c.pso.w_min)?;
        doc.float("eta1", &mut c.pso.eta1)?;
        doc.float("eta2", &mut c.pso.eta2)?;
        doc.float("r_overlap", &mut c.r_overlap)?;
        if let Some(rule) = doc.text("overlap_rule")? {
            c.overlap_rule = match rule {
                "above" => OverlapRule::Above,
                "below" => OverlapRule::Below,
                _ => return Err(Error::config("overlap_rule", "expected \"above\" or \"below\"")),
            };
        }
        doc.float("eps_conv", &mut c.eps_conv)?;
        doc.float("eps_peak", &mut c.eps_peak)?;
        doc.flag("diversity_enabled", &mut c.diversity.enabled)?;
        doc.flag("confidence_enabled", &mut c.diversity.confidence)?;
        doc.float("spread", &mut c.diversity.spread)?;
        doc.size("diversity_interval", &mut c.diversity.interval)?;
        if let Some(cap) = doc.integer("learn_cap")? {
            c.learn_cap = Some(cap as usize);
        }
        if let Some(v) = doc.integer("U_cf")? {
            c.change_frequency = v;
        }
        doc.size("n_environments", &mut c.environments)?;
        doc.size("runs", &mut c.runs)?;
        if let Some(v) = doc.integer("base_seed")? {
            c.base_seed = v;
        }

        let m = &mut c.mpb;
        doc.size("dims", &mut m.dims)?;
        doc.size("peaks", &mut m.peaks)?;
        doc.float("bounds_low", &mut m.bounds.low)?;
        doc.float("bounds_high", &mut m.bounds.high)?;
        doc.float("height_min", &mut m.height_range.0)?;
        doc.float("height_max", &mut m.height_range.1)?;
        doc.float("width_min", &mut m.width_range.0)?;
        doc.float("width_max", &mut m.width_range.1)?;
        doc.float("initial_height", &mut m.initial_height)?;
        doc.float("shift_length", &mut m.shift_length)?;
        doc.float("lambda", &mut m.lambda)?;
        doc.float("height_severity", &mut m.height_severity)?;
        doc.float("width_severity", &mut m.width_severity)?;
        if let Some(shape) = doc.text("peak_shape")? {
            m.shape = match shape {
                "sharp" => PeakShape::Sharp,
                "cone" => PeakShape::Cone,
                _ => return Err(Error::config("peak_shape", "expected \"sharp\" or \"cone\"")),
            };
        }

        c.pso.v_max = Bounds::new(c.mpb.bounds.low, c.mpb.bounds.high).width() / 2.0;
        doc.float("v_max", &mut c.pso.v_max)?;

        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if self.cradle_size < 2 {
            return Err(Error::config("M", "must be at least 2"));
        }
        if self.max_subsize < 2 {
            return Err(Error::config("max_subsize", "must be at least 2"));
        }
        if self.change_frequency < self.cradle_size as u64 {
            return Err(Error::config("U_cf", "must be at least M"));
        }
        if self.runs < 1 {
            return Err(Error::config("runs", "must be at least 1"));
        }
        if self.environments < 1 {
            return Err(Error::config("n_environments", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.r_overlap) {
            return Err(Error::config("r_overlap", "must lie in [0, 1]"));
        }
        if !(self.eps_conv > 0.0) {
            return Err(Error::config("eps_conv", "must be positive"));
        }
        if !(self.eps_peak >= 0.0) {
            return Err(Error::config("eps_peak", "must be non-negative"));
        }
        if self.diversity.interval < 1 {
            return Err(Error::config("diversity_interval", "must be at least 1"));
        }
        if !(self.diversity.spread >= 0.0) {
            return Err(Error::config("spread", "must be non-negative"));
        }
        self.pso.validate()?;
        self.mpb.validate()
    }

    /// Evaluations across all environments of one run.
    pub fn total_evaluations(&self) -> u64 {
        self.change_frequency * self.environments as u64
    }
}
