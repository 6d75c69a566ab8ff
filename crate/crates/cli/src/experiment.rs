//! Experiment descriptions for `lms gh certify`: a generator family, a target
//! space file, a schedule and the probe range.

use serde::Deserialize;

use lms_core::io::load_space_file;
use lms_core::models;
use lms_core::seq::SequencedSpace;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub family: FamilySpec,
    /// Path to the target space file (must carry a sequence); relative paths
    /// resolve against the experiment file's directory.
    pub target: String,
    pub schedule: ScheduleSpec,
    /// Inclusive index range into the family ramp.
    pub probe_range: [usize; 2],
    pub m_max: usize,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(skip)]
    pub base_dir: std::path::PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub generator: Generator,
    /// Family parameters, one entry per member (e.g. mesh denominators or
    /// shift indices).
    pub ramp: Vec<u64>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// Every member is the target itself.
    Constant,
    /// Grid diamond samples; ramp entries are mesh denominators.
    DiamondGrid,
    /// Canonical half-line members; ramp entries are the shift indices n.
    HalflineShift,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub fill: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    pub deltas: Vec<f64>,
    #[serde(default)]
    pub thresholds: Option<Vec<usize>>,
}

pub fn load(path: &std::path::Path) -> Result<ExperimentSpec, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut spec: ExperimentSpec =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    spec.base_dir = path.parent().unwrap_or(std::path::Path::new(".")).to_path_buf();
    if spec.family.ramp.is_empty() {
        return Err("family ramp must be nonempty".into());
    }
    let [lo, hi] = spec.probe_range;
    if lo > hi || hi >= spec.family.ramp.len() {
        return Err(format!(
            "probe_range [{lo}, {hi}] outside ramp of length {}",
            spec.family.ramp.len()
        ));
    }
    Ok(spec)
}

pub fn build(spec: &ExperimentSpec) -> Result<(Vec<SequencedSpace>, SequencedSpace), String> {
    let target_path = spec.base_dir.join(&spec.target);
    let (_, target) = load_space_file(&target_path)
        .and_then(|f| f.into_parts())
        .map_err(|e| format!("{}: {e}", target_path.display()))?;
    let target = target.ok_or_else(|| {
        format!("{}: target must carry a \"seq\" field", target_path.display())
    })?;

    let [lo, hi] = spec.probe_range;
    let mut family = Vec::new();
    for (offset, &entry) in spec.family.ramp[lo..=hi].iter().enumerate() {
        let index = lo + offset;
        let member = match spec.family.generator {
            Generator::Constant => target.clone(),
            Generator::DiamondGrid => {
                let dim = spec.family.params.dim.unwrap_or(2);
                let sample = models::sample_diamond(
                    dim,
                    entry as usize + 1,
                    models::SampleMode::Grid,
                )
                .map_err(|e| format!("family member {index}: {e}"))?;
                let (bottom, top) = sample
                    .corner_indices()
                    .ok_or_else(|| format!("family member {index}: grid lacks corners"))?;
                SequencedSpace::new(sample.space, vec![bottom, top])
                    .map_err(|e| format!("family member {index}: {e}"))?
            }
            Generator::HalflineShift => {
                let depth = spec.family.params.depth.unwrap_or(1);
                let fill = spec.family.params.fill.unwrap_or(8);
                models::halfline_canonical(entry as u32, depth, fill)
                    .map_err(|e| format!("family member {index}: {e}"))?
                    .seq_space
            }
        };
        family.push(member);
    }
    Ok((family, target))
}
