//! Report types, their JSON and CSV encodings, and atomic file output.
//!
//! Rationals are `"p/q"` strings in JSON and split numerator/denominator
//! columns in CSV.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use cyclic_rips_core::classify::Interval;
use cyclic_rips_core::rational::Rational;
use cyclic_rips_core::{BettiProfile, WindingFraction};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// `"p/q"` strings for single rationals.
pub mod exact {
    use cyclic_rips_core::rational::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// `"p/q"` strings for lists of rationals.
pub mod exact_vec {
    use cyclic_rips_core::rational::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        qs.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}

/// Reduced homology with torsion coefficients as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileOut {
    pub betti: BTreeMap<usize, usize>,
    pub torsion: BTreeMap<usize, Vec<String>>,
}

impl From<&BettiProfile> for ProfileOut {
    fn from(p: &BettiProfile) -> Self {
        ProfileOut {
            betti: p.betti.clone(),
            torsion: p.torsion.iter().map(|(&d, t)| (d, t.iter().map(|x| x.to_string()).collect())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub wf: String,
    pub core: [usize; 2],
    #[serde(rename = "type")]
    pub homotopy_type: String,
    pub homology: ProfileOut,
}

impl ClassifyReport {
    pub fn wf_parts(wf: &WindingFraction) -> (String, [usize; 2]) {
        let (n, k) = wf.core();
        (wf.to_string(), [n, k])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalOut {
    #[serde(with = "exact")]
    pub lo: Rational,
    #[serde(with = "exact")]
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl From<&Interval> for IntervalOut {
    fn from(i: &Interval) -> Self {
        IntervalOut { lo: i.lo.clone(), hi: i.hi.clone(), lo_closed: i.lo_closed, hi_closed: i.hi_closed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LookupEntry {
    pub kind: String,
    #[serde(rename = "type")]
    pub homotopy_type: String,
    /// Absent for uncountable wedges.
    pub homology: Option<ProfileOut>,
    pub interval: IntervalOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LookupReport {
    #[serde(with = "exact")]
    pub r: Rational,
    pub complexes: Vec<LookupEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DismantleReport {
    pub trace: Vec<usize>,
    pub survivors: Vec<usize>,
    pub retraction: Vec<usize>,
    pub wf: String,
    pub core: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WfReport {
    pub wf: String,
    pub core: [usize; 2],
    pub intrinsic_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub vertices: usize,
    pub f_vector: Vec<usize>,
    pub homology: ProfileOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CechReport {
    #[serde(with = "exact")]
    pub r: Rational,
    #[serde(with = "exact")]
    pub vr_scale: Rational,
    #[serde(with = "exact_vec")]
    pub transformed: Vec<Rational>,
    pub projection: Vec<usize>,
    pub faces_map_to_faces: bool,
    pub fibers_are_cones: bool,
    pub homology_agrees: bool,
    pub vr_homology: ProfileOut,
    pub cech_homology: ProfileOut,
    pub passed: bool,
}

/// One row of the evolution time series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRow {
    pub trial: u64,
    pub n: usize,
    pub wf_num: usize,
    pub wf_den: usize,
    pub core_n: usize,
    pub core_k: usize,
    pub intrinsic_dim: usize,
    pub betti_dim: usize,
    pub betti_rank: usize,
}

/// Mean, variance and quantiles of the trials that reached a waiting time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub reached: usize,
    pub mean: Option<f64>,
    pub variance: Option<f64>,
    pub q10: Option<usize>,
    pub median: Option<usize>,
    pub q90: Option<usize>,
}

impl Stats {
    pub fn of(values: &[Option<usize>]) -> Stats {
        let mut v: Vec<usize> = values.iter().flatten().copied().collect();
        v.sort_unstable();
        let k = v.len();
        if k == 0 {
            return Stats { reached: 0, mean: None, variance: None, q10: None, median: None, q90: None };
        }
        let mean = v.iter().map(|&x| x as f64).sum::<f64>() / k as f64;
        let variance =
            if k > 1 { v.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (k - 1) as f64 } else { 0.0 };
        let q = |p: f64| v[((p * (k - 1) as f64).round() as usize).min(k - 1)];
        Stats {
            reached: k,
            mean: Some(mean),
            variance: Some(variance),
            q10: Some(q(0.1)),
            median: Some(q(0.5)),
            q90: Some(q(0.9)),
        }
    }
}

/// Summary of repeated evolution runs; also one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSummary {
    #[serde(with = "exact")]
    pub r: Rational,
    #[serde(with = "exact")]
    pub delta: Rational,
    pub l: usize,
    pub trials: usize,
    pub max_n: usize,
    pub m: Stats,
    pub n: Stats,
    pub c_delta: Stats,
    /// `R_{2l+1}(δ/2)`.
    pub r_half_delta: Stats,
    /// `mean(M) / δ^{-2l/(2l+1)}`.
    pub m_ratio: Option<f64>,
    /// `mean(N) / (δ^{-1} log δ^{-1})`.
    pub n_ratio: Option<f64>,
}

/// The flat CSV form of [`ThresholdSummary`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub r_num: String,
    pub r_den: String,
    pub delta_num: String,
    pub delta_den: String,
    pub l: usize,
    pub trials: usize,
    pub mean_m: Option<f64>,
    pub mean_n: Option<f64>,
    pub mean_c_delta: Option<f64>,
    pub mean_r: Option<f64>,
    pub reached_m: usize,
    pub reached_n: usize,
}

impl From<&ThresholdSummary> for SummaryRow {
    fn from(s: &ThresholdSummary) -> Self {
        SummaryRow {
            r_num: s.r.numer().to_string(),
            r_den: s.r.denom().to_string(),
            delta_num: s.delta.numer().to_string(),
            delta_den: s.delta.denom().to_string(),
            l: s.l,
            trials: s.trials,
            mean_m: s.m.mean,
            mean_n: s.n.mean,
            mean_c_delta: s.c_delta.mean,
            mean_r: s.r_half_delta.mean,
            reached_m: s.m.reached,
            reached_n: s.n.reached,
        }
    }
}

/// Mean winding fraction and intrinsic dimension at each sample count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanRow {
    pub n: usize,
    pub trials: usize,
    pub mean_wf: f64,
    pub mean_intrinsic_dim: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinsRow {
    pub trial: u64,
    pub a: u64,
    pub c: u64,
    pub b: u64,
    pub repetitions: u64,
    pub first_good: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinsSummary {
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub trials: usize,
    pub mean_a: f64,
    pub mean_c: f64,
    pub mean_b: f64,
    /// Fraction of first repetitions with a good outcome.
    pub good_fraction: f64,
    /// `m!/m^m`.
    pub good_probability: f64,
    pub total_repetitions: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingRow {
    pub trial: u64,
    pub r: u64,
    pub c: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingSummary {
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub trials: usize,
    #[serde(with = "exact")]
    pub eps: Rational,
    pub mean_r: f64,
    pub mean_c: f64,
    /// Trials with `R > C`; always zero unless something is broken.
    pub violations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
}

pub fn from_csv<T: serde::de::DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|row| row.map_err(CliError::from)).collect()
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
