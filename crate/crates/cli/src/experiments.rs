//! Parallel drivers for the Monte-Carlo experiments.
//!
//! Trial `t` of a run with seed `s` always uses the stream
//! [`trial_rng`]`(s, t)`, so results do not depend on the thread count.

use cyclic_rips_core::evolution::{
    bins_trial, coupling_trial, run_evolution, trial_rng, EvolutionConfig, EvolutionRecord,
};
use cyclic_rips_core::rational::{to_f64, Rational};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::output::{BinsRow, BinsSummary, CouplingRow, CouplingSummary, MeanRow, Stats, StepRow, ThresholdSummary};

fn need_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(CliError::Input("need ≥ 1 trial".into()));
    }
    Ok(())
}

fn par_trials<T: Send>(trials: usize, f: impl Fn(u64) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    (0..trials as u64).into_par_iter().map(f).collect()
}

/// Full per-step records of `trials` independent runs.
pub fn evolve(r: &Rational, strict: bool, trials: usize, max_n: usize, seed: u64) -> Result<Vec<EvolutionRecord>> {
    need_trials(trials)?;
    let cfg = EvolutionConfig::new(r.clone(), strict, max_n)?;
    par_trials(trials, |t| Ok(run_evolution(&cfg, &mut trial_rng(seed, t))?))
}

pub fn step_rows(records: &[EvolutionRecord]) -> Vec<StepRow> {
    records
        .iter()
        .enumerate()
        .flat_map(|(t, rec)| {
            rec.steps.iter().map(move |s| {
                let (core_n, core_k) = s.wf.core();
                StepRow {
                    trial: t as u64,
                    n: s.n,
                    wf_num: s.wf.k(),
                    wf_den: s.wf.n(),
                    core_n,
                    core_k,
                    intrinsic_dim: s.intrinsic_dim,
                    betti_dim: s.betti_dim,
                    betti_rank: s.betti_rank,
                }
            })
        })
        .collect()
}

/// Averages over the trials at each sample count.
pub fn mean_series(records: &[EvolutionRecord]) -> Vec<MeanRow> {
    let len = records.iter().map(|r| r.steps.len()).max().unwrap_or(0);
    (0..len)
        .map(|i| {
            let at: Vec<_> = records.iter().filter_map(|r| r.steps.get(i)).collect();
            let k = at.len() as f64;
            MeanRow {
                n: i + 1,
                trials: at.len(),
                mean_wf: at.iter().map(|s| s.wf.k() as f64 / s.wf.n() as f64).sum::<f64>() / k,
                mean_intrinsic_dim: at.iter().map(|s| s.intrinsic_dim as f64).sum::<f64>() / k,
            }
        })
        .collect()
}

/// Waiting times `M`, `N`, `C(δ)` and `R_{2l+1}(δ/2)` over independent runs,
/// with every sandwich bound checked on every path.
pub fn estimate_thresholds(
    r: &Rational,
    strict: bool,
    trials: usize,
    max_n: usize,
    seed: u64,
) -> Result<ThresholdSummary> {
    need_trials(trials)?;
    let cfg = EvolutionConfig::new(r.clone(), strict, max_n)?.with_sandwich_bounds().without_steps();
    let records = par_trials(trials, |t| {
        let rec = run_evolution(&cfg, &mut trial_rng(seed, t))?;
        let bad = rec.sandwich_violations();
        if !bad.is_empty() {
            return Err(CliError::Invariant(format!("trial {t}: {}", bad.join("; "))));
        }
        Ok(rec)
    })?;
    let (l, delta) = (cfg.l(), cfg.delta());
    let half = &delta / Rational::from_integer(2.into());
    let m = Stats::of(&records.iter().map(|r| r.m_time).collect::<Vec<_>>());
    let n = Stats::of(&records.iter().map(|r| r.n_time).collect::<Vec<_>>());
    let c_delta = Stats::of(&records.iter().map(|r| r.coverage_time(&delta).flatten()).collect::<Vec<_>>());
    let r_half_delta = Stats::of(&records.iter().map(|r| r.regular_time(&half).flatten()).collect::<Vec<_>>());
    let d = to_f64(&delta);
    let m_ratio = m.mean.map(|x| x * d.powf(2.0 * l as f64 / (2 * l + 1) as f64));
    let n_ratio = n.mean.map(|x| x * d / (1.0 / d).ln());
    Ok(ThresholdSummary { r: r.clone(), delta, l, trials, max_n, m, n, c_delta, r_half_delta, m_ratio, n_ratio })
}

fn mean(v: impl Iterator<Item = u64>) -> f64 {
    let (s, k) = v.fold((0f64, 0usize), |(s, k), x| (s + x as f64, k + 1));
    s / k as f64
}

/// `A_m(K)`, `C_m(K)` and `B_m(K)` on one throw sequence per trial.
pub fn run_bins(m: usize, k: usize, trials: usize, seed: u64) -> Result<(Vec<BinsRow>, BinsSummary)> {
    need_trials(trials)?;
    let rows = par_trials(trials, |t| {
        let x = bins_trial(m, k, &mut trial_rng(seed, t))?;
        if !(x.a <= x.c && x.c <= x.b) {
            return Err(CliError::Invariant(format!("trial {t}: A = {}, C = {}, B = {}", x.a, x.c, x.b)));
        }
        Ok(BinsRow { trial: t, a: x.a, c: x.c, b: x.b, repetitions: x.repetitions, first_good: x.first_good })
    })?;
    let good = rows.iter().filter(|r| r.first_good).count();
    let good_probability = (1..=m).map(|i| i as f64 / m as f64).product();
    let summary = BinsSummary {
        m,
        k,
        trials,
        mean_a: mean(rows.iter().map(|r| r.a)),
        mean_c: mean(rows.iter().map(|r| r.c)),
        mean_b: mean(rows.iter().map(|r| r.b)),
        good_fraction: good as f64 / trials as f64,
        good_probability,
        total_repetitions: rows.iter().map(|r| r.repetitions).sum(),
    };
    Ok((rows, summary))
}

/// Circle process coupled to the colour bins: `R_m(1/(Km)) <= C_m(K)` is
/// asserted on every trial.
pub fn run_regular_coupling(
    m: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<(Vec<CouplingRow>, CouplingSummary)> {
    need_trials(trials)?;
    let rows = par_trials(trials, |t| {
        let x = coupling_trial(m, k, &mut trial_rng(seed, t))?;
        Ok(CouplingRow { trial: t, r: x.r, c: x.c })
    })?;
    let violations = rows.iter().filter(|r| r.r > r.c).count();
    let summary = CouplingSummary {
        m,
        k,
        trials,
        eps: Rational::new(1.into(), ((k * m) as i64).into()),
        mean_r: mean(rows.iter().map(|r| r.r)),
        mean_c: mean(rows.iter().map(|r| r.c)),
        violations,
    };
    if violations > 0 {
        return Err(CliError::Invariant(format!("{violations} trials with R > C")));
    }
    Ok((rows, summary))
}
