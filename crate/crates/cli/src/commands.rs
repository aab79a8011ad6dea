use std::path::Path;

use cyclic_rips_core::cech::verify_pi_simplicial;
use cyclic_rips_core::classify::{betti_of, circle_lookup, classify_core, intrinsic_dimension, persistence_interval};
use cyclic_rips_core::homology::{clique_complex, homology};
use cyclic_rips_core::{ComplexKind, CyclicGraph, WindingFraction};

use crate::args::{Command, GraphInput};
use crate::error::{CliError, Result};
use crate::experiments::{estimate_thresholds, evolve, mean_series, run_bins, run_regular_coupling, step_rows};
use crate::input::read_points;
use crate::output::{
    to_csv, to_json, write_atomic, CechReport, ClassifyReport, DismantleReport, Format, HomologyReport, LookupEntry,
    LookupReport, ProfileOut, SummaryRow, WfReport,
};

pub fn build_graph(input: &GraphInput) -> Result<CyclicGraph> {
    match (&input.cnk, &input.points) {
        (Some(nk), None) => Ok(CyclicGraph::cnk(nk[0], nk[1])?),
        (None, Some(path)) => {
            let r = input.r.as_ref().ok_or_else(|| CliError::Input("--points needs --r".into()))?;
            let x = read_points(path)?;
            Ok(CyclicGraph::vr_digraph(&x, r, input.strict)?)
        }
        _ => Err(CliError::Input("give exactly one of --points and --cnk".into())),
    }
}

fn core_of(g: &CyclicGraph) -> Result<WindingFraction> {
    Ok(g.winding_fraction()?)
}

pub fn classify(g: &CyclicGraph) -> Result<ClassifyReport> {
    let wf = core_of(g)?;
    let (n, k) = wf.core();
    let t = classify_core(n, k)?;
    let (wf_s, core) = ClassifyReport::wf_parts(&wf);
    Ok(ClassifyReport { wf: wf_s, core, homotopy_type: t.to_string(), homology: (&betti_of(&t)?).into() })
}

pub fn lookup(r: &cyclic_rips_core::Rational) -> Result<LookupReport> {
    let complexes = ComplexKind::ALL
        .iter()
        .map(|&kind| {
            let t = circle_lookup(r, kind)?;
            Ok(LookupEntry {
                kind: kind.to_string(),
                homotopy_type: t.to_string(),
                homology: betti_of(&t).ok().as_ref().map(ProfileOut::from),
                interval: (&persistence_interval(r, kind)?).into(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(LookupReport { r: r.clone(), complexes })
}

pub fn dismantle(g: &CyclicGraph) -> Result<DismantleReport> {
    let d = g.dismantle()?;
    let (wf, core) = ClassifyReport::wf_parts(&d.winding_fraction());
    Ok(DismantleReport { trace: d.trace, survivors: d.survivors, retraction: d.retraction, wf, core })
}

pub fn wf(g: &CyclicGraph) -> Result<WfReport> {
    let w = core_of(g)?;
    let (wf, core) = ClassifyReport::wf_parts(&w);
    Ok(WfReport { wf, core, intrinsic_dim: intrinsic_dimension(&w) })
}

pub fn homology_report(g: &CyclicGraph) -> Result<HomologyReport> {
    let k = clique_complex(g)?;
    Ok(HomologyReport { vertices: g.n(), f_vector: k.f_vector(), homology: (&homology(&k)?).into() })
}

pub fn cech(points: &Path, r: &cyclic_rips_core::Rational) -> Result<CechReport> {
    let x = read_points(points)?;
    let rep = verify_pi_simplicial(&x, r)?;
    Ok(CechReport {
        r: r.clone(),
        vr_scale: rep.vr_scale.clone(),
        transformed: rep.transformed.iter().map(|p| p.value().clone()).collect(),
        projection: rep.projection.clone(),
        faces_map_to_faces: rep.faces_map_to_faces(),
        fibers_are_cones: rep.fibers_are_cones(),
        homology_agrees: rep.homology_agrees(),
        vr_homology: (&rep.vr_homology).into(),
        cech_homology: (&rep.cech_homology).into(),
        passed: rep.passed(),
    })
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs one subcommand, writing its output only once it has fully succeeded.
pub fn run(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Classify { input, out } => emit(out.output.as_deref(), &to_json(&classify(&build_graph(input)?)?)?),
        Command::Lookup { r, out } => emit(out.output.as_deref(), &to_json(&lookup(r)?)?),
        Command::Dismantle { input, out } => emit(out.output.as_deref(), &to_json(&dismantle(&build_graph(input)?)?)?),
        Command::Wf { input, out } => emit(out.output.as_deref(), &to_json(&wf(&build_graph(input)?)?)?),
        Command::Homology { input, out } => {
            emit(out.output.as_deref(), &to_json(&homology_report(&build_graph(input)?)?)?)
        }
        Command::Cech { points, r, out } => {
            let rep = cech(points, r)?;
            let text = to_json(&rep)?;
            if !rep.passed {
                eprint!("{text}");
                return Err(CliError::Invariant("projection check failed".into()));
            }
            emit(out.output.as_deref(), &text)
        }
        Command::Evolve { r, strict, max_n, trials, summary, means, format, out } => {
            let text = if *summary {
                let s = estimate_thresholds(r, *strict, trials.trials, *max_n, trials.seed)?;
                match format {
                    Format::Json => to_json(&s)?,
                    Format::Csv => to_csv(&[SummaryRow::from(&s)])?,
                }
            } else {
                let recs = evolve(r, *strict, trials.trials, *max_n, trials.seed)?;
                match (means, format) {
                    (true, Format::Csv) => to_csv(&mean_series(&recs))?,
                    (true, Format::Json) => to_json(&mean_series(&recs))?,
                    (false, Format::Csv) => to_csv(&step_rows(&recs))?,
                    (false, Format::Json) => to_json(&step_rows(&recs))?,
                }
            };
            emit(out.output.as_deref(), &text)
        }
        Command::Bins { m, k, trials, format, out } => {
            let (rows, summary) = run_bins(*m, *k, trials.trials, trials.seed)?;
            let text = match format {
                Format::Json => to_json(&summary)?,
                Format::Csv => to_csv(&rows)?,
            };
            emit(out.output.as_deref(), &text)
        }
        Command::RegularCoupling { m, k, trials, format, out } => {
            let (rows, summary) = run_regular_coupling(*m, *k, trials.trials, trials.seed)?;
            let text = match format {
                Format::Json => to_json(&summary)?,
                Format::Csv => to_csv(&rows)?,
            };
            emit(out.output.as_deref(), &text)
        }
    }
}
