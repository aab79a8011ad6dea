//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use cyclic_rips::experiments::{estimate_thresholds, evolve, mean_series, run_bins, run_regular_coupling};
use cyclic_rips_core::cech::{transform_t, verify_pi_simplicial};
use cyclic_rips_core::classify::{betti_of, classify_core, classify_graph, generic_delta, singular_value};
use cyclic_rips_core::cyclic_graph::build_homomorphism;
use cyclic_rips_core::homology::{
    clique_complex, enumerate_cross_polytopal, has_induced_c8_3, homology, is_rational_boundary, lattice_membership,
    LatticeBasisProblem, LatticeStatus, VTilde,
};
use cyclic_rips_core::oracle::{
    cyclic_homomorphism_by_definition, exhaustive_homomorphism, lattice_brute, random_cyclic_graph, random_dismantling,
};
use cyclic_rips_core::rational::{int, ratio, to_f64, Rational};
use cyclic_rips_core::{CirclePoint, CyclicGraph, PointConfiguration};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Band for the mean winding fraction at r = 0.432, n = 1000.
fn wf_band() -> (Rational, Rational) {
    (ratio(3, 7), ratio(432, 1000))
}
const DIM_BAND: (f64, f64) = (6.5, 7.0);
const FIRST_EXCEED_BAND: (f64, f64) = (300.0, 1000.0);
const FIG2_TRIALS: usize = 50;
const FIG2_MAX_N: usize = 1000;
const SCALING_TRIALS: usize = 200;
const SCALING_FACTOR: f64 = 3.0;
const GOOD_TOLERANCE: f64 = 0.02;
const GOOD_REPETITIONS: usize = 10_000;
const LATTICE_BOUND: i64 = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_r(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.random_range(3..80i64);
    let p = rng.random_range(1..=(q - 1) / 2);
    ratio(p, q)
}

/// Points on a grid of random resolution, so that distances often tie.
fn random_configuration(rng: &mut ChaCha8Rng, max_len: usize) -> PointConfiguration {
    let den = *[6i64, 12, 24, 60, 97, 1000].choose(rng).unwrap();
    let len = rng.random_range(1..=max_len.min(den as usize));
    let mut nums: Vec<i64> = (0..den).collect();
    nums.shuffle(rng);
    PointConfiguration::from_rationals(nums[..len].iter().map(|&p| ratio(p, den)).collect()).unwrap()
}

fn c1_theorem_oracle() -> Outcome {
    let mut count = 0;
    for n in 1..=12usize {
        for k in 0..n.div_ceil(2) {
            let predicted = betti_of(&classify_core(n, k).map_err(|e| e.to_string())?).unwrap();
            let g = CyclicGraph::cnk(n, k).unwrap();
            let actual = homology(&clique_complex(&g).unwrap()).unwrap();
            check(actual.is_torsion_free(), format!("C_{n}^{k}: torsion {:?}", actual.torsion))?;
            check(predicted == actual, format!("C_{n}^{k}: predicted {predicted:?}, oracle {actual:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs (n, k) agree"))
}

fn c2_random_configurations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..200 {
        let x = random_configuration(&mut rng, 10);
        let r = if rng.random_bool(0.5) {
            // Hit an actual distance to exercise the strict/non-strict split.
            let i = rng.random_range(0..x.len());
            let j = rng.random_range(0..x.len());
            let d = cyclic_rips_core::circle::symmetric_distance(x.get(i), x.get(j));
            if d > int(0) && d < ratio(1, 2) {
                d
            } else {
                random_r(&mut rng)
            }
        } else {
            random_r(&mut rng)
        };
        for strict in [false, true] {
            let g = CyclicGraph::vr_digraph(&x, &r, strict).unwrap();
            let predicted = betti_of(&classify_graph(&g).unwrap()).unwrap();
            let actual = homology(&clique_complex(&g).unwrap()).unwrap();
            check(predicted == actual, format!("trial {trial}: X = {x}, r = {r}, strict = {strict}"))?;
        }
    }
    Ok("200 configurations x 2 strictness modes agree".into())
}

fn c3_confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut removed = 0;
    for trial in 0..100 {
        let n = rng.random_range(1..=12);
        let g = if trial % 2 == 0 {
            random_cyclic_graph(&mut rng, n)
        } else {
            let x = random_configuration(&mut rng, 12);
            let r = random_r(&mut rng);
            CyclicGraph::vr_digraph(&x, &r, rng.random_bool(0.5)).unwrap()
        };
        let canonical = g.dismantle().unwrap();
        let slow = random_dismantling(&g, &mut rng).map_err(|e| e.to_string())?;
        check(
            (canonical.core_n, canonical.core_k) == (slow.core_n, slow.core_k),
            format!(
                "trial {trial}: reach {:?}: core {:?} vs {:?}",
                g.reach(),
                (canonical.core_n, canonical.core_k),
                (slow.core_n, slow.core_k)
            ),
        )?;
        check(
            canonical.survivors == slow.survivors,
            format!(
                "trial {trial}: reach {:?}: survivors {:?} vs {:?}",
                g.reach(),
                canonical.survivors,
                slow.survivors
            ),
        )?;
        let mut pool = Vec::new();
        let shuffled = g
            .dismantle_with(|fresh| {
                pool.append(fresh);
                if pool.is_empty() {
                    return None;
                }
                let i = rng.random_range(0..pool.len());
                Some(pool.swap_remove(i))
            })
            .unwrap();
        check(shuffled.survivors == canonical.survivors, format!("trial {trial}: peeling order changed survivors"))?;
        removed += slow.trace.len();
    }
    Ok(format!("100 graphs, {removed} random removals, cores and survivors identical"))
}

fn small_graph(rng: &mut ChaCha8Rng) -> CyclicGraph {
    if rng.random_bool(0.5) {
        let n = rng.random_range(1..=8);
        random_cyclic_graph(rng, n)
    } else {
        let x = random_configuration(rng, 8);
        let r = random_r(rng);
        CyclicGraph::vr_digraph(&x, &r, rng.random_bool(0.5)).unwrap()
    }
}

fn c4_homomorphism_completeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut present = 0;
    for trial in 0..100 {
        let g = small_graph(&mut rng);
        let h = small_graph(&mut rng);
        let built = build_homomorphism(&g, &h).unwrap();
        let searched = exhaustive_homomorphism(&g, &h);
        check(
            built.is_some() == searched.is_some(),
            format!(
                "trial {trial}: {:?} -> {:?}: built {} searched {}",
                g.reach(),
                h.reach(),
                built.is_some(),
                searched.is_some()
            ),
        )?;
        if let Some(f) = built {
            check(cyclic_homomorphism_by_definition(&f), format!("trial {trial}: built map fails the definition"))?;
            present += 1;
        }
    }
    Ok(format!("100 pairs agree ({present} with a homomorphism)"))
}

fn expected_coords(d: usize) -> BTreeSet<Vec<i64>> {
    let e = |i: usize| (0..d - 1).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    let mut out = BTreeSet::new();
    for i in 0..d - 1 {
        out.insert(e(i));
        out.insert(e(i).iter().map(|x| -x).collect());
        for j in 0..d - 1 {
            if i != j {
                out.insert(e(i).iter().zip(e(j)).map(|(a, b)| a - b).collect());
            }
        }
    }
    out
}

fn c5_cross_polytopal() -> Outcome {
    for (l, d) in [(1usize, 2usize), (1, 3), (2, 2)] {
        let classes = enumerate_cross_polytopal(l, d).map_err(|e| e.to_string())?;
        check(classes.len() == d * (d - 1), format!("(l, d) = ({l}, {d}): {} classes", classes.len()))?;
        let got: BTreeSet<Vec<i64>> = classes.iter().map(|c| c.coords.clone()).collect();
        check(got == expected_coords(d), format!("(l, d) = ({l}, {d}): coordinates {got:?}"))?;
        let g = CyclicGraph::cnk(d * (2 * l + 1), d * l).unwrap();
        let k = clique_complex(&g).unwrap();
        let rank = homology(&k).unwrap().betti(2 * l);
        check(rank == d - 1, format!("(l, d) = ({l}, {d}): H_{} has rank {rank}", 2 * l))?;
        for c in &classes {
            check(!is_rational_boundary(&k, &c.representative).unwrap(), format!("({l}, {d}): a class is zero"))?;
        }
    }
    Ok("(1,2): 2, (1,3): 6, (2,2): 2 classes with coordinates {±e_i, e_i - e_j}".into())
}

fn c6_lattice() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut members = 0;
    for trial in 0..1000 {
        let rank = rng.random_range(1..=6);
        let all = VTilde::all(rank);
        let gens = (0..rng.random_range(0..=5)).map(|_| *all.choose(&mut rng).unwrap()).collect();
        let p = LatticeBasisProblem { rank, generators: gens, query: *all.choose(&mut rng).unwrap() };
        let status = lattice_membership(&p).unwrap();
        check(status != LatticeStatus::MultipleOnly, format!("trial {trial}: forbidden status for {p:?}"))?;
        let brute = lattice_brute(&p, LATTICE_BOUND);
        check(status == brute, format!("trial {trial}: {status:?} vs brute force {brute:?} for {p:?}"))?;
        members += usize::from(status == LatticeStatus::Member);
    }
    Ok(format!("1000 instances ({members} members), forbidden status never seen"))
}

fn c7_cech_shadow() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let x = random_configuration(&mut rng, 8);
        let r = random_r(&mut rng);
        let rep = verify_pi_simplicial(&x, &r).map_err(|e| format!("trial {trial}: {e}"))?;
        check(rep.faces_map_to_faces(), format!("trial {trial}: X = {x}, r = {r}: faces {:?}", rep.face_violations))?;
        check(rep.fibers_are_cones(), format!("trial {trial}: X = {x}, r = {r}: a fiber is not a cone"))?;
        check(
            rep.homology_agrees(),
            format!("trial {trial}: X = {x}, r = {r}: {:?} vs {:?}", rep.vr_homology, rep.cech_homology),
        )?;
    }
    Ok("100 configurations: simplicial, cone fibers, equal homology".into())
}

fn c8_transform() -> Outcome {
    for (n, k) in [(4usize, 1usize), (6, 2), (10, 3)] {
        let t = transform_t(&PointConfiguration::regular(n), &ratio(k as i64, 2 * n as i64)).unwrap();
        check(t == PointConfiguration::regular(n + k), format!("T_{{{k}/{}}}(X_{n}) = {t}", 2 * n))?;
    }
    Ok("X_4 -> X_5, X_6 -> X_8, X_10 -> X_13".into())
}

fn c9_figure() -> Outcome {
    let r = ratio(432, 1000);
    let recs = evolve(&r, false, FIG2_TRIALS, FIG2_MAX_N, 7).map_err(|e| e.to_string())?;
    let last = mean_series(&recs).pop().unwrap();
    check(last.n == FIG2_MAX_N && last.trials == FIG2_TRIALS, "series too short")?;
    let (lo, hi) = wf_band();
    check(
        last.mean_wf >= to_f64(&lo) && last.mean_wf <= to_f64(&hi),
        format!("mean wf at n = {} is {:.6}", last.n, last.mean_wf),
    )?;
    check(
        last.mean_intrinsic_dim >= DIM_BAND.0 && last.mean_intrinsic_dim <= DIM_BAND.1,
        format!("mean intrinsic dimension {:.3}", last.mean_intrinsic_dim),
    )?;
    let hits: Vec<usize> = recs.iter().filter_map(|r| r.n_time).collect();
    let mean_n = hits.iter().sum::<usize>() as f64 / hits.len().max(1) as f64;
    check(
        !hits.is_empty() && mean_n >= FIRST_EXCEED_BAND.0 && mean_n <= FIRST_EXCEED_BAND.1,
        format!("mean first n with wf > 3/7 is {mean_n:.1} over {} trials", hits.len()),
    )?;
    Ok(format!(
        "mean wf {:.5}, mean dim {:.3}, mean first exceedance {mean_n:.1} ({}/{} trials)",
        last.mean_wf,
        last.mean_intrinsic_dim,
        hits.len(),
        FIG2_TRIALS
    ))
}

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::MIN, f64::max);
    let min = v.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

fn c10_scaling() -> Outcome {
    let mut n_ratios = Vec::new();
    for den in [40i64, 80, 160] {
        let s = estimate_thresholds(&ratio(1, den), false, SCALING_TRIALS, 100_000, 10).map_err(|e| e.to_string())?;
        check(s.n.reached == SCALING_TRIALS, format!("delta = 1/{den}: N reached in {} trials", s.n.reached))?;
        n_ratios.push(s.n_ratio.unwrap());
    }
    let mut m_ratios = Vec::new();
    for den in [60i64, 120] {
        let r = ratio(1, 3) + ratio(1, den);
        let s = estimate_thresholds(&r, false, SCALING_TRIALS, 100_000, 10).map_err(|e| e.to_string())?;
        check(s.m.reached == SCALING_TRIALS, format!("delta = 1/{den}: M reached in {} trials", s.m.reached))?;
        m_ratios.push(s.m_ratio.unwrap());
    }
    check(spread(&n_ratios) < SCALING_FACTOR, format!("N ratios {n_ratios:?}"))?;
    check(spread(&m_ratios) < SCALING_FACTOR, format!("M ratios {m_ratios:?}"))?;
    Ok(format!(
        "N/(d^-1 log d^-1) = {:.3?} (spread {:.2}), M d^(2/3) = {:.3?} (spread {:.2})",
        n_ratios,
        spread(&n_ratios),
        m_ratios,
        spread(&m_ratios)
    ))
}

fn c11_bins() -> Outcome {
    let mut trials = 0;
    for m in [1usize, 2, 3, 5] {
        for k in [10usize, 365, 1000] {
            run_bins(m, k, 2000, 11).map_err(|e| format!("m = {m}, K = {k}: {e}"))?;
            trials += 2000;
        }
    }
    let mut coupled = 0;
    for m in [1usize, 2, 3] {
        for k in [5usize, 50] {
            run_regular_coupling(m, k, 300, 11).map_err(|e| format!("m = {m}, K = {k}: {e}"))?;
            coupled += 300;
        }
    }
    let (_, s) = run_bins(2, 365, GOOD_REPETITIONS, 12).map_err(|e| e.to_string())?;
    check(
        (s.good_fraction - 0.5).abs() <= GOOD_TOLERANCE,
        format!("good-outcome frequency {:.4} over {GOOD_REPETITIONS}", s.good_fraction),
    )?;
    Ok(format!(
        "A <= C <= B on {trials} trials, R <= C on {coupled} trials, m = 2 good frequency {:.4}",
        s.good_fraction
    ))
}

fn c12_covering_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut above, mut covering) = (0, 0);
    for trial in 0..100 {
        let r = loop {
            let r = random_r(&mut rng);
            if generic_delta(&r).is_ok() {
                break r;
            }
        };
        let (l, delta) = generic_delta(&r).unwrap();
        // Dense enough that the winding fraction often passes l/(2l+1).
        let len = rng.random_range(1..=60);
        let pts: BTreeSet<u64> = (0..len).map(|_| rng.random::<u64>()).collect();
        let x = PointConfiguration::new(pts.into_iter().map(CirclePoint::from_ticks).collect()).unwrap();
        let wf = CyclicGraph::vr_digraph(&x, &r, true).unwrap().winding_fraction().unwrap().as_rational();
        if wf > singular_value(l) {
            above += 1;
            let eps = (ratio(1, 2) + int(l as i64)) * &delta;
            check(x.is_epsilon_covering(&eps).unwrap(), format!("trial {trial}: wf {wf} > l/(2l+1) but not covering"))?;
        }
        let half_gap = x.max_gap().unwrap() / int(2);
        for eps in [&half_gap + ratio(1, 1_000_000), &half_gap * ratio(11, 10), &half_gap * int(2)] {
            if x.is_epsilon_covering(&eps).unwrap() {
                covering += 1;
                let bound = &r - &eps * int(2);
                check(wf > bound, format!("trial {trial}: covering at {eps} but wf {wf} <= {bound}"))?;
            }
        }
    }
    check(above > 0 && covering > 0, format!("premises never fired: {above}, {covering}"))?;
    Ok(format!("100 configurations: {above} above l/(2l+1), {covering} coverings checked"))
}

fn c13_no_induced_c8_3() -> Outcome {
    let g = CyclicGraph::cnk(11, 4).unwrap();
    let b3 = homology(&clique_complex(&g).unwrap()).unwrap().betti(3);
    check(b3 == 1, format!("b_3 = {b3}"))?;
    check(!has_induced_c8_3(&g).unwrap(), "found an induced C_8^3")?;
    Ok("b_3(Cl(C_11^4)) = 1, no induced C_8^3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("core classification matches SNF homology, n <= 12", c1_theorem_oracle),
        ("classifier matches oracle on random configurations", c2_random_configurations),
        ("dismantling is confluent", c3_confluence),
        ("homomorphism construction is complete", c4_homomorphism_completeness),
        ("cross-polytopal class count and coordinates", c5_cross_polytopal),
        ("lattice membership never yields multiple-only", c6_lattice),
        ("Cech projection: simplicial, cone fibers, equal homology", c7_cech_shadow),
        ("transform of regular polygons", c8_transform),
        ("average evolution at r = 0.432", c9_figure),
        ("waiting-time scaling ladders", c10_scaling),
        ("balls-into-bins path-wise inequalities", c11_bins),
        ("covering sandwich", c12_covering_sandwich),
        ("C_11^4 has b_3 = 1 without induced C_8^3", c13_no_induced_c8_3),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
