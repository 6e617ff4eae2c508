//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any of them fails.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use electoral_sim::ballots::{best_scored, profile_from_orders};
use electoral_sim::cli::{execute, Format, RunConfig};
use electoral_sim::fractional::{compute_weights, verify_limits};
use electoral_sim::metrics::{gini, run_monte_carlo, run_simulation, MonteCarloSettings, SimulationSettings, SimulationTable};
use electoral_sim::scenario::{builtin_scenario, builtin_scenarios, load_scenario};
use electoral_sim::spatial::{geometric_median, median_objective, WeiszfeldOptions};
use electoral_sim::systems::{allocate_dhondt, beatpath_strengths, compute_pairwise, schulze_winner, system_registry};
use electoral_sim::{
    build_preference_matrix, derive_ballots, sample_electorate, BallotConfig, CandidateSet, Electorate,
    MixtureComponent, Point2,
};

const PLURALITY: &str = "Plurality";
const FBD_01: &str = "FB Discrete (sigma=0.1)";
const FBD_03: &str = "FB Discrete (sigma=0.3)";

struct Outcome {
    label: String,
    pass: bool,
    detail: String,
}

fn simulate(slug: &str) -> SimulationTable {
    let scenario = builtin_scenario(slug).expect("built-in scenario");
    run_simulation(&scenario, &system_registry(), &SimulationSettings::with_seed(42)).expect("simulation runs")
}

fn delta(t: &SimulationTable, system: &str) -> f64 {
    t.delta(system).unwrap_or_else(|| panic!("system {system} missing"))
}

fn winner(t: &SimulationTable, system: &str) -> Option<usize> {
    t.record(system).and_then(|r| r.result.winner())
}

fn best_standard_delta(t: &SimulationTable) -> f64 {
    t.records
        .iter()
        .filter(|r| !r.result.system_name.starts_with("FB "))
        .map(|r| r.metrics.distance_to_median)
        .fold(f64::INFINITY, f64::min)
}

fn random_point(rng: &mut impl Rng) -> Point2 {
    Point2::new(rng.random(), rng.random())
}

fn random_mixture(rng: &mut impl Rng) -> Vec<MixtureComponent> {
    let m = rng.random_range(1..=3);
    let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut comps: Vec<MixtureComponent> = raw
        .iter()
        .map(|w| {
            MixtureComponent::new(
                w / total,
                Point2::new(rng.random_range(0.1..0.9), rng.random_range(0.1..0.9)),
                [rng.random_range(0.03..0.2), rng.random_range(0.03..0.2)],
            )
        })
        .collect();
    let drift: f64 = 1.0 - comps.iter().map(|c| c.weight).sum::<f64>();
    comps[0].weight += drift;
    comps
}

fn random_instance(rng: &mut impl Rng) -> (Electorate, CandidateSet) {
    let n = rng.random_range(10..=300);
    let k = rng.random_range(1..=7);
    let electorate = sample_electorate(&random_mixture(rng), n, rng.random()).expect("valid mixture");
    let candidates = CandidateSet::from_positions((0..k).map(|_| random_point(rng)).collect()).expect("valid roster");
    (electorate, candidates)
}

fn criterion_1(polarized: &SimulationTable) -> Outcome {
    let p = delta(polarized, PLURALITY);
    let w = winner(polarized, PLURALITY);
    let same = ["Two-Round Runoff", "IRV"]
        .iter()
        .all(|s| winner(polarized, s) == w && delta(polarized, s) == p);
    Outcome {
        label: "Polarized Bimodal: Plurality delta 0.2321 +/- 0.02; Two-Round and IRV match Plurality".into(),
        pass: (p - 0.2321).abs() <= 0.02 && same,
        detail: format!(
            "plurality={p:.4} two-round={:.4} irv={:.4} same_winner={same}",
            delta(polarized, "Two-Round Runoff"),
            delta(polarized, "IRV")
        ),
    }
}

fn criterion_2(polarized: &SimulationTable) -> Outcome {
    let d3 = delta(polarized, FBD_03);
    let d1 = delta(polarized, FBD_01);
    let mut max_gap: f64 = 0.0;
    for sigma in ["0.1", "0.3", "1"] {
        let a = delta(polarized, &format!("FB Discrete (sigma={sigma})"));
        let b = delta(polarized, &format!("FB Continuous (sigma={sigma})"));
        max_gap = max_gap.max((a - b).abs());
    }
    Outcome {
        label: "Polarized Bimodal: FBD sigma=0.3 delta 0.0043 +/- 0.005, sigma=0.1 delta 0.0044 +/- 0.005; FBD = FBC".into(),
        pass: (d3 - 0.0043).abs() <= 0.005 && (d1 - 0.0044).abs() <= 0.005 && max_gap <= 1e-12,
        detail: format!("fbd(0.3)={d3:.4} fbd(0.1)={d1:.4} max |FBD-FBC|={max_gap:.1e}"),
    }
}

fn criterion_3(polarized: &SimulationTable) -> Outcome {
    let ratio = delta(polarized, PLURALITY) / polarized.best_delta();
    let gap = polarized.diagnostics.median_mean_gap;
    Outcome {
        label: "Polarized Bimodal: Plurality/best ratio in [30, 80]; median-mean gap 0.0096 +/- 0.004".into(),
        pass: (30.0..=80.0).contains(&ratio) && (gap - 0.0096).abs() <= 0.004,
        detail: format!("ratio={ratio:.2} best={:.4} gap={gap:.4}", polarized.best_delta()),
    }
}

fn criterion_4(consensus: &SimulationTable) -> Outcome {
    let winners: Vec<Option<usize>> = ["Borda Count", "Score", "Condorcet-Schulze"]
        .iter()
        .map(|s| winner(consensus, s))
        .collect();
    let agree = winners.iter().all(|w| w.is_some() && *w == winners[0]);
    let gap = consensus.diagnostics.median_mean_gap;
    Outcome {
        label: "Unimodal Consensus: Borda, Score and Schulze agree; median-mean gap <= 0.002".into(),
        pass: agree && gap <= 0.002,
        detail: format!("winners={winners:?} gap={gap:.4}"),
    }
}

fn criterion_5() -> Outcome {
    let scenario = builtin_scenario("polarized_bimodal").expect("built-in scenario");
    let settings = MonteCarloSettings { trials: 200, voters_per_trial: 2000, base_seed: 42, ..Default::default() };
    let start = Instant::now();
    let summary = run_monte_carlo(&scenario, &system_registry(), &settings).expect("monte carlo runs");
    let secs = start.elapsed().as_secs_f64();
    let needed = (0.95 * settings.trials as f64).ceil() as usize;
    let fb_names: Vec<String> = summary
        .systems
        .iter()
        .filter(|s| s.system.starts_with("FB "))
        .map(|s| s.system.clone())
        .collect();
    let weakest = fb_names
        .iter()
        .map(|n| summary.outrank_count(n, PLURALITY).expect("present"))
        .min()
        .unwrap_or(0);
    let var_fb = summary.system(FBD_01).expect("present").variance;
    let var_pl = summary.system(PLURALITY).expect("present").variance;
    Outcome {
        label: "Monte Carlo 200 x 2000: FB outranks Plurality in >= 95% of trials; FBD(0.1) variance < Plurality's".into(),
        pass: weakest >= needed && var_fb < var_pl && secs < 120.0,
        detail: format!(
            "min FB wins={weakest}/{} var fbd(0.1)={var_fb:.3e} var plurality={var_pl:.3e} runtime={secs:.1}s",
            settings.trials
        ),
    }
}

/// Strongest beatpath by enumerating every simple path.
fn brute_force_strengths(wins: &[Vec<usize>], n_voters: usize) -> Vec<Vec<usize>> {
    let k = wins.len();
    let edge = |a: usize, b: usize| if 2 * wins[a][b] > n_voters { Some(wins[a][b]) } else { None };
    fn walk(
        at: usize,
        target: usize,
        weakest: usize,
        visited: &mut Vec<bool>,
        edge: &dyn Fn(usize, usize) -> Option<usize>,
        best: &mut usize,
    ) {
        for next in 0..visited.len() {
            if visited[next] {
                continue;
            }
            if let Some(w) = edge(at, next) {
                let link = weakest.min(w);
                if next == target {
                    *best = (*best).max(link);
                } else {
                    visited[next] = true;
                    walk(next, target, link, visited, edge, best);
                    visited[next] = false;
                }
            }
        }
    }
    let mut p = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a != b {
                let mut visited = vec![false; k];
                visited[a] = true;
                walk(a, b, usize::MAX, &mut visited, &edge, &mut p[a][b]);
            }
        }
    }
    p
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let profiles = 1000;
    let (mut mismatches, mut condorcet_cases, mut condorcet_misses) = (0, 0, 0);
    for _ in 0..profiles {
        let k = rng.random_range(2..=5);
        let n = rng.random_range(1..=9);
        let orders: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let mut o: Vec<usize> = (0..k).collect();
                o.shuffle(&mut rng);
                o
            })
            .collect();
        let profile = profile_from_orders(&orders, BallotConfig::default()).expect("valid orders");
        let pairwise = compute_pairwise(&profile);
        let strengths = beatpath_strengths(&pairwise);
        if strengths.strengths != brute_force_strengths(&pairwise.wins, pairwise.n_voters) {
            mismatches += 1;
        }
        if let Some(cw) = pairwise.condorcet_winner() {
            condorcet_cases += 1;
            if schulze_winner(&strengths) != cw {
                condorcet_misses += 1;
            }
        }
    }
    Outcome {
        label: "Schulze widest paths equal brute force on 1000 profiles; Condorcet winners elected".into(),
        pass: mismatches == 0 && condorcet_misses == 0,
        detail: format!("mismatches={mismatches} condorcet cases={condorcet_cases} misses={condorcet_misses}"),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = WeiszfeldOptions::default();
    let (mut worse, mut worst_excess, mut worst_shift): (usize, f64, f64) = (0, f64::NEG_INFINITY, 0.0);
    let grid: Vec<Point2> = (0..200)
        .flat_map(|i| (0..200).map(move |j| Point2::new(i as f64 / 199.0, j as f64 / 199.0)))
        .collect();
    for _ in 0..100 {
        let n = rng.random_range(1..=50);
        let pts: Vec<Point2> = (0..n).map(|_| random_point(&mut rng)).collect();
        let m = geometric_median(&pts, opts).expect("converges");
        let ours = median_objective(&pts, m);
        let grid_best = grid.iter().map(|g| median_objective(&pts, *g)).fold(f64::INFINITY, f64::min);
        worst_excess = worst_excess.max(ours - grid_best);
        if ours > grid_best + 1e-3 {
            worse += 1;
        }
        let t = Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let shifted: Vec<Point2> = pts.iter().map(|p| *p + t).collect();
        let ms = geometric_median(&shifted, opts).expect("converges");
        worst_shift = worst_shift.max((ms - t).distance(&m));
    }
    Outcome {
        label: "Weiszfeld objective <= 200x200 grid + 1e-3 on 100 sets; translation equivariant to 1e-8".into(),
        pass: worse == 0 && worst_shift <= 1e-8,
        detail: format!("sets worse than grid={worse} max(ours-grid)={worst_excess:.2e} max shift error={worst_shift:.2e}"),
    }
}

fn criterion_8() -> Outcome {
    let example = allocate_dhondt(&[340.0 / 840.0, 280.0 / 840.0, 160.0 / 840.0, 60.0 / 840.0], 7)
        .expect("valid allocation")
        .seats;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut violations = 0;
    for _ in 0..1000 {
        let k = rng.random_range(1..=8);
        let raw: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let shares: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let s = rng.random_range(1..200);
        let a = allocate_dhondt(&shares, s).expect("valid").seats;
        let b = allocate_dhondt(&shares, s + 1).expect("valid").seats;
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            violations += 1;
        }
    }
    Outcome {
        label: "D'Hondt: 7-seat example gives [3,3,1,0]; house monotone on 1000 share vectors".into(),
        pass: example == vec![3, 3, 1, 0] && violations == 0,
        detail: format!("example={example:?} monotonicity violations={violations}"),
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sigmas = [1e-4, 0.1, 0.3, 1.0, 1e6];
    let mut simplex_error: f64 = 0.0;
    for _ in 0..20 {
        let (e, c) = random_instance(&mut rng);
        let m = build_preference_matrix(&e, &c);
        for sigma in sigmas {
            let w = compute_weights(&m, &c, sigma).expect("valid sigma");
            for row in w.rows() {
                let sum: f64 = row.iter().sum();
                simplex_error = simplex_error.max((sum - 1.0).abs());
                if row.iter().any(|x| *x < 0.0) {
                    simplex_error = f64::INFINITY;
                }
            }
        }
    }
    let (mut instances, mut cold_failures, mut row_failures, mut hot_failures, mut max_hot) = (0, 0, 0, 0, 0.0f64);
    while instances < 100 {
        let (e, c) = random_instance(&mut rng);
        let m = build_preference_matrix(&e, &c);
        let report = verify_limits(&m, &c).expect("limits computable");
        if !report.tied_rows.is_empty() {
            continue;
        }
        instances += 1;
        if !report.cold_limit_holds() {
            cold_failures += 1;
        }
        if !report.cold_row_mismatches.is_empty() {
            row_failures += 1;
        }
        if !report.hot_limit_holds() {
            hot_failures += 1;
        }
        max_hot = max_hot.max(report.hot_max_weight_deviation);
    }
    Outcome {
        label: "Softmax rows on the simplex; sigma=1e-4 FBD winner = Plurality winner; sigma=1e6 uniform".into(),
        pass: simplex_error <= 1e-9 && cold_failures == 0 && hot_failures == 0,
        detail: format!(
            "max |row sum - 1|={simplex_error:.1e} cold mismatches={cold_failures}/100 (row argmax mismatches in {row_failures}) hot failures={hot_failures}/100 max hot deviation={max_hot:.1e}"
        ),
    }
}

fn criterion_10() -> Outcome {
    let run = || {
        let dir = tempfile::tempdir().expect("temp dir");
        let config = RunConfig { output_dir: dir.path().to_path_buf(), formats: vec![Format::Csv], ..RunConfig::default() };
        execute(&config).expect("run succeeds");
        std::fs::read(dir.path().join("results.csv")).expect("csv written")
    };
    let first = run();
    let second = run();
    let round_trips = builtin_scenarios()
        .iter()
        .filter(|s| load_scenario(&s.to_yaml()).ok().as_ref() == Some(*s))
        .count();
    Outcome {
        label: "Determinism: two seed-42 runs give byte-identical CSV; YAML round trip on all 8 built-ins".into(),
        pass: first == second && !first.is_empty() && round_trips == 8,
        detail: format!("csv bytes={} identical={} round trips={round_trips}/8", first.len(), first == second),
    }
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut inconsistent, mut gini_out_of_range) = (0usize, 0usize);
    for _ in 0..100 {
        let (e, c) = random_instance(&mut rng);
        let profile = derive_ballots(build_preference_matrix(&e, &c), BallotConfig::default());
        for i in 0..profile.n_voters() {
            let row = &profile.distances.row(i);
            let nearest = (0..row.len()).fold(0, |b, k| if row[k] < row[b] { k } else { b });
            if profile.order(i)[0] != nearest
                || profile.plurality_choices()[i] != nearest
                || best_scored(&profile, i) != nearest
            {
                inconsistent += 1;
            }
        }
        for k in 0..c.len() {
            let column: Vec<f64> = (0..profile.n_voters()).map(|i| profile.distances.get(i, k)).collect();
            let g = gini(&column).expect("valid distances");
            if !(0.0..=1.0).contains(&g) {
                gini_out_of_range += 1;
            }
        }
    }
    let half = gini(&[0.0, 1.0]).expect("valid");
    Outcome {
        label: "Ballots: argmin distance = rank 1 = plurality choice = argmax score; Gini in [0,1], gini([0,1]) = 0.5".into(),
        pass: inconsistent == 0 && gini_out_of_range == 0 && (half - 0.5).abs() < 1e-12,
        detail: format!("inconsistent voters={inconsistent} gini out of range={gini_out_of_range} gini([0,1])={half}"),
    }
}

fn ordering_checks() -> Vec<Outcome> {
    let mut out = Vec::new();
    for slug in ["unimodal_consensus", "multimodal_fragmented", "asymmetric_skewed"] {
        let t = simulate(slug);
        let fb = delta(&t, FBD_01);
        out.push(Outcome {
            label: format!("{}: FBD sigma=0.1 has the minimum delta", t.scenario),
            pass: fb <= t.best_delta(),
            detail: format!("fbd(0.1)={fb:.4} best={:.4} best standard={:.4}", t.best_delta(), best_standard_delta(&t)),
        });
    }
    let t = simulate("dominant_party");
    let fb = delta(&t, FBD_01);
    let std_best = best_standard_delta(&t);
    out.push(Outcome {
        label: format!("{}: FBD sigma=0.1 does not beat the best standard system", t.scenario),
        pass: fb > std_best,
        detail: format!("fbd(0.1)={fb:.4} best standard={std_best:.4}"),
    });
    out
}

fn main() {
    // `cargo test` forwards harness flags such as `--quiet`; none apply here.
    let polarized = simulate("polarized_bimodal");
    let consensus = simulate("unimodal_consensus");

    let criteria = vec![
        criterion_1(&polarized),
        criterion_2(&polarized),
        criterion_3(&polarized),
        criterion_4(&consensus),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ];
    let ordering = ordering_checks();

    let mut failed = Vec::new();
    println!("acceptance criteria");
    for (i, c) in criteria.iter().enumerate() {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2}: {} [{}]", i + 1, c.label, c.detail);
        if !c.pass {
            failed.push(format!("criterion {}", i + 1));
        }
    }
    for (i, c) in ordering.iter().enumerate() {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        println!("{tag} ordering {}: {} [{}]", i + 1, c.label, c.detail);
        if !c.pass {
            failed.push(format!("ordering {}", i + 1));
        }
    }
    let total = criteria.len() + ordering.len();
    println!("{} of {total} checks passed", total - failed.len());
    if !failed.is_empty() {
        eprintln!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
