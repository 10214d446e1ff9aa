use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use cubil_core::cubic::{girth_bfs, girth_upper_bound, CubicGraph};
use cubil_core::ig::{build_ig, dsum_bounds, min_solid_cycle_bruteforce, nonchain_girth, summary_distance_exact, ORACLE_VERTEX_LIMIT};
use cubil_core::spokes::{
    count_valid_bruteforce, count_valid_formula, enumerate_valid, extend_description, search_best_girth,
    validate_spoke_vector, SearchOptions, SignedSpokeDescription, SpokeVector, TieBreak, Verdict, Violation,
};
use cubil_core::turbo::interleavers::{default_spread, quadratic_interleaver, spread_violation, srandom_interleaver};
use cubil_core::turbo::sim::{gnuplot_script, simulate_ber, to_csv, BerPoint, SimConfig};
use cubil_core::Permutation;

use crate::report::Report;
use crate::{
    AnalyzeArgs, CliError, Command, CompareArgs, CountArgs, EnumerateArgs, ExtendArgs, Family, GenArgs, SearchArgs,
    SimulateArgs, SweepArgs, TieBreakArg, ValidateArgs, EXIT_INVALID, EXIT_OK,
};

pub(crate) struct Outcome {
    pub report: Report,
    /// `(file name inside the output directory, contents)`.
    pub artifacts: Vec<(PathBuf, String)>,
    pub status: i32,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report,
            artifacts: Vec::new(),
            status: EXIT_OK,
        }
    }

    fn with(mut self, file: impl Into<PathBuf>, contents: String) -> Self {
        self.artifacts.push((file.into(), contents));
        self
    }
}

pub(crate) fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate(a) => validate(a),
        Command::Count(a) => count(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Search(a) => search(a),
        Command::Extend(a) => extend(a),
        Command::Gen(a) => gen(a),
        Command::Analyze(a) => analyze(a),
        Command::Simulate(a) => simulate(a),
        Command::Compare(a) => compare(a),
        Command::Replay(_) => unreachable!("replay is resolved before dispatch"),
    }
}

fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn moore_bound(n: usize) -> f64 {
    2.0 * ((n + 1) as f64).log2()
}

fn validate(a: &ValidateArgs) -> Result<Outcome, CliError> {
    let mut r = Report::new();
    r.field("n", a.n).field("s", a.s).field("c", join(&a.c, ",")).field("simple_only", a.simple);
    match validate_spoke_vector(a.n, a.s, &a.c, a.simple) {
        Verdict::Accept => {
            r.field("verdict", "ACCEPT");
            let v = SpokeVector::new(a.n, a.c.clone())?;
            r.field("simple", v.is_simple());
            if v.is_simple() {
                r.field("girth", v.girth()?);
            }
            Ok(Outcome::ok(r))
        }
        Verdict::Reject(violation) => {
            r.field("verdict", "REJECT").field("reason", &violation);
            if let Violation::Complement { partner, required, found, .. } = violation {
                r.field("witness", format!("c{partner}={required}")).field("found", found);
            }
            Ok(Outcome {
                status: EXIT_INVALID,
                ..Outcome::ok(r)
            })
        }
    }
}

fn count(a: &CountArgs) -> Result<Outcome, CliError> {
    let formula = count_valid_formula(a.n, a.s)?;
    let mut r = Report::new();
    r.field("n", a.n)
        .field("s", a.s)
        .field("two_s_divides_n", a.n % (2 * a.s) == 0)
        .field("formula", &formula);
    if !a.skip_brute_force {
        let brute = count_valid_bruteforce(a.n, a.s, false, u128::from(a.budget))?;
        r.field("brute_force", brute).field("agree", formula == brute.into());
    }
    Ok(Outcome::ok(r))
}

fn enumerate(a: &EnumerateArgs) -> Result<Outcome, CliError> {
    let vectors: Vec<SpokeVector> = enumerate_valid(a.n, a.s, a.simple, u128::from(a.budget))?.collect();
    let mut r = Report::new();
    r.field("n", a.n).field("s", a.s).field("simple_only", a.simple).field("count", vectors.len());
    r.table(&["vector"]);
    for v in &vectors {
        r.row(vec![v.to_string()]);
    }
    Ok(Outcome::ok(r))
}

fn search(a: &SearchArgs) -> Result<Outcome, CliError> {
    let opts = SearchOptions {
        tie_break: match a.tie_break {
            TieBreakArg::MaxDsum => TieBreak::MaxSummaryDistance,
            TieBreakArg::Lexicographic => TieBreak::Lexicographic,
        },
        workers: a.workers,
        budget: u128::from(a.budget),
    };
    let report = search_best_girth(a.n, a.s, &opts)?;
    let mut r = Report::new();
    r.field("n", a.n)
        .field("s", a.s)
        .field("examined", report.examined)
        .field("girth_upper_bound", format!("{:.4}", girth_upper_bound(a.n)))
        .field("spoke_cycle_bound", 2 * a.s + 2);
    let Some(best) = report.best_girth else {
        r.field("girth", "none");
        return Ok(Outcome::ok(r));
    };
    r.field("girth", best).field("winners", report.winners.len());
    let chosen = report.chosen.as_ref().expect("winners exist");
    let (lo, hi) = dsum_bounds(chosen.ig_girth)?;
    r.field("chosen", &chosen.vector)
        .field("ig_girth", chosen.ig_girth)
        .field("dsum", chosen.dsum)
        .field("dsum_lower_bound", lo)
        .field("dsum_upper_bound", hi)
        .field("ig_girth_bound", format!("{:.4}", moore_bound(a.n)));
    r.table(&["winner", "ig_girth", "dsum"]);
    for c in report.winners.iter().take(a.list) {
        r.row(vec![c.vector.to_string(), c.ig_girth.to_string(), c.dsum.to_string()]);
    }
    Ok(Outcome::ok(r).with("search.spokes", chosen.vector.to_text()))
}

fn extend(a: &ExtendArgs) -> Result<Outcome, CliError> {
    if a.c.len() != a.s {
        return Err(CliError::Invalid(format!("--s {} but {} entries given", a.s, a.c.len())));
    }
    let v = SpokeVector::new(a.n, a.c.clone())?;
    let desc = SignedSpokeDescription::from_vector(&v);
    let ext = extend_description(&v, a.k)?;
    let mut r = Report::new();
    r.field("input", &v)
        .field("description", join(&desc.signed_values(), ","))
        .field("k", a.k)
        .field("order", ext.block_len())
        .field("extended", &ext);
    if v.is_simple() {
        let (before, after) = (v.girth()?, ext.girth()?);
        r.field("girth_before", before).field("girth_after", after).field("girth_kept", after >= before);
    }
    Ok(Outcome::ok(r).with("extend.spokes", ext.to_text()))
}

fn gen(a: &GenArgs) -> Result<Outcome, CliError> {
    let mut r = Report::new();
    r.field("family", format!("{:?}", a.family).to_lowercase()).field("n", a.n);
    let p = match a.family {
        Family::Spokes => {
            if a.c.is_empty() {
                return Err(CliError::Usage("--c is required for the spokes family".into()));
            }
            let v = SpokeVector::new(a.n, a.c.clone())?;
            r.field("vector", &v);
            v.interleaver()
        }
        Family::Quadratic => {
            r.field("k", a.k);
            quadratic_interleaver(a.n, a.k)?
        }
        Family::Srandom => {
            let spread = a.spread.unwrap_or_else(|| default_spread(a.n));
            let seed = a.seed.expect("seed resolved before dispatch");
            let p = srandom_interleaver(a.n, spread, seed, a.attempts)?;
            debug_assert!(spread_violation(&p, spread).is_none());
            r.field("spread", spread).field("seed", seed);
            p
        }
    };
    r.field("involution", p.is_involution()).field("file", a.output.display());
    Ok(Outcome::ok(r).with(a.output.clone(), p.to_text()))
}

fn read_interleaver(path: &Path) -> Result<Permutation, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(Permutation::from_text(&text)?)
}

fn analyze(a: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let p = read_interleaver(&a.input)?;
    let n = p.len();
    let ig = build_ig(&p)?;
    let g = nonchain_girth(&ig);
    let d = summary_distance_exact(&ig);
    let mut r = Report::new();
    r.field("n", n)
        .field("involution", p.is_involution())
        .field("fixed_points", p.fixed_points().count())
        .field("ig_girth", g)
        .field("dsum", d);
    match dsum_bounds(g) {
        Ok((lo, hi)) => {
            r.field("dsum_lower_bound", lo)
                .field("dsum_upper_bound", hi)
                .field("dsum_within_bounds", lo <= d && d <= hi);
        }
        Err(_) => {
            r.field("dsum_lower_bound", "n/a").field("dsum_upper_bound", "n/a");
        }
    }
    let bound = moore_bound(n);
    r.field("ig_girth_bound", format!("{bound:.4}")).field("ig_girth_within_bound", g as f64 <= bound);
    if let Ok(cubic) = CubicGraph::from_permutation(&p) {
        let girth = girth_bfs(&cubic);
        r.field("graph_girth", girth).field("ig_girth_at_least_graph_girth", g >= girth);
    }
    if 2 * n <= ORACLE_VERTEX_LIMIT {
        r.field("dsum_oracle", min_solid_cycle_bruteforce(&ig)?);
    }
    Ok(Outcome::ok(r))
}

fn sim_config(p: Permutation, sweep: &SweepArgs) -> SimConfig {
    SimConfig {
        iterations: sweep.iterations,
        min_bit_errors: sweep.min_errors,
        max_blocks: sweep.max_blocks,
        workers: sweep.workers,
        ..SimConfig::new(p, sweep.ebn0.clone(), sweep.seed.expect("seed resolved before dispatch"))
    }
}

fn sweep_fields(r: &mut Report, n: usize, sweep: &SweepArgs) {
    r.field("n", n)
        .field("iterations", sweep.iterations)
        .field("min_errors", sweep.min_errors)
        .field("max_blocks", sweep.max_blocks)
        .field("seed", sweep.seed.expect("seed resolved before dispatch"));
}

fn point_cells(p: &BerPoint) -> Vec<String> {
    vec![
        p.ebn0_db.to_string(),
        p.blocks.to_string(),
        p.bit_errors.to_string(),
        p.frame_errors.to_string(),
        format!("{:.6e}", p.ber()),
        format!("{:.6e}", p.fer()),
    ]
}

const POINT_HEADER: [&str; 6] = ["ebn0_db", "blocks", "bit_errors", "frame_errors", "ber", "fer"];

fn simulate(a: &SimulateArgs) -> Result<Outcome, CliError> {
    let p = read_interleaver(&a.input)?;
    let n = p.len();
    let points = simulate_ber(&sim_config(p, &a.sweep))?;
    let mut r = Report::new();
    sweep_fields(&mut r, n, &a.sweep);
    r.table(&POINT_HEADER);
    for pt in &points {
        r.row(point_cells(pt));
    }
    let label = a.label.clone().unwrap_or_else(|| stem(&a.input));
    let script = gnuplot_script(&[("simulate.csv", &label)], "simulate.png");
    Ok(Outcome::ok(r).with("simulate.csv", to_csv(&points)).with("simulate.gp", script))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "interleaver".into(), |s| s.to_string_lossy().into_owned())
}

fn compare(a: &CompareArgs) -> Result<Outcome, CliError> {
    if !a.labels.is_empty() && a.labels.len() != a.inputs.len() {
        return Err(CliError::Usage(format!(
            "{} labels given for {} inputs",
            a.labels.len(),
            a.inputs.len()
        )));
    }
    let labels: Vec<String> = if a.labels.is_empty() {
        a.inputs.iter().map(|p| stem(p)).collect()
    } else {
        a.labels.clone()
    };
    if labels.iter().collect::<HashSet<_>>().len() != labels.len() {
        return Err(CliError::Usage("curve labels must be distinct".into()));
    }

    let mut curves = Vec::with_capacity(a.inputs.len());
    let mut n = None;
    for (input, label) in a.inputs.iter().zip(&labels) {
        let p = read_interleaver(input)?;
        if *n.get_or_insert(p.len()) != p.len() {
            return Err(CliError::Invalid(format!("{} has a different block length", input.display())));
        }
        curves.push((label.clone(), simulate_ber(&sim_config(p, &a.sweep))?));
    }

    let mut r = Report::new();
    sweep_fields(&mut r, n.unwrap_or(0), &a.sweep);
    // ranking at the highest grid point, lowest BER first
    if let Some(last) = a.sweep.ebn0.iter().copied().enumerate().max_by(|x, y| x.1.total_cmp(&y.1)) {
        let mut order: Vec<(&str, f64)> = curves.iter().map(|(l, pts)| (l.as_str(), pts[last.0].ber())).collect();
        order.sort_by(|x, y| x.1.total_cmp(&y.1));
        let ranking: Vec<&str> = order.iter().map(|(l, _)| *l).collect();
        r.field("highest_ebn0_db", last.1).field("ranking_at_highest", ranking.join("<"));
    }
    let mut header = vec!["label"];
    header.extend(POINT_HEADER);
    r.table(&header);
    let mut outcome_files = Vec::new();
    for (label, points) in &curves {
        for pt in points {
            let mut cells = vec![label.clone()];
            cells.extend(point_cells(pt));
            r.row(cells);
        }
        outcome_files.push((PathBuf::from(format!("compare-{label}.csv")), to_csv(points)));
    }
    let names: Vec<(String, &str)> = outcome_files
        .iter()
        .zip(&labels)
        .map(|((f, _), l)| (f.display().to_string(), l.as_str()))
        .collect();
    let refs: Vec<(&str, &str)> = names.iter().map(|(f, l)| (f.as_str(), *l)).collect();
    let script = gnuplot_script(&refs, "compare.png");
    let mut outcome = Outcome::ok(r);
    outcome.artifacts = outcome_files;
    Ok(outcome.with("compare.gp", script))
}
