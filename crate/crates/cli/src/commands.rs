use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use laplacian::conjugacy::{
    count_solutions_per_length, solve_brute, solve_structural, ConjugacyJson, ConjugacyProblem, Mode, SolutionReport,
};
use laplacian::radial::{radial_norm_squared, verify_recurrence};
use laplacian::series::{series_partial_sums, SeriesRecord, SeriesReport};
use laplacian::suite::{render_table, run_suite, Check, CriterionResult, Status, SuiteConfig};
use laplacian::word::{enumerate_words, guarded_words};
use laplacian::{cond_exp, make_w, AlgebraElement, TensorWord, Word};

use crate::config::{Format, RunConfig, Solver};
use crate::{Cli, Command, RadialCommand};

const FAILED: u8 = 1;

fn failed() -> ExitCode {
    ExitCode::from(FAILED)
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let default_n_max = match cli.command {
        Command::Series { .. } => 8,
        _ => 0,
    };
    let cfg = cli.opts.resolve(default_n_max)?;
    match cli.command {
        Command::Words { len, count_only } => words(&cfg, len, count_only),
        Command::Radial { action } => match action {
            RadialCommand::Norm { n } => radial_norm(&cfg, n),
            RadialCommand::Recurrence { max_n } => radial_recurrence(&cfg, max_n),
            RadialCommand::Expect { input, tensor } => radial_expect(&cfg, input.as_deref(), tensor.as_deref()),
        },
        Command::Conjugacy { a, b, len, lmax, mode, sweep, max_word_len } => {
            if sweep {
                conjugacy_sweep(&cfg, max_word_len, lmax.unwrap_or(6))
            } else {
                let a = Word::parse(cfg.rank, a.as_deref().unwrap_or_default())?;
                let b = Word::parse(cfg.rank, b.as_deref().unwrap_or_default())?;
                match (len, lmax) {
                    (Some(l), _) => conjugacy_single(&cfg, a, b, l, mode),
                    (None, Some(l_max)) => conjugacy_counts(&cfg, &a, &b, l_max, mode),
                    (None, None) => bail!("pass --len or --lmax"),
                }
            }
        }
        Command::Series { xs, ys } => series(&cfg, &xs, &ys),
        Command::VerifyAll => verify_all(&cfg),
    }
}

/// Writes to `--out` when given, stdout otherwise.
fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn show_word(w: &Word) -> String {
    if w.is_identity() {
        "e".into()
    } else {
        w.to_string()
    }
}

fn words(cfg: &RunConfig, len: usize, count_only: bool) -> Result<ExitCode> {
    if count_only {
        println!("count: {}", cfg.rank.sphere_size(len));
        return Ok(ExitCode::SUCCESS);
    }
    let words = guarded_words(cfg.rank, len, &cfg.guard)?;
    println!("count: {}", words.len());
    let listing: String = words.iter().map(|w| show_word(w) + "\n").collect();
    emit(cfg, &listing)?;
    Ok(ExitCode::SUCCESS)
}

fn radial_norm(cfg: &RunConfig, n: usize) -> Result<ExitCode> {
    let closed = radial_norm_squared(cfg.rank, n);
    let enumerated = make_w(cfg.rank, cfg.k(), n, &cfg.guard)?.norm2_squared();
    println!("{closed}");
    let agrees = enumerated == closed.clone().into();
    println!("enumeration (k={}): {} ({})", cfg.k(), enumerated, if agrees { "agrees" } else { "DISAGREES" });
    Ok(if agrees { ExitCode::SUCCESS } else { failed() })
}

fn radial_recurrence(cfg: &RunConfig, max_n: usize) -> Result<ExitCode> {
    let k = cfg.k();
    let mut bad = Vec::new();
    for n in 2..=max_n {
        if !verify_recurrence(cfg.rank, k, n, &cfg.guard)?.holds() {
            bad.push(n);
        }
    }
    let boundary = verify_recurrence(cfg.rank, k, 1, &cfg.guard)?;
    let boundary_text =
        format!("boundary n=1: w1²=w2+{}·w0{}", boundary.multiplicity, if boundary.holds() { "" } else { " FAILS" });
    let range = if max_n >= 2 { format!("n=2..{max_n}") } else { "no n ≥ 2 requested".into() };
    if bad.is_empty() && boundary.holds() {
        println!("OK ({range}), {boundary_text}");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAILED ({range}; fails at n={bad:?}), {boundary_text}");
        Ok(failed())
    }
}

fn radial_expect(cfg: &RunConfig, input: Option<&Path>, tensor: Option<&str>) -> Result<ExitCode> {
    let element = match (input, tensor) {
        (_, Some(t)) => {
            let t = TensorWord::parse(cfg.rank, t)?;
            if let Some(k) = cfg.depth {
                if k != t.depth() {
                    bail!("--k {} does not match the tensor depth {}", k, t.depth());
                }
            }
            AlgebraElement::from_tensor(t)
        }
        (Some(path), None) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
            };
            AlgebraElement::from_json_str(&text)?
        }
        (None, None) => bail!("pass --input or --tensor"),
    };
    emit(cfg, &(cond_exp(&element).to_json_string() + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn solve_with(cfg: &RunConfig, p: &ConjugacyProblem) -> Result<(SolutionReport, bool)> {
    Ok(match cfg.solver {
        Solver::Structural => (solve_structural(p, &cfg.guard)?, true),
        Solver::Brute => (solve_brute(p, &cfg.guard)?, true),
        Solver::Both => {
            let s = solve_structural(p, &cfg.guard)?;
            let b = solve_brute(p, &cfg.guard)?;
            let agree = s.solutions == b.solutions;
            if !agree {
                eprintln!(
                    "solvers disagree at l={}: structural {:?}, brute force {:?}",
                    p.len(),
                    s.solutions.iter().map(show_word).collect::<Vec<_>>(),
                    b.solutions.iter().map(show_word).collect::<Vec<_>>()
                );
            }
            (b, agree)
        }
    })
}

fn conjugacy_single(cfg: &RunConfig, a: Word, b: Word, len: usize, mode: Mode) -> Result<ExitCode> {
    let p = ConjugacyProblem::new(a, b, len, mode)?;
    let (report, agree) = solve_with(cfg, &p)?;
    emit(cfg, &(serde_json::to_string(&ConjugacyJson::new(&p, &report))? + "\n"))?;
    Ok(if agree { ExitCode::SUCCESS } else { failed() })
}

fn conjugacy_counts(cfg: &RunConfig, a: &Word, b: &Word, l_max: usize, mode: Mode) -> Result<ExitCode> {
    let mut all_agree = true;
    let counts = if cfg.solver == Solver::Brute {
        count_solutions_per_length(a, b, l_max, mode, &cfg.guard)?
    } else {
        let mut counts = Vec::with_capacity(l_max);
        for l in 1..=l_max {
            let (report, agree) = solve_with(cfg, &ConjugacyProblem::new(a.clone(), b.clone(), l, mode)?)?;
            all_agree &= agree;
            counts.push(report.count());
        }
        counts
    };
    let mut text = String::from("l,count\n");
    for (i, c) in counts.iter().enumerate() {
        text += &format!("{},{}\n", i + 1, c);
    }
    emit(cfg, &text)?;
    Ok(if all_agree { ExitCode::SUCCESS } else { failed() })
}

fn conjugacy_sweep(cfg: &RunConfig, max_word_len: usize, l_max: usize) -> Result<ExitCode> {
    cfg.guard.check(cfg.rank, l_max)?;
    cfg.guard.check(cfg.rank, max_word_len)?;
    let nontrivial: Vec<Word> = (1..=max_word_len).flat_map(|n| enumerate_words(cfg.rank, n)).collect();
    let mut instances = 0usize;
    let mut disagreements = 0usize;
    for a in &nontrivial {
        for b in &nontrivial {
            for l in 1..=l_max {
                for mode in [Mode::NoCancel, Mode::General] {
                    let p = ConjugacyProblem::new(a.clone(), b.clone(), l, mode)?;
                    instances += 1;
                    if solve_structural(&p, &cfg.guard)?.solutions != solve_brute(&p, &cfg.guard)?.solutions {
                        disagreements += 1;
                        eprintln!("disagreement: a={} b={} l={} mode={}", a, b, l, mode);
                    }
                }
            }
        }
    }
    emit(cfg, &format!("instances: {instances}, disagreements: {disagreements}\n"))?;
    Ok(if disagreements == 0 { ExitCode::SUCCESS } else { failed() })
}

fn series_table(records: &[SeriesRecord], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(records)? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn series_summary(report: &SeriesReport) -> Vec<String> {
    let mut lines = vec![format!("n0: {}", report.n0)];
    let max = report.max_tail_solution_count();
    lines.push(format!("solution_count <= 1 for all n > n0: {} (max {})", if max <= 1 { "yes" } else { "no" }, max));
    lines.push(match &report.certified_total_bound {
        Some(b) => format!("certified total bound: {b}"),
        None => "certified total bound: not applicable (both tensors diagonal)".into(),
    });
    if report.violations.is_empty() {
        lines.push("violations: none".into());
    } else {
        for v in &report.violations {
            lines.push(format!("violation: {v:?}"));
        }
    }
    lines
}

fn series(cfg: &RunConfig, xs: &str, ys: &str) -> Result<ExitCode> {
    let xs = TensorWord::parse(cfg.rank, xs)?;
    let ys = TensorWord::parse(cfg.rank, ys)?;
    if xs.depth() != ys.depth() {
        bail!("xs has depth {} but ys has depth {}", xs.depth(), ys.depth());
    }
    if let Some(k) = cfg.depth {
        if k != xs.depth() {
            bail!("--k {} does not match the tensor depth {}", k, xs.depth());
        }
    }
    let report = series_partial_sums(&xs, &ys, cfg.n_max, &cfg.guard)?;
    let records: Vec<SeriesRecord> = report.rows.iter().map(|r| r.record()).collect();
    let table = series_table(&records, cfg.format)?;
    let summary = series_summary(&report);
    match &cfg.out {
        Some(path) => {
            write_file(path, &table)?;
            summary.iter().for_each(|l| println!("{l}"));
        }
        None => {
            print!("{table}");
            summary.iter().for_each(|l| eprintln!("{l}"));
        }
    }
    Ok(if report.certified() { ExitCode::SUCCESS } else { failed() })
}

fn verify_all(cfg: &RunConfig) -> Result<ExitCode> {
    let suite = SuiteConfig { guard: cfg.guard, seed: cfg.seed };
    let mut results = run_suite(&suite);
    let first = render_table(&results);
    let same = render_table(&run_suite(&suite)) == first;
    results.push(CriterionResult {
        id: 10,
        title: "deterministic report",
        status: if same { Status::Pass } else { Status::Fail },
        checks: vec![Check {
            name: "second run".into(),
            passed: same,
            detail: if same { "byte-identical table".into() } else { "tables differ".into() },
        }],
        notice: None,
    });
    let table = render_table(&results);
    print!("{table}");
    if let Some(path) = &cfg.out {
        write_file(path, &table)?;
    }
    Ok(if results.iter().any(|r| r.status == Status::Fail) {
        failed()
    } else if results.iter().any(|r| r.status == Status::Skipped) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
