//! Command-line front end: every experiment is a subcommand emitting CSV
//! or JSON with reproducible seeds.
//!
//! Exit codes: 0 on success, 1 when a check subcommand ran but its
//! assertion failed, 2 on usage errors (bad polynomial text, budget
//! exceeded, invalid primes, malformed relations).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use pilab::census::{
    census_charpoly, census_nilpotent, census_rank_deficient, census_vanishing,
    check_matrix_bound, estimate_dimension, estimate_dimension_from_counts, identity_check,
    CensusEvidence, CensusMode, CensusOptions, CensusRecord, DimensionEstimate,
    DEFAULT_BUDGET, DEFAULT_SAMPLE_SIZE,
};
use pilab::error::Error;
use pilab::field::PrimeField;
use pilab::growth::{associative_dims, jordan_coeffs, jordan_growth_check, lie_inequality_check, witt_numbers, SeriesTable};
use pilab::parse::{parse_letters, parse_poly_spec, parse_univariate};
use pilab::score::{dimension_race, rewrite, Relation, ScoreSystem};
use pilab::words::Word;
use pilab::{avoidance, MatrixTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(Parser)]
#[command(name = "pilab", version, about = "Census and combinatorics experiments for polynomial identities of matrix algebras")]
struct Cli {
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format (score-demo and rewrite always print plain text).
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a polynomial vanishes identically on M_s(F_q).
    IdentityCheck {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count the tuples on which a polynomial vanishes, with the full
    /// fiber histogram in exact mode.
    Census {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long)]
        sample_size: Option<u64>,
        /// Seed for sampled mode (required there).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Estimate dimension and codimension of a vanishing locus from exact
    /// counts over several primes.
    EstimateDim {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check the measured codimension against the explicit lower bound.
    MatrixBound {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit the full fiber histogram of the evaluation map at one prime.
    Fibers {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count matrices with vanishing s-th power.
    Nilpotent {
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count matrices with a prescribed characteristic polynomial.
    Charpoly {
        /// Monic univariate polynomial, e.g. "x^2+x".
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count rectangular matrices of deficient rank.
    Rankdef {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count sequences avoiding a consecutive pattern.
    Avoid {
        /// Pattern letters, e.g. "1,1".
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: u8,
        #[arg(long = "N")]
        len: usize,
        /// Emit one row per length from 0 to N.
        #[arg(long)]
        sweep: bool,
    },
    /// Print the weight table, sample scores, and a rewriting trace.
    ScoreDemo {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 6)]
        j_max: u64,
    },
    /// Rewrite a word modulo a relation until it avoids the head.
    Rewrite {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        d: usize,
        /// Head word letters, e.g. "1,1".
        #[arg(long)]
        head: String,
        /// Replacement word letters ("e" for the empty word); repeatable.
        #[arg(long)]
        body: Vec<String>,
        #[arg(long)]
        word: String,
    },
    /// Dimension series of a free algebra.
    Growth {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u8,
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
    /// Exact comparison of Lie-algebra dimensions against the symmetric
    /// bound, degree by degree.
    LieIneq {
        #[arg(long)]
        n: u8,
        #[arg(long, default_value_t = 64)]
        max: u32,
    },
    /// Root growth of the free Jordan series.
    JordanGrowth {
        #[arg(long)]
        n: u8,
        #[arg(long, default_value_t = 200)]
        max: usize,
    },
    /// Compare free-algebra dimension against the avoiding-words-times-tags
    /// bound at a concrete cutoff.
    DimensionRace {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        len: usize,
        /// Avoided pattern (defaults to the constant word 1...1 of length d).
        #[arg(long)]
        pattern: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Associative,
    Lie,
    Jordan,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((content, code)) => {
            if let Err(err) = write_output(&cli, &content) {
                eprintln!("error: {err}");
                std::process::exit(2);
            }
            std::process::exit(code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}

fn write_output(cli: &Cli, content: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn opt_f6(x: Option<f64>) -> String {
    x.map(f6).unwrap_or_default()
}

fn jf(x: f64) -> Value {
    Value::from(x)
}

fn jbig(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn fields(q: &[u32]) -> Result<Vec<PrimeField>, Error> {
    q.iter().map(|&p| PrimeField::new(p)).collect()
}

fn tuple_string(t: &MatrixTuple) -> String {
    t.matrices()
        .iter()
        .map(|m| m.digit_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn evidence_string(e: &CensusEvidence) -> String {
    match e {
        CensusEvidence::Exact => "exact".into(),
        CensusEvidence::Sampled { sample_size, hits, .. } => {
            format!("sampled:{sample_size}:{hits}")
        }
    }
}

fn census_csv_row(r: &CensusRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.poly_id,
        r.s,
        r.q,
        r.n,
        evidence_string(&r.evidence),
        r.total,
        r.zero_count,
        r.max_fiber.map(|m| m.to_string()).unwrap_or_default(),
        opt_f6(r.dim_log()),
        opt_f6(r.codim_log()),
        opt_f6(r.hausdorff_ratio()),
    )
}

fn census_json(r: &CensusRecord) -> Value {
    let mut value = json!({
        "poly": r.poly_id,
        "s": r.s,
        "q": r.q,
        "n": r.n,
        "mode": evidence_string(&r.evidence),
        "total": jbig(&r.total),
        "zero_count": jbig(&r.zero_count),
        "max_fiber": r.max_fiber,
        "dim_hat": r.dim_log(),
        "codim_hat": r.codim_log(),
        "hausdorff": r.hausdorff_ratio(),
    });
    if let CensusEvidence::Sampled { sample_size, hits, halfwidth } = r.evidence {
        value["sample_size"] = json!(sample_size);
        value["hits"] = json!(hits);
        value["ci95_halfwidth"] = jf(halfwidth);
    }
    if let Some(fibers) = &r.fibers {
        value["fibers"] = json!(fibers);
    }
    value
}

fn estimate_json(est: &DimensionEstimate) -> Value {
    json!({
        "ambient_dim": est.ambient_dim,
        "dim_hat": jf(est.dim_hat),
        "codim_hat": jf(est.codim_hat),
        "hausdorff": jf(est.hausdorff),
        "per_q": est
            .per_q
            .iter()
            .map(|(q, log)| json!({ "q": q, "log_q_count": log }))
            .collect::<Vec<_>>(),
    })
}

fn wrap_json(config: Value, results: Value) -> String {
    let doc = json!({ "config": config, "results": results });
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

type Outcome = Result<(String, i32), Error>;

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::IdentityCheck { poly, s, q, n, budget } => {
            let parsed = parse_poly_spec(poly, *n)?;
            let mut rows = Vec::new();
            let mut results = Vec::new();
            for field in fields(q)? {
                let check = identity_check(&parsed, *s, field, *budget)?;
                let witness = check.witness.as_ref().map(tuple_string);
                rows.push(format!(
                    "{},{},{},{},{},{},{},{}",
                    parsed.canonical_string(),
                    s,
                    field.modulus(),
                    parsed.alphabet(),
                    check.multilinear,
                    check.identity,
                    check.points_checked,
                    witness.clone().unwrap_or_default(),
                ));
                results.push(json!({
                    "q": field.modulus(),
                    "multilinear": check.multilinear,
                    "identity": check.identity,
                    "points_checked": check.points_checked,
                    "witness": witness,
                }));
            }
            let config = json!({
                "subcommand": "identity-check",
                "poly": poly, "s": s, "q": q, "n": n, "budget": budget,
            });
            emit_rows(
                cli,
                "poly,s,q,n,multilinear,identity,points_checked,witness",
                rows,
                config,
                Value::Array(results),
                0,
            )
        }
        Command::Census { poly, s, q, n, mode, sample_size, seed, workers, budget } => {
            let parsed = parse_poly_spec(poly, *n)?;
            let census_mode = match mode {
                Mode::Exact => CensusMode::Exact,
                Mode::Sampled => {
                    let seed = seed.ok_or_else(|| {
                        Error::Precondition("sampled mode requires --seed".into())
                    })?;
                    CensusMode::Sampled {
                        sample_size: sample_size.unwrap_or(DEFAULT_SAMPLE_SIZE),
                        seed,
                    }
                }
            };
            let opts = CensusOptions { budget: *budget, workers: *workers, mode: census_mode };
            let mut rows = Vec::new();
            let mut results = Vec::new();
            for field in fields(q)? {
                let record = census_vanishing(&parsed, *s, field, &opts)?;
                rows.push(census_csv_row(&record));
                results.push(census_json(&record));
            }
            let config = json!({
                "subcommand": "census",
                "poly": poly, "s": s, "q": q, "n": n,
                "mode": match mode { Mode::Exact => "exact", Mode::Sampled => "sampled" },
                "sample_size": match mode { Mode::Sampled => Some(sample_size.unwrap_or(DEFAULT_SAMPLE_SIZE)), Mode::Exact => None },
                "seed": seed,
                "budget": budget,
            });
            emit_rows(cli, CENSUS_HEADER, rows, config, Value::Array(results), 0)
        }
        Command::EstimateDim { poly, s, q, n, workers, budget } => {
            let parsed = parse_poly_spec(poly, *n)?;
            let opts = CensusOptions { budget: *budget, workers: *workers, mode: CensusMode::Exact };
            let mut records = Vec::new();
            for field in fields(q)? {
                records.push(census_vanishing(&parsed, *s, field, &opts)?);
            }
            let config = json!({
                "subcommand": "estimate-dim",
                "poly": poly, "s": s, "q": q, "n": n, "budget": budget,
            });
            match estimate_dimension(&records) {
                Ok(est) => {
                    let per_q = est
                        .per_q
                        .iter()
                        .map(|(q, log)| format!("{q}:{}", opt_f6(*log)))
                        .collect::<Vec<_>>()
                        .join(";");
                    let row = format!(
                        "{},{},{},{},{},{},{},{}",
                        parsed.canonical_string(),
                        s,
                        parsed.alphabet(),
                        est.ambient_dim,
                        f6(est.dim_hat),
                        f6(est.codim_hat),
                        f6(est.hausdorff),
                        per_q,
                    );
                    emit_rows(
                        cli,
                        "poly,s,n,ambient_dim,dim_hat,codim_hat,hausdorff,per_q",
                        vec![row],
                        config,
                        estimate_json(&est),
                        0,
                    )
                }
                Err(Error::EmptyLocus(q)) => {
                    let message = format!("empty locus at q={q}: dimension undefined");
                    match cli.format {
                        Format::Csv => Ok((format!("error\n{message}\n"), 1)),
                        Format::Json => {
                            Ok((wrap_json(config, json!({ "error": message })), 1))
                        }
                    }
                }
                Err(other) => Err(other),
            }
        }
        Command::MatrixBound { poly, s, q, n, workers, budget } => {
            let parsed = parse_poly_spec(poly, *n)?;
            let opts = CensusOptions { budget: *budget, workers: *workers, mode: CensusMode::Exact };
            let mut records = Vec::new();
            for field in fields(q)? {
                records.push(census_vanishing(&parsed, *s, field, &opts)?);
            }
            let est = estimate_dimension(&records)?;
            let report = check_matrix_bound(&parsed, *s, &est)?;
            let row = format!(
                "{},{},{},{},{},{},{},{},{},{},{}",
                parsed.canonical_string(),
                s,
                parsed.alphabet(),
                report.bound.d,
                report.bound.word_count,
                report.bound.t,
                report.bound.lower_codim,
                f6(report.bound.upper_dim),
                f6(report.measured_codim),
                f6(report.tolerance),
                report.passed,
            );
            let config = json!({
                "subcommand": "matrix-bound",
                "poly": poly, "s": s, "q": q, "n": n, "budget": budget,
            });
            let results = json!({
                "d": report.bound.d,
                "word_count": report.bound.word_count,
                "t": report.bound.t,
                "lower_codim": report.bound.lower_codim,
                "upper_dim": jf(report.bound.upper_dim),
                "measured_codim": jf(report.measured_codim),
                "tolerance": jf(report.tolerance),
                "passed": report.passed,
                "estimate": estimate_json(&est),
            });
            let code = if report.passed { 0 } else { 1 };
            emit_rows(
                cli,
                "poly,s,n,d,word_count,t,lower_codim,upper_dim,measured_codim,tolerance,passed",
                vec![row],
                config,
                results,
                code,
            )
        }
        Command::Fibers { poly, s, q, n, workers, budget } => {
            let parsed = parse_poly_spec(poly, *n)?;
            let opts = CensusOptions { budget: *budget, workers: *workers, mode: CensusMode::Exact };
            let record = census_vanishing(&parsed, *s, PrimeField::new(*q)?, &opts)?;
            let fibers = record.fibers.clone().expect("exact mode has fibers");
            let rows = fibers
                .iter()
                .map(|(value, count)| format!("{value},{count}"))
                .collect();
            let config = json!({
                "subcommand": "fibers",
                "poly": poly, "s": s, "q": q, "n": n, "budget": budget,
            });
            emit_rows(cli, "value,count", rows, config, census_json(&record), 0)
        }
        Command::Nilpotent { s, q, budget } => {
            let mut rows = Vec::new();
            let mut points = Vec::new();
            for field in fields(q)? {
                let count = census_nilpotent(field, *s, *budget)?;
                let total = BigUint::from(field.modulus()).pow((s * s) as u32);
                rows.push(locus_row(&[("s", s.to_string())], field.modulus(), &total, count));
                points.push((field.modulus(), BigUint::from(count)));
            }
            let config = json!({ "subcommand": "nilpotent", "s": s, "q": q, "budget": budget });
            let results = locus_json(&points, (s * s) as u32);
            emit_rows(cli, "s,q,total,count,log_q_count", rows, config, results, 0)
        }
        Command::Charpoly { poly, q, budget } => {
            let coeffs = parse_univariate(poly)?;
            let s = coeffs.len().saturating_sub(1);
            let mut rows = Vec::new();
            let mut points = Vec::new();
            for field in fields(q)? {
                let count = census_charpoly(field, &coeffs, *budget)?;
                let total = BigUint::from(field.modulus()).pow((s * s) as u32);
                rows.push(locus_row(
                    &[("poly", poly.clone()), ("s", s.to_string())],
                    field.modulus(),
                    &total,
                    count,
                ));
                points.push((field.modulus(), BigUint::from(count)));
            }
            let config = json!({ "subcommand": "charpoly", "poly": poly, "q": q, "budget": budget });
            let results = locus_json(&points, (s * s) as u32);
            emit_rows(cli, "poly,s,q,total,count,log_q_count", rows, config, results, 0)
        }
        Command::Rankdef { rows: r, cols, q, budget } => {
            let mut rows = Vec::new();
            let mut points = Vec::new();
            for field in fields(q)? {
                let count = census_rank_deficient(field, *r, *cols, *budget)?;
                let total = BigUint::from(field.modulus()).pow((r * cols) as u32);
                rows.push(locus_row(
                    &[("rows", r.to_string()), ("cols", cols.to_string())],
                    field.modulus(),
                    &total,
                    count,
                ));
                points.push((field.modulus(), BigUint::from(count)));
            }
            let config = json!({
                "subcommand": "rankdef", "rows": r, "cols": cols, "q": q, "budget": budget,
            });
            let results = locus_json(&points, (r * cols) as u32);
            emit_rows(cli, "rows,cols,q,total,count,log_q_count", rows, config, results, 0)
        }
        Command::Avoid { pattern, n, len, sweep } => {
            let word = parse_letters(pattern, *n)?;
            let d = word.degree();
            if d == 0 {
                return Err(Error::Precondition("pattern must be nonempty".into()));
            }
            let rate = avoidance::growth_rate(&word)?;
            let report = avoidance::check_pattern_bound(&word, *len.max(&d))?;
            let lens: Vec<usize> = if *sweep { (0..=*len).collect() } else { vec![*len] };
            let mut rows = Vec::new();
            let mut results = Vec::new();
            let mut all_hold = true;
            for &l in &lens {
                let count = avoidance::count_avoiding(&word, l)?;
                let bound = avoidance::growth_bound(*n, d).powi(l as i32)
                    * (*n as f64).powi(d as i32);
                rows.push(format!(
                    "{},{},{},{},{},{}",
                    word.letters_string(),
                    n,
                    l,
                    count,
                    f6(bound),
                    f6(rate),
                ));
                results.push(json!({
                    "pattern": word.letters_string(),
                    "n": n,
                    "N": l,
                    "count": jbig(&count),
                    "bound": jf(bound),
                    "growth_rate": jf(rate),
                }));
            }
            all_hold &= report.all_hold;
            let config = json!({
                "subcommand": "avoid", "pattern": pattern, "n": n, "N": len, "sweep": sweep,
            });
            let results = json!({ "rows": results, "bound_holds": all_hold });
            emit_rows(
                cli,
                "pattern,n,N,count,bound,growth_rate",
                rows,
                config,
                results,
                if all_hold { 0 } else { 1 },
            )
        }
        Command::ScoreDemo { n, d, j_max } => score_demo(*n, *d, *j_max),
        Command::Rewrite { n, d, head, body, word } => {
            let sys = ScoreSystem::new(*n, *d)?;
            let head = parse_letters(head, *n)?;
            let body = body
                .iter()
                .map(|text| parse_letters(text, *n))
                .collect::<Result<Vec<_>, _>>()?;
            let relation = Relation::new(&sys, head, body)?;
            let input = parse_letters(word, *n)?;
            let outcome = rewrite(&relation, &sys, &input, true)?;
            let mut text = String::new();
            text.push_str(&format!(
                "score system: n={} d={} p={}\n",
                sys.alphabet(),
                sys.window(),
                sys.prime()
            ));
            text.push_str(&format!(
                "relation: {} -> {{{}}}\n",
                relation.head().letters_string(),
                relation
                    .body()
                    .iter()
                    .map(Word::letters_string)
                    .collect::<Vec<_>>()
                    .join(", "),
            ));
            text.push_str(&format!("input: {}\n", input.letters_string()));
            for line in &outcome.trace {
                text.push_str(line);
                text.push('\n');
            }
            text.push_str(&format!(
                "steps: {} (bound {})\n",
                outcome.steps, outcome.step_bound
            ));
            text.push_str("normal form:\n");
            for term in &outcome.terms {
                text.push_str(&format!(
                    "  {} * {} * {}\n",
                    term.multiplicity,
                    term.coeff,
                    term.word.letters_string()
                ));
            }
            Ok((text, 0))
        }
        Command::Growth { kind, n, max } => {
            let table = match kind {
                Kind::Associative => associative_dims(*n, *max),
                Kind::Lie => witt_numbers(*n, *max)?,
                Kind::Jordan => jordan_coeffs(*n, *max)?,
            };
            let rows = table_rows(&table);
            let config = json!({
                "subcommand": "growth",
                "kind": table.kind.name(), "n": n, "max": max,
            });
            let results = table
                .coeffs
                .iter()
                .enumerate()
                .map(|(degree, coeff)| {
                    json!({ "degree": degree, "coefficient": jbig(coeff) })
                })
                .collect::<Vec<_>>();
            emit_rows(cli, "kind,n,degree,coefficient", rows, config, Value::Array(results), 0)
        }
        Command::LieIneq { n, max } => {
            let report = lie_inequality_check(*n, *max)?;
            let rows = report
                .rows
                .iter()
                .map(|row| {
                    format!(
                        "{},{},{},{},{},{}",
                        n, row.degree, row.lie_side, row.poly_side, row.holds, row.chain_holds
                    )
                })
                .collect();
            let config = json!({ "subcommand": "lie-ineq", "n": n, "max": max });
            let results = json!({
                "holds_from": report.holds_from,
                "rows": report.rows.iter().map(|row| json!({
                    "degree": row.degree,
                    "lie_side": row.lie_side.to_string(),
                    "poly_side": jbig(&row.poly_side),
                    "holds": row.holds,
                    "chain_holds": row.chain_holds,
                })).collect::<Vec<_>>(),
            });
            let code = if report.holds_from.is_some() { 0 } else { 1 };
            emit_rows(
                cli,
                "n,degree,lie_side,poly_side,holds,chain_holds",
                rows,
                config,
                results,
                code,
            )
        }
        Command::JordanGrowth { n, max } => {
            let report = jordan_growth_check(*n, *max)?;
            let row = format!(
                "{},{},{},{},{},{}",
                n,
                max,
                f6(report.max_root),
                f6(report.final_log_ratio),
                f6(report.threshold),
                report
                    .exceeds_threshold_at
                    .map(|i| i.to_string())
                    .unwrap_or_default(),
            );
            let config = json!({ "subcommand": "jordan-growth", "n": n, "max": max });
            let results = json!({
                "max_root": jf(report.max_root),
                "final_log_ratio": jf(report.final_log_ratio),
                "threshold": jf(report.threshold),
                "exceeds_threshold_at": report.exceeds_threshold_at,
            });
            let code = if report.exceeds_threshold_at.is_some() { 0 } else { 1 };
            emit_rows(
                cli,
                "n,max_degree,max_root,final_log_ratio,threshold,exceeds_at",
                vec![row],
                config,
                results,
                code,
            )
        }
        Command::DimensionRace { n, d, len, pattern } => {
            let sys = ScoreSystem::new(*n, *d)?;
            let pattern = match pattern {
                Some(text) => parse_letters(text, *n)?,
                None => Word::new(*n, vec![1u8; *d])?,
            };
            let report = dimension_race(&sys, &pattern, *len)?;
            let row = format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                report.n,
                report.d,
                report.len,
                report.pattern.letters_string(),
                report.free_dim,
                report.avoiding_words,
                report.tag_degree_bound,
                report.tag_monomials,
                report.constrained_dim,
                report.inequality_closed,
                f6(report.growth_rate),
                report.asymptotic_holds,
            );
            let config = json!({
                "subcommand": "dimension-race",
                "n": n, "d": d, "N": len,
                "pattern": report.pattern.letters_string(),
            });
            let results = json!({
                "free_dim": jbig(&report.free_dim),
                "avoiding_words": jbig(&report.avoiding_words),
                "tag_degree_bound": jbig(&report.tag_degree_bound),
                "tag_monomials": jbig(&report.tag_monomials),
                "constrained_dim": jbig(&report.constrained_dim),
                "inequality_closed": report.inequality_closed,
                "growth_rate": jf(report.growth_rate),
                "asymptotic_holds": report.asymptotic_holds,
            });
            let code = if report.asymptotic_holds { 0 } else { 1 };
            emit_rows(
                cli,
                "n,d,N,pattern,free_dim,avoiding_words,tag_degree_bound,tag_monomials,constrained_dim,inequality_closed,growth_rate,asymptotic_holds",
                vec![row],
                config,
                results,
                code,
            )
        }
    }
}

const CENSUS_HEADER: &str = "poly,s,q,n,mode,total,zero_count,max_fiber,dim_hat,codim_hat,hausdorff";

fn locus_row(prefix: &[(&str, String)], q: u32, total: &BigUint, count: u64) -> String {
    let log = if count > 0 {
        Some((count as f64).ln() / (q as f64).ln())
    } else {
        None
    };
    let mut parts: Vec<String> = prefix.iter().map(|(_, v)| v.clone()).collect();
    parts.push(q.to_string());
    parts.push(total.to_string());
    parts.push(count.to_string());
    parts.push(opt_f6(log));
    parts.join(",")
}

fn locus_json(points: &[(u32, BigUint)], ambient: u32) -> Value {
    let counts: Vec<Value> = points
        .iter()
        .map(|(q, count)| json!({ "q": q, "count": jbig(count) }))
        .collect();
    let estimate = if points.len() >= 2 {
        estimate_dimension_from_counts(points, ambient)
            .ok()
            .map(|est| estimate_json(&est))
    } else {
        None
    };
    json!({ "counts": counts, "estimate": estimate })
}

fn table_rows(table: &SeriesTable) -> Vec<String> {
    table
        .coeffs
        .iter()
        .enumerate()
        .map(|(degree, coeff)| {
            format!("{},{},{},{}", table.kind.name(), table.n, degree, coeff)
        })
        .collect()
}

fn emit_rows(
    cli: &Cli,
    header: &str,
    rows: Vec<String>,
    config: Value,
    results: Value,
    code: i32,
) -> Outcome {
    match cli.format {
        Format::Csv => {
            let mut text = String::from(header);
            text.push('\n');
            for row in rows {
                text.push_str(&row);
                text.push('\n');
            }
            Ok((text, code))
        }
        Format::Json => Ok((wrap_json(config, results), code)),
    }
}

fn score_demo(n: u8, d: usize, j_max: u64) -> Outcome {
    let sys = ScoreSystem::new(n, d)?;
    let mut text = String::new();
    text.push_str(&format!(
        "score system: n={n} d={d} p={} (smallest prime above 2^{})\n",
        sys.prime(),
        d as u32 * n as u32
    ));
    text.push_str("weight table F_i(j) = j*p + 2^((j*n+i) mod d*n):\n");
    for j in 1..=j_max {
        let row: Vec<String> = (1..=n)
            .map(|i| format!("F_{i}={}", sys.position_weight(i, j).expect("valid letter")))
            .collect();
        text.push_str(&format!("  j={j}: {}\n", row.join(" ")));
    }
    text.push_str("sample scores:\n");
    let samples: Vec<Vec<u8>> = vec![
        vec![1],
        vec![1, 2.min(n)],
        vec![2.min(n), 1],
        vec![1; d + 1],
    ];
    for letters in samples {
        let word = Word::new(n, letters)?;
        let (lo, hi) = sys.score_bounds(word.degree() as u64);
        text.push_str(&format!(
            "  sigma({}) = {} (length-{} band [{lo}, {hi}))\n",
            word.letters_string(),
            sys.score(&word)?,
            word.degree()
        ));
    }

    // Demo relation: constant head, every admissible replacement.
    let head = Word::new(n, vec![1u8; d])?;
    let mut body = Vec::new();
    for len in 0..=d {
        let mut letters = vec![1u8; len];
        loop {
            let cand = Word::new(n, letters.clone())?;
            if cand != head && Relation::new(&sys, head.clone(), vec![cand.clone()]).is_ok() {
                body.push(cand);
            }
            let mut k = len;
            let done = loop {
                if k == 0 {
                    break true;
                }
                k -= 1;
                if letters[k] < n {
                    letters[k] += 1;
                    break false;
                }
                letters[k] = 1;
            };
            if done {
                break;
            }
        }
    }
    let relation = Relation::new(&sys, head.clone(), body)?;
    text.push_str(&format!(
        "demo relation: {} -> {{{}}}\n",
        relation.head().letters_string(),
        relation
            .body()
            .iter()
            .map(Word::letters_string)
            .collect::<Vec<_>>()
            .join(", "),
    ));
    let input = Word::new(n, vec![1u8; 2 * d])?;
    let outcome = rewrite(&relation, &sys, &input, true)?;
    text.push_str(&format!("rewrite trace of {}:\n", input.letters_string()));
    for line in &outcome.trace {
        text.push_str("  ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&format!(
        "steps: {} (bound {}), normal-form terms: {}\n",
        outcome.steps,
        outcome.step_bound,
        outcome.terms.len()
    ));
    Ok((text, 0))
}
