use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jacklab::constellations::{count_rooted_connected, Orientability};
use jacklab::lassalle::{theta, theta_rect_poly, ThetaRecord};
use jacklab::matchings::enumerate_f;
use jacklab::partitions::{all_partitions, rectangular, split_partitions};
use jacklab::series::{coeff, coeff_full_table, marginal, CoeffKind, CoeffRecord, ProfileKey};
use jacklab::symfunc::{jack_table, JackCache};
use jacklab::verify::{run_suite, Suite};
use jacklab::{BPoly, Error, Partition};

#[derive(Parser)]
#[command(name = "jacklab", version, about = "Jack polynomials, constellation series and their coefficients")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for cached Jack tables; JACKLAB_CACHE takes precedence
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    C,
    H,
}

impl From<Kind> for CoeffKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::C => CoeffKind::C,
            Kind::H => CoeffKind::H,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Jack polynomials of degree n in the power-sum basis
    Jack {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Coefficients c or h; the whole degree-n table when no key is given
    Coeff {
        kind: Kind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "mus")]
        lambda: Option<String>,
        /// k+1 partitions, separated by `;` or cut into runs of size n
        #[arg(long, requires = "lambda")]
        mus: Option<String>,
    },
    /// Sum of c or h over μ¹..μᵏ with prescribed lengths
    Marginal {
        kind: Kind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
    },
    /// Elements of 𝔉 (or 𝔉̃ with --bipartite-only)
    EnumF {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mus: String,
        #[arg(long)]
        bipartite_only: bool,
    },
    /// Rooted connected k-constellations with a given profile
    CountConst {
        #[arg(long)]
        k: usize,
        /// face type followed by the k+1 vertex types
        #[arg(long)]
        profile: String,
        #[arg(long, conflicts_with = "non_orientable")]
        orientable: bool,
        #[arg(long)]
        non_orientable: bool,
    },
    /// Power-sum coefficients θ_μ(λ)
    Theta {
        #[arg(long)]
        mu: String,
        #[arg(long, conflicts_with_all = ["rect", "poly"])]
        lambda: Option<String>,
        /// rectangle q×r, as Q,R
        #[arg(long, value_delimiter = ',', conflicts_with = "poly")]
        rect: Option<Vec<usize>>,
        /// z_μ θ_μ(q×r) as a polynomial in q and r
        #[arg(long)]
        poly: bool,
    },
    /// Run a verification suite; exit status 0 iff it passes
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1)]
        kmax: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
}

/// Rows for CSV output.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends polynomial coefficient columns `c0..cd`, padding every row to the
    /// longest polynomial.
    fn with_polys(header: &[&str], rows: Vec<(Vec<String>, BPoly)>) -> Self {
        let width = rows.iter().map(|(_, p)| p.coeffs().len()).max().unwrap_or(0).max(1);
        let mut t = Table::new(header);
        t.header.extend((0..width).map(|i| format!("c{i}")));
        for (mut cells, p) in rows {
            let coeffs = p.coeffs();
            cells.extend((0..width).map(|i| coeffs.get(i).map_or("0".into(), |c| c.to_string())));
            t.rows.push(cells);
        }
        t
    }
}

struct Emit {
    json: Value,
    csv: Table,
    ok: bool,
}

fn record_row(r: &CoeffRecord) -> (Vec<String>, BPoly) {
    let mut cells = vec![r.key.lambda.to_string()];
    cells.extend(r.key.mus.iter().map(ToString::to_string));
    (cells, r.value.clone())
}

fn coeff_header(k: usize) -> Vec<String> {
    let mut h = vec!["lambda".to_string()];
    h.extend((0..=k).map(|i| format!("mu{i}")));
    h
}

fn theta_emit(records: Vec<ThetaRecord>) -> jacklab::Result<Emit> {
    let rows = records.iter().map(|r| (vec![r.mu.to_string(), r.lambda.to_string()], r.value.clone())).collect();
    Ok(Emit {
        json: if records.len() == 1 { serde_json::to_value(&records[0])? } else { serde_json::to_value(&records)? },
        csv: Table::with_polys(&["mu", "lambda"], rows),
        ok: true,
    })
}

fn run(command: Command) -> jacklab::Result<Emit> {
    match command {
        Command::Jack { n, lambda } => {
            let table = jack_table(n);
            let thetas: Vec<Partition> = match lambda {
                Some(l) => {
                    let l: Partition = l.parse()?;
                    if l.size() != n {
                        return Err(Error::SizeMismatch { expected: n, actual: l.size() });
                    }
                    vec![l]
                }
                None => table.parts.clone(),
            };
            let mut json = Vec::new();
            let mut rows = Vec::new();
            for theta in &thetas {
                let t = table.index_of(theta).expect("θ ⊢ n");
                let mut terms = Vec::new();
                for (mu, c) in table.parts.iter().zip(&table.coeffs[t]) {
                    if !c.is_zero() {
                        terms.push(json!({"mu": mu, "coeff": c}));
                        rows.push((vec![theta.to_string(), mu.to_string()], c.clone()));
                    }
                }
                json.push(json!({"lambda": theta, "p": terms}));
            }
            let json = if json.len() == 1 { json.pop().unwrap() } else { Value::Array(json) };
            Ok(Emit { json, csv: Table::with_polys(&["lambda", "mu"], rows), ok: true })
        }
        Command::Coeff { kind, k, n, lambda, mus } => {
            let kind = CoeffKind::from(kind);
            let header = coeff_header(k);
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            match (lambda, mus) {
                (Some(l), Some(m)) => {
                    let lambda: Partition = l.parse()?;
                    if lambda.size() != n {
                        return Err(Error::SizeMismatch { expected: n, actual: lambda.size() });
                    }
                    let mus = split_partitions(&m, Some(n), Some(k + 1))?;
                    let r = coeff(kind, &ProfileKey::new(lambda, mus)?)?;
                    Ok(Emit { json: serde_json::to_value(&r)?, csv: Table::with_polys(&header, vec![record_row(&r)]), ok: true })
                }
                _ => {
                    let records = coeff_full_table(kind, k, n)?;
                    let rows = records.iter().map(record_row).collect();
                    Ok(Emit { json: serde_json::to_value(&records)?, csv: Table::with_polys(&header, rows), ok: true })
                }
            }
        }
        Command::Marginal { kind, k, lambda, mu, lengths } => {
            if let Some(k) = k {
                if k != lengths.len() {
                    return Err(Error::InvalidArgument(format!("--k {k} needs {k} lengths, got {}", lengths.len())));
                }
            }
            let lambda: Partition = lambda.parse()?;
            let mu: Partition = mu.parse()?;
            let r = marginal(kind.into(), &lambda, &mu, &lengths)?;
            let mut json = serde_json::to_value(&r)?;
            json["lengths"] = json!(lengths);
            let ls = lengths.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let csv = Table::with_polys(&["lambda", "mu", "lengths"], vec![(vec![lambda.to_string(), mu.to_string(), ls], r.value)]);
            Ok(Emit { json, csv, ok: true })
        }
        Command::EnumF { lambda, mus, bipartite_only } => {
            let lambda: Partition = lambda.parse()?;
            let mus = split_partitions(&mus, Some(lambda.size()), None)?;
            let tuples = enumerate_f(&lambda, &mus, bipartite_only)?;
            let k = mus.len() - 1;
            let mut csv = Table::new(&["index", "bipartite"]);
            csv.header.extend((0..k).map(|i| format!("delta{i}")));
            for (i, t) in tuples.iter().enumerate() {
                let mut row = vec![i.to_string(), t.all_bipartite().to_string()];
                row.extend(t.deltas.iter().map(ToString::to_string));
                csv.rows.push(row);
            }
            let json = json!({"lambda": lambda, "mus": mus, "count": tuples.len(), "tuples": tuples});
            Ok(Emit { json, csv, ok: true })
        }
        Command::CountConst { k, profile, orientable, non_orientable } => {
            let slots = split_partitions(&profile, None, Some(k + 2))?;
            let key = ProfileKey::new(slots[0].clone(), slots[1..].to_vec())?;
            let (filter, name) = match (orientable, non_orientable) {
                (true, _) => (Orientability::Orientable, "orientable"),
                (_, true) => (Orientability::NonOrientable, "non-orientable"),
                _ => (Orientability::Any, "any"),
            };
            let count = count_rooted_connected(k, &key, filter)?;
            let count_json: Value = match u64::try_from(&count) {
                Ok(c) => json!(c),
                Err(_) => json!(count.to_string()),
            };
            let json = json!({"k": k, "profile": slots, "filter": name, "count": count_json});
            let mut csv = Table::new(&["profile", "filter", "count"]);
            csv.rows.push(vec![key.to_string(), name.to_string(), count.to_string()]);
            Ok(Emit { json, csv, ok: true })
        }
        Command::Theta { mu, lambda, rect, poly } => {
            let mu: Partition = mu.parse()?;
            if poly {
                let p = theta_rect_poly(&mu)?;
                let rows = p.coeffs.iter().map(|(&(q, r), c)| (vec![q.to_string(), r.to_string()], c.clone())).collect();
                return Ok(Emit { json: serde_json::to_value(&p)?, csv: Table::with_polys(&["q", "r"], rows), ok: true });
            }
            let lambdas = match (lambda, rect) {
                (Some(l), _) => vec![l.parse()?],
                (None, Some(qr)) => match qr[..] {
                    [q, r] if q > 0 && r > 0 => vec![rectangular(q, r)],
                    _ => return Err(Error::InvalidArgument("--rect takes two positive integers Q,R".into())),
                },
                (None, None) => all_partitions(mu.size()),
            };
            theta_emit(lambdas.iter().map(|l| theta(&mu, l)).collect())
        }
        Command::Verify { suite, kmax, nmax } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, kmax, nmax)?;
            let mut csv = Table::new(&["key", "expected", "actual"]);
            for f in &report.failures {
                csv.rows.push(vec![f.key.clone(), f.expected.clone(), f.actual.clone()]);
            }
            Ok(Emit { ok: report.pass, json: serde_json::to_value(&report)?, csv })
        }
    }
}

fn write_out(emit: &Emit, format: Format, out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &emit.json)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&emit.csv.header)?;
            for row in &emit.csv.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidPartition(_) | Error::SizeMismatch { .. } | Error::InvalidArgument(_) | Error::UnknownSuite(_)
    )
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let cache = std::env::var_os("JACKLAB_CACHE").map(PathBuf::from).or(cli.cache_dir);
    if let Some(dir) = &cache {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("error: cache directory {}: {e}", dir.display());
            return ExitCode::FAILURE;
        }
    }
    JackCache::global().set_dir(cache);
    let emit = match run(cli.command) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_usage(&e) { ExitCode::from(2) } else { ExitCode::FAILURE };
        }
    };
    let written = match &cli.output {
        Some(path) => File::create(path)
            .map_err(Into::into)
            .and_then(|mut f| write_out(&emit, cli.format, &mut f)),
        None => write_out(&emit, cli.format, &mut io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    if emit.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
