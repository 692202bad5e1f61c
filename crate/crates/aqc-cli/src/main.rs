//! Command-line front end for the adjacent-cycle counting library.
//!
//! Emits count triangles, free sequences, joint distributions, and permanent
//! generating polynomials in plain, CSV, or JSON form, and runs the
//! cross-route verification suites. Exit codes: 0 success, 1 verification
//! failure, 2 usage error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use aqc::counts::{self, CountTable, MultiSpec};
use aqc::{genfun, oracle, permanent, Nat};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

#[derive(Parser)]
#[command(
    name = "aqc",
    version,
    about = "Count adjacent cycles of consecutive integers in permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows n = 0..=N of the count triangle for one cycle length
    Triangle(TriangleArgs),
    /// Print the counts of permutations free of any adjacent cycle of one length
    Free(FreeArgs),
    /// Print the nonzero joint counts for a set of tracked lengths
    Multi(MultiArgs),
    /// Print a generating polynomial computed as a marked-matrix permanent
    Permpoly(PermpolyArgs),
    /// Run cross-route consistency checks and report pass or fail per check
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TriangleArgs {
    /// Cycle length to track
    #[arg(long)]
    q: usize,
    /// Largest row index
    #[arg(long)]
    n: usize,
    /// Restrict output to a single column of the triangle
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Cross-check every row against exhaustive enumeration
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct FreeArgs {
    /// Cycle length that must not appear as an adjacent cycle
    #[arg(long)]
    q: usize,
    /// Largest index of the sequence
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct MultiArgs {
    /// Size of the permutations
    #[arg(long)]
    n: usize,
    /// Tracked cycle lengths, strictly increasing
    #[arg(long, value_delimiter = ',', required = true)]
    lengths: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Cross-check the joint counts against exhaustive enumeration
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct PermpolyArgs {
    /// Size of the permutations
    #[arg(long)]
    n: usize,
    /// Single tracked cycle length
    #[arg(long)]
    q: Option<usize>,
    /// Tracked cycle lengths for the joint polynomial
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<usize>,
    /// Polynomial of permutations by number of fixed points
    #[arg(long)]
    rencontres: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Scope::All)]
    scope: Scope,
    /// Largest permutation size; each scope has its own default
    #[arg(long)]
    n_max: Option<usize>,
    /// Largest cycle length for the recurrence and series checks
    #[arg(long, default_value_t = 6)]
    q_max: usize,
    /// Truncation order for the series checks
    #[arg(long, default_value_t = 30)]
    order: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Recurrence,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Scope {
    Oracle,
    Recurrences,
    Gf,
    Permanent,
    Multi,
    All,
}

/// A failed run, split by exit code.
enum Failure {
    /// Bad flags or limits outside the supported caps: exit 2.
    Usage(String),
    /// A consistency check or cross-route comparison failed: exit 1.
    Check(String),
}

impl From<aqc::Error> for Failure {
    fn from(e: aqc::Error) -> Self {
        match e {
            aqc::Error::Inconsistency(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Triangle(args) => cmd_triangle(args),
        Command::Free(args) => cmd_free(args),
        Command::Multi(args) => cmd_multi(args),
        Command::Permpoly(args) => cmd_permpoly(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn cmd_triangle(args: TriangleArgs) -> Result<(), Failure> {
    let table = match args.method {
        Method::Formula => CountTable::build(args.q, args.n)?,
        Method::Recurrence => CountTable::build_recurrence(args.q, args.n)?,
        Method::Both => {
            let formula = CountTable::build(args.q, args.n)?;
            let recurrence = CountTable::build_recurrence(args.q, args.n)?;
            if formula != recurrence {
                let (n, k) = first_difference(&formula, &recurrence);
                return Err(Failure::Check(format!(
                    "triangle routes disagree first at n = {n}, k = {k}: \
                     formula {} vs recurrence {}",
                    formula.get(n, k),
                    recurrence.get(n, k)
                )));
            }
            formula
        }
    };
    if args.check_oracle {
        for n in 0..=args.n {
            let observed = oracle::distribution(n, args.q)?;
            if table.row(n) != observed.as_slice() {
                return Err(Failure::Check(format!(
                    "row {n} disagrees with enumeration: {:?} vs {:?}",
                    table.row(n),
                    observed
                )));
            }
        }
    }

    if let Some(k) = args.k {
        let values: Vec<Nat> = (0..=args.n).map(|n| table.get(n, k)).collect();
        match args.format {
            Format::Plain => println!("{}", join_values(&values)),
            Format::Csv => {
                println!("n,k,value");
                for (n, value) in values.iter().enumerate() {
                    println!("{n},{k},{value}");
                }
            }
            Format::Json => {
                let mut object = Map::new();
                object.insert("q".into(), args.q.into());
                object.insert("k".into(), k.into());
                object.insert("values".into(), Value::Array(values.iter().map(nat_json).collect()));
                print_json(Value::Object(object));
            }
        }
        return Ok(());
    }

    match args.format {
        Format::Plain => {
            let cells: Vec<Vec<String>> = (0..=args.n)
                .map(|n| table.row(n).iter().map(Nat::to_string).collect())
                .collect();
            println!("{}", aligned_columns(&cells));
        }
        Format::Csv => {
            println!("n,k,value");
            for n in 0..=args.n {
                for (k, value) in table.row(n).iter().enumerate() {
                    println!("{n},{k},{value}");
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = (0..=args.n)
                .map(|n| Value::Array(table.row(n).iter().map(nat_json).collect()))
                .collect();
            let mut object = Map::new();
            object.insert("q".into(), args.q.into());
            object.insert("rows".into(), Value::Array(rows));
            print_json(Value::Object(object));
        }
    }
    Ok(())
}

fn cmd_free(args: FreeArgs) -> Result<(), Failure> {
    let values = match args.method {
        Method::Formula => counts::free_sequence(args.q, args.n)?,
        Method::Recurrence => counts::free_sequence_recurrence(args.q, args.n)?,
        Method::Both => {
            let formula = counts::free_sequence(args.q, args.n)?;
            let recurrence = counts::free_sequence_recurrence(args.q, args.n)?;
            if let Some(n) = (0..=args.n).find(|&n| formula[n] != recurrence[n]) {
                return Err(Failure::Check(format!(
                    "free-count routes disagree first at n = {n}: \
                     formula {} vs recurrence {}",
                    formula[n], recurrence[n]
                )));
            }
            formula
        }
    };
    match args.format {
        Format::Plain => println!("{}", join_values(&values)),
        Format::Csv => {
            println!("n,k,value");
            for (n, value) in values.iter().enumerate() {
                println!("{n},0,{value}");
            }
        }
        Format::Json => {
            let mut object = Map::new();
            object.insert("q".into(), args.q.into());
            object.insert("values".into(), Value::Array(values.iter().map(nat_json).collect()));
            print_json(Value::Object(object));
        }
    }
    Ok(())
}

fn cmd_multi(args: MultiArgs) -> Result<(), Failure> {
    let spec = MultiSpec::new(args.lengths)?;
    let terms: Vec<(Vec<usize>, Nat)> = spec
        .kvectors(args.n)
        .into_iter()
        .filter_map(|ks| {
            let value = counts::count_multi(args.n, &spec, &ks);
            (value != Nat::default()).then_some((ks, value))
        })
        .collect();
    if args.check_oracle {
        let observed = oracle::multi_distribution(args.n, &spec)?;
        let computed: BTreeMap<Vec<usize>, Nat> = terms.iter().cloned().collect();
        if computed != observed {
            let key = observed
                .keys()
                .chain(computed.keys())
                .find(|ks| computed.get(*ks) != observed.get(*ks))
                .expect("maps differ");
            return Err(Failure::Check(format!(
                "joint count at ks = {key:?} disagrees with enumeration: \
                 formula {:?} vs enumeration {:?}",
                computed.get(key),
                observed.get(key)
            )));
        }
    }
    print_profile_terms(args.n, spec.lengths(), &terms, args.format);
    Ok(())
}

fn cmd_permpoly(args: PermpolyArgs) -> Result<(), Failure> {
    let picked = usize::from(args.q.is_some())
        + usize::from(!args.lengths.is_empty())
        + usize::from(args.rencontres);
    if picked != 1 {
        return Err(Failure::Usage(
            "pass exactly one of --q, --lengths, or --rencontres".into(),
        ));
    }

    if let Some(q) = args.q {
        let poly = permanent::generating_polynomial(args.n, q)?;
        let coeffs = poly.univariate_coeffs(0).expect("single-length polynomial is univariate");
        match args.format {
            Format::Plain => println!("{}", poly.render(|_| "x".into())),
            Format::Csv => {
                println!("n,k,value");
                for (k, coeff) in coeffs.iter().enumerate() {
                    println!("{},{k},{coeff}", args.n);
                }
            }
            Format::Json => {
                let mut object = Map::new();
                object.insert("n".into(), args.n.into());
                object.insert("q".into(), q.into());
                object.insert(
                    "coeffs".into(),
                    Value::Array(coeffs.iter().map(|c| decimal_json(&c.to_string())).collect()),
                );
                print_json(Value::Object(object));
            }
        }
        return Ok(());
    }

    if args.rencontres {
        let poly = permanent::rencontres_polynomial(args.n)?;
        let coeffs = poly.univariate_coeffs(0).expect("rencontres polynomial is univariate");
        match args.format {
            Format::Plain => println!("{}", poly.render(|_| "x".into())),
            Format::Csv => {
                println!("n,k,value");
                for (k, coeff) in coeffs.iter().enumerate() {
                    println!("{},{k},{coeff}", args.n);
                }
            }
            Format::Json => {
                let mut object = Map::new();
                object.insert("n".into(), args.n.into());
                object.insert("rencontres".into(), true.into());
                object.insert(
                    "coeffs".into(),
                    Value::Array(coeffs.iter().map(|c| decimal_json(&c.to_string())).collect()),
                );
                print_json(Value::Object(object));
            }
        }
        return Ok(());
    }

    let spec = MultiSpec::new(args.lengths)?;
    let poly = permanent::generating_polynomial_multi(args.n, &spec)?;
    match args.format {
        Format::Plain => {
            println!("{}", poly.render(|v| permanent::family_name(v as usize)));
        }
        Format::Csv | Format::Json => {
            let terms: Vec<(Vec<usize>, Nat)> = permanent::family_distribution(&poly, spec.len())
                .map_err(|e| Failure::Check(e.to_string()))?
                .into_iter()
                .collect();
            print_profile_terms(args.n, spec.lengths(), &terms, args.format);
        }
    }
    Ok(())
}

/// Common output path for maps from length profiles to counts.
fn print_profile_terms(n: usize, lengths: &[usize], terms: &[(Vec<usize>, Nat)], format: Format) {
    match format {
        Format::Plain => {
            let cells: Vec<Vec<String>> = terms
                .iter()
                .map(|(ks, value)| {
                    let mut row: Vec<String> = ks.iter().map(usize::to_string).collect();
                    row.push(value.to_string());
                    row
                })
                .collect();
            println!("{}", aligned_columns(&cells));
        }
        Format::Csv => {
            println!("n,ks,value");
            for (ks, value) in terms {
                println!("{n},\"{}\",{value}", join_usizes(ks));
            }
        }
        Format::Json => {
            let rendered: Vec<Value> = terms
                .iter()
                .map(|(ks, value)| {
                    let mut term = Map::new();
                    term.insert(
                        "ks".into(),
                        Value::Array(ks.iter().map(|&k| Value::from(k)).collect()),
                    );
                    term.insert("value".into(), nat_json(value));
                    Value::Object(term)
                })
                .collect();
            let mut object = Map::new();
            object.insert("n".into(), n.into());
            object.insert(
                "lengths".into(),
                Value::Array(lengths.iter().map(|&q| Value::from(q)).collect()),
            );
            object.insert("terms".into(), Value::Array(rendered));
            print_json(Value::Object(object));
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.q_max == 0 {
        return Err(Failure::Usage("--q-max must be at least 1".into()));
    }
    let enumeration_scope = matches!(
        args.scope,
        Scope::Oracle | Scope::Permanent | Scope::Multi | Scope::All
    );
    if enumeration_scope {
        if let Some(n_max) = args.n_max {
            if n_max > oracle::DEFAULT_ENUMERATION_CAP {
                return Err(Failure::Usage(format!(
                    "--n-max {n_max} is above the exhaustive-enumeration cap ({})",
                    oracle::DEFAULT_ENUMERATION_CAP
                )));
            }
        }
    }
    if matches!(args.scope, Scope::Gf | Scope::All) && args.order < 3 * args.q_max + 2 {
        return Err(Failure::Usage(format!(
            "--order {} is too short to check lengths up to {}; need at least {}",
            args.order,
            args.q_max,
            3 * args.q_max + 2
        )));
    }

    let mut checker = Checker::default();
    match args.scope {
        Scope::Oracle => verify_oracle(&mut checker, args.n_max.unwrap_or(8)),
        Scope::Recurrences => {
            verify_recurrences(&mut checker, args.n_max.unwrap_or(30), args.q_max)
        }
        Scope::Gf => verify_gf(&mut checker, args.q_max, args.order),
        Scope::Permanent => verify_permanent(&mut checker, args.n_max.unwrap_or(7)),
        Scope::Multi => verify_multi(&mut checker, args.n_max.unwrap_or(8)),
        Scope::All => {
            verify_oracle(&mut checker, args.n_max.unwrap_or(8));
            verify_recurrences(&mut checker, 30, args.q_max);
            verify_gf(&mut checker, args.q_max, args.order);
            verify_permanent(&mut checker, args.n_max.unwrap_or(7).min(7));
            verify_multi(&mut checker, args.n_max.unwrap_or(8));
        }
    }
    checker.finish()
}

#[derive(Default)]
struct Checker {
    passed: usize,
    failed: usize,
}

impl Checker {
    fn run(&mut self, name: &str, check: impl FnOnce() -> Result<(), String>) {
        match check() {
            Ok(()) => {
                self.passed += 1;
                println!("ok   {name}");
            }
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }

    fn finish(self) -> Result<(), Failure> {
        if self.failed == 0 {
            println!("all {} checks passed", self.passed);
            Ok(())
        } else {
            Err(Failure::Check(format!(
                "{} of {} checks failed",
                self.failed,
                self.passed + self.failed
            )))
        }
    }
}

fn lib<T>(r: aqc::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn verify_oracle(checker: &mut Checker, n_max: usize) {
    checker.run(
        &format!("closed form matches enumeration (n <= {n_max}, all q)"),
        || {
            for n in 0..=n_max {
                for q in 1..=n.max(1) {
                    let observed = lib(oracle::distribution(n, q))?;
                    for (k, got) in observed.iter().enumerate() {
                        let expected = lib(counts::count_aqc(n, k, q))?;
                        if got != &expected {
                            return Err(format!(
                                "n = {n}, k = {k}, q = {q}: enumeration {got}, formula {expected}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

fn verify_recurrences(checker: &mut Checker, n_max: usize, q_max: usize) {
    checker.run(
        &format!("triangle recurrence matches the closed form (n <= {n_max}, q <= {q_max})"),
        || {
            for q in 1..=q_max {
                let formula = lib(CountTable::build(q, n_max))?;
                let recurrence = lib(CountTable::build_recurrence(q, n_max))?;
                if formula != recurrence {
                    let (n, k) = first_difference(&formula, &recurrence);
                    return Err(format!(
                        "q = {q}: first difference at n = {n}, k = {k}"
                    ));
                }
            }
            Ok(())
        },
    );
    checker.run(
        &format!("column step divides exactly and matches (n <= {n_max}, q <= {q_max})"),
        || {
            for q in 1..=q_max {
                let table = lib(CountTable::build(q, n_max))?;
                for n in 0..=(n_max - (q - 1)) {
                    for k in 1..=(n / q + 1) {
                        let stepped = lib(counts::column_step(n, k, q))?;
                        let direct = table.get(n + q - 1, k);
                        if stepped != direct {
                            return Err(format!(
                                "n = {n}, k = {k}, q = {q}: step {stepped}, closed form {direct}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
    checker.run(
        &format!("one-cycle relation matches the free counts (n <= {n_max}, q <= {q_max})"),
        || {
            for q in 1..=q_max {
                let table = lib(CountTable::build(q, n_max))?;
                for n in q..=n_max {
                    let related = lib(counts::count_one_aqc_relation(n, q))?;
                    let direct = table.get(n - 1, 1);
                    if related != direct {
                        return Err(format!(
                            "n = {n}, q = {q}: relation {related}, closed form {direct}"
                        ));
                    }
                }
            }
            Ok(())
        },
    );
    checker.run(
        &format!("free-count routes agree (n <= 60, q <= {q_max})"),
        || {
            for q in 1..=q_max {
                let formula = lib(counts::free_sequence(q, 60))?;
                let recurrence = lib(counts::free_sequence_recurrence(q, 60))?;
                if let Some(n) = (0..=60).find(|&n| formula[n] != recurrence[n]) {
                    return Err(format!(
                        "q = {q}, n = {n}: formula {}, recurrence {}",
                        formula[n], recurrence[n]
                    ));
                }
            }
            Ok(())
        },
    );
    checker.run("rencontres product matches the fixed-point triangle (n <= 12)", || {
        for n in 0..=12usize {
            for k in 0..=n {
                let product = counts::count_aqc_rencontres(n, k);
                let direct = lib(counts::count_aqc(n, k, 1))?;
                if product != direct {
                    return Err(format!("n = {n}, k = {k}: product {product}, formula {direct}"));
                }
            }
        }
        Ok(())
    });
    checker.run("factorial bounds enclose the free counts (n <= 40)", || {
        for q in 2..=40usize {
            for n in q..=40 {
                let (lower, upper) = lib(counts::free_bounds(n, q))?;
                let b = lib(counts::count_free(n, q))?;
                if !(lower <= b && b <= upper) {
                    return Err(format!("n = {n}, q = {q}: {b} outside [{lower}, {upper}]"));
                }
            }
        }
        Ok(())
    });
    checker.run("total adjacent-cycle count is (n+1-q)(n-q)! (n <= 12)", || {
        for q in 1..=9usize {
            for n in q..=12 {
                let mut total = Nat::default();
                for k in 0..=(n / q) {
                    total += Nat::from(k) * lib(counts::count_aqc(n, k, q))?;
                }
                let expected = Nat::from(n + 1 - q) * counts::factorial(n - q);
                if total != expected {
                    return Err(format!("n = {n}, q = {q}: total {total}, expected {expected}"));
                }
            }
        }
        Ok(())
    });
}

fn verify_gf(checker: &mut Checker, q_max: usize, order: usize) {
    checker.run(
        &format!("ordinary series satisfies its differential equation (q <= {q_max}, order {order})"),
        || {
            for q in 1..=q_max {
                let residual = lib(genfun::verify_ogf_ode(q, order))?;
                if let Some(i) = residual.first_nonzero() {
                    return Err(format!("q = {q}: residual nonzero at z^{i}"));
                }
            }
            Ok(())
        },
    );
    checker.run(
        &format!("exponential series satisfies its differential equation (q <= {q_max}, order {order})"),
        || {
            for q in 1..=q_max {
                let residual = lib(genfun::verify_egf_ode(q, order))?;
                if let Some(i) = residual.first_nonzero() {
                    return Err(format!("q = {q}: residual nonzero at z^{i}"));
                }
            }
            Ok(())
        },
    );
}

fn verify_permanent(checker: &mut Checker, n_max: usize) {
    let expansion_max = n_max.min(6);
    checker.run(
        &format!("Ryser and expansion permanents agree on marked matrices (n <= {expansion_max})"),
        || {
            for n in 0..=expansion_max {
                for q in 1..=n.max(1) {
                    let matrix = lib(permanent::build_marked_matrix(n, q))?;
                    if permanent::permanent_ryser(matrix.entries())
                        != permanent::permanent_naive(matrix.entries())
                    {
                        return Err(format!("n = {n}, q = {q}"));
                    }
                }
            }
            Ok(())
        },
    );
    checker.run(
        &format!("collapsed permanents reproduce the triangle (n <= {n_max}, all q)"),
        || {
            for n in 0..=n_max {
                for q in 1..=n.max(1) {
                    let poly = lib(permanent::generating_polynomial(n, q))?;
                    if poly.coeff_sum() != counts::factorial(n).into() {
                        return Err(format!("n = {n}, q = {q}: coefficients do not sum to n!"));
                    }
                    let coeffs = poly
                        .univariate_coeffs(0)
                        .ok_or_else(|| format!("n = {n}, q = {q}: polynomial not univariate"))?;
                    for k in 0..=(n / q) {
                        let got = coeffs.get(k).cloned().unwrap_or_default();
                        let expected = lib(counts::count_aqc(n, k, q))?;
                        if got != expected.into() {
                            return Err(format!("n = {n}, k = {k}, q = {q}"));
                        }
                    }
                }
            }
            Ok(())
        },
    );
    let rencontres_max = n_max.min(7);
    checker.run(
        &format!("rencontres polynomial lists the fixed-point counts (n <= {rencontres_max})"),
        || {
            for n in 0..=rencontres_max {
                let coeffs = lib(permanent::rencontres_polynomial(n))?
                    .univariate_coeffs(0)
                    .ok_or_else(|| format!("n = {n}: polynomial not univariate"))?;
                for k in 0..=n {
                    let got = coeffs.get(k).cloned().unwrap_or_default();
                    if got != counts::count_aqc_rencontres(n, k).into() {
                        return Err(format!("n = {n}, k = {k}"));
                    }
                }
            }
            Ok(())
        },
    );
    checker.run("six-element polynomial for triples is 697 + 22*x + x^2", || {
        let rendered = lib(permanent::generating_polynomial(6, 3))?.render(|_| "x".into());
        if rendered != "697 + 22*x + x^2" {
            return Err(format!("got {rendered}"));
        }
        Ok(())
    });
    checker.run("five-element joint polynomial has 14 terms summing to 120", || {
        let spec = lib(MultiSpec::new(vec![1, 2, 3, 4, 5]))?;
        let poly = lib(permanent::generating_polynomial_multi(5, &spec))?;
        if poly.term_count() != 14 {
            return Err(format!("term count {}", poly.term_count()));
        }
        if poly.coeff_sum() != counts::factorial(5).into() {
            return Err(format!("coefficient sum {}", poly.coeff_sum()));
        }
        Ok(())
    });
}

fn verify_multi(checker: &mut Checker, n_max: usize) {
    let subsets: Vec<Vec<usize>> = (1u8..16)
        .map(|mask| (1..=4).filter(|q| mask & (1 << (q - 1)) != 0).collect())
        .collect();
    checker.run(
        &format!("joint counts total n! for every length subset of {{1,2,3,4}} (n <= {n_max})"),
        || {
            for lengths in &subsets {
                let spec = lib(MultiSpec::new(lengths.clone()))?;
                for n in 0..=n_max {
                    let total: Nat = spec
                        .kvectors(n)
                        .iter()
                        .map(|ks| counts::count_multi(n, &spec, ks))
                        .sum();
                    if total != counts::factorial(n) {
                        return Err(format!("lengths {lengths:?}, n = {n}: total {total}"));
                    }
                }
            }
            Ok(())
        },
    );
    checker.run(
        &format!("single tracked length reduces to the plain triangle (n <= {n_max})"),
        || {
            for q in 1..=4usize {
                let spec = lib(MultiSpec::new(vec![q]))?;
                for n in 0..=n_max {
                    for k in 0..=(n / q) {
                        let joint = counts::count_multi(n, &spec, &[k]);
                        let plain = lib(counts::count_aqc(n, k, q))?;
                        if joint != plain {
                            return Err(format!("n = {n}, k = {k}, q = {q}"));
                        }
                    }
                }
            }
            Ok(())
        },
    );
    let oracle_max = n_max.min(7);
    checker.run(
        &format!("enumeration confirms every joint count (n <= {oracle_max})"),
        || {
            for lengths in &subsets {
                let spec = lib(MultiSpec::new(lengths.clone()))?;
                for n in 0..=oracle_max {
                    let observed = lib(oracle::multi_distribution(n, &spec))?;
                    let computed: BTreeMap<Vec<usize>, Nat> = spec
                        .kvectors(n)
                        .into_iter()
                        .filter_map(|ks| {
                            let value = counts::count_multi(n, &spec, &ks);
                            (value != Nat::default()).then_some((ks, value))
                        })
                        .collect();
                    if computed != observed {
                        return Err(format!("lengths {lengths:?}, n = {n}"));
                    }
                }
            }
            Ok(())
        },
    );
}

fn first_difference(a: &CountTable, b: &CountTable) -> (usize, usize) {
    for (n, (left, right)) in a.rows.iter().zip(&b.rows).enumerate() {
        for (k, (x, y)) in left.iter().zip(right).enumerate() {
            if x != y {
                return (n, k);
            }
        }
    }
    panic!("tables do not differ");
}

fn join_values(values: &[Nat]) -> String {
    values.iter().map(Nat::to_string).collect::<Vec<_>>().join(",")
}

fn join_usizes(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Right-align each column over rows of decimal cells.
fn aligned_columns(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(i, cell)| format!("{cell:>width$}", width = widths[i]))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn nat_json(value: &Nat) -> Value {
    decimal_json(&value.to_string())
}

/// Exact integers of any size; requires serde_json's arbitrary precision.
fn decimal_json(digits: &str) -> Value {
    Value::Number(Number::from_string_unchecked(digits.to_string()))
}

fn print_json(value: Value) {
    println!("{}", serde_json::to_string(&value).expect("serializable"));
}
