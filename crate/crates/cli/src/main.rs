//! `sdcode` — command-line driver for building, classifying and verifying
//! self-dual codes.
//!
//! Exit codes: 0 success, 1 a verification found a mismatch, 2 bad input or
//! usage, 3 an enumeration or memory budget was exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sdcode::circulant::{search_four_circulant_with, SearchFilters, SearchOptions};
use sdcode::classify::{classify_with_details, rains_bound};
use sdcode::codefile::{read_code, write_code};
use sdcode::covering::{certify_cr12, certify_exact, certify_with_cosets, CoveringCertificate};
use sdcode::equivalence::{canonical_form, find_equivalence};
use sdcode::extend::{tsai_extend, ExtensionRecipe};
use sdcode::minweight::min_weight;
use sdcode::neighbors::{doubly_even_neighbors, neighbor, parse_support, weight10_neighbor_vector};
use sdcode::shadow::{parity_class, ParityClass, ShadowCosets};
use sdcode::tables::{verify_table, CodeBook, TableId, Tables};
use sdcode::{BitVector, Error, LinearCode};

#[derive(Parser)]
#[command(name = "sdcode", version, about = "Build, classify and verify binary self-dual codes")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (results do not depend on it).
    #[arg(long, global = true, env = "SDCODE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search four-circulant singly even codes and split them into
    /// equivalence classes; writes `id,r_a,r_b,beta` CSV.
    Classify(ClassifyArgs),
    /// Rebuild every row of a bundled table and check it.
    Verify(VerifyArgs),
    /// Write a table code (e.g. C64_24, D64_138, DD64_68_2, C66_1) to a file.
    Export {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report length, dimension, minimum weight, parity and enumerator class.
    Info { code: PathBuf },
    /// Self-dual neighbors of a code.
    Neighbor(NeighborArgs),
    /// The two-coordinate extension C(x).
    Extend(ExtendArgs),
    /// Decide whether two codes are permutation-equivalent.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Also print the canonical forms.
        #[arg(long)]
        canonical: bool,
    },
    /// Covering-radius certificates.
    Cr(CrArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Circulant order; the code length is four times this.
    #[arg(long)]
    order: usize,
    /// Exact minimum weight wanted.
    #[arg(long = "d")]
    target_d: usize,
    /// CSV output path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Resumable progress file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Override the lower bound on wt(r_A) + wt(r_B) (default 13, or the
    /// weakest safe bound when the order cannot reach 13).
    #[arg(long)]
    min_weight_sum: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Table number, 1–4.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    table: u8,
    /// Directory with table1.csv … table4.csv (default: the bundled copies).
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct NeighborArgs {
    /// Parent code file.
    #[arg(long)]
    code: PathBuf,
    /// 1-based support of x, e.g. 1,2,3,38.
    #[arg(long, conflicts_with_all = ["doubly_even", "weight10"])]
    support: Option<String>,
    /// The two doubly even neighbors C₀ ∪ C₁ and C₀ ∪ C₃.
    #[arg(long, conflicts_with = "weight10")]
    doubly_even: bool,
    /// Solve M xᵀ = 1ᵀ over the weight-10 codewords.
    #[arg(long)]
    weight10: bool,
    /// Output file; with two results, `_1` and `_2` are inserted before the
    /// extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtendArgs {
    /// Parent code file.
    #[arg(long)]
    code: PathBuf,
    /// Odd-weight x as a 0/1 string, coordinate 1 first.
    #[arg(long, conflicts_with = "head")]
    x: Option<String>,
    /// First 32 bits of x; the remaining 32 are ones (length-64 parents).
    #[arg(long)]
    head: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CrArgs {
    code: PathBuf,
    /// Certify both doubly even neighbors of a singly even code whose shadow
    /// has minimum weight 12.
    #[arg(long)]
    certify_de_neighbors: bool,
    /// Exact covering radius by syndrome search.
    #[arg(long, conflicts_with = "certify_de_neighbors")]
    exact: bool,
    /// Memory allowed for --exact, in bytes.
    #[arg(long, default_value_t = 1 << 30)]
    memory_budget: usize,
    /// Also sweep every codeword to cross-check coset minimum weights.
    #[arg(long)]
    sweep_check: bool,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge(_) => 3,
            Error::Unclassifiable(_) | Error::PreconditionFailed(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

type Outcome = std::result::Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify(a) => cmd_classify(cli, a),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Export { id, out } => cmd_export(id, out.as_deref()),
        Command::Info { code } => cmd_info(cli, code),
        Command::Neighbor(a) => cmd_neighbor(cli, a),
        Command::Extend(a) => cmd_extend(cli, a),
        Command::Equiv { a, b, canonical } => cmd_equiv(cli, a, b, *canonical),
        Command::Cr(a) => cmd_cr(cli, a),
    }
}

fn load(path: &Path) -> Result<LinearCode, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    read_code(&text).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn save(code: &LinearCode, path: Option<&Path>) -> Result<(), Failure> {
    let text = write_code(code);
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `out.code` → `out_1.code`.
fn numbered(path: &Path, i: usize) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{i}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{i}"),
    };
    path.with_file_name(name)
}

/// Summary of a code for reports.
fn describe(code: &LinearCode) -> Result<serde_json::Value, Failure> {
    let d = min_weight(code)?;
    let parity = if code.is_self_dual() { Some(parity_class(code)?) } else { None };
    let class = match parity {
        Some(ParityClass::SinglyEven) if matches!(code.n(), 64 | 66) => {
            classify_with_details(code).ok().map(|c| c.class.to_string())
        }
        _ => None,
    };
    Ok(json!({
        "n": code.n(),
        "k": code.k(),
        "d": d,
        "self_dual": code.is_self_dual(),
        "parity": parity.map(|p| format!("{p:?}")),
        "class": class,
    }))
}

fn describe_line(v: &serde_json::Value) -> String {
    let mut s = format!("[{},{},{}]", v["n"], v["k"], v["d"]);
    if let Some(p) = v["parity"].as_str() {
        s.push_str(&format!(" {p}"));
    } else {
        s.push_str(" not self-dual");
    }
    if let Some(c) = v["class"].as_str() {
        s.push_str(&format!(" {c}"));
    }
    s
}

fn cmd_classify(cli: &Cli, a: &ClassifyArgs) -> Outcome {
    let mut filters = SearchFilters::standard(a.order, a.target_d);
    if let Some(s) = a.min_weight_sum {
        filters.min_weight_sum = s;
    }
    let options = SearchOptions { checkpoint: a.checkpoint.clone(), chunk: None };
    let outcome = search_four_circulant_with(a.order, a.target_d, filters, &options)?;
    let n = 4 * a.order;
    let extremal = rains_bound(n).is_ok_and(|b| b == a.target_d);
    let prefix = if extremal { "C" } else { "E" };
    let mut rows = Vec::new();
    for (i, class) in outcome.classes.iter().enumerate() {
        let beta = if matches!(n, 64 | 66) && extremal {
            classify_with_details(&class.code).ok().and_then(|c| c.class.beta)
        } else {
            None
        };
        rows.push((
            format!("{prefix}{n}_{}", i + 1),
            class.spec.ra.bits().to_bit_string(),
            class.spec.rb.bits().to_bit_string(),
            beta,
        ));
    }
    let mut csv = String::from("code,r_a,r_b,beta\n");
    for (id, ra, rb, beta) in &rows {
        csv.push_str(&format!("{id},{ra},{rb},{}\n", beta.map_or(String::new(), |b| b.to_string())));
    }
    if let Some(p) = &a.out {
        fs::write(p, &csv).map_err(|e| io_failure(p, e))?;
    }
    if cli.json {
        let list: Vec<_> = rows
            .iter()
            .map(|(id, ra, rb, beta)| json!({"code": id, "r_a": ra, "r_b": rb, "beta": beta}))
            .collect();
        let report = json!({
            "order": a.order,
            "d": a.target_d,
            "min_weight_sum": filters.min_weight_sum,
            "pairs_tested": outcome.pairs_tested,
            "survivors": outcome.survivors,
            "classes": list,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        if a.out.is_none() {
            print!("{csv}");
        }
        println!("classes={}", rows.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let tables = match &a.data {
        Some(dir) => Tables::from_dir(dir)?,
        None => Tables::bundled(),
    };
    let table = TableId::from_number(a.table).expect("range-checked by clap");
    let mut book = CodeBook::new(tables);
    let reports = verify_table(&mut book, table)?;
    let passed = reports.iter().filter(|r| r.pass()).count();
    if cli.json {
        let report = json!({"table": a.table, "passed": passed, "total": reports.len(), "rows": reports});
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for r in &reports {
            println!("{r}");
        }
        println!("passed={passed}/{}", reports.len());
    }
    Ok(if passed == reports.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_export(id: &str, out: Option<&Path>) -> Outcome {
    let code = CodeBook::bundled().get(id)?;
    save(&code, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_info(cli: &Cli, path: &Path) -> Outcome {
    let code = load(path)?;
    let v = describe(&code)?;
    if cli.json {
        println!("{v}");
    } else {
        println!("{}", describe_line(&v));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_neighbor(cli: &Cli, a: &NeighborArgs) -> Outcome {
    let parent = load(&a.code)?;
    let mut results: Vec<(String, LinearCode)> = Vec::new();
    let mut extra = serde_json::Map::new();
    if let Some(s) = &a.support {
        let x = BitVector::from_support_one_based(parent.n(), &parse_support(s)?)?;
        results.push((format!("support {s}"), neighbor(&parent, &x)?));
    } else if a.doubly_even {
        let (d1, d2) = doubly_even_neighbors(&parent)?;
        results.push(("C0+C1".into(), d1));
        results.push(("C0+C3".into(), d2));
    } else if a.weight10 {
        let Some(sol) = weight10_neighbor_vector(&parent)? else {
            if cli.json {
                println!("{}", json!({"solution": null}));
            } else {
                println!("no even-weight solution");
            }
            return Ok(ExitCode::SUCCESS);
        };
        let (d1, d2) = sol.neighbors()?;
        extra.insert("x".into(), json!(sol.x.to_bit_string()));
        extra.insert("unique".into(), json!(sol.unique));
        extra.insert("equations".into(), json!(sol.equations));
        extra.insert("subcode".into(), describe(&sol.subcode)?);
        results.push(("<C0,x>".into(), d1));
        results.push(("<C0,x+y>".into(), d2));
    } else {
        return Err(Failure { code: 2, message: "give --support, --doubly-even or --weight10".into() });
    }
    let paths: Vec<Option<PathBuf>> = match (&a.out, results.len()) {
        (Some(p), 1) => vec![Some(p.clone())],
        (Some(p), m) => (1..=m).map(|i| Some(numbered(p, i))).collect(),
        (None, m) => vec![None; m],
    };
    let mut listed = Vec::new();
    for ((label, code), path) in results.iter().zip(&paths) {
        if let Some(p) = path {
            save(code, Some(p))?;
        }
        let mut v = describe(code)?;
        v["construction"] = json!(label);
        v["file"] = json!(path.as_ref().map(|p| p.display().to_string()));
        listed.push(v);
    }
    if cli.json {
        extra.insert("neighbors".into(), json!(listed));
        println!("{}", serde_json::Value::Object(extra));
    } else {
        if let Some(x) = extra.get("x") {
            println!("x={} unique={} subcode={}", x.as_str().unwrap_or(""), extra["unique"], describe_line(&extra["subcode"]));
        }
        for v in &listed {
            println!("{}: {}", v["construction"].as_str().unwrap_or(""), describe_line(v));
        }
        if a.out.is_none() {
            for (_, code) in &results {
                save(code, None)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_extend(cli: &Cli, a: &ExtendArgs) -> Outcome {
    let parent = load(&a.code)?;
    let x = match (&a.x, &a.head) {
        (Some(x), None) => BitVector::parse_bits(x)?,
        (None, Some(h)) => ExtensionRecipe::from_head("parent", &BitVector::parse_bits(h)?)?.x,
        _ => return Err(Failure { code: 2, message: "give exactly one of --x and --head".into() }),
    };
    let code = tsai_extend(&parent, &x)?;
    if let Some(p) = &a.out {
        save(&code, Some(p))?;
    }
    let v = describe(&code)?;
    if cli.json {
        println!("{v}");
    } else {
        println!("{}", describe_line(&v));
        if a.out.is_none() {
            save(&code, None)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_equiv(cli: &Cli, a: &Path, b: &Path, canonical: bool) -> Outcome {
    let (c1, c2) = (load(a)?, load(b)?);
    let perm = find_equivalence(&c1, &c2)?;
    let forms = if canonical {
        Some((canonical_form(&c1)?.to_hex(), canonical_form(&c2)?.to_hex()))
    } else {
        None
    };
    let verdict = if perm.is_some() { "equivalent" } else { "inequivalent" };
    if cli.json {
        let perm1 = perm.as_ref().map(|p| p.iter().map(|i| i + 1).collect::<Vec<_>>());
        let mut v = json!({"verdict": verdict, "permutation": perm1});
        if let Some((f1, f2)) = &forms {
            v["canonical"] = json!([f1, f2]);
        }
        println!("{v}");
    } else {
        println!("{verdict}");
        if let Some((f1, f2)) = &forms {
            println!("{f1}\n{f2}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn certificate_line(label: &str, c: &CoveringCertificate) -> String {
    let conclusion = c.conclusion.map_or("open".to_string(), |r| format!("CR={r}"));
    format!(
        "{label}: upper={} ({:?}) lower={} witness={} {conclusion}",
        c.upper,
        c.upper_method,
        c.lower,
        c.witness.to_hex()
    )
}

fn cmd_cr(cli: &Cli, a: &CrArgs) -> Outcome {
    let code = load(&a.code)?;
    let certs: Vec<(String, CoveringCertificate)> = if a.certify_de_neighbors {
        let (c1, c2) = certify_cr12(&code, a.sweep_check)?;
        vec![("C0+C1".into(), c1), ("C0+C3".into(), c2)]
    } else if a.exact {
        vec![("exact".into(), certify_exact(&code, a.memory_budget)?)]
    } else {
        // a unit vector, and for singly even codes the two shadow cosets
        let mut candidates = vec![BitVector::from_support(code.n(), &[0])?];
        if code.is_self_dual() && parity_class(&code)? == ParityClass::SinglyEven {
            let s = ShadowCosets::new(&code)?;
            candidates.extend([s.c1_rep, s.c3_rep]);
        }
        vec![("delsarte".into(), certify_with_cosets(&code, &candidates)?)]
    };
    if cli.json {
        let list: Vec<_> = certs.iter().map(|(l, c)| json!({"code": l, "certificate": c})).collect();
        println!("{}", serde_json::to_string_pretty(&list).expect("serializable"));
    } else {
        for (l, c) in &certs {
            println!("{}", certificate_line(l, c));
        }
    }
    Ok(ExitCode::SUCCESS)
}
