//! Command-line front door: parse group/subgroup/decomposition files, run
//! each pipeline stage, and emit labeled matrices and reports.
//!
//! Exit codes: 0 success/found, 2 parse or validation failure, 3 search
//! exhausted, 4 verification failed, 5 internal inconsistency.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cartanlab::builtin;
use cartanlab::cartan::{
    complex_cartan, delta_matrix, modular_cartan, CartanMatrix, DecompositionMatrix, DeltaMatrix,
};
use cartanlab::chartab::CharacterTable;
use cartanlab::group::{PairSubgroup, PermGroup};
use cartanlab::hunt::{
    self, CandidatePool, HuntError, SearchOutcome, DEFAULT_BOX_BOUND, DEFAULT_KERNEL_BOUND,
    DEFAULT_Z_BOUND,
};
use cartanlab::io;
use cartanlab::monoid::{self, Biset, Monoid, DEFAULT_MONOID_CAP, DEFAULT_POINT_CAP};

const EXIT_OK: i32 = 0;
const EXIT_PARSE: i32 = 2;
const EXIT_EXHAUSTED: i32 = 3;
const EXIT_VERIFY_FAILED: i32 = 4;
const EXIT_INCONSISTENT: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "cartanlab",
    about = "Exact Cartan matrices of finite monoid algebras built from group bisets",
    version
)]
struct Cli {
    /// Output format for data printed to stdout
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for parallel sections (0 = library default)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized associativity sampling
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact character table of a group
    Chartab {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Print the Δ matrix of a subgroup of G×G
    Delta {
        #[command(flatten)]
        group: GroupArg,
        /// Built-in subgroup name (diag/La/Lb/Lc for S3) or a spec file path
        #[arg(long)]
        subgroup: String,
    },
    /// Assemble the complex Cartan matrix; with --decomp also the modular one
    Cartan {
        #[command(flatten)]
        group: GroupArg,
        /// Subgroup names or spec paths, repeatable
        #[arg(long = "subgroup", required = true)]
        subgroups: Vec<String>,
        /// Comma-separated multiplicities, one per subgroup
        #[arg(long, value_delimiter = ',', required = true)]
        z: Vec<u64>,
        /// Decomposition matrix: "S3-p3", "identity:P", or a JSON path
        #[arg(long)]
        decomp: Option<String>,
        /// Append the 1×1 block for the simple module with apex z
        #[arg(long)]
        uncontracted: bool,
    },
    /// Recompute a configuration from scratch and report pass/fail per claim
    Verify {
        /// Ready-made configuration ("paper-s3")
        #[arg(long)]
        builtin: Option<String>,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "subgroup")]
        subgroups: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        z: Vec<u64>,
        #[arg(long)]
        decomp: Option<String>,
        /// Cross-check every Δ against the explicit coset biset
        #[arg(long)]
        oracle: bool,
    },
    /// Search for multiplicities making the complex Cartan matrix
    /// non-singular while the modular one is singular
    Search {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        decomp: Option<String>,
        #[arg(long, value_enum, default_value = "box")]
        strategy: Strategy,
        /// Box bound for the brute-force strategy
        #[arg(long, default_value_t = DEFAULT_BOX_BOUND)]
        bound: u64,
        /// Kernel-vector entry bound for the kernel strategy
        #[arg(long, default_value_t = DEFAULT_KERNEL_BOUND)]
        kernel_bound: i64,
        /// Multiplicity bound for the kernel strategy
        #[arg(long, default_value_t = DEFAULT_Z_BOUND)]
        z_bound: u64,
        /// Stream every hit instead of stopping at the first
        #[arg(long)]
        all: bool,
        /// Candidate pool: subgroup names/paths, or "enumerate" to generate
        /// representatives up to conjugacy (default: the built-in triple for
        /// S3, "enumerate" otherwise)
        #[arg(long = "pool")]
        pool: Vec<String>,
        /// Subgroup order cap for pool enumeration
        #[arg(long, default_value_t = 64)]
        order_cap: usize,
    },
    /// Build the monoid M(G,X) and run the structural checks
    MonoidCheck {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "subgroup", required = true)]
        subgroups: Vec<String>,
        /// Multiplicities, one per subgroup (default all 1)
        #[arg(long, value_delimiter = ',')]
        z: Vec<u64>,
        /// Also print the multiplication table
        #[arg(long)]
        table: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Box,
    Kernel,
}

#[derive(Debug, Args)]
struct GroupArg {
    /// Built-in group name (trivial, C2, C3, C4, C6, S3, S4, D4, Q8) or a
    /// spec file path (.toml or .json)
    #[arg(long)]
    group: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::parse(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("warning: could not configure the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn resolve_group(arg: &GroupArg) -> Result<Arc<PermGroup>, Failure> {
    let name = arg
        .group
        .as_deref()
        .ok_or_else(|| Failure::parse("missing --group (built-in name or spec file)"))?;
    if builtin::group_names().contains(&name) {
        return Ok(Arc::new(builtin::group(name)?));
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(Failure::parse(format!(
            "{name:?} is neither a built-in group nor an existing file"
        )));
    }
    Ok(Arc::new(io::load_group_spec(path)?))
}

fn resolve_subgroup(spec: &str, group: &PermGroup) -> Result<PairSubgroup, Failure> {
    if matches!(spec, "diag" | "La" | "Lb" | "Lc") && group.order() == 6 && group.degree() == 3 {
        return Ok(builtin::s3_pair_subgroup(group, spec)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure::parse(format!(
            "{spec:?} is neither a built-in subgroup nor an existing file"
        )));
    }
    Ok(io::load_pair_subgroup(path, group)?)
}

fn resolve_decomp(
    spec: &str,
    table: &CharacterTable,
) -> Result<DecompositionMatrix, Failure> {
    if spec == "S3-p3" {
        return Ok(builtin::s3_decomposition_p3());
    }
    if let Some(p) = spec.strip_prefix("identity:") {
        let prime: u64 = p
            .parse()
            .map_err(|_| Failure::parse(format!("bad prime in {spec:?}")))?;
        return Ok(builtin::identity_decomposition(&table.labels(), prime));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure::parse(format!(
            "{spec:?} is neither a built-in decomposition nor an existing file"
        )));
    }
    let d = io::load_decomposition(path)?;
    d.validate_against_group_order(table.group().order())?;
    Ok(d)
}

fn run(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Chartab { group } => cmd_chartab(cli, group),
        Command::Delta { group, subgroup } => cmd_delta(cli, group, subgroup),
        Command::Cartan {
            group,
            subgroups,
            z,
            decomp,
            uncontracted,
        } => cmd_cartan(cli, group, subgroups, z, decomp.as_deref(), *uncontracted),
        Command::Verify {
            builtin: builtin_name,
            group,
            subgroups,
            z,
            decomp,
            oracle,
        } => cmd_verify(
            cli,
            builtin_name.as_deref(),
            group,
            subgroups,
            z,
            decomp.as_deref(),
            *oracle,
        ),
        Command::Search {
            group,
            decomp,
            strategy,
            bound,
            kernel_bound,
            z_bound,
            all,
            pool,
            order_cap,
        } => cmd_search(
            cli,
            group,
            decomp.as_deref(),
            *strategy,
            *bound,
            *kernel_bound,
            *z_bound,
            *all,
            pool,
            *order_cap,
        ),
        Command::MonoidCheck {
            group,
            subgroups,
            z,
            table,
        } => cmd_monoid_check(cli, group, subgroups, z, *table),
    }
}

fn cmd_chartab(cli: &Cli, group: &GroupArg) -> Result<i32, Failure> {
    let g = resolve_group(group)?;
    let table = CharacterTable::dixon(Arc::clone(&g))?;
    match cli.format {
        Format::Json => {
            let file = io::character_table_to_file(&table);
            println!("{}", serde_json::to_string_pretty(&file).unwrap());
        }
        Format::Text => {
            println!("group of order {} with {} classes", g.order(), g.classes().len());
            println!("classes (representative: size):");
            for c in g.classes() {
                println!("  {}: {}", g.element(c.representative), c.size());
            }
            println!("conductor: {}", table.conductor());
            println!("label map (canonical row order):");
            for row in table.rows() {
                let values: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
                println!("  {} -> [{}]", row.label, values.join(", "));
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_delta(cli: &Cli, group: &GroupArg, subgroup: &str) -> Result<i32, Failure> {
    let g = resolve_group(group)?;
    let table = CharacterTable::dixon(Arc::clone(&g))?;
    let sub = resolve_subgroup(subgroup, &g)?;
    let delta = delta_matrix(&table, &sub)?;
    match cli.format {
        Format::Json => {
            let mut v = io::labeled_matrix_to_json(&delta.labeled);
            v["subgroup_order"] = serde_json::Value::from(delta.subgroup_order);
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Text => {
            println!("Δ({subgroup}) for a subgroup of order {}:", delta.subgroup_order);
            print!("{}", delta.labeled.render_text());
        }
    }
    Ok(EXIT_OK)
}

fn build_deltas(
    table: &CharacterTable,
    group: &PermGroup,
    subgroups: &[String],
) -> Result<(Vec<String>, Vec<PairSubgroup>, Vec<DeltaMatrix>), Failure> {
    let mut names = Vec::new();
    let mut subs = Vec::new();
    let mut deltas = Vec::new();
    for spec in subgroups {
        let sub = resolve_subgroup(spec, group)?;
        deltas.push(delta_matrix(table, &sub)?);
        names.push(spec.clone());
        subs.push(sub);
    }
    Ok((names, subs, deltas))
}

fn print_cartan(cli: &Cli, c: &CartanMatrix, heading: &str) {
    let det = c.det();
    let verdict = if det == num_bigint::BigInt::from(0) {
        "singular"
    } else {
        "non-singular"
    };
    match cli.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&io::cartan_to_json(c)).unwrap());
        }
        Format::Text => {
            println!("{heading} ({} field):", c.field);
            print!("{}", c.labeled.render_text());
            println!("det = {det} ({verdict})");
        }
    }
}

fn cmd_cartan(
    cli: &Cli,
    group: &GroupArg,
    subgroups: &[String],
    z: &[u64],
    decomp: Option<&str>,
    uncontracted: bool,
) -> Result<i32, Failure> {
    if z.len() != subgroups.len() {
        return Err(Failure::parse(format!(
            "{} multiplicities for {} subgroups",
            z.len(),
            subgroups.len()
        )));
    }
    let g = resolve_group(group)?;
    let table = CharacterTable::dixon(Arc::clone(&g))?;
    let (_, _, deltas) = build_deltas(&table, &g, subgroups)?;
    let mut complex = complex_cartan(&deltas, z)?;
    if uncontracted {
        complex = complex.uncontracted();
    }
    print_cartan(cli, &complex, "complex Cartan matrix");
    if let Some(spec) = decomp {
        if uncontracted {
            return Err(Failure::parse(
                "--uncontracted cannot be combined with --decomp: the \
                 decomposition matrix addresses the contracted algebra",
            ));
        }
        let d = resolve_decomp(spec, &table)?;
        let modular = modular_cartan(&complex, &d)?;
        print_cartan(cli, &modular, "modular Cartan matrix");
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    cli: &Cli,
    builtin_name: Option<&str>,
    group: &GroupArg,
    subgroups: &[String],
    z: &[u64],
    decomp: Option<&str>,
    oracle: bool,
) -> Result<i32, Failure> {
    let (g, subgroup_specs, multiplicities, decomp_spec, use_oracle) = match builtin_name {
        Some("paper-s3") => {
            let cfg = builtin::paper_s3_config();
            (
                Arc::new(builtin::group("S3")?),
                cfg.subgroup_names.iter().map(|s| s.to_string()).collect(),
                cfg.multiplicities,
                format!("S3-p{}", cfg.prime),
                true,
            )
        }
        Some(other) => {
            return Err(Failure::parse(format!(
                "unknown built-in configuration {other:?} (available: paper-s3)"
            )))
        }
        None => {
            let decomp = decomp
                .ok_or_else(|| Failure::parse("verify needs --decomp (or --builtin)"))?;
            if subgroups.is_empty() {
                return Err(Failure::parse("verify needs at least one --subgroup"));
            }
            if z.len() != subgroups.len() {
                return Err(Failure::parse(format!(
                    "{} multiplicities for {} subgroups",
                    z.len(),
                    subgroups.len()
                )));
            }
            (
                resolve_group(group)?,
                subgroups.to_vec(),
                z.to_vec(),
                decomp.to_string(),
                oracle,
            )
        }
    };
    let table = CharacterTable::dixon(Arc::clone(&g))?;
    let d = resolve_decomp(&decomp_spec, &table)?;
    let named: Vec<(String, PairSubgroup)> = subgroup_specs
        .iter()
        .map(|s| Ok((s.clone(), resolve_subgroup(s, &g)?)))
        .collect::<Result<_, Failure>>()?;
    let report = hunt::verify_counterexample(
        &table,
        &named,
        &multiplicities,
        &d,
        use_oracle,
        DEFAULT_POINT_CAP,
    )
    .map_err(|e| match e {
        HuntError::Inconsistency(msg) => Failure {
            code: EXIT_INCONSISTENT,
            message: msg,
        },
        other => Failure::parse(other.to_string()),
    })?;
    match cli.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            for claim in &report.claims {
                let tag = if claim.passed { "PASS" } else { "FAIL" };
                println!("[{tag}] {} ({})", claim.name, claim.detail);
            }
            let ce = &report.counterexample;
            println!("z = {:?} over {:?}", ce.multiplicities, ce.candidate_names);
            println!("det complex = {}, det modular = {}", ce.det_complex, ce.det_modular);
            if !ce.kernel_vector.is_empty() {
                let v: Vec<String> = ce.kernel_vector.iter().map(|x| x.to_string()).collect();
                println!("modular kernel vector: ({})", v.join(", "));
            }
        }
    }
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        Err(Failure {
            code: EXIT_VERIFY_FAILED,
            message: "verification failed: see the claim report".to_string(),
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    cli: &Cli,
    group: &GroupArg,
    decomp: Option<&str>,
    strategy: Strategy,
    bound: u64,
    kernel_bound: i64,
    z_bound: u64,
    all: bool,
    pool_spec: &[String],
    order_cap: usize,
) -> Result<i32, Failure> {
    let g = resolve_group(group)?;
    let table = CharacterTable::dixon(Arc::clone(&g))?;
    let decomp = decomp.ok_or_else(|| Failure::parse("search needs --decomp"))?;
    let d = resolve_decomp(decomp, &table)?;
    let is_s3 = g.order() == 6 && g.degree() == 3;
    let pool = if pool_spec.len() == 1 && pool_spec[0] == "enumerate" {
        hunt::enumerate_pair_subgroups(&g, &table, order_cap, 2, hunt::DEFAULT_POOL_CANDIDATE_CAP)?
    } else if pool_spec.is_empty() {
        if is_s3 {
            let named = ["diag", "Lb", "Lc"]
                .iter()
                .map(|n| Ok((n.to_string(), builtin::s3_pair_subgroup(&g, n)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            CandidatePool::from_subgroups(&table, named)?
        } else {
            hunt::enumerate_pair_subgroups(
                &g,
                &table,
                order_cap,
                2,
                hunt::DEFAULT_POOL_CANDIDATE_CAP,
            )?
        }
    } else {
        let named = pool_spec
            .iter()
            .map(|s| Ok((s.clone(), resolve_subgroup(s, &g)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        CandidatePool::from_subgroups(&table, named)?
    };
    if pool.truncated {
        eprintln!("warning: candidate pool truncated at the candidate cap");
    }
    let start = Instant::now();
    let outcome = match strategy {
        Strategy::Box => hunt::search_bruteforce(&pool, &d, bound, None, all)?,
        Strategy::Kernel => hunt::search_kernel_guided(&pool, &d, kernel_bound, z_bound, all)?,
    };
    let elapsed = start.elapsed().as_millis();
    let hits = match &outcome {
        SearchOutcome::Found(hits) => hits.as_slice(),
        SearchOutcome::Exhausted => &[],
    };
    let config = json!({
        "group_order": g.order(),
        "prime": d.prime,
        "strategy": match strategy { Strategy::Box => "box", Strategy::Kernel => "kernel" },
        "bound": bound,
        "kernel_bound": kernel_bound,
        "z_bound": z_bound,
        "all": all,
        "pool_size": pool.candidates.len(),
    });
    let names: Vec<String> = pool.candidates.iter().map(|c| c.name.clone()).collect();
    match cli.format {
        Format::Json => {
            let report = io::search_report(config, names, hits, elapsed);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            println!("pool: {}", names.join(", "));
            if hits.is_empty() {
                println!("exhausted after {elapsed} ms: no counterexample within the bounds");
            } else {
                for hit in hits {
                    println!(
                        "hit: z = {:?}, det complex = {}, det modular = {}",
                        hit.multiplicities, hit.det_complex, hit.det_modular
                    );
                }
                println!("{} hit(s) in {elapsed} ms", hits.len());
            }
        }
    }
    if hits.is_empty() {
        // exhaustion is reported on stderr as well, as a diagnostic
        eprintln!("search exhausted");
        Ok(EXIT_EXHAUSTED)
    } else {
        Ok(EXIT_OK)
    }
}

fn cmd_monoid_check(
    cli: &Cli,
    group: &GroupArg,
    subgroups: &[String],
    z: &[u64],
    print_table: bool,
) -> Result<i32, Failure> {
    let g = resolve_group(group)?;
    let multiplicities: Vec<u64> = if z.is_empty() {
        vec![1; subgroups.len()]
    } else if z.len() == subgroups.len() {
        z.to_vec()
    } else {
        return Err(Failure::parse(format!(
            "{} multiplicities for {} subgroups",
            z.len(),
            subgroups.len()
        )));
    };
    let mut blocks = Vec::new();
    for (spec, &m) in subgroups.iter().zip(&multiplicities) {
        let sub = resolve_subgroup(spec, &g)?;
        for _ in 0..m {
            blocks.push(sub.clone());
        }
    }
    let biset = Biset::build(&g, &blocks, DEFAULT_POINT_CAP)?;
    let monoid = Monoid::build_with_cap(&g, &biset, DEFAULT_MONOID_CAP)?;
    let assoc = monoid.check_associativity(cli.seed);
    let structure = monoid.check_structure(&g);
    let jreport = monoid.green_j_report();
    let expected_nonregular = blocks.len();
    let orbits_ok = jreport.non_regular_count() == expected_nonregular;
    let passed = assoc.passed() && structure && orbits_ok;
    match cli.format {
        Format::Json => {
            let v = json!({
                "monoid_size": monoid.size(),
                "group_order": g.order(),
                "biset_size": biset.size,
                "associativity": assoc,
                "structure_ok": structure,
                "j_classes": jreport,
                "non_regular_j_classes": jreport.non_regular_count(),
                "expected_non_regular": expected_nonregular,
                "passed": passed,
                "metadata": monoid::export_metadata(&g, &biset, &monoid),
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Text => {
            println!(
                "M(G,X): |G| = {}, |X| = {}, |M| = {}",
                g.order(),
                biset.size,
                monoid.size()
            );
            println!(
                "associativity: {} ({} triples, {})",
                if assoc.passed() { "ok" } else { "FAILED" },
                assoc.triples_checked,
                if assoc.exhaustive { "exhaustive" } else { "sampled" }
            );
            println!("structure (identity/zero/blocks): {}", if structure { "ok" } else { "FAILED" });
            println!(
                "J-classes: {} total, {} non-regular (expected {})",
                jreport.classes.len(),
                jreport.non_regular_count(),
                expected_nonregular
            );
            if print_table {
                print!("{}", monoid::export_table_text(&monoid));
            }
        }
    }
    if passed {
        Ok(EXIT_OK)
    } else {
        Err(Failure {
            code: EXIT_VERIFY_FAILED,
            message: "monoid structural checks failed".to_string(),
        })
    }
}
