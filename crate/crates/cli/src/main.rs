use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qgca_core::gls;
use qgca_core::lifting::{self, PipelineReport};
use qgca_core::seed::realize::realized_exchange;
use qgca_core::seed::{explore_realized, is_linear, Enumeration, ExploreOptions, Seed, DEFAULT_MAX_DEPTH};
use qgca_core::serial::{Realized, SeedFile};
use qgca_core::verify::{run_all, VerifyOptions};

const DEPTH_VAR: &str = "QGCA_MAX_DEPTH";

#[derive(Parser)]
#[command(name = "qgca", version, about = "Graded quantum cluster algebras on quantum matrices and Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the initial seed on K_q[Mat(k,j)] from quantum minors.
    MatSeed {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        j: usize,
        /// Allow k*j above 20.
        #[arg(long)]
        force: bool,
        /// Write the seed here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a sequence of mutations to a seed file.
    Mutate {
        seed: PathBuf,
        /// Comma-separated vertex names, labels or indices, e.g. "(1,1),(2,2)".
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the cluster variables reachable from a seed file.
    Enumerate {
        seed: PathBuf,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Run the lifting pipeline and build the seed on K_q[Gr(k,n)].
    Grassmannian {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Allow k*(n-k) above 12.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Write the final seed here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the numbered acceptance checks.
    Verify {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0x5eed)]
        rng_seed: u64,
        #[arg(long)]
        max_depth: Option<usize>,
    },
}

enum Failure {
    /// Exit code 2.
    Usage(String),
    /// Exit code 1.
    Invalid(String),
}

impl From<qgca_core::Error> for Failure {
    fn from(e: qgca_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn max_depth(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DEPTH_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{} must be a natural number, got {:?}", DEPTH_VAR, v))),
        Err(_) => Ok(DEFAULT_MAX_DEPTH),
    }
}

fn explore_opts(flag: Option<usize>) -> Result<ExploreOptions, Failure> {
    Ok(ExploreOptions { max_depth: max_depth(flag)?, ..ExploreOptions::default() })
}

fn read_seed(path: &Path) -> Result<(Seed, Option<Realized>), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
    Ok(SeedFile::parse(&text)?.to_seed()?)
}

/// Writes the seed to `out`, or to standard output; the report goes to
/// whichever stream the seed does not use.
fn emit(file: &SeedFile, report: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => {
            std::fs::write(p, file.to_json()).map_err(|e| Failure::Usage(format!("{}: {}", p.display(), e)))?;
            print!("{}", report);
        }
        None => {
            eprint!("{}", report);
            print!("{}", file.to_json());
        }
    }
    Ok(())
}

fn vector_report(seed: &Seed) -> String {
    let mut s = String::new();
    for (name, v) in seed.gradings() {
        let _ = writeln!(s, "{} = {:?}", name, v);
    }
    s
}

fn mat_seed(k: usize, j: usize, force: bool, out: Option<&Path>) -> Outcome {
    if k == 0 || j == 0 {
        return Err(Failure::Usage("k and j must be positive".into()));
    }
    if k * j > 20 && !force {
        return Err(Failure::Usage(format!("Mat({},{}) has {} entries; the limit is 20 without --force", k, j, k * j)));
    }
    let g = gls::build_seed(k, j)?;
    let mut r = String::new();
    let _ = writeln!(r, "Mat({},{}): {} entries, {} mutable", k, j, g.seed.rank(), g.seed.mutable_indices().len());
    let _ = writeln!(r, "compatibility constant d = {}", g.d);
    for (v, l) in g.seed.vertices().iter().zip(g.seed.labels()) {
        let _ = writeln!(r, "  {} {}", v, l);
    }
    r.push_str(&vector_report(&g.seed));
    let file = SeedFile::from_seed(&g.seed, Some(&Realized::Mat(g.algebra.clone(), g.minors.clone())));
    emit(&file, &r, out)
}

/// Splits "a,(1,2),b" at top-level commas.
fn split_sequence(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

fn step_realized(real: &mut Option<Realized>, seed: &Seed, k: usize) -> Result<Option<String>, Failure> {
    let shown = match real {
        None => None,
        Some(Realized::Mat(alg, xs)) => {
            let x = realized_exchange(&**alg, seed.b(), seed.l(), seed.mutable(), xs, k)?;
            let s = x.to_string();
            xs[k] = x;
            Some(s)
        }
        Some(Realized::Loc(alg, xs)) => {
            let x = alg.normalize(&realized_exchange(&**alg, seed.b(), seed.l(), seed.mutable(), xs, k)?);
            let s = x.to_string();
            xs[k] = x;
            Some(s)
        }
    };
    Ok(shown)
}

fn mutate(path: &Path, sequence: &str, out: Option<&Path>) -> Outcome {
    let (mut seed, mut real) = read_seed(path)?;
    let steps = split_sequence(sequence);
    if steps.is_empty() {
        return Err(Failure::Usage("empty mutation sequence".into()));
    }
    let mut r = String::new();
    for (n, token) in steps.iter().enumerate() {
        let k = seed.index_of(token).ok_or_else(|| Failure::Usage(format!("no vertex named {:?}", token)))?;
        if !seed.mutable()[k] {
            return Err(Failure::Usage(format!("vertex {} is frozen", seed.vertices()[k])));
        }
        let shown = step_realized(&mut real, &seed, k)?;
        seed = seed.mutate(k)?;
        let _ = writeln!(r, "step {}: mutate at {}", n + 1, seed.vertices()[k]);
        let _ = writeln!(r, "  expansion: {}", seed.cluster()[k]);
        if let Some(s) = shown {
            let _ = writeln!(r, "  realised: {}", s);
        }
        for (name, v) in seed.gradings() {
            let _ = writeln!(r, "  {} = {}", name, v[k]);
        }
    }
    let file = SeedFile::from_seed(&seed, real.as_ref());
    emit(&file, &r, out)
}

fn audit(seed: &Seed, e: &Enumeration) -> String {
    let mut r = String::new();
    let weights = match seed.torus_weights() {
        Ok(w) => w,
        Err(err) => {
            let _ = writeln!(r, "homogeneity: weights unavailable ({})", err);
            return r;
        }
    };
    for (name, w) in &weights {
        if !is_linear(name) {
            continue;
        }
        let bad = e.variables.iter().filter(|rec| rec.element.degree(w).ok() != rec.data.get(name).copied()).count();
        let _ = writeln!(
            r,
            "grading {}: {}",
            name,
            if bad == 0 { "every variable homogeneous of its tracked degree".to_string() } else { format!("{} variables fail", bad) }
        );
    }
    r
}

fn enumerate(path: &Path, depth: Option<usize>) -> Outcome {
    let (seed, real) = read_seed(path)?;
    let opts = explore_opts(depth)?;
    let (e, shown): (Enumeration, Vec<Option<String>>) = match &real {
        None => (qgca_core::seed::explore(&seed, &opts)?, vec![None; 0]),
        Some(Realized::Mat(alg, xs)) => {
            let (e, r) = explore_realized(&seed, &opts, &**alg, xs.clone())?;
            (e, r.variables.iter().map(|x| Some(x.to_string())).collect())
        }
        Some(Realized::Loc(alg, xs)) => {
            let (e, r) = explore_realized(&seed, &opts, &**alg, xs.clone())?;
            (e, r.variables.iter().map(|x| Some(alg.normalize(x).to_string())).collect())
        }
    };
    println!("seeds: {}", e.seeds.len());
    println!("variables: {}", e.variables.len());
    println!("frozen: {}", e.frozen.len());
    if e.complete {
        println!("closure: complete at depth {}", e.depth);
    } else {
        println!("closure: capped at depth {}", e.depth);
    }
    for (i, rec) in e.variables.iter().enumerate() {
        let data: Vec<String> = rec.data.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        let what = shown.get(i).cloned().flatten().unwrap_or_else(|| rec.element.to_string());
        println!("  {} [{}] via {}", what, data.join(", "), if rec.path.is_empty() { "-".into() } else { rec.path.join(",") });
    }
    print!("{}", audit(&seed, &e));
    for c in &e.conflicts {
        println!("conflict: {}", c);
    }
    Ok(())
}

fn print_pipeline(r: &PipelineReport) {
    println!("Gr({},{})", r.k, r.n);
    for c in &r.checks {
        println!("[{}] {} {}: {}", c.stage, if c.passed { "PASS" } else { "FAIL" }, c.check, c.detail);
    }
    if !r.theta.is_empty() {
        println!("theta against denominator:");
        for row in &r.theta {
            println!("  {} theta={} denominator={}", row.label, row.theta, row.denominator);
        }
    }
    if let Some(c) = &r.coverage {
        let found: Vec<String> = c.found.iter().map(|s| lifting::plucker_label(s)).collect();
        println!("Plücker coverage {}/{}: {}", c.found.len(), c.found.len() + c.missing.len(), found.join(" "));
    }
    if let Some(g) = &r.seed {
        println!("final seed:");
        for ((v, l), m) in g.seed.vertices().iter().zip(g.seed.labels()).zip(g.seed.mutable()) {
            println!("  {} {}{}", v, l, if *m { "" } else { " (frozen)" });
        }
        print!("{}", vector_report(&g.seed));
    }
}

fn grassmannian(k: usize, n: usize, force: bool, depth: Option<usize>, out: Option<&Path>) -> Outcome {
    if k < 2 || n <= k {
        return Err(Failure::Usage(format!("Gr({},{}) needs 2 <= k < n", k, n)));
    }
    if k * (n - k) > 12 && !force {
        return Err(Failure::Usage(format!("Gr({},{}) has k(n-k) = {}; the limit is 12 without --force", k, n, k * (n - k))));
    }
    let report = lifting::pipeline(k, n, &explore_opts(depth)?);
    print_pipeline(&report);
    if let (Some(p), Some(g)) = (out, &report.seed) {
        let xs = g.realized.iter().map(|m| g.algebra.from_mat(m.clone())).collect();
        let file = SeedFile::from_seed(&g.seed, Some(&Realized::Loc(g.algebra.clone(), xs)));
        std::fs::write(p, file.to_json()).map_err(|e| Failure::Usage(format!("{}: {}", p.display(), e)))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Invalid("pipeline checks failed".into()))
    }
}

fn verify(cases: usize, rng_seed: u64, depth: Option<usize>) -> Outcome {
    let opts = VerifyOptions { cases, rng_seed, explore: explore_opts(depth)? };
    let results = run_all(&opts);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{} of {} checks failed", failed, results.len())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::MatSeed { k, j, force, out } => mat_seed(k, j, force, out.as_deref()),
        Command::Mutate { seed, sequence, out } => mutate(&seed, &sequence, out.as_deref()),
        Command::Enumerate { seed, max_depth } => enumerate(&seed, max_depth),
        Command::Grassmannian { k, n, force, max_depth, out } => grassmannian(k, n, force, max_depth, out.as_deref()),
        Command::Verify { cases, rng_seed, max_depth } => verify(cases, rng_seed, max_depth),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_split_at_top_level() {
        assert_eq!(split_sequence("(1,1), (2,2)"), vec!["(1,1)", "(2,2)"]);
        assert_eq!(split_sequence("M[23|23],0"), vec!["M[23|23]", "0"]);
        assert!(split_sequence(" , ").is_empty());
    }
}
