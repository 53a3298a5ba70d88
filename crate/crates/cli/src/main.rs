//! `glcds`: generate instances, build CDS partitions, solve, verify.
//!
//! Exit codes: 0 success, 1 infeasible or failed verification, 2 usage,
//! parse or input error. Failures print `ERROR <code> <message>` as the
//! first line on stderr; failed verification prints `FAIL` lines on stdout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use glcds::cds::{cds_biconvex, cds_convex, cds_interval, extend_to_partition, CdsFamily};
use glcds::gen::{gen_biconvex, gen_convex, gen_gl_extension, gen_interval, gen_planted_cds, RNG_NAME};
use glcds::gl::{solve_with, CdsInput, GlInstance, SolveOptions};
use glcds::graph::vertex_connectivity;
use glcds::io::{self, GlExtension, InstanceBundle, Source};
use glcds::verify::{brute_cds_limited, brute_gl_limited, verify_cds_partition, verify_gl, ORACLE_LIMIT};

#[derive(Parser)]
#[command(
    name = "glcds",
    version,
    about = "Connected dominating set partitions and Győri–Lovász partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenClass {
    Interval,
    Biconvex,
    Convex,
    Planted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CdsClass {
    Interval,
    Biconvex,
    Convex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Gl,
    Cds,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded instance bundle (model or graph plus terminals and demands).
    Gen {
        #[arg(long, value_enum)]
        class: GenClass,
        /// Vertex count; split evenly between the sides of bipartite classes
        /// unless --na/--nb are given.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        na: Option<usize>,
        #[arg(long)]
        nb: Option<usize>,
        /// Number of terminals; also the connectivity target (4k for convex)
        /// or the number of planted trees.
        #[arg(long, short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random edges added on top of the planted trees (default n).
        #[arg(long)]
        extra: Option<usize>,
        /// Draw terminals from this planted tree (1-based).
        #[arg(long)]
        terminal_tree: Option<usize>,
        /// Output file; planted instances also get `<stem>.cds` beside it.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Build a size-k CDS partition of an interval, biconvex or convex model.
    Cds {
        #[arg(long, value_enum)]
        class: CdsClass,
        #[arg(short = 'k', long)]
        k: usize,
        input: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Solve a GL instance given disjoint dominating trees. Produce the CDS
    /// file with `cds` or `oracle --what cds`.
    Partition {
        input: PathBuf,
        #[arg(long)]
        cds: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Write PLACE/STEAL/EMIT events here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Run the state invariant suite at every checkpoint.
        #[arg(long)]
        check: bool,
        /// Emit families of full sets, not only single sets.
        #[arg(long)]
        family_detector: bool,
    },
    /// Check a partition (gl) or CDS partition (cds) against an instance.
    Verify {
        #[arg(long, value_enum)]
        what: What,
        instance: PathBuf,
        object: PathBuf,
    },
    /// Exhaustive search on small instances.
    Oracle {
        #[arg(long, value_enum)]
        what: What,
        #[arg(short = 'k', long)]
        k: Option<usize>,
        #[arg(long, default_value_t = ORACLE_LIMIT)]
        max_n: usize,
        input: PathBuf,
    },
    /// Print the vertex connectivity.
    Connectivity { input: PathBuf },
}

/// A failure with its exit code and machine-readable code.
struct Failure {
    exit: u8,
    code: String,
    msg: String,
}

impl Failure {
    fn usage(code: &str, msg: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            code: code.into(),
            msg: msg.into(),
        }
    }
}

impl From<glcds::Error> for Failure {
    fn from(e: glcds::Error) -> Self {
        use glcds::Error::*;
        let exit = match e {
            InsufficientConnectivity { .. }
            | AugmentationExhausted { .. }
            | NotDominating(_)
            | Disconnected
            | GenerationFailed { .. }
            | InvariantBroken(_) => 1,
            _ => 2,
        };
        Failure {
            exit,
            code: e.code().into(),
            msg: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage("io", format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_err(path: &Path, e: io::ParseError) -> Failure {
    Failure::usage(e.code(), format!("{}: {e}", path.display()))
}

fn load_bundle(path: &Path) -> Result<InstanceBundle, Failure> {
    io::parse_bundle(&read(path)?).map_err(|e| parse_err(path, e))
}

fn gl_instance(path: &Path, b: &InstanceBundle) -> Result<GlInstance, Failure> {
    let ext =
        b.gl.as_ref()
            .ok_or_else(|| Failure::usage("missing-gl-extension", format!("{}: no 'k'/'t' lines", path.display())))?;
    Ok(GlInstance::new(
        b.source.graph(),
        ext.terminals.clone(),
        ext.demands.clone(),
    )?)
}

fn header(args: &str) -> String {
    format!("# glcds gen {args}\n# rng {RNG_NAME} (rand_chacha ChaCha8Rng::seed_from_u64)\n")
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    class: GenClass,
    n: Option<usize>,
    na: Option<usize>,
    nb: Option<usize>,
    k: usize,
    seed: u64,
    extra: Option<usize>,
    terminal_tree: Option<usize>,
    output: Option<&Path>,
) -> Outcome {
    let sides = || -> Result<(usize, usize), Failure> {
        match (na, nb, n) {
            (Some(a), Some(b), _) => Ok((a, b)),
            (_, _, Some(n)) => Ok((na.unwrap_or(n / 2), nb.unwrap_or(n - n / 2))),
            _ => Err(Failure::usage("usage", "give --n or both --na and --nb")),
        }
    };
    let need_n = || n.ok_or_else(|| Failure::usage("usage", "--n is required for this class"));
    // terminals come from an independent stream of the same seed
    let ext_seed = seed ^ 0x7465_726d_696e_616c;
    let mut cds_text = None;
    let (source, pool) = match class {
        GenClass::Interval => (Source::Interval(gen_interval(need_n()?, k, seed)?), None),
        GenClass::Biconvex => {
            let (a, b) = sides()?;
            (Source::Biconvex(gen_biconvex(a, b, k, seed)?), None)
        }
        GenClass::Convex => {
            let (a, b) = sides()?;
            (Source::Convex(gen_convex(a, b, 4 * k, seed)?), None)
        }
        GenClass::Planted => {
            let n = need_n()?;
            let (g, cds) = gen_planted_cds(n, k, extra.unwrap_or(n), seed)?;
            let pool = match terminal_tree {
                Some(t) if t == 0 || t > k => {
                    return Err(Failure::usage("usage", format!("--terminal-tree must be in 1..{k}")))
                }
                Some(t) => Some(cds.trees[t - 1].vertices.clone()),
                None => None,
            };
            let sets: Vec<_> = cds.trees.iter().map(|t| t.vertices.clone()).collect();
            cds_text = Some(io::write_cds(&sets));
            (Source::Graph(g), pool)
        }
    };
    let inst = gen_gl_extension(&source.graph(), k, ext_seed, pool.as_ref())?;
    let class_name = source.kind();
    let bundle = InstanceBundle {
        source,
        gl: Some(GlExtension {
            terminals: inst.terminals,
            demands: inst.demands,
        }),
        cds: None,
    };
    let args = format!(
        "--class {} --n {} --k {k} --seed {seed}",
        if class == GenClass::Planted {
            "planted"
        } else {
            class_name
        },
        bundle.source.n()
    );
    let mut text = header(&args);
    text.push_str(&io::write_bundle(&bundle));
    match (output, cds_text) {
        (Some(out), Some(cds)) => {
            write_out(Some(out), &text)?;
            write_out(Some(&out.with_extension("cds")), &format!("{}{cds}", header(&args)))?;
        }
        (None, Some(cds)) => write_out(None, &format!("{text}{cds}"))?,
        (out, None) => write_out(out, &text)?,
    }
    Ok(0)
}

fn cmd_cds(class: CdsClass, k: usize, input: &Path, output: Option<&Path>) -> Outcome {
    let b = load_bundle(input)?;
    let fam: CdsFamily = match (class, &b.source) {
        (CdsClass::Interval, Source::Interval(m)) => cds_interval(m, k)?,
        (CdsClass::Biconvex, Source::Biconvex(m)) => cds_biconvex(m, k)?,
        (CdsClass::Convex, Source::Convex(m)) => cds_convex(m, k)?,
        (CdsClass::Convex, Source::Biconvex(m)) => cds_convex(&m.convex, k)?,
        (_, s) => {
            return Err(Failure::usage(
                "class-mismatch",
                format!("{} holds a '{}' model", input.display(), s.kind()),
            ))
        }
    };
    let part = extend_to_partition(&b.source.graph(), &fam)?;
    write_out(output, &io::write_cds_family(&part))?;
    Ok(0)
}

fn cmd_partition(input: &Path, cds: &Path, output: Option<&Path>, trace: Option<&Path>, opts: SolveOptions) -> Outcome {
    let b = load_bundle(input)?;
    let inst = gl_instance(input, &b)?;
    let sets = io::parse_cds(&read(cds)?, inst.graph.n()).map_err(|e| parse_err(cds, e))?;
    let trees = CdsInput::from_sets(&inst.graph, &sets)?;
    let run = solve_with(&inst, &trees, opts)?;
    write_out(output, &io::write_partition(&run.partition))?;
    if let Some(t) = trace {
        write_out(Some(t), &io::write_trace(&run.trace))?;
    }
    Ok(0)
}

fn cmd_verify(what: What, instance: &Path, object: &Path) -> Outcome {
    let b = load_bundle(instance)?;
    let text = read(object)?;
    let report = match what {
        What::Gl => {
            let inst = gl_instance(instance, &b)?;
            let p = io::parse_partition(&text, inst.graph.n()).map_err(|e| parse_err(object, e))?;
            verify_gl(&inst, &p)
        }
        What::Cds => {
            let g = b.source.graph();
            let sets = io::parse_cds(&text, g.n()).map_err(|e| parse_err(object, e))?;
            verify_cds_partition(&g, &CdsFamily { sets })
        }
    };
    print!("{}", io::write_report(&report));
    Ok(if report.ok() { 0 } else { 1 })
}

fn cmd_oracle(what: What, k: Option<usize>, max_n: usize, input: &Path) -> Outcome {
    let b = load_bundle(input)?;
    let found = match what {
        What::Gl => {
            let inst = gl_instance(input, &b)?;
            brute_gl_limited(&inst, max_n)?.map(|p| io::write_partition(&p))
        }
        What::Cds => {
            let k = k.ok_or_else(|| Failure::usage("usage", "--what cds needs -k"))?;
            brute_cds_limited(&b.source.graph(), k, max_n)?.map(|f| io::write_cds_family(&f))
        }
    };
    match found {
        Some(text) => {
            print!("{text}");
            Ok(0)
        }
        None => {
            println!("INFEASIBLE");
            Ok(1)
        }
    }
}

fn cmd_connectivity(input: &Path) -> Outcome {
    let b = load_bundle(input)?;
    println!("{}", vertex_connectivity(&b.source.graph())?);
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen {
            class,
            n,
            na,
            nb,
            k,
            seed,
            extra,
            terminal_tree,
            output,
        } => cmd_gen(class, n, na, nb, k, seed, extra, terminal_tree, output.as_deref()),
        Command::Cds {
            class,
            k,
            input,
            output,
        } => cmd_cds(class, k, &input, output.as_deref()),
        Command::Partition {
            input,
            cds,
            output,
            trace,
            check,
            family_detector,
        } => cmd_partition(
            &input,
            &cds,
            output.as_deref(),
            trace.as_deref(),
            SolveOptions {
                check_invariants: check,
                family_detector,
            },
        ),
        Command::Verify { what, instance, object } => cmd_verify(what, &instance, &object),
        Command::Oracle { what, k, max_n, input } => cmd_oracle(what, k, max_n, &input),
        Command::Connectivity { input } => cmd_connectivity(&input),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("ERROR usage {first}");
            eprint!("{rendered}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ERROR {} {}", f.code, f.msg);
            ExitCode::from(f.exit)
        }
    }
}
