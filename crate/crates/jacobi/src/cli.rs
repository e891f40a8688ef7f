//! Command-line surface. `run` returns the process exit code: 0 on success
//! or PASS, 1 on a mathematical mismatch, 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use jacobi_core::designs::{
    is_ell_t_homogeneous, is_generalized_t_design, is_t_design, is_t_homogeneous, supports_of_profile,
    supports_of_weight, DesignVerdict,
};
use jacobi_core::enums::{jacobi, split_jacobi, split_weight_enumerator, weight_enumerator, BlockPartition};
use jacobi_core::invar::{
    algebraic_independence, genus_group, molien, molien_closed_form_check, product_of_one_minus, span_dimension,
};
use jacobi_core::mpoly::MPoly;
use jacobi_core::xform::{macwilliams, polarize, polarize_split, split_macwilliams, GenusContext, DEFAULT_SEED};
use serde::Serialize;
use serde_json::json;

use crate::cache::DiskCache;
use crate::claims::{Claim, Harness, GENUS1_MOLIEN_NUMERATOR, GENUS2_MOLIEN_NUMERATOR};
use crate::codefile::{parse_blocks, parse_code, parse_set, read_poly, resolve_code, write_code};
use crate::report::to_json;
use crate::{CliError, Result};

#[derive(Parser, Debug)]
#[command(name = "jacobi", version, about = "Jacobi polynomials of binary codes and the invariant rings they span")]
pub struct Cli {
    /// Emit versioned JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a code given as a file or a built-in name (d8+, d_plus(16), g24, p24).
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Genus-g weight enumerator.
    We(GenusCode),
    /// Genus-g Jacobi polynomial J_{C,T}.
    Jacobi {
        #[command(flatten)]
        base: GenusCode,
        /// Coordinate set T, e.g. "1,2,3" (empty for T = {}).
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Genus-g split Jacobi polynomial.
    SplitJacobi {
        #[command(flatten)]
        base: GenusCode,
        #[command(flatten)]
        split: SplitArgs,
    },
    /// MacWilliams transform of J_{C,T} (or of the split polynomial).
    Macwilliams {
        #[command(flatten)]
        base: GenusCode,
        #[arg(long, default_value = "")]
        set: String,
        /// Use the split polynomial given by --blocks and --sets.
        #[arg(long)]
        split: bool,
        #[command(flatten)]
        split_args: OptSplitArgs,
        /// Compare with the polynomial of the dual code, enumerated directly.
        #[arg(long)]
        check: bool,
    },
    /// Apply the polarization operator to a polynomial file or to a code's weight enumerator.
    Polarize {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// Block to act on (split operator, with its 1/v_k factor).
        #[arg(long, requires = "ell")]
        block: Option<usize>,
        /// Number of blocks.
        #[arg(long)]
        ell: Option<usize>,
        /// Blocks used when the input is a code and --ell is given.
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long, default_value_t = 1)]
        times: usize,
        input: String,
    },
    /// Check whether supports of codewords form a (generalized) t-design.
    DesignCheck {
        #[arg(long)]
        t: usize,
        #[arg(long, conflicts_with = "profile")]
        weight: Option<usize>,
        /// Block-wise weights, e.g. "2,2" (with --partition).
        #[arg(long, requires = "partition")]
        profile: Option<String>,
        #[arg(long)]
        partition: Option<String>,
        code: String,
    },
    /// Check t-homogeneity (ell-th with --partition).
    Homogeneous {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        partition: Option<String>,
        code: String,
    },
    /// Close the group G_g.
    Group {
        #[arg(long)]
        genus: usize,
        /// Print the order (the default output).
        #[arg(long)]
        order: bool,
    },
    /// Molien series of G_g.
    Molien {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        max_degree: usize,
        /// Compare with the published closed form (g = 1, 2).
        #[arg(long)]
        closed_form_check: bool,
    },
    /// Dimension of the span of polynomial files.
    Span(Inputs),
    /// Jacobian rank test for algebraic independence of polynomial files.
    Independence {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Rerun a published computation and print PASS or FAIL.
    Reproduce {
        #[arg(long, required = true)]
        claim: Vec<Claim>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodeAction {
    /// Length, dimension, weight distribution and classification.
    Info { code: String },
    /// Generator matrix of the dual code, in code file format.
    Dual { code: String },
    /// Even, doubly-even, self-dual, Type I, Type II.
    Classify { code: String },
}

#[derive(Args, Debug)]
pub struct GenusCode {
    #[arg(long, default_value_t = 1)]
    pub genus: usize,
    pub code: String,
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    /// Blocks, e.g. "1-4;5-8".
    #[arg(long)]
    pub blocks: String,
    /// One set per block, e.g. "1;5" or "1,2;".
    #[arg(long, default_value = "")]
    pub sets: String,
}

#[derive(Args, Debug)]
pub struct OptSplitArgs {
    #[arg(long)]
    pub blocks: Option<String>,
    #[arg(long)]
    pub sets: Option<String>,
}

#[derive(Args, Debug)]
pub struct Inputs {
    /// Polynomial files (canonical text or JSON).
    #[arg(long, num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    /// Reject variables outside this genus.
    #[arg(long)]
    pub genus: Option<usize>,
}

/// Result of one command before formatting.
struct Output {
    text: String,
    json: serde_json::Value,
    mismatch: bool,
}

impl Output {
    fn new<T: Serialize>(text: impl Into<String>, value: T) -> Result<Self> {
        Ok(Output {
            text: text.into(),
            json: serde_json::to_value(value)?,
            mismatch: false,
        })
    }

    fn poly(p: &MPoly) -> Result<Self> {
        Output::new(p.to_string(), json!({ "polynomial": p.to_string(), "terms": p }))
    }
}

fn partition(n: usize, blocks: &str, sets: &str) -> Result<BlockPartition> {
    let blocks = parse_blocks(blocks)?;
    let sets = if sets.trim().is_empty() {
        vec![Vec::new(); blocks.len()]
    } else {
        sets.split(';').map(parse_set).collect::<Result<Vec<_>>>()?
    };
    Ok(BlockPartition::new(n, blocks, sets)?)
}

fn verdict_text(v: &DesignVerdict) -> String {
    match (v.is_design, v.lambda) {
        (true, Some(l)) => format!("design, lambda = {l}, {} blocks", v.blocks),
        (true, None) => format!("design, {} blocks", v.blocks),
        (false, _) => format!("not a design ({} blocks){}", v.blocks, v.note.as_ref().map(|n| format!(": {n}")).unwrap_or_default()),
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Code { action } => match action {
            CodeAction::Info { code } => {
                let c = resolve_code(code)?;
                let dist = c.code.weight_distribution();
                let class = c.code.classify();
                let text = format!(
                    "{}: n = {}, k = {}, minimum weight {}\nweight distribution {:?}\n{:?}",
                    c.name,
                    c.code.len(),
                    c.code.dim(),
                    c.code.minimum_weight().map_or("-".into(), |d| d.to_string()),
                    dist,
                    class
                );
                Output::new(
                    text,
                    json!({
                        "name": c.name, "n": c.code.len(), "k": c.code.dim(),
                        "minimum_weight": c.code.minimum_weight(), "weight_distribution": dist, "class": class,
                    }),
                )
            }
            CodeAction::Dual { code } => {
                let dual = resolve_code(code)?.code.dual();
                let text = write_code(&dual);
                Output::new(text.trim_end(), json!({ "code": text }))
            }
            CodeAction::Classify { code } => {
                let class = resolve_code(code)?.code.classify();
                let text = format!(
                    "even {}\ndoubly-even {}\nself-dual {}\nType I {}\nType II {}",
                    class.is_even,
                    class.is_doubly_even,
                    class.is_self_dual,
                    class.is_type1(),
                    class.is_type2
                );
                Output::new(text, json!({ "class": class, "type1": class.is_type1() }))
            }
        },
        Command::We(base) => Output::poly(&weight_enumerator(&resolve_code(&base.code)?.code, base.genus)?),
        Command::Jacobi { base, set } => {
            Output::poly(&jacobi(&resolve_code(&base.code)?.code, &parse_set(set)?, base.genus)?)
        }
        Command::SplitJacobi { base, split } => {
            let c = resolve_code(&base.code)?.code;
            let part = partition(c.len(), &split.blocks, &split.sets)?;
            Output::poly(&split_jacobi(&c, &part, base.genus)?)
        }
        Command::Macwilliams {
            base,
            set,
            split,
            split_args,
            check,
        } => {
            let c = resolve_code(&base.code)?.code;
            let g = base.genus;
            let (transformed, direct) = if *split {
                let blocks = split_args
                    .blocks
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--split needs --blocks".into()))?;
                let part = partition(c.len(), blocks, split_args.sets.as_deref().unwrap_or(""))?;
                let t = split_macwilliams(&split_jacobi(&c, &part, g)?, g, part.ell(), c.dim())?;
                let d = if *check { Some(split_jacobi(&c.dual(), &part, g)?) } else { None };
                (t, d)
            } else {
                let set = parse_set(set)?;
                let t = macwilliams(&jacobi(&c, &set, g)?, g, c.dim())?;
                let d = if *check { Some(jacobi(&c.dual(), &set, g)?) } else { None };
                (t, d)
            };
            match direct {
                None => Output::poly(&transformed),
                Some(d) => {
                    let ok = d == transformed;
                    let text = if ok {
                        format!("PASS\n{transformed}")
                    } else {
                        format!("FAIL\ntransform: {transformed}\ndual:      {d}")
                    };
                    let mut out = Output::new(
                        text,
                        json!({ "pass": ok, "transform": transformed.to_string(), "dual": d.to_string() }),
                    )?;
                    out.mismatch = !ok;
                    Ok(out)
                }
            }
        }
        Command::Polarize {
            genus,
            block,
            ell,
            blocks,
            times,
            input,
        } => {
            let path = std::path::Path::new(input);
            let poly = if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.to_path_buf(),
                    source,
                })?;
                match parse_code(&text) {
                    Ok(code) => source_poly(&code, *genus, blocks.as_deref())?,
                    Err(_) => {
                        let sizes = vec![1; ell.unwrap_or(1)];
                        read_poly(path, Some(&GenusContext::new(*genus, sizes)?))?
                    }
                }
            } else {
                source_poly(&resolve_code(input)?.code, *genus, blocks.as_deref())?
            };
            let mut p = poly;
            for _ in 0..*times {
                p = match (block, ell) {
                    (Some(k), Some(l)) => {
                        let v = block_degree(&p, *k);
                        polarize_split(&p, *genus, *l, *k, v)?
                    }
                    _ => polarize(&p, *genus),
                };
            }
            Output::poly(&p)
        }
        Command::DesignCheck {
            t,
            weight,
            profile,
            partition: part,
            code,
        } => {
            let c = resolve_code(code)?.code;
            let v = match (weight, profile, part) {
                (Some(k), None, None) => is_t_design(&supports_of_weight(&c, *k), *t),
                (None, Some(prof), Some(part)) => {
                    let p = partition(c.len(), part, "")?;
                    let k = parse_set(prof)?;
                    is_generalized_t_design(&supports_of_profile(&c, &p, &k), *t)
                }
                _ => return Err(CliError::Usage("give --weight, or --profile with --partition".into())),
            };
            let mut out = Output::new(verdict_text(&v), &v)?;
            out.mismatch = !v.is_design;
            Ok(out)
        }
        Command::Homogeneous { t, partition: part, code } => {
            let c = resolve_code(code)?.code;
            let r = match part {
                Some(p) => is_ell_t_homogeneous(&c, &partition(c.len(), p, "")?, *t),
                None => is_t_homogeneous(&c, *t),
            };
            let mut text = format!("{}-homogeneous: {}", t, r.holds);
            for (class, v) in &r.classes {
                text.push_str(&format!("\n  {class:?}: {}", verdict_text(v)));
            }
            let mut out = Output::new(text, &r)?;
            out.mismatch = !r.holds;
            Ok(out)
        }
        Command::Group { genus, .. } => {
            let group = genus_group(*genus)?;
            Output::new(
                group.order().to_string(),
                json!({ "genus": genus, "order": group.order(), "generators": group.generators().len() }),
            )
        }
        Command::Molien {
            genus,
            max_degree,
            closed_form_check,
        } => {
            let series = molien(&genus_group(*genus)?, *max_degree)?;
            let coeffs: Vec<String> = series.coeffs.iter().map(|c| c.to_string()).collect();
            let nonzero: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| c.as_str() != "0")
                .map(|(d, c)| format!("{c} t^{d}"))
                .collect();
            let mut text = nonzero.join(" + ");
            let mut value = json!({ "genus": genus, "max_degree": max_degree, "coefficients": coeffs });
            let mut mismatch = false;
            if *closed_form_check {
                let (num, den) = match genus {
                    1 => (&GENUS1_MOLIEN_NUMERATOR[..], product_of_one_minus(&[(8, 2), (24, 2)])),
                    2 => (&GENUS2_MOLIEN_NUMERATOR[..], product_of_one_minus(&[(8, 2), (24, 4), (40, 2)])),
                    _ => return Err(CliError::Usage("closed forms are known for genus 1 and 2".into())),
                };
                let mut dense = vec![0; 8 * (num.len() - 1) + 1];
                for (k, &c) in num.iter().enumerate() {
                    dense[8 * k] = c;
                }
                let check = molien_closed_form_check(&series, &dense, &den)?;
                mismatch = !check.matches;
                text.push_str(&format!(
                    "\nclosed form through t^{}: {}",
                    check.compared_to,
                    if check.matches { "PASS" } else { "FAIL" }
                ));
                if let Some((d, got, want)) = &check.mismatch {
                    text.push_str(&format!(" (t^{d}: computed {got}, closed form {want})"));
                }
                value["closed_form"] = serde_json::to_value(&check)?;
            }
            let mut out = Output::new(text, value)?;
            out.mismatch = mismatch;
            Ok(out)
        }
        Command::Span(inputs) => {
            let polys = read_inputs(inputs)?;
            let r = span_dimension(&polys);
            Output::new(format!("{} ({})", r.rank, r.method), &r)
        }
        Command::Independence { inputs, trials } => {
            let polys = read_inputs(inputs)?;
            let r = algebraic_independence(&polys, *trials, cli.seed)?;
            Output::new(format!("rank {} of {}: {}", r.rank, r.polynomials, r.verdict), &r)
        }
        Command::Reproduce { claim } => {
            let cache = DiskCache::from_env();
            let harness = Harness::new(&cache, cli.seed);
            let mut text = Vec::new();
            let mut outcomes = Vec::new();
            for &c in claim {
                let o = harness.run(c)?;
                text.push(format!("{} {}", o.claim, if o.pass { "PASS" } else { "FAIL" }));
                text.extend(o.details.iter().map(|d| format!("  {d}")));
                outcomes.push(o);
            }
            let mut out = Output::new(text.join("\n"), &outcomes)?;
            out.mismatch = outcomes.iter().any(|o| !o.pass);
            Ok(out)
        }
    }
}

fn source_poly(code: &jacobi_core::gf2::BinaryCode, g: usize, blocks: Option<&str>) -> Result<MPoly> {
    match blocks {
        Some(b) => Ok(split_weight_enumerator(code, &partition(code.len(), b, "")?, g)?),
        None => Ok(weight_enumerator(code, g)?),
    }
}

/// Total degree of block `k` in the first term (every term agrees for enumerators).
fn block_degree(p: &MPoly, k: usize) -> usize {
    p.terms()
        .next()
        .map_or(0, |(m, _)| m.degree_where(|v| usize::from(v.block) == k) as usize)
}

fn read_inputs(inputs: &Inputs) -> Result<Vec<MPoly>> {
    let ctx = inputs.genus.map(|g| GenusContext::new(g, vec![1])).transpose()?;
    inputs.inputs.iter().map(|p| read_poly(p, ctx.as_ref())).collect()
}

fn exit_code(err: &CliError) -> i32 {
    use jacobi_core::Error as E;
    match err {
        CliError::Usage(_) | CliError::Io { .. } | CliError::Json(_) => 2,
        CliError::Core(
            E::InvalidInput(_)
            | E::OutOfRange { .. }
            | E::UnknownCode(_)
            | E::Infeasible { .. }
            | E::Parse(_)
            | E::MissingVariable(_),
        ) => 2,
        CliError::Core(_) => 1,
    }
}

/// Parses `args`, runs the command and writes to `stdout`/`stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // Fails only if a pool already exists, e.g. on a second call in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(out) => {
            let written = if cli.json {
                let command = format!("{:?}", cli.command).split([' ', '(', '{']).next().unwrap_or("").to_lowercase();
                to_json(&command, &out.json).map(|s| writeln!(stdout, "{s}"))
            } else {
                Ok(writeln!(stdout, "{}", out.text))
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            i32::from(out.mismatch)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
