//! Command-line front end. [`run`] takes the arguments and output streams
//! so it can be driven from tests; errors become one line on `err` of the
//! form `error: <tag>: <message>` and a nonzero exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::analysis::classify_group;
use crate::classification::{
    census, census_table, compare_with_atlas, exhaustive_search, read_atlas, CensusMode, Dedup,
    DEFAULT_SEARCH_BUDGET,
};
use crate::coset::realize;
use crate::error::{Error, Result};
use crate::families::{Built, FamilySpec};
use crate::group::{comix, mix};
use crate::presentation::{parse_presentation, Presentation};

#[derive(Parser, Debug)]
#[command(name = "tight-chiral", version, about = "Rotation groups of tight chiral polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a presentation given as a file or inline text.
    Analyze {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Realize a presentation and print its order and generator orders.
    Realize {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Print the presentation of a named family member, e.g.
    /// `family odd-atomic m=3 beta=2 k=1`.
    Family {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Mix two presentations and check |mix| * |comix| = |G1| * |G2|.
    Mix {
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Admissible types with at most the given number of flags.
    Census {
        #[arg(long)]
        max_flags: u64,
        /// Realize and classify every witness.
        #[arg(long)]
        verify: bool,
        /// Compare the type set with a CSV of types (header `p,q`).
        #[arg(long)]
        atlas: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search over the parameters of one type.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Largest allowed p*q.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, default_value = "none")]
        dedup: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compare the predicate census with a CSV of types (header `p,q`).
    AtlasCompare {
        file: PathBuf,
        #[arg(long, default_value_t = 2000)]
        max_flags: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.kind().as_str().unwrap_or("invalid arguments");
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "error: usage: {msg}: {first}");
            return 1;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let one_line = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {}: {one_line}", e.tag());
            e.exit_code()
        }
    }
}

/// Reads `input` as a file when such a file exists, otherwise as inline text.
fn load_presentation(input: &str) -> Result<Presentation> {
    let path = Path::new(input);
    let text = if path.is_file() { fs::read_to_string(path)? } else { input.to_string() };
    parse_presentation(&text)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Analyze { input, json, max_cosets } => {
            let pres = load_presentation(&input)?;
            let g = realize(&pres, max_cosets.unwrap_or(pres.default_max_cosets()))?;
            let report = classify_group(&g);
            if json {
                emit_json(out, &report)
            } else {
                writeln!(out, "{report}")?;
                Ok(())
            }
        }
        Command::Realize { input, json, max_cosets } => {
            let pres = load_presentation(&input)?;
            let g = realize(&pres, max_cosets.unwrap_or(pres.default_max_cosets()))?;
            let (p, q) = g.gen_orders();
            if json {
                #[derive(Serialize)]
                struct Out {
                    order: usize,
                    generator_orders: [usize; 2],
                }
                emit_json(out, &Out { order: g.order(), generator_orders: [p, q] })
            } else {
                writeln!(out, "order {}\ngenerator orders {p} {q}", g.order())?;
                Ok(())
            }
        }
        Command::Family { spec, json } => {
            let spec: FamilySpec = spec.join(" ").parse()?;
            let built = spec.build()?;
            if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    spec: &'a FamilySpec,
                    schlafli: (u64, u64),
                    built: &'a Built,
                }
                emit_json(out, &Out { spec: &spec, schlafli: spec.schlafli()?, built: &built })
            } else {
                writeln!(out, "# {spec}\n{built}")?;
                Ok(())
            }
        }
        Command::Mix { left, right, json } => {
            let (pa, pb) = (load_presentation(&left)?, load_presentation(&right)?);
            let ga = realize(&pa, pa.default_max_cosets())?;
            let gb = realize(&pb, pb.default_max_cosets())?;
            let m = mix(&ga, &gb);
            let c = comix(&pa, &pb);
            let gc = realize(&c, c.default_max_cosets())?;
            let holds = m.order() * gc.order() == ga.order() * gb.order();
            if json {
                #[derive(Serialize)]
                struct Out {
                    left_order: usize,
                    right_order: usize,
                    mix_order: usize,
                    comix_order: usize,
                    identity_holds: bool,
                }
                emit_json(
                    out,
                    &Out {
                        left_order: ga.order(),
                        right_order: gb.order(),
                        mix_order: m.order(),
                        comix_order: gc.order(),
                        identity_holds: holds,
                    },
                )
            } else {
                writeln!(out, "mix order {}", m.order())?;
                writeln!(out, "comix order {}", gc.order())?;
                writeln!(
                    out,
                    "identity {} * {} = {} * {}: {}",
                    m.order(),
                    gc.order(),
                    ga.order(),
                    gb.order(),
                    if holds { "holds" } else { "fails" }
                )?;
                Ok(())
            }
        }
        Command::Census { max_flags, verify, atlas, json } => {
            let mode = if verify { CensusMode::Verified } else { CensusMode::Predicate };
            let entries = census(max_flags, mode)?;
            let comparison = match atlas {
                Some(path) => Some(compare_with_atlas(&entries, &read_atlas(fs::File::open(path)?)?)),
                None => None,
            };
            if json {
                #[derive(Serialize)]
                struct Out<'a, E: Serialize, C: Serialize> {
                    entries: &'a [E],
                    #[serde(skip_serializing_if = "Option::is_none")]
                    atlas: Option<C>,
                }
                return emit_json(out, &Out { entries: &entries, atlas: comparison });
            }
            write!(out, "{}", census_table(&entries))?;
            writeln!(out)?;
            for e in &entries {
                let [p, q] = e.schlafli;
                let status = match (verify, e.verified) {
                    (false, _) => "-",
                    (true, true) => "verified",
                    (true, false) => "FAILED",
                };
                writeln!(out, "{{{p}, {q}}}  {status}  {}", e.witness)?;
            }
            writeln!(out, "types {}", entries.len())?;
            if verify {
                writeln!(out, "verified {}", entries.iter().filter(|e| e.verified).count())?;
            }
            if let Some(c) = comparison {
                write!(out, "{c}")?;
            }
            Ok(())
        }
        Command::Search { p, q, budget, dedup, jobs, json } => {
            let dedup: Dedup = dedup.parse()?;
            if jobs == 0 {
                return Err(Error::InvalidInput("jobs must be at least 1".into()));
            }
            let result = exhaustive_search(p, q, dedup, budget, jobs)?;
            if json {
                emit_json(out, &result)
            } else {
                write!(out, "{result}")?;
                Ok(())
            }
        }
        Command::AtlasCompare { file, max_flags, json } => {
            let entries = census(max_flags, CensusMode::Predicate)?;
            let cmp = compare_with_atlas(&entries, &read_atlas(fs::File::open(file)?)?);
            if json {
                emit_json(out, &cmp)
            } else {
                write!(out, "{cmp}")?;
                Ok(())
            }
        }
    }
}
