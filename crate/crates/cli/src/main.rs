//! `realcert`: reductions, exact verification, search and rendering from
//! the command line.
//!
//! Exit codes: 0 pass, 1 fail, 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use realcert::arrangements::{
    circle_cell_labels, max_labels, topes_from_wiring, validate_great_circle_realization,
    wiring_faces, Eps, FaceSet,
};
use realcert::geometry::krupp_test;
use realcert::io::{
    read_circles, read_disk_map, read_graph, read_json, read_matroid, read_points, read_poset,
    read_wiring, to_json, write_json, write_text, DiskMapDoc,
};
use realcert::reductions::{
    arrangement_to_poset, assemble_circle_order, matroid_to_graph, realize_disks_from_circles,
    realize_lines_from_points, LineRealization,
};
use realcert::render::{render_circles, render_line_realization, render_wiring};
use realcert::search::{
    constructible_coordinatization, search_circle_order, search_line_realization, stretch_wiring,
    Coordinatization, SearchOutcome, SearchParams, SearchStatus,
};
use realcert::verifiers::{
    verify_circle_order, verify_line_realization, verify_matroid_realization, Report,
};

#[derive(Parser)]
#[command(
    name = "realcert",
    version,
    about = "Reductions, exact verifiers and realization search"
)]
struct Cli {
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a reduction instance and write its certificate.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        input: PathBuf,
        output: PathBuf,
    },
    /// Map a geometric realization through a reduction.
    Realize {
        #[arg(value_enum)]
        kind: RealizeKind,
        /// Matroid (lines) or wiring diagram (disks).
        combinatorial: PathBuf,
        /// Points (lines) or circles (disks).
        geometric: PathBuf,
        output: PathBuf,
    },
    /// Check a geometric object against a combinatorial one.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        combinatorial: PathBuf,
        geometric: PathBuf,
    },
    /// Search for a realization.
    Search {
        #[arg(value_enum)]
        kind: SearchKind,
        input: PathBuf,
        /// Write the outcome JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Combinatorial analysis of arrangements.
    Analyze {
        #[arg(value_enum)]
        kind: AnalyzeKind,
        /// Input file, or `n` for max-labels.
        input: String,
    },
    /// Write an SVG picture.
    Render {
        #[arg(value_enum)]
        kind: RenderKind,
        input: PathBuf,
        output: PathBuf,
    },
}

#[derive(Args)]
struct Budget {
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 5000)]
    iters: usize,
    #[arg(long, default_value_t = 1e-2)]
    margin: f64,
    #[arg(long = "denom-bound", default_value_t = 1_000_000)]
    denom_bound: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    MatroidToGraph,
    ArrangementToPoset,
}

#[derive(Clone, Copy, ValueEnum)]
enum RealizeKind {
    Lines,
    Disks,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Matroid,
    Lines,
    CircleOrder,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    CircleOrder,
    Lines,
    Stretch,
    Coordinatize,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeKind {
    Faces,
    Topes,
    Cells,
    MaxLabels,
    Krupp,
    GreatCircle,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    Wiring,
    Circles,
    Lines2dDual,
}

struct Out {
    format: Format,
}

impl Out {
    /// JSON document or text lines.
    fn emit(&self, doc: &Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => print!("{}", to_json(doc)),
            Format::Text => {
                let t = text();
                if t.ends_with('\n') {
                    print!("{t}");
                } else {
                    println!("{t}");
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match format {
                Format::Json => eprint!(
                    "{}",
                    to_json(&json!({"error": "input", "message": format!("{e:#}")}))
                ),
                Format::Text => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring thread pool")?;
    }
    let out = Out { format: cli.format };
    match cli.cmd {
        Cmd::Reduce {
            kind,
            input,
            output,
        } => reduce(&out, kind, &input, &output),
        Cmd::Realize {
            kind,
            combinatorial,
            geometric,
            output,
        } => realize(&out, kind, &combinatorial, &geometric, &output),
        Cmd::Verify {
            kind,
            combinatorial,
            geometric,
        } => verify(&out, kind, &combinatorial, &geometric),
        Cmd::Search {
            kind,
            input,
            out: dest,
            budget,
        } => {
            let params = SearchParams {
                restarts: budget.restarts,
                max_iters: budget.iters,
                margin: budget.margin,
                rounding_denominator_bound: budget.denom_bound,
                seed: cli.seed,
                ..SearchParams::default()
            };
            params.validate()?;
            search(&out, kind, &input, dest.as_deref(), &params)
        }
        Cmd::Analyze { kind, input } => analyze(&out, kind, &input),
        Cmd::Render {
            kind,
            input,
            output,
        } => render(kind, &input, &output),
    }
}

fn reduce(out: &Out, kind: ReduceKind, input: &Path, output: &Path) -> Result<u8> {
    match kind {
        ReduceKind::MatroidToGraph => {
            let m = read_matroid(input)?;
            let red = matroid_to_graph(&m)?;
            write_json(output, &red)?;
            let (v, e) = (red.graph.n(), red.graph.edge_count());
            out.emit(&json!({"vertices": v, "edges": e}), || {
                format!("graph: {v} vertices, {e} edges")
            });
        }
        ReduceKind::ArrangementToPoset => {
            let w = read_wiring(input)?;
            let red = arrangement_to_poset(&w)?;
            write_json(output, &red)?;
            let (x, r) = (red.poset.len(), red.poset.relation_count());
            out.emit(&json!({"elements": x, "relations": r}), || {
                format!("poset: {x} elements, {r} relations")
            });
        }
    }
    Ok(0)
}

fn realize(out: &Out, kind: RealizeKind, comb: &Path, geom: &Path, output: &Path) -> Result<u8> {
    match kind {
        RealizeKind::Lines => {
            let m = read_matroid(comb)?;
            let pts = read_points(geom)?;
            let r = realize_lines_from_points(&m, &pts)?;
            write_json(output, &r)?;
            out.emit(&json!({"lines": r.lines.len()}), || {
                format!("{} lines written", r.lines.len())
            });
        }
        RealizeKind::Disks => {
            let w = read_wiring(comb)?;
            let circles = read_circles(geom)?;
            let red = arrangement_to_poset(&w)?;
            let cells = realize_disks_from_circles(&circles)?;
            let disks = assemble_circle_order(&red, &circles, &cells)?;
            let n = disks.len();
            write_json(output, &DiskMapDoc { disks })?;
            out.emit(&json!({"disks": n}), || format!("{n} disks written"));
        }
    }
    Ok(0)
}

fn report<V: serde::Serialize + std::fmt::Debug>(out: &Out, r: &Report<V>) -> u8 {
    out.emit(&serde_json::to_value(r).expect("report serializes"), || {
        let mut s = String::from(if r.passed { "PASS\n" } else { "FAIL\n" });
        for v in &r.violations {
            s.push_str(&format!("  {v:?}\n"));
        }
        s
    });
    u8::from(!r.passed)
}

fn verify(out: &Out, kind: VerifyKind, comb: &Path, geom: &Path) -> Result<u8> {
    Ok(match kind {
        VerifyKind::Matroid => {
            let m = read_matroid(comb)?;
            report(out, &verify_matroid_realization(&m, &read_points(geom)?))
        }
        VerifyKind::Lines => {
            let g = read_graph(comb)?;
            let lines = realcert::io::read_lines(geom)?;
            report(out, &verify_line_realization(&g, &lines))
        }
        VerifyKind::CircleOrder => {
            let p = read_poset(comb)?;
            let disks = read_disk_map(geom)?;
            report(out, &verify_circle_order(&p, &disks)?)
        }
    })
}

fn outcome<W: serde::Serialize>(
    out: &Out,
    o: &SearchOutcome<W>,
    dest: Option<&Path>,
) -> Result<u8> {
    if let Some(d) = dest {
        write_json(d, o)?;
    }
    out.emit(&serde_json::to_value(o)?, || {
        let best = o.trace.iter().cloned().fold(f64::INFINITY, f64::min);
        let at = o.restart.map_or("none".to_string(), |r| r.to_string());
        format!(
            "{:?} (restart {at}, best penalty {best:e}, {} restarts)",
            o.status,
            o.trace.len()
        )
    });
    Ok(u8::from(o.status != SearchStatus::FoundVerified))
}

fn search(
    out: &Out,
    kind: SearchKind,
    input: &Path,
    dest: Option<&Path>,
    params: &SearchParams,
) -> Result<u8> {
    match kind {
        SearchKind::CircleOrder => {
            outcome(out, &search_circle_order(&read_poset(input)?, params), dest)
        }
        SearchKind::Lines => outcome(
            out,
            &search_line_realization(&read_graph(input)?, params),
            dest,
        ),
        SearchKind::Stretch => outcome(out, &stretch_wiring(&read_wiring(input)?, params), dest),
        SearchKind::Coordinatize => {
            let m = read_matroid(input)?;
            let c = constructible_coordinatization(&m)?;
            if let Some(d) = dest {
                write_json(d, &c)?;
            }
            out.emit(&serde_json::to_value(&c)?, || match &c {
                Coordinatization::Realizable { points, .. } => {
                    let mut s = String::from("realizable\n");
                    for (i, p) in points.iter().enumerate() {
                        s.push_str(&format!("  {i}: ({}, {})\n", p.x, p.y));
                    }
                    s
                }
                Coordinatization::Unrealizable { conflict, .. } => {
                    format!("unrealizable: {conflict:?}")
                }
                Coordinatization::Undecided { placed, .. } => {
                    format!("undecided after placing {placed:?}")
                }
            });
            Ok(u8::from(!matches!(c, Coordinatization::Realizable { .. })))
        }
    }
}

fn faces(out: &Out, f: &FaceSet) {
    out.emit(&serde_json::to_value(f).expect("faces serialize"), || {
        f.iter().map(|v| format!("{v}\n")).collect()
    });
}

fn analyze(out: &Out, kind: AnalyzeKind, input: &str) -> Result<u8> {
    let path = Path::new(input);
    match kind {
        AnalyzeKind::Faces => faces(out, &wiring_faces(&read_wiring(path)?)?),
        AnalyzeKind::Topes => faces(out, &topes_from_wiring(&read_wiring(path)?)?),
        AnalyzeKind::Cells => {
            let l = circle_cell_labels(&read_circles(path)?, Eps::Auto)?;
            faces(out, &l.labels);
        }
        AnalyzeKind::MaxLabels => {
            let n: usize = input
                .parse()
                .context("max-labels expects a positive integer")?;
            if n == 0 {
                bail!("max-labels expects a positive integer");
            }
            let m = max_labels(n);
            out.emit(&json!({"n": n, "max_labels": m}), || m.to_string());
        }
        AnalyzeKind::Krupp => {
            let c = read_circles(path)?;
            let [a, b, d] = c.as_slice() else {
                bail!("krupp expects exactly 3 disks, got {}", c.len());
            };
            let k = krupp_test(a, b, d);
            out.emit(&json!({"krupp": k}), || k.to_string());
            return Ok(u8::from(!k));
        }
        AnalyzeKind::GreatCircle => {
            let r = validate_great_circle_realization(&read_circles(path)?);
            let ok = r.is_valid();
            out.emit(&json!({"valid": ok, "issues": r.issues}), || {
                if ok {
                    "valid".to_string()
                } else {
                    format!("invalid\n{r}")
                }
            });
            return Ok(u8::from(!ok));
        }
    }
    Ok(0)
}

fn render(kind: RenderKind, input: &Path, output: &Path) -> Result<u8> {
    let svg = match kind {
        RenderKind::Wiring => render_wiring(&read_wiring(input)?),
        RenderKind::Circles => render_circles(&read_circles(input)?)?,
        RenderKind::Lines2dDual => render_line_realization(&read_json::<LineRealization>(input)?),
    };
    write_text(output, &svg)?;
    Ok(0)
}
