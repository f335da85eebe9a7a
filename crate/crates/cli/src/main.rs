use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gentle_core::derived::{DerivedSubcat, Disk, GradedArc, ShiftClass};
use gentle_core::linalg::rep::global_dimension;
use gentle_core::linalg::Field;
use gentle_core::module_dct::{
    ar_quiver_module, classify_drf_hereditary, classify_weakly_drf, search_dct_module, DrfSet, IndecCatalog,
};
use gentle_core::render::{surface_svg, surface_tikz, Diagram};
use gentle_core::string::find_obstruction_vertex;
use gentle_core::surface::{algebra_from_dissection, disk_model, dual_dissection, Dissection};
use gentle_core::{BoundQuiverAlgebra, Error};

#[derive(Parser)]
#[command(name = "gentle", version, about = "Gentle algebras, surface models and d-cluster tilting searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Prime field characteristic
    #[arg(long, default_value_t = 2, global = true)]
    field: u32,
    /// Worker threads for searches (0 = all cores)
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Longest string enumerated when building module catalogs
    #[arg(long, default_value_t = 64, global = true)]
    max_len: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Tikz,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Gentleness report, shape, radical square zero and global dimension
    Check { quiver: PathBuf },
    /// Values of d with a d-cluster tilting module, and an obstruction vertex if any
    Classify { quiver: PathBuf },
    /// d-cluster tilting subcategories of the module category
    DctMod {
        quiver: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Auslander-Reiten quiver of the module category
    ArMod {
        quiver: PathBuf,
        /// Box the first d-cluster tilting subcategory
        #[arg(long)]
        d: Option<usize>,
    },
    /// Dissections and their algebras
    #[command(subcommand)]
    Model(ModelCmd),
    /// Derived category of a dissected disk
    #[command(subcommand)]
    Der(DerCmd),
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Dissection of the disk whose algebra is KA_n/J^2
    BuildDisk {
        #[arg(long)]
        n: usize,
    },
    /// Algebra of a dissection
    Algebra { dissection: PathBuf },
    /// Dual dissection
    Dual { dissection: PathBuf },
    /// Drawing of a dissection
    Render { dissection: PathBuf },
}

#[derive(Args)]
struct DiskArg {
    /// Dissection file of a disk
    dissection: Option<PathBuf>,
    /// Use the disk with n edges whose algebra is KA_n/J^2
    #[arg(long, conflicts_with = "dissection")]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum DerCmd {
    /// dim Hom(X, Y[i])
    Hom {
        #[command(flatten)]
        disk: DiskArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        i: i32,
    },
    /// Translate and triangle ending in X
    Tau {
        #[command(flatten)]
        disk: DiskArg,
        #[arg(long)]
        x: String,
    },
    /// Check a subcategory, given by arcs or generated from a minimal arc
    Dct {
        #[command(flatten)]
        disk: DiskArg,
        #[arg(long)]
        d: usize,
        /// Comma separated arc literals
        #[arg(long, conflicts_with = "from")]
        arcs: Option<String>,
        /// Minimal arc to walk the boundary from
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        window: Option<i32>,
    },
    /// All d-cluster tilting subcategories
    Search {
        #[command(flatten)]
        disk: DiskArg,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        window: Option<i32>,
    },
    /// Auslander-Reiten quiver in a grading window
    Ar {
        #[command(flatten)]
        disk: DiskArg,
        #[arg(long, default_value_t = 2)]
        window: i32,
    },
    /// AR quiver with the first d-cluster tilting subcategory boxed
    Render {
        #[command(flatten)]
        disk: DiskArg,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        window: i32,
    },
}

/// A command failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BandDetected | Error::Truncated(_) | Error::WindowTooSmall { .. } | Error::Internal(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Output of a command: what to print and whether the verdict was negative.
struct Outcome {
    text: String,
    negative: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, negative: false }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global().ok();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(if out.negative { 1 } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let field = Field::new(cli.field)?;
    match &cli.command {
        Command::Check { quiver } => check(cli, &read_quiver(quiver)?, field),
        Command::Classify { quiver } => classify(cli, &read_quiver(quiver)?),
        Command::DctMod { quiver, d } => dct_mod(cli, &read_quiver(quiver)?, field, *d),
        Command::ArMod { quiver, d } => ar_mod(cli, &read_quiver(quiver)?, field, *d),
        Command::Model(m) => model(cli, m),
        Command::Der(d) => der(cli, d, field),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_quiver(path: &Path) -> Result<BoundQuiverAlgebra, Failure> {
    Ok(BoundQuiverAlgebra::parse(&read(path)?)?)
}

fn read_dissection(path: &Path) -> Result<Dissection, Failure> {
    Ok(Dissection::parse(&read(path)?)?)
}

fn unsupported(format: Format) -> Failure {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    input_error(format!("format `{name}` is not available for this command"))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn check(cli: &Cli, alg: &BoundQuiverAlgebra, field: Field) -> CmdResult {
    let report = alg.is_gentle();
    let gldim = if alg.is_admissible() {
        Some(global_dimension(alg, field, 2 * alg.vertex_count() + 2)?)
    } else {
        None
    };
    let shape = alg.shape();
    let rad2 = alg.is_radical_square_zero();
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "gentle": report.gentle,
            "violations": report.violations,
            "shape": shape,
            "radical_square_zero": rad2,
            "global_dimension": gldim,
        })),
        Format::Text => {
            let mut s = format!("gentle: {}\n", if report.gentle { "yes" } else { "no" });
            for v in &report.violations {
                s += &format!("  clause ({}): {} [{}]\n", v.clause, v.message, v.witnesses.join(", "));
            }
            s += &format!("shape: {shape}\nradical square zero: {}\n", if rad2 { "yes" } else { "no" });
            s += &format!("global dimension: {}\n", gldim.map_or("n/a".to_string(), |g| g.to_string()));
            s
        }
        f => return Err(unsupported(f)),
    };
    Ok(Outcome { text, negative: !report.gentle })
}

fn classify(cli: &Cli, alg: &BoundQuiverAlgebra) -> CmdResult {
    let weak = classify_weakly_drf(alg)?;
    let hereditary = classify_drf_hereditary(alg)?;
    let obstruction = find_obstruction_vertex(alg)?;
    let field_case = weak == DrfSet::All;
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "weakly_d_representation_finite": weak,
            "d_representation_finite_d_hereditary": hereditary,
            "obstruction": obstruction.as_ref().map(|o| o.view(alg)),
            "derived_family": field_case.then_some("add{K[di]}"),
        })),
        Format::Text => {
            let mut s = format!("weakly d-representation-finite for d in: {weak}\n");
            if field_case {
                s += "derived d-cluster tilting: add{K[di]} for every d\n";
            }
            s += &format!(
                "d-representation-finite d-hereditary: {}\n",
                hereditary.map_or("none".to_string(), |d| format!("d = {d}"))
            );
            match &obstruction {
                Some(o) => {
                    let v = o.view(alg);
                    s += &format!(
                        "obstruction at vertex {}: 0 -> M({}) -> M({}) + M({}) -> M({}) -> 0\n",
                        v.vertex, v.projective, v.middle[0], v.middle[1], v.injective
                    );
                }
                None => s += "obstruction: none\n",
            }
            s
        }
        f => return Err(unsupported(f)),
    };
    Ok(Outcome::ok(text))
}

fn catalog(cli: &Cli, alg: &BoundQuiverAlgebra, field: Field, depth: usize) -> Result<IndecCatalog, Failure> {
    Ok(IndecCatalog::new(alg, field, cli.max_len, depth.max(1))?)
}

fn dct_mod(cli: &Cli, alg: &BoundQuiverAlgebra, field: Field, d: usize) -> CmdResult {
    let cat = catalog(cli, alg, field, d)?;
    let found = search_dct_module(&cat, d)?;
    let labelled: Vec<Vec<String>> =
        found.iter().map(|u| u.members().iter().map(|&i| cat.label(i)).collect()).collect();
    let text = match cli.format {
        Format::Json => pretty(&json!({ "d": d, "subcategories": labelled })),
        Format::Text => {
            let mut s = format!("{} {d}-cluster tilting subcategories\n", labelled.len());
            for u in &labelled {
                s += &format!("  {{{}}}\n", u.join(", "));
            }
            s
        }
        f => return Err(unsupported(f)),
    };
    Ok(Outcome { text, negative: found.is_empty() })
}

fn ar_mod(cli: &Cli, alg: &BoundQuiverAlgebra, field: Field, d: Option<usize>) -> CmdResult {
    let cat = catalog(cli, alg, field, d.unwrap_or(1))?;
    let q = ar_quiver_module(&cat)?;
    let members = match d {
        Some(d) => search_dct_module(&cat, d)?.into_iter().next(),
        None => None,
    };
    let diagram = Diagram::from_module(&cat, &q, members.as_ref());
    emit_diagram(cli, &diagram)
}

fn emit_diagram(cli: &Cli, diagram: &Diagram) -> CmdResult {
    let text = match cli.format {
        Format::Dot => diagram.to_dot(),
        Format::Tikz => diagram.to_tikz(),
        Format::Json => pretty(&json!({
            "nodes": diagram.nodes.iter().map(|n| json!({"label": n.label, "boxed": n.boxed})).collect::<Vec<_>>(),
            "arrows": diagram.arrows,
            "tau": diagram.tau,
        })),
        Format::Text => {
            let label = |i: usize| diagram.nodes[i].label.as_str();
            let mut s = String::new();
            for n in &diagram.nodes {
                s += &format!("{}{}\n", n.label, if n.boxed { "  [member]" } else { "" });
            }
            for &(a, b) in &diagram.arrows {
                s += &format!("{} -> {}\n", label(a), label(b));
            }
            for &(x, tx) in &diagram.tau {
                s += &format!("tau {} = {}\n", label(x), label(tx));
            }
            s
        }
        f => return Err(unsupported(f)),
    };
    Ok(Outcome::ok(text))
}

fn model(cli: &Cli, cmd: &ModelCmd) -> CmdResult {
    let surface = |diss: &Dissection| -> CmdResult {
        let text = match cli.format {
            Format::Text => diss.serialize(),
            Format::Json => pretty(&json!({ "dissection": diss.serialize(), "summary": diss.summary() })),
            Format::Svg => surface_svg(diss),
            Format::Tikz => surface_tikz(diss),
            f => return Err(unsupported(f)),
        };
        Ok(Outcome::ok(text))
    };
    match cmd {
        ModelCmd::BuildDisk { n } => surface(&disk_model(*n)?),
        ModelCmd::Dual { dissection } => surface(&dual_dissection(&read_dissection(dissection)?)?),
        ModelCmd::Render { dissection } => {
            let diss = read_dissection(dissection)?;
            let text = match cli.format {
                Format::Text | Format::Svg => surface_svg(&diss),
                Format::Tikz => surface_tikz(&diss),
                f => return Err(unsupported(f)),
            };
            Ok(Outcome::ok(text))
        }
        ModelCmd::Algebra { dissection } => {
            let alg = algebra_from_dissection(&read_dissection(dissection)?)?;
            let text = match cli.format {
                Format::Text => alg.serialize(),
                Format::Json => pretty(&serde_json::to_value(&alg).expect("algebras serialize")),
                f => return Err(unsupported(f)),
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn load_disk(arg: &DiskArg) -> Result<Disk, Failure> {
    let diss = match (&arg.dissection, arg.n) {
        (Some(path), _) => read_dissection(path)?,
        (None, Some(n)) => disk_model(n)?,
        (None, None) => return Err(input_error("give a dissection file or --n")),
    };
    Ok(Disk::new(&diss)?)
}

fn arcs_json(arcs: &[GradedArc]) -> Value {
    arcs.iter().map(|a| a.to_string()).collect()
}

fn subcat_json(u: &DerivedSubcat) -> Value {
    json!({ "d": u.d, "arcs": arcs_json(&u.classes.iter().map(|c| c.arc).collect::<Vec<_>>()) })
}

fn subcat_text(u: &DerivedSubcat) -> String {
    let arcs: Vec<String> = u.classes.iter().map(|c| c.arc.to_string()).collect();
    format!("{{{}}} mod [{}]", arcs.join(", "), u.d)
}

fn der(cli: &Cli, cmd: &DerCmd, field: Field) -> CmdResult {
    let text_or_json = |text: String, value: Value| match cli.format {
        Format::Text => Ok(text),
        Format::Json => Ok(pretty(&value)),
        f => Err(unsupported(f)),
    };
    match cmd {
        DerCmd::Hom { disk, x, y, i } => {
            let k = load_disk(disk)?;
            let (x, y) = (k.parse_arc(x)?, k.parse_arc(y)?);
            let dim = k.hom_dim(&x, &y, *i);
            let text = text_or_json(
                format!("dim Hom({x}, {y}[{i}]) = {dim}\n"),
                json!({ "x": x, "y": y, "i": i, "dim": dim }),
            )?;
            Ok(Outcome::ok(text))
        }
        DerCmd::Tau { disk, x } => {
            let k = load_disk(disk)?;
            let x = k.parse_arc(x)?;
            let (tau, middle) = k.ar_triangle(&x)?;
            let complex = k.arc_to_complex(&x, field)?.to_text(k.algebra());
            let mids: Vec<String> = middle.iter().map(|m| m.to_string()).collect();
            let text = text_or_json(
                format!("tau {x} = {tau}\ntriangle: {tau} -> {} -> {x}\ncomplex of {x}:\n{complex}", if mids.is_empty() { "0".to_string() } else { mids.join(" + ") }),
                json!({ "arc": x, "tau": tau, "middle": arcs_json(&middle), "complex": complex }),
            )?;
            Ok(Outcome::ok(text))
        }
        DerCmd::Dct { disk, d, arcs, from, window } => {
            let k = load_disk(disk)?;
            let u = match (arcs, from) {
                (Some(list), _) => {
                    let parsed = split_arcs(list)
                        .into_iter()
                        .map(|a| k.parse_arc(&a).map(|a| ShiftClass::new(a, *d)))
                        .collect::<Result<Vec<_>, _>>()?;
                    DerivedSubcat::new(*d, parsed)
                }
                (None, Some(x)) => k.v_x_d(&k.parse_arc(x)?, *d)?,
                (None, None) => return Err(input_error("give --arcs or --from")),
            };
            let w = window.unwrap_or_else(|| k.default_window(*d));
            let witness = k.is_dct_derived(&u, w)?;
            let verdict = witness.is_none();
            let text = text_or_json(
                match witness {
                    None => format!("{} is {d}-cluster tilting\n", subcat_text(&u)),
                    Some(ref wit) => format!(
                        "{} is not {d}-cluster tilting: {}\n",
                        subcat_text(&u),
                        serde_json::to_string(wit).expect("witnesses serialize")
                    ),
                },
                json!({ "subcategory": subcat_json(&u), "window": w, "cluster_tilting": verdict, "witness": witness }),
            )?;
            Ok(Outcome { text, negative: !verdict })
        }
        DerCmd::Search { disk, d, window } => {
            let k = load_disk(disk)?;
            let w = window.unwrap_or_else(|| k.default_window(*d));
            let found = k.search_dct_derived(*d, w)?;
            let mut text = format!("{} {d}-cluster tilting subcategories\n", found.len());
            for u in &found {
                text += &format!("  {}\n", subcat_text(u));
            }
            let value = json!({ "d": d, "window": w, "subcategories": found.iter().map(subcat_json).collect::<Vec<_>>() });
            let text = text_or_json(text, value)?;
            Ok(Outcome { text, negative: found.is_empty() })
        }
        DerCmd::Ar { disk, window } => {
            let k = load_disk(disk)?;
            emit_diagram(cli, &Diagram::from_derived(&k.ar_quiver_derived(*window)?, None))
        }
        DerCmd::Render { disk, d, window } => {
            let k = load_disk(disk)?;
            let found = k.search_dct_derived(*d, k.default_window(*d))?;
            emit_diagram(cli, &Diagram::from_derived(&k.ar_quiver_derived(*window)?, found.first()))
        }
    }
}

/// Splits `arc(1,2)@0,arc(2,3)@1` at the commas between literals.
fn split_arcs(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in list.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|s| s.trim().to_string()).collect()
}
