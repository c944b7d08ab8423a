use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotoid::arrow::{arrow_polynomial, loop_arrow_polynomial};
use knotoid::brackets::{loop_bracket, normalized_bracket};
use knotoid::closure::{alpha_map, diagram_height, tricolor, underpass_closure, virtual_closure};
use knotoid::kmap::Kmap;
use knotoid::parity::crossing_parities;
use knotoid::parity_bracket::{normalized_parity_bracket, GraphMode, ParityStateSum};
use knotoid::torus::{image_obstruction_test, standard_torus_representation, virtualize, TorusDiagram, Verdict};
use knotoid::walk::random_walk;
use knotoid::{gaussian_parity, odd_writhe, Diagram, Error, Symmetry};

#[derive(Parser)]
#[command(name = "knotoid-lab", version, about = "Parity invariants of knotoids and virtual knots")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for state sums (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    #[value(name = "json-like")]
    JsonLike,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    Sphere,
    Plane,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryArg {
    Mirror,
    Reverse,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute invariants of a Gauss code or KMAP (all spherical ones when no flag is given).
    Invariants(InvariantArgs),
    /// Virtual closure, underpass closure, or the α map of a knot.
    Closure(ClosureArgs),
    /// Surface-bracket multiplicity test on a knotoid or a KMAP torus diagram.
    ImageTest(ImageArgs),
    /// Print the KMAP of a diagram (optionally a virtualized torus diagram).
    Kmap(KmapArgs),
    /// Random walk of legal moves checking that invariants stay constant.
    Walk(WalkArgs),
}

#[derive(Args)]
struct Input {
    /// Input file; stdin when omitted.
    input: Option<PathBuf>,
}

#[derive(Args)]
struct InvariantArgs {
    #[command(flatten)]
    input: Input,
    /// Apply a symmetry before computing.
    #[arg(long, value_enum)]
    symmetry: Option<SymmetryArg>,
    #[arg(long)]
    gauss: bool,
    #[arg(long)]
    parity: bool,
    #[arg(long)]
    odd_writhe: bool,
    #[arg(long)]
    bracket: bool,
    #[arg(long)]
    loop_bracket: bool,
    #[arg(long, value_enum)]
    parity_bracket: Option<GraphArg>,
    #[arg(long)]
    arrow: bool,
    #[arg(long)]
    loop_arrow: bool,
    /// Arrow variables keep their chirality (`L1+` vs `L1-`).
    #[arg(long)]
    chiral: bool,
    #[arg(long)]
    tricolor: bool,
    #[arg(long)]
    height: bool,
    #[arg(long)]
    genus: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "kind")]
struct ClosureKind {
    #[arg(long = "virtual")]
    virtual_: bool,
    #[arg(long)]
    underpass: bool,
    /// Cut the knot open on this edge.
    #[arg(long, value_name = "EDGE")]
    alpha: Option<usize>,
}

#[derive(Args)]
struct ClosureArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    kind: ClosureKind,
}

#[derive(Args)]
struct ImageArgs {
    #[command(flatten)]
    input: Input,
    /// Virtualize this crossing of a knot first.
    #[arg(long, value_name = "CROSSING")]
    virtualize: Option<usize>,
}

#[derive(Args)]
struct KmapArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_name = "CROSSING")]
    virtualize: Option<usize>,
}

#[derive(Args)]
struct WalkArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, default_value_t = 100)]
    moves: usize,
    #[arg(long, default_value_t = 8)]
    max_crossings: usize,
    /// Comma-separated: parity, odd-writhe, bracket, loop-bracket, parity-bracket, arrow, loop-arrow, tricolor.
    #[arg(long, value_delimiter = ',', default_value = "odd-writhe,bracket")]
    check: Vec<String>,
}

enum Failure {
    Parse(String),
    Mode(String),
    Walk(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Syntax(_) | Error::Label(_) | Error::Kmap(_) | Error::NonPlanar(_) | Error::Parity(_) => {
                Failure::Parse(e.to_string())
            }
            Error::OuterFaceRequired | Error::MissingOuterFace => Failure::Mode(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Mode(_) => 3,
            Failure::Walk(_) => 4,
            Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Mode(m) | Failure::Walk(m) | Failure::Other(m) => m,
        }
    }
}

/// Ordered `name: value` lines; json-like output sorts the keys.
#[derive(Default)]
struct Report(Vec<(String, String)>);

impl Report {
    fn put(&mut self, k: &str, v: impl ToString) {
        self.0.push((k.to_string(), v.to_string()));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.0.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
            Format::JsonLike => {
                let m: BTreeMap<&str, &str> = self.0.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
                serde_json::to_string_pretty(&m).expect("strings serialize") + "\n"
            }
        }
    }
}

enum Loaded {
    Diagram(Diagram),
    Torus(TorusDiagram),
}

fn read_input(i: &Input) -> Result<String, Failure> {
    match &i.input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Other(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Other(e.to_string()))?;
            Ok(s)
        }
    }
}

fn load(i: &Input) -> Result<Loaded, Failure> {
    let text = read_input(i)?;
    if text.trim_start().starts_with('{') {
        let k = Kmap::parse(&text)?;
        if k.weights.is_some() {
            return Ok(Loaded::Torus(k.to_torus()?));
        }
        return Ok(Loaded::Diagram(k.to_diagram()?.0));
    }
    let line = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    Ok(Loaded::Diagram(Diagram::parse(line)?))
}

fn load_diagram(i: &Input) -> Result<Diagram, Failure> {
    match load(i)? {
        Loaded::Diagram(d) => Ok(d),
        Loaded::Torus(t) => Ok(t.diagram),
    }
}

fn parity_text(d: &Diagram) -> Result<String, Failure> {
    let p = gaussian_parity(d.code())?;
    Ok(p.parity.keys().map(|&l| format!("{l}:{}", if p.is_odd(l) { "odd" } else { "even" })).collect::<Vec<_>>().join(" "))
}

fn parity_bracket_text(p: &ParityStateSum) -> String {
    if p.graph_count() == 0 {
        return p.node_free_part().to_string();
    }
    p.terms.iter().map(|(k, v)| if k.is_node_free() { format!("({v})") } else { format!("({v})*G{k}") }).collect::<Vec<_>>().join(" + ")
}

fn require_plane(d: &Diagram, what: &str) -> Result<(), Failure> {
    if d.is_plane() {
        Ok(())
    } else {
        Err(Failure::Mode(format!("{what} needs a plane diagram (add outer=<k>)")))
    }
}

fn cmd_invariants(a: &InvariantArgs) -> Result<Report, Failure> {
    let mut d = load_diagram(&a.input)?;
    if let Some(s) = a.symmetry {
        d = d.symmetric(match s {
            SymmetryArg::Mirror => Symmetry::Mirror,
            SymmetryArg::Reverse => Symmetry::Reverse,
            SymmetryArg::Both => Symmetry::Both,
        });
    }
    let none = !(a.gauss
        || a.parity
        || a.odd_writhe
        || a.bracket
        || a.loop_bracket
        || a.parity_bracket.is_some()
        || a.arrow
        || a.loop_arrow
        || a.tricolor
        || a.height
        || a.genus);
    let mut r = Report::default();
    r.put("input", d.to_text());
    if a.gauss || none {
        r.put("gauss", d.emit_gauss());
    }
    if a.parity || none {
        r.put("parity", parity_text(&d)?);
    }
    if a.odd_writhe || none {
        r.put("odd_writhe", odd_writhe(&d)?);
    }
    if a.bracket || none {
        r.put("bracket", normalized_bracket(&d));
    }
    if a.loop_bracket {
        require_plane(&d, "loop bracket")?;
        r.put("loop_bracket", loop_bracket(&d)?);
    }
    match a.parity_bracket {
        Some(GraphArg::Plane) => {
            require_plane(&d, "plane parity bracket")?;
            r.put("parity_bracket", parity_bracket_text(&normalized_parity_bracket(&d, GraphMode::Plane)?));
        }
        Some(GraphArg::Sphere) => {
            r.put("parity_bracket", parity_bracket_text(&normalized_parity_bracket(&d.to_sphere(), GraphMode::Sphere)?))
        }
        None if none => {
            r.put("parity_bracket", parity_bracket_text(&normalized_parity_bracket(&d.to_sphere(), GraphMode::Sphere)?))
        }
        None => {}
    }
    if a.arrow || none {
        r.put("arrow", arrow_polynomial(&d, a.chiral));
    }
    if a.loop_arrow {
        require_plane(&d, "loop arrow polynomial")?;
        r.put("loop_arrow", loop_arrow_polynomial(&d, a.chiral)?);
    }
    if a.tricolor || none {
        let (ok, n) = tricolor(&d);
        r.put("tricolor", format!("{ok} colorings={n}"));
    }
    if (a.height || none) && d.is_knotoid() {
        r.put("height", diagram_height(&d));
    }
    if a.genus || none {
        r.put("genus", d.genus());
    }
    Ok(r)
}

fn cmd_closure(a: &ClosureArgs) -> Result<Report, Failure> {
    let d = load_diagram(&a.input)?;
    let mut r = Report::default();
    r.put("input", d.to_text());
    let out = if let Some(e) = a.kind.alpha {
        if d.is_knotoid() {
            return Err(Failure::Mode("alpha takes a knot".into()));
        }
        alpha_map(&d, e)?
    } else {
        if !d.is_knotoid() {
            return Err(Failure::Mode("closures take a knotoid".into()));
        }
        if a.kind.underpass {
            underpass_closure(&d, None)?
        } else {
            virtual_closure(&d)
        }
    };
    r.put("closure", out.to_text());
    r.put("genus", out.genus());
    Ok(r)
}

fn torus_of(i: &Input, c: Option<usize>) -> Result<TorusDiagram, Failure> {
    Ok(match (load(i)?, c) {
        (Loaded::Torus(t), None) => t,
        (Loaded::Torus(t), Some(c)) => virtualize(&t.diagram, c)?,
        (Loaded::Diagram(d), Some(c)) => virtualize(&d, c)?,
        (Loaded::Diagram(d), None) if d.is_knotoid() => standard_torus_representation(&d)?,
        (Loaded::Diagram(_), None) => {
            return Err(Failure::Mode("a knot needs --virtualize or a KMAP torus diagram".into()))
        }
    })
}

fn cmd_image_test(a: &ImageArgs) -> Result<Report, Failure> {
    let t = torus_of(&a.input, a.virtualize)?;
    let rep = image_obstruction_test(&t);
    let mut r = Report::default();
    r.put("input", t.diagram.to_text());
    r.put("verdict", &rep.verdict);
    if let Verdict::NotInImage { state, .. } = rep.verdict {
        r.put("witness_state", state);
    }
    r.put("states", rep.states.len());
    r.put("all_primitive", rep.all_primitive);
    r.put("all_unit_lambda", rep.all_unit_lambda);
    Ok(r)
}

fn cmd_kmap(a: &KmapArgs) -> Result<String, Failure> {
    Ok(match (load(&a.input)?, a.virtualize) {
        (Loaded::Torus(t), None) => Kmap::from_torus(&t),
        (l, Some(c)) => {
            let d = match l {
                Loaded::Diagram(d) => d,
                Loaded::Torus(t) => t.diagram,
            };
            Kmap::from_torus(&virtualize(&d, c)?)
        }
        (Loaded::Diagram(d), None) => Kmap::from_diagram(&d),
    }
    .to_text())
}

const WALK_CHECKS: [&str; 8] =
    ["parity", "odd-writhe", "bracket", "loop-bracket", "parity-bracket", "arrow", "loop-arrow", "tricolor"];

fn walk_value(d: &Diagram, check: &str) -> Result<String, Failure> {
    Ok(match check {
        "parity" => crossing_parities(d).iter().filter(|&&o| o).count().to_string(),
        "odd-writhe" => odd_writhe(d)?.to_string(),
        "bracket" => normalized_bracket(d).to_string(),
        "loop-bracket" => {
            require_plane(d, "loop bracket")?;
            loop_bracket(d)?.to_string()
        }
        "parity-bracket" => {
            let mode = if d.is_plane() { GraphMode::Plane } else { GraphMode::Sphere };
            parity_bracket_text(&normalized_parity_bracket(d, mode)?)
        }
        "arrow" => arrow_polynomial(d, true).to_string(),
        "loop-arrow" => {
            require_plane(d, "loop arrow polynomial")?;
            loop_arrow_polynomial(d, true)?.to_string()
        }
        "tricolor" => tricolor(d).1.to_string(),
        _ => unreachable!(),
    })
}

fn cmd_walk(a: &WalkArgs, seed: u64) -> Result<Report, Failure> {
    let d = load_diagram(&a.input)?;
    let checks: Vec<&str> = a.check.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if let Some(bad) = checks.iter().find(|c| !WALK_CHECKS.contains(c)) {
        return Err(Failure::Parse(format!("unknown check `{bad}` (known: {})", WALK_CHECKS.join(","))));
    }
    let start: Vec<String> = checks.iter().map(|c| walk_value(&d, c)).collect::<Result<_, _>>()?;
    let steps = random_walk(&d, a.moves, a.max_crossings, seed);
    let mut trace = vec![];
    for (i, s) in steps.iter().enumerate() {
        trace.push(format!("{} {} -> {}", i + 1, s.mv, s.diagram.to_text()));
        for (c, v0) in checks.iter().zip(&start) {
            let v = walk_value(&s.diagram, c)?;
            if &v != v0 {
                return Err(Failure::Walk(format!(
                    "{c} changed at move {}: {v0} -> {v}\nreplay: --seed {seed} --moves {}\ntrace:\n{}",
                    i + 1,
                    i + 1,
                    trace.join("\n")
                )));
            }
        }
    }
    let mut r = Report::default();
    r.put("input", d.to_text());
    r.put("moves", steps.len());
    r.put("seed", seed);
    r.put("checked", checks.join(","));
    r.put("final", steps.last().map_or(d.to_text(), |s| s.diagram.to_text()));
    r.put("result", "PASS");
    Ok(r)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(|e| Failure::Other(e.to_string()))?;
    }
    let report = match &cli.cmd {
        Cmd::Invariants(a) => cmd_invariants(a)?,
        Cmd::Closure(a) => cmd_closure(a)?,
        Cmd::ImageTest(a) => cmd_image_test(a)?,
        Cmd::Kmap(a) => return cmd_kmap(a),
        Cmd::Walk(a) => cmd_walk(a, cli.seed)?,
    };
    Ok(report.render(cli.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
