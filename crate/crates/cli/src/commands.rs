//! Command-line definitions and dispatch.

use std::cell::RefCell;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gpdkit::dblgpd::{
    commutative_cube_check, cube_compose_check, eckmann_hilton_check, Axis, CubeVerdict, Direction,
    DoubleGroupoidXM, EhInstance, PremiseFailure, SquareError,
};
use gpdkit::group::FiniteGroup;
use gpdkit::groupoid::{FiniteGroupoid, Obj};
use gpdkit::guard::SizeGuard;
use gpdkit::presentation::{
    default_battery, pushout, verify_pushout_universal, vertex_group_presentation, GroupoidPresentation,
    PresentationError, PushoutSquare, UniversalReport, VertexGroupPresentation,
};
use gpdkit::rewriting::{CompletionLimits, RewriteSystem};
use gpdkit::vankampen::{base_points, check_cover, fundamental_groupoid, pi1, vkt_square, VanKampenError};
use gpdkit::xmod::{
    automorphism_xmod, check_axioms, find_isomorphism, free_xmod_presentation, from_normal_subgroup,
    induced_xmod_presentation, kernel_central_check, morphisms_from_free, CrossedModule, XModError,
};

use crate::format::{groupoid_as_group, parse, serialize, Document, MorphismDoc, Resolver};
use crate::report::{Input, Report, Verdict};

#[derive(Debug, Parser)]
#[command(name = "gpdkit", version, about = "Groupoids, crossed modules and double groupoids at desk scale")]
pub struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Upper bound on candidate assignments in any exhaustive search.
    #[arg(long, global = true, value_name = "N")]
    pub max_candidates: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex group of the fundamental groupoid of a 2-complex.
    Pi1 {
        complex: PathBuf,
        /// Base points, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
        /// Base point to present the vertex group at (default: first).
        #[arg(long)]
        vertex: Option<String>,
        /// Longest reduced loop to count.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Van Kampen pushout for a two-piece cover.
    Vkt {
        cover: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
        /// Finite test targets: C<n>, S<n>, A<n>, or a group file.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<String>>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Pushout of presentations A <- W -> B and its universal property.
    Pushout {
        left: PathBuf,
        right: PathBuf,
        shared: PathBuf,
        /// Morphism W -> A.
        #[arg(long)]
        f: PathBuf,
        /// Morphism W -> B.
        #[arg(long)]
        g: PathBuf,
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<String>>,
    },
    /// Crossed modules: axioms, standard constructions, free and induced
    #[command(subcommand)]
    Xmod(XmodCommand),
    /// Labeled squares over a crossed module
    #[command(subcommand)]
    Dgpd(DgpdCommand),
    /// Commutative cubes in the double groupoid of commuting squares
    #[command(subcommand)]
    Cube(CubeCommand),
    /// Eckmann-Hilton check for two operations on one set
    #[command(subcommand)]
    Eh(EhCommand),
}

#[derive(Debug, Subcommand)]
pub enum XmodCommand {
    /// Action laws, CM1, CM2, and kernel centrality.
    Check { xmod: PathBuf },
    /// The crossed module G -> Aut(G).
    Aut {
        group: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Inclusion of the normal subgroup generated by `--gen` elements.
    Normal {
        group: PathBuf,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Free crossed module on `--gen r=p`, tested against finite targets.
    Free {
        group: PathBuf,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long, num_args = 1.., required = true)]
        verify_against: Vec<PathBuf>,
    },
    /// Crossed module induced along a homomorphism given on generators.
    Induced {
        xmod: PathBuf,
        #[arg(long)]
        target_group: PathBuf,
        /// `p=q`, one per generator of P.
        #[arg(long = "map", required = true)]
        map: Vec<String>,
        #[arg(long, num_args = 1.., required = true)]
        verify_against: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DirArg {
    H,
    V,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AxisArg {
    X,
    Y,
    Z,
}

#[derive(Debug, Subcommand)]
pub enum DgpdCommand {
    /// Compose squares in one direction, left to right.
    Compose {
        #[arg(long, value_enum)]
        dir: DirArg,
        squares: PathBuf,
        /// Square ids (default: every square in file order).
        ids: Vec<String>,
    },
    /// Compose the `row` array both ways and compare.
    Array { squares: PathBuf },
    /// Crossed module -> double groupoid -> crossed module.
    Roundtrip { xmod: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CubeCommand {
    /// Fold five faces and compare with the sixth.
    Check {
        cubes: PathBuf,
        ids: Vec<String>,
    },
    /// Glue two cubes along an axis and check the result.
    Compose {
        #[arg(long, value_enum)]
        dir: AxisArg,
        cubes: PathBuf,
        first: Option<String>,
        second: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EhCommand {
    /// Unit and interchange premises, then the conclusion.
    Check { instance: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Pi1 { .. } => "pi1",
            Command::Vkt { .. } => "vkt",
            Command::Pushout { .. } => "pushout",
            Command::Xmod(XmodCommand::Check { .. }) => "xmod check",
            Command::Xmod(XmodCommand::Aut { .. }) => "xmod aut",
            Command::Xmod(XmodCommand::Normal { .. }) => "xmod normal",
            Command::Xmod(XmodCommand::Free { .. }) => "xmod free",
            Command::Xmod(XmodCommand::Induced { .. }) => "xmod induced",
            Command::Dgpd(DgpdCommand::Compose { .. }) => "dgpd compose",
            Command::Dgpd(DgpdCommand::Array { .. }) => "dgpd array",
            Command::Dgpd(DgpdCommand::Roundtrip { .. }) => "dgpd roundtrip",
            Command::Cube(CubeCommand::Check { .. }) => "cube check",
            Command::Cube(CubeCommand::Compose { .. }) => "cube compose",
            Command::Eh(EhCommand::Check { .. }) => "eh check",
        }
    }
}

/// Failures that stop a command before a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Guard(String),
}

impl From<XModError> for CliError {
    fn from(e: XModError) -> Self {
        match e {
            XModError::Guard(g) => CliError::Guard(g.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::Guard(g) => CliError::Guard(g.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<VanKampenError> for CliError {
    fn from(e: VanKampenError) -> Self {
        match e {
            VanKampenError::Guard(g) => CliError::Guard(g.to_string()),
            VanKampenError::Presentation(p) => p.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

type Res<T> = Result<T, CliError>;

fn input<T>(msg: impl Into<String>) -> Res<T> {
    Err(CliError::Input(msg.into()))
}

/// Reads files and records their digests in load order.
#[derive(Default)]
struct Loader {
    inputs: RefCell<Vec<Input>>,
}

impl Loader {
    fn read(&self, path: &Path) -> Res<String> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let shown = path.display().to_string();
        let mut inputs = self.inputs.borrow_mut();
        if !inputs.iter().any(|i| i.path == shown) {
            inputs.push(Input::new(&shown, &bytes));
        }
        String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{shown}: not UTF-8")))
    }

    fn load(&self, path: &Path) -> Res<Document> {
        let text = self.read(path)?;
        let rel = Relative {
            loader: self,
            base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        };
        parse(&text, &rel).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

struct Relative<'a> {
    loader: &'a Loader,
    base: PathBuf,
}

impl Resolver for Relative<'_> {
    fn xmod(&self, path: &str) -> Result<CrossedModule, String> {
        match self.loader.load(&self.base.join(path)) {
            Ok(Document::XMod(x)) => Ok(x),
            Ok(other) => Err(format!("`{path}` is a {} document, not an xmod", other.kind())),
            Err(CliError::Input(m) | CliError::Guard(m)) => Err(m),
        }
    }
}

macro_rules! expect_doc {
    ($loader:expr, $path:expr, $variant:ident, $kind:literal) => {
        match $loader.load($path)? {
            Document::$variant(x) => x,
            other => {
                return input(format!(
                    "{}: expected a {} document, found {}",
                    $path.display(),
                    $kind,
                    other.kind()
                ))
            }
        }
    };
}

fn load_group(loader: &Loader, path: &Path) -> Res<FiniteGroup> {
    match loader.load(path)? {
        Document::Group(g) => Ok(g),
        Document::Groupoid(g) => groupoid_as_group(&g)
            .ok_or_else(|| CliError::Input(format!("{}: groupoid has more than one object", path.display()))),
        other => input(format!("{}: expected a group document, found {}", path.display(), other.kind())),
    }
}

fn target(loader: &Loader, spec: &str) -> Res<(String, FiniteGroupoid)> {
    let numbered = |prefix: char| {
        spec.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
    };
    let g = if spec == "1" {
        FiniteGroup::trivial()
    } else if let Some(n) = numbered('C') {
        FiniteGroup::cyclic(n)
    } else if let Some(n) = numbered('S').filter(|&n| n <= 5) {
        FiniteGroup::symmetric(n)
    } else if let Some(n) = numbered('A').filter(|&n| n <= 5) {
        FiniteGroup::alternating(n)
    } else {
        let path = Path::new(spec);
        return match loader.load(path)? {
            Document::Group(g) => Ok((spec.to_string(), FiniteGroupoid::from_group(&g))),
            Document::Groupoid(g) => Ok((spec.to_string(), g)),
            other => input(format!("{spec}: expected a group or groupoid, found {}", other.kind())),
        };
    };
    Ok((spec.to_string(), FiniteGroupoid::from_group(&g)))
}

fn targets(loader: &Loader, specs: &Option<Vec<String>>) -> Res<Vec<(String, FiniteGroupoid)>> {
    match specs {
        None => Ok(default_battery()),
        Some(list) => list.iter().map(|s| target(loader, s)).collect(),
    }
}

pub fn parse_args<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args)
}

/// Runs one command. Errors become reports with the matching verdict.
pub fn run(cli: &Cli) -> Report {
    let start = Instant::now();
    let loader = Loader::default();
    let guard = cli.max_candidates.map(SizeGuard::new).unwrap_or_default();
    let mut report = Report::new(cli.command.name());
    let result = dispatch(&cli.command, &loader, &guard, &mut report);
    report.inputs = loader.inputs.into_inner();
    if let Err(e) = result {
        let (verdict, msg) = match e {
            CliError::Input(m) => (Verdict::InputError, m),
            CliError::Guard(m) => (Verdict::SizeGuard, m),
        };
        report.verdict = verdict;
        report.summary.clear();
        report.line(msg.clone());
        report.data = json!({ "error": msg });
    }
    report.elapsed = Some(start.elapsed());
    report
}

fn dispatch(cmd: &Command, loader: &Loader, guard: &SizeGuard, r: &mut Report) -> Res<()> {
    match cmd {
        Command::Pi1 {
            complex,
            base,
            vertex,
            max_len,
        } => run_pi1(loader, complex, base, vertex.as_deref(), *max_len, r),
        Command::Vkt {
            cover,
            base,
            targets: t,
            max_len,
        } => run_vkt(loader, guard, cover, base, t, *max_len, r),
        Command::Pushout {
            left,
            right,
            shared,
            f,
            g,
            targets: t,
        } => run_pushout(loader, guard, [left, right, shared], [f, g], t, r),
        Command::Xmod(x) => run_xmod(loader, guard, x, r),
        Command::Dgpd(d) => run_dgpd(loader, guard, d, r),
        Command::Cube(c) => run_cube(loader, c, r),
        Command::Eh(EhCommand::Check { instance }) => {
            let inst = expect_doc!(loader, instance, Eh, "eh");
            run_eh(&inst, r);
            Ok(())
        }
    }
}

// ---- fundamental groupoids ----

fn loop_counts(vg: &VertexGroupPresentation, max_len: usize) -> Option<Vec<u128>> {
    let p = &vg.presentation;
    let sys = RewriteSystem::complete(p.quiver(), p.relations(), &CompletionLimits::default());
    (0..=max_len).map(|k| sys.count_normal_forms(p.quiver(), 0, k)).collect()
}

fn describe_vertex_group(vg: &VertexGroupPresentation, max_len: usize, at: &str, r: &mut Report) -> Value {
    let p = &vg.presentation;
    let counts = loop_counts(vg, max_len);
    r.line(format!("vertex group at {at}: {}", p.notation()));
    match &counts {
        Some(c) => {
            let shown: Vec<String> = c.iter().map(u128::to_string).collect();
            r.line(format!("  reduced loops of length ≤ k, k = 0..{max_len}: {}", shown.join(" ")));
        }
        None => r.line("  rewriting system did not complete; loop counts unavailable"),
    }
    json!({
        "vertex": at,
        "presentation": p.notation(),
        "generators": p.quiver().edge_count(),
        "relations": p.relations().len(),
        "reduced_loop_counts": counts.map(|c| c.iter().map(|n| n.to_string()).collect::<Vec<_>>()),
    })
}

fn run_pi1(loader: &Loader, path: &Path, base: &[String], vertex: Option<&str>, max_len: usize, r: &mut Report) -> Res<()> {
    let x = expect_doc!(loader, path, Complex, "complex");
    let names: Vec<&str> = base.iter().map(String::as_str).collect();
    let b = base_points(&x, &names)?;
    let at = vertex.unwrap_or(names[0]);
    let v = x
        .vertex_by_name(at)
        .ok_or_else(|| CliError::Input(format!("unknown vertex `{at}`")))?;
    let fg = fundamental_groupoid(&x, &b)?;
    let vg = pi1(&x, &b, v)?;
    r.line(format!("fundamental groupoid: {}", fg.presentation.notation()));
    let vgj = describe_vertex_group(&vg, max_len, at, r);
    r.set("groupoid", fg.presentation.notation());
    r.set("vertex_group", vgj);
    r.set("base", base);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_vkt(
    loader: &Loader,
    guard: &SizeGuard,
    path: &Path,
    base: &[String],
    t: &Option<Vec<String>>,
    max_len: usize,
    r: &mut Report,
) -> Res<()> {
    let cover = expect_doc!(loader, path, Cover, "cover");
    let battery = targets(loader, t)?;
    let names: Vec<&str> = base.iter().map(String::as_str).collect();
    let b = base_points(&cover.complex, &names)?;
    r.set("base", base);
    let hyp = check_cover(&cover, &b);
    if !hyp.passed() {
        r.verdict = Verdict::Fail;
        r.line(format!("hypothesis unmet: {hyp}"));
        let missed: Vec<Value> = hyp
            .missed
            .iter()
            .map(|m| json!({"piece": m.piece.to_string(), "vertices": m.vertices}))
            .collect();
        r.set("missed_components", missed);
        return Ok(());
    }
    let sq = vkt_square(&cover, &b, &battery, guard)?;
    let po = &sq.pushout;
    r.line(format!("π1(U) = {}", sq.u.presentation.notation()));
    r.line(format!("π1(V) = {}", sq.v.presentation.notation()));
    r.line(format!("π1(W) = {}", sq.w.presentation.notation()));
    r.line(format!("pushout = {}", po.presentation.notation()));
    let mut groups = Vec::new();
    for (&v, name) in b.iter().zip(sort_names(&cover.complex, &b)) {
        let idx = match (sq.u.base_index(v), sq.v.base_index(v)) {
            (Some(i), _) => po.from_left.vertex_map[i],
            (None, Some(i)) => po.from_right.vertex_map[i],
            (None, None) => unreachable!("U and V cover X"),
        };
        let vg = vertex_group_presentation(&po.presentation, idx)?;
        groups.push(describe_vertex_group(&vg, max_len, &name, r));
    }
    let ev = &sq.evidence;
    let counts: Vec<Value> = ev
        .counts
        .iter()
        .map(|c| json!({"target": c.target, "pushout": c.pushout, "direct": c.direct}))
        .collect();
    for c in &ev.counts {
        r.line(format!(
            "morphisms into {}: pushout {}, direct {}",
            c.target, c.pushout, c.direct
        ));
    }
    r.line(format!(
        "generator maps between pushout and direct π1 verified: {}",
        ev.generator_maps_verified
    ));
    r.verdict = if ev.counts_agree() && ev.generator_maps_verified {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    r.set("pushout", po.presentation.notation());
    r.set("direct", sq.direct.presentation.notation());
    r.set(
        "pieces",
        json!({
            "U": sq.u.presentation.notation(),
            "V": sq.v.presentation.notation(),
            "W": sq.w.presentation.notation(),
        }),
    );
    r.set("vertex_groups", groups);
    r.set("morphism_counts", counts);
    r.set("generator_maps_verified", ev.generator_maps_verified);
    Ok(())
}

fn sort_names(x: &gpdkit::vankampen::Complex2, b: &[usize]) -> Vec<String> {
    b.iter().map(|&v| x.quiver().vertex_name(v).to_string()).collect()
}

fn universal_json(rep: &UniversalReport, r: &mut Report) -> Value {
    let mut rows = Vec::new();
    for t in &rep.targets {
        r.line(format!(
            "{}: {} compatible pairs, {} pushout morphisms, {} pairs without a unique mediator, {} stray",
            t.target,
            t.compatible_pairs,
            t.pushout_morphisms,
            t.mediator_failures.len(),
            t.stray_morphisms
        ));
        rows.push(json!({
            "target": t.target,
            "compatible_pairs": t.compatible_pairs,
            "pushout_morphisms": t.pushout_morphisms,
            "mediator_failures": t.mediator_failures,
            "stray_morphisms": t.stray_morphisms,
            "passed": t.passed(),
        }));
    }
    json!({"square_commutes": rep.square_commutes, "targets": rows})
}

fn run_pushout(
    loader: &Loader,
    guard: &SizeGuard,
    [left, right, shared]: [&PathBuf; 3],
    [f, g]: [&PathBuf; 2],
    t: &Option<Vec<String>>,
    r: &mut Report,
) -> Res<()> {
    let pres = |p: &PathBuf| -> Res<GroupoidPresentation> {
        Ok(match loader.load(p)? {
            Document::Presentation(x) => x,
            Document::Quiver(q) => GroupoidPresentation::free(q),
            other => return input(format!("{}: expected a presentation, found {}", p.display(), other.kind())),
        })
    };
    let (a, b, w) = (pres(left)?, pres(right)?, pres(shared)?);
    let morph = |p: &PathBuf, to: &GroupoidPresentation| -> Res<_> {
        let m: MorphismDoc = expect_doc!(loader, p, Morphism, "morphism");
        m.resolve(&w, to).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
    };
    let (fm, gm) = (morph(f, &a)?, morph(g, &b)?);
    let battery = targets(loader, t)?;
    let po = pushout(&w, &a, &b, &fm, &gm)?;
    r.line(format!("pushout = {}", po.presentation.notation()));
    let square = PushoutSquare {
        shared: &w,
        left: &a,
        right: &b,
        f: &fm,
        g: &gm,
        pushout: &po,
    };
    let rep = verify_pushout_universal(&square, &battery, guard)?;
    let u = universal_json(&rep, r);
    r.verdict = if rep.passed() { Verdict::Pass } else { Verdict::Fail };
    r.set("pushout", po.presentation.notation());
    r.set("universal", u);
    Ok(())
}

// ---- crossed modules ----

fn axioms_into(xm: &CrossedModule, r: &mut Report) -> bool {
    let rep = check_axioms(xm);
    let kernel = kernel_central_check(xm);
    for v in &rep.violations {
        r.line(v.to_string());
    }
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| {
            let w: serde_json::Map<String, Value> = v.witness.iter().map(|(k, s)| (k.to_string(), json!(s))).collect();
            json!({"axiom": v.axiom.to_string(), "witness": w, "lhs": v.lhs, "rhs": v.rhs})
        })
        .collect();
    if rep.passed() {
        r.line("action laws, μ homomorphism, CM1, CM2: all hold");
    }
    let kernel_ok = kernel.passed();
    match kernel.witness {
        None => r.line("ker μ is central"),
        Some((x, k, m)) => {
            let g = xm.group(x);
            r.line(format!("ker μ is not central: {} ∈ ker μ does not commute with {}", g.name(k), g.name(m)));
        }
    }
    let kernel_json: Vec<Vec<&str>> = kernel
        .kernel
        .iter()
        .enumerate()
        .map(|(i, ks)| ks.iter().map(|&k| xm.group(Obj(i)).name(k)).collect())
        .collect();
    r.set("axiom_violations", violations);
    r.set("kernel", kernel_json);
    r.set("kernel_central", kernel_ok);
    r.set("m_size", xm.m_size());
    r.set("p_size", xm.base().arrow_count());
    rep.passed() && kernel_ok
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn emit(path: &Option<PathBuf>, xm: &CrossedModule, r: &mut Report) -> Res<()> {
    if let Some(p) = path {
        std::fs::write(p, serialize(&Document::XMod(xm.clone())))
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
        r.line(format!("wrote {}", p.display()));
    }
    Ok(())
}

fn element(g: &FiniteGroup, name: &str) -> Res<usize> {
    g.index_of(name)
        .ok_or_else(|| CliError::Input(format!("`{name}` is not an element of the group")))
}

fn split_pair(s: &str) -> Res<(&str, &str)> {
    s.split_once('=')
        .ok_or_else(|| CliError::Input(format!("expected `a=b`, found `{s}`")))
}

fn run_xmod(loader: &Loader, guard: &SizeGuard, cmd: &XmodCommand, r: &mut Report) -> Res<()> {
    match cmd {
        XmodCommand::Check { xmod } => {
            let xm = expect_doc!(loader, xmod, XMod, "xmod");
            let ok = axioms_into(&xm, r);
            r.verdict = verdict(ok);
        }
        XmodCommand::Aut { group, emit: out } => {
            let g = load_group(loader, group)?;
            let xm = automorphism_xmod(&g, guard)?;
            let aut = xm.base();
            r.line(format!("|G| = {}, |Aut(G)| = {}", g.order(), aut.arrow_count()));
            let names: Vec<&str> = aut.arrows().map(|a| aut.arrow_name(a)).collect();
            r.set("automorphisms", names);
            let ok = axioms_into(&xm, r);
            emit(out, &xm, r)?;
            r.verdict = verdict(ok);
        }
        XmodCommand::Normal { group, gens, emit: out } => {
            let g = load_group(loader, group)?;
            let gs = gens.iter().map(|s| element(&g, s)).collect::<Res<Vec<_>>>()?;
            let sub = g.subgroup(&gs);
            let names: Vec<&str> = sub.iter().map(|&e| g.name(e)).collect();
            r.line(format!("subgroup {{{}}}", names.join(", ")));
            r.set("subgroup", &names);
            match from_normal_subgroup(&g, &sub) {
                Ok(xm) => {
                    let ok = axioms_into(&xm, r);
                    emit(out, &xm, r)?;
                    r.verdict = verdict(ok);
                }
                Err(e @ XModError::NotNormal { .. }) => {
                    r.line(e.to_string());
                    if let XModError::NotNormal {
                        element,
                        conjugator,
                        image,
                        conjugators,
                    } = e
                    {
                        r.set(
                            "not_normal",
                            json!({"element": element, "conjugator": conjugator, "image": image, "conjugators": conjugators}),
                        );
                    }
                    r.verdict = Verdict::Fail;
                }
                Err(e) => return Err(e.into()),
            }
        }
        XmodCommand::Free {
            group,
            gens,
            verify_against,
        } => {
            let p = load_group(loader, group)?;
            let mut names = Vec::new();
            let mut w = Vec::new();
            for s in gens {
                let (name, val) = split_pair(s)?;
                names.push(name);
                w.push(element(&p, val)?);
            }
            let f = free_xmod_presentation(&p, &names, &w)?;
            let desc: Vec<String> = names.iter().zip(&w).map(|(n, &v)| format!("w({n}) = {}", p.name(v))).collect();
            r.line(format!("free crossed module over P with {}", desc.join(", ")));
            let mut rows = Vec::new();
            let mut ok = true;
            for path in verify_against {
                let c = expect_doc!(loader, path, XMod, "xmod");
                let rep = morphisms_from_free(&f, &c, guard)?;
                ok &= rep.agrees();
                r.line(format!(
                    "{}: {} morphisms, fiber product {}",
                    path.display(),
                    rep.assignments.len(),
                    rep.fiber_product
                ));
                let m = c.group(Obj(0));
                let assignments: Vec<Vec<&str>> = rep
                    .assignments
                    .iter()
                    .map(|a| a.iter().map(|&e| m.name(e)).collect())
                    .collect();
                rows.push(json!({
                    "target": path.display().to_string(),
                    "morphisms": rep.assignments.len(),
                    "fiber_product": rep.fiber_product.to_string(),
                    "candidates": rep.candidates.to_string(),
                    "assignments": assignments,
                }));
            }
            r.set("generators", &desc);
            r.set("targets", rows);
            r.verdict = verdict(ok);
        }
        XmodCommand::Induced {
            xmod,
            target_group,
            map,
            verify_against,
        } => {
            let xm = expect_doc!(loader, xmod, XMod, "xmod");
            let Some(p) = groupoid_as_group(xm.base()) else {
                return input("induced crossed modules need a one-object base named `*`");
            };
            let q = load_group(loader, target_group)?;
            let mut gens = Vec::new();
            let mut imgs = Vec::new();
            for s in map {
                let (a, b) = split_pair(s)?;
                gens.push(element(&p, a)?);
                imgs.push(element(&q, b)?);
            }
            if p.subgroup(&gens).len() != p.order() {
                return input("the mapped elements do not generate P");
            }
            let Some(f) = p.extend_hom(&gens, &imgs, &q) else {
                return input("the map does not extend to a homomorphism P -> Q");
            };
            let ind = induced_xmod_presentation(&xm, &p, &q, &f)?;
            let fmap: Vec<String> = p.elements().map(|e| format!("{}>{}", p.name(e), q.name(f[e]))).collect();
            r.line(format!("f = {}", fmap.join(", ")));
            let mut rows = Vec::new();
            let mut ok = true;
            for path in verify_against {
                let c = expect_doc!(loader, path, XMod, "xmod");
                let rep = ind.verify_against(&c, guard)?;
                ok &= rep.agrees();
                r.line(format!(
                    "{}: {} assignments satisfy the relations, {} homomorphisms",
                    path.display(),
                    rep.by_relations,
                    rep.by_homomorphisms
                ));
                rows.push(json!({
                    "target": path.display().to_string(),
                    "by_relations": rep.by_relations,
                    "by_homomorphisms": rep.by_homomorphisms,
                }));
            }
            r.set("f", fmap);
            r.set("targets", rows);
            r.verdict = verdict(ok);
        }
    }
    Ok(())
}

// ---- double groupoids ----

fn run_dgpd(loader: &Loader, guard: &SizeGuard, cmd: &DgpdCommand, r: &mut Report) -> Res<()> {
    match cmd {
        DgpdCommand::Compose { dir, squares, ids } => {
            let doc = expect_doc!(loader, squares, Squares, "square");
            let dg = DoubleGroupoidXM::from_xmod(&doc.xmod).map_err(|e| CliError::Input(e.to_string()))?;
            let ids: Vec<String> = if ids.is_empty() {
                doc.squares.iter().map(|(n, _)| n.clone()).collect()
            } else {
                ids.clone()
            };
            let list = ids
                .iter()
                .map(|id| doc.square(id).ok_or_else(|| CliError::Input(format!("unknown square `{id}`"))))
                .collect::<Res<Vec<_>>>()?;
            let Some((first, rest)) = list.split_first() else {
                return input("no squares to compose");
            };
            let d = match dir {
                DirArg::H => Direction::Horizontal,
                DirArg::V => Direction::Vertical,
            };
            r.set("direction", d.to_string());
            r.set("ids", &ids);
            let mut acc = *first;
            for (i, s) in rest.iter().enumerate() {
                match dg.compose(d, &acc, s) {
                    Ok(c) => acc = c,
                    Err(e) => {
                        r.verdict = Verdict::Fail;
                        r.line(format!("cannot compose `{}` after the first {} squares: {e}", ids[i + 1], i + 1));
                        r.set("mismatch", json!({"at": ids[i + 1], "error": e.to_string()}));
                        return Ok(());
                    }
                }
            }
            let law = dg.check(&acc);
            r.line(format!("{} composite: {}", d, dg.show(&acc)));
            r.line(format!("boundary law on the composite: {}", if law.is_ok() { "holds" } else { "fails" }));
            r.set("composite", dg.show(&acc));
            r.set("thin", dg.is_thin(&acc));
            r.verdict = verdict(law.is_ok());
        }
        DgpdCommand::Array { squares } => {
            let doc = expect_doc!(loader, squares, Squares, "square");
            let dg = DoubleGroupoidXM::from_xmod(&doc.xmod).map_err(|e| CliError::Input(e.to_string()))?;
            let rows = doc.array();
            let shape = (rows.len(), rows.first().map_or(0, Vec::len));
            r.set("shape", [shape.0, shape.1]);
            let by_rows = dg.compose_array(&rows);
            let by_cols = dg.compose_array_by_columns(&rows);
            match (by_rows, by_cols) {
                (Ok(a), Ok(b)) => {
                    r.line(format!("rows first:    {}", dg.show(&a)));
                    r.line(format!("columns first: {}", dg.show(&b)));
                    r.set("rows_first", dg.show(&a));
                    r.set("columns_first", dg.show(&b));
                    r.verdict = verdict(a == b);
                }
                (Err(SquareError::ArrayShape), _) | (_, Err(SquareError::ArrayShape)) => {
                    return input("array is empty or ragged");
                }
                (Err(e), _) | (_, Err(e)) => {
                    r.line(e.to_string());
                    r.set("mismatch", e.to_string());
                    r.verdict = Verdict::Fail;
                }
            }
        }
        DgpdCommand::Roundtrip { xmod } => {
            let xm = expect_doc!(loader, xmod, XMod, "xmod");
            let dg = match DoubleGroupoidXM::from_xmod(&xm) {
                Ok(dg) => dg,
                Err(SquareError::Axioms(rep)) => {
                    for v in &rep.violations {
                        r.line(v.to_string());
                    }
                    r.line("not a crossed module; no double groupoid");
                    r.verdict = Verdict::Fail;
                    return Ok(());
                }
                Err(e) => return input(e.to_string()),
            };
            let back = dg.to_xmod();
            r.line(format!("carrier: {} squares", dg.len()));
            r.set("carrier", dg.len());
            let back_ok = check_axioms(&back).passed();
            match find_isomorphism(&xm, &back, guard)? {
                Some(iso) => {
                    let mut maps = Vec::new();
                    for x in xm.base().objects() {
                        let (g, h) = (xm.group(x), back.group(x));
                        let pairs: Vec<String> = g.elements().map(|m| format!("{} -> {}", g.name(m), h.name(iso.maps[x.0][m]))).collect();
                        r.line(format!("M({}) -> M'({}): {}", xm.base().object_name(x), back.base().object_name(x), pairs.join(", ")));
                        maps.push(pairs);
                    }
                    r.set("isomorphism", maps);
                    r.verdict = verdict(back_ok);
                }
                None => {
                    r.line("no isomorphism fixing the base");
                    r.set("isomorphism", Value::Null);
                    r.verdict = Verdict::Fail;
                }
            }
            r.set("recovered_axioms_hold", back_ok);
        }
    }
    Ok(())
}

// ---- cubes ----

fn cube_lines(g: &FiniteGroupoid, id: &str, v: &CubeVerdict, r: &mut Report) -> Value {
    if let Some(f) = &v.face_failure {
        r.line(format!(
            "cube {id}: face {} does not commute: left·bottom = {}, top·right = {}",
            f.face,
            g.arrow_name(f.sides.0),
            g.arrow_name(f.sides.1)
        ));
        return json!({"id": id, "commutative": false, "failed_face": f.face.to_string(), "face": f.square.show(g)});
    }
    let comp = v.composite.map(|c| c.show(g));
    if v.commutative() {
        r.line(format!("cube {id}: commutative, folded composite {}", v.top.show(g)));
    } else {
        r.line(format!(
            "cube {id}: folded composite {} differs from top face {}",
            comp.as_deref().unwrap_or("(does not commute)"),
            v.top.show(g)
        ));
    }
    json!({"id": id, "commutative": v.commutative(), "composite": comp, "top": v.top.show(g)})
}

fn run_cube(loader: &Loader, cmd: &CubeCommand, r: &mut Report) -> Res<()> {
    let (path, wanted): (&PathBuf, Vec<String>) = match cmd {
        CubeCommand::Check { cubes, ids } => (cubes, ids.clone()),
        CubeCommand::Compose {
            cubes, first, second, ..
        } => (cubes, first.iter().chain(second).cloned().collect()),
    };
    let doc = expect_doc!(loader, path, Cubes, "cube");
    let g = &doc.groupoid;
    let find = |id: &str| {
        doc.cubes
            .iter()
            .find(|(n, _)| n == id)
            .map(|(_, c)| *c)
            .ok_or_else(|| CliError::Input(format!("unknown cube `{id}`")))
    };
    let ids: Vec<String> = if wanted.is_empty() {
        doc.cubes.iter().map(|(n, _)| n.clone()).collect()
    } else {
        wanted
    };
    match cmd {
        CubeCommand::Check { .. } => {
            let mut rows = Vec::new();
            let mut ok = true;
            for id in &ids {
                let v = commutative_cube_check(g, &find(id)?).map_err(|e| CliError::Input(e.to_string()))?;
                ok &= v.commutative();
                rows.push(cube_lines(g, id, &v, r));
            }
            r.set("cubes", rows);
            r.verdict = verdict(ok);
        }
        CubeCommand::Compose { dir, .. } => {
            let [a, b] = match ids.as_slice() {
                [a, b, ..] => [a.clone(), b.clone()],
                _ => return input("cube compose needs two cubes"),
            };
            let axis = match dir {
                AxisArg::X => Axis::X,
                AxisArg::Y => Axis::Y,
                AxisArg::Z => Axis::Z,
            };
            r.set("axis", axis.to_string());
            r.set("ids", [&a, &b]);
            match cube_compose_check(g, &find(&a)?, &find(&b)?, axis) {
                Ok(v) => {
                    r.line(format!("{a} commutative: {}, {b} commutative: {}", v.first, v.second));
                    let glued = cube_lines(g, &format!("{a}+{b}"), &v.glued, r);
                    r.set("first_commutative", v.first);
                    r.set("second_commutative", v.second);
                    r.set("glued", glued);
                    r.verdict = if v.first && v.second {
                        verdict(v.glued.commutative())
                    } else {
                        Verdict::Computed
                    };
                }
                Err(e @ gpdkit::dblgpd::CubeError::FaceMismatch(_)) => {
                    r.line(e.to_string());
                    r.set("mismatch", e.to_string());
                    r.verdict = Verdict::Fail;
                }
                Err(e) => return input(e.to_string()),
            }
        }
    }
    Ok(())
}

// ---- Eckmann-Hilton ----

fn run_eh(inst: &EhInstance, r: &mut Report) {
    let rep = eckmann_hilton_check(inst);
    let n = |i: usize| inst.names[i].as_str();
    let mut failures = Vec::new();
    for f in &rep.premise_failures {
        match *f {
            PremiseFailure::Unit { op, element } => {
                r.line(format!("unit premise fails for op{op} at {}", n(element)));
                failures.push(json!({"premise": format!("unit{op}"), "element": n(element)}));
            }
            PremiseFailure::Interchange { a, b, c, d, lhs, rhs } => {
                r.line(format!(
                    "interchange fails at a={}, b={}, c={}, d={}: (a∘₂b)∘₁(c∘₂d) = {} but (a∘₁c)∘₂(b∘₁d) = {}",
                    n(a),
                    n(b),
                    n(c),
                    n(d),
                    n(lhs),
                    n(rhs)
                ));
                failures.push(json!({
                    "premise": "interchange",
                    "a": n(a), "b": n(b), "c": n(c), "d": n(d),
                    "lhs": n(lhs), "rhs": n(rhs),
                }));
            }
        }
    }
    r.set("size", inst.len());
    r.set("premise_failures", failures);
    match &rep.conclusion {
        None => {
            r.set("conclusion", Value::Null);
        }
        Some(c) => {
            r.line("premises hold");
            r.line(format!("units coincide: {}", c.units_equal));
            match c.ops_differ {
                None => r.line("the two operations coincide"),
                Some((a, b)) => r.line(format!("operations differ at ({}, {})", n(a), n(b))),
            }
            match c.noncommuting {
                None => r.line("the operation is commutative"),
                Some((a, b)) => r.line(format!("{} and {} do not commute", n(a), n(b))),
            }
            r.set(
                "conclusion",
                json!({
                    "units_equal": c.units_equal,
                    "ops_differ": c.ops_differ.map(|(a, b)| [n(a), n(b)]),
                    "noncommuting": c.noncommuting.map(|(a, b)| [n(a), n(b)]),
                }),
            );
        }
    }
    r.verdict = verdict(rep.passed());
}
