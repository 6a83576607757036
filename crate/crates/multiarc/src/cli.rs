//! Command line front end. Every command prints one JSON envelope (or DOT,
//! or plain path lines) and reports whether its asserted checks held.

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use multiarc_core::bcounts::b_connectivity;
use multiarc_core::combing::{assignment, comb, detect_collapse, surgery};
use multiarc_core::graph::b_graph;
use multiarc_core::paths::{all_geodesics, distance, geodesic_count};
use multiarc_core::{
    Arc, ArcUniverse, Distance, GraphMode, Head, Multiarc, MultiarcGraph, OrientedArc, Path, Surface, SurfaceSpec,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dot::to_dot;
use crate::dto::{self, ArcDto, GraphDto, PathDto, SurfaceSpecDto};
use crate::error::{CliError, CliResult};
use crate::experiments::{self, PairMode, Verdict};

#[derive(Parser, Debug)]
#[command(name = "multiarc", version, about = "Build and check k-multiarc graphs of marked surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Use the convex n-gon.
    #[arg(long, global = true)]
    pub polygon: Option<u32>,
    /// Surface description: {"genus":..,"boundary_points":[..],"interior_points":..}.
    #[arg(long, global = true, conflicts_with = "polygon")]
    pub surface: Option<PathBuf>,
    /// Defaults to polygon for polygons and triangulated otherwise.
    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendArg>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Build a ball of this radius instead of the whole graph.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Largest coordinate sum of arcs considered on non-polygon surfaces.
    #[arg(long = "arc-bound", global = true)]
    pub arc_bound: Option<u32>,
    /// Ball centre as a JSON list of arcs; defaults to part of the reference triangulation.
    #[arg(long, global = true)]
    pub center: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Leave out the timestamp so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Worker threads; all results are collected in a fixed order.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long = "vertex-limit", global = true, default_value_t = 1_000_000)]
    pub vertex_limit: usize,
    #[arg(long = "geodesic-cap", global = true, default_value_t = 1_000_000)]
    pub geodesic_cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendArg {
    Polygon,
    Triangulated,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    /// One path per line in arc-label notation.
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Surface statistics.
    Info,
    /// Build the graph (or a ball in it).
    Build,
    /// Distance between two vertices.
    Dist(Pair),
    /// Shortest paths between two vertices.
    Geodesics {
        #[command(flatten)]
        pair: Pair,
        /// Every geodesic rather than one.
        #[arg(long)]
        all: bool,
    },
    /// Geodesics between vertices sharing arcs stay in the shared stratum.
    ConvexitySweep {
        /// Check this many seeded pairs instead of all of them.
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Comb a multiarc along an oriented arc.
    Comb {
        /// JSON list of arcs.
        #[arg(long)]
        alpha: String,
        /// JSON arc; a chord [i, j] is oriented from i to j.
        #[arg(long)]
        x: String,
        /// Head at the start of a normal arc's canonical edge.
        #[arg(long)]
        reverse: bool,
    },
    /// Surgery on one path, or a seeded sweep over random paths.
    Surgery {
        /// JSON file holding a list of vertices.
        #[arg(long)]
        path: Option<PathBuf>,
        /// JSON arc shared by the path's ends.
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = 1000)]
        paths: usize,
    },
    /// Automorphism group and the dihedral action.
    Aut {
        /// Only check the dihedral injection.
        #[arg(long)]
        dihedral_only: bool,
    },
    /// Induced automorphisms from level k to level k-1.
    Tower {
        #[arg(long, default_value_t = 100_000)]
        group_limit: usize,
    },
    /// Sub-polygon embeddings into polygons up to the given size.
    EmbedCheck,
    /// Common neighbours of triangles in the graph.
    PermuteSweep,
    /// The subgraph on vertices with a non-separating arc or an ear.
    Bgraph,
    /// Disjoint separating arcs on a punctured sphere (default five
    /// punctures) and connectivity of B^[1] of a polygon.
    Counts {
        #[arg(long, default_value_t = 10)]
        b_polygon: u32,
    },
    /// Exhaustive collapse and assignment checks.
    CombingSweep {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
    /// JSON list of arcs.
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeDto {
    Complete,
    Ball { radius: usize, arc_bound: u32, center: Option<Vec<ArcDto>> },
}

/// Everything that determines a run's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub surface: SurfaceSpecDto,
    pub backend: String,
    pub k: Option<usize>,
    pub mode: ModeDto,
    pub seed: u64,
    pub params: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub config: RunConfig,
    pub holds: bool,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// What a command produced, before formatting.
pub struct Output {
    pub holds: bool,
    pub result: Value,
    pub dot: Option<String>,
    pub text: Option<String>,
}

impl Output {
    fn json(holds: bool, result: Value) -> Self {
        Output { holds, result, dot: None, text: None }
    }

    fn verdicts(vs: Vec<Verdict>) -> CliResult<Self> {
        let holds = vs.iter().all(|v| v.holds);
        Ok(Output::json(holds, serde_json::to_value(vs)?))
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info => "info",
        Command::Build => "build",
        Command::Dist(_) => "dist",
        Command::Geodesics { .. } => "geodesics",
        Command::ConvexitySweep { .. } => "convexity-sweep",
        Command::Comb { .. } => "comb",
        Command::Surgery { .. } => "surgery",
        Command::Aut { .. } => "aut",
        Command::Tower { .. } => "tower",
        Command::EmbedCheck => "embed-check",
        Command::PermuteSweep => "permute-sweep",
        Command::Bgraph => "bgraph",
        Command::Counts { .. } => "counts",
        Command::CombingSweep { .. } => "combing-sweep",
    }
}

fn params(c: &Command) -> Value {
    match c {
        Command::Info | Command::Build | Command::EmbedCheck | Command::PermuteSweep | Command::Bgraph => json!({}),
        Command::Dist(p) => json!({"from": p.from, "to": p.to}),
        Command::Geodesics { pair, all } => json!({"from": pair.from, "to": pair.to, "all": all}),
        Command::ConvexitySweep { pairs } => json!({ "pairs": pairs }),
        Command::Comb { alpha, x, reverse } => json!({"alpha": alpha, "x": x, "reverse": reverse}),
        Command::Surgery { path, x, paths } => json!({"path": path, "x": x, "paths": paths}),
        Command::Aut { dihedral_only } => json!({ "dihedral_only": dihedral_only }),
        Command::Tower { group_limit } => json!({ "group_limit": group_limit }),
        Command::Counts { b_polygon } => json!({ "b_polygon": b_polygon }),
        Command::CombingSweep { kmax } => json!({ "kmax": kmax }),
    }
}

struct Ctx {
    common: Common,
    surface: Surface,
}

impl Ctx {
    fn new(common: &Common, cmd: &Command) -> CliResult<Self> {
        let spec = match (&common.polygon, &common.surface) {
            (Some(n), _) => SurfaceSpec::polygon(*n),
            (None, Some(p)) => {
                let d: SurfaceSpecDto = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                d.to_spec()?
            }
            (None, None) if matches!(cmd, Command::Counts { .. }) => SurfaceSpec::punctured_sphere(5),
            (None, None) => return Err(CliError::Usage("give --polygon N or --surface FILE".into())),
        };
        let backend = match common.backend {
            Some(BackendArg::Polygon) => "polygon",
            Some(BackendArg::Triangulated) => "triangulated",
            None if spec.as_polygon().is_some() => "polygon",
            None => "triangulated",
        };
        Ok(Ctx { common: common.clone(), surface: dto::surface_for(&spec, backend)? })
    }

    fn k(&self) -> CliResult<usize> {
        self.common.k.ok_or_else(|| CliError::Usage("this command needs --k".into()))
    }

    fn polygon(&self) -> CliResult<u32> {
        self.surface
            .polygon_size()
            .ok_or_else(|| CliError::Usage("this command needs the polygon backend".into()))
    }

    fn arc_bound(&self) -> u32 {
        self.common.arc_bound.unwrap_or(if self.surface.polygon_size().is_some() { 0 } else { 4 })
    }

    fn multiarc(&self, text: &str) -> CliResult<Multiarc> {
        let arcs: Vec<ArcDto> = serde_json::from_str(text)?;
        dto::multiarc_from(&self.surface, &arcs)
    }

    fn arc(&self, text: &str) -> CliResult<Arc> {
        let a: ArcDto = serde_json::from_str(text)?;
        a.to_arc(&self.surface)
    }

    fn center(&self, k: usize) -> CliResult<Multiarc> {
        match &self.common.center {
            Some(c) => self.multiarc(c),
            None => {
                let t = self.surface.reference_triangulation();
                Ok(Multiarc::from_arcs_unchecked(t.arcs().arcs()[..k].to_vec()))
            }
        }
    }

    fn mode(&self, k: usize) -> CliResult<GraphMode> {
        match self.common.radius {
            None if self.surface.polygon_size().is_some() => Ok(GraphMode::Complete),
            None => Err(CliError::Usage("non-polygon surfaces need --radius for a ball".into())),
            Some(radius) => Ok(GraphMode::Ball { center: self.center(k)?, radius, arc_bound: self.arc_bound() }),
        }
    }

    fn graph_at(&self, k: usize) -> CliResult<MultiarcGraph> {
        Ok(MultiarcGraph::build_limited(&self.surface, k, self.mode(k)?, self.common.vertex_limit)?)
    }

    fn graph(&self) -> CliResult<MultiarcGraph> {
        self.graph_at(self.k()?)
    }

    fn config(&self, c: &Command) -> RunConfig {
        let mode = match self.common.radius {
            None => ModeDto::Complete,
            Some(radius) => ModeDto::Ball {
                radius,
                arc_bound: self.arc_bound(),
                center: self.common.center.as_ref().and_then(|c| serde_json::from_str(c).ok()),
            },
        };
        RunConfig {
            surface: self.surface.spec().into(),
            backend: dto::backend_name(self.surface.backend()).into(),
            k: self.common.k,
            mode,
            seed: self.common.seed,
            params: params(c),
        }
    }
}

fn distance_json(d: Distance) -> Value {
    match d {
        Distance::Exact(n) => json!({"kind": "exact", "value": n}),
        Distance::WithinBall(n) => json!({"kind": "within_ball", "value": n}),
        Distance::Unknown => json!({"kind": "unknown"}),
    }
}

fn path_line(p: &Path) -> String {
    p.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" -> ")
}

fn oriented(x: Arc, reverse: bool) -> OrientedArc {
    let o = match &x {
        Arc::Chord(c) => OrientedArc { head: Head::Vertex(c.hi()), arc: x.clone() },
        Arc::Normal(_) => OrientedArc { head: Head::Terminal(1), arc: x.clone() },
    };
    if reverse {
        o.reversed()
    } else {
        o
    }
}

fn run_command(ctx: &Ctx, cmd: &Command) -> CliResult<Output> {
    let s = &ctx.surface;
    Ok(match cmd {
        Command::Info => {
            let spec = s.spec();
            let mut r = json!({
                "surface": SurfaceSpecDto::from(spec),
                "backend": dto::backend_name(s.backend()),
                "complexity": s.complexity(),
                "euler_characteristic": spec.euler_characteristic(),
                "marked_points": spec.marked_points(),
                "exceptional": spec.is_exceptional(),
                "reference_triangulation": dto::multiarc_dto(s.reference_triangulation().arcs()),
            });
            if let Some(n) = s.polygon_size() {
                r["diagonals"] = json!(n * (n - 3) / 2);
            }
            Output::json(true, r)
        }
        Command::Build => {
            let g = ctx.graph()?;
            let mut o = Output::json(true, serde_json::to_value(GraphDto::from(&g))?);
            o.dot = Some(to_dot(&g));
            o
        }
        Command::Dist(p) => {
            let g = ctx.graph()?;
            let d = distance(&g, &ctx.multiarc(&p.from)?, &ctx.multiarc(&p.to)?)?;
            Output::json(true, json!({ "distance": distance_json(d) }))
        }
        Command::Geodesics { pair, all } => {
            let g = ctx.graph()?;
            let (u, v) = (ctx.multiarc(&pair.from)?, ctx.multiarc(&pair.to)?);
            let mut paths = all_geodesics(&g, &u, &v, ctx.common.geodesic_cap)?;
            if !all {
                paths.truncate(1);
            }
            let count = geodesic_count(&g, g.require(&u)?, g.require(&v)?);
            let mut o = Output::json(
                true,
                json!({
                    "count": count.to_string(),
                    "paths": paths.iter().map(PathDto::from).collect::<Vec<_>>(),
                }),
            );
            o.text = Some(paths.iter().map(|p| path_line(p) + "\n").collect());
            o
        }
        Command::ConvexitySweep { pairs } => {
            let ks = match ctx.common.k {
                Some(k) => vec![k],
                None => (1..=s.complexity()).collect(),
            };
            let mode = match pairs {
                Some(p) => PairMode::Sampled { pairs: *p, seed: ctx.common.seed },
                None => PairMode::Exhaustive,
            };
            let mut vs = Vec::new();
            for k in ks {
                let g = ctx.graph_at(k)?;
                if !g.is_complete() {
                    return Err(CliError::Usage("convexity sweeps need a complete graph".into()));
                }
                vs.push(experiments::convexity_sweep(&g, mode, ctx.common.geodesic_cap)?);
            }
            Output::verdicts(vs)?
        }
        Command::Comb { alpha, x, reverse } => {
            let alpha = ctx.multiarc(alpha)?;
            let x = oriented(ctx.arc(x)?, *reverse);
            let mut images = Vec::new();
            for a in &alpha {
                if *a == x.arc {
                    continue;
                }
                let r = comb(s, a, &x)?;
                images.push(json!({"arc": ArcDto::from(a), "images": r.images.iter().map(ArcDto::from).collect::<Vec<_>>()}));
            }
            let collapse = detect_collapse(s, &alpha, &x)?;
            let asg = assignment(s, &alpha, &x)?;
            Output::json(
                true,
                json!({
                    "combs": images,
                    "collapsing": collapse.as_ref().map(ArcDto::from),
                    "assignment": asg.pairs.iter().map(|(a, b)| [ArcDto::from(a), ArcDto::from(b)]).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Surgery { path: Some(file), x, .. } => {
            let x = ctx.arc(x.as_deref().ok_or_else(|| CliError::Usage("--path needs --x".into()))?)?;
            let raw: Vec<Vec<ArcDto>> = serde_json::from_str(&std::fs::read_to_string(file)?)?;
            let verts = raw.iter().map(|v| dto::multiarc_from(s, v)).collect::<CliResult<Vec<_>>>()?;
            let p = Path::new(verts);
            let universe = match s.polygon_size() {
                Some(_) => None,
                None => Some(ArcUniverse::new(s, ctx.arc_bound())?),
            };
            let out = surgery(s, &p, &x, universe.as_ref())?;
            let in_stratum = out.path.vertices.iter().all(|v| v.contains(&x));
            let holds = in_stratum && out.path.len() <= p.len();
            let mut o = Output::json(
                holds,
                json!({
                    "before": PathDto::from(&p),
                    "after": PathDto::from(&out.path),
                    "verdict": {"in_stratum": in_stratum, "old_len": p.len(), "new_len": out.path.len()},
                    "fallback_segments": out.fallback_segments,
                }),
            );
            o.text = Some(format!("{}\n{}\n", path_line(&p), path_line(&out.path)));
            o
        }
        Command::Surgery { path: None, paths, .. } => {
            let g = ctx.graph()?;
            Output::verdicts(vec![experiments::surgery_sweep(&g, *paths, ctx.common.seed)?])?
        }
        Command::Aut { dihedral_only } => {
            let g = ctx.graph()?;
            Output::verdicts(vec![experiments::aut_report(&g, !dihedral_only)?])?
        }
        Command::Tower { group_limit } => {
            let k = ctx.common.k.unwrap_or(2);
            Output::verdicts(vec![experiments::tower(ctx.polygon()?, k, *group_limit)?])?
        }
        Command::EmbedCheck => Output::verdicts(vec![experiments::embed_check(ctx.polygon()?)?])?,
        Command::PermuteSweep => {
            let g = ctx.graph()?;
            Output::verdicts(vec![experiments::permute_sweep(&g)?])?
        }
        Command::Bgraph => {
            let k = ctx.k()?;
            let b = b_graph(s, k, ctx.mode(k)?)?;
            let comps = b.components();
            let mut r = serde_json::to_value(GraphDto::from(&b))?;
            r["components"] = json!(comps.len());
            if k == 1 && b.is_complete() {
                let c = b_connectivity(s, GraphMode::Complete)?;
                r["isolated"] = json!(c.isolated);
            }
            let mut o = Output::json(true, r);
            o.dot = Some(to_dot(&b));
            o
        }
        Command::Counts { b_polygon } => {
            let bound = ctx.common.arc_bound.unwrap_or(4);
            Output::verdicts(vec![experiments::counts(s, bound, *b_polygon, ctx.common.vertex_limit)?])?
        }
        Command::CombingSweep { kmax } => Output::verdicts(vec![experiments::combing_sweep(ctx.polygon()?, *kmax)?])?,
    })
}

/// Render the output of `cli` as it would be written.
pub fn render(cli: &Cli) -> CliResult<(String, bool)> {
    let ctx = Ctx::new(&cli.common, &cli.command)?;
    let out = match cli.common.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| run_command(&ctx, &cli.command))?,
        None => run_command(&ctx, &cli.command)?,
    };
    let text = match cli.common.format {
        Format::Dot => out.dot.ok_or_else(|| CliError::Usage("this command has no DOT output".into()))?,
        Format::Text => out.text.ok_or_else(|| CliError::Usage("this command has no text output".into()))?,
        Format::Json => {
            let env = Envelope {
                command: command_name(&cli.command).into(),
                config: ctx.config(&cli.command),
                holds: out.holds,
                result: out.result,
                timestamp: (!cli.common.deterministic)
                    .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)),
            };
            serde_json::to_string_pretty(&env)? + "\n"
        }
    };
    Ok((text, out.holds))
}

/// Parse arguments, run, write the output and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let written = render(&cli).and_then(|(text, holds)| {
        match &cli.common.out {
            Some(p) => std::fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(holds)
    });
    match written {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (String, bool) {
        let cli = Cli::try_parse_from(std::iter::once("multiarc").chain(args.iter().copied())).unwrap();
        render(&cli).unwrap()
    }

    #[test]
    fn build_round_trips() {
        let (text, holds) = run(&["build", "--polygon", "6", "--k", "2", "--deterministic"]);
        assert!(holds);
        let env: Envelope = serde_json::from_str(&text).unwrap();
        assert!(env.timestamp.is_none());
        let g: GraphDto = serde_json::from_value(env.result).unwrap();
        assert_eq!(g.vertices.len(), 21);
        assert_eq!(g.to_graph().unwrap().num_edges(), g.edges.len());
    }

    #[test]
    fn aut_of_the_pentagon() {
        let (text, holds) = run(&["aut", "--polygon", "5", "--k", "2", "--deterministic"]);
        assert!(holds);
        let env: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(env.result[0]["stats"]["order"], json!("10"));
    }

    #[test]
    fn geodesic_lines() {
        let (text, _) = run(&["geodesics", "--all", "--polygon", "5", "--k", "1", "--from", "[[0,2]]", "--to", "[[1,3]]", "--format", "text"]);
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("0-2 -> "));
    }

    #[test]
    fn comb_in_the_hexagon() {
        let (text, _) = run(&["comb", "--polygon", "6", "--alpha", "[[0,2]]", "--x", "[1,4]", "--deterministic"]);
        let env: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(env.result["combs"][0]["images"], json!([[0, 4], [2, 4]]));
        assert_eq!(env.result["assignment"], json!([[[0, 2], [2, 4]]]));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(main_with(["multiarc", "build", "--k", "2"]), 2);
        assert_eq!(main_with(["multiarc", "nonsense"]), 2);
    }
}
