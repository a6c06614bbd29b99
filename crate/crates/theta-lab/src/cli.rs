//! The `theta-lab` command line.
//!
//! Exit codes: 0 when everything requested succeeded, 1 when a
//! verification failed (a JSON report is printed), 2 on usage errors.
//!
//! If `THETA_LAB_CACHE` names a directory, `Ψ` values computed by the
//! conormal oracle are loaded from and saved to a JSON file there, keyed by
//! the oracle parameters.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::fourier::{self, ConormalOracle, Fourier, GluedBimodule};
use crate::hecke::{self, basis_of, specialize, ModuleVector, Specialization};
use crate::kl::{kl_table, w_graph, KLTable, WGraph};
use crate::matchings::{Kind, Matching, Model, OrbitTable, Refl};
use crate::oracle::{enumerate_orbits_fq, FiniteFieldSpace};
use crate::partitions::enumerate_rq;
use crate::verify::{self, Status, Suite};
use crate::weylreps::{springer_o_even, springer_sp, verify_theta_type_i, verify_theta_type_ii, ThetaReport};
use crate::{Error, Result};

pub const CACHE_ENV: &str = "THETA_LAB_CACHE";

#[derive(Parser, Debug)]
#[command(name = "theta-lab", version, about = "Orbits, Hecke modules, KL bases and theta checks for type I and type II dual pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the conormal sampler.
    #[arg(long, global = true, default_value_t = ConormalOracle::default().seed)]
    pub seed: u64,
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the orbit labels with dimensions and descent sets.
    Enumerate {
        #[command(flatten)]
        model: ModelArgs,
        /// Also count orbit sizes over F_q by brute force.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Local type of each simple reflection at each label.
    Classify {
        #[command(flatten)]
        model: ModelArgs,
        /// Restrict to one label, e.g. "2>1, 1>-1".
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Apply a word in the generators to a basis vector.
    Act {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        sigma: String,
        /// Generators such as "s1 s'2 t", applied right to left.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Also specialize at v² = q.
        #[arg(long)]
        q: Option<i64>,
    },
    /// Kazhdan-Lusztig polynomials.
    Kl {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// W-graph, cells and optional DOT output.
    Wgraph {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Fourier bijections on labels.
    Fourier {
        #[arg(value_enum)]
        map: FourierMap,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Character-level theta decomposition.
    Theta {
        #[arg(long = "type", value_enum)]
        kind: ThetaType,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Print module and predicted multiplicities side by side.
        #[arg(long)]
        table: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        #[arg(long, default_value_t = 3)]
        q: u64,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelArg {
    #[value(name = "typeII")]
    TypeII,
    #[value(name = "typeI-m1")]
    TypeIM1,
    #[value(name = "typeI-m2")]
    TypeIM2,
    /// The glued type I bimodule, on the `C'`-basis.
    #[value(name = "typeI")]
    TypeI,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierMap {
    Phi,
    Psi,
    Iota,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaType {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    All,
    Orbits,
    Kl,
    Wgraph,
    Fourier,
    Transport,
    Multiplicity,
    Theta,
    Oracle,
    Relations,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Orbits => vec![Suite::Orbits],
            SuiteArg::Kl => vec![Suite::Kl],
            SuiteArg::Wgraph => vec![Suite::Wgraph],
            SuiteArg::Fourier => vec![Suite::Fourier],
            SuiteArg::Transport => vec![Suite::Transport],
            SuiteArg::Multiplicity => vec![Suite::Multiplicity],
            SuiteArg::Theta => vec![Suite::Theta],
            SuiteArg::Oracle => vec![Suite::Oracle],
            SuiteArg::Relations => vec![Suite::Relations],
        }
    }
}

impl ModelArgs {
    fn model(self) -> Result<Model> {
        let (m, n) = (self.m, self.n);
        match self.model {
            ModelArg::TypeII => Ok(Model::TypeII { m, n }),
            ModelArg::TypeIM1 => Ok(Model::TypeIM1 { m, n }),
            ModelArg::TypeIM2 => Ok(Model::TypeIM2 { m, n }),
            ModelArg::TypeI => Err(Error::InvalidInput("this command needs one of typeII, typeI-m1, typeI-m2".into())),
        }
    }
}

/// Run on process arguments and return the exit code.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Run on explicit arguments (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if cli.threads == 0 {
        let _ = writeln!(err, "error: --threads must be at least 1");
        return 2;
    }
    let oracle = ConormalOracle { seed: cli.seed, ..ConormalOracle::default() };
    let fourier = match fourier::init_shared(oracle) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    if let Some(dir) = &cache {
        if let Err(e) = load_cache(fourier, dir) {
            let _ = writeln!(err, "warning: ignoring cache: {e}");
        }
    }
    let code = match dispatch(&cli, fourier, out) {
        Ok(code) => code,
        Err(Error::InvalidInput(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(e) => {
            let report = serde_json::json!({ "passed": false, "error": e.to_string() });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
            1
        }
    };
    if let Some(dir) = &cache {
        if let Err(e) = save_cache(fourier, dir) {
            let _ = writeln!(err, "warning: could not write cache: {e}");
        }
    }
    code
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    oracle: ConormalOracle,
    psi: Vec<(usize, usize, Matching, Matching)>,
}

fn cache_path(fourier: &Fourier, dir: &Path) -> PathBuf {
    let o = fourier.oracle;
    dir.join(format!("psi-p{}-s{}-n{}.json", o.prime, o.seed, o.samples))
}

fn load_cache(fourier: &Fourier, dir: &Path) -> std::result::Result<(), String> {
    let path = cache_path(fourier, dir);
    if !path.exists() {
        return Ok(());
    }
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if file.oracle != fourier.oracle {
        return Err(format!("{} was written with other oracle parameters", path.display()));
    }
    for (m, n, s, t) in file.psi {
        fourier.seed_psi(m, n, [(s, t)]);
    }
    Ok(())
}

fn save_cache(fourier: &Fourier, dir: &Path) -> std::result::Result<(), String> {
    let psi = fourier.psi_entries();
    if psi.is_empty() {
        return Ok(());
    }
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let path = cache_path(fourier, dir);
    let text = serde_json::to_string(&CacheFile { oracle: fourier.oracle, psi }).expect("serializable");
    std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn io(e: std::io::Error) -> Error {
    Error::Inconsistent(format!("write failed: {e}"))
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable")).map_err(io)
}

fn parse_label(s: &str) -> Result<Matching> {
    s.parse()
}

fn parse_word(s: &str) -> Result<Vec<Refl>> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(str::parse).collect()
}

fn refl_list(v: &[Refl]) -> String {
    format!("{{{}}}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn dispatch(cli: &Cli, fourier: &Fourier, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Enumerate { model, q } => enumerate(model.model()?, *q, cli.json, out),
        Command::Classify { model, sigma } => classify(model.model()?, sigma.as_deref(), cli.json, out),
        Command::Act { model, sigma, word, q } => act(*model, fourier, sigma, word, *q, cli.json, out),
        Command::Kl { model, sigma } => kl(model.model()?, sigma.as_deref(), cli.json, out),
        Command::Wgraph { model, dot } => wgraph(*model, fourier, dot.as_deref(), cli.json, out),
        Command::Fourier { map, m, n } => fourier_map(*map, fourier, *m, *n, cli.json, out),
        Command::Theta { kind, m, n, table } => theta(*kind, *m, *n, *table, cli.json, out),
        Command::Verify { suite, max_rank, q } => {
            if *q < 3 || !crate::linalg::is_prime(*q) {
                return Err(Error::InvalidInput(format!("--q must be an odd prime, got {q}")));
            }
            let opts = verify::Options { max_rank: *max_rank, q: *q, threads: cli.threads };
            verify_cmd(&suite.suites(), &opts, fourier, cli.json, out)
        }
    }
}

#[derive(Serialize)]
struct LabelRow {
    label: Matching,
    display: String,
    dim: usize,
    descents: Vec<Refl>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fq_size: Option<u64>,
}

fn enumerate(model: Model, q: Option<u64>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let table = OrbitTable::new(model)?;
    let sizes = match q {
        Some(q) => {
            let space = FiniteFieldSpace::new(model, q).map_err(|e| match e {
                Error::Budget(b) => Error::InvalidInput(b),
                e => e,
            })?;
            let orbits = enumerate_orbits_fq(&space)?;
            Some(orbits.orbits.iter().map(|o| (o.label.clone(), o.size)).collect::<std::collections::HashMap<_, _>>())
        }
        None => None,
    };
    let rows: Vec<LabelRow> = table
        .labels
        .iter()
        .enumerate()
        .map(|(i, s)| LabelRow {
            label: s.clone(),
            display: s.to_string(),
            dim: table.dims[i],
            descents: table.descent_indices(i).into_iter().map(|r| table.reflections[r]).collect(),
            fq_size: sizes.as_ref().and_then(|m| m.get(s).copied()),
        })
        .collect();
    if json {
        json_line(out, &serde_json::json!({ "model": model, "labels": rows }))?;
    } else {
        for r in &rows {
            write!(out, "{}\t{}\t{}", r.display, r.dim, refl_list(&r.descents)).map_err(io)?;
            if let Some(s) = r.fq_size {
                write!(out, "\t{s}").map_err(io)?;
            }
            writeln!(out).map_err(io)?;
        }
    }
    Ok(0)
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::G => "G",
        Kind::UPlus => "U+",
        Kind::UMinus => "U-",
    }
}

fn classify(model: Model, sigma: Option<&str>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let table = OrbitTable::new(model)?;
    let rows: Vec<usize> = match sigma {
        Some(s) => {
            let s = parse_label(s)?;
            vec![table.index_of(&s).ok_or_else(|| Error::InvalidInput(format!("{s} is not a label of {model}")))?]
        }
        None => (0..table.len()).collect(),
    };
    let mut entries = Vec::new();
    for &i in &rows {
        for (r, &s) in table.reflections.iter().enumerate() {
            let kind = table.kinds[r][i];
            let companion = (kind != Kind::G).then(|| table.labels[table.action[r][i]].to_string());
            entries.push(serde_json::json!({
                "sigma": table.labels[i].to_string(),
                "generator": s.to_string(),
                "kind": kind_name(kind),
                "companion": companion,
            }));
            if !json {
                writeln!(out, "{}\t{s}\t{}\t{}", table.labels[i], kind_name(kind), companion.as_deref().unwrap_or("-")).map_err(io)?;
            }
        }
    }
    if json {
        json_line(out, &entries)?;
    }
    Ok(0)
}

fn write_vector(
    out: &mut dyn Write,
    labels: &[Matching],
    v: &ModuleVector,
    q: Option<i64>,
    json: bool,
) -> Result<()> {
    let special = match q {
        Some(q) => Some(specialize(v, Specialization::Q(q)).ok_or_else(|| {
            Error::InvalidInput(format!("odd powers of v remain; cannot set v² = {q}"))
        })?),
        None => None,
    };
    let rows: Vec<serde_json::Value> = v
        .support()
        .map(|i| {
            serde_json::json!({
                "label": labels[i].to_string(),
                "coefficient": v.coords[i].to_string(),
                "specialized": special.as_ref().map(|s| s[i].to_string()),
            })
        })
        .collect();
    if json {
        return json_line(out, &rows);
    }
    for i in v.support() {
        write!(out, "{}\t{}", labels[i], v.coords[i]).map_err(io)?;
        if let Some(s) = &special {
            write!(out, "\t{}", s[i]).map_err(io)?;
        }
        writeln!(out).map_err(io)?;
    }
    Ok(())
}

fn act(args: ModelArgs, fourier: &Fourier, sigma: &str, word: &str, q: Option<i64>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let sigma = parse_label(sigma)?;
    let word = parse_word(word)?;
    if args.model == ModelArg::TypeI {
        let g: GluedBimodule = fourier.glued_bimodule(args.m, args.n)?;
        let (h1, h2) = g.generators();
        if let Some(s) = word.iter().find(|s| !h1.contains(s) && !h2.contains(s)) {
            return Err(Error::InvalidInput(format!("{s} is not a generator of the glued bimodule")));
        }
        let i = g.model1.orbits.index_of(&sigma).ok_or_else(|| Error::InvalidInput(format!("{sigma} is not in SPM({},{})", args.m, args.n)))?;
        let v = g.act_word(&word, &ModuleVector::basis(g.len(), i));
        write_vector(out, &g.graph.vertices, &v, q, json)?;
        return Ok(0);
    }
    let table = OrbitTable::new(args.model()?)?;
    let v = hecke::act_word(&table, &word, &basis_of(&table, &sigma)?)?;
    write_vector(out, &table.labels, &v, q, json)?;
    Ok(0)
}

fn kl(model: Model, sigma: Option<&str>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let t: KLTable = kl_table(model)?;
    if json {
        json_line(out, &t.to_json())?;
        return Ok(0);
    }
    let cols: Vec<usize> = match sigma {
        Some(s) => {
            let s = parse_label(s)?;
            vec![t.orbits.index_of(&s).ok_or_else(|| Error::InvalidInput(format!("{s} is not a label of {model}")))?]
        }
        None => (0..t.len()).collect(),
    };
    for s in cols {
        for b in t.lower_set(s) {
            writeln!(out, "P[{} ; {}] = {}", t.labels()[b], t.labels()[s], t.poly(b, s)).map_err(io)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct GraphJson<'a> {
    name: String,
    graph: &'a WGraph,
    cells: Vec<Vec<usize>>,
    swaps: Vec<(usize, usize)>,
}

fn wgraph(args: ModelArgs, fourier: &Fourier, dot: Option<&Path>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let (name, graph, cells, swaps) = if args.model == ModelArg::TypeI {
        let g = fourier.glued_bimodule(args.m, args.n)?;
        (format!("glued_{}_{}", args.m, args.n), g.graph.clone(), g.cells(), g.iota_swaps())
    } else {
        let model = args.model()?;
        let g = w_graph(&kl_table(model)?)?;
        let cells = g.cells();
        (model.to_string(), g, cells, Vec::new())
    };
    if let Some(path) = dot {
        std::fs::write(path, graph.to_dot(&name, &swaps))
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        json_line(out, &GraphJson { name, graph: &graph, cells, swaps })?;
        return Ok(0);
    }
    for (i, v) in graph.vertices.iter().enumerate() {
        writeln!(out, "vertex {v}\t{}", refl_list(&graph.descents[i])).map_err(io)?;
    }
    let mut edges = graph.edges.clone();
    edges.sort();
    for e in &edges {
        writeln!(out, "edge {} -> {}\tmu={}", graph.vertices[e.from], graph.vertices[e.to], e.mu).map_err(io)?;
    }
    for (a, b) in &swaps {
        writeln!(out, "swap {} <-> {}", graph.vertices[*a], graph.vertices[*b]).map_err(io)?;
    }
    writeln!(out, "cells {}", cells.len()).map_err(io)?;
    Ok(0)
}

fn fourier_map(map: FourierMap, fourier: &Fourier, m: usize, n: usize, json: bool, out: &mut dyn Write) -> Result<i32> {
    let (symbol, pairs) = match map {
        FourierMap::Phi => ("Φ", fourier.phi_table(m, n)?.pairs.clone()),
        FourierMap::Psi => ("Ψ", fourier.psi_table(m, n)?),
        FourierMap::Iota => {
            if m == 0 {
                return Err(Error::InvalidInput("iota needs --m at least 1".into()));
            }
            let pairs = Model::TypeIM1 { m, n }
                .enumerate()
                .into_iter()
                .map(|s| Ok((s.clone(), fourier.iota_m(&s, m, n)?)))
                .collect::<Result<Vec<_>>>()?;
            ("ι", pairs)
        }
    };
    if json {
        let rows: Vec<_> = pairs.iter().map(|(a, b)| serde_json::json!({ "from": a.to_string(), "to": b.to_string() })).collect();
        json_line(out, &serde_json::json!({ "map": symbol, "m": m, "n": n, "pairs": rows }))?;
    } else {
        for (a, b) in &pairs {
            writeln!(out, "{symbol}({a}) = {b}").map_err(io)?;
        }
    }
    Ok(0)
}

fn theta(kind: ThetaType, m: usize, n: usize, table: bool, json: bool, out: &mut dyn Write) -> Result<i32> {
    let report: ThetaReport = match kind {
        ThetaType::II => verify_theta_type_ii(m, n)?,
        ThetaType::I => verify_theta_type_i(m, n)?,
    };
    let code = if report.passed() { 0 } else { 1 };
    if json || code == 1 {
        json_line(out, &report)?;
        return Ok(code);
    }
    if table {
        write!(out, "{}", report.to_table()).map_err(io)?;
        return Ok(code);
    }
    match kind {
        ThetaType::II => {
            for e in &report.rhs {
                writeln!(out, "{} × {}", e.multiplicity, e.label).map_err(io)?;
            }
        }
        ThetaType::I => {
            for q in enumerate_rq(m as u32, n as u32) {
                let e1 = springer_o_even(&q.gamma1, &q.chi1)?;
                let e2 = springer_sp(&q.gamma2, &q.chi2)?;
                let target = match (e1, e2) {
                    (Some(a), Some(b)) => format!("{a} ⊠ {b}"),
                    _ => "0".into(),
                };
                writeln!(out, "{}\t{} {:?}\t{} {:?}\t{target}", q.gamma, q.gamma1, q.chi1, q.gamma2, q.chi2).map_err(io)?;
            }
        }
    }
    Ok(code)
}

fn verify_cmd(suites: &[Suite], opts: &verify::Options, fourier: &Fourier, json: bool, out: &mut dyn Write) -> Result<i32> {
    let report = verify::run(suites, opts, fourier);
    if !json {
        for s in &report.suites {
            for c in &s.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Note => "NOTE",
                    Status::Skip => "SKIP",
                };
                writeln!(out, "{tag} [{}] {}: {}", s.suite.name(), c.name, c.detail).map_err(io)?;
            }
        }
    }
    if json || !report.passed {
        json_line(out, &report)?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("theta-lab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn phi_table_has_five_lines() {
        let (code, out, _) = run_args(&["fourier", "phi", "--m", "2", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        assert!(out.contains("Φ(∅) = 1>2"));
    }

    #[test]
    fn enumerate_type_two() {
        let (code, out, _) = run_args(&["enumerate", "--model", "typeII", "--m", "2", "--n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 7);
    }

    #[test]
    fn trivial_theta() {
        let (code, out, _) = run_args(&["theta", "--type", "II", "--m", "0", "--n", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["enumerate", "--model", "typeIII", "--m", "1", "--n", "1"]).0, 2);
        assert_eq!(run_args(&["act", "--model", "typeII", "--m", "1", "--n", "1", "--sigma", "5>5", "--word", "s1"]).0, 2);
        assert_eq!(run_args(&["kl", "--model", "typeI", "--m", "1", "--n", "1"]).0, 2);
        assert_eq!(run_args(&["verify", "--q", "4"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("s1 s'2, t").unwrap(), vec![Refl::S(1), Refl::Sp(2), Refl::T]);
        assert!(parse_word("x1").is_err());
    }
}
