use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use anyhow::{Context, Result};
use hatgame::classifiers::{classify_auto, reduce_game};
use hatgame::constructors::{self, Construction, Factor};
use hatgame::lll::{self, BoundVerdict};
use hatgame::oracle::ENUMERATION_LIMIT;
use hatgame::prisms::{solve_star_packing, PackingInstance};
use hatgame::{
    decide_winnable, parse_game, parse_strategy, print_game, print_strategy, verify_strategy, Game,
    Outcome, Rational, SearchBudget, Strategy, Verdict, Verification,
};
use serde_json::json;

use crate::report::{digest, trace_lines, Report};
use crate::{Cli, Command, Format, Method, Usage, EXIT_UNKNOWN};

/// Writes to stdout, ignoring failures such as a closed pipe so the exit code survives.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    () => { out!("\n") };
    ($($t:tt)*) => { out!("{}\n", format_args!($($t)*)) };
}

/// Strategies with more table rows than this are not printed inline.
const INLINE_ROWS: u64 = 4096;

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading `{path}`"))
    }
}

fn load_game(path: &str) -> Result<Game> {
    let text = read_input(path)?;
    parse_game(&text).with_context(|| format!("in `{path}`"))
}

fn write_output(path: &str, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing `{path}`"))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Winnable => 0,
        Verdict::Unwinnable => 1,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn table_rows(game: &Game) -> u64 {
    (0..game.len())
        .map(|v| game.space_size(game.out_neighbors(v)).unwrap_or(u64::MAX))
        .fold(0u64, u64::saturating_add)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Usage(format!("`{s}` is not a rational such as 1/3")).into())
}

fn vertex_list(game: &Game, names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| game.vertex(n).map_err(Into::into))
        .collect()
}

pub fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    let jobs = cli.jobs;
    let budget_for = |nodes: Option<u64>, colorings: Option<u64>, deterministic: bool| {
        let mut b = SearchBudget::default();
        if jobs != 1 {
            b = b.parallel(jobs);
        }
        if let Some(n) = nodes {
            b.max_nodes = n;
        }
        if let Some(c) = colorings {
            b.max_colorings = c;
        }
        b.deterministic |= deterministic;
        b
    };
    match cli.command {
        Command::Solve {
            file,
            budget_nodes,
            budget_colorings,
            deterministic,
            method,
            certificate,
        } => {
            let game = load_game(&file)?;
            let budget = budget_for(budget_nodes, budget_colorings, deterministic);
            let out = solve(&game, method, &budget)?;
            emit_outcome(&game, &out, certificate, json)
        }
        Command::Classify { file } => {
            let game = load_game(&file)?;
            let out = solve(&game, Method::Classify, &SearchBudget::default())?;
            emit_outcome(&game, &out, None, json)
        }
        Command::Verify { file, strategy } => verify(&file, &strategy, json),
        Command::Reduce { file, emit } => reduce(&file, emit, json),
        Command::Construct {
            op,
            inputs,
            strategies,
            args,
            out,
            strategy_out,
            tightness,
        } => {
            let budget = budget_for(None, None, false);
            let c = construct(&op, &inputs, &strategies, &args, &budget)?;
            emit_construction(&c, out, strategy_out, tightness, &budget, json)
        }
        Command::Bound { file, weights } => bound(&file, &weights, json),
        Command::Poly {
            file,
            weights,
            subset,
        } => poly(&file, &weights, &subset, json),
        Command::Pack {
            dims,
            prism,
            count,
            overlap,
        } => pack(dims, prism, count, overlap, json),
        Command::Report { file, format } => report(
            &file,
            json || format == Format::Json,
            &budget_for(None, None, false),
        ),
    }
}

/// Runs the chosen method and checks any certificate that is small enough to enumerate.
fn solve(game: &Game, method: Method, budget: &SearchBudget) -> Result<Outcome> {
    let out = match method {
        Method::Oracle => decide_winnable(game, budget),
        Method::Classify => classify_auto(game),
        Method::Auto => {
            let first = classify_auto(game);
            if first.verdict == Verdict::Unknown {
                let mut out = decide_winnable(game, budget);
                let mut trace = first.trace;
                trace.append(&mut out.trace);
                out.trace = trace;
                out
            } else {
                first
            }
        }
    };
    if let Some(f) = &out.certificate {
        if game.total_space().is_some_and(|s| s <= ENUMERATION_LIMIT)
            && !verify_strategy(game, f)?.wins()
        {
            anyhow::bail!("internal error: certificate fails verification");
        }
    }
    Ok(out)
}

fn emit_outcome(game: &Game, out: &Outcome, certificate: Option<String>, json: bool) -> Result<u8> {
    let written = match (&out.certificate, &certificate) {
        (Some(f), Some(path)) => {
            write_output(path, &print_strategy(game, f))?;
            Some(path.clone())
        }
        _ => None,
    };
    if json {
        print_json(&Report::new(game, out, written))?;
    } else {
        outln!("verdict: {}", out.verdict);
        out!("trace:\n{}", trace_lines(&out.trace));
        let s = out.stats;
        outln!(
            "stats: nodes={} colorings={} millis={}",
            s.nodes,
            s.colorings,
            s.millis
        );
        match (&out.certificate, written) {
            (Some(_), Some(path)) => outln!("certificate: {path}"),
            (Some(f), None) if table_rows(game) <= INLINE_ROWS => {
                out!("certificate:\n{}", print_strategy(game, f))
            }
            (Some(_), None) => outln!(
                "certificate: omitted ({} rows); use --certificate FILE",
                table_rows(game)
            ),
            (None, _) => {}
        }
    }
    Ok(verdict_code(out.verdict))
}

fn verify(file: &str, strategy: &str, json: bool) -> Result<u8> {
    let game = load_game(file)?;
    let text = read_input(strategy)?;
    let f = parse_strategy(&game, &text).with_context(|| format!("in `{strategy}`"))?;
    let result = verify_strategy(&game, &f)?;
    let coloring = match &result {
        Verification::Wins => None,
        Verification::Disprover(c) => Some(
            (0..game.len())
                .map(|v| (game.name(v).to_string(), c[v]))
                .collect::<BTreeMap<_, _>>(),
        ),
    };
    if json {
        print_json(&json!({ "wins": result.wins(), "disprover": coloring }))?;
    } else if let Some(c) = &coloring {
        let parts: Vec<String> = (0..game.len())
            .map(|v| format!("{}={}", game.name(v), c[game.name(v)]))
            .collect();
        outln!("loses on {}", parts.join(" "));
    } else {
        outln!("wins on every coloring");
    }
    Ok(if result.wins() { 0 } else { 1 })
}

fn reduce(file: &str, emit: Option<String>, json: bool) -> Result<u8> {
    let game = load_game(file)?;
    let (residual, trace) = reduce_game(&game);
    let text = print_game(&residual);
    if let Some(path) = &emit {
        write_output(path, &text)?;
    }
    if json {
        print_json(&json!({
            "digest": digest(&game),
            "trace": trace.steps,
            "residual": text,
            "residual_vertices": residual.len(),
        }))?;
    } else {
        out!("trace:\n{}", trace_lines(&trace.steps));
        if emit.is_none() {
            out!("residual:\n{text}");
        } else {
            outln!("residual: {} vertices", residual.len());
        }
    }
    Ok(0)
}

/// `key=value` pairs, each key at most once.
fn parse_args(args: &[String]) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for a in args {
        let (k, v) = a
            .split_once('=')
            .ok_or_else(|| Usage(format!("argument `{a}` is not key=value")))?;
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Usage(format!("argument `{k}` given twice")).into());
        }
    }
    Ok(map)
}

struct OpArgs(BTreeMap<String, String>);

impl OpArgs {
    fn raw(&self, key: &str) -> Result<&str> {
        self.0
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Usage(format!("missing argument `{key}=`")).into())
    }

    fn names(&self, key: &str) -> Result<Vec<String>> {
        Ok(self
            .raw(key)?
            .split(',')
            .map(|s| s.trim().to_string())
            .collect())
    }

    fn numbers(&self, key: &str) -> Result<Vec<u32>> {
        self.raw(key)?
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Usage(format!("`{key}` needs integers, found `{s}`")).into())
            })
            .collect()
    }

    fn number(&self, key: &str) -> Result<u32> {
        match self.numbers(key)?.as_slice() {
            [x] => Ok(*x),
            _ => Err(Usage(format!("`{key}` takes one integer")).into()),
        }
    }

    fn vertices(&self, game: &Game, key: &str) -> Result<Vec<usize>> {
        vertex_list(game, &self.names(key)?)
    }
}

/// A winning strategy for every input, read from files or found by search.
fn input_strategies(
    games: &[Game],
    files: &[String],
    budget: &SearchBudget,
) -> Result<Vec<Strategy>> {
    if !files.is_empty() && files.len() != games.len() {
        return Err(Usage("give one strategy per input game or none".into()).into());
    }
    games
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if let Some(path) = files.get(i) {
                let f = parse_strategy(g, &read_input(path)?)
                    .with_context(|| format!("in `{path}`"))?;
                return Ok(f);
            }
            let out = solve(g, Method::Auto, budget)?;
            out.certificate.ok_or_else(|| {
                Usage(format!("input {} is {}, not winnable", i + 1, out.verdict)).into()
            })
        })
        .collect()
}

fn construct(
    op: &str,
    inputs: &[String],
    strategy_files: &[String],
    args: &[String],
    budget: &SearchBudget,
) -> Result<Construction> {
    let games: Vec<Game> = inputs.iter().map(|p| load_game(p)).collect::<Result<_>>()?;
    let a = OpArgs(parse_args(args)?);
    let arity = |n: usize| -> Result<()> {
        if games.len() == n {
            Ok(())
        } else {
            Err(Usage(format!(
                "`{op}` takes {n} input game(s), got {}",
                games.len()
            ))
            .into())
        }
    };
    match op {
        "product_single_point"
        | "clique_product"
        | "clique_general_product"
        | "general_product" => {}
        _ => arity(1)?,
    }
    let fs = input_strategies(&games, strategy_files, budget)?;
    let (g, f) = (&games[0], &fs[0]);
    let c = match op {
        "product_single_point" => {
            arity(2)?;
            constructors::product_single_point(g, f, &games[1], &fs[1], a.raw("a")?)?
        }
        "clique_product" | "clique_general_product" | "general_product" => {
            let hubs: Vec<Vec<usize>> = games
                .iter()
                .enumerate()
                .map(|(i, g)| a.vertices(g, &format!("hub{}", i + 1)))
                .collect::<Result<_>>()?;
            let factors: Vec<Factor> = games
                .iter()
                .zip(&fs)
                .zip(&hubs)
                .map(|((game, strategy), hub)| Factor {
                    game,
                    strategy,
                    hub,
                })
                .collect();
            match op {
                "clique_product" => constructors::clique_product(&factors)?,
                "clique_general_product" => {
                    arity(2)?;
                    constructors::clique_general_product(factors[0], factors[1])?
                }
                _ => {
                    let r: Vec<u64> = a.numbers("r")?.into_iter().map(u64::from).collect();
                    constructors::general_product(&factors, &r)?
                }
            }
        }
        "attach_hatness2" => constructors::attach_hatness2(g, f, &a.vertices(g, "y")?)?,
        "attach_hatness3" => {
            let b = g.vertex(a.raw("b")?)?;
            constructors::attach_hatness3(g, f, &a.vertices(g, "y")?, b)?
        }
        "attach_vertex_clique" => constructors::attach_vertex_clique(
            g,
            f,
            &a.vertices(g, "y")?,
            a.number("hx")?,
            a.number("gx")?,
        )?,
        "attach_vertex_general" => constructors::attach_vertex_general(
            g,
            f,
            &a.vertices(g, "y")?,
            &a.numbers("q")?,
            &a.numbers("k")?,
            a.number("hx")?,
            a.number("gx")?,
        )?,
        "attach_path" => constructors::attach_path(
            g,
            f,
            &a.vertices(g, "x")?,
            &a.vertices(g, "z")?,
            &a.numbers("pattern")?,
        )?,
        "replace_vertex_with_arcs" => {
            constructors::replace_vertex_with_arcs(g, f, g.vertex(a.raw("v")?)?)?
        }
        other => {
            return Err(Usage(format!(
                "unknown op `{other}`; expected one of product_single_point, clique_product, \
                 clique_general_product, general_product, attach_hatness2, attach_hatness3, \
                 attach_vertex_clique, attach_vertex_general, attach_path, replace_vertex_with_arcs"
            ))
            .into())
        }
    };
    Ok(c)
}

fn emit_construction(
    c: &Construction,
    out: Option<String>,
    strategy_out: Option<String>,
    tightness: Option<u32>,
    budget: &SearchBudget,
    json: bool,
) -> Result<u8> {
    let game_text = print_game(&c.game);
    if let Some(path) = &out {
        write_output(path, &game_text)?;
    }
    if let Some(path) = &strategy_out {
        write_output(path, &print_strategy(&c.game, &c.strategy))?;
    }
    let tight = tightness.map(|n| constructors::tightness_report(c, n, budget));
    let r = &c.recipe;
    if json {
        print_json(&json!({
            "op": r.op,
            "operands": r.operands,
            "gluing": r.gluing,
            "note": r.note,
            "verified": c.verified,
            "game": game_text,
            "game_path": out,
            "strategy_path": strategy_out,
            "tightness": tight,
        }))?;
        return Ok(0);
    }
    let mut s = String::new();
    writeln!(s, "op: {}", r.op)?;
    for (k, v) in &r.gluing {
        writeln!(s, "  {k} = {v}")?;
    }
    if !r.note.is_empty() {
        writeln!(s, "note: {}", r.note)?;
    }
    let verified = match c.verified {
        Some(true) => "yes",
        Some(false) => "no",
        None => "skipped (too many colorings)",
    };
    writeln!(s, "verified: {verified}")?;
    if let Some(entries) = &tight {
        writeln!(s, "tightness:")?;
        for e in entries {
            let at = match (e.unwinnable_at, e.undecided) {
                (Some(h), _) => format!("unwinnable at h={h}"),
                (None, true) => "undecided".to_string(),
                (None, false) => "still winnable".to_string(),
            };
            writeln!(s, "  {} (h={}): {at}", e.vertex, e.hat)?;
        }
    }
    if out.is_none() {
        write!(s, "game:\n{game_text}")?;
    }
    out!("{s}");
    Ok(0)
}

fn bound(file: &str, weights: &[String], json: bool) -> Result<u8> {
    let game = load_game(file)?;
    let w: Vec<Rational> = weights
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_>>()?;
    let report = lll::lll_unwinnable_test(&game, (!w.is_empty()).then_some(w.as_slice()))?;
    let shearer = if game.digraph().is_symmetric() && game.len() <= lll::SUBSET_LIMIT {
        Some(lll::shearer_unwinnable_test(&game)?)
    } else {
        None
    };
    let degrees = lll::degree_bounds(game.digraph());
    let unwinnable = report.verdict == BoundVerdict::Unwinnable
        || shearer
            .as_ref()
            .is_some_and(|s| s.0 == BoundVerdict::Unwinnable);
    let names =
        |vs: &[usize]| -> Vec<String> { vs.iter().map(|&v| game.name(v).to_string()).collect() };
    if json {
        print_json(&json!({
            "lll": {
                "verdict": report.verdict,
                "weights": report.weights.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "failing": report.failing.map(|v| game.name(v).to_string()),
            },
            "shearer": shearer.as_ref().map(|(v, s)| json!({
                "verdict": v,
                "failing_subset": s.as_ref().map(|s| names(s)),
            })),
            "degree_bounds": {
                "directed": degrees.directed.to_string(),
                "undirected": degrees.undirected.as_ref().map(ToString::to_string),
            },
        }))?;
    } else {
        let verdict = |v: BoundVerdict| match v {
            BoundVerdict::Unwinnable => "unwinnable",
            BoundVerdict::Inconclusive => "inconclusive",
        };
        out!("local lemma: {}", verdict(report.verdict));
        match report.failing {
            Some(v) => outln!(" (fails at {})", game.name(v)),
            None => outln!(),
        }
        let ws: Vec<String> = report.weights.iter().map(ToString::to_string).collect();
        outln!("  weights: {}", ws.join(","));
        match &shearer {
            Some((v, Some(s))) => outln!(
                "shearer: {} (nonpositive on {{{}}})",
                verdict(*v),
                names(s).join(",")
            ),
            Some((v, None)) => outln!("shearer: {}", verdict(*v)),
            None => outln!("shearer: not applicable"),
        }
        out!("degree bounds: directed {}", degrees.directed);
        match &degrees.undirected {
            Some(u) => outln!(", undirected {u}"),
            None => outln!(),
        }
    }
    Ok(if unwinnable { 1 } else { EXIT_UNKNOWN })
}

fn poly(file: &str, weights: &[String], subset: &[String], json: bool) -> Result<u8> {
    let game = load_game(file)?;
    let w: Vec<Rational> = weights
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_>>()?;
    if w.len() != game.len() {
        return Err(Usage(format!("{} weights for {} vertices", w.len(), game.len())).into());
    }
    let s = if subset.is_empty() {
        (0..game.len()).collect()
    } else {
        vertex_list(&game, subset)?
    };
    let q = lll::acyclicity_poly(game.digraph(), &w, &s)?;
    let z = if game.digraph().is_symmetric() {
        Some(lll::independence_poly(game.digraph(), &w, &s)?)
    } else {
        None
    };
    if json {
        print_json(&json!({
            "acyclicity": q.to_string(),
            "independence": z.as_ref().map(ToString::to_string),
        }))?;
    } else {
        outln!("acyclicity polynomial: {q}");
        if let Some(z) = z {
            outln!("independence polynomial: {z}");
        }
    }
    Ok(0)
}

fn pack(d: Vec<u32>, a: Vec<u32>, x: u32, y: u32, json: bool) -> Result<u8> {
    let inst = PackingInstance { d, a, x, y };
    let found = solve_star_packing(&inst)?;
    if json {
        print_json(&json!({
            "satisfiable": found.is_some(),
            "prisms": found.as_ref().map(|ps| ps.iter().map(|p| &p.axes).collect::<Vec<_>>()),
        }))?;
    } else {
        match &found {
            Some(ps) => {
                outln!("packing found:");
                for p in ps {
                    let axes: Vec<String> = p
                        .axes
                        .iter()
                        .map(|z| {
                            format!(
                                "{{{}}}",
                                z.iter()
                                    .map(ToString::to_string)
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )
                        })
                        .collect();
                    outln!("  {}", axes.join(" x "));
                }
            }
            None => outln!("no packing"),
        }
    }
    Ok(if found.is_some() { 0 } else { 1 })
}

fn report(file: &str, json: bool, budget: &SearchBudget) -> Result<u8> {
    let game = load_game(file)?;
    let out = solve(&game, Method::Auto, budget)?;
    let (residual, reduction) = reduce_game(&game);
    if json {
        let mut value = serde_json::to_value(Report::new(&game, &out, None))?;
        value["vertices"] = json!((0..game.len())
            .map(|v| json!({
                "name": game.name(v),
                "h": game.hat(v),
                "g": game.guess(v),
                "sees": game.out_neighbors(v).iter().map(|&u| game.name(u)).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>());
        value["reduction"] =
            json!({ "trace": reduction.steps, "residual_vertices": residual.len() });
        print_json(&value)?;
        return Ok(verdict_code(out.verdict));
    }
    outln!("digest: {}", digest(&game));
    outln!(
        "vertices: {}  arcs: {}",
        game.len(),
        game.digraph().arc_count()
    );
    for v in 0..game.len() {
        let sees: Vec<&str> = game
            .out_neighbors(v)
            .iter()
            .map(|&u| game.name(u))
            .collect();
        outln!(
            "  {:<8} h={:<3} g={:<3} ratio={:<7} sees {}",
            game.name(v),
            game.hat(v),
            game.guess(v),
            game.ratio(v),
            if sees.is_empty() {
                "-".to_string()
            } else {
                sees.join(",")
            }
        );
    }
    out!("reduction:\n{}", trace_lines(&reduction.steps));
    outln!("  residual: {} vertices", residual.len());
    outln!("verdict: {}", out.verdict);
    out!("trace:\n{}", trace_lines(&out.trace));
    let s = out.stats;
    outln!(
        "stats: nodes={} colorings={} millis={}",
        s.nodes,
        s.colorings,
        s.millis
    );
    Ok(verdict_code(out.verdict))
}
