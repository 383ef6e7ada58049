//! Text formats for games (HGF) and strategies.
//!
//! Game files are line oriented; `#` starts a comment:
//!
//! ```text
//! vertex a h=2
//! vertex b h=4 g=2
//! edge a b
//! arc b c
//! ```
//!
//! Strategy files hold one block per vertex, rows in row-major input order:
//!
//! ```text
//! plan a order=b
//! 0 -> 1
//! 1 -> 0
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::game::{ColorSet, Digraph, Game, Odometer, Plan, Strategy};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based columns, dropping comments.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (body[..s].chars().count() + 1, t))
        .collect()
}

fn parse_kv(lineno: usize, col: usize, tok: &str, key: &str) -> Result<u32> {
    let value = tok
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(lineno, col, format!("expected `{key}=INT`, found `{tok}`")))?;
    value.parse::<u32>().map_err(|_| {
        parse_err(
            lineno,
            col + key.len() + 1,
            format!("invalid integer `{value}`"),
        )
    })
}

/// Parses HGF text into a game.
pub fn parse_game(text: &str) -> Result<Game> {
    let mut d = Digraph::new(Vec::<String>::new())?;
    let mut hat = Vec::new();
    let mut guess = Vec::new();
    let mut arcs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        let Some(&(col, kw)) = toks.first() else {
            continue;
        };
        match kw {
            "vertex" => {
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(parse_err(
                        lineno,
                        col,
                        "expected `vertex NAME h=INT [g=INT]`",
                    ));
                }
                let (ncol, name) = toks[1];
                let h = parse_kv(lineno, toks[2].0, toks[2].1, "h")?;
                let g = match toks.get(3) {
                    Some(&(c, t)) => parse_kv(lineno, c, t, "g")?,
                    None => 1,
                };
                d.add_vertex(name)
                    .map_err(|e| parse_err(lineno, ncol, e.to_string()))?;
                if h < 2 {
                    return Err(parse_err(
                        lineno,
                        toks[2].0,
                        format!("vertex `{name}`: hatness must be >= 2"),
                    ));
                }
                if g == 0 || g >= h {
                    return Err(parse_err(
                        lineno,
                        toks.get(3).map_or(toks[2].0, |t| t.0),
                        format!("vertex `{name}`: guessness must be < hatness (h={h}, g={g})"),
                    ));
                }
                hat.push(h);
                guess.push(g);
            }
            "arc" | "edge" => {
                if toks.len() != 3 {
                    return Err(parse_err(lineno, col, format!("expected `{kw} U V`")));
                }
                arcs.push((lineno, toks[1], toks[2], kw == "edge"));
            }
            other => {
                return Err(parse_err(
                    lineno,
                    col,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    for (lineno, (ucol, u), (vcol, v), both) in arcs {
        let a = d
            .vertex(u)
            .map_err(|_| parse_err(lineno, ucol, format!("unknown vertex `{u}`")))?;
        let b = d
            .vertex(v)
            .map_err(|_| parse_err(lineno, vcol, format!("unknown vertex `{v}`")))?;
        if a == b {
            return Err(parse_err(lineno, ucol, format!("loop at vertex `{u}`")));
        }
        d.add_arc(a, b)?;
        if both {
            d.add_arc(b, a)?;
        }
    }
    Game::new(d, hat, guess)
}

/// Canonical HGF text: vertices in order, then `edge` for reciprocal pairs and `arc` otherwise.
pub fn print_game(game: &Game) -> String {
    let mut s = String::new();
    for v in 0..game.len() {
        write!(s, "vertex {} h={}", game.name(v), game.hat(v)).unwrap();
        if game.guess(v) != 1 {
            write!(s, " g={}", game.guess(v)).unwrap();
        }
        s.push('\n');
    }
    let d = game.digraph();
    for (u, v) in d.arcs() {
        if d.has_arc(v, u) {
            if u < v {
                writeln!(s, "edge {} {}", d.name(u), d.name(v)).unwrap();
            }
        } else {
            writeln!(s, "arc {} {}", d.name(u), d.name(v)).unwrap();
        }
    }
    s
}

pub fn print_strategy(game: &Game, f: &Strategy) -> String {
    let mut s = String::new();
    for plan in &f.plans {
        let order: Vec<&str> = plan.inputs.iter().map(|&u| game.name(u)).collect();
        writeln!(
            s,
            "plan {} order={}",
            game.name(plan.vertex),
            order.join(",")
        )
        .unwrap();
        let mut odo = Odometer::new(plan.radices.clone());
        let mut row = 0;
        while odo.advance() {
            let left: Vec<String> = odo.digits().iter().map(u32::to_string).collect();
            let right: Vec<String> = plan.table[row].iter().map(|c| c.to_string()).collect();
            if left.is_empty() {
                writeln!(s, "-> {}", right.join(",")).unwrap();
            } else {
                writeln!(s, "{} -> {}", left.join(" "), right.join(",")).unwrap();
            }
            row += 1;
        }
    }
    s
}

/// Parses a strategy file against `game`; the result is validated.
pub fn parse_strategy(game: &Game, text: &str) -> Result<Strategy> {
    let mut plans: Vec<Option<Plan>> = vec![None; game.len()];
    let mut current: Option<(Plan, Odometer)> = None;

    fn finish(
        current: &mut Option<(Plan, Odometer)>,
        plans: &mut [Option<Plan>],
        lineno: usize,
    ) -> Result<()> {
        if let Some((plan, mut odo)) = current.take() {
            if odo.advance() {
                return Err(parse_err(
                    lineno,
                    1,
                    format!("plan for vertex {} is missing rows", plan.vertex),
                ));
            }
            let v = plan.vertex;
            plans[v] = Some(plan);
        }
        Ok(())
    }

    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("plan ") {
            finish(&mut current, &mut plans, lineno)?;
            let mut parts = rest.split_whitespace();
            let name = parts
                .next()
                .ok_or_else(|| parse_err(lineno, 6, "expected vertex name"))?;
            let v = game
                .vertex(name)
                .map_err(|_| parse_err(lineno, 6, format!("unknown vertex `{name}`")))?;
            let order = parts
                .next()
                .and_then(|t| t.strip_prefix("order="))
                .ok_or_else(|| {
                    parse_err(lineno, 6 + name.len() + 1, "expected `order=U1,U2,...`")
                })?;
            let inputs = if order.is_empty() {
                Vec::new()
            } else {
                order
                    .split(',')
                    .map(|u| {
                        game.vertex(u)
                            .map_err(|_| parse_err(lineno, 1, format!("unknown vertex `{u}`")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            if inputs != game.out_neighbors(v) {
                return Err(parse_err(
                    lineno,
                    1,
                    format!("order of `{name}` must list its out-neighbors in declaration order"),
                ));
            }
            if plans[v].is_some() {
                return Err(parse_err(lineno, 1, format!("duplicate plan for `{name}`")));
            }
            let radices: Vec<u32> = inputs.iter().map(|&u| game.hat(u)).collect();
            let plan = Plan {
                vertex: v,
                inputs,
                radices: radices.clone(),
                hat: game.hat(v),
                guess: game.guess(v),
                table: Vec::new(),
            };
            current = Some((plan, Odometer::new(radices)));
            continue;
        }
        let (plan, odo) = current
            .as_mut()
            .ok_or_else(|| parse_err(lineno, 1, "row before any `plan` header"))?;
        let (left, right) = body
            .split_once("->")
            .ok_or_else(|| parse_err(lineno, 1, "expected `c1 c2 ... -> g1,g2,...`"))?;
        let tuple = left
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| parse_err(lineno, 1, format!("invalid color `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !odo.advance() || odo.digits() != tuple.as_slice() {
            return Err(parse_err(
                lineno,
                1,
                "rows must enumerate input tuples in row-major order",
            ));
        }
        let mut set = ColorSet::EMPTY;
        for t in right.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let c = t
                .parse::<u32>()
                .map_err(|_| parse_err(lineno, 1, format!("invalid guess `{t}`")))?;
            if c >= 64 {
                return Err(parse_err(lineno, 1, format!("guess `{t}` out of range")));
            }
            set.insert(c);
        }
        plan.table.push(set);
    }
    finish(&mut current, &mut plans, last_line)?;
    let plans = plans
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| Error::Strategy(format!("no plan for `{}`", game.name(v)))))
        .collect::<Result<Vec<_>>>()?;
    let f = Strategy { plans };
    f.validate(game)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_default_guessness() {
        let g = parse_game("vertex a h=2\nvertex b h=2\nedge a b\n").unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.is_latvian());
        assert!(g.digraph().has_edge(0, 1));
    }

    #[test]
    fn rejects_guessness_at_hatness() {
        let err = parse_game("vertex a h=2 g=2\n").unwrap_err();
        assert!(
            err.to_string().contains("guessness must be < hatness"),
            "{err}"
        );
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_game("vertex a h=2\n  arc a zz\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 9,
                message: "unknown vertex `zz`".into()
            }
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let g =
            parse_game("# header\n\nvertex a h=3 g=2 # trailing\nvertex b h=2\narc a b\n").unwrap();
        assert_eq!(g.guess(0), 2);
        assert!(g.digraph().has_arc(0, 1) && !g.digraph().has_arc(1, 0));
    }

    #[test]
    fn round_trip() {
        let text = "vertex a h=2\nvertex b h=4 g=3\nvertex c h=5\nedge a b\narc b c\narc c a\n";
        let g = parse_game(text).unwrap();
        assert_eq!(print_game(&g), text);
        assert_eq!(parse_game(&print_game(&g)).unwrap(), g);
    }

    #[test]
    fn strategy_round_trip() {
        let g =
            parse_game("vertex a h=2\nvertex b h=2\nvertex c h=3\nedge a b\narc c a\n").unwrap();
        let f = Strategy::from_fn(&g, |v, inp| {
            ColorSet::single(inp.first().copied().unwrap_or(0) % g.hat(v))
        })
        .unwrap();
        let text = print_strategy(&g, &f);
        assert!(text.starts_with("plan a order=b\n0 -> 0\n1 -> 1\n"));
        assert_eq!(parse_strategy(&g, &text).unwrap(), f);
    }

    #[test]
    fn strategy_rows_must_be_ordered() {
        let g = parse_game("vertex a h=2\nvertex b h=2\nedge a b\n").unwrap();
        let err = parse_strategy(
            &g,
            "plan a order=b\n1 -> 0\n0 -> 1\nplan b order=a\n0 -> 0\n1 -> 1\n",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
