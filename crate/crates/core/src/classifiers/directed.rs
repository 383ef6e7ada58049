use num_traits::One;

use crate::error::{Error, Result};
use crate::game::{rational, ColorSet, Game, Strategy};
use crate::outcome::{Outcome, Rule, TraceStep};

/// Vertices in cycle order when the digraph is a single directed cycle.
pub fn directed_cycle_order(game: &Game) -> Option<Vec<usize>> {
    let d = game.digraph();
    let n = game.len();
    if n < 2 || (0..n).any(|v| d.out_neighbors(v).len() != 1 || d.in_neighbors(v).len() != 1) {
        return None;
    }
    let mut order = vec![0];
    while order.len() < n {
        let next = d.out_neighbors(*order.last().unwrap())[0];
        if next == 0 {
            return None;
        }
        order.push(next);
    }
    (d.out_neighbors(order[n - 1])[0] == 0).then_some(order)
}

/// With every ratio at least 1/2: each sage `v` marks a low block `[0, h−g)` and a disjoint
/// high block of the same size. The first sage bets that its own color is low exactly when
/// its successor's is; everyone else bets against the block matching its successor's.
fn half_strategy(game: &Game, order: &[usize]) -> Result<Strategy> {
    let first = order[0];
    Strategy::from_fn(game, |v, inputs| {
        let (h, g) = (game.hat(v), game.guess(v));
        let next = game.out_neighbors(v)[0];
        let next_low = inputs[0] < game.hat(next) - game.guess(next);
        let low = |c: u32| c < h - g;
        let high = |c: u32| c >= g;
        if v == first {
            if next_low {
                (0..h)
                    .filter(|&c| low(c))
                    .collect::<ColorSet>()
                    .padded(g, h)
            } else {
                (0..h).filter(|&c| !low(c)).collect()
            }
        } else if next_low {
            (0..h).filter(|&c| !low(c)).collect()
        } else {
            (0..h).filter(|&c| !high(c)).collect()
        }
    })
}

/// The triangle with equal hatness `k` and guessness `(k−l, k−l, l)` when `l | k`: colors
/// fall into blocks of `l`, the two large guessers bet against their successor's block and
/// the small guesser bets on it.
fn triangle_strategy(game: &Game, small: usize, l: u32) -> Result<Strategy> {
    Strategy::from_fn(game, |v, inputs| {
        let block = inputs[0] / l;
        let inside: ColorSet = (block * l..block * l + l).collect();
        if v == small {
            inside
        } else {
            (0..game.hat(v)).filter(|c| !inside.contains(*c)).collect()
        }
    })
}

/// Decides games on a directed cycle where one of the known rules applies.
pub fn classify_directed_cycle(game: &Game) -> Result<Outcome> {
    let order = directed_cycle_order(game)
        .ok_or_else(|| Error::Hypothesis("not a directed cycle".into()))?;
    let names: Vec<String> = order.iter().map(|&v| game.name(v).to_string()).collect();
    let family_rule = if game.is_latvian() {
        Some(Rule::DirectedCycleLatvian)
    } else if game.is_polish() {
        Some(Rule::DirectedCyclePolish)
    } else {
        None
    };
    let half = rational(1, 2);
    if order.iter().all(|&v| game.ratio(v) >= half) {
        let step = TraceStep::new(family_rule.unwrap_or(Rule::DirectedCycleHalf), names)
            .with_rewrite("every ratio is at least 1/2");
        return Ok(Outcome::winnable(half_strategy(game, &order)?, vec![step]));
    }
    for &v in &order {
        let u = game.out_neighbors(v)[0];
        if crate::game::Rational::one() - game.ratio(v) > game.ratio(u) {
            let step = TraceStep::new(
                family_rule.unwrap_or(Rule::DirectedCycleArc),
                vec![game.name(v).to_string(), game.name(u).to_string()],
            )
            .with_rewrite(format!("1 - r({}) > r({})", game.name(v), game.name(u)));
            return Ok(Outcome::unwinnable(vec![step]));
        }
    }
    if order.len() == 3 && game.hats().iter().all(|&h| h == game.hat(0)) {
        let k = game.hat(0);
        let mut gs: Vec<(u32, usize)> = (0..3).map(|v| (game.guess(v), v)).collect();
        gs.sort_unstable();
        let small = gs
            .iter()
            .find(|&&(g, _)| gs.iter().filter(|&&(h, _)| h == g).count() == 1);
        if let Some(&(l, small)) = small {
            let others: Vec<u32> = gs
                .iter()
                .filter(|&&(_, v)| v != small)
                .map(|&(g, _)| g)
                .collect();
            if others[0] == others[1] && others[0] + l == k {
                let step = TraceStep::new(Rule::DirectedTriangle, names)
                    .with_rewrite(format!("k={k}, l={l}"));
                return Ok(if k % l == 0 {
                    Outcome::winnable(triangle_strategy(game, small, l)?, vec![step])
                } else {
                    Outcome::unwinnable(vec![step])
                });
            }
        }
    }
    Ok(Outcome::unknown(vec![TraceStep::new(
        Rule::DirectedCycleArc,
        names,
    )
    .with_rewrite("no rule applies")]))
}
