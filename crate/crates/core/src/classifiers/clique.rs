use num_integer::Integer;

use crate::error::{Error, Result};
use crate::game::{rational, ColorSet, Game, Strategy};
use crate::outcome::{Outcome, Rule, TraceStep};

fn names(game: &Game) -> Vec<String> {
    (0..game.len()).map(|v| game.name(v).to_string()).collect()
}

/// Common denominator of the ratios, with each `g(v)/h(v)` scaled to it.
fn scaled(game: &Game) -> Result<(u64, Vec<u64>)> {
    let l = (0..game.len()).try_fold(1u64, |l, v| {
        let m = l.lcm(&(game.hat(v) as u64));
        (m <= 1 << 40).then_some(m)
    });
    let l = l.ok_or_else(|| Error::Unsupported("hatness denominators too large".into()))?;
    Ok((
        l,
        (0..game.len())
            .map(|v| game.guess(v) as u64 * (l / game.hat(v) as u64))
            .collect(),
    ))
}

/// The interval strategy on a complete graph whose ratios sum to at least 1. The circle
/// `[0,1)` is cut into consecutive arcs of length `r(v)`; every sage assumes the colors'
/// weighted sum `Σ c(u)/h(u) mod 1` falls in its own arc and guesses accordingly.
pub fn interval_strategy(game: &Game) -> Result<Strategy> {
    if !game.digraph().is_complete() {
        return Err(Error::Hypothesis(
            "interval strategy needs a complete graph".into(),
        ));
    }
    let (l, widths) = scaled(game)?;
    if widths.iter().sum::<u64>() < l {
        return Err(Error::Hypothesis("ratios sum to less than 1".into()));
    }
    let starts: Vec<u64> = widths
        .iter()
        .scan(0u64, |acc, &w| {
            let s = *acc;
            *acc += w;
            Some(s)
        })
        .collect();
    Strategy::from_fn(game, |v, inputs| {
        let step = l / game.hat(v) as u64;
        let seen: u64 = game
            .out_neighbors(v)
            .iter()
            .zip(inputs)
            .map(|(&u, &c)| c as u64 * (l / game.hat(u) as u64))
            .sum();
        (0..game.hat(v))
            .filter(|&c| {
                let total = (seen + c as u64 * step) % l;
                (total + l - starts[v] % l) % l < widths[v]
            })
            .collect::<ColorSet>()
    })
}

/// A complete graph is winnable exactly when its ratios sum to at least 1.
pub fn classify_clique(game: &Game) -> Result<Outcome> {
    if !game.digraph().is_complete() {
        return Err(Error::Hypothesis("not a complete graph".into()));
    }
    let (l, widths) = scaled(game)?;
    let sum = widths.iter().sum::<u64>();
    let step = TraceStep::new(Rule::CliqueSum, names(game)).with_rewrite(format!(
        "sum of ratios = {}",
        rational(sum as i64, l as i64)
    ));
    if sum >= l {
        Ok(Outcome::winnable(interval_strategy(game)?, vec![step]))
    } else {
        Ok(Outcome::unwinnable(vec![step]))
    }
}
