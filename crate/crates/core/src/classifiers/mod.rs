//! Polynomial-time classifiers for families of games, and the reduction rules that bring
//! other games into those families.

mod clique;
mod cycle;
mod directed;
mod reduce;
mod tree;

pub use clique::{classify_clique, interval_strategy};
pub use cycle::{classify_latvian_cycle, cycle_order};
pub use directed::{classify_directed_cycle, directed_cycle_order};
pub use reduce::{reduce_game, ReductionTrace};
pub use tree::{classify_latvian_tree, is_forest};

use crate::ease::lift_along;
use crate::error::Result;
use crate::game::Game;
use crate::outcome::{Outcome, Rule, TraceStep, Verdict};
use crate::prisms::{star_center, star_outcome};

/// Largest leaf coloring space handed to the star packing search.
const STAR_LIMIT: u64 = 256;

/// The classifier matching the game's shape, if any.
fn dispatch(game: &Game) -> Option<Result<Outcome>> {
    let names = || (0..game.len()).map(|v| game.name(v).to_string()).collect();
    if game.len() == 1 {
        return Some(Ok(Outcome::unwinnable(vec![TraceStep::new(
            Rule::SingleVertex,
            names(),
        )])));
    }
    if game.digraph().is_complete() {
        return Some(classify_clique(game));
    }
    if directed_cycle_order(game).is_some() {
        return Some(classify_directed_cycle(game));
    }
    if game.is_latvian() && is_forest(game) {
        return Some(classify_latvian_tree(game));
    }
    if game.is_latvian() && cycle_order(game).is_some() {
        return Some(classify_latvian_cycle(game));
    }
    if let Some(c) = star_center(game) {
        let leaves: Vec<usize> = (0..game.len()).filter(|&v| v != c).collect();
        if game.space_size(&leaves).is_some_and(|s| s <= STAR_LIMIT) {
            return Some(star_outcome(game));
        }
    }
    None
}

/// Reduces the game, splits it into strong components and hands each to the classifier for
/// its shape. Components of no known shape make the answer `Unknown` unless another
/// component is winnable.
pub fn classify_auto(game: &Game) -> Outcome {
    match classify_auto_inner(game) {
        Ok(out) => out,
        Err(e) => Outcome::unknown(vec![
            TraceStep::new(Rule::BudgetExceeded, Vec::new()).with_rewrite(e.to_string())
        ]),
    }
}

fn classify_auto_inner(game: &Game) -> Result<Outcome> {
    let (residual, trace) = reduce_game(game);
    let mut steps = trace.steps.clone();
    if residual.is_empty() {
        if !game.digraph().has_directed_cycle() {
            steps.push(TraceStep::new(Rule::NoDirectedCycle, Vec::new()));
        }
        return Ok(Outcome::unwinnable(steps));
    }
    let comps = residual.digraph().weak_components();
    if comps.len() > 1 {
        steps.push(
            TraceStep::new(Rule::StrongComponents, Vec::new())
                .with_rewrite(format!("{} components", comps.len())),
        );
    }
    let mut unknown = false;
    for comp in &comps {
        let sub = residual.restrict_indices(comp);
        let Some(out) = dispatch(&sub) else {
            unknown = true;
            continue;
        };
        let out = out?;
        steps.extend(out.trace.iter().cloned());
        match out.verdict {
            Verdict::Winnable => {
                let f = lift_along(out.certificate.as_ref().unwrap(), &sub, &residual)?;
                return Ok(Outcome::winnable(trace.lift(&f)?, steps));
            }
            Verdict::Unknown => unknown = true,
            Verdict::Unwinnable => {}
        }
    }
    Ok(if unknown {
        Outcome::unknown(steps)
    } else {
        Outcome::unwinnable(steps)
    })
}

#[cfg(test)]
mod tests;
