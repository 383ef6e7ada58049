use super::tree::pair_game;
use crate::constructors::product_single_point;
use crate::ease::lift_along;
use crate::error::Result;
use crate::game::Game;
use crate::game::Strategy;
use crate::outcome::{Rule, TraceStep};

#[derive(Clone, Debug)]
enum Undo {
    /// The later game is a subgame of the earlier one.
    Subgame,
    /// A hatness-2 leaf was removed and its neighbor's hatness halved (rounding up).
    Halved { leaf: String, hub: String },
}

/// What `reduce_game` did, in order, and the game it ended with.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub residual: Game,
    stages: Vec<(Game, Undo)>,
}

impl ReductionTrace {
    /// Turns a winning strategy for the residual into one for the original game.
    pub fn lift(&self, f: &Strategy) -> Result<Strategy> {
        let mut game = self.residual.clone();
        let mut f = f.clone();
        for (before, undo) in self.stages.iter().rev() {
            f = match undo {
                Undo::Subgame => lift_along(&f, &game, before)?,
                Undo::Halved { leaf, hub } => {
                    let (pg, pf) = pair_game(hub, leaf)?;
                    let (g2, f2) = product_single_point(&game, &f, &pg, &pf, hub)?.into_parts();
                    lift_along(&f2, &g2, before)?
                }
            };
            game = before.clone();
        }
        Ok(f)
    }

    /// Re-applies the recorded steps to `game`.
    pub fn replay(&self, game: &Game) -> Result<Game> {
        let mut g = game.clone();
        for step in &self.steps {
            let idx = |g: &Game, i: usize| g.vertex(&step.vertices[i]);
            g = match step.rule {
                Rule::Latvian2Leaf => {
                    let (leaf, hub) = (idx(&g, 0)?, idx(&g, 1)?);
                    let h = g.hat(hub).div_ceil(2);
                    let mut next = g.without(leaf);
                    let hub = next.vertex(&step.vertices[1])?;
                    next.set_hat(hub, h)?;
                    next
                }
                Rule::HatnessOneWin => {
                    let mut pair = g.restrict_indices(&[idx(&g, 0)?, idx(&g, 1)?]);
                    pair.set_hat(0, 2)?;
                    pair.set_hat(1, 2)?;
                    pair
                }
                Rule::StrongComponents => split_components(&g).0,
                _ => {
                    let gone: Vec<usize> = (0..step.vertices.len())
                        .map(|i| idx(&g, i))
                        .collect::<Result<_>>()?;
                    let keep: Vec<usize> = (0..g.len()).filter(|v| !gone.contains(v)).collect();
                    g.restrict_indices(&keep)
                }
            };
        }
        Ok(g)
    }
}

/// Deletes vertices in singleton strong components and drops arcs between components.
fn split_components(game: &Game) -> (Game, Vec<usize>, usize) {
    let comps = game.digraph().strong_components();
    let mut comp_of = vec![0; game.len()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut g = game.clone();
    let cross: Vec<(usize, usize)> = game
        .digraph()
        .arcs()
        .filter(|&(a, b)| comp_of[a] != comp_of[b])
        .collect();
    for &(a, b) in &cross {
        g.digraph_mut().remove_arc(a, b);
    }
    let lonely: Vec<usize> = (0..game.len())
        .filter(|&v| comps[comp_of[v]].len() == 1)
        .collect();
    let keep: Vec<usize> = (0..game.len()).filter(|v| !lonely.contains(v)).collect();
    (g.restrict_indices(&keep), lonely, cross.len())
}

fn redundant_vision(game: &Game) -> Option<usize> {
    (0..game.len()).find(|&v| {
        let sees = game.out_neighbors(v);
        game.in_neighbors(v)
            .iter()
            .all(|&u| sees.iter().all(|w| game.digraph().has_arc(u, *w)))
    })
}

fn high_ratio(game: &Game) -> Option<usize> {
    (0..game.len()).find(|&v| {
        let seen = game
            .out_neighbors(v)
            .iter()
            .try_fold(game.guess(v) as u64, |acc, &u| {
                acc.checked_mul(game.hat(u) as u64)
            });
        seen.is_some_and(|s| (game.hat(v) as u64) > s)
    })
}

/// A directionless vertex whose neighbors are pairwise peers or separated once it is gone,
/// and whose ratio is below `1/∏(g(u)+1)`.
fn lyonic(game: &Game) -> Option<usize> {
    let d = game.digraph();
    (0..game.len()).find(|&v| {
        let nbrs = d.out_neighbors(v);
        if nbrs != d.in_neighbors(v) {
            return false;
        }
        let product = nbrs
            .iter()
            .try_fold(1u64, |acc, &u| acc.checked_mul(game.guess(u) as u64 + 1));
        let Some(product) = product else { return false };
        if game.hat(v) as u64 <= product * game.guess(v) as u64 {
            return false;
        }
        if nbrs.len() == 1 {
            return true;
        }
        let rest = game.without(v);
        let shift = |u: usize| if u < v { u } else { u - 1 };
        let comps = rest.digraph().weak_components();
        let comp_of = |u: usize| comps.iter().position(|c| c.contains(&u)).unwrap();
        nbrs.iter().enumerate().all(|(i, &a)| {
            nbrs[i + 1..].iter().all(|&b| {
                let (a, b) = (shift(a), shift(b));
                comp_of(a) != comp_of(b) || rest.out_neighbors(a) == rest.out_neighbors(b)
            })
        })
    })
}

/// A hatness-2 leaf of a Latvian game, with its neighbor.
fn latvian_two_leaf(game: &Game) -> Option<(usize, usize)> {
    if !game.is_latvian() {
        return None;
    }
    let d = game.digraph();
    (0..game.len()).find_map(|v| {
        let nb = d.out_neighbors(v);
        (game.hat(v) == 2 && nb.len() == 1 && d.in_neighbors(v) == nb).then(|| (v, nb[0]))
    })
}

fn names(game: &Game, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| game.name(v).to_string()).collect()
}

/// Applies outcome-preserving simplifications until none applies: redundant vision, high
/// ratio, Lyonic deletion (including Czech leaves), Latvian hatness-2 leaves, then deletion of
/// singleton strong components together with the arcs between components.
pub fn reduce_game(game: &Game) -> (Game, ReductionTrace) {
    let mut trace = ReductionTrace {
        steps: Vec::new(),
        residual: game.clone(),
        stages: Vec::new(),
    };
    let mut g = game.clone();
    loop {
        let before = g.clone();
        let (step, undo, next) = if let Some(v) = redundant_vision(&g) {
            (
                TraceStep::new(Rule::RedundantVision, names(&g, &[v])),
                Undo::Subgame,
                g.without(v),
            )
        } else if let Some(v) = high_ratio(&g) {
            let step = TraceStep::new(Rule::HighRatio, names(&g, &[v]));
            (step, Undo::Subgame, g.without(v))
        } else if let Some(v) = lyonic(&g) {
            let rule = if g.out_neighbors(v).len() == 1 {
                Rule::CzechLeaf
            } else {
                Rule::LyonicDeletion
            };
            (
                TraceStep::new(rule, names(&g, &[v])),
                Undo::Subgame,
                g.without(v),
            )
        } else if let Some((leaf, hub)) = latvian_two_leaf(&g) {
            let h = g.hat(hub).div_ceil(2);
            if h == 1 {
                let step = TraceStep::new(Rule::HatnessOneWin, names(&g, &[leaf, hub]));
                let pair = g.restrict_indices(&[leaf, hub]);
                trace.steps.push(step);
                trace.stages.push((before, Undo::Subgame));
                trace.residual = pair.clone();
                return (pair, trace);
            }
            let step = TraceStep::new(Rule::Latvian2Leaf, names(&g, &[leaf, hub]))
                .with_rewrite(format!("h({}) <- {}", g.name(hub), h));
            let undo = Undo::Halved {
                leaf: g.name(leaf).to_string(),
                hub: g.name(hub).to_string(),
            };
            let mut next = g.without(leaf);
            let hub = next.vertex(g.name(hub)).expect("hub survives");
            next.set_hat(hub, h).expect("hatness stays above guessness");
            (step, undo, next)
        } else {
            let (next, lonely, cross) = split_components(&g);
            if lonely.is_empty() && cross == 0 {
                break;
            }
            let step = TraceStep::new(Rule::StrongComponents, names(&g, &lonely))
                .with_rewrite(format!("dropped {cross} arcs between strong components"));
            (step, Undo::Subgame, next)
        };
        trace.steps.push(step);
        trace.stages.push((before, undo));
        g = next;
    }
    trace.residual = g.clone();
    (g, trace)
}
