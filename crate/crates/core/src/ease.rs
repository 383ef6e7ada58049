//! The ease order on games and lifting of winning strategies along it.

use crate::error::{Error, Result};
use crate::game::{Color, ColorSet, Game, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ease {
    /// The second game is at least as easy to win as the first.
    G2NoHarder,
    G1NoHarder,
    Equal,
    Incomparable,
}

/// One generator step of the ease order, from a game `G` to an easier `G'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EaseStep {
    /// `G'` contains `G` as a subgame (matched by vertex name), same parameters on `V(G)`.
    Supergraph,
    /// Same digraph and guessness, hatness lowered pointwise.
    LowerHatness,
    /// Same digraph and hatness, guessness raised pointwise.
    RaiseGuessness,
    /// Hatness and guessness of one vertex multiplied by `k`.
    Scale { vertex: String, k: u32 },
}

fn per_vertex_reachable(g1: u32, h1: u32, g2: u32, h2: u32) -> Option<u32> {
    // some k >= 1 with k*g1 <= g2 and k*h1 >= h2
    let lo = h2.div_ceil(h1).max(1);
    let hi = g2 / g1;
    (lo <= hi).then_some(lo)
}

/// Decides whether `g1 ⪯ g2`, returning a derivation from `g1` to `g2` when it holds.
pub fn derive_ease(g1: &Game, g2: &Game) -> Option<Vec<EaseStep>> {
    let map = g1.embed_into(g2).ok()?;
    for (u, v) in g1.digraph().arcs() {
        if !g2.digraph().has_arc(map[u], map[v]) {
            return None;
        }
    }
    let mut ks = Vec::with_capacity(g1.len());
    for v in 0..g1.len() {
        let w = map[v];
        ks.push(per_vertex_reachable(
            g1.guess(v),
            g1.hat(v),
            g2.guess(w),
            g2.hat(w),
        )?);
    }
    let mut steps = Vec::new();
    for (v, &k) in ks.iter().enumerate() {
        if k > 1 {
            steps.push(EaseStep::Scale {
                vertex: g1.name(v).to_string(),
                k,
            });
        }
    }
    let scaled_differs_h = (0..g1.len()).any(|v| g1.hat(v) * ks[v] != g2.hat(map[v]));
    let scaled_differs_g = (0..g1.len()).any(|v| g1.guess(v) * ks[v] != g2.guess(map[v]));
    if scaled_differs_h {
        steps.push(EaseStep::LowerHatness);
    }
    if scaled_differs_g {
        steps.push(EaseStep::RaiseGuessness);
    }
    let same_shape = g1.len() == g2.len()
        && map.iter().enumerate().all(|(i, &j)| i == j)
        && g1.digraph().arc_count() == g2.digraph().arc_count();
    if !same_shape {
        steps.push(EaseStep::Supergraph);
    }
    Some(steps)
}

/// Compares two games under the ease order. The per-vertex test is exact, so the answer is
/// complete for the four generators and their compositions.
pub fn compare_ease(g1: &Game, g2: &Game) -> Ease {
    match (derive_ease(g1, g2).is_some(), derive_ease(g2, g1).is_some()) {
        (true, true) => Ease::Equal,
        (true, false) => Ease::G2NoHarder,
        (false, true) => Ease::G1NoHarder,
        (false, false) => Ease::Incomparable,
    }
}

/// Applies one generator step: given `f` on `g1`, returns a strategy on `g2` which wins
/// whenever `f` wins `g1`.
pub fn lift_strategy(f: &Strategy, g1: &Game, g2: &Game, step: &EaseStep) -> Result<Strategy> {
    let mismatch =
        |what: &str| Error::Hypothesis(format!("derivation does not match the games: {what}"));
    match step {
        EaseStep::Supergraph => {
            let map = g1.embed_into(g2).map_err(|_| mismatch("vertex missing"))?;
            for v in 0..g1.len() {
                if g1.hat(v) != g2.hat(map[v]) || g1.guess(v) != g2.guess(map[v]) {
                    return Err(mismatch("parameters changed"));
                }
            }
            for (u, v) in g1.digraph().arcs() {
                if !g2.digraph().has_arc(map[u], map[v]) {
                    return Err(mismatch("arc missing"));
                }
            }
            let mut back = vec![None; g2.len()];
            for (v, &w) in map.iter().enumerate() {
                back[w] = Some(v);
            }
            Strategy::from_fn(g2, |w, inputs| match back[w] {
                None => ColorSet::prefix(g2.guess(w)),
                Some(v) => {
                    let outs = g2.out_neighbors(w);
                    let old: Vec<Color> = g1
                        .out_neighbors(v)
                        .iter()
                        .map(|&u| inputs[outs.binary_search(&map[u]).unwrap()])
                        .collect();
                    f.plan(v).guesses_for_inputs(&old)
                }
            })
        }
        EaseStep::LowerHatness | EaseStep::RaiseGuessness => {
            if g1.digraph() != g2.digraph() {
                return Err(mismatch("digraph changed"));
            }
            for v in 0..g1.len() {
                let ok = match step {
                    EaseStep::LowerHatness => g2.hat(v) <= g1.hat(v) && g2.guess(v) == g1.guess(v),
                    _ => g2.hat(v) == g1.hat(v) && g2.guess(v) >= g1.guess(v),
                };
                if !ok {
                    return Err(mismatch("parameters move the wrong way"));
                }
            }
            Strategy::from_fn(g2, |v, inputs| {
                f.plan(v)
                    .guesses_for_inputs(inputs)
                    .clamp(g2.guess(v), g2.hat(v))
                    .padded(g2.guess(v), g2.hat(v))
            })
        }
        EaseStep::Scale { vertex, k } => {
            let s = g1.vertex(vertex).map_err(|_| mismatch("unknown vertex"))?;
            let k = *k;
            if g1.digraph() != g2.digraph() || k == 0 {
                return Err(mismatch("digraph changed"));
            }
            for v in 0..g1.len() {
                let (h, g) = if v == s {
                    (g1.hat(v) * k, g1.guess(v) * k)
                } else {
                    (g1.hat(v), g1.guess(v))
                };
                if g2.hat(v) != h || g2.guess(v) != g {
                    return Err(mismatch("scaled parameters differ"));
                }
            }
            let base = g1.hat(s);
            Strategy::from_fn(g2, |v, inputs| {
                let folded: Vec<Color> = g2
                    .out_neighbors(v)
                    .iter()
                    .zip(inputs)
                    .map(|(&u, &c)| if u == s { c % base } else { c })
                    .collect();
                let old = f.plan(v).guesses_for_inputs(&folded);
                if v == s {
                    old.iter()
                        .flat_map(|c| (0..k).map(move |j| c + j * base))
                        .collect()
                } else {
                    old
                }
            })
        }
    }
}

/// Lifts `f` from `g1` to `g2` along the derivation found by [`derive_ease`].
pub fn lift_along(f: &Strategy, g1: &Game, g2: &Game) -> Result<Strategy> {
    let steps = derive_ease(g1, g2)
        .ok_or_else(|| Error::Hypothesis("second game is not easier than the first".into()))?;
    let mut game = g1.clone();
    let mut strat = f.clone();
    let map = g1.embed_into(g2)?;
    for step in &steps {
        let next = match step {
            EaseStep::Scale { vertex, k } => {
                let v = game.vertex(vertex)?;
                let mut n = game.clone();
                n.set_hat_and_guess(v, game.hat(v) * k, game.guess(v) * k)?;
                n
            }
            EaseStep::LowerHatness => {
                let mut n = game.clone();
                for v in 0..n.len() {
                    n.set_hat(v, g2.hat(map[v]))?;
                }
                n
            }
            EaseStep::RaiseGuessness => {
                let mut n = game.clone();
                for v in 0..n.len() {
                    n.set_hat_and_guess(v, n.hat(v), g2.guess(map[v]))?;
                }
                n
            }
            EaseStep::Supergraph => g2.clone(),
        };
        strat = lift_strategy(&strat, &game, &next, step)?;
        game = next;
    }
    Ok(strat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    fn k2(h: (u32, u32), g: (u32, u32)) -> Game {
        GameBuilder::new()
            .vertex("a", h.0, g.0)
            .vertex("b", h.1, g.1)
            .edge("a", "b")
            .build()
            .unwrap()
    }

    #[test]
    fn lower_hatness_is_easier() {
        assert_eq!(
            compare_ease(&k2((2, 3), (1, 1)), &k2((2, 2), (1, 1))),
            Ease::G2NoHarder
        );
        assert_eq!(
            compare_ease(&k2((2, 2), (1, 1)), &k2((2, 3), (1, 1))),
            Ease::G1NoHarder
        );
    }

    #[test]
    fn scaling_goes_one_way() {
        assert_eq!(
            compare_ease(&k2((2, 2), (1, 1)), &k2((4, 4), (2, 2))),
            Ease::G2NoHarder
        );
    }

    #[test]
    fn different_vertex_sets_are_incomparable() {
        let c4 = crate::game::cycle_game(&[2, 2, 2, 2]).unwrap();
        assert_eq!(compare_ease(&k2((2, 2), (1, 1)), &c4), Ease::Incomparable);
    }

    #[test]
    fn equal_games() {
        assert_eq!(
            compare_ease(&k2((3, 2), (1, 1)), &k2((3, 2), (1, 1))),
            Ease::Equal
        );
    }
}
