use crate::constructors::product_single_point;
use crate::ease::lift_along;
use crate::error::{Error, Result};
use crate::game::{Digraph, Game, Strategy};
use crate::outcome::{Outcome, Rule, TraceStep};

/// Whether the game is played on an undirected forest.
pub fn is_forest(game: &Game) -> bool {
    let d = game.digraph();
    d.is_symmetric() && d.arc_count() / 2 + d.weak_components().len() == game.len()
}

/// The Latvian game on the edge `u w` with both hatnesses 2 and its winning strategy: `u` bets the
/// colors match, `w` bets they differ.
pub(crate) fn pair_game(u: &str, w: &str) -> Result<(Game, Strategy)> {
    let mut d = Digraph::new([u, w])?;
    d.add_edge(0, 1)?;
    let g = Game::latvian(d, vec![2, 2])?;
    let f = Strategy::from_fn(&g, |v, inp| {
        crate::game::ColorSet::single(if v == 0 { inp[0] } else { 1 - inp[0] })
    })?;
    Ok((g, f))
}

/// A winning strategy for the Latvian tree `tree` with `h(v) = 2^deg(v)`, glued edge by edge.
pub(crate) fn power_tree_strategy(tree: &Game) -> Result<(Game, Strategy)> {
    let d = tree.digraph();
    let (a, b) = d
        .arcs()
        .next()
        .ok_or_else(|| Error::Hypothesis("tree has no edge".into()))?;
    let (mut game, mut f) = pair_game(tree.name(a), tree.name(b))?;
    let mut inside = vec![false; tree.len()];
    inside[a] = true;
    inside[b] = true;
    let mut frontier = vec![a, b];
    while let Some(u) = frontier.pop() {
        for &w in d.out_neighbors(u) {
            if inside[w] {
                continue;
            }
            let (pg, pf) = pair_game(tree.name(u), tree.name(w))?;
            let c = product_single_point(&game, &f, &pg, &pf, tree.name(u))?;
            (game, f) = c.into_parts();
            inside[w] = true;
            frontier.push(w);
        }
    }
    Ok((game, f))
}

/// Latvian forests: repeatedly delete any vertex with `h(v) > 2^deg(v)`; the game is winnable
/// exactly when something survives.
pub fn classify_latvian_tree(game: &Game) -> Result<Outcome> {
    if !is_forest(game) || !game.is_latvian() {
        return Err(Error::Hypothesis("not a Latvian forest".into()));
    }
    let mut alive: Vec<usize> = (0..game.len()).collect();
    let mut trace = Vec::new();
    loop {
        let sub = game.restrict_indices(&alive);
        let doomed = (0..sub.len()).find(|&v| {
            let deg = sub.out_neighbors(v).len() as u32;
            deg < 32 && sub.hat(v) > 1u32 << deg
        });
        let Some(v) = doomed else { break };
        trace.push(
            TraceStep::new(Rule::TreeDeletion, vec![sub.name(v).to_string()]).with_rewrite(
                format!("h = {} > 2^{}", sub.hat(v), sub.out_neighbors(v).len()),
            ),
        );
        alive.remove(v);
    }
    if alive.is_empty() {
        return Ok(Outcome::unwinnable(trace));
    }
    let sub = game.restrict_indices(&alive);
    let comp = sub.digraph().weak_components().swap_remove(0);
    let tree = sub.restrict_indices(&comp);
    let (built, f) = power_tree_strategy(&tree)?;
    let cert = lift_along(&f, &built, game)?;
    Ok(Outcome::winnable(cert, trace))
}
