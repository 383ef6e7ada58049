//! Trading a low-ratio vertex for arcs among its neighbors.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{names_of, require_wins, Construction, ConstructionRecipe};
use crate::error::{Error, Result};
use crate::game::{rank, Game, Odometer, Plan, Rational, Strategy};
use crate::oracle::ENUMERATION_LIMIT;
use crate::prisms::{find_cover, CoverResult, Point};

/// Adds arcs so that members of `set` lying in one weak component share their
/// out-neighborhood (the union of the members' out-neighborhoods).
pub fn make_metapeer(game: &Game, set: &[usize]) -> Result<Game> {
    let d = game.digraph();
    for (i, &a) in set.iter().enumerate() {
        if set[i + 1..]
            .iter()
            .any(|&b| d.has_arc(a, b) || d.has_arc(b, a))
        {
            return Err(Error::Hypothesis(format!(
                "{{{}}} is not independent",
                names_of(game, set)
            )));
        }
    }
    let mut out = game.clone();
    for group in peer_groups(game, set) {
        let union: Vec<usize> = {
            let mut u: Vec<usize> = group
                .iter()
                .flat_map(|&a| d.out_neighbors(a).iter().copied())
                .collect();
            u.sort_unstable();
            u.dedup();
            u
        };
        for &a in &group {
            for &w in &union {
                out.digraph_mut().add_arc(a, w)?;
            }
        }
    }
    Ok(out)
}

fn peer_groups(game: &Game, set: &[usize]) -> Vec<Vec<usize>> {
    game.digraph()
        .weak_components()
        .into_iter()
        .map(|comp| {
            comp.into_iter()
                .filter(|v| set.contains(v))
                .collect::<Vec<_>>()
        })
        .filter(|g: &Vec<usize>| !g.is_empty())
        .collect()
}

/// Deletes a directionless vertex `v` whose ratio satisfies `1/r(v) > ∏_{u∈N(v)} (g(u)+1)`,
/// first making `N(v)` metapeer in the rest of the game. Everyone outside `N(v)` keeps its
/// plan; each peer group of `N(v)` covers the colorings it could still lose on.
pub fn replace_vertex_with_arcs(game: &Game, f: &Strategy, v: usize) -> Result<Construction> {
    let d = game.digraph();
    if d.out_neighbors(v) != d.in_neighbors(v) {
        return Err(Error::Hypothesis(format!(
            "`{}` has a one-way arc",
            game.name(v)
        )));
    }
    let nbrs = d.out_neighbors(v).to_vec();
    let product: u64 = nbrs.iter().map(|&u| game.guess(u) as u64 + 1).product();
    let inverse = Rational::new(BigInt::from(game.hat(v)), BigInt::from(game.guess(v)));
    if inverse <= Rational::from_integer(BigInt::from(product)) {
        return Err(Error::Hypothesis(format!(
            "1/r({}) = {} does not exceed the neighborhood product {}",
            game.name(v),
            inverse,
            product
        )));
    }
    require_wins(game, f, "operand")?;

    let rest = game.without(v);
    let old = |w: usize| if w < v { w } else { w + 1 };
    let new_nbrs: Vec<usize> = nbrs
        .iter()
        .map(|&u| if u < v { u } else { u - 1 })
        .collect();
    let out = make_metapeer(&rest, &new_nbrs)?;
    let groups = peer_groups(&rest, &new_nbrs);

    let mut plans: Vec<Option<Plan>> = vec![None; out.len()];
    for w in (0..out.len()).filter(|w| !new_nbrs.contains(w)) {
        let table = &f.plan(old(w)).table;
        let mut idx = 0;
        plans[w] = Some(Plan::from_fn(&out, w, |_| {
            idx += 1;
            table[idx - 1]
        })?);
    }
    for (comp, group) in rest
        .digraph()
        .weak_components()
        .iter()
        .zip(&groups_by_component(&rest, &groups))
    {
        let Some(group) = group else { continue };
        let lost = lost_colorings(&out, f, &old, comp, group)?;
        let a: Vec<u32> = group.iter().map(|&u| out.guess(u)).collect();
        let dims: Vec<u32> = group.iter().map(|&u| out.hat(u)).collect();
        let empty = Vec::new();
        for (axis, &u) in group.iter().enumerate() {
            plans[u] = Some(Plan::from_fn(&out, u, |inp| {
                let key = rank(&radices(&out, u), inp);
                let pts = lost.get(&key).unwrap_or(&empty);
                match find_cover(pts, &a, Some(&dims)) {
                    CoverResult::Cover(c) => c.values[axis].iter().copied().collect(),
                    CoverResult::Sprawl { .. } => crate::game::ColorSet::prefix(out.guess(u)),
                }
            })?);
        }
    }
    let strategy = Strategy {
        plans: plans.into_iter().map(Option::unwrap).collect(),
    };
    let recipe = ConstructionRecipe::new("replace_vertex_with_arcs")
        .operand(game)
        .glue("deleted", game.name(v))
        .glue("metapeer", names_of(game, &nbrs))
        .note(format!("{} peer groups", groups.len()));
    Construction::finish(out, strategy, recipe)
}

fn radices(game: &Game, u: usize) -> Vec<u32> {
    game.out_neighbors(u).iter().map(|&w| game.hat(w)).collect()
}

fn groups_by_component(game: &Game, groups: &[Vec<usize>]) -> Vec<Option<Vec<usize>>> {
    game.digraph()
        .weak_components()
        .iter()
        .map(|comp| groups.iter().find(|g| comp.contains(&g[0])).cloned())
        .collect()
}

/// For each coloring of the group's common view, the group colorings that extend to a
/// coloring of the component on which every non-member guesses wrong.
fn lost_colorings(
    out: &Game,
    f: &Strategy,
    old: &dyn Fn(usize) -> usize,
    comp: &[usize],
    group: &[usize],
) -> Result<HashMap<usize, Vec<Point>>> {
    if out
        .space_size(comp)
        .filter(|&s| s <= ENUMERATION_LIMIT)
        .is_none()
    {
        return Err(Error::Budget("component too large to enumerate".into()));
    }
    let view = out.out_neighbors(group[0]).to_vec();
    let view_radices = radices(out, group[0]);
    let others: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|w| !group.contains(w))
        .collect();
    let mut coloring = vec![0; out.len()];
    let mut full = vec![0; out.len() + 1];
    let mut lost: HashMap<usize, Vec<Point>> = HashMap::new();
    let mut odo = Odometer::new(comp.iter().map(|&w| out.hat(w)).collect());
    while odo.advance() {
        for (&w, &c) in comp.iter().zip(odo.digits()) {
            coloring[w] = c;
            full[old(w)] = c;
        }
        if others
            .iter()
            .all(|&w| !f.plan(old(w)).guesses(&full).contains(coloring[w]))
        {
            let key = rank(
                &view_radices,
                &view.iter().map(|&w| coloring[w]).collect::<Vec<_>>(),
            );
            let pt: Point = group.iter().map(|&u| coloring[u]).collect();
            let entry = lost.entry(key).or_default();
            if !entry.contains(&pt) {
                entry.push(pt);
            }
        }
    }
    Ok(lost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{cycle_game, path_game};
    use crate::oracle::decide_winnable;
    use crate::outcome::SearchBudget;

    #[test]
    fn degree_two_vertex_becomes_arcs() {
        let g = cycle_game(&[2, 2, 5, 2, 2]).unwrap();
        let f = decide_winnable(&g, &SearchBudget::default())
            .certificate
            .unwrap();
        let c = replace_vertex_with_arcs(&g, &f, 2).unwrap();
        assert_eq!(c.verified, Some(true));
        let d = c.game.digraph();
        let (v1, v3, v4, v0) = (
            d.vertex("v1").unwrap(),
            d.vertex("v3").unwrap(),
            d.vertex("v4").unwrap(),
            d.vertex("v0").unwrap(),
        );
        assert!(d.has_arc(v1, v4) && d.has_arc(v3, v0));
    }

    #[test]
    fn boundary_ratio_rejected() {
        let g = path_game(&[2, 2]).unwrap();
        let f = decide_winnable(&g, &SearchBudget::default())
            .certificate
            .unwrap();
        assert!(matches!(
            replace_vertex_with_arcs(&g, &f, 0),
            Err(Error::Hypothesis(_))
        ));
    }
}
