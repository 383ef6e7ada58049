//! Attaching new vertices and paths to a winnable game.

use super::product::Factor;
use super::{
    clique_product, fresh_name, is_clique, names_of, require_wins, strategy_from_views,
    Construction, ConstructionRecipe,
};
use crate::classifiers::interval_strategy;
use crate::error::{Error, Result};
use crate::game::{Color, ColorSet, Game, Plan, Strategy};
use crate::hints::{derived_hint_game, partition_hint, undo_derived, HintStrategy};

fn check_set(game: &Game, set: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; game.len()];
    for &v in set {
        if v >= game.len() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Hypothesis(format!(
                "{what} repeats or leaves the game"
            )));
        }
    }
    Ok(())
}

/// `game` plus a new vertex `x` adjacent to every member of `set`.
fn with_new_vertex(
    game: &Game,
    set: &[usize],
    base: &str,
    hx: u32,
    gx: u32,
) -> Result<(Game, usize)> {
    let mut g = game.clone();
    let x = g.add_vertex(fresh_name(game, base), hx, gx)?;
    for &y in set {
        g.digraph_mut().add_edge(x, y)?;
    }
    Ok((g, x))
}

fn div_ceil(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

/// Attaches `x` with `(hx, gx)` universal to `y`, raising hatness by `k[i]` and guessness by
/// `q[i]` on `y[i]`. Built from the partition hint whose `n`-th part holds the colorings first
/// reached by the `n`-th box `∏[h(v_i) + ⌊n·k_i/(hx−1)⌋]`.
pub fn attach_vertex_general(
    game: &Game,
    f: &Strategy,
    y: &[usize],
    q: &[u32],
    k: &[u32],
    hx: u32,
    gx: u32,
) -> Result<Construction> {
    check_set(game, y, "Y")?;
    if q.len() != y.len() || k.len() != y.len() {
        return Err(Error::Hypothesis("one q and one k per member of Y".into()));
    }
    if hx < 2 || gx == 0 || gx >= hx {
        return Err(Error::Hypothesis(format!(
            "need 0 < gx < hx, got hx={hx}, gx={gx}"
        )));
    }
    require_wins(game, f, "input")?;
    for (i, &v) in y.iter().enumerate() {
        let steps = div_ceil(k[i], hx - 1);
        let need_g = (hx - gx) * steps;
        let need_q = (hx - gx - 1) * steps;
        let have_g = game.guess(v) + q[i];
        if have_g < need_g || q[i] < need_q {
            return Err(Error::Hypothesis(format!(
                "`{}`: need g+q ≥ {need_g} and q ≥ {need_q}, have g+q = {have_g} and q = {}",
                game.name(v),
                q[i]
            )));
        }
    }

    let mut raised = game.clone();
    for (i, &v) in y.iter().enumerate() {
        raised.set_hat_and_guess(v, game.hat(v) + k[i], game.guess(v) + q[i])?;
    }
    let (full, x) = with_new_vertex(&raised, y, "x", hx, gx)?;
    let subject: Vec<usize> = full.out_neighbors(x).to_vec();
    let pos_in_y: Vec<usize> = subject
        .iter()
        .map(|s| y.iter().position(|v| v == s).unwrap())
        .collect();
    let level = |slot: usize, d: u32| -> usize {
        let i = pos_in_y[slot];
        let (h, ki) = (game.hat(y[i]), k[i]);
        (0..hx as usize)
            .find(|&n| d < h + (n as u32 * ki) / (hx - 1))
            .expect("color beyond the last box")
    };
    let radices: Vec<u32> = subject.iter().map(|&v| full.hat(v)).collect();
    let mut parts = vec![Vec::new(); hx as usize];
    let mut odo = crate::game::Odometer::new(radices.clone());
    let mut idx = 0;
    while odo.advance() {
        let lv = odo
            .digits()
            .iter()
            .enumerate()
            .map(|(s, &d)| level(s, d))
            .max()
            .unwrap_or(0);
        parts[lv].push(idx);
        idx += 1;
    }
    let names = |vs: &[usize]| {
        vs.iter()
            .map(|&v| full.name(v).to_string())
            .collect::<Vec<_>>()
    };
    let audience = full.in_neighbors(x).to_vec();
    let hint = partition_hint(&parts, gx, names(&subject), names(&audience), radices)?;
    let hg = derived_hint_game(&full, x, &hint)?;
    let base = &hg.base;

    let clamp_input = |u: usize, c: Color| -> Color {
        if c < game.hat(u) {
            c
        } else {
            0
        }
    };
    let original = |v: usize, inputs: &[Color]| -> ColorSet {
        let clamped: Vec<Color> = game
            .out_neighbors(v)
            .iter()
            .zip(inputs)
            .map(|(&u, &c)| clamp_input(u, c))
            .collect();
        f.plan(v).guesses_for_inputs(&clamped)
    };
    let in_window = |n: usize, lv: usize| (lv + hx as usize - n) % (hx as usize) < (gx as usize);
    let mut plans = Vec::with_capacity(base.len());
    for v in 0..base.len() {
        let Some(i) = y.iter().position(|&w| w == v) else {
            plans.push(vec![Plan::from_fn(base, v, |inp| original(v, inp))?]);
            continue;
        };
        let slot = subject.iter().position(|&s| s == v).unwrap();
        let (h, hp, gp) = (game.hat(v), base.hat(v), base.guess(v));
        let mut ensemble = Vec::with_capacity(hx as usize);
        for n in 0..hx as usize {
            let outside: ColorSet = (0..hp).filter(|&d| !in_window(n, level(slot, d))).collect();
            let plan = if !in_window(n, 0) {
                let extra: ColorSet = outside.iter().filter(|&d| d >= h).collect();
                if extra.len() > q[i] {
                    return Err(Error::Strategy(format!(
                        "`{}` needs {} extra guesses",
                        game.name(v),
                        extra.len()
                    )));
                }
                Plan::from_fn(base, v, |inp| {
                    ColorSet(original(v, inp).0 | extra.0).padded(gp, hp)
                })?
            } else {
                if outside.len() > gp {
                    return Err(Error::Strategy(format!(
                        "`{}` needs {} guesses",
                        game.name(v),
                        outside.len()
                    )));
                }
                Plan::constant(base, v, outside.padded(gp, hp))?
            };
            ensemble.push(plan);
        }
        plans.push(ensemble);
    }
    let strategy = undo_derived(&full, x, &hint, &HintStrategy { plans })?;
    let rec = ConstructionRecipe::new("attach_vertex_general")
        .operand(game)
        .glue("Y", names_of(game, y))
        .glue("q", join(q))
        .glue("k", join(k))
        .glue("hx", hx.to_string())
        .glue("gx", gx.to_string());
    Construction::finish(full, strategy, rec)
}

fn join(xs: &[u32]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A hatness-2 vertex universal to `y`; each member gains its guessness in hatness.
pub fn attach_hatness2(game: &Game, f: &Strategy, y: &[usize]) -> Result<Construction> {
    let k: Vec<u32> = y.iter().map(|&v| game.guess(v)).collect();
    let mut c = attach_vertex_general(game, f, y, &vec![0; y.len()], &k, 2, 1)?;
    c.recipe.op = "attach_hatness2".into();
    Ok(c)
}

/// A vertex universal to the clique `y`: hatness on `y` is multiplied by `hx` and guessness
/// by `hx − gx`. Built as a product with the two-vertex game on `x` and a partner `z`.
pub fn attach_vertex_clique(
    game: &Game,
    f: &Strategy,
    y: &[usize],
    hx: u32,
    gx: u32,
) -> Result<Construction> {
    check_set(game, y, "Y")?;
    if y.is_empty() || !is_clique(game, y) {
        return Err(Error::Hypothesis("Y must be a nonempty clique".into()));
    }
    if gx == 0 || gx >= hx {
        return Err(Error::Hypothesis(format!(
            "need 0 < gx < hx, got hx={hx}, gx={gx}"
        )));
    }
    let x_name = fresh_name(game, "x");
    let mut pair = Game::new(
        crate::game::Digraph::new([x_name.clone(), format!("{x_name}~")])?,
        vec![hx, hx],
        vec![gx, hx - gx],
    )?;
    pair.digraph_mut().add_edge(0, 1)?;
    let pair_strategy = interval_strategy(&pair)?;
    let hub2 = [1];
    let mut c = clique_product(&[
        Factor {
            game,
            strategy: f,
            hub: y,
        },
        Factor {
            game: &pair,
            strategy: &pair_strategy,
            hub: &hub2,
        },
    ])?;
    c.recipe = ConstructionRecipe::new("attach_vertex_clique")
        .operand(game)
        .glue("Y", names_of(game, y))
        .glue("hx", hx.to_string())
        .glue("gx", gx.to_string());
    Ok(c)
}

/// A hatness-3 vertex universal to `y`, which holds the hatness-2 vertex `b`; every other
/// member of `y` gains its guessness in hatness.
pub fn attach_hatness3(game: &Game, f: &Strategy, y: &[usize], b: usize) -> Result<Construction> {
    check_set(game, y, "Y")?;
    if !y.contains(&b) {
        return Err(Error::Hypothesis("b must belong to Y".into()));
    }
    if game.hat(b) != 2 {
        return Err(Error::Hypothesis(format!(
            "`{}` has hatness {}, not 2",
            game.name(b),
            game.hat(b)
        )));
    }
    require_wins(game, f, "input")?;
    let mut raised = game.clone();
    for &v in y.iter().filter(|&&v| v != b) {
        raised.set_hat(v, game.hat(v) + game.guess(v))?;
    }
    let (full, x) = with_new_vertex(&raised, y, "x", 3, 1)?;
    let others: Vec<usize> = y.iter().copied().filter(|&v| v != b).collect();
    let is_new = |v: usize, c: Color| c >= game.hat(v);
    let strategy = strategy_from_views(&full, |v, view| {
        let original = |view: &crate::constructors::View| -> ColorSet {
            let inp: Vec<Color> = game
                .out_neighbors(v)
                .iter()
                .map(|&u| {
                    let c = view.get(u);
                    if is_new(u, c) {
                        0
                    } else {
                        c
                    }
                })
                .collect();
            f.plan(v).guesses_for_inputs(&inp)
        };
        if v == x {
            if others.iter().any(|&u| is_new(u, view.get(u))) {
                ColorSet::single(2)
            } else {
                ColorSet::single(1 - view.get(b))
            }
        } else if v == b {
            match view.get(x) {
                2 => original(view),
                c => ColorSet::single(c),
            }
        } else if others.contains(&v) {
            match view.get(x) {
                2 => original(view),
                _ => (game.hat(v)..full.hat(v)).collect(),
            }
        } else {
            original(view)
        }
    })?;
    let rec = ConstructionRecipe::new("attach_hatness3")
        .operand(game)
        .glue("Y", names_of(game, y))
        .glue("b", game.name(b));
    Construction::finish(full, strategy, rec)
}

/// Attaches the end of a new chain of hatness-2 vertices to `set`, doubling hatness on a
/// clique and adding guessness otherwise.
fn attach_start(game: &Game, f: &Strategy, set: &[usize]) -> Result<Construction> {
    if !set.is_empty() && is_clique(game, set) {
        attach_vertex_clique(game, f, set, 2, 1)
    } else {
        attach_hatness2(game, f, set)
    }
}

/// Attaches a Latvian path with hatnesses `pattern`, its first vertex universal to `x_set`
/// and its last universal to `z_set`. The path is grown as two chains of hatness-2 leaves from
/// the ends, closed by one finishing vertex of hatness 2 or 3.
pub fn attach_path(
    game: &Game,
    f: &Strategy,
    x_set: &[usize],
    z_set: &[usize],
    pattern: &[u32],
) -> Result<Construction> {
    check_set(game, x_set, "X")?;
    check_set(game, z_set, "Z")?;
    let (m, b_left) = path_plan(pattern).ok_or_else(|| {
        Error::Hypothesis(format!("hatness pattern {pattern:?} is not attachable"))
    })?;
    let n = pattern.len();
    let mut cur = Construction {
        game: game.clone(),
        strategy: f.clone(),
        recipe: ConstructionRecipe::default(),
        verified: None,
    };
    let mut placed: Vec<Option<usize>> = vec![None; n];
    let mut grow_chain =
        |cur: &mut Construction, start_set: &[usize], order: Vec<usize>| -> Result<()> {
            let mut prev: Option<usize> = None;
            for j in order {
                let next = match prev {
                    None => attach_start(&cur.game, &cur.strategy, start_set)?,
                    Some(p) => attach_vertex_clique(&cur.game, &cur.strategy, &[p], 2, 1)?,
                };
                *cur = next;
                let v = cur.game.len() - 1;
                placed[j] = Some(v);
                prev = Some(v);
            }
            Ok(())
        };
    grow_chain(&mut cur, x_set, (0..m).collect())?;
    grow_chain(&mut cur, z_set, (m + 1..n).rev().collect())?;
    let left: Vec<usize> = if m == 0 {
        x_set.to_vec()
    } else {
        vec![placed[m - 1].unwrap()]
    };
    let right: Vec<usize> = if m + 1 == n {
        z_set.to_vec()
    } else {
        vec![placed[m + 1].unwrap()]
    };
    let mut y = left.clone();
    for v in right.iter() {
        if !y.contains(v) {
            y.push(*v);
        }
    }
    let mut done = if pattern[m] == 2 {
        attach_hatness2(&cur.game, &cur.strategy, &y)?
    } else {
        let b = if b_left { left[0] } else { right[0] };
        attach_hatness3(&cur.game, &cur.strategy, &y, b)?
    };
    let rename: Vec<(usize, usize)> = placed
        .iter()
        .enumerate()
        .filter_map(|(j, v)| v.map(|v| (j, v)))
        .chain(std::iter::once((m, done.game.len() - 1)))
        .collect();
    done.recipe = ConstructionRecipe::new("attach_path")
        .operand(game)
        .glue("X", names_of(game, x_set))
        .glue("Z", names_of(game, z_set))
        .glue("pattern", join(pattern))
        .glue("path", {
            let mut by_pos = rename.clone();
            by_pos.sort();
            by_pos
                .iter()
                .map(|&(_, v)| done.game.name(v).to_string())
                .collect::<Vec<_>>()
                .join(",")
        });
    Ok(done)
}

/// Finishing position and, for a hatness-3 finisher, whether the hatness-2 vertex it keeps
/// lies on its left. Chains are `4,…,4,2` growing inward, and the finisher raises its chain
/// neighbors from 2 to 3 except the one it keeps.
fn path_plan(pattern: &[u32]) -> Option<(usize, bool)> {
    let n = pattern.len();
    for m in 0..n {
        for keep_left in [true, false] {
            let p = pattern[m];
            if p != 2 && p != 3 {
                continue;
            }
            if p == 2 && !keep_left {
                continue;
            }
            let kept_side = |left: bool| p == 3 && left == keep_left;
            if p == 3 && ((keep_left && m == 0) || (!keep_left && m + 1 == n)) {
                continue;
            }
            let chain_ok = |range: Vec<usize>, end: usize, left: bool| {
                range.iter().all(|&j| {
                    let want = if j == end {
                        if kept_side(left) {
                            2
                        } else {
                            3
                        }
                    } else {
                        4
                    };
                    pattern[j] == want
                })
            };
            let left_ok = m == 0 || chain_ok((0..m).collect(), m - 1, true);
            let right_ok = m + 1 == n || chain_ok((m + 1..n).collect(), m + 1, false);
            if left_ok && right_ok {
                return Some((m, keep_left));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_patterns() {
        assert_eq!(path_plan(&[2, 3]), Some((0, true)));
        assert_eq!(path_plan(&[3, 2]), Some((0, false)));
        assert_eq!(path_plan(&[2, 3, 4, 4]), Some((0, true)));
        assert_eq!(path_plan(&[4, 3, 2, 3, 4]), Some((2, true)));
        assert_eq!(path_plan(&[4, 2, 3, 3, 4]), Some((2, true)));
        assert_eq!(path_plan(&[]), None);
        assert_eq!(path_plan(&[4, 4]), None);
    }
}
