use super::clique::classify_clique;
use super::tree::{classify_latvian_tree, power_tree_strategy};
use crate::constructors::{attach_hatness2, attach_hatness3};
use crate::ease::lift_along;
use crate::error::{Error, Result};
use crate::game::{ColorSet, Game, Strategy};
use crate::outcome::{Outcome, Rule, TraceStep};

/// Vertices in cycle order when the game is played on an undirected cycle of length ≥ 3.
pub fn cycle_order(game: &Game) -> Option<Vec<usize>> {
    let d = game.digraph();
    let n = game.len();
    if n < 3 || !d.is_symmetric() || (0..n).any(|v| d.out_neighbors(v).len() != 2) {
        return None;
    }
    let mut order = vec![0, d.out_neighbors(0)[0]];
    while order.len() < n {
        let [a, b] = [
            d.out_neighbors(order[order.len() - 1])[0],
            d.out_neighbors(order[order.len() - 1])[1],
        ];
        let prev = order[order.len() - 2];
        let next = if a == prev { b } else { a };
        if next == 0 {
            return None;
        }
        order.push(next);
    }
    d.has_edge(order[n - 1], 0).then_some(order)
}

const TRIPLE: [[[u32; 3]; 3]; 6] = [
    [[1, 2, 1], [1, 0, 0], [2, 2, 0]],
    [[0, 0, 1], [1, 2, 1], [0, 2, 2]],
    [[2, 2, 1], [0, 1, 1], [0, 2, 0]],
    [[1, 2, 1], [1, 0, 0], [2, 2, 0]],
    [[0, 1, 0], [2, 1, 1], [2, 2, 0]],
    [[0, 1, 1], [0, 2, 0], [2, 2, 1]],
];

const SQUARE: [[[u32; 3]; 3]; 4] = [
    [[1, 0, 0], [2, 1, 2], [2, 0, 1]],
    [[0, 2, 0], [0, 1, 2], [2, 1, 1]],
    [[1, 2, 1], [2, 0, 0], [1, 0, 2]],
    [[2, 0, 0], [1, 1, 2], [1, 2, 0]],
];

/// Winning tables for the cycle with every hatness 3, for length 4 or a multiple of 3. Each
/// sage reads its two neighbors in cycle order (predecessor, successor).
fn hatness3_strategy(game: &Game, order: &[usize]) -> Result<Strategy> {
    let k = order.len();
    let mut pos = vec![0; game.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    Strategy::from_fn(game, |v, inputs| {
        let i = pos[v];
        let left_vertex = order[(i + k - 1) % k];
        let nb = game.out_neighbors(v);
        let (left, right) = if nb[0] == left_vertex {
            (inputs[0], inputs[1])
        } else {
            (inputs[1], inputs[0])
        };
        let table = if k == 4 {
            &SQUARE[i]
        } else if i < 3 {
            &TRIPLE[i]
        } else {
            &TRIPLE[3 + i % 3]
        };
        ColorSet::single(table[left as usize][right as usize])
    })
}

/// The game restricted to `verts` with hatnesses replaced by `hats`.
fn path_with(game: &Game, verts: &[usize], hats: &[u32]) -> Result<Game> {
    let mut sub = game.restrict_indices(verts);
    for (&v, &h) in verts.iter().zip(hats) {
        let i = sub.vertex(game.name(v))?;
        sub.set_hat(i, h)?;
    }
    Ok(sub)
}

fn two_four_path(game: &Game, verts: &[usize]) -> Result<(Game, Strategy)> {
    let n = verts.len();
    let hats: Vec<u32> = (0..n)
        .map(|i| if i == 0 || i == n - 1 { 2 } else { 4 })
        .collect();
    power_tree_strategy(&path_with(game, verts, &hats)?)
}

/// Winning certificate on the cycle `order`, rotated so that `order[0]` starts the pattern.
fn pattern_certificate(game: &Game, order: &[usize], pattern: Pattern) -> Result<Strategy> {
    let k = order.len();
    match pattern {
        Pattern::TwoTwos(j) => {
            let sub = game.restrict_indices(&order[..=j]);
            let out = classify_latvian_tree(&sub)?;
            lift_along(out.certificate.as_ref().unwrap(), &sub, game)
        }
        Pattern::ThreeTwoThree => {
            // order[0] has hatness 2 between two 3's: attach it to a (2,4,...,4,2) path
            let (path, f) = two_four_path(game, &order[1..])?;
            let y = [
                path.vertex(game.name(order[1]))?,
                path.vertex(game.name(order[k - 1]))?,
            ];
            let c = attach_hatness2(&path, &f, &y)?;
            let x = c.game.len() - 1;
            let built = c.game.renamed(x, game.name(order[0]))?;
            lift_along(&c.strategy, &built, game)
        }
        Pattern::TwoThreeThree => {
            // order[1] is the middle 3: attach it to the path order[2..] + order[0]
            let mut rest: Vec<usize> = order[2..].to_vec();
            rest.push(order[0]);
            let (path, f) = two_four_path(game, &rest)?;
            let b = path.vertex(game.name(order[0]))?;
            let y = [b, path.vertex(game.name(order[2]))?];
            let c = attach_hatness3(&path, &f, &y, b)?;
            let x = c.game.len() - 1;
            let built = c.game.renamed(x, game.name(order[1]))?;
            lift_along(&c.strategy, &built, game)
        }
        Pattern::AllThree => {
            let mut threes = game.clone();
            for v in 0..game.len() {
                threes.set_hat(v, 3)?;
            }
            lift_along(&hatness3_strategy(&threes, order)?, &threes, game)
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Pattern {
    /// Hatness 2 at positions 0 and `j`, with only 3's and 4's between.
    TwoTwos(usize),
    ThreeTwoThree,
    TwoThreeThree,
    AllThree,
}

fn rotations(order: &[usize]) -> Vec<Vec<usize>> {
    let k = order.len();
    let mut out = Vec::with_capacity(2 * k);
    for dir in [false, true] {
        for s in 0..k {
            out.push(
                (0..k)
                    .map(|i| {
                        if dir {
                            order[(s + k - i) % k]
                        } else {
                            order[(s + i) % k]
                        }
                    })
                    .collect(),
            );
        }
    }
    out
}

/// For cycles with all hatnesses in `{2,3,4}` and length ≥ 4.
fn find_pattern(game: &Game, order: &[usize]) -> Option<(Vec<usize>, Pattern)> {
    let k = order.len();
    let h = |o: &[usize], i: usize| game.hat(o[i % k]);
    let all = rotations(order);
    for o in &all {
        if h(o, 0) == 2 {
            match (1..k).find(|&j| h(o, j) == 2) {
                Some(j) if j < k - 1 => return Some((o.clone(), Pattern::TwoTwos(j))),
                _ => {}
            }
        }
    }
    for o in &all {
        if h(o, k - 1) == 3 && h(o, 0) == 2 && h(o, 1) == 3 {
            return Some((o.clone(), Pattern::ThreeTwoThree));
        }
        if h(o, 0) == 2 && h(o, 1) == 3 && h(o, 2) == 3 {
            return Some((o.clone(), Pattern::TwoThreeThree));
        }
    }
    ((k == 4 || k % 3 == 0) && order.iter().all(|&v| game.hat(v) <= 3))
        .then(|| (order.to_vec(), Pattern::AllThree))
}

/// Maximal winnable hatness sequences on the 4-cycle, `0` standing for any hatness.
const SQUARE_MAXIMAL: [[u32; 4]; 5] = [
    [3, 3, 3, 3],
    [2, 2, 0, 0],
    [2, 4, 2, 0],
    [2, 3, 3, 4],
    [3, 2, 3, 4],
];

fn square_dominated(game: &Game, order: &[usize]) -> bool {
    rotations(order).iter().any(|o| {
        SQUARE_MAXIMAL.iter().any(|m| {
            o.iter()
                .zip(m)
                .all(|(&v, &cap)| cap == 0 || game.hat(v) <= cap)
        })
    })
}

/// Latvian cycles. Vertices of hatness ≥ 5 are deleted first; what remains is decided as
/// a forest, by the ratio sum on a triangle, or by the short list of winning patterns.
pub fn classify_latvian_cycle(game: &Game) -> Result<Outcome> {
    let order = cycle_order(game).ok_or_else(|| Error::Hypothesis("not a cycle".into()))?;
    if !game.is_latvian() {
        return Err(Error::Hypothesis("not a Latvian game".into()));
    }
    let names: Vec<String> = order.iter().map(|&v| game.name(v).to_string()).collect();
    let k = order.len();
    if k == 3 {
        let mut out = classify_clique(game)?;
        out.trace
            .insert(0, TraceStep::new(Rule::CycleTriangle, names));
        return Ok(out);
    }
    let high: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&v| game.hat(v) >= 5)
        .collect();
    if k == 4 && high.len() < 4 {
        let winnable = square_dominated(game, &order);
        let step = TraceStep::new(Rule::CycleSquare, names.clone());
        if !winnable {
            return Ok(Outcome::unwinnable(vec![step]));
        }
        if high.is_empty() {
            let (o, p) = find_pattern(game, &order)
                .ok_or_else(|| Error::Strategy("square pattern without construction".into()))?;
            return Ok(Outcome::winnable(
                pattern_certificate(game, &o, p)?,
                vec![step],
            ));
        }
    }
    if !high.is_empty() {
        let keep: Vec<usize> = (0..game.len()).filter(|v| !high.contains(v)).collect();
        let deleted: Vec<String> = high.iter().map(|&v| game.name(v).to_string()).collect();
        let mut trace = vec![TraceStep::new(Rule::CycleHighHatness, deleted)];
        if keep.is_empty() {
            return Ok(Outcome::unwinnable(trace));
        }
        let sub = game.restrict_indices(&keep);
        let out = classify_latvian_tree(&sub)?;
        trace.extend(out.trace);
        return Ok(match out.certificate {
            Some(f) => Outcome::winnable(lift_along(&f, &sub, game)?, trace),
            None => Outcome::unwinnable(trace),
        });
    }
    let step = TraceStep::new(Rule::CycleTwoToFour, names);
    match find_pattern(game, &order) {
        Some((o, p)) => Ok(Outcome::winnable(
            pattern_certificate(game, &o, p)?,
            vec![step.with_rewrite(format!("{p:?}"))],
        )),
        None => Ok(Outcome::unwinnable(vec![step])),
    }
}
