//! Covers, sprawls and combinatorial prisms.
//!
//! Points are integer vectors. An `A`-cover of a point set `Q` picks `a_i` values on each
//! axis `i` so that every point of `Q` matches a picked value on some axis; a set without
//! an `A`-cover is an `A`-sprawl. Inside a box, covers and prisms are complementary: `Q` is
//! coverable exactly when the rest of the box holds a prism of measurements `d_i − a_i`.

use crate::error::{Error, Result};
use crate::game::{Color, ColorSet, Game, Odometer, Plan, Strategy};
use crate::hints::canonical_hint_assignments;
use crate::outcome::{Outcome, Rule, SearchBudget, SearchStats, TraceStep};

pub type Point = Vec<u32>;

/// A product `Z_1 × … × Z_m` of finite coordinate sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prism {
    pub axes: Vec<Vec<u32>>,
}

impl Prism {
    pub fn measurements(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.axes.iter().zip(p).all(|(z, x)| z.contains(x))
    }

    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// `a_i` distinct values per axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverList {
    pub values: Vec<Vec<u32>>,
}

impl CoverList {
    pub fn covers(&self, p: &[u32]) -> bool {
        self.values.iter().zip(p).any(|(vals, x)| vals.contains(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverResult {
    Cover(CoverList),
    /// No cover exists; the witness is an inclusion-minimal sprawling subset when one was
    /// extracted.
    Sprawl {
        witness: Option<Vec<Point>>,
    },
}

impl CoverResult {
    pub fn cover(&self) -> Option<&CoverList> {
        match self {
            CoverResult::Cover(c) => Some(c),
            CoverResult::Sprawl { .. } => None,
        }
    }
}

/// Largest sprawl for which a minimal witness is extracted.
const WITNESS_LIMIT: usize = 64;

fn search_cover(q: &[&[u32]], a: &[u32], values: &mut Vec<Vec<u32>>) -> bool {
    let Some(p) = q.iter().find(|p| {
        !values
            .iter()
            .zip(p.iter())
            .any(|(vals, x)| vals.contains(x))
    }) else {
        return true;
    };
    for i in 0..a.len() {
        if values[i].len() < a[i] as usize {
            values[i].push(p[i]);
            if search_cover(q, a, values) {
                return true;
            }
            values[i].pop();
        }
    }
    false
}

fn coverable(q: &[&[u32]], a: &[u32]) -> Option<Vec<Vec<u32>>> {
    let mut values = vec![Vec::new(); a.len()];
    search_cover(q, a, &mut values).then_some(values)
}

/// Exact cover search. Unused capacity is filled with the smallest values not yet chosen,
/// kept below `bounds[i]` when bounds are given and possible.
pub fn find_cover(q: &[Point], a: &[u32], bounds: Option<&[u32]>) -> CoverResult {
    let refs: Vec<&[u32]> = q.iter().map(|p| p.as_slice()).collect();
    if let Some(mut values) = coverable(&refs, a) {
        for (i, vals) in values.iter_mut().enumerate() {
            let mut x = 0;
            while vals.len() < a[i] as usize {
                if !vals.contains(&x) {
                    vals.push(x);
                }
                x += 1;
            }
            vals.sort_unstable();
            if let Some(b) = bounds {
                debug_assert!(a[i] > b[i] || vals.iter().all(|&v| v < b[i]));
            }
        }
        let cover = CoverList { values };
        assert!(q.iter().all(|p| cover.covers(p)));
        return CoverResult::Cover(cover);
    }
    let witness = (q.len() <= WITNESS_LIMIT).then(|| {
        let mut keep: Vec<&[u32]> = refs.clone();
        let mut i = 0;
        while i < keep.len() {
            let mut trial = keep.clone();
            trial.remove(i);
            if coverable(&trial, a).is_none() {
                keep = trial;
            } else {
                i += 1;
            }
        }
        keep.into_iter().map(|p| p.to_vec()).collect()
    });
    CoverResult::Sprawl { witness }
}

fn choose(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn rec(from: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in from..n {
            if (n - x) as usize >= k - cur.len() {
                cur.push(x);
                rec(x + 1, n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A prism of the given measurements inside `dims` that avoids every point of `q`.
pub fn prism_in_complement(dims: &[u32], q: &[Point], target: &[u32]) -> Option<Prism> {
    if dims.len() != target.len() || dims.iter().zip(target).any(|(d, t)| t > d) {
        return None;
    }
    fn rec(
        axis: usize,
        dims: &[u32],
        target: &[u32],
        live: Vec<&Point>,
        axes: &mut Vec<Vec<u32>>,
    ) -> bool {
        if axis == dims.len() {
            return live.is_empty();
        }
        for z in choose(dims[axis], target[axis] as usize) {
            let still: Vec<&Point> = live
                .iter()
                .copied()
                .filter(|p| z.contains(&p[axis]))
                .collect();
            axes.push(z);
            if rec(axis + 1, dims, target, still, axes) {
                return true;
            }
            axes.pop();
        }
        false
    }
    let mut axes = Vec::new();
    rec(0, dims, target, q.iter().collect(), &mut axes).then_some(Prism { axes })
}

/// Every point of the box `∏[d_i]`.
pub fn box_points(dims: &[u32]) -> Vec<Point> {
    let mut out = Vec::new();
    let mut odo = Odometer::new(dims.to_vec());
    while odo.advance() {
        out.push(odo.digits().to_vec());
    }
    out
}

/// A smallest `A`-sprawl inside the box, found by exhaustive search over point sets that
/// contain the origin. `None` when some axis can cover the whole box.
pub fn min_sprawl(dims: &[u32], a: &[u32]) -> Option<(usize, Vec<Point>)> {
    if dims.len() != a.len() || dims.iter().zip(a).any(|(d, ai)| d <= ai) {
        return None;
    }
    let pts = box_points(dims);
    let lower = a.iter().sum::<u32>() as usize + 1;
    let upper = pts.len();
    for size in lower..=upper {
        let mut chosen: Vec<usize> = vec![0];
        if let Some(w) = sprawl_of_size(&pts, a, size, &mut chosen) {
            return Some((size, w));
        }
    }
    None
}

fn sprawl_of_size(
    pts: &[Point],
    a: &[u32],
    size: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<Point>> {
    if chosen.len() == size {
        let q: Vec<&[u32]> = chosen.iter().map(|&i| pts[i].as_slice()).collect();
        return coverable(&q, a)
            .is_none()
            .then(|| chosen.iter().map(|&i| pts[i].clone()).collect());
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for i in start..pts.len() {
        if pts.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(i);
        if let Some(w) = sprawl_of_size(pts, a, size, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

/// `x` prisms of measurements `a` inside `∏[d_i]` with no point in more than `y` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingInstance {
    pub d: Vec<u32>,
    pub a: Vec<u32>,
    pub x: u32,
    pub y: u32,
}

impl PackingInstance {
    pub fn validate(&self) -> Result<()> {
        if self.d.len() != self.a.len() || self.x == 0 || self.y == 0 {
            return Err(Error::Hypothesis("malformed packing instance".into()));
        }
        if self.a.iter().zip(&self.d).any(|(a, d)| a > d || *a == 0) {
            return Err(Error::Hypothesis(
                "prism measurements must lie in 1..=d".into(),
            ));
        }
        Ok(())
    }
}

/// Exact backtracking. Prisms are chosen in nondecreasing order of a fixed list, and the
/// first one is fixed since relabeling values on each axis acts transitively on prisms.
pub fn solve_star_packing(inst: &PackingInstance) -> Result<Option<Vec<Prism>>> {
    inst.validate()?;
    let dims = &inst.d;
    let mut prisms: Vec<Prism> = vec![Prism { axes: Vec::new() }];
    for (i, &d) in dims.iter().enumerate() {
        let opts = choose(d, inst.a[i] as usize);
        prisms = prisms
            .into_iter()
            .flat_map(|p| {
                opts.iter().map(move |z| {
                    let mut q = p.clone();
                    q.axes.push(z.clone());
                    q
                })
            })
            .collect();
    }
    let strides: Vec<usize> = {
        let mut s = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * dims[i + 1] as usize;
        }
        s
    };
    let cells: Vec<Vec<usize>> = prisms
        .iter()
        .map(|p| {
            p.points()
                .iter()
                .map(|pt| pt.iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum())
                .collect()
        })
        .collect();
    let total: usize = dims.iter().map(|&d| d as usize).product();
    let volume: usize = inst.a.iter().map(|&a| a as usize).product();
    if volume * inst.x as usize > total * inst.y as usize {
        return Ok(None);
    }
    let mut load = vec![0u32; total];
    let mut picked = Vec::new();
    fn rec(
        from: usize,
        cells: &[Vec<usize>],
        load: &mut [u32],
        picked: &mut Vec<usize>,
        x: usize,
        y: u32,
        volume: usize,
    ) -> bool {
        if picked.len() == x {
            return true;
        }
        let spare: usize = load.iter().map(|&l| (y - l) as usize).sum();
        if spare < (x - picked.len()) * volume {
            return false;
        }
        let upto = if picked.is_empty() { 1 } else { cells.len() };
        for i in from..upto {
            if cells[i].iter().all(|&c| load[c] < y) {
                for &c in &cells[i] {
                    load[c] += 1;
                }
                picked.push(i);
                if rec(i, cells, load, picked, x, y, volume) {
                    return true;
                }
                picked.pop();
                for &c in &cells[i] {
                    load[c] -= 1;
                }
            }
        }
        false
    }
    let found = rec(
        0,
        &cells,
        &mut load,
        &mut picked,
        inst.x as usize,
        inst.y,
        volume,
    );
    Ok(found.then(|| picked.iter().map(|&i| prisms[i].clone()).collect()))
}

/// Center and leaves when the game is a star: every other vertex is joined by an edge to
/// the center and to nothing else.
pub fn star_center(game: &Game) -> Option<usize> {
    let d = game.digraph();
    let n = game.len();
    if n < 2 || !d.is_symmetric() {
        return None;
    }
    (0..n).find(|&c| (0..n).all(|v| v == c || (d.out_neighbors(v) == [c] && d.has_edge(c, v))))
}

/// Decides a star by prism packing and builds the strategy from the packing: the center
/// guesses the prisms holding the leaf colors, and on center color `c` each leaf guesses the
/// values off the `c`-th prism.
pub fn star_outcome(game: &Game) -> Result<Outcome> {
    let center = star_center(game).ok_or_else(|| Error::Hypothesis("not a star".into()))?;
    let leaves = game.out_neighbors(center).to_vec();
    let inst = PackingInstance {
        d: leaves.iter().map(|&l| game.hat(l)).collect(),
        a: leaves
            .iter()
            .map(|&l| game.hat(l) - game.guess(l))
            .collect(),
        x: game.hat(center),
        y: game.guess(center),
    };
    let names: Vec<String> = (0..game.len()).map(|v| game.name(v).to_string()).collect();
    let rewrite = format!("d={:?} a={:?} x={} y={}", inst.d, inst.a, inst.x, inst.y);
    let step = TraceStep::new(Rule::StarPacking, names).with_rewrite(rewrite);
    let Some(prisms) = solve_star_packing(&inst)? else {
        return Ok(Outcome::unwinnable(vec![step]));
    };
    let strategy = Strategy {
        plans: (0..game.len())
            .map(|v| {
                if v == center {
                    Plan::from_fn(game, v, |inp| {
                        prisms
                            .iter()
                            .enumerate()
                            .filter(|(_, p)| p.contains(inp))
                            .map(|(c, _)| c as Color)
                            .collect::<ColorSet>()
                            .padded(game.guess(v), game.hat(v))
                    })
                } else {
                    let axis = leaves.iter().position(|&l| l == v).unwrap();
                    Plan::from_fn(game, v, |inp| {
                        let z = &prisms[inp[0] as usize].axes[axis];
                        (0..game.hat(v)).filter(|c| !z.contains(c)).collect()
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(Outcome::winnable(strategy, vec![step]))
}

/// Searches for the witness family of a complete bipartite game: a hint from each sage on
/// one side such that, for every choice of utterances, the points of the other side left
/// unguessed can be covered. The side with fewer colorings covers.
pub fn bipartite_witness_search(
    game: &Game,
    budget: &SearchBudget,
) -> Result<(Outcome, Option<Vec<Vec<ColorSet>>>)> {
    let (left, right) =
        bipartition(game).ok_or_else(|| Error::Hypothesis("not complete bipartite".into()))?;
    let space = |side: &[usize]| game.space_size(side).unwrap_or(u64::MAX);
    let (cover_side, hint_side) = if space(&left) <= space(&right) {
        (left, right)
    } else {
        (right, left)
    };
    let dims: Vec<u32> = cover_side.iter().map(|&v| game.hat(v)).collect();
    let a: Vec<u32> = cover_side.iter().map(|&v| game.guess(v)).collect();
    let pts = box_points(&dims);
    if pts.len() > 64 {
        return Err(Error::Budget("covering side has too many colorings".into()));
    }
    let mut lists: Vec<Vec<Vec<ColorSet>>> = Vec::new();
    let mut tried = 0u64;
    for &b in &hint_side {
        let mut all = Vec::new();
        let mut over = false;
        canonical_hint_assignments(pts.len(), game.guess(b), game.hat(b), &mut |asg| {
            all.push(asg.to_vec());
            over = all.len() as u64 > budget.max_nodes;
            over
        });
        if over {
            return Ok((budget_outcome(game), None));
        }
        lists.push(all);
    }
    let names: Vec<String> = (0..game.len()).map(|v| game.name(v).to_string()).collect();
    let hint_hats: Vec<u32> = hint_side.iter().map(|&b| game.hat(b)).collect();
    let mut idx = vec![0usize; hint_side.len()];
    loop {
        tried += 1;
        if tried > budget.max_nodes {
            return Ok((budget_outcome(game), None));
        }
        let family: Vec<&Vec<ColorSet>> =
            idx.iter().enumerate().map(|(i, &j)| &lists[i][j]).collect();
        let mut ok = true;
        let mut utt = Odometer::new(hint_hats.clone());
        while utt.advance() {
            let q = utt.digits();
            let open: Vec<Point> = pts
                .iter()
                .enumerate()
                .filter(|(p, _)| family.iter().zip(q).all(|(f, &qi)| !f[*p].contains(qi)))
                .map(|(_, pt)| pt.clone())
                .collect();
            if find_cover(&open, &a, Some(&dims)).cover().is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            let fam: Vec<Vec<ColorSet>> = family.into_iter().cloned().collect();
            let strategy =
                bipartite_strategy(game, &cover_side, &hint_side, &fam, &pts, &a, &dims)?;
            let step = TraceStep::new(Rule::BipartiteFamily, names)
                .with_rewrite(format!("{} families tried", tried));
            let out = Outcome::winnable(strategy, vec![step]).with_stats(SearchStats {
                nodes: tried,
                ..Default::default()
            });
            return Ok((out, Some(fam)));
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                let step = TraceStep::new(Rule::BipartiteFamily, names)
                    .with_rewrite(format!("{} families tried", tried));
                let out = Outcome::unwinnable(vec![step]).with_stats(SearchStats {
                    nodes: tried,
                    ..Default::default()
                });
                return Ok((out, None));
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn budget_outcome(game: &Game) -> Outcome {
    let names = (0..game.len()).map(|v| game.name(v).to_string()).collect();
    Outcome::unknown(vec![TraceStep::new(Rule::BudgetExceeded, names)])
}

fn bipartite_strategy(
    game: &Game,
    cover_side: &[usize],
    hint_side: &[usize],
    family: &[Vec<ColorSet>],
    pts: &[Point],
    a: &[u32],
    dims: &[u32],
) -> Result<Strategy> {
    let plans = (0..game.len())
        .map(|v| {
            if let Some(i) = hint_side.iter().position(|&b| b == v) {
                // inputs are the covering side in canonical order, the same order as `pts`
                Plan::from_fn(game, v, |inp| {
                    let p = pts.iter().position(|pt| pt.as_slice() == inp).unwrap();
                    family[i][p]
                })
            } else {
                let axis = cover_side.iter().position(|&c| c == v).unwrap();
                Plan::from_fn(game, v, |q| {
                    let open: Vec<Point> = pts
                        .iter()
                        .enumerate()
                        .filter(|(p, _)| family.iter().zip(q).all(|(f, &qi)| !f[*p].contains(qi)))
                        .map(|(_, pt)| pt.clone())
                        .collect();
                    match find_cover(&open, a, Some(dims)) {
                        CoverResult::Cover(c) => c.values[axis].iter().copied().collect(),
                        CoverResult::Sprawl { .. } => ColorSet::EMPTY,
                    }
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Strategy { plans })
}

/// The two sides of a complete bipartite game, each in canonical order.
pub fn bipartition(game: &Game) -> Option<(Vec<usize>, Vec<usize>)> {
    let d = game.digraph();
    let n = game.len();
    if n < 2 || !d.is_symmetric() {
        return None;
    }
    let left: Vec<usize> = (0..n).filter(|&v| !d.has_arc(0, v)).collect();
    let right: Vec<usize> = (0..n).filter(|&v| d.has_arc(0, v)).collect();
    let complete = left.iter().all(|&u| {
        right.iter().all(|&w| d.has_edge(u, w)) && left.iter().all(|&w| !d.has_arc(u, w))
    }) && right
        .iter()
        .all(|&u| right.iter().all(|&w| !d.has_arc(u, w)));
    (complete && !right.is_empty()).then_some((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    #[test]
    fn cover_examples() {
        let q = vec![vec![0, 0], vec![0, 1], vec![1, 0]];
        let c = find_cover(&q, &[1, 1], Some(&[2, 2]));
        assert_eq!(c.cover().unwrap().values, vec![vec![0], vec![0]]);
        let full = box_points(&[2, 2]);
        assert!(
            matches!(find_cover(&full, &[1, 1], None), CoverResult::Sprawl { witness: Some(w) } if w.len() == 4)
        );
    }

    #[test]
    fn prism_examples() {
        let q = vec![vec![0, 0], vec![0, 1], vec![1, 0]];
        let p = prism_in_complement(&[2, 2], &q, &[1, 1]).unwrap();
        assert_eq!(p.axes, vec![vec![1], vec![1]]);
        assert!(prism_in_complement(&[2, 2], &box_points(&[2, 2]), &[1, 1]).is_none());
    }

    #[test]
    fn min_sprawl_examples() {
        assert_eq!(min_sprawl(&[3], &[1]).unwrap().0, 2);
        assert_eq!(min_sprawl(&[2, 2], &[1, 1]).unwrap().0, 4);
        assert_eq!(min_sprawl(&[3, 3], &[1, 1]).unwrap().0, 3);
        assert!(min_sprawl(&[2], &[2]).is_none());
    }

    #[test]
    fn packing_examples() {
        let inst = |x| PackingInstance {
            d: vec![2, 2],
            a: vec![1, 1],
            x,
            y: 1,
        };
        assert_eq!(solve_star_packing(&inst(4)).unwrap().unwrap().len(), 4);
        assert!(solve_star_packing(&inst(5)).unwrap().is_none());
    }

    #[test]
    fn stars_against_oracle() {
        for (center, p, q) in [(4, 2, 2), (5, 2, 2), (6, 2, 3), (2, 2, 3), (3, 3, 3)] {
            let g = GameBuilder::new()
                .vertex("c", center, 1)
                .vertex("p", p, 1)
                .vertex("q", q, 1)
                .edge("c", "p")
                .edge("c", "q")
                .build()
                .unwrap();
            let out = star_outcome(&g).unwrap();
            let want = crate::oracle::decide_winnable(&g, &Default::default()).verdict;
            assert_eq!(out.verdict, want, "{center} {p} {q}");
            if let Some(f) = &out.certificate {
                assert!(crate::oracle::verify_strategy(&g, f).unwrap().wins());
            }
        }
    }
}
