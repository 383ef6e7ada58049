//! Warsaw graphs and admissible paths: partial colorings grown along an induced path or
//! cycle so that every sage who sees all of her neighbors on the path guesses wrong.

use crate::error::{Error, Result};
use crate::game::{Color, Game, Strategy};

/// The blow-up `h*D`: one vertex `(i, p)` per sage `i` and color `p`, with an arc
/// `(i, p) -> (j, q)` whenever `i -> j`.
#[derive(Clone, Debug)]
pub struct WarsawGraph {
    pub base: Game,
    offset: Vec<usize>,
}

pub fn build_warsaw(game: &Game) -> WarsawGraph {
    let mut offset = Vec::with_capacity(game.len() + 1);
    let mut acc = 0;
    for v in 0..game.len() {
        offset.push(acc);
        acc += game.hat(v) as usize;
    }
    offset.push(acc);
    WarsawGraph {
        base: game.clone(),
        offset,
    }
}

impl WarsawGraph {
    pub fn num_vertices(&self) -> usize {
        *self.offset.last().unwrap()
    }

    pub fn index(&self, v: usize, p: Color) -> usize {
        self.offset[v] + p as usize
    }

    pub fn vertex(&self, idx: usize) -> (usize, Color) {
        let v = self.offset.partition_point(|&o| o <= idx) - 1;
        (v, (idx - self.offset[v]) as Color)
    }

    pub fn has_arc(&self, a: (usize, Color), b: (usize, Color)) -> bool {
        self.base.digraph().has_arc(a.0, b.0)
    }

    pub fn arcs(&self) -> impl Iterator<Item = ((usize, Color), (usize, Color))> + '_ {
        self.base.digraph().arcs().flat_map(move |(i, j)| {
            (0..self.base.hat(i))
                .flat_map(move |p| (0..self.base.hat(j)).map(move |q| ((i, p), (j, q))))
        })
    }

    pub fn arc_count(&self) -> usize {
        self.base
            .digraph()
            .arcs()
            .map(|(i, j)| self.base.hat(i) as usize * self.base.hat(j) as usize)
            .sum()
    }

    /// Pairs of reciprocal arcs, counted once.
    pub fn edge_count(&self) -> usize {
        self.base
            .digraph()
            .arcs()
            .filter(|&(i, j)| i < j && self.base.digraph().has_arc(j, i))
            .map(|(i, j)| self.base.hat(i) as usize * self.base.hat(j) as usize)
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// A path in the Warsaw graph lying over a contiguous stretch of `route`, an induced path
/// (or cycle) of the base game.
#[derive(Clone, Debug)]
pub struct PathState<'a> {
    pub game: &'a Game,
    pub strategy: &'a Strategy,
    pub route: Vec<usize>,
    pub cyclic: bool,
    /// Position in `route` of the left end.
    pub start: usize,
    /// Colors of `route[start..start + colors.len()]` (positions taken modulo the route on cycles).
    pub colors: Vec<Color>,
    /// Exempt the two ends from the wrong-guess condition.
    pub quasi: bool,
}

impl<'a> PathState<'a> {
    pub fn new(
        game: &'a Game,
        strategy: &'a Strategy,
        route: Vec<usize>,
        cyclic: bool,
        start: usize,
        colors: Vec<Color>,
        quasi: bool,
    ) -> Result<Self> {
        check_route(game, &route, cyclic)?;
        if start >= route.len()
            || colors.len() > route.len()
            || (!cyclic && start + colors.len() > route.len())
        {
            return Err(Error::Hypothesis("path does not fit on the route".into()));
        }
        Ok(PathState {
            game,
            strategy,
            route,
            cyclic,
            start,
            colors,
            quasi,
        })
    }

    fn pos(&self, k: usize) -> usize {
        (self.start + k) % self.route.len()
    }

    /// The partial coloring of the base game carried by this path.
    pub fn coloring(&self) -> Vec<Option<Color>> {
        let mut c = vec![None; self.game.len()];
        for (k, &col) in self.colors.iter().enumerate() {
            c[self.route[self.pos(k)]] = Some(col);
        }
        c
    }

    pub fn warsaw_vertices(&self) -> Vec<(usize, Color)> {
        self.colors
            .iter()
            .enumerate()
            .map(|(k, &col)| (self.route[self.pos(k)], col))
            .collect()
    }

    pub fn is_admissible(&self) -> bool {
        let c = self.coloring();
        let n = self.colors.len();
        (0..n).all(|k| {
            let exempt = self.quasi && (k == 0 || k + 1 == n);
            exempt || !guesses_right(self.game, self.strategy, &c, self.route[self.pos(k)])
        })
    }

    /// Route position of the slab next to the path in `dir`, if any.
    fn next_slot(&self, dir: Direction) -> Option<usize> {
        let len = self.route.len();
        if self.colors.len() >= len {
            return None;
        }
        match dir {
            Direction::Right => {
                let p = self.start + self.colors.len();
                (self.cyclic || p < len).then_some(p % len)
            }
            Direction::Left => {
                if self.start > 0 {
                    Some(self.start - 1)
                } else if self.cyclic {
                    Some(len - 1)
                } else {
                    None
                }
            }
        }
    }

    /// The path extended by one vertex colored `q` in direction `dir`.
    pub fn extended(&self, dir: Direction, q: Color) -> Result<PathState<'a>> {
        let slot = self
            .next_slot(dir)
            .ok_or_else(|| Error::Hypothesis("no slab beyond this end of the route".into()))?;
        let mut next = self.clone();
        match dir {
            Direction::Right => next.colors.push(q),
            Direction::Left => {
                next.colors.insert(0, q);
                next.start = slot;
            }
        }
        Ok(next)
    }

    /// Colors of the next slab in `dir` that keep the path admissible.
    pub fn continuations(&self, dir: Direction) -> Result<Vec<(usize, Color)>> {
        let slot = self
            .next_slot(dir)
            .ok_or_else(|| Error::Hypothesis("direction runs off the end of the route".into()))?;
        let w = self.route[slot];
        let mut out = Vec::new();
        for q in 0..self.game.hat(w) {
            if self.extended(dir, q)?.is_admissible() {
                out.push((w, q));
            }
        }
        Ok(out)
    }
}

/// Whether `v` sees a full neighborhood under `c` and guesses its own color.
fn guesses_right(game: &Game, f: &Strategy, c: &[Option<Color>], v: usize) -> bool {
    let Some(own) = c[v] else { return false };
    let mut inputs = Vec::with_capacity(game.out_neighbors(v).len());
    for &u in game.out_neighbors(v) {
        match c[u] {
            Some(x) => inputs.push(x),
            None => return false,
        }
    }
    f.plan(v).guesses_for_inputs(&inputs).contains(own)
}

fn check_route(game: &Game, route: &[usize], cyclic: bool) -> Result<()> {
    let d = game.digraph();
    let n = route.len();
    let mut seen = vec![false; game.len()];
    for &v in route {
        if v >= game.len() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Hypothesis("route repeats or leaves the game".into()));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let consecutive = b == a + 1 || (cyclic && a == 0 && b == n - 1 && n > 2);
            let joined = d.has_edge(route[a], route[b]);
            let any = d.has_arc(route[a], route[b]) || d.has_arc(route[b], route[a]);
            if consecutive && !joined {
                return Err(Error::Hypothesis(
                    "consecutive route vertices are not adjacent".into(),
                ));
            }
            if !consecutive && any {
                return Err(Error::Hypothesis("route is not induced".into()));
            }
        }
    }
    Ok(())
}

/// Lower bound on the total number of continuations of `r` edges with a common end
/// into a set of `target` vertices, past a middle sage with guessness `g`.
pub fn continuation_total_bound(r: u64, g: u64, target: u64) -> u64 {
    r.saturating_sub(g) * target
}

/// Some one of the `r` edges has at least this many continuations.
pub fn continuation_best_edge_bound(r: u64, g: u64, target: u64) -> u64 {
    if r == 0 {
        return 0;
    }
    target.saturating_sub(g * target / r)
}

#[derive(Clone, Debug)]
pub enum Growth<'a> {
    Reached(PathState<'a>),
    Blocked(String),
}

/// Extends `seed` rightward until it covers route position `target`, keeping at least two
/// live continuations whenever the two slabs ahead have at least three colors. Among
/// continuations the one with the most onward continuations is taken, ties by color.
pub fn grow_path<'a>(seed: PathState<'a>, target: usize) -> Result<Growth<'a>> {
    if !seed.is_admissible() {
        return Err(Error::Hypothesis("seed is not admissible".into()));
    }
    let len = seed.route.len();
    let covers = |s: &PathState| (0..s.colors.len()).any(|k| s.pos(k) == target);
    let mut state = seed;
    while !covers(&state) {
        let conts = match state.continuations(Direction::Right) {
            Ok(c) => c,
            Err(_) => return Ok(Growth::Blocked("route ends before the target".into())),
        };
        if conts.len() < 2 {
            return Ok(Growth::Blocked(format!(
                "only {} continuations",
                conts.len()
            )));
        }
        let next_pos = (state.start + state.colors.len()) % len;
        let beyond = state.cyclic || next_pos + 1 < len;
        if beyond {
            let a = state.game.hat(state.route[next_pos]);
            let b = state.game.hat(state.route[(next_pos + 1) % len]);
            if a < 3 || b < 3 {
                return Ok(Growth::Blocked(format!(
                    "hatness {a} and {b} ahead; the two slabs ahead need at least 3 colors"
                )));
            }
        }
        let mut best: Option<(usize, PathState<'a>)> = None;
        for &(_, q) in &conts {
            let cand = state.extended(Direction::Right, q)?;
            let onward = if beyond && !covers(&cand) {
                cand.continuations(Direction::Right)
                    .map(|c| c.len())
                    .unwrap_or(0)
            } else {
                usize::MAX
            };
            if best.as_ref().is_none_or(|(b, _)| onward > *b) {
                best = Some((onward, cand));
            }
        }
        let (onward, next) = best.expect("at least two continuations");
        if onward < 2 {
            return Ok(Growth::Blocked(
                "no continuation keeps two onward continuations".into(),
            ));
        }
        state = next;
    }
    Ok(Growth::Reached(state))
}

/// Depth-first search for a disprover by growing admissible paths around the whole game,
/// which must be an undirected path or cycle. Any result is re-verified before returning.
pub fn find_disprover_via_paths(game: &Game, f: &Strategy) -> Result<Option<Vec<Color>>> {
    f.validate(game)?;
    let (route, cyclic) = path_or_cycle_route(game).ok_or_else(|| {
        Error::Unsupported("paths are searched only on undirected paths and cycles".into())
    })?;
    let n = route.len();
    let mut stack: Vec<PathState> = (0..game.hat(route[0]))
        .rev()
        .map(|p| PathState::new(game, f, route.clone(), cyclic, 0, vec![p], false))
        .collect::<Result<_>>()?;
    while let Some(s) = stack.pop() {
        if s.colors.len() == n {
            let c: Vec<Color> = s.coloring().into_iter().map(|x| x.unwrap()).collect();
            if !f.someone_right(&c) {
                return Ok(Some(c));
            }
            continue;
        }
        let mut conts = s.continuations(Direction::Right)?;
        conts.reverse();
        for (_, q) in conts {
            stack.push(s.extended(Direction::Right, q)?);
        }
    }
    Ok(None)
}

/// The vertex order of an undirected path or cycle game, with a cycle flag.
pub fn path_or_cycle_route(game: &Game) -> Option<(Vec<usize>, bool)> {
    let d = game.digraph();
    let n = game.len();
    if n == 0 || !d.is_symmetric() {
        return None;
    }
    let deg: Vec<usize> = (0..n).map(|v| d.out_neighbors(v).len()).collect();
    if deg.iter().any(|&k| k > 2) {
        return None;
    }
    let ends: Vec<usize> = (0..n).filter(|&v| deg[v] < 2).collect();
    let cyclic = ends.is_empty();
    if !cyclic && ends.len() != 2 && n > 1 {
        return None;
    }
    let first = if cyclic { 0 } else { ends[0] };
    let mut route = vec![first];
    let mut prev = usize::MAX;
    let mut cur = first;
    while route.len() < n {
        let next = d
            .out_neighbors(cur)
            .iter()
            .copied()
            .find(|&u| u != prev && !route.contains(&u))?;
        prev = cur;
        cur = next;
        route.push(cur);
    }
    if cyclic && n < 3 {
        return None;
    }
    Some((route, cyclic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{cycle_game, path_game, ColorSet, GameBuilder};

    #[test]
    fn warsaw_counts() {
        let k2 = path_game(&[2, 2]).unwrap();
        let w = build_warsaw(&k2);
        assert_eq!((w.num_vertices(), w.edge_count(), w.arc_count()), (4, 4, 8));
        let c3 = cycle_game(&[3, 3, 3]).unwrap();
        let w = build_warsaw(&c3);
        assert_eq!((w.num_vertices(), w.edge_count()), (9, 27));
        let p3 = path_game(&[2, 3, 5]).unwrap();
        let w = build_warsaw(&p3);
        assert_eq!((w.num_vertices(), w.edge_count()), (10, 21));
        assert_eq!(w.vertex(w.index(2, 4)), (2, 4));
        assert_eq!(w.arcs().count(), w.arc_count());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(continuation_total_bound(3, 1, 3), 6);
        assert_eq!(continuation_best_edge_bound(2, 1, 3), 2);
        assert_eq!(continuation_total_bound(1, 2, 3), 0);
    }

    #[test]
    fn k2_see_strategy_has_a_path_disprover() {
        let g = GameBuilder::new()
            .vertex("A", 2, 1)
            .vertex("B", 2, 1)
            .edge("A", "B")
            .build()
            .unwrap();
        let f = Strategy::from_fn(&g, |_, inp| ColorSet::single(inp[0])).unwrap();
        assert_eq!(find_disprover_via_paths(&g, &f).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn hatness_two_ahead_blocks() {
        let g = path_game(&[3, 3, 2, 3]).unwrap();
        let f = Strategy::from_fn(&g, |_, _| ColorSet::single(0)).unwrap();
        let seed = PathState::new(&g, &f, vec![0, 1, 2, 3], false, 0, vec![1], true).unwrap();
        match grow_path(seed, 3).unwrap() {
            Growth::Blocked(msg) => assert!(msg.contains("at least 3")),
            Growth::Reached(_) => panic!("should be blocked"),
        }
    }

    #[test]
    fn routes() {
        assert_eq!(
            path_or_cycle_route(&cycle_game(&[3, 3, 3, 3]).unwrap()),
            Some((vec![0, 1, 2, 3], true))
        );
        let p = path_game(&[2, 3, 4]).unwrap();
        assert_eq!(path_or_cycle_route(&p), Some((vec![0, 1, 2], false)));
    }
}
