//! Exact decision procedures: strategy verification, disprover search, winnability,
//! admissible ends and win counts.

pub mod search;

use crate::ease::lift_along;
use crate::error::{Error, Result};
use crate::game::{Color, Game, Odometer, PartialColoring, Plan, Rational, Strategy};
use crate::outcome::{Outcome, Rule, SearchBudget, SearchStats, TraceStep, Verdict};
use num_traits::{One, Zero};
use search::{CellSpec, CoverProblem, SearchResult};

/// Colorings the plain enumerators will visit before giving up.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Wins,
    Disprover(Vec<Color>),
}

impl Verification {
    pub fn wins(&self) -> bool {
        matches!(self, Verification::Wins)
    }
}

fn check_size(game: &Game, limit: u64) -> Result<u64> {
    match game.total_space() {
        Some(n) if n <= limit => Ok(n),
        _ => Err(Error::Budget(format!(
            "more than {limit} colorings to enumerate"
        ))),
    }
}

/// Checks every coloring in canonical order; returns the least disprover if any.
pub fn verify_strategy(game: &Game, f: &Strategy) -> Result<Verification> {
    f.validate(game)?;
    check_size(game, ENUMERATION_LIMIT)?;
    let n = game.len();
    let mut odo = Odometer::new(game.hats().to_vec());
    while odo.advance() {
        let c = odo.digits();
        if !(0..n).any(|v| f.right(v, c)) {
            return Ok(Verification::Disprover(c.to_vec()));
        }
    }
    Ok(Verification::Wins)
}

/// Per-vertex number of colorings on which the vertex guesses right.
pub fn win_counts(game: &Game, f: &Strategy) -> Result<Vec<u64>> {
    f.validate(game)?;
    check_size(game, ENUMERATION_LIMIT)?;
    let mut counts = vec![0u64; game.len()];
    let mut odo = Odometer::new(game.hats().to_vec());
    while odo.advance() {
        let c = odo.digits();
        for (v, count) in counts.iter_mut().enumerate() {
            if f.right(v, c) {
                *count += 1;
            }
        }
    }
    Ok(counts)
}

/// Depth-first search for the least extension of `partial` (in canonical order) on which
/// every vertex `w` with `constrained[w]` guesses wrong under `plans[w]`.
pub(crate) fn all_wrong_extension(
    game: &Game,
    plans: &[Option<&Plan>],
    constrained: &[bool],
    partial: &[Option<Color>],
) -> Option<Vec<Color>> {
    let n = game.len();
    let free: Vec<usize> = (0..n).filter(|&v| partial[v].is_none()).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        pos[v] = i;
    }
    // Each constrained vertex is checked once its closed out-neighborhood is colored.
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); free.len() + 1];
    for w in (0..n).filter(|&w| constrained[w]) {
        let last = std::iter::once(w)
            .chain(game.out_neighbors(w).iter().copied())
            .filter(|&u| pos[u] != usize::MAX)
            .map(|u| pos[u] + 1)
            .max()
            .unwrap_or(0);
        check_at[last].push(w);
    }
    let mut c: Vec<Color> = partial.iter().map(|x| x.unwrap_or(0)).collect();
    let wrong = |c: &[Color], ws: &[usize]| {
        ws.iter().all(|&w| {
            !plans[w]
                .expect("plan for constrained vertex")
                .guesses(c)
                .contains(c[w])
        })
    };
    if !wrong(&c, &check_at[0]) {
        return None;
    }
    if free.is_empty() {
        return Some(c);
    }
    let mut depth = 0usize;
    c[free[0]] = 0;
    loop {
        let v = free[depth];
        if c[v] < game.hat(v) && wrong(&c, &check_at[depth + 1]) {
            if depth + 1 == free.len() {
                return Some(c);
            }
            depth += 1;
            c[free[depth]] = 0;
            continue;
        }
        // advance at this depth, backing up when exhausted
        loop {
            let v = free[depth];
            c[v] += 1;
            if c[v] < game.hat(v) {
                break;
            }
            if depth == 0 {
                return None;
            }
            depth -= 1;
        }
    }
}

/// Least disprover of `f` among the extensions of `fixed`.
pub fn find_disprover(
    game: &Game,
    f: &Strategy,
    fixed: &PartialColoring,
) -> Result<Option<Vec<Color>>> {
    f.validate(game)?;
    fixed.check_ranges(game)?;
    let plans: Vec<Option<&Plan>> = f.plans.iter().map(Some).collect();
    let constrained = vec![true; game.len()];
    Ok(all_wrong_extension(
        game,
        &plans,
        &constrained,
        fixed.values(),
    ))
}

/// The set `L'` (or `L` when `accepted`) of partial colorings of `subject`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleEnds {
    /// Subject vertices in canonical order.
    pub subject: Vec<usize>,
    pub context: PartialColoring,
    /// Colors of the subject vertices, in the order of `subject`, sorted row-major.
    pub members: Vec<Vec<Color>>,
}

impl AdmissibleEnds {
    pub fn contains(&self, colors: &[Color]) -> bool {
        self.members
            .binary_search_by(|m| m.as_slice().cmp(colors))
            .is_ok()
    }
}

/// Computes the admissible ends `L'(S, f0, c)`, or the accepted ends `L(S, f, c)` when
/// `accepted` is set. `plans[v]` must be present for every vertex outside `S` (or every
/// vertex when `accepted`). The context must color every out-neighbor of `S` outside `S`;
/// any colors it assigns inside `S` are ignored.
pub fn admissible_ends(
    game: &Game,
    subject: &[usize],
    plans: &[Option<&Plan>],
    context: &PartialColoring,
    accepted: bool,
) -> Result<AdmissibleEnds> {
    let n = game.len();
    let mut subject = subject.to_vec();
    subject.sort_unstable();
    subject.dedup();
    let mut in_s = vec![false; n];
    for &v in &subject {
        in_s[v] = true;
    }
    context.check_ranges(game)?;
    for &v in &subject {
        for &u in game.out_neighbors(v) {
            if !in_s[u] && context.get(u).is_none() {
                return Err(Error::Hypothesis(format!(
                    "context does not color out-neighbor `{}`",
                    game.name(u)
                )));
            }
        }
    }
    let constrained: Vec<bool> = (0..n).map(|v| accepted || !in_s[v]).collect();
    for v in 0..n {
        if constrained[v] && plans[v].is_none() {
            return Err(Error::Hypothesis(format!("no plan for `{}`", game.name(v))));
        }
    }
    let size = game.space_size(&subject).unwrap_or(u64::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::Budget("subject hat space too large".into()));
    }
    let mut partial: Vec<Option<Color>> = context.values().to_vec();
    for &v in &subject {
        partial[v] = None;
    }
    let mut members = Vec::new();
    let mut odo = Odometer::new(subject.iter().map(|&v| game.hat(v)).collect());
    while odo.advance() {
        for (i, &v) in subject.iter().enumerate() {
            partial[v] = Some(odo.digits()[i]);
        }
        if all_wrong_extension(game, plans, &constrained, &partial).is_some() {
            members.push(odo.digits().to_vec());
        }
    }
    let mut ctx = context.clone();
    for &v in &subject {
        ctx.set(v, None);
    }
    Ok(AdmissibleEnds {
        subject,
        context: ctx,
        members,
    })
}

/// The covering problem of a game: one cell per (vertex, visible tuple), one clause per coloring.
pub(crate) fn game_problem(game: &Game, max_colorings: u64) -> Result<(CoverProblem, Vec<usize>)> {
    for v in 0..game.len() {
        if game.hat(v) > 64 {
            return Err(Error::HatTooLarge {
                vertex: game.name(v).to_string(),
                hat: game.hat(v),
            });
        }
    }
    check_size(game, max_colorings)?;
    let n = game.len();
    let mut cells = Vec::new();
    let mut offset = Vec::with_capacity(n);
    for v in 0..n {
        offset.push(cells.len());
        let rows = game.space_size(game.out_neighbors(v)).unwrap_or(u64::MAX);
        if rows > max_colorings {
            return Err(Error::Budget(format!(
                "plan table of `{}` too large",
                game.name(v)
            )));
        }
        for _ in 0..rows {
            cells.push(CellSpec {
                owner: v,
                hat: game.hat(v),
                guess: game.guess(v),
            });
        }
    }
    let mut p = CoverProblem::new(cells);
    for v in relabel_set(game, &vec![true; n]) {
        p.add_precedence((offset[v]..offset[v] + table_len(game, v)).collect());
    }
    let mut odo = Odometer::new(game.hats().to_vec());
    let mut lits = Vec::with_capacity(n);
    while odo.advance() {
        let c = odo.digits();
        lits.clear();
        for v in 0..n {
            let idx = game
                .out_neighbors(v)
                .iter()
                .fold(0usize, |acc, &u| acc * game.hat(u) as usize + c[u] as usize);
            lits.push((offset[v] + idx, c[v]));
        }
        p.add_clause(lits.iter().copied());
    }
    Ok((p, offset))
}

pub(crate) fn table_len(game: &Game, v: usize) -> usize {
    game.out_neighbors(v)
        .iter()
        .map(|&u| game.hat(u) as usize)
        .product()
}

/// Vertices no two of which see each other, chosen to maximize the number of color
/// relabelings fixed. Permuting the colors of such a vertex only permutes its own guesses
/// and the rows of the tables that see it, so each may have its color names fixed by the
/// order of first appearance in its own table.
pub(crate) fn relabel_set(game: &Game, allowed: &[bool]) -> Vec<usize> {
    let n = game.len();
    let weight = |v: usize| (2..=game.hat(v)).map(|k| (k as f64).ln()).sum::<f64>();
    let adjacent =
        |u: usize, v: usize| game.digraph().has_arc(u, v) || game.digraph().has_arc(v, u);
    if n <= 16 {
        let mut best = (0.0f64, 0u32);
        'masks: for mask in 1u32..1 << n {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.iter().any(|&v| !allowed[v]) {
                continue;
            }
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    if adjacent(a, b) {
                        continue 'masks;
                    }
                }
            }
            let w: f64 = vs.iter().map(|&v| weight(v)).sum();
            if w > best.0 + 1e-9 {
                best = (w, mask);
            }
        }
        return (0..n).filter(|&v| best.1 >> v & 1 == 1).collect();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weight(b).partial_cmp(&weight(a)).unwrap().then(a.cmp(&b)));
    let mut chosen: Vec<usize> = Vec::new();
    for v in order.into_iter().filter(|&v| allowed[v]) {
        if chosen.iter().all(|&u| !adjacent(u, v)) {
            chosen.push(v);
        }
    }
    chosen.sort_unstable();
    chosen
}

fn budget_outcome(game: &Game, message: String) -> Outcome {
    Outcome::unknown(vec![TraceStep::new(
        Rule::BudgetExceeded,
        game.digraph().names().to_vec(),
    )
    .with_rewrite(message)])
}

/// Decides winnability by exhaustive search over plan tables, one weak component at a time.
/// A component whose ratios sum below 1 is unwinnable without search: every winning
/// strategy is right on average at least once per coloring.
pub fn decide_winnable(game: &Game, budget: &SearchBudget) -> Outcome {
    let comps = game.digraph().weak_components();
    if comps.len() <= 1 {
        return decide_component(game, budget);
    }
    let mut trace = Vec::new();
    let mut stats = SearchStats::default();
    let mut unknown = false;
    for comp in &comps {
        let sub = game.restrict_indices(comp);
        let out = decide_component(&sub, budget);
        stats.nodes += out.stats.nodes;
        stats.colorings += out.stats.colorings;
        stats.millis += out.stats.millis;
        match out.verdict {
            Verdict::Winnable => {
                let f = out
                    .certificate
                    .as_ref()
                    .expect("winnable outcomes carry a strategy");
                match lift_along(f, &sub, game) {
                    Ok(f) => return Outcome::winnable(f, out.trace).with_stats(stats),
                    Err(e) => return budget_outcome(game, e.to_string()),
                }
            }
            Verdict::Unknown => unknown = true,
            Verdict::Unwinnable => {}
        }
        trace.extend(out.trace);
    }
    let out = if unknown {
        Outcome::unknown(trace)
    } else {
        Outcome::unwinnable(trace)
    };
    out.with_stats(stats)
}

fn decide_component(game: &Game, budget: &SearchBudget) -> Outcome {
    let total = (0..game.len()).fold(Rational::zero(), |acc, v| acc + game.ratio(v));
    if !game.is_empty() && total < Rational::one() {
        return Outcome::unwinnable(vec![TraceStep::new(
            Rule::RatioSum,
            game.digraph().names().to_vec(),
        )
        .with_rewrite(format!("ratios sum to {total}"))]);
    }
    let (p, offset) = match game_problem(game, budget.max_colorings) {
        Ok(x) => x,
        Err(e) => return budget_outcome(game, e.to_string()),
    };
    let (result, stats) = search::solve(&p, budget);
    match result {
        SearchResult::Found(cells) => {
            let f = Strategy::from_fn(game, |v, inputs| {
                let idx = inputs
                    .iter()
                    .zip(game.out_neighbors(v))
                    .fold(0usize, |acc, (&c, &u)| {
                        acc * game.hat(u) as usize + c as usize
                    });
                cells[offset[v] + idx]
            })
            .expect("tables fit");
            debug_assert!(verify_strategy(game, &f).map(|r| r.wins()).unwrap_or(true));
            Outcome::winnable(f, vec![TraceStep::new(Rule::ExhaustiveSearch, Vec::new())])
                .with_stats(stats)
        }
        SearchResult::Exhausted => Outcome::unwinnable(vec![TraceStep::new(
            Rule::ExhaustiveSearch,
            game.digraph().names().to_vec(),
        )
        .with_rewrite(format!(
            "{} nodes, {} colorings",
            stats.nodes, stats.colorings
        ))])
        .with_stats(stats),
        SearchResult::OutOfBudget => {
            budget_outcome(game, format!("node budget {} exhausted", budget.max_nodes))
                .with_stats(stats)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{complete_game, directed_cycle_game, ColorSet, GameBuilder};

    fn k2() -> Game {
        GameBuilder::new()
            .vertex("A", 2, 1)
            .vertex("B", 2, 1)
            .edge("A", "B")
            .build()
            .unwrap()
    }

    fn see(game: &Game, opposite: &[bool]) -> Strategy {
        Strategy::from_fn(game, |v, inp| {
            ColorSet::single(if opposite[v] { 1 - inp[0] } else { inp[0] })
        })
        .unwrap()
    }

    #[test]
    fn k2_mixed_strategy_wins() {
        let g = k2();
        assert_eq!(
            verify_strategy(&g, &see(&g, &[true, false])).unwrap(),
            Verification::Wins
        );
    }

    #[test]
    fn k2_both_see_loses_at_01() {
        let g = k2();
        assert_eq!(
            verify_strategy(&g, &see(&g, &[false, false])).unwrap(),
            Verification::Disprover(vec![0, 1])
        );
    }

    #[test]
    fn k3_sum_strategy_wins() {
        let g = complete_game(&[3, 3, 3], &[1, 1, 1]).unwrap();
        let f = Strategy::from_fn(&g, |v, inp| {
            let s: u32 = inp.iter().sum();
            ColorSet::single((3 + v as u32 % 3 * 1 + 3 * 3 - s) % 3)
        })
        .unwrap();
        assert!(verify_strategy(&g, &f).unwrap().wins());
        assert_eq!(win_counts(&g, &f).unwrap(), vec![9, 9, 9]);
    }

    #[test]
    fn find_disprover_respects_fixed() {
        let g = k2();
        let f = see(&g, &[false, false]);
        let fixed = PartialColoring::from_pairs(2, &[(0, 0)]);
        assert_eq!(find_disprover(&g, &f, &fixed).unwrap(), Some(vec![0, 1]));
        let fixed = PartialColoring::from_pairs(2, &[(0, 0), (1, 0)]);
        assert_eq!(find_disprover(&g, &f, &fixed).unwrap(), None);
    }

    #[test]
    fn admissible_end_of_k2() {
        let g = k2();
        let f = see(&g, &[false, false]);
        let plans = vec![Some(f.plan(0)), None];
        let ctx = PartialColoring::from_pairs(2, &[(0, 0)]);
        let l = admissible_ends(&g, &[1], &plans, &ctx, false).unwrap();
        assert_eq!(l.members, vec![vec![1]]);
    }

    #[test]
    fn whole_set_with_empty_plan_is_everything() {
        let g = complete_game(&[2, 3], &[1, 1]).unwrap();
        let l = admissible_ends(
            &g,
            &[0, 1],
            &[None, None],
            &PartialColoring::empty(2),
            false,
        )
        .unwrap();
        assert_eq!(l.members.len(), 6);
    }

    #[test]
    fn decide_small_games() {
        let b = SearchBudget::default();
        let single = GameBuilder::new().vertex("a", 3, 1).build().unwrap();
        assert_eq!(
            decide_winnable(&single, &b).verdict,
            crate::Verdict::Unwinnable
        );
        let c3 = directed_cycle_game(&[2, 2, 2], &[1, 1, 1]).unwrap();
        let out = decide_winnable(&c3, &b);
        assert_eq!(out.verdict, crate::Verdict::Winnable);
        assert!(verify_strategy(&c3, out.certificate.as_ref().unwrap())
            .unwrap()
            .wins());
        let k3 = complete_game(&[4, 4, 4], &[1, 1, 1]).unwrap();
        assert_eq!(decide_winnable(&k3, &b).verdict, crate::Verdict::Unwinnable);
    }

    #[test]
    fn parallel_agrees_with_sequential() {
        let g = crate::game::cycle_game(&[3, 3, 3, 3]).unwrap();
        let seq = decide_winnable(&g, &SearchBudget::default());
        let par = decide_winnable(&g, &SearchBudget::default().parallel(4));
        assert_eq!(seq.verdict, par.verdict);
        let f = par.certificate.unwrap();
        assert!(verify_strategy(&g, &f).unwrap().wins());
    }
}
