//! Hints: the adversary truthfully tells a set of sages which part of a family
//! the colors of some subject vertices avoid. A plan for one vertex is the same thing
//! as a hint to the sages that see it.

use crate::error::{Error, Result};
use crate::game::{rank, Color, ColorSet, Game, Odometer, Plan, Strategy};
use crate::oracle::search::{self, CellSpec, CoverProblem, SearchResult};
use crate::oracle::{relabel_set, table_len};
use crate::outcome::{SearchBudget, SearchStats, Verdict};

/// A `j,k`-hint: `k` subsets of the colorings of `subject`, covering each coloring exactly `j` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hint {
    pub j: u32,
    pub k: u32,
    pub subject: Vec<String>,
    pub audience: Vec<String>,
    /// Hatness of each subject vertex; points are ranked row-major under these radices.
    pub radices: Vec<u32>,
    /// Ranks of the points in each part, sorted.
    pub parts: Vec<Vec<usize>>,
}

impl Hint {
    pub fn new(
        j: u32,
        k: u32,
        subject: Vec<String>,
        audience: Vec<String>,
        radices: Vec<u32>,
        mut parts: Vec<Vec<usize>>,
    ) -> Result<Hint> {
        if parts.len() != k as usize {
            return Err(Error::Hypothesis(format!(
                "hint has {} parts, expected {k}",
                parts.len()
            )));
        }
        if subject.len() != radices.len() {
            return Err(Error::Hypothesis("one radix per subject vertex".into()));
        }
        let space: usize = radices.iter().map(|&r| r as usize).product();
        let mut mult = vec![0u32; space];
        for part in &mut parts {
            part.sort_unstable();
            part.dedup();
            for &x in part.iter() {
                if x >= space {
                    return Err(Error::Hypothesis(format!(
                        "point {x} outside the subject space"
                    )));
                }
                mult[x] += 1;
            }
        }
        if let Some(x) = mult.iter().position(|&m| m != j) {
            return Err(Error::Hypothesis(format!(
                "point {x} lies in {} parts, expected {j}",
                mult[x]
            )));
        }
        Ok(Hint {
            j,
            k,
            subject,
            audience,
            radices,
            parts,
        })
    }

    pub fn space(&self) -> usize {
        self.radices.iter().map(|&r| r as usize).product()
    }

    pub fn contains(&self, part: usize, point: usize) -> bool {
        self.parts[part].binary_search(&point).is_ok()
    }

    /// Indices of the parts containing `point`.
    pub fn parts_of(&self, point: usize) -> ColorSet {
        (0..self.k)
            .filter(|&i| self.contains(i as usize, point))
            .collect()
    }
}

fn names(game: &Game, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| game.name(v).to_string()).collect()
}

/// The hint `A_i = f_v⁻¹(i)` given by a plan of `v`.
pub fn derive_hint(game: &Game, v: usize, plan: &Plan) -> Result<Hint> {
    plan.validate(game)?;
    if plan.vertex != v {
        return Err(Error::Hypothesis("plan belongs to another vertex".into()));
    }
    let mut parts = vec![Vec::new(); game.hat(v) as usize];
    for (x, set) in plan.table.iter().enumerate() {
        for c in set.iter() {
            parts[c as usize].push(x);
        }
    }
    Hint::new(
        game.guess(v),
        game.hat(v),
        names(game, game.out_neighbors(v)),
        names(game, game.in_neighbors(v)),
        plan.radices.clone(),
        parts,
    )
}

/// Inverse of [`derive_hint`].
pub fn hint_to_plan(game: &Game, v: usize, hint: &Hint) -> Result<Plan> {
    check_vertex_hint(game, v, hint)?;
    Plan::from_fn(game, v, |inputs| hint.parts_of(rank(&hint.radices, inputs)))
}

fn check_vertex_hint(game: &Game, v: usize, hint: &Hint) -> Result<()> {
    if hint.j != game.guess(v) || hint.k != game.hat(v) {
        return Err(Error::Hypothesis(format!(
            "expected a {},{}-hint, got {},{}",
            game.guess(v),
            game.hat(v),
            hint.j,
            hint.k
        )));
    }
    if hint.subject != names(game, game.out_neighbors(v)) {
        return Err(Error::Hypothesis(
            "hint subject is not the out-neighborhood".into(),
        ));
    }
    if hint.audience != names(game, game.in_neighbors(v)) {
        return Err(Error::Hypothesis(
            "hint audience is not the in-neighborhood".into(),
        ));
    }
    Ok(())
}

/// The hint `A_i = P_i ∪ … ∪ P_{i+j-1}` (indices mod `k`) built from a partition into `k` parts.
pub fn partition_hint(
    partition: &[Vec<usize>],
    j: u32,
    subject: Vec<String>,
    audience: Vec<String>,
    radices: Vec<u32>,
) -> Result<Hint> {
    let k = partition.len();
    if j as usize >= k || j == 0 {
        return Err(Error::Hypothesis(format!(
            "need 0 < j < k, got j={j}, k={k}"
        )));
    }
    let space: usize = radices.iter().map(|&r| r as usize).product();
    let mut seen = vec![false; space];
    for x in partition.iter().flatten() {
        if *x >= space || std::mem::replace(&mut seen[*x], true) {
            return Err(Error::Hypothesis(format!(
                "malformed partition at point {x}"
            )));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Hypothesis(
            "partition does not cover the subject space".into(),
        ));
    }
    let parts = (0..k)
        .map(|i| {
            (0..j as usize)
                .flat_map(|t| partition[(i + t) % k].iter().copied())
                .collect()
        })
        .collect();
    Hint::new(j, k as u32, subject, audience, radices, parts)
}

/// A plan for each possible utterance, for one sage of the audience.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanEnsemble {
    pub vertex: String,
    pub plans: Vec<Plan>,
}

/// A game played with a hint whose subject and audience are vertices of `base`.
#[derive(Clone, Debug)]
pub struct HintGame {
    pub base: Game,
    pub hint: Hint,
    pub subject: Vec<usize>,
    pub audience: Vec<usize>,
}

impl HintGame {
    pub fn new(base: Game, hint: Hint) -> Result<HintGame> {
        let subject = hint
            .subject
            .iter()
            .map(|s| base.vertex(s))
            .collect::<Result<Vec<_>>>()?;
        let audience = hint
            .audience
            .iter()
            .map(|s| base.vertex(s))
            .collect::<Result<Vec<_>>>()?;
        for (&v, &r) in subject.iter().zip(&hint.radices) {
            if base.hat(v) != r {
                return Err(Error::Hypothesis(format!(
                    "radix of `{}` differs from its hatness",
                    base.name(v)
                )));
            }
        }
        Ok(HintGame {
            base,
            hint,
            subject,
            audience,
        })
    }

    pub fn is_audience(&self, v: usize) -> bool {
        self.audience.contains(&v)
    }

    fn point(&self, coloring: &[Color]) -> usize {
        self.subject.iter().fold(0usize, |acc, &v| {
            acc * self.base.hat(v) as usize + coloring[v] as usize
        })
    }
}

/// `G∖v` played with the hint `H` about `N⁺(v)` given to `N⁻(v)`.
pub fn derived_hint_game(game: &Game, v: usize, hint: &Hint) -> Result<HintGame> {
    check_vertex_hint(game, v, hint)?;
    HintGame::new(game.without(v), hint.clone())
}

/// Plans of a hint game: one per ordinary sage, `k` per audience member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HintStrategy {
    pub plans: Vec<Vec<Plan>>,
}

impl HintStrategy {
    pub fn plan(&self, v: usize, utterance: usize) -> &Plan {
        let ps = &self.plans[v];
        if ps.len() == 1 {
            &ps[0]
        } else {
            &ps[utterance]
        }
    }

    pub fn ensemble(&self, hg: &HintGame, v: usize) -> Option<PlanEnsemble> {
        hg.is_audience(v).then(|| PlanEnsemble {
            vertex: hg.base.name(v).to_string(),
            plans: self.plans[v].clone(),
        })
    }

    pub fn validate(&self, hg: &HintGame) -> Result<()> {
        if self.plans.len() != hg.base.len() {
            return Err(Error::Strategy(
                "plan count differs from vertex count".into(),
            ));
        }
        for (v, ps) in self.plans.iter().enumerate() {
            let want = if hg.is_audience(v) {
                hg.hint.k as usize
            } else {
                1
            };
            if ps.len() != want {
                return Err(Error::Strategy(format!(
                    "`{}` needs {want} plans, has {}",
                    hg.base.name(v),
                    ps.len()
                )));
            }
            for p in ps {
                if p.vertex != v {
                    return Err(Error::Strategy("plan for the wrong vertex".into()));
                }
                p.validate(&hg.base)?;
            }
        }
        Ok(())
    }
}

/// The ensemble `f_u^i(…) = f_u(i, …)` of a sage `u` that sees `v`, as plans on `G∖v`.
pub fn derive_ensemble(game: &Game, v: usize, plan: &Plan) -> Result<PlanEnsemble> {
    let u = plan.vertex;
    let at = game
        .out_neighbors(u)
        .iter()
        .position(|&w| w == v)
        .ok_or_else(|| {
            Error::Hypothesis(format!(
                "`{}` does not see `{}`",
                game.name(u),
                game.name(v)
            ))
        })?;
    let base = game.without(v);
    let bu = base.vertex(game.name(u))?;
    let plans = (0..game.hat(v))
        .map(|i| {
            Plan::from_fn(&base, bu, |inputs| {
                let mut full = inputs.to_vec();
                full.insert(at, i);
                plan.guesses_for_inputs(&full)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlanEnsemble {
        vertex: game.name(u).to_string(),
        plans,
    })
}

/// The derived game and derived strategy of `f` at `v`.
pub fn derived_strategy(game: &Game, v: usize, f: &Strategy) -> Result<(HintGame, HintStrategy)> {
    f.validate(game)?;
    let hint = derive_hint(game, v, f.plan(v))?;
    let hg = derived_hint_game(game, v, &hint)?;
    let mut plans = Vec::with_capacity(hg.base.len());
    for bw in 0..hg.base.len() {
        let w = game.vertex(hg.base.name(bw))?;
        if game.digraph().has_arc(w, v) {
            plans.push(derive_ensemble(game, v, f.plan(w))?.plans);
        } else {
            plans.push(vec![Plan::from_fn(&hg.base, bw, |inputs| {
                f.plan(w).guesses_for_inputs(inputs)
            })?]);
        }
    }
    Ok((hg, HintStrategy { plans }))
}

/// Reassembles a strategy for `game` from a hint about `v` and a strategy for the derived game.
pub fn undo_derived(game: &Game, v: usize, hint: &Hint, hs: &HintStrategy) -> Result<Strategy> {
    let hg = derived_hint_game(game, v, hint)?;
    hs.validate(&hg)?;
    let fv = hint_to_plan(game, v, hint)?;
    let plans = (0..game.len())
        .map(|w| {
            if w == v {
                return Ok(fv.clone());
            }
            let bw = hg.base.vertex(game.name(w))?;
            let at = game.out_neighbors(w).iter().position(|&x| x == v);
            Plan::from_fn(game, w, |inputs| match at {
                Some(at) => {
                    let mut rest = inputs.to_vec();
                    let i = rest.remove(at) as usize;
                    hs.plans[bw][i].guesses_for_inputs(&rest)
                }
                None => hs.plans[bw][0].guesses_for_inputs(inputs),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Strategy { plans })
}

/// Least disprover `(coloring, utterance)`: the coloring avoids part `i` and nobody is right
/// under the `i`-th plans. Colorings are scanned in canonical order, utterances within each.
pub fn verify_hint_strategy(
    hg: &HintGame,
    hs: &HintStrategy,
) -> Result<Option<(Vec<Color>, usize)>> {
    hs.validate(hg)?;
    let g = &hg.base;
    let mut odo = Odometer::new(g.hats().to_vec());
    while odo.advance() {
        let c = odo.digits();
        let x = hg.point(c);
        for i in 0..hg.hint.k as usize {
            if hg.hint.contains(i, x) {
                continue;
            }
            if !(0..g.len()).any(|w| hs.plan(w, i).guesses(c).contains(c[w])) {
                return Ok(Some((c.to_vec(), i)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct HintOutcome {
    pub verdict: Verdict,
    pub certificate: Option<HintStrategy>,
    pub stats: SearchStats,
}

/// Decides a hint game by search over plans and ensembles.
pub fn decide_hint_winnable(hg: &HintGame, budget: &SearchBudget) -> Result<HintOutcome> {
    let g = &hg.base;
    let n = g.len();
    let k = hg.hint.k as usize;
    let total = g
        .total_space()
        .filter(|&t| t.saturating_mul(k as u64) <= budget.max_colorings);
    if total.is_none() {
        return Ok(HintOutcome {
            verdict: Verdict::Unknown,
            certificate: None,
            stats: SearchStats::default(),
        });
    }
    let copies: Vec<usize> = (0..n)
        .map(|v| if hg.is_audience(v) { k } else { 1 })
        .collect();
    let mut offset = vec![Vec::new(); n];
    let mut cells = Vec::new();
    for v in 0..n {
        for _ in 0..copies[v] {
            offset[v].push(cells.len());
            for _ in 0..table_len(g, v) {
                cells.push(CellSpec {
                    owner: v,
                    hat: g.hat(v),
                    guess: g.guess(v),
                });
            }
        }
    }
    let mut p = CoverProblem::new(cells);
    let allowed: Vec<bool> = (0..n).map(|v| !hg.subject.contains(&v)).collect();
    for v in relabel_set(g, &allowed) {
        p.add_precedence((offset[v][0]..offset[v][0] + table_len(g, v)).collect());
    }
    let mut odo = Odometer::new(g.hats().to_vec());
    let mut lits = Vec::with_capacity(n);
    while odo.advance() {
        let c = odo.digits();
        let x = hg.point(c);
        for i in 0..k {
            if hg.hint.contains(i, x) {
                continue;
            }
            lits.clear();
            for v in 0..n {
                let row = g
                    .out_neighbors(v)
                    .iter()
                    .fold(0usize, |acc, &u| acc * g.hat(u) as usize + c[u] as usize);
                let copy = if copies[v] == 1 { 0 } else { i };
                lits.push((offset[v][copy] + row, c[v]));
            }
            p.add_clause(lits.iter().copied());
        }
    }
    let (result, stats) = search::solve(&p, budget);
    let (verdict, certificate) = match result {
        SearchResult::Found(sets) => {
            let plans = (0..n)
                .map(|v| {
                    (0..copies[v])
                        .map(|copy| {
                            let base = offset[v][copy];
                            let mut row = 0;
                            Plan::from_fn(g, v, |_| {
                                row += 1;
                                sets[base + row - 1]
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            (Verdict::Winnable, Some(HintStrategy { plans }))
        }
        SearchResult::Exhausted => (Verdict::Unwinnable, None),
        SearchResult::OutOfBudget => (Verdict::Unknown, None),
    };
    Ok(HintOutcome {
        verdict,
        certificate,
        stats,
    })
}

/// Result of searching all hints for one vertex.
#[derive(Clone, Debug)]
pub struct HintSearch {
    pub verdict: Verdict,
    /// A hint whose derived game is winnable, with a winning strategy for it.
    pub witness: Option<(Hint, HintStrategy)>,
    /// The corresponding winning strategy of the original game.
    pub certificate: Option<Strategy>,
    pub hints_tried: u64,
}

/// Calls `visit` on every assignment of a `g`-subset of `[k]` to each of `points` points,
/// with labels making their first appearance in increasing order. Stops when `visit` says so.
pub fn canonical_hint_assignments(
    points: usize,
    g: u32,
    k: u32,
    visit: &mut dyn FnMut(&[ColorSet]) -> bool,
) -> bool {
    fn rec(
        at: usize,
        used: u32,
        points: usize,
        g: u32,
        k: u32,
        cur: &mut Vec<ColorSet>,
        visit: &mut dyn FnMut(&[ColorSet]) -> bool,
    ) -> bool {
        if at == points {
            return visit(cur);
        }
        // t new labels (used..used+t) plus g-t old ones
        for t in 0..=g.min(k - used) {
            let fresh: ColorSet = (used..used + t).collect();
            let need = (g - t) as usize;
            if need as u32 > used {
                continue;
            }
            let mut chosen = Vec::with_capacity(need);
            if subsets(0, used, need, &mut chosen, &mut |old| {
                let mut s = fresh;
                for &c in old {
                    s.insert(c);
                }
                cur.push(s);
                let stop = rec(at + 1, used + t, points, g, k, cur, visit);
                cur.pop();
                stop
            }) {
                return true;
            }
        }
        false
    }
    fn subsets(
        from: u32,
        below: u32,
        need: usize,
        chosen: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if chosen.len() == need {
            return f(chosen);
        }
        for c in from..below {
            chosen.push(c);
            if subsets(c + 1, below, need, chosen, f) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(points);
    rec(0, 0, points, g, k, &mut cur, visit)
}

/// Whether some `g(v),h(v)`-hint about `N⁺(v)` to `N⁻(v)` makes `G∖v` winnable. Hints are
/// enumerated up to renaming of the part indices.
pub fn exists_winning_hint(game: &Game, v: usize, budget: &SearchBudget) -> Result<HintSearch> {
    let subject = game.out_neighbors(v).to_vec();
    let radices: Vec<u32> = subject.iter().map(|&u| game.hat(u)).collect();
    let points = game
        .space_size(&subject)
        .filter(|&s| s <= 64)
        .ok_or_else(|| Error::Budget("too many subject colorings to enumerate hints".into()))?
        as usize;
    let (g, k) = (game.guess(v), game.hat(v));
    let base = game.without(v);
    let mut tried = 0u64;
    let mut unknown = false;
    let mut witness = None;
    let mut error = None;
    canonical_hint_assignments(points, g, k, &mut |sets| {
        tried += 1;
        let mut parts = vec![Vec::new(); k as usize];
        for (x, s) in sets.iter().enumerate() {
            for i in s.iter() {
                parts[i as usize].push(x);
            }
        }
        let step = Hint::new(
            g,
            k,
            names(game, &subject),
            names(game, game.in_neighbors(v)),
            radices.clone(),
            parts,
        )
        .and_then(|hint| HintGame::new(base.clone(), hint))
        .and_then(|hg| Ok((decide_hint_winnable(&hg, budget)?, hg)));
        match step {
            Err(e) => {
                error = Some(e);
                true
            }
            Ok((out, hg)) => match out.verdict {
                Verdict::Winnable => {
                    witness = Some((hg.hint, out.certificate.unwrap()));
                    true
                }
                Verdict::Unknown => {
                    unknown = true;
                    false
                }
                Verdict::Unwinnable => false,
            },
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    let certificate = match &witness {
        Some((hint, hs)) => Some(undo_derived(game, v, hint, hs)?),
        None => None,
    };
    let verdict = if witness.is_some() {
        Verdict::Winnable
    } else if unknown {
        Verdict::Unknown
    } else {
        Verdict::Unwinnable
    };
    Ok(HintSearch {
        verdict,
        witness,
        certificate,
        hints_tried: tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{complete_game, cycle_game, GameBuilder};
    use crate::oracle::verify_strategy;

    fn k2(h: (u32, u32)) -> Game {
        GameBuilder::new()
            .vertex("A", h.0, 1)
            .vertex("B", h.1, 1)
            .edge("A", "B")
            .build()
            .unwrap()
    }

    #[test]
    fn see_plan_gives_singleton_parts() {
        let g = k2((2, 2));
        let f = Plan::from_fn(&g, 0, |inp| ColorSet::single(inp[0])).unwrap();
        let h = derive_hint(&g, 0, &f).unwrap();
        assert_eq!(h.parts, vec![vec![0], vec![1]]);
        assert_eq!(hint_to_plan(&g, 0, &h).unwrap(), f);
    }

    #[test]
    fn constant_plan_gives_everything_and_nothing() {
        let g = k2((2, 2));
        let f = Plan::constant(&g, 0, ColorSet::single(0)).unwrap();
        let h = derive_hint(&g, 0, &f).unwrap();
        assert_eq!(h.parts, vec![vec![0, 1], vec![]]);
    }

    #[test]
    fn partition_hints() {
        let h = partition_hint(&[vec![0], vec![1]], 1, vec!["a".into()], vec![], vec![2]).unwrap();
        assert_eq!(h.parts, vec![vec![0], vec![1]]);
        let h = partition_hint(
            &[vec![0], vec![1], vec![2]],
            2,
            vec!["a".into()],
            vec![],
            vec![3],
        )
        .unwrap();
        assert_eq!(h.parts, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert!(
            partition_hint(&[vec![0], vec![0, 1]], 1, vec!["a".into()], vec![], vec![2]).is_err()
        );
    }

    #[test]
    fn multiplicity_is_checked() {
        assert!(Hint::new(
            1,
            2,
            vec!["a".into()],
            vec![],
            vec![2],
            vec![vec![0, 1], vec![1]]
        )
        .is_err());
    }

    #[test]
    fn canonical_assignment_counts() {
        let mut n = 0;
        canonical_hint_assignments(9, 1, 3, &mut |_| {
            n += 1;
            false
        });
        // set partitions of 9 points into at most 3 blocks
        assert_eq!(n, 1 + 255 + 3025);
        let mut n = 0;
        canonical_hint_assignments(2, 2, 3, &mut |_| {
            n += 1;
            false
        });
        // {0,1} then one of {0,1}, {0,2}, {1,2}
        assert_eq!(n, 3);
    }

    #[test]
    fn k2_has_a_winning_hint() {
        let g = k2((2, 2));
        let r = exists_winning_hint(&g, 0, &SearchBudget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Winnable);
        assert!(verify_strategy(&g, r.certificate.as_ref().unwrap())
            .unwrap()
            .wins());
    }

    #[test]
    fn k2_with_three_hats_has_none() {
        let g = k2((3, 2));
        let r = exists_winning_hint(&g, 0, &SearchBudget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Unwinnable);
    }

    #[test]
    fn triangle_233_has_a_witness_at_every_vertex() {
        let g = cycle_game(&[2, 3, 3]).unwrap();
        for v in 0..3 {
            let r = exists_winning_hint(&g, v, &SearchBudget::default()).unwrap();
            assert_eq!(r.verdict, Verdict::Winnable);
        }
    }

    #[test]
    fn derived_strategy_round_trips() {
        let g = complete_game(&[3, 3, 3], &[1, 1, 1]).unwrap();
        let f = Strategy::from_fn(&g, |v, inp| {
            let s: u32 = inp.iter().sum();
            ColorSet::single((3 * 3 + v as u32 - s) % 3)
        })
        .unwrap();
        let (hg, hs) = derived_strategy(&g, 1, &f).unwrap();
        assert_eq!(verify_hint_strategy(&hg, &hs).unwrap(), None);
        assert_eq!(undo_derived(&g, 1, &hg.hint, &hs).unwrap(), f);
    }

    #[test]
    fn hint_with_every_part_full_admits_no_utterance() {
        let base = k2((2, 2)).without(1);
        let hint = Hint::new(
            2,
            2,
            vec!["A".into()],
            vec![],
            vec![2],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        let hg = HintGame::new(base, hint).unwrap();
        let out = decide_hint_winnable(&hg, &SearchBudget::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Winnable);
    }

    #[test]
    fn empty_hint_conveys_nothing() {
        let base = k2((2, 2)).without(1);
        let hint = Hint::new(
            0,
            2,
            vec!["A".into()],
            vec!["A".into()],
            vec![2],
            vec![vec![], vec![]],
        )
        .unwrap();
        let hg = HintGame::new(base, hint).unwrap();
        let out = decide_hint_winnable(&hg, &SearchBudget::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Unwinnable);
    }
}
