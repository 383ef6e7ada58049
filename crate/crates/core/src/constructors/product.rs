//! Product gluings: vertices outside the hubs keep their factor, and the hubs are
//! replaced by their product, whose vertices wear composite colors.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{
    is_clique, names_of, require_wins, strategy_from_views, Construction, ConstructionRecipe, View,
};
use crate::error::{Error, Result};
use crate::game::{
    rank, rational, unrank, Color, ColorSet, Digraph, Game, Odometer, Rational, Strategy,
};
use crate::oracle::ENUMERATION_LIMIT;

/// One operand of a product: a game, a strategy for it, and the hub that gets multiplied.
#[derive(Clone, Copy, Debug)]
pub struct Factor<'a> {
    pub game: &'a Game,
    pub strategy: &'a Strategy,
    pub hub: &'a [usize],
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Adjacency {
    Strong,
    Cartesian,
}

#[derive(Clone, Debug)]
enum Origin {
    Outer(usize, usize),
    Middle(Vec<usize>),
}

struct Layout {
    game: Game,
    origin: Vec<Origin>,
    outer: Vec<Vec<usize>>,
    middle: HashMap<Vec<usize>, usize>,
    hub_pos: Vec<Vec<Option<usize>>>,
    radices: Vec<Vec<u32>>,
}

impl Layout {
    fn build(
        factors: &[Factor],
        adjacency: Adjacency,
        outer_guess: impl Fn(usize, usize) -> u32,
    ) -> Result<Layout> {
        let n = factors.len();
        let hub_pos: Vec<Vec<Option<usize>>> = factors
            .iter()
            .map(|f| {
                let mut pos = vec![None; f.game.len()];
                for (p, &u) in f.hub.iter().enumerate() {
                    pos[u] = Some(p);
                }
                pos
            })
            .collect();
        let sizes: Vec<u32> = factors.iter().map(|f| f.hub.len() as u32).collect();
        let mut tuples = Vec::new();
        let mut odo = Odometer::new(sizes);
        while odo.advance() {
            tuples.push(odo.digits().iter().map(|&d| d as usize).collect::<Vec<_>>());
        }

        let mut origin = Vec::new();
        for u in 0..factors[0].game.len() {
            match hub_pos[0][u] {
                None => origin.push(Origin::Outer(0, u)),
                Some(p) => origin.extend(
                    tuples
                        .iter()
                        .filter(|t| t[0] == p)
                        .map(|t| Origin::Middle(t.clone())),
                ),
            }
        }
        for (i, f) in factors.iter().enumerate().skip(1) {
            origin.extend(
                (0..f.game.len())
                    .filter(|&u| hub_pos[i][u].is_none())
                    .map(|u| Origin::Outer(i, u)),
            );
        }

        let name_of = |o: &Origin| -> String {
            match o {
                Origin::Outer(i, u) => factors[*i].game.name(*u).to_string(),
                Origin::Middle(t) => {
                    let parts: Vec<&str> = (0..n)
                        .filter(|&i| factors[i].hub.len() > 1)
                        .map(|i| factors[i].game.name(factors[i].hub[t[i]]))
                        .collect();
                    if parts.is_empty() {
                        factors[0].game.name(factors[0].hub[t[0]]).to_string()
                    } else {
                        parts.join("*")
                    }
                }
            }
        };
        let mut d = Digraph::new(origin.iter().map(name_of))?;
        let arc = |a: &Origin, b: &Origin| -> bool {
            match (a, b) {
                (Origin::Outer(i, u), Origin::Outer(j, w)) => {
                    i == j && factors[*i].game.digraph().has_arc(*u, *w)
                }
                (Origin::Outer(i, u), Origin::Middle(t)) => factors[*i]
                    .game
                    .digraph()
                    .has_arc(*u, factors[*i].hub[t[*i]]),
                (Origin::Middle(t), Origin::Outer(i, w)) => factors[*i]
                    .game
                    .digraph()
                    .has_arc(factors[*i].hub[t[*i]], *w),
                (Origin::Middle(s), Origin::Middle(t)) => {
                    let mut arcs = 0;
                    for i in 0..n {
                        if s[i] == t[i] {
                            continue;
                        }
                        if !factors[i]
                            .game
                            .digraph()
                            .has_arc(factors[i].hub[s[i]], factors[i].hub[t[i]])
                        {
                            return false;
                        }
                        arcs += 1;
                    }
                    match adjacency {
                        Adjacency::Strong => arcs >= 1,
                        Adjacency::Cartesian => arcs == 1,
                    }
                }
            }
        };
        for a in 0..origin.len() {
            for b in 0..origin.len() {
                if a != b && arc(&origin[a], &origin[b]) {
                    d.add_arc(a, b)?;
                }
            }
        }
        let mut hats = Vec::new();
        let mut guesses = Vec::new();
        let mut radices = Vec::new();
        for o in &origin {
            match o {
                Origin::Outer(i, u) => {
                    hats.push(factors[*i].game.hat(*u));
                    guesses.push(outer_guess(*i, *u));
                    radices.push(Vec::new());
                }
                Origin::Middle(t) => {
                    let r: Vec<u32> = (0..n)
                        .map(|i| factors[i].game.hat(factors[i].hub[t[i]]))
                        .collect();
                    let g: u32 = (0..n)
                        .map(|i| factors[i].game.guess(factors[i].hub[t[i]]))
                        .product();
                    hats.push(r.iter().product());
                    guesses.push(g);
                    radices.push(r);
                }
            }
        }
        let game = Game::new(d, hats, guesses)?;
        let mut outer: Vec<Vec<usize>> = factors
            .iter()
            .map(|f| vec![usize::MAX; f.game.len()])
            .collect();
        let mut middle = HashMap::new();
        for (v, o) in origin.iter().enumerate() {
            match o {
                Origin::Outer(i, u) => outer[*i][*u] = v,
                Origin::Middle(t) => {
                    middle.insert(t.clone(), v);
                }
            }
        }
        Ok(Layout {
            game,
            origin,
            outer,
            middle,
            hub_pos,
            radices,
        })
    }

    /// Coordinate `i` of the composite color worn by middle vertex `v`.
    fn part(&self, v: usize, c: Color, i: usize) -> Color {
        unrank(&self.radices[v], c as usize)[i]
    }

    fn compose(&self, v: usize, per_axis: &[ColorSet]) -> ColorSet {
        let mut out = ColorSet::EMPTY;
        let mut stack = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == per_axis.len() {
                out.insert(rank(&self.radices[v], &prefix) as Color);
                continue;
            }
            for c in per_axis[prefix.len()].iter() {
                let mut p = prefix.clone();
                p.push(c);
                stack.push(p);
            }
        }
        out
    }

    fn with_coord(t: &[usize], i: usize, p: usize) -> Vec<usize> {
        let mut s = t.to_vec();
        s[i] = p;
        s
    }

    /// All hub tuples whose coordinate `i` is `p`.
    fn slab(&self, i: usize, p: usize) -> impl Iterator<Item = (&Vec<usize>, usize)> {
        self.middle
            .iter()
            .filter(move |(t, _)| t[i] == p)
            .map(|(t, &v)| (t, v))
    }
}

fn check_factors(factors: &[Factor]) -> Result<()> {
    if factors.is_empty() {
        return Err(Error::Hypothesis("no factors".into()));
    }
    for f in factors {
        if f.hub.is_empty() {
            return Err(Error::Hypothesis("empty hub".into()));
        }
        let mut seen = vec![false; f.game.len()];
        for &u in f.hub {
            if u >= f.game.len() || std::mem::replace(&mut seen[u], true) {
                return Err(Error::Hypothesis("hub repeats or leaves its game".into()));
            }
        }
        f.strategy.validate(f.game)?;
    }
    Ok(())
}

fn recipe(op: &str, factors: &[Factor]) -> ConstructionRecipe {
    let mut r = ConstructionRecipe::new(op);
    for (i, f) in factors.iter().enumerate() {
        r = r
            .operand(f.game)
            .glue(&format!("H{}", i + 1), names_of(f.game, f.hub));
    }
    r
}

/// Strong product over hubs that are cliques; each middle vertex guesses every coordinate
/// of its composite color from the slab sums of its factor.
pub fn clique_product(factors: &[Factor]) -> Result<Construction> {
    check_factors(factors)?;
    for (i, f) in factors.iter().enumerate() {
        if !is_clique(f.game, f.hub) {
            return Err(Error::Hypothesis(format!("hub {} is not a clique", i + 1)));
        }
        require_wins(f.game, f.strategy, &format!("factor {}", i + 1))?;
    }
    let lay = Layout::build(factors, Adjacency::Strong, |i, u| factors[i].game.guess(u))?;
    let slab_sum = |view: &View, i: usize, p: usize, skip: usize| -> u64 {
        lay.slab(i, p)
            .filter(|&(_, v)| v != skip)
            .map(|(_, v)| lay.part(v, view.get(v), i) as u64)
            .sum()
    };
    let strategy = strategy_from_views(&lay.game, |v, view| {
        let input = |i: usize, w: usize| -> Color {
            match lay.hub_pos[i][w] {
                Some(p) => {
                    let h = factors[i].game.hat(w) as u64;
                    (slab_sum(view, i, p, usize::MAX) % h) as Color
                }
                None => view.get(lay.outer[i][w]),
            }
        };
        match &lay.origin[v] {
            Origin::Outer(i, u) => {
                let inp: Vec<Color> = factors[*i]
                    .game
                    .out_neighbors(*u)
                    .iter()
                    .map(|&w| input(*i, w))
                    .collect();
                factors[*i].strategy.plan(*u).guesses_for_inputs(&inp)
            }
            Origin::Middle(t) => {
                let axes: Vec<ColorSet> = (0..factors.len())
                    .map(|i| {
                        let u = factors[i].hub[t[i]];
                        let h = factors[i].game.hat(u) as u64;
                        let inp: Vec<Color> = factors[i]
                            .game
                            .out_neighbors(u)
                            .iter()
                            .map(|&w| input(i, w))
                            .collect();
                        let rest = slab_sum(view, i, t[i], v) % h;
                        factors[i]
                            .strategy
                            .plan(u)
                            .guesses_for_inputs(&inp)
                            .iter()
                            .map(|s| ((s as u64 + h - rest) % h) as Color)
                            .collect()
                    })
                    .collect();
                lay.compose(v, &axes)
            }
        }
    })?;
    Construction::finish(lay.game, strategy, recipe("clique_product", factors))
}

/// Glues two winnable Latvian games along their one shared vertex `a`, multiplying its hatness.
pub fn product_single_point(
    g1: &Game,
    f1: &Strategy,
    g2: &Game,
    f2: &Strategy,
    a: &str,
) -> Result<Construction> {
    if !g1.is_latvian() || !g2.is_latvian() {
        return Err(Error::Hypothesis("both operands must be Latvian".into()));
    }
    let shared: Vec<&str> = (0..g1.len())
        .map(|v| g1.name(v))
        .filter(|n| g2.digraph().index_of(n).is_some())
        .collect();
    if shared != [a] {
        return Err(Error::Hypothesis(format!(
            "operands must share exactly `{a}`, they share {{{}}}",
            shared.join(",")
        )));
    }
    let h1 = [g1.vertex(a)?];
    let h2 = [g2.vertex(a)?];
    let factors = [
        Factor {
            game: g1,
            strategy: f1,
            hub: &h1,
        },
        Factor {
            game: g2,
            strategy: f2,
            hub: &h2,
        },
    ];
    let mut c = clique_product(&factors)?;
    c.recipe.op = "product_single_point".into();
    Ok(c)
}

/// Cartesian product of a clique hub `H1` with an independent hub `H2`. Sages of the first
/// game that see `H1` answer once per copy, so their guessness is multiplied by `|H2|`.
pub fn clique_general_product(first: Factor, second: Factor) -> Result<Construction> {
    let factors = [first, second];
    check_factors(&factors)?;
    if !is_clique(first.game, first.hub) {
        return Err(Error::Hypothesis("first hub is not a clique".into()));
    }
    let d2 = second.game.digraph();
    if second
        .hub
        .iter()
        .any(|&a| second.hub.iter().any(|&b| d2.has_arc(a, b)))
    {
        return Err(Error::Hypothesis("second hub must be independent".into()));
    }
    require_wins(first.game, first.strategy, "first")?;
    require_wins(second.game, second.strategy, "second")?;
    let sees_hub = |u: usize| {
        first
            .game
            .out_neighbors(u)
            .iter()
            .any(|w| first.hub.contains(w))
    };
    let copies = second.hub.len() as u32;
    let lay = Layout::build(&factors, Adjacency::Cartesian, |i, u| {
        let g = factors[i].game.guess(u);
        if i == 0 && sees_hub(u) {
            g * copies
        } else {
            g
        }
    })?;
    let strategy = strategy_from_views(&lay.game, |v, view| {
        let left = |w: usize, q: usize| -> Color {
            match lay.hub_pos[0][w] {
                Some(p) => lay.part(
                    lay.middle[&vec![p, q]],
                    view.get(lay.middle[&vec![p, q]]),
                    0,
                ),
                None => view.get(lay.outer[0][w]),
            }
        };
        let column_sum = |q: usize, skip: usize| -> u64 {
            (0..first.hub.len())
                .map(|p| lay.middle[&vec![p, q]])
                .filter(|&m| m != skip)
                .map(|m| lay.part(m, view.get(m), 1) as u64)
                .sum()
        };
        match &lay.origin[v] {
            Origin::Outer(0, u) => {
                let runs = if sees_hub(*u) { second.hub.len() } else { 1 };
                let mut out = ColorSet::EMPTY;
                for q in 0..runs {
                    let inp: Vec<Color> = first
                        .game
                        .out_neighbors(*u)
                        .iter()
                        .map(|&w| left(w, q))
                        .collect();
                    out.0 |= first.strategy.plan(*u).guesses_for_inputs(&inp).0;
                }
                out
            }
            Origin::Outer(_, u) => {
                let inp: Vec<Color> = second
                    .game
                    .out_neighbors(*u)
                    .iter()
                    .map(|&w| match lay.hub_pos[1][w] {
                        Some(q) => (column_sum(q, usize::MAX) % second.game.hat(w) as u64) as Color,
                        None => view.get(lay.outer[1][w]),
                    })
                    .collect();
                second.strategy.plan(*u).guesses_for_inputs(&inp)
            }
            Origin::Middle(t) => {
                let (p, q) = (t[0], t[1]);
                let u1 = first.hub[p];
                let inp1: Vec<Color> = first
                    .game
                    .out_neighbors(u1)
                    .iter()
                    .map(|&w| left(w, q))
                    .collect();
                let g1 = first.strategy.plan(u1).guesses_for_inputs(&inp1);
                let u2 = second.hub[q];
                let h2 = second.game.hat(u2) as u64;
                let inp2: Vec<Color> = second
                    .game
                    .out_neighbors(u2)
                    .iter()
                    .map(|&w| view.get(lay.outer[1][w]))
                    .collect();
                let rest = column_sum(q, v) % h2;
                let g2: ColorSet = second
                    .strategy
                    .plan(u2)
                    .guesses_for_inputs(&inp2)
                    .iter()
                    .map(|s| ((s as u64 + h2 - rest) % h2) as Color)
                    .collect();
                lay.compose(v, &[g1, g2])
            }
        }
    })?;
    Construction::finish(
        lay.game,
        strategy,
        recipe("clique_general_product", &factors),
    )
}

/// Largest number of hub sages guessing wrong on a coloring where every sage outside the
/// hub guesses wrong.
pub fn max_wrong_inside(game: &Game, f: &Strategy, hub: &[usize]) -> Result<u64> {
    f.validate(game)?;
    if game.total_space().is_none_or(|s| s > ENUMERATION_LIMIT) {
        return Err(Error::Budget(
            "too many colorings to check the hub premise".into(),
        ));
    }
    let inside: Vec<bool> = (0..game.len()).map(|v| hub.contains(&v)).collect();
    let mut worst = 0;
    let mut odo = Odometer::new(game.hats().to_vec());
    while odo.advance() {
        let c = odo.digits();
        if (0..game.len()).any(|v| !inside[v] && f.right(v, c)) {
            continue;
        }
        let wrong = hub.iter().filter(|&&v| !f.right(v, c)).count() as u64;
        worst = worst.max(wrong);
    }
    Ok(worst)
}

/// Cartesian product over arbitrary hubs, given that factor `i` leaves at most `r[i]` hub
/// sages wrong whenever everyone outside its hub is wrong, and `Σ r_i/|H_i| < 1`.
pub fn general_product(factors: &[Factor], r: &[u64]) -> Result<Construction> {
    check_factors(factors)?;
    if r.len() != factors.len() {
        return Err(Error::Hypothesis("one surplus count per factor".into()));
    }
    let total: Rational = factors
        .iter()
        .zip(r)
        .fold(Rational::zero(), |acc, (f, &ri)| {
            acc + rational(ri as i64, f.hub.len() as i64)
        });
    if total >= Rational::one() {
        return Err(Error::Hypothesis(format!(
            "surplus sum {total} is not below 1"
        )));
    }
    for (i, (f, &ri)) in factors.iter().zip(r).enumerate() {
        let worst = max_wrong_inside(f.game, f.strategy, f.hub)?;
        if worst > ri {
            return Err(Error::Hypothesis(format!(
                "factor {} can leave {worst} hub sages wrong, more than {ri}",
                i + 1
            )));
        }
    }
    let n = factors.len();
    let copies = |i: usize| -> u32 {
        (0..n)
            .filter(|&j| j != i)
            .map(|j| factors[j].hub.len() as u32)
            .product()
    };
    let sees_hub = |i: usize, u: usize| {
        factors[i]
            .game
            .out_neighbors(u)
            .iter()
            .any(|w| factors[i].hub.contains(w))
    };
    let lay = Layout::build(factors, Adjacency::Cartesian, |i, u| {
        let g = factors[i].game.guess(u);
        if sees_hub(i, u) {
            g * copies(i)
        } else {
            g
        }
    })?;
    let strategy = strategy_from_views(&lay.game, |v, view| {
        let fiber_input = |i: usize, t: &[usize], w: usize| -> Color {
            match lay.hub_pos[i][w] {
                Some(p) => {
                    let m = lay.middle[&Layout::with_coord(t, i, p)];
                    lay.part(m, view.get(m), i)
                }
                None => view.get(lay.outer[i][w]),
            }
        };
        match &lay.origin[v] {
            Origin::Outer(i, u) => {
                let f = &factors[*i];
                if !sees_hub(*i, *u) {
                    let inp: Vec<Color> = f
                        .game
                        .out_neighbors(*u)
                        .iter()
                        .map(|&w| view.get(lay.outer[*i][w]))
                        .collect();
                    return f.strategy.plan(*u).guesses_for_inputs(&inp);
                }
                let mut out = ColorSet::EMPTY;
                for t in lay.middle.keys().filter(|t| t[*i] == 0) {
                    let inp: Vec<Color> = f
                        .game
                        .out_neighbors(*u)
                        .iter()
                        .map(|&w| fiber_input(*i, t, w))
                        .collect();
                    out.0 |= f.strategy.plan(*u).guesses_for_inputs(&inp).0;
                }
                out
            }
            Origin::Middle(t) => {
                let axes: Vec<ColorSet> = (0..n)
                    .map(|i| {
                        let u = factors[i].hub[t[i]];
                        let inp: Vec<Color> = factors[i]
                            .game
                            .out_neighbors(u)
                            .iter()
                            .map(|&w| fiber_input(i, t, w))
                            .collect();
                        factors[i].strategy.plan(u).guesses_for_inputs(&inp)
                    })
                    .collect();
                lay.compose(v, &axes)
            }
        }
    })?;
    let mut rec = recipe("general_product", factors);
    for (i, ri) in r.iter().enumerate() {
        rec = rec.glue(&format!("r{}", i + 1), ri.to_string());
    }
    Construction::finish(lay.game, strategy, rec)
}
