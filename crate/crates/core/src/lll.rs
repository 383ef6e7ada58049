//! Local-lemma style unwinnability tests and the polynomials behind them.
//!
//! For any strategy, the event "sage `v` guesses right" under a uniformly random coloring has
//! probability exactly `r(v)` and is determined by `v`'s own color and what `v` sees. The events
//! therefore have the reversed visibility digraph as a dependency digraph, and any local-lemma
//! criterion that keeps some coloring outside all of them proves the game unwinnable.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{rational, Color, ColorSet, Digraph, Game, Odometer, Rational, Strategy};

/// Largest vertex count for the subset sweeps.
pub const SUBSET_LIMIT: usize = 20;

/// Events `R_v` with an arc `R_v → R_u` whenever `u` sees `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyDigraph {
    pub digraph: Digraph,
}

pub fn dual_dependency(game: &Game) -> DependencyDigraph {
    DependencyDigraph {
        digraph: game.digraph().transpose(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundVerdict {
    Unwinnable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LllReport {
    pub verdict: BoundVerdict,
    /// The weights checked last.
    pub weights: Vec<Rational>,
    /// A vertex where the inequality fails, when inconclusive.
    pub failing: Option<usize>,
}

fn lll_check(game: &Game, x: &[Rational]) -> Option<usize> {
    (0..game.len()).find(|&v| {
        if x[v] <= Rational::zero() || x[v] >= Rational::one() {
            return true;
        }
        let bound = game
            .in_neighbors(v)
            .iter()
            .fold(x[v].clone(), |acc, &u| acc * (Rational::one() - &x[u]));
        game.ratio(v) > bound
    })
}

/// A rational at or just above `f`, with denominator `10^9`.
fn round_up(f: f64) -> Rational {
    let den = 1_000_000_000i64;
    rational(((f * den as f64).ceil() as i64).clamp(1, den - 1), den)
}

/// Weights for which `r(v) ≤ x(v) ∏_{u→v} (1 − x(u))` at every vertex, if found: first the
/// uniform `1/(Δ⁻+1)`, then the least fixed point of `x(v) = r(v) / ∏_{u→v} (1 − x(u))`
/// approached from `x = r` (capped at 200 rounds), rounded up and checked exactly.
fn auto_weights(game: &Game) -> Vec<Vec<Rational>> {
    let n = game.len();
    let delta = game.digraph().max_in_degree() as i64;
    let uniform = vec![rational(1, delta + 1); n];
    let r: Vec<f64> = (0..n)
        .map(|v| game.ratio(v).to_f64().unwrap_or(1.0))
        .collect();
    let mut x = r.clone();
    for _ in 0..200 {
        let next: Vec<f64> = (0..n)
            .map(|v| {
                r[v] / game
                    .in_neighbors(v)
                    .iter()
                    .map(|&u| 1.0 - x[u])
                    .product::<f64>()
            })
            .collect();
        let done = next.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-13);
        x = next;
        if done || x.iter().any(|&t| !(t < 1.0)) {
            break;
        }
    }
    let mut out = vec![uniform];
    if x.iter().all(|&t| t > 0.0 && t < 1.0) {
        out.push(x.iter().map(|&t| round_up(t * (1.0 + 1e-7))).collect());
    }
    out
}

/// Certifies unwinnability when the directed local lemma applies with weights `x` (or with
/// automatically chosen weights). Never claims a game is winnable.
pub fn lll_unwinnable_test(game: &Game, x: Option<&[Rational]>) -> Result<LllReport> {
    let candidates = match x {
        Some(x) => {
            if x.len() != game.len() {
                return Err(Error::Hypothesis("one weight per vertex".into()));
            }
            vec![x.to_vec()]
        }
        None => auto_weights(game),
    };
    let mut last = None;
    for w in candidates {
        match lll_check(game, &w) {
            None => {
                return Ok(LllReport {
                    verdict: BoundVerdict::Unwinnable,
                    weights: w,
                    failing: None,
                })
            }
            Some(v) => last = Some((w, v)),
        }
    }
    let (weights, v) = last.expect("at least one candidate");
    Ok(LllReport {
        verdict: BoundVerdict::Inconclusive,
        weights,
        failing: Some(v),
    })
}

/// A rational strictly above `e`.
pub fn e_upper() -> Rational {
    rational(27183, 10000)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBounds {
    /// Upper bound `e(Δ⁻+1)` with `e` replaced by a rational above it.
    pub directed: Rational,
    /// `(Δ−1)^{1−Δ} Δ^Δ` for graphs with maximum degree at least 2.
    pub undirected: Option<Rational>,
}

/// Bounds on the largest hatness at which some Latvian-style game on `d` stays winnable.
pub fn degree_bounds(d: &Digraph) -> DegreeBounds {
    let directed = e_upper() * Rational::from_integer(BigInt::from(d.max_in_degree() + 1));
    let delta = d.max_out_degree();
    let undirected = (d.is_symmetric() && delta >= 2).then(|| {
        let base = BigInt::from(delta - 1);
        Rational::new(
            num_traits::pow(BigInt::from(delta), delta),
            num_traits::pow(base, delta - 1),
        )
    });
    DegreeBounds {
        directed,
        undirected,
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > SUBSET_LIMIT {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the subset sweep limit {SUBSET_LIMIT}"
        )));
    }
    Ok(())
}

fn out_masks(d: &Digraph) -> Vec<u32> {
    (0..d.len())
        .map(|v| d.out_neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

/// `acyclic[A]` for every vertex subset `A`: peel a vertex with no arc into the rest.
fn acyclic_table(d: &Digraph) -> Vec<bool> {
    let n = d.len();
    let out = out_masks(d);
    let mut acyclic = vec![false; 1 << n];
    acyclic[0] = true;
    for a in 1usize..1 << n {
        acyclic[a] =
            (0..n).any(|v| a >> v & 1 == 1 && out[v] & a as u32 == 0 && acyclic[a & !(1 << v)]);
    }
    acyclic
}

/// `Σ_{A ⊆ S acyclic} ∏_{v∈A} (−w_v)`, the acyclicity polynomial evaluated at `−w·1_S`.
pub fn acyclicity_poly(d: &Digraph, w: &[Rational], s: &[usize]) -> Result<Rational> {
    check_size(d.len())?;
    let acyclic = acyclic_table(d);
    Ok(sum_over(d.len(), w, s, |a| acyclic[a]))
}

fn sum_over(n: usize, w: &[Rational], s: &[usize], keep: impl Fn(usize) -> bool) -> Rational {
    let smask = s.iter().fold(0usize, |m, &v| m | 1 << v);
    let mut term = vec![Rational::zero(); 1 << n];
    term[0] = Rational::one();
    let mut total = Rational::zero();
    // iterate submasks of S in increasing order so the smaller term is ready
    let mut a = 0usize;
    loop {
        if a != 0 {
            let v = a.trailing_zeros() as usize;
            term[a] = -(&term[a & (a - 1)] * &w[v]);
        }
        if keep(a) {
            total += &term[a];
        }
        if a == smask {
            break;
        }
        a = (a.wrapping_sub(smask)) & smask;
    }
    total
}

/// The independence polynomial of a graph at `−w·1_S`, by listing independent sets.
pub fn independence_poly(d: &Digraph, w: &[Rational], s: &[usize]) -> Result<Rational> {
    check_size(d.len())?;
    let out = out_masks(d);
    Ok(sum_over(d.len(), w, s, |a| {
        (0..d.len()).all(|v| a >> v & 1 == 0 || out[v] & a as u32 == 0)
    }))
}

/// `Z[S]` for every subset via `Z[S] = Z[S∖v] − w_v Z[S∖N[v]]`.
fn independence_table(d: &Digraph, w: &[Rational]) -> Vec<Rational> {
    let n = d.len();
    let closed: Vec<usize> = out_masks(d)
        .iter()
        .enumerate()
        .map(|(v, &m)| m as usize | 1 << v)
        .collect();
    let mut z = vec![Rational::zero(); 1 << n];
    z[0] = Rational::one();
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        z[s] = &z[s & !(1 << v)] - &w[v] * &z[s & !closed[v]];
    }
    z
}

/// Certifies unwinnability when the independence polynomial of the graph is positive at
/// `−r·1_S` for every vertex subset `S`.
pub fn shearer_unwinnable_test(game: &Game) -> Result<(BoundVerdict, Option<Vec<usize>>)> {
    if !game.digraph().is_symmetric() {
        return Err(Error::Hypothesis(
            "the Shearer test needs an undirected graph".into(),
        ));
    }
    check_size(game.len())?;
    let r: Vec<Rational> = (0..game.len()).map(|v| game.ratio(v)).collect();
    let z = independence_table(game.digraph(), &r);
    match z.iter().position(|x| !x.is_positive()) {
        None => Ok((BoundVerdict::Unwinnable, None)),
        Some(s) => Ok((
            BoundVerdict::Inconclusive,
            Some((0..game.len()).filter(|v| s >> v & 1 == 1).collect()),
        )),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShearerReport {
    pub k: usize,
    pub colorings: u64,
    pub all_wrong: u64,
    /// `Q(−½·1_S)` for every `S ⊆ V`, indexed by bitmask.
    #[serde(skip)]
    pub q: Vec<Rational>,
    pub q_full: String,
    pub all_positive: bool,
}

/// On the directed `k`-cycle with two colors, everyone guessing the color they see wins, yet
/// the acyclicity polynomial stays positive on the whole box: the directed analogue of
/// Shearer's criterion fails.
pub fn shearer_counterexample(k: usize) -> Result<ShearerReport> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::Hypothesis(
            "k must be odd and at least 3; on even cycles the identical plans lose".into(),
        ));
    }
    check_size(k)?;
    let game = crate::game::directed_cycle_game(&vec![2; k], &vec![1; k])?;
    let f = Strategy::from_fn(&game, |_, inp: &[Color]| ColorSet::single(inp[0]))?;
    let mut all_wrong = 0;
    let mut colorings = 0;
    let mut odo = Odometer::new(vec![2; k]);
    while odo.advance() {
        colorings += 1;
        if !f.someone_right(odo.digits()) {
            all_wrong += 1;
        }
    }
    let acyclic = acyclic_table(game.digraph());
    let half = vec![rational(1, 2); k];
    let q: Vec<Rational> = (0..1usize << k)
        .map(|s| {
            let set: Vec<usize> = (0..k).filter(|v| s >> v & 1 == 1).collect();
            sum_over(k, &half, &set, |a| acyclic[a])
        })
        .collect();
    let all_positive = q.iter().all(|x| x.is_positive());
    Ok(ShearerReport {
        k,
        colorings,
        all_wrong,
        q_full: q[(1 << k) - 1].to_string(),
        q,
        all_positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{complete_game, cycle_game, directed_cycle_game};

    #[test]
    fn c5_hatness7_by_uniform_weights() {
        let g = cycle_game(&[7; 5]).unwrap();
        let rep = lll_unwinnable_test(&g, Some(&vec![rational(1, 3); 5])).unwrap();
        assert_eq!(rep.verdict, BoundVerdict::Unwinnable);
    }

    #[test]
    fn k2_half_is_inconclusive() {
        let g = complete_game(&[2, 2], &[1, 1]).unwrap();
        assert_eq!(
            lll_unwinnable_test(&g, None).unwrap().verdict,
            BoundVerdict::Inconclusive
        );
        assert_eq!(
            shearer_unwinnable_test(&g).unwrap().0,
            BoundVerdict::Inconclusive
        );
        let g = complete_game(&[3, 3], &[1, 1]).unwrap();
        assert_eq!(
            shearer_unwinnable_test(&g).unwrap().0,
            BoundVerdict::Unwinnable
        );
    }

    #[test]
    fn c4_hatness9_shearer() {
        let g = cycle_game(&[9; 4]).unwrap();
        assert_eq!(
            shearer_unwinnable_test(&g).unwrap().0,
            BoundVerdict::Unwinnable
        );
    }

    #[test]
    fn triangle_polynomial() {
        let g = directed_cycle_game(&[2; 3], &[1; 3]).unwrap();
        let w = vec![rational(1, 2); 3];
        assert_eq!(
            acyclicity_poly(g.digraph(), &w, &[0, 1, 2]).unwrap(),
            rational(1, 4)
        );
        assert_eq!(
            acyclicity_poly(g.digraph(), &w, &[0, 2]).unwrap(),
            rational(1, 4)
        );
        let k2 = complete_game(&[3, 5], &[1, 1]).unwrap();
        let w = vec![rational(1, 3), rational(1, 5)];
        assert_eq!(
            acyclicity_poly(k2.digraph(), &w, &[0, 1]).unwrap(),
            rational(7, 15)
        );
    }

    #[test]
    fn bounds() {
        let c = cycle_game(&[2; 5]).unwrap();
        let b = degree_bounds(c.digraph());
        assert_eq!(b.undirected, Some(rational(4, 1)));
        let k2 = complete_game(&[2, 2], &[1, 1]).unwrap();
        assert_eq!(degree_bounds(k2.digraph()).undirected, None);
        let dc = directed_cycle_game(&[2; 4], &[1; 4]).unwrap();
        assert!(degree_bounds(dc.digraph()).directed > rational(5, 1));
    }

    #[test]
    fn counterexample_small() {
        let rep = shearer_counterexample(3).unwrap();
        assert_eq!((rep.colorings, rep.all_wrong), (8, 0));
        assert_eq!(rep.q_full, "1/4");
        assert!(rep.all_positive);
        assert!(shearer_counterexample(4).is_err());
    }
}
