//! Strategy constructors: each operation builds a new game from winnable ones together
//! with an explicit winning strategy for it.

mod attach;
mod product;
mod replace;
mod tightness;

pub use attach::{
    attach_hatness2, attach_hatness3, attach_path, attach_vertex_clique, attach_vertex_general,
};
pub use product::{
    clique_general_product, clique_product, general_product, max_wrong_inside,
    product_single_point, Factor,
};
pub use replace::{make_metapeer, replace_vertex_with_arcs};
pub use tightness::{tightness_report, TightnessEntry};

use crate::error::{Error, Result};
use crate::game::{Color, ColorSet, Game, Plan, Strategy};
use crate::oracle::{verify_strategy, ENUMERATION_LIMIT};

/// What was built and from what.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionRecipe {
    pub op: String,
    pub operands: Vec<String>,
    pub gluing: Vec<(String, String)>,
    pub note: String,
}

impl ConstructionRecipe {
    pub(crate) fn new(op: &str) -> Self {
        ConstructionRecipe {
            op: op.to_string(),
            ..Default::default()
        }
    }

    pub(crate) fn operand(mut self, game: &Game) -> Self {
        let names: Vec<&str> = (0..game.len()).map(|v| game.name(v)).collect();
        self.operands.push(names.join(","));
        self
    }

    pub(crate) fn glue(mut self, key: &str, value: impl Into<String>) -> Self {
        self.gluing.push((key.to_string(), value.into()));
        self
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub game: Game,
    pub strategy: Strategy,
    pub recipe: ConstructionRecipe,
    /// Whether the strategy was checked by full enumeration; `None` if the game was too big.
    pub verified: Option<bool>,
}

impl Construction {
    pub(crate) fn finish(
        game: Game,
        strategy: Strategy,
        recipe: ConstructionRecipe,
    ) -> Result<Self> {
        strategy.validate(&game)?;
        let verified = match game.total_space() {
            Some(s) if s <= ENUMERATION_LIMIT => {
                let ok = verify_strategy(&game, &strategy)?.wins();
                if !ok {
                    return Err(Error::Strategy(format!(
                        "`{}` built a losing strategy",
                        recipe.op
                    )));
                }
                Some(true)
            }
            _ => None,
        };
        Ok(Construction {
            game,
            strategy,
            recipe,
            verified,
        })
    }

    pub fn into_parts(self) -> (Game, Strategy) {
        (self.game, self.strategy)
    }
}

/// Colors seen by one sage, indexed by vertex of the whole game.
pub(crate) struct View<'a> {
    colors: &'a [Option<Color>],
}

impl View<'_> {
    pub(crate) fn get(&self, u: usize) -> Color {
        self.colors[u].expect("plan reads a vertex it does not see")
    }
}

/// Builds a strategy from `plan(v, view)`, where the view exposes exactly `N⁺(v)`.
pub(crate) fn strategy_from_views(
    game: &Game,
    mut plan: impl FnMut(usize, &View) -> ColorSet,
) -> Result<Strategy> {
    let mut scratch = vec![None; game.len()];
    let plans = (0..game.len())
        .map(|v| {
            let inputs = game.out_neighbors(v).to_vec();
            Plan::from_fn(game, v, |inp| {
                for (&u, &c) in inputs.iter().zip(inp) {
                    scratch[u] = Some(c);
                }
                let s = plan(v, &View { colors: &scratch });
                for &u in &inputs {
                    scratch[u] = None;
                }
                s.clamp(game.guess(v), game.hat(v))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Strategy { plans })
}

pub(crate) fn require_wins(game: &Game, f: &Strategy, what: &str) -> Result<()> {
    f.validate(game)?;
    if !verify_strategy(game, f)?.wins() {
        return Err(Error::Hypothesis(format!("{what} strategy does not win")));
    }
    Ok(())
}

pub(crate) fn fresh_name(game: &Game, base: &str) -> String {
    if game.digraph().index_of(base).is_none() {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| game.digraph().index_of(n).is_none())
        .unwrap()
}

/// Whether `set` induces a complete symmetric subgraph.
pub(crate) fn is_clique(game: &Game, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| game.digraph().has_edge(a, b)))
}

pub(crate) fn names_of(game: &Game, set: &[usize]) -> String {
    set.iter()
        .map(|&v| game.name(v))
        .collect::<Vec<_>>()
        .join(",")
}
