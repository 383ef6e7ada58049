use serde::Serialize;

use super::Construction;
use crate::oracle::decide_winnable;
use crate::outcome::{SearchBudget, Verdict};

/// How far one vertex's hatness can be pushed before the built game stops being winnable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessEntry {
    pub vertex: String,
    pub hat: u32,
    /// Smallest increment `1..=max_step` proved unwinnable, if any.
    pub unwinnable_at: Option<u32>,
    /// Whether some increment exhausted the search budget before a verdict.
    pub undecided: bool,
}

/// Raises each vertex's hatness by `1..=max_step` in turn and asks the oracle. Purely
/// descriptive: nothing is asserted about the result.
pub fn tightness_report(
    c: &Construction,
    max_step: u32,
    budget: &SearchBudget,
) -> Vec<TightnessEntry> {
    (0..c.game.len())
        .map(|v| {
            let hat = c.game.hat(v);
            let mut entry = TightnessEntry {
                vertex: c.game.name(v).to_string(),
                hat,
                unwinnable_at: None,
                undecided: false,
            };
            for step in 1..=max_step {
                let mut g = c.game.clone();
                if g.set_hat(v, hat + step).is_err() {
                    break;
                }
                match decide_winnable(&g, budget).verdict {
                    Verdict::Unwinnable => {
                        entry.unwinnable_at = Some(step);
                        break;
                    }
                    Verdict::Unknown => {
                        entry.undecided = true;
                        break;
                    }
                    Verdict::Winnable => {}
                }
            }
            entry
        })
        .collect()
}
