use hatgame::{Game, Outcome, SearchStats, TraceStep, Verdict};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// What `solve`, `classify` and `report` emit in JSON mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// SHA-256 of the game in canonical text form.
    pub digest: String,
    pub verdict: Verdict,
    pub certificate_path: Option<String>,
    pub trace: Vec<TraceStep>,
    pub stats: SearchStats,
}

impl Report {
    pub fn new(game: &Game, out: &Outcome, certificate_path: Option<String>) -> Self {
        Report {
            digest: digest(game),
            verdict: out.verdict,
            certificate_path,
            trace: out.trace.clone(),
            stats: out.stats,
        }
    }
}

pub fn digest(game: &Game) -> String {
    let hash = Sha256::digest(hatgame::print_game(game).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn trace_lines(trace: &[TraceStep]) -> String {
    let mut s = String::new();
    for step in trace {
        s.push_str("  ");
        s.push_str(step.rule.name());
        if !step.vertices.is_empty() {
            s.push_str(&format!(" [{}]", step.vertices.join(",")));
        }
        if let Some(r) = &step.rewrite {
            s.push_str(": ");
            s.push_str(r);
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hatgame::{Rule, SearchStats};

    #[test]
    fn json_round_trip() {
        let r = Report {
            digest: "ab".repeat(32),
            verdict: Verdict::Unknown,
            certificate_path: Some("out.strategy".into()),
            trace: vec![
                TraceStep::new(Rule::Latvian2Leaf, vec!["l".into(), "c".into()])
                    .with_rewrite("h(c) <- 3"),
                TraceStep::new(Rule::BudgetExceeded, Vec::new()),
            ],
            stats: SearchStats {
                nodes: 7,
                colorings: 64,
                millis: 3,
            },
        };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), r);
    }
}
