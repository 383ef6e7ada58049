use std::fmt;

use serde::{Deserialize, Serialize};

use crate::game::Strategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Winnable,
    Unwinnable,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Winnable => "winnable",
            Verdict::Unwinnable => "unwinnable",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Every rule a trace may cite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    ExhaustiveSearch,
    RatioSum,
    BudgetExceeded,
    RedundantVision,
    HighRatio,
    LyonicDeletion,
    CzechLeaf,
    Latvian2Leaf,
    HatnessOneWin,
    SingletonComponent,
    StrongComponents,
    NoDirectedCycle,
    SingleVertex,
    CliqueSum,
    DirectedCycleLatvian,
    DirectedCyclePolish,
    DirectedCycleHalf,
    DirectedCycleArc,
    DirectedTriangle,
    TreeDeletion,
    CycleHighHatness,
    CycleTriangle,
    CycleSquare,
    CycleTwoToFour,
    StarPacking,
    BipartiteFamily,
    LocalLemma,
    Shearer,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::ExhaustiveSearch => "exhaustive-search",
            Rule::RatioSum => "ratio-sum",
            Rule::BudgetExceeded => "budget-exceeded",
            Rule::RedundantVision => "redundant-vision",
            Rule::HighRatio => "high-ratio",
            Rule::LyonicDeletion => "lyonic-deletion",
            Rule::CzechLeaf => "czech-leaf",
            Rule::Latvian2Leaf => "latvian-2-leaf",
            Rule::HatnessOneWin => "hatness-one-win",
            Rule::SingletonComponent => "singleton-component",
            Rule::StrongComponents => "strong-components",
            Rule::NoDirectedCycle => "no-directed-cycle",
            Rule::SingleVertex => "single-vertex",
            Rule::CliqueSum => "clique-sum",
            Rule::DirectedCycleLatvian => "directed-cycle-latvian",
            Rule::DirectedCyclePolish => "directed-cycle-polish",
            Rule::DirectedCycleHalf => "directed-cycle-half",
            Rule::DirectedCycleArc => "directed-cycle-arc",
            Rule::DirectedTriangle => "directed-triangle",
            Rule::TreeDeletion => "tree-deletion",
            Rule::CycleHighHatness => "cycle-high-hatness",
            Rule::CycleTriangle => "cycle-triangle",
            Rule::CycleSquare => "cycle-square",
            Rule::CycleTwoToFour => "cycle-two-to-four",
            Rule::StarPacking => "star-packing",
            Rule::BipartiteFamily => "bipartite-family",
            Rule::LocalLemma => "local-lemma",
            Rule::Shearer => "shearer",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub vertices: Vec<String>,
    pub rewrite: Option<String>,
}

impl TraceStep {
    pub fn new(rule: Rule, vertices: Vec<String>) -> Self {
        TraceStep {
            rule,
            vertices,
            rewrite: None,
        }
    }

    pub fn with_rewrite(mut self, rewrite: impl Into<String>) -> Self {
        self.rewrite = Some(rewrite.into());
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub colorings: u64,
    pub millis: u64,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub certificate: Option<Strategy>,
    pub trace: Vec<TraceStep>,
    pub stats: SearchStats,
}

impl Outcome {
    pub fn winnable(certificate: Strategy, trace: Vec<TraceStep>) -> Self {
        Outcome {
            verdict: Verdict::Winnable,
            certificate: Some(certificate),
            trace,
            stats: SearchStats::default(),
        }
    }

    pub fn unwinnable(trace: Vec<TraceStep>) -> Self {
        Outcome {
            verdict: Verdict::Unwinnable,
            certificate: None,
            trace,
            stats: SearchStats::default(),
        }
    }

    pub fn unknown(trace: Vec<TraceStep>) -> Self {
        Outcome {
            verdict: Verdict::Unknown,
            certificate: None,
            trace,
            stats: SearchStats::default(),
        }
    }

    pub fn with_stats(mut self, stats: SearchStats) -> Self {
        self.stats = stats;
        self
    }
}

/// Limits for exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_colorings: u64,
    pub deterministic: bool,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 20_000_000,
            max_colorings: 1 << 22,
            deterministic: true,
            jobs: 1,
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    pub fn parallel(mut self, jobs: usize) -> Self {
        self.deterministic = false;
        self.jobs = jobs;
        self
    }
}
