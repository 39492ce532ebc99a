//! Verdict and witness types shared by every checking routine.
//!
//! A verdict is always one of three states: PROVEN claims carry a
//! certificate that can be replayed cheaply, REFUTED claims carry a
//! counterexample, and INCONCLUSIVE means a search budget ran out before
//! either certificate was found.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Outcome of a verification routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Proven,
    Refuted,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Proven => "PROVEN",
            Status::Refuted => "REFUTED",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

/// Resource limits for search-based checks. Budgets are counted in
/// deterministic units (search-tree nodes, vertices), never wall-clock
/// time, so identical runs spend identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of search nodes a backtracking check may expand.
    pub max_nodes: u64,
    /// Maximum number of vertices a graph may have before the check
    /// refuses to materialize it.
    pub max_vertices: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 20_000_000, max_vertices: 1 << 22 }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, ..Budget::default() }
    }
}

/// How much of the budget a check actually consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BudgetSpent {
    /// Search nodes expanded (deterministic across runs).
    pub nodes: u64,
    /// True when the search ran to completion rather than hitting a cap.
    pub complete: bool,
}

/// A replayable certificate attached to a PROVEN or REFUTED verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A single edge: both endpoints and, for Cayley graphs, their
    /// difference, which must lie in the connection set.
    Edge {
        a: String,
        b: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        difference: Option<String>,
    },
    /// A pair of elements whose difference violates (or witnesses) a
    /// claim about difference sets.
    Pair { a: String, b: String, difference: String },
    /// An explicit proper coloring, one color index per vertex in
    /// canonical vertex order.
    ProperColoring { colors: u16, assignment: Vec<u16> },
    /// A parity functional on F_2^d: vertices are colored by the parity
    /// of a dot product; valid when every connection has odd pairing.
    LinearFunctional { support: Vec<u64> },
    /// A multiset of connection-set elements, listed by index, whose sum
    /// is zero while the list length is odd. Certifies that no parity
    /// 2-coloring exists.
    OddRelation { members: Vec<String> },
    /// An odd closed walk in the graph, listed by vertex encoding.
    /// Certifies non-bipartiteness.
    OddCycle { vertices: Vec<String> },
    /// A clique, listed by vertex encoding. Certifies a lower bound on
    /// the chromatic number.
    Clique { vertices: Vec<String> },
    /// A set (by element encoding) whose difference set avoids a target.
    AvoidingSet { elements: Vec<String> },
    /// Free-form supporting detail for verdicts whose proof is a
    /// computation rather than a small object.
    Note { text: String },
}

/// The complete, serializable outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Input parameters, recorded so the verdict is self-describing.
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub budget_spent: BudgetSpent,
    pub library_version: String,
}

impl Verdict {
    pub fn new(status: Status) -> Self {
        Verdict {
            status,
            witness: None,
            parameters: BTreeMap::new(),
            budget_spent: BudgetSpent::default(),
            library_version: crate::library_version().to_string(),
        }
    }

    pub fn proven() -> Self {
        Verdict::new(Status::Proven)
    }

    pub fn refuted() -> Self {
        Verdict::new(Status::Refuted)
    }

    pub fn inconclusive() -> Self {
        Verdict::new(Status::Inconclusive)
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_spent(mut self, spent: BudgetSpent) -> Self {
        self.budget_spent = spent;
        self
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn is_proven(&self) -> bool {
        self.status == Status::Proven
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serialization_is_screaming() {
        assert_eq!(serde_json::to_string(&Status::Proven).unwrap(), "\"PROVEN\"");
        assert_eq!(
            serde_json::to_string(&Status::Inconclusive).unwrap(),
            "\"INCONCLUSIVE\""
        );
    }

    #[test]
    fn verdict_roundtrip() {
        let v = Verdict::refuted()
            .with_witness(Witness::OddCycle {
                vertices: vec!["2:1:01".into(), "2:1:10".into(), "2:1:11".into()],
            })
            .with_param("p", 2)
            .with_spent(BudgetSpent { nodes: 12, complete: true });
        let s = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(s.contains("\"kind\":\"odd_cycle\""));
    }

    #[test]
    fn deterministic_parameter_order() {
        let v = Verdict::proven().with_param("zeta", 1).with_param("alpha", 2);
        let s = serde_json::to_string(&v).unwrap();
        let alpha = s.find("alpha").unwrap();
        let zeta = s.find("zeta").unwrap();
        assert!(alpha < zeta);
    }
}
