//! Decision procedures for "the chromatic number exceeds k".
//!
//! Every routine returns a three-valued [`Verdict`] with a replayable
//! certificate. The dispatcher exploits group structure wherever that
//! avoids materializing a doubly-exponential vertex set:
//!
//! * `k = 1`: the claim is just "at least one edge".
//! * `p = 2, k = 2`: the graph is 2-colorable exactly when some parity
//!   functional is identically 1 on the connection set, a linear system
//!   over F_2 in the connection elements only. Failure of the system
//!   yields an odd-length zero-sum relation, which certifies an odd
//!   closed walk.
//! * odd `p`, `k = 2`: any connection element `s` closes the odd cycle
//!   `0, s, 2s, …, (p-1)s`, so the claim holds whenever edges exist.
//! * `k >= 3`: exact backtracking search in DSATUR order over the
//!   materialized graph, bounded by a deterministic node budget, with a
//!   greedy clique bound tried first.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::sets::FiniteSet;
use crate::verify::cayley::{CayleyGraph, ExplicitGraph};
use crate::verify::verdict::{Budget, BudgetSpent, Status, Verdict, Witness};

/// Largest number of colors the backtracking search supports; saturation
/// sets are stored as one machine word per vertex.
pub const MAX_COLORS: u16 = 60;

/// Proper colorings are embedded in witnesses only up to this many
/// vertices; beyond it the verdict records a summary note instead.
const COLORING_WITNESS_MAX_VERTICES: usize = 1 << 16;

/// Decide whether the chromatic number of `Cay(G, S)` exceeds `k`.
pub fn chromatic_exceeds(g: &CayleyGraph, k: u16, budget: &Budget) -> Result<Verdict> {
    let base = |v: Verdict| -> Verdict {
        v.with_param("p", g.p())
            .with_param("n", g.n())
            .with_param("k", k)
            .with_param("degree", g.degree())
            .with_param("claim", "chromatic_number_exceeds_k")
    };
    let settled = BudgetSpent { nodes: 0, complete: true };
    if k == 0 {
        // Any nonempty vertex set needs at least one color.
        return Ok(base(Verdict::proven().with_witness(Witness::Note {
            text: "vertex set is nonempty".into(),
        }))
        .with_spent(settled));
    }
    if k == 1 {
        return Ok(match g.first_connection() {
            Some(s) => {
                let zero = GroupElement::zero(g.p(), g.n())?;
                base(Verdict::proven())
                    .with_witness(Witness::Edge {
                        a: zero.encode(),
                        b: s.encode(),
                        difference: Some(s.encode()),
                    })
                    .with_spent(settled)
            }
            None => base(Verdict::refuted())
                .with_witness(Witness::Note {
                    text: "edge set is empty, so one color suffices".into(),
                })
                .with_spent(settled),
        });
    }
    if k == 2 {
        if !g.has_edges() {
            return Ok(base(Verdict::refuted())
                .with_witness(Witness::Note {
                    text: "edge set is empty, so one color suffices".into(),
                })
                .with_spent(settled));
        }
        if g.p() == 2 {
            return Ok(base(two_coloring_verdict(g.connection())?));
        }
        // Odd modulus: s has additive order p, giving an odd cycle.
        let s = g.first_connection().expect("edges exist");
        let mut vertices = Vec::with_capacity(g.p() as usize);
        let mut acc = GroupElement::zero(g.p(), g.n())?;
        for _ in 0..g.p() {
            vertices.push(acc.encode());
            acc = acc.add(&s)?;
        }
        return Ok(base(Verdict::proven())
            .with_witness(Witness::OddCycle { vertices })
            .with_spent(BudgetSpent { nodes: g.p() as u64, complete: true }));
    }
    // k >= 3: no implicit shortcut; materialize under the vertex cap.
    match g.to_explicit(budget) {
        Ok(e) => Ok(base(chromatic_exceeds_explicit(&e, k, budget)?)),
        Err(Error::CapExceeded { order, cap }) => {
            Ok(base(Verdict::inconclusive()).with_witness(Witness::Note {
                text: format!(
                    "graph has {order} vertices, above the materialization cap {cap}"
                ),
            }))
        }
        Err(e) => Err(e),
    }
}

/// Decide whether the chromatic number of an explicit graph exceeds `k`.
pub fn chromatic_exceeds_explicit(
    g: &ExplicitGraph,
    k: u16,
    budget: &Budget,
) -> Result<Verdict> {
    let base = |v: Verdict| -> Verdict {
        v.with_param("vertices", g.vertex_count() as u64)
            .with_param("edges", g.edge_count())
            .with_param("k", k)
            .with_param("claim", "chromatic_number_exceeds_k")
    };
    let settled = BudgetSpent { nodes: 0, complete: true };
    if k == 0 {
        return Ok(if g.vertex_count() > 0 {
            base(Verdict::proven())
                .with_witness(Witness::Note { text: "vertex set is nonempty".into() })
                .with_spent(settled)
        } else {
            base(Verdict::refuted())
                .with_witness(Witness::Note { text: "empty graph needs no colors".into() })
                .with_spent(settled)
        });
    }
    if k == 1 {
        return Ok(match g.first_edge() {
            Some((a, b)) => base(Verdict::proven())
                .with_witness(Witness::Edge {
                    a: g.label(a).to_string(),
                    b: g.label(b).to_string(),
                    difference: None,
                })
                .with_spent(settled),
            None => base(Verdict::refuted())
                .with_witness(Witness::Note {
                    text: "edge set is empty, so one color suffices".into(),
                })
                .with_spent(settled),
        });
    }
    if k == 2 {
        return Ok(base(bipartite_verdict(g)));
    }
    if k > MAX_COLORS {
        return Err(Error::InvalidParameter(format!(
            "backtracking search supports at most {MAX_COLORS} colors, got {k}"
        )));
    }
    // Cheap lower bound first: a clique of size k+1 settles the claim.
    let clique = greedy_clique(g);
    if clique.len() as u16 > k {
        let vertices = clique.iter().map(|&v| g.label(v).to_string()).collect();
        return Ok(base(Verdict::proven())
            .with_witness(Witness::Clique { vertices })
            .with_spent(BudgetSpent { nodes: g.vertex_count() as u64, complete: true }));
    }
    let mut search = DsaturSearch::new(g, k, budget.max_nodes);
    let outcome = search.run();
    let spent = BudgetSpent {
        nodes: search.nodes,
        complete: !matches!(outcome, SearchOutcome::BudgetExhausted),
    };
    Ok(match outcome {
        SearchOutcome::Found(assignment) => {
            let witness = if g.vertex_count() <= COLORING_WITNESS_MAX_VERTICES {
                Witness::ProperColoring { colors: k, assignment }
            } else {
                Witness::Note {
                    text: format!(
                        "proper {k}-coloring found (omitted: {} vertices)",
                        g.vertex_count()
                    ),
                }
            };
            base(Verdict::refuted()).with_witness(witness).with_spent(spent)
        }
        SearchOutcome::Exhausted => base(Verdict::proven())
            .with_witness(Witness::Note {
                text: format!(
                    "exhaustive search: no proper {k}-coloring exists \
                     ({} nodes expanded)",
                    spent.nodes
                ),
            })
            .with_spent(spent),
        SearchOutcome::BudgetExhausted => base(Verdict::inconclusive())
            .with_witness(Witness::Note {
                text: format!("node budget {} exhausted", budget.max_nodes),
            })
            .with_spent(spent),
    })
}

/// Verify a verdict's certificate against the graph it claims to describe.
/// Returns an error when the witness does not check out.
pub fn replay_explicit_witness(g: &ExplicitGraph, verdict: &Verdict) -> Result<()> {
    let find = |label: &str| -> Result<u32> {
        (0..g.vertex_count() as u32)
            .find(|&v| g.label(v) == label)
            .ok_or_else(|| Error::Parse(format!("unknown vertex {label:?}")))
    };
    match (&verdict.status, &verdict.witness) {
        (Status::Proven, Some(Witness::OddCycle { vertices })) => {
            if vertices.len() % 2 == 0 || vertices.len() < 3 {
                return Err(Error::Parse("odd cycle has even length".into()));
            }
            let ids: Vec<u32> =
                vertices.iter().map(|l| find(l)).collect::<Result<_>>()?;
            for w in 0..ids.len() {
                let a = ids[w];
                let b = ids[(w + 1) % ids.len()];
                if !g.has_edge(a, b) {
                    return Err(Error::Parse(format!("cycle edge {w} missing")));
                }
            }
            Ok(())
        }
        (Status::Proven, Some(Witness::Clique { vertices })) => {
            let ids: Vec<u32> =
                vertices.iter().map(|l| find(l)).collect::<Result<_>>()?;
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    if !g.has_edge(ids[i], ids[j]) {
                        return Err(Error::Parse("clique pair not adjacent".into()));
                    }
                }
            }
            Ok(())
        }
        (Status::Refuted, Some(Witness::ProperColoring { colors, assignment })) => {
            if assignment.len() != g.vertex_count() {
                return Err(Error::Parse("coloring length mismatch".into()));
            }
            for (v, &c) in assignment.iter().enumerate() {
                if c >= *colors {
                    return Err(Error::Parse("color out of range".into()));
                }
                for &w in g.neighbors(v as u32) {
                    if assignment[w as usize] == c {
                        return Err(Error::Parse("monochromatic edge".into()));
                    }
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// Parity functionals over F_2
// ---------------------------------------------------------------------------

/// Outcome of the F_2 system `phi(s) = 1` for all `s` in the connection set.
enum F2Outcome {
    /// Cell indices where the functional has coefficient 1.
    Functional(Vec<u64>),
    /// Positions (in canonical iteration order) of an odd-size subset of
    /// the connection set summing to zero.
    OddRelation(Vec<u64>),
}

fn two_coloring_verdict(conn: &FiniteSet) -> Result<Verdict> {
    let rows = conn.cardinality();
    match solve_parity_system(conn)? {
        F2Outcome::Functional(support) => {
            Ok(Verdict::refuted()
                .with_witness(Witness::LinearFunctional { support })
                .with_spent(BudgetSpent { nodes: rows, complete: true }))
        }
        F2Outcome::OddRelation(positions) => {
            let want: std::collections::BTreeSet<u64> = positions.iter().copied().collect();
            let mut members = Vec::with_capacity(want.len());
            for (pos, e) in conn.iter_elements().enumerate() {
                if want.contains(&(pos as u64)) {
                    members.push(e.encode());
                }
            }
            Ok(Verdict::proven()
                .with_witness(Witness::OddRelation { members })
                .with_spent(BudgetSpent { nodes: rows, complete: true }))
        }
    }
}

/// Incremental Gaussian elimination over F_2, tracking which original rows
/// combine into each basis row so an inconsistency yields its certificate.
fn solve_parity_system(conn: &FiniteSet) -> Result<F2Outcome> {
    if conn.p() != 2 {
        return Err(Error::InvalidParameter(
            "parity functionals require modulus 2".into(),
        ));
    }
    let cells = 1u64 << conn.n();
    struct BasisRow {
        row: BitVec,
        combo: Vec<u64>,
        pivot: u64,
    }
    let mut basis: Vec<BasisRow> = Vec::new();
    for (pos, e) in conn.iter_elements().enumerate() {
        let mut row = BitVec::from_fn(cells, |j| e.coeff(j) == 1);
        let mut combo = vec![pos as u64];
        loop {
            let first_one = row.iter_ones().next();
            match first_one {
                None => {
                    if combo.len() % 2 == 1 {
                        return Ok(F2Outcome::OddRelation(combo));
                    }
                    break; // even-size redundancy; discard
                }
                Some(pivot) => {
                    if let Some(b) = basis.iter().find(|b| b.pivot == pivot) {
                        row.xor_assign(&b.row);
                        combo = symmetric_difference(&combo, &b.combo);
                    } else {
                        basis.push(BasisRow { row, combo, pivot });
                        break;
                    }
                }
            }
        }
    }
    // Consistent: back-substitute with free variables set to zero. Rows are
    // forward-reduced, so every non-pivot set bit is strictly above the
    // pivot; solving in descending pivot order sees only settled bits.
    basis.sort_by(|a, b| b.pivot.cmp(&a.pivot));
    let mut x = BitVec::zeros(cells);
    for b in &basis {
        let rhs = (b.combo.len() % 2) as u8; // every original row wants 1
        let mut acc = 0u8;
        for j in b.row.iter_ones() {
            if j != b.pivot && x.get(j) {
                acc ^= 1;
            }
        }
        x.set(b.pivot, acc != rhs);
    }
    Ok(F2Outcome::Functional(x.iter_ones().collect()))
}

fn symmetric_difference(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Evaluate a parity functional (by support cells) on an element.
pub fn functional_value(support: &[u64], g: &GroupElement) -> u8 {
    let mut acc = 0u8;
    for &j in support {
        acc ^= g.coeff(j) & 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Bipartiteness by search
// ---------------------------------------------------------------------------

fn bipartite_verdict(g: &ExplicitGraph) -> Verdict {
    let nv = g.vertex_count();
    let mut color: Vec<i8> = vec![-1; nv];
    let mut parent: Vec<u32> = vec![u32::MAX; nv];
    let mut nodes = 0u64;
    for root in 0..nv as u32 {
        if color[root as usize] >= 0 {
            continue;
        }
        color[root as usize] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            nodes += 1;
            for &w in g.neighbors(v) {
                if color[w as usize] < 0 {
                    color[w as usize] = 1 - color[v as usize];
                    parent[w as usize] = v;
                    queue.push_back(w);
                } else if color[w as usize] == color[v as usize] {
                    let cycle = extract_odd_cycle(g, &parent, v, w);
                    return Verdict::proven()
                        .with_witness(Witness::OddCycle {
                            vertices: cycle
                                .into_iter()
                                .map(|u| g.label(u).to_string())
                                .collect(),
                        })
                        .with_spent(BudgetSpent { nodes, complete: true });
                }
            }
        }
    }
    let witness = if nv <= COLORING_WITNESS_MAX_VERTICES {
        Witness::ProperColoring {
            colors: 2,
            assignment: color.iter().map(|&c| c.max(0) as u16).collect(),
        }
    } else {
        Witness::Note { text: format!("bipartition found over {nv} vertices") }
    };
    Verdict::refuted()
        .with_witness(witness)
        .with_spent(BudgetSpent { nodes, complete: true })
}

/// Both endpoints got the same BFS color, so their tree paths to the root
/// have equal parity and the closing edge makes the cycle odd.
fn extract_odd_cycle(g: &ExplicitGraph, parent: &[u32], v: u32, w: u32) -> Vec<u32> {
    let path_to_root = |mut u: u32| -> Vec<u32> {
        let mut path = vec![u];
        while parent[u as usize] != u32::MAX {
            u = parent[u as usize];
            path.push(u);
        }
        path
    };
    let pv = path_to_root(v);
    let pw = path_to_root(w);
    // Trim the shared tail above the lowest common ancestor.
    let mut shared = 0;
    while shared < pv.len()
        && shared < pw.len()
        && pv[pv.len() - 1 - shared] == pw[pw.len() - 1 - shared]
    {
        shared += 1;
    }
    // v ... ancestor (included once), then down the other branch to w; the
    // closing edge w-v is the non-tree edge that triggered extraction.
    let mut cycle: Vec<u32> = pv[..pv.len() - shared + 1].to_vec();
    cycle.extend(pw[..pw.len() - shared].iter().rev());
    debug_assert_eq!(cycle.len() % 2, 1);
    debug_assert!(g.has_edge(v, w));
    cycle
}

// ---------------------------------------------------------------------------
// Exact search for k >= 3
// ---------------------------------------------------------------------------

/// Deterministic greedy clique: grow from each high-degree seed in order.
pub fn greedy_clique(g: &ExplicitGraph) -> Vec<u32> {
    let nv = g.vertex_count();
    let mut order: Vec<u32> = (0..nv as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let seeds = order.iter().take(32).copied().collect::<Vec<_>>();
    let mut best: Vec<u32> = Vec::new();
    for seed in seeds {
        let mut clique = vec![seed];
        for &v in &order {
            if v == seed {
                continue;
            }
            if clique.iter().all(|&c| g.has_edge(v, c)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

enum SearchOutcome {
    Found(Vec<u16>),
    Exhausted,
    BudgetExhausted,
}

/// Backtracking k-coloring in dynamic saturation order. Node budget counts
/// color assignments, so runs are reproducible across machines.
struct DsaturSearch<'a> {
    g: &'a ExplicitGraph,
    k: u16,
    nodes: u64,
    max_nodes: u64,
    colors: Vec<u16>,
    sat: Vec<u64>,
    uncolored: usize,
}

const UNCOLORED: u16 = u16::MAX;

impl<'a> DsaturSearch<'a> {
    fn new(g: &'a ExplicitGraph, k: u16, max_nodes: u64) -> Self {
        let nv = g.vertex_count();
        DsaturSearch {
            g,
            k,
            nodes: 0,
            max_nodes,
            colors: vec![UNCOLORED; nv],
            sat: vec![0; nv],
            uncolored: nv,
        }
    }

    fn run(&mut self) -> SearchOutcome {
        if self.uncolored == 0 {
            return SearchOutcome::Found(Vec::new());
        }
        match self.go(0) {
            Go::Found => SearchOutcome::Found(std::mem::take(&mut self.colors)),
            Go::Exhausted => SearchOutcome::Exhausted,
            Go::Budget => SearchOutcome::BudgetExhausted,
        }
    }

    fn pick_vertex(&self) -> u32 {
        let mut best: Option<(u32, u32, u32)> = None; // (sat, degree, v)
        for v in 0..self.g.vertex_count() as u32 {
            if self.colors[v as usize] != UNCOLORED {
                continue;
            }
            let key = (
                self.sat[v as usize].count_ones(),
                self.g.degree(v) as u32,
                v,
            );
            let better = match best {
                None => true,
                Some((s, d, bv)) => {
                    (key.0, key.1, std::cmp::Reverse(key.2))
                        > (s, d, std::cmp::Reverse(bv))
                }
            };
            if better {
                best = Some(key);
            }
        }
        best.expect("uncolored vertex exists").2
    }

    fn go(&mut self, max_used: u16) -> Go {
        let v = self.pick_vertex();
        // Symmetry breaking: with max_used colors in play, any fresh color
        // is equivalent to color max_used up to renaming.
        let limit = self.k.min(max_used + 1);
        for c in 0..limit {
            if self.sat[v as usize] >> c & 1 == 1 {
                continue;
            }
            if self.nodes >= self.max_nodes {
                return Go::Budget;
            }
            self.nodes += 1;
            self.colors[v as usize] = c;
            self.uncolored -= 1;
            let mut touched: Vec<u32> = Vec::new();
            for &w in self.g.neighbors(v) {
                if self.colors[w as usize] == UNCOLORED
                    && self.sat[w as usize] >> c & 1 == 0
                {
                    self.sat[w as usize] |= 1 << c;
                    touched.push(w);
                }
            }
            if self.uncolored == 0 {
                return Go::Found;
            }
            match self.go(max_used.max(c + 1)) {
                Go::Found => return Go::Found,
                Go::Budget => return Go::Budget,
                Go::Exhausted => {}
            }
            for w in touched {
                self.sat[w as usize] &= !(1 << c);
            }
            self.colors[v as usize] = UNCOLORED;
            self.uncolored += 1;
        }
        Go::Exhausted
    }
}

enum Go {
    Found,
    Exhausted,
    Budget,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{materialize, HammingBallSpec, SetPredicate};
    use crate::DEFAULT_ENUMERATION_CAP as CAP;

    fn ball_cayley(p: u8, n: u32, k: u64) -> CayleyGraph {
        let s = materialize(
            &SetPredicate::from_ball(&HammingBallSpec::origin(p, n, k).unwrap()),
            CAP,
        )
        .unwrap();
        CayleyGraph::new(&s).unwrap()
    }

    fn cycle_graph(len: u32) -> ExplicitGraph {
        ExplicitGraph::from_edges(
            len as usize,
            (0..len).map(|v| format!("v{v}")).collect(),
            (0..len).map(|v| (v, (v + 1) % len)),
        )
        .unwrap()
    }

    fn complete_graph(nv: u32) -> ExplicitGraph {
        let mut edges = Vec::new();
        for a in 0..nv {
            for b in a + 1..nv {
                edges.push((a, b));
            }
        }
        ExplicitGraph::from_edges(
            nv as usize,
            (0..nv).map(|v| format!("v{v}")).collect(),
            edges,
        )
        .unwrap()
    }

    #[test]
    fn hypercube_is_bipartite() {
        // weight-1 connection set in G_2^(2) gives the 4-cube: bipartite,
        // so chromatic number exceeds 2 is refuted by a parity functional.
        let g = ball_cayley(2, 2, 1);
        let v = chromatic_exceeds(&g, 2, &Budget::default()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        match v.witness.unwrap() {
            Witness::LinearFunctional { support } => {
                // all four weight-1 elements must pair oddly
                for s in g.connection().iter_elements() {
                    assert_eq!(functional_value(&support, &s), 1);
                }
            }
            w => panic!("expected functional, got {w:?}"),
        }
    }

    #[test]
    fn radius_two_ball_forces_three_colors() {
        // Connections of weight 1 and 2 create triangles: starting from 0,
        // steps e1, e2, e1+e2 close a 3-cycle.
        let g = ball_cayley(2, 2, 2);
        let v = chromatic_exceeds(&g, 2, &Budget::default()).unwrap();
        assert_eq!(v.status, Status::Proven);
        match v.witness.unwrap() {
            Witness::OddRelation { members } => {
                assert_eq!(members.len() % 2, 1);
                let mut acc = GroupElement::zero(2, 2).unwrap();
                for m in &members {
                    acc = acc.add(&m.parse().unwrap()).unwrap();
                }
                assert_eq!(acc.weight(), 0, "relation must sum to zero");
            }
            w => panic!("expected odd relation, got {w:?}"),
        }
    }

    #[test]
    fn odd_modulus_shortcut() {
        let g = ball_cayley(3, 1, 1);
        let v = chromatic_exceeds(&g, 2, &Budget::default()).unwrap();
        assert_eq!(v.status, Status::Proven);
        match v.witness.unwrap() {
            Witness::OddCycle { vertices } => {
                assert_eq!(vertices.len(), 3);
                let e = g.to_explicit(&Budget::default()).unwrap();
                let verdict = Verdict::proven().with_witness(Witness::OddCycle {
                    vertices,
                });
                replay_explicit_witness(&e, &verdict).unwrap();
            }
            w => panic!("expected odd cycle, got {w:?}"),
        }
    }

    #[test]
    fn k1_edge_detection() {
        let g = ball_cayley(2, 1, 1);
        let v = chromatic_exceeds(&g, 1, &Budget::default()).unwrap();
        assert_eq!(v.status, Status::Proven);
        assert!(matches!(v.witness, Some(Witness::Edge { .. })));
        // empty connection set
        let empty = FiniteSet::empty(2, 1, CAP).unwrap();
        let g0 = CayleyGraph::new(&empty).unwrap();
        let v0 = chromatic_exceeds(&g0, 1, &Budget::default()).unwrap();
        assert_eq!(v0.status, Status::Refuted);
    }

    #[test]
    fn explicit_cycles() {
        let odd = cycle_graph(7);
        let v = chromatic_exceeds_explicit(&odd, 2, &Budget::default()).unwrap();
        assert_eq!(v.status, Status::Proven);
        replay_explicit_witness(&odd, &v).unwrap();
        let even = cycle_graph(8);
        let v2 = chromatic_exceeds_explicit(&even, 2, &Budget::default()).unwrap();
        assert_eq!(v2.status, Status::Refuted);
        replay_explicit_witness(&even, &v2).unwrap();
    }

    #[test]
    fn complete_graph_chromatic_number() {
        let k5 = complete_graph(5);
        // clique bound fires
        let v = chromatic_exceeds_explicit(&k5, 4, &Budget::default()).unwrap();
        assert_eq!(v.status, Status::Proven);
        assert!(matches!(v.witness, Some(Witness::Clique { .. })));
        replay_explicit_witness(&k5, &v).unwrap();
        // 5 colors do suffice
        let v2 = chromatic_exceeds_explicit(&k5, 5, &Budget::default()).unwrap();
        assert_eq!(v2.status, Status::Refuted);
        replay_explicit_witness(&k5, &v2).unwrap();
    }

    #[test]
    fn odd_cycle_needs_three_colors_via_search() {
        // C_9 has no triangle, so the clique bound stays at 2 and the
        // verdict must come from exhaustive search.
        let c9 = cycle_graph(9);
        let v = chromatic_exceeds_explicit(&c9, 3, &Budget::default()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        replay_explicit_witness(&c9, &v).unwrap();
        let grotzsch = mycielski(&cycle_graph(5));
        // Mycielski construction of C_5: triangle-free, chromatic number 4.
        let v3 = chromatic_exceeds_explicit(&grotzsch, 3, &Budget::default()).unwrap();
        assert_eq!(v3.status, Status::Proven);
        let v4 = chromatic_exceeds_explicit(&grotzsch, 4, &Budget::default()).unwrap();
        assert_eq!(v4.status, Status::Refuted);
        replay_explicit_witness(&grotzsch, &v4).unwrap();
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let grotzsch = mycielski(&cycle_graph(5));
        let tiny = Budget { max_nodes: 3, ..Budget::default() };
        let v = chromatic_exceeds_explicit(&grotzsch, 3, &tiny).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(!v.budget_spent.complete);
    }

    #[test]
    fn search_is_deterministic() {
        let g = ball_cayley(2, 2, 2);
        let a = chromatic_exceeds(&g, 4, &Budget::default()).unwrap();
        let b = chromatic_exceeds(&g, 4, &Budget::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.budget_spent.nodes, b.budget_spent.nodes);
    }

    /// Mycielski construction: preserves triangle-freeness, bumps the
    /// chromatic number by one.
    fn mycielski(g: &ExplicitGraph) -> ExplicitGraph {
        let n = g.vertex_count() as u32;
        let mut edges = Vec::new();
        for v in 0..n {
            for &w in g.neighbors(v) {
                if w > v {
                    edges.push((v, w));
                }
                edges.push((v, n + w)); // shadow copies
            }
            edges.push((n + v, 2 * n)); // apex
        }
        ExplicitGraph::from_edges(
            2 * n as usize + 1,
            (0..2 * n + 1).map(|v| format!("m{v}")).collect(),
            edges,
        )
        .unwrap()
    }
}
