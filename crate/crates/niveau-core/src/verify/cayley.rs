//! Cayley graphs over `G_p^(n)` and their explicit (adjacency-list) form.
//!
//! The graph `Cay(G, S)` has every group element as a vertex, with `g ~ h`
//! exactly when `g - h` lies in the symmetrized connection set
//! `(S ∪ -S) \ {0}`. Construction symmetrizes eagerly so callers may pass
//! any finite set.

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::sets::FiniteSet;
use crate::verify::Budget;

/// A Cayley graph held implicitly: the vertex set is the whole group and
/// adjacency is membership of the difference in the connection set.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    p: u8,
    n: u32,
    connection: FiniteSet,
}

impl CayleyGraph {
    /// Build from any finite set; the stored connection set is
    /// `(S ∪ -S) \ {0}`.
    pub fn new(s: &FiniteSet) -> Result<CayleyGraph> {
        let mut connection = s.union(&s.negation()?)?;
        connection.remove_index(0);
        Ok(CayleyGraph { p: s.p(), n: s.n(), connection })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The symmetrized, zero-free connection set.
    pub fn connection(&self) -> &FiniteSet {
        &self.connection
    }

    /// Vertex count, i.e. the group order.
    pub fn vertex_count(&self) -> u64 {
        self.connection.order()
    }

    /// Degree of every vertex (the graph is vertex-transitive).
    pub fn degree(&self) -> u64 {
        self.connection.cardinality()
    }

    pub fn has_edges(&self) -> bool {
        !self.connection.is_empty()
    }

    /// Some element of the connection set, if any (least canonical index).
    pub fn first_connection(&self) -> Option<GroupElement> {
        self.connection.iter_indices().next().map(|i| self.connection.element(i))
    }

    /// Materialize adjacency lists. Refuses graphs larger than the budget's
    /// vertex cap: the group order grows doubly exponentially in the scale,
    /// so implicit checks should be preferred whenever they apply.
    pub fn to_explicit(&self, budget: &Budget) -> Result<ExplicitGraph> {
        let order = self.vertex_count();
        if order > budget.max_vertices {
            return Err(Error::CapExceeded {
                order: order.to_string(),
                cap: budget.max_vertices,
            });
        }
        let nv = order as usize;
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nv];
        let conn: Vec<GroupElement> = self.connection.iter_elements().collect();
        if self.p == 2 {
            // Differences are XORs of canonical indices.
            let conn_idx: Vec<u64> =
                conn.iter().map(|s| s.canonical_index().unwrap()).collect();
            for v in 0..order {
                let out = &mut adj[v as usize];
                out.reserve(conn_idx.len());
                for &s in &conn_idx {
                    out.push((v ^ s) as u32);
                }
                out.sort_unstable();
            }
        } else {
            for v in 0..order {
                let g = GroupElement::from_index(self.p, self.n, v)?;
                let out = &mut adj[v as usize];
                out.reserve(conn.len());
                for s in &conn {
                    out.push(g.add(s)?.canonical_index()? as u32);
                }
                out.sort_unstable();
            }
        }
        let labels = (0..order)
            .map(|v| {
                GroupElement::from_index(self.p, self.n, v).map(|g| g.encode())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExplicitGraph { labels, adj })
    }
}

/// A plain undirected graph with string vertex labels; adjacency lists are
/// sorted, so construction order does not leak into search order.
#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    labels: Vec<String>,
    adj: Vec<Vec<u32>>,
}

impl ExplicitGraph {
    /// Build from an edge list over `nv` vertices labelled by index.
    pub fn from_edges(
        nv: usize,
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<ExplicitGraph> {
        if labels.len() != nv {
            return Err(Error::InvalidParameter(format!(
                "expected {nv} labels, got {}",
                labels.len()
            )));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nv];
        for (a, b) in edges {
            if a as usize >= nv || b as usize >= nv {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a},{b}) out of range for {nv} vertices"
                )));
            }
            if a == b {
                continue;
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(ExplicitGraph { labels, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.adj.iter().map(|l| l.len() as u64).sum::<u64>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// First edge in vertex order, if the graph has one.
    pub fn first_edge(&self) -> Option<(u32, u32)> {
        for (v, list) in self.adj.iter().enumerate() {
            if let Some(&w) = list.first() {
                return Some((v as u32, w));
            }
        }
        None
    }
}
