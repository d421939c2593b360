use std::collections::BTreeSet;

use rayon::prelude::*;

use super::graph::{class_info, is_connected, ClassInfo, LabeledGraph};
use super::GraphError;

/// Default bound on `r + n` for enumeration.
pub const DEFAULT_VERTEX_BUDGET: usize = 10;

/// Filters applied to enumerated classes.  All flags default to off.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub no_loops: bool,
    pub connected: bool,
    /// Every vertex has valency at least this.
    pub min_valence: Option<usize>,
    /// Every neutral vertex has valency at least this.
    pub neutral_min_valence: Option<usize>,
    /// Every vertex has exactly this valency.
    pub exact_valence: Option<usize>,
    /// No connected component consists of neutral vertices only.
    pub no_neutral_component: bool,
    /// Some vertex has valency at least 3.
    pub some_trivalent: bool,
}

impl Constraints {
    pub fn accepts(&self, g: &LabeledGraph) -> bool {
        if self.no_loops && g.has_loops() {
            return false;
        }
        let val = g.valences();
        if let Some(k) = self.min_valence {
            if val.iter().any(|&x| x < k) {
                return false;
            }
        }
        if let Some(k) = self.neutral_min_valence {
            if val[..g.r_neutral()].iter().any(|&x| x < k) {
                return false;
            }
        }
        if let Some(k) = self.exact_valence {
            if val.iter().any(|&x| x != k) {
                return false;
            }
        }
        if self.some_trivalent && !val.iter().any(|&x| x >= 3) {
            return false;
        }
        if self.connected && !is_connected(g) {
            return false;
        }
        if self.no_neutral_component
            && super::graph::connected_components(g).iter().any(|c| c.iter().all(|&v| v <= g.r_neutral()))
        {
            return false;
        }
        true
    }
}

/// Every neutral-relabeling class of graphs with the given profile and no
/// repeated edges, odd classes included, sorted by canonical key.
pub fn enumerate_classes(r: usize, n: usize, e: usize, no_loops: bool, vertex_budget: usize) -> Result<Vec<ClassInfo>, GraphError> {
    let nv = r + n;
    if nv > vertex_budget {
        return Err(GraphError::BudgetExceeded { vertices: nv, budget: vertex_budget });
    }
    if nv == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut pool = Vec::new();
    for a in 1..=nv {
        for b in a..=nv {
            if a != b || !no_loops {
                pool.push((a, b));
            }
        }
    }
    if e > pool.len() {
        return Ok(Vec::new());
    }
    let mut level: BTreeSet<LabeledGraph> = BTreeSet::new();
    level.insert(LabeledGraph::edgeless(r, n));
    for _ in 0..e {
        let current: Vec<LabeledGraph> = level.into_iter().collect();
        let next: Vec<Vec<LabeledGraph>> = current
            .par_iter()
            .map(|g| {
                pool.iter()
                    .filter(|&&(a, b)| !g.edges().contains(&(a as u8, b as u8)))
                    .map(|&(a, b)| class_info(&g.with_edge(a, b)).graph)
                    .collect()
            })
            .collect();
        level = next.into_iter().flatten().collect();
    }
    let all: Vec<LabeledGraph> = level.into_iter().collect();
    Ok(all.par_iter().map(class_info).collect())
}

/// One canonical representative per nonvanishing class satisfying the
/// constraints, sorted by canonical key.
pub fn enumerate_graphs(r: usize, n: usize, e: usize, constraints: &Constraints) -> Result<Vec<LabeledGraph>, GraphError> {
    enumerate_graphs_with_budget(r, n, e, constraints, DEFAULT_VERTEX_BUDGET)
}

pub fn enumerate_graphs_with_budget(
    r: usize,
    n: usize,
    e: usize,
    constraints: &Constraints,
    vertex_budget: usize,
) -> Result<Vec<LabeledGraph>, GraphError> {
    Ok(enumerate_classes(r, n, e, constraints.no_loops, vertex_budget)?
        .into_iter()
        .filter(|c| !c.odd && constraints.accepts(&c.graph))
        .map(|c| c.graph)
        .collect())
}
