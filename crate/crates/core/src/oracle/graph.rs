use std::collections::HashMap;

use serde::Serialize;

use crate::rewriting::{apply, redexes, Mode, Redex};
use crate::strategy::good_redexes;
use crate::syntax::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_nodes: 50_000, max_depth: 200 }
    }
}

/// The step relation a graph is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Rules(Mode),
    /// Good micro steps only.
    Good,
}

impl From<Mode> for Relation {
    fn from(m: Mode) -> Relation {
        Relation::Rules(m)
    }
}

impl Relation {
    pub fn steps(self, t: &Term) -> Vec<(Redex, Term)> {
        let rs = match self {
            Relation::Rules(m) => redexes(t, m),
            Relation::Good => good_redexes(t),
        };
        rs.into_iter()
            .map(|r| {
                let s = apply(t, &r).expect("fresh redex");
                (r, s)
            })
            .collect()
    }
}

/// Reachable terms up to alpha, breadth-first from the root (node 0).
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    pub nodes: Vec<Term>,
    pub depth: Vec<usize>,
    /// Outgoing edges per node; empty for unexpanded nodes too.
    pub succ: Vec<Vec<(Redex, usize)>>,
    pub relation: Relation,
    pub bounds: Bounds,
    pub truncated: bool,
}

impl ReductionGraph {
    pub fn root(&self) -> &Term {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Nodes without successors.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.succ[i].is_empty()).collect()
    }
}

pub fn build_graph(t: &Term, relation: impl Into<Relation>, bounds: Bounds) -> ReductionGraph {
    let relation = relation.into();
    let root = t.canonical();
    let mut index = HashMap::from([(root.clone(), 0)]);
    let mut g = ReductionGraph {
        nodes: vec![root],
        depth: vec![0],
        succ: vec![Vec::new()],
        relation,
        bounds,
        truncated: false,
    };
    let mut next = 0;
    while next < g.nodes.len() {
        let i = next;
        next += 1;
        let steps = relation.steps(&g.nodes[i]);
        if g.depth[i] >= bounds.max_depth {
            g.truncated |= !steps.is_empty();
            continue;
        }
        for (r, s) in steps {
            let c = s.canonical();
            let j = match index.get(&c) {
                Some(&j) => j,
                None => {
                    if g.nodes.len() >= bounds.max_nodes {
                        g.truncated = true;
                        continue;
                    }
                    let j = g.nodes.len();
                    index.insert(c.clone(), j);
                    g.nodes.push(c);
                    g.depth.push(g.depth[i] + 1);
                    g.succ.push(Vec::new());
                    j
                }
            };
            g.succ[i].push((r, j));
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SnVerdict {
    /// Strongly normalizing; the length of the longest reduction.
    Sn(usize),
    /// A reachable loop: the path from the root to its entry, then the loop.
    Cycle {
        prefix: Vec<Redex>,
        cycle: Vec<Redex>,
    },
    Truncated,
}

impl SnVerdict {
    pub fn is_sn(&self) -> bool {
        matches!(self, SnVerdict::Sn(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    New,
    OnStack,
    Done,
}

/// Longest path lengths from every node, or a cycle found by depth-first search.
fn longest_paths(g: &ReductionGraph) -> Result<Vec<usize>, SnVerdict> {
    let n = g.len();
    let mut mark = vec![Mark::New; n];
    let mut longest = vec![0usize; n];
    // (node, next edge index)
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    mark[0] = Mark::OnStack;
    while let Some(&mut (v, ref mut e)) = stack.last_mut() {
        if let Some((_, w)) = g.succ[v].get(*e) {
            let w = *w;
            *e += 1;
            match mark[w] {
                Mark::New => {
                    mark[w] = Mark::OnStack;
                    stack.push((w, 0));
                }
                Mark::OnStack => {
                    let entry = stack.iter().position(|&(u, _)| u == w).expect("on stack");
                    let edge = |k: usize| {
                        let (u, e) = stack[k];
                        g.succ[u][e - 1].0.clone()
                    };
                    let prefix = (0..entry).map(edge).collect();
                    let cycle = (entry..stack.len()).map(edge).collect();
                    return Err(SnVerdict::Cycle { prefix, cycle });
                }
                Mark::Done => {}
            }
        } else {
            stack.pop();
            mark[v] = Mark::Done;
            longest[v] = g.succ[v].iter().map(|&(_, w)| longest[w] + 1).max().unwrap_or(0);
        }
    }
    Ok(longest)
}

/// Longest path lengths from every node, `None` when the graph has a cycle.
pub(crate) fn longest_paths_pub(g: &ReductionGraph) -> Option<Vec<usize>> {
    longest_paths(g).ok()
}

/// Shortest path lengths to a sink from every node of an acyclic graph.
pub(crate) fn shortest_to_sink(g: &ReductionGraph) -> Vec<usize> {
    let order = topological_order(g);
    let mut shortest = vec![0usize; g.len()];
    for &v in order.iter().rev() {
        shortest[v] = g.succ[v].iter().map(|&(_, w)| shortest[w] + 1).min().unwrap_or(0);
    }
    shortest
}

fn topological_order(g: &ReductionGraph) -> Vec<usize> {
    let mut indeg = vec![0usize; g.len()];
    for es in &g.succ {
        for &(_, w) in es {
            indeg[w] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..g.len()).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(g.len());
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(_, w) in &g.succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    order
}

/// Shortest loop from `v` back to itself, as redexes.
fn shortest_cycle_through(g: &ReductionGraph, v: usize) -> Option<Vec<Redex>> {
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for (k, &(_, w)) in g.succ[u].iter().enumerate() {
            if parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, (u, k));
            if w == v {
                let mut path = Vec::new();
                let mut cur = v;
                loop {
                    let (p, k) = parent[&cur];
                    path.push(g.succ[p][k].0.clone());
                    cur = p;
                    if cur == v {
                        break;
                    }
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Decide strong normalization on the graph; a cycle wins over truncation.
/// A loop through the root is reported in its shortest form.
pub fn sn_of_graph(g: &ReductionGraph) -> SnVerdict {
    match longest_paths(g) {
        Err(cycle) => match shortest_cycle_through(g, 0) {
            Some(c) => SnVerdict::Cycle { prefix: vec![], cycle: c },
            None => cycle,
        },
        Ok(_) if g.truncated => SnVerdict::Truncated,
        Ok(longest) => SnVerdict::Sn(longest[0]),
    }
}

/// Strong normalization within `bounds`. Node budgets grow geometrically
/// up to the bound, so loops are usually found on a small prefix graph.
pub fn check_sn(t: &Term, relation: impl Into<Relation>, bounds: Bounds) -> SnVerdict {
    let relation = relation.into();
    let mut nodes = bounds.max_nodes.min(1000);
    loop {
        let v = sn_of_graph(&build_graph(t, relation, Bounds { max_nodes: nodes, ..bounds }));
        if v != SnVerdict::Truncated || nodes >= bounds.max_nodes {
            return v;
        }
        nodes = (nodes * 8).min(bounds.max_nodes);
    }
}
