//! Small max-flow and bipartite matching routines.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    capacity: u64,
    flow: u64,
}

/// A directed flow network with integer capacities, solved by shortest augmenting paths.
#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.out.len() - 1
    }

    /// Adds an arc and returns its id (the paired residual arc gets `id ^ 1`).
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            capacity,
            flow: 0,
        });
        self.arcs.push(Arc {
            to: from,
            capacity: 0,
            flow: 0,
        });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    pub fn flow(&self, arc: usize) -> u64 {
        self.arcs[arc].flow
    }

    fn residual(&self, arc: usize) -> u64 {
        let a = &self.arcs[arc];
        if arc.is_multiple_of(2) {
            a.capacity - a.flow
        } else {
            self.arcs[arc ^ 1].flow
        }
    }

    fn push(&mut self, arc: usize, amount: u64) {
        if arc.is_multiple_of(2) {
            self.arcs[arc].flow += amount;
        } else {
            self.arcs[arc ^ 1].flow -= amount;
        }
    }

    /// Maximum flow value from `source` to `sink`, keeping any flow already present.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; self.out.len()];
            let mut queue = VecDeque::from([source]);
            let mut reached = vec![false; self.out.len()];
            reached[source] = true;
            while let Some(v) = queue.pop_front() {
                if v == sink {
                    break;
                }
                for &arc in &self.out[v] {
                    let to = self.arcs[arc].to;
                    if !reached[to] && self.residual(arc) > 0 {
                        reached[to] = true;
                        via[to] = arc;
                        queue.push_back(to);
                    }
                }
            }
            if !reached[sink] {
                return total;
            }
            let mut amount = u64::MAX;
            let mut v = sink;
            while v != source {
                amount = amount.min(self.residual(via[v]));
                v = self.arcs[via[v] ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let arc = via[v];
                self.push(arc, amount);
                v = self.arcs[arc ^ 1].to;
            }
            total += amount;
        }
    }
}

/// Maximum matching of a bipartite graph given as left adjacency lists over right ids
/// `0..right_count`. Returns, per left vertex, its matched right vertex.
///
/// Augmenting paths are tried left vertex by left vertex, neighbors in list order.
pub fn bipartite_matching(adjacency: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let mut match_left = vec![None; adjacency.len()];
    let mut match_right: Vec<Option<usize>> = vec![None; right_count];
    for l in 0..adjacency.len() {
        let mut seen = vec![false; right_count];
        augment(l, adjacency, &mut seen, &mut match_left, &mut match_right);
    }
    match_left
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &r in &adjacency[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(other) => augment(other, adjacency, seen, match_left, match_right),
        };
        if free {
            match_left[l] = Some(r);
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_flow() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 3);
        net.add_arc(0, 2, 2);
        let mid = net.add_arc(1, 2, 5);
        net.add_arc(1, 3, 2);
        net.add_arc(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 5);
        assert_eq!(net.flow(mid), 1);
    }

    #[test]
    fn matching_needs_augmentation() {
        let adjacency = vec![vec![0, 1], vec![0]];
        assert_eq!(bipartite_matching(&adjacency, 2), vec![Some(1), Some(0)]);
        let starved = vec![vec![0], vec![0]];
        assert_eq!(bipartite_matching(&starved, 1), vec![Some(0), None]);
    }
}
