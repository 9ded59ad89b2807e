//! Integer max-flow by shortest augmenting paths (Edmonds–Karp).

use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
}

/// A directed network with labeled vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    pub labels: Vec<String>,
    pub edges: Vec<FlowEdge>,
    pub source: usize,
    pub sink: usize,
}

impl FlowNetwork {
    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: i64) {
        assert!(capacity >= 0, "negative capacity");
        self.edges.push(FlowEdge { from, to, capacity });
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Value of a maximum source-sink flow.
    pub fn max_flow(&self) -> i64 {
        let nv = self.labels.len();
        // residual graph: edge 2k forward, 2k+1 backward
        let mut to = Vec::with_capacity(2 * self.edges.len());
        let mut cap = Vec::with_capacity(2 * self.edges.len());
        let mut adj = vec![Vec::new(); nv];
        for e in &self.edges {
            adj[e.from].push(to.len());
            to.push(e.to);
            cap.push(e.capacity);
            adj[e.to].push(to.len());
            to.push(e.from);
            cap.push(0);
        }
        let mut total = 0;
        loop {
            let mut prev: Vec<Option<usize>> = vec![None; nv];
            let mut seen = vec![false; nv];
            seen[self.source] = true;
            let mut queue = VecDeque::from([self.source]);
            while let Some(v) = queue.pop_front() {
                if v == self.sink {
                    break;
                }
                for &ei in &adj[v] {
                    let w = to[ei];
                    if cap[ei] > 0 && !seen[w] {
                        seen[w] = true;
                        prev[w] = Some(ei);
                        queue.push_back(w);
                    }
                }
            }
            if !seen[self.sink] {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = self.sink;
            while let Some(ei) = prev[v] {
                push = push.min(cap[ei]);
                v = to[ei ^ 1];
            }
            let mut v = self.sink;
            while let Some(ei) = prev[v] {
                cap[ei] -= push;
                cap[ei ^ 1] += push;
                v = to[ei ^ 1];
            }
            total += push;
        }
    }
}

pub fn max_flow(net: &FlowNetwork) -> i64 {
    net.max_flow()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // CLRS example, max flow 23
        let mut g = FlowNetwork::default();
        let v: Vec<usize> = (0..6).map(|i| g.add_vertex(format!("v{i}"))).collect();
        for &(a, b, c) in &[
            (0, 1, 16), (0, 2, 13), (1, 3, 12), (2, 1, 4), (2, 4, 14),
            (3, 2, 9), (3, 5, 20), (4, 3, 7), (4, 5, 4),
        ] {
            g.add_edge(v[a], v[b], c);
        }
        g.source = v[0];
        g.sink = v[5];
        assert_eq!(g.max_flow(), 23);
    }

    #[test]
    fn disconnected_is_zero() {
        let mut g = FlowNetwork::default();
        g.source = g.add_vertex("s");
        g.sink = g.add_vertex("t");
        assert_eq!(max_flow(&g), 0);
    }
}
