//! Dinic max-flow on real capacities, with `f64::INFINITY` for uncuttable arcs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    finite_total: f64,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
            finite_total: 0.0,
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: f64) {
        debug_assert!(cap >= 0.0);
        if cap.is_finite() {
            self.finite_total += cap;
        }
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0.0 });
    }

    fn eps(&self) -> f64 {
        1e-12 * self.finite_total.max(1e-300)
    }

    fn levels(&self, s: usize, eps: f64) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let a = &self.arcs[e];
                if a.cap > eps && level[a.to] == usize::MAX {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        level
    }

    /// Maximum `s`-`t` flow. Returns `+inf` when an all-infinite path exists.
    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        if s == t {
            return f64::INFINITY;
        }
        let eps = self.eps();
        let mut total = 0.0;
        loop {
            let level = self.levels(s, eps);
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0usize; self.adj.len()];
            let mut path: Vec<usize> = Vec::new();
            let mut u = s;
            loop {
                if u == t {
                    let push = path
                        .iter()
                        .map(|&e| self.arcs[e].cap)
                        .fold(f64::INFINITY, f64::min);
                    if push.is_infinite() {
                        return f64::INFINITY;
                    }
                    total += push;
                    let mut cut_at = path.len();
                    for (i, &e) in path.iter().enumerate() {
                        if self.arcs[e].cap.is_finite() {
                            self.arcs[e].cap -= push;
                        }
                        if self.arcs[e ^ 1].cap.is_finite() {
                            self.arcs[e ^ 1].cap += push;
                        }
                        if self.arcs[e].cap <= eps && cut_at == path.len() {
                            cut_at = i;
                        }
                    }
                    path.truncate(cut_at);
                    u = path.last().map_or(s, |&e| self.arcs[e].to);
                    continue;
                }
                let mut advanced = false;
                while next[u] < self.adj[u].len() {
                    let e = self.adj[u][next[u]];
                    let a = &self.arcs[e];
                    if a.cap > eps && level[a.to] == level[u] + 1 {
                        path.push(e);
                        u = a.to;
                        advanced = true;
                        break;
                    }
                    next[u] += 1;
                }
                if advanced {
                    continue;
                }
                match path.pop() {
                    None => break,
                    Some(e) => {
                        let from = self.arcs[e ^ 1].to;
                        next[from] += 1;
                        u = from;
                    }
                }
            }
        }
    }

    /// Nodes that can still reach `t` in the residual network. After a
    /// maximum flow their complement is the largest minimum-cut source side.
    pub fn reaching(&self, t: usize) -> Vec<bool> {
        let eps = self.eps();
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                let w = self.arcs[e].to;
                if !seen[w] && self.arcs[e ^ 1].cap > eps {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // CLRS example, max flow 23
        let mut n = FlowNetwork::new(6);
        for &(u, v, c) in &[
            (0, 1, 16.0),
            (0, 2, 13.0),
            (1, 3, 12.0),
            (2, 1, 4.0),
            (2, 4, 14.0),
            (3, 2, 9.0),
            (3, 5, 20.0),
            (4, 3, 7.0),
            (4, 5, 4.0),
        ] {
            n.add_arc(u, v, c);
        }
        assert_eq!(n.max_flow(0, 5), 23.0);
        let reach = n.reaching(5);
        assert!(!reach[0]);
        assert!(reach[5]);
    }

    #[test]
    fn infinite_path_detected() {
        let mut n = FlowNetwork::new(3);
        n.add_arc(0, 1, f64::INFINITY);
        n.add_arc(1, 2, f64::INFINITY);
        assert!(n.max_flow(0, 2).is_infinite());
    }

    #[test]
    fn infinite_arcs_with_finite_bottleneck() {
        let mut n = FlowNetwork::new(4);
        n.add_arc(0, 1, f64::INFINITY);
        n.add_arc(1, 2, 2.5);
        n.add_arc(2, 3, f64::INFINITY);
        n.add_arc(0, 3, 0.5);
        assert_eq!(n.max_flow(0, 3), 3.0);
        let reach = n.reaching(3);
        assert_eq!(reach, [false, false, true, true]);
    }

    #[test]
    fn disconnected_is_zero() {
        let mut n = FlowNetwork::new(3);
        n.add_arc(0, 1, 1.0);
        assert_eq!(n.max_flow(0, 2), 0.0);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let len = 200_000;
        let mut n = FlowNetwork::new(len);
        for i in 0..len - 1 {
            n.add_arc(i, i + 1, if i == len / 2 { 0.25 } else { 1.0 });
        }
        assert_eq!(n.max_flow(0, len - 1), 0.25);
    }
}
