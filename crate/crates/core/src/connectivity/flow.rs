//! Dinic maximum flow with small integer capacities.

use std::collections::VecDeque;

pub(crate) struct FlowNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
    next: Vec<usize>,
    level: Vec<u32>,
    cursor: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        Self {
            head: vec![NONE; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            level: vec![0; nodes],
            cursor: vec![NONE; nodes],
        }
    }

    /// Arc `u -> v` with capacity `c` and a residual twin of capacity `back`.
    pub(crate) fn add_arc(&mut self, u: usize, v: usize, c: u32, back: u32) {
        for (a, b, c) in [(u, v, c), (v, u, back)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut e = self.head[u];
            while e != NONE {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] == u32::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
                e = self.next[e];
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u32) -> u32 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] != NONE {
            let e = self.cursor[u];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.cursor[u] = self.next[e];
        }
        0
    }

    /// Maximum `s-t` flow, stopping early once it reaches `limit`.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut flow = 0;
        while flow < limit && self.bfs(s, t) {
            self.cursor.copy_from_slice(&self.head);
            loop {
                let got = self.dfs(s, t, limit - flow);
                if got == 0 {
                    break;
                }
                flow += got;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        // 0 -> {1, 2} -> 3, plus a cross arc 1 -> 2
        let mut f = FlowNetwork::new(4);
        f.add_arc(0, 1, 2, 0);
        f.add_arc(0, 2, 1, 0);
        f.add_arc(1, 2, 1, 0);
        f.add_arc(1, 3, 1, 0);
        f.add_arc(2, 3, 2, 0);
        assert_eq!(f.max_flow(0, 3, u32::MAX), 3);
    }

    #[test]
    fn respects_limit() {
        let mut f = FlowNetwork::new(2);
        f.add_arc(0, 1, 5, 0);
        assert_eq!(f.max_flow(0, 1, 2), 2);
    }
}
