//! Union-find contraction of paired graphs.
//!
//! A paired graph has plain edges and pairs `(p, a, b)`: two edges `p–a`
//! and `p–b` of which every switching keeps exactly one. The graph is
//! correct (every switching is a tree) iff contraction reaches a single
//! vertex: plain edges merge their endpoints, a pair merges `p` into the
//! component of `a` once `a` and `b` share a component, and any merge of a
//! component with itself is a cycle.

use petgraph::unionfind::UnionFind;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairedGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub pairs: Vec<(usize, usize, usize)>,
}

impl PairedGraph {
    pub fn new(vertices: usize) -> PairedGraph {
        PairedGraph { vertices, edges: Vec::new(), pairs: Vec::new() }
    }

    /// Edge count of any one switching.
    pub fn switching_edge_count(&self) -> usize {
        self.edges.len() + self.pairs.len()
    }

    /// Replace pair `k` by its edge to `a` (`left`) or to `b`; later pairs shift down.
    pub fn fix_pair(&mut self, k: usize, left: bool) {
        let (p, a, b) = self.pairs.remove(k);
        self.edges.push((p, if left { a } else { b }));
    }

    /// Whether every switching is a tree. O(n log n) with inverse-Ackermann finds.
    pub fn is_contractible(&self) -> bool {
        let n = self.vertices;
        if n == 0 {
            return true;
        }
        if self.switching_edge_count() + 1 != n {
            return false;
        }
        let mut uf: UnionFind<usize> = UnionFind::new(n);
        for &(u, v) in &self.edges {
            if !uf.union(u, v) {
                return false;
            }
        }
        // Intrusive lists of pair ends waiting on each component, keyed by
        // representative; end `2k + i` belongs to pair `k`. Lists may hold
        // stale ends of queued pairs, counted in `len`.
        const NIL: usize = usize::MAX;
        let m = self.pairs.len();
        let mut head = vec![NIL; n];
        let mut tail = vec![NIL; n];
        let mut len = vec![0usize; n];
        let mut next = vec![NIL; 2 * m];
        let mut queued = vec![false; m];
        let mut ready = Vec::new();
        let mut push = |r: usize, end: usize, head: &mut [usize], tail: &mut [usize], len: &mut [usize]| {
            if head[r] == NIL {
                head[r] = end;
            } else {
                next[tail[r]] = end;
            }
            tail[r] = end;
            len[r] += 1;
        };
        for (k, &(_, a, b)) in self.pairs.iter().enumerate() {
            let (ra, rb) = (uf.find_mut(a), uf.find_mut(b));
            if ra == rb {
                queued[k] = true;
                ready.push(k);
            } else {
                push(ra, 2 * k, &mut head, &mut tail, &mut len);
                push(rb, 2 * k + 1, &mut head, &mut tail, &mut len);
            }
        }
        let mut contracted = 0;
        while let Some(k) = ready.pop() {
            let (p, a, _) = self.pairs[k];
            let (rp, ra) = (uf.find_mut(p), uf.find_mut(a));
            if rp == ra {
                return false;
            }
            contracted += 1;
            let (small, large) = if len[rp] <= len[ra] { (rp, ra) } else { (ra, rp) };
            uf.union(rp, ra);
            let root = uf.find_mut(rp);
            // Every pair joined by this merge has an end in the smaller list.
            let mut e = head[small];
            while e != NIL {
                let q = e / 2;
                let (_, qa, qb) = self.pairs[q];
                if !queued[q] && uf.find_mut(qa) == uf.find_mut(qb) {
                    queued[q] = true;
                    ready.push(q);
                }
                e = next[e];
            }
            let (h, t, l) = match (head[small], head[large]) {
                (NIL, _) => (head[large], tail[large], len[large]),
                (_, NIL) => (head[small], tail[small], len[small]),
                _ => {
                    next[tail[large]] = head[small];
                    (head[large], tail[small], len[large] + len[small])
                }
            };
            head[small] = NIL;
            head[large] = NIL;
            (head[root], tail[root], len[root]) = (h, t, l);
        }
        contracted == self.pairs.len()
    }
}
