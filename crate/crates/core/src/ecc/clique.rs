//! Maximum clique by branch and bound with greedy-coloring bounds.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bitset(Vec<u64>);

impl Bitset {
    pub(crate) fn empty(n: usize) -> Self {
        Bitset(vec![0; n.div_ceil(64)])
    }

    pub(crate) fn full(n: usize) -> Self {
        let mut b = Bitset::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

struct Search<'a> {
    adj: &'a [Bitset],
    best: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    // vertices of `p` paired with color numbers, ascending by color
    fn color(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut uncolored = p.clone();
        let mut out = Vec::new();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                uncolored.remove(v);
                q.and_not_assign(&self.adj[v]);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bitset) {
        self.nodes += 1;
        let order = self.color(&p);
        for &(v, c) in order.iter().rev() {
            if r.len() + c <= self.best.len() {
                return;
            }
            r.push(v);
            let next = p.and(&self.adj[v]);
            if next.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, next);
            }
            r.pop();
            p.remove(v);
        }
    }
}

/// A maximum clique of the graph with adjacency rows `adj`; `seed` must be a
/// clique and is returned if nothing larger exists. With `anchor` set the
/// search only covers cliques through that vertex, which loses nothing on a
/// vertex-transitive graph.
pub(crate) fn max_clique(adj: &[Bitset], seed: Vec<usize>, anchor: Option<usize>) -> (Vec<usize>, u64) {
    let mut search = Search { adj, best: seed, nodes: 0 };
    match anchor {
        None => search.expand(&mut Vec::new(), Bitset::full(adj.len())),
        Some(v) => {
            let p = adj[v].clone();
            if p.is_empty() {
                if search.best.is_empty() {
                    search.best = vec![v];
                }
            } else {
                search.expand(&mut vec![v], p);
            }
        }
    }
    let mut best = search.best;
    best.sort_unstable();
    (best, search.nodes)
}
