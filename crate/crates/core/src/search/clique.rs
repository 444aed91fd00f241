//! Exact maximum clique on a dense bitset graph.
//!
//! Branch and bound with greedy colouring bounds (the MCQ scheme): vertices
//! are relabelled by non-increasing degree, each candidate set is colour-sorted,
//! and a branch is cut when `|clique| + colour <= |best|`.

#[derive(Debug, Clone)]
pub struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, adj: vec![0; n * words] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        self.adj[a * self.words + b / 64] |= 1 << (b % 64);
        self.adj[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// The induced subgraph with vertices renumbered in the given order.
    fn permuted(&self, order: &[usize]) -> Self {
        let mut g = Self::new(order.len());
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Induced subgraph on `keep`, preserving the relative order.
    pub fn without_vertex(&self, v: usize) -> (Self, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        (self.permuted(&keep), keep)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Best clique found, as ascending vertex ids of the input graph.
    pub clique: Vec<usize>,
    pub nodes: u64,
    /// The search finished without hitting the node budget, so `clique` is maximum
    /// (or, with a target, no clique of the target size exists when it is smaller).
    pub complete: bool,
}

struct Search<'a> {
    g: &'a BitGraph,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    target: usize,
    aborted: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.aborted || self.best.len() >= self.target
    }

    /// Greedy sequential colouring of `cand`; returns vertices in ascending colour with their colours.
    fn colour_sort(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        let mut q = vec![0u64; cand.len()];
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            q.copy_from_slice(&uncoloured);
            while let Some(v) = first_bit(&q) {
                clear_bit(&mut q, v);
                clear_bit(&mut uncoloured, v);
                for (w, &a) in q.iter_mut().zip(self.g.row(v)) {
                    *w &= !a;
                }
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        let (order, colours) = self.colour_sort(&cand);
        for idx in (0..order.len()).rev() {
            if self.current.len() + colours[idx] <= self.best.len() {
                return;
            }
            if self.nodes >= self.budget {
                self.aborted = true;
                return;
            }
            self.nodes += 1;
            let v = order[idx];
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(&c, &a)| c & a).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            clear_bit(&mut cand, v);
            if self.done() {
                return;
            }
        }
    }
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear_bit(bits: &mut [u64], v: usize) {
    bits[v / 64] &= !(1 << (v % 64));
}

/// Maximum clique of `g`, stopping early once a clique of size `target` is found.
pub fn max_clique(g: &BitGraph, budget: u64, target: Option<usize>) -> CliqueOutcome {
    if g.is_empty() {
        return CliqueOutcome { clique: Vec::new(), nodes: 0, complete: true };
    }
    let mut order: Vec<usize> = (0..g.n).collect();
    let degrees: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    let pg = g.permuted(&order);

    let mut search = Search {
        g: &pg,
        current: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
        target: target.unwrap_or(usize::MAX),
        aborted: false,
    };
    let mut all = vec![0u64; pg.words];
    for v in 0..pg.n {
        all[v / 64] |= 1 << (v % 64);
    }
    search.expand(all);

    let mut clique: Vec<usize> = search.best.iter().map(|&v| order[v]).collect();
    clique.sort_unstable();
    CliqueOutcome { clique, nodes: search.nodes, complete: !search.aborted }
}
