//! Network numbers: the classical census of a reaction network.

use super::Network;
use std::collections::BTreeSet;

/// The network-numbers tuple
/// (m, n, n_r, r_rev, r_irrev, r, ℓ, sℓ, t, s, δ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkNumbers {
    /// Species count.
    pub m: usize,
    /// Complex count.
    pub n: usize,
    /// Distinct reactant complexes.
    pub n_r: usize,
    /// Reversible reaction pairs (each pair counted once).
    pub r_rev: usize,
    /// Irreversible reactions (no antiparallel partner).
    pub r_irrev: usize,
    /// Total reactions (= 2·r_rev + r_irrev).
    pub r: usize,
    /// Linkage classes (connected components of the undirected complex graph).
    pub l: usize,
    /// Strong linkage classes (strongly connected components).
    pub sl: usize,
    /// Terminal strong linkage classes (no edge leaving the component).
    pub t: usize,
    /// Rank of the stoichiometric matrix.
    pub s: usize,
    /// Deficiency δ = n − ℓ − s.
    pub delta: usize,
}

impl NetworkNumbers {
    /// The tuple in conventional order.
    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize, usize, usize, usize, usize, usize, usize) {
        (
            self.m, self.n, self.n_r, self.r_rev, self.r_irrev, self.r, self.l, self.sl,
            self.t, self.s, self.delta,
        )
    }
}

/// Directed graph on complex indices induced by the reactions.
pub(crate) struct ComplexGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
}

impl ComplexGraph {
    pub fn of(net: &Network) -> Self {
        let edges = (0..net.num_reactions())
            .map(|i| (net.reactant_complex_index(i), net.product_complex_index(i)))
            .collect();
        Self::from_edges(net.num_complexes(), edges)
    }

    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(from, to) in &edges {
            adj[from].push(to);
        }
        ComplexGraph { n, edges, adj }
    }

    /// Connected components of the underlying undirected graph; returns a
    /// component id per node (ids in discovery order).
    pub fn weak_components(&self) -> Vec<usize> {
        let mut undirected = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            undirected[a].push(b);
            undirected[b].push(a);
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(u) = stack.pop() {
                for &v in &undirected[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Strongly connected components (Tarjan); returns a component id per
    /// node. Ids are assigned in completion order.
    pub fn strong_components(&self) -> Vec<usize> {
        struct State<'a> {
            adj: &'a [Vec<usize>],
            index: Vec<Option<usize>>,
            lowlink: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next_index: usize,
            comp: Vec<usize>,
            next_comp: usize,
        }
        fn visit(s: &mut State, v: usize) {
            s.index[v] = Some(s.next_index);
            s.lowlink[v] = s.next_index;
            s.next_index += 1;
            s.stack.push(v);
            s.on_stack[v] = true;
            for i in 0..s.adj[v].len() {
                let w = s.adj[v][i];
                if s.index[w].is_none() {
                    visit(s, w);
                    s.lowlink[v] = s.lowlink[v].min(s.lowlink[w]);
                } else if s.on_stack[w] {
                    s.lowlink[v] = s.lowlink[v].min(s.index[w].unwrap());
                }
            }
            if s.lowlink[v] == s.index[v].unwrap() {
                while let Some(w) = s.stack.pop() {
                    s.on_stack[w] = false;
                    s.comp[w] = s.next_comp;
                    if w == v {
                        break;
                    }
                }
                s.next_comp += 1;
            }
        }
        let mut st = State {
            adj: &self.adj,
            index: vec![None; self.n],
            lowlink: vec![0; self.n],
            on_stack: vec![false; self.n],
            stack: Vec::new(),
            next_index: 0,
            comp: vec![0; self.n],
            next_comp: 0,
        };
        for v in 0..self.n {
            if st.index[v].is_none() {
                visit(&mut st, v);
            }
        }
        st.comp
    }

    /// Ids of terminal strong components (no edge leaves the component).
    pub fn terminal_strong_components(&self, scc: &[usize]) -> BTreeSet<usize> {
        let count = scc.iter().copied().max().map_or(0, |m| m + 1);
        let mut terminal: Vec<bool> = vec![true; count];
        for &(a, b) in &self.edges {
            if scc[a] != scc[b] {
                terminal[scc[a]] = false;
            }
        }
        terminal
            .iter()
            .enumerate()
            .filter_map(|(i, &t)| t.then_some(i))
            .collect()
    }
}

/// Compute the network numbers.
pub fn network_numbers(net: &Network) -> NetworkNumbers {
    let graph = ComplexGraph::of(net);
    let weak = graph.weak_components();
    let strong = graph.strong_components();
    let terminal = graph.terminal_strong_components(&strong);

    let partners = net.reverse_partner();
    let rev_members = partners.iter().filter(|p| p.is_some()).count();
    debug_assert!(rev_members % 2 == 0, "antiparallel partners must pair up");
    let r_rev = rev_members / 2;
    let r = net.num_reactions();

    let reactant_complexes: BTreeSet<usize> = (0..r)
        .map(|i| net.reactant_complex_index(i))
        .collect();

    let s = net.stoichiometric_matrix().rank();
    let n = net.num_complexes();
    let l = weak.iter().copied().collect::<BTreeSet<_>>().len();

    NetworkNumbers {
        m: net.num_species(),
        n,
        n_r: reactant_complexes.len(),
        r_rev,
        r_irrev: r - 2 * r_rev,
        r,
        l,
        sl: strong.iter().copied().collect::<BTreeSet<_>>().len(),
        t: terminal.len(),
        s,
        delta: n - l - s,
    }
}

/// True iff every reaction's endpoints lie in the same strong component.
pub(crate) fn weakly_reversible(net: &Network) -> bool {
    let graph = ComplexGraph::of(net);
    let strong = graph.strong_components();
    graph.edges.iter().all(|&(a, b)| strong[a] == strong[b])
}
