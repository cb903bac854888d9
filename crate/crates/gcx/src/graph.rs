//! Directed multigraphs with totally ordered vertices and edges, and their
//! undirected/unordered isomorphisms.
//!
//! A [`Graph`] is the generator datum of the graph complex: vertices are
//! 0..n (the order *is* the labeling), edges are an ordered list of
//! (tail, head) pairs. Self-loops and parallel edges are allowed; a
//! self-loop contributes 2 to the valence of its vertex.
//!
//! A [`GraphIso`] forgets directions and orderings: it is a pair of
//! bijections (vertices, edges) plus the set of source edges whose direction
//! the map reverses. Four signs live on an isomorphism — the permutation
//! signs of the two bijections, (−1)^{#reversed}, and the dimension-weighted
//! combination sgn_d — and they drive the orientation relations of the
//! complex.
//!
//! JSON uses 1-based labels: `{"vertices": n, "edges": [{"tail": t, "head": h}, …]}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::signed_perm::{perm_sign, SignedPerm};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("underlying undirected graph is not connected")]
    NotConnected,
    #[error("vertex {} has valence below 3", .0 + 1)]
    ValenceTooLow(usize),
    #[error("edge {} is a self-loop and cannot be contracted", .0 + 1)]
    SelfLoopContraction(usize),
    #[error("edge index {} out of range 1..={1}", .0 + 1)]
    EdgeIndexOutOfRange(usize, usize),
    #[error("edge {} endpoint {} outside 1..={}", .edge + 1, .label + 1, .vertices)]
    EndpointOutOfRange { edge: usize, label: usize, vertices: usize },
    #[error("map is not an automorphism of the graph")]
    NotAnAutomorphism,
}

/// A directed multigraph with ordered vertices 0..n and an ordered edge
/// list. Edge k = (tail, head) means tail → head; tail = v_-, head = v_+.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (k, &(t, h)) in edges.iter().enumerate() {
            for label in [t, h] {
                if label >= n {
                    return Err(GraphError::EndpointOutOfRange { edge: k, label, vertices: n });
                }
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> (usize, usize) {
        self.edges[k]
    }

    pub fn is_loop(&self, k: usize) -> bool {
        self.edges[k].0 == self.edges[k].1
    }

    /// Loop-inclusive valence: a self-loop at v adds 2.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(t, h)| (t == v) as usize + (h == v) as usize)
            .sum()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0usize; self.n];
        for &(t, h) in &self.edges {
            val[t] += 1;
            val[h] += 1;
        }
        val
    }

    /// Number of self-loops at each vertex.
    pub fn loops_at(&self) -> Vec<usize> {
        let mut loops = vec![0usize; self.n];
        for &(t, h) in &self.edges {
            if t == h {
                loops[t] += 1;
            }
        }
        loops
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|&&(t, h)| t == h).count()
    }

    /// First Betti number e − v + 1 of a connected graph.
    pub fn loop_order(&self) -> isize {
        self.edges.len() as isize - self.n as isize + 1
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(t, h) in &self.edges {
            adj[t].push(h);
            adj[h].push(t);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Checks the generator conditions of the complex: non-empty, connected,
    /// every vertex at least trivalent.
    pub fn validate_generator(&self) -> Result<&Self, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        if let Some(v) = self.valences().iter().position(|&d| d < 3) {
            return Err(GraphError::ValenceTooLow(v));
        }
        Ok(self)
    }

    /// Γ/e for a non-loop edge: the merged vertex becomes label 0, all other
    /// vertices keep their relative order after it; edge k is removed and the
    /// surviving edges keep their order and directions. Parallel partners of
    /// the contracted edge become self-loops at the merged vertex.
    pub fn contract_edge(&self, k: usize) -> Result<Graph, GraphError> {
        if k >= self.edges.len() {
            return Err(GraphError::EdgeIndexOutOfRange(k, self.edges.len()));
        }
        let (t, h) = self.edges[k];
        if t == h {
            return Err(GraphError::SelfLoopContraction(k));
        }
        let mut relabel = vec![0usize; self.n];
        let mut next = 1;
        for v in 0..self.n {
            if v != t && v != h {
                relabel[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, &(a, b))| (relabel[a], relabel[b]))
            .collect();
        Ok(Graph { n: self.n - 1, edges })
    }

    /// All isomorphisms self → other as undirected, unordered graphs, sorted
    /// lexicographically by (vertex_perm, edge_perm, reversed). The reversal
    /// bit of a non-loop edge is forced by the vertex map; each self-loop
    /// contributes a free bit (its two half-edges can be swapped or not).
    pub fn find_isomorphisms(&self, other: &Graph) -> Vec<GraphIso> {
        let n = self.n;
        let m = self.edges.len();
        if n != other.n || m != other.edges.len() {
            return Vec::new();
        }
        let profile1: Vec<(usize, usize)> =
            self.valences().into_iter().zip(self.loops_at()).collect();
        let profile2: Vec<(usize, usize)> =
            other.valences().into_iter().zip(other.loops_at()).collect();
        let mut p1s = profile1.clone();
        let mut p2s = profile2.clone();
        p1s.sort();
        p2s.sort();
        if p1s != p2s {
            return Vec::new();
        }

        // undirected multiplicity tables, loops counted once at (v,v)
        let mult = |g: &Graph| {
            let mut m = vec![vec![0usize; g.n]; g.n];
            for &(t, h) in &g.edges {
                m[t][h] += 1;
                if t != h {
                    m[h][t] += 1;
                }
            }
            m
        };
        let (m1, m2) = (mult(self), mult(other));

        let mut out = Vec::new();
        let mut vmap = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend_vertex_map(other, &profile1, &profile2, &m1, &m2, &mut vmap, &mut used, 0, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_vertex_map(
        &self,
        other: &Graph,
        profile1: &[(usize, usize)],
        profile2: &[(usize, usize)],
        m1: &[Vec<usize>],
        m2: &[Vec<usize>],
        vmap: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
        out: &mut Vec<GraphIso>,
    ) {
        if v == self.n {
            self.complete_edge_maps(other, vmap, out);
            return;
        }
        for w in 0..self.n {
            if used[w] || profile1[v] != profile2[w] {
                continue;
            }
            if (0..v).any(|u| m1[v][u] != m2[w][vmap[u]]) {
                continue;
            }
            vmap[v] = w;
            used[w] = true;
            self.extend_vertex_map(other, profile1, profile2, m1, m2, vmap, used, v + 1, out);
            used[w] = false;
            vmap[v] = usize::MAX;
        }
    }

    /// Given a full vertex bijection, enumerate the compatible edge
    /// bijections (independent permutations within each parallel class) and
    /// attach reversal bits.
    fn complete_edge_maps(&self, other: &Graph, vmap: &[usize], out: &mut Vec<GraphIso>) {
        let m = self.edges.len();
        // group target edge indices by unordered endpoint pair
        let mut classes2: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
            std::collections::BTreeMap::new();
        for (j, &(t, h)) in other.edges.iter().enumerate() {
            classes2.entry((t.min(h), t.max(h))).or_default().push(j);
        }
        // group source edges by their *image* pair
        let mut classes1: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
            std::collections::BTreeMap::new();
        for (k, &(t, h)) in self.edges.iter().enumerate() {
            let (a, b) = (vmap[t], vmap[h]);
            classes1.entry((a.min(b), a.max(b))).or_default().push(k);
        }
        if classes1.len() != classes2.len()
            || classes1
                .iter()
                .zip(&classes2)
                .any(|((p1, v1), (p2, v2))| p1 != p2 || v1.len() != v2.len())
        {
            return; // multiplicity pruning makes this unreachable, but stay safe
        }

        // Cartesian product of within-class permutations, lexicographic per
        // class. Each assignment fixes edge_perm; loops then fan out over
        // free reversal bits.
        let class_list: Vec<(&Vec<usize>, &Vec<usize>)> = classes1
            .values()
            .zip(classes2.values())
            .collect();
        let mut edge_perm = vec![usize::MAX; m];
        let mut loops: Vec<usize> = Vec::new();
        let mut forced_rev: BTreeSet<usize> = BTreeSet::new();
        fn assign(
            g1: &Graph,
            g2: &Graph,
            vmap: &[usize],
            classes: &[(&Vec<usize>, &Vec<usize>)],
            ci: usize,
            taken: &mut Vec<usize>,
            edge_perm: &mut Vec<usize>,
            forced_rev: &mut BTreeSet<usize>,
            loops: &mut Vec<usize>,
            out: &mut Vec<GraphIso>,
        ) {
            if ci == classes.len() {
                // fan out over free loop bits
                let base = GraphIso {
                    vertex_perm: vmap.to_vec(),
                    edge_perm: edge_perm.clone(),
                    reversed: forced_rev.clone(),
                };
                for mask in 0u64..1u64 << loops.len() {
                    let mut iso = base.clone();
                    for (bit, &k) in loops.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            iso.reversed.insert(k);
                        }
                    }
                    out.push(iso);
                }
                return;
            }
            let (src, dst) = classes[ci];
            // permute dst among src positions, recursing position by position
            fn place(
                g1: &Graph,
                g2: &Graph,
                vmap: &[usize],
                classes: &[(&Vec<usize>, &Vec<usize>)],
                ci: usize,
                src: &[usize],
                dst: &[usize],
                si: usize,
                taken: &mut Vec<usize>,
                edge_perm: &mut Vec<usize>,
                forced_rev: &mut BTreeSet<usize>,
                loops: &mut Vec<usize>,
                out: &mut Vec<GraphIso>,
            ) {
                if si == src.len() {
                    assign(g1, g2, vmap, classes, ci + 1, taken, edge_perm, forced_rev, loops, out);
                    return;
                }
                let k = src[si];
                let (t, h) = g1.edges[k];
                let is_loop = t == h;
                for &j in dst {
                    if taken.contains(&j) {
                        continue;
                    }
                    taken.push(j);
                    edge_perm[k] = j;
                    let mut rev_added = false;
                    if is_loop {
                        loops.push(k);
                    } else if g2.edges[j] == (vmap[h], vmap[t]) {
                        forced_rev.insert(k);
                        rev_added = true;
                    }
                    place(g1, g2, vmap, classes, ci, src, dst, si + 1, taken, edge_perm, forced_rev, loops, out);
                    if is_loop {
                        loops.pop();
                    } else if rev_added {
                        forced_rev.remove(&k);
                    }
                    edge_perm[k] = usize::MAX;
                    taken.pop();
                }
            }
            place(g1, g2, vmap, classes, ci, src, dst, 0, taken, edge_perm, forced_rev, loops, out);
        }
        let mut taken = Vec::new();
        assign(self, other, vmap, &class_list, 0, &mut taken, &mut edge_perm, &mut forced_rev, &mut loops, out);
    }

    /// Aut^u(Γ) = all undirected, unordered self-isomorphisms.
    pub fn aut_group(&self) -> Vec<GraphIso> {
        self.find_isomorphisms(self)
    }

    /// Σ sgn_d(α) over Aut^u(Γ) — the signed automorphism count.
    pub fn signed_aut_count(&self, d: usize) -> i64 {
        assert!(d >= 3, "dimension must be at least 3");
        self.aut_group().iter().map(|a| a.sgn_d(d)).sum()
    }

    /// ψ_Γ(α) ∈ S̃_{E(Γ)}: the edge permutation with a flip bit on each
    /// reversed edge. Injective homomorphism when Γ has no isolated vertex.
    pub fn psi_gamma(&self, a: &GraphIso) -> Result<SignedPerm, GraphError> {
        if !a.is_valid(self, self) {
            return Err(GraphError::NotAnAutomorphism);
        }
        Ok(SignedPerm::new(a.edge_perm.clone(), a.reversed.iter().copied())
            .expect("valid automorphism yields a valid signed permutation"))
    }

    /// Checks the commuting identity f_Γ∘γ(α) = φ(ψ_Γ(α))∘f_Γ on the formal
    /// edge-endpoint tuple T = ((v_-(e), v_+(e)))_e. The left side relabels
    /// vertices by pullback, T₁[k] = (α_V(t_k), α_V(h_k)); the right side is
    /// the contragredient tuple action of ψ_Γ(α). Always true for an
    /// automorphism — the point is that it crosses the graph-side and
    /// signed-permutation-side conventions.
    pub fn edge_tuple_action_check(&self, a: &GraphIso) -> Result<bool, GraphError> {
        let psi = self.psi_gamma(a)?;
        let t: Vec<(usize, usize)> = self.edges.clone();
        let t1: Vec<(usize, usize)> = t
            .iter()
            .map(|&(x, y)| (a.vertex_perm[x], a.vertex_perm[y]))
            .collect();
        let t2 = psi
            .inverse()
            .act_on_tuple(&t)
            .expect("tuple length equals edge count");
        Ok(t1 == t2)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph{{n={};", self.n)?;
        for (k, &(t, h)) in self.edges.iter().enumerate() {
            write!(f, "{}{}→{}", if k == 0 { " " } else { ", " }, t + 1, h + 1)?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    tail: usize,
    head: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<EdgeJson>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.n,
            edges: self
                .edges
                .iter()
                .map(|&(t, h)| EdgeJson { tail: t + 1, head: h + 1 })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for e in &raw.edges {
            if e.tail == 0 || e.head == 0 {
                return Err(serde::de::Error::custom("vertex labels are 1-based"));
            }
            edges.push((e.tail - 1, e.head - 1));
        }
        Graph::new(raw.vertices, edges).map_err(serde::de::Error::custom)
    }
}

/// An isomorphism of underlying undirected, unordered graphs: vertex and
/// edge bijections plus the set of source edge indices whose direction the
/// map reverses. Loop edges carry a free reversal bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphIso {
    pub vertex_perm: Vec<usize>,
    pub edge_perm: Vec<usize>,
    pub reversed: BTreeSet<usize>,
}

// JSON uses 1-based images and indices, like the graph schema.
#[derive(Serialize, Deserialize)]
struct GraphIsoJson {
    vertex_perm: Vec<usize>,
    edge_perm: Vec<usize>,
    reversed: Vec<usize>,
}

impl Serialize for GraphIso {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphIsoJson {
            vertex_perm: self.vertex_perm.iter().map(|&v| v + 1).collect(),
            edge_perm: self.edge_perm.iter().map(|&e| e + 1).collect(),
            reversed: self.reversed.iter().map(|&k| k + 1).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphIso {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphIsoJson::deserialize(d)?;
        for list in [&raw.vertex_perm, &raw.edge_perm, &raw.reversed] {
            if list.iter().any(|&x| x == 0) {
                return Err(serde::de::Error::custom("labels and indices are 1-based"));
            }
        }
        Ok(GraphIso {
            vertex_perm: raw.vertex_perm.iter().map(|&v| v - 1).collect(),
            edge_perm: raw.edge_perm.iter().map(|&e| e - 1).collect(),
            reversed: raw.reversed.iter().map(|&k| k - 1).collect(),
        })
    }
}

impl GraphIso {
    pub fn identity(g: &Graph) -> Self {
        GraphIso {
            vertex_perm: (0..g.vertex_count()).collect(),
            edge_perm: (0..g.edge_count()).collect(),
            reversed: BTreeSet::new(),
        }
    }

    /// Does this datum define an isomorphism g1 → g2?
    pub fn is_valid(&self, g1: &Graph, g2: &Graph) -> bool {
        let n = g1.vertex_count();
        let m = g1.edge_count();
        if g2.vertex_count() != n || g2.edge_count() != m {
            return false;
        }
        if self.vertex_perm.len() != n || self.edge_perm.len() != m {
            return false;
        }
        let bijective = |p: &[usize]| {
            let mut seen = vec![false; p.len()];
            p.iter().all(|&x| {
                x < seen.len() && !std::mem::replace(&mut seen[x], true)
            })
        };
        if !bijective(&self.vertex_perm) || !bijective(&self.edge_perm) {
            return false;
        }
        if self.reversed.iter().any(|&k| k >= m) {
            return false;
        }
        g1.edges().iter().enumerate().all(|(k, &(t, h))| {
            let (a, b) = (self.vertex_perm[t], self.vertex_perm[h]);
            let img = g2.edge(self.edge_perm[k]);
            if self.reversed.contains(&k) {
                img == (b, a)
            } else {
                img == (a, b)
            }
        })
    }

    /// self∘other (apply `other` first). Reversal bits accumulate mod 2.
    pub fn compose(&self, other: &GraphIso) -> GraphIso {
        assert_eq!(self.vertex_perm.len(), other.vertex_perm.len());
        assert_eq!(self.edge_perm.len(), other.edge_perm.len());
        let vertex_perm = other.vertex_perm.iter().map(|&v| self.vertex_perm[v]).collect();
        let edge_perm: Vec<usize> = other.edge_perm.iter().map(|&e| self.edge_perm[e]).collect();
        let reversed = (0..other.edge_perm.len())
            .filter(|&k| {
                other.reversed.contains(&k) != self.reversed.contains(&other.edge_perm[k])
            })
            .collect();
        GraphIso { vertex_perm, edge_perm, reversed }
    }

    pub fn inverse(&self) -> GraphIso {
        let invert = |p: &[usize]| {
            let mut q = vec![0usize; p.len()];
            for (i, &x) in p.iter().enumerate() {
                q[x] = i;
            }
            q
        };
        GraphIso {
            vertex_perm: invert(&self.vertex_perm),
            edge_perm: invert(&self.edge_perm),
            reversed: self.reversed.iter().map(|&k| self.edge_perm[k]).collect(),
        }
    }

    pub fn sgn_vertex(&self) -> i64 {
        perm_sign(&self.vertex_perm)
    }

    pub fn sgn_edge(&self) -> i64 {
        perm_sign(&self.edge_perm)
    }

    pub fn sgn_arrow(&self) -> i64 {
        if self.reversed.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// sgn_d(α) = (−1)^{(d−1)ε_E + d(ε_V + ε_→)} with ε the parity bits of
    /// the three elementary signs.
    pub fn sgn_d(&self, d: usize) -> i64 {
        assert!(d >= 3, "dimension must be at least 3");
        let eps_v = (self.sgn_vertex() < 0) as usize;
        let eps_e = (self.sgn_edge() < 0) as usize;
        let eps_a = (self.sgn_arrow() < 0) as usize;
        if ((d - 1) * eps_e + d * (eps_v + eps_a)) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All four signs at once: (sgn_vertex, sgn_edge, sgn_arrow, sgn_d).
    pub fn signs(&self, d: usize) -> (i64, i64, i64, i64) {
        (self.sgn_vertex(), self.sgn_edge(), self.sgn_arrow(), self.sgn_d(d))
    }
}

impl fmt::Display for GraphIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt1 = |p: &[usize]| {
            p.iter().map(|&x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
        };
        write!(
            f,
            "iso{{v: [{}]; e: [{}]; rev: {{{}}}}}",
            fmt1(&self.vertex_perm),
            fmt1(&self.edge_perm),
            self.reversed.iter().map(|&k| (k + 1).to_string()).collect::<Vec<_>>().join(" ")
        )
    }
}
