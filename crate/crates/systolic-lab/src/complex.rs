//! Finite flag simplicial complexes encoded by their 1-skeletons.
//!
//! The flag condition is definitional: a set of vertices spans a simplex if
//! and only if it is a clique of the skeleton, so no simplex lists are stored.
//! Vertex labels are canonicalized (sorted, deduplicated) at construction and
//! every "first"/"smallest" tie-break below refers to that order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::homology::HomologySummary;
use crate::pi1;

/// Dense index of a vertex inside one [`FlagComplex`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("largeness parameter k = {0} unsupported, expected 4, 5 or 6")]
    UnsupportedLargeness(usize),
}

/// An embedded cycle, stored as the vertex sequence without repeating
/// the start. Two cycles are the same up to rotation and reflection;
/// [`Cycle::canonical`] picks the representative used for deduplication.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Cycle { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Lexicographically least rotation/reflection, starting at the least vertex.
    pub fn canonical(&self) -> Cycle {
        let n = self.vertices.len();
        if n == 0 {
            return self.clone();
        }
        let mut best: Option<Vec<VertexId>> = None;
        for start in 0..n {
            for dir in [1isize, -1] {
                let mut cand = Vec::with_capacity(n);
                for k in 0..n {
                    let idx = (start as isize + dir * k as isize).rem_euclid(n as isize);
                    cand.push(self.vertices[idx as usize]);
                }
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Cycle { vertices: best.unwrap() }
    }
}

/// Outcome of a k-largeness check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LargenessCheck {
    KLarge,
    /// A chordless embedded cycle of length 4..k-1.
    Chordless(Cycle),
}

/// Outcome of the local 6-largeness check over all vertex links.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LocalLargeness {
    Locally6Large,
    /// `vertex` whose link contains the chordless `link_cycle`
    /// (given in ambient vertex ids).
    Witness { vertex: VertexId, link_cycle: Cycle },
}

/// Obstruction reported by the bounded simple-connectivity check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConnectivityObstruction {
    Disconnected { component_representatives: Vec<VertexId> },
    NontrivialH1(HomologySummary),
    /// Coset enumeration completed on a nontrivial finite edge-path group.
    NontrivialFiniteQuotient { order: usize },
}

/// Three-valued answer of [`FlagComplex::is_simply_connected_bounded`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SimpleConnectivity {
    Yes,
    No(ConnectivityObstruction),
    Unknown,
}

/// Verdict of [`FlagComplex::check_systolic`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SystolicVerdict {
    Systolic,
    Disconnected,
    NotLocally6Large { vertex: VertexId, link_cycle: Cycle },
    NotSimplyConnected(ConnectivityObstruction),
    /// The simple-connectivity subroutine ran out of budget.
    Unknown,
}

impl SystolicVerdict {
    pub fn is_systolic(&self) -> bool {
        matches!(self, SystolicVerdict::Systolic)
    }
}

/// Default step budget for the bounded simple-connectivity check.
pub const DEFAULT_PI1_BUDGET: usize = 100_000;

/// A finite flag complex, given by labels and skeleton adjacency.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagComplex {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<Vec<bool>>,
    neighbors: Vec<Vec<VertexId>>,
}

impl FlagComplex {
    /// Builds a complex from vertex labels and undirected edges.
    /// Labels are sorted and deduplicated; duplicate edges collapse.
    pub fn from_edge_list<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        edges: &[(T, T)],
    ) -> Result<FlagComplex, ComplexError> {
        let mut labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        labels.sort();
        labels.dedup();
        let index: BTreeMap<String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let n = labels.len();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in edges {
            let a = a.as_ref();
            let b = b.as_ref();
            let ia = *index.get(a).ok_or_else(|| ComplexError::UnknownVertex(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| ComplexError::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(ComplexError::SelfLoop(a.to_string()));
            }
            adj[ia][ib] = true;
            adj[ib][ia] = true;
        }
        let neighbors = adj
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &e)| e)
                    .map(|(j, _)| VertexId(j))
                    .collect()
            })
            .collect();
        Ok(FlagComplex { labels, index, adj, neighbors })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).map(|&i| VertexId(i))
    }

    pub fn require_vertex(&self, label: &str) -> Result<VertexId, ComplexError> {
        self.vertex(label).ok_or_else(|| ComplexError::UnknownVertex(label.to_string()))
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), ComplexError> {
        if v.0 < self.labels.len() {
            Ok(())
        } else {
            Err(ComplexError::VertexOutOfRange(v.0))
        }
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a.0][b.0]
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors[v.0].len()
    }

    /// Undirected edges as ordered index pairs.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.labels.len() {
            for &VertexId(b) in &self.neighbors[a] {
                if a < b {
                    out.push((VertexId(a), VertexId(b)));
                }
            }
        }
        out
    }

    /// All 2-simplices, i.e. 3-cliques of the skeleton, each sorted.
    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        let mut out = Vec::new();
        for a in 0..self.labels.len() {
            for &VertexId(b) in &self.neighbors[a] {
                if b <= a {
                    continue;
                }
                for &VertexId(c) in &self.neighbors[b] {
                    if c > b && self.adj[a][c] {
                        out.push([VertexId(a), VertexId(b), VertexId(c)]);
                    }
                }
            }
        }
        out
    }

    /// Full subcomplex induced on a vertex subset, keeping the ambient labels.
    pub fn induced_subcomplex(&self, verts: &[VertexId]) -> Result<FlagComplex, ComplexError> {
        for &v in verts {
            self.check_vertex(v)?;
        }
        let set: BTreeSet<VertexId> = verts.iter().copied().collect();
        let labels: Vec<&str> = set.iter().map(|&v| self.label(v)).collect();
        let mut edges = Vec::new();
        for &a in &set {
            for &b in self.neighbors(a) {
                if a < b && set.contains(&b) {
                    edges.push((self.label(a), self.label(b)));
                }
            }
        }
        FlagComplex::from_edge_list(&labels, &edges)
    }

    /// Link of `v`: the full subcomplex on the neighbors of `v`.
    pub fn link(&self, v: VertexId) -> Result<FlagComplex, ComplexError> {
        self.check_vertex(v)?;
        let nbrs: Vec<VertexId> = self.neighbors(v).to_vec();
        self.induced_subcomplex(&nbrs)
    }

    /// Enumerates embedded cycles with lengths in `min_len..=max_len`, one
    /// representative per rotation/reflection class, in canonical form.
    ///
    /// Each cycle is reported with its least vertex first and the smaller of
    /// the two possible second vertices, so the output order is deterministic.
    pub fn enumerate_embedded_cycles(&self, min_len: usize, max_len: usize) -> Vec<Cycle> {
        let n = self.labels.len();
        let mut out = Vec::new();
        if min_len < 3 || max_len < min_len {
            return out;
        }
        let mut path: Vec<usize> = Vec::with_capacity(max_len);
        let mut on_path = vec![false; n];
        for start in 0..n {
            path.push(start);
            on_path[start] = true;
            self.cycle_dfs(start, min_len, max_len, &mut path, &mut on_path, &mut out);
            on_path[start] = false;
            path.pop();
        }
        out
    }

    fn cycle_dfs(
        &self,
        start: usize,
        min_len: usize,
        max_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Cycle>,
    ) {
        let last = *path.last().unwrap();
        if path.len() >= min_len && path.len() >= 3 && self.adj[last][start] {
            // Reflection dedup: keep the orientation where the second vertex
            // is smaller than the last.
            if path[1] < *path.last().unwrap() {
                out.push(Cycle::new(path.iter().map(|&i| VertexId(i)).collect()));
            }
        }
        if path.len() == max_len {
            return;
        }
        for &VertexId(next) in &self.neighbors[last] {
            // Start vertex must stay the least on the cycle.
            if next <= start || on_path[next] {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            self.cycle_dfs(start, min_len, max_len, path, on_path, out);
            on_path[next] = false;
            path.pop();
        }
    }

    /// Embedded cycles of length 4..k-1 for k in {4, 5, 6}.
    ///
    /// Length-3 cycles are triangles, hence trivially chorded in a flag
    /// complex, so they are never reported.
    pub fn embedded_cycles_shorter_than(&self, k: usize) -> Result<Vec<Cycle>, ComplexError> {
        if !(4..=6).contains(&k) {
            return Err(ComplexError::UnsupportedLargeness(k));
        }
        Ok(self.enumerate_embedded_cycles(4, k.saturating_sub(1)))
    }

    /// Validates a cycle: length >= 3, distinct vertices, consecutive
    /// vertices adjacent (including the closing edge).
    pub fn validate_cycle(&self, cycle: &Cycle) -> Result<(), ComplexError> {
        if cycle.len() < 3 {
            return Err(ComplexError::InvalidCycle(format!(
                "length {} below 3",
                cycle.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &v in &cycle.vertices {
            self.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(ComplexError::InvalidCycle(format!(
                    "repeated vertex {:?}",
                    self.label(v)
                )));
            }
        }
        for i in 0..cycle.len() {
            let a = cycle.vertices[i];
            let b = cycle.vertices[(i + 1) % cycle.len()];
            if !self.adjacent(a, b) {
                return Err(ComplexError::InvalidCycle(format!(
                    "consecutive vertices {:?}, {:?} not adjacent",
                    self.label(a),
                    self.label(b)
                )));
            }
        }
        Ok(())
    }

    /// True iff some pair of non-consecutive cycle vertices is adjacent.
    pub fn has_diagonal(&self, cycle: &Cycle) -> Result<bool, ComplexError> {
        self.validate_cycle(cycle)?;
        let n = cycle.len();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if self.adjacent(cycle.vertices[i], cycle.vertices[j]) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// k-largeness for k in {4, 5, 6}: every embedded cycle of length
    /// 4..k-1 has a diagonal. Witness is the least chordless cycle.
    pub fn is_k_large(&self, k: usize) -> Result<LargenessCheck, ComplexError> {
        let cycles = self.embedded_cycles_shorter_than(k)?;
        let witness = cycles
            .into_iter()
            .filter(|c| !self.has_diagonal(c).expect("enumerated cycle is valid"))
            .map(|c| c.canonical())
            .min_by_key(|c| (c.len(), c.vertices.clone()));
        Ok(match witness {
            None => LargenessCheck::KLarge,
            Some(c) => LargenessCheck::Chordless(c),
        })
    }

    /// Checks 6-largeness of every vertex link. The witness cycle is
    /// reported in ambient vertex ids.
    pub fn is_locally_6_large(&self) -> LocalLargeness {
        for v in self.vertices() {
            let link = self.link(v).expect("vertex id in range");
            match link.is_k_large(6).expect("k = 6 supported") {
                LargenessCheck::KLarge => {}
                LargenessCheck::Chordless(c) => {
                    let ambient = c
                        .vertices
                        .iter()
                        .map(|&w| self.vertex(link.label(w)).expect("link label is ambient"))
                        .collect();
                    return LocalLargeness::Witness {
                        vertex: v,
                        link_cycle: Cycle::new(ambient).canonical(),
                    };
                }
            }
        }
        LocalLargeness::Locally6Large
    }

    /// BFS distances from `v` in the 1-skeleton.
    pub fn bfs_distances(&self, v: VertexId) -> Vec<Option<usize>> {
        let n = self.labels.len();
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        dist[v.0] = Some(0);
        queue.push_back(v.0);
        while let Some(cur) = queue.pop_front() {
            let d = dist[cur].unwrap();
            for &VertexId(next) in &self.neighbors[cur] {
                if dist[next].is_none() {
                    dist[next] = Some(d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    /// 1-skeleton distance; `None` when unreachable.
    pub fn distance(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.bfs_distances(a)[b.0]
    }

    pub fn is_connected(&self) -> bool {
        match self.labels.len() {
            0 => true,
            _ => self.bfs_distances(VertexId(0)).iter().all(Option::is_some),
        }
    }

    fn component_representatives(&self) -> Vec<VertexId> {
        let n = self.labels.len();
        let mut comp = vec![None; n];
        let mut reps = Vec::new();
        for s in 0..n {
            if comp[s].is_some() {
                continue;
            }
            reps.push(VertexId(s));
            let mut queue = VecDeque::from([s]);
            comp[s] = Some(reps.len());
            while let Some(cur) = queue.pop_front() {
                for &VertexId(next) in &self.neighbors[cur] {
                    if comp[next].is_none() {
                        comp[next] = Some(reps.len());
                        queue.push_back(next);
                    }
                }
            }
        }
        reps
    }

    /// First homology of the 2-skeleton (triangles = 3-cliques).
    pub fn homology_h1(&self) -> HomologySummary {
        let edges: Vec<(usize, usize)> =
            self.edges().iter().map(|&(a, b)| (a.0, b.0)).collect();
        let triangles: Vec<[usize; 3]> =
            self.triangles().iter().map(|t| [t[0].0, t[1].0, t[2].0]).collect();
        crate::homology::h1_summary(self.labels.len(), &edges, &triangles)
    }

    /// Bounded semi-decision of simple connectivity.
    ///
    /// `No` when disconnected or H1 is nontrivial. Otherwise the edge-path
    /// group presentation (spanning tree generators, triangle relators) is
    /// simplified within `budget` steps; if generators survive, bounded coset
    /// enumeration decides trivial vs. nontrivial finite. `Unknown` only on
    /// budget exhaustion.
    pub fn is_simply_connected_bounded(&self, budget: usize) -> SimpleConnectivity {
        if !self.is_connected() {
            return SimpleConnectivity::No(ConnectivityObstruction::Disconnected {
                component_representatives: self.component_representatives(),
            });
        }
        let h1 = self.homology_h1();
        if !h1.is_trivial() {
            return SimpleConnectivity::No(ConnectivityObstruction::NontrivialH1(h1));
        }
        let edges: Vec<(usize, usize)> =
            self.edges().iter().map(|&(a, b)| (a.0, b.0)).collect();
        let triangles: Vec<[usize; 3]> =
            self.triangles().iter().map(|t| [t[0].0, t[1].0, t[2].0]).collect();
        match pi1::trivial_pi1_bounded(self.labels.len(), &edges, &triangles, budget) {
            pi1::Pi1Verdict::Trivial => SimpleConnectivity::Yes,
            pi1::Pi1Verdict::FiniteNontrivial { order } => SimpleConnectivity::No(
                ConnectivityObstruction::NontrivialFiniteQuotient { order },
            ),
            pi1::Pi1Verdict::BudgetExhausted => SimpleConnectivity::Unknown,
        }
    }

    /// Full systolicity check: connected, locally 6-large, simply connected.
    ///
    /// Local 6-largeness is decided before simple connectivity so `Unknown`
    /// can only come from the bounded simple-connectivity subroutine.
    pub fn check_systolic(&self, budget: usize) -> SystolicVerdict {
        if !self.is_connected() {
            return SystolicVerdict::Disconnected;
        }
        if let LocalLargeness::Witness { vertex, link_cycle } = self.is_locally_6_large() {
            return SystolicVerdict::NotLocally6Large { vertex, link_cycle };
        }
        match self.is_simply_connected_bounded(budget) {
            SimpleConnectivity::Yes => SystolicVerdict::Systolic,
            SimpleConnectivity::No(w) => SystolicVerdict::NotSimplyConnected(w),
            SimpleConnectivity::Unknown => SystolicVerdict::Unknown,
        }
    }

    /// Maximal cliques, each sorted, in deterministic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<VertexId>> {
        let n = self.labels.len();
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        let mut r = Vec::new();
        let p: Vec<usize> = (0..n).collect();
        self.bron_kerbosch(&mut r, p, Vec::new(), &mut out);
        for clique in out.iter_mut() {
            clique.sort();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if p.is_empty() && x.is_empty() {
            if !r.is_empty() {
                out.push(r.iter().map(|&i| VertexId(i)).collect());
            }
            return;
        }
        let pivot = p.iter().chain(x.iter()).copied().max_by_key(|&u| {
            p.iter().filter(|&&w| self.adj[u][w]).count()
        });
        let candidates: Vec<usize> = match pivot {
            Some(u) => p.iter().copied().filter(|&w| !self.adj[u][w]).collect(),
            None => p.clone(),
        };
        let mut p = p;
        let mut x = x;
        for v in candidates {
            r.push(v);
            let p2 = p.iter().copied().filter(|&w| self.adj[v][w]).collect();
            let x2 = x.iter().copied().filter(|&w| self.adj[v][w]).collect();
            self.bron_kerbosch(r, p2, x2, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    /// True iff every pair of the given vertices is adjacent.
    pub fn is_clique(&self, verts: &[VertexId]) -> bool {
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if a == b || !self.adjacent(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Sorted common neighbors of two vertices.
    pub fn common_neighbors(&self, a: VertexId, b: VertexId) -> Vec<VertexId> {
        self.neighbors(a)
            .iter()
            .copied()
            .filter(|&w| self.adjacent(w, b))
            .collect()
    }

    pub fn labels_of(&self, verts: &[VertexId]) -> Vec<String> {
        verts.iter().map(|&v| self.label(v).to_string()).collect()
    }
}
