//! Simplicial group actions on flag complexes.
//!
//! An action is given by named generator permutations of the vertex set plus
//! relation words; everything downstream (invariance sets, orbit dichotomies,
//! the bicycle classification, equivariant surface spanning) works with that
//! presentation. All searches are deterministic: candidates are visited in
//! label order and ties are broken lexicographically.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::complex::{
    ComplexError, Cycle, FlagComplex, LocalLargeness, VertexId, DEFAULT_PI1_BUDGET,
};
use crate::filling::{self, FillResult, Surface};

/// Default cap on group-closure enumeration.
pub const DEFAULT_GROUP_BUDGET: usize = 10_000;

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum ActionError {
    #[error("vertex map is not a bijection: {witness} is hit twice or missed")]
    NotBijective { witness: String },
    #[error("edge ({a}, {b}) is not carried to an edge")]
    EdgeNotPreserved { a: String, b: String },
    #[error("relation {word} does not act as the identity (moves {witness})")]
    RelationViolated { word: String, witness: String },
    #[error("unknown generator {name}")]
    UnknownGenerator { name: String },
    #[error("generator {name} is not an involution")]
    NotInvolution { name: String },
    #[error("required edge ({a}, {b}) is missing; the complex is not systolic")]
    MissingEdge { a: String, b: String },
    #[error("expected the vertex and its image at distance 2, found {found:?}")]
    WrongDistance { found: Option<usize> },
    #[error("no geodesic from {from} to {to} inside the invariance set")]
    NoSuchPath { from: String, to: String },
    #[error("group closure exceeded the enumeration budget of {budget}")]
    GroupEnumerationBudgetExceeded { budget: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invariance sets of {first} and {second} do not intersect")]
    EmptyIntersection { first: String, second: String },
    #[error("orbit is neither a simplex nor a chordless closed cycle: {0}")]
    DichotomyViolated(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A vertex permutation of one fixed complex, stored as a dense map.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Automorphism {
    map: Vec<usize>,
}

impl Automorphism {
    pub fn identity(degree: usize) -> Self {
        Automorphism { map: (0..degree).collect() }
    }

    /// Builds a permutation from label pairs; labels not mentioned are fixed.
    pub fn from_label_map<'a, I>(x: &FlagComplex, entries: I) -> Result<Self, ActionError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map: Vec<usize> = (0..x.labels().len()).collect();
        for (from, to) in entries {
            let f = x.require_vertex(from)?;
            let t = x.require_vertex(to)?;
            map[f.0] = t.0;
        }
        let perm = Automorphism { map };
        perm.check_bijective(x)?;
        Ok(perm)
    }

    fn check_bijective(&self, x: &FlagComplex) -> Result<(), ActionError> {
        let mut seen = vec![false; self.map.len()];
        for &img in &self.map {
            if seen[img] {
                return Err(ActionError::NotBijective {
                    witness: x.label(VertexId(img)).to_string(),
                });
            }
            seen[img] = true;
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        VertexId(self.map[v.0])
    }

    /// Image of a vertex set, sorted.
    pub fn image_of_set(&self, verts: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = verts.iter().map(|&v| self.apply(v)).collect();
        out.sort();
        out
    }

    /// Composition applying `self` first, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism { map: self.map.iter().map(|&i| other.map[i]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut map = vec![0; self.map.len()];
        for (i, &img) in self.map.iter().enumerate() {
            map[img] = i;
        }
        Automorphism { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// True also for the identity; an involution here is any g with g*g = id.
    pub fn is_involution(&self) -> bool {
        self.then(self).is_identity()
    }

    /// Multiplicative order, or None if it exceeds `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut power = self.clone();
        for k in 1..=cap {
            if power.is_identity() {
                return Some(k);
            }
            power = power.then(self);
        }
        None
    }
}

/// A group action presented by named generators and relation words.
///
/// Relation words are strings of single-character generator names, read left
/// to right as successive applications.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionSpec {
    pub generators: BTreeMap<String, Automorphism>,
    pub relations: Vec<String>,
}

impl ActionSpec {
    pub fn new(generators: BTreeMap<String, Automorphism>, relations: Vec<String>) -> Self {
        ActionSpec { generators, relations }
    }

    pub fn generator(&self, name: &str) -> Result<&Automorphism, ActionError> {
        self.generators
            .get(name)
            .ok_or_else(|| ActionError::UnknownGenerator { name: name.to_string() })
    }

    /// Evaluates a relation word to a permutation.
    pub fn evaluate_word(&self, word: &str, degree: usize) -> Result<Automorphism, ActionError> {
        let mut acc = Automorphism::identity(degree);
        for ch in word.chars() {
            let g = self.generator(&ch.to_string())?;
            acc = acc.then(g);
        }
        Ok(acc)
    }
}

/// Checks that `f` permutes the vertices and carries edges to edges.
///
/// A permutation maps the (finite) edge set injectively, so preserving edges
/// forward already forces the inverse to preserve them as well.
pub fn verify_automorphism(x: &FlagComplex, f: &Automorphism) -> Result<(), ActionError> {
    if f.degree() != x.labels().len() {
        return Err(ActionError::HypothesisViolated(format!(
            "permutation degree {} does not match vertex count {}",
            f.degree(),
            x.labels().len()
        )));
    }
    f.check_bijective(x)?;
    for (a, b) in x.edges() {
        if !x.adjacent(f.apply(a), f.apply(b)) {
            return Err(ActionError::EdgeNotPreserved {
                a: x.label(a).to_string(),
                b: x.label(b).to_string(),
            });
        }
    }
    Ok(())
}

/// Checks every generator and every relation word of the presentation.
pub fn verify_action(x: &FlagComplex, spec: &ActionSpec) -> Result<(), ActionError> {
    for f in spec.generators.values() {
        verify_automorphism(x, f)?;
    }
    let degree = x.labels().len();
    for word in &spec.relations {
        let g = spec.evaluate_word(word, degree)?;
        if let Some(moved) = (0..degree).find(|&i| g.map[i] != i) {
            return Err(ActionError::RelationViolated {
                word: word.clone(),
                witness: x.label(VertexId(moved)).to_string(),
            });
        }
    }
    Ok(())
}

/// Orbit of a vertex under the group generated by the spec, sorted.
pub fn orbit_of_vertex(spec: &ActionSpec, seed: VertexId) -> Vec<VertexId> {
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(v) = queue.pop_front() {
        for g in spec.generators.values() {
            let w = g.apply(v);
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Orbit of a simplex (as a vertex set) under the generated group.
pub fn orbit_of_simplex(spec: &ActionSpec, simplex: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut start: Vec<VertexId> = simplex.to_vec();
    start.sort();
    start.dedup();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for g in spec.generators.values() {
            let img = g.image_of_set(&s);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    seen.into_iter().collect()
}

/// Orbit of a vertex under the subgroup generated by two involutions.
fn orbit_under_two(u: &Automorphism, v: &Automorphism, seed: VertexId) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(w) = queue.pop_front() {
        for g in [u, v] {
            let img = g.apply(w);
            if seen.insert(img) {
                queue.push_back(img);
            }
        }
    }
    seen
}

/// The invariance set of an involution: all vertices fixed or moved along an
/// edge, together with the full subcomplex they span.
#[derive(Clone, Debug)]
pub struct InvarianceSet {
    pub vertices: Vec<VertexId>,
    pub carrier: FlagComplex,
}

impl InvarianceSet {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Translates an ambient vertex into the carrier, if present.
    pub fn carrier_vertex(&self, x: &FlagComplex, v: VertexId) -> Option<VertexId> {
        self.carrier.vertex(x.label(v))
    }
}

pub fn invariance_set(x: &FlagComplex, u: &Automorphism) -> Result<InvarianceSet, ActionError> {
    verify_automorphism(x, u)?;
    if !u.is_involution() {
        return Err(ActionError::NotInvolution { name: "u".to_string() });
    }
    let vertices: Vec<VertexId> = x
        .vertices()
        .filter(|&v| {
            let img = u.apply(v);
            img == v || x.adjacent(v, img)
        })
        .collect();
    let carrier = x.induced_subcomplex(&vertices)?;
    Ok(InvarianceSet { vertices, carrier })
}

/// One failed clause of the invariance-set proposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum XuViolation {
    /// An ambient edge between invariance-set vertices missing in the carrier.
    NotFull { a: String, b: String },
    /// A vertex pair whose carrier distance differs from the ambient one.
    NotIsometric { a: String, b: String, ambient: Option<usize>, carrier: Option<usize> },
    /// A carrier vertex whose link has a short chordless cycle.
    NotLocally6Large { vertex: String },
    /// A maximal carrier clique that is not stabilized setwise.
    MaximalCliqueNotInvariant { clique: Vec<String> },
}

/// Outcome of checking the four invariance-set clauses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XuReport {
    /// Whether the ambient complex passed the bounded systolicity check.
    /// The clauses are only guaranteed when this holds.
    pub ambient_systolic: bool,
    pub vertices: Vec<String>,
    pub violations: Vec<XuViolation>,
}

impl XuReport {
    pub fn is_ok(&self) -> bool {
        self.ambient_systolic && self.violations.is_empty()
    }
}

/// Checks the four clauses satisfied by the invariance set of an involution
/// on a systolic complex: the carrier is full, isometrically embedded,
/// locally 6-large, and its maximal cliques are stabilized setwise.
///
/// Runs the clause checks even when the ambient systolicity certificate
/// fails, so the report stays usable as a diagnostic; the certificate outcome
/// is recorded in the report.
pub fn verify_xu_properties(x: &FlagComplex, u: &Automorphism) -> Result<XuReport, ActionError> {
    let set = invariance_set(x, u)?;
    let ambient_systolic = x.check_systolic(DEFAULT_PI1_BUDGET).is_systolic();
    let mut violations = Vec::new();

    for (i, &a) in set.vertices.iter().enumerate() {
        for &b in &set.vertices[i + 1..] {
            if x.adjacent(a, b) {
                let ca = set.carrier_vertex(x, a).expect("carrier keeps labels");
                let cb = set.carrier_vertex(x, b).expect("carrier keeps labels");
                if !set.carrier.adjacent(ca, cb) {
                    violations.push(XuViolation::NotFull {
                        a: x.label(a).to_string(),
                        b: x.label(b).to_string(),
                    });
                }
            }
        }
    }

    for (i, &a) in set.vertices.iter().enumerate() {
        let ca = set.carrier_vertex(x, a).expect("carrier keeps labels");
        let carrier_dist = set.carrier.bfs_distances(ca);
        for &b in &set.vertices[i + 1..] {
            let cb = set.carrier_vertex(x, b).expect("carrier keeps labels");
            let ambient = x.distance(a, b);
            let carrier = carrier_dist[cb.0];
            if ambient != carrier {
                violations.push(XuViolation::NotIsometric {
                    a: x.label(a).to_string(),
                    b: x.label(b).to_string(),
                    ambient,
                    carrier,
                });
            }
        }
    }

    if let LocalLargeness::Witness { vertex, .. } = set.carrier.is_locally_6_large() {
        violations.push(XuViolation::NotLocally6Large {
            vertex: set.carrier.label(vertex).to_string(),
        });
    }

    for clique in set.carrier.maximal_cliques() {
        let ambient: Vec<VertexId> = clique
            .iter()
            .map(|&cv| x.vertex(set.carrier.label(cv)).expect("carrier keeps labels"))
            .collect();
        let mut sorted = ambient.clone();
        sorted.sort();
        if u.image_of_set(&ambient) != sorted {
            violations.push(XuViolation::MaximalCliqueNotInvariant {
                clique: x.labels_of(&sorted),
            });
        }
    }

    Ok(XuReport {
        ambient_systolic,
        vertices: x.labels_of(&set.vertices),
        violations,
    })
}

/// Extends a clique inside the invariance set to the invariant simplex
/// spanned together with its image.
///
/// Every cross pair (a, b image) must be an edge; a missing one certifies
/// that the ambient complex is not systolic.
pub fn u_invariant_simplex_from_clique(
    x: &FlagComplex,
    u: &Automorphism,
    clique: &[VertexId],
) -> Result<Vec<VertexId>, ActionError> {
    let set = invariance_set(x, u)?;
    if clique.is_empty() || !x.is_clique(clique) {
        return Err(ActionError::HypothesisViolated(
            "input is not a nonempty clique".to_string(),
        ));
    }
    if let Some(&v) = clique.iter().find(|&&v| !set.contains(v)) {
        return Err(ActionError::HypothesisViolated(format!(
            "vertex {} is outside the invariance set",
            x.label(v)
        )));
    }
    for &a in clique {
        for &b in clique {
            let img = u.apply(b);
            if a != img && !x.adjacent(a, img) {
                return Err(ActionError::MissingEdge {
                    a: x.label(a).to_string(),
                    b: x.label(img).to_string(),
                });
            }
        }
    }
    let mut union: Vec<VertexId> = clique.to_vec();
    union.extend(clique.iter().map(|&v| u.apply(v)));
    union.sort();
    union.dedup();
    debug_assert!(x.is_clique(&union));
    Ok(union)
}

/// Orbit of a common invariance-set vertex under two commuting involutions;
/// it has at most four vertices and must span a simplex.
pub fn commuting_orbit_simplex(
    x: &FlagComplex,
    u: &Automorphism,
    v: &Automorphism,
    seed: VertexId,
) -> Result<Vec<VertexId>, ActionError> {
    let xu = invariance_set(x, u)?;
    let xv = invariance_set(x, v)?;
    if u.then(v) != v.then(u) {
        return Err(ActionError::HypothesisViolated(
            "the two involutions do not commute".to_string(),
        ));
    }
    if !xu.contains(seed) || !xv.contains(seed) {
        return Err(ActionError::HypothesisViolated(format!(
            "seed {} is not in both invariance sets",
            x.label(seed)
        )));
    }
    let orbit: Vec<VertexId> = orbit_under_two(u, v, seed).into_iter().collect();
    debug_assert!(orbit.len() <= 4);
    for (i, &a) in orbit.iter().enumerate() {
        for &b in &orbit[i + 1..] {
            if !x.adjacent(a, b) {
                return Err(ActionError::MissingEdge {
                    a: x.label(a).to_string(),
                    b: x.label(b).to_string(),
                });
            }
        }
    }
    Ok(orbit)
}

/// Common neighbors of a vertex at distance 2 from its image; they span a
/// stabilized simplex when the ambient complex is systolic.
pub fn mid_simplex(
    x: &FlagComplex,
    u: &Automorphism,
    seed: VertexId,
) -> Result<Vec<VertexId>, ActionError> {
    verify_automorphism(x, u)?;
    if !u.is_involution() {
        return Err(ActionError::NotInvolution { name: "u".to_string() });
    }
    let image = u.apply(seed);
    let found = x.distance(seed, image);
    if found != Some(2) {
        return Err(ActionError::WrongDistance { found });
    }
    let mids = x.common_neighbors(seed, image);
    for (i, &a) in mids.iter().enumerate() {
        for &b in &mids[i + 1..] {
            if !x.adjacent(a, b) {
                return Err(ActionError::MissingEdge {
                    a: x.label(a).to_string(),
                    b: x.label(b).to_string(),
                });
            }
        }
    }
    let mut image_set = u.image_of_set(&mids);
    image_set.sort();
    if image_set != mids {
        return Err(ActionError::HypothesisViolated(
            "common-neighbor simplex is not stabilized".to_string(),
        ));
    }
    Ok(mids)
}

/// A geodesic between two invariance-set vertices staying inside the set.
///
/// The path is found by breadth-first search in the carrier with ascending
/// tie-breaks, and must realize the ambient distance.
pub fn geodesic_in_xu(
    x: &FlagComplex,
    u: &Automorphism,
    from: VertexId,
    to: VertexId,
) -> Result<Vec<VertexId>, ActionError> {
    let set = invariance_set(x, u)?;
    for &v in &[from, to] {
        if !set.contains(v) {
            return Err(ActionError::HypothesisViolated(format!(
                "endpoint {} is outside the invariance set",
                x.label(v)
            )));
        }
    }
    let start = set.carrier_vertex(x, from).expect("carrier keeps labels");
    let goal = set.carrier_vertex(x, to).expect("carrier keeps labels");
    let n = set.carrier.labels().len();
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut dist: Vec<Option<usize>> = vec![None; n];
    dist[start.0] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[cur.0].unwrap();
        for &next in set.carrier.neighbors(cur) {
            if dist[next.0].is_none() {
                dist[next.0] = Some(d + 1);
                parent[next.0] = Some(cur);
                queue.push_back(next);
            }
        }
    }
    let no_path = || ActionError::NoSuchPath {
        from: x.label(from).to_string(),
        to: x.label(to).to_string(),
    };
    let carrier_dist = dist[goal.0].ok_or_else(no_path)?;
    if x.distance(from, to) != Some(carrier_dist) {
        return Err(no_path());
    }
    let mut path = vec![goal];
    let mut cur = goal;
    while let Some(p) = parent[cur.0] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    let ambient: Vec<VertexId> = path
        .iter()
        .map(|&cv| x.vertex(set.carrier.label(cv)).expect("carrier keeps labels"))
        .collect();
    Ok(ambient)
}

/// Enumerates the group generated by the spec, failing when the closure
/// exceeds `budget` elements.
pub fn enumerate_group(
    x: &FlagComplex,
    spec: &ActionSpec,
    budget: usize,
) -> Result<Vec<Automorphism>, ActionError> {
    let degree = x.labels().len();
    let id = Automorphism::identity(degree);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in spec.generators.values() {
            let prod = g.then(h);
            if seen.contains(&prod) {
                continue;
            }
            if seen.len() >= budget {
                return Err(ActionError::GroupEnumerationBudgetExceeded { budget });
            }
            seen.insert(prod.clone());
            queue.push_back(prod);
        }
    }
    Ok(seen.into_iter().collect())
}

/// Searches for the lexicographically least clique stabilized setwise by
/// every generator. Returns None when no invariant clique exists.
///
/// Invariant vertex sets are exactly unions of vertex orbits, so the search
/// enumerates orbits that are cliques and then unions of pairwise compatible
/// such orbits, pruning non-cliques.
pub fn invariant_simplex_search(
    x: &FlagComplex,
    spec: &ActionSpec,
    budget: Option<usize>,
) -> Result<Option<Vec<VertexId>>, ActionError> {
    verify_action(x, spec)?;
    let budget = budget.unwrap_or(DEFAULT_GROUP_BUDGET);
    enumerate_group(x, spec, budget)?;

    let mut assigned = vec![false; x.labels().len()];
    let mut orbit_cliques: Vec<Vec<VertexId>> = Vec::new();
    for v in x.vertices() {
        if assigned[v.0] {
            continue;
        }
        let orbit = orbit_of_vertex(spec, v);
        for &w in &orbit {
            assigned[w.0] = true;
        }
        if x.is_clique(&orbit) {
            orbit_cliques.push(orbit);
        }
    }
    if orbit_cliques.is_empty() {
        return Ok(None);
    }

    let m = orbit_cliques.len();
    let mut compatible = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let joined = orbit_cliques[i]
                .iter()
                .all(|&a| orbit_cliques[j].iter().all(|&b| x.adjacent(a, b)));
            compatible[i][j] = joined;
            compatible[j][i] = joined;
        }
    }

    let mut best: Option<Vec<VertexId>> = None;
    let mut chosen: Vec<usize> = Vec::new();
    fn consider(
        x: &FlagComplex,
        orbit_cliques: &[Vec<VertexId>],
        chosen: &[usize],
        best: &mut Option<Vec<VertexId>>,
    ) {
        let mut union: Vec<VertexId> = chosen
            .iter()
            .flat_map(|&i| orbit_cliques[i].iter().copied())
            .collect();
        union.sort();
        let better = match best {
            None => true,
            Some(b) => x.labels_of(&union) < x.labels_of(b),
        };
        if better {
            *best = Some(union);
        }
    }
    fn extend(
        x: &FlagComplex,
        orbit_cliques: &[Vec<VertexId>],
        compatible: &[Vec<bool>],
        from: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<VertexId>>,
    ) {
        for i in from..orbit_cliques.len() {
            if chosen.iter().any(|&j| !compatible[j][i]) {
                continue;
            }
            chosen.push(i);
            consider(x, orbit_cliques, chosen, best);
            extend(x, orbit_cliques, compatible, i + 1, chosen, best);
            chosen.pop();
        }
    }
    extend(x, &orbit_cliques, &compatible, 0, &mut chosen, &mut best);
    Ok(best)
}

/// Extracts the two generators of a dihedral-style spec in name order.
fn two_involutions<'a>(
    spec: &'a ActionSpec,
) -> Result<((&'a str, &'a Automorphism), (&'a str, &'a Automorphism)), ActionError> {
    if spec.generators.len() != 2 {
        return Err(ActionError::HypothesisViolated(format!(
            "expected exactly two generators, found {}",
            spec.generators.len()
        )));
    }
    let mut it = spec.generators.iter();
    let (un, u) = it.next().unwrap();
    let (vn, v) = it.next().unwrap();
    for (name, g) in [(un, u), (vn, v)] {
        if !g.is_involution() {
            return Err(ActionError::NotInvolution { name: name.clone() });
        }
    }
    Ok(((un, u), (vn, v)))
}

/// Builds the alternating orbit path (seed, seed^u, seed^{vu}, ...) of
/// length 2n, where n is the order of the composed rotation.
fn dihedral_orbit_path(
    u: &Automorphism,
    v: &Automorphism,
    seed: VertexId,
    n: usize,
) -> Vec<VertexId> {
    let mut path = vec![seed];
    let mut word = Automorphism::identity(u.degree());
    for k in 0..2 * n - 1 {
        let g = if k % 2 == 0 { u } else { v };
        word = g.then(&word);
        path.push(word.apply(seed));
    }
    path
}

/// Orbit classification for a seed in both invariance sets of a dihedral
/// pair: either the orbit spans a simplex, or it is a closed chordless cycle
/// through all of its vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrbitDichotomy {
    Simplex(Vec<VertexId>),
    ChordlessCycle(Vec<VertexId>),
}

fn classify_orbit(
    x: &FlagComplex,
    u: &Automorphism,
    v: &Automorphism,
    seed: VertexId,
    n: usize,
) -> Result<OrbitDichotomy, String> {
    let orbit: Vec<VertexId> = orbit_under_two(u, v, seed).into_iter().collect();
    if x.is_clique(&orbit) {
        return Ok(OrbitDichotomy::Simplex(orbit));
    }
    let path = dihedral_orbit_path(u, v, seed, n);
    let distinct: BTreeSet<VertexId> = path.iter().copied().collect();
    if distinct.len() != path.len() || distinct.len() != orbit.len() {
        return Err(format!(
            "orbit of {} has {} vertices but the alternating path visits {}",
            x.label(seed),
            orbit.len(),
            distinct.len()
        ));
    }
    for i in 0..path.len() {
        let a = path[i];
        let b = path[(i + 1) % path.len()];
        if !x.adjacent(a, b) {
            return Err(format!(
                "alternating path breaks at ({}, {})",
                x.label(a),
                x.label(b)
            ));
        }
    }
    for i in 0..path.len() {
        for j in i + 2..path.len() {
            if i == 0 && j == path.len() - 1 {
                continue;
            }
            if x.adjacent(path[i], path[j]) {
                return Err(format!(
                    "orbit cycle has the diagonal ({}, {})",
                    x.label(path[i]),
                    x.label(path[j])
                ));
            }
        }
    }
    Ok(OrbitDichotomy::ChordlessCycle(path))
}

/// Applies the orbit dichotomy to a seed lying in both invariance sets of a
/// two-involution action on a systolic complex.
pub fn hamiltonian_or_simplex(
    x: &FlagComplex,
    spec: &ActionSpec,
    seed: VertexId,
) -> Result<OrbitDichotomy, ActionError> {
    let ((_, u), (_, v)) = two_involutions(spec)?;
    verify_action(x, spec)?;
    if !x.check_systolic(DEFAULT_PI1_BUDGET).is_systolic() {
        return Err(ActionError::HypothesisViolated(
            "ambient complex is not certified systolic".to_string(),
        ));
    }
    let xu = invariance_set(x, u)?;
    let xv = invariance_set(x, v)?;
    if !xu.contains(seed) || !xv.contains(seed) {
        return Err(ActionError::HypothesisViolated(format!(
            "seed {} is not in both invariance sets",
            x.label(seed)
        )));
    }
    let n = u
        .then(v)
        .order(DEFAULT_GROUP_BUDGET)
        .ok_or(ActionError::GroupEnumerationBudgetExceeded { budget: DEFAULT_GROUP_BUDGET })?;
    classify_orbit(x, u, v, seed, n).map_err(ActionError::DichotomyViolated)
}

/// Outcome of the bicycle classification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BicycleOutcome {
    /// The seed orbit spans a stabilized simplex.
    SimplexCase { simplex: Vec<VertexId> },
    /// The seed orbit is a chordless closed cycle joined completely to a
    /// stabilized witness simplex inside both invariance sets.
    CycleCase { cycle: Vec<VertexId>, witness: VertexId, sigma: Vec<VertexId> },
    /// A clause failed; possible only outside the proposition's hypotheses.
    Violation { clause: String, detail: String },
}

/// Report of the bicycle classification for a dihedral action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BicycleReport {
    /// Order of the composed rotation.
    pub n: usize,
    /// Whether n lies within the proposition's bound of 5.
    pub n_within_bound: bool,
    pub outcome: BicycleOutcome,
}

/// Classifies the orbit of a seed under a dihedral action: simplex case, or
/// cycle case with a complete-join witness simplex.
///
/// Non-involutive generators, a non-systolic ambient complex, or a seed
/// outside both invariance sets are hard errors. A rotation order above 5 is
/// reported in the result instead, since runs beyond the bound are exactly
/// the ones that exhibit violations.
pub fn bicycle_check(
    x: &FlagComplex,
    spec: &ActionSpec,
    seed: VertexId,
) -> Result<BicycleReport, ActionError> {
    let ((_, u), (_, v)) = two_involutions(spec)?;
    verify_action(x, spec)?;
    if !x.check_systolic(DEFAULT_PI1_BUDGET).is_systolic() {
        return Err(ActionError::HypothesisViolated(
            "ambient complex is not certified systolic".to_string(),
        ));
    }
    let xu = invariance_set(x, u)?;
    let xv = invariance_set(x, v)?;
    if !xu.contains(seed) || !xv.contains(seed) {
        return Err(ActionError::HypothesisViolated(format!(
            "seed {} is not in both invariance sets",
            x.label(seed)
        )));
    }
    let n = u
        .then(v)
        .order(DEFAULT_GROUP_BUDGET)
        .ok_or(ActionError::GroupEnumerationBudgetExceeded { budget: DEFAULT_GROUP_BUDGET })?;
    let n_within_bound = n <= 5;

    let outcome = match classify_orbit(x, u, v, seed, n) {
        Ok(OrbitDichotomy::Simplex(simplex)) => BicycleOutcome::SimplexCase { simplex },
        Ok(OrbitDichotomy::ChordlessCycle(cycle)) =>
            match cycle_case_witness(x, u, v, &xu, &xv, &cycle) {
                Some((witness, sigma)) => BicycleOutcome::CycleCase { cycle, witness, sigma },
                None => BicycleOutcome::Violation {
                    clause: "no-join-witness".to_string(),
                    detail: "no stabilized simplex is joined to the whole orbit cycle"
                        .to_string(),
                },
            },
        Err(detail) => {
            let clause = if detail.contains("diagonal") {
                "cycle-has-diagonal"
            } else {
                "orbit-not-cycle"
            };
            BicycleOutcome::Violation { clause: clause.to_string(), detail }
        }
    };
    Ok(BicycleReport { n, n_within_bound, outcome })
}

/// Searches for a witness vertex whose orbit simplex is completely joined to
/// the cycle. Common neighbors of consecutive cycle triples are tried first,
/// then every remaining vertex, in ascending order.
fn cycle_case_witness(
    x: &FlagComplex,
    u: &Automorphism,
    v: &Automorphism,
    xu: &InvarianceSet,
    xv: &InvarianceSet,
    cycle: &[VertexId],
) -> Option<(VertexId, Vec<VertexId>)> {
    let len = cycle.len();
    let mut candidates: Vec<VertexId> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut triple_hits = BTreeSet::new();
    for i in 0..len {
        let prev = cycle[(i + len - 1) % len];
        let mid = cycle[i];
        let next = cycle[(i + 1) % len];
        for b in x.common_neighbors(prev, next) {
            if x.adjacent(b, mid) {
                triple_hits.insert(b);
            }
        }
    }
    for b in triple_hits {
        if seen.insert(b) {
            candidates.push(b);
        }
    }
    for b in x.vertices() {
        if seen.insert(b) {
            candidates.push(b);
        }
    }

    'candidate: for b in candidates {
        let sigma: Vec<VertexId> = orbit_under_two(u, v, b).into_iter().collect();
        if !x.is_clique(&sigma) {
            continue;
        }
        for &s in &sigma {
            if !xu.contains(s) || !xv.contains(s) {
                continue 'candidate;
            }
            for &c in cycle {
                if !x.adjacent(s, c) {
                    continue 'candidate;
                }
            }
        }
        return Some((b, sigma));
    }
    None
}

/// Outcome of the equivariant surface search for a triple of involutions.
#[derive(Clone, Debug)]
pub enum TriangleSurfaceOutcome {
    /// All three invariance sets meet; the common vertex extends to a clique
    /// stabilized by every generator.
    DegenerateAtVertex { vertex: VertexId, invariant_simplex: Vec<VertexId> },
    /// A minimal geodesic triangle over the pairwise intersections, together
    /// with a minimal filling of its boundary cycle.
    Spanned {
        corners: [VertexId; 3],
        sides: [Vec<VertexId>; 3],
        surface: Surface,
    },
}

/// Required generator names for a triangle-style spec.
const TRIANGLE_GENERATORS: [&str; 3] = ["r", "s", "t"];

/// Equivariant surface for an action of three involutions r, s, t whose
/// pairwise products have the declared finite orders.
///
/// When the three invariance sets share a vertex the configuration
/// degenerates: the least common vertex is returned together with the clique
/// spanned by its pairwise-subgroup orbits and their generator images, which
/// is checked to be stabilized by every generator. Otherwise corners are
/// drawn from the pairwise intersections, sides are geodesics inside the
/// respective invariance sets, and the shortest resulting embedded triangle
/// is filled minimally.
pub fn triangle_surface(
    x: &FlagComplex,
    spec: &ActionSpec,
    fill_budget: Option<usize>,
) -> Result<TriangleSurfaceOutcome, ActionError> {
    for name in TRIANGLE_GENERATORS {
        let g = spec.generator(name)?;
        if !g.is_involution() {
            return Err(ActionError::NotInvolution { name: name.to_string() });
        }
    }
    verify_action(x, spec)?;
    if !x.check_systolic(DEFAULT_PI1_BUDGET).is_systolic() {
        return Err(ActionError::HypothesisViolated(
            "ambient complex is not certified systolic".to_string(),
        ));
    }
    let r = spec.generator("r")?;
    let s = spec.generator("s")?;
    let t = spec.generator("t")?;
    let sets = [
        invariance_set(x, r)?,
        invariance_set(x, s)?,
        invariance_set(x, t)?,
    ];

    let pair = |a: &InvarianceSet, b: &InvarianceSet| -> Vec<VertexId> {
        a.vertices.iter().copied().filter(|&v| b.contains(v)).collect()
    };
    let rs = pair(&sets[0], &sets[1]);
    let st = pair(&sets[1], &sets[2]);
    let rt = pair(&sets[0], &sets[2]);
    for (inter, first, second) in [(&rs, "r", "s"), (&st, "s", "t"), (&rt, "r", "t")] {
        if inter.is_empty() {
            return Err(ActionError::EmptyIntersection {
                first: first.to_string(),
                second: second.to_string(),
            });
        }
    }

    let triple: Vec<VertexId> = rs.iter().copied().filter(|&v| sets[2].contains(v)).collect();
    if let Some(&w) = triple.first() {
        let mut m: BTreeSet<VertexId> = BTreeSet::new();
        for (a, b) in [(r, s), (r, t), (s, t)] {
            m.extend(orbit_under_two(a, b, w));
        }
        let m: Vec<VertexId> = m.into_iter().collect();
        let mut span: BTreeSet<VertexId> = m.iter().copied().collect();
        for g in [t, s, r] {
            span.extend(m.iter().map(|&v| g.apply(v)));
        }
        let span: Vec<VertexId> = span.into_iter().collect();
        for (i, &a) in span.iter().enumerate() {
            for &b in &span[i + 1..] {
                if !x.adjacent(a, b) {
                    return Err(ActionError::MissingEdge {
                        a: x.label(a).to_string(),
                        b: x.label(b).to_string(),
                    });
                }
            }
        }
        for g in [r, s, t] {
            if g.image_of_set(&span) != span {
                return Err(ActionError::HypothesisViolated(
                    "spanned clique is not stabilized by every generator".to_string(),
                ));
            }
        }
        return Ok(TriangleSurfaceOutcome::DegenerateAtVertex {
            vertex: w,
            invariant_simplex: span,
        });
    }

    spanned_surface(x, [&rs, &st, &rt], [s, t, r], fill_budget)
}

/// Core of the non-degenerate branch: minimize (perimeter, corner labels)
/// over corner triples, route each side as a geodesic inside the invariance
/// set of the corresponding involution, and fill the first embedded triangle
/// cycle minimally.
///
/// `domains` are the corner domains (a, b, c); `side_maps[0]` guards the
/// a-b side, `side_maps[1]` the b-c side, `side_maps[2]` the c-a side.
fn spanned_surface(
    x: &FlagComplex,
    domains: [&Vec<VertexId>; 3],
    side_maps: [&Automorphism; 3],
    fill_budget: Option<usize>,
) -> Result<TriangleSurfaceOutcome, ActionError> {
    let mut triples: Vec<(usize, [VertexId; 3])> = Vec::new();
    for &a in domains[0] {
        let da = x.bfs_distances(a);
        for &b in domains[1] {
            let dab = match da[b.0] {
                Some(d) => d,
                None => continue,
            };
            let db = x.bfs_distances(b);
            for &c in domains[2] {
                let (dbc, dca) = match (db[c.0], da[c.0]) {
                    (Some(p), Some(q)) => (p, q),
                    _ => continue,
                };
                triples.push((dab + dbc + dca, [a, b, c]));
            }
        }
    }
    triples.sort_by(|(p1, t1), (p2, t2)| {
        (p1, x.labels_of(t1)).cmp(&(p2, x.labels_of(t2)))
    });

    for (_, [a, b, c]) in triples {
        let sides = [
            geodesic_in_xu(x, side_maps[0], a, b),
            geodesic_in_xu(x, side_maps[1], b, c),
            geodesic_in_xu(x, side_maps[2], c, a),
        ];
        let sides = match sides {
            [Ok(p), Ok(q), Ok(r)] => [p, q, r],
            _ => continue,
        };
        let mut cycle: Vec<VertexId> = sides[0].clone();
        cycle.extend(sides[1][1..].iter().copied());
        cycle.extend(sides[2][1..sides[2].len() - 1].iter().copied());
        let distinct: BTreeSet<VertexId> = cycle.iter().copied().collect();
        if cycle.len() < 3 || distinct.len() != cycle.len() {
            continue;
        }
        if x.validate_cycle(&Cycle::new(cycle.clone())).is_err() {
            continue;
        }
        match filling::fill_minimal(x, &cycle, fill_budget) {
            Ok(FillResult::Filled(surface)) => {
                return Ok(TriangleSurfaceOutcome::Spanned {
                    corners: [a, b, c],
                    sides,
                    surface,
                });
            }
            Ok(_) | Err(_) => continue,
        }
    }
    Err(ActionError::HypothesisViolated(
        "no corner triple yields a fillable embedded cycle".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(vertices: &[&str], edges: &[(&str, &str)]) -> FlagComplex {
        FlagComplex::from_edge_list(vertices, edges).expect("test complex is valid")
    }

    /// Wheel: hub "c" joined to the rim cycle x0..x{n-1}.
    fn wheel(n: usize) -> FlagComplex {
        let labels: Vec<String> = std::iter::once("c".to_string())
            .chain((0..n).map(|i| format!("x{i}")))
            .collect();
        let mut edges: Vec<(String, String)> = Vec::new();
        for i in 0..n {
            edges.push((format!("x{i}"), format!("x{}", (i + 1) % n)));
            edges.push(("c".to_string(), format!("x{i}")));
        }
        let vertex_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let edge_refs: Vec<(&str, &str)> =
            edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        complex(&vertex_refs, &edge_refs)
    }

    /// Rim reflection of wheel(n) fixing no rim vertex: x_i -> x_{k-i mod n}.
    fn rim_reflection(x: &FlagComplex, n: usize, k: usize) -> Automorphism {
        let pairs: Vec<(String, String)> = (0..n)
            .map(|i| (format!("x{i}"), format!("x{}", (k + n - i % n) % n)))
            .collect();
        Automorphism::from_label_map(x, pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))
            .expect("reflection is a permutation")
    }

    fn names(x: &FlagComplex, verts: &[VertexId]) -> Vec<String> {
        x.labels_of(verts)
    }

    #[test]
    fn path_transposition_is_not_an_automorphism() {
        let x = complex(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        let f = Automorphism::from_label_map(&x, [("a", "b"), ("b", "a")]).unwrap();
        let err = verify_automorphism(&x, &f).unwrap_err();
        assert_eq!(err, ActionError::EdgeNotPreserved { a: "b".into(), b: "c".into() });
    }

    #[test]
    fn non_bijective_label_map_is_rejected() {
        let x = complex(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let err = Automorphism::from_label_map(&x, [("a", "b")]).unwrap_err();
        assert_eq!(err, ActionError::NotBijective { witness: "b".into() });
    }

    #[test]
    fn relation_words_are_checked() {
        let n = 10;
        let x = wheel(n);
        let u = rim_reflection(&x, n, 1);
        let v = rim_reflection(&x, n, 3);
        let spec = ActionSpec::new(
            BTreeMap::from([("u".to_string(), u), ("v".to_string(), v)]),
            vec!["uu".into(), "vv".into(), "uvuvuvuv".into()],
        );
        let err = verify_action(&x, &spec).unwrap_err();
        match err {
            ActionError::RelationViolated { word, .. } => assert_eq!(word, "uvuvuvuv"),
            other => panic!("expected relation violation, got {other:?}"),
        }
        let dihedral5 = ActionSpec {
            relations: vec!["uu".into(), "vv".into(), "uvuvuvuvuv".into()],
            ..spec
        };
        verify_action(&x, &dihedral5).expect("rotation by 2 has order 5");
    }

    #[test]
    fn invariance_set_of_hexagon_edge_reflection() {
        let x = complex(
            &["v0", "v1", "v2", "v3", "v4", "v5"],
            &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v0")],
        );
        let pairs: Vec<(String, String)> =
            (0..6).map(|i| (format!("v{i}"), format!("v{}", (1 + 6 - i) % 6))).collect();
        let u = Automorphism::from_label_map(&x, pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))
            .unwrap();
        let set = invariance_set(&x, &u).unwrap();
        assert_eq!(names(&x, &set.vertices), ["v0", "v1", "v3", "v4"]);
        let edges = set.carrier.edges();
        let labeled: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| (set.carrier.label(a).to_string(), set.carrier.label(b).to_string()))
            .collect();
        assert_eq!(labeled, [("v0".to_string(), "v1".to_string()), ("v3".to_string(), "v4".to_string())]);
    }

    #[test]
    fn rotation_is_not_an_involution() {
        let x = complex(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let rot = Automorphism::from_label_map(&x, [("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert!(matches!(invariance_set(&x, &rot), Err(ActionError::NotInvolution { .. })));
    }

    #[test]
    fn vertex_axis_invariance_set_and_geodesic() {
        let n = 10;
        let x = wheel(n);
        let u = rim_reflection(&x, n, 0);
        let set = invariance_set(&x, &u).unwrap();
        assert_eq!(names(&x, &set.vertices), ["c", "x0", "x5"]);
        let x0 = x.vertex("x0").unwrap();
        let x5 = x.vertex("x5").unwrap();
        let path = geodesic_in_xu(&x, &u, x0, x5).unwrap();
        assert_eq!(names(&x, &path), ["x0", "c", "x5"]);
    }

    #[test]
    fn edge_axis_invariance_set_satisfies_all_clauses() {
        let n = 10;
        let x = wheel(n);
        let u = rim_reflection(&x, n, 1);
        let set = invariance_set(&x, &u).unwrap();
        assert_eq!(names(&x, &set.vertices), ["c", "x0", "x1", "x5", "x6"]);
        let report = verify_xu_properties(&x, &u).unwrap();
        assert!(report.ambient_systolic);
        assert_eq!(report.violations, []);
    }

    #[test]
    fn carrier_distance_violation_is_detected_on_a_square() {
        let x = complex(
            &["v0", "v1", "v2", "v3"],
            &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v0")],
        );
        let u = Automorphism::from_label_map(&x, [("v1", "v3"), ("v3", "v1")]).unwrap();
        let report = verify_xu_properties(&x, &u).unwrap();
        assert!(!report.ambient_systolic);
        assert_eq!(
            report.violations,
            [XuViolation::NotIsometric {
                a: "v0".into(),
                b: "v2".into(),
                ambient: Some(2),
                carrier: None,
            }]
        );
    }

    #[test]
    fn clique_extends_to_invariant_simplex() {
        let n = 10;
        let x = wheel(n);
        let u = rim_reflection(&x, n, 1);
        let clique = [x.vertex("c").unwrap(), x.vertex("x1").unwrap()];
        let simplex = u_invariant_simplex_from_clique(&x, &u, &clique).unwrap();
        assert_eq!(names(&x, &simplex), ["c", "x0", "x1"]);
    }

    #[test]
    fn klein_four_orbit_spans_the_tetrahedron() {
        let x = complex(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
        );
        let u = Automorphism::from_label_map(&x, [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")])
            .unwrap();
        let v = Automorphism::from_label_map(&x, [("a", "c"), ("c", "a"), ("b", "d"), ("d", "b")])
            .unwrap();
        let orbit = commuting_orbit_simplex(&x, &u, &v, x.vertex("a").unwrap()).unwrap();
        assert_eq!(names(&x, &orbit), ["a", "b", "c", "d"]);
    }

    #[test]
    fn non_commuting_involutions_are_rejected() {
        let x = complex(
            &["v0", "v1", "v2", "v3", "v4", "v5"],
            &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v0")],
        );
        let refl = |k: usize| {
            let pairs: Vec<(String, String)> =
                (0..6).map(|i| (format!("v{i}"), format!("v{}", (k + 6 - i) % 6))).collect();
            Automorphism::from_label_map(&x, pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))
                .unwrap()
        };
        let err = commuting_orbit_simplex(&x, &refl(0), &refl(2), x.vertex("v0").unwrap());
        assert!(matches!(err, Err(ActionError::HypothesisViolated(_))));
    }

    #[test]
    fn mid_simplex_of_wheel_is_the_hub() {
        let n = 10;
        let x = wheel(n);
        let u = rim_reflection(&x, n, 1);
        let mids = mid_simplex(&x, &u, x.vertex("x2").unwrap()).unwrap();
        assert_eq!(names(&x, &mids), ["c"]);
        let err = mid_simplex(&x, &u, x.vertex("x0").unwrap()).unwrap_err();
        assert_eq!(err, ActionError::WrongDistance { found: Some(1) });
    }

    #[test]
    fn mid_simplex_detects_missing_edge_on_a_square() {
        let x = complex(
            &["v0", "v1", "v2", "v3"],
            &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v0")],
        );
        let u = Automorphism::from_label_map(&x, [("v1", "v3"), ("v3", "v1")]).unwrap();
        let err = mid_simplex(&x, &u, x.vertex("v1").unwrap()).unwrap_err();
        assert_eq!(err, ActionError::MissingEdge { a: "v0".into(), b: "v2".into() });
    }

    #[test]
    fn group_enumeration_respects_the_budget() {
        let x = complex(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
        );
        let u = Automorphism::from_label_map(&x, [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")])
            .unwrap();
        let v = Automorphism::from_label_map(&x, [("a", "c"), ("c", "a"), ("b", "d"), ("d", "b")])
            .unwrap();
        let spec = ActionSpec::new(
            BTreeMap::from([("u".to_string(), u), ("v".to_string(), v)]),
            vec!["uu".into(), "vv".into(), "uvuv".into()],
        );
        let group = enumerate_group(&x, &spec, 100).unwrap();
        assert_eq!(group.len(), 4);
        assert!(matches!(
            enumerate_group(&x, &spec, 3),
            Err(ActionError::GroupEnumerationBudgetExceeded { budget: 3 })
        ));
        let best = invariant_simplex_search(&x, &spec, None).unwrap();
        assert_eq!(names(&x, &best.unwrap()), ["a", "b", "c", "d"]);
    }

    #[test]
    fn swapped_disjoint_edges_have_no_invariant_simplex() {
        let x = complex(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        let u = Automorphism::from_label_map(
            &x,
            [("a", "c"), ("c", "a"), ("b", "d"), ("d", "b")],
        )
        .unwrap();
        let spec = ActionSpec::new(
            BTreeMap::from([("u".to_string(), u)]),
            vec!["uu".into()],
        );
        assert_eq!(invariant_simplex_search(&x, &spec, None).unwrap(), None);
    }

    #[test]
    fn rotation_action_fixes_only_the_hub() {
        let n = 10;
        let x = wheel(n);
        let pairs: Vec<(String, String)> =
            (0..n).map(|i| (format!("x{i}"), format!("x{}", (i + 1) % n))).collect();
        let rot = Automorphism::from_label_map(&x, pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))
            .unwrap();
        let spec = ActionSpec::new(
            BTreeMap::from([("g".to_string(), rot)]),
            vec!["gggggggggg".into()],
        );
        let best = invariant_simplex_search(&x, &spec, None).unwrap();
        assert_eq!(names(&x, &best.unwrap()), ["c"]);
    }

    fn dihedral5_on_wheel10() -> (FlagComplex, ActionSpec) {
        let n = 10;
        let x = wheel(n);
        let u = rim_reflection(&x, n, 1);
        let v = rim_reflection(&x, n, 3);
        let spec = ActionSpec::new(
            BTreeMap::from([("u".to_string(), u), ("v".to_string(), v)]),
            vec!["uu".into(), "vv".into(), "uvuvuvuvuv".into()],
        );
        (x, spec)
    }

    #[test]
    fn dihedral_orbit_of_rim_vertex_is_the_chordless_rim() {
        let (x, spec) = dihedral5_on_wheel10();
        let seed = x.vertex("x1").unwrap();
        let dichotomy = hamiltonian_or_simplex(&x, &spec, seed).unwrap();
        match dichotomy {
            OrbitDichotomy::ChordlessCycle(cycle) => {
                assert_eq!(
                    names(&x, &cycle),
                    ["x1", "x0", "x9", "x8", "x7", "x6", "x5", "x4", "x3", "x2"]
                );
            }
            other => panic!("expected cycle, got {other:?}"),
        }
        let hub = x.vertex("c").unwrap();
        assert_eq!(
            hamiltonian_or_simplex(&x, &spec, hub).unwrap(),
            OrbitDichotomy::Simplex(vec![hub])
        );
    }

    #[test]
    fn bicycle_classification_of_the_wheel() {
        let (x, spec) = dihedral5_on_wheel10();
        let report = bicycle_check(&x, &spec, x.vertex("x1").unwrap()).unwrap();
        assert_eq!(report.n, 5);
        assert!(report.n_within_bound);
        match report.outcome {
            BicycleOutcome::CycleCase { witness, sigma, cycle } => {
                assert_eq!(x.label(witness), "c");
                assert_eq!(names(&x, &sigma), ["c"]);
                assert_eq!(cycle.len(), 10);
            }
            other => panic!("expected cycle case, got {other:?}"),
        }
        let hub_report = bicycle_check(&x, &spec, x.vertex("c").unwrap()).unwrap();
        assert!(matches!(hub_report.outcome, BicycleOutcome::SimplexCase { .. }));
    }

    #[test]
    fn bicycle_seed_outside_both_invariance_sets_is_rejected() {
        let (x, spec) = dihedral5_on_wheel10();
        let err = bicycle_check(&x, &spec, x.vertex("x3").unwrap()).unwrap_err();
        assert!(matches!(err, ActionError::HypothesisViolated(_)));
    }

    fn triangle_spec(gens: [Automorphism; 3], st_order: usize) -> ActionSpec {
        let [r, s, t] = gens;
        ActionSpec::new(
            BTreeMap::from([
                ("r".to_string(), r),
                ("s".to_string(), s),
                ("t".to_string(), t),
            ]),
            vec![
                "rr".into(),
                "ss".into(),
                "tt".into(),
                "rsrs".into(),
                "st".repeat(st_order),
                "rt".repeat(5),
            ],
        )
    }

    #[test]
    fn trivial_triangle_action_degenerates_at_the_least_vertex() {
        let x = wheel(10);
        let id = Automorphism::identity(x.labels().len());
        let spec = triangle_spec([id.clone(), id.clone(), id], 4);
        match triangle_surface(&x, &spec, None).unwrap() {
            TriangleSurfaceOutcome::DegenerateAtVertex { vertex, invariant_simplex } => {
                assert_eq!(x.label(vertex), "c");
                assert_eq!(names(&x, &invariant_simplex), ["c"]);
            }
            TriangleSurfaceOutcome::Spanned { .. } => panic!("expected degenerate outcome"),
        }
    }

    #[test]
    fn involution_quotient_triangle_action_degenerates_with_a_stabilized_clique() {
        let n = 10;
        let x = wheel(n);
        let sigma = rim_reflection(&x, n, 1);
        let spec = triangle_spec([sigma.clone(), sigma.clone(), sigma], 4);
        match triangle_surface(&x, &spec, None).unwrap() {
            TriangleSurfaceOutcome::DegenerateAtVertex { vertex, invariant_simplex } => {
                assert_eq!(x.label(vertex), "c");
                assert_eq!(names(&x, &invariant_simplex), ["c"]);
            }
            TriangleSurfaceOutcome::Spanned { .. } => panic!("expected degenerate outcome"),
        }
    }

    #[test]
    fn spanned_surface_core_fills_a_geodesic_triangle() {
        let x = complex(
            &["a", "b0", "b1", "c0", "c1", "c2"],
            &[
                ("a", "b0"),
                ("a", "b1"),
                ("b0", "b1"),
                ("b0", "c0"),
                ("b0", "c1"),
                ("b1", "c1"),
                ("b1", "c2"),
                ("c0", "c1"),
                ("c1", "c2"),
            ],
        );
        let id = Automorphism::identity(x.labels().len());
        let corners = [
            vec![x.vertex("a").unwrap()],
            vec![x.vertex("c0").unwrap()],
            vec![x.vertex("c2").unwrap()],
        ];
        let outcome =
            spanned_surface(&x, [&corners[0], &corners[1], &corners[2]], [&id, &id, &id], None)
                .unwrap();
        match outcome {
            TriangleSurfaceOutcome::Spanned { corners, sides, surface } => {
                assert_eq!(names(&x, &corners), ["a", "c0", "c2"]);
                assert_eq!(names(&x, &sides[0]), ["a", "b0", "c0"]);
                assert_eq!(names(&x, &sides[1]), ["c0", "c1", "c2"]);
                assert_eq!(names(&x, &sides[2]), ["c2", "b1", "a"]);
                assert_eq!(surface.disc.area(), 4);
                assert!(filling::verify_surface(&x, &surface).is_empty());
            }
            TriangleSurfaceOutcome::DegenerateAtVertex { .. } => {
                panic!("expected spanned surface")
            }
        }
    }
}
