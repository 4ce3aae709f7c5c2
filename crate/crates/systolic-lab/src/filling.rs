//! Minimal-area disc fillings of embedded cycles in a flag complex.
//!
//! A filling of a cycle is an embedded triangulated disc whose triangles are
//! faces of the ambient complex and whose boundary is exactly the given
//! cycle. The search peels the region inward from the boundary: each open
//! frontier edge must be covered by exactly one more ambient triangle, and
//! the third vertex of that triangle either extends the frontier, closes an
//! ear, or cuts the open cycle in two. Iterative deepening on the area makes
//! the first successful depth the minimum; among minimal fillings the one
//! with the lexicographically least sorted triangle list is returned.
//!
//! [`min_area_oracle`] recomputes the minimal area by a structurally
//! different search (closing whole vertex fans instead of single edges) and
//! exists purely as a cross-check.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{FlagComplex, VertexId};
use crate::disc::DiscTriangulation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FillError {
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("minimal filling is not a systolic disc: {0}")]
    MinimalDiscNotSystolic(String),
    #[error("no filling found: {0:?}")]
    Unfillable(FillFailure),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillFailure {
    /// The search space was exhausted without budget pruning.
    NoFilling,
    /// The area budget cut off branches; larger fillings may exist.
    BudgetExhausted,
}

/// Result of a minimal filling search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FillResult {
    Filled(Surface),
    NoFilling,
    BudgetExhausted,
}

/// Result of the independent minimal-area oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleArea {
    Area(usize),
    NoFilling,
    BudgetExhausted,
}

/// A triangulated disc together with an injective simplicial map into an
/// ambient complex. `embedding[i]` is the ambient vertex carrying disc
/// vertex `i` (in disc label order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surface {
    pub disc: DiscTriangulation,
    pub embedding: Vec<VertexId>,
}

/// A violated clause of the simplicial-injection conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceViolation {
    EmbeddingSizeMismatch { expected: usize, got: usize },
    NotInjective { image: String },
    EdgeNotMapped { a: String, b: String },
    TriangleNotMapped { triangle: [String; 3] },
}

impl Surface {
    /// Builds a surface from a disc and a label-to-label vertex map.
    pub fn from_label_map(
        disc: DiscTriangulation,
        map: &BTreeMap<String, String>,
        ambient: &FlagComplex,
    ) -> Result<Surface, FillError> {
        let mut embedding = Vec::with_capacity(disc.vertex_count());
        for name in disc.labels() {
            let image = map
                .get(name)
                .ok_or_else(|| FillError::UnknownVertex(name.clone()))?;
            embedding.push(
                ambient
                    .vertex(image)
                    .ok_or_else(|| FillError::UnknownVertex(image.clone()))?,
            );
        }
        Ok(Surface { disc, embedding })
    }

    /// The embedding as a disc-label to ambient-label map.
    pub fn embedding_labels(&self, ambient: &FlagComplex) -> BTreeMap<String, String> {
        self.disc
            .labels()
            .iter()
            .zip(&self.embedding)
            .map(|(d, &a)| (d.clone(), ambient.label(a).to_string()))
            .collect()
    }

    /// Image of the disc boundary in ambient vertex ids.
    pub fn boundary_image(&self) -> Vec<VertexId> {
        self.disc.boundary_idx().iter().map(|&v| self.embedding[v]).collect()
    }
}

/// Checks that a surface is an injective simplicial map clause by clause.
/// An empty violation list means the surface is valid.
pub fn verify_surface(ambient: &FlagComplex, surface: &Surface) -> Vec<SurfaceViolation> {
    let mut violations = Vec::new();
    let disc = &surface.disc;
    if surface.embedding.len() != disc.vertex_count() {
        violations.push(SurfaceViolation::EmbeddingSizeMismatch {
            expected: disc.vertex_count(),
            got: surface.embedding.len(),
        });
        return violations;
    }
    let mut seen: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, &img) in surface.embedding.iter().enumerate() {
        if seen.insert(img, i).is_some() {
            violations.push(SurfaceViolation::NotInjective {
                image: ambient.label(img).to_string(),
            });
        }
    }
    for (&(a, b), _) in disc.edges_idx() {
        if !ambient.adjacent(surface.embedding[a], surface.embedding[b]) {
            violations.push(SurfaceViolation::EdgeNotMapped {
                a: ambient.label(surface.embedding[a]).to_string(),
                b: ambient.label(surface.embedding[b]).to_string(),
            });
        }
    }
    for t in disc.triangles_idx() {
        let img = [
            surface.embedding[t[0]],
            surface.embedding[t[1]],
            surface.embedding[t[2]],
        ];
        if !ambient.is_clique(&img) {
            let mut labels = [
                ambient.label(img[0]).to_string(),
                ambient.label(img[1]).to_string(),
                ambient.label(img[2]).to_string(),
            ];
            labels.sort();
            violations.push(SurfaceViolation::TriangleNotMapped { triangle: labels });
        }
    }
    violations
}

/// Default area budget: the isoperimetric bound `l^2 / 6` holding in
/// systolic complexes.
pub fn isoperimetric_budget(boundary_len: usize) -> usize {
    (boundary_len * boundary_len) / 6
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn validate_cycle(x: &FlagComplex, cycle: &[VertexId]) -> Result<Vec<usize>, FillError> {
    if cycle.len() < 3 {
        return Err(FillError::InvalidCycle("length below 3".into()));
    }
    let mut seen = BTreeSet::new();
    for &v in cycle {
        if v.0 >= x.vertex_count() {
            return Err(FillError::InvalidCycle(format!("vertex #{} out of range", v.0)));
        }
        if !seen.insert(v) {
            return Err(FillError::InvalidCycle(format!(
                "repeated vertex {}",
                x.label(v)
            )));
        }
    }
    for i in 0..cycle.len() {
        let a = cycle[i];
        let b = cycle[(i + 1) % cycle.len()];
        if !x.adjacent(a, b) {
            return Err(FillError::InvalidCycle(format!(
                "({}, {}) is not an edge",
                x.label(a),
                x.label(b)
            )));
        }
    }
    Ok(cycle.iter().map(|v| v.0).collect())
}

/// Flat lookup table of the boundary edges, indexed by `lo * n + hi`.
fn boundary_edge_table(n: usize, boundary: &[usize]) -> Vec<bool> {
    let mut table = vec![false; n * n];
    for i in 0..boundary.len() {
        let (lo, hi) = edge_key(boundary[i], boundary[(i + 1) % boundary.len()]);
        table[lo * n + hi] = true;
    }
    table
}

/// Extra area certain for an open region: a boundary with no ambient
/// diagonal cannot be triangulated by chords alone, so its filling has an
/// interior vertex and area at least len instead of len - 2.
fn region_bonus(x: &FlagComplex, cycle: &[usize]) -> usize {
    let len = cycle.len();
    if len <= 3 {
        return 0;
    }
    for i in 0..len {
        for j in (i + 2)..len {
            if i == 0 && j == len - 1 {
                continue;
            }
            if x.adjacent(VertexId(cycle[i]), VertexId(cycle[j])) {
                return 0;
            }
        }
    }
    2
}

/// Shared bookkeeping for both searches. Edge caps: boundary edges may lie
/// in one triangle, all other edges in two. A vertex retires when it leaves
/// every open cycle and may not be reused afterwards.
///
/// Edge uses, occurrence counts and retirements are flat arrays indexed by
/// vertex, so every query is O(1) and a clone is a few memcpys; the ambient
/// complexes are small enough that the n^2 edge table costs nothing. `bonus`
/// runs parallel to `cycles` and holds each region's [`region_bonus`].
#[derive(Clone)]
struct SearchState {
    cycles: Vec<Vec<usize>>,
    bonus: Vec<usize>,
    placed: Vec<[usize; 3]>,
    edge_use: Vec<u8>,
    occurrence: Vec<u32>,
    retired: Vec<bool>,
    n: usize,
}

impl SearchState {
    fn start(x: &FlagComplex, with_bonus: bool, boundary: &[usize]) -> Self {
        let n = x.vertex_count();
        let mut state = SearchState {
            cycles: Vec::new(),
            bonus: Vec::new(),
            placed: Vec::new(),
            edge_use: vec![0; n * n],
            occurrence: vec![0; n],
            retired: vec![false; n],
            n,
        };
        state.push_cycle(with_bonus.then_some(x), boundary.to_vec());
        for &v in boundary {
            state.enter_cycle(v);
        }
        state
    }

    fn edge_index(&self, a: usize, b: usize) -> usize {
        let (lo, hi) = edge_key(a, b);
        lo * self.n + hi
    }

    fn push_cycle(&mut self, x: Option<&FlagComplex>, cycle: Vec<usize>) {
        self.bonus.push(x.map_or(0, |x| region_bonus(x, &cycle)));
        self.cycles.push(cycle);
    }

    fn pop_cycle(&mut self) -> Vec<usize> {
        self.bonus.pop();
        self.cycles.pop().expect("cycle was present")
    }

    fn area_lower_bound(&self) -> usize {
        self.placed.len()
            + self
                .cycles
                .iter()
                .zip(&self.bonus)
                .map(|(c, b)| c.len() - 2 + b)
                .sum::<usize>()
    }

    fn place_triangle(&mut self, mut t: [usize; 3]) -> bool {
        t.sort_unstable();
        match self.placed.binary_search(&t) {
            Ok(_) => false,
            Err(pos) => {
                self.placed.insert(pos, t);
                for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                    let i = self.edge_index(a, b);
                    self.edge_use[i] += 1;
                }
                true
            }
        }
    }

    fn unplace_triangle(&mut self, mut t: [usize; 3]) {
        t.sort_unstable();
        let pos = self.placed.binary_search(&t).expect("triangle was placed");
        self.placed.remove(pos);
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let i = self.edge_index(a, b);
            self.edge_use[i] -= 1;
        }
    }

    fn has_triangle(&self, mut t: [usize; 3]) -> bool {
        t.sort_unstable();
        self.placed.binary_search(&t).is_ok()
    }

    fn uses(&self, a: usize, b: usize) -> u8 {
        self.edge_use[self.edge_index(a, b)]
    }

    fn is_active(&self, v: usize) -> bool {
        self.occurrence[v] > 0
    }

    fn is_retired(&self, v: usize) -> bool {
        self.retired[v]
    }

    fn leave_cycle(&mut self, v: usize) {
        assert!(self.occurrence[v] > 0, "vertex was active");
        self.occurrence[v] -= 1;
        if self.occurrence[v] == 0 {
            self.retired[v] = true;
        }
    }

    /// Rolls back one [`Self::leave_cycle`], lifting the retirement it may
    /// have caused.
    fn undo_leave(&mut self, v: usize) {
        if self.occurrence[v] == 0 {
            self.retired[v] = false;
        }
        self.occurrence[v] += 1;
    }

    fn enter_cycle(&mut self, v: usize) {
        self.occurrence[v] += 1;
    }

    /// Rolls back one [`Self::enter_cycle`].
    fn undo_enter(&mut self, v: usize) {
        assert!(self.occurrence[v] > 0, "vertex was active");
        self.occurrence[v] -= 1;
    }
}

/// One admissible way to cover the frontier edge (`cycle[0]`, `cycle[1]`)
/// of the top open cycle.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Move {
    /// Third vertex is fresh; the frontier grows by one.
    Tent(usize),
    /// Third vertex is at position `j` of the rotated cycle (`2..len-1`);
    /// position 2 and len-1 are ears, interior positions cut the cycle.
    OnCycle(usize),
    /// Length-3 cycle closed by its spanning triangle.
    Close,
}

struct EdgeSearch<'a> {
    x: &'a FlagComplex,
    n: usize,
    boundary: &'a [usize],
    /// Boundary-edge table indexed by `lo * n + hi`; boundary edges cap at
    /// one triangle, all other edges at two.
    bedge: &'a [bool],
    target: usize,
    pruned: bool,
    /// Stop at the first closing set that assembles into a disc instead of
    /// enumerating all of them; used to probe whether a target is feasible.
    stop_at_first: bool,
    /// Use the chordless-region bound. A pass that must distinguish "no
    /// filling at all" from "pruned by the target" runs without it, since
    /// the stronger bound prunes nodes an exhaustiveness claim needs.
    use_bonus: bool,
    solutions: BTreeSet<Vec<[usize; 3]>>,
}

impl<'a> EdgeSearch<'a> {
    fn bonus_x(&self) -> Option<&'a FlagComplex> {
        self.use_bonus.then_some(self.x)
    }

    fn cap(&self, a: usize, b: usize) -> u8 {
        let (lo, hi) = edge_key(a, b);
        if self.bedge[lo * self.n + hi] {
            1
        } else {
            2
        }
    }

    /// Admissible moves for the edge starting at position `i` of `cycle`;
    /// move positions are relative to the rotation that puts `i` first.
    fn moves(&self, state: &SearchState, cycle: &[usize], i: usize) -> Vec<(usize, Move)> {
        let len = cycle.len();
        let (a, b) = (cycle[i], cycle[(i + 1) % len]);
        let mut out = Vec::new();
        for &VertexId(c) in self.x.neighbors(VertexId(a)) {
            if !self.x.adjacent(VertexId(c), VertexId(b)) {
                continue;
            }
            if state.is_retired(c) || state.has_triangle([a, b, c]) {
                continue;
            }
            if state.uses(a, c) + 1 > self.cap(a, c) || state.uses(b, c) + 1 > self.cap(b, c) {
                continue;
            }
            if let Some(p) = cycle.iter().position(|&v| v == c) {
                if len == 3 {
                    out.push((c, Move::Close));
                } else {
                    out.push((c, Move::OnCycle((p + len - i) % len)));
                }
            } else if state.is_active(c) {
                // Active on a different open cycle: covering the edge with
                // this triangle would merge two independent regions.
                continue;
            } else {
                out.push((c, Move::Tent(c)));
            }
        }
        out
    }

    fn dfs(&mut self, state: &mut SearchState) {
        if self.stop_at_first && !self.solutions.is_empty() {
            return;
        }
        if state.area_lower_bound() > self.target {
            self.pruned = true;
            return;
        }
        let Some(cycle) = state.cycles.last() else {
            // A probe only accepts closing sets that really form a disc, so
            // that the target it reports is the one the full pass returns.
            if !self.stop_at_first || assemble_surface(self.boundary, &state.placed).is_some() {
                self.solutions.insert(state.placed.clone());
            }
            return;
        };
        // Fail-first: expand the frontier edge with the fewest options. An
        // edge with at most one move is already the best possible pick, so
        // the scan stops there.
        let len = cycle.len();
        let mut chosen: Option<(usize, Vec<(usize, Move)>)> = None;
        for i in 0..len {
            let mv = self.moves(state, cycle, i);
            if chosen.as_ref().map_or(true, |(_, best)| mv.len() < best.len()) {
                let forced = mv.len() <= 1;
                chosen = Some((i, mv));
                if forced {
                    break;
                }
            }
        }
        let (i, moves) = chosen.unwrap();
        let mut rot: Vec<usize> = Vec::with_capacity(len);
        rot.extend_from_slice(&cycle[i..]);
        rot.extend_from_slice(&cycle[..i]);
        // Mutate in place and restore on backtrack.
        let popped = state.pop_cycle();
        for (c, mv) in moves {
            if self.stop_at_first && !self.solutions.is_empty() {
                break;
            }
            if !state.place_triangle([rot[0], rot[1], c]) {
                continue;
            }
            match mv {
                Move::Close => {
                    for &v in &rot {
                        state.leave_cycle(v);
                    }
                    self.dfs(state);
                    for &v in &rot {
                        state.undo_leave(v);
                    }
                }
                Move::Tent(c) => {
                    let mut grown = Vec::with_capacity(rot.len() + 1);
                    grown.push(rot[0]);
                    grown.push(c);
                    grown.extend_from_slice(&rot[1..]);
                    state.enter_cycle(c);
                    state.push_cycle(self.bonus_x(), grown);
                    self.dfs(state);
                    state.pop_cycle();
                    state.undo_enter(c);
                }
                Move::OnCycle(j) if j == 2 => {
                    // Ear at rot[1].
                    let mut shrunk = Vec::with_capacity(rot.len() - 1);
                    shrunk.push(rot[0]);
                    shrunk.extend_from_slice(&rot[2..]);
                    state.leave_cycle(rot[1]);
                    state.push_cycle(self.bonus_x(), shrunk);
                    self.dfs(state);
                    state.pop_cycle();
                    state.undo_leave(rot[1]);
                }
                Move::OnCycle(j) if j == rot.len() - 1 => {
                    // Ear at rot[0].
                    state.leave_cycle(rot[0]);
                    state.push_cycle(self.bonus_x(), rot[1..].to_vec());
                    self.dfs(state);
                    state.pop_cycle();
                    state.undo_leave(rot[0]);
                }
                Move::OnCycle(j) => {
                    // Cut: the region splits at c into two sub-discs.
                    let first: Vec<usize> = rot[1..=j].to_vec();
                    let mut second: Vec<usize> = rot[j..].to_vec();
                    second.push(rot[0]);
                    state.enter_cycle(c);
                    state.push_cycle(self.bonus_x(), second);
                    state.push_cycle(self.bonus_x(), first);
                    self.dfs(state);
                    state.pop_cycle();
                    state.pop_cycle();
                    state.undo_enter(c);
                }
            }
            state.unplace_triangle([rot[0], rot[1], c]);
        }
        state.push_cycle(self.bonus_x(), popped);
    }
}

fn assemble_surface(boundary: &[usize], triangles: &[[usize; 3]]) -> Option<Surface> {
    let mut ambient: BTreeSet<usize> = boundary.iter().copied().collect();
    for t in triangles {
        ambient.extend(t.iter().copied());
    }
    let ambient: Vec<usize> = ambient.into_iter().collect();
    let width = (ambient.len().max(2) - 1).to_string().len();
    let labels: Vec<String> =
        (0..ambient.len()).map(|i| format!("d{i:0width$}")).collect();
    let pos: BTreeMap<usize, usize> =
        ambient.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let local_triangles: Vec<[usize; 3]> = triangles
        .iter()
        .map(|t| [pos[&t[0]], pos[&t[1]], pos[&t[2]]])
        .collect();
    let local_boundary: Vec<usize> = boundary.iter().map(|v| pos[v]).collect();
    let disc = DiscTriangulation::from_indexed(labels, local_triangles, local_boundary).ok()?;
    Some(Surface {
        disc,
        embedding: ambient.into_iter().map(VertexId).collect(),
    })
}

/// Minimal-area embedded filling of an embedded cycle, searched by
/// iterative deepening up to `budget` triangles (default: the isoperimetric
/// bound). Ties are broken by the lexicographically least sorted triangle
/// list, so the result is deterministic.
///
/// Any disc with this boundary has area 2·V_int + l − 2 by the Euler count,
/// so only every other target is feasible; each target is first probed with
/// an early-exit pass, and the full enumeration (needed only for the
/// deterministic tie-break) runs once, at the minimal feasible target.
pub fn fill_minimal(
    x: &FlagComplex,
    cycle: &[VertexId],
    budget: Option<usize>,
) -> Result<FillResult, FillError> {
    let boundary = validate_cycle(x, cycle)?;
    let budget = budget.unwrap_or_else(|| isoperimetric_budget(boundary.len()));
    let n = x.vertex_count();
    let bedge = boundary_edge_table(n, &boundary);
    if budget < boundary.len() - 2 {
        // Even the polygon bound exceeds the budget; nothing to explore.
        return Ok(FillResult::BudgetExhausted);
    }
    let mut final_pruned = false;
    let mut target = boundary.len() - 2;
    while target <= budget {
        // The last probe decides NoFilling vs BudgetExhausted, so it runs
        // with the plain polygon bound only.
        let last = target + 2 > budget;
        let mut probe = EdgeSearch {
            x,
            n,
            boundary: &boundary,
            bedge: &bedge,
            target,
            pruned: false,
            stop_at_first: true,
            use_bonus: !last,
            solutions: BTreeSet::new(),
        };
        probe.dfs(&mut SearchState::start(x, !last, &boundary));
        if !probe.solutions.is_empty() {
            let mut full = EdgeSearch {
                x,
                n,
                boundary: &boundary,
                bedge: &bedge,
                target,
                pruned: false,
                stop_at_first: false,
                use_bonus: true,
                solutions: BTreeSet::new(),
            };
            full.dfs(&mut SearchState::start(x, true, &boundary));
            let mut solutions: Vec<Vec<[usize; 3]>> = full.solutions.into_iter().collect();
            solutions.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            for sol in &solutions {
                if let Some(surface) = assemble_surface(&boundary, sol) {
                    return Ok(FillResult::Filled(surface));
                }
            }
        }
        final_pruned = probe.pruned;
        target += 2;
    }
    if final_pruned {
        Ok(FillResult::BudgetExhausted)
    } else {
        Ok(FillResult::NoFilling)
    }
}

/// Independent recomputation of the minimal filling area. Instead of
/// covering one frontier edge at a time, this search closes a whole
/// triangle fan of one frontier vertex in one step and keeps a global
/// best, so it shares no search structure with [`fill_minimal`].
pub fn min_area_oracle(
    x: &FlagComplex,
    cycle: &[VertexId],
    budget: Option<usize>,
) -> Result<OracleArea, FillError> {
    let boundary = validate_cycle(x, cycle)?;
    let budget = budget.unwrap_or_else(|| isoperimetric_budget(boundary.len()));
    let n = x.vertex_count();
    let bedge = boundary_edge_table(n, &boundary);
    let mut oracle = FanSearch {
        x,
        n,
        bedge: &bedge,
        budget,
        boundary: boundary.clone(),
        best: None,
        pruned: false,
        use_bonus: true,
        mark: vec![0; n],
        stamp: 0,
    };
    oracle.dfs(&SearchState::start(x, true, &boundary));
    match oracle.best {
        Some(area) => Ok(OracleArea::Area(area)),
        None if !oracle.pruned => Ok(OracleArea::NoFilling),
        None => {
            // The chordless-region bound pruned everything; decide between
            // NoFilling and BudgetExhausted with the plain polygon bound.
            let mut plain = FanSearch {
                x,
                n,
                bedge: &bedge,
                budget,
                boundary: boundary.clone(),
                best: None,
                pruned: false,
                use_bonus: false,
                mark: vec![0; n],
                stamp: 0,
            };
            plain.dfs(&SearchState::start(x, false, &boundary));
            debug_assert!(plain.best.is_none(), "bonus pass missed a filling");
            if plain.pruned {
                Ok(OracleArea::BudgetExhausted)
            } else {
                Ok(OracleArea::NoFilling)
            }
        }
    }
}

struct FanSearch<'a> {
    x: &'a FlagComplex,
    n: usize,
    /// See [`EdgeSearch::bedge`].
    bedge: &'a [bool],
    budget: usize,
    boundary: Vec<usize>,
    best: Option<usize>,
    pruned: bool,
    /// See [`EdgeSearch::use_bonus`].
    use_bonus: bool,
    /// Membership stamp for the cycle currently expanded: `mark[v] ==
    /// stamp` says v lies on it. Refreshed per node, O(1) to query.
    mark: Vec<u64>,
    stamp: u64,
}

impl<'a> FanSearch<'a> {
    fn bonus_x(&self) -> Option<&'a FlagComplex> {
        self.use_bonus.then_some(self.x)
    }

    fn cap(&self, a: usize, b: usize) -> u8 {
        let (lo, hi) = edge_key(a, b);
        if self.bedge[lo * self.n + hi] {
            1
        } else {
            2
        }
    }

    fn mark_cycle(&mut self, cycle: &[usize]) {
        self.stamp += 1;
        for &u in cycle {
            self.mark[u] = self.stamp;
        }
    }

    fn dfs(&mut self, state: &SearchState) {
        let bound = state.area_lower_bound();
        if bound > self.budget {
            self.pruned = true;
            return;
        }
        if let Some(best) = self.best {
            // Areas of fillings of one cycle differ by multiples of two
            // (Euler count), so a bound of best - 1 is already hopeless.
            if bound + 1 >= best {
                return;
            }
        }
        if state.cycles.is_empty() {
            // Validate the assembled disc before accepting the area.
            if assemble_surface(&self.boundary, &state.placed).is_some() {
                self.best = Some(match self.best {
                    Some(b) => b.min(state.placed.len()),
                    None => state.placed.len(),
                });
            }
            return;
        }
        // Close the full fan of the cycle vertex whose fan has the fewest
        // admissible first steps, so dead branches surface early; ties go to
        // the least vertex.
        let cycle = state.cycles.last().unwrap().clone();
        let len = cycle.len();
        self.mark_cycle(&cycle);
        let mut choice: Option<(usize, usize)> = None;
        for pos in 0..len {
            let options = self.fan_options(state, &cycle, pos);
            if choice.map_or(true, |(best, _)| options < best) {
                choice = Some((options, pos));
                if options <= 1 {
                    break;
                }
            }
        }
        let (_, pos) = choice.expect("cycle is nonempty");
        let v = cycle[pos];
        let prev = cycle[(pos + len - 1) % len];
        let next = cycle[(pos + 1) % len];
        let mut path = vec![prev];
        let slack = self.budget - state.placed.len();
        let mut work = state.clone();
        self.extend_fan(&mut work, &cycle, v, next, &mut path, slack);
    }

    /// Counts the admissible first fan steps at position `pos` of the cycle,
    /// mirroring the filters of [`Self::extend_fan`].
    fn fan_options(&self, state: &SearchState, cycle: &[usize], pos: usize) -> usize {
        let len = cycle.len();
        let v = cycle[pos];
        let prev = cycle[(pos + len - 1) % len];
        let mut options = 0;
        for &VertexId(w) in self.x.neighbors(VertexId(v)) {
            if !self.x.adjacent(VertexId(w), VertexId(prev)) {
                continue;
            }
            if w == prev || state.is_retired(w) || state.has_triangle([v, prev, w]) {
                continue;
            }
            if state.is_active(w) && self.mark[w] != self.stamp {
                continue;
            }
            if state.uses(v, w) + 1 > self.cap(v, w) || state.uses(prev, w) + 1 > self.cap(prev, w)
            {
                continue;
            }
            options += 1;
        }
        options
    }

    /// Extends a fan path at `v` from `prev` toward `next`, spending one
    /// triangle per step. When the path reaches `next` the fan closes and
    /// the remaining region re-enters the main recursion. The state is
    /// mutated in place and restored on backtrack.
    fn extend_fan(
        &mut self,
        state: &mut SearchState,
        cycle: &[usize],
        v: usize,
        next: usize,
        path: &mut Vec<usize>,
        slack: usize,
    ) {
        if slack == 0 {
            self.pruned = true;
            return;
        }
        let last = *path.last().unwrap();
        for idx in 0..self.x.degree(VertexId(v)) {
            let VertexId(w) = self.x.neighbors(VertexId(v))[idx];
            if !self.x.adjacent(VertexId(w), VertexId(last)) {
                continue;
            }
            if path.contains(&w) || state.is_retired(w) {
                continue;
            }
            if state.has_triangle([v, last, w]) {
                continue;
            }
            // No merging with other open regions.
            let on_this_cycle = self.mark[w] == self.stamp;
            if state.is_active(w) && !on_this_cycle {
                continue;
            }
            if state.uses(v, w) + 1 > self.cap(v, w) || state.uses(last, w) + 1 > self.cap(last, w)
            {
                continue;
            }
            if !state.place_triangle([v, last, w]) {
                continue;
            }
            if w == next {
                self.close_fan(state, cycle, v, path);
                // The recursion restamps the mark; restore it for this
                // frame's cycle.
                self.mark_cycle(cycle);
            } else {
                path.push(w);
                self.extend_fan(state, cycle, v, next, path, slack - 1);
                path.pop();
            }
            state.unplace_triangle([v, last, w]);
        }
    }

    fn close_fan(&mut self, state: &SearchState, cycle: &[usize], v: usize, path: &[usize]) {
        let mut next_state = state.clone();
        next_state.pop_cycle();
        // New region boundary: the old cycle with the arc prev-v-next
        // replaced by the fan path interior (path runs prev -> ... -> next,
        // with next omitted).
        let pos = cycle.iter().position(|&u| u == v).unwrap();
        let mut seq: Vec<usize> = Vec::with_capacity(cycle.len() + path.len());
        // cycle = (..., prev, v, next, ...) rotated so v is first; seq runs
        // next, ..., prev and then the fan interior back toward next.
        for k in 1..cycle.len() {
            seq.push(cycle[(pos + k) % cycle.len()]);
        }
        seq.extend_from_slice(&path[1..]);
        // Split at repeated vertices: each repeat pinches the remaining
        // region into independent sub-discs. A two-vertex piece is a region
        // collapsed onto a single edge; it closes exactly when that edge
        // already carries its full quota of triangles.
        let mut stack = vec![seq];
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        while let Some(piece) = stack.pop() {
            let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
            let mut repeat: Option<(usize, usize)> = None;
            for (i, &u) in piece.iter().enumerate() {
                if let Some(&j) = first_seen.get(&u) {
                    repeat = Some((j, i));
                    break;
                }
                first_seen.insert(u, i);
            }
            match repeat {
                None => {
                    if piece.len() == 2 {
                        let (a, b) = (piece[0], piece[1]);
                        if next_state.uses(a, b) == self.cap(a, b) {
                            continue;
                        }
                        return;
                    }
                    if piece.len() < 2 {
                        return;
                    }
                    pieces.push(piece);
                }
                Some((j, i)) => {
                    let inner: Vec<usize> = piece[j..i].to_vec();
                    let mut outer: Vec<usize> = piece[..j].to_vec();
                    outer.extend_from_slice(&piece[i..]);
                    if inner.len() < 2 || outer.len() < 2 {
                        return;
                    }
                    stack.push(outer);
                    stack.push(inner);
                }
            }
        }
        // Occurrence bookkeeping: the old cycle's appearances are replaced
        // by the appearances in the kept pieces.
        let mut delta: BTreeMap<usize, i64> = BTreeMap::new();
        for &u in cycle {
            *delta.entry(u).or_insert(0) -= 1;
        }
        for piece in &pieces {
            for &u in piece {
                *delta.entry(u).or_insert(0) += 1;
            }
        }
        for (u, d) in delta {
            let old = next_state.occurrence[u] as i64;
            let new = old + d;
            assert!(new >= 0, "occurrence went negative");
            next_state.occurrence[u] = new as u32;
            if new == 0 && old > 0 {
                next_state.retired[u] = true;
            }
        }
        for piece in pieces {
            next_state.push_cycle(self.bonus_x(), piece);
        }
        self.dfs(&next_state);
    }
}

/// Fills the cycle minimally and checks that the minimal disc is systolic,
/// which is the expected behavior over systolic ambient complexes.
pub fn assert_minimal_is_systolic(
    x: &FlagComplex,
    cycle: &[VertexId],
    budget: Option<usize>,
) -> Result<Surface, FillError> {
    match fill_minimal(x, cycle, budget)? {
        FillResult::Filled(surface) => match surface.disc.is_systolic_disc() {
            Ok(crate::disc::DiscSystolicity::Systolic) => Ok(surface),
            Ok(crate::disc::DiscSystolicity::InteriorDefectPositive { vertex, defect }) => {
                Err(FillError::MinimalDiscNotSystolic(format!(
                    "interior vertex {vertex} has defect {defect}"
                )))
            }
            Err(e) => Err(FillError::MinimalDiscNotSystolic(e.to_string())),
        },
        FillResult::NoFilling => Err(FillError::Unfillable(FillFailure::NoFilling)),
        FillResult::BudgetExhausted => Err(FillError::Unfillable(FillFailure::BudgetExhausted)),
    }
}
