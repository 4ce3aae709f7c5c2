//! Boundary edge swaps on embedded discs with three labeled geodesic sides.
//!
//! A labeled surface is an embedded disc whose boundary is split by three
//! corners into three sides, each one a geodesic of the ambient complex. An
//! edge swap replaces the two disc triangles over a boundary quadrilateral
//! (p, m, m', q) by the two triangles over the other diagonal, trading the
//! edge (q, m) for (p, m'). A swap keeps the area, the boundary, and the
//! defect sum along the swapped side; it moves one unit of defect from p to
//! q, changes the defect along each other side by at most one, and leaves
//! the swapped side's corner defects untouched. Repeated swaps push a
//! defect-1 vertex along its side until it sits next to a corner.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::FlagComplex;
use crate::disc::DiscTriangulation;
use crate::filling::{verify_surface, Surface};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwapError {
    #[error("surface is not a valid embedding: {0}")]
    SurfaceInvalid(String),
    #[error("corners and sides do not partition the boundary: {0}")]
    SidesMismatch(String),
    #[error("side {side:?} has {length} edges but its endpoints are at ambient distance {distance}")]
    SideNotGeodesic { side: Side, length: usize, distance: usize },
    #[error("invalid move: {0}")]
    MoveInvalid(String),
    #[error("ambient complex has no edge ({0}, {1}) for the replacement diagonal")]
    MissingAmbientEdge(String, String),
    #[error("defect pattern ({0}, {1}) at (p, q), expected (1, 0)")]
    DefectPatternMismatch(i64, i64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// One of the three boundary sides of a labeled surface. Side k runs from
/// corner k to corner k + 1 cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    U,
    V,
    W,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::U, Side::V, Side::W];

    pub fn index(self) -> usize {
        match self {
            Side::U => 0,
            Side::V => 1,
            Side::W => 2,
        }
    }
}

/// An embedded disc with three corner vertices and three boundary sides,
/// all in disc vertex indices. The sides concatenate to the boundary cycle
/// and each side maps to a geodesic of the ambient complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSurface {
    pub surface: Surface,
    pub corners: [usize; 3],
    pub sides: [Vec<usize>; 3],
}

/// A boundary quadrilateral flip: p and q are adjacent inner vertices of
/// one side, m and m' complete a 4-cycle (p, m, m', q) off that side, and
/// the diagonal (q, m) carries the triangles (p, q, m) and (q, m, m').
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapMove {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub m_prime: usize,
}

impl SwapMove {
    /// The move undoing this one on the swapped surface.
    pub fn inverse(self) -> SwapMove {
        SwapMove { p: self.q, q: self.p, m: self.m_prime, m_prime: self.m }
    }
}

/// True when the two sequences agree as cyclic words up to rotation and
/// reflection.
fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    (0..n).any(|s| {
        (0..n).all(|i| a[i] == b[(s + i) % n])
            || (0..n).all(|i| a[i] == b[(s + n - i) % n])
    })
}

impl LabeledSurface {
    /// Validates the whole labeling: the surface embeds simplicially and
    /// injectively, side k runs from corner k to corner k + 1, the sides
    /// concatenate to the boundary cycle, and every side is an ambient
    /// geodesic.
    pub fn new(
        ambient: &FlagComplex,
        surface: Surface,
        corners: [usize; 3],
        sides: [Vec<usize>; 3],
    ) -> Result<LabeledSurface, SwapError> {
        let violations = verify_surface(ambient, &surface);
        if let Some(first) = violations.first() {
            return Err(SwapError::SurfaceInvalid(format!("{first:?}")));
        }
        if corners[0] == corners[1] || corners[1] == corners[2] || corners[0] == corners[2] {
            return Err(SwapError::SidesMismatch("corners are not distinct".into()));
        }
        let mut concat = Vec::new();
        for k in 0..3 {
            let side = &sides[k];
            if side.len() < 2 {
                return Err(SwapError::SidesMismatch(format!(
                    "side {:?} has fewer than two vertices",
                    Side::ALL[k]
                )));
            }
            if side[0] != corners[k] || *side.last().unwrap() != corners[(k + 1) % 3] {
                return Err(SwapError::SidesMismatch(format!(
                    "side {:?} does not run from corner {} to corner {}",
                    Side::ALL[k],
                    k,
                    (k + 1) % 3
                )));
            }
            concat.extend_from_slice(&side[..side.len() - 1]);
        }
        if !same_cycle(&concat, surface.disc.boundary_idx()) {
            return Err(SwapError::SidesMismatch(
                "sides do not concatenate to the boundary cycle".into(),
            ));
        }
        for (k, side) in sides.iter().enumerate() {
            let first = surface.embedding[side[0]];
            let last = surface.embedding[*side.last().unwrap()];
            let distance = ambient.distance(first, last).unwrap_or(usize::MAX);
            if distance != side.len() - 1 {
                return Err(SwapError::SideNotGeodesic {
                    side: Side::ALL[k],
                    length: side.len() - 1,
                    distance,
                });
            }
        }
        Ok(LabeledSurface { surface, corners, sides })
    }

    pub fn disc(&self) -> &DiscTriangulation {
        &self.surface.disc
    }

    pub fn side(&self, s: Side) -> &[usize] {
        &self.sides[s.index()]
    }

    /// Inner vertices of a side, in side order.
    pub fn inner(&self, s: Side) -> &[usize] {
        let side = self.side(s);
        &side[1..side.len() - 1]
    }

    /// The two corners bounding a side.
    pub fn side_corners(&self, s: Side) -> (usize, usize) {
        (self.corners[s.index()], self.corners[(s.index() + 1) % 3])
    }

    /// The corner not incident to the side.
    pub fn opposite_corner(&self, s: Side) -> usize {
        self.corners[(s.index() + 2) % 3]
    }

    /// Defect sum over the inner vertices of a side.
    pub fn side_defect(&self, s: Side) -> i64 {
        self.disc()
            .defect_along(self.side(s))
            .expect("side lies on the boundary")
    }

    /// The side on which p and q are adjacent inner vertices, if any.
    pub fn side_of_inner_pair(&self, p: usize, q: usize) -> Option<Side> {
        for s in Side::ALL {
            let inner = self.inner(s);
            for w in inner.windows(2) {
                if (w[0] == p && w[1] == q) || (w[0] == q && w[1] == p) {
                    return Some(s);
                }
            }
        }
        None
    }

    /// The side a move swaps along.
    pub fn swapped_side(&self, mv: &SwapMove) -> Option<Side> {
        self.side_of_inner_pair(mv.p, mv.q)
    }
}

/// Checks the move invariants against the current surface and returns the
/// swapped side.
fn validate_move(surface: &LabeledSurface, mv: &SwapMove) -> Result<Side, SwapError> {
    let disc = surface.disc();
    let vs = [mv.p, mv.q, mv.m, mv.m_prime];
    for (i, a) in vs.iter().enumerate() {
        if *a >= disc.vertex_count() {
            return Err(SwapError::MoveInvalid(format!("vertex index {a} out of range")));
        }
        if vs[..i].contains(a) {
            return Err(SwapError::MoveInvalid("move vertices are not distinct".into()));
        }
    }
    let side = surface.side_of_inner_pair(mv.p, mv.q).ok_or_else(|| {
        SwapError::MoveInvalid("p and q are not adjacent inner vertices of one side".into())
    })?;
    let side_set: BTreeSet<usize> = surface.side(side).iter().copied().collect();
    if side_set.contains(&mv.m) || side_set.contains(&mv.m_prime) {
        return Err(SwapError::MoveInvalid("m and m' must avoid the swapped side".into()));
    }
    for (a, b) in [(mv.p, mv.m), (mv.m, mv.m_prime), (mv.m_prime, mv.q)] {
        if !disc.adjacent(a, b) {
            return Err(SwapError::MoveInvalid(
                "(p, m, m', q) is not a 4-cycle of the disc".into(),
            ));
        }
    }
    if !disc.has_triangle([mv.p, mv.q, mv.m]) || !disc.has_triangle([mv.q, mv.m, mv.m_prime]) {
        return Err(SwapError::MoveInvalid(
            "diagonal (q, m) does not carry the triangles (p, q, m) and (q, m, m')".into(),
        ));
    }
    if disc.adjacent(mv.p, mv.m_prime) {
        return Err(SwapError::MoveInvalid(
            "replacement diagonal (p, m') already lies in the disc".into(),
        ));
    }
    Ok(side)
}

/// Replaces the triangles (p, q, m) and (q, m, m') by (p, m, m') and
/// (p, m', q). The area, boundary, corners and sides are unchanged; the
/// replacement diagonal (p, m') must be an edge of the ambient complex so
/// that the result is again a surface.
pub fn edge_swap(
    ambient: &FlagComplex,
    surface: &LabeledSurface,
    mv: &SwapMove,
) -> Result<LabeledSurface, SwapError> {
    validate_move(surface, mv)?;
    let emb = &surface.surface.embedding;
    if !ambient.adjacent(emb[mv.p], emb[mv.m_prime]) {
        return Err(SwapError::MissingAmbientEdge(
            ambient.label(emb[mv.p]).to_string(),
            ambient.label(emb[mv.m_prime]).to_string(),
        ));
    }
    let disc = surface
        .disc()
        .flip_interior_edge(mv.q, mv.m)
        .map_err(|e| SwapError::MoveInvalid(e.to_string()))?;
    debug_assert_eq!(disc.area(), surface.disc().area());
    LabeledSurface::new(
        ambient,
        Surface { disc, embedding: emb.clone() },
        surface.corners,
        surface.sides.clone(),
    )
}

/// Builds the move at a (defect 1, defect 0) pair of adjacent inner side
/// vertices: m is the unique off-side disc neighbor of p, m' the other
/// off-side disc neighbor of q. The four vertices must span an ambient
/// 3-simplex; its only face not already carried by the disc is the
/// replacement diagonal (p, m').
pub fn find_swap(
    ambient: &FlagComplex,
    surface: &LabeledSurface,
    side: Side,
    p: usize,
    q: usize,
) -> Result<Option<SwapMove>, SwapError> {
    let disc = surface.disc();
    if p >= disc.vertex_count() || q >= disc.vertex_count() {
        return Err(SwapError::MoveInvalid("vertex index out of range".into()));
    }
    let (dp, dq) = (disc.defect(p), disc.defect(q));
    if (dp, dq) != (1, 0) {
        return Err(SwapError::DefectPatternMismatch(dp, dq));
    }
    if surface.side_of_inner_pair(p, q) != Some(side) {
        return Err(SwapError::MoveInvalid(
            "p and q are not adjacent inner vertices of the side".into(),
        ));
    }
    let side_set: BTreeSet<usize> = surface.side(side).iter().copied().collect();
    let off_side = |v: usize| -> Vec<usize> {
        disc.edges_idx()
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .filter(|w| !side_set.contains(w))
            .collect()
    };
    let m = match off_side(p)[..] {
        [m] => m,
        _ => return Ok(None),
    };
    let m_prime = match off_side(q).into_iter().filter(|&w| w != m).collect::<Vec<_>>()[..] {
        [m_prime] => m_prime,
        _ => return Ok(None),
    };
    let emb = &surface.surface.embedding;
    if !ambient.adjacent(emb[p], emb[m_prime]) {
        return Err(SwapError::MissingAmbientEdge(
            ambient.label(emb[p]).to_string(),
            ambient.label(emb[m_prime]).to_string(),
        ));
    }
    debug_assert!(ambient.is_clique(&[emb[p], emb[q], emb[m], emb[m_prime]]));
    let mv = SwapMove { p, q, m, m_prime };
    validate_move(surface, &mv)?;
    Ok(Some(mv))
}

/// Pushes the defect-1 vertex nearest the corner to the corner's side
/// neighbor by repeated swaps toward the corner. Requires the nearest
/// nonzero inner defect on the side to be 1; every swap moves it one step
/// closer while the vertices between stay at defect 0.
pub fn shift_defect_to_corner(
    ambient: &FlagComplex,
    surface: &LabeledSurface,
    side: Side,
    corner: usize,
) -> Result<LabeledSurface, SwapError> {
    let path = surface.side(side);
    let from_corner: Vec<usize> = if corner == path[0] {
        path.to_vec()
    } else if corner == *path.last().unwrap() {
        path.iter().rev().copied().collect()
    } else {
        return Err(SwapError::PreconditionFailed(
            "corner is not an endpoint of the side".into(),
        ));
    };
    let inner = &from_corner[1..from_corner.len() - 1];
    if inner.is_empty() {
        return Err(SwapError::PreconditionFailed("side has no inner vertices".into()));
    }
    let mut current = surface.clone();
    for _ in 0..from_corner.len() {
        let disc = current.disc();
        let k = match inner.iter().position(|&v| disc.defect(v) != 0) {
            Some(k) => k,
            None => {
                return Err(SwapError::PreconditionFailed(
                    "no nonzero defect along the side".into(),
                ))
            }
        };
        if disc.defect(inner[k]) != 1 {
            return Err(SwapError::PreconditionFailed(
                "nearest nonzero defect on the side is not 1".into(),
            ));
        }
        if k == 0 {
            return Ok(current);
        }
        let mv = find_swap(ambient, &current, side, inner[k], inner[k - 1])?.ok_or_else(|| {
            SwapError::PreconditionFailed("no admissible move at the defect pair".into())
        })?;
        current = edge_swap(ambient, &current, &mv)?;
    }
    Err(SwapError::PreconditionFailed("defect shift did not converge".into()))
}

/// A violated clause of the swap bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwapEffectViolation {
    SwappedSideDefectChanged { before: i64, after: i64 },
    OtherSideDefectJump { side: Side, before: i64, after: i64 },
    SwappedCornerDefectChanged { corner: usize, before: i64, after: i64 },
    ThirdCornerDefectTwoNotPreserved { before: i64, after: i64 },
}

/// Defect bookkeeping across one swap: the swapped side keeps its defect
/// sum and its two corner defects, each other side moves by at most one,
/// and the third corner has defect 2 before exactly when it has after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapEffectReport {
    pub swapped: Side,
    pub side_defects_before: [i64; 3],
    pub side_defects_after: [i64; 3],
    pub corner_defects_before: [i64; 3],
    pub corner_defects_after: [i64; 3],
    pub violations: Vec<SwapEffectViolation>,
}

/// Checks the four defect clauses for a pair of surfaces related by one
/// swap. The surfaces must differ by exactly the move's triangle
/// replacement; clause violations are collected, not raised.
pub fn swap_effect_report(
    before: &LabeledSurface,
    after: &LabeledSurface,
    mv: &SwapMove,
) -> Result<SwapEffectReport, SwapError> {
    let swapped = validate_move(before, mv)?;
    let related = before.disc().labels() == after.disc().labels()
        && before.disc().boundary_idx() == after.disc().boundary_idx()
        && before.surface.embedding == after.surface.embedding
        && before.corners == after.corners
        && before.sides == after.sides
        && {
            let sorted = |t: [usize; 3]| {
                let mut t = t;
                t.sort_unstable();
                t
            };
            let mut expected: BTreeSet<[usize; 3]> =
                before.disc().triangles_idx().iter().copied().collect();
            expected.remove(&sorted([mv.p, mv.q, mv.m]));
            expected.remove(&sorted([mv.q, mv.m, mv.m_prime]));
            expected.insert(sorted([mv.p, mv.m, mv.m_prime]));
            expected.insert(sorted([mv.p, mv.m_prime, mv.q]));
            let got: BTreeSet<[usize; 3]> =
                after.disc().triangles_idx().iter().copied().collect();
            expected == got
        };
    if !related {
        return Err(SwapError::PreconditionFailed(
            "surfaces are not related by the move".into(),
        ));
    }
    let mut side_defects_before = [0i64; 3];
    let mut side_defects_after = [0i64; 3];
    let mut corner_defects_before = [0i64; 3];
    let mut corner_defects_after = [0i64; 3];
    for s in Side::ALL {
        side_defects_before[s.index()] = before.side_defect(s);
        side_defects_after[s.index()] = after.side_defect(s);
    }
    for k in 0..3 {
        corner_defects_before[k] = before.disc().defect(before.corners[k]);
        corner_defects_after[k] = after.disc().defect(after.corners[k]);
    }
    let mut violations = Vec::new();
    let si = swapped.index();
    if side_defects_before[si] != side_defects_after[si] {
        violations.push(SwapEffectViolation::SwappedSideDefectChanged {
            before: side_defects_before[si],
            after: side_defects_after[si],
        });
    }
    for s in Side::ALL {
        if s == swapped {
            continue;
        }
        let (b, a) = (side_defects_before[s.index()], side_defects_after[s.index()]);
        if (b - a).abs() > 1 {
            violations.push(SwapEffectViolation::OtherSideDefectJump { side: s, before: b, after: a });
        }
    }
    for k in [si, (si + 1) % 3] {
        if corner_defects_before[k] != corner_defects_after[k] {
            violations.push(SwapEffectViolation::SwappedCornerDefectChanged {
                corner: before.corners[k],
                before: corner_defects_before[k],
                after: corner_defects_after[k],
            });
        }
    }
    let third = (si + 2) % 3;
    if (corner_defects_before[third] == 2) != (corner_defects_after[third] == 2) {
        violations.push(SwapEffectViolation::ThirdCornerDefectTwoNotPreserved {
            before: corner_defects_before[third],
            after: corner_defects_after[third],
        });
    }
    Ok(SwapEffectReport {
        swapped,
        side_defects_before,
        side_defects_after,
        corner_defects_before,
        corner_defects_after,
        violations,
    })
}

fn grid_label(i: i64, j: i64) -> String {
    format!("g{i}_{j}")
}

/// Triangular-lattice strip on rows j = 0 (vertices 0..=n) and j = 1
/// (vertices 0..n), with every unit rhombus carrying both diagonals, so
/// each of them can be flipped. The strip is thin enough that all vertex
/// links stay 6-large.
fn strip_complex(n: usize, both_diagonals: bool) -> FlagComplex {
    let n = n as i64;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..=n {
        vertices.push(grid_label(i, 0));
        if i < n {
            vertices.push(grid_label(i, 1));
            edges.push((grid_label(i, 0), grid_label(i + 1, 0)));
            edges.push((grid_label(i, 0), grid_label(i, 1)));
            edges.push((grid_label(i + 1, 0), grid_label(i, 1)));
        }
        if i < n - 1 {
            edges.push((grid_label(i, 1), grid_label(i + 1, 1)));
            if both_diagonals {
                edges.push((grid_label(i, 0), grid_label(i + 1, 1)));
            }
        }
    }
    FlagComplex::from_edge_list(&vertices, &edges).expect("strip edge list is well formed")
}

fn surface_on_labels(
    ambient: &FlagComplex,
    disc: DiscTriangulation,
    corners: [&str; 3],
    sides: [Vec<String>; 3],
) -> LabeledSurface {
    let embedding = disc
        .labels()
        .iter()
        .map(|l| ambient.vertex(l).expect("disc label names an ambient vertex"))
        .collect();
    let corner_idx = corners.map(|c| disc.index_of(c).expect("corner label"));
    let side_idx = sides.map(|side| {
        side.iter()
            .map(|l| disc.index_of(l).expect("side label"))
            .collect::<Vec<_>>()
    });
    LabeledSurface::new(ambient, Surface { disc, embedding }, corner_idx, side_idx)
        .expect("strip surface is validly labeled")
}

/// The full strip as a labeled surface: corners at both ends of row 0 and
/// at the far end of row 1; the single defect-1 inner vertex sits next to
/// corner b on side V.
fn strip_surface(ambient: &FlagComplex, n: usize) -> LabeledSurface {
    let n = n as i64;
    let mut labels = Vec::new();
    for i in 0..=n {
        labels.push(grid_label(i, 0));
        if i < n {
            labels.push(grid_label(i, 1));
        }
    }
    let mut triangles = Vec::new();
    for i in 0..n {
        triangles.push([grid_label(i, 0), grid_label(i + 1, 0), grid_label(i, 1)]);
        if i < n - 1 {
            triangles.push([grid_label(i + 1, 0), grid_label(i, 1), grid_label(i + 1, 1)]);
        }
    }
    let mut boundary: Vec<String> = (0..=n).map(|i| grid_label(i, 0)).collect();
    boundary.extend((0..n).rev().map(|i| grid_label(i, 1)));
    let disc = DiscTriangulation::new(labels, triangles, boundary).expect("strip disc");
    let side_u: Vec<String> = (0..=n).map(|i| grid_label(i, 0)).collect();
    let mut side_v = vec![grid_label(n, 0)];
    side_v.extend((0..n).rev().map(|i| grid_label(i, 1)));
    let side_w = vec![grid_label(0, 1), grid_label(0, 0)];
    let a = grid_label(0, 0);
    let b = grid_label(n, 0);
    let c = grid_label(0, 1);
    surface_on_labels(ambient, disc, [&a, &b, &c], [side_u, side_v, side_w])
}

/// Strip with both ends stepped: row 0 carries vertices 0..=n, row 1 the
/// vertices 1..n. The leftmost cap triangle rides on the (0,0)-(1,1)
/// diagonal, leaving defect-1 inner vertices on two different sides.
fn humped_complex(n: usize) -> FlagComplex {
    let n = n as i64;
    let mut vertices = vec![grid_label(0, 0)];
    let mut edges = Vec::new();
    for i in 0..n {
        vertices.push(grid_label(i + 1, 0));
        edges.push((grid_label(i, 0), grid_label(i + 1, 0)));
        if i < n - 1 {
            vertices.push(grid_label(i + 1, 1));
            edges.push((grid_label(i + 1, 0), grid_label(i + 1, 1)));
            edges.push((grid_label(i + 2, 0), grid_label(i + 1, 1)));
            edges.push((grid_label(i, 0), grid_label(i + 1, 1)));
        }
        if 0 < i && i < n - 1 {
            edges.push((grid_label(i, 1), grid_label(i + 1, 1)));
        }
    }
    FlagComplex::from_edge_list(&vertices, &edges).expect("humped strip edge list")
}

fn humped_surface(ambient: &FlagComplex, n: usize) -> LabeledSurface {
    let n = n as i64;
    let mut labels = vec![grid_label(0, 0)];
    for i in 1..=n {
        labels.push(grid_label(i, 0));
        if i < n {
            labels.push(grid_label(i, 1));
        }
    }
    let mut triangles = vec![[grid_label(0, 0), grid_label(1, 0), grid_label(1, 1)]];
    for i in 1..n {
        triangles.push([grid_label(i, 0), grid_label(i + 1, 0), grid_label(i, 1)]);
        if i < n - 1 {
            triangles.push([grid_label(i + 1, 0), grid_label(i, 1), grid_label(i + 1, 1)]);
        }
    }
    let mut boundary: Vec<String> = (0..=n).map(|i| grid_label(i, 0)).collect();
    boundary.extend((1..n).rev().map(|i| grid_label(i, 1)));
    let disc = DiscTriangulation::new(labels, triangles, boundary).expect("humped disc");
    let mid = n / 2;
    let side_u: Vec<String> = (0..=n).map(|i| grid_label(i, 0)).collect();
    let mut side_v = vec![grid_label(n, 0)];
    side_v.extend((mid..n).rev().map(|i| grid_label(i, 1)));
    let mut side_w: Vec<String> = (1..=mid).rev().map(|i| grid_label(i, 1)).collect();
    side_w.push(grid_label(0, 0));
    let a = grid_label(0, 0);
    let b = grid_label(n, 0);
    let c = grid_label(mid, 1);
    surface_on_labels(ambient, disc, [&a, &b, &c], [side_u, side_v, side_w])
}

/// One corpus instance: an ambient complex, a labeled surface in it, and a
/// valid move on that surface.
#[derive(Debug, Clone)]
pub struct SwapCase {
    pub name: String,
    pub ambient: FlagComplex,
    pub surface: LabeledSurface,
    pub mv: SwapMove,
}

/// Walks the defect on the given side step by step toward `corner`,
/// recording each move and its inverse as corpus cases.
fn push_chain(
    cases: &mut Vec<SwapCase>,
    name: &str,
    ambient: &FlagComplex,
    start: &LabeledSurface,
    side: Side,
    corner: usize,
) {
    let path = start.side(side);
    let from_corner: Vec<usize> = if corner == path[0] {
        path.to_vec()
    } else {
        path.iter().rev().copied().collect()
    };
    let inner = &from_corner[1..from_corner.len() - 1];
    let mut current = start.clone();
    for step in 0.. {
        let k = inner
            .iter()
            .position(|&v| current.disc().defect(v) != 0)
            .expect("chain side carries a defect");
        if k == 0 {
            break;
        }
        let mv = find_swap(ambient, &current, side, inner[k], inner[k - 1])
            .expect("chain pair matches the (1, 0) pattern")
            .expect("chain move exists");
        let next = edge_swap(ambient, &current, &mv).expect("chain swap applies");
        cases.push(SwapCase {
            name: format!("{name}-step-{step}"),
            ambient: ambient.clone(),
            surface: current,
            mv,
        });
        cases.push(SwapCase {
            name: format!("{name}-step-{step}-inverse"),
            ambient: ambient.clone(),
            surface: next.clone(),
            mv: mv.inverse(),
        });
        current = next;
    }
}

/// Deterministic corpus of valid (surface, move) pairs: every defect shift
/// step and its inverse over enriched strips and humped strips of growing
/// length. All ambients are systolic and every case passes the swap
/// bookkeeping clauses.
pub fn swap_corpus() -> Vec<SwapCase> {
    let mut cases = Vec::new();
    for n in 3..=20 {
        let ambient = strip_complex(n, true);
        let start = strip_surface(&ambient, n);
        let c = start.disc().index_of(&grid_label(0, 1)).unwrap();
        push_chain(&mut cases, &format!("strip-{n}"), &ambient, &start, Side::V, c);
    }
    for n in 5..=10 {
        let ambient = humped_complex(n);
        let start = humped_surface(&ambient, n);
        let b = start.disc().index_of(&grid_label(n as i64, 0)).unwrap();
        let c = start.disc().index_of(&grid_label(n as i64 / 2, 1)).unwrap();
        push_chain(&mut cases, &format!("humped-{n}-u"), &ambient, &start, Side::U, b);
        if n >= 7 {
            push_chain(&mut cases, &format!("humped-{n}-v"), &ambient, &start, Side::V, c);
        }
    }
    cases
}
