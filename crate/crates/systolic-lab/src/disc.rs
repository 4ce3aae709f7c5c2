//! Abstract triangulated 2-discs with defect accounting.
//!
//! A disc is a vertex list, a triangle list, and a distinguished boundary
//! cycle. Construction validates the whole structure: every edge lies in one
//! or two triangles, the count-one edges are exactly the boundary edges, the
//! Euler characteristic is 1, the dual graph is connected, and the triangles
//! around each vertex form a single fan. Defects are measured against the
//! flat value of six triangles around an interior vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscError {
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(String),
    #[error("unknown vertex label {0}")]
    UnknownVertex(String),
    #[error("triangle with repeated vertex")]
    DegenerateTriangle,
    #[error("duplicate triangle")]
    DuplicateTriangle,
    #[error("edge ({0}, {1}) lies in more than two triangles")]
    EdgeInTooManyTriangles(String, String),
    #[error("boundary must be a cycle of length at least 3 without repeats")]
    InvalidBoundary,
    #[error("boundary pair ({0}, {1}) is not an edge of any triangle")]
    BoundaryEdgeMissing(String, String),
    #[error("single-triangle edges do not match the boundary cycle")]
    BoundaryMismatch,
    #[error("vertex {0} lies in no triangle")]
    IsolatedVertex(String),
    #[error("Euler characteristic is {0}, expected 1")]
    EulerCharacteristic(i64),
    #[error("triangle adjacency graph is disconnected")]
    DisconnectedDual,
    #[error("triangles around vertex {0} do not form a single fan")]
    BrokenFan(String),
    #[error("skeleton spans the triangle ({0}, {1}, {2}) which is not a face")]
    NotFlag(String, String, String),
    #[error("disc is not systolic")]
    NotSystolicDisc,
    #[error("path does not lie on the boundary cycle")]
    PathNotOnBoundary,
    #[error("path is not a geodesic of the disc skeleton")]
    NotGeodesic,
    #[error("interior edge ({0}, {1}) cannot be flipped")]
    UnflippableEdge(String, String),
}

/// Outcome of the systolicity test on a flag disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscSystolicity {
    Systolic,
    InteriorDefectPositive { vertex: String, defect: i64 },
}

/// Boundary defect sum together with the equality clause of the boundary
/// defect law: sum equals 6 exactly when no interior defect is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryDefectCheck {
    pub sum: i64,
    pub equality_iff_no_negative_interior: bool,
}

/// Area and vertex counts tied together by the Euler/Pick identity
/// `area = 2 * inner + boundary - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerAreaIdentities {
    pub area: usize,
    pub inner_count: usize,
    pub boundary_count: usize,
    pub pick_identity_holds: bool,
    /// `Some(flag)` when the disc is systolic: area <= boundary^2 / 6.
    pub isoperimetric_holds: Option<bool>,
}

/// A violated clause of the boundary-geodesic defect law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeodesicDefectViolation {
    InnerDefectTooLarge { vertex: String, defect: i64 },
    MissingNegativeSeparator { first: String, second: String },
    DefectAlongTooLarge { value: i64 },
}

/// Report of the three clauses checked along a boundary geodesic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicDefectReport {
    pub defect_along: i64,
    pub violations: Vec<GeodesicDefectViolation>,
}

/// A validated triangulated 2-disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscTriangulation {
    labels: Vec<String>,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<usize>,
    on_boundary: Vec<bool>,
    triangle_count: Vec<usize>,
    edges: BTreeMap<(usize, usize), Vec<usize>>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Lex-least representative of a cycle over all rotations and directions.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        for dir in [1usize, n - 1] {
            let mut cand = Vec::with_capacity(n);
            let mut pos = start;
            for _ in 0..n {
                cand.push(cycle[pos]);
                pos = (pos + dir) % n;
            }
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

impl DiscTriangulation {
    /// Builds and fully validates a disc from labeled data.
    pub fn new(
        vertices: Vec<String>,
        triangles: Vec<[String; 3]>,
        boundary: Vec<String>,
    ) -> Result<Self, DiscError> {
        let mut labels = vertices;
        labels.sort();
        for pair in labels.windows(2) {
            if pair[0] == pair[1] {
                return Err(DiscError::DuplicateVertex(pair[0].clone()));
            }
        }
        let index_of = |name: &str| -> Result<usize, DiscError> {
            labels
                .binary_search_by(|l| l.as_str().cmp(name))
                .map_err(|_| DiscError::UnknownVertex(name.to_string()))
        };
        let mut tris: Vec<[usize; 3]> = Vec::with_capacity(triangles.len());
        for t in &triangles {
            let mut idx = [index_of(&t[0])?, index_of(&t[1])?, index_of(&t[2])?];
            idx.sort_unstable();
            if idx[0] == idx[1] || idx[1] == idx[2] {
                return Err(DiscError::DegenerateTriangle);
            }
            tris.push(idx);
        }
        let bd: Vec<usize> = boundary
            .iter()
            .map(|name| index_of(name))
            .collect::<Result<_, _>>()?;
        Self::from_indexed(labels, tris, bd)
    }

    /// Builds a disc from already-indexed data. Labels must be sorted and
    /// unique; triangle triples may be in any order.
    pub fn from_indexed(
        labels: Vec<String>,
        mut triangles: Vec<[usize; 3]>,
        boundary: Vec<usize>,
    ) -> Result<Self, DiscError> {
        let n = labels.len();
        for t in triangles.iter_mut() {
            t.sort_unstable();
            if t[2] >= n {
                return Err(DiscError::UnknownVertex(format!("#{}", t[2])));
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(DiscError::DegenerateTriangle);
            }
        }
        triangles.sort_unstable();
        for pair in triangles.windows(2) {
            if pair[0] == pair[1] {
                return Err(DiscError::DuplicateTriangle);
            }
        }

        // Edge incidence: one triangle (boundary) or two (interior).
        let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ti, t) in triangles.iter().enumerate() {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                let slot = edges.entry(edge_key(a, b)).or_default();
                slot.push(ti);
                if slot.len() > 2 {
                    return Err(DiscError::EdgeInTooManyTriangles(
                        labels[a].clone(),
                        labels[b].clone(),
                    ));
                }
            }
        }

        // Boundary must be a genuine cycle over existing edges.
        if boundary.len() < 3 {
            return Err(DiscError::InvalidBoundary);
        }
        let mut seen = vec![false; n];
        for &v in &boundary {
            if v >= n || seen[v] {
                return Err(DiscError::InvalidBoundary);
            }
            seen[v] = true;
        }
        let mut boundary_edges = BTreeSet::new();
        for i in 0..boundary.len() {
            let a = boundary[i];
            let b = boundary[(i + 1) % boundary.len()];
            if !edges.contains_key(&edge_key(a, b)) {
                return Err(DiscError::BoundaryEdgeMissing(
                    labels[a].clone(),
                    labels[b].clone(),
                ));
            }
            boundary_edges.insert(edge_key(a, b));
        }
        let single_edges: BTreeSet<(usize, usize)> = edges
            .iter()
            .filter(|(_, ts)| ts.len() == 1)
            .map(|(&e, _)| e)
            .collect();
        if single_edges != boundary_edges {
            return Err(DiscError::BoundaryMismatch);
        }

        let mut triangle_count = vec![0usize; n];
        for t in &triangles {
            for &v in t {
                triangle_count[v] += 1;
            }
        }
        for (v, &c) in triangle_count.iter().enumerate() {
            if c == 0 {
                return Err(DiscError::IsolatedVertex(labels[v].clone()));
            }
        }

        let euler = n as i64 - edges.len() as i64 + triangles.len() as i64;
        if euler != 1 {
            return Err(DiscError::EulerCharacteristic(euler));
        }

        // Dual graph connectivity.
        if !triangles.is_empty() {
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); triangles.len()];
            for ts in edges.values() {
                if ts.len() == 2 {
                    adj[ts[0]].push(ts[1]);
                    adj[ts[1]].push(ts[0]);
                }
            }
            let mut visited = vec![false; triangles.len()];
            let mut queue = VecDeque::from([0usize]);
            visited[0] = true;
            let mut count = 1;
            while let Some(t) = queue.pop_front() {
                for &s in &adj[t] {
                    if !visited[s] {
                        visited[s] = true;
                        count += 1;
                        queue.push_back(s);
                    }
                }
            }
            if count != triangles.len() {
                return Err(DiscError::DisconnectedDual);
            }
        } else {
            return Err(DiscError::InvalidBoundary);
        }

        let mut on_boundary = vec![false; n];
        for &v in &boundary {
            on_boundary[v] = true;
        }

        // Single fan around each vertex: the graph connecting the two
        // non-v vertices of each triangle at v must be connected. Degree
        // constraints are already forced by the edge counts.
        for v in 0..n {
            let mut link: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for t in &triangles {
                if t.contains(&v) {
                    let others: Vec<usize> =
                        t.iter().copied().filter(|&w| w != v).collect();
                    link.entry(others[0]).or_default().push(others[1]);
                    link.entry(others[1]).or_default().push(others[0]);
                }
            }
            let start = *link.keys().next().unwrap();
            let mut visited: BTreeSet<usize> = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(w) = queue.pop_front() {
                for &x in &link[&w] {
                    if visited.insert(x) {
                        queue.push_back(x);
                    }
                }
            }
            if visited.len() != link.len() {
                return Err(DiscError::BrokenFan(labels[v].clone()));
            }
        }

        Ok(DiscTriangulation {
            labels,
            triangles,
            boundary: canonical_cycle(&boundary),
            on_boundary,
            triangle_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn area(&self) -> usize {
        self.triangles.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, DiscError> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(name))
            .map_err(|_| DiscError::UnknownVertex(name.to_string()))
    }

    pub fn triangles_idx(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangles_labeled(&self) -> Vec<[String; 3]> {
        self.triangles
            .iter()
            .map(|t| {
                [
                    self.labels[t[0]].clone(),
                    self.labels[t[1]].clone(),
                    self.labels[t[2]].clone(),
                ]
            })
            .collect()
    }

    pub fn boundary_idx(&self) -> &[usize] {
        &self.boundary
    }

    pub fn boundary_labeled(&self) -> Vec<String> {
        self.boundary.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.on_boundary[v]
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| !self.on_boundary[v]).collect()
    }

    /// Skeleton edges with the triangles they lie in.
    pub fn edges_idx(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.edges
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains_key(&edge_key(a, b))
    }

    pub fn has_triangle(&self, mut t: [usize; 3]) -> bool {
        t.sort_unstable();
        self.triangles.binary_search(&t).is_ok()
    }

    /// Defect of a vertex: 6 minus its triangle count in the interior,
    /// 3 minus it on the boundary.
    pub fn defect(&self, v: usize) -> i64 {
        let base = if self.on_boundary[v] { 3 } else { 6 };
        base - self.triangle_count[v] as i64
    }

    pub fn defect_by_name(&self, name: &str) -> Result<i64, DiscError> {
        Ok(self.defect(self.index_of(name)?))
    }

    pub fn gauss_bonnet_sum(&self) -> i64 {
        (0..self.labels.len()).map(|v| self.defect(v)).sum()
    }

    /// Sum of defects over the inner vertices of a boundary path. Every
    /// consecutive pair must be a boundary edge.
    pub fn defect_along(&self, path: &[usize]) -> Result<i64, DiscError> {
        if path.is_empty() {
            return Err(DiscError::PathNotOnBoundary);
        }
        let boundary_edges: BTreeSet<(usize, usize)> = (0..self.boundary.len())
            .map(|i| {
                edge_key(self.boundary[i], self.boundary[(i + 1) % self.boundary.len()])
            })
            .collect();
        for pair in path.windows(2) {
            if pair[0] == pair[1] || !boundary_edges.contains(&edge_key(pair[0], pair[1])) {
                return Err(DiscError::PathNotOnBoundary);
            }
        }
        Ok(path[1..path.len().saturating_sub(1)]
            .iter()
            .map(|&v| self.defect(v))
            .sum())
    }

    pub fn defect_along_names(&self, path: &[String]) -> Result<i64, DiscError> {
        let idx: Vec<usize> =
            path.iter().map(|n| self.index_of(n)).collect::<Result<_, _>>()?;
        self.defect_along(&idx)
    }

    /// BFS distance in the disc skeleton.
    pub fn distance(&self, a: usize, b: usize) -> usize {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.labels.len()];
        for &(x, y) in self.edges.keys() {
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut dist = vec![usize::MAX; self.labels.len()];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                return dist[b];
            }
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist[b]
    }

    /// The disc is systolic when its skeleton is flag relative to the face
    /// set and every interior defect is nonpositive.
    pub fn is_systolic_disc(&self) -> Result<DiscSystolicity, DiscError> {
        let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.labels.len()];
        for &(a, b) in self.edges.keys() {
            nbrs[a].insert(b);
            nbrs[b].insert(a);
        }
        for &(a, b) in self.edges.keys() {
            for &c in nbrs[a].intersection(&nbrs[b]) {
                if !self.has_triangle([a, b, c]) {
                    return Err(DiscError::NotFlag(
                        self.labels[a].clone(),
                        self.labels[b].clone(),
                        self.labels[c].clone(),
                    ));
                }
            }
        }
        for v in 0..self.labels.len() {
            if !self.on_boundary[v] && self.defect(v) > 0 {
                return Ok(DiscSystolicity::InteriorDefectPositive {
                    vertex: self.labels[v].clone(),
                    defect: self.defect(v),
                });
            }
        }
        Ok(DiscSystolicity::Systolic)
    }

    pub fn is_systolic(&self) -> bool {
        matches!(self.is_systolic_disc(), Ok(DiscSystolicity::Systolic))
    }

    /// Boundary defect law for systolic discs: the sum is at least 6 and
    /// equals 6 exactly when no interior vertex has negative defect.
    pub fn boundary_defect_check(&self) -> Result<BoundaryDefectCheck, DiscError> {
        if !self.is_systolic() {
            return Err(DiscError::NotSystolicDisc);
        }
        let sum: i64 = self
            .boundary
            .iter()
            .map(|&v| self.defect(v))
            .sum();
        let no_negative_interior =
            self.interior_vertices().iter().all(|&v| self.defect(v) >= 0);
        Ok(BoundaryDefectCheck {
            sum,
            equality_iff_no_negative_interior: (sum == 6) == no_negative_interior,
        })
    }

    /// Checks the three defect clauses along a boundary geodesic: inner
    /// defects at most 1, defect-1 inner vertices separated by a negative
    /// one, and total defect along the path at most 1.
    pub fn verify_geodesic_defect_lemma(
        &self,
        path: &[usize],
    ) -> Result<GeodesicDefectReport, DiscError> {
        if !self.is_systolic() {
            return Err(DiscError::NotSystolicDisc);
        }
        let defect_along = self.defect_along(path)?;
        let endpoints = (path[0], *path.last().unwrap());
        if path.len() - 1 != self.distance(endpoints.0, endpoints.1) {
            return Err(DiscError::NotGeodesic);
        }
        let mut violations = Vec::new();
        let inner = &path[1..path.len() - 1];
        for &v in inner {
            if self.defect(v) > 1 {
                violations.push(GeodesicDefectViolation::InnerDefectTooLarge {
                    vertex: self.labels[v].clone(),
                    defect: self.defect(v),
                });
            }
        }
        let ones: Vec<usize> = (0..inner.len())
            .filter(|&i| self.defect(inner[i]) == 1)
            .collect();
        for pair in ones.windows(2) {
            let separated = (pair[0] + 1..pair[1]).any(|j| self.defect(inner[j]) < 0);
            if !separated {
                violations.push(GeodesicDefectViolation::MissingNegativeSeparator {
                    first: self.labels[inner[pair[0]]].clone(),
                    second: self.labels[inner[pair[1]]].clone(),
                });
            }
        }
        if defect_along > 1 {
            violations
                .push(GeodesicDefectViolation::DefectAlongTooLarge { value: defect_along });
        }
        Ok(GeodesicDefectReport { defect_along, violations })
    }

    /// Area, interior and boundary counts, the Pick/Euler identity, and the
    /// isoperimetric bound when the disc is systolic.
    pub fn euler_area_identities(&self) -> EulerAreaIdentities {
        let inner_count = self.interior_vertices().len();
        let boundary_count = self.boundary.len();
        let area = self.triangles.len();
        let pick_identity_holds = area == 2 * inner_count + boundary_count - 2;
        let isoperimetric_holds = if self.is_systolic() {
            let l = boundary_count;
            Some(6 * area <= l * l)
        } else {
            None
        };
        EulerAreaIdentities {
            area,
            inner_count,
            boundary_count,
            pick_identity_holds,
            isoperimetric_holds,
        }
    }

    /// Flips an interior edge: the two triangles sharing it are replaced by
    /// the triangles on the opposite diagonal. Fails when the edge is not
    /// interior, the opposite diagonal already exists, or the result is not
    /// a valid disc.
    pub fn flip_interior_edge(&self, a: usize, b: usize) -> Result<Self, DiscError> {
        let err = || {
            DiscError::UnflippableEdge(self.labels[a].clone(), self.labels[b].clone())
        };
        let ts = self.edges.get(&edge_key(a, b)).ok_or_else(err)?;
        if ts.len() != 2 {
            return Err(err());
        }
        let other = |ti: usize| -> usize {
            *self.triangles[ti].iter().find(|&&v| v != a && v != b).unwrap()
        };
        let c = other(ts[0]);
        let d = other(ts[1]);
        if self.adjacent(c, d) {
            return Err(err());
        }
        let mut new_triangles: Vec<[usize; 3]> = self
            .triangles
            .iter()
            .enumerate()
            .filter(|(ti, _)| *ti != ts[0] && *ti != ts[1])
            .map(|(_, t)| *t)
            .collect();
        new_triangles.push([a, c, d]);
        new_triangles.push([b, c, d]);
        Self::from_indexed(self.labels.clone(), new_triangles, self.boundary.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> String {
        v.to_string()
    }

    fn tri(a: &str, b: &str, c: &str) -> [String; 3] {
        [s(a), s(b), s(c)]
    }

    fn single_triangle() -> DiscTriangulation {
        DiscTriangulation::new(
            vec![s("a"), s("b"), s("c")],
            vec![tri("a", "b", "c")],
            vec![s("a"), s("b"), s("c")],
        )
        .unwrap()
    }

    /// Closed fan: a center in `n` triangles over an `n`-cycle rim.
    fn fan(n: usize) -> DiscTriangulation {
        let mut vertices = vec![s("z")];
        let mut triangles = Vec::new();
        let mut boundary = Vec::new();
        for i in 0..n {
            vertices.push(format!("r{i}"));
            boundary.push(format!("r{i}"));
            triangles.push([s("z"), format!("r{i}"), format!("r{}", (i + 1) % n)]);
        }
        DiscTriangulation::new(vertices, triangles, boundary).unwrap()
    }

    #[test]
    fn single_triangle_defects_and_sum() {
        let d = single_triangle();
        for name in ["a", "b", "c"] {
            assert_eq!(d.defect_by_name(name).unwrap(), 2);
        }
        assert_eq!(d.gauss_bonnet_sum(), 6);
        let e = d.euler_area_identities();
        assert_eq!((e.area, e.inner_count, e.boundary_count), (1, 0, 3));
        assert!(e.pick_identity_holds);
        assert_eq!(e.isoperimetric_holds, Some(true));
    }

    #[test]
    fn hexagonal_fan_is_flat() {
        let d = fan(6);
        assert_eq!(d.defect_by_name("z").unwrap(), 0);
        assert_eq!(d.gauss_bonnet_sum(), 6);
        assert!(d.is_systolic());
        let check = d.boundary_defect_check().unwrap();
        assert_eq!(check.sum, 6);
        assert!(check.equality_iff_no_negative_interior);
    }

    #[test]
    fn heptagonal_fan_boundary_sum_exceeds_six() {
        let d = fan(7);
        assert_eq!(d.defect_by_name("z").unwrap(), -1);
        let check = d.boundary_defect_check().unwrap();
        assert_eq!(check.sum, 7);
        assert!(check.equality_iff_no_negative_interior);
    }

    #[test]
    fn pentagonal_fan_is_not_systolic() {
        let d = fan(5);
        assert_eq!(
            d.is_systolic_disc().unwrap(),
            DiscSystolicity::InteriorDefectPositive { vertex: s("z"), defect: 1 }
        );
        assert_eq!(d.boundary_defect_check(), Err(DiscError::NotSystolicDisc));
    }

    #[test]
    fn tetrahedron_without_one_face_is_not_flag() {
        let d = DiscTriangulation::new(
            vec![s("a"), s("b"), s("c"), s("d")],
            vec![tri("a", "b", "d"), tri("a", "c", "d"), tri("b", "c", "d")],
            vec![s("a"), s("b"), s("c")],
        )
        .unwrap();
        assert_eq!(
            d.is_systolic_disc(),
            Err(DiscError::NotFlag(s("a"), s("b"), s("c")))
        );
    }

    #[test]
    fn two_edge_boundary_path_sums_inner_defect() {
        let d = fan(6);
        let r0 = d.index_of("r0").unwrap();
        let r1 = d.index_of("r1").unwrap();
        let r2 = d.index_of("r2").unwrap();
        // One-edge paths have no inner vertices.
        assert_eq!(d.defect_along(&[r0, r1]).unwrap(), 0);
        assert_eq!(d.defect_along(&[r0, r1, r2]).unwrap(), 1);
        let z = d.index_of("z").unwrap();
        assert_eq!(d.defect_along(&[r0, z, r2]), Err(DiscError::PathNotOnBoundary));
    }

    #[test]
    fn geodesic_defect_clauses_on_fan_boundary() {
        let d = fan(6);
        let r0 = d.index_of("r0").unwrap();
        let r1 = d.index_of("r1").unwrap();
        let r2 = d.index_of("r2").unwrap();
        let report = d.verify_geodesic_defect_lemma(&[r0, r1, r2]).unwrap();
        assert_eq!(report.defect_along, 1);
        assert!(report.violations.is_empty());
        // Three boundary edges no longer realize the skeleton distance.
        let r3 = d.index_of("r3").unwrap();
        assert_eq!(
            d.verify_geodesic_defect_lemma(&[r0, r1, r2, r3]),
            Err(DiscError::NotGeodesic)
        );
    }

    #[test]
    fn edge_in_three_triangles_is_rejected() {
        let err = DiscTriangulation::new(
            vec![s("a"), s("b"), s("c"), s("d"), s("e")],
            vec![tri("a", "b", "c"), tri("a", "b", "d"), tri("a", "b", "e")],
            vec![s("c"), s("d"), s("e")],
        )
        .unwrap_err();
        assert_eq!(err, DiscError::EdgeInTooManyTriangles(s("a"), s("b")));
    }

    #[test]
    fn sphere_is_rejected_by_boundary_match() {
        // Full tetrahedron boundary: every edge lies in two triangles, so
        // no boundary cycle can match the single-triangle edge set.
        let err = DiscTriangulation::new(
            vec![s("a"), s("b"), s("c"), s("d")],
            vec![
                tri("a", "b", "c"),
                tri("a", "b", "d"),
                tri("a", "c", "d"),
                tri("b", "c", "d"),
            ],
            vec![s("a"), s("b"), s("c")],
        )
        .unwrap_err();
        assert_eq!(err, DiscError::BoundaryMismatch);
    }

    #[test]
    fn two_triangles_pinched_at_a_vertex_are_rejected() {
        // Two triangles meeting only at z cannot close a single boundary
        // cycle; the pair (q, a) needed to do so is not an edge.
        let err = DiscTriangulation::new(
            vec![s("a"), s("b"), s("p"), s("q"), s("z")],
            vec![tri("a", "b", "z"), tri("p", "q", "z")],
            vec![s("a"), s("b"), s("z"), s("p"), s("q")],
        )
        .unwrap_err();
        assert_eq!(err, DiscError::BoundaryEdgeMissing(s("q"), s("a")));
    }

    #[test]
    fn unused_vertices_are_rejected() {
        let err = DiscTriangulation::new(
            vec![s("a"), s("b"), s("c"), s("x")],
            vec![tri("a", "b", "c")],
            vec![s("a"), s("b"), s("c")],
        )
        .unwrap_err();
        assert_eq!(err, DiscError::IsolatedVertex(s("x")));
    }

    #[test]
    fn flip_swaps_the_diagonal_of_a_quadrilateral() {
        // Two triangles over the square a, b, c, d with diagonal (a, c).
        let d = DiscTriangulation::new(
            vec![s("a"), s("b"), s("c"), s("d")],
            vec![tri("a", "b", "c"), tri("a", "c", "d")],
            vec![s("a"), s("b"), s("c"), s("d")],
        )
        .unwrap();
        let a = d.index_of("a").unwrap();
        let c = d.index_of("c").unwrap();
        let flipped = d.flip_interior_edge(a, c).unwrap();
        let b = flipped.index_of("b").unwrap();
        let dd = flipped.index_of("d").unwrap();
        assert!(flipped.adjacent(b, dd));
        assert!(!flipped.adjacent(a, c));
        assert_eq!(flipped.area(), 2);
        // Flipping back restores the original triangle set.
        let back = flipped.flip_interior_edge(b, dd).unwrap();
        assert_eq!(back.triangles_idx(), d.triangles_idx());
    }

    #[test]
    fn boundary_edge_cannot_be_flipped() {
        let d = single_triangle();
        let a = d.index_of("a").unwrap();
        let b = d.index_of("b").unwrap();
        assert!(matches!(
            d.flip_interior_edge(a, b),
            Err(DiscError::UnflippableEdge(_, _))
        ));
    }

    #[test]
    fn gauss_bonnet_is_six_after_flips() {
        let d = DiscTriangulation::new(
            vec![s("a"), s("b"), s("c"), s("d")],
            vec![tri("a", "b", "c"), tri("a", "c", "d")],
            vec![s("a"), s("b"), s("c"), s("d")],
        )
        .unwrap();
        let a = d.index_of("a").unwrap();
        let c = d.index_of("c").unwrap();
        let flipped = d.flip_interior_edge(a, c).unwrap();
        assert_eq!(flipped.gauss_bonnet_sum(), 6);
        let e = flipped.euler_area_identities();
        assert!(e.pick_identity_holds);
    }
}
