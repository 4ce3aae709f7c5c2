//! Integral first homology of a 2-complex via Smith normal form.
//!
//! Matrices here are tiny (at most a few hundred rows), so a dense i128
//! implementation with full pivot reduction is plenty and avoids overflow
//! for every input this crate produces.

/// Rank and torsion of H1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologySummary {
    pub rank: usize,
    /// Invariant factors greater than 1, in divisibility order.
    pub torsion: Vec<u64>,
    pub connected: bool,
}

impl HomologySummary {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Dense integer matrix in row-major order.
struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl Matrix {
    fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    fn at(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn add_row(&mut self, src: usize, dst: usize, factor: i128) {
        for c in 0..self.cols {
            let v = self.at(src, c);
            self.data[dst * self.cols + c] += factor * v;
        }
    }

    fn add_col(&mut self, src: usize, dst: usize, factor: i128) {
        for r in 0..self.rows {
            let v = self.at(r, src);
            self.data[r * self.cols + dst] += factor * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self.data[r * self.cols + c] = -self.data[r * self.cols + c];
        }
    }
}

/// Diagonal of the Smith normal form (nonnegative, divisibility chain).
fn smith_diagonal(mut m: Matrix) -> Vec<i128> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.rows && t < m.cols {
        // Find the entry with least absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..m.rows {
            for c in t..m.cols {
                let v = m.at(r, c).abs();
                if v != 0 && pivot.map_or(true, |(pr, pc)| v < m.at(pr, pc).abs()) {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap_rows(t, pr);
        m.swap_cols(t, pc);
        if m.at(t, t) < 0 {
            m.negate_row(t);
        }
        let mut dirty = false;
        for r in t + 1..m.rows {
            let q = m.at(r, t).div_euclid(m.at(t, t));
            if q != 0 {
                m.add_row(t, r, -q);
            }
            if m.at(r, t) != 0 {
                dirty = true;
            }
        }
        for c in t + 1..m.cols {
            let q = m.at(t, c).div_euclid(m.at(t, t));
            if q != 0 {
                m.add_col(t, c, -q);
            }
            if m.at(t, c) != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // Divisibility: the pivot must divide the remaining block.
        let p = m.at(t, t);
        let mut fixed = true;
        'scan: for r in t + 1..m.rows {
            for c in t + 1..m.cols {
                if m.at(r, c) % p != 0 {
                    m.add_row(r, t, 1);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(p);
        t += 1;
    }
    diag
}

/// H1 of the 2-complex with the given vertex count, edge list and triangle
/// list. Triangles must reference edges that are present.
pub fn h1_summary(
    vertex_count: usize,
    edges: &[(usize, usize)],
    triangles: &[[usize; 3]],
) -> HomologySummary {
    let edge_index: std::collections::BTreeMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ((a.min(b), a.max(b)), i))
        .collect();
    // d1: vertices x edges, edge (a, b) with a < b maps to b - a.
    let mut d1 = Matrix::zero(vertex_count, edges.len());
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (a, b) = (a.min(b), a.max(b));
        d1.set(a, i, -1);
        d1.set(b, i, 1);
    }
    // d2: edges x triangles, triangle (a, b, c) with a < b < c maps to
    // (b,c) - (a,c) + (a,b).
    let mut d2 = Matrix::zero(edges.len(), triangles.len());
    for (j, tri) in triangles.iter().enumerate() {
        let mut t = *tri;
        t.sort_unstable();
        let [a, b, c] = t;
        let e = |x: usize, y: usize| -> usize {
            *edge_index
                .get(&(x.min(y), x.max(y)))
                .expect("triangle edge must be listed")
        };
        d2.set(e(b, c), j, 1);
        d2.set(e(a, c), j, -1);
        d2.set(e(a, b), j, 1);
    }
    let rank1 = smith_diagonal(d1).iter().filter(|&&d| d != 0).count();
    let snf2 = smith_diagonal(d2);
    let rank2 = snf2.iter().filter(|&&d| d != 0).count();
    let cycles = edges.len() - rank1;
    let torsion: Vec<u64> = snf2
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| u64::try_from(d).expect("invariant factor fits in u64"))
        .collect();
    let components = vertex_count - rank1;
    HomologySummary {
        rank: cycles - rank2,
        torsion,
        connected: components <= 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_of_identity_block() {
        let mut m = Matrix::zero(2, 3);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        assert_eq!(smith_diagonal(m), vec![1, 1]);
    }

    #[test]
    fn snf_produces_divisibility_chain() {
        // diag(2, 3) has SNF diag(1, 6).
        let mut m = Matrix::zero(2, 2);
        m.set(0, 0, 2);
        m.set(1, 1, 3);
        assert_eq!(smith_diagonal(m), vec![1, 6]);
    }

    #[test]
    fn circle_has_h1_rank_one() {
        let edges = vec![(0, 1), (1, 2), (2, 0)];
        let h = h1_summary(3, &edges, &[]);
        assert_eq!(h.rank, 1);
        assert!(h.torsion.is_empty());
        assert!(h.connected);
    }

    #[test]
    fn filled_triangle_is_trivial() {
        let edges = vec![(0, 1), (1, 2), (2, 0)];
        let h = h1_summary(3, &edges, &[[0, 1, 2]]);
        assert!(h.is_trivial());
    }

    #[test]
    fn seven_vertex_torus_has_rank_two() {
        // Vertices 0..7, triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
        let mut edges = std::collections::BTreeSet::new();
        let mut triangles = Vec::new();
        for i in 0..7usize {
            for t in [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]] {
                let mut t = t;
                t.sort_unstable();
                triangles.push(t);
                edges.insert((t[0], t[1]));
                edges.insert((t[0], t[2]));
                edges.insert((t[1], t[2]));
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        assert_eq!(edges.len(), 21);
        assert_eq!(triangles.len(), 14);
        let h = h1_summary(7, &edges, &triangles);
        assert_eq!(h.rank, 2);
        assert!(h.torsion.is_empty());

        // Independent cross-check of the rank over the rationals.
        let r1 = rational_rank(7, edges.len(), |r, c| {
            let (a, b) = edges[c];
            if r == a { -1.0 } else if r == b { 1.0 } else { 0.0 }
        });
        let edge_idx: std::collections::BTreeMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let r2 = rational_rank(edges.len(), triangles.len(), |r, c| {
            let [a, b, cc] = triangles[c];
            if r == edge_idx[&(b, cc)] { 1.0 }
            else if r == edge_idx[&(a, cc)] { -1.0 }
            else if r == edge_idx[&(a, b)] { 1.0 }
            else { 0.0 }
        });
        assert_eq!((edges.len() - r1) - r2, 2);
    }

    #[test]
    fn projective_plane_has_z2_torsion() {
        // Minimal 6-vertex triangulation of RP^2 (antipodal icosahedron).
        let triangles: Vec<[usize; 3]> = vec![
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 4, 5], [2, 3, 5], [1, 3, 5], [1, 3, 4],
        ];
        let mut edges = std::collections::BTreeSet::new();
        for t in &triangles {
            edges.insert((t[0], t[1]));
            edges.insert((t[0], t[2]));
            edges.insert((t[1], t[2]));
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        assert_eq!(edges.len(), 15);
        let h = h1_summary(6, &edges, &triangles);
        assert_eq!(h.rank, 0);
        assert_eq!(h.torsion, vec![2]);
    }

    fn rational_rank(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> f64) -> usize {
        let mut m: Vec<Vec<f64>> =
            (0..rows).map(|r| (0..cols).map(|c| entry(r, c)).collect()).collect();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c].abs() > 1e-9) else { continue };
            m.swap(rank, p);
            let pv = m[rank][c];
            for r in 0..rows {
                if r != rank && m[r][c].abs() > 1e-9 {
                    let f = m[r][c] / pv;
                    for k in c..cols {
                        m[r][k] -= f * m[rank][k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
