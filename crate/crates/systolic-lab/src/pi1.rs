//! Bounded triviality check for the edge-path group of a 2-complex.
//!
//! The presentation comes from a spanning tree: generators are the non-tree
//! edges, relators are the triangle boundaries. Two bounded engines run in
//! sequence: an iterated Tietze simplification (eliminate trivial letters,
//! freely reduce, absorb length-1 and length-2 relators), and, for whatever
//! survives, coset enumeration over the trivial subgroup. Both are exact
//! when they finish; the budget only controls how long they may try.

use std::collections::BTreeMap;

/// Result of the bounded check. `Trivial` and `FiniteNontrivial` are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Pi1Verdict {
    Trivial,
    FiniteNontrivial { order: usize },
    BudgetExhausted,
}

/// A signed generator occurrence.
type Letter = (usize, i8);

/// Union-find over generators where each class member equals the root or
/// its inverse.
struct SignedClasses {
    parent: Vec<usize>,
    sign: Vec<i8>,
    trivial: Vec<bool>,
}

impl SignedClasses {
    fn new(n: usize) -> Self {
        SignedClasses { parent: (0..n).collect(), sign: vec![1; n], trivial: vec![false; n] }
    }

    fn find(&mut self, g: usize) -> (usize, i8) {
        if self.parent[g] == g {
            return (g, 1);
        }
        let (root, s) = self.find(self.parent[g]);
        self.parent[g] = root;
        self.sign[g] *= s;
        (root, self.sign[g])
    }

    fn is_trivial(&mut self, g: usize) -> bool {
        let (root, _) = self.find(g);
        self.trivial[root]
    }

    fn mark_trivial(&mut self, g: usize) {
        let (root, _) = self.find(g);
        self.trivial[root] = true;
    }

    /// Records g^s1 * h^s2 = 1. Returns an extra relator when the classes
    /// were already merged with conflicting sign (an involution constraint).
    fn union(&mut self, g: usize, s1: i8, h: usize, s2: i8) -> Option<Vec<Letter>> {
        let (rg, sg) = self.find(g);
        let (rh, sh) = self.find(h);
        let rel = -s1 * s2 * sg * sh;
        if rg == rh {
            if rel == -1 {
                return Some(vec![(rg, 1), (rg, 1)]);
            }
            return None;
        }
        self.parent[rh] = rg;
        self.sign[rh] = rel;
        if self.trivial[rh] {
            self.trivial[rg] = true;
        }
        None
    }
}

/// Freely and cyclically reduces a word in place.
fn cyclic_reduce(word: &mut Vec<Letter>) {
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &(g, s) in word.iter() {
        if stack.last() == Some(&(g, -s)) {
            stack.pop();
        } else {
            stack.push((g, s));
        }
    }
    while stack.len() >= 2 {
        let first = stack[0];
        let last = *stack.last().unwrap();
        if first.0 == last.0 && first.1 == -last.1 {
            stack.pop();
            stack.remove(0);
        } else {
            break;
        }
    }
    *word = stack;
}

/// Decides whether the edge-path group of the complex is trivial, within
/// `budget` elementary steps. The complex must be connected.
pub fn trivial_pi1_bounded(
    vertex_count: usize,
    edges: &[(usize, usize)],
    triangles: &[[usize; 3]],
    budget: usize,
) -> Pi1Verdict {
    // Spanning tree by BFS from vertex 0.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut tree_parent: Vec<Option<usize>> = vec![None; vertex_count];
    let mut seen = vec![false; vertex_count];
    if vertex_count > 0 {
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree_parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut tree_edges = std::collections::BTreeSet::new();
    for (w, p) in tree_parent.iter().enumerate() {
        if let Some(p) = p {
            tree_edges.insert((w.min(*p), w.max(*p)));
        }
    }
    // Generators = non-tree edges.
    let mut gen_of_edge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(a, b) in edges {
        let key = (a.min(b), a.max(b));
        if !tree_edges.contains(&key) && !gen_of_edge.contains_key(&key) {
            let id = gen_of_edge.len();
            gen_of_edge.insert(key, id);
        }
    }
    let n_gens = gen_of_edge.len();
    if n_gens == 0 {
        return Pi1Verdict::Trivial;
    }
    // Triangle relators: walk a -> b -> c -> a, tree edges contribute nothing.
    let letter = |u: usize, v: usize| -> Option<Letter> {
        let key = (u.min(v), u.max(v));
        gen_of_edge.get(&key).map(|&g| (g, if u < v { 1 } else { -1 }))
    };
    let mut relators: Vec<Vec<Letter>> = Vec::new();
    for &[a, b, c] in triangles {
        let word: Vec<Letter> = [(a, b), (b, c), (c, a)]
            .iter()
            .filter_map(|&(u, v)| letter(u, v))
            .collect();
        if !word.is_empty() {
            relators.push(word);
        }
    }

    let mut classes = SignedClasses::new(n_gens);
    let mut steps = 0usize;
    let all_trivial =
        |classes: &mut SignedClasses| (0..n_gens).all(|g| classes.is_trivial(g));

    loop {
        let mut changed = false;
        let mut next: Vec<Vec<Letter>> = Vec::with_capacity(relators.len());
        let mut extra: Vec<Vec<Letter>> = Vec::new();
        for mut word in relators {
            steps += word.len() + 1;
            if steps > budget {
                return Pi1Verdict::BudgetExhausted;
            }
            let before = word.len();
            word = word
                .into_iter()
                .filter_map(|(g, s)| {
                    if classes.is_trivial(g) {
                        None
                    } else {
                        let (root, sign) = classes.find(g);
                        Some((root, s * sign))
                    }
                })
                .collect();
            cyclic_reduce(&mut word);
            if word.len() != before {
                changed = true;
            }
            match word.len() {
                0 => {}
                1 => {
                    classes.mark_trivial(word[0].0);
                    changed = true;
                }
                2 => {
                    let (g, s1) = word[0];
                    let (h, s2) = word[1];
                    if g == h {
                        // g^2 = 1 (the freely reduced case g * g^-1 is gone).
                        next.push(word);
                    } else if let Some(rel) = classes.union(g, s1, h, s2) {
                        extra.push(rel);
                        changed = true;
                    } else {
                        changed = true;
                    }
                }
                _ => next.push(word),
            }
        }
        next.extend(extra);
        relators = next;
        if all_trivial(&mut classes) {
            return Pi1Verdict::Trivial;
        }
        if !changed {
            break;
        }
    }

    // Rewrite the surviving presentation over live generator roots.
    let mut live: BTreeMap<usize, usize> = BTreeMap::new();
    for g in 0..n_gens {
        if !classes.is_trivial(g) {
            let (root, _) = classes.find(g);
            let id = live.len();
            live.entry(root).or_insert(id);
        }
    }
    let mut words: Vec<Vec<Letter>> = Vec::new();
    for word in &relators {
        let mapped: Vec<Letter> = word
            .iter()
            .filter_map(|&(g, s)| {
                if classes.is_trivial(g) {
                    None
                } else {
                    let (root, sign) = classes.find(g);
                    Some((live[&root], s * sign))
                }
            })
            .collect();
        let mut mapped = mapped;
        cyclic_reduce(&mut mapped);
        if !mapped.is_empty() {
            words.push(mapped);
        }
    }
    let max_cosets = ((budget.saturating_sub(steps)) / 4).max(2);
    match todd_coxeter(live.len(), &words, max_cosets) {
        Some(1) => Pi1Verdict::Trivial,
        Some(order) => Pi1Verdict::FiniteNontrivial { order },
        None => Pi1Verdict::BudgetExhausted,
    }
}

/// Coset enumeration over the trivial subgroup (HLT with fill). Returns the
/// group order if the table closes within `max_cosets` live-or-dead cosets.
pub(crate) fn todd_coxeter(
    n_gens: usize,
    relators: &[Vec<Letter>],
    max_cosets: usize,
) -> Option<usize> {
    let alphabet = 2 * n_gens;
    let to_alpha = |(g, s): Letter| -> usize {
        if s > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    };
    let inv = |x: usize| -> usize { x ^ 1 };
    let words: Vec<Vec<usize>> =
        relators.iter().map(|w| w.iter().map(|&l| to_alpha(l)).collect()).collect();

    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet]];
    let mut parent: Vec<usize> = vec![0];

    fn find(parent: &mut Vec<usize>, mut c: usize) -> usize {
        while parent[c] != c {
            parent[c] = parent[parent[c]];
            c = parent[c];
        }
        c
    }

    // Installs a^x = b (and b^(x^-1) = a), queueing coincidences on clash.
    fn deduce(
        table: &mut Vec<Vec<Option<usize>>>,
        pending: &mut Vec<(usize, usize)>,
        a: usize,
        x: usize,
        b: usize,
        inv_x: usize,
    ) {
        match table[a][x] {
            None => {
                table[a][x] = Some(b);
                match table[b][inv_x] {
                    None => table[b][inv_x] = Some(a),
                    Some(z) => pending.push((z, a)),
                }
            }
            Some(z) => pending.push((z, b)),
        }
    }

    fn process(
        table: &mut Vec<Vec<Option<usize>>>,
        parent: &mut Vec<usize>,
        pending: &mut Vec<(usize, usize)>,
        alphabet: usize,
    ) {
        while let Some((a, b)) = pending.pop() {
            let a = find(parent, a);
            let b = find(parent, b);
            if a == b {
                continue;
            }
            let keep = a.min(b);
            let drop = a.max(b);
            parent[drop] = keep;
            for x in 0..alphabet {
                if let Some(t) = table[drop][x].take() {
                    let t = find(parent, t);
                    match table[keep][x] {
                        None => {
                            table[keep][x] = Some(t);
                            match table[t][x ^ 1] {
                                None => table[t][x ^ 1] = Some(keep),
                                Some(z) => pending.push((z, keep)),
                            }
                        }
                        Some(u) => pending.push((u, t)),
                    }
                }
            }
        }
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut cursor = 0usize;
    while cursor < table.len() {
        if find(&mut parent, cursor) != cursor {
            cursor += 1;
            continue;
        }
        for word in &words {
            // Scan-and-fill the relator at this coset.
            loop {
                let c = find(&mut parent, cursor);
                let mut f = c;
                let mut i = 0;
                while i < word.len() {
                    match table[f][word[i]] {
                        Some(t) => {
                            f = find(&mut parent, t);
                            i += 1;
                        }
                        None => break,
                    }
                }
                if i == word.len() {
                    if f != c {
                        pending.push((f, c));
                        process(&mut table, &mut parent, &mut pending, alphabet);
                    }
                    break;
                }
                let mut b = c;
                let mut k = word.len();
                while k > i + 1 {
                    match table[b][inv(word[k - 1])] {
                        Some(t) => {
                            b = find(&mut parent, t);
                            k -= 1;
                        }
                        None => break,
                    }
                }
                if k == i + 1 {
                    deduce(&mut table, &mut pending, f, word[i], b, inv(word[i]));
                    process(&mut table, &mut parent, &mut pending, alphabet);
                    if find(&mut parent, cursor) != cursor {
                        break;
                    }
                    continue;
                }
                // Gap of two or more: define one new coset and rescan.
                if table.len() >= max_cosets {
                    return None;
                }
                let fresh = table.len();
                table.push(vec![None; alphabet]);
                parent.push(fresh);
                deduce(&mut table, &mut pending, f, word[i], fresh, inv(word[i]));
                process(&mut table, &mut parent, &mut pending, alphabet);
                if find(&mut parent, cursor) != cursor {
                    break;
                }
            }
            if find(&mut parent, cursor) != cursor {
                break;
            }
        }
        if find(&mut parent, cursor) == cursor {
            // Complete the row so free factors keep producing cosets.
            for x in 0..alphabet {
                let c = find(&mut parent, cursor);
                if table[c][x].is_none() {
                    if table.len() >= max_cosets {
                        return None;
                    }
                    let fresh = table.len();
                    table.push(vec![None; alphabet]);
                    parent.push(fresh);
                    deduce(&mut table, &mut pending, c, x, fresh, inv(x));
                    process(&mut table, &mut parent, &mut pending, alphabet);
                }
            }
        }
        cursor += 1;
    }
    let order = (0..table.len()).filter(|&c| find(&mut parent, c) == c).count();
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_enumeration_counts_s3() {
        // <a, b | a^2, b^2, (ab)^3> is the symmetric group on 3 letters.
        let relators: Vec<Vec<Letter>> = vec![
            vec![(0, 1), (0, 1)],
            vec![(1, 1), (1, 1)],
            vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)],
        ];
        assert_eq!(todd_coxeter(2, &relators, 100), Some(6));
    }

    #[test]
    fn coset_enumeration_counts_quaternions() {
        // <a, b | a^4, a^2 b^-2, b^-1 a b a> has order 8.
        let relators: Vec<Vec<Letter>> = vec![
            vec![(0, 1), (0, 1), (0, 1), (0, 1)],
            vec![(0, 1), (0, 1), (1, -1), (1, -1)],
            vec![(1, -1), (0, 1), (1, 1), (0, 1)],
        ];
        assert_eq!(todd_coxeter(2, &relators, 200), Some(8));
    }

    #[test]
    fn coset_enumeration_detects_trivial_group() {
        // <a, b | a b a^-1 b^-2, b a b^-1 a^-2> is trivial.
        let relators: Vec<Vec<Letter>> = vec![
            vec![(0, 1), (1, 1), (0, -1), (1, -1), (1, -1)],
            vec![(1, 1), (0, 1), (1, -1), (0, -1), (0, -1)],
        ];
        assert_eq!(todd_coxeter(2, &relators, 5000), Some(1));
    }

    #[test]
    fn coset_enumeration_gives_up_on_free_group() {
        let relators: Vec<Vec<Letter>> = vec![];
        assert_eq!(todd_coxeter(2, &relators, 50), None);
    }

    #[test]
    fn cone_over_square_is_trivial() {
        // Vertices 0..4 with apex 4; square 0-1-2-3 plus all spokes.
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)];
        let triangles = vec![[0, 1, 4], [1, 2, 4], [2, 3, 4], [0, 3, 4]];
        assert_eq!(trivial_pi1_bounded(5, &edges, &triangles, 10_000), Pi1Verdict::Trivial);
    }

    #[test]
    fn bare_square_is_not_recognized_trivial() {
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        // No triangles: pi1 = Z. The engine must not answer Trivial.
        let verdict = trivial_pi1_bounded(4, &edges, &[], 500);
        assert_eq!(verdict, Pi1Verdict::BudgetExhausted);
    }

    #[test]
    fn zero_budget_exhausts() {
        let edges = vec![(0, 1), (1, 2), (2, 0)];
        let triangles = vec![[0, 1, 2]];
        assert_eq!(trivial_pi1_bounded(3, &edges, &triangles, 0), Pi1Verdict::BudgetExhausted);
    }
}
