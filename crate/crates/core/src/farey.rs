//! Bounded exploration of the generalized Farey graph `Γ_α` and cycle
//! certificates.
//!
//! Edges are the translates `g·ℓ` of `ℓ = {0, ∞}`. The graph is not locally
//! finite, so exploration is truncated by a syllable bound and an exponent
//! bound on the reduced words `g`. A cycle among explored edges is a cycle of
//! `Γ_α`, which is then not a tree; a bounded search that finds none proves
//! nothing.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{evaluate_word, syllable_matrix, Mat2, ProjPoint};
use crate::scalar::{on_field, ExactField, Scalar, Sign};
use crate::word::{Generator, ReducedWord, Syllable};

/// Unordered pair of distinct points, stored in ascending real order with
/// `∞` last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge<T> {
    lo: ProjPoint<T>,
    hi: ProjPoint<T>,
}

impl<T: ExactField> Edge<T> {
    /// `None` when the endpoints coincide.
    pub fn new(x: ProjPoint<T>, y: ProjPoint<T>) -> Option<Edge<T>> {
        match x.cmp_exact(&y) {
            std::cmp::Ordering::Less => Some(Edge { lo: x, hi: y }),
            std::cmp::Ordering::Greater => Some(Edge { lo: y, hi: x }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn endpoints(&self) -> (&ProjPoint<T>, &ProjPoint<T>) {
        (&self.lo, &self.hi)
    }

    pub fn contains(&self, p: &ProjPoint<T>) -> bool {
        &self.lo == p || &self.hi == p
    }

    /// The endpoint shared with `other`, when exactly one is shared.
    pub fn shared_endpoint(&self, other: &Edge<T>) -> Option<&ProjPoint<T>> {
        match (other.contains(&self.lo), other.contains(&self.hi)) {
            (true, false) => Some(&self.lo),
            (false, true) => Some(&self.hi),
            _ => None,
        }
    }

    /// `m·self`
    pub fn translate(&self, m: &Mat2<T>) -> Edge<T> {
        Edge::new(m.apply(&self.lo), m.apply(&self.hi)).expect("Möbius maps are injective")
    }

    /// `m·ℓ = {m(0), m(∞)}`
    pub fn of_matrix(m: &Mat2<T>) -> Edge<T> {
        base_edge().translate(m)
    }
}

impl<T: fmt::Display> fmt::Display for Edge<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

/// `ℓ = {0, ∞}`
pub fn base_edge<T: ExactField>() -> Edge<T> {
    Edge {
        lo: ProjPoint::zero(),
        hi: ProjPoint::Infinity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallBounds {
    pub syllables: usize,
    pub exponents: i64,
}

/// All edges `w·ℓ` for reduced words `w` within the bounds, in generation
/// order, each with the first word that produced it.
#[derive(Debug, Clone)]
pub struct BallExploration<T> {
    pub alpha: T,
    pub bounds: BallBounds,
    edges: IndexMap<Edge<T>, ReducedWord>,
    words_generated: usize,
}

/// Exponents `1, −1, 2, −2, …, k, −k`.
fn exponent_order(bound: i64) -> impl Iterator<Item = i64> + Clone {
    (1..=bound).flat_map(|k| [k, -k])
}

fn normalized_alpha<T: ExactField>(alpha: &T) -> Result<T> {
    match alpha.sign() {
        Sign::Zero => Err(Error::DegenerateAlpha),
        Sign::Negative => Ok(-alpha.clone()),
        Sign::Positive => Ok(alpha.clone()),
    }
}

/// Breadth-first over syllable count. `α` is replaced by `|α|`, which
/// generates the same group.
pub fn explore_ball<T: ExactField>(
    alpha: &T,
    syllable_bound: usize,
    exponent_bound: i64,
) -> Result<BallExploration<T>> {
    let alpha = normalized_alpha(alpha)?;
    let bounds = BallBounds {
        syllables: syllable_bound,
        exponents: exponent_bound.max(0),
    };
    let mut ball = BallExploration {
        alpha,
        bounds,
        edges: IndexMap::new(),
        words_generated: 1,
    };
    ball.edges.insert(base_edge(), ReducedWord::identity());
    let steps: Vec<(Generator, i64, Mat2<T>)> = [Generator::A, Generator::B]
        .into_iter()
        .flat_map(|g| exponent_order(bounds.exponents).map(move |k| (g, k)))
        .map(|(g, k)| (g, k, syllable_matrix(g, k, &ball.alpha)))
        .collect();
    let mut frontier: Vec<(ReducedWord, Mat2<T>)> =
        vec![(ReducedWord::identity(), Mat2::identity())];
    for level in 1..=bounds.syllables {
        let keep = level < bounds.syllables;
        let mut next = Vec::new();
        for (word, m) in &frontier {
            let last = word.syllables().last().map(|s| s.generator);
            for (g, k, step) in &steps {
                if Some(*g) == last {
                    continue;
                }
                let m2 = m.mul(step);
                let mut syl = word.syllables().to_vec();
                syl.push(Syllable::new(*g, *k));
                let w2 = ReducedWord::from_syllables(syl);
                ball.words_generated += 1;
                ball.edges
                    .entry(Edge::of_matrix(&m2))
                    .or_insert_with(|| w2.clone());
                if keep {
                    next.push((w2, m2));
                }
            }
        }
        frontier = next;
    }
    Ok(ball)
}

impl<T: ExactField> BallExploration<T> {
    pub fn edges(&self) -> impl Iterator<Item = (&Edge<T>, &ReducedWord)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of words enumerated, counting the identity.
    pub fn words_generated(&self) -> usize {
        self.words_generated
    }

    pub fn contains_edge(&self, e: &Edge<T>) -> bool {
        self.edges.contains_key(e)
    }

    pub fn witness_word(&self, e: &Edge<T>) -> Option<&ReducedWord> {
        self.edges.get(e)
    }

    pub fn vertices(&self) -> HashSet<ProjPoint<T>> {
        self.edges
            .keys()
            .flat_map(|e| [e.lo.clone(), e.hi.clone()])
            .collect()
    }

    pub fn to_json(&self, include_edges: bool) -> serde_json::Value {
        let mut out = serde_json::json!({
            "alpha": self.alpha.to_scalar(),
            "bounds": self.bounds,
            "vertex_count": self.vertices().len(),
            "edge_count": self.edge_count(),
            "words_generated": self.words_generated,
        });
        if include_edges {
            out["edges"] = self
                .edges
                .iter()
                .map(|(e, w)| {
                    serde_json::json!({
                        "endpoints": [e.lo.to_string(), e.hi.to_string()],
                        "word": w,
                    })
                })
                .collect();
        }
        out
    }
}

/// A closed vertex path of at least three distinct edges, each given by a
/// word `w` standing for the edge `w·ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub alpha: Scalar,
    pub edge_words: Vec<ReducedWord>,
}

/// Graph view of a ball: vertices indexed in first-seen order.
struct Graph<T> {
    points: Vec<ProjPoint<T>>,
    adj: Vec<Vec<usize>>,
}

impl<T: ExactField> Graph<T> {
    fn build(ball: &BallExploration<T>) -> Graph<T> {
        let mut index: HashMap<ProjPoint<T>, usize> = HashMap::new();
        let mut points = Vec::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        let mut id =
            |p: &ProjPoint<T>, points: &mut Vec<ProjPoint<T>>, adj: &mut Vec<Vec<usize>>| {
                *index.entry(p.clone()).or_insert_with(|| {
                    points.push(p.clone());
                    adj.push(Vec::new());
                    points.len() - 1
                })
            };
        for e in ball.edges.keys() {
            let a = id(&e.lo, &mut points, &mut adj);
            let b = id(&e.hi, &mut points, &mut adj);
            adj[a].push(b);
            adj[b].push(a);
        }
        // neighbours in ascending real order with ∞ last
        for list in adj.iter_mut() {
            list.sort_by(|&x, &y| points[x].cmp_exact(&points[y]));
        }
        Graph { points, adj }
    }

    /// Vertices of the 2-core: repeatedly strip vertices of degree ≤ 1.
    fn two_core(&self) -> Vec<bool> {
        let n = self.points.len();
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &w in &self.adj[v] {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        alive
    }

    /// Shortest path from `src` to `dst` inside `alive`, not using the edge
    /// `src–dst` itself.
    fn path_avoiding_edge(&self, alive: &[bool], src: usize, dst: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.points.len()];
        parent[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !alive[w] || parent[w] != usize::MAX || (v == src && w == dst) {
                    continue;
                }
                parent[w] = v;
                if w == dst {
                    let mut path = vec![dst];
                    let mut cur = dst;
                    while cur != src {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// Shortest simple cycle through `root` of length `< limit`, found by BFS
    /// from `root` as two vertex-disjoint branches closed by a non-tree edge.
    fn cycle_from(&self, alive: &[bool], root: usize, limit: usize) -> Option<Vec<usize>> {
        let n = self.points.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        // branch[v] is the child of root whose subtree contains v
        let mut branch = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut best: Option<(usize, usize, usize)> = None;
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] + 1 >= best.map_or(limit, |b| b.0) {
                break;
            }
            for &w in &self.adj[v] {
                if !alive[w] || w == parent[v] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    branch[w] = if v == root { w } else { branch[v] };
                    queue.push_back(w);
                } else if w != root && v != root && branch[w] != branch[v] {
                    let len = dist[v] + dist[w] + 1;
                    if len < best.map_or(limit, |b| b.0) {
                        best = Some((len, v, w));
                    }
                }
            }
        }
        let (_, v, w) = best?;
        let climb = |mut x: usize| {
            let mut path = vec![x];
            while x != root {
                x = parent[x];
                path.push(x);
            }
            path
        };
        let mut cycle = climb(v);
        cycle.reverse();
        let mut back = climb(w);
        back.pop();
        cycle.extend(back);
        Some(cycle)
    }
}

/// A shortest cycle among the explored edges, or `None` (inconclusive).
///
/// A shortest cycle through `ℓ` is preferred when it is as short as any
/// other; it is traced from `0` with neighbours taken in ascending order.
pub fn find_cycle<T: ExactField>(ball: &BallExploration<T>) -> Option<CycleCertificate> {
    let g = Graph::build(ball);
    let alive = g.two_core();
    if !alive.iter().any(|&a| a) {
        return None;
    }
    let zero = g.points.iter().position(|p| *p == ProjPoint::zero())?;
    let inf = g.points.iter().position(ProjPoint::is_infinity)?;
    let mut best: Option<Vec<usize>> = None;
    if alive[zero] && alive[inf] {
        best = g.path_avoiding_edge(&alive, zero, inf);
    }
    // a cycle has at least three vertices, so length three cannot be beaten
    if best.as_ref().is_none_or(|c| c.len() > 3) {
        for root in 0..g.points.len() {
            if !alive[root] {
                continue;
            }
            let limit = best.as_ref().map_or(usize::MAX, Vec::len);
            if let Some(c) = g.cycle_from(&alive, root, limit) {
                let done = c.len() == 3;
                best = Some(c);
                if done {
                    break;
                }
            }
        }
    }
    let cycle = best?;
    let words = (0..cycle.len())
        .map(|i| {
            let a = g.points[cycle[i]].clone();
            let b = g.points[cycle[(i + 1) % cycle.len()]].clone();
            let e = Edge::new(a, b).expect("cycle vertices are distinct");
            ball.witness_word(&e)
                .expect("cycle edges come from the ball")
                .clone()
        })
        .collect();
    Some(CycleCertificate {
        alpha: ball.alpha.to_scalar(),
        edge_words: words,
    })
}

/// Explores balls with syllable bound `1, 2, …, syllable_bound` and returns
/// the first cycle found with the bound that produced it.
pub fn find_cycle_incremental<T: ExactField>(
    alpha: &T,
    syllable_bound: usize,
    exponent_bound: i64,
) -> Result<Option<(CycleCertificate, usize)>> {
    normalized_alpha(alpha)?;
    for s in 1..=syllable_bound {
        let ball = explore_ball(alpha, s, exponent_bound)?;
        if let Some(c) = find_cycle(&ball) {
            return Ok(Some((c, s)));
        }
    }
    Ok(None)
}

/// [`find_cycle_incremental`] for a tagged scalar.
pub fn find_cycle_scalar(
    alpha: &Scalar,
    syllable_bound: usize,
    exponent_bound: i64,
) -> Result<Option<(CycleCertificate, usize)>> {
    on_field!(alpha, a => find_cycle_incremental(a, syllable_bound, exponent_bound))
}

/// Re-evaluates every word and checks that the edges are pairwise distinct
/// and form a closed path through distinct vertices.
pub fn check_certificate(cert: &CycleCertificate) -> Result<bool> {
    if cert.edge_words.len() < 3 {
        return Err(Error::InvalidCertificate(format!(
            "a cycle needs at least 3 edges, got {}",
            cert.edge_words.len()
        )));
    }
    if cert.alpha.is_zero() {
        return Err(Error::DegenerateAlpha);
    }
    Ok(on_field!(&cert.alpha, a => check_words(a, &cert.edge_words)))
}

fn check_words<T: ExactField>(alpha: &T, words: &[ReducedWord]) -> bool {
    let edges: Vec<Edge<T>> = words
        .iter()
        .map(|w| Edge::of_matrix(&evaluate_word(w, alpha)))
        .collect();
    if edges.iter().collect::<HashSet<_>>().len() != edges.len() {
        return false;
    }
    let mut joints = HashSet::new();
    for i in 0..edges.len() {
        let next = &edges[(i + 1) % edges.len()];
        match edges[i].shared_endpoint(next) {
            Some(p) => {
                if !joints.insert(p.clone()) {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}
