//! Root vectors, the reflection action, and small-root enumeration.
//!
//! A root is one scalar per graph vertex. Reflecting at a vertex x replaces
//! the x-component by its negation plus the weighted sum of the neighbour
//! components. Small roots are those reachable from unit roots without any
//! step changing the modified component by 2 or more; there are finitely
//! many of them, and they are exactly the states the word recognizer needs.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::field::{weight, ArithError, Sign, Value};
use crate::graph::{CoxeterGraph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum RootError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("root has components of both signs; reflection paths never produce this")]
    MixedSigns,
    #[error("the zero vector is not a root")]
    ZeroVector,
    #[error("small-root enumeration exceeded the cap of {0} states")]
    StateCapExceeded(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    components: Vec<Value>,
}

impl Root {
    pub fn new(components: Vec<Value>) -> Self {
        Root { components }
    }

    pub fn components(&self) -> &[Value] {
        &self.components
    }

    pub fn component(&self, v: Vertex) -> &Value {
        &self.components[v]
    }

    pub fn is_exact(&self) -> bool {
        self.components.iter().all(Value::is_exact)
    }

    /// Components in vertex order, space-separated, canonically rendered.
    pub fn render(&self) -> String {
        self.components.iter().map(Value::render).collect::<Vec<_>>().join(" ")
    }

    pub fn negated(&self) -> Root {
        Root { components: self.components.iter().map(Value::neg).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

/// Component 1 at `s`, 0 elsewhere.
pub fn unit_root(g: &CoxeterGraph, s: Vertex) -> Root {
    let mut components = vec![Value::zero(); g.vertex_count()];
    components[s] = Value::one();
    Root { components }
}

/// The reflection at `x`: only the x-component changes, to
/// −r_x + Σ_{y ~ x} weight(m_xy) · r_y. An involution.
pub fn reflect(r: &Root, x: Vertex, g: &CoxeterGraph) -> Result<Root, RootError> {
    if x >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(format!("#{x}")).into());
    }
    let mut acc = r.components[x].neg();
    for &(y, label) in g.neighbours(x) {
        let w = weight(label)?;
        acc = acc.add(&w.mul(&r.components[y]));
    }
    let mut components = r.components.clone();
    components[x] = acc;
    Ok(Root { components })
}

/// Which side of the root poset the root lies on. Roots produced by
/// reflection sequences from unit roots are never mixed-sign; seeing mixed
/// signs here means the caller fed in something that is not a root.
pub fn side(r: &Root) -> Result<Side, RootError> {
    let mut pos = false;
    let mut neg = false;
    for c in &r.components {
        match c.sign()? {
            Sign::Positive => pos = true,
            Sign::Negative => neg = true,
            Sign::Zero => {}
        }
    }
    match (pos, neg) {
        (true, false) => Ok(Side::Positive),
        (false, true) => Ok(Side::Negative),
        (false, false) => Err(RootError::ZeroVector),
        (true, true) => Err(RootError::MixedSigns),
    }
}

/// The finitely many small roots of a graph, indexed for O(1) membership.
#[derive(Debug, Clone)]
pub struct SmallRootSet {
    roots: Vec<Root>,
    by_key: HashMap<String, usize>,
    tainted: bool,
}

impl SmallRootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.by_key.contains_key(&r.render())
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.by_key.get(&r.render()).copied()
    }

    /// True when some edge label forced approximate arithmetic, so
    /// deduplication relied on rounded renderings.
    pub fn tainted(&self) -> bool {
        self.tainted
    }
}

/// Membership in the small-root set.
pub fn is_small(r: &Root, set: &SmallRootSet) -> bool {
    set.contains(r)
}

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

pub fn enumerate_small_roots(g: &CoxeterGraph) -> Result<SmallRootSet, RootError> {
    enumerate_small_roots_capped(g, DEFAULT_STATE_CAP)
}

/// Breadth-first closure of the unit roots under reflections whose modified
/// component changes by strictly less than 2 in absolute value and whose
/// result stays on the positive side.
pub fn enumerate_small_roots_capped(g: &CoxeterGraph, cap: usize) -> Result<SmallRootSet, RootError> {
    let two = Value::from_integer(2);
    let minus_two = Value::from_integer(-2);
    let mut set = SmallRootSet {
        roots: Vec::new(),
        by_key: HashMap::new(),
        tainted: !g.has_exact_labels(),
    };
    let mut queue = VecDeque::new();
    for s in 0..g.vertex_count() {
        let r = unit_root(g, s);
        set.by_key.insert(r.render(), set.roots.len());
        set.roots.push(r.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for x in 0..g.vertex_count() {
            let next = reflect(&r, x, g)?;
            let delta = next.component(x).sub(r.component(x));
            let small_step = delta.compare(&two)? == std::cmp::Ordering::Less
                && delta.compare(&minus_two)? == std::cmp::Ordering::Greater;
            if !small_step {
                continue;
            }
            match side(&next)? {
                Side::Negative => continue,
                Side::Positive => {}
            }
            let key = next.render();
            if set.by_key.contains_key(&key) {
                continue;
            }
            if set.roots.len() >= cap {
                return Err(RootError::StateCapExceeded(cap));
            }
            set.by_key.insert(key, set.roots.len());
            set.roots.push(next.clone());
            queue.push_back(next);
        }
    }
    Ok(set)
}

/// Orders roots componentwise-lexicographically, falling back to rendering
/// order where approximate components defeat exact comparison.
pub fn root_order(a: &Root, b: &Root) -> std::cmp::Ordering {
    for (x, y) in a.components().iter().zip(b.components()) {
        match x.compare(y) {
            Ok(std::cmp::Ordering::Equal) => continue,
            Ok(other) => return other,
            Err(_) => return a.render().cmp(&b.render()),
        }
    }
    std::cmp::Ordering::Equal
}

/// The small-root poset in DOT form: one node per root, an edge labelled x
/// from r to r' whenever reflecting r at x raises the x-component to give r'.
pub fn poset_dot(set: &SmallRootSet, g: &CoxeterGraph) -> String {
    let mut order: Vec<usize> = (0..set.roots.len()).collect();
    order.sort_by(|&i, &j| root_order(&set.roots[i], &set.roots[j]));
    let rank = {
        let mut rank = vec![0usize; set.roots.len()];
        for (pos, &i) in order.iter().enumerate() {
            rank[i] = pos;
        }
        rank
    };
    let mut out = String::from("digraph smallroots {\n  rankdir=LR;\n  node [shape=box];\n");
    for &i in &order {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", rank[i], set.roots[i].render()));
    }
    for &i in &order {
        let r = &set.roots[i];
        for x in 0..g.vertex_count() {
            if let Ok(next) = reflect(r, x, g) {
                if let Some(j) = set.index_of(&next) {
                    let increases = matches!(
                        next.component(x).compare(r.component(x)),
                        Ok(std::cmp::Ordering::Greater)
                    );
                    if increases {
                        out.push_str(&format!(
                            "  n{} -> n{} [label=\"{}\"];\n",
                            rank[i],
                            rank[j],
                            g.vertex_name(x)
                        ));
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};

    fn a2_tilde() -> CoxeterGraph {
        catalog(Family::ATilde, Some(2)).unwrap().graph
    }

    fn ints(r: &Root) -> Vec<i64> {
        r.components().iter().map(|v| v.to_f64().round() as i64).collect()
    }

    #[test]
    fn unit_roots_have_one_hot_components() {
        let g = a2_tilde();
        assert_eq!(unit_root(&g, 0).render(), "1 0 0");
        assert_eq!(unit_root(&g, 2).render(), "0 0 1");
        let a1 = CoxeterGraph::parse("vertex a\n").unwrap();
        assert_eq!(unit_root(&a1, 0).render(), "1");
    }

    #[test]
    fn reflection_follows_the_weighted_neighbour_rule() {
        let g = a2_tilde();
        let r = unit_root(&g, 0);
        let rb = reflect(&r, 1, &g).unwrap();
        assert_eq!(ints(&rb), vec![1, 1, 0]);
        let rbc = reflect(&rb, 2, &g).unwrap();
        assert_eq!(ints(&rbc), vec![1, 1, 2]);
    }

    #[test]
    fn reflecting_a_unit_root_at_itself_negates_it() {
        let g = a2_tilde();
        for s in 0..3 {
            let r = unit_root(&g, s);
            assert_eq!(reflect(&r, s, &g).unwrap(), r.negated());
        }
    }

    #[test]
    fn side_classifies_and_rejects() {
        let g = a2_tilde();
        let pos = Root::new(vec![Value::one(), Value::one(), Value::from_integer(2)]);
        assert_eq!(side(&pos).unwrap(), Side::Positive);
        let neg = Root::new(vec![Value::zero(), Value::zero(), Value::from_integer(-1)]);
        assert_eq!(side(&neg).unwrap(), Side::Negative);
        assert_eq!(side(&unit_root(&g, 0)).unwrap(), Side::Positive);
        let mixed = Root::new(vec![Value::one(), Value::from_integer(-1), Value::zero()]);
        assert!(matches!(side(&mixed), Err(RootError::MixedSigns)));
        let zero = Root::new(vec![Value::zero()]);
        assert!(matches!(side(&zero), Err(RootError::ZeroVector)));
    }

    #[test]
    fn a2_tilde_has_exactly_six_small_roots() {
        let g = a2_tilde();
        let set = enumerate_small_roots(&g).unwrap();
        let mut rendered: Vec<String> = set.roots().iter().map(Root::render).collect();
        rendered.sort();
        let mut expected = vec!["1 0 0", "0 1 0", "0 0 1", "1 1 0", "0 1 1", "1 0 1"];
        expected.sort_unstable();
        assert_eq!(rendered, expected);
        assert!(!set.tainted());
    }

    #[test]
    fn single_vertex_graph_has_one_small_root() {
        let g = CoxeterGraph::parse("vertex a\n").unwrap();
        let set = enumerate_small_roots(&g).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn infinite_bond_keeps_only_the_unit_roots() {
        let g = catalog(Family::ATilde, Some(1)).unwrap().graph;
        let set = enumerate_small_roots(&g).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn big_roots_are_recognized() {
        let g = a2_tilde();
        let set = enumerate_small_roots(&g).unwrap();
        let big = Root::new(vec![Value::one(), Value::one(), Value::from_integer(2)]);
        assert!(!is_small(&big, &set));
        let small = Root::new(vec![Value::one(), Value::zero(), Value::one()]);
        assert!(is_small(&small, &set));
        for s in 0..3 {
            assert!(is_small(&unit_root(&g, s), &set));
        }
    }

    #[test]
    fn state_cap_is_enforced() {
        let g = a2_tilde();
        assert!(matches!(
            enumerate_small_roots_capped(&g, 4),
            Err(RootError::StateCapExceeded(4))
        ));
    }

    #[test]
    fn label_seven_enumeration_refuses_to_guess_signs() {
        // Walking the dihedral-7 roots cancels a coordinate to a value that
        // is zero algebraically but only ≈ 0 in approximate arithmetic, and
        // sign queries within the error bound are rejected, never guessed.
        let g = CoxeterGraph::parse("vertex a\nvertex b\nedge a b 7\n").unwrap();
        assert!(matches!(
            enumerate_small_roots(&g),
            Err(RootError::Arith(crate::field::ArithError::PrecisionExhausted { .. }))
        ));
    }

    #[test]
    fn poset_dot_mentions_every_root() {
        let g = a2_tilde();
        let set = enumerate_small_roots(&g).unwrap();
        let dot = poset_dot(&set, &g);
        for r in set.roots() {
            assert!(dot.contains(&r.render()));
        }
        assert!(dot.starts_with("digraph"));
    }
}
