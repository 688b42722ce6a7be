//! Exact random orbits of rational points and the classification of their
//! c-Lüroth expansions into unique, countably many and uncountably many.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::expansion::{fmt_word, psi_periodic};
use crate::maps::{self, Region, SignDigit};
use crate::rational::fmt_rational;

pub const DEFAULT_NODE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Omega bits that select this transition, as a mask (bit 0 -> 1, bit 1 -> 2).
    pub bits: u8,
    pub target: usize,
    pub label: SignDigit,
}

impl Edge {
    /// The smallest omega bit that realizes the edge.
    pub fn bit(&self) -> u8 {
        if self.bits & 1 != 0 {
            0
        } else {
            1
        }
    }

    fn bits_str(&self) -> &'static str {
        match self.bits {
            1 => "0",
            2 => "1",
            _ => "01",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrbitGraph {
    pub c: BigRational,
    /// Node 0 is the root.
    pub nodes: Vec<BigRational>,
    pub edges: Vec<Vec<Edge>>,
    pub in_switch: Vec<bool>,
}

fn outgoing(c: &BigRational, x: &BigRational) -> Result<(Vec<(u8, SignDigit, BigRational)>, bool)> {
    let loc = maps::locate(c, x)?;
    let mut out: Vec<(u8, SignDigit, BigRational)> = Vec::with_capacity(2);
    for j in 0..2u8 {
        let sd = loc.sign_digit(j);
        let y = maps::apply_sign(x, sd);
        match out.iter_mut().find(|(_, l, t)| *l == sd && *t == y) {
            Some(e) => e.0 |= 1 << j,
            None => out.push((1 << j, sd, y)),
        }
    }
    Ok((out, loc.region == Region::Switch))
}

/// Breadth-first closure of `x` under both branch maps, in exact arithmetic.
pub fn build_orbit_graph(x: &BigRational, c: &BigRational, node_cap: usize) -> Result<OrbitGraph> {
    maps::check_c(c)?;
    if x.is_zero() {
        return Err(Error::domain("orbit graphs start from a nonzero point"));
    }
    maps::locate(c, x)?;
    let mut g = OrbitGraph { c: c.clone(), nodes: vec![x.clone()], edges: Vec::new(), in_switch: Vec::new() };
    let mut index: HashMap<BigRational, usize> = HashMap::from([(x.clone(), 0)]);
    let mut i = 0;
    while i < g.nodes.len() {
        let (out, sw) = outgoing(c, &g.nodes[i])?;
        let mut edges = Vec::with_capacity(out.len());
        for (bits, label, y) in out {
            let target = match index.get(&y) {
                Some(&t) => t,
                None => {
                    if g.nodes.len() >= node_cap {
                        return Err(Error::CapExceeded { what: "orbit graph", cap: node_cap });
                    }
                    index.insert(y.clone(), g.nodes.len());
                    g.nodes.push(y);
                    g.nodes.len() - 1
                }
            };
            edges.push(Edge { bits, target, label });
        }
        g.edges.push(edges);
        g.in_switch.push(sw);
        i += 1;
    }
    Ok(g)
}

impl OrbitGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, y: &BigRational) -> Option<usize> {
        self.nodes.iter().position(|v| v == y)
    }

    /// Component id per node, and whether each component carries a cycle.
    fn components(&self) -> (Vec<usize>, Vec<bool>) {
        let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(self.len(), 2 * self.len());
        let ids: Vec<_> = (0..self.len()).map(|_| pg.add_node(())).collect();
        for (u, es) in self.edges.iter().enumerate() {
            for e in es {
                pg.add_edge(ids[u], ids[e.target], ());
            }
        }
        let mut comp = vec![0; self.len()];
        let sccs = tarjan_scc(&pg);
        let mut cyclic = vec![false; sccs.len()];
        for (k, scc) in sccs.iter().enumerate() {
            for n in scc {
                comp[n.index()] = k;
            }
        }
        for (u, es) in self.edges.iter().enumerate() {
            for e in es {
                if comp[e.target] == comp[u] {
                    cyclic[comp[u]] = true;
                }
            }
        }
        (comp, cyclic)
    }

    /// Nodes that can be revisited, i.e. lie on a cycle. Every node is
    /// reachable from the root by construction.
    pub fn recurrent_nodes(&self) -> Vec<usize> {
        let (comp, cyclic) = self.components();
        (0..self.len()).filter(|&u| cyclic[comp[u]]).collect()
    }

    /// Shortest path from `from` to `to` inside `allowed`, as edge choices.
    fn shortest_path(&self, from: usize, to: usize, allowed: &dyn Fn(usize) -> bool) -> Option<Vec<&Edge>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for (k, e) in self.edges[u].iter().enumerate() {
                if seen[e.target] || !allowed(e.target) {
                    continue;
                }
                seen[e.target] = true;
                prev[e.target] = Some((u, k));
                if e.target == to {
                    let mut path = Vec::new();
                    let mut v = to;
                    while let Some((p, k)) = prev[v] {
                        path.push(&self.edges[p][k]);
                        v = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(e.target);
            }
        }
        None
    }

    /// DOT text: nodes are `"p/q"`, edges carry `label="(s,d);bits"`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph orbit {\n");
        for (u, x) in self.nodes.iter().enumerate() {
            let shape = if self.in_switch[u] { "doublecircle" } else { "circle" };
            s.push_str(&format!("  \"{}\" [shape={shape}];\n", fmt_rational(x)));
        }
        for (u, es) in self.edges.iter().enumerate() {
            for e in es {
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{};{}\"];\n",
                    fmt_rational(&self.nodes[u]),
                    fmt_rational(&self.nodes[e.target]),
                    e.label,
                    e.bits_str()
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Outcome of following the orbit of `x` while it stays outside the switch
/// region, where the dynamics is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicPath {
    pub avoids_switch: bool,
    /// Points visited; when `avoids_switch`, the tail from `cycle_start` repeats.
    pub path: Vec<BigRational>,
    pub labels: Vec<SignDigit>,
    pub cycle_start: usize,
}

pub fn deterministic_avoids_switch(x: &BigRational, c: &BigRational) -> Result<DeterministicPath> {
    maps::check_c(c)?;
    let mut seen: HashMap<BigRational, usize> = HashMap::new();
    let mut path = Vec::new();
    let mut labels = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(&k) = seen.get(&cur) {
            return Ok(DeterministicPath { avoids_switch: true, path, labels, cycle_start: k });
        }
        let loc = maps::locate(c, &cur)?;
        if loc.region == Region::Switch {
            path.push(cur);
            let n = path.len();
            return Ok(DeterministicPath { avoids_switch: false, path, labels, cycle_start: n });
        }
        let sd = loc.sign_digit(0);
        let next = maps::apply_sign(&cur, sd);
        seen.insert(cur.clone(), path.len());
        path.push(cur);
        labels.push(sd);
        cur = next;
    }
}

/// A first-return word at `anchor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopClass {
    pub anchor: BigRational,
    pub label_word: Vec<SignDigit>,
    pub representative_bits: Vec<u8>,
}

impl fmt::Display for LoopClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.representative_bits.iter().map(|b| char::from(b'0' + b)).collect();
        write!(f, "{} at {} via {}", fmt_word(&self.label_word), fmt_rational(&self.anchor), bits)
    }
}

fn loop_from_edges(anchor: &BigRational, edges: &[&Edge]) -> LoopClass {
    LoopClass {
        anchor: anchor.clone(),
        label_word: edges.iter().map(|e| e.label).collect(),
        representative_bits: edges.iter().map(|e| e.bit()).collect(),
    }
}

#[derive(Debug, Clone)]
pub struct LoopEnumeration {
    pub classes: Vec<LoopClass>,
    /// False when the class cap or the work cap stopped the search early.
    pub complete: bool,
    pub max_len: usize,
}

pub const DEFAULT_CLASS_CAP: usize = 4096;
const DFS_WORK_CAP: usize = 5_000_000;

/// First-return label words at `y`, up to length `4 · |graph|`.
///
/// Distinct label words are distinct classes, since a label fixes the branch
/// and hence the target; parallel tie edges therefore yield separate classes.
pub fn enumerate_loop_classes(graph: &OrbitGraph, y: usize) -> LoopEnumeration {
    enumerate_loop_classes_bounded(graph, y, 4 * graph.len(), DEFAULT_CLASS_CAP)
}

pub fn enumerate_loop_classes_bounded(graph: &OrbitGraph, y: usize, max_len: usize, class_cap: usize) -> LoopEnumeration {
    struct Search<'a> {
        g: &'a OrbitGraph,
        y: usize,
        max_len: usize,
        cap: usize,
        work: usize,
        stack: Vec<&'a Edge>,
        found: Vec<LoopClass>,
        stopped: bool,
    }
    impl<'a> Search<'a> {
        fn go(&mut self, u: usize) {
            for e in &self.g.edges[u] {
                if self.stopped {
                    return;
                }
                self.work += 1;
                if self.work > DFS_WORK_CAP {
                    self.stopped = true;
                    return;
                }
                self.stack.push(e);
                if e.target == self.y {
                    self.found.push(loop_from_edges(&self.g.nodes[self.y], &self.stack));
                    if self.found.len() >= self.cap {
                        self.stopped = true;
                    }
                } else if self.stack.len() < self.max_len {
                    self.go(e.target);
                }
                self.stack.pop();
            }
        }
    }
    let mut s = Search { g: graph, y, max_len, cap: class_cap, work: 0, stack: Vec::new(), found: Vec::new(), stopped: false };
    if y < graph.len() && max_len > 0 {
        s.go(y);
    }
    LoopEnumeration { classes: s.found, complete: !s.stopped, max_len }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionClass {
    UniquePeriodic,
    CountablyPeriodic,
    UncountablyMany,
}

impl ExpansionClass {
    pub fn name(&self) -> &'static str {
        match self {
            ExpansionClass::UniquePeriodic => "unique-periodic",
            ExpansionClass::CountablyPeriodic => "countably-periodic",
            ExpansionClass::UncountablyMany => "uncountably-many",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// The deterministic orbit and its cycle.
    Deterministic(DeterministicPath),
    /// Two inequivalent loops at the same node.
    TwoLoops(LoopClass, LoopClass),
    /// The only loop at each recurrent node.
    SingleLoops(Vec<LoopClass>),
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub class: ExpansionClass,
    pub witness: Witness,
    pub graph: OrbitGraph,
}

/// Classifies the expansions of a rational `x ∈ [c, 1]`.
///
/// Two inequivalent loops exist at some node iff some node `v` of a cyclic
/// component has two edges with different labels that both stay in the
/// component: the two loops through `v` start with different symbols, and
/// conversely two different first-return words split at such a node.
pub fn classify(x: &BigRational, c: &BigRational) -> Result<Classification> {
    classify_with_cap(x, c, DEFAULT_NODE_CAP)
}

pub fn classify_with_cap(x: &BigRational, c: &BigRational, node_cap: usize) -> Result<Classification> {
    let graph = build_orbit_graph(x, c, node_cap)?;
    let det = deterministic_avoids_switch(x, c)?;
    if det.avoids_switch {
        return Ok(Classification { class: ExpansionClass::UniquePeriodic, witness: Witness::Deterministic(det), graph });
    }
    let (comp, cyclic) = graph.components();
    let mut best: Option<(usize, LoopClass, LoopClass)> = None;
    for v in 0..graph.len() {
        if !cyclic[comp[v]] {
            continue;
        }
        let inside: Vec<&Edge> = graph.edges[v].iter().filter(|e| comp[e.target] == comp[v]).collect();
        if inside.len() < 2 || inside[0].label == inside[1].label {
            continue;
        }
        let same = |w: usize| comp[w] == comp[v];
        let mut loops = Vec::with_capacity(2);
        for e in &inside[..2] {
            // The BFS path back never passes through v before its end.
            let back = graph.shortest_path(e.target, v, &same).expect("component is strongly connected");
            let mut word = vec![*e];
            word.extend(back);
            loops.push(loop_from_edges(&graph.nodes[v], &word));
        }
        let total = loops[0].label_word.len() + loops[1].label_word.len();
        if best.as_ref().is_none_or(|(t, ..)| total < *t) {
            let b = loops.pop().unwrap();
            let a = loops.pop().unwrap();
            best = Some((total, a, b));
        }
    }
    if let Some((_, a, b)) = best {
        return Ok(Classification { class: ExpansionClass::UncountablyMany, witness: Witness::TwoLoops(a, b), graph });
    }
    // Each cyclic component is a simple cycle: one in-component edge per node.
    let mut singles = Vec::new();
    for v in graph.recurrent_nodes() {
        let mut word = Vec::new();
        let mut u = v;
        loop {
            let e = graph.edges[u].iter().find(|e| comp[e.target] == comp[v]).expect("cyclic component");
            word.push(e);
            u = e.target;
            if u == v {
                break;
            }
        }
        singles.push(loop_from_edges(&graph.nodes[v], &word));
    }
    Ok(Classification { class: ExpansionClass::CountablyPeriodic, witness: Witness::SingleLoops(singles), graph })
}

/// An eventually periodic symbol sequence `pre · period^∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicExpansion {
    pub pre: Vec<SignDigit>,
    pub period: Vec<SignDigit>,
}

impl PeriodicExpansion {
    /// Shortest period, then shortest preperiod. Two sequences are equal iff
    /// their canonical forms are.
    pub fn canonical(mut self) -> Self {
        let n = self.period.len();
        if let Some(r) = (1..=n).find(|&r| n.is_multiple_of(r) && (r..n).all(|i| self.period[i] == self.period[i - r])) {
            self.period.truncate(r);
        }
        while let (Some(a), Some(b)) = (self.pre.last(), self.period.last()) {
            if a != b {
                break;
            }
            self.pre.pop();
            self.period.rotate_right(1);
        }
        self
    }

    pub fn value(&self) -> Result<BigRational> {
        psi_periodic(&self.pre, &self.period)
    }
}

impl fmt::Display for PeriodicExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", fmt_word(&self.pre), fmt_word(&self.period))
    }
}

const WALK_CAP: usize = 2_000_000;

/// Distinct eventually periodic expansions of `x`, shortest walks first.
/// Each one is checked to sum back to `x` exactly.
pub fn enumerate_expansions(x: &BigRational, c: &BigRational, max_count: usize, max_period: usize) -> Result<Vec<PeriodicExpansion>> {
    let graph = build_orbit_graph(x, c, DEFAULT_NODE_CAP)?;
    Ok(expansions_in_graph(&graph, max_count, max_period))
}

pub fn expansions_in_graph(graph: &OrbitGraph, max_count: usize, max_period: usize) -> Vec<PeriodicExpansion> {
    struct Walk<'a> {
        g: &'a OrbitGraph,
        target_len: usize,
        max_period: usize,
        max_count: usize,
        nodes: Vec<usize>,
        labels: Vec<SignDigit>,
        seen: HashSet<PeriodicExpansion>,
        out: Vec<PeriodicExpansion>,
        work: usize,
    }
    impl Walk<'_> {
        fn done(&self) -> bool {
            self.out.len() >= self.max_count || self.work > WALK_CAP
        }

        fn go(&mut self) {
            if self.done() {
                return;
            }
            let len = self.labels.len();
            if len == self.target_len {
                let end = self.nodes[len];
                for i in (len.saturating_sub(self.max_period)..len).rev() {
                    if self.nodes[i] != end {
                        continue;
                    }
                    let cand = PeriodicExpansion { pre: self.labels[..i].to_vec(), period: self.labels[i..].to_vec() }.canonical();
                    if self.seen.contains(&cand) {
                        continue;
                    }
                    let ok = cand.value().map(|v| v == self.g.nodes[0]).unwrap_or(false);
                    debug_assert!(ok, "lasso {cand} does not sum to the root");
                    self.seen.insert(cand.clone());
                    if ok {
                        self.out.push(cand);
                        if self.done() {
                            return;
                        }
                    }
                }
                return;
            }
            let u = self.nodes[len];
            for e in &self.g.edges[u] {
                self.work += 1;
                self.nodes.push(e.target);
                self.labels.push(e.label);
                self.go();
                self.nodes.pop();
                self.labels.pop();
                if self.done() {
                    return;
                }
            }
        }
    }
    let mut w = Walk {
        g: graph,
        target_len: 0,
        max_period,
        max_count,
        nodes: vec![0],
        labels: Vec::new(),
        seen: HashSet::new(),
        out: Vec::new(),
        work: 0,
    };
    if max_count == 0 || max_period == 0 {
        return w.out;
    }
    for len in 1..=graph.len() + max_period {
        w.target_len = len;
        w.go();
        if w.done() {
            break;
        }
    }
    w.out
}

/// Whether `x` is one of the points where both maps agree inside `S`.
pub fn is_tie(x: &BigRational) -> bool {
    match (maps::luroth_map(x), maps::alt_map(x)) {
        (Ok(a), Ok(b)) => a == b && !x.is_one(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sd(s: u8, d: u64) -> SignDigit {
        SignDigit::new(s, d)
    }

    fn node_set(g: &OrbitGraph) -> HashSet<BigRational> {
        g.nodes.iter().cloned().collect()
    }

    #[test]
    fn graph_of_six_sevenths() {
        let g = build_orbit_graph(&ratio(6, 7), &ratio(1, 3), 100).unwrap();
        assert_eq!(node_set(&g), [ratio(6, 7), ratio(5, 7), ratio(4, 7), ratio(3, 7)].into_iter().collect());
        let i = g.index_of(&ratio(3, 7)).unwrap();
        let self_loop = g.edges[i].iter().find(|e| e.target == i).unwrap();
        assert_eq!(self_loop.bits, 2);
        assert_eq!(self_loop.label, sd(1, 3));
        assert!(g.in_switch[g.index_of(&ratio(5, 7)).unwrap()]);
        assert!(!g.in_switch[0]);
        assert_eq!(g.edges[0].len(), 1);
        assert_eq!(g.edges[0][0].bits, 3);
    }

    #[test]
    fn graph_of_three_quarters_and_one() {
        let g = build_orbit_graph(&ratio(3, 4), &ratio(1, 3), 100).unwrap();
        assert_eq!(node_set(&g), [ratio(3, 4), ratio(1, 2), int(1)].into_iter().collect());
        // tie: two parallel edges with different labels
        assert_eq!(g.edges[0].len(), 2);
        assert_eq!(g.edges[0][0].target, g.edges[0][1].target);
        let one = g.index_of(&int(1)).unwrap();
        assert_eq!(g.edges[one], vec![Edge { bits: 3, target: one, label: sd(0, 2) }]);
        let g = build_orbit_graph(&int(1), &ratio(1, 4), 10).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.edges[0][0].target, 0);
        assert!(matches!(build_orbit_graph(&ratio(6, 7), &ratio(1, 3), 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn deterministic_examples() {
        assert!(deterministic_avoids_switch(&int(1), &ratio(1, 3)).unwrap().avoids_switch);
        let d = deterministic_avoids_switch(&ratio(6, 7), &ratio(1, 3)).unwrap();
        assert!(!d.avoids_switch);
        assert_eq!(d.path, vec![ratio(6, 7), ratio(5, 7)]);
        assert!(!deterministic_avoids_switch(&ratio(3, 4), &ratio(1, 3)).unwrap().avoids_switch);
    }

    #[test]
    fn loop_classes() {
        let g = build_orbit_graph(&ratio(6, 7), &ratio(1, 3), 100).unwrap();
        let y = g.index_of(&ratio(3, 7)).unwrap();
        let en = enumerate_loop_classes(&g, y);
        let words: Vec<_> = en.classes.iter().map(|l| l.label_word.clone()).collect();
        assert!(words.contains(&vec![sd(1, 3)]));
        assert!(words.contains(&vec![sd(0, 3), sd(1, 2), sd(0, 2), sd(0, 2)]));
        for l in &en.classes {
            let mut u = y;
            for (k, &b) in l.representative_bits.iter().enumerate() {
                let next = maps::branch_map(b, &g.c, &g.nodes[u]).unwrap();
                u = g.index_of(&next).unwrap();
                assert_eq!(u == y, k + 1 == l.representative_bits.len());
            }
        }
        let g = build_orbit_graph(&ratio(3, 4), &ratio(1, 3), 100).unwrap();
        let one = g.index_of(&int(1)).unwrap();
        let en = enumerate_loop_classes(&g, one);
        assert_eq!(en.classes.len(), 1);
        assert_eq!(en.classes[0].label_word, vec![sd(0, 2)]);
        let g = build_orbit_graph(&int(1), &int(0), 10).unwrap();
        assert_eq!(enumerate_loop_classes(&g, 0).classes.len(), 1);
    }

    #[test]
    fn classification_examples() {
        let r = classify(&ratio(6, 7), &ratio(1, 3)).unwrap();
        assert_eq!(r.class, ExpansionClass::UncountablyMany);
        match r.witness {
            Witness::TwoLoops(a, b) => {
                assert_eq!(a.anchor, ratio(3, 7));
                assert_eq!(a.anchor, b.anchor);
                assert_ne!(a.label_word, b.label_word);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let r = classify(&ratio(3, 4), &ratio(1, 3)).unwrap();
        assert_eq!(r.class, ExpansionClass::CountablyPeriodic);
        assert_eq!(classify(&int(1), &ratio(1, 4)).unwrap().class, ExpansionClass::UniquePeriodic);
    }

    #[test]
    fn expansion_enumeration() {
        let got = enumerate_expansions(&ratio(3, 4), &ratio(1, 3), 10, 10).unwrap();
        let want: HashSet<_> = [
            PeriodicExpansion { pre: vec![sd(0, 2), sd(1, 2)], period: vec![sd(0, 2)] },
            PeriodicExpansion { pre: vec![sd(1, 2), sd(1, 2)], period: vec![sd(0, 2)] },
        ]
        .into_iter()
        .collect();
        assert_eq!(got.len(), 2);
        assert_eq!(got.into_iter().collect::<HashSet<_>>(), want);

        let got = enumerate_expansions(&ratio(6, 7), &ratio(1, 3), 2, 6).unwrap();
        assert!(got.contains(&PeriodicExpansion { pre: vec![], period: vec![sd(0, 2), sd(1, 2), sd(1, 2)] }));
        assert!(got.contains(&PeriodicExpansion { pre: vec![sd(0, 2), sd(0, 2)], period: vec![sd(1, 3)] }));

        let got = enumerate_expansions(&int(1), &int(0), 10, 10).unwrap();
        assert_eq!(got, vec![PeriodicExpansion { pre: vec![], period: vec![sd(0, 2)] }]);
    }

    #[test]
    fn canonical_form() {
        let e = PeriodicExpansion { pre: vec![sd(0, 2), sd(0, 2)], period: vec![sd(0, 2), sd(0, 2)] }.canonical();
        assert_eq!(e, PeriodicExpansion { pre: vec![], period: vec![sd(0, 2)] });
        let e = PeriodicExpansion { pre: vec![sd(1, 3), sd(0, 2)], period: vec![sd(1, 2), sd(0, 2)] }.canonical();
        assert_eq!(e, PeriodicExpansion { pre: vec![sd(1, 3)], period: vec![sd(0, 2), sd(1, 2)] });
    }

    #[test]
    fn dot_export() {
        let g = build_orbit_graph(&ratio(6, 7), &ratio(1, 3), 100).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("\"6/7\" -> \"5/7\" [label=\"(0,2);01\"]"));
        assert!(dot.contains("\"3/7\" -> \"3/7\" [label=\"(1,3);1\"]"));
    }

    #[test]
    fn ties() {
        assert!(is_tie(&ratio(3, 4)));
        assert!(is_tie(&ratio(5, 12)));
        assert!(!is_tie(&ratio(5, 7)));
        assert!(!is_tie(&int(1)));
    }
}
