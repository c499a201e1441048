//! S-adic graphs: directed graphs with a substitution on every edge, Markov
//! measures on their edge paths, and the matrix cocycle
//! `A_n(γ) = M_{γ_0} ⋯ M_{γ_{n-1}}`.

mod lyapunov;

pub use lyapunov::{
    lyapunov, pisot_report, LyapunovEstimate, LyapunovParams, PisotReport, PisotVerdict,
    TrajectoryValues,
};

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::matrix::{BoolMatrix, IntMatrix};
use crate::substitution::{builtin, Substitution, SubstitutionSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
    pub substitution: Substitution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SAdicGraph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    alphabet: Alphabet,
    strongly_connected: bool,
}

impl SAdicGraph {
    /// Builds a graph from `(id, from, to, substitution)` edges. All
    /// substitutions must be endomorphisms of one alphabet. A graph that is
    /// not strongly connected is accepted; see
    /// [`SAdicGraph::is_strongly_connected`].
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        edges: Vec<(String, usize, usize, Substitution)>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("graph without vertices".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidParameter("graph without edges".into()));
        }
        let alphabet = edges[0].3.domain().clone();
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, from, to, s) in edges {
            if !seen.insert(id.clone()) {
                return Err(Error::Format(format!("duplicate edge id {id:?}")));
            }
            if from >= vertices.len() || to >= vertices.len() {
                return Err(Error::Format(format!("edge {id:?} uses an unknown vertex")));
            }
            if !s.is_endomorphism() || s.domain() != &alphabet {
                return Err(Error::AlphabetMismatch {
                    expected: alphabet.to_string(),
                    found: format!("{} -> {} on edge {id}", s.domain(), s.codomain()),
                });
            }
            out.push(Edge {
                id,
                from,
                to,
                substitution: s,
            });
        }
        let mut g = SAdicGraph {
            name: name.into(),
            vertices,
            edges: out,
            alphabet,
            strongly_connected: false,
        };
        g.strongly_connected = g.compute_strong_connectivity();
        Ok(g)
    }

    /// One vertex with a loop for each substitution, named after it.
    pub fn single_vertex(name: impl Into<String>, subs: Vec<Substitution>) -> Result<Self> {
        let edges = subs
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let id = s.name().map(str::to_string).unwrap_or_else(|| format!("e{i}"));
                (id, 0, 0, s)
            })
            .collect();
        Self::new(name, vec!["v".into()], edges)
    }

    /// Single vertex carrying the Fibonacci substitution.
    pub fn fibonacci() -> Self {
        Self::single_vertex("fibonacci", vec![builtin("fibonacci").unwrap()]).unwrap()
    }

    /// Single vertex with edges `τ_a`, `τ_b`.
    pub fn sturmian() -> Self {
        Self::single_vertex(
            "sturmian",
            vec![builtin("tau-a").unwrap(), builtin("tau-b").unwrap()],
        )
        .unwrap()
    }

    /// Single vertex with the `d` Arnoux-Rauzy substitutions.
    pub fn arnoux_rauzy(d: usize) -> Result<Self> {
        let subs = (1..=d)
            .map(|i| builtin(&format!("ar{d}-{i}")))
            .collect::<Result<Vec<_>>>()?;
        Self::single_vertex(format!("arnoux-rauzy-{d}"), subs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected
    }

    pub fn edge_substitution(&self, e: usize) -> &Substitution {
        &self.edges[e].substitution
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::Format(format!("unknown edge id {id:?}")))
    }

    /// Edges leaving vertex `v`.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.from == v)
            .map(|(i, _)| i)
    }

    /// Checks that edges exist and `r(γ_k) = s(γ_{k+1})`.
    pub fn check_path(&self, path: &[usize]) -> Result<()> {
        for (k, &e) in path.iter().enumerate() {
            if e >= self.edges.len() {
                return Err(Error::InconsistentPath(k));
            }
            if k > 0 && self.edges[path[k - 1]].to != self.edges[e].from {
                return Err(Error::InconsistentPath(k));
            }
        }
        Ok(())
    }

    fn compute_strong_connectivity(&self) -> bool {
        let n = self.vertices.len();
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                for e in &self.edges {
                    let (a, b) = if forward { (e.from, e.to) } else { (e.to, e.from) };
                    if a == v && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
            seen.into_iter().all(|x| x)
        };
        reach(true) && reach(false)
    }
}

/// `A_n(γ) = M_{γ_0} ⋯ M_{γ_{n-1}}`, exact; the identity for an empty path.
pub fn cocycle_product(graph: &SAdicGraph, path: &[usize]) -> Result<IntMatrix> {
    graph.check_path(path)?;
    let mut a = IntMatrix::identity(graph.alphabet.len());
    for &e in path {
        a = a.mul(&graph.edges[e].substitution.incidence())?;
    }
    Ok(a)
}

/// A Markov measure on edge paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathMeasure {
    /// Law of the first edge.
    pub initial: Vec<f64>,
    /// `transitions[e][e']`: probability that `e'` follows `e`.
    pub transitions: Vec<Vec<f64>>,
}

const PROB_TOL: f64 = 1e-9;

impl PathMeasure {
    /// Uniform first edge and uniform choice among the edges leaving `r(e)`.
    pub fn uniform(graph: &SAdicGraph) -> Self {
        let m = graph.edges.len();
        let initial = vec![1.0 / m as f64; m];
        let transitions = graph
            .edges
            .iter()
            .map(|e| {
                let next: Vec<usize> = graph.out_edges(e.to).collect();
                let mut row = vec![0.0; m];
                for &j in &next {
                    row[j] = 1.0 / next.len() as f64;
                }
                row
            })
            .collect();
        PathMeasure {
            initial,
            transitions,
        }
    }

    /// Rows sum to one, transitions respect adjacency, and the chain is
    /// irreducible on the edges reachable from the initial support.
    pub fn validate(&self, graph: &SAdicGraph) -> Result<()> {
        let m = graph.edges.len();
        if self.initial.len() != m || self.transitions.len() != m {
            return Err(Error::InvalidMeasure(format!(
                "expected {m} edges in the initial law and transition table"
            )));
        }
        let check_row = |row: &[f64], what: &str| -> Result<()> {
            if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                return Err(Error::InvalidMeasure(format!("{what} has a negative or non-finite entry")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > PROB_TOL {
                return Err(Error::InvalidMeasure(format!("{what} sums to {s}")));
            }
            Ok(())
        };
        check_row(&self.initial, "initial law")?;
        for (e, row) in self.transitions.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidMeasure(format!("row of {} has wrong length", graph.edges[e].id)));
            }
            let id = &graph.edges[e].id;
            // Rows of edges the chain never visits may be left empty.
            if row.iter().all(|&p| p == 0.0) {
                continue;
            }
            check_row(row, &format!("transition row of {id}"))?;
            for (j, &p) in row.iter().enumerate() {
                if p > 0.0 && graph.edges[e].to != graph.edges[j].from {
                    return Err(Error::InvalidMeasure(format!(
                        "transition {id} -> {} does not follow an edge of the graph",
                        graph.edges[j].id
                    )));
                }
            }
        }
        let support = self.support();
        for &e in &support {
            if self.transitions[e].iter().all(|&p| p == 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "edge {} is reachable but has no outgoing transition",
                    graph.edges[e].id
                )));
            }
        }
        // Irreducible: every supported edge reaches every other one.
        for &e in &support {
            let r = self.reachable_from(&[e]);
            if support.iter().any(|x| !r.contains(x)) {
                return Err(Error::InvalidMeasure(format!(
                    "transition chain is not irreducible (from edge {})",
                    graph.edges[e].id
                )));
            }
        }
        Ok(())
    }

    fn reachable_from(&self, start: &[usize]) -> HashSet<usize> {
        let mut seen: HashSet<usize> = start.iter().copied().collect();
        let mut queue: VecDeque<usize> = start.iter().copied().collect();
        while let Some(e) = queue.pop_front() {
            for (j, &p) in self.transitions[e].iter().enumerate() {
                if p > 0.0 && seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        seen
    }

    /// Edges visited with positive probability.
    pub fn support(&self) -> Vec<usize> {
        let start: Vec<usize> = (0..self.initial.len()).filter(|&e| self.initial[e] > 0.0).collect();
        let mut s: Vec<usize> = self.reachable_from(&start).into_iter().collect();
        s.sort_unstable();
        s
    }

    /// Stationary law of the transition chain (Cesàro averaged power
    /// iteration, which also handles periodic chains).
    pub fn stationary(&self) -> Vec<f64> {
        let m = self.initial.len();
        let mut p = self.initial.clone();
        let mut avg = vec![0.0; m];
        let iters = 20_000;
        for _ in 0..iters {
            for (a, x) in avg.iter_mut().zip(&p) {
                *a += x;
            }
            let mut next = vec![0.0; m];
            for (e, &pe) in p.iter().enumerate() {
                for (j, &t) in self.transitions[e].iter().enumerate() {
                    next[j] += pe * t;
                }
            }
            p = next;
        }
        avg.iter().map(|x| x / iters as f64).collect()
    }
}

/// `n` edges sampled from the Markov measure; deterministic in `seed`.
pub fn random_path(graph: &SAdicGraph, measure: &PathMeasure, seed: u64, n: usize) -> Result<Vec<usize>> {
    measure.validate(graph)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_path(measure, &mut rng, n)
}

pub(crate) fn sample_path(measure: &PathMeasure, rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<usize>> {
    let dist = |w: &[f64]| {
        WeightedIndex::new(w).map_err(|e| Error::InvalidMeasure(e.to_string()))
    };
    let initial = dist(&measure.initial)?;
    let rows: Vec<Option<WeightedIndex<f64>>> = measure
        .transitions
        .iter()
        .map(|r| dist(r).ok())
        .collect();
    let mut path = Vec::with_capacity(n);
    if n == 0 {
        return Ok(path);
    }
    let mut e = initial.sample(rng);
    path.push(e);
    while path.len() < n {
        let row = rows[e].as_ref().ok_or_else(|| {
            Error::InvalidMeasure(format!("edge #{e} has no outgoing transition"))
        })?;
        e = row.sample(rng);
        path.push(e);
    }
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PathSearch {
    Found { path: Vec<String>, indices: Vec<usize> },
    Exhausted { max_len: usize },
}

/// Shortest path whose matrix product is positive, breadth-first over
/// (end vertex, zero pattern of the product).
pub fn positive_path_search(graph: &SAdicGraph, max_len: usize) -> PathSearch {
    let found = |path: Vec<usize>| PathSearch::Found {
        path: path.iter().map(|&e| graph.edges[e].id.clone()).collect(),
        indices: path,
    };
    let patterns: Vec<BoolMatrix> = graph
        .edges
        .iter()
        .map(|e| e.substitution.incidence().pattern())
        .collect();
    let mut seen: HashSet<(usize, BoolMatrix)> = HashSet::new();
    let mut queue: VecDeque<(usize, BoolMatrix, Vec<usize>)> = VecDeque::new();
    if max_len == 0 {
        return PathSearch::Exhausted { max_len };
    }
    for (e, p) in patterns.iter().enumerate() {
        if p.is_positive() {
            return found(vec![e]);
        }
        if seen.insert((graph.edges[e].to, p.clone())) {
            queue.push_back((graph.edges[e].to, p.clone(), vec![e]));
        }
    }
    while let Some((v, p, path)) = queue.pop_front() {
        if path.len() >= max_len {
            continue;
        }
        for e in graph.out_edges(v) {
            let q = p.mul(&patterns[e]).expect("square patterns");
            let mut next = path.clone();
            next.push(e);
            if q.is_positive() {
                return found(next);
            }
            if seen.insert((graph.edges[e].to, q.clone())) {
                queue.push_back((graph.edges[e].to, q, next));
            }
        }
    }
    PathSearch::Exhausted { max_len }
}

// JSON form:
// {"name": .., "vertices": [..], "edges": [{"id", "from", "to", "substitution"}],
//  "measure": {"initial": {edge: p}, "transitions": {edge: {edge: p}}}}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeFile {
    pub id: String,
    pub from: String,
    pub to: String,
    pub substitution: SubstitutionSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub initial: BTreeMap<String, f64>,
    pub transitions: BTreeMap<String, BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default)]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureFile>,
}

/// Parses a graph and its measure; without a `measure` entry the uniform
/// measure is used.
pub fn graph_from_json(text: &str) -> Result<(SAdicGraph, PathMeasure)> {
    let f: GraphFile = serde_json::from_str(text)?;
    let vertex = |name: &str| {
        f.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Format(format!("unknown vertex {name:?}")))
    };
    let mut edges = Vec::with_capacity(f.edges.len());
    for e in &f.edges {
        edges.push((e.id.clone(), vertex(&e.from)?, vertex(&e.to)?, e.substitution.resolve()?));
    }
    let graph = SAdicGraph::new(
        f.name.clone().unwrap_or_else(|| "graph".into()),
        f.vertices.clone(),
        edges,
    )?;
    let measure = match &f.measure {
        None => PathMeasure::uniform(&graph),
        Some(m) => {
            let n = graph.edges.len();
            let mut initial = vec![0.0; n];
            for (id, &p) in &m.initial {
                initial[graph.edge_index(id)?] = p;
            }
            let mut transitions = vec![vec![0.0; n]; n];
            for (from, row) in &m.transitions {
                let i = graph.edge_index(from)?;
                for (to, &p) in row {
                    transitions[i][graph.edge_index(to)?] = p;
                }
            }
            PathMeasure {
                initial,
                transitions,
            }
        }
    };
    measure.validate(&graph)?;
    Ok((graph, measure))
}

pub fn graph_to_json(graph: &SAdicGraph, measure: Option<&PathMeasure>) -> Result<String> {
    let ids: Vec<&str> = graph.edges.iter().map(|e| e.id.as_str()).collect();
    let measure = measure.map(|m| MeasureFile {
        initial: ids
            .iter()
            .zip(&m.initial)
            .filter(|(_, &p)| p > 0.0)
            .map(|(id, &p)| (id.to_string(), p))
            .collect(),
        transitions: ids
            .iter()
            .zip(&m.transitions)
            .map(|(id, row)| {
                let r = ids
                    .iter()
                    .zip(row)
                    .filter(|(_, &p)| p > 0.0)
                    .map(|(j, &p)| (j.to_string(), p))
                    .collect();
                (id.to_string(), r)
            })
            .collect(),
    });
    let f = GraphFile {
        name: Some(graph.name.clone()),
        vertices: graph.vertices.clone(),
        edges: graph
            .edges
            .iter()
            .map(|e| EdgeFile {
                id: e.id.clone(),
                from: graph.vertices[e.from].clone(),
                to: graph.vertices[e.to].clone(),
                substitution: SubstitutionSpec::from_substitution(&e.substitution),
            })
            .collect(),
        measure,
    };
    Ok(serde_json::to_string_pretty(&f)? + "\n")
}
