//! A small forward dataflow analysis that exercises the fixed-point
//! engines on a lattice that exists for a reason. Each node of a flow
//! graph generates and kills facts; the out-set of a node is what it
//! generates plus whatever reaches it from its predecessors and
//! survives its kill set. The joint assignment of out-sets is ordered
//! pointwise by inclusion, the transfer step is monotone on it, and the
//! analysis result is the least fixed point of that step.
//!
//! Facts are packed into per-node bitmasks. The direct solvers work on
//! the packed form; the engine-backed solvers materialize the full
//! assignment lattice as an explicit finite poset first, which is only
//! viable when `nodes * facts` is small — hence the bit gates.

use crate::caps::Caps;
use crate::element::{Element, ElementId};
use crate::engines::{kt_via_bw, pataraia_fix};
use crate::order::{classify_map, FinitePoset, MapRule, OrderError, PosetHandle};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Bit gate for the orbit-family solver: its internal enumeration is
/// exponential in the orbit, so only tiny lattices are reasonable.
const PATARAIA_BIT_GATE: u32 = 4;
/// Bit gate for the chain-carrier solver: it enumerates all subsets of
/// the materialized lattice when hunting for chains.
const KT_BIT_GATE: u32 = 3;

/// External description of a flow graph, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowGraphSpec {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub gen: BTreeMap<String, BTreeSet<String>>,
    #[serde(default)]
    pub kill: BTreeMap<String, BTreeSet<String>>,
}

/// A validated flow graph with facts packed into bit positions.
#[derive(Clone, Debug)]
pub struct FlowGraph {
    nodes: Vec<String>,
    facts: Vec<String>,
    /// Predecessor lists per node index.
    preds: Vec<Vec<usize>>,
    gen: Vec<u64>,
    kill: Vec<u64>,
}

impl FlowGraph {
    pub fn from_spec(spec: &FlowGraphSpec) -> Result<Self, OrderError> {
        let nodes = spec.nodes.clone();
        let mut index = BTreeMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(OrderError::DuplicateElement(ElementId::new(n.clone())));
            }
        }
        let mut facts: BTreeSet<String> = BTreeSet::new();
        for side in [&spec.gen, &spec.kill] {
            for (node, fs) in side {
                if !index.contains_key(node) {
                    return Err(OrderError::UnknownElement(node.clone()));
                }
                facts.extend(fs.iter().cloned());
            }
        }
        let facts: Vec<String> = facts.into_iter().collect();
        if facts.len() > 60 {
            return Err(OrderError::SizeLimit {
                what: "distinct dataflow facts",
                size: facts.len(),
                cap: 60,
            });
        }
        let fact_bit: BTreeMap<&String, usize> =
            facts.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mask_of = |set: Option<&BTreeSet<String>>| -> u64 {
            set.map(|fs| fs.iter().map(|f| 1u64 << fact_bit[f]).sum())
                .unwrap_or(0)
        };
        let gen: Vec<u64> = nodes.iter().map(|n| mask_of(spec.gen.get(n))).collect();
        let kill: Vec<u64> = nodes.iter().map(|n| mask_of(spec.kill.get(n))).collect();
        for (i, n) in nodes.iter().enumerate() {
            if gen[i] & kill[i] != 0 {
                return Err(OrderError::InvalidWitness(format!(
                    "node {n} both generates and kills a fact"
                )));
            }
        }
        let mut preds = vec![Vec::new(); nodes.len()];
        for (from, to) in &spec.edges {
            let f = *index
                .get(from)
                .ok_or_else(|| OrderError::UnknownElement(from.clone()))?;
            let t = *index
                .get(to)
                .ok_or_else(|| OrderError::UnknownElement(to.clone()))?;
            preds[t].push(f);
        }
        Ok(FlowGraph { nodes, facts, preds, gen, kill })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn facts(&self) -> &[String] {
        &self.facts
    }

    /// Total bits in a packed joint assignment.
    pub fn bits(&self) -> u32 {
        (self.nodes.len() * self.facts.len()) as u32
    }

    /// One transfer step on a joint assignment (one mask per node).
    fn step(&self, state: &[u64]) -> Vec<u64> {
        (0..self.nodes.len())
            .map(|n| {
                let reaching = self.preds[n].iter().fold(0u64, |acc, &p| acc | state[p]);
                self.gen[n] | (reaching & !self.kill[n])
            })
            .collect()
    }

    fn decode(&self, state: &[u64]) -> BTreeMap<String, BTreeSet<String>> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(n, name)| {
                let set = self
                    .facts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| state[n] >> j & 1 == 1)
                    .map(|(_, f)| f.clone())
                    .collect();
                (name.clone(), set)
            })
            .collect()
    }

    /// Pack a joint assignment into one global mask, node-major.
    fn pack(&self, state: &[u64]) -> u64 {
        let f = self.facts.len();
        state
            .iter()
            .enumerate()
            .fold(0u64, |acc, (n, m)| acc | (m << (n * f)))
    }

    fn unpack(&self, packed: u64) -> Vec<u64> {
        let f = self.facts.len();
        let node_mask = (1u64 << f) - 1;
        (0..self.nodes.len()).map(|n| (packed >> (n * f)) & node_mask).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataflowEngine {
    Iterate,
    Tarski,
    Pataraia,
    Kt,
}

impl DataflowEngine {
    pub fn name(&self) -> &'static str {
        match self {
            DataflowEngine::Iterate => "iterate",
            DataflowEngine::Tarski => "tarski",
            DataflowEngine::Pataraia => "pataraia",
            DataflowEngine::Kt => "kt",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "iterate" => Some(DataflowEngine::Iterate),
            "tarski" => Some(DataflowEngine::Tarski),
            "pataraia" => Some(DataflowEngine::Pataraia),
            "kt" => Some(DataflowEngine::Kt),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DataflowSolution {
    pub engine: &'static str,
    pub outs: BTreeMap<String, BTreeSet<String>>,
    pub detail: String,
}

/// Solve the analysis with the chosen engine. All engines compute the
/// same least fixed point; they differ in how much structure they
/// build, and the two engine-backed routes refuse when the lattice is
/// too large to materialize honestly.
pub fn solve(
    graph: &FlowGraph,
    engine: DataflowEngine,
    caps: &Caps,
) -> Result<DataflowSolution, OrderError> {
    match engine {
        DataflowEngine::Iterate => solve_iterate(graph),
        DataflowEngine::Tarski => solve_tarski_meet(graph, caps),
        DataflowEngine::Pataraia => solve_materialized(graph, engine, caps),
        DataflowEngine::Kt => solve_materialized(graph, engine, caps),
    }
}

/// Ascending iteration from the empty assignment. Monotonicity of the
/// step plus the bottom start make the sequence ascend, and each strict
/// step sets at least one new bit, so `bits + 1` rounds suffice.
fn solve_iterate(graph: &FlowGraph) -> Result<DataflowSolution, OrderError> {
    let mut state = vec![0u64; graph.nodes.len()];
    let budget = graph.bits() as usize + 1;
    for round in 0..=budget {
        let next = graph.step(&state);
        if next == state {
            return Ok(DataflowSolution {
                engine: "iterate",
                outs: graph.decode(&state),
                detail: format!("stabilized after {round} rounds"),
            });
        }
        state = next;
    }
    Err(OrderError::IterationDiverged { steps: budget })
}

/// The meet of all prefixed assignments, computed literally over the
/// whole packed lattice, then confirmed to be a fixed point.
fn solve_tarski_meet(graph: &FlowGraph, caps: &Caps) -> Result<DataflowSolution, OrderError> {
    let bits = graph.bits();
    if bits > caps.dataflow_materialize_bits {
        return Err(OrderError::SizeLimit {
            what: "dataflow lattice bits",
            size: bits as usize,
            cap: caps.dataflow_materialize_bits as usize,
        });
    }
    let mut meet = (1u64 << bits).wrapping_sub(1);
    if bits == 0 {
        meet = 0;
    }
    let mut prefixed = 0usize;
    for packed in 0..(1u64 << bits) {
        let state = graph.unpack(packed);
        let next = graph.pack(&graph.step(&state));
        if (next & !packed) == 0 {
            meet &= packed;
            prefixed += 1;
        }
    }
    let state = graph.unpack(meet);
    if graph.step(&state) != state {
        return Err(OrderError::InvalidWitness(
            "the meet of prefixed assignments is not fixed".into(),
        ));
    }
    Ok(DataflowSolution {
        engine: "tarski",
        outs: graph.decode(&state),
        detail: format!("meet of {prefixed} prefixed assignments out of {}", 1u64 << bits),
    })
}

/// Materialize the packed lattice as a finite poset and run one of the
/// structural engines on it.
fn solve_materialized(
    graph: &FlowGraph,
    engine: DataflowEngine,
    caps: &Caps,
) -> Result<DataflowSolution, OrderError> {
    let bits = graph.bits();
    let gate = match engine {
        DataflowEngine::Pataraia => PATARAIA_BIT_GATE,
        DataflowEngine::Kt => KT_BIT_GATE,
        _ => caps.dataflow_materialize_bits,
    };
    let gate = gate.min(caps.dataflow_materialize_bits);
    if bits > gate {
        return Err(OrderError::SizeLimit {
            what: "dataflow lattice bits for this engine",
            size: bits as usize,
            cap: gate as usize,
        });
    }

    let width = bits.max(1) as usize;
    let id_of = |packed: u64| ElementId::new(format!("m{packed:0width$b}"));
    let count = 1u64 << bits;
    let elements: Vec<ElementId> = (0..count).map(id_of).collect();
    let mut le = Vec::with_capacity((count * count) as usize);
    for a in 0..count {
        for b in 0..count {
            le.push(a & !b == 0);
        }
    }
    let poset = PosetHandle::finite(FinitePoset::from_le_unchecked(elements, le));

    let mut table = BTreeMap::new();
    for packed in 0..count {
        let stepped = graph.pack(&graph.step(&graph.unpack(packed)));
        // The engines below want an inflationary map; joining with the
        // input preserves monotonicity, and its least fixed point is
        // the least prefixed assignment, which for a monotone step is
        // also its least fixed point. The answer is re-checked against
        // the raw step before it is reported.
        table.insert(id_of(packed), id_of(packed | stepped));
    }
    let map = classify_map(poset, MapRule::Table(table))?;
    let bottom = Element::Id(id_of(0));

    let (witness, detail) = match engine {
        DataflowEngine::Pataraia => {
            let report = pataraia_fix(&map, &bottom, caps)?;
            let d = format!(
                "orbit of {} assignments, {} progressive monotone self-maps",
                report.orbit.len(),
                report.family_size
            );
            (report.witness, d)
        }
        DataflowEngine::Kt => {
            let report = kt_via_bw(&map, &bottom, caps)?;
            let d = format!(
                "{} postfixed assignments, chain carrier of {}",
                report.postfixed_size,
                report.chain_carrier.len()
            );
            (report.witness, d)
        }
        _ => unreachable!("only the structural engines materialize"),
    };

    let id = witness.point.as_id().ok_or_else(|| {
        OrderError::InvalidWitness("engine returned a value outside the lattice".into())
    })?;
    let digits = id.to_string();
    let packed = u64::from_str_radix(digits.trim_start_matches('m'), 2)
        .map_err(|e| OrderError::InvalidWitness(format!("unreadable lattice id: {e}")))?;
    let state = graph.unpack(packed);
    if graph.step(&state) != state {
        return Err(OrderError::InvalidWitness(
            "engine answer is not fixed under the raw transfer step".into(),
        ));
    }
    Ok(DataflowSolution { engine: engine.name(), outs: graph.decode(&state), detail })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> FlowGraphSpec {
        serde_json::from_str(json).unwrap()
    }

    fn loop_graph() -> FlowGraph {
        FlowGraph::from_spec(&spec(
            r#"{
                "nodes": ["entry", "loop"],
                "edges": [["entry", "loop"], ["loop", "loop"]],
                "gen": {"entry": ["d1"], "loop": ["d2"]},
                "kill": {"loop": ["d1"]}
            }"#,
        ))
        .unwrap()
    }

    fn outs_of(s: &DataflowSolution, node: &str) -> Vec<String> {
        s.outs[node].iter().cloned().collect()
    }

    #[test]
    fn the_loop_graph_solution_is_exact() {
        let g = loop_graph();
        let s = solve(&g, DataflowEngine::Iterate, &Caps::default()).unwrap();
        assert_eq!(outs_of(&s, "entry"), vec!["d1"]);
        assert_eq!(outs_of(&s, "loop"), vec!["d2"]);
    }

    #[test]
    fn meet_solver_agrees_with_iteration() {
        let g = loop_graph();
        let a = solve(&g, DataflowEngine::Iterate, &Caps::default()).unwrap();
        let b = solve(&g, DataflowEngine::Tarski, &Caps::default()).unwrap();
        assert_eq!(a.outs, b.outs);
    }

    #[test]
    fn orbit_solver_agrees_on_the_four_bit_lattice() {
        let g = loop_graph();
        assert_eq!(g.bits(), 4);
        let a = solve(&g, DataflowEngine::Iterate, &Caps::default()).unwrap();
        let b = solve(&g, DataflowEngine::Pataraia, &Caps::default()).unwrap();
        assert_eq!(a.outs, b.outs);
    }

    #[test]
    fn chain_solver_agrees_on_a_two_bit_graph() {
        let g = FlowGraph::from_spec(&spec(
            r#"{
                "nodes": ["a", "b"],
                "edges": [["a", "b"]],
                "gen": {"a": ["d"]},
                "kill": {"b": ["d"]}
            }"#,
        ))
        .unwrap();
        assert_eq!(g.bits(), 2);
        let a = solve(&g, DataflowEngine::Iterate, &Caps::default()).unwrap();
        let b = solve(&g, DataflowEngine::Kt, &Caps::default()).unwrap();
        assert_eq!(a.outs, b.outs);
        assert!(a.outs["b"].is_empty());
    }

    #[test]
    fn bit_gates_refuse_oversized_lattices() {
        let g = loop_graph(); // 4 bits
        let err = solve(&g, DataflowEngine::Kt, &Caps::default()).unwrap_err();
        assert!(matches!(err, OrderError::SizeLimit { .. }));
    }

    #[test]
    fn a_fact_cannot_be_generated_and_killed_at_once() {
        let s = spec(
            r#"{
                "nodes": ["n"],
                "edges": [],
                "gen": {"n": ["d"]},
                "kill": {"n": ["d"]}
            }"#,
        );
        assert!(FlowGraph::from_spec(&s).is_err());
    }

    #[test]
    fn unknown_edge_endpoints_are_rejected() {
        let s = spec(r#"{"nodes": ["n"], "edges": [["n", "ghost"]]}"#);
        assert!(FlowGraph::from_spec(&s).is_err());
    }
}
