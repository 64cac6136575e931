//! Signal-flow-graph export of the factorized dataflow.
//!
//! Only the clockwise kinds are exported: their stage weights are negative
//! powers of `e^{j2π/M}` and realize as true time delays, while the
//! counterclockwise kinds would need time advances. Weights coming from the
//! scalar and delay diagonals become `Delay` nodes, radius powers become
//! `Gain` nodes, and butterflies become pairs of two-input `Adder` nodes with
//! the `-1` branch drawn dashed. Weights that are numerically exactly 1 are
//! pass-through wires and get no node, so at `θ = 0` the graphs collapse to
//! the familiar DFT flow graphs; for generic `θ` the `Delay` node count equals
//! the structural complex multiplication tally.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, VanError};
use crate::factor::{build_factors, composed_output_permutation, Factor};
use crate::spec::VanSpec;
use crate::transform::TransformKind;
use crate::Scalar;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SfgNodeKind {
    Input,
    Output,
    Adder,
    Gain,
    Delay,
}

impl SfgNodeKind {
    fn name(self) -> &'static str {
        match self {
            SfgNodeKind::Input => "input",
            SfgNodeKind::Output => "output",
            SfgNodeKind::Adder => "adder",
            SfgNodeKind::Gain => "gain",
            SfgNodeKind::Delay => "delay",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SfgNode {
    pub id: NodeId,
    pub kind: SfgNodeKind,
    pub label: String,
}

/// Edge weight: wire (`+1`), inverting wire (`-1`), or a complex multiplier
/// feeding a gain/delay node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SfgWeight<T> {
    Plus1,
    Minus1,
    Complex(Complex<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SfgEdge<T> {
    pub from: NodeId,
    pub to: NodeId,
    pub weight: SfgWeight<T>,
}

/// Dataflow graph of one factorized transform. Nodes are in topological
/// order by construction (every edge points from a lower to a higher id);
/// `stages` groups node ids by factorization level, inputs first, outputs
/// last.
#[derive(Debug, Clone, PartialEq)]
pub struct SfgGraph<T> {
    pub nodes: Vec<SfgNode>,
    pub edges: Vec<SfgEdge<T>>,
    pub stages: Vec<Vec<NodeId>>,
}

fn short_complex<T: Scalar>(w: Complex<T>) -> String {
    let re = w.re.to_f64().unwrap_or(f64::NAN);
    let im = w.im.to_f64().unwrap_or(f64::NAN);
    format!("{re:.6}{im:+.6}j")
}

struct Builder<T> {
    nodes: Vec<SfgNode>,
    edges: Vec<SfgEdge<T>>,
    stages: Vec<Vec<NodeId>>,
}

impl<T: Scalar> Builder<T> {
    fn add_node(&mut self, kind: SfgNodeKind, label: String) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(SfgNode { id, kind, label });
        id
    }

    fn add_edge(&mut self, from: NodeId, to: NodeId, weight: SfgWeight<T>) {
        self.edges.push(SfgEdge { from, to, weight });
    }

    /// One multiplier node spliced into a lane, unless the weight is a
    /// pass-through 1.
    fn scale_lane(
        &mut self,
        frontier: &mut [NodeId],
        stage: &mut Vec<NodeId>,
        lane: usize,
        kind: SfgNodeKind,
        w: Complex<T>,
    ) {
        if w == Complex::new(T::one(), T::zero()) {
            return;
        }
        let id = self.add_node(kind, short_complex(w));
        self.add_edge(frontier[lane], id, SfgWeight::Complex(w));
        frontier[lane] = id;
        stage.push(id);
    }
}

/// Builds the signal flow graph of `kind` applied to `spec`.
///
/// Only `VanC` and `VanCR` are realizable; counterclockwise requests return
/// [`VanError::NotRealizable`].
pub fn build_sfg<T: Scalar>(kind: TransformKind, spec: &VanSpec<T>) -> Result<SfgGraph<T>> {
    if !matches!(kind, TransformKind::VanC | TransformKind::VanCR) {
        return Err(VanError::NotRealizable { kind });
    }
    kind.validate(spec)?;

    let n = spec.n();
    let mut b = Builder {
        nodes: Vec::new(),
        edges: Vec::new(),
        stages: Vec::new(),
    };

    let mut frontier: Vec<NodeId> = Vec::with_capacity(n);
    let mut inputs = Vec::with_capacity(n);
    for i in 0..n {
        let id = b.add_node(SfgNodeKind::Input, format!("z{i}"));
        frontier.push(id);
        inputs.push(id);
    }
    b.stages.push(inputs);

    for factor in build_factors(spec) {
        let mut stage = Vec::new();
        match &factor {
            Factor::RadiusDiagonal { entries } => {
                for (lane, r) in entries.iter().enumerate() {
                    b.scale_lane(
                        &mut frontier,
                        &mut stage,
                        lane,
                        SfgNodeKind::Gain,
                        Complex::new(*r, T::zero()),
                    );
                }
            }
            Factor::ScalarBlock {
                block_size,
                blocks,
                scalar,
            } => {
                let half = block_size / 2;
                for blk in 0..*blocks {
                    for i in 0..half {
                        let lane = blk * block_size + half + i;
                        b.scale_lane(&mut frontier, &mut stage, lane, SfgNodeKind::Delay, *scalar);
                    }
                }
            }
            Factor::Butterfly { block_size, blocks } => {
                let half = block_size / 2;
                for blk in 0..*blocks {
                    let base = blk * block_size;
                    for i in 0..half {
                        let top_src = frontier[base + i];
                        let bot_src = frontier[base + half + i];
                        let top = b.add_node(SfgNodeKind::Adder, "+".to_string());
                        b.add_edge(top_src, top, SfgWeight::Plus1);
                        b.add_edge(bot_src, top, SfgWeight::Plus1);
                        let bot = b.add_node(SfgNodeKind::Adder, "+".to_string());
                        b.add_edge(top_src, bot, SfgWeight::Plus1);
                        b.add_edge(bot_src, bot, SfgWeight::Minus1);
                        frontier[base + i] = top;
                        frontier[base + half + i] = bot;
                        stage.push(top);
                        stage.push(bot);
                    }
                }
            }
            Factor::DelayDiagonal {
                block_size,
                blocks,
                entries,
            } => {
                let half = block_size / 2;
                for blk in 0..*blocks {
                    for (i, w) in entries.iter().enumerate() {
                        let lane = blk * block_size + half + i;
                        b.scale_lane(&mut frontier, &mut stage, lane, SfgNodeKind::Delay, *w);
                    }
                }
            }
            // Interleaves are wiring; they fold into the output gather below.
            Factor::EvenOddPermutationTranspose { .. } => continue,
        }
        b.stages.push(stage);
    }

    let map = composed_output_permutation(n);
    let mut outputs = Vec::with_capacity(n);
    for (d, src) in map.into_iter().enumerate() {
        let id = b.add_node(SfgNodeKind::Output, format!("y{d}"));
        b.add_edge(frontier[src], id, SfgWeight::Plus1);
        outputs.push(id);
    }
    b.stages.push(outputs);

    Ok(SfgGraph {
        nodes: b.nodes,
        edges: b.edges,
        stages: b.stages,
    })
}

/// Runs the graph as a dataflow program: nodes evaluate in id order, adders
/// sum their two weighted inputs, gains and delays multiply. The result is
/// operation-for-operation the transform itself.
pub fn evaluate_sfg<T: Scalar>(graph: &SfgGraph<T>, z: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let inputs = graph
        .nodes
        .iter()
        .filter(|n| n.kind == SfgNodeKind::Input)
        .count();
    if z.len() != inputs {
        return Err(VanError::LengthMismatch {
            expected: inputs,
            got: z.len(),
        });
    }

    let mut incoming: Vec<Vec<(NodeId, SfgWeight<T>)>> = vec![Vec::new(); graph.nodes.len()];
    for e in &graph.edges {
        incoming[e.to].push((e.from, e.weight));
    }

    let zero = Complex::new(T::zero(), T::zero());
    let mut values = vec![zero; graph.nodes.len()];
    let mut next_input = 0;
    let mut outputs = Vec::new();
    for node in &graph.nodes {
        let value = match node.kind {
            SfgNodeKind::Input => {
                let v = z[next_input];
                next_input += 1;
                v
            }
            _ => {
                let mut acc = None;
                for (from, weight) in &incoming[node.id] {
                    let term = match weight {
                        SfgWeight::Plus1 => values[*from],
                        SfgWeight::Minus1 => -values[*from],
                        SfgWeight::Complex(w) => *w * values[*from],
                    };
                    acc = Some(match acc {
                        None => term,
                        Some(a) => a + term,
                    });
                }
                acc.unwrap_or(zero)
            }
        };
        values[node.id] = value;
        if node.kind == SfgNodeKind::Output {
            outputs.push(value);
        }
    }
    Ok(outputs)
}

/// Deterministic dot-format rendering; `-1` edges are dashed.
pub fn export_dot<T: Scalar>(graph: &SfgGraph<T>) -> Result<String> {
    if graph.nodes.is_empty() {
        return Err(VanError::EmptyGraph);
    }
    let mut out = String::from("digraph sfg {\n  rankdir=LR;\n");
    for node in &graph.nodes {
        let shape = match node.kind {
            SfgNodeKind::Input => "circle",
            SfgNodeKind::Output => "doublecircle",
            SfgNodeKind::Adder => "circle",
            SfgNodeKind::Gain => "triangle",
            SfgNodeKind::Delay => "box",
        };
        out.push_str(&format!(
            "  n{} [shape={}, label=\"{}\"];\n",
            node.id, shape, node.label
        ));
    }
    for e in &graph.edges {
        match &e.weight {
            SfgWeight::Plus1 => out.push_str(&format!("  n{} -> n{};\n", e.from, e.to)),
            SfgWeight::Minus1 => {
                out.push_str(&format!("  n{} -> n{} [style=dashed];\n", e.from, e.to))
            }
            SfgWeight::Complex(w) => out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.from,
                e.to,
                short_complex(*w)
            )),
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Serialize)]
struct JsonNode<'a> {
    id: usize,
    kind: &'static str,
    label: &'a str,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum JsonWeight {
    Plus1,
    Minus1,
    Complex { re: f64, im: f64 },
}

#[derive(Serialize)]
struct JsonEdge {
    from: usize,
    to: usize,
    weight: JsonWeight,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    nodes: Vec<JsonNode<'a>>,
    edges: Vec<JsonEdge>,
    stages: &'a [Vec<usize>],
}

/// JSON mirror of the graph with schema `{nodes, edges, stages}`.
pub fn export_json<T: Scalar>(graph: &SfgGraph<T>) -> Result<String> {
    if graph.nodes.is_empty() {
        return Err(VanError::EmptyGraph);
    }
    let mirror = JsonGraph {
        nodes: graph
            .nodes
            .iter()
            .map(|n| JsonNode {
                id: n.id,
                kind: n.kind.name(),
                label: &n.label,
            })
            .collect(),
        edges: graph
            .edges
            .iter()
            .map(|e| JsonEdge {
                from: e.from,
                to: e.to,
                weight: match &e.weight {
                    SfgWeight::Plus1 => JsonWeight::Plus1,
                    SfgWeight::Minus1 => JsonWeight::Minus1,
                    SfgWeight::Complex(w) => JsonWeight::Complex {
                        re: w.re.to_f64().unwrap_or(f64::NAN),
                        im: w.im.to_f64().unwrap_or(f64::NAN),
                    },
                },
            })
            .collect(),
        stages: &graph.stages,
    };
    Ok(serde_json::to_string_pretty(&mirror).expect("serialization cannot fail"))
}
