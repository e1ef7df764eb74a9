//! JSON documents: problem instances, shift logs, traces and solver results.
//!
//! All serialized vertex labels are 1-based. An instance looks like
//!
//! ```json
//! {"kind":"partite","r":2,"n":2,"families":[[[1,1]],[[2,2]]]}
//! ```
//!
//! where each entry of `families` is one member's edge list. Partite edges
//! list one index per side; general edges list the vertices of the subset.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::ground::{Edge, GroundKind, GroundSet, Vertex};
use crate::hypergraph::{Family, Hypergraph, RainbowMatching};
use crate::shifting::{MovedEdge, ShiftLog, ShiftStep};
use crate::solvers::{AlgoTrace, TraceOutcome};

pub const RESULT_SCHEMA: &str = "rainbow-result/v1";
pub const TRACE_SCHEMA: &str = "rainbow-trace/v1";
pub const SHIFT_LOG_SCHEMA: &str = "rainbow-shiftlog/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub kind: GroundKind,
    pub r: usize,
    pub n: usize,
    pub families: Vec<Vec<Vec<u32>>>,
}

impl Instance {
    /// Normalized form: edges sorted lexicographically within each member.
    pub fn from_family(f: &Family) -> Self {
        let g = f.ground();
        Instance {
            kind: g.kind(),
            r: g.r(),
            n: g.n(),
            families: f.members().iter().map(|h| h.edges().iter().map(Edge::one_based).collect()).collect(),
        }
    }

    pub fn to_family(&self) -> Result<Family> {
        let ground = GroundSet::new(self.kind, self.r, self.n).map_err(|e| invalid!("ground set: {e}"))?;
        if self.families.is_empty() {
            return Err(invalid!("families: at least one member is required"));
        }
        let members = self
            .families
            .iter()
            .enumerate()
            .map(|(i, member)| {
                let mut edges = Vec::with_capacity(member.len());
                for (j, raw) in member.iter().enumerate() {
                    edges.push(parse_edge(&ground, raw).map_err(|e| invalid!("families[{i}][{j}]: {e}"))?);
                }
                Hypergraph::from_edges(ground, edges).map_err(|e| invalid!("families[{i}]: {e}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::new(members)
    }
}

fn parse_edge(ground: &GroundSet, raw: &[u32]) -> std::result::Result<Edge, String> {
    if raw.len() != ground.r() {
        return Err(format!("edge {raw:?} has {} vertices, expected r={}", raw.len(), ground.r()));
    }
    if let Some(&v) = raw.iter().find(|&&v| v == 0 || v as usize > ground.n()) {
        return Err(format!("vertex label {v} out of range 1..={}", ground.n()));
    }
    let mut zero: Vec<u32> = raw.iter().map(|&v| v - 1).collect();
    if ground.kind() == GroundKind::General {
        zero.sort_unstable();
        if zero.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("edge {raw:?} repeats a vertex"));
        }
    }
    Ok(Edge::new(zero))
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Family> {
    let inst: Instance = serde_json::from_str(text).map_err(|e| invalid!("malformed instance JSON: {e}"))?;
    inst.to_family()
}

pub fn serialize_instance(f: &Family) -> String {
    serde_json::to_string(&Instance::from_family(f)).expect("instance serializes")
}

/// Parses a single 1-based edge for `ground`.
pub fn parse_edge_labels(ground: &GroundSet, raw: &[u32]) -> Result<Edge> {
    parse_edge(ground, raw).map_err(|e| invalid!("{e}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovedDoc {
    pub member: usize,
    pub from: Vec<u32>,
    pub to: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftStepDoc {
    pub side: usize,
    pub x: usize,
    pub y: usize,
    pub moved: Vec<MovedDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftLogDoc {
    pub schema: String,
    pub steps: Vec<ShiftStepDoc>,
}

impl ShiftLogDoc {
    pub fn from_log(log: &ShiftLog) -> Self {
        ShiftLogDoc {
            schema: SHIFT_LOG_SCHEMA.to_string(),
            steps: log
                .steps
                .iter()
                .map(|s| ShiftStepDoc {
                    side: s.side + 1,
                    x: s.x + 1,
                    y: s.y + 1,
                    moved: s
                        .moved
                        .iter()
                        .map(|m| MovedDoc { member: m.member + 1, from: m.from.one_based(), to: m.to.one_based() })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_log(&self, ground: &GroundSet) -> Result<ShiftLog> {
        if self.schema != SHIFT_LOG_SCHEMA {
            return Err(invalid!("unsupported shift log schema {:?}", self.schema));
        }
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.side == 0 || s.x == 0 || s.y == 0 {
                    return Err(invalid!("steps[{i}]: labels are 1-based"));
                }
                let moved = s
                    .moved
                    .iter()
                    .enumerate()
                    .map(|(j, m)| {
                        if m.member == 0 {
                            return Err(invalid!("steps[{i}].moved[{j}]: members are 1-based"));
                        }
                        Ok(MovedEdge {
                            member: m.member - 1,
                            from: parse_edge_labels(ground, &m.from)
                                .map_err(|e| invalid!("steps[{i}].moved[{j}].from: {e}"))?,
                            to: parse_edge_labels(ground, &m.to)
                                .map_err(|e| invalid!("steps[{i}].moved[{j}].to: {e}"))?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ShiftStep { side: s.side - 1, x: s.x - 1, y: s.y - 1, moved })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ShiftLog { steps })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub t: usize,
    pub member: usize,
    pub a: usize,
    pub b: usize,
    pub r: Vec<String>,
    pub z: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub head: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub short: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub schema: String,
    pub n: usize,
    pub order: Vec<usize>,
    pub steps: Vec<StepDoc>,
    pub final_r: Vec<String>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub halt_t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matching: Option<Vec<Vec<u32>>>,
}

impl TraceDoc {
    pub fn from_trace(trace: &AlgoTrace) -> Self {
        let ground = GroundSet::partite(2, trace.n).expect("trace ground set");
        let labels = |vs: &[Vertex]| vs.iter().map(|&v| ground.vertex_label(v)).collect::<Vec<_>>();
        let steps = trace
            .steps
            .iter()
            .map(|s| StepDoc {
                t: s.t,
                member: s.member + 1,
                a: s.a + 1,
                b: s.b + 1,
                r: labels(&crate::solvers::initial_segment(s.a, s.b)),
                z: labels(&s.covered),
                edge: s.choice.as_ref().map(|c| c.edge.one_based()),
                length: s.choice.as_ref().map(|c| c.length),
                tail: s.choice.as_ref().map(|c| ground.vertex_label(c.tail)),
                head: s.choice.as_ref().map(|c| ground.vertex_label(c.head)),
                short: s.choice.as_ref().map(|c| c.short),
            })
            .collect();
        let (outcome, halt_t, matching) = match &trace.outcome {
            TraceOutcome::Success(m) => ("success", None, Some(m.choices.iter().map(Edge::one_based).collect())),
            TraceOutcome::Halt { t } => ("halt", Some(*t), None),
        };
        TraceDoc {
            schema: TRACE_SCHEMA.to_string(),
            n: trace.n,
            order: trace.order.iter().map(|i| i + 1).collect(),
            steps,
            final_r: labels(&crate::solvers::initial_segment(trace.final_a, trace.final_b)),
            outcome: outcome.to_string(),
            halt_t,
            matching,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultStatus {
    Found,
    NotFound,
}

/// Machine-readable solver result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub schema: String,
    pub algorithm: String,
    pub status: ResultStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matching: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

impl ResultDoc {
    pub fn found(algorithm: &str, m: &RainbowMatching) -> Self {
        ResultDoc {
            schema: RESULT_SCHEMA.to_string(),
            algorithm: algorithm.to_string(),
            status: ResultStatus::Found,
            matching: Some(m.choices.iter().map(Edge::one_based).collect()),
            message: None,
        }
    }

    pub fn not_found(algorithm: &str, reason: &str) -> Self {
        ResultDoc {
            schema: RESULT_SCHEMA.to_string(),
            algorithm: algorithm.to_string(),
            status: ResultStatus::NotFound,
            matching: None,
            message: Some(reason.to_string()),
        }
    }

    pub fn to_matching(&self, ground: &GroundSet) -> Result<Option<RainbowMatching>> {
        self.matching
            .as_ref()
            .map(|edges| {
                edges.iter().map(|e| parse_edge_labels(ground, e)).collect::<Result<Vec<_>>>().map(RainbowMatching::new)
            })
            .transpose()
    }
}

/// `F_i: <labels>` lines, one per member.
pub fn matching_text(ground: &GroundSet, m: &RainbowMatching) -> String {
    m.choices
        .iter()
        .enumerate()
        .map(|(i, e)| format!("F_{}: {}\n", i + 1, ground.edge_label(e, " ")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::steal_family;
    use crate::shifting::{shifted_closure, ShiftMode};
    use crate::solvers::hall_size_algorithm;

    #[test]
    fn parse_examples() {
        let f = parse_instance(r#"{"kind":"partite","r":2,"n":2,"families":[[[1,1]],[[2,2]]]}"#).unwrap();
        assert_eq!(f.k(), 2);
        assert_eq!(f.member(1).edges(), &[Edge::from([1, 1])]);
        let g = parse_instance(r#"{"kind":"general","n":5,"r":2,"families":[[[1,4],[2,3]]]}"#).unwrap();
        assert_eq!(g.ground().kind(), GroundKind::General);
        assert_eq!(g.member(0).len(), 2);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let cases = [
            (r#"{"kind":"partite","r":2,"n":2,"families":[[[1,1],[1,1]]]}"#, "families[0]"),
            (r#"{"kind":"partite","r":2,"n":2,"families":[[[1,3]]]}"#, "families[0][0]"),
            (r#"{"kind":"partite","r":2,"n":2,"families":[[[1,1]],[[1,1,1]]]}"#, "families[1][0]"),
            (r#"{"kind":"general","r":2,"n":4,"families":[[[2,2]]]}"#, "families[0][0]"),
            (r#"{"kind":"partite","r":2,"n":2,"families":[]}"#, "families"),
            (r#"{"kind":"partite","r":2,"n":2,"families":[[[1,1]]]"#, "line 1"),
            (r#"{"kind":"tripartite","r":2,"n":2,"families":[]}"#, "line 1"),
        ];
        for (text, needle) in cases {
            let err = parse_instance(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{err} should mention {needle}");
        }
    }

    #[test]
    fn serialization_normalizes_order() {
        let text = r#"{"kind":"general","r":2,"n":5,"families":[[[4,1],[2,3]],[[5,1]]]}"#;
        let f = parse_instance(text).unwrap();
        assert_eq!(
            serialize_instance(&f),
            r#"{"kind":"general","r":2,"n":5,"families":[[[1,4],[2,3]],[[1,5]]]}"#
        );
    }

    #[test]
    fn shift_log_roundtrip() {
        let f = steal_family(3, 5).unwrap();
        let shuffled = Family::new(
            f.members()
                .iter()
                .map(|h| {
                    Hypergraph::from_edges(
                        *h.ground(),
                        h.edges().iter().map(|e| Edge::from([4 - e.as_slice()[0], 4 - e.as_slice()[1]])),
                    )
                    .unwrap()
                })
                .collect(),
        )
        .unwrap();
        let (_, log) = shifted_closure(&shuffled, ShiftMode::Partite).unwrap();
        assert!(!log.is_empty());
        let doc = ShiftLogDoc::from_log(&log);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ShiftLogDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_log(shuffled.ground()).unwrap(), log);
    }

    #[test]
    fn trace_doc_records_halt() {
        let trace = hall_size_algorithm(&steal_family(3, 6).unwrap()).unwrap();
        let doc = TraceDoc::from_trace(&trace);
        assert_eq!(doc.outcome, "halt");
        assert_eq!(doc.halt_t, Some(4));
        assert_eq!(doc.final_r, vec!["m_1", "m_2", "m_3", "w_1"]);
        assert_eq!(doc.steps[0].edge, Some(vec![3, 1]));
        let back: TraceDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn result_doc_roundtrip() {
        let g = GroundSet::partite(2, 2).unwrap();
        let m = RainbowMatching::new(vec![Edge::from([0, 0])]);
        assert_eq!(matching_text(&g, &m), "F_1: m_1 w_1\n");
        let doc = ResultDoc::found("oracle", &m);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ResultDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matching(&g).unwrap(), Some(m));
        assert!(text.contains(RESULT_SCHEMA));
    }
}
