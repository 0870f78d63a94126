//! Records of reduction-rule applications.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{Instance, Path};

/// The reduction rules that can appear in a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleId {
    /// Deleted a non-terminal of the independent side with at most one neighbor.
    VcPendant,
    /// Deleted a terminal of the independent side through the terminal expansion.
    VcTerminal,
    /// Deleted a non-terminal of the independent side through the pair expansion.
    VcInternal,
    /// Removed a whole path found inside one clique.
    CvdPath,
    /// Deleted an unmarked non-terminal of a clique.
    CvdNonTerminal,
    /// Deleted an unmarked terminal of a clique.
    CvdTerminal,
    /// Deleted a clique from an oversized class of equivalent cliques.
    CvdClass,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::VcPendant => "vc-pendant",
            RuleId::VcTerminal => "vc-rule1",
            RuleId::VcInternal => "vc-rule2",
            RuleId::CvdPath => "cvd-path",
            RuleId::CvdNonTerminal => "cvd-non-a",
            RuleId::CvdTerminal => "cvd-a",
            RuleId::CvdClass => "cvd-class",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One trace entry. Vertex ids always refer to the original instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Applied {
        rule: RuleId,
        deleted: Vec<usize>,
        /// How much the demand dropped.
        demand_drop: usize,
        /// Paths removed together with the deleted vertices; they extend any packing of the
        /// reduced instance.
        extracted: Vec<Path>,
    },
    Note(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn push(&mut self, event: TraceEvent) {
        self.events.push(event);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.events.push(TraceEvent::Note(text.into()));
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Number of rule applications (notes excluded).
    pub fn applications(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::Applied { .. }))
            .count()
    }

    /// All extracted paths, in application order.
    pub fn extracted_paths(&self) -> impl Iterator<Item = &Path> {
        self.events.iter().flat_map(|e| match e {
            TraceEvent::Applied { extracted, .. } => extracted.as_slice(),
            TraceEvent::Note(_) => &[],
        })
    }

    /// Text form, one line per event, vertices numbered from 1:
    /// `rule=<id> deleted=<v,...> dk=<-d>` or `note: <text>`.
    pub fn lines(&self) -> Vec<String> {
        self.events
            .iter()
            .map(|e| match e {
                TraceEvent::Applied {
                    rule,
                    deleted,
                    demand_drop,
                    ..
                } => {
                    let ids: Vec<String> = deleted.iter().map(|v| (v + 1).to_string()).collect();
                    let dk = if *demand_drop == 0 {
                        "0".to_string()
                    } else {
                        format!("-{demand_drop}")
                    };
                    format!("rule={rule} deleted={} dk={dk}", ids.join(","))
                }
                TraceEvent::Note(text) => format!("note: {text}"),
            })
            .collect()
    }

    /// Applies the first `steps` rule applications to `original`: deletes their vertices and
    /// lowers the demand (never below zero). Returns the instance and its new-to-original id
    /// map.
    pub fn replay(&self, original: &Instance, steps: usize) -> Result<(Instance, Vec<usize>)> {
        let mut keep = vec![true; original.vertex_count()];
        let mut demand = original.demand();
        for event in self
            .events
            .iter()
            .filter(|e| matches!(e, TraceEvent::Applied { .. }))
            .take(steps)
        {
            if let TraceEvent::Applied {
                deleted,
                demand_drop,
                ..
            } = event
            {
                for &v in deleted {
                    if v >= keep.len() || !keep[v] {
                        return Err(Error::Precondition(format!(
                            "trace deletes vertex {} twice or out of range",
                            v + 1
                        )));
                    }
                    keep[v] = false;
                }
                demand = demand.saturating_sub(*demand_drop);
            }
        }
        Ok(original.induced(&keep, demand))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn lines_and_replay() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = Instance::new(g, [0, 3], 2, 2, None).unwrap();
        let mut trace = Trace::new();
        trace.note("start");
        trace.push(TraceEvent::Applied {
            rule: RuleId::CvdPath,
            deleted: vec![0, 1],
            demand_drop: 1,
            extracted: vec![Path::new(vec![0, 1])],
        });
        assert_eq!(
            trace.lines(),
            vec!["note: start", "rule=cvd-path deleted=1,2 dk=-1"]
        );
        let (reduced, origin) = trace.replay(&inst, 1).unwrap();
        assert_eq!(origin, vec![2, 3]);
        assert_eq!(reduced.demand(), 1);
        assert_eq!(trace.replay(&inst, 0).unwrap().0, inst);
        assert_eq!(trace.extracted_paths().count(), 1);
    }
}
