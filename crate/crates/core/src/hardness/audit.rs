use super::construct::{path_order_for, ConstructionOutput, PointKind};

/// Outcome of one named structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per check: `<name> ok|FAIL <detail>`.
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let verdict = if c.passed { "ok" } else { "FAIL" };
                if c.detail.is_empty() {
                    format!("{} {verdict}", c.name)
                } else {
                    format!("{} {verdict} ({})", c.name, c.detail)
                }
            })
            .collect()
    }

    fn record(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(AuditCheck {
            name,
            passed,
            detail,
        });
    }
}

/// Re-derives the structural facts of a build from its stored points and graph.
pub fn structural_audit(output: &ConstructionOutput) -> AuditReport {
    let mut report = AuditReport::default();
    let inst = &output.instance;
    let graph = inst.graph();
    let n = output.family.len();
    let k = output.k;
    let p = output.points.len();
    let budget = 8 * n * output.scale;

    let expected = path_order_for(n, output.scale).ok();
    report.record(
        "path-order",
        expected == Some(inst.path_order()),
        match expected {
            Some(e) => format!("ℓ = {}, 8nN+4 = {e}", inst.path_order()),
            None => "8nN+4 overflows".into(),
        },
    );

    let special = output.special.all();
    let mut distinct = special.clone();
    distinct.dedup();
    let in_range = special.iter().all(|&v| v >= p && v < inst.vertex_count());
    report.record(
        "special-count",
        distinct.len() == 4 * k && special.len() == 4 * k && in_range,
        format!("|V_M| = {}, 4k = {}", distinct.len(), 4 * k),
    );

    let mut ad: Vec<usize> = output
        .special
        .a
        .iter()
        .chain(&output.special.d)
        .copied()
        .collect();
    ad.sort_unstable();
    let terminals = inst.terminals();
    report.record(
        "terminals-in-special",
        terminals == ad && terminals.iter().all(|t| special.binary_search(t).is_ok()),
        format!("|A| = {}", terminals.len()),
    );

    let clash = output
        .special
        .b
        .iter()
        .chain(&output.special.c)
        .filter(|&&v| inst.is_terminal(v))
        .count();
    report.record(
        "b-c-not-terminal",
        clash == 0,
        format!("{clash} b/c vertices in A"),
    );

    let mut keep = vec![true; inst.vertex_count()];
    for &v in &special {
        if v < keep.len() {
            keep[v] = false;
        }
    }
    let (rest, _) = graph.induced(&keep);
    report.record(
        "rest-is-path",
        rest.is_path_graph(),
        format!(
            "{} vertices, {} edges",
            rest.vertex_count(),
            rest.edge_count()
        ),
    );

    let sorted = output
        .points
        .windows(2)
        .all(|w| w[0].coordinate <= w[1].coordinate);
    let chained = (1..p).all(|i| graph.has_edge(i - 1, i));
    report.record("points-ordered", sorted && chained, String::new());

    let mut bad_blocks = Vec::new();
    for j in 0..n {
        let size = output
            .points
            .iter()
            .filter(|pt| pt.kind == PointKind::Separator { block: j })
            .count();
        if size != budget + 4 {
            bad_blocks.push(format!("block {} has {size}", j + 1));
        }
    }
    report.record(
        "separator-blocks",
        bad_blocks.is_empty(),
        if bad_blocks.is_empty() {
            format!("{n} × {} points", budget + 4)
        } else {
            bad_blocks.join(", ")
        },
    );

    let mut strays = Vec::new();
    let bc: Vec<usize> = {
        let mut v: Vec<usize> = output
            .special
            .b
            .iter()
            .chain(&output.special.c)
            .copied()
            .collect();
        v.sort_unstable();
        v
    };
    for (i, pt) in output.points.iter().enumerate() {
        if let PointKind::Padding { item } = pt.kind {
            for &u in graph.neighbors(i) {
                if u >= p && bc.binary_search(&u).is_err() {
                    strays.push(format!("padding {} touches {}", item + 1, u + 1));
                }
            }
        }
    }
    report.record("padding-neighbors", strays.is_empty(), strays.join(", "));

    let mut short = Vec::new();
    for (j, item) in output.family.items.iter().enumerate() {
        let total = output
            .points
            .iter()
            .filter(|pt| match pt.kind {
                PointKind::Left { .. } | PointKind::Right { .. } => {
                    item.a.contains(pt.coordinate) || item.b.contains(pt.coordinate)
                }
                PointKind::Padding { item: i } => i == j,
                PointKind::Separator { .. } => false,
            })
            .count();
        if total != budget {
            short.push(format!("item {} covers {total}", j + 1));
        }
    }
    report.record(
        "item-totals",
        short.is_empty(),
        if short.is_empty() {
            format!("each item covers {budget}")
        } else {
            short.join(", ")
        },
    );

    report
}
