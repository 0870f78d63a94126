use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

/// One gap length to choose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthVariable {
    /// Which path's length equation the variable enters.
    pub path_group: usize,
    /// Which clique's capacity the variable draws on.
    pub clique_group: usize,
    pub lower: usize,
    /// When set, the variable must equal `lower`.
    pub fixed: bool,
}

/// Integer program: per path the variables sum to its target, per clique they sum to at most
/// its capacity, each variable is at least its lower bound (exactly, when fixed).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LengthProgram {
    pub variables: Vec<LengthVariable>,
    pub path_targets: Vec<usize>,
    pub clique_capacities: Vec<usize>,
}

/// Solves a [`LengthProgram`] exactly. Returns one value per variable, or `None` when
/// infeasible.
///
/// After substituting `x = lower + y`, the program is a transportation problem: path groups
/// supply their remaining targets, cliques absorb up to their remaining capacities, and each
/// free variable is an uncapacitated arc between its two groups. It is feasible exactly when
/// the maximum flow saturates every supply.
pub fn solve_length_program(program: &LengthProgram) -> Result<Option<Vec<usize>>> {
    let paths = program.path_targets.len();
    let cliques = program.clique_capacities.len();
    for (i, v) in program.variables.iter().enumerate() {
        if v.path_group >= paths || v.clique_group >= cliques {
            return Err(Error::Precondition(format!(
                "variable {i} refers to a missing group"
            )));
        }
    }
    let mut supply: Vec<i64> = program.path_targets.iter().map(|&t| t as i64).collect();
    let mut room: Vec<i64> = program
        .clique_capacities
        .iter()
        .map(|&c| c as i64)
        .collect();
    for v in &program.variables {
        supply[v.path_group] -= v.lower as i64;
        room[v.clique_group] -= v.lower as i64;
    }
    if supply.iter().chain(&room).any(|&x| x < 0) {
        return Ok(None);
    }
    let source = 0;
    let sink = 1;
    let mut net = FlowNetwork::new(2 + paths + cliques);
    let path_node = |i: usize| 2 + i;
    let clique_node = |j: usize| 2 + paths + j;
    let mut need = 0;
    for (i, &s) in supply.iter().enumerate() {
        net.add_arc(source, path_node(i), s as u64);
        need += s as u64;
    }
    for (j, &r) in room.iter().enumerate() {
        net.add_arc(clique_node(j), sink, r as u64);
    }
    let arcs: Vec<Option<usize>> = program
        .variables
        .iter()
        .map(|v| {
            (!v.fixed)
                .then(|| net.add_arc(path_node(v.path_group), clique_node(v.clique_group), need))
        })
        .collect();
    if net.max_flow(source, sink) < need {
        return Ok(None);
    }
    Ok(Some(
        program
            .variables
            .iter()
            .zip(arcs)
            .map(|(v, arc)| v.lower + arc.map_or(0, |a| net.flow(a) as usize))
            .collect(),
    ))
}

/// Whether `values` satisfies every constraint of `program`.
pub fn satisfies(program: &LengthProgram, values: &[usize]) -> bool {
    if values.len() != program.variables.len() {
        return false;
    }
    let mut sums = vec![0; program.path_targets.len()];
    let mut loads = vec![0; program.clique_capacities.len()];
    for (v, &x) in program.variables.iter().zip(values) {
        if x < v.lower || (v.fixed && x != v.lower) {
            return false;
        }
        sums[v.path_group] += x;
        loads[v.clique_group] += x;
    }
    sums == program.path_targets
        && loads
            .iter()
            .zip(&program.clique_capacities)
            .all(|(l, c)| l <= c)
}
