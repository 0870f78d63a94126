use std::ops::ControlFlow;

use crate::graph::Graph;

/// How many clique vertices a gap between two consecutive modulator vertices uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthClass {
    /// The two modulator vertices are joined directly.
    Zero,
    /// Exactly one clique vertex, adjacent to both.
    One,
    /// At least two clique vertices.
    More,
}

impl LengthClass {
    /// Least number of clique vertices the gap uses.
    pub fn lower_bound(self) -> usize {
        match self {
            LengthClass::Zero => 0,
            LengthClass::One => 1,
            LengthClass::More => 2,
        }
    }
}

/// A pair of consecutive modulator vertices on one guessed path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gap {
    pub sequence: usize,
    pub position: usize,
    pub from: usize,
    pub to: usize,
}

/// One guess of how a packing meets the modulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessTuple {
    /// The modulator vertices used by the packing, sorted.
    pub used_modulator: Vec<usize>,
    /// Per path, its modulator vertices in path order. First and last are terminals, the
    /// rest are not; each sequence starts at its smaller end and sequences are sorted by
    /// first vertex.
    pub sequences: Vec<Vec<usize>>,
    /// All gaps, by sequence then position.
    pub gaps: Vec<Gap>,
    /// Length class per gap.
    pub length_class: Vec<LengthClass>,
    /// Partition of the gaps with a non-zero class into groups served by one clique each.
    pub parts: Vec<Vec<usize>>,
    /// Per part, the modulator sets that need distinct clique representatives: `{from, to}`
    /// for a class-one gap, `{from}` and `{to}` for a longer gap.
    pub requirements: Vec<Vec<Vec<usize>>>,
}

impl GuessTuple {
    /// Number of clique vertices path `i` still needs: `l - |sequence i|`.
    pub fn path_target(&self, ell: usize, sequence: usize) -> usize {
        ell - self.sequences[sequence].len()
    }
}

/// The graph data used to discard hopeless guesses early.
#[derive(Debug, Clone)]
pub struct Pruning<'a> {
    pub graph: &'a Graph,
    pub cliques: &'a [Vec<usize>],
}

impl Pruning<'_> {
    fn one_possible(&self, a: usize, b: usize) -> bool {
        self.cliques
            .iter()
            .flatten()
            .any(|&v| self.graph.has_edge(a, v) && self.graph.has_edge(b, v))
    }

    fn more_possible(&self, a: usize, b: usize) -> bool {
        self.cliques.iter().any(|q| {
            q.iter().any(|&x| {
                self.graph.has_edge(a, x) && q.iter().any(|&y| y != x && self.graph.has_edge(b, y))
            })
        })
    }
}

/// Inputs to [`enumerate_guesses`].
#[derive(Debug, Clone)]
pub struct GuessSpace<'a> {
    pub graph: &'a Graph,
    /// The modulator `M`, containing every terminal.
    pub modulator: &'a [usize],
    pub is_terminal: &'a [bool],
    pub path_order: usize,
    pub demand: usize,
}

/// Calls `visit` on every guess with exactly `demand` sequences, each reversal pair once.
///
/// Without pruning, every tuple meeting the structural rules is produced: class zero only
/// between adjacent vertices, every sequence short enough for `l`. With pruning, guesses
/// whose lengths cannot add up or whose gaps no clique could serve are skipped.
pub fn enumerate_guesses<F>(
    space: &GuessSpace<'_>,
    pruning: Option<&Pruning<'_>>,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&GuessTuple) -> ControlFlow<()>,
{
    let terminals: Vec<usize> = space
        .modulator
        .iter()
        .copied()
        .filter(|&v| space.is_terminal[v])
        .collect();
    let inner: Vec<usize> = space
        .modulator
        .iter()
        .copied()
        .filter(|&v| !space.is_terminal[v])
        .collect();
    let mut walker = SequenceWalker {
        space,
        pruning,
        terminals,
        inner,
        used: Vec::new(),
        sequences: Vec::new(),
        visit: &mut visit,
    };
    walker.next_sequence(None)
}

struct SequenceWalker<'s, 'a, F> {
    space: &'s GuessSpace<'a>,
    pruning: Option<&'s Pruning<'a>>,
    terminals: Vec<usize>,
    inner: Vec<usize>,
    used: Vec<usize>,
    sequences: Vec<Vec<usize>>,
    visit: &'s mut F,
}

impl<F> SequenceWalker<'_, '_, F>
where
    F: FnMut(&GuessTuple) -> ControlFlow<()>,
{
    fn next_sequence(&mut self, after: Option<usize>) -> ControlFlow<()> {
        if self.sequences.len() == self.space.demand {
            return self.assign_classes();
        }
        let firsts: Vec<usize> = self
            .terminals
            .iter()
            .copied()
            .filter(|&t| after.is_none_or(|a| t > a) && !self.used.contains(&t))
            .collect();
        for first in firsts {
            self.used.push(first);
            self.sequences.push(vec![first]);
            self.grow(first)?;
            self.sequences.pop();
            self.used.pop();
        }
        ControlFlow::Continue(())
    }

    /// Extends the last sequence with inner vertices, closing it at any larger terminal.
    fn grow(&mut self, first: usize) -> ControlFlow<()> {
        let len = self.sequences.last().expect("growing a sequence").len();
        if len + 1 > self.space.path_order {
            return ControlFlow::Continue(());
        }
        let closers: Vec<usize> = self
            .terminals
            .iter()
            .copied()
            .filter(|&t| t > first && !self.used.contains(&t))
            .collect();
        for last in closers {
            self.used.push(last);
            self.sequences.last_mut().expect("open").push(last);
            self.next_sequence(Some(first))?;
            self.sequences.last_mut().expect("open").pop();
            self.used.pop();
        }
        if len + 2 > self.space.path_order {
            return ControlFlow::Continue(());
        }
        for i in 0..self.inner.len() {
            let v = self.inner[i];
            if self.used.contains(&v) {
                continue;
            }
            self.used.push(v);
            self.sequences.last_mut().expect("open").push(v);
            self.grow(first)?;
            self.sequences.last_mut().expect("open").pop();
            self.used.pop();
        }
        ControlFlow::Continue(())
    }

    fn assign_classes(&mut self) -> ControlFlow<()> {
        let mut gaps = Vec::new();
        for (s, seq) in self.sequences.iter().enumerate() {
            for (p, w) in seq.windows(2).enumerate() {
                gaps.push(Gap {
                    sequence: s,
                    position: p,
                    from: w[0],
                    to: w[1],
                });
            }
        }
        let mut classes = Vec::with_capacity(gaps.len());
        self.classes_from(&gaps, &mut classes)
    }

    fn classes_from(&mut self, gaps: &[Gap], classes: &mut Vec<LengthClass>) -> ControlFlow<()> {
        let i = classes.len();
        if i == gaps.len() {
            if !self.lengths_fit(gaps, classes) {
                return ControlFlow::Continue(());
            }
            return self.partition(gaps, classes);
        }
        let gap = gaps[i];
        for class in [LengthClass::Zero, LengthClass::One, LengthClass::More] {
            let allowed = match (class, self.pruning) {
                (LengthClass::Zero, _) => self.space.graph.has_edge(gap.from, gap.to),
                (_, None) => true,
                (LengthClass::One, Some(p)) => p.one_possible(gap.from, gap.to),
                (LengthClass::More, Some(p)) => p.more_possible(gap.from, gap.to),
            };
            if !allowed {
                continue;
            }
            classes.push(class);
            let r = self.classes_from(gaps, classes);
            classes.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    /// Lower bounds of each sequence's gaps must not exceed its target, and must meet it
    /// exactly when no gap can stretch.
    fn lengths_fit(&self, gaps: &[Gap], classes: &[LengthClass]) -> bool {
        if self.pruning.is_none() {
            return true;
        }
        self.sequences.iter().enumerate().all(|(s, seq)| {
            let target = self.space.path_order - seq.len();
            let mine = gaps.iter().zip(classes).filter(|(g, _)| g.sequence == s);
            let low: usize = mine.clone().map(|(_, c)| c.lower_bound()).sum();
            let stretch = mine.clone().any(|(_, &c)| c == LengthClass::More);
            if stretch {
                low <= target
            } else {
                low == target
            }
        })
    }

    fn partition(&mut self, gaps: &[Gap], classes: &[LengthClass]) -> ControlFlow<()> {
        let open: Vec<usize> = (0..gaps.len())
            .filter(|&i| classes[i] != LengthClass::Zero)
            .collect();
        let mut used_modulator: Vec<usize> = self.sequences.iter().flatten().copied().collect();
        used_modulator.sort_unstable();
        let mut tuple = GuessTuple {
            used_modulator,
            sequences: self.sequences.clone(),
            gaps: gaps.to_vec(),
            length_class: classes.to_vec(),
            parts: Vec::new(),
            requirements: Vec::new(),
        };
        let mut labels = Vec::with_capacity(open.len());
        set_partitions(&open, &mut labels, 0, &mut |labels, blocks| {
            let mut parts = vec![Vec::new(); blocks];
            for (&g, &b) in open.iter().zip(labels) {
                parts[b].push(g);
            }
            tuple.requirements = parts
                .iter()
                .map(|part| requirements_for(part, &tuple.gaps, &tuple.length_class))
                .collect();
            tuple.parts = parts;
            (self.visit)(&tuple)
        })
    }
}

/// Calls `f` with every restricted growth string over `items` (one label per item, label
/// `b` used only after `0..b`), i.e. every set partition.
fn set_partitions<F>(
    items: &[usize],
    labels: &mut Vec<usize>,
    blocks: usize,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], usize) -> ControlFlow<()>,
{
    if labels.len() == items.len() {
        return f(labels, blocks);
    }
    for b in 0..=blocks {
        labels.push(b);
        let r = set_partitions(items, labels, blocks.max(b + 1), f);
        labels.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// The requirement family of one part.
pub fn requirements_for(part: &[usize], gaps: &[Gap], classes: &[LengthClass]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for &g in part {
        let gap = gaps[g];
        match classes[g] {
            LengthClass::Zero => {}
            LengthClass::One => {
                let mut pair = vec![gap.from, gap.to];
                pair.sort_unstable();
                out.push(pair);
            }
            LengthClass::More => {
                out.push(vec![gap.from]);
                out.push(vec![gap.to]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(space: &GuessSpace<'_>) -> Vec<GuessTuple> {
        let mut out = Vec::new();
        let _ = enumerate_guesses(space, None, |t| {
            out.push(t.clone());
            ControlFlow::Continue(())
        });
        out
    }

    #[test]
    fn two_terminals_one_gap() {
        let g = Graph::new(2);
        let space = GuessSpace {
            graph: &g,
            modulator: &[0, 1],
            is_terminal: &[true, true],
            path_order: 4,
            demand: 1,
        };
        let guesses = collect(&space);
        // Non-adjacent terminals: classes One and More, each with a single one-part partition.
        assert_eq!(guesses.len(), 2);
        assert!(guesses
            .iter()
            .all(|t| t.sequences == vec![vec![0, 1]] && t.gaps.len() == 1));
        assert_eq!(guesses[0].requirements, vec![vec![vec![0, 1]]]);
        assert_eq!(guesses[1].requirements, vec![vec![vec![0], vec![1]]]);
    }

    #[test]
    fn too_few_terminals() {
        let g = Graph::new(3);
        let space = GuessSpace {
            graph: &g,
            modulator: &[0, 1, 2],
            is_terminal: &[true, true, true],
            path_order: 4,
            demand: 2,
        };
        assert!(collect(&space).is_empty());
    }

    #[test]
    fn adjacent_pair_allows_zero() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let space = GuessSpace {
            graph: &g,
            modulator: &[0, 1],
            is_terminal: &[true, true],
            path_order: 2,
            demand: 1,
        };
        let guesses = collect(&space);
        assert_eq!(guesses.len(), 3);
        assert_eq!(guesses[0].length_class, vec![LengthClass::Zero]);
        assert!(guesses[0].parts.is_empty());
    }

    #[test]
    fn partitions_counted_by_bell_numbers() {
        let mut count = 0;
        let _ = set_partitions(&[0, 1, 2, 3], &mut Vec::new(), 0, &mut |_, _| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 15);
    }
}
