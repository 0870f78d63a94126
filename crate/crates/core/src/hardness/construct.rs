use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::family::{intersects, TwoIntervalFamily};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, Packing, Path};

/// Builds refuse to materialize more points than this.
pub const MAX_POINTS: usize = 5_000_000;

/// Which of an item's two intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    A,
    B,
}

/// Where a point on the line came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    /// Cloud at the left endpoint of an item's interval.
    Left { item: usize, part: Part },
    /// Cloud at the right endpoint of an item's interval.
    Right { item: usize, part: Part },
    /// Padding block `C_j` for item `j`, placed in `[2j, 2j+1]` (1-based `j`).
    Padding { item: usize },
    /// Separator block placed right after padding block `block`.
    Separator { block: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point {
    pub coordinate: Rational64,
    pub kind: PointKind,
}

/// The `4k` vertices attached to the path, one of each role per path to pack.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecialVertices {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

impl SpecialVertices {
    pub fn all(&self) -> Vec<usize> {
        let mut out: Vec<usize> = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .flatten()
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}

/// Cloud sizes drawn for one item, in the order `L(a), R(a), L(b), R(b)`.
pub type WeightDraw = [usize; 4];

/// The instance produced from a family, with every piece needed to audit it.
///
/// Vertex `i < points.len()` is `points[i]`; points are stored in left-to-right order, so the
/// path part of the graph joins `i` and `i + 1`. The special vertices follow.
#[derive(Debug, Clone)]
pub struct ConstructionOutput {
    pub instance: Instance,
    pub family: TwoIntervalFamily,
    pub points: Vec<Point>,
    pub special: SpecialVertices,
    pub weight_draws: Vec<WeightDraw>,
    pub scale: usize,
    pub k: usize,
}

/// `3·C(n⁴, 2)`, the scale that makes the converse direction hold with high probability.
/// Never below 1.
pub fn default_scale(n: usize) -> Result<usize> {
    let too_large = || Error::TooLarge(format!("default scale overflows for n = {n}"));
    let n4 = n.checked_pow(4).ok_or_else(too_large)?;
    let pairs = n4.checked_mul(n4.saturating_sub(1)).ok_or_else(too_large)? / 2;
    Ok(pairs.checked_mul(3).ok_or_else(too_large)?.max(1))
}

/// `8nN + 4`.
pub fn path_order_for(n: usize, scale: usize) -> Result<usize> {
    8usize
        .checked_mul(n)
        .and_then(|x| x.checked_mul(scale))
        .and_then(|x| x.checked_add(4))
        .ok_or_else(|| Error::TooLarge("path order overflows".into()))
}

fn cloud(
    start: Rational64,
    width: Rational64,
    count: usize,
    anchor_right: bool,
) -> Vec<Rational64> {
    if count == 1 {
        return vec![if anchor_right { start + width } else { start }];
    }
    let step = width / Rational64::from_integer(count as i64 - 1);
    (0..count)
        .map(|t| start + step * Rational64::from_integer(t as i64))
        .collect()
}

fn spread(left: Rational64, right: Rational64, count: usize) -> Vec<Rational64> {
    cloud(left, right - left, count, false)
}

/// Builds the path-packing instance for `family` and demand `k`. `scale = 0` selects
/// [`default_scale`].
pub fn construct_alpp(
    family: &TwoIntervalFamily,
    k: usize,
    scale: usize,
    seed: u64,
) -> Result<ConstructionOutput> {
    family.check()?;
    let n = family.len();
    if k > n {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds the family size {n}"
        )));
    }
    let scale = if scale == 0 { default_scale(n)? } else { scale };
    let path_order = path_order_for(n, scale)?;
    let budget = path_order - 4;
    let estimate = n
        .checked_mul(budget + path_order)
        .ok_or_else(|| Error::TooLarge("point count overflows".into()))?;
    if estimate > MAX_POINTS {
        return Err(Error::TooLarge(format!(
            "{estimate} points exceed the cap of {MAX_POINTS}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight_draws: Vec<WeightDraw> = (0..n)
        .map(|_| std::array::from_fn(|_| rng.gen_range(1..=scale)))
        .collect();

    let eps = family.epsilon;
    let mut points: Vec<(Point, usize)> = Vec::new();
    let push = |points: &mut Vec<(Point, usize)>, coords: Vec<Rational64>, kind: PointKind| {
        for (index, coordinate) in coords.into_iter().enumerate() {
            points.push((Point { coordinate, kind }, index));
        }
    };
    for (j, item) in family.items.iter().enumerate() {
        let draws = weight_draws[j];
        for (p, (part, iv)) in [(Part::A, item.a), (Part::B, item.b)]
            .into_iter()
            .enumerate()
        {
            push(
                &mut points,
                cloud(iv.left, eps, draws[2 * p], false),
                PointKind::Left { item: j, part },
            );
            push(
                &mut points,
                cloud(iv.right - eps, eps, draws[2 * p + 1], true),
                PointKind::Right { item: j, part },
            );
        }
    }
    let endpoint_points = points.clone();
    for (j, item) in family.items.iter().enumerate() {
        let inside = endpoint_points
            .iter()
            .filter(|(p, _)| item.a.contains(p.coordinate) || item.b.contains(p.coordinate))
            .count();
        assert!(
            inside <= budget,
            "item {} holds {inside} endpoint points",
            j + 1
        );
        let lo = Rational64::from_integer(2 * (j as i64 + 1));
        let one = Rational64::from_integer(1);
        push(
            &mut points,
            spread(lo, lo + one, budget - inside),
            PointKind::Padding { item: j },
        );
        let third = Rational64::new(1, 3);
        push(
            &mut points,
            spread(lo + one + third, lo + one + third + third, path_order),
            PointKind::Separator { block: j },
        );
    }
    points.sort_by(|(p, i), (q, r)| {
        p.coordinate
            .cmp(&q.coordinate)
            .then(p.kind.cmp(&q.kind))
            .then(i.cmp(r))
    });
    let points: Vec<Point> = points.into_iter().map(|(p, _)| p).collect();
    assemble(family.clone(), points, weight_draws, scale, k, path_order)
}

fn assemble(
    family: TwoIntervalFamily,
    points: Vec<Point>,
    weight_draws: Vec<WeightDraw>,
    scale: usize,
    k: usize,
    path_order: usize,
) -> Result<ConstructionOutput> {
    let p = points.len();
    let mut graph = Graph::new(p + 4 * k);
    for i in 1..p {
        graph.add_edge(i - 1, i)?;
    }
    let special = SpecialVertices {
        a: (0..k).map(|i| p + 4 * i).collect(),
        b: (0..k).map(|i| p + 4 * i + 1).collect(),
        c: (0..k).map(|i| p + 4 * i + 2).collect(),
        d: (0..k).map(|i| p + 4 * i + 3).collect(),
    };
    let anchors = Anchors::locate(&points, family.len())?;
    for i in 0..k {
        for j in 0..family.len() {
            let an = &anchors.items[j];
            graph.add_edge(special.a[i], an.left_a)?;
            graph.add_edge(special.b[i], an.right_a)?;
            graph.add_edge(special.b[i], an.padding_first)?;
            graph.add_edge(special.c[i], an.left_b)?;
            graph.add_edge(special.c[i], an.padding_last)?;
            graph.add_edge(special.d[i], an.right_b)?;
        }
    }
    let terminals: Vec<usize> = special.a.iter().chain(&special.d).copied().collect();
    let instance = Instance::new(graph, terminals, path_order, k, None)?;
    Ok(ConstructionOutput {
        instance,
        family,
        points,
        special,
        weight_draws,
        scale,
        k,
    })
}

/// Vertex ids of the named points of one item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ItemAnchors {
    /// First point of the left cloud of interval `a`.
    pub left_a: usize,
    /// Last point of the right cloud of interval `a`.
    pub right_a: usize,
    pub left_b: usize,
    pub right_b: usize,
    pub padding_first: usize,
    pub padding_last: usize,
}

#[derive(Debug, Clone)]
struct Anchors {
    items: Vec<ItemAnchors>,
}

impl Anchors {
    fn locate(points: &[Point], n: usize) -> Result<Self> {
        let first = |kind: PointKind| points.iter().position(|p| p.kind == kind);
        let last = |kind: PointKind| points.iter().rposition(|p| p.kind == kind);
        let missing = |j: usize| Error::Internal(format!("item {} lost an anchor point", j + 1));
        let items = (0..n)
            .map(|j| {
                let left = |part| first(PointKind::Left { item: j, part });
                let right = |part| last(PointKind::Right { item: j, part });
                Ok(ItemAnchors {
                    left_a: left(Part::A).ok_or_else(|| missing(j))?,
                    right_a: right(Part::A).ok_or_else(|| missing(j))?,
                    left_b: left(Part::B).ok_or_else(|| missing(j))?,
                    right_b: right(Part::B).ok_or_else(|| missing(j))?,
                    padding_first: first(PointKind::Padding { item: j })
                        .ok_or_else(|| missing(j))?,
                    padding_last: last(PointKind::Padding { item: j }).ok_or_else(|| missing(j))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Anchors { items })
    }
}

impl ConstructionOutput {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Anchor vertices of item `j` (0-based).
    pub fn anchors(&self, j: usize) -> Result<ItemAnchors> {
        if j >= self.family.len() {
            return Err(Error::Precondition(format!("no item {}", j + 1)));
        }
        Ok(Anchors::locate(&self.points, self.family.len())?.items[j])
    }

    /// Vertices of the points with the given kind filter, in path order.
    pub fn vertices_where(&self, pred: impl Fn(PointKind) -> bool) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| pred(self.points[i].kind))
            .collect()
    }

    /// Endpoint-cloud points at left endpoints.
    pub fn left_points(&self) -> Vec<usize> {
        self.vertices_where(|k| matches!(k, PointKind::Left { .. }))
    }

    pub fn right_points(&self) -> Vec<usize> {
        self.vertices_where(|k| matches!(k, PointKind::Right { .. }))
    }

    pub fn padding_points(&self) -> Vec<usize> {
        self.vertices_where(|k| matches!(k, PointKind::Padding { .. }))
    }

    pub fn separator_points(&self) -> Vec<usize> {
        self.vertices_where(|k| matches!(k, PointKind::Separator { .. }))
    }

    /// A copy with point `index` deleted and its two path neighbours joined, for testing the
    /// audit.
    pub fn without_point(&self, index: usize) -> Result<ConstructionOutput> {
        if index >= self.points.len() {
            return Err(Error::Precondition(format!("no point {index}")));
        }
        let mut points = self.points.clone();
        points.remove(index);
        assemble(
            self.family.clone(),
            points,
            self.weight_draws.clone(),
            self.scale,
            self.k,
            self.instance.path_order(),
        )
    }
}

/// The `k` paths `a_i · [L(a), R(a)] · b_i · C_j · c_i · [L(b), R(b)] · d_i`, where `j` is the
/// `i`-th selected item.
pub fn planted_packing(output: &ConstructionOutput, selection: &[usize]) -> Result<Packing> {
    let family = &output.family;
    if selection.len() != output.k {
        return Err(Error::Precondition(format!(
            "selection has {} items, expected {}",
            selection.len(),
            output.k
        )));
    }
    if let Some(&j) = selection.iter().find(|&&j| j >= family.len()) {
        return Err(Error::Precondition(format!("no item {}", j + 1)));
    }
    for (x, &i) in selection.iter().enumerate() {
        for &j in &selection[x + 1..] {
            if intersects(&family.items[i], &family.items[j]) {
                return Err(Error::Precondition(format!(
                    "items {} and {} intersect",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let anchors = Anchors::locate(&output.points, family.len())?;
    let s = &output.special;
    let paths = selection
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            let an = anchors.items[j];
            let mut v = vec![s.a[i]];
            v.extend(an.left_a..=an.right_a);
            v.push(s.b[i]);
            v.extend(an.padding_first..=an.padding_last);
            v.push(s.c[i]);
            v.extend(an.left_b..=an.right_b);
            v.push(s.d[i]);
            Path::new(v)
        })
        .collect();
    Ok(Packing::new(paths))
}
