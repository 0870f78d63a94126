use std::fmt::Write as _;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A closed interval `[left, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub left: Rational64,
    pub right: Rational64,
}

impl Interval {
    pub fn new(left: Rational64, right: Rational64) -> Self {
        Interval { left, right }
    }

    pub fn meets(&self, other: &Interval) -> bool {
        self.left.max(other.left) <= self.right.min(other.right)
    }

    pub fn contains(&self, x: Rational64) -> bool {
        self.left <= x && x <= self.right
    }
}

/// Two disjoint intervals treated as one object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoInterval {
    pub a: Interval,
    pub b: Interval,
}

impl TwoInterval {
    pub fn parts(&self) -> [Interval; 2] {
        [self.a, self.b]
    }
}

/// Whether the unions of the two intervals of each item share a point.
pub fn intersects(i1: &TwoInterval, i2: &TwoInterval) -> bool {
    i1.parts()
        .iter()
        .any(|x| i2.parts().iter().any(|y| x.meets(y)))
}

/// A family of 2-intervals inside `[0, 1]` together with the spacing constant `epsilon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoIntervalFamily {
    pub items: Vec<TwoInterval>,
    pub epsilon: Rational64,
}

/// `1 / (16n + 4)`: half the grid step used by [`random_family`].
pub fn default_epsilon(n: usize) -> Rational64 {
    Rational64::new(1, 16 * n as i64 + 4)
}

impl TwoIntervalFamily {
    /// Builds a family with the default spacing constant and checks it.
    pub fn new(items: Vec<TwoInterval>) -> Result<Self> {
        let epsilon = default_epsilon(items.len());
        let family = TwoIntervalFamily { items, epsilon };
        family.check()?;
        Ok(family)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// All endpoints, sorted.
    pub fn endpoints(&self) -> Vec<Rational64> {
        let mut out: Vec<Rational64> = self
            .items
            .iter()
            .flat_map(|it| [it.a.left, it.a.right, it.b.left, it.b.right])
            .collect();
        out.sort();
        out
    }

    /// Checks that intervals lie in `[0, 1]`, are proper, the two intervals of an item are
    /// disjoint, and consecutive endpoints are at least `2ε` apart.
    pub fn check(&self) -> Result<()> {
        let zero = Rational64::from_integer(0);
        let one = Rational64::from_integer(1);
        if self.epsilon <= zero {
            return Err(Error::Precondition("epsilon must be positive".into()));
        }
        for (j, item) in self.items.iter().enumerate() {
            for iv in item.parts() {
                if iv.left < zero || iv.right > one || iv.left >= iv.right {
                    return Err(Error::Precondition(format!(
                        "item {}: interval [{}, {}] is not a proper subinterval of [0, 1]",
                        j + 1,
                        iv.left,
                        iv.right
                    )));
                }
            }
            if item.a.meets(&item.b) {
                return Err(Error::Precondition(format!(
                    "item {}: its intervals overlap",
                    j + 1
                )));
            }
        }
        let ends = self.endpoints();
        for w in ends.windows(2) {
            if w[1] - w[0] < self.epsilon * 2 {
                return Err(Error::Precondition(format!(
                    "endpoints {} and {} are closer than 2ε = {}",
                    w[0],
                    w[1],
                    self.epsilon * 2
                )));
            }
        }
        Ok(())
    }
}

/// Parses `ti <La> <Ra> <Lb> <Rb>` lines (rationals as `p/q` or integers); `c` lines and
/// blank lines are skipped. An optional `eps <value>` line overrides the spacing constant.
pub fn parse_family(text: &str) -> Result<TwoIntervalFamily> {
    let mut items = Vec::new();
    let mut epsilon = None;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let value = |t: &str| -> Result<Rational64> {
            t.parse::<Rational64>()
                .map_err(|_| Error::parse(line, format!("`{t}` is not a rational number")))
        };
        match tokens.first() {
            None | Some(&"c") => {}
            Some(&"ti") => {
                if tokens.len() != 5 {
                    return Err(Error::parse(line, "expected `ti <La> <Ra> <Lb> <Rb>`"));
                }
                items.push(TwoInterval {
                    a: Interval::new(value(tokens[1])?, value(tokens[2])?),
                    b: Interval::new(value(tokens[3])?, value(tokens[4])?),
                });
            }
            Some(&"eps") if tokens.len() == 2 => epsilon = Some(value(tokens[1])?),
            Some(other) => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let family = TwoIntervalFamily {
        epsilon: epsilon.unwrap_or_else(|| default_epsilon(items.len())),
        items,
    };
    family.check()?;
    Ok(family)
}

pub fn serialize_family(family: &TwoIntervalFamily) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "eps {}", family.epsilon);
    for it in &family.items {
        let _ = writeln!(
            out,
            "ti {} {} {} {}",
            it.a.left, it.a.right, it.b.left, it.b.right
        );
    }
    out
}

/// A random family of `n` items: `4n` distinct grid points `t/(8n+2)`, shuffled, each group
/// of four sorted into `[p1, p2]` and `[p3, p4]`.
pub fn random_family<R: Rng>(n: usize, rng: &mut R) -> TwoIntervalFamily {
    let denominator = 8 * n as i64 + 2;
    let mut grid: Vec<i64> = (1..denominator).collect();
    grid.shuffle(rng);
    let items = grid[..4 * n]
        .chunks(4)
        .map(|c| {
            let mut p = [c[0], c[1], c[2], c[3]];
            p.sort_unstable();
            let r = |t: i64| Rational64::new(t, denominator);
            TwoInterval {
                a: Interval::new(r(p[0]), r(p[1])),
                b: Interval::new(r(p[2]), r(p[3])),
            }
        })
        .collect();
    TwoIntervalFamily {
        items,
        epsilon: default_epsilon(n),
    }
}

/// A maximal set of pairwise non-intersecting items, scanning in random order.
pub fn random_disjoint_selection<R: Rng>(family: &TwoIntervalFamily, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.shuffle(rng);
    let mut chosen: Vec<usize> = Vec::new();
    for j in order {
        if chosen
            .iter()
            .all(|&c| !intersects(&family.items[c], &family.items[j]))
        {
            chosen.push(j);
        }
    }
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn item(v: [(i64, i64); 4]) -> TwoInterval {
        let r = |(p, q): (i64, i64)| Rational64::new(p, q);
        TwoInterval {
            a: Interval::new(r(v[0]), r(v[1])),
            b: Interval::new(r(v[2]), r(v[3])),
        }
    }

    #[test]
    fn intersection_cases() {
        let x = item([(1, 10), (2, 10), (3, 10), (4, 10)]);
        assert!(intersects(&x, &x));
        let right = item([(6, 10), (7, 10), (8, 10), (9, 10)]);
        assert!(!intersects(&x, &right));
        let outer = item([(10, 100), (50, 100), (70, 100), (80, 100)]);
        let inner_second = item([(1, 100), (5, 100), (20, 100), (30, 100)]);
        assert!(intersects(&inner_second, &outer));
    }

    #[test]
    fn random_families_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            let f = random_family(n, &mut rng);
            f.check().unwrap();
            let text = serialize_family(&f);
            assert_eq!(parse_family(&text).unwrap(), f);
        }
    }

    #[test]
    fn close_endpoints_rejected() {
        let f = TwoIntervalFamily {
            items: vec![item([(1, 100), (2, 100), (5, 10), (6, 10)])],
            epsilon: Rational64::new(1, 20),
        };
        assert!(f.check().is_err());
    }
}
