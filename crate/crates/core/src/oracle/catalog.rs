use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::instance::{Instance, Path};

/// Default bound on the number of catalogued paths.
pub const DEFAULT_CATALOG_CAP: usize = 2_000_000;

/// Every (A, l)-path of an instance, each listed once with its smaller endpoint first.
#[derive(Debug, Clone)]
pub struct PathCatalog {
    paths: Vec<Path>,
    masks: Vec<FixedBitSet>,
}

impl PathCatalog {
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Vertex set of path `i`.
    pub fn mask(&self, i: usize) -> &FixedBitSet {
        &self.masks[i]
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Lists all (A, l)-paths by depth-first search from each terminal.
///
/// Fails with [`Error::TooLarge`] as soon as more than `cap` paths exist.
pub fn enumerate_a_paths(instance: &Instance, cap: usize) -> Result<PathCatalog> {
    let n = instance.vertex_count();
    let mut walk = Walk {
        instance,
        cap,
        on_path: vec![false; n],
        stack: Vec::with_capacity(instance.path_order()),
        paths: Vec::new(),
    };
    for s in instance.terminals() {
        walk.on_path[s] = true;
        walk.stack.push(s);
        walk.extend()?;
        walk.stack.pop();
        walk.on_path[s] = false;
    }
    let masks = walk
        .paths
        .iter()
        .map(|p| {
            let mut m = FixedBitSet::with_capacity(n);
            for &v in p.vertices() {
                m.insert(v);
            }
            m
        })
        .collect();
    Ok(PathCatalog {
        paths: walk.paths,
        masks,
    })
}

struct Walk<'a> {
    instance: &'a Instance,
    cap: usize,
    on_path: Vec<bool>,
    stack: Vec<usize>,
    paths: Vec<Path>,
}

impl Walk<'_> {
    fn extend(&mut self) -> Result<()> {
        let ell = self.instance.path_order();
        let last = *self.stack.last().expect("walk starts at a terminal");
        let graph = self.instance.graph();
        if self.stack.len() + 1 == ell {
            let start = self.stack[0];
            for &t in graph.neighbors(last) {
                if t > start && self.instance.is_terminal(t) {
                    if self.paths.len() == self.cap {
                        return Err(Error::TooLarge(format!(
                            "catalog cap exceeded: more than {} paths",
                            self.cap
                        )));
                    }
                    let mut vs = self.stack.clone();
                    vs.push(t);
                    self.paths.push(Path::new(vs));
                }
            }
            return Ok(());
        }
        for &w in graph.neighbors(last) {
            if self.on_path[w] || self.instance.is_terminal(w) {
                continue;
            }
            self.on_path[w] = true;
            self.stack.push(w);
            self.extend()?;
            self.stack.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }
}
