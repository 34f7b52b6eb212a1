//! Explicit square-lattice embeddings of paths, combs and hierarchical trees.
//!
//! A hierarchical tree of generation `j` is a backbone of `ℓ_j` bonds running
//! in its local `+x` direction, with `b_j` copies of the generation `j-1` tree
//! attached at backbone distances `k·ℓ_j/b_j`, `k = 1..=b_j`. Each copy is the
//! parent frame rotated by +90°, so the last copy sits at the far end of the
//! backbone. Generation 1 is a bare backbone.

use crate::error::{Error, Result};
use crate::lattice::{validate_tree, Bond, RootedTree, Site};
use crate::params::BouchParams;
use std::collections::HashSet;

/// Largest tree that will be materialized.
pub const MAX_MATERIALIZED_BONDS: u64 = 10_000_000;

/// Straight segment from the origin to `(length, 0)`, rooted at the origin.
pub fn path_tree(length: u64) -> Result<RootedTree> {
    if length == 0 {
        return Err(Error::InvalidParameter("path length must be >= 1".into()));
    }
    guard(length as u128)?;
    let bonds = (0..length as i64).map(|x| unit(Site::new(x, 0), Site::new(x + 1, 0)));
    validate_tree(Site::ORIGIN, bonds)
}

/// Comb with `bonds/2` horizontal bonds and one upward tooth at the right end
/// of each of them.
pub fn comb_tree(bonds: u64) -> Result<RootedTree> {
    if bonds < 2 || bonds % 2 == 1 {
        return Err(Error::OddLength(bonds));
    }
    guard(bonds as u128)?;
    let half = (bonds / 2) as i64;
    let spine = (0..half).map(|x| unit(Site::new(x, 0), Site::new(x + 1, 0)));
    let teeth = (1..=half).map(|x| unit(Site::new(x, 0), Site::new(x, 1)));
    validate_tree(Site::ORIGIN, spine.chain(teeth))
}

/// A materialized hierarchical tree together with its generation labels.
#[derive(Debug, Clone)]
pub struct HierarchicalTree {
    tree: RootedTree,
    /// `per_generation[g-1]` bonds belong to backbones of generation `g`.
    per_generation: Vec<u64>,
}

impl HierarchicalTree {
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn into_tree(self) -> RootedTree {
        self.tree
    }

    /// Bonds lying on generation-`g` backbones; generation 1 counts the
    /// bonds of the innermost (first-generation) branches.
    pub fn bonds_in_generation(&self, g: usize) -> u64 {
        g.checked_sub(1)
            .and_then(|i| self.per_generation.get(i).copied())
            .unwrap_or(0)
    }

    pub fn generations(&self) -> usize {
        self.per_generation.len()
    }
}

/// Hierarchical tree from explicit backbone lengths `ells = (ℓ_1..ℓ_n)` and
/// branch counts `bs = (b_2..b_n)`.
///
/// Requires `ℓ` strictly increasing, `b_j >= 1`, `b_j | ℓ_j`, and
/// `ℓ_j/b_j > ℓ_{j-2}` for `j >= 3`.
pub fn custom_hierarchical_tree(ells: &[u64], bs: &[u64]) -> Result<HierarchicalTree> {
    check_hierarchy(ells, bs)?;
    build_hierarchy(ells, bs)
}

/// Materializes the Bouch tree `T_j` described by `params`.
pub fn bouch_tree(params: &BouchParams) -> Result<HierarchicalTree> {
    let j = params.generation();
    let total = params.bond_count(j)?;
    let limit = crate::sparse::Sparse::from_u64(MAX_MATERIALIZED_BONDS);
    if total > limit {
        return Err(Error::too_large(
            format!("L_{j} for a0={}", params.a0()),
            MAX_MATERIALIZED_BONDS,
        ));
    }
    let ells: Vec<u64> = (1..=j)
        .map(|k| params.ell(k).to_u64().expect("bounded by L_j"))
        .collect();
    let bs: Vec<u64> = (2..=j)
        .map(|k| params.b(k).to_u64().expect("bounded by L_j"))
        .collect();
    check_hierarchy(&ells, &bs).map_err(|e| Error::InternalMismatch(e.to_string()))?;
    build_hierarchy(&ells, &bs)
}

fn check_hierarchy(ells: &[u64], bs: &[u64]) -> Result<()> {
    let violated = |s: String| Err(Error::ConstraintViolated(s));
    if ells.is_empty() {
        return violated("at least one backbone length is required".into());
    }
    if bs.len() + 1 != ells.len() {
        return violated(format!(
            "expected {} branch counts for {} backbone lengths, got {}",
            ells.len() - 1,
            ells.len(),
            bs.len()
        ));
    }
    if ells[0] == 0 {
        return violated("l_1 must be positive".into());
    }
    for k in 1..ells.len() {
        let j = k + 1;
        let (ell, b) = (ells[k], bs[k - 1]);
        if ell <= ells[k - 1] {
            return violated(format!("l_{j} = {ell} must exceed l_{k} = {}", ells[k - 1]));
        }
        if b == 0 {
            return violated(format!("b_{j} must be positive"));
        }
        if ell % b != 0 {
            return violated(format!("b_{j} = {b} does not divide l_{j} = {ell}"));
        }
        if j >= 3 && ell / b <= ells[k - 2] {
            return violated(format!(
                "l_{j}/b_{j} = {} must exceed l_{} = {}",
                ell / b,
                j - 2,
                ells[k - 2]
            ));
        }
    }
    let mut total: u128 = ells[0] as u128;
    for k in 1..ells.len() {
        total = ells[k] as u128 + bs[k - 1] as u128 * total;
        guard(total)?;
    }
    Ok(())
}

fn guard(bonds: u128) -> Result<()> {
    if bonds > MAX_MATERIALIZED_BONDS as u128 {
        return Err(Error::too_large(
            format!("{bonds} bonds"),
            MAX_MATERIALIZED_BONDS,
        ));
    }
    Ok(())
}

fn unit(u: Site, v: Site) -> Bond {
    Bond::new(u, v).expect("unit step")
}

#[derive(Clone, Copy)]
struct Dir(i64, i64);

impl Dir {
    fn rotated(self) -> Dir {
        Dir(-self.1, self.0)
    }

    fn step(self, s: Site, k: i64) -> Site {
        Site::new(s.x + k * self.0, s.y + k * self.1)
    }
}

struct Builder<'a> {
    ells: &'a [u64],
    bs: &'a [u64],
    occupied: HashSet<Site>,
    bonds: Vec<Bond>,
    per_generation: Vec<u64>,
}

impl Builder<'_> {
    /// Lays out generation `g` (1-based) rooted at the already-occupied `origin`.
    fn lay(&mut self, g: usize, origin: Site, dir: Dir) -> Result<()> {
        let ell = self.ells[g - 1] as i64;
        let mut prev = origin;
        for i in 1..=ell {
            let s = dir.step(origin, i);
            if !self.occupied.insert(s) {
                return Err(Error::OverlapDetected((s.x, s.y)));
            }
            self.bonds.push(unit(prev, s));
            prev = s;
        }
        self.per_generation[g - 1] += ell as u64;
        if g > 1 {
            let b = self.bs[g - 2] as i64;
            let spacing = ell / b;
            for k in 1..=b {
                self.lay(g - 1, dir.step(origin, k * spacing), dir.rotated())?;
            }
        }
        Ok(())
    }
}

fn build_hierarchy(ells: &[u64], bs: &[u64]) -> Result<HierarchicalTree> {
    let n = ells.len();
    let mut b = Builder {
        ells,
        bs,
        occupied: HashSet::from([Site::ORIGIN]),
        bonds: Vec::new(),
        per_generation: vec![0; n],
    };
    b.lay(n, Site::ORIGIN, Dir(1, 0))?;
    let tree = validate_tree(Site::ORIGIN, b.bonds).map_err(|e| match e {
        Error::HasCycle { .. } | Error::DuplicateBond(_) => Error::OverlapDetected((0, 0)),
        other => other,
    })?;
    Ok(HierarchicalTree {
        tree,
        per_generation: b.per_generation,
    })
}
