//! Downstream weights, the weight product `W(T)` and the growth count `N(T)`.

use crate::bigcount::BigCount;
use crate::error::Result;
use crate::forest::BondForest;
use crate::lattice::{Bond, RootedTree, Site};
use num_bigint::BigUint;
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Orientation of a tree away from its root, indexed like `tree.bonds()`.
pub fn orient_from_root(tree: &RootedTree) -> BondForest {
    let bonds = tree.bonds();
    let mut incident: HashMap<Site, Vec<usize>> = HashMap::with_capacity(bonds.len() + 1);
    for (i, b) in bonds.iter().enumerate() {
        let (u, v) = b.endpoints();
        incident.entry(u).or_default().push(i);
        incident.entry(v).or_default().push(i);
    }
    let mut parent = vec![None; bonds.len()];
    let mut done = vec![false; bonds.len()];
    // (site, bond that reached it)
    let mut queue = VecDeque::from([(tree.root(), None::<usize>)]);
    while let Some((s, via)) = queue.pop_front() {
        for &i in &incident[&s] {
            if done[i] {
                continue;
            }
            done[i] = true;
            parent[i] = via;
            queue.push_back((bonds[i].other(s), Some(i)));
        }
    }
    BondForest::from_parents(parent)
}

/// Children lists keyed by bond.
pub fn children_map(tree: &RootedTree) -> BTreeMap<Bond, Vec<Bond>> {
    let f = orient_from_root(tree);
    let bonds = tree.bonds();
    bonds
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut kids: Vec<Bond> = f.children(i).iter().map(|&c| bonds[c]).collect();
            kids.sort_unstable();
            (*b, kids)
        })
        .collect()
}

/// Per-bond downstream weights `w(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    bonds: Vec<Bond>,
    weights: Vec<u64>,
}

impl WeightTable {
    pub fn get(&self, bond: &Bond) -> Option<u64> {
        self.bonds.binary_search(bond).ok().map(|i| self.weights[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bond, u64)> + '_ {
        self.bonds.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }
}

pub fn downstream_weights(tree: &RootedTree) -> WeightTable {
    WeightTable {
        bonds: tree.bonds().to_vec(),
        weights: orient_from_root(tree).weights(),
    }
}

/// `W(T) = ∏ w(b)`.
pub fn tree_weight(tree: &RootedTree) -> BigCount {
    orient_from_root(tree).weight_product()
}

/// `N(T) = L!/W(T)`.
pub fn growth_count(tree: &RootedTree) -> Result<BigCount> {
    orient_from_root(tree).growth_count()
}

/// Brute-force count of growth orders. Cost is proportional to `N(T)`, so
/// keep `L` small or pass a `cap`.
pub fn enumerate_growth_orders(tree: &RootedTree, cap: Option<u64>) -> Result<BigCount> {
    orient_from_root(tree)
        .count_linear_extensions(cap)
        .map(BigUint::from)
}

/// Lists the growth orders themselves, at most `cap` of them.
pub fn growth_orders(tree: &RootedTree, cap: u64) -> Result<Vec<Vec<Bond>>> {
    let bonds = tree.bonds();
    Ok(orient_from_root(tree)
        .linear_extensions(cap)?
        .into_iter()
        .map(|seq| seq.into_iter().map(|i| bonds[i]).collect())
        .collect())
}
