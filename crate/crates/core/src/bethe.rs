//! Brute-force counting on the coordination-3 Bethe lattice.
//!
//! Nodes are addressed by digit strings: the root is `""`, its three
//! neighbours are `"0"`, `"1"`, `"2"`, and every other node `s` has the two
//! children `s0` and `s1`. A bond is identified with its far endpoint, so a
//! subtree containing the root is a parent-closed set of non-root nodes.

use crate::bigcount::{factorial, BigCount};
use crate::error::{Error, Result};
use crate::forest::BondForest;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

pub const MAX_BETHE_BONDS: usize = 8;

/// A node of the Bethe lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BetheNode {
    address: String,
}

impl BetheNode {
    pub fn root() -> Self {
        BetheNode {
            address: String::new(),
        }
    }

    pub fn parse(address: &str) -> Option<Self> {
        let mut chars = address.chars();
        match chars.next() {
            None => return Some(Self::root()),
            Some('0'..='2') => {}
            Some(_) => return None,
        }
        chars.all(|c| c == '0' || c == '1').then(|| BetheNode {
            address: address.to_string(),
        })
    }

    pub fn address(&self) -> &str {
        &self.address
    }

    pub fn depth(&self) -> usize {
        self.address.len()
    }

    pub fn parent(&self) -> Option<BetheNode> {
        let mut a = self.address.clone();
        a.pop().map(|_| BetheNode { address: a })
    }

    pub fn children(&self) -> Vec<BetheNode> {
        let digits: &[char] = if self.address.is_empty() {
            &['0', '1', '2']
        } else {
            &['0', '1']
        };
        digits
            .iter()
            .map(|d| BetheNode {
                address: format!("{}{}", self.address, d),
            })
            .collect()
    }
}

impl fmt::Display for BetheNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.address.is_empty() {
            write!(f, "∅")
        } else {
            f.write_str(&self.address)
        }
    }
}

/// The ball of radius `depth` around the root, stored as an arena.
struct Ball {
    nodes: Vec<BetheNode>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Ball {
    fn new(depth: usize) -> Self {
        let mut ball = Ball {
            nodes: vec![BetheNode::root()],
            parent: vec![None],
            children: vec![Vec::new()],
        };
        let mut head = 0;
        while head < ball.nodes.len() {
            if ball.nodes[head].depth() < depth {
                for c in ball.nodes[head].children() {
                    let id = ball.nodes.len();
                    ball.nodes.push(c);
                    ball.parent.push(Some(head));
                    ball.children.push(Vec::new());
                    ball.children[head].push(id);
                }
            }
            head += 1;
        }
        ball
    }
}

fn check_size(bonds: usize) -> Result<()> {
    if bonds == 0 {
        return Err(Error::InvalidParameter("need at least one bond".into()));
    }
    if bonds > MAX_BETHE_BONDS {
        return Err(Error::too_large(
            format!("{bonds} Bethe bonds"),
            MAX_BETHE_BONDS,
        ));
    }
    Ok(())
}

/// Counts bond-addition sequences of length `bonds` from the root by
/// exhaustive search.
pub fn bethe_growth_count(bonds: usize) -> Result<BigCount> {
    check_size(bonds)?;
    let ball = Ball::new(bonds);
    let mut frontier = ball.children[0].clone();
    let mut count = 0u64;
    grow(&ball, &mut frontier, bonds, &mut count);
    Ok(BigUint::from(count))
}

fn grow(ball: &Ball, frontier: &mut Vec<usize>, remaining: usize, count: &mut u64) {
    if remaining == 0 {
        *count += 1;
        return;
    }
    for i in 0..frontier.len() {
        let v = frontier.swap_remove(i);
        let before = frontier.len();
        frontier.extend_from_slice(&ball.children[v]);
        grow(ball, frontier, remaining - 1, count);
        frontier.truncate(before);
        frontier.push(v);
        let last = frontier.len() - 1;
        frontier.swap(i, last);
    }
}

/// `3 × 4 × ⋯ × (L+2) = (L+2)!/2`.
pub fn bethe_growth_closed_form(bonds: usize) -> BigCount {
    factorial(bonds as u64 + 2) / 2u32
}

/// Every distinct `bonds`-bond subtree containing the root, each as a sorted
/// list of its non-root nodes.
pub fn bethe_subtrees(bonds: usize) -> Result<Vec<Vec<BetheNode>>> {
    check_size(bonds)?;
    let ball = Ball::new(bonds);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(bonds);
    subtrees(
        &ball,
        &mut chosen,
        ball.children[0].clone(),
        bonds,
        &mut out,
    );
    let mut trees: Vec<Vec<BetheNode>> = out
        .into_iter()
        .map(|ids| {
            let mut nodes: Vec<BetheNode> =
                ids.into_iter().map(|i| ball.nodes[i].clone()).collect();
            nodes.sort();
            nodes
        })
        .collect();
    trees.sort();
    Ok(trees)
}

/// Include-or-exclude recursion on the first candidate: every subtree is
/// produced exactly once.
fn subtrees(
    ball: &Ball,
    chosen: &mut Vec<usize>,
    mut candidates: Vec<usize>,
    target: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == target {
        out.push(chosen.clone());
        return;
    }
    let Some(v) = candidates.pop() else {
        return;
    };
    let mut with_v = candidates.clone();
    with_v.extend_from_slice(&ball.children[v]);
    chosen.push(v);
    subtrees(ball, chosen, with_v, target, out);
    chosen.pop();
    subtrees(ball, chosen, candidates, target, out);
}

pub fn bethe_tree_count(bonds: usize) -> Result<BigCount> {
    let count = bethe_subtrees(bonds)?.len();
    let bound = BigUint::from(9u32).pow(bonds as u32);
    let count = BigUint::from(count);
    if count > bound {
        return Err(Error::BoundViolated(format!(
            "{count} subtrees with {bonds} bonds exceeds 9^{bonds}"
        )));
    }
    Ok(count)
}

/// Parent structure of a subtree; root-incident bonds are parentless.
pub fn subtree_forest(nodes: &[BetheNode]) -> BondForest {
    let parents = nodes
        .iter()
        .map(|n| {
            let p = n.parent().expect("subtree nodes are non-root");
            if p.depth() == 0 {
                None
            } else {
                Some(nodes.binary_search(&p).expect("subtree is parent-closed"))
            }
        })
        .collect();
    BondForest::from_parents(parents)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub num: BigUint,
    pub den: BigUint,
}

impl Fraction {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        let g = num.gcd(&den);
        if g.is_zero() {
            return Fraction { num, den };
        }
        Fraction {
            num: num / &g,
            den: den / &g,
        }
    }

    /// `self > other` by cross-multiplication.
    pub fn exceeds(&self, other: &Fraction) -> bool {
        &self.num * &other.den > &other.num * &self.den
    }

    pub fn at_least(&self, other: &Fraction) -> bool {
        &self.num * &other.den >= &other.num * &self.den
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn big_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Pigeonhole argument: the average growth count per subtree.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BetheReport {
    #[serde(rename = "L")]
    pub bonds: usize,
    #[serde(serialize_with = "big_string")]
    pub growth_count: BigUint,
    #[serde(serialize_with = "big_string")]
    pub tree_count: BigUint,
    /// `growthCount / treeCount`
    pub average_bound: Fraction,
    /// `(L+2)!/(2·9^L)`
    pub paper_bound: Fraction,
    /// `L!/9^L`
    pub factorial_bound: Fraction,
    pub maximizer_address_list: Vec<String>,
    #[serde(serialize_with = "big_string")]
    pub maximizer_n: BigUint,
    /// `Σ_trees N(tree) = growthCount`
    pub partition_holds: bool,
    /// Brute-force and `L!/W` counts agree on every subtree.
    pub counts_agree: bool,
    pub closed_form_holds: bool,
    pub passed: bool,
}

pub fn bethe_existence_bound(bonds: usize) -> Result<BetheReport> {
    let growth = bethe_growth_count(bonds)?;
    let trees = bethe_subtrees(bonds)?;
    let tree_count = BigUint::from(trees.len());
    let nine_l = BigUint::from(9u32).pow(bonds as u32);

    let mut total = BigUint::zero();
    let mut counts_agree = true;
    let mut best: Option<(BigUint, &Vec<BetheNode>)> = None;
    for t in &trees {
        let forest = subtree_forest(t);
        let brute = BigUint::from(forest.count_linear_extensions(None)?);
        let hook = forest.growth_count()?;
        counts_agree &= brute == hook;
        total += &brute;
        if best.as_ref().map_or(true, |(n, _)| brute > *n) {
            best = Some((brute, t));
        }
    }
    let (maximizer_n, maximizer) = best.expect("at least one subtree");

    let average = Fraction::new(growth.clone(), tree_count.clone());
    let paper_bound = Fraction::new(factorial(bonds as u64 + 2), BigUint::from(2u32) * &nine_l);
    let factorial_bound = Fraction::new(factorial(bonds as u64), nine_l);
    let partition_holds = total == growth;
    let closed_form_holds = growth == bethe_growth_closed_form(bonds);
    let max_frac = Fraction::new(maximizer_n.clone(), BigUint::one());
    let passed = partition_holds
        && counts_agree
        && closed_form_holds
        && average.at_least(&paper_bound)
        && average.exceeds(&factorial_bound)
        && max_frac.at_least(&average);
    Ok(BetheReport {
        bonds,
        growth_count: growth,
        tree_count,
        average_bound: average,
        paper_bound,
        factorial_bound,
        maximizer_address_list: maximizer.iter().map(|n| n.address().to_string()).collect(),
        maximizer_n,
        partition_holds,
        counts_agree,
        closed_form_holds,
        passed,
    })
}
