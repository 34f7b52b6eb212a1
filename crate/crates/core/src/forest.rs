//! Rooted forests of bonds, independent of any embedding.
//!
//! A bond's parent is the bond through which it is reached from the root; the
//! root-incident bonds are parentless. Growth orders are exactly the linear
//! extensions of this parent-before-child order, and the downstream weight of
//! a bond is its subtree size (the hook length of the poset).

use crate::bigcount::{factorial, product, BigCount};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BondForest {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// Parents before children.
    order: Vec<usize>,
}

impl BondForest {
    /// Builds the forest from a parent array.
    ///
    /// Panics if `parents` contains a cycle or an out-of-range index.
    pub fn from_parents(parents: Vec<Option<usize>>) -> Self {
        let n = parents.len();
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        for (i, p) in parents.iter().enumerate() {
            match p {
                Some(p) => children[*p].push(i),
                None => order.push(i),
            }
        }
        let mut head = 0;
        while head < order.len() {
            let b = order[head];
            order.extend_from_slice(&children[b]);
            head += 1;
        }
        assert_eq!(order.len(), n, "parent array contains a cycle");
        BondForest {
            parent: parents,
            children,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, bond: usize) -> Option<usize> {
        self.parent[bond]
    }

    pub fn children(&self, bond: usize) -> &[usize] {
        &self.children[bond]
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.parent[i].is_none())
    }

    /// `w(b) = 1 + Σ w(c)` over children, computed bottom-up in one pass.
    pub fn weights(&self) -> Vec<u64> {
        let mut w = vec![1u64; self.len()];
        for &b in self.order.iter().rev() {
            if let Some(p) = self.parent[b] {
                w[p] += w[b];
            }
        }
        w
    }

    /// `W = ∏ w(b)`.
    pub fn weight_product(&self) -> BigCount {
        product(self.weights())
    }

    /// `N = L!/W`, with the exactness of the division asserted.
    pub fn growth_count(&self) -> Result<BigCount> {
        let (q, r) = factorial(self.len() as u64).div_rem(&self.weight_product());
        if !r.is_zero() {
            return Err(Error::InternalNonDivisible);
        }
        Ok(q)
    }

    /// Counts linear extensions by exhaustive depth-first search.
    ///
    /// With a `cap`, the search stops with `CapExceeded` as soon as the count
    /// passes it.
    pub fn count_linear_extensions(&self, cap: Option<u64>) -> Result<u64> {
        let mut available: Vec<usize> = self.roots().collect();
        let mut count = 0u64;
        self.extend(&mut available, self.len(), &mut count, cap)?;
        Ok(count)
    }

    /// Lists linear extensions (each a sequence of bond indices); `cap` bounds
    /// how many may be produced.
    pub fn linear_extensions(&self, cap: u64) -> Result<Vec<Vec<usize>>> {
        let mut available: Vec<usize> = self.roots().collect();
        let mut count = 0u64;
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        self.extend_listing(&mut available, &mut prefix, &mut count, cap, &mut out)?;
        Ok(out)
    }

    fn extend(
        &self,
        available: &mut Vec<usize>,
        remaining: usize,
        count: &mut u64,
        cap: Option<u64>,
    ) -> Result<()> {
        if remaining == 0 {
            *count += 1;
            if let Some(cap) = cap {
                if *count > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
            return Ok(());
        }
        for i in 0..available.len() {
            let b = available.swap_remove(i);
            let before = available.len();
            available.extend_from_slice(&self.children[b]);
            let r = self.extend(available, remaining - 1, count, cap);
            available.truncate(before);
            available.push(b);
            let last = available.len() - 1;
            available.swap(i, last);
            r?;
        }
        Ok(())
    }

    fn extend_listing(
        &self,
        available: &mut Vec<usize>,
        prefix: &mut Vec<usize>,
        count: &mut u64,
        cap: u64,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if prefix.len() == self.len() {
            *count += 1;
            if *count > cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(prefix.clone());
            return Ok(());
        }
        for i in 0..available.len() {
            let b = available.swap_remove(i);
            let before = available.len();
            available.extend_from_slice(&self.children[b]);
            prefix.push(b);
            let r = self.extend_listing(available, prefix, count, cap, out);
            prefix.pop();
            available.truncate(before);
            available.push(b);
            let last = available.len() - 1;
            available.swap(i, last);
            r?;
        }
        Ok(())
    }
}
