//! Sites, bonds and validated rooted trees on the square lattice.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

/// A site of the square lattice. Ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Site {
    pub x: i64,
    pub y: i64,
}

impl Site {
    pub const ORIGIN: Site = Site { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Site { x, y }
    }

    pub fn neighbours(self) -> [Site; 4] {
        [
            Site::new(self.x + 1, self.y),
            Site::new(self.x, self.y + 1),
            Site::new(self.x - 1, self.y),
            Site::new(self.x, self.y - 1),
        ]
    }

    fn tuple(self) -> (i64, i64) {
        (self.x, self.y)
    }
}

impl From<[i64; 2]> for Site {
    fn from([x, y]: [i64; 2]) -> Self {
        Site { x, y }
    }
}

impl From<Site> for [i64; 2] {
    fn from(s: Site) -> Self {
        [s.x, s.y]
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// An unordered nearest-neighbour pair, stored smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "[Site; 2]")]
pub struct Bond {
    lo: Site,
    hi: Site,
}

impl Bond {
    pub fn new(u: Site, v: Site) -> Result<Self> {
        let d = (u.x - v.x).abs() + (u.y - v.y).abs();
        if d != 1 {
            return Err(Error::NotUnitBond(u.tuple(), v.tuple()));
        }
        Ok(if u < v {
            Bond { lo: u, hi: v }
        } else {
            Bond { lo: v, hi: u }
        })
    }

    pub fn endpoints(&self) -> (Site, Site) {
        (self.lo, self.hi)
    }

    pub fn touches(&self, s: Site) -> bool {
        self.lo == s || self.hi == s
    }

    /// The endpoint that is not `s`.
    pub fn other(&self, s: Site) -> Site {
        if self.lo == s {
            self.hi
        } else {
            self.lo
        }
    }
}

impl From<Bond> for [Site; 2] {
    fn from(b: Bond) -> Self {
        [b.lo, b.hi]
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}-{}]", self.lo, self.hi)
    }
}

/// A connected, loop-free set of bonds with a distinguished root site.
///
/// Bonds are kept sorted, so two trees with the same root and bond set are
/// identical and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: Site,
    bonds: Vec<Bond>,
}

#[derive(Serialize)]
struct TreeJson<'a> {
    root: Site,
    bonds: &'a [Bond],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTree {
    root: Site,
    bonds: Vec<[Site; 2]>,
}

impl RootedTree {
    pub fn root(&self) -> Site {
        self.root
    }

    /// Bonds in canonical (sorted) order.
    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    /// Number of bonds `L`.
    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    pub fn index_of(&self, bond: &Bond) -> Option<usize> {
        self.bonds.binary_search(bond).ok()
    }

    pub fn sites(&self) -> Vec<Site> {
        let mut s: Vec<Site> = self.bonds.iter().flat_map(|b| [b.lo, b.hi]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Canonical JSON: `{"root":[x,y],"bonds":[[[x1,y1],[x2,y2]],...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TreeJson {
            root: self.root,
            bonds: &self.bonds,
        })
        .expect("tree serialization is infallible")
    }

    /// Parses and validates tree JSON. Malformed JSON is reported as
    /// `InvalidParameter`; structural problems as the matching validation error.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawTree =
            serde_json::from_str(text).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let bonds = raw
            .bonds
            .into_iter()
            .map(|[u, v]| Bond::new(u, v))
            .collect::<Result<Vec<_>>>()?;
        validate_tree(raw.root, bonds)
    }
}

/// Validates a bond set rooted at `root`.
///
/// Checks, in order: non-empty, no duplicates, root incidence, connectivity
/// from the root, and `#sites = L + 1`.
pub fn validate_tree(root: Site, bonds: impl IntoIterator<Item = Bond>) -> Result<RootedTree> {
    let mut bonds: Vec<Bond> = bonds.into_iter().collect();
    if bonds.is_empty() {
        return Err(Error::EmptyTree);
    }
    bonds.sort_unstable();
    if let Some(w) = bonds.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateBond(w[0].to_string()));
    }
    if !bonds.iter().any(|b| b.touches(root)) {
        return Err(Error::RootDetached(root.tuple()));
    }

    let mut incident: HashMap<Site, Vec<usize>> = HashMap::with_capacity(bonds.len() + 1);
    for (i, b) in bonds.iter().enumerate() {
        incident.entry(b.lo).or_default().push(i);
        incident.entry(b.hi).or_default().push(i);
    }
    let mut seen = vec![false; bonds.len()];
    let mut reached = 0usize;
    let mut queue = VecDeque::from([root]);
    let mut visited_sites = HashSet::from([root]);
    while let Some(s) = queue.pop_front() {
        for &i in &incident[&s] {
            if !seen[i] {
                seen[i] = true;
                reached += 1;
                let t = bonds[i].other(s);
                if visited_sites.insert(t) {
                    queue.push_back(t);
                }
            }
        }
    }
    if reached < bonds.len() {
        return Err(Error::NotConnected {
            unreachable: bonds.len() - reached,
        });
    }
    if incident.len() != bonds.len() + 1 {
        return Err(Error::HasCycle {
            sites: incident.len(),
            bonds: bonds.len(),
        });
    }
    Ok(RootedTree { root, bonds })
}

/// Shorthand for building a bond from coordinate pairs; panics on a non-unit pair.
pub fn bond(a: (i64, i64), b: (i64, i64)) -> Bond {
    Bond::new(Site::new(a.0, a.1), Site::new(b.0, b.1)).expect("unit bond")
}
