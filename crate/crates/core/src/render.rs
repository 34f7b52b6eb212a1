//! Graphviz DOT and SVG renderings of lattice trees.
//!
//! Both outputs are byte-deterministic: sites and bonds are emitted in their
//! canonical sorted order.

use crate::error::{Error, Result};
use crate::lattice::{RootedTree, Site};
use std::fmt::Write;

/// Grid spacing in pixels.
pub const SVG_UNIT: i64 = 10;
pub const SVG_STROKE: i64 = 2;
pub const SVG_MAX_BONDS: usize = 100_000;

pub fn node_name(s: Site) -> String {
    format!("{}_{}", s.x, s.y)
}

/// One node per site (named `x_y`), one undirected edge per bond, root drawn
/// as a double circle.
pub fn to_dot(tree: &RootedTree) -> String {
    let mut out = String::from("graph tree {\n  node [shape=point];\n");
    for s in tree.sites() {
        if s == tree.root() {
            writeln!(
                out,
                "  \"{}\" [shape=doublecircle, label=\"root\"];",
                node_name(s)
            )
            .unwrap();
        } else {
            writeln!(out, "  \"{}\";", node_name(s)).unwrap();
        }
    }
    for b in tree.bonds() {
        let (u, v) = b.endpoints();
        writeln!(out, "  \"{}\" -- \"{}\";", node_name(u), node_name(v)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Bonds as line segments on a 10px grid, root as a filled circle.
pub fn to_svg(tree: &RootedTree) -> Result<String> {
    if tree.len() > SVG_MAX_BONDS {
        return Err(Error::too_large(
            format!("{} bonds for SVG", tree.len()),
            SVG_MAX_BONDS,
        ));
    }
    let sites = tree.sites();
    let min_x = sites.iter().map(|s| s.x).min().unwrap();
    let max_x = sites.iter().map(|s| s.x).max().unwrap();
    let min_y = sites.iter().map(|s| s.y).min().unwrap();
    let max_y = sites.iter().map(|s| s.y).max().unwrap();
    let pad = SVG_UNIT;
    let width = (max_x - min_x) * SVG_UNIT + 2 * pad;
    let height = (max_y - min_y) * SVG_UNIT + 2 * pad;
    // svg y grows downwards
    let px = |s: Site| {
        (
            (s.x - min_x) * SVG_UNIT + pad,
            (max_y - s.y) * SVG_UNIT + pad,
        )
    };

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<g stroke=\"black\" stroke-width=\"{SVG_STROKE}\" stroke-linecap=\"round\">"
    )
    .unwrap();
    for b in tree.bonds() {
        let (u, v) = b.endpoints();
        let ((x1, y1), (x2, y2)) = (px(u), px(v));
        writeln!(
            out,
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>"
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    let (cx, cy) = px(tree.root());
    writeln!(
        out,
        "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"3\" fill=\"red\"/>"
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{comb_tree, path_tree};

    #[test]
    fn single_bond_svg() {
        let svg = to_svg(&path_tree(1).unwrap()).unwrap();
        assert_eq!(svg.matches("<line").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("<line x1=\"10\" y1=\"10\" x2=\"20\" y2=\"10\"/>"));
    }

    #[test]
    fn comb_dot() {
        let dot = to_dot(&comb_tree(4).unwrap());
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert!(dot.contains("\"0_0\" [shape=doublecircle"));
        assert!(dot.contains("\"1_0\" -- \"1_1\";"));
    }

    #[test]
    fn negative_coordinates_named() {
        assert_eq!(node_name(Site::new(-3, 4)), "-3_4");
    }
}
