//! Classifies a few graphs as unavoidable, avoidable or inconclusive.
//!
//! cargo run --example classify

use tourlab::analysis::classify_unavoidability;
use tourlab::base::{Digraph, FiniteOrientedGraph, PresentedGraph};

fn main() -> tourlab::Result<()> {
    let triangle = FiniteOrientedGraph::new(3, [(0, 1), (1, 2), (2, 0)])?;
    let star = FiniteOrientedGraph::new(4, [(0, 1), (0, 2), (0, 3)])?;
    let graphs: Vec<(&str, Box<dyn Digraph>)> = vec![
        ("directed triangle", Box::new(triangle)),
        ("out-star", Box::new(star)),
        ("anti-directed path", Box::new(PresentedGraph::anti_directed_path())),
        ("forward path", Box::new(PresentedGraph::forward_path())),
        ("certified forward path", Box::new(PresentedGraph::certified_forward_path())),
    ];
    for (name, g) in &graphs {
        println!("{name:24} {:?}", classify_unavoidability(g.as_ref(), 100));
    }
    Ok(())
}
