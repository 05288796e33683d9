//! The two interchange formats: graph6 lines and `n m` edge-list text.
//!
//! Run with: `cargo run --example graph_formats`

use wlspectra::generators::{complete, petersen};
use wlspectra::io::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use wlspectra::powers::kth_power;

fn main() {
    let k2 = complete(2);
    println!("K2 as graph6:          {:?}", write_graph6(&k2).unwrap());
    println!("empty 3-vertex graph:  {:?}", write_graph6(&wlspectra::graph::Graph::empty(3)).unwrap());

    let g = petersen();
    let line = write_graph6(&g).unwrap();
    println!("Petersen:              {line:?}");
    assert_eq!(parse_graph6(&line).unwrap(), g);

    let text = write_edge_list(&g);
    println!("\nPetersen as edge list:\n{text}");
    assert_eq!(parse_edge_list(&text).unwrap(), g);

    // orders above 62 switch to the long graph6 header
    let big = kth_power(&g, 2).unwrap();
    let line = write_graph6(&big).unwrap();
    println!(
        "Petersen squared has {} vertices; graph6 starts with {:?} and is {} bytes",
        big.vertex_count(),
        &line[..4],
        line.len()
    );
    assert_eq!(parse_graph6(&line).unwrap(), big);
}
