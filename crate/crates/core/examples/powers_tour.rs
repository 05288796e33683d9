//! Builds the three powers of a graph and prints their shapes.
//!
//! Run with: `cargo run --example powers_tour`

use wlspectra::generators::{complete, cycle, petersen};
use wlspectra::io::write_graph6;
use wlspectra::powers::{cartesian_product, kth_power, restricted_power, sym_power};

fn main() {
    let g = petersen();
    println!(
        "base: Petersen graph, {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );

    for k in [1usize, 2, 3] {
        let full = kth_power(&g, k).unwrap();
        let restricted = restricted_power(&g, k).unwrap();
        let symmetric = sym_power(&g, k).unwrap();
        println!("k = {k}:");
        println!(
            "  k-th power        {:>6} vertices {:>8} edges",
            full.vertex_count(),
            full.edge_count()
        );
        println!(
            "  restricted power  {:>6} vertices {:>8} edges",
            restricted.vertex_count(),
            restricted.edge_count()
        );
        println!(
            "  symmetric power   {:>6} vertices {:>8} edges   graph6: {}",
            symmetric.vertex_count(),
            symmetric.edge_count(),
            write_graph6(&symmetric).unwrap()
        );
    }

    // the square of an edge is a square
    let square = cartesian_product(&complete(2), &complete(2));
    println!(
        "\nK2 x K2 has degrees {:?}, like the 4-cycle {:?}",
        square.degrees(),
        cycle(4).degrees()
    );
}
