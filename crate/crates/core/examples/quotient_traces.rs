//! The quotient-graph machinery behind symmetric powers: path lifting and
//! the two trace formulas, verified exactly on concrete instances.
//!
//! Run with: `cargo run --example quotient_traces`

use wlspectra::generators::{cycle, petersen};
use wlspectra::powers::{quotient, restricted_power, sym_action_on_restricted, sym_power};
use wlspectra::spectra::{verify_path_lifting, verify_quotient_trace, verify_sym_trace};

fn main() {
    for (name, g, k, r_max) in [
        ("cycle(4)", cycle(4), 2usize, 10usize),
        ("petersen", petersen(), 2, 12),
        ("petersen", petersen(), 3, 12),
    ] {
        let restricted = restricted_power(&g, k).unwrap();
        let action = sym_action_on_restricted(&g, k).unwrap();
        let q = quotient(&restricted, &action).unwrap();
        let sym = sym_power(&g, k).unwrap();

        println!("{name}, k = {k}:");
        println!(
            "  restricted power: {} vertices; orbits of the coordinate action: {} (size {})",
            restricted.vertex_count(),
            action.orbit_count(),
            action.orbit_size(0),
        );
        println!(
            "  quotient simply laced: {}; equals the symmetric power: {}",
            q.is_simply_laced(),
            q.quotient() == Some(&sym)
        );

        let lifting = verify_path_lifting(&q, r_max.min(8)).unwrap();
        println!(
            "  path lifting |U| * A^r(U,W) = sum over orbit pairs, r <= {}: {}",
            r_max.min(8),
            if lifting.all_equal { "exact" } else { "FAILED" }
        );

        let traces = verify_quotient_trace(&q, r_max).unwrap();
        println!(
            "  quotient trace formula, r <= {r_max}: {}",
            if traces.all_equal { "exact" } else { "FAILED" }
        );

        let sym_traces = verify_sym_trace(&g, k, r_max).unwrap();
        println!(
            "  symmetric-power trace formula, r <= {r_max}: {}",
            if sym_traces.all_equal { "exact" } else { "FAILED" }
        );
        let last = sym_traces.rows.last().unwrap();
        println!(
            "  e.g. r = {}: both sides equal {}",
            last.r, last.lhs
        );
        println!();
    }
}
