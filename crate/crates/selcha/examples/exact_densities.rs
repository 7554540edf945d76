//! Exact dyadic densities: the goodness fraction, the weighted family
//! density, and the lower bound for the density of curves with certified
//! finiteness, compared against the round bound 2^-(4g^2+6g+7).
//!
//! Run with: cargo run --example exact_densities

use selcha::density::density_report;

fn main() {
    println!(
        "{:>3} {:>10} {:>12} {:>12} {:>12} {:>10}",
        "g", "goodness", "family", "delta_lb", "reference", "compare"
    );
    for genus in 2u32..=10 {
        let rep = density_report(genus);
        let compare = if rep.equals_reference {
            "equality"
        } else if rep.meets_reference {
            "above"
        } else {
            "below"
        };
        println!(
            "{:>3} {:>10} {:>12} {:>12} {:>12} {:>10}",
            genus,
            rep.goodness_fraction.pow2_string(),
            rep.family_density.pow2_string(),
            rep.delta_lower_bound.pow2_string(),
            rep.reference_bound.pow2_string(),
            compare
        );
    }

    let rep = density_report(4);
    println!("\ngenus 4 exact forms:");
    println!("  goodness fraction: {}", rep.goodness_fraction);
    println!("  family density:    {}", rep.family_density);
    println!("  delta lower bound: {}", rep.delta_lower_bound);
    println!(
        "  box scaling exponent (2g+1)(g+1) = {} (expanded check: {})",
        rep.scaling_exponent, rep.scaling_exponent_expanded
    );
}
