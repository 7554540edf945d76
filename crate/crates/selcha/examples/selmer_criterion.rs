//! The finiteness criterion: Selmer images must be independent and their
//! span must avoid the certified logarithm image.
//!
//! Run with: cargo run --example selmer_criterion

use selcha::chabauty::{assemble_image, criterion, parse_selmer};
use selcha::curves::{two_torsion_trivial, LongCurve};
use selcha::dyadic::DEFAULT_PRECISION;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = LongCurve::from_monomials(4, &[(1, 1), (0, 1)])?;
    let image = assemble_image(&h, 16, DEFAULT_PRECISION)?.image_set();
    let torsion_ok = two_torsion_trivial(&h);
    println!("{h}");
    println!("certified image cardinality: {}", image.cardinality());

    let inputs = [
        ("rank 0 (vacuous)", "4 0\n"),
        ("independent, disjoint", "4 2\n0110\n0010\n"),
        ("dependent rows", "4 2\n0110\n0110\n"),
        ("span meets the image", "4 2\n0110\n0101\n"),
    ];
    for (label, text) in inputs {
        let selmer = parse_selmer(text)?;
        let verdict = criterion(&image, &selmer, torsion_ok)?;
        println!("\n{label}: rank {}", verdict.selmer_rank);
        println!("  injective: {}", verdict.sigma_injective);
        println!("  disjoint:  {}", verdict.disjoint);
        if let Some(p) = &verdict.overlap_witness {
            println!("  overlap witness: {p}");
        }
        println!("  satisfied: {}", verdict.satisfied);
    }
    Ok(())
}
