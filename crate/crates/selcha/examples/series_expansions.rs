//! Disk coordinate expansions: the chart at infinity with its normalized
//! differential basis, the quadratic pair disk, and the basis change
//! between the two differential bases.
//!
//! Run with: cargo run --example series_expansions

use selcha::curves::LongCurve;
use selcha::dyadic::DEFAULT_PRECISION;
use selcha::series::{basis_change_matrix, infinity_chart, pair_disk};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = LongCurve::from_monomials(4, &[(1, 1), (0, 1)])?;
    let trunc = 17;
    println!("{h}");

    let chart = infinity_chart(&h, trunc, DEFAULT_PRECISION)?;
    println!("\nchart at infinity, s as a series in the uniformizer t:");
    for (k, c) in chart.s.coeffs().iter().enumerate() {
        if !c.is_exact_zero() {
            println!("  t^{k}: {c}");
        }
    }
    println!("normalizer divided out of omega: {}", chart.normalizer);
    for (j, w) in chart.omega.iter().enumerate() {
        println!(
            "omega_{} / dt leading order {:?}, first visible coefficient {}",
            j + 1,
            w.leading_order(),
            w.coeffs()[w.leading_order().unwrap()]
        );
    }

    let disk = pair_disk(&h, trunc, DEFAULT_PRECISION)?;
    println!(
        "\npair disk at x = 0, branch constant gamma = {}",
        disk.gamma
    );
    let eta1 = &disk.eta_hat[0];
    println!(
        "eta_1 normalized: constant {}, next {}",
        eta1.coeffs()[0],
        eta1.coeffs()[1]
    );

    let change = basis_change_matrix(&h, trunc, DEFAULT_PRECISION)?;
    println!("\nbasis change (omega coordinates = A * eta coordinates), mod 2:");
    for row in change.mod2.bitstrings() {
        println!("  {row}");
    }
    println!("determinant odd: {}", change.det_odd);
    Ok(())
}
