//! The certified image only depends on the curve 2-adically: perturbing
//! every coefficient by multiples of 2^(4g+2) leaves the image unchanged.
//!
//! Run with: cargo run --example local_constancy

use selcha::chabauty::assemble_image;
use selcha::curves::LongCurve;
use selcha::dyadic::DEFAULT_PRECISION;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = LongCurve::from_monomials(4, &[(1, 1), (0, 1)])?;
    let pow2 = 4 * h.genus() + 2;
    let deltas: [&[i64]; 3] = [
        &[3, -1, 2, 0, 0, 1, 0, 5, -2],
        &[0, 0, 0, 0, 0, 0, 0, 0, 1],
        &[-7, 4, -4, 9, 1, 1, 2, -3, 6],
    ];

    let base = assemble_image(&h, 16, DEFAULT_PRECISION)?;
    println!("{h}");
    println!("image: {:?}\n", base.bitstrings());

    for delta in deltas {
        let lift = h.perturb(delta, pow2)?;
        let image = assemble_image(&lift, 16, DEFAULT_PRECISION)?;
        println!("{lift}");
        println!(
            "  image: {:?}  unchanged: {}",
            image.bitstrings(),
            image.image == base.image
        );
    }
    Ok(())
}
