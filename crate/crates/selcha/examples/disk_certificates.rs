//! Valuation certificates for the logarithm on each residue disk, and the
//! assembled mod-2 image of the projectivised logarithm.
//!
//! Run with: cargo run --example disk_certificates

use selcha::chabauty::{assemble_image, recheck_image, DiskCertificate};
use selcha::curves::LongCurve;
use selcha::dyadic::DEFAULT_PRECISION;

fn describe(cert: &DiskCertificate) {
    println!("disk {}:", cert.disk);
    println!("  per-index valuation floor: {}", cert.floor);
    println!("  explicit terms audited: {}", cert.terms.len());
    println!("  surviving (component, index): {:?}", cert.surviving);
    println!(
        "  tail from index {}: base inequality {}, monotone {}",
        cert.tail.threshold, cert.tail.base_inequality, cert.tail.monotone
    );
    for w in &cert.witnesses {
        println!(
            "  witness {} -> residues {} -> {}",
            w.description, w.residues, w.point
        );
    }
    let image: Vec<String> = cert.image.iter().map(ToString::to_string).collect();
    println!("  disk image: {}", image.join(", "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = LongCurve::from_monomials(4, &[(1, 1), (0, 1)])?;
    println!("{h}\n");
    let trunc = 16;
    let ri = assemble_image(&h, trunc, DEFAULT_PRECISION)?;
    describe(&ri.infinity);
    println!();
    describe(&ri.zero_pair);
    println!();
    describe(&ri.one_pair);

    println!("\nassembled image (bitstrings of projective points):");
    for s in ri.bitstrings() {
        println!("  {s}");
    }
    println!("cardinality: {}", ri.image.len());
    println!(
        "independent recheck from logged numbers: {}",
        recheck_image(&ri)
    );
    Ok(())
}
