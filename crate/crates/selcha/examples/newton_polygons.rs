//! Newton polygons of squared models: completing the square turns a good
//! curve into y^2 = f with constant term of valuation -2, and the polygon
//! certifies f irreducible over the 2-adic field.
//!
//! Run with: cargo run --example newton_polygons

use selcha::curves::LongCurve;

fn main() {
    let h = LongCurve::from_monomials(4, &[(1, 1), (0, 1)]).unwrap();
    let f = h.complete_square();
    println!("{h}");
    println!("squared model: {f}");
    let poly = f.newton_polygon();
    println!("  vertices: {:?}", poly.vertices);
    println!("  single segment: {}", poly.single_segment);
    println!("  certifies irreducible: {}", poly.certifies_irreducible);

    // integral member of the scaled family, same polygon shape after
    // renormalising, reported with its weighted height
    let family = h.scale_to_family();
    println!("\nscaled family member: {family}");
    println!("  weighted height: {:.3}", family.height());

    // a deep 2-adic perturbation keeps the polygon
    let lift = h
        .perturb(&[3, -1, 2, 0, 0, 1, 0, 5, -2], 10)
        .expect("perturbation stays good");
    let poly2 = lift.complete_square().newton_polygon();
    println!("\nperturbed lift: {lift}");
    println!("  vertices: {:?}", poly2.vertices);
    println!("  certifies irreducible: {}", poly2.certifies_irreducible);
}
