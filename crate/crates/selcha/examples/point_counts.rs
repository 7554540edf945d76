//! Point enumeration over F_2 and F_4 and the three classes of rational
//! degree-2 divisors on a good curve.
//!
//! Run with: cargo run --example point_counts

use selcha::curves::{enumerate_points, sym2_classes, two_torsion_trivial, LongCurve};

fn main() {
    let good = LongCurve::from_monomials(4, &[(1, 1), (0, 1)]).unwrap();
    let bad = LongCurve::from_monomials(4, &[]).unwrap();

    for h in [&good, &bad] {
        let counts = enumerate_points(h);
        println!("{h}  (good: {})", h.is_good());
        println!("  #C(F_2) = {}", counts.n_f2);
        println!("  #C(F_4) = {}", counts.n_f4);
        for p in &counts.f4_points {
            println!("    {p}");
        }
        match sym2_classes(h) {
            Ok(rep) => {
                println!(
                    "  Sym^2 classes over F_2: {} (all x-fibers: {})",
                    rep.n_classes, rep.all_fibers
                );
                for class in &rep.classes {
                    println!(
                        "    {{{}, {}}} split: {} fiber: {}",
                        class.first, class.second, class.split, class.is_fiber
                    );
                }
                println!(
                    "  Jacobian 2-torsion trivial (irreducible squared model): {}",
                    two_torsion_trivial(h)
                );
            }
            Err(e) => println!("  Sym^2 analysis rejected: {e}"),
        }
        println!();
    }
}
