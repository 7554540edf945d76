//! Exhaustive sweep of the goodness predicate over coefficient parities.
//!
//! Run with: cargo run --example goodness_sweep

use selcha::curves::LongCurve;

fn main() {
    println!("goodness fraction by genus, exhaustive over mod-2 patterns");
    for genus in 2u32..=6 {
        let deg = 2 * genus + 1;
        let total = 1u64 << deg;
        let mut good = 0u64;
        for bits in 0..total {
            let coeffs: Vec<i64> = (0..deg).map(|i| (bits >> i & 1) as i64).collect();
            let h = LongCurve::from_i64(genus, &coeffs).expect("valid coefficients");
            if h.is_good() {
                good += 1;
            }
        }
        println!("  g = {genus}: {good} / {total} = 1/{}", total / good);
    }

    let h = LongCurve::from_monomials(4, &[(1, 1), (0, 1)]).unwrap();
    let report = h.goodness();
    println!("\nwitness report for {h}");
    println!("  exponents of h mod 2:      {:?}", report.support);
    println!("  multiples of 3 among them: {:?}", report.class0);
    println!("  the rest:                  {:?}", report.class12);
    println!("  constant odd:              {}", report.constant_odd);
    println!("  #multiples-of-3 even:      {}", report.class0_even);
    println!("  #others odd:               {}", report.class12_odd);
    println!("  good:                      {}", report.good);
}
