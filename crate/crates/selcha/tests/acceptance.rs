//! End-to-end acceptance checks, one printed PASS/FAIL line per guarantee.
//! Run with: cargo test -p selcha --test acceptance

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selcha::chabauty::{
    assemble_image, certify_disk_infinity, certify_disk_pair, criterion, recheck_certificate,
    recheck_image, DiskCertificate, DiskId, ImageSet, SelmerInput,
};
use selcha::curves::{enumerate_points, LongCurve, PointF4};
use selcha::density::{
    delta_lower_bound, density_report, family_density, goodness_fraction, reference_bound,
    DyadicRational,
};
use selcha::dyadic::{hensel_artin_schreier, Dyadic, QuadDyadic, Val, DEFAULT_PRECISION};
use selcha::modp::{projectivize, F2Vec, MatF2, ProjPtF2};
use selcha::montecarlo::{pass_floor, run_trials, SimConfig};
use selcha::series::{expand_s_of_t, infinity_chart, SeriesCoeff, TruncSeries};

type Check = fn() -> Result<(), String>;

fn main() {
    let checks: [(&str, Check); 10] = [
        (
            "good parity patterns have measure 1/8",
            good_patterns_have_measure_one_eighth,
        ),
        (
            "mod-2 points of good curves sit over x in F2",
            good_curves_have_five_small_points,
        ),
        (
            "squared models are 2-adically irreducible",
            squared_models_are_irreducible,
        ),
        (
            "expansions at infinity have the pinned shape",
            infinity_expansions_have_pinned_shape,
        ),
        (
            "disk certificates audit and recheck",
            disk_certificates_audit_and_recheck,
        ),
        (
            "certified image is locally constant",
            certified_image_is_locally_constant,
        ),
        (
            "density formulas are exact powers of two",
            density_formulas_are_exact,
        ),
        (
            "criterion matches brute-force enumeration",
            criterion_matches_brute_force,
        ),
        (
            "sampled pass rate clears the model floor",
            sampled_pass_rate_clears_floor,
        ),
        (
            "quadratic solver and ring arithmetic hold",
            solver_and_ring_arithmetic_hold,
        ),
    ];
    let mut failures = 0usize;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(*check);
        let label = format!("ACCEPTANCE {} ({name})", i + 1);
        match outcome {
            Ok(Ok(())) => println!("{label}: PASS ({:.2?})", start.elapsed()),
            Ok(Err(msg)) => {
                failures += 1;
                println!("{label}: FAIL: {msg}");
            }
            Err(_) => {
                failures += 1;
                println!("{label}: FAIL: panicked");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance check(s) failed");
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Curve with 0/1 coefficients read off the low bits, constant term first.
fn parity_curve(genus: u32, bits: u64) -> LongCurve {
    let deg = 2 * genus + 1;
    let coeffs: Vec<i64> = (0..deg).map(|i| ((bits >> i) & 1) as i64).collect();
    LongCurve::from_i64(genus, &coeffs).expect("coefficient count matches")
}

/// Random integral curve with good parities: each coefficient is a random
/// parity plus an even offset up to 2 * spread.
fn random_good_lift(rng: &mut ChaCha8Rng, genus: u32, spread: i64) -> LongCurve {
    let deg = 2 * genus + 1;
    loop {
        let coeffs: Vec<i64> = (0..deg)
            .map(|_| rng.gen_range(0..2i64) + 2 * rng.gen_range(-spread..=spread))
            .collect();
        let h = LongCurve::from_i64(genus, &coeffs).expect("coefficient count matches");
        if h.is_good() {
            return h;
        }
    }
}

/// Shared sample: 25 good random lifts each of genus 4 and genus 5.
fn sample_curves() -> Vec<LongCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut out = Vec::with_capacity(50);
    for genus in [4u32, 5] {
        for _ in 0..25 {
            out.push(random_good_lift(&mut rng, genus, 1 << 16));
        }
    }
    out
}

fn good_patterns_have_measure_one_eighth() -> Result<(), String> {
    let eighth = DyadicRational::two_pow_neg(3);
    for genus in 2u32..=6 {
        ensure(
            goodness_fraction(genus) == eighth,
            format!("parity-walk fraction differs from 1/8 at genus {genus}"),
        )?;
        let total: u64 = 1 << (2 * genus + 1);
        let good = (0..total)
            .filter(|&bits| parity_curve(genus, bits).is_good())
            .count() as u64;
        ensure(
            good * 8 == total,
            format!("exhaustive count at genus {genus}: {good} good of {total}"),
        )?;
    }
    Ok(())
}

fn good_curves_have_five_small_points() -> Result<(), String> {
    for genus in 2u32..=6 {
        let total: u64 = 1 << (2 * genus + 1);
        let mut seen = 0u64;
        for bits in 0..total {
            let curve = parity_curve(genus, bits);
            if !curve.is_good() {
                continue;
            }
            seen += 1;
            let counts = enumerate_points(&curve);
            ensure(
                counts.n_f2 == 1,
                format!("genus {genus} pattern {bits:b}: {} F2 points", counts.n_f2),
            )?;
            ensure(
                counts.n_f4 == 5,
                format!("genus {genus} pattern {bits:b}: {} F4 points", counts.n_f4),
            )?;
            for p in &counts.f4_points {
                if let PointF4::Affine { x, .. } = p {
                    ensure(
                        x.is_in_f2(),
                        format!("genus {genus} pattern {bits:b}: point over x outside F2"),
                    )?;
                }
            }
        }
        ensure(
            seen * 8 == total,
            format!("good-pattern count at genus {genus}"),
        )?;
    }
    Ok(())
}

fn squared_models_are_irreducible() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for trial in 0..100 {
        let h = random_good_lift(&mut rng, 4, 1 << 20);
        let poly = h.complete_square().newton_polygon();
        ensure(
            poly.vertices == vec![(0, -2), (9, 0)],
            format!("trial {trial}: hull vertices {:?}", poly.vertices),
        )?;
        ensure(
            poly.single_segment,
            format!("trial {trial}: hull is not one segment"),
        )?;
        ensure(
            poly.certifies_irreducible,
            format!("trial {trial}: hull fails to certify"),
        )?;
    }
    Ok(())
}

fn infinity_expansions_have_pinned_shape() -> Result<(), String> {
    let prec = DEFAULT_PRECISION;
    let trunc = 17usize;
    let one = Dyadic::one(prec);
    for (k, h) in sample_curves().iter().enumerate() {
        let g = h.genus();
        let deg = h.degree();
        let s = expand_s_of_t(h, trunc, prec).map_err(|e| format!("curve {k}: {e}"))?;
        ensure(
            !s.coeff(0).is_visibly_nonzero(),
            format!("curve {k}: constant term"),
        )?;
        ensure(
            !s.coeff(1).is_visibly_nonzero(),
            format!("curve {k}: linear term"),
        )?;
        ensure(
            s.coeff(2).valuation() == Val::Finite(0),
            format!("curve {k}: order-2 coefficient is not a unit"),
        )?;
        ensure(
            matches!(s.coeff(3).residue2(), Ok(0)),
            format!("curve {k}: order-3 coefficient is odd"),
        )?;

        // independent residual of t^2 + s^(g+1) t = sum_i c_i s^(i+1),
        // c_i the coefficient of x^(2g+1-i)
        let t = TruncSeries::monomial(1, one.clone(), trunc);
        let t_sq = TruncSeries::monomial(2, one.clone(), trunc);
        let mut rhs: TruncSeries<Dyadic> = TruncSeries::zeros(trunc);
        let mut s_pow = s.clone();
        for i in 0..=deg {
            let c_i = Dyadic::from_bigint(&h.coeff(deg - i), prec);
            rhs = rhs.add(&s_pow.scale(&c_i));
            s_pow = s_pow.mul(&s);
        }
        let lhs = t_sq.add(&s.pow(g + 1).mul(&t));
        let residual = lhs.sub(&rhs);
        ensure(
            residual.leading_order().is_none(),
            format!(
                "curve {k}: equation residual at order {:?}",
                residual.leading_order()
            ),
        )?;

        let chart = infinity_chart(h, trunc, prec).map_err(|e| format!("curve {k}: {e}"))?;
        ensure(
            !chart.normalizer.sub(&one.neg()).is_visibly_nonzero(),
            format!("curve {k}: normalizer differs from -1"),
        )?;
        for (j, w) in chart.omega.iter().enumerate() {
            let lead = 2 * j;
            ensure(
                w.leading_order() == Some(lead),
                format!("curve {k}: form {} leads at {:?}", j + 1, w.leading_order()),
            )?;
            ensure(
                w.coeff(lead).valuation() == Val::Finite(0),
                format!(
                    "curve {k}: form {} leading coefficient is not a unit",
                    j + 1
                ),
            )?;
            ensure(
                matches!(w.coeff(lead + 1).residue2(), Ok(0)),
                format!("curve {k}: form {} next coefficient is odd", j + 1),
            )?;
        }
        ensure(
            !chart.omega[0].coeff(0).sub(&one).is_visibly_nonzero(),
            format!("curve {k}: first form is not normalized to 1"),
        )?;
    }
    Ok(())
}

/// Point with ones exactly at the given coordinates.
fn unit_point(genus: u32, ones: &[u32]) -> Result<ProjPtF2, String> {
    let mut v = F2Vec::basis(genus, ones[0]).map_err(|e| e.to_string())?;
    for &i in &ones[1..] {
        v = v.xor(&F2Vec::basis(genus, i).map_err(|e| e.to_string())?);
    }
    projectivize(&v).map_err(|e| e.to_string())
}

fn audit_terms_positive(cert: &DiskCertificate, k: usize) -> Result<(), String> {
    for term in &cert.terms {
        if term.surviving || term.exact_zero {
            continue;
        }
        let net = term.net.ok_or_else(|| {
            format!(
                "curve {k}: unresolved bound at ({}, {}) in the {} disk",
                term.component, term.index, cert.disk
            )
        })?;
        ensure(
            net.halves() > 0,
            format!(
                "curve {k}: nonpositive bound at ({}, {}) in the {} disk",
                term.component, term.index, cert.disk
            ),
        )?;
    }
    ensure(
        cert.tail.base_inequality && cert.tail.monotone && cert.tail.holds,
        format!("curve {k}: tail verdict in the {} disk", cert.disk),
    )
}

fn disk_certificates_audit_and_recheck() -> Result<(), String> {
    let prec = DEFAULT_PRECISION;
    let trunc = 16usize;
    for (k, h) in sample_curves().iter().enumerate() {
        let g = h.genus();
        let e1 = unit_point(g, &[0])?;
        let e12 = unit_point(g, &[0, 1])?;

        let inf = certify_disk_infinity(h, trunc, prec).map_err(|e| format!("curve {k}: {e}"))?;
        ensure(
            inf.image == vec![e1],
            format!("curve {k}: image in the infinity disk"),
        )?;
        audit_terms_positive(&inf, k)?;
        ensure(
            recheck_certificate(&inf),
            format!("curve {k}: infinity recheck"),
        )?;

        for disk in [DiskId::ZeroPair, DiskId::OnePair] {
            let cert =
                certify_disk_pair(h, disk, trunc, prec).map_err(|e| format!("curve {k}: {e}"))?;
            ensure(
                cert.image == vec![e1, e12],
                format!("curve {k}: image in the {disk} disk"),
            )?;
            audit_terms_positive(&cert, k)?;
            ensure(
                recheck_certificate(&cert),
                format!("curve {k}: {disk} recheck"),
            )?;
        }

        let assembled = assemble_image(h, trunc, prec).map_err(|e| format!("curve {k}: {e}"))?;
        ensure(
            assembled.image.len() <= 5,
            format!("curve {k}: assembled cardinality {}", assembled.image.len()),
        )?;
        ensure(
            recheck_image(&assembled),
            format!("curve {k}: assembly recheck"),
        )?;
    }
    Ok(())
}

fn certified_image_is_locally_constant() -> Result<(), String> {
    let prec = DEFAULT_PRECISION;
    let trunc = 16usize;
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for pair in 0..10 {
        let h = random_good_lift(&mut rng, 4, 1 << 10);
        let delta: Vec<i64> = (0..9).map(|_| rng.gen_range(-64..=64)).collect();
        let shifted = h
            .perturb(&delta, 18)
            .map_err(|e| format!("pair {pair}: {e}"))?;
        ensure(
            shifted.is_good(),
            format!("pair {pair}: perturbation changed parities"),
        )?;
        let before = assemble_image(&h, trunc, prec).map_err(|e| format!("pair {pair}: {e}"))?;
        let after =
            assemble_image(&shifted, trunc, prec).map_err(|e| format!("pair {pair}: {e}"))?;
        ensure(
            before.image == after.image,
            format!("pair {pair}: image moved under a multiple of 2^18"),
        )?;
    }
    Ok(())
}

fn density_formulas_are_exact() -> Result<(), String> {
    for genus in 2u32..=10 {
        let expected = DyadicRational::two_pow_neg(4 * genus * genus + 6 * genus + 5);
        ensure(
            family_density(genus) == expected,
            format!("family density at genus {genus}"),
        )?;
        let report = density_report(genus);
        ensure(
            report.scaling_exponent == (2 * genus + 1) * (genus + 1)
                && report.scaling_exponent_consistent,
            format!("box scaling exponent at genus {genus}"),
        )?;
    }
    ensure(
        delta_lower_bound(4) == DyadicRational::two_pow_neg(95),
        "lower bound at genus 4",
    )?;
    ensure(
        reference_bound(4) == DyadicRational::two_pow_neg(95),
        "round reference at genus 4",
    )?;
    ensure(
        density_report(4).equals_reference,
        "equality with the reference at genus 4",
    )?;
    for genus in 2u32..=3 {
        let report = density_report(genus);
        ensure(
            delta_lower_bound(genus) <= DyadicRational::zero() && !report.bound_is_positive,
            format!("vacuous bound at genus {genus}"),
        )?;
    }
    for genus in 5u32..=10 {
        let report = density_report(genus);
        ensure(
            report.bound_is_positive && report.meets_reference && !report.equals_reference,
            format!("reference comparison at genus {genus}"),
        )?;
    }
    Ok(())
}

fn frozen_image() -> Result<ImageSet, String> {
    ImageSet::from_bitstrings(4, &["1000", "0001", "0011", "1111", "0101"])
        .map_err(|e| e.to_string())
}

fn criterion_matches_brute_force() -> Result<(), String> {
    let image = frozen_image()?;
    let mut cases = 0u64;
    for rank in 0u32..=3 {
        for code in 0..15u64.pow(rank) {
            let mut rows = Vec::with_capacity(rank as usize);
            let mut c = code;
            for _ in 0..rank {
                rows.push(1 + c % 15);
                c /= 15;
            }
            let vecs: Vec<F2Vec> = rows
                .iter()
                .map(|&b| F2Vec::from_bits(4, b).expect("four bits"))
                .collect();
            let basis = if rank == 0 {
                MatF2::empty(4)
            } else {
                MatF2::from_rows(&vecs)
            }
            .map_err(|e| e.to_string())?;
            let selmer = SelmerInput {
                genus: 4,
                rank,
                basis,
            };
            let verdict = criterion(&image, &selmer, true).map_err(|e| e.to_string())?;

            let mut injective = true;
            let mut disjoint = true;
            for mask in 1u64..(1 << rank) {
                let sum = rows
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .fold(0u64, |acc, (_, &b)| acc ^ b);
                if sum == 0 {
                    injective = false;
                    continue;
                }
                let p = projectivize(&F2Vec::from_bits(4, sum).expect("four bits"))
                    .expect("nonzero vector");
                if image.points.contains(&p) {
                    disjoint = false;
                }
            }
            ensure(
                verdict.sigma_injective == injective,
                format!("independence flag differs for rows {rows:?}"),
            )?;
            ensure(
                verdict.disjoint == disjoint,
                format!("disjointness flag differs for rows {rows:?}"),
            )?;
            ensure(
                verdict.torsion_ok && verdict.satisfied == (injective && disjoint),
                format!("verdict differs for rows {rows:?}"),
            )?;
            ensure(
                verdict.disjoint == verdict.overlap_witness.is_none(),
                format!("witness presence differs for rows {rows:?}"),
            )?;
            cases += 1;
        }
    }
    ensure(cases == 1 + 15 + 225 + 3375, format!("case count {cases}"))
}

fn sampled_pass_rate_clears_floor() -> Result<(), String> {
    let image = frozen_image()?;
    let floor = pass_floor(4, image.cardinality());
    ensure(
        floor == DyadicRational::two_pow_neg(2),
        format!("floor {floor} for a five-point image"),
    )?;
    let cfg = SimConfig {
        genus: 4,
        trials: 100_000,
        seed: Some(20_260_814),
    };
    let report = run_trials(&cfg, &image).map_err(|e| e.to_string())?;
    ensure(report.passes <= report.trials, "pass count exceeds trials")?;
    let p = floor.approx_f64();
    let allowance = 3.0 * (p * (1.0 - p) / report.trials as f64).sqrt();
    ensure(
        report.proportion >= p - allowance,
        format!(
            "proportion {:.5} under {:.5}",
            report.proportion,
            p - allowance
        ),
    )
}

fn solver_and_ring_arithmetic_hold() -> Result<(), String> {
    let prec = DEFAULT_PRECISION;
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut checks = 0u64;

    for _ in 0..2_500 {
        let c_odd = Dyadic::from_i64((rng.gen::<i32>() as i64) | 1, prec);
        let root = hensel_artin_schreier(&c_odd, prec).map_err(|e| e.to_string())?;
        ensure(
            matches!(root.a.residue2(), Ok(0)) && matches!(root.b.residue2(), Ok(1)),
            format!("odd branch residues for {c_odd}"),
        )?;
        let res = root
            .mul(&root)
            .add(&root)
            .sub(&QuadDyadic::from_dyadic(c_odd));
        ensure(
            res.val_lower_bound() >= prec as i64,
            format!("odd-branch residual valuation {}", res.val_lower_bound()),
        )?;
        checks += 1;

        let c_even = Dyadic::from_i64((rng.gen::<i32>() as i64) & !1, prec);
        let root = hensel_artin_schreier(&c_even, prec).map_err(|e| e.to_string())?;
        ensure(
            !root.b.is_visibly_nonzero(),
            "even branch left the base ring",
        )?;
        let res = root
            .mul(&root)
            .add(&root)
            .sub(&QuadDyadic::from_dyadic(c_even));
        ensure(
            res.val_lower_bound() >= prec as i64,
            format!("even-branch residual valuation {}", res.val_lower_bound()),
        )?;
        checks += 1;
    }

    fn rand_dyadic(rng: &mut ChaCha8Rng, prec: u32) -> Dyadic {
        Dyadic::from_i64(rng.gen::<i32>() as i64, prec).mul_pow2(rng.gen_range(-3..=3))
    }

    for _ in 0..750 {
        let a = rand_dyadic(&mut rng, prec);
        let b = rand_dyadic(&mut rng, prec);
        let c = rand_dyadic(&mut rng, prec);
        let assoc = a.add(&b).add(&c).sub(&a.add(&b.add(&c)));
        ensure(!assoc.is_visibly_nonzero(), "addition associativity")?;
        let comm = a.mul(&b).sub(&b.mul(&a));
        ensure(!comm.is_visibly_nonzero(), "multiplication commutativity")?;
        let distrib = a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c)));
        ensure(!distrib.is_visibly_nonzero(), "distributivity")?;
        let massoc = a.mul(&b).mul(&c).sub(&a.mul(&b.mul(&c)));
        ensure(!massoc.is_visibly_nonzero(), "multiplication associativity")?;
        checks += 4;
    }

    for _ in 0..500 {
        let x = QuadDyadic::new(rand_dyadic(&mut rng, prec), rand_dyadic(&mut rng, prec));
        let y = QuadDyadic::new(rand_dyadic(&mut rng, prec), rand_dyadic(&mut rng, prec));
        let conj_mul = x.mul(&y).conj().sub(&x.conj().mul(&y.conj()));
        ensure(
            !conj_mul.is_visibly_nonzero(),
            "conjugation against products",
        )?;
        let norm_mul = x.mul(&y).norm().sub(&x.norm().mul(&y.norm()));
        ensure(!norm_mul.is_visibly_nonzero(), "norm against products")?;
        let self_norm = x.mul(&x.conj());
        ensure(
            !self_norm.b.is_visibly_nonzero() && !self_norm.a.sub(&x.norm()).is_visibly_nonzero(),
            "norm against x times its conjugate",
        )?;
        let tr = x.add(&x.conj());
        ensure(
            !tr.b.is_visibly_nonzero() && !tr.a.sub(&x.trace()).is_visibly_nonzero(),
            "trace against x plus its conjugate",
        )?;
        checks += 4;
    }

    ensure(checks == 10_000, format!("check count {checks}"))
}
