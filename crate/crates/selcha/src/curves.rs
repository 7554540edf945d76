//! Curve models and their residue data.
//!
//! A `LongCurve` is y^2 + y = h(x) with h monic of odd degree 2g+1 over Z;
//! a `ShortCurve` is y^2 = f(x) with dyadic-rational coefficients. Goodness
//! is a condition on h mod 2 that pins down the points over F_2 and F_4
//! completely, which is what the disk analysis downstream relies on.

use crate::density::DyadicRational;
use crate::dyadic::Dyadic;
use crate::modp::F4Elem;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("genus {0} is below the minimum of 2")]
    GenusTooSmall(u32),
    #[error("expected {expected} coefficients for genus {genus}, got {got}")]
    WrongCoefficientCount {
        genus: u32,
        expected: usize,
        got: usize,
    },
    #[error("curve is not good: {0}")]
    NotGood(String),
    #[error("cannot parse curve: {0}")]
    Parse(String),
}

/// y^2 + y = h(x), h monic of degree 2g+1 with integer coefficients.
/// `coeffs[i]` is the coefficient of x^i for i = 0..2g; the leading
/// coefficient is 1 and not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongCurve {
    genus: u32,
    coeffs: Vec<BigInt>,
}

/// y^2 = f(x), f monic of degree 2g+1 with dyadic-rational coefficients,
/// leading coefficient 1 not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortCurve {
    genus: u32,
    coeffs: Vec<DyadicRational>,
}

impl LongCurve {
    pub fn new(genus: u32, coeffs: Vec<BigInt>) -> Result<Self, CurveError> {
        if genus < 2 {
            return Err(CurveError::GenusTooSmall(genus));
        }
        let expected = (2 * genus + 1) as usize;
        if coeffs.len() != expected {
            return Err(CurveError::WrongCoefficientCount {
                genus,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(LongCurve { genus, coeffs })
    }

    pub fn from_i64(genus: u32, coeffs: &[i64]) -> Result<Self, CurveError> {
        LongCurve::new(genus, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Sparse constructor: x^(2g+1) plus the given monomials.
    pub fn from_monomials(genus: u32, terms: &[(u32, i64)]) -> Result<Self, CurveError> {
        let mut coeffs = vec![BigInt::zero(); (2 * genus + 1) as usize];
        for &(e, c) in terms {
            if e > 2 * genus {
                return Err(CurveError::Parse(format!(
                    "exponent {e} is not below the degree {}",
                    2 * genus + 1
                )));
            }
            coeffs[e as usize] += BigInt::from(c);
        }
        LongCurve::new(genus, coeffs)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn degree(&self) -> u32 {
        2 * self.genus + 1
    }

    /// Coefficient of x^i in h, the leading 1 included.
    pub fn coeff(&self, i: u32) -> BigInt {
        if i == self.degree() {
            BigInt::one()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn lower_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// All 2g+2 coefficients of h as truncated 2-adics, index = exponent.
    pub fn h_dyadic(&self, rel: u32) -> Vec<Dyadic> {
        (0..=self.degree())
            .map(|i| Dyadic::from_bigint(&self.coeff(i), rel))
            .collect()
    }

    /// h(x) for x in F_4, coefficients reduced mod 2.
    pub fn eval_h_f4(&self, x: F4Elem) -> F4Elem {
        let mut acc = F4Elem::One; // leading term, folded in by Horner below
        for i in (0..self.degree()).rev() {
            acc = acc * x;
            if self.coeff(i) % 2 != BigInt::zero() {
                acc = acc + F4Elem::One;
            }
        }
        acc
    }

    /// Exponents of h mod 2, the leading one included.
    pub fn support_mod2(&self) -> Vec<u32> {
        (0..=self.degree())
            .filter(|&i| self.coeff(i) % 2 != BigInt::zero())
            .collect()
    }

    pub fn goodness(&self) -> GoodnessReport {
        let support = self.support_mod2();
        let class0: Vec<u32> = support.iter().copied().filter(|e| e % 3 == 0).collect();
        let class12: Vec<u32> = support.iter().copied().filter(|e| e % 3 != 0).collect();
        let constant_odd = support.contains(&0);
        let class0_even = class0.len().is_multiple_of(2);
        let class12_odd = class12.len() % 2 == 1;
        GoodnessReport {
            genus: self.genus,
            support,
            class0,
            class12,
            constant_odd,
            class0_even,
            class12_odd,
            good: constant_odd && class0_even && class12_odd,
        }
    }

    pub fn is_good(&self) -> bool {
        self.goodness().good
    }

    pub fn require_good(&self) -> Result<(), CurveError> {
        if self.is_good() {
            Ok(())
        } else {
            Err(CurveError::NotGood(self.to_string()))
        }
    }

    /// Substitute x -> x + a.
    pub fn translate(&self, a: i64) -> LongCurve {
        let deg = self.degree() as usize;
        let a = BigInt::from(a);
        // Horner: acc starts as the leading 1, then acc <- acc*(x+a) + c_i
        let mut acc = vec![BigInt::one()];
        for i in (0..deg).rev() {
            acc.push(BigInt::zero());
            for j in (0..acc.len()).rev() {
                let from_shift = if j > 0 {
                    acc[j - 1].clone()
                } else {
                    BigInt::zero()
                };
                acc[j] = from_shift + &acc[j] * &a;
            }
            acc[0] += self.coeff(i as u32);
        }
        LongCurve {
            genus: self.genus,
            coeffs: acc[..deg].to_vec(),
        }
    }

    /// h + 2^k * delta, for nudging a curve inside its residue disk.
    pub fn perturb(&self, delta: &[i64], pow2: u32) -> Result<LongCurve, CurveError> {
        if delta.len() != self.coeffs.len() {
            return Err(CurveError::WrongCoefficientCount {
                genus: self.genus,
                expected: self.coeffs.len(),
                got: delta.len(),
            });
        }
        let scale = BigInt::one() << pow2;
        let coeffs = self
            .coeffs
            .iter()
            .zip(delta)
            .map(|(c, &d)| c + &scale * BigInt::from(d))
            .collect();
        Ok(LongCurve {
            genus: self.genus,
            coeffs,
        })
    }

    /// Complete the square: y^2 = h(x) + 1/4. Only the constant changes.
    pub fn complete_square(&self) -> ShortCurve {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 0 {
                    &DyadicRational::from_parts(c.clone(), 0) + &DyadicRational::two_pow_neg(2)
                } else {
                    DyadicRational::from_parts(c.clone(), 0)
                }
            })
            .collect();
        ShortCurve {
            genus: self.genus,
            coeffs,
        }
    }

    /// Integral model 4^(2g+1) (h(x/4) + 1/4): coefficient of x^i becomes
    /// 4^(2g+1-i) c_i, and the constant gains 4^(2g).
    pub fn scale_to_family(&self) -> ShortCurve {
        let deg = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut n = c << (2 * (deg - i as u32));
                if i == 0 {
                    n += BigInt::one() << (2 * (deg - 1));
                }
                DyadicRational::from_parts(n, 0)
            })
            .collect();
        ShortCurve {
            genus: self.genus,
            coeffs,
        }
    }
}

impl ShortCurve {
    pub fn new(genus: u32, coeffs: Vec<DyadicRational>) -> Result<Self, CurveError> {
        if genus < 2 {
            return Err(CurveError::GenusTooSmall(genus));
        }
        let expected = (2 * genus + 1) as usize;
        if coeffs.len() != expected {
            return Err(CurveError::WrongCoefficientCount {
                genus,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(ShortCurve { genus, coeffs })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn degree(&self) -> u32 {
        2 * self.genus + 1
    }

    pub fn coeff(&self, i: u32) -> DyadicRational {
        if i == self.degree() {
            DyadicRational::one()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// All 2g+2 coefficients of f as truncated 2-adics, index = exponent.
    pub fn f_dyadic(&self, rel: u32) -> Vec<Dyadic> {
        (0..=self.degree())
            .map(|i| {
                let c = self.coeff(i);
                Dyadic::from_bigint(c.numerator(), rel).mul_pow2(-(c.exponent() as i64))
            })
            .collect()
    }

    /// Weighted height: max over i of |a_i|^(1/(deg-i)). Reporting only.
    pub fn height(&self) -> f64 {
        let deg = self.degree();
        (0..deg)
            .map(|i| {
                let a = self.coeff(i).approx_f64().abs();
                if a == 0.0 {
                    0.0
                } else {
                    a.powf(1.0 / (deg - i) as f64)
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn newton_polygon(&self) -> NewtonPolygon {
        let deg = self.degree();
        // (exponent, valuation) for nonzero coefficients; numerator odd after
        // normalisation, so the valuation is v2(num) - exp with one of the
        // two parts zero
        let mut pts: Vec<(i64, i64)> = Vec::new();
        for i in 0..=deg {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let v = if c.exponent() > 0 {
                -(c.exponent() as i64)
            } else {
                c.numerator().magnitude().trailing_zeros().unwrap() as i64
            };
            pts.push((i as i64, v));
        }
        // lower convex hull, left to right
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // keep b only if it is strictly below segment a..p
                if (b.1 - a.1) * (p.0 - a.0) < (p.1 - a.1) * (b.0 - a.0) {
                    break;
                }
                hull.pop();
            }
            hull.push(p);
        }
        let single = hull.len() == 2;
        // certification needs the constant term present: a hull starting
        // right of 0 means x divides f
        let certifies = single && hull[0].0 == 0 && {
            let (x0, y0) = hull[0];
            let (x1, y1) = hull[1];
            gcd_i64(x1 - x0, (y1 - y0).abs()) == 1
        };
        NewtonPolygon {
            vertices: hull,
            single_segment: single,
            certifies_irreducible: certifies,
        }
    }
}

/// Lower convex hull of the coefficient valuations of f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Hull vertices (exponent, valuation), left to right.
    pub vertices: Vec<(i64, i64)>,
    pub single_segment: bool,
    /// True when the hull is one segment with no interior lattice points,
    /// which forces f to be irreducible over the 2-adic field.
    pub certifies_irreducible: bool,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

/// Whether the mod-2 goodness conditions hold, with the evidence.
#[derive(Debug, Clone)]
pub struct GoodnessReport {
    pub genus: u32,
    /// Exponents of h mod 2, leading term included.
    pub support: Vec<u32>,
    pub class0: Vec<u32>,
    pub class12: Vec<u32>,
    pub constant_odd: bool,
    pub class0_even: bool,
    pub class12_odd: bool,
    pub good: bool,
}

/// Point of the long model over F_4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointF4 {
    Infinity,
    Affine { x: F4Elem, y: F4Elem },
}

impl PointF4 {
    pub fn is_rational(&self) -> bool {
        match self {
            PointF4::Infinity => true,
            PointF4::Affine { x, y } => x.is_in_f2() && y.is_in_f2(),
        }
    }

    pub fn frobenius(&self) -> PointF4 {
        match *self {
            PointF4::Infinity => PointF4::Infinity,
            PointF4::Affine { x, y } => PointF4::Affine {
                x: x.frobenius(),
                y: y.frobenius(),
            },
        }
    }

    /// Image under the involution swapping the two sheets: y -> y + 1.
    pub fn involution(&self) -> PointF4 {
        match *self {
            PointF4::Infinity => PointF4::Infinity,
            PointF4::Affine { x, y } => PointF4::Affine {
                x,
                y: y + F4Elem::One,
            },
        }
    }
}

impl fmt::Display for PointF4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointF4::Infinity => write!(f, "infty"),
            PointF4::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Points of the reduction over F_2 and F_4.
#[derive(Debug, Clone)]
pub struct PointCounts {
    pub f4_points: Vec<PointF4>,
    pub n_f2: usize,
    pub n_f4: usize,
}

/// Enumerate the points of y^2 + y = h(x) mod 2 over F_4, infinity included.
/// y^2 + y takes the value 0 on F_2 and 1 off it, so each x contributes two
/// points when h(x) is 0 or 1 and none otherwise.
pub fn enumerate_points(curve: &LongCurve) -> PointCounts {
    let mut f4_points = vec![PointF4::Infinity];
    for x in F4Elem::all() {
        let c = curve.eval_h_f4(x);
        let ys: &[F4Elem] = match c {
            F4Elem::Zero => &[F4Elem::Zero, F4Elem::One],
            F4Elem::One => &[F4Elem::Alpha, F4Elem::AlphaPlusOne],
            _ => &[],
        };
        for &y in ys {
            f4_points.push(PointF4::Affine { x, y });
        }
    }
    let n_f2 = f4_points.iter().filter(|p| p.is_rational()).count();
    let n_f4 = f4_points.len();
    PointCounts {
        f4_points,
        n_f2,
        n_f4,
    }
}

/// Unordered pair of geometric points that is defined over F_2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sym2Class {
    pub first: PointF4,
    pub second: PointF4,
    /// Both members rational, as opposed to a conjugate pair.
    pub split: bool,
    /// The pair is a fibre of x: second = involution(first).
    pub is_fiber: bool,
}

#[derive(Debug, Clone)]
pub struct Sym2Report {
    pub classes: Vec<Sym2Class>,
    pub n_classes: usize,
    pub all_fibers: bool,
}

/// F_2-points of the symmetric square: unordered pairs of rational points
/// together with Frobenius-conjugate pairs of irrational ones.
pub fn sym2_classes_raw(curve: &LongCurve) -> Sym2Report {
    let pts = enumerate_points(curve);
    let rational: Vec<PointF4> = pts
        .f4_points
        .iter()
        .copied()
        .filter(PointF4::is_rational)
        .collect();
    let mut classes = Vec::new();
    for (i, &p) in rational.iter().enumerate() {
        for &q in &rational[i..] {
            classes.push(make_class(p, q, true));
        }
    }
    for &p in &pts.f4_points {
        if p.is_rational() {
            continue;
        }
        let q = p.frobenius();
        if p < q {
            classes.push(make_class(p, q, false));
        }
    }
    let all_fibers = classes.iter().all(|c| c.is_fiber);
    Sym2Report {
        n_classes: classes.len(),
        classes,
        all_fibers,
    }
}

fn make_class(p: PointF4, q: PointF4, split: bool) -> Sym2Class {
    Sym2Class {
        first: p,
        second: q,
        split,
        is_fiber: q == p.involution(),
    }
}

/// As `sym2_classes_raw`, but insisting the curve is good, which pins the
/// answer to three classes, one per residue disk the certificates cover.
pub fn sym2_classes(curve: &LongCurve) -> Result<Sym2Report, CurveError> {
    curve.require_good()?;
    Ok(sym2_classes_raw(curve))
}

/// Trivial 2-torsion certificate: the completed square is irreducible over
/// the 2-adics by its Newton polygon, hence irreducible over Q; an odd-degree
/// irreducible f leaves no Galois-stable nonempty even set of roots.
pub fn two_torsion_trivial(curve: &LongCurve) -> bool {
    curve
        .complete_square()
        .newton_polygon()
        .certifies_irreducible
}

/// Parse "g; c_1, ..., c_{2g+1}" with c_i the coefficient of x^(2g+1-i).
/// Coefficients run from x^2g down to the constant; the leading 1 is implied.
pub fn parse_curve_line(line: &str) -> Result<LongCurve, CurveError> {
    let mut halves = line.splitn(2, ';');
    let g_part = halves.next().unwrap_or("").trim();
    let c_part = halves
        .next()
        .ok_or_else(|| CurveError::Parse("missing ';' between genus and coefficients".into()))?;
    let genus: u32 = g_part
        .parse()
        .map_err(|_| CurveError::Parse(format!("bad genus {g_part:?}")))?;
    let mut coeffs = c_part
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<BigInt>()
                .map_err(|_| CurveError::Parse(format!("bad coefficient {:?}", tok.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    coeffs.reverse();
    LongCurve::new(genus, coeffs)
}

/// Parse a comma-separated descending coefficient list against a known genus.
pub fn parse_descending_coeffs(genus: u32, text: &str) -> Result<LongCurve, CurveError> {
    parse_curve_line(&format!("{genus}; {text}"))
}

fn format_poly<C: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (u32, C, bool, bool)>,
) -> fmt::Result {
    // terms: (exponent, magnitude, is_negative, magnitude_is_one), descending
    let mut first = true;
    for (e, mag, neg, mag_one) in terms {
        match (first, neg) {
            (true, false) => {}
            (true, true) => write!(f, "-")?,
            (false, false) => write!(f, " + ")?,
            (false, true) => write!(f, " - ")?,
        }
        first = false;
        match (e, mag_one) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "x")?,
            (1, false) => write!(f, "{mag}*x")?,
            (_, true) => write!(f, "x^{e}")?,
            (_, false) => write!(f, "{mag}*x^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LongCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 + y = ")?;
        let terms = (0..=self.degree()).rev().filter_map(|i| {
            let c = self.coeff(i);
            if c.is_zero() {
                None
            } else {
                Some((
                    i,
                    c.magnitude().clone(),
                    c.is_negative(),
                    c.magnitude().is_one(),
                ))
            }
        });
        format_poly(f, terms)
    }
}

impl fmt::Display for ShortCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = ")?;
        let one = DyadicRational::one();
        let terms = (0..=self.degree()).rev().filter_map(|i| {
            let c = self.coeff(i);
            if c.is_zero() {
                None
            } else {
                let neg = c.is_negative();
                let mag = if neg { -&c } else { c };
                let mag_one = mag == one;
                Some((i, mag, neg, mag_one))
            }
        });
        format_poly(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x9_x_1() -> LongCurve {
        LongCurve::from_monomials(4, &[(1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn goodness_of_known_curves() {
        assert!(x9_x_1().is_good());
        assert!(LongCurve::from_monomials(4, &[(8, 1), (0, 1)])
            .unwrap()
            .is_good());
        assert!(LongCurve::from_monomials(4, &[(2, 1), (0, 1)])
            .unwrap()
            .is_good());
        assert!(!LongCurve::from_monomials(4, &[(0, 1)]).unwrap().is_good());
        assert!(LongCurve::from_monomials(5, &[(3, 1), (0, 1)])
            .unwrap()
            .is_good());
        assert!(!LongCurve::from_monomials(5, &[(1, 1), (0, 1)])
            .unwrap()
            .is_good());
        // even constant fails outright
        assert!(!LongCurve::from_monomials(4, &[(1, 1)]).unwrap().is_good());
    }

    #[test]
    fn goodness_report_fields() {
        let r = x9_x_1().goodness();
        assert_eq!(r.support, vec![0, 1, 9]);
        assert_eq!(r.class0, vec![0, 9]);
        assert_eq!(r.class12, vec![1]);
        assert!(r.constant_odd && r.class0_even && r.class12_odd && r.good);
    }

    #[test]
    fn translate_matches_known_reduction() {
        let t = x9_x_1().translate(1);
        // (x+1)^9 + (x+1) + 1 = x^9 + x^8 + 1 mod 2
        let support = t.support_mod2();
        assert_eq!(support, vec![0, 8, 9]);
        assert!(t.is_good());
        assert_eq!(t.translate(-1), x9_x_1());
        // exact integer check on a small case: (x+1)^5 + 2 at x = 0..3
        let c = LongCurve::from_monomials(2, &[(0, 2)]).unwrap();
        let tc = c.translate(1);
        for x in 0..4i64 {
            let direct = BigInt::from((x + 1).pow(5) + 2);
            let via: BigInt = (0..=5u32)
                .map(|i| tc.coeff(i) * BigInt::from(x).pow(i))
                .sum();
            assert_eq!(via, direct, "x = {x}");
        }
    }

    proptest! {
        #[test]
        fn translation_preserves_goodness(
            coeffs in proptest::collection::vec(-20i64..20, 9),
            a in -5i64..=5,
        ) {
            let c = LongCurve::from_i64(4, &coeffs).unwrap();
            prop_assert_eq!(c.translate(a).is_good(), c.is_good());
        }

        #[test]
        fn translate_composes(
            coeffs in proptest::collection::vec(-9i64..9, 9),
            a in -4i64..=4,
            b in -4i64..=4,
        ) {
            let c = LongCurve::from_i64(4, &coeffs).unwrap();
            prop_assert_eq!(c.translate(a).translate(b), c.translate(a + b));
        }

        #[test]
        fn good_curves_have_one_and_five_points(
            coeffs in proptest::collection::vec(-50i64..50, 9),
        ) {
            let c = LongCurve::from_i64(4, &coeffs).unwrap();
            if c.is_good() {
                let pts = enumerate_points(&c);
                prop_assert_eq!(pts.n_f2, 1);
                prop_assert_eq!(pts.n_f4, 5);
                let s = sym2_classes(&c).unwrap();
                prop_assert_eq!(s.n_classes, 3);
                prop_assert!(s.all_fibers);
            }
        }
    }

    #[test]
    fn point_enumeration_on_a_plain_curve() {
        // y^2 + y = x^5 + x: every x gives h(x) in F_2, so 2 points per x
        let c = LongCurve::from_monomials(2, &[(1, 1)]).unwrap();
        let pts = enumerate_points(&c);
        assert_eq!(pts.n_f2, 5);
        assert_eq!(pts.n_f4, 9);
        let s = sym2_classes_raw(&c);
        assert_eq!(s.n_classes, 15 + 2);
        // fibres: {infty, infty} and the two vertical rational pairs; the
        // conjugate pairs here sit over irrational x, so they are not fibres
        assert_eq!(s.classes.iter().filter(|cl| cl.is_fiber).count(), 3);
        assert!(sym2_classes(&c).is_err());
    }

    #[test]
    fn good_curve_f4_points_are_the_frozen_five() {
        use F4Elem::{Alpha, AlphaPlusOne, One, Zero};
        let pts = enumerate_points(&x9_x_1());
        let expect = vec![
            PointF4::Infinity,
            PointF4::Affine { x: Zero, y: Alpha },
            PointF4::Affine {
                x: Zero,
                y: AlphaPlusOne,
            },
            PointF4::Affine { x: One, y: Alpha },
            PointF4::Affine {
                x: One,
                y: AlphaPlusOne,
            },
        ];
        assert_eq!(pts.f4_points, expect);
    }

    #[test]
    fn complete_square_changes_only_the_constant() {
        let f = x9_x_1().complete_square();
        assert_eq!(f.coeff(0), DyadicRational::from_parts(BigInt::from(5), 2));
        assert_eq!(f.coeff(1), DyadicRational::one());
        for i in 2..9 {
            assert!(f.coeff(i).is_zero());
        }
        let np = f.newton_polygon();
        assert_eq!(np.vertices, vec![(0, -2), (9, 0)]);
        assert!(np.single_segment && np.certifies_irreducible);
    }

    #[test]
    fn scaled_family_model() {
        let f = x9_x_1().scale_to_family();
        let four = |k: u32| BigInt::from(4).pow(k);
        assert_eq!(f.coeff(0), DyadicRational::from_parts(four(9) + four(8), 0));
        assert_eq!(f.coeff(1), DyadicRational::from_parts(four(8), 0));
        for i in 2..9 {
            assert!(f.coeff(i).is_zero());
        }
        let np = f.newton_polygon();
        assert_eq!(np.vertices, vec![(0, 16), (9, 0)]);
        assert!(np.certifies_irreducible);
        let ht = f.height();
        assert!(ht > 4.0 && ht < 4.2, "height {ht}");
    }

    #[test]
    fn newton_polygon_with_a_break() {
        // valuations (0,2), (1,0), (5,0): two segments, nothing certified
        let coeffs = vec![
            DyadicRational::from_int(4),
            DyadicRational::one(),
            DyadicRational::zero(),
            DyadicRational::zero(),
            DyadicRational::zero(),
        ];
        let f = ShortCurve::new(2, coeffs).unwrap();
        let np = f.newton_polygon();
        assert_eq!(np.vertices, vec![(0, 2), (1, 0), (5, 0)]);
        assert!(!np.single_segment && !np.certifies_irreducible);
    }

    #[test]
    fn two_torsion_is_trivial_for_integral_h() {
        assert!(two_torsion_trivial(&x9_x_1()));
        // holds for any integral h: the polygon is always (0,-2) to (2g+1,0)
        let c = LongCurve::from_i64(3, &[7, -3, 0, 2, 5, 1, -8]).unwrap();
        assert!(two_torsion_trivial(&c));
    }

    #[test]
    fn parse_and_display() {
        let c = parse_curve_line("4; 0, 0, 0, 0, 0, 0, 0, 1, 1").unwrap();
        assert_eq!(c, x9_x_1());
        assert_eq!(c.to_string(), "y^2 + y = x^9 + x + 1");
        let d = parse_curve_line("2; 2, 0, 1, 0, -3").unwrap();
        assert_eq!(d.to_string(), "y^2 + y = x^5 + 2*x^4 + x^2 - 3");
        assert_eq!(
            parse_descending_coeffs(2, "2,0,1,0,-3")
                .unwrap()
                .to_string(),
            "y^2 + y = x^5 + 2*x^4 + x^2 - 3"
        );
        assert_eq!(
            x9_x_1().complete_square().to_string(),
            "y^2 = x^9 + x + 5/2^2"
        );
        assert!(parse_curve_line("4: 1, 1").is_err());
        assert!(parse_curve_line("4; 1, 1").is_err());
        assert!(parse_curve_line("zz; 1").is_err());
        assert!(parse_curve_line("4; 1, q, 0, 0, 0, 0, 0, 0, 0").is_err());
    }

    #[test]
    fn perturbation_shifts_coefficients() {
        let c = x9_x_1();
        let p = c.perturb(&[1, 0, 0, 0, 0, 0, 0, 0, -1], 18).unwrap();
        assert_eq!(p.coeff(0), BigInt::from(1 + (1 << 18)));
        assert_eq!(p.coeff(8), BigInt::from(-(1i64 << 18)));
        assert!(p.is_good());
    }
}
