//! Truncated power series over truncated 2-adics, and the chart expansions
//! feeding the disk certificates: the branch of the curve at infinity in the
//! coordinates (s, t) = (1/x, y/x^(g+1)), the differential bases pulled back
//! to either chart, and formal antiderivatives kept term by term so that the
//! denominator introduced by each monomial stays visible.

use crate::curves::LongCurve;
use crate::dyadic::{hensel_artin_schreier, Dyadic, DyadicError, QuadDyadic, Val};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("fixed-point iteration did not stabilise within {0} rounds")]
    NonConvergence(usize),
    #[error("defining equation has a visibly nonzero residual at order {order}")]
    ResidualNonzero { order: usize },
    #[error("dropped a visibly nonzero coefficient at order {order}")]
    NonzeroTruncated { order: usize },
    #[error("no basis element available at leading order {order}")]
    SingularComparison { order: usize },
    #[error("coefficient at order {order} has a visibly irrational part")]
    IrrationalCoefficient { order: usize },
    #[error(transparent)]
    Precision(#[from] DyadicError),
    #[error(transparent)]
    Linear(#[from] crate::modp::ModpError),
}

/// Coefficient ring shared by `Dyadic` and `QuadDyadic`.
pub trait SeriesCoeff: Clone + std::fmt::Debug {
    fn exact_zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn invert(&self) -> Result<Self, DyadicError>;
    fn div(&self, other: &Self) -> Result<Self, DyadicError>;
    fn mul_exact_int(&self, k: i64) -> Self;
    fn div_exact_int(&self, k: i64) -> Self;
    fn val_lower_bound(&self) -> i64;
    fn known_valuation(&self) -> Option<i64>;
    fn is_exact_zero(&self) -> bool;
    fn bit_eq(&self, other: &Self) -> bool;
    /// True when the valuation is pinned down, hence the value is nonzero.
    fn is_visibly_nonzero(&self) -> bool {
        self.known_valuation().is_some()
    }
}

impl SeriesCoeff for Dyadic {
    fn exact_zero() -> Self {
        Dyadic::exact_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Dyadic::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Dyadic::sub(self, other)
    }
    fn neg(&self) -> Self {
        Dyadic::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Dyadic::mul(self, other)
    }
    fn invert(&self) -> Result<Self, DyadicError> {
        Dyadic::invert(self)
    }
    fn div(&self, other: &Self) -> Result<Self, DyadicError> {
        Dyadic::div(self, other)
    }
    fn mul_exact_int(&self, k: i64) -> Self {
        Dyadic::mul_exact_int(self, k)
    }
    fn div_exact_int(&self, k: i64) -> Self {
        Dyadic::div_exact_int(self, k)
    }
    fn val_lower_bound(&self) -> i64 {
        Dyadic::val_lower_bound(self)
    }
    fn known_valuation(&self) -> Option<i64> {
        match self.valuation() {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }
    fn is_exact_zero(&self) -> bool {
        Dyadic::is_exact_zero(self)
    }
    fn bit_eq(&self, other: &Self) -> bool {
        Dyadic::bit_eq(self, other)
    }
}

impl SeriesCoeff for QuadDyadic {
    fn exact_zero() -> Self {
        QuadDyadic::exact_zero()
    }
    fn add(&self, other: &Self) -> Self {
        QuadDyadic::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        QuadDyadic::sub(self, other)
    }
    fn neg(&self) -> Self {
        QuadDyadic::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        QuadDyadic::mul(self, other)
    }
    fn invert(&self) -> Result<Self, DyadicError> {
        QuadDyadic::invert(self)
    }
    fn div(&self, other: &Self) -> Result<Self, DyadicError> {
        QuadDyadic::div(self, other)
    }
    fn mul_exact_int(&self, k: i64) -> Self {
        QuadDyadic::mul_exact_int(self, k)
    }
    fn div_exact_int(&self, k: i64) -> Self {
        QuadDyadic::div_exact_int(self, k)
    }
    fn val_lower_bound(&self) -> i64 {
        QuadDyadic::val_lower_bound(self)
    }
    fn known_valuation(&self) -> Option<i64> {
        match self.valuation() {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }
    fn is_exact_zero(&self) -> bool {
        QuadDyadic::is_exact_zero(self)
    }
    fn bit_eq(&self, other: &Self) -> bool {
        QuadDyadic::bit_eq(self, other)
    }
}

/// Power series known modulo u^len; index = exponent.
#[derive(Debug, Clone)]
pub struct TruncSeries<C: SeriesCoeff> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> TruncSeries<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        TruncSeries {
            coeffs: vec![C::exact_zero(); len],
        }
    }

    /// c * u^k, known modulo u^len.
    pub fn monomial(k: usize, c: C, len: usize) -> Self {
        assert!(k < len);
        let mut coeffs = vec![C::exact_zero(); len];
        coeffs[k] = c;
        TruncSeries { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, len: usize) -> Self {
        assert!(len <= self.len() && len > 0);
        TruncSeries {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        TruncSeries {
            coeffs: (0..n)
                .map(|k| self.coeffs[k].add(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        TruncSeries {
            coeffs: (0..n)
                .map(|k| self.coeffs[k].sub(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let mut coeffs = vec![C::exact_zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TruncSeries { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1);
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul_exact_int(k)).collect(),
        }
    }

    pub fn add_const(&self, c: &C) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = coeffs[0].add(c);
        TruncSeries { coeffs }
    }

    /// u^k * self, extending the truncation order by k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![C::exact_zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs }
    }

    /// self / u^k; errors when a dropped coefficient is visibly nonzero.
    pub fn strip_low(&self, k: usize) -> Result<Self, SeriesError> {
        assert!(k < self.len());
        for (order, c) in self.coeffs.iter().take(k).enumerate() {
            if c.is_visibly_nonzero() {
                return Err(SeriesError::NonzeroTruncated { order });
            }
        }
        Ok(TruncSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse; requires an invertible constant coefficient.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].invert()?;
        let mut out = vec![C::exact_zero(); self.len()];
        out[0] = inv0.clone();
        for k in 1..self.len() {
            let mut acc = C::exact_zero();
            for i in 1..=k {
                if self.coeffs[i].is_exact_zero() || out[k - i].is_exact_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = acc.mul(&inv0).neg();
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn derivative(&self) -> Self {
        assert!(self.len() >= 2);
        TruncSeries {
            coeffs: (1..self.len())
                .map(|k| self.coeffs[k].mul_exact_int(k as i64))
                .collect(),
        }
    }

    /// Horner evaluation; only sound when the result converges at `x`.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::exact_zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn bit_eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.bit_eq(b))
    }

    /// Index of the first visibly nonzero coefficient.
    pub fn leading_order(&self) -> Option<usize> {
        self.coeffs.iter().position(C::is_visibly_nonzero)
    }
}

/// Evaluate a polynomial (ascending coefficients) at a series argument.
pub fn poly_eval_series<C: SeriesCoeff>(poly: &[C], s: &TruncSeries<C>) -> TruncSeries<C> {
    let mut acc = TruncSeries::zeros(s.len());
    for c in poly.iter().rev() {
        acc = acc.mul(s).add_const(c);
    }
    acc
}

/// Coefficient of x^(2g+1-i) in h, for i = 0..=2g+1; index reversal puts the
/// chart at infinity into play.
fn reversed_coeffs(h: &LongCurve, prec: u32) -> Vec<Dyadic> {
    let deg = h.degree();
    (0..=deg)
        .map(|i| Dyadic::from_bigint(&h.coeff(deg - i), prec))
        .collect()
}

/// Branch of t^2 + s^(g+1) t = H(s) through (0, 0), solved for s as a series
/// in t. H(s) = sum_i c_i s^(i+1) collects the reversed coefficients of h.
pub fn expand_s_of_t(
    h: &LongCurve,
    trunc: usize,
    prec: u32,
) -> Result<TruncSeries<Dyadic>, SeriesError> {
    assert!(trunc >= 4);
    let g = h.genus() as usize;
    let c = reversed_coeffs(h, prec);
    let t2 = TruncSeries::monomial(2, Dyadic::one(prec), trunc);

    // s is a fixed point of s -> t^2 + s^(g+1) t - sum_{i>=1} c_i s^(i+1);
    // each round extends the agreement with the root by at least two orders
    let mut tail_poly = vec![Dyadic::exact_zero(), Dyadic::exact_zero()];
    tail_poly.extend(c.iter().skip(1).map(Dyadic::neg));
    let rounds = trunc / 2 + 3;
    let mut s = t2.clone();
    let mut stabilised = false;
    for _ in 0..rounds {
        let st = s.pow(g as u32 + 1).shift_up(1).truncate(trunc);
        let next = t2.add(&st).add(&poly_eval_series(&tail_poly, &s));
        if next.bit_eq(&s) {
            stabilised = true;
            break;
        }
        s = next;
    }
    if !stabilised {
        return Err(SeriesError::NonConvergence(rounds));
    }

    // residual of the defining equation, coefficient by coefficient
    let mut rhs_poly = vec![Dyadic::exact_zero()];
    rhs_poly.extend(c.iter().cloned());
    let lhs = t2.add(&s.pow(g as u32 + 1).shift_up(1).truncate(trunc));
    let residual = lhs.sub(&poly_eval_series(&rhs_poly, &s));
    if let Some(order) = residual.leading_order() {
        return Err(SeriesError::ResidualNonzero { order });
    }
    Ok(s)
}

/// Expansions at the rational point at infinity: the chart coordinate s(t),
/// the s-partial of the defining equation along the branch, and both
/// differential bases written as series in t (coefficients of dt).
#[derive(Debug, Clone)]
pub struct InfinityChart {
    pub s: TruncSeries<Dyadic>,
    pub f_s: TruncSeries<Dyadic>,
    /// omega_j = s^(j-1) dt / f_s, scaled by a global unit so that omega_1
    /// has constant coefficient exactly 1.
    pub omega: Vec<TruncSeries<Dyadic>>,
    /// eta_j = x^(j-1) dx / (2y+1) pulled back to the chart, unscaled.
    pub eta: Vec<TruncSeries<Dyadic>>,
    /// Unit divided out of the omega basis.
    pub normalizer: Dyadic,
}

pub fn infinity_chart(
    h: &LongCurve,
    trunc: usize,
    prec: u32,
) -> Result<InfinityChart, SeriesError> {
    let g = h.genus() as usize;
    let s = expand_s_of_t(h, trunc, prec)?;
    let c = reversed_coeffs(h, prec);

    // H'(u) has ascending coefficients (m+1) c_m
    let h_prime: Vec<Dyadic> = c
        .iter()
        .enumerate()
        .map(|(m, cm)| cm.mul_exact_int(m as i64 + 1))
        .collect();
    let f_s = s
        .pow(g as u32)
        .shift_up(1)
        .truncate(trunc)
        .scale_int(g as i64 + 1)
        .sub(&poly_eval_series(&h_prime, &s));

    let inv_fs = f_s.invert()?;
    let normalizer = inv_fs.coeff(0).clone();
    let scale = normalizer.invert()?;

    let mut omega = Vec::with_capacity(g);
    let mut eta = vec![TruncSeries::zeros(1); g];
    let mut s_pow = inv_fs.clone();
    for j in 1..=g {
        omega.push(s_pow.scale(&scale));
        eta[g - j] = s_pow.clone();
        s_pow = s_pow.mul(&s);
    }
    Ok(InfinityChart {
        s,
        f_s,
        omega,
        eta,
        normalizer,
    })
}

/// Branch y(x) of y^2 + y = h(x) through (0, gamma), gamma a root of
/// z^2 + z = h(0) in the unramified quadratic extension.
pub fn expand_y_of_x(
    h: &LongCurve,
    gamma: &QuadDyadic,
    trunc: usize,
    prec: u32,
) -> Result<TruncSeries<QuadDyadic>, SeriesError> {
    let one = QuadDyadic::from_i64(1, prec);
    let denom = gamma.mul_exact_int(2).add(&one);
    let inv = denom.invert()?;
    let coeff_h = |k: usize| -> QuadDyadic {
        if k <= h.degree() as usize {
            QuadDyadic::from_dyadic(Dyadic::from_bigint(&h.coeff(k as u32), prec))
        } else {
            QuadDyadic::exact_zero()
        }
    };

    let mut y = vec![gamma.clone()];
    for k in 1..trunc {
        let mut acc = coeff_h(k);
        for a in 1..k {
            if y[a].is_exact_zero() || y[k - a].is_exact_zero() {
                continue;
            }
            acc = acc.sub(&y[a].mul(&y[k - a]));
        }
        y.push(acc.mul(&inv));
    }
    let y = TruncSeries::from_coeffs(y);

    let h_series = TruncSeries::from_coeffs((0..trunc).map(&coeff_h).collect());
    let residual = y.mul(&y).add(&y).sub(&h_series);
    if let Some(order) = residual.leading_order() {
        return Err(SeriesError::ResidualNonzero { order });
    }
    Ok(y)
}

/// Expansions on the residue disk of a conjugate pair of points above x = 0:
/// the branch y(x) and the eta basis scaled by (2 gamma + 1), which makes
/// every coefficient rational and the leading coefficient exactly 1.
#[derive(Debug, Clone)]
pub struct PairDisk {
    pub gamma: QuadDyadic,
    pub y: TruncSeries<QuadDyadic>,
    pub eta_hat: Vec<TruncSeries<Dyadic>>,
}

pub fn pair_disk(h: &LongCurve, trunc: usize, prec: u32) -> Result<PairDisk, SeriesError> {
    let c0 = Dyadic::from_bigint(&h.coeff(0), prec + 8);
    let gamma = hensel_artin_schreier(&c0, prec)?;
    let y = expand_y_of_x(h, &gamma, trunc, prec)?;

    let one = QuadDyadic::from_i64(1, prec);
    let scale = gamma.mul_exact_int(2).add(&one);
    let eta1_quad = y.scale_int(2).add_const(&one).invert()?.scale(&scale);

    // conjugation fixes (2 gamma + 1)/(2y + 1), so the visible part of each
    // w-component must vanish
    let mut rational = Vec::with_capacity(trunc);
    for (order, c) in eta1_quad.coeffs().iter().enumerate() {
        if c.b.is_visibly_nonzero() {
            return Err(SeriesError::IrrationalCoefficient { order });
        }
        rational.push(c.a.clone());
    }
    let eta1 = TruncSeries::from_coeffs(rational);

    let g = h.genus() as usize;
    let eta_hat = (0..g).map(|j| eta1.shift_up(j).truncate(trunc)).collect();
    Ok(PairDisk { gamma, y, eta_hat })
}

/// One monomial of an antiderivative: coeff * u^(index+1) / (index+1), the
/// dyadic valuation of the denominator kept alongside instead of folded in.
#[derive(Debug, Clone)]
pub struct IntegralTerm<C: SeriesCoeff> {
    pub index: u32,
    pub coeff: C,
    pub denom_val: u32,
}

/// Formal antiderivative with zero constant term, kept term by term.
#[derive(Debug, Clone)]
pub struct IntegralSeries<C: SeriesCoeff> {
    pub terms: Vec<IntegralTerm<C>>,
}

pub fn integrate<C: SeriesCoeff>(f: &TruncSeries<C>) -> IntegralSeries<C> {
    IntegralSeries {
        terms: f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| IntegralTerm {
                index: i as u32,
                coeff: c.clone(),
                denom_val: (i as u32 + 1).trailing_zeros(),
            })
            .collect(),
    }
}

impl<C: SeriesCoeff> IntegralSeries<C> {
    /// Integrand recovered from the stored terms.
    pub fn derivative_series(&self) -> TruncSeries<C> {
        let n = self.terms.len();
        let mut coeffs = vec![C::exact_zero(); n];
        for term in &self.terms {
            coeffs[term.index as usize] = term.coeff.clone();
        }
        TruncSeries::from_coeffs(coeffs)
    }

    /// Value at u; only sound when the terms converge there.
    pub fn eval(&self, u: &C) -> C {
        let mut acc = C::exact_zero();
        let mut pow = u.clone();
        for (i, term) in self.terms.iter().enumerate() {
            debug_assert_eq!(term.index as usize, i);
            if i > 0 {
                pow = pow.mul(u);
            }
            // pow = u^(i+1)
            if !term.coeff.is_exact_zero() {
                acc = acc.add(&term.coeff.mul(&pow).div_exact_int(i as i64 + 1));
            }
        }
        acc
    }

    /// (F(u1) - F(u2)) / (u1 - u2) as the telescoped sum of
    /// coeff * h_i(u1, u2) / (i+1) with h_i the complete homogeneous sum;
    /// remains meaningful when u1 = u2.
    pub fn diff_quotient_eval(&self, u1: &C, u2: &C) -> C {
        let mut acc = C::exact_zero();
        // h satisfies h_i = u1 h_{i-1} + u2^i
        let mut h = C::exact_zero();
        let mut q = C::exact_zero();
        for (i, term) in self.terms.iter().enumerate() {
            debug_assert_eq!(term.index as usize, i);
            if i == 0 {
                acc = acc.add(&term.coeff);
                continue;
            }
            if i == 1 {
                h = u1.add(u2);
                q = u2.clone();
            } else {
                q = q.mul(u2);
                h = u1.mul(&h).add(&q);
            }
            if !term.coeff.is_exact_zero() {
                acc = acc.add(&term.coeff.mul(&h).div_exact_int(i as i64 + 1));
            }
        }
        acc
    }
}

/// Change of basis from the eta differentials to the normalized omega basis,
/// solved by matching leading orders at infinity.
#[derive(Debug, Clone)]
pub struct BasisChange {
    /// omega coordinates = matrix * eta coordinates.
    pub matrix: Vec<Vec<Dyadic>>,
    pub mod2: crate::modp::MatF2,
    pub det_odd: bool,
}

pub fn basis_change_matrix(
    h: &LongCurve,
    trunc: usize,
    prec: u32,
) -> Result<BasisChange, SeriesError> {
    let g = h.genus() as usize;
    assert!(trunc >= 2 * g);
    let chart = infinity_chart(h, trunc, prec)?;

    // eta_j has leading order 2(g-j), all distinct, with unit coefficient;
    // eliminate against omega_i and read off the column
    let mut matrix = vec![vec![Dyadic::exact_zero(); g]; g];
    for (i, omega) in chart.omega.iter().enumerate() {
        let mut rem = omega.clone();
        for _ in 0..=g {
            let Some(order) = rem.leading_order() else {
                break;
            };
            if order % 2 != 0 || order / 2 >= g {
                return Err(SeriesError::SingularComparison { order });
            }
            let jj = g - 1 - order / 2;
            let lead = chart.eta[jj].coeff(order);
            let m = rem.coeff(order).div(lead)?;
            matrix[i][jj] = matrix[i][jj].add(&m);
            rem = rem.sub(&chart.eta[jj].scale(&m));
        }
        if let Some(order) = rem.leading_order() {
            return Err(SeriesError::SingularComparison { order });
        }
    }

    let mut rows = Vec::with_capacity(g);
    for row in &matrix {
        let mut bits = 0u64;
        for (j, entry) in row.iter().enumerate() {
            if entry.residue2()? == 1 {
                bits |= 1 << j;
            }
        }
        rows.push(crate::modp::F2Vec::from_bits(g as u32, bits)?);
    }
    let mod2 = crate::modp::MatF2::from_rows(&rows)?;
    let det_odd = mod2.is_invertible();
    Ok(BasisChange {
        matrix,
        mod2,
        det_odd,
    })
}
