//! Exact 2-adic arithmetic at fixed absolute precision.
//!
//! A nonzero element is stored as `2^v * u` with `u` odd; the value is known
//! modulo `2^abs`, so the unit carries `abs - v` certified digits. An element
//! whose digits all vanish up to the bound is *indistinguishable from zero*
//! and carries only the bound `O(2^abs)`. True zero is the special case with
//! an infinite bound.
//!
//! Operations propagate exactly the precision the inputs justify and never
//! round: products add valuations and meet relative precisions, sums meet
//! absolute precisions. Asking a question the precision cannot answer
//! (equality of indistinguishable elements, division by a possible zero)
//! is an error, not a silent guess.
//!
//! [`QuadDyadic`] adjoins a root `w` of `w^2 + w + 1`, giving the unramified
//! quadratic extension with residue field F_4. [`HalfVal`] carries valuation
//! bounds with denominator 2 so that statements about ramified points can be
//! expressed without materialising ramified elements.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Default number of certified relative digits for inputs given over Z.
pub const DEFAULT_PRECISION: u32 = 32;

/// Sentinel absolute bound for true zero.
const EXACT: i64 = i64::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyadicError {
    #[error("division by an element indistinguishable from zero (O(2^{0}))")]
    DivisionByZeroToPrecision(i64),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("elements agree modulo 2^{0}; equality is undecidable at this precision")]
    IndistinguishableAtPrecision(i64),
    #[error("element is not integral (valuation {0} < 0)")]
    NotIntegral(i64),
    #[error("residue lies outside F_2 (conjugate part is odd)")]
    ResidueNotRational,
}

/// Valuation of a truncated 2-adic element. `Infinite` means the element is
/// indistinguishable from zero at its precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "+inf"),
        }
    }
}

/// A valuation bound with denominator 1 or 2, totally ordered.
///
/// Stored as a count of halves, so `HalfVal::half(3)` is 3/2. Used for disk
/// certificates where the variable floor on a ramified disk is 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfVal {
    halves: i64,
}

impl HalfVal {
    pub fn int(n: i64) -> Self {
        HalfVal { halves: 2 * n }
    }

    pub fn half(n: i64) -> Self {
        HalfVal { halves: n }
    }

    pub fn halves(&self) -> i64 {
        self.halves
    }

    pub fn add(&self, other: &HalfVal) -> HalfVal {
        HalfVal {
            halves: self.halves.saturating_add(other.halves),
        }
    }

    pub fn scale(&self, k: i64) -> HalfVal {
        HalfVal {
            halves: self.halves.saturating_mul(k),
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.halves > 0
    }

    pub fn is_zero(&self) -> bool {
        self.halves == 0
    }
}

impl fmt::Display for HalfVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.halves % 2 == 0 {
            write!(f, "{}", self.halves / 2)
        } else {
            write!(f, "{}/2", self.halves)
        }
    }
}

/// Truncated 2-adic number: `2^val * unit + O(2^abs)`.
#[derive(Debug, Clone)]
pub struct Dyadic {
    /// `None` when the element is indistinguishable from zero.
    val: Option<i64>,
    /// Odd residue modulo `2^(abs - val)`; zero when `val` is `None`.
    unit: BigUint,
    /// The value is known modulo `2^abs`. `i64::MAX` marks true zero.
    abs: i64,
}

fn mask(n: &BigUint, bits: i64) -> BigUint {
    if bits <= 0 {
        return BigUint::zero();
    }
    n % (BigUint::one() << bits as u64)
}

/// Inverse of an odd residue modulo `2^bits`, by Newton lifting.
fn inv_mod_pow2(u: &BigUint, bits: i64) -> BigUint {
    assert!(bits > 0 && u.bit(0));
    let mut x = BigUint::one();
    let mut known: i64 = 1;
    let two = BigUint::from(2u32);
    while known < bits {
        known = (known * 2).min(bits);
        // x <- x * (2 - u*x), computed modulo 2^known without underflow
        let t = mask(&(u * &x), known);
        let correction = (BigUint::one() << known as u64) + &two - t;
        x = mask(&(&x * correction), known);
    }
    x
}

impl Dyadic {
    /// True zero, known to infinite precision.
    pub fn exact_zero() -> Self {
        Dyadic {
            val: None,
            unit: BigUint::zero(),
            abs: EXACT,
        }
    }

    /// Zero to the stated bound: the value is `O(2^abs)`.
    pub fn zero_to_prec(abs: i64) -> Self {
        Dyadic {
            val: None,
            unit: BigUint::zero(),
            abs,
        }
    }

    fn make(val: i64, unit: BigUint, abs: i64) -> Self {
        if val >= abs {
            return Dyadic::zero_to_prec(abs);
        }
        debug_assert!(unit.bit(0));
        Dyadic {
            val: Some(val),
            unit: mask(&unit, abs - val),
            abs,
        }
    }

    /// Embed an integer with `rel` certified relative digits.
    pub fn from_bigint(n: &BigInt, rel: u32) -> Self {
        if n.is_zero() {
            return Dyadic::exact_zero();
        }
        let mag = n.magnitude();
        let v = mag.trailing_zeros().expect("nonzero") as i64;
        let mut unit = mask(&(mag >> v as u64), rel as i64);
        if n.sign() == Sign::Minus {
            unit = (BigUint::one() << rel as u64) - unit;
        }
        Dyadic::make(v, unit, v + rel as i64)
    }

    pub fn from_i64(n: i64, rel: u32) -> Self {
        Dyadic::from_bigint(&BigInt::from(n), rel)
    }

    pub fn one(rel: u32) -> Self {
        Dyadic::from_i64(1, rel)
    }

    pub fn valuation(&self) -> Val {
        match self.val {
            Some(v) => Val::Finite(v),
            None => Val::Infinite,
        }
    }

    /// Certified lower bound for the valuation. For an element
    /// indistinguishable from zero this is its absolute bound.
    pub fn val_lower_bound(&self) -> i64 {
        self.val.unwrap_or(self.abs)
    }

    pub fn abs_prec(&self) -> i64 {
        self.abs
    }

    /// Certified relative digits; zero for elements without a visible unit.
    pub fn rel_prec(&self) -> i64 {
        match self.val {
            Some(v) => self.abs - v,
            None => 0,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.val.is_none() && self.abs == EXACT
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.val.is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.val == Some(0)
    }

    /// The odd unit truncated to `bits` digits.
    pub fn unit_residue(&self, bits: i64) -> BigUint {
        mask(&self.unit, bits)
    }

    /// Mod-2 residue, requiring the element to be visibly integral.
    pub fn residue2(&self) -> Result<u8, DyadicError> {
        match self.val {
            Some(v) if v < 0 => Err(DyadicError::NotIntegral(v)),
            Some(0) => Ok(1),
            Some(_) => Ok(0),
            None if self.abs >= 1 => Ok(0),
            None => Err(DyadicError::PrecisionExhausted(
                "no certified digit below 2^1".into(),
            )),
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let abs = self.abs.min(other.abs);
        match (self.val, other.val) {
            (None, None) => {
                if abs == EXACT {
                    Dyadic::exact_zero()
                } else {
                    Dyadic::zero_to_prec(abs)
                }
            }
            (None, Some(v)) => Dyadic::make(v, other.unit.clone(), abs),
            (Some(v), None) => Dyadic::make(v, self.unit.clone(), abs),
            (Some(va), Some(vb)) => {
                let m = va.min(vb);
                let bits = abs - m;
                if bits <= 0 {
                    return Dyadic::zero_to_prec(abs);
                }
                let sum = mask(
                    &((&self.unit << (va - m) as u64) + (&other.unit << (vb - m) as u64)),
                    bits,
                );
                if sum.is_zero() {
                    return Dyadic::zero_to_prec(abs);
                }
                let t = sum.trailing_zeros().expect("nonzero") as i64;
                Dyadic::make(m + t, sum >> t as u64, abs)
            }
        }
    }

    pub fn neg(&self) -> Dyadic {
        match self.val {
            None => self.clone(),
            Some(v) => {
                let bits = self.abs - v;
                let unit = (BigUint::one() << bits as u64) - &self.unit;
                Dyadic::make(v, unit, self.abs)
            }
        }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        match (self.val, other.val) {
            (None, None) => {
                if self.abs == EXACT || other.abs == EXACT {
                    Dyadic::exact_zero()
                } else {
                    Dyadic::zero_to_prec(self.abs.saturating_add(other.abs))
                }
            }
            (None, Some(v)) => {
                if self.abs == EXACT {
                    Dyadic::exact_zero()
                } else {
                    Dyadic::zero_to_prec(self.abs.saturating_add(v))
                }
            }
            (Some(v), None) => {
                if other.abs == EXACT {
                    Dyadic::exact_zero()
                } else {
                    Dyadic::zero_to_prec(other.abs.saturating_add(v))
                }
            }
            (Some(va), Some(vb)) => {
                let rel = (self.abs - va).min(other.abs - vb);
                let unit = mask(&(&self.unit * &other.unit), rel);
                Dyadic::make(va + vb, unit, va + vb + rel)
            }
        }
    }

    pub fn div(&self, other: &Dyadic) -> Result<Dyadic, DyadicError> {
        let vb = match other.val {
            None => return Err(DyadicError::DivisionByZeroToPrecision(other.abs)),
            Some(v) => v,
        };
        match self.val {
            None => {
                if self.abs == EXACT {
                    Ok(Dyadic::exact_zero())
                } else {
                    Ok(Dyadic::zero_to_prec(self.abs - vb))
                }
            }
            Some(va) => {
                let rel = (self.abs - va).min(other.abs - vb);
                let inv = inv_mod_pow2(&other.unit, rel);
                let unit = mask(&(&self.unit * inv), rel);
                Ok(Dyadic::make(va - vb, unit, va - vb + rel))
            }
        }
    }

    pub fn invert(&self) -> Result<Dyadic, DyadicError> {
        let v = match self.val {
            None => return Err(DyadicError::DivisionByZeroToPrecision(self.abs)),
            Some(v) => v,
        };
        let rel = self.abs - v;
        Ok(Dyadic::make(-v, inv_mod_pow2(&self.unit, rel), -v + rel))
    }

    /// Divide by a nonzero rational integer. Exact: only the valuation and
    /// the odd part move.
    pub fn div_exact_int(&self, k: i64) -> Dyadic {
        assert!(k != 0);
        let kd = Dyadic::from_i64(k, self.rel_prec().max(1) as u32 + 2);
        match self.val {
            None => {
                if self.abs == EXACT {
                    Dyadic::exact_zero()
                } else {
                    Dyadic::zero_to_prec(self.abs - kd.val_lower_bound())
                }
            }
            Some(_) => self.div(&kd).expect("nonzero integer"),
        }
    }

    /// Multiply by a rational integer. Relative precision is preserved.
    pub fn mul_exact_int(&self, k: i64) -> Dyadic {
        if k == 0 {
            return Dyadic::exact_zero();
        }
        let kd = Dyadic::from_i64(k, self.rel_prec().max(1) as u32 + 2);
        match self.val {
            None => {
                if self.abs == EXACT {
                    Dyadic::exact_zero()
                } else {
                    Dyadic::zero_to_prec(self.abs + kd.val_lower_bound())
                }
            }
            Some(_) => self.mul(&kd),
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        match self.val {
            None => {
                if self.abs == EXACT {
                    Dyadic::exact_zero()
                } else {
                    Dyadic::zero_to_prec(self.abs + k)
                }
            }
            Some(v) => Dyadic::make(v + k, self.unit.clone(), self.abs + k),
        }
    }

    /// Whether the two elements agree on every digit both can certify.
    pub fn agrees_with(&self, other: &Dyadic) -> bool {
        self.sub(other).is_zero_to_prec()
    }

    /// Certified comparison. `Ok(false)` when the elements visibly differ;
    /// an error when they are indistinguishable (equality cannot be
    /// certified from truncated data).
    pub fn try_eq(&self, other: &Dyadic) -> Result<bool, DyadicError> {
        let d = self.sub(other);
        if d.is_exact_zero() {
            return Ok(true);
        }
        match d.val {
            Some(_) => Ok(false),
            None => Err(DyadicError::IndistinguishableAtPrecision(d.abs)),
        }
    }

    /// Structural identity of the stored digits, used by fixed-point loops
    /// to detect stabilisation. Not a mathematical comparison.
    pub fn bit_eq(&self, other: &Dyadic) -> bool {
        self.val == other.val && self.abs == other.abs && self.unit == other.unit
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.val {
            None if self.abs == EXACT => write!(f, "0"),
            None => write!(f, "O(2^{})", self.abs),
            Some(v) => write!(f, "2^{v}*{} + O(2^{})", self.unit, self.abs),
        }
    }
}

/// Element of the unramified quadratic extension `Q_2(w)`, `w^2 + w + 1 = 0`,
/// stored on the basis `{1, w}`.
#[derive(Debug, Clone)]
pub struct QuadDyadic {
    pub a: Dyadic,
    pub b: Dyadic,
}

impl QuadDyadic {
    pub fn new(a: Dyadic, b: Dyadic) -> Self {
        QuadDyadic { a, b }
    }

    pub fn from_dyadic(a: Dyadic) -> Self {
        QuadDyadic {
            a,
            b: Dyadic::exact_zero(),
        }
    }

    pub fn from_i64(n: i64, rel: u32) -> Self {
        QuadDyadic::from_dyadic(Dyadic::from_i64(n, rel))
    }

    pub fn exact_zero() -> Self {
        QuadDyadic::from_dyadic(Dyadic::exact_zero())
    }

    /// The generator `w`.
    pub fn w(rel: u32) -> Self {
        QuadDyadic {
            a: Dyadic::exact_zero(),
            b: Dyadic::from_i64(1, rel),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadDyadic {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuadDyadic {
            a: self.a.sub(&other.a),
            b: self.b.sub(&other.b),
        }
    }

    pub fn neg(&self) -> Self {
        QuadDyadic {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    /// `(a1 + b1 w)(a2 + b2 w)` with `w^2 = -w - 1`.
    pub fn mul(&self, other: &Self) -> Self {
        let bb = self.b.mul(&other.b);
        let a = self.a.mul(&other.a).sub(&bb);
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a)).sub(&bb);
        QuadDyadic { a, b }
    }

    /// Galois conjugate: `w` goes to `-1 - w`.
    pub fn conj(&self) -> Self {
        QuadDyadic {
            a: self.a.sub(&self.b),
            b: self.b.neg(),
        }
    }

    /// Norm to `Q_2`; the `w`-component of `x * conj(x)` vanishes.
    pub fn norm(&self) -> Dyadic {
        let n = self.mul(&self.conj());
        debug_assert!(n.b.is_zero_to_prec());
        n.a
    }

    /// Trace to `Q_2`: `2a - b`.
    pub fn trace(&self) -> Dyadic {
        self.a.mul_pow2(1).sub(&self.b)
    }

    pub fn invert(&self) -> Result<Self, DyadicError> {
        let ninv = self.norm().invert()?;
        Ok(self.conj().scale(&ninv))
    }

    pub fn div(&self, other: &Self) -> Result<Self, DyadicError> {
        Ok(self.mul(&other.invert()?))
    }

    pub fn scale(&self, c: &Dyadic) -> Self {
        QuadDyadic {
            a: self.a.mul(c),
            b: self.b.mul(c),
        }
    }

    pub fn div_exact_int(&self, k: i64) -> Self {
        QuadDyadic {
            a: self.a.div_exact_int(k),
            b: self.b.div_exact_int(k),
        }
    }

    pub fn mul_exact_int(&self, k: i64) -> Self {
        QuadDyadic {
            a: self.a.mul_exact_int(k),
            b: self.b.mul_exact_int(k),
        }
    }

    /// Valuation; the extension is unramified, so it is the minimum of the
    /// component valuations whenever that minimum is visible.
    pub fn valuation(&self) -> Val {
        match (self.a.valuation(), self.b.valuation()) {
            (Val::Finite(u), Val::Finite(v)) => Val::Finite(u.min(v)),
            (Val::Finite(u), Val::Infinite) if u < self.b.abs_prec() => Val::Finite(u),
            (Val::Infinite, Val::Finite(v)) if v < self.a.abs_prec() => Val::Finite(v),
            _ => Val::Infinite,
        }
    }

    pub fn val_lower_bound(&self) -> i64 {
        self.a.val_lower_bound().min(self.b.val_lower_bound())
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.a.is_zero_to_prec() && self.b.is_zero_to_prec()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.a.is_exact_zero() && self.b.is_exact_zero()
    }

    /// Parities of the two coordinates, i.e. the residue in F_4 as bits
    /// `(1-part, w-part)`.
    pub fn residue_bits(&self) -> Result<(u8, u8), DyadicError> {
        Ok((self.a.residue2()?, self.b.residue2()?))
    }

    /// Mod-2 residue constrained to F_2; errors when the `w`-part is odd.
    pub fn residue2(&self) -> Result<u8, DyadicError> {
        let (a, b) = self.residue_bits()?;
        if b != 0 {
            return Err(DyadicError::ResidueNotRational);
        }
        Ok(a)
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero_to_prec()
    }

    pub fn bit_eq(&self, other: &Self) -> bool {
        self.a.bit_eq(&other.a) && self.b.bit_eq(&other.b)
    }
}

impl fmt::Display for QuadDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*w", self.a, self.b)
    }
}

/// Solve `y^2 + y = c` for `c` in `Z_2`, selecting the root congruent to `w`
/// (for odd `c`) or to `0` (for even `c`) modulo 2.
///
/// The derivative `2y + 1` is a unit on both branches, so Newton iteration
/// converges quadratically; the loop stops once the residual valuation
/// reaches `n`.
pub fn hensel_artin_schreier(c: &Dyadic, n: u32) -> Result<QuadDyadic, DyadicError> {
    if c.val_lower_bound() < 0 {
        return Err(DyadicError::NotIntegral(c.val_lower_bound()));
    }
    if c.is_exact_zero() {
        return Ok(QuadDyadic::exact_zero());
    }
    if !c.is_zero_to_prec() && c.abs_prec() < n as i64 {
        return Err(DyadicError::PrecisionExhausted(format!(
            "input known only modulo 2^{}, need 2^{n}",
            c.abs_prec()
        )));
    }
    let rel = n + 4;
    let cq = QuadDyadic::from_dyadic(c.clone());
    let one = QuadDyadic::from_i64(1, rel);
    let mut y = match c.residue2()? {
        1 => QuadDyadic::w(rel),
        _ => QuadDyadic::new(
            Dyadic::zero_to_prec(rel as i64),
            Dyadic::zero_to_prec(rel as i64),
        ),
    };
    let residual = |y: &QuadDyadic| y.mul(y).add(y).sub(&cq);
    let mut steps = 0u32;
    loop {
        let r = residual(&y);
        if r.val_lower_bound() >= n as i64 {
            return Ok(y);
        }
        if steps > n.ilog2() + 8 {
            return Err(DyadicError::PrecisionExhausted(
                "Newton iteration failed to reach the requested residual bound".into(),
            ));
        }
        let deriv = y.scale(&Dyadic::from_i64(2, rel)).add(&one);
        y = y.sub(&r.div(&deriv)?);
        steps += 1;
    }
}
