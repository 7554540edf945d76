//! Residue arithmetic: the field with four elements and bit-packed linear
//! algebra over F_2.
//!
//! `F4Elem` is a two-bit enum with total lookup tables; `f4_table_check`
//! re-derives every table entry from polynomial arithmetic modulo
//! `(2, x^2 + x + 1)` so the tables are verified, not trusted. Vectors over
//! F_2 pack into a `u64` word (one word per row), which keeps row reduction
//! and row-space enumeration branch-free.

use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModpError {
    #[error("cannot projectivise the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector length {0} exceeds the packed-word capacity of 64")]
    LengthTooLarge(u32),
    #[error("invalid bit string {0:?}: expected characters '0' and '1'")]
    BadBitString(String),
}

/// Element of F_4 = F_2[alpha]/(alpha^2 + alpha + 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum F4Elem {
    Zero,
    One,
    Alpha,
    AlphaPlusOne,
}

use F4Elem::{Alpha, AlphaPlusOne, One, Zero};

/// Products indexed by the two-bit encodings of the factors.
const MUL_TABLE: [[F4Elem; 4]; 4] = [
    [Zero, Zero, Zero, Zero],
    [Zero, One, Alpha, AlphaPlusOne],
    [Zero, Alpha, AlphaPlusOne, One],
    [Zero, AlphaPlusOne, One, Alpha],
];

impl F4Elem {
    /// Encoding: bit 0 is the 1-part, bit 1 is the alpha-part.
    pub fn to_bits(self) -> u8 {
        match self {
            Zero => 0,
            One => 1,
            Alpha => 2,
            AlphaPlusOne => 3,
        }
    }

    pub fn from_bits(bits: u8) -> Self {
        match bits & 3 {
            0 => Zero,
            1 => One,
            2 => Alpha,
            _ => AlphaPlusOne,
        }
    }

    pub fn all() -> [F4Elem; 4] {
        [Zero, One, Alpha, AlphaPlusOne]
    }

    /// The Frobenius x -> x^2, i.e. the nontrivial automorphism.
    pub fn frobenius(self) -> F4Elem {
        self * self
    }

    pub fn is_in_f2(self) -> bool {
        matches!(self, Zero | One)
    }

    pub fn pow(self, mut e: u32) -> F4Elem {
        let mut acc = One;
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl std::ops::Add for F4Elem {
    type Output = F4Elem;
    // characteristic 2: addition is coefficientwise xor
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, other: F4Elem) -> F4Elem {
        F4Elem::from_bits(self.to_bits() ^ other.to_bits())
    }
}

impl std::ops::Mul for F4Elem {
    type Output = F4Elem;
    fn mul(self, other: F4Elem) -> F4Elem {
        MUL_TABLE[self.to_bits() as usize][other.to_bits() as usize]
    }
}

impl fmt::Display for F4Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zero => write!(f, "0"),
            One => write!(f, "1"),
            Alpha => write!(f, "a"),
            AlphaPlusOne => write!(f, "a+1"),
        }
    }
}

/// Outcome of re-deriving the F_4 tables from polynomial arithmetic.
#[derive(Debug, Clone)]
pub struct F4TableReport {
    pub sums_checked: u32,
    pub products_checked: u32,
    pub frobenius_ok: bool,
    pub inverses_ok: bool,
    pub ok: bool,
}

/// Verify every table entry against arithmetic in F_2[x]/(x^2 + x + 1):
/// an element `b0 + b1*x` multiplies out with `x^2` reduced to `x + 1`.
pub fn f4_table_check() -> F4TableReport {
    let poly_mul = |p: u8, q: u8| -> u8 {
        let mut raw = 0u8; // coefficients of 1, x, x^2 as bits 0..2
        for i in 0..2 {
            for j in 0..2 {
                if p >> i & 1 == 1 && q >> j & 1 == 1 {
                    raw ^= 1 << (i + j);
                }
            }
        }
        let ones = (raw & 1) ^ (raw >> 2 & 1);
        let xs = (raw >> 1 & 1) ^ (raw >> 2 & 1);
        ones | xs << 1
    };
    let mut sums = 0;
    let mut products = 0;
    let mut ok = true;
    for p in F4Elem::all() {
        for q in F4Elem::all() {
            ok &= (p + q).to_bits() == p.to_bits() ^ q.to_bits();
            sums += 1;
            ok &= (p * q).to_bits() == poly_mul(p.to_bits(), q.to_bits());
            products += 1;
        }
    }
    let frobenius_ok = F4Elem::all()
        .iter()
        .all(|&p| p.frobenius() == F4Elem::from_bits(poly_mul(p.to_bits(), p.to_bits())))
        && Alpha.frobenius() == AlphaPlusOne
        && One.frobenius() == One;
    let inverses_ok = Alpha * AlphaPlusOne == One && One * One == One;
    F4TableReport {
        sums_checked: sums,
        products_checked: products,
        frobenius_ok,
        inverses_ok,
        ok: ok && frobenius_ok && inverses_ok,
    }
}

/// Vector over F_2 of length at most 64, packed into one word.
/// Coordinate 0 is the first character of the bit-string form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Vec {
    len: u32,
    bits: u64,
}

impl F2Vec {
    pub fn zero(len: u32) -> Result<Self, ModpError> {
        if len > 64 {
            return Err(ModpError::LengthTooLarge(len));
        }
        Ok(F2Vec { len, bits: 0 })
    }

    pub fn from_bits(len: u32, bits: u64) -> Result<Self, ModpError> {
        if len > 64 {
            return Err(ModpError::LengthTooLarge(len));
        }
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Ok(F2Vec {
            len,
            bits: bits & mask,
        })
    }

    /// Standard basis vector with a 1 in coordinate `i` (0-based).
    pub fn basis(len: u32, i: u32) -> Result<Self, ModpError> {
        if i >= len {
            return Err(ModpError::DimensionMismatch(format!(
                "basis index {i} out of range for length {len}"
            )));
        }
        F2Vec::from_bits(len, 1u64 << i)
    }

    pub fn parse(s: &str) -> Result<Self, ModpError> {
        if s.len() > 64 || s.is_empty() {
            return Err(ModpError::BadBitString(s.into()));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return Err(ModpError::BadBitString(s.into())),
            }
        }
        Ok(F2Vec {
            len: s.len() as u32,
            bits,
        })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: u32) -> bool {
        debug_assert!(i < self.len);
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: u32, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn xor(&self, other: &F2Vec) -> F2Vec {
        debug_assert_eq!(self.len, other.len);
        F2Vec {
            len: self.len,
            bits: self.bits ^ other.bits,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    pub fn bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bitstring())
    }
}

/// Point of projective space over F_2. Over F_2 every nonzero vector is its
/// own unique representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPtF2 {
    coords: F2Vec,
}

/// The canonical representative of the line through `v`.
pub fn projectivize(v: &F2Vec) -> Result<ProjPtF2, ModpError> {
    if v.is_zero() {
        return Err(ModpError::ZeroVector);
    }
    Ok(ProjPtF2 { coords: *v })
}

impl ProjPtF2 {
    pub fn coords(&self) -> &F2Vec {
        &self.coords
    }

    /// All points of P^(len-1)(F_2); there are 2^len - 1 of them.
    pub fn all(len: u32) -> Result<Vec<ProjPtF2>, ModpError> {
        if len > 63 {
            return Err(ModpError::LengthTooLarge(len));
        }
        (1u64..1 << len)
            .map(|bits| projectivize(&F2Vec::from_bits(len, bits)?))
            .collect()
    }
}

impl fmt::Display for ProjPtF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.coords.len())
            .map(|i| if self.coords.get(i) { "1" } else { "0" }.to_string())
            .collect();
        write!(f, "({})", parts.join(":"))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RankReport {
    pub rank: u32,
    pub rows_independent: bool,
}

/// Matrix over F_2 with one packed word per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatF2 {
    cols: u32,
    rows: Vec<u64>,
}

impl MatF2 {
    pub fn from_rows(rows: &[F2Vec]) -> Result<Self, ModpError> {
        if rows.is_empty() {
            return Err(ModpError::DimensionMismatch(
                "matrix needs at least one row; use `empty` for a 0 x g matrix".into(),
            ));
        }
        let cols = rows[0].len();
        for r in rows {
            if r.len() != cols {
                return Err(ModpError::DimensionMismatch(format!(
                    "row length {} differs from {}",
                    r.len(),
                    cols
                )));
            }
        }
        Ok(MatF2 {
            cols,
            rows: rows.iter().map(|r| r.word()).collect(),
        })
    }

    /// Matrix with no rows (the image of a rank-0 group).
    pub fn empty(cols: u32) -> Result<Self, ModpError> {
        if cols > 64 {
            return Err(ModpError::LengthTooLarge(cols));
        }
        Ok(MatF2 { cols, rows: vec![] })
    }

    pub fn identity(n: u32) -> Result<Self, ModpError> {
        if n > 64 {
            return Err(ModpError::LengthTooLarge(n));
        }
        Ok(MatF2 {
            cols: n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        })
    }

    /// Lower-triangular binomial matrix: entry (j, k) is C(j, k) mod 2,
    /// 0-based. By Lucas this is 1 exactly when k's bits sit inside j's.
    pub fn pascal(n: u32) -> Result<Self, ModpError> {
        if n > 64 {
            return Err(ModpError::LengthTooLarge(n));
        }
        let mut rows = Vec::with_capacity(n as usize);
        for j in 0..n as u64 {
            let mut word = 0u64;
            for k in 0..n as u64 {
                if j & k == k {
                    word |= 1 << k;
                }
            }
            rows.push(word);
        }
        Ok(MatF2 { cols: n, rows })
    }

    /// Antidiagonal permutation (coordinate reversal).
    pub fn reversal(n: u32) -> Result<Self, ModpError> {
        if n > 64 {
            return Err(ModpError::LengthTooLarge(n));
        }
        Ok(MatF2 {
            cols: n,
            rows: (0..n).map(|i| 1u64 << (n - 1 - i)).collect(),
        })
    }

    pub fn n_rows(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn n_cols(&self) -> u32 {
        self.cols
    }

    pub fn row(&self, i: u32) -> F2Vec {
        F2Vec {
            len: self.cols,
            bits: self.rows[i as usize],
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = F2Vec> + '_ {
        (0..self.n_rows()).map(|i| self.row(i))
    }

    pub fn rank(&self) -> u32 {
        let mut work = self.rows.clone();
        let mut rank = 0u32;
        for col in 0..self.cols {
            let Some(pos) = (rank as usize..work.len()).find(|&r| work[r] >> col & 1 == 1) else {
                continue;
            };
            work.swap(rank as usize, pos);
            let pivot = work[rank as usize];
            for (r, row) in work.iter_mut().enumerate() {
                if r != rank as usize && *row >> col & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank together with whether the rows, as given, form a basis of the
    /// row space (the map defined on them is injective).
    pub fn rank_and_injectivity(&self) -> RankReport {
        let rank = self.rank();
        RankReport {
            rank,
            rows_independent: rank == self.n_rows(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.n_rows() == self.cols && self.rank() == self.cols
    }

    /// Matrix-vector product; `v` is a column vector of length `cols`.
    pub fn mul_vec(&self, v: &F2Vec) -> Result<F2Vec, ModpError> {
        if v.len() != self.cols {
            return Err(ModpError::DimensionMismatch(format!(
                "vector length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut bits = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            if (row & v.word()).count_ones() & 1 == 1 {
                bits |= 1 << i;
            }
        }
        Ok(F2Vec {
            len: self.n_rows(),
            bits,
        })
    }

    pub fn mul_mat(&self, other: &MatF2) -> Result<MatF2, ModpError> {
        if self.cols != other.n_rows() {
            return Err(ModpError::DimensionMismatch(format!(
                "{} columns against {} rows",
                self.cols,
                other.n_rows()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    if r >> j & 1 == 1 {
                        acc ^= other.rows[j as usize];
                    }
                }
                acc
            })
            .collect();
        Ok(MatF2 {
            cols: other.cols,
            rows,
        })
    }

    /// Every element of the row space, zero included, each exactly once only
    /// when the rows are independent; 2^rows elements are enumerated either
    /// way. Intended for small ranks; callers guard the size.
    pub fn row_space(&self) -> impl Iterator<Item = F2Vec> + '_ {
        let n = self.rows.len();
        assert!(n < 63, "row-space enumeration needs fewer than 63 rows");
        (0u64..1 << n).map(move |mask| {
            let mut acc = 0u64;
            for (i, row) in self.rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc ^= row;
                }
            }
            F2Vec {
                len: self.cols,
                bits: acc,
            }
        })
    }

    pub fn bitstrings(&self) -> Vec<String> {
        self.rows().map(|r| r.bitstring()).collect()
    }
}

impl fmt::Display for MatF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Distinct projective points arising from a set of nonzero vectors.
pub fn projective_set(vectors: &[F2Vec]) -> Result<BTreeSet<ProjPtF2>, ModpError> {
    vectors.iter().map(projectivize).collect()
}
