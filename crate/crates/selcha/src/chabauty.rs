//! Residue-disk certificates for the mod-2 image of the logarithm on the
//! symmetric square, and the rank criterion they feed. Each certificate logs
//! one valuation bound per monomial of the relevant antiderivatives; the
//! bounds, a tail estimate, and witness evaluations together pin the image
//! of a disk down to an explicit set of projective points, so a verdict can
//! be re-checked from the logged numbers alone.

use crate::curves::{CurveError, LongCurve};
use crate::dyadic::{Dyadic, DyadicError, HalfVal, QuadDyadic, Val};
use crate::modp::{projectivize, F2Vec, MatF2, ModpError, ProjPtF2};
use crate::series::{
    basis_change_matrix, infinity_chart, integrate, pair_disk, BasisChange, IntegralSeries,
    IntegralTerm, SeriesError, TruncSeries,
};
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChabautyError {
    #[error("{disk} disk, component {component}, index {index}: {detail}")]
    CertificateFailure {
        disk: DiskId,
        component: u32,
        index: u32,
        detail: String,
    },
    #[error("tail bound fails at truncation {0}")]
    TailFailure(u32),
    #[error("witness {description:?} landed on {got} instead of {expected}")]
    WitnessMismatch {
        description: String,
        got: String,
        expected: String,
    },
    #[error("Selmer rank {0} exceeds the enumeration limit {MAX_ENUMERATED_RANK}")]
    RankTooLarge(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Precision(#[from] DyadicError),
    #[error(transparent)]
    Linear(#[from] ModpError),
}

/// Residue disks of the symmetric square with rational mod-2 reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskId {
    /// Pairs of points in the disk of the point at infinity.
    Infinity,
    /// Conjugate pairs above x = 0.
    ZeroPair,
    /// Conjugate pairs above x = 1.
    OnePair,
}

impl fmt::Display for DiskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiskId::Infinity => write!(f, "infinity"),
            DiskId::ZeroPair => write!(f, "zero-pair"),
            DiskId::OnePair => write!(f, "one-pair"),
        }
    }
}

/// Valuation audit of one monomial coeff * u^(index+1) / (index+1) of the
/// component-th antiderivative. The net bound is
/// v(coeff) - v(index+1) + index * floor, with floor the minimal valuation
/// of a chart coordinate on the disk.
#[derive(Debug, Clone)]
pub struct TermBound {
    pub component: u32,
    pub index: u32,
    pub exact_zero: bool,
    /// Exact coefficient valuation when visible.
    pub coeff_val: Option<i64>,
    pub coeff_val_lb: i64,
    pub denom_val: u32,
    pub net: Option<HalfVal>,
    pub surviving: bool,
}

/// Exact integer facts covering every index past the explicit log: the net
/// bound is positive at the threshold and nondecreasing beyond it.
#[derive(Debug, Clone)]
pub struct TailVerdict {
    pub threshold: u32,
    pub floor: HalfVal,
    pub base_inequality: bool,
    pub monotone: bool,
    pub holds: bool,
}

/// One evaluated difference quotient pinning an image point.
#[derive(Debug, Clone)]
pub struct Witness {
    pub description: String,
    pub residues: F2Vec,
    pub point: ProjPtF2,
}

/// Complete audit of one disk: term log, tail, image in the disk's own
/// basis, and witnesses hitting every image point.
#[derive(Debug, Clone)]
pub struct DiskCertificate {
    pub disk: DiskId,
    pub genus: u32,
    pub truncation: u32,
    pub floor: HalfVal,
    pub terms: Vec<TermBound>,
    pub surviving: Vec<(u32, u32)>,
    pub tail: TailVerdict,
    pub image: Vec<ProjPtF2>,
    pub witnesses: Vec<Witness>,
}

/// Largest Selmer rank the criterion will enumerate a row space for.
pub const MAX_ENUMERATED_RANK: u32 = 20;

fn fail(disk: DiskId, component: u32, index: u32, detail: impl Into<String>) -> ChabautyError {
    ChabautyError::CertificateFailure {
        disk,
        component,
        index,
        detail: detail.into(),
    }
}

/// Surviving term positions allowed on each disk, with the image points
/// they generate: the constant term of the first component is pinned to 1,
/// every other surviving term ranges freely over F_2.
fn allowed_surviving(disk: DiskId) -> &'static [(u32, u32)] {
    match disk {
        DiskId::Infinity => &[(1, 0)],
        DiskId::ZeroPair | DiskId::OnePair => &[(1, 0), (2, 1)],
    }
}

/// Term log plus the surviving (component, index) positions.
type TermAudit = (Vec<TermBound>, Vec<(u32, u32)>);

fn audit_terms(
    disk: DiskId,
    floor: HalfVal,
    forms: &[TruncSeries<Dyadic>],
) -> Result<TermAudit, ChabautyError> {
    let allowed = allowed_surviving(disk);
    let mut terms = Vec::new();
    let mut surviving = Vec::new();
    for (jj, form) in forms.iter().enumerate() {
        let component = jj as u32 + 1;
        for (i, coeff) in form.coeffs().iter().enumerate() {
            let index = i as u32;
            let denom_val = (index + 1).trailing_zeros();
            if coeff.is_exact_zero() {
                terms.push(TermBound {
                    component,
                    index,
                    exact_zero: true,
                    coeff_val: None,
                    coeff_val_lb: coeff.val_lower_bound(),
                    denom_val,
                    net: None,
                    surviving: false,
                });
                continue;
            }
            let lb = coeff.val_lower_bound();
            if lb < 0 {
                return Err(fail(
                    disk,
                    component,
                    index,
                    format!("coefficient not visibly integral (valuation bound {lb})"),
                ));
            }
            let net = HalfVal::int(lb - i64::from(denom_val)).add(&floor.scale(index as i64));
            let coeff_val = match coeff.valuation() {
                Val::Finite(v) => Some(v),
                Val::Infinite => None,
            };
            let is_allowed = allowed.contains(&(component, index));
            let survives =
                net.is_zero() && is_allowed && coeff_val == Some(0) && coeff.residue2()? == 1;
            if !net.is_strictly_positive() && !survives {
                return Err(fail(
                    disk,
                    component,
                    index,
                    format!("net bound {net} is not positive and the term is not a surviving one"),
                ));
            }
            if survives {
                surviving.push((component, index));
            }
            terms.push(TermBound {
                component,
                index,
                exact_zero: false,
                coeff_val,
                coeff_val_lb: lb,
                denom_val,
                net: Some(net),
                surviving: survives,
            });
        }
    }
    for want in allowed {
        if !surviving.contains(want) {
            return Err(fail(
                disk,
                want.0,
                want.1,
                "expected surviving term is missing",
            ));
        }
    }
    Ok((terms, surviving))
}

/// Exact check that v(coeff) - v(i+1) + i * floor > 0 for every i >= from,
/// granted integral coefficients: with floor = m/2 it suffices that
/// 2^(i m) > (i+1)^2, monotone in i once i >= 2.
fn tail_verdict(from: u32, floor: HalfVal) -> TailVerdict {
    let halves = floor.halves();
    let base_inequality = if halves <= 0 {
        false
    } else {
        let lhs = BigInt::from(1) << (u64::from(from) * halves as u64);
        let rhs = BigInt::from(from) + 1;
        lhs > &rhs * &rhs
    };
    let monotone = from >= 2;
    TailVerdict {
        threshold: from,
        floor,
        base_inequality,
        monotone,
        holds: base_inequality && monotone,
    }
}

fn lift_terms(integral: &IntegralSeries<Dyadic>) -> IntegralSeries<QuadDyadic> {
    IntegralSeries {
        terms: integral
            .terms
            .iter()
            .map(|t| IntegralTerm {
                index: t.index,
                coeff: QuadDyadic::from_dyadic(t.coeff.clone()),
                denom_val: t.denom_val,
            })
            .collect(),
    }
}

fn evaluate_witness(
    integrals: &[IntegralSeries<QuadDyadic>],
    u1: &QuadDyadic,
    u2: &QuadDyadic,
    description: &str,
    expected: &ProjPtF2,
) -> Result<Witness, ChabautyError> {
    let mut bits = 0u64;
    for (jj, integral) in integrals.iter().enumerate() {
        let value = integral.diff_quotient_eval(u1, u2);
        if value.residue2()? == 1 {
            bits |= 1 << jj;
        }
    }
    let residues = F2Vec::from_bits(integrals.len() as u32, bits)?;
    let point = projectivize(&residues).map_err(|_| ChabautyError::WitnessMismatch {
        description: description.to_string(),
        got: "the zero vector".into(),
        expected: expected.to_string(),
    })?;
    if point != *expected {
        return Err(ChabautyError::WitnessMismatch {
            description: description.to_string(),
            got: point.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(Witness {
        description: description.to_string(),
        residues,
        point,
    })
}

/// Image points generated by the surviving terms: the pinned constant gives
/// e_1 and each free surviving term toggles its component independently.
fn image_from_surviving(genus: u32, surviving: &[(u32, u32)]) -> Result<Vec<ProjPtF2>, ModpError> {
    let free: Vec<u32> = surviving
        .iter()
        .filter(|&&(c, i)| (c, i) != (1, 0))
        .map(|&(c, _)| c)
        .collect();
    let mut points = Vec::new();
    for mask in 0..(1u64 << free.len()) {
        let mut v = F2Vec::basis(genus, 0)?;
        for (b, &c) in free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                v = v.xor(&F2Vec::basis(genus, c - 1)?);
            }
        }
        points.push(projectivize(&v)?);
    }
    points.sort();
    points.dedup();
    Ok(points)
}

/// Certify the disk at infinity: both points of a pair vary over the disk
/// of the Weierstrass point at infinity, where the chart coordinate t has
/// valuation at least 1/2.
pub fn certify_disk_infinity(
    h: &LongCurve,
    trunc: usize,
    prec: u32,
) -> Result<DiskCertificate, ChabautyError> {
    h.require_good()?;
    let genus = h.genus();
    let chart = infinity_chart(h, trunc, prec)?;
    let floor = HalfVal::half(1);
    let (terms, surviving) = audit_terms(DiskId::Infinity, floor, &chart.omega)?;
    let tail = tail_verdict(trunc as u32, floor);
    if !tail.holds {
        return Err(ChabautyError::TailFailure(trunc as u32));
    }
    let image = image_from_surviving(genus, &surviving)?;

    let integrals: Vec<_> = chart
        .omega
        .iter()
        .map(integrate)
        .map(|f| lift_terms(&f))
        .collect();
    let two = QuadDyadic::from_i64(2, prec);
    let zero = QuadDyadic::exact_zero();
    let witnesses = vec![evaluate_witness(
        &integrals,
        &two,
        &zero,
        "t1 = 2, t3 = 0",
        &image[0],
    )?];

    Ok(DiskCertificate {
        disk: DiskId::Infinity,
        genus,
        truncation: trunc as u32,
        floor,
        terms,
        surviving,
        tail,
        image,
        witnesses,
    })
}

/// Certify a conjugate-pair disk above x = 0 or x = 1. The x = 1 disk is
/// handled on the translate h(x+1), whose own eta basis the certificate is
/// stated in; x has valuation at least 1 on either disk.
pub fn certify_disk_pair(
    h: &LongCurve,
    disk: DiskId,
    trunc: usize,
    prec: u32,
) -> Result<DiskCertificate, ChabautyError> {
    let curve = match disk {
        DiskId::ZeroPair => h.clone(),
        DiskId::OnePair => h.translate(1),
        DiskId::Infinity => {
            return Err(ChabautyError::DimensionMismatch(
                "pair certification is for the affine disks".into(),
            ))
        }
    };
    curve.require_good()?;
    let genus = curve.genus();
    let expansion = pair_disk(&curve, trunc, prec)?;
    let floor = HalfVal::int(1);
    let (terms, surviving) = audit_terms(disk, floor, &expansion.eta_hat)?;
    let tail = tail_verdict(trunc as u32, floor);
    if !tail.holds {
        return Err(ChabautyError::TailFailure(trunc as u32));
    }
    let image = image_from_surviving(genus, &surviving)?;

    let integrals: Vec<_> = expansion
        .eta_hat
        .iter()
        .map(integrate)
        .map(|f| lift_terms(&f))
        .collect();
    let zero = QuadDyadic::exact_zero();
    let x1 = QuadDyadic::w(prec).mul_exact_int(2);
    let e1 = projectivize(&F2Vec::basis(genus, 0)?)?;
    let e12 = projectivize(&F2Vec::basis(genus, 0)?.xor(&F2Vec::basis(genus, 1)?))?;
    let witnesses = vec![
        evaluate_witness(&integrals, &zero, &zero, "x1 = x2 = 0", &e1)?,
        evaluate_witness(&integrals, &x1, &x1.conj(), "x1 = 2w, x2 = conjugate", &e12)?,
    ];

    Ok(DiskCertificate {
        disk,
        genus,
        truncation: trunc as u32,
        floor,
        terms,
        surviving,
        tail,
        image,
        witnesses,
    })
}

/// The certified image of the symmetric square in P^(g-1)(F_2), written in
/// the omega coordinates via the basis change and, for the x = 1 disk, the
/// binomial matrix translating its eta basis back to x = 0.
#[derive(Debug, Clone)]
pub struct RhoLogImage {
    pub genus: u32,
    pub infinity: DiskCertificate,
    pub zero_pair: DiskCertificate,
    pub one_pair: DiskCertificate,
    pub basis_change: BasisChange,
    pub pascal: MatF2,
    pub image: BTreeSet<ProjPtF2>,
}

impl RhoLogImage {
    pub fn image_set(&self) -> ImageSet {
        ImageSet {
            genus: self.genus,
            points: self.image.clone(),
        }
    }

    pub fn bitstrings(&self) -> Vec<String> {
        self.image.iter().map(|p| p.coords().bitstring()).collect()
    }
}

/// Certified image points, detached from their certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageSet {
    pub genus: u32,
    pub points: BTreeSet<ProjPtF2>,
}

impl ImageSet {
    pub fn from_bitstrings(genus: u32, strings: &[&str]) -> Result<Self, ModpError> {
        let mut points = BTreeSet::new();
        for s in strings {
            let v = F2Vec::parse(s)?;
            if v.len() != genus {
                return Err(ModpError::DimensionMismatch(format!(
                    "image point length {} against genus {genus}",
                    v.len()
                )));
            }
            points.insert(projectivize(&v)?);
        }
        Ok(ImageSet { genus, points })
    }

    pub fn cardinality(&self) -> usize {
        self.points.len()
    }
}

/// Assemble the three disk certificates into one certified image.
pub fn assemble_image(
    h: &LongCurve,
    trunc: usize,
    prec: u32,
) -> Result<RhoLogImage, ChabautyError> {
    let genus = h.genus();
    let infinity = certify_disk_infinity(h, trunc, prec)?;
    let zero_pair = certify_disk_pair(h, DiskId::ZeroPair, trunc, prec)?;
    let one_pair = certify_disk_pair(h, DiskId::OnePair, trunc, prec)?;
    let basis_change = basis_change_matrix(h, trunc, prec)?;
    if !basis_change.det_odd {
        return Err(ChabautyError::DimensionMismatch(
            "basis change is not invertible mod 2".into(),
        ));
    }
    let pascal = MatF2::pascal(genus)?;

    let mut image = BTreeSet::new();
    for p in &infinity.image {
        image.insert(*p);
    }
    for p in &zero_pair.image {
        image.insert(projectivize(&basis_change.mod2.mul_vec(p.coords())?)?);
    }
    for p in &one_pair.image {
        let in_eta = pascal.mul_vec(p.coords())?;
        image.insert(projectivize(&basis_change.mod2.mul_vec(&in_eta)?)?);
    }
    Ok(RhoLogImage {
        genus,
        infinity,
        zero_pair,
        one_pair,
        basis_change,
        pascal,
        image,
    })
}

/// Re-derive every verdict of a disk certificate from the logged numbers
/// alone; true exactly when the stored data is self-consistent.
pub fn recheck_certificate(cert: &DiskCertificate) -> bool {
    let allowed = allowed_surviving(cert.disk);
    let mut seen_surviving = Vec::new();
    for term in &cert.terms {
        if term.exact_zero {
            if term.surviving || term.net.is_some() {
                return false;
            }
            continue;
        }
        if term.coeff_val_lb < 0 {
            return false;
        }
        if let Some(v) = term.coeff_val {
            if v < term.coeff_val_lb {
                return false;
            }
        }
        let expected_denom = (term.index + 1).trailing_zeros();
        if term.denom_val != expected_denom {
            return false;
        }
        let net = HalfVal::int(term.coeff_val_lb - i64::from(term.denom_val))
            .add(&cert.floor.scale(term.index as i64));
        if cert.net_mismatch(term, net) {
            return false;
        }
        if term.surviving {
            let ok = net.is_zero()
                && allowed.contains(&(term.component, term.index))
                && term.coeff_val == Some(0);
            if !ok {
                return false;
            }
            seen_surviving.push((term.component, term.index));
        } else if !net.is_strictly_positive() {
            return false;
        }
    }
    if seen_surviving != cert.surviving {
        return false;
    }
    for want in allowed {
        if !cert.surviving.contains(want) {
            return false;
        }
    }

    let tail = tail_verdict(cert.truncation, cert.floor);
    if !tail.holds
        || tail.base_inequality != cert.tail.base_inequality
        || tail.monotone != cert.tail.monotone
        || cert.tail.threshold != cert.truncation
    {
        return false;
    }

    let expected_image = match image_from_surviving(cert.genus, &cert.surviving) {
        Ok(points) => points,
        Err(_) => return false,
    };
    if expected_image != cert.image {
        return false;
    }
    // every image point must be hit by a witness whose residues match
    cert.image.iter().all(|p| {
        cert.witnesses
            .iter()
            .any(|w| w.point == *p && projectivize(&w.residues).ok() == Some(w.point))
    })
}

impl DiskCertificate {
    fn net_mismatch(&self, term: &TermBound, recomputed: HalfVal) -> bool {
        match term.net {
            Some(stored) => stored.halves() != recomputed.halves(),
            None => true,
        }
    }
}

/// Re-check the three disk certificates and the assembly arithmetic.
pub fn recheck_image(ri: &RhoLogImage) -> bool {
    if !(recheck_certificate(&ri.infinity)
        && recheck_certificate(&ri.zero_pair)
        && recheck_certificate(&ri.one_pair))
    {
        return false;
    }
    if ri.pascal != MatF2::pascal(ri.genus).expect("genus fits") {
        return false;
    }
    if !ri.basis_change.det_odd || !ri.basis_change.mod2.is_invertible() {
        return false;
    }
    let mut expected = BTreeSet::new();
    for p in &ri.infinity.image {
        expected.insert(*p);
    }
    let reassemble = |points: &[ProjPtF2], through_pascal: bool| -> Option<Vec<ProjPtF2>> {
        points
            .iter()
            .map(|p| {
                let v = if through_pascal {
                    ri.pascal.mul_vec(p.coords()).ok()?
                } else {
                    *p.coords()
                };
                projectivize(&ri.basis_change.mod2.mul_vec(&v).ok()?).ok()
            })
            .collect()
    };
    let Some(zero_mapped) = reassemble(&ri.zero_pair.image, false) else {
        return false;
    };
    let Some(one_mapped) = reassemble(&ri.one_pair.image, true) else {
        return false;
    };
    expected.extend(zero_mapped);
    expected.extend(one_mapped);
    expected == ri.image && ri.image.len() <= 5
}

/// 2-Selmer input: the images of a basis of the Selmer group under the map
/// to F_2^g induced by the logarithm.
#[derive(Debug, Clone)]
pub struct SelmerInput {
    pub genus: u32,
    pub rank: u32,
    pub basis: MatF2,
}

/// Parse Selmer data: a header line "g r", then r rows of g bits each.
/// Blank lines and lines starting with '#' are skipped.
pub fn parse_selmer(text: &str) -> Result<SelmerInput, ChabautyError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| ChabautyError::Parse("missing header line \"g r\"".into()))?;
    let mut parts = header.split_whitespace();
    let genus: u32 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ChabautyError::Parse(format!("bad genus in header {header:?}")))?;
    let rank: u32 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ChabautyError::Parse(format!("bad rank in header {header:?}")))?;
    if parts.next().is_some() {
        return Err(ChabautyError::Parse(format!(
            "trailing tokens in header {header:?}"
        )));
    }
    if genus < 2 {
        return Err(ChabautyError::Parse(format!(
            "genus {genus} is below the hyperelliptic range"
        )));
    }
    if rank > 2 * genus {
        return Err(ChabautyError::Parse(format!(
            "rank {rank} exceeds the 2-Selmer bound {}",
            2 * genus
        )));
    }
    let mut rows = Vec::with_capacity(rank as usize);
    for _ in 0..rank {
        let line = lines.next().ok_or_else(|| {
            ChabautyError::Parse(format!("expected {rank} basis rows, found {}", rows.len()))
        })?;
        let v = F2Vec::parse(line).map_err(|e| ChabautyError::Parse(e.to_string()))?;
        if v.len() != genus {
            return Err(ChabautyError::Parse(format!(
                "row {line:?} has length {}, expected {genus}",
                v.len()
            )));
        }
        rows.push(v);
    }
    if let Some(extra) = lines.next() {
        return Err(ChabautyError::Parse(format!(
            "unexpected extra line {extra:?}"
        )));
    }
    let basis = if rows.is_empty() {
        MatF2::empty(genus)?
    } else {
        MatF2::from_rows(&rows)?
    };
    Ok(SelmerInput { genus, rank, basis })
}

/// Outcome of the rank criterion against a certified image.
#[derive(Debug, Clone)]
pub struct CriterionVerdict {
    pub genus: u32,
    pub selmer_rank: u32,
    /// The given Selmer images are linearly independent.
    pub sigma_injective: bool,
    /// No nonzero element of their span projects into the certified image.
    pub disjoint: bool,
    /// Caller-supplied fact: the 2-torsion of the Jacobian is trivial.
    pub torsion_ok: bool,
    pub satisfied: bool,
    /// A span element landing in the image, when disjointness fails.
    pub overlap_witness: Option<ProjPtF2>,
}

/// Decide the criterion: the Selmer basis must be independent, its span
/// must projectivize away from the certified image, and the 2-torsion must
/// be trivial. All three together bound the rational points of the
/// symmetric square by the certified set.
pub fn criterion(
    image: &ImageSet,
    selmer: &SelmerInput,
    torsion_ok: bool,
) -> Result<CriterionVerdict, ChabautyError> {
    if image.genus != selmer.genus {
        return Err(ChabautyError::DimensionMismatch(format!(
            "image genus {} against Selmer genus {}",
            image.genus, selmer.genus
        )));
    }
    if selmer.rank > MAX_ENUMERATED_RANK {
        return Err(ChabautyError::RankTooLarge(selmer.rank));
    }
    let report = selmer.basis.rank_and_injectivity();
    let sigma_injective = report.rows_independent;
    let mut overlap_witness = None;
    for v in selmer.basis.row_space() {
        if v.is_zero() {
            continue;
        }
        let p = projectivize(&v)?;
        if image.points.contains(&p) {
            overlap_witness = Some(p);
            break;
        }
    }
    let disjoint = overlap_witness.is_none();
    Ok(CriterionVerdict {
        genus: image.genus,
        selmer_rank: selmer.rank,
        sigma_injective,
        disjoint,
        torsion_ok,
        satisfied: sigma_injective && disjoint && torsion_ok,
        overlap_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::DEFAULT_PRECISION;

    const PREC: u32 = DEFAULT_PRECISION;
    const TRUNC: usize = 16;

    fn x9_x_1() -> LongCurve {
        LongCurve::from_monomials(4, &[(1, 1), (0, 1)]).unwrap()
    }

    fn frozen_image() -> ImageSet {
        ImageSet::from_bitstrings(4, &["1000", "0001", "0011", "1111", "0101"]).unwrap()
    }

    #[test]
    fn infinity_certificate_for_degree_nine_example() {
        let cert = certify_disk_infinity(&x9_x_1(), TRUNC, PREC).unwrap();
        assert_eq!(cert.surviving, vec![(1, 0)]);
        assert_eq!(cert.image.len(), 1);
        assert_eq!(cert.image[0].to_string(), "(1:0:0:0)");
        assert!(cert.tail.holds);
        assert!(recheck_certificate(&cert));
        // every non-surviving explicit term is strictly positive
        for term in cert.terms.iter().filter(|t| !t.surviving && !t.exact_zero) {
            assert!(term.net.unwrap().is_strictly_positive());
        }
    }

    #[test]
    fn pair_certificates_for_degree_nine_example() {
        for disk in [DiskId::ZeroPair, DiskId::OnePair] {
            let cert = certify_disk_pair(&x9_x_1(), disk, TRUNC, PREC).unwrap();
            assert_eq!(cert.surviving, vec![(1, 0), (2, 1)]);
            let strings: Vec<String> = cert.image.iter().map(|p| p.to_string()).collect();
            assert_eq!(strings, vec!["(1:0:0:0)", "(1:1:0:0)"]);
            assert_eq!(cert.witnesses.len(), 2);
            assert!(recheck_certificate(&cert));
        }
    }

    #[test]
    fn assembled_image_is_the_frozen_five_point_set() {
        let ri = assemble_image(&x9_x_1(), TRUNC, PREC).unwrap();
        assert_eq!(ri.image_set(), frozen_image());
        assert_eq!(ri.image.len(), 5);
        assert!(recheck_image(&ri));
    }

    #[test]
    fn image_is_locally_constant() {
        let h = x9_x_1();
        // same congruence class modulo 2^(4g+2)
        let perturbed = h
            .perturb(&[3, -1, 2, 0, 0, 1, 0, 5, -2], 4 * 4 + 2)
            .unwrap();
        assert!(h.lower_coeffs() != perturbed.lower_coeffs());
        let a = assemble_image(&h, TRUNC, PREC).unwrap();
        let b = assemble_image(&perturbed, TRUNC, PREC).unwrap();
        assert_eq!(a.image, b.image);
    }

    #[test]
    fn tampered_certificates_fail_the_recheck() {
        let mut cert = certify_disk_infinity(&x9_x_1(), TRUNC, PREC).unwrap();
        cert.terms[0].coeff_val_lb = -1;
        assert!(!recheck_certificate(&cert));

        let mut cert = certify_disk_infinity(&x9_x_1(), TRUNC, PREC).unwrap();
        cert.surviving.push((2, 1));
        assert!(!recheck_certificate(&cert));

        let mut cert = certify_disk_pair(&x9_x_1(), DiskId::ZeroPair, TRUNC, PREC).unwrap();
        cert.image.pop();
        assert!(!recheck_certificate(&cert));

        let mut ri = assemble_image(&x9_x_1(), TRUNC, PREC).unwrap();
        let extra = projectivize(&F2Vec::parse("0110").unwrap()).unwrap();
        ri.image.insert(extra);
        assert!(!recheck_image(&ri));
    }

    #[test]
    fn not_good_curves_are_rejected() {
        let h = LongCurve::from_monomials(4, &[(0, 1)]).unwrap();
        assert!(matches!(
            certify_disk_infinity(&h, TRUNC, PREC),
            Err(ChabautyError::Curve(CurveError::NotGood(_)))
        ));
    }

    #[test]
    fn selmer_parsing_round_trip() {
        let sel = parse_selmer("4 2\n1100\n0110\n").unwrap();
        assert_eq!((sel.genus, sel.rank), (4, 2));
        assert_eq!(sel.basis.n_rows(), 2);

        let empty = parse_selmer("# comment\n4 0\n").unwrap();
        assert_eq!(empty.rank, 0);
        assert_eq!(empty.basis.n_rows(), 0);

        assert!(parse_selmer("").is_err());
        assert!(parse_selmer("4").is_err());
        assert!(parse_selmer("4 2\n1100").is_err());
        assert!(parse_selmer("4 2\n1100\n0110\n0001").is_err());
        assert!(parse_selmer("4 1\n110").is_err());
        assert!(parse_selmer("4 9\n").is_err());
        assert!(parse_selmer("4 1\n12a0").is_err());
    }

    #[test]
    fn criterion_on_the_frozen_image() {
        let image = frozen_image();
        // independent rows avoiding the image
        let good = parse_selmer("4 2\n0110\n0010\n").unwrap();
        let verdict = criterion(&image, &good, true).unwrap();
        assert!(verdict.sigma_injective && verdict.disjoint && verdict.satisfied);

        // dependent rows
        let dep = parse_selmer("4 2\n0110\n0110\n").unwrap();
        let verdict = criterion(&image, &dep, true).unwrap();
        assert!(!verdict.sigma_injective && !verdict.satisfied);

        // span meets the image: 0110 + 0101 = 0011, and 0101 on its own
        let overlap = parse_selmer("4 2\n0110\n0101\n").unwrap();
        let verdict = criterion(&image, &overlap, true).unwrap();
        assert!(verdict.sigma_injective);
        assert!(!verdict.disjoint && !verdict.satisfied);
        assert!(image.points.contains(&verdict.overlap_witness.unwrap()));

        // basis rows clear of the image, but their sum 1000 + 0001 = 1001...
        // stays clear too, while 1011 + 0100 = 1111 does not
        let sums = parse_selmer("4 2\n1011\n0100\n").unwrap();
        let verdict = criterion(&image, &sums, true).unwrap();
        assert!(!verdict.disjoint);
        assert_eq!(verdict.overlap_witness.unwrap().to_string(), "(1:1:1:1)");

        // rank 0 passes vacuously
        let trivial = parse_selmer("4 0\n").unwrap();
        let verdict = criterion(&image, &trivial, true).unwrap();
        assert!(verdict.satisfied);

        // torsion input gates the verdict
        let verdict = criterion(&image, &good, false).unwrap();
        assert!(!verdict.satisfied);
    }

    #[test]
    fn criterion_guards() {
        let image = frozen_image();
        let wrong_genus = parse_selmer("5 0\n").unwrap();
        assert!(matches!(
            criterion(&image, &wrong_genus, true),
            Err(ChabautyError::DimensionMismatch(_))
        ));
        let big = SelmerInput {
            genus: 4,
            rank: 21,
            basis: MatF2::empty(4).unwrap(),
        };
        assert!(matches!(
            criterion(&image, &big, true),
            Err(ChabautyError::RankTooLarge(21))
        ));
    }
}
