//! Closed-form piecewise expected profits for the built-in step density,
//! their derivatives, and the 21-region classification for multi-part bids.
//!
//! The coefficient tables carry transcription risk, so none of them is
//! trusted blindly: at startup every piece is re-derived from the exact
//! integrator by interpolation at interior rational nodes (exact linear
//! algebra, no rounding), compared against the baked candidate table, and
//! replaced by the re-derived polynomial on any mismatch. The audit trail
//! records matches, substitutions, and which candidate expressions went
//! unclaimed.

use std::sync::OnceLock;

use num::{One, Zero};

use crate::distribution::StepDensity;
use crate::oracle::exact_expected;
use crate::payoff::{Bid, BlockBid, CostParams, MultipartBid, SimpleBid};
use crate::poly::{solve_exact, BivarPolynomial, CostAffine, PiecewisePolynomial, Polynomial};
use crate::scalar::Scalar;
use crate::tables;
use crate::{rat, Error, Rational, Result};

/// Which side to take when differentiating exactly at a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    /// Derivative of the piece to the right (the piece owning the point
    /// under the half-open convention).
    #[default]
    Above,
    /// Derivative of the piece ending at the point.
    Below,
}

/// One of the 21 cases partitioning the multi-part bid domain
/// `{ (bv, bs) : 0 <= bv < 1, 0 <= bs < 2 - 2 bv }`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipartRegion {
    /// Position in the enumeration order, 0-based.
    pub index: usize,
    /// Group by `bv` band (1..=4).
    pub group: u8,
    /// Case letter within the group.
    pub sub: char,
    /// `bv` band `[bv_lo, bv_hi)`.
    pub bv_lo: Rational,
    pub bv_hi: Rational,
    /// `bs` lower bound `const + slope·bv`.
    pub bs_lo: (Rational, Rational),
    /// `bs` upper bound `const + slope·bv`.
    pub bs_hi: (Rational, Rational),
    /// Upper `bs` bound printed inclusive (only the first case).
    pub closed_hi: bool,
    /// The region's upper bound is the outer domain edge `bs = 2 - 2 bv`.
    pub closes_domain: bool,
}

impl MultipartRegion {
    /// Case label like `1(a)`.
    pub fn label(&self) -> String {
        format!("{}({})", self.group, self.sub)
    }

    /// The `bs` interval of this region at a given `bv`.
    pub fn bs_bounds_at(&self, bv: &Rational) -> (Rational, Rational) {
        (
            &self.bs_lo.0 + &self.bs_lo.1 * bv,
            &self.bs_hi.0 + &self.bs_hi.1 * bv,
        )
    }
}

/// Full region list in enumeration order.
pub fn multipart_regions() -> &'static [MultipartRegion] {
    static REGIONS: OnceLock<Vec<MultipartRegion>> = OnceLock::new();
    REGIONS.get_or_init(|| {
        let group_sizes = [9usize, 5, 5, 2];
        let mut out = Vec::with_capacity(21);
        for (index, raw) in tables::REGION_BOUNDS.iter().enumerate() {
            let ((vln, vld), (vhn, vhd), (lon, lod, lom), (hin, hid, him)) = *raw;
            let mut group = 1u8;
            let mut offset = index;
            for size in group_sizes {
                if offset < size {
                    break;
                }
                offset -= size;
                group += 1;
            }
            out.push(MultipartRegion {
                index,
                group,
                sub: (b'a' + offset as u8) as char,
                bv_lo: rat(vln, vld),
                bv_hi: rat(vhn, vhd),
                bs_lo: (rat(lon, lod), rat(lom, 1)),
                bs_hi: (rat(hin, hid), rat(him, 1)),
                closed_hi: index == 0,
                closes_domain: hin == 2 && hid == 1 && him == -2,
            });
        }
        out
    })
}

/// Classify `(bv, bs)` within the strict (half-open) 21-case domain.
///
/// Boundary points shared by two cases go to the first case in enumeration
/// order.
pub fn multipart_region(bv: &Rational, bs: &Rational) -> Result<&'static MultipartRegion> {
    let zero = Rational::zero();
    let one = Rational::one();
    let cap = rat(2, 1) - rat(2, 1) * bv;
    if bv < &zero || bv >= &one || bs < &zero || *bs >= cap {
        return Err(Error::OutOfRange(format!(
            "(bv, bs) = ({bv}, {bs}) outside 0 <= bv < 1, 0 <= bs < 2 - 2 bv"
        )));
    }
    for region in multipart_regions() {
        if bv >= &region.bv_lo && bv < &region.bv_hi {
            let (lo, hi) = region.bs_bounds_at(bv);
            let in_hi = if region.closed_hi { bs <= &hi } else { bs < &hi };
            if bs >= &lo && in_hi {
                return Ok(region);
            }
        }
    }
    unreachable!("strict domain is fully covered by the 21 cases")
}

/// Classification extended to the closed domain: the outer edge
/// `bs = 2 - 2 bv` joins the last case of its band, and `bv = 1` joins
/// group 4. Expected profit is continuous, so any adjacent case evaluates
/// identically on shared boundaries.
fn classify_closed_in<S: Scalar>(bs: &S, bv: &S) -> Option<usize> {
    let one = S::one();
    for region in multipart_regions() {
        let bv_lo = S::from_rational(&region.bv_lo);
        let bv_hi = S::from_rational(&region.bv_hi);
        let band_ok =
            (*bv >= bv_lo && *bv < bv_hi) || (region.group == 4 && *bv >= bv_lo && *bv <= one);
        if !band_ok {
            continue;
        }
        let lo = S::from_rational(&region.bs_lo.0)
            + S::from_rational(&region.bs_lo.1) * bv.clone();
        let hi = S::from_rational(&region.bs_hi.0)
            + S::from_rational(&region.bs_hi.1) * bv.clone();
        let in_hi = if region.closed_hi || region.closes_domain {
            *bs <= hi
        } else {
            *bs < hi
        };
        if *bs >= lo && in_hi {
            return Some(region.index);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// candidate tables (baked transcriptions)
// ---------------------------------------------------------------------------

fn coeff(raw: tables::RawCoeff) -> CostAffine {
    let (bn, bd, sn, sd, vn, vd) = raw;
    CostAffine::new(rat(bn, bd), rat(sn, sd), rat(vn, vd))
}

fn candidate_simple_table() -> PiecewisePolynomial {
    PiecewisePolynomial::new(
        tables::SIMPLE_BREAKS.iter().map(|&(n, d)| rat(n, d)).collect(),
        tables::SIMPLE_COEFFS
            .iter()
            .map(|piece| Polynomial::new(piece.iter().map(|&c| coeff(c)).collect()))
            .collect(),
    )
}

fn candidate_block_table() -> PiecewisePolynomial {
    PiecewisePolynomial::new(
        tables::BLOCK_BREAKS.iter().map(|&(n, d)| rat(n, d)).collect(),
        tables::BLOCK_COEFFS
            .iter()
            .map(|piece| Polynomial::new(piece.iter().map(|&c| coeff(c)).collect()))
            .collect(),
    )
}

/// The 21 candidate multi-part polynomials in print order (1-based ids).
fn candidate_multipart_exprs() -> Vec<BivarPolynomial> {
    tables::MULTIPART_EXPRS
        .iter()
        .map(|terms| {
            BivarPolynomial::new(terms.iter().map(|&(i, j, c)| (i, j, coeff(c))).collect())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// oracle-side re-derivation
// ---------------------------------------------------------------------------

const COST_BASIS: [(i64, i64); 3] = [(0, 0), (1, 0), (0, 1)];

fn basis_costs(k: usize) -> CostParams {
    let (cs, cv) = COST_BASIS[k];
    CostParams::new(rat(cs, 1), rat(cv, 1)).expect("basis costs valid")
}

/// Assemble per-power [`CostAffine`] coefficients from the three basis fits.
fn assemble(per_basis: [Vec<Rational>; 3]) -> Vec<CostAffine> {
    (0..per_basis[0].len())
        .map(|p| {
            let base = per_basis[0][p].clone();
            CostAffine::new(
                base.clone(),
                &per_basis[1][p] - &base,
                &per_basis[2][p] - &base,
            )
        })
        .collect()
}

/// Fit one cubic piece of a one-variable expected profit from the oracle.
fn fit_piece<F>(lo: &Rational, hi: &Rational, density: &StepDensity, bid_at: F) -> Polynomial
where
    F: Fn(Rational) -> Bid<Rational>,
{
    let nodes: Vec<Rational> = (0..4)
        .map(|k| lo + (hi - lo) * rat(k + 1, 6))
        .collect();
    let vandermonde: Vec<Vec<Rational>> = nodes
        .iter()
        .map(|b| (0..4).map(|p| pow(b, p)).collect())
        .collect();
    let mut per_basis: [Vec<Rational>; 3] = Default::default();
    for k in 0..3 {
        let costs = basis_costs(k);
        let y: Vec<Rational> = nodes
            .iter()
            .map(|b| exact_expected(&bid_at(b.clone()), &costs, density))
            .collect();
        per_basis[k] = solve_exact(vandermonde.clone(), y);
    }
    Polynomial::new(assemble(per_basis))
}

fn pow(x: &Rational, p: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..p {
        acc *= x;
    }
    acc
}

/// Ten interpolation nodes unisolvent for bivariate cubics: the degree-3
/// Lagrange pattern mapped onto a non-degenerate triangle strictly inside
/// the region.
fn region_nodes(region: &MultipartRegion) -> Vec<(Rational, Rational)> {
    let va = &region.bv_lo + (&region.bv_hi - &region.bv_lo) * rat(1, 7);
    let vb = &region.bv_lo + (&region.bv_hi - &region.bv_lo) * rat(2, 5);
    let bs_at = |v: &Rational, theta: Rational| {
        let (lo, hi) = region.bs_bounds_at(v);
        &lo + (&hi - &lo) * theta
    };
    let p0 = (bs_at(&va, rat(1, 5)), va.clone());
    let p1 = (bs_at(&va, rat(4, 5)), va.clone());
    let p2 = (bs_at(&vb, rat(1, 2)), vb);
    let mut nodes = Vec::with_capacity(10);
    for i in 0..4i64 {
        for j in 0..(4 - i) {
            let (t1, t2) = (rat(i, 3), rat(j, 3));
            nodes.push((
                &p0.0 + &t1 * (&p1.0 - &p0.0) + &t2 * (&p2.0 - &p0.0),
                &p0.1 + &t1 * (&p1.1 - &p0.1) + &t2 * (&p2.1 - &p0.1),
            ));
        }
    }
    nodes
}

const MONOMIALS: [(u8, u8); 10] = [
    (0, 0),
    (0, 1),
    (1, 0),
    (0, 2),
    (1, 1),
    (2, 0),
    (0, 3),
    (1, 2),
    (2, 1),
    (3, 0),
];

/// Fit one region's bivariate cubic from the oracle.
fn fit_region(region: &MultipartRegion, density: &StepDensity) -> BivarPolynomial {
    let nodes = region_nodes(region);
    let design: Vec<Vec<Rational>> = nodes
        .iter()
        .map(|(bs, bv)| {
            MONOMIALS
                .iter()
                .map(|&(i, j)| pow(bs, i as usize) * pow(bv, j as usize))
                .collect()
        })
        .collect();
    let mut per_basis: [Vec<Rational>; 3] = Default::default();
    for k in 0..3 {
        let costs = basis_costs(k);
        let y: Vec<Rational> = nodes
            .iter()
            .map(|(bs, bv)| {
                let bid = Bid::Multipart(
                    MultipartBid::new(bs.clone(), bv.clone()).expect("interior node valid"),
                );
                exact_expected(&bid, &costs, density)
            })
            .collect();
        per_basis[k] = solve_exact(design.clone(), y);
    }
    let coeffs = assemble(per_basis);
    BivarPolynomial::new(
        MONOMIALS
            .iter()
            .zip(coeffs)
            .map(|(&(i, j), c)| (i, j, c))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// audit + verified tables
// ---------------------------------------------------------------------------

/// Audit record for one piece of a one-variable table.
#[derive(Debug, Clone)]
pub struct PieceAudit {
    pub interval: (Rational, Rational),
    /// Candidate transcription agreed with the oracle exactly.
    pub matches_candidate: bool,
    /// Largest |candidate − oracle| over the fit nodes (0 when matched).
    pub candidate_deviation: f64,
}

/// Audit record for one multi-part region.
#[derive(Debug, Clone)]
pub struct RegionAudit {
    pub region_index: usize,
    /// 1-based ids of candidate expressions exactly equal to the oracle fit.
    pub matched_exprs: Vec<usize>,
    /// No candidate matched; the oracle-derived polynomial stands alone.
    pub replaced: bool,
    /// Largest |print-order candidate − oracle| over the fit nodes.
    pub candidate_deviation: f64,
}

/// Outcome of the startup audit of every baked table.
#[derive(Debug, Clone)]
pub struct ClosedFormAudit {
    pub simple_pieces: Vec<PieceAudit>,
    pub block_pieces: Vec<PieceAudit>,
    pub regions: Vec<RegionAudit>,
    /// Candidate expression ids claimed by no region.
    pub unclaimed_exprs: Vec<usize>,
}

struct Tables {
    simple: PiecewisePolynomial,
    block: PiecewisePolynomial,
    simple_deriv: PiecewisePolynomial,
    block_deriv: PiecewisePolynomial,
    multipart: Vec<BivarPolynomial>,
    audit: ClosedFormAudit,
}

fn audit_univariate<F>(
    candidate: &PiecewisePolynomial,
    density: &StepDensity,
    bid_at: F,
) -> (PiecewisePolynomial, Vec<PieceAudit>)
where
    F: Fn(Rational) -> Bid<Rational> + Copy,
{
    let mut pieces = Vec::with_capacity(candidate.pieces.len());
    let mut audits = Vec::with_capacity(candidate.pieces.len());
    for (i, window) in candidate.breakpoints.windows(2).enumerate() {
        let (lo, hi) = (&window[0], &window[1]);
        let fitted = fit_piece(lo, hi, density, bid_at);
        let cand = &candidate.pieces[i];
        let matches = *cand == fitted;
        let deviation = if matches {
            0.0
        } else {
            let probe = CostParams::new(rat(1, 3), rat(1, 5)).expect("valid");
            (0..4)
                .map(|k| {
                    let b = lo + (hi - lo) * rat(k + 1, 6);
                    let delta = cand.eval(&b, &probe) - fitted.eval(&b, &probe);
                    num::abs(delta).as_f64()
                })
                .fold(0.0, f64::max)
        };
        audits.push(PieceAudit {
            interval: (lo.clone(), hi.clone()),
            matches_candidate: matches,
            candidate_deviation: deviation,
        });
        pieces.push(fitted);
    }
    (
        PiecewisePolynomial::new(candidate.breakpoints.clone(), pieces),
        audits,
    )
}

fn build_tables() -> Tables {
    let density = StepDensity::default();
    let (simple, simple_pieces) = audit_univariate(&candidate_simple_table(), &density, |b| {
        Bid::Simple(SimpleBid::symmetric(b).expect("node in [0,1]"))
    });
    let (block, block_pieces) = audit_univariate(&candidate_block_table(), &density, |b| {
        Bid::Block(BlockBid::new(b).expect("node in [0,2]"))
    });

    let candidates = candidate_multipart_exprs();
    let mut multipart = Vec::with_capacity(21);
    let mut regions = Vec::with_capacity(21);
    let mut claimed = vec![false; candidates.len()];
    for region in multipart_regions() {
        let fitted = fit_region(region, &density);
        let matched_exprs: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(_, c)| c.equals(&fitted))
            .map(|(k, _)| k + 1)
            .collect();
        for id in &matched_exprs {
            claimed[id - 1] = true;
        }
        let print_order = &candidates[region.index];
        let deviation = if matched_exprs.contains(&(region.index + 1)) {
            0.0
        } else {
            let probe = CostParams::new(rat(1, 3), rat(1, 5)).expect("valid");
            region_nodes(region)
                .iter()
                .map(|(bs, bv)| {
                    let delta = print_order.eval(bs, bv, &probe) - fitted.eval(bs, bv, &probe);
                    num::abs(delta).as_f64()
                })
                .fold(0.0, f64::max)
        };
        regions.push(RegionAudit {
            region_index: region.index,
            replaced: matched_exprs.is_empty(),
            matched_exprs,
            candidate_deviation: deviation,
        });
        multipart.push(fitted);
    }
    let unclaimed_exprs = claimed
        .iter()
        .enumerate()
        .filter(|(_, c)| !**c)
        .map(|(k, _)| k + 1)
        .collect();

    Tables {
        simple_deriv: simple.derivative(),
        block_deriv: block.derivative(),
        simple,
        block,
        multipart,
        audit: ClosedFormAudit {
            simple_pieces,
            block_pieces,
            regions,
            unclaimed_exprs,
        },
    }
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

/// The startup audit of every closed-form table.
pub fn audit() -> &'static ClosedFormAudit {
    &tables().audit
}

/// The verified piecewise expected profit for simple bidding.
pub fn simple_table() -> &'static PiecewisePolynomial {
    &tables().simple
}

/// The verified piecewise expected profit for block bidding.
pub fn block_table() -> &'static PiecewisePolynomial {
    &tables().block
}

/// The verified per-region polynomials for multi-part bidding.
pub fn multipart_table() -> &'static [BivarPolynomial] {
    &tables().multipart
}

// ---------------------------------------------------------------------------
// evaluators
// ---------------------------------------------------------------------------

fn piece_index_in<S: Scalar>(pw: &PiecewisePolynomial, x: &S) -> Option<usize> {
    let lo = S::from_rational(pw.lo());
    let hi = S::from_rational(pw.hi());
    if *x < lo || *x > hi {
        return None;
    }
    if *x == hi {
        return Some(pw.pieces.len() - 1);
    }
    pw.breakpoints.windows(2).position(|w| {
        *x >= S::from_rational(&w[0]) && *x < S::from_rational(&w[1])
    })
}

fn eval_univariate<S: Scalar>(
    pw: &PiecewisePolynomial,
    x: &S,
    costs: &CostParams,
    what: &str,
) -> Result<S> {
    let idx = piece_index_in(pw, x).ok_or_else(|| {
        Error::OutOfRange(format!(
            "{what} bid {} outside [{}, {}]",
            x.as_f64(),
            pw.lo(),
            pw.hi()
        ))
    })?;
    let (cs, cv) = costs.to_scalars::<S>();
    Ok(pw.pieces[idx].eval_in(x, &cs, &cv))
}

fn eval_derivative<S: Scalar>(
    pw: &PiecewisePolynomial,
    deriv: &PiecewisePolynomial,
    x: &S,
    costs: &CostParams,
    side: Side,
    what: &str,
) -> Result<S> {
    let mut idx = piece_index_in(pw, x).ok_or_else(|| {
        Error::OutOfRange(format!(
            "{what} bid {} outside [{}, {}]",
            x.as_f64(),
            pw.lo(),
            pw.hi()
        ))
    })?;
    if side == Side::Below && idx > 0 && *x == S::from_rational(&pw.breakpoints[idx]) {
        idx -= 1;
    }
    let (cs, cv) = costs.to_scalars::<S>();
    Ok(deriv.pieces[idx].eval_in(x, &cs, &cv))
}

/// Expected profit of a simple bid with `b1 = b2 = b`, `b ∈ [0, 1]`.
pub fn expected_simple<S: Scalar>(b: &S, costs: &CostParams) -> Result<S> {
    eval_univariate(&tables().simple, b, costs, "simple")
}

/// Derivative of [`expected_simple`] in `b` (one-sided at breakpoints).
pub fn d_expected_simple<S: Scalar>(b: &S, costs: &CostParams, side: Side) -> Result<S> {
    let t = tables();
    eval_derivative(&t.simple, &t.simple_deriv, b, costs, side, "simple")
}

/// Expected profit of a block bid, `b ∈ [0, 2]`.
pub fn expected_block<S: Scalar>(b: &S, costs: &CostParams) -> Result<S> {
    eval_univariate(&tables().block, b, costs, "block")
}

/// Derivative of [`expected_block`] in `b` (one-sided at breakpoints).
pub fn d_expected_block<S: Scalar>(b: &S, costs: &CostParams, side: Side) -> Result<S> {
    let t = tables();
    eval_derivative(&t.block, &t.block_deriv, b, costs, side, "block")
}

/// Expected profit of a multi-part bid on the closed domain
/// `bs >= 0, 0 <= bv <= 1, bs + 2 bv <= 2`.
pub fn expected_multipart<S: Scalar>(bs: &S, bv: &S, costs: &CostParams) -> Result<S> {
    let zero = S::zero();
    let two = S::from_ratio(2, 1);
    if *bs < zero
        || *bv < zero
        || *bv > S::one()
        || bs.clone() + two.clone() * bv.clone() > two
    {
        return Err(Error::OutOfRange(format!(
            "(bs, bv) = ({}, {}) outside bs >= 0, 0 <= bv <= 1, bs + 2 bv <= 2",
            bs.as_f64(),
            bv.as_f64()
        )));
    }
    let idx = classify_closed_in(bs, bv).expect("closed domain fully classified");
    let (cs, cv) = costs.to_scalars::<S>();
    Ok(tables().multipart[idx].eval_in(bs, bv, &cs, &cv))
}

/// The multi-part surface at fixed costs, flattened to f64 for tight loops
/// (dense grids, polish steps). Agrees with [`expected_multipart`]`::<f64>`
/// up to rounding of the coefficient conversion.
#[derive(Debug, Clone)]
pub struct MultipartSurface {
    regions: Vec<SurfaceRegion>,
}

#[derive(Debug, Clone)]
struct SurfaceRegion {
    bv_lo: f64,
    bv_hi: f64,
    lo_c: f64,
    lo_m: f64,
    hi_c: f64,
    hi_m: f64,
    group4: bool,
    closed_hi: bool,
    closes_domain: bool,
    /// (bs_pow, bv_pow, coefficient at the fixed costs)
    terms: Vec<(u8, u8, f64)>,
}

impl MultipartSurface {
    pub fn new(costs: &CostParams) -> Self {
        let (cs, cv) = costs.to_scalars::<f64>();
        let tables = tables();
        let regions = multipart_regions()
            .iter()
            .map(|r| SurfaceRegion {
                bv_lo: r.bv_lo.as_f64(),
                bv_hi: r.bv_hi.as_f64(),
                lo_c: r.bs_lo.0.as_f64(),
                lo_m: r.bs_lo.1.as_f64(),
                hi_c: r.bs_hi.0.as_f64(),
                hi_m: r.bs_hi.1.as_f64(),
                group4: r.group == 4,
                closed_hi: r.closed_hi,
                closes_domain: r.closes_domain,
                terms: tables.multipart[r.index]
                    .terms
                    .iter()
                    .map(|(i, j, c)| (*i, *j, c.eval_in(&cs, &cv)))
                    .collect(),
            })
            .collect();
        Self { regions }
    }

    /// Flattened coefficient terms of one region's polynomial.
    pub fn region_terms(&self, region_index: usize) -> &[(u8, u8, f64)] {
        &self.regions[region_index].terms
    }

    /// `None` outside the closed domain.
    pub fn eval(&self, bs: f64, bv: f64) -> Option<f64> {
        if bs < 0.0 || bv < 0.0 || bv > 1.0 || bs + 2.0 * bv > 2.0 {
            return None;
        }
        for r in &self.regions {
            let band_ok = (bv >= r.bv_lo && bv < r.bv_hi) || (r.group4 && bv <= 1.0);
            if !band_ok {
                continue;
            }
            let lo = r.lo_c + r.lo_m * bv;
            let hi = r.hi_c + r.hi_m * bv;
            let in_hi = if r.closed_hi || r.closes_domain { bs <= hi } else { bs < hi };
            if bs >= lo && in_hi {
                let mut acc = 0.0;
                for &(i, j, c) in &r.terms {
                    acc += c * bs.powi(i as i32) * bv.powi(j as i32);
                }
                return Some(acc);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn costs(cs: (i64, i64), cv: (i64, i64)) -> CostParams {
        CostParams::new(rat(cs.0, cs.1), rat(cv.0, cv.1)).unwrap()
    }

    #[test]
    fn audit_confirms_candidate_simple_table() {
        for piece in &audit().simple_pieces {
            assert!(piece.matches_candidate, "piece {:?}", piece.interval);
        }
    }

    #[test]
    fn audit_flags_exactly_one_block_piece() {
        let defective: Vec<usize> = audit()
            .block_pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.matches_candidate)
            .map(|(i, _)| i)
            .collect();
        // the [1/2, 3/4) piece: its b² coefficient is off by 1/8
        assert_eq!(defective, vec![2]);
        let bad = &audit().block_pieces[2];
        assert!(bad.candidate_deviation > 0.01 && bad.candidate_deviation < 0.1);
    }

    #[test]
    fn corrected_block_piece_has_expected_coefficient() {
        // b² coefficient of the verified [1/2,3/4) piece: (3 + 9cs + 18cv)/8
        let piece = &block_table().pieces[2];
        assert_eq!(piece.coeffs[2].base, rat(3, 8));
        assert_eq!(piece.coeffs[2].per_cs, rat(9, 8));
        assert_eq!(piece.coeffs[2].per_cv, rat(9, 4));
    }

    #[test]
    fn audit_maps_every_region_to_its_print_order_expression() {
        for region in &audit().regions {
            assert!(
                region.matched_exprs.contains(&(region.region_index + 1)),
                "region {} matched {:?}",
                region.region_index,
                region.matched_exprs
            );
            assert!(!region.replaced);
            assert_eq!(region.candidate_deviation, 0.0);
        }
        assert!(audit().unclaimed_exprs.is_empty());
    }

    #[test]
    fn duplicate_expressions_are_shared_by_block_reduction_regions() {
        // regions with bs + bv >= 1 collapse to block bidding at bs + 2 bv,
        // so whole groups share one polynomial
        let by_region: Vec<&Vec<usize>> =
            audit().regions.iter().map(|r| &r.matched_exprs).collect();
        assert_eq!(*by_region[6], vec![7, 12]); // 1(g) and 2(c)
        assert_eq!(*by_region[7], vec![8, 13, 18]); // 1(h), 2(d), 3(d)
        assert_eq!(*by_region[8], vec![9, 14, 19, 21]); // 1(i), 2(e), 3(e), 4(b)
    }

    #[test]
    fn expected_simple_examples() {
        let free = costs((0, 1), (0, 1));
        assert_eq!(expected_simple(&rat(0, 1), &free).unwrap(), rat(1, 1));
        assert_eq!(expected_simple(&rat(1, 1), &free).unwrap(), rat(0, 1));
        assert_eq!(
            expected_simple(&rat(1, 2), &costs((1, 10), (1, 10))).unwrap(),
            rat(41, 80) // = 0.5125
        );
        assert!(expected_simple(&rat(3, 2), &free).is_err());
        assert!(expected_simple(&rat(-1, 2), &free).is_err());
    }

    #[test]
    fn expected_simple_in_f64_matches_rational() {
        let c = costs((1, 10), (1, 10));
        let exact = expected_simple(&rat(1, 2), &c).unwrap().as_f64();
        let float = expected_simple(&0.5f64, &c).unwrap();
        assert!((exact - float).abs() < 1e-12);
        let single = expected_simple(&0.5f32, &c).unwrap();
        assert!((exact - single as f64).abs() < 1e-6);
    }

    #[test]
    fn d_expected_simple_examples() {
        // first piece derivative at 0 is c_v
        assert_eq!(
            d_expected_simple(&rat(0, 1), &costs((0, 1), (3, 10)), Side::Above).unwrap(),
            rat(3, 10)
        );
        // stationary point of the first piece: b = 2 c_v / (2 - c_s)
        let c = costs((1, 2), (1, 10));
        let b = rat(2, 10) / (rat(2, 1) - rat(1, 2));
        assert_eq!(d_expected_simple(&b, &c, Side::Above).unwrap(), rat(0, 1));
        // middle piece at b = 1/2: (3/4)(b(6cs - 4) - cs + 4cv) = -21/20
        let c = costs((1, 10), (1, 10));
        assert_eq!(
            d_expected_simple(&rat(1, 2), &c, Side::Above).unwrap(),
            rat(-21, 20)
        );
    }

    #[test]
    fn d_expected_simple_is_one_sided_at_breakpoints() {
        let c = costs((0, 1), (0, 1));
        let below = d_expected_simple(&rat(1, 4), &c, Side::Below).unwrap();
        let above = d_expected_simple(&rat(1, 4), &c, Side::Above).unwrap();
        assert_eq!(below, rat(-1, 4));
        assert_eq!(above, rat(-3, 4));
    }

    #[test]
    fn expected_block_examples() {
        let free = costs((0, 1), (0, 1));
        assert_eq!(expected_block(&rat(0, 1), &free).unwrap(), rat(1, 1));
        assert_eq!(
            expected_block(&rat(2, 1), &costs((1, 3), (1, 7))).unwrap(),
            rat(0, 1)
        );
        assert_eq!(
            expected_block(&rat(1, 1), &costs((1, 5), (1, 10))).unwrap(),
            rat(413, 960)
        );
        assert!(expected_block(&rat(5, 2), &free).is_err());
    }

    #[test]
    fn block_value_at_one_agrees_from_both_pieces() {
        let c = costs((1, 5), (1, 10));
        let left = block_table().pieces[3].eval(&rat(1, 1), &c);
        let right = block_table().pieces[4].eval(&rat(1, 1), &c);
        assert_eq!(left, rat(413, 960));
        assert_eq!(right, rat(413, 960));
    }

    #[test]
    fn d_expected_block_examples() {
        let c = costs((1, 10), (1, 20));
        assert_eq!(
            d_expected_block(&rat(0, 1), &c, Side::Above).unwrap(),
            rat(0, 1)
        );
        // stationary at b = c_s + 2 c_v = 1/5, interior to [0, 1/4)
        assert_eq!(
            d_expected_block(&rat(1, 5), &c, Side::Above).unwrap(),
            rat(0, 1)
        );
    }

    #[test]
    fn block_derivative_is_continuous_at_breakpoints() {
        // dE/db = -(b - cs - 2cv)·f₂(b) with continuous sum-density f₂
        let c = costs((1, 5), (1, 10));
        let t = tables();
        for bp in &t.block.breakpoints[1..8] {
            let below =
                eval_derivative(&t.block, &t.block_deriv, bp, &c, Side::Below, "block").unwrap();
            let above =
                eval_derivative(&t.block, &t.block_deriv, bp, &c, Side::Above, "block").unwrap();
            assert_eq!(below, above, "at b = {bp}");
        }
    }

    #[test]
    fn multipart_region_examples() {
        let r = multipart_region(&rat(1, 10), &rat(1, 10)).unwrap();
        assert_eq!(r.label(), "1(a)");
        let r = multipart_region(&rat(3, 10), &rat(1, 10)).unwrap();
        assert_eq!(r.label(), "2(a)");
        let r = multipart_region(&rat(9, 10), &rat(1, 20)).unwrap();
        assert_eq!(r.label(), "4(a)");
        // boundary bs = 1/4 - bv stays with 1(a) (first matching case)
        let r = multipart_region(&rat(1, 10), &rat(3, 20)).unwrap();
        assert_eq!(r.label(), "1(a)");
        assert!(multipart_region(&rat(1, 1), &rat(0, 1)).is_err());
        assert!(multipart_region(&rat(1, 10), &rat(9, 5)).is_err());
    }

    #[test]
    fn expected_multipart_examples() {
        let free = costs((0, 1), (0, 1));
        assert_eq!(
            expected_multipart(&rat(0, 1), &rat(0, 1), &free).unwrap(),
            rat(1, 1)
        );
        // frozen value, independently derived by the exact integrator
        assert_eq!(
            expected_multipart(&rat(3, 10), &rat(1, 10), &costs((1, 10), (1, 10))).unwrap(),
            rat(11197, 16000)
        );
        for c in [costs((1, 10), (1, 5)), costs((1, 2), (1, 4)), costs((2, 1), (0, 1))] {
            assert_eq!(
                expected_multipart(&rat(0, 1), &rat(0, 1), &c).unwrap(),
                expected_block(&rat(0, 1), &c).unwrap()
            );
        }
        assert!(expected_multipart(&rat(3, 1), &rat(0, 1), &free).is_err());
        assert!(expected_multipart(&rat(0, 1), &rat(9, 8), &free).is_err());
    }

    #[test]
    fn multipart_zero_tail_on_the_outer_edge() {
        // bs + 2 bv = 2 never clears fully; expected profit is exactly 0
        for c in [costs((0, 1), (0, 1)), costs((1, 2), (1, 4)), costs((2, 1), (0, 1))] {
            for (bs, bv) in [
                (rat(2, 1), rat(0, 1)),
                (rat(1, 1), rat(1, 2)),
                (rat(1, 2), rat(3, 4)),
                (rat(0, 1), rat(1, 1)),
            ] {
                assert_eq!(
                    expected_multipart(&bs, &bv, &c).unwrap(),
                    rat(0, 1),
                    "bs={bs} bv={bv}"
                );
            }
        }
    }

    #[test]
    fn tables_are_continuous_at_breakpoints_exactly() {
        for c in [costs((1, 10), (1, 5)), costs((1, 3), (1, 7)), costs((0, 1), (0, 1))] {
            assert_eq!(simple_table().continuity_gap(&c), rat(0, 1));
            assert_eq!(block_table().continuity_gap(&c), rat(0, 1));
        }
    }
}
