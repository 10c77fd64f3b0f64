//! Expected-profit maximization per bid format, and the format comparison.
//!
//! Each optimizer enumerates an explicit candidate set — interval endpoints,
//! piece breakpoints, stationary points, plus (for the two-variable case)
//! coarse-grid and polished points — and returns the exact-rational argmax
//! with the full audit trail. Candidates found by floating-point root
//! solving are snapped to their exact f64 rational value and re-evaluated
//! exactly, so comparisons and tie-breaks are deterministic.

use num::{One, Zero};

use crate::closedform::{
    expected_block, expected_multipart, expected_simple, multipart_regions, MultipartRegion,
    MultipartSurface,
};
use crate::payoff::{BidFormat, CostParams};
use crate::poly::BivarPolynomial;
use crate::scalar::Scalar;
use crate::{rat, Rational};

/// How a candidate entered the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Domain endpoint.
    Endpoint,
    /// Piece or region breakpoint (including region corners and edges).
    Breakpoint,
    /// Zero of a derivative (interior or along a boundary segment).
    Stationary,
    /// Best point of the coarse search grid.
    Grid,
    /// Result of local ascent from the best raw candidate.
    Polished,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Endpoint => "endpoint",
            Provenance::Breakpoint => "breakpoint",
            Provenance::Stationary => "stationary",
            Provenance::Grid => "grid",
            Provenance::Polished => "polished",
        }
    }
}

/// Bid value(s) of one candidate.
#[derive(Debug, Clone, PartialEq)]
pub enum CandidateBid {
    /// Common price `b` (simple) or income threshold `b` (block).
    Single(Rational),
    /// Multi-part components.
    Pair { bs: Rational, bv: Rational },
}

impl CandidateBid {
    fn sort_key(&self) -> (Rational, Rational) {
        match self {
            CandidateBid::Single(b) => (b.clone(), Rational::zero()),
            CandidateBid::Pair { bs, bv } => (bs.clone(), bv.clone()),
        }
    }
}

/// One examined candidate with its exact expected profit.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub bid: CandidateBid,
    pub expected: Rational,
    pub provenance: Provenance,
}

/// Outcome of one format's maximization.
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub format: BidFormat,
    pub best: Candidate,
    /// All candidates examined, in discovery order.
    pub candidates: Vec<Candidate>,
}

impl OptimizationResult {
    pub fn expected(&self) -> &Rational {
        &self.best.expected
    }
}

/// Pick the argmax; ties go to the (lexicographically) smallest bid.
fn pick_best(format: BidFormat, candidates: Vec<Candidate>) -> OptimizationResult {
    let best = candidates
        .iter()
        .max_by(|a, b| {
            a.expected
                .cmp(&b.expected)
                .then_with(|| b.bid.sort_key().cmp(&a.bid.sort_key()))
        })
        .expect("candidate set never empty")
        .clone();
    OptimizationResult { format, best, candidates }
}

fn push_unique(candidates: &mut Vec<Candidate>, c: Candidate) {
    if !candidates.iter().any(|e| e.bid == c.bid) {
        candidates.push(c);
    }
}

/// Maximize the simple-bid expected profit over `b ∈ [0, 1]`.
///
/// Candidates: the endpoints, the piece breakpoints 1/4 and 3/4, and each
/// piece's stationary point when it falls inside its own piece.
pub fn optimize_simple(costs: &CostParams) -> OptimizationResult {
    let table = crate::closedform::simple_table();
    let mut candidates = Vec::new();
    let eval = |b: &Rational| expected_simple(b, costs).expect("candidate in [0,1]");
    for (b, provenance) in [
        (rat(0, 1), Provenance::Endpoint),
        (rat(1, 4), Provenance::Breakpoint),
        (rat(3, 4), Provenance::Breakpoint),
        (rat(1, 1), Provenance::Endpoint),
    ] {
        push_unique(
            &mut candidates,
            Candidate { expected: eval(&b), bid: CandidateBid::Single(b), provenance },
        );
    }
    for root in rational_stationary_points(table, costs) {
        push_unique(
            &mut candidates,
            Candidate {
                expected: eval(&root),
                bid: CandidateBid::Single(root),
                provenance: Provenance::Stationary,
            },
        );
    }
    pick_best(BidFormat::Simple, candidates)
}

/// Exact stationary points of a piecewise quadratic, filtered to lie inside
/// their own piece.
fn rational_stationary_points(
    table: &crate::poly::PiecewisePolynomial,
    costs: &CostParams,
) -> Vec<Rational> {
    let deriv = table.derivative();
    let mut out = Vec::new();
    for (i, window) in table.breakpoints.windows(2).enumerate() {
        let d = &deriv.pieces[i];
        // linear derivative c0 + c1·b
        let c0 = d.coeffs[0].eval(costs);
        let c1 = d.coeffs.get(1).map(|c| c.eval(costs)).unwrap_or_else(Rational::zero);
        if c1.is_zero() {
            continue;
        }
        let root = -c0 / c1;
        let last = i + 1 == table.pieces.len();
        let inside = root >= window[0] && (root < window[1] || (last && root == window[1]));
        if inside {
            out.push(root);
        }
    }
    out
}

/// Maximize the block-bid expected profit over `b ∈ [0, 2]`.
///
/// Candidates: the endpoints, every quarter breakpoint, the threshold
/// `c_s + 2 c_v` (skipped when outside [0, 2]), and defensively all real
/// stationary points of each cubic piece lying inside their piece.
pub fn optimize_block(costs: &CostParams) -> OptimizationResult {
    let table = crate::closedform::block_table();
    let deriv = table.derivative();
    let mut candidates = Vec::new();
    let eval = |b: &Rational| expected_block(b, costs).expect("candidate in [0,2]");
    for k in 0..=8 {
        let b = rat(k, 4);
        let provenance = if k == 0 || k == 8 {
            Provenance::Endpoint
        } else {
            Provenance::Breakpoint
        };
        push_unique(
            &mut candidates,
            Candidate { expected: eval(&b), bid: CandidateBid::Single(b), provenance },
        );
    }
    let threshold = costs.startup() + rat(2, 1) * costs.variable();
    if threshold >= Rational::zero() && threshold <= rat(2, 1) {
        push_unique(
            &mut candidates,
            Candidate {
                expected: eval(&threshold),
                bid: CandidateBid::Single(threshold),
                provenance: Provenance::Stationary,
            },
        );
    }
    let (cs_f, cv_f) = costs.to_scalars::<f64>();
    for (i, window) in table.breakpoints.windows(2).enumerate() {
        let (lo, hi) = (&window[0], &window[1]);
        let last = i + 1 == table.pieces.len();
        for root in deriv.pieces[i].roots_f64(cs_f, cv_f) {
            if !root.is_finite() {
                continue;
            }
            let r = root.to_rational();
            let inside = r >= *lo && (r < *hi || (last && r == *hi));
            if inside {
                push_unique(
                    &mut candidates,
                    Candidate {
                        expected: eval(&r),
                        bid: CandidateBid::Single(r),
                        provenance: Provenance::Stationary,
                    },
                );
            }
        }
    }
    pick_best(BidFormat::Block, candidates)
}

/// Search configuration for [`optimize_multipart`].
const GRID_STEP_DEN: i64 = 64;
const POLISH_MIN_STEP: f64 = 1e-12;
const NEWTON_ITERS: usize = 40;

/// Maximize the multi-part expected profit over the closed domain
/// `{ bs >= 0, 0 <= bv <= 1, bs + 2 bv <= 2 }`.
///
/// Per region: interior stationary points of the two-variable cubic (Newton
/// on the gradient from a seed pattern), the best 1/64-grid point, and the
/// optima of the cubic restriction along each boundary segment; the best
/// candidate is then polished by step-halving ascent. Ties break toward
/// lexicographically smaller `(bs, bv)`.
pub fn optimize_multipart(costs: &CostParams) -> OptimizationResult {
    let tables = crate::closedform::multipart_table();
    let (cs_f, cv_f) = costs.to_scalars::<f64>();
    let mut candidates = Vec::new();
    let eval_exact = |bs: &Rational, bv: &Rational| -> Rational {
        expected_multipart(bs, bv, costs).expect("candidate in closed domain")
    };

    for region in multipart_regions() {
        let poly = &tables[region.index];

        for (bs, bv) in newton_stationary_points(poly, region, cs_f, cv_f) {
            let (bs_r, bv_r) = (bs.to_rational(), bv.to_rational());
            push_unique(
                &mut candidates,
                Candidate {
                    expected: eval_exact(&bs_r, &bv_r),
                    bid: CandidateBid::Pair { bs: bs_r, bv: bv_r },
                    provenance: Provenance::Stationary,
                },
            );
        }

        if let Some((bs, bv)) = best_grid_point(poly, region, cs_f, cv_f) {
            push_unique(
                &mut candidates,
                Candidate {
                    expected: eval_exact(&bs, &bv),
                    bid: CandidateBid::Pair { bs, bv },
                    provenance: Provenance::Grid,
                },
            );
        }

        for (bs, bv, provenance) in boundary_candidates(poly, region, costs) {
            push_unique(
                &mut candidates,
                Candidate {
                    expected: eval_exact(&bs, &bv),
                    bid: CandidateBid::Pair { bs, bv },
                    provenance,
                },
            );
        }
    }

    // polish the incumbent by local ascent
    let incumbent = candidates
        .iter()
        .max_by(|a, b| {
            a.expected
                .cmp(&b.expected)
                .then_with(|| b.bid.sort_key().cmp(&a.bid.sort_key()))
        })
        .expect("candidates nonempty");
    if let CandidateBid::Pair { bs, bv } = &incumbent.bid {
        let (bs, bv) = polish(bs.as_f64(), bv.as_f64(), costs);
        let (bs_r, bv_r) = (bs.to_rational(), bv.to_rational());
        push_unique(
            &mut candidates,
            Candidate {
                expected: eval_exact(&bs_r, &bv_r),
                bid: CandidateBid::Pair { bs: bs_r, bv: bv_r },
                provenance: Provenance::Polished,
            },
        );
    }
    pick_best(BidFormat::Multipart, candidates)
}

/// Newton iteration on the gradient from a fixed seed pattern; converged
/// points are kept when they land strictly inside the (closed) region.
fn newton_stationary_points(
    poly: &BivarPolynomial,
    region: &MultipartRegion,
    cs: f64,
    cv: f64,
) -> Vec<(f64, f64)> {
    let gx = poly.partial(0);
    let gy = poly.partial(1);
    let gxx = gx.partial(0);
    let gxy = gx.partial(1);
    let gyy = gy.partial(1);
    let ev = |p: &BivarPolynomial, bs: f64, bv: f64| p.eval_in(&bs, &bv, &cs, &cv);

    let v_lo = region.bv_lo.as_f64();
    let v_hi = region.bv_hi.as_f64();
    let mut found: Vec<(f64, f64)> = Vec::new();
    for tv in [0.25, 0.5, 0.75] {
        for ts in [0.25, 0.5, 0.75] {
            let bv0 = v_lo + tv * (v_hi - v_lo);
            let (lo, hi) = bs_bounds_f64(region, bv0);
            let mut bs = lo + ts * (hi - lo);
            let mut bv = bv0;
            let mut converged = false;
            for _ in 0..NEWTON_ITERS {
                let g1 = ev(&gx, bs, bv);
                let g2 = ev(&gy, bs, bv);
                if g1.abs() < 1e-13 && g2.abs() < 1e-13 {
                    converged = true;
                    break;
                }
                let h11 = ev(&gxx, bs, bv);
                let h12 = ev(&gxy, bs, bv);
                let h22 = ev(&gyy, bs, bv);
                let det = h11 * h22 - h12 * h12;
                if det.abs() < 1e-14 {
                    break;
                }
                let dx = (-g1 * h22 + g2 * h12) / det;
                let dy = (-h11 * g2 + h12 * g1) / det;
                bs += dx;
                bv += dy;
                if !bs.is_finite() || !bv.is_finite() || bs.abs() > 10.0 || bv.abs() > 10.0 {
                    break;
                }
            }
            if !converged || bv < v_lo || bv > v_hi {
                continue;
            }
            let (lo, hi) = bs_bounds_f64(region, bv);
            if bs < lo || bs > hi || bs < 0.0 || bv < 0.0 || bv > 1.0 || bs + 2.0 * bv > 2.0 {
                continue;
            }
            if !found
                .iter()
                .any(|(a, b)| (a - bs).abs() < 1e-9 && (b - bv).abs() < 1e-9)
            {
                found.push((bs, bv));
            }
        }
    }
    found
}

fn bs_bounds_f64(region: &MultipartRegion, bv: f64) -> (f64, f64) {
    (
        region.bs_lo.0.as_f64() + region.bs_lo.1.as_f64() * bv,
        region.bs_hi.0.as_f64() + region.bs_hi.1.as_f64() * bv,
    )
}

/// Best point of the 1/64 lattice clipped to the region (f64 scan, exact
/// candidate).
fn best_grid_point(
    poly: &BivarPolynomial,
    region: &MultipartRegion,
    cs: f64,
    cv: f64,
) -> Option<(Rational, Rational)> {
    let mut best: Option<(f64, i64, i64)> = None;
    let mut bv_idx = ceil_div_idx(&region.bv_lo);
    loop {
        let bv = rat(bv_idx, GRID_STEP_DEN);
        if bv >= region.bv_hi {
            break;
        }
        let (lo, hi) = region.bs_bounds_at(&bv);
        let mut bs_idx = ceil_div_idx(&lo);
        loop {
            let bs = rat(bs_idx, GRID_STEP_DEN);
            if bs >= hi {
                break;
            }
            let value = poly.eval_in(
                &(bs_idx as f64 / GRID_STEP_DEN as f64),
                &(bv_idx as f64 / GRID_STEP_DEN as f64),
                &cs,
                &cv,
            );
            if best.map_or(true, |(v, _, _)| value > v) {
                best = Some((value, bs_idx, bv_idx));
            }
            bs_idx += 1;
        }
        bv_idx += 1;
    }
    best.map(|(_, bs_idx, bv_idx)| (rat(bs_idx, GRID_STEP_DEN), rat(bv_idx, GRID_STEP_DEN)))
}

/// Smallest lattice index k with k/64 >= x.
fn ceil_div_idx(x: &Rational) -> i64 {
    use num::ToPrimitive;
    let scaled = x * rat(GRID_STEP_DEN, 1);
    let ceil = scaled.ceil();
    ceil.to_integer().to_i64().expect("grid index fits i64")
}

/// Candidates along the four boundary segments of a region: both segment
/// endpoints plus interior zeros of the restricted cubic's derivative.
fn boundary_candidates(
    poly: &BivarPolynomial,
    region: &MultipartRegion,
    costs: &CostParams,
) -> Vec<(Rational, Rational, Provenance)> {
    let (cs_f, cv_f) = costs.to_scalars::<f64>();
    let mut out = Vec::new();
    let dv = &region.bv_hi - &region.bv_lo;

    // (bs(t), bv(t)) for t in [0,1]: bottom, top, lower-bs, upper-bs edges
    let (lo_b, hi_b) = region.bs_bounds_at(&region.bv_lo);
    let (lo_t, hi_t) = region.bs_bounds_at(&region.bv_hi);
    let segments: [(Rational, Rational, Rational, Rational); 4] = [
        (lo_b.clone(), &hi_b - &lo_b, region.bv_lo.clone(), Rational::zero()),
        (lo_t.clone(), &hi_t - &lo_t, region.bv_hi.clone(), Rational::zero()),
        (lo_b.clone(), &lo_t - &lo_b, region.bv_lo.clone(), dv.clone()),
        (hi_b.clone(), &hi_t - &hi_b, region.bv_lo.clone(), dv),
    ];
    for (x0, dx, y0, dy) in segments {
        let line = poly.restrict_line(&x0, &dx, &y0, &dy);
        let mut points: Vec<(Rational, Provenance)> = vec![
            (Rational::zero(), Provenance::Breakpoint),
            (Rational::one(), Provenance::Breakpoint),
        ];
        for t in line.derivative().roots_f64(cs_f, cv_f) {
            if t.is_finite() && t > 0.0 && t < 1.0 {
                points.push((t.to_rational(), Provenance::Stationary));
            }
        }
        for (t, provenance) in points {
            let bs = &x0 + &dx * &t;
            let bv = &y0 + &dy * &t;
            if in_closed_domain(&bs, &bv) {
                out.push((bs, bv, provenance));
            }
        }
    }
    out
}

fn in_closed_domain(bs: &Rational, bv: &Rational) -> bool {
    bs >= &Rational::zero()
        && bv >= &Rational::zero()
        && bv <= &Rational::one()
        && bs + rat(2, 1) * bv <= rat(2, 1)
}

/// Step-halving local ascent on the f64 surface, axis and diagonal moves.
fn polish(mut bs: f64, mut bv: f64, costs: &CostParams) -> (f64, f64) {
    let value_at = |bs: f64, bv: f64| -> Option<f64> {
        if bs < 0.0 || bv < 0.0 || bv > 1.0 || bs + 2.0 * bv > 2.0 {
            return None;
        }
        expected_multipart(&bs, &bv, costs).ok()
    };
    let mut current = match value_at(bs, bv) {
        Some(v) => v,
        None => return (bs, bv),
    };
    let mut step = 1.0 / GRID_STEP_DEN as f64;
    const DIRS: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 1.0),
        (1.0, -1.0),
        (-1.0, 1.0),
        (-1.0, -1.0),
    ];
    while step >= POLISH_MIN_STEP {
        let mut improved = false;
        for (dx, dy) in DIRS {
            let (nbs, nbv) = (bs + dx * step, bv + dy * step);
            if let Some(v) = value_at(nbs, nbv) {
                if v > current {
                    bs = nbs;
                    bv = nbv;
                    current = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (bs, bv)
}

/// Comparison of the three formats at one cost point.
#[derive(Debug, Clone)]
pub struct FormatComparison {
    pub simple: OptimizationResult,
    pub block: OptimizationResult,
    pub multipart: OptimizationResult,
    /// `E*_S / E*_M`, reported as 1 when both are 0.
    pub ratio_simple_multipart: f64,
    /// `E*_B / E*_M`, reported as 1 when both are 0.
    pub ratio_block_multipart: f64,
    /// Format with the highest optimum; ties multipart > block > simple.
    pub best: BidFormat,
}

fn ratio(num: &Rational, den: &Rational) -> f64 {
    if num.is_zero() && den.is_zero() {
        1.0
    } else if den.is_zero() {
        f64::INFINITY
    } else {
        (num / den).as_f64()
    }
}

/// Run all three optimizers and compare.
pub fn best_format(costs: &CostParams) -> FormatComparison {
    let simple = optimize_simple(costs);
    let block = optimize_block(costs);
    let multipart = optimize_multipart(costs);
    // ties multipart > block > simple
    let mut best = BidFormat::Multipart;
    let mut best_value = multipart.expected().clone();
    if block.expected() > &best_value {
        best = BidFormat::Block;
        best_value = block.expected().clone();
    }
    if simple.expected() > &best_value {
        best = BidFormat::Simple;
    }
    FormatComparison {
        ratio_simple_multipart: ratio(simple.expected(), multipart.expected()),
        ratio_block_multipart: ratio(block.expected(), multipart.expected()),
        simple,
        block,
        multipart,
        best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn costs(cs: (i64, i64), cv: (i64, i64)) -> CostParams {
        CostParams::new(rat(cs.0, cs.1), rat(cv.0, cv.1)).unwrap()
    }

    fn single(r: &OptimizationResult) -> Rational {
        match &r.best.bid {
            CandidateBid::Single(b) => b.clone(),
            other => panic!("expected single bid, got {other:?}"),
        }
    }

    #[test]
    fn simple_free_costs_bids_zero() {
        let r = optimize_simple(&costs((0, 1), (0, 1)));
        assert_eq!(single(&r), rat(0, 1));
        assert_eq!(*r.expected(), rat(1, 1));
    }

    #[test]
    fn simple_prohibitive_costs_never_produce() {
        let r = optimize_simple(&costs((2, 1), (0, 1)));
        assert_eq!(*r.expected(), rat(0, 1));
        assert_eq!(single(&r), rat(1, 1));
    }

    #[test]
    fn simple_interior_middle_piece_optimum_is_found() {
        // at (cs, cv) = (0.2, 0.3) the optimum sits at b = 5/14 inside [1/4, 3/4)
        let r = optimize_simple(&costs((1, 5), (3, 10)));
        assert_eq!(single(&r), rat(5, 14));
        assert!(r
            .candidates
            .iter()
            .any(|c| c.provenance == Provenance::Stationary && c.bid == r.best.bid));
    }

    #[test]
    fn block_free_costs_bids_zero() {
        let r = optimize_block(&costs((0, 1), (0, 1)));
        assert_eq!(single(&r), rat(0, 1));
        assert_eq!(*r.expected(), rat(1, 1));
    }

    #[test]
    fn block_prohibitive_costs_never_produce() {
        let r = optimize_block(&costs((2, 1), (0, 1)));
        assert_eq!(*r.expected(), rat(0, 1));
        assert_eq!(single(&r), rat(2, 1));
    }

    #[test]
    fn block_includes_cost_threshold_candidate() {
        let r = optimize_block(&costs((1, 1), (1, 4)));
        // threshold cs + 2cv = 3/2 is the optimum here
        assert_eq!(single(&r), rat(3, 2));
        assert_eq!(*r.expected(), rat(1, 128));
    }

    #[test]
    fn multipart_free_costs_full_acceptance() {
        let r = optimize_multipart(&costs((0, 1), (0, 1)));
        assert_eq!(*r.expected(), rat(1, 1));
        assert_eq!(
            r.best.bid,
            CandidateBid::Pair { bs: rat(0, 1), bv: rat(0, 1) }
        );
    }

    #[test]
    fn multipart_prohibitive_costs_zero_profit() {
        let r = optimize_multipart(&costs((2, 1), (0, 1)));
        assert_eq!(*r.expected(), rat(0, 1));
    }

    #[test]
    fn multipart_dominates_at_reference_point() {
        let c = costs((1, 2), (1, 4));
        let cmp = best_format(&c);
        assert_eq!(cmp.best, BidFormat::Multipart);
        assert!(cmp.multipart.expected() >= cmp.simple.expected());
        assert!(cmp.multipart.expected() >= cmp.block.expected());
        assert!(cmp.ratio_simple_multipart <= 1.0 + 1e-9);
        assert!(cmp.ratio_block_multipart <= 1.0 + 1e-9);
    }

    #[test]
    fn ties_resolve_to_multipart_and_ratios_to_one() {
        let cmp = best_format(&costs((2, 1), (0, 1)));
        assert_eq!(cmp.best, BidFormat::Multipart);
        assert_eq!(cmp.ratio_simple_multipart, 1.0);
        assert_eq!(cmp.ratio_block_multipart, 1.0);
        let free = best_format(&costs((0, 1), (0, 1)));
        assert_eq!(free.best, BidFormat::Multipart);
    }

    #[test]
    fn optima_are_nonnegative() {
        for (cs, cv) in [(0, 0), (1, 2), (3, 2), (2, 1), (1, 4)] {
            let c = costs((cs, 2), (cv, 4));
            assert!(*optimize_simple(&c).expected() >= rat(0, 1));
            assert!(*optimize_block(&c).expected() >= rat(0, 1));
            assert!(*optimize_multipart(&c).expected() >= rat(0, 1));
        }
    }
}
