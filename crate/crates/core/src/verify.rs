//! Closed-form-vs-oracle verification: every implemented polynomial is
//! checked for exact agreement with the region-decomposition integrator at
//! randomized and per-region sample points, and the candidate-table audit
//! is folded into one report.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closedform::{
    audit, block_table, expected_block, expected_multipart, expected_simple, multipart_regions,
    simple_table, ClosedFormAudit,
};
use crate::distribution::StepDensity;
use crate::oracle::exact_expected;
use crate::payoff::{Bid, BlockBid, CostParams, MultipartBid, SimpleBid};
use crate::scalar::Scalar;
use crate::{rat, Rational};

/// Verification settings; defaults match the full protocol.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Random `(b, c_s, c_v)` triples per one-variable format.
    pub random_points: usize,
    /// Interior sample points per multi-part region.
    pub points_per_region: usize,
    /// Cost pairs per multi-part sample point.
    pub cost_pairs: usize,
    /// Random cost pairs for the breakpoint-continuity check.
    pub continuity_pairs: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            random_points: 1000,
            points_per_region: 5,
            cost_pairs: 3,
            continuity_pairs: 100,
            seed: 0x5eed,
        }
    }
}

/// Worst deviations seen in one check section (exactly zero when sound).
#[derive(Debug, Clone, Copy, Default)]
pub struct SectionResult {
    pub checks: usize,
    pub max_deviation: f64,
    pub exact_everywhere: bool,
}

/// Per-region verification outcome.
#[derive(Debug, Clone)]
pub struct RegionCheck {
    pub label: String,
    pub matched_exprs: Vec<usize>,
    pub replaced: bool,
    pub candidate_deviation: f64,
    pub oracle_deviation: f64,
}

/// Full verification report.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub simple_random: SectionResult,
    pub block_random: SectionResult,
    pub regions: Vec<RegionCheck>,
    pub continuity: SectionResult,
    pub unclaimed_exprs: Vec<usize>,
    pub audit: ClosedFormAudit,
}

impl VerifyReport {
    /// True iff every implemented polynomial matched the oracle exactly.
    pub fn passed(&self) -> bool {
        self.simple_random.exact_everywhere
            && self.block_random.exact_everywhere
            && self.continuity.exact_everywhere
            && self.regions.iter().all(|r| r.oracle_deviation == 0.0)
    }
}

fn random_rat<R: Rng>(rng: &mut R, den: i64, max_num: i64) -> Rational {
    rat(rng.gen_range(0..=max_num), den)
}

/// Run the verification protocol.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let density = StepDensity::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut simple_random = SectionResult { exact_everywhere: true, ..Default::default() };
    let mut block_random = SectionResult { exact_everywhere: true, ..Default::default() };
    for _ in 0..config.random_points {
        let costs = CostParams::new(
            random_rat(&mut rng, 1024, 1024),
            random_rat(&mut rng, 2048, 1024),
        )
        .expect("nonnegative");

        let b = random_rat(&mut rng, 1024, 1024);
        let closed = expected_simple(&b, &costs).expect("b in [0,1]");
        let oracle = exact_expected(
            &Bid::Simple(SimpleBid::symmetric(b).expect("valid")),
            &costs,
            &density,
        );
        record(&mut simple_random, &closed, &oracle);

        let b = random_rat(&mut rng, 1024, 2048);
        let closed = expected_block(&b, &costs).expect("b in [0,2]");
        let oracle = exact_expected(
            &Bid::Block(BlockBid::new(b).expect("valid")),
            &costs,
            &density,
        );
        record(&mut block_random, &closed, &oracle);
    }

    let audit = audit().clone();
    let mut regions = Vec::with_capacity(21);
    for region in multipart_regions() {
        let audit_row = &audit.regions[region.index];
        let mut oracle_deviation = 0.0f64;
        for p in 0..config.points_per_region {
            // interior points spread across the region
            let t = rat(2 * p as i64 + 1, 2 * config.points_per_region as i64);
            let bv = &region.bv_lo + (&region.bv_hi - &region.bv_lo) * &t;
            let (lo, hi) = region.bs_bounds_at(&bv);
            let bs = &lo + (&hi - &lo) * rat(2 * (p as i64 % 3) + 1, 7);
            for k in 0..config.cost_pairs {
                let costs = CostParams::new(rat(k as i64, 4), rat(k as i64, 8)).expect("valid");
                let closed = expected_multipart(&bs, &bv, &costs).expect("interior point");
                let oracle = exact_expected(
                    &Bid::Multipart(MultipartBid::new(bs.clone(), bv.clone()).expect("valid")),
                    &costs,
                    &density,
                );
                let dev = num::abs(closed - oracle).as_f64();
                oracle_deviation = oracle_deviation.max(dev);
            }
        }
        regions.push(RegionCheck {
            label: region.label(),
            matched_exprs: audit_row.matched_exprs.clone(),
            replaced: audit_row.replaced,
            candidate_deviation: audit_row.candidate_deviation,
            oracle_deviation,
        });
    }

    let mut continuity = SectionResult { exact_everywhere: true, ..Default::default() };
    for _ in 0..config.continuity_pairs {
        let costs = CostParams::new(
            random_rat(&mut rng, 512, 512),
            random_rat(&mut rng, 1024, 512),
        )
        .expect("nonnegative");
        for table in [simple_table(), block_table()] {
            let gap = table.continuity_gap(&costs);
            continuity.checks += 1;
            if !gap.is_zero() {
                continuity.exact_everywhere = false;
                continuity.max_deviation = continuity.max_deviation.max(gap.as_f64());
            }
        }
    }

    VerifyReport {
        simple_random,
        block_random,
        regions,
        continuity,
        unclaimed_exprs: audit.unclaimed_exprs.clone(),
        audit,
    }
}

fn record(section: &mut SectionResult, closed: &Rational, oracle: &Rational) {
    section.checks += 1;
    if closed != oracle {
        section.exact_everywhere = false;
        let dev = num::abs(closed - oracle).as_f64();
        section.max_deviation = section.max_deviation.max(dev);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_protocol_passes() {
        let report = run(&VerifyConfig {
            random_points: 40,
            points_per_region: 2,
            cost_pairs: 2,
            continuity_pairs: 10,
            seed: 7,
        });
        assert!(report.passed());
        assert_eq!(report.simple_random.checks, 40);
        assert!(report.unclaimed_exprs.is_empty());
        assert_eq!(report.regions.len(), 21);
        assert!(report.regions.iter().all(|r| r.oracle_deviation == 0.0));
    }
}
