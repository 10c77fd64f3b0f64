//! Profit kernels: realized profit for a price scenario under each bid
//! format, plus the unit's generation cost model.
//!
//! All kernels are pure and generic over [`Scalar`], so the same branch
//! logic serves exact rational tests and the f64 Monte Carlo path.

use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

/// Start-up and variable cost of the generating unit.
///
/// Zero is admitted for either component so sweeps can start at the axes.
#[derive(Debug, Clone, PartialEq)]
pub struct CostParams {
    startup: Rational,
    variable: Rational,
}

impl CostParams {
    pub fn new(startup: Rational, variable: Rational) -> Result<Self> {
        use num::Signed;
        if startup.is_negative() || variable.is_negative() {
            return Err(Error::InvalidCost(format!(
                "costs must be nonnegative, got c_s={startup}, c_v={variable}"
            )));
        }
        Ok(Self { startup, variable })
    }

    pub fn startup(&self) -> &Rational {
        &self.startup
    }

    pub fn variable(&self) -> &Rational {
        &self.variable
    }

    /// Both costs converted into the target scalar.
    pub fn to_scalars<S: Scalar>(&self) -> (S, S) {
        (S::from_rational(&self.startup), S::from_rational(&self.variable))
    }
}

/// Clearing prices of the two periods, each in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct PriceScenario<S> {
    pub p1: S,
    pub p2: S,
}

impl<S: Scalar> PriceScenario<S> {
    pub fn new(p1: S, p2: S) -> Result<Self> {
        let (zero, one) = (S::zero(), S::one());
        if p1 < zero || p1 > one || p2 < zero || p2 > one {
            return Err(Error::OutOfRange("prices must lie in [0,1]".into()));
        }
        Ok(Self { p1, p2 })
    }
}

/// Independent per-period price bids, each in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleBid<S> {
    pub b1: S,
    pub b2: S,
}

impl<S: Scalar> SimpleBid<S> {
    pub fn new(b1: S, b2: S) -> Result<Self> {
        let (zero, one) = (S::zero(), S::one());
        if b1 < zero || b1 > one || b2 < zero || b2 > one {
            return Err(Error::InvalidBid("simple bid prices must lie in [0,1]".into()));
        }
        Ok(Self { b1, b2 })
    }

    /// The common-price bid `b1 = b2 = b` the closed forms assume.
    pub fn symmetric(b: S) -> Result<Self> {
        Self::new(b.clone(), b)
    }
}

/// All-or-nothing two-period bid with income threshold `b ∈ [0, 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBid<S> {
    pub b: S,
}

impl<S: Scalar> BlockBid<S> {
    pub fn new(b: S) -> Result<Self> {
        if b < S::zero() || b > S::from_ratio(2, 1) {
            return Err(Error::InvalidBid("block bid must lie in [0,2]".into()));
        }
        Ok(Self { b })
    }
}

/// Bid declaring start-up (`bs`) and per-period variable (`bv`) components.
///
/// Beyond `bs + 2·bv = 2` the bid can never be fully accepted, so that cap
/// is enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipartBid<S> {
    pub bs: S,
    pub bv: S,
}

impl<S: Scalar> MultipartBid<S> {
    pub fn new(bs: S, bv: S) -> Result<Self> {
        if bs < S::zero() {
            return Err(Error::InvalidBid("start-up component must be >= 0".into()));
        }
        if bv < S::zero() || bv > S::one() {
            return Err(Error::InvalidBid("variable component must lie in [0,1]".into()));
        }
        if bs.clone() + S::from_ratio(2, 1) * bv.clone() > S::from_ratio(2, 1) {
            return Err(Error::InvalidBid(
                "bs + 2 bv must not exceed 2 (bid never fully acceptable)".into(),
            ));
        }
        Ok(Self { bs, bv })
    }
}

/// Any bid, tagged by format.
#[derive(Debug, Clone, PartialEq)]
pub enum Bid<S> {
    Simple(SimpleBid<S>),
    Block(BlockBid<S>),
    Multipart(MultipartBid<S>),
}

impl<S: Scalar> Bid<S> {
    pub fn format(&self) -> BidFormat {
        match self {
            Bid::Simple(_) => BidFormat::Simple,
            Bid::Block(_) => BidFormat::Block,
            Bid::Multipart(_) => BidFormat::Multipart,
        }
    }

    /// Convert the bid into another scalar type (exact through rationals).
    pub fn convert<T: Scalar>(&self) -> Bid<T> {
        let c = |s: &S| T::from_rational(&s.to_rational());
        match self {
            Bid::Simple(b) => Bid::Simple(SimpleBid { b1: c(&b.b1), b2: c(&b.b2) }),
            Bid::Block(b) => Bid::Block(BlockBid { b: c(&b.b) }),
            Bid::Multipart(b) => Bid::Multipart(MultipartBid { bs: c(&b.bs), bv: c(&b.bv) }),
        }
    }

    /// Realized profit of this bid under a scenario.
    pub fn profit(&self, s: &PriceScenario<S>, costs: &CostParams) -> S {
        match self {
            Bid::Simple(b) => simple_profit(b, s, costs),
            Bid::Block(b) => block_profit(b, s, costs),
            Bid::Multipart(b) => multipart_profit(b, s, costs),
        }
    }
}

/// Bid format tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BidFormat {
    Simple,
    Block,
    Multipart,
}

impl BidFormat {
    pub const ALL: [BidFormat; 3] = [BidFormat::Simple, BidFormat::Block, BidFormat::Multipart];

    pub fn name(self) -> &'static str {
        match self {
            BidFormat::Simple => "simple",
            BidFormat::Block => "block",
            BidFormat::Multipart => "multipart",
        }
    }
}

impl std::str::FromStr for BidFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simple" => Ok(BidFormat::Simple),
            "block" => Ok(BidFormat::Block),
            "multipart" | "multi-part" => Ok(BidFormat::Multipart),
            other => Err(Error::InvalidBid(format!("unknown bid format {other:?}"))),
        }
    }
}

impl std::fmt::Display for BidFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Generation cost when the unit produces in `periods_on` of the two periods.
pub fn generation_cost(periods_on: u8, costs: &CostParams) -> Result<Rational> {
    use num::Zero;
    match periods_on {
        0 => Ok(Rational::zero()),
        1 => Ok(costs.startup() + costs.variable()),
        2 => Ok(costs.startup() + crate::rat(2, 1) * costs.variable()),
        n => Err(Error::OutOfRange(format!("periods_on must be 0, 1, or 2, got {n}"))),
    }
}

/// Profit of a simple bid: each period accepted independently when the
/// clearing price is at or above the bid price.
pub fn simple_profit<S: Scalar>(bid: &SimpleBid<S>, s: &PriceScenario<S>, costs: &CostParams) -> S {
    let (cs, cv) = costs.to_scalars::<S>();
    let acc1 = s.p1 >= bid.b1;
    let acc2 = s.p2 >= bid.b2;
    match (acc1, acc2) {
        (true, true) => s.p1.clone() + s.p2.clone() - cs - S::from_ratio(2, 1) * cv,
        (true, false) => s.p1.clone() - cs - cv,
        (false, true) => s.p2.clone() - cs - cv,
        (false, false) => S::zero(),
    }
}

/// Profit of a block bid: accepted as a whole when `p1 + p2 >= b`.
pub fn block_profit<S: Scalar>(bid: &BlockBid<S>, s: &PriceScenario<S>, costs: &CostParams) -> S {
    let (cs, cv) = costs.to_scalars::<S>();
    if s.p1.clone() + s.p2.clone() >= bid.b {
        s.p1.clone() + s.p2.clone() - cs - S::from_ratio(2, 1) * cv
    } else {
        S::zero()
    }
}

/// Profit of a multi-part bid, branches evaluated in their defining order:
/// single-period acceptance in period 1, in period 2, then two-period
/// acceptance when both prices cover `bv` and income covers `bs + 2 bv`.
pub fn multipart_profit<S: Scalar>(
    bid: &MultipartBid<S>,
    s: &PriceScenario<S>,
    costs: &CostParams,
) -> S {
    let (cs, cv) = costs.to_scalars::<S>();
    let threshold = bid.bs.clone() + bid.bv.clone();
    if s.p1 >= threshold && s.p2 < bid.bv {
        return s.p1.clone() - cs - cv;
    }
    if s.p1 < bid.bv && s.p2 >= threshold {
        return s.p2.clone() - cs - cv;
    }
    let two = S::from_ratio(2, 1);
    if s.p1 >= bid.bv
        && s.p2 >= bid.bv
        && s.p1.clone() + s.p2.clone() >= bid.bs.clone() + two.clone() * bid.bv.clone()
    {
        return s.p1.clone() + s.p2.clone() - cs - two * cv;
    }
    S::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn costs(cs: (i64, i64), cv: (i64, i64)) -> CostParams {
        CostParams::new(rat(cs.0, cs.1), rat(cv.0, cv.1)).unwrap()
    }

    fn scen(p1: (i64, i64), p2: (i64, i64)) -> PriceScenario<Rational> {
        PriceScenario::new(rat(p1.0, p1.1), rat(p2.0, p2.1)).unwrap()
    }

    #[test]
    fn generation_cost_branches() {
        let c = costs((1, 10), (1, 5));
        assert_eq!(generation_cost(2, &c).unwrap(), rat(1, 2));
        assert_eq!(generation_cost(1, &c).unwrap(), rat(3, 10));
        assert_eq!(generation_cost(0, &c).unwrap(), rat(0, 1));
        assert!(generation_cost(3, &c).is_err());
    }

    #[test]
    fn simple_profit_branches() {
        let c = costs((1, 10), (1, 5));
        let bid = SimpleBid::symmetric(rat(1, 2)).unwrap();
        assert_eq!(simple_profit(&bid, &scen((3, 5), (7, 10)), &c), rat(4, 5));
        assert_eq!(simple_profit(&bid, &scen((3, 5), (2, 5)), &c), rat(3, 10));
        assert_eq!(simple_profit(&bid, &scen((2, 5), (3, 5)), &c), rat(3, 10));
        let never = SimpleBid::symmetric(rat(1, 1)).unwrap();
        assert_eq!(simple_profit(&never, &scen((1, 5), (3, 10)), &c), rat(0, 1));
    }

    #[test]
    fn simple_profit_is_symmetric_under_swap() {
        let c = costs((1, 7), (2, 7));
        for (b1, b2, p1, p2) in [(1, 2, 3, 4), (3, 1, 2, 4), (4, 4, 1, 3), (0, 5, 5, 0)] {
            let bid = SimpleBid::new(rat(b1, 5), rat(b2, 5)).unwrap();
            let swapped = SimpleBid::new(rat(b2, 5), rat(b1, 5)).unwrap();
            assert_eq!(
                simple_profit(&bid, &scen((p1, 5), (p2, 5)), &c),
                simple_profit(&swapped, &scen((p2, 5), (p1, 5)), &c)
            );
        }
    }

    #[test]
    fn block_profit_branches() {
        let c = costs((1, 10), (1, 5));
        let accept = BlockBid::new(rat(1, 1)).unwrap();
        assert_eq!(block_profit(&accept, &scen((1, 2), (3, 5)), &c), rat(3, 5));
        let reject = BlockBid::new(rat(3, 2)).unwrap();
        assert_eq!(block_profit(&reject, &scen((1, 2), (3, 5)), &c), rat(0, 1));
        // boundary p1+p2 = b is accepted
        let boundary = BlockBid::new(rat(11, 10)).unwrap();
        let free = costs((0, 1), (0, 1));
        assert_eq!(block_profit(&boundary, &scen((1, 2), (3, 5)), &free), rat(11, 10));
    }

    #[test]
    fn multipart_profit_branches() {
        let c = costs((1, 10), (1, 10));
        let bid = MultipartBid::new(rat(1, 5), rat(3, 10)).unwrap();
        // period-1-only: p1 >= bs+bv = 1/2, p2 < bv
        assert_eq!(multipart_profit(&bid, &scen((3, 5), (1, 5)), &c), rat(2, 5));
        // period-2-only mirror
        assert_eq!(multipart_profit(&bid, &scen((1, 5), (3, 5)), &c), rat(2, 5));
        // both periods at the inclusive income boundary bs + 2 bv = 4/5
        assert_eq!(multipart_profit(&bid, &scen((2, 5), (2, 5)), &c), rat(1, 2));
        // nothing accepted
        let far = MultipartBid::new(rat(1, 2), rat(2, 5)).unwrap();
        assert_eq!(multipart_profit(&far, &scen((1, 10), (1, 10)), &c), rat(0, 1));
    }

    #[test]
    fn degenerate_multipart_equals_block_at_zero() {
        let c = costs((1, 10), (1, 5));
        let m = MultipartBid::new(rat(0, 1), rat(0, 1)).unwrap();
        let b = BlockBid::new(rat(0, 1)).unwrap();
        for (p1, p2) in [(0, 1), (3, 10), (1, 2), (1, 1)] {
            let s = scen((p1, 10), (p2, 10));
            assert_eq!(multipart_profit(&m, &s, &c), block_profit(&b, &s, &c));
        }
    }

    #[test]
    fn kernels_work_in_f64() {
        let c = costs((1, 10), (1, 5));
        let bid = SimpleBid::<f64>::symmetric(0.5).unwrap();
        let s = PriceScenario::new(0.6, 0.7).unwrap();
        assert!((simple_profit(&bid, &s, &c) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn constructors_validate() {
        assert!(CostParams::new(rat(-1, 2), rat(0, 1)).is_err());
        assert!(SimpleBid::symmetric(rat(3, 2)).is_err());
        assert!(BlockBid::new(rat(5, 2)).is_err());
        assert!(MultipartBid::new(rat(3, 2), rat(1, 2)).is_err());
        assert!(MultipartBid::new(rat(0, 1), rat(9, 8)).is_err());
        assert!(PriceScenario::new(rat(1, 2), rat(-1, 2)).is_err());
    }
}
