//! Cost-parameter sweeps: optimal bids and profits for every format over a
//! rectangular `(c_s, c_v)` grid, serialized as a deterministic CSV.

use num::Zero;
use rayon::prelude::*;

use crate::optimizer::{optimize_block, optimize_multipart, optimize_simple, CandidateBid,
    OptimizationResult};
use crate::payoff::{BidFormat, CostParams};
use crate::scalar::{format_sig12, Scalar};
use crate::{rat, Error, Rational, Result};

/// Grid specification for a sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub cs_lo: Rational,
    pub cs_hi: Rational,
    pub cs_step: Rational,
    pub cv_lo: Rational,
    pub cv_hi: Rational,
    pub cv_step: Rational,
    /// Formats to compute, in [`BidFormat::ALL`] order.
    pub formats: Vec<BidFormat>,
}

impl Default for SweepSpec {
    /// c_s over [0, 1] in steps of 1/20 and c_v over [0, 1/2] in steps of
    /// 1/40: a 21×21 grid covering the economically active region (at
    /// `c_s + 2 c_v = 2` every profit is already nonpositive).
    fn default() -> Self {
        Self {
            cs_lo: rat(0, 1),
            cs_hi: rat(1, 1),
            cs_step: rat(1, 20),
            cv_lo: rat(0, 1),
            cv_hi: rat(1, 2),
            cv_step: rat(1, 40),
            formats: BidFormat::ALL.to_vec(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.cs_lo > self.cs_hi || self.cv_lo > self.cv_hi {
            return Err(Error::OutOfRange("sweep range has lo > hi".into()));
        }
        if self.cs_step <= Rational::zero() || self.cv_step <= Rational::zero() {
            return Err(Error::OutOfRange("sweep step must be positive".into()));
        }
        if self.formats.is_empty() {
            return Err(Error::OutOfRange("sweep needs at least one format".into()));
        }
        Ok(())
    }

    fn axis(lo: &Rational, hi: &Rational, step: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut k = 0i64;
        loop {
            let v = lo + rat(k, 1) * step;
            if v > *hi {
                break;
            }
            out.push(v);
            k += 1;
        }
        out
    }

    /// Grid points in c_s-major order.
    pub fn points(&self) -> Vec<(Rational, Rational)> {
        let cs_axis = Self::axis(&self.cs_lo, &self.cs_hi, &self.cs_step);
        let cv_axis = Self::axis(&self.cv_lo, &self.cv_hi, &self.cv_step);
        let mut out = Vec::with_capacity(cs_axis.len() * cv_axis.len());
        for cs in &cs_axis {
            for cv in &cv_axis {
                out.push((cs.clone(), cv.clone()));
            }
        }
        out
    }
}

/// One sweep row; formats excluded from the spec stay `None`.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub cs: Rational,
    pub cv: Rational,
    pub simple: Option<OptimizationResult>,
    pub block: Option<OptimizationResult>,
    pub multipart: Option<OptimizationResult>,
    /// Exact `E*_S / E*_M` (1 when both are 0); needs both formats.
    pub ratio_simple_multipart: Option<Rational>,
    /// Exact `E*_B / E*_M` (1 when both are 0); needs both formats.
    pub ratio_block_multipart: Option<Rational>,
    /// Best included format; ties multipart > block > simple.
    pub best: BidFormat,
}

fn exact_ratio(num: &Rational, den: &Rational) -> Rational {
    if num.is_zero() && den.is_zero() {
        rat(1, 1)
    } else {
        num / den
    }
}

fn row_at(cs: Rational, cv: Rational, formats: &[BidFormat]) -> SweepRow {
    let costs = CostParams::new(cs.clone(), cv.clone()).expect("sweep grid is nonnegative");
    let simple = formats
        .contains(&BidFormat::Simple)
        .then(|| optimize_simple(&costs));
    let block = formats
        .contains(&BidFormat::Block)
        .then(|| optimize_block(&costs));
    let multipart = formats
        .contains(&BidFormat::Multipart)
        .then(|| optimize_multipart(&costs));
    let ratio_simple_multipart = match (&simple, &multipart) {
        (Some(s), Some(m)) => Some(exact_ratio(s.expected(), m.expected())),
        _ => None,
    };
    let ratio_block_multipart = match (&block, &multipart) {
        (Some(b), Some(m)) => Some(exact_ratio(b.expected(), m.expected())),
        _ => None,
    };
    // ties multipart > block > simple
    let mut best: Option<(BidFormat, &Rational)> = None;
    for result in [&multipart, &block, &simple].into_iter().flatten() {
        match best {
            Some((_, value)) if value >= result.expected() => {}
            _ => best = Some((result.format, result.expected())),
        }
    }
    let best = best.expect("at least one format").0;
    SweepRow {
        cs,
        cv,
        simple,
        block,
        multipart,
        ratio_simple_multipart,
        ratio_block_multipart,
        best,
    }
}

/// Run the sweep; rows come back in c_s-major order regardless of the
/// number of worker threads.
pub fn run(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .points()
        .into_par_iter()
        .map(|(cs, cv)| row_at(cs, cv, &spec.formats))
        .collect())
}

/// Fixed CSV header.
pub const CSV_HEADER: &str = "cs,cv,Es,bS,Eb,bB,Em,bsM,bvM,ratio_S_M,ratio_B_M,best";

fn fmt_value(x: &Rational, exact: bool) -> String {
    if exact {
        x.to_string()
    } else {
        format_sig12(x.as_f64())
    }
}

fn push_single(out: &mut Vec<String>, r: &Option<OptimizationResult>, exact: bool) {
    match r {
        Some(r) => {
            out.push(fmt_value(r.expected(), exact));
            match &r.best.bid {
                CandidateBid::Single(b) => out.push(fmt_value(b, exact)),
                CandidateBid::Pair { .. } => unreachable!("single-bid format"),
            }
        }
        None => {
            out.push(String::new());
            out.push(String::new());
        }
    }
}

/// Serialize rows as CSV (byte-deterministic for a given spec and mode).
pub fn write_csv<W: std::io::Write>(rows: &[SweepRow], exact: bool, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        let mut fields = Vec::with_capacity(12);
        fields.push(fmt_value(&row.cs, exact));
        fields.push(fmt_value(&row.cv, exact));
        push_single(&mut fields, &row.simple, exact);
        push_single(&mut fields, &row.block, exact);
        match &row.multipart {
            Some(m) => {
                fields.push(fmt_value(m.expected(), exact));
                match &m.best.bid {
                    CandidateBid::Pair { bs, bv } => {
                        fields.push(fmt_value(bs, exact));
                        fields.push(fmt_value(bv, exact));
                    }
                    CandidateBid::Single(_) => unreachable!("multipart bid"),
                }
            }
            None => fields.extend([String::new(), String::new(), String::new()]),
        }
        for ratio in [&row.ratio_simple_multipart, &row.ratio_block_multipart] {
            fields.push(ratio.as_ref().map(|r| fmt_value(r, exact)).unwrap_or_default());
        }
        fields.push(row.best.name().to_string());
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(formats: Vec<BidFormat>) -> SweepSpec {
        SweepSpec {
            cs_lo: rat(0, 1),
            cs_hi: rat(1, 2),
            cs_step: rat(1, 4),
            cv_lo: rat(0, 1),
            cv_hi: rat(1, 4),
            cv_step: rat(1, 8),
            formats,
        }
    }

    #[test]
    fn default_spec_is_21_by_21() {
        assert_eq!(SweepSpec::default().points().len(), 441);
    }

    #[test]
    fn rows_are_cs_major_and_deterministic() {
        let rows = run(&small_spec(BidFormat::ALL.to_vec())).unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0].cs, rat(0, 1));
        assert_eq!(rows[0].cv, rat(0, 1));
        assert_eq!(rows[1].cv, rat(1, 8));
        assert_eq!(rows[3].cs, rat(1, 4));
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&rows, false, &mut a).unwrap();
        write_csv(&run(&small_spec(BidFormat::ALL.to_vec())).unwrap(), false, &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn origin_row_has_unit_profits_and_unit_ratios() {
        let rows = run(&small_spec(BidFormat::ALL.to_vec())).unwrap();
        let origin = &rows[0];
        assert_eq!(*origin.simple.as_ref().unwrap().expected(), rat(1, 1));
        assert_eq!(*origin.block.as_ref().unwrap().expected(), rat(1, 1));
        assert_eq!(*origin.multipart.as_ref().unwrap().expected(), rat(1, 1));
        assert_eq!(origin.ratio_simple_multipart, Some(rat(1, 1)));
        assert_eq!(origin.ratio_block_multipart, Some(rat(1, 1)));
        assert_eq!(origin.best, BidFormat::Multipart);
    }

    #[test]
    fn column_independence_for_partial_formats() {
        let full = run(&small_spec(BidFormat::ALL.to_vec())).unwrap();
        let only_simple = run(&small_spec(vec![BidFormat::Simple])).unwrap();
        for (f, s) in full.iter().zip(&only_simple) {
            assert_eq!(
                f.simple.as_ref().unwrap().expected(),
                s.simple.as_ref().unwrap().expected()
            );
            assert!(s.block.is_none() && s.multipart.is_none());
            assert_eq!(s.best, BidFormat::Simple);
            assert!(s.ratio_simple_multipart.is_none());
        }
    }

    #[test]
    fn csv_shape_and_header() {
        let rows = run(&small_spec(BidFormat::ALL.to_vec())).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        for line in lines {
            assert_eq!(line.split(',').count(), 12, "line {line:?}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = small_spec(BidFormat::ALL.to_vec());
        spec.cs_step = rat(0, 1);
        assert!(run(&spec).is_err());
        let mut spec = small_spec(BidFormat::ALL.to_vec());
        spec.cs_hi = rat(-1, 1);
        assert!(run(&spec).is_err());
        assert!(run(&small_spec(vec![])).is_err());
    }
}
