//! Piecewise and bivariate polynomials whose coefficients are affine in the
//! cost parameters `(c_s, c_v)`, stored as exact rationals.

use num::{One, Zero};

use crate::scalar::Scalar;
use crate::{payoff::CostParams, Rational};

/// An exact coefficient of the form `base + per_cs·c_s + per_cv·c_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostAffine {
    pub base: Rational,
    pub per_cs: Rational,
    pub per_cv: Rational,
}

impl CostAffine {
    pub fn new(base: Rational, per_cs: Rational, per_cv: Rational) -> Self {
        Self { base, per_cs, per_cv }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.per_cs.is_zero() && self.per_cv.is_zero()
    }

    /// Evaluate at given costs in the target scalar.
    pub fn eval_in<S: Scalar>(&self, cs: &S, cv: &S) -> S {
        S::from_rational(&self.base)
            + S::from_rational(&self.per_cs) * cs.clone()
            + S::from_rational(&self.per_cv) * cv.clone()
    }

    /// Exact evaluation at rational costs.
    pub fn eval(&self, costs: &CostParams) -> Rational {
        &self.base + &self.per_cs * costs.startup() + &self.per_cv * costs.variable()
    }

    fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.base + &other.base,
            &self.per_cs + &other.per_cs,
            &self.per_cv + &other.per_cv,
        )
    }

    fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.base * k, &self.per_cs * k, &self.per_cv * k)
    }
}

/// Polynomial in one variable with [`CostAffine`] coefficients in ascending
/// powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<CostAffine>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<CostAffine>) -> Self {
        Self { coeffs }
    }

    pub fn eval_in<S: Scalar>(&self, x: &S, cs: &S, cv: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.eval_in(cs, cv);
        }
        acc
    }

    pub fn eval(&self, x: &Rational, costs: &CostParams) -> Rational {
        let (cs, cv) = (costs.startup().clone(), costs.variable().clone());
        self.eval_in(x, &cs, &cv)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(p, c)| c.scale(&crate::rat(p as i64, 1)))
            .collect();
        Polynomial::new(coeffs)
    }

    /// Real roots of this polynomial at fixed costs, in f64.
    ///
    /// Handles degrees up to 2 after dropping leading (near-)zero
    /// coefficients; this covers the derivative of every piece used here.
    pub fn roots_f64(&self, cs: f64, cv: f64) -> Vec<f64> {
        let mut c: Vec<f64> = self
            .coeffs
            .iter()
            .map(|a| a.eval_in(&cs, &cv))
            .collect();
        while matches!(c.last(), Some(x) if x.abs() < 1e-14) {
            c.pop();
        }
        match c.len() {
            0 | 1 => Vec::new(),
            2 => vec![-c[0] / c[1]],
            3 => {
                let (a, b, k) = (c[2], c[1], c[0]);
                let disc = b * b - 4.0 * a * k;
                if disc < 0.0 {
                    Vec::new()
                } else {
                    let sq = disc.sqrt();
                    // numerically stable quadratic roots
                    let q = -0.5 * (b + b.signum() * sq);
                    let mut roots = vec![q / a];
                    if q != 0.0 {
                        roots.push(k / q);
                    } else {
                        roots.push(0.0);
                    }
                    roots
                }
            }
            _ => panic!("root solving only implemented through quadratics"),
        }
    }
}

/// A piecewise polynomial on consecutive half-open intervals `[a_i, a_{i+1})`,
/// the final interval closed on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    pub breakpoints: Vec<Rational>,
    pub pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Self {
        assert_eq!(breakpoints.len(), pieces.len() + 1, "one piece per interval");
        Self { breakpoints, pieces }
    }

    pub fn lo(&self) -> &Rational {
        &self.breakpoints[0]
    }

    pub fn hi(&self) -> &Rational {
        self.breakpoints.last().expect("nonempty")
    }

    /// Index of the piece containing `x` (None outside the domain).
    pub fn piece_index(&self, x: &Rational) -> Option<usize> {
        if x < self.lo() || x > self.hi() {
            return None;
        }
        if x == self.hi() {
            return Some(self.pieces.len() - 1);
        }
        self.breakpoints
            .windows(2)
            .position(|w| x >= &w[0] && x < &w[1])
    }

    pub fn eval(&self, x: &Rational, costs: &CostParams) -> Option<Rational> {
        self.piece_index(x)
            .map(|i| self.pieces[i].eval(x, costs))
    }

    pub fn derivative(&self) -> PiecewisePolynomial {
        PiecewisePolynomial::new(
            self.breakpoints.clone(),
            self.pieces.iter().map(Polynomial::derivative).collect(),
        )
    }

    /// Largest exact gap between adjacent pieces at their shared breakpoint.
    pub fn continuity_gap(&self, costs: &CostParams) -> Rational {
        let mut worst = Rational::zero();
        for (i, b) in self.breakpoints.iter().enumerate().skip(1) {
            if i == self.pieces.len() {
                break;
            }
            let left = self.pieces[i - 1].eval(b, costs);
            let right = self.pieces[i].eval(b, costs);
            let gap = num::abs(left - right);
            if gap > worst {
                worst = gap;
            }
        }
        worst
    }
}

/// Polynomial in two variables `(x, y)` with [`CostAffine`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPolynomial {
    /// Terms `(x_pow, y_pow, coeff)`, sorted by powers, no zero coefficients.
    pub terms: Vec<(u8, u8, CostAffine)>,
}

impl BivarPolynomial {
    pub fn new(mut terms: Vec<(u8, u8, CostAffine)>) -> Self {
        terms.retain(|(_, _, c)| !c.is_zero());
        terms.sort_by_key(|&(i, j, _)| (i, j));
        Self { terms }
    }

    pub fn eval_in<S: Scalar>(&self, x: &S, y: &S, cs: &S, cv: &S) -> S {
        let mut acc = S::zero();
        for (i, j, c) in &self.terms {
            let mut term = c.eval_in(cs, cv);
            for _ in 0..*i {
                term = term * x.clone();
            }
            for _ in 0..*j {
                term = term * y.clone();
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval(&self, x: &Rational, y: &Rational, costs: &CostParams) -> Rational {
        let (cs, cv) = (costs.startup().clone(), costs.variable().clone());
        self.eval_in(x, y, &cs, &cv)
    }

    /// Partial derivative, `axis` 0 for x and 1 for y.
    pub fn partial(&self, axis: u8) -> BivarPolynomial {
        let terms = self
            .terms
            .iter()
            .filter_map(|(i, j, c)| {
                let (pi, pj) = (*i, *j);
                let pow = if axis == 0 { pi } else { pj };
                if pow == 0 {
                    return None;
                }
                let scaled = c.scale(&crate::rat(pow as i64, 1));
                Some(if axis == 0 {
                    (pi - 1, pj, scaled)
                } else {
                    (pi, pj - 1, scaled)
                })
            })
            .collect();
        BivarPolynomial::new(terms)
    }

    /// Restrict to the affine line `x = x0 + dx·t`, `y = y0 + dy·t`,
    /// producing a univariate polynomial in `t` (exact).
    pub fn restrict_line(
        &self,
        x0: &Rational,
        dx: &Rational,
        y0: &Rational,
        dy: &Rational,
    ) -> Polynomial {
        let max_deg = self
            .terms
            .iter()
            .map(|(i, j, _)| (i + j) as usize)
            .max()
            .unwrap_or(0);
        let mut out = vec![CostAffine::zero(); max_deg + 1];
        for (i, j, c) in &self.terms {
            // (x0 + dx t)^i expanded into powers of t
            let xpows = binomial_powers(x0, dx, *i as usize);
            let ypows = binomial_powers(y0, dy, *j as usize);
            for (pi, xc) in xpows.iter().enumerate() {
                for (pj, yc) in ypows.iter().enumerate() {
                    let k = xc * yc;
                    if !k.is_zero() {
                        out[pi + pj] = out[pi + pj].add(&c.scale(&k));
                    }
                }
            }
        }
        Polynomial::new(out)
    }

    /// Exact polynomial equality (terms already normalized).
    pub fn equals(&self, other: &BivarPolynomial) -> bool {
        self.terms == other.terms
    }
}

/// Coefficients of `(a + b·t)^n` in ascending powers of `t`.
fn binomial_powers(a: &Rational, b: &Rational, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for _ in 0..n {
        let mut next = vec![Rational::zero(); out.len() + 1];
        for (p, c) in out.iter().enumerate() {
            next[p] += c * a;
            next[p + 1] += c * b;
        }
        out = next;
    }
    out
}

/// Solve the square exact linear system `A·x = y` by Gaussian elimination.
///
/// Panics on singular systems; callers control the node layouts, which are
/// unisolvent by construction.
pub fn solve_exact(mut a: Vec<Vec<Rational>>, mut y: Vec<Rational>) -> Vec<Rational> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular interpolation system");
        a.swap(col, pivot);
        y.swap(col, pivot);
        let pv = a[col][col].clone();
        for e in a[col].iter_mut() {
            *e /= pv.clone();
        }
        y[col] /= pv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c2 in 0..n {
                    let delta = &f * &a[col][c2];
                    a[r][c2] -= delta;
                }
                let delta = &f * &y[col];
                y[r] -= delta;
            }
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::payoff::CostParams;
    use crate::rat;

    fn ca(b: (i64, i64), s: (i64, i64), v: (i64, i64)) -> CostAffine {
        CostAffine::new(rat(b.0, b.1), rat(s.0, s.1), rat(v.0, v.1))
    }

    fn costs(cs: (i64, i64), cv: (i64, i64)) -> CostParams {
        CostParams::new(rat(cs.0, cs.1), rat(cv.0, cv.1)).unwrap()
    }

    #[test]
    fn polynomial_eval_and_derivative() {
        // p(b) = (1 - cs) + 2b + 3b²
        let p = Polynomial::new(vec![
            ca((1, 1), (-1, 1), (0, 1)),
            ca((2, 1), (0, 1), (0, 1)),
            ca((3, 1), (0, 1), (0, 1)),
        ]);
        let c = costs((1, 2), (0, 1));
        assert_eq!(p.eval(&rat(1, 2), &c), rat(9, 4)); // 1/2 + 1 + 3/4
        let d = p.derivative();
        assert_eq!(d.eval(&rat(1, 2), &c), rat(5, 1)); // 2 + 3
    }

    #[test]
    fn quadratic_roots() {
        // b² - 3b + 2 -> roots 1, 2
        let p = Polynomial::new(vec![
            ca((2, 1), (0, 1), (0, 1)),
            ca((-3, 1), (0, 1), (0, 1)),
            ca((1, 1), (0, 1), (0, 1)),
        ]);
        let mut r = p.roots_f64(0.0, 0.0);
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn piecewise_indexing_uses_half_open_then_closed() {
        let pw = PiecewisePolynomial::new(
            vec![rat(0, 1), rat(1, 2), rat(1, 1)],
            vec![
                Polynomial::new(vec![ca((0, 1), (0, 1), (0, 1))]),
                Polynomial::new(vec![ca((1, 1), (0, 1), (0, 1))]),
            ],
        );
        assert_eq!(pw.piece_index(&rat(0, 1)), Some(0));
        assert_eq!(pw.piece_index(&rat(1, 2)), Some(1));
        assert_eq!(pw.piece_index(&rat(1, 1)), Some(1));
        assert_eq!(pw.piece_index(&rat(3, 2)), None);
    }

    #[test]
    fn line_restriction_matches_direct_eval() {
        // q(x,y) = x²y + 2x - cv y²
        let q = BivarPolynomial::new(vec![
            (2, 1, ca((1, 1), (0, 1), (0, 1))),
            (1, 0, ca((2, 1), (0, 1), (0, 1))),
            (0, 2, ca((0, 1), (0, 1), (-1, 1))),
        ]);
        let c = costs((0, 1), (1, 3));
        let (x0, dx, y0, dy) = (rat(1, 4), rat(1, 2), rat(1, 3), rat(-1, 5));
        let line = q.restrict_line(&x0, &dx, &y0, &dy);
        for t in [rat(0, 1), rat(1, 2), rat(3, 4), rat(2, 1)] {
            let x = &x0 + &dx * &t;
            let y = &y0 + &dy * &t;
            assert_eq!(line.eval(&t, &c), q.eval(&x, &y, &c));
        }
    }

    #[test]
    fn exact_solve_small_system() {
        let a = vec![
            vec![rat(1, 1), rat(1, 2)],
            vec![rat(1, 3), rat(1, 1)],
        ];
        let y = vec![rat(2, 1), rat(1, 1)];
        let x = solve_exact(a, y);
        // x0 + x1/2 = 2, x0/3 + x1 = 1
        assert_eq!(&x[0] + &x[1] / rat(2, 1), rat(2, 1));
        assert_eq!(&x[0] / rat(3, 1) + &x[1], rat(1, 1));
    }
}
