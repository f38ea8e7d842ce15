use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{rational_to_f64, Monomial, MultiPoly, Rational, RingMatrix};

/// Single-variable Laurent polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// The variable itself, `z`.
    pub fn z() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let s = self.terms.remove(&exp).unwrap_or_else(Rational::zero) + c;
        if !s.is_zero() {
            self.terms.insert(exp, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    /// Replaces `z` by `1/z`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(z.clone(), *e as usize)
            } else {
                num_traits::pow(z.recip(), (-e) as usize)
            };
            total += c * p;
        }
        total
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rational_to_f64(c) * z.powi(*e as i32))
            .sum()
    }

    /// `(k, p)` with `self = z^k * p` and `p` an ordinary polynomial in
    /// variable 0 whose constant term is nonzero (or `p = 0`).
    pub fn to_polynomial(&self) -> (i64, MultiPoly) {
        let k = self.min_exponent().unwrap_or(0);
        let p = MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (Monomial::var(0, (e - k) as u32), c.clone())),
        );
        (k, p)
    }

    /// Inverse of [`to_polynomial`](Self::to_polynomial) for a polynomial in
    /// variable 0 only.
    pub fn from_polynomial(shift: i64, p: &MultiPoly) -> Self {
        LaurentPoly::from_terms(
            p.terms()
                .map(|(m, c)| (m.exponent(0) as i64 + shift, c.clone())),
        )
    }

    /// Dense coefficient vector of `z^{-min} * self`, lowest power first.
    fn dense(&self) -> (i64, Vec<Rational>) {
        let lo = self.min_exponent().unwrap_or(0);
        let hi = self.max_exponent().unwrap_or(0);
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            match *e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if *e == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl super::Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn one() -> Self {
        LaurentPoly::constant(<Rational as One>::one())
    }
    fn from_i64(v: i64) -> Self {
        LaurentPoly::constant(super::rat(v))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = LaurentPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::default());
        }
        // Long division from the top on the dense shifted representations.
        let (lo_a, mut a) = self.dense();
        let (lo_b, b) = rhs.dense();
        if a.len() < b.len() {
            return None;
        }
        let lead = b.last().unwrap().clone();
        let qlen = a.len() - b.len() + 1;
        let mut q = vec![<Rational as Zero>::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &a[i + b.len() - 1] / &lead;
            if Zero::is_zero(&c) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                a[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        if a.iter().any(|c| !Zero::is_zero(c)) {
            return None;
        }
        Some(LaurentPoly::from_terms(
            q.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + lo_a - lo_b, c)),
        ))
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(LaurentPoly::constant(r.clone()))
    }

    /// Clears negative powers row by row, takes the determinant over
    /// ordinary polynomials, then restores the accumulated power.
    fn determinant(m: &RingMatrix<Self>) -> Self {
        let n = m.rows();
        let mut total_shift = 0i64;
        let mut poly = RingMatrix::<MultiPoly>::zeros(n, m.cols());
        for i in 0..n {
            let row_min = (0..m.cols())
                .filter_map(|j| m.get(i, j).min_exponent())
                .min()
                .unwrap_or(0);
            total_shift += row_min;
            for j in 0..m.cols() {
                let shifted = m.get(i, j).shift(-row_min);
                let (k, p) = shifted.to_polynomial();
                let mono = Monomial::var(0, k.max(0) as u32);
                poly.set(i, j, p.mul_monomial(&mono, &<Rational as One>::one()));
            }
        }
        let d = super::bareiss_det(&poly);
        LaurentPoly::from_polynomial(total_shift, &d)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Ring};
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn laurent_arithmetic_and_division() {
        let a = lp(&[(-1, 1), (0, 3), (1, 1)]);
        let b = lp(&[(-2, 2), (1, -1)]);
        let prod = a.times(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&lp(&[(0, 1), (1, 1)])), None);
        assert_eq!(a.to_string(), "z + 3 + z^-1");
        assert_eq!(a.eval(&rat(1)), rat(5));
    }

    #[test]
    fn laurent_determinant_matches_cofactor() {
        let m = RingMatrix::from_rows(vec![
            vec![lp(&[(1, 1), (0, 1)]), lp(&[(0, 1)])],
            vec![lp(&[(0, -1)]), lp(&[(0, 1), (-1, 1)])],
        ]);
        let d = LaurentPoly::determinant(&m);
        assert_eq!(d, lp(&[(1, 1), (0, 3), (-1, 1)]));
        assert_eq!(d, super::super::det_cofactor(&m));
    }
}
