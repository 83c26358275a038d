//! Laurent polynomials in `q` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `q^r (q - 1)^s`.
    pub fn cell(r: u32, s: u32) -> Self {
        let qm1 = Self::q_pow(1) - Self::one();
        (0..s).fold(Self::q_pow(r as i32), |acc, _| &acc * &qm1)
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.coeffs.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().map_or(true, |e| e >= 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (e, v) in self.terms() {
            out.add_term(e, v * c);
        }
        out
    }

    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Value at `q = 0`; fails on negative exponents.
    pub fn at_zero(&self) -> Result<i64> {
        if let Some(e) = self.min_exponent().filter(|&e| e < 0) {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.coeff(0))
    }

    /// Value at a nonzero integer `q`, as a rational when exponents are negative.
    pub fn eval(&self, q: i64) -> crate::Q {
        let q = crate::Q::from_integer(q);
        self.terms().fold(crate::Q::from_integer(0), |s, (e, c)| s + crate::Q::from_integer(c) * q.pow(e))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::Parse(format!("bad polynomial `{s}`"));
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in t.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out = Self::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (c, e) = parse_term(body).ok_or_else(err)?;
            out.add_term(e, sign * c);
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Option<(i64, i32)> {
    match t.split_once('q') {
        None => Some((t.parse().ok()?, 0)),
        Some((c, e)) => {
            let c = match c.trim_end_matches('*') {
                "" => 1,
                x => x.parse().ok()?,
            };
            let e = match e {
                "" => 1,
                x => x.strip_prefix('^')?.parse().ok()?,
            };
            Some((c, e))
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let (e, c) = (*e, *c);
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let a = c.abs();
            let q = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            match (a, e) {
                (_, 0) => write!(f, "{sign}{a}")?,
                (1, _) => write!(f, "{sign}{q}")?,
                _ => write!(f, "{sign}{a}{q}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (e, c) in o.terms() {
            self.add_term(e, c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        let q = LaurentPoly::q_pow(1);
        assert_eq!((&(&q * &q) - &LaurentPoly::one()).to_string(), "q^2-1");
        assert_eq!(LaurentPoly::cell(1, 2).to_string(), "q^3-2q^2+q");
        assert_eq!(LaurentPoly::monomial(-3, -1).to_string(), "-3q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn at_zero_rejects_negative_powers() {
        assert_eq!(LaurentPoly::q_pow(-1).at_zero(), Err(Error::NegativeExponent(-1)));
        assert_eq!(LaurentPoly::parse("q+5").unwrap().at_zero(), Ok(5));
    }

    fn arb() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -9i64..10), 0..5).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for (e, c) in ts {
                p.add_term(e, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn parse_round_trip(p in arb()) {
            prop_assert_eq!(LaurentPoly::parse(&p.to_string()).unwrap(), p);
        }

        #[test]
        fn eval_is_a_ring_map(a in arb(), b in arb(), q in 2i64..5) {
            prop_assert_eq!((&a * &b).eval(q), a.eval(q) * b.eval(q));
            prop_assert_eq!((&a + &b).eval(q), a.eval(q) + b.eval(q));
        }
    }
}
