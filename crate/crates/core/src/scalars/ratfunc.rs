//! Elements of `Q(q)` as coprime integer-polynomial fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, ZPoly};

/// `num(q) / den(q)`: coprime over `Q[q]`, joint integer content 1, `lc(den) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub(crate) num: ZPoly,
    pub(crate) den: ZPoly,
}

impl RatFunc {
    pub(crate) fn new(mut num: ZPoly, mut den: ZPoly) -> Self {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator in rational function");
        if num.is_empty() {
            return RatFunc {
                num,
                den: vec![BigInt::one()],
            };
        }
        if den.len() > 1 && num.len() > 0 {
            let g = poly::gcd(&num, &den);
            if g.len() > 1 {
                num = poly::div_exact(&num, &g);
                den = poly::div_exact(&den, &g);
            }
        }
        let c = poly::content(&num).gcd(&poly::content(&den));
        if !c.is_one() {
            num = poly::div_exact_scalar(&num, &c);
            den = poly::div_exact_scalar(&den, &c);
        }
        if den.last().unwrap().is_negative() {
            num.iter_mut().for_each(|x| *x = -x.clone());
            den.iter_mut().for_each(|x| *x = -x.clone());
        }
        RatFunc { num, den }
    }

    pub(crate) fn from_rational(r: &BigRational) -> Self {
        RatFunc::new(vec![r.numer().clone()], vec![r.denom().clone()])
    }

    /// `q^k` for any integer `k`.
    pub(crate) fn q_pow(k: i64) -> Self {
        let m = poly::monomial(k.unsigned_abs() as usize, BigInt::one());
        if k >= 0 {
            RatFunc::new(m, vec![BigInt::one()])
        } else {
            RatFunc::new(vec![BigInt::one()], m)
        }
    }

    pub(crate) fn as_rational(&self) -> Option<BigRational> {
        if self.num.len() <= 1 && self.den.len() == 1 {
            let n = self.num.first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den[0].clone()))
        } else {
            None
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub(crate) fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(poly::add(&self.num, &other.num), self.den.clone());
        }
        let a = poly::mul(&self.num, &other.den);
        let b = poly::mul(&other.num, &self.den);
        RatFunc::new(poly::add(&a, &b), poly::mul(&self.den, &other.den))
    }

    pub(crate) fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub(crate) fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            poly::mul(&self.num, &other.num),
            poly::mul(&self.den, &other.den),
        )
    }

    pub(crate) fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "division by zero in Q(q)");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub(crate) fn to_literal(&self) -> String {
        let n = poly::to_string(&self.num, "q");
        if self.den.len() == 1 && self.den[0].is_one() {
            return n;
        }
        let d = poly::to_string(&self.den, "q");
        let n_atomic = self.num.iter().filter(|c| !c.is_zero()).count() == 1
            && !self.num.iter().any(|c| c.is_negative());
        let n = if n_atomic { n } else { format!("({n})") };
        format!("{n}/({d})")
    }
}
