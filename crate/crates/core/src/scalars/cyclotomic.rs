//! Elements of `Q(ζ_N)` reduced modulo `Φ_N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, ZPoly};

/// `num(ζ) / den` with `deg num < φ(N)`, `den > 0` and `gcd(content(num), den) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    pub(crate) order: u32,
    pub(crate) num: ZPoly,
    pub(crate) den: BigInt,
}

impl Cyclo {
    pub(crate) fn new(order: u32, mut num: ZPoly, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        let phi = poly::cyclotomic_polynomial(order);
        poly::rem_monic(&mut num, &phi);
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -c.clone());
        }
        let g = poly::content(&num).gcd(&den);
        if !g.is_zero() && !g.is_one() {
            num = poly::div_exact_scalar(&num, &g);
            den /= &g;
        }
        if num.is_empty() {
            den = BigInt::one();
        }
        Cyclo { order, num, den }
    }

    pub(crate) fn from_rational(order: u32, r: &BigRational) -> Self {
        Cyclo::new(order, vec![r.numer().clone()], r.denom().clone())
    }

    /// `ζ_N^k` for any integer `k`.
    pub(crate) fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        Cyclo::new(order, poly::monomial(e, BigInt::one()), BigInt::one())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The rational value when the element lies in `Q`.
    pub(crate) fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    pub(crate) fn add(&self, other: &Cyclo) -> Cyclo {
        debug_assert_eq!(self.order, other.order);
        let a = poly::scale(&self.num, &other.den);
        let b = poly::scale(&other.num, &self.den);
        Cyclo::new(self.order, poly::add(&a, &b), &self.den * &other.den)
    }

    pub(crate) fn neg(&self) -> Cyclo {
        Cyclo {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub(crate) fn mul(&self, other: &Cyclo) -> Cyclo {
        debug_assert_eq!(self.order, other.order);
        Cyclo::new(self.order, poly::mul(&self.num, &other.num), &self.den * &other.den)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k`.
    fn galois(&self, k: u32) -> Cyclo {
        let n = self.order as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            out[(i * k as usize) % n] += c;
        }
        poly::trim(&mut out);
        Cyclo::new(self.order, out, self.den.clone())
    }

    /// Inverse via the product of the nontrivial Galois conjugates divided by the norm.
    pub(crate) fn inv(&self) -> Cyclo {
        assert!(!self.is_zero(), "division by zero in cyclotomic field");
        let mut conj = Cyclo::new(self.order, vec![BigInt::one()], BigInt::one());
        for k in 2..self.order.max(2) {
            if k.gcd(&self.order) == 1 {
                conj = conj.mul(&self.galois(k));
            }
        }
        let norm = self.mul(&conj);
        let norm = norm
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        let inv_norm = BigRational::one() / norm;
        conj.mul(&Cyclo::from_rational(self.order, &inv_norm))
    }

    pub(crate) fn to_literal(&self) -> String {
        let body = poly::to_string(&self.num, "zeta");
        if self.den.is_one() {
            body
        } else if self.num.len() == 1 {
            format!("{}/{}", body, self.den)
        } else {
            format!("({})/{}", body, self.den)
        }
    }
}
