//! Exact coefficient fields: `Q`, cyclotomic fields `Q(ζ_N)` and the rational
//! function field `Q(q)`.
//!
//! Every [`Scalar`] is kept in canonical form, so equality and hashing are
//! syntactic. Values that happen to be rational are always stored as
//! [`Scalar::Rational`] regardless of the context they were computed in, which
//! lets rationals mix freely with either extension. Mixing two different
//! extensions (say `Q(ζ_4)` with `Q(q)`) is a programming error and panics.

mod cyclotomic;
mod literal;
pub mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::Cyclo;
pub use literal::parse_scalar;
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldKind {
    Rational,
    Cyclotomic { n: u32 },
    RationalFunction,
}

/// A coefficient field. `Copy`: the cyclotomic polynomial lives in a shared cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    kind: FieldKind,
}

impl FieldCtx {
    pub fn rational() -> Self {
        FieldCtx {
            kind: FieldKind::Rational,
        }
    }

    pub fn cyclotomic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_parameter("cyclotomic order must be at least 1"));
        }
        Ok(FieldCtx {
            kind: FieldKind::Cyclotomic { n },
        })
    }

    pub fn rational_function() -> Self {
        FieldCtx {
            kind: FieldKind::RationalFunction,
        }
    }

    pub fn make(kind: FieldKind) -> Result<Self> {
        match kind {
            FieldKind::Cyclotomic { n } => FieldCtx::cyclotomic(n),
            k => Ok(FieldCtx { kind: k }),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// The reduction polynomial `Φ_N` (cyclotomic contexts only).
    pub fn reduction_polynomial(&self) -> Option<Vec<BigInt>> {
        match self.kind {
            FieldKind::Cyclotomic { n } => Some(poly::cyclotomic_polynomial(n).to_vec()),
            _ => None,
        }
    }

    /// The primitive root `ζ_N`.
    pub fn zeta(&self) -> Result<Scalar> {
        self.zeta_pow(1)
    }

    pub fn zeta_pow(&self, k: i64) -> Result<Scalar> {
        match self.kind {
            FieldKind::Cyclotomic { n } => Ok(Scalar::from_cyclo(Cyclo::zeta_pow(n, k))),
            _ => Err(Error::FieldMismatch(
                "zeta is only defined in a cyclotomic context".into(),
            )),
        }
    }

    /// The transcendental `q`.
    pub fn q(&self) -> Result<Scalar> {
        match self.kind {
            FieldKind::RationalFunction => Ok(Scalar::q_pow(1)),
            _ => Err(Error::FieldMismatch(
                "q is only defined in the rational-function context".into(),
            )),
        }
    }

    /// Whether `s` is an element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (s, self.kind) {
            (Scalar::Rational(_), _) => true,
            (Scalar::Cyclotomic(c), FieldKind::Cyclotomic { n }) => c.order == n,
            (Scalar::RationalFunction(_), FieldKind::RationalFunction) => true,
            _ => false,
        }
    }

    /// Exponent `M` of the torsion subgroup of the unit group.
    pub fn torsion_exponent(&self) -> u64 {
        match self.kind {
            FieldKind::Cyclotomic { n } => (n as u64).lcm(&2),
            _ => 2,
        }
    }

    /// A generator of the (cyclic) group of roots of unity in this field.
    pub fn torsion_generator(&self) -> Scalar {
        match self.kind {
            FieldKind::Cyclotomic { n } if n % 2 == 0 => {
                Scalar::from_cyclo(Cyclo::zeta_pow(n, 1))
            }
            FieldKind::Cyclotomic { n } => -Scalar::from_cyclo(Cyclo::zeta_pow(n, 1)),
            _ => Scalar::from_int(-1),
        }
    }

    /// Multiplicative order of `s` when it is a root of unity, `None` otherwise.
    ///
    /// In `Q(ζ_N)` the roots of unity are exactly the `M`-th roots with
    /// `M = lcm(2, N)`, so one exponentiation decides the question.
    pub fn root_of_unity_order(&self, s: &Scalar) -> Result<Option<u64>> {
        if s.is_zero() {
            return Err(Error::invalid_input("zero is not a unit"));
        }
        if !self.contains(s) {
            return Err(Error::FieldMismatch(format!("{s} is not in {self}")));
        }
        let m = self.torsion_exponent();
        if !s.pow(m as i64).is_one() {
            return Ok(None);
        }
        let mut divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if s.pow(d as i64).is_one() {
                return Ok(Some(d));
            }
        }
        unreachable!("s^M = 1 implies an order dividing M")
    }

    /// Discrete logarithm of a root of unity with respect to [`Self::torsion_generator`].
    pub fn torsion_log(&self, s: &Scalar) -> Option<u64> {
        let g = self.torsion_generator();
        let m = self.torsion_exponent();
        let mut acc = Scalar::one();
        for e in 0..m {
            if &acc == s {
                return Some(e);
            }
            acc = &acc * &g;
        }
        None
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        parse_scalar(text, self)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Cyclotomic { n } => write!(f, "Q(zeta_{n})"),
            FieldKind::RationalFunction => write!(f, "Q(q)"),
        }
    }
}

/// `Φ_N` as an integer polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::invalid_parameter("cyclotomic order must be at least 1"));
    }
    Ok(poly::cyclotomic_polynomial(n).to_vec())
}

/// Multiplicative order of `s` in `ctx`, or `None` for infinite order.
pub fn is_root_of_unity(s: &Scalar, ctx: &FieldCtx) -> Result<Option<u64>> {
    ctx.root_of_unity_order(s)
}

/// An exact field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclo),
    RationalFunction(RatFunc),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub(crate) fn from_cyclo(c: Cyclo) -> Self {
        match c.as_rational() {
            Some(r) => Scalar::Rational(r),
            None => Scalar::Cyclotomic(c),
        }
    }

    pub(crate) fn from_ratfunc(f: RatFunc) -> Self {
        match f.as_rational() {
            Some(r) => Scalar::Rational(r),
            None => Scalar::RationalFunction(f),
        }
    }

    /// `q^k` in `Q(q)`.
    pub fn q_pow(k: i64) -> Self {
        Scalar::from_ratfunc(RatFunc::q_pow(k))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
            Scalar::RationalFunction(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// The value as a machine integer, when it is one.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            _ => None,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Rational(r.recip())
            }
            Scalar::Cyclotomic(c) => Scalar::from_cyclo(c.inv()),
            Scalar::RationalFunction(f) => Scalar::from_ratfunc(f.inv()),
        }
    }

    pub fn checked_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Renders the value in the scalar literal grammar accepted by [`parse_scalar`].
    pub fn to_literal(&self) -> String {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Cyclotomic(c) => c.to_literal(),
            Scalar::RationalFunction(f) => f.to_literal(),
        }
    }

    /// Whether the literal needs parentheses when used as a factor.
    fn is_atomic_literal(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer() && !r.is_negative(),
            _ => {
                let s = self.to_literal();
                !s.contains(' ') && !s.contains('/') && !s.starts_with('-')
            }
        }
    }

    /// Literal suitable as the left factor of a product.
    pub fn to_factor_literal(&self) -> String {
        if self.is_atomic_literal() {
            self.to_literal()
        } else {
            format!("({})", self.to_literal())
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_literal())
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: cannot combine {a} and {b}")
}

fn binop(
    a: &Scalar,
    b: &Scalar,
    rat: impl Fn(&BigRational, &BigRational) -> BigRational,
    cyc: impl Fn(&Cyclo, &Cyclo) -> Cyclo,
    fun: impl Fn(&RatFunc, &RatFunc) -> RatFunc,
) -> Scalar {
    use Scalar::*;
    match (a, b) {
        (Rational(x), Rational(y)) => Rational(rat(x, y)),
        (Cyclotomic(x), Cyclotomic(y)) => {
            if x.order != y.order {
                mismatch(a, b)
            }
            Scalar::from_cyclo(cyc(x, y))
        }
        (Cyclotomic(x), Rational(y)) => Scalar::from_cyclo(cyc(x, &Cyclo::from_rational(x.order, y))),
        (Rational(x), Cyclotomic(y)) => Scalar::from_cyclo(cyc(&Cyclo::from_rational(y.order, x), y)),
        (RationalFunction(x), RationalFunction(y)) => Scalar::from_ratfunc(fun(x, y)),
        (RationalFunction(x), Rational(y)) => Scalar::from_ratfunc(fun(x, &RatFunc::from_rational(y))),
        (Rational(x), RationalFunction(y)) => Scalar::from_ratfunc(fun(&RatFunc::from_rational(x), y)),
        _ => mismatch(a, b),
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        binop(self, rhs, |x, y| x + y, Cyclo::add, RatFunc::add)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        binop(self, rhs, |x, y| x * y, Cyclo::mul, RatFunc::mul)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
            Scalar::RationalFunction(f) => Scalar::RationalFunction(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u32) -> FieldCtx {
        FieldCtx::cyclotomic(n).unwrap()
    }

    #[test]
    fn field_make_examples() {
        let q1 = cyc(1);
        assert_eq!(q1.zeta().unwrap(), Scalar::one());
        let q4 = cyc(4);
        let z = q4.zeta().unwrap();
        assert_eq!(&z * &z, Scalar::from_int(-1));
        assert!(FieldCtx::cyclotomic(0).is_err());
        let qf = FieldCtx::rational_function();
        let q = qf.q().unwrap();
        assert_eq!(qf.root_of_unity_order(&q).unwrap(), None);
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        let show = |n| poly::to_string(&cyclotomic_polynomial(n).unwrap(), "x");
        assert_eq!(show(1), "x - 1");
        assert_eq!(show(2), "x + 1");
        assert_eq!(show(12), "x^4 - x^2 + 1");
    }

    #[test]
    fn root_of_unity_examples() {
        let k = cyc(6);
        let z = k.zeta().unwrap();
        assert_eq!(k.root_of_unity_order(&z).unwrap(), Some(6));
        assert_eq!(k.root_of_unity_order(&z.pow(2)).unwrap(), Some(3));
        assert!(k.root_of_unity_order(&Scalar::zero()).is_err());
        let r = FieldCtx::rational();
        assert_eq!(r.root_of_unity_order(&Scalar::from_int(-1)).unwrap(), Some(2));
        assert_eq!(r.root_of_unity_order(&Scalar::from_int(2)).unwrap(), None);
        // -ζ_3 is a primitive 6th root of unity inside Q(ζ_3)
        let k3 = cyc(3);
        let mz = -k3.zeta().unwrap();
        assert_eq!(k3.root_of_unity_order(&mz).unwrap(), Some(6));
    }

    #[test]
    fn inverse_and_division() {
        let k = cyc(12);
        let z = k.zeta().unwrap();
        let a = &(&z + &Scalar::from_int(2)) * &z.pow(3);
        assert_eq!(&a * &a.inv(), Scalar::one());
        let qf = FieldCtx::rational_function();
        let q = qf.q().unwrap();
        let lam = &q / &(&q - &q.inv());
        assert_eq!(lam.to_literal(), "q^2/(q^2 - 1)");
    }

    #[test]
    fn canonical_demotion() {
        let k = cyc(4);
        let z = k.zeta().unwrap();
        assert_eq!(&z * &z.inv(), Scalar::one());
        assert!(matches!(&z + &(-&z), Scalar::Rational(_)));
    }
}
