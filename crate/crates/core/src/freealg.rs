//! The free associative algebra `F⟨x_1, x_2, …⟩` and multilinear identity templates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};
use crate::scalars::Scalar;

/// A word in the generators; the empty word is `1`.
pub type Word = Vec<usize>;

/// Noncommutative polynomial: word → nonzero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::monomial(Vec::new(), Scalar::one())
    }

    pub fn var(i: usize) -> Self {
        NcPoly::monomial(vec![i], Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[usize]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// Evaluates the polynomial in an associative target.
    pub fn evaluate<T: EvalTarget>(&self, args: &[T::Elem], target: &T) -> Result<T::Elem> {
        let mut acc = target.zero();
        for (w, c) in &self.terms {
            let mut m = target.one();
            for &i in w {
                let a = args.get(i).ok_or(Error::Arity {
                    expected: i + 1,
                    got: args.len(),
                })?;
                m = target.mul(&m, a);
            }
            acc = target.add(&acc, &target.scale(&m, c));
        }
        Ok(acc)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let mono = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("*")
            };
            let body = if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", c.to_factor_literal())
            };
            if first {
                write!(f, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// `[a, b]_q = ab − q·ba`.
pub fn q_commutator(a: &NcPoly, b: &NcPoly, q: &Scalar) -> NcPoly {
    a.mul(b).sub(&b.mul(a).scale(q))
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

pub fn sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut s = 1;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

pub fn factorial(d: usize) -> usize {
    (1..=d).product()
}

/// `s_n = ∑_σ sgn(σ) x_{σ(1)} ⋯ x_{σ(n)}`.
pub fn standard_polynomial(n: usize) -> NcPoly {
    let mut p = NcPoly::zero();
    for perm in permutations(n) {
        p.add_term(perm.clone(), Scalar::from_int(sign(&perm)));
    }
    p
}

/// Coefficients `(λ_σ)` of a multilinear polynomial of degree `d`, indexed by
/// the lexicographic order of `Sym(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearTemplate {
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl MultilinearTemplate {
    pub fn new(degree: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != factorial(degree) {
            return Err(Error::Arity {
                expected: factorial(degree),
                got: coeffs.len(),
            });
        }
        Ok(MultilinearTemplate { degree, coeffs })
    }

    /// `λ_σ = sgn σ`: the standard polynomial.
    pub fn standard(degree: usize) -> Self {
        MultilinearTemplate {
            degree,
            coeffs: permutations(degree)
                .iter()
                .map(|p| Scalar::from_int(sign(p)))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_ncpoly(&self) -> NcPoly {
        let mut p = NcPoly::zero();
        for (perm, c) in permutations(self.degree).into_iter().zip(&self.coeffs) {
            p.add_term(perm, c.clone());
        }
        p
    }
}

impl Serialize for MultilinearTemplate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let map: BTreeMap<String, String> = permutations(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| {
                let key = p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
                (key, c.to_literal())
            })
            .collect();
        let mut st = s.serialize_struct("MultilinearTemplate", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coefficients", &map)?;
        st.end()
    }
}

/// How template arguments are combined before multiplying.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// `∑ λ_σ x_{σ(1)} ⋯ x_{σ(d)}`
    Plain,
    /// `∑ λ_σ [x_1, y_{σ(1)}]_q ⋯ [x_d, y_{σ(d)}]_q`
    QComm(Scalar),
    /// `∑ λ_σ (ad x_1)(y_{σ(1)}) ⋯ (ad x_d)(y_{σ(d)})`
    AdForm,
}

impl Shape {
    pub fn arity(&self, degree: usize) -> usize {
        match self {
            Shape::Plain => degree,
            _ => 2 * degree,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Shape::Plain => "plain",
            Shape::QComm(_) => "q_comm",
            Shape::AdForm => "ad_form",
        }
    }
}

/// An associative algebra in which templates can be evaluated.
pub trait EvalTarget {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Hopf adjoint action `(ad x)(y)`; only Hopf algebra targets provide it.
    fn adjoint(&self, _x: &Self::Elem, _y: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::Unsupported("target has no adjoint action".into()))
    }
}

/// Full matrix algebra `M_n` over a commutative ring of scalars.
#[derive(Debug, Clone, Copy)]
pub struct MatrixAlgebra {
    pub n: usize,
}

impl EvalTarget for MatrixAlgebra {
    type Elem = Matrix<Scalar>;

    fn zero(&self) -> Matrix<Scalar> {
        Matrix::zeros(self.n, self.n)
    }
    fn one(&self) -> Matrix<Scalar> {
        Matrix::identity(self.n)
    }
    fn add(&self, a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Matrix<Scalar> {
        a.add(b)
    }
    fn mul(&self, a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Matrix<Scalar> {
        a.mul(b)
    }
    fn scale(&self, a: &Matrix<Scalar>, c: &Scalar) -> Matrix<Scalar> {
        a.scale(c)
    }
    fn is_zero(&self, a: &Matrix<Scalar>) -> bool {
        a.is_zero()
    }
}

/// Matrices over an arbitrary commutative [`Ring`] (e.g. Laurent polynomials).
#[derive(Debug, Clone, Copy)]
pub struct RingMatrixAlgebra<R> {
    pub n: usize,
    _ring: std::marker::PhantomData<R>,
}

impl<R> RingMatrixAlgebra<R> {
    pub fn new(n: usize) -> Self {
        RingMatrixAlgebra {
            n,
            _ring: std::marker::PhantomData,
        }
    }
}

impl<R: Ring> EvalTarget for RingMatrixAlgebra<R> {
    type Elem = Matrix<R>;

    fn zero(&self) -> Matrix<R> {
        Matrix::zeros(self.n, self.n)
    }
    fn one(&self) -> Matrix<R> {
        Matrix::identity(self.n)
    }
    fn add(&self, a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
        a.add(b)
    }
    fn mul(&self, a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
        a.mul(b)
    }
    fn scale(&self, a: &Matrix<R>, c: &Scalar) -> Matrix<R> {
        a.scale(&R::from_scalar(c))
    }
    fn is_zero(&self, a: &Matrix<R>) -> bool {
        a.is_zero()
    }
}

/// Evaluates `∑_σ λ_σ ∏_i F[i][σ(i)]` by a depth-first walk over `Sym(d)` in
/// lexicographic order, sharing prefix products and skipping blocks of zero `λ`.
pub fn permanent_like<T: EvalTarget>(
    coeffs: &[Scalar],
    factors: &[Vec<T::Elem>],
    target: &T,
) -> T::Elem {
    let d = factors.len();
    if let Some(c) = alternating_multiple(coeffs, d) {
        return target.scale(&alternating_sum(factors, target), &c);
    }
    let mut fact = vec![1usize; d + 1];
    for k in 1..=d {
        fact[k] = fact[k - 1] * k;
    }
    let mut acc = target.zero();
    let mut used = vec![false; d];
    #[allow(clippy::too_many_arguments)]
    fn walk<T: EvalTarget>(
        pos: usize,
        base: usize,
        prefix: &T::Elem,
        used: &mut [bool],
        coeffs: &[Scalar],
        factors: &[Vec<T::Elem>],
        fact: &[usize],
        target: &T,
        acc: &mut T::Elem,
    ) {
        let d = factors.len();
        if pos == d {
            let c = &coeffs[base];
            if !c.is_zero() {
                *acc = target.add(acc, &target.scale(prefix, c));
            }
            return;
        }
        let block = fact[d - pos - 1];
        let mut k = 0;
        for j in 0..d {
            if used[j] {
                continue;
            }
            let start = base + k * block;
            k += 1;
            if coeffs[start..start + block].iter().all(|c| c.is_zero()) {
                continue;
            }
            let next = target.mul(prefix, &factors[pos][j]);
            if target.is_zero(&next) {
                continue;
            }
            used[j] = true;
            walk(pos + 1, start, &next, used, coeffs, factors, fact, target, acc);
            used[j] = false;
        }
    }
    walk(0, 0, &target.one(), &mut used, coeffs, factors, &fact, target, &mut acc);
    acc
}

/// Signs of the permutations of `0..d` in lexicographic order, cached for small `d`.
fn lex_signs(d: usize) -> Option<Arc<Vec<i64>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    if d > 8 {
        return None;
    }
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    Some(
        cache
            .entry(d)
            .or_insert_with(|| Arc::new(permutations(d).iter().map(|p| sign(p)).collect()))
            .clone(),
    )
}

/// `c` with `coeffs = c · (sgn σ)_σ`, if there is one.
fn alternating_multiple(coeffs: &[Scalar], d: usize) -> Option<Scalar> {
    if d < 2 {
        return None;
    }
    let signs = lex_signs(d)?;
    let c = coeffs.first()?.clone();
    let neg = -&c;
    coeffs
        .iter()
        .zip(signs.iter())
        .all(|(x, &s)| if s > 0 { *x == c } else { *x == neg })
        .then_some(c)
}

/// `∑_σ sgn(σ) F[0][σ(0)] ⋯ F[d−1][σ(d−1)]` by dynamic programming over the set
/// of variables already placed: `d·2^(d−1)` products instead of `d!`.
fn alternating_sum<T: EvalTarget>(factors: &[Vec<T::Elem>], target: &T) -> T::Elem {
    let d = factors.len();
    let mut partial: Vec<Option<T::Elem>> = vec![None; 1 << d];
    partial[0] = Some(target.one());
    for mask in 0usize..(1 << d) {
        let Some(prefix) = partial[mask].take() else { continue };
        let pos = mask.count_ones() as usize;
        if pos == d {
            return prefix;
        }
        for j in 0..d {
            if mask & (1 << j) != 0 {
                continue;
            }
            let mut term = target.mul(&prefix, &factors[pos][j]);
            if (mask >> (j + 1)).count_ones() % 2 == 1 {
                term = target.scale(&term, &-Scalar::one());
            }
            let slot = &mut partial[mask | (1 << j)];
            *slot = Some(match slot.take() {
                Some(v) => target.add(&v, &term),
                None => term,
            });
        }
    }
    target.zero()
}

/// Evaluates a template instance in `target`.
pub fn substitute_multilinear<T: EvalTarget>(
    t: &MultilinearTemplate,
    shape: &Shape,
    args: &[T::Elem],
    target: &T,
) -> Result<T::Elem> {
    let d = t.degree;
    let expected = shape.arity(d);
    if args.len() != expected {
        return Err(Error::Arity {
            expected,
            got: args.len(),
        });
    }
    let factors: Vec<Vec<T::Elem>> = match shape {
        Shape::Plain => (0..d).map(|_| args.to_vec()).collect(),
        Shape::QComm(q) => {
            let (xs, ys) = args.split_at(d);
            xs.iter()
                .map(|x| {
                    ys.iter()
                        .map(|y| {
                            let xy = target.mul(x, y);
                            let yx = target.mul(y, x);
                            target.add(&xy, &target.scale(&yx, &-q))
                        })
                        .collect()
                })
                .collect()
        }
        Shape::AdForm => {
            let (xs, ys) = args.split_at(d);
            let mut rows = Vec::with_capacity(d);
            for x in xs {
                let row: Result<Vec<T::Elem>> = ys.iter().map(|y| target.adjoint(x, y)).collect();
                rows.push(row?);
            }
            rows
        }
    };
    Ok(permanent_like(&t.coeffs, &factors, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> Matrix<Scalar> {
        Matrix::unit(2, i, j)
    }

    #[test]
    fn alternating_fast_path_matches_expansion() {
        let target = RingMatrixAlgebra::<Scalar>::new(2);
        let m = |a: i64, b: i64, c: i64, d: i64| {
            Matrix::from_rows(vec![vec![Scalar::from_int(a), Scalar::from_int(b)], vec![Scalar::from_int(c), Scalar::from_int(d)]])
        };
        let args = vec![m(1, 2, 0, -1), m(0, 1, 3, 1), m(2, 0, 1, 1)];
        let three = Scalar::from_int(3);
        let coeffs: Vec<Scalar> = MultilinearTemplate::standard(3).coeffs().iter().map(|c| c * &three).collect();
        let mut want = Matrix::<Scalar>::zeros(2, 2);
        for p in permutations(3) {
            let prod = args[p[0]].mul(&args[p[1]]).mul(&args[p[2]]);
            want = want.add(&prod.scale(&Scalar::from_int(3 * sign(&p))));
        }
        let factors: Vec<Vec<Matrix<Scalar>>> = (0..3).map(|_| args.clone()).collect();
        assert_eq!(permanent_like(&coeffs, &factors, &target), want);
        assert!(!want.is_zero());
    }

    #[test]
    fn products() {
        let x1 = NcPoly::var(0);
        let x2 = NcPoly::var(1);
        assert_eq!(x1.mul(&x2), NcPoly::monomial(vec![0, 1], Scalar::one()));
        let c = x1.mul(&x2).sub(&x2.mul(&x1));
        assert_eq!(c.mul(&NcPoly::one()), c);
        assert_eq!(q_commutator(&x1, &x1, &Scalar::one()), NcPoly::zero());
    }

    #[test]
    fn standard_polynomial_terms() {
        assert_eq!(standard_polynomial(2).to_string(), "x1*x2 - x2*x1");
        let s3 = standard_polynomial(3);
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.coeff(&[2, 1, 0]), Scalar::from_int(-1));
        assert_eq!(standard_polynomial(4).len(), 24);
    }

    #[test]
    fn lexicographic_permutations() {
        let p = permutations(3);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn s2_on_m2() {
        let m2 = MatrixAlgebra { n: 2 };
        let t = MultilinearTemplate::standard(2);
        let r = substitute_multilinear(&t, &Shape::Plain, &[e(0, 1), e(1, 0)], &m2).unwrap();
        assert_eq!(r, e(0, 0).sub(&e(1, 1)));
    }

    #[test]
    fn s4_vanishes_on_some_m2_basis_tuple() {
        let m2 = MatrixAlgebra { n: 2 };
        let t = MultilinearTemplate::standard(4);
        let args = [e(0, 0), e(0, 1), e(1, 0), e(1, 1)];
        assert!(substitute_multilinear(&t, &Shape::Plain, &args, &m2).unwrap().is_zero());
    }

    #[test]
    fn matches_ncpoly_evaluation() {
        let m2 = MatrixAlgebra { n: 2 };
        let t = MultilinearTemplate::standard(3);
        let args = [e(0, 1), e(1, 0), e(0, 0)];
        let a = substitute_multilinear(&t, &Shape::Plain, &args, &m2).unwrap();
        let b = t.to_ncpoly().evaluate(&args, &m2).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
    }

    #[test]
    fn arity_and_missing_adjoint() {
        let m2 = MatrixAlgebra { n: 2 };
        let t = MultilinearTemplate::standard(2);
        assert!(matches!(
            substitute_multilinear(&t, &Shape::Plain, &[e(0, 0)], &m2),
            Err(Error::Arity { .. })
        ));
        let args = [e(0, 0), e(0, 1), e(1, 0), e(1, 1)];
        assert!(matches!(
            substitute_multilinear(&t, &Shape::AdForm, &args, &m2),
            Err(Error::Unsupported(_))
        ));
    }
}
