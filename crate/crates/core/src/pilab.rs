//! Polynomial identities, delta-set dimensions and the bilinear image bound.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{factorial, substitute_multilinear, EvalTarget, MatrixAlgebra, MultilinearTemplate, Shape};
use crate::groups::GammaElem;
use crate::linalg::{nullspace, Matrix, SpanBuilder};
use crate::presented::{ad_orbit, AlgebraElement, Presentation};
use crate::rep::{orbit_span, MatrixRep};
use crate::scalars::Scalar;

pub const DEFAULT_KERNEL_DEGREE_CAP: usize = 6;
pub const DEFAULT_ORBIT_CAP: usize = 64;
pub const DEFAULT_MONOMIAL_DEGREE: u32 = 8;
/// Largest number of basis tuples the generic exact kernel path will enumerate.
pub const DEFAULT_TUPLE_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdentityStatus {
    HoldsExact,
    HoldsOnSample,
    Fails { counterexample: Vec<String>, value: String },
    Inconclusive { cap: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityVerdict {
    #[serde(flatten)]
    pub status: IdentityStatus,
    pub degree: usize,
    pub shape: String,
    pub evaluations: u64,
    /// Exhaustive mode ran out of time and a sample was used instead.
    pub fallback: bool,
    pub elapsed_ms: u128,
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self.status, IdentityStatus::HoldsExact | IdentityStatus::HoldsOnSample)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Mode {
    Exhaustive { budget: Option<Duration> },
    Sample { count: usize, seed: u64 },
}

/// A finite-dimensional algebra of `n×n` matrices given by a basis.
#[derive(Debug, Clone)]
pub struct MatrixTarget {
    n: usize,
    basis: Vec<Matrix<Scalar>>,
    labels: Vec<String>,
    /// `basis` is the full set of matrix units, `basis[i*n+j] = E_ij`.
    units: bool,
}

impl MatrixTarget {
    /// Basis of the image algebra of `rep`, as generator words. When the image is
    /// all of `M_n`, the matrix units are used instead (same span).
    pub fn from_rep(rep: &MatrixRep<Scalar>) -> Self {
        let n = rep.dim();
        let gens: Vec<(&String, &Matrix<Scalar>)> = rep.generators().collect();
        let mut span = SpanBuilder::new(n * n);
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        let id = Matrix::<Scalar>::identity(n);
        span.insert(id.entries());
        let mut frontier = vec![(String::from("1"), id.clone())];
        basis.push(id);
        labels.push("1".to_string());
        let mut i = 0;
        while i < frontier.len() {
            let (w, m) = frontier[i].clone();
            i += 1;
            for (name, g) in &gens {
                let u = g.mul(&m);
                if span.insert(u.entries()) {
                    let label = if w == "1" { name.to_string() } else { format!("{name}*{w}") };
                    basis.push(u.clone());
                    labels.push(label.clone());
                    frontier.push((label, u));
                }
            }
        }
        if basis.len() == n * n {
            Self::full(n)
        } else {
            MatrixTarget {
                n,
                basis,
                labels,
                units: false,
            }
        }
    }

    /// `M_n(F)` with its matrix-unit basis.
    pub fn full(n: usize) -> Self {
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            for j in 0..n {
                basis.push(Matrix::unit(n, i, j));
                labels.push(format!("E{}{}", i + 1, j + 1));
            }
        }
        MatrixTarget {
            n,
            basis,
            labels,
            units: true,
        }
    }

    pub fn from_basis(n: usize, basis: Vec<Matrix<Scalar>>, labels: Vec<String>) -> Result<Self> {
        if basis.len() != labels.len() || basis.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::invalid_input("basis matrices must be n×n with one label each"));
        }
        Ok(MatrixTarget {
            n,
            basis,
            labels,
            units: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<Scalar>] {
        &self.basis
    }
}

pub enum IdentityTarget<'a> {
    Matrices(&'a MatrixTarget),
    /// Arguments range over PBW monomials of x-weight and group exponents at most `bound`.
    Presentation { p: &'a Presentation, bound: u32 },
}

fn digits(mut t: u64, base: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for slot in out.iter_mut().rev() {
        *slot = (t % base as u64) as usize;
        t /= base as u64;
    }
    out
}

/// Depth-first walk over `Sym(d)` in lexicographic order for a tuple of matrix
/// units `E_{r c}`; `emit(rank, row, col)` receives each surviving product.
fn unit_walk(args: &[(usize, usize)], fact: &[usize], skip: &dyn Fn(usize, usize) -> bool, emit: &mut dyn FnMut(usize, usize, usize)) {
    let d = args.len();
    let mut used = vec![false; d];
    #[allow(clippy::too_many_arguments)]
    fn go(
        pos: usize,
        base: usize,
        start: usize,
        col: usize,
        used: &mut [bool],
        args: &[(usize, usize)],
        fact: &[usize],
        skip: &dyn Fn(usize, usize) -> bool,
        emit: &mut dyn FnMut(usize, usize, usize),
    ) {
        let d = args.len();
        if pos == d {
            emit(base, start, col);
            return;
        }
        let block = fact[d - pos - 1];
        let mut k = 0;
        for j in 0..d {
            if used[j] {
                continue;
            }
            let b = base + k * block;
            k += 1;
            if (pos > 0 && args[j].0 != col) || skip(b, block) {
                continue;
            }
            used[j] = true;
            let s = if pos == 0 { args[j].0 } else { start };
            go(pos + 1, b, s, args[j].1, used, args, fact, skip, emit);
            used[j] = false;
        }
    }
    go(0, 0, 0, 0, &mut used, args, fact, skip, emit);
}

fn fact_table(d: usize) -> Vec<usize> {
    (0..=d).map(factorial).collect()
}

fn eval_units(coeffs: &[Scalar], n: usize, args: &[(usize, usize)], fact: &[usize]) -> Matrix<Scalar> {
    let mut acc = Matrix::<Scalar>::zeros(n, n);
    let skip = |b: usize, len: usize| coeffs[b..b + len].iter().all(|c| c.is_zero());
    unit_walk(args, fact, &skip, &mut |rank, r, c| {
        acc[(r, c)] = &acc[(r, c)] + &coeffs[rank];
    });
    acc
}

fn format_matrix(m: &Matrix<Scalar>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|e| e.to_literal()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Evaluates `t` of the given shape on a target.
///
/// On a matrix target, exhaustive mode checks every tuple of basis elements,
/// which decides the identity by multilinearity. On a presentation every
/// verdict is at best `holds_on_sample`.
pub fn evaluate_identity(t: &MultilinearTemplate, shape: &Shape, target: &IdentityTarget, mode: Mode) -> Result<IdentityVerdict> {
    let start = Instant::now();
    let d = t.degree();
    let arity = shape.arity(d);
    let mut verdict = match target {
        IdentityTarget::Matrices(m) => match mode {
            Mode::Exhaustive { budget } => match exhaustive_matrices(t, shape, m, budget, start)? {
                Some(v) => v,
                None => {
                    let mut v = sample_matrices(t, shape, m, 10_000, 0)?;
                    v.fallback = true;
                    v
                }
            },
            Mode::Sample { count, seed } => sample_matrices(t, shape, m, count, seed)?,
        },
        IdentityTarget::Presentation { p, bound } => {
            let monos = pbw_monomials(p, *bound);
            let labels: Vec<String> = monos.iter().map(|m| p.format(m)).collect();
            let total = (monos.len() as u64).checked_pow(arity as u32);
            let tuples: Vec<Vec<usize>> = match (mode, total) {
                (Mode::Exhaustive { .. }, Some(tot)) if tot <= DEFAULT_TUPLE_CAP => {
                    (0..tot).map(|i| digits(i, monos.len(), arity)).collect()
                }
                (Mode::Exhaustive { .. }, _) => {
                    return Ok(IdentityVerdict {
                        status: IdentityStatus::Inconclusive { cap: DEFAULT_TUPLE_CAP },
                        degree: d,
                        shape: shape.name().into(),
                        evaluations: 0,
                        fallback: false,
                        elapsed_ms: start.elapsed().as_millis(),
                    })
                }
                (Mode::Sample { count, seed }, _) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..count)
                        .map(|_| (0..arity).map(|_| rng.gen_range(0..monos.len())).collect())
                        .collect()
                }
            };
            let results: Vec<Result<Option<AlgebraElement>>> = tuples
                .par_iter()
                .map(|tup| {
                    let args: Vec<AlgebraElement> = tup.iter().map(|&i| monos[i].clone()).collect();
                    let v = substitute_multilinear(t, shape, &args, *p)?;
                    Ok((!v.is_zero()).then_some(v))
                })
                .collect();
            let mut status = IdentityStatus::HoldsOnSample;
            let mut evaluations = 0;
            for (tup, r) in tuples.iter().zip(results) {
                evaluations += 1;
                if let Some(v) = r? {
                    status = IdentityStatus::Fails {
                        counterexample: tup.iter().map(|&i| labels[i].clone()).collect(),
                        value: p.format(&v),
                    };
                    break;
                }
            }
            IdentityVerdict {
                status,
                degree: d,
                shape: shape.name().into(),
                evaluations,
                fallback: false,
                elapsed_ms: 0,
            }
        }
    };
    verdict.elapsed_ms = start.elapsed().as_millis();
    Ok(verdict)
}

fn generic_eval(t: &MultilinearTemplate, shape: &Shape, args: &[Matrix<Scalar>], n: usize) -> Result<Matrix<Scalar>> {
    substitute_multilinear(t, shape, args, &MatrixAlgebra { n })
}

/// `None` when the time budget ran out.
fn exhaustive_matrices(
    t: &MultilinearTemplate,
    shape: &Shape,
    m: &MatrixTarget,
    budget: Option<Duration>,
    start: Instant,
) -> Result<Option<IdentityVerdict>> {
    let d = t.degree();
    let arity = shape.arity(d);
    let k = m.dim();
    let total = (k as u64)
        .checked_pow(arity as u32)
        .filter(|&tot| tot <= u64::MAX / 2)
        .ok_or_else(|| Error::invalid_parameter("tuple count overflows"))?;
    let fact = fact_table(d);
    let fast = m.units && matches!(shape, Shape::Plain);
    let aborted = AtomicBool::new(false);
    let eval = |i: u64| -> Result<Matrix<Scalar>> {
        let tup = digits(i, k, arity);
        if fast {
            let args: Vec<(usize, usize)> = tup.iter().map(|&b| (b / m.n, b % m.n)).collect();
            Ok(eval_units(t.coeffs(), m.n, &args, &fact))
        } else {
            let args: Vec<Matrix<Scalar>> = tup.iter().map(|&b| m.basis[b].clone()).collect();
            generic_eval(t, shape, &args, m.n)
        }
    };
    let first_bad = (0..total).into_par_iter().find_first(|&i| {
        if let Some(b) = budget {
            if i % 4096 == 0 && start.elapsed() > b {
                aborted.store(true, Ordering::Relaxed);
            }
        }
        if aborted.load(Ordering::Relaxed) {
            return true;
        }
        match eval(i) {
            Ok(v) => !v.is_zero(),
            Err(_) => true,
        }
    });
    if aborted.load(Ordering::Relaxed) {
        return Ok(None);
    }
    let (status, evaluations) = match first_bad {
        None => (IdentityStatus::HoldsExact, total),
        Some(i) => {
            let v = eval(i)?;
            // re-evaluate generically so the counterexample does not rest on the fast path
            let tup = digits(i, k, arity);
            let args: Vec<Matrix<Scalar>> = tup.iter().map(|&b| m.basis[b].clone()).collect();
            let check = generic_eval(t, shape, &args, m.n)?;
            if check != v || check.is_zero() {
                return Err(Error::Unsupported("counterexample failed re-evaluation".into()));
            }
            (
                IdentityStatus::Fails {
                    counterexample: tup.iter().map(|&b| m.labels[b].clone()).collect(),
                    value: format_matrix(&v),
                },
                i + 1,
            )
        }
    };
    Ok(Some(IdentityVerdict {
        status,
        degree: d,
        shape: shape.name().into(),
        evaluations,
        fallback: false,
        elapsed_ms: 0,
    }))
}

fn sample_matrices(t: &MultilinearTemplate, shape: &Shape, m: &MatrixTarget, count: usize, seed: u64) -> Result<IdentityVerdict> {
    let d = t.degree();
    let arity = shape.arity(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<Vec<Vec<i64>>> = (0..count)
        .map(|_| (0..arity).map(|_| (0..m.dim()).map(|_| rng.gen_range(-3..=3)).collect()).collect())
        .collect();
    let combine = |cs: &[i64]| -> Matrix<Scalar> {
        cs.iter()
            .zip(&m.basis)
            .filter(|(c, _)| **c != 0)
            .fold(Matrix::zeros(m.n, m.n), |acc, (c, b)| acc.add(&b.scale(&Scalar::from_int(*c))))
    };
    let results: Vec<Result<Matrix<Scalar>>> = tuples
        .par_iter()
        .map(|tup| {
            let args: Vec<Matrix<Scalar>> = tup.iter().map(|cs| combine(cs)).collect();
            generic_eval(t, shape, &args, m.n)
        })
        .collect();
    let mut status = IdentityStatus::HoldsOnSample;
    let mut evaluations = 0;
    for (tup, r) in tuples.iter().zip(results) {
        evaluations += 1;
        let v = r?;
        if !v.is_zero() {
            status = IdentityStatus::Fails {
                counterexample: tup.iter().map(|cs| format_matrix(&combine(cs))).collect(),
                value: format_matrix(&v),
            };
            break;
        }
    }
    Ok(IdentityVerdict {
        status,
        degree: d,
        shape: shape.name().into(),
        evaluations,
        fallback: false,
        elapsed_ms: 0,
    })
}

/// PBW monomials `w·γ` with `weight(w) ≤ bound` and every free exponent of `γ` in `[−bound, bound]`.
pub fn pbw_monomials(p: &Presentation, bound: u32) -> Vec<AlgebraElement> {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut i = 0;
    while i < words.len() {
        let w = words[i].clone();
        i += 1;
        for g in 0..p.gens().len() {
            let mut v = w.clone();
            v.push(g);
            if p.weight(&v) <= bound && p.is_normal_word(&v) {
                words.push(v);
            }
        }
    }
    let gamma = p.gamma();
    let mut elems: Vec<Vec<i64>> = vec![Vec::new()];
    for k in 0..gamma.ngens() {
        let range: Vec<i64> = match k.checked_sub(gamma.free_rank()) {
            Some(t) => (0..gamma.torsion()[t] as i64).collect(),
            None => (-(bound as i64)..=bound as i64).collect(),
        };
        elems = elems
            .into_iter()
            .flat_map(|e| {
                range.iter().map(move |&c| {
                    let mut e = e.clone();
                    e.push(c);
                    e
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for w in &words {
        for e in &elems {
            out.push(p.raw(w.clone(), GammaElem(e.clone()), Scalar::one()));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub degree: usize,
    pub dimension: usize,
    pub basis: Vec<MultilinearTemplate>,
    pub tuples: u64,
    pub method: String,
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

/// Echelon form over `F_p` with normalized pivots.
struct ModEchelon {
    cols: usize,
    rows: Vec<(usize, Vec<u64>)>,
    pivot_of: Vec<Option<usize>>,
}

impl ModEchelon {
    fn new(cols: usize) -> Self {
        ModEchelon {
            cols,
            rows: Vec::new(),
            pivot_of: vec![None; cols],
        }
    }

    fn insert_sparse(&mut self, support: &[u16]) -> bool {
        let mut v = vec![0u64; self.cols];
        for &s in support {
            v[s as usize] = (v[s as usize] + 1) % P;
        }
        for c in 0..self.cols {
            if v[c] == 0 {
                continue;
            }
            match self.pivot_of[c] {
                Some(r) => {
                    let f = v[c];
                    let row = &self.rows[r].1;
                    for j in c..self.cols {
                        if row[j] != 0 {
                            v[j] = (v[j] + P - mulmod(f, row[j])) % P;
                        }
                    }
                }
                None => {
                    let inv = invmod(v[c]);
                    for x in v[c..].iter_mut() {
                        *x = mulmod(*x, inv);
                    }
                    self.pivot_of[c] = Some(self.rows.len());
                    self.rows.push((c, v));
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Kernel basis mod p, one vector per free column.
    fn kernel(&self) -> Vec<Vec<u64>> {
        let mut rows: Vec<(usize, Vec<u64>)> = self.rows.clone();
        rows.sort_by_key(|r| r.0);
        // back substitution to reduced form
        for i in (0..rows.len()).rev() {
            let (pc, pr) = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                let f = row.1[pc];
                if f != 0 {
                    for j in pc..self.cols {
                        if pr[j] != 0 {
                            row.1[j] = (row.1[j] + P - mulmod(f, pr[j])) % P;
                        }
                    }
                }
            }
        }
        let pivots: HashSet<usize> = rows.iter().map(|r| r.0).collect();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (pc, r) in &rows {
                    v[*pc] = (P - r[f]) % P;
                }
                v
            })
            .collect()
    }
}

fn rational_reconstruct(a: u64) -> Option<BigRational> {
    let bound = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(BigInt::from(r1), BigInt::from(t1)))
}

/// Rows of the matrix-unit system: for each basis tuple and each output entry,
/// the set of permutations whose product lands on that entry.
fn unit_rows(n: usize, d: usize) -> Vec<Vec<u16>> {
    let k = n * n;
    let total = (k as u64).pow(d as u32);
    let fact = fact_table(d);
    let chunk = 4096u64;
    let chunks: Vec<HashSet<Vec<u16>>> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut set = HashSet::new();
            let mut buckets: Vec<Vec<u16>> = vec![Vec::new(); n * n];
            for i in c * chunk..((c + 1) * chunk).min(total) {
                let args: Vec<(usize, usize)> = digits(i, k, d).iter().map(|&b| (b / n, b % n)).collect();
                unit_walk(&args, &fact, &|_, _| false, &mut |rank, r, col| buckets[r * n + col].push(rank as u16));
                for b in buckets.iter_mut() {
                    if !b.is_empty() {
                        set.insert(std::mem::take(b));
                    }
                }
            }
            set
        })
        .collect();
    let mut all: HashSet<Vec<u16>> = HashSet::new();
    for s in chunks {
        all.extend(s);
    }
    let mut rows: Vec<Vec<u16>> = all.into_iter().collect();
    rows.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    rows
}

fn units_kernel(n: usize, d: usize) -> Result<Vec<Vec<Scalar>>> {
    let cols = factorial(d);
    let rows = unit_rows(n, d);
    let mut ech = ModEchelon::new(cols);
    let mut idle = 0;
    let mut next = 0;
    loop {
        while next < rows.len() && ech.rank() < cols && idle < 2000 {
            if ech.insert_sparse(&rows[next]) {
                idle = 0;
            } else {
                idle += 1;
            }
            next += 1;
        }
        if ech.rank() == cols {
            return Ok(Vec::new());
        }
        let kernel = ech.kernel();
        let bad = rows.iter().find(|row| {
            kernel
                .iter()
                .any(|v| row.iter().fold(0u64, |acc, &s| (acc + v[s as usize]) % P) != 0)
        });
        if let Some(row) = bad {
            ech.insert_sparse(row);
            idle = 0;
            continue;
        }
        let mut exact = Vec::new();
        for v in &kernel {
            let q: Option<Vec<BigRational>> = v.iter().map(|&a| rational_reconstruct(a)).collect();
            let q = q.ok_or_else(|| Error::Unsupported("rational reconstruction failed".into()))?;
            exact.push(q);
        }
        let zero = BigRational::from_integer(0.into());
        let ok = rows.iter().all(|row| {
            exact
                .iter()
                .all(|v| row.iter().fold(zero.clone(), |acc, &s| acc + &v[s as usize]) == zero)
        });
        if !ok {
            return Err(Error::Unsupported("reconstructed kernel failed exact verification".into()));
        }
        // rank over Q is at least the rank mod p, so these vectors span the kernel
        return Ok(exact
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::from_rational).collect())
            .collect());
    }
}

fn generic_kernel(m: &MatrixTarget, d: usize, tuple_cap: u64) -> Result<(Vec<Vec<Scalar>>, u64)> {
    let cols = factorial(d);
    let k = m.dim();
    let total = (k as u64)
        .checked_pow(d as u32)
        .filter(|&t| t <= tuple_cap)
        .ok_or_else(|| Error::Inconclusive(format!("{k}^{d} basis tuples exceed the cap {tuple_cap}")))?;
    let perms = crate::freealg::permutations(d);
    let mut span = SpanBuilder::new(cols);
    let mut used = 0;
    for i in 0..total {
        used += 1;
        let tup = digits(i, k, d);
        let prods: Vec<Matrix<Scalar>> = perms
            .iter()
            .map(|s| s.iter().fold(Matrix::identity(m.n), |acc, &j| acc.mul(&m.basis[tup[j]])))
            .collect();
        for e in 0..m.n * m.n {
            let row: Vec<Scalar> = prods.iter().map(|p| p.entries()[e].clone()).collect();
            span.insert(&row);
        }
        if span.rank() == cols {
            break;
        }
    }
    let basis = span.basis();
    let kernel = if basis.is_empty() {
        (0..cols)
            .map(|c| (0..cols).map(|j| if j == c { Scalar::one() } else { Scalar::zero() }).collect())
            .collect()
    } else {
        nullspace(&Matrix::from_rows(basis))
    };
    Ok((kernel, used))
}

/// All `λ` with `∑_σ λ_σ b_{σ(1)}⋯b_{σ(d)} = 0` for every tuple of basis elements.
pub fn multilinear_identity_kernel(m: &MatrixTarget, d: usize, degree_cap: usize) -> Result<KernelReport> {
    if d == 0 || d > degree_cap {
        return Err(Error::Inconclusive(format!("degree {d} outside 1..={degree_cap}")));
    }
    let (kernel, tuples, method) = if m.units {
        let k = units_kernel(m.n, d)?;
        (k, (m.dim() as u64).pow(d as u32), "matrix units, mod-p elimination, exact verification")
    } else {
        let (k, used) = generic_kernel(m, d, DEFAULT_TUPLE_CAP)?;
        (k, used, "exact elimination over basis tuples")
    };
    let basis = kernel
        .into_iter()
        .map(|v| MultilinearTemplate::new(d, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelReport {
        degree: d,
        dimension: basis.len(),
        basis,
        tuples,
        method: method.into(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinDegreeReport {
    pub min_degree: Option<usize>,
    pub searched_up_to: usize,
    pub kernel_dims: Vec<usize>,
}

pub fn min_multilinear_degree(m: &MatrixTarget, d_max: usize, degree_cap: usize) -> Result<MinDegreeReport> {
    if d_max > degree_cap {
        return Err(Error::Inconclusive(format!("d_max {d_max} exceeds the cap {degree_cap}")));
    }
    let mut dims = Vec::new();
    for d in 1..=d_max {
        let k = multilinear_identity_kernel(m, d, degree_cap)?;
        dims.push(k.dimension);
        if k.dimension > 0 {
            return Ok(MinDegreeReport {
                min_degree: Some(d),
                searched_up_to: d,
                kernel_dims: dims,
            });
        }
    }
    Ok(MinDegreeReport {
        min_degree: None,
        searched_up_to: d_max,
        kernel_dims: dims,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaReport {
    pub element: String,
    pub dim: Option<usize>,
    pub exceeds_cap: bool,
    pub stabilization_degree: usize,
    pub cap: usize,
}

/// `dim (ad H)(h)`, or "exceeds cap".
pub fn ad_orbit_dim(p: &Presentation, h: &AlgebraElement, cap: usize) -> Result<DeltaReport> {
    let r = ad_orbit(p, h, cap)?;
    Ok(DeltaReport {
        element: p.format(h),
        dim: r.dim,
        exceeds_cap: r.exceeds_cap,
        stabilization_degree: r.stabilization_depth,
        cap,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaSetReport {
    pub module_dim: usize,
    pub identity_degree: usize,
    /// Threshold `m = n²`.
    pub threshold: usize,
    pub basis_orbit_dims: Vec<usize>,
    /// Dimension of the span of the basis vectors lying in `δ^m`.
    pub member_span_dim: usize,
    pub codimension: usize,
    /// `codimension < n`.
    pub bound_holds: bool,
}

/// `dim(H·v)` for the algebra generated by the action matrices.
pub fn module_orbit_dim(action: &MatrixRep<Scalar>, v: &[Scalar]) -> usize {
    orbit_span(action, v).len()
}

/// Whether `v ∈ δ^m(V) = {v : dim(H·v) ≤ m}`.
pub fn delta_member(action: &MatrixRep<Scalar>, v: &[Scalar], m: usize) -> bool {
    module_orbit_dim(action, v) <= m
}

pub fn delta_inequality_check(action: &MatrixRep<Scalar>, identity_degree: usize) -> DeltaSetReport {
    let n = action.dim();
    let threshold = identity_degree * identity_degree;
    let mut span = SpanBuilder::new(n);
    let mut dims = Vec::new();
    for j in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[j] = Scalar::one();
        let d = module_orbit_dim(action, &e);
        dims.push(d);
        if d <= threshold {
            span.insert(&e);
        }
    }
    let codimension = n - span.rank();
    DeltaSetReport {
        module_dim: n,
        identity_degree,
        threshold,
        basis_orbit_dims: dims,
        member_span_dim: span.rank(),
        codimension,
        bound_holds: codimension < identity_degree,
    }
}

/// A bilinear map `U × V → W` as `f(e_i, e_j) = ∑_k t[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct Bilinear {
    pub dims: (usize, usize, usize),
    pub t: Vec<Vec<Vec<Scalar>>>,
}

impl Bilinear {
    pub fn new(t: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let du = t.len();
        let dv = t.first().map_or(0, |r| r.len());
        let dw = t.first().and_then(|r| r.first()).map_or(0, |c| c.len());
        if t.iter().any(|r| r.len() != dv || r.iter().any(|c| c.len() != dw)) {
            return Err(Error::invalid_input("ragged tensor"));
        }
        Ok(Bilinear { dims: (du, dv, dw), t })
    }

    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let (du, dv, dw) = self.dims;
        let mut out = vec![Scalar::zero(); dw];
        for i in 0..du {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..dv {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.t[i][j][k].is_zero() {
                        *o = &*o + &(&c * &self.t[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// `dim f(u, V)`.
    pub fn row_dim(&self, u: &[Scalar]) -> usize {
        let mut s = SpanBuilder::new(self.dims.2);
        for j in 0..self.dims.1 {
            let mut e = vec![Scalar::zero(); self.dims.1];
            e[j] = Scalar::one();
            s.insert(&self.apply(u, &e));
        }
        s.rank()
    }

    /// `dim f(U, v)`.
    pub fn col_dim(&self, v: &[Scalar]) -> usize {
        let mut s = SpanBuilder::new(self.dims.2);
        for i in 0..self.dims.0 {
            let mut e = vec![Scalar::zero(); self.dims.0];
            e[i] = Scalar::one();
            s.insert(&self.apply(&e, v));
        }
        s.rank()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BilinearReport {
    pub image_dim: usize,
    /// Largest `dim f(u, V)` seen over basis vectors and random `u`.
    pub m: usize,
    /// Largest `dim f(U, v)` seen over basis vectors and random `v`.
    pub n: usize,
    pub bound_holds: bool,
    pub trials: usize,
}

/// `dim span f(U, V)` against `m·n`. The sampled `m`, `n` never exceed the true
/// maxima, so `bound_holds = true` is a certificate.
pub fn bilinear_image_dim(f: &Bilinear, trials: usize, seed: u64) -> BilinearReport {
    let (du, dv, dw) = f.dims;
    let mut span = SpanBuilder::new(dw);
    for i in 0..du {
        for j in 0..dv {
            span.insert(&f.t[i][j]);
        }
    }
    let unit = |n: usize, i: usize| -> Vec<Scalar> { (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = |n: usize| -> Vec<Scalar> { (0..n).map(|_| Scalar::from_int(rng.gen_range(-5..=5))).collect() };
    let mut m = (0..du).map(|i| f.row_dim(&unit(du, i))).max().unwrap_or(0);
    let mut n = (0..dv).map(|j| f.col_dim(&unit(dv, j))).max().unwrap_or(0);
    for _ in 0..trials {
        m = m.max(f.row_dim(&random(du)));
        n = n.max(f.col_dim(&random(dv)));
    }
    BilinearReport {
        image_dim: span.rank(),
        m,
        n,
        bound_holds: span.rank() <= m * n,
        trials,
    }
}

/// Evaluates `t` on explicit tuples; returns the index of the first nonzero value.
pub fn first_failure<T: EvalTarget + Sync>(t: &MultilinearTemplate, shape: &Shape, tuples: &[Vec<T::Elem>], target: &T) -> Result<Option<usize>>
where
    T::Elem: Send + Sync,
{
    let results: Vec<Result<bool>> = tuples
        .par_iter()
        .map(|args| substitute_multilinear(t, shape, args, target).map(|v| !target.is_zero(&v)))
        .collect();
    for (i, r) in results.into_iter().enumerate() {
        if r? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
