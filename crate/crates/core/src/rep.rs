//! Exact matrix representations of presented algebras.
//!
//! Matrices act on column vectors: entry `(i, j)` of `R(g)` is the coefficient of
//! `v_i` in `g∘v_j`. The regular representation over `K` is the exception; it uses
//! the row convention so that `u ↦ r_u` is multiplicative.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::GammaElem;
use crate::linalg::{nullspace, Matrix, Ring, SpanBuilder};
use crate::presented::{AlgebraElement, Presentation};
use crate::scalars::{FieldCtx, Scalar};

/// Element of `F[a^{±1}, x^n]`, keyed by the exponents `(i, k)` of `a^i x^k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl Laurent {
    pub fn monomial(c: Scalar, a: i64, x: i64) -> Self {
        let mut l = Laurent::default();
        if !c.is_zero() {
            l.terms.insert((a, x), c);
        }
        l
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Scalar)> {
        self.terms.iter()
    }

    /// Inverse when `self` is a nonzero scalar times a power of `a`.
    pub fn unit_inverse(&self) -> Option<Laurent> {
        let mut it = self.terms.iter();
        let (&(a, x), c) = it.next()?;
        (it.next().is_none() && x == 0).then(|| Laurent::monomial(c.inv(), -a, 0))
    }
}

impl Ring for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn one() -> Self {
        Laurent::monomial(Scalar::one(), 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let s = match out.terms.get(k) {
                Some(d) => d + c,
                None => c.clone(),
            };
            if s.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, s);
            }
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::default();
        for (&(a1, x1), c1) in &self.terms {
            for (&(a2, x2), c2) in &other.terms {
                out = out.add(&Laurent::monomial(c1 * c2, a1 + a2, x1 + x2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        Laurent::monomial(s.clone(), 0, 0)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(a, x), c)) in self.terms.iter().enumerate() {
            let mut parts = Vec::new();
            if a != 0 {
                parts.push(if a == 1 { "a".to_string() } else { format!("a^{a}") });
            }
            if x != 0 {
                parts.push(if x == 1 { "x".to_string() } else { format!("x^{x}") });
            }
            if k > 0 {
                f.write_str(" + ")?;
            }
            match (parts.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{}", c.to_factor_literal())?,
                (false, true) => f.write_str(&parts.join("*"))?,
                (false, false) => write!(f, "{}*{}", c.to_factor_literal(), parts.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Rings whose invertible matrices we can invert exactly.
pub trait RepRing: Ring + fmt::Display {
    fn invert(m: &Matrix<Self>) -> Option<Matrix<Self>>;
}

impl RepRing for Scalar {
    fn invert(m: &Matrix<Scalar>) -> Option<Matrix<Scalar>> {
        invert_scalar(m)
    }
}

impl RepRing for Laurent {
    /// Only monomial matrices (one unit entry per row and column) are handled.
    fn invert(m: &Matrix<Laurent>) -> Option<Matrix<Laurent>> {
        let n = m.rows();
        let mut inv = Matrix::zeros(n, n);
        let mut seen = vec![false; n];
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| !m[(i, j)].is_zero()).collect();
            if nz.len() != 1 || seen[nz[0]] {
                return None;
            }
            seen[nz[0]] = true;
            inv[(nz[0], i)] = m[(i, nz[0])].unit_inverse()?;
        }
        Some(inv)
    }
}

/// Gauss–Jordan inverse over a field.
pub fn invert_scalar(m: &Matrix<Scalar>) -> Option<Matrix<Scalar>> {
    let n = m.rows();
    if !m.is_square() {
        return None;
    }
    let mut a = m.to_rows();
    let mut b = Matrix::<Scalar>::identity(n).to_rows();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let s = a[col][col].inv();
        for j in 0..n {
            a[col][j] = &a[col][j] * &s;
            b[col][j] = &b[col][j] * &s;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                b[r][j] = &b[r][j] - &(&f * &b[col][j]);
            }
        }
    }
    Some(Matrix::from_rows(b))
}

/// An assignment of square matrices to named generators.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep<R> {
    dim: usize,
    mats: BTreeMap<String, Matrix<R>>,
}

impl<R: RepRing> MatrixRep<R> {
    pub fn new(dim: usize, mats: impl IntoIterator<Item = (String, Matrix<R>)>) -> Result<Self> {
        let mats: BTreeMap<_, _> = mats.into_iter().collect();
        for (name, m) in &mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::invalid_input(format!(
                    "matrix for {name} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(MatrixRep { dim, mats })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, name: &str) -> Option<&Matrix<R>> {
        self.mats.get(name)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&String, &Matrix<R>)> {
        self.mats.iter()
    }

    pub fn insert(&mut self, name: impl Into<String>, m: Matrix<R>) {
        self.mats.insert(name.into(), m);
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gens: serde_json::Map<String, serde_json::Value> = self
            .mats
            .iter()
            .map(|(k, m)| {
                let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                (k.clone(), serde_json::json!(rows))
            })
            .collect();
        serde_json::json!({ "dim": self.dim, "generators": gens })
    }
}

impl MatrixRep<Scalar> {
    /// Reads `{dim, generators: {name: [[literal, ..], ..]}}`.
    pub fn from_json(ctx: &FieldCtx, v: &serde_json::Value) -> Result<Self> {
        let dim = v
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::invalid_input("rep needs an integer 'dim'"))? as usize;
        let gens = v
            .get("generators")
            .and_then(|g| g.as_object())
            .ok_or_else(|| Error::invalid_input("rep needs a 'generators' object"))?;
        let mut mats = Vec::new();
        for (name, rows) in gens {
            let rows = rows
                .as_array()
                .ok_or_else(|| Error::invalid_input(format!("{name}: expected a list of rows")))?;
            let mut out = Vec::new();
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::invalid_input(format!("{name}: expected a row list")))?;
                let mut r = Vec::new();
                for e in row {
                    let s = match e {
                        serde_json::Value::String(s) => ctx.parse(s)?,
                        serde_json::Value::Number(n) => ctx.parse(&n.to_string())?,
                        _ => return Err(Error::invalid_input(format!("{name}: bad entry {e}"))),
                    };
                    r.push(s);
                }
                if r.len() != dim {
                    return Err(Error::invalid_input(format!("{name}: row of length {}", r.len())));
                }
                out.push(r);
            }
            if out.len() != dim {
                return Err(Error::invalid_input(format!("{name}: {} rows, expected {dim}", out.len())));
            }
            mats.push((name.clone(), Matrix::from_rows(out)));
        }
        MatrixRep::new(dim, mats)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RepCheckReport {
    pub relations_checked: usize,
    pub failures: Vec<String>,
}

impl RepCheckReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates elements of a presentation under a representation.
struct Evaluator<R> {
    x: Vec<Matrix<R>>,
    g: Vec<Matrix<R>>,
    g_inv: Vec<Matrix<R>>,
}

impl<R: RepRing> Evaluator<R> {
    fn word(&self, w: &[usize]) -> Matrix<R> {
        let n = self.x.first().or(self.g.first()).map_or(0, |m| m.rows());
        w.iter().fold(Matrix::identity(n), |acc, &i| acc.mul(&self.x[i]))
    }

    fn gamma(&self, e: &GammaElem, n: usize) -> Matrix<R> {
        let mut acc = Matrix::identity(n);
        for (k, &c) in e.0.iter().enumerate() {
            let m = if c >= 0 { &self.g[k] } else { &self.g_inv[k] };
            acc = acc.mul(&m.pow(c.unsigned_abs() as u32));
        }
        acc
    }

    fn element(&self, e: &AlgebraElement, n: usize) -> Matrix<R> {
        let mut acc = Matrix::zeros(n, n);
        for (m, c) in e.terms() {
            let t = self.word(&m.word).mul(&self.gamma(&m.gamma, n));
            acc = acc.add(&t.scale(&R::from_scalar(c)));
        }
        acc
    }
}

/// Checks the grouplike commutations, torsion orders, derived-generator
/// definitions and every rewrite rule of `p` on the matrices of `r`.
///
/// Matrices must be given for every grouplike generator and every primitive
/// root vector; derived generators are filled in from their expansion when absent.
pub fn check_rep_relations<R: RepRing>(r: &MatrixRep<R>, p: &Presentation) -> Result<RepCheckReport> {
    let n = r.dim;
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut g = Vec::new();
    let mut g_inv = Vec::new();
    for name in p.gamma_names() {
        let m = r
            .get(name)
            .ok_or_else(|| Error::invalid_input(format!("rep has no matrix for {name}")))?;
        checked += 1;
        match R::invert(m) {
            Some(inv) => g_inv.push(inv),
            None => {
                failures.push(format!("{name} is not invertible"));
                g_inv.push(Matrix::identity(n));
            }
        }
        g.push(m.clone());
    }
    let mut ev = Evaluator { x: Vec::new(), g, g_inv };
    for (i, gen) in p.gens().iter().enumerate() {
        let m = match (r.get(&gen.name), &gen.expansion) {
            (Some(m), _) => m.clone(),
            (None, Some(exp)) => {
                let mut acc = Matrix::zeros(n, n);
                for (w, c) in exp {
                    acc = acc.add(&ev.word(w).scale(&R::from_scalar(c)));
                }
                acc
            }
            (None, None) => return Err(Error::invalid_input(format!("rep has no matrix for {}", gen.name))),
        };
        debug_assert_eq!(ev.x.len(), i);
        ev.x.push(m);
    }
    for (i, gen) in p.gens().iter().enumerate() {
        if let (Some(exp), Some(given)) = (&gen.expansion, r.get(&gen.name)) {
            checked += 1;
            let mut acc = Matrix::zeros(n, n);
            for (w, c) in exp {
                acc = acc.add(&ev.word(w).scale(&R::from_scalar(c)));
            }
            if &acc != given {
                failures.push(format!("definition of {} fails", gen.name));
            }
        }
        for (k, gname) in p.gamma_names().iter().enumerate() {
            checked += 1;
            let gk = p.gamma().generator(k);
            let c = p.char_word(&[i], &gk);
            let lhs = ev.g[k].mul(&ev.x[i]);
            let rhs = ev.x[i].mul(&ev.g[k]).scale(&R::from_scalar(&c));
            if lhs != rhs {
                failures.push(format!("{gname}*{0} = {1}*{0}*{gname} fails", gen.name, c.to_factor_literal()));
            }
        }
    }
    for (k, gname) in p.gamma_names().iter().enumerate() {
        if let Some(&m) = k.checked_sub(p.gamma().free_rank()).and_then(|t| p.gamma().torsion().get(t)) {
            checked += 1;
            if ev.g[k].pow(m as u32) != Matrix::identity(n) {
                failures.push(format!("{gname}^{m} = 1 fails"));
            }
        }
    }
    let id = p.gamma().identity();
    for (lhs, rhs) in p.rules() {
        checked += 1;
        let l = ev.word(lhs);
        let rv = ev.element(rhs, n);
        if l != rv {
            let lm = p.format_mono(&p.mono(lhs.clone(), id.clone()));
            failures.push(format!("rule {lm} -> {} fails", p.format(rhs)));
        }
    }
    Ok(RepCheckReport {
        relations_checked: checked,
        failures,
    })
}

/// The `n`-dimensional module `a∘v_i = v_{i−1}`, `x∘v_i = q^i v_{i+1}`, indices mod `n`,
/// where `n` is the order of `q`.
pub fn module_vn(ctx: &FieldCtx, q: &Scalar) -> Result<MatrixRep<Scalar>> {
    let n = ctx
        .root_of_unity_order(q)?
        .ok_or_else(|| Error::invalid_parameter(format!("{q} is not a root of unity")))?;
    module_vn_dim(q, n as usize)
}

/// The formulas of [`module_vn`] on an arbitrary dimension `n`; they define a
/// module of `F_(q)` whenever `q^n = 1`.
pub fn module_vn_dim(q: &Scalar, n: usize) -> Result<MatrixRep<Scalar>> {
    if n == 0 {
        return Err(Error::invalid_parameter("dimension must be positive"));
    }
    let mut a = Matrix::zeros(n, n);
    let mut x = Matrix::zeros(n, n);
    for j in 0..n {
        a[((j + n - 1) % n, j)] = Scalar::one();
        x[((j + 1) % n, j)] = q.pow(j as i64);
    }
    MatrixRep::new(n, [("a".to_string(), a), ("x".to_string(), x)])
}

/// Dimension of the commutant `{M : M R(g) = R(g) M for all g}`.
pub fn centralizer_dim(r: &MatrixRep<Scalar>) -> usize {
    let n = r.dim;
    let nn = n * n;
    let mut rows = Vec::new();
    for (_, g) in r.generators() {
        // (M G − G M)_{ij} = Σ_k M_ik G_kj − G_ik M_kj, unknown M_ab at index a*n+b
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Scalar::zero(); nn];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + &g[(k, j)];
                    row[k * n + j] = &row[k * n + j] - &g[(i, k)];
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return nn;
    }
    nullspace(&Matrix::from_rows(rows)).len()
}

fn commutant_basis(r: &MatrixRep<Scalar>) -> Vec<Matrix<Scalar>> {
    let n = r.dim;
    let nn = n * n;
    let mut rows = Vec::new();
    for (_, g) in r.generators() {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Scalar::zero(); nn];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + &g[(k, j)];
                    row[k * n + j] = &row[k * n + j] - &g[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..nn)
            .map(|t| (0..nn).map(|s| if s == t { Scalar::one() } else { Scalar::zero() }).collect())
            .collect()
    } else {
        nullspace(&Matrix::from_rows(rows))
    };
    basis
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(n).map(|c| c.to_vec()).collect()))
        .collect()
}

/// Span of the orbit of `v` under the generator matrices.
pub fn orbit_span(r: &MatrixRep<Scalar>, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut span = SpanBuilder::new(r.dim);
    let mut frontier = Vec::new();
    if span.insert(v) {
        frontier.push(v.to_vec());
    }
    while let Some(w) = frontier.pop() {
        for (_, g) in r.generators() {
            let u = g.apply(&w);
            if span.insert(&u) {
                frontier.push(u);
            }
        }
    }
    span.basis()
}

/// Dimension of the subalgebra of `M_n` generated by the representation.
pub fn image_algebra_dim(r: &MatrixRep<Scalar>) -> usize {
    let n = r.dim;
    let mut span = SpanBuilder::new(n * n);
    let id = Matrix::<Scalar>::identity(n);
    span.insert(id.entries());
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for (_, g) in r.generators() {
            let u = g.mul(&m);
            if span.insert(u.entries()) {
                frontier.push(u);
            }
        }
    }
    span.rank()
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    /// Certified: the image algebra is all of `M_n(F)`.
    Irreducible { centralizer_dim: usize, image_dim: usize },
    /// A proper nonzero invariant subspace.
    Reducible { basis: Vec<Vec<Scalar>> },
    /// Every search failed but the image algebra is proper; possible only when
    /// the commutant is a division algebra larger than `F`.
    Undetermined { centralizer_dim: usize, image_dim: usize },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

fn kernel_subspace(m: &Matrix<Scalar>) -> Option<Vec<Vec<Scalar>>> {
    let k = nullspace(m);
    (!k.is_empty() && k.len() < m.rows()).then_some(k)
}

/// Searches for a proper invariant subspace: orbits of basis vectors, then
/// kernels of `C − λ` for commutant elements `C` and candidate eigenvalues `λ`
/// (zero, the diagonal entries of `C`, and the roots of unity of the field).
pub fn invariant_subspace_search(ctx: &FieldCtx, r: &MatrixRep<Scalar>) -> Irreducibility {
    let n = r.dim;
    let mut best: Option<Vec<Vec<Scalar>>> = None;
    let keep = |best: &mut Option<Vec<Vec<Scalar>>>, b: Vec<Vec<Scalar>>| {
        if !b.is_empty() && b.len() < n && best.as_ref().is_none_or(|cur| b.len() < cur.len()) {
            *best = Some(b);
        }
    };
    for j in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[j] = Scalar::one();
        keep(&mut best, orbit_span(r, &e));
    }
    let image_dim = image_algebra_dim(r);
    let centralizer_dim = centralizer_dim(r);
    if best.is_none() && image_dim < n * n {
        let roots: Vec<Scalar> = {
            let m = ctx.torsion_exponent() as i64;
            let t = ctx.torsion_generator();
            (0..m).map(|k| t.pow(k)).collect()
        };
        'outer: for c in commutant_basis(r) {
            let mut cands = vec![Scalar::zero()];
            cands.extend((0..n).map(|i| c[(i, i)].clone()));
            cands.extend(roots.iter().cloned());
            for lam in cands {
                let shifted = c.sub(&Matrix::identity(n).scale(&lam));
                if let Some(k) = kernel_subspace(&shifted) {
                    // kernels of commutant elements are invariant; shrink via orbits
                    let mut sub = k.clone();
                    for v in &k {
                        let o = orbit_span(r, v);
                        if o.len() < sub.len() {
                            sub = o;
                        }
                    }
                    keep(&mut best, sub);
                    break 'outer;
                }
            }
        }
    }
    match best {
        Some(basis) => Irreducibility::Reducible { basis },
        None if image_dim == n * n => Irreducibility::Irreducible {
            centralizer_dim,
            image_dim,
        },
        None => Irreducibility::Undetermined {
            centralizer_dim,
            image_dim,
        },
    }
}

/// Whether `span(basis)` is stable under every generator.
pub fn is_invariant(r: &MatrixRep<Scalar>, basis: &[Vec<Scalar>]) -> bool {
    let mut span = SpanBuilder::new(r.dim);
    for b in basis {
        span.insert(b);
    }
    basis
        .iter()
        .all(|b| r.generators().all(|(_, g)| span.contains(&g.apply(b))))
}

/// The module `V` on the window `v_{−D}, …, v_D`.
#[derive(Debug, Clone)]
pub struct WindowedModule {
    q: Scalar,
    radius: i64,
}

/// Vector of the windowed module, indexed by basis label.
pub type WindowVector = BTreeMap<i64, Scalar>;

impl WindowedModule {
    pub fn new(q: Scalar, radius: i64) -> Result<Self> {
        if q.is_zero() || radius < 0 {
            return Err(Error::invalid_parameter("need q ≠ 0 and a nonnegative radius"));
        }
        Ok(WindowedModule { q, radius })
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn basis(&self, i: i64) -> Result<WindowVector> {
        self.check(i)?;
        Ok([(i, Scalar::one())].into())
    }

    fn check(&self, i: i64) -> Result<()> {
        if i.abs() > self.radius {
            return Err(Error::Inconclusive(format!("window exceeded at v_{i}")));
        }
        Ok(())
    }

    /// Applies `a`, `a^-1` or `x` (by name).
    pub fn act(&self, gen: &str, v: &WindowVector) -> Result<WindowVector> {
        let mut out = WindowVector::new();
        for (&i, c) in v {
            let (j, s) = match gen {
                "a" => (i - 1, c.clone()),
                "a^-1" => (i + 1, c.clone()),
                "x" => (i + 1, c * &self.q.pow(i)),
                _ => return Err(Error::invalid_input(format!("unknown generator {gen}"))),
            };
            self.check(j)?;
            out.insert(j, s);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Applies a word, rightmost letter first.
    pub fn act_word(&self, word: &[&str], v: &WindowVector) -> Result<WindowVector> {
        word.iter().rev().try_fold(v.clone(), |acc, g| self.act(g, &acc))
    }

    /// Checks `a x = q x a` and `a a^-1 = 1` on every basis vector where both sides stay inside.
    pub fn check_relations(&self) -> Result<usize> {
        let mut checked = 0;
        for i in -self.radius..=self.radius {
            let v = self.basis(i)?;
            if let (Ok(l), Ok(r)) = (self.act_word(&["a", "x"], &v), self.act_word(&["x", "a"], &v)) {
                let r: WindowVector = r.into_iter().map(|(k, c)| (k, &c * &self.q)).collect();
                if l != r {
                    return Err(Error::invalid_input(format!("a x = q x a fails at v_{i}")));
                }
                checked += 1;
            }
            if let Ok(w) = self.act_word(&["a", "a^-1"], &v) {
                if w != v {
                    return Err(Error::invalid_input(format!("a a^-1 = 1 fails at v_{i}")));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }
}

/// Right regular representation of `F_(q)` over `K = F[a^{±1}, x^n]` on the basis
/// `1, x, …, x^{n−1}`, with `e_i · u = Σ_j (r_u)_{ij} e_j`.
#[derive(Debug, Clone)]
pub struct RegularRep {
    n: usize,
    q: Scalar,
    rep: MatrixRep<Laurent>,
}

pub fn regular_rep_fq(ctx: &FieldCtx, q: &Scalar) -> Result<RegularRep> {
    let n = ctx
        .root_of_unity_order(q)?
        .ok_or_else(|| Error::invalid_parameter(format!("{q} has infinite order")))? as usize;
    let mut ra = Matrix::zeros(n, n);
    let mut rx = Matrix::zeros(n, n);
    for i in 0..n {
        // x^i a = q^{-i} a x^i
        ra[(i, i)] = Laurent::monomial(q.pow(-(i as i64)), 1, 0);
        if i + 1 < n {
            rx[(i, i + 1)] = Laurent::one();
        } else {
            rx[(i, 0)] = Laurent::monomial(Scalar::one(), 0, n as i64);
        }
    }
    let rep = MatrixRep::new(n, [("a".to_string(), ra), ("x".to_string(), rx)])?;
    Ok(RegularRep { n, q: q.clone(), rep })
}

impl RegularRep {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rep(&self) -> &MatrixRep<Laurent> {
        &self.rep
    }

    /// `r_u` computed directly from products `x^i · u` in the presentation `p` of `F_(q)`.
    pub fn matrix_of(&self, p: &Presentation, u: &AlgebraElement) -> Result<Matrix<Laurent>> {
        let n = self.n;
        let mut m = Matrix::<Laurent>::zeros(n, n);
        for i in 0..n {
            let prod = p.mul(&p.pow(&p.x(0), i as u32), u);
            for (mono, c) in prod.terms() {
                if mono.word.iter().any(|&w| w != 0) {
                    return Err(Error::invalid_input("not an element of F_(q)"));
                }
                let k = mono.word.len() as i64;
                let j = mono.gamma.0[0];
                // x^k a^j = q^{-jk} a^j x^k, and x^k = x^{n t} x^r
                let (t, r) = (k.div_euclid(n as i64), k.rem_euclid(n as i64) as usize);
                let coef = c * &self.q.pow(-j * k);
                m[(i, r)] = m[(i, r)].add(&Laurent::monomial(coef, j, t * n as i64));
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::{fq, parse_element};

    fn cyc(n: u32) -> FieldCtx {
        FieldCtx::cyclotomic(n).unwrap()
    }

    #[test]
    fn vn_small_example() {
        let k = cyc(2);
        let q = Scalar::from_int(-1);
        let r = module_vn(&k, &q).unwrap();
        let x = r.get("x").unwrap();
        let a = r.get("a").unwrap();
        assert_eq!(x.apply(&[Scalar::zero(), Scalar::one()]), vec![Scalar::from_int(-1), Scalar::zero()]);
        assert_eq!(a.apply(&[Scalar::one(), Scalar::zero()]), vec![Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn vn_passes_relations_and_is_irreducible() {
        for n in 2..=5u32 {
            let k = cyc(n);
            let q = k.zeta().unwrap();
            let r = module_vn(&k, &q).unwrap();
            let p = fq(k, q).unwrap();
            assert!(check_rep_relations(&r, &p).unwrap().passes());
            assert_eq!(r.get("a").unwrap().pow(n), Matrix::identity(n as usize));
            assert_eq!(centralizer_dim(&r), 1);
            assert!(invariant_subspace_search(&k, &r).is_irreducible());
        }
    }

    #[test]
    fn perturbed_rep_fails() {
        let k = cyc(3);
        let q = k.zeta().unwrap();
        let mut r = module_vn(&k, &q).unwrap();
        let mut x = r.get("x").unwrap().clone();
        x[(1, 0)] = Scalar::from_int(2);
        r.insert("x", x);
        let rep = check_rep_relations(&r, &fq(k, q).unwrap()).unwrap();
        assert!(!rep.passes());
        assert!(rep.failures[0].contains("a*x"), "{:?}", rep.failures);
    }

    #[test]
    fn trivial_reps() {
        let k = FieldCtx::rational();
        let id = Matrix::<Scalar>::identity(2);
        let r = MatrixRep::new(2, [("a".into(), id.clone()), ("x".into(), id)]).unwrap();
        assert_eq!(centralizer_dim(&r), 4);
        match invariant_subspace_search(&k, &r) {
            Irreducibility::Reducible { basis } => assert_eq!(basis.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_vn_is_reducible() {
        let k = cyc(3);
        let q = k.zeta().unwrap();
        let r = module_vn_dim(&q, 6).unwrap();
        assert!(check_rep_relations(&r, &fq(k, q).unwrap()).unwrap().passes());
        match invariant_subspace_search(&k, &r) {
            Irreducibility::Reducible { basis } => {
                assert!(basis.len() < 6);
                assert!(is_invariant(&r, &basis));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn direct_sum_centralizer() {
        let k = cyc(3);
        let z = k.zeta().unwrap();
        let r1 = module_vn(&k, &z).unwrap();
        let r2 = module_vn(&k, &z.pow(2)).unwrap();
        let mut mats = Vec::new();
        for g in ["a", "x"] {
            let (m1, m2) = (r1.get(g).unwrap(), r2.get(g).unwrap());
            let mut m = Matrix::<Scalar>::zeros(6, 6);
            for i in 0..3 {
                for j in 0..3 {
                    m[(i, j)] = m1[(i, j)].clone();
                    m[(i + 3, j + 3)] = m2[(i, j)].clone();
                }
            }
            mats.push((g.to_string(), m));
        }
        let r = MatrixRep::new(6, mats).unwrap();
        assert_eq!(centralizer_dim(&r), 2);
    }

    #[test]
    fn regular_rep_n2() {
        let k = FieldCtx::rational();
        let q = Scalar::from_int(-1);
        let reg = regular_rep_fq(&k, &q).unwrap();
        let rx = reg.rep().get("x").unwrap();
        let x2 = Laurent::monomial(Scalar::one(), 0, 2);
        assert_eq!(
            rx.transpose(),
            Matrix::from_rows(vec![vec![Laurent::zero(), x2], vec![Laurent::one(), Laurent::zero()]])
        );
        let p = fq(k, q).unwrap();
        assert!(check_rep_relations(reg.rep(), &p).unwrap().passes());
        for s in ["x", "a", "x*a^-1 + 3*x^3"] {
            let u = parse_element(s, &p).unwrap();
            let m = reg.matrix_of(&p, &u).unwrap();
            if s != "x*a^-1 + 3*x^3" {
                assert_eq!(&m, reg.rep().get(s).unwrap());
            }
        }
        let u = parse_element("x*a^-1 + 3*x^3", &p).unwrap();
        let v = parse_element("a^2 - x", &p).unwrap();
        let ruv = reg.matrix_of(&p, &p.mul(&u, &v)).unwrap();
        let prod = reg.matrix_of(&p, &u).unwrap().mul(&reg.matrix_of(&p, &v).unwrap());
        assert_eq!(ruv, prod);
    }

    #[test]
    fn window_relations() {
        let w = WindowedModule::new(Scalar::from_int(2), 4).unwrap();
        assert!(w.check_relations().unwrap() > 0);
        let v = w.basis(4).unwrap();
        assert!(matches!(w.act("x", &v), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn json_round_trip() {
        let k = cyc(4);
        let r = module_vn(&k, &k.zeta().unwrap()).unwrap();
        let back = MatrixRep::from_json(&k, &r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
