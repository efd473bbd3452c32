//! Color Lie superalgebras, their enveloping algebras, and the PI criterion for
//! smash products `U(L) # FG`.
//!
//! Anticommutativity is checked as `[x, y] = −β(t, u)[y, x]`, the sign produced by
//! the bracket `[x, y] = xy − β(t, u)yx` of a graded associative algebra.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Character, FgAbelianGroup, FiniteGroup, GammaElem, DEFAULT_SUBGROUP_CAP};
use crate::linalg::{Matrix, SpanBuilder};
use crate::presented::{check_confluence, AlgebraElement, CompletionReport, Convention, Preset, Presentation, XGen};
use crate::scalars::{FieldCtx, Scalar};

pub const DEFAULT_DIM_CAP: usize = 12;

/// `β : T × T → F^×` given on generators of a finite abelian `T`.
#[derive(Debug, Clone)]
pub struct Bicharacter {
    ctx: FieldCtx,
    t: FgAbelianGroup,
    values: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn new(ctx: FieldCtx, t: FgAbelianGroup, values: Vec<Vec<Scalar>>) -> Result<Self> {
        if t.free_rank() != 0 {
            return Err(Error::invalid_parameter("grading group must be finite"));
        }
        let k = t.ngens();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(Error::Arity {
                expected: k,
                got: values.len(),
            });
        }
        for r in &values {
            for v in r {
                if v.is_zero() || !ctx.contains(v) {
                    return Err(Error::invalid_input(format!("bad bicharacter value {v}")));
                }
            }
        }
        Ok(Bicharacter { ctx, t, values })
    }

    /// The trivial bicharacter on the trivial group.
    pub fn trivial(ctx: FieldCtx) -> Self {
        Bicharacter {
            ctx,
            t: FgAbelianGroup::trivial(),
            values: Vec::new(),
        }
    }

    /// `Z/2` with `β(1, 1) = −1`: ordinary Lie superalgebras.
    pub fn super_sign(ctx: FieldCtx) -> Self {
        Bicharacter {
            ctx,
            t: FgAbelianGroup::cyclic(2).unwrap(),
            values: vec![vec![Scalar::from_int(-1)]],
        }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.t
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    pub fn eval(&self, t: &GammaElem, u: &GammaElem) -> Scalar {
        let mut acc = Scalar::one();
        for (i, &a) in t.0.iter().enumerate() {
            for (j, &b) in u.0.iter().enumerate() {
                if a != 0 && b != 0 {
                    acc = &acc * &self.values[i][j].pow(a * b);
                }
            }
        }
        acc
    }

    pub fn is_even(&self, t: &GammaElem) -> bool {
        self.eval(t, t).is_one()
    }

    /// Violations of well-definedness, alternation and `β(t, t) = ±1`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let orders = self.t.torsion();
        let k = self.values.len();
        for i in 0..k {
            for j in 0..k {
                let v = &self.values[i][j];
                if !v.pow(orders[i] as i64).is_one() || !v.pow(orders[j] as i64).is_one() {
                    out.push(format!("β(t{},t{}) = {v} is incompatible with the orders of T", i + 1, j + 1));
                }
            }
        }
        let elems = finite_elements(&self.t);
        for a in &elems {
            for b in &elems {
                if !(&self.eval(a, b) * &self.eval(b, a)).is_one() {
                    out.push(format!("β(t,u)β(u,t) ≠ 1 for t = {:?}, u = {:?}", a.0, b.0));
                    return out;
                }
            }
            let s = self.eval(a, a);
            if !s.is_one() && !(&s + &Scalar::one()).is_zero() {
                out.push(format!("β(t,t) = {s} ∉ {{1, −1}} for t = {:?}", a.0));
            }
        }
        out
    }
}

/// Finite-dimensional `T`-graded algebra with bracket given by structure constants.
#[derive(Debug, Clone)]
pub struct ColorLieSuperalgebra {
    beta: Bicharacter,
    names: Vec<String>,
    degrees: Vec<GammaElem>,
    /// `c[i][j]` = coordinates of `[e_i, e_j]`.
    c: Vec<Vec<Vec<Scalar>>>,
}

impl ColorLieSuperalgebra {
    pub fn new(beta: Bicharacter, names: Vec<String>, degrees: Vec<GammaElem>) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: degrees.len(),
            });
        }
        let t = beta.group().clone();
        let degrees: Vec<GammaElem> = degrees
            .iter()
            .map(|d| {
                if d.0.len() != t.ngens() {
                    Err(Error::invalid_input(format!("degree {:?} has the wrong length", d.0)))
                } else {
                    t.element(d.0.clone())
                }
            })
            .collect::<Result<_>>()?;
        Ok(ColorLieSuperalgebra {
            beta,
            names,
            degrees,
            c: vec![vec![vec![Scalar::zero(); n]; n]; n],
        })
    }

    /// Sets `[e_i, e_j] = v` without touching `[e_j, e_i]`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Scalar>) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n || v.len() != n {
            return Err(Error::invalid_input("bracket index or vector length out of range"));
        }
        self.c[i][j] = v;
        Ok(())
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = −β(d_j, d_i) v`.
    pub fn set_bracket_pair(&mut self, i: usize, j: usize, v: Vec<Scalar>) -> Result<()> {
        let s = -&self.beta.eval(&self.degrees[j], &self.degrees[i]);
        let w: Vec<Scalar> = v.iter().map(|x| x * &s).collect();
        self.set_bracket(i, j, v)?;
        if i != j {
            self.set_bracket(j, i, w)?;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn beta(&self) -> &Bicharacter {
        &self.beta
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GammaElem] {
        &self.degrees
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.c[i][j]
    }

    pub fn is_even_index(&self, i: usize) -> bool {
        self.beta.is_even(&self.degrees[i])
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_even_index(i)).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.is_even_index(i)).collect()
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o = &*o + &(&f * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Degree of `x` when it is nonzero and homogeneous.
    pub fn degree_of(&self, x: &[Scalar]) -> Option<GammaElem> {
        let mut deg: Option<&GammaElem> = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(&self.degrees[i]),
                Some(d) if d != &self.degrees[i] => return None,
                _ => {}
            }
        }
        deg.cloned()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ColorAxiomReport {
    pub bicharacter: Vec<String>,
    pub gradedness: Vec<String>,
    pub anticommutativity: Vec<String>,
    pub jacobi: Vec<String>,
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

impl ColorAxiomReport {
    pub fn valid(&self) -> bool {
        self.bicharacter.is_empty() && self.gradedness.is_empty() && self.anticommutativity.is_empty() && self.jacobi.is_empty()
    }
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale_vec(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

/// Checks gradedness, `[x, y] = −β(t, u)[y, x]` and
/// `[[x, y], z] = [x, [y, z]] − β(t, u)[y, [x, z]]` on all basis pairs and triples.
pub fn validate_color_axioms(l: &ColorLieSuperalgebra) -> ColorAxiomReport {
    let n = l.dim();
    let t = l.beta.group();
    let mut rep = ColorAxiomReport {
        bicharacter: l.beta.violations(),
        gradedness: Vec::new(),
        anticommutativity: Vec::new(),
        jacobi: Vec::new(),
        even: l.even_indices().iter().map(|&i| l.names[i].clone()).collect(),
        odd: l.odd_indices().iter().map(|&i| l.names[i].clone()).collect(),
    };
    for i in 0..n {
        for j in 0..n {
            let target = t.op(&l.degrees[i], &l.degrees[j]);
            for k in 0..n {
                if !l.c[i][j][k].is_zero() && l.degrees[k] != target {
                    rep.gradedness.push(format!("[{}, {}] has a component along {}", l.names[i], l.names[j], l.names[k]));
                }
            }
            let b = l.beta.eval(&l.degrees[i], &l.degrees[j]);
            let rhs = scale_vec(&l.c[j][i], &-&b);
            if l.c[i][j] != rhs {
                rep.anticommutativity.push(format!("[{0}, {1}] ≠ −β[{1}, {0}]", l.names[i], l.names[j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let xy = l.c[i][j].clone();
            let b = l.beta.eval(&l.degrees[i], &l.degrees[j]);
            for k in 0..n {
                let (x, y, z) = (l.unit(i), l.unit(j), l.unit(k));
                let lhs = l.bracket(&xy, &z);
                let r1 = l.bracket(&x, &l.c[j][k]);
                let r2 = scale_vec(&l.bracket(&y, &l.c[i][k]), &b);
                if !is_zero_vec(&sub_vec(&lhs, &sub_vec(&r1, &r2))) {
                    rep.jacobi.push(format!("Jacobi fails on ({}, {}, {})", l.names[i], l.names[j], l.names[k]));
                }
            }
        }
    }
    rep
}

/// `U(L)`: rules `x_j x_i → β(d_j, d_i) x_i x_j + [x_j, x_i]` for `j > i` and
/// `x_i² → ½[x_i, x_i]` for odd `i`, checked for confluence up to degree 4.
pub fn enveloping_presentation(l: &ColorLieSuperalgebra) -> Result<(Presentation, CompletionReport)> {
    let report = validate_color_axioms(l);
    if !report.valid() {
        return Err(Error::invalid_input("color Lie superalgebra fails its axioms"));
    }
    let ctx = *l.beta.ctx();
    let gamma = FgAbelianGroup::trivial();
    let gens: Vec<XGen> = l
        .names
        .iter()
        .map(|name| XGen {
            name: name.clone(),
            weight: 1,
            coaction: gamma.identity(),
            character: Character::trivial(ctx, &gamma),
            expansion: None,
        })
        .collect();
    let mut p = Presentation::new(ctx, gamma.clone(), Vec::new(), gens, Convention::NoHopf, Preset::ColorEnvelope)?;
    let id = gamma.identity();
    let linear = |p: &Presentation, v: &[Scalar]| -> AlgebraElement {
        AlgebraElement::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (p.mono(vec![k], id.clone()), c.clone())),
        )
    };
    let half = Scalar::from_ratio(1, 2);
    for j in 0..l.dim() {
        for i in 0..=j {
            if i == j {
                if l.is_even_index(i) {
                    continue;
                }
                let rhs = linear(&p, &l.c[i][i]).scale(&half);
                p.set_rule(vec![i, i], rhs);
                continue;
            }
            let b = l.beta.eval(&l.degrees[j], &l.degrees[i]);
            let mut rhs = linear(&p, &l.c[j][i]);
            rhs.add_term(p.mono(vec![i, j], id.clone()), b);
            p.set_rule(vec![j, i], rhs);
        }
    }
    let rep = check_confluence(&p, 4);
    Ok((p, rep))
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedDeltaReport {
    /// `dim [x, L_u]` for every degree `u` of `T`.
    pub by_degree: Vec<(Vec<i64>, usize)>,
    /// `dim [x, L]`.
    pub total: usize,
    pub max_over_degrees: usize,
}

impl GradedDeltaReport {
    /// Membership of `x` in `Δ^m_t(L)`: `dim [x, L_u] ≤ m` for every `u`.
    pub fn in_delta_m(&self, m: usize) -> bool {
        self.max_over_degrees <= m
    }
}

fn span_dim(dim: usize, vs: impl IntoIterator<Item = Vec<Scalar>>) -> usize {
    let mut s = SpanBuilder::new(dim);
    for v in vs {
        s.insert(&v);
    }
    s.rank()
}

/// `dim [x, L_u]`.
pub fn graded_delta_dim(l: &ColorLieSuperalgebra, x: &[Scalar], u: &GammaElem) -> Result<usize> {
    if !is_zero_vec(x) && l.degree_of(x).is_none() {
        return Err(Error::invalid_input("x is not homogeneous"));
    }
    let u = l.beta.group().element(u.0.clone())?;
    Ok(span_dim(
        l.dim(),
        (0..l.dim()).filter(|&k| l.degrees[k] == u).map(|k| l.bracket(x, &l.unit(k))),
    ))
}

pub fn graded_delta_report(l: &ColorLieSuperalgebra, x: &[Scalar]) -> Result<GradedDeltaReport> {
    let mut by_degree = Vec::new();
    for u in finite_elements(l.beta.group()) {
        let d = graded_delta_dim(l, x, &u)?;
        by_degree.push((u.0.clone(), d));
    }
    let total = span_dim(l.dim(), (0..l.dim()).map(|k| l.bracket(x, &l.unit(k))));
    let max_over_degrees = by_degree.iter().map(|(_, d)| *d).max().unwrap_or(0);
    Ok(GradedDeltaReport {
        by_degree,
        total,
        max_over_degrees,
    })
}

/// A finite group acting on `L` by graded automorphisms; `maps[g]` acts on coordinates.
#[derive(Debug, Clone)]
pub struct GradedGroupAction {
    group: FiniteGroup,
    maps: Vec<Matrix<Scalar>>,
}

impl GradedGroupAction {
    pub fn trivial(group: FiniteGroup, dim: usize) -> Self {
        let maps = vec![Matrix::identity(dim); group.order()];
        GradedGroupAction { group, maps }
    }

    /// Extends matrices on generators multiplicatively and validates the result.
    pub fn from_generators(l: &ColorLieSuperalgebra, group: FiniteGroup, gens: &[(usize, Matrix<Scalar>)]) -> Result<Self> {
        let n = l.dim();
        let mut maps: Vec<Option<Matrix<Scalar>>> = vec![None; group.order()];
        maps[group.identity()] = Some(Matrix::identity(n));
        let mut queue = vec![group.identity()];
        while let Some(h) = queue.pop() {
            for (g, m) in gens {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::invalid_input("action matrix has the wrong size"));
                }
                let gh = group.mul(*g, h);
                let img = m.mul(maps[h].as_ref().unwrap());
                match &maps[gh] {
                    Some(prev) if prev != &img => {
                        return Err(Error::invalid_input("generator matrices do not define a homomorphism"))
                    }
                    Some(_) => {}
                    None => {
                        maps[gh] = Some(img);
                        queue.push(gh);
                    }
                }
            }
        }
        let maps: Vec<Matrix<Scalar>> = maps
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::invalid_input("generators do not generate the group"))?;
        let act = GradedGroupAction { group, maps };
        let problems = act.violations(l);
        if !problems.is_empty() {
            return Err(Error::invalid_input(problems.join("; ")));
        }
        Ok(act)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn map(&self, g: usize) -> &Matrix<Scalar> {
        &self.maps[g]
    }

    /// Failures of `g(L_t) = L_t` and `g[x, y] = [gx, gy]`.
    pub fn violations(&self, l: &ColorLieSuperalgebra) -> Vec<String> {
        let mut out = Vec::new();
        for (g, m) in self.maps.iter().enumerate() {
            for i in 0..l.dim() {
                let gi = m.apply(&l.unit(i));
                if !is_zero_vec(&gi) && l.degree_of(&gi).as_ref() != Some(&l.degrees[i]) {
                    out.push(format!("element {g} does not preserve the degree of {}", l.names[i]));
                }
                for j in 0..l.dim() {
                    let lhs = m.apply(&l.c[i][j]);
                    let rhs = l.bracket(&gi, &m.apply(&l.unit(j)));
                    if lhs != rhs {
                        out.push(format!("element {g} is not a bracket automorphism on ({}, {})", l.names[i], l.names[j]));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition2 {
    pub is_subgroup: bool,
    pub abelian: bool,
    pub index: usize,
    pub trivial_on_even: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition3 {
    pub inside_odd: bool,
    pub homogeneous: bool,
    pub g_invariant: bool,
    pub even_submodule: bool,
    pub self_bracket_zero: bool,
    /// `dim [L_+, M]`, finite here.
    pub dim_even_bracket: usize,
    /// `dim L_− / M`, finite here.
    pub codim_in_odd: usize,
}

impl Condition3 {
    pub fn holds(&self) -> bool {
        self.inside_odd && self.homogeneous && self.g_invariant && self.even_submodule && self.self_bracket_zero
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TlsabwVerdict {
    pub even_abelian: bool,
    pub condition2: Condition2,
    pub condition3: Condition3,
    pub condition4: bool,
    pub pi: bool,
}

/// Checks the four conditions of the PI criterion for `U(L) # FG` with the
/// given witnesses `M` (basis vectors) and `A` (subgroup elements).
pub fn tlsabw_verify(l: &ColorLieSuperalgebra, g: &GradedGroupAction, m: &[Vec<Scalar>], a: &[usize]) -> TlsabwVerdict {
    let n = l.dim();
    let even = l.even_indices();
    let odd = l.odd_indices();
    let even_abelian = even
        .iter()
        .all(|&i| even.iter().all(|&j| is_zero_vec(&l.c[i][j])));

    let grp = g.group();
    let mut sorted: Vec<usize> = a.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let is_subgroup = !sorted.is_empty() && grp.closure(&sorted) == sorted;
    let condition2 = Condition2 {
        is_subgroup,
        abelian: grp.is_abelian_set(&sorted),
        index: if is_subgroup { grp.order() / sorted.len() } else { 0 },
        trivial_on_even: sorted
            .iter()
            .all(|&x| even.iter().all(|&i| g.map(x).apply(&l.unit(i)) == l.unit(i))),
    };

    let mut mspan = SpanBuilder::new(n);
    for v in m {
        mspan.insert(v);
    }
    let inside_odd = m.iter().all(|v| even.iter().all(|&i| v[i].is_zero()));
    let homogeneous = m.iter().all(|v| {
        finite_elements(l.beta.group()).iter().all(|t| {
            let proj: Vec<Scalar> = (0..n)
                .map(|i| if &l.degrees[i] == t { v[i].clone() } else { Scalar::zero() })
                .collect();
            mspan.contains(&proj)
        })
    });
    let g_invariant = (0..grp.order()).all(|x| m.iter().all(|v| mspan.contains(&g.map(x).apply(v))));
    let mut ebr = SpanBuilder::new(n);
    let mut even_submodule = true;
    for &i in &even {
        for v in m {
            let b = l.bracket(&l.unit(i), v);
            even_submodule &= mspan.contains(&b);
            ebr.insert(&b);
        }
    }
    let self_bracket_zero = m.iter().all(|u| m.iter().all(|v| is_zero_vec(&l.bracket(u, v))));
    let condition3 = Condition3 {
        inside_odd,
        homogeneous,
        g_invariant,
        even_submodule,
        self_bracket_zero,
        dim_even_bracket: ebr.rank(),
        codim_in_odd: odd.len().saturating_sub(mspan.rank()),
    };
    let condition4 = sorted
        .iter()
        .all(|&x| m.iter().all(|v| ebr.contains(&sub_vec(&g.map(x).apply(v), v))));
    let c2 = condition2.is_subgroup && condition2.abelian && condition2.trivial_on_even;
    let pi = even_abelian && c2 && condition3.holds() && condition4;
    TlsabwVerdict {
        even_abelian,
        condition2,
        condition3,
        condition4,
        pi,
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SearchOutcome {
    Pi {
        m: Vec<Vec<String>>,
        m_basis_indices: Vec<usize>,
        a: Vec<usize>,
        checks: usize,
    },
    NotPi {
        reason: String,
    },
    /// No witness among basis-subset spans `M`; the search is incomplete beyond them.
    NoneFound {
        checks: usize,
        note: String,
    },
}

/// Searches `A` over the subgroups of `G` (largest first) and `M` over spans of
/// subsets of the odd basis (largest first).
pub fn tlsabw_search(l: &ColorLieSuperalgebra, g: &GradedGroupAction, dim_cap: usize, group_cap: usize) -> Result<SearchOutcome> {
    if l.dim() > dim_cap {
        return Err(Error::Inconclusive(format!("dim L = {} exceeds the cap {dim_cap}", l.dim())));
    }
    let even = l.even_indices();
    if !even.iter().all(|&i| even.iter().all(|&j| is_zero_vec(&l.c[i][j]))) {
        return Ok(SearchOutcome::NotPi {
            reason: "L_+ is not abelian (condition 1)".into(),
        });
    }
    let mut subgroups = g.group().subgroups(group_cap)?;
    subgroups.retain(|s| g.group().is_abelian_set(s));
    subgroups.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let odd = l.odd_indices();
    let mut masks: Vec<u32> = (0..1u32 << odd.len()).collect();
    masks.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then_with(|| a.cmp(b)));
    let mut checks = 0;
    for mask in masks {
        let idx: Vec<usize> = (0..odd.len()).filter(|&b| mask >> b & 1 == 1).map(|b| odd[b]).collect();
        let m: Vec<Vec<Scalar>> = idx.iter().map(|&i| l.unit(i)).collect();
        for a in &subgroups {
            checks += 1;
            if tlsabw_verify(l, g, &m, a).pi {
                return Ok(SearchOutcome::Pi {
                    m: idx.iter().map(|&i| vec![l.names[i].clone()]).collect(),
                    m_basis_indices: idx,
                    a: a.clone(),
                    checks,
                });
            }
        }
    }
    Ok(SearchOutcome::NoneFound {
        checks,
        note: "only spans of odd basis subsets were tried".into(),
    })
}

/// PI decision for `U(L)` itself (trivial `G`).
pub fn decide_envelope_pi(l: &ColorLieSuperalgebra) -> Result<SearchOutcome> {
    let g = GradedGroupAction::trivial(FiniteGroup::cyclic(1)?, l.dim());
    tlsabw_search(l, &g, DEFAULT_DIM_CAP, DEFAULT_SUBGROUP_CAP)
}

/// Finite-dimensional `T`-graded associative algebra `e_i e_j = ∑ mult[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct GradedAssociative {
    pub t: FgAbelianGroup,
    pub degrees: Vec<GammaElem>,
    pub mult: Vec<Vec<Vec<Scalar>>>,
}

impl GradedAssociative {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let prod = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    if x[i].is_zero() || y[j].is_zero() {
                        continue;
                    }
                    let f = &x[i] * &y[j];
                    for k in 0..n {
                        out[k] = &out[k] + &(&f * &self.mult[i][j][k]);
                    }
                }
            }
            out
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let mut ek = vec![Scalar::zero(); n];
                    ek[k] = Scalar::one();
                    let mut ei = vec![Scalar::zero(); n];
                    ei[i] = Scalar::one();
                    prod(&self.mult[i][j], &ek) == prod(&ei, &self.mult[j][k])
                })
            })
        })
    }

    /// Random algebra of dimension ≤ 4: a graded matrix algebra `End(V)`, a
    /// twisted group algebra of `T`, or a truncated polynomial ring, with the
    /// homogeneous basis rescaled at random.
    pub fn random<R: Rng>(rng: &mut R, t: &FgAbelianGroup, ctx: &FieldCtx) -> Self {
        let elems = finite_elements(t);
        let pick = |rng: &mut R| elems[rng.gen_range(0..elems.len())].clone();
        let mut alg = match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(1..=2);
                let vdeg: Vec<GammaElem> = (0..n).map(|_| pick(rng)).collect();
                let mut degrees = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        degrees.push(t.op(&vdeg[i], &t.inverse(&vdeg[j])));
                    }
                }
                let d = n * n;
                let mut mult = vec![vec![vec![Scalar::zero(); d]; d]; d];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            mult[i * n + j][j * n + k][i * n + k] = Scalar::one();
                        }
                    }
                }
                GradedAssociative { t: t.clone(), degrees, mult }
            }
            1 => {
                // σ(a, b) = ∏ γ_ij^{a_i b_j}, bimultiplicative hence a 2-cocycle
                let k = t.ngens();
                let gamma: Vec<Vec<Scalar>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| {
                                let m = num_integer::gcd(t.torsion()[i], t.torsion()[j]) as i64;
                                root_of_unity(ctx, m, rng.gen_range(0..m))
                            })
                            .collect()
                    })
                    .collect();
                let d = elems.len();
                let mut mult = vec![vec![vec![Scalar::zero(); d]; d]; d];
                for (x, a) in elems.iter().enumerate() {
                    for (y, b) in elems.iter().enumerate() {
                        let mut s = Scalar::one();
                        for i in 0..k {
                            for j in 0..k {
                                if a.0[i] != 0 && b.0[j] != 0 {
                                    s = &s * &gamma[i][j].pow(a.0[i] * b.0[j]);
                                }
                            }
                        }
                        let z = elems.iter().position(|e| e == &t.op(a, b)).unwrap();
                        mult[x][y][z] = s;
                    }
                }
                GradedAssociative {
                    t: t.clone(),
                    degrees: elems.clone(),
                    mult,
                }
            }
            _ => {
                let d = rng.gen_range(1..=4);
                let g = pick(rng);
                let degrees: Vec<GammaElem> = (0..d as i64).map(|i| t.pow(&g, i)).collect();
                let mut mult = vec![vec![vec![Scalar::zero(); d]; d]; d];
                for i in 0..d {
                    for j in 0..d {
                        if i + j < d {
                            mult[i][j][i + j] = Scalar::one();
                        }
                    }
                }
                GradedAssociative { t: t.clone(), degrees, mult }
            }
        };
        // rescale e_i ↦ s_i e_i: e_i e_j = ∑ m_ijk e_k becomes (s_i s_j / s_k) m_ijk
        let s: Vec<Scalar> = (0..alg.dim()).map(|_| Scalar::from_int(rng.gen_range(1..=3))).collect();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                for k in 0..alg.dim() {
                    if !alg.mult[i][j][k].is_zero() {
                        alg.mult[i][j][k] = &(&alg.mult[i][j][k] * &(&s[i] * &s[j])) / &s[k];
                    }
                }
            }
        }
        alg
    }

    /// `L` with `[x, y] = xy − β(t, u) yx` on the homogeneous basis.
    pub fn color_bracket(&self, beta: &Bicharacter) -> Result<ColorLieSuperalgebra> {
        let n = self.dim();
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        let mut l = ColorLieSuperalgebra::new(beta.clone(), names, self.degrees.clone())?;
        for i in 0..n {
            for j in 0..n {
                let b = beta.eval(&self.degrees[i], &self.degrees[j]);
                let v = sub_vec(&self.mult[i][j], &scale_vec(&self.mult[j][i], &b));
                l.set_bracket(i, j, v)?;
            }
        }
        Ok(l)
    }
}

fn finite_elements(t: &FgAbelianGroup) -> Vec<GammaElem> {
    t.elements().expect("grading group is finite")
}

/// `ζ^k` for a primitive `m`-th root of unity `ζ`; requires `m | N` in `Q(ζ_N)`.
fn root_of_unity(ctx: &FieldCtx, m: i64, k: i64) -> Scalar {
    if m <= 1 {
        return Scalar::one();
    }
    if m == 2 {
        return Scalar::from_int(if k % 2 == 0 { 1 } else { -1 });
    }
    let e = ctx.torsion_exponent() as i64;
    assert!(e % m == 0, "field lacks {m}-th roots of unity");
    ctx.torsion_generator().pow(k * (e / m))
}

/// Random valid bicharacter on `t`; needs the `|T|`-th roots of unity in `ctx`.
pub fn random_bicharacter<R: Rng>(rng: &mut R, ctx: &FieldCtx, t: &FgAbelianGroup) -> Bicharacter {
    let orders = t.torsion();
    let k = orders.len();
    let mut values = vec![vec![Scalar::one(); k]; k];
    for i in 0..k {
        let mi = orders[i] as i64;
        values[i][i] = if mi % 2 == 0 && rng.gen_bool(0.5) {
            Scalar::from_int(-1)
        } else {
            Scalar::one()
        };
        for j in i + 1..k {
            let m = num_integer::gcd(mi, orders[j] as i64);
            let v = root_of_unity(ctx, m, rng.gen_range(0..m));
            values[j][i] = v.inv();
            values[i][j] = v;
        }
    }
    Bicharacter {
        ctx: *ctx,
        t: t.clone(),
        values,
    }
}

/// Grading groups of order ≤ 4.
pub fn small_grading_groups() -> Vec<FgAbelianGroup> {
    vec![
        FgAbelianGroup::trivial(),
        FgAbelianGroup::cyclic(2).unwrap(),
        FgAbelianGroup::cyclic(3).unwrap(),
        FgAbelianGroup::cyclic(4).unwrap(),
        FgAbelianGroup::new(0, vec![2, 2]).unwrap(),
    ]
}

/// Sparse structure-constant input: `(i, j, coordinates of [e_i, e_j])`.
pub type BracketTriples = Vec<(usize, usize, BTreeMap<usize, Scalar>)>;

pub fn heisenberg(ctx: FieldCtx) -> ColorLieSuperalgebra {
    let beta = Bicharacter::trivial(ctx);
    let d = GammaElem(Vec::new());
    let mut l = ColorLieSuperalgebra::new(beta, vec!["x".into(), "y".into(), "z".into()], vec![d.clone(), d.clone(), d]).unwrap();
    let z = l.unit(2);
    l.set_bracket_pair(0, 1, z).unwrap();
    l
}
