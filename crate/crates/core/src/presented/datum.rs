//! Data of finite Cartan type and the presentations `U(D, λ)` they define.

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::adjoint::ad_orbit;
use super::completion::{check_confluence, complete_presentation, CompletionReport};
use super::{AlgebraElement, Convention, Preset, Presentation, XGen};
use crate::error::{Error, Result};
use crate::freealg::NcPoly;
use crate::groups::{character_order, Character, FgAbelianGroup, GammaElem};
use crate::scalars::{FieldCtx, Scalar};

/// `(Γ, (g_i), (χ_i), (a_ij), (λ_ij))`.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    pub ctx: FieldCtx,
    pub gamma: FgAbelianGroup,
    pub gamma_names: Vec<String>,
    pub names: Vec<String>,
    pub g: Vec<GammaElem>,
    pub chi: Vec<Character>,
    pub cartan: Vec<Vec<i64>>,
    /// Linking parameters for `i < j` in different components.
    pub lambda: BTreeMap<(usize, usize), Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockType {
    A1,
    A2,
    /// Finite type other than A1/A2 (validated, not buildable).
    OtherFinite(String),
    NotFinite,
}

#[derive(Debug, Clone, Serialize)]
pub struct DatumReport {
    pub valid: bool,
    pub violations: Vec<String>,
    pub blocks: Vec<(Vec<usize>, BlockType)>,
}

impl CartanDatum {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// `q_ij = χ_j(g_i)`.
    pub fn q(&self, i: usize, j: usize) -> Scalar {
        self.chi[j].eval(&self.g[i])
    }

    /// Connected components of the Dynkin graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            comp[s] = out.len();
            let mut queue = VecDeque::from([s]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if comp[j] == usize::MAX && (self.cartan[i][j] != 0 || self.cartan[j][i] != 0) {
                        comp[j] = out.len();
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn classify(&self, block: &[usize]) -> BlockType {
        match block {
            [_] => BlockType::A1,
            [i, j] => match self.cartan[*i][*j] * self.cartan[*j][*i] {
                1 => BlockType::A2,
                2 => BlockType::OtherFinite("B2".into()),
                3 => BlockType::OtherFinite("G2".into()),
                _ => BlockType::NotFinite,
            },
            _ => {
                if self.positive_definite_symmetrization(block) {
                    BlockType::OtherFinite(format!("rank {}", block.len()))
                } else {
                    BlockType::NotFinite
                }
            }
        }
    }

    fn positive_definite_symmetrization(&self, block: &[usize]) -> bool {
        let k = block.len();
        let a = |r: usize, c: usize| BigRational::from_integer(self.cartan[block[r]][block[c]].into());
        let mut d: Vec<Option<BigRational>> = vec![None; k];
        d[0] = Some(BigRational::from_integer(1.into()));
        let mut queue = VecDeque::from([0]);
        while let Some(r) = queue.pop_front() {
            for c in 0..k {
                if r == c || a(r, c).is_zero() {
                    continue;
                }
                let dc = d[r].clone().unwrap() * a(r, c) / a(c, r);
                match &d[c] {
                    Some(x) if *x != dc => return false,
                    Some(_) => {}
                    None => {
                        d[c] = Some(dc);
                        queue.push_back(c);
                    }
                }
            }
        }
        let mut b: Vec<Vec<BigRational>> = (0..k)
            .map(|r| (0..k).map(|c| d[r].clone().unwrap() * a(r, c)).collect())
            .collect();
        for p in 0..k {
            if !b[p][p].is_positive() {
                return false;
            }
            for r in (p + 1)..k {
                let f = b[r][p].clone() / b[p][p].clone();
                for c in p..k {
                    let t = f.clone() * b[p][c].clone();
                    b[r][c] -= t;
                }
            }
        }
        true
    }

    pub fn validate(&self) -> DatumReport {
        let n = self.rank();
        let mut v = Vec::new();
        if self.g.len() != n || self.chi.len() != n || self.cartan.len() != n {
            v.push(format!(
                "rank mismatch: {} names, {} grouplikes, {} characters, {} Cartan rows",
                n,
                self.g.len(),
                self.chi.len(),
                self.cartan.len()
            ));
            return DatumReport {
                valid: false,
                violations: v,
                blocks: Vec::new(),
            };
        }
        for (i, row) in self.cartan.iter().enumerate() {
            if row.len() != n {
                v.push(format!("Cartan row {i} has length {}", row.len()));
            }
        }
        if !v.is_empty() {
            return DatumReport {
                valid: false,
                violations: v,
                blocks: Vec::new(),
            };
        }
        for i in 0..n {
            if self.cartan[i][i] != 2 {
                v.push(format!("a_{i}{i} = {} (must be 2)", self.cartan[i][i]));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if self.cartan[i][j] > 0 {
                    v.push(format!("a_{i}{j} = {} is positive", self.cartan[i][j]));
                }
                if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0) {
                    v.push(format!("a_{i}{j} = 0 but a_{j}{i} ≠ 0 (or conversely)"));
                }
            }
        }
        let comps = self.components();
        let blocks: Vec<(Vec<usize>, BlockType)> =
            comps.iter().map(|c| (c.clone(), self.classify(c))).collect();
        for (b, t) in &blocks {
            if *t == BlockType::NotFinite {
                v.push(format!("block {b:?} is not of finite type"));
            }
        }
        for i in 0..n {
            if self.q(i, i).is_one() {
                v.push(format!("χ_{i}(g_{i}) = 1"));
            }
            for j in 0..n {
                let lhs = &self.q(i, j) * &self.q(j, i);
                let rhs = self.q(i, i).pow(self.cartan[i][j]);
                if lhs != rhs {
                    v.push(format!(
                        "compatibility fails at ({i}, {j}): χ_{j}(g_{i})χ_{i}(g_{j}) = {lhs} but χ_{i}(g_{i})^a_{i}{j} = {rhs}"
                    ));
                }
            }
        }
        let comp_of = |i: usize| comps.iter().position(|c| c.contains(&i)).unwrap();
        for (&(i, j), l) in &self.lambda {
            if i >= j || j >= n {
                v.push(format!("linking index ({i}, {j}) must satisfy i < j < θ"));
                continue;
            }
            if comp_of(i) == comp_of(j) {
                v.push(format!("linking parameter λ_{i}{j} given for connected vertices"));
                continue;
            }
            if l.is_zero() {
                continue;
            }
            if self.gamma.is_identity(&self.gamma.op(&self.g[i], &self.g[j])) {
                v.push(format!("λ_{i}{j} ≠ 0 but g_{i}g_{j} = 1"));
            }
            if !self.chi[i].mul(&self.chi[j]).is_trivial() {
                v.push(format!("λ_{i}{j} ≠ 0 but χ_{i}χ_{j} ≠ ε"));
            }
        }
        DatumReport {
            valid: v.is_empty(),
            violations: v,
            blocks,
        }
    }

    fn lambda(&self, i: usize, j: usize) -> Scalar {
        self.lambda.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Builds `U(D, λ)`: root vectors `x_i` (and `x_ij` for A2 blocks), linking
    /// relations between components and Serre relations inside A2 blocks, then
    /// completes the rule set.
    pub fn build(&self, cap: u32) -> Result<(Presentation, CompletionReport)> {
        self.build_with_preset(cap, Preset::General)
    }

    pub(crate) fn build_with_preset(&self, cap: u32, preset: Preset) -> Result<(Presentation, CompletionReport)> {
        let report = self.validate();
        if !report.valid {
            return Err(Error::invalid_input(format!(
                "invalid datum: {}",
                report.violations.join("; ")
            )));
        }
        for (b, t) in &report.blocks {
            if !matches!(t, BlockType::A1 | BlockType::A2) {
                return Err(Error::Unsupported(format!("unsupported block {b:?} of type {t:?}")));
            }
        }
        // new index of each original generator; A2 blocks insert x_ij in between
        let mut pos = vec![0usize; self.rank()];
        let mut gens = Vec::new();
        let mut a2 = Vec::new();
        for (b, _) in &report.blocks {
            match b.as_slice() {
                [i] => {
                    pos[*i] = gens.len();
                    gens.push(self.xgen(*i));
                }
                [i, j] => {
                    pos[*i] = gens.len();
                    gens.push(self.xgen(*i));
                    let ij = gens.len();
                    gens.push(XGen {
                        name: derived_name(&self.names[*i], &self.names[*j]),
                        weight: 2,
                        coaction: self.gamma.op(&self.g[*i], &self.g[*j]),
                        character: self.chi[*i].mul(&self.chi[*j]),
                        expansion: None,
                    });
                    pos[*j] = gens.len();
                    gens.push(self.xgen(*j));
                    a2.push((*i, *j, ij));
                }
                _ => unreachable!(),
            }
        }
        for &(i, j, ij) in &a2 {
            gens[ij].expansion = Some(vec![
                (vec![pos[i], pos[j]], Scalar::one()),
                (vec![pos[j], pos[i]], -self.q(i, j)),
            ]);
        }
        let mut p = Presentation::new(
            self.ctx,
            self.gamma.clone(),
            self.gamma_names.clone(),
            gens,
            Convention::LeftGrouplike,
            preset,
        )?;
        let id = self.gamma.identity();
        let from_poly = |p: &Presentation, f: &NcPoly| {
            AlgebraElement::from_terms(f.terms().map(|(w, c)| (p.mono(w.clone(), id.clone()), c.clone())))
        };
        let mut relations = Vec::new();
        for &(i, j, ij) in &a2 {
            // x_ij − x_i x_j + χ_j(g_i) x_j x_i
            let def = NcPoly::var(ij)
                .sub(&NcPoly::monomial(vec![pos[i], pos[j]], Scalar::one()))
                .add(&NcPoly::monomial(vec![pos[j], pos[i]], self.q(i, j)));
            relations.push(from_poly(&p, &def));
            for (a, b) in [(i, j), (j, i)] {
                let m = 1 - self.cartan[a][b];
                let mut f = NcPoly::var(pos[b]);
                let mut letters = vec![b];
                for _ in 0..m {
                    let chi: Scalar = letters.iter().map(|&l| self.q(a, l)).fold(Scalar::one(), |x, y| &x * &y);
                    f = NcPoly::var(pos[a]).mul(&f).sub(&f.mul(&NcPoly::var(pos[a])).scale(&chi));
                    letters.push(a);
                }
                relations.push(from_poly(&p, &f));
            }
        }
        let comps = self.components();
        let comp_of = |i: usize| comps.iter().position(|c| c.contains(&i)).unwrap();
        for i in 0..self.rank() {
            for j in (i + 1)..self.rank() {
                if comp_of(i) == comp_of(j) {
                    continue;
                }
                let f = NcPoly::monomial(vec![pos[i], pos[j]], Scalar::one())
                    .sub(&NcPoly::monomial(vec![pos[j], pos[i]], self.q(i, j)));
                let mut rel = from_poly(&p, &f);
                let l = self.lambda(i, j);
                if !l.is_zero() {
                    let gg = self.gamma.op(&self.g[i], &self.g[j]);
                    rel = rel.sub(&p.scalar(l.clone())).add(&p.grouplike(gg).scale(&l));
                }
                relations.push(rel);
            }
        }
        let mut rep = complete_presentation(&mut p, relations, cap)?;
        let check = check_confluence(&p, cap);
        rep.failures = check.failures;
        Ok((p, rep))
    }

    fn xgen(&self, i: usize) -> XGen {
        XGen {
            name: self.names[i].clone(),
            weight: 1,
            coaction: self.g[i].clone(),
            character: self.chi[i].clone(),
            expansion: None,
        }
    }
}

fn derived_name(a: &str, b: &str) -> String {
    match (a.strip_prefix('x'), b.strip_prefix('x')) {
        (Some(s), Some(t)) if s.chars().all(|c| c.is_ascii_digit()) && t.chars().all(|c| c.is_ascii_digit()) => {
            format!("x{s}{t}")
        }
        _ => format!("{a}_{b}"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PiDecision {
    pub pi: bool,
    /// Character orders; `None` means infinite.
    pub orders: Vec<Option<u64>>,
    pub infinite_order: Vec<usize>,
}

/// PI iff every `χ_i` has finite order (abelian `Γ` is its own abelian subgroup of finite index).
pub fn decide_pi_datum(d: &CartanDatum) -> PiDecision {
    let orders: Vec<Option<u64>> = d.chi.iter().map(character_order).collect();
    let infinite_order: Vec<usize> = (0..orders.len()).filter(|&i| orders[i].is_none()).collect();
    PiDecision {
        pi: infinite_order.is_empty(),
        orders,
        infinite_order,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HfinDecision {
    pub hfin_equals_h: bool,
    pub orders: Vec<Option<u64>>,
    /// A grouplike outside `H_fin`, with the orbit cap it exceeded.
    pub witness: Option<String>,
    pub witness_cap: usize,
}

/// `H_fin = H` iff every character has finite order (abelian `Γ` is FC). When it
/// fails, grouplike witnesses `g_i^{±1}` are tried until one has an adjoint
/// orbit exceeding `cap`.
pub fn decide_hfin_datum(d: &CartanDatum, cap: usize) -> HfinDecision {
    let pi = decide_pi_datum(d);
    let mut witness = None;
    if !pi.pi {
        if let Ok((p, _)) = d.build(super::completion::DEFAULT_COMPLETION_CAP) {
            witness = hfin_witness(&p, &pi.infinite_order.iter().map(|&i| d.g[i].clone()).collect::<Vec<_>>(), cap);
        }
    }
    HfinDecision {
        hfin_equals_h: pi.pi,
        orders: pi.orders,
        witness,
        witness_cap: cap,
    }
}

/// First grouplike among `cands` and their inverses whose adjoint orbit exceeds `cap`.
pub(crate) fn hfin_witness(p: &Presentation, cands: &[GammaElem], cap: usize) -> Option<String> {
    for g in cands {
        for h in [g.clone(), p.gamma().inverse(g)] {
            let e = p.grouplike(h.clone());
            if let Ok(r) = ad_orbit(p, &e, cap) {
                if r.exceeds_cap {
                    return Some(p.format(&e));
                }
            }
        }
    }
    None
}
