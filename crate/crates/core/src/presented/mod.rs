//! Presented pointed Hopf algebras with PBW normal forms.
//!
//! An element is a linear combination of normal monomials `(w, γ)`: a word `w`
//! in the root-vector generators followed by a grouplike `γ ∈ Γ`. Grouplikes are
//! moved to the right with `γ x = χ_x(γ) x γ`, so
//! `(w₁, γ₁)(w₂, γ₂) = χ_{w₂}(γ₁) (w₁w₂, γ₁γ₂)`, and words are reduced with
//! rewrite rules oriented by a weighted degree-lex order.

mod adjoint;
mod central;
mod completion;
mod datum;
mod parse;
mod presets;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{EvalTarget, Word};
use crate::groups::{Character, FgAbelianGroup, GammaElem};
use crate::scalars::{FieldCtx, Scalar};

pub use adjoint::{ad_orbit, HopfCheck, OrbitReport};
pub use central::{
    central_power_exponent, decide_hfin_presentation, decide_pi_presentation, grouplike_central_exponent,
    CentralPower, Commutation,
};
pub use completion::{check_confluence, complete_presentation, CompletionReport, DEFAULT_COMPLETION_CAP};
pub use datum::{
    decide_hfin_datum, decide_pi_datum, BlockType, CartanDatum, DatumReport, HfinDecision, PiDecision,
};
pub use parse::parse_element;
pub use presets::{build_preset, fq, quantum_linear_space, uq_sl2, PresetSpec};

/// Which skew-primitive convention the generators follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `Δ(x) = x⊗g + 1⊗x`, `S(x) = −x g⁻¹` (the algebra `F_(q)`).
    RightGrouplike,
    /// `Δ(x) = x⊗1 + g⊗x`, `S(x) = −g⁻¹ x` (the algebras `U(D, λ)`).
    LeftGrouplike,
    /// No Hopf structure (e.g. a plain enveloping algebra presentation).
    NoHopf,
}

/// Preset tag recorded on a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    Fq { q: Scalar },
    QuantumLinearSpace { q: Vec<Vec<Scalar>> },
    UqSl2 { q: Scalar, lambda: Scalar, ell: Option<u64> },
    A2Borel { q: Scalar },
    General,
    ColorEnvelope,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fq { .. } => "Fq",
            Preset::QuantumLinearSpace { .. } => "QuantumLinearSpace",
            Preset::UqSl2 { .. } => "UqSl2",
            Preset::A2Borel { .. } => "A2Borel",
            Preset::General => "General",
            Preset::ColorEnvelope => "ColorEnvelope",
        }
    }
}

/// A root-vector generator.
#[derive(Debug, Clone)]
pub struct XGen {
    pub name: String,
    /// Weight in the degree-lex order (2 for an A2 root vector `x_ij`).
    pub weight: u32,
    /// The grouplike `g` of its coproduct.
    pub coaction: GammaElem,
    /// Character by which grouplikes act: `γ x = χ(γ) x γ`.
    pub character: Character,
    /// For derived root vectors: expansion as a combination of words in primitive generators.
    pub expansion: Option<Vec<(Word, Scalar)>>,
}

/// A normal monomial `(w, γ)`. The derived order is the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub weight: u32,
    pub word: Word,
    pub gamma: GammaElem,
}

/// Linear combination of monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Mono, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Scalar)>) -> Self {
        let mut e = AlgebraElement::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Scalar> {
        self.terms
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

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest monomial with its coefficient.
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// If `self = c · other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &AlgebraElement) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (m, c) = other.leading()?;
        let r = &self.coeff(m) / c;
        (other.scale(&r) == *self).then_some(r)
    }
}

/// A letter of an unnormalized product: a root-vector generator or a grouplike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    X(usize),
    G(GammaElem),
}

/// A presented algebra: generators, grouplikes, rewrite rules and Hopf data.
#[derive(Debug, Clone)]
pub struct Presentation {
    ctx: FieldCtx,
    gamma: FgAbelianGroup,
    gamma_names: Vec<String>,
    gens: Vec<XGen>,
    rules: BTreeMap<Word, AlgebraElement>,
    rule_lengths: Vec<usize>,
    convention: Convention,
    preset: Preset,
}

impl Presentation {
    pub fn new(
        ctx: FieldCtx,
        gamma: FgAbelianGroup,
        gamma_names: Vec<String>,
        gens: Vec<XGen>,
        convention: Convention,
        preset: Preset,
    ) -> Result<Self> {
        if gamma_names.len() != gamma.ngens() {
            return Err(Error::Arity {
                expected: gamma.ngens(),
                got: gamma_names.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for n in gens.iter().map(|g| &g.name).chain(&gamma_names) {
            if !seen.insert(n.clone()) {
                return Err(Error::invalid_input(format!("duplicate generator name '{n}'")));
            }
        }
        Ok(Presentation {
            ctx,
            gamma,
            gamma_names,
            gens,
            rules: BTreeMap::new(),
            rule_lengths: Vec::new(),
            convention,
            preset,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn gamma(&self) -> &FgAbelianGroup {
        &self.gamma
    }

    pub fn gamma_names(&self) -> &[String] {
        &self.gamma_names
    }

    pub fn gens(&self) -> &[XGen] {
        &self.gens
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn preset(&self) -> &Preset {
        &self.preset
    }

    pub fn rules(&self) -> &BTreeMap<Word, AlgebraElement> {
        &self.rules
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub(crate) fn set_rule(&mut self, lhs: Word, rhs: AlgebraElement) {
        self.rules.insert(lhs, rhs);
        self.refresh_lengths();
    }

    pub(crate) fn remove_rule(&mut self, lhs: &[usize]) -> Option<AlgebraElement> {
        let r = self.rules.remove(lhs);
        self.refresh_lengths();
        r
    }

    fn refresh_lengths(&mut self) {
        let mut l: Vec<usize> = self.rules.keys().map(|w| w.len()).collect();
        l.sort_unstable();
        l.dedup();
        self.rule_lengths = l;
    }

    pub fn weight(&self, w: &[usize]) -> u32 {
        w.iter().map(|&i| self.gens[i].weight).sum()
    }

    pub fn mono(&self, word: Word, gamma: GammaElem) -> Mono {
        Mono {
            weight: self.weight(&word),
            word,
            gamma,
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(Scalar::one())
    }

    pub fn scalar(&self, c: Scalar) -> AlgebraElement {
        AlgebraElement::from_terms([(self.mono(Vec::new(), self.gamma.identity()), c)])
    }

    pub fn x(&self, i: usize) -> AlgebraElement {
        AlgebraElement::from_terms([(self.mono(vec![i], self.gamma.identity()), Scalar::one())])
    }

    pub fn grouplike(&self, g: GammaElem) -> AlgebraElement {
        AlgebraElement::from_terms([(self.mono(Vec::new(), g), Scalar::one())])
    }

    /// Element given by a raw word (not yet reduced) times `γ`.
    pub fn raw(&self, word: Word, gamma: GammaElem, c: Scalar) -> AlgebraElement {
        AlgebraElement::from_terms([(self.mono(word, gamma), c)])
    }

    /// `χ_w(γ) = ∏_{letters i of w} χ_i(γ)`.
    pub fn char_word(&self, w: &[usize], g: &GammaElem) -> Scalar {
        let mut acc = Scalar::one();
        if self.gamma.is_identity(g) {
            return acc;
        }
        for &i in w {
            acc *= &self.gens[i].character.eval(g);
        }
        acc
    }

    /// Leftmost occurrence of a rule's left side in `w`.
    fn find_redex(&self, w: &[usize]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &len in &self.rule_lengths {
                if start + len > w.len() {
                    break;
                }
                if self.rules.contains_key(&w[start..start + len]) {
                    return Some((start, len));
                }
            }
        }
        None
    }

    pub fn is_normal_word(&self, w: &[usize]) -> bool {
        self.find_redex(w).is_none()
    }

    /// Rewrites every term to normal form. Terms are processed from the largest
    /// monomial down, so each monomial is finalized exactly once.
    pub fn normalize(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut pending = e.terms.clone();
        let mut out = BTreeMap::new();
        while let Some((m, c)) = pending.pop_last() {
            let Some((pos, len)) = self.find_redex(&m.word) else {
                out.insert(m, c);
                continue;
            };
            let rhs = &self.rules[&m.word[pos..pos + len]];
            let prefix = &m.word[..pos];
            let suffix = &m.word[pos + len..];
            for (v, d) in &rhs.terms {
                let mut word = prefix.to_vec();
                word.extend_from_slice(&v.word);
                word.extend_from_slice(suffix);
                let coeff = &(&c * d) * &self.char_word(suffix, &v.gamma);
                let gamma = self.gamma.op(&v.gamma, &m.gamma);
                let mono = self.mono(word, gamma);
                add_to(&mut pending, mono, coeff);
            }
        }
        AlgebraElement { terms: out }
    }

    /// Product of monomials before word reduction.
    pub fn mono_mul_raw(&self, a: &Mono, b: &Mono) -> (Mono, Scalar) {
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        let c = self.char_word(&b.word, &a.gamma);
        let gamma = self.gamma.op(&a.gamma, &b.gamma);
        (
            Mono {
                weight: a.weight + b.weight,
                word,
                gamma,
            },
            c,
        )
    }

    /// Product of arbitrary elements, returned in normal form.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut raw = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let (m, c) = self.mono_mul_raw(ma, mb);
                add_to(&mut raw, m, &(ca * cb) * &c);
            }
        }
        self.normalize(&AlgebraElement { terms: raw })
    }

    pub fn pow(&self, a: &AlgebraElement, k: u32) -> AlgebraElement {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Normal form of a product of letters: grouplikes are first moved to the
    /// right, then the whole word is reduced at once.
    pub fn normalize_letters(&self, letters: &[Letter]) -> AlgebraElement {
        let mut word = Vec::new();
        let mut coeff = Scalar::one();
        let mut gamma = self.gamma.identity();
        for l in letters.iter().rev() {
            match l {
                Letter::X(i) => word.push(*i),
                Letter::G(g) => {
                    // g passes over every x-letter to its right
                    let tail: Vec<usize> = word.iter().rev().copied().collect();
                    coeff *= &self.char_word(&tail, g);
                    gamma = self.gamma.op(g, &gamma);
                }
            }
        }
        word.reverse();
        self.normalize(&self.raw(word, gamma, coeff))
    }

    pub fn format_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < m.word.len() {
            let mut j = i;
            while j < m.word.len() && m.word[j] == m.word[i] {
                j += 1;
            }
            let name = &self.gens[m.word[i]].name;
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        if !self.gamma.is_identity(&m.gamma) {
            parts.push(self.gamma.format_elem(&m.gamma, &self.gamma_names));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable element, terms in increasing monomial order.
    pub fn format(&self, e: &AlgebraElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in e.terms.iter().enumerate() {
            let mono = self.format_mono(m);
            let minus = -c;
            let (neg, abs) = if c.to_literal().starts_with('-') && !minus.to_factor_literal().starts_with('(') {
                (true, minus)
            } else {
                (false, c.clone())
            };
            let body = if mono == "1" {
                abs.to_factor_literal()
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", abs.to_factor_literal(), mono)
            };
            match (k, neg) {
                (0, false) => s.push_str(&body),
                (0, true) => s.push_str(&format!("-{body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
                (_, true) => s.push_str(&format!(" - {body}")),
            }
        }
        s
    }

    /// Rules as `lhs -> rhs` strings, including the grouplike commutation rules.
    pub fn describe_rules(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, name) in self.gamma_names.iter().enumerate() {
            let g = self.gamma.generator(k);
            for (i, x) in self.gens.iter().enumerate() {
                if x.expansion.is_some() {
                    continue;
                }
                let c = self.char_word(&[i], &g);
                out.push(format!("{name}*{} -> {}*{}*{name}", x.name, c.to_factor_literal(), x.name));
            }
        }
        for (lhs, rhs) in &self.rules {
            let l = self.format_mono(&self.mono(lhs.clone(), self.gamma.identity()));
            out.push(format!("{l} -> {}", self.format(rhs)));
        }
        out
    }
}

pub(crate) fn add_to(map: &mut BTreeMap<Mono, Scalar>, m: Mono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

impl EvalTarget for Presentation {
    type Elem = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero()
    }
    fn one(&self) -> AlgebraElement {
        Presentation::one(self)
    }
    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.add(b)
    }
    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        Presentation::mul(self, a, b)
    }
    fn scale(&self, a: &AlgebraElement, c: &Scalar) -> AlgebraElement {
        a.scale(c)
    }
    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.is_zero()
    }
    fn adjoint(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.ad(x, y)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {} with Γ = {}", self.preset.name(), self.ctx, self.gamma)?;
        for r in self.describe_rules() {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}
