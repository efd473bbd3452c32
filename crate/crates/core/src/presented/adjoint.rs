use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{AlgebraElement, Convention, Mono, Presentation};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

impl Presentation {
    /// `(ad g)(y) = g y g⁻¹`.
    pub fn ad_grouplike(&self, g: &crate::groups::GammaElem, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_terms(
            y.terms()
                .map(|(m, c)| (m.clone(), c * &self.char_word(&m.word, g))),
        )
    }

    fn ad_primitive(&self, i: usize, y: &AlgebraElement) -> Result<AlgebraElement> {
        let x = self.x(i);
        let g = &self.gens[i].coaction;
        match self.convention {
            Convention::RightGrouplike => {
                let ginv = self.grouplike(self.gamma.inverse(g));
                let xy = self.mul(&x, y);
                let yx = self.mul(y, &x);
                Ok(self.mul(&xy.sub(&yx), &ginv))
            }
            Convention::LeftGrouplike => {
                let xy = self.mul(&x, y);
                let gyg = self.ad_grouplike(g, y);
                Ok(xy.sub(&self.mul(&gyg, &x)))
            }
            Convention::NoHopf => Err(Error::Unsupported(
                "presentation carries no Hopf structure".into(),
            )),
        }
    }

    /// `(ad w)(y)` for a word in the generators, applied right to left.
    fn ad_word(&self, w: &[usize], y: &AlgebraElement) -> Result<AlgebraElement> {
        let mut acc = y.clone();
        for &i in w.iter().rev() {
            if acc.is_zero() {
                break;
            }
            acc = match &self.gens[i].expansion {
                None => self.ad_primitive(i, &acc)?,
                Some(exp) => {
                    let mut sum = AlgebraElement::zero();
                    for (word, c) in exp {
                        sum = sum.add(&self.ad_word(word, &acc)?.scale(c));
                    }
                    sum
                }
            };
        }
        Ok(acc)
    }

    /// `(ad h)(y)` for a monomial `h = (w, γ)`, using multiplicativity of `ad`.
    pub fn ad_mono(&self, h: &Mono, y: &AlgebraElement) -> Result<AlgebraElement> {
        let inner = self.ad_grouplike(&h.gamma, y);
        self.ad_word(&h.word, &inner)
    }

    /// `(ad h)(y) = ∑ h₁ y S(h₂)`, extended linearly in `h`.
    pub fn ad(&self, h: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (m, c) in h.terms() {
            out = out.add(&self.ad_mono(m, y)?.scale(c));
        }
        Ok(out)
    }

    /// Coproduct of a primitive generator as a list of tensor pairs.
    pub fn coproduct_gen(&self, i: usize) -> Result<Vec<(AlgebraElement, AlgebraElement)>> {
        let x = self.x(i);
        let g = self.grouplike(self.gens[i].coaction.clone());
        match self.convention {
            Convention::RightGrouplike => Ok(vec![(x.clone(), g), (self.one(), x)]),
            Convention::LeftGrouplike => Ok(vec![(x.clone(), self.one()), (g, x)]),
            Convention::NoHopf => Err(Error::Unsupported("no Hopf structure".into())),
        }
    }

    pub fn antipode_gen(&self, i: usize) -> Result<AlgebraElement> {
        let x = self.x(i);
        let ginv = self.grouplike(self.gamma.inverse(&self.gens[i].coaction));
        match self.convention {
            Convention::RightGrouplike => Ok(self.mul(&x, &ginv).scale(&Scalar::from_int(-1))),
            Convention::LeftGrouplike => Ok(self.mul(&ginv, &x).scale(&Scalar::from_int(-1))),
            Convention::NoHopf => Err(Error::Unsupported("no Hopf structure".into())),
        }
    }

    /// Counit on normal-form elements: `ε(w γ) = 1` if `w` is empty, else 0.
    pub fn counit(&self, e: &AlgebraElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in e.terms() {
            if m.word.is_empty() {
                acc += c;
            }
        }
        acc
    }

    /// Antipode on elements whose monomials are single generators or grouplikes.
    fn antipode_simple(&self, e: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (m, c) in e.terms() {
            let ginv = self.grouplike(self.gamma.inverse(&m.gamma));
            let s = match m.word.as_slice() {
                [] => ginv,
                [i] => self.mul(&ginv, &self.antipode_gen(*i)?),
                _ => return Err(Error::Unsupported("antipode of a product".into())),
            };
            out = out.add(&s.scale(c));
        }
        Ok(out)
    }

    /// Counit and antipode axioms on every primitive generator.
    pub fn hopf_axioms_report(&self) -> Result<Vec<HopfCheck>> {
        let mut out = Vec::new();
        for (i, gen) in self.gens.iter().enumerate() {
            if gen.expansion.is_some() {
                continue;
            }
            let delta = self.coproduct_gen(i)?;
            let x = self.x(i);
            let mut left = AlgebraElement::zero();
            let mut right = AlgebraElement::zero();
            let mut s_left = AlgebraElement::zero();
            let mut s_right = AlgebraElement::zero();
            for (a, b) in &delta {
                left = left.add(&b.scale(&self.counit(a)));
                right = right.add(&a.scale(&self.counit(b)));
                s_left = s_left.add(&self.mul(&self.antipode_simple(a)?, b));
                s_right = s_right.add(&self.mul(a, &self.antipode_simple(b)?));
            }
            out.push(HopfCheck {
                generator: gen.name.clone(),
                counit_left: left == x,
                counit_right: right == x,
                antipode_left: s_left.is_zero(),
                antipode_right: s_right.is_zero(),
            });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HopfCheck {
    pub generator: String,
    pub counit_left: bool,
    pub counit_right: bool,
    pub antipode_left: bool,
    pub antipode_right: bool,
}

impl HopfCheck {
    pub fn passes(&self) -> bool {
        self.counit_left && self.counit_right && self.antipode_left && self.antipode_right
    }
}

/// Echelon basis of a subspace of the algebra, keyed by leading monomial.
#[derive(Debug, Clone, Default)]
pub(crate) struct SparseSpan {
    basis: BTreeMap<Mono, AlgebraElement>,
}

impl SparseSpan {
    pub(crate) fn reduce(&self, v: &AlgebraElement) -> AlgebraElement {
        let mut w = v.clone();
        loop {
            // largest monomial of w that is a pivot
            let hit = w
                .terms()
                .rev()
                .find(|(m, _)| self.basis.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = hit else { return w };
            w = w.sub(&self.basis[&m].scale(&c));
        }
    }

    /// Inserts `v`; returns the reduced vector when the span grew.
    pub(crate) fn insert(&mut self, v: &AlgebraElement) -> Option<AlgebraElement> {
        let w = self.reduce(v);
        let (m, c) = w.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let w = w.scale(&c.inv());
        self.basis.insert(m, w.clone());
        Some(w)
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn elements(&self) -> Vec<AlgebraElement> {
        self.basis.values().cloned().collect()
    }
}

/// `(ad H)(h)` computed as the closure of `span{h}` under `ad` of the algebra generators.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    /// Dimension when the closure stabilized within the cap.
    pub dim: Option<usize>,
    pub exceeds_cap: bool,
    pub cap: usize,
    /// Length of the longest generator word needed to reach a new vector.
    pub stabilization_depth: usize,
    pub basis: Vec<AlgebraElement>,
}

pub fn ad_orbit(p: &Presentation, h: &AlgebraElement, cap: usize) -> Result<OrbitReport> {
    let mut actors: Vec<AlgebraElement> = Vec::new();
    for (i, g) in p.gens.iter().enumerate() {
        if g.expansion.is_none() {
            actors.push(p.x(i));
        }
    }
    for k in 0..p.gamma.ngens() {
        let g = p.gamma.generator(k);
        actors.push(p.grouplike(p.gamma.inverse(&g)));
        actors.push(p.grouplike(g));
    }
    let mut span = SparseSpan::default();
    let mut queue = VecDeque::new();
    let mut depth = 0;
    let h = p.normalize(h);
    if let Some(v) = span.insert(&h) {
        queue.push_back((v, 0usize));
    }
    while let Some((v, d)) = queue.pop_front() {
        for a in &actors {
            let w = p.ad(a, &v)?;
            if let Some(nv) = span.insert(&w) {
                depth = depth.max(d + 1);
                if span.dim() > cap {
                    return Ok(OrbitReport {
                        dim: None,
                        exceeds_cap: true,
                        cap,
                        stabilization_depth: depth,
                        basis: span.elements(),
                    });
                }
                queue.push_back((nv, d + 1));
            }
        }
    }
    Ok(OrbitReport {
        dim: Some(span.dim()),
        exceeds_cap: false,
        cap,
        stabilization_depth: depth,
        basis: span.elements(),
    })
}
