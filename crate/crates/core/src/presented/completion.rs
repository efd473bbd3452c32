//! Diamond-lemma completion of a rewrite system with a grouplike part.

use serde::Serialize;

use super::{AlgebraElement, Presentation};
use crate::error::{Error, Result};
use crate::freealg::Word;
use crate::scalars::Scalar;

pub const DEFAULT_COMPLETION_CAP: u32 = 8;

const MAX_RULES: usize = 2000;

#[derive(Debug, Clone, Serialize)]
pub struct CompletionReport {
    /// Left sides of rules present after completion that were not there before.
    pub new_rules: Vec<String>,
    pub ambiguities_checked: usize,
    /// Overlaps whose weighted degree exceeds the cap and were not examined.
    pub skipped_above_cap: usize,
    pub cap: u32,
    pub failures: Vec<String>,
}

impl CompletionReport {
    pub fn confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ambiguity {
    word: Word,
    left: AlgebraElement,
    right: AlgebraElement,
}

fn ambiguities(p: &Presentation, cap: u32) -> (Vec<Ambiguity>, usize) {
    let mut out = Vec::new();
    let mut skipped = 0;
    let id = p.gamma().identity();
    let rules: Vec<(&Word, &AlgebraElement)> = p.rules().iter().collect();
    for &(l1, r1) in &rules {
        for &(l2, r2) in &rules {
            // overlaps: suffix of l1 equals prefix of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] != l2[..k] {
                    continue;
                }
                let mut word = l1.clone();
                word.extend_from_slice(&l2[k..]);
                if p.weight(&word) > cap {
                    skipped += 1;
                    continue;
                }
                let tail = p.raw(l2[k..].to_vec(), id.clone(), Scalar::one());
                let head = p.raw(l1[..l1.len() - k].to_vec(), id.clone(), Scalar::one());
                out.push(Ambiguity {
                    word,
                    left: p.mul(r1, &tail),
                    right: p.mul(&head, r2),
                });
            }
            // inclusions: l2 strictly inside l1
            if l1 != l2 && l2.len() <= l1.len() {
                for pos in 0..=(l1.len() - l2.len()) {
                    if l1[pos..pos + l2.len()] != l2[..] {
                        continue;
                    }
                    let head = p.raw(l1[..pos].to_vec(), id.clone(), Scalar::one());
                    let tail = p.raw(l1[pos + l2.len()..].to_vec(), id.clone(), Scalar::one());
                    out.push(Ambiguity {
                        word: l1.clone(),
                        left: r1.clone(),
                        right: p.mul(&p.mul(&head, r2), &tail),
                    });
                }
            }
        }
    }
    (out, skipped)
}

/// Relations forced by conjugating each rule with the grouplike generators:
/// `γ (l − r) γ⁻¹ − χ_l(γ)(l − r)`.
fn homogeneity_defects(p: &Presentation) -> Vec<(Word, AlgebraElement)> {
    let mut out = Vec::new();
    for (lhs, rhs) in p.rules() {
        for k in 0..p.gamma().ngens() {
            let g = p.gamma().generator(k);
            let chl = p.char_word(lhs, &g);
            let defect = AlgebraElement::from_terms(
                rhs.terms()
                    .map(|(m, c)| (m.clone(), c * &(&p.char_word(&m.word, &g) - &chl))),
            );
            if !defect.is_zero() {
                out.push((lhs.clone(), defect));
            }
        }
    }
    out
}

/// Checks every ambiguity up to the cap without modifying the rules.
pub fn check_confluence(p: &Presentation, cap: u32) -> CompletionReport {
    let (amb, skipped) = ambiguities(p, cap);
    let mut failures = Vec::new();
    for a in &amb {
        let d = p.normalize(&a.left.sub(&a.right));
        if !d.is_zero() {
            let w = p.format_mono(&p.mono(a.word.clone(), p.gamma().identity()));
            failures.push(format!("ambiguity {w} leaves {}", p.format(&d)));
        }
    }
    for (lhs, d) in homogeneity_defects(p) {
        let w = p.format_mono(&p.mono(lhs, p.gamma().identity()));
        failures.push(format!("rule for {w} is not Γ-homogeneous: {}", p.format(&d)));
    }
    CompletionReport {
        new_rules: Vec::new(),
        ambiguities_checked: amb.len(),
        skipped_above_cap: skipped,
        cap,
        failures,
    }
}

/// Turns a relation into a rule for its leading word and interreduces.
fn absorb(p: &mut Presentation, rel: &AlgebraElement, queue: &mut Vec<AlgebraElement>, cap: u32) -> Result<()> {
    let d = p.normalize(rel);
    let Some((lead, c)) = d.leading().map(|(m, c)| (m.clone(), c.clone())) else {
        return Ok(());
    };
    if lead.word.is_empty() {
        return Err(Error::Inconclusive(format!(
            "relation {} collapses grouplikes",
            p.format(&d)
        )));
    }
    if lead.weight > cap {
        return Err(Error::Inconclusive(format!(
            "completion produced a rule of weight {} above the cap {cap}",
            lead.weight
        )));
    }
    let ginv = p.gamma().inverse(&lead.gamma);
    let neg_inv = -c.inv();
    let mut rhs = AlgebraElement::zero();
    for (m, e) in d.terms() {
        if *m == lead {
            continue;
        }
        if m.word == lead.word {
            return Err(Error::Inconclusive(format!(
                "relation {} has two leading terms differing only in the grouplike part",
                p.format(&d)
            )));
        }
        let gamma = p.gamma().op(&m.gamma, &ginv);
        rhs.add_term(p.mono(m.word.clone(), gamma), e * &neg_inv);
    }
    let lhs = lead.word.clone();
    let contains = |w: &Word| w.windows(lhs.len()).any(|s| s == lhs.as_slice());
    let displaced: Vec<Word> = p.rules().keys().filter(|w| contains(w)).cloned().collect();
    for w in displaced {
        let r = p.remove_rule(&w).unwrap();
        let raw = p.raw(w, p.gamma().identity(), Scalar::one());
        queue.push(raw.sub(&r));
    }
    p.set_rule(lhs, rhs);
    if p.rules().len() > MAX_RULES {
        return Err(Error::Inconclusive("completion exceeded the rule budget".into()));
    }
    let keys: Vec<Word> = p.rules().keys().cloned().collect();
    for k in keys {
        let r = p.normalize(&p.rules()[&k]);
        p.set_rule(k, r);
    }
    Ok(())
}

/// Adds `relations` to the rule set and completes it up to weighted degree `cap`.
pub fn complete_presentation(
    p: &mut Presentation,
    relations: Vec<AlgebraElement>,
    cap: u32,
) -> Result<CompletionReport> {
    let before: Vec<Word> = p.rules().keys().cloned().collect();
    let mut queue = relations;
    let mut checked = 0;
    let mut skipped;
    loop {
        while let Some(r) = queue.pop() {
            absorb(p, &r, &mut queue, cap)?;
        }
        let (amb, s) = ambiguities(p, cap);
        checked += amb.len();
        skipped = s;
        for a in amb {
            let d = p.normalize(&a.left.sub(&a.right));
            if !d.is_zero() {
                queue.push(d);
            }
        }
        for (_, d) in homogeneity_defects(p) {
            queue.push(d);
        }
        if queue.is_empty() {
            break;
        }
    }
    let new_rules = p
        .rules()
        .keys()
        .filter(|w| !before.contains(w))
        .map(|w| p.format_mono(&p.mono(w.clone(), p.gamma().identity())))
        .collect();
    Ok(CompletionReport {
        new_rules,
        ambiguities_checked: checked,
        skipped_above_cap: skipped,
        cap,
        failures: Vec::new(),
    })
}
