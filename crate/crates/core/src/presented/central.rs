//! Central powers of root vectors and the PI / `H_fin` decisions on presentations.

use serde::Serialize;

use super::datum::{hfin_witness, HfinDecision, PiDecision};
use super::{AlgebraElement, Presentation};
use crate::error::{Error, Result};
use crate::groups::character_order;
use crate::scalars::Scalar;

#[derive(Debug, Clone, Serialize)]
pub struct Commutation {
    pub with: String,
    /// `c` with `y x_β^N = c x_β^N y`, when the two products are proportional.
    pub scalar: Option<Scalar>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralPower {
    pub generator: String,
    /// Order of `χ_β(g_β)`.
    pub n_beta: Option<u64>,
    /// Commutation scalars of `x_β^{N_β}` with every other generator, found by rewriting.
    pub commutation: Vec<Commutation>,
    /// Whether each scalar equals `χ_β(g_α)^{N_β}` as predicted.
    pub prediction_holds: Option<bool>,
    /// Smallest `N ≤ cap` with `x_β^N` commuting with every generator.
    pub central_exponent: Option<u64>,
    pub cap: u64,
}

fn commutation_scalar(p: &Presentation, y: &AlgebraElement, power: &AlgebraElement) -> Option<Scalar> {
    let left = p.mul(y, power);
    let right = p.mul(power, y);
    left.ratio_to(&right)
}

fn commutes_with_all(p: &Presentation, beta: usize, n: u64) -> bool {
    let power = p.pow(&p.x(beta), n as u32);
    for k in 0..p.gamma().ngens() {
        let g = p.gamma().generator(k);
        if !p.char_word(&vec![beta; n as usize], &g).is_one() {
            return false;
        }
    }
    (0..p.gens().len()).filter(|&a| a != beta).all(|a| {
        let y = p.x(a);
        p.mul(&y, &power) == p.mul(&power, &y)
    })
}

pub fn central_power_exponent(p: &Presentation, beta: usize, cap: u64) -> Result<CentralPower> {
    let gen = p
        .gens()
        .get(beta)
        .ok_or_else(|| Error::invalid_input(format!("no generator with index {beta}")))?;
    let q_bb = gen.character.eval(&gen.coaction);
    let n_beta = p.ctx().root_of_unity_order(&q_bb)?;
    let mut commutation = Vec::new();
    let mut prediction_holds = None;
    if let Some(n) = n_beta {
        let power = p.pow(&p.x(beta), n as u32);
        let mut ok = true;
        for (a, other) in p.gens().iter().enumerate() {
            if a == beta {
                continue;
            }
            let c = commutation_scalar(p, &p.x(a), &power);
            let predicted = gen.character.eval(&other.coaction).pow(n as i64);
            ok &= c.as_ref() == Some(&predicted);
            commutation.push(Commutation {
                with: other.name.clone(),
                scalar: c,
            });
        }
        for (k, name) in p.gamma_names().iter().enumerate() {
            let g = p.gamma().generator(k);
            commutation.push(Commutation {
                with: name.clone(),
                scalar: Some(p.char_word(&vec![beta; n as usize], &g)),
            });
        }
        prediction_holds = Some(ok);
    }
    let central_exponent = (1..=cap).find(|&n| commutes_with_all(p, beta, n));
    Ok(CentralPower {
        generator: gen.name.clone(),
        n_beta,
        commutation,
        prediction_holds,
        central_exponent,
        cap,
    })
}

/// Smallest `N ≤ cap` such that `γ_k^N` is central (commutes with every root vector).
pub fn grouplike_central_exponent(p: &Presentation, k: usize, cap: u64) -> Option<u64> {
    let g = p.gamma().generator(k);
    (1..=cap).find(|&n| {
        let gn = p.gamma().pow(&g, n as i64);
        (0..p.gens().len()).all(|i| p.char_word(&[i], &gn).is_one())
    })
}

fn primitive_orders(p: &Presentation) -> Vec<Option<u64>> {
    p.gens()
        .iter()
        .filter(|g| g.expansion.is_none())
        .map(|g| character_order(&g.character))
        .collect()
}

/// PI iff every root-vector character has finite order.
pub fn decide_pi_presentation(p: &Presentation) -> PiDecision {
    let orders = primitive_orders(p);
    let infinite_order: Vec<usize> = (0..orders.len()).filter(|&i| orders[i].is_none()).collect();
    PiDecision {
        pi: infinite_order.is_empty(),
        orders,
        infinite_order,
    }
}

/// `H_fin = H` iff every character has finite order; otherwise searches the
/// grouplike generators and their inverses for an element with unbounded orbit.
pub fn decide_hfin_presentation(p: &Presentation, cap: usize) -> HfinDecision {
    let pi = decide_pi_presentation(p);
    let witness = if pi.pi {
        None
    } else {
        let mut cands: Vec<_> = p.gens().iter().map(|g| g.coaction.clone()).collect();
        cands.extend((0..p.gamma().ngens()).map(|k| p.gamma().generator(k)));
        hfin_witness(p, &cands, cap)
    };
    HfinDecision {
        hfin_equals_h: pi.pi,
        orders: pi.orders,
        witness,
        witness_cap: cap,
    }
}
