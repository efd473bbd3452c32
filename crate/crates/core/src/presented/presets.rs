use std::collections::BTreeMap;

use super::completion::{check_confluence, DEFAULT_COMPLETION_CAP};
use super::datum::CartanDatum;
use super::{AlgebraElement, Convention, Preset, Presentation, XGen};
use crate::error::{Error, Result};
use crate::groups::{Character, FgAbelianGroup};
use crate::scalars::{FieldCtx, Scalar};

/// Parameters of a named preset.
#[derive(Debug, Clone)]
pub enum PresetSpec {
    Fq { q: Scalar },
    /// Upper triangle `q_ij` (`i ≤ j`) of the braiding matrix; `q_ji = q_ij⁻¹`.
    QuantumLinearSpace { q: Vec<Vec<Scalar>> },
    /// `λ` defaults to `q/(q − q⁻¹)`; `Γ = Z/ℓ` when `ell` is given, else `Z`.
    UqSl2 { q: Scalar, lambda: Option<Scalar>, ell: Option<u64> },
    A2Borel { q: Scalar },
}

pub fn build_preset(ctx: FieldCtx, spec: &PresetSpec) -> Result<Presentation> {
    match spec {
        PresetSpec::Fq { q } => fq(ctx, q.clone()),
        PresetSpec::QuantumLinearSpace { q } => quantum_linear_space(ctx, q),
        PresetSpec::UqSl2 { q, lambda, ell } => uq_sl2(ctx, q.clone(), lambda.clone(), *ell),
        PresetSpec::A2Borel { q } => {
            let d = CartanDatum::example1(ctx, q.clone())?;
            let (p, rep) = d.build_with_preset(DEFAULT_COMPLETION_CAP, Preset::A2Borel { q: q.clone() })?;
            if !rep.confluent() {
                return Err(Error::Inconclusive(format!(
                    "A2 completion not confluent: {}",
                    rep.failures.join("; ")
                )));
            }
            Ok(p)
        }
    }
}

fn check_q(ctx: &FieldCtx, q: &Scalar) -> Result<()> {
    if q.is_zero() {
        return Err(Error::invalid_parameter("q must be nonzero"));
    }
    if !ctx.contains(q) {
        return Err(Error::FieldMismatch(format!("{q} is not in {ctx}")));
    }
    Ok(())
}

/// `F_(q)`: `ax = qxa`, `Δ(x) = x⊗a + 1⊗x`, `Γ = ⟨a⟩ ≅ Z`.
pub fn fq(ctx: FieldCtx, q: Scalar) -> Result<Presentation> {
    check_q(&ctx, &q)?;
    let gamma = FgAbelianGroup::free(1);
    let chi = Character::new(ctx, &gamma, vec![q.clone()])?;
    let x = XGen {
        name: "x".into(),
        weight: 1,
        coaction: gamma.generator(0),
        character: chi,
        expansion: None,
    };
    Presentation::new(
        ctx,
        gamma,
        vec!["a".into()],
        vec![x],
        Convention::RightGrouplike,
        Preset::Fq { q },
    )
}

fn full_braiding(q: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = q.len();
    let mut full = vec![vec![Scalar::one(); n]; n];
    for i in 0..n {
        if q[i].len() != n {
            return Err(Error::invalid_input(format!("braiding row {i} has length {}", q[i].len())));
        }
        for j in i..n {
            if q[i][j].is_zero() {
                return Err(Error::invalid_parameter(format!("q_{i}{j} is zero")));
            }
            full[i][j] = q[i][j].clone();
            full[j][i] = q[i][j].inv();
        }
        full[i][i] = q[i][i].clone();
    }
    Ok(full)
}

/// Quantum linear space: `x_i x_j = q_ij x_j x_i`, `χ_j(g_i) = q_ij`, `Γ = Z^θ`.
pub fn quantum_linear_space(ctx: FieldCtx, q: &[Vec<Scalar>]) -> Result<Presentation> {
    let d = CartanDatum::quantum_linear_space(ctx, q)?;
    let (p, rep) = d.build_with_preset(
        DEFAULT_COMPLETION_CAP,
        Preset::QuantumLinearSpace { q: full_braiding(q)? },
    )?;
    if !rep.confluent() {
        return Err(Error::Inconclusive(rep.failures.join("; ")));
    }
    Ok(p)
}

/// `U_q(sl2)`-type algebra of the A1×A1 datum with linking:
/// `x₁x₂ − q x₂x₁ = λ(1 − g²)`, `χ₁(g) = q⁻¹`, `χ₂(g) = q`.
pub fn uq_sl2(ctx: FieldCtx, q: Scalar, lambda: Option<Scalar>, ell: Option<u64>) -> Result<Presentation> {
    let d = CartanDatum::example2(ctx, q.clone(), lambda, ell)?;
    let report = d.validate();
    if !report.valid {
        return Err(Error::invalid_input(report.violations.join("; ")));
    }
    let lambda = d.lambda[&(0, 1)].clone();
    // order x2 < x1 so that x1x2 is the leading word
    let gens = vec![
        XGen {
            name: "x2".into(),
            weight: 1,
            coaction: d.g[1].clone(),
            character: d.chi[1].clone(),
            expansion: None,
        },
        XGen {
            name: "x1".into(),
            weight: 1,
            coaction: d.g[0].clone(),
            character: d.chi[0].clone(),
            expansion: None,
        },
    ];
    let mut p = Presentation::new(
        ctx,
        d.gamma.clone(),
        d.gamma_names.clone(),
        gens,
        Convention::LeftGrouplike,
        Preset::UqSl2 {
            q: q.clone(),
            lambda: lambda.clone(),
            ell,
        },
    )?;
    let id = d.gamma.identity();
    let g2 = d.gamma.pow(&d.gamma.generator(0), 2);
    let rhs = AlgebraElement::from_terms([
        (p.mono(vec![0, 1], id.clone()), q.clone()),
        (p.mono(Vec::new(), id), lambda.clone()),
        (p.mono(Vec::new(), g2), -&lambda),
    ]);
    p.set_rule(vec![1, 0], rhs);
    let rep = check_confluence(&p, DEFAULT_COMPLETION_CAP);
    if !rep.confluent() {
        return Err(Error::Inconclusive(rep.failures.join("; ")));
    }
    Ok(p)
}

impl CartanDatum {
    /// `F_(q)` viewed as the rank-one datum `(Z, a, χ(a) = q)`.
    pub fn fq(ctx: FieldCtx, q: Scalar) -> Result<Self> {
        check_q(&ctx, &q)?;
        let gamma = FgAbelianGroup::free(1);
        let chi = Character::new(ctx, &gamma, vec![q])?;
        Ok(CartanDatum {
            ctx,
            gamma: gamma.clone(),
            gamma_names: vec!["a".into()],
            names: vec!["x".into()],
            g: vec![gamma.generator(0)],
            chi: vec![chi],
            cartan: vec![vec![2]],
            lambda: BTreeMap::new(),
        })
    }

    /// Diagonal-type A1^θ datum with `χ_j(g_i) = q_ij` over `Γ = Z^θ`.
    pub fn quantum_linear_space(ctx: FieldCtx, q: &[Vec<Scalar>]) -> Result<Self> {
        let full = full_braiding(q)?;
        let n = full.len();
        let gamma = FgAbelianGroup::free(n);
        let mut chi = Vec::with_capacity(n);
        for j in 0..n {
            for s in full.iter().map(|row| &row[j]) {
                check_q(&ctx, s)?;
            }
            chi.push(Character::new(ctx, &gamma, full.iter().map(|row| row[j].clone()).collect())?);
        }
        Ok(CartanDatum {
            ctx,
            gamma: gamma.clone(),
            gamma_names: (1..=n).map(|i| format!("g{i}")).collect(),
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            g: (0..n).map(|i| gamma.generator(i)).collect(),
            chi,
            cartan: (0..n)
                .map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect())
                .collect(),
            lambda: BTreeMap::new(),
        })
    }

    /// A1×A1 datum with `g₁ = g₂ = g`, `χ₁(g) = q⁻¹`, `χ₂(g) = q`, linking `λ₁₂`.
    pub fn example2(ctx: FieldCtx, q: Scalar, lambda: Option<Scalar>, ell: Option<u64>) -> Result<Self> {
        check_q(&ctx, &q)?;
        let gamma = match ell {
            Some(l) => FgAbelianGroup::cyclic(l)?,
            None => FgAbelianGroup::free(1),
        };
        let qi = q.inv();
        let lambda = match lambda {
            Some(l) => l,
            None => {
                let d = &q - &qi;
                if d.is_zero() {
                    return Err(Error::invalid_parameter("q − q⁻¹ = 0; give λ explicitly"));
                }
                &q / &d
            }
        };
        let g = gamma.generator(0);
        Ok(CartanDatum {
            ctx,
            gamma: gamma.clone(),
            gamma_names: vec!["g".into()],
            names: vec!["x1".into(), "x2".into()],
            g: vec![g.clone(), g],
            chi: vec![
                Character::new(ctx, &gamma, vec![qi])?,
                Character::new(ctx, &gamma, vec![q])?,
            ],
            cartan: vec![vec![2, 0], vec![0, 2]],
            lambda: [((0, 1), lambda)].into(),
        })
    }

    /// A2 datum over `Z²` with `χ₁(g₁) = q²`, `χ₁(g₂) = q⁻¹`, `χ₂(g₁) = q⁻¹`, `χ₂(g₂) = q²`.
    pub fn example1(ctx: FieldCtx, q: Scalar) -> Result<Self> {
        check_q(&ctx, &q)?;
        let gamma = FgAbelianGroup::free(2);
        let (q2, qi) = (q.pow(2), q.inv());
        Ok(CartanDatum {
            ctx,
            gamma: gamma.clone(),
            gamma_names: vec!["g1".into(), "g2".into()],
            names: vec!["x1".into(), "x2".into()],
            g: vec![gamma.generator(0), gamma.generator(1)],
            chi: vec![
                Character::new(ctx, &gamma, vec![q2.clone(), qi.clone()])?,
                Character::new(ctx, &gamma, vec![qi, q2])?,
            ],
            cartan: vec![vec![2, -1], vec![-1, 2]],
            lambda: BTreeMap::new(),
        })
    }
}
