//! Worked examples, each checked against an independent computation.

use hopfpi_core::colorlie::{decide_envelope_pi, enveloping_presentation, Bicharacter, ColorLieSuperalgebra, SearchOutcome};
use hopfpi_core::groups::{character_kernel, character_order, find_abelian_finite_index, Character, FgAbelianGroup, FiniteGroup, GammaElem};
use hopfpi_core::presented::{check_confluence, decide_hfin_presentation, fq, parse_element, quantum_linear_space};
use hopfpi_core::scalars::cyclotomic_polynomial;
use hopfpi_core::{FieldCtx, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn cyc(n: u32) -> FieldCtx {
    FieldCtx::cyclotomic(n).unwrap()
}

/// Long division of `a` by the monic `b`, integer coefficients, lowest degree first.
fn divide(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(db)];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact division");
    q
}

/// `Φ_n = (x^n − 1) / ∏_{d | n, d < n} Φ_d`.
fn phi(n: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        p = divide(&p, &phi(d));
    }
    p
}

#[test]
fn cyclotomic_polynomials_by_division() {
    for n in 1..=30 {
        assert_eq!(cyclotomic_polynomial(n).unwrap(), phi(n), "Φ_{n}");
    }
    let twelve: Vec<BigInt> = [1, 0, -1, 0, 1].map(BigInt::from).to_vec();
    assert_eq!(phi(12), twelve);
}

#[test]
fn zeta_squared_in_q_zeta4() {
    let k = cyc(4);
    let z = k.zeta().unwrap();
    assert_eq!(z.pow(2), Scalar::from_int(-1));
    assert_eq!(k.root_of_unity_order(&z).unwrap(), Some(4));
}

#[test]
fn character_order_is_lcm() {
    let k = cyc(12);
    let gamma = FgAbelianGroup::free(2);
    let (z4, z6) = (k.zeta_pow(3).unwrap(), k.zeta_pow(2).unwrap());
    let chi = Character::new(k, &gamma, vec![z4.clone(), z6.clone()]).unwrap();
    let oracle = (1..=24u64).find(|&m| z4.pow(m as i64).is_one() && z6.pow(m as i64).is_one());
    assert_eq!(character_order(&chi), oracle);
    assert_eq!(oracle, Some(12));
}

#[test]
fn kernel_on_z_by_scan() {
    for n in 2..=12u32 {
        let k = cyc(n);
        let gamma = FgAbelianGroup::free(1);
        let chi = Character::new(k, &gamma, vec![k.zeta().unwrap()]).unwrap();
        let info = character_kernel(std::slice::from_ref(&chi), &gamma).unwrap();
        let first = (1..=n as i64).find(|&j| chi.eval(&GammaElem(vec![j])).is_one()).unwrap();
        assert_eq!(info.index, first as u64);
        assert_eq!(info.generators.len(), 1);
        assert_eq!(info.generators[0].0[0].abs(), first);
    }
}

#[test]
fn kernel_two_z_squared() {
    let k = FieldCtx::rational();
    let gamma = FgAbelianGroup::free(2);
    let m1 = Scalar::from_int(-1);
    let chars = vec![
        Character::new(k, &gamma, vec![m1.clone(), Scalar::one()]).unwrap(),
        Character::new(k, &gamma, vec![Scalar::one(), m1]).unwrap(),
    ];
    let info = character_kernel(&chars, &gamma).unwrap();
    assert_eq!(info.index, 4);
    // The generators span 2Z × 2Z: determinant ±4 and all entries even.
    let g = &info.generators;
    assert_eq!(g.len(), 2);
    assert!(g.iter().all(|v| v.0.iter().all(|x| x % 2 == 0)));
    assert_eq!((g[0].0[0] * g[1].0[1] - g[0].0[1] * g[1].0[0]).abs(), 4);
}

#[test]
fn abelian_subgroups_of_finite_index() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let a = find_abelian_finite_index(&s3, None, 64).unwrap().unwrap();
    assert_eq!(a.len(), 3);
    assert!(s3.is_abelian_set(&a));
    assert!(a.iter().all(|&x| s3.element_order(x) != 2));
    let q8 = FiniteGroup::quaternion().unwrap();
    let h = find_abelian_finite_index(&q8, None, 64).unwrap().unwrap();
    assert_eq!(h.len(), 4);
    assert!(h.iter().any(|&x| q8.element_order(x) == 4));
    let trivial_only = |sub: &[usize]| sub.len() == 1;
    let e = find_abelian_finite_index(&q8, Some(&trivial_only), 64).unwrap().unwrap();
    assert_eq!(e, vec![q8.identity()]);
}

#[test]
fn confluence_of_small_presentations() {
    let k = cyc(4);
    let p = fq(k, k.zeta().unwrap()).unwrap();
    let r = check_confluence(&p, 8);
    assert!(r.confluent() && r.new_rules.is_empty());
    let k = cyc(12);
    let z = |e: i64| k.zeta_pow(e).unwrap();
    let q = vec![vec![z(6), z(1), z(2)], vec![z(11), z(4), z(5)], vec![z(10), z(7), z(3)]];
    let p = quantum_linear_space(k, &q).unwrap();
    let r = check_confluence(&p, 8);
    assert!(r.confluent() && r.new_rules.is_empty(), "{:?}", r.failures);
}

#[test]
fn fq_powers_are_central_at_roots_of_unity() {
    for n in 2..=5u32 {
        let k = cyc(n);
        let p = fq(k, k.zeta().unwrap()).unwrap();
        let xn = parse_element(&format!("x^{n}"), &p).unwrap();
        let an = parse_element(&format!("a^{n}"), &p).unwrap();
        for g in ["x", "a", "a^-1"] {
            let y = parse_element(g, &p).unwrap();
            assert_eq!(p.mul(&y, &xn), p.mul(&xn, &y));
            assert_eq!(p.mul(&y, &an), p.mul(&an, &y));
        }
        assert!(decide_hfin_presentation(&p, 10).hfin_equals_h);
    }
    let f = FieldCtx::rational_function();
    let p = fq(f, f.q().unwrap()).unwrap();
    let h = decide_hfin_presentation(&p, 10);
    assert!(!h.hfin_equals_h);
    assert!(h.witness.is_some());
}

fn super_line(ctx: FieldCtx, odd: usize, bracket: bool) -> ColorLieSuperalgebra {
    let t = FgAbelianGroup::cyclic(2).unwrap();
    let mut names = vec!["h".to_string()];
    let mut degrees = vec![t.element(vec![0]).unwrap()];
    for i in 0..odd {
        names.push(format!("e{}", i + 1));
        degrees.push(t.element(vec![1]).unwrap());
    }
    let mut l = ColorLieSuperalgebra::new(Bicharacter::super_sign(ctx), names, degrees).unwrap();
    if bracket {
        l.set_bracket_pair(1, 1, l.unit(0)).unwrap();
    }
    l
}

#[test]
fn grassmann_line_envelope() {
    let ctx = FieldCtx::rational();
    let t = FgAbelianGroup::cyclic(2).unwrap();
    let l = ColorLieSuperalgebra::new(Bicharacter::super_sign(ctx), vec!["x".into()], vec![t.element(vec![1]).unwrap()]).unwrap();
    let (p, rep) = enveloping_presentation(&l).unwrap();
    assert!(rep.confluent());
    assert!(parse_element("x*x", &p).unwrap().is_zero());
    assert!(matches!(decide_envelope_pi(&l).unwrap(), SearchOutcome::Pi { .. }));
}

#[test]
fn envelope_pi_criterion() {
    let ctx = FieldCtx::rational();
    // [L_-, L_-] = 0 with L_+ abelian: PI with M = L_-.
    assert!(matches!(decide_envelope_pi(&super_line(ctx, 2, false)).unwrap(), SearchOutcome::Pi { .. }));
    let abelian = ColorLieSuperalgebra::new(Bicharacter::trivial(ctx), vec!["u".into(), "v".into()], vec![GammaElem(vec![]); 2]).unwrap();
    assert!(matches!(decide_envelope_pi(&abelian).unwrap(), SearchOutcome::Pi { .. }));
    let h = hopfpi_core::colorlie::heisenberg(ctx);
    assert!(matches!(decide_envelope_pi(&h).unwrap(), SearchOutcome::NotPi { .. }));
}
