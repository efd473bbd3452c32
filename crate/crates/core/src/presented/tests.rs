use super::*;
use crate::groups::GammaElem;

fn cyc(n: u32) -> FieldCtx {
    FieldCtx::cyclotomic(n).unwrap()
}

fn fq_zeta(n: u32) -> (Presentation, Scalar) {
    let k = cyc(n);
    let q = k.zeta().unwrap();
    (fq(k, q.clone()).unwrap(), q)
}

#[test]
fn fq_commutation() {
    let (p, q) = fq_zeta(4);
    let ax = parse_element("a*x", &p).unwrap();
    let xa = parse_element("x*a", &p).unwrap();
    assert_eq!(ax, xa.scale(&q));
    assert_eq!(p.format(&xa), "x*a");
    assert!(p.rules().is_empty());
    assert!(check_confluence(&p, 8).confluent());
}

#[test]
fn lemma_closed_forms_small() {
    let (p, q) = fq_zeta(3);
    let a = |j: i64| p.grouplike(GammaElem(vec![j]));
    let x = p.x(0);
    for i in 0..4u32 {
        for j in -3..4i64 {
            let h = p.pow(&x, i);
            let lhs = p.ad(&h, &a(j)).unwrap();
            let mut c = Scalar::one();
            for l in 0..i as i64 {
                c = &c * &(&Scalar::one() - &q.pow(j - l));
            }
            let rhs = p.mul(&p.pow(&x, i), &a(j - i as i64)).scale(&c);
            assert_eq!(lhs, rhs, "i={i} j={j}");
            let lhs2 = p.ad(&a(j), &p.pow(&x, i)).unwrap();
            assert_eq!(lhs2, p.pow(&x, i).scale(&q.pow(j * i as i64)));
        }
    }
}

#[test]
fn hopf_axioms_hold() {
    let (p, _) = fq_zeta(5);
    assert!(p.hopf_axioms_report().unwrap().iter().all(|c| c.passes()));
    let k = FieldCtx::rational_function();
    let u = uq_sl2(k, k.q().unwrap(), None, None).unwrap();
    assert!(u.hopf_axioms_report().unwrap().iter().all(|c| c.passes()));
}

#[test]
fn a2_completion_gives_expected_rules() {
    let k = FieldCtx::rational_function();
    let q = k.q().unwrap();
    let p = build_preset(k, &PresetSpec::A2Borel { q: q.clone() }).unwrap();
    let names: Vec<&str> = p.gens().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["x1", "x12", "x2"]);
    let rules = p.describe_rules();
    let body: Vec<&String> = rules.iter().filter(|r| !r.starts_with('g')).collect();
    assert_eq!(body.len(), 3, "{rules:?}");
    let x12x1 = parse_element("x12*x1", &p).unwrap();
    assert_eq!(x12x1, parse_element("x1*x12", &p).unwrap().scale(&q.inv()));
    let x2x12 = parse_element("x2*x12", &p).unwrap();
    assert_eq!(x2x12, parse_element("x12*x2", &p).unwrap().scale(&q.inv()));
    let x2x1 = parse_element("x2*x1", &p).unwrap();
    assert_eq!(p.format(&x2x1), "q*x1*x2 - q*x12");
}

#[test]
fn uqsl2_rule() {
    let k = FieldCtx::rational_function();
    let q = k.q().unwrap();
    let p = uq_sl2(k, q.clone(), None, None).unwrap();
    let lhs = parse_element("x1*x2", &p).unwrap();
    let lambda = &q / &(&q - &q.inv());
    let rhs = parse_element("q*x2*x1", &p)
        .unwrap()
        .add(&p.one().scale(&lambda))
        .sub(&parse_element("g^2", &p).unwrap().scale(&lambda));
    assert_eq!(lhs, rhs);
}

#[test]
fn quantum_linear_space_central_powers() {
    let k = cyc(12);
    let z = |e: i64| k.zeta_pow(e).unwrap();
    let one = Scalar::one();
    let q = vec![
        vec![z(6), one.clone(), z(6)],
        vec![one.clone(), z(4), one.clone()],
        vec![one.clone(), one.clone(), z(3)],
    ];
    let p = quantum_linear_space(k, &q).unwrap();
    for (i, n) in [(0usize, 2u64), (1, 3), (2, 4)] {
        let c = central_power_exponent(&p, i, 12).unwrap();
        assert_eq!(c.n_beta, Some(n));
        assert_eq!(c.central_exponent, Some(n));
        assert_eq!(c.prediction_holds, Some(true));
    }
}

#[test]
fn datum_validation_examples() {
    let k = FieldCtx::rational_function();
    let q = k.q().unwrap();
    assert!(CartanDatum::example1(k, q.clone()).unwrap().validate().valid);
    assert!(CartanDatum::example2(k, q.clone(), None, None).unwrap().validate().valid);
    let bad = CartanDatum::example2(k, Scalar::one(), Some(Scalar::one()), None).unwrap();
    let r = bad.validate();
    assert!(!r.valid);
    assert!(r.violations.iter().any(|v| v.contains("= 1")));
}

#[test]
fn pi_and_hfin_decisions() {
    let k = cyc(3);
    let d = CartanDatum::example2(k, k.zeta().unwrap(), None, Some(3)).unwrap();
    assert!(decide_pi_datum(&d).pi);
    assert!(decide_hfin_datum(&d, 10).hfin_equals_h);
    let f = FieldCtx::rational_function();
    let d = CartanDatum::example2(f, f.q().unwrap(), None, None).unwrap();
    assert!(!decide_pi_datum(&d).pi);
    let h = decide_hfin_datum(&d, 10);
    assert!(!h.hfin_equals_h);
    assert!(h.witness.is_some());
}

#[test]
fn parse_errors() {
    let (p, _) = fq_zeta(4);
    assert!(matches!(parse_element("x^-1", &p), Err(Error::Syntax { .. })));
    assert!(matches!(parse_element("y", &p), Err(Error::Syntax { column: 1, .. })));
    let e = parse_element("a*x^2*a^-1", &p).unwrap();
    assert_eq!(e, p.pow(&p.x(0), 2).scale(&p.ctx().zeta().unwrap().pow(2)));
}

#[test]
fn orbit_of_x_is_one_dimensional() {
    let (p, _) = fq_zeta(4);
    let r = ad_orbit(&p, &p.x(0), 10).unwrap();
    assert_eq!(r.dim, Some(1));
}
