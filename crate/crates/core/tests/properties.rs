use hopfpi_core::colorlie::{random_bicharacter, small_grading_groups, validate_color_axioms, GradedAssociative};
use hopfpi_core::freealg::{permutations, sign, substitute_multilinear, MatrixAlgebra, MultilinearTemplate, Shape};
use hopfpi_core::groups::{character_kernel, Character, FgAbelianGroup, GammaElem};
use hopfpi_core::linalg::{nullspace, rank, smith_normal_form, Matrix};
use hopfpi_core::pilab::{
    bilinear_image_dim, evaluate_identity, multilinear_identity_kernel, Bilinear, IdentityStatus, IdentityTarget,
    MatrixTarget, Mode,
};
use hopfpi_core::presented::{build_preset, uq_sl2, Letter, PresetSpec, Presentation};
use hopfpi_core::{FieldCtx, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cyc(n: u32) -> FieldCtx {
    FieldCtx::cyclotomic(n).unwrap()
}

/// Sparse element of `Q(ζ_12)` with small coefficients.
fn cyclotomic_scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, 0i64..12), 0..4).prop_map(|terms| {
        let k = cyc(12);
        terms
            .into_iter()
            .fold(Scalar::zero(), |acc, (c, e)| &acc + &(&Scalar::from_int(c) * &k.zeta_pow(e).unwrap()))
    })
}

fn small_int() -> impl Strategy<Value = Scalar> {
    (-4i64..=4).prop_map(Scalar::from_int)
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn letters(ngens: usize, gamma_rank: usize) -> impl Strategy<Value = Vec<(bool, usize, i64)>> {
    prop::collection::vec((prop::bool::weighted(0.25), 0..ngens.max(gamma_rank), -2i64..=2), 0..5)
}

fn to_letters(p: &Presentation, raw: &[(bool, usize, i64)]) -> Vec<Letter> {
    raw.iter()
        .map(|&(is_g, i, e)| {
            if is_g {
                let g = p.gamma().generator(i % p.gamma().ngens());
                Letter::G(p.gamma().pow(&g, e))
            } else {
                Letter::X(i % p.gens().len())
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic_scalar(), b in cyclotomic_scalar(), c in cyclotomic_scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn literals_round_trip(a in cyclotomic_scalar()) {
        let k = cyc(12);
        prop_assert_eq!(k.parse(&a.to_literal()).unwrap(), a);
    }

    #[test]
    fn rational_function_literals_round_trip(n in -3i64..=3, d in 1i64..=3, e in -3i64..=3) {
        let k = FieldCtx::rational_function();
        let q = k.q().unwrap();
        let s = &(&Scalar::from_int(n) + &q.pow(e)) / &(&Scalar::from_int(d) + &q);
        prop_assert_eq!(k.parse(&s.to_literal()).unwrap(), s);
    }

    #[test]
    fn nullspace_is_kernel_and_rank_nullity(rows in int_matrix(3, 5)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect());
        let ns = nullspace(&m);
        prop_assert_eq!(rank(&m) + ns.len(), 5);
        for v in ns {
            let col = Matrix::from_rows(v.into_iter().map(|x| vec![x]).collect());
            prop_assert!(m.mul(&col).is_zero());
        }
    }

    #[test]
    fn smith_form_is_diagonal_and_divisible(rows in int_matrix(3, 4)) {
        let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = smith_normal_form(&a);
        let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            (0..x.len())
                .map(|i| (0..y[0].len()).map(|j| (0..y.len()).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
                .collect()
        };
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    prop_assert!(x.is_zero());
                } else if i < s.diagonal.len() {
                    prop_assert_eq!(x, &s.diagonal[i]);
                }
            }
        }
        for w in s.diagonal.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn character_kernel_generators_are_in_kernel(m in 2u64..=12, e1 in 0i64..12, e2 in 0i64..12) {
        let k = cyc(12);
        let gamma = FgAbelianGroup::new(1, vec![m]).unwrap();
        let step = 12 / num_integer::gcd(12, m) as i64;
        let chi = Character::new(k, &gamma, vec![k.zeta_pow(e1).unwrap(), k.zeta_pow(step * e2).unwrap()]);
        if let Ok(chi) = chi {
            let info = character_kernel(std::slice::from_ref(&chi), &gamma).unwrap();
            for g in &info.generators {
                prop_assert!(chi.eval(g).is_one());
            }
            prop_assert!(info.index >= 1);
        }
    }

    #[test]
    fn sign_is_multiplicative(i in 0usize..24, j in 0usize..24) {
        let perms = permutations(4);
        let (p, q) = (&perms[i], &perms[j]);
        let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
        prop_assert_eq!(sign(&pq), sign(p) * sign(q));
    }

    #[test]
    fn normal_form_idempotent_and_multiplicative(u in letters(3, 2), v in letters(3, 2), w in letters(3, 2)) {
        let ctx = FieldCtx::rational_function();
        let p = build_preset(ctx, &PresetSpec::A2Borel { q: ctx.q().unwrap() }).unwrap();
        let (u, v, w) = (to_letters(&p, &u), to_letters(&p, &v), to_letters(&p, &w));
        let nu = p.normalize_letters(&u);
        prop_assert_eq!(p.normalize(&nu), nu.clone());
        let nv = p.normalize_letters(&v);
        let uv: Vec<Letter> = u.iter().chain(&v).cloned().collect();
        prop_assert_eq!(p.normalize_letters(&uv), p.mul(&nu, &nv));
        let nw = p.normalize_letters(&w);
        prop_assert_eq!(p.mul(&p.mul(&nu, &nv), &nw), p.mul(&nu, &p.mul(&nv, &nw)));
    }

    #[test]
    fn adjoint_action_is_multiplicative(h in letters(2, 1), k in letters(2, 1), y in letters(2, 1)) {
        let ctx = cyc(3);
        let p = uq_sl2(ctx, ctx.zeta().unwrap(), None, None).unwrap();
        let (h, k, y) = (p.normalize_letters(&to_letters(&p, &h)), p.normalize_letters(&to_letters(&p, &k)), p.normalize_letters(&to_letters(&p, &y)));
        let lhs = p.ad(&p.mul(&h, &k), &y).unwrap();
        let rhs = p.ad(&h, &p.ad(&k, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn color_axioms_from_graded_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = cyc(12);
        for t in small_grading_groups() {
            let a = GradedAssociative::random(&mut rng, &t, &ctx);
            prop_assert!(a.is_associative());
            let beta = random_bicharacter(&mut rng, &ctx, &t);
            let l = a.color_bracket(&beta).unwrap();
            let r = validate_color_axioms(&l);
            prop_assert!(r.valid(), "{:?}", r);
        }
    }

    #[test]
    fn bilinear_image_bound(
        t in (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(a, b, c)| {
            prop::collection::vec(prop::collection::vec(prop::collection::vec(small_int(), c), b), a)
        }),
        seed in any::<u64>(),
    ) {
        let r = bilinear_image_dim(&Bilinear::new(t).unwrap(), 8, seed);
        prop_assert!(r.bound_holds);
        prop_assert!(r.image_dim <= r.m * r.n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A template holds on `M_2` exactly when it lies in the computed kernel.
    #[test]
    fn kernel_evaluation_duality(coeffs in prop::collection::vec(-2i64..=2, 24), scale in -3i64..=3, pick in any::<bool>()) {
        let m = MatrixTarget::full(2);
        let kernel = multilinear_identity_kernel(&m, 4, 6).unwrap();
        prop_assert_eq!(kernel.dimension, 1);
        let t = if pick {
            let c = Scalar::from_int(scale);
            MultilinearTemplate::new(4, kernel.basis[0].coeffs().iter().map(|x| x * &c).collect()).unwrap()
        } else {
            MultilinearTemplate::new(4, coeffs.iter().map(|&x| Scalar::from_int(x)).collect()).unwrap()
        };
        let stacked = Matrix::from_rows(vec![kernel.basis[0].coeffs().to_vec(), t.coeffs().to_vec()]);
        let in_kernel = rank(&stacked) <= 1;
        let v = evaluate_identity(&t, &Shape::Plain, &IdentityTarget::Matrices(&m), Mode::Exhaustive { budget: None }).unwrap();
        prop_assert_eq!(v.holds(), in_kernel);
    }

    /// Reported counterexamples evaluate to a nonzero matrix.
    #[test]
    fn counterexamples_are_sound(coeffs in prop::collection::vec(-2i64..=2, 6)) {
        let m = MatrixTarget::full(2);
        let t = MultilinearTemplate::new(3, coeffs.iter().map(|&x| Scalar::from_int(x)).collect()).unwrap();
        let v = evaluate_identity(&t, &Shape::Plain, &IdentityTarget::Matrices(&m), Mode::Exhaustive { budget: None }).unwrap();
        match v.status {
            IdentityStatus::Fails { counterexample, .. } => {
                let args: Vec<Matrix<Scalar>> = counterexample
                    .iter()
                    .map(|label| {
                        let b = label.as_bytes();
                        Matrix::unit(2, (b[1] - b'1') as usize, (b[2] - b'1') as usize)
                    })
                    .collect();
                let value = substitute_multilinear(&t, &Shape::Plain, &args, &MatrixAlgebra { n: 2 }).unwrap();
                prop_assert!(!value.is_zero());
            }
            IdentityStatus::HoldsExact => prop_assert!(coeffs.iter().all(|&c| c == 0)),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

#[test]
fn grouplike_letters_round_trip() {
    let ctx = cyc(4);
    let p = build_preset(ctx, &PresetSpec::Fq { q: ctx.zeta().unwrap() }).unwrap();
    let g = p.normalize_letters(&[Letter::G(GammaElem(vec![2])), Letter::G(GammaElem(vec![-2]))]);
    assert_eq!(g, p.one());
}
