//! Dense univariate integer polynomials, stored lowest degree first.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x + y);
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides every coefficient by `d`; the division must be exact.
pub fn div_exact_scalar(a: &[BigInt], d: &BigInt) -> ZPoly {
    a.iter()
        .map(|c| {
            debug_assert!((c % d).is_zero());
            c / d
        })
        .collect()
}

/// Reduces `a` modulo the monic polynomial `m`, in place.
pub fn rem_monic(a: &mut ZPoly, m: &[BigInt]) {
    let dm = m.len() - 1;
    debug_assert!(m[dm].is_one());
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top].clone();
        if !c.is_zero() {
            let shift = top - dm;
            for (i, mc) in m.iter().enumerate() {
                if !mc.is_zero() {
                    a[shift + i] -= &c * mc;
                }
            }
        }
        a.pop();
    }
    trim(a);
}

/// Exact quotient of `a` by the monic polynomial `m`; panics if the division leaves a remainder.
pub fn div_monic_exact(a: &[BigInt], m: &[BigInt]) -> ZPoly {
    let dm = m.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= dm {
        assert!(rem.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); rem.len() - dm];
    while rem.len() > dm {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        let shift = top - dm;
        for (i, mc) in m.iter().enumerate() {
            rem[shift + i] -= &c * mc;
        }
        q[shift] = c;
        rem.pop();
    }
    trim(&mut rem);
    assert!(rem.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

/// Pseudo-remainder: `lc(b)^k * a mod b` computed without fractions.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top].clone();
        let shift = top - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub fn primitive_part(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let mut p = div_exact_scalar(a, &c);
    if p.last().is_some_and(|l| l.is_negative()) {
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    p
}

/// Primitive gcd over `Z[x]` with positive leading coefficient (primitive PRS).
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    x
}

/// Exact division `a / b` over `Z[x]`; `b` must divide `a` in `Q[x]` with integral quotient.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut rem = a.to_vec();
    if rem.is_empty() {
        return Vec::new();
    }
    assert!(rem.len() > db, "inexact polynomial division");
    let mut q = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let top = rem.len() - 1;
        let (c, r) = rem[top].div_rem(lb);
        assert!(r.is_zero(), "inexact polynomial division");
        let shift = top - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        q[shift] = c;
        rem.pop();
    }
    trim(&mut rem);
    assert!(rem.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

pub fn monomial(deg: usize, c: BigInt) -> ZPoly {
    let mut p = vec![BigInt::zero(); deg + 1];
    p[deg] = c;
    trim(&mut p);
    p
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<ZPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<ZPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, as exact quotient of `x^n - 1` by `Φ_d` for the proper divisors `d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<ZPoly> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = monomial(n as usize, BigInt::one());
    p[0] = BigInt::from(-1);
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            p = div_monic_exact(&p, &phi_d);
        }
    }
    let p = Arc::new(p);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

pub fn to_string(p: &[BigInt], var: &str) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        let mut p: ZPoly = v.iter().map(|&c| BigInt::from(c)).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_polynomial(1), z(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), z(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), z(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), z(&[1, -1, 1]));
    }

    #[test]
    fn gcd_of_products() {
        let a = mul(&z(&[1, 1]), &z(&[-2, 0, 1]));
        let b = mul(&z(&[1, 1]), &z(&[3, 1]));
        assert_eq!(gcd(&a, &b), z(&[1, 1]));
        assert_eq!(gcd(&scale(&a, &BigInt::from(-6)), &b), z(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&z(&[2, 3]), &z(&[-1, 0, 5]));
        assert_eq!(div_exact(&a, &z(&[2, 3])), z(&[-1, 0, 5]));
    }
}
