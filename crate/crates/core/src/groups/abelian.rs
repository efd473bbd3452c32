use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::integer_kernel;
use crate::linalg::smith_normal_form;
use crate::scalars::{FieldCtx, Scalar};

/// `Z^r × Z/m_1 × ⋯ × Z/m_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// Element of an [`FgAbelianGroup`]: free coordinates first, then residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GammaElem(pub Vec<i64>);

impl GammaElem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(m) = torsion.iter().find(|&&m| m < 2) {
            return Err(Error::invalid_parameter(format!(
                "torsion orders must be at least 2, got {m}"
            )));
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        FgAbelianGroup::new(0, vec![m])
    }

    pub fn trivial() -> Self {
        FgAbelianGroup::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of generators (free and torsion).
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn identity(&self) -> GammaElem {
        GammaElem(vec![0; self.ngens()])
    }

    /// The `i`-th generator.
    pub fn generator(&self, i: usize) -> GammaElem {
        let mut v = vec![0; self.ngens()];
        v[i] = 1;
        self.normalize(GammaElem(v))
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<GammaElem> {
        if coords.len() != self.ngens() {
            return Err(Error::Arity {
                expected: self.ngens(),
                got: coords.len(),
            });
        }
        Ok(self.normalize(GammaElem(coords)))
    }

    fn normalize(&self, mut e: GammaElem) -> GammaElem {
        for (k, m) in self.torsion.iter().enumerate() {
            let c = &mut e.0[self.free_rank + k];
            *c = c.rem_euclid(*m as i64);
        }
        e
    }

    pub fn op(&self, a: &GammaElem, b: &GammaElem) -> GammaElem {
        let v = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.normalize(GammaElem(v))
    }

    pub fn inverse(&self, a: &GammaElem) -> GammaElem {
        self.normalize(GammaElem(a.0.iter().map(|x| -x).collect()))
    }

    pub fn pow(&self, a: &GammaElem, k: i64) -> GammaElem {
        self.normalize(GammaElem(a.0.iter().map(|x| x * k).collect()))
    }

    pub fn is_identity(&self, a: &GammaElem) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<GammaElem>> {
        self.order()?;
        let mut out = vec![Vec::new()];
        for &m in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..m as i64).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(GammaElem).collect())
    }

    pub fn format_elem(&self, e: &GammaElem, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &c) in e.0.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], c)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = std::iter::repeat_n("Z".to_string(), self.free_rank).collect();
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A character `Γ → F^×`, stored by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    ctx: FieldCtx,
    images: Vec<Scalar>,
}

impl Character {
    /// Validates that images are nonzero field elements and that the image of the
    /// `k`-th torsion generator has order dividing `m_k`.
    pub fn new(ctx: FieldCtx, gamma: &FgAbelianGroup, images: Vec<Scalar>) -> Result<Self> {
        if images.len() != gamma.ngens() {
            return Err(Error::Arity {
                expected: gamma.ngens(),
                got: images.len(),
            });
        }
        for (i, s) in images.iter().enumerate() {
            if s.is_zero() {
                return Err(Error::invalid_input(format!("character value {i} is zero")));
            }
            if !ctx.contains(s) {
                return Err(Error::FieldMismatch(format!("{s} is not in {ctx}")));
            }
        }
        for (k, &m) in gamma.torsion().iter().enumerate() {
            let s = &images[gamma.free_rank() + k];
            if !s.pow(m as i64).is_one() {
                return Err(Error::invalid_input(format!(
                    "image {s} of a generator of order {m} does not have order dividing {m}"
                )));
            }
        }
        Ok(Character { ctx, images })
    }

    /// The trivial character `ε`.
    pub fn trivial(ctx: FieldCtx, gamma: &FgAbelianGroup) -> Self {
        Character {
            ctx,
            images: vec![Scalar::one(); gamma.ngens()],
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn images(&self) -> &[Scalar] {
        &self.images
    }

    pub fn eval(&self, g: &GammaElem) -> Scalar {
        let mut acc = Scalar::one();
        for (s, &e) in self.images.iter().zip(&g.0) {
            if e != 0 {
                acc *= &s.pow(e);
            }
        }
        acc
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            ctx: self.ctx,
            images: self.images.iter().zip(&other.images).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn inverse(&self) -> Character {
        Character {
            ctx: self.ctx,
            images: self.images.iter().map(|a| a.inv()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|s| s.is_one())
    }
}

/// Order of a character: the lcm of the orders of its generator images.
pub fn character_order(chi: &Character) -> Option<u64> {
    let mut acc = 1u64;
    for s in &chi.images {
        let o = chi.ctx.root_of_unity_order(s).ok()??;
        acc = acc.lcm(&o);
    }
    Some(acc)
}

/// Kernel `⋂ Ker(χ_i)` of a family of finite-order characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelInfo {
    pub generators: Vec<GammaElem>,
    pub index: u64,
}

/// Computes `Γ_χ = ⋂ Ker(χ_i)` via the Smith normal form of the exponent matrix.
///
/// With `M` the lcm of the character orders, every value is a power of a fixed
/// primitive `M`-th root of unity `ω`. Writing `χ_i(γ_j) = ω^{E_ij}`, the kernel
/// lifted to `Z^{r+k}` is the projection of the integer kernel of `[E | M·I]`,
/// and `[Γ : Γ_χ] = M^θ / ∏ d_i` for the invariant factors `d_i` of `[E | M·I]`.
pub fn character_kernel(chars: &[Character], gamma: &FgAbelianGroup) -> Result<KernelInfo> {
    let n = gamma.ngens();
    let theta = chars.len();
    let mut m = 1u64;
    for (i, chi) in chars.iter().enumerate() {
        if chi.images.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: chi.images.len(),
            });
        }
        match character_order(chi) {
            Some(o) => m = m.lcm(&o),
            None => {
                return Err(Error::Unsupported(format!(
                    "character {i} has infinite order; its kernel is not of finite index"
                )))
            }
        }
    }
    if theta == 0 || m == 1 {
        return Ok(KernelInfo {
            generators: (0..n).map(|i| gamma.generator(i)).collect(),
            index: 1,
        });
    }
    let ctx = chars[0].ctx;
    let t = ctx.torsion_exponent();
    let step = t / m;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(theta);
    for (i, chi) in chars.iter().enumerate() {
        let mut row = Vec::with_capacity(n + theta);
        for s in &chi.images {
            let log = ctx.torsion_log(s).ok_or_else(|| {
                Error::invalid_input(format!("value {s} is not a root of unity in {ctx}"))
            })?;
            debug_assert_eq!(log % step, 0);
            row.push(BigInt::from(log / step));
        }
        for k in 0..theta {
            row.push(if k == i { BigInt::from(m) } else { BigInt::zero() });
        }
        rows.push(row);
    }
    let smith = smith_normal_form(&rows);
    let prod: BigInt = smith.diagonal.iter().product();
    let image = BigInt::from(m).pow(theta as u32) / prod;
    let index = image
        .to_u64()
        .ok_or_else(|| Error::Unsupported("kernel index exceeds 64 bits".into()))?;
    let mut generators: Vec<GammaElem> = Vec::new();
    for v in integer_kernel(&rows, n + theta) {
        let coords: Option<Vec<i64>> = v[..n].iter().map(|x| x.to_i64()).collect();
        let coords = coords.ok_or_else(|| Error::Unsupported("kernel generator overflow".into()))?;
        let g = gamma.normalize(GammaElem(coords));
        if !gamma.is_identity(&g) && !generators.contains(&g) {
            generators.push(g);
        }
    }
    Ok(KernelInfo { generators, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let k = FieldCtx::cyclotomic(12).unwrap();
        let g = FgAbelianGroup::free(2);
        let chi = Character::new(k, &g, vec![k.zeta_pow(3).unwrap(), k.zeta_pow(2).unwrap()]).unwrap();
        assert_eq!(character_order(&chi), Some(12));
        let f = FieldCtx::rational_function();
        let z = FgAbelianGroup::free(1);
        let chi = Character::new(f, &z, vec![f.q().unwrap()]).unwrap();
        assert_eq!(character_order(&chi), None);
        assert!(matches!(character_kernel(&[chi], &z), Err(Error::Unsupported(_))));
    }

    #[test]
    fn kernel_of_z_squared() {
        let k = FieldCtx::rational();
        let g = FgAbelianGroup::free(2);
        let m1 = Scalar::from_int(-1);
        let c1 = Character::new(k, &g, vec![m1.clone(), Scalar::one()]).unwrap();
        let c2 = Character::new(k, &g, vec![Scalar::one(), m1]).unwrap();
        let info = character_kernel(&[c1, c2], &g).unwrap();
        assert_eq!(info.index, 4);
        assert_eq!(info.generators.len(), 2);
    }

    #[test]
    fn rejects_bad_torsion_image() {
        let k = FieldCtx::cyclotomic(4).unwrap();
        let g = FgAbelianGroup::cyclic(2).unwrap();
        assert!(Character::new(k, &g, vec![k.zeta().unwrap()]).is_err());
    }
}
