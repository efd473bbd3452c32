use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub rank: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i -= f * row_j
    fn row_axpy(&mut self, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for k in 0..self.a[0].len() {
            let t = &self.a[j][k] * f;
            self.a[i][k] -= t;
        }
        for k in 0..self.u[0].len() {
            let t = &self.u[j][k] * f;
            self.u[i][k] -= t;
        }
    }

    /// col_i -= f * col_j
    fn col_axpy(&mut self, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let t = &row[j] * f;
            row[i] -= t;
        }
        for row in self.v.iter_mut() {
            let t = &row[j] * f;
            row[i] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a[i].iter_mut().for_each(|x| *x = -x.clone());
        self.u[i].iter_mut().for_each(|x| *x = -x.clone());
    }
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut w = Work {
        a: a.to_vec(),
        u: identity(m),
        v: identity(n),
    };
    if m == 0 || n == 0 {
        return Smith {
            diagonal: Vec::new(),
            u: w.u,
            v: w.v,
            rank: 0,
        };
    }
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !w.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in (t + 1)..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_axpy(i, t, &q);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in (t + 1)..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_axpy(j, t, &q);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility condition on the trailing block
            let piv = w.a[t][t].clone();
            let bad = ((t + 1)..m).find(|&i| ((t + 1)..n).any(|j| !(&w.a[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    w.row_axpy(t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..m.min(n)).map(|i| w.a[i][i].clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    Smith {
        diagonal,
        u: w.u,
        v: w.v,
        rank,
    }
}

/// A basis of the integer kernel `{x ∈ Z^n : A x = 0}`.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if a.is_empty() {
        return identity(n);
    }
    let s = smith_normal_form(a);
    (s.rank..n)
        .map(|j| (0..n).map(|i| s.v[i][j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = b[0].len();
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_reconstructs() {
        let a = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = z(&[&[1, 2, 3], &[4, 5, 6]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for v in k {
            for row in &a {
                let s: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn diag_two_two() {
        let s = smith_normal_form(&z(&[&[2, 0], &[0, 2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2)]);
    }
}
