//! Dense exact linear algebra over a coefficient field.

use crate::coeff::Coeff;

pub type Matrix<C> = Vec<Vec<C>>;

/// Row echelon form in place; returns pivot columns.
pub fn row_reduce<C: Coeff>(m: &mut Matrix<C>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].inv().expect("coefficient ring is not a field");
        for c in col..ncols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let t = f.mul(&m[row][c]);
                    m[r][c] = m[r][c].sub(&t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<C: Coeff>(m: &Matrix<C>, ncols: usize) -> usize {
    let mut a = m.clone();
    row_reduce(&mut a, ncols).len()
}

/// Solves `m * x = b`; `None` if inconsistent. Free variables are set to zero.
pub fn solve<C: Coeff>(m: &Matrix<C>, ncols: usize, b: &[C], ctx: C::Ctx) -> Option<Vec<C>> {
    let mut aug: Matrix<C> = m
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let piv = row_reduce(&mut aug, ncols + 1);
    if piv.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![C::zero(ctx); ncols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel<C: Coeff>(m: &Matrix<C>, ncols: usize, ctx: C::Ctx) -> Vec<Vec<C>> {
    let mut a = m.clone();
    let piv = row_reduce(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![C::zero(ctx); ncols];
            v[f] = C::one(ctx);
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = a[r][f].neg();
            }
            v
        })
        .collect()
}

pub fn mat_mul<C: Coeff>(a: &Matrix<C>, b: &Matrix<C>, inner: usize, bcols: usize, ctx: C::Ctx) -> Matrix<C> {
    a.iter()
        .map(|row| {
            (0..bcols)
                .map(|j| {
                    let mut s = C::zero(ctx);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s = s.add(&row[k].mul(&b[k][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Fp;

    #[test]
    fn rank_and_kernel_over_f5() {
        let f = |v| Fp::new(5, v);
        let m = vec![vec![f(1), f(2), f(3)], vec![f(2), f(1), f(1)]];
        assert_eq!(rank(&m, 3), 2);
        let k = kernel(&m, 3, 5);
        assert_eq!(k.len(), 1);
        for row in &m {
            let s = row.iter().zip(&k[0]).fold(f(0), |a, (x, y)| a.add(&x.mul(y)));
            assert!(s.is_zero());
        }
    }
}
