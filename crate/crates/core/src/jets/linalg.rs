//! Small dense matrices over rational functions.

use crate::error::{Error, Result};
use crate::polyalg::{RatFunc, TableRef};

pub type RatMatrix = Vec<Vec<RatFunc>>;

fn minor(m: &[Vec<RatFunc>], row: usize, col: usize) -> RatMatrix {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != row)
        .map(|(_, rv)| rv.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row (intended for n ≤ 4).
pub fn det(m: &[Vec<RatFunc>]) -> RatFunc {
    let n = m.len();
    match n {
        0 => panic!("determinant of an empty matrix"),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = RatFunc::zero(m[0][0].table());
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let t = &m[0][c] * &det(&minor(m, 0, c));
                acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Inverse via the adjugate; `Degenerate` if the determinant vanishes
/// identically.
pub fn inverse(m: &[Vec<RatFunc>]) -> Result<RatMatrix> {
    let n = m.len();
    let d = det(m);
    if d.is_zero() {
        return Err(Error::Degenerate("matrix determinant vanishes identically".into()));
    }
    let dinv = d.recip()?;
    if n == 1 {
        return Ok(vec![vec![dinv]]);
    }
    let mut out = vec![Vec::with_capacity(n); n];
    for (i, row) in out.iter_mut().enumerate() {
        for j in 0..n {
            // (adj m)_{ij} = (-1)^{i+j} det(minor(j, i))
            let c = &det(&minor(m, j, i)) * &dinv;
            row.push(if (i + j) % 2 == 0 { c } else { -&c });
        }
    }
    Ok(out)
}

pub fn matmul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>]) -> RatMatrix {
    let t: &TableRef = a[0][0].table();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    (0..b.len()).fold(RatFunc::zero(t), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<RatFunc>]) -> bool {
    let one = RatFunc::one(m[0][0].table());
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.equals(&one) } else { x.is_zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_expression, VarTable};

    #[test]
    fn inverse_times_matrix_is_identity() {
        let t = VarTable::new(&["a", "b", "c"]).unwrap();
        let p = |s: &str| parse_expression(s, &t).unwrap();
        let m = vec![
            vec![p("a"), p("b"), p("1")],
            vec![p("c"), p("a*b"), p("0")],
            vec![p("1"), p("c"), p("a+c")],
        ];
        let inv = inverse(&m).unwrap();
        assert!(is_identity(&matmul(&m, &inv)));
        assert!(is_identity(&matmul(&inv, &m)));
        let sing = vec![vec![p("a"), p("b")], vec![p("2*a"), p("2*b")]];
        assert!(inverse(&sing).is_err());
    }
}
