//! Smith normal form over a principal ideal domain.

use super::matrix::Matrix;
use super::ring::{Integers, Pid};
use crate::algebra::IntMatrix;

/// `U * M * V = D` with `D` diagonal and `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub d: Matrix<E>,
    pub u: Matrix<E>,
    pub u_inv: Matrix<E>,
    pub v: Matrix<E>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl<E: Clone> SmithForm<E> {
    pub fn diagonal(&self) -> Vec<E> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Integer Smith normal form.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm<num_bigint::BigInt> {
    smith_normal_form_in(&Integers, m)
}

pub fn smith_normal_form_in<P: Pid>(pid: &P, m: &Matrix<P::Elem>) -> SmithForm<P::Elem> {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = Matrix::identity_in(pid, rows);
    let mut u_inv = Matrix::identity_in(pid, rows);
    let mut v = Matrix::identity_in(pid, cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero entry of the trailing block.
        let mut best: Option<(u64, usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let s = pid.size(d.get(r, c));
                if s > 0 && best.is_none_or(|(bs, _, _)| s < bs) {
                    best = Some((s, r, c));
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        swap_rows(&mut d, &mut u, &mut u_inv, t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            // Reduce column t and row t modulo the pivot; nonzero remainders
            // are smaller than it and one of them becomes the next pivot.
            let a = d.get(t, t).clone();
            for r in t + 1..rows {
                if pid.is_zero(d.get(r, t)) {
                    continue;
                }
                let q = pid.quotient(d.get(r, t), &a);
                if !pid.is_zero(&q) {
                    // row_r -= q * row_t; inverse: col_t of U^-1 += q * col_r
                    row_addmul(pid, &mut d, r, t, &pid.neg(&q));
                    row_addmul(pid, &mut u, r, t, &pid.neg(&q));
                    col_addmul(pid, &mut u_inv, t, r, &q);
                }
            }
            for c in t + 1..cols {
                if pid.is_zero(d.get(t, c)) {
                    continue;
                }
                let q = pid.quotient(d.get(t, c), &a);
                if !pid.is_zero(&q) {
                    col_addmul(pid, &mut d, c, t, &pid.neg(&q));
                    col_addmul(pid, &mut v, c, t, &pid.neg(&q));
                }
            }
            let mut next: Option<(u64, bool, usize)> = None;
            for r in t + 1..rows {
                let s = pid.size(d.get(r, t));
                if s > 0 && next.is_none_or(|(bs, _, _)| s < bs) {
                    next = Some((s, true, r));
                }
            }
            for c in t + 1..cols {
                let s = pid.size(d.get(t, c));
                if s > 0 && next.is_none_or(|(bs, _, _)| s < bs) {
                    next = Some((s, false, c));
                }
            }
            match next {
                Some((_, true, r)) => {
                    swap_rows(&mut d, &mut u, &mut u_inv, t, r);
                    continue;
                }
                Some((_, false, c)) => {
                    d.swap_cols(t, c);
                    v.swap_cols(t, c);
                    continue;
                }
                None => {}
            }
            // Divisibility of the trailing block by the pivot.
            let a = d.get(t, t).clone();
            let mut offender = None;
            'outer: for r in t + 1..rows {
                for c in t + 1..cols {
                    let e = d.get(r, c);
                    if !pid.is_zero(e) && pid.div_exact(e, &a).is_none() {
                        offender = Some(r);
                        break 'outer;
                    }
                }
            }
            match offender {
                Some(r) => {
                    // row_t += row_r, then repeat elimination.
                    row_addmul(pid, &mut d, t, r, &pid.one());
                    row_addmul(pid, &mut u, t, r, &pid.one());
                    col_addmul(pid, &mut u_inv, r, t, &pid.neg(&pid.one()));
                }
                None => break,
            }
        }
        // Normalize the pivot to its canonical associate.
        let a = d.get(t, t).clone();
        let na = pid.normalize_associate(&a);
        if na != a {
            let unit = pid.div_exact(&na, &a).expect("associate");
            let unit_inv = pid.div_exact(&a, &na).expect("associate");
            row_scale(pid, &mut d, t, &unit);
            row_scale(pid, &mut u, t, &unit);
            col_scale(pid, &mut u_inv, t, &unit_inv);
        }
        t += 1;
    }
    SmithForm { d, u, u_inv, v, rank: t }
}

fn swap_rows<E: Clone>(d: &mut Matrix<E>, u: &mut Matrix<E>, u_inv: &mut Matrix<E>, a: usize, b: usize) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
    u_inv.swap_cols(a, b);
}

/// row_dst += f * row_src
fn row_addmul<P: Pid>(pid: &P, m: &mut Matrix<P::Elem>, dst: usize, src: usize, f: &P::Elem) {
    for c in 0..m.cols() {
        let s = m.get(src, c);
        if pid.is_zero(s) {
            continue;
        }
        let v = pid.add(m.get(dst, c), &pid.mul(f, s));
        m.set(dst, c, v);
    }
}

/// col_dst += f * col_src
fn col_addmul<P: Pid>(pid: &P, m: &mut Matrix<P::Elem>, dst: usize, src: usize, f: &P::Elem) {
    for r in 0..m.rows() {
        let s = m.get(r, src);
        if pid.is_zero(s) {
            continue;
        }
        let v = pid.add(m.get(r, dst), &pid.mul(f, s));
        m.set(r, dst, v);
    }
}

fn row_scale<P: Pid>(pid: &P, m: &mut Matrix<P::Elem>, r: usize, f: &P::Elem) {
    for c in 0..m.cols() {
        let v = pid.mul(f, m.get(r, c));
        m.set(r, c, v);
    }
}

fn col_scale<P: Pid>(pid: &P, m: &mut Matrix<P::Elem>, c: usize, f: &P::Elem) {
    for r in 0..m.rows() {
        let v = pid.mul(f, m.get(r, c));
        m.set(r, c, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn check(m: &IntMatrix) -> SmithForm<BigInt> {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
    }

    #[test]
    fn two_by_two_invariant_factors() {
        // gcd of entries 2, |det| 8: factors 2 and 4.
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(s.u.determinant().magnitude(), &1u32.into());
        assert_eq!(s.v.determinant().magnitude(), &1u32.into());
    }

    #[test]
    fn coprime_entries_need_gcd_steps() {
        let s = check(&IntMatrix::from_i64(2, 3, &[6, 10, 15, 4, 7, 9]));
        assert_eq!(s.diagonal()[0], BigInt::from(1));
    }
}
