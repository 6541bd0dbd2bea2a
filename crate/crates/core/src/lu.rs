//! Dense LU factorisation over [`Scalar`] values.

use rug::Float;

use crate::precision::Scalar;

/// Determinant of the row-major `n × n` matrix `a` by LU decomposition with
/// partial pivoting (largest modulus in the column). The result is the
/// signed product of the pivots.
pub fn lu_determinant<S: Scalar>(mut a: Vec<S>, n: usize) -> S {
    assert_eq!(a.len(), n * n, "matrix storage does not match n = {n}");
    let bits = a.first().map_or(64, Scalar::prec);
    let mut det = S::from_real(Float::with_val(bits, 1u32));
    if n == 0 {
        return det;
    }
    let mut negate = false;
    for c in 0..n {
        let mut pivot_row = c;
        let mut pivot_norm = a[c * n + c].norm_sqr();
        for r in c + 1..n {
            let norm = a[r * n + c].norm_sqr();
            if norm > pivot_norm {
                pivot_norm = norm;
                pivot_row = r;
            }
        }
        if pivot_norm.is_zero() {
            return S::from_real(Float::new(bits));
        }
        if pivot_row != c {
            for k in 0..n {
                a.swap(c * n + k, pivot_row * n + k);
            }
            negate = !negate;
        }
        det = det.mul_ref(&a[c * n + c]);
        let (head, tail) = a.split_at_mut((c + 1) * n);
        let pivot_slice = &head[c * n..];
        let pivot = &pivot_slice[c];
        for row in tail.chunks_mut(n) {
            if row[c].is_exact_zero() {
                continue;
            }
            let factor = row[c].div_ref(pivot);
            for k in c + 1..n {
                if !pivot_slice[k].is_exact_zero() {
                    row[k].sub_mul_assign(&factor, &pivot_slice[k]);
                }
            }
        }
    }
    if negate {
        det.neg_ref()
    } else {
        det
    }
}

/// Numerical rank by Gaussian elimination with complete pivoting: the
/// number of pivots whose modulus exceeds `threshold`. Also returns the
/// pivot moduli in elimination order.
pub fn numerical_rank<S: Scalar>(mut a: Vec<S>, rows: usize, cols: usize, threshold: &Float) -> (usize, Vec<Float>) {
    assert_eq!(a.len(), rows * cols);
    let mut pivots = Vec::new();
    let mut rank = 0;
    let steps = rows.min(cols);
    for step in 0..steps {
        let mut best = (step, step);
        let mut best_norm = a[step * cols + step].norm_sqr();
        for r in step..rows {
            for c in step..cols {
                let norm = a[r * cols + c].norm_sqr();
                if norm > best_norm {
                    best_norm = norm;
                    best = (r, c);
                }
            }
        }
        let modulus = best_norm.sqrt();
        let accepted = modulus > *threshold;
        pivots.push(modulus);
        if !accepted {
            break;
        }
        rank += 1;
        let (pr, pc) = best;
        if pr != step {
            for k in 0..cols {
                a.swap(step * cols + k, pr * cols + k);
            }
        }
        if pc != step {
            for r in 0..rows {
                a.swap(r * cols + step, r * cols + pc);
            }
        }
        let pivot_row: Vec<S> = a[step * cols..(step + 1) * cols].to_vec();
        for r in step + 1..rows {
            let lead = &a[r * cols + step];
            if lead.is_exact_zero() {
                continue;
            }
            let factor = lead.div_ref(&pivot_row[step]);
            for k in step..cols {
                a[r * cols + k].sub_mul_assign(&factor, &pivot_row[k]);
            }
        }
    }
    (rank, pivots)
}
