//! Dense complex linear algebra on small matrices (ambient ≤ ~70):
//! Householder QR with column pivoting for ranges, nullspaces and rank
//! decisions, and a cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Jacobi is used instead of a generic SVD because the spectra here are
//! strongly clustered (projectors, near-projectors) and subspace accuracy
//! at the 1e-12 level is required across cluster boundaries.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Householder QR with column pivoting: M·P = Q·R with Q square unitary.
/// Returns (Q, R, permutation), where `perm[k]` is the original index of
/// the k-th pivoted column.
pub fn qr_col_pivot(
    m: &DMatrix<Complex64>,
) -> (DMatrix<Complex64>, DMatrix<Complex64>, Vec<usize>) {
    let nr = m.nrows();
    let nc = m.ncols();
    let mut r = m.clone();
    let mut q = DMatrix::<Complex64>::identity(nr, nr);
    let mut perm: Vec<usize> = (0..nc).collect();
    let steps = nr.min(nc);
    for k in 0..steps {
        // pivot: remaining column with the largest norm below row k
        let (best, best_norm) = (k..nc)
            .map(|c| {
                let col_norm: f64 = (k..nr).map(|rr| r[(rr, c)].norm_sqr()).sum();
                (c, col_norm)
            })
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if best_norm == 0.0 {
            break;
        }
        if best != k {
            r.swap_columns(k, best);
            perm.swap(k, best);
        }
        // Householder vector for column k, rows k..
        let x0 = r[(k, k)];
        let xnorm = best_norm.sqrt();
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v: Vec<Complex64> = (k..nr).map(|rr| r[(rr, k)]).collect();
        v[0] += phase * xnorm;
        let vnorm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // R ← H R on rows k.., columns k..
        for c in k..nc {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * r[(k + i, c)]).sum();
            let f = dot * beta;
            for i in 0..v.len() {
                let sub = f * v[i];
                r[(k + i, c)] -= sub;
            }
        }
        // Q ← Q H (accumulate)
        for row in 0..nr {
            let dot: Complex64 = (0..v.len()).map(|i| q[(row, k + i)] * v[i]).sum();
            let f = dot * beta;
            for i in 0..v.len() {
                let sub = f * v[i].conj();
                q[(row, k + i)] -= sub;
            }
        }
    }
    (q, r, perm)
}

/// Numerical rank from the pivoted R diagonal at `rank_tol` relative to
/// the leading entry.
fn rank_from_r(r: &DMatrix<Complex64>, rank_tol: f64) -> usize {
    let steps = r.nrows().min(r.ncols());
    if steps == 0 {
        return 0;
    }
    let lead = r[(0, 0)].norm();
    if lead == 0.0 {
        return 0;
    }
    (0..steps)
        .take_while(|&k| r[(k, k)].norm() > rank_tol * lead)
        .count()
}

/// Orthonormal basis of the column span, rank cut at `rank_tol` relative
/// to the largest pivot.
pub fn column_space(m: &DMatrix<Complex64>, rank_tol: f64) -> DMatrix<Complex64> {
    if m.ncols() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let (q, r, _) = qr_col_pivot(m);
    let rank = rank_from_r(&r, rank_tol);
    q.columns(0, rank).into_owned()
}

/// Orthonormal basis of the nullspace {x : Mx = 0}: the orthogonal
/// complement of range(M^H), from the full Q of a pivoted QR of M^H.
pub fn nullspace(m: &DMatrix<Complex64>, rank_tol: f64) -> DMatrix<Complex64> {
    let n = m.ncols();
    if m.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let mh = m.adjoint();
    let (q, r, _) = qr_col_pivot(&mh);
    let rank = rank_from_r(&r, rank_tol);
    q.columns(rank, n - rank).into_owned()
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns (eigenvalues descending, eigenvectors as matching columns).
/// The input is Hermitianized as ½(M + M^H) first.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let mut a = (m + m.adjoint()).scale(0.5);
    let mut v = DMatrix::<Complex64>::identity(n, n);
    let scale = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 || n == 0 {
        return (vec![0.0; n], v);
    }
    let tol = f64::EPSILON * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                let b = beta.norm();
                if b <= tol * 1e-3 {
                    continue;
                }
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let phase = beta / b;
                // stable small-angle Jacobi rotation annihilating a[(p,q)]
                let tau = (alpha - gamma) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U[(p,p)] = c, U[(p,q)] = -s·phase, U[(q,p)] = s·conj(phase), U[(q,q)] = c
                let upq = -phase * s;
                let uqp = phase.conj() * s;
                // A ← A·U (columns p, q)
                for rr in 0..n {
                    let ap = a[(rr, p)];
                    let aq = a[(rr, q)];
                    a[(rr, p)] = ap * c + aq * uqp;
                    a[(rr, q)] = ap * upq + aq * c;
                }
                // A ← U^H·A (rows p, q)
                for cc in 0..n {
                    let ap = a[(p, cc)];
                    let aq = a[(q, cc)];
                    a[(p, cc)] = ap * c + aq * uqp.conj();
                    a[(q, cc)] = ap * upq.conj() + aq * c;
                }
                // exact zeros on the annihilated pair; diagonals stay real
                a[(p, q)] = Complex64::default();
                a[(q, p)] = Complex64::default();
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                // V ← V·U
                for rr in 0..n {
                    let vp = v[(rr, p)];
                    let vq = v[(rr, q)];
                    v[(rr, p)] = vp * c + vq * uqp;
                    v[(rr, q)] = vp * upq + vq * c;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|j| (a[(j, j)].re, j)).collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let vals: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (out_j, &(_, j)) in pairs.iter().enumerate() {
        vecs.set_column(out_j, &v.column(j));
    }
    (vals, vecs)
}

/// Spectral norm (largest |eigenvalue|) of a Hermitian matrix via Jacobi.
pub fn hermitian_spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    let (vals, _) = hermitian_eigen(m);
    vals.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Largest singular value via the Gram matrix (adequate when full
/// precision is not required).
pub fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let (vals, _) = hermitian_eigen(&gram);
    vals.first().map(|l| l.max(0.0).sqrt()).unwrap_or(0.0)
}

/// Hermitian projector F·F^H onto the span of an orthonormal frame.
pub fn projector(frame: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    frame * frame.adjoint()
}

/// Reduced row echelon form over a fixed column order, in place.
///
/// Columns are visited in the order given by `col_order`; within a column
/// the row of largest modulus is chosen as pivot. Entries below
/// `pivot_tol` (relative to the largest entry of the input) are treated
/// as zero. Returns, per pivot, `(row, column)` in elimination order.
pub fn rref(
    m: &mut DMatrix<Complex64>,
    col_order: &[usize],
    pivot_tol: f64,
) -> Vec<(usize, usize)> {
    let nrows = m.nrows();
    let scale = m.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let thresh = pivot_tol * scale;
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for &col in col_order {
        if next_row >= nrows {
            break;
        }
        let (best_row, best_val) = (next_row..nrows)
            .map(|r| (r, m[(r, col)].norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if best_val <= thresh {
            continue;
        }
        m.swap_rows(next_row, best_row);
        let pivot = m[(next_row, col)];
        let inv = Complex64::new(1.0, 0.0) / pivot;
        for c in 0..m.ncols() {
            m[(next_row, c)] *= inv;
        }
        m[(next_row, col)] = Complex64::new(1.0, 0.0);
        for r in 0..nrows {
            if r != next_row {
                let factor = m[(r, col)];
                if factor.norm() > 0.0 {
                    for c in 0..m.ncols() {
                        let sub = factor * m[(next_row, c)];
                        m[(r, c)] -= sub;
                    }
                    m[(r, col)] = Complex64::new(0.0, 0.0);
                }
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    pivots
}
