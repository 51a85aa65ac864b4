//! Coideals, quotient coalgebras, and the largest stable coideal.
//!
//! A subspace `W` is a coideal when `ε(W) = 0` and `Δ(W) ⊆ W⊗C + C⊗W`.  The
//! wedge condition is tested through the quotient: with `π : C → C/W`, the
//! subspace condition is exactly `(π ⊗ π)Δ(W) = 0`.

use exactnum::{Matrix, Scalar};

use crate::{Coalgebra, CoalgError};

/// Row-reduce a list of spanning vectors to a canonical basis (nonzero rows
/// of the reduced row echelon form).
pub fn subspace_rref(rows: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return Vec::new();
    }
    assert!(rows.iter().all(|r| r.len() == dim), "row length mismatch");
    let m = Matrix::from_rows(rows.to_vec());
    let (red, pivots) = m.rref();
    (0..pivots.len())
        .map(|r| (0..dim).map(|c| red.get(r, c).clone()).collect())
        .collect()
}

/// Quotient data for `C / span(rows)`: the projection `π`, a section `σ`
/// with `π∘σ = id`, and the original indices of the surviving basis lines.
fn quotient_maps(dim: usize, w_rows: &[Vec<Scalar>]) -> (Matrix, Matrix, Vec<usize>) {
    let basis = subspace_rref(w_rows, dim);
    let mut pivots = Vec::new();
    for row in &basis {
        let p = (0..dim)
            .find(|&c| !row[c].is_zero())
            .expect("rref rows are nonzero");
        pivots.push(p);
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let dq = free.len();
    let mut pi = Matrix::zero(dq, dim);
    for (t, &f) in free.iter().enumerate() {
        pi.set(t, f, Scalar::one());
    }
    for (row, &p) in pivots.iter().enumerate() {
        for (t, &f) in free.iter().enumerate() {
            pi.set(t, p, -&basis[row][f]);
        }
    }
    let mut sigma = Matrix::zero(dim, dq);
    for (t, &f) in free.iter().enumerate() {
        sigma.set(f, t, Scalar::one());
    }
    (pi, sigma, free)
}

/// The image of `(π ⊗ π)Δ(w)` as a flat coordinate vector of length
/// `dq · dq`.
fn wedge_image(c: &Coalgebra, pi: &Matrix, w: &[Scalar]) -> Vec<Scalar> {
    let dq = pi.rows();
    let mut out = vec![Scalar::zero(); dq * dq];
    for ((j, k), a) in c.delta_apply(w) {
        for u in 0..dq {
            let pj = pi.get(u, j);
            if pj.is_zero() {
                continue;
            }
            for v in 0..dq {
                let pk = pi.get(v, k);
                if pk.is_zero() {
                    continue;
                }
                out[u * dq + v] = &out[u * dq + v] + &(&(pj * pk) * &a);
            }
        }
    }
    out
}

/// The largest subspace that lies inside the kernel of every constraint
/// matrix (and of the counit), is carried into itself by every stabilizer
/// map, and is a coideal.  Returns a reduced row basis, possibly empty.
///
/// Computed by fixed-point refinement: start from the joint kernel and
/// repeatedly cut by the wedge condition `(π ⊗ π)Δ(W) = 0` and by
/// `π(T(W)) = 0` for each stabilizer `T`, until the dimension stabilizes.
pub fn max_stable_coideal(
    c: &Coalgebra,
    constraints: &[Matrix],
    stabilizers: &[Matrix],
) -> Vec<Vec<Scalar>> {
    let dim = c.dim();
    let mut stacked: Vec<Vec<Scalar>> = vec![c.counit_functional()];
    for m in constraints {
        assert_eq!(m.cols(), dim, "constraint width mismatch");
        for r in 0..m.rows() {
            stacked.push((0..dim).map(|j| m.get(r, j).clone()).collect());
        }
    }
    let m0 = Matrix::from_rows(stacked);
    let mut basis: Vec<Vec<Scalar>> = m0.kernel();
    basis = subspace_rref(&basis, dim);

    loop {
        let r = basis.len();
        if r == 0 {
            return basis;
        }
        let (pi, _, _) = quotient_maps(dim, &basis);
        let dq = pi.rows();
        // One column per current basis vector; rows stack the wedge image
        // and the quotient image under each stabilizer.
        let images: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|w| {
                let mut col = wedge_image(c, &pi, w);
                for t in stabilizers {
                    assert_eq!(t.cols(), dim, "stabilizer shape mismatch");
                    col.extend(pi.mul_vec(&t.mul_vec(w)));
                }
                col
            })
            .collect();
        let n_rows = dq * dq + stabilizers.len() * dq;
        let m = Matrix::from_fn(n_rows, r, |row, col| images[col][row].clone());
        let coords = m.kernel();
        if coords.len() == r {
            return basis;
        }
        let mut next: Vec<Vec<Scalar>> = Vec::new();
        for x in coords {
            let mut v = vec![Scalar::zero(); dim];
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (t, b) in v.iter_mut().zip(&basis[i]) {
                    *t = &*t + &(xi * b);
                }
            }
            next.push(v);
        }
        basis = subspace_rref(&next, dim);
    }
}

/// Quotient a coalgebra by a coideal.
///
/// Returns the quotient coalgebra together with the projection `π` and a
/// linear section `σ` (satisfying `π∘σ = id`).  Fails if the subspace is not
/// a coideal.
pub fn quotient_coalgebra(
    c: &Coalgebra,
    w_rows: &[Vec<Scalar>],
) -> Result<(Coalgebra, Matrix, Matrix), CoalgError> {
    let dim = c.dim();
    let basis = subspace_rref(w_rows, dim);
    let (pi, sigma, free) = quotient_maps(dim, &basis);
    for (idx, w) in basis.iter().enumerate() {
        if !c.counit_apply(w).is_zero() {
            return Err(CoalgError::NotCoideal(format!(
                "counit does not vanish on generator {idx}"
            )));
        }
        if wedge_image(c, &pi, w).iter().any(|v| !v.is_zero()) {
            return Err(CoalgError::NotCoideal(format!(
                "coproduct of generator {idx} does not land in W⊗C + C⊗W"
            )));
        }
    }
    let dq = free.len();
    let mut delta = Vec::with_capacity(dq);
    let mut counit = Vec::with_capacity(dq);
    let mut labels = Vec::with_capacity(dq);
    for &f in &free {
        delta.push(wedge_like_delta(c, &pi, f));
        counit.push(c.counit_of(f).clone());
        labels.push(c.label(f));
    }
    let quo = Coalgebra::new(dq, delta, counit, Some(labels))?;
    quo.validate()?;
    Ok((quo, pi, sigma))
}

/// `(π ⊗ π)Δ(e_f)` as sparse 2-tensor structure constants in the quotient.
fn wedge_like_delta(
    c: &Coalgebra,
    pi: &Matrix,
    f: usize,
) -> Vec<(usize, usize, Scalar)> {
    let dq = pi.rows();
    let mut out = Vec::new();
    for (j, k, a) in c.delta_of(f) {
        for u in 0..dq {
            let pj = pi.get(u, *j);
            if pj.is_zero() {
                continue;
            }
            for v in 0..dq {
                let pk = pi.get(v, *k);
                if pk.is_zero() {
                    continue;
                }
                out.push((u, v, &(pj * pk) * a));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counit_kernel_is_the_largest_coideal_of_comatrix() {
        let c = Coalgebra::comatrix(2);
        let w = max_stable_coideal(&c, &[], &[]);
        assert_eq!(w.len(), 3);
        // Quotient is one-dimensional and group-like.
        let (quo, pi, sigma) = quotient_coalgebra(&c, &w).unwrap();
        assert_eq!(quo.dim(), 1);
        assert_eq!(quo.delta_of(0), &[(0, 0, Scalar::one())]);
        assert!((&pi * &sigma).is_identity());
    }

    #[test]
    fn refinement_with_constraints_and_stabilizers() {
        let c = Coalgebra::comatrix(2);
        // Constrain away e^1_2 and demand stability under the transpose
        // swap e^1_2 ↔ e^2_1; the wedge condition then empties the space.
        let mut f12 = Matrix::zero(1, 4);
        f12.set(0, 1, Scalar::one());
        let mut swap = Matrix::identity(4);
        swap.set(1, 1, Scalar::zero());
        swap.set(2, 2, Scalar::zero());
        swap.set(1, 2, Scalar::one());
        swap.set(2, 1, Scalar::one());
        let w = max_stable_coideal(&c, &[f12], &[swap]);
        assert!(w.is_empty());
    }

    #[test]
    fn quotient_rejects_non_coideals() {
        let c = Coalgebra::comatrix(2);
        // span{e^1_1} has ε = 1 ≠ 0.
        let w = vec![c.basis_element(0)];
        assert!(quotient_coalgebra(&c, &w).is_err());
        // span{e^1_2} fails the wedge condition? Δ(e^1_2) = e^1_1⊗e^1_2 +
        // e^1_2⊗e^2_2 actually lies in C⊗W + W⊗C, so this one *is* a
        // coideal; use it to confirm the positive path instead.
        let w = vec![c.basis_element(1)];
        let (quo, _, _) = quotient_coalgebra(&c, &w).unwrap();
        assert_eq!(quo.dim(), 3);
        quo.validate().unwrap();
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let c = Coalgebra::comatrix(2);
        let (quo, pi, sigma) = quotient_coalgebra(&c, &[]).unwrap();
        assert_eq!(quo.dim(), 4);
        assert!(pi.is_identity());
        assert!(sigma.is_identity());
        assert_eq!(quo.delta_of(1), c.delta_of(1));
    }
}
