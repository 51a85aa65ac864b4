//! Core quantum-coalgebra data types and convolution inverses.

use coalg::Coalgebra;
use exactnum::{Matrix, Scalar, SolveOutcome};

use crate::StructError;

/// A coalgebra with an invertible bilinear form and a pair of twist
/// automorphisms.  All maps are matrices in the carrier basis, columns
/// giving images of basis elements; `b[i][j] = b(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedQuantumCoalgebra {
    pub coalg: Coalgebra,
    pub b: Matrix,
    pub b_inv: Matrix,
    pub t_d: Matrix,
    pub t_u: Matrix,
    /// Whether the twist maps are genuine coalgebra automorphisms (rather
    /// than merely compatible with the form and counit).
    pub strict: bool,
}

/// A coalgebra with an invertible bilinear form and an antipode-like map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumCoalgebra {
    pub coalg: Coalgebra,
    pub b: Matrix,
    pub b_inv: Matrix,
    pub s: Matrix,
}

/// An oriented structure together with a distinguished invertible
/// functional `G` whose conjugation action realizes `T_d ∘ T_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistOqc {
    pub oqc: OrientedQuantumCoalgebra,
    pub g: Vec<Scalar>,
    pub g_inv: Vec<Scalar>,
}

impl OrientedQuantumCoalgebra {
    /// Carrier dimension.
    pub fn dim(&self) -> usize {
        self.coalg.dim()
    }
}

impl TwistOqc {
    /// Carrier dimension.
    pub fn dim(&self) -> usize {
        self.oqc.dim()
    }
}

/// Evaluate a bilinear form on coordinate vectors: `xᵀ · B · y`.
pub fn form_eval(b: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut total = Scalar::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            total = &total + &(&(xi * yj) * b.get(i, j));
        }
    }
    total
}

/// Whether `b_inv` is a two-sided convolution inverse of `b`:
/// `Σ b⁻¹(c₁,d₁)·b(c₂,d₂) = ε(c)ε(d) = Σ b(c₁,d₁)·b⁻¹(c₂,d₂)` on all basis
/// pairs.
pub(crate) fn conv_two_sided(c: &Coalgebra, b: &Matrix, b_inv: &Matrix) -> bool {
    let dim = c.dim();
    for i in 0..dim {
        for l in 0..dim {
            let expected = c.counit_of(i) * c.counit_of(l);
            let mut first = Scalar::zero();
            let mut second = Scalar::zero();
            for (j, p, a) in c.delta_of(i) {
                for (k, r, t) in c.delta_of(l) {
                    let w = a * t;
                    first = &first + &(&(&w * b_inv.get(*j, *k)) * b.get(*p, *r));
                    second = &second + &(&(&w * b.get(*j, *k)) * b_inv.get(*p, *r));
                }
            }
            if first != expected || second != expected {
                return false;
            }
        }
    }
    true
}

/// Compute the convolution inverse of a bilinear form on a coalgebra, i.e.
/// the form `b⁻¹` with `Σ b⁻¹(c₁,d₁)·b(c₂,d₂) = ε(c)ε(d)` and the same
/// identity with the factors exchanged.  Fails when no two-sided inverse
/// exists.
pub fn convolution_inverse(c: &Coalgebra, b: &Matrix) -> Result<Matrix, StructError> {
    let dim = c.dim();
    if b.rows() != dim || b.cols() != dim {
        return Err(StructError::Dimension(format!(
            "form is {}x{} on a dimension-{} carrier",
            b.rows(),
            b.cols(),
            dim
        )));
    }
    // Unknowns X[j·dim + k] = b⁻¹(e_j, e_k); one equation per basis pair.
    let mut m = Matrix::zero(dim * dim, dim * dim);
    let mut rhs = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for l in 0..dim {
            let row = i * dim + l;
            for (j, p, a) in c.delta_of(i) {
                for (k, r, t) in c.delta_of(l) {
                    let col = j * dim + k;
                    let add = &(a * t) * b.get(*p, *r);
                    let cur = m.get(row, col).clone();
                    m.set(row, col, &cur + &add);
                }
            }
            rhs.push(c.counit_of(i) * c.counit_of(l));
        }
    }
    let x = match m.solve(&rhs) {
        SolveOutcome::Unique(x) | SolveOutcome::NonUnique(x) => x,
        SolveOutcome::NoSolution => return Err(StructError::NotConvInvertible),
    };
    let b_inv = Matrix::from_fn(dim, dim, |j, k| x[j * dim + k].clone());
    if !conv_two_sided(c, b, &b_inv) {
        return Err(StructError::NotConvInvertible);
    }
    Ok(b_inv)
}

/// Compute the convolution inverse of a functional: `f⁻¹` with
/// `f⁻¹ * f = ε = f * f⁻¹` in the dual algebra.
pub fn functional_inverse(c: &Coalgebra, f: &[Scalar]) -> Result<Vec<Scalar>, StructError> {
    let dim = c.dim();
    // Σ f(c₁)·x(c₂) = ε(c): linear in the unknown coordinates x.
    let mut m = Matrix::zero(dim, dim);
    for i in 0..dim {
        for (j, k, a) in c.delta_of(i) {
            let add = a * &f[*j];
            let cur = m.get(i, *k).clone();
            m.set(i, *k, &cur + &add);
        }
    }
    let rhs = c.counit_functional();
    let x = match m.solve(&rhs) {
        SolveOutcome::Unique(x) | SolveOutcome::NonUnique(x) => x,
        SolveOutcome::NoSolution => {
            return Err(StructError::FunctionalNotInvertible(render_functional(c, f)))
        }
    };
    // Verify the opposite order as well.
    if c.dual_product(&x, f) != c.counit_functional()
        || c.dual_product(f, &x) != c.counit_functional()
    {
        return Err(StructError::FunctionalNotInvertible(render_functional(c, f)));
    }
    Ok(x)
}

fn render_functional(c: &Coalgebra, f: &[Scalar]) -> String {
    let parts: Vec<String> = f
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| format!("{} at {}", v, c.label(i)))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(", ")
    }
}

/// Whether a matrix is a coalgebra morphism `src → dst`:
/// `Δ_dst ∘ f = (f ⊗ f) ∘ Δ_src` and `ε_dst ∘ f = ε_src`.
pub(crate) fn is_coalgebra_map(f: &Matrix, src: &Coalgebra, dst: &Coalgebra) -> bool {
    if f.rows() != dst.dim() || f.cols() != src.dim() {
        return false;
    }
    for i in 0..src.dim() {
        // ε_dst(f(e_i)) = ε_src(e_i)
        let image: Vec<Scalar> = (0..dst.dim()).map(|r| f.get(r, i).clone()).collect();
        if &dst.counit_apply(&image) != src.counit_of(i) {
            return false;
        }
        // Δ_dst(f(e_i)) as a sparse 2-tensor.
        let lhs = dst.delta_apply(&image);
        // (f ⊗ f)(Δ_src(e_i)).
        let mut rhs: std::collections::BTreeMap<(usize, usize), Scalar> =
            std::collections::BTreeMap::new();
        for (j, k, a) in src.delta_of(i) {
            for u in 0..dst.dim() {
                let fu = f.get(u, *j);
                if fu.is_zero() {
                    continue;
                }
                for v in 0..dst.dim() {
                    let fv = f.get(v, *k);
                    if fv.is_zero() {
                        continue;
                    }
                    let slot = rhs.entry((u, v)).or_insert_with(Scalar::zero);
                    *slot = &*slot + &(&(fu * fv) * a);
                }
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Whether an invertible matrix is a coalgebra automorphism of `c`.
pub(crate) fn is_coalgebra_automorphism(c: &Coalgebra, m: &Matrix) -> bool {
    m.inverse().is_ok() && is_coalgebra_map(m, c, c)
}

/// Whether both twist maps are coalgebra automorphisms (the strictness test
/// used when constructing oriented structures).
pub(crate) fn compute_strict(c: &Coalgebra, t_d: &Matrix, t_u: &Matrix) -> bool {
    is_coalgebra_automorphism(c, t_d) && is_coalgebra_automorphism(c, t_u)
}
