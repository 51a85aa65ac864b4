//! Constructions producing new structures from old ones.

use coalg::{max_stable_coideal, quotient_coalgebra, Coalgebra};
use exactnum::{Matrix, Scalar};

use crate::oqc::{compute_strict, is_coalgebra_map};
use crate::report::ItemCheck;
use crate::{
    convolution_inverse, AxiomReport, OrientedQuantumAlgebra, OrientedQuantumCoalgebra,
    QuantumCoalgebra, StructError,
};

/// Forget the distinction between the two twist maps: `(C, b, 1, T_d∘T_u)`.
/// Invariants computed from the standardized structure agree with the
/// original on diagrams whose crossing decorations are balanced.
pub fn standardize(s: &OrientedQuantumCoalgebra) -> OrientedQuantumCoalgebra {
    let t_u = &s.t_d * &s.t_u;
    let t_d = Matrix::identity(s.dim());
    let strict = compute_strict(&s.coalg, &t_d, &t_u);
    OrientedQuantumCoalgebra {
        coalg: s.coalg.clone(),
        b: s.b.clone(),
        b_inv: s.b_inv.clone(),
        t_d,
        t_u,
        strict,
    }
}

/// Derive oriented structures from a quantum coalgebra: `(C, b, S⁻², 1)`
/// and `(C, b, 1, S⁻²)`.
pub fn from_quantum(
    s: &QuantumCoalgebra,
) -> Result<(OrientedQuantumCoalgebra, OrientedQuantumCoalgebra), StructError> {
    let s_inv2 = s.s.pow(-2)?;
    let id = Matrix::identity(s.coalg.dim());
    let make = |t_d: &Matrix, t_u: &Matrix| OrientedQuantumCoalgebra {
        coalg: s.coalg.clone(),
        b: s.b.clone(),
        b_inv: s.b_inv.clone(),
        t_d: t_d.clone(),
        t_u: t_u.clone(),
        strict: compute_strict(&s.coalg, t_d, t_u),
    };
    Ok((make(&s_inv2, &id), make(&id, &s_inv2)))
}

/// Double an oriented structure into a quantum coalgebra on `C ⊕ C^cop`.
///
/// The form `β` restricts to `b` on each copy, pairs the second copy
/// against the first by `b⁻¹`, and pairs the first against the second by
/// `b⁻¹(c, T⁻¹(d))` with `T = T_d∘T_u`.  The antipode exchanges the copies
/// through `T⁻¹`.  Returns the quantum structure, the induced oriented
/// structure (twists acting diagonally), and the embedding of `C` as the
/// first summand, which preserves all structure.
pub fn double_coalgebra(
    s: &OrientedQuantumCoalgebra,
) -> Result<(QuantumCoalgebra, OrientedQuantumCoalgebra, Matrix), StructError> {
    let dim = s.dim();
    let carrier = s.coalg.direct_sum(&s.coalg.opposite(), "'");
    let t = &s.t_d * &s.t_u;
    let t_inv = t.inverse()?;

    let mut beta = Matrix::zero(2 * dim, 2 * dim);
    let upper_right = &s.b_inv * &t_inv;
    for i in 0..dim {
        for j in 0..dim {
            beta.set(i, j, s.b.get(i, j).clone());
            beta.set(dim + i, dim + j, s.b.get(i, j).clone());
            beta.set(dim + i, j, s.b_inv.get(i, j).clone());
            beta.set(i, dim + j, upper_right.get(i, j).clone());
        }
    }
    let beta_inv = convolution_inverse(&carrier, &beta)?;

    // S(c ⊕ d) = T⁻¹(d) ⊕ c.
    let mut antipode = Matrix::zero(2 * dim, 2 * dim);
    for i in 0..dim {
        antipode.set(dim + i, i, Scalar::one());
        for r in 0..dim {
            antipode.set(r, dim + i, t_inv.get(r, i).clone());
        }
    }

    let quantum = QuantumCoalgebra {
        coalg: carrier.clone(),
        b: beta.clone(),
        b_inv: beta_inv.clone(),
        s: antipode,
    };

    let block = |m: &Matrix| {
        let mut out = Matrix::zero(2 * dim, 2 * dim);
        for i in 0..dim {
            for j in 0..dim {
                out.set(i, j, m.get(i, j).clone());
                out.set(dim + i, dim + j, m.get(i, j).clone());
            }
        }
        out
    };
    let t_d = block(&s.t_d);
    let t_u = block(&s.t_u);
    let strict = compute_strict(&carrier, &t_d, &t_u);
    let oriented = OrientedQuantumCoalgebra {
        coalg: carrier,
        b: beta,
        b_inv: beta_inv,
        t_d,
        t_u,
        strict,
    };

    let mut embed = Matrix::zero(2 * dim, dim);
    for i in 0..dim {
        embed.set(i, i, Scalar::one());
    }
    Ok((quantum, oriented, embed))
}

/// The dual of an oriented quantum algebra: the dual coalgebra of the
/// carrier algebra with `b(f, g) = (f ⊗ g)(ρ)` and transposed twist maps.
pub fn dual_oqc(s: &OrientedQuantumAlgebra) -> Result<OrientedQuantumCoalgebra, StructError> {
    let dim = s.alg.dim();
    // Dual coalgebra: Δ(e^i) = Σ m^i_{jk} e^j ⊗ e^k  where e_j·e_k = Σ m^i_{jk} e_i.
    let mut delta: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); dim];
    for j in 0..dim {
        for k in 0..dim {
            for (i, coeff) in s.alg.mult_of(j, k) {
                delta[*i].push((j, k, coeff.clone()));
            }
        }
    }
    let counit: Vec<Scalar> = s.alg.one().to_vec();
    let labels = Some(
        (0..dim)
            .map(|i| s.alg.label(i).replace('E', "e"))
            .collect(),
    );
    let coalg = Coalgebra::new(dim, delta, counit, labels)?;
    coalg.validate()?;

    let mut b = Matrix::zero(dim, dim);
    for ((i, j), v) in s.rho.iter() {
        b.set(*i, *j, v.clone());
    }
    let mut b_inv = Matrix::zero(dim, dim);
    for ((i, j), v) in s.rho_inv.iter() {
        b_inv.set(*i, *j, v.clone());
    }
    let t_d = s.t_d.transpose();
    let t_u = s.t_u.transpose();
    let strict = compute_strict(&coalg, &t_d, &t_u);
    Ok(OrientedQuantumCoalgebra {
        coalg,
        b,
        b_inv,
        t_d,
        t_u,
        strict,
    })
}

/// Tensor product of oriented structures: forms multiply leg-wise and the
/// twist maps act as Kronecker products.  The inverse form is assembled
/// directly as the tensor of the two inverses.
pub fn tensor_oqc(
    x: &OrientedQuantumCoalgebra,
    y: &OrientedQuantumCoalgebra,
) -> OrientedQuantumCoalgebra {
    let coalg = x.coalg.tensor(&y.coalg);
    let kron = |a: &Matrix, b: &Matrix| {
        Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
            a.get(r / b.rows(), c / b.cols()) * b.get(r % b.rows(), c % b.cols())
        })
    };
    let b = kron(&x.b, &y.b);
    let b_inv = kron(&x.b_inv, &y.b_inv);
    let t_d = kron(&x.t_d, &y.t_d);
    let t_u = kron(&x.t_u, &y.t_u);
    OrientedQuantumCoalgebra {
        coalg,
        b,
        b_inv,
        t_d,
        t_u,
        strict: x.strict && y.strict,
    }
}

/// The three structure-preserving sign flips of an oriented structure.
#[derive(Clone, Debug)]
pub struct OppositeVariants {
    /// Co-opposite carrier, same form and twists.
    pub cop: OrientedQuantumCoalgebra,
    /// Form replaced by its convolution inverse, twists inverted.
    pub inv: OrientedQuantumCoalgebra,
    /// Form transposed, twists inverted.
    pub op: OrientedQuantumCoalgebra,
}

/// Build the co-opposite, inverse-form and transposed-form variants.
pub fn opposite_variants(
    s: &OrientedQuantumCoalgebra,
) -> Result<OppositeVariants, StructError> {
    let cop_carrier = s.coalg.opposite();
    let cop = OrientedQuantumCoalgebra {
        strict: compute_strict(&cop_carrier, &s.t_d, &s.t_u),
        coalg: cop_carrier,
        b: s.b.clone(),
        b_inv: s.b_inv.clone(),
        t_d: s.t_d.clone(),
        t_u: s.t_u.clone(),
    };
    let td_inv = s.t_d.inverse()?;
    let tu_inv = s.t_u.inverse()?;
    let inv = OrientedQuantumCoalgebra {
        coalg: s.coalg.clone(),
        b: s.b_inv.clone(),
        b_inv: s.b.clone(),
        strict: compute_strict(&s.coalg, &td_inv, &tu_inv),
        t_d: td_inv,
        t_u: tu_inv,
    };
    let op = OrientedQuantumCoalgebra {
        coalg: s.coalg.clone(),
        b: s.b.transpose(),
        b_inv: s.b_inv.transpose(),
        strict: compute_strict(&s.coalg, &inv.t_d, &inv.t_u),
        t_d: inv.t_d.clone(),
        t_u: inv.t_u.clone(),
    };
    Ok(OppositeVariants { cop, inv, op })
}

/// Quotient by the largest coideal invisible to the form (on either side,
/// for both `b` and `b⁻¹`) and stable under both twist maps.  Returns the
/// quotient structure and the projection.
pub fn minimal_quotient(
    s: &OrientedQuantumCoalgebra,
) -> Result<(OrientedQuantumCoalgebra, Matrix), StructError> {
    let constraints = vec![
        s.b.transpose(),
        s.b.clone(),
        s.b_inv.transpose(),
        s.b_inv.clone(),
    ];
    let stabilizers = vec![s.t_d.clone(), s.t_u.clone()];
    let w = max_stable_coideal(&s.coalg, &constraints, &stabilizers);
    let (quo, pi, sigma) = quotient_coalgebra(&s.coalg, &w)?;
    let b = &(&sigma.transpose() * &s.b) * &sigma;
    let b_inv = &(&sigma.transpose() * &s.b_inv) * &sigma;
    let t_d = &(&pi * &s.t_d) * &sigma;
    let t_u = &(&pi * &s.t_u) * &sigma;
    let strict = compute_strict(&quo, &t_d, &t_u);
    Ok((
        OrientedQuantumCoalgebra {
            coalg: quo,
            b,
            b_inv,
            t_d,
            t_u,
            strict,
        },
        pi,
    ))
}

/// Whether `f` is a morphism of oriented structures: a coalgebra map that
/// preserves the form and intertwines both twist maps.
pub fn is_oqc_morphism(
    f: &Matrix,
    src: &OrientedQuantumCoalgebra,
    dst: &OrientedQuantumCoalgebra,
) -> bool {
    is_coalgebra_map(f, &src.coalg, &dst.coalg)
        && &(&f.transpose() * &dst.b) * f == src.b
        && &(&f.transpose() * &dst.b_inv) * f == src.b_inv
        && &dst.t_d * f == f * &src.t_d
        && &dst.t_u * f == f * &src.t_u
}

/// Whether `f` is a morphism of quantum coalgebras: a coalgebra map that
/// preserves the form and intertwines the antipodes.
pub fn is_qc_morphism(f: &Matrix, src: &QuantumCoalgebra, dst: &QuantumCoalgebra) -> bool {
    is_coalgebra_map(f, &src.coalg, &dst.coalg)
        && &(&f.transpose() * &dst.b) * f == src.b
        && &(&f.transpose() * &dst.b_inv) * f == src.b_inv
        && &dst.s * f == f * &src.s
}

/// Verify that every twist power in a window slides through the form:
/// `b(Td^a Tu^v(c), d) = b(c, Td^-a Tu^-v(d))` (and mirrored, and for
/// `b⁻¹`) for all exponents with `|a|, |v| ≤ window`.  This is the
/// compatibility of the whole group generated by the twist maps with the
/// form, checked on a finite window.
pub fn automorphism_group_closure_check(
    s: &OrientedQuantumCoalgebra,
    window: i64,
) -> Result<AxiomReport, StructError> {
    let mut report = AxiomReport::new("twist group compatibility window");
    for a in -window..=window {
        for v in -window..=window {
            let fwd = &s.t_d.pow(a)? * &s.t_u.pow(v)?;
            let back = &s.t_d.pow(-a)? * &s.t_u.pow(-v)?;
            let mut item = ItemCheck::new(format!("slide Td^{a} Tu^{v} through the forms"));
            for (name, form) in [("b", &s.b), ("b_inv", &s.b_inv)] {
                let lhs = &fwd.transpose() * form;
                let rhs = form * &back;
                for i in 0..lhs.rows() {
                    for j in 0..lhs.cols() {
                        item.expect_eq(
                            || {
                                format!(
                                    "{}({}, {})",
                                    name,
                                    s.coalg.label(i),
                                    s.coalg.label(j)
                                )
                            },
                            lhs.get(i, j),
                            rhs.get(i, j),
                        );
                    }
                }
            }
            report.items.push(item.finish());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check_oqc, check_qc};
    use crate::presets::{jones_quantum, jones_standard_structure, jones_structure};
    use crate::{homfly_algebra, trivial_structure};

    #[test]
    fn standardization_pushes_the_twist_into_tu() {
        let jones = jones_structure().unwrap().oqc;
        let standard = standardize(&jones);
        assert_eq!(standard, jones_standard_structure().unwrap().oqc);
        assert!(check_oqc(&standard).passed());
    }

    #[test]
    fn quantum_structures_induce_two_oriented_ones() {
        let qc = jones_quantum().unwrap();
        let (down, up) = from_quantum(&qc).unwrap();
        assert!(check_oqc(&down).passed());
        assert!(check_oqc(&up).passed());
        assert_eq!(down.t_u, Matrix::identity(4));
        assert_eq!(up.t_d, Matrix::identity(4));
        assert_eq!(down.t_d, qc.s.pow(-2).unwrap());
    }

    #[test]
    fn the_double_carries_a_quantum_structure() {
        let jones = jones_structure().unwrap().oqc;
        let (quantum, oriented, embed) = double_coalgebra(&jones).unwrap();
        let report = check_qc(&quantum);
        assert!(report.passed(), "{report}");
        let report = check_oqc(&oriented);
        assert!(report.passed(), "{report}");
        assert!(is_oqc_morphism(&embed, &jones, &oriented));
        // The antipode squares to the inverse of the combined twist.
        let t = &oriented.t_d * &oriented.t_u;
        assert_eq!(quantum.s.pow(-2).unwrap(), t);
    }

    #[test]
    fn dual_of_the_matrix_family_is_the_comatrix_family() {
        let oqa = homfly_algebra(2).unwrap();
        let dual = dual_oqc(&oqa).unwrap();
        assert_eq!(dual, jones_structure().unwrap().oqc);
    }

    #[test]
    fn tensor_with_a_one_dimensional_factor_rescales_the_form() {
        let jones = jones_structure().unwrap().oqc;
        let unit = trivial_structure(&Scalar::q_pow(3)).unwrap().oqc;
        let prod = tensor_oqc(&unit, &jones);
        assert_eq!(prod.dim(), 4);
        let report = check_oqc(&prod);
        assert!(report.passed(), "{report}");
        assert_eq!(prod.b, jones.b.scale(&Scalar::q_pow(3)));
    }

    #[test]
    fn all_three_opposites_remain_oriented_structures() {
        let jones = jones_structure().unwrap().oqc;
        let variants = opposite_variants(&jones).unwrap();
        for (name, v) in [
            ("cop", &variants.cop),
            ("inv", &variants.inv),
            ("op", &variants.op),
        ] {
            let report = check_oqc(v);
            assert!(report.passed(), "{name}: {report}");
        }
        assert_eq!(variants.op.b, jones.b.transpose());
        assert_eq!(variants.inv.b, jones.b_inv);
    }

    #[test]
    fn a_nondegenerate_form_has_a_trivial_quotient() {
        let jones = jones_structure().unwrap().oqc;
        let (quo, pi) = minimal_quotient(&jones).unwrap();
        assert_eq!(quo.dim(), 4);
        assert!(pi.is_identity());
        assert_eq!(quo, jones);
    }

    #[test]
    fn a_degenerate_group_like_form_collapses_to_a_point() {
        // Two group-likes paired identically: g1 - g2 spans a coideal the
        // form cannot see, so the quotient is one-dimensional.
        let coalg = Coalgebra::group_like(2);
        let beta = Scalar::q_pow(3);
        let b = Matrix::from_fn(2, 2, |_, _| beta.clone());
        let b_inv = convolution_inverse(&coalg, &b).unwrap();
        let s = OrientedQuantumCoalgebra {
            strict: true,
            t_d: Matrix::identity(2),
            t_u: Matrix::identity(2),
            coalg,
            b,
            b_inv,
        };
        let (quo, pi) = minimal_quotient(&s).unwrap();
        assert_eq!(quo.dim(), 1);
        assert_eq!(quo.b.get(0, 0), &beta);
        assert!(is_oqc_morphism(&pi, &s, &quo));
    }

    #[test]
    fn twist_powers_slide_through_the_forms() {
        let jones = jones_structure().unwrap().oqc;
        let report = automorphism_group_closure_check(&jones, 2).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.items.len(), 25);
    }

    #[test]
    fn morphism_detection_rejects_a_basis_swap() {
        let jones = jones_structure().unwrap().oqc;
        assert!(is_oqc_morphism(&Matrix::identity(4), &jones, &jones));
        // Exchanging e^1_2 and e^2_1 does not commute with the coproduct.
        let mut swap = Matrix::zero(4, 4);
        swap.set(0, 0, Scalar::one());
        swap.set(3, 3, Scalar::one());
        swap.set(1, 2, Scalar::one());
        swap.set(2, 1, Scalar::one());
        assert!(!is_oqc_morphism(&swap, &jones, &jones));
    }
}
