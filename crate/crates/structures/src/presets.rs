//! Ready-made structures: the 2×2 comatrix form, its n×n trace family,
//! a one-dimensional group-like family, and deliberately broken variants
//! of the 2×2 form for exercising the axiom checkers.

use coalg::Coalgebra;
use exactnum::{Matrix, Scalar};

use crate::oqc::{
    compute_strict, convolution_inverse, functional_inverse, OrientedQuantumCoalgebra,
    QuantumCoalgebra, TwistOqc,
};
use crate::StructError;

fn lit(text: &str) -> Scalar {
    Scalar::parse(text).expect("literal scalar")
}

/// Parameter table for the n×n comatrix family: pairing weights for
/// matched diagonal basis elements, the crossing constant, the single
/// triangular weight, and the balancing weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomflyTable {
    pub n: usize,
    /// `pairs[i][l]` weighs `b(e^i_i, e^l_l)`.
    pub pairs: Vec<Vec<Scalar>>,
    /// The constant every matched off-diagonal pair multiplies to.
    pub crossing: Scalar,
    /// The weight of `b(e^i_l, e^l_i)` for `i < l`.
    pub x: Scalar,
    /// Balancing weights; the twist acts by `e^i_j ↦ (ω_i/ω_j) e^i_j`.
    pub omega: Vec<Scalar>,
}

/// The default parameter table: diagonal weight `q^-1`, off-diagonal
/// weight `q`, crossing constant `q^2`, triangular weight `q^-1 - q^3`,
/// and `ω_i = (-1)^i q^-(2i+1)`.
pub fn homfly_table(n: usize) -> HomflyTable {
    let pairs = (0..n)
        .map(|i| {
            (0..n)
                .map(|l| if i == l { lit("q^-1") } else { lit("q") })
                .collect()
        })
        .collect();
    let omega = (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            &Scalar::from_int(sign) * &Scalar::q_pow(-(2 * i as i64 + 1))
        })
        .collect();
    HomflyTable {
        n,
        pairs,
        crossing: lit("q^2"),
        x: lit("q^-1 - q^3"),
        omega,
    }
}

/// Build the comatrix structure described by a parameter table, after
/// validating the constraints the family needs.
pub fn homfly_structure(table: &HomflyTable) -> Result<TwistOqc, StructError> {
    let n = table.n;
    if n == 0 {
        return Err(StructError::Dimension("the family needs n >= 1".into()));
    }
    if table.pairs.len() != n
        || table.pairs.iter().any(|row| row.len() != n)
        || table.omega.len() != n
    {
        return Err(StructError::Dimension(format!(
            "expected an {n}x{n} pairing table and {n} balancing weights"
        )));
    }
    if table.crossing.is_zero() {
        return Err(StructError::Constraint(
            "the crossing constant must be nonzero".into(),
        ));
    }
    for row in &table.pairs {
        for p in row {
            if p.is_zero() {
                return Err(StructError::Constraint(
                    "every pairing weight must be nonzero".into(),
                ));
            }
        }
    }
    for i in 0..n {
        let p = &table.pairs[i][i];
        if table.x != p - &(&table.crossing / p) {
            return Err(StructError::Constraint(format!(
                "the triangular weight must equal p - c/p for every diagonal \
                 weight p; fails at index {}",
                i + 1
            )));
        }
    }
    for i in 0..n {
        for l in (i + 1)..n {
            if &table.pairs[i][l] * &table.pairs[l][i] != table.crossing {
                return Err(StructError::Constraint(format!(
                    "matched off-diagonal weights must multiply to the crossing \
                     constant; fails at ({}, {})",
                    i + 1,
                    l + 1
                )));
            }
            let prod = &table.pairs[i][i] * &table.pairs[l][l];
            if table.pairs[i][i] != table.pairs[l][l] && prod != -&table.crossing {
                return Err(StructError::Constraint(format!(
                    "two diagonal weights must agree or multiply to the negated \
                     crossing constant; fails at ({}, {})",
                    i + 1,
                    l + 1
                )));
            }
        }
    }
    if table.omega[0].is_zero() {
        return Err(StructError::Constraint(
            "the balancing weights must be nonzero".into(),
        ));
    }
    // The squares of the balancing weights are pinned down by the diagonal:
    // ω_i² = (p_00 p_ii / c) · Π_{0<j<i} (p_jj² / c) · ω_0².
    let mut running = &table.omega[0] * &table.omega[0];
    for i in 1..n {
        if table.omega[i].is_zero() {
            return Err(StructError::Constraint(
                "the balancing weights must be nonzero".into(),
            ));
        }
        if i > 1 {
            let p = &table.pairs[i - 1][i - 1];
            running = &running * &(&(p * p) / &table.crossing);
        }
        let expected =
            &(&(&table.pairs[0][0] * &table.pairs[i][i]) / &table.crossing) * &running;
        if &table.omega[i] * &table.omega[i] != expected {
            return Err(StructError::Constraint(format!(
                "the squared balancing weights must follow the diagonal \
                 recurrence; fails at index {}",
                i + 1
            )));
        }
    }

    let coalg = Coalgebra::comatrix(n);
    let dim = n * n;
    let mut b = Matrix::zero(dim, dim);
    for i in 0..n {
        for l in 0..n {
            b.set(i * n + i, l * n + l, table.pairs[i][l].clone());
        }
    }
    for i in 0..n {
        for l in (i + 1)..n {
            b.set(i * n + l, l * n + i, table.x.clone());
        }
    }
    let b_inv = convolution_inverse(&coalg, &b)?;
    let mut t = Matrix::zero(dim, dim);
    for i in 0..n {
        for j in 0..n {
            t.set(i * n + j, i * n + j, &table.omega[i] / &table.omega[j]);
        }
    }
    let mut g = vec![Scalar::zero(); dim];
    for i in 0..n {
        g[i * n + i] = &table.omega[i] * &table.omega[i];
    }
    let g_inv = functional_inverse(&coalg, &g)?;
    let strict = compute_strict(&coalg, &t, &t);
    Ok(TwistOqc {
        oqc: OrientedQuantumCoalgebra {
            coalg,
            b,
            b_inv,
            t_d: t.clone(),
            t_u: t,
            strict,
        },
        g,
        g_inv,
    })
}

fn jones_form() -> (Coalgebra, Matrix) {
    let coalg = Coalgebra::comatrix(2);
    let mut b = Matrix::zero(4, 4);
    b.set(0, 0, lit("q^-1"));
    b.set(0, 3, lit("q"));
    b.set(3, 0, lit("q"));
    b.set(3, 3, lit("q^-1"));
    b.set(1, 2, lit("q^-1 - q^3"));
    (coalg, b)
}

fn jones_g(coalg: &Coalgebra) -> Result<(Vec<Scalar>, Vec<Scalar>), StructError> {
    let mut g = vec![Scalar::zero(); 4];
    g[0] = lit("q^-2");
    g[3] = lit("q^-6");
    let g_inv = functional_inverse(coalg, &g)?;
    Ok((g, g_inv))
}

/// The balanced 2×2 comatrix structure whose trace invariant is the Jones
/// polynomial family.
pub fn jones_structure() -> Result<TwistOqc, StructError> {
    let (coalg, b) = jones_form();
    let b_inv = convolution_inverse(&coalg, &b)?;
    let t = Matrix::diagonal_from(&[lit("1"), lit("-q^2"), lit("-q^-2"), lit("1")]);
    let (g, g_inv) = jones_g(&coalg)?;
    let strict = compute_strict(&coalg, &t, &t);
    Ok(TwistOqc {
        oqc: OrientedQuantumCoalgebra {
            coalg,
            b,
            b_inv,
            t_d: t.clone(),
            t_u: t,
            strict,
        },
        g,
        g_inv,
    })
}

/// The same form with the twist pushed entirely into `T_u` (`T_d = 1`),
/// the shape produced by standardization.
pub fn jones_standard_structure() -> Result<TwistOqc, StructError> {
    let (coalg, b) = jones_form();
    let b_inv = convolution_inverse(&coalg, &b)?;
    let t_d = Matrix::identity(4);
    let t_u = Matrix::diagonal_from(&[lit("1"), lit("q^4"), lit("q^-4"), lit("1")]);
    let (g, g_inv) = jones_g(&coalg)?;
    let strict = compute_strict(&coalg, &t_d, &t_u);
    Ok(TwistOqc {
        oqc: OrientedQuantumCoalgebra {
            coalg,
            b,
            b_inv,
            t_d,
            t_u,
            strict,
        },
        g,
        g_inv,
    })
}

/// The 2×2 comatrix form paired with its antipode-like map instead of
/// twist automorphisms.
pub fn jones_quantum() -> Result<QuantumCoalgebra, StructError> {
    let (coalg, b) = jones_form();
    let b_inv = convolution_inverse(&coalg, &b)?;
    let mut s = Matrix::zero(4, 4);
    s.set(3, 0, Scalar::one());
    s.set(0, 3, Scalar::one());
    s.set(1, 1, lit("-q^-2"));
    s.set(2, 2, lit("-q^2"));
    Ok(QuantumCoalgebra { coalg, b, b_inv, s })
}

/// One-dimensional group-like structure: `b(g, g) = β`, identity twists.
/// The trace invariant of a diagram is `β` raised to its writhe.
pub fn trivial_structure(beta: &Scalar) -> Result<TwistOqc, StructError> {
    let coalg = Coalgebra::group_like(1);
    let mut b = Matrix::zero(1, 1);
    b.set(0, 0, beta.clone());
    let b_inv = convolution_inverse(&coalg, &b)?;
    let id = Matrix::identity(1);
    let g = vec![Scalar::one()];
    Ok(TwistOqc {
        oqc: OrientedQuantumCoalgebra {
            coalg,
            b,
            b_inv,
            t_d: id.clone(),
            t_u: id,
            strict: true,
        },
        g: g.clone(),
        g_inv: g,
    })
}

/// A deliberately broken variant of the 2×2 form: one entry replaced, with
/// the axiom-name fragments the change is known to violate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesMutation {
    pub description: String,
    pub b: Matrix,
    /// Substrings of the axiom items expected to fail under the check.
    pub breaks: Vec<&'static str>,
}

/// Eight single-entry mutations of the 2×2 form, each of which violates at
/// least one axiom while keeping the carrier and twists intact.
pub fn jones_mutations() -> Vec<JonesMutation> {
    let (_, base) = jones_form();
    let mutate = |row: usize,
                  col: usize,
                  value: Scalar,
                  desc: &str,
                  breaks: Vec<&'static str>| {
        let mut b = base.clone();
        b.set(row, col, value);
        JonesMutation {
            description: desc.to_string(),
            b,
            breaks,
        }
    };
    vec![
        mutate(
            1,
            2,
            lit("q"),
            "b(e^1_2, e^2_1) replaced by q",
            vec!["(qc.3)"],
        ),
        mutate(
            1,
            2,
            lit("q - q^-3"),
            "b(e^1_2, e^2_1) replaced by q - q^-3",
            vec!["(qc.3)"],
        ),
        mutate(
            0,
            0,
            lit("q"),
            "b(e^1_1, e^1_1) replaced by q",
            vec!["(qc.1)", "(qc.3)"],
        ),
        mutate(
            0,
            3,
            lit("q^2"),
            "b(e^1_1, e^2_2) replaced by q^2",
            vec!["(qc.1)", "(qc.3)"],
        ),
        mutate(
            3,
            0,
            lit("q^-1"),
            "b(e^2_2, e^1_1) replaced by q^-1",
            vec!["(qc.1)", "(qc.3)"],
        ),
        mutate(
            3,
            3,
            lit("q^3"),
            "b(e^2_2, e^2_2) replaced by q^3",
            vec!["(qc.1)", "(qc.3)"],
        ),
        mutate(
            2,
            1,
            lit("q"),
            "b(e^2_1, e^1_2) replaced by q",
            vec!["(qc.1)", "(qc.3)"],
        ),
        mutate(
            0,
            1,
            lit("q"),
            "b(e^1_1, e^1_2) replaced by q",
            vec!["(qc.1)", "(qc.2)", "(qc.3)"],
        ),
    ]
}

/// Parse a preset spec of the form `name` or `name:key=value,...`.
///
/// Recognized: `jones`, `jones_standard`, `homfly[:n=<int>]`,
/// `trivial[:beta=<scalar>]`.
pub fn parse_preset(spec: &str) -> Result<TwistOqc, StructError> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let mut pairs = Vec::new();
    if let Some(args) = args {
        for part in args.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                StructError::Preset(format!("expected key=value in preset argument '{part}'"))
            })?;
            pairs.push((k.trim(), v.trim()));
        }
    }
    let reject_extra = |allowed: &str, pairs: &[(&str, &str)]| -> Result<(), StructError> {
        for (k, _) in pairs {
            if !allowed.split(',').any(|a| a == *k) {
                return Err(StructError::Preset(format!(
                    "unknown argument '{k}' for preset '{name}'"
                )));
            }
        }
        Ok(())
    };
    match name {
        "jones" => {
            reject_extra("", &pairs)?;
            jones_structure()
        }
        "jones_standard" => {
            reject_extra("", &pairs)?;
            jones_standard_structure()
        }
        "homfly" => {
            reject_extra("n", &pairs)?;
            let mut n = 2usize;
            for (k, v) in &pairs {
                if *k == "n" {
                    n = v.parse().map_err(|_| {
                        StructError::Preset(format!("invalid strand count '{v}'"))
                    })?;
                }
            }
            homfly_structure(&homfly_table(n))
        }
        "trivial" => {
            reject_extra("beta", &pairs)?;
            let mut beta = Scalar::q_pow(3);
            for (k, v) in &pairs {
                if *k == "beta" {
                    beta = Scalar::parse(v).map_err(|e| {
                        StructError::Preset(format!("invalid beta '{v}': {e}"))
                    })?;
                }
            }
            trivial_structure(&beta)
        }
        other => Err(StructError::Preset(format!("unknown preset '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check_oqc, check_qc, check_twist};

    #[test]
    fn jones_axioms_hold() {
        let s = jones_structure().unwrap();
        assert!(s.oqc.strict);
        let report = check_oqc(&s.oqc);
        assert!(report.passed(), "{report}");
        let twist = check_twist(&s);
        assert!(twist.passed(), "{twist}");
    }

    #[test]
    fn jones_inverse_form_matches_frozen_table() {
        let s = jones_structure().unwrap();
        let mut expected = Matrix::zero(4, 4);
        expected.set(0, 0, lit("q"));
        expected.set(0, 3, lit("q^-1"));
        expected.set(3, 0, lit("q^-1"));
        expected.set(3, 3, lit("q"));
        expected.set(1, 2, lit("q - q^-3"));
        assert_eq!(s.oqc.b_inv, expected);
    }

    #[test]
    fn the_two_strand_table_reproduces_jones() {
        let family = homfly_structure(&homfly_table(2)).unwrap();
        let jones = jones_structure().unwrap();
        assert_eq!(family, jones);
    }

    #[test]
    fn three_strand_table_passes_all_axioms() {
        let s = homfly_structure(&homfly_table(3)).unwrap();
        let report = check_oqc(&s.oqc);
        assert!(report.passed(), "{report}");
        let twist = check_twist(&s);
        assert!(twist.passed(), "{twist}");
    }

    #[test]
    fn quantum_variant_passes_and_interacts_with_the_twist() {
        let qc = jones_quantum().unwrap();
        let report = check_qc(&qc);
        assert!(report.passed(), "{report}");
        // The balanced twist satisfies T² = S⁻² and commutes with S.
        let t = jones_structure().unwrap().oqc.t_d;
        assert_eq!(&t * &t, qc.s.pow(-2).unwrap());
        assert_eq!(&qc.s * &t, &t * &qc.s);
    }

    #[test]
    fn every_mutation_breaks_what_it_claims() {
        let jones = jones_structure().unwrap();
        let muts = jones_mutations();
        assert_eq!(muts.len(), 8);
        for m in muts {
            let report = crate::checks::check_oqc_raw(
                &jones.oqc.coalg,
                &m.b,
                &jones.oqc.t_d,
                &jones.oqc.t_u,
            );
            assert!(!report.passed(), "{}: unexpectedly passed", m.description);
            for frag in &m.breaks {
                let hit = report
                    .failing()
                    .iter()
                    .any(|item| item.axiom.contains(frag) && !item.witnesses.is_empty());
                assert!(
                    hit,
                    "{}: expected a failing item matching '{frag}'\n{report}",
                    m.description
                );
            }
        }
    }

    #[test]
    fn trivial_structure_is_one_dimensional() {
        let s = trivial_structure(&Scalar::q_pow(3)).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.oqc.b_inv.get(0, 0), &lit("q^-3"));
        assert!(check_oqc(&s.oqc).passed());
        assert!(check_twist(&s).passed());
    }

    #[test]
    fn preset_strings_resolve() {
        assert_eq!(
            parse_preset("homfly:n=2").unwrap(),
            parse_preset("jones").unwrap()
        );
        let t = parse_preset("trivial:beta=q^5").unwrap();
        assert_eq!(t.oqc.b.get(0, 0), &Scalar::q_pow(5));
        assert!(parse_preset("nope").is_err());
        assert!(parse_preset("jones:n=2").is_err());
        assert!(parse_preset("homfly:n=x").is_err());
    }
}
