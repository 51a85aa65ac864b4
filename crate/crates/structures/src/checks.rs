//! Axiom suites for quantum and oriented quantum coalgebras.

use coalg::Coalgebra;
use exactnum::{Matrix, Scalar};

use crate::oqc::{compute_strict, is_coalgebra_automorphism};
use crate::report::ItemCheck;
use crate::{convolution_inverse, AxiomReport, OrientedQuantumCoalgebra, QuantumCoalgebra, TwistOqc};

fn pair_label(c: &Coalgebra, i: usize, j: usize) -> String {
    format!("c = {}, d = {}", c.label(i), c.label(j))
}

fn triple_label(c: &Coalgebra, i: usize, j: usize, k: usize) -> String {
    format!("c = {}, d = {}, e = {}", c.label(i), c.label(j), c.label(k))
}

/// Convolution-inverse check, both orders, as one report item.
fn conv_inverse_item(c: &Coalgebra, b: &Matrix, b_inv: &Matrix) -> ItemCheck {
    let mut item = ItemCheck::new("b_inverse is a two-sided convolution inverse of b");
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
            item.expect_eq(|| pair_label(c, i, l), &first, &expected);
            item.expect_eq(|| format!("{} (factors exchanged)", pair_label(c, i, l)), &second, &expected);
        }
    }
    item
}

/// Matrix identity as one report item, with entrywise witnesses.
fn matrix_eq_item(axiom: &str, c: &Coalgebra, lhs: &Matrix, rhs: &Matrix) -> ItemCheck {
    let mut item = ItemCheck::new(axiom);
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            item.expect_eq(|| pair_label(c, i, j), lhs.get(i, j), rhs.get(i, j));
        }
    }
    item
}

/// The braided-form identity
/// `Σ b(c₁,d₁)·b(c₂,e₁)·b(d₂,e₂) = Σ b(c₂,d₂)·b(c₁,e₂)·b(d₁,e₁)`
/// over all basis triples.
fn braid_item(c: &Coalgebra, b: &Matrix) -> ItemCheck {
    let mut item = ItemCheck::new("(qc.3) braided compatibility of b with the coproduct");
    let dim = c.dim();
    for ci in 0..dim {
        for di in 0..dim {
            for ei in 0..dim {
                let mut lhs = Scalar::zero();
                let mut rhs = Scalar::zero();
                for (c1, c2, ac) in c.delta_of(ci) {
                    for (d1, d2, ad) in c.delta_of(di) {
                        for (e1, e2, ae) in c.delta_of(ei) {
                            let w = &(ac * ad) * ae;
                            lhs = &lhs
                                + &(&(&(&w * b.get(*c1, *d1)) * b.get(*c2, *e1))
                                    * b.get(*d2, *e2));
                            rhs = &rhs
                                + &(&(&(&w * b.get(*c2, *d2)) * b.get(*c1, *e2))
                                    * b.get(*d1, *e1));
                        }
                    }
                }
                item.expect_eq(|| triple_label(c, ci, di, ei), &lhs, &rhs);
            }
        }
    }
    item
}

/// Full axiom suite for an oriented quantum coalgebra.
pub fn check_oqc(s: &OrientedQuantumCoalgebra) -> AxiomReport {
    let mut report = AxiomReport::new("oriented quantum coalgebra");
    let c = &s.coalg;
    let dim = c.dim();

    let mut item = ItemCheck::new("carrier is a coalgebra");
    if let Err(e) = c.validate() {
        item.fail("coalgebra laws".to_string(), e.to_string(), String::new());
    }
    report.items.push(item.finish());

    report.items.push(conv_inverse_item(c, &s.b, &s.b_inv).finish());

    // (qc.1), both equations.  Precompute b(x, T_u·y) and b⁻¹(T_d·x, y).
    let b_tu = &s.b * &s.t_u;
    let binv_td = &s.t_d.transpose() * &s.b_inv;
    let mut first = ItemCheck::new("(qc.1) first equation: b(c1, Tu(d2)) b_inv(Td(c2), d1) = eps(c) eps(d)");
    let mut second = ItemCheck::new("(qc.1) second equation: b_inv(Td(c1), d2) b(c2, Tu(d1)) = eps(c) eps(d)");
    for i in 0..dim {
        for l in 0..dim {
            let expected = c.counit_of(i) * c.counit_of(l);
            let mut s1 = Scalar::zero();
            let mut s2 = Scalar::zero();
            for (c1, c2, ac) in c.delta_of(i) {
                for (d1, d2, ad) in c.delta_of(l) {
                    let w = ac * ad;
                    s1 = &s1 + &(&(&w * b_tu.get(*c1, *d2)) * binv_td.get(*c2, *d1));
                    s2 = &s2 + &(&(&w * binv_td.get(*c1, *d2)) * b_tu.get(*c2, *d1));
                }
            }
            first.expect_eq(|| pair_label(c, i, l), &s1, &expected);
            second.expect_eq(|| pair_label(c, i, l), &s2, &expected);
        }
    }
    report.items.push(first.finish());
    report.items.push(second.finish());

    // (qc.2): both twist maps leave the form invariant.
    report.items.push(
        matrix_eq_item(
            "(qc.2) b(Td(c), Td(d)) = b(c, d)",
            c,
            &(&(&s.t_d.transpose() * &s.b) * &s.t_d),
            &s.b,
        )
        .finish(),
    );
    report.items.push(
        matrix_eq_item(
            "(qc.2) b(Tu(c), Tu(d)) = b(c, d)",
            c,
            &(&(&s.t_u.transpose() * &s.b) * &s.t_u),
            &s.b,
        )
        .finish(),
    );

    report.items.push(braid_item(c, &s.b).finish());

    let mut inv = ItemCheck::new("Td and Tu are invertible");
    inv.expect(
        || "Td".to_string(),
        s.t_d.inverse().is_ok(),
        "singular",
        "invertible",
    );
    inv.expect(
        || "Tu".to_string(),
        s.t_u.inverse().is_ok(),
        "singular",
        "invertible",
    );
    report.items.push(inv.finish());

    report.items.push(
        matrix_eq_item(
            "Td and Tu commute",
            c,
            &(&s.t_d * &s.t_u),
            &(&s.t_u * &s.t_d),
        )
        .finish(),
    );

    // Strictness: genuine coalgebra automorphisms, or the weaker
    // counit/form compatibility.
    if s.strict {
        let mut item = ItemCheck::new("twist maps are coalgebra automorphisms (strict)");
        item.expect(
            || "Td".to_string(),
            is_coalgebra_automorphism(c, &s.t_d),
            "not a coalgebra automorphism",
            "coalgebra automorphism",
        );
        item.expect(
            || "Tu".to_string(),
            is_coalgebra_automorphism(c, &s.t_u),
            "not a coalgebra automorphism",
            "coalgebra automorphism",
        );
        report.items.push(item.finish());
    } else {
        let mut item = ItemCheck::new("twist maps preserve the counit");
        for (name, t) in [("Td", &s.t_d), ("Tu", &s.t_u)] {
            for i in 0..dim {
                let composed: Scalar = (0..dim)
                    .map(|u| c.counit_of(u) * t.get(u, i))
                    .sum();
                item.expect_eq(
                    || format!("{} at {}", name, c.label(i)),
                    &composed,
                    c.counit_of(i),
                );
            }
        }
        report.items.push(item.finish());
        for (name, t) in [("Td", &s.t_d), ("Tu", &s.t_u)] {
            report
                .items
                .push(form_automorphism_item(name, c, &s.b, t, false).finish());
        }
    }

    report
}

/// Whether a map `f` is a coalgebra morphism *relative to the form*: in
/// every pairing against arbitrary third elements,
/// `Σ b(f(c₁), d)·b(f(c₂), e)` agrees with pairing the coproduct legs of
/// `f(c)` — in order for an ordinary morphism (`swap = false`), or with the
/// legs exchanged for a morphism into the co-opposite (`swap = true`); and
/// mirrored with the form arguments on the right.
fn form_automorphism_item(
    name: &str,
    c: &Coalgebra,
    b: &Matrix,
    f: &Matrix,
    swap: bool,
) -> ItemCheck {
    let mut item = ItemCheck::new(format!(
        "{name} is a coalgebra morphism with respect to b{}",
        if swap { " (into the co-opposite)" } else { "" }
    ));
    let dim = c.dim();
    let fb = &f.transpose() * b; // b(f(x), y)
    let bf = b * f; // b(x, f(y))
    for ci in 0..dim {
        // Δ(f(c)) with optional swap.
        let mut image_delta: Vec<(usize, usize, Scalar)> = Vec::new();
        for u in 0..dim {
            let fu = f.get(u, ci);
            if fu.is_zero() {
                continue;
            }
            for (x, y, a) in c.delta_of(u) {
                let (x, y) = if swap { (*y, *x) } else { (*x, *y) };
                image_delta.push((x, y, fu * a));
            }
        }
        for di in 0..dim {
            for ei in 0..dim {
                let mut lhs1 = Scalar::zero();
                let mut lhs2 = Scalar::zero();
                for (c1, c2, a) in c.delta_of(ci) {
                    lhs1 = &lhs1 + &(&(a * fb.get(*c1, di)) * fb.get(*c2, ei));
                    lhs2 = &lhs2 + &(&(a * bf.get(di, *c1)) * bf.get(ei, *c2));
                }
                let mut rhs1 = Scalar::zero();
                let mut rhs2 = Scalar::zero();
                for (x, y, a) in &image_delta {
                    rhs1 = &rhs1 + &(&(a * b.get(*x, di)) * b.get(*y, ei));
                    rhs2 = &rhs2 + &(&(a * b.get(di, *x)) * b.get(ei, *y));
                }
                item.expect_eq(
                    || format!("{} (form on the left)", triple_label(c, ci, di, ei)),
                    &lhs1,
                    &rhs1,
                );
                item.expect_eq(
                    || format!("{} (form on the right)", triple_label(c, ci, di, ei)),
                    &lhs2,
                    &rhs2,
                );
            }
        }
    }
    item
}

/// Full axiom suite for a quantum coalgebra `(C, b, S)`.
pub fn check_qc(s: &QuantumCoalgebra) -> AxiomReport {
    let mut report = AxiomReport::new("quantum coalgebra");
    let c = &s.coalg;
    let dim = c.dim();

    let mut item = ItemCheck::new("carrier is a coalgebra");
    if let Err(e) = c.validate() {
        item.fail("coalgebra laws".to_string(), e.to_string(), String::new());
    }
    report.items.push(item.finish());

    report.items.push(conv_inverse_item(c, &s.b, &s.b_inv).finish());

    // b⁻¹(c, d) = b(S(c), d).
    report.items.push(
        matrix_eq_item(
            "(QC.1) b_inv(c, d) = b(S(c), d)",
            c,
            &s.b_inv,
            &(&s.s.transpose() * &s.b),
        )
        .finish(),
    );

    // b(S(c), S(d)) = b(c, d).
    report.items.push(
        matrix_eq_item(
            "(QC.2) b(S(c), S(d)) = b(c, d)",
            c,
            &(&(&s.s.transpose() * &s.b) * &s.s),
            &s.b,
        )
        .finish(),
    );

    report.items.push(braid_item(c, &s.b).finish());

    let mut eps = ItemCheck::new("counit is preserved by S");
    for i in 0..dim {
        let composed: Scalar = (0..dim).map(|u| c.counit_of(u) * s.s.get(u, i)).sum();
        eps.expect_eq(|| c.label(i), &composed, c.counit_of(i));
    }
    report.items.push(eps.finish());

    report
        .items
        .push(form_automorphism_item("S", c, &s.b, &s.s, true).finish());

    let mut inv = ItemCheck::new("S is invertible");
    inv.expect(
        || "S".to_string(),
        s.s.inverse().is_ok(),
        "singular",
        "invertible",
    );
    report.items.push(inv.finish());

    report
}

/// Checks for the twist functional of a [`TwistOqc`]: convolution
/// invertibility, the conjugation identity `T_d∘T_u = G⁻¹⇀(·)↼G`, and
/// invariance of `G` under both twist maps.
pub fn check_twist(s: &TwistOqc) -> AxiomReport {
    let mut report = AxiomReport::new("twist functional");
    let c = &s.oqc.coalg;
    let dim = c.dim();

    let mut inv = ItemCheck::new("G is convolution-invertible");
    let left = c.dual_product(&s.g_inv, &s.g);
    let right = c.dual_product(&s.g, &s.g_inv);
    let eps = c.counit_functional();
    for i in 0..dim {
        inv.expect_eq(|| format!("(G_inv * G) at {}", c.label(i)), &left[i], &eps[i]);
        inv.expect_eq(|| format!("(G * G_inv) at {}", c.label(i)), &right[i], &eps[i]);
    }
    report.items.push(inv.finish());

    let mut conj = ItemCheck::new("Td∘Tu is conjugation by G");
    let composed = &s.oqc.t_d * &s.oqc.t_u;
    for i in 0..dim {
        let hit = c.hit_left(&s.g_inv, &c.hit_right(&c.basis_element(i), &s.g));
        for r in 0..dim {
            conj.expect_eq(
                || format!("component {} of image of {}", c.label(r), c.label(i)),
                composed.get(r, i),
                &hit[r],
            );
        }
    }
    report.items.push(conj.finish());

    let mut fixed = ItemCheck::new("G is invariant under the twist maps");
    for (name, t) in [("Td", &s.oqc.t_d), ("Tu", &s.oqc.t_u)] {
        for i in 0..dim {
            let composed: Scalar = (0..dim).map(|u| &s.g[u] * t.get(u, i)).sum();
            fixed.expect_eq(|| format!("G∘{} at {}", name, c.label(i)), &composed, &s.g[i]);
        }
    }
    report.items.push(fixed.finish());

    report
}

/// Check raw structure data that has not yet been assembled: validates the
/// carrier, attempts to compute the convolution inverse of the form, and --
/// when that succeeds -- runs the full oriented suite.
pub fn check_oqc_raw(
    coalg: &Coalgebra,
    b: &Matrix,
    t_d: &Matrix,
    t_u: &Matrix,
) -> AxiomReport {
    let mut report = AxiomReport::new("oriented quantum coalgebra (raw data)");

    let mut item = ItemCheck::new("carrier is a coalgebra");
    if let Err(e) = coalg.validate() {
        item.fail("coalgebra laws".to_string(), e.to_string(), String::new());
        report.items.push(item.finish());
        return report;
    }
    report.items.push(item.finish());

    let mut invertible = ItemCheck::new("b is convolution-invertible");
    match convolution_inverse(coalg, b) {
        Ok(b_inv) => {
            report.items.push(invertible.finish());
            let s = OrientedQuantumCoalgebra {
                coalg: coalg.clone(),
                b: b.clone(),
                b_inv,
                t_d: t_d.clone(),
                t_u: t_u.clone(),
                strict: compute_strict(coalg, t_d, t_u),
            };
            report.absorb("", check_oqc(&s));
        }
        Err(e) => {
            invertible.fail("solving for the inverse".to_string(), e.to_string(), String::new());
            report.items.push(invertible.finish());
        }
    }
    report
}
