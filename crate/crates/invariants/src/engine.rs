//! The contraction engine.
//!
//! A traversal turns each crossing into a [`Factor`]: a form matrix
//! whose two slots point at specific legs (component, label) of the
//! diagram, decorated with twist powers.  Evaluation walks the legs of
//! every component in order, expanding the iterated coproduct of the
//! component's element lazily and keeping a sparse map from partial
//! contraction states to scalars, so factors close as soon as their
//! second slot is reached and zero entries of the decorated matrices
//! prune whole branches.

use std::collections::{hash_map::Entry, BTreeMap, HashMap};

use coalg::Coalgebra;
use diagrams::{
    traverse, traverse_with_starts, whitney_degrees, writhe, Component, Diagram, Kind, Traversal,
};
use exactnum::{Matrix, Scalar};
use structures::{OrientedQuantumCoalgebra, TwistOqc};

use crate::rules::{rule_for, FormKind};
use crate::InvError;

/// One side of a factor: which leg it contracts and the total twist
/// powers applied there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub component: usize,
    /// 1-based crossing-pass label along the component walk.
    pub label: usize,
    pub t_d: i64,
    pub t_u: i64,
}

/// One crossing's contribution to the contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub form: FormKind,
    pub over: Slot,
    pub under: Slot,
}

/// Convert the crossings of a traversal into contraction factors: each
/// slot's twist powers are the strand's rotation counts plus the shift
/// from the crossing rule.
pub fn crossing_factors(tr: &Traversal) -> Vec<Factor> {
    tr.crossings
        .iter()
        .map(|c| {
            let rule = rule_for(c.geom, c.over.dir, c.under.dir);
            Factor {
                form: rule.form,
                over: Slot {
                    component: c.over.component,
                    label: c.over.label,
                    t_d: c.over.u_d + rule.over_shift.0,
                    t_u: c.over.u_u + rule.over_shift.1,
                },
                under: Slot {
                    component: c.under.component,
                    label: c.under.label,
                    t_d: c.under.u_d + rule.under_shift.0,
                    t_u: c.under.u_u + rule.under_shift.1,
                },
            }
        })
        .collect()
}

/// Form matrix of a factor with the twist powers folded in:
/// `b(W_o x, W_u y)` as the matrix `W_o^T · B · W_u`.
fn decorated_matrix(s: &OrientedQuantumCoalgebra, f: &Factor) -> Result<Matrix, InvError> {
    let base = match f.form {
        FormKind::B => &s.b,
        FormKind::BInv => &s.b_inv,
    };
    let over = twist_power(s, f.over.t_d, f.over.t_u)?;
    let under = twist_power(s, f.under.t_d, f.under.t_u)?;
    Ok(&over.transpose() * &(base * &under))
}

fn twist_power(s: &OrientedQuantumCoalgebra, d: i64, u: i64) -> Result<Matrix, InvError> {
    Ok(&s.t_d.pow(d)? * &s.t_u.pow(u)?)
}

/// Tail marker for a component whose coproduct is fully consumed.
const DONE: u32 = u32::MAX;

/// Partial contraction state: factors with exactly one slot consumed so
/// far (sorted by factor index) and the unexpanded remainder of the
/// current component's coproduct.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    pending: Vec<(u32, u32)>,
    tail: u32,
}

/// What happens at one leg of the sweep.
struct Action {
    factor: usize,
    over_side: bool,
    /// The factor's other slot was consumed earlier in the sweep, so
    /// this leg closes it.
    closes: bool,
}

fn add_term(map: &mut HashMap<Key, Scalar>, key: Key, val: Scalar) {
    if val.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            let sum = e.get() + &val;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            e.insert(val);
        }
    }
}

/// Decorated matrices plus the per-leg schedule for one traversal.
struct Prepared {
    decorated: Vec<Matrix>,
    plan: Vec<Vec<Action>>,
}

impl Prepared {
    fn new(s: &OrientedQuantumCoalgebra, tr: &Traversal) -> Result<Prepared, InvError> {
        let factors = crossing_factors(tr);
        let decorated = factors
            .iter()
            .map(|f| decorated_matrix(s, f))
            .collect::<Result<Vec<_>, _>>()?;
        let plan = build_plan(&factors, &tr.components)?;
        Ok(Prepared { decorated, plan })
    }

    /// Contract all factors against the components' elements.  Each
    /// entry of `comps` is the leg count and the element coordinates of
    /// one component, in traversal order.
    fn evaluate(
        &self,
        coalg: &Coalgebra,
        comps: &[(usize, Vec<Scalar>)],
    ) -> Result<Scalar, InvError> {
        let mut states: HashMap<Key, Scalar> = HashMap::new();
        states.insert(
            Key {
                pending: Vec::new(),
                tail: DONE,
            },
            Scalar::one(),
        );
        for (ci, (legs, seed)) in comps.iter().enumerate() {
            // bring the component's element into play
            let mut seeded = HashMap::new();
            for (key, coeff) in &states {
                for (basis, weight) in seed.iter().enumerate() {
                    if weight.is_zero() {
                        continue;
                    }
                    let k = Key {
                        pending: key.pending.clone(),
                        tail: basis as u32,
                    };
                    add_term(&mut seeded, k, coeff * weight);
                }
            }
            states = seeded;
            if *legs == 0 {
                // a strand that meets no crossing folds into the counit
                let mut folded = HashMap::new();
                for (key, coeff) in &states {
                    let eps = coalg.counit_of(key.tail as usize);
                    let k = Key {
                        pending: key.pending.clone(),
                        tail: DONE,
                    };
                    add_term(&mut folded, k, coeff * eps);
                }
                states = folded;
                continue;
            }
            for leg in 0..*legs {
                let action = &self.plan[ci][leg];
                let last = leg + 1 == *legs;
                let mut next = HashMap::new();
                for (key, coeff) in &states {
                    let tail = key.tail as usize;
                    let tail_expansion;
                    let expansions: &[(usize, usize, Scalar)] = if last {
                        tail_expansion = [(tail, DONE as usize, Scalar::one())];
                        &tail_expansion
                    } else {
                        coalg.delta_of(tail)
                    };
                    for &(leg_basis, new_tail, ref dc) in expansions {
                        let weight = coeff * dc;
                        if weight.is_zero() {
                            continue;
                        }
                        let fi = action.factor as u32;
                        let found = key.pending.binary_search_by_key(&fi, |p| p.0);
                        if action.closes {
                            let pos = found.map_err(|_| {
                                InvError::Internal("factor closed before it opened".into())
                            })?;
                            let partner = key.pending[pos].1 as usize;
                            let m = &self.decorated[action.factor];
                            let v = if action.over_side {
                                m.get(leg_basis, partner)
                            } else {
                                m.get(partner, leg_basis)
                            };
                            if v.is_zero() {
                                continue;
                            }
                            let mut pending = key.pending.clone();
                            pending.remove(pos);
                            add_term(
                                &mut next,
                                Key {
                                    pending,
                                    tail: new_tail as u32,
                                },
                                &weight * v,
                            );
                        } else {
                            let pos = match found {
                                Ok(_) => {
                                    return Err(InvError::Internal("factor opened twice".into()))
                                }
                                Err(p) => p,
                            };
                            let mut pending = key.pending.clone();
                            pending.insert(pos, (fi, leg_basis as u32));
                            add_term(
                                &mut next,
                                Key {
                                    pending,
                                    tail: new_tail as u32,
                                },
                                weight,
                            );
                        }
                    }
                }
                states = next;
            }
        }
        let mut total = Scalar::zero();
        for (key, val) in states {
            if !key.pending.is_empty() || key.tail != DONE {
                return Err(InvError::Internal("open factors survived the sweep".into()));
            }
            total = &total + &val;
        }
        Ok(total)
    }
}

/// Assign each factor slot to its leg and decide which of the two slots
/// closes the factor (the one reached later in component-major order).
fn build_plan(factors: &[Factor], comps: &[Component]) -> Result<Vec<Vec<Action>>, InvError> {
    let mut offsets = Vec::with_capacity(comps.len());
    let mut total = 0usize;
    for c in comps {
        offsets.push(total);
        total += c.lines;
    }
    let mut plan: Vec<Vec<Option<Action>>> = comps.iter().map(|c| {
        let mut v = Vec::with_capacity(c.lines);
        v.resize_with(c.lines, || None);
        v
    }).collect();
    for (fi, f) in factors.iter().enumerate() {
        let go = offsets[f.over.component] + f.over.label - 1;
        let gu = offsets[f.under.component] + f.under.label - 1;
        for (slot, over_side) in [(&f.over, true), (&f.under, false)] {
            let action = Action {
                factor: fi,
                over_side,
                closes: if over_side { go > gu } else { gu > go },
            };
            let cell = plan
                .get_mut(slot.component)
                .and_then(|v| v.get_mut(slot.label - 1))
                .ok_or_else(|| InvError::Internal("factor slot outside component legs".into()))?;
            if cell.is_some() {
                return Err(InvError::Internal("two factors claim one leg".into()));
            }
            *cell = Some(action);
        }
    }
    plan.into_iter()
        .map(|v| {
            v.into_iter()
                .map(|o| o.ok_or_else(|| InvError::Internal("leg without a factor".into())))
                .collect()
        })
        .collect()
}

/// Regular-isotopy invariant of an oriented 1–1 tangle, as the vector
/// of its values on the basis elements of the carrier.
///
/// The structure is trusted: run the axiom checks beforehand when it is
/// not already known to be an oriented quantum coalgebra.
pub fn inv_tangle(s: &OrientedQuantumCoalgebra, t: &Diagram) -> Result<Vec<Scalar>, InvError> {
    if !matches!(t.kind, Kind::Tangle(_)) {
        return Err(InvError::NotTangle);
    }
    let tr = traverse(t)?;
    let prep = Prepared::new(s, &tr)?;
    let legs = tr.components[0].lines;
    (0..s.dim())
        .map(|c| prep.evaluate(&s.coalg, &[(legs, s.coalg.basis_element(c))]))
        .collect()
}

fn check_element(s: &TwistOqc, c: &[Scalar]) -> Result<(), InvError> {
    let coalg = &s.oqc.coalg;
    if c.len() != coalg.dim() {
        return Err(InvError::Dimension {
            found: c.len(),
            dim: coalg.dim(),
        });
    }
    if !coalg.is_cocommutative_element(c) {
        return Err(InvError::Precondition("element is not cocommutative".into()));
    }
    let twisted = (&s.oqc.t_d * &s.oqc.t_u).mul_vec(c);
    if twisted.as_slice() != c {
        return Err(InvError::Precondition(
            "element is not fixed by the composite twist t_d t_u".into(),
        ));
    }
    Ok(())
}

/// Regular-isotopy invariant of an oriented knot presented either as a
/// 1–1 tangle (evaluated through the Whitney degree of its closure) or
/// as a one-component link diagram.
///
/// The element must be cocommutative and fixed by `t_d t_u`.
pub fn inv_knot(s: &TwistOqc, c: &[Scalar], k: &Diagram) -> Result<Scalar, InvError> {
    match k.kind {
        Kind::Tangle(_) => {
            check_element(s, c)?;
            let d = whitney_degrees(&k.closure()?)?[0];
            let tr = traverse(k)?;
            let coalg = &s.oqc.coalg;
            let prep = Prepared::new(&s.oqc, &tr)?;
            let seed = coalg.hit_right(c, &coalg.dual_power(&s.g, Some(&s.g_inv), d));
            prep.evaluate(coalg, &[(tr.components[0].lines, seed)])
        }
        Kind::Link => {
            let tr = traverse(k)?;
            if tr.components.len() != 1 {
                return Err(InvError::Components(tr.components.len()));
            }
            inv_link(s, c, k)
        }
    }
}

/// Regular-isotopy invariant of an oriented link diagram: every
/// component is seeded with the element hit by the power of the
/// distinguished functional given by the component's Whitney degree.
pub fn inv_link(s: &TwistOqc, c: &[Scalar], l: &Diagram) -> Result<Scalar, InvError> {
    inv_link_with_starts(s, c, l, &BTreeMap::new())
}

/// Same as [`inv_link`], with the walk of selected components started
/// on a chosen wire (`component index -> wire`) instead of the
/// canonical one.  The value must not depend on the choice.
pub fn inv_link_with_starts(
    s: &TwistOqc,
    c: &[Scalar],
    l: &Diagram,
    starts: &BTreeMap<usize, usize>,
) -> Result<Scalar, InvError> {
    if l.kind != Kind::Link {
        return Err(InvError::NotLink);
    }
    check_element(s, c)?;
    let tr = traverse_with_starts(l, starts)?;
    let coalg = &s.oqc.coalg;
    let prep = Prepared::new(&s.oqc, &tr)?;
    let comps: Vec<(usize, Vec<Scalar>)> = tr
        .components
        .iter()
        .map(|comp| {
            let hit = coalg.dual_power(&s.g, Some(&s.g_inv), comp.degree);
            (comp.lines, coalg.hit_right(c, &hit))
        })
        .collect();
    prep.evaluate(coalg, &comps)
}

/// Closed form for cocommutative carriers: a tangle of writhe `w`
/// evaluates on an element to the `|w|`-fold convolution power of the
/// form (`b` for positive writhe, `b^-1` for negative) applied across
/// one coproduct, and to the counit when `w` is zero.
pub fn cocommutative_fast(
    s: &OrientedQuantumCoalgebra,
    c: &[Scalar],
    t: &Diagram,
) -> Result<Scalar, InvError> {
    if !matches!(t.kind, Kind::Tangle(_)) {
        return Err(InvError::NotTangle);
    }
    let coalg = &s.coalg;
    if c.len() != coalg.dim() {
        return Err(InvError::Dimension {
            found: c.len(),
            dim: coalg.dim(),
        });
    }
    if !coalg.is_cocommutative() {
        return Err(InvError::Precondition(
            "carrier coalgebra is not cocommutative".into(),
        ));
    }
    let w = writhe(t)?;
    if w == 0 {
        return Ok(coalg.counit_apply(c));
    }
    let form = if w > 0 { &s.b } else { &s.b_inv };
    let mut power = form.clone();
    for _ in 1..w.unsigned_abs() {
        power = convolve(coalg, form, &power);
    }
    let mut total = Scalar::zero();
    for (x, cx) in c.iter().enumerate() {
        if cx.is_zero() {
            continue;
        }
        for &(a, b, ref co) in coalg.delta_of(x) {
            total = &total + &(&(cx * co) * power.get(a, b));
        }
    }
    Ok(total)
}

/// Convolution of two forms: `(f * g)(x, y) = f(x1, y1) g(x2, y2)`
/// summed over both coproducts.
fn convolve(coalg: &Coalgebra, first: &Matrix, rest: &Matrix) -> Matrix {
    let dim = coalg.dim();
    Matrix::from_fn(dim, dim, |x, y| {
        let mut acc = Scalar::zero();
        for &(x1, x2, ref cx) in coalg.delta_of(x) {
            for &(y1, y2, ref cy) in coalg.delta_of(y) {
                let v = first.get(x1, y1);
                if v.is_zero() {
                    continue;
                }
                let w = rest.get(x2, y2);
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(&(cx * cy) * &(v * w));
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace_element;
    use diagrams::builtin;
    use structures::{homfly_structure, homfly_table, jones_structure, trivial_structure};

    fn q(text: &str) -> Scalar {
        Scalar::parse(text).unwrap()
    }

    fn jones() -> TwistOqc {
        jones_structure().unwrap()
    }

    fn trace(s: &TwistOqc) -> Vec<Scalar> {
        trace_element(&s.oqc.coalg).unwrap()
    }

    #[test]
    fn crossingless_tangle_evaluates_to_the_counit() {
        let s = jones();
        let f = inv_tangle(&s.oqc, &builtin("strand").unwrap()).unwrap();
        assert_eq!(f, s.oqc.coalg.counit_functional());
    }

    #[test]
    fn curl_functionals_are_frozen() {
        let s = jones();
        let f = inv_tangle(&s.oqc, &builtin("curl").unwrap()).unwrap();
        assert_eq!(f, vec![q("q^-5"), q("0"), q("0"), q("q^-1")]);
        let g = inv_tangle(&s.oqc, &builtin("curl-op").unwrap()).unwrap();
        assert_eq!(g, vec![q("q^-1"), q("0"), q("0"), q("q^-5")]);
    }

    #[test]
    fn trefoil_tangle_functional_is_frozen() {
        let s = jones();
        let f = inv_tangle(&s.oqc, &builtin("trefoil-tangle").unwrap()).unwrap();
        assert_eq!(
            f,
            vec![q("q^-3 + q^5 - q^9"), q("0"), q("0"), q("q^-7 + q - q^5")]
        );
    }

    #[test]
    fn trefoil_decorations_are_frozen() {
        let tr = traverse(&builtin("trefoil-tangle").unwrap()).unwrap();
        let factors = crossing_factors(&tr);
        let mut beads = vec![(0, 0); 6];
        for f in &factors {
            for slot in [&f.over, &f.under] {
                beads[slot.label - 1] = (slot.t_d, slot.t_u);
            }
        }
        assert_eq!(beads, vec![(1, 1), (1, 1), (0, 1), (0, 0), (0, 0), (-1, 0)]);
    }

    #[test]
    fn knot_values_agree_between_tangle_and_closure() {
        let s = jones();
        let tr = trace(&s);
        let via_tangle = inv_knot(&s, &tr, &builtin("trefoil-tangle").unwrap()).unwrap();
        let via_link = inv_knot(&s, &tr, &builtin("trefoil").unwrap()).unwrap();
        assert_eq!(via_tangle, via_link);
        assert_eq!(via_tangle, q("q + q^5 + q^9 - q^17"));
    }

    #[test]
    fn knot_and_link_values_are_frozen() {
        let s = jones();
        let tr = trace(&s);
        let expect = [
            ("trefoil-mirror", "-q^-1 + q^7 + q^11 + q^15"),
            ("fig8", "q^-14 + q^6"),
            ("circle-cw", "q^-2 + q^-6"),
            ("circle-ccw", "q^2 + q^6"),
            ("hopf", "q^-6 + q^-2 + q^2 + q^6"),
            (
                "borromean",
                "-q^-18 + 2*q^-14 + q^-10 + 2*q^-6 + 2*q^-2 + q^2 + 2*q^6 - q^10",
            ),
        ];
        for (name, value) in expect {
            let got = inv_link(&s, &tr, &builtin(name).unwrap()).unwrap();
            assert_eq!(got, q(value), "{name}");
        }
    }

    #[test]
    fn homfly_three_values_are_frozen() {
        let s = homfly_structure(&homfly_table(3)).unwrap();
        let tr = trace(&s);
        assert_eq!(
            inv_knot(&s, &tr, &builtin("trefoil").unwrap()).unwrap(),
            q("q + q^5 + 2*q^9 + q^13 - q^21 - q^25")
        );
        assert_eq!(
            inv_link(&s, &tr, &builtin("hopf").unwrap()).unwrap(),
            q("q^-10 + q^-6 + 2*q^-2 + 2*q^2 + 2*q^6 + q^10")
        );
    }

    #[test]
    fn trivial_structure_counts_writhe() {
        let beta = q("q^3");
        let s = trivial_structure(&beta).unwrap();
        let one = vec![Scalar::one()];
        for (name, w) in [("curl", 1), ("curl-op", 1), ("trefoil-tangle", 3)] {
            let t = builtin(name).unwrap();
            let f = inv_tangle(&s.oqc, &t).unwrap();
            assert_eq!(f, vec![beta.pow(w).unwrap()], "{name}");
            assert_eq!(
                cocommutative_fast(&s.oqc, &one, &t).unwrap(),
                beta.pow(w).unwrap()
            );
        }
    }

    #[test]
    fn bad_elements_are_rejected() {
        let s = jones();
        let e12 = s.oqc.coalg.basis_element(1);
        let err = inv_knot(&s, &e12, &builtin("trefoil").unwrap()).unwrap_err();
        assert!(matches!(err, InvError::Precondition(_)));
        let err = inv_link(&s, &[Scalar::one()], &builtin("hopf").unwrap()).unwrap_err();
        assert!(matches!(err, InvError::Dimension { found: 1, dim: 4 }));
        let err = inv_tangle(&s.oqc, &builtin("hopf").unwrap()).unwrap_err();
        assert!(matches!(err, InvError::NotTangle));
    }

    #[test]
    fn cocommutative_fast_matches_the_engine_on_group_likes() {
        // a 2-dimensional group-like carrier with a symmetric form
        let coalg = coalg::Coalgebra::group_like(2);
        let beta = q("q^2");
        let b = Matrix::from_fn(2, 2, |i, j| if i == j { beta.clone() } else { q("1") });
        let b_inv = Matrix::from_fn(2, 2, |i, j| {
            if i == j {
                beta.recip().unwrap()
            } else {
                q("1")
            }
        });
        let s = OrientedQuantumCoalgebra {
            coalg,
            b,
            b_inv,
            t_d: Matrix::identity(2),
            t_u: Matrix::identity(2),
            strict: false,
        };
        let c = vec![q("1"), q("q^4")];
        for name in ["strand", "curl", "curl-op", "trefoil-tangle", "fig8-tangle"] {
            let t = builtin(name).unwrap();
            let f = inv_tangle(&s, &t).unwrap();
            let linear: Scalar = c
                .iter()
                .zip(&f)
                .map(|(cx, fx)| cx * fx)
                .fold(Scalar::zero(), |acc, v| &acc + &v);
            assert_eq!(
                cocommutative_fast(&s, &c, &t).unwrap(),
                linear,
                "{name}"
            );
        }
    }

    #[test]
    fn starting_wire_does_not_change_link_values() {
        let s = jones();
        let tr = trace(&s);
        let hopf = builtin("hopf").unwrap();
        let base = inv_link(&s, &tr, &hopf).unwrap();
        let walk = traverse(&hopf).unwrap();
        for (ci, comp) in walk.components.iter().enumerate() {
            for &w in &comp.wires {
                let starts = BTreeMap::from([(ci, w)]);
                assert_eq!(
                    inv_link_with_starts(&s, &tr, &hopf, &starts).unwrap(),
                    base,
                    "component {ci} wire {w}"
                );
            }
        }
    }
}
