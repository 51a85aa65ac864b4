//! Slice-by-slice tensor contraction.
//!
//! For a comatrix carrier whose twists act diagonally, the invariant can
//! be computed without any traversal at all: sweep the events bottom to
//! top, keeping a map from register contents (one matrix index per
//! wire) to scalars.  Cups and caps carry local extremum weights built
//! from the weight sequences hidden in the twists, crossings contribute
//! entries of `b` or `b^-1` with the rule shifts as weight ratios, and
//! a link's element enters at each component's first cup.  This shares
//! no code with the engine's factor contraction, which is the point:
//! [`oracle_contract`] exists to disagree with [`crate::inv_link`] when
//! one of them is wrong.

use std::collections::{hash_map::Entry, BTreeSet, HashMap};

use diagrams::{traverse, Diagram, Dir, Event, Geom, Kind, Side};
use exactnum::{Matrix, Scalar};
use structures::TwistOqc;

use crate::rules::{rule_for, FormKind};
use crate::{comatrix_size, InvError};

fn unsupported(msg: &str) -> InvError {
    InvError::Unsupported(msg.into())
}

/// Crossing transition: incoming arc pair to outgoing arcs and weight.
type Branches = HashMap<(u32, u32), Vec<(u32, u32, Scalar)>>;

/// Everything the sweep needs: comatrix side length, the weight
/// sequences recovered from the diagonal twists, and the forms.
struct ContractCtx<'a> {
    n: usize,
    wu: Vec<Scalar>,
    wd: Vec<Scalar>,
    wu_inv: Vec<Scalar>,
    wd_inv: Vec<Scalar>,
    b: &'a Matrix,
    b_inv: &'a Matrix,
}

impl<'a> ContractCtx<'a> {
    fn new(s: &'a TwistOqc) -> Result<ContractCtx<'a>, InvError> {
        let coalg = &s.oqc.coalg;
        let n = comatrix_size(coalg)
            .ok_or_else(|| unsupported("carrier is not a comatrix coalgebra"))?;
        let tu = s
            .oqc
            .t_u
            .diagonal()
            .ok_or_else(|| unsupported("t_u does not act diagonally"))?;
        let td = s
            .oqc
            .t_d
            .diagonal()
            .ok_or_else(|| unsupported("t_d does not act diagonally"))?;
        // the distinguished functional must be supported on the diagonal
        let mut gamma = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && !s.g[i * n + j].is_zero() {
                    return Err(unsupported(
                        "the distinguished functional is not diagonal",
                    ));
                }
            }
            gamma.push(s.g[i * n + i].clone());
        }
        // weights: normalize the up sequence by its action on column 0,
        // then split gamma as the product of the two sequences
        let wu: Vec<Scalar> = (0..n).map(|i| tu[i * n].clone()).collect();
        if wu.iter().any(Scalar::is_zero) || gamma.iter().any(Scalar::is_zero) {
            return Err(unsupported("twist weights are not invertible"));
        }
        let wd: Vec<Scalar> = (0..n).map(|i| &gamma[i] / &wu[i]).collect();
        for i in 0..n {
            for j in 0..n {
                if tu[i * n + j] != &wu[i] / &wu[j] || td[i * n + j] != &wd[i] / &wd[j] {
                    return Err(unsupported("twists are not of weight-ratio form"));
                }
            }
        }
        let wu_inv = wu.iter().map(|w| w.recip()).collect::<Result<_, _>>()?;
        let wd_inv = wd.iter().map(|w| w.recip()).collect::<Result<_, _>>()?;
        Ok(ContractCtx {
            n,
            wu,
            wd,
            wu_inv,
            wd_inv,
            b: &s.oqc.b,
            b_inv: &s.oqc.b_inv,
        })
    }

    /// `(w[a] / w[b])^k` for a leg `(a, b)`.
    fn ratio(w: &[Scalar], leg: (usize, usize), k: i64) -> Result<Scalar, InvError> {
        if k == 0 {
            return Ok(Scalar::one());
        }
        Ok((&w[leg.0] / &w[leg.1]).pow(k)?)
    }

    /// Run the sweep.  `element` (length `n`) gives the diagonal
    /// coordinates applied at each anchor cup; `init` is the entering
    /// arc index of an open tangle together with its boundary direction.
    fn sweep(
        &self,
        events: &[Event],
        anchors: &BTreeSet<usize>,
        element: &[Scalar],
        init: Option<(Dir, usize)>,
    ) -> Result<HashMap<Vec<u32>, Scalar>, InvError> {
        let n = self.n;
        let mut dirs: Vec<Dir> = Vec::new();
        let mut states: HashMap<Vec<u32>, Scalar> = HashMap::new();
        match init {
            Some((dir, arc)) => {
                dirs.push(dir);
                states.insert(vec![arc as u32], Scalar::one());
            }
            None => {
                states.insert(Vec::new(), Scalar::one());
            }
        }
        for (idx, ev) in events.iter().enumerate() {
            let mut next: HashMap<Vec<u32>, Scalar> = HashMap::new();
            match *ev {
                Event::Cup { pos, side } => {
                    let p = pos - 1;
                    for (key, coeff) in &states {
                        for (k, el) in element.iter().enumerate() {
                            let base = match side {
                                Side::Left => &self.wu_inv[k],
                                Side::Right => &self.wd[k],
                            };
                            let w = if anchors.contains(&idx) {
                                base * el
                            } else {
                                base.clone()
                            };
                            if w.is_zero() {
                                continue;
                            }
                            let mut nk = key.clone();
                            nk.splice(p..p, [k as u32, k as u32]);
                            add_term(&mut next, nk, coeff * &w);
                        }
                    }
                    let pair = match side {
                        Side::Left => [Dir::Down, Dir::Up],
                        Side::Right => [Dir::Up, Dir::Down],
                    };
                    dirs.splice(p..p, pair);
                }
                Event::Cap { pos, side } => {
                    let p = pos - 1;
                    for (key, coeff) in &states {
                        let (a, b) = (key[p] as usize, key[p + 1] as usize);
                        if a != b {
                            continue;
                        }
                        let w = match side {
                            Side::Left => self.wu[a].clone(),
                            Side::Right => self.wd_inv[a].clone(),
                        };
                        let mut nk = key.clone();
                        nk.drain(p..=p + 1);
                        add_term(&mut next, nk, coeff * &w);
                    }
                    dirs.drain(p..=p + 1);
                }
                Event::Cross { pos, geom } => {
                    let p = pos - 1;
                    let (da, db) = (dirs[p], dirs[p + 1]);
                    // branch matrix for this crossing class
                    let mut branches: Branches = HashMap::new();
                    for x in 0..n {
                        for y in 0..n {
                            for v in 0..n {
                                for w2 in 0..n {
                                    let (lo, lu, od, ud) = match geom {
                                        Geom::SwNe => {
                                            let lo =
                                                if da == Dir::Up { (x, w2) } else { (w2, x) };
                                            let lu = if db == Dir::Up { (y, v) } else { (v, y) };
                                            (lo, lu, da, db)
                                        }
                                        Geom::SeNw => {
                                            let lo =
                                                if db == Dir::Up { (y, v) } else { (v, y) };
                                            let lu = if da == Dir::Up { (x, w2) } else { (w2, x) };
                                            (lo, lu, db, da)
                                        }
                                    };
                                    let rule = rule_for(geom, od, ud);
                                    let form = match rule.form {
                                        FormKind::B => self.b,
                                        FormKind::BInv => self.b_inv,
                                    };
                                    let base = form.get(lo.0 * n + lo.1, lu.0 * n + lu.1);
                                    if base.is_zero() {
                                        continue;
                                    }
                                    let val = base
                                        * &Self::ratio(&self.wd, lo, rule.over_shift.0)?
                                        * Self::ratio(&self.wu, lo, rule.over_shift.1)?
                                        * Self::ratio(&self.wd, lu, rule.under_shift.0)?
                                        * Self::ratio(&self.wu, lu, rule.under_shift.1)?;
                                    branches.entry((x as u32, y as u32)).or_default().push((
                                        v as u32,
                                        w2 as u32,
                                        val,
                                    ));
                                }
                            }
                        }
                    }
                    for (key, coeff) in &states {
                        let Some(opts) = branches.get(&(key[p], key[p + 1])) else {
                            continue;
                        };
                        for (v, w2, val) in opts {
                            let mut nk = key.clone();
                            nk[p] = *v;
                            nk[p + 1] = *w2;
                            add_term(&mut next, nk, coeff * val);
                        }
                    }
                    dirs.swap(p, p + 1);
                }
            }
            states = next;
        }
        Ok(states)
    }
}

fn add_term(map: &mut HashMap<Vec<u32>, Scalar>, key: Vec<u32>, val: Scalar) {
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

/// Diagonal coordinates of the element, or `Unsupported` if it has any
/// off-diagonal support.
fn diagonal_coords(c: &[Scalar], n: usize) -> Result<Vec<Scalar>, InvError> {
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !c[i * n + j].is_zero() {
                return Err(unsupported("element is not diagonal in the comatrix basis"));
            }
        }
        diag.push(c[i * n + i].clone());
    }
    Ok(diag)
}

/// Evaluate a closed diagram — or the closure of a tangle — by slice
/// contraction, independent of the factor engine.  Restricted to
/// comatrix carriers with diagonal twists and diagonal elements.
pub fn oracle_contract(s: &TwistOqc, c: &[Scalar], d: &Diagram) -> Result<Scalar, InvError> {
    let closed;
    let d = match d.kind {
        Kind::Link => d,
        Kind::Tangle(_) => {
            closed = d.closure()?;
            &closed
        }
    };
    let ctx = ContractCtx::new(s)?;
    if c.len() != s.oqc.dim() {
        return Err(InvError::Dimension {
            found: c.len(),
            dim: s.oqc.dim(),
        });
    }
    let element = diagonal_coords(c, ctx.n)?;
    let tr = traverse(d)?;
    let anchors: BTreeSet<usize> = tr
        .components
        .iter()
        .map(|comp| {
            comp.anchor
                .ok_or_else(|| InvError::Internal("closed component without a cup".into()))
        })
        .collect::<Result<_, _>>()?;
    let states = ctx.sweep(&d.events, &anchors, &element, None)?;
    Ok(states.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero))
}

/// Value of a 1–1 tangle on the basis element `e[i, j]` by slice
/// contraction, including the boundary weight that accounts for the
/// open strand's extrema.
pub fn contract_tangle(
    s: &TwistOqc,
    t: &Diagram,
    i: usize,
    j: usize,
) -> Result<Scalar, InvError> {
    let orient = match t.kind {
        Kind::Tangle(dir) => dir,
        Kind::Link => return Err(InvError::NotTangle),
    };
    t.validate()?;
    let ctx = ContractCtx::new(s)?;
    if i >= ctx.n || j >= ctx.n {
        return Err(InvError::Precondition(format!(
            "basis pair ({i}, {j}) outside comatrix side {}",
            ctx.n
        )));
    }
    let enter = if orient == Dir::Up { i } else { j };
    let leave = if orient == Dir::Up { j } else { i };
    let ones = vec![Scalar::one(); ctx.n];
    let states = ctx.sweep(&t.events, &BTreeSet::new(), &ones, Some((orient, enter)))?;
    let total = states
        .get(&vec![leave as u32])
        .cloned()
        .unwrap_or_else(Scalar::zero);
    // boundary weight for the open strand, always on its first-walked
    // index (the bottom of an up tangle walks off the i side)
    let mut ups = 0i64;
    let mut downs = 0i64;
    for ev in &t.events {
        match *ev {
            Event::Cup { side: Side::Left, .. } => ups += 1,
            Event::Cap { side: Side::Left, .. } => ups -= 1,
            Event::Cap { side: Side::Right, .. } => downs += 1,
            Event::Cup { side: Side::Right, .. } => downs -= 1,
            _ => {}
        }
    }
    Ok(&total * &(&ctx.wu[i].pow(ups)? * &ctx.wd[i].pow(downs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{inv_knot, inv_link, inv_tangle, trace_element};
    use diagrams::builtin;
    use structures::{homfly_structure, homfly_table, jones_structure, trivial_structure};

    #[test]
    fn tangle_contraction_matches_the_engine() {
        let s = jones_structure().unwrap();
        for name in ["strand", "curl", "curl-op", "trefoil-tangle", "fig8-tangle"] {
            let t = builtin(name).unwrap();
            let f = inv_tangle(&s.oqc, &t).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(
                        contract_tangle(&s, &t, i, j).unwrap(),
                        f[i * 2 + j],
                        "{name} e[{i},{j}]"
                    );
                }
            }
        }
    }

    #[test]
    fn link_contraction_matches_the_engine() {
        let s = jones_structure().unwrap();
        let tr = trace_element(&s.oqc.coalg).unwrap();
        for name in [
            "trefoil",
            "trefoil-mirror",
            "fig8",
            "hopf",
            "borromean",
            "circle-cw",
            "circle-ccw",
        ] {
            let l = builtin(name).unwrap();
            assert_eq!(
                oracle_contract(&s, &tr, &l).unwrap(),
                inv_link(&s, &tr, &l).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn tangles_contract_through_their_closure() {
        let s = jones_structure().unwrap();
        let tr = trace_element(&s.oqc.coalg).unwrap();
        for name in ["curl", "curl-op", "trefoil-tangle", "fig8-tangle"] {
            let t = builtin(name).unwrap();
            assert_eq!(
                oracle_contract(&s, &tr, &t).unwrap(),
                inv_knot(&s, &tr, &t).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn homfly_contraction_matches_the_engine() {
        let s = homfly_structure(&homfly_table(3)).unwrap();
        let tr = trace_element(&s.oqc.coalg).unwrap();
        for name in ["trefoil", "hopf"] {
            let l = builtin(name).unwrap();
            assert_eq!(
                oracle_contract(&s, &tr, &l).unwrap(),
                inv_link(&s, &tr, &l).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn anchor_weights_scale_per_component() {
        let s = jones_structure().unwrap();
        let tr = trace_element(&s.oqc.coalg).unwrap();
        let two = Scalar::from_int(2);
        let scaled: Vec<Scalar> = tr.iter().map(|x| &two * x).collect();
        let hopf = builtin("hopf").unwrap();
        let base = oracle_contract(&s, &tr, &hopf).unwrap();
        let got = oracle_contract(&s, &scaled, &hopf).unwrap();
        assert_eq!(got, &(&two * &two) * &base);
        assert_eq!(got, inv_link(&s, &scaled, &hopf).unwrap());
    }

    #[test]
    fn one_dimensional_carriers_contract_to_writhe_powers() {
        let s = trivial_structure(&Scalar::q_pow(3)).unwrap();
        let one = vec![Scalar::one()];
        let got = oracle_contract(&s, &one, &builtin("trefoil").unwrap()).unwrap();
        assert_eq!(got, Scalar::q_pow(9));
        assert_eq!(got, inv_knot(&s, &one, &builtin("trefoil").unwrap()).unwrap());
    }

    #[test]
    fn non_comatrix_carriers_are_unsupported() {
        use structures::OrientedQuantumCoalgebra;
        let s = TwistOqc {
            oqc: OrientedQuantumCoalgebra {
                coalg: coalg::Coalgebra::group_like(2),
                b: Matrix::identity(2),
                b_inv: Matrix::identity(2),
                t_d: Matrix::identity(2),
                t_u: Matrix::identity(2),
                strict: true,
            },
            g: vec![Scalar::one(), Scalar::one()],
            g_inv: vec![Scalar::one(), Scalar::one()],
        };
        let tr = vec![Scalar::one(), Scalar::zero()];
        let err = oracle_contract(&s, &tr, &builtin("circle-cw").unwrap());
        assert!(matches!(err, Err(InvError::Unsupported(_))));
    }
}
