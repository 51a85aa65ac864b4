//! Strand traversal: component census, crossing-line labels, rotation
//! counts, Whitney degrees, and writhe.

use std::collections::BTreeMap;
use std::fmt;

use crate::sim::{Conn, EvRec, Sim, StepRecord, EXT_D_MINUS, EXT_D_PLUS, EXT_U_MINUS, EXT_U_PLUS};
use crate::{DiagError, Diagram, Dir, Event, Geom, Kind};

/// Whether a strand passes over or under at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pass {
    Over,
    Under,
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pass::Over => "over",
            Pass::Under => "under",
        })
    }
}

/// One stop on a strand walk: a turn through an extremum, or passage
/// through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    /// clockwise maximum `u-`
    UMinus,
    /// counterclockwise minimum `u+`
    UPlus,
    /// counterclockwise maximum `d+`
    DPlus,
    /// clockwise minimum `d-`
    DMinus,
    /// crossing passage; `event` is the 0-based index of the crossing event
    Line { event: usize, pass: Pass, dir: Dir },
}

/// Extrema counts of one component, by census class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtremaCensus {
    pub u_minus: usize,
    pub u_plus: usize,
    pub d_plus: usize,
    pub d_minus: usize,
}

impl ExtremaCensus {
    /// Whitney degree: half the clockwise minus counterclockwise count.
    fn degree(&self) -> i64 {
        let cw = (self.u_minus + self.d_minus) as i64;
        let ccw = (self.u_plus + self.d_plus) as i64;
        (cw - ccw) / 2
    }
}

/// One strand's passage through a crossing, with its component, 1-based
/// label in traversal order, direction, and the rotation counts of the
/// rest of that component's walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineSlot {
    pub component: usize,
    pub label: usize,
    pub dir: Dir,
    pub u_d: i64,
    pub u_u: i64,
}

/// A crossing as seen by the traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// 0-based index of the event in the diagram.
    pub event: usize,
    pub geom: Geom,
    pub over: LineSlot,
    pub under: LineSlot,
    /// Crossing sign: `+1` when the southwest–northeast strand is on top of
    /// two parallel strands or the southeast–northwest strand on top of two
    /// antiparallel ones, else `-1`.
    pub sign: i64,
}

/// One closed or open strand, walked from its canonical starting wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Wire the walk starts on.
    pub start_wire: usize,
    /// Event index of the component's earliest cup (`None` for the open
    /// strand of a tangle).  Canonical component order sorts by this.
    pub anchor: Option<usize>,
    /// All wires of the component, in walk order.
    pub wires: Vec<usize>,
    /// The walk itself.
    pub visits: Vec<Visit>,
    /// Number of crossing passages (labels run `1..=lines`).
    pub lines: usize,
    pub extrema: ExtremaCensus,
    /// Whitney degree of the component.
    pub degree: i64,
}

/// Full traversal of a diagram: components in canonical order (tangles
/// walk their strand; link components are ordered by their first cup, each
/// entered on that cup's outgoing leg) plus the crossing table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traversal {
    pub components: Vec<Component>,
    /// Crossings in event order.
    pub crossings: Vec<Crossing>,
    /// Sum of crossing signs.
    pub writhe: i64,
}

impl Traversal {
    /// Census of each component as display tokens, e.g.
    /// `x1:over:up (u-) (d-) x1:under:up`.  Crossings are numbered 1-based
    /// in event order.
    pub fn census_strings(&self) -> Vec<String> {
        let ordinal: BTreeMap<usize, usize> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| (c.event, i + 1))
            .collect();
        self.components
            .iter()
            .map(|comp| {
                let toks: Vec<String> = comp
                    .visits
                    .iter()
                    .map(|v| match *v {
                        Visit::UMinus => "(u-)".to_string(),
                        Visit::UPlus => "(u+)".to_string(),
                        Visit::DPlus => "(d+)".to_string(),
                        Visit::DMinus => "(d-)".to_string(),
                        Visit::Line { event, pass, dir } => {
                            format!("x{}:{pass}:{dir}", ordinal.get(&event).copied().unwrap_or(0))
                        }
                    })
                    .collect();
                toks.join(" ")
            })
            .collect()
    }
}

/// Traverse a diagram from its canonical starting points.
pub fn traverse(d: &Diagram) -> Result<Traversal, DiagError> {
    traverse_with_starts(d, &BTreeMap::new())
}

/// Traverse a diagram, overriding the starting wire of selected link
/// components (keyed by component index in canonical order).  Any wire of
/// the component is admissible; tangle strands always start at their open
/// bottom or top end.
pub fn traverse_with_starts(
    d: &Diagram,
    starts: &BTreeMap<usize, usize>,
) -> Result<Traversal, DiagError> {
    struct Walk {
        anchor: Option<usize>,
        start: usize,
        visits: Vec<Visit>,
        wires: Vec<usize>,
    }

    let sim = Sim::build(d)?;
    let mut walks: Vec<Walk> = Vec::new();

    match d.kind {
        Kind::Tangle(_) => {
            let entry = sim.entry.unwrap_or(0);
            let (visits, wires) = walk(&sim, entry, false)?;
            walks.push(Walk {
                anchor: None,
                start: entry,
                visits,
                wires,
            });
        }
        Kind::Link => {
            let mut comps = link_components(&sim);
            comps.sort_by_key(|(anchor, _, _)| *anchor);
            for (ci, (anchor, start, group)) in comps.into_iter().enumerate() {
                let start = match starts.get(&ci) {
                    Some(&w) => {
                        if !group.contains(&w) {
                            return Err(DiagError::Malformed(format!(
                                "wire {w} is not on component {ci}"
                            )));
                        }
                        w
                    }
                    None => start,
                };
                let (visits, wires) = walk(&sim, start, true)?;
                walks.push(Walk {
                    anchor: Some(anchor),
                    start,
                    visits,
                    wires,
                });
            }
        }
    }

    let mut components = Vec::new();
    let mut slots: BTreeMap<usize, (Option<LineSlot>, Option<LineSlot>)> = BTreeMap::new();
    for (ci, Walk { anchor, start, visits, wires }) in walks.into_iter().enumerate() {
        // Rotation counts of everything after each visit, by reverse scan.
        let mut rest = [0i64; 4];
        let mut counts: Vec<(i64, i64)> = vec![(0, 0); visits.len()];
        for (i, v) in visits.iter().enumerate().rev() {
            counts[i] = (rest[EXT_D_PLUS] - rest[EXT_D_MINUS], rest[EXT_U_PLUS] - rest[EXT_U_MINUS]);
            if let Some(e) = ext_index(v) {
                rest[e] += 1;
            }
        }

        let mut census = ExtremaCensus::default();
        let mut label = 0usize;
        for (i, v) in visits.iter().enumerate() {
            match *v {
                Visit::UMinus => census.u_minus += 1,
                Visit::UPlus => census.u_plus += 1,
                Visit::DPlus => census.d_plus += 1,
                Visit::DMinus => census.d_minus += 1,
                Visit::Line { event, pass, dir } => {
                    label += 1;
                    let slot = LineSlot {
                        component: ci,
                        label,
                        dir,
                        u_d: counts[i].0,
                        u_u: counts[i].1,
                    };
                    let entry = slots.entry(event).or_insert((None, None));
                    match pass {
                        Pass::Over => entry.0 = Some(slot),
                        Pass::Under => entry.1 = Some(slot),
                    }
                }
            }
        }

        let cw = census.u_minus + census.d_minus;
        let ccw = census.u_plus + census.d_plus;
        if (cw + ccw) % 2 != 0 {
            return Err(DiagError::Malformed(
                "traversal produced an odd extrema count".into(),
            ));
        }
        components.push(Component {
            start_wire: start,
            anchor,
            wires,
            lines: label,
            degree: census.degree(),
            visits,
            extrema: census,
        });
    }

    let mut crossings = Vec::new();
    let mut writhe = 0i64;
    for (event, (over, under)) in slots {
        let geom = match d.events.get(event) {
            Some(Event::Cross { geom, .. }) => *geom,
            _ => {
                return Err(DiagError::Malformed(format!(
                    "traversal recorded a crossing at non-crossing event {event}"
                )));
            }
        };
        let (over, under) = match (over, under) {
            (Some(o), Some(u)) => (o, u),
            _ => {
                return Err(DiagError::Invalid {
                    event,
                    msg: "crossing not fully reached by the traversal".into(),
                });
            }
        };
        let parallel = over.dir == under.dir;
        let sign = if (geom == Geom::SwNe) == parallel { 1 } else { -1 };
        writhe += sign;
        crossings.push(Crossing {
            event,
            geom,
            over,
            under,
            sign,
        });
    }

    Ok(Traversal {
        components,
        crossings,
        writhe,
    })
}

/// Writhe of a diagram: the sum of its crossing signs.
pub fn writhe(d: &Diagram) -> Result<i64, DiagError> {
    Ok(traverse(d)?.writhe)
}

/// Whitney degrees of the components, in canonical component order.
pub fn whitney_degrees(d: &Diagram) -> Result<Vec<i64>, DiagError> {
    Ok(traverse(d)?.components.iter().map(|c| c.degree).collect())
}

fn ext_index(v: &Visit) -> Option<usize> {
    match v {
        Visit::UMinus => Some(EXT_U_MINUS),
        Visit::UPlus => Some(EXT_U_PLUS),
        Visit::DPlus => Some(EXT_D_PLUS),
        Visit::DMinus => Some(EXT_D_MINUS),
        Visit::Line { .. } => None,
    }
}

fn to_visit(rec: StepRecord) -> Visit {
    match rec {
        StepRecord::Ext(EXT_U_MINUS) => Visit::UMinus,
        StepRecord::Ext(EXT_U_PLUS) => Visit::UPlus,
        StepRecord::Ext(EXT_D_PLUS) => Visit::DPlus,
        StepRecord::Ext(_) => Visit::DMinus,
        StepRecord::Line { event, over, dir } => Visit::Line {
            event,
            pass: if over { Pass::Over } else { Pass::Under },
            dir,
        },
    }
}

fn walk(sim: &Sim, start: usize, cyclic: bool) -> Result<(Vec<Visit>, Vec<usize>), DiagError> {
    let mut visits = Vec::new();
    let mut wires = vec![start];
    let mut cur = start;
    for _ in 0..=2 * sim.wires.len() {
        match sim.step(cur) {
            None => {
                if cyclic {
                    return Err(DiagError::Malformed(
                        "closed walk ran into an open end".into(),
                    ));
                }
                return Ok((visits, wires));
            }
            Some((rec, next)) => {
                visits.push(to_visit(rec));
                if cyclic && next == start {
                    return Ok((visits, wires));
                }
                wires.push(next);
                cur = next;
            }
        }
    }
    Err(DiagError::Malformed("strand walk did not close".into()))
}

/// Partition a link's wires into components and pick each component's
/// canonical start: the outgoing leg of its earliest cup.  Returns
/// `(anchor event, start wire, wires)` per component, unordered.
fn link_components(sim: &Sim) -> Vec<(usize, usize, Vec<usize>)> {
    let mut seen = vec![false; sim.wires.len()];
    let mut comps = Vec::new();
    for w in 0..sim.wires.len() {
        if seen[w] {
            continue;
        }
        let mut group = Vec::new();
        let mut cur = w;
        while !seen[cur] {
            seen[cur] = true;
            group.push(cur);
            match sim.step(cur) {
                Some((_, next)) => cur = next,
                None => break,
            }
        }
        // Earliest cup of the component, preferring the left leg on ties.
        let mut best: Option<(usize, bool, usize)> = None;
        for &wid in &group {
            if let Some(Conn::Cup(e)) = sim.wires[wid].bottom {
                let role_r = matches!(&sim.recs[e], EvRec::Cup { r, .. } if *r == wid);
                let key = (e, role_r, wid);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (anchor, start) = match best {
            Some((e, _, _)) => {
                let start = match &sim.recs[e] {
                    EvRec::Cup { side, l, r } => match side {
                        crate::Side::Left => *r,
                        crate::Side::Right => *l,
                    },
                    _ => w,
                };
                (e, start)
            }
            None => (usize::MAX, w),
        };
        comps.push((anchor, start, group));
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn the_curl_walk_is_frozen() {
        let tr = traverse(&builtin("curl").unwrap()).unwrap();
        assert_eq!(tr.components.len(), 1);
        assert_eq!(
            tr.census_strings(),
            vec!["x1:over:up (u-) (d-) x1:under:up".to_string()]
        );
        let c = &tr.crossings[0];
        assert_eq!((c.over.label, c.over.u_d, c.over.u_u), (1, -1, -1));
        assert_eq!((c.under.label, c.under.u_d, c.under.u_u), (2, 0, 0));
        assert_eq!(c.sign, 1);
        assert_eq!(tr.writhe, 1);
        assert_eq!(tr.components[0].degree, 1);
    }

    #[test]
    fn trefoil_tangle_counts_are_frozen() {
        let tr = traverse(&builtin("trefoil-tangle").unwrap()).unwrap();
        assert_eq!(tr.writhe, 3);
        assert_eq!(tr.crossings.len(), 3);
        assert_eq!(tr.components[0].lines, 6);
        assert_eq!(tr.components[0].degree, -1);
    }

    #[test]
    fn closure_shifts_the_whitney_degree() {
        let t = builtin("trefoil-tangle").unwrap();
        assert_eq!(whitney_degrees(&t.closure().unwrap()).unwrap(), vec![-2]);
        assert_eq!(writhe(&t.closure().unwrap()).unwrap(), 3);
    }

    #[test]
    fn link_degrees_match_the_known_tables() {
        let cases = [
            ("hopf", vec![-1, 1]),
            ("borromean", vec![-1, 1, 1]),
            ("circle-cw", vec![1]),
            ("circle-ccw", vec![-1]),
            ("trefoil", vec![-2]),
            ("fig8", vec![1]),
        ];
        for (name, want) in cases {
            let d = builtin(name).unwrap();
            assert_eq!(whitney_degrees(&d).unwrap(), want, "degrees of {name}");
        }
    }

    #[test]
    fn mirroring_negates_the_writhe() {
        for name in ["trefoil", "fig8", "hopf", "borromean"] {
            let d = builtin(name).unwrap();
            assert_eq!(
                writhe(&d.mirror()).unwrap(),
                -writhe(&d).unwrap(),
                "mirror writhe of {name}"
            );
        }
    }

    #[test]
    fn reversal_preserves_writhe_and_degrees_up_to_sign() {
        for name in ["trefoil", "hopf", "borromean", "curl"] {
            let d = builtin(name).unwrap();
            assert_eq!(writhe(&d.reverse()).unwrap(), writhe(&d).unwrap());
        }
    }

    #[test]
    fn start_overrides_must_stay_on_their_component() {
        let hopf = builtin("hopf").unwrap();
        let tr = traverse(&hopf).unwrap();
        let foreign = tr.components[1].wires[0];
        let mut starts = BTreeMap::new();
        starts.insert(0usize, foreign);
        assert!(traverse_with_starts(&hopf, &starts).is_err());
        // Every wire of a component is an admissible start for it.
        for (ci, comp) in tr.components.iter().enumerate() {
            for &w in &comp.wires {
                let mut starts = BTreeMap::new();
                starts.insert(ci, w);
                let alt = traverse_with_starts(&hopf, &starts).unwrap();
                assert_eq!(alt.writhe, tr.writhe);
                assert_eq!(alt.components[ci].degree, tr.components[ci].degree);
            }
        }
    }

    #[test]
    fn upright_lines_balance_their_rotation_counts() {
        // Lines traversed upward in an upward tangle or closed component
        // see equally many clockwise and counterclockwise turns ahead.
        let tr = traverse(&builtin("curl").unwrap()).unwrap();
        for c in &tr.crossings {
            for slot in [c.over, c.under] {
                if slot.dir == Dir::Up {
                    assert_eq!(slot.u_d, slot.u_u);
                }
            }
        }
    }
}
