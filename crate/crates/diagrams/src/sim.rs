//! Register simulation: builds the wire graph of a diagram and checks the
//! wiring event by event.

use crate::{DiagError, Diagram, Dir, Event, Geom, Kind, Side};

/// What a wire end is attached to.  The `usize` is the event index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Conn {
    OpenBottom,
    OpenTop,
    Cup(usize),
    Cap(usize),
    Cross(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct WireData {
    pub dir: Dir,
    pub top: Option<Conn>,
    pub bottom: Option<Conn>,
}

/// Resolved event record with the wires it touched.
#[derive(Clone, Debug)]
pub(crate) enum EvRec {
    Cup { side: Side, l: usize, r: usize },
    Cap { side: Side, l: usize, r: usize },
    Cross { over: (usize, usize), under: (usize, usize) },
}

/// A fully wired diagram.  Construction succeeds exactly when the event
/// list is a consistent single-strand tangle or a closed link.
#[derive(Clone, Debug)]
pub(crate) struct Sim {
    pub wires: Vec<WireData>,
    pub recs: Vec<EvRec>,
    /// Entry wire of the open strand (tangles only): the bottom wire for an
    /// upward tangle, the top wire for a downward one.
    pub entry: Option<usize>,
}

/// One step of a strand walk, as seen at the connection just crossed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum StepRecord {
    /// A turn: the extremum class in census order `u-`, `u+`, `d+`, `d-`.
    Ext(usize),
    /// Passage through a crossing on its over or under strand.
    Line {
        event: usize,
        over: bool,
        dir: Dir,
    },
}

pub(crate) const EXT_U_MINUS: usize = 0;
pub(crate) const EXT_U_PLUS: usize = 1;
pub(crate) const EXT_D_PLUS: usize = 2;
pub(crate) const EXT_D_MINUS: usize = 3;

impl Sim {
    pub fn build(d: &Diagram) -> Result<Sim, DiagError> {
        let mut sim = Sim {
            wires: Vec::new(),
            recs: Vec::new(),
            entry: None,
        };
        let mut reg: Vec<usize> = Vec::new();
        if let Kind::Tangle(orient) = d.kind {
            let w = sim.new_wire(orient);
            sim.wires[w].bottom = Some(Conn::OpenBottom);
            reg.push(w);
        }

        let fail = |event: usize, msg: String| DiagError::Invalid { event, msg };

        for (idx, ev) in d.events.iter().enumerate() {
            match *ev {
                Event::Cup { pos, side } => {
                    if pos < 1 || pos > reg.len() + 1 {
                        return Err(fail(
                            idx,
                            format!("cup position {pos} outside register of width {}", reg.len()),
                        ));
                    }
                    let (ld, rd) = match side {
                        Side::Left => (Dir::Down, Dir::Up),
                        Side::Right => (Dir::Up, Dir::Down),
                    };
                    let l = sim.new_wire(ld);
                    let r = sim.new_wire(rd);
                    sim.wires[l].bottom = Some(Conn::Cup(idx));
                    sim.wires[r].bottom = Some(Conn::Cup(idx));
                    reg.splice(pos - 1..pos - 1, [l, r]);
                    sim.recs.push(EvRec::Cup { side, l, r });
                }
                Event::Cap { pos, side } => {
                    if pos < 1 || pos + 1 > reg.len() {
                        return Err(fail(
                            idx,
                            format!("cap position {pos} outside register of width {}", reg.len()),
                        ));
                    }
                    let (l, r) = (reg[pos - 1], reg[pos]);
                    let want = match side {
                        Side::Left => (Dir::Up, Dir::Down),
                        Side::Right => (Dir::Down, Dir::Up),
                    };
                    let got = (sim.wires[l].dir, sim.wires[r].dir);
                    if got != want {
                        return Err(fail(
                            idx,
                            format!(
                                "cap {side} needs wires ({}, {}) but found ({}, {})",
                                want.0, want.1, got.0, got.1
                            ),
                        ));
                    }
                    sim.wires[l].top = Some(Conn::Cap(idx));
                    sim.wires[r].top = Some(Conn::Cap(idx));
                    reg.drain(pos - 1..pos + 1);
                    sim.recs.push(EvRec::Cap { side, l, r });
                }
                Event::Cross { pos, geom } => {
                    if pos < 1 || pos + 1 > reg.len() {
                        return Err(fail(
                            idx,
                            format!(
                                "crossing position {pos} outside register of width {}",
                                reg.len()
                            ),
                        ));
                    }
                    let (a, b) = (reg[pos - 1], reg[pos]);
                    // The strands swap columns, so each outgoing wire keeps
                    // the direction of the incoming wire it continues.
                    let c = sim.new_wire(sim.wires[b].dir);
                    let dd = sim.new_wire(sim.wires[a].dir);
                    sim.wires[a].top = Some(Conn::Cross(idx));
                    sim.wires[b].top = Some(Conn::Cross(idx));
                    sim.wires[c].bottom = Some(Conn::Cross(idx));
                    sim.wires[dd].bottom = Some(Conn::Cross(idx));
                    let (over, under) = match geom {
                        Geom::SwNe => ((a, dd), (b, c)),
                        Geom::SeNw => ((b, c), (a, dd)),
                    };
                    reg[pos - 1] = c;
                    reg[pos] = dd;
                    sim.recs.push(EvRec::Cross { over, under });
                }
            }
        }

        match d.kind {
            Kind::Tangle(orient) => {
                if reg.len() != 1 {
                    return Err(DiagError::Malformed(format!(
                        "tangle ends with {} open wires instead of 1",
                        reg.len()
                    )));
                }
                let w = reg[0];
                if sim.wires[w].dir != orient {
                    return Err(DiagError::Malformed(format!(
                        "tangle top flows {} but the boundary is oriented {}",
                        sim.wires[w].dir, orient
                    )));
                }
                sim.wires[w].top = Some(Conn::OpenTop);
                let entry = match orient {
                    Dir::Up => 0,
                    Dir::Down => w,
                };
                sim.entry = Some(entry);
                sim.check_single_strand(entry)?;
            }
            Kind::Link => {
                if !reg.is_empty() {
                    return Err(DiagError::Malformed(format!(
                        "link ends with {} open wires",
                        reg.len()
                    )));
                }
            }
        }
        Ok(sim)
    }

    fn new_wire(&mut self, dir: Dir) -> usize {
        self.wires.push(WireData {
            dir,
            top: None,
            bottom: None,
        });
        self.wires.len() - 1
    }

    /// Follow the strand through wire `w` in its flow direction.  Returns
    /// the record of the connection crossed plus the next wire, or `None`
    /// at an open end.
    pub fn step(&self, w: usize) -> Option<(StepRecord, usize)> {
        let conn = match self.wires[w].dir {
            Dir::Up => self.wires[w].top,
            Dir::Down => self.wires[w].bottom,
        }?;
        match conn {
            Conn::OpenBottom | Conn::OpenTop => None,
            Conn::Cup(e) => {
                let (side, l, r) = match self.recs[e] {
                    EvRec::Cup { side, l, r } => (side, l, r),
                    _ => return None,
                };
                let ext = match side {
                    Side::Left => EXT_U_PLUS,
                    Side::Right => EXT_D_MINUS,
                };
                Some((StepRecord::Ext(ext), if w == l { r } else { l }))
            }
            Conn::Cap(e) => {
                let (side, l, r) = match self.recs[e] {
                    EvRec::Cap { side, l, r } => (side, l, r),
                    _ => return None,
                };
                let ext = match side {
                    Side::Left => EXT_U_MINUS,
                    Side::Right => EXT_D_PLUS,
                };
                Some((StepRecord::Ext(ext), if w == l { r } else { l }))
            }
            Conn::Cross(e) => {
                let (over, under) = match self.recs[e] {
                    EvRec::Cross { over, under } => (over, under),
                    _ => return None,
                };
                let (is_over, pair) = if w == over.0 || w == over.1 {
                    (true, over)
                } else {
                    (false, under)
                };
                let next = if w == pair.0 { pair.1 } else { pair.0 };
                Some((
                    StepRecord::Line {
                        event: e,
                        over: is_over,
                        dir: self.wires[w].dir,
                    },
                    next,
                ))
            }
        }
    }

    /// Walk the open strand and verify it reaches every wire; a leftover
    /// wire means the tangle carries a disjoint closed component.
    fn check_single_strand(&self, entry: usize) -> Result<(), DiagError> {
        let mut seen = vec![false; self.wires.len()];
        seen[entry] = true;
        let mut cur = entry;
        for _ in 0..self.wires.len() {
            match self.step(cur) {
                Some((_, next)) => {
                    seen[next] = true;
                    cur = next;
                }
                None => break,
            }
        }
        if let Some(stray) = seen.iter().position(|s| !s) {
            let event = match self.wires[stray].bottom {
                Some(Conn::Cup(e)) | Some(Conn::Cross(e)) => e,
                _ => 0,
            };
            return Err(DiagError::Invalid {
                event,
                msg: "tangle contains a closed component disjoint from its strand".into(),
            });
        }
        Ok(())
    }
}
