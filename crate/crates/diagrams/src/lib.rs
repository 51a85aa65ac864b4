//! Sliced Morse diagrams of oriented 1–1 tangles and links.
//!
//! A diagram is a bottom-to-top sequence of elementary events — cups (local
//! minima), caps (local maxima), and crossings — acting on a register of
//! vertical wires.  Tangle diagrams start and end with a single open wire;
//! link diagrams start and end with an empty register.  The crate provides:
//!
//! * wiring validation with located errors (no panics on bad input);
//! * strand traversal: components in canonical order, crossing-line labels,
//!   rotation counts, extrema censuses, Whitney degrees, and writhe;
//! * diagram algebra: vertical composition of tangles, reversal, mirror
//!   image, and the closure of a tangle into a link;
//! * a small text format (`parse` / `render` round-trip exactly);
//! * seeded perturbation by regular-isotopy moves together with a random
//!   tangle generator, for invariance testing.

mod builtins;
mod dsl;
mod moves;
mod sim;
mod traverse;

use std::fmt;

use thiserror::Error;

pub use builtins::{builtin, builtin_names};
pub use moves::{perturb, perturb_trace, random_tangle};
pub use traverse::{
    traverse, traverse_with_starts, whitney_degrees, writhe, Component, Crossing, ExtremaCensus,
    LineSlot, Traversal, Visit,
};

/// Orientation of a wire or of a tangle boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    /// The opposite direction.
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Up => "up",
            Dir::Down => "down",
        })
    }
}

/// Which side of a cup or cap the orientation enters the extremum on.
///
/// A `left` cup creates the wire pair (down, up); a `right` cup creates
/// (up, down).  A `left` cap consumes (up, down); a `right` cap consumes
/// (down, up).  In each case the named side is the leg whose flow runs
/// into the turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// The opposite side.
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Geometry of a crossing: which diagonal passes over.
///
/// `SwNe` has the southwest–northeast strand on top, `SeNw` the
/// southeast–northwest strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geom {
    SwNe,
    SeNw,
}

impl Geom {
    /// The opposite geometry (mirror image of the crossing).
    pub fn flip(self) -> Geom {
        match self {
            Geom::SwNe => Geom::SeNw,
            Geom::SeNw => Geom::SwNe,
        }
    }
}

impl fmt::Display for Geom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geom::SwNe => "sw_ne",
            Geom::SeNw => "se_nw",
        })
    }
}

/// One elementary diagram event.  Positions are 1-based: a cup inserts two
/// wires before position `pos`, while caps and crossings act on the wires
/// at positions `pos` and `pos + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Cup { pos: usize, side: Side },
    Cap { pos: usize, side: Side },
    Cross { pos: usize, geom: Geom },
}

impl Event {
    /// The 1-based register position the event acts at.
    pub fn pos(&self) -> usize {
        match *self {
            Event::Cup { pos, .. } | Event::Cap { pos, .. } | Event::Cross { pos, .. } => pos,
        }
    }

    fn with_pos(&self, pos: usize) -> Event {
        match *self {
            Event::Cup { side, .. } => Event::Cup { pos, side },
            Event::Cap { side, .. } => Event::Cap { pos, side },
            Event::Cross { geom, .. } => Event::Cross { pos, geom },
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Event::Cup { pos, side } => write!(f, "cup {pos} {side}"),
            Event::Cap { pos, side } => write!(f, "cap {pos} {side}"),
            Event::Cross { pos, geom } => write!(f, "cross {pos} {geom}"),
        }
    }
}

/// Diagram kind: an open 1–1 tangle with a boundary orientation, or a
/// closed link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Tangle(Dir),
    Link,
}

/// A sliced diagram: a kind plus its bottom-to-top event list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub kind: Kind,
    pub events: Vec<Event>,
}

/// Errors from parsing or validating diagrams.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiagError {
    /// Text could not be read as a diagram; positions are 1-based.
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    /// The wiring breaks at a specific event (0-based index).
    #[error("event {event}: {msg}")]
    Invalid { event: usize, msg: String },
    /// The diagram as a whole is inconsistent (e.g. open wires left over).
    #[error("{0}")]
    Malformed(String),
}

impl Diagram {
    /// A tangle diagram with the given boundary orientation.
    pub fn tangle(orient: Dir, events: Vec<Event>) -> Diagram {
        Diagram {
            kind: Kind::Tangle(orient),
            events,
        }
    }

    /// A link diagram.
    pub fn link(events: Vec<Event>) -> Diagram {
        Diagram {
            kind: Kind::Link,
            events,
        }
    }

    /// Check the wiring: every event must act inside the register, cap
    /// orientations must match, the boundary must close correctly, and a
    /// tangle must consist of a single open strand.
    pub fn validate(&self) -> Result<(), DiagError> {
        sim::Sim::build(self).map(|_| ())
    }

    /// Vertical composition: stack `other` on top of `self`.  Both must be
    /// tangles with the same boundary orientation.
    pub fn star(&self, other: &Diagram) -> Result<Diagram, DiagError> {
        match (self.kind, other.kind) {
            (Kind::Tangle(a), Kind::Tangle(b)) if a == b => {
                let mut events = self.events.clone();
                events.extend_from_slice(&other.events);
                Ok(Diagram::tangle(a, events))
            }
            _ => Err(DiagError::Malformed(
                "vertical composition needs two tangles with the same orientation".into(),
            )),
        }
    }

    /// Reverse the orientation of every strand.  Cups and caps swap sides;
    /// a tangle boundary flips.
    pub fn reverse(&self) -> Diagram {
        let events = self
            .events
            .iter()
            .map(|ev| match *ev {
                Event::Cup { pos, side } => Event::Cup {
                    pos,
                    side: side.flip(),
                },
                Event::Cap { pos, side } => Event::Cap {
                    pos,
                    side: side.flip(),
                },
                cross => cross,
            })
            .collect();
        let kind = match self.kind {
            Kind::Tangle(d) => Kind::Tangle(d.flip()),
            Kind::Link => Kind::Link,
        };
        Diagram { kind, events }
    }

    /// Mirror image: every crossing switches which strand passes over.
    pub fn mirror(&self) -> Diagram {
        let events = self
            .events
            .iter()
            .map(|ev| match *ev {
                Event::Cross { pos, geom } => Event::Cross {
                    pos,
                    geom: geom.flip(),
                },
                other => other,
            })
            .collect();
        Diagram {
            kind: self.kind,
            events,
        }
    }

    /// Close a tangle into a link by routing its top end back to its
    /// bottom end along the left side.
    pub fn closure(&self) -> Result<Diagram, DiagError> {
        let orient = match self.kind {
            Kind::Tangle(d) => d,
            Kind::Link => {
                return Err(DiagError::Malformed("only tangles have a closure".into()));
            }
        };
        let (open, close) = match orient {
            Dir::Up => (Side::Left, Side::Right),
            Dir::Down => (Side::Right, Side::Left),
        };
        let mut events = vec![Event::Cup { pos: 1, side: open }];
        events.extend(self.events.iter().map(|ev| ev.with_pos(ev.pos() + 1)));
        events.push(Event::Cap {
            pos: 1,
            side: close,
        });
        Ok(Diagram::link(events))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_diagrams_all_validate() {
        for name in builtin_names() {
            let d = builtin(name).unwrap();
            assert!(d.validate().is_ok(), "builtin {name} failed validation");
        }
    }

    #[test]
    fn reversal_is_an_involution_and_flips_the_curl() {
        let curl = builtin("curl").unwrap();
        assert_eq!(curl.reverse(), builtin("curl-op").unwrap());
        for name in builtin_names() {
            let d = builtin(name).unwrap();
            assert_eq!(d.reverse().reverse(), d);
        }
    }

    #[test]
    fn mirror_is_an_involution() {
        let t = builtin("trefoil").unwrap();
        assert_ne!(t.mirror(), t);
        assert_eq!(t.mirror().mirror(), t);
    }

    #[test]
    fn composition_requires_matching_orientations() {
        let curl = builtin("curl").unwrap();
        let op = builtin("curl-op").unwrap();
        assert!(curl.star(&curl).is_ok());
        assert!(curl.star(&op).is_err());
    }

    #[test]
    fn closure_of_the_strand_is_a_circle() {
        let strand = builtin("strand").unwrap();
        let c = strand.closure().unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(
            c.events,
            vec![
                Event::Cup {
                    pos: 1,
                    side: Side::Left
                },
                Event::Cap {
                    pos: 1,
                    side: Side::Right
                }
            ]
        );
    }

    #[test]
    fn tangles_with_a_disjoint_circle_are_rejected() {
        // A valid curl followed by a free circle: the wiring closes, but the
        // diagram is no longer a single strand.
        let mut events = builtin("curl").unwrap().events;
        events.push(Event::Cup {
            pos: 2,
            side: Side::Left,
        });
        events.push(Event::Cap {
            pos: 2,
            side: Side::Right,
        });
        let d = Diagram::tangle(Dir::Up, events);
        match d.validate() {
            Err(DiagError::Invalid { event, .. }) => assert_eq!(event, 3),
            other => panic!("expected a located error, got {other:?}"),
        }
    }

    #[test]
    fn boundary_mismatches_are_located() {
        let d = Diagram::tangle(
            Dir::Up,
            vec![Event::Cap {
                pos: 1,
                side: Side::Left,
            }],
        );
        match d.validate() {
            Err(DiagError::Invalid { event: 0, .. }) => {}
            other => panic!("expected an error at event 0, got {other:?}"),
        }
    }
}

#[cfg(test)]
mod fuzz {
    use proptest::prelude::*;

    use super::*;

    fn events() -> impl Strategy<Value = Vec<Event>> {
        let ev = prop_oneof![
            (1usize..8, any::<bool>()).prop_map(|(pos, l)| Event::Cup {
                pos,
                side: if l { Side::Left } else { Side::Right },
            }),
            (1usize..8, any::<bool>()).prop_map(|(pos, l)| Event::Cap {
                pos,
                side: if l { Side::Left } else { Side::Right },
            }),
            (1usize..8, any::<bool>()).prop_map(|(pos, s)| Event::Cross {
                pos,
                geom: if s { Geom::SwNe } else { Geom::SeNw },
            }),
        ];
        prop::collection::vec(ev, 0..12)
    }

    proptest! {
        /// Arbitrary event lists either validate or fail with a located
        /// error; valid ones always traverse.
        #[test]
        fn validation_and_traversal_never_panic(k in 0usize..3, events in events()) {
            let kind = match k {
                0 => Kind::Link,
                1 => Kind::Tangle(Dir::Up),
                _ => Kind::Tangle(Dir::Down),
            };
            let d = Diagram { kind, events };
            match d.validate() {
                Ok(()) => {
                    let tr = traverse(&d).expect("valid diagrams traverse");
                    prop_assert_eq!(
                        Diagram::parse(&d.render()).unwrap(),
                        d.clone()
                    );
                    prop_assert_eq!(tr.writhe, writhe(&d).unwrap());
                }
                Err(DiagError::Invalid { event, .. }) => prop_assert!(event < d.events.len()),
                Err(DiagError::Malformed(_)) => {}
                Err(e) => prop_assert!(false, "unexpected error class {:?}", e),
            }
        }

        /// The parser rejects garbage without panicking.
        #[test]
        fn parser_never_panics(text in "[a-z0-9 _#\\n]{0,80}") {
            let _ = Diagram::parse(&text);
        }
    }
}
