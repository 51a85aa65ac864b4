//! Named example diagrams: elementary curls, the trefoil and figure-eight
//! knots as tangles and closures, and the standard small links.

use crate::{Diagram, Dir, Event, Geom, Side};

fn cup(pos: usize, side: Side) -> Event {
    Event::Cup { pos, side }
}

fn cap(pos: usize, side: Side) -> Event {
    Event::Cap { pos, side }
}

fn cross(pos: usize, geom: Geom) -> Event {
    Event::Cross { pos, geom }
}

fn curl() -> Diagram {
    Diagram::tangle(
        Dir::Up,
        vec![
            cup(2, Side::Right),
            cross(1, Geom::SwNe),
            cap(2, Side::Left),
        ],
    )
}

fn curl_op() -> Diagram {
    Diagram::tangle(
        Dir::Down,
        vec![
            cup(2, Side::Left),
            cross(1, Geom::SwNe),
            cap(2, Side::Right),
        ],
    )
}

fn trefoil_tangle() -> Diagram {
    Diagram::tangle(
        Dir::Up,
        vec![
            cup(1, Side::Right),
            cup(3, Side::Left),
            cross(2, Geom::SwNe),
            cross(4, Geom::SwNe),
            cross(3, Geom::SeNw),
            cap(2, Side::Right),
            cap(2, Side::Right),
        ],
    )
}

fn fig8_tangle() -> Diagram {
    Diagram::tangle(
        Dir::Up,
        vec![
            cup(2, Side::Right),
            cup(3, Side::Right),
            cross(1, Geom::SwNe),
            cross(2, Geom::SeNw),
            cross(1, Geom::SwNe),
            cross(2, Geom::SeNw),
            cap(3, Side::Left),
            cap(2, Side::Left),
        ],
    )
}

fn hopf() -> Diagram {
    Diagram::link(vec![
        cup(1, Side::Left),
        cup(3, Side::Right),
        cross(2, Geom::SwNe),
        cross(2, Geom::SwNe),
        cap(1, Side::Right),
        cap(1, Side::Left),
    ])
}

fn borromean() -> Diagram {
    Diagram::link(vec![
        cup(1, Side::Left),
        cup(3, Side::Right),
        cross(2, Geom::SeNw),
        cup(3, Side::Right),
        cross(2, Geom::SeNw),
        cross(4, Geom::SeNw),
        cross(3, Geom::SwNe),
        cross(2, Geom::SeNw),
        cross(4, Geom::SeNw),
        cap(1, Side::Right),
        cap(1, Side::Left),
        cap(1, Side::Left),
    ])
}

fn circle_cw() -> Diagram {
    Diagram::link(vec![cup(1, Side::Right), cap(1, Side::Left)])
}

fn circle_ccw() -> Diagram {
    Diagram::link(vec![cup(1, Side::Left), cap(1, Side::Right)])
}

/// Names accepted by [`builtin`], in display order.
pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "strand",
        "curl",
        "curl-op",
        "trefoil-tangle",
        "fig8-tangle",
        "trefoil",
        "trefoil-mirror",
        "fig8",
        "hopf",
        "borromean",
        "circle-cw",
        "circle-ccw",
    ]
}

/// Look up a named example diagram.
pub fn builtin(name: &str) -> Option<Diagram> {
    let d = match name {
        "strand" => Diagram::tangle(Dir::Up, vec![]),
        "curl" => curl(),
        "curl-op" => curl_op(),
        "trefoil-tangle" => trefoil_tangle(),
        "fig8-tangle" => fig8_tangle(),
        "trefoil" => trefoil_tangle().closure().ok()?,
        "trefoil-mirror" => trefoil_tangle().mirror().closure().ok()?,
        "fig8" => fig8_tangle().closure().ok()?,
        "hopf" => hopf(),
        "borromean" => borromean(),
        "circle-cw" => circle_cw(),
        "circle-ccw" => circle_ccw(),
        _ => return None,
    };
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{whitney_degrees, writhe};

    #[test]
    fn every_name_resolves_and_validates() {
        for name in builtin_names() {
            let d = builtin(name).expect("known name");
            d.validate().expect("valid builtin");
        }
        assert!(builtin("unknot-of-doom").is_none());
    }

    #[test]
    fn writhes_are_frozen() {
        let cases = [
            ("strand", 0),
            ("curl", 1),
            ("curl-op", 1),
            ("trefoil-tangle", 3),
            ("trefoil", 3),
            ("trefoil-mirror", -3),
            ("fig8-tangle", 0),
            ("fig8", 0),
            ("hopf", 2),
            ("borromean", 0),
        ];
        for (name, want) in cases {
            assert_eq!(writhe(&builtin(name).unwrap()).unwrap(), want, "{name}");
        }
    }

    #[test]
    fn circles_have_opposite_degrees() {
        assert_eq!(
            whitney_degrees(&builtin("circle-cw").unwrap()).unwrap(),
            vec![1]
        );
        assert_eq!(
            whitney_degrees(&builtin("circle-ccw").unwrap()).unwrap(),
            vec![-1]
        );
    }
}
