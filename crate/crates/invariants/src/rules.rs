//! The eight crossing rules.
//!
//! A crossing is classified by its geometry and the directions of the
//! over- and under-crossing strands.  Each class contributes one form
//! factor (`b` or `b^-1`), extra twist powers `(t_d, t_u)` applied to
//! the over and under slots on top of the rotation counts the strands
//! already carry, and a writhe sign.

use diagrams::{Dir, Geom};

/// Which bilinear form a crossing contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// The structure form `b`.
    B,
    /// Its convolution inverse `b^-1`.
    BInv,
}

/// Evaluation rule for one crossing class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingRule {
    pub geom: Geom,
    pub over_dir: Dir,
    pub under_dir: Dir,
    pub form: FormKind,
    /// Extra `(t_d, t_u)` powers on the over slot.
    pub over_shift: (i64, i64),
    /// Extra `(t_d, t_u)` powers on the under slot.
    pub under_shift: (i64, i64),
    /// Contribution to the writhe.
    pub sign: i64,
}

/// All eight rules, indexed by `geom * 4 + over_dir * 2 + under_dir`
/// with `SwNe = Up = 0`.
pub const RULES: [CrossingRule; 8] = [
    CrossingRule {
        geom: Geom::SwNe,
        over_dir: Dir::Up,
        under_dir: Dir::Up,
        form: FormKind::B,
        over_shift: (0, 0),
        under_shift: (0, 0),
        sign: 1,
    },
    CrossingRule {
        geom: Geom::SwNe,
        over_dir: Dir::Up,
        under_dir: Dir::Down,
        form: FormKind::BInv,
        over_shift: (0, 1),
        under_shift: (0, 0),
        sign: -1,
    },
    CrossingRule {
        geom: Geom::SwNe,
        over_dir: Dir::Down,
        under_dir: Dir::Up,
        form: FormKind::BInv,
        over_shift: (1, 0),
        under_shift: (0, 0),
        sign: -1,
    },
    CrossingRule {
        geom: Geom::SwNe,
        over_dir: Dir::Down,
        under_dir: Dir::Down,
        form: FormKind::B,
        over_shift: (0, 0),
        under_shift: (0, 0),
        sign: 1,
    },
    CrossingRule {
        geom: Geom::SeNw,
        over_dir: Dir::Up,
        under_dir: Dir::Up,
        form: FormKind::BInv,
        over_shift: (0, 0),
        under_shift: (0, 0),
        sign: -1,
    },
    CrossingRule {
        geom: Geom::SeNw,
        over_dir: Dir::Up,
        under_dir: Dir::Down,
        form: FormKind::B,
        over_shift: (0, 0),
        under_shift: (1, 0),
        sign: 1,
    },
    CrossingRule {
        geom: Geom::SeNw,
        over_dir: Dir::Down,
        under_dir: Dir::Up,
        form: FormKind::B,
        over_shift: (0, 0),
        under_shift: (0, 1),
        sign: 1,
    },
    CrossingRule {
        geom: Geom::SeNw,
        over_dir: Dir::Down,
        under_dir: Dir::Down,
        form: FormKind::BInv,
        over_shift: (0, 0),
        under_shift: (0, 0),
        sign: -1,
    },
];

/// Look up the rule for a crossing class.
pub fn rule_for(geom: Geom, over: Dir, under: Dir) -> &'static CrossingRule {
    let idx = (geom as usize) * 4 + (over as usize) * 2 + (under as usize);
    &RULES[idx]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_index_matches_fields() {
        for (idx, rule) in RULES.iter().enumerate() {
            assert_eq!(
                idx,
                (rule.geom as usize) * 4 + (rule.over_dir as usize) * 2 + (rule.under_dir as usize)
            );
            assert_eq!(rule_for(rule.geom, rule.over_dir, rule.under_dir), rule);
        }
    }

    #[test]
    fn signs_split_by_geometry_and_parallelism() {
        for rule in &RULES {
            let parallel = rule.over_dir == rule.under_dir;
            let expected = if (rule.geom == Geom::SwNe) == parallel { 1 } else { -1 };
            assert_eq!(rule.sign, expected);
            // positive crossings use b, negative ones its inverse
            let form = if rule.sign == 1 { FormKind::B } else { FormKind::BInv };
            assert_eq!(rule.form, form);
        }
    }

    #[test]
    fn only_mixed_direction_crossings_carry_shifts() {
        for rule in &RULES {
            let shifted = rule.over_shift != (0, 0) || rule.under_shift != (0, 0);
            assert_eq!(shifted, rule.over_dir != rule.under_dir);
        }
    }
}
