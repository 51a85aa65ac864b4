//! Plain-text structure files.
//!
//! A file describes a coalgebra with a bilinear form and optional twist
//! maps and balancing functional, one coefficient per line.  Lines are
//! whitespace-separated, `#` starts a comment, and all indices are
//! 1-based:
//!
//! ```text
//! coalgebra dim=4
//! label  1 e^1_1
//! delta  1 1 1  1        # Δ(e_1) += 1 · e_1 ⊗ e_1
//! counit 1 1
//! b      1 2 q^-1 - q^3  # the scalar is everything after the indices
//! Td     2 2 -q^2
//! Tu     2 2 -q^2
//! G      1 q^-2
//! ```
//!
//! `delta` lines accumulate terms; the other keywords set a single
//! coefficient.  `Td`/`Tu` default to the identity when no line mentions
//! them, and `G` is optional.  The coproduct is not checked for
//! coassociativity here: that is the axiom checker's job.

use coalg::Coalgebra;
use exactnum::{Matrix, Scalar};

use crate::StructError;

/// The raw contents of a structure file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedStructure {
    pub coalg: Coalgebra,
    pub b: Matrix,
    pub t_d: Matrix,
    pub t_u: Matrix,
    /// Balancing functional coordinates, if any `G` line was present.
    pub g: Option<Vec<Scalar>>,
}

fn err(line: usize, msg: impl Into<String>) -> StructError {
    StructError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_index(line: usize, token: &str, dim: usize) -> Result<usize, StructError> {
    let i: usize = token
        .parse()
        .map_err(|_| err(line, format!("expected a basis index, got '{token}'")))?;
    if i == 0 || i > dim {
        return Err(err(
            line,
            format!("basis index {i} out of range 1..={dim}"),
        ));
    }
    Ok(i - 1)
}

fn parse_scalar(line: usize, text: &str) -> Result<Scalar, StructError> {
    if text.trim().is_empty() {
        return Err(err(line, "missing scalar value"));
    }
    Scalar::parse(text).map_err(|e| err(line, format!("bad scalar '{}': {e}", text.trim())))
}

/// Remainder of `text` after its first `n` whitespace-separated tokens.
fn rest_after(text: &str, n: usize) -> &str {
    let mut s = text;
    for _ in 0..n {
        s = s.trim_start();
        let cut = s.find(char::is_whitespace).unwrap_or(s.len());
        s = &s[cut..];
    }
    s.trim()
}

/// Parse a structure file from its text.
pub fn parse_structure_file(text: &str) -> Result<LoadedStructure, StructError> {
    let mut dim: Option<usize> = None;
    let mut delta: Vec<Vec<(usize, usize, Scalar)>> = Vec::new();
    let mut counit: Vec<Scalar> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut saw_label = false;
    let mut b = Matrix::zero(0, 0);
    let mut t_d: Option<Matrix> = None;
    let mut t_u: Option<Matrix> = None;
    let mut g: Option<Vec<Scalar>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if dim.is_none() {
            if tokens[0] != "coalgebra" {
                return Err(err(line, "the first directive must be 'coalgebra dim=<n>'"));
            }
            let arg = tokens
                .get(1)
                .and_then(|t| t.strip_prefix("dim="))
                .ok_or_else(|| err(line, "expected 'coalgebra dim=<n>'"))?;
            let n: usize = arg
                .parse()
                .map_err(|_| err(line, format!("bad dimension '{arg}'")))?;
            if n == 0 {
                return Err(err(line, "dimension must be positive"));
            }
            if tokens.len() > 2 {
                return Err(err(line, "unexpected tokens after the dimension"));
            }
            dim = Some(n);
            delta = vec![Vec::new(); n];
            counit = vec![Scalar::zero(); n];
            labels = (1..=n).map(|i| format!("e{i}")).collect();
            b = Matrix::zero(n, n);
            continue;
        }
        let n = dim.unwrap();
        match tokens[0] {
            "coalgebra" => return Err(err(line, "duplicate 'coalgebra' header")),
            "delta" => {
                if tokens.len() < 5 {
                    return Err(err(line, "expected 'delta <i> <j> <k> <scalar>'"));
                }
                let i = parse_index(line, tokens[1], n)?;
                let j = parse_index(line, tokens[2], n)?;
                let k = parse_index(line, tokens[3], n)?;
                let v = parse_scalar(line, rest_after(content, 4))?;
                delta[i].push((j, k, v));
            }
            "counit" => {
                if tokens.len() < 3 {
                    return Err(err(line, "expected 'counit <i> <scalar>'"));
                }
                let i = parse_index(line, tokens[1], n)?;
                counit[i] = parse_scalar(line, rest_after(content, 2))?;
            }
            "label" => {
                if tokens.len() != 3 {
                    return Err(err(line, "expected 'label <i> <name>'"));
                }
                let i = parse_index(line, tokens[1], n)?;
                labels[i] = tokens[2].to_string();
                saw_label = true;
            }
            "b" | "Td" | "Tu" => {
                if tokens.len() < 4 {
                    return Err(err(
                        line,
                        format!("expected '{} <i> <j> <scalar>'", tokens[0]),
                    ));
                }
                let i = parse_index(line, tokens[1], n)?;
                let j = parse_index(line, tokens[2], n)?;
                let v = parse_scalar(line, rest_after(content, 3))?;
                match tokens[0] {
                    "b" => b.set(i, j, v),
                    "Td" => t_d.get_or_insert_with(|| Matrix::zero(n, n)).set(i, j, v),
                    _ => t_u.get_or_insert_with(|| Matrix::zero(n, n)).set(i, j, v),
                }
            }
            "G" => {
                if tokens.len() < 3 {
                    return Err(err(line, "expected 'G <i> <scalar>'"));
                }
                let i = parse_index(line, tokens[1], n)?;
                let v = parse_scalar(line, rest_after(content, 2))?;
                g.get_or_insert_with(|| vec![Scalar::zero(); n])[i] = v;
            }
            other => {
                return Err(err(line, format!("unknown directive '{other}'")));
            }
        }
    }

    let n = dim.ok_or_else(|| err(text.lines().count().max(1), "missing 'coalgebra' header"))?;
    let coalg = Coalgebra::new(n, delta, counit, saw_label.then_some(labels))?;
    Ok(LoadedStructure {
        coalg,
        b,
        t_d: t_d.unwrap_or_else(|| Matrix::identity(n)),
        t_u: t_u.unwrap_or_else(|| Matrix::identity(n)),
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::jones_structure;

    fn render_jones() -> String {
        let s = jones_structure().unwrap();
        let mut out = String::from("# 2x2 comatrix structure\ncoalgebra dim=4\n");
        let n = 2;
        for i in 0..n {
            for j in 0..n {
                let idx = i * n + j;
                out.push_str(&format!("label {} e^{}_{}\n", idx + 1, i + 1, j + 1));
                for k in 0..n {
                    out.push_str(&format!(
                        "delta {} {} {} 1\n",
                        idx + 1,
                        i * n + k + 1,
                        k * n + j + 1
                    ));
                }
                if i == j {
                    out.push_str(&format!("counit {} 1\n", idx + 1));
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let v = s.oqc.b.get(i, j);
                if !v.is_zero() {
                    out.push_str(&format!("b {} {} {v}\n", i + 1, j + 1));
                }
                let t = s.oqc.t_d.get(i, j);
                if !t.is_zero() {
                    out.push_str(&format!("Td {} {} {t}\n", i + 1, j + 1));
                    out.push_str(&format!("Tu {} {} {t}\n", i + 1, j + 1));
                }
            }
            let gv = &s.g[i];
            if !gv.is_zero() {
                out.push_str(&format!("G {} {gv}\n", i + 1));
            }
        }
        out
    }

    #[test]
    fn a_rendered_structure_parses_back_to_the_same_data() {
        let s = jones_structure().unwrap();
        let loaded = parse_structure_file(&render_jones()).unwrap();
        assert_eq!(loaded.coalg, s.oqc.coalg);
        assert_eq!(loaded.b, s.oqc.b);
        assert_eq!(loaded.t_d, s.oqc.t_d);
        assert_eq!(loaded.t_u, s.oqc.t_u);
        assert_eq!(loaded.g.as_deref(), Some(&s.g[..]));
    }

    #[test]
    fn twists_default_to_the_identity() {
        let text = "coalgebra dim=1\ndelta 1 1 1 1\ncounit 1 1\nb 1 1 q^3\n";
        let loaded = parse_structure_file(text).unwrap();
        assert!(loaded.t_d.is_identity());
        assert!(loaded.t_u.is_identity());
        assert_eq!(loaded.g, None);
        assert_eq!(loaded.coalg.label(0), "e1");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("b 1 1 q\n", 1, "first directive"),
            ("coalgebra dim=2\nb 1 3 q\n", 2, "out of range"),
            ("coalgebra dim=2\nfrob 1 1 q\n", 2, "unknown directive"),
            ("coalgebra dim=2\nb 1 1 q^\n", 2, "bad scalar"),
            ("coalgebra dim=0\n", 1, "positive"),
            ("# nothing\n", 1, "missing 'coalgebra'"),
        ];
        for (text, line, frag) in cases {
            match parse_structure_file(text) {
                Err(StructError::Parse { line: l, msg }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(msg.contains(frag), "{text:?}: {msg}");
                }
                other => panic!("{text:?}: expected a parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn scalar_values_may_contain_spaces() {
        let text = "coalgebra dim=1\ndelta 1 1 1 1\ncounit 1 1\nb 1 1 q^-1 - q^3\n";
        let loaded = parse_structure_file(text).unwrap();
        assert_eq!(loaded.b.get(0, 0), &Scalar::parse("q^-1 - q^3").unwrap());
    }
}
