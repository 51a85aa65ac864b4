//! Plain-text diagram format.
//!
//! The first significant line is a header — `tangle up`, `tangle down`, or
//! `link` — followed by one event per line: `cup <pos> <left|right>`,
//! `cap <pos> <left|right>`, or `cross <pos> <sw_ne|se_nw>`.  Positions are
//! 1-based.  Blank lines are skipped and `#` starts a comment.

use crate::{DiagError, Diagram, Dir, Event, Geom, Kind, Side};

impl Diagram {
    /// Parse and validate a diagram from its text form.
    pub fn parse(text: &str) -> Result<Diagram, DiagError> {
        let mut kind: Option<Kind> = None;
        let mut events = Vec::new();
        for (li, raw) in text.lines().enumerate() {
            let line = li + 1;
            let body = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let tokens = tokenize(body);
            if tokens.is_empty() {
                continue;
            }
            if kind.is_none() {
                kind = Some(parse_header(line, &tokens)?);
                continue;
            }
            events.push(parse_event(line, &tokens)?);
        }
        let kind = kind.ok_or(DiagError::Parse {
            line: 1,
            col: 1,
            msg: "expected a header: `tangle up`, `tangle down`, or `link`".into(),
        })?;
        let d = Diagram { kind, events };
        d.validate()?;
        Ok(d)
    }

    /// Render the diagram in its text form; `parse` inverts this exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.kind {
            Kind::Tangle(orient) => {
                out.push_str("tangle ");
                out.push_str(&orient.to_string());
            }
            Kind::Link => out.push_str("link"),
        }
        out.push('\n');
        for ev in &self.events {
            out.push_str(&ev.to_string());
            out.push('\n');
        }
        out
    }
}

/// Split a line into `(1-based column, token)` pairs.
fn tokenize(body: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (body[..byte].chars().count() + 1, tok))
        .collect()
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> DiagError {
    DiagError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn parse_header(line: usize, tokens: &[(usize, &str)]) -> Result<Kind, DiagError> {
    match tokens[0].1 {
        "link" => {
            if let Some(&(col, tok)) = tokens.get(1) {
                return Err(err(line, col, format!("unexpected `{tok}` after `link`")));
            }
            Ok(Kind::Link)
        }
        "tangle" => {
            let &(col, orient) = tokens.get(1).ok_or(err(
                line,
                tokens[0].0,
                "`tangle` needs an orientation: `up` or `down`",
            ))?;
            let dir = match orient {
                "up" => Dir::Up,
                "down" => Dir::Down,
                other => return Err(err(line, col, format!("unknown orientation `{other}`"))),
            };
            if let Some(&(col, tok)) = tokens.get(2) {
                return Err(err(line, col, format!("unexpected `{tok}` after header")));
            }
            Ok(Kind::Tangle(dir))
        }
        other => Err(err(
            line,
            tokens[0].0,
            format!("expected `tangle` or `link`, found `{other}`"),
        )),
    }
}

fn parse_event(line: usize, tokens: &[(usize, &str)]) -> Result<Event, DiagError> {
    let (kcol, keyword) = tokens[0];
    let &(pcol, ptok) = tokens
        .get(1)
        .ok_or(err(line, kcol, format!("`{keyword}` needs a position")))?;
    let pos: usize = ptok
        .parse()
        .ok()
        .filter(|&p| p >= 1)
        .ok_or(err(line, pcol, format!("`{ptok}` is not a position (1-based integer)")))?;
    let &(acol, atok) = tokens
        .get(2)
        .ok_or(err(line, kcol, format!("`{keyword}` needs a final argument")))?;
    if let Some(&(col, tok)) = tokens.get(3) {
        return Err(err(line, col, format!("unexpected trailing `{tok}`")));
    }
    let side = |tok: &str| match tok {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(err(line, acol, format!("expected `left` or `right`, found `{other}`"))),
    };
    match keyword {
        "cup" => Ok(Event::Cup {
            pos,
            side: side(atok)?,
        }),
        "cap" => Ok(Event::Cap {
            pos,
            side: side(atok)?,
        }),
        "cross" => {
            let geom = match atok {
                "sw_ne" => Geom::SwNe,
                "se_nw" => Geom::SeNw,
                other => {
                    return Err(err(
                        line,
                        acol,
                        format!("expected `sw_ne` or `se_nw`, found `{other}`"),
                    ));
                }
            };
            Ok(Event::Cross { pos, geom })
        }
        other => Err(err(
            line,
            kcol,
            format!("expected `cup`, `cap`, or `cross`, found `{other}`"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{builtin, builtin_names};

    #[test]
    fn builtin_diagrams_round_trip() {
        for name in builtin_names() {
            let d = builtin(name).unwrap();
            let back = Diagram::parse(&d.render()).unwrap();
            assert_eq!(back, d, "round trip of {name}");
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\n# a clockwise circle\nlink\n\ncup 1 right # make two wires\ncap 1 left\n";
        let d = Diagram::parse(text).unwrap();
        assert_eq!(d, builtin("circle-cw").unwrap());
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let cases = [
            ("link\ncrss 1 sw_ne\n", 2, 1),
            ("link\ncup one left\n", 2, 5),
            ("link\ncup 1 middle\n", 2, 7),
            ("tangle sideways\n", 1, 8),
        ];
        for (text, line, col) in cases {
            match Diagram::parse(text) {
                Err(DiagError::Parse { line: l, col: c, .. }) => {
                    assert_eq!((l, c), (line, col), "location in {text:?}");
                }
                other => panic!("expected a parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn wiring_errors_carry_the_event_index() {
        let text = "link\ncup 1 left\ncap 1 left\n";
        match Diagram::parse(text) {
            Err(DiagError::Invalid { event: 1, .. }) => {}
            other => panic!("expected a wiring error at event 1, got {other:?}"),
        }
    }

    #[test]
    fn missing_header_is_reported() {
        assert!(matches!(
            Diagram::parse("# nothing here\n"),
            Err(DiagError::Parse { line: 1, col: 1, .. })
        ));
    }
}
