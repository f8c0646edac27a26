//! Text form of a diagram:
//!
//! ```text
//! crossings 2
//! A: 0o+ 1u+
//! B: 0u+ 1o+
//! ```
//!
//! Each token is a crossing id, `o` or `u`, and the crossing sign. Lines
//! starting with `#` are comments.

use crate::{Component, Diagram, DiagramError, Visit};

pub(crate) fn encode(d: &Diagram) -> String {
    let mut out = format!("crossings {}\n", d.signs.len());
    for c in &d.components {
        out.push_str(&c.name);
        out.push(':');
        for v in &c.visits {
            let sign = if d.signs[v.crossing] > 0 { '+' } else { '-' };
            out.push_str(&format!(" {}{}{}", v.crossing, if v.over { 'o' } else { 'u' }, sign));
        }
        out.push('\n');
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Parse {
        line,
        message: message.into(),
    }
}

pub(crate) fn decode(s: &str) -> Result<Diagram, DiagramError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (n, header) = lines.next().ok_or_else(|| err(1, "missing crossings header"))?;
    let count: usize = header
        .strip_prefix("crossings ")
        .and_then(|c| c.trim().parse().ok())
        .ok_or_else(|| err(n, "expected `crossings <count>`"))?;
    let mut signs: Vec<Option<i8>> = vec![None; count];
    let mut components = Vec::new();
    for (n, line) in lines {
        let (name, rest) = line.split_once(':').ok_or_else(|| err(n, "expected `name: visits`"))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(err(n, "bad component name"));
        }
        let mut visits = Vec::new();
        for tok in rest.split_whitespace() {
            let (body, sign) = match tok.as_bytes().last() {
                Some(b'+') => (&tok[..tok.len() - 1], 1i8),
                Some(b'-') => (&tok[..tok.len() - 1], -1i8),
                _ => return Err(err(n, format!("token {tok} lacks a sign"))),
            };
            let (id, over) = match body.as_bytes().last() {
                Some(b'o') => (&body[..body.len() - 1], true),
                Some(b'u') => (&body[..body.len() - 1], false),
                _ => return Err(err(n, format!("token {tok} lacks o or u"))),
            };
            let crossing: usize = id.parse().map_err(|_| err(n, format!("bad crossing id in {tok}")))?;
            let slot = signs
                .get_mut(crossing)
                .ok_or_else(|| err(n, format!("crossing {crossing} exceeds the declared count")))?;
            match slot {
                Some(s) if *s != sign => return Err(DiagramError::SignMismatch(crossing)),
                _ => *slot = Some(sign),
            }
            visits.push(Visit { crossing, over });
        }
        components.push(Component {
            name: name.to_string(),
            visits,
        });
    }
    let signs = signs
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or(DiagramError::BadCrossing(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Diagram { components, signs };
    d.check()?;
    Ok(d)
}
