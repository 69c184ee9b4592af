use std::fmt;

use super::{Circuit, Gate};
use crate::chform::{CliffordGate, MAX_QUBITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

/// Parses the line-oriented circuit format: a `qubits K` header, then one
/// gate per line (`H q`, `S q`, `X q`, `Z q`, `T q`, `CZ a b`,
/// `CNOT control target`). `#` starts a comment.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut k: Option<usize> = None;
    let mut gates = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let body = raw.split('#').next().unwrap();
        let toks = tokens(body);
        let Some(&(col, name)) = toks.first() else { continue };
        let err = |col: usize, message: String| ParseError { line: line_no, col, message };
        let Some(k) = k else {
            if name != "qubits" {
                return Err(err(col, format!("expected header `qubits K`, found `{name}`")));
            }
            if toks.len() != 2 {
                return Err(err(col, "header must be `qubits K`".into()));
            }
            let (c, v) = toks[1];
            let n: usize = v.parse().map_err(|_| err(c, format!("invalid qubit count `{v}`")))?;
            if !(1..=MAX_QUBITS).contains(&n) {
                return Err(err(c, format!("qubit count must be in 1..={MAX_QUBITS}, got {n}")));
            }
            k = Some(n);
            continue;
        };
        let arity = match name {
            "H" | "S" | "X" | "Z" | "T" => 1,
            "CZ" | "CNOT" => 2,
            "qubits" => return Err(err(col, "duplicate `qubits` header".into())),
            _ => return Err(err(col, format!("unknown gate `{name}`"))),
        };
        if toks.len() != arity + 1 {
            let c = toks.get(arity + 1).map_or(col, |t| t.0);
            return Err(err(c, format!("`{name}` takes {arity} qubit index(es), got {}", toks.len() - 1)));
        }
        let mut qs = Vec::with_capacity(arity);
        for &(c, v) in &toks[1..] {
            let q: usize = v.parse().map_err(|_| err(c, format!("invalid qubit index `{v}`")))?;
            if q >= k {
                return Err(err(c, format!("qubit index {q} out of range for {k} qubits")));
            }
            if qs.contains(&q) {
                return Err(err(c, format!("duplicate qubit {q} in `{name}`")));
            }
            qs.push(q);
        }
        gates.push(match name {
            "H" => Gate::Clifford(CliffordGate::H(qs[0])),
            "S" => Gate::Clifford(CliffordGate::S(qs[0])),
            "X" => Gate::Clifford(CliffordGate::X(qs[0])),
            "Z" => Gate::Clifford(CliffordGate::Z(qs[0])),
            "T" => Gate::T(qs[0]),
            "CZ" => Gate::Clifford(CliffordGate::Cz(qs[0], qs[1])),
            _ => Gate::Clifford(CliffordGate::Cnot(qs[0], qs[1])),
        });
    }
    match k {
        Some(k) => Ok(Circuit { k, gates }),
        None => Err(ParseError { line: text.lines().count().max(1), col: 1, message: "missing `qubits K` header".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let c = parse_circuit("qubits 1\nH 0\nT 0\nH 0").unwrap();
        assert_eq!((c.k, c.t_count(), c.gates.len()), (1, 1, 3));
        let c = parse_circuit("# bell\nqubits 2   # two\n\nH 0\nCNOT 0 1\n").unwrap();
        assert_eq!(c.gates, vec![Gate::Clifford(CliffordGate::H(0)), Gate::Clifford(CliffordGate::Cnot(0, 1))]);
        assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn reports_positions() {
        let e = parse_circuit("qubits 2\nCNOT 1 1").unwrap_err();
        assert_eq!((e.line, e.col), (2, 8));
        assert!(e.message.contains("duplicate"));
        let e = parse_circuit("qubits 2\n  FOO 0").unwrap_err();
        assert_eq!((e.line, e.col, e.message.as_str()), (2, 3, "unknown gate `FOO`"));
        let e = parse_circuit("qubits 2\nH 2").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse_circuit("H 0").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        assert!(parse_circuit("qubits x").is_err());
        assert!(parse_circuit("qubits 0").is_err());
        assert!(parse_circuit("qubits 2\nH 0 1").is_err());
        assert!(parse_circuit("").is_err());
    }
}
