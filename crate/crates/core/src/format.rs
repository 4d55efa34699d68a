//! The `wcdag/1` instance text format.
//!
//! ```text
//! wcdag/1
//! n m
//! u v        (m lines, one arc of the ground-truth DAG each, 0-indexed)
//! w_0 ... w_{n-1}
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Dag, WeightedInstance};

pub const HEADER: &str = "wcdag/1";

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

pub fn parse_instance(text: &str) -> Result<WeightedInstance> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((no, other)) => return perr(no, format!("expected header {HEADER:?}, found {other:?}")),
        None => return perr(1, "empty input"),
    }
    let Some((no, counts)) = lines.next() else {
        return perr(2, "missing `n m` line");
    };
    let nums: Vec<&str> = counts.split_whitespace().collect();
    let [n, m] = nums.as_slice() else {
        return perr(no, "expected `n m`");
    };
    let n: usize = n.parse().or_else(|_| perr(no, "bad vertex count"))?;
    let m: usize = m.parse().or_else(|_| perr(no, "bad arc count"))?;

    let mut arcs = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..m {
        let Some((no, line)) = lines.next() else {
            return perr(0, format!("expected {m} arc lines"));
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return perr(no, "expected `u v`");
        };
        let u: usize = u.parse().or_else(|_| perr(no, "bad vertex id"))?;
        let v: usize = v.parse().or_else(|_| perr(no, "bad vertex id"))?;
        if u >= n || v >= n {
            return perr(no, format!("vertex out of range for n = {n}"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return perr(no, format!("duplicate arc ({u}, {v})"));
        }
        arcs.push((u, v));
    }
    let (no, weights): (usize, Vec<f64>) = match lines.next() {
        Some((no, line)) => {
            let ws: std::result::Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
            (no, ws.or_else(|_| perr(no, "bad weight"))?)
        }
        None if n == 0 => (0, Vec::new()),
        None => return perr(0, "missing weight line"),
    };
    if weights.len() != n {
        return perr(no, format!("expected {n} weights, found {}", weights.len()));
    }
    if let Some((no, _)) = lines.next() {
        return perr(no, "trailing content");
    }
    let dag = Dag::from_arcs(n, &arcs).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    WeightedInstance::new(dag, weights).map_err(|e| Error::Parse { line: no, msg: e.to_string() })
}

/// Serialises an instance; weights use Rust's shortest round-trip formatting.
pub fn write_instance(inst: &WeightedInstance) -> String {
    let arcs = inst.dag().arcs();
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(s, "{} {}", inst.n(), arcs.len());
    for (u, v) in arcs {
        let _ = writeln!(s, "{u} {v}");
    }
    let ws: Vec<String> = inst.weights().iter().map(|w| format!("{w:?}")).collect();
    let _ = writeln!(s, "{}", ws.join(" "));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let d = Dag::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = WeightedInstance::new(d, vec![0.5, 1.0, 1e-7]).unwrap();
        let text = write_instance(&inst);
        assert!(text.starts_with("wcdag/1\n3 3\n"));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(parse_instance("wcdag/1\n2 2\n0 1\n1 0\n1 1\n").is_err());
        assert!(parse_instance("wcdag/1\n3 2\n0 1\n1 2\n2 0\n1 1 1\n").is_err());
        assert!(parse_instance("wcdag/1\n3 3\n0 1\n1 2\n2 0\n1 1 1\n").is_err());
        assert!(parse_instance("wcdag/1\n2 1\n0 1\n1\n").is_err());
        assert!(parse_instance("2 1\n0 1\n1 1\n").is_err());
        assert!(parse_instance("wcdag/1\n2 1\n0 1\n1 -1\n").is_err());
    }

    #[test]
    fn empty_graph() {
        let inst = parse_instance("wcdag/1\n0 0\n").unwrap();
        assert_eq!(inst.n(), 0);
    }
}
