//! Line-oriented instance files.
//!
//! ```text
//! c comment
//! p momcf <n> <m> <d>
//! n <id> <balance>
//! a <tail> <head> <lower> <upper> <cost_1> ... <cost_d>
//! ```
//!
//! Node ids are 1-based; nodes without an `n` line have balance 0. Costs are
//! `<int>` or `<int>/<posint>`. Arc order in the file is the arc index.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::network::{Arc, Network};
use crate::rational;

struct Header {
    nodes: usize,
    arcs: usize,
    objectives: usize,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count<T: std::str::FromStr>(token: &str, what: &str, line: usize) -> Result<T> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(line, format!("{what} must be a non-negative integer, got {token:?}")));
    }
    token
        .parse()
        .map_err(|_| parse_error(line, format!("{what} out of range: {token:?}")))
}

fn parse_signed(token: &str, what: &str, line: usize) -> Result<i64> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("{what} must be an integer, got {token:?}")))
}

fn parse_node(token: &str, nodes: usize, line: usize) -> Result<usize> {
    let id: usize = parse_count(token, "node id", line)?;
    if id == 0 || id > nodes {
        return Err(parse_error(line, format!("node id {id} outside 1..={nodes}")));
    }
    Ok(id - 1)
}

/// Parses an instance. Structural problems are parse errors with a 1-based
/// line number; semantic conditions (balance sum, connectivity, `l <= u`) are
/// left to [`Network::validate`].
pub fn parse_instance(text: &str) -> Result<Network> {
    let mut header: Option<Header> = None;
    let mut balances: Vec<Option<i64>> = Vec::new();
    let mut arcs = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_error(line, "duplicate problem line"));
                }
                if tokens.len() != 5 || tokens[1] != "momcf" {
                    return Err(parse_error(line, "expected `p momcf <n> <m> <d>`"));
                }
                let nodes: usize = parse_count(tokens[2], "node count", line)?;
                let arc_count = parse_count(tokens[3], "arc count", line)?;
                let objectives = parse_count(tokens[4], "objective count", line)?;
                if nodes == 0 {
                    return Err(parse_error(line, "node count must be positive"));
                }
                if objectives == 0 {
                    return Err(parse_error(line, "objective count must be positive"));
                }
                balances = vec![None; nodes];
                header = Some(Header {
                    nodes,
                    arcs: arc_count,
                    objectives,
                });
            }
            "n" => {
                let h = header
                    .as_ref()
                    .ok_or_else(|| parse_error(line, "node line before problem line"))?;
                if tokens.len() != 3 {
                    return Err(parse_error(line, "expected `n <id> <balance>`"));
                }
                let node = parse_node(tokens[1], h.nodes, line)?;
                let balance = parse_signed(tokens[2], "balance", line)?;
                if balances[node].replace(balance).is_some() {
                    return Err(parse_error(line, format!("duplicate node line for {}", node + 1)));
                }
            }
            "a" => {
                let h = header
                    .as_ref()
                    .ok_or_else(|| parse_error(line, "arc line before problem line"))?;
                if tokens.len() != 5 + h.objectives {
                    return Err(parse_error(
                        line,
                        format!(
                            "expected `a <tail> <head> <lower> <upper>` and {} costs",
                            h.objectives
                        ),
                    ));
                }
                if arcs.len() == h.arcs {
                    return Err(parse_error(line, format!("more than {} arc lines", h.arcs)));
                }
                let tail = parse_node(tokens[1], h.nodes, line)?;
                let head = parse_node(tokens[2], h.nodes, line)?;
                let lower: i64 = parse_count(tokens[3], "lower bound", line)?;
                let upper: i64 = parse_count(tokens[4], "upper bound", line)?;
                let cost = tokens[5..]
                    .iter()
                    .map(|t| {
                        rational::parse(t)
                            .ok_or_else(|| parse_error(line, format!("malformed cost {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                arcs.push(Arc::new(tail, head, lower, upper, cost));
            }
            other => {
                return Err(parse_error(line, format!("unknown line type {other:?}")));
            }
        }
    }

    let h = header.ok_or_else(|| parse_error(last_line.max(1), "missing problem line"))?;
    if arcs.len() != h.arcs {
        return Err(parse_error(
            last_line.max(1),
            format!("expected {} arc lines, found {}", h.arcs, arcs.len()),
        ));
    }
    let balances = balances.into_iter().map(|b| b.unwrap_or(0)).collect();
    Network::new(balances, arcs, h.objectives).map_err(|e| parse_error(last_line.max(1), e.to_string()))
}

/// Serializes a network. Every node gets an `n` line; `comments` become
/// leading `c` lines.
pub fn write_instance(network: &Network, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(
        out,
        "p momcf {} {} {}",
        network.node_count(),
        network.arc_count(),
        network.objectives()
    );
    for (idx, b) in network.balances().iter().enumerate() {
        let _ = writeln!(out, "n {} {}", idx + 1, b);
    }
    for arc in network.arcs() {
        let _ = write!(
            out,
            "a {} {} {} {}",
            arc.tail + 1,
            arc.head + 1,
            arc.lower,
            arc.upper
        );
        for c in &arc.cost {
            let _ = write!(out, " {}", rational::format(c));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_minimal_instance() {
        let text = "c tiny\np momcf 2 1 2\nn 1 3\nn 2 -3\na 1 2 0 5 1/2 -4\n";
        let net = parse_instance(text).unwrap();
        assert_eq!(net.balances(), &[3, -3]);
        assert_eq!(net.arc(0).cost, vec![ratio(1, 2), int(-4)]);
        assert_eq!(net.arc(0).upper, 5);
    }

    #[test]
    fn omitted_nodes_default_to_zero() {
        let net = parse_instance("p momcf 3 0 1\nn 2 0\n").unwrap();
        assert_eq!(net.balances(), &[0, 0, 0]);
    }

    #[test]
    fn costs_are_reduced() {
        let net = parse_instance("p momcf 2 1 1\na 1 2 0 1 6/4\n").unwrap();
        assert_eq!(net.arc(0).cost[0], ratio(3, 2));
    }

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("p momcf 2 1\n", 1),
            ("c x\np momcf 2 1 1\nx 1 2\n", 3),
            ("p momcf 2 1 1\na 1 3 0 1 1\n", 2),
            ("p momcf 2 1 2\na 1 2 0 1 1\n", 2),
            ("p momcf 2 1 1\na 1 2 0 1 1/0\n", 2),
            ("p momcf 2 1 1\na 1 2 -1 1 1\n", 2),
            ("n 1 0\np momcf 2 1 1\n", 1),
            ("p momcf 2 1 1\np momcf 2 1 1\n", 2),
            ("p momcf 2 1 1\nn 1 1\nn 1 2\n", 3),
            ("p momcf 2 2 1\na 1 2 0 1 1\n", 2),
            ("p momcf 2 0 1\na 1 2 0 1 1\n", 2),
            ("p mcf 2 0 1\n", 1),
        ];
        for (text, line) in cases {
            let err = parse_instance(text).expect_err(text);
            assert_eq!(line_of(err), line, "{text:?}");
        }
    }

    #[test]
    fn missing_problem_line() {
        assert!(matches!(parse_instance("c only\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_instance(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn fig2_round_trip() {
        let net = instances::fig2();
        let text = write_instance(&net, &["fig2"]);
        assert_eq!(parse_instance(&text).unwrap(), net);
    }
}
