//! Cayley table CSV: a header line `order=N` followed by `N` rows of `N`
//! comma-separated decimal indices. Element 0 must be the identity.

use std::fmt::Write;

use super::{ConcreteGroup, GroupError};

pub fn to_cayley_csv(group: &ConcreteGroup) -> String {
    let n = group.order();
    let mut out = String::with_capacity(n * n * 4 + 16);
    writeln!(out, "order={n}").unwrap();
    for a in 0..n {
        for (b, v) in group.row(a).iter().enumerate() {
            if b > 0 {
                out.push(',');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn from_cayley_csv(text: &str) -> Result<ConcreteGroup, GroupError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| GroupError::Parse("empty input".into()))?;
    let order: usize = header
        .trim()
        .strip_prefix("order=")
        .ok_or_else(|| GroupError::Parse(format!("expected `order=<N>`, found `{header}`")))?
        .parse()
        .map_err(|e| GroupError::Parse(format!("bad order: {e}")))?;
    let mut rows = Vec::with_capacity(order);
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| cell.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GroupError::Parse(format!("row {i}: {e}")))?;
        rows.push(row);
    }
    if rows.len() != order {
        return Err(GroupError::Parse(format!("header says {order} rows, found {}", rows.len())));
    }
    let group = ConcreteGroup::from_table(&rows, None)?;
    if group.identity() != 0 {
        return Err(GroupError::NotAGroup(format!("identity is element {}, expected 0", group.identity())));
    }
    Ok(group)
}
