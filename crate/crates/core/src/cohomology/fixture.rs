use crate::intlinalg::{parse_matrix_at, IntMatrix};

use super::module::CyclicModule;
use super::CohomologyError;

/// Reads a module file: the group order, the relations matrix and the action
/// matrix, as blocks separated by blank lines. The relations block may be the
/// single word `none` for a free module. `#` starts a comment.
pub fn parse_module(text: &str) -> Result<CyclicModule, CohomologyError> {
    let mut blocks: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut current: Option<(usize, Vec<&str>)> = None;
    for (k, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        let entry = current.get_or_insert_with(|| (k + 1, Vec::new()));
        entry.1.push(raw);
    }
    blocks.extend(current);
    let parse_err = |line: usize, message: String| CohomologyError::Parse { line, message };

    if blocks.len() != 3 {
        let line = blocks.get(3).map_or(text.lines().count().max(1), |b| b.0);
        return Err(parse_err(
            line,
            format!("expected 3 blocks (order, relations, action), found {}", blocks.len()),
        ));
    }
    let (n_line, n_block) = &blocks[0];
    let n_text: Vec<&str> = n_block
        .iter()
        .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
        .collect();
    let n: u32 = match n_text.as_slice() {
        [x] => x
            .parse()
            .map_err(|_| parse_err(*n_line, format!("bad group order {x:?}")))?,
        _ => return Err(parse_err(*n_line, "group order must be a single integer".into())),
    };
    let to_matrix = |(line, lines): &(usize, Vec<&str>)| {
        parse_matrix_at(&lines.join("\n"), *line).map_err(|e| {
            let line = match &e {
                crate::intlinalg::ParseError::BadInteger { line, .. }
                | crate::intlinalg::ParseError::Ragged { line, .. } => *line,
            };
            parse_err(line, e.to_string())
        })
    };
    let action = to_matrix(&blocks[2])?;
    let rel_block = &blocks[1];
    let is_none = rel_block.1.len() == 1 && rel_block.1[0].split('#').next().unwrap().trim() == "none";
    let relations = if is_none {
        IntMatrix::zeros(action.rows(), 0)
    } else {
        to_matrix(rel_block)?
    };
    if action.rows() != action.cols() {
        return Err(parse_err(blocks[2].0, "action matrix must be square".into()));
    }
    if relations.rows() != action.rows() {
        return Err(parse_err(
            rel_block.0,
            format!(
                "relations have {} rows but the action has {}",
                relations.rows(),
                action.rows()
            ),
        ));
    }
    CyclicModule::new(n, relations, action)
}

/// Inverse of [`parse_module`].
pub fn format_module(m: &CyclicModule) -> String {
    let rel = if m.relations.cols() == 0 {
        "none\n".to_string()
    } else {
        m.relations.to_string()
    };
    format!("{}\n\n{}\n{}", m.n, rel, m.action)
}
