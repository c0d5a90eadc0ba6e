//! Moving AI Labs `.map` reader.
//!
//! ```text
//! type octile
//! height H
//! width W
//! map
//! <H lines of W characters>
//! ```
//!
//! `.` and `G` are passable; `@`, `O`, `T`, `S` and `W` are blocked. LF and
//! CRLF line endings are accepted and the final newline is optional.

use super::{GridError, GridMap, Terrain};

pub fn parse_movingai_map(text: &str) -> Result<GridMap, GridError> {
    let mut lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    if lines.len() < 4 {
        return Err(GridError::MalformedHeader {
            line: lines.len() + 1,
            reason: "expected four header lines".into(),
        });
    }

    let header_err = |line: usize, reason: String| GridError::MalformedHeader { line, reason };
    if lines[0].split_whitespace().collect::<Vec<_>>() != ["type", "octile"] {
        return Err(header_err(1, format!("expected `type octile`, got `{}`", lines[0])));
    }
    let height = header_value(lines[1], "height").map_err(|r| header_err(2, r))?;
    let width = header_value(lines[2], "width").map_err(|r| header_err(3, r))?;
    if lines[3].trim() != "map" {
        return Err(header_err(4, format!("expected `map`, got `{}`", lines[3])));
    }

    let body = &lines[4..];
    if body.len() != height {
        return Err(GridError::DimensionMismatch(format!(
            "header says {height} rows, body has {}",
            body.len()
        )));
    }
    let mut terrain = Vec::with_capacity(width * height);
    for (row, line) in body.iter().enumerate() {
        let len = line.chars().count();
        if len != width {
            return Err(GridError::DimensionMismatch(format!(
                "row {row} has {len} characters, header says {width}"
            )));
        }
        for (col, ch) in line.chars().enumerate() {
            terrain.push(match ch {
                '.' | 'G' => Terrain::Free,
                '@' | 'O' | 'T' | 'S' | 'W' => Terrain::Obstacle,
                ch => return Err(GridError::UnknownTerrainChar { row, col, ch }),
            });
        }
    }
    GridMap::from_terrain(width, height, terrain)
}

fn header_value(line: &str, key: &str) -> Result<usize, String> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            Ok(_) => Err(format!("{key} must be at least 1")),
            Err(e) => Err(format!("bad {key} value `{v}`: {e}")),
        },
        _ => Err(format!("expected `{key} <n>`, got `{line}`")),
    }
}
