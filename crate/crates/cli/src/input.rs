use std::path::Path;

use anyhow::{bail, Context, Result};
use heis_core::HeisPoint;

/// Parse a point file: UTF-8, one `re(z), im(z), t` row per line, blank lines
/// and `#` comments ignored.
pub fn read_points(path: &Path) -> Result<Vec<HeisPoint>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_points(&text)
}

pub fn parse_points(text: &str) -> Result<Vec<HeisPoint>> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            bail!(
                "line {}: expected 3 comma-separated values, found {}",
                i + 1,
                fields.len()
            );
        }
        let mut v = [0.0; 3];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .with_context(|| format!("line {}: cannot parse {field:?} as a number", i + 1))?;
        }
        let p = HeisPoint::checked(v[0], v[1], v[2]).with_context(|| format!("line {}", i + 1))?;
        points.push(p);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let pts = parse_points("# header\n1, 0, 0\n\n0,0,0.5 # top\n").unwrap();
        assert_eq!(
            pts,
            vec![
                HeisPoint::from_parts(1.0, 0.0, 0.0),
                HeisPoint::from_parts(0.0, 0.0, 0.5)
            ]
        );
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_points("1,0,0\n0,0,0\n1,x,0\n").unwrap_err();
        assert!(format!("{err:#}").contains("line 3"));
        let err = parse_points("1,0\n").unwrap_err();
        assert!(format!("{err:#}").contains("line 1"));
        assert!(parse_points("nan,0,0\n").is_err());
    }
}
