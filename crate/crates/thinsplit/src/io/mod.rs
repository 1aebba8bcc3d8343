//! Pattern files, reports and envelope plots.
//!
//! Pattern files are plain text: `#` comment lines, then a header
//! `width height unit`, then one `x y` pair per line. Coordinates print with
//! shortest round-trip formatting, so write-then-read reproduces a pattern
//! exactly. Points sitting exactly on the far window edges wrap to the
//! identified near edges on load.

pub mod report;
pub mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Point, RectWindow};
use crate::pointprocess::PointPattern;

/// A pattern together with the unit label carried by its file.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedPattern {
    pub pattern: PointPattern,
    pub unit: String,
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Read a pattern file. Malformed rows, out-of-window points and a missing
/// header all fail with the offending line number.
pub fn load_pattern(path: impl AsRef<Path>) -> Result<LoadedPattern> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;

    let mut window: Option<RectWindow> = None;
    let mut unit = String::new();
    let mut events = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match window {
            None => {
                if fields.len() != 3 {
                    return Err(parse_error(
                        path,
                        line_no,
                        format!(
                            "header must be 'width height unit', got {} field(s)",
                            fields.len()
                        ),
                    ));
                }
                let width: f64 = fields[0].parse().map_err(|_| {
                    parse_error(path, line_no, format!("bad width '{}'", fields[0]))
                })?;
                let height: f64 = fields[1].parse().map_err(|_| {
                    parse_error(path, line_no, format!("bad height '{}'", fields[1]))
                })?;
                window = Some(
                    RectWindow::new(width, height)
                        .map_err(|e| parse_error(path, line_no, e.to_string()))?,
                );
                unit = fields[2].to_string();
            }
            Some(w) => {
                if fields.len() != 2 {
                    return Err(parse_error(
                        path,
                        line_no,
                        format!("row must be 'x y', got {} field(s)", fields.len()),
                    ));
                }
                let x: f64 = fields[0].parse().map_err(|_| {
                    parse_error(path, line_no, format!("bad x coordinate '{}'", fields[0]))
                })?;
                let y: f64 = fields[1].parse().map_err(|_| {
                    parse_error(path, line_no, format!("bad y coordinate '{}'", fields[1]))
                })?;
                // Closed-boundary coordinates wrap onto the torus; anything
                // else outside the window is an input error.
                let ok_x = (0.0..=w.width()).contains(&x);
                let ok_y = (0.0..=w.height()).contains(&y);
                if !(ok_x && ok_y) {
                    return Err(parse_error(
                        path,
                        line_no,
                        format!(
                            "point ({x}, {y}) is outside the {} x {} window",
                            w.width(),
                            w.height()
                        ),
                    ));
                }
                events.push(w.wrap_point(Point::new(x, y)));
            }
        }
    }
    let window = window
        .ok_or_else(|| parse_error(path, text.lines().count().max(1), "missing header line"))?;
    Ok(LoadedPattern {
        pattern: PointPattern::new(window, events)?,
        unit,
    })
}

/// Render a pattern file; `comments` go first, one `#` line each.
pub fn pattern_to_string(pattern: &PointPattern, unit: &str, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let w = pattern.window();
    let _ = writeln!(out, "{} {} {unit}", w.width(), w.height());
    for p in pattern.events() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

/// Write a pattern file.
pub fn save_pattern(
    path: impl AsRef<Path>,
    pattern: &PointPattern,
    unit: &str,
    comments: &[String],
) -> Result<()> {
    fs::write(path.as_ref(), pattern_to_string(pattern, unit, comments))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointprocess::sample_homogeneous_poisson;
    use crate::rng::rng_from_seed;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        use std::io::Write;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn read_basic_file() {
        let f = write_temp("# redwood-like header\n23 23 m\n1.5 2.25\n22.0 0.5\n");
        let loaded = load_pattern(f.path()).unwrap();
        assert_eq!(loaded.unit, "m");
        assert_eq!(loaded.pattern.len(), 2);
        assert_eq!(loaded.pattern.window().width(), 23.0);
    }

    #[test]
    fn empty_body_is_empty_pattern() {
        let f = write_temp("1 1 unit\n");
        let loaded = load_pattern(f.path()).unwrap();
        assert!(loaded.pattern.is_empty());
    }

    #[test]
    fn boundary_points_wrap() {
        let f = write_temp("23 23 m\n23 5\n5 23\n");
        let loaded = load_pattern(f.path()).unwrap();
        assert_eq!(loaded.pattern.events()[0], Point::new(0.0, 5.0));
        assert_eq!(loaded.pattern.events()[1], Point::new(5.0, 0.0));
    }

    #[test]
    fn out_of_window_row_names_line() {
        let f = write_temp("1 1 unit\n0.2 0.3\n0.5 1.2\n");
        match load_pattern(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_rows_and_header() {
        let f = write_temp("1 1\n");
        assert!(matches!(
            load_pattern(f.path()),
            Err(Error::Parse { line: 1, .. })
        ));
        let f = write_temp("1 1 unit\n0.1 0.2 0.3\n");
        assert!(matches!(
            load_pattern(f.path()),
            Err(Error::Parse { line: 2, .. })
        ));
        let f = write_temp("1 1 unit\nfoo 0.2\n");
        assert!(matches!(
            load_pattern(f.path()),
            Err(Error::Parse { line: 2, .. })
        ));
        let f = write_temp("# only comments\n");
        assert!(matches!(load_pattern(f.path()), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip_is_exact() {
        let mut rng = rng_from_seed(40);
        let w = RectWindow::new(5.7, 5.7).unwrap();
        let pattern = sample_homogeneous_poisson(2.0, w, &mut rng).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pines.txt");
        save_pattern(&path, &pattern, "m", &["saplings".into()]).unwrap();
        let loaded = load_pattern(&path).unwrap();
        assert_eq!(loaded.pattern, pattern);
        assert_eq!(loaded.unit, "m");
    }
}
