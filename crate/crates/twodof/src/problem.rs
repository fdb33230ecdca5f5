//! Problem files: a plant grid plus keyed design, configuration and option
//! stanzas.
//!
//! ```text
//! # comment
//! [plant]
//! 1/(s+1), 1/(s+2)
//! 0, 1/(s+3)
//!
//! [design]
//! t = (s-1)/((s+1)^2)
//! lambda = 1, 0; 0, 1
//!
//! [config]
//! kind = two-dof
//!
//! [options]
//! shift = 2
//! ```
//!
//! Grid rows are separated by `;` or by line breaks, entries by `,`. A line
//! without `=` continues the grid of the preceding key.

use std::collections::BTreeMap;

use thiserror::Error;
use twodof_core::polyalg::{Poly, PolyMat, QMat, RatFn, RatMat};
use twodof_core::verify::ClosedLoopConfig;
use twodof_core::Rational;

use crate::expr::{parse_rational, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("line {line}: {source}")]
    Expression { line: usize, source: ParseError },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Missing(String),
    #[error("'{key}': {message}")]
    Value { key: String, message: String },
}

/// A keyed grid of parsed expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub value: RatMat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FeedbackSign {
    /// `u = Cy y + Cr r`.
    #[default]
    Positive,
    /// `u = -Cy y + Cr r`.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Options {
    pub shift: Option<Rational>,
    pub horizon: Option<f64>,
    pub dt: Option<f64>,
    pub sign: Option<FeedbackSign>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProblemFile {
    pub plant: Option<RatMat>,
    pub design: BTreeMap<String, Entry>,
    pub design_kind: Option<String>,
    pub config: BTreeMap<String, Entry>,
    pub config_kind: Option<String>,
    pub options: Options,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Plant,
    Design,
    Config,
    Options,
}

struct GridBuilder {
    line: usize,
    rows: Vec<Vec<RatFn>>,
}

impl GridBuilder {
    fn push_text(&mut self, text: &str, line: usize) -> Result<(), ProblemError> {
        for row in text.split(';') {
            if row.trim().is_empty() {
                continue;
            }
            let entries = row
                .split(',')
                .map(|e| parse_rational(e).map_err(|source| ProblemError::Expression { line, source }))
                .collect::<Result<Vec<_>, _>>()?;
            self.rows.push(entries);
        }
        Ok(())
    }

    fn finish(self) -> Result<Entry, ProblemError> {
        let rows = self.rows.len();
        if rows == 0 {
            return Err(ProblemError::Syntax { line: self.line, message: "empty grid".into() });
        }
        let cols = self.rows[0].len();
        if self.rows.iter().any(|r| r.len() != cols) {
            return Err(ProblemError::Syntax { line: self.line, message: "grid is not rectangular".into() });
        }
        let value = RatMat::new(rows, cols, self.rows.into_iter().flatten().collect())
            .map_err(|e| ProblemError::Syntax { line: self.line, message: e.to_string() })?;
        Ok(Entry { line: self.line, value })
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut file = ProblemFile::default();
    let mut section = Section::None;
    let mut plant: Option<GridBuilder> = None;
    let mut open: Option<(Section, String, GridBuilder)> = None;

    let close = |open: &mut Option<(Section, String, GridBuilder)>, file: &mut ProblemFile| -> Result<(), ProblemError> {
        if let Some((sec, key, grid)) = open.take() {
            let entry = grid.finish()?;
            let map = if sec == Section::Design { &mut file.design } else { &mut file.config };
            map.insert(key, entry);
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
            close(&mut open, &mut file)?;
            section = match name.trim() {
                "plant" => Section::Plant,
                "design" => Section::Design,
                "config" => Section::Config,
                "options" => Section::Options,
                other => return Err(ProblemError::Syntax { line, message: format!("unknown section [{other}]") }),
            };
            if section == Section::Plant && plant.is_some() {
                return Err(ProblemError::Syntax { line, message: "duplicate [plant] section".into() });
            }
            continue;
        }
        match section {
            Section::None => {
                return Err(ProblemError::Syntax { line, message: "content before the first section".into() })
            }
            Section::Plant => plant.get_or_insert(GridBuilder { line, rows: Vec::new() }).push_text(content, line)?,
            Section::Options => {
                let (key, value) = split_key(content, line)?;
                set_option(&mut file.options, key, value, line)?;
            }
            Section::Design | Section::Config => match content.split_once('=') {
                Some((key, value)) => {
                    close(&mut open, &mut file)?;
                    let key = key.trim();
                    if key.is_empty() {
                        return Err(ProblemError::Syntax { line, message: "missing key before '='".into() });
                    }
                    if key == "kind" {
                        let kind = Some(value.trim().to_string());
                        if section == Section::Design {
                            file.design_kind = kind;
                        } else {
                            file.config_kind = kind;
                        }
                        continue;
                    }
                    let mut grid = GridBuilder { line, rows: Vec::new() };
                    grid.push_text(value, line)?;
                    open = Some((section, key.to_string(), grid));
                }
                None => match open.as_mut() {
                    Some((sec, _, grid)) if *sec == section => grid.push_text(content, line)?,
                    _ => return Err(ProblemError::Syntax { line, message: "expected 'key = value'".into() }),
                },
            },
        }
    }
    close(&mut open, &mut file)?;
    file.plant = plant.map(|g| g.finish().map(|e| e.value)).transpose()?;
    Ok(file)
}

fn split_key(content: &str, line: usize) -> Result<(&str, &str), ProblemError> {
    content
        .split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or(ProblemError::Syntax { line, message: "expected 'key = value'".into() })
}

fn set_option(o: &mut Options, key: &str, value: &str, line: usize) -> Result<(), ProblemError> {
    let float = |v: &str| -> Result<f64, ProblemError> {
        match v.parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
            _ => Err(ProblemError::Syntax { line, message: format!("{key} must be a positive number") }),
        }
    };
    match key {
        "shift" => {
            o.shift = Some(
                crate::expr::parse_constant(value).map_err(|source| ProblemError::Expression { line, source })?,
            )
        }
        "horizon" => o.horizon = Some(float(value)?),
        "dt" => o.dt = Some(float(value)?),
        "sign" => o.sign = Some(parse_sign(value).ok_or(ProblemError::Syntax { line, message: "sign must be pos or neg".into() })?),
        other => return Err(ProblemError::Syntax { line, message: format!("unknown option '{other}'") }),
    }
    Ok(())
}

pub fn parse_sign(v: &str) -> Option<FeedbackSign> {
    match v.trim() {
        "pos" => Some(FeedbackSign::Positive),
        "neg" => Some(FeedbackSign::Negative),
        _ => None,
    }
}

impl ProblemFile {
    pub fn plant(&self) -> Result<&RatMat, ProblemError> {
        self.plant.as_ref().ok_or(ProblemError::Missing("the problem file has no [plant] section".into()))
    }

    pub fn design_matrix(&self, key: &str) -> Option<&RatMat> {
        self.design.get(key).map(|e| &e.value)
    }

    pub fn require_design(&self, key: &str) -> Result<&RatMat, ProblemError> {
        self.design_matrix(key).ok_or(ProblemError::Missing(format!("[design] needs '{key}'")))
    }

    pub fn design_polymat(&self, key: &str) -> Result<PolyMat, ProblemError> {
        self.require_design(key)?
            .to_polymat()
            .map_err(|_| ProblemError::Value { key: key.into(), message: "entries must be polynomials".into() })
    }

    pub fn design_poly(&self, key: &str) -> Result<Option<Poly>, ProblemError> {
        match self.design_matrix(key) {
            None => Ok(None),
            Some(m) if m.shape() == (1, 1) && m.get(0, 0).den().is_one() => Ok(Some(m.get(0, 0).num().clone())),
            Some(_) => Err(ProblemError::Value { key: key.into(), message: "expected a single polynomial".into() }),
        }
    }

    pub fn design_constant(&self, key: &str) -> Result<QMat, ProblemError> {
        self.require_design(key)?
            .as_constant()
            .ok_or(ProblemError::Value { key: key.into(), message: "entries must be constants".into() })
    }

    /// Diagonal targets given as a single row or column.
    pub fn design_list(&self, key: &str) -> Result<Vec<RatFn>, ProblemError> {
        let m = self.require_design(key)?;
        if m.rows() != 1 && m.cols() != 1 {
            return Err(ProblemError::Value { key: key.into(), message: "expected a list".into() });
        }
        Ok(m.entries().to_vec())
    }

    fn config_block(&self, key: &str) -> Result<RatMat, ProblemError> {
        self.config.get(key).map(|e| e.value.clone()).ok_or(ProblemError::Missing(format!("[config] needs '{key}'")))
    }

    /// The closed-loop configuration in the positive-feedback convention.
    pub fn closed_loop_config(&self, sign: FeedbackSign) -> Result<Option<ClosedLoopConfig>, ProblemError> {
        let Some(kind) = self.config_kind.as_deref() else {
            return Ok(None);
        };
        let flip = |m: RatMat| if sign == FeedbackSign::Negative { m.neg() } else { m };
        let config = match kind {
            "two-dof" => ClosedLoopConfig::TwoDof { cy: flip(self.config_block("cy")?), cr: self.config_block("cr")? },
            "ff-fb-r" => ClosedLoopConfig::FfFbR {
                r: self.config_block("r")?,
                cff: self.config_block("cff")?,
                cfb: flip(self.config_block("cfb")?),
            },
            "unity" => {
                let cff = self.config_block("cff")?;
                match sign {
                    FeedbackSign::Positive => ClosedLoopConfig::UnityFeedback { cff },
                    // u = Cff (r - y)
                    FeedbackSign::Negative => ClosedLoopConfig::TwoDof { cy: cff.neg(), cr: cff },
                }
            }
            "feedback-direct-r" => ClosedLoopConfig::FeedbackDirectR { cfb: flip(self.config_block("cfb")?) },
            other => {
                return Err(ProblemError::Value { key: "kind".into(), message: format!("unknown configuration '{other}'") })
            }
        };
        Ok(Some(config))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_grids_and_continuations() {
        let f = parse_problem(
            "# demo\n[plant]\n1/(s+1), 1/(s+2)\n0, 1/(s+3)\n\n[design]\nlambda = 1, 0\n  0, 1\nkind = static\n[options]\nshift = 3/2\ndt = 0.05\n",
        )
        .unwrap();
        assert_eq!(f.plant().unwrap().shape(), (2, 2));
        assert_eq!(f.design_constant("lambda").unwrap(), QMat::identity(2));
        assert_eq!(f.design_kind.as_deref(), Some("static"));
        assert_eq!(f.options.shift, Some(twodof_core::polyalg::qf(3, 2)));
        assert_eq!(f.options.dt, Some(0.05));
    }

    #[test]
    fn semicolon_rows_in_plant() {
        let f = parse_problem("[plant]\n1/(s+1), 0; 0, 1/(s+2)\n").unwrap();
        assert!(f.plant().unwrap().is_diagonal());
    }

    #[test]
    fn errors_name_lines() {
        let e = parse_problem("[plant]\n1/(s+1)\n[design]\nt = 1/(s+\n").unwrap_err();
        assert!(matches!(e, ProblemError::Expression { line: 4, .. }), "{e}");
        let e = parse_problem("[plant]\n1, 2\n3\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: grid is not rectangular");
        assert!(parse_problem("[bogus]\n").is_err());
        assert!(parse_problem("1/(s+1)\n").is_err());
    }

    #[test]
    fn negative_sign_flips_feedback_blocks() {
        let f = parse_problem("[plant]\n1/(s-2)\n[config]\nkind = feedback-direct-r\ncfb = 4\n").unwrap();
        let c = f.closed_loop_config(FeedbackSign::Negative).unwrap().unwrap();
        assert_eq!(c, ClosedLoopConfig::FeedbackDirectR { cfb: RatMat::scalar(RatFn::constant(twodof_core::polyalg::q(-4))) });
    }
}
