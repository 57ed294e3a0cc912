//! MPS reader and writer.
//!
//! Free format splits records on whitespace. Fixed format reads the classic
//! column positions (fields start at columns 2, 5, 15, 25, 40 and 50), which
//! permits names containing spaces. Bound values of magnitude `>= 1e30` are
//! read as infinite.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use log::warn;

use crate::error::MpsError;
use crate::mip::{MipBuilder, MipInstance, ObjectiveSense, Sense};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MpsFormat {
    #[default]
    Free,
    Fixed,
}

const INFINITE_BOUND: f64 = 1e30;

/// Parses free-format MPS text.
pub fn parse_mps(text: &str) -> Result<MipInstance, MpsError> {
    parse_mps_with(text, MpsFormat::Free)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Name,
    ObjSense,
    ObjName,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum RowRef {
    Objective,
    Dropped,
    Row(usize),
}

struct RowDef {
    name: String,
    sense: Sense,
    rhs: f64,
    range: Option<f64>,
    entries: Vec<(usize, f64)>,
}

struct ColDef {
    name: String,
    objective: f64,
    lower: f64,
    upper: f64,
    lower_set: bool,
    integer: bool,
}

#[derive(Default)]
struct Parser {
    name: String,
    sense: ObjectiveSense,
    objective_name: Option<String>,
    objective_offset: f64,
    row_refs: HashMap<String, RowRef>,
    rows: Vec<RowDef>,
    cols: Vec<ColDef>,
    col_index: HashMap<String, usize>,
    seen: HashSet<(RowRef, usize)>,
    rhs_seen: HashSet<RowRef>,
    in_integer_block: bool,
    first_rhs_set: Option<String>,
}

pub fn parse_mps_with(text: &str, format: MpsFormat) -> Result<MipInstance, MpsError> {
    let mut p = Parser::default();
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.starts_with('*') {
            continue;
        }
        if !raw.starts_with(' ') && !raw.starts_with('\t') {
            section = p.header(raw, line)?;
            if section == Section::End {
                break;
            }
            continue;
        }
        let tokens = data_tokens(raw, section, format);
        let explicit_set = format == MpsFormat::Fixed;
        match section {
            Section::None | Section::Name | Section::End => {
                return Err(MpsError::Malformed { line, message: "data outside a section".into() })
            }
            Section::ObjSense => p.objsense(&tokens, line)?,
            Section::ObjName => {
                p.objective_name = Some(expect_tokens(&tokens, 1, line)?[0].to_string());
            }
            Section::Rows => p.row(&tokens, line)?,
            Section::Columns => p.column(&tokens, line)?,
            Section::Rhs => p.rhs(&tokens, line, explicit_set)?,
            Section::Ranges => p.range(&tokens, line, explicit_set)?,
            Section::Bounds => p.bound(&tokens, line, explicit_set)?,
        }
    }
    p.finish()
}

fn data_tokens(raw: &str, section: Section, format: MpsFormat) -> Vec<String> {
    if format == MpsFormat::Free || raw.contains("'MARKER'") {
        return raw.split_whitespace().map(str::to_string).collect();
    }
    let field = |from: usize, to: usize| -> String {
        let chars: Vec<char> = raw.chars().collect();
        if from > chars.len() {
            return String::new();
        }
        chars[from - 1..to.min(chars.len())].iter().collect::<String>().trim().to_string()
    };
    let mut out = match section {
        Section::Rows => vec![field(2, 3), field(5, 12)],
        Section::Bounds => vec![field(2, 3), field(5, 12), field(15, 22), field(25, 36)],
        Section::Columns | Section::Rhs | Section::Ranges => {
            vec![field(5, 12), field(15, 22), field(25, 36), field(40, 47), field(50, 61)]
        }
        _ => raw.split_whitespace().map(str::to_string).collect(),
    };
    while out.last().is_some_and(|s| s.is_empty()) {
        out.pop();
    }
    out
}

fn expect_tokens(tokens: &[String], n: usize, line: usize) -> Result<&[String], MpsError> {
    if tokens.len() < n {
        return Err(MpsError::Malformed { line, message: format!("expected {n} fields, found {}", tokens.len()) });
    }
    Ok(tokens)
}

fn number(text: &str, line: usize) -> Result<f64, MpsError> {
    match text.parse::<f64>() {
        Ok(v) if !v.is_nan() => Ok(v),
        _ => Err(MpsError::BadNumber { line, text: text.to_string() }),
    }
}

fn bound_value(text: &str, line: usize) -> Result<f64, MpsError> {
    let v = number(text, line)?;
    Ok(if v >= INFINITE_BOUND {
        f64::INFINITY
    } else if v <= -INFINITE_BOUND {
        f64::NEG_INFINITY
    } else {
        v
    })
}

impl Parser {
    fn header(&mut self, raw: &str, line: usize) -> Result<Section, MpsError> {
        let mut parts = raw.split_whitespace();
        let keyword = parts.next().unwrap_or_default().to_ascii_uppercase();
        let rest: Vec<&str> = parts.collect();
        let section = match keyword.as_str() {
            "NAME" => {
                self.name = rest.join(" ");
                Section::Name
            }
            "OBJSENSE" => {
                if let Some(s) = rest.first() {
                    self.set_sense(s, line)?;
                }
                Section::ObjSense
            }
            "OBJSENCE" => Section::ObjSense,
            "OBJNAME" => {
                if let Some(s) = rest.first() {
                    self.objective_name = Some(s.to_string());
                }
                Section::ObjName
            }
            "ROWS" => Section::Rows,
            "COLUMNS" => Section::Columns,
            "RHS" => Section::Rhs,
            "RANGES" => Section::Ranges,
            "BOUNDS" => Section::Bounds,
            "ENDATA" => Section::End,
            "SOS" | "QUADOBJ" | "QMATRIX" | "QSECTION" | "QCMATRIX" | "CSECTION" | "INDICATORS"
            | "GENCONS" | "PWLOBJ" | "PWLNAM" | "PWLCON" => {
                return Err(MpsError::Unsupported { line, feature: format!("{keyword} section") })
            }
            _ => return Err(MpsError::BadSection { line, header: raw.trim().to_string() }),
        };
        Ok(section)
    }

    fn set_sense(&mut self, s: &str, line: usize) -> Result<(), MpsError> {
        self.sense = match s.to_ascii_uppercase().as_str() {
            "MAX" | "MAXIMIZE" => ObjectiveSense::Maximize,
            "MIN" | "MINIMIZE" => ObjectiveSense::Minimize,
            other => return Err(MpsError::Malformed { line, message: format!("bad objective sense `{other}`") }),
        };
        Ok(())
    }

    fn objsense(&mut self, tokens: &[String], line: usize) -> Result<(), MpsError> {
        let t = expect_tokens(tokens, 1, line)?;
        self.set_sense(&t[0], line)
    }

    fn row(&mut self, tokens: &[String], line: usize) -> Result<(), MpsError> {
        let t = expect_tokens(tokens, 2, line)?;
        let (kind, name) = (t[0].to_ascii_uppercase(), t[1].clone());
        if self.row_refs.contains_key(&name) {
            return Err(MpsError::Malformed { line, message: format!("duplicate row `{name}`") });
        }
        let sense = match kind.as_str() {
            "N" => {
                let is_objective = match &self.objective_name {
                    Some(obj) => *obj == name,
                    None => !self.row_refs.values().any(|r| *r == RowRef::Objective),
                };
                if is_objective {
                    self.objective_name = Some(name.clone());
                    self.row_refs.insert(name, RowRef::Objective);
                } else {
                    warn!("dropping free row `{name}`");
                    self.row_refs.insert(name, RowRef::Dropped);
                }
                return Ok(());
            }
            "L" => Sense::Le,
            "E" => Sense::Eq,
            "G" => Sense::Ge,
            other => return Err(MpsError::Malformed { line, message: format!("bad row type `{other}`") }),
        };
        self.row_refs.insert(name.clone(), RowRef::Row(self.rows.len()));
        self.rows.push(RowDef { name, sense, rhs: 0.0, range: None, entries: Vec::new() });
        Ok(())
    }

    fn row_ref(&self, name: &str, line: usize) -> Result<RowRef, MpsError> {
        self.row_refs
            .get(name)
            .copied()
            .ok_or_else(|| MpsError::UnknownRow { line, name: name.to_string() })
    }

    fn column(&mut self, tokens: &[String], line: usize) -> Result<(), MpsError> {
        if tokens.iter().any(|t| t == "'MARKER'") {
            if tokens.iter().any(|t| t == "'INTORG'") {
                self.in_integer_block = true;
            } else if tokens.iter().any(|t| t == "'INTEND'") {
                self.in_integer_block = false;
            } else {
                return Err(MpsError::Malformed { line, message: "unrecognised MARKER".into() });
            }
            return Ok(());
        }
        if tokens.len() != 3 && tokens.len() != 5 {
            return Err(MpsError::Malformed { line, message: "COLUMNS record needs 3 or 5 fields".into() });
        }
        let name = &tokens[0];
        let j = match self.col_index.get(name) {
            Some(&j) => j,
            None => {
                let j = self.cols.len();
                self.col_index.insert(name.clone(), j);
                self.cols.push(ColDef {
                    name: name.clone(),
                    objective: 0.0,
                    lower: 0.0,
                    upper: f64::INFINITY,
                    lower_set: false,
                    integer: self.in_integer_block,
                });
                j
            }
        };
        for pair in tokens[1..].chunks(2) {
            let r = self.row_ref(&pair[0], line)?;
            let v = number(&pair[1], line)?;
            if !v.is_finite() {
                return Err(MpsError::BadNumber { line, text: pair[1].clone() });
            }
            if !self.seen.insert((r, j)) {
                return Err(MpsError::DuplicateEntry { line, row: pair[0].clone(), column: name.clone() });
            }
            match r {
                RowRef::Objective => self.cols[j].objective = v,
                RowRef::Dropped => {}
                RowRef::Row(i) => {
                    if v != 0.0 {
                        self.rows[i].entries.push((j, v));
                    }
                }
            }
        }
        Ok(())
    }

    /// Splits an RHS/RANGES record into (set name, pairs).
    fn split_set(tokens: &[String], line: usize, explicit_set: bool) -> Result<(Option<&str>, &[String]), MpsError> {
        let has_set = explicit_set || tokens.len() % 2 == 1;
        let (set, pairs) = if has_set {
            (tokens.first().map(String::as_str), tokens.get(1..).unwrap_or(&[]))
        } else {
            (None, tokens)
        };
        if pairs.is_empty() || pairs.len() % 2 != 0 || pairs.len() > 4 {
            return Err(MpsError::Malformed { line, message: "expected one or two (row, value) pairs".into() });
        }
        Ok((set, pairs))
    }

    fn accept_set(&mut self, set: Option<&str>) -> bool {
        let set = set.unwrap_or("").to_string();
        match &self.first_rhs_set {
            None => {
                self.first_rhs_set = Some(set);
                true
            }
            Some(first) if *first == set => true,
            Some(_) => {
                warn!("ignoring additional RHS/RANGES set `{set}`");
                false
            }
        }
    }

    fn rhs(&mut self, tokens: &[String], line: usize, explicit_set: bool) -> Result<(), MpsError> {
        let (set, pairs) = Self::split_set(tokens, line, explicit_set)?;
        if !self.accept_set(set) {
            return Ok(());
        }
        for pair in pairs.chunks(2) {
            let r = self.row_ref(&pair[0], line)?;
            let v = number(&pair[1], line)?;
            if !v.is_finite() {
                return Err(MpsError::BadNumber { line, text: pair[1].clone() });
            }
            if !self.rhs_seen.insert(r) {
                return Err(MpsError::Malformed { line, message: format!("duplicate RHS for row `{}`", pair[0]) });
            }
            match r {
                RowRef::Objective => self.objective_offset = -v,
                RowRef::Dropped => {}
                RowRef::Row(i) => self.rows[i].rhs = v,
            }
        }
        Ok(())
    }

    fn range(&mut self, tokens: &[String], line: usize, explicit_set: bool) -> Result<(), MpsError> {
        let (_, pairs) = Self::split_set(tokens, line, explicit_set)?;
        for pair in pairs.chunks(2) {
            let r = self.row_ref(&pair[0], line)?;
            let v = number(&pair[1], line)?;
            match r {
                RowRef::Row(i) => {
                    if self.rows[i].range.replace(v).is_some() {
                        return Err(MpsError::Malformed { line, message: format!("duplicate range for `{}`", pair[0]) });
                    }
                }
                _ => return Err(MpsError::Malformed { line, message: "RANGES on a free row".into() }),
            }
        }
        Ok(())
    }

    fn bound(&mut self, tokens: &[String], line: usize, explicit_set: bool) -> Result<(), MpsError> {
        let t = expect_tokens(tokens, 2, line)?;
        let kind = t[0].to_ascii_uppercase();
        let needs_value = matches!(kind.as_str(), "UP" | "LO" | "FX" | "LI" | "UI");
        // Decide whether field 2 is a bound-set name.
        let (col_name, value) = if explicit_set {
            (t.get(2), t.get(3))
        } else {
            match (needs_value, t.len()) {
                (true, 4) | (false, 4) => (t.get(2), t.get(3)),
                (true, 3) => (t.get(1), t.get(2)),
                (false, 3) => {
                    if self.col_index.contains_key(&t[2]) {
                        (t.get(2), None)
                    } else {
                        (t.get(1), t.get(2))
                    }
                }
                (false, 2) => (t.get(1), None),
                _ => return Err(MpsError::Malformed { line, message: "bad BOUNDS record".into() }),
            }
        };
        let col_name = col_name.ok_or(MpsError::Malformed { line, message: "missing column".into() })?;
        let j = *self
            .col_index
            .get(col_name)
            .ok_or_else(|| MpsError::UnknownColumn { line, name: col_name.clone() })?;
        let value = match (needs_value, value) {
            (true, None) => return Err(MpsError::Malformed { line, message: format!("{kind} bound needs a value") }),
            (_, Some(v)) => Some(bound_value(v, line)?),
            (false, None) => None,
        };
        let col = &mut self.cols[j];
        let set_upper = |col: &mut ColDef, v: f64| {
            col.upper = v;
            if v < 0.0 && col.lower == 0.0 && !col.lower_set {
                warn!("negative upper bound on `{}` with default lower bound; lower set to -inf", col.name);
                col.lower = f64::NEG_INFINITY;
            }
        };
        match kind.as_str() {
            "UP" => set_upper(col, value.unwrap()),
            "UI" => {
                col.integer = true;
                set_upper(col, value.unwrap());
            }
            "LO" | "LI" => {
                col.integer |= kind == "LI";
                col.lower = value.unwrap();
                col.lower_set = true;
            }
            "FX" => {
                col.lower = value.unwrap();
                col.upper = value.unwrap();
                col.lower_set = true;
            }
            "FR" => {
                col.lower = f64::NEG_INFINITY;
                col.upper = f64::INFINITY;
                col.lower_set = true;
            }
            "MI" => {
                col.lower = f64::NEG_INFINITY;
                col.lower_set = true;
            }
            "PL" => col.upper = f64::INFINITY,
            "BV" => {
                col.integer = true;
                col.lower = 0.0;
                col.upper = 1.0;
                col.lower_set = true;
            }
            "SC" => return Err(MpsError::Unsupported { line, feature: "semi-continuous bound (SC)".into() }),
            other => return Err(MpsError::Malformed { line, message: format!("bad bound type `{other}`") }),
        }
        Ok(())
    }

    fn finish(self) -> Result<MipInstance, MpsError> {
        if !self.row_refs.values().any(|r| *r == RowRef::Objective) {
            return Err(MpsError::NoObjective);
        }
        let mut b = MipBuilder::new(self.name);
        b.objective_sense(self.sense).objective_offset(self.objective_offset);
        let internal = |e: crate::error::Error| MpsError::Malformed { line: 0, message: e.to_string() };
        for c in &self.cols {
            b.add_variable(c.name.clone(), c.objective, c.lower, c.upper, c.integer).map_err(internal)?;
        }
        let mut extra = Vec::new();
        for r in &self.rows {
            let (sense, rhs, companion) = match (r.sense, r.range) {
                (_, None) | (Sense::Eq, Some(0.0)) => (r.sense, r.rhs, None),
                (Sense::Le, Some(v)) => (Sense::Le, r.rhs, Some((Sense::Ge, r.rhs - v.abs()))),
                (Sense::Ge, Some(v)) => (Sense::Ge, r.rhs, Some((Sense::Le, r.rhs + v.abs()))),
                (Sense::Eq, Some(v)) if v > 0.0 => (Sense::Ge, r.rhs, Some((Sense::Le, r.rhs + v))),
                (Sense::Eq, Some(v)) => (Sense::Le, r.rhs, Some((Sense::Ge, r.rhs + v))),
            };
            b.add_constraint(r.name.clone(), &r.entries, sense, rhs).map_err(internal)?;
            if let Some((s, v)) = companion {
                extra.push((format!("{}#range", r.name), r.entries.clone(), s, v));
            }
        }
        for (name, entries, s, v) in extra {
            b.add_constraint(name, &entries, s, v).map_err(internal)?;
        }
        Ok(b.build())
    }
}

/// Formats a value so that it parses back to the identical `f64`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".to_string()
    } else if (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn check_name(name: &str) -> Result<&str, MpsError> {
    if name.is_empty() || name.chars().any(char::is_whitespace) || name.starts_with('*') {
        Err(MpsError::UnwritableName(name.to_string()))
    } else {
        Ok(name)
    }
}

/// Emits a canonical free-format MPS document for `mip`.
pub fn write_mps(mip: &MipInstance) -> Result<String, MpsError> {
    let mut out = String::new();
    let mut obj = "OBJ".to_string();
    while mip.row_names().contains(&obj) {
        obj.push('_');
    }
    let _ = writeln!(out, "NAME {}", mip.name());
    if mip.objective_sense() == ObjectiveSense::Maximize {
        let _ = writeln!(out, "OBJSENSE\n    MAX");
    }
    out.push_str("ROWS\n");
    let _ = writeln!(out, " N  {obj}");
    for (i, name) in mip.row_names().iter().enumerate() {
        let _ = writeln!(out, " {}  {}", mip.senses()[i].mps_code(), check_name(name)?);
    }

    out.push_str("COLUMNS\n");
    let mut in_int = false;
    for j in 0..mip.n() {
        let name = check_name(&mip.var_names()[j])?;
        let integer = mip.is_integer()[j];
        if integer != in_int {
            let tag = if integer { "'INTORG'" } else { "'INTEND'" };
            let _ = writeln!(out, "    MARKER  'MARKER'  {tag}");
            in_int = integer;
        }
        let c = mip.objective()[j];
        if c != 0.0 || mip.column(j).is_empty() {
            let _ = writeln!(out, "    {name}  {obj}  {}", format_number(c));
        }
        for &(i, v) in mip.column(j) {
            let _ = writeln!(out, "    {name}  {}  {}", mip.row_names()[i], format_number(v));
        }
    }
    if in_int {
        out.push_str("    MARKER  'MARKER'  'INTEND'\n");
    }

    out.push_str("RHS\n");
    for (i, &b) in mip.rhs().iter().enumerate() {
        if b != 0.0 {
            let _ = writeln!(out, "    RHS  {}  {}", mip.row_names()[i], format_number(b));
        }
    }
    if mip.objective_offset() != 0.0 {
        let _ = writeln!(out, "    RHS  {obj}  {}", format_number(-mip.objective_offset()));
    }

    out.push_str("BOUNDS\n");
    for j in 0..mip.n() {
        let name = &mip.var_names()[j];
        let (lo, up) = (mip.lower()[j], mip.upper()[j]);
        if lo == f64::NEG_INFINITY && up == f64::INFINITY {
            let _ = writeln!(out, " FR BND  {name}");
            continue;
        }
        if up != f64::INFINITY {
            let _ = writeln!(out, " UP BND  {name}  {}", format_number(up));
        }
        if lo == f64::NEG_INFINITY {
            let _ = writeln!(out, " MI BND  {name}");
        } else if lo != 0.0 || up < 0.0 {
            let _ = writeln!(out, " LO BND  {name}  {}", format_number(lo));
        }
    }
    out.push_str("ENDATA\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const KNAPSACK: &str = include_str!("../tests/data/knapsack.mps");

    #[test]
    fn knapsack_dimensions() {
        let mip = parse_mps(KNAPSACK).unwrap();
        assert_eq!((mip.n(), mip.m()), (7, 1));
        assert_eq!(mip.objective(), &[1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0]);
        assert_eq!(mip.coefficient(0, 2).unwrap(), 2.0);
        assert_eq!(mip.rhs(), &[100.0]);
        assert!(mip.is_integer().iter().all(|&b| b));
        assert_eq!(mip.objective_sense(), ObjectiveSense::Maximize);
    }

    #[test]
    fn single_variable_no_constraints() {
        let text = "NAME one\nROWS\n N obj\nCOLUMNS\n    x obj 1\nRHS\nBOUNDS\nENDATA\n";
        let mip = parse_mps(text).unwrap();
        assert_eq!((mip.n(), mip.m()), (1, 0));
        assert_eq!(mip.upper()[0], f64::INFINITY);
        assert_eq!(mip.lower()[0], 0.0);
    }

    #[test]
    fn duplicate_entry_rejected() {
        let text = "NAME d\nROWS\n N obj\n L c\nCOLUMNS\n    x c 1\n    x c 2\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(MpsError::DuplicateEntry { line: 7, .. })));
    }

    #[test]
    fn unknown_references_rejected() {
        let text = "NAME d\nROWS\n N obj\n L c\nCOLUMNS\n    x nope 1\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(MpsError::UnknownRow { .. })));
        let text = "NAME d\nROWS\n N obj\n L c\nCOLUMNS\n    x c 1\nBOUNDS\n UP BND y 4\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(MpsError::UnknownColumn { .. })));
    }

    #[test]
    fn sos_is_unsupported() {
        let text = "NAME d\nROWS\n N obj\nCOLUMNS\n    x obj 1\nSOS\n S1 SOS s1 1\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(MpsError::Unsupported { .. })));
    }

    #[test]
    fn bad_header_rejected() {
        let text = "NAME d\nROWZ\n N obj\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(MpsError::BadSection { line: 2, .. })));
    }

    #[test]
    fn ranges_expand_to_two_rows() {
        let text = "NAME r\nROWS\n N obj\n L c\n E e\nCOLUMNS\n    x c 1 e 1\nRHS\n    RHS c 10 e 4\nRANGES\n    RNG c 3 e -2\nENDATA\n";
        let mip = parse_mps(text).unwrap();
        assert_eq!(mip.m(), 4);
        assert_eq!(mip.row_names(), &["c", "e", "c#range", "e#range"]);
        assert_eq!(mip.senses(), &[Sense::Le, Sense::Le, Sense::Ge, Sense::Ge]);
        assert_eq!(mip.rhs(), &[10.0, 4.0, 7.0, 2.0]);
    }

    #[test]
    fn extra_free_rows_dropped() {
        let text = "NAME f\nROWS\n N obj\n N other\n G c\nCOLUMNS\n    x obj 2 other 5\n    x c 1\nRHS\n    RHS c 1 other 3\nENDATA\n";
        let mip = parse_mps(text).unwrap();
        assert_eq!(mip.m(), 1);
        assert_eq!(mip.objective(), &[2.0]);
    }

    #[test]
    fn bound_types() {
        let text = "NAME b\nROWS\n N obj\nCOLUMNS\n    a obj 1\n    b obj 1\n    c obj 1\n    d obj 1\n    e obj 1\nBOUNDS\n UP BND a -3\n BV BND b\n FR BND c\n LI BND d 2\n UI BND d 9\n MI BND e\n UP BND e 1e31\nENDATA\n";
        let mip = parse_mps(text).unwrap();
        assert_eq!((mip.lower()[0], mip.upper()[0]), (f64::NEG_INFINITY, -3.0));
        assert_eq!((mip.lower()[1], mip.upper()[1], mip.is_integer()[1]), (0.0, 1.0, true));
        assert_eq!((mip.lower()[2], mip.upper()[2]), (f64::NEG_INFINITY, f64::INFINITY));
        assert_eq!((mip.lower()[3], mip.upper()[3], mip.is_integer()[3]), (2.0, 9.0, true));
        assert_eq!((mip.lower()[4], mip.upper()[4]), (f64::NEG_INFINITY, f64::INFINITY));
    }

    #[test]
    fn fixed_format_names_with_spaces() {
        let text = "\
NAME          fixed
ROWS
 N  COST
 L  LIM 1
COLUMNS
    X ONE     COST      1.0            LIM 1     1.0
    X TWO     COST      2.0            LIM 1     3.0
RHS
    RHS       LIM 1     4.0
BOUNDS
 UP BND       X ONE     1.0
ENDATA
";
        let mip = parse_mps_with(text, MpsFormat::Fixed).unwrap();
        assert_eq!(mip.var_names(), &["X ONE", "X TWO"]);
        assert_eq!(mip.row_names(), &["LIM 1"]);
        assert_eq!(mip.row(0), &[(0, 1.0), (1, 3.0)]);
        assert_eq!(mip.rhs(), &[4.0]);
        assert_eq!(mip.upper()[0], 1.0);
    }

    #[test]
    fn round_trip_knapsack() {
        let mip = parse_mps(KNAPSACK).unwrap();
        let again = parse_mps(&write_mps(&mip).unwrap()).unwrap();
        assert_eq!(mip, again);
    }

    #[test]
    fn format_number_round_trips() {
        for v in [1.0, -2.5, 1e-9, 3.0e20, 0.1, 1.0 / 3.0, -7e300] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }
}
