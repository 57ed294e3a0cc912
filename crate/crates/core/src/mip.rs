//! In-memory MIP model: `c^T x` subject to `Ax (<=|=|>=) b`, bounds and
//! integrality, stored with a sparse row-wise coefficient matrix.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn mps_code(self) -> &'static str {
        match self {
            Sense::Le => "L",
            Sense::Eq => "E",
            Sense::Ge => "G",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ObjectiveSense {
    #[default]
    Minimize,
    Maximize,
}

/// A parsed mixed-integer program.
///
/// Every stored matrix coefficient is nonzero. Rows are kept sorted by
/// column index and a column-wise copy is maintained alongside for
/// column-oriented queries.
#[derive(Debug, Clone, PartialEq)]
pub struct MipInstance {
    name: String,
    objective_sense: ObjectiveSense,
    objective: Vec<f64>,
    objective_offset: f64,
    rows: Vec<Vec<(usize, f64)>>,
    columns: Vec<Vec<(usize, f64)>>,
    rhs: Vec<f64>,
    senses: Vec<Sense>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    is_integer: Vec<bool>,
    var_names: Vec<String>,
    row_names: Vec<String>,
}

impl MipInstance {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.objective.len()
    }

    /// Number of constraints.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn objective_sense(&self) -> ObjectiveSense {
        self.objective_sense
    }

    /// Dense objective vector `c` (zeros for absent entries).
    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    /// Constant term of the objective (negated RHS of the objective row).
    pub fn objective_offset(&self) -> f64 {
        self.objective_offset
    }

    /// Sparse row `i` of `A`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    /// Sparse column `j` of `A`, sorted by row.
    pub fn column(&self, j: usize) -> &[(usize, f64)] {
        &self.columns[j]
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn is_integer(&self) -> &[bool] {
        &self.is_integer
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn row_names(&self) -> &[String] {
        &self.row_names
    }

    /// Number of stored nonzeros in `A`.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `A[i][j]`, with absent sparse entries reported as `0.0`.
    pub fn coefficient(&self, i: usize, j: usize) -> Result<f64> {
        if i >= self.m() {
            return Err(Error::IndexOutOfRange { index: i, len: self.m() });
        }
        if j >= self.n() {
            return Err(Error::IndexOutOfRange { index: j, len: self.n() });
        }
        Ok(lookup(&self.rows[i], j))
    }

    /// Indices of the integer variables, ascending.
    pub fn integer_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.is_integer[j]).collect()
    }
}

pub(crate) fn lookup(row: &[(usize, f64)], j: usize) -> f64 {
    match row.binary_search_by_key(&j, |&(c, _)| c) {
        Ok(pos) => row[pos].1,
        Err(_) => 0.0,
    }
}

/// Incremental constructor for [`MipInstance`].
#[derive(Debug, Clone, Default)]
pub struct MipBuilder {
    name: String,
    objective_sense: ObjectiveSense,
    objective: Vec<f64>,
    objective_offset: f64,
    rows: Vec<Vec<(usize, f64)>>,
    rhs: Vec<f64>,
    senses: Vec<Sense>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    is_integer: Vec<bool>,
    var_names: Vec<String>,
    row_names: Vec<String>,
    var_index: HashMap<String, usize>,
    row_index: HashMap<String, usize>,
}

impl MipBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        MipBuilder { name: name.into(), ..Default::default() }
    }

    pub fn objective_sense(&mut self, sense: ObjectiveSense) -> &mut Self {
        self.objective_sense = sense;
        self
    }

    pub fn objective_offset(&mut self, offset: f64) -> &mut Self {
        self.objective_offset = offset;
        self
    }

    /// Adds a variable and returns its index.
    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        objective: f64,
        lower: f64,
        upper: f64,
        integer: bool,
    ) -> Result<usize> {
        let name = name.into();
        if !objective.is_finite() {
            return Err(Error::InvalidInstance(format!("objective of `{name}` is not finite")));
        }
        if lower.is_nan() || upper.is_nan() {
            return Err(Error::InvalidInstance(format!("bound of `{name}` is NaN")));
        }
        let j = self.objective.len();
        if self.var_index.insert(name.clone(), j).is_some() {
            return Err(Error::InvalidInstance(format!("duplicate variable name `{name}`")));
        }
        self.objective.push(objective);
        self.lower.push(lower);
        self.upper.push(upper);
        self.is_integer.push(integer);
        self.var_names.push(name);
        Ok(j)
    }

    /// Adds a constraint `sum coeffs (sense) rhs`. Zero coefficients are dropped;
    /// repeating a column is an error.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        coeffs: &[(usize, f64)],
        sense: Sense,
        rhs: f64,
    ) -> Result<usize> {
        let name = name.into();
        if !rhs.is_finite() {
            return Err(Error::InvalidInstance(format!("rhs of `{name}` is not finite")));
        }
        let mut row: Vec<(usize, f64)> = Vec::with_capacity(coeffs.len());
        for &(j, v) in coeffs {
            if j >= self.objective.len() {
                return Err(Error::IndexOutOfRange { index: j, len: self.objective.len() });
            }
            if !v.is_finite() {
                return Err(Error::InvalidInstance(format!("coefficient in `{name}` is not finite")));
            }
            row.push((j, v));
        }
        row.sort_by_key(|&(j, _)| j);
        if row.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInstance(format!("duplicate column in row `{name}`")));
        }
        row.retain(|&(_, v)| v != 0.0);
        let i = self.rows.len();
        if self.row_index.insert(name.clone(), i).is_some() {
            return Err(Error::InvalidInstance(format!("duplicate row name `{name}`")));
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        self.senses.push(sense);
        self.row_names.push(name);
        Ok(i)
    }

    pub fn build(self) -> MipInstance {
        let n = self.objective.len();
        let mut columns = vec![Vec::new(); n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                columns[j].push((i, v));
            }
        }
        MipInstance {
            name: self.name,
            objective_sense: self.objective_sense,
            objective: self.objective,
            objective_offset: self.objective_offset,
            rows: self.rows,
            columns,
            rhs: self.rhs,
            senses: self.senses,
            lower: self.lower,
            upper: self.upper,
            is_integer: self.is_integer,
            var_names: self.var_names,
            row_names: self.row_names,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_rows() -> MipInstance {
        let mut b = MipBuilder::new("t");
        let x0 = b.add_variable("x0", 1.0, 0.0, f64::INFINITY, true).unwrap();
        let x1 = b.add_variable("x1", 1.0, 0.0, f64::INFINITY, true).unwrap();
        b.add_constraint("r0", &[(x0, 3.0), (x1, 4.0)], Sense::Le, 5.0).unwrap();
        b.add_constraint("r1", &[(x1, 2.0)], Sense::Le, 5.0).unwrap();
        b.build()
    }

    #[test]
    fn coefficient_reports_implicit_zero() {
        let mip = two_rows();
        assert_eq!(mip.coefficient(0, 1).unwrap(), 4.0);
        assert_eq!(mip.coefficient(1, 0).unwrap(), 0.0);
        assert_eq!(mip.column(1), &[(0, 4.0), (1, 2.0)]);
    }

    #[test]
    fn coefficient_out_of_range() {
        let mip = two_rows();
        assert!(matches!(mip.coefficient(2, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(mip.coefficient(0, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut b = MipBuilder::new("z");
        let x = b.add_variable("x", 0.0, 0.0, 1.0, false).unwrap();
        let y = b.add_variable("y", 0.0, 0.0, 1.0, false).unwrap();
        b.add_constraint("r", &[(x, 0.0), (y, 1.0)], Sense::Eq, 1.0).unwrap();
        let mip = b.build();
        assert_eq!(mip.row(0), &[(1, 1.0)]);
        assert_eq!(mip.nnz(), 1);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut b = MipBuilder::new("d");
        b.add_variable("x", 0.0, 0.0, 1.0, false).unwrap();
        assert!(b.add_variable("x", 0.0, 0.0, 1.0, false).is_err());
        b.add_constraint("r", &[], Sense::Le, 0.0).unwrap();
        assert!(b.add_constraint("r", &[], Sense::Le, 0.0).is_err());
        assert!(b.add_constraint("s", &[(0, 1.0), (0, 2.0)], Sense::Le, 0.0).is_err());
    }
}
