//! Exact linear algebra over a number field.

use crate::coeffs::{Field, FieldElement};

/// A reduced row echelon form that grows one row at a time.
///
/// Pivots are chosen by a column priority order, so that the rank of the
/// submatrix on any prefix of that order equals the number of pivots in it.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    priority: Vec<usize>,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Self {
        Self::with_order(field, &(0..ncols).collect::<Vec<_>>())
    }

    /// `order` lists every column once, highest priority first.
    pub fn with_order(field: &Field, order: &[usize]) -> Self {
        let ncols = order.len();
        let mut priority = vec![usize::MAX; ncols];
        for (rank, &c) in order.iter().enumerate() {
            priority[c] = rank;
        }
        assert!(priority.iter().all(|&p| p != usize::MAX), "column order must be a permutation");
        Echelon { field: field.clone(), priority, rows: Vec::new(), pivots: Vec::new(), row_of_col: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.priority.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Position of column `c` in the priority order.
    pub fn priority(&self, c: usize) -> usize {
        self.priority[c]
    }

    pub fn row_with_pivot(&self, c: usize) -> Option<&[FieldElement]> {
        self.row_of_col[c].map(|i| self.rows[i].as_slice())
    }

    pub fn reduce(&self, mut row: Vec<FieldElement>) -> Vec<FieldElement> {
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            if row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = &*x - &(&k * y);
                }
            }
        }
        row
    }

    /// Adds a row; returns its pivot column when it was independent.
    pub fn insert(&mut self, row: Vec<FieldElement>) -> Option<usize> {
        debug_assert_eq!(row.len(), self.ncols());
        let row = self.reduce(row);
        let pc = (0..row.len()).filter(|&c| !row[c].is_zero()).min_by_key(|&c| self.priority[c])?;
        let inv = row[pc].inv().expect("nonzero pivot");
        let row: Vec<FieldElement> = row.iter().map(|x| if x.is_zero() { x.clone() } else { x * &inv }).collect();
        for r in self.rows.iter_mut() {
            if r[pc].is_zero() {
                continue;
            }
            let k = r[pc].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = &*x - &(&k * y);
                }
            }
        }
        self.row_of_col[pc] = Some(self.rows.len());
        self.rows.push(row);
        self.pivots.push(pc);
        Some(pc)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}

pub fn rank(field: &Field, rows: impl IntoIterator<Item = Vec<FieldElement>>, ncols: usize) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// A basis of `{v : M v = 0}`.
pub fn nullspace(field: &Field, rows: impl IntoIterator<Item = Vec<FieldElement>>, ncols: usize) -> Vec<Vec<FieldElement>> {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if e.row_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![FieldElement::zero(field); ncols];
        v[free] = FieldElement::one(field);
        for (r, &pc) in e.rows.iter().zip(&e.pivots) {
            if !r[free].is_zero() {
                v[pc] = -&r[free];
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::FieldSpec;

    fn row(f: &Field, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_int(f, x)).collect()
    }

    #[test]
    fn prefix_ranks_follow_priority() {
        let f = FieldSpec::rationals();
        let mut e = Echelon::with_order(&f, &[2, 1, 0]);
        e.insert(row(&f, &[1, 1, 0]));
        e.insert(row(&f, &[1, 0, 0]));
        // columns 2 is never hit, column 1 carries one pivot, column 0 the other
        let mut ps: Vec<usize> = e.pivots().iter().map(|&c| e.priority(c)).collect();
        ps.sort();
        assert_eq!(ps, vec![1, 2]);
        assert!(e.insert(row(&f, &[2, 1, 0])).is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = FieldSpec::rationals();
        let m = vec![row(&f, &[1, 2, 3, 4]), row(&f, &[2, 4, 6, 9])];
        let ker = nullspace(&f, m.clone(), 4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in &m {
                let dot = r.iter().zip(v).fold(FieldElement::zero(&f), |acc, (a, b)| &acc + &(a * b));
                assert!(dot.is_zero());
            }
        }
    }
}
