//! Sparse row echelon over an exact field.
//!
//! Rows are sparse column->coefficient maps. Each stored row is normalized to
//! leading coefficient 1 and owns a distinct pivot column, so reducing a
//! vector against the stored rows yields a canonical residue supported on
//! non-pivot columns: two vectors are congruent modulo the row span iff their
//! residues are equal. Optional tracking records every stored row as an exact
//! combination of the originally inserted vectors, which turns a dependent
//! insert into an explicit linear dependency.

use std::collections::BTreeMap;

use crate::field::{FieldSpec, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Outcome of inserting a vector into the echelon.
#[derive(Debug, Clone, PartialEq)]
pub enum Inserted {
    /// The vector enlarged the span.
    Independent,
    /// The vector already lay in the span; with tracking enabled,
    /// `combination` gives coefficients over previously inserted vector
    /// indices reconstructing it exactly.
    Dependent { combination: Vec<(usize, Scalar)> },
}

pub struct Echelon {
    field: FieldSpec,
    rows: Vec<Row>,
    pivot_row: BTreeMap<usize, usize>,
    track: bool,
    inserted: usize,
}

struct Row {
    body: SparseVec,
    /// Coefficients over original insert indices with body = sum aug[j]*v_j.
    aug: SparseVec,
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
            track: false,
            inserted: 0,
        }
    }

    pub fn with_tracking(field: FieldSpec) -> Self {
        let mut e = Echelon::new(field);
        e.track = true;
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of insert calls so far (indexes the tracked combinations).
    pub fn inserted_count(&self) -> usize {
        self.inserted
    }

    fn axpy(field: FieldSpec, target: &mut SparseVec, coeff: &Scalar, source: &SparseVec) {
        // target -= coeff * source
        for (col, val) in source {
            let delta = field.mul(coeff, val);
            match target.entry(*col) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    let neg = field.neg(&delta);
                    if !field.is_zero(&neg) {
                        e.insert(neg);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let diff = field.sub(e.get(), &delta);
                    if field.is_zero(&diff) {
                        e.remove();
                    } else {
                        e.insert(diff);
                    }
                }
            }
        }
    }

    fn reduce_tracked(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut comb: SparseVec = BTreeMap::new();
        // Full normal form: walk the vector left to right, eliminating every
        // entry that sits on a pivot column. A subtraction only touches
        // columns at or after the current one (row entries start at their
        // leading column), so a single pass suffices.
        let mut cursor = 0usize;
        loop {
            let Some((&col, coeff)) = v.range(cursor..).next() else {
                break;
            };
            let Some(&row_idx) = self.pivot_row.get(&col) else {
                cursor = col + 1;
                continue;
            };
            let coeff = coeff.clone();
            let row = &self.rows[row_idx];
            Self::axpy(self.field, &mut v, &coeff, &row.body);
            if self.track {
                // comb += coeff * row.aug
                let neg = self.field.neg(&coeff);
                Self::axpy(self.field, &mut comb, &neg, &row.aug);
            }
        }
        (v, comb)
    }

    /// Canonical representative of `v` modulo the current row span.
    pub fn residue(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v.clone()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.residue(v).is_empty()
    }

    pub fn insert(&mut self, v: SparseVec) -> Inserted {
        let idx = self.inserted;
        self.inserted += 1;
        let (reduced, comb) = self.reduce_tracked(v);
        if reduced.is_empty() {
            return Inserted::Dependent {
                combination: comb.into_iter().collect(),
            };
        }
        let (&lead, lead_coeff) = reduced.iter().next().expect("nonzero");
        let inv = self.field.inv(lead_coeff).expect("unit leading coefficient");
        let mut body = BTreeMap::new();
        for (col, val) in &reduced {
            body.insert(*col, self.field.mul(val, &inv));
        }
        let mut aug = BTreeMap::new();
        if self.track {
            // body = (v - sum comb[j] v_j) / lead, so over originals:
            aug.insert(idx, inv.clone());
            for (j, c) in &comb {
                let scaled = self.field.mul(c, &inv);
                let neg = self.field.neg(&scaled);
                if !self.field.is_zero(&neg) {
                    aug.insert(*j, neg);
                }
            }
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(Row { body, aug });
        Inserted::Independent
    }

    /// Columns currently holding a pivot.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecmap(field: FieldSpec, entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (*i, field.from_i64(*c)))
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let f = FieldSpec::Rationals;
        let mut e = Echelon::new(f);
        assert_eq!(e.insert(vecmap(f, &[(0, 1), (1, 2)])), Inserted::Independent);
        assert_eq!(e.insert(vecmap(f, &[(1, 1), (2, 1)])), Inserted::Independent);
        // Row 3 = row 1 + 2 * row 2.
        let dep = e.insert(vecmap(f, &[(0, 1), (1, 4), (2, 2)]));
        assert!(matches!(dep, Inserted::Dependent { .. }));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn dependency_combination_reconstructs_vector() {
        let f = FieldSpec::Prime(5);
        let mut e = Echelon::with_tracking(f);
        let v0 = vecmap(f, &[(0, 2), (1, 1)]);
        let v1 = vecmap(f, &[(1, 3), (2, 4)]);
        let v2 = vecmap(f, &[(0, 4), (1, 2), (2, 0)]); // 2 * v0
        e.insert(v0.clone());
        e.insert(v1.clone());
        let Inserted::Dependent { combination } = e.insert(v2.clone()) else {
            panic!("expected dependent insert");
        };
        let originals = [v0, v1];
        let mut recon: SparseVec = BTreeMap::new();
        for (j, c) in &combination {
            let neg = f.neg(c);
            Echelon::axpy(f, &mut recon, &neg, &originals[*j]);
        }
        assert_eq!(recon, v2);
    }

    #[test]
    fn residue_is_canonical() {
        let f = FieldSpec::Rationals;
        let mut e = Echelon::new(f);
        e.insert(vecmap(f, &[(0, 1), (2, 1)]));
        e.insert(vecmap(f, &[(1, 1), (2, -1)]));
        // Congruent vectors get equal residues.
        let a = vecmap(f, &[(0, 3), (1, 1), (2, 5)]);
        let b = vecmap(f, &[(1, 1), (2, 2)]); // a - 3 * row0
        assert_eq!(e.residue(&a), e.residue(&b));
        // Residues are supported off the pivot columns and are fixed points.
        let r = e.residue(&a);
        for col in e.pivot_columns() {
            assert!(!r.contains_key(&col));
        }
        assert_eq!(e.residue(&r), r);
        // A vector in the span has zero residue.
        assert!(e.contains(&vecmap(f, &[(0, 2), (1, 1), (2, 1)])));
    }

    #[test]
    fn residue_reduces_past_pivot_free_columns() {
        let f = FieldSpec::Rationals;
        let mut e = Echelon::new(f);
        e.insert(vecmap(f, &[(3, 1), (4, 2)])); // pivot on column 3
        // Column 1 has no pivot; the tail entry on column 3 must still be
        // eliminated.
        let v = vecmap(f, &[(1, 5), (3, 2), (4, 1)]);
        let r = e.residue(&v);
        assert!(!r.contains_key(&3));
        assert_eq!(r, vecmap(f, &[(1, 5), (4, -3)]));
        assert_eq!(e.residue(&r), r);
    }
}
