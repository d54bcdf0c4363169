use std::collections::BTreeMap;

use super::LaurentMatrix;
use crate::laurent::LaurentPoly;

type SparseRow = BTreeMap<usize, LaurentPoly>;

struct Pivot {
    col: usize,
    row: SparseRow,
    /// Pivot entry; `1` after normalizing a unit pivot.
    lead: LaurentPoly,
}

/// Rank over `Q(v)` of the matrices viewed as vectors of length `dim^2`.
///
/// Fraction-free incremental row echelon form over `Z[v, v^-1]`. Unit pivots
/// (`±v^k`) are normalized to 1 so elimination stays division-free; other
/// pivots are eliminated by cross-multiplication.
pub fn span_rank(matrices: &[LaurentMatrix]) -> usize {
    if let Some(first) = matrices.first() {
        assert!(
            matrices.iter().all(|m| m.dim() == first.dim()),
            "span_rank needs matrices of equal dimension"
        );
    }
    let mut pivots: Vec<Pivot> = Vec::new();
    for m in matrices {
        let mut row = m.flatten();
        for p in &pivots {
            let Some(x) = row.get(&p.col).cloned() else {
                continue;
            };
            if !p.lead.is_one() {
                row = scale_row(&row, &p.lead);
            }
            axpy(&mut row, &p.row, &-x);
            if row.is_empty() {
                break;
            }
        }
        if row.is_empty() {
            continue;
        }
        let unit = row
            .iter()
            .find(|(_, x)| x.is_unit())
            .map(|(c, x)| (*c, x.clone()));
        let pivot = match unit {
            Some((col, x)) => {
                // x = ±v^k, so x^-1 = ±v^-k
                let (k, s) = x.terms().next().unwrap();
                let inv = LaurentPoly::monomial(s.clone(), -k);
                Pivot {
                    col,
                    row: scale_row(&row, &inv),
                    lead: LaurentPoly::one(),
                }
            }
            None => {
                let (col, x) = row
                    .iter()
                    .min_by_key(|(_, x)| x.num_terms())
                    .map(|(c, x)| (*c, x.clone()))
                    .unwrap();
                Pivot { col, row, lead: x }
            }
        };
        pivots.push(pivot);
    }
    pivots.len()
}

fn scale_row(row: &SparseRow, s: &LaurentPoly) -> SparseRow {
    row.iter().map(|(c, x)| (*c, x * s)).collect()
}

/// `row += s * other`
fn axpy(row: &mut SparseRow, other: &SparseRow, s: &LaurentPoly) {
    for (c, x) in other {
        let slot = row.entry(*c).or_default();
        *slot += &(x * s);
        if slot.is_zero() {
            row.remove(c);
        }
    }
}
