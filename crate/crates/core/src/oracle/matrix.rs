use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::laurent::LaurentPoly;

/// Sparse square matrix over `Z[v, v^-1]`, stored row by row.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| LaurentPoly::one()))
    }

    pub fn diagonal(entries: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let rows: Vec<_> = entries
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let mut r = BTreeMap::new();
                if !p.is_zero() {
                    r.insert(i, p);
                }
                r
            })
            .collect();
        Self {
            dim: rows.len(),
            rows,
        }
    }

    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, LaurentPoly)>,
    ) -> Self {
        let mut m = Self::zero(dim);
        for (r, c, p) in entries {
            m.add_entry(r, c, &p);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentPoly {
        self.rows[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, p)| (r, *c, p)))
    }

    fn add_entry(&mut self, r: usize, c: usize, p: &LaurentPoly) {
        assert!(r < self.dim && c < self.dim, "index ({r},{c}) out of range");
        if p.is_zero() {
            return;
        }
        let slot = self.rows[r].entry(c).or_default();
        *slot += p;
        if slot.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (r, c, p) in other.entries() {
            out.add_entry(r, c, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, s: &LaurentPoly) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, p)| (*c, p * s)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    out.add_entry(r, *c, &(a * b));
                }
            }
        }
        out
    }

    /// Kronecker product; `self` is the most significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let n = other.dim;
        let mut out = Self::zero(self.dim * n);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.add_entry(r1 * n + r2, c1 * n + c2, &(a * b));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.dim, self.entries().map(|(r, c, p)| (c, r, p.clone())))
    }

    /// Entrywise exact division.
    pub fn exact_div(&self, s: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (r, c, p) in self.entries() {
            out.add_entry(r, c, &p.exact_div(s)?);
        }
        Ok(out)
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(
        &self,
        other: &Self,
    ) -> Option<(usize, usize, LaurentPoly, LaurentPoly)> {
        assert_eq!(self.dim, other.dim);
        for r in 0..self.dim {
            if self.rows[r] == other.rows[r] {
                continue;
            }
            for c in self.rows[r].keys().chain(other.rows[r].keys()) {
                let (x, y) = (self.get(r, *c), other.get(r, *c));
                if x != y {
                    return Some((r, *c, x, y));
                }
            }
        }
        None
    }

    /// The matrix as a sparse vector of length `dim^2`.
    pub fn flatten(&self) -> BTreeMap<usize, LaurentPoly> {
        self.entries()
            .map(|(r, c, p)| (r * self.dim + c, p.clone()))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(r, c, _)| r == c)
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentMatrix({}x{}", self.dim, self.dim)?;
        for (r, c, p) in self.entries() {
            write!(f, ", ({r},{c}): {p}")?;
        }
        f.write_str(")")
    }
}

/// `{"dim": n, "entries": [[r, c, laurent-json], ...]}`.
impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<_> = self.entries().collect();
        let mut st = serializer.serialize_struct("LaurentMatrix", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            entries: Vec<(usize, usize, LaurentPoly)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if let Some((r, c, _)) = raw
            .entries
            .iter()
            .find(|(r, c, _)| *r >= raw.dim || *c >= raw.dim)
        {
            return Err(serde::de::Error::custom(format!(
                "entry ({r},{c}) outside a {0}x{0} matrix",
                raw.dim
            )));
        }
        Ok(Self::from_entries(raw.dim, raw.entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_kron() {
        let v = LaurentPoly::v();
        let a = LaurentMatrix::from_entries(2, [(0, 1, LaurentPoly::one())]);
        let b = LaurentMatrix::from_entries(2, [(1, 0, LaurentPoly::one())]);
        assert_eq!(
            a.mul(&b),
            LaurentMatrix::from_entries(2, [(0, 0, LaurentPoly::one())])
        );
        let k = LaurentMatrix::diagonal([v.clone(), LaurentPoly::one()]);
        let kk = k.kron(&k);
        assert_eq!(
            kk,
            LaurentMatrix::diagonal([v.pow(2), v.clone(), v.clone(), LaurentPoly::one()])
        );
        assert_eq!(a.transpose(), b);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn json_shape() {
        let m = LaurentMatrix::from_entries(2, [(0, 1, LaurentPoly::v())]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"dim":2,"entries":[[0,1,[[1,"1"]]]]}"#);
        let back: LaurentMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(
            serde_json::from_str::<LaurentMatrix>(r#"{"dim":1,"entries":[[0,1,[[1,"1"]]]]}"#)
                .is_err()
        );
    }
}
