//! Sparse matrices over GF(2)/GF(3) and exact elimination.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::packed::PackedVec;

/// Sparse vector: sorted `(index, value)` pairs with nonzero values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GFVector {
    pub field: Field,
    pub len: usize,
    pub support: Vec<(u32, u8)>,
}

impl GFVector {
    pub fn zeros(field: Field, len: usize) -> Self {
        GFVector { field, len, support: Vec::new() }
    }

    pub fn from_packed(v: &PackedVec) -> Self {
        GFVector { field: v.field, len: v.len, support: v.entries() }
    }

    pub fn from_dense(field: Field, dense: &[u8]) -> Self {
        let support = dense
            .iter()
            .enumerate()
            .filter(|(_, &x)| x % field.q() != 0)
            .map(|(i, &x)| (i as u32, x % field.q()))
            .collect();
        GFVector { field, len: dense.len(), support }
    }

    pub fn to_packed(&self) -> PackedVec {
        PackedVec::from_entries(self.field, self.len, &self.support)
    }

    pub fn to_dense(&self) -> Vec<u8> {
        let mut d = vec![0u8; self.len];
        for &(i, x) in &self.support {
            d[i as usize] = x;
        }
        d
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

/// Column-major sparse matrix. Column `j` lists `(row, value)` sorted by row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(u32, u8)>>,
}

impl GFMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        GFMatrix { field, rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for (j, c) in m.columns.iter_mut().enumerate() {
            c.push((j as u32, 1));
        }
        m
    }

    /// Builds from accumulated triplets; duplicate positions are summed.
    pub fn from_triplets(field: Field, rows: usize, cols: usize, t: &[(u32, u32, u8)]) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for &(r, c, v) in t {
            m.columns[c as usize].push((r, v % field.q()));
        }
        for c in m.columns.iter_mut() {
            normalize_column(field, c);
        }
        m
    }

    pub fn from_dense(field: Field, rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x % field.q() != 0 {
                    t.push((i as u32, j as u32, x));
                }
            }
        }
        Self::from_triplets(field, r, c, &t)
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.columns[c]
            .binary_search_by_key(&(r as u32), |e| e.0)
            .map_or(0, |k| self.columns[c][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn column_packed(&self, j: usize) -> PackedVec {
        PackedVec::from_entries(self.field, self.rows, &self.columns[j])
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut t = GFMatrix::zeros(self.field, self.cols, self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                t.columns[r as usize].push((j as u32, v));
            }
        }
        t
    }

    pub fn scale(&self, c: u8) -> GFMatrix {
        let f = self.field;
        let mut out = self.clone();
        for col in out.columns.iter_mut() {
            for e in col.iter_mut() {
                e.1 = f.mul(e.1, c);
            }
            col.retain(|e| e.1 != 0);
        }
        out
    }

    pub fn add(&self, o: &GFMatrix) -> GFMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (j, col) in out.columns.iter_mut().enumerate() {
            col.extend_from_slice(&o.columns[j]);
            normalize_column(self.field, col);
        }
        out
    }

    pub fn mul_vec(&self, x: &GFVector) -> GFVector {
        assert_eq!(x.len, self.cols);
        let f = self.field;
        let mut acc = vec![0u8; self.rows];
        for &(j, v) in &x.support {
            for &(r, a) in &self.columns[j as usize] {
                acc[r as usize] = f.add(acc[r as usize], f.mul(a, v));
            }
        }
        GFVector::from_dense(f, &acc)
    }

    /// `self * o`.
    pub fn mul(&self, o: &GFMatrix) -> GFMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = GFMatrix::zeros(f, self.rows, o.cols);
        let mut acc = vec![0u8; self.rows];
        let mut touched = Vec::new();
        for (j, col) in o.columns.iter().enumerate() {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k as usize] {
                    if acc[r as usize] == 0 {
                        touched.push(r);
                    }
                    acc[r as usize] = f.add(acc[r as usize], f.mul(a, b));
                    if acc[r as usize] == 0 {
                        // stays in `touched`; filtered below
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &r in &touched {
                let v = acc[r as usize];
                if v != 0 {
                    out.columns[j].push((r, v));
                }
                acc[r as usize] = 0;
            }
            touched.clear();
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r as usize][j] = v;
            }
        }
        d
    }
}

pub(crate) fn normalize_column(field: Field, c: &mut Vec<(u32, u8)>) {
    c.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, u8)> = Vec::with_capacity(c.len());
    for &(r, v) in c.iter() {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = field.add(last.1, v),
            _ => out.push((r, v % field.q())),
        }
    }
    out.retain(|e| e.1 != 0);
    *c = out;
}

/// Incremental echelon basis. Each stored vector has a pivot (its lowest
/// nonzero index) that is zero in every vector inserted after it; reducing
/// a new vector by the stored ones in insertion order clears every pivot.
/// Optionally tracks each stored vector as a combination of the inserted
/// inputs, which yields preimages and kernel vectors.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub field: Field,
    pub len: usize,
    pub basis: Vec<PackedVec>,
    pub pivots: Vec<usize>,
    combos: Option<(usize, Vec<PackedVec>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: Field, len: usize) -> Self {
        Echelon { field, len, basis: Vec::new(), pivots: Vec::new(), combos: None, inserted: 0 }
    }

    /// Tracks combinations over `n_inputs` inserted vectors.
    pub fn tracking(field: Field, len: usize, n_inputs: usize) -> Self {
        Echelon {
            field,
            len,
            basis: Vec::new(),
            pivots: Vec::new(),
            combos: Some((n_inputs, Vec::new())),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` in place; returns the combination of stored vectors subtracted
    /// (as coefficients per stored vector).
    pub fn reduce(&self, v: &mut PackedVec) -> Vec<u8> {
        let f = self.field;
        let mut coeffs = vec![0u8; self.basis.len()];
        for (k, b) in self.basis.iter().enumerate() {
            let p = self.pivots[k];
            let x = v.get(p);
            if x != 0 {
                // v -= (x / b[p]) * b
                let c = f.mul(x, f.inv(b.get(p)));
                v.add_scaled(b, f.neg(c));
                coeffs[k] = c;
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &PackedVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Inserts the next input vector. Returns `Ok(index)` if it was
    /// independent, otherwise `Err(kernel combination)` when tracking
    /// (or `Err(None)` when not tracking).
    pub fn insert(&mut self, v: &PackedVec) -> core::result::Result<usize, Option<PackedVec>> {
        let f = self.field;
        let idx = self.inserted;
        self.inserted += 1;
        let mut w = v.clone();
        let coeffs = self.reduce(&mut w);
        let combo = self.combos.as_ref().map(|(n, cs)| {
            let mut c = PackedVec::unit(f, *n, idx);
            for (k, &x) in coeffs.iter().enumerate() {
                if x != 0 {
                    c.add_scaled(&cs[k], f.neg(x));
                }
            }
            c
        });
        match w.lowest() {
            None => Err(combo),
            Some(p) => {
                self.basis.push(w);
                self.pivots.push(p);
                if let (Some((_, cs)), Some(c)) = (self.combos.as_mut(), combo) {
                    cs.push(c);
                }
                Ok(self.basis.len() - 1)
            }
        }
    }

    /// Preimage of `b` as a combination of inserted inputs, if `b` lies in the span.
    pub fn solve(&self, b: &PackedVec) -> Option<PackedVec> {
        let (n, cs) = self.combos.as_ref()?;
        let f = self.field;
        let mut w = b.clone();
        let coeffs = self.reduce(&mut w);
        if !w.is_zero() {
            return None;
        }
        let mut x = PackedVec::zeros(f, *n);
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                x.add_scaled(&cs[k], c);
            }
        }
        Some(x)
    }
}

fn column_echelon(m: &GFMatrix) -> (Echelon, Vec<PackedVec>) {
    let mut e = Echelon::tracking(m.field, m.rows, m.cols);
    let mut kernel = Vec::new();
    for j in 0..m.cols {
        if let Err(Some(k)) = e.insert(&m.column_packed(j)) {
            kernel.push(k);
        }
    }
    (e, kernel)
}

pub fn rank(m: &GFMatrix) -> usize {
    let mut e = Echelon::new(m.field, m.rows);
    for j in 0..m.cols {
        let _ = e.insert(&m.column_packed(j));
    }
    e.rank()
}

/// Null-space basis, one vector per dependent column (in column order).
pub fn kernel_basis(m: &GFMatrix) -> Vec<GFVector> {
    let (_, k) = column_echelon(m);
    k.iter().map(GFVector::from_packed).collect()
}

/// Whether `Mx = b` is solvable, with one solution.
pub fn in_image(m: &GFMatrix, b: &GFVector) -> (bool, Option<GFVector>) {
    assert_eq!(b.len, m.rows);
    let (e, _) = column_echelon(m);
    match e.solve(&b.to_packed()) {
        Some(x) => (true, Some(GFVector::from_packed(&x))),
        None => (false, None),
    }
}

/// Image echelon with preimage tracking, reusable across many membership queries.
pub fn image_echelon(m: &GFMatrix) -> Echelon {
    column_echelon(m).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(q: u8) -> impl Strategy<Value = GFMatrix> {
        (1usize..7, 1usize..9).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..q, c), r)
                .prop_map(move |rows| GFMatrix::from_dense(Field::from_q(q).unwrap(), &rows))
        })
    }

    fn all_vectors(f: Field, n: usize) -> Vec<Vec<u8>> {
        let q = f.q() as usize;
        (0..q.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let d = (code % q) as u8;
                        code /= q;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(rank(&GFMatrix::zeros(Field::GF2, 3, 3)), 0);
        assert_eq!(rank(&GFMatrix::identity(Field::GF3, 4)), 4);
        assert!(kernel_basis(&GFMatrix::identity(Field::GF2, 4)).is_empty());
        let z = GFMatrix::zeros(Field::GF2, 1, 5);
        let k = kernel_basis(&z);
        assert_eq!(k.len(), 5);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v.support, alloc::vec![(i as u32, 1)]);
        }
        let id = GFMatrix::identity(Field::GF3, 3);
        let b = GFVector::from_dense(Field::GF3, &[2, 0, 1]);
        let (ok, pre) = in_image(&id, &b);
        assert!(ok);
        assert_eq!(pre.unwrap(), b);
        let (ok0, _) = in_image(&z, &GFVector::zeros(Field::GF2, 1));
        assert!(ok0);
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(m in prop_oneof![arb_matrix(2), arb_matrix(3)]) {
            let r = rank(&m);
            prop_assert_eq!(r, rank(&m.transpose()));
            let k = kernel_basis(&m);
            prop_assert_eq!(m.cols, r + k.len());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn in_image_matches_enumeration(m in prop_oneof![arb_matrix(2), arb_matrix(3)], pick in any::<u32>()) {
            let f = m.field;
            let images: Vec<Vec<u8>> = all_vectors(f, m.cols)
                .iter()
                .map(|x| m.mul_vec(&GFVector::from_dense(f, x)).to_dense())
                .collect();
            let cands = all_vectors(f, m.rows);
            let b = &cands[pick as usize % cands.len()];
            let bv = GFVector::from_dense(f, b);
            let (ok, pre) = in_image(&m, &bv);
            prop_assert_eq!(ok, images.contains(b));
            if let Some(x) = pre {
                prop_assert_eq!(m.mul_vec(&x), bv);
            }
        }
    }
}
