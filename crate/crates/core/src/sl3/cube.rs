use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::ring::ThetaRing;
use super::{Basis, ThetaBasisVector};
use crate::complex::{BasisElement, ChainComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linear::GFMatrix;

/// A generalized theta web of a resolution of `D_{k,l}`: the crossings
/// resolved as rungs, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Web {
    pub rungs: Vec<usize>,
}

/// Crossings `0..k` are positive, `k..k+l` negative. A positive crossing is a
/// rung at bit 0, a negative one at bit 1; otherwise it cuts the band.
fn is_rung(k: usize, c: usize, u: u64) -> bool {
    (c < k) == (u >> c & 1 == 0)
}

pub fn webs(k: usize, l: usize, u: u64) -> Vec<Web> {
    let mut out = vec![Web { rungs: vec![] }];
    for c in 0..k + l {
        if is_rung(k, c, u) {
            out.last_mut().unwrap().rungs.push(c);
        } else {
            out.push(Web { rungs: vec![] });
        }
    }
    out
}

/// Raw degree range `(−k, l)`: a vertex sits in degree `|u| − n₊`.
pub fn sl3_diagram_degrees(k: usize, l: usize) -> (i32, i32) {
    (-(k as i32), l as i32)
}

struct Locals {
    basis: Basis,
    split: BTreeMap<(usize, usize), GFMatrix>,
    merge: BTreeMap<(usize, usize), GFMatrix>,
}

impl Locals {
    fn vectors(&self, s: usize) -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
        let r = ThetaRing::new(s);
        let mut basis = Vec::new();
        let mut dual = Vec::new();
        for i in 0..ThetaBasisVector::dim(s) {
            let b = ThetaBasisVector::from_index(self.basis, s, i);
            let bv = r.basis_vector(&b);
            let mut pv = r.basis_vector(&b.partner());
            let g = r.trace(&r.mul(&bv, &pv));
            if g == 2 {
                for x in &mut pv {
                    *x = (3 - *x) % 3;
                }
            }
            basis.push(bv);
            dual.push(pv);
        }
        (basis, dual)
    }

    /// `Δ: F(Θ_{a+b+1}) → F(Θ_a) ⊗ F(Θ_b)`, the adjoint of the zip.
    fn split(&mut self, a: usize, b: usize) -> &GFMatrix {
        if !self.split.contains_key(&(a, b)) {
            let w = ThetaRing::new(a + b + 1);
            let (bw, _) = self.vectors(a + b + 1);
            let (_, da) = self.vectors(a);
            let (_, db) = self.vectors(b);
            let mut t = Vec::new();
            for (qr, y) in db.iter().enumerate() {
                for (ql, x) in da.iter().enumerate() {
                    let m = w.merge(a, x, y);
                    let q = ql + da.len() * qr;
                    for (p, v) in bw.iter().enumerate() {
                        let e = w.trace(&w.mul(v, &m));
                        if e != 0 {
                            t.push((q as u32, p as u32, e));
                        }
                    }
                }
            }
            let g = GFMatrix::from_triplets(Field::GF3, da.len() * db.len(), bw.len(), &t);
            self.split.insert((a, b), g);
        }
        &self.split[&(a, b)]
    }

    /// The zip `F(Θ_a) ⊗ F(Θ_b) → F(Θ_{a+b+1})`.
    fn merge(&mut self, a: usize, b: usize) -> &GFMatrix {
        if !self.merge.contains_key(&(a, b)) {
            let w = ThetaRing::new(a + b + 1);
            let (_, dw) = self.vectors(a + b + 1);
            let (ba, _) = self.vectors(a);
            let (bb, _) = self.vectors(b);
            let mut t = Vec::new();
            for (pr, y) in bb.iter().enumerate() {
                for (pl, x) in ba.iter().enumerate() {
                    let m = w.merge(a, x, y);
                    let p = pl + ba.len() * pr;
                    for (q, d) in dw.iter().enumerate() {
                        let e = w.trace(&w.mul(&m, d));
                        if e != 0 {
                            t.push((q as u32, p as u32, e));
                        }
                    }
                }
            }
            let g = GFMatrix::from_triplets(Field::GF3, dw.len(), ba.len() * bb.len(), &t);
            self.merge.insert((a, b), g);
        }
        &self.merge[&(a, b)]
    }
}

fn vertex_basis(k: usize, l: usize, u: u64, basis: Basis) -> Vec<BasisElement> {
    let ws = webs(k, l, u);
    let dims: Vec<usize> = ws.iter().map(|w| ThetaBasisVector::dim(w.rungs.len())).collect();
    let total: usize = dims.iter().product();
    (0..total)
        .map(|mut x| {
            let labels = ws
                .iter()
                .zip(&dims)
                .map(|(w, &d)| {
                    let i = x % d;
                    x /= d;
                    ThetaBasisVector::from_index(basis, w.rungs.len(), i).label()
                })
                .collect();
            BasisElement { vertex: u, labels }
        })
        .collect()
}

fn digits(mut x: usize, dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .map(|&d| {
            let r = x % d;
            x /= d;
            r
        })
        .collect()
}

fn undigits(ds: &[usize], dims: &[usize]) -> usize {
    ds.iter().zip(dims).rev().fold(0, |acc, (&d, &n)| acc * n + d)
}

/// The sl3 complex of `D_{k,l}` over GF(3) in basis B1 or B2, cube signs
/// `(−1)^{Σ_{j<c} u_j}`.
pub fn build_sl3_complex(k: usize, l: usize, basis: Basis) -> Result<ChainComplex> {
    let n = k + l;
    if n > 4 {
        return Err(Error::Unsupported(format!("D_{{{k},{l}}} exceeds the desk-scale guard k + l ≤ 4")));
    }
    let (lo, _) = sl3_diagram_degrees(k, l);
    let mut by_weight: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for u in 0..1u64 << n {
        by_weight[u.count_ones() as usize].push(u);
    }
    let mut groups = Vec::new();
    let mut offsets: BTreeMap<u64, usize> = BTreeMap::new();
    for verts in &by_weight {
        let mut g = Vec::new();
        for &u in verts {
            offsets.insert(u, g.len());
            g.extend(vertex_basis(k, l, u, basis));
        }
        groups.push(g);
    }
    let mut locals = Locals { basis, split: BTreeMap::new(), merge: BTreeMap::new() };
    let mut diffs = Vec::new();
    for wgt in 0..n {
        let mut t = Vec::new();
        for &u in &by_weight[wgt] {
            let wu = webs(k, l, u);
            let du: Vec<usize> = wu.iter().map(|w| ThetaBasisVector::dim(w.rungs.len())).collect();
            let size: usize = du.iter().product();
            for c in 0..n {
                if u >> c & 1 == 1 {
                    continue;
                }
                let v = u | 1 << c;
                let wv = webs(k, l, v);
                let dv: Vec<usize> = wv.iter().map(|w| ThetaBasisVector::dim(w.rungs.len())).collect();
                let sign = if (u & ((1 << c) - 1)).count_ones() % 2 == 1 { 2u8 } else { 1 };
                // web index of crossing c: cuts to its left
                let w = (0..c).filter(|&j| !is_rung(k, j, u)).count();
                let rung = is_rung(k, c, u);
                let local = if rung {
                    let t_pos = wu[w].rungs.iter().position(|&x| x == c).unwrap();
                    locals.split(t_pos, wu[w].rungs.len() - t_pos - 1).clone()
                } else {
                    locals.merge(wu[w].rungs.len(), wu[w + 1].rungs.len()).clone()
                };
                let (ou, ov) = (offsets[&u], offsets[&v]);
                for x in 0..size {
                    let ds = digits(x, &du);
                    let (col, rest_l, rest_r): (usize, &[usize], &[usize]) = if rung {
                        (ds[w], &ds[..w], &ds[w + 1..])
                    } else {
                        (ds[w] + du[w] * ds[w + 1], &ds[..w], &ds[w + 2..])
                    };
                    for &(q, e) in &local.columns[col] {
                        let mut nd: Vec<usize> = rest_l.to_vec();
                        if rung {
                            nd.push(q as usize % dv[w]);
                            nd.push(q as usize / dv[w]);
                        } else {
                            nd.push(q as usize);
                        }
                        nd.extend_from_slice(rest_r);
                        let y = undigits(&nd, &dv);
                        t.push(((ov + y) as u32, (ou + x) as u32, e * sign % 3));
                    }
                }
            }
        }
        let rows = groups[wgt + 1].len();
        let cols = groups[wgt].len();
        diffs.push(GFMatrix::from_triplets(Field::GF3, rows, cols, &t));
    }
    diffs.push(GFMatrix::zeros(Field::GF3, 0, groups[n].len()));
    let c = ChainComplex::new(
        Field::GF3,
        1,
        lo,
        groups,
        diffs,
        format!("sl3 C(D_{{{k},{l}}}; {basis:?})"),
    )?;
    c.check_d2()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn web_counts() {
        // all-rung resolution is Θ_{k+l}
        assert_eq!(webs(2, 2, 0b1100), vec![Web { rungs: vec![0, 1, 2, 3] }]);
        assert_eq!(webs(1, 1, 0b01).len(), 3);
    }

    #[test]
    fn small_complexes() {
        for basis in [Basis::B1, Basis::B2] {
            let c = build_sl3_complex(0, 0, basis).unwrap();
            assert_eq!(c.dims().into_values().collect::<Vec<_>>(), vec![3]);
            let c = build_sl3_complex(1, 1, basis).unwrap();
            assert_eq!(c.dim(0), 39);
            let h: Vec<usize> = c.homology_dims().into_values().collect();
            assert_eq!(h, vec![0, 3, 0]);
            for (k, l) in [(1, 0), (0, 1), (2, 0), (0, 2), (2, 1), (1, 2)] {
                let c = build_sl3_complex(k, l, basis).unwrap();
                let total: usize = c.homology_dims().into_values().sum();
                assert_eq!(total, 3, "D_{{{k},{l}}}");
                assert_eq!(c.homology_dims()[&0], 3);
            }
        }
    }
}
