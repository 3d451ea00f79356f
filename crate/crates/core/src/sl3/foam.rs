use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::boxes::{box_mul, box_poly};
use super::{Basis, ThetaBasisVector};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linear::GFMatrix;

/// A closed foam obtained by gluing two theta-web cups: spheres `rail[0..=s]`
/// chained along `s` singular circles, circle `k` carrying the rung disk
/// `rung[k − 1]`. Entries are dot counts. At circle `k` the cyclic order of
/// facets is `rail[k−1] → rail[k] → rung[k−1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedThetaFoam {
    pub rail: Vec<u8>,
    pub rung: Vec<u8>,
}

impl ClosedThetaFoam {
    pub fn sphere(dots: u8) -> Self {
        ClosedThetaFoam { rail: vec![dots], rung: vec![] }
    }

    /// θ(a, b, c) with facets in cyclic order.
    pub fn theta(a: u8, b: u8, c: u8) -> Self {
        ClosedThetaFoam { rail: vec![a, b], rung: vec![c] }
    }
}

/// `U_{n,m}` for a bubble whose facet with `n` dots precedes the one with `m`:
/// the sign and the dots left on the surrounding facet.
fn burst(n: u8, m: u8) -> Option<(u8, u8)> {
    Some(match (n, m) {
        (1, 0) => (1, 0),
        (0, 1) => (2, 0),
        (0, 2) => (1, 1),
        (2, 0) => (2, 1),
        (2, 1) => (1, 2),
        (1, 2) => (2, 2),
        _ => return None,
    })
}

/// Evaluates by bursting the rightmost bubble until a dotted sphere remains.
pub fn evaluate_closed_foam(f: &ClosedThetaFoam) -> Result<u8> {
    if f.rail.len() != f.rung.len() + 1 {
        return Err(Error::UnsupportedFoam(format!(
            "{} rail facets against {} rung facets",
            f.rail.len(),
            f.rung.len()
        )));
    }
    let mut rail = f.rail.clone();
    let mut sign = 1u8;
    for k in (1..rail.len()).rev() {
        let Some((c, extra)) = burst(rail[k], f.rung[k - 1]) else {
            return Ok(0);
        };
        sign = sign * c % 3;
        rail[k - 1] += extra;
    }
    Ok(if rail[0] == 2 { (3 - sign) % 3 } else { 0 })
}

/// `⟨a, b⟩`: the reflected cup of `a` glued onto the cup of `b`.
pub fn theta_pairing(a: &ThetaBasisVector, b: &ThetaBasisVector) -> Result<u8> {
    if a.s != b.s {
        return Err(Error::UnsupportedFoam(format!("pairing Θ_{} with Θ_{}", a.s, b.s)));
    }
    let s = a.s as usize;
    let mut rail = vec![0u8; s + 1];
    let mut rung = vec![0u8; s];
    for v in [a, b] {
        for m in 0..s {
            let bit = (v.dots >> m & 1) as u8;
            match v.basis {
                Basis::B1 => rail[m + 1] += bit,
                Basis::B2 => rung[m] += bit,
            }
        }
    }
    let p = box_poly(box_mul(a.boxed, b.boxed));
    let mut total = 0u8;
    for (t, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        rail[0] = t as u8;
        total = (total + c * evaluate_closed_foam(&ClosedThetaFoam { rail: rail.clone(), rung: rung.clone() })?) % 3;
    }
    Ok(total)
}

/// Gram matrix of B1 (rows) against reflected B2 (columns) on `F(Θ_s)`.
pub fn theta_pairing_matrix(s: usize) -> Result<GFMatrix> {
    if s > 8 {
        return Err(Error::Unsupported(format!("pairing matrix for s = {s}")));
    }
    let n = ThetaBasisVector::dim(s);
    let mut t = Vec::new();
    for r in 0..n {
        let a = ThetaBasisVector::from_index(Basis::B1, s, r);
        // only the partner can pair nontrivially, but every entry is evaluated
        for c in 0..n {
            let b = ThetaBasisVector::from_index(Basis::B2, s, c);
            let v = theta_pairing(&a, &b)?;
            if v != 0 {
                t.push((r as u32, c as u32, v));
            }
        }
    }
    Ok(GFMatrix::from_triplets(Field::GF3, n, n, &t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_and_theta() {
        assert_eq!(evaluate_closed_foam(&ClosedThetaFoam::sphere(2)).unwrap(), 2);
        assert_eq!(evaluate_closed_foam(&ClosedThetaFoam::sphere(1)).unwrap(), 0);
        let th = |a, b, c| evaluate_closed_foam(&ClosedThetaFoam::theta(a, b, c)).unwrap();
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert_eq!(th(a, b, c), 1);
        }
        for (a, b, c) in [(0, 2, 1), (2, 1, 0), (1, 0, 2)] {
            assert_eq!(th(a, b, c), 2);
        }
        assert_eq!(th(1, 1, 0), 0);
        assert_eq!(th(1, 1, 1), 0);
        assert!(evaluate_closed_foam(&ClosedThetaFoam { rail: vec![0, 0], rung: vec![] }).is_err());
    }

    #[test]
    fn pairing_is_signed_permutation() {
        for s in 0..=5 {
            let g = theta_pairing_matrix(s).unwrap();
            for (c, col) in g.columns.iter().enumerate() {
                assert_eq!(col.len(), 1, "s={s} column {c}");
                let b = ThetaBasisVector::from_index(Basis::B2, s, c);
                assert_eq!(col[0].0 as usize, b.partner().index());
            }
        }
        let g0 = theta_pairing_matrix(0).unwrap().to_dense();
        assert_eq!(g0, vec![vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0]]);
    }
}
