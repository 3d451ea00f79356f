use alloc::vec;
use alloc::vec::Vec;

use super::boxes::box_poly;
use super::{Basis, ThetaBasisVector};

/// `F(Θ_s)` in the monomial basis `f₀^j · Π f_k^{i_k}`, coordinate `j + 3·bits`
/// with bit `k − 1` for `f_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaRing {
    pub s: usize,
}

fn neg(v: &mut [u8]) {
    for x in v {
        *x = (3 - *x) % 3;
    }
}

fn add_into(a: &mut [u8], b: &[u8]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (*x + y) % 3;
    }
}

impl ThetaRing {
    pub fn new(s: usize) -> Self {
        ThetaRing { s }
    }

    pub fn dim(&self) -> usize {
        3 << self.s
    }

    pub fn one(&self) -> Vec<u8> {
        let mut v = vec![0; self.dim()];
        v[0] = 1;
        v
    }

    /// Multiplication by the rail dot `f_k`.
    pub fn mul_f(&self, k: usize, v: &[u8]) -> Vec<u8> {
        let n = self.dim();
        let mut out = vec![0u8; n];
        if k == 0 {
            for (i, &c) in v.iter().enumerate() {
                if c != 0 && i % 3 < 2 {
                    out[i + 1] = (out[i + 1] + c) % 3;
                }
            }
            return out;
        }
        let bit = 3 << (k - 1);
        // f_k² = −f_{k−1} f_k − f_{k−1}²
        let mut with_k = vec![0u8; n];
        let mut without_k = vec![0u8; n];
        let mut any = false;
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if (i / 3) & (1 << (k - 1)) == 0 {
                out[i + bit] = (out[i + bit] + c) % 3;
            } else {
                with_k[i] = (with_k[i] + c) % 3;
                without_k[i - bit] = (without_k[i - bit] + c) % 3;
                any = true;
            }
        }
        if any {
            let mut a = self.mul_f(k - 1, &with_k);
            let b = self.mul_f(k - 1, &self.mul_f(k - 1, &without_k));
            add_into(&mut a, &b);
            neg(&mut a);
            add_into(&mut out, &a);
        }
        out
    }

    /// Multiplication by the rung dot `r_k = −f_{k−1} − f_k`.
    pub fn mul_r(&self, k: usize, v: &[u8]) -> Vec<u8> {
        let mut a = self.mul_f(k - 1, v);
        add_into(&mut a, &self.mul_f(k, v));
        neg(&mut a);
        a
    }

    /// Image of the monomial with coordinate `i`, given as multiplication
    /// operators applied to `v`.
    fn mul_monomial(&self, i: usize, shift: usize, v: &[u8]) -> Vec<u8> {
        let mut out = v.to_vec();
        for _ in 0..i % 3 {
            out = self.mul_f(shift, &out);
        }
        let bits = i / 3;
        for k in 0..usize::BITS as usize {
            if bits >> k == 0 {
                break;
            }
            if bits >> k & 1 == 1 {
                out = self.mul_f(shift + k + 1, &out);
            }
        }
        out
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.dim()];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut t = self.mul_monomial(i, 0, b);
            if c == 2 {
                neg(&mut t);
            }
            add_into(&mut out, &t);
        }
        out
    }

    /// `ε(f₀² f₁⋯f_s) = −1`, zero on the other monomials.
    pub fn trace(&self, v: &[u8]) -> u8 {
        (3 - v[self.dim() - 1]) % 3
    }

    pub fn basis_vector(&self, b: &ThetaBasisVector) -> Vec<u8> {
        let mut v = vec![0u8; self.dim()];
        let p = box_poly(b.boxed);
        match b.basis {
            Basis::B1 => {
                for t in 0..3 {
                    v[t + 3 * b.dots as usize] = p[t];
                }
            }
            Basis::B2 => {
                v[..3].copy_from_slice(&p);
                for m in 0..self.s {
                    if b.dots >> m & 1 == 1 {
                        v = self.mul_r(m + 1, &v);
                    }
                }
            }
        }
        v
    }

    /// The zip joining `Θ_a ⊔ Θ_b` into `Θ_{a+b+1}` (this ring), on monomials.
    pub fn merge(&self, a: usize, x: &[u8], y: &[u8]) -> Vec<u8> {
        let mut xe = vec![0u8; self.dim()];
        xe[..x.len()].copy_from_slice(x);
        let mut out = vec![0u8; self.dim()];
        for (i, &c) in y.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut t = self.mul_monomial(i, a + 1, &xe);
            if c == 2 {
                neg(&mut t);
            }
            add_into(&mut out, &t);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl3::foam::theta_pairing;

    #[test]
    fn relations() {
        for s in 0..=4 {
            let r = ThetaRing::new(s);
            for k in 0..=s {
                let mut v = r.one();
                for _ in 0..3 {
                    v = r.mul_f(k, &v);
                }
                assert!(v.iter().all(|&x| x == 0), "f_{k}^3 in R_{s}");
            }
            for k in 1..=s {
                let mut v = r.one();
                for _ in 0..3 {
                    v = r.mul_r(k, &v);
                }
                assert!(v.iter().all(|&x| x == 0), "r_{k}^3 in R_{s}");
            }
        }
    }

    #[test]
    fn trace_matches_bubble_bursting() {
        for s in 0..=3 {
            let r = ThetaRing::new(s);
            let n = r.dim();
            for i in 0..n {
                for j in 0..n {
                    let a = ThetaBasisVector::from_index(Basis::B1, s, i);
                    let b = ThetaBasisVector::from_index(Basis::B2, s, j);
                    let via_ring = r.trace(&r.mul(&r.basis_vector(&a), &r.basis_vector(&b)));
                    assert_eq!(via_ring, theta_pairing(&a, &b).unwrap(), "s={s} {a:?} {b:?}");
                }
            }
        }
    }
}
