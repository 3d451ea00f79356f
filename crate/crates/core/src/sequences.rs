//! Exact sequences of the code families and their asymptotic comparators.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::products::{binomial, poly_pow};

/// `c_ℓ = (−2)^ℓ Σ_r C(ℓ,r) C(2r,r) (−1)^r`.
pub fn hopf_c(l: usize) -> BigUint {
    let mut s = BigInt::zero();
    for r in 0..=l as u64 {
        let t = BigInt::from(binomial(l as u64, r) * binomial(2 * r, r));
        if r % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    let c = s * BigInt::from(-2).pow(l as u32);
    c.to_biguint().expect("c_ℓ is positive")
}

pub fn hopf_c_seq(l: usize) -> Vec<BigUint> {
    (0..=l).map(hopf_c).collect()
}

/// Length of the iterated Hopf code: `c_{2ℓ}`.
pub fn iterated_n(l: usize) -> BigUint {
    hopf_c(2 * l)
}

/// `Σ_k C(ℓ,k)² 3^{2k+1} 2^{2ℓ−2k}`.
pub fn sl3_n(l: usize) -> BigUint {
    let three = BigUint::from(3u32);
    (0..=l as u64)
        .map(|k| binomial(l as u64, k).pow(2) * three.pow(2 * k as u32 + 1) << (2 * (l as u64 - k)) as usize)
        .sum()
}

/// `2 [t⁰] (t⁻¹ + 4 + t)^ℓ`.
pub fn tree_n(l: usize) -> BigUint {
    poly_pow(&[1, 4, 1], l)[l].clone() * 2u32
}

/// `Σ_r (C(m,r) 2^r)²` with `m = bℓ`.
pub fn branched_n(m: usize) -> BigUint {
    (0..=m as u64).map(|r| (binomial(m as u64, r) << r as usize).pow(2)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// `1/√(1 − 4x − 12x²)`
    Hopf,
    /// `3/√(1 − 26x + 25x²)`
    Sl3,
}

fn mul_trunc(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Taylor coefficients `0..=l` of `c / √p(x)` for a polynomial with `p(0) = 1`,
/// by Newton iteration `y ← y(3 − p y²)/2`.
pub fn inverse_sqrt_series(p: &[i64], c: i64, l: usize) -> Vec<BigRational> {
    let len = l + 1;
    let pr: Vec<BigRational> = p.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    let mut y = vec![BigRational::one()];
    let mut prec = 1;
    let three = BigRational::from_integer(3.into());
    let half = BigRational::new(1.into(), 2.into());
    while prec < len {
        prec = (2 * prec).min(len);
        let y2 = mul_trunc(&y, &y, prec);
        let py2 = mul_trunc(&pr, &y2, prec);
        let mut t: Vec<BigRational> = py2.into_iter().map(|x| -x).collect();
        t[0] += &three;
        y = mul_trunc(&y, &t, prec).into_iter().map(|x| x * &half).collect();
    }
    let cr = BigRational::from_integer(c.into());
    y.into_iter().map(|x| x * &cr).collect()
}

pub fn series_coeffs(kind: SeriesKind, l: usize) -> Vec<BigRational> {
    match kind {
        SeriesKind::Hopf => inverse_sqrt_series(&[1, -4, -12], 1, l),
        SeriesKind::Sl3 => inverse_sqrt_series(&[1, -26, 25], 3, l),
    }
}

/// Natural logarithm of a big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap());
    }
    let shift = bits - 64;
    let top = (x >> shift as usize).to_u64().unwrap() as f64;
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparator {
    /// `c_ℓ ∼ √3·6^ℓ / (2√(πℓ))`
    HopfC,
    /// `n_ℓ = c_{2ℓ} ∼ √3·6^{2ℓ} / (2√(2πℓ))`
    IteratedHopf,
    /// `n_ℓ ∼ 15·25^ℓ / (2√(6πℓ))`
    Sl3,
    /// `n_ℓ ∼ √(6/(πℓ))·6^ℓ`
    TreeUnlink,
    /// `n_m ∼ 3^{2m+1} / √(2πm)` as printed
    BranchedUnknot,
}

impl Comparator {
    pub const ALL: [Comparator; 5] =
        [Comparator::HopfC, Comparator::IteratedHopf, Comparator::Sl3, Comparator::TreeUnlink, Comparator::BranchedUnknot];

    pub fn name(self) -> &'static str {
        match self {
            Comparator::HopfC => "hopf-c",
            Comparator::IteratedHopf => "iterated-hopf",
            Comparator::Sl3 => "sl3",
            Comparator::TreeUnlink => "tree-unlink",
            Comparator::BranchedUnknot => "branched-unknot",
        }
    }

    pub fn exact(self, l: usize) -> BigUint {
        match self {
            Comparator::HopfC => hopf_c(l),
            Comparator::IteratedHopf => iterated_n(l),
            Comparator::Sl3 => sl3_n(l),
            Comparator::TreeUnlink => tree_n(l),
            Comparator::BranchedUnknot => branched_n(l),
        }
    }

    /// Natural log of the comparator at `ℓ`.
    pub fn ln(self, l: usize) -> f64 {
        use core::f64::consts::PI;
        let lf = l as f64;
        let ln = libm::log;
        match self {
            Comparator::HopfC => 0.5 * ln(3.0) + lf * ln(6.0) - ln(2.0) - 0.5 * ln(PI * lf),
            Comparator::IteratedHopf => 0.5 * ln(3.0) + 2.0 * lf * ln(6.0) - ln(2.0) - 0.5 * ln(2.0 * PI * lf),
            Comparator::Sl3 => ln(15.0) + lf * ln(25.0) - ln(2.0) - 0.5 * ln(6.0 * PI * lf),
            Comparator::TreeUnlink => 0.5 * ln(6.0 / (PI * lf)) + lf * ln(6.0),
            Comparator::BranchedUnknot => (2.0 * lf + 1.0) * ln(3.0) - 0.5 * ln(2.0 * PI * lf),
        }
    }

    /// `exact / comparator`.
    pub fn ratio(self, l: usize) -> f64 {
        libm::exp(ln_big(&self.exact(l)) - self.ln(l))
    }
}

/// `|exact(ℓ)/comparator(ℓ) − 1|`.
pub fn ratio_convergence(c: Comparator, l: usize) -> f64 {
    libm::fabs(c.ratio(l) - 1.0)
}

pub fn to_biguint(r: &BigRational) -> Option<BigUint> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    let (sign, mag) = r.to_integer().into_parts();
    (sign != Sign::Minus).then_some(mag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        let c: Vec<u64> = hopf_c_seq(5).iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(c, vec![1, 2, 12, 56, 304, 1632]);
        assert_eq!(sl3_n(1), 39u32.into());
        assert_eq!(sl3_n(2), 723u32.into());
        assert_eq!(tree_n(1), 8u32.into());
        assert_eq!(tree_n(3), 176u32.into());
        assert_eq!(branched_n(1), 5u32.into());
        assert_eq!(branched_n(3), 245u32.into());
    }

    #[test]
    fn series_match_sums() {
        let h = series_coeffs(SeriesKind::Hopf, 40);
        let s = series_coeffs(SeriesKind::Sl3, 40);
        for l in 0..=40 {
            assert_eq!(to_biguint(&h[l]).unwrap(), hopf_c(l));
            assert_eq!(to_biguint(&s[l]).unwrap(), sl3_n(l));
        }
    }

    #[test]
    fn ratios_shrink() {
        for c in [Comparator::HopfC, Comparator::IteratedHopf, Comparator::Sl3, Comparator::TreeUnlink] {
            let e: Vec<f64> = [50, 100, 200].iter().map(|&l| ratio_convergence(c, l)).collect();
            assert!(e[1] <= e[0] + 1e-3 && e[2] <= e[1] + 1e-3, "{c:?} {e:?}");
        }
        assert!(ratio_convergence(Comparator::TreeUnlink, 400) < 0.01);
    }

    #[test]
    fn printed_branched_comparator_is_off_by_two() {
        let r = Comparator::BranchedUnknot.ratio(200);
        assert!((r - 0.5).abs() < 0.005, "{r}");
    }
}
