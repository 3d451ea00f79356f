use serde::{Deserialize, Serialize};

/// Box basis of `A = F₃[X]/(X³)`: ⊠0 = 1, ⊠1 = 1 − X, ⊠2 = 1 + X + X².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxLabel(pub u8);

/// Coefficients of 1, X, X² over GF(3).
pub fn box_poly(b: BoxLabel) -> [u8; 3] {
    match b.0 {
        0 => [1, 0, 0],
        1 => [1, 2, 0],
        2 => [1, 1, 1],
        _ => panic!("box label out of range"),
    }
}

pub fn box_mul(i: BoxLabel, j: BoxLabel) -> BoxLabel {
    BoxLabel((i.0 + j.0) % 3)
}

/// `⊠i* = −⊠(2−i)`, returned as (sign, label).
pub fn box_dual(i: BoxLabel) -> (i8, BoxLabel) {
    (-1, BoxLabel(2 - i.0))
}

pub fn poly_mul(a: [u8; 3], b: [u8; 3]) -> [u8; 3] {
    let mut c = [0u8; 3];
    for i in 0..3 {
        for j in 0..3 - i {
            c[i + j] = (c[i + j] + a[i] * b[j]) % 3;
        }
    }
    c
}

/// `ε(p) = −[X²]p`, the sphere evaluation.
pub fn trace0(p: [u8; 3]) -> u8 {
    (3 - p[2]) % 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(box_mul(BoxLabel(1), BoxLabel(1)), BoxLabel(2));
        assert_eq!(box_dual(BoxLabel(0)), (-1, BoxLabel(2)));
        // (1 − X)² = 1 + X + X² mod 3
        assert_eq!(poly_mul(box_poly(BoxLabel(1)), box_poly(BoxLabel(1))), box_poly(BoxLabel(2)));
    }

    proptest! {
        #[test]
        fn closure(i in 0u8..3, j in 0u8..3) {
            let p = poly_mul(box_poly(BoxLabel(i)), box_poly(BoxLabel(j)));
            prop_assert_eq!(p, box_poly(box_mul(BoxLabel(i), BoxLabel(j))));
        }

        #[test]
        fn negative_duality(i in 0u8..3, j in 0u8..3) {
            let (sign, d) = box_dual(BoxLabel(i));
            let v = trace0(poly_mul(box_poly(d), box_poly(BoxLabel(j))));
            let v = if sign < 0 { (3 - v) % 3 } else { v };
            // ⊠i*(⊠j) = δ_ij
            prop_assert_eq!(v, u8::from(i == j));
        }
    }
}
