//! sl3 foam machinery over GF(3) for unions of generalized theta webs.
//!
//! `F(Θ_s)` is modelled as the ring `F₃[f₀..f_s] / (f₀³, f_k² + f_{k−1}f_k + f_{k−1}²)`,
//! where `f_k` is a dot on the k-th rail facet, and closed foams evaluate to the
//! trace `ε(f₀² f₁⋯f_s) = −1`.

mod boxes;
mod cube;
mod foam;
mod ring;
mod unknot;

pub use boxes::{box_dual, box_mul, box_poly, poly_mul, trace0, BoxLabel};
pub use cube::{build_sl3_complex, sl3_diagram_degrees, webs, Web};
pub use foam::{evaluate_closed_foam, theta_pairing, theta_pairing_matrix, ClosedThetaFoam};
pub use ring::ThetaRing;
pub use unknot::{expand_F, expand_F_closed_form, min_combo_weight, sl3_unknot_params, BoxVector, Sl3Report, Tier};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Dots on the facets between adjacent rungs.
    B1,
    /// Dots on the facets containing a rung.
    B2,
}

impl Basis {
    pub fn other(self) -> Basis {
        match self {
            Basis::B1 => Basis::B2,
            Basis::B2 => Basis::B1,
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            Basis::B1 => 1,
            Basis::B2 => 2,
        }
    }
}

impl core::str::FromStr for Basis {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "B1" | "b1" | "1" => Ok(Basis::B1),
            "B2" | "b2" | "2" => Ok(Basis::B2),
            _ => Err(crate::Error::Unsupported(alloc::format!("basis {s}"))),
        }
    }
}

/// Basis vector `F(⊠box, dots; basis)` of `F(Θ_s)`. Bit `m − 1` of `dots` is `i_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaBasisVector {
    pub basis: Basis,
    pub s: u8,
    pub boxed: BoxLabel,
    pub dots: u32,
}

impl ThetaBasisVector {
    pub fn dim(s: usize) -> usize {
        3 << s
    }

    pub fn from_index(basis: Basis, s: usize, i: usize) -> Self {
        ThetaBasisVector { basis, s: s as u8, boxed: BoxLabel((i % 3) as u8), dots: (i / 3) as u32 }
    }

    pub fn index(&self) -> usize {
        self.boxed.0 as usize + 3 * self.dots as usize
    }

    /// The dual partner `F(⊠(2−j), 1−i; other basis)`, up to sign.
    pub fn partner(&self) -> Self {
        let mask = (1u32 << self.s) - 1;
        ThetaBasisVector {
            basis: self.basis.other(),
            s: self.s,
            boxed: BoxLabel(2 - self.boxed.0),
            dots: !self.dots & mask,
        }
    }

    pub fn label(&self) -> crate::Label {
        crate::Label::Theta { tag: self.basis.tag(), s: self.s, boxed: self.boxed.0, dots: self.dots }
    }
}
