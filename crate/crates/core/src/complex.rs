//! Graded based complexes over GF(q) and chain maps between them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linear::{rank, GFMatrix};

/// Degree convention: raw degrees are `|u| - n₋` (Khovanov) or `|u| - n₊`
/// (sl3); shifted degrees are `|u|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Raw,
    Shifted,
}

/// Per-circle (or per-web) label of a basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// ⊖ = 1
    Minus,
    /// ⊕ = 1 + X
    Plus,
    /// X on the marked circle of a reduced complex
    X,
    VMinus,
    VPlus,
    /// sl3 theta-web basis vector: basis tag (1 or 2), rung count, box, dot bits.
    Theta { tag: u8, s: u8, boxed: u8, dots: u32 },
    /// Generator of a tensor factor, by index into that factor's basis.
    Factor(u32),
}

impl Label {
    pub fn symbol(&self) -> String {
        match self {
            Label::Minus => "-".into(),
            Label::Plus => "+".into(),
            Label::X => "X".into(),
            Label::VMinus => "v-".into(),
            Label::VPlus => "v+".into(),
            Label::Theta { tag, s, boxed, dots } => format!("B{tag}[{boxed};{s};{dots:b}]"),
            Label::Factor(i) => format!("#{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub vertex: u64,
    pub labels: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub field: Field,
    pub epsilon: i8,
    pub min_degree: i32,
    /// `shifted = raw + shift`.
    pub shift: i32,
    pub groups: Vec<Vec<BasisElement>>,
    /// `differentials[j]` leaves degree `min_degree + j`.
    pub differentials: Vec<GFMatrix>,
    /// Degrees whose incoming and outgoing maps are both present. Windowed
    /// builds leave the outer groups without their far neighbours.
    pub valid: (i32, i32),
    pub provenance: String,
}

impl ChainComplex {
    /// Assembles a complex from groups and outgoing differentials, checking shapes.
    pub fn new(
        field: Field,
        epsilon: i8,
        min_degree: i32,
        groups: Vec<Vec<BasisElement>>,
        differentials: Vec<GFMatrix>,
        provenance: String,
    ) -> Result<ChainComplex> {
        let max = min_degree + groups.len() as i32 - 1;
        let c = ChainComplex { field, epsilon, min_degree, shift: 0, groups, differentials, valid: (min_degree, max), provenance };
        for (j, d) in c.differentials.iter().enumerate() {
            let i = c.min_degree + j as i32;
            if d.cols != c.dim(i) || d.rows != c.dim(i + epsilon as i32) || d.field != field {
                return Err(Error::Mismatch(format!(
                    "differential at degree {i} is {}x{}, expected {}x{}",
                    d.rows,
                    d.cols,
                    c.dim(i + epsilon as i32),
                    c.dim(i)
                )));
            }
        }
        if c.differentials.len() != c.groups.len() {
            return Err(Error::Mismatch("one differential per group expected".into()));
        }
        Ok(c)
    }

    pub fn with_shift(mut self, shift: i32) -> Self {
        self.shift = shift;
        self
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.groups.len() as i32 - 1
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i32> {
        self.min_degree..=self.max_degree()
    }

    fn idx(&self, i: i32) -> Option<usize> {
        let j = i - self.min_degree;
        (j >= 0 && (j as usize) < self.groups.len()).then_some(j as usize)
    }

    pub fn to_raw(&self, i: i32, conv: Convention) -> i32 {
        match conv {
            Convention::Raw => i,
            Convention::Shifted => i - self.shift,
        }
    }

    pub fn from_raw(&self, i: i32, conv: Convention) -> i32 {
        match conv {
            Convention::Raw => i,
            Convention::Shifted => i + self.shift,
        }
    }

    pub fn dim(&self, i: i32) -> usize {
        self.idx(i).map_or(0, |j| self.groups[j].len())
    }

    pub fn group(&self, i: i32) -> &[BasisElement] {
        self.idx(i).map_or(&[], |j| &self.groups[j])
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.degrees().map(|i| (i, self.dim(i))).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.groups.iter().map(|g| g.len()).sum()
    }

    /// ∂ leaving degree `i`.
    pub fn diff(&self, i: i32) -> GFMatrix {
        match self.idx(i) {
            Some(j) => self.differentials[j].clone(),
            None => GFMatrix::zeros(self.field, self.dim(i + self.epsilon as i32), 0),
        }
    }

    pub fn diff_ref(&self, i: i32) -> Option<&GFMatrix> {
        self.idx(i).map(|j| &self.differentials[j])
    }

    /// ∂ arriving at degree `i`.
    pub fn incoming(&self, i: i32) -> GFMatrix {
        let from = i - self.epsilon as i32;
        match self.idx(from) {
            Some(j) => self.differentials[j].clone(),
            None => GFMatrix::zeros(self.field, self.dim(i), 0),
        }
    }

    pub fn check_d2(&self) -> Result<()> {
        for i in self.degrees() {
            let next = i + self.epsilon as i32;
            if let (Some(a), Some(b)) = (self.diff_ref(i), self.diff_ref(next)) {
                if a.rows > 0 && b.rows > 0 && !b.mul(a).is_zero() {
                    return Err(Error::NotAComplex { degree: i });
                }
            }
        }
        Ok(())
    }

    pub fn homology_dim(&self, i: i32) -> usize {
        let d = self.dim(i);
        if d == 0 {
            return 0;
        }
        let out = self.diff_ref(i).map_or(0, rank);
        let inc = self.diff_ref(i - self.epsilon as i32).map_or(0, rank);
        d - out - inc
    }

    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        (self.valid.0..=self.valid.1).map(|i| (i, self.homology_dim(i))).collect()
    }

    /// Dual complex: same bases, transposed differentials, opposite ε.
    pub fn dual(&self) -> ChainComplex {
        let eps = self.epsilon as i32;
        let differentials = self
            .degrees()
            .map(|i| match self.diff_ref(i - eps) {
                Some(m) => m.transpose(),
                None => GFMatrix::zeros(self.field, self.dim(i - eps), self.dim(i)),
            })
            .collect();
        ChainComplex {
            field: self.field,
            epsilon: -self.epsilon,
            min_degree: self.min_degree,
            shift: self.shift,
            groups: self.groups.clone(),
            differentials,
            valid: self.valid,
            provenance: format!("dual({})", self.provenance),
        }
    }

    /// Reindexes `i ↦ -i` and flips ε, keeping the maps.
    pub fn negate_degrees(&self) -> ChainComplex {
        let mut groups = self.groups.clone();
        groups.reverse();
        let mut differentials = self.differentials.clone();
        differentials.reverse();
        ChainComplex {
            field: self.field,
            epsilon: -self.epsilon,
            min_degree: -self.max_degree(),
            shift: -self.shift,
            groups,
            differentials,
            valid: (-self.valid.1, -self.valid.0),
            provenance: format!("negated({})", self.provenance),
        }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.q(), other.field.q()));
        }
        if self.epsilon != other.epsilon {
            return Err(Error::Mismatch("direct sum of complexes with different ε".into()));
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let eps = self.epsilon as i32;
        let mut groups = Vec::new();
        let mut differentials = Vec::new();
        for i in lo..=hi {
            let mut g = self.group(i).to_vec();
            g.extend_from_slice(other.group(i));
            groups.push(g);
            let (a, b) = (self.diff(i), other.diff(i));
            let rows = self.dim(i + eps) + other.dim(i + eps);
            let mut t = Vec::new();
            for (j, col) in a.columns.iter().enumerate() {
                t.extend(col.iter().map(|&(r, v)| (r, j as u32, v)));
            }
            let (ro, co) = (self.dim(i + eps) as u32, self.dim(i) as u32);
            for (j, col) in b.columns.iter().enumerate() {
                t.extend(col.iter().map(|&(r, v)| (r + ro, j as u32 + co, v)));
            }
            differentials.push(GFMatrix::from_triplets(self.field, rows, self.dim(i) + other.dim(i), &t));
        }
        Ok(ChainComplex {
            field: self.field,
            epsilon: self.epsilon,
            min_degree: lo,
            shift: self.shift,
            groups,
            differentials,
            valid: (self.valid.0.max(other.valid.0), self.valid.1.min(other.valid.1)),
            provenance: format!("{} ⊕ {}", self.provenance, other.provenance),
        })
    }

    /// Index of a basis element within its group.
    pub fn index_of(&self, i: i32, e: &BasisElement) -> Option<usize> {
        self.group(i).iter().position(|x| x == e)
    }
}

/// Degree-wise matrices `f^i : C^i → D^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub blocks: BTreeMap<i32, GFMatrix>,
}

impl ChainMap {
    pub fn block(&self, i: i32, rows: usize, cols: usize, field: Field) -> GFMatrix {
        self.blocks.get(&i).cloned().unwrap_or_else(|| GFMatrix::zeros(field, rows, cols))
    }

    /// `∂_D f = f ∂_C` at every degree.
    pub fn commutes(&self, dom: &ChainComplex, cod: &ChainComplex) -> bool {
        let eps = dom.epsilon as i32;
        let lo = dom.min_degree.min(cod.min_degree) - 1;
        let hi = dom.max_degree().max(cod.max_degree()) + 1;
        (lo..=hi).all(|i| {
            let f_i = self.block(i, cod.dim(i), dom.dim(i), dom.field);
            let f_next = self.block(i + eps, cod.dim(i + eps), dom.dim(i + eps), dom.field);
            let lhs = cod.diff(i).mul(&f_i);
            let rhs = f_next.mul(&dom.diff(i));
            lhs.rows == rhs.rows && lhs.cols == rhs.cols && lhs.add(&rhs.scale(dom.field.neg(1))).is_zero()
        })
    }

    /// Every block is square and sends basis vectors bijectively to basis vectors.
    pub fn is_basis_bijection(&self) -> bool {
        self.blocks.values().all(|m| {
            if m.rows != m.cols {
                return false;
            }
            let mut hit = alloc::vec![false; m.rows];
            m.columns.iter().all(|c| {
                c.len() == 1 && c[0].1 == 1 && !core::mem::replace(&mut hit[c[0].0 as usize], true)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tiny() -> ChainComplex {
        // F -> F^2 -> F, x ↦ (x, x), (a, b) ↦ a + b
        let f = Field::GF2;
        let e = |v| BasisElement { vertex: v, labels: vec![] };
        ChainComplex::new(
            f,
            1,
            0,
            vec![vec![e(0)], vec![e(1), e(2)], vec![e(3)]],
            vec![
                GFMatrix::from_dense(f, &[vec![1], vec![1]]),
                GFMatrix::from_dense(f, &[vec![1, 1]]),
                GFMatrix::zeros(f, 0, 1),
            ],
            "tiny".into(),
        )
        .unwrap()
    }

    #[test]
    fn homology_of_tiny() {
        let c = tiny();
        c.check_d2().unwrap();
        assert_eq!(c.homology_dims().into_values().collect::<Vec<_>>(), vec![0, 0, 0]);
    }

    #[test]
    fn dual_is_involutive() {
        let c = tiny();
        let d = c.dual();
        assert_eq!(d.epsilon, -1);
        d.check_d2().unwrap();
        assert_eq!(d.dims(), c.dims());
        let dd = d.dual();
        assert_eq!(dd.differentials, c.differentials);
        assert_eq!(dd.groups, c.groups);
    }

    #[test]
    fn negation_round_trip() {
        let c = tiny();
        let n = c.negate_degrees();
        assert_eq!((n.min_degree, n.max_degree()), (-2, 0));
        assert_eq!(n.negate_degrees().differentials, c.differentials);
        assert_eq!(c.dual().negate_degrees().epsilon, 1);
    }

    #[test]
    fn identity_chain_map() {
        let c = tiny();
        let blocks = c.degrees().map(|i| (i, GFMatrix::identity(c.field, c.dim(i)))).collect();
        let m = ChainMap { blocks };
        assert!(m.commutes(&c, &c));
        assert!(m.is_basis_bijection());
    }
}
