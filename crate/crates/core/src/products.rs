//! Tensor products of complexes, connect-sum relations, the Hopf recursion
//! and closed forms of the code families.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::builders::{self, TreeShape};
use crate::complex::{BasisElement, ChainComplex, Convention, Label};
use crate::diagram::LinkDiagram;
use crate::distance::{self, css_distance, Budget, CssOptions, Executor, Method, SearchProblem};
use crate::error::{Error, Result};
use crate::khovanov::build_complex;
use crate::linear::GFMatrix;

/// `C1 ⊗ C2` with `∂(x⊗y) = ∂x⊗y + (−1)^i x⊗∂y`.
pub fn tensor(c1: &ChainComplex, c2: &ChainComplex) -> Result<ChainComplex> {
    if c1.field != c2.field {
        return Err(Error::FieldMismatch(c1.field.q(), c2.field.q()));
    }
    if c1.epsilon != c2.epsilon {
        return Err(Error::Mismatch("tensor of complexes with different ε".into()));
    }
    let f = c1.field;
    let eps = c1.epsilon as i32;
    let lo = c1.min_degree + c2.min_degree;
    let hi = c1.max_degree() + c2.max_degree();
    // position of the block (i, j) inside degree i + j
    let mut offsets: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut groups = Vec::new();
    for k in lo..=hi {
        let mut g = Vec::new();
        for i in c1.degrees() {
            let j = k - i;
            if c2.dim(j) == 0 || c1.dim(i) == 0 {
                continue;
            }
            offsets.insert((i, j), g.len());
            for a in 0..c1.dim(i) {
                for b in 0..c2.dim(j) {
                    g.push(BasisElement {
                        vertex: (i - c1.min_degree) as u64,
                        labels: vec![Label::Factor(a as u32), Label::Factor(b as u32)],
                    });
                }
            }
        }
        groups.push(g);
    }
    let mut differentials = Vec::new();
    for k in lo..=hi {
        let rows = groups.get((k + eps - lo) as usize).map_or(0, |g| g.len());
        let cols = groups[(k - lo) as usize].len();
        let mut t = Vec::new();
        for (&(i, j), &off) in offsets.range((i32::MIN, i32::MIN)..) {
            if i + j != k {
                continue;
            }
            let (n1, n2) = (c1.dim(i), c2.dim(j));
            let d1 = c1.diff(i);
            let d2 = c2.diff(j);
            let sign = if i.rem_euclid(2) == 1 { f.neg(1) } else { 1 };
            for a in 0..n1 {
                for b in 0..n2 {
                    let col = (off + a * n2 + b) as u32;
                    if let Some(&o) = offsets.get(&(i + eps, j)) {
                        let m2 = c2.dim(j);
                        for &(r, v) in &d1.columns[a] {
                            t.push(((o + r as usize * m2 + b) as u32, col, v));
                        }
                    }
                    if let Some(&o) = offsets.get(&(i, j + eps)) {
                        let m2 = c2.dim(j + eps);
                        for &(r, v) in &d2.columns[b] {
                            t.push(((o + a * m2 + r as usize) as u32, col, f.mul(sign, v)));
                        }
                    }
                }
            }
        }
        differentials.push(GFMatrix::from_triplets(f, rows, cols, &t));
    }
    let c = ChainComplex::new(f, c1.epsilon, lo, groups, differentials, format!("{} ⊗ {}", c1.provenance, c2.provenance))?;
    c.check_d2()?;
    Ok(c.with_shift(c1.shift + c2.shift))
}

/// Künneth: homology dimensions of a tensor product.
pub fn kunneth(h1: &BTreeMap<i32, usize>, h2: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (&i, &a) in h1 {
        for (&j, &b) in h2 {
            *out.entry(i + j).or_insert(0) += a * b;
        }
    }
    out
}

/// `min_i d̂^i(C) · d̂^{m−i}(D)` over degrees where both sides have homology.
pub fn tensor_upper_bound(d1: &BTreeMap<i32, usize>, d2: &BTreeMap<i32, usize>, m: i32) -> Option<usize> {
    d1.iter().filter_map(|(&i, &a)| d2.get(&(m - i)).map(|&b| a * b)).min()
}

/// d̂ at every degree with homology.
pub fn distance_table(c: &ChainComplex, budget: &dyn Budget, exec: &dyn Executor) -> Result<BTreeMap<i32, usize>> {
    let mut out = BTreeMap::new();
    for (i, h) in c.homology_dims() {
        if h > 0 {
            let o = distance::min_weight_nontrivial(c, i, Method::Auto, budget, exec)?;
            if !o.exact {
                return Err(Error::Unsupported(format!("search at degree {i} ran out of budget")));
            }
            out.insert(i, o.weight);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeParams {
    pub degree: i32,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectSumReport {
    pub left: String,
    pub right: String,
    pub placements: Vec<(u32, u32)>,
    pub sum: Vec<Vec<DegreeParams>>,
    pub union: Vec<DegreeParams>,
    pub tensor_dims_match: bool,
    pub ok: bool,
    pub failures: Vec<String>,
}

fn params(d: &LinkDiagram, budget: &dyn Budget, exec: &dyn Executor) -> Result<Vec<DegreeParams>> {
    let c = build_complex(d, false)?;
    let mut out = Vec::new();
    for i in c.degrees() {
        let k = c.homology_dim(i);
        let dd = if k > 0 {
            let r = css_distance(d, i, CssOptions::default(), budget, exec)?;
            if !r.exact {
                return Err(Error::Unsupported(format!("{}: budget ran out at degree {i}", d.name)));
            }
            r.d
        } else {
            None
        };
        out.push(DegreeParams { degree: i, n: c.dim(i), k, d: dd });
    }
    Ok(out)
}

/// Second splice placement, drawn with a fixed seed.
pub fn random_placement(d1: &LinkDiagram, d2: &LinkDiagram, seed: u64) -> (u32, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = (rng.next_u32() % d1.num_arcs.max(1)) as u32;
    let b = (rng.next_u32() % d2.num_arcs.max(1)) as u32;
    (a, b)
}

/// Compares `D1 # D2` (at two placements) with `D1 ⊔ D2` and `C(D1) ⊗ C(D2)`:
/// n and k halve, d agrees.
pub fn connect_sum_check(
    d1: &LinkDiagram,
    d2: &LinkDiagram,
    budget: &dyn Budget,
    exec: &dyn Executor,
) -> Result<ConnectSumReport> {
    let un = d1.disjoint_union(d2);
    let union = params(&un, budget, exec)?;
    let t = tensor(&build_complex(d1, false)?, &build_complex(d2, false)?)?;
    let cu = build_complex(&un, false)?;
    let tensor_dims_match = t.dims() == cu.dims() && t.homology_dims() == cu.homology_dims();
    let placements = vec![(0, 0), random_placement(d1, d2, 0xC0DE)];
    let mut failures = Vec::new();
    let mut sums = Vec::new();
    for &(a1, a2) in &placements {
        let s = d1.connect_sum(a1, d2, a2)?;
        let ps = params(&s, budget, exec)?;
        for p in &ps {
            let Some(u) = union.iter().find(|u| u.degree == p.degree) else {
                failures.push(format!("degree {} missing from the union", p.degree));
                continue;
            };
            if 2 * p.n != u.n || 2 * p.k != u.k || p.d != u.d {
                failures.push(format!(
                    "placement {a1},{a2} degree {}: (n,k,d)=({},{},{:?}) vs union ({},{},{:?})",
                    p.degree, p.n, p.k, p.d, u.n, u.k, u.d
                ));
            }
        }
        sums.push(ps);
    }
    if !tensor_dims_match {
        failures.push("tensor and disjoint union differ".into());
    }
    Ok(ConnectSumReport {
        left: d1.name.clone(),
        right: d2.name.clone(),
        placements,
        sum: sums,
        union,
        tensor_dims_match,
        ok: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiiRow {
    pub degree: i32,
    pub before: Option<usize>,
    /// Code distance after the move, with the arc of `D1` over and under.
    pub after: [Option<usize>; 2],
    pub d_hat_after: [(Option<usize>, Option<usize>); 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiiDoublingReport {
    pub left: String,
    pub right: String,
    pub arcs: (u32, u32),
    pub rows: Vec<RiiRow>,
    pub homology_invariant: bool,
    pub overstrand_agree: bool,
    pub doubled: bool,
    pub ok: bool,
}

/// An RII move between arc `a1` of `D1` and arc `a2` of a disjoint `D2`,
/// with both choices of overstrand, against `D1 ⊔ D2`.
pub fn rii_doubling_check(
    d1: &LinkDiagram,
    a1: u32,
    d2: &LinkDiagram,
    a2: u32,
    budget: &dyn Budget,
    exec: &dyn Executor,
) -> Result<RiiDoublingReport> {
    let un = d1.disjoint_union(d2);
    let b = d1.num_arcs + a2;
    let before = params(&un, budget, exec)?;
    let h0 = build_complex(&un, false)?.homology_dims();
    let mut homology_invariant = true;
    let mut after = Vec::new();
    for a_over in [true, false] {
        let moved = builders::rii(&un, a1, b, false, a_over)?;
        let c = build_complex(&moved, false)?;
        homology_invariant &= c.homology_dims().into_iter().filter(|x| x.1 > 0).eq(h0.iter().map(|(&i, &k)| (i, k)).filter(|x| x.1 > 0));
        let mut table = BTreeMap::new();
        for i in c.degrees().filter(|&i| c.homology_dim(i) > 0) {
            let r = css_distance(&moved, i, CssOptions::default(), budget, exec)?;
            if !r.exact {
                return Err(Error::Unsupported(format!("{}: budget ran out at degree {i}", moved.name)));
            }
            table.insert(i, (r.d, r.d_hat, r.d_hat_dual));
        }
        after.push(table);
    }
    let rows: Vec<RiiRow> = before
        .iter()
        .filter(|p| p.k > 0)
        .map(|p| {
            let get = |t: &BTreeMap<i32, (Option<usize>, Option<usize>, Option<usize>)>| t.get(&p.degree).copied().unwrap_or_default();
            let (x, y) = (get(&after[0]), get(&after[1]));
            RiiRow { degree: p.degree, before: p.d, after: [x.0, y.0], d_hat_after: [(x.1, x.2), (y.1, y.2)] }
        })
        .collect();
    let overstrand_agree = rows.iter().all(|r| r.d_hat_after[0] == r.d_hat_after[1]);
    let doubled = rows.iter().all(|r| r.after.iter().all(|&x| x.is_some() && x == r.before.map(|v| 2 * v)));
    Ok(RiiDoublingReport {
        left: d1.name.clone(),
        right: d2.name.clone(),
        arcs: (a1, a2),
        ok: homology_invariant && overstrand_agree && doubled && !rows.is_empty(),
        rows,
        homology_invariant,
        overstrand_agree,
        doubled,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionRow {
    pub degree: i32,
    pub measured: Option<usize>,
    pub predicted: Option<usize>,
}

/// `d̂^m(D # hl) = min{2 d̂^m(D), d̂^{m−2}(D)}` in shifted degrees, reduced.
pub fn hopf_recursion_check(d: &LinkDiagram, budget: &dyn Budget, exec: &dyn Executor) -> Result<Vec<RecursionRow>> {
    let base = build_complex(d, true)?;
    let sum = builders::pointed_sum(d, &builders::pointed_hopf())?;
    let cs = build_complex(&sum, true)?;
    let shifted = |c: &ChainComplex, t: BTreeMap<i32, usize>| -> BTreeMap<i32, usize> {
        t.into_iter().map(|(i, v)| (c.from_raw(i, Convention::Shifted), v)).collect()
    };
    let db = shifted(&base, distance_table(&base, budget, exec)?);
    let ds = shifted(&cs, distance_table(&cs, budget, exec)?);
    let lo = cs.from_raw(cs.min_degree, Convention::Shifted);
    let hi = cs.from_raw(cs.max_degree(), Convention::Shifted);
    let mut rows = Vec::new();
    for m in lo..=hi {
        let a = db.get(&m).map(|x| 2 * x);
        let b = db.get(&(m - 2)).copied();
        let predicted = match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let measured = ds.get(&m).copied();
        if measured.is_some() || predicted.is_some() {
            rows.push(RecursionRow { degree: m, measured, predicted });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    IteratedHopf,
    TreeUnlink,
    BranchedUnknot,
    TorusReduced,
    Sl3Unknot,
}

impl core::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "iterated-hopf" => Family::IteratedHopf,
            "tree-unlink" => Family::TreeUnlink,
            "branched-unknot" => Family::BranchedUnknot,
            "torus-reduced" => Family::TorusReduced,
            "sl3-unknot" => Family::Sl3Unknot,
            _ => return Err(Error::BadFamily(s.to_string())),
        })
    }
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::IteratedHopf => "iterated-hopf",
            Family::TreeUnlink => "tree-unlink",
            Family::BranchedUnknot => "branched-unknot",
            Family::TorusReduced => "torus-reduced",
            Family::Sl3Unknot => "sl3-unknot",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub args: Vec<u64>,
    #[serde(with = "decimal")]
    pub n: BigUint,
    #[serde(with = "decimal")]
    pub k: BigUint,
    #[serde(with = "decimal")]
    pub d: BigUint,
}

/// Big integers as decimal strings.
pub mod decimal {
    use alloc::string::{String, ToString};
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> core::result::Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

impl FamilyParams {
    pub fn csv_row(&self) -> String {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        format!("{},{},{},{},{}", self.family.name(), args.join(" "), self.n, self.k, self.d)
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Coefficients of a polynomial power, `coeffs` indexed from degree 0.
pub fn poly_pow(coeffs: &[u64], e: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for _ in 0..e {
        let mut next = vec![BigUint::zero(); out.len() + coeffs.len() - 1];
        for (i, a) in out.iter().enumerate() {
            for (j, &b) in coeffs.iter().enumerate() {
                if b != 0 {
                    next[i + j] += a * b;
                }
            }
        }
        out = next;
    }
    out
}

fn arg(args: &[u64], i: usize, family: Family) -> Result<u64> {
    match args.get(i) {
        Some(&a) if a >= 1 => Ok(a),
        Some(&0) if family == Family::TorusReduced && i == 1 => Ok(0),
        _ => Err(Error::BadFamily(format!("{} needs argument {} ≥ 1", family.name(), i + 1))),
    }
}

/// Exact (n, k, d) of a family member.
pub fn closed_form_params(family: Family, args: &[u64]) -> Result<FamilyParams> {
    let two = BigUint::from(2u32);
    let (n, k, d) = match family {
        Family::IteratedHopf => {
            let l = arg(args, 0, family)?;
            let n = poly_pow(&[2, 2, 2], 2 * l as usize)[2 * l as usize].clone();
            (n, binomial(2 * l, l), two.pow(l as u32))
        }
        Family::TreeUnlink => {
            let l = arg(args, 0, family)?;
            let n = poly_pow(&[1, 4, 1], l as usize)[l as usize].clone() * 2u32;
            (n, two.pow(l as u32 + 1), two.pow(l as u32))
        }
        Family::BranchedUnknot => {
            let m = arg(args, 0, family)? * arg(args, 1, family)?;
            let n = (0..=m).map(|r| (binomial(m, r) << r as usize).pow(2)).sum();
            (n, BigUint::one(), two.pow(m as u32))
        }
        Family::TorusReduced => {
            let l = arg(args, 0, family)?;
            let r = arg(args, 1, family)?;
            if r > l || r == 1 {
                return Err(Error::BadFamily(format!("torus-reduced has no homology at degree {r} for ℓ={l}")));
            }
            let n = if r == 0 { two.clone() } else { binomial(l, r) << (r as usize - 1) };
            let d = if r == 0 { two.clone() } else { binomial(l, r) };
            (n, BigUint::one(), d)
        }
        Family::Sl3Unknot => {
            let l = arg(args, 0, family)?;
            let n = crate::sequences::sl3_n(l as usize);
            (n, BigUint::from(3u32), BigUint::from(3u32).pow(l as u32))
        }
    };
    Ok(FamilyParams { family, args: args.to_vec(), n, k, d })
}

/// Diagram and raw degree that realise a family member.
pub fn family_instance(family: Family, args: &[u64]) -> Result<(LinkDiagram, bool, i32, Vec<LinkDiagram>)> {
    match family {
        Family::IteratedHopf => {
            let l = arg(args, 0, family)? as usize;
            Ok((builders::iterated_hopf(2 * l), true, 2 * l as i32, Vec::new()))
        }
        Family::TreeUnlink => {
            let l = arg(args, 0, family)? as usize;
            let star = builders::tree_unlink(l, TreeShape::Star);
            Ok((builders::tree_unlink(l, TreeShape::Path), false, 0, vec![star]))
        }
        Family::BranchedUnknot => {
            let b = arg(args, 0, family)? as usize;
            let l = arg(args, 1, family)? as usize;
            Ok((builders::branched_unknot(b, l), true, 0, Vec::new()))
        }
        Family::TorusReduced => {
            let l = arg(args, 0, family)? as usize;
            let r = arg(args, 1, family)? as i32;
            Ok((builders::torus_2(l), true, r, Vec::new()))
        }
        Family::Sl3Unknot => Err(Error::Unsupported("sl3 family is built by the sl3 module".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub formula: FamilyParams,
    pub measured_n: usize,
    pub measured_k: usize,
    pub measured_d: Option<usize>,
    pub exact: bool,
    pub variants_agree: bool,
    pub ok: bool,
}

/// Builds the family member and compares measured (n, k, d) with the closed form.
pub fn family_cross_check(
    family: Family,
    args: &[u64],
    method: Method,
    budget: &dyn Budget,
    exec: &dyn Executor,
) -> Result<FamilyCheck> {
    let formula = closed_form_params(family, args)?;
    let (d, reduced, degree, variants) = family_instance(family, args)?;
    let measure = |d: &LinkDiagram| -> Result<(usize, usize, Option<usize>, bool)> {
        if family == Family::TorusReduced {
            // the family records d̂
            let c = crate::khovanov::build_window(d, true, degree - 1, degree + 1)?;
            let p = SearchProblem::from_complex(&c, degree)?;
            let o = distance::search(&p, method, budget, exec)?;
            return Ok((p.n, p.k, Some(o.weight), o.exact));
        }
        let opts = CssOptions { reduced, method, convention: Convention::Raw, check_dual: false };
        let r = css_distance(d, degree, opts, budget, exec)?;
        Ok((r.n, r.k, r.d, r.exact))
    };
    let (n, k, dd, exact) = measure(&d)?;
    let mut variants_agree = true;
    for v in &variants {
        variants_agree &= measure(v)? == (n, k, dd, exact);
    }
    let ok = exact
        && variants_agree
        && BigUint::from(n) == formula.n
        && BigUint::from(k) == formula.k
        && dd.map(BigUint::from) == Some(formula.d.clone());
    Ok(FamilyCheck { formula, measured_n: n, measured_k: k, measured_d: dd, exact, variants_agree, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{Sequential, Unlimited};

    #[test]
    fn tensor_of_unknots() {
        let u = build_complex(&builders::unknot(), false).unwrap();
        let t = tensor(&u, &u).unwrap();
        assert_eq!(t.dims(), BTreeMap::from([(0, 4)]));
    }

    #[test]
    fn tensor_of_reduced_hopf() {
        let h = build_complex(&builders::pointed_hopf(), true).unwrap();
        let t = tensor(&h, &h).unwrap();
        assert_eq!(t.dim(2), 12);
        assert_eq!(t.homology_dim(2), 2);
        assert_eq!(t.homology_dims(), kunneth(&h.homology_dims(), &h.homology_dims()));
        let dh = distance_table(&h, &Unlimited, &Sequential).unwrap();
        assert_eq!(tensor_upper_bound(&dh, &dh, 2), Some(2));
        assert_eq!(tensor_upper_bound(&dh, &dh, 0), Some(4));
        assert_eq!(tensor_upper_bound(&dh, &BTreeMap::from([(5, 1)]), 1), None);
        let dt = distance_table(&t, &Unlimited, &Sequential).unwrap();
        for (m, v) in dt {
            assert_eq!(Some(v), tensor_upper_bound(&dh, &dh, m));
        }
    }

    #[test]
    fn closed_forms() {
        let p = closed_form_params(Family::IteratedHopf, &[1]).unwrap();
        assert_eq!((p.n, p.k, p.d), (12u32.into(), 2u32.into(), 2u32.into()));
        let p = closed_form_params(Family::IteratedHopf, &[2]).unwrap();
        assert_eq!((p.n, p.k, p.d), (304u32.into(), 6u32.into(), 4u32.into()));
        let p = closed_form_params(Family::TreeUnlink, &[1]).unwrap();
        assert_eq!((p.n, p.k, p.d), (8u32.into(), 4u32.into(), 2u32.into()));
        let p = closed_form_params(Family::BranchedUnknot, &[1, 1]).unwrap();
        assert_eq!((p.n, p.k, p.d), (5u32.into(), 1u32.into(), 2u32.into()));
        assert!(matches!("bogus".parse::<Family>(), Err(Error::BadFamily(_))));
    }

    #[test]
    fn small_families_cross_check() {
        for (f, a) in [
            (Family::IteratedHopf, vec![1]),
            (Family::TreeUnlink, vec![2]),
            (Family::BranchedUnknot, vec![1, 2]),
            (Family::TorusReduced, vec![4, 2]),
        ] {
            let c = family_cross_check(f, &a, Method::Auto, &Unlimited, &Sequential).unwrap();
            assert!(c.ok, "{f:?} {a:?}: {c:?}");
        }
    }

    #[test]
    fn hopf_recursion_on_unknot() {
        let rows = hopf_recursion_check(&builders::pointed_unknot(), &Unlimited, &Sequential).unwrap();
        let m: BTreeMap<i32, Option<usize>> = rows.iter().map(|r| (r.degree, r.measured)).collect();
        assert_eq!(m[&0], Some(2));
        assert_eq!(m[&2], Some(1));
        assert!(rows.iter().all(|r| r.measured == r.predicted));
    }

    #[test]
    fn connect_sum_of_unknots() {
        let u = builders::pointed_unknot();
        let r = connect_sum_check(&u, &u, &Unlimited, &Sequential).unwrap();
        assert!(r.ok, "{:?}", r.failures);
    }

    #[test]
    fn unknot_slide_doubles() {
        let u = builders::unknot();
        let r = rii_doubling_check(&u, 0, &u, 0, &Unlimited, &Sequential).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.rows[0].before, Some(1));
        let h = builders::pointed_hopf();
        for a in 0..h.num_arcs {
            let r = rii_doubling_check(&h, a, &u, 0, &Unlimited, &Sequential).unwrap();
            assert!(r.ok, "arc {a}: {r:?}");
        }
    }
}
