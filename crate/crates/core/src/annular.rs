//! Annular Khovanov complexes in fixed annular degree.
//!
//! Trivial circles carry ⊖/⊕ (bit 0/1), essential circles v₋/v₊ (bit 0/1).
//! Only the part of each edge map that preserves annular degree is kept.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::builders::{from_gauss, visit};
use crate::complex::{BasisElement, ChainComplex, Label};
use crate::diagram::{CubeEdge, EdgeKind, LinkDiagram, Resolution};
use crate::distance::{self, Budget, Executor, Method, SearchProblem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::khovanov::{build_complex, carry_bits, cube_complex};

fn essential(r: &Resolution) -> &[bool] {
    r.essential.as_deref().expect("annular resolution")
}

/// `#v₊ − #v₋` of a state.
pub fn adeg(r: &Resolution, code: u32) -> i32 {
    essential(r)
        .iter()
        .enumerate()
        .filter(|(_, &e)| e)
        .map(|(c, _)| if (code >> c) & 1 == 1 { 1 } else { -1 })
        .sum()
}

fn annular_edge(e: &CubeEdge, ru: &Resolution, rv: &Resolution, carried: &[Option<usize>], code: u32, out: &mut Vec<(u32, u8)>) {
    let base = carry_bits(carried, code);
    let bit = |c: usize| (code >> c) & 1;
    let (eu, ev) = (essential(ru), essential(rv));
    match e.kind {
        EdgeKind::Merge { a, b, into } => match (eu[a], eu[b]) {
            (false, false) => out.push((base | (bit(a) ^ bit(b)) << into, 1)),
            // II: v± ⊗ ε ↦ v±
            (true, false) => out.push((base | bit(a) << into, 1)),
            (false, true) => out.push((base | bit(b) << into, 1)),
            // III: v±⊗v± ↦ 0, v±⊗v∓ ↦ ⊖ + ⊕
            (true, true) => {
                if bit(a) != bit(b) {
                    out.push((base, 1));
                    out.push((base | 1 << into, 1));
                }
            }
        },
        EdgeKind::Split { from, a, b } => match (ev[a], ev[b]) {
            (false, false) => {
                let e = bit(from);
                for x in 0..2u32 {
                    out.push((base | x << a | (x ^ 1 ^ e) << b, 1));
                }
            }
            // I: v± ↦ v± ⊗ (⊖ + ⊕)
            (true, false) | (false, true) => {
                let (ess, triv) = if ev[a] { (a, b) } else { (b, a) };
                let v = base | bit(from) << ess;
                out.push((v, 1));
                out.push((v | 1 << triv, 1));
            }
            // IV: ⊖, ⊕ ↦ v₊⊗v₋ + v₋⊗v₊
            (true, true) => {
                out.push((base | 1 << a, 1));
                out.push((base | 1 << b, 1));
            }
        },
    }
}

fn annular_labels(r: &Resolution, code: u32) -> Vec<Label> {
    essential(r)
        .iter()
        .enumerate()
        .map(|(c, &e)| match (e, (code >> c) & 1 == 1) {
            (false, false) => Label::Minus,
            (false, true) => Label::Plus,
            (true, false) => Label::VMinus,
            (true, true) => Label::VPlus,
        })
        .collect()
}

/// `C_A(D; k)` over raw degrees `lo..=hi`.
pub fn build_annular_window(d: &LinkDiagram, k: i32, lo: i32, hi: i32) -> Result<ChainComplex> {
    if d.ray_counts.is_none() {
        return Err(Error::NotAnnular);
    }
    let states = |r: &Resolution| -> Vec<u32> {
        (0..1u32 << r.num_circles).filter(|&c| adeg(r, c) == k).collect()
    };
    cube_complex(
        d,
        Field::GF2,
        d.n_minus() as i32,
        lo,
        hi,
        &states,
        &annular_labels,
        &annular_edge,
        format!("C_A({}; {k})", d.name),
    )
}

pub fn build_annular_complex(d: &LinkDiagram, k: i32) -> Result<ChainComplex> {
    build_annular_window(d, k, i32::MIN / 2, i32::MAX / 2)
}

/// Annular closure of the (2, n) torus tangle: the closure of `s1^n` in B2
/// with the puncture between the two closure arcs. `n = 0` is the trivial
/// tangle, a single essential loop.
pub fn torus_tangle_closure(n: usize) -> LinkDiagram {
    if n == 0 {
        let mut d = from_gauss("annular trivial tangle", &[vec![]], &[]).unwrap();
        d.ray_counts = Some(vec![1]);
        return d.with_basepoint(0).unwrap();
    }
    let mut d = crate::builders::torus_2(n);
    let mut rc = vec![0; d.num_arcs as usize];
    rc[1] = 1;
    d.ray_counts = Some(rc);
    d.basepoint = Some(1);
    d.with_name(&format!("annular (2,{n}) tangle closure"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleIsoReport {
    pub name: String,
    pub dims_match: bool,
    pub matrices_match: bool,
    pub no_zero_columns: bool,
}

/// Compares `C_A(D; ±1)` with the reduced `C(D•)` under v± ↦ X on the
/// essential circle.
pub fn tangle_closure_iso_check(d: &LinkDiagram) -> Result<Vec<TangleIsoReport>> {
    let red = build_complex(d, true)?;
    let mut out = Vec::new();
    for k in [1, -1] {
        let ann = build_annular_complex(d, k)?;
        let dims_match = ann.dims() == red.dims();
        let mut matrices_match = dims_match;
        let mut no_zero_columns = true;
        if dims_match {
            let iota = |e: &BasisElement| BasisElement {
                vertex: e.vertex,
                labels: e
                    .labels
                    .iter()
                    .map(|&l| if matches!(l, Label::VPlus | Label::VMinus) { Label::X } else { l })
                    .collect(),
            };
            let perms: Vec<Option<Vec<usize>>> = ann
                .degrees()
                .map(|i| {
                    let idx: HashMap<&BasisElement, usize> =
                        red.group(i).iter().enumerate().map(|(j, e)| (e, j)).collect();
                    ann.group(i).iter().map(|e| idx.get(&iota(e)).copied()).collect()
                })
                .collect();
            for (t, i) in ann.degrees().enumerate() {
                let (Some(p), Some(pn)) = (&perms[t], perms.get(t + 1).cloned().unwrap_or(Some(Vec::new()))) else {
                    matrices_match = false;
                    break;
                };
                let a = ann.diff(i);
                let b = red.diff(i);
                for (j, col) in a.columns.iter().enumerate() {
                    if col.is_empty() && a.rows > 0 {
                        no_zero_columns = false;
                    }
                    let mut mapped: Vec<u32> = col.iter().map(|&(r, _)| pn[r as usize] as u32).collect();
                    mapped.sort_unstable();
                    let theirs: Vec<u32> = b.columns[p[j]].iter().map(|&(r, _)| r).collect();
                    if mapped != theirs {
                        matrices_match = false;
                    }
                }
            }
        }
        out.push(TangleIsoReport {
            name: format!("{} at adeg {k}", d.name),
            dims_match,
            matrices_match,
            no_zero_columns,
        });
    }
    Ok(out)
}

/// `D_ℓ`: an ellipse around the puncture lying over `ℓ − 1` concentric
/// essential circles, crossing each at a positive top and a negative bottom
/// crossing.
pub fn concentric_diagram(l: usize) -> Result<LinkDiagram> {
    if !(1..=5).contains(&l) {
        return Err(Error::Unsupported(format!("D_ℓ for ℓ = {l}")));
    }
    let m = l - 1;
    // crossing T_r = 2(r−1), B_r = 2(r−1) + 1 for r = 1..=m
    let t = |r: usize| 2 * (r - 1);
    let b = |r: usize| 2 * (r - 1) + 1;
    let mut comps: Vec<Vec<_>> = (1..=m).map(|r| vec![visit(t(r), false), visit(b(r), false)]).collect();
    let mut ellipse = Vec::new();
    for r in 1..=m {
        ellipse.push(visit(t(r), true));
    }
    for r in (1..=m).rev() {
        ellipse.push(visit(b(r), true));
    }
    comps.push(ellipse);
    let signs: Vec<i8> = (0..2 * m).map(|c| if c % 2 == 0 { 1 } else { -1 }).collect();
    let mut d = from_gauss(&format!("D_{l}"), &comps, &signs)?;
    // arcs: circle r has T_r→B_r then B_r→T_r; the ellipse's last arc is the right cap
    let mut rc = vec![0u32; d.num_arcs as usize];
    for r in 0..m {
        rc[2 * r + 1] = 1;
    }
    let last = d.num_arcs as usize - 1;
    rc[last] = 1;
    d.ray_counts = Some(rc);
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnularReport {
    pub l: usize,
    pub adeg: i32,
    pub degree: i32,
    pub n: usize,
    pub k: usize,
    pub d_hat: Option<usize>,
    pub d_hat_dual: Option<usize>,
    pub d: Option<usize>,
    pub exact: bool,
}

/// Distance of `C_A(D; k)` at raw degree `i`, with the transpose for the dual.
pub fn annular_distance(
    d: &LinkDiagram,
    k: i32,
    i: i32,
    method: Method,
    budget: &dyn Budget,
    exec: &dyn Executor,
) -> Result<(usize, usize, Option<(distance::Outcome, distance::Outcome)>)> {
    let c = build_annular_window(d, k, i - 1, i + 1)?;
    let p = SearchProblem::from_complex(&c, i)?;
    if p.k == 0 {
        return Ok((p.n, 0, None));
    }
    let a = distance::search(&p, method, budget, exec)?;
    let b = distance::search(&p.dual()?, method, budget, exec)?;
    Ok((p.n, p.k, Some((a, b))))
}

/// The concentric family at its middle degree, annular degree 0 (ℓ even) or 1 (ℓ odd).
pub fn annular_unlink_family(l: usize, method: Method, budget: &dyn Budget, exec: &dyn Executor) -> Result<AnnularReport> {
    let d = concentric_diagram(l)?;
    let k = if l % 2 == 0 { 0 } else { 1 };
    let (n, kk, r) = annular_distance(&d, k, 0, method, budget, exec)?;
    let (d_hat, d_hat_dual, exact) = match &r {
        Some((a, b)) => (Some(a.weight), Some(b.weight), a.exact && b.exact),
        None => (None, None, true),
    };
    Ok(AnnularReport {
        l,
        adeg: k,
        degree: 0,
        n,
        k: kk,
        d_hat,
        d_hat_dual,
        d: match (d_hat, d_hat_dual) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        },
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{Sequential, Unlimited};

    #[test]
    fn essential_loop() {
        let d = torus_tangle_closure(0);
        let c = build_annular_complex(&d, 1).unwrap();
        assert_eq!(c.dims().into_values().collect::<Vec<_>>(), vec![1]);
        assert!(c.diff(0).is_zero());
        assert!(matches!(build_annular_complex(&crate::builders::unknot(), 0), Err(Error::NotAnnular)));
    }

    #[test]
    fn tangle_isos() {
        for n in [0, 2, 3, 4] {
            for r in tangle_closure_iso_check(&torus_tangle_closure(n)).unwrap() {
                assert!(r.dims_match && r.matrices_match && r.no_zero_columns, "{r:?}");
            }
        }
    }

    #[test]
    fn adeg_never_increases() {
        // the full differential, unfiltered, has no component raising adeg
        let d = concentric_diagram(3).unwrap();
        for k in -3..=3 {
            build_annular_complex(&d, k).unwrap().check_d2().unwrap();
        }
    }

    #[test]
    fn small_concentric_values() {
        let r1 = annular_unlink_family(1, Method::Auto, &Unlimited, &Sequential).unwrap();
        assert_eq!(r1.d, Some(1));
        let r2 = annular_unlink_family(2, Method::Auto, &Unlimited, &Sequential).unwrap();
        assert_eq!(r2.d, Some(2), "{r2:?}");
    }
}
