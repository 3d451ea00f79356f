//! Khovanov complexes over GF(2) in the ± basis, reduced and unreduced.
//!
//! A state at a vertex is a bit code over its circles (bit `c` is circle
//! `c`, 0 = ⊖, 1 = ⊕). In the reduced complex circle 0 is the marked circle
//! and its bit is always 0, standing for X.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::complex::{BasisElement, ChainComplex, ChainMap, Label};
use crate::diagram::{CubeEdge, EdgeKind, LinkDiagram, Resolution};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linear::GFMatrix;

/// m(ε, η) = sign(−εη).
pub fn multiply_labels(a: Label, b: Label) -> Label {
    match (a, b) {
        (Label::Minus, Label::Minus) | (Label::Plus, Label::Plus) => Label::Minus,
        (Label::Minus, Label::Plus) | (Label::Plus, Label::Minus) => Label::Plus,
        (Label::X, _) | (_, Label::X) => Label::X,
        _ => panic!("multiply_labels on {a:?}, {b:?}"),
    }
}

/// Δ(ε) = ⊖⊗(−ε) + ⊕⊗ε.
pub fn comultiply_label(e: Label) -> [(Label, Label); 2] {
    let neg = |l| if l == Label::Minus { Label::Plus } else { Label::Minus };
    match e {
        Label::Minus | Label::Plus => [(Label::Minus, neg(e)), (Label::Plus, e)],
        _ => panic!("comultiply_label on {e:?}"),
    }
}

/// Images of one state along one cube edge, as target codes.
pub type EdgeFn<'a> = dyn Fn(&CubeEdge, &Resolution, &Resolution, &[Option<usize>], u32, &mut Vec<(u32, u8)>) + 'a;

/// Bits of the untouched circles moved to their target positions.
pub fn carry_bits(carried: &[Option<usize>], code: u32) -> u32 {
    let mut out = 0;
    for (i, t) in carried.iter().enumerate() {
        if let Some(j) = t {
            out |= ((code >> i) & 1) << j;
        }
    }
    out
}

fn khovanov_edge(reduced: bool) -> impl Fn(&CubeEdge, &Resolution, &Resolution, &[Option<usize>], u32, &mut Vec<(u32, u8)>) {
    move |e, _, _, carried, code, out| {
        let base = carry_bits(carried, code);
        let bit = |c: usize| (code >> c) & 1;
        match e.kind {
            EdgeKind::Merge { a, b, into } => {
                if reduced && (a == 0 || b == 0) {
                    out.push((base, 1));
                } else {
                    out.push((base | (bit(a) ^ bit(b)) << into, 1));
                }
            }
            EdgeKind::Split { from, a, b } => {
                if reduced && from == 0 {
                    let other = if a == 0 { b } else { a };
                    out.push((base, 1));
                    out.push((base | 1 << other, 1));
                } else {
                    let e = bit(from);
                    for x in 0..2u32 {
                        out.push((base | x << a | (x ^ 1 ^ e) << b, 1));
                    }
                }
            }
        }
    }
}

/// Generic cube-of-resolutions builder over `field` with ε = +1 and cube
/// signs `(-1)^{#1s before the changed crossing}` (trivial over GF(2)).
///
/// Raw degree is `|u| - shift`. Only groups with raw degree in `lo..=hi`
/// are built.
#[allow(clippy::too_many_arguments)]
pub fn cube_complex(
    d: &LinkDiagram,
    field: Field,
    shift: i32,
    lo: i32,
    hi: i32,
    states: &dyn Fn(&Resolution) -> Vec<u32>,
    labels: &dyn Fn(&Resolution, u32) -> Vec<Label>,
    edge: &EdgeFn<'_>,
    provenance: String,
) -> Result<ChainComplex> {
    let n = d.n();
    if n > 30 {
        return Err(Error::Unsupported(format!("{n} crossings")));
    }
    let lo = lo.max(-shift);
    let hi = hi.min(n as i32 - shift);
    if lo > hi {
        let c = ChainComplex::new(field, 1, lo, vec![Vec::new()], vec![GFMatrix::zeros(field, 0, 0)], provenance)?;
        return Ok(c.with_shift(shift));
    }
    let mut vertices: Vec<Vec<u64>> = vec![Vec::new(); (hi - lo + 1) as usize];
    for u in 0..1u64 << n {
        let p = u.count_ones() as i32 - shift;
        if (lo..=hi).contains(&p) {
            vertices[(p - lo) as usize].push(u);
        }
    }
    let mut res: HashMap<u64, Resolution> = HashMap::new();
    let mut codes: HashMap<u64, Vec<u32>> = HashMap::new();
    let mut offset: HashMap<u64, u32> = HashMap::new();
    let mut groups = Vec::new();
    for layer in &vertices {
        let mut g = Vec::new();
        for &u in layer {
            let r = d.resolve(u);
            let s = states(&r);
            offset.insert(u, g.len() as u32);
            for &c in &s {
                g.push(BasisElement { vertex: u, labels: labels(&r, c) });
            }
            codes.insert(u, s);
            res.insert(u, r);
        }
        groups.push(g);
    }
    let mut differentials = Vec::new();
    let mut buf = Vec::new();
    for (j, layer) in vertices.iter().enumerate() {
        let rows = groups.get(j + 1).map_or(0, |g| g.len());
        let cols = groups[j].len();
        let mut m = GFMatrix::zeros(field, rows, cols);
        if j + 1 < vertices.len() {
            for &u in layer {
                let ru = &res[&u];
                let cu = &codes[&u];
                let ou = offset[&u] as usize;
                for k in 0..n {
                    if (u >> k) & 1 == 1 {
                        continue;
                    }
                    let v = u | 1 << k;
                    let rv = &res[&v];
                    let cv = &codes[&v];
                    let ov = offset[&v];
                    let e = d.edge(ru, rv, k)?;
                    let carried = e.carried(ru, rv);
                    let sign_neg = (u & ((1u64 << k) - 1)).count_ones() % 2 == 1;
                    for (t, &code) in cu.iter().enumerate() {
                        buf.clear();
                        edge(&e, ru, rv, &carried, code, &mut buf);
                        let col = &mut m.columns[ou + t];
                        for &(target, coeff) in buf.iter() {
                            if let Ok(p) = cv.binary_search(&target) {
                                let c = if sign_neg { field.neg(coeff) } else { coeff };
                                col.push((ov + p as u32, c));
                            }
                        }
                    }
                }
            }
            for col in m.columns.iter_mut() {
                crate::linear::normalize_column(field, col);
            }
        }
        differentials.push(m);
    }
    let mut c = ChainComplex::new(field, 1, lo, groups, differentials, provenance)?;
    let bottom = -shift;
    let top = n as i32 - shift;
    c.valid = (if lo == bottom { lo } else { lo + 1 }, if hi == top { hi } else { hi - 1 });
    c.check_d2()?;
    Ok(c.with_shift(shift))
}

fn label_bits(r: &Resolution, code: u32, reduced: bool) -> Vec<Label> {
    (0..r.num_circles)
        .map(|c| {
            if reduced && c == 0 {
                Label::X
            } else if (code >> c) & 1 == 1 {
                Label::Plus
            } else {
                Label::Minus
            }
        })
        .collect()
}

fn khovanov_states(r: &Resolution, reduced: bool) -> Vec<u32> {
    assert!(r.num_circles < 32);
    if reduced {
        (0..1u32 << (r.num_circles - 1)).map(|x| x << 1).collect()
    } else {
        (0..1u32 << r.num_circles).collect()
    }
}

/// Full complex `C(D)` (or `C(D•)` when `reduced`).
pub fn build_complex(d: &LinkDiagram, reduced: bool) -> Result<ChainComplex> {
    build_window(d, reduced, i32::MIN / 2, i32::MAX / 2)
}

/// Groups of raw degree `lo..=hi` only; homology is exact on `lo+1..=hi-1`
/// (and at the ends of the cube).
pub fn build_window(d: &LinkDiagram, reduced: bool, lo: i32, hi: i32) -> Result<ChainComplex> {
    if reduced && d.basepoint.is_none() {
        return Err(Error::NoBasepoint);
    }
    let edge = khovanov_edge(reduced);
    let prov = format!("{}C({})", if reduced { "reduced " } else { "" }, d.name);
    cube_complex(
        d,
        Field::GF2,
        d.n_minus() as i32,
        lo,
        hi,
        &|r| khovanov_states(r, reduced),
        &|r, c| label_bits(r, c, reduced),
        &edge,
        prov,
    )
}

/// Number of merges on any monotone path from the zero vertex to `v`, mod 2.
pub fn merge_parity(r0: usize, rv: &Resolution) -> u32 {
    let m = (rv.vertex.count_ones() as i64 + r0 as i64 - rv.num_circles as i64) / 2;
    (m.rem_euclid(2)) as u32
}

/// The isomorphism `R = (r, σr) : C(D•) ⊕ C(D•) → C(D)`. Returns the domain,
/// the codomain and the map.
pub fn reduction_iso(d: &LinkDiagram) -> Result<(ChainComplex, ChainComplex, ChainMap)> {
    let red = build_complex(d, true)?;
    let unred = build_complex(d, false)?;
    let dom = red.direct_sum(&red)?;
    let c0 = d.resolve(0).num_circles;
    let mut blocks = BTreeMap::new();
    for i in unred.degrees() {
        let target = unred.group(i);
        let index: HashMap<&BasisElement, u32> = target.iter().enumerate().map(|(k, e)| (e, k as u32)).collect();
        let src = dom.group(i);
        let half = red.dim(i);
        let mut m = GFMatrix::zeros(Field::GF2, target.len(), src.len());
        let mut cache: HashMap<u64, u32> = HashMap::new();
        for (k, e) in src.iter().enumerate() {
            let nv = *cache
                .entry(e.vertex)
                .or_insert_with(|| merge_parity(c0, &d.resolve(e.vertex)));
            let minus = e.labels[1..].iter().filter(|&&l| l == Label::Minus).count() as u32;
            let mut plus = (nv + minus) % 2 == 0;
            if k >= half {
                plus = !plus;
            }
            let mut labels = e.labels.clone();
            labels[0] = if plus { Label::Plus } else { Label::Minus };
            let img = BasisElement { vertex: e.vertex, labels };
            let row = *index.get(&img).ok_or_else(|| Error::Mismatch("reduction image missing".into()))?;
            m.columns[k].push((row, 1));
        }
        blocks.insert(i, m);
    }
    Ok((dom, unred, ChainMap { blocks }))
}

/// `C(mirror D)` with degrees negated equals the dual of `C(D)` up to the
/// relabelling ⊖ ↔ ⊕ and the vertex complement. Compares the full matrices.
pub fn mirror_matches_dual(d: &LinkDiagram) -> Result<bool> {
    let c = build_complex(d, false)?;
    let m = build_complex(&d.mirror(), false)?;
    let dual = c.dual().negate_degrees();
    let full = if d.n() == 0 { 0 } else { (1u64 << d.n()) - 1 };
    if m.dims() != dual.dims() {
        return Ok(false);
    }
    for i in m.degrees() {
        // basis of the mirror at i, transported to the dual's basis
        let index: HashMap<&BasisElement, usize> =
            dual.group(i).iter().enumerate().map(|(k, e)| (e, k)).collect();
        let perm: Option<Vec<usize>> = m
            .group(i)
            .iter()
            .map(|e| {
                let labels = e
                    .labels
                    .iter()
                    .map(|&l| if l == Label::Minus { Label::Plus } else { Label::Minus })
                    .collect();
                index.get(&BasisElement { vertex: full ^ e.vertex, labels }).copied()
            })
            .collect();
        let Some(perm) = perm else { return Ok(false) };
        let next = i + 1;
        let inv_next: Vec<usize> = {
            let mut v = vec![0; m.dim(next)];
            let pn: Vec<usize> = m
                .group(next)
                .iter()
                .map(|e| {
                    let labels = e
                        .labels
                        .iter()
                        .map(|&l| if l == Label::Minus { Label::Plus } else { Label::Minus })
                        .collect();
                    index_of(&dual, next, &BasisElement { vertex: full ^ e.vertex, labels })
                })
                .collect::<Option<Vec<_>>>()
                .unwrap_or_default();
            if pn.len() != m.dim(next) {
                return Ok(false);
            }
            for (k, &p) in pn.iter().enumerate() {
                v[p] = k;
            }
            v
        };
        let a = m.diff(i);
        let b = dual.diff(i);
        for (k, &p) in perm.iter().enumerate() {
            let mut col: Vec<u32> = b.columns[p].iter().map(|&(r, _)| inv_next[r as usize] as u32).collect();
            col.sort_unstable();
            let mine: Vec<u32> = a.columns[k].iter().map(|&(r, _)| r).collect();
            if col != mine {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn index_of(c: &ChainComplex, i: i32, e: &BasisElement) -> Option<usize> {
    c.index_of(i, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rank;

    fn hopf(pointed: bool) -> LinkDiagram {
        let d = LinkDiagram::from_braid("s1 s1", 2).unwrap();
        if pointed {
            d.with_basepoint(0).unwrap()
        } else {
            d
        }
    }

    #[test]
    fn label_algebra() {
        use Label::*;
        assert_eq!(multiply_labels(Plus, Minus), Plus);
        assert_eq!(multiply_labels(Plus, Plus), Minus);
        assert_eq!(comultiply_label(Minus), [(Minus, Plus), (Plus, Minus)]);
        assert_eq!(comultiply_label(Plus), [(Minus, Minus), (Plus, Plus)]);
    }

    #[test]
    fn unknot_complex() {
        let u = LinkDiagram::from_braid("", 1).unwrap();
        let c = build_complex(&u, false).unwrap();
        assert_eq!(c.dims(), BTreeMap::from([(0, 2)]));
        assert!(c.diff(0).is_zero());
    }

    #[test]
    fn reduced_hopf() {
        let c = build_complex(&hopf(true), true).unwrap();
        assert_eq!(c.dims().into_values().collect::<Vec<_>>(), vec![2, 2, 2]);
        assert_eq!(c.homology_dims().into_values().collect::<Vec<_>>(), vec![1, 0, 1]);
        assert_eq!(rank(&c.diff(0)), 1);
    }

    #[test]
    fn unreduced_hopf() {
        let c = build_complex(&hopf(false), false).unwrap();
        assert_eq!(c.dims().into_values().collect::<Vec<_>>(), vec![4, 4, 4]);
        for m in &c.differentials {
            assert!(m.columns.iter().all(|c| !c.is_empty()) || m.rows == 0);
        }
    }

    #[test]
    fn reduced_needs_basepoint() {
        assert!(matches!(build_complex(&hopf(false), true), Err(Error::NoBasepoint)));
    }

    #[test]
    fn reduction_iso_on_hopf_and_unknot() {
        for d in [hopf(true), LinkDiagram::from_braid("", 1).unwrap().with_basepoint(0).unwrap()] {
            let (dom, cod, r) = reduction_iso(&d).unwrap();
            assert!(r.commutes(&dom, &cod));
            assert!(r.is_basis_bijection());
        }
    }

    #[test]
    fn reduction_example_labels() {
        // n_v = 0 at the zero vertex: X⊗⊖⊗⊕ ↦ ⊖⊗⊖⊗⊕ and σ gives ⊕⊗⊖⊗⊕
        let d = LinkDiagram::from_braid("", 3).unwrap().with_basepoint(0).unwrap();
        let (dom, cod, r) = reduction_iso(&d).unwrap();
        let src = BasisElement { vertex: 0, labels: vec![Label::X, Label::Minus, Label::Plus] };
        let k = dom.group(0).iter().position(|e| *e == src).unwrap();
        let half = dom.dim(0) / 2;
        let img = |k: usize| cod.group(0)[r.blocks[&0].columns[k][0].0 as usize].clone();
        assert_eq!(img(k).labels, vec![Label::Minus, Label::Minus, Label::Plus]);
        assert_eq!(img(k + half).labels, vec![Label::Plus, Label::Minus, Label::Plus]);
    }

    #[test]
    fn mirror_is_dual() {
        for w in ["s1 s1", "s1 s1 s1", "s1 s2^-1 s1^-1 s2"] {
            let s = if w.contains("s2") { 3 } else { 2 };
            assert!(mirror_matches_dual(&LinkDiagram::from_braid(w, s).unwrap()).unwrap(), "{w}");
        }
    }

    #[test]
    fn windows_agree_with_full() {
        let d = LinkDiagram::from_braid("s1 s2^-1 s1^-1 s2", 3).unwrap().with_basepoint(0).unwrap();
        let full = build_complex(&d, false).unwrap();
        let w = build_window(&d, false, -1, 1).unwrap();
        assert_eq!(w.valid, (0, 0));
        assert_eq!(w.diff(0), full.diff(0));
        assert_eq!(w.diff(-1), full.diff(-1));
        assert_eq!(w.homology_dim(0), full.homology_dim(0));
    }
}
