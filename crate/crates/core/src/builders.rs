//! Diagram constructors: Gauss codes, Reidemeister I and II insertions and
//! the code families (torus links, iterated Hopf, tree unlinks, branched
//! unknots) together with the move-pair fixtures.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

/// One pass through a crossing in a Gauss code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

pub fn visit(crossing: usize, over: bool) -> Visit {
    Visit { crossing, over }
}

/// Builds a diagram from cyclic visit sequences (one per component) and
/// crossing signs. Arc `t` of a component runs from visit `t` to visit
/// `t + 1`; an empty component is a free loop.
pub fn from_gauss(name: &str, components: &[Vec<Visit>], signs: &[i8]) -> Result<LinkDiagram> {
    let mut slots: Vec<[Option<u32>; 4]> = vec![[None; 4]; signs.len()];
    let mut next = 0u32;
    let mut free = Vec::new();
    for comp in components {
        if comp.is_empty() {
            free.push(next);
            next += 1;
            continue;
        }
        let base = next;
        let len = comp.len() as u32;
        next += len;
        for (t, v) in comp.iter().enumerate() {
            let t = t as u32;
            let arc_in = base + (t + len - 1) % len;
            let arc_out = base + t;
            let s = slots
                .get_mut(v.crossing)
                .ok_or_else(|| Error::MalformedDiagram(format!("crossing {} has no sign", v.crossing)))?;
            let (i, o) = if v.over { (1, 3) } else { (0, 2) };
            if s[i].is_some() {
                return Err(Error::MalformedDiagram(format!("crossing {} visited twice on one level", v.crossing)));
            }
            s[i] = Some(arc_in);
            s[o] = Some(arc_out);
        }
    }
    let crossings = slots
        .iter()
        .zip(signs)
        .enumerate()
        .map(|(k, (s, &sign))| match s {
            [Some(ui), Some(oi), Some(uo), Some(oo)] => Ok(Crossing {
                under_in: *ui,
                over_in: *oi,
                under_out: *uo,
                over_out: *oo,
                sign,
            }),
            _ => Err(Error::MalformedDiagram(format!("crossing {k} not visited twice"))),
        })
        .collect::<Result<Vec<_>>>()?;
    LinkDiagram::assemble(name, crossings, free, None, None)
}

pub fn unknot() -> LinkDiagram {
    from_gauss("unknot", &[vec![]], &[]).unwrap()
}

pub fn pointed_unknot() -> LinkDiagram {
    unknot().with_basepoint(0).unwrap().with_name("pointed unknot")
}

/// Unlink of `c` crossingless components.
pub fn unlink(c: usize) -> LinkDiagram {
    from_gauss(&format!("{c}-component unlink"), &vec![vec![]; c], &[]).unwrap()
}

struct Parts {
    crossings: Vec<Crossing>,
    free: Vec<u32>,
    next: u32,
}

impl Parts {
    fn of(d: &LinkDiagram) -> Self {
        Parts { crossings: d.crossings.clone(), free: d.free_loops.clone(), next: d.num_arcs }
    }

    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next - 1
    }

    /// Cuts arc `a` twice: returns `(first_in, first_out, second_in, second_out)`
    /// for the two new crossings met along `a`.
    fn cut(&mut self, a: u32) -> (u32, u32, u32, u32) {
        let mid = self.fresh();
        if let Some(pos) = self.free.iter().position(|&x| x == a) {
            self.free.remove(pos);
            return (a, mid, mid, a);
        }
        let end = self.fresh();
        for c in self.crossings.iter_mut() {
            if c.under_in == a {
                c.under_in = end;
            }
            if c.over_in == a {
                c.over_in = end;
            }
        }
        (a, mid, mid, end)
    }
}

/// Adds a Reidemeister I kink of sign `sign` on arc `a`. `first_over`
/// picks which pass of the loop is the overstrand.
pub fn kink(d: &LinkDiagram, a: u32, sign: i8, first_over: bool) -> Result<LinkDiagram> {
    if a >= d.num_arcs {
        return Err(Error::UnknownArc(a));
    }
    let mut p = Parts::of(d);
    let (i1, o1, i2, o2) = p.cut(a);
    let c = if first_over {
        Crossing { over_in: i1, over_out: o1, under_in: i2, under_out: o2, sign }
    } else {
        Crossing { under_in: i1, under_out: o1, over_in: i2, over_out: o2, sign }
    };
    p.crossings.push(c);
    let name = format!("{} + RI{}", d.name, if sign > 0 { "+" } else { "-" });
    LinkDiagram::assemble(&name, p.crossings, p.free, d.basepoint, None)
}

/// Reidemeister II: pushes arc `a` across arc `b`, creating crossings X then
/// Y along `a`. `b` meets them in the same order when `parallel`. `a_over`
/// selects which strand lies on top.
pub fn rii(d: &LinkDiagram, a: u32, b: u32, parallel: bool, a_over: bool) -> Result<LinkDiagram> {
    for x in [a, b] {
        if x >= d.num_arcs {
            return Err(Error::UnknownArc(x));
        }
    }
    if a == b {
        return Err(Error::Unsupported("RII of an arc with itself".into()));
    }
    let mut p = Parts::of(d);
    let (ax_in, ax_out, ay_in, ay_out) = p.cut(a);
    let (b1_in, b1_out, b2_in, b2_out) = p.cut(b);
    let ((bx_in, bx_out), (by_in, by_out)) =
        if parallel { ((b1_in, b1_out), (b2_in, b2_out)) } else { ((b2_in, b2_out), (b1_in, b1_out)) };
    let (sx, sy): (i8, i8) = if parallel { (1, -1) } else { (-1, 1) };
    let (sx, sy) = if a_over { (sx, sy) } else { (-sx, -sy) };
    let make = |ai, ao, bi, bo, s| {
        if a_over {
            Crossing { over_in: ai, over_out: ao, under_in: bi, under_out: bo, sign: s }
        } else {
            Crossing { under_in: ai, under_out: ao, over_in: bi, over_out: bo, sign: s }
        }
    };
    p.crossings.push(make(ax_in, ax_out, bx_in, bx_out, sx));
    p.crossings.push(make(ay_in, ay_out, by_in, by_out, sy));
    let name = format!("{} + RII", d.name);
    LinkDiagram::assemble(&name, p.crossings, p.free, d.basepoint, None)
}

/// Closure of `s1^ℓ` in B2: the (2, ℓ) torus link, pointed on arc 0.
pub fn torus_2(l: usize) -> LinkDiagram {
    let word = vec!["s1"; l].join(" ");
    LinkDiagram::from_braid(&word, 2).unwrap().with_basepoint(0).unwrap().with_name(&format!("T(2,{l})"))
}

pub fn pointed_hopf() -> LinkDiagram {
    torus_2(2).with_name("pointed Hopf")
}

pub fn pointed_trefoil() -> LinkDiagram {
    torus_2(3).with_name("pointed trefoil")
}

/// Connect sum of two pointed diagrams at their basepoints.
pub fn pointed_sum(a: &LinkDiagram, b: &LinkDiagram) -> Result<LinkDiagram> {
    let pa = a.basepoint.ok_or(Error::NoBasepoint)?;
    let pb = b.basepoint.ok_or(Error::NoBasepoint)?;
    a.connect_sum(pa, b, pb)
}

/// `m` pointed Hopf links summed at their basepoints.
pub fn iterated_hopf(m: usize) -> LinkDiagram {
    let mut d = pointed_unknot();
    for _ in 0..m {
        d = pointed_sum(&d, &pointed_hopf()).unwrap();
    }
    d.with_name(&format!("#{m} Hopf"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeShape {
    Path,
    Star,
}

/// `ℓ + 1` unknots joined into one component by `ℓ` RII moves along a tree.
pub fn tree_unlink(l: usize, shape: TreeShape) -> LinkDiagram {
    let mut d = unlink(l + 1);
    // the long arc of unknot i keeps id i: cutting only appends fresh ids
    for child in 1..=l {
        let parent = match shape {
            TreeShape::Path => child - 1,
            TreeShape::Star => 0,
        };
        d = rii(&d, parent as u32, child as u32, false, true).unwrap();
    }
    d.with_name(&format!("tree unlink ℓ={l} ({shape:?})"))
}

/// Pointed unknot with `m` positive and `m` negative kinks.
pub fn branched_unknot(b: usize, l: usize) -> LinkDiagram {
    let m = b * l;
    let mut d = pointed_unknot();
    for s in [1i8, -1] {
        for _ in 0..m {
            let a = d.num_arcs - 1;
            d = kink(&d, a, s, true).unwrap();
        }
    }
    d.with_name(&format!("branched unknot b={b} ℓ={l}"))
}

/// The three diagrams of the RII/RIII counterexample chain, with the two
/// sign orders of the RII pair in the middle diagram.
pub fn rii_rii_chain() -> Vec<LinkDiagram> {
    let top = from_gauss("RI kink", &[vec![visit(0, true), visit(0, false)]], &[1]).unwrap();
    let mid = |sb: i8| {
        from_gauss(
            &format!("kink with RII pair ({})", if sb > 0 { "+-" } else { "-+" }),
            &[vec![visit(1, true), visit(2, true), visit(0, true), visit(1, false), visit(2, false), visit(0, false)]],
            &[1, sb, -sb],
        )
        .unwrap()
    };
    let bottom = |sd: i8| {
        from_gauss(
            &format!("kink around two kinks ({})", if sd > 0 { "+-" } else { "-+" }),
            &[vec![visit(0, true), visit(1, true), visit(1, false), visit(2, true), visit(2, false), visit(0, false)]],
            &[1, sd, -sd],
        )
        .unwrap()
    };
    vec![top, mid(1), mid(-1), bottom(1), bottom(-1)]
}

/// Braid words of the RIII pair in B3 and their published code distances.
pub const RIII_BRAIDS: [(&str, usize); 2] = [("s2^-1 s1^-1 s2 s2", 2), ("s1 s2^-1 s1^-1 s2", 4)];

/// Named desk-scale diagrams used across the checks.
pub fn corpus() -> BTreeMap<String, LinkDiagram> {
    let mut m = BTreeMap::new();
    let mut put = |d: LinkDiagram| {
        m.insert(d.name.clone(), d);
    };
    put(pointed_unknot());
    put(kink(&pointed_unknot(), 0, 1, true).unwrap().with_name("unknot with positive kink"));
    put(kink(&pointed_unknot(), 0, -1, true).unwrap().with_name("unknot with negative kink"));
    put(branched_unknot(1, 1).with_name("unknot with two kinks"));
    put(pointed_hopf());
    put(pointed_hopf().mirror().with_name("pointed mirror Hopf"));
    put(pointed_trefoil());
    put(torus_2(4));
    put(torus_2(5));
    for (w, _) in RIII_BRAIDS {
        put(LinkDiagram::from_braid(w, 3).unwrap().with_basepoint(0).unwrap());
    }
    put(LinkDiagram::from_braid("s1 s2^-1 s1 s2^-1", 3).unwrap().with_basepoint(0).unwrap().with_name("figure eight"));
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::build_complex;

    fn hom(d: &LinkDiagram) -> Vec<usize> {
        build_complex(d, false).unwrap().homology_dims().into_values().filter(|&x| x > 0).collect()
    }

    #[test]
    fn gauss_hopf_matches_braid() {
        let g = from_gauss(
            "hopf",
            &[vec![visit(0, true), visit(1, false)], vec![visit(0, false), visit(1, true)]],
            &[1, 1],
        )
        .unwrap();
        assert_eq!(hom(&g), hom(&LinkDiagram::from_braid("s1 s1", 2).unwrap()));
    }

    #[test]
    fn kinks_preserve_homology() {
        let u = unknot();
        for s in [1, -1] {
            for first in [true, false] {
                let k = kink(&u, 0, s, first).unwrap();
                assert_eq!(hom(&k), alloc::vec![2], "sign {s} first_over {first}");
            }
        }
        let t = pointed_trefoil();
        let kt = kink(&t, 2, -1, false).unwrap();
        assert_eq!(hom(&kt), hom(&t));
    }

    #[test]
    fn rii_preserves_homology() {
        let base = unlink(2);
        for parallel in [true, false] {
            for over in [true, false] {
                let d = rii(&base, 0, 1, parallel, over).unwrap();
                assert_eq!(d.components().len(), 2);
                assert_eq!(hom(&d), alloc::vec![4], "parallel {parallel} over {over}");
            }
        }
        let h = pointed_hopf().disjoint_union(&unknot());
        for a in 0..4 {
            for parallel in [true, false] {
                let d = rii(&h, a, 4, parallel, true).unwrap();
                assert_eq!(hom(&d), hom(&h));
            }
        }
    }

    #[test]
    fn family_sizes() {
        assert_eq!(iterated_hopf(2).n(), 4);
        assert_eq!(tree_unlink(3, TreeShape::Star).n(), 6);
        assert_eq!(tree_unlink(3, TreeShape::Path).components().len(), 4);
        let b = branched_unknot(1, 2);
        assert_eq!((b.n_plus(), b.n_minus(), b.components().len()), (2, 2, 1));
    }

    #[test]
    fn chain_is_an_unknot() {
        for d in rii_rii_chain() {
            assert_eq!(hom(&d), alloc::vec![2], "{}", d.name);
        }
    }

    #[test]
    fn corpus_is_valid() {
        let c = corpus();
        assert!(c.len() >= 10);
        for d in c.values() {
            assert!(d.basepoint.is_some());
            assert!(d.n() <= 7);
            build_complex(d, true).unwrap();
        }
    }
}
