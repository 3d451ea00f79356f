//! Oriented link diagrams in PD form, braid closures, resolutions and the cube.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub under_in: u32,
    pub over_in: u32,
    pub under_out: u32,
    pub over_out: u32,
    pub sign: i8,
}

impl Crossing {
    pub fn slots(&self) -> [u32; 4] {
        [self.under_in, self.over_in, self.under_out, self.over_out]
    }

    /// Arc pairs joined by the smoothing. The oriented smoothing joins each
    /// incoming end to the outgoing end of the other strand.
    pub fn smoothing(&self, bit: bool) -> [(u32, u32); 2] {
        if self.is_oriented(bit) {
            [(self.under_in, self.over_out), (self.over_in, self.under_out)]
        } else {
            [(self.under_in, self.over_in), (self.under_out, self.over_out)]
        }
    }

    /// Positive crossings take the oriented smoothing at 0, negative ones at 1.
    pub fn is_oriented(&self, bit: bool) -> bool {
        (self.sign > 0) != bit
    }

    pub fn mirrored(&self) -> Crossing {
        Crossing {
            under_in: self.over_in,
            over_in: self.under_in,
            under_out: self.over_out,
            over_out: self.under_out,
            sign: -self.sign,
        }
    }
}

/// Free-loop entry of the JSON document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFreeLoop {
    #[serde(default)]
    pub ray_count: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<u32>,
}

/// The on-disk diagram document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
    #[serde(default)]
    pub free_loops: Vec<RawFreeLoop>,
    #[serde(default)]
    pub basepoint: Option<u32>,
    #[serde(default)]
    pub ray_counts: Option<BTreeMap<u32, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Validated diagram. Arcs are `0..num_arcs`; every crossing arc occurs
/// once as an incoming and once as an outgoing slot; free loops are
/// crossingless components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    pub name: String,
    pub crossings: Vec<Crossing>,
    pub free_loops: Vec<u32>,
    pub num_arcs: u32,
    pub basepoint: Option<u32>,
    pub ray_counts: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    UnderIn,
    OverIn,
    UnderOut,
    OverOut,
}

impl LinkDiagram {
    pub fn from_raw(raw: &RawDiagram) -> Result<LinkDiagram> {
        let max_crossing_arc = raw.crossings.iter().flat_map(|c| c.slots()).max();
        let mut next = max_crossing_arc.map_or(0, |m| m + 1);
        let mut free_ids = Vec::new();
        let mut free_rays = BTreeMap::new();
        for fl in &raw.free_loops {
            let id = match fl.arc {
                Some(a) => a,
                None => {
                    while raw.free_loops.iter().any(|f| f.arc == Some(next)) {
                        next += 1;
                    }
                    next += 1;
                    next - 1
                }
            };
            free_ids.push(id);
            free_rays.insert(id, fl.ray_count);
        }
        let mut ins: BTreeMap<u32, u32> = BTreeMap::new();
        let mut outs: BTreeMap<u32, u32> = BTreeMap::new();
        for (k, c) in raw.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::OrientationError(format!("crossing {k} has sign {}", c.sign)));
            }
            *ins.entry(c.under_in).or_default() += 1;
            *ins.entry(c.over_in).or_default() += 1;
            *outs.entry(c.under_out).or_default() += 1;
            *outs.entry(c.over_out).or_default() += 1;
        }
        let mut ids: Vec<u32> = ins.keys().chain(outs.keys()).copied().collect();
        ids.sort_unstable();
        ids.dedup();
        for &a in &ids {
            let i = ins.get(&a).copied().unwrap_or(0);
            let o = outs.get(&a).copied().unwrap_or(0);
            if i + o != 2 {
                return Err(Error::MalformedDiagram(format!("arc {a} occurs {} times", i + o)));
            }
            if i != 1 {
                return Err(Error::OrientationError(format!(
                    "arc {a} occurs {i} times as incoming and {o} as outgoing"
                )));
            }
        }
        for &f in &free_ids {
            if ins.contains_key(&f) || outs.contains_key(&f) || free_ids.iter().filter(|&&g| g == f).count() > 1 {
                return Err(Error::MalformedDiagram(format!("free loop arc {f} reused")));
            }
        }
        let mut all = ids.clone();
        all.extend_from_slice(&free_ids);
        all.sort_unstable();
        let index = |a: u32| all.binary_search(&a).unwrap() as u32;
        let crossings = raw
            .crossings
            .iter()
            .map(|c| Crossing {
                under_in: index(c.under_in),
                over_in: index(c.over_in),
                under_out: index(c.under_out),
                over_out: index(c.over_out),
                sign: c.sign,
            })
            .collect();
        let free_loops = free_ids.iter().map(|&a| index(a)).collect();
        let basepoint = match raw.basepoint {
            None => None,
            Some(b) => match all.binary_search(&b) {
                Ok(i) => Some(i as u32),
                Err(_) => return Err(Error::UnknownArc(b)),
            },
        };
        let ray_counts = match &raw.ray_counts {
            None => None,
            Some(map) => {
                let mut rc = vec![0u32; all.len()];
                for (k, &a) in all.iter().enumerate() {
                    if let Some(&r) = free_rays.get(&a) {
                        rc[k] = r;
                    } else if let Some(&r) = map.get(&a) {
                        rc[k] = r;
                    } else {
                        return Err(Error::MalformedDiagram(format!("ray_counts misses arc {a}")));
                    }
                }
                for a in map.keys() {
                    if all.binary_search(a).is_err() {
                        return Err(Error::UnknownArc(*a));
                    }
                }
                Some(rc)
            }
        };
        Ok(LinkDiagram {
            name: raw.name.clone(),
            crossings,
            free_loops,
            num_arcs: all.len() as u32,
            basepoint,
            ray_counts,
        })
    }

    pub fn to_raw(&self) -> RawDiagram {
        let free: Vec<RawFreeLoop> = self
            .free_loops
            .iter()
            .map(|&a| RawFreeLoop {
                ray_count: self.ray_counts.as_ref().map_or(0, |r| r[a as usize]),
                arc: Some(a),
            })
            .collect();
        let ray_counts = self.ray_counts.as_ref().map(|r| {
            (0..self.num_arcs)
                .filter(|a| !self.free_loops.contains(a))
                .map(|a| (a, r[a as usize]))
                .collect()
        });
        RawDiagram {
            name: self.name.clone(),
            crossings: self.crossings.clone(),
            free_loops: free,
            basepoint: self.basepoint,
            ray_counts,
            provenance: None,
        }
    }

    /// Rebuilds from crossings over arbitrary ids, compacting arcs in order.
    pub fn assemble(
        name: &str,
        crossings: Vec<Crossing>,
        free_loops: Vec<u32>,
        basepoint: Option<u32>,
        ray_counts: Option<BTreeMap<u32, u32>>,
    ) -> Result<LinkDiagram> {
        let mut rc = ray_counts;
        let mut loops = Vec::new();
        for a in free_loops {
            let r = rc.as_mut().and_then(|m| m.remove(&a)).unwrap_or(0);
            loops.push(RawFreeLoop { ray_count: r, arc: Some(a) });
        }
        LinkDiagram::from_raw(&RawDiagram {
            name: name.to_string(),
            crossings,
            free_loops: loops,
            basepoint,
            ray_counts: rc,
            provenance: None,
        })
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign < 0).count()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_basepoint(mut self, arc: u32) -> Result<Self> {
        if arc >= self.num_arcs {
            return Err(Error::UnknownArc(arc));
        }
        self.basepoint = Some(arc);
        Ok(self)
    }

    /// Crossing and slot where each arc ends (`None` for free loops).
    pub fn heads(&self) -> Vec<Option<(usize, Slot)>> {
        let mut h = vec![None; self.num_arcs as usize];
        for (k, c) in self.crossings.iter().enumerate() {
            h[c.under_in as usize] = Some((k, Slot::UnderIn));
            h[c.over_in as usize] = Some((k, Slot::OverIn));
        }
        h
    }

    /// Crossing and slot where each arc starts (`None` for free loops).
    pub fn tails(&self) -> Vec<Option<(usize, Slot)>> {
        let mut t = vec![None; self.num_arcs as usize];
        for (k, c) in self.crossings.iter().enumerate() {
            t[c.under_out as usize] = Some((k, Slot::UnderOut));
            t[c.over_out as usize] = Some((k, Slot::OverOut));
        }
        t
    }

    /// Components as cyclic arc sequences, each starting at its smallest arc.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let heads = self.heads();
        let mut seen = vec![false; self.num_arcs as usize];
        let mut comps = Vec::new();
        for start in 0..self.num_arcs {
            if seen[start as usize] {
                continue;
            }
            let mut comp = Vec::new();
            let mut a = start;
            loop {
                seen[a as usize] = true;
                comp.push(a);
                a = match heads[a as usize] {
                    None => break,
                    Some((k, Slot::UnderIn)) => self.crossings[k].under_out,
                    Some((k, _)) => self.crossings[k].over_out,
                };
                if a == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram {
            name: format!("mirror({})", self.name),
            crossings: self.crossings.iter().map(|c| c.mirrored()).collect(),
            ..self.clone()
        }
    }

    fn relabel(&self, offset: u32) -> LinkDiagram {
        let s = |a: u32| a + offset;
        LinkDiagram {
            name: self.name.clone(),
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing {
                    under_in: s(c.under_in),
                    over_in: s(c.over_in),
                    under_out: s(c.under_out),
                    over_out: s(c.over_out),
                    sign: c.sign,
                })
                .collect(),
            free_loops: self.free_loops.iter().map(|&a| s(a)).collect(),
            num_arcs: self.num_arcs,
            basepoint: self.basepoint.map(s),
            ray_counts: self.ray_counts.clone(),
        }
    }

    fn ray_map(&self, offset: u32) -> Option<BTreeMap<u32, u32>> {
        self.ray_counts
            .as_ref()
            .map(|r| r.iter().enumerate().map(|(a, &x)| (a as u32 + offset, x)).collect())
    }

    /// Places `other` beside `self`; `other`'s arcs are shifted past ours.
    /// The basepoint of `self` survives, else the one of `other`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let b = other.relabel(self.num_arcs);
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&b.crossings);
        let mut free_loops = self.free_loops.clone();
        free_loops.extend_from_slice(&b.free_loops);
        let ray_counts = match (self.ray_map(0), other.ray_map(self.num_arcs)) {
            (Some(mut x), Some(y)) => {
                x.extend(y);
                Some(x)
            }
            _ => None,
        };
        LinkDiagram::assemble(
            &format!("{} ⊔ {}", self.name, other.name),
            crossings,
            free_loops,
            self.basepoint.or(b.basepoint),
            ray_counts,
        )
        .expect("disjoint union of valid diagrams is valid")
    }

    /// Cuts arc `a1` of `self` and `a2` of `other` and splices the ends so that
    /// `a1` now runs into the crossing `a2` used to enter, and vice versa.
    pub fn connect_sum(&self, a1: u32, other: &LinkDiagram, a2: u32) -> Result<LinkDiagram> {
        if a1 >= self.num_arcs {
            return Err(Error::UnknownArc(a1));
        }
        if a2 >= other.num_arcs {
            return Err(Error::UnknownArc(a2));
        }
        let b = other.relabel(self.num_arcs);
        let a2 = a2 + self.num_arcs;
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&b.crossings);
        let mut free_loops: Vec<u32> = self.free_loops.clone();
        free_loops.extend_from_slice(&b.free_loops);
        let f1 = free_loops.contains(&a1);
        let f2 = free_loops.contains(&a2);
        let mut basepoint = self.basepoint.or(b.basepoint);
        match (f1, f2) {
            (true, _) => {
                free_loops.retain(|&x| x != a1);
                if basepoint == Some(a1) {
                    basepoint = Some(a2);
                }
            }
            (false, true) => {
                free_loops.retain(|&x| x != a2);
                if basepoint == Some(a2) {
                    basepoint = Some(a1);
                }
            }
            (false, false) => {
                // swap the heads of a1 and a2
                for c in crossings.iter_mut() {
                    for slot in [&mut c.under_in, &mut c.over_in] {
                        if *slot == a1 {
                            *slot = a2;
                        } else if *slot == a2 {
                            *slot = a1;
                        }
                    }
                }
            }
        }
        LinkDiagram::assemble(&format!("{} # {}", self.name, other.name), crossings, free_loops, basepoint, None)
    }

    /// Standard closure of a braid word with strands oriented downwards.
    /// `s_i` crosses positions `i` and `i+1` positively, `s_i^-1` negatively.
    pub fn from_braid(word: &str, strands: usize) -> Result<LinkDiagram> {
        if strands == 0 {
            return Err(Error::BadBraidWord("zero strands".to_string()));
        }
        let mut gens = Vec::new();
        for tok in word.split_whitespace() {
            let (body, positive) = match tok.strip_suffix("^-1") {
                Some(b) => (b, false),
                None => (tok, true),
            };
            let idx: usize = body
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::BadBraidWord(format!("bad token {tok:?}")))?;
            if idx == 0 || idx >= strands {
                return Err(Error::BadBraidWord(format!("generator {tok} out of range for {strands} strands")));
            }
            gens.push((idx - 1, positive));
        }
        let mut cur: Vec<u32> = (0..strands as u32).collect();
        let mut next = strands as u32;
        let mut crossings = Vec::new();
        for &(a, positive) in &gens {
            let (in_l, in_r) = (cur[a], cur[a + 1]);
            let (out_l, out_r) = (next, next + 1);
            next += 2;
            let c = if positive {
                Crossing { under_in: in_l, over_in: in_r, under_out: out_r, over_out: out_l, sign: 1 }
            } else {
                Crossing { under_in: in_r, over_in: in_l, under_out: out_l, over_out: out_r, sign: -1 }
            };
            crossings.push(c);
            cur[a] = out_l;
            cur[a + 1] = out_r;
        }
        let mut free_loops = Vec::new();
        for (p, &last) in cur.iter().enumerate() {
            if last == p as u32 {
                free_loops.push(last);
                continue;
            }
            for c in crossings.iter_mut() {
                if c.under_out == last {
                    c.under_out = p as u32;
                }
                if c.over_out == last {
                    c.over_out = p as u32;
                }
            }
        }
        let name = if word.trim().is_empty() {
            format!("closure of identity in B{strands}")
        } else {
            format!("closure of {} in B{strands}", word.trim())
        };
        LinkDiagram::assemble(&name, crossings, free_loops, None, None)
    }

    pub fn resolve(&self, u: u64) -> Resolution {
        let n = self.num_arcs as usize;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for (k, c) in self.crossings.iter().enumerate() {
            for (x, y) in c.smoothing((u >> k) & 1 == 1) {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                    parent[hi as usize] = lo;
                }
            }
        }
        // roots are the minimal arcs of their classes
        let mut roots: Vec<u32> = (0..n as u32).filter(|&a| find(&mut parent, a) == a).collect();
        let marked_root = self.basepoint.map(|b| find(&mut parent, b));
        if let Some(m) = marked_root {
            roots.retain(|&r| r != m);
            roots.insert(0, m);
        }
        let mut index = vec![0u16; n];
        for (i, &r) in roots.iter().enumerate() {
            index[r as usize] = i as u16;
        }
        let circle_of_arc: Vec<u16> = (0..n as u32).map(|a| index[find(&mut parent, a) as usize]).collect();
        let essential = self.ray_counts.as_ref().map(|rc| {
            let mut par = vec![0u32; roots.len()];
            for a in 0..n {
                par[circle_of_arc[a] as usize] += rc[a];
            }
            par.iter().map(|p| p % 2 == 1).collect()
        });
        Resolution {
            vertex: u,
            circle_of_arc,
            num_circles: roots.len(),
            marked: marked_root.map(|_| 0),
            essential,
        }
    }

    /// All `n·2^{n-1}` edges of the cube, ordered by source vertex then crossing.
    pub fn cube_edges(&self) -> Result<Vec<CubeEdge>> {
        let n = self.n();
        assert!(n < 32, "cube too large");
        let res: Vec<Resolution> = (0..1u64 << n).map(|u| self.resolve(u)).collect();
        let mut edges = Vec::with_capacity(n << n.saturating_sub(1));
        for u in 0..1u64 << n {
            for k in 0..n {
                if (u >> k) & 1 == 0 {
                    edges.push(self.edge(&res[u as usize], &res[(u | 1 << k) as usize], k)?);
                }
            }
        }
        Ok(edges)
    }

    pub fn edge(&self, from: &Resolution, to: &Resolution, k: usize) -> Result<CubeEdge> {
        let c = &self.crossings[k];
        let mut src: Vec<u16> = c.slots().iter().map(|&a| from.circle_of_arc[a as usize]).collect();
        let mut dst: Vec<u16> = c.slots().iter().map(|&a| to.circle_of_arc[a as usize]).collect();
        src.sort_unstable();
        src.dedup();
        dst.sort_unstable();
        dst.dedup();
        let kind = match (src.len(), dst.len()) {
            (2, 1) => EdgeKind::Merge { a: src[0] as usize, b: src[1] as usize, into: dst[0] as usize },
            (1, 2) => EdgeKind::Split { from: src[0] as usize, a: dst[0] as usize, b: dst[1] as usize },
            _ => return Err(Error::NonPlanar { crossing: k }),
        };
        Ok(CubeEdge { from: from.vertex, to: to.vertex, crossing: k, kind })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub vertex: u64,
    /// Circle index of every arc. Circle 0 is the marked one when a
    /// basepoint exists; the rest are ordered by smallest arc.
    pub circle_of_arc: Vec<u16>,
    pub num_circles: usize,
    pub marked: Option<usize>,
    pub essential: Option<Vec<bool>>,
}

impl Resolution {
    /// Arc sets of the circles, in circle order.
    pub fn circles(&self) -> Vec<Vec<u32>> {
        let mut c = vec![Vec::new(); self.num_circles];
        for (a, &i) in self.circle_of_arc.iter().enumerate() {
            c[i as usize].push(a as u32);
        }
        c
    }

    /// Smallest arc of each circle.
    pub fn representatives(&self) -> Vec<u32> {
        let mut r = vec![u32::MAX; self.num_circles];
        for (a, &i) in self.circle_of_arc.iter().enumerate() {
            r[i as usize] = r[i as usize].min(a as u32);
        }
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Merge { a: usize, b: usize, into: usize },
    Split { from: usize, a: usize, b: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeEdge {
    pub from: u64,
    pub to: u64,
    pub crossing: usize,
    pub kind: EdgeKind,
}

impl CubeEdge {
    /// Target circle index of every source circle not touched by the saddle.
    pub fn carried(&self, from: &Resolution, to: &Resolution) -> Vec<Option<usize>> {
        let reps = from.representatives();
        let touched: [usize; 2] = match self.kind {
            EdgeKind::Merge { a, b, .. } => [a, b],
            EdgeKind::Split { from, .. } => [from, from],
        };
        reps.iter()
            .enumerate()
            .map(|(i, &r)| (!touched.contains(&i)).then(|| to.circle_of_arc[r as usize] as usize))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> LinkDiagram {
        LinkDiagram::from_braid("s1 s1", 2).unwrap()
    }

    #[test]
    fn hopf_from_braid() {
        let h = hopf();
        assert_eq!((h.n_plus(), h.n_minus()), (2, 0));
        assert_eq!(h.components().len(), 2);
        assert_eq!(h.num_arcs, 4);
    }

    #[test]
    fn hopf_resolutions() {
        let h = hopf();
        assert_eq!(h.resolve(0b00).num_circles, 2);
        assert_eq!(h.resolve(0b01).num_circles, 1);
        assert_eq!(h.resolve(0b10).num_circles, 1);
        assert_eq!(h.resolve(0b11).num_circles, 2);
    }

    #[test]
    fn hopf_cube_edges() {
        let e = hopf().cube_edges().unwrap();
        assert_eq!(e.len(), 4);
        let kinds: Vec<(u64, u64, bool)> =
            e.iter().map(|e| (e.from, e.to, matches!(e.kind, EdgeKind::Merge { .. }))).collect();
        assert_eq!(kinds, alloc::vec![(0, 1, true), (0, 2, true), (1, 3, false), (2, 3, false)]);
    }

    #[test]
    fn identity_braid_is_unlink() {
        let d = LinkDiagram::from_braid("", 3).unwrap();
        assert_eq!(d.n(), 0);
        assert_eq!(d.components().len(), 3);
        assert_eq!(d.free_loops.len(), 3);
    }

    #[test]
    fn rthree_braid_counts() {
        let d = LinkDiagram::from_braid("s1 s2^-1 s1^-1 s2", 3).unwrap();
        assert_eq!((d.n(), d.n_plus(), d.n_minus()), (4, 2, 2));
    }

    #[test]
    fn bad_braid_words() {
        assert!(matches!(LinkDiagram::from_braid("s3", 3), Err(Error::BadBraidWord(_))));
        assert!(matches!(LinkDiagram::from_braid("t1", 3), Err(Error::BadBraidWord(_))));
        assert!(matches!(LinkDiagram::from_braid("s0", 3), Err(Error::BadBraidWord(_))));
    }

    #[test]
    fn malformed_documents() {
        let mut raw = hopf().to_raw();
        raw.crossings[0].under_in = 7;
        raw.crossings[1].over_in = 7;
        raw.crossings[1].under_out = 7;
        assert!(matches!(LinkDiagram::from_raw(&raw), Err(Error::MalformedDiagram(_))));
        let mut raw = hopf().to_raw();
        raw.crossings[0].sign = 0;
        assert!(matches!(LinkDiagram::from_raw(&raw), Err(Error::OrientationError(_))));
        let mut raw = hopf().to_raw();
        let c = raw.crossings[0];
        raw.crossings[0].under_in = c.under_out;
        raw.crossings[0].under_out = c.under_in;
        raw.crossings[0].over_in = c.over_out;
        raw.crossings[0].over_out = c.over_in;
        // arcs now enter crossing 0 twice and crossing 1 twice
        assert!(LinkDiagram::from_raw(&raw).is_err());
    }

    #[test]
    fn free_loop_ids_follow_crossing_arcs() {
        let raw = RawDiagram {
            name: "u".into(),
            free_loops: alloc::vec![RawFreeLoop::default()],
            ..Default::default()
        };
        let d = LinkDiagram::from_raw(&raw).unwrap();
        assert_eq!((d.n(), d.components().len(), d.free_loops.clone()), (0, 1, alloc::vec![0]));
    }

    #[test]
    fn mirror_involution_and_resolutions() {
        let d = LinkDiagram::from_braid("s1 s2^-1 s1^-1 s2", 3).unwrap();
        let m = d.mirror();
        assert_eq!(m.mirror().crossings, d.crossings);
        assert!(m.crossings.iter().zip(&d.crossings).all(|(a, b)| a.sign == -b.sign));
        let full = (1u64 << d.n()) - 1;
        for u in 0..=full {
            assert_eq!(m.resolve(u).circle_of_arc, d.resolve(full ^ u).circle_of_arc);
        }
    }

    #[test]
    fn sums_and_unions() {
        let u = LinkDiagram::from_braid("", 1).unwrap();
        let uu = u.disjoint_union(&u);
        assert_eq!((uu.n(), uu.components().len()), (0, 2));
        let pu = u.clone().with_basepoint(0).unwrap();
        let s = pu.connect_sum(0, &pu, 0).unwrap();
        assert_eq!((s.n(), s.components().len()), (0, 1));
        let h = hopf();
        let hh = h.connect_sum(0, &h, 0).unwrap();
        assert_eq!((hh.n(), hh.components().len()), (4, 3));
        assert!(matches!(h.connect_sum(9, &h, 0), Err(Error::UnknownArc(9))));
    }
}
