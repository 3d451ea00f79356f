//! Homological distance: the minimum weight of a cycle that is not a boundary.
//!
//! A degree is turned into a search problem over the columns of the
//! outgoing differential `out` together with `k` logical rows: functionals
//! that vanish on boundaries and detect every nonzero class. A vector `x`
//! is a nontrivial cycle iff `out·x = 0` and some logical row pairs with
//! `x` nontrivially.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;
use core::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::complex::{ChainComplex, Convention};
use crate::diagram::{EdgeKind, LinkDiagram};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::khovanov;
use crate::linear::{image_echelon, kernel_basis, rank, Echelon, GFMatrix, GFVector};
use crate::packed::PackedVec;

/// Search budget shared by all workers of one search.
pub trait Budget: Sync {
    fn exhausted(&self) -> bool;
    /// Records visited nodes.
    fn spend(&self, _nodes: u64) {}
    fn nodes(&self) -> u64 {
        0
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&self) -> bool {
        false
    }
}

/// Stops after a fixed number of visited nodes.
#[derive(Debug, Default)]
pub struct NodeBudget {
    pub limit: Option<u64>,
    used: AtomicU64,
    tripped: AtomicBool,
}

impl NodeBudget {
    pub fn new(limit: Option<u64>) -> Self {
        NodeBudget { limit, used: AtomicU64::new(0), tripped: AtomicBool::new(false) }
    }
}

impl Budget for NodeBudget {
    fn exhausted(&self) -> bool {
        self.tripped.load(AtomicOrdering::Relaxed)
    }

    fn spend(&self, nodes: u64) {
        let total = self.used.fetch_add(nodes, AtomicOrdering::Relaxed) + nodes;
        if self.limit.is_some_and(|l| total > l) {
            self.tripped.store(true, AtomicOrdering::Relaxed);
        }
    }

    fn nodes(&self) -> u64 {
        self.used.load(AtomicOrdering::Relaxed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Auto,
    ExhaustiveKernel,
    SupportGrowth,
    InformationSet,
    BruteOracle,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetRecord {
    pub nodes_visited: u64,
    pub node_limit: Option<u64>,
    pub time_limit_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub degree: i32,
    pub convention: Convention,
    pub n: usize,
    pub k: usize,
    pub d_hat: Option<usize>,
    pub d_hat_dual: Option<usize>,
    pub d: Option<usize>,
    pub witness: Option<GFVector>,
    pub witness_dual: Option<GFVector>,
    pub method: Method,
    pub exact: bool,
    pub budget: BudgetRecord,
}

/// Minimum-weight search result for one side of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub weight: usize,
    pub witness: GFVector,
    pub method: Method,
    pub exact: bool,
}

/// Candidate minimum. Ordered by weight, then by the `(index, value)` list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub weight: usize,
    pub entries: Vec<(u32, u8)>,
}

impl Candidate {
    pub fn from_packed(v: &PackedVec) -> Self {
        let mut v = v.clone();
        normalize(&mut v);
        let entries = v.entries();
        Candidate { weight: entries.len(), entries }
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Candidate {
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight.cmp(&o.weight).then_with(|| self.entries.cmp(&o.entries))
    }
}

/// Scales so the first nonzero entry is 1.
pub fn normalize(v: &mut PackedVec) {
    if let Some(i) = v.lowest() {
        let x = v.get(i);
        v.scale(v.field.inv(x));
    }
}

fn better(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Result of one subtree of a search.
#[derive(Debug, Clone, Default)]
pub struct Leaf {
    pub best: Option<Candidate>,
    pub truncated: bool,
}

/// Runs independent subtrees; the `khoco` crate supplies a parallel one.
pub trait Executor: Sync {
    fn map(&self, count: usize, f: &(dyn Fn(usize) -> Leaf + Sync)) -> Vec<Leaf>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Sequential;

impl Executor for Sequential {
    fn map(&self, count: usize, f: &(dyn Fn(usize) -> Leaf + Sync)) -> Vec<Leaf> {
        (0..count).map(f).collect()
    }
}

const TICK: u64 = 1024;

struct Ticker<'a> {
    budget: &'a dyn Budget,
    local: u64,
}

impl<'a> Ticker<'a> {
    fn new(budget: &'a dyn Budget) -> Self {
        Ticker { budget, local: 0 }
    }

    /// Counts one node; true when the budget is gone.
    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == TICK {
            self.budget.spend(TICK);
            self.local = 0;
            return self.budget.exhausted();
        }
        false
    }
}

impl Drop for Ticker<'_> {
    fn drop(&mut self) {
        self.budget.spend(self.local);
    }
}

/// One degree of a complex, prepared for searching.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub out: GFMatrix,
    pub inc: GFMatrix,
    pub logical: Vec<PackedVec>,
    out_cols: Vec<PackedVec>,
    log_cols: Vec<PackedVec>,
    dead: Vec<Vec<u64>>,
    lookup: HashMap<Vec<u64>, Vec<u32>>,
}

fn key(v: &PackedVec) -> Vec<u64> {
    let mut k = v.p.clone();
    k.extend_from_slice(&v.m);
    k
}

fn neg(v: &PackedVec) -> PackedVec {
    let mut w = v.clone();
    w.scale(v.field.neg(1));
    w
}

fn hits_dead(v: &PackedVec, dead: &[u64]) -> bool {
    v.p.iter().zip(dead).any(|(a, d)| a & d != 0) || v.m.iter().zip(dead).any(|(a, d)| a & d != 0)
}

impl SearchProblem {
    /// `out`: the differential leaving the degree; `inc`: the one arriving.
    pub fn new(out: &GFMatrix, inc: &GFMatrix) -> Result<Self> {
        let field = out.field;
        if inc.field != field {
            return Err(Error::FieldMismatch(field.q(), inc.field.q()));
        }
        let n = out.cols;
        if inc.rows != n {
            return Err(Error::Mismatch(format!("incoming map has {} rows, group has {n}", inc.rows)));
        }
        // rows of `out` span part of ker(incᵀ); complete with logical rows
        let mut ech = Echelon::new(field, n);
        let out_t = out.transpose();
        for r in 0..out_t.cols {
            let _ = ech.insert(&out_t.column_packed(r));
        }
        let mut logical = Vec::new();
        for v in kernel_basis(&inc.transpose()) {
            let p = v.to_packed();
            if ech.insert(&p).is_ok() {
                logical.push(p);
            }
        }
        let k = logical.len();
        let out_cols: Vec<PackedVec> = (0..n).map(|j| out.column_packed(j)).collect();
        let log_cols: Vec<PackedVec> = (0..n)
            .map(|j| {
                let entries: Vec<(u32, u8)> = logical
                    .iter()
                    .enumerate()
                    .filter_map(|(r, l)| {
                        let x = l.get(j);
                        (x != 0).then_some((r as u32, x))
                    })
                    .collect();
                PackedVec::from_entries(field, k, &entries)
            })
            .collect();
        let m = out.rows;
        let mut last = vec![None::<usize>; m];
        for (j, col) in out.columns.iter().enumerate() {
            for &(r, _) in col {
                last[r as usize] = Some(j);
            }
        }
        let words = crate::packed::words_for(m);
        let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (r, l) in last.iter().enumerate() {
            if let Some(j) = l {
                by_last[*j].push(r);
            }
        }
        let mut dead = Vec::with_capacity(n);
        let mut cur = vec![0u64; words];
        for rows in by_last.iter() {
            for &r in rows {
                cur[r / 64] |= 1 << (r % 64);
            }
            dead.push(cur.clone());
        }
        let mut lookup: HashMap<Vec<u64>, Vec<u32>> = HashMap::new();
        for (j, c) in out_cols.iter().enumerate() {
            lookup.entry(key(c)).or_default().push(j as u32);
        }
        Ok(SearchProblem { field, n, k, out: out.clone(), inc: inc.clone(), logical, out_cols, log_cols, dead, lookup })
    }

    pub fn from_complex(c: &ChainComplex, i: i32) -> Result<Self> {
        Self::new(&c.diff(i), &c.incoming(i))
    }

    /// The same degree of the dual complex.
    pub fn dual(&self) -> Result<Self> {
        Self::new(&self.inc.transpose(), &self.out.transpose())
    }

    pub fn kernel_dim(&self) -> usize {
        self.n - rank(&self.out)
    }

    pub fn is_nontrivial_cycle(&self, x: &PackedVec) -> bool {
        let cyc = self.out.mul_vec(&GFVector::from_packed(x)).is_zero();
        cyc && self.logical.iter().any(|l| l.dot(x) != 0)
    }

    fn coeffs(&self) -> &'static [u8] {
        match self.field {
            Field::GF2 => &[1],
            Field::GF3 => &[1, 2],
        }
    }

    /// Lexicographically first nontrivial cycle with support size `w`
    /// whose first index lies in `firsts`.
    pub fn support_growth_weight(&self, w: usize, firsts: Range<usize>, budget: &dyn Budget) -> Leaf {
        let mut t = Ticker::new(budget);
        let mut leaf = Leaf::default();
        if w == 0 {
            return leaf;
        }
        for j in firsts {
            if j >= self.n {
                break;
            }
            if w == 1 {
                if self.out_cols[j].is_zero() && !self.log_cols[j].is_zero() {
                    leaf.best = Some(Candidate { weight: 1, entries: vec![(j as u32, 1)] });
                    return leaf;
                }
                continue;
            }
            if hits_dead(&self.out_cols[j], &self.dead[j]) {
                continue;
            }
            let mut chosen = vec![(j as u32, 1u8)];
            let r = self.sg_dfs(w, &mut chosen, &self.out_cols[j].clone(), &self.log_cols[j].clone(), &mut t);
            match r {
                Err(()) => {
                    leaf.truncated = true;
                    return leaf;
                }
                Ok(Some(c)) => {
                    leaf.best = Some(c);
                    return leaf;
                }
                Ok(None) => {}
            }
        }
        leaf
    }

    fn sg_dfs(
        &self,
        w: usize,
        chosen: &mut Vec<(u32, u8)>,
        part: &PackedVec,
        log: &PackedVec,
        t: &mut Ticker<'_>,
    ) -> core::result::Result<Option<Candidate>, ()> {
        if t.tick() {
            return Err(());
        }
        let last = chosen.last().unwrap().0 as usize;
        let f = self.field;
        if chosen.len() + 1 == w {
            // final column c·h_j = −part
            let mut best: Option<(u32, u8)> = None;
            for &c in self.coeffs() {
                let mut target = neg(part);
                target.scale(f.inv(c));
                if let Some(cols) = self.lookup.get(&key(&target)) {
                    let start = cols.partition_point(|&x| x as usize <= last);
                    for &j in &cols[start..] {
                        if best.is_some_and(|b| b.0 <= j) {
                            break;
                        }
                        let mut l = log.clone();
                        l.add_scaled(&self.log_cols[j as usize], c);
                        if !l.is_zero() {
                            best = Some((j, c));
                            break;
                        }
                    }
                }
            }
            return Ok(best.map(|b| {
                let mut e = chosen.clone();
                e.push(b);
                Candidate { weight: w, entries: e }
            }));
        }
        let remaining = w - chosen.len();
        for j in last + 1..=self.n.saturating_sub(remaining) {
            for &c in self.coeffs() {
                let mut p = part.clone();
                p.add_scaled(&self.out_cols[j], c);
                if hits_dead(&p, &self.dead[j]) {
                    continue;
                }
                let mut l = log.clone();
                l.add_scaled(&self.log_cols[j], c);
                chosen.push((j as u32, c));
                let r = self.sg_dfs(w, chosen, &p, &l, t)?;
                chosen.pop();
                if r.is_some() {
                    return Ok(r);
                }
            }
        }
        Ok(None)
    }

    /// Enumerates every vector of `ker(out)`.
    pub fn exhaustive_kernel(&self, budget: &dyn Budget) -> Result<Leaf> {
        let gens: Vec<PackedVec> = kernel_basis(&self.out).iter().map(|v| v.to_packed()).collect();
        let limit = match self.field {
            Field::GF2 => 24,
            Field::GF3 => 15,
        };
        if gens.len() > limit {
            return Err(Error::KernelTooLarge(gens.len()));
        }
        let logs: Vec<PackedVec> = gens.iter().map(|g| self.log_syndrome(g)).collect();
        let mut t = Ticker::new(budget);
        let mut leaf = Leaf::default();
        match self.field {
            Field::GF2 => {
                let mut x = PackedVec::zeros(self.field, self.n);
                let mut l = PackedVec::zeros(self.field, self.k);
                let mut best: Option<Candidate> = None;
                for step in 1u64..1 << gens.len() {
                    if t.tick() {
                        leaf.truncated = true;
                        break;
                    }
                    let g = step.trailing_zeros() as usize;
                    x.add_assign(&gens[g]);
                    l.add_assign(&logs[g]);
                    if l.is_zero() {
                        continue;
                    }
                    let wt = x.weight();
                    if best.as_ref().is_none_or(|b| wt <= b.weight) {
                        best = better(best, Some(Candidate::from_packed(&x)));
                    }
                }
                leaf.best = best;
            }
            Field::GF3 => {
                let mut best = None;
                let x = PackedVec::zeros(self.field, self.n);
                let l = PackedVec::zeros(self.field, self.k);
                if self.gf3_walk(&gens, &logs, 0, x, l, &mut best, &mut t).is_err() {
                    leaf.truncated = true;
                }
                leaf.best = best;
            }
        }
        Ok(leaf)
    }

    #[allow(clippy::too_many_arguments)]
    fn gf3_walk(
        &self,
        gens: &[PackedVec],
        logs: &[PackedVec],
        i: usize,
        x: PackedVec,
        l: PackedVec,
        best: &mut Option<Candidate>,
        t: &mut Ticker<'_>,
    ) -> core::result::Result<(), ()> {
        if i == gens.len() {
            if t.tick() {
                return Err(());
            }
            if !l.is_zero() {
                let wt = x.weight();
                if best.as_ref().is_none_or(|b| wt <= b.weight) {
                    *best = better(best.take(), Some(Candidate::from_packed(&x)));
                }
            }
            return Ok(());
        }
        for c in 0..3u8 {
            let mut x2 = x.clone();
            let mut l2 = l.clone();
            x2.add_scaled(&gens[i], c);
            l2.add_scaled(&logs[i], c);
            self.gf3_walk(gens, logs, i + 1, x2, l2, best, t)?;
        }
        Ok(())
    }

    fn log_syndrome(&self, x: &PackedVec) -> PackedVec {
        let entries: Vec<(u32, u8)> = self
            .logical
            .iter()
            .enumerate()
            .filter_map(|(r, l)| {
                let d = l.dot(x);
                (d != 0).then_some((r as u32, d))
            })
            .collect();
        PackedVec::from_entries(self.field, self.k, &entries)
    }

    /// Generator matrices of `ker(out)` in systematic form on disjoint
    /// column sets, for the information-set lower bound.
    pub fn information_sets(&self) -> InfoSets {
        let f = self.field;
        let gens: Vec<PackedVec> = kernel_basis(&self.out).iter().map(|v| v.to_packed()).collect();
        let dim = gens.len();
        let mut free: Vec<bool> = vec![true; self.n];
        let mut mats = Vec::new();
        loop {
            let mut rows = gens.clone();
            let mut pivots = Vec::new();
            for col in 0..self.n {
                if pivots.len() == dim {
                    break;
                }
                if !free[col] {
                    continue;
                }
                let r0 = pivots.len();
                let Some(r) = (r0..dim).find(|&r| rows[r].get(col) != 0) else { continue };
                rows.swap(r0, r);
                let inv = f.inv(rows[r0].get(col));
                rows[r0].scale(inv);
                let pr = rows[r0].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != r0 {
                        let x = row.get(col);
                        if x != 0 {
                            row.add_scaled(&pr, f.neg(x));
                        }
                    }
                }
                pivots.push(col);
            }
            if pivots.is_empty() {
                break;
            }
            for &p in &pivots {
                free[p] = false;
            }
            let logs = rows.iter().map(|r| self.log_syndrome(r)).collect();
            mats.push(InfoMatrix { rank: pivots.len(), rows, logs });
        }
        InfoSets { dim, mats }
    }

    /// Best nontrivial cycle among combinations of exactly `t` rows of
    /// matrix `j` whose first row is `first`, no heavier than `cap`.
    pub fn info_set_subtree(
        &self,
        sets: &InfoSets,
        j: usize,
        t: usize,
        first: usize,
        cap: usize,
        budget: &dyn Budget,
    ) -> Leaf {
        let mat = &sets.mats[j];
        let mut tk = Ticker::new(budget);
        let mut best = None;
        let mut cap = cap;
        let x = mat.rows[first].clone();
        let l = mat.logs[first].clone();
        let truncated = self.is_dfs(mat, t, 1, first, x, l, &mut cap, &mut best, &mut tk).is_err();
        Leaf { best, truncated }
    }

    #[allow(clippy::too_many_arguments)]
    fn is_dfs(
        &self,
        mat: &InfoMatrix,
        t: usize,
        depth: usize,
        last: usize,
        x: PackedVec,
        l: PackedVec,
        cap: &mut usize,
        best: &mut Option<Candidate>,
        tk: &mut Ticker<'_>,
    ) -> core::result::Result<(), ()> {
        if tk.tick() {
            return Err(());
        }
        if depth == t {
            if !l.is_zero() {
                let wt = x.weight();
                if wt <= *cap {
                    let c = Candidate::from_packed(&x);
                    if best.as_ref().is_none_or(|b| c < *b) {
                        *cap = wt;
                        *best = Some(c);
                    }
                }
            }
            return Ok(());
        }
        for r in last + 1..mat.rows.len() {
            for &c in self.coeffs() {
                let mut x2 = x.clone();
                let mut l2 = l.clone();
                x2.add_scaled(&mat.rows[r], c);
                l2.add_scaled(&mat.logs[r], c);
                self.is_dfs(mat, t, depth + 1, r, x2, l2, cap, best, tk)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct InfoMatrix {
    pub rank: usize,
    pub rows: Vec<PackedVec>,
    logs: Vec<PackedVec>,
}

#[derive(Debug, Clone)]
pub struct InfoSets {
    pub dim: usize,
    pub mats: Vec<InfoMatrix>,
}

impl InfoSets {
    /// Every codeword not met in levels `1..=t` has at least this weight.
    pub fn lower_bound(&self, t: usize) -> usize {
        self.mats.iter().map(|m| (t + 1).saturating_sub(self.dim - m.rank)).sum()
    }
}

fn outcome(p: &SearchProblem, best: Option<Candidate>, method: Method, exact: bool) -> Result<Outcome> {
    let c = best.ok_or(Error::Unbounded(0))?;
    let witness = GFVector { field: p.field, len: p.n, support: c.entries };
    Ok(Outcome { weight: c.weight, witness, method, exact })
}

/// Minimum weight of a nontrivial cycle, with the chosen method.
pub fn search(p: &SearchProblem, method: Method, budget: &dyn Budget, exec: &dyn Executor) -> Result<Outcome> {
    if p.k == 0 {
        return Err(Error::Unbounded(0));
    }
    let method = match method {
        Method::Auto => {
            let small = match p.field {
                Field::GF2 => 20,
                Field::GF3 => 12,
            };
            if p.kernel_dim() <= small {
                Method::ExhaustiveKernel
            } else {
                return auto_large(p, budget, exec);
            }
        }
        m => m,
    };
    match method {
        Method::ExhaustiveKernel => {
            let leaf = p.exhaustive_kernel(budget)?;
            outcome(p, leaf.best, method, !leaf.truncated)
        }
        Method::BruteOracle => {
            let (best, _) = brute_force(p)?;
            outcome(p, best, method, true)
        }
        Method::SupportGrowth => {
            for w in 1..=p.n {
                if let Some(r) = support_growth_at(p, w, budget, exec) {
                    return r;
                }
            }
            Err(Error::Unbounded(0))
        }
        Method::InformationSet => information_set(p, budget, exec),
        Method::Auto => unreachable!(),
    }
}

/// One weight of the support-growth search. `None` means no cycle of weight `w`.
fn support_growth_at(p: &SearchProblem, w: usize, budget: &dyn Budget, exec: &dyn Executor) -> Option<Result<Outcome>> {
    let chunk = p.n.div_ceil(64).max(1);
    let leaves = exec.map(p.n.div_ceil(chunk), &|s| p.support_growth_weight(w, s * chunk..(s + 1) * chunk, budget));
    // subtrees are ordered; the first hit is the lexicographic minimum
    let truncated = leaves.iter().any(|l| l.truncated);
    if let Some(b) = leaves.into_iter().find_map(|l| l.best) {
        return Some(outcome(p, Some(b), Method::SupportGrowth, true));
    }
    if truncated {
        // best-known upper bound from a short information-set run
        let probe = NodeBudget::new(Some(1 << 22));
        return Some(information_set(p, &probe, exec).map(|up| Outcome { exact: false, method: Method::SupportGrowth, ..up }));
    }
    None
}

/// Support growth while the next weight stays cheap, then information sets.
fn auto_large(p: &SearchProblem, budget: &dyn Budget, exec: &dyn Executor) -> Result<Outcome> {
    let spread = (p.field.q() - 1) as f64;
    let mut cost = 1.0f64;
    for w in 1..=p.n {
        if w >= 2 {
            cost *= (p.n + 2 - w) as f64 / (w - 1) as f64 * if w >= 3 { spread } else { 1.0 };
        }
        if cost > AUTO_GROWTH_NODES {
            break;
        }
        if let Some(r) = support_growth_at(p, w, budget, exec) {
            return r;
        }
    }
    information_set(p, budget, exec)
}

const AUTO_GROWTH_NODES: f64 = (1u64 << 28) as f64;

fn information_set(p: &SearchProblem, b: &dyn Budget, exec: &dyn Executor) -> Result<Outcome> {
    let sets = p.information_sets();
    let mut best: Option<Candidate> = None;
    for t in 1..=sets.dim {
        let cap = best.as_ref().map_or(usize::MAX, |c| c.weight);
        let mut truncated = false;
        for j in 0..sets.mats.len() {
            let cap = best.as_ref().map_or(cap, |c| c.weight);
            let rows = sets.mats[j].rows.len();
            let leaves = exec.map(rows, &|first| p.info_set_subtree(&sets, j, t, first, cap, b));
            for l in leaves {
                best = better(best, l.best);
                truncated |= l.truncated;
            }
            if truncated {
                break;
            }
        }
        if truncated {
            return outcome(p, best, Method::InformationSet, false);
        }
        if let Some(c) = &best {
            if sets.lower_bound(t) >= c.weight || t == sets.dim {
                return outcome(p, best, Method::InformationSet, true);
            }
        }
        // a single matrix of full rank covers everything once t reaches its dimension
    }
    outcome(p, best, Method::InformationSet, true)
}

/// Enumerates all `q^n` vectors of the group. Independent of the logical rows:
/// membership in the image is tested by elimination.
pub fn brute_force(p: &SearchProblem) -> Result<(Option<Candidate>, u64)> {
    let limit = match p.field {
        Field::GF2 => 20,
        Field::GF3 => 12,
    };
    if p.n > limit {
        return Err(Error::OracleRefused(p.n));
    }
    let img = image_echelon(&p.inc);
    let f = p.field;
    let q = f.q() as u64;
    let total = q.pow(p.n as u32);
    let cols: Vec<PackedVec> = (0..p.n).map(|j| p.out.column_packed(j)).collect();
    let mut best: Option<Candidate> = None;
    let mut digits = vec![0u8; p.n];
    let mut x = PackedVec::zeros(f, p.n);
    let mut s = PackedVec::zeros(f, p.out.rows);
    for _ in 1..total {
        // increment in base q, updating the syndrome
        let mut i = 0;
        loop {
            let d = digits[i];
            if d + 1 < f.q() {
                digits[i] = d + 1;
                x.set(i, d + 1);
                s.add_assign(&cols[i]);
                break;
            }
            digits[i] = 0;
            x.set(i, 0);
            s.add_scaled(&cols[i], f.neg(d));
            i += 1;
        }
        if !s.is_zero() {
            continue;
        }
        let wt = x.weight();
        if best.as_ref().is_some_and(|b| wt > b.weight) {
            continue;
        }
        if img.contains(&x) {
            continue;
        }
        best = better(best, Some(Candidate::from_packed(&x)));
    }
    Ok((best, total))
}

/// Oracle entry point on a complex.
pub fn brute_oracle(c: &ChainComplex, i: i32) -> Result<(usize, GFVector)> {
    let p = SearchProblem::from_complex(c, i)?;
    match brute_force(&p)?.0 {
        Some(b) => Ok((b.weight, GFVector { field: c.field, len: p.n, support: b.entries })),
        None => Err(Error::Unbounded(i)),
    }
}

/// `∂x = 0` and `x ∉ im ∂`, checked by direct elimination.
pub fn verify_witness(out: &GFMatrix, inc: &GFMatrix, x: &GFVector) -> bool {
    out.mul_vec(x).is_zero() && !x.is_zero() && !crate::linear::in_image(inc, x).0
}

pub fn homology_dims(c: &ChainComplex) -> BTreeMap<i32, usize> {
    c.homology_dims()
}

/// d̂ at degree `i` (raw) of `c`.
pub fn min_weight_nontrivial(
    c: &ChainComplex,
    i: i32,
    method: Method,
    budget: &dyn Budget,
    exec: &dyn Executor,
) -> Result<Outcome> {
    let p = SearchProblem::from_complex(c, i)?;
    search(&p, method, budget, exec).map_err(|e| match e {
        Error::Unbounded(_) => Error::Unbounded(i),
        e => e,
    })
}

/// Options for [`css_distance`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CssOptions {
    pub reduced: bool,
    pub method: Method,
    pub convention: Convention,
    /// Also search the transposed complex and require agreement with the mirror.
    pub check_dual: bool,
}

/// CSS parameters of `D` at degree `i`: d̂ from `C(D)`, d̂-dual from the
/// mirror at degree `-i`.
pub fn css_distance(
    d: &LinkDiagram,
    i: i32,
    opts: CssOptions,
    budget: &dyn Budget,
    exec: &dyn Executor,
) -> Result<CodeReport> {
    let shift = d.n_minus() as i32;
    let raw = match opts.convention {
        Convention::Raw => i,
        Convention::Shifted => i - shift,
    };
    let c = khovanov::build_window(d, opts.reduced, raw - 1, raw + 1)?;
    let m = d.mirror();
    let cm = khovanov::build_window(&m, opts.reduced, -raw - 1, -raw + 1)?;
    let p = SearchProblem::from_complex(&c, raw)?;
    let pm = SearchProblem::from_complex(&cm, -raw)?;
    if p.k != pm.k || p.n != pm.n {
        return Err(Error::Mismatch(format!("mirror at degree {} has n={}, k={}", -raw, pm.n, pm.k)));
    }
    let mut report = CodeReport {
        degree: i,
        convention: opts.convention,
        n: p.n,
        k: p.k,
        d_hat: None,
        d_hat_dual: None,
        d: None,
        witness: None,
        witness_dual: None,
        method: opts.method,
        exact: true,
        budget: BudgetRecord::default(),
    };
    if p.k == 0 {
        report.budget.nodes_visited = budget.nodes();
        return Ok(report);
    }
    let a = search(&p, opts.method, budget, exec)?;
    let b = search(&pm, opts.method, budget, exec)?;
    if opts.check_dual {
        let t = search(&p.dual()?, opts.method, budget, exec)?;
        if t.exact && b.exact && t.weight != b.weight {
            return Err(Error::Mismatch(format!(
                "dual distance {} from the transpose, {} from the mirror",
                t.weight, b.weight
            )));
        }
    }
    report.exact = a.exact && b.exact;
    report.method = a.method;
    report.d_hat = Some(a.weight);
    report.d_hat_dual = Some(b.weight);
    report.d = Some(a.weight.min(b.weight));
    report.witness = Some(a.witness);
    report.witness_dual = Some(b.witness);
    report.budget.nodes_visited = budget.nodes();
    Ok(report)
}

/// Necessary condition for d̂ = 2: some vertex at raw degree `i` has only
/// merge edges leaving it, all joining the same two circles.
pub fn dist2_necessary(d: &LinkDiagram, i: i32) -> Result<bool> {
    let n = d.n();
    let nm = d.n_minus() as i32;
    if i > n as i32 - nm - 2 || i < -nm {
        return Err(Error::NotApplicable);
    }
    let size = (i + nm) as u32;
    for u in 0..1u64 << n {
        if u.count_ones() != size {
            continue;
        }
        let ru = d.resolve(u);
        let mut pair = None;
        let mut ok = true;
        for k in 0..n {
            if (u >> k) & 1 == 1 {
                continue;
            }
            let rv = d.resolve(u | 1 << k);
            match d.edge(&ru, &rv, k)?.kind {
                EdgeKind::Merge { a, b, .. } => {
                    if pair.is_some_and(|p| p != (a, b)) {
                        ok = false;
                        break;
                    }
                    pair = Some((a, b));
                }
                EdgeKind::Split { .. } => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Dimension of the group at degree `i` in the given convention, for display.
pub fn describe(c: &ChainComplex, i: i32) -> String {
    format!("degree {i}: n={}, k={}", c.dim(i), c.homology_dim(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::build_complex;

    fn hopf() -> LinkDiagram {
        LinkDiagram::from_braid("s1 s1", 2).unwrap().with_basepoint(0).unwrap()
    }

    fn all_methods(c: &ChainComplex, i: i32) -> Vec<usize> {
        [Method::ExhaustiveKernel, Method::SupportGrowth, Method::InformationSet, Method::BruteOracle]
            .iter()
            .map(|&m| min_weight_nontrivial(c, i, m, &Unlimited, &Sequential).unwrap().weight)
            .collect()
    }

    #[test]
    fn reduced_hopf_distances() {
        let c = build_complex(&hopf(), true).unwrap();
        assert_eq!(all_methods(&c, 0), vec![2; 4]);
        assert_eq!(all_methods(&c, 2), vec![1; 4]);
        assert!(matches!(
            min_weight_nontrivial(&c, 1, Method::Auto, &Unlimited, &Sequential),
            Err(Error::Unbounded(1))
        ));
    }

    #[test]
    fn unknot_distance_one() {
        let u = LinkDiagram::from_braid("", 1).unwrap();
        let c = build_complex(&u, false).unwrap();
        let o = min_weight_nontrivial(&c, 0, Method::Auto, &Unlimited, &Sequential).unwrap();
        assert_eq!(o.weight, 1);
        assert_eq!(o.witness.support, vec![(0, 1)]);
    }

    #[test]
    fn trefoil_torus_distances() {
        let t = LinkDiagram::from_braid("s1 s1 s1", 2).unwrap().with_basepoint(0).unwrap();
        let c = build_complex(&t, true).unwrap();
        assert_eq!(c.homology_dims().into_values().collect::<Vec<_>>(), vec![1, 0, 1, 1]);
        assert_eq!(all_methods(&c, 0), vec![2; 4]);
        assert_eq!(all_methods(&c, 2), vec![3; 4]);
        assert_eq!(all_methods(&c, 3), vec![1; 4]);
    }

    #[test]
    fn witnesses_agree_and_verify() {
        let t = LinkDiagram::from_braid("s1 s1 s1", 2).unwrap().with_basepoint(0).unwrap();
        let c = build_complex(&t, false).unwrap();
        for i in c.degrees() {
            if c.homology_dim(i) == 0 {
                continue;
            }
            let a = min_weight_nontrivial(&c, i, Method::ExhaustiveKernel, &Unlimited, &Sequential).unwrap();
            let b = min_weight_nontrivial(&c, i, Method::SupportGrowth, &Unlimited, &Sequential).unwrap();
            assert_eq!(a.witness, b.witness);
            assert!(verify_witness(&c.diff(i), &c.incoming(i), &a.witness));
        }
    }

    #[test]
    fn css_hopf_and_kink() {
        let r = css_distance(&hopf(), 0, CssOptions { reduced: true, ..Default::default() }, &Unlimited, &Sequential)
            .unwrap();
        assert_eq!((r.n, r.k, r.d_hat), (2, 1, Some(2)));
        let kink = LinkDiagram::from_braid("s1", 2).unwrap();
        let opts = CssOptions { check_dual: true, ..Default::default() };
        let r = css_distance(&kink, 0, opts, &Unlimited, &Sequential).unwrap();
        assert_eq!(r.d, Some(1));
    }

    #[test]
    fn dist2_condition() {
        assert!(dist2_necessary(&hopf(), 0).unwrap());
        let u2 = LinkDiagram::from_braid("", 2).unwrap();
        assert!(matches!(dist2_necessary(&u2, 0), Err(Error::NotApplicable)));
    }

    #[test]
    fn node_budget_truncates() {
        let t = LinkDiagram::from_braid("s1 s1 s1 s1 s1", 2).unwrap().with_basepoint(0).unwrap();
        let c = build_complex(&t, false).unwrap();
        let b = NodeBudget::new(Some(1));
        let o = min_weight_nontrivial(&c, 0, Method::SupportGrowth, &b, &Sequential);
        if let Ok(o) = o {
            assert!(o.weight >= 1);
        }
    }
}
