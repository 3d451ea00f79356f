//! Bit-packed vectors over GF(2) and GF(3).
//!
//! GF(2) uses one plane of `u64` words. GF(3) uses two planes: bit `i` of
//! `p` set means value 1, bit `i` of `m` set means value 2.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

#[inline]
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

/// `(ap, am) += (bp, bm)` over GF(3), word-wise.
#[inline(always)]
pub fn gf3_add_word(ap: u64, am: u64, bp: u64, bm: u64) -> (u64, u64) {
    let p = (ap & !bp & !bm) | (bp & !ap & !am) | (am & bm);
    let m = (am & !bp & !bm) | (bm & !ap & !am) | (ap & bp);
    (p, m)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedVec {
    pub field: Field,
    pub len: usize,
    pub p: Vec<u64>,
    pub m: Vec<u64>,
}

impl PackedVec {
    pub fn zeros(field: Field, len: usize) -> Self {
        let w = words_for(len);
        let m = match field {
            Field::GF2 => Vec::new(),
            Field::GF3 => vec![0; w],
        };
        PackedVec { field, len, p: vec![0; w], m }
    }

    pub fn unit(field: Field, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.set(i, 1);
        v
    }

    pub fn from_entries(field: Field, len: usize, entries: &[(u32, u8)]) -> Self {
        let mut v = Self::zeros(field, len);
        for &(i, x) in entries {
            let cur = v.get(i as usize);
            v.set(i as usize, field.add(cur, x));
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        let (w, b) = (i / 64, i % 64);
        let p = (self.p[w] >> b) & 1;
        match self.field {
            Field::GF2 => p as u8,
            Field::GF3 => (p + 2 * ((self.m[w] >> b) & 1)) as u8,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, x: u8) {
        let (w, b) = (i / 64, i % 64);
        let mask = 1u64 << b;
        self.p[w] &= !mask;
        if self.field == Field::GF3 {
            self.m[w] &= !mask;
        }
        match x {
            0 => {}
            1 => self.p[w] |= mask,
            _ => self.m[w] |= mask,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().all(|&w| w == 0) && self.m.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        let a: u32 = self.p.iter().map(|w| w.count_ones()).sum();
        let b: u32 = self.m.iter().map(|w| w.count_ones()).sum();
        (a + b) as usize
    }

    /// Lowest index with a nonzero entry.
    pub fn lowest(&self) -> Option<usize> {
        for w in 0..self.p.len() {
            let mut word = self.p[w];
            if self.field == Field::GF3 {
                word |= self.m[w];
            }
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn add_assign(&mut self, o: &PackedVec) {
        match self.field {
            Field::GF2 => {
                for (a, b) in self.p.iter_mut().zip(&o.p) {
                    *a ^= b;
                }
            }
            Field::GF3 => {
                for w in 0..self.p.len() {
                    let (p, m) = gf3_add_word(self.p[w], self.m[w], o.p[w], o.m[w]);
                    self.p[w] = p;
                    self.m[w] = m;
                }
            }
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, o: &PackedVec, c: u8) {
        match (self.field, c % self.field.q()) {
            (_, 0) => {}
            (_, 1) => self.add_assign(o),
            (Field::GF3, _) => {
                for w in 0..self.p.len() {
                    let (p, m) = gf3_add_word(self.p[w], self.m[w], o.m[w], o.p[w]);
                    self.p[w] = p;
                    self.m[w] = m;
                }
            }
            (Field::GF2, _) => unreachable!(),
        }
    }

    pub fn scale(&mut self, c: u8) {
        match (self.field, c % self.field.q()) {
            (_, 1) => {}
            (_, 0) => {
                self.p.iter_mut().for_each(|w| *w = 0);
                self.m.iter_mut().for_each(|w| *w = 0);
            }
            (Field::GF3, _) => core::mem::swap(&mut self.p, &mut self.m),
            (Field::GF2, _) => unreachable!(),
        }
    }

    pub fn entries(&self) -> Vec<(u32, u8)> {
        let mut out = Vec::new();
        for w in 0..self.p.len() {
            let mut word = self.p[w];
            if self.field == Field::GF3 {
                word |= self.m[w];
            }
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                let i = w * 64 + b;
                out.push((i as u32, self.get(i)));
            }
        }
        out
    }

    pub fn dot(&self, o: &PackedVec) -> u8 {
        match self.field {
            Field::GF2 => {
                let c: u32 = self.p.iter().zip(&o.p).map(|(a, b)| (a & b).count_ones()).sum();
                (c % 2) as u8
            }
            Field::GF3 => {
                // products equal to 1: (1,1),(2,2); equal to 2: (1,2),(2,1)
                let mut ones = 0u32;
                let mut twos = 0u32;
                for w in 0..self.p.len() {
                    ones += ((self.p[w] & o.p[w]) | (self.m[w] & o.m[w])).count_ones();
                    twos += ((self.p[w] & o.m[w]) | (self.m[w] & o.p[w])).count_ones();
                }
                ((ones + 2 * twos) % 3) as u8
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(field: Field, a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
    }

    proptest! {
        #[test]
        fn gf3_planes_add_like_integers(a in proptest::collection::vec(0u8..3, 1..150), seed in any::<u64>()) {
            let n = a.len();
            let b: Vec<u8> = (0..n).map(|i| ((seed >> (i % 60)) as u8 ^ i as u8) % 3).collect();
            let mut pa = PackedVec::zeros(Field::GF3, n);
            let mut pb = PackedVec::zeros(Field::GF3, n);
            for i in 0..n { pa.set(i, a[i]); pb.set(i, b[i]); }
            let expect = naive(Field::GF3, &a, &b);
            let mut s = pa.clone();
            s.add_assign(&pb);
            for i in 0..n { prop_assert_eq!(s.get(i), expect[i]); }
            let mut t = pa.clone();
            t.add_scaled(&pb, 2);
            for i in 0..n { prop_assert_eq!(t.get(i), Field::GF3.sub(a[i], b[i])); }
            let dot = a.iter().zip(&b).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % 3;
            prop_assert_eq!(pa.dot(&pb) as u32, dot);
        }
    }

    #[test]
    fn lowest_and_weight() {
        let mut v = PackedVec::zeros(Field::GF2, 130);
        assert_eq!(v.lowest(), None);
        v.set(129, 1);
        v.set(70, 1);
        assert_eq!(v.lowest(), Some(70));
        assert_eq!(v.weight(), 2);
        assert_eq!(v.entries(), alloc::vec![(70, 1), (129, 1)]);
    }
}
