use serde::{Deserialize, Serialize};

/// The two prime fields used throughout. Elements are `u8` in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    GF2,
    GF3,
}

impl Field {
    pub fn q(self) -> u8 {
        match self {
            Field::GF2 => 2,
            Field::GF3 => 3,
        }
    }

    pub fn from_q(q: u8) -> Option<Field> {
        match q {
            2 => Some(Field::GF2),
            3 => Some(Field::GF3),
            _ => None,
        }
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.q()
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.q() - b) % self.q()
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.q()
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.q() - a) % self.q()
    }

    /// Inverse of a nonzero element. In GF(2) and GF(3) every unit is its own inverse.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        a
    }

    /// Image of a signed integer.
    #[inline]
    pub fn from_i64(self, v: i64) -> u8 {
        v.rem_euclid(self.q() as i64) as u8
    }

    /// Representative in `{-1, 0, 1}` (GF(3)) or `{0, 1}` (GF(2)).
    #[inline]
    pub fn signed(self, a: u8) -> i8 {
        match (self, a) {
            (Field::GF3, 2) => -1,
            _ => a as i8,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_arithmetic_table() {
        let f = Field::GF3;
        for a in 0..3u8 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..3u8 {
                assert_eq!(f.sub(f.add(a, b), b), a);
                assert_eq!(f.mul(a, b) as i64, (a as i64 * b as i64) % 3);
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
        assert_eq!(f.from_i64(-1), 2);
        assert_eq!(f.signed(2), -1);
    }

    #[test]
    fn gf2_is_char_two() {
        let f = Field::GF2;
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.neg(1), 1);
        assert_eq!(f.from_i64(-3), 1);
    }
}
