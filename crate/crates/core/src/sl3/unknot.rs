use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::cube::build_sl3_complex;
use super::Basis;
use crate::distance::{self, Budget, Executor, Method, SearchProblem};
use crate::error::{Error, Result};
use crate::linear::GFVector;
use crate::products::{closed_form_params, Family, FamilyParams};

/// Coefficients over sequences `S ∈ {0,1,2}^{ℓ+1}` of box labels, `S` encoded
/// in base 3 with position 0 least significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxVector {
    pub l: usize,
    pub coeffs: Vec<u8>,
}

impl BoxVector {
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn counts(l: usize) -> impl Iterator<Item = [usize; 3]> {
        (0..3usize.pow(l as u32 + 1)).map(move |mut s| {
            let mut n = [0; 3];
            for _ in 0..=l {
                n[s % 3] += 1;
                s /= 3;
            }
            n
        })
    }
}

/// `X^a` in the box basis: 1 = ⊠0, X = ⊠0 − ⊠1, X² = ⊠0 + ⊠1 + ⊠2.
const X_POW: [[u8; 3]; 3] = [[1, 0, 0], [1, 2, 0], [1, 1, 1]];

fn check_l(l: usize) -> Result<()> {
    if l > 12 {
        return Err(Error::Unsupported(alloc::format!("F expansion for ℓ = {l}")));
    }
    Ok(())
}

/// Expands `F_i = Σ_{a₁+⋯+a_{ℓ+1} = 2ℓ+i} X^{a₁} ⊗ ⋯ ⊗ X^{a_{ℓ+1}}` term by term.
#[allow(non_snake_case)]
pub fn expand_F(i: usize, l: usize) -> Result<BoxVector> {
    check_l(l)?;
    if i > 2 {
        return Err(Error::Unsupported(alloc::format!("F_{i}")));
    }
    let target = 2 * l + i;
    let mut memo: HashMap<[usize; 3], u8> = HashMap::new();
    let coeffs = BoxVector::counts(l)
        .map(|n| {
            *memo.entry(n).or_insert_with(|| {
                // positions ordered by label; DP over the running exponent sum
                let labels = (0..3).flat_map(|b| core::iter::repeat(b).take(n[b]));
                let mut dp = vec![0u8; target + 1];
                dp[0] = 1;
                for b in labels {
                    let mut next = vec![0u8; target + 1];
                    for (sum, &c) in dp.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for (a, row) in X_POW.iter().enumerate() {
                            if sum + a <= target && row[b] != 0 {
                                next[sum + a] = (next[sum + a] + c * row[b]) % 3;
                            }
                        }
                    }
                    dp = next;
                }
                dp[target]
            })
        })
        .collect();
    Ok(BoxVector { l, coeffs })
}

/// `c_{S,0} = n₀ + C(n₀,2) + C(n₁,2) − n₀n₁`, `c_{S,1} = n₀ − n₁`, `c_{S,2} = 1`.
#[allow(non_snake_case)]
pub fn expand_F_closed_form(i: usize, l: usize) -> Result<BoxVector> {
    check_l(l)?;
    let coeffs = BoxVector::counts(l)
        .map(|[n0, n1, _]| {
            let (n0, n1) = (n0 as i64, n1 as i64);
            let c = match i {
                0 => n0 + n0 * (n0 - 1) / 2 + n1 * (n1 - 1) / 2 - n0 * n1,
                1 => n0 - n1,
                2 => 1,
                _ => 0,
            };
            c.rem_euclid(3) as u8
        })
        .collect();
    Ok(BoxVector { l, coeffs })
}

/// Minimum weight over the 26 nonzero GF(3) combinations of `F₀, F₁, F₂`,
/// with a minimizing coefficient triple.
pub fn min_combo_weight(l: usize) -> Result<(usize, [u8; 3])> {
    let f: Vec<BoxVector> = (0..3).map(|i| expand_F(i, l)).collect::<Result<_>>()?;
    let mut best = (usize::MAX, [0u8; 3]);
    for code in 1..27u32 {
        let e = [(code % 3) as u8, (code / 3 % 3) as u8, (code / 9) as u8];
        let w = (0..f[0].coeffs.len())
            .filter(|&s| (0..3).map(|i| e[i] * f[i].coeffs[s]).sum::<u8>() % 3 != 0)
            .count();
        if w < best.0 {
            best = (w, e);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tier {
    /// Closed forms and the F-expansion minimum.
    ClosedForm,
    /// The full complex of `D_{ℓ,ℓ}` and distance search in both bases.
    Complex,
}

impl TryFrom<u8> for Tier {
    type Error = Error;
    fn try_from(t: u8) -> Result<Self> {
        match t {
            1 => Ok(Tier::ClosedForm),
            2 => Ok(Tier::Complex),
            _ => Err(Error::Unsupported(alloc::format!("tier {t}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl3Report {
    pub l: usize,
    pub tier: Tier,
    pub formula: FamilyParams,
    pub f_weights: [usize; 3],
    pub min_combo: usize,
    pub measured_n: Option<usize>,
    pub measured_k: Option<usize>,
    /// `d̂⁰` in B1 and B2.
    pub d_hat: Option<[usize; 2]>,
    /// Dual distances in B1 and B2, by transposed search.
    pub d_hat_dual: Option<[usize; 2]>,
    pub witness: Option<GFVector>,
    pub exact: bool,
    pub ok: bool,
}

pub fn sl3_unknot_params(l: usize, tier: Tier, method: Method, budget: &dyn Budget, exec: &dyn Executor) -> Result<Sl3Report> {
    let formula = closed_form_params(Family::Sl3Unknot, &[l as u64])?;
    let mut f_weights = [0; 3];
    for (i, w) in f_weights.iter_mut().enumerate() {
        *w = expand_F(i, l)?.weight();
    }
    let (min_combo, _) = min_combo_weight(l)?;
    let d = 3usize.pow(l as u32);
    let mut r = Sl3Report {
        l,
        tier,
        ok: BigUint::from(min_combo) == formula.d && f_weights == [d, 2 * d, 3 * d],
        formula,
        f_weights,
        min_combo,
        measured_n: None,
        measured_k: None,
        d_hat: None,
        d_hat_dual: None,
        witness: None,
        exact: true,
    };
    if tier == Tier::ClosedForm {
        return Ok(r);
    }
    if l > 2 {
        return Err(Error::Unsupported(alloc::format!("tier 2 for ℓ = {l}")));
    }
    let mut d_hat = [0; 2];
    let mut dual = [0; 2];
    for (j, basis) in [Basis::B1, Basis::B2].into_iter().enumerate() {
        let c = build_sl3_complex(l, l, basis)?;
        let p = SearchProblem::from_complex(&c, 0)?;
        r.measured_n = Some(p.n);
        r.measured_k = Some(p.k);
        if p.k == 0 {
            r.ok = false;
            return Ok(r);
        }
        let a = distance::search(&p, method, budget, exec)?;
        let b = distance::search(&p.dual()?, method, budget, exec)?;
        r.exact &= a.exact && b.exact;
        d_hat[j] = a.weight;
        dual[j] = b.weight;
        if j == 0 {
            r.witness = Some(a.witness);
        }
    }
    r.d_hat = Some(d_hat);
    r.d_hat_dual = Some(dual);
    r.ok &= r.measured_n.map(BigUint::from) == Some(r.formula.n.clone())
        && r.measured_k == Some(3)
        && d_hat == [d, d]
        && dual == [d, d]
        // the dual distance in one basis is the distance in the other
        && dual[0] == d_hat[1]
        && dual[1] == d_hat[0];
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{Sequential, Unlimited};
    use crate::linear::GFMatrix;

    #[test]
    fn expansions_match_closed_forms() {
        for l in 0..=6 {
            for i in 0..3 {
                assert_eq!(expand_F(i, l).unwrap(), expand_F_closed_form(i, l).unwrap(), "F_{i} ℓ={l}");
            }
        }
        let w: Vec<usize> = (0..3).map(|i| expand_F(i, 1).unwrap().weight()).collect();
        assert_eq!(w, vec![3, 6, 9]);
        assert_eq!(expand_F(1, 2).unwrap().weight(), 18);
        // S = (0,0): c = 3 ≡ 0
        assert_eq!(expand_F(0, 1).unwrap().coeffs[0], 0);
    }

    #[test]
    fn combos() {
        assert_eq!(min_combo_weight(1).unwrap().0, 3);
        assert_eq!(min_combo_weight(2).unwrap().0, 9);
        let f0 = expand_F(0, 2).unwrap();
        let f1 = expand_F(1, 2).unwrap();
        let w = f0.coeffs.iter().zip(&f1.coeffs).filter(|(a, b)| (**a + 3 - **b) % 3 != 0).count();
        assert_eq!(w, 9);
    }

    #[test]
    fn f_vectors_are_cycles() {
        // D_{0,ℓ} in degree 0 is the all-cut resolution, one box per circle
        for l in 1..=3 {
            let c = build_sl3_complex(0, l, Basis::B1).unwrap();
            let dm: &GFMatrix = &c.diff(0);
            for i in 0..3 {
                let f = expand_F(i, l).unwrap();
                let v = GFVector::from_dense(crate::Field::GF3, &f.coeffs);
                assert!(dm.mul_vec(&v).is_zero(), "F_{i} ℓ={l}");
            }
        }
    }

    #[test]
    fn tier_two_first() {
        let r = sl3_unknot_params(1, Tier::Complex, Method::Auto, &Unlimited, &Sequential).unwrap();
        assert_eq!(r.measured_n, Some(39));
        assert_eq!(r.d_hat, Some([3, 3]));
        assert!(r.ok && r.exact, "{r:?}");
        assert_eq!(r.witness.unwrap().weight(), 3);
    }
}
