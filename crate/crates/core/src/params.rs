//! Exact parameter sequences of the hierarchical construction.
//!
//! `a_0` is given, `a_k = 2^(a_{k-1})`, `E_k = a_k^2`, `ℓ_1 = E_1`,
//! `ℓ_k = 4 E_k E_{k-2} / E_{k-1}` and `b_k = E_k / E_{k-1}`. Every value is
//! held as a [`Sparse`] number, so generations whose bond counts have
//! exponentially many digits are still exact.

use crate::error::{Error, Result};
use crate::sparse::Sparse;
use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct BouchParams {
    a0: u64,
    generation: usize,
    a: Vec<Sparse>,
    e: Vec<Sparse>,
    ell: Vec<Sparse>,
    b: Vec<Sparse>,
}

impl BouchParams {
    /// Computes and checks all sequences up to generation `j`.
    ///
    /// Fails with `TooLarge` when `a_{j-1}` has more bits than a dense
    /// exponent may hold (e.g. `a0 = 20, j = 4`).
    pub fn new(a0: u64, j: usize) -> Result<Self> {
        if a0 == 0 {
            return Err(Error::InvalidParameter("a0 must be >= 1".into()));
        }
        if j == 0 {
            return Err(Error::InvalidParameter("generation must be >= 1".into()));
        }
        let mut a = vec![Sparse::from_u64(a0)];
        let mut e = vec![Sparse::from_u64(a0).pow(2)];
        for k in 1..=j {
            let prev = a[k - 1]
                .to_biguint()
                .ok_or_else(|| Error::too_large(format!("a_{} for a0={a0}", k - 1), "2^26 bits"))?;
            let exp = BigInt::from(prev);
            e.push(Sparse::pow2(&exp * 2));
            a.push(Sparse::pow2(exp));
        }
        let four = Sparse::from_u64(4);
        let mut ell = vec![e[1].clone()];
        let mut b = Vec::new();
        for k in 2..=j {
            let num = &(&four * &e[k]) * &e[k - 2];
            ell.push(
                num.div_pow2(&e[k - 1])
                    .expect("E_k is a power of two for k >= 1"),
            );
            b.push(
                e[k].div_pow2(&e[k - 1])
                    .expect("E_k is a power of two for k >= 1"),
            );
        }
        let p = BouchParams {
            a0,
            generation: j,
            a,
            e,
            ell,
            b,
        };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let bug = |s: String| Err(Error::InternalMismatch(s));
        for k in 1..=self.generation {
            if self.e[k] <= self.e[k - 1] {
                return bug(format!("E_{k} <= E_{}", k - 1));
            }
            if !self.ell(k).is_integer() {
                return bug(format!("l_{k} is not an integer"));
            }
        }
        let four = Sparse::from_u64(4);
        for k in 2..=self.generation {
            let spacing = &four * &self.e[k - 2];
            if !self.b(k).is_integer() {
                return bug(format!("b_{k} is not an integer"));
            }
            if &(self.b(k) * &spacing) != self.ell(k) {
                return bug(format!("l_{k}/b_{k} != 4 E_{}", k - 2));
            }
            if self.ell(k) <= self.ell(k - 1) {
                return bug(format!("l_{k} <= l_{}", k - 1));
            }
            if k >= 3 {
                if spacing <= *self.ell(k - 2) {
                    return bug(format!("l_{k}/b_{k} <= l_{}", k - 2));
                }
                if self.b(k) <= self.b(k - 1) {
                    return bug(format!("b_{k} <= b_{}", k - 1));
                }
            }
        }
        Ok(())
    }

    pub fn a0(&self) -> u64 {
        self.a0
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn a(&self, k: usize) -> &Sparse {
        &self.a[k]
    }

    pub fn e(&self, k: usize) -> &Sparse {
        &self.e[k]
    }

    /// `ℓ_k`, `1 <= k <= j`.
    pub fn ell(&self, k: usize) -> &Sparse {
        &self.ell[k - 1]
    }

    /// `b_k`, `2 <= k <= j`.
    pub fn b(&self, k: usize) -> &Sparse {
        &self.b[k - 2]
    }

    /// `L_k` from the telescoped products `ℓ_k + Σ_{m<k} b_k⋯b_{m+1} ℓ_m`.
    pub fn bond_count_telescoped(&self, k: usize) -> Sparse {
        let mut total = self.ell(k).clone();
        let mut branch_product = Sparse::one();
        for m in (1..k).rev() {
            branch_product = &branch_product * self.b(m + 1);
            total = &total + &(&branch_product * self.ell(m));
        }
        total
    }

    /// `4 Σ_{m=2}^{k} E_{m-2}/E_{m-1}` as an exact dyadic rational.
    pub fn ratio_sum(&self, k: usize) -> Sparse {
        let mut s = Sparse::zero();
        for m in 2..=k {
            let r = self.e[m - 2]
                .div_pow2(&self.e[m - 1])
                .expect("E_{m-1} is a power of two");
            s = &s + &r;
        }
        &Sparse::from_u64(4) * &s
    }

    /// `L_k = E_k {1 + 4 Σ E_{m-2}/E_{m-1}}`, required to be integral.
    pub fn bond_count_closed(&self, k: usize) -> Result<Sparse> {
        let l = &self.e[k] * &(&Sparse::one() + &self.ratio_sum(k));
        if !l.is_integer() {
            return Err(Error::InternalMismatch(format!(
                "closed-form L_{k} is not integral"
            )));
        }
        Ok(l)
    }

    /// `L_k`, computed both ways and required to agree exactly.
    pub fn bond_count(&self, k: usize) -> Result<Sparse> {
        if k == 0 || k > self.generation {
            return Err(Error::InvalidParameter(format!(
                "generation {k} outside 1..={}",
                self.generation
            )));
        }
        let telescoped = self.bond_count_telescoped(k);
        let closed = self.bond_count_closed(k)?;
        if telescoped != closed {
            return Err(Error::InternalMismatch(format!(
                "L_{k}: telescoped {telescoped} != closed form {closed}"
            )));
        }
        Ok(telescoped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: &Sparse) -> u64 {
        x.to_u64().unwrap()
    }

    #[test]
    fn a0_one_sequences() {
        let p = BouchParams::new(1, 3).unwrap();
        let a: Vec<u64> = (0..=3).map(|k| u(p.a(k))).collect();
        let e: Vec<u64> = (0..=3).map(|k| u(p.e(k))).collect();
        let ell: Vec<u64> = (1..=3).map(|k| u(p.ell(k))).collect();
        let b: Vec<u64> = (2..=3).map(|k| u(p.b(k))).collect();
        assert_eq!(a, vec![1, 2, 4, 16]);
        assert_eq!(e, vec![1, 4, 16, 256]);
        assert_eq!(ell, vec![4, 16, 256]);
        assert_eq!(b, vec![4, 16]);
        let l: Vec<u64> = (1..=3).map(|k| u(&p.bond_count(k).unwrap())).collect();
        assert_eq!(l, vec![4, 32, 768]);
    }

    #[test]
    fn a0_twenty_first_terms() {
        let p = BouchParams::new(20, 2).unwrap();
        assert_eq!(u(p.a(1)), 1 << 20);
        assert_eq!(u(p.e(1)), 1 << 40);
        assert_eq!(p.e(2).as_power_of_two(), Some(BigInt::from(1u64 << 21)));
    }

    #[test]
    fn spacing_identity() {
        for a0 in 1..=4 {
            let p = BouchParams::new(a0, 3).unwrap();
            for k in 2..=3 {
                let spacing = &Sparse::from_u64(4) * p.e(k - 2);
                assert_eq!(&(p.b(k) * &spacing), p.ell(k));
            }
        }
    }

    #[test]
    fn deep_generations_stay_exact() {
        let p = BouchParams::new(1, 6).unwrap();
        let l6 = p.bond_count(6).unwrap();
        assert!(l6 > *p.e(6));
        assert!(l6.to_biguint().is_none());
        assert!(BouchParams::new(20, 3).is_ok());
        assert_eq!(BouchParams::new(20, 4).unwrap_err().name(), "TooLarge");
        assert_eq!(BouchParams::new(1, 7).unwrap_err().name(), "TooLarge");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BouchParams::new(0, 2).is_err());
        assert!(BouchParams::new(1, 0).is_err());
        let p = BouchParams::new(1, 2).unwrap();
        assert!(p.bond_count(3).is_err());
    }
}
