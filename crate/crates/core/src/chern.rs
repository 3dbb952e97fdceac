//! Chern-class calculus for genuine and virtual bundles.

use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::gradedring::{q, Q, Ring, RingClass};

/// A (possibly virtual) bundle: rank plus total Chern class.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleExpr {
    rank: i64,
    total_chern: RingClass,
    label: String,
}

impl BundleExpr {
    pub fn new(rank: i64, total_chern: RingClass, label: impl Into<String>) -> Result<Self> {
        if !total_chern.degree0().is_one() {
            return Err(Error::Configuration(format!(
                "total Chern class must start with 1, got {}",
                total_chern.degree0()
            )));
        }
        Ok(BundleExpr {
            rank,
            total_chern,
            label: label.into(),
        })
    }

    pub fn trivial(ring: &Arc<Ring>, rank: i64) -> Self {
        BundleExpr {
            rank,
            total_chern: ring.one(),
            label: format!("O^{rank}"),
        }
    }

    /// The line bundle with first Chern class `c1`.
    pub fn line(c1: &RingClass, label: impl Into<String>) -> Result<Self> {
        ensure_divisor(c1)?;
        BundleExpr::new(1, &c1.ring().one() + c1, label)
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn total_chern(&self) -> &RingClass {
        &self.total_chern
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.total_chern.ring()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `c_k`; zero for negative `k`.
    pub fn c(&self, k: i64) -> RingClass {
        if k < 0 {
            self.ring().zero()
        } else {
            self.total_chern.component(k as u32)
        }
    }

    pub fn c1(&self) -> RingClass {
        self.c(1)
    }

    pub fn has_integral_chern_classes(&self) -> bool {
        self.total_chern.is_integral()
    }

    /// Nonnegative rank and no Chern classes above the rank.
    pub fn is_genuine(&self) -> bool {
        self.rank >= 0
            && (self.rank as u32 + 1..=self.ring().top_degree())
                .all(|k| self.total_chern.component(k).is_zero())
    }

    fn ensure_genuine(&self, op: &str) -> Result<()> {
        if self.is_genuine() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{op} of the virtual bundle `{}` (rank {})",
                self.label, self.rank
            )))
        }
    }

    pub fn whitney_sum(&self, other: &BundleExpr) -> Result<BundleExpr> {
        Ok(BundleExpr {
            rank: self.rank + other.rank,
            total_chern: self.total_chern.try_mul(&other.total_chern)?,
            label: format!("{} + {}", self.label, other.label),
        })
    }

    /// The virtual bundle `self - other`.
    pub fn virtual_difference(&self, other: &BundleExpr) -> Result<BundleExpr> {
        let inv = other.total_chern.inverse()?;
        Ok(BundleExpr {
            rank: self.rank - other.rank,
            total_chern: self.total_chern.try_mul(&inv)?,
            label: format!("{} - ({})", self.label, other.label),
        })
    }

    pub fn dual(&self) -> BundleExpr {
        let ring = self.ring();
        let mut c = ring.zero();
        for k in 0..=ring.top_degree() {
            let part = self.total_chern.component(k);
            c = if k % 2 == 0 { &c + &part } else { &c - &part };
        }
        BundleExpr {
            rank: self.rank,
            total_chern: c,
            label: format!("({})^v", self.label),
        }
    }

    /// `self ⊗ L` where `c1(L) = lambda`.
    pub fn twist_by_line(&self, lambda: &RingClass) -> Result<BundleExpr> {
        self.ensure_genuine("twist")?;
        ensure_divisor(lambda)?;
        let ring = self.ring();
        if !Arc::ptr_eq(ring, lambda.ring()) {
            return Err(Error::Usage("twisting class lives in another ring".into()));
        }
        let r = self.rank;
        let mut total = ring.zero();
        for k in 0..=ring.top_degree() as i64 {
            for i in 0..=k.min(r) {
                let coef = binomial(r - i, k - i);
                if coef == 0 {
                    continue;
                }
                let term = &self.c(i) * &lambda.pow((k - i) as u32);
                total = &total + &term.scale(&q(coef));
            }
        }
        Ok(BundleExpr {
            rank: r,
            total_chern: total,
            label: format!("{}({})", self.label, lambda),
        })
    }

    pub fn tensor(&self, other: &BundleExpr) -> Result<BundleExpr> {
        self.ensure_genuine("tensor product")?;
        other.ensure_genuine("tensor product")?;
        let ch = self.to_character().try_mul(&other.to_character())?;
        Ok(BundleExpr::from_character(self.rank * other.rank, &ch)?
            .with_label(format!("{} * {}", self.label, other.label)))
    }

    /// `∧^{r-1} E = E^v ⊗ det E`.
    pub fn exterior_top_minus_one(&self) -> Result<BundleExpr> {
        self.ensure_genuine("exterior power")?;
        if self.rank < 2 {
            return Err(Error::Unsupported(format!(
                "top-minus-one exterior power needs rank >= 2, `{}` has rank {}",
                self.label, self.rank
            )));
        }
        Ok(self
            .dual()
            .twist_by_line(&self.c1())?
            .with_label(format!("wedge^{}({})", self.rank - 1, self.label)))
    }

    /// Chern character `rank + sum_k p_k / k!` via Newton's identities.
    pub fn to_character(&self) -> RingClass {
        let ring = self.ring();
        let top = ring.top_degree() as usize;
        let e: Vec<RingClass> = (0..=top).map(|k| self.c(k as i64)).collect();
        let mut p: Vec<RingClass> = vec![ring.zero(); top + 1];
        let mut ch = ring.constant(q(self.rank));
        let mut fact = Q::one();
        for k in 1..=top {
            let mut pk = e[k].scale(&q(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
            for i in 1..k {
                let t = &e[i] * &p[k - i];
                pk = if i % 2 == 1 { &pk + &t } else { &pk - &t };
            }
            fact *= q(k as i64);
            ch = &ch + &pk.scale(&fact.recip());
            p[k] = pk;
        }
        ch
    }

    /// Inverse of [`BundleExpr::to_character`].
    pub fn from_character(rank: i64, ch: &RingClass) -> Result<BundleExpr> {
        if *ch.degree0() != q(rank) {
            return Err(Error::Usage(format!(
                "character has rank {} but rank {rank} was requested",
                ch.degree0()
            )));
        }
        let ring = ch.ring();
        let top = ring.top_degree() as usize;
        let mut fact = Q::one();
        let mut p = vec![ring.zero(); top + 1];
        for (k, slot) in p.iter_mut().enumerate().skip(1) {
            fact *= q(k as i64);
            *slot = ch.component(k as u32).scale(&fact);
        }
        let mut e = vec![ring.one()];
        for k in 1..=top {
            let mut acc = ring.zero();
            for i in 1..=k {
                let t = &e[k - i] * &p[i];
                acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            e.push(acc.scale(&Q::new(1.into(), (k as i64).into())));
        }
        let total = e.iter().fold(ring.zero(), |acc, x| &acc + x);
        BundleExpr::new(rank, total, "from character")
    }

    /// Re-expresses the bundle in a ring with the same presentation.
    pub fn transfer(&self, target: &Arc<Ring>) -> Result<BundleExpr> {
        Ok(BundleExpr {
            rank: self.rank,
            total_chern: self.total_chern.transfer(target)?,
            label: self.label.clone(),
        })
    }

    /// Pullback along the ring map given by generator images.
    pub fn pullback(&self, images: &[RingClass], label: impl Into<String>) -> Result<BundleExpr> {
        BundleExpr::new(self.rank, self.total_chern.substitute(images)?, label)
    }
}

fn ensure_divisor(c: &RingClass) -> Result<()> {
    if c.is_homogeneous_of_degree(1) {
        Ok(())
    } else {
        Err(Error::Usage(format!("`{c}` is not a divisor class")))
    }
}

/// `C(n, k)` for `n >= 0`, zero outside `0 <= k <= n`.
fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedring::{q_frac, truncated_polynomial_ring};

    fn p3() -> (Arc<Ring>, RingClass) {
        let r = truncated_polynomial_ring("p3", "h", 3).unwrap();
        let h = r.generator(0);
        (r, h)
    }

    #[test]
    fn split_sum() {
        let (r, h) = p3();
        let o1 = BundleExpr::line(&h, "O(1)").unwrap();
        let s = o1.whitney_sum(&o1).unwrap();
        assert_eq!(s.rank(), 2);
        let expected = &(&r.one() + &h.scale(&q(2))) + &h.pow(2);
        assert_eq!(s.total_chern(), &expected);
        let zero = BundleExpr::trivial(&r, 0);
        assert_eq!(o1.whitney_sum(&zero).unwrap().total_chern(), o1.total_chern());
    }

    #[test]
    fn self_difference_is_trivial() {
        let (r, h) = p3();
        let e = BundleExpr::line(&h.scale(&q(3)), "O(3)").unwrap();
        let d = e.virtual_difference(&e).unwrap();
        assert_eq!(d.rank(), 0);
        assert_eq!(d.total_chern(), &r.one());
    }

    #[test]
    fn dual_of_line() {
        let (_, h) = p3();
        let e = BundleExpr::line(&h, "O(1)").unwrap();
        assert_eq!(e.dual().c1(), -&h);
        assert_eq!(e.dual().dual().total_chern(), e.total_chern());
    }

    #[test]
    fn twist_of_trivial_line() {
        let (r, h) = p3();
        let t = BundleExpr::trivial(&r, 1).twist_by_line(&h).unwrap();
        assert_eq!(t.total_chern(), &(&r.one() + &h));
    }

    #[test]
    fn twist_rejects_virtual() {
        let (r, h) = p3();
        let o1 = BundleExpr::line(&h, "O(1)").unwrap();
        let v = BundleExpr::trivial(&r, 1).virtual_difference(&o1).unwrap();
        assert!(matches!(v.twist_by_line(&h), Err(Error::Unsupported(_))));
        assert!(matches!(v.tensor(&o1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn wedge_two_of_twisted_tangent_on_p3() {
        let (r, h) = p3();
        // T(-1) on P3: c = 1 / (1 - h)
        let c = (&r.one() - &h).inverse().unwrap();
        let t = BundleExpr::new(3, c, "T(-1)").unwrap();
        let w = t.exterior_top_minus_one().unwrap();
        let expected = &(&r.one() + &h.scale(&q(2))) + &h.pow(2).scale(&q(2));
        assert_eq!(w.total_chern(), &expected);
    }

    #[test]
    fn rank_two_exterior_is_identity() {
        let (r, h) = p3();
        let e = BundleExpr::line(&h, "a")
            .unwrap()
            .whitney_sum(&BundleExpr::line(&h.scale(&q(2)), "b").unwrap())
            .unwrap();
        assert_eq!(e.exterior_top_minus_one().unwrap().total_chern(), e.total_chern());
        assert!(BundleExpr::trivial(&r, 1).exterior_top_minus_one().is_err());
    }

    #[test]
    fn character_of_line_is_exponential() {
        let (_, h) = p3();
        let e = BundleExpr::line(&h, "O(1)").unwrap();
        assert_eq!(e.to_character(), h.exp().unwrap());
        let back = BundleExpr::from_character(1, &e.to_character()).unwrap();
        assert_eq!(back.total_chern(), e.total_chern());
        assert_eq!(h.exp().unwrap().component(2), h.pow(2).scale(&q_frac(1, 2)));
    }

    #[test]
    fn tensor_of_lines_matches_twist() {
        let (_, h) = p3();
        let a = BundleExpr::line(&h.scale(&q(2)), "O(2)").unwrap();
        let b = BundleExpr::line(&h.scale(&q(-3)), "O(-3)").unwrap();
        assert_eq!(
            a.tensor(&b).unwrap().total_chern(),
            a.twist_by_line(&b.c1()).unwrap().total_chern()
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, -1), 0);
    }
}
