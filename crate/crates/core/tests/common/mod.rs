//! Independent oracles and random generators shared by the property suite
//! and the acceptance harness.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use conewright_core::chern::BundleExpr;
use conewright_core::gradedring::{q, Q, Ring, RingClass};
use conewright_core::spaces::{catalog_get, SpaceModel};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

// ---------------------------------------------------------------------------
// Schubert calculus on Gr(2, n) by the Pieri rule alone.

/// Schubert classes `sigma_{a,b}`, `n-2 >= a >= b >= 0`, with integer coefficients.
pub type SchubertVec = BTreeMap<(u32, u32), i64>;

pub fn partitions(n: u32) -> Vec<(u32, u32)> {
    let k = n - 2;
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=a {
            out.push((a, b));
        }
    }
    out
}

/// `sigma_k · v`.
fn pieri(n: u32, k: i64, v: &SchubertVec) -> SchubertVec {
    let mut out = SchubertVec::new();
    if k < 0 || k > (n - 2) as i64 {
        return out;
    }
    let k = k as u32;
    for (&(a, b), &c) in v {
        let total = a + b + k;
        for d in b..=a {
            let Some(top) = total.checked_sub(d) else { continue };
            if top >= a && top <= n - 2 {
                *out.entry((top, d)).or_default() += c;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn sub(x: SchubertVec, y: SchubertVec) -> SchubertVec {
    let mut out = x;
    for (k, c) in y {
        *out.entry(k).or_default() -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `sigma_{a,b} · v` via `sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}`.
pub fn schubert_mul(n: u32, (a, b): (u32, u32), v: &SchubertVec) -> SchubertVec {
    if b == 0 {
        return pieri(n, a as i64, v);
    }
    let first = pieri(n, a as i64, &pieri(n, b as i64, v));
    let second = pieri(n, a as i64 + 1, &pieri(n, b as i64 - 1, v));
    sub(first, second)
}

pub fn schubert_product(n: u32, l: (u32, u32), m: (u32, u32)) -> SchubertVec {
    schubert_mul(n, m, &SchubertVec::from([(l, 1)]))
}

/// `sigma_k = c_k(Q)` in the Chern-class presentation.
pub fn special_class(ring: &Arc<Ring>, k: i64) -> RingClass {
    if k < 0 {
        return ring.zero();
    }
    let c_s = &(&ring.one() + &ring.generator(0)) + &ring.generator(1);
    c_s.inverse().unwrap().component(k as u32)
}

pub fn schubert_class(ring: &Arc<Ring>, (a, b): (u32, u32)) -> RingClass {
    let s = |k: i64| special_class(ring, k);
    &(&s(a as i64) * &s(b as i64)) - &(&s(a as i64 + 1) * &s(b as i64 - 1))
}

pub fn schubert_vec_class(ring: &Arc<Ring>, v: &SchubertVec) -> RingClass {
    v.iter().fold(ring.zero(), |acc, (p, c)| {
        &acc + &schubert_class(ring, *p).scale(&q(*c))
    })
}

/// Every pairwise Schubert product in Gr(2, n) agrees with Pieri; returns
/// the number of products compared.
pub fn pieri_agreement(n: u32) -> Result<usize, String> {
    let space = catalog_get(&format!("gr2{n}")).map_err(|e| e.to_string())?;
    let ring = space.ring();
    let top = 2 * (n - 2);
    let mut count = 0;
    for l in partitions(n) {
        for m in partitions(n) {
            if l.0 + l.1 + m.0 + m.1 > top {
                continue;
            }
            let lhs = &schubert_class(ring, l) * &schubert_class(ring, m);
            let rhs = schubert_vec_class(ring, &schubert_product(n, l, m));
            if lhs != rhs {
                return Err(format!("sigma{l:?} * sigma{m:?}: ring {lhs} vs Pieri {rhs}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `∫ sigma_1^{2(n-2)}` from the Pieri rule.
pub fn pieri_degree(n: u32) -> i64 {
    let mut v = SchubertVec::from([((0, 0), 1)]);
    for _ in 0..2 * (n - 2) {
        v = pieri(n, 1, &v);
    }
    v.get(&(n - 2, n - 2)).copied().unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Complete intersections in projective space.

/// Coefficients of `c(T) = (1+h)^{N+1} / prod (1 + d h)` up to `h^upto`.
pub fn ci_chern(big_n: i64, degrees: &[i64], upto: usize) -> Vec<i64> {
    let mut c = vec![0i64; upto + 1];
    // (1+h)^{N+1}
    for (k, slot) in c.iter_mut().enumerate() {
        *slot = binom(big_n + 1, k as i64);
    }
    for &d in degrees {
        // divide by (1 + d h)
        for k in 1..=upto {
            c[k] -= d * c[k - 1];
        }
    }
    c
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Euler number of a threefold complete intersection.
pub fn ci_threefold_euler(big_n: i64, degrees: &[i64]) -> i64 {
    assert_eq!(big_n - degrees.len() as i64, 3);
    ci_chern(big_n, degrees, 3)[3] * degrees.iter().product::<i64>()
}

/// `∫ c_i(T) h^{dim-i}` for `i = 0..=dim` on a complete intersection.
pub fn ci_pairings(big_n: i64, degrees: &[i64]) -> Vec<i64> {
    let dim = (big_n - degrees.len() as i64) as usize;
    let deg: i64 = degrees.iter().product();
    ci_chern(big_n, degrees, dim).iter().map(|c| c * deg).collect()
}

/// Pairings `∫ c_i(T_V4) H^{4-i}` in the double-cover model.
pub fn v4_model_pairings() -> Vec<Q> {
    let m = catalog_get("v4").unwrap();
    (0..=4)
        .map(|i| (&m.tangent().c(i) * &m.h().pow(4 - i as u32)).integrate())
        .collect()
}

// ---------------------------------------------------------------------------
// Random classes and bundles on catalog spaces.

pub const RING_NAMES: [&str; 10] = [
    "p1", "p2", "p3", "p4", "p5", "gr24", "gr25", "blp4", "v4", "v5",
];

pub fn space(i: usize) -> Arc<SpaceModel> {
    catalog_get(RING_NAMES[i % RING_NAMES.len()]).unwrap()
}

pub fn class_from(ring: &Arc<Ring>, coords: &[i64]) -> RingClass {
    let dim = ring.total_dimension();
    let flat: Vec<Q> = coords.iter().cycle().take(dim).map(|c| q(*c)).collect();
    ring.from_coordinates(&flat).unwrap()
}

/// `(space index, three coordinate vectors)`.
pub fn triple_input() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
    let v = || prop::collection::vec(-4i64..=4, 12);
    (0..RING_NAMES.len(), v(), v(), v())
}

/// A recipe for a genuine bundle: each entry is `(kind, x, y)`.
pub fn bundle_recipe() -> impl Strategy<Value = (usize, Vec<(u8, i64, i64)>)> {
    (
        0..RING_NAMES.len(),
        prop::collection::vec((0u8..4, -2i64..=2, -2i64..=2), 1..=3),
    )
}

/// A divisor `x g_0 + y g_1` built from the degree-one generators.
pub fn divisor(space: &SpaceModel, x: i64, y: i64) -> RingClass {
    let ring = space.ring();
    let deg1: Vec<usize> = (0..ring.nvars())
        .filter(|&i| ring.presentation().generators[i].degree == 1)
        .collect();
    let mut d = space.h().scale(&q(x));
    if let Some(&j) = deg1.get(1) {
        d = &d + &ring.generator(j).scale(&q(y));
    }
    d
}

pub fn build_bundle(space: &SpaceModel, recipe: &[(u8, i64, i64)]) -> BundleExpr {
    let names: Vec<&str> = space.bundle_names().collect();
    let mut acc = space.trivial(0);
    for &(kind, x, y) in recipe {
        let piece = match kind {
            0 => BundleExpr::line(&divisor(space, x, y), "line").unwrap(),
            1 => space.tangent().clone(),
            2 => space
                .bundle(names[(x + 2) as usize % names.len()])
                .unwrap()
                .clone(),
            _ => space
                .bundle(names[(y + 2) as usize % names.len()])
                .unwrap()
                .twist_by_line(&divisor(space, x, 0))
                .unwrap(),
        };
        acc = acc.whitney_sum(&piece).unwrap();
    }
    acc
}

// ---------------------------------------------------------------------------
// Properties.

pub fn ring_axioms(
    (i, x, y, z): (usize, Vec<i64>, Vec<i64>, Vec<i64>),
) -> Result<(), TestCaseError> {
    let sp = space(i);
    let r = sp.ring();
    let (a, b, c) = (class_from(r, &x), class_from(r, &y), class_from(r, &z));
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&r.one() * &a, a.clone());
    prop_assert_eq!(&(&a + &b) - &b, a);
    Ok(())
}

/// Re-reducing a normal-form class through its monomial expansion is the
/// identity, and integration is linear.
pub fn normal_form_and_linearity(
    (i, x, y, z): (usize, Vec<i64>, Vec<i64>, Vec<i64>),
) -> Result<(), TestCaseError> {
    let sp = space(i);
    let r = sp.ring();
    let (a, b) = (class_from(r, &x), class_from(r, &y));
    let again = a
        .terms()
        .iter()
        .fold(r.zero(), |acc, (m, c)| &acc + &r.monomial(m).scale(c));
    prop_assert_eq!(&again, &a);
    let s = q(z[0]);
    let t = q(z[1]);
    let lhs = (&a.scale(&s) + &b.scale(&t)).integrate();
    prop_assert_eq!(lhs, &s * a.integrate() + &t * b.integrate());
    Ok(())
}

pub fn bundle_identities(
    (i, recipe): (usize, Vec<(u8, i64, i64)>),
    (j, other): (usize, Vec<(u8, i64, i64)>),
    (x, y): (i64, i64),
) -> Result<(), TestCaseError> {
    let _ = j;
    let sp = space(i);
    let e = build_bundle(&sp, &recipe);
    let f = build_bundle(&sp, &other);
    // Whitney
    let sum = e.whitney_sum(&f).unwrap();
    let product = e.total_chern() * f.total_chern();
    prop_assert_eq!(sum.total_chern(), &product);
    prop_assert_eq!(sum.rank(), e.rank() + f.rank());
    // difference inverts sum
    let back = sum.virtual_difference(&f).unwrap();
    prop_assert_eq!(back.total_chern(), e.total_chern());
    // dual is an involution and anti-commutes with c1
    let double_dual = e.dual().dual();
    prop_assert_eq!(double_dual.total_chern(), e.total_chern());
    prop_assert_eq!(e.dual().c1(), -&e.c1());
    // twist is invertible
    let d = divisor(&sp, x, y);
    let tw = e.twist_by_line(&d).unwrap();
    let untwisted = tw.twist_by_line(&-&d).unwrap();
    prop_assert_eq!(untwisted.total_chern(), e.total_chern());
    // genuine bundles built from catalog data have integral classes
    prop_assert!(tw.has_integral_chern_classes());
    Ok(())
}

pub fn character_round_trip(
    (i, recipe): (usize, Vec<(u8, i64, i64)>),
    (x, y): (i64, i64),
) -> Result<(), TestCaseError> {
    let sp = space(i);
    let e = build_bundle(&sp, &recipe);
    let back = BundleExpr::from_character(e.rank(), &e.to_character()).unwrap();
    prop_assert_eq!(back.total_chern(), e.total_chern());
    // tensor with a line bundle is a twist
    let d = divisor(&sp, x, y);
    let line = BundleExpr::line(&d, "L").unwrap();
    let tensored = e.tensor(&line).unwrap();
    let twisted = e.twist_by_line(&d).unwrap();
    prop_assert_eq!(tensored.total_chern(), twisted.total_chern());
    // ch is additive and multiplicative
    let f = build_bundle(&sp, &recipe[..1]);
    prop_assert_eq!(
        e.whitney_sum(&f).unwrap().to_character(),
        &e.to_character() + &f.to_character()
    );
    prop_assert_eq!(
        e.tensor(&f).unwrap().to_character(),
        &e.to_character() * &f.to_character()
    );
    Ok(())
}
