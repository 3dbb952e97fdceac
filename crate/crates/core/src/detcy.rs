//! Invariants of determinantal Calabi-Yau threefolds.
//!
//! A pair `(E, F)` of rank `n+1` bundles on a fourfold `M` and a general
//! section `sigma` of `E^v ⊗ F` give the nodal hypersurface `D_n(sigma)` and
//! its small resolution `X_F`. With `L` and `H` the two natural divisors,
//!
//! ```text
//! H^k L^{3-k} = ∫ H_M^k c_{4-k}(E - F^v)
//! c2 · H      = ∫ c2(T_M) c1(E - F^v) H_M
//! c2 · L      = ∫ c2(T_M) c2(E - F^v) - #ODP
//! #ODP        = ∫ c2(F - E^v)^2 - c1(F - E^v) c3(F - E^v)
//! ```

use std::sync::Arc;

use crate::chern::BundleExpr;
use crate::error::{Error, Result};
use crate::gradedring::{q, to_i64, RingClass};
use crate::spaces::{catalog_get, SpaceModel};
use crate::Case;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Enforce `c1(E) + c1(F) = c1(T_M)`.
    CalabiYau,
    /// Intersection numbers only; no canonical-class condition.
    General,
}

#[derive(Clone, Debug)]
pub struct DetPairConfig {
    label: String,
    space: Arc<SpaceModel>,
    e: BundleExpr,
    f: BundleExpr,
    h: RingClass,
    mode: Mode,
}

impl DetPairConfig {
    pub fn new(
        label: impl Into<String>,
        space: Arc<SpaceModel>,
        e: BundleExpr,
        f: BundleExpr,
        h: RingClass,
        mode: Mode,
    ) -> Result<Self> {
        let label = label.into();
        if space.dimension() != 4 {
            return Err(Error::Configuration(format!(
                "`{label}`: ambient `{}` has dimension {}, expected 4",
                space.name(),
                space.dimension()
            )));
        }
        if e.rank() != f.rank() || e.rank() < 1 {
            return Err(Error::Configuration(format!(
                "`{label}`: ranks {} and {} must agree and be positive",
                e.rank(),
                f.rank()
            )));
        }
        for (what, ring) in [("E", e.ring()), ("F", f.ring()), ("H_M", h.ring())] {
            if !Arc::ptr_eq(ring, space.ring()) {
                return Err(Error::Configuration(format!(
                    "`{label}`: {what} does not live on `{}`",
                    space.name()
                )));
            }
        }
        if !h.is_homogeneous_of_degree(1) {
            return Err(Error::Configuration(format!("`{label}`: H_M must be a divisor")));
        }
        if mode == Mode::CalabiYau && &e.c1() + &f.c1() != space.tangent().c1() {
            return Err(Error::Configuration(format!(
                "`{label}`: c1(E) + c1(F) = {} differs from c1(T) = {}",
                &e.c1() + &f.c1(),
                space.tangent().c1()
            )));
        }
        Ok(DetPairConfig {
            label,
            space,
            e,
            f,
            h,
            mode,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn space(&self) -> &Arc<SpaceModel> {
        &self.space
    }

    pub fn e(&self) -> &BundleExpr {
        &self.e
    }

    pub fn f(&self) -> &BundleExpr {
        &self.f
    }

    pub fn h(&self) -> &RingClass {
        &self.h
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> i64 {
        self.e.rank() - 1
    }

    /// The pair with the roles of `E` and `F` exchanged, describing `X_E`.
    pub fn swapped(&self) -> DetPairConfig {
        DetPairConfig {
            label: format!("{} (dual side)", self.label),
            space: Arc::clone(&self.space),
            e: self.f.clone(),
            f: self.e.clone(),
            h: self.h.clone(),
            mode: self.mode,
        }
    }

    pub fn e_minus_f_dual(&self) -> Result<BundleExpr> {
        self.e.virtual_difference(&self.f.dual())
    }

    pub fn f_minus_e_dual(&self) -> Result<BundleExpr> {
        self.f.virtual_difference(&self.e.dual())
    }

    fn ensure_cy(&self, what: &str) -> Result<()> {
        if self.mode == Mode::CalabiYau {
            Ok(())
        } else {
            Err(Error::Configuration(format!(
                "{what} needs a Calabi-Yau configuration, `{}` is not one",
                self.label
            )))
        }
    }

    fn integral(&self, class: &RingClass, what: &str) -> Result<i64> {
        class.integrate_int(&format!("{what} of `{}`", self.label))
    }
}

/// `(L^3, L^2 H, L H^2, H^3)`.
pub fn triple_products(cfg: &DetPairConfig) -> Result<[i64; 4]> {
    let v = cfg.e_minus_f_dual()?;
    let names = ["L^3", "L^2 H", "L H^2", "H^3"];
    let mut out = [0; 4];
    for k in 0..4 {
        let class = &cfg.h.pow(k as u32) * &v.c(4 - k as i64);
        out[k] = cfg.integral(&class, names[k])?;
    }
    Ok(out)
}

pub fn odp_count(cfg: &DetPairConfig) -> Result<i64> {
    let w = cfg.f_minus_e_dual()?;
    let class = &w.c(2).pow(2) - &(&w.c(1) * &w.c(3));
    cfg.integral(&class, "ODP count")
}

/// `(c2(T_X) · L, c2(T_X) · H)`.
pub fn c2_pairings(cfg: &DetPairConfig) -> Result<(i64, i64)> {
    cfg.ensure_cy("c2 pairing")?;
    let v = cfg.e_minus_f_dual()?;
    let c2t = cfg.space.tangent().c(2);
    let c2h = cfg.integral(&(&(&c2t * &v.c(1)) * &cfg.h), "c2 H")?;
    let c2l = cfg.integral(&(&c2t * &v.c(2)), "c2 L")? - odp_count(cfg)?;
    Ok((c2l, c2h))
}

/// Porteous class of `D_k(sigma)` for `sigma: E^v -> F`:
/// `det( c_{f-k+j-i}(F - E^v) )` of size `e - k`.
pub fn porteous_class(e: &BundleExpr, f: &BundleExpr, k: i64) -> Result<RingClass> {
    let (re, rf) = (e.rank(), f.rank());
    if k < 0 || k >= re.min(rf) {
        return Err(Error::Usage(format!(
            "degeneracy rank {k} out of range for ranks {re} and {rf}"
        )));
    }
    let w = f.virtual_difference(&e.dual())?;
    let size = (re - k) as usize;
    let matrix: Vec<Vec<RingClass>> = (0..size as i64)
        .map(|i| {
            (0..size as i64)
                .map(|j| {
                    let d = rf - k + j - i;
                    if d == 0 {
                        w.ring().one()
                    } else {
                        w.c(d)
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(&matrix, &w.ring().one()))
}

/// Cofactor expansion along the first row.
fn determinant(m: &[Vec<RingClass>], one: &RingClass) -> RingClass {
    match m.len() {
        0 => one.clone(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = one.scale(&q(0));
            for col in 0..n {
                let minor: Vec<Vec<RingClass>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, c)| c.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][col] * &determinant(&minor, one);
                acc = if col % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Euler number of a smooth anticanonical threefold `Y ⊂ M`:
/// `∫ c1 · [c(T_M) / (1 + c1)]_3`.
pub fn anticanonical_euler(space: &SpaceModel) -> Result<i64> {
    if space.dimension() != 4 {
        return Err(Error::Configuration(format!(
            "`{}` is not a fourfold",
            space.name()
        )));
    }
    let t = space.tangent();
    let c1 = t.c1();
    let c_y = t.total_chern() * &(&space.ring().one() + &c1).inverse()?;
    (&c1 * &c_y.component(3)).integrate_int(&format!("anticanonical Euler number of `{}`", space.name()))
}

/// `(chi_top(X_F), h^{2,1}(X_F))`, using `h^{1,1} = 1` on the smoothing.
pub fn cy_hodge(cfg: &DetPairConfig) -> Result<(i64, i64)> {
    cfg.ensure_cy("Hodge numbers")?;
    let chi_y = anticanonical_euler(&cfg.space)?;
    if chi_y % 2 != 0 {
        return Err(Error::Consistency(format!(
            "odd Euler number {chi_y} for an anticanonical threefold"
        )));
    }
    let odp = odp_count(cfg)?;
    let h21_y = 1 - chi_y / 2;
    Ok((chi_y + 2 * odp, h21_y - odp + 1))
}

/// One row of intersection numbers of `X_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantRow {
    pub l3: i64,
    pub l2h: i64,
    pub lh2: i64,
    pub h3: i64,
    pub c2l: i64,
    pub c2h: i64,
    pub odp: i64,
}

impl InvariantRow {
    pub const COLUMNS: [&'static str; 7] = ["L^3", "L^2H", "LH^2", "H^3", "c2.L", "c2.H", "odp"];

    pub fn values(&self) -> [i64; 7] {
        [
            self.l3, self.l2h, self.lh2, self.h3, self.c2l, self.c2h, self.odp,
        ]
    }

    pub fn triples(&self) -> [i64; 4] {
        [self.l3, self.l2h, self.lh2, self.h3]
    }
}

pub fn invariant_row(cfg: &DetPairConfig) -> Result<InvariantRow> {
    let [l3, l2h, lh2, h3] = triple_products(cfg)?;
    let (c2l, c2h) = c2_pairings(cfg)?;
    Ok(InvariantRow {
        l3,
        l2h,
        lh2,
        h3,
        c2l,
        c2h,
        odp: odp_count(cfg)?,
    })
}

/// The defining pair of `X_F` over each Fano fourfold:
/// `(O^2, p*S^v(1))` on V4, `(O^2, S^v(1))` on V5, `(O^3, S(2) + O(1))` on Gr(2,4).
pub fn main_pair(case: Case) -> Result<DetPairConfig> {
    match case {
        Case::V4 | Case::V5 => {
            let m = catalog_get(case.id())?;
            let f = m.bundle("F")?.clone();
            DetPairConfig::new(case.id(), Arc::clone(&m), m.trivial(2), f, m.h().clone(), Mode::CalabiYau)
        }
        Case::Gr24 => {
            let m = catalog_get("gr24")?;
            let s2 = m.bundle("S")?.twist_by_line(&m.h().scale(&q(2)))?;
            let f = s2.whitney_sum(&m.line(1))?.with_label("S(2)+O(1)");
            DetPairConfig::new("gr24", Arc::clone(&m), m.trivial(3), f, m.h().clone(), Mode::CalabiYau)
        }
    }
}

/// The pair `(wedge^3 T(-1), O^2 + O(1)^2)` on P4 describing the flopped
/// model of the V5 threefold.
pub fn v5_flop_side() -> Result<DetPairConfig> {
    let m = catalog_get("p4")?;
    let e = m.bundle("T(-1)")?.exterior_top_minus_one()?;
    let f = m
        .trivial(2)
        .whitney_sum(&m.line(1))?
        .whitney_sum(&m.line(1))?
        .with_label("O^2+O(1)^2");
    DetPairConfig::new("v5+", Arc::clone(&m), e, f, m.h().clone(), Mode::CalabiYau)
}

/// The pair on the blow-up of P4 describing the flopped model of the Gr(2,4)
/// threefold: `E = f* wedge^2 T'` and `F = O(xi)^3`, with `H' = xi`.
///
/// Run without the Calabi-Yau check: only intersection numbers are used.
pub fn blp4_pair() -> Result<DetPairConfig> {
    let m = catalog_get("blp4")?;
    let e = m.bundle("f*wedge2T'")?.clone();
    let oxi = m.bundle("O(xi)")?;
    let f = oxi.whitney_sum(oxi)?.whitney_sum(oxi)?.with_label("O(xi)^3");
    DetPairConfig::new("gr24+", Arc::clone(&m), e, f, m.h().clone(), Mode::General)
}

/// `∫_{P3} [D_1]` for `O^2 -> V(1)` with `V = Omega(2) + O`: the number of
/// planes in the V4 construction.
pub fn porteous_planes_p3() -> Result<i64> {
    let m = catalog_get("p3")?;
    let omega2 = m.bundle("Omega")?.twist_by_line(&m.h().scale(&q(2)))?;
    let v = omega2.whitney_sum(&m.trivial(1))?;
    let f = v.twist_by_line(m.h())?;
    let class = porteous_class(&m.trivial(2), &f, 1)?;
    to_i64(&class.integrate(), "Porteous plane count")
}

/// Degree of the Porteous locus of `O^2 -> wedge^3 T(-1)` on P4.
pub fn porteous_sigma_degree_p4() -> Result<i64> {
    let m = catalog_get("p4")?;
    let f = m.bundle("T(-1)")?.exterior_top_minus_one()?;
    let class = porteous_class(&m.trivial(2), &f, 1)?;
    (&class * m.h()).integrate_int("Porteous locus degree")
}
