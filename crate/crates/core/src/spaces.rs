//! Catalog of ambient spaces: rings, integrals, tangent bundles and the
//! named bundles used by the determinantal pairs.
//!
//! Grassmannians use the Chern-class presentation `Q[s1, s2] / (c_{n-1}(Q),
//! c_n(Q))` with `s_i = c_i(S)`, so `sigma_1 = -s1` and `sigma_{1,1} = s2`.
//! V4 and V5 are modelled on the numerical level by classes pulled back from
//! Gr(2,4) (a double cover of the quadric Q4 = Gr(2,4)) and restricted from
//! Gr(2,5) (a codimension-two linear section).

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::One;

use crate::chern::BundleExpr;
use crate::error::{Error, Result};
use crate::gradedring::{
    q, truncated_polynomial_ring, Generator, Integration, Monomial, Poly, Ring, RingClass,
    RingPresentation, Q,
};

/// Stable catalog identifiers.
pub const CATALOG_NAMES: [&str; 10] = [
    "p1", "p2", "p3", "p4", "p5", "gr24", "gr25", "blp4", "v4", "v5",
];

/// How a model's integral relates to an upstream ring.
#[derive(Clone, Debug)]
pub enum Derivation {
    Base,
    /// Pullback classes along a finite map of the given degree.
    Cover { base: Arc<Ring>, degree: i64 },
    /// Restriction to a complete linear section whose class upstairs is `section`.
    Section { ambient: Arc<Ring>, section: RingClass },
}

#[derive(Clone, Debug)]
pub struct SpaceModel {
    name: String,
    dimension: u32,
    ring: Arc<Ring>,
    h: RingClass,
    tangent: BundleExpr,
    named: BTreeMap<String, BundleExpr>,
    fano_index: Option<i64>,
    derivation: Derivation,
}

impl SpaceModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// The fundamental divisor `H_M`.
    pub fn h(&self) -> &RingClass {
        &self.h
    }

    pub fn tangent(&self) -> &BundleExpr {
        &self.tangent
    }

    pub fn fano_index(&self) -> Option<i64> {
        self.fano_index
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn bundle_names(&self) -> impl Iterator<Item = &str> {
        self.named.keys().map(String::as_str)
    }

    pub fn bundle(&self, name: &str) -> Result<&BundleExpr> {
        self.named.get(name).ok_or_else(|| {
            Error::Configuration(format!("space `{}` has no bundle `{name}`", self.name))
        })
    }

    pub fn trivial(&self, rank: i64) -> BundleExpr {
        BundleExpr::trivial(&self.ring, rank)
    }

    /// `O(k H_M)`.
    pub fn line(&self, k: i64) -> BundleExpr {
        BundleExpr::line(&self.h.scale(&q(k)), format!("O({k})"))
            .expect("H_M is a divisor class")
    }

    /// `∫ H_M^dim`.
    pub fn degree(&self) -> Q {
        self.h.pow(self.dimension).integrate()
    }
}

/// Integrates `class` through the upstream ring and checks the result against
/// the model's own integral.
pub fn pushforward_check(model: &SpaceModel, class: &RingClass) -> Result<Q> {
    if !Arc::ptr_eq(class.ring(), &model.ring) {
        return Err(Error::Usage(format!(
            "class does not live on `{}`",
            model.name
        )));
    }
    let own = class.integrate();
    let upstream = match &model.derivation {
        Derivation::Base => {
            return Err(Error::Usage(format!(
                "`{}` is not a derived model",
                model.name
            )))
        }
        Derivation::Cover { base, degree } => class.transfer(base)?.integrate() * q(*degree),
        Derivation::Section { ambient, section } => {
            (&class.transfer(ambient)? * section).integrate()
        }
    };
    if own != upstream {
        return Err(Error::Consistency(format!(
            "`{}` integrates {class} to {own}, upstream gives {upstream}",
            model.name
        )));
    }
    Ok(own)
}

fn insert(named: &mut BTreeMap<String, BundleExpr>, key: &str, b: BundleExpr) {
    named.insert(key.to_string(), b.with_label(key));
}

pub fn projective_space(n: u32) -> Result<SpaceModel> {
    let name = format!("p{n}");
    let ring = truncated_polynomial_ring(&name, "h", n)?;
    let h = ring.generator(0);
    let one = ring.one();
    let tangent = BundleExpr::new(n as i64, (&one + &h).pow(n + 1), "T")?;
    let twisted = BundleExpr::new(n as i64, (&one - &h).inverse()?, "T(-1)")?;
    let mut named = BTreeMap::new();
    insert(&mut named, "O(1)", BundleExpr::line(&h, "O(1)")?);
    insert(&mut named, "T(-1)", twisted);
    insert(&mut named, "Omega", tangent.dual());
    Ok(SpaceModel {
        name,
        dimension: n,
        ring,
        h,
        tangent,
        named,
        fano_index: Some(n as i64 + 1),
        derivation: Derivation::Base,
    })
}

/// Presentation of Gr(2,n) with top degree `top` and the given integral.
fn grassmannian_presentation(n: u32, top: u32, integration: Integration) -> RingPresentation {
    let s1 = Poly::var(2, 0);
    let s2 = Poly::var(2, 1);
    let weights = [1, 2];
    let x = &s1 + &s2;
    // (1 + x)^{-1} up to degree n
    let mut inv = Poly::constant(2, Q::one());
    let mut power = Poly::constant(2, Q::one());
    let minus_x = x.scale(&q(-1));
    for _ in 0..n {
        power = &power * &minus_x;
        inv = &inv + &power;
    }
    RingPresentation {
        generators: vec![Generator::new("s1", 1), Generator::new("s2", 2)],
        relations: vec![
            inv.graded_part(&weights, n - 1),
            inv.graded_part(&weights, n),
        ],
        top_degree: top,
        integration,
    }
}

fn point_anchor(n: u32, value: Q) -> Integration {
    Integration::Anchor {
        monomial: Monomial::new(vec![0, n - 2]),
        value,
    }
}

/// Gr(2,n) with `∫ sigma_{1,1}^{n-2} = 1`.
pub fn grassmannian(n: u32) -> Result<SpaceModel> {
    let name = format!("gr2{n}");
    let top = 2 * (n - 2);
    let ring = Ring::new(&name, grassmannian_presentation(n, top, point_anchor(n, Q::one())))?;
    let (s, quot) = tautological_bundles(&ring, n)?;
    let tangent = s.dual().tensor(&quot)?.with_label("T");
    let h = -&ring.generator(0);
    let mut named = BTreeMap::new();
    insert(&mut named, "S", s);
    insert(&mut named, "Q", quot);
    Ok(SpaceModel {
        name,
        dimension: top,
        ring,
        h,
        tangent,
        named,
        fano_index: Some(n as i64),
        derivation: Derivation::Base,
    })
}

fn tautological_bundles(ring: &Arc<Ring>, n: u32) -> Result<(BundleExpr, BundleExpr)> {
    let c_s = &(&ring.one() + &ring.generator(0)) + &ring.generator(1);
    let c_q = c_s.inverse()?;
    Ok((
        BundleExpr::new(2, c_s, "S")?,
        BundleExpr::new(n as i64 - 2, c_q, "Q")?,
    ))
}

/// The blow-up of P4 at a point, `Q[alpha, xi] / (alpha^4, xi^2 - alpha xi)`,
/// with `alpha` pulled back from P3 and `xi` from P4.
pub fn blown_up_p4(p3: &SpaceModel) -> Result<SpaceModel> {
    let a = Poly::var(2, 0);
    let x = Poly::var(2, 1);
    let ring = Ring::new(
        "blp4",
        RingPresentation {
            generators: vec![Generator::new("alpha", 1), Generator::new("xi", 1)],
            relations: vec![a.pow(4), &x.pow(2) - &(&a * &x)],
            top_degree: 4,
            integration: Integration::Anchor {
                monomial: Monomial::new(vec![3, 1]),
                value: Q::one(),
            },
        },
    )?;
    let alpha = ring.generator(0);
    let xi = ring.generator(1);
    let one = ring.one();
    // P1-bundle over P3: pullback of T_P3 plus the relative tangent O(2 xi - alpha)
    // factored as (1 + xi)(1 + xi - alpha) after the Euler sequence.
    let c = &(&(&one + &alpha).pow(4) * &(&one + &xi)) * &(&(&one + &xi) - &alpha);
    let tangent = BundleExpr::new(4, c, "T")?;
    let mut named = BTreeMap::new();
    insert(&mut named, "O(alpha)", BundleExpr::line(&alpha, "O(alpha)")?);
    insert(&mut named, "O(xi)", BundleExpr::line(&xi, "O(xi)")?);
    let wedge = p3.bundle("T(-1)")?.exterior_top_minus_one()?;
    insert(
        &mut named,
        "f*wedge2T'",
        wedge.pullback(std::slice::from_ref(&alpha), "f*wedge2T'")?,
    );
    Ok(SpaceModel {
        name: "blp4".into(),
        dimension: 4,
        ring,
        h: xi,
        tangent,
        named,
        fano_index: None,
        derivation: Derivation::Base,
    })
}

/// V5 as a codimension-two linear section of Gr(2,5).
pub fn build_v5(gr25: &SpaceModel) -> Result<SpaceModel> {
    let sigma1 = gr25.h();
    let section = sigma1.pow(2);
    let nf = gr25.ring().normal_form();
    let values = nf
        .basis(4)
        .iter()
        .map(|m| (m.clone(), (&gr25.ring().monomial(m) * &section).integrate()))
        .collect();
    let ring = Ring::new("v5", grassmannian_presentation(5, 4, Integration::Basis(values)))?;
    let h = -&ring.generator(0);
    let one = ring.one();
    let c_t = &gr25.tangent().total_chern().transfer(&ring)? * &(&one + &h).pow(2).inverse()?;
    let tangent = BundleExpr::new(4, c_t, "T")?;
    let s = gr25.bundle("S")?.transfer(&ring)?;
    let f = s.dual().twist_by_line(&h)?;
    let mut named = BTreeMap::new();
    insert(&mut named, "S", s);
    insert(&mut named, "F", f);
    Ok(SpaceModel {
        name: "v5".into(),
        dimension: 4,
        ring,
        h,
        tangent,
        named,
        fano_index: Some(3),
        derivation: Derivation::Section {
            ambient: Arc::clone(gr25.ring()),
            section,
        },
    })
}

/// V4 as a double cover of Q4 = Gr(2,4) branched along a quadric section.
///
/// Only pullback classes exist on this model: its ring is the Gr(2,4) ring
/// with the integral doubled. The tangent bundle comes from the cover's
/// cotangent sequence, whose cokernel is a line bundle of class `2R` on the
/// ramification divisor `R = H`; GRR for that divisor gives
/// `ch(T_V4) = ch(T_Q4) - (e^{2H} - e^{H})`.
pub fn build_v4(gr24: &SpaceModel) -> Result<SpaceModel> {
    let ring = Ring::new(
        "v4",
        grassmannian_presentation(4, 4, point_anchor(4, q(2))),
    )?;
    let h = -&ring.generator(0);
    let ch_q4 = gr24.tangent().transfer(&ring)?.to_character();
    let correction = &h.scale(&q(2)).exp()? - &h.exp()?;
    let tangent = BundleExpr::from_character(4, &(&ch_q4 - &correction))?.with_label("T");
    let s = gr24.bundle("S")?.transfer(&ring)?;
    let f = s.dual().twist_by_line(&h)?;
    let mut named = BTreeMap::new();
    insert(&mut named, "S", s);
    insert(&mut named, "F", f);
    Ok(SpaceModel {
        name: "v4".into(),
        dimension: 4,
        ring,
        h,
        tangent,
        named,
        fano_index: Some(3),
        derivation: Derivation::Cover {
            base: Arc::clone(gr24.ring()),
            degree: 2,
        },
    })
}

#[derive(Debug)]
pub struct Catalog {
    models: BTreeMap<String, Arc<SpaceModel>>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Result<Arc<SpaceModel>> {
        self.models
            .get(&name.to_ascii_lowercase())
            .cloned()
            .ok_or_else(|| Error::UnknownSpace(name.to_string()))
    }

    pub fn models(&self) -> impl Iterator<Item = &Arc<SpaceModel>> {
        CATALOG_NAMES.iter().map(|n| &self.models[*n])
    }
}

/// Builds every catalog model from scratch.
pub fn build_catalog() -> Result<Catalog> {
    let mut models = BTreeMap::new();
    for n in 1..=5 {
        let p = projective_space(n)?;
        models.insert(p.name.clone(), Arc::new(p));
    }
    let gr24 = grassmannian(4)?;
    let gr25 = grassmannian(5)?;
    let blp4 = blown_up_p4(&models["p3"])?;
    let v4 = build_v4(&gr24)?;
    let v5 = build_v5(&gr25)?;
    for m in [gr24, gr25, blp4, v4, v5] {
        models.insert(m.name.clone(), Arc::new(m));
    }
    Ok(Catalog { models })
}

/// The process-wide catalog, built on first use.
pub fn catalog() -> Result<&'static Catalog> {
    static CATALOG: OnceLock<Result<Catalog>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog).as_ref().map_err(Clone::clone)
}

pub fn catalog_get(name: &str) -> Result<Arc<SpaceModel>> {
    catalog()?.get(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(name: &str) -> Arc<SpaceModel> {
        catalog_get(name).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(get("v4").degree(), q(4));
        assert_eq!(get("v5").degree(), q(5));
        assert_eq!(get("gr24").degree(), q(2));
        assert_eq!(get("gr25").degree(), q(5));
        for n in 1..=5 {
            assert_eq!(get(&format!("p{n}")).degree(), q(1));
        }
    }

    #[test]
    fn fano_indices() {
        for name in ["p1", "p2", "p3", "p4", "p5", "gr24", "gr25", "v4", "v5"] {
            let m = get(name);
            let r = m.fano_index().unwrap();
            assert_eq!(m.tangent().c1(), m.h().scale(&q(r)), "{name}");
        }
    }

    #[test]
    fn tangent_classes_are_integral() {
        for m in catalog().unwrap().models() {
            assert!(m.tangent().has_integral_chern_classes(), "{}", m.name());
            assert_eq!(m.tangent().rank(), m.dimension() as i64);
        }
    }

    #[test]
    fn blowup_euler_number() {
        let m = get("blp4");
        assert_eq!(m.tangent().c(4).integrate(), q(8));
        assert_eq!(m.tangent().c1().to_string(), "3*alpha + 2*xi");
    }

    #[test]
    fn v4_matches_quartic_intersection() {
        let m = get("v4");
        let h = m.h();
        let t = m.tangent();
        // (2,2) complete intersection in P6: c(T) = (1+h)^7 / (1+2h)^2
        assert_eq!((&t.c(2) * &h.pow(2)).integrate(), q(20));
        assert_eq!((&t.c(3) * h).integrate(), q(12));
        assert_eq!(t.c(4).integrate(), q(12));
    }

    #[test]
    fn v5_euler_number() {
        // V5 has the cohomology of P4 plus one extra middle class: chi = 6
        assert_eq!(get("v5").tangent().c(4).integrate(), q(6));
    }

    #[test]
    fn pushforward_checks() {
        let v4 = get("v4");
        assert_eq!(pushforward_check(&v4, &v4.h().pow(4)).unwrap(), q(4));
        let v5 = get("v5");
        assert_eq!(pushforward_check(&v5, &v5.h().pow(4)).unwrap(), q(5));
        assert_eq!(pushforward_check(&v5, &v5.ring().zero()).unwrap(), q(0));
        assert!(pushforward_check(&get("p4"), &get("p4").h().pow(4)).is_err());
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            catalog_get("p9").unwrap_err(),
            Error::UnknownSpace("p9".into())
        );
        assert!(catalog_get("GR24").is_ok());
    }

    #[test]
    fn twisted_dual_on_gr25() {
        let m = get("gr25");
        let s = m.bundle("S").unwrap();
        let f = s.dual().twist_by_line(m.h()).unwrap();
        let s2 = m.ring().generator(1);
        assert_eq!(f.c(2), &s2 + &m.h().pow(2).scale(&q(2)));
        assert!(f.c(3).is_zero());
    }
}
