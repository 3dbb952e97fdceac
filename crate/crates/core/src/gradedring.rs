//! Graded commutative quotient rings `Q[x_1..x_k] / I` with a top-degree
//! integration functional.
//!
//! Presentations here are tiny (a handful of generators, top degree at most
//! six), so normal forms are computed degree by degree with exact linear
//! algebra: the degree-`d` slice of the ideal is spanned by every relation
//! times every monomial of complementary degree, and a reduced row echelon
//! form of that span (columns in descending graded-lex order) picks the
//! standard monomials as a basis of the quotient.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector over the generators of a presentation.
///
/// The derived ordering is lexicographic with the first generator most
/// significant; inside one degree slice that is exactly graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (e, name) in self.0.iter().zip(names) {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of weighted degree `d`, in descending graded-lex order.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i];
        let max = left / w;
        for e in (0..=max).rev() {
            cur[i] = e;
            rec(weights, i + 1, left - e * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// Polynomial in the free commutative ring on a fixed number of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Q::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Q::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The part of weighted degree exactly `d`.
    pub fn graded_part(&self, weights: &[u32], d: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, v) in &self.terms {
            if m.degree(weights) == d {
                out.add_term(m.clone(), v.clone());
            }
        }
        out
    }

    /// `Ok(Some(d))` when homogeneous of degree `d`, `Ok(None)` for the zero
    /// polynomial, `Err(())` for mixed degrees.
    #[allow(clippy::result_unit_err)]
    pub fn homogeneous_degree(&self, weights: &[u32]) -> std::result::Result<Option<u32>, ()> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(weights);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(()),
                _ => {}
            }
        }
        Ok(deg)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), v.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), -v.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                out.add_term(ma.mul(mb), va * vb);
            }
        }
        out
    }
}

/// How the degree-top functional is specified.
#[derive(Clone, Debug, PartialEq)]
pub enum Integration {
    /// The top degree is one-dimensional and `monomial` integrates to `value`.
    Anchor { monomial: Monomial, value: Q },
    /// Explicit values on every normal-form basis monomial of the top degree.
    Basis(Vec<(Monomial, Q)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Poly>,
    pub top_degree: u32,
    pub integration: Integration,
}

impl RingPresentation {
    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    /// Same generators and relations; integration may differ.
    pub fn same_quotient(&self, other: &RingPresentation) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

#[derive(Clone, Debug)]
struct DegreeTable {
    index: HashMap<Monomial, usize>,
    basis: Vec<Monomial>,
    /// Row `i` expresses the `i`-th monomial of the degree in the basis.
    reduction: Vec<Vec<Q>>,
}

/// Per-degree quotient bases and reduction maps.
#[derive(Clone, Debug)]
pub struct NormalForm {
    weights: Vec<u32>,
    degrees: Vec<DegreeTable>,
}

impl NormalForm {
    pub fn top_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        &self.degrees[d as usize].basis
    }

    pub fn dimension(&self, d: u32) -> usize {
        self.degrees.get(d as usize).map_or(0, |t| t.basis.len())
    }

    /// Coordinates of a monomial over the basis of its degree; `None` above
    /// the top degree.
    pub fn reduce_monomial(&self, m: &Monomial) -> Option<(u32, &[Q])> {
        let d = m.degree(&self.weights);
        let table = self.degrees.get(d as usize)?;
        let i = table.index[m];
        Some((d, &table.reduction[i]))
    }
}

fn rref(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn build_normal_form(p: &RingPresentation) -> Result<NormalForm> {
    let weights = p.weights();
    if p.generators.iter().any(|g| g.degree == 0) {
        return Err(Error::Configuration("generator of degree 0".into()));
    }
    let mut rel_degrees = Vec::new();
    for (i, r) in p.relations.iter().enumerate() {
        if r.nvars() != p.nvars() {
            return Err(Error::Configuration(format!("relation {i} has wrong arity")));
        }
        match r.homogeneous_degree(&weights) {
            Err(()) => {
                return Err(Error::Configuration(format!("relation {i} is not homogeneous")))
            }
            Ok(None) => {}
            Ok(Some(d)) => rel_degrees.push((d, r)),
        }
    }

    let mut degrees = Vec::with_capacity(p.top_degree as usize + 1);
    for d in 0..=p.top_degree {
        let monomials = monomials_of_degree(&weights, d);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut rows = Vec::new();
        for &(rd, rel) in &rel_degrees {
            if rd > d {
                continue;
            }
            for mult in monomials_of_degree(&weights, d - rd) {
                let mut row = vec![Q::zero(); monomials.len()];
                for (m, v) in rel.terms() {
                    row[index[&mult.mul(m)]] += v;
                }
                rows.push(row);
            }
        }
        let pivots = rref(&mut rows, monomials.len());
        let is_pivot: Vec<Option<usize>> = {
            let mut v = vec![None; monomials.len()];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let basis_cols: Vec<usize> = (0..monomials.len())
            .filter(|&c| is_pivot[c].is_none())
            .collect();
        let basis: Vec<Monomial> = basis_cols.iter().map(|&c| monomials[c].clone()).collect();
        let mut reduction = Vec::with_capacity(monomials.len());
        for (c, piv) in is_pivot.iter().enumerate() {
            let mut coords = vec![Q::zero(); basis.len()];
            match piv {
                None => {
                    let j = basis_cols.iter().position(|&b| b == c).unwrap();
                    coords[j] = Q::one();
                }
                Some(r) => {
                    for (j, &b) in basis_cols.iter().enumerate() {
                        coords[j] = -rows[*r][b].clone();
                    }
                }
            }
            reduction.push(coords);
        }
        if d == 0 && basis.is_empty() {
            return Err(Error::Configuration(
                "inconsistent presentation: the quotient is the zero ring".into(),
            ));
        }
        degrees.push(DegreeTable {
            index,
            basis,
            reduction,
        });
    }
    Ok(NormalForm { weights, degrees })
}

/// A built presentation: normal-form tables plus the integration functional
/// on the top-degree basis.
#[derive(Debug)]
pub struct Ring {
    name: String,
    presentation: RingPresentation,
    normal_form: NormalForm,
    integral: Vec<Q>,
}

impl Ring {
    pub fn new(name: impl Into<String>, presentation: RingPresentation) -> Result<Arc<Ring>> {
        let normal_form = build_normal_form(&presentation)?;
        let top = presentation.top_degree;
        let top_basis = normal_form.basis(top);
        if top_basis.is_empty() {
            return Err(Error::Configuration(
                "top degree of the quotient is zero; nothing to integrate".into(),
            ));
        }
        let integral = match &presentation.integration {
            Integration::Anchor { monomial, value } => {
                if top_basis.len() != 1 {
                    return Err(Error::Configuration(format!(
                        "anchor integration needs a one-dimensional top degree, found {}",
                        top_basis.len()
                    )));
                }
                match normal_form.reduce_monomial(monomial) {
                    Some((d, coords)) if d == top && !coords[0].is_zero() => {
                        vec![value / &coords[0]]
                    }
                    _ => {
                        return Err(Error::Configuration(
                            "anchor monomial does not span the top degree".into(),
                        ))
                    }
                }
            }
            Integration::Basis(values) => {
                let mut out: Vec<Option<Q>> = vec![None; top_basis.len()];
                for (m, v) in values {
                    let Some(j) = top_basis.iter().position(|b| b == m) else {
                        return Err(Error::Configuration(format!(
                            "integration given on non-basis monomial {m:?}"
                        )));
                    };
                    out[j] = Some(v.clone());
                }
                out.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Configuration("integration is not defined on the whole top basis".into()))?
            }
        };
        Ok(Arc::new(Ring {
            name: name.into(),
            presentation,
            normal_form,
            integral,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.normal_form
    }

    pub fn top_degree(&self) -> u32 {
        self.presentation.top_degree
    }

    pub fn nvars(&self) -> usize {
        self.presentation.nvars()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.presentation
            .generators
            .iter()
            .map(|g| g.name.clone())
            .collect()
    }

    /// Value of the integration functional on each top-degree basis monomial.
    pub fn integration_values(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.normal_form
            .basis(self.top_degree())
            .iter()
            .zip(&self.integral)
    }

    /// Total dimension of the quotient over all degrees.
    pub fn total_dimension(&self) -> usize {
        (0..=self.top_degree()).map(|d| self.normal_form.dimension(d)).sum()
    }

    pub fn zero(self: &Arc<Self>) -> RingClass {
        let coeffs = (0..=self.top_degree())
            .map(|d| vec![Q::zero(); self.normal_form.dimension(d)])
            .collect();
        RingClass {
            ring: Arc::clone(self),
            coeffs,
        }
    }

    pub fn constant(self: &Arc<Self>, c: Q) -> RingClass {
        let mut z = self.zero();
        z.coeffs[0][0] = c;
        z
    }

    pub fn one(self: &Arc<Self>) -> RingClass {
        self.constant(Q::one())
    }

    pub fn monomial(self: &Arc<Self>, m: &Monomial) -> RingClass {
        let mut z = self.zero();
        z.add_monomial(m, &Q::one());
        z
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> RingClass {
        self.monomial(&Monomial::var(self.nvars(), i))
    }

    pub fn generator_by_name(self: &Arc<Self>, name: &str) -> Option<RingClass> {
        let i = self
            .presentation
            .generators
            .iter()
            .position(|g| g.name == name)?;
        Some(self.generator(i))
    }

    pub fn from_poly(self: &Arc<Self>, p: &Poly) -> RingClass {
        let mut z = self.zero();
        for (m, v) in p.terms() {
            z.add_monomial(m, v);
        }
        z
    }

    /// Builds a class from coordinates over the concatenated per-degree bases.
    pub fn from_coordinates(self: &Arc<Self>, flat: &[Q]) -> Result<RingClass> {
        if flat.len() != self.total_dimension() {
            return Err(Error::Usage(format!(
                "expected {} coordinates, got {}",
                self.total_dimension(),
                flat.len()
            )));
        }
        let mut z = self.zero();
        let mut it = flat.iter();
        for slot in z.coeffs.iter_mut().flatten() {
            *slot = it.next().unwrap().clone();
        }
        Ok(z)
    }
}

/// An element of a built ring, stored as normal-form coordinates per degree.
#[derive(Clone)]
pub struct RingClass {
    ring: Arc<Ring>,
    coeffs: Vec<Vec<Q>>,
}

impl PartialEq for RingClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingClass[{}]({})", self.ring.name, self)
    }
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.generator_names();
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.write_with(f, &names)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl RingClass {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn same_ring(&self, other: &RingClass) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring)
    }

    fn ensure_same(&self, other: &RingClass) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "classes live in different rings (`{}` vs `{}`)",
                self.ring.name, other.ring.name
            )))
        }
    }

    fn add_monomial(&mut self, m: &Monomial, c: &Q) {
        if let Some((d, coords)) = self.ring.normal_form.reduce_monomial(m) {
            for (slot, v) in self.coeffs[d as usize].iter_mut().zip(coords) {
                *slot += c * v;
            }
        }
    }

    /// Nonzero `(basis monomial, coefficient)` pairs, lowest degree first.
    pub fn terms(&self) -> Vec<(Monomial, Q)> {
        let mut out = Vec::new();
        for (d, cs) in self.coeffs.iter().enumerate() {
            for (m, c) in self.ring.normal_form.basis(d as u32).iter().zip(cs) {
                if !c.is_zero() {
                    out.push((m.clone(), c.clone()));
                }
            }
        }
        out
    }

    /// Coordinates over the concatenated per-degree bases.
    pub fn coordinates(&self) -> Vec<Q> {
        self.coeffs.iter().flatten().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    pub fn degree0(&self) -> &Q {
        &self.coeffs[0][0]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_integer())
    }

    pub fn try_add(&self, other: &RingClass) -> Result<RingClass> {
        self.ensure_same(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().flatten().zip(other.coeffs.iter().flatten()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &RingClass) -> Result<RingClass> {
        self.try_add(&other.neg_class())
    }

    pub fn try_mul(&self, other: &RingClass) -> Result<RingClass> {
        self.ensure_same(other)?;
        let top = self.ring.top_degree();
        let nf = &self.ring.normal_form;
        let mut out = self.ring.zero();
        for d1 in 0..=top {
            for (i, a) in self.coeffs[d1 as usize].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ma = &nf.basis(d1)[i];
                for d2 in 0..=(top - d1) {
                    for (j, b) in other.coeffs[d2 as usize].iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let prod = ma.mul(&nf.basis(d2)[j]);
                        out.add_monomial(&prod, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> RingClass {
        let mut out = self.clone();
        for v in out.coeffs.iter_mut().flatten() {
            *v *= c;
        }
        out
    }

    fn neg_class(&self) -> RingClass {
        self.scale(&-Q::one())
    }

    /// The homogeneous part of degree `d` (zero when `d` exceeds the top degree).
    pub fn component(&self, d: u32) -> RingClass {
        let mut out = self.ring.zero();
        if let Some(cs) = self.coeffs.get(d as usize) {
            out.coeffs[d as usize] = cs.clone();
        }
        out
    }

    /// Sum of the components of degree at most `d`.
    pub fn truncate(&self, d: u32) -> RingClass {
        let mut out = self.clone();
        for (k, cs) in out.coeffs.iter_mut().enumerate() {
            if k as u32 > d {
                cs.iter_mut().for_each(|c| *c = Q::zero());
            }
        }
        out
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, cs)| k as u32 == d || cs.iter().all(|c| c.is_zero()))
    }

    pub fn pow(&self, k: u32) -> RingClass {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; requires an invertible degree-0 part.
    pub fn inverse(&self) -> Result<RingClass> {
        let c0 = self.degree0().clone();
        if c0.is_zero() {
            return Err(Error::Usage("class with zero constant term is not invertible".into()));
        }
        let c0_inv = c0.recip();
        // self = c0 (1 + n) with n nilpotent
        let n = &self.scale(&c0_inv) - &self.ring.one();
        let minus_n = -&n;
        let mut acc = self.ring.one();
        let mut power = self.ring.one();
        for _ in 0..self.ring.top_degree() {
            power = &power * &minus_n;
            acc = &acc + &power;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// `exp(x) = sum x^k / k!`, defined for classes without constant term.
    pub fn exp(&self) -> Result<RingClass> {
        if !self.degree0().is_zero() {
            return Err(Error::Usage("exp needs a class with zero constant term".into()));
        }
        let mut acc = self.ring.one();
        let mut term = self.ring.one();
        for k in 1..=self.ring.top_degree() {
            term = (&term * self).scale(&q_frac(1, k as i64));
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn integrate(&self) -> Q {
        let top = self.ring.top_degree() as usize;
        self.coeffs[top]
            .iter()
            .zip(&self.ring.integral)
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Integral that must come out as an integer.
    pub fn integrate_int(&self, what: &str) -> Result<i64> {
        to_i64(&self.integrate(), what)
    }

    /// Re-expresses the class in a ring with the same generators and relations
    /// (possibly a different top degree or integration functional).
    pub fn transfer(&self, target: &Arc<Ring>) -> Result<RingClass> {
        if !self.ring.presentation.same_quotient(&target.presentation) {
            return Err(Error::Usage(format!(
                "cannot transfer from `{}` to `{}`: presentations differ",
                self.ring.name, target.name
            )));
        }
        let mut out = target.zero();
        for (m, c) in self.terms() {
            out.add_monomial(&m, &c);
        }
        Ok(out)
    }

    /// Image under the ring map sending generator `i` to `images[i]`.
    ///
    /// Every relation of the source must map to zero, otherwise the
    /// assignment does not define a homomorphism.
    pub fn substitute(&self, images: &[RingClass]) -> Result<RingClass> {
        let target = ring_of_images(&self.ring, images)?;
        for (i, rel) in self.ring.presentation.relations.iter().enumerate() {
            if !eval_poly_terms(rel.terms(), images, &target).is_zero() {
                return Err(Error::Consistency(format!(
                    "relation {i} of `{}` does not vanish in `{}`",
                    self.ring.name, target.name
                )));
            }
        }
        let terms = self.terms();
        Ok(eval_poly_terms(terms.iter().map(|(m, c)| (m, c)), images, &target))
    }
}

fn ring_of_images(source: &Ring, images: &[RingClass]) -> Result<Arc<Ring>> {
    if images.len() != source.nvars() {
        return Err(Error::Usage(format!(
            "`{}` has {} generators, {} images given",
            source.name,
            source.nvars(),
            images.len()
        )));
    }
    let Some(first) = images.first() else {
        return Err(Error::Usage("ring without generators".into()));
    };
    for (img, g) in images.iter().zip(&source.presentation.generators) {
        first.ensure_same(img)?;
        if !img.is_homogeneous_of_degree(g.degree) {
            return Err(Error::Usage(format!(
                "image of `{}` is not homogeneous of degree {}",
                g.name, g.degree
            )));
        }
    }
    Ok(Arc::clone(&first.ring))
}

fn eval_poly_terms<'a>(
    terms: impl Iterator<Item = (&'a Monomial, &'a Q)>,
    images: &[RingClass],
    target: &Arc<Ring>,
) -> RingClass {
    let mut out = target.zero();
    for (m, c) in terms {
        let mut t = target.constant(c.clone());
        for (e, img) in m.exponents().iter().zip(images) {
            t = &t * &img.pow(*e);
        }
        out = &out + &t;
    }
    out
}

pub fn to_i64(v: &Q, what: &str) -> Result<i64> {
    use num_traits::ToPrimitive;
    if !v.is_integer() {
        return Err(Error::NonInteger {
            what: what.to_string(),
            value: v.clone(),
        });
    }
    v.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Consistency(format!("{what} does not fit in i64")))
}

impl Add for &RingClass {
    type Output = RingClass;
    fn add(self, rhs: &RingClass) -> RingClass {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingClass {
    type Output = RingClass;
    fn sub(self, rhs: &RingClass) -> RingClass {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &RingClass {
    type Output = RingClass;
    fn mul(self, rhs: &RingClass) -> RingClass {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &RingClass {
    type Output = RingClass;
    fn neg(self) -> RingClass {
        self.neg_class()
    }
}

impl Add for RingClass {
    type Output = RingClass;
    fn add(self, rhs: RingClass) -> RingClass {
        &self + &rhs
    }
}

impl Sub for RingClass {
    type Output = RingClass;
    fn sub(self, rhs: RingClass) -> RingClass {
        &self - &rhs
    }
}

impl Mul for RingClass {
    type Output = RingClass;
    fn mul(self, rhs: RingClass) -> RingClass {
        &self * &rhs
    }
}

impl Neg for RingClass {
    type Output = RingClass;
    fn neg(self) -> RingClass {
        self.neg_class()
    }
}

/// `Q[h] / (h^{n+1})` with `h^n` integrating to 1.
pub fn truncated_polynomial_ring(name: &str, var: &str, n: u32) -> Result<Arc<Ring>> {
    let h = Poly::var(1, 0);
    Ring::new(
        name,
        RingPresentation {
            generators: vec![Generator::new(var, 1)],
            relations: vec![h.pow(n + 1)],
            top_degree: n,
            integration: Integration::Anchor {
                monomial: Monomial::new(vec![n]),
                value: Q::one(),
            },
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blowup_ring() -> Arc<Ring> {
        let a = Poly::var(2, 0);
        let x = Poly::var(2, 1);
        Ring::new(
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
        )
        .unwrap()
    }

    #[test]
    fn monomial_enumeration_is_descending_grlex() {
        let ms = monomials_of_degree(&[1, 2], 4);
        let exps: Vec<_> = ms.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![4, 0], vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn truncation_ring_is_degree_truncation() {
        let r = truncated_polynomial_ring("p3", "h", 3).unwrap();
        for d in 0..=3 {
            assert_eq!(r.normal_form().dimension(d), 1);
        }
        let h = r.generator(0);
        assert_eq!(h.pow(3).integrate(), q(1));
        assert!(h.pow(4).is_zero());
    }

    #[test]
    fn blowup_relations_hold_literally() {
        let r = blowup_ring();
        let a = r.generator(0);
        let x = r.generator(1);
        assert!(a.pow(4).is_zero());
        assert_eq!(x.pow(2), &a * &x);
        assert_eq!(x.pow(4), &a.pow(3) * &x);
        assert_eq!((&a.pow(3) * &x).integrate(), q(1));
        assert_eq!(x.pow(4).integrate(), q(1));
    }

    #[test]
    fn component_picks_one_degree() {
        let r = blowup_ring();
        let a = r.generator(0);
        let c = &(&r.one() + &a.scale(&q(2))) + &a.pow(2).scale(&q(2));
        assert_eq!(c.component(2), a.pow(2).scale(&q(2)));
        assert!(c.component(7).is_zero());
    }

    #[test]
    fn integration_below_top_is_zero() {
        let r = blowup_ring();
        assert_eq!(r.generator(0).pow(3).integrate(), q(0));
        assert_eq!(r.one().integrate(), q(0));
    }

    #[test]
    fn constant_relation_is_rejected() {
        let p = RingPresentation {
            generators: vec![Generator::new("h", 1)],
            relations: vec![Poly::constant(1, q(3))],
            top_degree: 2,
            integration: Integration::Anchor {
                monomial: Monomial::new(vec![2]),
                value: q(1),
            },
        };
        assert!(matches!(build_normal_form(&p), Err(Error::Configuration(_))));
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let h = Poly::var(1, 0);
        let p = RingPresentation {
            generators: vec![Generator::new("h", 1)],
            relations: vec![&h.pow(2) + &h],
            top_degree: 2,
            integration: Integration::Anchor {
                monomial: Monomial::new(vec![2]),
                value: q(1),
            },
        };
        assert!(matches!(build_normal_form(&p), Err(Error::Configuration(_))));
    }

    #[test]
    fn mixed_rings_are_a_usage_error() {
        let a = truncated_polynomial_ring("p2", "h", 2).unwrap();
        let b = truncated_polynomial_ring("p2'", "h", 2).unwrap();
        let err = a.one().try_mul(&b.one()).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn inverse_and_exp() {
        let r = truncated_polynomial_ring("p4", "h", 4).unwrap();
        let h = r.generator(0);
        let c = &r.one() + &h.scale(&q(2));
        assert_eq!(&c * &c.inverse().unwrap(), r.one());
        let e = h.exp().unwrap();
        assert_eq!(e.component(3), h.pow(3).scale(&q_frac(1, 6)));
        assert!(h.inverse().is_err());
    }

    #[test]
    fn display_uses_generator_names() {
        let r = blowup_ring();
        let c = &r.generator(0).scale(&q(2)) - &r.generator(1).pow(2);
        assert_eq!(c.to_string(), "2*alpha - xi^2");
    }
}
