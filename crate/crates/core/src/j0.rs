//! The based ring `J_0` attached to the lowest two-sided cell `c_0`.
//!
//! Elements of `c_0` are written `f^-1 w_0 t_chi g` with `f = u t_{x_u}`,
//! `g = v t_{x_v}` (Steinberg weights `x_w`) and `chi` dominant; the triple
//! `(u, chi, v)` is a [`C0Index`]. In this parameterization
//!
//! ```text
//! t_(u,l,v) t_(u',n,v') = delta_{v,u'} sum_mu m^mu_{l,n} t_(u,mu,v')
//! ```
//!
//! with `m` the tensor product multiplicities, so `t_(u,chi,v) -> [V(chi)] E_{u,v}`
//! identifies `J_0` with `|W| x |W|` matrices over `R(G)`.
//!
//! Only parameters whose element lies in the (non-extended) affine Weyl group
//! are ever produced by [`J0Context::c0_parameterize`]; those span a subring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::affine_weyl::{AffineElt, AffineWeylGroup};
use crate::error::{Error, Result};
use crate::hecke::{Basis, Convention, HTable, HeckeAlgebra, HeckeElt};
use crate::laurent::LaurentPoly;
use crate::repring::{Coefficient, RMatrix, RepRing, VirtualCharacter};
use crate::rootdata::{RootSystem, Weight, WeylElt};
use crate::steinberg::SteinbergBasis;

/// The cell element `(u t_{x_u})^-1 w_0 t_chi (v t_{x_v})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct C0Index {
    pub u: WeylElt,
    pub chi: Weight,
    pub v: WeylElt,
}

impl fmt::Display for C0Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u, self.chi, self.v)
    }
}

impl fmt::Debug for C0Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for C0Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finite combination of basis elements `t_w`, `w` in `c_0`.
#[derive(Clone, PartialEq)]
pub struct J0Elt<C: Coefficient = i64> {
    terms: BTreeMap<C0Index, C>,
}

impl<C: Coefficient> Default for J0Elt<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient + Eq> Eq for J0Elt<C> {}

impl<C: Coefficient> J0Elt<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: C0Index) -> Self {
        Self::monomial(idx, C::from_int(1))
    }

    pub fn monomial(idx: C0Index, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(idx, &c);
        out
    }

    pub fn add_term(&mut self, idx: C0Index, c: &C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(idx.clone()).or_insert_with(C::zero);
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn coefficient(&self, idx: &C0Index) -> C {
        self.terms.get(idx).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&C0Index, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.terms() {
            out.add_term(i.clone(), &c.mul(k));
        }
        out
    }
}

impl J0Elt<i64> {
    pub fn to_laurent(&self) -> J0Elt<LaurentPoly> {
        J0Elt {
            terms: self
                .terms
                .iter()
                .map(|(k, &c)| (k.clone(), LaurentPoly::constant(c)))
                .collect(),
        }
    }
}

impl<C: Coefficient> fmt::Debug for J0Elt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{c:?}*t{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coefficient> Serialize for J0Elt<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            c.serialize_into(&k.to_string(), &mut map)?;
        }
        map.end()
    }
}

/// Root data, Steinberg weights and representation ring for one type.
#[derive(Debug)]
pub struct J0Context {
    rs: Arc<RootSystem>,
    group: AffineWeylGroup,
    ring: RepRing,
    steinberg: SteinbergBasis,
    w0: WeylElt,
    // (P^-1)^T for the pairing matrix P
    dual_change: OnceLock<Result<RMatrix>>,
}

impl J0Context {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        Self {
            group: AffineWeylGroup::new(rs.clone()),
            ring: RepRing::new(rs.clone()),
            steinberg: SteinbergBasis::new(rs.clone()),
            w0: rs.longest_element(),
            rs,
            dual_change: OnceLock::new(),
        }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn ring(&self) -> &RepRing {
        &self.ring
    }

    pub fn steinberg(&self) -> &SteinbergBasis {
        &self.steinberg
    }

    /// `a(c_0) = l(w_0)`.
    pub fn a_value(&self) -> i32 {
        self.w0.length() as i32
    }

    fn x(&self, w: &WeylElt) -> &Weight {
        self.steinberg.steinberg_weight(w)
    }

    pub fn c0_element(&self, idx: &C0Index) -> Result<AffineElt> {
        self.rs.check_rank(&idx.chi)?;
        if !idx.chi.is_dominant() {
            return Err(Error::NotDominant(idx.chi.to_string()));
        }
        let rs = &self.rs;
        // t_{-x_u} u^-1 w0 t_chi v t_{x_v} = t_{u^-1 w0 (chi + v x_v) - x_u} u^-1 w0 v
        let uinv_w0 = rs.multiply(&rs.inverse(&idx.u), &self.w0);
        let shifted = &idx.chi + &rs.act(&idx.v, self.x(&idx.v))?;
        let translation = &rs.act(&uinv_w0, &shifted)? - self.x(&idx.u);
        Ok(AffineElt::new(translation, rs.multiply(&uinv_w0, &idx.v)))
    }

    /// The index of `w` in `c_0`, if it has one with `|chi| <= bound`.
    pub fn c0_parameterize(&self, w: &AffineElt, bound: i64) -> Option<C0Index> {
        let rs = &self.rs;
        let mut found = None;
        for u in rs.enumerate_weyl() {
            // the finite part u^-1 w0 v must equal w.finite
            let v = rs.multiply(&rs.multiply(&self.w0, u), &w.finite);
            let a = rs
                .act(&rs.multiply(&self.w0, u), &(&w.translation + self.x(u)))
                .ok()?;
            let chi = &a - &rs.act(&v, self.x(&v)).ok()?;
            if chi.is_dominant() && chi.norm_inf() <= bound {
                debug_assert!(found.is_none(), "two parameters for {w}");
                found = Some(C0Index {
                    u: u.clone(),
                    chi,
                    v,
                });
            }
        }
        found
    }

    /// Every index with `|chi| <= bound` whose element lies in the affine
    /// Weyl group.
    pub fn grid(&self, bound: i64) -> Vec<C0Index> {
        let mut chis = vec![Weight::zero(self.rs.rank())];
        for i in 0..self.rs.rank() {
            chis = chis
                .into_iter()
                .flat_map(|c| {
                    (0..=bound).map(move |k| {
                        let mut c = c.clone();
                        c.0[i] = k;
                        c
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for u in self.rs.enumerate_weyl() {
            for chi in &chis {
                for v in self.rs.enumerate_weyl() {
                    let idx = C0Index {
                        u: u.clone(),
                        chi: chi.clone(),
                        v: v.clone(),
                    };
                    if self
                        .group
                        .is_coxeter_element(&self.c0_element(&idx).unwrap())
                    {
                        out.push(idx);
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn multiply_basis<C: Coefficient>(&self, a: &C0Index, b: &C0Index) -> Result<J0Elt<C>> {
        let mut out = J0Elt::zero();
        if a.v != b.u {
            return Ok(out);
        }
        for (mu, m) in self.ring.tensor_decompose(&a.chi, &b.chi)?.terms() {
            out.add_term(
                C0Index {
                    u: a.u.clone(),
                    chi: mu.clone(),
                    v: b.v.clone(),
                },
                &C::from_int(*m),
            );
        }
        Ok(out)
    }

    pub fn j0_multiply<C: Coefficient>(&self, a: &J0Elt<C>, b: &J0Elt<C>) -> Result<J0Elt<C>> {
        let mut out = J0Elt::zero();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                let cd = c.mul(d);
                for (z, m) in self.multiply_basis::<C>(x, y)?.terms() {
                    out.add_term(z.clone(), &cd.mul(m));
                }
            }
        }
        Ok(out)
    }

    /// `(u, 0, u)` for every `u`.
    pub fn distinguished_involutions(&self) -> Vec<C0Index> {
        let zero = Weight::zero(self.rs.rank());
        self.rs
            .enumerate_weyl()
            .iter()
            .map(|u| C0Index {
                u: u.clone(),
                chi: zero.clone(),
                v: u.clone(),
            })
            .collect()
    }

    /// `sum_d t_d`.
    pub fn unit(&self) -> J0Elt {
        let mut out = J0Elt::zero();
        for d in self.distinguished_involutions() {
            out.add_term(d, &1);
        }
        out
    }

    /// Basis elements `t` on the grid with `t t = t`.
    pub fn scan_idempotents(&self, bound: i64) -> Result<Vec<C0Index>> {
        let grid = self.grid(bound);
        let hits: Vec<Option<C0Index>> = grid
            .par_iter()
            .map(|i| {
                let sq: J0Elt = self.multiply_basis(i, i)?;
                Ok((sq == J0Elt::basis(i.clone())).then(|| i.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(hits.into_iter().flatten().collect())
    }

    pub fn matrix_realization<C: Coefficient>(&self, a: &J0Elt<C>) -> Result<RMatrix<C>> {
        let n = self.rs.weyl_order();
        let mut m = RMatrix::zero(n);
        for (k, c) in a.terms() {
            let (i, j) = (self.rs.weyl_index(&k.u), self.rs.weyl_index(&k.v));
            let entry = m
                .get(i, j)
                .add(&VirtualCharacter::irrep_scaled(k.chi.clone(), c.clone())?);
            m.set(i, j, entry);
        }
        Ok(m)
    }

    fn dual_change(&self) -> Result<&RMatrix> {
        self.dual_change
            .get_or_init(|| {
                let p = self.steinberg.pairing_matrix(&self.ring)?;
                Ok(p.inverse(&self.ring)?.transpose())
            })
            .as_ref()
            .map_err(|e| match e {
                Error::NotInvertible => Error::NotInvertible,
                other => Error::Parse(other.to_string()),
            })
    }

    /// Coefficients `c_{u,v}` of a class `K` on `B x B` in the basis
    /// `F_u (x) G_v`, given its pairings `M_{u,v} = <<K, G_u (x) F_v>>`:
    /// `C = Q M Q` with `Q = (P^-1)^T`.
    fn expand_pairings(&self, pairings: RMatrix) -> Result<RMatrix> {
        let q = self.dual_change()?;
        q.mul(&pairings, &self.ring)?.mul(q, &self.ring)
    }

    /// `[O(a) (x) O(b)]` in the basis `F_u (x) G_v`.
    pub fn expand_in_steinberg_basis(&self, a: &Weight, b: &Weight) -> Result<RMatrix> {
        let left = self.steinberg.pair_with_duals(&self.ring, a)?;
        let right = self.steinberg.pair_with_basis(&self.ring, b)?;
        let n = left.len();
        let mut rows = Vec::with_capacity(n);
        for l in &left {
            rows.push(
                right
                    .iter()
                    .map(|r| self.ring.multiply(l, r))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        self.expand_pairings(RMatrix::from_rows(rows))
    }

    /// `[Delta_* O(lambda)]` in the basis `F_u (x) G_v`.
    pub fn diagonal_class(&self, lambda: &Weight) -> Result<RMatrix> {
        let sb = &self.steinberg;
        let n = sb.x.len();
        let mut rows = Vec::with_capacity(n);
        for u in 0..n {
            let sign = if sb.shifts[u].is_multiple_of(2) { 1 } else { -1 };
            let row = (0..n)
                .map(|v| {
                    Ok(self
                        .ring
                        .euler_characteristic(&(&(lambda + &sb.y[u]) + &sb.x[v]))?
                        .scale(&sign))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        self.expand_pairings(RMatrix::from_rows(rows))
    }

    /// `(element, index)` for every element of `c_0` among `elements`.
    pub fn c0_members<'a>(&self, elements: &'a [AffineElt]) -> Vec<(&'a AffineElt, C0Index)> {
        let bound = elements
            .iter()
            .map(|w| self.group.length(w))
            .max()
            .unwrap_or(0) as i64
            + 1;
        elements
            .iter()
            .filter_map(|w| self.c0_parameterize(w, bound).map(|i| (w, i)))
            .collect()
    }

    /// Compares `gamma_{x,y,z^-1}` from the Hecke algebra with the coefficient
    /// of `t_z` in `t_x t_y` for all `x, y, z` in `c_0` within the table's ball.
    pub fn gamma_oracle_check(&self, table: &HTable) -> Result<GammaReport> {
        let a = self.a_value();
        let members = self.c0_members(table.elements());
        let d0 = self.c0_element(&self.distinguished_involutions()[0])?;
        // one global sign, fixed by t_d t_d = t_d for d = w0
        let sign = table.gamma(&d0, &d0, &self.group.inverse(&d0), a)?;
        if sign.abs() != 1 {
            return Err(Error::BallTooSmall {
                needed: self.w0.length(),
                ball: table.radius(),
            });
        }
        let by_index: HashMap<&C0Index, &AffineElt> =
            members.iter().map(|(w, i)| (i, *w)).collect();
        let checks: Vec<(usize, usize, Vec<GammaMismatch>)> = members
            .par_iter()
            .map(|(x, xi)| {
                let mut count = (0, 0);
                let mut bad = Vec::new();
                for (y, yi) in &members {
                    let prod: J0Elt = self.multiply_basis(xi, yi)?;
                    let row = table.h_constants(x, y)?;
                    for (z, zi) in &members {
                        let hecke = row.get(z).map(|c| c.coefficient_of(-a)).unwrap_or(0);
                        let xi_coeff = prod.coefficient(zi);
                        count.0 += 1;
                        if xi_coeff != 0 {
                            count.1 += 1;
                        }
                        if hecke != sign * xi_coeff {
                            bad.push(GammaMismatch {
                                x: xi.to_string(),
                                y: yi.to_string(),
                                z: zi.to_string(),
                                hecke,
                                representation: xi_coeff,
                            });
                        }
                    }
                    debug_assert!(prod.terms().all(|(k, _)| by_index.contains_key(k) || {
                        // products may leave the ball; never the cell
                        self.group.length(&self.c0_element(k).unwrap()) > table.radius()
                    }));
                }
                Ok((count.0, count.1, bad))
            })
            .collect::<Result<_>>()?;
        let mut report = GammaReport {
            type_label: format!("{}~", self.rs.label()),
            ball: table.radius(),
            a,
            sign,
            c0_elements: members.len(),
            triples: 0,
            nonzero: 0,
            mismatches: Vec::new(),
            pass: true,
        };
        for (t, nz, bad) in checks {
            report.triples += t;
            report.nonzero += nz;
            report.mismatches.extend(bad);
        }
        report.pass = report.mismatches.is_empty();
        Ok(report)
    }
}

impl FromStr for C0Index {
    type Err = Error;

    /// Without root data only the shape can be checked; use
    /// [`J0Context::parse_index`] for a full parse.
    fn from_str(_: &str) -> Result<Self> {
        Err(Error::Parse(
            "C0Index needs root data; use J0Context::parse_index".into(),
        ))
    }
}

impl J0Context {
    /// Parses `(u,chi,v)`, e.g. `(s1,[1,0],e)` or `(e, 1 0, s2s1)`.
    pub fn parse_index(&self, s: &str) -> Result<C0Index> {
        let bad = || Error::Parse(format!("expected (u,chi,v), got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(bad)?;
        // split on commas outside brackets
        let mut parts = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, ch) in inner.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&inner[start..]);
        if parts.len() != 3 {
            return Err(bad());
        }
        let chi: Weight = parts[1].trim().parse()?;
        self.rs.check_rank(&chi)?;
        if !chi.is_dominant() {
            return Err(Error::NotDominant(chi.to_string()));
        }
        Ok(C0Index {
            u: self.rs.parse_weyl(parts[0])?,
            chi,
            v: self.rs.parse_weyl(parts[2])?,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaMismatch {
    pub x: String,
    pub y: String,
    pub z: String,
    pub hecke: i64,
    pub representation: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaReport {
    pub type_label: String,
    pub ball: usize,
    pub a: i32,
    /// `gamma_hecke = sign * gamma_representation` on every triple.
    pub sign: i64,
    pub c0_elements: usize,
    pub triples: usize,
    pub nonzero: usize,
    pub mismatches: Vec<GammaMismatch>,
    pub pass: bool,
}

/// Lusztig's map `phi_0(C_w) = sum_{d, z} h_{w,d,z} t_z`, `d` over the
/// distinguished involutions and `z` over `c_0`, as a homomorphism into
/// `J_0 (x) A` with the representation-theoretic product. (With the signed
/// basis the Hecke-side constants differ from that product by the sign of
/// [`GammaReport::sign`], so `t_d t_d = -t_d` there when `a` is odd.)
#[derive(Debug)]
pub struct Phi0 {
    ctx: Arc<J0Context>,
    table: HTable,
    algebra: HeckeAlgebra,
    involutions: Vec<AffineElt>,
    cell: HashMap<u32, C0Index>,
}

impl Phi0 {
    /// Tables cover every `C_w` with `l(w) <= radius`.
    pub fn new(ctx: Arc<J0Context>, radius: usize) -> Result<Self> {
        Self::with_convention(ctx, radius, Convention::Signed)
    }

    pub fn with_convention(
        ctx: Arc<J0Context>,
        radius: usize,
        convention: Convention,
    ) -> Result<Self> {
        let involutions: Vec<AffineElt> = ctx
            .distinguished_involutions()
            .iter()
            .map(|d| ctx.c0_element(d))
            .collect::<Result<_>>()?;
        let longest = involutions
            .iter()
            .map(|d| ctx.group.length(d))
            .max()
            .unwrap_or(0);
        let r = radius.max(longest);
        let table = HTable::compute(&ctx.group, r, convention)?;
        let outer = table.outer_ball().clone();
        let bound = 2 * r as i64 + 1;
        let cell = (0..outer.len() as u32)
            .filter_map(|z| ctx.c0_parameterize(outer.elem(z), bound).map(|i| (z, i)))
            .collect();
        let algebra = HeckeAlgebra::with_convention(ctx.group.clone(), r, convention)?;
        Ok(Self {
            ctx,
            table,
            algebra,
            involutions,
            cell,
        })
    }

    pub fn context(&self) -> &Arc<J0Context> {
        &self.ctx
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.algebra
    }

    pub fn phi0_c(&self, w: &AffineElt) -> Result<J0Elt<LaurentPoly>> {
        let mut out = J0Elt::zero();
        let wi = self.id(w)?;
        for d in &self.involutions {
            for (z, c) in self.table.row(wi, self.id(d)?) {
                if let Some(idx) = self.cell.get(z) {
                    out.add_term(idx.clone(), c);
                }
            }
        }
        Ok(out)
    }

    fn id(&self, w: &AffineElt) -> Result<u32> {
        let ball = self.table.outer_ball();
        match ball.id(w) {
            Some(i) if ball.length(i) as usize <= self.table.radius() => Ok(i),
            _ => Err(Error::BallTooSmall {
                needed: self.ctx.group.length(w),
                ball: self.table.radius(),
            }),
        }
    }

    pub fn phi0(&self, h: &HeckeElt) -> Result<J0Elt<LaurentPoly>> {
        let c = self.algebra.to_c_basis(h)?;
        let mut out = J0Elt::zero();
        for (w, coeff) in c.terms() {
            out = out.add(&self.phi0_c(w)?.scale(coeff));
        }
        Ok(out)
    }

    pub fn matrix(&self, h: &HeckeElt) -> Result<RMatrix<LaurentPoly>> {
        self.ctx.matrix_realization(&self.phi0(h)?)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicativityReport {
    pub max_length: usize,
    pub pairs: usize,
    pub failures: Vec<(String, String)>,
    pub pass: bool,
}

/// `phi(C_x C_y) = phi(C_x) phi(C_y)` for all `x, y` with `l <= max_length`;
/// needs a map built with radius `>= 2 max_length`.
pub fn multiplicativity_check(phi: &Phi0, max_length: usize) -> Result<MultiplicativityReport> {
    let ctx = phi.context();
    let elems: Vec<AffineElt> = phi
        .table
        .elements()
        .iter()
        .filter(|w| ctx.group.length(w) <= max_length)
        .cloned()
        .collect();
    let images: Vec<J0Elt<LaurentPoly>> =
        elems.iter().map(|w| phi.phi0_c(w)).collect::<Result<_>>()?;
    let failures: Vec<Vec<(String, String)>> = (0..elems.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for j in 0..elems.len() {
                let prod = phi.table.h_constants(&elems[i], &elems[j])?;
                let lhs = phi.phi0(&HeckeElt::from_terms(Basis::C, prod))?;
                if lhs != ctx.j0_multiply(&images[i], &images[j])? {
                    bad.push((elems[i].to_string(), elems[j].to_string()));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    let failures: Vec<(String, String)> = failures.into_iter().flatten().collect();
    Ok(MultiplicativityReport {
        max_length,
        pairs: elems.len() * elems.len(),
        pass: failures.is_empty(),
        failures,
    })
}

/// Bernstein elements for `A_1`: `theta = v^{-l} T_w` for `w = (s0 s1)^n`,
/// `n > 0` (affine reflection first), and `v^{l} T_w^-1` for `n < 0`. The
/// returned weight is the translation part of `w` (resp. its negative); in
/// the geometric dominance convention the same element is labelled by minus
/// that weight, and that is the weight of its diagonal class.
pub fn sl2_theta(alg: &HeckeAlgebra, n: i64) -> Result<(HeckeElt, Weight)> {
    let g = alg.group();
    let word: Vec<usize> = [0usize, 1].repeat(n.unsigned_abs() as usize);
    let w = g.from_word(&word);
    let l = g.length(&w) as i32;
    let t = if n >= 0 {
        HeckeElt::monomial(Basis::T, w.clone(), LaurentPoly::monomial(1, -l))
    } else {
        alg.t_inverse(&w)?.scale(&LaurentPoly::monomial(1, l))
    };
    // the translation this theta is attached to
    let lambda = if n >= 0 {
        w.translation.clone()
    } else {
        w.translation.scaled(-1)
    };
    Ok((t, lambda))
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2Report {
    pub convention: Convention,
    /// The diagonal conjugating matrix found, as `(entry_e, entry_s)`.
    pub conjugator: Option<(String, String)>,
    pub coxeter_image: bool,
    /// Per `n`: whether `phi_0(theta_{n alpha})` is the diagonal class of
    /// `n * weight_per_step` (after conjugation).
    pub theta_images: Vec<(i64, bool)>,
    pub weight_per_step: Option<Weight>,
    pub quadratic_relation: bool,
    pub bernstein_relation_hecke: bool,
    pub bernstein_relation_image: bool,
    pub unit_image: bool,
    pub pass: bool,
}

fn lift(m: &RMatrix) -> RMatrix<LaurentPoly> {
    RMatrix::from_rows(
        m.rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_laurent()).collect())
            .collect(),
    )
}

/// `A M A^-1` for `A = diag(1, a)`, `a` a unit `+-v^k`.
fn conjugate_diag(
    m: &RMatrix<LaurentPoly>,
    a: &LaurentPoly,
    a_inv: &LaurentPoly,
) -> RMatrix<LaurentPoly> {
    let mut out = m.clone();
    out.set(0, 1, m.get(0, 1).scale(a_inv));
    out.set(1, 0, m.get(1, 0).scale(a));
    out
}

/// The `SL_2` checks of `phi_0` against classes on `P^1 x P^1`: the
/// Coxeter generator `C_s` (finite `s`) must map to `-v O(0,-2) + v^-1 O(0,0)`
/// and `theta` to diagonal classes, both up to one conjugation `diag(1, +-v^k)`.
pub fn sl2_phi0_checks(radius: usize, convention: Convention) -> Result<Sl2Report> {
    let ctx = Arc::new(J0Context::new(RootSystem::type_a(1)));
    let phi = Phi0::with_convention(ctx.clone(), radius, convention)?;
    let alg = phi.algebra();
    let g = ctx.group().clone();
    let ring = ctx.ring();
    let w = |k: i64| Weight(vec![k]);
    let v = LaurentPoly::v();
    let vinv = LaurentPoly::monomial(1, -1);

    // -v O(0,-2) + v^-1 O(0,0)
    let geo = lift(&ctx.expand_in_steinberg_basis(&w(0), &w(-2))?)
        .scale(&-&v)
        .add(&lift(&ctx.expand_in_steinberg_basis(&w(0), &w(0))?).scale(&vinv));
    let s = g.generator(1);
    let cs = phi.matrix(&alg.c_basis(&s)?)?;
    let mut conjugator = None;
    'search: for k in -3..=3 {
        for sgn in [1, -1] {
            let a = LaurentPoly::monomial(sgn, k);
            let ai = LaurentPoly::monomial(sgn, -k);
            if conjugate_diag(&cs, &a, &ai) == geo {
                conjugator = Some((a, ai));
                break 'search;
            }
        }
    }
    let coxeter_image = conjugator.is_some();

    let mut theta_images = Vec::new();
    let mut step = None;
    if let Some((a, ai)) = &conjugator {
        let (_, base) = sl2_theta(alg, 1)?;
        let img1 = conjugate_diag(&phi.matrix(&sl2_theta(alg, 1)?.0)?, a, ai);
        for cand in [base.clone(), base.scaled(-1)] {
            if img1 == lift(&ctx.diagonal_class(&cand)?) {
                step = Some(cand);
            }
        }
        for n in -3..=3 {
            let ok = match &step {
                Some(st) => {
                    let img = conjugate_diag(&phi.matrix(&sl2_theta(alg, n)?.0)?, a, ai);
                    img == lift(&ctx.diagonal_class(&st.scaled(n))?)
                }
                None => false,
            };
            theta_images.push((n, ok));
        }
    }

    let one = HeckeElt::basis_element(Basis::T, g.identity());
    let ts = HeckeElt::basis_element(Basis::T, s.clone());
    let q = LaurentPoly::q();
    let qm1 = &q - &LaurentPoly::one();
    let mat = |h: &HeckeElt| phi.matrix(h);
    let mul = |x: &RMatrix<LaurentPoly>, y: &RMatrix<LaurentPoly>| x.mul(y, ring);

    let unit_image = mat(&one)?.is_identity();
    let mts = mat(&ts)?;
    let quadratic_relation =
        mul(&mts, &mts)? == mts.scale(&qm1).add(&RMatrix::identity(2, 1).scale(&q));

    // theta_a T_s - T_s theta_{-a} = (q - 1)(theta_a + 1)
    let (tp, _) = sl2_theta(alg, 1)?;
    let (tn, _) = sl2_theta(alg, -1)?;
    let lhs = alg.t_multiply(&tp, &ts)?.sub(&alg.t_multiply(&ts, &tn)?)?;
    let rhs = tp.add(&one)?.scale(&qm1);
    let bernstein_relation_hecke = lhs == rhs;
    let (mp, mn) = (mat(&tp)?, mat(&tn)?);
    let lhs_m = mul(&mp, &mts)?.add(&mul(&mts, &mn)?.scale(&LaurentPoly::constant(-1)));
    let rhs_m = mp.add(&RMatrix::identity(2, 1)).scale(&qm1);
    let bernstein_relation_image = lhs_m == rhs_m;

    let pass = coxeter_image
        && !theta_images.is_empty()
        && theta_images.iter().all(|t| t.1)
        && quadratic_relation
        && bernstein_relation_hecke
        && bernstein_relation_image
        && unit_image;
    Ok(Sl2Report {
        convention,
        conjugator: conjugator.map(|(a, _)| ("1".to_string(), a.to_string())),
        coxeter_image,
        theta_images,
        weight_per_step: step,
        quadratic_relation,
        bernstein_relation_hecke,
        bernstein_relation_image,
        unit_image,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> J0Context {
        J0Context::new(RootSystem::type_a(n))
    }

    fn idx(c: &J0Context, s: &str) -> C0Index {
        c.parse_index(s).unwrap()
    }

    #[test]
    fn rank_one_elements() {
        let c = ctx(1);
        let g = c.group().clone();
        assert_eq!(c.c0_element(&idx(&c, "(e,0,e)")).unwrap(), g.generator(1));
        assert_eq!(c.c0_element(&idx(&c, "(s1,0,s1)")).unwrap(), g.generator(0));
        assert!(c.c0_parameterize(&g.identity(), 10).is_none());
        for k in 0..6i64 {
            for (s, len) in [
                ("(e,{k},e)", k + 1),
                ("(s1,{k},s1)", k + 1),
                ("(e,{k},s1)", k + 1),
                ("(s1,{k},e)", k + 1),
            ] {
                let i = idx(&c, &s.replace("{k}", &k.to_string()));
                let w = c.c0_element(&i).unwrap();
                assert_eq!(g.length(&w) as i64, len, "{i}");
                assert_eq!(c.c0_parameterize(&w, 10), Some(i));
            }
        }
    }

    #[test]
    fn rank_one_cell_is_everything_but_e() {
        let c = ctx(1);
        let ball = c.group().enumerate_ball(12, 1000).unwrap();
        assert_eq!(c.c0_members(&ball).len(), ball.len() - 1);
    }

    #[test]
    fn parameterization_is_injective() {
        let c = ctx(2);
        let grid = c.grid(3);
        let mut elems: Vec<AffineElt> = grid.iter().map(|i| c.c0_element(i).unwrap()).collect();
        for (i, w) in grid.iter().zip(&elems) {
            assert_eq!(c.c0_parameterize(w, 3).as_ref(), Some(i));
        }
        elems.sort();
        elems.dedup();
        assert_eq!(elems.len(), grid.len());
    }

    #[test]
    fn products() {
        let c = ctx(1);
        let t = |s: &str| J0Elt::<i64>::basis(idx(&c, s));
        let p = c.j0_multiply(&t("(e,1,e)"), &t("(e,1,e)")).unwrap();
        assert_eq!(p, t("(e,2,e)").add(&t("(e,0,e)")));
        assert!(c
            .j0_multiply(&t("(e,0,s1)"), &t("(e,0,e)"))
            .unwrap()
            .is_zero());
        for d in c.distinguished_involutions() {
            let td = J0Elt::<i64>::basis(d);
            assert_eq!(c.j0_multiply(&td, &td).unwrap(), td);
        }
    }

    #[test]
    fn idempotent_scan_finds_only_involutions() {
        for n in [1, 2] {
            let c = ctx(n);
            let mut found = c.scan_idempotents(3).unwrap();
            found.sort();
            let mut expected = c.distinguished_involutions();
            expected.sort();
            assert_eq!(found, expected);
            for d in &expected {
                let e = c.c0_element(d).unwrap();
                let g = c.group();
                assert_eq!(g.mul(&e, &e), g.identity(), "{d} is an involution");
            }
        }
    }

    #[test]
    fn matrix_realization_units() {
        let c = ctx(2);
        assert!(c.matrix_realization(&c.unit()).unwrap().is_identity());
        let d = c.distinguished_involutions()[3].clone();
        let m = c.matrix_realization(&J0Elt::<i64>::basis(d)).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m.get(i, j).is_zero(), (i, j) != (3, 3));
            }
        }
    }

    #[test]
    fn expansion_of_steinberg_pairs_is_elementary() {
        let c = ctx(2);
        let sb = c.steinberg();
        for u in 0..6 {
            for v in 0..6 {
                let m = c.expand_in_steinberg_basis(&sb.x[u], &sb.y[v]).unwrap();
                let sign = if sb.shifts[v] % 2 == 0 { 1 } else { -1 };
                for i in 0..6 {
                    for j in 0..6 {
                        let expect = if (i, j) == (u, v) {
                            c.ring().triv().scale(&sign)
                        } else {
                            VirtualCharacter::zero()
                        };
                        assert_eq!(m.get(i, j), &expect);
                    }
                }
            }
        }
    }

    #[test]
    fn index_parsing() {
        let c = ctx(2);
        let i = c.parse_index("(s1s2, [1,0], e)").unwrap();
        assert_eq!(i.to_string(), "(s1s2,[1,0],e)");
        assert_eq!(c.parse_index("(s1s2,1 0,e)").unwrap(), i);
        assert!(c.parse_index("(s1,[-1,0],e)").is_err());
        assert!(c.parse_index("s1,[1,0],e").is_err());
    }

    #[test]
    fn gamma_oracle_small_balls() {
        for (n, r) in [(1, 8), (2, 5)] {
            let c = ctx(n);
            let table = HTable::compute(c.group(), r, Convention::Signed).unwrap();
            let rep = c.gamma_oracle_check(&table).unwrap();
            assert!(rep.pass, "{:?}", rep.mismatches);
            assert_eq!(rep.sign, -1);
            assert!(rep.nonzero > 0);
            let pos = HTable::compute(c.group(), r, Convention::Positive).unwrap();
            let rep = c.gamma_oracle_check(&pos).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.sign, 1);
        }
    }

    #[test]
    fn phi0_is_unital_and_multiplicative() {
        for (n, r, l) in [(1, 8, 4), (2, 6, 3)] {
            for conv in [Convention::Signed, Convention::Positive] {
                let phi = Phi0::with_convention(Arc::new(ctx(n)), r, conv).unwrap();
                let one = HeckeElt::basis_element(Basis::T, phi.context().group().identity());
                assert!(phi.matrix(&one).unwrap().is_identity());
                assert!(multiplicativity_check(&phi, l).unwrap().pass);
            }
        }
    }

    #[test]
    fn unit_maps_to_sum_of_involutions() {
        let phi = Phi0::new(Arc::new(ctx(2)), 4).unwrap();
        let one = HeckeElt::basis_element(Basis::T, phi.context().group().identity());
        assert_eq!(phi.phi0(&one).unwrap(), phi.context().unit().to_laurent());
    }

    #[test]
    fn sl2_lemma_in_primed_basis() {
        let rep = sl2_phi0_checks(6, Convention::Positive).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.weight_per_step, Some(Weight(vec![-2])));
        let signed = sl2_phi0_checks(6, Convention::Signed).unwrap();
        assert!(!signed.coxeter_image);
        assert!(signed.quadratic_relation && signed.bernstein_relation_image);
    }

    fn arb_index(n: usize, bound: i64) -> impl Strategy<Value = C0Index> {
        let rs = RootSystem::type_a(n);
        let order = rs.weyl_order();
        (0..order, proptest::collection::vec(0..=bound, n), 0..order).prop_map(
            move |(u, chi, v)| {
                let e = rs.enumerate_weyl();
                C0Index {
                    u: e[u].clone(),
                    chi: Weight(chi),
                    v: e[v].clone(),
                }
            },
        )
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplication_is_associative(a in arb_index(2, 4), b in arb_index(2, 4), d in arb_index(2, 4)) {
            let c = ctx(2);
            let (a, b, d) = (J0Elt::<i64>::basis(a), J0Elt::basis(b), J0Elt::basis(d));
            let left = c.j0_multiply(&c.j0_multiply(&a, &b).unwrap(), &d).unwrap();
            let right = c.j0_multiply(&a, &c.j0_multiply(&b, &d).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn realization_is_multiplicative(a in arb_index(2, 3), b in arb_index(2, 3)) {
            let c = ctx(2);
            let (a, b) = (J0Elt::<i64>::basis(a), J0Elt::basis(b));
            let prod = c.matrix_realization(&c.j0_multiply(&a, &b).unwrap()).unwrap();
            let ma = c.matrix_realization(&a).unwrap();
            let mb = c.matrix_realization(&b).unwrap();
            prop_assert_eq!(prod, ma.mul(&mb, c.ring()).unwrap());
        }

        #[test]
        fn unit_is_two_sided(a in arb_index(1, 4)) {
            let c = ctx(1);
            let a = J0Elt::<i64>::basis(a);
            prop_assert_eq!(c.j0_multiply(&c.unit(), &a).unwrap(), a.clone());
            prop_assert_eq!(c.j0_multiply(&a, &c.unit()).unwrap(), a);
        }

        #[test]
        fn parameterization_round_trips(i in arb_index(2, 4)) {
            let c = ctx(2);
            let w = c.c0_element(&i).unwrap();
            prop_assert_eq!(c.c0_parameterize(&w, 4), Some(i));
        }
    }
}
