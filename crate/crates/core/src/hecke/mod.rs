//! The affine Hecke algebra over `Z[v, v^-1]` in the standard basis `T_w`
//! and the Kazhdan–Lusztig basis
//!
//! ```text
//! C_w = sum_{y <= w} (-1)^{l(w)-l(y)} q^{l(w)/2 - l(y)} P_{y,w}(q^-1) T_y
//! ```
//!
//! together with the structure constants `h_{x,y,z}`, Lusztig's `a`-function
//! and the integers `gamma_{x,y,z}`.

pub mod kl;
pub mod sanity;
pub mod structure;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine_weyl::{AffineElt, AffineWeylGroup, BallTable};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub use kl::{KlTable, QPoly};
pub use structure::HTable;

/// Which basis a [`HeckeElt`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    T,
    C,
}

/// Normalization of the Kazhdan–Lusztig basis.
///
/// `Signed` is the basis displayed in the module docs and the one every
/// fixture is pinned to. `Positive` is `C'_w = v^{-l(w)} sum_y P_{y,w}(q) T_y`,
/// kept for debugging sign questions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    #[default]
    Signed,
    Positive,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convention::Signed => write!(f, "C"),
            Convention::Positive => write!(f, "C'"),
        }
    }
}

/// A finitely supported combination of `T_w` or `C_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    pub basis: Basis,
    terms: BTreeMap<AffineElt, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, w: AffineElt) -> Self {
        Self::monomial(basis, w, LaurentPoly::one())
    }

    pub fn monomial(basis: Basis, w: AffineElt, c: LaurentPoly) -> Self {
        let mut out = Self::zero(basis);
        out.add_term(w, &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (AffineElt, LaurentPoly)>>(
        basis: Basis,
        terms: I,
    ) -> Self {
        let mut out = Self::zero(basis);
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: AffineElt, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coefficient(&self, w: &AffineElt) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineElt, &LaurentPoly)> {
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

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(
            self.basis,
            self.terms.iter().map(|(w, a)| (w.clone(), a * c)),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: basis_name(self.basis),
            });
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }
}

fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::T => "T",
        Basis::C => "C",
    }
}

/// The affine Hecke algebra of one root system, with Kazhdan–Lusztig data
/// precomputed on a ball.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    group: AffineWeylGroup,
    kl: Arc<KlTable>,
    convention: Convention,
}

impl HeckeAlgebra {
    /// Precomputes Kazhdan–Lusztig polynomials for all elements of length at
    /// most `radius`.
    pub fn new(group: AffineWeylGroup, radius: usize) -> Result<Self> {
        Self::with_convention(group, radius, Convention::Signed)
    }

    pub fn with_convention(
        group: AffineWeylGroup,
        radius: usize,
        convention: Convention,
    ) -> Result<Self> {
        let ball = Arc::new(BallTable::new(&group, radius, 5_000_000)?);
        Ok(Self {
            group,
            kl: Arc::new(KlTable::new(ball)),
            convention,
        })
    }

    pub fn from_kl(kl: Arc<KlTable>, convention: Convention) -> Self {
        Self {
            group: kl.ball().group().clone(),
            kl,
            convention,
        }
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn kl(&self) -> &Arc<KlTable> {
        &self.kl
    }

    pub fn ball(&self) -> &Arc<BallTable> {
        self.kl.ball()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    fn word(&self, w: &AffineElt) -> Result<Vec<usize>> {
        self.group.reduced_word(w).ok_or_else(|| {
            Error::Parse(format!("{w} is not in the non-extended affine Weyl group"))
        })
    }

    /// `T_w T_s`.
    fn t_times_generator(&self, a: &HeckeElt, s: usize) -> HeckeElt {
        let gen = self.group.generator(s);
        let q = LaurentPoly::q();
        let q_minus_1 = &q - &LaurentPoly::one();
        let mut out = HeckeElt::zero(Basis::T);
        for (w, c) in a.terms() {
            let ws = self.group.mul(w, &gen);
            if self.group.length(&ws) > self.group.length(w) {
                out.add_term(ws, c);
            } else {
                out.add_term(ws, &(c * &q));
                out.add_term(w.clone(), &(c * &q_minus_1));
            }
        }
        out
    }

    /// Product in the standard basis, one generator at a time using
    /// `T_w T_s = T_{ws}` if `l(ws) > l(w)` and `q T_{ws} + (q-1) T_w` otherwise.
    pub fn t_multiply(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        if a.basis != Basis::T || b.basis != Basis::T {
            return Err(Error::BasisMismatch { expected: "T" });
        }
        let mut out = HeckeElt::zero(Basis::T);
        for (w, c) in b.terms() {
            let mut partial = a.scale(c);
            for s in self.word(w)? {
                partial = self.t_times_generator(&partial, s);
            }
            out = out.add(&partial)?;
        }
        Ok(out)
    }

    /// Coefficient of `T_y` in `C_w`, by ids.
    pub(crate) fn c_coefficient(&self, y: u32, w: u32, p: &QPoly) -> LaurentPoly {
        let ball = self.ball();
        let (lw, ly) = (ball.length(w) as i32, ball.length(y) as i32);
        match self.convention {
            Convention::Signed => {
                let sign = if (lw - ly) % 2 == 0 { 1 } else { -1 };
                LaurentPoly::from_q_poly_inverted(&p.0, lw - 2 * ly).scale(sign)
            }
            Convention::Positive => LaurentPoly::from_terms(
                p.0.iter().enumerate().map(|(i, &c)| (2 * i as i32 - lw, c)),
            ),
        }
    }

    /// `C_w` expanded in the standard basis.
    pub fn c_basis(&self, w: &AffineElt) -> Result<HeckeElt> {
        let l = self.group.length(w);
        let wid = self.ball().id(w).ok_or(Error::BallTooSmall {
            needed: l,
            ball: self.ball().radius(),
        })?;
        let ball = self.ball();
        Ok(HeckeElt::from_terms(
            Basis::T,
            self.kl
                .column(wid)
                .map(|(y, p)| (ball.elem(y).clone(), self.c_coefficient(y, wid, p))),
        ))
    }

    /// Rewrites an element in the Kazhdan–Lusztig basis by peeling off the
    /// longest term: the coefficient of `T_w` in `C_w` is `v^{-l(w)}`.
    pub fn to_c_basis(&self, a: &HeckeElt) -> Result<HeckeElt> {
        match a.basis {
            Basis::C => Ok(a.clone()),
            Basis::T => {
                let ball = self.ball();
                let mut rest = a.clone();
                let mut out = HeckeElt::zero(Basis::C);
                while let Some(top) = rest.terms().map(|(w, _)| w.clone()).max_by(|x, y| {
                    self.group
                        .length(x)
                        .cmp(&self.group.length(y))
                        .then_with(|| x.cmp(y))
                }) {
                    let l = self.group.length(&top);
                    if ball.id(&top).is_none() {
                        return Err(Error::BallTooSmall {
                            needed: l,
                            ball: ball.radius(),
                        });
                    }
                    let h = rest.coefficient(&top).shift(l as i32);
                    rest = rest.sub(&self.c_basis(&top)?.scale(&h))?;
                    out.add_term(top, &h);
                }
                Ok(out)
            }
        }
    }

    pub fn to_t_basis(&self, a: &HeckeElt) -> Result<HeckeElt> {
        match a.basis {
            Basis::T => Ok(a.clone()),
            Basis::C => {
                let mut out = HeckeElt::zero(Basis::T);
                for (w, c) in a.terms() {
                    out = out.add(&self.c_basis(w)?.scale(c))?;
                }
                Ok(out)
            }
        }
    }

    /// Product of two elements in either basis; the result is in the basis of `a`.
    pub fn multiply(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        let p = self.t_multiply(&self.to_t_basis(a)?, &self.to_t_basis(b)?)?;
        match a.basis {
            Basis::T => Ok(p),
            Basis::C => self.to_c_basis(&p),
        }
    }

    /// `T_{s}^{-1} = q^{-1} T_s + (q^{-1} - 1)`.
    pub fn t_generator_inverse(&self, s: usize) -> HeckeElt {
        let qi = LaurentPoly::monomial(1, -2);
        HeckeElt::from_terms(
            Basis::T,
            [
                (self.group.generator(s), qi.clone()),
                (self.group.identity(), &qi - &LaurentPoly::one()),
            ],
        )
    }

    /// `T_w^{-1}` as a combination of standard basis elements.
    pub fn t_inverse(&self, w: &AffineElt) -> Result<HeckeElt> {
        let mut out = HeckeElt::basis_element(Basis::T, self.group.identity());
        for s in self.word(w)?.into_iter().rev() {
            out = self.t_multiply(&out, &self.t_generator_inverse(s))?;
        }
        Ok(out)
    }

    /// The bar involution: `v -> v^-1` on coefficients, `T_w -> T_{w^-1}^{-1}`.
    pub fn bar(&self, a: &HeckeElt) -> Result<HeckeElt> {
        let t = self.to_t_basis(a)?;
        let mut out = HeckeElt::zero(Basis::T);
        for (w, c) in t.terms() {
            let inv = self.t_inverse(&self.group.inverse(w))?;
            out = out.add(&inv.scale(&c.bar()))?;
        }
        Ok(out)
    }

    /// The structure constants `h_{x,y,z}` of `C_x C_y = sum_z h_{x,y,z} C_z`.
    pub fn h_constants(
        &self,
        x: &AffineElt,
        y: &AffineElt,
    ) -> Result<BTreeMap<AffineElt, LaurentPoly>> {
        let prod = self.t_multiply(&self.c_basis(x)?, &self.c_basis(y)?)?;
        Ok(self
            .to_c_basis(&prod)?
            .terms()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;

    fn algebra(n: usize, r: usize) -> HeckeAlgebra {
        HeckeAlgebra::new(AffineWeylGroup::new(RootSystem::type_a(n)), r).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let h = algebra(1, 4);
        let g = h.group().clone();
        for s in 0..2 {
            let ts = HeckeElt::basis_element(Basis::T, g.generator(s));
            let sq = h.t_multiply(&ts, &ts).unwrap();
            let expect = HeckeElt::from_terms(
                Basis::T,
                [(g.identity(), p("v^2")), (g.generator(s), p("-1 + v^2"))],
            );
            assert_eq!(sq, expect);
            // (T_s + 1)(T_s - q) = 0
            let e = HeckeElt::basis_element(Basis::T, g.identity());
            let a = ts.add(&e).unwrap();
            let b = ts.sub(&e.scale(&LaurentPoly::q())).unwrap();
            assert!(h.t_multiply(&a, &b).unwrap().is_zero());
        }
        let t01 = h
            .t_multiply(
                &HeckeElt::basis_element(Basis::T, g.generator(0)),
                &HeckeElt::basis_element(Basis::T, g.generator(1)),
            )
            .unwrap();
        assert_eq!(t01, HeckeElt::basis_element(Basis::T, g.from_word(&[0, 1])));
        let te = HeckeElt::basis_element(Basis::T, g.identity());
        assert_eq!(h.t_multiply(&te, &t01).unwrap(), t01);
    }

    #[test]
    fn basis_mismatch() {
        let h = algebra(1, 2);
        let c = HeckeElt::basis_element(Basis::C, h.group().identity());
        assert!(matches!(
            h.t_multiply(&c, &c),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn simple_c_basis_elements() {
        let h = algebra(1, 3);
        let g = h.group();
        assert_eq!(
            h.c_basis(&g.identity()).unwrap(),
            HeckeElt::basis_element(Basis::T, g.identity())
        );
        for s in 0..2 {
            // C_s = v^-1 T_s - v T_e
            let expect = HeckeElt::from_terms(
                Basis::T,
                [(g.generator(s), p("v^-1")), (g.identity(), p("-v"))],
            );
            assert_eq!(h.c_basis(&g.generator(s)).unwrap(), expect);
        }
    }

    #[test]
    fn c_basis_is_bar_invariant() {
        let h = algebra(2, 5);
        for w in h.group().enumerate_ball(4, 1000).unwrap() {
            let c = h.c_basis(&w).unwrap();
            assert_eq!(h.bar(&c).unwrap(), c, "C_{w}");
        }
    }

    #[test]
    fn t_multiplication_is_associative() {
        use rand::{Rng, SeedableRng};
        let h = algebra(2, 6);
        let ball = h.group().enumerate_ball(3, 1000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                HeckeElt::from_terms(
                    Basis::T,
                    (0..2).map(|_| {
                        (
                            ball[rng.gen_range(0..ball.len())].clone(),
                            LaurentPoly::monomial(rng.gen_range(-2..3), rng.gen_range(-2..3)),
                        )
                    }),
                )
            };
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let l = h.t_multiply(&h.t_multiply(&a, &b).unwrap(), &c).unwrap();
            let r = h.t_multiply(&a, &h.t_multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn triangularity_round_trip() {
        let h = algebra(2, 5);
        for w in h.group().enumerate_ball(5, 1000).unwrap() {
            let c = h.c_basis(&w).unwrap();
            let lw = h.group().length(&w);
            assert_eq!(c.coefficient(&w), LaurentPoly::monomial(1, -(lw as i32)));
            for (y, _) in c.terms() {
                assert!(y == &w || h.group().length(y) < lw);
            }
            let back = h.to_c_basis(&c).unwrap();
            assert_eq!(back, HeckeElt::basis_element(Basis::C, w.clone()));
        }
    }

    #[test]
    fn rank_one_h_constants() {
        let h = algebra(1, 6);
        let g = h.group();
        let s0 = g.generator(0);
        let hs = h.h_constants(&s0, &s0).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[&s0], p("-v^-1 - v"));
        let e = g.identity();
        let y = g.from_word(&[0, 1, 0]);
        let he = h.h_constants(&e, &y).unwrap();
        assert_eq!(he.len(), 1);
        assert!(he[&y].is_one());
    }

    #[test]
    fn positive_convention_squares() {
        let g = AffineWeylGroup::new(RootSystem::type_a(1));
        let h = HeckeAlgebra::with_convention(g.clone(), 4, Convention::Positive).unwrap();
        let hs = h.h_constants(&g.generator(1), &g.generator(1)).unwrap();
        assert_eq!(hs[&g.generator(1)], p("v^-1 + v"));
    }
}
