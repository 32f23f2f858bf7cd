//! Steinberg's basis of `K_T(pt)` over `K_G(pt)`, the candidate dual family,
//! and the Euler-characteristic pairing between the two on the flag variety.
//!
//! For `w` in the Weyl group,
//!
//! ```text
//! x_w = w^-1( sum_{i : w^-1 alpha_i < 0} varpi_i )
//! y_w = w^-1( sum_{i : w^-1 alpha_i > 0} varpi_i ) - rho
//! ```
//!
//! and `F_w = O(x_w)`, `G_w = O(y_w)[l(w)]`. The shift only contributes the
//! sign `(-1)^{l(w)}`, so `<F_w, G_v> = (-1)^{l(v)} chi(B, O(x_w + y_v))`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::repring::{RMatrix, RepRing, VirtualCharacter};
use crate::rootdata::{RootSystem, Weight, WeylElt};

/// `x_w`, `y_w` and shifts for every `w`, indexed like `enumerate_weyl`.
#[derive(Debug, Clone)]
pub struct SteinbergBasis {
    rs: Arc<RootSystem>,
    pub x: Vec<Weight>,
    pub y: Vec<Weight>,
    pub shifts: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NondegeneracyReport {
    pub determinant: VirtualCharacter,
    pub is_unit: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualCorrectionReport {
    /// Every `w` with `<F_w, G_e> != 0`, with that value.
    pub column_e: Vec<(String, VirtualCharacter)>,
    pub sigma: Option<String>,
    /// One-line notation of `sigma` (type A only).
    pub sigma_one_line: Option<Vec<usize>>,
    /// `(w, <F_w, G_e + G_sigma>, ok)` for every `w`.
    pub rows: Vec<(String, VirtualCharacter, bool)>,
    pub pass: bool,
}

impl SteinbergBasis {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let n = rs.rank();
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut shifts = Vec::new();
        for w in rs.enumerate_weyl() {
            let winv = rs.inverse(w);
            let (mut neg, mut pos) = (Weight::zero(n), Weight::zero(n));
            for i in 0..n {
                // w^-1 alpha_i < 0 exactly when s_i is a right descent of w^-1
                if rs.is_right_descent(&winv, i) {
                    neg.0[i] += 1;
                } else {
                    pos.0[i] += 1;
                }
            }
            x.push(rs.act(&winv, &neg).unwrap());
            y.push(&rs.act(&winv, &pos).unwrap() - &rs.rho());
            shifts.push(w.length());
        }
        Self { rs, x, y, shifts }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn elements(&self) -> &[WeylElt] {
        self.rs.enumerate_weyl()
    }

    pub fn steinberg_weight(&self, w: &WeylElt) -> &Weight {
        &self.x[self.rs.weyl_index(w)]
    }

    pub fn dual_weight(&self, w: &WeylElt) -> (&Weight, usize) {
        let i = self.rs.weyl_index(w);
        (&self.y[i], self.shifts[i])
    }

    fn sign(&self, v: usize) -> i64 {
        if self.shifts[v] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `<F_w, G_v>` by indices.
    pub fn pairing_by_index(&self, ring: &RepRing, w: usize, v: usize) -> Result<VirtualCharacter> {
        Ok(ring
            .euler_characteristic(&(&self.x[w] + &self.y[v]))?
            .scale(&self.sign(v)))
    }

    pub fn pairing(&self, ring: &RepRing, w: &WeylElt, v: &WeylElt) -> Result<VirtualCharacter> {
        self.pairing_by_index(ring, self.rs.weyl_index(w), self.rs.weyl_index(v))
    }

    /// Rows are indexed by `F_w`, columns by `G_v`.
    pub fn pairing_matrix(&self, ring: &RepRing) -> Result<RMatrix> {
        let n = self.x.len();
        let rows = (0..n)
            .into_par_iter()
            .map(|w| {
                (0..n)
                    .map(|v| self.pairing_by_index(ring, w, v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RMatrix::from_rows(rows))
    }

    /// `<O(a), G_v>` for every `v`.
    pub fn pair_with_duals(&self, ring: &RepRing, a: &Weight) -> Result<Vec<VirtualCharacter>> {
        (0..self.y.len())
            .map(|v| {
                Ok(ring
                    .euler_characteristic(&(a + &self.y[v]))?
                    .scale(&self.sign(v)))
            })
            .collect()
    }

    /// `<F_u, O(b)>` for every `u`.
    pub fn pair_with_basis(&self, ring: &RepRing, b: &Weight) -> Result<Vec<VirtualCharacter>> {
        self.x
            .iter()
            .map(|x| ring.euler_characteristic(&(x + b)))
            .collect()
    }

    pub fn nondegeneracy_check(&self, ring: &RepRing) -> Result<NondegeneracyReport> {
        let determinant = self.pairing_matrix(ring)?.determinant(ring)?;
        let is_unit = matches!(determinant.as_scalar(), Some(1 | -1));
        Ok(NondegeneracyReport {
            determinant,
            is_unit,
        })
    }

    /// Finds the unique `sigma != e` with `<F_sigma, G_e> != 0` (if there is
    /// exactly one) and checks that `G_e + G_sigma` pairs to `delta_{w,e}`
    /// against every `F_w`.
    pub fn verify_dual_correction(&self, ring: &RepRing) -> Result<DualCorrectionReport> {
        let m = self.pairing_matrix(ring)?;
        let triv = ring.triv();
        let elems = self.elements();
        let hits: Vec<usize> = (0..elems.len())
            .filter(|&w| !m.get(w, 0).is_zero())
            .collect();
        let sigma = match hits.as_slice() {
            [0, s] => Some(*s),
            _ => None,
        };
        let mut rows = Vec::new();
        let mut pass = sigma.is_some();
        if let Some(s) = sigma {
            for w in 0..elems.len() {
                let val = m.get(w, 0).add(m.get(w, s));
                let ok = if w == 0 { val == triv } else { val.is_zero() };
                pass &= ok;
                rows.push((elems[w].to_string(), val, ok));
            }
        }
        let type_a = self.rs.label().starts_with('A');
        Ok(DualCorrectionReport {
            column_e: hits
                .iter()
                .map(|&w| (elems[w].to_string(), m.get(w, 0).clone()))
                .collect(),
            sigma: sigma.map(|s| elems[s].to_string()),
            sigma_one_line: sigma
                .filter(|_| type_a)
                .map(|s| self.rs.one_line(&elems[s])),
            rows,
            pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize) -> (SteinbergBasis, RepRing) {
        let rs = RootSystem::type_a(n);
        (SteinbergBasis::new(rs.clone()), RepRing::new(rs))
    }

    #[test]
    fn rank_one_weights() {
        let (b, _) = setup(1);
        let rs = b.root_system().clone();
        let s = rs.simple_reflection(0);
        assert_eq!(b.steinberg_weight(&rs.identity()), &Weight(vec![0]));
        assert_eq!(b.steinberg_weight(&s), &Weight(vec![-1]));
        assert_eq!(b.dual_weight(&rs.identity()), (&Weight(vec![0]), 0));
        assert_eq!(b.dual_weight(&s), (&Weight(vec![-1]), 1));
    }

    #[test]
    fn self_dual_in_low_rank() {
        for n in [1, 2] {
            let (b, r) = setup(n);
            let m = b.pairing_matrix(&r).unwrap();
            assert!(m.is_identity(), "A{n}:\n{m:?}");
            let rep = b.nondegeneracy_check(&r).unwrap();
            assert!(rep.is_unit);
        }
    }

    #[test]
    fn x_identity_is_zero() {
        for n in 1..=3 {
            let (b, _) = setup(n);
            assert!(b.x[0].is_zero());
        }
    }

    #[test]
    fn twisting_by_a_representation_scales_entries() {
        // O(lambda) (x) V(mu) has Euler characteristic chi(O(lambda)) * [V(mu)]:
        // summing chi(O(lambda + nu)) over the weights nu of V(mu) gives the product.
        let (b, r) = setup(2);
        let mu = Weight(vec![1, 0]);
        let vmu = VirtualCharacter::irrep(mu.clone()).unwrap();
        let ch = r.weyl_character(&mu).unwrap();
        for w in 0..6 {
            for v in 0..6 {
                let lam = &b.x[w] + &b.y[v];
                let mut twisted = VirtualCharacter::zero();
                for (nu, m) in ch.terms() {
                    twisted = twisted.add(&r.euler_characteristic(&(&lam + nu)).unwrap().scale(&m));
                }
                let entry = r.euler_characteristic(&lam).unwrap();
                assert_eq!(twisted, r.multiply(&entry, &vmu).unwrap());
            }
        }
    }
}
