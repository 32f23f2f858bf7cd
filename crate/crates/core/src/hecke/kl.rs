//! Kazhdan–Lusztig polynomials on a ball of the affine Weyl group.
//!
//! The recursion runs over right descents. For `w = vs > v`,
//!
//! ```text
//! P_{y,w} = q^{1-c} P_{ys,v} + q^c P_{y,v}
//!         - sum_{z < v, zs < z} mu(z,v) q^{(l(w)-l(z))/2} P_{y,z}
//! ```
//!
//! with `c = 1` if `ys < y` and `c = 0` otherwise. The `mu` coefficients are
//! stored next to the polynomials.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::affine_weyl::{AffineElt, BallTable};
use crate::error::{Error, Result};
use crate::laurent::{checked_add, checked_mul};

/// An ordinary polynomial in `q` with integer coefficients (`coeffs[i]` at `q^i`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly(pub Vec<i64>);

impl QPoly {
    pub fn one() -> Self {
        QPoly(vec![1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.0.is_empty()).then(|| self.0.len() - 1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    /// `self += c * q^k * other`.
    fn add_scaled(&mut self, other: &QPoly, c: i64, k: usize) {
        if c == 0 || other.0.is_empty() {
            return;
        }
        if self.0.len() < other.0.len() + k {
            self.0.resize(other.0.len() + k, 0);
        }
        for (i, &x) in other.0.iter().enumerate() {
            self.0[i + k] = checked_add(self.0[i + k], checked_mul(c, x));
        }
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1 + 2*q + q^3`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, i64)> = self
            .0
            .iter()
            .copied()
            .enumerate()
            .filter(|t| t.1 != 0)
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}*q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, m) => write!(f, "{m}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Memoized Kazhdan–Lusztig polynomials `P_{y,w}` for all `y <= w` in a ball.
#[derive(Debug)]
pub struct KlTable {
    ball: Arc<BallTable>,
    // p[w][k] = P_{lower(w)[k], w}
    p: Vec<Vec<QPoly>>,
    // mu[w] = (z, mu(z,w)) for z < w with mu(z,w) != 0
    mu: Vec<Vec<(u32, i64)>>,
}

impl KlTable {
    pub fn new(ball: Arc<BallTable>) -> Self {
        let n = ball.len();
        let mut p: Vec<Vec<QPoly>> = Vec::with_capacity(n);
        let mut mu: Vec<Vec<(u32, i64)>> = Vec::with_capacity(n);
        // Elements of equal length are independent, so fill layer by layer.
        let mut start = 0usize;
        while start < n {
            let l = ball.length(start as u32);
            let end = (start..n)
                .find(|&i| ball.length(i as u32) != l)
                .unwrap_or(n);
            let layer: Vec<(Vec<QPoly>, Vec<(u32, i64)>)> = (start..end)
                .into_par_iter()
                .map(|w| Self::compute_column(&ball, &p, &mu, w as u32))
                .collect();
            for (pc, mc) in layer {
                p.push(pc);
                mu.push(mc);
            }
            start = end;
        }
        Self { ball, p, mu }
    }

    fn lookup<'a>(ball: &BallTable, p: &'a [Vec<QPoly>], y: u32, w: u32) -> Option<&'a QPoly> {
        ball.lower_position(y, w).map(|k| &p[w as usize][k])
    }

    fn compute_column(
        ball: &BallTable,
        p: &[Vec<QPoly>],
        mu: &[Vec<(u32, i64)>],
        w: u32,
    ) -> (Vec<QPoly>, Vec<(u32, i64)>) {
        if w == 0 {
            return (vec![QPoly::one()], Vec::new());
        }
        let lw = ball.length(w) as usize;
        let s = ball.a_right_descent(w);
        let v = ball.right_mul(w, s).expect("descent inside ball");
        let corrections: Vec<(u32, i64)> = mu[v as usize]
            .iter()
            .copied()
            .filter(|&(z, _)| ball.is_right_descent(z, s))
            .collect();
        let column: Vec<QPoly> = ball
            .lower(w)
            .iter()
            .map(|&y| {
                let ys = ball.right_mul(y, s).expect("inside ball");
                let c = usize::from(ball.is_right_descent(y, s));
                let mut acc = QPoly::default();
                if let Some(a) = Self::lookup(ball, p, ys, v) {
                    acc.add_scaled(a, 1, 1 - c);
                }
                if let Some(b) = Self::lookup(ball, p, y, v) {
                    acc.add_scaled(b, 1, c);
                }
                for &(z, m) in &corrections {
                    if let Some(pz) = Self::lookup(ball, p, y, z) {
                        let k = (lw - ball.length(z) as usize) / 2;
                        acc.add_scaled(pz, -m, k);
                    }
                }
                acc.trim()
            })
            .collect();
        let mut mus = Vec::new();
        for (k, &z) in ball.lower(w).iter().enumerate() {
            let d = lw - ball.length(z) as usize;
            if d % 2 == 1 {
                let m = column[k].coeff((d - 1) / 2);
                if m != 0 {
                    mus.push((z, m));
                }
            }
        }
        (column, mus)
    }

    pub fn ball(&self) -> &Arc<BallTable> {
        &self.ball
    }

    /// `P_{y,w}` by ids; zero unless `y <= w`.
    pub fn p_by_id(&self, y: u32, w: u32) -> QPoly {
        Self::lookup(&self.ball, &self.p, y, w)
            .cloned()
            .unwrap_or_default()
    }

    /// Polynomials of one column: `(y, P_{y,w})` over `y <= w`.
    pub fn column(&self, w: u32) -> impl Iterator<Item = (u32, &QPoly)> {
        self.ball
            .lower(w)
            .iter()
            .copied()
            .zip(self.p[w as usize].iter())
    }

    /// `mu(z, w)` by ids.
    pub fn mu_by_id(&self, z: u32, w: u32) -> i64 {
        self.mu[w as usize]
            .iter()
            .find(|t| t.0 == z)
            .map(|t| t.1)
            .unwrap_or(0)
    }

    /// Nonzero `mu(z, w)` for `z < w`.
    pub fn mu_list(&self, w: u32) -> &[(u32, i64)] {
        &self.mu[w as usize]
    }

    /// The Kazhdan–Lusztig polynomial `P_{y,w}`.
    pub fn kl_polynomial(&self, y: &AffineElt, w: &AffineElt) -> Result<QPoly> {
        let lw = self.ball.group().length(w);
        let wid = self.ball.id(w).ok_or(Error::BallTooSmall {
            needed: lw,
            ball: self.ball.radius(),
        })?;
        // Anything longer than w is not below it; anything in the ball is indexed.
        match self.ball.id(y) {
            Some(yid) => Ok(self.p_by_id(yid, wid)),
            None => Ok(QPoly::default()),
        }
    }
}
