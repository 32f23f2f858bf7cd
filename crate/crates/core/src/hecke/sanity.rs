//! Consistency checks on KL tables, and the smoothness cross-check for
//! finite type A: `P_{e,w} = 1` exactly when the Schubert variety of `w` is
//! smooth, which we detect independently through palindromic Poincaré
//! polynomials (rational smoothness = smoothness in type A).

use std::sync::Arc;

use serde::Serialize;

use super::kl::KlTable;
use crate::affine_weyl::{AffineWeylGroup, BallTable};
use crate::error::Result;
use crate::rootdata::RootSystem;

#[derive(Debug, Clone, Serialize)]
pub struct KlSanityReport {
    pub elements: usize,
    pub pairs_checked: usize,
    pub diagonal_is_one: bool,
    /// `P_{y,w}(0) = 1` and `deg P_{y,w} <= (l(w) - l(y) - 1) / 2` for `y < w`.
    pub degree_bounds: bool,
    /// `P_{y,w} != 0` exactly when `y <= w`, with Bruhat order recomputed by subwords.
    pub support_is_bruhat_interval: bool,
    pub inverse_symmetry: bool,
    pub pass: bool,
}

pub fn kl_sanity(table: &KlTable) -> KlSanityReport {
    let ball = table.ball();
    let g = ball.group();
    let n = ball.len() as u32;
    let (mut diag, mut degree, mut support, mut symmetry) = (true, true, true, true);
    let mut pairs = 0;
    for w in 0..n {
        let lw = ball.length(w) as usize;
        let wi = ball.inverse(w);
        for y in 0..n {
            let ly = ball.length(y) as usize;
            if ly > lw {
                continue;
            }
            pairs += 1;
            let p = table.p_by_id(y, w);
            if y == w {
                diag &= p.0 == vec![1];
                continue;
            }
            let below = g.bruhat_leq(ball.elem(y), ball.elem(w));
            support &= below == !p.is_zero();
            if below {
                degree &= p.coeff(0) == 1 && p.degree().is_some_and(|d| 2 * d < lw - ly);
            }
            symmetry &= p == table.p_by_id(ball.inverse(y), wi);
        }
    }
    KlSanityReport {
        elements: n as usize,
        pairs_checked: pairs,
        diagonal_is_one: diag,
        degree_bounds: degree,
        support_is_bruhat_interval: support,
        inverse_symmetry: symmetry,
        pass: diag && degree && support && symmetry,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothnessReport {
    pub group_order: usize,
    /// One-line notation of every `w` with non-palindromic Poincaré polynomial.
    pub singular: Vec<Vec<usize>>,
    /// Minimal singular permutations under pattern containment.
    pub patterns: Vec<Vec<usize>>,
    /// `w` with `P_{e,w} = 1` but containing a pattern, or the reverse.
    pub disagreements: Vec<Vec<usize>>,
    pub pass: bool,
}

/// Whether the permutation `w` contains `pattern` (both in one-line notation).
pub fn contains_pattern(w: &[usize], pattern: &[usize]) -> bool {
    let k = pattern.len();
    if k > w.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let same_order =
            (0..k).all(|a| (0..k).all(|b| (w[idx[a]] < w[idx[b]]) == (pattern[a] < pattern[b])));
        if same_order {
            return true;
        }
        // next k-subset in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] < w.len() - k + i) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Finite `A_n` inside the affine group: KL polynomials of a standard
/// parabolic subgroup are those of the subgroup itself.
pub fn finite_smoothness_check(n: usize) -> Result<SmoothnessReport> {
    let rs = RootSystem::type_a(n);
    let g = AffineWeylGroup::new(rs.clone());
    let radius = rs.longest_element().length();
    let ball = Arc::new(BallTable::new(&g, radius, 10_000_000)?);
    let table = KlTable::new(ball.clone());
    let e = ball.id(&g.identity()).expect("identity");

    let finite: Vec<u32> = (0..ball.len() as u32)
        .filter(|&i| ball.elem(i).translation.is_zero())
        .collect();
    let one_line = |i: u32| rs.one_line(&ball.elem(i).finite);

    let mut singular = Vec::new();
    let mut smooth_by_kl = Vec::new();
    for &w in &finite {
        let lw = ball.length(w) as usize;
        let mut poincare = vec![0i64; lw + 1];
        for &y in ball.lower(w) {
            poincare[ball.length(y) as usize] += 1;
        }
        let palindromic = (0..=lw).all(|k| poincare[k] == poincare[lw - k]);
        if !palindromic {
            singular.push(one_line(w));
        }
        smooth_by_kl.push((one_line(w), table.p_by_id(e, w).0 == vec![1]));
    }
    singular.sort();

    // minimal elements of the singular set under pattern containment
    let patterns: Vec<Vec<usize>> = singular
        .iter()
        .filter(|w| {
            !singular
                .iter()
                .any(|p| p.len() <= w.len() && p != *w && contains_pattern(w, p))
        })
        .cloned()
        .collect();

    let mut disagreements: Vec<Vec<usize>> = smooth_by_kl
        .iter()
        .filter(|(w, smooth)| *smooth == patterns.iter().any(|p| contains_pattern(w, p)))
        .map(|(w, _)| w.clone())
        .collect();
    disagreements.sort();
    Ok(SmoothnessReport {
        group_order: finite.len(),
        pass: disagreements.is_empty() && finite.len() == rs.weyl_order(),
        singular,
        patterns,
        disagreements,
    })
}
