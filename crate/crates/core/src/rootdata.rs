//! Root systems, weights and finite Weyl groups.
//!
//! Weights are integer vectors in the basis of fundamental weights, so a
//! weight is dominant exactly when every coordinate is nonnegative. The Cartan
//! matrix uses the convention `cartan[i][j] = <alpha_i^vee, alpha_j>`; the
//! fundamental-weight coordinates of the simple root `alpha_j` are therefore
//! the `j`-th column. Only simply-laced (symmetric) Cartan matrices are
//! accepted, which identifies roots with coroots.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Largest absolute coordinate.
    pub fn norm_inf(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[1,0,-2]`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Accepts `[1,0]`, `1,0` or `1 0`.
impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid weight {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse(format!("empty weight {s:?}")));
        }
        Ok(Weight(coords))
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Element of the finite Weyl group.
///
/// Equality, hashing and ordering go through the action matrix, which is
/// canonical; the stored word is one fixed reduced word for it.
#[derive(Clone)]
pub struct WeylElt {
    word: Vec<usize>,
    rank: usize,
    matrix: Vec<i64>,
}

impl WeylElt {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Row-major action matrix on fundamental-weight coordinates.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    fn apply(&self, coords: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i * n + j] * coords[j]).sum())
            .collect()
    }
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on the canonical reduced word, so sorted output reads naturally.
impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.matrix.cmp(&other.matrix))
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `e` for the identity, otherwise `s1s2s1` (generators are 1-based).
impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for &i in &self.word {
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

/// A positive root, stored in both coordinate systems.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients in the basis of simple roots.
    pub simple: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: Weight,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

/// A finite, simply-laced root system with its Weyl group.
#[derive(Debug)]
pub struct RootSystem {
    label: String,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    // weight coords of every root -> (index into positive_roots, is_positive)
    root_index: HashMap<Vec<i64>, (usize, bool)>,
    weyl: Vec<WeylElt>,
    longest: usize,
}

impl RootSystem {
    /// Type `A_n`.
    pub fn type_a(n: usize) -> Arc<Self> {
        assert!(n >= 1, "type A needs rank >= 1");
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            if i + 1 < n {
                cartan[i][i + 1] = -1;
                cartan[i + 1][i] = -1;
            }
        }
        Arc::new(Self::from_cartan(format!("A{n}"), cartan).expect("type A Cartan matrix is valid"))
    }

    /// Any finite simply-laced Cartan matrix.
    pub fn from_cartan(label: String, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCartan(
                "matrix must be square and nonempty".into(),
            ));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i != j && cartan[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) is positive")));
                }
                if cartan[i][j] != cartan[j][i] {
                    return Err(Error::InvalidCartan(
                        "only simply-laced (symmetric) matrices are supported".into(),
                    ));
                }
            }
        }

        // Positive roots by closing the simple roots under simple reflections.
        let mut simple_coords: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = simple_coords.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = simple_coords.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut r = beta.clone();
                r[i] -= pairing;
                if r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0) && seen.insert(r.clone()) {
                    if seen.len() > 10_000 {
                        return Err(Error::InvalidCartan("root system is not finite".into()));
                    }
                    simple_coords.push(r.clone());
                    queue.push_back(r);
                }
            }
        }
        simple_coords.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive_roots: Vec<Root> = simple_coords
            .into_iter()
            .map(|simple| {
                let weight = Weight(
                    (0..n)
                        .map(|k| (0..n).map(|j| cartan[k][j] * simple[j]).sum())
                        .collect(),
                );
                Root { simple, weight }
            })
            .collect();
        let mut root_index = HashMap::new();
        for (i, r) in positive_roots.iter().enumerate() {
            root_index.insert(r.weight.0.clone(), (i, true));
            root_index.insert((-&r.weight).0, (i, false));
        }

        let mut rs = RootSystem {
            label,
            cartan,
            positive_roots,
            root_index,
            weyl: Vec::new(),
            longest: 0,
        };
        rs.weyl = rs.enumerate_group();
        rs.longest = (0..rs.weyl.len())
            .max_by_key(|&i| rs.weyl[i].length())
            .unwrap();
        Ok(rs)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots ordered by height.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().unwrap()
    }

    /// Fundamental-weight coordinates of the simple root `alpha_i`.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|k| self.cartan[k][i]).collect())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    /// Half the sum of positive roots, the sum of fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `<lambda, alpha^vee>` for a positive root.
    pub fn coroot_pairing(&self, lambda: &Weight, root: &Root) -> i64 {
        lambda.0.iter().zip(&root.simple).map(|(a, b)| a * b).sum()
    }

    /// Symmetric bilinear form on weights, scaled so that it is integral:
    /// `(lambda, mu) = lambda^T (det C) C^{-1} mu`.
    pub fn scaled_form(&self) -> (Vec<Vec<i64>>, i64) {
        adjugate(&self.cartan)
    }

    /// `(a, b)` under `scaled_form`.
    pub fn scaled_inner(&self, a: &Weight, b: &Weight) -> i64 {
        let (g, _) = self.scaled_form();
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| a.0[i] * g[i][j] * b.0[j]).sum::<i64>())
            .sum()
    }

    /// Simple-root coordinates of a weight, when it lies in the root lattice.
    pub fn root_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        let (adj, det) = adjugate(&self.cartan);
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let s: i64 = (0..n).map(|j| adj[i][j] * lambda.0[j]).sum();
            if s % det != 0 {
                return None;
            }
            out.push(s / det);
        }
        Some(out)
    }

    /// `mu <= lambda` in the dominance order.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_coords(&(lambda - mu))
            .map(|c| c.iter().all(|&x| x >= 0))
            .unwrap_or(false)
    }

    pub fn check_rank(&self, lambda: &Weight) -> Result<()> {
        if lambda.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: lambda.rank(),
            });
        }
        Ok(())
    }

    // --- Weyl group ---

    pub fn identity(&self) -> WeylElt {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElt {
            word: Vec::new(),
            rank: n,
            matrix: m,
        }
    }

    fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for k in 0..n {
            for j in 0..n {
                m[k * n + j] =
                    if k == j { 1 } else { 0 } - if j == i { self.cartan[k][i] } else { 0 };
            }
        }
        m
    }

    fn matmul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += x * b[k * n + j];
                }
            }
        }
        m
    }

    fn from_matrix(&self, matrix: Vec<i64>) -> WeylElt {
        // Canonical reduced word: strip the largest-index right descent.
        let n = self.rank();
        let mut word = Vec::new();
        let mut cur = WeylElt {
            word: Vec::new(),
            rank: n,
            matrix: matrix.clone(),
        };
        loop {
            let desc = (0..n)
                .rev()
                .find(|&i| !self.is_positive_weight(&cur.apply(&self.simple_root(i).0)));
            match desc {
                None => break,
                Some(i) => {
                    word.push(i);
                    cur.matrix = self.matmul(&cur.matrix, &self.reflection_matrix(i));
                }
            }
        }
        word.reverse();
        WeylElt {
            word,
            rank: n,
            matrix,
        }
    }

    fn is_positive_weight(&self, root_weight: &[i64]) -> bool {
        self.root_index
            .get(root_weight)
            .map(|&(_, pos)| pos)
            .expect("vector is not a root")
    }

    /// Reflection in a positive root: `lambda -> lambda - <lambda, alpha^vee> alpha`.
    pub fn reflection(&self, root: &Root) -> WeylElt {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for k in 0..n {
            for j in 0..n {
                m[k * n + j] = if k == j { 1 } else { 0 } - root.weight.0[k] * root.simple[j];
            }
        }
        self.from_matrix(m)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        WeylElt {
            word: vec![i],
            rank: self.rank(),
            matrix: self.reflection_matrix(i),
        }
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...` (0-based indices).
    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        let mut m = self.identity().matrix;
        for &i in word {
            assert!(i < self.rank(), "generator index {i} out of range");
            m = self.matmul(&m, &self.reflection_matrix(i));
        }
        self.from_matrix(m)
    }

    pub fn multiply(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        self.from_matrix(self.matmul(&a.matrix, &b.matrix))
    }

    pub fn inverse(&self, a: &WeylElt) -> WeylElt {
        let mut w = a.word.clone();
        w.reverse();
        self.from_word(&w)
    }

    /// Linear action on weights.
    pub fn act(&self, w: &WeylElt, lambda: &Weight) -> Result<Weight> {
        self.check_rank(lambda)?;
        Ok(Weight(w.apply(&lambda.0)))
    }

    /// Whether `w(alpha) > 0` for a positive root `alpha`.
    pub fn sends_positive(&self, w: &WeylElt, root: &Root) -> bool {
        self.is_positive_weight(&w.apply(&root.weight.0))
    }

    /// `s_i` is a right descent of `w`, i.e. `l(w s_i) < l(w)`.
    pub fn is_right_descent(&self, w: &WeylElt, i: usize) -> bool {
        !self.is_positive_weight(&w.apply(&self.simple_root(i).0))
    }

    /// Number of positive roots sent to negative roots; equals the word length.
    pub fn inversion_count(&self, w: &WeylElt) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| !self.sends_positive(w, r))
            .count()
    }

    /// Returns `(mu, w)` with `mu` dominant and `w . lambda = mu`.
    pub fn dominant_representative(&self, lambda: &Weight) -> (Weight, WeylElt) {
        let mut mu = lambda.clone();
        let mut word = Vec::new();
        while let Some(i) = mu.0.iter().position(|&c| c < 0) {
            mu = Weight(self.simple_reflection(i).apply(&mu.0));
            word.push(i);
        }
        word.reverse();
        (mu, self.from_word(&word))
    }

    pub fn longest_element(&self) -> WeylElt {
        self.weyl[self.longest].clone()
    }

    /// All elements, sorted by length and then by canonical word.
    pub fn enumerate_weyl(&self) -> &[WeylElt] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// Index of `w` in `enumerate_weyl()`.
    pub fn weyl_index(&self, w: &WeylElt) -> usize {
        self.weyl
            .iter()
            .position(|x| x == w)
            .expect("element of this Weyl group")
    }

    fn enumerate_group(&self) -> Vec<WeylElt> {
        let e = self.identity();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        seen.insert(e.matrix.clone(), ());
        let mut out = vec![e.clone()];
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let m = self.matmul(&w.matrix, &self.reflection_matrix(i));
                if seen.insert(m.clone(), ()).is_none() {
                    let x = self.from_matrix(m);
                    out.push(x.clone());
                    queue.push_back(x);
                }
            }
        }
        out.sort();
        out
    }

    /// Parses `e`, `s1s2s1` or `1,2,1` (1-based generators).
    pub fn parse_weyl(&self, s: &str) -> Result<WeylElt> {
        let t = s.trim();
        if t == "e" || t == "1" && self.rank() == 0 || t.is_empty() {
            return Ok(self.identity());
        }
        let gens: Vec<usize> = if t.starts_with('s') {
            t.split('s')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
        } else {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
        }
        .map_err(|_| Error::Parse(format!("invalid Weyl group word {s:?}")))?;
        if gens.iter().any(|&g| g == 0 || g > self.rank()) {
            return Err(Error::Parse(format!("generator out of range in {s:?}")));
        }
        let word: Vec<usize> = gens.into_iter().map(|g| g - 1).collect();
        Ok(self.from_word(&word))
    }

    /// One-line notation of a type-A Weyl group element as a permutation of
    /// `1..=n+1`, with `s_i` the transposition `(i, i+1)`.
    pub fn one_line(&self, w: &WeylElt) -> Vec<usize> {
        let n = self.rank() + 1;
        let mut perm: Vec<usize> = (1..=n).collect();
        // w = s_{a1} ... s_{ak}; one-line notation of a product of right factors
        // swaps positions.
        for &i in &w.word {
            perm.swap(i, i + 1);
        }
        perm
    }
}

/// Integer adjugate and determinant (small matrices only).
fn adjugate(m: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = m.len();
    let det = determinant(m);
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * if n == 1 { 1 } else { determinant(&minor) };
        }
    }
    (adj, det)
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = (1..n)
                    .map(|r| (0..n).filter(|&k| k != c).map(|k| m[r][k]).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * determinant(&minor)
            })
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn group_orders_and_longest_elements() {
        for (n, order, npos) in [(1, 2, 1), (2, 6, 3), (3, 24, 6)] {
            let rs = RootSystem::type_a(n);
            assert_eq!(rs.weyl_order(), order);
            assert_eq!(rs.positive_roots().len(), npos);
            let w0 = rs.longest_element();
            assert_eq!(w0.length(), npos);
            assert!(rs.multiply(&w0, &w0).is_identity());
            for w in rs.enumerate_weyl() {
                assert!(w.length() <= w0.length());
                assert_eq!(w.length(), rs.inversion_count(w));
            }
        }
    }

    #[test]
    fn poincare_polynomial_at_one() {
        // prod_i (1 + q + ... + q^i) over exponents 1..n, coefficientwise.
        for n in 1..=3usize {
            let rs = RootSystem::type_a(n);
            let mut poly = vec![1i64];
            for m in 1..=n {
                let mut next = vec![0i64; poly.len() + m];
                for (i, c) in poly.iter().enumerate() {
                    for k in 0..=m {
                        next[i + k] += c;
                    }
                }
                poly = next;
            }
            let mut counts = vec![0i64; poly.len()];
            for w in rs.enumerate_weyl() {
                counts[w.length()] += 1;
            }
            assert_eq!(counts, poly);
        }
    }

    #[test]
    fn reflections_and_rho() {
        let a1 = RootSystem::type_a(1);
        let s = a1.simple_reflection(0);
        assert_eq!(a1.act(&s, &Weight(vec![1])).unwrap(), Weight(vec![-1]));
        assert_eq!(
            a1.act(&a1.identity(), &Weight(vec![5])).unwrap(),
            Weight(vec![5])
        );
        assert_eq!(a1.rho(), a1.fundamental_weight(0));

        let a2 = RootSystem::type_a(2);
        // s1(w1) = w1 - alpha1 = w1 - (2w1 - w2) = w2 - w1
        let s1 = a2.simple_reflection(0);
        assert_eq!(
            a2.act(&s1, &Weight(vec![1, 0])).unwrap(),
            Weight(vec![-1, 1])
        );
        assert_eq!(a2.simple_root(0), Weight(vec![2, -1]));
        assert_eq!(a2.highest_root().weight, Weight(vec![1, 1]));
        assert!(matches!(
            a2.act(&s1, &Weight(vec![1])),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn dominant_representative_examples() {
        let a1 = RootSystem::type_a(1);
        let (mu, w) = a1.dominant_representative(&Weight(vec![-3]));
        assert_eq!(mu, Weight(vec![3]));
        assert_eq!(w, a1.simple_reflection(0));
        let (mu, w) = a1.dominant_representative(&Weight(vec![2]));
        assert_eq!(mu, Weight(vec![2]));
        assert!(w.is_identity());
    }

    #[test]
    fn longest_element_reverses_dominance() {
        let a3 = RootSystem::type_a(3);
        let w0 = a3.longest_element();
        for lam in [
            Weight(vec![1, 0, 0]),
            Weight(vec![2, 1, 3]),
            Weight(vec![0, 4, 0]),
        ] {
            let img = a3.act(&w0, &lam).unwrap();
            assert!(img.0.iter().all(|&c| c <= 0));
        }
    }

    #[test]
    fn one_line_notation() {
        let a3 = RootSystem::type_a(3);
        assert_eq!(a3.one_line(&a3.identity()), vec![1, 2, 3, 4]);
        assert_eq!(a3.one_line(&a3.longest_element()), vec![4, 3, 2, 1]);
        assert_eq!(a3.one_line(&a3.simple_reflection(1)), vec![1, 3, 2, 4]);
    }

    #[test]
    fn rejects_bad_cartan() {
        assert!(RootSystem::from_cartan("x".into(), vec![vec![2, -1], vec![-2, 2]]).is_err());
        assert!(RootSystem::from_cartan("x".into(), vec![vec![1]]).is_err());
        assert!(RootSystem::from_cartan("affine".into(), vec![vec![2, -2], vec![-2, 2]]).is_err());
    }

    #[test]
    fn parse_words() {
        let a2 = RootSystem::type_a(2);
        assert_eq!(a2.parse_weyl("s1s2s1").unwrap(), a2.longest_element());
        assert_eq!(a2.parse_weyl("2,1,2").unwrap(), a2.longest_element());
        assert!(a2.parse_weyl("e").unwrap().is_identity());
        assert!(a2.parse_weyl("s3").is_err());
    }

    proptest! {
        #[test]
        fn dominant_representative_a2(a in -6i64..6, b in -6i64..6) {
            let rs = RootSystem::type_a(2);
            let lam = Weight(vec![a, b]);
            let (mu, w) = rs.dominant_representative(&lam);
            prop_assert!(mu.is_dominant());
            prop_assert_eq!(rs.act(&w, &lam).unwrap(), mu);
        }

        #[test]
        fn action_is_a_homomorphism(i in 0usize..24, j in 0usize..24, a in -4i64..4, b in -4i64..4, c in -4i64..4) {
            let rs = RootSystem::type_a(3);
            let (u, v) = (&rs.enumerate_weyl()[i], &rs.enumerate_weyl()[j]);
            let lam = Weight(vec![a, b, c]);
            let lhs = rs.act(&rs.multiply(u, v), &lam).unwrap();
            let rhs = rs.act(u, &rs.act(v, &lam).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
