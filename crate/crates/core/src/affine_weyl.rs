//! The affine Weyl group `W x| X`, with `X` the weight lattice.
//!
//! An element is stored as the pair `(lambda, w)` standing for `t_lambda w`,
//! acting on `X (x) R` by `v -> w(v) + lambda`. The Coxeter generators are
//! numbered `0..=rank`: generator `0` is the affine reflection
//! `t_theta s_theta` in the hyperplane `<v, theta^vee> = 1`, and generator
//! `i >= 1` is the finite simple reflection `s_i`.
//!
//! Lengths come from the closed alcove-counting formula; words are derived
//! data. Only elements whose translation lies in the root lattice are
//! products of generators (the non-extended group), and that is what ball
//! enumeration produces.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight, WeylElt};

/// `t_translation * finite`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineElt {
    pub translation: Weight,
    pub finite: WeylElt,
}

impl AffineElt {
    pub fn new(translation: Weight, finite: WeylElt) -> Self {
        Self {
            translation,
            finite,
        }
    }
}

impl PartialOrd for AffineElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (translation, finite part); lengths are compared by the
/// callers that need length-first orders.
impl Ord for AffineElt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.translation
            .cmp(&other.translation)
            .then_with(|| self.finite.cmp(&other.finite))
    }
}

impl fmt::Debug for AffineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form `t[1,-1]·w[1,2]`: translation coordinates, then the
/// canonical reduced word of the finite part (1-based generators).
impl fmt::Display for AffineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}·w[", self.translation)?;
        for (k, i) in self.finite.word().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

impl Serialize for AffineElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The affine Weyl group of a root system.
#[derive(Clone, Debug)]
pub struct AffineWeylGroup {
    rs: Arc<RootSystem>,
}

impl AffineWeylGroup {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        Self { rs }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Number of Coxeter generators (`rank + 1`).
    pub fn num_generators(&self) -> usize {
        self.rs.rank() + 1
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt::new(Weight::zero(self.rank()), self.rs.identity())
    }

    pub fn translation(&self, lambda: &Weight) -> AffineElt {
        AffineElt::new(lambda.clone(), self.rs.identity())
    }

    pub fn finite(&self, w: &WeylElt) -> AffineElt {
        AffineElt::new(Weight::zero(self.rank()), w.clone())
    }

    pub fn generator(&self, s: usize) -> AffineElt {
        assert!(s < self.num_generators(), "generator {s} out of range");
        if s == 0 {
            let theta = self.rs.highest_root();
            AffineElt::new(theta.weight.clone(), self.rs.reflection(theta))
        } else {
            self.finite(&self.rs.simple_reflection(s - 1))
        }
    }

    fn check(&self, a: &AffineElt) -> Result<()> {
        self.rs.check_rank(&a.translation)
    }

    /// `(t_l u)(t_m v) = t_{l + u(m)} uv`.
    pub fn multiply(&self, a: &AffineElt, b: &AffineElt) -> Result<AffineElt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &AffineElt, b: &AffineElt) -> AffineElt {
        let moved = self
            .rs
            .act(&a.finite, &b.translation)
            .expect("rank checked");
        AffineElt::new(
            &a.translation + &moved,
            self.rs.multiply(&a.finite, &b.finite),
        )
    }

    pub fn inverse(&self, a: &AffineElt) -> AffineElt {
        let winv = self.rs.inverse(&a.finite);
        let t = self.rs.act(&winv, &a.translation).expect("rank checked");
        AffineElt::new(-&t, winv)
    }

    /// Number of affine root hyperplanes separating the base alcove from its
    /// image:
    /// `sum_{a>0, w^-1 a>0} |<l,a^v>| + sum_{a>0, w^-1 a<0} |<l,a^v> - 1|`.
    pub fn length(&self, a: &AffineElt) -> usize {
        let winv = self.rs.inverse(&a.finite);
        self.rs
            .positive_roots()
            .iter()
            .map(|root| {
                let k = self.rs.coroot_pairing(&a.translation, root);
                if self.rs.sends_positive(&winv, root) {
                    k.unsigned_abs() as usize
                } else {
                    (k - 1).unsigned_abs() as usize
                }
            })
            .sum()
    }

    /// Whether the translation part lies in the root lattice.
    pub fn is_coxeter_element(&self, a: &AffineElt) -> bool {
        self.rs.root_coords(&a.translation).is_some()
    }

    pub fn from_word(&self, word: &[usize]) -> AffineElt {
        word.iter().fold(self.identity(), |acc, &s| {
            self.mul(&acc, &self.generator(s))
        })
    }

    pub fn right_descents(&self, a: &AffineElt) -> Vec<usize> {
        let l = self.length(a);
        (0..self.num_generators())
            .filter(|&s| self.length(&self.mul(a, &self.generator(s))) < l)
            .collect()
    }

    pub fn left_descents(&self, a: &AffineElt) -> Vec<usize> {
        let l = self.length(a);
        (0..self.num_generators())
            .filter(|&s| self.length(&self.mul(&self.generator(s), a)) < l)
            .collect()
    }

    /// A reduced word, found by stripping the smallest right descent. Elements
    /// outside the non-extended group have no word and return `None`.
    pub fn reduced_word(&self, a: &AffineElt) -> Option<Vec<usize>> {
        let mut cur = a.clone();
        let mut word = Vec::new();
        let mut l = self.length(&cur);
        while l > 0 {
            let s = (0..self.num_generators())
                .find(|&s| self.length(&self.mul(&cur, &self.generator(s))) < l)?;
            cur = self.mul(&cur, &self.generator(s));
            word.push(s);
            l -= 1;
        }
        if cur != self.identity() {
            return None;
        }
        word.reverse();
        Some(word)
    }

    /// Bruhat order by the lifting property along a reduced word of `w`:
    /// for a right descent `s` of `w`, `y <= w` iff `min(y, ys) <= ws`.
    pub fn bruhat_leq(&self, y: &AffineElt, w: &AffineElt) -> bool {
        let mut y = y.clone();
        let mut w = w.clone();
        let mut ly = self.length(&y);
        let mut lw = self.length(&w);
        loop {
            if ly > lw {
                return false;
            }
            if lw == 0 {
                return y == w;
            }
            if ly == lw {
                return y == w;
            }
            let s = (0..self.num_generators())
                .find(|&s| self.length(&self.mul(&w, &self.generator(s))) < lw)
                .expect("positive length has a descent");
            let g = self.generator(s);
            w = self.mul(&w, &g);
            lw -= 1;
            let ys = self.mul(&y, &g);
            let lys = self.length(&ys);
            if lys < ly {
                y = ys;
                ly = lys;
            }
        }
    }

    /// All elements of the non-extended group of length at most `radius`,
    /// sorted by length and then canonically. Fails if more than `cap`
    /// elements would be produced.
    pub fn enumerate_ball(&self, radius: usize, cap: usize) -> Result<Vec<AffineElt>> {
        let e = self.identity();
        let mut seen: HashSet<AffineElt> = HashSet::from([e.clone()]);
        let mut layers: Vec<Vec<AffineElt>> = vec![vec![e]];
        for l in 1..=radius {
            let mut next: Vec<AffineElt> = Vec::new();
            for x in &layers[l - 1] {
                for s in 0..self.num_generators() {
                    let y = self.mul(x, &self.generator(s));
                    if self.length(&y) == l && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if seen.len() > cap {
                return Err(Error::BudgetExceeded { cap });
            }
            next.sort();
            layers.push(next);
        }
        Ok(layers.into_iter().flatten().collect())
    }

    /// Parses the canonical form `t[1,0]·w[1,2]` (`.` also accepted for `·`),
    /// or a generator word such as `s0s1s0` / `e`.
    pub fn parse(&self, s: &str) -> Result<AffineElt> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid affine Weyl group element {s:?}"));
        if t == "e" {
            return Ok(self.identity());
        }
        if let Some(rest) = t.strip_prefix('t') {
            let (tr, fin) = rest
                .split_once('·')
                .or_else(|| rest.split_once('.'))
                .ok_or_else(bad)?;
            let lambda: Weight = tr.parse()?;
            self.rs.check_rank(&lambda)?;
            let word = fin.trim().strip_prefix('w').ok_or_else(bad)?.trim();
            let inner = word
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(bad)?;
            let w = if inner.trim().is_empty() {
                self.rs.identity()
            } else {
                self.rs.parse_weyl(inner)?
            };
            return Ok(AffineElt::new(lambda, w));
        }
        if t.starts_with('s') {
            let gens = t
                .split('s')
                .filter(|x| !x.is_empty())
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            if gens.iter().any(|&g| g >= self.num_generators()) {
                return Err(bad());
            }
            return Ok(self.from_word(&gens));
        }
        Err(bad())
    }

    /// `s0s1s0`-style rendering of a reduced word (`e` for the identity).
    pub fn word_string(&self, a: &AffineElt) -> Option<String> {
        let w = self.reduced_word(a)?;
        if w.is_empty() {
            return Some("e".into());
        }
        Some(w.iter().map(|s| format!("s{s}")).collect())
    }
}

/// A ball of the affine Weyl group with integer ids and multiplication
/// tables, used by the Kazhdan–Lusztig and structure-constant kernels.
///
/// Ids follow `enumerate_ball` order, so ids are sorted by length.
#[derive(Debug)]
pub struct BallTable {
    group: AffineWeylGroup,
    radius: usize,
    elems: Vec<AffineElt>,
    index: HashMap<AffineElt, u32>,
    lengths: Vec<u32>,
    right: Vec<Vec<Option<u32>>>,
    left: Vec<Vec<Option<u32>>>,
    inverse: Vec<u32>,
    descent: Vec<u8>,
    lower: Vec<Vec<u32>>,
    lower_bits: Vec<Vec<u64>>,
}

impl BallTable {
    pub fn new(group: &AffineWeylGroup, radius: usize, cap: usize) -> Result<Self> {
        let elems = group.enumerate_ball(radius, cap)?;
        let n = elems.len();
        let index: HashMap<AffineElt, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let lengths: Vec<u32> = elems.iter().map(|x| group.length(x) as u32).collect();
        let gens: Vec<AffineElt> = (0..group.num_generators())
            .map(|s| group.generator(s))
            .collect();
        let right: Vec<Vec<Option<u32>>> = elems
            .iter()
            .map(|x| {
                gens.iter()
                    .map(|g| index.get(&group.mul(x, g)).copied())
                    .collect()
            })
            .collect();
        let left: Vec<Vec<Option<u32>>> = elems
            .iter()
            .map(|x| {
                gens.iter()
                    .map(|g| index.get(&group.mul(g, x)).copied())
                    .collect()
            })
            .collect();
        let inverse: Vec<u32> = elems.iter().map(|x| index[&group.inverse(x)]).collect();
        let descent: Vec<u8> = (0..n)
            .map(|i| {
                (0..gens.len())
                    .find(|&s| matches!(right[i][s], Some(j) if lengths[j as usize] < lengths[i]))
                    .unwrap_or(0) as u8
            })
            .collect();

        let words = n.div_ceil(64);
        let mut lower: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut lower_bits: Vec<Vec<u64>> = Vec::with_capacity(n);
        for w in 0..n {
            let mut bits = vec![0u64; words];
            let mut list = Vec::new();
            if w == 0 {
                bits[0] |= 1;
                list.push(0);
            } else {
                let s = descent[w] as usize;
                let ws = right[w][s].expect("descent lies in ball") as usize;
                for &y in &lower[ws] {
                    for z in [Some(y), right[y as usize][s]].into_iter().flatten() {
                        if bits[z as usize / 64] & (1 << (z % 64)) == 0 {
                            bits[z as usize / 64] |= 1 << (z % 64);
                            list.push(z);
                        }
                    }
                }
                list.sort_unstable();
            }
            lower.push(list);
            lower_bits.push(bits);
        }
        Ok(Self {
            group: group.clone(),
            radius,
            elems,
            index,
            lengths,
            right,
            left,
            inverse,
            descent,
            lower,
            lower_bits,
        })
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[AffineElt] {
        &self.elems
    }

    pub fn elem(&self, id: u32) -> &AffineElt {
        &self.elems[id as usize]
    }

    pub fn id(&self, x: &AffineElt) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn length(&self, id: u32) -> u32 {
        self.lengths[id as usize]
    }

    pub fn num_generators(&self) -> usize {
        self.group.num_generators()
    }

    /// `x s`, if it lies in the ball.
    pub fn right_mul(&self, id: u32, s: usize) -> Option<u32> {
        self.right[id as usize][s]
    }

    /// `s x`, if it lies in the ball.
    pub fn left_mul(&self, id: u32, s: usize) -> Option<u32> {
        self.left[id as usize][s]
    }

    pub fn inverse(&self, id: u32) -> u32 {
        self.inverse[id as usize]
    }

    /// Some right descent of a non-identity element.
    pub fn a_right_descent(&self, id: u32) -> usize {
        self.descent[id as usize] as usize
    }

    pub fn is_right_descent(&self, id: u32, s: usize) -> bool {
        matches!(self.right[id as usize][s], Some(j) if self.lengths[j as usize] < self.lengths[id as usize])
    }

    pub fn is_left_descent(&self, id: u32, s: usize) -> bool {
        matches!(self.left[id as usize][s], Some(j) if self.lengths[j as usize] < self.lengths[id as usize])
    }

    /// The Bruhat interval `[e, w]`, sorted by id.
    pub fn lower(&self, w: u32) -> &[u32] {
        &self.lower[w as usize]
    }

    pub fn leq(&self, y: u32, w: u32) -> bool {
        self.lower_bits[w as usize][y as usize / 64] & (1 << (y % 64)) != 0
    }

    /// Position of `y` inside `lower(w)`.
    pub fn lower_position(&self, y: u32, w: u32) -> Option<usize> {
        self.lower[w as usize].binary_search(&y).ok()
    }

    /// A reduced word read off the descent table.
    pub fn word(&self, mut id: u32) -> Vec<usize> {
        let mut w = Vec::new();
        while id != 0 {
            let s = self.a_right_descent(id);
            w.push(s);
            id = self.right_mul(id, s).unwrap();
        }
        w.reverse();
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize) -> AffineWeylGroup {
        AffineWeylGroup::new(RootSystem::type_a(n))
    }

    /// Length by breadth-first search over words: independent of the closed formula.
    fn word_lengths(g: &AffineWeylGroup, radius: usize) -> HashMap<AffineElt, usize> {
        let mut dist = HashMap::from([(g.identity(), 0usize)]);
        let mut frontier = vec![g.identity()];
        for l in 1..=radius {
            let mut next = Vec::new();
            for x in &frontier {
                for s in 0..g.num_generators() {
                    let y = g.mul(x, &g.generator(s));
                    if !dist.contains_key(&y) {
                        dist.insert(y.clone(), l);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    #[test]
    fn generators_are_involutions_of_length_one() {
        for n in 1..=3 {
            let g = group(n);
            for s in 0..g.num_generators() {
                let x = g.generator(s);
                assert_eq!(g.length(&x), 1);
                assert_eq!(g.mul(&x, &x), g.identity());
            }
        }
    }

    #[test]
    fn closed_length_matches_word_length() {
        for (n, r) in [(1, 10), (2, 7), (3, 5)] {
            let g = group(n);
            for (x, l) in word_lengths(&g, r) {
                assert_eq!(g.length(&x), l, "{x}");
                assert_eq!(g.length(&g.inverse(&x)), l);
            }
        }
    }

    #[test]
    fn rank_one_translations() {
        let g = group(1);
        // finite reflection times affine reflection gives a translation by -alpha
        let s_fin = g.generator(1);
        let s_aff = g.generator(0);
        let x = g.mul(&s_aff, &s_fin);
        assert_eq!(x, g.translation(&Weight(vec![2])));
        let y = g.mul(&s_fin, &s_aff);
        assert_eq!(y, g.translation(&Weight(vec![-2])));
        for k in 1..6usize {
            let word: Vec<usize> = (0..2 * k).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect();
            assert_eq!(g.length(&g.from_word(&word)), 2 * k);
        }
        let t = g.translation(&Weight(vec![1]));
        assert_eq!(
            g.mul(&t, &g.translation(&Weight(vec![3]))),
            g.translation(&Weight(vec![4]))
        );
        let a = g.from_word(&[0, 1, 0]);
        assert_eq!(g.mul(&a, &g.inverse(&a)), g.identity());
    }

    #[test]
    fn ball_sizes() {
        let g1 = group(1);
        let b = g1.enumerate_ball(2, 1000).unwrap();
        assert_eq!(b.len(), 5);
        let g2 = group(2);
        assert_eq!(g2.enumerate_ball(1, 1000).unwrap().len(), 4);
        // Growth series of affine A2 is (1 + t + t^2) / (1 - t)^2.
        let mut series = vec![0usize; 10];
        for k in 0..10 {
            let mut c = 0;
            for j in 0..=2usize.min(k) {
                c += k - j + 1;
            }
            series[k] = c;
        }
        let ball = g2.enumerate_ball(9, 10_000).unwrap();
        let mut counts = vec![0usize; 10];
        for x in &ball {
            counts[g2.length(x)] += 1;
        }
        assert_eq!(counts, series);
        assert!(matches!(
            g2.enumerate_ball(9, 50),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn words_round_trip() {
        let g = group(2);
        for x in g.enumerate_ball(6, 10_000).unwrap() {
            let w = g.reduced_word(&x).unwrap();
            assert_eq!(w.len(), g.length(&x));
            assert_eq!(g.from_word(&w), x);
            for s in 0..3 {
                let desc = g.length(&g.mul(&x, &g.generator(s))) < g.length(&x);
                assert_eq!(g.right_descents(&x).contains(&s), desc);
            }
        }
        assert!(g.reduced_word(&g.identity()).unwrap().is_empty());
        // outside the root lattice there is no word
        assert!(g
            .reduced_word(&g.translation(&Weight(vec![1, 0])))
            .is_none());
    }

    /// Subword-property oracle over every reduced word of `w`.
    fn all_reduced_words(g: &AffineWeylGroup, w: &AffineElt) -> Vec<Vec<usize>> {
        let l = g.length(w);
        if l == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for s in g.right_descents(w) {
            for mut p in all_reduced_words(g, &g.mul(w, &g.generator(s))) {
                p.push(s);
                out.push(p);
            }
        }
        out
    }

    fn subword_set(g: &AffineWeylGroup, word: &[usize]) -> HashSet<AffineElt> {
        let mut set = HashSet::from([g.identity()]);
        for &s in word {
            let gen = g.generator(s);
            let ext: Vec<AffineElt> = set.iter().map(|x| g.mul(x, &gen)).collect();
            set.extend(ext);
        }
        set
    }

    #[test]
    fn bruhat_matches_subwords_for_every_reduced_word() {
        let g = group(2);
        let ball = g.enumerate_ball(5, 10_000).unwrap();
        let table = BallTable::new(&g, 5, 10_000).unwrap();
        for w in ball.iter().filter(|x| g.length(x) >= 3) {
            let words = all_reduced_words(&g, w);
            let reference = subword_set(&g, &words[0]);
            for word in &words[1..] {
                assert_eq!(subword_set(&g, word), reference);
            }
            for y in &ball {
                let expect = reference.contains(y);
                assert_eq!(g.bruhat_leq(y, w), expect, "{y} <= {w}");
                assert_eq!(
                    table.leq(table.id(y).unwrap(), table.id(w).unwrap()),
                    expect
                );
            }
        }
    }

    #[test]
    fn bruhat_rank_one() {
        let g = group(1);
        let (s0, s1) = (g.generator(0), g.generator(1));
        let w = g.mul(&s0, &s1);
        assert!(g.bruhat_leq(&g.identity(), &w));
        assert!(g.bruhat_leq(&s0, &w) && g.bruhat_leq(&s1, &w));
        assert!(!g.bruhat_leq(&w, &s0));
    }

    #[test]
    fn canonical_text_round_trip() {
        let g = group(2);
        for x in g.enumerate_ball(4, 1000).unwrap() {
            assert_eq!(g.parse(&x.to_string()).unwrap(), x);
            assert_eq!(g.parse(&g.word_string(&x).unwrap()).unwrap(), x);
        }
        assert!(g.parse("s5").is_err());
        assert!(g.parse("t[1]·w[]").is_err());
    }
}
