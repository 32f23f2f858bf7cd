//! The representation ring `R(G)` of the simply connected group attached to a
//! root system: formal characters, tensor products, Euler characteristics of
//! line bundles on the flag variety, and square matrices over `R(G)`.
//!
//! Formal characters are finitely supported functions on the weight lattice.
//! Elements of `R(G)` ([`VirtualCharacter`]) are stored as integer (or
//! Laurent-polynomial) combinations of irreducible classes `[V(lambda)]`,
//! keyed by dominant weights.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{checked_add, checked_mul, LaurentPoly};
use crate::rootdata::{RootSystem, Weight};

/// Coefficients usable in a [`VirtualCharacter`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn serialize_into<S: SerializeMap>(
        &self,
        key: &str,
        map: &mut S,
    ) -> std::result::Result<(), S::Error>;
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn from_int(n: i64) -> Self {
        n
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_assign(&mut self, other: &Self) {
        *self = checked_add(*self, *other);
    }
    fn mul(&self, other: &Self) -> Self {
        checked_mul(*self, *other)
    }
    fn neg(&self) -> Self {
        checked_mul(*self, -1)
    }
    fn serialize_into<S: SerializeMap>(
        &self,
        key: &str,
        map: &mut S,
    ) -> std::result::Result<(), S::Error> {
        map.serialize_entry(key, self)
    }
}

impl Coefficient for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn from_int(n: i64) -> Self {
        LaurentPoly::constant(n)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn serialize_into<S: SerializeMap>(
        &self,
        key: &str,
        map: &mut S,
    ) -> std::result::Result<(), S::Error> {
        map.serialize_entry(key, &self.to_string())
    }
}

/// A finitely supported integer function on the weight lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalCharacter {
    terms: BTreeMap<Weight, i64>,
}

impl FormalCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(mu: Weight) -> Self {
        let mut c = Self::zero();
        c.add_term(mu, 1);
        c
    }

    pub fn add_term(&mut self, mu: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let slot = self.terms.entry(mu.clone()).or_insert(0);
        *slot = checked_add(*slot, m);
        if *slot == 0 {
            self.terms.remove(&mu);
        }
    }

    pub fn multiplicity(&self, mu: &Weight) -> i64 {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities.
    pub fn degree(&self) -> i64 {
        self.terms.values().fold(0, |a, &b| checked_add(a, b))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, m) in other.terms() {
            out.add_term(w.clone(), m);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (w, m) in self.terms() {
            out.add_term(w.clone(), checked_mul(m, k));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, m) in self.terms() {
            for (b, n) in other.terms() {
                out.add_term(a + b, checked_mul(m, n));
            }
        }
        out
    }

    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|i| {
            let s = rs.simple_reflection(i);
            self.terms()
                .all(|(w, m)| self.multiplicity(&rs.act(&s, w).unwrap()) == m)
        })
    }
}

/// An element of `R(G)` (with coefficients in `C`): a finite combination of
/// irreducible classes `[V(lambda)]`.
#[derive(Clone, PartialEq)]
pub struct VirtualCharacter<C: Coefficient = i64> {
    terms: BTreeMap<Weight, C>,
}

impl<C: Coefficient> Default for VirtualCharacter<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient + Eq> Eq for VirtualCharacter<C> {}

impl<C: Coefficient> VirtualCharacter<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c [V(lambda)]`.
    pub fn irrep_scaled(lambda: Weight, c: C) -> Result<Self> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let mut out = Self::zero();
        out.add_term(lambda, &c);
        Ok(out)
    }

    pub fn irrep(lambda: Weight) -> Result<Self> {
        Self::irrep_scaled(lambda, C::from_int(1))
    }

    /// `[V(0)]`.
    pub fn triv(rank: usize) -> Self {
        Self::irrep(Weight::zero(rank)).expect("zero is dominant")
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, C)>>(terms: I) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in terms {
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.to_string()));
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, lambda: Weight, c: &C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda.clone()).or_insert_with(C::zero);
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn coefficient(&self, lambda: &Weight) -> C {
        self.terms.get(lambda).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), &c.mul(k));
        }
        out
    }

    /// Whether this is `c [V(0)]`, returning `c`.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl VirtualCharacter<i64> {
    /// Coefficientwise embedding into `R(G) (x) Z[v, v^-1]`.
    pub fn to_laurent(&self) -> VirtualCharacter<LaurentPoly> {
        VirtualCharacter {
            terms: self
                .terms
                .iter()
                .map(|(w, &c)| (w.clone(), LaurentPoly::constant(c)))
                .collect(),
        }
    }
}

impl<C: Coefficient> fmt::Debug for VirtualCharacter<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `2*V[1,0] - V[0,0]`, or `(v + v^-1)*V[1]` for Laurent coefficients.
impl<C: Coefficient> fmt::Display for VirtualCharacter<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let cs = format!("{c:?}");
            let cs = cs
                .strip_prefix("LaurentPoly(")
                .and_then(|s| s.strip_suffix(')'))
                .unwrap_or(&cs);
            if cs == "1" {
                write!(f, "V{w}")?;
            } else {
                write!(f, "({cs})*V{w}")?;
            }
        }
        Ok(())
    }
}

/// `{"[1,0]": 2, "[0,0]": -1}`.
impl<C: Coefficient> Serialize for VirtualCharacter<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            c.serialize_into(&w.to_string(), &mut map)?;
        }
        map.end()
    }
}

/// Root-system data plus memoized characters.
#[derive(Debug)]
pub struct RepRing {
    rs: Arc<RootSystem>,
    form: Vec<Vec<i64>>,
    rho2: Vec<i64>,
    chars: RwLock<HashMap<Weight, Arc<FormalCharacter>>>,
    polys: RwLock<HashMap<Weight, Arc<MPoly>>>,
}

impl RepRing {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let (form, _) = rs.scaled_form();
        let n = rs.rank();
        let rho = rs.rho();
        // form * rho, so that heights are a dot product
        let rho2 = (0..n)
            .map(|i| (0..n).map(|j| form[i][j] * rho.0[j]).sum())
            .collect();
        Self {
            rs,
            form,
            rho2,
            chars: RwLock::default(),
            polys: RwLock::default(),
        }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn inner(&self, a: &Weight, b: &Weight) -> i64 {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a.0[i] * self.form[i][j] * b.0[j])
                    .sum::<i64>()
            })
            .sum()
    }

    /// A height function, strictly increasing along positive roots.
    fn height(&self, mu: &Weight) -> i64 {
        mu.0.iter().zip(&self.rho2).map(|(a, b)| a * b).sum()
    }

    fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.rs.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        Ok(())
    }

    pub fn triv(&self) -> VirtualCharacter {
        VirtualCharacter::triv(self.rank())
    }

    /// Dominant weights `mu <= lambda`, highest first.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        let mut out = Vec::new();
        while let Some(mu) = queue.pop_front() {
            for a in self.rs.positive_roots() {
                let nu = &mu - &a.weight;
                if nu.is_dominant() && seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
            out.push(mu);
        }
        out.sort_by(|a, b| self.height(b).cmp(&self.height(a)).then_with(|| a.cmp(b)));
        out
    }

    fn orbit(&self, mu: &Weight) -> Vec<Weight> {
        let mut set: Vec<Weight> = self
            .rs
            .enumerate_weyl()
            .iter()
            .map(|w| self.rs.act(w, mu).unwrap())
            .collect();
        set.sort();
        set.dedup();
        set
    }

    /// The character of `V(lambda)` by Freudenthal's multiplicity formula.
    pub fn weyl_character(&self, lambda: &Weight) -> Result<Arc<FormalCharacter>> {
        self.check_dominant(lambda)?;
        if let Some(c) = self.chars.read().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let rho = self.rs.rho();
        let top = self.inner(&(lambda + &rho), &(lambda + &rho));
        let mut dominant: HashMap<Weight, i64> = HashMap::new();
        for mu in self.dominant_weights_below(lambda) {
            if &mu == lambda {
                dominant.insert(mu, 1);
                continue;
            }
            let mut sum = 0i64;
            for a in self.rs.positive_roots() {
                let mut nu = &mu + &a.weight;
                loop {
                    let (rep, _) = self.rs.dominant_representative(&nu);
                    let Some(&m) = dominant.get(&rep) else { break };
                    sum = checked_add(sum, checked_mul(m, self.inner(&nu, &a.weight)));
                    nu = &nu + &a.weight;
                }
            }
            let denom = top - self.inner(&(&mu + &rho), &(&mu + &rho));
            let m = 2 * sum / denom;
            debug_assert_eq!(2 * sum % denom, 0);
            dominant.insert(mu, m);
        }
        let mut ch = FormalCharacter::zero();
        for (mu, m) in &dominant {
            for w in self.orbit(mu) {
                ch.add_term(w, *m);
            }
        }
        let ch = Arc::new(ch);
        self.chars
            .write()
            .unwrap()
            .insert(lambda.clone(), ch.clone());
        Ok(ch)
    }

    /// The character of `V(lambda)` as the alternating sum
    /// `sum_w (-1)^{l(w)} e^{w(lambda+rho)-rho}` divided by
    /// `prod_{alpha>0} (1 - e^{-alpha})`; an independent check on
    /// [`RepRing::weyl_character`].
    pub fn weyl_character_alternating(&self, lambda: &Weight) -> Result<FormalCharacter> {
        self.check_dominant(lambda)?;
        let rho = self.rs.rho();
        let lr = lambda + &rho;
        let mut f = FormalCharacter::zero();
        for w in self.rs.enumerate_weyl() {
            let sign = if w.length() % 2 == 0 { 1 } else { -1 };
            f.add_term(&self.rs.act(w, &lr)? - &rho, sign);
        }
        for a in self.rs.positive_roots() {
            f = self.divide_by_one_minus(&f, &a.weight);
        }
        Ok(f)
    }

    /// `f / (1 - e^{-alpha})`, assuming the quotient is finitely supported:
    /// `g(mu) = f(mu) + g(mu + alpha)`.
    fn divide_by_one_minus(&self, f: &FormalCharacter, alpha: &Weight) -> FormalCharacter {
        let Some(lowest) = f.terms().map(|(w, _)| self.height(w)).min() else {
            return FormalCharacter::zero();
        };
        let mut candidates: Vec<Weight> = Vec::new();
        let mut seen = HashSet::new();
        for (mu, _) in f.terms() {
            let mut nu = mu.clone();
            while self.height(&nu) >= lowest {
                if seen.insert(nu.clone()) {
                    candidates.push(nu.clone());
                }
                nu = &nu - alpha;
            }
        }
        candidates.sort_by_key(|w| std::cmp::Reverse(self.height(w)));
        let mut g: HashMap<Weight, i64> = HashMap::new();
        for nu in candidates {
            let above = g.get(&(&nu + alpha)).copied().unwrap_or(0);
            let val = checked_add(f.multiplicity(&nu), above);
            g.insert(nu, val);
        }
        let mut out = FormalCharacter::zero();
        for (w, m) in g {
            out.add_term(w, m);
        }
        out
    }

    /// Weyl's dimension formula.
    pub fn dim(&self, lambda: &Weight) -> Result<i64> {
        self.check_dominant(lambda)?;
        let rho = self.rs.rho();
        let (mut num, mut den) = (1i128, 1i128);
        for a in self.rs.positive_roots() {
            num *= self.rs.coroot_pairing(&(lambda + &rho), a) as i128;
            den *= self.rs.coroot_pairing(&rho, a) as i128;
        }
        Ok((num / den) as i64)
    }

    /// `chi(B, O(lambda))` by Borel–Weil–Bott: zero if `lambda + rho` is
    /// singular, else `(-1)^{l(w)} [V(w(lambda+rho) - rho)]`.
    pub fn euler_characteristic(&self, lambda: &Weight) -> Result<VirtualCharacter> {
        self.rs.check_rank(lambda)?;
        let rho = self.rs.rho();
        let (mu, w) = self.rs.dominant_representative(&(lambda + &rho));
        if mu.0.contains(&0) {
            return Ok(VirtualCharacter::zero());
        }
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        VirtualCharacter::irrep_scaled(&mu - &rho, sign)
    }

    /// The virtual character with formal character `ch`, by repeatedly
    /// removing the highest remaining weight.
    pub fn decompose(&self, ch: &FormalCharacter) -> Result<VirtualCharacter> {
        let mut rest = ch.clone();
        let mut out = VirtualCharacter::zero();
        while let Some((top, m)) = rest
            .terms()
            .max_by(|a, b| {
                self.height(a.0)
                    .cmp(&self.height(b.0))
                    .then_with(|| b.0.cmp(a.0))
            })
            .map(|(w, m)| (w.clone(), m))
        {
            if !top.is_dominant() {
                return Err(Error::Parse(format!(
                    "character is not Weyl-invariant (highest term {top})"
                )));
            }
            rest = rest.add(&self.weyl_character(&top)?.scale(-m));
            out.add_term(top, &m);
        }
        Ok(out)
    }

    /// The formal character of a virtual character.
    pub fn character(&self, a: &VirtualCharacter) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero();
        for (w, &c) in a.terms() {
            out = out.add(&self.weyl_character(w)?.scale(c));
        }
        Ok(out)
    }

    /// `V(lambda) (x) V(nu)` by the Brauer–Klimyk rule
    /// `sum_{mu} m_lambda(mu) chi(O(nu + mu))`, iterating over the weights of
    /// the smaller factor.
    pub fn tensor_decompose(&self, lambda: &Weight, nu: &Weight) -> Result<VirtualCharacter> {
        self.check_dominant(lambda)?;
        self.check_dominant(nu)?;
        let (small, big) = if self.dim(lambda)? <= self.dim(nu)? {
            (lambda, nu)
        } else {
            (nu, lambda)
        };
        let mut out = VirtualCharacter::zero();
        for (mu, m) in self.weyl_character(small)?.terms() {
            out = out.add(&self.euler_characteristic(&(big + mu))?.scale(&m));
        }
        Ok(out)
    }

    /// Product in `R(G)`.
    pub fn multiply<C: Coefficient>(
        &self,
        a: &VirtualCharacter<C>,
        b: &VirtualCharacter<C>,
    ) -> Result<VirtualCharacter<C>> {
        let mut out = VirtualCharacter::zero();
        for (l, c) in a.terms() {
            for (n, d) in b.terms() {
                let cd = c.mul(d);
                for (mu, m) in self.tensor_decompose(l, n)?.terms() {
                    out.add_term(mu.clone(), &cd.mul(&C::from_int(*m)));
                }
            }
        }
        Ok(out)
    }

    /// `[V(lambda)]` as a polynomial in the fundamental classes
    /// `X_i = [V(varpi_i)]`.
    fn irrep_poly(&self, lambda: &Weight) -> Result<Arc<MPoly>> {
        if let Some(p) = self.polys.read().unwrap().get(lambda) {
            return Ok(p.clone());
        }
        // prod X_i^{lambda_i} = V(lambda) + lower terms
        let mut prod = self.triv();
        for (i, &k) in lambda.0.iter().enumerate() {
            let fund = VirtualCharacter::irrep(Weight::fundamental(self.rank(), i))?;
            for _ in 0..k {
                prod = self.multiply(&prod, &fund)?;
            }
        }
        let mut p = MPoly::monomial(lambda.0.iter().map(|&k| k as u32).collect(), 1);
        for (mu, &c) in prod.terms() {
            if mu != lambda {
                p = p.sub(&self.irrep_poly(mu)?.scale(c));
            }
        }
        let p = Arc::new(p);
        self.polys
            .write()
            .unwrap()
            .insert(lambda.clone(), p.clone());
        Ok(p)
    }

    fn to_poly(&self, a: &VirtualCharacter) -> Result<MPoly> {
        let mut out = MPoly::default();
        for (w, &c) in a.terms() {
            out = out.add(&self.irrep_poly(w)?.scale(c));
        }
        Ok(out)
    }

    fn from_poly(&self, p: &MPoly) -> Result<VirtualCharacter> {
        let mut out = VirtualCharacter::zero();
        for (e, &c) in &p.0 {
            let mut prod = self.triv();
            for (i, &k) in e.iter().enumerate() {
                let fund = VirtualCharacter::irrep(Weight::fundamental(self.rank(), i))?;
                for _ in 0..k {
                    prod = self.multiply(&prod, &fund)?;
                }
            }
            out = out.add(&prod.scale(&c));
        }
        Ok(out)
    }
}

/// Integer polynomials in the fundamental classes; `R(G)` of a simply
/// connected group is such a polynomial ring, which makes exact division
/// available for fraction-free elimination.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct MPoly(BTreeMap<Vec<u32>, i64>);

impl MPoly {
    fn monomial(e: Vec<u32>, c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Self(m)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.0.entry(e.clone()).or_insert(0);
        *slot = checked_add(*slot, c);
        if *slot == 0 {
            self.0.remove(&e);
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &o.0 {
            out.add_term(e.clone(), c);
        }
        out
    }

    fn scale(&self, k: i64) -> Self {
        let mut out = Self::default();
        for (e, &c) in &self.0 {
            out.add_term(e.clone(), checked_mul(c, k));
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (a, &c) in &self.0 {
            for (b, &d) in &o.0 {
                out.add_term(
                    a.iter().zip(b).map(|(x, y)| x + y).collect(),
                    checked_mul(c, d),
                );
            }
        }
        out
    }

    /// `self / d`, which must be exact.
    fn div_exact(&self, d: &Self) -> Self {
        let (de, &dc) = d.0.iter().next_back().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut q = Self::default();
        while let Some((re, &rc)) = rem.0.iter().next_back() {
            assert!(
                rc % dc == 0 && re.iter().zip(de).all(|(a, b)| a >= b),
                "inexact polynomial division"
            );
            let t = Self::monomial(re.iter().zip(de).map(|(a, b)| a - b).collect(), rc / dc);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        q
    }
}

/// A square matrix over `R(G)`.
#[derive(Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RMatrix<C: Coefficient = i64> {
    rows: Vec<Vec<VirtualCharacter<C>>>,
}

impl<C: Coefficient> fmt::Debug for RMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "{}",
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" | ")
            )?;
        }
        Ok(())
    }
}

impl<C: Coefficient> RMatrix<C> {
    pub fn zero(n: usize) -> Self {
        Self {
            rows: vec![vec![VirtualCharacter::zero(); n]; n],
        }
    }

    pub fn identity(n: usize, rank: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = VirtualCharacter::irrep(Weight::zero(rank)).unwrap();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<VirtualCharacter<C>>>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == rows.len()),
            "matrix must be square"
        );
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &VirtualCharacter<C> {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: VirtualCharacter<C>) {
        self.rows[i][j] = x;
    }

    pub fn rows(&self) -> &[Vec<VirtualCharacter<C>>] {
        &self.rows
    }

    pub fn add(&self, o: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        Self { rows }
    }

    pub fn scale(&self, k: &C) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.scale(k)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self, ring: &RepRing) -> Result<Self> {
        let n = self.size();
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if o.rows[k][j].is_zero() {
                        continue;
                    }
                    let p = ring.multiply(&self.rows[i][k], &o.rows[k][j])?;
                    out.rows[i][j] = out.rows[i][j].add(&p);
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            r.iter().enumerate().all(|(j, x)| match x.as_scalar() {
                Some(c) => c == C::from_int(i64::from(i == j)),
                None => false,
            })
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        Self {
            rows: (0..n)
                .map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect())
                .collect(),
        }
    }
}

impl RMatrix<i64> {
    /// The determinant, by fraction-free (Bareiss) elimination in the
    /// polynomial ring on the fundamental classes.
    pub fn determinant(&self, ring: &RepRing) -> Result<VirtualCharacter> {
        let n = self.size();
        if n == 0 {
            return Ok(ring.triv());
        }
        let mut m: Vec<Vec<MPoly>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| ring.to_poly(x)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut sign = 1i64;
        let mut prev = MPoly::monomial(vec![0; ring.rank()], 1);
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(VirtualCharacter::zero());
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = t.div_exact(&prev);
                }
                m[i][k] = MPoly::default();
            }
            prev = m[k][k].clone();
        }
        ring.from_poly(&m[n - 1][n - 1].scale(sign))
    }

    /// The inverse, by Gauss–Jordan elimination that only ever divides by
    /// unit pivots `+-[V(0)]`. Fails with [`Error::NotInvertible`] if some
    /// column has no unit pivot.
    pub fn inverse(&self, ring: &RepRing) -> Result<Self> {
        let n = self.size();
        let mut a = self.clone();
        let mut inv = Self::identity(n, ring.rank());
        for k in 0..n {
            let p = (k..n)
                .find(|&i| matches!(a.rows[i][k].as_scalar(), Some(1 | -1)))
                .ok_or(Error::NotInvertible)?;
            a.rows.swap(k, p);
            inv.rows.swap(k, p);
            let u = a.rows[k][k].as_scalar().unwrap();
            if u == -1 {
                a.rows[k] = a.rows[k].iter().map(|x| x.neg()).collect();
                inv.rows[k] = inv.rows[k].iter().map(|x| x.neg()).collect();
            }
            for i in 0..n {
                if i == k || a.rows[i][k].is_zero() {
                    continue;
                }
                let f = a.rows[i][k].clone();
                for j in 0..n {
                    if !a.rows[k][j].is_zero() {
                        let d = ring.multiply(&f, &a.rows[k][j])?;
                        a.rows[i][j] = a.rows[i][j].sub(&d);
                    }
                    if !inv.rows[k][j].is_zero() {
                        let d = ring.multiply(&f, &inv.rows[k][j])?;
                        inv.rows[i][j] = inv.rows[i][j].sub(&d);
                    }
                }
            }
        }
        Ok(inv)
    }
}
