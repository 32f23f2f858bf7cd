//! Tables of structure constants `h_{x,y,z}` for all `x, y` in a ball.
//!
//! Products are formed directly in the Kazhdan–Lusztig basis: peel a right
//! descent `y = y's` and use
//!
//! ```text
//! C_w C_s = C_{ws} + sum_{z < w, zs < z} mu(z,w) C_z     (ws > w)
//! C_w C_s = -(v + v^-1) C_w                              (ws < w)
//! ```
//!
//! (with `+(v + v^-1)` for the positive normalization). This needs the
//! Kazhdan–Lusztig data on the ball of twice the radius and is far cheaper
//! than going through the standard basis, which is kept as a cross-check.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Convention, KlTable};
use crate::affine_weyl::{AffineElt, AffineWeylGroup, BallTable};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

const CACHE_SCHEMA: u32 = 1;
const BALL_CAP: usize = 5_000_000;

type Row = Vec<(u32, LaurentPoly)>;

/// `h_{x,y,z}` for `x, y` of length at most `radius` and every `z`.
///
/// Ids of `x` and `y` are ids of the inner ball; ids of `z` refer to the ball
/// of radius `2 * radius`, whose first entries are the inner ball.
#[derive(Debug)]
pub struct HTable {
    outer: Arc<BallTable>,
    radius: usize,
    inner_len: usize,
    convention: Convention,
    rows: Vec<Vec<Row>>,
}

/// Where an [`HTable`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Computed,
    Loaded,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    version: String,
    root_system: String,
    radius: usize,
    convention: Convention,
    elements: Vec<String>,
    rows: Vec<Vec<Row>>,
}

/// Result of the `a`-function search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AValue {
    pub value: i32,
    pub ball: usize,
}

fn type_label(group: &AffineWeylGroup) -> String {
    format!("{}~", group.root_system().label())
}

impl HTable {
    pub fn compute(group: &AffineWeylGroup, radius: usize, convention: Convention) -> Result<Self> {
        let outer = Arc::new(BallTable::new(group, 2 * radius, BALL_CAP)?);
        let kl = KlTable::new(outer.clone());
        let inner_len = outer
            .elements()
            .iter()
            .take_while(|x| group.length(x) <= radius)
            .count();
        let rows = (0..inner_len as u32)
            .into_par_iter()
            .map(|x| products_with(&kl, convention, x, inner_len))
            .collect();
        Ok(Self {
            outer,
            radius,
            inner_len,
            convention,
            rows,
        })
    }

    pub fn group(&self) -> &AffineWeylGroup {
        self.outer.group()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// The ball of twice the radius that carries every `z`.
    pub fn outer_ball(&self) -> &Arc<BallTable> {
        &self.outer
    }

    /// Elements of length at most `radius`.
    pub fn elements(&self) -> &[AffineElt] {
        &self.outer.elements()[..self.inner_len]
    }

    /// The nonzero `h_{x,y,z}` by ids, sorted by `z`.
    pub fn row(&self, x: u32, y: u32) -> &[(u32, LaurentPoly)] {
        &self.rows[x as usize][y as usize]
    }

    fn inner_id(&self, x: &AffineElt) -> Result<u32> {
        match self.outer.id(x) {
            Some(i) if (i as usize) < self.inner_len => Ok(i),
            _ => Err(Error::BallTooSmall {
                needed: self.group().length(x),
                ball: self.radius,
            }),
        }
    }

    pub fn h(&self, x: &AffineElt, y: &AffineElt, z: &AffineElt) -> Result<LaurentPoly> {
        let row = self.row(self.inner_id(x)?, self.inner_id(y)?);
        let Some(zid) = self.outer.id(z) else {
            // beyond the length bound, so certainly zero
            return Ok(LaurentPoly::zero());
        };
        Ok(row
            .binary_search_by_key(&zid, |t| t.0)
            .map(|k| row[k].1.clone())
            .unwrap_or_default())
    }

    pub fn h_constants(
        &self,
        x: &AffineElt,
        y: &AffineElt,
    ) -> Result<BTreeMap<AffineElt, LaurentPoly>> {
        let row = self.row(self.inner_id(x)?, self.inner_id(y)?);
        Ok(row
            .iter()
            .map(|(z, c)| (self.outer.elem(*z).clone(), c.clone()))
            .collect())
    }

    /// The largest `-min deg h_{x,y,w}` over `x, y` in the ball.
    pub fn a_function(&self, w: &AffineElt) -> Result<AValue> {
        let wid = self.inner_id(w)?;
        let value = self
            .rows
            .par_iter()
            .map(|r| {
                r.iter()
                    .filter_map(|row| {
                        row.binary_search_by_key(&wid, |t| t.0)
                            .ok()
                            .map(|k| &row[k].1)
                    })
                    .filter_map(|c| c.min_exp())
                    .map(|e| -e)
                    .max()
                    .unwrap_or(i32::MIN)
            })
            .max()
            .unwrap_or(i32::MIN);
        Ok(AValue {
            value,
            ball: self.radius,
        })
    }

    /// `a` for every element of the ball in one pass.
    pub fn a_function_all(&self) -> Vec<i32> {
        let mut a = vec![i32::MIN; self.inner_len];
        for r in &self.rows {
            for row in r {
                for (z, c) in row {
                    if (*z as usize) < self.inner_len {
                        if let Some(e) = c.min_exp() {
                            a[*z as usize] = a[*z as usize].max(-e);
                        }
                    }
                }
            }
        }
        a
    }

    /// The coefficient of `v^{-a_z}` in `h_{x,y,z^{-1}}`.
    pub fn gamma(&self, x: &AffineElt, y: &AffineElt, z: &AffineElt, a_z: i32) -> Result<i64> {
        let zi = self.group().inverse(z);
        Ok(self.h(x, y, &zi)?.coefficient_of(-a_z))
    }

    /// Cache key: a content hash of crate version, type, radius and basis
    /// convention.
    pub fn cache_key(group: &AffineWeylGroup, radius: usize, convention: Convention) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "{}|{}|{}|{}",
            env!("CARGO_PKG_VERSION"),
            type_label(group),
            radius,
            convention
        ));
        hex::encode(&h.finalize()[..12])
    }

    pub fn cache_path(
        dir: &Path,
        group: &AffineWeylGroup,
        radius: usize,
        convention: Convention,
    ) -> PathBuf {
        dir.join(format!(
            "htable-{}.json",
            Self::cache_key(group, radius, convention)
        ))
    }

    pub fn to_json(&self) -> String {
        let file = CacheFile {
            schema: CACHE_SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            root_system: type_label(self.group()),
            radius: self.radius,
            convention: self.convention,
            elements: self.elements().iter().map(|x| x.to_string()).collect(),
            rows: self.rows.clone(),
        };
        serde_json::to_string(&file).expect("table serializes")
    }

    /// Loads the table from `dir` if present, otherwise computes and stores it.
    pub fn load_or_compute(
        group: &AffineWeylGroup,
        radius: usize,
        convention: Convention,
        dir: Option<&Path>,
    ) -> Result<(Self, CacheStatus)> {
        let Some(dir) = dir else {
            return Ok((
                Self::compute(group, radius, convention)?,
                CacheStatus::Computed,
            ));
        };
        let path = Self::cache_path(dir, group, radius, convention);
        if path.exists() {
            let text = fs::read_to_string(&path).map_err(|source| Error::Cache {
                path: path.clone(),
                source,
            })?;
            return Ok((
                Self::from_json(group, radius, convention, &text, &path)?,
                CacheStatus::Loaded,
            ));
        }
        let table = Self::compute(group, radius, convention)?;
        fs::create_dir_all(dir).map_err(|source| Error::Cache {
            path: dir.to_path_buf(),
            source,
        })?;
        // write-then-rename so a concurrent reader never sees half a file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(table.to_json().as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|source| Error::Cache {
            path: path.clone(),
            source,
        })?;
        Ok((table, CacheStatus::Computed))
    }

    fn from_json(
        group: &AffineWeylGroup,
        radius: usize,
        convention: Convention,
        text: &str,
        path: &Path,
    ) -> Result<Self> {
        let corrupt = || Error::CacheCorrupt(path.to_path_buf());
        let file: CacheFile = serde_json::from_str(text).map_err(|_| corrupt())?;
        if file.schema != CACHE_SCHEMA
            || file.root_system != type_label(group)
            || file.radius != radius
            || file.convention != convention
        {
            return Err(corrupt());
        }
        let outer = Arc::new(BallTable::new(group, 2 * radius, BALL_CAP)?);
        let inner_len = outer
            .elements()
            .iter()
            .take_while(|x| group.length(x) <= radius)
            .count();
        let same_elements = file.elements.len() == inner_len
            && file
                .elements
                .iter()
                .zip(outer.elements())
                .all(|(a, b)| *a == b.to_string());
        let shape_ok = file.rows.len() == inner_len
            && file.rows.iter().all(|r| {
                r.len() == inner_len
                    && r.iter()
                        .all(|row| row.iter().all(|(z, _)| (*z as usize) < outer.len()))
            });
        if !same_elements || !shape_ok {
            return Err(corrupt());
        }
        Ok(Self {
            outer,
            radius,
            inner_len,
            convention,
            rows: file.rows,
        })
    }
}

/// `C_x C_y` for all `y` in the inner ball, by induction on `l(y)`.
fn products_with(kl: &KlTable, convention: Convention, x: u32, inner_len: usize) -> Vec<Row> {
    let ball = kl.ball();
    let descent_sign = match convention {
        Convention::Signed => -1,
        Convention::Positive => 1,
    };
    let mut out: Vec<Row> = Vec::with_capacity(inner_len);
    let mut acc = vec![LaurentPoly::zero(); ball.len()];
    for y in 0..inner_len as u32 {
        if y == 0 {
            out.push(vec![(x, LaurentPoly::one())]);
            continue;
        }
        let s = ball.a_right_descent(y);
        let yp = ball.right_mul(y, s).expect("descent inside ball");
        let mut touched: Vec<u32> = Vec::new();
        let mut bump = |acc: &mut Vec<LaurentPoly>, z: u32, c: &LaurentPoly, k: i64, shift: i32| {
            let slot = &mut acc[z as usize];
            if slot.is_zero() {
                touched.push(z);
            }
            slot.add_scaled_shifted(c, k, shift);
        };
        for (w, c) in &out[yp as usize] {
            if ball.is_right_descent(*w, s) {
                bump(&mut acc, *w, c, descent_sign, 1);
                bump(&mut acc, *w, c, descent_sign, -1);
            } else {
                let ws = ball
                    .right_mul(*w, s)
                    .expect("product support stays inside the doubled ball");
                bump(&mut acc, ws, c, 1, 0);
                for &(z, m) in kl.mu_list(*w) {
                    if ball.is_right_descent(z, s) {
                        bump(&mut acc, z, c, m, 0);
                    }
                }
            }
        }
        for &(z, m) in kl.mu_list(yp) {
            if ball.is_right_descent(z, s) {
                for (w, c) in &out[z as usize] {
                    bump(&mut acc, *w, c, -m, 0);
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let row: Row = touched
            .into_iter()
            .filter_map(|z| {
                let c = std::mem::take(&mut acc[z as usize]);
                (!c.is_zero()).then_some((z, c))
            })
            .collect();
        out.push(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::HeckeAlgebra;
    use crate::rootdata::RootSystem;

    fn group(n: usize) -> AffineWeylGroup {
        AffineWeylGroup::new(RootSystem::type_a(n))
    }

    #[test]
    fn agrees_with_standard_basis_route() {
        for (n, r) in [(1, 4), (2, 3)] {
            let g = group(n);
            for conv in [Convention::Signed, Convention::Positive] {
                let table = HTable::compute(&g, r, conv).unwrap();
                let alg = HeckeAlgebra::with_convention(g.clone(), 2 * r, conv).unwrap();
                for x in table.elements() {
                    for y in table.elements() {
                        assert_eq!(
                            table.h_constants(x, y).unwrap(),
                            alg.h_constants(x, y).unwrap(),
                            "{x} * {y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn unit_and_support() {
        let g = group(2);
        let table = HTable::compute(&g, 4, Convention::Signed).unwrap();
        let e = g.identity();
        for x in table.elements() {
            let hx = table.h_constants(&e, x).unwrap();
            assert_eq!(hx.len(), 1);
            assert!(hx[x].is_one());
            for y in table.elements() {
                for z in table.h_constants(x, y).unwrap().keys() {
                    assert!(g.length(z) <= g.length(x) + g.length(y));
                }
            }
        }
    }

    #[test]
    fn rank_one_a_values() {
        let g = group(1);
        let table = HTable::compute(&g, 6, Convention::Signed).unwrap();
        assert_eq!(table.a_function(&g.identity()).unwrap().value, 0);
        for w in table.elements().iter().skip(1) {
            assert_eq!(table.a_function(w).unwrap(), AValue { value: 1, ball: 6 });
        }
        let s0 = g.generator(0);
        assert_eq!(
            table.h(&s0, &s0, &s0).unwrap(),
            "-v^-1 - v".parse().unwrap()
        );
    }

    #[test]
    fn cache_round_trip_is_bit_identical() {
        let g = group(2);
        let dir = std::env::temp_dir().join(format!("lowcell-htable-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let (a, s1) = HTable::load_or_compute(&g, 3, Convention::Signed, Some(&dir)).unwrap();
        let (b, s2) = HTable::load_or_compute(&g, 3, Convention::Signed, Some(&dir)).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Computed, CacheStatus::Loaded));
        assert_eq!(a.to_json(), b.to_json());
        let fresh = HTable::compute(&g, 3, Convention::Signed).unwrap();
        assert_eq!(fresh.to_json(), a.to_json());
        let path = HTable::cache_path(&dir, &g, 3, Convention::Signed);
        fs::write(&path, "{\"schema\":1}").unwrap();
        assert!(matches!(
            HTable::load_or_compute(&g, 3, Convention::Signed, Some(&dir)),
            Err(Error::CacheCorrupt(_))
        ));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn cache_keys_separate_settings() {
        let g = group(2);
        let k = HTable::cache_key(&g, 3, Convention::Signed);
        assert_ne!(k, HTable::cache_key(&g, 4, Convention::Signed));
        assert_ne!(k, HTable::cache_key(&g, 3, Convention::Positive));
        assert_ne!(k, HTable::cache_key(&group(1), 3, Convention::Signed));
    }
}
