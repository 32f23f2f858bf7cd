use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use lowcell::affine_weyl::{AffineElt, AffineWeylGroup, BallTable};
use lowcell::hecke::structure::CacheStatus;
use lowcell::hecke::{Basis, Convention, HTable, HeckeElt, KlTable};
use lowcell::j0::{J0Context, J0Elt, Phi0};
use lowcell::repring::RepRing;
use lowcell::rootdata::Weight;
use lowcell::steinberg::SteinbergBasis;

use crate::config::{require_rank, RunConfig};
use crate::Status;

const BALL_CAP: usize = 5_000_000;

fn group(cfg: &RunConfig) -> AffineWeylGroup {
    AffineWeylGroup::new(cfg.type_tag.root_system())
}

fn element(g: &AffineWeylGroup, s: &str) -> Result<AffineElt> {
    let w = g
        .parse(s)
        .with_context(|| format!("parsing element {s:?}"))?;
    if !g.is_coxeter_element(&w) {
        bail!("{s} is not in the affine Weyl group (translation outside the root lattice)");
    }
    Ok(w)
}

fn weight(cfg: &RunConfig, s: &str) -> Result<Weight> {
    let w: Weight = s.parse()?;
    cfg.type_tag.root_system().check_rank(&w)?;
    Ok(w)
}

pub fn htable(
    cfg: &RunConfig,
    g: &AffineWeylGroup,
    radius: usize,
    conv: Convention,
) -> Result<HTable> {
    let (t, status) = HTable::load_or_compute(g, radius, conv, cfg.cache_dir.as_deref())?;
    if cfg.cache_dir.is_some() {
        let what = if status == CacheStatus::Loaded {
            "loaded"
        } else {
            "computed and stored"
        };
        eprintln!(
            "structure constants for {} ball {radius} ({conv}): {what}",
            cfg.type_tag
        );
    }
    Ok(t)
}

pub fn hecke_kl(cfg: &RunConfig, y: &str, w: &str) -> Result<Status> {
    let g = group(cfg);
    let (y, w) = (element(&g, y)?, element(&g, w)?);
    let ball = Arc::new(BallTable::new(&g, g.length(&w), BALL_CAP)?);
    let kl = KlTable::new(ball.clone());
    let p = kl.kl_polynomial(&y, &w)?;
    let mu = match (ball.id(&y), ball.id(&w)) {
        (Some(a), Some(b)) => kl.mu_by_id(a, b),
        _ => 0,
    };
    cfg.emit(
        "hecke kl",
        json!({
            "y": y.to_string(),
            "w": w.to_string(),
            "length_y": g.length(&y),
            "length_w": g.length(&w),
            "bruhat_leq": g.bruhat_leq(&y, &w),
            "P": p.to_string(),
            "mu": mu,
        }),
    )?;
    Ok(Status::Ok)
}

pub fn hecke_hconst(cfg: &RunConfig, x: &str, y: &str, conv: Convention) -> Result<Status> {
    let g = group(cfg);
    let (x, y) = (element(&g, x)?, element(&g, y)?);
    let radius = g.length(&x).max(g.length(&y));
    let table = htable(cfg, &g, radius, conv)?;
    let h: serde_json::Map<String, Value> = table
        .h_constants(&x, &y)?
        .into_iter()
        .map(|(z, c)| (z.to_string(), Value::String(c.to_string())))
        .collect();
    cfg.emit(
        "hecke hconst",
        json!({ "x": x.to_string(), "y": y.to_string(), "basis": conv.to_string(), "h": h }),
    )?;
    Ok(Status::Ok)
}

pub fn hecke_afn(cfg: &RunConfig, w: &str) -> Result<Status> {
    let g = group(cfg);
    let w = element(&g, w)?;
    let radius = cfg.ball.max(g.length(&w));
    let table = htable(cfg, &g, radius, Convention::Signed)?;
    let a = table.a_function(&w)?;
    cfg.emit(
        "hecke afn",
        json!({ "w": w.to_string(), "length": g.length(&w), "a": a.value, "searched_ball": a.ball }),
    )?;
    Ok(Status::Ok)
}

pub fn rep_tensor(cfg: &RunConfig, lhs: &str, rhs: &str) -> Result<Status> {
    let ring = RepRing::new(cfg.type_tag.root_system());
    let (a, b) = (weight(cfg, lhs)?, weight(cfg, rhs)?);
    let d = ring.tensor_decompose(&a, &b)?;
    let dims: i64 = d.terms().map(|(mu, m)| m * ring.dim(mu).unwrap_or(0)).sum();
    cfg.emit(
        "rep tensor",
        json!({
            "lhs": a.to_string(),
            "rhs": b.to_string(),
            "decomposition": d,
            "dimension": dims,
        }),
    )?;
    Ok(Status::Ok)
}

pub fn steinberg_pairing(cfg: &RunConfig) -> Result<Status> {
    let rs = cfg.type_tag.root_system();
    require_rank(cfg.type_tag, 3, "the Steinberg pairing")?;
    let ring = RepRing::new(rs.clone());
    let sb = SteinbergBasis::new(rs.clone());
    let m = sb.pairing_matrix(&ring)?;
    let nd = sb.nondegeneracy_check(&ring)?;
    let elements: Vec<String> = sb.elements().iter().map(|w| w.to_string()).collect();
    cfg.emit(
        "steinberg pairing",
        json!({
            "elements": elements,
            "x": sb.x,
            "y": sb.y,
            "matrix": m,
            "is_identity": m.is_identity(),
            "determinant": nd.determinant,
            "determinant_is_unit": nd.is_unit,
        }),
    )?;
    Ok(Status::Ok)
}

pub fn j0_mult(cfg: &RunConfig, lhs: &str, rhs: &str) -> Result<Status> {
    let ctx = J0Context::new(cfg.type_tag.root_system());
    let (a, b) = (ctx.parse_index(lhs)?, ctx.parse_index(rhs)?);
    let p: J0Elt = ctx.multiply_basis(&a, &b)?;
    let elements: serde_json::Map<String, Value> = [&a, &b]
        .into_iter()
        .chain(p.terms().map(|(k, _)| k))
        .map(|k| Ok((k.to_string(), Value::String(ctx.c0_element(k)?.to_string()))))
        .collect::<Result<_>>()?;
    cfg.emit(
        "j0 mult",
        json!({ "lhs": a.to_string(), "rhs": b.to_string(), "product": p, "elements": elements }),
    )?;
    Ok(Status::Ok)
}

pub fn j0_check_gamma(cfg: &RunConfig, conv: Convention) -> Result<Status> {
    let g = group(cfg);
    let table = htable(cfg, &g, cfg.ball, conv)?;
    let ctx = J0Context::new(cfg.type_tag.root_system());
    let rep = ctx.gamma_oracle_check(&table)?;
    let pass = rep.pass;
    cfg.emit("j0 check-gamma", serde_json::to_value(&rep)?)?;
    Ok(if pass {
        Status::Ok
    } else {
        Status::VerificationFailed
    })
}

pub fn j0_phi0(cfg: &RunConfig, w: &str, conv: Convention) -> Result<Status> {
    let g = group(cfg);
    let w = element(&g, w)?;
    let ctx = Arc::new(J0Context::new(cfg.type_tag.root_system()));
    let phi = Phi0::with_convention(ctx, g.length(&w), conv)?;
    let image = phi.phi0(&HeckeElt::basis_element(Basis::C, w.clone()))?;
    let matrix = phi.context().matrix_realization(&image)?;
    cfg.emit(
        "j0 phi0",
        json!({ "w": w.to_string(), "basis": conv.to_string(), "phi0": image, "matrix": matrix }),
    )?;
    Ok(Status::Ok)
}
