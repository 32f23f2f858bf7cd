//! Acceptance run: one line per criterion, exit status nonzero if any
//! criterion that is expected to hold fails.
//!
//! Criterion 2's first clause does not hold as stated (the second row of
//! column `e` is `-triv`); it is printed as FAIL and the observed values are
//! pinned so that any change is caught.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lowcell::affine_weyl::{AffineWeylGroup, BallTable};
use lowcell::hecke::sanity::{finite_smoothness_check, kl_sanity};
use lowcell::hecke::{Convention, HTable, KlTable};
use lowcell::j0::{multiplicativity_check, sl2_phi0_checks, J0Context, J0Elt, Phi0};
use lowcell::repring::RepRing;
use lowcell::rootdata::RootSystem;
use lowcell::steinberg::SteinbergBasis;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: u32, name: &str, start: Instant, o: &Outcome) {
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {n} [{verdict}] {name}: {} ({:.1?})",
        o.detail,
        start.elapsed()
    );
}

fn criterion1() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [1, 2] {
        let rs = RootSystem::type_a(n);
        let m = SteinbergBasis::new(rs.clone())
            .pairing_matrix(&RepRing::new(rs.clone()))
            .unwrap();
        let ok = m.is_identity();
        pass &= ok;
        parts.push(format!("A{n} {0}x{0} identity={ok}", m.size()));
    }
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

/// Returns the literal first clause and the correction clause separately.
fn criterion2() -> (Outcome, Outcome) {
    let rs = RootSystem::type_a(3);
    let ring = RepRing::new(rs.clone());
    let sb = SteinbergBasis::new(rs.clone());
    let rep = sb.verify_dual_correction(&ring).unwrap();
    let triv = ring.triv();
    let equal_triv = rep.column_e.iter().filter(|(_, c)| *c == triv).count();
    let column: Vec<String> = rep
        .column_e
        .iter()
        .map(|(w, c)| format!("<F_{w},G_e>={c}"))
        .collect();

    // pinned observation: e -> triv, sigma = s1s3s2 = 2413 -> -triv
    let pinned = rep.column_e.len() == 2
        && rep.column_e[0] == ("e".to_string(), triv.clone())
        && rep.column_e[1].1 == triv.neg()
        && rep.sigma_one_line.as_deref() == Some(&[2, 4, 1, 3][..]);
    assert!(pinned, "column e changed: {column:?}");

    let first = Outcome {
        pass: equal_triv == 2,
        detail: format!(
            "w with <F_w,G_e> = triv: {equal_triv} (expected 2); nonzero column e: {}",
            column.join(", ")
        ),
    };
    let second = Outcome {
        pass: rep.pass,
        detail: format!(
            "sigma = {} = {:?}; <F_w, G_e + G_sigma> = delta_(w,e) triv on all {} w: {}",
            rep.sigma.clone().unwrap_or_default(),
            rep.sigma_one_line.clone().unwrap_or_default(),
            rep.rows.len(),
            rep.pass
        ),
    };
    (first, second)
}

fn criteria3_and_4() -> (Outcome, Outcome) {
    let mut g_parts = Vec::new();
    let mut a_parts = Vec::new();
    let (mut g_pass, mut a_pass) = (true, true);
    for (n, r) in [(1usize, 12usize), (2, 8)] {
        let rs = RootSystem::type_a(n);
        let group = AffineWeylGroup::new(rs.clone());
        let table = HTable::compute(&group, r, Convention::Signed).unwrap();
        let ctx = J0Context::new(rs);
        let rep = ctx.gamma_oracle_check(&table).unwrap();
        let members = ctx.c0_members(table.elements());
        // every cell triple in the ball is compared, a superset of |chi| <= 3
        let small = members
            .iter()
            .filter(|(_, i)| i.chi.norm_inf() <= 3)
            .count();
        g_pass &= rep.pass && small > 0;
        g_parts.push(format!(
            "A{n}~ ball {r}: {} cell elements ({small} with |chi| <= 3), {} triples, {} nonzero, sign {}, {} mismatches",
            rep.c0_elements,
            rep.triples,
            rep.nonzero,
            rep.sign,
            rep.mismatches.len()
        ));

        let a = table.a_function_all();
        let a0 = ctx.a_value();
        let cell_ok = members.iter().all(|(w, _)| {
            let i = table.elements().iter().position(|x| x == *w).unwrap();
            a[i] == a0
        });
        let bounded = table
            .elements()
            .iter()
            .zip(&a)
            .all(|(w, &v)| v <= group.length(w) as i32);
        // the cell is exactly the a = l(w0) locus in the ball
        let top = a.iter().filter(|&&v| v == a0).count();
        a_pass &= cell_ok && bounded && top == members.len();
        a_parts.push(format!(
            "A{n}~ ball {r}: a = {a0} on all {} cell elements: {cell_ok}, a(w) <= l(w) on {} elements: {bounded}, #(a = {a0}) = {top}",
            members.len(),
            a.len()
        ));
    }
    (
        Outcome {
            pass: g_pass,
            detail: g_parts.join("; "),
        },
        Outcome {
            pass: a_pass,
            detail: a_parts.join("; "),
        },
    )
}

fn criterion5() -> Outcome {
    let rep = sl2_phi0_checks(6, Convention::Positive).unwrap();
    let ctx = Arc::new(J0Context::new(RootSystem::type_a(1)));
    let mult = multiplicativity_check(&Phi0::new(ctx, 12).unwrap(), 6).unwrap();
    let signed = sl2_phi0_checks(6, Convention::Signed).unwrap();
    let thetas = rep.theta_images.iter().filter(|t| t.1).count();
    Outcome {
        pass: rep.pass && mult.pass,
        detail: format!(
            "C' basis, conjugator diag{:?}: Coxeter image {}, theta -> diagonal class {thetas}/{} (weight step {:?}), \
             quadratic {}, Bernstein {} (in H {}), unit {}; multiplicative on {} pairs: {}; \
             [signed C: Coxeter image {}]",
            rep.conjugator.clone().unwrap_or_default(),
            rep.coxeter_image,
            rep.theta_images.len(),
            rep.weight_per_step.as_ref().map(|w| w.to_string()),
            rep.quadratic_relation,
            rep.bernstein_relation_image,
            rep.bernstein_relation_hecke,
            rep.unit_image,
            mult.pairs,
            mult.pass,
            signed.coxeter_image
        ),
    }
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a30);
    let mut parts = Vec::new();
    let mut pass = true;
    let ctxs: Vec<J0Context> = [1, 2].map(|n| J0Context::new(RootSystem::type_a(n))).into();
    let grids: Vec<_> = ctxs.iter().map(|c| c.grid(4)).collect();
    let pick =
        |k: usize, rng: &mut ChaCha8Rng| J0Elt::<i64>::basis(grids[k].choose(rng).unwrap().clone());

    let mut assoc = 0;
    for t in 0..200 {
        let k = t % 2;
        let c = &ctxs[k];
        let (a, b, d) = (pick(k, &mut rng), pick(k, &mut rng), pick(k, &mut rng));
        let left = c.j0_multiply(&c.j0_multiply(&a, &b).unwrap(), &d).unwrap();
        let right = c.j0_multiply(&a, &c.j0_multiply(&b, &d).unwrap()).unwrap();
        assoc += usize::from(left == right);
    }
    pass &= assoc == 200;
    parts.push(format!("associative on {assoc}/200 triples"));

    let mut idem = true;
    let mut unit = true;
    for (k, c) in ctxs.iter().enumerate() {
        let ds = c.distinguished_involutions();
        for d in &ds {
            for e in &ds {
                let p = c
                    .j0_multiply(&J0Elt::<i64>::basis(d.clone()), &J0Elt::basis(e.clone()))
                    .unwrap();
                idem &= if d == e {
                    p == J0Elt::basis(d.clone())
                } else {
                    p.is_zero()
                };
            }
        }
        idem &= c.scan_idempotents(4).unwrap().len() == ds.len();
        for x in &grids[k] {
            let x = J0Elt::<i64>::basis(x.clone());
            unit &= c.j0_multiply(&c.unit(), &x).unwrap() == x
                && c.j0_multiply(&x, &c.unit()).unwrap() == x;
        }
    }
    pass &= idem && unit;
    parts.push(format!(
        "t_(u,0,u) orthogonal idempotents and the only idempotents on the grid: {idem}"
    ));
    parts.push(format!("sum t_d two-sided unit on the whole grid: {unit}"));

    let mut hom = 0;
    for t in 0..100 {
        let k = t % 2;
        let c = &ctxs[k];
        let (a, b) = (pick(k, &mut rng), pick(k, &mut rng));
        let lhs = c
            .matrix_realization(&c.j0_multiply(&a, &b).unwrap())
            .unwrap();
        let rhs = c
            .matrix_realization(&a)
            .unwrap()
            .mul(&c.matrix_realization(&b).unwrap(), c.ring())
            .unwrap();
        hom += usize::from(lhs == rhs);
    }
    pass &= hom == 100;
    parts.push(format!(
        "matrix realization multiplicative on {hom}/100 pairs"
    ));
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn criterion7() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, r) in [(1, 12), (2, 8), (3, 5)] {
        let g = AffineWeylGroup::new(RootSystem::type_a(n));
        let table = KlTable::new(Arc::new(BallTable::new(&g, r, 1_000_000).unwrap()));
        let rep = kl_sanity(&table);
        pass &= rep.pass;
        parts.push(format!(
            "A{n}~ ball {r} ({} elements, {} pairs): P_ww=1 {}, degree/constant {}, support = Bruhat {}, inverse symmetry {}",
            rep.elements,
            rep.pairs_checked,
            rep.diagonal_is_one,
            rep.degree_bounds,
            rep.support_is_bruhat_interval,
            rep.inverse_symmetry
        ));
    }
    let smooth = finite_smoothness_check(3).unwrap();
    pass &= smooth.pass && smooth.patterns == vec![vec![3, 4, 1, 2], vec![4, 2, 3, 1]];
    parts.push(format!(
        "A3: singular patterns found {:?}, P_(e,w) = 1 iff pattern-avoiding on {} elements: {}",
        smooth.patterns, smooth.group_order, smooth.pass
    ));
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    let mut record = |n: u32, name: &str, t: Instant, o: &Outcome| {
        report(n, name, t, o);
        if !o.pass {
            failed.push(n);
        }
    };
    let t = Instant::now();
    record(1, "Steinberg duality for SL2, SL3", t, &criterion1());

    let t = Instant::now();
    let (literal, correction) = criterion2();
    // expected to fail; see the module docs
    report(2, "SL4 column e equals triv for exactly two w", t, &literal);
    record(2, "SL4 dual of F_e is G_e + G_sigma", t, &correction);

    let t = Instant::now();
    let (gamma, afn) = criteria3_and_4();
    record(3, "gamma cross-oracle", t, &gamma);
    record(4, "a-function on the lowest cell", t, &afn);

    let t = Instant::now();
    record(
        5,
        "phi_0 for SL2 against classes on P1 x P1",
        t,
        &criterion5(),
    );
    let t = Instant::now();
    record(6, "J_0 ring axioms", t, &criterion6());
    let t = Instant::now();
    record(7, "KL sanity and A3 smoothness", t, &criterion7());

    println!("acceptance: known failure: criterion 2 first clause; other failures: {failed:?}");
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
