//! End-to-end acceptance checks. Each criterion prints one pass/fail line;
//! the test fails if any criterion does.

use std::time::Instant;

use jointmeas::analytic::{
    busch_pair_optimal, check_conditions, classify, degenerate_construction, mu_nu_perpendicular,
    optimal_coplanar_convex, projective_mu_nu,
};
use jointmeas::bloch::stat_distance_sq;
use jointmeas::compat::is_jointly_measurable_pair;
use jointmeas::ft::ft_perpendicular_case;
use jointmeas::oracle::{minimize_with_warm_start, sphere_grid_max};
use jointmeas::{
    approximate, fermat_torricelli, incompatibility_bound, is_jointly_measurable_triple,
    CaseClass, MeasurementTriple, OracleConfig, QuadVertices, Vec3,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = (&'static str, fn() -> Result<(), String>);

fn ball(rng: &mut StdRng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() <= 1.0 {
            return v;
        }
    }
}

fn perpendicular_target(rng: &mut StdRng) -> MeasurementTriple {
    loop {
        let phi1 = rng.gen_range(0.0..std::f64::consts::TAU);
        let phi2 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r1 = rng.gen_range(0.5..1.0);
        let r2 = rng.gen_range(0.5..1.0);
        let r3 = rng.gen_range(0.3..1.0);
        let m = MeasurementTriple::from_vecs(
            Vec3::new(r1 * phi1.cos(), r1 * phi1.sin(), 0.0),
            Vec3::new(r2 * phi2.cos(), r2 * phi2.sin(), 0.0),
            Vec3::new(0.0, 0.0, r3),
        )
        .unwrap();
        if matches!(classify(&m), Ok(CaseClass::PerpendicularM3)) {
            return m;
        }
    }
}

fn fail_if(cond: bool, msg: String, errors: &mut Vec<String>) {
    if cond {
        errors.push(msg);
    }
}

fn finish(errors: Vec<String>) -> Result<(), String> {
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

/// 1: the sharp Pauli triple has the known closed-form optimum.
fn pauli_golden() -> Result<(), String> {
    let mut errors = Vec::new();
    let m = MeasurementTriple::pauli();
    let (case, result) = approximate(&m).map_err(|e| e.to_string())?;
    fail_if(
        !matches!(case, CaseClass::PerpendicularM3),
        format!("case {case:?}"),
        &mut errors,
    );
    let r = result.ok_or("no closed form returned")?;
    let s = 1.0 / 3f64.sqrt();
    let mut comp_err = 0.0f64;
    for (n, mv) in r.n.vecs().iter().zip(m.vecs()) {
        let d = *n - mv * s;
        for c in d.as_array() {
            comp_err = comp_err.max(c.abs());
        }
    }
    fail_if(comp_err > 1e-9, format!("n error {comp_err:.2e}"), &mut errors);
    let bound_err = (r.bound - 2.0 * (3f64.sqrt() - 1.0)).abs();
    fail_if(bound_err > 1e-12, format!("bound error {bound_err:.2e}"), &mut errors);
    let family = [
        Vec3::new(s, s, s),
        Vec3::new(s, -s, -s),
        Vec3::new(-s, s, -s),
        Vec3::new(-s, -s, s),
    ];
    fail_if(r.optimal_states.is_empty(), "no optimal states".into(), &mut errors);
    for state in &r.optimal_states {
        let v = state.r.vec();
        let hit = family.iter().any(|f| v.distance(f) <= 1e-9);
        fail_if(!hit, format!("state {v:?} outside the listed family"), &mut errors);
    }
    finish(errors)
}

/// 2: independent search confirms attainment on random perpendicular targets.
fn oracle_agreement_perpendicular() -> Result<(), String> {
    let mut errors = Vec::new();
    let mut rng = StdRng::seed_from_u64(20250824);
    for i in 0..20u64 {
        let m = perpendicular_target(&mut rng);
        let (_, result) = approximate(&m).map_err(|e| e.to_string())?;
        let r = result.ok_or("no closed form")?;
        let cfg = OracleConfig::quick(1000 + i);
        let oracle = minimize_with_warm_start(&m, Some(&r.n), &cfg).map_err(|e| e.to_string())?;
        fail_if(
            oracle.best_value < r.bound - 1e-6,
            format!("target {i}: search undercut the bound by {:.2e}", r.bound - oracle.best_value),
            &mut errors,
        );
        fail_if(
            r.achieved - oracle.best_value > 1e-3,
            format!("target {i}: gap {:.2e}", r.achieved - oracle.best_value),
            &mut errors,
        );
        let res = check_conditions(&m, &r.n).map_err(|e| e.to_string())?;
        let worst = res.iter().cloned().fold(0.0f64, f64::max);
        fail_if(worst > 1e-8, format!("target {i}: residual {worst:.2e}"), &mut errors);
    }
    finish(errors)
}

/// 3: the coplanar closed form reduces to the optimal pair approximation.
fn coplanar_reduces_to_pair_optimum() -> Result<(), String> {
    let mut errors = Vec::new();
    let mut rng = StdRng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 50 {
        let phi1 = rng.gen_range(0.0..std::f64::consts::TAU);
        let phi2 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r1 = rng.gen_range(0.6..1.0);
        let r2 = rng.gen_range(0.6..1.0);
        let v1 = Vec3::new(r1 * phi1.cos(), r1 * phi1.sin(), 0.0);
        let v2 = Vec3::new(r2 * phi2.cos(), r2 * phi2.sin(), 0.0);
        let k1: f64 = rng.gen_range(-0.9..0.9);
        let k2: f64 = rng.gen_range(-0.9..0.9);
        if k1.abs() + k2.abs() >= 0.95 {
            continue;
        }
        let v3 = v1 * k1 + v2 * k2;
        if v3.norm() > 1.0 {
            continue;
        }
        let m = match MeasurementTriple::from_vecs(v1, v2, v3) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let (pair_jm, _) = is_jointly_measurable_pair(&m.m1, &m.m2);
        if pair_jm || !matches!(classify(&m), Ok(CaseClass::CoplanarConvex { .. })) {
            continue;
        }
        tested += 1;
        let r = optimal_coplanar_convex(&m).map_err(|e| e.to_string())?;
        let (b1, b2) = busch_pair_optimal(&m.m1, &m.m2).map_err(|e| e.to_string())?;
        let [n1, n2, n3] = r.n.vecs();
        let err = n1.distance(&b1.vec()).max(n2.distance(&b2.vec()));
        fail_if(err > 1e-9, format!("target {tested}: pair mismatch {err:.2e}"), &mut errors);
        fail_if(
            n3.as_array() != v3.as_array(),
            format!("target {tested}: n3 not passed through exactly"),
            &mut errors,
        );
    }
    finish(errors)
}

/// 4: the degenerate-case construction is jointly measurable, evaluates to
/// the stated per-state value, and the true optimum stays strictly above the
/// lower bound.
fn degenerate_construction_checks() -> Result<(), String> {
    let mut errors = Vec::new();
    let m = MeasurementTriple::from_vecs(
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.7, 0.7, 0.0),
    )
    .map_err(|e| e.to_string())?;
    let r = degenerate_construction(&m).map_err(|e| e.to_string())?;
    let verdict = is_jointly_measurable_triple(&r.n).map_err(|e| e.to_string())?;
    fail_if(
        verdict.margin.abs() > 1e-8,
        format!("margin {:.2e}", verdict.margin),
        &mut errors,
    );
    let p = QuadVertices::from_triple(&m);
    let ft = fermat_torricelli(&p).map_err(|e| e.to_string())?;
    let stated = (2.0 / 3.0) * (ft.total_distance - 4.0);
    let mv = [&m.m1, &m.m2, &m.m3];
    let nv = [&r.n.m1, &r.n.m2, &r.n.m3];
    for (k, state) in r.optimal_states.iter().enumerate() {
        let total: f64 = (0..3).map(|i| stat_distance_sq(state, mv[i], nv[i])).sum();
        fail_if(
            (total - stated).abs() > 1e-9,
            format!("state {}: value {total:.6} vs stated {stated:.6}", k + 1),
            &mut errors,
        );
    }
    let bound = incompatibility_bound(&m).map_err(|e| e.to_string())?;
    let oracle = minimize_with_warm_start(&m, Some(&r.n), &OracleConfig::quick(4))
        .map_err(|e| e.to_string())?;
    fail_if(
        oracle.best_value <= bound.raw_bound + 1e-6,
        format!("search optimum {:.6} not above the bound {:.6}", oracle.best_value, bound.raw_bound),
        &mut errors,
    );
    finish(errors)
}

/// 5: the geometric-median solver beats random candidates and certifies.
fn ft_certification() -> Result<(), String> {
    let mut errors = Vec::new();
    let mut rng = StdRng::seed_from_u64(55);
    for case in 0..500 {
        let q = QuadVertices::new([
            ball(&mut rng) * 1.5,
            ball(&mut rng) * 1.5,
            ball(&mut rng) * 1.5,
            ball(&mut rng) * 1.5,
        ]);
        let ft = match fermat_torricelli(&q) {
            Ok(ft) => ft,
            Err(e) => {
                errors.push(format!("case {case}: {e}"));
                continue;
            }
        };
        fail_if(
            ft.residual_norm > 1e-10 && ft.at_vertex.is_none(),
            format!("case {case}: no certificate (residual {:.2e})", ft.residual_norm),
            &mut errors,
        );
        let mut best = f64::INFINITY;
        for _ in 0..10_000 {
            // random convex combinations of the vertices cover the hull
            let w: [f64; 4] = std::array::from_fn(|_| -rng.gen_range(0.0f64..1.0).ln());
            let total: f64 = w.iter().sum();
            let mut y = Vec3::ZERO;
            for (wi, qi) in w.iter().zip(&q.q) {
                y = y + *qi * (wi / total);
            }
            best = best.min(q.total_distance_to(&y));
        }
        fail_if(
            ft.total_distance > best + 1e-8,
            format!("case {case}: solver {:.9} vs sampled {:.9}", ft.total_distance, best),
            &mut errors,
        );
    }
    finish(errors)
}

/// 6: the noisy Pauli family crosses the compatibility threshold at 1/sqrt(3).
fn pauli_threshold() -> Result<(), String> {
    let pauli = MeasurementTriple::pauli();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let jm = is_jointly_measurable_triple(&pauli.scale(mid).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .jointly_measurable;
        if jm {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let threshold = 0.5 * (lo + hi);
    let err = (threshold - 1.0 / 3f64.sqrt()).abs();
    if err > 1e-9 {
        Err(format!("threshold {threshold:.12}, error {err:.2e}"))
    } else {
        Ok(())
    }
}

/// 7: grid search over states matches the sign-pattern closed form.
fn state_maximization_closed_form() -> Result<(), String> {
    let mut errors = Vec::new();
    let mut rng = StdRng::seed_from_u64(99);
    for case in 0..200 {
        let m = MeasurementTriple::from_vecs(ball(&mut rng), ball(&mut rng), ball(&mut rng))
            .map_err(|e| e.to_string())?;
        let n = MeasurementTriple::from_vecs(ball(&mut rng), ball(&mut rng), ball(&mut rng))
            .map_err(|e| e.to_string())?;
        let (closed, _) = jointmeas::bloch::total_worst_case_sq(&m, &n);
        let grid = sphere_grid_max(&m, &n, 400);
        fail_if(
            grid > closed + 1e-12,
            format!("case {case}: grid {grid:.12} above closed form {closed:.12}"),
            &mut errors,
        );
        fail_if(
            closed - grid > 2e-3,
            format!("case {case}: grid short by {:.2e}", closed - grid),
            &mut errors,
        );
    }
    finish(errors)
}

/// 8: the two routes to the shrink factors agree on the angle family.
fn projective_family_agreement() -> Result<(), String> {
    let mut errors = Vec::new();
    for i in 1..=5 {
        for j in 1..=5 {
            let alpha = i as f64 * std::f64::consts::PI / 12.0;
            let beta = j as f64 * std::f64::consts::PI / 12.0;
            let m = MeasurementTriple::from_vecs(
                Vec3::new(-alpha.sin(), alpha.cos(), 0.0),
                Vec3::new(beta.sin(), beta.cos(), 0.0),
                Vec3::new(0.0, 0.0, 1.0),
            )
            .map_err(|e| e.to_string())?;
            let quad = QuadVertices::from_triple(&m);
            let p_f = ft_perpendicular_case(&m).map_err(|e| e.to_string())?;
            let (mu_a, nu_a) = mu_nu_perpendicular(&p_f, &quad).map_err(|e| e.to_string())?;
            let (mu_b, nu_b) = match projective_mu_nu(alpha, beta) {
                Ok(v) => v,
                Err(e) => {
                    errors.push(format!("({i},{j})*pi/12: {e}"));
                    continue;
                }
            };
            let err = (mu_a - mu_b).abs().max((nu_a - nu_b).abs());
            fail_if(err > 1e-9, format!("({i},{j})*pi/12: error {err:.2e}"), &mut errors);
        }
    }
    finish(errors)
}

#[test]
fn acceptance() {
    let checks: [Check; 8] = [
        ("1 Pauli golden case", pauli_golden),
        ("2 oracle agreement, perpendicular case", oracle_agreement_perpendicular),
        ("3 coplanar reduction to the pair optimum", coplanar_reduces_to_pair_optimum),
        ("4 degenerate construction", degenerate_construction_checks),
        ("5 Fermat-Torricelli certification", ft_certification),
        ("6 joint-measurability threshold", pauli_threshold),
        ("7 state-maximization closed form", state_maximization_closed_form),
        ("8 projective family", projective_family_agreement),
    ];
    let mut failures = Vec::new();
    for (name, run) in checks {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("acceptance {name}: PASS ({secs:.1}s)"),
            Err(detail) => {
                println!("acceptance {name}: FAIL ({secs:.1}s) — {detail}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
