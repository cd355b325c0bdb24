//! The `verify` suites. Each check records what it claims, whether it held,
//! and the measured residual.

use num_complex::Complex64;
use qinv_core::group::{self, Which};
use qinv_core::invariants::{self, e, eval_invariants, f, gamma_value, z_f, z_l};
use qinv_core::optimizer::{self, OptConfig, CONJECTURED_MAX};
use qinv_core::qstate::{self, embed_a, orbit_dim, random_acoords, LocalOp, StateVec, MAX_ORBIT_DIM};
use qinv_core::{rat, ACoords, GroupElement, MultiPoly, RatMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{Check, Status, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Symbolic,
    Group,
    Numeric,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symbolic" => Ok(Suite::Symbolic),
            "group" => Ok(Suite::Group),
            "numeric" => Ok(Suite::Numeric),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?} (expected symbolic, group, numeric or all)")),
        }
    }
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Symbolic => "symbolic",
            Suite::Group => "group",
            Suite::Numeric => "numeric",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Random A-points for the genericity check.
    pub samples: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { samples: 1000, restarts: 50, seed: 1 }
    }
}

fn check(name: &str, claim: &str, ok: bool, residual: f64, detail: String) -> Check {
    Check {
        name: name.into(),
        claim: claim.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        residual,
        detail,
    }
}

/// Exact polynomial equality; the residual counts the terms of `lhs − rhs`.
fn exact(name: &str, claim: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> Check {
    let diff = (lhs - rhs).len();
    check(name, claim, diff == 0, diff as f64, String::new())
}

fn bound(name: &str, claim: &str, value: f64, tol: f64) -> Check {
    check(name, claim, value <= tol, value, format!("tolerance {tol:e}"))
}

fn scaled(p: &MultiPoly, num: i64, den: i64) -> MultiPoly {
    p.scale(&rat(num, den))
}

pub fn run(suite: Suite, opts: &Options) -> VerifyReport {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Symbolic | Suite::All) {
        checks.extend(symbolic());
    }
    if matches!(suite, Suite::Group | Suite::All) {
        checks.extend(group_checks());
    }
    if matches!(suite, Suite::Numeric | Suite::All) {
        checks.extend(numeric(opts));
    }
    summarize(suite, checks)
}

fn summarize(suite: Suite, checks: Vec<Check>) -> VerifyReport {
    VerifyReport {
        suite: suite.name().into(),
        passed: checks.iter().all(|c| c.status == Status::Pass),
        checks,
    }
}

fn symbolic() -> Vec<Check> {
    let [e0, e1, e2, e3, e4] = [0, 1, 2, 3, 4].map(|j| e(j).expect("E_j index in range"));
    let e1sq = e1.pow(2);
    let t = group::tau();
    let t = t.matrix();
    let gamma = invariants::gamma();
    let jac = invariants::jacobian_f();
    let witness_rhs = &(&(&(&e1.pow(4) - &scaled(&(&e1sq * &e2), 6, 1)) + &scaled(&e2.pow(2), 3, 1))
        + &scaled(&(&e1 * &e3), 8, 1))
        - &scaled(&e4, 6, 1);
    let jac_at = jac.eval_exact(&[1, 2, 4, 8].map(|v| rat(v, 1)));
    vec![
        exact("f1_equals_e1", "F1 = E1", &f(1).unwrap(), &e1),
        exact("f2_equals_e1_squared", "F2 = E1^2", &f(2).unwrap(), &e1sq),
        exact("tau_fixes_e1", "E1(tau z) = E1(z)", &e1.subst_linear(t), &e1),
        exact("tau_fixes_e1_squared", "E1^2(tau z) = E1^2(z)", &e1sq.subst_linear(t), &e1sq),
        exact(
            "tau_maps_e2",
            "E2(tau z) = 3/4 E1^2 - 1/2 E2 + 6 E0",
            &e2.subst_linear(t),
            &(&(&scaled(&e1sq, 3, 4) - &scaled(&e2, 1, 2)) + &scaled(&e0, 6, 1)),
        ),
        exact(
            "tau_maps_e0",
            "E0(tau z) = -1/16 E1^2 + 1/8 E2 + 1/2 E0",
            &e0.subst_linear(t),
            &(&(&scaled(&e1sq, -1, 16) + &scaled(&e2, 1, 8)) + &scaled(&e0, 1, 2)),
        ),
        exact("gamma_equals_delta_squared", "gamma = Delta^2", gamma, &invariants::delta().pow(2)),
        exact(
            "gamma_equals_newton_e12",
            "gamma = e12 of the squares, from power sums p_k = 6 F_k",
            gamma,
            &invariants::gamma_via_newton(),
        ),
        check(
            "jacobian_nonzero",
            "the Jacobian determinant of (F1, F3, F4, F6) is not identically zero",
            !jac.is_zero(),
            if jac.is_zero() { 1.0 } else { 0.0 },
            format!("degree {:?}, value at (1,2,4,8) = {jac_at}", jac.degree()),
        ),
        exact(
            "witness_identity",
            "24 E0^2 = E1^4 - 6 E1^2 E2 + 3 E2^2 + 8 E1 E3 - 6 E4",
            &scaled(&e0.pow(2), 24, 1),
            &witness_rhs,
        ),
    ]
}

fn group_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let mut closures = Vec::new();
    for (which, expected) in [(Which::W, Some(192)), (Which::WNu, Some(384)), (Which::WTilde, None)] {
        match which.closure() {
            Ok(g) => {
                let name = format!("order_{}", which.name().to_lowercase());
                out.push(match expected {
                    Some(n) => check(
                        &name,
                        &format!("|{}| = {n}", which.name()),
                        g.order() == n,
                        g.order().abs_diff(n) as f64,
                        format!("enumerated {}", g.order()),
                    ),
                    None => {
                        let minus_i = GroupElement::new(RatMatrix::identity().scale(&rat(-1, 1))).unwrap();
                        let has_minus_i = g.contains(&minus_i);
                        check(
                            &name,
                            "the full group is finite with order 576 or 1152",
                            matches!(g.order(), 576 | 1152),
                            0.0,
                            format!(
                                "enumerated {}; contains -I: {has_minus_i}; order modulo {{+I, -I}}: {}; \
                                 1152 is the Weyl group of F4, 576 its image modulo sign",
                                g.order(),
                                if has_minus_i { g.order() / 2 } else { g.order() },
                            ),
                        )
                    }
                });
                out.push(check(
                    &format!("axioms_{}", which.name().to_lowercase()),
                    "closure contains I and is closed under products and inverses",
                    g.verify_group_axioms(),
                    0.0,
                    String::new(),
                ));
                closures.push((which, g));
            }
            Err(err) => out.push(check(
                &format!("order_{}", which.name().to_lowercase()),
                "closure terminates",
                false,
                1.0,
                err.to_string(),
            )),
        }
    }
    let restriction = |a, b, i| {
        let actual = qstate::slot_swap_restriction(a, b).expect("slot swap preserves A");
        let expected = group::sigma_restriction(i).expect("sigma index");
        check(
            &format!("sigma{i}_restriction"),
            &format!("swapping qubits {} and {} acts on A as {}", a + 1, b + 1, if i == 2 { "tau" } else { "nu" }),
            actual == expected,
            0.0,
            String::new(),
        )
    };
    out.extend([restriction(0, 1, 1), restriction(1, 2, 2), restriction(2, 3, 3)]);
    out.push(check(
        "sigma2_hadamard_form",
        "the Hadamard-like form of the middle swap equals (u2 <-> u3) composed with tau",
        group::hadamard_sigma2() == group::reflection(&[0, 0, 1, -1].map(|v| rat(v, 1))).unwrap().compose(&group::tau()),
        0.0,
        "that form has determinant +1, so it is not itself a reflection".into(),
    ));
    if let Some((_, wt)) = closures.iter().find(|(w, _)| *w == Which::WTilde) {
        for k in invariants::GENERATOR_INDICES {
            let p = f(k).unwrap();
            let ok = wt.is_invariant(&p);
            out.push(check(
                &format!("f{k}_invariant"),
                &format!("F{k} is invariant under every element of the full group"),
                ok,
                0.0,
                String::new(),
            ));
        }
        out.push(check(
            "gamma_invariant",
            "gamma is invariant under every element of the full group",
            wt.is_invariant(invariants::gamma()),
            0.0,
            String::new(),
        ));
    }
    if let Some((_, w)) = closures.iter().find(|(w, _)| *w == Which::W) {
        let delta = invariants::delta();
        let bad = w.elements().iter().filter(|g| delta.subst_linear(g.matrix()) != delta.scale(&g.det())).count();
        out.push(check(
            "delta_equivariance",
            "Delta(s z) = det(s) Delta(z) for every s in W",
            bad == 0,
            bad as f64,
            format!("{bad} of {} elements fail", w.order()),
        ));
    }
    out
}

fn numeric(opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    let r = eval_invariants(&z_l()).expect("z_L is finite");
    let e012 = [r.e0, r.e1, r.e2].iter().map(|v| v.norm()).fold(0.0, f64::max);
    out.push(bound("l_e0_e1_e2_vanish", "E0, E1, E2 vanish at L", e012, 1e-12));
    out.push(bound("l_e3", "E3(L) = 1/9", (r.e3 - 1.0 / 9.0).norm(), 1e-12));
    out.push(bound(
        "l_gamma",
        "|gamma(L)| = 3^-9 (relative error)",
        (r.gamma.norm() - CONJECTURED_MAX).abs() / CONJECTURED_MAX,
        1e-12,
    ));

    let zf = z_f();
    let rf = eval_invariants(&zf).expect("z_F is finite");
    let nf = zf.norm();
    let worst = [(rf.f1, 2), (rf.f3, 6), (rf.f4, 8)]
        .iter()
        .map(|(v, d)| v.norm() / nf.powi(*d))
        .fold(0.0, f64::max);
    out.push(bound("f_state_f1_f3_f4_vanish", "F1, F3, F4 vanish at F (scaled by |z|^deg)", worst, 1e-9));
    out.push(check(
        "f_state_f6_nonzero",
        "F6 does not vanish at F",
        rf.f6.norm() > 1e-6,
        rf.f6.norm(),
        "must exceed 1e-6".into(),
    ));

    match optimizer::certify_critical(&z_l()) {
        Ok(cert) => {
            out.push(bound("l_critical", "L is a critical point of |gamma|^2 on the unit sphere", cert.critical_residual, 1e-8));
            out.push(check(
                "l_hessian",
                "the sphere Hessian at L is negative semidefinite with a zero eigenvalue",
                cert.hessian_eigenvalues.len() == 7 && cert.passed,
                cert.max_eigenvalue,
                format!("eigenvalues / h: {:?}", cert.relative_eigenvalues.iter().map(|v| (v * 1e6).round() / 1e6).collect::<Vec<_>>()),
            ));
        }
        Err(err) => out.push(check("l_critical", "L is a critical point", false, 1.0, err.to_string())),
    }

    let cfg = OptConfig { restarts: opts.restarts, seed: opts.seed, ..OptConfig::default() };
    match optimizer::maximize_abs_gamma(&cfg) {
        Ok(res) => {
            out.push(bound(
                "optimizer_finds_l_value",
                "random-restart ascent reaches |gamma| = 3^-9",
                (res.best_value - CONJECTURED_MAX).abs(),
                1e-6,
            ));
            let top = res.per_restart.iter().map(|r| r.value).fold(0.0, f64::max);
            out.push(check(
                "optimizer_never_exceeds_l",
                "no restart finds |gamma| above 3^-9 + 1e-9",
                !res.exceeds_conjectured_max,
                (top - CONJECTURED_MAX).max(0.0),
                format!("best {:.15e} from restart {} of {}", res.best_value, res.best_restart, cfg.restarts),
            ));
        }
        Err(err) => out.push(check("optimizer_finds_l_value", "optimization runs", false, 1.0, err.to_string())),
    }

    let at_1234 = [1.0, 2.0, 3.0, 4.0].map(|v| Complex64::new(v, 0.0));
    out.push(bound(
        "gamma_product_form",
        "the product form of gamma matches the expanded polynomial at (1,2,3,4) (relative)",
        (gamma_value(&at_1234) - invariants::gamma().eval(&at_1234)).norm() / invariants::gamma().eval(&at_1234).norm(),
        1e-12,
    ));
    out.push(genericity(opts));
    out.extend(small_systems(opts.seed));
    out
}

fn genericity(opts: &Options) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points: Vec<ACoords> = (0..opts.samples).map(|_| random_acoords(&mut rng)).collect();
    for k in 0..100 {
        let mut z = random_acoords(&mut rng).0;
        let (i, j) = invariants::PAIRS[k % 6];
        z[j] = if (k / 6) % 2 == 0 { z[i] } else { -z[i] };
        points.push(ACoords(z));
    }
    let disagreements = points
        .iter()
        .filter(|z| {
            let generic = orbit_dim(&embed_a(z)).map(|d| d == MAX_ORBIT_DIM).unwrap_or(false);
            generic != invariants::gamma_nonzero(z)
        })
        .count();
    check(
        "genericity_iff_gamma_nonzero",
        "a state of A has a 12-dimensional orbit exactly when gamma does not vanish",
        disagreements == 0,
        disagreements as f64,
        format!("{} random and 100 degenerate points", opts.samples),
    )
}

fn basis_state(n: usize, entries: &[usize]) -> StateVec {
    StateVec::uniform(n, entries)
}

fn small_systems(seed: u64) -> Vec<Check> {
    let bell = basis_state(2, &[0, 3]);
    let ghz = basis_state(3, &[0, 7]);
    let w = basis_state(3, &[1, 2, 4]);
    let f2 = |s: &StateVec| qstate::bilinear_form(s).expect("two qubits");
    let f4 = |s: &StateVec| qstate::f4(s).expect("three qubits");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drift = 0.0f64;
    for _ in 0..100 {
        for n in [2, 3] {
            let psi = qstate::random_state(n, &mut rng);
            let moved = qstate::apply_local(&LocalOp::random(n, &mut rng), &psi).expect("matching size");
            let (a, b): (Complex64, Complex64) = if n == 2 { (f2(&psi), f2(&moved)) } else { (f4(&psi), f4(&moved)) };
            drift = drift.max((a - b).norm() / a.norm());
        }
    }
    vec![
        bound("bell_concurrence", "|f2(Bell)| = 1", (f2(&bell).norm() - 1.0).abs(), 1e-12),
        bound("product_concurrence", "f2(|00>) = 0", f2(&StateVec::basis(2, 0)).norm(), 0.0),
        bound("ghz_tangle", "|f4(GHZ)| = 1/4", (f4(&ghz).norm() - 0.25).abs(), 1e-12),
        bound("w_tangle", "f4(W) = 0", f4(&w).norm(), 1e-12),
        bound("local_invariance", "f2 and f4 are unchanged by random local SL(2) operations (relative)", drift, 1e-9),
    ]
}
