//! Randomized and exhaustive verification suites behind `verify {...}`.
//!
//! Each check produces a [`CheckReport`]; a suite is a deterministic list of
//! reports for a given seed.  Symbolic checks are exact (the residual, when
//! nonzero, is serialized into the report); numeric checks state their
//! tolerance in the params string.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::geometry::{
    anti_gauss_decompose, b_char_symbolic, embed, exp_q_minus, exp_q_plus,
    gauss_decompose, h_of, h_of_symbolic, laplace_beltrami, measure_density, poisson, GroupElem,
    PointChart,
};
use crate::lie::{matrix_exp_f64, mat_to_f64, sl_basis, EnvElem};
use crate::quant::{
    asymptotics_check, berezin_eigenvalue, berezin_transform, berezin_transform_truncated,
    breve_antiinvolution_sides, covariant_symbol, delta_eigenfunction, equivariance_sides,
    invariance_residual, linear_symbol, star,
};
use crate::rat::{rat_i, Rat};
use crate::repn::{
    overgroup_direct, overgroup_formula, pi_minus_group_f64, pi_minus_lie, pi_plus_group_f64,
    pi_plus_lie, tensor_factorization, xi_bullet,
};
use crate::sample::Sampler;
use crate::series::expand_inv_lambda;
use crate::sl2::{contravariant_symbol_sl2, covariant_symbol_sl2, HyperboloidPoint, SignedPower,
    Sl2Elem};
use crate::symbol::SymbolExpr;

/// Outcome of a single verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckReport {
    fn pass(check: impl Into<String>, params: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            params: params.into(),
            status: "pass".into(),
            residual: None,
        }
    }

    fn fail(
        check: impl Into<String>,
        params: impl Into<String>,
        residual: impl Into<String>,
    ) -> Self {
        CheckReport {
            check: check.into(),
            params: params.into(),
            status: "fail".into(),
            residual: Some(residual.into()),
        }
    }

    fn symbolic(check: impl Into<String>, params: impl Into<String>, residual: SymbolExpr) -> Self {
        if residual.is_zero() {
            Self::pass(check, params)
        } else {
            Self::fail(check, params, residual.to_string())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed())
}

// ---------------------------------------------------------------------------
// geometry
// ---------------------------------------------------------------------------

pub fn geometry_suite(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut s = Sampler::new(seed);

    // 50 random chart points embed to trace-1 idempotents (the constructor
    // verifies both properties exactly)
    let mut bad: Option<String> = None;
    for _ in 0..50 {
        let p = s.chart(3);
        if let Err(e) = embed(&p) {
            bad = Some(format!("{e} at xi={:?}", p.xi));
            break;
        }
    }
    out.push(match bad {
        None => CheckReport::pass("embed_trace1_idempotent", "n=3, 50 points"),
        Some(msg) => CheckReport::fail("embed_trace1_idempotent", "n=3, 50 points", msg),
    });

    // Gauss / anti-Gauss round trips on random SL(3, Q)
    let mut bad: Option<String> = None;
    let mut done = 0;
    while done < 25 {
        let g = s.group_elem(3, 5);
        match gauss_decompose(&g) {
            Err(_) => continue, // outside the big cell; resample
            Ok((y, x, h)) => {
                let back = exp_q_plus(&y).mul(&exp_q_minus(&x)).mul(&h.embed());
                if &back != g.mat() {
                    bad = Some("gauss re-multiplication mismatch".to_string());
                    break;
                }
            }
        }
        if let Ok((xi, eta, h)) = anti_gauss_decompose(&g) {
            let back = exp_q_minus(&xi).mul(&h.embed()).mul(&exp_q_plus(&eta));
            if &back != g.mat() {
                bad = Some("anti-gauss re-multiplication mismatch".to_string());
                break;
            }
        }
        done += 1;
    }
    out.push(match bad {
        None => CheckReport::pass("decomposition_round_trip", "n=3, 25 elements"),
        Some(msg) => CheckReport::fail("decomposition_round_trip", "n=3, 25 elements", msg),
    });

    // h_of against the generic decomposition machinery
    let mut bad: Option<String> = None;
    for _ in 0..20 {
        let p = s.chart(3);
        let m = GroupElem::new(
            exp_q_minus(&p.xi)
                .mul(&exp_q_plus(&p.eta.iter().map(|v| -v.clone()).collect::<Vec<_>>())),
        )
        .expect("det 1");
        match (h_of(&p), gauss_decompose(&m)) {
            (Ok(h1), Ok((_, _, h2))) => {
                if h1 != h2 {
                    bad = Some("h_of differs from the Gauss H-part".into());
                    break;
                }
            }
            (Err(_), Err(_)) => {}
            _ => {
                bad = Some("h_of and gauss disagree about the big cell".into());
                break;
            }
        }
    }
    out.push(match bad {
        None => CheckReport::pass("h_of_consistency", "n=3, 20 points"),
        Some(msg) => CheckReport::fail("h_of_consistency", "n=3, 20 points", msg),
    });

    // b(h(xi,eta)) = N^{-n} symbolically, n = 2..4
    for n in 2..=4usize {
        let report = match h_of_symbolic(n).and_then(|(a, b)| b_char_symbolic(&a, &b)) {
            Ok(bc) => CheckReport::symbolic(
                "b_char_symbolic",
                format!("n={n}"),
                bc.sub(&SymbolExpr::n_inv_pow(n, n as u32)),
            ),
            Err(e) => CheckReport::fail("b_char_symbolic", format!("n={n}"), e.to_string()),
        };
        out.push(report);
    }

    // the N-transformation cocycle at exact rational points with positive N-values
    let mut bad: Option<String> = None;
    let mut done = 0;
    while done < 20 {
        let p = s.chart_positive(3);
        let g = s.group_elem(3, 4);
        let moved = crate::repn::xi_bullet(&p.xi, &g)
            .and_then(|(xi2, h2)| {
                crate::repn::eta_circ(&p.eta, &g).map(|(eta2, h1)| (xi2, eta2, h2, h1))
            });
        let Ok((xi2, eta2, h2, h1)) = moved else { continue };
        let q = PointChart::new(xi2, eta2).expect("lengths");
        if !q.n_value().is_positive() {
            continue;
        }
        // N(xi~, eta^) = N(xi, eta) b~^{-1} b^
        let want = p.n_value() * &h1.b / &h2.b;
        if q.n_value() != want {
            bad = Some(format!("cocycle mismatch: {} vs {}", q.n_value(), want));
            break;
        }
        done += 1;
    }
    out.push(match bad {
        None => CheckReport::pass("n_transformation_cocycle", "n=3, 20 samples"),
        Some(msg) => CheckReport::fail("n_transformation_cocycle", "n=3, 20 samples", msg),
    });

    // Laplacian and Poisson bracket against independent monomial expansion
    let mono_oracle_delta = |a: &[u16], b: &[u16], n: usize| -> SymbolExpr {
        // Delta(xi^a eta^b) = N sum_ij (delta_ij - xi_i eta_j) a_i b_j
        //                       xi^{a - e_i} eta^{b - e_j}
        let mut acc = SymbolExpr::zero(n);
        for i in 0..n - 1 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n - 1 {
                if b[j] == 0 {
                    continue;
                }
                let mut mono = crate::symbol::Monomial { xi: a.to_vec(), eta: b.to_vec() };
                mono.xi[i] -= 1;
                mono.eta[j] -= 1;
                let base = SymbolExpr::monomial(
                    n,
                    mono,
                    crate::lambda::LambdaScalar::from_i64(a[i] as i64 * b[j] as i64),
                );
                let mut coeff = SymbolExpr::xi(n, i).mul(&SymbolExpr::eta(n, j)).neg();
                if i == j {
                    coeff = coeff.add(&SymbolExpr::one(n));
                }
                acc = acc.add(&coeff.mul(&base));
            }
        }
        SymbolExpr::n_poly(n).mul(&acc)
    };
    let mut residual = SymbolExpr::zero(3);
    for _ in 0..30 {
        let a: Vec<u16> = (0..2).map(|_| s.int(0, 3) as u16).collect();
        let b: Vec<u16> = (0..2).map(|_| s.int(0, 3) as u16).collect();
        let mono = SymbolExpr::monomial(
            3,
            crate::symbol::Monomial { xi: a.clone(), eta: b.clone() },
            crate::lambda::LambdaScalar::one(),
        );
        residual = residual.add(&laplace_beltrami(&mono).sub(&mono_oracle_delta(&a, &b, 3)));
    }
    out.push(CheckReport::symbolic(
        "laplacian_monomial_oracle",
        "n=3, 30 random monomials",
        residual,
    ));

    // Poisson bilinearity and antisymmetry on random polynomials
    let mut residual = SymbolExpr::zero(3);
    for _ in 0..10 {
        let f = random_poly(&mut s, 3, 2);
        let g = random_poly(&mut s, 3, 2);
        let h = random_poly(&mut s, 3, 2);
        let c = s.rat();
        // antisymmetry
        residual = residual.add(
            &poisson(&f, &g).expect("dims").add(&poisson(&g, &f).expect("dims")),
        );
        // linearity in the first slot
        let lin = poisson(&f.mul_rat(&c).add(&h), &g)
            .expect("dims")
            .sub(&poisson(&f, &g).expect("dims").mul_rat(&c))
            .sub(&poisson(&h, &g).expect("dims"));
        residual = residual.add(&lin);
    }
    out.push(CheckReport::symbolic(
        "poisson_bilinear_antisymmetric",
        "n=3, 10 random triples",
        residual,
    ));

    // measure density spot values
    let p0 = PointChart::new(vec![rat_i(0)], vec![rat_i(0)]).expect("lengths");
    let ok = measure_density(&p0) == Ok(rat_i(1))
        && measure_density(
            &PointChart::new(vec![crate::rat::rat(1, 2)], vec![crate::rat::rat(1, 3)])
                .expect("lengths"),
        ) == Ok(crate::rat::rat(36, 25));
    out.push(if ok {
        CheckReport::pass("measure_density_values", "n=2 spot checks")
    } else {
        CheckReport::fail("measure_density_values", "n=2 spot checks", "value mismatch")
    });

    // breve is an involution fixing N
    let f = random_poly(&mut s, 3, 3).mul(&SymbolExpr::n_inv_pow(3, 2));
    let mut residual = f.breve().breve().sub(&f);
    residual = residual.add(&SymbolExpr::n_poly(3).breve().sub(&SymbolExpr::n_poly(3)));
    out.push(CheckReport::symbolic("breve_involution", "n=3", residual));

    out
}

fn random_poly(s: &mut Sampler, n: usize, deg: u16) -> SymbolExpr {
    let nv = n - 1;
    let mut acc = SymbolExpr::zero(n);
    for _ in 0..4 {
        let xi: Vec<u16> = (0..nv).map(|_| s.int(0, deg as i64) as u16).collect();
        let eta: Vec<u16> = (0..nv).map(|_| s.int(0, deg as i64) as u16).collect();
        acc = acc.add(&SymbolExpr::monomial(
            n,
            crate::symbol::Monomial { xi, eta },
            crate::lambda::LambdaScalar::from_rat(s.rat()),
        ));
    }
    acc
}

// ---------------------------------------------------------------------------
// representations
// ---------------------------------------------------------------------------

pub fn repn_suite(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut s = Sampler::new(seed.wrapping_add(1));

    // group law of the xi-action
    let mut bad: Option<String> = None;
    let mut done = 0;
    while done < 15 {
        let g1 = s.group_elem(3, 4);
        let g2 = s.group_elem(3, 4);
        let xi = s.rat_vec(2);
        let nested = xi_bullet(&xi, &g1).and_then(|(x, _)| xi_bullet(&x, &g2));
        let joint = xi_bullet(&xi, &g1.mul(&g2));
        match (nested, joint) {
            (Ok((a, _)), Ok((b, _))) => {
                if a != b {
                    bad = Some("group law violated".into());
                    break;
                }
                done += 1;
            }
            _ => continue,
        }
    }
    out.push(match bad {
        None => CheckReport::pass("xi_action_group_law", "n=3, 15 samples"),
        Some(m) => CheckReport::fail("xi_action_group_law", "n=3, 15 samples", m),
    });

    // operator bracket = bracket operator, symbolically, n = 2 and 3
    for n in [2usize, 3] {
        let mut ok = true;
        let basis = sl_basis(n);
        'outer: for (_, x) in &basis {
            for (_, y) in &basis {
                let bx = pi_minus_lie(x);
                let by = pi_minus_lie(y);
                let comm = match (bx.compose(&by), by.compose(&bx)) {
                    (Ok(a), Ok(b)) => a.sub(&b),
                    _ => {
                        ok = false;
                        break 'outer;
                    }
                };
                if comm != pi_minus_lie(&crate::lie::bracket(x, y)) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        out.push(if ok {
            CheckReport::pass("lie_bracket_representation", format!("pi^-, n={n}, all pairs"))
        } else {
            CheckReport::fail(
                "lie_bracket_representation",
                format!("pi^-, n={n}"),
                "commutator mismatch",
            )
        });
    }

    // finite-difference oracle for every operator coefficient, n = 2..4
    for n in 2..=4usize {
        let dev = lie_fd_max_deviation(n, &mut s);
        out.push(if dev < 1e-6 {
            CheckReport::pass(
                "lie_operator_fd_oracle",
                format!("n={n}, tolerance 1e-6, max dev {dev:.2e}"),
            )
        } else {
            CheckReport::fail(
                "lie_operator_fd_oracle",
                format!("n={n}, tolerance 1e-6"),
                format!("max deviation {dev:.3e}"),
            )
        });
    }

    // infinitesimal invariance of N^lambda, n = 2..4
    for n in 2..=4usize {
        let mut residual = SymbolExpr::zero(n);
        for (_, x) in sl_basis(n) {
            residual = residual.add(&invariance_residual(&x));
        }
        out.push(CheckReport::symbolic(
            "supercomplete_invariance",
            format!("n={n}, all basis elements"),
            residual,
        ));
    }

    // overgroup action: direct cocycle path vs horospherical formula, and the
    // tensor factorization, on seeded rational tuples
    for n in [3usize, 4] {
        let mut agreements = 0;
        let mut bad: Option<String> = None;
        while agreements < 30 {
            let g1 = s.group_elem(n, 4);
            let g2 = s.group_elem(n, 4);
            let p = s.chart_positive(n);
            let lam = s.int(-3, 3);
            let (direct, formula) =
                match (overgroup_direct(&g1, &g2, lam, &p), overgroup_formula(&g1, &g2, lam, &p)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => continue,
                };
            if !formula.point.n_value().is_positive() {
                continue;
            }
            if direct != formula {
                bad = Some(format!(
                    "paths disagree: {} vs {}",
                    direct.multiplier, formula.multiplier
                ));
                break;
            }
            agreements += 1;
        }
        out.push(match bad {
            None => CheckReport::pass("overgroup_two_path", format!("n={n}, 30 tuples")),
            Some(m) => CheckReport::fail("overgroup_two_path", format!("n={n}"), m),
        });
    }

    // tensor factorization at random tuples
    let f = |p: &PointChart| {
        SymbolExpr::xi(3, 0)
            .mul(&SymbolExpr::eta(3, 1))
            .add(&SymbolExpr::one(3))
            .evaluate(&p.xi, &p.eta, &rat_i(0))
    };
    let mut bad: Option<String> = None;
    let mut done = 0;
    while done < 15 {
        let g1 = s.group_elem(3, 4);
        let g2 = s.group_elem(3, 4);
        let p = s.chart(3);
        let lam = s.int(-3, 3);
        if let Ok((joint, seq)) = tensor_factorization(&g1, &g2, lam, f, &p) {
            if joint != seq {
                bad = Some(format!("joint {joint} vs sequential {seq}"));
                break;
            }
            done += 1;
        }
    }
    out.push(match bad {
        None => CheckReport::pass("tensor_factorization", "n=3, 15 tuples"),
        Some(m) => CheckReport::fail("tensor_factorization", "n=3, 15 tuples", m),
    });

    out
}

/// Max relative deviation between operator coefficients and central finite
/// differences of the group action, over all basis elements of `sl(n)`.
pub fn lie_fd_max_deviation(n: usize, s: &mut Sampler) -> f64 {
    let t = 1e-5;
    let mut max_dev: f64 = 0.0;
    let points: Vec<Vec<f64>> = (0..2)
        .map(|_| (0..n - 1).map(|_| s.int(-40, 40) as f64 / 100.0).collect())
        .collect();
    for (_, x) in sl_basis(n) {
        let xf = mat_to_f64(x.mat());
        let gp = matrix_exp_f64(&xf, t);
        let gm = matrix_exp_f64(&xf, -t);
        let op_minus = pi_minus_lie(&x);
        let op_plus = pi_plus_lie(&x);
        for pt in &points {
            // zeroth-order coefficient via f = 1 at lambda = 1
            let one = |_: &[f64]| 1.0;
            if let (Some(a), Some(b)) = (
                pi_minus_group_f64(&gp, 1.0, &one, pt),
                pi_minus_group_f64(&gm, 1.0, &one, pt),
            ) {
                let num = (a - b) / (2.0 * t);
                let sym = eval_coeff_f64(&op_minus, &vec![0u16; n - 1], pt, true, 1);
                max_dev = max_dev.max((num - sym).abs() / (1.0 + sym.abs()));
            }
            if let (Some(a), Some(b)) = (
                pi_plus_group_f64(&gp, 1.0, &one, pt),
                pi_plus_group_f64(&gm, 1.0, &one, pt),
            ) {
                let num = (a - b) / (2.0 * t);
                let sym = eval_coeff_f64(&op_plus, &vec![0u16; n - 1], pt, false, 1);
                max_dev = max_dev.max((num - sym).abs() / (1.0 + sym.abs()));
            }
            // first-order coefficients via coordinate functions at lambda = 0
            for j in 0..n - 1 {
                let coord = move |v: &[f64]| v[j];
                let mut alpha = vec![0u16; n - 1];
                alpha[j] = 1;
                if let (Some(a), Some(b)) = (
                    pi_minus_group_f64(&gp, 0.0, &coord, pt),
                    pi_minus_group_f64(&gm, 0.0, &coord, pt),
                ) {
                    let num = (a - b) / (2.0 * t);
                    let sym = eval_coeff_f64(&op_minus, &alpha, pt, true, 0);
                    max_dev = max_dev.max((num - sym).abs() / (1.0 + sym.abs()));
                }
                if let (Some(a), Some(b)) = (
                    pi_plus_group_f64(&gp, 0.0, &coord, pt),
                    pi_plus_group_f64(&gm, 0.0, &coord, pt),
                ) {
                    let num = (a - b) / (2.0 * t);
                    let sym = eval_coeff_f64(&op_plus, &alpha, pt, false, 0);
                    max_dev = max_dev.max((num - sym).abs() / (1.0 + sym.abs()));
                }
            }
        }
    }
    max_dev
}

fn eval_coeff_f64(
    op: &crate::diffop::DiffOperator,
    alpha: &[u16],
    pt: &[f64],
    xi_family: bool,
    lam: i64,
) -> f64 {
    for (a, c) in op.terms() {
        if a.as_slice() == alpha {
            let vals: Vec<Rat> = pt
                .iter()
                .map(|&v| Rat::from_float(v).expect("finite floats convert"))
                .collect();
            let zeros = vec![rat_i(0); pt.len()];
            let (xi, eta) = if xi_family { (&vals, &zeros) } else { (&zeros, &vals) };
            return crate::rat::rat_f64(
                &c.evaluate(xi, eta, &rat_i(lam)).expect("polynomial coefficients"),
            );
        }
    }
    0.0
}

// ---------------------------------------------------------------------------
// quantization
// ---------------------------------------------------------------------------

pub fn quant_suite(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut s = Sampler::new(seed.wrapping_add(2));

    // linear-symbol theorem: cov(X) = lambda tr(x X), all basis, n = 2..4
    for n in 2..=4usize {
        let mut residual = SymbolExpr::zero(n);
        for (_, x) in sl_basis(n) {
            residual = residual.add(
                &covariant_symbol(&EnvElem::letter(x.clone())).sub(&linear_symbol(&x)),
            );
        }
        out.push(CheckReport::symbolic(
            "linear_symbol_theorem",
            format!("n={n}, all basis elements"),
            residual,
        ));
    }

    // star / concatenated-word consistency over the three-letter alphabet
    for n in [2usize, 3] {
        let alphabet = quant_alphabet(n);
        let words = words_up_to(&alphabet, 2, n);
        let mut residual = SymbolExpr::zero(n);
        for w1 in &words {
            for w2 in &words {
                if w1.max_word_len() + w2.max_word_len() > 2 {
                    continue;
                }
                residual = residual.add(&star(w1, w2).sub(&covariant_symbol(&w1.mul(w2))));
            }
        }
        out.push(CheckReport::symbolic(
            "star_word_consistency",
            format!("n={n}, words of total length <= 2"),
            residual,
        ));
    }

    // breve anti-involution through the eta-side realization
    for n in [2usize, 3] {
        let alphabet = quant_alphabet(n);
        let mut residual = SymbolExpr::zero(n);
        for a in &alphabet {
            for b in &alphabet {
                let (lhs, rhs) = breve_antiinvolution_sides(a, b);
                residual = residual.add(&lhs.sub(&rhs));
            }
        }
        out.push(CheckReport::symbolic(
            "breve_antiinvolution",
            format!("n={n}, letter pairs"),
            residual,
        ));
    }

    // correspondence principle residuals for basis-letter pairs
    for n in [2usize, 3] {
        let mut residual = SymbolExpr::zero(n);
        let basis = sl_basis(n);
        for (_, x) in basis.iter().take(4) {
            for (_, y) in basis.iter().take(4) {
                match asymptotics_check(&EnvElem::letter(x.clone()), &EnvElem::letter(y.clone()))
                {
                    Ok(r) => {
                        residual = residual.add(&r.product_residual).add(&r.bracket_residual);
                        if let Some(sv) = r.single_var_residual {
                            residual = residual.add(&sv);
                        }
                    }
                    Err(e) => {
                        out.push(CheckReport::fail(
                            "correspondence_principle",
                            format!("n={n}"),
                            e.to_string(),
                        ));
                        residual = SymbolExpr::zero(n);
                        break;
                    }
                }
            }
        }
        out.push(CheckReport::symbolic(
            "correspondence_principle",
            format!("n={n}, basis-letter pairs"),
            residual,
        ));
    }

    // Berezin eigenvalues and the terminating series on eigenfunctions
    for n in [3usize, 4] {
        for m in 0..=2u32 {
            let report = match delta_eigenfunction(n, m) {
                Ok(e) => match berezin_transform(&e) {
                    Ok(lhs) => CheckReport::symbolic(
                        "berezin_eigen_consistency",
                        format!("n={n}, m={m}"),
                        lhs.sub(&e.mul_scalar(&berezin_eigenvalue(m, n))),
                    ),
                    Err(err) => CheckReport::fail(
                        "berezin_eigen_consistency",
                        format!("n={n}, m={m}"),
                        err.to_string(),
                    ),
                },
                Err(err) => CheckReport::fail(
                    "berezin_eigen_consistency",
                    format!("n={n}, m={m}"),
                    err.to_string(),
                ),
            };
            out.push(report);
        }
    }

    // asymptotic head of the Berezin transform on random polynomials
    let mut residual = SymbolExpr::zero(3);
    for _ in 0..5 {
        let f = random_poly(&mut s, 3, 2);
        let bf = berezin_transform_truncated(&f, 2);
        let ser = expand_inv_lambda(&bf, 1);
        residual = residual.add(&ser.coefficient(0).sub(&f));
        residual = residual.add(&ser.coefficient(1).add(&laplace_beltrami(&f)));
    }
    out.push(CheckReport::symbolic(
        "berezin_asymptotic_head",
        "n=3, 5 random polynomials, B = 1 - Delta/lambda + O(1/lambda^2)",
        residual,
    ));

    // equivariance of the symbol map
    for n in [2usize, 3] {
        let basis = sl_basis(n);
        let mut residual = SymbolExpr::zero(n);
        for (_, l) in basis.iter().take(3) {
            for (_, x) in basis.iter().take(3) {
                let e = EnvElem::letter(x.clone());
                let (lhs, rhs) = equivariance_sides(l, &e).expect("matching dimensions");
                residual = residual.add(&lhs.sub(&rhs));
            }
        }
        out.push(CheckReport::symbolic(
            "symbol_equivariance",
            format!("n={n}, letter pairs"),
            residual,
        ));
    }

    // closed eigenvalue checks: sigma = 1 and sigma = 2
    let ok1 = berezin_eigenvalue(1, 3)
        == crate::lambda::LambdaScalar::lambda()
            .div(&crate::lambda::LambdaScalar::lambda_plus(3))
            .expect("nonzero");
    let ok2 = berezin_eigenvalue(2, 3).eval(&rat_i(1)) == Ok(rat_i(0));
    out.push(if ok1 && ok2 {
        CheckReport::pass("berezin_eigenvalue_closed_forms", "sigma=1: l/(l+n); sigma=2 at l=1: 0")
    } else {
        CheckReport::fail(
            "berezin_eigenvalue_closed_forms",
            "sigma=1,2",
            "closed form mismatch",
        )
    });

    out
}

fn quant_alphabet(n: usize) -> Vec<EnvElem> {
    // three letters: a raising element, a lowering element, one Cartan
    vec![
        EnvElem::letter(crate::lie::elementary(n, 1, n).expect("valid")),
        EnvElem::letter(crate::lie::elementary(n, n, 1).expect("valid")),
        EnvElem::letter(crate::lie::cartan(n, 1).expect("valid")),
    ]
}

fn words_up_to(alphabet: &[EnvElem], max_len: usize, n: usize) -> Vec<EnvElem> {
    let mut out = vec![EnvElem::one(n)];
    let mut layer = vec![EnvElem::one(n)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in alphabet {
                next.push(w.mul(a));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// ---------------------------------------------------------------------------
// sl2
// ---------------------------------------------------------------------------

pub fn sl2_suite(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut s = Sampler::new(seed.wrapping_add(3));

    let mut exact_checked = 0;
    let mut float_checked = 0;
    let mut worst: f64 = 0.0;
    let mut bad: Option<String> = None;
    while exact_checked + float_checked < 50 {
        let g = random_sl2(&mut s);
        let p = match HyperboloidPoint::from_chart(s.rat(), s.rat()) {
            Ok(p) => p,
            Err(_) => continue,
        };
        // alternate integer and non-integer two-sigma
        let use_exact = (exact_checked + float_checked) % 2 == 0;
        let sigma = if use_exact {
            Rat::new(s.int(-4, 4).into(), 2.into())
        } else {
            Rat::new(s.int(-9, 9).into(), 4.into())
        };
        let sp = match SignedPower::new(sigma, s.int(0, 1) as u8) {
            Ok(sp) => sp,
            Err(_) => continue,
        };
        let cov = covariant_symbol_sl2(&g, &sp, &p);
        let contra = contravariant_symbol_sl2(&g, &sp, &p);
        match (cov, contra) {
            (Ok(a), Ok(b)) => {
                worst = worst.max(a.max_rel_dev).max(b.max_rel_dev);
                if a.exact {
                    if a.max_rel_dev != 0.0 || b.max_rel_dev != 0.0 {
                        bad = Some("exact branch deviated".to_string());
                        break;
                    }
                    exact_checked += 1;
                } else {
                    if a.max_rel_dev > 1e-12 || b.max_rel_dev > 1e-12 {
                        bad = Some(format!(
                            "float branch deviation {:.3e}",
                            a.max_rel_dev.max(b.max_rel_dev)
                        ));
                        break;
                    }
                    float_checked += 1;
                }
            }
            _ => continue, // singular configuration; resample
        }
    }
    out.push(match bad {
        None => CheckReport::pass(
            "sl2_threeway_symbols",
            format!(
                "{exact_checked} exact + {float_checked} float points, worst dev {worst:.2e}, tolerance 1e-12"
            ),
        ),
        Some(m) => CheckReport::fail("sl2_threeway_symbols", "50 points", m),
    });

    // contragredient equivalence at rational points
    let mut bad: Option<String> = None;
    let mut done = 0;
    while done < 15 {
        let g = random_sl2(&mut s);
        let t = s.nonzero_rat();
        let two_sigma = 2 * s.int(-2, 2);
        let eps = s.int(0, 1) as u8;
        let f = |u: &Rat| Ok(u * u + rat_i(1));
        let f_hat = |u: &Rat| -> crate::error::Result<Rat> {
            if u.is_zero() {
                return Err(crate::error::Error::UndefinedSignedPower);
            }
            Ok(crate::rat::signed_pow_exact(u, two_sigma, eps)? * f(&u.clone().recip())?)
        };
        let lhs = crate::sl2::t_hat_action_exact(&g, two_sigma, eps, &f_hat, &t);
        let rhs = crate::sl2::t_action_exact(&g, two_sigma, eps, &f, &t.clone().recip())
            .and_then(|v| Ok(crate::rat::signed_pow_exact(&t, two_sigma, eps)? * v));
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    bad = Some(format!("equivalence mismatch at t = {t}"));
                    break;
                }
                done += 1;
            }
            _ => continue,
        }
    }
    out.push(match bad {
        None => CheckReport::pass("sl2_contragredient_equivalence", "15 rational points"),
        Some(m) => CheckReport::fail("sl2_contragredient_equivalence", "15 points", m),
    });

    out
}

pub fn random_sl2(s: &mut Sampler) -> Sl2Elem {
    // product of elementary shears, det exactly 1
    let mut g = Sl2Elem::identity();
    for _ in 0..4 {
        let c = s.small_rat();
        let shear = if s.int(0, 1) == 0 {
            Sl2Elem::new(rat_i(1), c, rat_i(0), rat_i(1)).expect("det 1")
        } else {
            Sl2Elem::new(rat_i(1), rat_i(0), c, rat_i(1)).expect("det 1")
        };
        g = g.mul(&shear);
    }
    g
}

/// Run every suite in order.
pub fn all_suites(seed: u64) -> Vec<CheckReport> {
    let mut out = geometry_suite(seed);
    out.extend(repn_suite(seed));
    out.extend(quant_suite(seed));
    out.extend(sl2_suite(seed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_deterministic() {
        let a = all_suites(7);
        assert!(all_passed(&a), "failing checks: {:?}",
            a.iter().filter(|r| !r.passed()).collect::<Vec<_>>());
        let b = all_suites(7);
        let ser_a = serde_json::to_string(&a).expect("serializable");
        let ser_b = serde_json::to_string(&b).expect("serializable");
        assert_eq!(ser_a, ser_b);
    }
}
