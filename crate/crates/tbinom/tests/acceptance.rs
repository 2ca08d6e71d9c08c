//! The acceptance gate: one test per shipped guarantee, each printing a
//! single pass/fail line (visible under `--nocapture`). Sweep-style criteria
//! run through `run_identity` with its documented default ranges, so this
//! suite exercises exactly the checks `tbinom verify --identity all` runs.

use tbinom::identities::{
    check_gderiv_series, check_rothe, check_thm1_series, run_identity, IdentityError, IdentityId,
    IdentityReport, SweepRanges,
};
use tbinom::latex;
use tbinom::{
    binom, equal_on_grid, expansion_method1, factor_product, genbinom_minus_one, psi_r, psi_r1,
    psi_r11, series_g, series_h, to_binomial_basis, BinomialExpansion, ExpPoly, FTable,
    GenBinomTable, PolyT, PolyXT, Rational, TruncSeries,
};

fn conclude(number: u32, what: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {number:02} ({what}): pass");
    } else {
        println!("criterion {number:02} ({what}): FAIL");
    }
    assert!(failures.is_empty(), "criterion {number:02}: {failures:?}");
}

fn sweep(number: u32, what: &str, ids: &[IdentityId]) {
    let failures: Vec<String> = ids
        .iter()
        .map(|&id| run_identity(id, &SweepRanges::default()))
        .filter(|report| !report.holds)
        .map(|report| report.to_json_line())
        .collect();
    conclude(number, what, failures);
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[test]
fn criterion_01_displayed_expansions() {
    let t = PolyT::t();
    let omt = PolyT::one_minus_t();
    // <x, 1> = t x
    let k1 = vec![t.clone()];
    // <x, 2> = t^2 binom(x,2) + (1/2)(1-t) x
    let k2 = vec![omt.scale(&r(1, 2)), PolyT::t_pow(2)];
    // <x, 3> = t^3 binom(x,3) + t(1-t) binom(x,2) - (1/3) t(1-t) x
    let t_omt = &t * &omt;
    let k3 = vec![t_omt.scale(&r(-1, 3)), t_omt.clone(), PolyT::t_pow(3)];
    // <x, 4> = t^4 binom(x,4) + (3/2) t^2 (1-t) binom(x,3)
    //          - (1/12)(1-t)(8t^2 + 3t - 3) binom(x,2) + (1/8)(1-t^2)(2t-1) x
    let k4 = vec![
        (&PolyT::from_ints(&[1, 0, -1]) * &PolyT::from_ints(&[-1, 2])).scale(&r(1, 8)),
        (&omt * &PolyT::from_ints(&[-3, 3, 8])).scale(&r(-1, 12)),
        (&PolyT::t_pow(2) * &omt).scale(&r(3, 2)),
        PolyT::t_pow(4),
    ];

    let table = GenBinomTable::up_to(4);
    let mut failures = Vec::new();
    for (k, golden) in [(1, k1), (2, k2), (3, k3), (4, k4)] {
        let expected = BinomialExpansion::new(k, golden);
        let actual = to_binomial_basis(table.symbolic(k));
        if actual != expected {
            failures.push(format!("k = {k}: {}", latex::binomial_expansion(&actual)));
        }
    }
    conclude(1, "displayed expansions k = 1..4", failures);
}

#[test]
fn criterion_02_series_inverse_pair() {
    sweep(
        2,
        "series product, derivative relation, ODE solution",
        &[IdentityId::Thm1, IdentityId::GDeriv, IdentityId::Cor1],
    );
}

#[test]
fn criterion_03_generating_function_powers() {
    sweep(3, "powers of the generating series", &[IdentityId::Thm2]);
}

#[test]
fn criterion_04_minus_one_column() {
    sweep(4, "closed x = -1 column", &[IdentityId::Cor2]);
}

#[test]
fn criterion_05_convolution_family() {
    sweep(
        5,
        "convolution, weighted convolution, zero sum",
        &[IdentityId::Cor3, IdentityId::Cor4, IdentityId::Cor5],
    );
}

#[test]
fn criterion_06_pascal_recurrences() {
    sweep(
        6,
        "downward and upward step recurrences",
        &[IdentityId::PascalDown, IdentityId::PascalUp],
    );
}

#[test]
fn criterion_07_row_structure() {
    sweep(
        7,
        "diagonal, divisibility, bridge, superdiagonal",
        &[
            IdentityId::Diag,
            IdentityId::Divisibility,
            IdentityId::Bridge,
            IdentityId::Superdiag,
        ],
    );
}

#[test]
fn criterion_08_expansion_methods() {
    sweep(
        8,
        "expansion methods and closed coefficient rows",
        &[
            IdentityId::Expansion,
            IdentityId::TopCoeffs,
            IdentityId::LowCoeffs,
        ],
    );
}

#[test]
fn criterion_09_hook_solutions() {
    let table = GenBinomTable::up_to(5);
    let t = PolyT::t();
    let mt = PolyT::from_ints(&[0, -1]);
    // (scale, body) triples of the six smallest solutions, written verbatim.
    let golden: Vec<(&str, HookSolutionParts)> = vec![
        ("psi_1", (psi_r(&table, 1), r(-1, 1), vec![])),
        (
            "psi_2",
            (
                psi_r(&table, 2),
                r(2, 1),
                vec![(1, PolyT::one()), (0, PolyT::from_ints(&[-1]))],
            ),
        ),
        (
            "psi_3",
            (
                psi_r(&table, 3),
                r(-6, 1),
                vec![(2, mt.clone()), (1, t.scale(&r(2, 1))), (0, mt.clone())],
            ),
        ),
        (
            "psi_1_1",
            (
                psi_r1(&table, 1),
                r(2, 1),
                vec![(0, PolyT::from_ints(&[-1])), (-1, PolyT::one())],
            ),
        ),
        (
            "psi_2_1",
            (
                psi_r1(&table, 2),
                r(-6, 1),
                vec![(1, t.clone()), (0, t.scale(&r(-2, 1))), (-1, t.clone())],
            ),
        ),
        (
            "psi_1_1_1",
            (
                psi_r11(&table, 1),
                r(-6, 1),
                vec![(0, mt.clone()), (-1, t.scale(&r(2, 1))), (-2, mt.clone())],
            ),
        ),
    ];
    let mut failures = Vec::new();
    for (name, (solution, scale, body)) in &golden {
        if solution.scale() != scale || solution.body() != &ExpPoly::from_terms(body.clone()) {
            failures.push(format!("{name}: {}", latex::hook_solution(solution)));
        }
    }
    for &(id, what) in &[
        (IdentityId::PsiS0, "straight rows"),
        (IdentityId::PsiS1, "one-box hooks"),
        (IdentityId::PsiS2, "two-box hooks"),
    ] {
        let report = run_identity(id, &SweepRanges::default());
        if !report.holds {
            failures.push(format!("{what}: {}", report.to_json_line()));
        }
    }
    conclude(9, "hook solutions, residuals, specializations", failures);
}

type HookSolutionParts = (tbinom::HookSolution, Rational, Vec<(i64, PolyT)>);

#[test]
fn criterion_10_convolution_sum_samples() {
    sweep(10, "parameterized convolution sum", &[IdentityId::Rothe]);
}

#[test]
fn criterion_11_negative_controls() {
    let mut failures = Vec::new();
    let mut control = |family: &str, detected: bool| {
        if !detected {
            failures.push(format!("{family}: mutation not detected"));
        }
    };

    let table = GenBinomTable::up_to(8);
    let g = series_g(8);
    let bad_h = {
        let mut coeffs = series_h(8).coeffs().to_vec();
        coeffs[3] = -coeffs[3].clone();
        TruncSeries::from_coeffs(8, coeffs)
    };
    control("thm1", !check_thm1_series(&g, &bad_h).holds);
    control("gderiv", !check_gderiv_series(&g, &bad_h).holds);

    let bad_ode = {
        let mut coeffs = g.coeffs().to_vec();
        coeffs[2] = &coeffs[2] + &PolyT::one();
        TruncSeries::from_coeffs(8, coeffs)
    };
    control("cor1", bad_ode != g);

    let bad_power = &g.pow_symbolic().unwrap()[2] + &PolyXT::x();
    control("thm2", &bad_power != table.symbolic(2));

    // Wrong lower bound in the closed product for <-1, k>.
    let wrong_product = factor_product(3, 0).scale(&(-tbinom::factorial(3).inv().unwrap()));
    control("cor2", wrong_product != genbinom_minus_one(3));

    // Convolution with the top summand dropped, on the documented grid.
    control(
        "cor3",
        !equal_on_grid(
            &[2, 2, 2],
            |p| {
                let tv = r(p[2], 1);
                (0..2)
                    .map(|i| &table.at_int(p[0], i).eval(&tv) * &table.at_int(p[1], 2 - i).eval(&tv))
                    .fold(Rational::zero(), |acc, v| &acc + &v)
            },
            |p| table.at_int(p[0] + p[1], 2).eval(&r(p[2], 1)),
        ),
    );

    // Weighted convolution without the clearing factor (x + y).
    control(
        "cor4",
        !equal_on_grid(
            &[3, 3, 2],
            |p| {
                let tv = r(p[2], 1);
                (0..=2)
                    .map(|i| {
                        let product = &table.at_int(p[0], i).eval(&tv)
                            * &table.at_int(p[1], 2 - i).eval(&tv);
                        &product * &r(i as i64, 1)
                    })
                    .fold(Rational::zero(), |acc, v| &acc + &v)
            },
            |p| &table.at_int(p[0] + p[1], 2).eval(&r(p[2], 1)) * &r(2 * p[0], 1),
        ),
    );

    // Zero sum with the i = 1 term dropped.
    let truncated: PolyT = (2..=2)
        .map(|i| (&table.at_int(2, 2 - i) * &genbinom_minus_one(i - 1)).scale(&r(i as i64, 1)))
        .fold(PolyT::zero(), |acc, v| &acc + &v);
    control("cor5", !truncated.is_zero());

    // Downward recurrence with the first term left unshifted.
    let lhs = table.symbolic(2) - &table.symbolic(2).shift_x(-1);
    let unshifted = &table.symbolic(1).mul_polyt(&PolyT::t())
        + &table
            .symbolic(0)
            .shift_x(-1)
            .mul_polyt(&factor_product(0, 0))
            .scale(&r(1, 2))
            .mul_polyt(&PolyT::one_minus_t());
    control("pascal_down", lhs != unshifted);

    // Upward recurrence with the column of the step coefficient off by one.
    let lhs = table.symbolic(2) - &table.symbolic(2).shift_x(1);
    let off_by_one = &table.symbolic(1).shift_x(1).mul_polyt(&genbinom_minus_one(0))
        + &table.symbolic(0).shift_x(1).mul_polyt(&genbinom_minus_one(1));
    control("pascal_up", lhs != off_by_one);

    // The leading parameter at zero is the one genuine pole.
    control(
        "rothe (pole)",
        check_rothe(&r(0, 1), &r(1, 1), &r(3, 1), 2) == Err(IdentityError::PoleInSummand),
    );
    // Hand-summed instance with the middle summand bumped.
    let bumped = &(&r(10, 1) - &r(5, 1)) - &r(1, 1);
    control("rothe (sum)", bumped != binom(&r(-2, 1), 2));

    // Closed diagonal with the exponent off by one.
    let wrong_diag = PolyT::one() - &PolyT::from_ints(&[-1, 1]).pow(1);
    control(
        "diag",
        wrong_diag.exact_div(&PolyT::from_ints(&[2, -1])).unwrap() != tbinom::diagonal(1),
    );

    // An off-row value is not divisible by (1 - t).
    let shifted_up = &table.at_int(1, 2) + &PolyT::one();
    control(
        "divisibility",
        shifted_up.exact_div(&PolyT::one_minus_t()).is_err(),
    );

    // Bridge relation with a stray factor of t on the ladder value.
    let ftable = FTable::up_to(4);
    let lhs = table.at_int(2, 3).scale(&r(3, 1));
    let mutated = &(&(&PolyT::one_minus_t() * &ftable.f_at(2, 3)) * &PolyT::t())
        * &genbinom_minus_one(0);
    control("bridge", lhs != mutated);

    // Superdiagonal sum with the i/(i+1) weights replaced by 1.
    let unweighted: PolyT = (1..=2)
        .map(|i| &table.at_int(2, 2 - i) * &genbinom_minus_one(i - 1))
        .fold(PolyT::zero(), |acc, v| &acc + &v);
    let target = table.at_int(2, 3).exact_div(&PolyT::one_minus_t()).unwrap();
    control("superdiag", unweighted != target);

    // A bumped basis coefficient breaks the three-way expansion agreement.
    let reference = expansion_method1(3);
    let mutated = BinomialExpansion::new(
        3,
        vec![
            reference.coeff(1) + &PolyT::one(),
            reference.coeff(2).clone(),
            reference.coeff(3).clone(),
        ],
    );
    control("expansion", mutated != reference);

    // Top-row closed form with the sign flipped.
    let flipped = (&PolyT::t_pow(4) * &PolyT::from_ints(&[-1, 1])).scale(&r(5, 2));
    control("top_coeffs", flipped != *expansion_method1(6).coeff(5));

    // Low-row closed form with the column index off by one.
    let off_by_one = &PolyT::one_minus_t() * &genbinom_minus_one(3);
    control(
        "low_coeffs",
        off_by_one != expansion_method1(4).coeff(1).scale(&r(4, 1)),
    );

    // Straight-row system at r = 1: dropping the empty-shape constant
    // (the boundary the residuals need) must be detected.
    let psi2 = psi_r(&table, 2).normalized();
    let lhs = psi2.derivative().scale(&r(2, 1));
    let with_boundary = &psi2.scale(&r(2, 1)) + &ExpPoly::constant(PolyT::one());
    let without_boundary = psi2.scale(&r(2, 1));
    control("psi_s0", lhs == with_boundary && lhs != without_boundary);

    // One-box system at r = 1 with the boundary constant's sign flipped.
    let psi11 = psi_r1(&table, 1).normalized();
    let lhs = psi11.derivative().scale(&r(2, 1));
    let correct = &(-&psi11.scale(&r(2, 1))) - &ExpPoly::constant(PolyT::one());
    let flipped = &(-&psi11.scale(&r(2, 1))) + &ExpPoly::constant(PolyT::one());
    control("psi_s1", lhs == correct && lhs != flipped);

    // Two-box solution with one body coefficient halved.
    let mt = PolyT::from_ints(&[0, -1]);
    let mutated = ExpPoly::from_terms(vec![
        (0, mt.clone()),
        (-1, PolyT::t()),
        (-2, mt.clone()),
    ]);
    control("psi_s2", &mutated != psi_r11(&table, 1).body());

    conclude(11, "mutated variants are detected", failures);
}

// A sanity pin so the machine-readable stream stays line-oriented.
#[test]
fn reports_serialize_one_per_line() {
    let report = run_identity(
        IdentityId::Diag,
        &SweepRanges {
            max_n: Some(4),
            ..SweepRanges::default()
        },
    );
    let line = report.to_json_line();
    assert!(!line.contains('\n'));
    let back: IdentityReport = serde_json::from_str(&line).unwrap();
    assert_eq!(back, report);
}
