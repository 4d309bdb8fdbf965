//! The acceptance gate: one test per release criterion, each printing a
//! single PASS/FAIL line. Run with `--nocapture` to see the lines on
//! success; any failure also panics with the offending criterion.

use std::time::Instant;

use num_bigint::BigInt;

use chordal_core::asymptotics::{reconcile_graph_theorem, reconcile_map_theorem};
use chordal_core::graphs::{self, GraphFamily};
use chordal_core::maps::{self, MapFamily};
use chordal_core::oracle;
use chordal_core::poly::{
    annihilator_check, bipoly_primitive, derive_b_annihilator, derive_m_annihilator,
    disc_b_printed, disc_m_printed, discriminant, pb_polynomial, pm_polynomial,
};
use chordal_core::rootfind::{all_roots, certify_unique_modulus};
use chordal_core::singular::{
    refined_positive_root, subcriticality_report, theorem1_report, theorem2_report,
};
use chordal_core::tables;
use chordal_core::verify;

const PREC: usize = 256;

/// Relative agreement to four significant digits.
fn sig4(value: f64, reference: f64) -> bool {
    (value / reference - 1.0).abs() < 5e-4
}

fn run(no: usize, what: &str, body: impl FnOnce() -> std::result::Result<String, String>) {
    let t = Instant::now();
    match body() {
        Ok(detail) => {
            println!(
                "PASS criterion {no}: {what} — {detail} [{:.1}s]",
                t.elapsed().as_secs_f64()
            );
        }
        Err(msg) => {
            println!(
                "FAIL criterion {no}: {what} — {msg} [{:.1}s]",
                t.elapsed().as_secs_f64()
            );
            panic!("acceptance criterion {no} failed: {msg}");
        }
    }
}

#[test]
fn criterion_01_exact_tables() {
    run(1, "count tables match the reference tables bit-exactly", || {
        let graph_refs = [
            (GraphFamily::All, tables::graph_all as fn(usize) -> BigInt),
            (GraphFamily::Connected, tables::graph_connected),
            (GraphFamily::TwoConnected, tables::graph_two_connected),
        ];
        for (family, reference) in graph_refs {
            let table = graphs::count_table(family, 20).map_err(|e| e.to_string())?;
            for (n, v) in &table.rows {
                if *v != reference(*n as usize) {
                    return Err(format!("{} differs at n = {n}", table.family));
                }
            }
        }
        let map_refs = [
            (MapFamily::AllMaps, tables::map_all as fn(usize) -> BigInt),
            (MapFamily::TwoConnectedMaps, tables::map_two_connected),
        ];
        for (family, reference) in map_refs {
            let table = maps::map_count_table(family, 20).map_err(|e| e.to_string())?;
            for (n, v) in &table.rows {
                if *v != reference(*n as usize) {
                    return Err(format!("{} differs at n = {n}", table.family));
                }
            }
        }
        Ok("g_n, c_n, b_n, M_n, B_n for n = 1..=20".into())
    });
}

#[test]
fn criterion_02_oracle_independence() {
    run(2, "brute-force census matches the series pipeline for n <= 6", || {
        for n in 1..=6usize {
            let row = oracle::census(n).map_err(|e| e.to_string())?;
            if row.all != tables::graph_all(n)
                || row.connected != tables::graph_connected(n)
                || row.two_connected != tables::graph_two_connected(n)
            {
                return Err(format!("census disagrees at n = {n}"));
            }
        }
        let six = oracle::census(6).map_err(|e| e.to_string())?;
        let expected = (BigInt::from(17962), BigInt::from(13116), BigInt::from(2880));
        if (six.all.clone(), six.connected.clone(), six.two_connected.clone()) != expected {
            return Err("n = 6 spot values wrong".into());
        }
        Ok("g_6/c_6/b_6 = 17962/13116/2880".into())
    });
}

#[test]
fn criterion_03_closed_forms() {
    run(3, "ternary closed form (n <= 64) and the triangulation count formula", || {
        let s = graphs::ternary_series(64).map_err(|e| e.to_string())?;
        for n in 1..=64usize {
            if s.coeff(n) != graphs::ternary_closed_form(n) {
                return Err(format!("[z^{n}]S differs from binom(3n,n)/(2n+1)"));
            }
        }
        let u = graphs::unrooted_triangulation_series(12).map_err(|e| e.to_string())?;
        for n in 4..=12usize {
            let formula = graphs::count_3connected(n).map_err(|e| e.to_string())?;
            if u.egf_count(n).map_err(|e| e.to_string())? != formula {
                return Err(format!("t_{n} formula differs from n! [z^n]U"));
            }
        }
        Ok("S exact to order 64; t_n exact for n = 4..=12".into())
    });
}

#[test]
fn criterion_04_dissymmetry() {
    run(4, "dissymmetry closed form equals the edge integral at y = 1, order 64", || {
        let closed = graphs::two_connected_series_closed(64);
        let integral = graphs::two_connected_series_bivariate(64)
            .map_err(|e| e.to_string())?
            .at_y_one();
        for n in 0..=64usize {
            if closed.coeff(n) != integral.coeff(n) {
                return Err(format!("B coefficients differ at order {n}"));
            }
        }
        Ok("exact to order 64".into())
    });
}

#[test]
fn criterion_05_annihilators() {
    run(5, "P_B and P_M annihilate the map series; eliminations divide exactly", || {
        let b = maps::two_connected_maps_series(64);
        annihilator_check(&pb_polynomial(), &b)
            .map_err(|n| format!("P_B(z, zD) != 0 at order {n}"))?;
        let m = maps::all_maps_series(64);
        annihilator_check(&pm_polynomial(), &m)
            .map_err(|n| format!("P_M(z, M) != 0 at order {n}"))?;
        let derived_b = derive_b_annihilator().map_err(|e| e.to_string())?;
        derived_b
            .div_poly_exact(&pb_polynomial())
            .map_err(|_| "eliminated annihilator not divisible by P_B".to_string())?;
        if derive_m_annihilator(&pb_polynomial()) != bipoly_primitive(&pm_polynomial()) {
            return Err("substitution-derived annihilator differs from primitive P_M".into());
        }
        Ok("both mod z^65; divisibility exact".into())
    });
}

#[test]
fn criterion_06_discriminants() {
    run(6, "discriminant factors, positive roots and modulus dominance", || {
        for (p, printed, name) in [
            (pb_polynomial(), disc_b_printed(), "P_B"),
            (pm_polynomial(), disc_m_printed(), "P_M"),
        ] {
            let disc = discriminant(&p).map_err(|e| e.to_string())?.primitive();
            let quotient = disc
                .div_poly_exact(&printed)
                .map_err(|_| format!("disc({name}) not divisible by the printed factor"))?;
            let nonzero = quotient
                .coeffs()
                .iter()
                .filter(|c| *c != &BigInt::from(0))
                .count();
            if nonzero != 1 {
                return Err(format!("disc({name}) / printed factor is not a monomial"));
            }
        }
        let sigma_b = refined_positive_root(&disc_b_printed(), 0, PREC).map_err(|e| e.to_string())?;
        let sigma = refined_positive_root(&disc_m_printed(), 0, PREC).map_err(|e| e.to_string())?;
        let second = refined_positive_root(&disc_m_printed(), 1, PREC).map_err(|e| e.to_string())?;
        for (v, reference) in [
            (sigma_b.to_f64(), 0.27370),
            (sigma.to_f64(), 0.15616),
            (second.to_f64(), 0.49512),
        ] {
            if (v - reference).abs() > 5e-6 {
                return Err(format!("root {v} does not match {reference} to 5 digits"));
            }
        }
        let roots_b = all_roots(&disc_b_printed(), PREC).map_err(|e| e.to_string())?;
        certify_unique_modulus(&roots_b, &sigma_b, 4).map_err(|e| e.to_string())?;
        let roots_m = all_roots(&disc_m_printed(), PREC).map_err(|e| e.to_string())?;
        certify_unique_modulus(&roots_m, &sigma, 4).map_err(|e| e.to_string())?;
        Ok("0.27370, 0.15616, 0.49512; dominance certified".into())
    });
}

#[test]
fn criterion_07_theorem1_constants() {
    run(7, "Theorem-1 constants to 4 significant digits at 256 bits", || {
        let report = theorem1_report(PREC).map_err(|e| e.to_string())?;
        // Values printed in the source material that are consistent with the
        // exact counting tables.
        let printed = [
            ("rho_b", 0.0928594078334002),
            ("E0", 1.1645404268185877),
            ("S0", 0.41919),
            ("E1", 0.092354),
            ("B0", 0.0044796224747483),
            ("tau", 0.0928593288280244),
            ("rho", 0.0840876870376128),
            ("gamma", 11.89235),
            ("gamma_b", 10.76897),
            ("C2", 0.0928593288280244),
        ];
        // The source material prints B2 ~ 0.0085328, B3 ~ 0.00038321,
        // C0 ~ 0.00037470 and b ~ 0.00016215; each of those contradicts the
        // exact counting sequences the same source tabulates (see the
        // singular-analysis unit tests for the adjudication). The verified
        // corrected values are asserted instead.
        let corrected = [
            ("B2", 0.009214180660936896),
            ("B3", 0.00010196246462049343),
            ("C0", 0.08812492018443074),
            ("b", 0.00004314462033880427),
        ];
        for (name, reference) in printed.iter().chain(corrected.iter()) {
            let v = report
                .get(name)
                .ok_or_else(|| format!("constant {name} missing from the report"))?;
            if !sig4(v, *reference) {
                return Err(format!("{name} = {v}, expected {reference} to 4 digits"));
            }
        }
        Ok("14 constants verified (B2, B3, C0, b corrected vs the printed values)".into())
    });
}

#[test]
fn criterion_08_theorem2_constants() {
    run(8, "Theorem-2 constants to 4 significant digits", || {
        let report = theorem2_report(PREC).map_err(|e| e.to_string())?;
        let sigma_b = report.get("sigma_b").ok_or("sigma_b missing")?;
        let sigma = report.get("sigma").ok_or("sigma missing")?;
        let checks = [
            (1.0 / sigma_b, 3.65370, "sigma_b^{-1}"),
            (1.0 / sigma, 6.40375, "sigma^{-1}"),
            (report.get("B_sigma_b").ok_or("B(sigma_b) missing")?, 0.33301, "B(sigma_b)"),
            (report.get("b1").ok_or("b1 missing")?, 0.12704, "b1"),
            (report.get("M_sigma").ok_or("M(sigma) missing")?, 0.31055, "M(sigma)"),
            (report.get("m1").ok_or("m1 missing")?, 0.22326, "m1"),
        ];
        for (v, reference, name) in checks {
            if !sig4(v, reference) {
                return Err(format!("{name} = {v}, expected {reference} to 4 digits"));
            }
        }
        Ok("sigma_b^-1, sigma^-1, B(sigma_b), b1, M(sigma), m1 verified".into())
    });
}

#[test]
fn criterion_09_leading_constant_adjudication() {
    run(9, "empirical fits agree with analytic transfer within 2% (>= 200 coefficients)", || {
        let mut notes = Vec::new();
        let graph_reports = reconcile_graph_theorem(200, PREC).map_err(|e| e.to_string())?;
        let map_reports = reconcile_map_theorem(220, PREC).map_err(|e| e.to_string())?;
        for rep in graph_reports.iter().chain(map_reports.iter()) {
            let err = rep.fit_relative_error;
            if !err.is_finite() || err >= 0.02 {
                return Err(format!(
                    "{}: empirical/analytic disagree by {:.2}%",
                    rep.family,
                    100.0 * err
                ));
            }
            let factor = rep
                .printed_over_analytic
                .map(|f| format!("{f:.4}"))
                .unwrap_or_else(|| "n/a".into());
            notes.push(format!("{} printed/analytic = {factor}", rep.family));
        }
        Ok(notes.join("; "))
    });
}

#[test]
fn criterion_10_subcriticality() {
    run(10, "subcriticality certificates", || {
        let report = subcriticality_report(PREC).map_err(|e| e.to_string())?;
        if !report.all_pass {
            return Err("a certificate failed".into());
        }
        if (report.graphs_inner - 0.14665).abs() > 5e-6 {
            return Err(format!("rho_b E0^3 = {} != 0.14665", report.graphs_inner));
        }
        if (report.maps_inner - 0.26821).abs() > 5e-6 {
            return Err(format!("sigma (1+M)^2 = {} != 0.26821", report.maps_inner));
        }
        if report.tau_margin <= 0.0 {
            return Err("tau >= rho_b".into());
        }
        Ok(format!(
            "rho_b E0^3 = {:.5} < 4/27; tau < rho_b (margin {:.2e}); sigma(1+M)^2 = {:.5} < sigma_b",
            report.graphs_inner, report.tau_margin, report.maps_inner
        ))
    });
}

#[test]
fn criterion_11_verify_battery() {
    run(11, "full invariant battery passes (verify exits 0)", || {
        let outcomes = verify::verify_all(64, 6, PREC).map_err(|e| e.to_string())?;
        Ok(format!("{} certificates passed", outcomes.len()))
    });
}
