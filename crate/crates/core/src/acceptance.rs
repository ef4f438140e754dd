//! The self-check suite: exact desk-scale checks of the HKR package.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cech::{line_bundle_closed_form, line_bundle_cohomology};
use crate::combinatorics::{binomial, factorial};
use crate::decomp::{characteristic_criterion, hh_projective, Verdict};
use crate::error::Result;
use crate::exactla::FieldSpec;
use crate::ext::{cochain_cohomology_rank, hkr_scaling_check, koszul_ext};
use crate::hochschild::{
    antisymmetrization_eps, augmentation, bar_differential, chain_differential,
    chain_homology_rank, contracting_homotopy, hkr_pi, omega_dimension, omega_spanning_set,
    pairing, pi_cd_evaluate, unit_section,
};
use crate::random;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CriterionReport {
    fn new(id: usize, name: &'static str) -> Self {
        CriterionReport {
            id,
            name,
            passed: true,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 20 {
                self.failures.push(what());
            }
        }
    }

    fn check_result<T>(
        &mut self,
        r: Result<T>,
        expect: impl FnOnce(&T) -> bool,
        what: impl Fn() -> String,
    ) {
        match r {
            Ok(v) => {
                let ok = expect(&v);
                self.check(ok, what);
            }
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {} ({} checks)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.checks
        )
    }
}

pub const CRITERIA: [usize; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

fn fields(chars: &[u64]) -> Vec<FieldSpec> {
    chars
        .iter()
        .map(|&c| FieldSpec::from_characteristic(c).expect("prime"))
        .collect()
}

pub fn hkr_rank_identity() -> CriterionReport {
    let mut report = CriterionReport::new(1, "HKR rank identity");
    let cases: Vec<(FieldSpec, usize, usize, usize)> = fields(&[0, 2, 3])
        .into_iter()
        .flat_map(|f| {
            (1..=3).flat_map(move |n| (0..=4).flat_map(move |q| (0..=6).map(move |d| (f, n, q, d))))
        })
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(f, n, q, d)| chain_homology_rank(n, f, q, d))
        .collect();
    for (&(f, n, q, d), r) in cases.iter().zip(results) {
        let expected = omega_dimension(n, q, d);
        report.check_result(
            r,
            |&h| h == expected,
            || format!("{f} n={n} q={q} d={d}: expected {expected}"),
        );
    }
    report
}

pub fn pi_eps_identity() -> CriterionReport {
    let mut report = CriterionReport::new(2, "pi eps = q! id");
    for f in fields(&[0, 5]) {
        for n in 1..=4 {
            for q in 0..=4 {
                for d in 0..=6 {
                    for w in omega_spanning_set(n, f, q, d) {
                        let ok = hkr_pi(&antisymmetrization_eps(&w)) == w.scale(&f.factorial(q));
                        report.check(ok, || format!("{f} n={n} q={q} d={d}"));
                    }
                }
            }
        }
    }
    report
}

pub fn characteristic_criterion_scan() -> CriterionReport {
    let mut report = CriterionReport::new(3, "characteristic criterion");
    report.check_result(
        characteristic_criterion(2, 2, 3, 4),
        |w| {
            w.verdict == Verdict::Fails
                && w.witness
                    .is_some_and(|p| (p.q, p.d, p.homology_dim, p.induced_rank) == (2, 2, 1, 0))
        },
        || "n=2 p=2 fails at (2, 2)".into(),
    );
    report.check_result(
        characteristic_criterion(1, 2, 3, 4),
        |w| w.verdict == Verdict::Holds,
        || "n=1 p=2 holds".into(),
    );
    for n in 1..=3 {
        report.check_result(
            characteristic_criterion(n, 0, 3, 4),
            |w| w.verdict == Verdict::Holds && w.witness.is_none(),
            || format!("n={n} char 0 holds"),
        );
    }
    report
}

pub fn cohomology_comparison() -> CriterionReport {
    let mut report = CriterionReport::new(4, "cochain and Koszul comparison");
    for f in fields(&[0, 2]) {
        for n in 1..=3 {
            for q in 0..=4 {
                let sums = (0..=6)
                    .map(|d| {
                        Ok((
                            cochain_cohomology_rank(n, f, q, d)?,
                            chain_homology_rank(n, f, q, d)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(|v| v.iter().fold((0, 0), |acc, x| (acc.0 + x.0, acc.1 + x.1)));
                report.check_result(
                    sums,
                    |&(a, b)| a == b,
                    || format!("{f} n={n} q={q} graded duality"),
                );
            }
        }
        for n in 1..=4 {
            for q in 0..=n + 1 {
                report.check_result(
                    koszul_ext(n, f, q),
                    |&r| r == binomial(n, q),
                    || format!("{f} Ext^{q} for n={n}"),
                );
            }
        }
    }
    report
}

pub fn scaling_factor() -> CriterionReport {
    let mut report = CriterionReport::new(5, "q! scaling");
    let f = FieldSpec::rationals();
    for q in 0..=3 {
        for n in q.max(1)..=3 {
            let expected = f.from_i64(factorial(q) as i64);
            report.check_result(
                hkr_scaling_check(n, f, q),
                |c| *c == expected,
                || format!("n={n} q={q}"),
            );
        }
    }
    report
}

pub fn cech_oracle() -> CriterionReport {
    let mut report = CriterionReport::new(6, "Cech line bundles");
    let f = FieldSpec::rationals();
    for n in 1..=3usize {
        for d in -8..=8i64 {
            let h = line_bundle_cohomology(n, f, d);
            report.check_result(
                h.clone(),
                |h| *h == line_bundle_closed_form(n, d),
                || format!("O({d}) on P^{n}"),
            );
            let dual = line_bundle_cohomology(n, f, -d - n as i64 - 1);
            if let (Ok(h), Ok(dual)) = (h, dual) {
                let ok = (0..=n).all(|i| h[i] == dual[n - i]);
                report.check(ok, || format!("Serre duality O({d}) on P^{n}"));
            }
        }
    }
    report
}

pub fn projective_assembly() -> CriterionReport {
    let mut report = CriterionReport::new(7, "projective decomposition");
    let q = FieldSpec::rationals();
    let f2 = FieldSpec::prime(2).expect("prime");
    report.check_result(
        hh_projective(1, q),
        |r| r.hh.as_deref() == Some(&[1, 3, 0]),
        || "P^1 over QQ".into(),
    );
    report.check_result(
        hh_projective(2, q),
        |r| r.hh.as_deref() == Some(&[1, 8, 10, 0, 0]),
        || "P^2 over QQ".into(),
    );
    report.check_result(
        hh_projective(1, f2),
        |r| r.validity && r.hh.as_deref() == Some(&[1, 3, 0]),
        || "P^1 over GF(2)".into(),
    );
    report.check_result(
        hh_projective(2, f2),
        |r| !r.validity && r.hh.is_none(),
        || "P^2 over GF(2)".into(),
    );
    report
}

/// Randomized structural identities, `instances` per property.
pub fn structural_properties(seed: u64, instances: usize) -> CriterionReport {
    let mut report = CriterionReport::new(8, "structural properties");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = fields(&[0, 2, 3, 5]);
    let pick = |rng: &mut ChaCha8Rng| {
        let f = all[rng.gen_range(0..all.len())];
        let n = rng.gen_range(1..=3);
        (f, n)
    };
    for i in 0..instances {
        let (f, n) = pick(&mut rng);
        let q = rng.gen_range(2..=4);
        let x = random::chain(&mut rng, n, f, q, 2, 3);
        let ok = chain_differential(&x)
            .and_then(|y| chain_differential(&y))
            .map(|z| z.is_zero());
        report.check_result(ok, |&b| b, || format!("b^2 = 0, instance {i}"));

        let (f, n) = pick(&mut rng);
        let q = rng.gen_range(2..=4);
        let x = random::bar(&mut rng, n, f, q, 2, 3);
        let ok = bar_differential(&x)
            .and_then(|y| bar_differential(&y))
            .map(|z| z.is_zero());
        report.check_result(ok, |&b| b, || format!("∂^2 = 0, instance {i}"));

        let (f, n) = pick(&mut rng);
        let q = rng.gen_range(1..=4);
        let x = random::chain(&mut rng, n, f, q, 2, 3);
        let ok = chain_differential(&x).map(|y| hkr_pi(&y).is_zero());
        report.check_result(ok, |&b| b, || format!("π b = 0, instance {i}"));

        let (f, n) = pick(&mut rng);
        let q = rng.gen_range(1..=n);
        let w = random::form(&mut rng, n, f, q, 2, 3);
        let ok = chain_differential(&antisymmetrization_eps(&w)).map(|y| y.is_zero());
        report.check_result(ok, |&b| b, || format!("b ε = 0, instance {i}"));

        let (f, n) = pick(&mut rng);
        let q = rng.gen_range(0..=4);
        let x = random::bar(&mut rng, n, f, q, 2, 3);
        let ok = homotopy_identity(&x);
        report.check_result(ok, |&b| b, || format!("splitting homotopy, instance {i}"));

        let (f, n) = pick(&mut rng);
        let q = rng.gen_range(0..=n);
        let v = random::polyvector(&mut rng, n, f, q, 2, 3);
        let x = random::chain(&mut rng, n, f, q, 2, 3);
        let projected = hkr_pi(&x);
        let eq = pi_cd_evaluate(&v, &x).and_then(|a| Ok(a == pairing(&v, &projected)?));
        report.check_result(eq, |&b| b, || format!("π_cd adjointness, instance {i}"));
    }
    report
}

fn homotopy_identity(x: &crate::hochschild::BarElement) -> Result<bool> {
    let dh = bar_differential(&contracting_homotopy(x))?;
    if x.q() == 0 {
        return Ok(dh.try_add(&unit_section(&augmentation(x)?)?)? == *x);
    }
    Ok(dh.try_add(&contracting_homotopy(&bar_differential(x)?))? == *x)
}

pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn run_criterion(id: usize, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => hkr_rank_identity(),
        2 => pi_eps_identity(),
        3 => characteristic_criterion_scan(),
        4 => cohomology_comparison(),
        5 => scaling_factor(),
        6 => cech_oracle(),
        7 => projective_assembly(),
        8 => structural_properties(seed, 100),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter_map(|&id| run_criterion(id, seed))
        .collect()
}
