//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Expected values come from closed forms computed here.

use std::process::ExitCode;
use std::time::Instant;

use hhlab_core::acceptance::{structural_properties, DEFAULT_SEED};
use hhlab_core::cech::line_bundle_cohomology;
use hhlab_core::decomp::{characteristic_criterion, hh_projective, Verdict};
use hhlab_core::exactla::FieldSpec;
use hhlab_core::ext::{cochain_cohomology_rank, hkr_scaling_check, koszul_ext};
use hhlab_core::hochschild::{
    antisymmetrization_eps, chain_homology_rank, hkr_pi, omega_spanning_set,
};

fn choose(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn fact(q: i64) -> i64 {
    (1..=q).product()
}

fn field(c: u64) -> FieldSpec {
    FieldSpec::from_characteristic(c).unwrap()
}

/// `dim (Ω^q)_d` for `A = K[t_1..t_n]`.
fn omega_dim(n: i64, q: i64, d: i64) -> i64 {
    if d < q {
        0
    } else {
        choose(n, q) * choose(d - q + n - 1, n - 1)
    }
}

/// `h^i(P^n, O(d))` from the standard computation.
fn line_bundle_oracle(n: i64, d: i64) -> Vec<i64> {
    let mut h = vec![0; n as usize + 1];
    if d >= 0 {
        h[0] = choose(n + d, n);
    }
    if d <= -n - 1 {
        h[n as usize] = choose(-d - 1, n);
    }
    h
}

fn criterion_1() -> Result<(), String> {
    for c in [0, 2, 3] {
        for n in 1..=3 {
            for q in 0..=4 {
                for d in 0..=6 {
                    let got = chain_homology_rank(n, field(c), q, d).map_err(|e| e.to_string())?;
                    let want = omega_dim(n as i64, q as i64, d as i64);
                    if got as i64 != want {
                        return Err(format!("char {c} n={n} q={q} d={d}: {got} vs {want}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    for c in [0, 5] {
        let f = field(c);
        for n in 1..=4 {
            for q in 0..=4 {
                let scale = f.from_i64(fact(q as i64));
                for d in 0..=6 {
                    for w in omega_spanning_set(n, f, q, d) {
                        if hkr_pi(&antisymmetrization_eps(&w)) != w.scale(&scale) {
                            return Err(format!("char {c} n={n} q={q} d={d}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    let w = characteristic_criterion(2, 2, 3, 4).map_err(|e| e.to_string())?;
    let piece = w.witness.ok_or("no witness for n=2, p=2")?;
    if w.verdict != Verdict::Fails
        || (piece.q, piece.d, piece.homology_dim, piece.induced_rank) != (2, 2, 1, 0)
    {
        return Err(format!("n=2, p=2: {piece:?}"));
    }
    let mut holds = vec![(1, 2)];
    holds.extend((1..=3).map(|n| (n, 0)));
    for (n, p) in holds {
        let w = characteristic_criterion(n, p, 3, 4).map_err(|e| e.to_string())?;
        if w.verdict != Verdict::Holds {
            return Err(format!("n={n}, p={p}: {:?}", w.witness));
        }
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    for c in [0, 2] {
        let f = field(c);
        for n in 1..=3 {
            for q in 0..=4 {
                let (mut co, mut ch) = (0, 0);
                for d in 0..=6 {
                    co += cochain_cohomology_rank(n, f, q, d).map_err(|e| e.to_string())?;
                    ch += chain_homology_rank(n, f, q, d).map_err(|e| e.to_string())?;
                }
                if co != ch {
                    return Err(format!("char {c} n={n} q={q}: {co} vs {ch}"));
                }
            }
        }
        for n in 1..=4 {
            for q in 0..=6 {
                let r = koszul_ext(n, f, q).map_err(|e| e.to_string())?;
                if r as i64 != choose(n as i64, q as i64) {
                    return Err(format!("Ext^{q}, n={n}, char {c}: {r}"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    let f = field(0);
    for q in 0..=3usize {
        for n in q.max(1)..=3 {
            let c = hkr_scaling_check(n, f, q).map_err(|e| e.to_string())?;
            if c != f.from_i64(fact(q as i64)) {
                return Err(format!("n={n} q={q}: {c:?}"));
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let f = field(0);
    for n in 1..=3i64 {
        for d in -8..=8i64 {
            let h: Vec<i64> = line_bundle_cohomology(n as usize, f, d)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|x| x as i64)
                .collect();
            if h != line_bundle_oracle(n, d) {
                return Err(format!("O({d}) on P^{n}: {h:?}"));
            }
            let dual =
                line_bundle_cohomology(n as usize, f, -d - n - 1).map_err(|e| e.to_string())?;
            if (0..=n as usize).any(|i| h[i] != dual[n as usize - i] as i64) {
                return Err(format!("Serre duality for O({d}) on P^{n}"));
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    let cases: [(usize, u64, Option<Vec<usize>>, bool); 4] = [
        (1, 0, Some(vec![1, 3, 0]), true),
        (2, 0, Some(vec![1, 8, 10, 0, 0]), true),
        (1, 2, Some(vec![1, 3, 0]), true),
        (2, 2, None, false),
    ];
    for (n, c, hh, validity) in cases {
        let r = hh_projective(n, field(c)).map_err(|e| e.to_string())?;
        if r.hh != hh || r.validity != validity {
            return Err(format!(
                "P^{n} char {c}: {:?} validity {}",
                r.hh, r.validity
            ));
        }
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let report = structural_properties(DEFAULT_SEED, 100);
    if report.checks < 600 {
        return Err(format!("only {} instances", report.checks));
    }
    if !report.passed {
        return Err(report.failures.join("; "));
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<(), String>); 8] = [
        ("HKR rank identity", criterion_1),
        ("pi eps = q! on spanning sets", criterion_2),
        ("characteristic criterion witnesses", criterion_3),
        ("graded duality and Koszul Ext", criterion_4),
        ("q! scaling factor", criterion_5),
        ("Cech line bundles and Serre duality", criterion_6),
        ("projective decomposition", criterion_7),
        ("randomized structural identities", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} PASS  {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
