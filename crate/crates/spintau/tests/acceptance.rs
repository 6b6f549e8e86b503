//! Acceptance criteria 1-10, one PASS/FAIL line each. Exits nonzero on any failure.

use num_bigint::BigInt;
use spintau::cli::run_args;
use spintau::numerics::Scheme;
use spintau::swrec::{recursion_residual, Convention, KernelNormalization};
use spintau::verify::{run, NumericOptions, Report, Suite};
use spintau_core::exactcore::{q, FormalPolynomial, Rational};
use spintau_core::kappa::{k_polynomials, zk_vacuum};
use spintau_core::spincorr::{genus0_closed_form, one_point, spin_correlators, triple_route_compare, two_point};
use spintau_core::virasoro::bgw_correlators;
use spintau_core::Truncation;
use std::path::Path;
use std::time::Instant;

type Outcome = Result<String, String>;

fn suite(s: Suite, trunc: Truncation) -> Result<Report, String> {
    run(s, trunc, &NumericOptions::default()).map_err(|e| e.to_string())
}

fn verdict(r: &Report) -> Outcome {
    if r.passed() {
        Ok(r.summary.clone())
    } else {
        Err(r.text())
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn triple_route() -> Outcome {
    let start = Instant::now();
    let rep = triple_route_compare(Truncation::new(2, 6, 4, 6)).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(rep.mismatches.is_empty(), format!("{} mismatches", rep.mismatches.len()))?;
    ensure(rep.coefficients >= 100, format!("only {} coefficients", rep.coefficients))?;
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("{} in {secs:.1}s", rep.summary()))
}

fn trr() -> Outcome {
    verdict(&suite(Suite::Trr, Truncation::default())?)
}

fn double_factorial(n: i64) -> BigInt {
    (1..=n).rev().step_by(2).map(BigInt::from).product()
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `κ_{j_1}^{e_1} κ_{j_2}^{e_2} ...` times `c`.
fn kappa(c: Rational, factors: &[(usize, u32)]) -> FormalPolynomial {
    factors.iter().fold(FormalPolynomial::constant(c), |acc, &(j, e)| {
        acc.mul(&FormalPolynomial::monomial(j - 1, e, q(1, 1)))
    })
}

fn constants() -> Outcome {
    let trunc = Truncation::new(1, 6, 2, 7);
    let bgw = bgw_correlators(trunc);
    ensure(bgw.get(1, &[0]) == q(1, 8), format!("Theta_(1,1) = {}", bgw.get(1, &[0])))?;
    let spin = spin_correlators(trunc).map_err(|e| e.to_string())?;
    for m in 0..=5u32 {
        // Direct count: (2m-1)!! / (2m+2)!.
        let direct = Rational::new(double_factorial(2 * m as i64 - 1), factorial(2 * m as u64 + 2));
        let v = one_point(m);
        ensure(
            v == direct && bgw.get(0, &[m]) == v && spin.get(0, &[m]) == v,
            format!("<tau_{m}>_0: formula {v}, direct {direct}, bgw {}", bgw.get(0, &[m])),
        )?;
        for m2 in 0..=5 - m {
            let v = two_point(m, m2);
            ensure(
                v == genus0_closed_form(&[m, m2]) && bgw.get(0, &[m, m2]) == v,
                format!("<tau_{m} tau_{m2}>_0: formula {v}, bgw {}", bgw.get(0, &[m, m2])),
            )?;
        }
    }
    let k = k_polynomials(4);
    let expected = [
        kappa(q(3, 1), &[(1, 1)]),
        kappa(q(9, 2), &[(1, 2)]).add(&kappa(q(-21, 2), &[(2, 1)])),
        kappa(q(9, 2), &[(1, 3)])
            .add(&kappa(q(-63, 2), &[(1, 1), (2, 1)]))
            .add(&kappa(q(69, 1), &[(3, 1)])),
        [
            kappa(q(27, 8), &[(1, 4)]),
            kappa(q(-378, 8), &[(1, 2), (2, 1)]),
            kappa(q(441, 8), &[(2, 2)]),
            kappa(q(1656, 8), &[(1, 1), (3, 1)]),
            kappa(q(-5058, 8), &[(4, 1)]),
        ]
        .iter()
        .fold(FormalPolynomial::zero(), |acc, p| acc.add(p)),
    ];
    for (m, want) in expected.iter().enumerate() {
        ensure(&k[m + 1].poly == want, format!("K_{} differs", m + 1))?;
    }
    let vac = zk_vacuum(2).map_err(|e| e.to_string())?;
    // (-1)^g B_{2g} / (2g(2g-2)) at g = 2, B_4 = -1/30.
    let bernoulli = q(-1, 30) / Rational::from_integer(BigInt::from(8));
    ensure(vac == bernoulli && vac == q(-1, 240), format!("int_M2 K = {vac}"))?;
    Ok("Theta_(1,1) = 1/8; F_(0,1), F_(0,2) for m <= 5; K_1..K_4; int_M2 K = -1/240".into())
}

fn vanishing() -> Outcome {
    verdict(&suite(Suite::Vanishing, Truncation::default())?)
}

fn kdv() -> Outcome {
    let start = Instant::now();
    let r = suite(Suite::Kdv, Truncation::new(2, 6, 5, 8))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    verdict(&r).map(|s| format!("{s} in {secs:.1}s"))
}

fn virasoro() -> Outcome {
    let a = verdict(&suite(Suite::Virasoro, Truncation::default())?)?;
    let b = verdict(&suite(Suite::Homogeneity, Truncation::default())?)?;
    Ok(format!("{a}; {b}"))
}

fn spectral() -> Outcome {
    let start = Instant::now();
    let r = suite(Suite::Spectral, Truncation::default())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, format!("took {secs:.1}s"))?;
    verdict(&r).map(|s| format!("{s} in {secs:.1}s"))
}

fn laplace() -> Outcome {
    verdict(&suite(Suite::Laplace, Truncation::default())?)
}

fn recursion() -> Outcome {
    let r = suite(Suite::Recursion, Truncation::default())?;
    let summary = verdict(&r)?;
    // Second quadrature scheme on the recorded convention.
    let passing = Convention { include_v01: true, include_v02: true, normalization: KernelNormalization::InverseTwoPi };
    ensure(summary.contains(&passing.label()), format!("unexpected passing set: {summary}"))?;
    let adaptive = recursion_residual(0, 3, &[1.5, 0.8, 0.2], 2, passing, Scheme::Adaptive, 1e-25)
        .map_err(|e| e.to_string())?;
    ensure(adaptive.max_residual() < 1e-8, format!("adaptive residual {:.2e}", adaptive.max_residual()))?;
    Ok(format!("{summary}; adaptive cross-check {:.1e}", adaptive.max_residual()))
}

fn cli(args: &[&str]) -> Result<(String, String), String> {
    let out = run_args(std::iter::once("spintau").chain(args.iter().copied()));
    if out.code != 0 {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr));
    }
    Ok((out.stdout, out.stderr))
}

fn listing(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .map(|d| {
            d.flatten()
                .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap_or_default()))
                .collect()
        })
        .unwrap_or_default();
    v.sort();
    v
}

fn determinism() -> Outcome {
    let requests: [&[&str]; 4] = [
        &["correlators", "spin", "--gmax", "2", "--kmax", "4", "--dmax", "4", "--smax", "6", "--format", "json"],
        &["volume", "--g", "1", "--n", "2", "--smax", "4", "--format", "json"],
        &["tr", "--curve", "ck", "--gmax", "1", "--nmax", "2", "--eta", "--format", "json"],
        &["correlators", "kw", "--format", "csv"],
    ];
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (da, db) = (a.path().to_str().unwrap(), b.path().to_str().unwrap());
    for req in requests {
        let with = |dir: &str, threads: &str, extra: &[&str]| {
            let mut v = vec!["--cache-dir", dir, "--threads", threads];
            v.extend_from_slice(extra);
            v.extend_from_slice(req);
            cli(&v)
        };
        let (first, s1) = with(da, "1", &[])?;
        let (second, s2) = with(db, "4", &[])?;
        let (third, s3) = with(da, "4", &[])?;
        let (fourth, _) = with(da, "2", &["--no-cache"])?;
        ensure(s1.contains("cache: miss") && s2.contains("cache: miss"), format!("{req:?}: {s1} {s2}"))?;
        ensure(s3.contains("cache: hit"), format!("{req:?}: expected a hit, got {s3}"))?;
        ensure(
            first == second && first == third && first == fourth,
            format!("{req:?}: outputs differ across runs or thread counts"),
        )?;
    }
    let (va, vb) = (["verify", "trr", "--format", "json", "--threads", "1"], ["verify", "trr", "--format", "json", "--threads", "4"]);
    ensure(cli(&va)?.0 == cli(&vb)?.0, "verify reports differ across thread counts")?;
    ensure(listing(a.path()) == listing(b.path()), "cache directories differ")?;
    Ok(format!("{} artifacts byte-identical across runs, thread counts 1/2/4 and cache hits", requests.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("bgw = spin = D zk triple route", triple_route),
        ("genus-0 closed form", trr),
        ("constants", constants),
        ("vanishing", vanishing),
        ("kdv", kdv),
        ("virasoro and homogeneity", virasoro),
        ("spectral cross-checks", spectral),
        ("cns laplace", laplace),
        ("integral recursion", recursion),
        ("determinism and cache", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
