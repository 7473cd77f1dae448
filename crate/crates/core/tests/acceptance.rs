//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time limit.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use sigforge::cli::execute;
use sigforge::construct::{
    default_closeness, hankel_realize, highdim_jump_polynomial, highdim_metabolic_peak,
    highdim_validate_polynomial, independence_certificate, jump_polynomial, metabolic_peak,
};
use sigforge::exact_math::{rat, unit_roots_with_multiplicity, IntPolynomial};
use sigforge::matrix::{IntMatrix, Matrix};
use sigforge::oracle::{omega_from_real_part, signature_float, DEFAULT_THRESHOLD};
use sigforge::seifert::{
    alexander_polynomial, averaged_signature, galois_parity_of, signature_at_rational,
    signature_step_function, validate_seifert, verify_metabolizer, MetabolizerCertificate, Parity,
    SeifertMatrix,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn levine_peak_via_cli() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["sigforge", "--format", "json", "construct", "metabolic", "--poly", "1,-1,1", "--root-index", "1"];
    let code = execute(argv, &mut out, &mut err);
    ensure(code == 0, format!("exit code {code}: {}", String::from_utf8_lossy(&err)))?;
    let report: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let outputs = &report["outputs"];
    ensure(outputs["dim"] == 8, "dimension is not 8")?;
    ensure(outputs["parity"] == "classical", "not classical")?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(outputs["matrix"].clone()).map_err(|e| e.to_string())?;
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let w = validate_seifert(IntMatrix::from_i64_rows(&refs), Parity::Classical).map_err(|e| e.to_string())?;
    let sf = signature_step_function(&w).map_err(|e| e.to_string())?;
    ensure(sf.breakpoints.len() == 1, "expected one breakpoint")?;
    ensure(sf.breakpoints[0].as_rational() == Some(rat(1, 2)), "breakpoint is not 1/2")?;
    ensure(sf.interval_values == vec![0, 0], format!("interval values {:?}", sf.interval_values))?;
    ensure(sf.point_values == vec![2], format!("point values {:?}", sf.point_values))?;
    // the paper's V is a single 4×4 summand with Δ²; the 8×8 sum carries Δ⁴
    let levine_sq = p(&[1, -2, 3, -2, 1]);
    let summand = |offset: usize| {
        let m = Matrix::from_fn(4, 4, |i, j| w.matrix()[(i + offset, j + offset)].clone());
        validate_seifert(m, Parity::Classical).map_err(|e| e.to_string())
    };
    for offset in [0, 4] {
        let v = summand(offset)?;
        ensure(alexander_polynomial(&v).normalized == levine_sq, "summand Δ is not (t²−t+1)²")?;
        let cert = MetabolizerCertificate::leading_coordinates(4);
        ensure(verify_metabolizer(&v, &cert) == Ok(true), "summand metabolizer fails")?;
    }
    ensure(
        alexander_polynomial(&w).normalized == levine_sq.pow(2),
        "Δ of the sum is not (t²−t+1)⁴",
    )?;
    let checks = report["checks"].as_array().cloned().unwrap_or_default();
    ensure(checks.iter().all(|c| c["passed"] == true), "a reported check failed")?;
    Ok("point value 2 at 1/2, zero elsewhere; summands Δ = (t²−t+1)², sum Δ = (t²−t+1)⁴; metabolizers verify".into())
}

fn multi_root_selectivity() -> Outcome {
    let d = p(&[1, -1, 1, -1, 1]);
    for (idx, want) in [(1, vec![2, 0]), (2, vec![0, 2])] {
        let m = metabolic_peak(&d, idx).map_err(|e| e.to_string())?;
        let sf = &m.step_function;
        ensure(sf.breakpoints.len() == 2, "expected two breakpoints")?;
        ensure(sf.breakpoints.iter().all(|b| b.as_rational().is_none()), "breakpoints should be irrational")?;
        ensure(sf.point_values == want, format!("p={idx}: point values {:?}", sf.point_values))?;
        ensure(sf.interval_values.iter().all(|&v| v == 0), "nonzero interval value")?;
    }
    Ok("point values (2,0) and (0,2) at c = (1±√5)/4".into())
}

fn jump_localization() -> Outcome {
    let j = jump_polynomial(&rat(0, 1), &rat(1, 10)).map_err(|e| e.to_string())?;
    ensure(j.delta == p(&[3, -6, 5, -6, 3]), format!("got {}", j.delta))?;
    let k = hankel_realize(&j.delta).map_err(|e| e.to_string())?;
    validate_seifert(k.matrix().clone(), Parity::Classical).map_err(|e| e.to_string())?;
    let sf = signature_step_function(&k).map_err(|e| e.to_string())?;
    ensure(sf.breakpoints.len() == 1, "expected a single breakpoint")?;
    let c = &sf.breakpoints[0];
    ensure(
        c.cmp_rational(&rat(-1, 10)) == Ordering::Greater && c.cmp_rational(&rat(1, 10)) == Ordering::Less,
        "|c*| ≥ 1/10",
    )?;
    ensure(sf.interval_values.len() == 2, "expected two intervals")?;
    ensure(sf.interval_values[0].abs() == 2 && sf.interval_values[1] == 0, format!("{:?}", sf.interval_values))?;
    Ok(format!("3t⁴−6t³+5t²−6t+3, c* ≈ {:.6}, interval values {:?}", c.to_f64(), sf.interval_values))
}

fn independence() -> Outcome {
    let cs = [rat(-3, 5), rat(-1, 10), rat(2, 5)];
    let mut rows = Vec::new();
    for k in 1..=3 {
        let cert = independence_certificate(&cs, k).map_err(|e| e.to_string())?;
        let exact: Vec<i64> = cs
            .iter()
            .map(|c| signature_at_rational(&cert.matrix, c))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for (i, v) in exact.iter().enumerate() {
            let ok = if i + 1 == k { v.abs() == 2 } else { *v == 0 };
            ensure(ok, format!("k={k}: values {exact:?}"))?;
        }
        rows.push(format!("{exact:?}"));
    }
    Ok(format!("patterns {}", rows.join(" ")))
}

fn trefoil() -> Outcome {
    let t = validate_seifert(IntMatrix::from_i64_rows(&[&[-1, 1], &[0, -1]]), Parity::Classical)
        .map_err(|e| e.to_string())?;
    let sf = signature_step_function(&t).map_err(|e| e.to_string())?;
    ensure(sf.breakpoints.len() == 1 && sf.breakpoints[0].as_rational() == Some(rat(1, 2)), "breakpoint")?;
    ensure(sf.interval_values == vec![-2, 0], format!("{:?}", sf.interval_values))?;
    ensure(sf.point_values == vec![-1], format!("{:?}", sf.point_values))?;
    let avg = averaged_signature(&t, &sf.breakpoints[0]).map_err(|e| e.to_string())?;
    ensure(avg == Rational64::from_integer(-1), format!("averaged {avg}"))?;
    Ok("−2 on (−1,1/2), −1 at 1/2, 0 on (1/2,1); averaged −1".into())
}

fn metabolic_vanishing() -> Outcome {
    let q = p(&[1, -1, 1, -1, 1]);
    let peaks = [
        metabolic_peak(&p(&[1, -1, 1]), 1),
        metabolic_peak(&q, 1),
        metabolic_peak(&q, 2),
        highdim_metabolic_peak(&p(&[-1, 1, -1]), 1),
        highdim_metabolic_peak(&q, 1),
        highdim_metabolic_peak(&q, 2),
    ];
    let mut matrices: Vec<SeifertMatrix> = Vec::new();
    for peak in peaks {
        let peak = peak.map_err(|e| e.to_string())?;
        matrices.extend(peak.summands.iter().cloned());
        matrices.push(peak.matrix);
    }
    let mut rng = StdRng::seed_from_u64(6);
    let mut evaluations = 0;
    for k in &matrices {
        let sf = signature_step_function(k).map_err(|e| e.to_string())?;
        let mut done = 0;
        while done < 50 {
            let c = BigRational::new(rng.gen_range(-9999i64..=9999).into(), 10_000.into());
            if sf.breakpoints.iter().any(|b| b.cmp_rational(&c) == Ordering::Equal) {
                continue;
            }
            let v = signature_at_rational(k, &c).map_err(|e| e.to_string())?;
            ensure(v == 0, format!("σ({c}) = {v} on a {}×{} matrix", k.dim(), k.dim()))?;
            done += 1;
            evaluations += 1;
        }
        for b in &sf.breakpoints {
            let avg = averaged_signature(k, b).map_err(|e| e.to_string())?;
            ensure(avg.is_zero(), format!("averaged signature {avg} at a breakpoint"))?;
        }
    }
    Ok(format!("{} matrices, {evaluations} rational points, all breakpoints averaged 0", matrices.len()))
}

/// Random integer matrix with entries in `[-r, r]`.
fn random_matrix(rng: &mut StdRng, n: usize, r: i64) -> IntMatrix {
    Matrix::from_fn(n, n, |_, _| BigInt::from(rng.gen_range(-r..=r)))
}

/// Random unimodular matrix as a product of elementary row operations.
fn random_unimodular(rng: &mut StdRng, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let f = BigInt::from(rng.gen_range(-2i64..=2));
        for c in 0..n {
            let v = &p[(j, c)] * &f;
            p[(i, c)] += v;
        }
    }
    p
}

fn e8_upper() -> IntMatrix {
    // upper-triangular half of the E8 Gram matrix, diagonal 1
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    Matrix::from_fn(8, 8, |i, j| {
        if i == j || (i < j && edges.contains(&(i, j))) {
            BigInt::from(1)
        } else {
            BigInt::zero()
        }
    })
}

fn random_seifert(rng: &mut StdRng, parity: Parity) -> SeifertMatrix {
    let n = 2 * rng.gen_range(1..=4usize);
    let hyperbolic = Matrix::from_fn(n, n, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            BigInt::from(1)
        } else {
            BigInt::zero()
        }
    });
    let v = match parity {
        Parity::Classical => {
            // V − Vᵀ is the standard symplectic form; the symmetric part is free
            let z = random_matrix(rng, n, 3);
            hyperbolic.add(&z.add(&z.transpose()))
        }
        Parity::HighDimSym => {
            // V + Vᵀ is H^k or ±E8; the skew part is free
            let base = if n == 8 && rng.gen_bool(0.3) {
                if rng.gen_bool(0.5) {
                    e8_upper()
                } else {
                    e8_upper().neg()
                }
            } else {
                hyperbolic
            };
            let a = random_matrix(rng, n, 3);
            base.add(&a.sub(&a.transpose()))
        }
    };
    let u = random_unimodular(rng, n);
    let v = u.mul(&v).mul(&u.transpose());
    validate_seifert(v, parity).expect("generated matrix satisfies its parity condition")
}

fn oracle_concordance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut certified = 0;
    let mut uncertified = 0;
    for i in 0..200 {
        let parity = if i % 2 == 0 { Parity::Classical } else { Parity::HighDimSym };
        let k = random_seifert(&mut rng, parity);
        for _ in 0..5 {
            let den = rng.gen_range(2i64..=200);
            let num = rng.gen_range(-(den - 1)..=den - 1);
            let c = rat(num, den);
            let exact = signature_at_rational(&k, &c).map_err(|e| e.to_string())?;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let r = signature_float(&k, omega_from_real_part(cf), DEFAULT_THRESHOLD);
            if r.gap_certified {
                certified += 1;
                ensure(
                    r.signature == exact,
                    format!("matrix {i} ({parity}) at c = {c}: exact {exact}, float {}", r.signature),
                )?;
                let conj = signature_float(&k, omega_from_real_part(cf).conj(), DEFAULT_THRESHOLD);
                ensure(conj.signature == r.signature, format!("conjugation symmetry fails for matrix {i}"))?;
            } else {
                uncertified += 1;
            }
        }
    }
    Ok(format!("{certified} certified points agree, {uncertified} skipped, 0 disagreements"))
}

fn highdim_polynomial() -> Outcome {
    let d = highdim_jump_polynomial(&rat(0, 1), &rat(1, 10), &default_closeness()).map_err(|e| e.to_string())?;
    let expected = &p(&[6, -11, 6]) * &p(&[3, -6, 5, -6, 3]);
    ensure(d.d == expected, format!("got {}", d.d))?;
    ensure(d.d.eval_int(&BigInt::from(1)) == BigInt::from(-1), "D(1) ≠ −1")?;
    ensure(d.d.eval_int(&BigInt::from(-1)) == BigInt::from(529), "D(−1) ≠ 529")?;
    let roots = unit_roots_with_multiplicity(&d.d).map_err(|e| e.to_string())?;
    ensure(roots.len() == 2, "expected two unit-root pairs")?;
    let c_star = roots[0].root.to_f64();
    ensure((c_star + 0.0774).abs() < 1e-4, format!("c* ≈ {c_star}"))?;
    ensure(roots[1].root.cmp_rational(&rat(11, 12)) == Ordering::Equal, "second root is not 11/12")?;
    ensure(highdim_validate_polynomial(&d.d), "validator rejects D")?;
    ensure(!highdim_validate_polynomial(&p(&[1, -1, 1, -1, 1])), "validator accepts t⁴−t³+t²−t+1")?;
    Ok(format!("D = {}, D(−1) = 23², roots {{{c_star:.4}, 11/12}}", d.d))
}

fn highdim_metabolic() -> Outcome {
    let m = highdim_metabolic_peak(&p(&[-1, 1, -1]), 1).map_err(|e| e.to_string())?;
    validate_seifert(m.matrix.matrix().clone(), Parity::HighDimSym).map_err(|e| e.to_string())?;
    let sf = signature_step_function(&m.matrix).map_err(|e| e.to_string())?;
    ensure(sf.breakpoints.len() == 1 && sf.breakpoints[0].as_rational() == Some(rat(1, 2)), "breakpoint")?;
    ensure(sf.point_values == vec![2], format!("{:?}", sf.point_values))?;
    ensure(sf.interval_values.iter().all(|&v| v == 0), format!("{:?}", sf.interval_values))?;
    Ok("valid high-dimensional matrix; point value 2 at 1/2, zero elsewhere".into())
}

fn galois_parity() -> Outcome {
    let k = hankel_realize(&p(&[1, -1, 1, -1, 1])).map_err(|e| e.to_string())?;
    let sf = signature_step_function(&k).map_err(|e| e.to_string())?;
    ensure(sf.breakpoints.len() == 2, "expected two breakpoints")?;
    let (a, b) = (sf.point_values[0], sf.point_values[1]);
    ensure((a - b) % 2 == 0, format!("point values {a}, {b}"))?;
    ensure(galois_parity_of(&k, &sf) == Ok(true), "library parity check fails")?;
    Ok(format!("point values {a}, {b}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "single peak at the root of t²−t+1 via the CLI", limit: Some(Duration::from_secs(1)), run: levine_peak_via_cli },
        Criterion { id: 2, name: "peak selectivity for t⁴−t³+t²−t+1", limit: Some(Duration::from_secs(10)), run: multi_root_selectivity },
        Criterion { id: 3, name: "jump localization for (0, 1/10)", limit: Some(Duration::from_secs(1)), run: jump_localization },
        Criterion { id: 4, name: "independence certificates", limit: Some(Duration::from_secs(30)), run: independence },
        Criterion { id: 5, name: "trefoil step function", limit: Some(Duration::from_secs(1)), run: trefoil },
        Criterion { id: 6, name: "metabolic vanishing and averaged nullity", limit: None, run: metabolic_vanishing },
        Criterion { id: 7, name: "float oracle concordance", limit: None, run: oracle_concordance },
        Criterion { id: 8, name: "high-dimensional jump polynomial", limit: None, run: highdim_polynomial },
        Criterion { id: 9, name: "high-dimensional metabolic peak", limit: None, run: highdim_metabolic },
        Criterion { id: 10, name: "Galois parity of breakpoint values", limit: None, run: galois_parity },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        let limit = c.limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {} [{elapsed:.2?}{limit}] {detail}", c.id, c.name),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {} [{elapsed:.2?}{limit}] {detail}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
