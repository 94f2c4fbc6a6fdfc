//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure. Every criterion is exact (integer arithmetic); the only
//! tolerances are the wall-clock limits listed with each criterion.

use std::time::{Duration, Instant};

use amalgam_cli::run;
use amalgam_core::certificate::witness_unions;
use amalgam_core::mutation::mutate;
use amalgam_core::surface_cover::{for_each_cover, DEFAULT_ENUMERATION_CAP};
use amalgam_core::{
    analyze_rep, certify_not_comm_cohopfian, lift_curve, neumann_feasible, oracle_table,
    realize_surface_cover, solve_claim_integers, verify_certificate, AmalgamComplex, Certificate,
    CertifyOptions, CoverSpec, CycleType, Surface, Word,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn main_example() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["amalgam", "example", "--main"], &mut out, &mut err);
    ensure(code == 0, || {
        format!("exit code {code}: {}", String::from_utf8_lossy(&err))
    })?;
    let cert: Certificate = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let report = verify_certificate(&cert);
    ensure(report.passed() && report == cert.report, || {
        format!("report fails:\n{report}")
    })?;
    let degrees = (cert.x_prime.degree, cert.x_double_prime.degree);
    ensure(degrees == (3, 4), || format!("degrees {degrees:?}"))?;
    let chis = (
        cert.base.euler_characteristic(),
        cert.x_prime.euler_characteristic(),
        cert.x_double_prime.euler_characteristic(),
    );
    ensure(chis == (-3, -9, -12), || format!("χ values {chis:?}"))?;
    let unions = witness_unions(&cert);
    ensure(
        unions.len() == 3
            && unions
                .iter()
                .all(|u| *u == Surface::new(2, 1) && u.euler_characteristic() == -3),
        || format!("unions {unions:?}"),
    )?;
    let complement: Vec<i64> = cert
        .witness
        .complement
        .iter()
        .map(|id| {
            cert.x_double_prime
                .piece(id)
                .map_or(0, |p| p.surface.euler_characteristic())
        })
        .collect();
    ensure(complement == [-1, -1, -1], || {
        format!("complement χ {complement:?}")
    })?;
    Ok(format!(
        "{} checks, degrees (3,4), χ (−3,−9,−12)",
        report.checks.len()
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut specs = 0;
    let mut tuples = 0;
    for boundary in 1..=2 {
        let base = Surface::new(1, boundary);
        for degree in 1..=5 {
            let table =
                oracle_table(&base, degree, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
            tuples += table.tuples;
            let expected_rows = CycleType::all_of_degree(degree).len().pow(boundary);
            ensure(table.rows.len() == expected_rows, || {
                format!(
                    "{base} d={degree}: {} rows, expected {expected_rows}",
                    table.rows.len()
                )
            })?;
            for row in &table.rows {
                let spec = CoverSpec::new(degree, row.boundary_partitions.clone());
                let parity = neumann_feasible(&base, &spec).map_err(|e| e.to_string())?;
                ensure(
                    parity == (row.connected_realizations > 0) && parity == row.parity_feasible,
                    || {
                        format!(
                            "{base} d={degree} {:?}: parity {parity}, {} connected realizations",
                            row.boundary_partitions, row.connected_realizations
                        )
                    },
                )?;
                specs += 1;
            }
        }
    }
    Ok(format!(
        "{specs} specs agree over {tuples} enumerated tuples"
    ))
}

fn random_partition(n: u32, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let part = rng.gen_range(1..=left);
        parts.push(part);
        left -= part;
    }
    parts
}

fn realization_fidelity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut runs = 0;
    let mut max_degree = 0;
    while runs < 50 {
        let base = Surface::new(rng.gen_range(1..=2), rng.gen_range(1..=2));
        let degree = rng.gen_range(1..=8);
        let partitions: Vec<CycleType> = (0..base.boundary_count)
            .map(|_| CycleType::new(random_partition(degree, &mut rng)).unwrap())
            .collect();
        let spec = CoverSpec::new(degree, partitions);
        if !neumann_feasible(&base, &spec).map_err(|e| e.to_string())? {
            continue;
        }
        let seed = rng.gen();
        let rep = realize_surface_cover(&base, &spec, seed)
            .map_err(|e| format!("{base} {spec:?}: {e}"))?;
        let analysis = analyze_rep(&rep).map_err(|e| e.to_string())?;
        ensure(
            analysis.components.len() == 1
                && analysis.components[0].boundary_cycles == spec.boundary_partitions,
            || format!("{base} {spec:?}: analysis {analysis:?}"),
        )?;
        let surface = analysis.components[0].surface();
        ensure(
            surface.euler_characteristic() == degree as i64 * base.euler_characteristic()
                && surface.boundary_count as usize == spec.total_boundary_components(),
            || format!("{base} {spec:?}: cover surface {surface}"),
        )?;
        ensure(rep.satisfies_relator(), || {
            format!("{base} {spec:?}: relator fails")
        })?;
        let sign: i8 = rep.sigmas.iter().map(|s| s.sign()).product();
        ensure(sign == 1, || {
            format!("{base} {spec:?}: boundary product is odd")
        })?;
        max_degree = max_degree.max(degree);
        runs += 1;
    }
    Ok(format!("{runs} runs, degrees up to {max_degree}"))
}

fn claim_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let values: Vec<i64> = (1..=10).map(|n| -2 * n).collect();
    for _ in 0..100 {
        let k = rng.gen_range(3..=8);
        let chis: Vec<i64> = (0..k).map(|_| *values.choose(&mut rng).unwrap()).collect();
        let sol = solve_claim_integers(&chis, 1).map_err(|e| format!("{chis:?}: {e}"))?;
        let d = sol.core_degree as i128;
        let big_d = sol.prime_degree as i128;
        for i in 0..k {
            let chi = chis[i] as i128;
            let prev = chis[(i + k - 1) % k] as i128;
            let di = sol.branch_degrees[i] as i128;
            ensure(di >= 1, || format!("{chis:?}: d_{} = {di}", i + 1))?;
            let lhs = (d + di) * chi + 2 * di * prev + di * chi;
            ensure(lhs == big_d * chi, || {
                format!(
                    "{chis:?}: equation {} gives {lhs} vs {}",
                    i + 1,
                    big_d * chi
                )
            })?;
        }
    }
    Ok("100 inputs, all equations hold".into())
}

fn general_pipeline() -> Outcome {
    let mut grid = Vec::new();
    for k in 3..=6usize {
        for g in 1..=4u64 {
            grid.push(vec![g; k]);
        }
        grid.push((0..k).map(|i| 1 + i as u64 % 4).collect());
        grid.push((0..k).map(|i| if i % 2 == 0 { 1 } else { 4 }).collect());
    }
    for genera in &grid {
        let x = AmalgamComplex::simple("c", genera);
        let cert = certify_not_comm_cohopfian(&x, &CertifyOptions::default())
            .map_err(|e| format!("{genera:?}: {e}"))?;
        ensure(cert.report.passed(), || {
            format!("{genera:?}:\n{}", cert.report)
        })?;
        let k = genera.len();
        let complement: Vec<i64> = cert
            .witness
            .complement
            .iter()
            .map(|id| {
                cert.x_double_prime
                    .piece(id)
                    .map_or(0, |p| p.surface.euler_characteristic())
            })
            .collect();
        ensure(complement.len() == 2 * k * (k - 2), || {
            format!("{genera:?}: {} complement pieces", complement.len())
        })?;
        ensure(complement.iter().all(|&c| c < 0), || {
            format!("{genera:?}: complement χ {complement:?}")
        })?;
        let total: i64 = complement.iter().sum();
        ensure(
            cert.x_double_prime.euler_characteristic()
                == cert.x_prime.euler_characteristic() + total,
            || format!("{genera:?}: χ bookkeeping fails"),
        )?;
    }
    Ok(format!("{} amalgams certified", grid.len()))
}

fn curve_lifting() -> Outcome {
    let base = Surface::new(1, 1);
    let boundary = CycleType::new(vec![3]).unwrap();
    let target = CycleType::new(vec![2, 1]).unwrap();
    let mut found = None;
    for_each_cover(&base, 3, DEFAULT_ENUMERATION_CAP, |rep, analysis| {
        if found.is_some() {
            return;
        }
        let connected_with_boundary = analysis.components.len() == 1
            && analysis.components[0].boundary_cycles == [boundary.clone()];
        if connected_with_boundary && rep.alphas[0].cycle_type() == target {
            found = Some(rep.clone());
        }
    })
    .map_err(|e| e.to_string())?;
    let rep = found.ok_or("no degree-3 cover with a1 of type {2,1}")?;
    let word: Word = "a1"
        .parse()
        .map_err(|e: amalgam_core::CoverError| e.to_string())?;
    let lifts = lift_curve(&rep, &word).map_err(|e| e.to_string())?;
    ensure(lifts == [2, 1], || format!("lift gives {lifts:?}"))?;
    Ok(format!(
        "a1 ↦ {}, preimage degrees {lifts:?}",
        rep.alphas[0]
    ))
}

fn mutation_detection() -> Outcome {
    let realized = CertifyOptions {
        realize: true,
        seed: 1,
        ..CertifyOptions::default()
    };
    let certs = [
        amalgam_core::build_main_example(),
        certify_not_comm_cohopfian(&AmalgamComplex::simple("c", &[1, 1, 1]), &realized)
            .map_err(|e| e.to_string())?,
        certify_not_comm_cohopfian(
            &AmalgamComplex::simple("c", &[1, 2, 3, 1]),
            &CertifyOptions::default(),
        )
        .map_err(|e| e.to_string())?,
    ];
    let mut names = std::collections::BTreeSet::new();
    let mut mutants = 0;
    for cert in &certs {
        ensure(cert.report.passed(), || {
            format!("unmutated certificate fails:\n{}", cert.report)
        })?;
        for check in &cert.report.checks {
            let mutant = mutate(cert, &check.name)
                .ok_or_else(|| format!("no mutation for `{}`", check.name))?;
            let report = verify_certificate(&mutant);
            let flipped = !report.passed() && report.get(&check.name).is_some_and(|c| !c.passed);
            ensure(flipped, || {
                format!("mutation for `{}` went undetected", check.name)
            })?;
            names.insert(check.name.clone());
            mutants += 1;
        }
    }
    Ok(format!(
        "{} distinct checks, {mutants} mutants, all detected",
        names.len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 main example", main_example, Duration::from_secs(1)),
        (
            "2 oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(300),
        ),
        (
            "3 realization fidelity",
            realization_fidelity,
            Duration::from_secs(120),
        ),
        ("4 claim solver", claim_solver, Duration::from_secs(1)),
        (
            "5 general pipeline",
            general_pipeline,
            Duration::from_secs(10),
        ),
        ("6 curve lifting", curve_lifting, Duration::from_secs(60)),
        (
            "7 mutation detection",
            mutation_detection,
            Duration::from_secs(10),
        ),
    ];
    let mut failed = 0;
    for (name, criterion, limit) in criteria {
        let start = Instant::now();
        let outcome = criterion();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(summary) if elapsed > limit => Err(format!("{summary}; took longer than {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(summary) => println!("[PASS] {name}: {summary} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
