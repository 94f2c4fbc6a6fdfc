use amalgam_core::certificate::witness_unions;
use amalgam_core::mutation::mutate;
use amalgam_core::{
    build_main_example, certify_not_comm_cohopfian, verify_certificate, AmalgamComplex,
    Certificate, CertifyOptions, Surface,
};

fn grid() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for k in 3..=6usize {
        for g in 1..=4u64 {
            out.push(vec![g; k]);
        }
        out.push((0..k).map(|i| 1 + (i as u64 % 4)).collect());
        out.push((0..k).map(|i| 4 - (i as u64 % 4)).collect());
        out.push((0..k).map(|i| if i % 2 == 0 { 1 } else { 4 }).collect());
    }
    out
}

fn piece_chi_sum(cert: &Certificate, ids: &[String]) -> i64 {
    ids.iter()
        .map(|id| {
            cert.x_double_prime
                .piece(id)
                .unwrap()
                .surface
                .euler_characteristic()
        })
        .sum()
}

#[test]
fn grid_certificates_pass() {
    let instances = grid();
    assert!(instances.len() >= 20);
    for genera in instances {
        let x = AmalgamComplex::simple("c", &genera);
        let cert = certify_not_comm_cohopfian(&x, &CertifyOptions::default()).unwrap();
        assert!(cert.report.passed(), "{genera:?}\n{}", cert.report);

        let k = genera.len();
        assert_eq!(cert.witness.complement.len(), 2 * k * (k - 2), "{genera:?}");
        let complement_chi = piece_chi_sum(&cert, &cert.witness.complement);
        assert_eq!(
            cert.x_double_prime.euler_characteristic(),
            cert.x_prime.euler_characteristic() + complement_chi
        );
        for id in &cert.witness.complement {
            assert!(
                cert.x_double_prime
                    .piece(id)
                    .unwrap()
                    .surface
                    .euler_characteristic()
                    < 0
            );
        }

        // degrees compose: χ of each cover is its composite degree times χ(X)
        let chi = x.euler_characteristic();
        assert_eq!(
            cert.x_prime.euler_characteristic(),
            cert.composite_degrees.x_prime as i64 * chi
        );
        assert_eq!(
            cert.x_double_prime.euler_characteristic(),
            cert.composite_degrees.x_double_prime as i64 * chi
        );

        // each union is homeomorphic to its X′ piece
        for (assignment, union) in cert.witness.assignments.iter().zip(witness_unions(&cert)) {
            assert_eq!(
                cert.x_prime.piece(&assignment.sub_piece).unwrap().surface,
                union
            );
        }
    }
}

#[test]
fn main_example_numbers() {
    let cert = build_main_example();
    assert!(cert.report.passed(), "{}", cert.report);
    assert_eq!(cert.base.euler_characteristic(), -3);
    assert_eq!((cert.x_prime.degree, cert.x_double_prime.degree), (3, 4));
    assert_eq!(cert.x_prime.euler_characteristic(), -9);
    assert_eq!(cert.x_double_prime.euler_characteristic(), -12);
    for union in witness_unions(&cert) {
        assert_eq!(union, Surface::new(2, 1));
        assert_eq!(union.euler_characteristic(), -3);
    }
    assert_eq!(cert.witness.complement.len(), 3);
    for id in &cert.witness.complement {
        assert_eq!(
            cert.x_double_prime
                .piece(id)
                .unwrap()
                .surface
                .euler_characteristic(),
            -1
        );
    }
}

fn assert_every_check_detects(cert: &Certificate) {
    assert!(cert.report.passed(), "{}", cert.report);
    for check in &cert.report.checks {
        let mutant =
            mutate(cert, &check.name).unwrap_or_else(|| panic!("no mutation for {}", check.name));
        let report = verify_certificate(&mutant);
        assert!(!report.passed(), "{} left the report passing", check.name);
        assert!(
            !report.get(&check.name).unwrap().passed,
            "{} survived",
            check.name
        );
    }
}

#[test]
fn mutations_flip_every_check() {
    assert_every_check_detects(&build_main_example());
    let options = CertifyOptions {
        realize: true,
        seed: 11,
        ..CertifyOptions::default()
    };
    let realized =
        certify_not_comm_cohopfian(&AmalgamComplex::simple("c", &[1, 1, 1]), &options).unwrap();
    assert!(realized
        .report
        .get("x_double_prime.realization_fiber_counts")
        .is_some());
    assert_every_check_detects(&realized);
    let plain = certify_not_comm_cohopfian(
        &AmalgamComplex::simple("c", &[2, 1, 3, 1]),
        &CertifyOptions::default(),
    )
    .unwrap();
    assert_every_check_detects(&plain);
}

#[test]
fn certificate_json_round_trip() {
    let options = CertifyOptions {
        realize: true,
        seed: 5,
        ..CertifyOptions::default()
    };
    for cert in [
        build_main_example(),
        certify_not_comm_cohopfian(
            &AmalgamComplex::simple("c", &[1, 2, 3]),
            &CertifyOptions::default(),
        )
        .unwrap(),
        certify_not_comm_cohopfian(&AmalgamComplex::simple("c", &[1, 1, 1]), &options).unwrap(),
    ] {
        let text = serde_json::to_string_pretty(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        let report = verify_certificate(&back);
        assert_eq!(report, cert.report);
        assert_eq!(
            verify_certificate(&Certificate { report, ..back }),
            cert.report
        );
    }
}

#[test]
fn realization_is_seed_deterministic() {
    let x = AmalgamComplex::simple("c", &[1, 2, 1]);
    let options = CertifyOptions {
        realize: true,
        seed: 99,
        ..CertifyOptions::default()
    };
    let a = certify_not_comm_cohopfian(&x, &options).unwrap();
    let b = certify_not_comm_cohopfian(&x, &options).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn core_degree_parameter() {
    let x = AmalgamComplex::simple("c", &[1, 1, 1]);
    for d in 1..=4 {
        let options = CertifyOptions {
            core_degree: d,
            ..CertifyOptions::default()
        };
        let cert = certify_not_comm_cohopfian(&x, &options).unwrap();
        assert!(cert.report.passed());
        let sol = cert.solution.unwrap();
        assert_eq!(sol.prime_degree, d + 8);
        assert_eq!(cert.x_double_prime.degree, d + 12);
    }
}
