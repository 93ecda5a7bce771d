use std::process::Command;

use qeis::archimedean::CheckOutcome;
use qeis::siegel::DEFAULT_BUDGET;
use qeis::verify;

fn report(n: u32, checks: &[CheckOutcome]) -> bool {
    let pass = checks.iter().all(|c| c.pass);
    let detail: Vec<String> = checks
        .iter()
        .filter(|c| !pass || checks.len() <= 4 || !c.pass)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    let summary = if detail.is_empty() { format!("{} checks", checks.len()) } else { detail.join("; ") };
    println!("criterion {n}: {} | {summary}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn expand_bytes(workers: usize) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_qeis"))
        .args(["expand", "--D", "3", "--n", "2", "--ell", "3", "--bound", "10", "--workers"])
        .arg(workers.to_string())
        .output()
        .expect("run qeis");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> CheckOutcome {
    let base = expand_bytes(1);
    let runs = [expand_bytes(1), expand_bytes(2), expand_bytes(4), expand_bytes(8)];
    let pass = runs.iter().all(|r| *r == base) && base.windows(7).any(|w| w == b"\"14256\"");
    CheckOutcome {
        name: "expand determinism".into(),
        pass,
        detail: format!("{} bytes, identical over workers 1, 1, 2, 4, 8", base.len()),
    }
}

#[test]
fn acceptance() {
    let b = DEFAULT_BUDGET;
    let results = [
        report(1, &[verify::oracle_equivalence(3, 3, 15, b).unwrap(), verify::oracle_equivalence(5, 2, 15, b).unwrap()]),
        report(2, &[verify::functional_equations(&[3, 5], &[3, 7, 11], 30).unwrap()]),
        report(3, &[verify::unit_norm_corollaries(&[3, 7, 11], 30, &[2, 3, 5, 7, 11, 13]).unwrap()]),
        report(4, &[verify::r_reading_arbitration(3, 4, 2).unwrap(), verify::r_reading_arbitration(5, 4, 1).unwrap()]),
        report(5, &[verify::dual_path_q(&[3, 7, 11], 30).unwrap()]),
        report(6, &[verify::integrality(&[3, 7, 11], 30, &[3, 4, 5], 12, b).unwrap()]),
        report(7, &[verify::forced_values(b).unwrap()]),
        report(8, &verify::identity_suite().unwrap()),
        {
            println!(
                "criterion 9: NOT RUN | optional four-dimensional quadrature is not implemented; \
                 the rank-2 archimedean constant is covered by the one-dimensional identities of criterion 8"
            );
            true
        },
        report(10, &[verify::lift_sanity().unwrap()]),
        report(11, &[determinism()]),
    ];
    assert!(results.iter().all(|&r| r), "acceptance criteria failed: {results:?}");
}
