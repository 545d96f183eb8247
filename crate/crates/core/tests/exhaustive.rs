//! Checks over every Noether solution up to degree 20.

use cremona::cli::cmd_adm;
use cremona::hudson::{is_admissible, q_reduce, verify_bounds};
use cremona::multiindex::enumerate_noether;

const MAX_DEGREE: u32 = 20;

#[test]
fn solutions_satisfy_identities() {
    for d in 2..=MAX_DEGREE {
        for nu in enumerate_noether(d) {
            assert!(nu.noether_status().is_ok(), "{nu}");
            assert!(nu.check_identity_2dm1(), "{nu}");
            let m = nu.multiplicities().unwrap();
            assert_eq!(m.len() as u64, nu.reduced_length());
            assert_eq!(m.sum_of_squares(), (d as u64).pow(2) - 1);
            assert_eq!(m.sum(), 3 * (d as u64 - 1));
            assert_eq!(
                nu.length(),
                m.values()
                    .iter()
                    .map(|&v| (v * (v + 1) / 2) as u64)
                    .sum::<u64>()
            );
            assert!(m.values().windows(2).all(|w| w[0] >= w[1]));
        }
    }
}

#[test]
fn q_reduction_preserves_noether() {
    for d in 3..=MAX_DEGREE {
        for nu in enumerate_noether(d) {
            if let Ok(step) = q_reduce(&nu) {
                assert!(
                    step.output.noether_status().is_ok(),
                    "{nu} -> {}",
                    step.output
                );
                let [m1, m2, m3] = step.centers;
                assert_eq!(step.epsilon, d as i64 - (m1 + m2 + m3) as i64);
                assert!(step.epsilon < 0, "{nu}: q must lower the degree");
                assert_eq!(step.output_degree() as i64, d as i64 + step.epsilon);
            }
        }
    }
}

#[test]
fn adm_agrees_with_library() {
    for d in 2..=MAX_DEGREE {
        for nu in enumerate_noether(d) {
            let args: Vec<i64> = nu.counts().iter().map(|&v| v as i64).collect();
            let out = cmd_adm(&args);
            let verdict = is_admissible(&nu);
            assert_eq!(out.stdout, format!("{}\n", verdict.diagnostic()), "{nu}");
            assert_eq!(out.code == 0, verdict.is_admissible(), "{nu}");
        }
    }
}

#[test]
fn bounds_hold() {
    for d in 2..=MAX_DEGREE {
        let report = verify_bounds(d).unwrap();
        assert_eq!(report.max_dimension, 4 * d as u64 + 6);
    }
}
