use ybe_core::brace::simple_nl_check;
use ybe_core::FinSolution;

fn perms3() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

/// Every non-degenerate solution on three points, by exhaustion over the 6^6 row choices.
fn all_size3() -> Vec<FinSolution> {
    let p = perms3();
    let mut out = Vec::new();
    for l in 0..216 {
        let lam: Vec<usize> = [l % 6, l / 6 % 6, l / 36].iter().flat_map(|&i| p[i].clone()).collect();
        for r in 0..216 {
            let rho: Vec<usize> = [r % 6, r / 6 % 6, r / 36].iter().flat_map(|&i| p[i].clone()).collect();
            if let Ok(s) = FinSolution::from_flat(3, lam.clone(), rho) {
                out.push(s);
            }
        }
    }
    out
}

#[test]
fn criterion_agrees_with_bruteforce_on_three_points() {
    let sols = all_size3();
    // independent count by direct enumeration of the braid relation
    assert_eq!(sols.len(), 66);
    let mut checked = 0;
    for s in &sols {
        let report = simple_nl_check(s).unwrap();
        assert_eq!(report.verdict, s.is_simple_bruteforce(), "{s:?} {report:?}");
        if report.applies {
            checked += 1;
        }
    }
    assert!(checked > 0);
    println!("{} solutions, {} outside the Lyubashenko class", sols.len(), checked);
}
