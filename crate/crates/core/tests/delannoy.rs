use std::collections::BTreeSet;

use erbalg::delannoy::{
    coefficient_bridge, count_d, count_e, d_total, e_table, e_total, enumerate_colored, enumerate_colored_bounded,
    gf_coefficients, render_bfile, render_triangle, triangle, unit_weight_algebra, Color, DelannoyPath, GfKind, Step,
};
use erbalg::Error;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

/// Every step string over `R, U, D1, D2` that ends at `(m, n)`.
fn brute_force(m: u32, n: u32) -> Vec<Vec<&'static str>> {
    if m == 0 && n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut extend = |first: &'static str, rest: Vec<Vec<&'static str>>| {
        for mut tail in rest {
            tail.insert(0, first);
            out.push(tail);
        }
    };
    if m > 0 {
        extend("R", brute_force(m - 1, n));
    }
    if n > 0 {
        extend("U", brute_force(m, n - 1));
    }
    if m > 0 && n > 0 {
        extend("D1", brute_force(m - 1, n - 1));
        extend("D2", brute_force(m - 1, n - 1));
    }
    out
}

/// Coefficients of `sum_k (x + y + c xy)^k` up to total order `order`.
fn series_oracle(c: i64, order: usize) -> Vec<Vec<i64>> {
    let mut total = vec![vec![0i64; order + 1]; order + 1];
    let mut power = vec![vec![0i64; order + 1]; order + 1];
    power[0][0] = 1;
    for _ in 0..=order {
        for i in 0..=order {
            for j in 0..=order - i {
                total[i][j] += power[i][j];
            }
        }
        let mut next = vec![vec![0i64; order + 1]; order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                let p = power[i][j];
                if p == 0 {
                    continue;
                }
                if i < order {
                    next[i + 1][j] += p;
                }
                if i + j < order {
                    next[i][j + 1] += p;
                }
                if i + j + 2 <= order {
                    next[i + 1][j + 1] += c * p;
                }
            }
        }
        power = next;
    }
    total
}

#[test]
fn count_examples() {
    let n = |v: u32| BigUint::from(v);
    assert_eq!(count_d(1, 1, 1).unwrap(), n(1));
    assert_eq!(count_d(2, 2, 1).unwrap(), n(6));
    assert_eq!(count_d(4, 3, 0).unwrap(), n(35));
    assert_eq!(count_e(1, 1, 1).unwrap(), n(2));
    assert_eq!(count_e(1, 2, 1).unwrap(), n(4));
    assert_eq!(count_e(5, 2, 0).unwrap(), n(21));
    assert!(matches!(count_d(1, 2, 2), Err(Error::DiagonalOutOfRange { .. })));
    assert!(matches!(count_e(3, 0, 1), Err(Error::DiagonalOutOfRange { .. })));
}

#[test]
fn totals() {
    assert_eq!(e_total(1, 1), BigUint::from(4u32));
    assert_eq!(e_total(2, 2), BigUint::from(22u32));
    assert_eq!(e_total(2, 3), BigUint::from(46u32));
    assert_eq!(e_total(0, 9), BigUint::from(1u32));
    assert_eq!(d_total(2, 2), BigUint::from(13u32));
}

#[test]
fn enumeration_examples() {
    let show = |m, n| -> Vec<String> { enumerate_colored(m, n).unwrap().iter().map(|p| p.to_string()).collect() };
    let p11 = show(1, 1);
    assert_eq!(p11.len(), 4);
    let set: BTreeSet<&str> = p11.iter().map(String::as_str).collect();
    assert_eq!(set, BTreeSet::from(["R U", "U R", "D1", "D2"]));
    assert_eq!(show(1, 2).len(), 7);
    assert_eq!(show(0, 3), vec!["U U U"]);
    assert!(matches!(enumerate_colored(8, 7), Err(Error::EnumerationBound { .. })));
    assert_eq!(
        BigUint::from(enumerate_colored_bounded(8, 7, 15).unwrap().len()),
        e_total(8, 7)
    );
}

#[test]
fn enumeration_matches_brute_force() {
    for m in 0..=6 {
        for n in 0..=(8 - m) {
            let got: Vec<String> = enumerate_colored(m, n).unwrap().iter().map(|p| p.to_string()).collect();
            let mut sorted = got.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), got.len(), "duplicates at ({m},{n})");
            let mut oracle: Vec<String> = brute_force(m, n).into_iter().map(|s| s.join(" ")).collect();
            oracle.sort();
            assert_eq!(sorted, oracle, "at ({m},{n})");
        }
    }
}

#[test]
fn enumeration_by_diagonals_and_colors() {
    for m in 0..=10u32 {
        for n in 0..=(10 - m) {
            let paths = enumerate_colored(m, n).unwrap();
            for r in 0..=m.min(n) {
                let count = paths.iter().filter(|p| p.diagonals() == r as usize).count();
                assert_eq!(BigUint::from(count), count_e(m, n, r).unwrap(), "E({m},{n},{r})");
            }
            let plain: BTreeSet<DelannoyPath> = paths.iter().map(DelannoyPath::uncolored).collect();
            assert_eq!(BigUint::from(plain.len()), d_total(m, n));
        }
    }
}

#[test]
fn steps_sum_to_endpoint() {
    let p = DelannoyPath::new(vec![Step::Right, Step::Diag(Color::Dashed), Step::Up]);
    assert_eq!(p.endpoint(), (2, 2));
    assert_eq!(p.diagonals(), 1);
    assert_eq!(p.to_string(), "R D2 U");
}

#[test]
fn triangle_rows() {
    let text = render_triangle(&triangle(5));
    assert_eq!(
        text,
        "1\n1, 1\n1, 4, 1\n1, 7, 7, 1\n1, 10, 22, 10, 1\n1, 13, 46, 46, 13, 1\n"
    );
    let bfile = render_bfile(&triangle(2));
    assert_eq!(bfile, "0 1\n1 1\n2 1\n3 1\n4 4\n5 1\n");
}

#[test]
fn recurrence_and_symmetry() {
    let t = e_table(30);
    for m in 0..=30 {
        assert_eq!(t[m][0], BigUint::from(1u32));
        assert_eq!(t[0][m], BigUint::from(1u32));
        for n in 0..=30 {
            assert_eq!(t[m][n], t[n][m]);
            assert_eq!(t[m][n], e_total(m as u32, n as u32));
            if m > 0 && n > 0 {
                assert_eq!(t[m][n], &t[m - 1][n] + &t[m][n - 1] + &t[m - 1][n - 1] * 2u32);
            }
        }
    }
}

#[test]
fn generating_functions() {
    let colored = gf_coefficients(GfKind::Colored, 12);
    let plain = gf_coefficients(GfKind::Plain, 12);
    let colored_oracle = series_oracle(2, 12);
    let plain_oracle = series_oracle(1, 12);
    assert_eq!(colored[1][1], BigInt::from(4));
    for m in 0..=12 {
        assert_eq!(colored[0][m], BigInt::from(1));
        for n in 0..=(12 - m) {
            assert_eq!(colored[m][n], BigInt::from(colored_oracle[m][n]), "colored ({m},{n})");
            assert_eq!(plain[m][n], BigInt::from(plain_oracle[m][n]), "plain ({m},{n})");
            assert_eq!(colored[m][n], BigInt::from(e_total(m as u32, n as u32)));
            if m + n <= 8 {
                assert_eq!(plain[m][n], BigInt::from(d_total(m as u32, n as u32)));
            }
        }
    }
}

#[test]
fn bridge_examples() {
    let alg = unit_weight_algebra();
    let r = coefficient_bridge(&alg, 1, 1).unwrap();
    assert!(r.agrees());
    assert_eq!(r.e_total, BigUint::from(4u32));
    let r = coefficient_bridge(&alg, 1, 3).unwrap();
    assert!(r.agrees());
    assert_eq!(r.enumerated, 10);
    assert!(coefficient_bridge(&alg, 3, 3).unwrap().agrees());
}

proptest! {
    #[test]
    fn counts_decompose(m in 0u32..40, n in 0u32..40) {
        let by_r: BigUint = (0..=m.min(n)).map(|r| count_e(m, n, r).unwrap()).sum();
        prop_assert_eq!(by_r, e_total(m, n));
        let plain: BigUint = (0..=m.min(n)).map(|r| count_d(m, n, r).unwrap()).sum();
        prop_assert_eq!(plain, d_total(m, n));
        prop_assert_eq!(e_total(m, n), e_total(n, m));
    }
}
