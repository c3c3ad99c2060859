use nilorb::exactnum::{BigInt, BigRat, PolyQ, RationalFunctionQ};
use nilorb::partitions::divisors;
use nilorb::pipeline::{verify_g1_product, verify_kwi_with};
use nilorb::{Error, Pipeline};

/// `A_2(n, q)` for n = 1..6, frozen.
const A2: [&str; 6] = [
    "1",
    "2q",
    "q^4 + 3q^2 + 2q",
    "q^9 + q^7 + q^6 + 4q^5 + 2q^4 + 7q^3 + 4q^2 + 2q",
    "q^16 + q^14 + q^13 + 2q^12 + 2q^11 + 4q^10 + 4q^9 + 7q^8 + 8q^7 + 13q^6 + 13q^5 + 16q^4 + 14q^3 + 7q^2 + 2q",
    "q^25 + q^23 + q^22 + 2q^21 + 2q^20 + 4q^19 + 3q^18 + 7q^17 + 7q^16 + 10q^15 + 11q^14 + 19q^13 + 17q^12 \
     + 28q^11 + 29q^10 + 39q^9 + 40q^8 + 53q^7 + 48q^6 + 52q^5 + 40q^4 + 25q^3 + 8q^2 + 2q",
];

fn ints(c: &[i64]) -> PolyQ {
    PolyQ::from_ints(c)
}

/// Partition numbers from Euler's pentagonal recurrence.
fn partition_numbers(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p
}

#[test]
fn a2_golden_polynomials() {
    let mut p = Pipeline::new(2).unwrap();
    for (n, want) in A2.iter().enumerate() {
        assert_eq!(p.compute_a(n + 1).unwrap().to_pretty(), *want, "A_2({})", n + 1);
    }
}

#[test]
fn g1_degenerates_to_partition_counts() {
    let mut p = Pipeline::new(1).unwrap();
    for n in 1..=10 {
        assert_eq!(p.compute_a(n).unwrap().poly().unwrap(), &PolyQ::one(), "A_1({n})");
    }
    let pn = partition_numbers(8);
    for (n, m) in p.compute_m(8).unwrap().iter().enumerate() {
        assert_eq!(m.poly().unwrap(), &ints(&[pn[n + 1]]), "M_1({})", n + 1);
    }
}

#[test]
fn small_m_values() {
    let m = Pipeline::new(2).unwrap().compute_m(3).unwrap();
    assert_eq!(m[0].poly().unwrap(), &PolyQ::one());
    assert_eq!(m[1].poly().unwrap(), &ints(&[1, 2]));
    assert_eq!(m[2].poly().unwrap(), &ints(&[1, 4, 3, 0, 1]));
    assert_eq!(m[1].eval(2).unwrap(), BigRat::from_integer(5.into()));
    assert_eq!(m[1].eval(3).unwrap(), BigRat::from_integer(7.into()));
    assert_eq!(m[2].eval(2).unwrap(), BigRat::from_integer(37.into()));
}

#[test]
fn a_is_integral_within_degree_bound() {
    for g in 1..=3 {
        let mut p = Pipeline::new(g).unwrap();
        for n in 1..=6 {
            let a = p.compute_a(n).unwrap();
            let poly = a.poly().unwrap();
            assert!(poly.is_integral(), "A_{g}({n})");
            assert!(poly.degree().unwrap() <= (g - 1) * n * n, "A_{g}({n})");
        }
    }
}

#[test]
fn counts_are_nested_at_prime_powers() {
    for g in 1..=3 {
        let mut p = Pipeline::new(g).unwrap();
        let ms = p.compute_m(4).unwrap();
        for n in 1..=4 {
            let a = p.compute_a(n).unwrap();
            let i = p.compute_i(n).unwrap();
            for q in [2, 3, 4] {
                let (av, iv, mv) = (a.eval(q).unwrap(), i.eval(q).unwrap(), ms[n - 1].eval(q).unwrap());
                for v in [&av, &iv, &mv] {
                    assert!(v.is_integer() && *v > BigRat::from_integer(0.into()), "g={g} n={n} q={q}");
                }
                assert!(av <= iv && iv <= mv, "g={g} n={n} q={q}: {av} {iv} {mv}");
            }
        }
    }
}

/// `H_n = sum_{d | n} (1/d) A(n/d, q^d) / (q^d - 1)`.
fn h_from_a(a: &[PolyQ], n: usize) -> RationalFunctionQ {
    divisors(n).into_iter().fold(RationalFunctionQ::zero(), |acc, d| {
        let qd_minus_1 = &PolyQ::monomial(BigRat::from_integer(1.into()), d) - &PolyQ::one();
        let term = RationalFunctionQ::new(a[n / d - 1].adams(d), qd_minus_1)
            .unwrap()
            .scale(&BigRat::new(1.into(), (d as i64).into()));
        &acc + &term
    })
}

#[test]
fn h_to_a_to_h_roundtrip() {
    for g in 1..=3 {
        let mut p = Pipeline::new(g).unwrap();
        let a: Vec<PolyQ> = (1..=6).map(|n| p.compute_a(n).unwrap().poly().unwrap().clone()).collect();
        for n in 1..=6 {
            assert_eq!(h_from_a(&a, n), p.h(n).unwrap().value, "g={g} n={n}");
        }
    }
}

#[test]
fn identities_hold() {
    for g in 1..=3 {
        assert!(Pipeline::new(g).unwrap().verify_m_routes(6).unwrap().passed, "routes g={g}");
    }
    assert!(Pipeline::new(2).unwrap().verify_kwi(4, 12).unwrap().passed);
    assert!(Pipeline::new(3).unwrap().verify_kwi(3, 10).unwrap().passed);
    assert!(Pipeline::new(1).unwrap().verify_kwi(5, 8).unwrap().passed);
    assert!(verify_g1_product(6, 10).unwrap().passed);
}

#[test]
fn perturbed_exponents_fail_at_the_perturbed_place() {
    let mut p = Pipeline::new(2).unwrap();
    let mut a: Vec<Vec<BigInt>> = (1..=4).map(|n| p.compute_a(n).unwrap().a_coefficients().unwrap()).collect();
    a[2][2] += 1;
    let r = verify_kwi_with(&p.p_series(4), &a, 2, 12, "kwi");
    assert!(!r.passed);
    let m = r.mismatch.unwrap();
    assert_eq!((m.x_degree, m.q_degree), (3, Some(2)));
}

#[test]
fn scan_reports() {
    assert!(Pipeline::new(2).unwrap().conjecture_scan(6).unwrap().negatives.is_empty());
    let r = Pipeline::new(3).unwrap().conjecture_scan(3).unwrap();
    assert_eq!(r.polynomials.len(), 3);
}

#[test]
fn invalid_arguments() {
    assert!(matches!(Pipeline::new(0), Err(Error::InvalidArgument(_))));
    let mut p = Pipeline::new(2).unwrap();
    assert!(matches!(p.compute_a(0), Err(Error::InvalidArgument(_))));
    assert!(matches!(p.verify_kwi(2, 0), Err(Error::InvalidArgument(_))));
}
