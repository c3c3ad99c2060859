use nilorb::exactnum::BigRat;
use nilorb::fforacle::{
    burnside_m, bruteforce_i_a, classify_orbit, classify_tuple, commutant_basis, count_irreducible,
    count_nilpotent_commutant, enumerate_gl, enumerate_nilpotent, enumerate_orbits, gl_order, jordan_matrix,
    nilcount_formula, FieldSpec, FqMatrix, MonicPoly,
};
use nilorb::partitions::{enumerate_partitions, inner_product, irr_count_at, Partition};
use nilorb::Pipeline;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const IN_GUARD: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

fn field(q: usize) -> FieldSpec {
    FieldSpec::new(q).unwrap()
}

fn int(v: BigRat) -> u128 {
    assert!(v.is_integer(), "{v} is not an integer");
    v.to_integer().try_into().unwrap()
}

#[test]
fn pipeline_matches_oracle_everywhere_in_guard() {
    for g in 1..=3 {
        let mut p = Pipeline::new(g).unwrap();
        let ms = p.compute_m(3).unwrap();
        for (n, q) in IN_GUARD {
            let f = field(q);
            let orbits = enumerate_orbits(g, n, &f).unwrap();
            let burnside = burnside_m(g, n, &f).unwrap();
            let m = int(ms[n - 1].eval(q as u64).unwrap());
            assert_eq!(burnside, m, "M g={g} n={n} q={q}");
            assert_eq!(orbits.len() as u128, m, "orbits g={g} n={n} q={q}");

            let (i, a) = bruteforce_i_a(g, n, &f).unwrap();
            assert_eq!(i as u128, int(p.compute_i(n).unwrap().eval(q as u64).unwrap()), "I g={g} n={n} q={q}");
            assert_eq!(a as u128, int(p.compute_a(n).unwrap().eval(q as u64).unwrap()), "A g={g} n={n} q={q}");
        }
    }
}

#[test]
fn one_by_one_tuples_form_a_single_orbit() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let f = field(q);
        for g in 1..=3 {
            assert_eq!(burnside_m(g, 1, &f).unwrap(), 1);
            assert_eq!(bruteforce_i_a(g, 1, &f).unwrap(), (1, 1));
        }
    }
}

#[test]
fn orbit_sizes_partition_all_tuples() {
    for g in 1..=3 {
        for (n, q) in IN_GUARD {
            let f = field(q);
            let orbits = enumerate_orbits(g, n, &f).unwrap();
            let total: u64 = orbits.iter().map(|o| o.size).sum();
            assert_eq!(total, (q as u64).pow(((n * n - n) * g) as u32));
            let order = gl_order(n, q as u64);
            assert!(orbits.iter().all(|o| order % o.size == 0));
            // representatives are sorted and each is the minimum of its orbit
            assert!(orbits.windows(2).all(|w| w[0].representative < w[1].representative));
        }
    }
}

#[test]
fn classification_is_conjugation_invariant() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for g in 1..=2 {
        for (n, q) in IN_GUARD {
            let f = field(q);
            let gl = enumerate_gl(n, &f).unwrap();
            for rec in enumerate_orbits(g, n, &f).unwrap() {
                let expected = classify_orbit(&rec);
                for _ in 0..3 {
                    let t = &gl[rng.gen_range(0..gl.len())];
                    let t_inv = t.inverse(&f).unwrap();
                    let member: Vec<FqMatrix> = rec.representative.iter().map(|m| m.conjugate_by(t, &t_inv, &f)).collect();
                    assert_eq!(classify_tuple(&member, &f).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn nilpotent_totals() {
    for q in [2, 3] {
        for n in 1..=3 {
            let count = enumerate_nilpotent(n, &field(q)).unwrap().len() as u64;
            assert_eq!(count, (q as u64).pow((n * n - n) as u32), "n={n} q={q}");
        }
    }
    for q in [4, 5, 7, 8, 9] {
        assert_eq!(enumerate_nilpotent(2, &field(q)).unwrap().len(), q * q);
    }
}

#[test]
fn nilpotent_commutant_counts() {
    let lambdas = [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![3]];
    for q in [2, 3] {
        let f = field(q);
        let linear: Vec<MonicPoly> = (0..q as u8).map(|a| MonicPoly::new(vec![a, 1])).collect();
        for l in &lambdas {
            let lambda = Partition::new(l.clone());
            for poly in &linear {
                let counted = count_nilpotent_commutant(&lambda, poly, &f).unwrap();
                assert_eq!(counted, nilcount_formula(&lambda, 1, q as u64), "{lambda:?} {poly:?} q={q}");
            }
        }
    }
    let f2 = field(2);
    let quad = MonicPoly::parse("x^2+x+1", &f2).unwrap();
    for l in [vec![1], vec![2]] {
        let lambda = Partition::new(l);
        assert_eq!(
            count_nilpotent_commutant(&lambda, &quad, &f2).unwrap(),
            nilcount_formula(&lambda, 2, 2)
        );
    }
}

#[test]
fn jordan_commutant_dimension() {
    for q in [2, 3] {
        let f = field(q);
        let x = MonicPoly::parse("x", &f).unwrap();
        for w in 1..=4 {
            for lambda in enumerate_partitions(w) {
                let dim = commutant_basis(&[jordan_matrix(&lambda, &x, &f)], &f).len();
                assert_eq!(dim, inner_product(&lambda, &lambda), "{lambda:?} q={q}");
            }
        }
    }
}

#[test]
fn irreducible_counts_by_enumeration() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let f = field(q);
        let max_d = if q <= 4 { 4 } else { 2 };
        for d in 1..=max_d {
            assert_eq!(count_irreducible(d, &f) as u64, irr_count_at(d, q as u64).unwrap(), "d={d} q={q}");
        }
    }
}
