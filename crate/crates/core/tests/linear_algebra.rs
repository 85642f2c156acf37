//! Random matrices with entries of degree at most 3, checked against direct
//! matrix identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tap_core::laurent::{gcd_q, kernel_basis_q, minors_gcd, rank_q, snf_q, LaurentPoly, PolyMatrix};
use tap_core::Budget;

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    if rng.gen_bool(0.25) {
        return LaurentPoly::zero();
    }
    let len = rng.gen_range(1..=4);
    let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
    LaurentPoly::from_ints(rng.gen_range(-1..=1), &coeffs)
}

fn random_matrix(rng: &mut ChaCha8Rng) -> PolyMatrix {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    // sometimes force a dependent row so kernels are nontrivial
    let mut m: Vec<Vec<LaurentPoly>> = (0..rows).map(|_| (0..cols).map(|_| random_poly(rng)).collect()).collect();
    if rows >= 2 && rng.gen_bool(0.4) {
        let c = random_poly(rng);
        m[rows - 1] = m[0].iter().map(|x| x * &c).collect();
    }
    PolyMatrix::from_rows(m).unwrap()
}

fn hundred() -> impl Iterator<Item = PolyMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..100).map(move |_| random_matrix(&mut rng))
}

#[test]
fn kernel_basis_spans_the_left_kernel() {
    let budget = Budget::unlimited();
    for m in hundred() {
        let k = kernel_basis_q(&m);
        let r = rank_q(&m);
        assert_eq!(r, m.rank_fraction_free(&budget).unwrap(), "{m:?}");
        assert_eq!(k.rows(), m.rows() - r, "{m:?}");
        if k.rows() > 0 {
            assert!(k.mul(&m).unwrap().is_zero(), "{m:?}");
            assert_eq!(rank_q(&k), k.rows(), "kernel rows dependent: {m:?}");
        }
    }
}

#[test]
fn snf_matches_determinantal_divisors() {
    for m in hundred() {
        let s = snf_q(&m);
        assert_eq!(s.rank, rank_q(&m));
        assert_eq!(s.factors.len(), s.rank);
        for w in s.factors.windows(2) {
            assert!(w[0].divides(&w[1]), "{m:?}: {} does not divide {}", w[0], w[1]);
        }
        // d_1 ... d_i = gcd of the i x i minors, up to a unit of Q[t^{+-1}]
        let mut prefix = LaurentPoly::one();
        for (i, d) in s.factors.iter().enumerate() {
            prefix = &prefix * d;
            let g = minors_gcd(&m, i + 1).unwrap();
            assert_eq!(prefix.monic_q(), g.monic_q(), "{m:?} size {}", i + 1);
        }
        if m.is_square() {
            let det = m.det().unwrap();
            if s.rank == m.rows() {
                assert_eq!(s.product().monic_q(), det.monic_q());
            } else {
                assert!(det.is_zero());
            }
        }
    }
}

#[test]
fn determinant_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    // large enough to go through the unit and modular paths
    for n in [2usize, 5, 9, 12] {
        let a = PolyMatrix::from_fn(n, n, |_, _| random_poly(&mut rng));
        let b = PolyMatrix::from_fn(n, n, |i, j| if i == j { LaurentPoly::monomial(1, 1) } else { random_poly(&mut rng) });
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap(), "n = {n}");
    }
}

#[test]
fn gcd_of_minors_of_a_column() {
    let p = LaurentPoly::from_ints(0, &[-1, 1]);
    let q = LaurentPoly::from_ints(0, &[1, 0, -1]);
    let m = PolyMatrix::from_rows(vec![vec![p.clone()], vec![q.clone()]]).unwrap();
    assert_eq!(minors_gcd(&m, 1).unwrap().canonical(), gcd_q(&p, &q).primitive_canonical());
}
