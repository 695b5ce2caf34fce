//! Seeded invariants and independent oracles.

use defq::algebra::{
    BaseAlgebra, CoefficientField, Matrix, MatrixAlgebra, Polynomial, PolynomialAlgebra, Scalar, ScalarAlgebra,
};
use defq::hensel;
use defq::sample::{RandomElement, Sampler};
use defq::series::{self, TruncatedSeries};
use defq::star::{moyal_phi, GaugeTwist, StarProduct};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q() -> CoefficientField {
    CoefficientField::rationals()
}

fn poly(dof: usize) -> PolynomialAlgebra {
    PolynomialAlgebra::new(q(), dof).unwrap()
}

fn m2() -> MatrixAlgebra<ScalarAlgebra> {
    MatrixAlgebra::new(ScalarAlgebra::new(q()), 2).unwrap()
}

/// `φ_p` as `1/(p! 2^p)` times the sum over all index sequences
/// `(i_1..i_p, j_1..j_p)` of `Π^{i_1 j_1}⋯Π^{i_p j_p} ∂_{i_1..i_p} f ∂_{j_1..j_p} g`.
fn moyal_by_index_sequences(alg: &PolynomialAlgebra, p: usize, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = alg.dof();
    // nonzero entries of the symplectic tensor: Π^{x_k p_k} = 1, Π^{p_k x_k} = -1
    let pairs: Vec<(usize, usize, i64)> = (0..n)
        .flat_map(|k| [(k, n + k, 1), (n + k, k, -1)])
        .collect();
    let mut acc = alg.zero();
    let mut idx = vec![0usize; p];
    loop {
        let mut left = vec![0u32; 2 * n];
        let mut right = vec![0u32; 2 * n];
        let mut sign = 1i64;
        for &t in &idx {
            let (i, j, s) = pairs[t];
            left[i] += 1;
            right[j] += 1;
            sign *= s;
        }
        let term = alg.mul(&alg.diff_multi(f, &left), &alg.diff_multi(g, &right));
        acc = alg.add(&acc, &alg.scale(&q().from_int(sign), &term));
        // next index sequence in base `pairs.len()`
        let mut k = 0;
        while k < p {
            idx[k] += 1;
            if idx[k] < pairs.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == p {
            break;
        }
    }
    let denom: BigInt = (1..=p as u64).map(BigInt::from).product::<BigInt>() * BigInt::from(2u32).pow(p as u32);
    let c = q().from_rational(&BigRational::new(BigInt::from(1), denom)).unwrap();
    alg.scale(&c, &acc)
}

/// Literal triple loop over `j, l, p < N` with `j + l + p = q`.
fn naive_star<R: BaseAlgebra>(
    s: &StarProduct<R>,
    a: &TruncatedSeries<R::Elem>,
    b: &TruncatedSeries<R::Elem>,
) -> TruncatedSeries<R::Elem> {
    let base = s.base();
    let n = a.precision();
    let mut out = vec![base.zero(); n];
    for (qq, slot) in out.iter_mut().enumerate() {
        for j in 0..n {
            for l in 0..n {
                for p in 0..n {
                    if j + l + p == qq {
                        *slot = base.add(slot, &s.phi(p, a.coeff(j), b.coeff(l)).unwrap());
                    }
                }
            }
        }
    }
    TruncatedSeries::new(out).unwrap()
}

/// `φ_p(a, b) = Σ_{m+q=p} S_m(c_q)` through the recursive `S_m`.
fn gauge_phi_by_inverse_components<E: Clone + PartialEq + Send + Sync + 'static, R: BaseAlgebra<Elem = E>>(
    t: &GaugeTwist<E>,
    base: &R,
    p: usize,
    a: &E,
    b: &E,
) -> E {
    let comp = |k: usize, x: &E| if k == 0 { x.clone() } else { t.component(base, k, x) };
    let mut acc = base.zero();
    for qq in 0..=p {
        let mut c = base.zero();
        for k in 0..=qq {
            c = base.add(&c, &base.mul(&comp(k, a), &comp(qq - k, b)));
        }
        acc = base.add(&acc, &t.inverse_component(base, p - qq, &c));
    }
    acc
}

fn random_m2_twist(seed: u64, order: usize) -> (GaugeTwist<Matrix<Scalar>>, StarProduct<MatrixAlgebra<ScalarAlgebra>>) {
    let alg = m2();
    let t = Sampler::seeded(seed).matrix_twist(&alg, order).unwrap();
    (t.clone(), StarProduct::gauge_twist(alg, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>(), dof in 1usize..=2) {
        let alg = poly(dof);
        let mut s = Sampler::seeded(seed);
        let (f, g, h) = (s.polynomial(&alg), s.polynomial(&alg), s.polynomial(&alg));
        prop_assert_eq!(alg.mul(&alg.mul(&f, &g), &h), alg.mul(&f, &alg.mul(&g, &h)));
        prop_assert_eq!(alg.mul(&f, &alg.add(&g, &h)), alg.add(&alg.mul(&f, &g), &alg.mul(&f, &h)));
        prop_assert_eq!(alg.mul(&f, &g), alg.mul(&g, &f));
        prop_assert_eq!(alg.mul(&f, &alg.one()), f.clone());
        prop_assert!(alg.is_zero(&alg.sub(&f, &f)));
    }

    #[test]
    fn poisson_bracket_jacobi(seed in any::<u64>(), dof in 1usize..=2) {
        let alg = poly(dof);
        let mut s = Sampler::seeded(seed);
        let (f, g, h) = (s.polynomial(&alg), s.polynomial(&alg), s.polynomial(&alg));
        let pb = |a: &Polynomial, b: &Polynomial| alg.poisson_bracket(a, b).unwrap();
        let cyc = alg.add(&alg.add(&pb(&f, &pb(&g, &h)), &pb(&g, &pb(&h, &f))), &pb(&h, &pb(&f, &g)));
        prop_assert!(cyc.is_zero());
    }

    #[test]
    fn moyal_matches_index_sequence_sum(seed in any::<u64>(), dof in 1usize..=2, p in 0usize..=3) {
        let alg = poly(dof);
        let mut s = Sampler::seeded(seed).with_max_degree(3).with_max_terms(3);
        let (f, g) = (s.polynomial(&alg), s.polynomial(&alg));
        let fast = moyal_phi(&alg, p, &f, &g).unwrap();
        prop_assert_eq!(&fast, &moyal_by_index_sequences(&alg, p, &f, &g));
        // φ_p(f, g) = (−1)^p φ_p(g, f)
        let swapped = moyal_phi(&alg, p, &g, &f).unwrap();
        let expected = if p % 2 == 0 { swapped } else { alg.neg(&swapped) };
        prop_assert_eq!(fast, expected);
    }

    #[test]
    fn star_mul_matches_naive_triple_loop(seed in any::<u64>()) {
        let n = 4;
        let alg = poly(1);
        let moyal = StarProduct::moyal(alg.clone());
        let mut s = Sampler::seeded(seed).with_max_degree(3).with_max_terms(2);
        let (a, b) = (s.series(&alg, n), s.series(&alg, n));
        prop_assert_eq!(moyal.star_mul(&a, &b).unwrap(), naive_star(&moyal, &a, &b));

        let (_, twisted) = random_m2_twist(seed, 2);
        let (a, b) = (s.series(&m2(), n), s.series(&m2(), n));
        prop_assert_eq!(twisted.star_mul(&a, &b).unwrap(), naive_star(&twisted, &a, &b));
    }

    #[test]
    fn gauge_cochains_match_recursive_inverse(seed in any::<u64>(), p in 0usize..=5) {
        let (t, star) = random_m2_twist(seed, 3);
        let alg = m2();
        let mut s = Sampler::seeded(seed ^ 1);
        let (a, b) = (s.element(&alg), s.element(&alg));
        prop_assert_eq!(star.phi(p, &a, &b).unwrap(), gauge_phi_by_inverse_components(&t, &alg, p, &a, &b));
    }

    #[test]
    fn classical_limit_is_multiplicative(seed in any::<u64>()) {
        let n = 3;
        let alg = poly(1);
        let moyal = StarProduct::moyal(alg.clone());
        let mut s = Sampler::seeded(seed);
        let (a, b) = (s.series(&alg, n), s.series(&alg, n));
        let ab = moyal.star_mul(&a, &b).unwrap();
        prop_assert_eq!(ab.classical_limit(), &alg.mul(a.classical_limit(), b.classical_limit()));
    }

    #[test]
    fn cochains_are_bilinear(seed in any::<u64>(), p in 1usize..=3) {
        let alg = poly(1);
        let moyal = StarProduct::moyal(alg.clone());
        let mut s = Sampler::seeded(seed);
        let (a, a2, b) = (s.polynomial(&alg), s.polynomial(&alg), s.polynomial(&alg));
        let c = s.scalar(&q());
        prop_assert!(moyal.is_bilinear_on(p, &a, &a2, &b, &c).unwrap());

        let (_, twisted) = random_m2_twist(seed, 2);
        let (x, x2, y) = (s.element(&m2()), s.element(&m2()), s.element(&m2()));
        prop_assert!(twisted.is_bilinear_on(p, &x, &x2, &y, &c).unwrap());
    }

    #[test]
    fn double_inverse_is_identity(seed in any::<u64>()) {
        let n = 5;
        let (_, star) = random_m2_twist(seed, 2);
        let alg = m2();
        let mut s = Sampler::seeded(seed);
        let a0 = s.invertible_matrix(&alg);
        let a = s.series_over(&alg, a0, n);
        let b = hensel::star_invert(&star, &a).unwrap();
        prop_assert_eq!(hensel::star_invert(&star, &b).unwrap(), a.clone());
        prop_assert_eq!(hensel::star_invert_left(&star, &a).unwrap(), b);
    }

    #[test]
    fn one_plus_radical_is_invertible(seed in any::<u64>()) {
        let n = 4;
        let alg = MatrixAlgebra::new(poly(1), 2).unwrap();
        let star = StarProduct::moyal(poly(1)).matrix_lift(2).unwrap();
        let mut s = Sampler::seeded(seed).with_max_degree(2).with_max_terms(2);
        let a = s.series_over(&alg, alg.zero(), n);
        let u = series::add(&alg, &TruncatedSeries::one(&alg, n), &a).unwrap();
        let cert = hensel::certify_inverse(&star, &u).unwrap();
        prop_assert!(cert.is_valid(&alg));
    }

    #[test]
    fn lifts_preserve_classical_trace(seed in any::<u64>()) {
        let (_, star) = random_m2_twist(seed, 2);
        let alg = m2();
        let corpus = defq::k0lab::default_corpus(q(), 2, 2, seed).unwrap();
        for e in &corpus {
            let cert = hensel::lift_idempotent(&star, e, 4).unwrap();
            prop_assert!(cert.is_valid(&alg));
            prop_assert_eq!(alg.trace(cert.lift.classical_limit()), alg.trace(e));
        }
    }
}

#[test]
fn random_elements_respect_the_base() {
    let alg = MatrixAlgebra::new(poly(2), 3).unwrap();
    let mut s = Sampler::seeded(4);
    let m = alg.random_element(&mut s);
    assert_eq!(m.dim(), 3);
    assert!(m.entries().iter().all(|f| f.dof() == 2));
}
