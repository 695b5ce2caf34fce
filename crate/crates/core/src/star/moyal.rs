use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{BaseAlgebra, Polynomial, PolynomialAlgebra};
use crate::error::{Error, Result};

/// All exponent vectors of length `len` with entries summing to `total`.
fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Order-`p` Moyal cochain
///
/// ```text
/// φ_p(f, g) = 2^{-p} Σ_{|α|+|β|=p} (-1)^{|β|} / (α! β!) · (∂_x^α ∂_p^β f)(∂_p^α ∂_x^β g)
/// ```
///
/// which is `m ∘ P^p / (p! 2^p)` for the Poisson bivector
/// `P = Σ_i ∂_{x_i} ⊗ ∂_{p_i} − ∂_{p_i} ⊗ ∂_{x_i}`, expanded multinomially.
/// `φ_0` is the ordinary product.
pub fn moyal_phi(alg: &PolynomialAlgebra, p: usize, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if p == 0 {
        return alg.poly_mul(f, g);
    }
    let field = alg.field();
    let char = field.characteristic();
    if char == 2 || (char != 0 && p as u64 >= char) {
        return Err(Error::MissingCochain { order: p });
    }
    // each φ_p removes p derivatives from each side
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Ok(alg.zero());
    };
    let p32 = p as u32;
    if df < p32 || dg < p32 {
        return Ok(alg.zero());
    }
    let n = alg.dof();
    let two_p = BigInt::from(2u32).pow(p32);
    let mut acc = alg.zero();
    for ab in compositions(p32, 2 * n) {
        let (alpha, beta) = ab.split_at(n);
        // ∂_x^α ∂_p^β on f, ∂_p^α ∂_x^β on g
        let left_idx: Vec<u32> = alpha.iter().chain(beta).copied().collect();
        let right_idx: Vec<u32> = beta.iter().chain(alpha).copied().collect();
        let lf = alg.diff_multi(f, &left_idx);
        if lf.is_zero() {
            continue;
        }
        let rg = alg.diff_multi(g, &right_idx);
        if rg.is_zero() {
            continue;
        }
        let denom: BigInt = ab.iter().map(|&k| factorial(k)).product::<BigInt>() * &two_p;
        let sign = if beta.iter().sum::<u32>() % 2 == 0 { 1 } else { -1 };
        let c = field.from_rational(&BigRational::new(BigInt::from(sign), denom))?;
        acc = alg.add(&acc, &alg.scale(&c, &alg.poly_mul(&lf, &rg)?));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CoefficientField;

    fn alg() -> PolynomialAlgebra {
        PolynomialAlgebra::new(CoefficientField::rationals(), 1).unwrap()
    }

    #[test]
    fn first_order_on_canonical_pair() {
        let a = alg();
        assert_eq!(moyal_phi(&a, 1, &a.x(1), &a.p(1)).unwrap(), a.parse("1/2").unwrap());
        assert_eq!(moyal_phi(&a, 1, &a.p(1), &a.x(1)).unwrap(), a.parse("-1/2").unwrap());
    }

    #[test]
    fn second_order_on_squares() {
        let a = alg();
        let x2 = a.parse("x^2").unwrap();
        let p2 = a.parse("p^2").unwrap();
        assert_eq!(moyal_phi(&a, 2, &x2, &p2).unwrap(), a.parse("1/2").unwrap());
    }

    #[test]
    fn constants_are_central() {
        let a = alg();
        let f = a.parse("x^3 p - 2 p^2 + x").unwrap();
        for p in 1..5 {
            assert!(moyal_phi(&a, p, &f, &a.one()).unwrap().is_zero());
            assert!(moyal_phi(&a, p, &a.one(), &f).unwrap().is_zero());
        }
    }

    #[test]
    fn compositions_count() {
        // C(p + k - 1, k - 1)
        assert_eq!(compositions(3, 4).len(), 20);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }

    #[test]
    fn characteristic_bounds_the_order() {
        let a = PolynomialAlgebra::new(CoefficientField::prime(5).unwrap(), 1).unwrap();
        assert!(moyal_phi(&a, 4, &a.x(1), &a.p(1)).is_ok());
        assert_eq!(
            moyal_phi(&a, 5, &a.x(1), &a.p(1)),
            Err(Error::MissingCochain { order: 5 })
        );
        let a2 = PolynomialAlgebra::new(CoefficientField::prime(2).unwrap(), 1).unwrap();
        assert!(moyal_phi(&a2, 1, &a2.x(1), &a2.p(1)).is_err());
    }
}
