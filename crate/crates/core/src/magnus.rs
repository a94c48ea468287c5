//! Magnus-type formulas: the closed form of `D_δ(exp l)`, its recursive
//! inverse, the explicit inverse of the Dynkin operator `D = S ∗ Y`, and
//! Bernoulli numbers.

use num_traits::Zero;

use crate::algebra::{ad_power_truncated, Algebra, DiagonalDerivation, HopfAlgebra};
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, int, one, Rational};
use crate::rota_baxter::Series;

/// Bernoulli numbers `B_0..=B_max` from `Σ_{k≤n} C(n+1, k) B_k = 0`, `B_0 = 1`
/// (so `B_1 = -1/2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(max: usize) -> Self {
        let mut values: Vec<Rational> = vec![one()];
        for n in 1..=max {
            let s: Rational = (0..n).map(|k| binomial(n + 1, k) * &values[k]).sum();
            values.push(-s / int(n as i64 + 1));
        }
        Self { values }
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

pub fn bernoulli(n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("Bernoulli index {n} is negative")));
    }
    Ok(BernoulliTable::new(n as usize).values[n as usize].clone())
}

/// An ordered sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `k_1 (k_1 + k_2) ⋯ (k_1 + … + k_l)`
    pub fn partial_sum_product(&self) -> Rational {
        let mut acc = 0;
        self.0
            .iter()
            .map(|k| {
                acc += k;
                int(acc as i64)
            })
            .product()
    }
}

/// All compositions of `n`, enumerated by recursion on the first part.
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition(Vec::new())];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut parts = Vec::with_capacity(rest.0.len() + 1);
            parts.push(first);
            parts.extend(rest.0);
            out.push(Composition(parts));
        }
    }
    out
}

fn check_lie<H: HopfAlgebra>(alg: &H, l: &H::Elem) -> Result<()> {
    if !l.constant_term().is_zero() || !alg.is_primitive(l) {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// `D_δ(a) = (S ∗ δ)(a)` through the coproduct.
pub fn log_derivative<H: HopfAlgebra>(alg: &H, delta: &DiagonalDerivation, a: &H::Elem) -> H::Elem {
    let s = |k: &H::Key| alg.antipode_key(k);
    let d = |k: &H::Key| delta.apply(&H::Elem::basis(k.clone()));
    alg.convolve_apply(&s, &d, a)
}

/// `Σ_{i≥0} (-ad_l)^i (v) / (i+1)!`, truncated at degree `max_degree`.
pub fn magnus_operator<A: Algebra>(alg: &A, l: &A::Elem, v: &A::Elem, max_degree: usize) -> A::Elem {
    let neg_l = alg.neg(l);
    let mut out = alg.zero();
    for i in 0..max_degree {
        let term = ad_power_truncated(alg, &neg_l, i, v, max_degree);
        if alg.is_zero(&term) {
            break;
        }
        out = alg.add(&out, &alg.scale(&term, &(one() / factorial(i + 1))));
    }
    out
}

/// `Σ_{n≥0} B_n/n! (-ad_l)^n (h)`: the series of `u/(e^u - 1)` at `u = -ad_l`.
pub fn bernoulli_operator<A: Algebra>(alg: &A, l: &A::Elem, h: &A::Elem, max_degree: usize) -> A::Elem {
    let table = BernoulliTable::new(max_degree);
    let neg_l = alg.neg(l);
    let mut out = alg.zero();
    for n in 0..max_degree {
        let b = &table.values[n];
        if b.is_zero() {
            continue;
        }
        let term = ad_power_truncated(alg, &neg_l, n, h, max_degree);
        if alg.is_zero(&term) {
            break;
        }
        out = alg.add(&out, &alg.scale(&term, &(b / factorial(n))));
    }
    out
}

/// `D_δ(exp l) = ((exp(-ad_l) - 1)/(-ad_l)) δ(l)` to degree `max_degree`.
pub fn magnus_forward<H: HopfAlgebra>(
    alg: &H,
    delta: &DiagonalDerivation,
    l: &H::Elem,
    max_degree: usize,
) -> Result<H::Elem> {
    check_lie(alg, l)?;
    let l = l.truncated(max_degree);
    Ok(magnus_operator(alg, &l, &delta.apply(&l), max_degree))
}

/// The unique Lie `l` with `magnus_forward(δ, l) = h` to degree `max_degree`,
/// from `l = δ⁻¹(Σ B_n/n! (-ad_l)^n h)` solved degree by degree.
pub fn magnus_solve<H: HopfAlgebra>(
    alg: &H,
    delta: &DiagonalDerivation,
    h: &H::Elem,
    max_degree: usize,
) -> Result<H::Elem> {
    delta.check_invertible(alg, max_degree)?;
    check_lie(alg, h)?;
    let h = h.truncated(max_degree);
    let mut l = alg.zero();
    for k in 1..=max_degree {
        // the degree-k part only involves components of l below degree k
        let rhs = bernoulli_operator(alg, &l, &h, k).homogeneous(k);
        l += &delta.apply_inverse(&rhs)?;
    }
    Ok(l)
}

/// `D⁻¹(l) = 1 + Σ_n Σ_{k_1+…+k_r=n} l_{k_1}⋯l_{k_r} / (k_1(k_1+k_2)⋯(k_1+…+k_r))`.
pub fn dynkin_inverse<H: HopfAlgebra>(alg: &H, l: &H::Elem, max_degree: usize) -> Result<Series<H::Elem>> {
    check_lie(alg, l)?;
    let parts: Vec<H::Elem> = (0..=max_degree).map(|k| l.homogeneous(k)).collect();
    let mut out = alg.one();
    for n in 1..=max_degree {
        for c in compositions(n) {
            if c.parts().iter().any(|&k| parts[k].is_zero()) {
                continue;
            }
            let product = c
                .parts()
                .iter()
                .fold(alg.one(), |acc, &k| alg.mul_truncated(&acc, &parts[k], max_degree));
            out.add_scaled(&product, &(one() / c.partial_sum_product()));
        }
    }
    Series::from_element(alg, &out, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{exp_series, inverse_series};
    use crate::enveloping::{witt, PbwAlgebra, WittDerivation};
    use crate::lincomb::LinComb;
    use crate::random::Sampler;
    use crate::rational::rat;
    use crate::tensor::{bracket, letter, word, TensorAlgebra, TensorElt};

    const A: u8 = 0;
    const B: u8 = 1;

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0).unwrap(), int(1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(3).unwrap(), int(0));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert!(bernoulli(-1).is_err());
        let t = BernoulliTable::new(20);
        assert!((1..10).all(|k| t.get(2 * k + 1).unwrap().is_zero()));
    }

    #[test]
    fn bernoulli_generating_function() {
        // (Σ B_n u^n/n!) · (Σ u^m/(m+1)!) = 1 as formal series in u
        let t = BernoulliTable::new(12);
        for n in 0..=12 {
            let c: Rational = (0..=n)
                .map(|k| t.get(k).unwrap() / factorial(k) / factorial(n - k + 1))
                .sum();
            assert_eq!(c, if n == 0 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn compositions_enumerate_all() {
        assert_eq!(compositions(3).len(), 4);
        assert_eq!(compositions(6).len(), 32);
        assert_eq!(Composition(vec![1, 2, 1]).partial_sum_product(), int(1 * 3 * 4));
    }

    #[test]
    fn magnus_forward_examples() {
        let t = TensorAlgebra::new(2).unwrap();
        let y = DiagonalDerivation::Graduation;
        assert_eq!(magnus_forward(&t, &y, &letter(A), 5).unwrap(), letter(A));
        let ab = bracket(&letter(A), &letter(B));
        assert_eq!(magnus_forward(&t, &y, &ab, 5).unwrap(), ab.scaled(&int(2)));
        assert_eq!(magnus_forward(&t, &y, &word(&[A, B]), 3), Err(Error::NotPrimitive));
    }

    #[test]
    fn magnus_forward_matches_convolution() {
        let t = TensorAlgebra::new(2).unwrap();
        let y = DiagonalDerivation::Graduation;
        let ab = bracket(&letter(A), &letter(B));
        let l = &letter(A) + &ab;
        let g = exp_series(&t, &l, 5);
        let conv = log_derivative(&t, &y, &g).truncated(5);
        assert_eq!(magnus_forward(&t, &y, &l, 5).unwrap(), conv);
        // δ(l) − ½[l, δ(l)] in degrees ≤ 3
        let dl = y.apply(&l);
        let low = (&dl - &bracket(&l, &dl).scaled(&rat(1, 2))).truncated(3);
        assert_eq!(magnus_forward(&t, &y, &l, 5).unwrap().truncated(3), low);
    }

    #[test]
    fn magnus_solve_examples() {
        let t = TensorAlgebra::new(2).unwrap();
        let y = DiagonalDerivation::Graduation;
        assert_eq!(magnus_solve(&t, &y, &letter(A), 5).unwrap(), letter(A));
        assert!(magnus_solve(&t, &y, &TensorElt::zero(), 5).unwrap().is_zero());
        let mut s = Sampler::new(3);
        for _ in 0..5 {
            let h = s.lie_element(2, 4);
            let l = magnus_solve(&t, &y, &h, 4).unwrap();
            assert_eq!(magnus_forward(&t, &y, &l, 4).unwrap(), h);
        }
        let singular = DiagonalDerivation::weights([int(1), int(-1)]);
        assert_eq!(
            magnus_solve(&t, &singular, &letter(A), 3),
            Err(Error::NotInvertible { degree: 2 })
        );
        assert_eq!(magnus_solve(&t, &y, &word(&[A, A]), 3), Err(Error::NotPrimitive));
    }

    #[test]
    fn magnus_solve_on_witt() {
        let u = PbwAlgebra::new(witt(5, WittDerivation::Graduation).unwrap());
        let y = DiagonalDerivation::Graduation;
        let mut s = Sampler::new(4);
        for _ in 0..5 {
            let h = s.pbw_lie(&u, 5);
            let l = magnus_solve(&u, &y, &h, 5).unwrap();
            assert!(u.is_primitive(&l));
            assert_eq!(magnus_forward(&u, &y, &l, 5).unwrap(), h);
        }
    }

    #[test]
    fn dynkin_inverse_examples() {
        let t = TensorAlgebra::new(2).unwrap();
        let a = letter(A);
        let g = dynkin_inverse(&t, &a, 4).unwrap();
        assert_eq!(g.element(&t), exp_series(&t, &a, 4));
        let ab = bracket(&letter(A), &letter(B));
        let g = dynkin_inverse(&t, &(&a + &ab), 3).unwrap();
        let expected = ab.scaled(&rat(1, 2)) + word(&[A, A]).scaled(&rat(1, 2));
        assert_eq!(g.component(2).unwrap(), &expected);
        assert_eq!(dynkin_inverse(&t, &TensorElt::zero(), 3).unwrap().element(&t), LinComb::unit());
        assert!(dynkin_inverse(&t, &word(&[A, B]), 3).is_err());
    }

    #[test]
    fn dynkin_inverse_is_grouplike_with_logderivative_l() {
        let t = TensorAlgebra::new(2).unwrap();
        let y = DiagonalDerivation::Graduation;
        let mut s = Sampler::new(5);
        for _ in 0..5 {
            let l = s.lie_element(2, 4);
            let g = dynkin_inverse(&t, &l, 5).unwrap().element(&t);
            assert!(t.is_grouplike(&g, 5));
            assert_eq!(log_derivative(&t, &y, &g).truncated(5), l.truncated(5));
            // and D(g) = g⁻¹ Y(g) since g is group-like
            let direct = t.mul_truncated(&inverse_series(&t, &g, 5), &y.apply(&g), 5);
            assert_eq!(direct, l.truncated(5));
        }
    }
}
