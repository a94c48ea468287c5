//! Graded associative and Hopf algebra interfaces shared by every carrier,
//! together with the series calculus (exp, log, inverse, ad) built on them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{Basis, LinComb, Monomial};
use crate::rational::{int, Rational};

/// A graded associative unital algebra over ℚ, viewed as a context object:
/// elements are plain values and every operation goes through the algebra.
pub trait Algebra {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn truncate(&self, a: &Self::Elem, max_degree: usize) -> Self::Elem;
    fn homogeneous(&self, a: &Self::Elem, degree: usize) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Homogeneous elements spanning (for infinite-dimensional components:
    /// sampling) the degree-`degree` component. Used to validate operators.
    fn probe_elements(&self, degree: usize) -> Vec<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &int(-1)))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(a, &int(-1))
    }

    fn mul_truncated(&self, a: &Self::Elem, b: &Self::Elem, max_degree: usize) -> Self::Elem {
        self.truncate(&self.mul(a, b), max_degree)
    }

    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A graded connected cocommutative Hopf algebra whose elements are linear
/// combinations of monomial basis keys.
pub trait HopfAlgebra: Algebra<Elem = LinComb<Self::Key>> {
    type Key: Monomial;

    fn coproduct_key(&self, key: &Self::Key) -> LinComb<(Self::Key, Self::Key)>;
    fn antipode_key(&self, key: &Self::Key) -> LinComb<Self::Key>;
    fn basis_keys(&self, degree: usize) -> Vec<Self::Key>;

    fn coproduct(&self, a: &LinComb<Self::Key>) -> LinComb<(Self::Key, Self::Key)> {
        a.map_linear(|k| self.coproduct_key(k))
    }

    fn antipode(&self, a: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        a.map_linear(|k| self.antipode_key(k))
    }

    fn counit(&self, a: &LinComb<Self::Key>) -> Rational {
        a.constant_term()
    }

    /// Componentwise product on `H ⊗ H`, truncated in total degree.
    fn tensor_mul(
        &self,
        x: &LinComb<(Self::Key, Self::Key)>,
        y: &LinComb<(Self::Key, Self::Key)>,
        max_degree: Option<usize>,
    ) -> LinComb<(Self::Key, Self::Key)> {
        x.bilinear(y, max_degree, |(a1, b1), (a2, b2)| {
            let left = self.mul(&LinComb::basis(a1.clone()), &LinComb::basis(a2.clone()));
            let right = self.mul(&LinComb::basis(b1.clone()), &LinComb::basis(b2.clone()));
            tensor(&left, &right)
        })
    }

    fn is_primitive(&self, a: &LinComb<Self::Key>) -> bool {
        let expected = tensor(a, &LinComb::unit()) + tensor(&LinComb::unit(), a);
        self.coproduct(a) == expected
    }

    /// `Δg = g ⊗ g` in every total degree `≤ max_degree`, and counit 1.
    fn is_grouplike(&self, g: &LinComb<Self::Key>, max_degree: usize) -> bool {
        if !self.counit(g).is_one() {
            return false;
        }
        let g = g.truncated(max_degree);
        let lhs = self.coproduct(&g).truncated(max_degree);
        let rhs = tensor(&g, &g).truncated(max_degree);
        lhs == rhs
    }

    /// `(f ∗ g)(a) = μ ∘ (f ⊗ g) ∘ Δ(a)`.
    fn convolve_apply(
        &self,
        f: &dyn Fn(&Self::Key) -> LinComb<Self::Key>,
        g: &dyn Fn(&Self::Key) -> LinComb<Self::Key>,
        a: &LinComb<Self::Key>,
    ) -> LinComb<Self::Key> {
        let mut out = LinComb::zero();
        for ((u, v), c) in self.coproduct(a).iter() {
            let fu = f(u);
            if fu.is_zero() {
                continue;
            }
            let gv = g(v);
            if gv.is_zero() {
                continue;
            }
            out.add_scaled(&self.mul(&fu, &gv), c);
        }
        out
    }
}

/// `a ⊗ b` as a combination of key pairs.
pub fn tensor<K: Basis>(a: &LinComb<K>, b: &LinComb<K>) -> LinComb<(K, K)> {
    a.bilinear(b, None, |x, y| LinComb::basis((x.clone(), y.clone())))
}

/// A derivation acting diagonally on monomials: each generator is an
/// eigenvector, so a monomial's eigenvalue is the sum over its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalDerivation {
    /// The graduation operator `Y`: eigenvalue = degree.
    Graduation,
    /// Eigenvalue of generator `i` is `weights[i]`.
    Weights(Vec<Rational>),
}

impl DiagonalDerivation {
    pub fn weights(weights: impl IntoIterator<Item = Rational>) -> Self {
        Self::Weights(weights.into_iter().collect())
    }

    pub fn eigenvalue<K: Monomial>(&self, key: &K) -> Rational {
        match self {
            Self::Graduation => int(key.degree() as i64),
            Self::Weights(w) => key
                .generators()
                .into_iter()
                .map(|g| w.get(g).cloned().unwrap_or_else(Rational::zero))
                .sum(),
        }
    }

    pub fn apply<K: Monomial>(&self, a: &LinComb<K>) -> LinComb<K> {
        a.iter()
            .map(|(k, c)| (k.clone(), c * self.eigenvalue(k)))
            .collect()
    }

    /// The inverse on positive degrees; fails on a zero eigenvalue. The
    /// degree-0 part of `a` is discarded.
    pub fn apply_inverse<K: Monomial>(&self, a: &LinComb<K>) -> Result<LinComb<K>> {
        let mut out = LinComb::zero();
        for (k, c) in a.iter() {
            if k.degree() == 0 {
                continue;
            }
            let ev = self.eigenvalue(k);
            if ev.is_zero() {
                return Err(Error::NotInvertible { degree: k.degree() });
            }
            out.add_term(k.clone(), c / ev);
        }
        Ok(out)
    }

    /// Checks that no monomial of degree `1..=max_degree` has eigenvalue zero.
    pub fn check_invertible<H: HopfAlgebra>(&self, algebra: &H, max_degree: usize) -> Result<()> {
        if let Self::Weights(w) = self {
            if w.iter().all(|x| x > &Rational::zero()) {
                return Ok(());
            }
        } else {
            return Ok(());
        }
        for n in 1..=max_degree {
            if algebra
                .basis_keys(n)
                .iter()
                .any(|k| self.eigenvalue(k).is_zero())
            {
                return Err(Error::NotInvertible { degree: n });
            }
        }
        Ok(())
    }
}

/// `Σ_{k≤N} l^k / k!` truncated at degree `max_degree`. `l` must have no
/// degree-0 part for the truncation to be exact.
pub fn exp_series<A: Algebra>(alg: &A, l: &A::Elem, max_degree: usize) -> A::Elem {
    let mut out = alg.one();
    let mut power = alg.one();
    for k in 1..=max_degree {
        power = alg.scale(&alg.mul_truncated(&power, l, max_degree), &Rational::new(1.into(), (k as i64).into()));
        if alg.is_zero(&power) {
            break;
        }
        out = alg.add(&out, &power);
    }
    out
}

/// `log(g) = Σ_{k≥1} (-1)^{k+1} (g-1)^k / k` truncated; `g - 1` must have no
/// degree-0 part.
pub fn log_series<A: Algebra>(alg: &A, g: &A::Elem, max_degree: usize) -> A::Elem {
    let y = alg.truncate(&alg.sub(g, &alg.one()), max_degree);
    let mut out = alg.zero();
    let mut power = alg.one();
    for k in 1..=max_degree {
        power = alg.mul_truncated(&power, &y, max_degree);
        if alg.is_zero(&power) {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = alg.add(&out, &alg.scale(&power, &Rational::new(sign.into(), (k as i64).into())));
    }
    out
}

/// Inverse of a unipotent element `g = 1 + (positive degree)`: `Σ (1-g)^k`.
pub fn inverse_series<A: Algebra>(alg: &A, g: &A::Elem, max_degree: usize) -> A::Elem {
    let y = alg.truncate(&alg.sub(&alg.one(), g), max_degree);
    let mut out = alg.one();
    let mut power = alg.one();
    for _ in 1..=max_degree {
        power = alg.mul_truncated(&power, &y, max_degree);
        if alg.is_zero(&power) {
            break;
        }
        out = alg.add(&out, &power);
    }
    out
}

/// `ad_l^k (x)` with `ad_l(x) = lx - xl`.
pub fn ad_power<A: Algebra>(alg: &A, l: &A::Elem, k: usize, x: &A::Elem) -> A::Elem {
    (0..k).fold(x.clone(), |acc, _| alg.bracket(l, &acc))
}

/// `ad_power` truncated at every step.
pub fn ad_power_truncated<A: Algebra>(
    alg: &A,
    l: &A::Elem,
    k: usize,
    x: &A::Elem,
    max_degree: usize,
) -> A::Elem {
    (0..k).fold(alg.truncate(x, max_degree), |acc, _| {
        alg.sub(
            &alg.mul_truncated(l, &acc, max_degree),
            &alg.mul_truncated(&acc, l, max_degree),
        )
    })
}

pub fn power_truncated<A: Algebra>(alg: &A, a: &A::Elem, k: usize, max_degree: usize) -> A::Elem {
    (0..k).fold(alg.one(), |acc, _| alg.mul_truncated(&acc, a, max_degree))
}

type KeyMap<K> = dyn Fn(&K) -> LinComb<K> + Send + Sync;

/// A linear endomorphism of a graded Hopf algebra given by its action on
/// basis keys, with the convolution and composition operations of `End(H)`.
#[derive(Clone)]
pub struct GradedEndo<K: Basis> {
    action: Arc<KeyMap<K>>,
    degree_shift: Option<isize>,
}

impl<K: Basis> fmt::Debug for GradedEndo<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedEndo")
            .field("degree_shift", &self.degree_shift)
            .finish_non_exhaustive()
    }
}

impl<K: Basis + 'static> GradedEndo<K> {
    pub fn new(action: impl Fn(&K) -> LinComb<K> + Send + Sync + 'static) -> Self {
        Self {
            action: Arc::new(action),
            degree_shift: None,
        }
    }

    pub fn with_degree_shift(mut self, shift: isize) -> Self {
        self.degree_shift = Some(shift);
        self
    }

    pub fn degree_shift(&self) -> Option<isize> {
        self.degree_shift
    }

    pub fn identity() -> Self {
        Self::new(|k| LinComb::basis(k.clone())).with_degree_shift(0)
    }

    /// `ν = unit ∘ counit`: the projection onto the scalars.
    pub fn nu() -> Self {
        Self::new(|k| {
            if k.degree() == 0 {
                LinComb::basis(k.clone())
            } else {
                LinComb::zero()
            }
        })
        .with_degree_shift(0)
    }

    pub fn zero() -> Self {
        Self::new(|_| LinComb::zero())
    }

    pub fn graduation() -> Self {
        Self::new(|k| LinComb::term(k.clone(), int(k.degree() as i64))).with_degree_shift(0)
    }

    pub fn apply_key(&self, key: &K) -> LinComb<K> {
        (self.action)(key)
    }

    pub fn apply(&self, a: &LinComb<K>) -> LinComb<K> {
        a.map_linear(|k| self.apply_key(k))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (f, g) = (self.action.clone(), other.action.clone());
        let shift = if self.degree_shift == other.degree_shift { self.degree_shift } else { None };
        Self {
            action: Arc::new(move |k| f(k) + g(k)),
            degree_shift: shift,
        }
    }

    pub fn scaled(&self, c: Rational) -> Self {
        let f = self.action.clone();
        Self {
            action: Arc::new(move |k| f(k).scaled(&c)),
            degree_shift: self.degree_shift,
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let (f, g) = (self.action.clone(), other.action.clone());
        let shift = match (self.degree_shift, other.degree_shift) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self {
            action: Arc::new(move |k| g(k).map_linear(|j| f(j))),
            degree_shift: shift,
        }
    }

    /// `self ∗ other = μ ∘ (self ⊗ other) ∘ Δ` in the given Hopf algebra.
    pub fn convolve<H>(&self, other: &Self, hopf: &H) -> Self
    where
        H: HopfAlgebra<Key = K> + Clone + Send + Sync + 'static,
    {
        let (f, g) = (self.action.clone(), other.action.clone());
        let hopf = hopf.clone();
        let shift = match (self.degree_shift, other.degree_shift) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Self {
            action: Arc::new(move |k| hopf.convolve_apply(&*f, &*g, &LinComb::basis(k.clone()))),
            degree_shift: shift,
        }
    }

    pub fn antipode<H>(hopf: &H) -> Self
    where
        H: HopfAlgebra<Key = K> + Clone + Send + Sync + 'static,
    {
        let hopf = hopf.clone();
        Self::new(move |k| hopf.antipode_key(k)).with_degree_shift(0)
    }

    /// Wraps the endomorphism with a per-key result cache.
    pub fn memoized(&self) -> Self {
        let f = self.action.clone();
        let cache: Arc<Mutex<HashMap<K, LinComb<K>>>> = Arc::default();
        Self {
            action: Arc::new(move |k| {
                if let Some(v) = cache.lock().expect("cache poisoned").get(k) {
                    return v.clone();
                }
                let v = f(k);
                cache.lock().expect("cache poisoned").insert(k.clone(), v.clone());
                v
            }),
            degree_shift: self.degree_shift,
        }
    }
}
