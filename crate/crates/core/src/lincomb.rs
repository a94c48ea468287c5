//! Finite rational linear combinations over an ordered, graded basis.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::rational::Rational;

/// A basis key of a graded vector space.
///
/// The ordering of keys is the canonical ordering of terms; implementors order
/// by degree first so that printed output is sorted by (degree, key).
pub trait Basis: Ord + Clone + Hash + Debug + Send + Sync {
    fn degree(&self) -> usize;
    /// The key spanning the degree-0 component.
    fn unit() -> Self;
}

impl<A: Basis, B: Basis> Basis for (A, B) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }

    fn unit() -> Self {
        (A::unit(), B::unit())
    }
}

/// Basis keys that are products of indexed generators (words, PBW monomials).
pub trait Monomial: Basis {
    fn generators(&self) -> Vec<usize>;
}

/// A finite linear combination `Σ c_k k`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Debug> Debug for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}

impl<K: Basis> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::basis(K::unit())
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, crate::rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn scalar(c: Rational) -> Self {
        Self::term(K::unit(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&K::unit())
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn homogeneous(&self, degree: usize) -> Self {
        self.filter(|k| k.degree() == degree)
    }

    pub fn truncated(&self, max_degree: usize) -> Self {
        self.filter(|k| k.degree() <= max_degree)
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Basis::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Basis::degree).min()
    }

    /// Homogeneous of a single degree (the zero element counts as homogeneous).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    /// Linear extension of a map on basis keys.
    pub fn map_linear<L: Basis>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Bilinear product from a product on keys, dropping key pairs whose
    /// combined degree exceeds `max_degree`.
    pub fn bilinear<L: Basis, M: Basis>(
        &self,
        other: &LinComb<L>,
        max_degree: Option<usize>,
        mut f: impl FnMut(&K, &L) -> LinComb<M>,
    ) -> LinComb<M> {
        let mut out = LinComb::zero();
        for (k1, c1) in self.iter() {
            let d1 = k1.degree();
            for (k2, c2) in other.iter() {
                if max_degree.is_some_and(|m| d1 + k2.degree() > m) {
                    continue;
                }
                out.add_scaled(&f(k1, k2), &(c1 * c2));
            }
        }
        out
    }
}

impl<K: Basis> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Basis> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Basis> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, v) in rhs.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Basis> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, v) in rhs.iter() {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl<K: Basis> Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;

    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Basis> Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;

    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Basis> Add for LinComb<K> {
    type Output = LinComb<K>;

    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self += &rhs;
        self
    }
}

impl<K: Basis> Sub for LinComb<K> {
    type Output = LinComb<K>;

    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self -= &rhs;
        self
    }
}

impl<K: Basis> Neg for &LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl<K: Basis> Neg for LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        -&self
    }
}

impl<K: Basis> Mul<&Rational> for &LinComb<K> {
    type Output = LinComb<K>;

    fn mul(self, rhs: &Rational) -> LinComb<K> {
        self.scaled(rhs)
    }
}

/// Text rendering: terms in canonical order, `1` omitted as a coefficient,
/// the degree-0 key printed as `1`, `0` for the empty combination.
impl<K: Basis + std::fmt::Display> std::fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit_coeff = abs == crate::rational::one();
            match (k.degree() == 0, unit_coeff) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{k}")?,
                (false, false) => write!(f, "{abs} {k}")?,
            }
        }
        Ok(())
    }
}

/// Rank over ℚ of a family of combinations, by fraction-exact elimination.
pub fn rank<K: Basis>(vectors: &[LinComb<K>]) -> usize {
    let mut pivots: Vec<(K, LinComb<K>)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (key, row) in &pivots {
            let c = v.coeff(key);
            if !c.is_zero() {
                v.add_scaled(row, &-c);
            }
        }
        if let Some((key, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let row = v.scaled(&(crate::rational::one() / c));
            for (_, other) in pivots.iter_mut() {
                let oc = other.coeff(&key);
                if !oc.is_zero() {
                    other.add_scaled(&row, &-oc);
                }
            }
            pivots.push((key, row));
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
    struct K(usize);

    impl Basis for K {
        fn degree(&self) -> usize {
            self.0
        }
        fn unit() -> Self {
            K(0)
        }
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let mut a = LinComb::term(K(1), int(2));
        a.add_term(K(1), int(-2));
        assert!(a.is_zero());
        a.add_term(K(2), int(0));
        assert!(a.is_zero());
    }

    #[test]
    fn degree_filters() {
        let a: LinComb<K> = [(K(0), int(1)), (K(2), rat(1, 2)), (K(3), int(4))]
            .into_iter()
            .collect();
        assert_eq!(a.homogeneous(2), LinComb::term(K(2), rat(1, 2)));
        assert_eq!(a.truncated(2).len(), 2);
        assert_eq!(a.max_degree(), Some(3));
        assert_eq!(a.constant_term(), int(1));
        assert_eq!(a.homogeneous_degree(), None);
        assert_eq!((&a - &a), LinComb::zero());
    }

    #[test]
    fn rank_detects_dependence() {
        let a = LinComb::term(K(1), int(1)) + LinComb::term(K(2), int(1));
        let b = LinComb::term(K(1), int(1)) - LinComb::term(K(2), int(1));
        let c = &a + &b;
        assert_eq!(rank(&[a.clone(), b.clone()]), 2);
        assert_eq!(rank(&[a, b, c]), 2);
        assert_eq!(rank::<K>(&[LinComb::zero()]), 0);
    }
}
