//! The classical Magnus setting `X'(t) = X(t)·λA(t)`, `X(0) = 1`, with exact
//! polynomial matrices in `t` and the grading by powers of `λ`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{exp_series, log_series, Algebra};
use crate::error::{Error, Result};
use crate::magnus::magnus_operator;
use crate::random::Sampler;
use crate::rational::{format_rational, int, parse_rational, Rational};

pub const MAX_DIMENSION: usize = 4;

/// A polynomial in `t`, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(k, a)| a * int(k as i64)).collect())
    }

    /// `∫_0^t p(u) du`
    pub fn integral(&self) -> Poly {
        let mut out = vec![Rational::zero()];
        out.extend(self.0.iter().enumerate().map(|(k, a)| a / int(k as i64 + 1)));
        Poly::new(out)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, a| acc * t + a)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c < &Rational::zero() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A square matrix of polynomials in `t`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPoly {
    dim: usize,
    entries: Vec<Poly>,
}

impl MatrixPoly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Poly::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Poly::constant(Rational::one());
        }
        m
    }

    /// `rows[i][j]` is the coefficient list of entry `(i, j)`.
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIMENSION {
            return Err(Error::InvalidArgument(format!(
                "matrix dimension {dim} outside 1..={MAX_DIMENSION}"
            )));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn constant(rows: &[Vec<Rational>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| Poly::constant(c.clone())).collect())
                .collect(),
        )
    }

    /// `E_ij · c t^k`
    pub fn unit(dim: usize, i: usize, j: usize, c: Rational, k: usize) -> Self {
        let mut m = Self::zero(dim);
        m.entries[i * dim + j] = Poly::monomial(c, k);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Highest power of `t` among the entries.
    pub fn t_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, Poly::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, Poly::sub)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero();
                for k in 0..n {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn derivative(&self) -> Self {
        self.map(Poly::derivative)
    }

    pub fn integral(&self) -> Self {
        self.map(Poly::integral)
    }

    pub fn eval(&self, t: &Rational) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j).eval(t)).collect())
            .collect()
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `Σ_n λ^n M_n`; component `n` sits in degree `n`. Trailing zero
/// components are dropped so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaSeries {
    dim: usize,
    components: Vec<MatrixPoly>,
}

impl LambdaSeries {
    pub fn new(dim: usize, components: Vec<MatrixPoly>) -> Self {
        let mut s = Self { dim, components };
        s.trim();
        s
    }

    /// `λ^n M`
    pub fn single(n: usize, m: MatrixPoly) -> Self {
        let dim = m.dim();
        let mut components = vec![MatrixPoly::zero(dim); n];
        components.push(m);
        Self::new(dim, components)
    }

    fn trim(&mut self) {
        while self.components.last().is_some_and(MatrixPoly::is_zero) {
            self.components.pop();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Component of `λ^n` (zero beyond the stored range).
    pub fn component(&self, n: usize) -> MatrixPoly {
        self.components.get(n).cloned().unwrap_or_else(|| MatrixPoly::zero(self.dim))
    }

    pub fn components(&self) -> &[MatrixPoly] {
        &self.components
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.dim, self.components.iter().map(MatrixPoly::derivative).collect())
    }

    pub fn integral(&self) -> Self {
        Self::new(self.dim, self.components.iter().map(MatrixPoly::integral).collect())
    }

    fn len(&self) -> usize {
        self.components.len()
    }
}

/// `O ⊗ λℚ[λ]` and its unitalization: polynomial `dim × dim` matrices graded
/// by the power of `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaAlgebra {
    dim: usize,
}

impl LambdaAlgebra {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIMENSION {
            return Err(Error::InvalidArgument(format!(
                "matrix dimension {dim} outside 1..={MAX_DIMENSION}"
            )));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn product(&self, a: &LambdaSeries, b: &LambdaSeries, max_degree: Option<usize>) -> LambdaSeries {
        if a.len() == 0 || b.len() == 0 {
            return self.zero();
        }
        let mut top = a.len() + b.len() - 2;
        if let Some(m) = max_degree {
            top = top.min(m);
        }
        let components = (0..=top)
            .map(|n| {
                let mut acc = MatrixPoly::zero(self.dim);
                for i in 0..=n.min(a.len() - 1) {
                    if n - i < b.len() {
                        acc = acc.add(&a.components[i].mul(&b.components[n - i]));
                    }
                }
                acc
            })
            .collect();
        LambdaSeries::new(self.dim, components)
    }
}

impl Algebra for LambdaAlgebra {
    type Elem = LambdaSeries;

    fn zero(&self) -> LambdaSeries {
        LambdaSeries::new(self.dim, Vec::new())
    }

    fn one(&self) -> LambdaSeries {
        LambdaSeries::single(0, MatrixPoly::identity(self.dim))
    }

    fn add(&self, a: &LambdaSeries, b: &LambdaSeries) -> LambdaSeries {
        let n = a.len().max(b.len());
        LambdaSeries::new(self.dim, (0..n).map(|k| a.component(k).add(&b.component(k))).collect())
    }

    fn scale(&self, a: &LambdaSeries, c: &Rational) -> LambdaSeries {
        LambdaSeries::new(self.dim, a.components.iter().map(|m| m.scale(c)).collect())
    }

    fn mul(&self, a: &LambdaSeries, b: &LambdaSeries) -> LambdaSeries {
        self.product(a, b, None)
    }

    fn mul_truncated(&self, a: &LambdaSeries, b: &LambdaSeries, max_degree: usize) -> LambdaSeries {
        self.product(a, b, Some(max_degree))
    }

    fn truncate(&self, a: &LambdaSeries, max_degree: usize) -> LambdaSeries {
        LambdaSeries::new(self.dim, a.components.iter().take(max_degree + 1).cloned().collect())
    }

    fn homogeneous(&self, a: &LambdaSeries, degree: usize) -> LambdaSeries {
        LambdaSeries::single(degree, a.component(degree))
    }

    fn is_zero(&self, a: &LambdaSeries) -> bool {
        a.components.is_empty()
    }

    /// Matrix units times `1`, `t`, `t²` in the given `λ`-degree.
    fn probe_elements(&self, degree: usize) -> Vec<LambdaSeries> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..=2 {
                    out.push(LambdaSeries::single(degree, MatrixPoly::unit(self.dim, i, j, Rational::one(), k)));
                }
            }
        }
        out
    }
}

/// The solution of `X' = X·λA`, `X(0) = 1` to `λ`-order `order`:
/// `X_0 = 1`, `X_n = ∫_0^t X_{n-1}(u) A(u) du`.
pub fn picard_matrix(a: &MatrixPoly, order: usize) -> Result<LambdaSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let dim = a.dim();
    let mut components = vec![MatrixPoly::identity(dim)];
    for n in 1..=order {
        let next = components[n - 1].mul(a).integral();
        components.push(next);
    }
    Ok(LambdaSeries::new(dim, components))
}

/// `Ω = log X` to `λ`-order `order`; `X` must start with the identity.
pub fn omega_log(x: &LambdaSeries, order: usize) -> Result<LambdaSeries> {
    let alg = LambdaAlgebra::new(x.dim())?;
    if x.component(0) != MatrixPoly::identity(x.dim()) {
        return Err(Error::InvalidArgument("λ-degree 0 component must be the identity".into()));
    }
    Ok(log_series(&alg, x, order))
}

/// `Σ_i (-ad_Ω)^i (Ω') / (i+1)! - λA` with `Ω = log` of the Picard solution;
/// identically zero exactly when the Magnus relation holds.
pub fn magnus_relation_residual(a: &MatrixPoly, order: usize) -> Result<LambdaSeries> {
    let alg = LambdaAlgebra::new(a.dim())?;
    let omega = omega_log(&picard_matrix(a, order)?, order)?;
    let lhs = magnus_operator(&alg, &omega, &omega.derivative(), order);
    Ok(alg.sub(&lhs, &LambdaSeries::single(1, a.clone())))
}

pub fn magnus_relation_check(a: &MatrixPoly, order: usize) -> Result<bool> {
    Ok(magnus_relation_residual(a, order)?.components().is_empty())
}

/// Everything the relation check computes, for reporting.
#[derive(Clone, Debug)]
pub struct MagnusReport {
    pub order: usize,
    pub picard: LambdaSeries,
    pub omega: LambdaSeries,
    pub exp_round_trip: bool,
    pub relation_holds: bool,
}

pub fn magnus_report(a: &MatrixPoly, order: usize) -> Result<MagnusReport> {
    let alg = LambdaAlgebra::new(a.dim())?;
    let picard = picard_matrix(a, order)?;
    let omega = omega_log(&picard, order)?;
    let exp_round_trip = exp_series(&alg, &omega, order) == picard;
    let relation_holds = magnus_relation_check(a, order)?;
    Ok(MagnusReport {
        order,
        picard,
        omega,
        exp_round_trip,
        relation_holds,
    })
}

/// `M ↶ N = ∫_0^t [N(u), M'(u)] du`, truncated at `λ`-order `max_degree`.
pub fn prelie_time(m: &LambdaSeries, n: &LambdaSeries, max_degree: usize) -> Result<LambdaSeries> {
    let alg = LambdaAlgebra::new(m.dim())?;
    let dm = m.derivative();
    let c = alg.sub(&alg.mul_truncated(n, &dm, max_degree), &alg.mul_truncated(&dm, n, max_degree));
    Ok(c.integral())
}

/// Matrix input file: `entries[i][j]` lists the coefficients of the entry
/// polynomial in increasing powers of `t`, each as `"p"` or `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dimension: usize,
    pub entries: Vec<Vec<Vec<String>>>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<MatrixPoly> {
        if self.entries.len() != self.dimension {
            return Err(Error::Format(format!(
                "expected {} rows, found {}",
                self.dimension,
                self.entries.len()
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                if row.len() != self.dimension {
                    return Err(Error::Format(format!(
                        "expected {} columns, found {}",
                        self.dimension,
                        row.len()
                    )));
                }
                row.iter()
                    .map(|cs| Ok(Poly::new(cs.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixPoly::from_rows(rows)
    }

    pub fn from_matrix(m: &MatrixPoly) -> Self {
        Self {
            dimension: m.dim(),
            entries: (0..m.dim())
                .map(|i| {
                    (0..m.dim())
                        .map(|j| m.entry(i, j).coeffs().iter().map(format_rational).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<MatrixPoly> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.to_matrix()
    }
}

/// A random `dim × dim` matrix with entries of `t`-degree `≤ t_degree`.
pub fn random_matrix(sampler: &mut Sampler, dim: usize, t_degree: usize) -> MatrixPoly {
    let rows = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| Poly::new((0..=t_degree).map(|_| sampler.rational()).collect()))
                .collect()
        })
        .collect();
    MatrixPoly::from_rows(rows).expect("dimension in range")
}

/// A random `λ`-series with components in `λ`-degrees `1..=order`.
pub fn random_lambda_series(sampler: &mut Sampler, dim: usize, order: usize, t_degree: usize) -> LambdaSeries {
    let mut components = vec![MatrixPoly::zero(dim)];
    components.extend((1..=order).map(|_| random_matrix(sampler, dim, t_degree)));
    LambdaSeries::new(dim, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::algebra::ad_power;
    use crate::rational::{factorial, rat};
    use crate::rota_baxter::{LinearOp, RbContext};

    fn m2(a: [[i64; 2]; 2]) -> MatrixPoly {
        MatrixPoly::constant(&a.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect::<Vec<_>>()).unwrap()
    }

    fn t_times(m: &MatrixPoly) -> MatrixPoly {
        m.mul(&MatrixPoly::identity(m.dim()).map(|p| p.mul(&Poly::monomial(int(1), 1))))
    }

    fn a0() -> MatrixPoly {
        m2([[1, 2], [0, -1]])
    }

    fn a1() -> MatrixPoly {
        m2([[0, 1], [3, 0]])
    }

    fn power(m: &MatrixPoly, k: usize) -> MatrixPoly {
        (0..k).fold(MatrixPoly::identity(m.dim()), |acc, _| acc.mul(m))
    }

    fn t_pow(k: usize, c: Rational, m: &MatrixPoly) -> MatrixPoly {
        m.map(|p| p.mul(&Poly::monomial(c.clone(), k)))
    }

    #[test]
    fn poly_calculus() {
        let p = Poly::new(vec![int(1), int(2), int(3)]);
        assert_eq!(p.derivative(), Poly::new(vec![int(2), int(6)]));
        assert_eq!(p.integral(), Poly::new(vec![int(0), int(1), int(1), int(1)]));
        assert_eq!(p.integral().derivative(), p);
        assert_eq!(p.eval(&int(2)), int(17));
        assert_eq!(p.to_string(), "1 + 2 t + 3 t^2");
        assert_eq!(Poly::new(vec![int(0), rat(-1, 2)]).to_string(), "-1/2 t");
        assert_eq!(Poly::new(vec![int(0), int(0)]), Poly::zero());
    }

    #[test]
    fn picard_of_constant_is_exponential() {
        let a = a0();
        let x = picard_matrix(&a, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(x.component(n), t_pow(n, Rational::one() / factorial(n), &power(&a, n)));
        }
        let alg = LambdaAlgebra::new(2).unwrap();
        assert_eq!(picard_matrix(&MatrixPoly::zero(2), 4).unwrap(), alg.one());
    }

    #[test]
    fn picard_second_component_for_linear_generator() {
        // ∫_0^t (s A0 + s²/2 A1)(A0 + s A1) ds
        let a = a0().add(&t_times(&a1()));
        let x = picard_matrix(&a, 2).unwrap();
        let expected = t_pow(2, rat(1, 2), &a0().mul(&a0()))
            .add(&t_pow(3, rat(1, 3), &a0().mul(&a1()).add(&a1().mul(&a0()).scale(&rat(1, 2)))))
            .add(&t_pow(4, rat(1, 8), &a1().mul(&a1())));
        assert_eq!(x.component(2), expected);
        assert!(!a0().bracket(&a1()).is_zero());
    }

    #[test]
    fn picard_solves_the_equation() {
        let a = a0().add(&t_times(&a1()));
        let x = picard_matrix(&a, 5).unwrap();
        let alg = LambdaAlgebra::new(2).unwrap();
        let rhs = alg.mul_truncated(&x, &LambdaSeries::single(1, a), 5);
        assert_eq!(alg.truncate(&x.derivative(), 5), alg.truncate(&rhs, 5));
        assert_eq!(x.component(0), MatrixPoly::identity(2));
        for n in 1..=5 {
            assert!(x.component(n).eval(&int(0)).iter().flatten().all(Zero::is_zero));
        }
    }

    #[test]
    fn omega_of_constant_is_linear() {
        let a = a0();
        let omega = omega_log(&picard_matrix(&a, 6).unwrap(), 6).unwrap();
        assert_eq!(omega, LambdaSeries::single(1, t_times(&a)));
        let alg = LambdaAlgebra::new(2).unwrap();
        assert_eq!(omega_log(&alg.one(), 4).unwrap(), alg.zero());
        assert!(omega_log(&alg.zero(), 4).is_err());
    }

    #[test]
    fn exp_of_omega_recovers_picard() {
        let alg = LambdaAlgebra::new(3).unwrap();
        let mut s = Sampler::new(5);
        let a = random_matrix(&mut s, 3, 2);
        let x = picard_matrix(&a, 5).unwrap();
        assert_eq!(exp_series(&alg, &omega_log(&x, 5).unwrap(), 5), x);
    }

    #[test]
    fn relation_holds() {
        assert!(magnus_relation_check(&a0(), 5).unwrap());
        assert!(magnus_relation_check(&MatrixPoly::zero(2), 5).unwrap());
        assert!(magnus_relation_check(&a0().add(&t_times(&a1())), 5).unwrap());
        let mut s = Sampler::new(11);
        for dim in [2, 3] {
            let a = random_matrix(&mut s, dim, 2);
            assert!(magnus_relation_check(&a, 5).unwrap());
        }
    }

    #[test]
    fn relation_for_constant_uses_only_first_term() {
        let alg = LambdaAlgebra::new(2).unwrap();
        let omega = omega_log(&picard_matrix(&a0(), 5).unwrap(), 5).unwrap();
        assert!(alg.is_zero(&ad_power(&alg, &omega, 1, &omega.derivative())));
        assert_eq!(omega.derivative(), LambdaSeries::single(1, a0()));
    }

    #[test]
    fn relation_detects_a_wrong_generator() {
        // The Picard series of A does not satisfy the relation for 2A.
        let a = a0().add(&t_times(&a1()));
        let alg = LambdaAlgebra::new(2).unwrap();
        let omega = omega_log(&picard_matrix(&a, 4).unwrap(), 4).unwrap();
        let lhs = magnus_operator(&alg, &omega, &omega.derivative(), 4);
        assert_ne!(lhs, LambdaSeries::single(1, a.scale(&int(2))));
    }

    #[test]
    fn prelie_time_examples() {
        let c = LambdaSeries::single(1, a0());
        let n = LambdaSeries::single(1, a1());
        assert!(prelie_time(&c, &n, 4).unwrap().components().is_empty());
        let m = LambdaSeries::single(1, t_times(&a0()));
        let n = LambdaSeries::single(1, t_times(&a1()));
        let out = prelie_time(&m, &n, 4).unwrap();
        assert_eq!(out, LambdaSeries::single(2, t_pow(2, rat(1, 2), &a1().bracket(&a0()))));
    }

    #[test]
    fn prelie_time_derivative_law() {
        let alg = LambdaAlgebra::new(2).unwrap();
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            let m = random_lambda_series(&mut s, 2, 2, 2);
            let n = random_lambda_series(&mut s, 2, 2, 2);
            let lhs = prelie_time(&m, &n, 6).unwrap().derivative();
            let dm = m.derivative();
            assert_eq!(lhs, alg.bracket(&n, &dm));
        }
    }

    #[test]
    fn integral_is_weight_zero_rota_baxter() {
        let alg = LambdaAlgebra::new(2).unwrap();
        let r: LinearOp<LambdaSeries> = Arc::new(|x: &LambdaSeries| x.integral());
        let ctx = RbContext::new(alg, r, int(0), None, 4).unwrap();
        let mut s = Sampler::new(9);
        for _ in 0..10 {
            let x = random_lambda_series(&mut s, 2, 2, 2);
            let y = random_lambda_series(&mut s, 2, 2, 2);
            assert!(ctx.check_identity(&x, &y));
        }
    }

    #[test]
    fn picard_is_the_atkinson_fixed_point() {
        let alg = LambdaAlgebra::new(2).unwrap();
        let r: LinearOp<LambdaSeries> = Arc::new(|x: &LambdaSeries| x.integral());
        let ctx = RbContext::new(alg, r, int(0), None, 5).unwrap();
        let a = a0().add(&t_times(&a1()));
        let gen = LambdaSeries::single(1, a.clone());
        let x = picard_matrix(&a, 5).unwrap();
        assert!(ctx.atkinson_residual(&x, &gen, 5).components().is_empty());
        assert_eq!(ctx.atkinson_solve(&gen, 5).unwrap().element(&alg), x);
    }

    #[test]
    fn matrix_file_round_trip() {
        let text = r#"{"dimension": 2, "entries": [[["1", "1/2"], []], [["0"], ["-3", "0", "2/3"]]]}"#;
        let m = MatrixFile::from_json(text).unwrap();
        assert_eq!(m.entry(0, 0), &Poly::new(vec![int(1), rat(1, 2)]));
        assert!(m.entry(0, 1).is_zero());
        assert_eq!(m.t_degree(), Some(2));
        let back = serde_json::to_string(&MatrixFile::from_matrix(&m)).unwrap();
        assert_eq!(MatrixFile::from_json(&back).unwrap(), m);
        assert!(MatrixFile::from_json(r#"{"dimension": 2, "entries": [[["1"]]]}"#).is_err());
        assert!(MatrixFile::from_json(r#"{"dimension": 5, "entries": []}"#).is_err());
        assert!(MatrixFile::from_json(r#"{"dimension": 1, "entries": [[["x"]]]}"#).is_err());
    }
}
