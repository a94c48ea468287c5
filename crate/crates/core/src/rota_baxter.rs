//! Weight-θ Rota-Baxter contexts, the Atkinson recursion and its Picard
//! series, the recursion computing the logarithmic derivative `φ⁻¹ d(φ)` of
//! the Atkinson solution, and its pre-Lie reformulation.
//!
//! The weight convention is `R(x)R(y) = R(R(x)y) + R(xR(y)) - θ R(xy)`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{inverse_series, Algebra, DiagonalDerivation, HopfAlgebra};
use crate::error::{Error, Result};
use crate::lincomb::Monomial;
use crate::rational::{int, Rational};

/// A shareable linear operator on algebra elements.
pub type LinearOp<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// Largest total degree of the operand pairs used to check the Rota-Baxter
/// and Leibniz identities on construction.
const PAIR_CHECK_DEGREE: usize = 4;

/// A graded associative algebra with a weight-θ Rota-Baxter operator `R` and
/// optionally a derivation `d` commuting with `R`, computing in degrees
/// `≤ truncation`.
#[derive(Clone)]
pub struct RbContext<A: Algebra> {
    algebra: A,
    operator: LinearOp<A::Elem>,
    theta: Rational,
    derivation: Option<LinearOp<A::Elem>>,
    truncation: usize,
}

impl<A: Algebra + fmt::Debug> fmt::Debug for RbContext<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RbContext")
            .field("algebra", &self.algebra)
            .field("theta", &self.theta.to_string())
            .field("has_derivation", &self.derivation.is_some())
            .field("truncation", &self.truncation)
            .finish()
    }
}

/// One step of the logarithmic-derivative recursion: `I_d^[n]` and
/// `R_d^[n] = R(I_d^[n])`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogDerivTerm<E> {
    pub integrand: E,
    pub term: E,
}

/// An element of `1 + (positive degrees)` stored by graded components.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<E> {
    components: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> Series<E> {
    /// Splits `value` into components `0..=order`; the degree-0 part must be 1.
    pub fn from_element<A: Algebra<Elem = E>>(alg: &A, value: &E, order: usize) -> Result<Self> {
        if alg.homogeneous(value, 0) != alg.one() {
            return Err(Error::InvalidArgument("series must have constant term 1".into()));
        }
        Ok(Self {
            components: (0..=order).map(|n| alg.homogeneous(value, n)).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, degree: usize) -> Option<&E> {
        self.components.get(degree)
    }

    pub fn components(&self) -> &[E] {
        &self.components
    }

    pub fn element<A: Algebra<Elem = E>>(&self, alg: &A) -> E {
        alg.sum(self.components.iter())
    }
}

fn positive_part_check<A: Algebra>(alg: &A, x: &A::Elem) -> Result<()> {
    if alg.is_zero(&alg.homogeneous(x, 0)) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("generator must have no degree-0 part".into()))
    }
}

impl<A: Algebra> RbContext<A> {
    /// Builds a context after checking the Rota-Baxter identity on probe
    /// pairs, and, when `derivation` is given, the Leibniz rule and
    /// `d ∘ R = R ∘ d` on probe elements up to `truncation`.
    pub fn new(
        algebra: A,
        operator: LinearOp<A::Elem>,
        theta: Rational,
        derivation: Option<LinearOp<A::Elem>>,
        truncation: usize,
    ) -> Result<Self> {
        let ctx = Self {
            algebra,
            operator,
            theta,
            derivation,
            truncation,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let pair_bound = self.truncation.min(PAIR_CHECK_DEGREE);
        let probes: Vec<(usize, Vec<A::Elem>)> = (1..=self.truncation)
            .map(|n| (n, alg.probe_elements(n)))
            .collect();
        for (n, xs) in &probes {
            for (m, ys) in &probes {
                if n + m > pair_bound {
                    continue;
                }
                for x in xs {
                    for y in ys {
                        if !self.check_identity(x, y) {
                            return Err(Error::RotaBaxterViolation(format!(
                                "on a probe pair of degrees ({n}, {m})"
                            )));
                        }
                        if let Some(d) = &self.derivation {
                            let lhs = d(&alg.mul(x, y));
                            let rhs = alg.add(&alg.mul(&d(x), y), &alg.mul(x, &d(y)));
                            if lhs != rhs {
                                return Err(Error::InvalidArgument(format!(
                                    "d is not a derivation on a probe pair of degrees ({n}, {m})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        if let Some(d) = &self.derivation {
            for (n, xs) in &probes {
                for x in xs {
                    if d(&self.rb(x)) != self.rb(&d(x)) {
                        return Err(Error::NotCommuting(format!("on a probe element of degree {n}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn has_derivation(&self) -> bool {
        self.derivation.is_some()
    }

    /// `R(x)`, truncated.
    pub fn rb(&self, x: &A::Elem) -> A::Elem {
        (self.operator)(&self.algebra.truncate(x, self.truncation))
    }

    pub fn d(&self, x: &A::Elem) -> Result<A::Elem> {
        let d = self.derivation.as_ref().ok_or(Error::MissingDerivation)?;
        Ok(d(x))
    }

    fn mul(&self, a: &A::Elem, b: &A::Elem, order: usize) -> A::Elem {
        self.algebra.mul_truncated(a, b, order)
    }

    /// `R(x)R(y) = R(R(x)y) + R(xR(y)) - θR(xy)` up to the truncation degree.
    pub fn check_identity(&self, x: &A::Elem, y: &A::Elem) -> bool {
        let alg = &self.algebra;
        let n = self.truncation;
        let (rx, ry) = (self.rb(x), self.rb(y));
        let lhs = self.mul(&rx, &ry, n);
        let rhs = alg.sub(
            &alg.add(&self.rb(&self.mul(&rx, y, n)), &self.rb(&self.mul(x, &ry, n))),
            &alg.scale(&self.rb(&self.mul(x, y, n)), &self.theta),
        );
        lhs == rhs
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if order == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        if order > self.truncation {
            return Err(Error::InvalidArgument(format!(
                "order {order} exceeds the context truncation {}",
                self.truncation
            )));
        }
        Ok(())
    }

    /// `R^[1](x) = R(x)`, `R^[n](x) = R(R^[n-1](x) x)`, for `n = 1..=order`,
    /// truncated at degree `order`.
    pub fn picard_terms(&self, x: &A::Elem, order: usize) -> Result<Vec<A::Elem>> {
        self.check_order(order)?;
        positive_part_check(&self.algebra, x)?;
        let x = self.algebra.truncate(x, order);
        let mut terms = vec![self.algebra.truncate(&self.rb(&x), order)];
        for _ in 1..order {
            let prev = terms.last().expect("nonempty");
            let next = self.rb(&self.mul(prev, &x, order));
            terms.push(next);
        }
        Ok(terms)
    }

    /// The solution of `φ = 1 + R(φ·x)` to degree `order`.
    pub fn atkinson_solve(&self, x: &A::Elem, order: usize) -> Result<Series<A::Elem>> {
        let terms = self.picard_terms(x, order)?;
        let phi = self.algebra.add(&self.algebra.one(), &self.algebra.sum(terms.iter()));
        Series::from_element(&self.algebra, &phi, order)
    }

    /// `φ - 1 - R(φ·x)` truncated at `order`; zero for the Atkinson solution.
    pub fn atkinson_residual(&self, phi: &A::Elem, x: &A::Elem, order: usize) -> A::Elem {
        let alg = &self.algebra;
        let rhs = alg.add(&alg.one(), &self.rb(&self.mul(phi, x, order)));
        alg.truncate(&alg.sub(phi, &rhs), order)
    }

    /// `I_d^[1] = d(x)`, `R_d^[n] = R(I_d^[n])`,
    /// `I_d^[n+1] = [R_d^[n], x] + θ x·I_d^[n]`, for `n = 1..=order`.
    pub fn logderiv_terms(&self, x: &A::Elem, order: usize) -> Result<Vec<LogDerivTerm<A::Elem>>> {
        self.check_order(order)?;
        positive_part_check(&self.algebra, x)?;
        let alg = &self.algebra;
        let x = alg.truncate(x, order);
        let first = alg.truncate(&self.d(&x)?, order);
        let mut out = vec![LogDerivTerm {
            term: self.rb(&first),
            integrand: first,
        }];
        for _ in 1..order {
            let prev = out.last().expect("nonempty");
            let commutator = alg.sub(&self.mul(&prev.term, &x, order), &self.mul(&x, &prev.term, order));
            let integrand = alg.add(
                &commutator,
                &alg.scale(&self.mul(&x, &prev.integrand, order), &self.theta),
            );
            out.push(LogDerivTerm {
                term: self.rb(&integrand),
                integrand,
            });
        }
        Ok(out)
    }

    /// `Σ_{n ≤ order} R_d^[n](x)`.
    pub fn logderiv_sum(&self, x: &A::Elem, order: usize) -> Result<A::Elem> {
        let terms = self.logderiv_terms(x, order)?;
        Ok(self.algebra.sum(terms.iter().map(|t| &t.term)))
    }

    /// `φ⁻¹ · d(φ)` computed directly from the Atkinson solution.
    pub fn logderiv_direct(&self, x: &A::Elem, order: usize) -> Result<A::Elem> {
        let phi = self.atkinson_solve(x, order)?.element(&self.algebra);
        let inv = inverse_series(&self.algebra, &phi, order);
        Ok(self.mul(&inv, &self.d(&phi)?, order))
    }

    /// `x ∘ y = [R(x), y] + θ y·x`
    pub fn prelie(&self, x: &A::Elem, y: &A::Elem) -> A::Elem {
        let alg = &self.algebra;
        let n = self.truncation;
        let rx = self.rb(x);
        alg.add(
            &alg.sub(&self.mul(&rx, y, n), &self.mul(y, &rx, n)),
            &alg.scale(&self.mul(y, x, n), &self.theta),
        )
    }

    /// The solution `y` of `y = d(x) + y ∘ x` to degree `order`.
    pub fn prelie_solve(&self, x: &A::Elem, order: usize) -> Result<A::Elem> {
        self.check_order(order)?;
        positive_part_check(&self.algebra, x)?;
        let alg = &self.algebra;
        let x = alg.truncate(x, order);
        let dx = alg.truncate(&self.d(&x)?, order);
        let mut y = dx.clone();
        // each iteration fixes one more degree since `∘ x` raises degree
        for _ in 1..order {
            y = alg.truncate(&alg.add(&dx, &self.prelie(&y, &x)), order);
        }
        Ok(y)
    }
}

impl<H> RbContext<H>
where
    H: HopfAlgebra + Clone + Send + Sync + 'static,
    H::Key: Monomial,
{
    /// Weight-0 context with `R = δ⁻¹` for an invertible diagonal derivation
    /// `δ` on positive degrees.
    pub fn graded_inverse(
        algebra: H,
        delta: DiagonalDerivation,
        derivation: Option<LinearOp<H::Elem>>,
        truncation: usize,
    ) -> Result<Self> {
        delta.check_invertible(&algebra, truncation)?;
        let operator: LinearOp<H::Elem> = Arc::new(move |x: &H::Elem| {
            delta
                .apply_inverse(x)
                .expect("eigenvalues checked nonzero up to the truncation")
        });
        Self::new(algebra, operator, int(0), derivation, truncation)
    }
}

/// Finitely supported sequences `{0, …, points-1} → A` with the pointwise
/// product; the grading is inherited pointwise.
#[derive(Clone, Debug)]
pub struct SequenceAlgebra<A> {
    base: A,
    points: usize,
}

impl<A: Algebra> SequenceAlgebra<A> {
    pub fn new(base: A, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidArgument("sequence carrier needs at least one point".into()));
        }
        Ok(Self { base, points })
    }

    pub fn base(&self) -> &A {
        &self.base
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn constant(&self, a: &A::Elem) -> Vec<A::Elem> {
        vec![a.clone(); self.points]
    }

    /// Strict partial sums `R(s)(n) = Σ_{k<n} s(k)`.
    pub fn partial_sums(&self, s: &[A::Elem]) -> Vec<A::Elem> {
        let mut acc = self.base.zero();
        s.iter()
            .map(|x| {
                let out = acc.clone();
                acc = self.base.add(&acc, x);
                out
            })
            .collect()
    }

    fn zip(&self, a: &[A::Elem], b: &[A::Elem], f: impl Fn(&A::Elem, &A::Elem) -> A::Elem) -> Vec<A::Elem> {
        a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
    }
}

impl<A: Algebra> Algebra for SequenceAlgebra<A> {
    type Elem = Vec<A::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.points]
    }

    fn one(&self) -> Self::Elem {
        vec![self.base.one(); self.points]
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip(a, b, |x, y| self.base.add(x, y))
    }

    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem {
        a.iter().map(|x| self.base.scale(x, c)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip(a, b, |x, y| self.base.mul(x, y))
    }

    fn mul_truncated(&self, a: &Self::Elem, b: &Self::Elem, max_degree: usize) -> Self::Elem {
        self.zip(a, b, |x, y| self.base.mul_truncated(x, y, max_degree))
    }

    fn truncate(&self, a: &Self::Elem, max_degree: usize) -> Self::Elem {
        a.iter().map(|x| self.base.truncate(x, max_degree)).collect()
    }

    fn homogeneous(&self, a: &Self::Elem, degree: usize) -> Self::Elem {
        a.iter().map(|x| self.base.homogeneous(x, degree)).collect()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn probe_elements(&self, degree: usize) -> Vec<Self::Elem> {
        let base = self.base.probe_elements(degree);
        let mut out = Vec::new();
        for p in 0..self.points {
            for e in &base {
                let mut s = self.zero();
                s[p] = e.clone();
                out.push(s);
            }
        }
        out
    }
}

impl<A> RbContext<SequenceAlgebra<A>>
where
    A: Algebra + Clone + Send + Sync + 'static,
    A::Elem: Send + Sync,
{
    /// Weight `θ = -1` context on sequences with `R` the strict partial sum;
    /// `base_derivation` acts pointwise.
    pub fn sequence(
        base: A,
        points: usize,
        base_derivation: Option<LinearOp<A::Elem>>,
        truncation: usize,
    ) -> Result<Self> {
        let alg = SequenceAlgebra::new(base, points)?;
        let sums = alg.clone();
        let operator: LinearOp<Vec<A::Elem>> = Arc::new(move |s: &Vec<A::Elem>| sums.partial_sums(s));
        let derivation = base_derivation.map(|d| -> LinearOp<Vec<A::Elem>> {
            Arc::new(move |s: &Vec<A::Elem>| s.iter().map(|x| d(x)).collect())
        });
        Self::new(alg, operator, int(-1), derivation, truncation)
    }
}
