//! Monomials in the matching variables and the impression `η̄`.
//!
//! Arrow `a` is sent to the product of `x_D` over the simple matchings `D`
//! containing it, and a path to the product over its arrows. The map `η`
//! places `η̄(p)` in the matrix entry `(h(p), t(p))`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::dimer::{ArrowId, DimerQuiver, Path, VertexId};
use crate::matchings::MatchingCatalog;
use crate::scalar::{format_rational, parse_rational, pow, Scalar};

/// Exponent vector over the matching variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut v = vec![0; nvars];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_assign(&mut self, other: &Monomial) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides it.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * n).collect())
    }

    pub fn evaluate<T: Scalar>(&self, b: &PointB<T>) -> T {
        self.0.iter().zip(&b.values).fold(T::one(), |acc, (&e, v)| if e == 0 { acc } else { acc * pow(v, e) })
    }

    /// Whether the monomial is nonzero at `b`.
    pub fn nonvanishing_at<T: Scalar>(&self, b: &PointB<T>) -> bool {
        self.0.iter().zip(&b.values).all(|(&e, v)| e == 0 || !v.is_zero())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("point file must be a JSON object of strings")]
    NotAnObject,
    #[error("value for `{0}` is not an exact rational")]
    BadValue(String),
    #[error("missing value for `{0}`")]
    Missing(String),
    #[error("unknown variable `{0}`")]
    Unknown(String),
}

/// A point of `Max B`: one field value per matching variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PointB<T> {
    pub values: Vec<T>,
}

impl<T: Scalar> PointB<T> {
    pub fn new(values: Vec<T>) -> Self {
        PointB { values }
    }

    pub fn constant(nvars: usize, v: T) -> Self {
        PointB { values: vec![v; nvars] }
    }

    pub fn ones(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    pub fn zeros(nvars: usize) -> Self {
        Self::constant(nvars, T::zero())
    }

    pub fn nvars(&self) -> usize {
        self.values.len()
    }
}

impl PointB<BigRational> {
    /// Reads `{"x0": "3/2", ...}`; every variable must be given.
    pub fn from_json(s: &str, nvars: usize) -> Result<Self, crate::Error> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        Ok(Self::from_value(&v, nvars)?)
    }

    pub fn from_value(v: &serde_json::Value, nvars: usize) -> Result<Self, PointError> {
        let obj = v.as_object().ok_or(PointError::NotAnObject)?;
        let mut values: Vec<Option<BigRational>> = vec![None; nvars];
        for (k, val) in obj {
            let idx = k
                .strip_prefix('x')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&i| i < nvars)
                .ok_or_else(|| PointError::Unknown(k.clone()))?;
            let text = match val {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                _ => return Err(PointError::BadValue(k.clone())),
            };
            values[idx] = Some(parse_rational(&text).ok_or_else(|| PointError::BadValue(k.clone()))?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| PointError::Missing(MatchingCatalog::var_name(i))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PointB { values })
    }

    pub fn to_json(&self) -> String {
        let map: BTreeMap<usize, String> = self.values.iter().enumerate().map(|(i, v)| (i, format_rational(v))).collect();
        let obj: serde_json::Map<String, serde_json::Value> =
            map.into_iter().map(|(i, v)| (MatchingCatalog::var_name(i), v.into())).collect();
        serde_json::to_string_pretty(&serde_json::Value::Object(obj)).expect("point serializes")
    }
}

/// Per-arrow monomials of a dimer, together with `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpressionMap {
    nvars: usize,
    arrows: Vec<Monomial>,
    sigma: Monomial,
}

impl ImpressionMap {
    /// `a ↦ ∏_{a ∈ D simple} x_D`; arrows in no simple matching get `1`.
    pub fn from_catalog(d: &DimerQuiver, cat: &MatchingCatalog) -> ImpressionMap {
        let nvars = cat.var_count();
        let arrows = (0..d.arrow_count())
            .map(|a| {
                Monomial((0..nvars).map(|v| u32::from(cat.simple_matching(v).contains(a))).collect())
            })
            .collect();
        ImpressionMap { nvars, arrows, sigma: Monomial(vec![1; nvars]) }
    }

    /// Builds a map from explicit arrow monomials and `σ`; used for
    /// impressions pulled back along a contraction.
    pub fn from_parts(nvars: usize, arrows: Vec<Monomial>, sigma: Monomial) -> ImpressionMap {
        ImpressionMap { nvars, arrows, sigma }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn sigma(&self) -> &Monomial {
        &self.sigma
    }

    pub fn arrow(&self, a: ArrowId) -> &Monomial {
        &self.arrows[a]
    }

    pub fn eta_bar_arrows(&self, arrows: &[ArrowId]) -> Monomial {
        let mut m = Monomial::one(self.nvars);
        for &a in arrows {
            m.mul_assign(&self.arrows[a]);
        }
        m
    }

    pub fn eta_bar(&self, p: &Path) -> Monomial {
        self.eta_bar_arrows(p.arrows())
    }

    /// `η(p) = η̄(p) E_{h(p), t(p)}` as `(entry, row, column)`.
    pub fn eta_matrix(&self, p: &Path) -> (Monomial, VertexId, VertexId) {
        (self.eta_bar(p), p.head(), p.tail())
    }

    pub fn evaluate<T: Scalar>(&self, p: &Path, b: &PointB<T>) -> T {
        self.eta_bar(p).evaluate(b)
    }

    pub fn arrow_value<T: Scalar>(&self, a: ArrowId, b: &PointB<T>) -> T {
        self.arrows[a].evaluate(b)
    }

    /// Spans `{ε_b η(p) : |p| ≤ budget}`. Every `η(p)` is a multiple of a
    /// single matrix unit, so the span is spanned by the units `E_{h,t}`
    /// reachable through a path of nonzero value; vertex paths give the
    /// diagonal.
    pub fn check_surjectivity<T: Scalar>(&self, d: &DimerQuiver, b: &PointB<T>, budget: usize) -> Surjectivity {
        let n = d.vertex_count();
        let live: Vec<bool> = (0..d.arrow_count()).map(|a| self.arrows[a].nonvanishing_at(b)).collect();
        let mut rank = 0;
        for t in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[t] = 0;
            let mut queue = VecDeque::from([t]);
            while let Some(v) = queue.pop_front() {
                if dist[v] == budget {
                    continue;
                }
                for a in d.out_arrows(v) {
                    let h = d.head(a);
                    if live[a] && dist[h] == usize::MAX {
                        dist[h] = dist[v] + 1;
                        queue.push_back(h);
                    }
                }
            }
            rank += dist.iter().filter(|&&x| x != usize::MAX).count();
        }
        if rank == n * n {
            Surjectivity::Surjective
        } else {
            Surjectivity::NotSurjectiveUpTo { budget, rank }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surjectivity {
    Surjective,
    /// The span found has dimension `rank < |Q_0|^2`.
    NotSurjectiveUpTo { budget: usize, rank: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matchings::enumerate_matchings;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn conifold() -> (DimerQuiver, ImpressionMap) {
        let d = fixtures::load("conifold");
        let cat = enumerate_matchings(&d);
        let map = ImpressionMap::from_catalog(&d, &cat);
        (d, map)
    }

    #[test]
    fn faces_map_to_sigma() {
        for (name, _) in fixtures::DIMERS {
            let d = fixtures::load(name);
            let map = ImpressionMap::from_catalog(&d, &enumerate_matchings(&d));
            for f in d.faces() {
                assert_eq!(&map.eta_bar_arrows(&f.arrows), map.sigma(), "{name}");
            }
        }
    }

    #[test]
    fn conifold_arrow_entries() {
        let (d, map) = conifold();
        let a1 = d.path(&["a1"]).unwrap();
        let (m, h, t) = map.eta_matrix(&a1);
        assert_eq!(m, Monomial::var(4, 0));
        assert_eq!((d.vertex_name(h), d.vertex_name(t)), ("2", "1"));
        let e = Path::vertex(0);
        assert_eq!(map.eta_matrix(&e), (Monomial::one(4), 0, 0));
    }

    #[test]
    fn evaluation_and_vanishing() {
        let (d, map) = conifold();
        let face = Path::new(&d, 0, d.faces()[0].arrows.clone()).unwrap();
        let b = PointB::new(vec![q(1), q(1), q(1), q(0)]);
        assert_eq!(map.evaluate(&face, &b), q(0));
        assert_eq!(map.evaluate(&face, &PointB::<Rational>::ones(4)), q(1));
        let p = d.path(&["a1", "b1"]).unwrap();
        assert_eq!(map.evaluate(&p, &b), q(1));
        let b2 = PointB::new(vec![q(2), q(1), q(3), q(1)]);
        assert_eq!(map.evaluate(&p, &b2), q(6));
    }

    #[test]
    fn surjectivity() {
        let (d, map) = conifold();
        assert_eq!(map.check_surjectivity(&d, &PointB::<Rational>::ones(4), 4), Surjectivity::Surjective);
        let b = PointB::new(vec![q(1), q(1), q(0), q(0)]);
        assert!(matches!(map.check_surjectivity(&d, &b, 50), Surjectivity::NotSurjectiveUpTo { rank: 3, .. }));
    }

    #[test]
    fn point_json_round_trip() {
        let b = PointB::new(vec![parse_rational("3/2").unwrap(), q(0), q(-7)]);
        let s = b.to_json();
        assert_eq!(PointB::from_json(&s, 3).unwrap(), b);
        assert!(PointB::from_json(r#"{"x0":"1"}"#, 2).is_err());
        assert!(PointB::from_json(r#"{"x0":"1","x5":"2"}"#, 1).is_err());
        assert!(PointB::from_json(r#"{"x0":"1/0"}"#, 1).is_err());
    }

    #[test]
    fn monomial_display() {
        assert_eq!(Monomial::from_exponents(vec![1, 0, 2]).to_string(), "x0*x2^2");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }

    #[test]
    fn float_points_work_too() {
        let (d, map) = conifold();
        let p = d.path(&["a1", "b1"]).unwrap();
        let b = PointB::new(vec![0.5f64, 1.0, 4.0, 1.0]);
        assert_eq!(map.evaluate(&p, &b), 2.0);
    }
}
