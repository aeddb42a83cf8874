//! Condition-number reports.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Result;
use crate::matrix::{invert, LabeledMatrix};
use crate::rational::{sqrt_f64, Rational};

/// Companion matrix family a report belongs to. The declaration order is the
/// tie-break preference order used by recommendations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Frobenius,
    Fiedler,
    Striped,
    Generalized,
    /// A bare oracle measurement not attached to any named family.
    Unspecified,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Frobenius => "frobenius",
            Family::Fiedler => "fiedler",
            Family::Striped => "striped",
            Family::Generalized => "generalized",
            Family::Unspecified => "unspecified",
        }
    }

    /// Parse a family name as used on the command line.
    pub fn from_name(name: &str) -> Option<Family> {
        match name {
            "frobenius" => Some(Family::Frobenius),
            "fiedler" => Some(Family::Fiedler),
            "striped" => Some(Family::Striped),
            "generalized" => Some(Family::Generalized),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a kappa value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum KappaSource {
    /// One of the closed-form expressions.
    ClosedForm,
    /// Exact inversion of the constructed matrix.
    Oracle,
}

impl KappaSource {
    pub fn name(&self) -> &'static str {
        match self {
            KappaSource::ClosedForm => "closed-form",
            KappaSource::Oracle => "oracle",
        }
    }
}

impl fmt::Display for KappaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One construction parameter value, ordered for deterministic tie-breaks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamValue {
    Int(i64),
    IntList(Vec<i64>),
    Rat(Rational),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{}", v),
            ParamValue::IntList(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            ParamValue::Rat(v) => write!(f, "{}", v),
        }
    }
}

/// Ordered parameter list, e.g. `t=3` or `ell=4,a=1/2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Params(pub Vec<(&'static str, ParamValue)>);

impl Params {
    pub fn none() -> Self {
        Params(Vec::new())
    }

    pub fn single(name: &'static str, value: ParamValue) -> Self {
        Params(vec![(name, value)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(name, value)| format!("{}={}", name, value))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Exact norms and condition number of one constructed matrix.
///
/// `kappa_sq = norm_sq * inv_norm_sq` holds exactly by construction; the
/// float rendering is `sqrt` of the exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub family: Family,
    pub params: Params,
    pub norm_sq: Rational,
    pub inv_norm_sq: Rational,
    pub kappa_sq: Rational,
    pub source: KappaSource,
}

impl ConditionReport {
    pub fn new(
        family: Family,
        params: Params,
        norm_sq: Rational,
        inv_norm_sq: Rational,
        source: KappaSource,
    ) -> Self {
        let kappa_sq = norm_sq.clone() * &inv_norm_sq;
        ConditionReport { family, params, norm_sq, inv_norm_sq, kappa_sq, source }
    }

    /// kappa as a double: sqrt of the exact kappa^2.
    pub fn kappa_float(&self) -> f64 {
        sqrt_f64(&self.kappa_sq)
    }

    pub fn with_family(mut self, family: Family, params: Params) -> Self {
        self.family = family;
        self.params = params;
        self
    }

    /// Ordering used by recommendations: exact kappa^2 first, then the
    /// family preference order, then lexicographic parameters.
    pub fn recommendation_order(&self, other: &ConditionReport) -> Ordering {
        self.kappa_sq
            .cmp(&other.kappa_sq)
            .then_with(|| self.family.cmp(&other.family))
            .then_with(|| self.params.cmp(&other.params))
    }
}

/// Measure a matrix with the inversion oracle: exact ||M||^2, ||M^{-1}||^2,
/// kappa^2. Fails with `Singular` when the matrix is not invertible.
pub fn condition_report(m: &LabeledMatrix) -> Result<ConditionReport> {
    let inverse = invert(m)?;
    Ok(ConditionReport::new(
        Family::Unspecified,
        Params::none(),
        m.frobenius_norm_sq(),
        inverse.frobenius_norm_sq(),
        KappaSource::Oracle,
    ))
}
