//! Family enumeration, exact condition comparison, and recommendation.

use companion_core::generalized::{m_inv_norm_sq_printed, m_norm_sq_closed, MSpec};
use companion_core::fiedler::fiedler_inv_norm_sq;
use companion_core::striped::striped_inv_norm_sq;
use companion_core::{
    all_stripe_tuples, build_frobenius, build_m, build_striped, condition_report,
    lattice_to_hessenberg, path_with_initial_step, unit_sparse_norm_sq, ConditionReport, Family,
    KappaSource, MonicPolynomial, ParamValue, Params, Rational, StripeTuple,
};
use num_traits::{One, Zero};

use crate::CliError;

/// Which Fiedler step sizes to evaluate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepSelection {
    All,
    List(Vec<usize>),
}

/// Which stripe tuples to evaluate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TupleSelection {
    AllValid,
    List(Vec<StripeTuple>),
}

/// Everything `analyze` needs; grids default to the documented enumerations.
#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub polynomial: MonicPolynomial,
    pub families: Vec<Family>,
    pub fiedler_steps: StepSelection,
    pub stripe_tuples: TupleSelection,
    /// Perturbation values for the generalized family; `None` picks
    /// {c_ell, 0, 1, -1, c_ell/2, -c_ell/2} per ell.
    pub a_grid: Option<Vec<Rational>>,
    /// Inclusive ell range; `None` means every valid ell.
    pub ell_range: Option<(usize, usize)>,
}

impl AnalysisRequest {
    /// A request over the given families with default enumerations.
    pub fn new(polynomial: MonicPolynomial, families: Vec<Family>) -> Result<Self, CliError> {
        if families.is_empty() {
            return Err(CliError::Infeasible("empty family set".to_string()));
        }
        let mut families: Vec<Family> =
            families.into_iter().filter(|f| *f != Family::Unspecified).collect();
        families.sort();
        families.dedup();
        Ok(AnalysisRequest {
            polynomial,
            families,
            fiedler_steps: StepSelection::All,
            stripe_tuples: TupleSelection::AllValid,
            a_grid: None,
            ell_range: None,
        })
    }

    pub fn all_families(polynomial: MonicPolynomial) -> Self {
        AnalysisRequest::new(
            polynomial,
            vec![Family::Frobenius, Family::Fiedler, Family::Striped, Family::Generalized],
        )
        .expect("nonempty family set")
    }
}

/// One output row: a measurement, or a named reason the combination was
/// skipped.
#[derive(Debug, Clone)]
pub enum ReportRow {
    Computed(ConditionReport),
    Skipped { family: Family, params: Params, reason: String },
}

impl ReportRow {
    pub fn family(&self) -> Family {
        match self {
            ReportRow::Computed(r) => r.family,
            ReportRow::Skipped { family, .. } => *family,
        }
    }

    pub fn params(&self) -> &Params {
        match self {
            ReportRow::Computed(r) => &r.params,
            ReportRow::Skipped { params, .. } => params,
        }
    }

    fn sort_key(&self) -> (Family, Params, u8) {
        match self {
            ReportRow::Computed(r) => (
                r.family,
                r.params.clone(),
                if r.source == KappaSource::ClosedForm { 0 } else { 1 },
            ),
            ReportRow::Skipped { family, params, .. } => (*family, params.clone(), 2),
        }
    }
}

/// The exact minimizer over all oracle measurements, with tie-breaks.
#[derive(Debug, Clone)]
pub struct Recommendation {
    pub best: ConditionReport,
    pub runners_up: Vec<ConditionReport>,
    pub tie_break: &'static str,
}

const TIE_BREAK_RULE: &str =
    "smallest exact kappa^2; ties prefer frobenius, fiedler, striped, generalized, \
     then lexicographically smallest parameters";

/// Full analysis result.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub polynomial: MonicPolynomial,
    pub rows: Vec<ReportRow>,
    pub recommendation: Recommendation,
}

/// Evaluate every requested (family, parameter) combination.
///
/// Each combination yields a closed-form row where a closed form exists under
/// its hypotheses and an oracle row whenever the matrix is invertible;
/// combinations whose hypotheses fail are reported as skipped, never errors.
/// The recommendation minimizes exact kappa^2 over the oracle rows.
pub fn analyze(req: &AnalysisRequest) -> Result<Analysis, CliError> {
    let p = &req.polynomial;
    let n = p.degree();
    let c0_zero = p.constant_term().is_zero();
    let c0_one = p.constant_term().is_one();
    let mut rows: Vec<ReportRow> = Vec::new();

    for family in &req.families {
        if c0_zero {
            rows.push(ReportRow::Skipped {
                family: *family,
                params: Params::none(),
                reason: "c_0 = 0 makes every companion matrix singular".to_string(),
            });
            continue;
        }
        match family {
            Family::Frobenius => analyze_frobenius(p, &mut rows),
            Family::Fiedler => analyze_fiedler(p, &req.fiedler_steps, &mut rows),
            Family::Striped => analyze_striped(p, c0_one, &req.stripe_tuples, &mut rows),
            Family::Generalized => {
                analyze_generalized(p, c0_one, req.a_grid.as_deref(), req.ell_range, &mut rows)
            }
            Family::Unspecified => {}
        }
        if !rows.iter().any(|r| r.family() == *family) {
            rows.push(ReportRow::Skipped {
                family: *family,
                params: Params::none(),
                reason: format!("no evaluable parameters for degree {}", n),
            });
        }
    }

    rows.sort_by_key(|row| row.sort_key());

    let mut oracle_rows: Vec<ConditionReport> = rows
        .iter()
        .filter_map(|row| match row {
            ReportRow::Computed(r) if r.source == KappaSource::Oracle => Some(r.clone()),
            _ => None,
        })
        .collect();
    if oracle_rows.is_empty() {
        let reasons: Vec<String> = rows
            .iter()
            .filter_map(|row| match row {
                ReportRow::Skipped { family, reason, .. } => {
                    Some(format!("{}: {}", family, reason))
                }
                _ => None,
            })
            .collect();
        return Err(CliError::Infeasible(format!(
            "no feasible family ({})",
            reasons.join("; ")
        )));
    }
    oracle_rows.sort_by(|a, b| a.recommendation_order(b));
    let best = oracle_rows.remove(0);
    let recommendation =
        Recommendation { best, runners_up: oracle_rows, tie_break: TIE_BREAK_RULE };
    Ok(Analysis { polynomial: p.clone(), rows, recommendation })
}

fn analyze_frobenius(p: &MonicPolynomial, rows: &mut Vec<ReportRow>) {
    let n = p.degree();
    rows.push(ReportRow::Computed(ConditionReport::new(
        Family::Frobenius,
        Params::none(),
        unit_sparse_norm_sq(p),
        fiedler_inv_norm_sq(p, n - 1).expect("c_0 != 0 and n-1 in range"),
        KappaSource::ClosedForm,
    )));
    let oracle = condition_report(build_frobenius(p).matrix())
        .expect("companion matrix with c_0 != 0 is invertible");
    rows.push(ReportRow::Computed(oracle.with_family(Family::Frobenius, Params::none())));
}

fn analyze_fiedler(p: &MonicPolynomial, steps: &StepSelection, rows: &mut Vec<ReportRow>) {
    let n = p.degree();
    let selected: Vec<usize> = match steps {
        StepSelection::All => (1..n).collect(),
        StepSelection::List(list) => list.clone(),
    };
    for t in selected {
        let params = Params::single("t", ParamValue::Int(t as i64));
        if t == 0 || t >= n {
            rows.push(ReportRow::Skipped {
                family: Family::Fiedler,
                params,
                reason: format!("step size must be in 1..={}", n - 1),
            });
            continue;
        }
        rows.push(ReportRow::Computed(ConditionReport::new(
            Family::Fiedler,
            params.clone(),
            unit_sparse_norm_sq(p),
            fiedler_inv_norm_sq(p, t).expect("step validated"),
            KappaSource::ClosedForm,
        )));
        let form = lattice_to_hessenberg(&path_with_initial_step(n, t).expect("step validated"), p);
        let oracle =
            condition_report(form.matrix()).expect("companion matrix with c_0 != 0 is invertible");
        rows.push(ReportRow::Computed(oracle.with_family(Family::Fiedler, params)));
    }
}

/// Stripe tuples are enumerated exhaustively only up to this degree.
pub const STRIPE_ENUMERATION_CAP: usize = 12;

fn analyze_striped(
    p: &MonicPolynomial,
    c0_one: bool,
    tuples: &TupleSelection,
    rows: &mut Vec<ReportRow>,
) {
    let n = p.degree();
    let selected: Vec<StripeTuple> = match tuples {
        TupleSelection::AllValid => {
            if n > STRIPE_ENUMERATION_CAP {
                rows.push(ReportRow::Skipped {
                    family: Family::Striped,
                    params: Params::none(),
                    reason: format!(
                        "tuple enumeration is capped at degree {}; pass explicit tuples",
                        STRIPE_ENUMERATION_CAP
                    ),
                });
                return;
            }
            all_stripe_tuples(n)
        }
        TupleSelection::List(list) => list.clone(),
    };
    let mut closed_suppressed = false;
    for tuple in selected {
        let params = Params::single(
            "tuple",
            ParamValue::IntList(tuple.parts().iter().map(|&t| t as i64).collect()),
        );
        let s = match build_striped(p, &tuple) {
            Ok(s) => s,
            Err(e) => {
                rows.push(ReportRow::Skipped {
                    family: Family::Striped,
                    params,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        if let Some((k, m)) = tuple.equal_shape() {
            if c0_one {
                rows.push(ReportRow::Computed(ConditionReport::new(
                    Family::Striped,
                    params.clone(),
                    unit_sparse_norm_sq(p),
                    striped_inv_norm_sq(p, k, m).expect("shape and c_0 validated"),
                    KappaSource::ClosedForm,
                )));
            } else {
                closed_suppressed = true;
            }
        }
        let oracle =
            condition_report(s.matrix()).expect("companion matrix with c_0 != 0 is invertible");
        rows.push(ReportRow::Computed(oracle.with_family(Family::Striped, params)));
    }
    if closed_suppressed {
        rows.push(ReportRow::Skipped {
            family: Family::Striped,
            params: Params::none(),
            reason: "closed form requires c_0 = 1; oracle values only".to_string(),
        });
    }
}

fn analyze_generalized(
    p: &MonicPolynomial,
    c0_one: bool,
    a_grid: Option<&[Rational]>,
    ell_range: Option<(usize, usize)>,
    rows: &mut Vec<ReportRow>,
) {
    let n = p.degree();
    if n < 5 {
        rows.push(ReportRow::Skipped {
            family: Family::Generalized,
            params: Params::none(),
            reason: "perturbed family needs degree >= 5 (ell in 3..=n-2)".to_string(),
        });
        return;
    }
    let (lo, hi) = match ell_range {
        Some((lo, hi)) => (lo.max(3), hi.min(n - 2)),
        None => (3, n - 2),
    };
    if lo > hi {
        rows.push(ReportRow::Skipped {
            family: Family::Generalized,
            params: Params::none(),
            reason: format!("requested ell range is empty within 3..={}", n - 2),
        });
        return;
    }
    if !c0_one {
        rows.push(ReportRow::Skipped {
            family: Family::Generalized,
            params: Params::none(),
            reason: "closed form requires c_0 = 1; oracle values only".to_string(),
        });
    }
    for ell in lo..=hi {
        let values: Vec<Rational> = match a_grid {
            Some(grid) => grid.to_vec(),
            None => {
                let c_ell = p.coeff(ell).clone();
                let half = c_ell.clone() / companion_core::rat_int(2);
                let mut grid = vec![
                    c_ell.clone(),
                    Rational::zero(),
                    Rational::one(),
                    -Rational::one(),
                    half.clone(),
                    -half,
                ];
                grid.sort();
                grid.dedup();
                grid
            }
        };
        for a in values {
            let params = Params(vec![
                ("ell", ParamValue::Int(ell as i64)),
                ("a", ParamValue::Rat(a.clone())),
            ]);
            let spec = MSpec::new(a.clone(), ell);
            if c0_one {
                rows.push(ReportRow::Computed(ConditionReport::new(
                    Family::Generalized,
                    params.clone(),
                    m_norm_sq_closed(p, &spec).expect("ell and c_0 validated"),
                    m_inv_norm_sq_printed(p, &spec).expect("ell and c_0 validated"),
                    KappaSource::ClosedForm,
                )));
            }
            let m = build_m(p, &spec).expect("ell validated");
            let oracle =
                condition_report(&m).expect("perturbed matrix with c_0 != 0 is invertible");
            rows.push(ReportRow::Computed(oracle.with_family(Family::Generalized, params)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use companion_core::{rat, rat_int};

    #[test]
    fn degree_nine_recommends_the_equal_stripes() {
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 3, 8, 5, 2, 6, 8]).unwrap();
        let req =
            AnalysisRequest::new(p, vec![Family::Fiedler, Family::Striped]).unwrap();
        let analysis = analyze(&req).unwrap();
        let best = &analysis.recommendation.best;
        assert_eq!(best.family, Family::Striped);
        assert_eq!(best.params.to_string(), "tuple=(3,3,3)");
        assert_eq!(best.kappa_sq, rat_int(14112));
        assert!(analysis
            .recommendation
            .runners_up
            .iter()
            .all(|r| r.kappa_sq >= rat_int(14112)));
        let fiedler_kappa: Vec<&ConditionReport> = analysis
            .rows
            .iter()
            .filter_map(|row| match row {
                ReportRow::Computed(r) if r.family == Family::Fiedler => Some(r),
                _ => None,
            })
            .collect();
        assert!(fiedler_kappa.iter().all(|r| r.kappa_sq == rat_int(50176)));
    }

    #[test]
    fn all_kappas_tie_on_power_plus_one() {
        let p = MonicPolynomial::power_plus_one(6).unwrap();
        let analysis = analyze(&AnalysisRequest::all_families(p)).unwrap();
        let best = &analysis.recommendation.best;
        assert_eq!(best.family, Family::Frobenius);
        assert_eq!(best.kappa_sq, rat_int(36));
        // Every family attains the same minimum.
        for family in [Family::Fiedler, Family::Striped, Family::Generalized] {
            let min = analysis
                .rows
                .iter()
                .filter_map(|row| match row {
                    ReportRow::Computed(r)
                        if r.family == family && r.source == KappaSource::Oracle =>
                    {
                        Some(r.kappa_sq.clone())
                    }
                    _ => None,
                })
                .min()
                .unwrap();
            assert_eq!(min, rat_int(36));
        }
    }

    #[test]
    fn structured_instance_favors_stripes() {
        let p = MonicPolynomial::from_ints(&[1, 2, 2, 4, 4, 8]).unwrap();
        let req = AnalysisRequest::new(p, vec![Family::Fiedler, Family::Striped]).unwrap();
        let analysis = analyze(&req).unwrap();
        let best = &analysis.recommendation.best;
        assert_eq!(best.family, Family::Striped);
        let fiedler_best = analysis
            .recommendation
            .runners_up
            .iter()
            .find(|r| r.family == Family::Fiedler)
            .unwrap();
        assert_eq!(
            fiedler_best.kappa_sq.clone() / best.kappa_sq.clone(),
            rat(110, 30)
        );
    }

    #[test]
    fn zero_constant_term_is_infeasible() {
        let p = MonicPolynomial::from_ints(&[0, 1, 1]).unwrap();
        let err = analyze(&AnalysisRequest::all_families(p)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn non_unit_constant_skips_closed_forms_not_oracles() {
        let p = MonicPolynomial::from_ints(&[5, 4, 3, 2]).unwrap();
        let analysis =
            analyze(&AnalysisRequest::new(p, vec![Family::Striped]).unwrap()).unwrap();
        let has_closed = analysis.rows.iter().any(|row| {
            matches!(row, ReportRow::Computed(r) if r.source == KappaSource::ClosedForm)
        });
        let oracle_count = analysis
            .rows
            .iter()
            .filter(|row| {
                matches!(row, ReportRow::Computed(r) if r.source == KappaSource::Oracle)
            })
            .count();
        assert!(!has_closed);
        assert_eq!(oracle_count, all_stripe_tuples(4).len());
        // The suppressed closed form is announced, not silent.
        assert!(analysis.rows.iter().any(|row| matches!(
            row,
            ReportRow::Skipped { family: Family::Striped, reason, .. }
                if reason.contains("c_0 = 1")
        )));
    }

    #[test]
    fn small_degree_skips_generalized_family() {
        let p = MonicPolynomial::from_ints(&[1, 2, 3]).unwrap();
        let analysis = analyze(&AnalysisRequest::all_families(p)).unwrap();
        assert!(analysis.rows.iter().any(|row| matches!(
            row,
            ReportRow::Skipped { family: Family::Generalized, .. }
        )));
        assert_eq!(analysis.recommendation.best.family, Family::Frobenius);
    }

    #[test]
    fn rows_are_deterministically_ordered() {
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 4, 5]).unwrap();
        let a = analyze(&AnalysisRequest::all_families(p.clone())).unwrap();
        let b = analyze(&AnalysisRequest::all_families(p)).unwrap();
        let render = |analysis: &Analysis| {
            analysis
                .rows
                .iter()
                .map(|row| format!("{:?}", row))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(render(&a), render(&b));
    }
}
