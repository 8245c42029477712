use std::io::Read;

use foliation_algebra::{parse_polynomial, GaussRat, MVPoly};
use foliation_core::germ::default_variable_names;
use foliation_core::{
    classify, corner_has_no_transverse_separatrix, effectivity_count, exceptional_multiplicity, formal_separatrix,
    parse_divisor, parse_point, parse_vector_field, resolve_simple, seidenberg_reduce, weakly_reduced_check, Blowup,
    CoreError, CornerVerdict, EffectivityVerdict, LogDivisor, SingularityReport, VectorFieldGerm,
    WeaklyReducedVerdict,
};
use foliation_nevanlinna::{
    characteristic_t, fmt_verify, jensen_verify, log_derivative_check, multiplicity_bookkeeping, parse_curve,
    tautological_pairing, FormSpec, IdealData, Meromorphic, ParametrizedCurve, QuadratureConfig, TangentMetric,
    ZeroTarget,
};
use serde::Serialize;

use crate::acceptance;
use crate::error::CliError;
use crate::options::{
    parse_radii, Command, FormChoice, GlobalOptions, Input, Mode, NevanlinnaOptions, Quantity, Target,
};
use crate::report::{series_csv, Report};

/// Largest Jensen residual accepted by `nevanlinna --mode jensen`.
pub const JENSEN_TOLERANCE: f64 = 1e-6;

pub fn dispatch(command: &Command, opts: &GlobalOptions) -> Result<Report, CliError> {
    match command {
        Command::Classify { input, divisor } => {
            let v = germ(input)?;
            let d = divisor.as_deref().map(parse_divisor).transpose()?;
            Report::new("classify", &classify(&v, d.as_ref())?)
        }
        Command::Blowup { input, divisor } => blowup(&germ(input)?, divisor.as_deref()),
        Command::Resolve { input, divisor, target } => {
            let v = germ(input)?;
            let tower = match target {
                Target::Reduced => {
                    if divisor.is_some() {
                        return Err(CliError::Usage("--divisor needs --target simple".to_string()));
                    }
                    seidenberg_reduce(&v, opts.depth)?
                }
                Target::Simple => {
                    let d = divisor.as_deref().map(parse_divisor).transpose()?.unwrap_or_else(LogDivisor::empty);
                    resolve_simple(&v, &d, opts.depth)?
                }
            };
            Report::new("resolve", &tower)
        }
        Command::WeaklyReduced { input } => {
            let report = weakly_reduced_check(&germ(input)?, opts.depth);
            let refuted = matches!(report.verdict, WeaklyReducedVerdict::Refuted(_));
            Ok(Report::new("weakly-reduced", &report)?.refuted_if(refuted))
        }
        Command::Separatrix { input, direction, divisor } => {
            separatrix(&germ(input)?, *direction, divisor.as_deref(), opts.order)
        }
        Command::Nevanlinna { input, mode, extra } => nevanlinna(&read_input(input)?, *mode, extra, opts),
        Command::Effectivity { n, k, alpha } => effectivity(*n, *k, *alpha),
        Command::PlotData { input, quantity, extra } => plot_data(&read_input(input)?, *quantity, extra, opts),
        Command::Selftest => {
            let outcomes = acceptance::run_all(opts.seed);
            let failed = outcomes.iter().any(|o| !o.pass);
            Ok(Report::new("selftest", &outcomes)?.refuted_if(failed))
        }
    }
}

fn read_input(input: &Input) -> Result<String, CliError> {
    let text = &input.input;
    if text == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(s)
    } else if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    } else {
        Ok(text.clone())
    }
}

fn germ(input: &Input) -> Result<VectorFieldGerm, CliError> {
    Ok(parse_vector_field(&read_input(input)?)?)
}

#[derive(Serialize)]
struct PointReport {
    chart: usize,
    coords: Vec<GaussRat>,
    germ: String,
    divisor: String,
    report: SingularityReport,
}

#[derive(Serialize)]
struct BlowupReport<'a> {
    blowup: &'a Blowup,
    points: Vec<PointReport>,
}

fn blowup(v: &VectorFieldGerm, divisor: Option<&str>) -> Result<Report, CliError> {
    let d = divisor.map(parse_divisor).transpose()?.unwrap_or_else(LogDivisor::empty);
    let b = Blowup::new(v, &d, 1)?;
    let mut points = Vec::new();
    for p in &b.locus.points {
        let (g, gd) = b.point_germ(p);
        points.push(PointReport {
            chart: p.chart.number(),
            coords: p.coords.clone(),
            germ: g.to_text(),
            divisor: gd.to_text(),
            report: classify(&g, Some(&gd))?,
        });
    }
    Report::new("blowup", &BlowupReport { blowup: &b, points })
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SeparatrixEntry {
    Solved {
        direction: usize,
        outcome: foliation_core::SeparatrixOutcome,
    },
    Skipped {
        direction: usize,
        reason: String,
    },
}

fn separatrix(
    v: &VectorFieldGerm,
    direction: Option<usize>,
    divisor: Option<&str>,
    order: usize,
) -> Result<Report, CliError> {
    if let Some(d) = divisor.map(parse_divisor).transpose()? {
        if d.len() >= 2 {
            let verdict = corner_has_no_transverse_separatrix(v, &d, order)?;
            let refuted = matches!(verdict, CornerVerdict::CounterexampleCandidate { .. });
            return Ok(Report::new("separatrix", &verdict)?.refuted_if(refuted));
        }
    }
    let mut entries = Vec::new();
    match direction {
        Some(k) => entries.push(SeparatrixEntry::Solved {
            direction: k,
            outcome: formal_separatrix(v, k, order)?,
        }),
        None => {
            for k in 1..=v.dim() {
                match formal_separatrix(v, k, order) {
                    Ok(outcome) => entries.push(SeparatrixEntry::Solved { direction: k, outcome }),
                    Err(e @ CoreError::ZeroEigenvalueDirection(_)) => entries.push(SeparatrixEntry::Skipped {
                        direction: k,
                        reason: e.to_string(),
                    }),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Report::new("separatrix", &entries)
}

#[derive(Serialize)]
struct EffectivityReport {
    n: u32,
    k: u64,
    alpha: u64,
    count: foliation_core::EffectivityCount,
    /// Order of `z₂` along the last exceptional divisor of `k` blow-ups at
    /// the origin of the first chart.
    exceptional_multiplicity: u32,
}

/// `⌈(n!)^{1/n}⌉ + 1`.
pub fn default_alpha(n: u32) -> u64 {
    let factorial: u64 = (1..=u64::from(n)).product();
    foliation_core::blowup::ceil_root(factorial, n) + 1
}

fn effectivity(n: u32, k: u64, alpha: Option<u64>) -> Result<Report, CliError> {
    if n < 2 || k == 0 {
        return Err(CliError::Usage("effectivity needs n ≥ 2 and k ≥ 1".to_string()));
    }
    let alpha = alpha.unwrap_or_else(|| default_alpha(n));
    let count = effectivity_count(n, k, alpha);
    let dim = n as usize;
    let path = vec![0; k.min(64) as usize];
    let exceptional_multiplicity = exceptional_multiplicity(&MVPoly::var(dim, 1), &path)?;
    let refuted = count.verdict == EffectivityVerdict::NoSection;
    let report = EffectivityReport {
        n,
        k,
        alpha,
        count,
        exceptional_multiplicity,
    };
    Ok(Report::new("effectivity", &report)?.refuted_if(refuted))
}

fn quadrature(opts: &GlobalOptions) -> Result<QuadratureConfig, CliError> {
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {}", opts.tol)));
    }
    Ok(QuadratureConfig::from_env().with_tol(opts.tol))
}

/// Split at commas outside parentheses.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn ideal(curve: &ParametrizedCurve, extra: &NevanlinnaOptions) -> Result<Option<IdealData>, CliError> {
    let Some(text) = &extra.ideal else {
        if extra.ideal_zeros.is_some() {
            return Err(CliError::Usage("--ideal-zeros needs --ideal".to_string()));
        }
        return Ok(None);
    };
    let names = default_variable_names(curve.dim());
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    let generators = split_top_level(body, ',')
        .into_iter()
        .map(|g| parse_polynomial(g, &names))
        .collect::<Result<Vec<_>, _>>()?;
    let mut zeros = Vec::new();
    for item in extra.ideal_zeros.as_deref().map(|z| split_top_level(z, ';')).unwrap_or_default() {
        let (point, order) = item.rsplit_once(':').unwrap_or((item, "1"));
        let order: u32 = order
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad zero order in `{item}`")))?;
        let point = parse_point(point)?;
        let [a] = point.as_slice() else {
            return Err(CliError::Usage(format!("`{item}` is not a single parameter value")));
        };
        zeros.push((a.clone(), order));
    }
    Ok(Some(IdealData::new(curve, generators, zeros)?))
}

fn form(extra: &NevanlinnaOptions) -> FormSpec {
    match extra.form {
        Some(FormChoice::Euclidean) => FormSpec::Euclidean,
        _ => FormSpec::FubiniStudy,
    }
}

fn metric(extra: &NevanlinnaOptions) -> TangentMetric {
    match extra.form {
        Some(FormChoice::FubiniStudy) => TangentMetric::FubiniStudy,
        _ => TangentMetric::Euclidean,
    }
}

fn single_component(curve: &ParametrizedCurve, mode: &str) -> Result<(), CliError> {
    if curve.dim() != 1 {
        return Err(CliError::Usage(format!("{mode} expects a single function, got {} components", curve.dim())));
    }
    Ok(())
}

#[derive(Serialize)]
struct JensenSummary {
    tolerance: f64,
    reports: Vec<foliation_nevanlinna::JensenReport>,
    pass: bool,
}

fn nevanlinna(text: &str, mode: Mode, extra: &NevanlinnaOptions, opts: &GlobalOptions) -> Result<Report, CliError> {
    let curve = parse_curve(text)?;
    let grid = parse_radii(&opts.radii)?;
    let cfg = quadrature(opts)?;
    match mode {
        Mode::Profile => {
            let ideal = ideal(&curve, extra)?;
            let profile = characteristic_t(&curve, form(extra), &grid, ideal.as_ref(), &cfg)?;
            let csv = profile.to_csv();
            Ok(Report::new("nevanlinna", &profile)?.with_csv(csv))
        }
        Mode::Fmt => {
            let ideal = ideal(&curve, extra)?.unwrap_or_else(|| IdealData::unit(curve.dim()));
            let report = fmt_verify(&curve, &ideal, &grid, &cfg)?;
            let csv = report.profile.to_csv();
            let pass = report.pass;
            Ok(Report::new("nevanlinna", &report)?.with_csv(csv).refuted_if(!pass))
        }
        Mode::Jensen => {
            single_component(&curve, "jensen")?;
            let zeros: Vec<(GaussRat, u32)> = curve
                .declared_zeros()
                .iter()
                .filter(|z| matches!(z.target, ZeroTarget::Component { index: 0 } | ZeroTarget::Common))
                .map(|z| (z.at.clone(), z.order))
                .collect();
            let reports = grid
                .iter()
                .map(|r| jensen_verify(&curve.components()[0], &zeros, *r, &cfg))
                .collect::<Result<Vec<_>, _>>()?;
            let pass = reports.iter().all(|r| r.residual <= JENSEN_TOLERANCE);
            let rows: Vec<(f64, f64)> = reports.iter().map(|r| (r.radius, r.residual)).collect();
            let summary = JensenSummary {
                tolerance: JENSEN_TOLERANCE,
                reports,
                pass,
            };
            Ok(Report::new("nevanlinna", &summary)?
                .with_csv(series_csv("residual", &rows))
                .refuted_if(!pass))
        }
        Mode::Tautological => {
            let report = tautological_pairing(&curve, &grid, metric(extra), &cfg)?;
            let rows: Vec<(f64, f64)> = report.r_grid.iter().copied().zip(report.values.iter().copied()).collect();
            let violation = report.violation;
            Ok(Report::new("nevanlinna", &report)?
                .with_csv(series_csv("pairing", &rows))
                .refuted_if(violation))
        }
        Mode::LogDerivative => {
            single_component(&curve, "log-derivative")?;
            let mut g = Meromorphic::entire(curve.components()[0].clone());
            g.singular_points = curve.zeros(&ZeroTarget::Component { index: 0 });
            let report = log_derivative_check(&g, &grid, &cfg)?;
            let rows: Vec<(f64, f64)> = report.r_grid.iter().copied().zip(report.lhs.iter().copied()).collect();
            let pass = report.pass;
            Ok(Report::new("nevanlinna", &report)?
                .with_csv(series_csv("lhs", &rows))
                .refuted_if(!pass))
        }
        Mode::Bookkeeping => {
            let field = extra
                .field
                .as_deref()
                .ok_or_else(|| CliError::Usage("bookkeeping needs --field".to_string()))?;
            let v = parse_vector_field(field)?;
            let point = parse_point(&extra.at)?;
            let [t0] = point.as_slice() else {
                return Err(CliError::Usage("--at expects a single parameter value".to_string()));
            };
            let b = multiplicity_bookkeeping(&curve, &v, t0, opts.order)?;
            let ok = b.identity_holds && b.eta_plus_nu_nonnegative;
            Ok(Report::new("nevanlinna", &b)?.refuted_if(!ok))
        }
    }
}

#[derive(Serialize)]
struct Point {
    r: f64,
    value: f64,
}

#[derive(Serialize)]
struct Series {
    quantity: &'static str,
    points: Vec<Point>,
}

fn plot_data(text: &str, quantity: Quantity, extra: &NevanlinnaOptions, opts: &GlobalOptions) -> Result<Report, CliError> {
    let curve = parse_curve(text)?;
    let grid = parse_radii(&opts.radii)?;
    let cfg = quadrature(opts)?;
    let (name, rows): (&'static str, Vec<(f64, f64)>) = match quantity {
        Quantity::T | Quantity::N | Quantity::M => {
            let ideal = ideal(&curve, extra)?;
            let p = characteristic_t(&curve, form(extra), &grid, ideal.as_ref(), &cfg)?;
            if !p.is_converged() {
                return Ok(Report::new("plot-data", &p)?);
            }
            let (name, values) = match quantity {
                Quantity::T => ("T", &p.t_values),
                Quantity::N => ("N", &p.n_values),
                _ => ("m", &p.m_values),
            };
            (name, p.r_grid.iter().copied().zip(values.iter().copied()).collect())
        }
        Quantity::Fmt => {
            let ideal = ideal(&curve, extra)?.unwrap_or_else(|| IdealData::unit(curve.dim()));
            let rep = fmt_verify(&curve, &ideal, &grid, &cfg)?;
            ("T-N-m", rep.profile.r_grid.iter().copied().zip(rep.differences).collect())
        }
        Quantity::Tautological => {
            let rep = tautological_pairing(&curve, &grid, metric(extra), &cfg)?;
            ("pairing", rep.r_grid.into_iter().zip(rep.values).collect())
        }
    };
    let series = Series {
        quantity: name,
        points: rows.iter().map(|(r, value)| Point { r: *r, value: *value }).collect(),
    };
    Ok(Report::new("plot-data", &series)?.with_csv(series_csv(name, &rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_defaults() {
        assert_eq!(default_alpha(2), 3);
        assert_eq!(default_alpha(3), 3);
        assert_eq!(default_alpha(4), 4);
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top_level("x, (y + x*y), y^2", ','), vec!["x", "(y + x*y)", "y^2"]);
        assert_eq!(split_top_level("0:1; 1/2 + i:2", ';'), vec!["0:1", "1/2 + i:2"]);
    }
}
