use nonavg_core::bounds::{
    alpha, exponent_table_csv, obs41_csv, obs41_max, obs41_scan, ExponentRow, Obs41Max,
};
use nonavg_core::constructions::{bosznay, paraboloid, straus_pair, ConstructionMeta};
use nonavg_core::geometry::{
    chebyshev_linear_fit, chebyshev_linear_fit_exact, density_increment_search, depth_report,
    is_delta_convex, lemma22_check, tukey_depth, DepthReport, IncrementOptions, LinearFit,
    QuadraticOracle,
};
use nonavg_core::rational::{format_rational, parse_rational, Rational};
use nonavg_core::search::{
    big_h_exact, big_h_table_csv, h_exact, h_table, h_table_csv, max_non_averaging_box,
};
use nonavg_core::structure::{
    decode_base_h, embed_base_h, faithful_h_threshold, zonotope_round, Gap, ZonotopeInstance,
};
use nonavg_core::{erdos_straus_criterion, is_non_averaging, BoundingBox, Budgets, IntSet, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::args::{Bounds, Command, Construct, Geometry, Oracle, Structure};
use crate::io::{
    input_error, read_int_set, read_json, read_point_set, CliResult, Outcome, Payload,
};

pub fn run(command: &Command, budgets: &Budgets) -> CliResult<Outcome> {
    match command {
        Command::Construct(c) => construct(c, budgets),
        Command::Verify { input, criterion } => verify(input, *criterion, budgets),
        Command::Hmax { n, workers, table } => hmax(*n, *workers, *table, budgets),
        Command::BigHmax { n, table } => big_hmax(*n, *table, budgets),
        Command::Boxmax { dims, workers } => boxmax(dims, *workers, budgets),
        Command::Geometry(g) => geometry(g),
        Command::Structure(s) => structure(s, budgets),
        Command::Bounds(b) => bounds(b, budgets),
    }
}

/// One-dimensional points print as bare integers.
fn point_value(p: &[i64]) -> Value {
    match p {
        [x] => Value::from(*x),
        _ => Value::from(p.to_vec()),
    }
}

fn set_values(set: &IntSet) -> Vec<Value> {
    set.points().iter().map(|p| point_value(p)).collect()
}

fn rational_arg(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s)?)
}

#[derive(Serialize)]
struct ConstructOut<'a> {
    #[serde(flatten)]
    set: &'a IntSet,
    construction: &'a ConstructionMeta,
}

#[derive(Serialize)]
struct StrausOut {
    n: i64,
    c: String,
    b1: Vec<i64>,
    b2: Vec<i64>,
    condition_holds: bool,
}

fn construct(c: &Construct, budgets: &Budgets) -> CliResult<Outcome> {
    let built = match c {
        Construct::Bosznay { q } => bosznay(*q)?,
        Construct::Paraboloid { d, m } => paraboloid(*d, *m, budgets)?,
        Construct::StrausPair { n, c } => {
            let c = rational_arg(c)?;
            let pair = straus_pair(*n, &c)?;
            return Ok(Outcome::ok(Payload::json(&StrausOut {
                n: *n,
                c: format_rational(&c),
                b1: pair.b1.values()?,
                b2: pair.b2.values()?,
                condition_holds: pair.condition_holds,
            })));
        }
    };
    Ok(Outcome::ok(Payload::json(&ConstructOut {
        set: &built.set,
        construction: &built.meta,
    })))
}

#[derive(Serialize)]
struct WitnessOut {
    center: Value,
    subset: Vec<Value>,
}

#[derive(Serialize)]
struct ViolationOut {
    center: Value,
    a1: Vec<Value>,
    a2: Vec<Value>,
    common: Value,
}

#[derive(Serialize)]
struct CriterionOut {
    holds: bool,
    violation: Option<ViolationOut>,
}

#[derive(Serialize)]
struct VerifyOut {
    verdict: &'static str,
    size: usize,
    witness: Option<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    criterion: Option<CriterionOut>,
}

fn values_of(points: &[Point]) -> Vec<Value> {
    points.iter().map(|p| point_value(p)).collect()
}

fn verify(input: &str, criterion: bool, budgets: &Budgets) -> CliResult<Outcome> {
    let set = read_int_set(input)?;
    let witness = is_non_averaging(&set, budgets)?;
    let criterion = if criterion {
        let violation = erdos_straus_criterion(&set, budgets)?;
        Some(CriterionOut {
            holds: violation.is_none(),
            violation: violation.map(|v| ViolationOut {
                center: point_value(&v.center),
                a1: values_of(&v.a1),
                a2: values_of(&v.a2),
                common: point_value(&v.common),
            }),
        })
    } else {
        None
    };
    let holds = witness.is_none() && criterion.as_ref().is_none_or(|c| c.holds);
    let out = VerifyOut {
        verdict: if witness.is_none() {
            "non-averaging"
        } else {
            "averaging"
        },
        size: set.len(),
        witness: witness.map(|w| WitnessOut {
            center: point_value(&w.center),
            subset: values_of(&w.subset),
        }),
        criterion,
    };
    Ok(Outcome::verdict(Payload::json(&out), holds))
}

#[derive(Serialize)]
struct HOut {
    n: u64,
    h: usize,
    witness: Vec<i64>,
}

fn hmax(n: u64, workers: Option<usize>, table: bool, budgets: &Budgets) -> CliResult<Outcome> {
    if table {
        let rows = h_table(n, workers, budgets)?;
        return Ok(Outcome::ok(Payload::Csv(h_table_csv(&rows))));
    }
    let r = h_exact(n, workers, budgets)?;
    Ok(Outcome::ok(Payload::json(&HOut {
        n,
        h: r.optimum,
        witness: r.witness.values()?,
    })))
}

#[derive(Serialize)]
struct BigHOut {
    n: u64,
    #[serde(rename = "H")]
    big_h: usize,
    witness1: Vec<i64>,
    witness2: Vec<i64>,
}

fn big_hmax(n: u64, table: bool, budgets: &Budgets) -> CliResult<Outcome> {
    if n < 1 {
        return Err(input_error("n must be at least 1"));
    }
    if table {
        let rows = (1..=n)
            .map(|k| big_h_exact(k, budgets))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Outcome::ok(Payload::Csv(big_h_table_csv(&rows))));
    }
    let r = big_h_exact(n, budgets)?;
    Ok(Outcome::ok(Payload::json(&BigHOut {
        n,
        big_h: r.optimum,
        witness1: r.witness1.values()?,
        witness2: r.witness2.values()?,
    })))
}

#[derive(Serialize)]
struct BoxOut<'a> {
    dims: &'a [u64],
    size: usize,
    witness: Vec<Value>,
}

fn boxmax(dims: &[u64], workers: Option<usize>, budgets: &Budgets) -> CliResult<Outcome> {
    let r = max_non_averaging_box(dims, workers, budgets)?;
    Ok(Outcome::ok(Payload::json(&BoxOut {
        dims,
        size: r.optimum,
        witness: set_values(&r.witness),
    })))
}

#[derive(Serialize)]
struct DepthOut {
    point: Vec<String>,
    depth: usize,
}

#[derive(Serialize)]
struct DeltaOut<'a> {
    delta: String,
    delta_convex: bool,
    report: &'a DepthReport,
}

#[derive(Serialize)]
struct FitOut {
    exact: bool,
    slopes: Vec<Value>,
    intercept: Value,
    error: Value,
    extremal: Vec<usize>,
}

impl FitOut {
    fn exact(fit: LinearFit<Rational>) -> Self {
        let s = |r: &Rational| Value::from(format_rational(r));
        FitOut {
            exact: true,
            slopes: fit.slopes.iter().map(s).collect(),
            intercept: s(&fit.intercept),
            error: s(&fit.error),
            extremal: fit.extremal,
        }
    }

    fn float(fit: LinearFit<f64>) -> Self {
        FitOut {
            exact: false,
            slopes: fit.slopes.into_iter().map(Value::from).collect(),
            intercept: Value::from(fit.intercept),
            error: Value::from(fit.error),
            extremal: fit.extremal,
        }
    }
}

#[derive(Serialize)]
struct Lemma22Out {
    d: usize,
    m: u32,
    c: f64,
    oracle: QuadraticOracle,
    #[serde(flatten)]
    report: nonavg_core::geometry::Lemma22Report,
}

fn geometry(g: &Geometry) -> CliResult<Outcome> {
    match g {
        Geometry::Tukey {
            input,
            point,
            workers,
        } => {
            let set = read_point_set(input)?;
            match point {
                Some(coords) => {
                    let p = coords
                        .iter()
                        .map(|s| rational_arg(s))
                        .collect::<CliResult<Vec<_>>>()?;
                    let depth = tukey_depth(&p, &set)?;
                    Ok(Outcome::ok(Payload::json(&DepthOut {
                        point: p.iter().map(format_rational).collect(),
                        depth,
                    })))
                }
                None => Ok(Outcome::ok(Payload::json(&depth_report(&set, *workers)?))),
            }
        }
        Geometry::Delta {
            input,
            delta,
            workers,
        } => {
            let set = read_point_set(input)?;
            let delta = rational_arg(delta)?;
            let (holds, report) = is_delta_convex(&set, &delta, *workers)?;
            let out = DeltaOut {
                delta: format_rational(&delta),
                delta_convex: holds,
                report: &report,
            };
            Ok(Outcome::verdict(Payload::json(&out), holds))
        }
        Geometry::Fit { input } => fit(input),
        Geometry::Lemma22 {
            d,
            m,
            c,
            oracle,
            fraction,
            refine,
            seed,
            workers,
        } => {
            if *d < 2 {
                return Err(input_error("d must be at least 2"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let h = match oracle {
                Oracle::Linear => QuadraticOracle::linear(d - 1, *c),
                Oracle::Square => QuadraticOracle::square(d - 1, *c),
                Oracle::Random => QuadraticOracle::random(d - 1, *c, &mut rng),
            };
            let cells = sample_cells(*d, *m, &rational_arg(fraction)?, &mut rng)?;
            let report = lemma22_check(
                &|x: &[f64]| h.eval(x),
                *d,
                *m,
                *c,
                &cells,
                *refine,
                *workers,
            )?;
            let pass = report.pass;
            let out = Lemma22Out {
                d: *d,
                m: *m,
                c: *c,
                oracle: h,
                report,
            };
            Ok(Outcome::verdict(Payload::json(&out), pass).seeded(*seed))
        }
        Geometry::Increment {
            input,
            min,
            max,
            eps,
            max_level,
            no_caps,
            radius,
        } => {
            let set = read_int_set(input)?;
            let bbox = set
                .bounding_box()
                .ok_or_else(|| input_error("empty point set"))?;
            let omega = BoundingBox::new(
                min.clone().unwrap_or(bbox.min),
                max.clone().unwrap_or(bbox.max),
            )?;
            let options = IncrementOptions {
                max_level: *max_level,
                caps: !no_caps,
                direction_radius: *radius,
            };
            let report = density_increment_search(&set, &omega, &rational_arg(eps)?, &options)?;
            Ok(Outcome::ok(Payload::json(&report)))
        }
    }
}

/// A random `fraction` of `[m]^(d-1)`, at least one cell, sorted.
fn sample_cells(
    d: usize,
    m: u32,
    fraction: &Rational,
    rng: &mut ChaCha8Rng,
) -> CliResult<Vec<Vec<u32>>> {
    let total = (m as usize)
        .checked_pow(d as u32 - 1)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| input_error("too many cells"))?;
    if !(fraction > &Rational::from_integer(0.into())
        && fraction <= &Rational::from_integer(1.into()))
    {
        return Err(input_error("fraction must lie in (0, 1]"));
    }
    let wanted = (fraction * Rational::from_integer(total.into()))
        .ceil()
        .to_integer();
    let count = usize::try_from(wanted).unwrap_or(total).clamp(1, total);
    let mut picked = rand::seq::index::sample(rng, total, count).into_vec();
    picked.sort_unstable();
    Ok(picked
        .into_iter()
        .map(|mut idx| {
            (0..d - 1)
                .map(|_| {
                    let v = (idx % m as usize) as u32 + 1;
                    idx /= m as usize;
                    v
                })
                .collect()
        })
        .collect())
}

fn fit(input: &str) -> CliResult<Outcome> {
    let value: Value = read_json(input)?;
    let samples = match value {
        Value::Object(mut o) => o
            .remove("samples")
            .ok_or_else(|| input_error("missing \"samples\""))?,
        v => v,
    };
    let samples = samples
        .as_array()
        .ok_or_else(|| input_error("samples must be an array of [x, value] pairs"))?;
    let mut raw = Vec::new();
    for s in samples {
        let pair = s
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| input_error("each sample must be [x, value]"))?;
        let x = match &pair[0] {
            Value::Array(xs) => xs.clone(),
            other => vec![other.clone()],
        };
        raw.push((x, pair[1].clone()));
    }
    let is_float = |v: &Value| v.is_f64();
    if raw
        .iter()
        .any(|(x, h)| x.iter().any(is_float) || is_float(h))
    {
        let num = |v: &Value| -> CliResult<f64> {
            match v {
                Value::Number(n) => n.as_f64().ok_or_else(|| input_error("bad number")),
                Value::String(s) => Ok(nonavg_core::rational::to_f64(&rational_arg(s)?)),
                _ => Err(input_error(
                    "sample entries must be numbers or \"p/q\" strings",
                )),
            }
        };
        let samples = raw
            .iter()
            .map(|(x, h)| Ok((x.iter().map(num).collect::<CliResult<Vec<_>>>()?, num(h)?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Outcome::ok(Payload::json(&FitOut::float(
            chebyshev_linear_fit(&samples)?,
        ))))
    } else {
        let num = |v: &Value| -> CliResult<Rational> {
            match v {
                Value::Number(n) => rational_arg(&n.to_string()),
                Value::String(s) => rational_arg(s),
                _ => Err(input_error(
                    "sample entries must be numbers or \"p/q\" strings",
                )),
            }
        };
        let samples = raw
            .iter()
            .map(|(x, h)| Ok((x.iter().map(num).collect::<CliResult<Vec<_>>>()?, num(h)?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Outcome::ok(Payload::json(&FitOut::exact(
            chebyshev_linear_fit_exact(&samples)?,
        ))))
    }
}

#[derive(Serialize)]
struct DilationOut {
    c: String,
    gap: Gap,
    size: usize,
}

#[derive(Serialize)]
struct GapOut {
    ambient_dim: usize,
    rank: usize,
    volume: u128,
    size: usize,
    proper: bool,
    homogeneous: bool,
    base_coefficients: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dilation: Option<DilationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identification: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct EmbedOut {
    h: i64,
    threshold: i64,
    faithful: bool,
    embedded: Vec<i64>,
    round_trip: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    non_averaging: Option<[bool; 2]>,
}

fn structure(s: &Structure, budgets: &Budgets) -> CliResult<Outcome> {
    match s {
        Structure::GapCheck {
            input,
            dilate,
            identify,
        } => {
            let gap: Gap = read_json(input)?;
            let dilation = match dilate {
                Some(c) => {
                    let c = rational_arg(c)?;
                    let dilated = gap.dilate(&c)?;
                    Some(DilationOut {
                        c: format_rational(&c),
                        size: dilated.enumerate(budgets)?.len(),
                        gap: dilated,
                    })
                }
                None => None,
            };
            let identification = match identify {
                Some(p) => Some(gap.identification(p, budgets)?),
                None => None,
            };
            let out = GapOut {
                ambient_dim: gap.ambient_dim(),
                rank: gap.rank(),
                volume: gap.volume()?,
                size: gap.enumerate(budgets)?.len(),
                proper: gap.is_proper(budgets)?,
                homogeneous: gap.is_homogeneous(),
                base_coefficients: gap
                    .base_coefficients()
                    .map(|m| m.iter().map(ToString::to_string).collect()),
                dilation,
                identification,
            };
            Ok(Outcome::ok(Payload::json(&out)))
        }
        Structure::Embed {
            input,
            h,
            check_averaging,
        } => {
            let set = read_int_set(input)?;
            let threshold = faithful_h_threshold(&set)?;
            let h = h.unwrap_or(threshold);
            let embedded = embed_base_h(&set, h)?;
            let round_trip = decode_base_h(&embedded, set.dim(), h)? == set;
            let non_averaging = if *check_averaging {
                Some([
                    is_non_averaging(&set, budgets)?.is_none(),
                    is_non_averaging(&embedded, budgets)?.is_none(),
                ])
            } else {
                None
            };
            let holds = round_trip && non_averaging.is_none_or(|[a, b]| a == b);
            let out = EmbedOut {
                h,
                threshold,
                faithful: h >= threshold,
                embedded: embedded.values()?,
                round_trip,
                non_averaging,
            };
            Ok(Outcome::verdict(Payload::json(&out), holds))
        }
        Structure::Zonotope { input, seed } => {
            let inst: ZonotopeInstance = read_json(input)?;
            let r = zonotope_round(&inst, *seed, budgets.retries)?;
            Ok(Outcome::ok(Payload::json(&r)).seeded(*seed))
        }
    }
}

fn bounds(b: &Bounds, budgets: &Budgets) -> CliResult<Outcome> {
    match b {
        Bounds::Alpha { d_max } => {
            let mut csv = String::from("d,alpha\n");
            for d in 1..=*d_max {
                csv.push_str(&format!("{d},{}\n", format_rational(&alpha(d)?)));
            }
            Ok(Outcome::ok(Payload::Csv(csv)))
        }
        Bounds::Obs41 {
            zeta,
            eps,
            steps,
            eps_ratio,
            d_max,
            gap_max,
        } => {
            let rows: Vec<Obs41Max> = match zeta {
                Some(z) => {
                    let z = rational_arg(z)?;
                    let e = match eps {
                        Some(e) => rational_arg(e)?,
                        None => &z / Rational::from_integer(100.into()),
                    };
                    vec![obs41_max(&z, &e, *d_max, *gap_max)?]
                }
                None => obs41_scan(*steps, &rational_arg(eps_ratio)?, *d_max, *gap_max)?,
            };
            let holds = rows.iter().all(Obs41Max::below_one);
            Ok(Outcome::verdict(Payload::Csv(obs41_csv(&rows)), holds))
        }
        Bounds::Exponents {
            bosznay: qs,
            paraboloid: ps,
            h_max,
            verify,
        } => {
            let check = verify.then_some(budgets);
            let mut rows = Vec::new();
            for &q in qs {
                rows.push(ExponentRow::from_construction(&bosznay(q)?, check)?);
            }
            for spec in ps {
                let (d, m) = spec
                    .split_once(':')
                    .and_then(|(d, m)| Some((d.parse::<usize>().ok()?, m.parse::<i64>().ok()?)))
                    .ok_or_else(|| input_error(format!("paraboloid entry {spec:?} is not d:m")))?;
                rows.push(ExponentRow::from_construction(
                    &paraboloid(d, m, budgets)?,
                    check,
                )?);
            }
            if let Some(n) = h_max {
                for (i, r) in h_table(*n, None, budgets)?.iter().enumerate().skip(1) {
                    rows.push(ExponentRow::from_h(i as u64 + 1, r)?);
                }
            }
            Ok(Outcome::ok(Payload::Csv(exponent_table_csv(&rows))))
        }
    }
}
