use serde_json::{json, Map, Value};
use sheffer_core::determinantal::sequence_by_det;
use sheffer_core::families::{catalog, families};
use sheffer_core::iterated::{
    consistency_report, gf_2isp, iterated_sequence, CompositionOrder, IteratedSpec, Mode,
};
use sheffer_core::monomiality::{
    lowering_2isp, lowering_sheffer, raising_2isp, raising_sheffer, verify_monomiality,
    MonomialityReport,
};
use sheffer_core::sheffer::{
    biorthogonality_check, sequence_from_array, sequence_from_gf, Normalization,
};
use sheffer_core::specparse::{parse_and_evaluate, Bindings};
use sheffer_core::{
    Error, PolynomialSequence, Rational, ReferenceSequence, Result, RiordanArray, ShefferPair,
};

use crate::render::{CheckEntry, Document, FamilyRow, Outcome};
use crate::{Check, Command, IterArgs, ModeArg, OrderArg, PairArgs, Reference, SequenceKind};

/// Extra series terms beyond `n`, for the operator checks.
const ORDER_SLACK: usize = 2;

struct Resolved {
    pair: ShefferPair,
    normalization: Normalization,
    meta: Map<String, Value>,
}

fn bindings(list: &[(String, Rational)]) -> Bindings {
    list.iter().cloned().collect()
}

fn reference(r: Reference) -> ReferenceSequence {
    match r {
        Reference::Classical => ReferenceSequence::Classical,
        Reference::Exponential => ReferenceSequence::Exponential,
    }
}

fn params_json(b: &Bindings) -> Value {
    Value::Object(
        b.iter()
            .map(|(k, v)| (k.clone(), json!(v.to_string())))
            .collect(),
    )
}

fn resolve(
    family: Option<&str>,
    g: Option<&str>,
    f: Option<&str>,
    params: &Bindings,
    cn: Option<Reference>,
    order: usize,
) -> Result<Resolved> {
    let mut meta = Map::new();
    let (pair, normalization) = match (family, g, f) {
        (Some(name), _, _) => {
            let d = catalog(name, params, order)?;
            meta.insert("family".into(), json!(name));
            meta.insert("parameters".into(), params_json(&d.params));
            let pair = match cn {
                Some(r) => d.pair.with_reference(reference(r)),
                None => d.pair.clone(),
            };
            (pair, d.normalization())
        }
        (None, Some(g), Some(f)) => {
            let gs = parse_and_evaluate(g, params, order)?;
            let fs = parse_and_evaluate(f, params, order)?;
            meta.insert("g".into(), json!(g));
            meta.insert("f".into(), json!(f));
            meta.insert("parameters".into(), params_json(params));
            let c = reference(cn.unwrap_or(Reference::Exponential));
            (ShefferPair::new(gs, fs, c)?, Normalization::Unit)
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give --family or both --g and --f".into(),
            ))
        }
    };
    meta.insert("reference".into(), json!(pair.reference().name()));
    Ok(Resolved {
        pair,
        normalization,
        meta,
    })
}

fn resolve_first(args: &PairArgs) -> Result<Resolved> {
    resolve(
        args.family.as_deref(),
        args.g.as_deref(),
        args.f.as_deref(),
        &bindings(&args.params),
        args.cn,
        args.n + ORDER_SLACK,
    )
}

struct Iterated {
    first: Resolved,
    second: Option<Resolved>,
    spec: IteratedSpec,
    meta: Map<String, Value>,
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Gf => Mode::Gf,
        ModeArg::UmbralRiordan => Mode::UmbralRiordan,
        ModeArg::UmbralLiteral => Mode::UmbralLiteral,
        ModeArg::Det => Mode::Determinantal,
        ModeArg::Conjugate => Mode::Conjugate,
    }
}

fn order(o: OrderArg) -> CompositionOrder {
    match o {
        OrderArg::Gf21 => CompositionOrder::Gf21,
        OrderArg::Theorem22 => CompositionOrder::Theorem22,
    }
}

fn resolve_iterated(args: &IterArgs) -> Result<Iterated> {
    let first = resolve_first(&args.pair)?;
    let size = args.pair.n + ORDER_SLACK;
    let second = if args.family2.is_some() || args.g2.is_some() {
        let mut params = bindings(&args.params2);
        if args.g2.is_some() {
            let mut merged = bindings(&args.pair.params);
            merged.append(&mut params);
            params = merged;
        }
        Some(resolve(
            args.family2.as_deref(),
            args.g2.as_deref(),
            args.f2.as_deref(),
            &params,
            args.pair.cn,
            size,
        )?)
    } else {
        None
    };
    let (p2, n2) = match &second {
        Some(r) => (r.pair.clone(), r.normalization),
        None => (first.pair.clone(), first.normalization),
    };
    let spec = IteratedSpec::new(first.pair.clone(), p2, order(args.order))?
        .with_normalizations(first.normalization, n2);
    let mut meta = Map::new();
    meta.insert("pair1".into(), Value::Object(first.meta.clone()));
    if let Some(r) = &second {
        meta.insert("pair2".into(), Value::Object(r.meta.clone()));
    }
    meta.insert("order".into(), json!(spec.order().name()));
    Ok(Iterated {
        first,
        second,
        spec,
        meta,
    })
}

fn catalog_sequence(r: &Resolved, size: usize) -> Result<PolynomialSequence> {
    sequence_from_gf(&r.pair, size)?.normalized(r.normalization, r.pair.reference())
}

fn iterated_polys(it: &Iterated, m: Mode, size: usize) -> Result<PolynomialSequence> {
    iterated_sequence(&it.spec, m, size)
}

fn frame(m: Mode) -> &'static str {
    if m == Mode::UmbralLiteral {
        "catalog"
    } else {
        "sheffer"
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Families { format } => {
            let rows = families()
                .iter()
                .map(|info| {
                    let d = catalog(info.name, &Bindings::new(), 1);
                    FamilyRow {
                        name: info.name,
                        title: info.title,
                        params: info.params.iter().map(|p| (p.name, p.default)).collect(),
                        reference: d
                            .map(|d| d.pair.reference().name())
                            .unwrap_or_else(|e| e.to_string()),
                        normalization: info.normalization.name(),
                        g: info.g_text,
                        f: info.f_text,
                    }
                })
                .collect();
            Ok(Outcome::new(Document::Families(rows), *format))
        }
        Command::Compute(args) => {
            let r = resolve_first(&args.pair)?;
            let seq = catalog_sequence(&r, args.pair.n)?;
            let mut meta = r.meta.clone();
            meta.insert("normalization".into(), json!(r.normalization.name()));
            meta.insert("route".into(), json!("gf"));
            Ok(Outcome::new(
                Document::Sequence {
                    meta,
                    polys: seq.polys().to_vec(),
                },
                args.pair.format,
            ))
        }
        Command::Iterate(args) => {
            let it = resolve_iterated(args)?;
            let m = mode(args.mode);
            let seq = iterated_polys(&it, m, args.pair.n)?;
            let mut meta = it.meta.clone();
            meta.insert("mode".into(), json!(m.name()));
            meta.insert("frame".into(), json!(frame(m)));
            Ok(Outcome::new(
                Document::Sequence {
                    meta,
                    polys: seq.polys().to_vec(),
                },
                args.pair.format,
            ))
        }
        Command::Riordan(args) => {
            let r = resolve_first(&args.pair)?;
            let n = args.pair.n;
            let array = RiordanArray::build(r.pair.g(), r.pair.f(), r.pair.reference(), n)?;
            Ok(Outcome::new(
                Document::Triangle {
                    meta: r.meta,
                    rows: array.entries().rows().to_vec(),
                },
                args.pair.format,
            ))
        }
        Command::Det { iter, iterated } => {
            let n = iter.pair.n;
            let (polys, mut meta) = if *iterated || iter.family2.is_some() || iter.g2.is_some() {
                let it = resolve_iterated(iter)?;
                let seq = iterated_polys(&it, Mode::Determinantal, n)?;
                let mut meta = it.meta;
                meta.insert("frame".into(), json!("sheffer"));
                (seq, meta)
            } else {
                let r = resolve_first(&iter.pair)?;
                let array = RiordanArray::build(r.pair.g(), r.pair.f(), r.pair.reference(), n)?;
                let seq = sequence_by_det(&array, PolynomialSequence::monomials(n).polys(), n)?
                    .normalized(r.normalization, r.pair.reference())?;
                let mut meta = r.meta.clone();
                meta.insert("normalization".into(), json!(r.normalization.name()));
                (seq, meta)
            };
            meta.insert("route".into(), json!("det"));
            Ok(Outcome::new(
                Document::Sequence {
                    meta,
                    polys: polys.polys().to_vec(),
                },
                iter.pair.format,
            ))
        }
        Command::Verify { iter, checks } => verify(iter, checks),
        Command::Plotdata {
            iter,
            sequence,
            xmin,
            xmax,
            samples,
            output,
        } => {
            if *samples == 0 {
                return Err(Error::InvalidParameter(
                    "--samples must be at least 1".into(),
                ));
            }
            if xmin > xmax {
                return Err(Error::InvalidParameter(
                    "--xmin must not exceed --xmax".into(),
                ));
            }
            let n = iter.pair.n;
            let (poly, mut meta) = match sequence {
                SequenceKind::Single => {
                    let r = resolve_first(&iter.pair)?;
                    let mut meta = r.meta.clone();
                    meta.insert("normalization".into(), json!(r.normalization.name()));
                    (catalog_sequence(&r, n)?.get(n).clone(), meta)
                }
                SequenceKind::Iterated => {
                    let it = resolve_iterated(iter)?;
                    let m = mode(iter.mode);
                    let mut meta = it.meta.clone();
                    meta.insert("mode".into(), json!(m.name()));
                    meta.insert("frame".into(), json!(frame(m)));
                    (iterated_polys(&it, m, n)?.get(n).clone(), meta)
                }
            };
            meta.insert("n".into(), json!(n));
            meta.insert("polynomial".into(), json!(poly.to_string()));
            let step = if *samples > 1 {
                (xmax - xmin) / Rational::from_integer((*samples as i64 - 1).into())
            } else {
                Rational::from_integer(0.into())
            };
            let points = (0..*samples)
                .map(|i| {
                    let x = xmin + &step * Rational::from_integer((i as i64).into());
                    let v = poly.eval(&x);
                    (x, v)
                })
                .collect();
            let mut outcome = Outcome::new(Document::Plot { meta, points }, iter.pair.format);
            outcome.output = output.clone();
            Ok(outcome)
        }
    }
}

fn entry(target: &'static str, check: Check, result: Result<(bool, String)>) -> CheckEntry {
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckEntry {
        target,
        check: check_name(check),
        passed,
        detail,
    }
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Biorthogonality => "biorthogonality",
        Check::Monomiality => "monomiality",
        Check::Diffeq => "diffeq",
        Check::Group => "group",
        Check::Routes => "routes",
    }
}

fn retag_note(c: &ReferenceSequence) -> &'static str {
    if *c == ReferenceSequence::Exponential {
        ""
    } else {
        " (operators checked with c_n = n!)"
    }
}

fn monomiality_detail(report: &MonomialityReport, check: Check, note: &str) -> (bool, String) {
    if check == Check::Diffeq {
        let ok = report.diffeq_failures.is_empty();
        let detail = if ok {
            format!("(MP - n) s_n = 0 for n <= {}{note}", report.size)
        } else {
            format!(
                "residual nonzero for n in {:?}{note}",
                report.diffeq_failures
            )
        };
        return (ok, detail);
    }
    let ok = report.raising_failures.is_empty() && report.lowering_failures.is_empty();
    let detail = if ok {
        format!(
            "M s_n = s_(n+1) and P s_n = n s_(n-1) for n <= {}{note}",
            report.size
        )
    } else {
        format!(
            "raising fails for n in {:?}, lowering fails for n in {:?}{note}",
            report.raising_failures, report.lowering_failures
        )
    };
    (ok, detail)
}

fn check_pair(pair: &ShefferPair, check: Check, n: usize) -> Result<(bool, String)> {
    match check {
        Check::Biorthogonality => {
            let seq = sequence_from_gf(pair, n)?;
            let report = biorthogonality_check(pair, &seq)?;
            Ok(match &report.violation {
                None => (
                    true,
                    format!("{} pairings <g f^k | s_n> = c_n delta_nk", report.checked),
                ),
                Some(v) => (
                    false,
                    format!(
                        "<g f^{} | s_{}> = {}, expected {}",
                        v.k, v.n, v.found, v.expected
                    ),
                ),
            })
        }
        Check::Monomiality | Check::Diffeq => {
            let exp = pair.with_reference(ReferenceSequence::Exponential);
            let seq = sequence_from_gf(&exp, n)?;
            let report =
                verify_monomiality(&seq, &raising_sheffer(&exp)?, &lowering_sheffer(&exp)?)?;
            Ok(monomiality_detail(
                &report,
                check,
                retag_note(pair.reference()),
            ))
        }
        Check::Group => {
            let a = RiordanArray::build(pair.g(), pair.f(), pair.reference(), n)?;
            let inverse_ok = a.multiply(&a.inverse()?)?.entries().is_identity();
            let product_ok = a.multiply(&a)?.is_consistent()?;
            Ok((
                inverse_ok && product_ok,
                format!(
                    "A A^-1 {} identity; A A {} the array of the composed pair",
                    if inverse_ok { "is the" } else { "is not the" },
                    if product_ok { "equals" } else { "differs from" }
                ),
            ))
        }
        Check::Routes => {
            let gf = sequence_from_gf(pair, n)?;
            let array = sequence_from_array(pair, n)?;
            let a = RiordanArray::build(pair.g(), pair.f(), pair.reference(), n)?;
            let det = sequence_by_det(&a, PolynomialSequence::monomials(n).polys(), n)?;
            let mut bad = Vec::new();
            if array.polys() != gf.polys() {
                bad.push("array");
            }
            if det.polys() != gf.polys() {
                bad.push("det");
            }
            Ok(if bad.is_empty() {
                (true, "gf = array = det".to_string())
            } else {
                (false, format!("differs from gf: {}", bad.join(", ")))
            })
        }
    }
}

fn check_iterated(spec: &IteratedSpec, check: Check, n: usize) -> Result<(bool, String)> {
    match check {
        Check::Biorthogonality => {
            let composite = spec.composite()?;
            let seq = gf_2isp(spec, n)?;
            let report = biorthogonality_check(&composite, &seq)?;
            Ok(match &report.violation {
                None => (
                    true,
                    format!("{} pairings against the composed pair", report.checked),
                ),
                Some(v) => (
                    false,
                    format!(
                        "<g f^{} | s_{}> = {}, expected {}",
                        v.k, v.n, v.found, v.expected
                    ),
                ),
            })
        }
        Check::Monomiality | Check::Diffeq => {
            let exp = ReferenceSequence::Exponential;
            let spec_exp = IteratedSpec::new(
                spec.pair1().with_reference(exp.clone()),
                spec.pair2().with_reference(exp),
                spec.order(),
            )?;
            let seq = gf_2isp(&spec_exp, n)?;
            let report =
                verify_monomiality(&seq, &raising_2isp(&spec_exp)?, &lowering_2isp(&spec_exp)?)?;
            Ok(monomiality_detail(
                &report,
                check,
                retag_note(spec.reference()),
            ))
        }
        Check::Group => {
            let c = spec.reference();
            let (inner, outer) = (spec.inner(), spec.outer());
            let ai = RiordanArray::build(inner.g(), inner.f(), c, n)?;
            let ao = RiordanArray::build(outer.g(), outer.f(), c, n)?;
            let composite = spec.composite()?;
            let ac = RiordanArray::build(composite.g(), composite.f(), c, n)?;
            let ok = ai.multiply(&ao)?.entries() == ac.entries();
            Ok((
                ok,
                format!(
                    "array of the composed pair {} A_inner A_outer",
                    if ok { "equals" } else { "differs from" }
                ),
            ))
        }
        Check::Routes => {
            let report = consistency_report(spec, n);
            let failing: Vec<String> = report
                .outcomes
                .iter()
                .filter(|o| !o.route.is_diagnostic() && !o.agrees_with_gf())
                .map(|o| format!("{}/{}", o.order.name(), o.route.name()))
                .collect();
            let mut detail = if failing.is_empty() {
                "gf = umbral-riordan = det = conjugate in both orders".to_string()
            } else {
                format!("disagree with gf: {}", failing.join(", "))
            };
            if let Some(d) = report.literal_divergence(spec.order()) {
                detail.push_str(&format!(
                    "; umbral-literal (catalog frame) first differs at n = {}, x^{}",
                    d.n, d.degree
                ));
            }
            Ok((failing.is_empty(), detail))
        }
    }
}

fn verify(args: &IterArgs, checks: &[Check]) -> Result<Outcome> {
    let n = args.pair.n;
    let it = resolve_iterated(args)?;
    let mut entries = Vec::new();
    for &check in checks {
        entries.push(entry("pair", check, check_pair(&it.first.pair, check, n)));
    }
    if let Some(second) = &it.second {
        for &check in checks {
            entries.push(entry("pair2", check, check_pair(&second.pair, check, n)));
        }
    }
    for &check in checks {
        entries.push(entry("iterated", check, check_iterated(&it.spec, check, n)));
    }
    let passed = entries.iter().all(|e| e.passed);
    let mut meta = it.meta;
    meta.insert("n".into(), json!(n));
    let mut outcome = Outcome::new(Document::Verification { meta, entries }, args.pair.format);
    outcome.checks_passed = passed;
    Ok(outcome)
}
