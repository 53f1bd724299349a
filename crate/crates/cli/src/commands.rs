//! The four subcommands. Each returns its records in a fixed order and the
//! failing reports; the driver adds the summary and decides the exit code.

use std::path::Path;

use borosmoll_core::bounds::{
    check_ratio_bounds, f_sandwich_report, theorem14_report, theorem15_report, RootTheorem,
};
use borosmoll_core::coefficients::{
    check_recurrences, row_double_sum, row_single_sum, rows_by_recurrence, BorosMollRow, RowTable,
};
use borosmoll_core::exactnum::{fmt_rational, parse_rational};
use borosmoll_core::identities::{
    g_case_structure, verify_dn3_ratio, verify_g_identity, verify_identity, verify_sign_claim,
    sha256_hex, ClaimFamily, Grid, Identity, IdentityCheck, SampleSpec, BUILTIN_CHECKSUM, FAMILIES,
};
use borosmoll_core::logconcavity::{check_2lc, klc_depth, moll_min_report, theorem17_chain, RatSequence};
use borosmoll_core::realroots::{sweep_item, sweep_verdict, Family};
use borosmoll_core::{Forms, PolyTable, Rational, VerificationReport, Violation};
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{CoeffsArgs, DepthArgs, RootsArgs, VerifyArgs};
use crate::output::tagged;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<Value>,
    pub failed: Vec<VerificationReport>,
    /// Text printed instead of running, e.g. `verify --theorems list`.
    pub listing: Option<String>,
}

impl Outcome {
    fn push(&mut self, kind: &str, report: VerificationReport) {
        self.records.push(tagged(kind, &report));
        if !report.pass {
            self.failed.push(report);
        }
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn check_range(m_min: u64, m_max: u64) -> Result<(), UsageError> {
    if m_min > m_max {
        return Err(usage(format!("--m-min {m_min} exceeds --m-max {m_max}")));
    }
    Ok(())
}

/// A report that failed because the checker itself refused the input.
fn errored(name: &str, m: u64, err: impl std::fmt::Display) -> VerificationReport {
    let mut r = VerificationReport::new(name, m);
    r.fail(Violation::text(0, err.to_string(), "no error"));
    r
}

// -------------------------------------------------------------------- coeffs

pub fn coeffs(a: &CoeffsArgs) -> Result<Outcome, UsageError> {
    check_range(a.m_min, a.m_max)?;
    let mut rec = rows_by_recurrence(a.m_max + 2);
    if let Some(spec) = &a.perturb {
        let (m, i) = parse_perturb(spec, a.m_max)?;
        let row = &rec[m as usize];
        let bumped = row.values()[i as usize].clone() + Rational::one();
        rec[m as usize] = row.with_entry(i as usize, bumped);
    }
    let items: Vec<(Value, VerificationReport)> = (a.m_min..=a.m_max)
        .into_par_iter()
        .map(|m| coeff_item(&rec, m))
        .collect();
    let mut out = Outcome::default();
    for (record, report) in items {
        out.records.push(record);
        if !report.pass {
            out.failed.push(report);
        }
    }
    Ok(out)
}

fn parse_perturb(spec: &str, m_max: u64) -> Result<(u64, u64), UsageError> {
    let bad = || usage(format!("--perturb expects M:I with I <= M <= {m_max}, got {spec}"));
    let (m, i) = spec.split_once(':').ok_or_else(bad)?;
    let m: u64 = m.trim().parse().map_err(|_| bad())?;
    let i: u64 = i.trim().parse().map_err(|_| bad())?;
    if i > m || m > m_max {
        return Err(bad());
    }
    Ok((m, i))
}

fn coeff_item(rec: &[BorosMollRow], m: u64) -> (Value, VerificationReport) {
    let r = &rec[m as usize];
    let single = row_single_sum(m);
    let double = row_double_sum(m);
    let mut engines = VerificationReport::new("engines", m);
    for (i, s) in single.values().iter().enumerate() {
        let (d, c) = (&double.values()[i], &r.values()[i]);
        engines.record(s == d && s == c, || {
            Violation::text(
                i as i64,
                fmt_rational(s),
                format!("double {} recurrence {}", fmt_rational(d), fmt_rational(c)),
            )
        });
    }
    let mut residuals = VerificationReport::new("recurrence_residuals", m);
    let res = check_recurrences(r, &rec[m as usize + 1], &rec[m as usize + 2]).expect("consecutive rows");
    residuals.checked = 1;
    for (name, row_m, i) in res.nonzero() {
        residuals.fail(Violation::text(i, format!("{name} residual on row {row_m}"), "0"));
    }
    let mut record = json!({"record": "row"});
    let obj = record.as_object_mut().expect("object");
    match single.export_json() {
        Ok(text) => {
            let row: Value = serde_json::from_str(&text).expect("row export is json");
            obj.extend(row.as_object().expect("object").clone());
        }
        Err(e) => {
            engines.fail(Violation::text(0, e.to_string(), "integral scaled row"));
            obj.insert("m".into(), json!(m));
        }
    }
    obj.insert("engines_agree".into(), json!(engines.pass));
    obj.insert("residuals_zero".into(), json!(residuals.pass));
    let mut violations = engines.violations.clone();
    violations.extend(residuals.violations.iter().cloned());
    obj.insert("violations".into(), serde_json::to_value(&violations).expect("serializes"));
    engines.absorb(residuals);
    engines.theorem = "coeffs".into();
    (record, engines)
}

// -------------------------------------------------------------------- verify

#[derive(Debug, Clone, PartialEq, Eq)]
enum Check {
    TwoLc,
    Thm14,
    Thm15,
    FSandwich,
    RatioBounds,
    MollMin,
    Thm17,
    Root(RootTheorem),
    GCases,
    GIdentity,
    Dn3Ratio,
    Identities,
    Signs,
    Sign(String),
}

/// Identifiers accepted by `verify --theorems`, with what each runs.
pub const VERIFY_IDS: [(&str, &str); 16] = [
    ("2lc", "strict 2-log-concavity of each row"),
    ("thm14", "first L-ratio difference, row route against the quadratic form"),
    ("thm15", "second L-ratio difference, row route against the quadratic form"),
    ("f_sandwich", "L-ratios on either side of f(m,i)"),
    ("ratio_bounds", "lower and surd upper bound on d_i(m+1)/d_i(m)"),
    ("moll_min", "minimum of the e-sequence and its closed form"),
    ("thm17", "log-concavity of the e-sequence, m >= 3"),
    ("thm31", "root-interval test for m >= 126"),
    ("thm42", "root test below the composite threshold, m >= 15"),
    ("thm44", "root test on the upper cube strip"),
    ("thm45", "root test for i^3 >= m^2, m >= 273"),
    ("g_cases", "term groups behind G > 0, m >= 126"),
    ("g_identity", "the i = m-3 form against its closed form, from rows"),
    ("dn3_ratio", "d_{n-3}(n+2)/d_{n-3}(n+1) against its closed form"),
    ("identities", "every symbolic identity on its grid (--grid sets the upper end)"),
    ("signs", "every sign claim on sampled m (or sign:<claim> for one)"),
];

fn parse_check(id: &str) -> Result<Check, UsageError> {
    Ok(match id {
        "2lc" => Check::TwoLc,
        "thm14" => Check::Thm14,
        "thm15" => Check::Thm15,
        "f_sandwich" => Check::FSandwich,
        "ratio_bounds" => Check::RatioBounds,
        "moll_min" => Check::MollMin,
        "thm17" => Check::Thm17,
        "thm31" => Check::Root(RootTheorem::T31),
        "thm42" => Check::Root(RootTheorem::T42),
        "thm44" => Check::Root(RootTheorem::T44),
        "thm45" => Check::Root(RootTheorem::T45),
        "g_cases" => Check::GCases,
        "g_identity" => Check::GIdentity,
        "dn3_ratio" => Check::Dn3Ratio,
        "identities" => Check::Identities,
        "signs" => Check::Signs,
        _ => match id.strip_prefix("sign:") {
            Some(claim) if ClaimFamily::find(claim).is_some() => Check::Sign(claim.to_string()),
            Some(claim) => {
                let known: Vec<&str> = ClaimFamily::claim_names().collect();
                return Err(usage(format!("unknown sign claim {claim}; known: {}", known.join(", "))));
            }
            None => return Err(usage(format!("unknown theorem identifier {id}; try --theorems list"))),
        },
    })
}

fn uses_rows(c: &Check) -> bool {
    !matches!(c, Check::Identities | Check::Signs | Check::Sign(_) | Check::GCases)
}

fn root_start(t: RootTheorem) -> u64 {
    match t {
        RootTheorem::T31 => 126,
        RootTheorem::T42 => 15,
        RootTheorem::T44 => 2,
        RootTheorem::T45 => 273,
    }
}

pub fn listing() -> String {
    let mut s = String::new();
    for (id, what) in VERIFY_IDS {
        s.push_str(&format!("{id:<14}{what}\n"));
    }
    s.push_str("sign:<claim>  one sign claim; claims: ");
    s.push_str(&ClaimFamily::claim_names().collect::<Vec<_>>().join(", "));
    s.push('\n');
    s
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, UsageError> {
    if a.theorems.iter().any(|t| t == "list") {
        return Ok(Outcome {
            listing: Some(listing()),
            ..Outcome::default()
        });
    }
    if a.m_min < 2 {
        return Err(usage("--m-min must be at least 2 for verify"));
    }
    check_range(a.m_min, a.m_max)?;
    if a.i_stride == 0 {
        return Err(usage("--i-stride must be positive"));
    }
    if let Some(g) = a.grid {
        if g < 4 {
            return Err(usage("--grid must be at least 4"));
        }
    }
    let mut sample = a.sample_ms.clone().unwrap_or_default();
    sample.sort_unstable();
    sample.dedup();
    if sample.first().is_some_and(|&m| m < 2) {
        return Err(usage("--sample-ms values must be at least 2"));
    }
    let top = sample.last().map_or(a.m_max, |&m| m as u64);
    let checks = a.theorems.iter().map(|t| parse_check(t)).collect::<Result<Vec<_>, _>>()?;

    let (table, table_record) = load_table(a.poly_table.as_deref())?;
    let forms = Forms::new(&table);
    let mut out = Outcome::default();
    out.records.push(table_record);
    let rows = if checks.iter().any(uses_rows) {
        match RowTable::build_checked(top + 2, a.cross_check_every) {
            Ok(t) => Some(t),
            Err(e) => {
                out.push("verdict", errored("row_cross_check", top + 2, e));
                None
            }
        }
    } else {
        None
    };

    for check in &checks {
        match (check, rows.as_ref()) {
            (Check::Identities, _) => run_identities(&forms, a.grid, &mut out),
            (Check::Signs, _) => {
                let sample = sample_spec(a);
                let reports: Vec<Vec<VerificationReport>> =
                    FAMILIES.par_iter().map(|fam| fam.verify(&forms, &sample)).collect();
                for r in reports.into_iter().flatten() {
                    out.push("verdict", r);
                }
            }
            (Check::Sign(claim), _) => {
                let r = verify_sign_claim(&forms, claim, &sample_spec(a)).expect("claim validated");
                out.push("verdict", r);
            }
            (Check::GCases, _) => {
                let reports: Vec<VerificationReport> = (a.m_min.max(126)..=a.m_max)
                    .into_par_iter()
                    .map(|m| g_case_structure(m as i64))
                    .collect();
                for r in reports {
                    out.push("verdict", r);
                }
            }
            (_, None) => {}
            (c, Some(rows)) => {
                let lo = match c {
                    Check::Root(t) => a.m_min.max(root_start(*t)),
                    Check::Dn3Ratio | Check::GIdentity => a.m_min.max(4),
                    Check::Thm17 => a.m_min.max(3),
                    _ => a.m_min,
                };
                let ms: Vec<u64> = if a.sample_ms.is_some() {
                    sample.iter().map(|&m| m as u64).filter(|&m| m >= lo).collect()
                } else {
                    (lo..=a.m_max).collect()
                };
                let reports: Vec<VerificationReport> = ms
                    .into_par_iter()
                    .map(|m| row_check(c, &forms, rows, m, a.i_stride))
                    .collect();
                for r in reports {
                    out.push("verdict", r);
                }
            }
        }
    }
    Ok(out)
}

fn load_table(path: Option<&Path>) -> Result<(PolyTable, Value), UsageError> {
    let Some(path) = path else {
        let record = json!({
            "record": "poly_table",
            "source": "builtin",
            "sha256": BUILTIN_CHECKSUM,
            "matches_builtin": true,
        });
        return Ok((PolyTable::builtin(), record));
    };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let table = PolyTable::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let builtin = PolyTable::builtin();
    let missing: Vec<&str> = builtin.names().filter(|n| table.get(n).is_err()).collect();
    if !missing.is_empty() {
        return Err(usage(format!("{} lacks {}", path.display(), missing.join(", "))));
    }
    let sha = sha256_hex(&text);
    let record = json!({
        "record": "poly_table",
        "source": path.display().to_string(),
        "matches_builtin": sha == BUILTIN_CHECKSUM,
        "sha256": sha,
    });
    Ok((table, record))
}

fn sample_spec(a: &VerifyArgs) -> SampleSpec {
    let base = match &a.sample_ms {
        Some(ms) => SampleSpec::list(ms),
        None => SampleSpec::range(a.m_min as i64, a.m_max as i64),
    };
    base.with_stride(a.i_stride as i64)
}

fn run_identities(forms: &Forms, grid: Option<i64>, out: &mut Outcome) {
    let reports: Vec<_> = Identity::ALL
        .par_iter()
        .map(|&id| {
            let check = match (grid, id.default_grid()) {
                (Some(hi), Grid::Triangle { m_lo, .. }) => IdentityCheck::with_grid(id, Grid::Triangle { m_lo, m_hi: hi }),
                (Some(hi), Grid::Line { n_lo, .. }) => IdentityCheck::with_grid(id, Grid::Line { n_lo, n_hi: hi }),
                (None, _) => IdentityCheck::new(id),
            };
            verify_identity(forms, &check)
        })
        .collect();
    for r in reports {
        out.records.push(tagged("identity", &r));
        if !(r.report.pass && r.certified) {
            out.failed.push(r.report);
        }
    }
}

fn row_check(c: &Check, forms: &Forms, rows: &RowTable, m: u64, i_stride: u64) -> VerificationReport {
    let cur = rows.row(m);
    let next = rows.row(m + 1);
    let result = match c {
        Check::TwoLc => check_2lc(cur).map_err(|e| e.to_string()),
        Check::MollMin => moll_min_report(cur).map_err(|e| e.to_string()),
        Check::Thm17 => theorem17_chain(cur).map_err(|e| e.to_string()),
        Check::FSandwich => Ok(f_sandwich_report(cur)),
        Check::Thm14 => theorem14_report(forms, cur, next).map_err(|e| e.to_string()),
        Check::Thm15 => theorem15_report(forms, cur, next).map_err(|e| e.to_string()),
        Check::RatioBounds => check_ratio_bounds(cur, next).map_err(|e| e.to_string()),
        Check::Root(t) => t.report(forms, cur, next, i_stride).map_err(|e| e.to_string()),
        Check::GIdentity => Ok(verify_g_identity(forms, rows, m, m)),
        Check::Dn3Ratio => Ok(verify_dn3_ratio(forms, rows, m, m)),
        Check::Identities | Check::Signs | Check::Sign(_) | Check::GCases => unreachable!("not row-based"),
    };
    result.unwrap_or_else(|e| errored(check_name(c), m, e))
}

fn check_name(c: &Check) -> &'static str {
    match c {
        Check::TwoLc => "2lc",
        Check::MollMin => "moll_min",
        Check::Thm17 => "thm17",
        Check::FSandwich => "f_sandwich",
        Check::Thm14 => "thm14",
        Check::Thm15 => "thm15",
        Check::RatioBounds => "ratio_bounds",
        Check::Root(t) => t.name(),
        Check::GCases => "g_cases",
        Check::GIdentity => "g_identity",
        Check::Dn3Ratio => "dn3_ratio",
        Check::Identities => "identities",
        Check::Signs | Check::Sign(_) => "signs",
    }
}

// --------------------------------------------------------------------- roots

pub fn roots(a: &RootsArgs) -> Result<Outcome, UsageError> {
    if a.m_min < 1 {
        return Err(usage("--m-min must be at least 1 for roots"));
    }
    check_range(a.m_min, a.m_max)?;
    let which = Family::parse(&a.which).ok_or_else(|| usage(format!("unknown family {}", a.which)))?;
    let items: Vec<_> = (a.m_min..=a.m_max)
        .into_par_iter()
        .map(|m| sweep_item(which, &row_single_sum(m)))
        .collect();
    let mut out = Outcome::default();
    for it in &items {
        out.records.push(tagged("roots", &it.record));
    }
    out.push("verdict", sweep_verdict(which, a.m_max, &items));
    Ok(out)
}

// --------------------------------------------------------------------- depth

pub const MAX_DEPTH_K: u32 = 16;

pub fn depth(a: &DepthArgs) -> Result<Outcome, UsageError> {
    if !(1..=MAX_DEPTH_K).contains(&a.max_k) {
        return Err(usage(format!("--max-k must be in 1..={MAX_DEPTH_K}")));
    }
    let mut out = Outcome::default();
    if let Some(seq) = &a.sequence {
        let values = seq
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| usage(format!("not a rational: {s}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let s = RatSequence::new(values);
        let rendered: Vec<String> = s.values().iter().map(fmt_rational).collect();
        out.records.push(json!({
            "record": "depth",
            "sequence": rendered,
            "max_k": a.max_k,
            "depth": klc_depth(&s, a.max_k),
        }));
        return Ok(out);
    }
    let m_max = a.m_max.ok_or_else(|| usage("depth needs --m-max or --sequence"))?;
    check_range(a.m_min, m_max)?;
    let rows = RowTable::build(m_max).map_err(|e| usage(e.to_string()))?;
    // Only 2-log-concavity is asserted; deeper values are reported as found.
    let floor = a.max_k.min(2);
    let depths: Vec<(u64, u32)> = (a.m_min..=m_max)
        .into_par_iter()
        .map(|m| (m, klc_depth(&RatSequence::from(rows.row(m)), a.max_k)))
        .collect();
    let mut verdict = VerificationReport::new(format!("depth_at_least_{floor}"), m_max);
    for (m, d) in depths {
        out.records.push(json!({"record": "depth", "m": m, "max_k": a.max_k, "depth": d}));
        verdict.record(d >= floor, || Violation::text(m as i64, d.to_string(), format!(">= {floor}")).at_m(m as i64));
    }
    verdict.note(format!("asserted only up to k = {floor}"));
    out.push("verdict", verdict);
    Ok(out)
}
