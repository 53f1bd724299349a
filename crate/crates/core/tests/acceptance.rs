//! The twelve acceptance criteria, one line each. Exits nonzero if any fails.
//! Every comparison is exact; the only tolerances are the wall-time limits.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use borosmoll_core::bounds::{
    check_ratio_bounds, f_sandwich_report, theorem14_report, theorem15_report, RootTheorem,
};
use borosmoll_core::coefficients::{
    check_recurrences, row_double_sum, row_single_sum, rows_by_recurrence, RowTable,
};
use borosmoll_core::exactnum::{frac, Rational};
use borosmoll_core::identities::{
    verify_dn3_ratio, verify_g_identity, verify_identity, verify_identity_at, ClaimFamily, Grid,
    Identity, IdentityCheck, SampleSpec,
};
use borosmoll_core::logconcavity::{check_2lc, moll_min_report, theorem17_chain};
use borosmoll_core::realroots::{conjecture_sweep, root_record, Family};
use borosmoll_core::{Forms, PolyTable, VerificationReport};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ROW_TOP: u64 = 322;
const FAULT_SEED: u64 = 0x00b0_5011;

fn rows() -> &'static RowTable {
    static ROWS: OnceLock<RowTable> = OnceLock::new();
    ROWS.get_or_init(|| RowTable::build(ROW_TOP).expect("engines agree at checkpoints"))
}

fn table() -> &'static PolyTable {
    static TABLE: OnceLock<PolyTable> = OnceLock::new();
    TABLE.get_or_init(PolyTable::builtin)
}

struct Outcome {
    pass: bool,
    detail: String,
}

/// Folds per-m reports; `summary` names the first failure if any.
#[derive(Default)]
struct Tally {
    checked: u64,
    vacuous: u64,
    failed: Vec<String>,
}

impl Tally {
    fn add(&mut self, r: &VerificationReport) {
        self.checked += r.checked;
        self.vacuous += r.skipped_vacuous;
        if !r.pass {
            let v = &r.violations[0];
            self.failed.push(format!("{} m={} i={}: {} vs {}", r.theorem, v.m.map_or(r.m as i64, |m| m), v.i, v.lhs, v.rhs));
        }
    }

    fn add_result<E: std::fmt::Display>(&mut self, name: &str, m: u64, r: Result<VerificationReport, E>) {
        match r {
            Ok(r) => self.add(&r),
            Err(e) => {
                        self.failed.push(format!("{name} m={m}: {e}"));
            }
        }
    }

    fn ok(&self) -> bool {
        self.failed.is_empty() && self.checked > 0
    }

    fn summary(&self) -> String {
        let mut s = format!("{} points", self.checked);
        if self.vacuous > 0 {
            s.push_str(&format!(", {} vacuous", self.vacuous));
        }
        if let Some(f) = self.failed.first() {
            s.push_str(&format!(", {} failing, first: {f}", self.failed.len()));
        }
        s
    }
}

// ---------------------------------------------------------------------------

fn c1_engines() -> Outcome {
    let rec = rows_by_recurrence(60);
    let bad: Vec<u64> = (0..=60u64)
        .filter(|&m| {
            let s = row_single_sum(m);
            s != row_double_sum(m) || s != rec[m as usize]
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!("61 rows, single sum = double sum = recurrence; mismatched m: {bad:?}"),
    }
}

fn c2_residuals() -> Outcome {
    let rec = rows_by_recurrence(62);
    let mut entries = 0usize;
    let mut nonzero = Vec::new();
    for m in 0..=60usize {
        let res = check_recurrences(&rec[m], &rec[m + 1], &rec[m + 2]).expect("consecutive");
        entries += res.diagonal.len() + res.two_step.len() + res.in_row.iter().map(Vec::len).sum::<usize>();
        nonzero.extend(res.nonzero());
    }
    Outcome {
        pass: nonzero.is_empty(),
        detail: format!("{entries} residuals over 0 <= m <= 60, nonzero: {}", nonzero.len()),
    }
}

fn c3_two_lc() -> Outcome {
    let mut base = Tally::default();
    let mut ext = Tally::default();
    for m in 2..=300u64 {
        let t = if m <= 125 { &mut base } else { &mut ext };
        t.add_result("2lc", m, check_2lc(rows().row(m)));
    }
    Outcome {
        pass: base.ok() && ext.ok(),
        detail: format!("2..125: {}; 126..300: {}", base.summary(), ext.summary()),
    }
}

fn c4_theorem15() -> Outcome {
    let f = Forms::new(table());
    let mut t = Tally::default();
    for m in 2..=272u64 {
        t.add_result("theorem15", m, theorem15_report(&f, rows().row(m), rows().row(m + 1)));
    }
    Outcome { pass: t.ok(), detail: format!("2 <= m <= 272: {}", t.summary()) }
}

fn c5_theorem14_sandwich() -> Outcome {
    let f = Forms::new(table());
    let mut t14 = Tally::default();
    let mut sandwich = Tally::default();
    for m in 2..=272u64 {
        t14.add_result("theorem14", m, theorem14_report(&f, rows().row(m), rows().row(m + 1)));
        sandwich.add(&f_sandwich_report(rows().row(m)));
    }
    Outcome {
        pass: t14.ok() && sandwich.ok(),
        detail: format!("difference: {}; sandwich: {}", t14.summary(), sandwich.summary()),
    }
}

fn c6_ratio_bounds() -> Outcome {
    let mut t = Tally::default();
    for m in 2..=200u64 {
        t.add_result("ratio_bounds", m, check_ratio_bounds(rows().row(m), rows().row(m + 1)));
    }
    Outcome { pass: t.ok(), detail: format!("lower and upper bound, {}", t.summary()) }
}

fn c7_moll_min() -> Outcome {
    let mut min = Tally::default();
    let mut chain = Tally::default();
    for m in 2..=150u64 {
        min.add_result("moll_min", m, moll_min_report(rows().row(m)));
        if m >= 3 {
            chain.add_result("thm17_chain", m, theorem17_chain(rows().row(m)));
        }
    }
    Outcome {
        pass: min.ok() && chain.ok(),
        detail: format!(
            "unique minimum at i = m, closed form, e log-concave: {}; ratio chain (m >= 3): {}",
            min.summary(),
            chain.summary()
        ),
    }
}

fn c8_discriminants() -> Outcome {
    let f = Forms::new(table());
    let grid = Grid::Triangle { m_lo: 3, m_hi: 40 };
    let mut parts = Vec::new();
    let mut pass = true;
    for id in [Identity::Delta1ClosedForm, Identity::Delta2ClosedForm] {
        let r = verify_identity(&f, &IdentityCheck::with_grid(id, grid));
        let ok = r.certified && r.grid == grid;
        pass &= ok;
        parts.push(format!(
            "{}: {} points, degree bound {:?}, certified {}",
            id.name(),
            r.report.checked,
            r.degree_bound,
            ok
        ));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn c9_identities() -> Outcome {
    let f = Forms::new(table());
    let mut pass = true;
    let mut names = Vec::new();
    for id in Identity::ALL {
        if matches!(id, Identity::Delta1ClosedForm | Identity::Delta2ClosedForm) {
            continue;
        }
        let r = verify_identity(&f, &IdentityCheck::new(id));
        pass &= r.certified;
        if !r.certified {
            names.push(format!("{} FAILED", id.name()));
        }
    }
    let g = verify_g_identity(&f, rows(), 4, ROW_TOP - 1);
    let dn3 = verify_dn3_ratio(&f, rows(), 4, ROW_TOP - 2);
    pass &= g.pass && dn3.pass && g.checked > 0 && dn3.checked > 0;
    Outcome {
        pass,
        detail: format!(
            "14 symbolic identities certified{}; g identity {} rows, d_(n-3) ratio {} rows, residual zero: {}",
            if names.is_empty() { String::new() } else { format!(" except {}", names.join(", ")) },
            g.checked,
            dn3.checked,
            g.pass && dn3.pass
        ),
    }
}

/// Runs one sign claim and enforces the per-suite time limit.
fn claim(name: &str, sample: SampleSpec, parts: &mut Vec<String>) -> bool {
    let f = Forms::new(table());
    let (fam, k) = ClaimFamily::find(name).expect("known claim");
    let start = Instant::now();
    let r = fam.verify(&f, &sample).swap_remove(k);
    let secs = start.elapsed();
    let ok = r.pass && r.checked > 0 && secs < Duration::from_secs(600);
    parts.push(format!("{name} {} pts {}", r.checked, if ok { "ok" } else { "FAIL" }));
    ok
}

fn root_theorem(t: RootTheorem, ms: &[u64], parts: &mut Vec<String>) -> bool {
    let f = Forms::new(table());
    let start = Instant::now();
    let mut tally = Tally::default();
    for &m in ms {
        tally.add_result(t.name(), m, t.report(&f, rows().row(m), rows().row(m + 1), 1));
    }
    let ok = tally.ok() && start.elapsed() < Duration::from_secs(600);
    parts.push(format!("{} {}", t.name(), tally.summary()));
    ok
}

fn c10_signs() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    pass &= claim("Delta1", SampleSpec::range(126, 200), &mut parts);
    pass &= claim("X_case2", SampleSpec::range(50, 200), &mut parts);
    pass &= claim("X_cube", SampleSpec::range(19, 200), &mut parts);
    pass &= root_theorem(RootTheorem::T31, &[126, 150, 200], &mut parts);
    let sampled = |lo: u64| -> Vec<u64> {
        let mut v: Vec<u64> = (lo..=320).step_by(10).collect();
        v.push(320);
        v.dedup();
        v
    };
    pass &= root_theorem(RootTheorem::T42, &sampled(15), &mut parts);
    pass &= root_theorem(RootTheorem::T44, &sampled(2), &mut parts);
    pass &= root_theorem(RootTheorem::T45, &[273, 280, 290, 300, 310, 320], &mut parts);
    let f = Forms::new(table());
    let (z_family, _) = ClaimFamily::find("Z1").expect("known claim");
    let start = Instant::now();
    let reports = z_family.verify(&f, &SampleSpec::range(273, 320));
    let ok = reports.iter().all(|r| r.pass && r.checked > 0) && start.elapsed() < Duration::from_secs(600);
    pass &= ok;
    parts.push(format!("Z1..Z6 {} pts each {}", reports[0].checked, if ok { "ok" } else { "FAIL" }));
    pass &= claim("g", SampleSpec::range(273, 1000), &mut parts);
    Outcome { pass, detail: parts.join("; ") }
}

fn c11_roots() -> Outcome {
    let (_, q) = conjecture_sweep(Family::Q, 20);
    let (_, r) = conjecture_sweep(Family::R, 20);
    let p2 = root_record(Family::P, &row_single_sum(2));
    let pass = q.pass && r.pass && p2.real_roots == 0;
    Outcome {
        pass,
        detail: format!(
            "Q_1..Q_20 real-rooted and R implies Q: {}; R_1..R_20: {}; P_2 real roots: {}",
            q.pass, r.pass, p2.real_roots
        ),
    }
}

/// A perturbed table is caught if some identity fails on a small grid, or
/// failing that, on its certified grid, or a row-based closed form fails.
fn table_fault_caught(bad: &PolyTable) -> Option<String> {
    let f = Forms::new(bad);
    let small = |id: Identity| match id.default_grid() {
        Grid::Triangle { m_lo, .. } => Grid::Triangle { m_lo, m_hi: m_lo + 11 }.points(),
        Grid::Line { n_lo, .. } => Grid::Line { n_lo, n_hi: n_lo + 36 }.points(),
    };
    for id in Identity::ALL {
        if !verify_identity_at(&f, id, &small(id)).pass {
            return Some(id.name().to_string());
        }
    }
    if !verify_g_identity(&f, rows(), 4, 60).pass {
        return Some("g_identity".into());
    }
    if !verify_dn3_ratio(&f, rows(), 4, 60).pass {
        return Some("dn3_ratio".into());
    }
    Identity::ALL
        .into_iter()
        .find(|&id| !verify_identity(&f, &IdentityCheck::new(id)).report.pass)
        .map(|id| id.name().to_string())
}

fn row_fault_caught(m: u64, i: usize, delta: &Rational) -> Option<String> {
    let rec = rows_by_recurrence(62);
    let bad = rec[m as usize].with_entry(i, &rec[m as usize].values()[i] + delta);
    let mut rows = rec.clone();
    rows[m as usize] = bad.clone();
    let lo = m.saturating_sub(2) as usize;
    let residual = (lo..=m as usize)
        .filter(|&k| k + 2 < rows.len())
        .any(|k| !check_recurrences(&rows[k], &rows[k + 1], &rows[k + 2]).expect("consecutive").all_zero());
    let engines = bad != row_single_sum(m);
    match (residual, engines) {
        (true, true) => Some("residuals, engines".into()),
        (true, false) => Some("residuals".into()),
        (false, true) => Some("engines".into()),
        (false, false) => None,
    }
}

fn c12_faults() -> Outcome {
    let mut rng = StdRng::seed_from_u64(FAULT_SEED);
    let names: Vec<String> = table().names().map(String::from).collect();
    let mut caught = 0;
    let (mut poly_faults, mut row_faults) = (0, 0);
    let mut missed = Vec::new();
    for _ in 0..50 {
        let mut delta = rng.gen_range(1i64..=1000);
        if rng.gen_bool(0.5) {
            delta = -delta;
        }
        let found = if rng.gen_bool(0.5) {
            poly_faults += 1;
            let name = &names[rng.gen_range(0..names.len())];
            let exps: Vec<(u32, u32)> = table().get(name).expect("listed").terms().map(|(e, _)| *e).collect();
            let e = exps[rng.gen_range(0..exps.len())];
            let bad = table().with_perturbation(name, e, BigInt::from(delta)).expect("listed");
            table_fault_caught(&bad).ok_or(format!("{name}{e:?}{delta:+}"))
        } else {
            row_faults += 1;
            let m = rng.gen_range(0..=60u64);
            let i = rng.gen_range(0..=m as usize);
            let d = frac(delta, rng.gen_range(1i64..=100));
            row_fault_caught(m, i, &d).ok_or(format!("d_{i}({m}) + {d}"))
        };
        match found {
            Ok(_) => caught += 1,
            Err(what) => missed.push(what),
        }
    }
    Outcome {
        pass: caught == 50,
        detail: format!(
            "seed {FAULT_SEED:#x}: {poly_faults} coefficient and {row_faults} row-entry faults, {caught}/50 detected{}",
            if missed.is_empty() { String::new() } else { format!(", missed {missed:?}") }
        ),
    }
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        (1, "cross-engine coefficient equality, 0 <= m <= 60", 60, c1_engines),
        (2, "recurrence residuals exactly zero, 0 <= m <= 60", 60, c2_residuals),
        (3, "2-log-concavity for 2 <= m <= 125, extended to 300", 300, c3_two_lc),
        (4, "second ratio difference positive, 2 <= m <= 272", 600, c4_theorem15),
        (5, "first ratio difference and f sandwich, 2 <= m <= 272", 600, c5_theorem14_sandwich),
        (6, "ratio between lower and surd upper bound, m <= 200", 600, c6_ratio_bounds),
        (7, "e-sequence minimum and log-concavity, 2 <= m <= 150", 600, c7_moll_min),
        (8, "discriminant closed forms on 3 <= m <= 40", 600, c8_discriminants),
        (9, "identity suite with zero residual", 600, c9_identities),
        (10, "sign claims and root tests on declared regions", 3600, c10_signs),
        (11, "Sturm real-rootedness of Q, R and P_2", 600, c11_roots),
        (12, "fault injection, 50 seeded perturbations", 600, c12_faults),
    ];
    let start = Instant::now();
    rows();
    println!("row table 0..={ROW_TOP} built in {:.1?}", start.elapsed());
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let t = Instant::now();
        let out = run();
        let took = t.elapsed();
        let pass = out.pass && took < Duration::from_secs(limit);
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {} {name} [{:.1?}, limit {limit} s] {}",
            if pass { "PASS" } else { "FAIL" },
            took,
            out.detail
        );
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
