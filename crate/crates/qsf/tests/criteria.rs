//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use qsf::sample::unit_open;
use qsf::{from_json, rng_stream};
use qsf_core::identities::{check_q_gauss_product, identity_sweep, GaussForm};
use qsf_core::qcore::{
    ln_qpoch_inf_eval, ln_qpoch_ratio_eval, phi10, phi10_eval, Evaluation, Phi10Form, Truncation,
};
use qsf_core::qgamma::{gamma_q, gamma_q_constant, psi_q, psi_q_deriv, psi_series, psi_series_eval, PsiDerivOrder};
use qsf_core::roots::{psi_zero, DEFAULT_TOL};
use qsf_core::{Error, QContext};

const SEED: u64 = 42;
const GRID: usize = 1_000_000;

type Check = Result<String, String>;

fn ctx(q: f64) -> QContext {
    QContext::new(q).unwrap()
}

fn in_range(rng: &mut impl rand_chacha::rand_core::RngCore, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit_open(rng)
}

fn identities() -> Check {
    let start = Instant::now();
    let mut worst = (0.0f64, String::new());
    let mut count = 0;
    for q in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for r in identity_sweep(&ctx(q), 30).map_err(|e| e.to_string())? {
            count += 1;
            if r.residual > worst.0 || r.residual.is_nan() {
                worst = (r.residual, format!("{} at q={q}", r.id));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let summary = format!("{count} residuals, worst {:.2e} ({}), {secs:.1} s", worst.0, worst.1);
    if worst.0 <= 1e-9 && secs <= 30.0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn run_cli_suite(out: &std::path::Path) -> Result<(Vec<u8>, f64), String> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_qsf"))
        .args(["suite", "--seed", "42", "--samples", "1000", "--out"])
        .arg(out)
        .stderr(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    if !matches!(status.code(), Some(0 | 1)) {
        return Err(format!("suite exited with {status}"));
    }
    Ok((std::fs::read(out).map_err(|e| e.to_string())?, secs))
}

fn inequality_suite(json: &[u8], secs: f64) -> Check {
    let report = from_json(std::str::from_utf8(json).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let failing: Vec<String> =
        report.entries.iter().filter(|e| e.fail > 0).map(|e| format!("{} {}/{}", e.id, e.fail, e.count)).collect();
    let noisy: Vec<String> = report
        .entries
        .iter()
        .filter(|e| e.inconclusive_fraction() >= 0.02)
        .map(|e| format!("{} {:.1}%", e.id, 100.0 * e.inconclusive_fraction()))
        .collect();
    let mut summary = format!("{} entries, {} fail outcomes, {secs:.1} s", report.entries.len(), report.total_fails());
    if !failing.is_empty() {
        summary += &format!("; failing: {}", failing.join(", "));
    }
    if !noisy.is_empty() {
        summary += &format!("; inconclusive >= 2%: {}", noisy.join(", "));
    }
    if failing.is_empty() && noisy.is_empty() && secs <= 60.0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

/// Sign of ψ_q(x), summing `ln q Σ q^{n+x}/(1-q^{n+x})` until the partial sum
/// and the tail bound agree. `None` only for an exact zero.
fn psi_sign(q: f64, x: f64) -> Option<bool> {
    let lq = q.ln();
    let mut v = -(-q).ln_1p();
    let mut t = q.powf(x);
    for _ in 0..100_000 {
        v += lq * t / (1.0 - t);
        t *= q;
        // remaining terms add at most ln q · t/((1-t)(1-q)), all negative
        let tail = lq * t / ((1.0 - t) * (1.0 - q));
        if v < 0.0 {
            return Some(false);
        }
        if v + tail > 0.0 {
            return Some(true);
        }
    }
    None
}

fn grid_zero(q: f64) -> Option<f64> {
    let node = |i: usize| 1.0 + (i as f64 + 0.5) / GRID as f64;
    let mut prev = psi_sign(q, node(0));
    for i in 1..GRID {
        let s = psi_sign(q, node(i));
        if s != prev {
            return Some(0.5 * (node(i - 1) + node(i)));
        }
        prev = s;
    }
    None
}

fn zero_location() -> Check {
    let mut worst = 0.0f64;
    for j in 1..=19 {
        let q = j as f64 * 0.05;
        let r = psi_zero(&ctx(q), DEFAULT_TOL).map_err(|e| format!("q={q}: {e}"))?;
        let res = psi_q(&ctx(q), r.x0).map_err(|e| e.to_string())?.value;
        let oracle = grid_zero(q).ok_or(format!("q={q}: grid scan found no sign change"))?;
        let d = (r.x0 - oracle).abs();
        worst = worst.max(d);
        if !(r.x0 > 1.0 && r.x0 < 2.0) || res.abs() > 1e-10 || d > 1e-5 {
            return Err(format!("q={q}: x0={} residual={res:.2e} grid={oracle}", r.x0));
        }
    }
    Ok(format!("19 bases, max distance to grid oracle {worst:.2e}"))
}

fn classical_limits() -> Check {
    let c = ctx(0.9999);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut worst = 0.0f64;
    let mut rel = |got: f64, want: f64, what: String| -> Result<(), String> {
        let r = ((got - want) / want).abs();
        worst = worst.max(r);
        if r <= 1e-2 {
            Ok(())
        } else {
            Err(format!("{what}: {got} vs {want}"))
        }
    };
    for (x, g) in [(0.5, sqrt_pi), (1.5, sqrt_pi / 2.0), (2.5, 0.75 * sqrt_pi), (5.0, 24.0)] {
        rel(gamma_q(&c, x).map_err(|e| e.to_string())?.value, g, format!("Gamma({x})"))?;
    }
    for n in 2..=4u32 {
        let lhs = check_q_gauss_product(&c, n, GaussForm::Full).map_err(|e| e.to_string())?.lhs.value.exp();
        let want = (2.0 * std::f64::consts::PI).powf((n - 1) as f64 / 2.0) / (n as f64).sqrt();
        rel(lhs, want, format!("Gauss product n={n}"))?;
    }
    let g = gamma_q_constant(&c).map_err(|e| e.to_string())?.value;
    let d = (g - 0.57722).abs();
    if d > 5e-3 {
        return Err(format!("gamma_q = {g}"));
    }
    Ok(format!("max relative error {worst:.2e}, |gamma_q - 0.57722| = {d:.2e}"))
}

fn derivatives() -> Check {
    let mut worst = 0.0f64;
    for i in 0..200 {
        let mut rng = rng_stream(SEED, "derivatives", i);
        let q = in_range(&mut rng, 0.05, 0.95);
        let x = in_range(&mut rng, 0.1, 10.0);
        let c = ctx(q);
        let h = 1e-3 * x.min(1.0);
        let d = |k: u32, x: f64| psi_q_deriv(&c, x, PsiDerivOrder::new(k).unwrap()).map(|v| v.value);
        let s = |x: f64| psi_series(&c, x, 0).map(|v| v.value);
        let run = || -> Result<(f64, f64), Error> {
            let fd1 = q.ln() * (s(x + h)? - s(x - h)?) / (2.0 * h);
            let fd2 = (d(1, x + h)? - d(1, x - h)?) / (2.0 * h);
            Ok((((d(1, x)? - fd1) / fd1).abs(), ((d(2, x)? - fd2) / fd2).abs()))
        };
        let (e1, e2) = run().map_err(|e| format!("q={q} x={x}: {e}"))?;
        worst = worst.max(e1).max(e2);
        if e1 > 1e-4 || e2 > 1e-4 {
            return Err(format!("q={q} x={x}: relative errors {e1:.2e}, {e2:.2e}"));
        }
        for k in 1..=6u32 {
            let v = d(k, x).map_err(|e| e.to_string())?;
            let signed = if k % 2 == 1 { v } else { -v };
            if !(signed > 0.0) {
                return Err(format!("q={q} x={x}: psi^({k}) = {v}"));
            }
        }
    }
    Ok(format!("200 samples, max relative error {worst:.2e}, signs hold for k <= 6"))
}

fn longer(e: Evaluation, f: impl Fn(Truncation) -> Result<Evaluation, Error>) -> Result<(f64, f64), Error> {
    let r = f(Truncation::Terms(4 * e.terms.max(1)))?;
    Ok(((e.approx.value - r.approx.value).abs(), e.approx.err + r.approx.err))
}

fn oracle_equivalence() -> Check {
    for i in 0..1000 {
        let mut rng = rng_stream(SEED, "phi10", i);
        let q = in_range(&mut rng, 0.05, 0.95);
        let a = in_range(&mut rng, -1.0, 1.0);
        let x = in_range(&mut rng, -0.95, 0.95);
        let c = ctx(q);
        let s = phi10(&c, a, x, Phi10Form::Series).map_err(|e| e.to_string())?;
        let p = phi10(&c, a, x, Phi10Form::Product).map_err(|e| e.to_string())?;
        if (s.value - p.value).abs() > s.err + p.err {
            return Err(format!("q={q} a={a} x={x}: series {s:?} product {p:?}"));
        }
    }
    let mut checked = 0;
    for i in 0..200 {
        let mut rng = rng_stream(SEED, "truncation", i);
        let q = in_range(&mut rng, 0.05, 0.95);
        let a = in_range(&mut rng, -1.0, 1.0);
        let x = in_range(&mut rng, -0.95, 0.95);
        let s = in_range(&mut rng, 0.05, 8.0);
        let t = in_range(&mut rng, 0.05, 8.0);
        let k = (i % 4) as u32;
        let c = ctx(q);
        let auto = Truncation::Auto;
        let mut cases: Vec<(&str, Result<(f64, f64), Error>)> = Vec::new();
        for form in [Phi10Form::Series, Phi10Form::Product] {
            let f = |tr| phi10_eval(&c, a, x, form, tr);
            cases.push(("phi10", f(auto).and_then(|e| longer(e, f))));
        }
        let f = |tr| ln_qpoch_inf_eval(&c, x, tr);
        cases.push(("ln qpoch", f(auto).and_then(|e| longer(e, f))));
        let f = |tr| ln_qpoch_ratio_eval(&c, s, t, tr);
        cases.push(("ln ratio", f(auto).and_then(|e| longer(e, f))));
        let f = |tr| psi_series_eval(&c, s, k, tr);
        cases.push(("psi series", f(auto).and_then(|e| longer(e, f))));
        for (what, r) in cases {
            let (diff, bound) = r.map_err(|e| format!("{what} q={q}: {e}"))?;
            checked += 1;
            if diff > bound {
                return Err(format!("{what} at q={q} a={a} x={x} s={s} t={t} k={k}: |diff| {diff:.2e} > err {bound:.2e}"));
            }
        }
    }
    Ok(format!("1000 phi10 pairs agree; {checked} error bounds hold against 4x truncation"))
}

fn strip_wall_time(json: &[u8]) -> Vec<u8> {
    let text = String::from_utf8_lossy(json);
    text.lines().filter(|l| !l.contains("\"wall_time_s\"")).collect::<Vec<_>>().join("\n").into_bytes()
}

fn determinism(first: &[u8], second: &[u8]) -> Check {
    let (a, b) = (strip_wall_time(first), strip_wall_time(second));
    if a == b {
        Ok(format!("{} bytes identical", a.len()))
    } else {
        let at = a.iter().zip(&b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()));
        Err(format!("reports differ at byte {at}"))
    }
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let first = run_cli_suite(&dir.path().join("a.json"));
    let second = run_cli_suite(&dir.path().join("b.json"));

    let results: Vec<(u32, &str, Check)> = vec![
        (1, "identity suite", identities()),
        (
            2,
            "inequality suite",
            first.as_ref().map_err(Clone::clone).and_then(|(j, s)| inequality_suite(j, *s)),
        ),
        (3, "zero location", zero_location()),
        (4, "classical limits", classical_limits()),
        (5, "derivative consistency", derivatives()),
        (6, "oracle equivalence", oracle_equivalence()),
        (
            7,
            "determinism",
            match (&first, &second) {
                (Ok((a, _)), Ok((b, _))) => determinism(a, b),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            },
        ),
    ];

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(m) => println!("criterion {n} ({name}): PASS: {m}"),
            Err(m) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL: {m}");
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
