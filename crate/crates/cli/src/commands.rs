use crate::table::Table;
use crate::{Cli, Command, Format};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use pelem_core::cremona_table::cremona_rank_bound;
use pelem_core::cyclotomic::{
    cyclotomic_poly, multiplicative_order, roots_in_prime_field, verify_lemma_range,
};
use pelem_core::ff_oracle::{
    compare_with_eigenspace, group_order, oracle_sweep, rational_points_structure,
    sharpness_row_at, sharpness_table, SharpnessRow, SweepConfig,
};
use pelem_core::presentation::{FileError, TorusFile};
use pelem_core::torus_rank::{
    admissible_primes, euler_phi, fixed_point_rank, multiplicity_chain_check, sharp_construction,
};
use pelem_core::weyl_audit::audit_pgl4;
use pelem_core::{Error, PrimeModulus};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) => EXIT_DOMAIN,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Domain(_) => "domain",
            Failure::Verify(_) => "verification",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) => Failure::Verify(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Invalid(inner) => inner.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub struct Report {
    pub results: Value,
    /// `Some` for verification commands.
    pub pass: Option<bool>,
    pub text: String,
}

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Cyclotomic { .. } => "cyclotomic",
        Command::Lemma { .. } => "lemma",
        Command::Bound { .. } => "bound",
        Command::TorusRank { .. } => "torus-rank",
        Command::Oracle { .. } => "oracle",
        Command::Sharpness { .. } => "sharpness",
        Command::WeylAudit { .. } => "weyl-audit",
    }
}

fn inputs(cmd: &Command) -> Value {
    let path = |f: &Option<std::path::PathBuf>| f.as_ref().map(|p| p.display().to_string());
    match cmd {
        Command::Cyclotomic { n, p } => json!({ "n": n, "p": p }),
        Command::Lemma { max_n, primes } => json!({ "max_n": max_n, "primes": primes }),
        Command::Bound { p, t } => json!({ "p": p, "t": t }),
        Command::TorusRank { file, p } => json!({ "file": file.display().to_string(), "p": p }),
        Command::Oracle {
            file,
            p,
            seed,
            samples,
            primes,
            q,
        } => match file {
            Some(_) => json!({ "file": path(file), "p": p }),
            None => {
                let defaults = SweepConfig::default();
                let primes = primes
                    .clone()
                    .unwrap_or_else(|| defaults.primes.iter().map(|p| p.get()).collect());
                let q = q.clone().unwrap_or(defaults.field_sizes);
                json!({ "seed": seed, "samples": samples, "primes": primes, "q": q })
            }
        },
        Command::Sharpness { d, t, p, file } => {
            json!({ "d": d, "t": t, "p": p, "file": path(file) })
        }
        Command::WeylAudit { p } => json!({ "p": p }),
    }
}

/// Runs the command and renders it; returns stdout and the exit code.
pub fn run(cli: &Cli) -> (String, u8) {
    let name = command_name(&cli.command);
    let inputs = inputs(&cli.command);
    match execute(&cli.command) {
        Ok(report) => {
            let code = if report.pass == Some(false) {
                EXIT_VERIFY
            } else {
                EXIT_OK
            };
            let out = match cli.format {
                Format::Text => {
                    let mut s = report.text;
                    if let Some(pass) = report.pass {
                        let _ = writeln!(s, "{}", if pass { "PASS" } else { "FAIL" });
                    }
                    s
                }
                Format::Json => {
                    let mut doc =
                        json!({ "command": name, "inputs": inputs, "results": report.results });
                    if let Some(pass) = report.pass {
                        doc["pass"] = Value::from(pass);
                    }
                    render_json(&doc)
                }
            };
            (out, code)
        }
        Err(failure) => {
            let out = match cli.format {
                Format::Text => {
                    eprintln!("error: {}", failure.message());
                    String::new()
                }
                Format::Json => render_json(&json!({
                    "command": name,
                    "inputs": inputs,
                    "error": { "kind": failure.kind(), "message": failure.message() },
                })),
            };
            (out, failure.code())
        }
    }
}

pub fn render_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("values serialize");
    s.push('\n');
    s
}

fn prime(p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

fn read_torus_file(path: &Path) -> Result<TorusFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(TorusFile::parse(&text)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn execute(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Cyclotomic { n, p } => cyclotomic(*n, *p),
        Command::Lemma { max_n, primes } => lemma(*max_n, primes),
        Command::Bound { p, t } => bound(*p, *t),
        Command::TorusRank { file, p } => torus_rank(file, *p),
        Command::Oracle {
            file: Some(file),
            p,
            ..
        } => oracle_file(file, p.expect("clap requires --p")),
        Command::Oracle {
            file: None,
            seed,
            samples,
            primes,
            q,
            ..
        } => oracle_sweep_cmd(*seed, *samples, primes.as_deref(), q.as_deref()),
        Command::Sharpness { d, t, p, file } => sharpness(*d, *t, *p, file.as_deref()),
        Command::WeylAudit { p } => weyl(*p),
    }
}

fn cyclotomic(n: u64, p: Option<u64>) -> Result<Report, Failure> {
    let poly = cyclotomic_poly(n)?;
    let mut results = json!({
        "n": n,
        "degree": poly.degree(),
        "phi_n": euler_phi(n)?,
        "coefficients": poly.coeffs().iter().map(big).collect::<Vec<_>>(),
        "polynomial": poly.to_string(),
    });
    let mut text = format!("Phi_{n} = {poly}\ndegree {} = phi({n})\n", poly.degree());
    if let Some(p) = p {
        let pm = prime(p)?;
        let reduced = poly.reduce_mod(pm);
        let roots = roots_in_prime_field(&reduced)?;
        let mut rows = Vec::new();
        let mut table = Table::new(&["root", "multiplicity", "order"]);
        for &(r, m) in &roots {
            let order = multiplicative_order(r as i64, pm)?;
            table.row(&[r, m, order]);
            rows.push(json!({ "root": r, "multiplicity": m, "order": order }));
        }
        results["reduced"] = json!({
            "p": p,
            "coefficients": reduced.coeffs(),
            "polynomial": reduced.to_string(),
            "roots": rows,
        });
        let _ = writeln!(text, "Phi_{n} mod {p} = {reduced}");
        if roots.is_empty() {
            let _ = writeln!(text, "no roots in Z/{p}");
        } else {
            let _ = writeln!(text, "{}", table.render());
        }
    }
    Ok(Report {
        results,
        pass: None,
        text,
    })
}

fn lemma(max_n: u64, primes: &[u64]) -> Result<Report, Failure> {
    let primes: Vec<PrimeModulus> = primes.iter().map(|&p| prime(p)).collect::<Result<_, _>>()?;
    let report = verify_lemma_range(max_n, &primes)?;
    let mut text = format!(
        "n <= {}, primes {:?}\n(n, p, t) triples: {}\nprime-power identities: {}\nroot counts: {}\ncounterexamples: {}\n",
        report.n_max,
        report.primes,
        report.triples,
        report.identities,
        report.root_counts,
        report.counterexamples.len()
    );
    if !report.counterexamples.is_empty() {
        let mut table = Table::new(&["check", "n", "p", "t", "f", "detail"]);
        for c in &report.counterexamples {
            let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            table.row(&[
                format!("{:?}", c.check),
                c.n.to_string(),
                c.p.to_string(),
                opt(c.t),
                opt(c.f.map(u64::from)),
                c.detail.clone(),
            ]);
        }
        let _ = writeln!(text, "{}", table.render());
    }
    let mut results = to_value(&report);
    results.as_object_mut().expect("object").remove("pass");
    Ok(Report {
        results,
        pass: Some(report.pass),
        text,
    })
}

fn bound(p: u64, t: u64) -> Result<Report, Failure> {
    let b = cremona_rank_bound(prime(p)?, t)?;
    let results = json!({
        "p": b.p,
        "t": b.t,
        "rank_bound": b.rank_bound,
        "attained_by": b.attained_by.description(),
    });
    let text = format!(
        "p = {}, t = {}\nrank bound: {}\nattained by: {}\n",
        b.p, b.t, b.rank_bound, b.attained_by
    );
    Ok(Report {
        results,
        pass: None,
        text,
    })
}

fn torus_rank(file: &Path, p: u64) -> Result<Report, Failure> {
    let pm = prime(p)?;
    let pres = read_torus_file(file)?.to_presentation()?;
    let cert = fixed_point_rank(&pres, pm)?;
    let chain = multiplicity_chain_check(&pres, pm)?;

    let mut text = format!(
        "dimension {}, chi order t = {}, sigma of order {}, p = {p}\n\
         char poly = {}\n\
         eps = {} (inverse of the smallest residue of order {})\n\
         eigenspace rank {} <= bound floor({}/phi({})) = {}\n",
        pres.dimension(),
        pres.chi_order(),
        pres.sigma_order(),
        cert.char_poly_indices,
        cert.eps_used,
        cert.t,
        cert.eigenspace_rank,
        pres.dimension(),
        cert.t,
        cert.upper_bound,
    );
    let mut factors = Table::new(&["factor", "phi", "mult of eps", "within phi(d_i)/phi(t)"]);
    for f in &chain.factors {
        factors.row(&[
            format!("Phi_{}", f.index),
            f.phi_index.to_string(),
            f.multiplicity.to_string(),
            f.within_bound.to_string(),
        ]);
    }
    let _ = writeln!(text, "{}", factors.render());
    let _ = writeln!(
        text,
        "total multiplicity {} <= {}",
        chain.total_multiplicity, chain.total_bound
    );
    let mut per_eps = Table::new(&["eps", "char mult", "eigenspace rank"]);
    for m in &chain.per_eps {
        per_eps.row(&[m.eps, m.char_multiplicity, m.eigenspace_rank]);
    }
    let _ = writeln!(text, "{}", per_eps.render());
    if !chain.pass {
        let _ = writeln!(
            text,
            "violated: multiplicity chain for sigma = {} at p = {p}",
            pres.sigma()
        );
    }

    let results = json!({
        "dimension": pres.dimension(),
        "chi_order": pres.chi_order(),
        "sigma_order": pres.sigma_order(),
        "certificate": to_value(&cert),
        "chain": to_value(&chain),
    });
    Ok(Report {
        results,
        pass: Some(chain.pass),
        text,
    })
}

fn oracle_file(file: &Path, p: u64) -> Result<Report, Failure> {
    let pm = prime(p)?;
    let tor = read_torus_file(file)?.to_finite_field_torus()?;
    let structure = rational_points_structure(&tor)?;
    let order = group_order(&tor);
    let c = compare_with_eigenspace(&tor, pm)?;
    let pass = c.consistent() && structure.order() == order;
    let invariants: Vec<String> = structure
        .invariants()
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut text = format!(
        "T(F_{}) of dimension {}: invariants ({}), order {}\n\
         t = ord_{p}({}) = {}, eps = q^-1 = {}\n",
        tor.q(),
        tor.dimension(),
        invariants.join(", "),
        order,
        tor.q(),
        c.t,
        c.eps,
    );
    let mut table = Table::new(&["route", "p-rank"]);
    table.row(&["smith invariants", &c.oracle_rank.to_string()]);
    table.row(&["kernel of q*sigma - I", &c.kernel_rank.to_string()]);
    table.row(&["eigenspace at eps", &c.eigenspace_rank.to_string()]);
    table.row(&["bound floor(d/phi(t))", &c.bound.to_string()]);
    let _ = writeln!(text, "{}", table.render());
    if !pass {
        let _ = writeln!(
            text,
            "violated: oracle/eigenspace equivalence for q = {}, p = {p}, sigma = {}",
            tor.q(),
            tor.sigma()
        );
    }
    let results = json!({
        "q": tor.q(),
        "dimension": tor.dimension(),
        "invariants": structure.invariants().iter().map(big).collect::<Vec<_>>(),
        "group_order": big(&order),
        "comparison": to_value(&c),
    });
    Ok(Report {
        results,
        pass: Some(pass),
        text,
    })
}

fn oracle_sweep_cmd(
    seed: u64,
    samples: usize,
    primes: Option<&[u64]>,
    q: Option<&[u64]>,
) -> Result<Report, Failure> {
    let mut config = SweepConfig {
        seed,
        samples,
        ..SweepConfig::default()
    };
    if let Some(primes) = primes {
        config.primes = primes.iter().map(|&p| prime(p)).collect::<Result<_, _>>()?;
    }
    if let Some(q) = q {
        config.field_sizes = q.to_vec();
    }
    let report = oracle_sweep(&config)?;
    let mut text = format!(
        "seed {}, {} random tori, {} (q, p) comparisons\nbound attained {} times, max p-rank {}\nviolations: {}\n",
        report.seed,
        report.samples,
        report.comparisons,
        report.bound_attained,
        report.max_rank,
        report.violations.len()
    );
    for v in &report.violations {
        let _ = writeln!(
            text,
            "violated: sample {} sigma {:?}: {}",
            v.sample, v.sigma, v.detail
        );
    }
    let mut results = to_value(&report);
    results.as_object_mut().expect("object").remove("pass");
    Ok(Report {
        results,
        pass: Some(report.pass),
        text,
    })
}

fn sharpness_rows_text(rows: &[SharpnessRow]) -> String {
    let mut table = Table::new(&[
        "d",
        "t",
        "p",
        "q",
        "bound",
        "eigenspace",
        "oracle",
        "attained",
    ]);
    for r in rows {
        table.row(&[
            r.d.to_string(),
            r.t.to_string(),
            r.p.to_string(),
            r.q.to_string(),
            r.bound.to_string(),
            r.eigenspace_rank.to_string(),
            r.oracle_rank.to_string(),
            r.attained.to_string(),
        ]);
    }
    let mut s = table.render();
    s.push('\n');
    for r in rows.iter().filter(|r| !r.attained) {
        let _ = writeln!(
            s,
            "violated: bound not attained at d = {}, t = {}, p = {}, q = {}",
            r.d, r.t, r.p, r.q
        );
    }
    s
}

fn sharpness(
    d: Option<u64>,
    t: Option<u64>,
    p: Option<u64>,
    file: Option<&Path>,
) -> Result<Report, Failure> {
    let rows = match (file, t) {
        (Some(file), _) => {
            let pres = read_torus_file(file)?.to_presentation()?;
            vec![sharpness_row_at(
                &pres,
                prime(p.expect("clap requires --p"))?,
            )?]
        }
        (None, Some(t)) => {
            let d = d.expect("clap requires --d");
            let pres = sharp_construction(d, t)?;
            let pm = match p {
                Some(p) => prime(p)?,
                None => admissible_primes(t, 1)[0],
            };
            vec![sharpness_row_at(&pres, pm)?]
        }
        (None, None) => sharpness_table(d.unwrap_or(6))?,
    };
    let pass = rows.iter().all(|r| r.attained);
    Ok(Report {
        results: json!({ "rows": to_value(&rows) }),
        pass: Some(pass),
        text: sharpness_rows_text(&rows),
    })
}

fn weyl(p: u64) -> Result<Report, Failure> {
    let report = audit_pgl4(prime(p)?)?;
    let mut table = Table::new(&["element", "order", "char poly", "factors", "mult of -1"]);
    for e in &report.elements {
        let factors: Vec<String> = e.indices.iter().map(|d| format!("Phi_{d}")).collect();
        table.row(&[
            e.permutation.clone(),
            e.order.to_string(),
            e.char_poly.clone(),
            factors.join(" "),
            e.minus_one_multiplicity.to_string(),
        ]);
    }
    let mut text = table.render();
    text.push('\n');
    let checks = [
        ("24 elements", report.element_count == 24),
        (
            "matrices are the quotient action",
            report.quotient_action_ok,
        ),
        (
            "permutation -> matrix is a homomorphism",
            report.homomorphism_ok,
        ),
        ("matrix order = permutation order", report.orders_ok),
        (
            "cyclotomic indices within {1,2,3,4}",
            report.indices_within_range,
        ),
        (
            "indices divide an invariant degree",
            report.indices_divide_degrees,
        ),
        ("no element acts as -I", !report.contains_minus_identity),
        ("no char poly (X+1)^3", !report.contains_minus_one_cubed),
        (
            "multiplicity of -1 at most 2",
            report.max_minus_one_multiplicity <= 2,
        ),
    ];
    for (what, ok) in checks {
        let _ = writeln!(text, "{:<42}{}", what, if ok { "ok" } else { "VIOLATED" });
    }
    let _ = writeln!(
        text,
        "max multiplicity of -1 mod {p}: {}",
        report.max_minus_one_multiplicity
    );
    let mut results = to_value(&report);
    results.as_object_mut().expect("object").remove("pass");
    Ok(Report {
        results,
        pass: Some(report.pass),
        text,
    })
}
