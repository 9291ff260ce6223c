//! `gquat`: classify, count and compare generalized quaternion rings over odd `Z/nZ`.
//!
//! Exit status: 0 success, 1 usage error, 2 a verification check failed,
//! 3 a search or enumeration cap was exceeded.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gquat::classifier::{brute_force_partition, canonical_representative, FingerprintDifference};
use gquat::iso::WitnessDoc;
use gquat::{
    class_count, classify_n, find_isomorphism, fingerprint, label, run_suite, CanonicalClass, ClassReport, Error,
    Ledger, PrimePower, RingParams, SearchCaps, Suite,
};
use serde::Serialize;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gquat",
    version,
    about = "Generalized quaternion rings (a,b / Z/nZ) for odd n"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(flatten)]
    caps: CapArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct CapArgs {
    /// Largest number of pure elements (n^3) a scan may visit.
    #[arg(long, global = true, value_name = "COUNT")]
    max_pure_elements: Option<u64>,
    /// Largest modulus for oracle-backed commands.
    #[arg(long, global = true, value_name = "N")]
    oracle_max_n: Option<u64>,
    /// Largest modulus for the 2x2 matrix embedding search.
    #[arg(long, global = true, value_name = "N")]
    m2_max_n: Option<u64>,
}

impl CapArgs {
    fn caps(&self) -> SearchCaps {
        let d = SearchCaps::default();
        SearchCaps {
            enumeration: self.max_pure_elements.unwrap_or(d.enumeration),
            oracle_n: self.oracle_max_n.unwrap_or(d.oracle_n),
            m2_n: self.m2_max_n.unwrap_or(d.m2_n),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Canonical class of (a,b / Z/nZ), one component per prime power of n.
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Number of isomorphism classes over Z/nZ.
    Count {
        #[arg(long)]
        n: u64,
        /// Also partition all n^2 rings with the exhaustive oracle.
        #[arg(long)]
        brute_force: bool,
    },
    /// Decide whether (a,b / Z/nZ) and (a2,b2 / Z/nZ) are isomorphic.
    Iso {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        a2: i64,
        #[arg(long, allow_hyphen_values = true)]
        b2: i64,
    },
    /// Partition every ring over Z/nZ into isomorphism classes.
    Enumerate {
        #[arg(long)]
        n: u64,
    },
    /// Run a self-check suite over Z/p^kZ.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemmas,
    Invariants,
    M2,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Invariants => Suite::Invariants,
            SuiteArg::M2 => Suite::M2,
        }
    }
}

/// A rendered report plus whether every check in it passed.
struct Output {
    text: String,
    verified: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, verified: true }
    }
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InstanceTooLarge { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn check_n(n: u64) -> Result<(), Failure> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Failure::Usage(format!("--n must be odd and at least 3, got {n}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct ComponentView {
    prime_power: String,
    p: u64,
    k: u32,
    s: u32,
    r: u32,
    token: String,
    rep_a: u64,
    rep_b: u64,
}

impl From<&CanonicalClass> for ComponentView {
    fn from(c: &CanonicalClass) -> Self {
        ComponentView {
            prime_power: c.pp.to_string(),
            p: c.pp.p(),
            k: c.pp.k(),
            s: c.s,
            r: c.r,
            token: c.token(),
            rep_a: c.rep.0,
            rep_b: c.rep.1,
        }
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    n: u64,
    a: u64,
    b: u64,
    label: String,
    rep_a: u64,
    rep_b: u64,
    components: Vec<ComponentView>,
}

fn classify(n: u64, a: i64, b: i64, format: Format) -> Result<Output, Failure> {
    check_n(n)?;
    let params = RingParams::odd(n, a, b)?;
    let classes = classify_n(params.a(), params.b(), n)?;
    let rep = canonical_representative(params.a(), params.b(), n)?;
    let report = ClassifyReport {
        n,
        a: params.a(),
        b: params.b(),
        label: label(&classes),
        rep_a: rep.a(),
        rep_b: rep.b(),
        components: classes.iter().map(ComponentView::from).collect(),
    };
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("n,a,b,prime_power,s,r,token,rep_a,rep_b\n");
            for c in &report.components {
                let _ = writeln!(
                    out,
                    "{n},{},{},{},{},{},{},{},{}",
                    report.a, report.b, c.prime_power, c.s, c.r, c.token, c.rep_a, c.rep_b
                );
            }
            out
        }
        Format::Text => {
            let mut out = format!("{params}\nlabel: {}\nrep ({},{})\n", report.label, rep.a(), rep.b());
            for c in &report.components {
                let _ = writeln!(out, "  {}: rep ({},{})", c.token, c.rep_a, c.rep_b);
            }
            out
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct CountReport {
    n: u64,
    formula: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
}

fn count(n: u64, brute: bool, caps: &SearchCaps, format: Format) -> Result<Output, Failure> {
    check_n(n)?;
    let formula = class_count(n)?;
    let brute_force = if brute {
        Some(brute_force_partition(n, caps)?.total)
    } else {
        None
    };
    let verdict = brute_force.map(|b| if b == formula { "EQUAL" } else { "DIFFERENT" });
    let report = CountReport {
        n,
        formula,
        brute_force,
        verdict,
    };
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let opt = |x: Option<String>| x.unwrap_or_default();
            format!(
                "n,formula,brute_force,verdict\n{n},{formula},{},{}\n",
                opt(brute_force.map(|b| b.to_string())),
                opt(verdict.map(str::to_string))
            )
        }
        Format::Text => {
            let mut out = format!("n = {n}\nformula: {formula}\n");
            if let (Some(b), Some(v)) = (brute_force, verdict) {
                let _ = write!(out, "brute force: {b}\nverdict: {v}\n");
            }
            out
        }
    };
    Ok(Output {
        text,
        verified: verdict != Some("DIFFERENT"),
    })
}

#[derive(Serialize)]
struct IsoReport {
    n: u64,
    source: [u64; 2],
    target: [u64; 2],
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distinguishing: Option<FingerprintDifference>,
}

fn iso(n: u64, (a, b): (i64, i64), (a2, b2): (i64, i64), caps: &SearchCaps, format: Format) -> Result<Output, Failure> {
    check_n(n)?;
    caps.check_oracle(n)?;
    let r1 = RingParams::odd(n, a, b)?;
    let r2 = RingParams::odd(n, a2, b2)?;
    let witness = find_isomorphism(r1, r2, caps)?;
    let distinguishing = match witness {
        Some(_) => None,
        None => fingerprint(r1, caps)?.first_difference(&fingerprint(r2, caps)?),
    };
    let report = IsoReport {
        n,
        source: [r1.a(), r1.b()],
        target: [r2.a(), r2.b()],
        verdict: if witness.is_some() {
            "isomorphic"
        } else {
            "non-isomorphic"
        },
        witness: witness.as_ref().map(|w| w.to_doc()),
        distinguishing,
    };
    let evidence = match (&report.witness, &report.distinguishing) {
        (Some(doc), _) => {
            let rows: Vec<String> = doc
                .matrix
                .iter()
                .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            format!("matrix:{}", rows.join(";"))
        }
        (None, Some(FingerprintDifference::PureSquareHistogram { t, left, right })) => {
            format!("pure-square-histogram:t={t}:{left}:{right}")
        }
        (None, Some(FingerprintDifference::IsotropicCount { p, left, right })) => {
            format!("isotropic-count:p={p}:{left}:{right}")
        }
        (None, None) => "none".to_string(),
    };
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => format!(
            "n,a,b,a2,b2,verdict,evidence\n{n},{},{},{},{},{},{evidence}\n",
            r1.a(),
            r1.b(),
            r2.a(),
            r2.b(),
            report.verdict
        ),
        Format::Text => {
            let mut out = format!("{r1} vs {r2}\n{}\n", report.verdict);
            match (&report.witness, &report.distinguishing) {
                (Some(doc), _) => {
                    out.push_str("witness (column c is the image of basis element c of 1, i, j, k):\n");
                    for row in &doc.matrix {
                        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                        let _ = writeln!(out, "  [{}]", cells.join(" "));
                    }
                }
                (None, Some(d)) => {
                    let _ = writeln!(out, "distinguishing bin: {d}");
                }
                (None, None) => out.push_str("no fingerprint component differs\n"),
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn enumerate(n: u64, caps: &SearchCaps, format: Format) -> Result<Output, Failure> {
    check_n(n)?;
    let report: ClassReport = brute_force_partition(n, caps)?;
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut out = format!("{} classes over Z/{n}Z\n", report.total);
            for c in &report.classes {
                let _ = writeln!(
                    out,
                    "  ({},{})  size {:>4}  {}",
                    c.rep_a, c.rep_b, c.class_size, c.canonical_tags
                );
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn verify(suite: Suite, p: u64, k: u32, caps: &SearchCaps, format: Format) -> Result<Output, Failure> {
    let pp = PrimePower::new(p, k)?;
    let ledger: Ledger = run_suite(suite, &pp, caps)?;
    for failed in ledger.failures() {
        eprintln!(
            "check failed: {} [{}]: {}",
            failed.check,
            failed.case,
            failed.detail.as_deref().unwrap_or("")
        );
    }
    let text = match format {
        Format::Json => json(&ledger),
        Format::Csv => ledger.to_csv(),
        Format::Text => {
            let mut out = String::new();
            for c in &ledger.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = write!(out, "{mark} {} [{}]", c.check, c.case);
                if let Some(d) = &c.detail {
                    let _ = write!(out, ": {d}");
                }
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "{}: {}/{} checks passed over Z/{}Z",
                ledger.suite, ledger.passed, ledger.total, ledger.n
            );
            out
        }
    };
    Ok(Output {
        text,
        verified: ledger.all_passed(),
    })
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let caps = cli.caps.caps();
    let format = cli.format;
    match cli.command {
        Command::Classify { n, a, b } => classify(n, a, b, format),
        Command::Count { n, brute_force } => count(n, brute_force, &caps, format),
        Command::Iso { n, a, b, a2, b2 } => iso(n, (a, b), (a2, b2), &caps, format),
        Command::Enumerate { n } => enumerate(n, &caps, format),
        Command::Verify { suite, p, k } => verify(suite.into(), p, k, &caps, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = run(cli);
    match &result {
        Ok(out) => print!("{}", out.text),
        Err(Failure::Usage(msg) | Failure::Cap(msg)) => eprintln!("error: {msg}"),
    }
    ExitCode::from(exit_status(&result))
}

fn exit_status(result: &Result<Output, Failure>) -> u8 {
    match result {
        Ok(out) if out.verified => 0,
        Ok(_) => EXIT_VERIFICATION,
        Err(Failure::Usage(_)) => EXIT_USAGE,
        Err(Failure::Cap(_)) => EXIT_CAP,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_statuses_are_distinct() {
        let ok = Ok(Output::ok(String::new()));
        let failed = Ok(Output {
            text: String::new(),
            verified: false,
        });
        let usage = Err(Failure::from(Error::Parse("x".into())));
        let cap = Err(Failure::from(Error::InstanceTooLarge {
            what: "x",
            size: 2,
            cap: 1,
        }));
        let codes: Vec<u8> = [ok, failed, usage, cap].iter().map(exit_status).collect();
        assert_eq!(codes, vec![0, EXIT_VERIFICATION, EXIT_USAGE, EXIT_CAP]);
        assert_eq!(codes, vec![0, 2, 1, 3]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
