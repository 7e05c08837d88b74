//! Full analysis of one sequence, rendered as an aligned text block or as
//! `key=value` records that parse back into the same report.

use std::fmt::{self, Write as _};

use runcorr::autocorr::{
    aperiodic_direct, merit_factor, peak_sidelobe_level, periodic_direct, MeritFactor,
};
use runcorr::runvector::{canonicalize_periodic, periodic_run_vector, run_vector};
use runcorr::skew::{is_balanced, is_skew_symmetric};
use runcorr::verify::{sequence_identities, RunVectorFn};
use runcorr::{BinarySequence, RunLengthEncoding};

use crate::input::{parse_sequence, InputFormat};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub input: String,
    pub sequence: BinarySequence,
    pub rle: RunLengthEncoding,
    pub aperiodic: Vec<i64>,
    pub periodic: Vec<i64>,
    pub run_vector: Vec<i64>,
    /// Periodic run vector of the canonical rotation.
    pub periodic_run_vector: Vec<i64>,
    /// Left rotation used for the periodic run vector.
    pub rotation: usize,
    pub merit: MeritFactor,
    pub psl: Option<u64>,
    pub barker: bool,
    pub skew: bool,
    pub balanced: bool,
    pub checks: Vec<Check>,
}

impl AnalysisReport {
    pub fn n(&self) -> usize {
        self.sequence.len()
    }

    pub fn gamma(&self) -> usize {
        self.rle.gamma()
    }

    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn analyze(input: &str, format: InputFormat) -> Result<AnalysisReport, CliError> {
    analyze_with(input, format, run_vector)
}

/// [`analyze`] with the run vector used by the consistency checks swapped.
pub fn analyze_with(
    input: &str,
    format: InputFormat,
    rv_fn: RunVectorFn,
) -> Result<AnalysisReport, CliError> {
    let input = input.trim();
    let sequence = parse_sequence(input, format)?;
    let rle = sequence.to_rle();
    let c = aperiodic_direct(&sequence);
    let psl = peak_sidelobe_level(&c).ok();
    let (periodic_rv, rotation) = if sequence.is_constant() {
        (vec![0; sequence.len() - 1], 0)
    } else {
        let (rotated, s) = canonicalize_periodic(&sequence)?;
        (periodic_run_vector(&rotated.to_rle())?.values().to_vec(), s)
    };
    let suite = sequence_identities(&sequence, rv_fn);
    let checks = suite
        .tallies
        .iter()
        .map(|(id, t)| Check {
            name: id.name().to_string(),
            passed: t.failed == 0,
        })
        .collect();
    Ok(AnalysisReport {
        input: input.to_string(),
        run_vector: run_vector(&rle).values().to_vec(),
        periodic: periodic_direct(&sequence).into_values(),
        merit: merit_factor(&c),
        barker: psl.is_none_or(|p| p <= 1),
        skew: is_skew_symmetric(&sequence),
        balanced: is_balanced(&rle),
        aperiodic: c.into_values(),
        periodic_run_vector: periodic_rv,
        rotation,
        psl,
        rle,
        sequence,
        checks,
    })
}

fn ints(values: &[i64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn merit_decimal(m: &MeritFactor) -> String {
    m.value()
        .map_or_else(|| "undefined".to_string(), |v| format!("{v:.6}"))
}

fn merit_ratio(m: &MeritFactor) -> String {
    if m.is_undefined() {
        "undefined".to_string()
    } else {
        format!("{}/{}", m.numerator, m.denominator)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl AnalysisReport {
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        let mut field = |key: &str, value: &dyn fmt::Display| {
            writeln!(out, "{key}={value}").expect("write to string");
        };
        field("input", &self.input);
        field("sequence", &self.sequence);
        field("n", &self.n());
        field("gamma", &self.gamma());
        field("rle", &self.rle);
        field("C", &ints(&self.aperiodic));
        field("periodic_C", &ints(&self.periodic));
        field("R", &ints(&self.run_vector));
        field("periodic_R", &ints(&self.periodic_run_vector));
        field("periodic_rotation", &self.rotation);
        field("merit", &merit_ratio(&self.merit));
        field("merit_decimal", &merit_decimal(&self.merit));
        field(
            "psl",
            &self
                .psl
                .map_or_else(|| "none".to_string(), |p| p.to_string()),
        );
        field("barker", &self.barker);
        field("skew", &self.skew);
        field("balanced", &self.balanced);
        for c in &self.checks {
            field(
                &format!("check.{}", c.name),
                &if c.passed { "pass" } else { "fail" },
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut row = |label: &str, value: String| {
            writeln!(out, "{label:<14}{value}").expect("write to string");
        };
        row("input", self.input.clone());
        row("sequence", self.sequence.to_string());
        row("length", self.n().to_string());
        row("runs", format!("{} ({})", self.gamma(), self.rle));
        row("C", ints(&self.aperiodic));
        row("periodic C", ints(&self.periodic));
        row("R", ints(&self.run_vector));
        row(
            "periodic R",
            format!(
                "{} (rotation {})",
                ints(&self.periodic_run_vector),
                self.rotation
            ),
        );
        row("merit factor", self.merit.to_string());
        row(
            "PSL",
            self.psl
                .map_or_else(|| "none".to_string(), |p| p.to_string()),
        );
        row("Barker", yes_no(self.barker).to_string());
        row(
            "skew",
            format!(
                "{} (balanced: {})",
                yes_no(self.skew),
                yes_no(self.balanced)
            ),
        );
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        row(
            "checks",
            format!("{} passed, {failed} failed", self.checks.len() - failed),
        );
        for c in &self.checks {
            writeln!(
                out,
                "  {:<28}{}",
                c.name,
                if c.passed { "pass" } else { "FAIL" }
            )
            .expect("write to string");
        }
        out
    }

    /// Parses the output of [`AnalysisReport::to_records`].
    pub fn from_records(text: &str) -> Result<Self, CliError> {
        let mut fields = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Records(format!("line {}: missing '='", i + 1)))?;
            fields.push((key.to_string(), value.to_string()));
        }
        let get = |key: &str| -> Result<&str, CliError> {
            fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| CliError::Records(format!("missing field {key}")))
        };
        let num = |key: &str| -> Result<usize, CliError> {
            get(key)?
                .parse()
                .map_err(|_| CliError::Records(format!("field {key} is not a number")))
        };
        let list = |key: &str| -> Result<Vec<i64>, CliError> {
            let v = get(key)?;
            if v.is_empty() {
                return Ok(Vec::new());
            }
            v.split(',')
                .map(|x| {
                    x.parse()
                        .map_err(|_| CliError::Records(format!("field {key}: bad integer {x:?}")))
                })
                .collect()
        };
        let flag = |key: &str| -> Result<bool, CliError> {
            get(key)?
                .parse()
                .map_err(|_| CliError::Records(format!("field {key} is not true/false")))
        };

        let sequence: BinarySequence = get("sequence")?.parse()?;
        let rle: RunLengthEncoding = get("rle")?.parse()?;
        let n = sequence.len();
        if num("n")? != n || num("gamma")? != rle.gamma() || rle.to_sequence() != sequence {
            return Err(CliError::Records(
                "n, gamma, rle and sequence disagree".into(),
            ));
        }
        let merit = match get("merit")? {
            "undefined" => MeritFactor::from_energy(n, 0),
            ratio => {
                let (num, den) = ratio
                    .split_once('/')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or_else(|| CliError::Records(format!("bad merit factor {ratio:?}")))?;
                MeritFactor {
                    numerator: num,
                    denominator: den,
                }
            }
        };
        if get("merit_decimal")? != merit_decimal(&merit) {
            return Err(CliError::Records(
                "merit_decimal does not match merit".into(),
            ));
        }
        let psl = match get("psl")? {
            "none" => None,
            p => Some(
                p.parse()
                    .map_err(|_| CliError::Records(format!("bad psl {p:?}")))?,
            ),
        };
        let checks = fields
            .iter()
            .filter_map(|(k, v)| {
                k.strip_prefix("check.").map(|name| match v.as_str() {
                    "pass" => Ok(Check {
                        name: name.to_string(),
                        passed: true,
                    }),
                    "fail" => Ok(Check {
                        name: name.to_string(),
                        passed: false,
                    }),
                    other => Err(CliError::Records(format!(
                        "check {name}: bad outcome {other:?}"
                    ))),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            input: get("input")?.to_string(),
            aperiodic: list("C")?,
            periodic: list("periodic_C")?,
            run_vector: list("R")?,
            periodic_run_vector: list("periodic_R")?,
            rotation: num("periodic_rotation")?,
            merit,
            psl,
            barker: flag("barker")?,
            skew: flag("skew")?,
            balanced: flag("balanced")?,
            checks,
            sequence,
            rle,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_analysis() {
        let r = analyze("+:7,3,3", InputFormat::Auto).unwrap();
        assert_eq!(r.run_vector, [0, 0, -3, 0, 0, 1, -1, 0, 0, 1, 0, 0]);
        assert_eq!(r.aperiodic, [13, 8, 3, -2, -1, 0, 1, 0, 1, 2, 3, 2, 1, 0]);
        assert_eq!(r.psl, Some(8));
        assert!(r.consistent());

        let p = analyze("+:3,6,3,3", InputFormat::Auto).unwrap();
        assert_eq!(
            p.periodic_run_vector,
            [0, 0, -3, 0, 0, 1, 0, 0, 1, 0, 0, -3, 0, 0]
        );
        assert_eq!(p.rotation, 0);
    }

    #[test]
    fn single_element() {
        let r = analyze("+", InputFormat::Auto).unwrap();
        assert_eq!((r.n(), r.gamma()), (1, 1));
        assert_eq!(r.aperiodic, [1, 0]);
        assert!(r.merit.is_undefined());
        assert!(r
            .to_records()
            .contains("merit=undefined\nmerit_decimal=undefined\n"));
        assert_eq!(AnalysisReport::from_records(&r.to_records()).unwrap(), r);
    }

    #[test]
    fn records_round_trip() {
        for input in ["+:7,3,3", "-:6,7", "+++++--++-+-+", "1100101", "+-", "-"] {
            let r = analyze(input, InputFormat::Auto).unwrap();
            let parsed = AnalysisReport::from_records(&r.to_records()).unwrap();
            assert_eq!(parsed, r);
            assert_eq!(analyze(&parsed.input, InputFormat::Auto).unwrap(), r);
        }
    }

    #[test]
    fn malformed_records() {
        let good = analyze("+:7,3,3", InputFormat::Auto).unwrap().to_records();
        assert!(AnalysisReport::from_records("n=3").is_err());
        assert!(AnalysisReport::from_records(&good.replace("gamma=3", "gamma=4")).is_err());
        assert!(AnalysisReport::from_records(&good.replace("0.862245", "0.9")).is_err());
        assert!(AnalysisReport::from_records(&good.replace("psl=8", "psl")).is_err());
    }
}
