//! JSON report schemas.
//!
//! Witness components are emitted as plain JSON integers of any size.
//! Rationals are `{"num": "<decimal>", "den": "<decimal>"}` because their
//! digits routinely run past anything a JSON reader would keep exact.
//! Every report embeds a [`RunManifest`].

use std::str::FromStr;

use erdos_straus_core::{
    BigRat, ScanOutcome, ScanReport, SearchConfig, SearchStatus, SeriesReport, Strategy, Witness,
};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

mod big_integer {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigUint::from_str(&n.to_string()).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub x_multiplier: u64,
    pub t_window: u64,
    pub numerator: u32,
    pub strategy: String,
}

impl From<&SearchConfig> for ConfigJson {
    fn from(c: &SearchConfig) -> Self {
        ConfigJson {
            x_multiplier: c.x_multiplier,
            t_window: c.t_window,
            numerator: c.numerator,
            strategy: c.strategy.as_str().to_owned(),
        }
    }
}

pub fn parse_strategy(s: &str) -> Result<Strategy> {
    match s {
        "first-found" => Ok(Strategy::FirstFound),
        "smallest-x" => Ok(Strategy::SmallestX),
        other => Err(Error::Usage(format!("unknown strategy {other:?}"))),
    }
}

impl TryFrom<&ConfigJson> for SearchConfig {
    type Error = Error;
    fn try_from(c: &ConfigJson) -> Result<Self> {
        Ok(SearchConfig {
            x_multiplier: c.x_multiplier,
            t_window: c.t_window,
            numerator: c.numerator,
            strategy: parse_strategy(&c.strategy)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRange {
    pub n_min: u64,
    pub n_max: u64,
    pub s: u32,
}

/// Provenance stamped onto every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: ConfigJson,
    pub timestamp: String,
    pub tool_version: String,
    pub input_range: InputRange,
    pub seed: u64,
}

impl RunManifest {
    pub fn new(command: &str, config: &SearchConfig, input_range: InputRange, seed: u64) -> Self {
        RunManifest {
            command: command.to_owned(),
            config: config.into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            input_range,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(with = "big_integer")]
    pub x: BigUint,
    #[serde(with = "big_integer")]
    pub t: BigUint,
    #[serde(with = "big_integer")]
    pub q: BigUint,
    #[serde(with = "big_integer")]
    pub y: BigUint,
    #[serde(with = "big_integer")]
    pub z: BigUint,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            x: w.x.clone(),
            t: w.t.clone(),
            q: w.q.clone(),
            y: w.y.clone(),
            z: w.z.clone(),
        }
    }
}

impl From<WitnessJson> for Witness {
    fn from(w: WitnessJson) -> Self {
        Witness {
            x: w.x,
            t: w.t,
            q: w.q,
            y: w.y,
            z: w.z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRat> for RatJson {
    fn from(r: &BigRat) -> Self {
        RatJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RatJson> for BigRat {
    type Error = Error;
    fn try_from(r: &RatJson) -> Result<Self> {
        let bad = |what: &str| Error::Usage(format!("bad rational {what}: {r:?}"));
        let num = BigInt::from_str(&r.num).map_err(|_| bad("numerator"))?;
        let den = BigInt::from_str(&r.den).map_err(|_| bad("denominator"))?;
        BigRat::new(num, den).ok_or_else(|| bad("denominator"))
    }
}

fn status_from_str(s: &str) -> Result<SearchStatus> {
    match s {
        "found" => Ok(SearchStatus::Found),
        "exhausted" => Ok(SearchStatus::Exhausted),
        "timed-out" => Ok(SearchStatus::TimedOut),
        other => Err(Error::Usage(format!("unknown status {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub n: u64,
    pub found: bool,
    pub status: String,
    pub witness: Option<WitnessJson>,
    pub x_tried: u64,
    pub t_tried: u64,
}

impl From<&ScanOutcome> for OutcomeJson {
    fn from(o: &ScanOutcome) -> Self {
        OutcomeJson {
            n: o.n,
            found: o.found(),
            status: o.status.as_str().to_owned(),
            witness: o.witness.as_ref().map(Into::into),
            x_tried: o.x_tried,
            t_tried: o.t_tried,
        }
    }
}

impl TryFrom<OutcomeJson> for ScanOutcome {
    type Error = Error;
    fn try_from(o: OutcomeJson) -> Result<Self> {
        Ok(ScanOutcome {
            n: o.n,
            status: status_from_str(&o.status)?,
            witness: o.witness.map(Into::into),
            x_tried: o.x_tried,
            t_tried: o.t_tried,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReportJson {
    pub manifest: RunManifest,
    pub n_min: u64,
    pub n_max: u64,
    pub s: u32,
    pub captured: u64,
    pub total: u64,
    pub success_rate: f64,
    pub failed_n: Vec<u64>,
    pub timed_out_n: Vec<u64>,
    pub outcomes: Vec<OutcomeJson>,
}

impl ScanReportJson {
    pub fn new(manifest: RunManifest, r: &ScanReport) -> Self {
        ScanReportJson {
            manifest,
            n_min: r.n_min,
            n_max: r.n_max,
            s: r.s,
            captured: r.captured,
            total: r.total(),
            success_rate: r.success_rate,
            failed_n: r.failed_n.clone(),
            timed_out_n: r.timed_out().collect(),
            outcomes: r.outcomes.iter().map(Into::into).collect(),
        }
    }

    pub fn to_report(&self) -> Result<ScanReport> {
        let outcomes = self
            .outcomes
            .iter()
            .cloned()
            .map(ScanOutcome::try_from)
            .collect::<Result<Vec<_>>>()?;
        let report = ScanReport::from_outcomes(self.n_min, self.n_max, self.s, outcomes);
        if report.captured != self.captured || report.failed_n != self.failed_n {
            return Err(Error::Usage(
                "scan report summary disagrees with its outcomes".into(),
            ));
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReportJson {
    pub manifest: RunManifest,
    pub n: u64,
    pub s: u32,
    pub outcome: OutcomeJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReportJson {
    pub manifest: RunManifest,
    pub s: u32,
    pub n_max: u64,
    pub numerator: u32,
    pub left_exact: RatJson,
    pub right_exact: RatJson,
    pub witness_sum_exact: RatJson,
    pub exact_equal: bool,
    pub left_float: f64,
    pub right_float: f64,
    pub abs_error_float: f64,
    pub left_nearest: f64,
    pub right_nearest: f64,
    pub scaled_zeta_float: f64,
    pub zeta_m_float: f64,
    pub tail_bound: RatJson,
    pub failures: Vec<u64>,
}

impl SeriesReportJson {
    pub fn new(manifest: RunManifest, r: &SeriesReport) -> Self {
        SeriesReportJson {
            manifest,
            s: r.s,
            n_max: r.n_max,
            numerator: r.numerator,
            left_exact: (&r.left_exact).into(),
            right_exact: (&r.right_exact).into(),
            witness_sum_exact: (&r.witness_sum_exact).into(),
            exact_equal: r.exact_equal,
            left_float: r.left_float,
            right_float: r.right_float,
            abs_error_float: r.abs_error_float,
            left_nearest: r.left_nearest,
            right_nearest: r.right_nearest,
            scaled_zeta_float: r.scaled_zeta_float,
            zeta_m_float: r.zeta_m_float,
            tail_bound: (&r.tail_bound).into(),
            failures: r.failures.clone(),
        }
    }

    pub fn to_report(&self) -> Result<SeriesReport> {
        Ok(SeriesReport {
            s: self.s,
            n_max: self.n_max,
            numerator: self.numerator,
            left_exact: (&self.left_exact).try_into()?,
            right_exact: (&self.right_exact).try_into()?,
            witness_sum_exact: (&self.witness_sum_exact).try_into()?,
            exact_equal: self.exact_equal,
            left_float: self.left_float,
            right_float: self.right_float,
            abs_error_float: self.abs_error_float,
            left_nearest: self.left_nearest,
            right_nearest: self.right_nearest,
            scaled_zeta_float: self.scaled_zeta_float,
            zeta_m_float: self.zeta_m_float,
            tail_bound: (&self.tail_bound).try_into()?,
            failures: self.failures.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReportJson {
    pub manifest: RunManifest,
    pub n: u64,
    pub s: u32,
    #[serde(with = "big_integer")]
    pub z_cap: BigUint,
    pub triples: Vec<[u128; 3]>,
}

/// Scan CSV: `n,found,x,t,q,y,z,x_tried,t_tried`, witness columns empty
/// when nothing was found.
pub fn write_scan_csv<W: std::io::Write>(out: W, r: &ScanReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "found", "x", "t", "q", "y", "z", "x_tried", "t_tried"])?;
    for o in &r.outcomes {
        let cols: [String; 5] = match &o.witness {
            Some(wit) => [&wit.x, &wit.t, &wit.q, &wit.y, &wit.z].map(|v| v.to_string()),
            None => Default::default(),
        };
        let found = if o.found() { "true" } else { "false" };
        let mut record = vec![o.n.to_string(), found.to_owned()];
        record.extend(cols);
        record.push(o.x_tried.to_string());
        record.push(o.t_tried.to_string());
        w.write_record(&record)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: "<csv>".into(),
        source,
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use erdos_straus_core::{compare_series, scan_range};

    fn manifest() -> RunManifest {
        RunManifest::new(
            "test",
            &SearchConfig::default(),
            InputRange {
                n_min: 2,
                n_max: 9,
                s: 1,
            },
            7,
        )
    }

    #[test]
    fn witness_json_uses_integers() {
        let w = Witness {
            x: 3u32.into(),
            t: 3u32.into(),
            q: 0u32.into(),
            y: 12u32.into(),
            z: 12u32.into(),
        };
        let text = serde_json::to_string(&WitnessJson::from(&w)).unwrap();
        assert_eq!(text, r#"{"x":3,"t":3,"q":0,"y":12,"z":12}"#);

        let huge: BigUint = "123456789012345678901234567890123456789".parse().unwrap();
        let w = Witness {
            x: huge.clone(),
            ..w
        };
        let text = serde_json::to_string(&WitnessJson::from(&w)).unwrap();
        assert!(text.contains("123456789012345678901234567890123456789"));
        let back: WitnessJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Witness::from(back), w);
    }

    #[test]
    fn scan_report_round_trip() {
        let report = scan_range(2, 30, 2, &SearchConfig::default()).unwrap();
        let json = ScanReportJson::new(manifest(), &report);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let parsed: ScanReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, json);
        assert_eq!(parsed.to_report().unwrap(), report);
    }

    #[test]
    fn series_report_round_trip() {
        let report = compare_series(3, 20, &SearchConfig::default()).unwrap();
        let json = SeriesReportJson::new(manifest(), &report);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: SeriesReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_report().unwrap(), report);
        assert!(text.contains(r#""tail_bound":{"num":"1","den":"800"}"#));
    }

    #[test]
    fn csv_layout() {
        let cfg = SearchConfig {
            x_multiplier: 1,
            t_window: 1,
            ..SearchConfig::default()
        };
        let mut report = scan_range(2, 5, 1, &cfg).unwrap();
        report.outcomes[1].witness = None;
        let mut buf = Vec::new();
        write_scan_csv(&mut buf, &report).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,found,x,t,q,y,z,x_tried,t_tried"));
        assert_eq!(lines.next(), Some("2,true,1,1,0,2,2,1,1"));
        assert!(lines.next().unwrap().starts_with("3,false,,,,,,"));
    }

    #[test]
    fn config_round_trip() {
        let cfg = SearchConfig {
            strategy: Strategy::SmallestX,
            ..SearchConfig::default()
        };
        let back = SearchConfig::try_from(&ConfigJson::from(&cfg)).unwrap();
        assert_eq!(back, cfg);
        assert!(parse_strategy("fastest").is_err());
    }
}
