//! Report assembly: a JSON suite report plus CSV exports. Every number is
//! serialized as an exact "num/den" string or a (midpoint, radius) decimal
//! pair, never a bare float, so reports are diffable.

use serde::Serialize;

use crate::ball::BallReal;
use crate::contfrac::Convergent;
use crate::poly::{format_rat, Rat};
use crate::table::RationalTable;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: serde_json::Value,
    pub suite: Vec<SuiteEntry>,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl Report {
    pub fn new(config: serde_json::Value, with_timestamp: bool) -> Self {
        Report {
            config,
            suite: Vec::new(),
            summary: String::new(),
            timestamp: if with_timestamp { Some(now_utc()) } else { None },
        }
    }

    pub fn push(&mut self, name: &str, status: Status, details: impl Into<String>) {
        self.suite.push(SuiteEntry {
            name: name.to_string(),
            status,
            details: details.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.suite.iter().all(|e| e.status != Status::Fail)
    }

    pub fn finish(&mut self) {
        let fails = self.suite.iter().filter(|e| e.status == Status::Fail).count();
        let total = self.suite.len();
        self.summary = if fails == 0 {
            format!("{total} checks, all passing")
        } else {
            format!("{fails} of {total} checks failing")
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.suite {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            out.push_str(&format!("[{tag}] {}: {}\n", e.name, e.details));
        }
        out.push_str(&self.summary);
        out.push('\n');
        out
    }
}

/// Seconds since the Unix epoch; good enough for a report stamp without
/// pulling in a clock/timezone dependency.
fn now_utc() -> String {
    use std::time::{SystemTime, UNIX_EPOCH};
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{secs}")
}

pub fn ball_pair(b: &BallReal) -> (String, String) {
    (b.mid_decimal(), b.rad_decimal())
}

/// CSV of table cells: i, j, num, den.
pub fn table_csv(table: &RationalTable) -> String {
    let mut out = String::from("i,j,num,den\n");
    for i in 0..=table.imax {
        for j in 0..=table.jmax {
            if let Some(v) = table.get(i, j) {
                out.push_str(&format!("{i},{j},{},{}\n", v.numer(), v.denom()));
            }
        }
    }
    out
}

/// CSV row set for the eps series: n, q, p, midpoint(eps), radius(eps),
/// |eps|^(1/n).
pub struct EpsRow {
    pub n: u32,
    pub q: Rat,
    pub p: Rat,
    pub eps: BallReal,
    pub root: BallReal,
}

pub fn eps_csv(rows: &[EpsRow]) -> String {
    let mut out = String::from("n,q,p,eps_mid,eps_rad,abs_eps_nth_root\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            format_rat(&r.q),
            format_rat(&r.p),
            r.eps.mid_decimal(),
            r.eps.rad_decimal(),
            r.root.mid_decimal(),
        ));
    }
    out
}

/// CSV trace of continued-fraction convergents against a reference ball.
pub fn cf_csv(convs: &[Convergent], reference: &BallReal) -> String {
    let mut out = String::from("depth,num,den,value_mid,residual_mid\n");
    for c in convs {
        let v = c.value();
        let residual = reference.add_rat(&-v.clone()).abs();
        let v_ball = BallReal::from_rational(&v, reference.digits());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            c.depth,
            format_rat(&c.num),
            format_rat(&c.den),
            v_ball.mid_decimal(),
            residual.mid_decimal(),
        ));
    }
    out
}
