//! CSV and JSON renderings of verification reports and order tables.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::graph::{CycleCountTable, PgtRow};
use crate::quad::{FormClassGroup, OrderClassData};

pub const REPORT_HEADER: &str = "m,T_m,target_num,target_den,ratio,h_sum,liminf_diag";

// Exact integers travel through JSON as decimal strings.
mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub m: u32,
    #[serde(with = "as_string")]
    pub t_m: u64,
    /// `p^(Delta m)`, left unreduced against `target_den = 2m`.
    #[serde(with = "as_string")]
    pub target_num: BigUint,
    pub target_den: u64,
    /// `T_m 2m / p^(Delta m)` to six places.
    pub ratio: String,
    #[serde(with = "as_string")]
    pub h_sum: u64,
    /// `m h_sum / p^(Delta m)` to six places.
    pub liminf_diag: String,
    /// Largest `|D|` that can reach this stratum, `4 p^(Delta m)`.
    #[serde(with = "as_string")]
    pub d_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub p: u64,
    pub s: Vec<u64>,
    pub m_max: u32,
    pub k_cap: u32,
    pub delta_source: String,
    pub hypothesis_ok: bool,
    pub warnings: Vec<String>,
    pub orders_enumerated: usize,
    pub recertified_capped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub delta: u32,
    pub rows: Vec<ReportRow>,
    pub provenance: Provenance,
}

impl VerificationReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.m, r.t_m, r.target_num, r.target_den, r.ratio, r.h_sum, r.liminf_diag
            )
            .expect("writing to a String");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn last_row(&self) -> Option<&ReportRow> {
        self.rows.last()
    }
}

/// `D,d_F,f,h,f_S,l_p,h_inv`, one line per order.
pub fn orders_csv(orders: &[OrderClassData]) -> String {
    let mut out = String::from("D,d_F,f,h,f_S,l_p,h_inv\n");
    for o in orders {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            o.disc.value(),
            o.disc.fundamental(),
            o.disc.conductor(),
            o.h,
            o.f_s,
            o.l_p,
            o.h_inv
        )
        .expect("writing to a String");
    }
    out
}

/// `m,N_m,pi_m,ratio`; the ratio column is present only when `ratios` is given.
pub fn cycles_csv(table: &CycleCountTable, ratios: Option<&[PgtRow]>) -> String {
    let mut out = String::from(if ratios.is_some() {
        "m,N_m,pi_m,ratio\n"
    } else {
        "m,N_m,pi_m\n"
    });
    for m in 1..=table.m_max() {
        write!(out, "{},{},{}", m, table.n(m), table.pi(m)).expect("writing to a String");
        if let Some(rows) = ratios {
            write!(out, ",{}", rows[m - 1].ratio).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// Reduced forms in canonical order followed by the composition table of their indices.
pub fn classgroup_listing(group: &FormClassGroup) -> String {
    let mut out = format!(
        "D={} h={}\nforms\n",
        group.discriminant(),
        group.class_number()
    );
    for (i, f) in group.forms().iter().enumerate() {
        writeln!(out, "{i} {f}").expect("writing to a String");
    }
    out.push_str("table\n");
    for row in group.composition_table() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_counts, pgt_ratio, MultiGraph};
    use crate::quad::{enumerate_l_s, Discriminant};

    fn sample() -> VerificationReport {
        VerificationReport {
            delta: 1,
            rows: vec![ReportRow {
                m: 1,
                t_m: 4,
                target_num: BigUint::from(2u32),
                target_den: 2,
                ratio: "4.000000".into(),
                h_sum: 2,
                liminf_diag: "1.000000".into(),
                d_bound: 8,
            }],
            provenance: Provenance {
                tool: "t".into(),
                version: "0".into(),
                p: 2,
                s: vec![13],
                m_max: 1,
                k_cap: 5,
                delta_source: "override".into(),
                hypothesis_ok: true,
                warnings: vec![],
                orders_enumerated: 2,
                recertified_capped: 0,
            },
        }
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(
            csv,
            "m,T_m,target_num,target_den,ratio,h_sum,liminf_diag\n1,4,2,2,4.000000,2,1.000000\n"
        );
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let json = r.to_json();
        assert!(json.contains("\"t_m\": \"4\""));
        let back = VerificationReport::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_csv(), r.to_csv());
        assert!(VerificationReport::from_json("{\"delta\": 1}").is_err());
    }

    #[test]
    fn orders_table() {
        let csv = orders_csv(&enumerate_l_s(&[13], 2, 8, 30).unwrap());
        assert_eq!(
            csv,
            "D,d_F,f,h,f_S,l_p,h_inv\n-7,-7,1,1,2,1,1\n-8,-8,1,1,2,1,1\n"
        );
        let csv = orders_csv(&enumerate_l_s(&[13], 2, 20, 30).unwrap());
        assert!(csv.contains("\n-20,-20,1,2,2,inf@30,1\n"), "{csv}");
    }

    #[test]
    fn classgroup_text() {
        let g = FormClassGroup::new(Discriminant::new(-23).unwrap());
        assert_eq!(
            classgroup_listing(&g),
            "D=-23 h=3\nforms\n0 (1,1,6)\n1 (2,1,3)\n2 (2,-1,3)\ntable\n0 1 2\n1 2 0\n2 0 1\n"
        );
    }

    #[test]
    fn cycles_table() {
        let k4 = MultiGraph::complete(4);
        let t = cycle_counts(&k4, 3).unwrap();
        let rows: Vec<_> = (1..=3).map(|m| pgt_ratio(&k4, m).unwrap()).collect();
        let csv = cycles_csv(&t, Some(&rows));
        assert_eq!(
            csv,
            "m,N_m,pi_m,ratio\n1,0,0,0.000000\n2,0,0,0.000000\n3,24,8,3.000000\n"
        );
        let lopsided = MultiGraph::new(3, vec![(0, 1), (1, 2), (2, 0), (0, 1)]).unwrap();
        let t = cycle_counts(&lopsided, 2).unwrap();
        assert!(cycles_csv(&t, None).starts_with("m,N_m,pi_m\n1,"));
    }
}
