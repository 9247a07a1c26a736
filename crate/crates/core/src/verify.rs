//! Class-number sums over orders of a fixed norm length, against `p^(Delta m) / (2m)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{decimal_string, is_prime, kronecker};
use crate::quad::{class_order_of_prime, enumerate_l_s, NormLength, OrderClassData, QuadError};
use crate::report::{Provenance, ReportRow, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("no finite norm length among orders with |D| <= {scan_bound} (cap {cap}); raise the scan bound or cap")]
    NoFiniteLength { scan_bound: u64, cap: u32 },
    #[error("discriminant bound {p}^{exponent} overflows")]
    BoundOverflow { p: u64, exponent: u64 },
}

/// Parameters of one run. Unset options are resolved by [`Verifier::new`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationConfig {
    pub p: u64,
    pub s: Vec<u64>,
    pub m_max: u32,
    pub k_cap: Option<u32>,
    pub delta_override: Option<u32>,
    pub scan_bound: Option<u64>,
}

impl VerificationConfig {
    pub fn new(p: u64, s: Vec<u64>, m_max: u32) -> Self {
        VerificationConfig {
            p,
            s,
            m_max,
            k_cap: None,
            delta_override: None,
            scan_bound: None,
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        if !is_prime(self.p) {
            return Err(VerifyError::Config(format!("p = {} is not prime", self.p)));
        }
        if let Some(&l) = self.s.iter().find(|&&l| !is_prime(l)) {
            return Err(VerifyError::Config(format!("{l} in S is not prime")));
        }
        if self.s.contains(&self.p) {
            return Err(VerifyError::Config(format!("p = {} belongs to S", self.p)));
        }
        if self.m_max == 0 {
            return Err(VerifyError::Config("m_max must be at least 1".into()));
        }
        if self.k_cap == Some(0) || self.delta_override == Some(0) {
            return Err(VerifyError::Config(
                "k_cap and delta must be positive".into(),
            ));
        }
        if self.scan_bound == Some(0) {
            return Err(VerifyError::Config("scan bound must be positive".into()));
        }
        Ok(())
    }

    /// The torsion-freeness hypothesis wants some `l = 1 mod 12` in `S`.
    pub fn meets_hypothesis(&self) -> bool {
        self.s.iter().any(|l| l % 12 == 1)
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.meets_hypothesis() {
            out.push(format!(
                "no prime in S = {:?} is 1 mod 12; the lattice may have torsion and the asymptotic need not apply",
                self.s
            ));
        }
        out
    }

    /// `min(4p^6, max(4p, 10^6))`.
    pub fn default_scan_bound(&self) -> u64 {
        let six = self.p.checked_pow(6).and_then(|x| x.checked_mul(4));
        let floor = (4 * self.p).max(1_000_000);
        six.map_or(floor, |x| x.min(floor))
    }

    fn scan_cap(&self) -> u32 {
        self.k_cap.unwrap_or(self.m_max + 4)
    }
}

/// `4 p^k` as an exact integer that also fits the discriminant range.
pub fn discriminant_bound(p: u64, k: u64) -> Result<u64, VerifyError> {
    let overflow = VerifyError::BoundOverflow { p, exponent: k };
    let k32 = u32::try_from(k).map_err(|_| overflow.clone())?;
    p.checked_pow(k32)
        .and_then(|x| x.checked_mul(4))
        .filter(|&x| x <= i64::MAX as u64)
        .ok_or(overflow)
}

/// gcd of the finite norm lengths over the family with `|D| <= scan_bound`.
pub fn compute_delta(cfg: &VerificationConfig, scan_bound: u64) -> Result<u32, VerifyError> {
    cfg.validate()?;
    if let Some(d) = cfg.delta_override {
        return Ok(d);
    }
    if scan_bound < 4 * cfg.p {
        return Err(VerifyError::Config(format!(
            "scan bound {scan_bound} is below 4p = {}",
            4 * cfg.p
        )));
    }
    let cap = cfg.scan_cap();
    enumerate_l_s(&cfg.s, cfg.p, scan_bound, cap)?
        .iter()
        .filter_map(|o| o.l_p.finite())
        .reduce(|a, b| a.gcd(&b))
        .ok_or(VerifyError::NoFiniteLength { scan_bound, cap })
}

// Class-order criterion for D < -4: split gives the order of the prime class,
// inert never, ramified 1 exactly when the prime class is principal.
fn class_order_length(o: &OrderClassData, p: u64) -> Result<Option<u64>, QuadError> {
    match kronecker(o.disc.value(), p as i64).expect("p != 0") {
        -1 => Ok(None),
        1 => Ok(Some(class_order_of_prime(&o.disc, p)?)),
        _ => Ok((class_order_of_prime(&o.disc, p)? == 1).then_some(1)),
    }
}

/// Resolved configuration plus the cached family enumeration.
#[derive(Debug, Clone)]
pub struct Verifier {
    cfg: VerificationConfig,
    delta: u32,
    delta_from_scan: bool,
    scan_bound: u64,
    k_cap: u32,
    orders: Vec<OrderClassData>,
    recertified: usize,
}

impl Verifier {
    pub fn new(cfg: VerificationConfig) -> Result<Self, VerifyError> {
        cfg.validate()?;
        let scan_bound = cfg.scan_bound.unwrap_or_else(|| cfg.default_scan_bound());
        let delta = compute_delta(&cfg, scan_bound)?;
        let k_cap = cfg.k_cap.unwrap_or(delta * cfg.m_max + 4);
        if u64::from(k_cap) < u64::from(delta) * u64::from(cfg.m_max) {
            return Err(VerifyError::Config(format!(
                "k_cap = {k_cap} is below Delta * m_max = {}",
                delta * cfg.m_max
            )));
        }
        let top = discriminant_bound(cfg.p, u64::from(delta) * u64::from(cfg.m_max))?;
        let orders = enumerate_l_s(&cfg.s, cfg.p, top, k_cap)?;
        let mut recertified = 0;
        for o in &orders {
            if let NormLength::Capped { cap } = o.l_p {
                if matches!(o.disc.value(), -3 | -4) {
                    return Err(QuadError::InvariantViolated(format!(
                        "unit-rich order D={} reported l_p > {cap}",
                        o.disc
                    ))
                    .into());
                }
                if let Some(len) = class_order_length(o, cfg.p)? {
                    if len <= u64::from(cap) {
                        return Err(QuadError::InvariantViolated(format!(
                            "D={}: norm search found nothing up to {cap}, class order gives {len}",
                            o.disc
                        ))
                        .into());
                    }
                }
                recertified += 1;
            }
        }
        Ok(Verifier {
            delta_from_scan: cfg.delta_override.is_none(),
            cfg,
            delta,
            scan_bound,
            k_cap,
            orders,
            recertified,
        })
    }

    pub fn config(&self) -> &VerificationConfig {
        &self.cfg
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn k_cap(&self) -> u32 {
        self.k_cap
    }

    pub fn orders(&self) -> &[OrderClassData] {
        &self.orders
    }

    fn check_m(&self, m: u32) -> Result<u32, VerifyError> {
        if m == 0 || m > self.cfg.m_max {
            return Err(VerifyError::Config(format!(
                "m = {m} outside 1..={}",
                self.cfg.m_max
            )));
        }
        Ok(self.delta * m)
    }

    fn stratum(&self, m: u32) -> Result<impl Iterator<Item = &OrderClassData>, VerifyError> {
        let k = self.check_m(m)?;
        let bound = discriminant_bound(self.cfg.p, u64::from(k))?;
        Ok(self
            .orders
            .iter()
            .filter(move |o| o.disc.abs() <= bound && o.l_p == NormLength::Finite(k)))
    }

    /// `T_m`: sum of `f_S h(O[1/p])` over orders with `l_p = Delta m`.
    pub fn theorem_sum(&self, m: u32) -> Result<u64, VerifyError> {
        Ok(self.stratum(m)?.map(|o| o.f_s * o.h_inv).sum())
    }

    /// Sum of `h(O)` over the same stratum.
    pub fn h_sum(&self, m: u32) -> Result<u64, VerifyError> {
        Ok(self.stratum(m)?.map(|o| o.h).sum())
    }

    pub fn row(&self, m: u32) -> Result<ReportRow, VerifyError> {
        let k = self.check_m(m)?;
        let d_bound = discriminant_bound(self.cfg.p, u64::from(k))?;
        let t_m = self.theorem_sum(m)?;
        let h_sum = self.h_sum(m)?;
        let target_num = BigUint::from(self.cfg.p).pow(k);
        let target_den = 2 * u64::from(m);
        let pk = BigInt::from(target_num.clone());
        let ratio =
            decimal_string(&BigInt::from(t_m * target_den), &pk, 6).expect("nonzero denominator");
        let liminf_diag =
            decimal_string(&(BigInt::from(h_sum) * m), &pk, 6).expect("nonzero denominator");
        Ok(ReportRow {
            m,
            t_m,
            target_num,
            target_den,
            ratio,
            h_sum,
            liminf_diag,
            d_bound,
        })
    }

    pub fn report(&self) -> Result<VerificationReport, VerifyError> {
        let rows = (1..=self.cfg.m_max)
            .map(|m| self.row(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VerificationReport {
            delta: self.delta,
            rows,
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                p: self.cfg.p,
                s: self.cfg.s.clone(),
                m_max: self.cfg.m_max,
                k_cap: self.k_cap,
                delta_source: if self.delta_from_scan {
                    format!(
                        "scan |D| <= {} with cap {}",
                        self.scan_bound,
                        self.cfg.scan_cap()
                    )
                } else {
                    "override".to_string()
                },
                hypothesis_ok: self.cfg.meets_hypothesis(),
                warnings: self.cfg.warnings(),
                orders_enumerated: self.orders.len(),
                recertified_capped: self.recertified,
            },
        })
    }
}

pub fn theorem_sum(cfg: &VerificationConfig, m: u32) -> Result<u64, VerifyError> {
    let mut cfg = cfg.clone();
    cfg.m_max = cfg.m_max.max(m);
    Verifier::new(cfg)?.theorem_sum(m)
}

pub fn asymptotic_report(cfg: &VerificationConfig) -> Result<VerificationReport, VerifyError> {
    Verifier::new(cfg.clone())?.report()
}
