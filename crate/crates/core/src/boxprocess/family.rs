//! Families of boxes over the rational axis, scans and jump detection.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::urn::{exact_pmf, InputBox, Pmf};
use super::RationalQ;
use crate::{Error, Result};

/// Composition of a two-place box `B'_{a1,a2/b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BoxSpec {
    pub a1: u64,
    pub a2: u64,
    pub b: u64,
}

/// Picks one box per `q`, always with `P(A) = q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyRule {
    /// `B'_{a,0/b}` for reduced `q = a/b`.
    Const,
    /// As `Const` below 1; at `q = 1` the box holds only place-2 instances.
    PaperF,
    /// As `Const`, except at `q0` every hit moves to place 2.
    JumpAt(RationalQ),
    /// Explicit compositions; undefined elsewhere.
    Table(BTreeMap<RationalQ, BoxSpec>),
}

impl FamilyRule {
    pub fn table(entries: impl IntoIterator<Item = (RationalQ, BoxSpec)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (q, spec) in entries {
            let b = InputBox::three_type(spec.a1, spec.a2, spec.b)?;
            if super::probability_of_A(&b) != q {
                return Err(Error::Infeasible(format!(
                    "box {b} does not give P(A) = {q}"
                )));
            }
            map.insert(q, spec);
        }
        Ok(FamilyRule::Table(map))
    }
}

impl fmt::Display for FamilyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyRule::Const => f.write_str("const"),
            FamilyRule::PaperF => f.write_str("paper-f"),
            FamilyRule::JumpAt(q) => write!(f, "jump:{q}"),
            FamilyRule::Table(map) => write!(f, "table[{}]", map.len()),
        }
    }
}

impl FromStr for FamilyRule {
    type Err = Error;

    /// `const`, `paper-f` or `jump:<a/b>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "const" => Ok(FamilyRule::Const),
            "paper-f" => Ok(FamilyRule::PaperF),
            _ => match s.strip_prefix("jump:") {
                Some(q) => Ok(FamilyRule::JumpAt(q.parse()?)),
                None => Err(Error::Parse(format!(
                    "unknown family {s:?} (const, paper-f, jump:<a/b>)"
                ))),
            },
        }
    }
}

pub fn family_spec(rule: &FamilyRule, q: RationalQ) -> Result<BoxSpec> {
    let (a, b) = (q.numer() as u64, q.denom() as u64);
    let plain = BoxSpec { a1: a, a2: 0, b };
    Ok(match rule {
        FamilyRule::Const => plain,
        FamilyRule::PaperF if q == RationalQ::ONE => BoxSpec { a1: 0, a2: b, b },
        FamilyRule::PaperF => plain,
        FamilyRule::JumpAt(q0) if *q0 == q => BoxSpec { a1: 0, a2: a, b },
        FamilyRule::JumpAt(_) => plain,
        FamilyRule::Table(map) => *map
            .get(&q)
            .ok_or_else(|| Error::UndefinedPoint(q.to_string()))?,
    })
}

pub fn family_box(rule: &FamilyRule, q: RationalQ) -> Result<InputBox> {
    let spec = family_spec(rule, q)?;
    InputBox::three_type(spec.a1, spec.a2, spec.b)
}

/// The Farey sequence of order `max_denominator`, ascending.
pub fn rational_grid(max_denominator: u32) -> Result<Vec<RationalQ>> {
    if max_denominator == 0 {
        return Err(Error::Domain("max denominator must be at least 1".into()));
    }
    let n = i64::from(max_denominator);
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    let mut out = vec![RationalQ::ZERO];
    while c <= n {
        let k = (n + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
        out.push(RationalQ::new(a, b)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub q: RationalQ,
    pub pmf: Pmf,
}

impl ScanRow {
    pub fn pi(&self, place: u32) -> RationalQ {
        self.pmf.get(place)
    }
}

/// `(q, pi0, pi1, pi2)` at every grid point, in grid order.
pub fn scan_family(rule: &FamilyRule, grid: &[RationalQ]) -> Result<Vec<ScanRow>> {
    grid.iter()
        .map(|&q| {
            Ok(ScanRow {
                q,
                pmf: exact_pmf(&family_box(rule, q)?),
            })
        })
        .collect()
}

/// CSV with header `q,pi0,pi1,pi2`; probabilities always as `a/b`.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("q,pi0,pi1,pi2\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.q,
            r.pi(0).fraction(),
            r.pi(1).fraction(),
            r.pi(2).fraction()
        ));
    }
    out
}

/// How to walk toward the point under test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Approach {
    /// `q_k = q0 - q0/k` for `k = 1..=depth`.
    Below { depth: u32 },
    /// `q_k = q0 + (1 - q0)/k` for `k = 1..=depth`.
    Above { depth: u32 },
    /// Any sequence; every element must lie in `[0, 1]` and differ from `q0`.
    Explicit(Vec<Ratio<i64>>),
}

impl Approach {
    pub fn sequence(&self, q0: RationalQ) -> Result<Vec<RationalQ>> {
        let r0 = q0.ratio();
        let raw: Vec<Ratio<i64>> = match self {
            Approach::Below { depth } => {
                if q0 == RationalQ::ZERO {
                    return Err(Error::Domain("cannot approach 0 from below".into()));
                }
                (1..=i64::from(*depth)).map(|k| r0 - r0 / k).collect()
            }
            Approach::Above { depth } => {
                if q0 == RationalQ::ONE {
                    return Err(Error::Domain("cannot approach 1 from above".into()));
                }
                let gap = Ratio::from_integer(1) - r0;
                (1..=i64::from(*depth)).map(|k| r0 + gap / k).collect()
            }
            Approach::Explicit(seq) => seq.clone(),
        };
        if raw.is_empty() {
            return Err(Error::Domain("empty approach sequence".into()));
        }
        raw.into_iter()
            .map(|r| {
                if r == r0 {
                    Err(Error::Domain(format!("approach sequence hits {q0}")))
                } else {
                    RationalQ::from_ratio(r)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    /// The tail of the sequence is exactly affine in `q`; extended to `q0`.
    AffineExtrapolation,
    /// Fallback: the value at the last element.
    FinalElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumpReport {
    pub point: RationalQ,
    pub value_at_point: RationalQ,
    /// `(q_k, pi1(q_k))` along the approach.
    pub samples: Vec<(RationalQ, RationalQ)>,
    #[serde(serialize_with = "ser_ratio")]
    pub limit: Ratio<i64>,
    pub limit_method: LimitMethod,
    /// `|limit - pi1(q0)|`; zero means no jump along this approach.
    #[serde(serialize_with = "ser_ratio")]
    pub magnitude: Ratio<i64>,
    /// `|pi1(q_last) - pi1(q0)|`.
    #[serde(serialize_with = "ser_ratio")]
    pub final_gap: Ratio<i64>,
    /// Whether `|pi1(q_k) - limit|` never grows along the sequence.
    pub converging: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

/// Compares `pi1` at `q0` with its limit along `approach`.
///
/// All arithmetic is exact. When the last half of the sampled values (at
/// least three) lies on one line in `q`, the limit is that line evaluated at `q0`; otherwise
/// the final sample stands in for the limit.
pub fn detect_jump(rule: &FamilyRule, q0: RationalQ, approach: &Approach) -> Result<JumpReport> {
    let seq = approach.sequence(q0)?;
    let value_at_point = exact_pmf(&family_box(rule, q0)?).get(1);
    let samples = seq
        .iter()
        .map(|&q| Ok((q, exact_pmf(&family_box(rule, q)?).get(1))))
        .collect::<Result<Vec<_>>>()?;

    let (limit, limit_method) = estimate_limit(&samples, q0);
    let last = samples.last().expect("sequence is non-empty").1.ratio();
    let gaps: Vec<Ratio<i64>> = samples
        .iter()
        .map(|(_, v)| (v.ratio() - limit).abs())
        .collect();
    Ok(JumpReport {
        point: q0,
        value_at_point,
        limit,
        limit_method,
        magnitude: (limit - value_at_point.ratio()).abs(),
        final_gap: (last - value_at_point.ratio()).abs(),
        converging: gaps.windows(2).all(|w| w[1] <= w[0]),
        samples,
    })
}

fn estimate_limit(samples: &[(RationalQ, RationalQ)], q0: RationalQ) -> (Ratio<i64>, LimitMethod) {
    let pts: Vec<(Ratio<i64>, Ratio<i64>)> = samples
        .iter()
        .map(|(q, v)| (q.ratio(), v.ratio()))
        .collect();
    let last = *pts.last().expect("non-empty");
    let fallback = (last.1, LimitMethod::FinalElement);
    if pts.len() < 3 {
        return fallback;
    }
    let prev = pts[pts.len() - 2];
    if prev.0 == last.0 {
        return fallback;
    }
    let slope = (last.1 - prev.1) / (last.0 - prev.0);
    let tail = &pts[(pts.len() / 2).min(pts.len() - 3)..];
    if tail
        .iter()
        .any(|(q, v)| *v - last.1 != slope * (*q - last.0))
    {
        return fallback;
    }
    let limit = last.1 + slope * (q0.ratio() - last.0);
    if limit.is_zero() || (limit > Ratio::zero() && limit <= Ratio::from_integer(1)) {
        (limit, LimitMethod::AffineExtrapolation)
    } else {
        fallback
    }
}
