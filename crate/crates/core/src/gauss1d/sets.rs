use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ext {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Ext {
    pub fn finite(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(Ext::Finite(x))
        } else {
            Err(Error::InvalidSet(format!("{x} is not a finite endpoint")))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    /// Value as an IEEE float, with the infinities mapped to `+-inf`.
    pub fn to_f64(self) -> f64 {
        match self {
            Ext::NegInf => f64::NEG_INFINITY,
            Ext::Finite(x) => x,
            Ext::PosInf => f64::INFINITY,
        }
    }
}

impl std::ops::Neg for Ext {
    type Output = Ext;

    fn neg(self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::Finite(x) => Ext::Finite(-x),
            Ext::PosInf => Ext::NegInf,
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Finite(x) => write!(f, "{x}"),
            Ext::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ext::Finite(x) => s.serialize_f64(*x),
            Ext::NegInf => s.serialize_str("-inf"),
            Ext::PosInf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExtVisitor;
        impl Visitor<'_> for ExtVisitor {
            type Value = Ext;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number, \"-inf\" or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Ext, E> {
                Ext::finite(v).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Ext, E> {
                Ok(Ext::Finite(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Ext, E> {
                Ok(Ext::Finite(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Ext, E> {
                match v.trim() {
                    "-inf" => Ok(Ext::NegInf),
                    "inf" | "+inf" => Ok(Ext::PosInf),
                    other => other
                        .parse::<f64>()
                        .map_err(E::custom)
                        .and_then(|x| Ext::finite(x).map_err(E::custom)),
                }
            }
        }
        d.deserialize_any(ExtVisitor)
    }
}

/// Open interval `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Ext,
    pub hi: Ext,
}

impl Interval {
    pub fn new(lo: Ext, hi: Ext) -> Result<Self> {
        if !(lo < hi) || lo == Ext::PosInf || hi == Ext::NegInf {
            return Err(Error::InvalidSet(format!("empty or reversed interval ({lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }
}

/// Finite union of disjoint open intervals, kept sorted with touching or
/// overlapping intervals merged.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

/// Serialized as a list of `[lo, hi]` pairs.
impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.intervals.iter().map(|iv| (iv.lo, iv.hi)))
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(Ext, Ext)>::deserialize(d)?;
        IntervalSet::from_pairs(&raw).map_err(de::Error::custom)
    }
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn real_line() -> Self {
        Self {
            intervals: vec![Interval { lo: Ext::NegInf, hi: Ext::PosInf }],
        }
    }

    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| a.lo.to_f64().total_cmp(&b.lo.to_f64()));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Self { intervals: merged }
    }

    pub fn from_pairs(pairs: &[(Ext, Ext)]) -> Result<Self> {
        let ivs = pairs
            .iter()
            .map(|&(a, b)| Interval::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ivs))
    }

    /// Convenience constructor from floats, with `+-inf` as infinite ends.
    pub fn from_f64(pairs: &[(f64, f64)]) -> Result<Self> {
        let ext = |x: f64| {
            if x == f64::NEG_INFINITY {
                Ok(Ext::NegInf)
            } else if x == f64::INFINITY {
                Ok(Ext::PosInf)
            } else {
                Ext::finite(x)
            }
        };
        let pairs = pairs
            .iter()
            .map(|&(a, b)| Ok((ext(a)?, ext(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(&pairs)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.intervals.iter().map(|iv| (iv.lo.to_f64(), iv.hi.to_f64())).collect()
    }

    /// Complement up to the finitely many endpoints.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor = Ext::NegInf;
        for iv in &self.intervals {
            if cursor < iv.lo {
                out.push(Interval { lo: cursor, hi: iv.lo });
            }
            cursor = iv.hi;
        }
        if cursor < Ext::PosInf {
            out.push(Interval { lo: cursor, hi: Ext::PosInf });
        }
        Self { intervals: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.intervals.iter().chain(&other.intervals).copied().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let lo = if a.lo > b.lo { a.lo } else { b.lo };
                let hi = if a.hi < b.hi { a.hi } else { b.hi };
                if lo < hi {
                    out.push(Interval { lo, hi });
                }
            }
        }
        Self::new(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.difference(other).union(&other.difference(self))
    }

    /// Reflection `x -> -x`.
    pub fn reflected(&self) -> Self {
        Self::new(
            self.intervals
                .iter()
                .map(|iv| Interval { lo: -iv.hi, hi: -iv.lo })
                .collect(),
        )
    }

    pub fn is_halfline(&self) -> bool {
        match self.intervals.as_slice() {
            [iv] => (iv.lo == Ext::NegInf) != (iv.hi == Ext::PosInf),
            _ => false,
        }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "({}, {})", iv.lo, iv.hi)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn canonical_form_merges() {
        let s = IntervalSet::from_f64(&[(2.0, 3.0), (-1.0, 1.0), (0.5, 2.0)]).unwrap();
        assert_eq!(s.pairs(), vec![(-1.0, 3.0)]);
        assert!(IntervalSet::from_f64(&[(1.0, 1.0)]).is_err());
        assert!(IntervalSet::from_f64(&[(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn algebra() {
        let a = IntervalSet::from_f64(&[(-INF, -1.0), (4.0, INF)]).unwrap();
        let h = IntervalSet::from_f64(&[(-INF, -0.9)]).unwrap();
        assert_eq!(a.symmetric_difference(&h).pairs(), vec![(-1.0, -0.9), (4.0, INF)]);
        assert_eq!(a.complement().pairs(), vec![(-1.0, 4.0)]);
        assert_eq!(IntervalSet::real_line().complement().pairs(), vec![]);
        assert_eq!(a.reflected().pairs(), vec![(-INF, -4.0), (1.0, INF)]);
        assert!(h.is_halfline() && !a.is_halfline());
    }

    #[test]
    fn json_round_trip() {
        let a = IntervalSet::from_f64(&[(-INF, -1.0), (4.0, INF)]).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"[["-inf",-1.0],[4.0,"inf"]]"#);
        let back: IntervalSet = serde_json::from_str(r#"[["-inf","-1"],[4,"inf"]]"#).unwrap();
        assert_eq!(back, a);
    }
}
