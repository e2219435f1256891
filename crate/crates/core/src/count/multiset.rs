use std::fmt;

use serde::{Deserialize, Serialize};

use super::CountError;

/// One `(value, multiplicity)` pair of an [`IntegerMultiset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SupportEntry {
    pub value: i64,
    pub mult: usize,
}

/// A finite multiset of nonzero integers, kept as a sorted support list.
///
/// Subsets are always counted as subsets of the `n` labeled positions, so a
/// value of multiplicity `m` contributes `C(m, c)` ways to pick `c` copies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegerMultiset {
    support: Vec<SupportEntry>,
    n: usize,
}

impl IntegerMultiset {
    /// Builds a multiset from a list of elements; a zero is reported by position.
    pub fn from_elements(elements: &[i64]) -> Result<Self, CountError> {
        if let Some(index) = elements.iter().position(|&v| v == 0) {
            return Err(CountError::ZeroElement { index });
        }
        Self::from_support(elements.iter().map(|&v| (v, 1)))
    }

    /// Builds a multiset from `(value, mult)` pairs in any order; repeated
    /// values are merged.
    pub fn from_support(pairs: impl IntoIterator<Item = (i64, usize)>) -> Result<Self, CountError> {
        let mut support: Vec<SupportEntry> = Vec::new();
        for (index, (value, mult)) in pairs.into_iter().enumerate() {
            if value == 0 {
                return Err(CountError::ZeroElement { index });
            }
            if mult == 0 {
                return Err(CountError::ZeroMultiplicity { value });
            }
            support.push(SupportEntry { value, mult });
        }
        support.sort_unstable();
        let mut merged: Vec<SupportEntry> = Vec::with_capacity(support.len());
        for e in support {
            match merged.last_mut() {
                Some(last) if last.value == e.value => last.mult += e.mult,
                _ => merged.push(e),
            }
        }
        let n = merged.iter().map(|e| e.mult).sum();
        if n == 0 {
            return Err(CountError::Empty);
        }
        Ok(IntegerMultiset { support: merged, n })
    }

    pub fn support(&self) -> &[SupportEntry] {
        &self.support
    }

    /// Total multiplicity.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Expanded elements in ascending order.
    pub fn elements(&self) -> Vec<i64> {
        self.support.iter().flat_map(|e| std::iter::repeat_n(e.value, e.mult)).collect()
    }

    pub fn total_sum(&self) -> i128 {
        self.support.iter().map(|e| e.value as i128 * e.mult as i128).sum()
    }

    pub fn min_value(&self) -> i64 {
        self.support[0].value
    }

    pub fn max_value(&self) -> i64 {
        self.support[self.support.len() - 1].value
    }

    /// Number of positive elements (with multiplicity).
    pub fn positives(&self) -> usize {
        self.support.iter().filter(|e| e.value > 0).map(|e| e.mult).sum()
    }

    pub fn negatives(&self) -> usize {
        self.n - self.positives()
    }

    pub fn negated(&self) -> IntegerMultiset {
        let support = self.support.iter().rev().map(|e| SupportEntry { value: -e.value, mult: e.mult }).collect();
        IntegerMultiset { support, n: self.n }
    }

    /// Multiplies every value by `c`; `None` for `c == 0` or on overflow.
    pub fn scaled(&self, c: i64) -> Option<IntegerMultiset> {
        if c == 0 {
            return None;
        }
        let pairs: Option<Vec<(i64, usize)>> =
            self.support.iter().map(|e| e.value.checked_mul(c).map(|v| (v, e.mult))).collect();
        IntegerMultiset::from_support(pairs?).ok()
    }

    pub(crate) fn from_sorted_unchecked(support: Vec<SupportEntry>) -> IntegerMultiset {
        debug_assert!(support.windows(2).all(|w| w[0].value < w[1].value));
        debug_assert!(support.iter().all(|e| e.value != 0 && e.mult > 0));
        let n = support.iter().map(|e| e.mult).sum();
        IntegerMultiset { support, n }
    }
}

impl fmt::Display for IntegerMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}x{}", e.value, e.mult)?;
        }
        f.write_str("}")
    }
}

impl Serialize for IntegerMultiset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MultisetDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntegerMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = MultisetDoc::deserialize(deserializer)?;
        doc.into_multiset().map_err(serde::de::Error::custom)
    }
}

/// A sequence of nonzero integers where position order matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntSequence {
    values: Vec<i64>,
}

impl IntSequence {
    pub fn new(values: Vec<i64>) -> Result<Self, CountError> {
        if let Some(index) = values.iter().position(|&v| v == 0) {
            return Err(CountError::ZeroElement { index });
        }
        Ok(IntSequence { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<'de> Deserialize<'de> for IntSequence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            values: Vec<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        IntSequence::new(raw.values).map_err(serde::de::Error::custom)
    }
}

/// On-disk form of a multiset or sequence. Exactly one of the three
/// element fields must be present; unknown fields (such as a provenance
/// tag) are ignored.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MultisetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<SupportEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<i64>>,
}

impl MultisetDoc {
    fn element_fields(&self) -> usize {
        self.support.is_some() as usize + self.elements.is_some() as usize + self.values.is_some() as usize
    }

    pub fn into_multiset(self) -> Result<IntegerMultiset, CountError> {
        if self.element_fields() != 1 {
            return Err(CountError::Schema("expected exactly one of \"support\", \"elements\", \"values\"".into()));
        }
        if let Some(support) = self.support {
            return IntegerMultiset::from_support(support.into_iter().map(|e| (e.value, e.mult)));
        }
        let list = self.elements.or(self.values).unwrap_or_default();
        IntegerMultiset::from_elements(&list)
    }

    /// Ordered reading; the unordered `support` form is rejected.
    pub fn into_sequence(self) -> Result<IntSequence, CountError> {
        if self.element_fields() != 1 || self.support.is_some() {
            return Err(CountError::Schema(
                "expected exactly one of \"values\" or \"elements\" for an ordered sequence".into(),
            ));
        }
        IntSequence::new(self.values.or(self.elements).unwrap_or_default())
    }
}

impl From<&IntegerMultiset> for MultisetDoc {
    fn from(m: &IntegerMultiset) -> Self {
        MultisetDoc { support: Some(m.support.clone()), ..Default::default() }
    }
}

impl From<&IntSequence> for MultisetDoc {
    fn from(s: &IntSequence) -> Self {
        MultisetDoc { values: Some(s.values.clone()), ..Default::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_sorted_merged_support() {
        let m = IntegerMultiset::from_elements(&[1, -2, 1, 1, -2, 1]).unwrap();
        assert_eq!(m.support(), &[SupportEntry { value: -2, mult: 2 }, SupportEntry { value: 1, mult: 4 }]);
        assert_eq!(m.len(), 6);
        assert_eq!(m.total_sum(), 0);
        assert_eq!(m.positives(), 4);
        assert_eq!(m.to_string(), "{-2x2, 1x4}");
    }

    #[test]
    fn rejects_zero_and_empty() {
        assert_eq!(IntegerMultiset::from_elements(&[1, 0, 2]), Err(CountError::ZeroElement { index: 1 }));
        assert_eq!(IntegerMultiset::from_elements(&[]), Err(CountError::Empty));
        assert_eq!(IntegerMultiset::from_support([(3, 0)]), Err(CountError::ZeroMultiplicity { value: 3 }));
        assert!(IntSequence::new(vec![1, -1, 0]).is_err());
    }

    #[test]
    fn negate_and_scale() {
        let m = IntegerMultiset::from_support([(1, 4), (-2, 2)]).unwrap();
        let neg = m.negated();
        assert_eq!(neg, IntegerMultiset::from_support([(-1, 4), (2, 2)]).unwrap());
        assert_eq!(m.scaled(-1).unwrap(), neg);
        assert_eq!(m.scaled(3).unwrap(), IntegerMultiset::from_support([(3, 4), (-6, 2)]).unwrap());
        assert!(m.scaled(0).is_none());
        assert!(m.scaled(i64::MAX).is_none());
    }

    #[test]
    fn json_forms() {
        let a: IntegerMultiset =
            serde_json::from_str(r#"{"support": [{"value": -2, "mult": 2}, {"value": 1, "mult": 4}]}"#).unwrap();
        let b: IntegerMultiset = serde_json::from_str(r#"{"elements": [1,1,1,1,-2,-2]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"support":[{"value":-2,"mult":2},{"value":1,"mult":4}]}"#);
        let err = serde_json::from_str::<IntegerMultiset>(r#"{"elements": [1, 0]}"#).unwrap_err();
        assert!(err.to_string().contains("element 2"), "{err}");
        let s: IntSequence = serde_json::from_str(r#"{"values": [-1,1,-1,1]}"#).unwrap();
        assert_eq!(s.values(), &[-1, 1, -1, 1]);
        let doc: MultisetDoc =
            serde_json::from_str(r#"{"support": [{"value": 1, "mult": 2}], "provenance": "x"}"#).unwrap();
        assert!(doc.into_sequence().is_err());
    }
}
