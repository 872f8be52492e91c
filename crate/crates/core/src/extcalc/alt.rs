//! Sparse antisymmetric storage shared by multivector fields and forms.
//!
//! Components are keyed by strictly increasing index tuples; an absent key
//! is a zero component. Any other ordering of indices is folded into the
//! canonical key with the sign of the sorting permutation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::symcore::{Chart, Expr};

pub type Index = Vec<usize>;

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats (the component is then zero by antisymmetry).
pub fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    // insertion sort; tuples are tiny
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// Concatenates two increasing tuples into an increasing tuple, with the sign
/// of the shuffle. `None` if they share an index.
pub fn merge_sorted(a: &[usize], b: &[usize]) -> Option<(Index, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut negative = false;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a.len() - i entries of a
            if (a.len() - i) % 2 == 1 {
                negative = !negative;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, negative))
}

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct AltField {
    pub chart: Chart,
    pub grade: usize,
    pub comps: BTreeMap<Index, Expr>,
}

impl AltField {
    pub fn zero(chart: &Chart, grade: usize) -> Self {
        AltField {
            chart: chart.clone(),
            grade,
            comps: BTreeMap::new(),
        }
    }

    pub fn from_components<I>(chart: &Chart, grade: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Index, Expr)>,
    {
        let mut out = AltField::zero(chart, grade);
        for (mut idx, value) in comps {
            if idx.len() != grade {
                return Err(Error::GradeMismatch(format!(
                    "index tuple {idx:?} has length {} but the grade is {grade}",
                    idx.len()
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= chart.dim()) {
                return Err(Error::IndexOutOfRange(format!(
                    "index {bad} on a chart of dimension {}",
                    chart.dim()
                )));
            }
            if let Some(negative) = sort_with_sign(&mut idx) {
                out.accumulate(idx, if negative { -value } else { value });
            }
        }
        Ok(out)
    }

    /// Adds `value` into the (already canonical) slot `idx`.
    pub fn accumulate(&mut self, idx: Index, value: Expr) {
        if value.is_zero() {
            return;
        }
        match self.comps.entry(idx) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
        }
    }

    pub fn get(&self, idx: &[usize]) -> Expr {
        let mut key = idx.to_vec();
        match sort_with_sign(&mut key) {
            None => Expr::zero(),
            Some(negative) => {
                let v = self.comps.get(&key).cloned().unwrap_or_default();
                if negative {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn check_compatible(&self, other: &AltField) -> Result<()> {
        self.chart.check_same(&other.chart)?;
        if self.grade != other.grade {
            return Err(Error::GradeMismatch(format!(
                "grades {} and {}",
                self.grade, other.grade
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AltField) -> Result<AltField> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> AltField {
        AltField {
            chart: self.chart.clone(),
            grade: self.grade,
            comps: self.comps.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, f: &Expr) -> AltField {
        let mut out = AltField::zero(&self.chart, self.grade);
        if f.is_zero() {
            return out;
        }
        for (k, v) in &self.comps {
            out.accumulate(k.clone(), v * f);
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> AltField {
        let mut out = AltField::zero(&self.chart, self.grade);
        for (k, v) in &self.comps {
            out.accumulate(k.clone(), f(v));
        }
        out
    }

    pub fn wedge(&self, other: &AltField) -> Result<AltField> {
        self.chart.check_same(&other.chart)?;
        let mut out = AltField::zero(&self.chart, self.grade + other.grade);
        if self.grade + other.grade > self.chart.dim() {
            return Ok(out);
        }
        for (ka, va) in &self.comps {
            for (kb, vb) in &other.comps {
                if let Some((k, negative)) = merge_sorted(ka, kb) {
                    let p = va * vb;
                    out.accumulate(k, if negative { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// Re-homes the field on a chart whose first coordinates are this chart's.
    pub fn embed(&self, bigger: &Chart) -> Result<AltField> {
        let n = self.chart.dim();
        if bigger.dim() < n || bigger.names()[..n] != self.chart.names()[..] {
            return Err(Error::ChartMismatch);
        }
        Ok(AltField {
            chart: bigger.clone(),
            grade: self.grade,
            comps: self.comps.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        let mut a = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut a), Some(false));
        assert_eq!(a, vec![0, 1, 2]);
        let mut b = vec![1, 0];
        assert_eq!(sort_with_sign(&mut b), Some(true));
        let mut c = vec![1, 0, 1];
        assert_eq!(sort_with_sign(&mut c), None);
    }

    #[test]
    fn merge_matches_sort() {
        // brute force: the merge sign equals the sign of sorting the concatenation
        let tuples: Vec<Vec<usize>> = vec![vec![], vec![0], vec![2], vec![0, 3], vec![1, 2], vec![1, 3, 4]];
        for a in &tuples {
            for b in &tuples {
                let mut cat: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                let expected = sort_with_sign(&mut cat).map(|s| (cat.clone(), s));
                assert_eq!(merge_sorted(a, b), expected, "{a:?} {b:?}");
            }
        }
    }
}
