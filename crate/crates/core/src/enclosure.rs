use crate::ival::Interval;

/// Ordered eigenvalue enclosures of one operator.
///
/// `entries[i]` contains the `i`-th eigenvalue (counted with multiplicity,
/// from the bottom of the spectrum). Every eigenvalue with index
/// `>= entries.len()` is at least `next_lower`, which is itself at least
/// `ceiling`. So the list is complete below `ceiling`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnclosureList {
    pub entries: Vec<Interval>,
    pub ceiling: f64,
    pub next_lower: f64,
}

impl EnclosureList {
    pub fn new(entries: Vec<Interval>, ceiling: f64, next_lower: f64) -> Self {
        Self { entries, ceiling, next_lower }
    }

    pub fn empty(ceiling: f64) -> Self {
        Self { entries: Vec::new(), ceiling, next_lower: ceiling }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Consecutive entries do not overlap.
    pub fn disjoint(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].strictly_below(w[1]))
    }

    /// Lower bound on eigenvalue `i`.
    pub fn lower(&self, i: usize) -> f64 {
        self.entries.get(i).map_or(self.next_lower, |e| e.lo())
    }

    /// Upper bound on eigenvalue `i` (`+inf` beyond the list).
    pub fn upper(&self, i: usize) -> f64 {
        self.entries.get(i).map_or(f64::INFINITY, |e| e.hi())
    }

    pub fn max_width(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.width()))
    }

    /// Keeps the entries whose lower end is below `ceiling`; the first dropped
    /// lower end becomes the new `next_lower`.
    pub fn truncated(&self, ceiling: f64) -> Self {
        let k = self.entries.iter().take_while(|e| e.lo() < ceiling).count();
        let next = if k < self.entries.len() { self.entries[k].lo() } else { self.next_lower };
        Self { entries: self.entries[..k].to_vec(), ceiling, next_lower: next.max(ceiling) }
    }
}

/// Lower and upper bounds of the sorted union of several spectra.
///
/// The `i`-th smallest eigenvalue of a direct sum is bounded below by the
/// `i`-th smallest of all lower bounds and above by the `i`-th smallest of all
/// upper bounds. Unlisted eigenvalues contribute `next_lower` from below and
/// no upper bound. Returns `count` pairs.
pub fn union_bounds(lists: &[&EnclosureList], count: usize) -> Vec<(f64, f64)> {
    let mut lows: Vec<f64> = Vec::new();
    let mut highs: Vec<f64> = Vec::new();
    for l in lists {
        lows.extend(l.entries.iter().map(|e| e.lo()));
        highs.extend(l.entries.iter().map(|e| e.hi()));
        // Enough copies of the tail bound to fill `count` slots.
        lows.extend(std::iter::repeat(l.next_lower).take(count));
    }
    lows.sort_by(f64::total_cmp);
    highs.sort_by(f64::total_cmp);
    (0..count)
        .map(|i| (lows[i], highs.get(i).copied().unwrap_or(f64::INFINITY)))
        .collect()
}
