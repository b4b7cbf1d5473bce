//! Incremental all-pairs shortest paths over scaled integer weights, used as the
//! constraint store of the exhaustive search.

use std::cmp::Ordering;

/// `value / scale - strict * delta`, compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct IWeight {
    pub value: i64,
    pub strict: i32,
}

pub(crate) const INF: IWeight = IWeight {
    value: i64::MAX,
    strict: 0,
};

impl IWeight {
    pub const ZERO: IWeight = IWeight {
        value: 0,
        strict: 0,
    };

    pub fn new(value: i64, strict: bool) -> Self {
        IWeight {
            value,
            strict: i32::from(strict),
        }
    }

    fn is_inf(self) -> bool {
        self.value == i64::MAX
    }

    pub fn plus(self, o: IWeight) -> IWeight {
        if self.is_inf() || o.is_inf() {
            INF
        } else {
            IWeight {
                value: self.value + o.value,
                strict: self.strict + o.strict,
            }
        }
    }
}

impl Ord for IWeight {
    fn cmp(&self, o: &Self) -> Ordering {
        self.value.cmp(&o.value).then(o.strict.cmp(&self.strict))
    }
}

impl PartialOrd for IWeight {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Closed shortest-path matrix: `d[i][j]` bounds `x_j - x_i`.
#[derive(Clone)]
pub(crate) struct Apsp {
    n: usize,
    d: Vec<IWeight>,
}

impl Apsp {
    pub fn new(n: usize) -> Self {
        let mut d = vec![INF; n * n];
        for i in 0..n {
            d[i * n + i] = IWeight::ZERO;
        }
        Apsp { n, d }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> IWeight {
        self.d[i * self.n + j]
    }

    /// Whether `x_a - x_b <= w` can be added without a negative cycle.
    #[inline]
    pub fn consistent(&self, a: usize, b: usize, w: IWeight) -> bool {
        let back = self.get(a, b);
        back.is_inf() || back.plus(w) >= IWeight::ZERO
    }

    /// Whether `x_a - x_b <= w` already follows from the stored constraints.
    #[inline]
    pub fn implied(&self, a: usize, b: usize, w: IWeight) -> bool {
        self.get(b, a) <= w
    }

    /// Adds `x_a - x_b <= w`; returns false (leaving the matrix unusable) on a negative cycle.
    pub fn add(&mut self, a: usize, b: usize, w: IWeight) -> bool {
        if !self.consistent(a, b, w) {
            return false;
        }
        if self.implied(a, b, w) {
            return true;
        }
        let n = self.n;
        let col_b: Vec<IWeight> = (0..n).map(|i| self.get(i, b)).collect();
        let row_a: Vec<IWeight> = (0..n).map(|j| self.get(a, j)).collect();
        for (i, ib) in col_b.into_iter().enumerate() {
            if ib.is_inf() {
                continue;
            }
            let via = ib.plus(w);
            for (j, &aj) in row_a.iter().enumerate() {
                let cand = via.plus(aj);
                let cell = &mut self.d[i * n + j];
                if cand < *cell {
                    *cell = cand;
                }
            }
        }
        true
    }
}
