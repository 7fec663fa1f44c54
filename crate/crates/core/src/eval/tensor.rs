//! Boolean tensors over the object-by-frame animation matrix.
//!
//! Every predicate evaluates to one of three shapes: a full per-cell
//! matrix, a per-frame vector that broadcasts across object rows, or a
//! scalar that broadcasts everywhere. Logical operators work elementwise
//! under those broadcast rules.

/// Shape of a [`TensorValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TensorKind {
    Scalar,
    /// One value per frame, identical for every object row.
    Frame,
    /// One value per (object, frame) cell.
    Cell,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorValue {
    rows: usize,
    cols: usize,
    kind: TensorKind,
    bits: Vec<bool>,
}

impl TensorValue {
    pub fn scalar(rows: usize, cols: usize, value: bool) -> Self {
        TensorValue {
            rows,
            cols,
            kind: TensorKind::Scalar,
            bits: vec![value],
        }
    }

    pub fn cells(rows: usize, cols: usize, value: bool) -> Self {
        TensorValue {
            rows,
            cols,
            kind: TensorKind::Cell,
            bits: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                bits.push(f(r, c));
            }
        }
        TensorValue {
            rows,
            cols,
            kind: TensorKind::Cell,
            bits,
        }
    }

    pub fn frame_vector(rows: usize, cols: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        TensorValue {
            rows,
            cols,
            kind: TensorKind::Frame,
            bits: (0..cols).map(|c| f(c)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    /// Value at (row, 0-based column) under broadcast.
    pub fn get(&self, row: usize, col: usize) -> bool {
        match self.kind {
            TensorKind::Scalar => self.bits[0],
            TensorKind::Frame => self.bits[col],
            TensorKind::Cell => self.bits[row * self.cols + col],
        }
    }

    pub fn set_cell(&mut self, row: usize, col: usize, value: bool) {
        debug_assert_eq!(self.kind, TensorKind::Cell);
        self.bits[row * self.cols + col] = value;
    }

    pub fn any(&self) -> bool {
        self.bits.iter().any(|&b| b)
    }

    pub fn row_any(&self, row: usize) -> bool {
        (0..self.cols).any(|c| self.get(row, c))
    }

    pub fn row_count_true(&self, row: usize) -> usize {
        (0..self.cols).filter(|&c| self.get(row, c)).count()
    }

    /// Rows with at least one true cell, ascending.
    pub fn rows_with_any(&self) -> Vec<usize> {
        (0..self.rows).filter(|&r| self.row_any(r)).collect()
    }

    /// Copy of one row as a plain bool vector.
    pub fn row_bits(&self, row: usize) -> Vec<bool> {
        (0..self.cols).map(|c| self.get(row, c)).collect()
    }

    /// Maximal contiguous true runs of a row, as 1-based frame intervals.
    pub fn row_runs(&self, row: usize) -> Vec<crate::algebra::FrameInterval> {
        runs_of(&self.row_bits(row))
    }

    fn zip(&self, other: &TensorValue, f: impl Fn(bool, bool) -> bool) -> TensorValue {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "tensor dimensions must match"
        );
        let kind = self.kind.max(other.kind);
        match kind {
            TensorKind::Scalar => TensorValue::scalar(self.rows, self.cols, f(self.bits[0], other.bits[0])),
            TensorKind::Frame => TensorValue {
                rows: self.rows,
                cols: self.cols,
                kind,
                bits: (0..self.cols)
                    .map(|c| f(self.get(0, c), other.get(0, c)))
                    .collect(),
            },
            TensorKind::Cell => TensorValue::from_fn(self.rows, self.cols, |r, c| {
                f(self.get(r, c), other.get(r, c))
            }),
        }
    }

    pub fn and(&self, other: &TensorValue) -> TensorValue {
        self.zip(other, |a, b| a && b)
    }

    pub fn or(&self, other: &TensorValue) -> TensorValue {
        self.zip(other, |a, b| a || b)
    }

    pub fn not(&self) -> TensorValue {
        TensorValue {
            rows: self.rows,
            cols: self.cols,
            kind: self.kind,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

/// Maximal contiguous true runs of a bool slice, 1-based inclusive.
pub fn runs_of(bits: &[bool]) -> Vec<crate::algebra::FrameInterval> {
    let mut runs = Vec::new();
    let mut start: Option<usize> = None;
    for (i, &b) in bits.iter().enumerate() {
        match (b, start) {
            (true, None) => start = Some(i + 1),
            (false, Some(s)) => {
                runs.push(crate::algebra::FrameInterval::new(s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push(crate::algebra::FrameInterval::new(s, bits.len()));
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_tensor(rows: usize, cols: usize) -> impl Strategy<Value = TensorValue> {
        let cell = proptest::collection::vec(proptest::bool::ANY, rows * cols)
            .prop_map(move |bits| TensorValue {
                rows,
                cols,
                kind: TensorKind::Cell,
                bits,
            });
        let frame = proptest::collection::vec(proptest::bool::ANY, cols).prop_map(move |bits| {
            TensorValue {
                rows,
                cols,
                kind: TensorKind::Frame,
                bits,
            }
        });
        let scalar = proptest::bool::ANY.prop_map(move |b| TensorValue::scalar(rows, cols, b));
        prop_oneof![cell, frame, scalar]
    }

    #[test]
    fn runs_extraction() {
        let runs = runs_of(&[false, true, true, false, true]);
        assert_eq!(runs.len(), 2);
        assert_eq!((runs[0].start, runs[0].end), (2, 3));
        assert_eq!((runs[1].start, runs[1].end), (5, 5));
    }

    proptest! {
        /// De Morgan elementwise under every broadcast combination.
        #[test]
        fn de_morgan((a, b) in (arb_tensor(3, 8), arb_tensor(3, 8))) {
            let lhs = a.and(&b).not();
            let rhs = a.not().or(&b.not());
            for r in 0..3 {
                for c in 0..8 {
                    prop_assert_eq!(lhs.get(r, c), rhs.get(r, c));
                }
            }
        }

        /// Broadcast AND equals naive row expansion.
        #[test]
        fn broadcast_matches_expansion(
            frame_bits in proptest::collection::vec(proptest::bool::ANY, 8),
            cell_bits in proptest::collection::vec(proptest::bool::ANY, 24),
        ) {
            let frame = TensorValue {
                rows: 3,
                cols: 8,
                kind: TensorKind::Frame,
                bits: frame_bits.clone(),
            };
            let cell = TensorValue {
                rows: 3,
                cols: 8,
                kind: TensorKind::Cell,
                bits: cell_bits.clone(),
            };
            let combined = frame.and(&cell);
            prop_assert_eq!(combined.kind(), TensorKind::Cell);
            let expanded = TensorValue::from_fn(3, 8, |r, c| frame_bits[c] && cell_bits[r * 8 + c]);
            for r in 0..3 {
                for c in 0..8 {
                    prop_assert_eq!(combined.get(r, c), expanded.get(r, c));
                }
            }
        }

        /// Run extraction partitions the true cells exactly.
        #[test]
        fn runs_cover_true_bits(bits in proptest::collection::vec(proptest::bool::ANY, 1..50)) {
            let runs = runs_of(&bits);
            let mut covered = vec![false; bits.len()];
            for run in &runs {
                for f in run.start..=run.end {
                    prop_assert!(!covered[f - 1]);
                    covered[f - 1] = true;
                }
            }
            prop_assert_eq!(covered, bits);
        }
    }
}
