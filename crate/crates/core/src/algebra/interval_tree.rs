//! Interval index for stabbing and overlap queries over frame intervals.
//!
//! A static max-end augmented tree, built balanced from the input order.
//! Queries return indices into the original interval list, ascending.

use crate::algebra::allen::FrameInterval;

#[derive(Debug)]
struct Node {
    interval: FrameInterval,
    index: usize,
    max_end: usize,
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

#[derive(Debug, Default)]
pub struct IntervalIndex {
    root: Option<Box<Node>>,
    len: usize,
}

impl IntervalIndex {
    pub fn new(intervals: &[FrameInterval]) -> Self {
        let mut order: Vec<usize> = (0..intervals.len()).collect();
        order.sort_by_key(|&i| (intervals[i].start, intervals[i].end, i));
        IntervalIndex {
            root: build(&order, intervals),
            len: intervals.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Indices of intervals containing `frame`, ascending.
    pub fn stab(&self, frame: usize) -> Vec<usize> {
        let mut out = Vec::new();
        stab_rec(&self.root, frame, &mut out);
        out.sort_unstable();
        out
    }

    /// Indices of intervals sharing at least one frame with `query`,
    /// ascending.
    pub fn overlapping(&self, query: &FrameInterval) -> Vec<usize> {
        let mut out = Vec::new();
        overlap_rec(&self.root, query, &mut out);
        out.sort_unstable();
        out
    }
}

fn build(order: &[usize], intervals: &[FrameInterval]) -> Option<Box<Node>> {
    if order.is_empty() {
        return None;
    }
    let mid = order.len() / 2;
    let idx = order[mid];
    let left = build(&order[..mid], intervals);
    let right = build(&order[mid + 1..], intervals);
    let mut max_end = intervals[idx].end;
    if let Some(l) = &left {
        max_end = max_end.max(l.max_end);
    }
    if let Some(r) = &right {
        max_end = max_end.max(r.max_end);
    }
    Some(Box::new(Node {
        interval: intervals[idx],
        index: idx,
        max_end,
        left,
        right,
    }))
}

fn stab_rec(node: &Option<Box<Node>>, frame: usize, out: &mut Vec<usize>) {
    let Some(n) = node else { return };
    if frame > n.max_end {
        return;
    }
    stab_rec(&n.left, frame, out);
    if n.interval.contains(frame) {
        out.push(n.index);
    }
    // Subtrees to the right start at or after this node's start; they
    // cannot contain the frame if it lies before that start.
    if frame >= n.interval.start {
        stab_rec(&n.right, frame, out);
    }
}

fn overlap_rec(node: &Option<Box<Node>>, query: &FrameInterval, out: &mut Vec<usize>) {
    let Some(n) = node else { return };
    if query.start > n.max_end {
        return;
    }
    overlap_rec(&n.left, query, out);
    if n.interval.overlaps(query) {
        out.push(n.index);
    }
    if query.end >= n.interval.start {
        overlap_rec(&n.right, query, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn iv(s: usize, e: usize) -> FrameInterval {
        FrameInterval::new(s, e)
    }

    #[test]
    fn stab_enumeration() {
        let idx = IntervalIndex::new(&[iv(1, 10), iv(5, 20), iv(30, 40)]);
        assert_eq!(idx.stab(7), vec![0, 1]);
        assert_eq!(idx.stab(25), Vec::<usize>::new());
        assert_eq!(idx.stab(30), vec![2]);
    }

    #[test]
    fn overlap_enumeration() {
        let idx = IntervalIndex::new(&[iv(1, 10), iv(5, 20), iv(30, 40)]);
        assert_eq!(idx.overlapping(&iv(15, 35)), vec![1, 2]);
        assert_eq!(idx.overlapping(&iv(21, 29)), Vec::<usize>::new());
    }

    #[test]
    fn random_queries_match_linear_scan() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let intervals: Vec<FrameInterval> = (0..1000)
            .map(|_| {
                let s = rng.random_range(1..=500usize);
                let l = rng.random_range(0..=80usize);
                iv(s, s + l)
            })
            .collect();
        let idx = IntervalIndex::new(&intervals);
        for _ in 0..100 {
            let frame = rng.random_range(1..=600usize);
            let expect: Vec<usize> = intervals
                .iter()
                .enumerate()
                .filter(|(_, i)| i.contains(frame))
                .map(|(n, _)| n)
                .collect();
            assert_eq!(idx.stab(frame), expect);

            let qs = rng.random_range(1..=550usize);
            let q = iv(qs, qs + rng.random_range(0..=60usize));
            let expect: Vec<usize> = intervals
                .iter()
                .enumerate()
                .filter(|(_, i)| i.overlaps(&q))
                .map(|(n, _)| n)
                .collect();
            assert_eq!(idx.overlapping(&q), expect);
        }
    }
}
