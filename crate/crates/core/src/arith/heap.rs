//! Binary min-heap whose entries carry chains of operand rows sharing the
//! same key, in the style of Monagan and Pearce.

use std::cmp::Ordering;

const NIL: usize = usize::MAX;

pub(crate) struct ChainHeap<K> {
    nodes: Vec<(K, usize)>,
    next: Vec<usize>,
    rows: usize,
    pub peak_rows: usize,
    pub comparisons: u64,
}

impl<K: Ord> ChainHeap<K> {
    pub fn with_rows(n: usize) -> Self {
        ChainHeap { nodes: Vec::with_capacity(n), next: vec![NIL; n], rows: 0, peak_rows: 0, comparisons: 0 }
    }

    #[cfg(test)]
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn peek_key(&self) -> Option<&K> {
        self.nodes.first().map(|(k, _)| k)
    }

    /// Inserts `row` under `key`. If an ancestor on the insertion path has
    /// the same key the row is chained onto it instead.
    pub fn push(&mut self, key: K, row: usize) {
        if row >= self.next.len() {
            self.next.resize(row + 1, NIL);
        }
        self.rows += 1;
        self.peak_rows = self.peak_rows.max(self.rows);
        let mut pos = self.nodes.len();
        let mut climb = 0usize;
        while pos > 0 {
            let parent = (pos - 1) / 2;
            self.comparisons += 1;
            match key.cmp(&self.nodes[parent].0) {
                Ordering::Less => {
                    pos = parent;
                    climb += 1;
                }
                Ordering::Equal => {
                    self.next[row] = self.nodes[parent].1;
                    self.nodes[parent].1 = row;
                    return;
                }
                Ordering::Greater => break,
            }
        }
        self.next[row] = NIL;
        self.nodes.push((key, row));
        let mut hole = self.nodes.len() - 1;
        for _ in 0..climb {
            let parent = (hole - 1) / 2;
            self.nodes.swap(hole, parent);
            hole = parent;
        }
    }

    /// Removes the smallest key, appending every row stored under it to
    /// `rows_out`. Equal keys off the insertion path can sit in separate
    /// nodes, so these are drained too.
    pub fn pop_into(&mut self, rows_out: &mut Vec<usize>) -> Option<K> {
        if self.nodes.is_empty() {
            return None;
        }
        let key = self.pop_node(rows_out);
        while let Some((top, _)) = self.nodes.first() {
            self.comparisons += 1;
            if *top != key {
                break;
            }
            self.pop_node(rows_out);
        }
        Some(key)
    }

    fn pop_node(&mut self, rows_out: &mut Vec<usize>) -> K {
        let (key, head) = self.nodes.swap_remove(0);
        self.sift_down();
        let mut r = head;
        while r != NIL {
            rows_out.push(r);
            self.rows -= 1;
            r = self.next[r];
        }
        key
    }

    fn sift_down(&mut self) {
        let n = self.nodes.len();
        let mut pos = 0;
        loop {
            let l = 2 * pos + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let mut child = l;
            if r < n {
                self.comparisons += 1;
                if self.nodes[r].0 < self.nodes[l].0 {
                    child = r;
                }
            }
            self.comparisons += 1;
            if self.nodes[child].0 < self.nodes[pos].0 {
                self.nodes.swap(child, pos);
                pos = child;
            } else {
                break;
            }
        }
    }
}
