//! Monotone priority queues for the constrained searches.
//!
//! Three kinds share one contract: keys are pushed in non-decreasing order
//! of the primary key relative to what has already been popped, and every
//! pop returns an entry with the minimum primary key.
//!
//! * `Bucket`: a fixed array of high-level buckets of width `delta_f`. The
//!   bucket being drained is split into `delta_f` low-level linked lists.
//!   Lists are LIFO or FIFO and cannot break ties on the secondary key.
//! * `Hybrid`: the same high-level buckets, with the bucket being drained
//!   held in a binary heap. When the scan reaches a bucket its nodes are
//!   transferred into the heap.
//! * `BinaryHeap`: a plain binary heap that counts node swaps.
//!
//! Bucket counts follow `BS = floor((f_max - f_min) / delta_f) + 1` and
//! never change after construction.

use thiserror::Error;

use crate::graph::Cost;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueueKind {
    Bucket,
    Hybrid,
    BinaryHeap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TiePolicy {
    /// Primary key only; the bucket kind serves equal keys last-in first-out.
    NoneLifo,
    /// Primary key only, first-in first-out (bucket kind only).
    NoneFifo,
    /// Lexicographic on (primary, secondary).
    Secondary,
}

impl TiePolicy {
    pub fn breaks_ties(self) -> bool {
        self == TiePolicy::Secondary
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueueConfig {
    pub kind: QueueKind,
    pub f_min: Cost,
    pub f_max: Cost,
    pub delta_f: Cost,
    pub tie_policy: TiePolicy,
}

impl QueueConfig {
    /// Number of high-level buckets for the bucket and hybrid kinds.
    pub fn bucket_count(&self) -> usize {
        ((self.f_max - self.f_min) / self.delta_f) as usize + 1
    }
}

/// Operation counters. `queue_ops` is kind specific: buckets checked for
/// the bucket kind, buckets checked plus nodes transferred plus heap swaps
/// for the hybrid kind, and heap swaps for the binary heap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueueStats {
    pub pushes: u64,
    pub pops: u64,
    pub queue_ops: u64,
    pub peak_size: u64,
    pub buckets_checked: u64,
    pub transfers: u64,
    pub swaps: u64,
}

impl QueueStats {
    pub fn merge(&mut self, o: &QueueStats) {
        self.pushes += o.pushes;
        self.pops += o.pops;
        self.queue_ops += o.queue_ops;
        self.peak_size = self.peak_size.max(o.peak_size);
        self.buckets_checked += o.buckets_checked;
        self.transfers += o.transfers;
        self.swaps += o.swaps;
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueueError {
    #[error("bucket queues cannot break ties on the secondary key")]
    SecondaryOnBucket,
    #[error("tie policy {0:?} is not supported by the {1:?} queue")]
    UnsupportedTiePolicy(TiePolicy, QueueKind),
    #[error("invalid key range: f_max {f_max} < f_min {f_min}")]
    InvalidRange { f_min: Cost, f_max: Cost },
    #[error("bucket width must be at least 1")]
    ZeroWidth,
    #[error("key {key} is below the drained region (floor {floor})")]
    BelowDrained { key: Cost, floor: Cost },
    #[error("key {key} is outside [{f_min}, {f_max}]")]
    OutOfRange { key: Cost, f_min: Cost, f_max: Cost },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub primary: Cost,
    pub secondary: Cost,
    pub payload: u32,
}

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Item {
    entry: Entry,
    next: u32,
}

/// Singly linked lists over a shared item slab.
#[derive(Debug)]
struct Slab {
    items: Vec<Item>,
    free: u32,
}

impl Slab {
    fn alloc(&mut self, entry: Entry) -> u32 {
        if self.free != NIL && !self.items.is_empty() {
            let i = self.free;
            self.free = self.items[i as usize].next;
            self.items[i as usize] = Item { entry, next: NIL };
            i
        } else {
            self.items.push(Item { entry, next: NIL });
            (self.items.len() - 1) as u32
        }
    }

    fn release(&mut self, i: u32) -> Entry {
        let e = self.items[i as usize].entry;
        self.items[i as usize].next = self.free;
        self.free = i;
        e
    }
}

#[derive(Debug, Clone, Copy)]
struct List {
    head: u32,
    tail: u32,
}

const EMPTY: List = List { head: NIL, tail: NIL };

impl List {
    fn push(&mut self, slab: &mut Slab, i: u32, lifo: bool) {
        if self.head == NIL {
            self.head = i;
            self.tail = i;
        } else if lifo {
            slab.items[i as usize].next = self.head;
            self.head = i;
        } else {
            slab.items[self.tail as usize].next = i;
            self.tail = i;
        }
    }

    fn pop(&mut self, slab: &Slab) -> Option<u32> {
        if self.head == NIL {
            return None;
        }
        let i = self.head;
        self.head = slab.items[i as usize].next;
        if self.head == NIL {
            self.tail = NIL;
        }
        Some(i)
    }
}

#[derive(Debug)]
struct BucketQueue {
    high: Vec<List>,
    low: Vec<List>,
    low_index: usize,
    slab: Slab,
    lifo: bool,
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    entry: Entry,
    seq: u64,
}

/// Binary heap with swap counting. Under the secondary policy full ties are
/// served newest first, which makes the order total and deterministic.
#[derive(Debug)]
struct CountingHeap {
    data: Vec<HeapEntry>,
    secondary: bool,
    seq: u64,
}

impl CountingHeap {
    fn new(secondary: bool) -> Self {
        CountingHeap {
            data: Vec::new(),
            secondary,
            seq: 0,
        }
    }

    #[inline]
    fn less(&self, a: &HeapEntry, b: &HeapEntry) -> bool {
        if self.secondary {
            (a.entry.primary, a.entry.secondary, std::cmp::Reverse(a.seq))
                < (b.entry.primary, b.entry.secondary, std::cmp::Reverse(b.seq))
        } else {
            a.entry.primary < b.entry.primary
        }
    }

    fn push(&mut self, entry: Entry, swaps: &mut u64) {
        self.seq += 1;
        self.data.push(HeapEntry { entry, seq: self.seq });
        let mut i = self.data.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.less(&self.data[i], &self.data[parent]) {
                self.data.swap(i, parent);
                *swaps += 1;
                i = parent;
            } else {
                break;
            }
        }
    }

    fn pop(&mut self, swaps: &mut u64) -> Option<Entry> {
        let n = self.data.len();
        if n == 0 {
            return None;
        }
        self.data.swap(0, n - 1);
        let top = self.data.pop().map(|h| h.entry);
        let n = self.data.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut m = i;
            if l < n && self.less(&self.data[l], &self.data[m]) {
                m = l;
            }
            if r < n && self.less(&self.data[r], &self.data[m]) {
                m = r;
            }
            if m == i {
                break;
            }
            self.data.swap(i, m);
            *swaps += 1;
            i = m;
        }
        top
    }

    fn peek(&self) -> Option<Entry> {
        self.data.first().map(|h| h.entry)
    }
}

#[derive(Debug)]
struct HybridQueue {
    high: Vec<Vec<Entry>>,
    heap: CountingHeap,
}

#[derive(Debug)]
enum Inner {
    Bucket(BucketQueue),
    Hybrid(HybridQueue),
    Heap(CountingHeap),
}

/// A single-owner monotone priority queue.
#[derive(Debug)]
pub struct FrontierQueue {
    cfg: QueueConfig,
    inner: Inner,
    stats: QueueStats,
    len: usize,
    /// Current high-level bucket; meaningful once `started`.
    k: usize,
    started: bool,
    last_popped: Cost,
}

impl FrontierQueue {
    pub fn new(cfg: QueueConfig) -> Result<FrontierQueue, QueueError> {
        if cfg.f_max < cfg.f_min {
            return Err(QueueError::InvalidRange {
                f_min: cfg.f_min,
                f_max: cfg.f_max,
            });
        }
        if cfg.delta_f == 0 {
            return Err(QueueError::ZeroWidth);
        }
        let inner = match cfg.kind {
            QueueKind::Bucket => {
                if cfg.tie_policy == TiePolicy::Secondary {
                    return Err(QueueError::SecondaryOnBucket);
                }
                Inner::Bucket(BucketQueue {
                    high: vec![EMPTY; cfg.bucket_count()],
                    low: vec![EMPTY; cfg.delta_f as usize],
                    low_index: 0,
                    slab: Slab {
                        items: Vec::new(),
                        free: NIL,
                    },
                    lifo: cfg.tie_policy == TiePolicy::NoneLifo,
                })
            }
            QueueKind::Hybrid | QueueKind::BinaryHeap => {
                if cfg.tie_policy == TiePolicy::NoneFifo {
                    return Err(QueueError::UnsupportedTiePolicy(cfg.tie_policy, cfg.kind));
                }
                let heap = CountingHeap::new(cfg.tie_policy == TiePolicy::Secondary);
                if cfg.kind == QueueKind::Hybrid {
                    Inner::Hybrid(HybridQueue {
                        high: vec![Vec::new(); cfg.bucket_count()],
                        heap,
                    })
                } else {
                    Inner::Heap(heap)
                }
            }
        };
        Ok(FrontierQueue {
            cfg,
            inner,
            stats: QueueStats::default(),
            len: 0,
            k: 0,
            started: false,
            last_popped: 0,
        })
    }

    pub fn config(&self) -> &QueueConfig {
        &self.cfg
    }

    /// Number of high-level buckets (1 for the binary heap).
    pub fn bucket_count(&self) -> usize {
        match self.inner {
            Inner::Heap(_) => 1,
            _ => self.cfg.bucket_count(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn stats(&self) -> QueueStats {
        let mut s = self.stats;
        s.queue_ops = match self.inner {
            Inner::Bucket(_) => s.buckets_checked,
            Inner::Hybrid(_) => s.buckets_checked + s.transfers + s.swaps,
            Inner::Heap(_) => s.swaps,
        };
        s
    }

    pub fn push(&mut self, primary: Cost, secondary: Cost, payload: u32) -> Result<(), QueueError> {
        let entry = Entry {
            primary,
            secondary,
            payload,
        };
        if self.started && primary < self.last_popped {
            return Err(QueueError::BelowDrained {
                key: primary,
                floor: self.last_popped,
            });
        }
        let (f_min, f_max, width) = (self.cfg.f_min, self.cfg.f_max, self.cfg.delta_f);
        match &mut self.inner {
            Inner::Heap(h) => h.push(entry, &mut self.stats.swaps),
            inner => {
                if primary < f_min || primary > f_max {
                    return Err(QueueError::OutOfRange { key: primary, f_min, f_max });
                }
                let b = ((primary - f_min) / width) as usize;
                if self.started && b < self.k {
                    return Err(QueueError::BelowDrained {
                        key: primary,
                        floor: f_min + self.k as Cost * width,
                    });
                }
                match inner {
                    Inner::Bucket(q) => {
                        if self.started && b == self.k {
                            let lo = ((primary - f_min) % width) as usize;
                            if lo < q.low_index {
                                return Err(QueueError::BelowDrained {
                                    key: primary,
                                    floor: f_min + self.k as Cost * width + q.low_index as Cost,
                                });
                            }
                            let i = q.slab.alloc(entry);
                            q.low[lo].push(&mut q.slab, i, q.lifo);
                        } else {
                            let i = q.slab.alloc(entry);
                            q.high[b].push(&mut q.slab, i, q.lifo);
                        }
                    }
                    Inner::Hybrid(q) => {
                        if self.started && b == self.k {
                            q.heap.push(entry, &mut self.stats.swaps);
                        } else {
                            q.high[b].push(entry);
                        }
                    }
                    Inner::Heap(_) => unreachable!(),
                }
            }
        }
        self.len += 1;
        self.stats.pushes += 1;
        self.stats.peak_size = self.stats.peak_size.max(self.len as u64);
        Ok(())
    }

    /// Moves the scan forward to the first non-empty position. Returns false
    /// when the queue is empty. Never moves when `len == 0`, so later pushes
    /// at any key not below the last popped one stay legal.
    fn settle(&mut self) -> bool {
        if self.len == 0 {
            return false;
        }
        let (f_min, width) = (self.cfg.f_min, self.cfg.delta_f);
        match &mut self.inner {
            Inner::Heap(_) => {
                self.started = true;
                true
            }
            Inner::Bucket(q) => {
                if !self.started {
                    self.started = true;
                    self.k = 0;
                    self.stats.buckets_checked += 1;
                    Self::split_bucket(q, 0, f_min, width);
                }
                loop {
                    while q.low_index < q.low.len() {
                        if q.low[q.low_index].head != NIL {
                            return true;
                        }
                        q.low_index += 1;
                    }
                    if self.k + 1 >= q.high.len() {
                        return false;
                    }
                    self.k += 1;
                    self.stats.buckets_checked += 1;
                    Self::split_bucket(q, self.k, f_min, width);
                }
            }
            Inner::Hybrid(q) => {
                if !self.started {
                    self.started = true;
                    self.k = 0;
                    self.stats.buckets_checked += 1;
                    Self::transfer(q, 0, &mut self.stats);
                }
                loop {
                    if !q.heap.data.is_empty() {
                        return true;
                    }
                    if self.k + 1 >= q.high.len() {
                        return false;
                    }
                    self.k += 1;
                    self.stats.buckets_checked += 1;
                    Self::transfer(q, self.k, &mut self.stats);
                }
            }
        }
    }

    fn split_bucket(q: &mut BucketQueue, k: usize, f_min: Cost, width: Cost) {
        q.low_index = 0;
        let mut list = std::mem::replace(&mut q.high[k], EMPTY);
        while let Some(i) = list.pop(&q.slab) {
            q.slab.items[i as usize].next = NIL;
            let lo = ((q.slab.items[i as usize].entry.primary - f_min) % width) as usize;
            // Appending keeps the list's existing order in each low-level list.
            q.low[lo].push(&mut q.slab, i, false);
        }
    }

    fn transfer(q: &mut HybridQueue, k: usize, stats: &mut QueueStats) {
        let bucket = std::mem::take(&mut q.high[k]);
        stats.transfers += bucket.len() as u64;
        for e in bucket {
            q.heap.push(e, &mut stats.swaps);
        }
    }

    /// Returns the next entry without removing it. May advance the scan.
    pub fn peek(&mut self) -> Option<Entry> {
        if !self.settle() {
            return None;
        }
        match &self.inner {
            Inner::Heap(h) => h.peek(),
            Inner::Hybrid(q) => q.heap.peek(),
            Inner::Bucket(q) => Some(q.slab.items[q.low[q.low_index].head as usize].entry),
        }
    }

    pub fn pop(&mut self) -> Option<Entry> {
        if !self.settle() {
            return None;
        }
        let e = match &mut self.inner {
            Inner::Heap(h) => h.pop(&mut self.stats.swaps),
            Inner::Hybrid(q) => q.heap.pop(&mut self.stats.swaps),
            Inner::Bucket(q) => {
                let i = q.low[q.low_index].pop(&q.slab).expect("settled on a non-empty list");
                Some(q.slab.release(i))
            }
        }?;
        self.len -= 1;
        self.stats.pops += 1;
        self.last_popped = e.primary;
        Some(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(kind: QueueKind, f_min: Cost, f_max: Cost, delta_f: Cost, tie_policy: TiePolicy) -> QueueConfig {
        QueueConfig {
            kind,
            f_min,
            f_max,
            delta_f,
            tie_policy,
        }
    }

    #[test]
    fn bucket_counts() {
        assert_eq!(cfg(QueueKind::Bucket, 3, 7, 1, TiePolicy::NoneLifo).bucket_count(), 5);
        assert_eq!(cfg(QueueKind::Hybrid, 0, 99, 10, TiePolicy::Secondary).bucket_count(), 10);
        assert_eq!(cfg(QueueKind::Bucket, 5, 5, 1, TiePolicy::NoneLifo).bucket_count(), 1);
    }

    #[test]
    fn bucket_rejects_secondary() {
        assert_eq!(
            FrontierQueue::new(cfg(QueueKind::Bucket, 0, 1, 1, TiePolicy::Secondary)).unwrap_err(),
            QueueError::SecondaryOnBucket
        );
    }

    #[test]
    fn lifo_and_fifo_order() {
        let mut q = FrontierQueue::new(cfg(QueueKind::Bucket, 0, 10, 1, TiePolicy::NoneLifo)).unwrap();
        q.push(4, 0, 1).unwrap();
        q.push(4, 0, 2).unwrap();
        assert_eq!(q.pop().unwrap().payload, 2);
        assert_eq!(q.pop().unwrap().payload, 1);
        let mut q = FrontierQueue::new(cfg(QueueKind::Bucket, 0, 10, 3, TiePolicy::NoneFifo)).unwrap();
        q.push(4, 0, 1).unwrap();
        q.push(4, 0, 2).unwrap();
        assert_eq!(q.pop().unwrap().payload, 1);
        assert_eq!(q.pop().unwrap().payload, 2);
    }

    #[test]
    fn hybrid_secondary_order() {
        let mut q = FrontierQueue::new(cfg(QueueKind::Hybrid, 0, 10, 1, TiePolicy::Secondary)).unwrap();
        q.push(4, 9, 1).unwrap();
        q.push(4, 2, 2).unwrap();
        assert_eq!(q.pop().unwrap().payload, 2);
        assert_eq!(q.pop().unwrap().payload, 1);
        assert_eq!(q.pop(), None);
    }

    #[test]
    fn min_order_every_kind() {
        for (kind, tie) in [
            (QueueKind::Bucket, TiePolicy::NoneLifo),
            (QueueKind::Hybrid, TiePolicy::NoneLifo),
            (QueueKind::BinaryHeap, TiePolicy::Secondary),
        ] {
            let mut q = FrontierQueue::new(cfg(kind, 0, 10, 2, tie)).unwrap();
            for k in [7, 3, 5] {
                q.push(k, 0, k as u32).unwrap();
            }
            let out: Vec<_> = std::iter::from_fn(|| q.pop().map(|e| e.primary)).collect();
            assert_eq!(out, vec![3, 5, 7]);
            assert_eq!(q.stats().pops, 3);
        }
    }

    #[test]
    fn bucket_scan_count() {
        let mut q = FrontierQueue::new(cfg(QueueKind::Bucket, 0, 100, 1, TiePolicy::NoneLifo)).unwrap();
        assert_eq!(q.stats(), QueueStats::default());
        q.push(0, 0, 0).unwrap();
        q.pop().unwrap();
        q.push(100, 0, 0).unwrap();
        q.pop().unwrap();
        assert_eq!(q.stats().queue_ops, 101);
    }

    #[test]
    fn monotonicity_violation_is_reported() {
        let mut q = FrontierQueue::new(cfg(QueueKind::Bucket, 0, 10, 1, TiePolicy::NoneLifo)).unwrap();
        q.push(5, 0, 0).unwrap();
        q.pop().unwrap();
        assert!(matches!(q.push(4, 0, 0), Err(QueueError::BelowDrained { .. })));
        let mut h = FrontierQueue::new(cfg(QueueKind::BinaryHeap, 0, 10, 1, TiePolicy::NoneLifo)).unwrap();
        h.push(5, 0, 0).unwrap();
        h.pop().unwrap();
        assert!(h.push(4, 0, 0).is_err());
    }
}
