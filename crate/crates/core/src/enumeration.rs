//! Exhaustive enumeration of Skolem circles and sequences.
//!
//! Circles are generated directly in standard form, one per equivalence
//! class: the 1-pair is pinned to positions `(1, 2)`, symbol 2 is anchored
//! at `a_2 ∈ [3, m]`, and the remaining symbols are placed by descending
//! size (large symbols are the most constrained, so they fail fastest).
//! Occupancy lives in a single 64-bit word — one bit per position — which
//! caps the enumerable order at 32 and makes the candidate test one AND.
//!
//! The search space splits into independent shards keyed by a placement
//! prefix, so large orders can be spread over threads or resumed from
//! per-shard checkpoints; merging is plain summation and the result is
//! identical to the unsharded run.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use crate::circle::CircleLabeling;

/// Occupancy is one 64-bit word, so `2m <= 64`.
pub const MAX_ENUMERABLE_ORDER: usize = 32;

/// What one exhaustive run visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub order: usize,
    pub circles: u64,
}

/// Circle counts of one order, keyed by the number of removable edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedCounts {
    order: usize,
    counts: BTreeMap<u32, u64>,
}

impl ClassifiedCounts {
    pub fn new(order: usize) -> Self {
        ClassifiedCounts {
            order,
            counts: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Counts keyed by `j`; only observed values are present.
    pub fn by_removable(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn get(&self, j: u32) -> u64 {
        self.counts.get(&j).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The linear-sequence count the circle census implies: each circle
    /// with `j` removable edges accounts for `2j` sequences.
    pub fn implied_sequence_count(&self) -> u64 {
        self.counts.iter().map(|(&j, &n)| 2 * j as u64 * n).sum()
    }

    pub fn add(&mut self, j: u32, n: u64) {
        if n > 0 {
            *self.counts.entry(j).or_insert(0) += n;
        }
    }

    fn bump(&mut self, j: u32) {
        *self.counts.entry(j).or_insert(0) += 1;
    }
}

/// Sums per-shard counts of the same order. Order is identical no matter
/// how the work was split, because addition is all that happens here.
pub fn merge<I: IntoIterator<Item = ClassifiedCounts>>(order: usize, parts: I) -> ClassifiedCounts {
    let mut out = ClassifiedCounts::new(order);
    for part in parts {
        assert_eq!(part.order, order, "cannot merge counts of different orders");
        for (&j, &n) in &part.counts {
            out.add(j, n);
        }
    }
    out
}

#[derive(Clone, Copy)]
struct Candidate {
    /// Occupancy bits of the two cells this placement uses.
    mask: u64,
    /// 1-based anchor position `a_i`.
    anchor: u16,
}

struct Engine {
    order: usize,
    two_m: usize,
    /// `cand[i]` holds every placement of symbol `i` that avoids positions
    /// 1 and 2; `cand[2]` additionally honors the standard-form range.
    cand: Vec<Vec<Candidate>>,
}

impl Engine {
    fn new(m: usize) -> Engine {
        assert!(
            (2..=MAX_ENUMERABLE_ORDER).contains(&m),
            "exhaustive search supports orders 2..=32, got {m}"
        );
        let two_m = 2 * m;
        let bit = |p: usize| 1u64 << (p - 1);
        let placement = |a: usize, gap: usize| {
            let b = (a - 1 + gap) % two_m + 1;
            Candidate {
                mask: bit(a) | bit(b),
                anchor: a as u16,
            }
        };
        let mut cand: Vec<Vec<Candidate>> = vec![Vec::new(); m + 1];
        // Standard form pins a_2 into [3, m].
        for a in 3..=m {
            cand[2].push(placement(a, 2));
        }
        assert_eq!(cand[2].len(), m - 2);
        for i in 3..=m {
            if i == m {
                // The two arcs of symbol m have equal length; anchors
                // beyond m would repeat the same cell sets.
                for a in 3..=m {
                    cand[m].push(placement(a, m));
                }
                assert_eq!(cand[m].len(), m - 2);
            } else {
                for a in 1..=two_m {
                    let b = (a - 1 + i) % two_m + 1;
                    if a == 1 || a == 2 || b == 1 || b == 2 {
                        continue;
                    }
                    cand[i].push(placement(a, i));
                }
                assert_eq!(cand[i].len(), 2 * m - 4);
            }
        }
        Engine {
            order: m,
            two_m,
            cand,
        }
    }

    /// Runs the search below `prefix`, calling `leaf` with the anchor
    /// array (`anchors[i] = a_i`) of every completed circle. The slice is
    /// a snapshot only valid during the call.
    fn run<F: FnMut(&[u16])>(&self, prefix: &[(u32, usize)], mut leaf: F) -> u64 {
        let mut occ: u64 = 0b11;
        let mut anchors = vec![0u16; self.order + 1];
        anchors[1] = 1;
        let mut placed = vec![false; self.order + 1];
        placed[1] = true;
        for &(symbol, a) in prefix {
            let s = symbol as usize;
            assert!(
                (2..=self.order).contains(&s) && !placed[s],
                "shard prefix places symbol {symbol} twice or out of range"
            );
            let c = self.cand[s]
                .iter()
                .find(|c| c.anchor as usize == a)
                .expect("shard prefix anchor is not a legal placement");
            assert_eq!(occ & c.mask, 0, "shard prefix placements clash");
            occ |= c.mask;
            anchors[s] = c.anchor;
            placed[s] = true;
        }
        let mut symbols: Vec<u32> = Vec::with_capacity(self.order);
        if !placed[2] {
            symbols.push(2);
        }
        for i in (3..=self.order).rev() {
            if !placed[i] {
                symbols.push(i as u32);
            }
        }
        let mut visited = 0u64;
        self.descend(occ, &symbols, &mut anchors, &mut leaf, &mut visited);
        visited
    }

    fn descend<F: FnMut(&[u16])>(
        &self,
        occ: u64,
        symbols: &[u32],
        anchors: &mut Vec<u16>,
        leaf: &mut F,
        visited: &mut u64,
    ) {
        let [s, rest @ ..] = symbols else {
            *visited += 1;
            leaf(anchors);
            return;
        };
        let s = *s as usize;
        for c in &self.cand[s] {
            if occ & c.mask == 0 {
                anchors[s] = c.anchor;
                self.descend(occ | c.mask, rest, anchors, leaf, visited);
            }
        }
    }
}

fn circle_from_anchors(m: usize, anchors: &[u16]) -> CircleLabeling {
    let two_m = 2 * m;
    let mut symbols = vec![0u32; two_m];
    for i in 1..=m {
        let a = anchors[i] as usize;
        symbols[a - 1] = i as u32;
        symbols[(a - 1 + i) % two_m] = i as u32;
    }
    CircleLabeling::new(symbols).expect("anchors describe a full labeling")
}

/// The number of removable edges, computed from the anchors alone: the
/// mask weight of the interior mask, rounded up to pairs. Equivalent to
/// `removable::removable_count_weight` but allocation-free, because this
/// runs once per visited circle.
fn removable_from_anchors(m: usize, two_m: usize, anchors: &[u16]) -> u32 {
    let full: u64 = if two_m == 64 { !0 } else { (1u64 << two_m) - 1 };
    let mut interior = 0u64;
    for (i, &anchor) in anchors.iter().enumerate().take(m).skip(2) {
        // The i - 1 cells strictly inside the forward arc, cyclically:
        // a run of ones starting at the 0-based index of position a_i + 1.
        // Bits shifted past 2m are cut off by `full` below; the right
        // shift reinstates them at the wrapped-around low positions.
        let run = (1u64 << (i - 1)) - 1;
        let lo = anchor as usize % two_m;
        interior |= if lo == 0 {
            run
        } else {
            (run << lo) | (run >> (two_m - lo))
        };
    }
    let weight = (full & !interior).count_ones();
    weight.div_ceil(2)
}

/// Visits every standard-form circle of order `m` exactly once.
///
/// The visitor receives a fresh value per circle; clone it to keep it.
pub fn enumerate_circles<F: FnMut(&CircleLabeling)>(m: usize, visitor: F) -> EnumerationSummary {
    enumerate_with_removable(m, {
        let mut visitor = visitor;
        move |circle, _| visitor(circle)
    })
}

/// Like [`enumerate_circles`], also handing the visitor each circle's
/// removable-edge count.
pub fn enumerate_with_removable<F: FnMut(&CircleLabeling, u32)>(
    m: usize,
    mut visitor: F,
) -> EnumerationSummary {
    assert!(
        (1..=MAX_ENUMERABLE_ORDER).contains(&m),
        "exhaustive search supports orders 1..=32, got {m}"
    );
    if m == 1 {
        let circle = CircleLabeling::new(vec![1, 1]).unwrap();
        visitor(&circle, 1);
        return EnumerationSummary {
            order: 1,
            circles: 1,
        };
    }
    let engine = Engine::new(m);
    let two_m = engine.two_m;
    let circles = engine.run(&[], |anchors| {
        let circle = circle_from_anchors(m, anchors);
        let j = removable_from_anchors(m, two_m, anchors);
        visitor(&circle, j);
    });
    EnumerationSummary { order: m, circles }
}

/// Counts every standard-form circle of order `m` by its number of
/// removable edges. Single-threaded; see [`classify_sharded`] to split
/// the work.
pub fn classify(m: usize) -> ClassifiedCounts {
    assert!(
        (1..=MAX_ENUMERABLE_ORDER).contains(&m),
        "exhaustive search supports orders 1..=32, got {m}"
    );
    if m == 1 {
        let mut counts = ClassifiedCounts::new(1);
        counts.bump(1);
        return counts;
    }
    let engine = Engine::new(m);
    let two_m = engine.two_m;
    let mut counts = ClassifiedCounts::new(m);
    engine.run(&[], |anchors| {
        counts.bump(removable_from_anchors(m, two_m, anchors));
    });
    counts
}

/// An independent slice of the order-`m` search space: all circles whose
/// leading placements match `prefix` (symbol, anchor) exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShardSpec {
    pub order: usize,
    pub prefix: Vec<(u32, usize)>,
    /// This shard's index, `0..of`.
    pub shard: usize,
    /// Total number of shards in the split.
    pub of: usize,
}

/// How finely to split the search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShardGranularity {
    /// One shard per anchor of symbol 2: `m - 2` shards.
    SecondSymbol,
    /// One shard per compatible (symbol 2, symbol `m`) anchor pair.
    SecondAndLargest,
}

/// Splits order `m` into disjoint shards that jointly cover the space.
pub fn make_shards(m: usize, granularity: ShardGranularity) -> Vec<ShardSpec> {
    assert!(
        (1..=MAX_ENUMERABLE_ORDER).contains(&m),
        "exhaustive search supports orders 1..=32, got {m}"
    );
    if m == 1 {
        return vec![ShardSpec {
            order: 1,
            prefix: Vec::new(),
            shard: 0,
            of: 1,
        }];
    }
    let engine = Engine::new(m);
    let mut prefixes: Vec<Vec<(u32, usize)>> = Vec::new();
    match granularity {
        ShardGranularity::SecondSymbol => {
            for c2 in &engine.cand[2] {
                prefixes.push(vec![(2, c2.anchor as usize)]);
            }
        }
        ShardGranularity::SecondAndLargest => {
            for c2 in &engine.cand[2] {
                let occ = 0b11 | c2.mask;
                for cm in &engine.cand[m] {
                    if occ & cm.mask == 0 {
                        prefixes.push(vec![
                            (2, c2.anchor as usize),
                            (m as u32, cm.anchor as usize),
                        ]);
                    }
                }
            }
        }
    }
    // Coverage self-check: distinct prefixes describe disjoint subspaces,
    // and together the anchor choices above are exhaustive.
    debug_assert!(
        {
            let mut sorted = prefixes.clone();
            sorted.sort();
            sorted.windows(2).all(|w| w[0] != w[1])
        },
        "shard prefixes overlap"
    );
    let of = prefixes.len();
    prefixes
        .into_iter()
        .enumerate()
        .map(|(shard, prefix)| ShardSpec {
            order: m,
            prefix,
            shard,
            of,
        })
        .collect()
}

/// Visits every circle of one shard; the union over a shard set from
/// [`make_shards`] is exactly the full enumeration.
pub fn enumerate_shard<F: FnMut(&CircleLabeling, u32)>(
    spec: &ShardSpec,
    mut visitor: F,
) -> EnumerationSummary {
    let m = spec.order;
    if m == 1 {
        assert!(
            spec.prefix.is_empty(),
            "order 1 admits only the empty prefix"
        );
        let circle = CircleLabeling::new(vec![1, 1]).unwrap();
        visitor(&circle, 1);
        return EnumerationSummary {
            order: 1,
            circles: 1,
        };
    }
    let engine = Engine::new(m);
    let two_m = engine.two_m;
    let circles = engine.run(&spec.prefix, |anchors| {
        let circle = circle_from_anchors(m, anchors);
        let j = removable_from_anchors(m, two_m, anchors);
        visitor(&circle, j);
    });
    EnumerationSummary { order: m, circles }
}

/// Classifies one shard.
pub fn classify_shard(spec: &ShardSpec) -> ClassifiedCounts {
    let m = spec.order;
    if m == 1 {
        assert!(
            spec.prefix.is_empty(),
            "order 1 admits only the empty prefix"
        );
        let mut counts = ClassifiedCounts::new(1);
        counts.bump(1);
        return counts;
    }
    let engine = Engine::new(m);
    let two_m = engine.two_m;
    let mut counts = ClassifiedCounts::new(m);
    engine.run(&spec.prefix, |anchors| {
        counts.bump(removable_from_anchors(m, two_m, anchors));
    });
    counts
}

/// Runs `job` over every shard on up to `threads` worker threads and
/// returns the results in shard order, independent of scheduling.
pub fn run_shards<T, F>(shards: &[ShardSpec], threads: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&ShardSpec) -> T + Sync,
{
    if threads <= 1 || shards.len() <= 1 {
        return shards.iter().map(&job).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = shards.iter().map(|_| Mutex::new(None)).collect();
    thread::scope(|scope| {
        for _ in 0..threads.min(shards.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= shards.len() {
                    break;
                }
                let result = job(&shards[i]);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every shard ran"))
        .collect()
}

/// [`classify`] split over shards and threads; the result is identical.
pub fn classify_sharded(
    m: usize,
    granularity: ShardGranularity,
    threads: usize,
) -> ClassifiedCounts {
    let shards = make_shards(m, granularity);
    merge(m, run_shards(&shards, threads, classify_shard))
}

/// Counts the Skolem sequences of order `m` directly, by a linear
/// backtracker that fills the lowest free cell first. Shares nothing with
/// the circle engine, so the two can check each other through the
/// `2j` identity.
pub fn enumerate_sequences(m: usize) -> u64 {
    assert!(
        (1..=MAX_ENUMERABLE_ORDER).contains(&m),
        "exhaustive search supports orders 1..=32, got {m}"
    );
    let two_m = 2 * m;
    // Cells at and above 2m are pre-marked occupied so the lowest-free
    // scan and the partner probe never step outside the board.
    let occ: u64 = if two_m == 64 { 0 } else { !0u64 << two_m };
    let remaining: u32 = if m == 32 { !0 } else { (1u32 << m) - 1 };
    let mut count = 0u64;
    fill(occ, remaining, &mut count);
    count
}

fn fill(occ: u64, remaining: u32, count: &mut u64) {
    if remaining == 0 {
        *count += 1;
        return;
    }
    let p = occ.trailing_ones() as usize;
    let mut symbols = remaining;
    while symbols != 0 {
        let i = symbols.trailing_zeros() as usize + 1;
        symbols &= symbols - 1;
        let q = p + i;
        if q < 64 && occ & (1u64 << q) == 0 {
            fill(
                occ | (1u64 << p) | (1u64 << q),
                remaining & !(1u32 << (i - 1)),
                count,
            );
        }
    }
}
