//! Sorting with stacks and queues.
//!
//! Two arrangements are modelled:
//!
//! * **Parallel** devices side by side. Every element is pushed onto (or
//!   appended to) exactly one device and later popped (dequeued) to the
//!   output. [`parallel_stack_sort`] and [`parallel_queue_sort`] are the
//!   greedy first-fit algorithms; the number of devices they open equals the
//!   longest increasing (resp. decreasing) subsequence of the input.
//! * **Sequential** stacks `S_0, …, S_{k−1}` in series. Input enters
//!   `S_{k−1}`; popping `S_j` for `j > 0` pushes the element onto `S_{j−1}`,
//!   and popping `S_0` emits it. Every element passes through every stack,
//!   so each stack sees exactly `n` pushes and `n` pops, and the per-stack
//!   push/pop bit strings identify the input ([`encode_pushpop`],
//!   [`decode_pushpop`]).

use alloc::collections::{BTreeSet, BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;

/// Which arrangement a trace belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NetworkKind {
    /// Stacks in series.
    SequentialStacks,
    /// Stacks side by side.
    ParallelStacks,
    /// Queues side by side.
    ParallelQueues,
}

/// One device operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    /// Push (enqueue) onto the device.
    Push(usize),
    /// Pop (dequeue) from the device.
    Pop(usize),
}

/// Time-ordered device operations of one sorting run.
///
/// In a sequential trace the transfer from `S_j` to `S_{j−1}` appears as
/// `Pop(j)` immediately followed by `Push(j − 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkTrace {
    /// Arrangement.
    pub kind: NetworkKind,
    /// Number of devices (`k` for sequential stacks, `T` for parallel ones).
    pub device_count: usize,
    /// The operations.
    pub ops: Vec<Op>,
}

impl NetworkTrace {
    /// `(pushes, pops)` per device.
    pub fn op_counts(&self) -> Vec<(usize, usize)> {
        let mut counts = vec![(0, 0); self.device_count];
        for op in &self.ops {
            match *op {
                Op::Push(d) => counts[d].0 += 1,
                Op::Pop(d) => counts[d].1 += 1,
            }
        }
        counts
    }

    /// Runs the operations on `input` and returns the emitted sequence.
    ///
    /// Fails on a pop from an empty device, a push with no element
    /// available, or a device index out of range.
    pub fn replay(&self, input: &Permutation) -> Result<Vec<u32>> {
        let mut devices: Vec<VecDeque<u32>> = vec![VecDeque::new(); self.device_count];
        let mut source = input.values().iter().copied();
        let mut carry: Option<u32> = None;
        let mut output = Vec::with_capacity(input.len());
        let last = self.device_count.checked_sub(1);
        for (step, op) in self.ops.iter().enumerate() {
            let illegal = |reason| Error::IllegalMove { step, reason };
            match *op {
                Op::Push(d) => {
                    if d >= self.device_count {
                        return Err(illegal("device index out of range"));
                    }
                    let x = match self.kind {
                        NetworkKind::SequentialStacks if Some(d) != last => {
                            carry.take().ok_or(illegal("push with nothing popped from the stack above"))?
                        }
                        _ => source.next().ok_or(illegal("push with exhausted input"))?,
                    };
                    devices[d].push_back(x);
                }
                Op::Pop(d) => {
                    if d >= self.device_count {
                        return Err(illegal("device index out of range"));
                    }
                    if carry.is_some() {
                        return Err(illegal("transfer between stacks left incomplete"));
                    }
                    let x = match self.kind {
                        NetworkKind::ParallelQueues => devices[d].pop_front(),
                        _ => devices[d].pop_back(),
                    }
                    .ok_or(illegal("pop of empty device"))?;
                    if self.kind == NetworkKind::SequentialStacks && d > 0 {
                        carry = Some(x);
                    } else {
                        output.push(x);
                    }
                }
            }
        }
        if carry.is_some() {
            return Err(Error::IllegalMove { step: self.ops.len(), reason: "trace ends mid-transfer" });
        }
        Ok(output)
    }
}

/// Result of a greedy parallel sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelSort {
    /// Devices holding at least one element when the input was exhausted.
    pub devices_used: usize,
    /// Device contents at the end of phase 1: stacks bottom to top, queues
    /// front to rear.
    pub loaded: Vec<Vec<u32>>,
    /// Every push and pop.
    pub trace: NetworkTrace,
    /// The emitted sequence.
    pub output: Permutation,
}

/// Greedy parallel stack sort.
///
/// Phase 1 pushes each element onto the leftmost stack whose top is larger,
/// opening a new stack on the right when there is none. Phase 2 repeatedly
/// pops the stack with the smallest top.
pub fn parallel_stack_sort(pi: &Permutation) -> ParallelSort {
    let n = pi.len();
    let mut stacks: Vec<Vec<u32>> = Vec::new();
    let mut tops: Vec<u32> = Vec::new();
    let mut ops = Vec::with_capacity(2 * n);
    for &x in pi.values() {
        // tops increase left to right, so the first larger top is a binary search away
        let d = tops.partition_point(|&t| t < x);
        if d == stacks.len() {
            stacks.push(Vec::new());
            tops.push(x);
        } else {
            tops[d] = x;
        }
        stacks[d].push(x);
        ops.push(Op::Push(d));
    }
    debug_assert!(tops.windows(2).all(|w| w[0] < w[1]));
    let loaded = stacks.clone();
    let mut heap: BinaryHeap<Reverse<(u32, usize)>> =
        stacks.iter().enumerate().filter_map(|(d, s)| s.last().map(|&t| Reverse((t, d)))).collect();
    let mut output = Vec::with_capacity(n);
    while let Some(Reverse((x, d))) = heap.pop() {
        stacks[d].pop();
        output.push(x);
        ops.push(Op::Pop(d));
        if let Some(&t) = stacks[d].last() {
            heap.push(Reverse((t, d)));
        }
    }
    finish(NetworkKind::ParallelStacks, loaded, ops, output)
}

/// Greedy parallel queue sort.
///
/// Phase 1 appends each element to the leftmost queue whose rear is smaller,
/// opening a new queue on the right when there is none. Phase 2 repeatedly
/// dequeues the smallest front.
pub fn parallel_queue_sort(pi: &Permutation) -> ParallelSort {
    let n = pi.len();
    let mut queues: Vec<VecDeque<u32>> = Vec::new();
    let mut rears: Vec<u32> = Vec::new();
    let mut ops = Vec::with_capacity(2 * n);
    for &x in pi.values() {
        // rears decrease left to right
        let d = rears.partition_point(|&r| r > x);
        if d == queues.len() {
            queues.push(VecDeque::new());
            rears.push(x);
        } else {
            rears[d] = x;
        }
        queues[d].push_back(x);
        ops.push(Op::Push(d));
    }
    debug_assert!(rears.windows(2).all(|w| w[0] > w[1]));
    let loaded = queues.iter().map(|q| q.iter().copied().collect()).collect();
    let mut heap: BinaryHeap<Reverse<(u32, usize)>> =
        queues.iter().enumerate().filter_map(|(d, q)| q.front().map(|&f| Reverse((f, d)))).collect();
    let mut output = Vec::with_capacity(n);
    while let Some(Reverse((x, d))) = heap.pop() {
        queues[d].pop_front();
        output.push(x);
        ops.push(Op::Pop(d));
        if let Some(&f) = queues[d].front() {
            heap.push(Reverse((f, d)));
        }
    }
    finish(NetworkKind::ParallelQueues, loaded, ops, output)
}

fn finish(kind: NetworkKind, loaded: Vec<Vec<u32>>, ops: Vec<Op>, output: Vec<u32>) -> ParallelSort {
    let devices_used = loaded.len();
    ParallelSort {
        devices_used,
        loaded,
        trace: NetworkTrace { kind, device_count: devices_used, ops },
        output: Permutation::from_vec_unchecked(output),
    }
}

/// A move in the sequential-stack machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Next input element onto `S_{k−1}`.
    Push,
    /// Pop `S_j`: onto `S_{j−1}`, or to the output when `j = 0`.
    Pop(usize),
}

/// State of `k` stacks in series.
#[derive(Debug, Clone)]
pub struct Machine<'a> {
    input: &'a [u32],
    cursor: usize,
    stacks: Vec<Vec<u32>>,
    output: Vec<u32>,
}

impl<'a> Machine<'a> {
    fn new(input: &'a [u32], k: usize) -> Self {
        Machine { input, cursor: 0, stacks: vec![Vec::new(); k], output: Vec::with_capacity(input.len()) }
    }

    /// Stack contents, bottom to top; index 0 is nearest the output.
    pub fn stacks(&self) -> &[Vec<u32>] {
        &self.stacks
    }

    /// Next unread input element.
    pub fn next_input(&self) -> Option<u32> {
        self.input.get(self.cursor).copied()
    }

    /// Elements emitted so far.
    pub fn output(&self) -> &[u32] {
        &self.output
    }

    /// The value a sorted output needs next.
    pub fn next_expected(&self) -> u32 {
        self.output.len() as u32 + 1
    }

    /// Top of stack `j`.
    pub fn top(&self, j: usize) -> Option<u32> {
        self.stacks.get(j).and_then(|s| s.last().copied())
    }

    fn apply(&mut self, mv: Move, step: usize, ops: &mut Vec<Op>) -> Result<()> {
        let k = self.stacks.len();
        match mv {
            Move::Push => {
                let x = self.next_input().ok_or(Error::IllegalMove { step, reason: "push with exhausted input" })?;
                self.cursor += 1;
                self.stacks[k - 1].push(x);
                ops.push(Op::Push(k - 1));
            }
            Move::Pop(j) => {
                if j >= k {
                    return Err(Error::IllegalMove { step, reason: "stack index out of range" });
                }
                let x = self.stacks[j].pop().ok_or(Error::IllegalMove { step, reason: "pop of empty stack" })?;
                ops.push(Op::Pop(j));
                if j == 0 {
                    self.output.push(x);
                } else {
                    self.stacks[j - 1].push(x);
                    ops.push(Op::Push(j - 1));
                }
            }
        }
        Ok(())
    }
}

/// Chooses the next move of a sequential-stack machine; `None` stops.
pub trait Strategy {
    /// Proposes a move for the current state.
    fn next_move(&mut self, machine: &Machine<'_>) -> Option<Move>;
}

/// Emit when possible, otherwise move an element down onto a larger top (or
/// an empty stack), otherwise read input.
///
/// With one stack this is the classic optimal stack sort: it succeeds on
/// exactly the 231-avoiding permutations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Greedy;

impl Strategy for Greedy {
    fn next_move(&mut self, m: &Machine<'_>) -> Option<Move> {
        if m.top(0) == Some(m.next_expected()) {
            return Some(Move::Pop(0));
        }
        for j in 1..m.stacks().len() {
            if let Some(x) = m.top(j) {
                if m.top(j - 1).is_none_or(|below| below > x) {
                    return Some(Move::Pop(j));
                }
            }
        }
        m.next_input().map(|_| Move::Push)
    }
}

/// Plays back a fixed list of moves.
#[derive(Debug, Clone)]
pub struct Scripted {
    moves: Vec<Move>,
    at: usize,
}

impl Scripted {
    /// Wraps a move list.
    pub fn new(moves: Vec<Move>) -> Self {
        Scripted { moves, at: 0 }
    }
}

impl Strategy for Scripted {
    fn next_move(&mut self, _: &Machine<'_>) -> Option<Move> {
        let mv = self.moves.get(self.at).copied();
        self.at += 1;
        mv
    }
}

/// Outcome of [`simulate_sequential_stacks`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialRun {
    /// The emitted sequence is `1..=n` in order.
    pub success: bool,
    /// Every push and pop, transfers included.
    pub trace: NetworkTrace,
    /// What was emitted.
    pub output: Vec<u32>,
}

/// Runs `strategy` on `k` stacks in series until it stops.
pub fn simulate_sequential_stacks<S: Strategy + ?Sized>(
    pi: &Permutation,
    k: usize,
    strategy: &mut S,
) -> Result<SequentialRun> {
    if k == 0 {
        return Err(invalid("need at least one stack"));
    }
    let n = pi.len();
    let mut machine = Machine::new(pi.values(), k);
    let mut ops = Vec::with_capacity(2 * k * n);
    let mut step = 0;
    while let Some(mv) = strategy.next_move(&machine) {
        machine.apply(mv, step, &mut ops)?;
        step += 1;
    }
    let success = machine.output.len() == n && machine.output.iter().enumerate().all(|(i, &x)| x as usize == i + 1);
    Ok(SequentialRun {
        success,
        trace: NetworkTrace { kind: NetworkKind::SequentialStacks, device_count: k, ops },
        output: machine.output,
    })
}

/// Caps for [`min_sequential_stacks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest input accepted.
    pub max_n: usize,
    /// Distinct machine states visited per `k` before giving up.
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_n: 10, max_states: 4_000_000 }
    }
}

/// Answer of [`min_sequential_stacks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinStacks {
    /// The smallest number of stacks in series that sorts the input.
    Found(usize),
    /// No `k ≤ k_max` works.
    ExceedsMax,
}

/// Smallest `k ≤ k_max` for which some move sequence sorts `pi` with `k`
/// stacks in series, by exhaustive search.
pub fn min_sequential_stacks(pi: &Permutation, k_max: usize) -> Result<MinStacks> {
    min_sequential_stacks_with(pi, k_max, SearchLimits::default())
}

/// [`min_sequential_stacks`] with explicit limits.
pub fn min_sequential_stacks_with(pi: &Permutation, k_max: usize, limits: SearchLimits) -> Result<MinStacks> {
    if k_max == 0 {
        return Err(invalid("k_max must be at least 1"));
    }
    for k in 1..=k_max {
        if find_sequential_sort(pi, k, limits)?.is_some() {
            return Ok(MinStacks::Found(k));
        }
    }
    Ok(MinStacks::ExceedsMax)
}

/// A move sequence sorting `pi` on `k` stacks in series, if one exists.
///
/// Depth-first search over machine states, memoised on
/// `(input cursor, stack contents)`; the output length follows from those.
/// Only pops of `S_0` that emit the next expected value are tried.
pub fn find_sequential_sort(pi: &Permutation, k: usize, limits: SearchLimits) -> Result<Option<Vec<Move>>> {
    if k == 0 {
        return Err(invalid("need at least one stack"));
    }
    if pi.len() > limits.max_n {
        return Err(Error::SearchBudgetExceeded { states: 0 });
    }
    let mut search = Search { n: pi.len(), seen: BTreeSet::new(), limits, path: Vec::new() };
    let mut machine = Machine::new(pi.values(), k);
    Ok(if search.dfs(&mut machine)? { Some(search.path) } else { None })
}

struct Search {
    n: usize,
    seen: BTreeSet<Vec<u32>>,
    limits: SearchLimits,
    path: Vec<Move>,
}

impl Search {
    fn key(m: &Machine<'_>) -> Vec<u32> {
        let mut key = Vec::with_capacity(1 + m.stacks.len() + m.input.len());
        key.push(m.cursor as u32);
        for s in &m.stacks {
            key.push(s.len() as u32);
            key.extend_from_slice(s);
        }
        key
    }

    fn dfs(&mut self, m: &mut Machine<'_>) -> Result<bool> {
        if m.output.len() == self.n {
            return Ok(true);
        }
        if !self.seen.insert(Self::key(m)) {
            return Ok(false);
        }
        if self.seen.len() > self.limits.max_states {
            return Err(Error::SearchBudgetExceeded { states: self.seen.len() });
        }
        let k = m.stacks.len();
        let mut candidates: Vec<Move> = Vec::with_capacity(k + 1);
        if m.top(0) == Some(m.next_expected()) {
            candidates.push(Move::Pop(0));
        }
        candidates.extend((1..k).filter(|&j| !m.stacks[j].is_empty()).map(Move::Pop));
        if m.next_input().is_some() {
            candidates.push(Move::Push);
        }
        for mv in candidates {
            let saved = m.clone();
            let mut scratch = Vec::new();
            m.apply(mv, self.path.len(), &mut scratch).expect("candidate moves are legal");
            self.path.push(mv);
            if self.dfs(m)? {
                return Ok(true);
            }
            self.path.pop();
            *m = saved;
        }
        Ok(false)
    }
}

/// Per-stack push/pop bits of a sequential run: push = 0, pop = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PushPopCode {
    /// Elements.
    pub n: usize,
    /// Stacks.
    pub k: usize,
    /// `k` blocks of `2n` bits, stack `S_0` first, each block in time order.
    pub bits: Vec<bool>,
}

impl fmt::Display for PushPopCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Encodes a complete sequential-stack trace as `2kn` bits.
pub fn encode_pushpop(trace: &NetworkTrace) -> Result<PushPopCode> {
    if trace.kind != NetworkKind::SequentialStacks {
        return Err(invalid("push/pop encoding needs a sequential-stack trace"));
    }
    let k = trace.device_count;
    if k == 0 {
        return Err(invalid("trace has no stacks"));
    }
    let counts = trace.op_counts();
    let n = counts[0].0;
    if counts.iter().any(|&(push, pop)| push != n || pop != n) {
        return Err(invalid("every stack must see exactly n pushes and n pops"));
    }
    let mut blocks: Vec<Vec<bool>> = vec![Vec::with_capacity(2 * n); k];
    for op in &trace.ops {
        match *op {
            Op::Push(d) => blocks[d].push(false),
            Op::Pop(d) => blocks[d].push(true),
        }
    }
    Ok(PushPopCode { n, k, bits: blocks.concat() })
}

/// Recovers the input permutation from its push/pop code.
///
/// Stack `S_0` emits `1, 2, …, n`; replaying its bits with placeholders gives
/// the order in which it received elements, which is the order `S_1` emitted
/// them, and so on up to `S_{k−1}`, whose arrival order is the input.
pub fn decode_pushpop(code: &PushPopCode) -> Result<Permutation> {
    let (n, k) = (code.n, code.k);
    if n == 0 || k == 0 || code.bits.len() != 2 * k * n {
        return Err(invalid("code length must be 2kn with n, k >= 1"));
    }
    let mut emitted: Vec<u32> = (1..=n as u32).collect();
    for block in code.bits.chunks(2 * n) {
        let mut received = vec![0u32; n];
        let mut pending: Vec<usize> = Vec::with_capacity(n);
        let (mut pushes, mut pops) = (0usize, 0usize);
        for &bit in block {
            if bit {
                let slot = pending.pop().ok_or_else(|| invalid("pop of empty stack in code"))?;
                received[slot] = emitted[pops];
                pops += 1;
            } else {
                if pushes == n {
                    return Err(invalid("more than n pushes on one stack"));
                }
                pending.push(pushes);
                pushes += 1;
            }
        }
        if pushes != n || pops != n {
            return Err(invalid("unbalanced stack block"));
        }
        emitted = received;
    }
    Permutation::new(emitted)
}
