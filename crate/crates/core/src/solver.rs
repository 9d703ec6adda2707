//! Branch-and-reduce search for a minimum-weight exact cover.
//!
//! Each search node picks an active element `x` of minimum degree `d` and
//! applies the first matching rule:
//!
//! 1. no active element left: the partial solution is a cover, keep it if it
//!    is strictly lighter than the best one so far;
//! 2. `d = 0`: `x` cannot be covered, dead end;
//! 3. `d = 1`: the only set containing `x` is forced;
//! 4. no `y ∈ partner(x)` lies in a set outside `neighbor(x)`: the only
//!    possible choice is a set of `neighbor(x)` equal to `partner(x)`;
//! 5. `d = 2`: branch on which of the two sets covers `x`;
//! 6. some `y ∈ partner(x)` has exactly one outside set `W'`: branch so that
//!    `W'` is decided together with a set of `neighbor(x)`;
//! 7. otherwise take `y` with the most outside sets and branch on including
//!    or excluding one set `Z` of `neighbor(x)` that contains `y`.
//!
//! Selecting a set removes its elements and every set meeting it; excluding a
//! set removes only that set. With pruning off the search tree has at most
//! `1.299^m` leaves for `m` sets.
//!
//! The search keeps its own stack of undo tokens instead of recursing, so
//! depth is bounded by `m` without depending on thread stack size.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::incidence::{ActiveView, Mark};
use crate::{normalize, Instance, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Cut nodes whose partial weight already reaches the best cover.
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { prune: true }
    }
}

/// Which rule a non-leaf node applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchKind {
    /// `d = 1`, the single neighbor is selected.
    Unary,
    /// All partners are private to `neighbor(x)`; a set equal to `partner(x)` is selected.
    Forced,
    /// `d = 2`, select one set or the other.
    TwoBranch,
    /// `degree_out(y) = 1` and one set of `neighbor(x)` misses `y`: select both or exclude both.
    Out1Pair,
    /// `degree_out(y) = 1` and every set of `neighbor(x)` contains `y`.
    Out1Full,
    /// Include or exclude one set.
    Generic,
}

impl BranchKind {
    pub const ALL: [BranchKind; 6] = [
        BranchKind::Unary,
        BranchKind::Forced,
        BranchKind::TwoBranch,
        BranchKind::Out1Pair,
        BranchKind::Out1Full,
        BranchKind::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BranchKind::Unary => "unary",
            BranchKind::Forced => "forced",
            BranchKind::TwoBranch => "two",
            BranchKind::Out1Pair => "out1-pair",
            BranchKind::Out1Full => "out1-full",
            BranchKind::Generic => "generic",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Search tree counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Nodes visited, pruned ones included.
    pub nodes: u64,
    /// Terminal nodes: completed covers plus dead ends. Pruned nodes are not leaves.
    pub leaves: u64,
    /// Leaves where the ground set was fully covered.
    pub cover_leaves: u64,
    /// Nodes cut by the weight bound.
    pub pruned: u64,
    pub max_depth: usize,
    histogram: [u64; 6],
}

impl SearchStats {
    pub fn count(&self, kind: BranchKind) -> u64 {
        self.histogram[kind.slot()]
    }

    pub fn histogram(&self) -> impl Iterator<Item = (BranchKind, u64)> + '_ {
        BranchKind::ALL.iter().map(move |&k| (k, self.count(k)))
    }
}

/// Snapshot of a [`SolveState`] that [`SolveState::rollback`] restores exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditToken {
    mark: Mark,
    partial_len: usize,
    partial_weight: f64,
}

/// Live search state: the active view, the partial solution and the best
/// cover found so far. Indices refer to the instance the state was built on.
#[derive(Debug, Clone)]
pub struct SolveState<'a> {
    view: ActiveView<'a>,
    partial: Vec<usize>,
    partial_weight: f64,
    best: Option<(Vec<usize>, f64)>,
}

impl<'a> SolveState<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        SolveState {
            view: ActiveView::new(instance),
            partial: Vec::new(),
            partial_weight: 0.0,
            best: None,
        }
    }

    pub fn view(&self) -> &ActiveView<'a> {
        &self.view
    }

    pub fn partial(&self) -> &[usize] {
        &self.partial
    }

    pub fn partial_weight(&self) -> f64 {
        self.partial_weight
    }

    /// Best cover so far, indices ascending.
    pub fn best(&self) -> Option<(&[usize], f64)> {
        self.best.as_ref().map(|(c, w)| (c.as_slice(), *w))
    }

    pub fn checkpoint(&self) -> EditToken {
        EditToken {
            mark: self.view.mark(),
            partial_len: self.partial.len(),
            partial_weight: self.partial_weight,
        }
    }

    /// Commits active set `s` to the partial solution.
    pub fn select_set(&mut self, s: usize) -> EditToken {
        let token = self.checkpoint();
        self.partial.push(s);
        self.partial_weight += self.view.instance().weight(s);
        self.view.cover_with(s);
        token
    }

    /// Bans the given active sets.
    pub fn exclude_sets(&mut self, sets: &[usize]) -> EditToken {
        let token = self.checkpoint();
        for &s in sets {
            self.view.remove_set(s);
        }
        token
    }

    pub fn rollback(&mut self, token: EditToken) {
        self.view.undo_to(token.mark);
        self.partial.truncate(token.partial_len);
        self.partial_weight = token.partial_weight;
    }

    /// Records the partial solution if it is a strictly lighter cover.
    fn offer_cover(&mut self) {
        let weight = self.view.instance().weight_of(&self.partial);
        if self.best.as_ref().is_none_or(|(_, w)| weight < *w) {
            let mut chosen = self.partial.clone();
            chosen.sort_unstable();
            self.best = Some((chosen, weight));
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Select(usize),
    /// Select both; the second may already be gone, in which case the child is a dead end.
    SelectPair(usize, usize),
    Exclude(usize),
    ExcludePair(usize, usize),
}

enum Step {
    Leaf,
    Single(Move),
    Branch(Move, Move),
}

struct Search<'a> {
    state: SolveState<'a>,
    stats: SearchStats,
    prune: bool,
    /// Relative margin covering the rounding gap between the running partial
    /// sum and the ascending-order sum of any completion.
    prune_slack: f64,
    degree_in: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance, options: SolveOptions) -> Self {
        let terms = instance.n().min(instance.m()) as f64 + 1.0;
        Search {
            state: SolveState::new(instance),
            stats: SearchStats::default(),
            prune: options.prune,
            prune_slack: 2.0 * terms * f64::EPSILON,
            degree_in: alloc::vec![0; instance.n()],
        }
    }

    fn run(&mut self) {
        let mut stack: Vec<(EditToken, Option<Move>)> = Vec::new();
        loop {
            self.stats.max_depth = self.stats.max_depth.max(stack.len());
            match self.expand() {
                Step::Single(mv) => {
                    stack.push((self.state.checkpoint(), None));
                    self.apply(mv);
                }
                Step::Branch(first, second) => {
                    stack.push((self.state.checkpoint(), Some(second)));
                    self.apply(first);
                }
                Step::Leaf => loop {
                    let Some((token, pending)) = stack.last_mut() else {
                        return;
                    };
                    let token = *token;
                    let pending = pending.take();
                    self.state.rollback(token);
                    if let Some(mv) = pending {
                        self.apply(mv);
                        break;
                    }
                    stack.pop();
                },
            }
        }
    }

    fn apply(&mut self, mv: Move) {
        match mv {
            Move::Select(s) => {
                self.state.select_set(s);
            }
            Move::SelectPair(a, b) => {
                self.state.select_set(a);
                if self.state.view.is_set_active(b) {
                    self.state.select_set(b);
                }
            }
            Move::Exclude(s) => {
                self.state.exclude_sets(&[s]);
            }
            Move::ExcludePair(a, b) => {
                self.state.exclude_sets(&[a, b]);
            }
        }
    }

    fn record(&mut self, kind: BranchKind) {
        self.stats.histogram[kind.slot()] += 1;
    }

    fn expand(&mut self) -> Step {
        self.stats.nodes += 1;

        if self.prune {
            if let Some((_, best)) = self.state.best() {
                if self.state.partial_weight * (1.0 - self.prune_slack) >= best {
                    self.stats.pruned += 1;
                    return Step::Leaf;
                }
            }
        }

        let view = &self.state.view;
        if !view.has_active_elements() {
            self.stats.leaves += 1;
            self.stats.cover_leaves += 1;
            self.state.offer_cover();
            return Step::Leaf;
        }

        let (x, d) = view
            .min_degree_element()
            .expect("active ground set is nonempty");
        if d == 0 {
            self.stats.leaves += 1;
            return Step::Leaf;
        }
        let nbx = view.neighbor_unchecked(x).clone();
        if d == 1 {
            self.record(BranchKind::Unary);
            return Step::Single(Move::Select(nbx.minimum().unwrap()));
        }

        // degree_out(y) = degree(y) - |{S in neighbor(x) : y in S}|
        let partner = view.partner_of(x);
        for s in nbx.ones() {
            for &e in view.members(s) {
                self.degree_in[e] += 1;
            }
        }
        let mut first_out1: Option<usize> = None;
        let mut widest: Option<(usize, usize)> = None;
        for y in partner.ones() {
            let out = view.degree_unchecked(y) - self.degree_in[y];
            if out == 1 && first_out1.is_none() {
                first_out1 = Some(y);
            }
            if out > 0 && widest.is_none_or(|(_, o)| out > o) {
                widest = Some((y, out));
            }
        }
        for y in partner.ones() {
            self.degree_in[y] = 0;
        }

        let Some((widest_y, widest_out)) = widest else {
            return self.forced_step(&nbx, &partner);
        };

        if d == 2 {
            debug_assert!(
                view.active_elements().ones().all(|e| view.degree_unchecked(e) >= 2),
                "two-branch with an element of degree < 2"
            );
            self.record(BranchKind::TwoBranch);
            let mut it = nbx.ones();
            let (s1, s2) = (it.next().unwrap(), it.next().unwrap());
            return Step::Branch(Move::Select(s1), Move::Select(s2));
        }

        debug_assert!(d >= 3 && widest_out > 0);
        if let Some(y) = first_out1 {
            let nby = view.neighbor_unchecked(y);
            let w_prime = nby
                .ones()
                .find(|&s| !nbx.contains(s))
                .expect("degree_out(y) = 1");
            let mut missing = nbx.ones().filter(|&s| !nby.contains(s));
            if let Some(w) = missing.next() {
                debug_assert!(missing.next().is_none(), "|neighbor(x) - neighbor(y)| must be 1");
                self.record(BranchKind::Out1Pair);
                Step::Branch(Move::SelectPair(w_prime, w), Move::ExcludePair(w_prime, w))
            } else {
                let w = nbx.minimum().unwrap();
                self.record(BranchKind::Out1Full);
                Step::Branch(Move::Select(w), Move::ExcludePair(w_prime, w))
            }
        } else {
            debug_assert!(widest_out >= 2, "generic branch needs degree_out(y) >= 2");
            let nby = view.neighbor_unchecked(widest_y);
            let z = nbx
                .ones()
                .find(|&s| nby.contains(s))
                .expect("y lies in some set of neighbor(x)");
            self.record(BranchKind::Generic);
            Step::Branch(Move::Select(z), Move::Exclude(z))
        }
    }

    /// Every partner of `x` is covered only through `neighbor(x)`, and exactly
    /// one of those sets can be chosen: it must be `partner(x)` itself.
    fn forced_step(&mut self, nbx: &FixedBitSet, partner: &FixedBitSet) -> Step {
        let inst = self.state.view.instance();
        let mut pick: Option<usize> = None;
        for s in nbx.ones() {
            if inst.set(s) == partner && pick.is_none_or(|p| inst.weight(s) < inst.weight(p)) {
                pick = Some(s);
            }
        }
        match pick {
            Some(s) => {
                self.record(BranchKind::Forced);
                Step::Single(Move::Select(s))
            }
            None => {
                self.stats.leaves += 1;
                Step::Leaf
            }
        }
    }
}

/// Solves an instance that is already normalized. Indices in the outcome
/// refer to `instance` directly.
pub fn solve_normalized(instance: &Instance, options: SolveOptions) -> (Outcome, SearchStats) {
    debug_assert!(instance.is_normalized(), "solve_normalized needs a normalized instance");
    let mut search = Search::new(instance, options);
    search.run();
    let outcome = match search.state.best {
        Some((chosen, weight)) => Outcome::Cover { chosen, weight },
        None => Outcome::NoSolution,
    };
    (outcome, search.stats)
}

/// Finds a minimum-weight exact cover of `instance`.
///
/// The instance is normalized first; the reported indices refer to the sets
/// of `instance` as given, and the weight is their ascending-order sum.
pub fn solve(instance: &Instance, options: SolveOptions) -> (Outcome, SearchStats) {
    let (reduced, map) = normalize(instance);
    let (outcome, stats) = solve_normalized(&reduced, options);
    let outcome = match outcome {
        Outcome::Cover { chosen, .. } => {
            let chosen: Vec<usize> = chosen.iter().map(|&i| map[i]).collect();
            let weight = instance.weight_of(&chosen);
            Outcome::Cover { chosen, weight }
        }
        Outcome::NoSolution => Outcome::NoSolution,
    };
    (outcome, stats)
}
