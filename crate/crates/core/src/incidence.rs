//! Element/set incidence over the active part of an instance.
//!
//! The instance is read as a bipartite graph between elements and sets. For
//! an active element `x`:
//!
//! - `neighbor(x)` is the set of active sets containing `x`, `degree(x)` its size;
//! - `partner(x)` is the union of the sets in `neighbor(x)`;
//! - for `y` in `partner(x)`, `neighbor_in(y) = neighbor(y) ∩ neighbor(x)` and
//!   `neighbor_out(y) = neighbor(y) − neighbor(x)`.
//!
//! Removals are recorded in a journal and undone in reverse order, so the
//! search never copies the view.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::{Error, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Edit {
    Set(usize),
    Element(usize),
}

/// Journal position; pass back to [`ActiveView::undo_to`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark(usize);

/// Result of [`ActiveView::degree_in_out`].
#[derive(Debug, Clone, PartialEq)]
pub struct InOut {
    pub degree_in: usize,
    pub degree_out: usize,
    pub out_sets: FixedBitSet,
}

#[derive(Debug, Clone)]
pub struct ActiveView<'a> {
    instance: &'a Instance,
    members: Vec<Vec<usize>>,
    active_elements: FixedBitSet,
    active_sets: FixedBitSet,
    element_to_sets: Vec<FixedBitSet>,
    degree: Vec<usize>,
    journal: Vec<Edit>,
}

impl<'a> ActiveView<'a> {
    /// A view with every element and every set active.
    pub fn new(instance: &'a Instance) -> Self {
        let (n, m) = (instance.n(), instance.m());
        let members: Vec<Vec<usize>> = instance.sets().iter().map(|s| s.ones().collect()).collect();
        let mut element_to_sets = alloc::vec![FixedBitSet::with_capacity(m); n];
        let mut degree = alloc::vec![0; n];
        for (i, elems) in members.iter().enumerate() {
            for &e in elems {
                element_to_sets[e].insert(i);
                degree[e] += 1;
            }
        }
        let mut active_elements = FixedBitSet::with_capacity(n);
        active_elements.insert_range(..);
        let mut active_sets = FixedBitSet::with_capacity(m);
        active_sets.insert_range(..);
        ActiveView {
            instance,
            members,
            active_elements,
            active_sets,
            element_to_sets,
            degree,
            journal: Vec::new(),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn active_elements(&self) -> &FixedBitSet {
        &self.active_elements
    }

    pub fn active_sets(&self) -> &FixedBitSet {
        &self.active_sets
    }

    /// Elements of set `i`, ascending.
    pub fn members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    pub fn is_element_active(&self, x: usize) -> bool {
        self.active_elements.contains(x)
    }

    pub fn is_set_active(&self, i: usize) -> bool {
        self.active_sets.contains(i)
    }

    pub fn has_active_elements(&self) -> bool {
        !self.active_elements.is_clear()
    }

    fn check_active(&self, x: usize) -> Result<(), Error> {
        if self.is_element_active(x) {
            Ok(())
        } else {
            Err(Error::InactiveElement(x))
        }
    }

    /// Active sets containing `x`.
    pub fn neighbor(&self, x: usize) -> Result<&FixedBitSet, Error> {
        self.check_active(x)?;
        Ok(&self.element_to_sets[x])
    }

    pub fn degree(&self, x: usize) -> Result<usize, Error> {
        self.check_active(x)?;
        Ok(self.degree[x])
    }

    /// Union of the active sets containing `x`.
    pub fn partner(&self, x: usize) -> Result<FixedBitSet, Error> {
        self.check_active(x)?;
        Ok(self.partner_of(x))
    }

    pub(crate) fn partner_of(&self, x: usize) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.instance.n());
        for s in self.element_to_sets[x].ones() {
            acc.union_with(self.instance.set(s));
        }
        acc
    }

    /// Splits `neighbor(y)` relative to `neighbor(x)`.
    pub fn degree_in_out(&self, x: usize, y: usize) -> Result<InOut, Error> {
        self.check_active(x)?;
        if !self.element_to_sets[x].ones().any(|s| self.instance.set(s).contains(y)) {
            return Err(Error::NotPartner { x, y });
        }
        let mut out_sets = self.element_to_sets[y].clone();
        out_sets.difference_with(&self.element_to_sets[x]);
        let degree_out = out_sets.count_ones(..);
        Ok(InOut {
            degree_in: self.degree[y] - degree_out,
            degree_out,
            out_sets,
        })
    }

    /// Active element of minimum degree, lowest id on ties.
    pub fn min_degree_element(&self) -> Result<(usize, usize), Error> {
        let mut best: Option<(usize, usize)> = None;
        for x in self.active_elements.ones() {
            let d = self.degree[x];
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((x, d));
                if d == 0 {
                    break;
                }
            }
        }
        best.ok_or(Error::EmptyGroundSet)
    }

    pub(crate) fn degree_unchecked(&self, x: usize) -> usize {
        self.degree[x]
    }

    pub(crate) fn neighbor_unchecked(&self, x: usize) -> &FixedBitSet {
        &self.element_to_sets[x]
    }

    pub fn mark(&self) -> Mark {
        Mark(self.journal.len())
    }

    /// Deactivates set `i` and drops it from the incidence of its elements.
    pub fn remove_set(&mut self, i: usize) {
        debug_assert!(self.active_sets.contains(i), "set {i} is not active");
        for &e in &self.members[i] {
            self.element_to_sets[e].set(i, false);
            self.degree[e] -= 1;
        }
        self.active_sets.set(i, false);
        self.journal.push(Edit::Set(i));
    }

    /// Deactivates element `x`. Callers remove the sets containing `x` first.
    pub fn remove_element(&mut self, x: usize) {
        debug_assert!(self.active_elements.contains(x), "element {x} is not active");
        debug_assert_eq!(self.degree[x], 0, "element {x} still has active sets");
        self.active_elements.set(x, false);
        self.journal.push(Edit::Element(x));
    }

    /// Removes every element of set `s` and every active set meeting `s`,
    /// `s` included.
    pub fn cover_with(&mut self, s: usize) {
        debug_assert!(self.active_sets.contains(s), "set {s} is not active");
        for k in 0..self.members[s].len() {
            let e = self.members[s][k];
            while let Some(t) = self.element_to_sets[e].minimum() {
                self.remove_set(t);
            }
            self.remove_element(e);
        }
    }

    /// Reverts every edit made after `mark`.
    pub fn undo_to(&mut self, mark: Mark) {
        while self.journal.len() > mark.0 {
            match self.journal.pop() {
                Some(Edit::Set(i)) => {
                    for &e in &self.members[i] {
                        self.element_to_sets[e].insert(i);
                        self.degree[e] += 1;
                    }
                    self.active_sets.insert(i);
                }
                Some(Edit::Element(x)) => self.active_elements.insert(x),
                None => unreachable!(),
            }
        }
    }

    /// Incidence recomputed from scratch, for consistency checks.
    pub fn rebuilt_incidence(&self) -> Vec<FixedBitSet> {
        let m = self.instance.m();
        (0..self.instance.n())
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(m);
                if self.active_elements.contains(x) {
                    row.extend(self.active_sets.ones().filter(|&i| self.instance.set(i).contains(x)));
                }
                row
            })
            .collect()
    }

    /// Incidence rows as currently maintained; rows of inactive elements are
    /// reported empty.
    pub fn incidence(&self) -> Vec<FixedBitSet> {
        (0..self.instance.n())
            .map(|x| {
                if self.active_elements.contains(x) {
                    self.element_to_sets[x].clone()
                } else {
                    FixedBitSet::with_capacity(self.instance.m())
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::i0;
    use alloc::vec;

    fn bits(m: usize, ones: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(m);
        b.extend(ones.iter().copied());
        b
    }

    #[test]
    fn neighbor_examples() {
        let inst = i0();
        let mut view = ActiveView::new(&inst);
        assert_eq!(view.neighbor(1).unwrap(), &bits(4, &[0, 1]));
        assert_eq!(view.neighbor(0).unwrap(), &bits(4, &[0, 3]));
        view.remove_set(2);
        assert_eq!(view.neighbor(2).unwrap(), &bits(4, &[1]));
        assert_eq!(view.degree(2).unwrap(), 1);
    }

    #[test]
    fn partner_examples() {
        let inst = i0();
        let mut view = ActiveView::new(&inst);
        assert_eq!(view.partner(1).unwrap(), bits(3, &[0, 1, 2]));
        assert_eq!(view.partner(2).unwrap(), bits(3, &[1, 2]));
        view.remove_set(3);
        // degree(0) = 1: partner is the single neighbor
        assert_eq!(view.partner(0).unwrap(), bits(3, &[0, 1]));
    }

    #[test]
    fn degree_in_out_examples() {
        let inst = i0();
        let view = ActiveView::new(&inst);
        let io = view.degree_in_out(1, 2).unwrap();
        assert_eq!((io.degree_in, io.degree_out), (1, 1));
        assert_eq!(io.out_sets, bits(4, &[2]));
        let io = view.degree_in_out(1, 0).unwrap();
        assert_eq!((io.degree_in, io.degree_out), (1, 1));
        assert_eq!(io.out_sets, bits(4, &[3]));
        for x in 0..3 {
            assert_eq!(view.degree_in_out(x, x).unwrap().degree_out, 0);
        }
        // 0 and 2 share no set
        assert_eq!(view.degree_in_out(0, 2), Err(Error::NotPartner { x: 0, y: 2 }));
    }

    #[test]
    fn min_degree_examples() {
        let inst = i0();
        let mut view = ActiveView::new(&inst);
        assert_eq!(view.min_degree_element(), Ok((0, 2)));
        view.remove_set(3);
        assert_eq!(view.min_degree_element(), Ok((0, 1)));

        let lonely = Instance::new(3, &[vec![0, 1]], vec![1.0]).unwrap();
        assert_eq!(ActiveView::new(&lonely).min_degree_element(), Ok((2, 0)));

        let empty = Instance::new(0, &[] as &[Vec<usize>], vec![]).unwrap();
        assert_eq!(ActiveView::new(&empty).min_degree_element(), Err(Error::EmptyGroundSet));
    }

    #[test]
    fn inactive_queries_are_usage_errors() {
        let inst = i0();
        let mut view = ActiveView::new(&inst);
        view.cover_with(0);
        assert_eq!(view.neighbor(0), Err(Error::InactiveElement(0)));
        assert_eq!(view.partner(1), Err(Error::InactiveElement(1)));
        assert!(view.degree_in_out(0, 2).is_err());
    }

    #[test]
    fn cover_with_and_undo() {
        let inst = i0();
        let mut view = ActiveView::new(&inst);
        let before = view.incidence();
        let mark = view.mark();
        view.cover_with(0);
        assert_eq!(view.active_elements(), &bits(3, &[2]));
        assert_eq!(view.active_sets(), &bits(4, &[2]));
        assert_eq!(view.incidence(), view.rebuilt_incidence());
        view.undo_to(mark);
        assert_eq!(view.active_elements(), &bits(3, &[0, 1, 2]));
        assert_eq!(view.active_sets(), &bits(4, &[0, 1, 2, 3]));
        assert_eq!(view.incidence(), before);
    }
}
