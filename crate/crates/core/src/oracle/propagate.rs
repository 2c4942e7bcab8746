//! Worklist propagation of a partial crossing function `phi: K x H -> H x K`,
//! `phi(k, h) = (h', k')` with `k h = h' k'`.
//!
//! Deductions used (all sound in any exact product):
//!
//! * row rule: `phi(k, h g) = (p u, v)` where `(p, q) = phi(k, h)` and
//!   `(u, v) = phi(q, g)`;
//! * column rule: `phi(g k, h) = (p, q v)` where `(u, v) = phi(k, h)` and
//!   `(p, q) = phi(g, u)`;
//! * inverse rule: `phi(q^-1, p^-1) = (h^-1, k^-1)` where `(p, q) = phi(k, h)`.
//!
//! The row and column rules are applied with `g` ranging over the generators
//! of `H` and `K` respectively. `phi` is injective in an exact product, so a
//! value produced for two different cells is a contradiction as well.

use super::{CrossingTable, KnitFactors};

const NONE: u32 = u32::MAX;

/// Worklist order; the fixpoint does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Lifo,
    Fifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Conflict;

#[derive(Debug)]
pub(crate) struct Propagator<'a> {
    f: &'a KnitFactors,
    /// `cells[k * |H| + h] = p * |K| + q` or `NONE`.
    cells: Vec<u32>,
    /// Cell holding each value, or `NONE`.
    owner: Vec<u32>,
    // Intrusive lists of assigned cells grouped by the K-part / H-part of their value.
    head_by_k: Vec<u32>,
    next_by_k: Vec<u32>,
    head_by_h: Vec<u32>,
    next_by_h: Vec<u32>,
    work: Vec<u32>,
    work_head: usize,
    known: usize,
    schedule: Schedule,
}

impl Clone for Propagator<'_> {
    fn clone(&self) -> Self {
        Propagator {
            f: self.f,
            cells: self.cells.clone(),
            owner: self.owner.clone(),
            head_by_k: self.head_by_k.clone(),
            next_by_k: self.next_by_k.clone(),
            head_by_h: self.head_by_h.clone(),
            next_by_h: self.next_by_h.clone(),
            work: self.work.clone(),
            work_head: self.work_head,
            known: self.known,
            schedule: self.schedule,
        }
    }

    fn clone_from(&mut self, src: &Self) {
        self.f = src.f;
        self.cells.clone_from(&src.cells);
        self.owner.clone_from(&src.owner);
        self.head_by_k.clone_from(&src.head_by_k);
        self.next_by_k.clone_from(&src.next_by_k);
        self.head_by_h.clone_from(&src.head_by_h);
        self.next_by_h.clone_from(&src.next_by_h);
        self.work.clone_from(&src.work);
        self.work_head = src.work_head;
        self.known = src.known;
        self.schedule = src.schedule;
    }
}

impl<'a> Propagator<'a> {
    /// Fresh propagator holding only `phi(1, h) = (h, 1)` and
    /// `phi(k, 1) = (1, k)`, already propagated.
    pub(crate) fn new(f: &'a KnitFactors, schedule: Schedule) -> Self {
        let (hn, kn) = (f.h.order(), f.k.order());
        let size = hn * kn;
        let mut p = Propagator {
            f,
            cells: vec![NONE; size],
            owner: vec![NONE; size],
            head_by_k: vec![NONE; kn],
            next_by_k: vec![NONE; size],
            head_by_h: vec![NONE; hn],
            next_by_h: vec![NONE; size],
            work: Vec::with_capacity(size),
            work_head: 0,
            known: 0,
            schedule,
        };
        let (e_h, e_k) = (f.h.identity(), f.k.identity());
        for h in 0..hn {
            p.assign(e_k, h, h, e_k).expect("identity row is consistent");
        }
        for k in 0..kn {
            p.assign(k, e_h, e_h, k).expect("identity column is consistent");
        }
        p.run().expect("identity cells are consistent");
        p
    }

    pub(crate) fn factors(&self) -> &'a KnitFactors {
        self.f
    }

    #[inline]
    fn cell(&self, k: usize, h: usize) -> usize {
        k * self.f.h.order() + h
    }

    #[inline]
    fn value(&self, p: usize, q: usize) -> u32 {
        (p * self.f.k.order() + q) as u32
    }

    #[inline]
    fn split(&self, v: u32) -> (usize, usize) {
        let kn = self.f.k.order();
        (v as usize / kn, v as usize % kn)
    }

    pub(crate) fn get(&self, k: usize, h: usize) -> Option<(usize, usize)> {
        match self.cells[self.cell(k, h)] {
            NONE => None,
            v => Some(self.split(v)),
        }
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.known == self.cells.len()
    }

    pub(crate) fn first_unknown(&self) -> Option<(usize, usize)> {
        let hn = self.f.h.order();
        self.cells.iter().position(|&v| v == NONE).map(|c| (c / hn, c % hn))
    }

    pub(crate) fn value_is_free(&self, p: usize, q: usize) -> bool {
        self.owner[self.value(p, q) as usize] == NONE
    }

    /// Records `phi(k, h) = (p, q)` and queues it for propagation.
    pub(crate) fn assign(&mut self, k: usize, h: usize, p: usize, q: usize) -> Result<(), Conflict> {
        let c = self.cell(k, h);
        let v = self.value(p, q);
        match self.cells[c] {
            NONE => {}
            existing if existing == v => return Ok(()),
            _ => return Err(Conflict),
        }
        if self.owner[v as usize] != NONE {
            return Err(Conflict);
        }
        self.cells[c] = v;
        self.owner[v as usize] = c as u32;
        self.next_by_k[c] = self.head_by_k[q];
        self.head_by_k[q] = c as u32;
        self.next_by_h[c] = self.head_by_h[p];
        self.head_by_h[p] = c as u32;
        self.known += 1;
        self.work.push(c as u32);
        Ok(())
    }

    fn next_work(&mut self) -> Option<usize> {
        match self.schedule {
            Schedule::Lifo => {
                if self.work.len() > self.work_head {
                    self.work.pop().map(|c| c as usize)
                } else {
                    None
                }
            }
            Schedule::Fifo => {
                let c = self.work.get(self.work_head).copied()?;
                self.work_head += 1;
                if self.work_head == self.work.len() {
                    self.work.clear();
                    self.work_head = 0;
                }
                Some(c as usize)
            }
        }
    }

    /// Applies the deduction rules until nothing new follows.
    pub(crate) fn run(&mut self) -> Result<(), Conflict> {
        let f = self.f;
        let (hgrp, kgrp) = (&f.h, &f.k);
        let hn = hgrp.order();
        while let Some(c) = self.next_work() {
            let (k, h) = (c / hn, c % hn);
            let (p, q) = self.split(self.cells[c]);

            for &g in &f.h_gens {
                if let Some((u, v)) = self.get(q, g) {
                    self.assign(k, hgrp.mul(h, g), hgrp.mul(p, u), v)?;
                }
            }
            if f.h_gens.contains(&h) {
                // cells (k', h') with phi(k', h') = (p', k) extend to (k', h' h)
                let mut cur = self.head_by_k[k];
                while cur != NONE {
                    let nxt = self.next_by_k[cur as usize];
                    let (k2, h2) = (cur as usize / hn, cur as usize % hn);
                    let (p2, _) = self.split(self.cells[cur as usize]);
                    self.assign(k2, hgrp.mul(h2, h), hgrp.mul(p2, p), q)?;
                    cur = nxt;
                }
            }

            for &g in &f.k_gens {
                if let Some((p2, q2)) = self.get(g, p) {
                    self.assign(kgrp.mul(g, k), h, p2, kgrp.mul(q2, q))?;
                }
            }
            if f.k_gens.contains(&k) {
                // cells (k2, h2) with phi(k2, h2) = (h, v2) extend to (k k2, h2)
                let mut cur = self.head_by_h[h];
                while cur != NONE {
                    let nxt = self.next_by_h[cur as usize];
                    let (k2, h2) = (cur as usize / hn, cur as usize % hn);
                    let (_, v2) = self.split(self.cells[cur as usize]);
                    self.assign(kgrp.mul(k, k2), h2, p, kgrp.mul(q, v2))?;
                    cur = nxt;
                }
            }

            self.assign(kgrp.inv(q), hgrp.inv(p), hgrp.inv(h), kgrp.inv(k))?;
        }
        Ok(())
    }

    pub(crate) fn to_table(&self) -> CrossingTable {
        debug_assert!(self.is_complete());
        CrossingTable {
            h_order: self.f.h.order(),
            k_order: self.f.k.order(),
            cells: self.cells.clone(),
        }
    }
}
