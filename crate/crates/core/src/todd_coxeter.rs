//! Todd–Coxeter coset enumeration, HLT style.
//!
//! The enumerator traces every relator from every live coset, filling
//! undefined entries with new cosets and merging cosets on coincidences,
//! until the table closes or the coset cap is hit. On a cap hit it runs a
//! lookahead pass (deduction-only scans, then compaction) before giving
//! up. Coset numbering is deterministic: first-undefined entry in
//! (coset, letter) order, smallest letter first.
//!
//! `Overflow` always means "undecided", never a group-theoretic
//! conclusion.

use alloc::vec;
use alloc::vec::Vec;

use crate::presentation::Presentation;
use crate::snf::abelianize;
use crate::word::{Letter, Word};

const UNDEF: u32 = u32::MAX;

/// Outcome of an enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetTableStatus {
    /// The table closed; the value is the subgroup index `[G : H]`.
    Complete(usize),
    /// The cap was exhausted before the table closed.
    Overflow(usize),
}

/// A closed (or abandoned) coset table. For a `Complete` table the rows
/// are compacted to live cosets, every entry is defined, the action is
/// consistent, and every relator traces back to its starting coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    status: CosetTableStatus,
    ngens: usize,
    /// Live rows, one per coset; column `2g` is generator `g`, column
    /// `2g+1` its inverse. Empty unless `Complete`.
    rows: Vec<Vec<u32>>,
    /// Total cosets defined over the run, merges included.
    defined: usize,
}

impl CosetTable {
    pub fn status(&self) -> &CosetTableStatus {
        &self.status
    }

    pub fn index(&self) -> Option<usize> {
        match self.status {
            CosetTableStatus::Complete(n) => Some(n),
            CosetTableStatus::Overflow(_) => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.status, CosetTableStatus::Complete(_))
    }

    pub fn cosets_defined(&self) -> usize {
        self.defined
    }

    /// Coset reached from `start` under `w`, if every step is defined.
    pub fn trace(&self, start: usize, w: &Word) -> Option<usize> {
        let mut c = start;
        for &l in w.letters() {
            let col = column(l);
            let next = *self.rows.get(c)?.get(col)?;
            if next == UNDEF {
                return None;
            }
            c = next as usize;
        }
        Some(c)
    }

    /// Closure check: total action, `g` then `g⁻¹` returns to start, and
    /// every relator traced from every coset comes back.
    pub fn verify_closed(&self, p: &Presentation) -> bool {
        let n = self.rows.len();
        for (c, row) in self.rows.iter().enumerate() {
            for g in 0..self.ngens {
                let fwd = row[2 * g];
                if fwd == UNDEF || fwd as usize >= n {
                    return false;
                }
                if self.rows[fwd as usize][2 * g + 1] != c as u32 {
                    return false;
                }
            }
        }
        for c in 0..n {
            for r in p.relators() {
                if self.trace(c, r) != Some(c) {
                    return false;
                }
            }
        }
        true
    }
}

fn column(l: Letter) -> usize {
    2 * l.gen_index() + l.is_inverse() as usize
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<(u32, u32)>,
    cap: usize,
    defined: usize,
}

impl Enumerator {
    fn new(ngens: usize, cap: usize) -> Self {
        let mut e = Enumerator {
            width: 2 * ngens,
            table: Vec::new(),
            parent: Vec::new(),
            queue: Vec::new(),
            cap,
            defined: 0,
        };
        e.define();
        e
    }

    fn nrows(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(core::iter::repeat_n(UNDEF, self.width));
        self.defined += 1;
        id
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let p = self.parent[c as usize];
            self.parent[c as usize] = self.parent[p as usize];
            c = self.parent[c as usize];
        }
        c
    }

    fn get(&mut self, c: u32, col: usize) -> u32 {
        let raw = self.table[c as usize * self.width + col];
        if raw == UNDEF {
            UNDEF
        } else {
            self.find(raw)
        }
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.width + col] = v;
    }

    /// Records `a · letter(col) = b` in both directions.
    fn deduce(&mut self, a: u32, col: usize, b: u32) {
        let back = col ^ 1;
        let ex = self.get(a, col);
        if ex == UNDEF {
            self.set(a, col, b);
        } else if ex != b {
            self.queue.push((ex, b));
        }
        let ex = self.get(b, back);
        if ex == UNDEF {
            self.set(b, back, a);
        } else if ex != a {
            self.queue.push((ex, a));
        }
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.parent[kill as usize] = keep;
            for col in 0..self.width {
                let v = self.table[kill as usize * self.width + col];
                if v == UNDEF {
                    continue;
                }
                let v = self.find(v);
                let ex = self.get(keep, col);
                if ex == UNDEF {
                    self.set(keep, col, v);
                } else if ex != v {
                    self.queue.push((ex, v));
                }
            }
        }
    }

    /// One relator (or subgroup generator) scan from `start`. With `fill`
    /// it defines new cosets to close the cycle; without, it only applies
    /// deductions and coincidences. Returns true if anything changed.
    fn scan(&mut self, start: u32, word: &[Letter], fill: bool) -> bool {
        let mut changed = false;
        let mut f = self.find(start);
        let mut b = f;
        let mut i = 0usize;
        let mut j = word.len(); // letters i..j remain to be traced
        loop {
            // Forward over defined entries.
            while i < j {
                let next = self.get(f, column(word[i]));
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.queue.push((f, b));
                    self.process_coincidences();
                    changed = true;
                }
                return changed;
            }
            // Backward over defined entries.
            while j > i {
                let prev = self.get(b, column(word[j - 1]) ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if i == j {
                // Closed from both ends while walking backward.
                if f != b {
                    self.queue.push((f, b));
                    self.process_coincidences();
                    changed = true;
                }
                return changed;
            }
            if j - i == 1 {
                // One gap: a forced deduction.
                self.deduce(f, column(word[i]), b);
                self.process_coincidences();
                return true;
            }
            if !fill {
                return changed;
            }
            if self.nrows() >= self.cap {
                return changed;
            }
            let fresh = self.define();
            self.deduce(f, column(word[i]), fresh);
            self.process_coincidences();
            changed = true;
            f = self.find(f);
            b = self.find(b);
            // Re-resolve after possible merges and continue the scan.
        }
    }

    fn live_cosets(&mut self) -> Vec<u32> {
        (0..self.nrows() as u32)
            .filter(|&c| self.parent[c as usize] == c)
            .collect()
    }

    /// Drops dead rows and renumbers; returns false if nothing was freed.
    fn compact(&mut self) -> bool {
        let live = self.live_cosets();
        if live.len() == self.nrows() {
            return false;
        }
        let mut remap = vec![UNDEF; self.nrows()];
        for (new, &old) in live.iter().enumerate() {
            remap[old as usize] = new as u32;
        }
        let mut table = Vec::with_capacity(live.len() * self.width);
        for &old in &live {
            for col in 0..self.width {
                let v = self.get(old, col);
                table.push(if v == UNDEF { UNDEF } else { remap[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..live.len() as u32).collect();
        true
    }
}

/// Enumerates cosets of the subgroup generated by `subgroup_gens` in the
/// group presented by `p`, giving up once the table would exceed
/// `coset_cap` rows and lookahead recovers nothing.
///
/// On `Complete(1)` over the trivial subgroup the abelianization of `p`
/// is cross-checked; a mismatch would be an engine bug and panics.
pub fn todd_coxeter(p: &Presentation, subgroup_gens: &[Word], coset_cap: usize) -> CosetTable {
    assert!(coset_cap >= 1, "coset cap must be at least 1");
    let ngens = p.ngens();
    let mut e = Enumerator::new(ngens, coset_cap);

    let relators: Vec<Vec<Letter>> = p.relators().iter().map(|r| r.letters().to_vec()).collect();
    let subgens: Vec<Vec<Letter>> = subgroup_gens
        .iter()
        .map(|w| w.reduce().letters().to_vec())
        .collect();

    loop {
        // One full HLT pass: subgroup generators at the base coset, then
        // every relator from every live coset, filling as we go.
        let mut changed = false;
        for w in &subgens {
            let base = e.find(0);
            changed |= e.scan(base, w, true);
        }
        for c in e.live_cosets() {
            if e.parent[c as usize] != c {
                continue; // merged away during this pass
            }
            for r in &relators {
                let c = e.find(c);
                changed |= e.scan(c, r, true);
            }
        }

        // Closed iff a quiet pass left no undefined entries.
        let live = e.live_cosets();
        let full = live
            .iter()
            .all(|&c| (0..e.width).all(|col| e.get(c, col) != UNDEF));
        if !changed && full {
            break;
        }
        if !changed && !full {
            // Blocked: every remaining hole needs a definition past the cap.
            // Lookahead: deduction-only scans, then compaction.
            let mut gained = false;
            for c in e.live_cosets() {
                if e.parent[c as usize] != c {
                    continue;
                }
                for r in &relators {
                    let c = e.find(c);
                    gained |= e.scan(c, r, false);
                }
            }
            gained |= e.compact();
            if !gained {
                return CosetTable {
                    status: CosetTableStatus::Overflow(coset_cap),
                    ngens,
                    rows: Vec::new(),
                    defined: e.defined,
                };
            }
        }
    }

    e.compact();
    let n = e.nrows();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|c| (0..e.width).map(|col| e.get(c as u32, col)).collect())
        .collect();
    let table = CosetTable {
        status: CosetTableStatus::Complete(n),
        ngens,
        rows,
        defined: e.defined,
    };
    assert!(
        table.verify_closed(p),
        "coset table reported complete but failed the closure check"
    );
    if n == 1 && subgroup_gens.is_empty() {
        assert!(
            abelianize(p).is_trivial(),
            "index-1 table over the trivial subgroup but H1 is nonzero"
        );
    }
    table
}
