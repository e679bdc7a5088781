//! Presentation simplification by Tietze transformations.
//!
//! Three move families, all isomorphism-preserving:
//!
//! 1. normalization — free/cyclic reduction, dropping identity and
//!    duplicate relators (duplicates up to rotation and inversion);
//! 2. relator rewriting — if a cyclic subword of one relator matches more
//!    than half of a cyclic rotation of another relator (or its inverse),
//!    replace it by the shorter complement;
//! 3. generator elimination — when a relator contains exactly one
//!    occurrence of a generator, solve for it and substitute everywhere.
//!
//! Rewriting runs to a fixpoint between eliminations, which is what lets
//! long fibration relators grind down to the short consequence relations
//! before a generator is solved out. Elimination candidates are ordered
//! by shortest relator, then lowest generator ordinal; substitutions that
//! would push any relator past the length budget are skipped. The result
//! is always a presentation of an isomorphic group, with best-so-far
//! returned when the budget is exhausted.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::grammar::print_word;
use crate::presentation::{GeneratorSymbol, Presentation};
use crate::word::{Letter, Word};

/// Growth limits for [`tietze_simplify`].
#[derive(Clone, Copy, Debug)]
pub struct TietzeBudget {
    /// No relator may grow past this length under substitution.
    pub max_relator_len: usize,
    /// Hard bound on simplification rounds.
    pub max_passes: usize,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        TietzeBudget {
            max_relator_len: 10_000,
            max_passes: 10_000,
        }
    }
}

impl TietzeBudget {
    pub fn with_relator_len(max_relator_len: usize) -> Self {
        TietzeBudget {
            max_relator_len,
            ..Self::default()
        }
    }
}

/// Simplifies `p` by Tietze moves. Never increases the generator count.
pub fn tietze_simplify(p: &Presentation, budget: &TietzeBudget) -> Presentation {
    tietze_simplify_traced(p, budget).0
}

/// As [`tietze_simplify`], also returning a human-readable move trace.
pub fn tietze_simplify_traced(
    p: &Presentation,
    budget: &TietzeBudget,
) -> (Presentation, Vec<String>) {
    let mut state = State {
        gens: p.generators().to_vec(),
        relators: p.relators().to_vec(),
    };
    let mut trace = Vec::new();

    for _pass in 0..budget.max_passes {
        state.normalize();
        let rewrites = state.rewrite_to_fixpoint(budget.max_passes);
        if rewrites > 0 {
            trace.push(format!("rewrote relators ({rewrites} replacements)"));
        }
        state.normalize();
        match state.eliminate_one(budget.max_relator_len) {
            Some(line) => trace.push(line),
            None => break,
        }
    }
    state.normalize();

    let result = Presentation::new(state.gens, state.relators, p.label())
        .expect("tietze moves keep the presentation well-formed");
    trace.push(format!(
        "final: {} generators, {} relators",
        result.ngens(),
        result.relators().len()
    ));
    (result, trace)
}

struct State {
    gens: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
}

impl State {
    fn normalize(&mut self) {
        let mut rels: Vec<Word> = self
            .relators
            .iter()
            .map(|r| r.cyclic_reduce().0)
            .filter(|r| !r.is_empty())
            .collect();
        // Deterministic order plus dedup up to rotation/inversion.
        rels.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.relator_canonical().cmp(&b.relator_canonical()))
        });
        rels.dedup_by_key(|r| r.relator_canonical());
        self.relators = rels;
    }

    /// Repeats single rewrite steps until none applies; returns the count.
    fn rewrite_to_fixpoint(&mut self, max_steps: usize) -> usize {
        let mut count = 0;
        for _ in 0..max_steps {
            if !self.rewrite_once() {
                break;
            }
            count += 1;
        }
        count
    }

    /// One length-reducing replacement: finds a relator `r` containing a
    /// cyclic subword matching more than half of a rotation of another
    /// relator `s^±`, and replaces it by the complement.
    fn rewrite_once(&mut self) -> bool {
        for i in 0..self.relators.len() {
            let ri_len = self.relators[i].len();
            if ri_len == 0 {
                continue;
            }
            // Best replacement for relator i: maximal overlap ℓ, then
            // smallest (j, sign, rotation, position) for determinism.
            let mut best: Option<(usize, Rewrite)> = None;
            for j in 0..self.relators.len() {
                if i == j {
                    continue;
                }
                let m = self.relators[j].len();
                if m == 0 || m / 2 + 1 > ri_len {
                    continue;
                }
                if let Some(rw) = best_overlap_for(&self.relators[i], &self.relators[j], j) {
                    let gain = 2 * rw.overlap - m; // length saved
                    if best.as_ref().is_none_or(|(bg, _)| gain > *bg) {
                        best = Some((gain, rw));
                    }
                }
            }
            if let Some((_, rw)) = best {
                self.relators[i] = apply_rewrite(&self.relators[i], &self.relators[rw.j], &rw);
                self.normalize();
                return true;
            }
        }
        false
    }

    /// Eliminates one generator if some relator carries exactly one
    /// occurrence of it and no substitution violates the length budget.
    fn eliminate_one(&mut self, max_relator_len: usize) -> Option<String> {
        // Candidates: (relator length, generator ordinal, relator index).
        let mut cands: Vec<(usize, usize, usize)> = Vec::new();
        for (idx, r) in self.relators.iter().enumerate() {
            let mut counts = alloc::vec![0usize; self.gens.len()];
            for &l in r.letters() {
                counts[l.gen_index()] += 1;
            }
            for (g, &c) in counts.iter().enumerate() {
                if c == 1 {
                    cands.push((r.len(), g, idx));
                }
            }
        }
        cands.sort();

        'cand: for &(_, g, idx) in &cands {
            let r = &self.relators[idx];
            let pos = r
                .letters()
                .iter()
                .position(|l| l.gen_index() == g)
                .expect("candidate relator contains the generator");
            let occ = r.letters()[pos];
            // r = x·g^ε·y = 1 solves to g^ε = x⁻¹·y⁻¹.
            let x = Word::from_letters(r.letters()[..pos].to_vec());
            let y = Word::from_letters(r.letters()[pos + 1..].to_vec());
            let mut image = x.inverse().multiply(&y.inverse());
            if occ.is_inverse() {
                image = image.inverse();
            }

            // Substitution images: identity elsewhere.
            let images: Vec<Word> = (0..self.gens.len())
                .map(|h| if h == g { image.clone() } else { Word::gen(h) })
                .collect();
            let mut new_rels = Vec::with_capacity(self.relators.len() - 1);
            for (k, t) in self.relators.iter().enumerate() {
                if k == idx {
                    continue;
                }
                let t2 = t.map(&images).expect("images cover all generators");
                if t2.len() > max_relator_len {
                    continue 'cand;
                }
                new_rels.push(t2);
            }

            let line = format!(
                "eliminated {} := {}",
                self.gens[g].name,
                print_word(
                    &image,
                    &self
                        .gens
                        .iter()
                        .map(|s| s.name.as_str())
                        .collect::<Vec<_>>()
                )
            );
            self.relators = new_rels;
            self.remove_generator(g);
            return Some(line);
        }
        None
    }

    fn remove_generator(&mut self, g: usize) {
        self.gens.remove(g);
        let remap = |l: Letter| {
            let idx = l.gen_index();
            debug_assert_ne!(idx, g);
            let idx = if idx > g { idx - 1 } else { idx };
            Letter::new(idx, l.is_inverse())
        };
        for r in &mut self.relators {
            *r = Word::from_letters(r.letters().iter().map(|&l| remap(l)).collect());
        }
    }
}

struct Rewrite {
    j: usize,
    /// Rotation start within `s^sign`.
    rot: usize,
    sign: i8,
    /// Start of the match within the doubled word of `r`.
    pos: usize,
    /// Matched length, strictly more than half of `|s|`.
    overlap: usize,
}

/// Longest strictly-more-than-half overlap between a cyclic subword of `r`
/// and a rotation of `s^±`, if any.
fn best_overlap(r: &Word, s: &Word) -> Option<Rewrite> {
    let rl = r.letters();
    let ll = rl.len();
    let m = s.len();
    let threshold = m / 2 + 1;
    let mut doubled = rl.to_vec();
    doubled.extend_from_slice(rl);

    let mut best: Option<Rewrite> = None;
    let maxk = m.min(ll);
    for sign in [1i8, -1i8] {
        let base = if sign == 1 { s.clone() } else { s.inverse() };
        let bl = base.letters();
        for rot in 0..m {
            for pos in 0..ll {
                let mut k = 0usize;
                while k < maxk && doubled[pos + k] == bl[(rot + k) % m] {
                    k += 1;
                }
                if k >= threshold && best.as_ref().is_none_or(|b| k > b.overlap) {
                    best = Some(Rewrite {
                        j: 0, // filled by caller
                        rot,
                        sign,
                        pos,
                        overlap: k,
                    });
                    if k == maxk {
                        return best;
                    }
                }
            }
        }
    }
    best
}

/// Replaces the matched cyclic segment of `r` by the complement of the
/// matched rotation of `s^±`: if the rotation is `u·v` with `u` matched,
/// the segment becomes `v⁻¹`.
fn apply_rewrite(r: &Word, s: &Word, rw: &Rewrite) -> Word {
    let rl = r.letters();
    let ll = rl.len();
    let base = if rw.sign == 1 { s.clone() } else { s.inverse() };
    let bl = base.letters();
    let m = bl.len();

    let mut complement: Vec<Letter> = Vec::with_capacity(m - rw.overlap);
    for k in rw.overlap..m {
        complement.push(bl[(rw.rot + k) % m]);
    }
    let v_inv = Word::from_letters(complement).inverse();

    // Rotate r so the match starts at index 0, then splice.
    let mut rot_r: Vec<Letter> = Vec::with_capacity(ll);
    for k in 0..ll {
        rot_r.push(rl[(rw.pos + k) % ll]);
    }
    let tail = Word::from_letters(rot_r[rw.overlap..].to_vec());
    v_inv.multiply(&tail)
}

fn best_overlap_for(r: &Word, s: &Word, j: usize) -> Option<Rewrite> {
    best_overlap(r, s).map(|mut rw| {
        rw.j = j;
        rw
    })
}
