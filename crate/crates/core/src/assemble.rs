//! Composition operators: symplectic fiber sum as a Van Kampen
//! amalgamation of block presentations, and torus surgery as a relator
//! edit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::blocks::{BlockDescriptor, CharNumbers};
use crate::presentation::{GeneratorSymbol, Presentation};
use crate::snf::abelianize;
use crate::word::{Letter, Word};

/// The gluing diffeomorphism data: for each standard generator of the
/// gluing surface, its image in block A's complement and in block B's.
/// The meridian rule μ_A = μ_B is implicit in [`fiber_sum`].
#[derive(Clone, Debug)]
pub struct GluingMap {
    /// `(word in A's alphabet, word in B's alphabet)`, one pair per
    /// surface generator, covering A's boundary marking in order.
    pub pairs: Vec<(Word, Word)>,
}

impl GluingMap {
    /// The identity-style gluing used throughout: the i-th marking word
    /// of A is identified with the i-th marking word of B.
    pub fn marking_to_marking(a: &BlockDescriptor, b: &BlockDescriptor) -> Self {
        GluingMap {
            pairs: a
                .boundary_marking
                .iter()
                .cloned()
                .zip(b.boundary_marking.iter().cloned())
                .collect(),
        }
    }

    /// Swapped version, for summing in the other order.
    pub fn reversed(&self) -> Self {
        GluingMap {
            pairs: self
                .pairs
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlueError {
    GenusMismatch {
        a: usize,
        b: usize,
    },
    PairCount {
        expected: usize,
        got: usize,
    },
    /// Pair sources must be exactly A's boundary marking, in order.
    SourceMismatch {
        index: usize,
    },
    /// Pair targets must exhaust B's boundary marking.
    TargetMismatch,
    AlphabetOverflow {
        side: &'static str,
    },
    Char(crate::blocks::CharError),
}

impl fmt::Display for GlueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlueError::GenusMismatch { a, b } => {
                write!(f, "boundary genus mismatch: {a} vs {b}")
            }
            GlueError::PairCount { expected, got } => {
                write!(f, "gluing map has {got} pairs, expected {expected}")
            }
            GlueError::SourceMismatch { index } => {
                write!(f, "gluing pair {index} does not match A's boundary marking")
            }
            GlueError::TargetMismatch => {
                write!(f, "gluing targets do not exhaust B's boundary marking")
            }
            GlueError::AlphabetOverflow { side } => {
                write!(f, "gluing word outside block {side}'s alphabet")
            }
            GlueError::Char(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GlueError {}

/// Which block's generator names survive when identified pairs are
/// merged into a single presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeepNames {
    A,
    B,
}

/// A glued manifold: the amalgamated presentation plus its ledger.
#[derive(Clone, Debug)]
pub struct AssembledManifold {
    pub label: String,
    /// Raw Van Kampen amalgamation: disjoint generators (block B's
    /// renamed on collision), both relator lists, one identification
    /// relator per gluing pair, and the meridian relator.
    pub presentation: Presentation,
    /// Gluing pairs re-indexed into the amalgamated alphabet.
    pub pairs: Vec<(Word, Word)>,
    pub char_numbers: CharNumbers,
    pub symplectic: bool,
    pub provenance: String,
    pub notes: Vec<&'static str>,
}

impl AssembledManifold {
    /// The display form: identified generator pairs merged away, keeping
    /// the chosen side's names. Only pairs whose both sides are single
    /// positive letters merge; anything else stays as a relator. The
    /// result presents the same group.
    pub fn identified(&self, keep: KeepNames) -> Presentation {
        let p = &self.presentation;
        let ngens = p.ngens();
        // Union-find over generators driven by single-letter pairs.
        let mut root: Vec<usize> = (0..ngens).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for (x, y) in &self.pairs {
            if let (Some(gx), Some(gy)) = (single_positive(x), single_positive(y)) {
                let (rx, ry) = (find(&mut root, gx), find(&mut root, gy));
                if rx != ry {
                    // Keep the A-side (lower index) or B-side (higher index).
                    let (keep_idx, drop_idx) = match keep {
                        KeepNames::A => (rx.min(ry), rx.max(ry)),
                        KeepNames::B => (rx.max(ry), rx.min(ry)),
                    };
                    root[drop_idx] = keep_idx;
                }
            }
        }

        let kept: Vec<usize> = (0..ngens).filter(|&g| find(&mut root, g) == g).collect();
        let remap: Vec<usize> = {
            let mut m = alloc::vec![usize::MAX; ngens];
            for (new, &old) in kept.iter().enumerate() {
                m[old] = new;
            }
            m
        };
        let images: Vec<Word> = (0..ngens)
            .map(|g| {
                let r = find(&mut root, g);
                Word::gen(remap[r])
            })
            .collect();

        let gens: Vec<GeneratorSymbol> = kept.iter().map(|&g| p.generators()[g].clone()).collect();
        let relators: Vec<Word> = p
            .relators()
            .iter()
            .map(|r| r.map(&images).expect("images cover the union alphabet"))
            .collect();
        Presentation::new(gens, relators, p.label()).expect("merged presentation is well-formed")
    }
}

fn single_positive(w: &Word) -> Option<usize> {
    match w.letters() {
        [l] if !l.is_inverse() => Some(l.gen_index()),
        _ => None,
    }
}

/// Symplectic fiber sum of two blocks along their marked boundary
/// surfaces.
///
/// The presentation is the free product with one identification relator
/// `x·ψ(x)⁻¹` per gluing pair plus the meridian relator `μ_A·μ_B⁻¹`
/// (when either meridian is the empty word this forces the other to
/// become a relator). Characteristic numbers follow the gluing formulas
/// e += 4(g−1), σ additive, with b₁ recomputed from the amalgamated
/// abelianization; the symplectic flag is the conjunction (sum of
/// symplectic blocks along symplectic surfaces).
pub fn fiber_sum(
    a: &BlockDescriptor,
    b: &BlockDescriptor,
    psi: &GluingMap,
) -> Result<AssembledManifold, GlueError> {
    let g = a.boundary_genus;
    if b.boundary_genus != g {
        return Err(GlueError::GenusMismatch {
            a: g,
            b: b.boundary_genus,
        });
    }
    if psi.pairs.len() != 2 * g {
        return Err(GlueError::PairCount {
            expected: 2 * g,
            got: psi.pairs.len(),
        });
    }
    for (i, (src, _)) in psi.pairs.iter().enumerate() {
        if *src != a.boundary_marking[i] {
            return Err(GlueError::SourceMismatch { index: i });
        }
    }
    {
        let mut targets: Vec<Word> = psi.pairs.iter().map(|(_, t)| t.clone()).collect();
        let mut marking = b.boundary_marking.clone();
        targets.sort();
        marking.sort();
        if targets != marking {
            return Err(GlueError::TargetMismatch);
        }
    }
    let pa = &a.complement_presentation;
    let pb = &b.complement_presentation;
    check_alphabet(psi.pairs.iter().map(|(s, _)| s), pa.ngens(), "A")?;
    check_alphabet(psi.pairs.iter().map(|(_, t)| t), pb.ngens(), "B")?;

    // Disjoint union of generators; B's names get primed on collision.
    let mut gens: Vec<GeneratorSymbol> = pa.generators().to_vec();
    for gsym in pb.generators() {
        let mut name = gsym.name.clone();
        while gens.iter().any(|h| h.name == name) {
            name.push('\'');
        }
        gens.push(GeneratorSymbol { name });
    }
    let shift = pa.ngens();
    let shift_word = |w: &Word| -> Word {
        Word::from_letters(
            w.letters()
                .iter()
                .map(|l| Letter::new(l.gen_index() + shift, l.is_inverse()))
                .collect(),
        )
    };

    let mut relators: Vec<Word> = pa.relators().to_vec();
    relators.extend(pb.relators().iter().map(&shift_word));
    let pairs: Vec<(Word, Word)> = psi
        .pairs
        .iter()
        .map(|(s, t)| (s.clone(), shift_word(t)))
        .collect();
    for (s, t) in &pairs {
        relators.push(s.multiply(&t.inverse()));
    }
    relators.push(a.meridian.multiply(&shift_word(&b.meridian).inverse()));

    let label = format!("{} + {}", a.label, b.label);
    let presentation =
        Presentation::new(gens, relators, &label).expect("amalgamated presentation is well-formed");

    let e = a.char_numbers.e + b.char_numbers.e + 4 * (g as i64 - 1);
    let sigma = a.char_numbers.sigma + b.char_numbers.sigma;
    let b1 = abelianize(&presentation).free_rank as i64;
    let char_numbers = CharNumbers::from_e_sigma_b1(e, sigma, b1).map_err(GlueError::Char)?;
    debug_assert_eq!(
        char_numbers.c1sq,
        a.char_numbers.c1sq + b.char_numbers.c1sq + 8 * (g as i64 - 1)
    );
    debug_assert_eq!(
        char_numbers.chi_h,
        a.char_numbers.chi_h + b.char_numbers.chi_h + (g as i64 - 1)
    );

    let mut notes = a.notes.clone();
    for n in &b.notes {
        if !notes.contains(n) {
            notes.push(n);
        }
    }

    Ok(AssembledManifold {
        label,
        presentation,
        pairs,
        char_numbers,
        symplectic: a.symplectic && b.symplectic,
        provenance: format!(
            "fiber sum of {} and {} along a genus-{g} surface",
            a.label, b.label
        ),
        notes,
    })
}

fn check_alphabet<'a>(
    words: impl Iterator<Item = &'a Word>,
    ngens: usize,
    side: &'static str,
) -> Result<(), GlueError> {
    for w in words {
        if let Some(g) = w.max_gen() {
            if g >= ngens {
                return Err(GlueError::AlphabetOverflow { side });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    AlphabetMismatch,
    Char(crate::blocks::CharError),
}

impl fmt::Display for SurgeryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryError::AlphabetMismatch => {
                write!(f, "surgery words outside the manifold's alphabet")
            }
            SurgeryError::Char(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SurgeryError {}

/// 1/m torus surgery at the presentation level: the group gains the
/// relator `meridian·direction^m`; e, σ, c₁², χ_h are untouched (b₁ and
/// b₂± are recomputed, since the new relator can change homology).
pub fn apply_torus_surgery(
    m: &AssembledManifold,
    meridian: &Word,
    direction: &Word,
    coefficient: i64,
) -> Result<AssembledManifold, SurgeryError> {
    let p = &m.presentation;
    let relator = meridian.multiply(&direction.pow(coefficient));
    if let Some(g) = relator.max_gen() {
        if g >= p.ngens() {
            return Err(SurgeryError::AlphabetMismatch);
        }
    }
    let mut relators = p.relators().to_vec();
    relators.push(relator);
    let presentation = Presentation::new(p.generators().to_vec(), relators, p.label())
        .expect("surgered presentation is well-formed");
    let b1 = abelianize(&presentation).free_rank as i64;
    let old = m.char_numbers;
    let char_numbers =
        CharNumbers::from_e_sigma_b1(old.e, old.sigma, b1).map_err(SurgeryError::Char)?;
    assert_eq!(char_numbers.e, old.e);
    assert_eq!(char_numbers.sigma, old.sigma);
    assert_eq!(char_numbers.c1sq, old.c1sq);
    assert_eq!(char_numbers.chi_h, old.chi_h);
    Ok(AssembledManifold {
        label: m.label.clone(),
        presentation,
        pairs: m.pairs.clone(),
        char_numbers,
        symplectic: m.symplectic && coefficient.abs() <= 1,
        provenance: format!(
            "{}; 1/{coefficient} torus surgery along ({:?}, {:?})",
            m.provenance, meridian, direction
        ),
        notes: m.notes.clone(),
    })
}

/// Block-level variant of [`apply_torus_surgery`].
pub fn apply_torus_surgery_block(
    block: &BlockDescriptor,
    meridian: &Word,
    direction: &Word,
    coefficient: i64,
) -> Result<BlockDescriptor, SurgeryError> {
    let p = &block.complement_presentation;
    let relator = meridian.multiply(&direction.pow(coefficient));
    if let Some(g) = relator.max_gen() {
        if g >= p.ngens() {
            return Err(SurgeryError::AlphabetMismatch);
        }
    }
    let mut relators = p.relators().to_vec();
    relators.push(relator);
    let presentation = Presentation::new(p.generators().to_vec(), relators, p.label())
        .expect("surgered presentation is well-formed");
    let b1 = abelianize(&presentation).free_rank as i64;
    let old = block.char_numbers;
    let char_numbers =
        CharNumbers::from_e_sigma_b1(old.e, old.sigma, b1).map_err(SurgeryError::Char)?;
    assert_eq!(char_numbers.e, old.e);
    assert_eq!(char_numbers.sigma, old.sigma);
    Ok(BlockDescriptor {
        label: block.label.clone(),
        complement_presentation: presentation,
        boundary_genus: block.boundary_genus,
        boundary_marking: block.boundary_marking.clone(),
        meridian: block.meridian.clone(),
        char_numbers,
        symplectic: block.symplectic && coefficient.abs() <= 1,
        sections: block.sections,
        notes: block.notes.clone(),
    })
}
