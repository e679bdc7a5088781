//! Consequence certificates: finite witnesses that a word lies in the
//! normal closure of a presentation's relators.
//!
//! A certificate is a list of steps `(relator index, conjugator, sign)`;
//! it is valid for a target `w` iff the product `Π uᵢ rᵢ^±1 uᵢ⁻¹` freely
//! reduces to `w`. Verification is a straight product-and-reduce, so a
//! verified certificate is a proof; the bounded search below is only a
//! best-effort witness finder and its failure is always inconclusive.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::presentation::Presentation;
use crate::word::Word;

/// One conjugated-relator factor `u · r^sign · u⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateStep {
    pub relator: usize,
    pub conjugator: Word,
    pub sign: i8,
}

/// A product of conjugated relators, the machine form of a relation
/// derivation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConsequenceCertificate {
    pub steps: Vec<CertificateStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateError {
    RelatorIndexOutOfRange { index: usize, nrelators: usize },
    BadSign(i8),
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::RelatorIndexOutOfRange { index, nrelators } => {
                write!(
                    f,
                    "relator index {index} out of range ({nrelators} relators)"
                )
            }
            CertificateError::BadSign(s) => write!(f, "certificate sign must be ±1, got {s}"),
        }
    }
}

impl core::error::Error for CertificateError {}

impl ConsequenceCertificate {
    pub fn new(steps: Vec<CertificateStep>) -> Self {
        ConsequenceCertificate { steps }
    }

    pub fn single(relator: usize) -> Self {
        ConsequenceCertificate {
            steps: alloc::vec![CertificateStep {
                relator,
                conjugator: Word::empty(),
                sign: 1,
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Concatenation: witnesses the product of the two targets.
    pub fn then(mut self, rhs: ConsequenceCertificate) -> Self {
        self.steps.extend(rhs.steps);
        self
    }

    /// Reversed with signs flipped: witnesses the inverse target.
    pub fn inverse(&self) -> Self {
        ConsequenceCertificate {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| CertificateStep {
                    relator: s.relator,
                    conjugator: s.conjugator.clone(),
                    sign: -s.sign,
                })
                .collect(),
        }
    }

    /// Conjugates every step by `u`: witnesses `u · target · u⁻¹`.
    pub fn conjugated_by(&self, u: &Word) -> Self {
        ConsequenceCertificate {
            steps: self
                .steps
                .iter()
                .map(|s| CertificateStep {
                    relator: s.relator,
                    conjugator: u.multiply(&s.conjugator),
                    sign: s.sign,
                })
                .collect(),
        }
    }

    /// The freely reduced product of the certificate's factors.
    pub fn product(&self, p: &Presentation) -> Result<Word, CertificateError> {
        let relators = p.relators();
        let mut acc = Word::empty();
        for step in &self.steps {
            if step.relator >= relators.len() {
                return Err(CertificateError::RelatorIndexOutOfRange {
                    index: step.relator,
                    nrelators: relators.len(),
                });
            }
            if step.sign != 1 && step.sign != -1 {
                return Err(CertificateError::BadSign(step.sign));
            }
            let r = &relators[step.relator];
            let factor = if step.sign == 1 {
                r.clone()
            } else {
                r.inverse()
            };
            acc = acc.multiply(&factor.conjugated_by(&step.conjugator));
        }
        Ok(acc)
    }
}

/// True iff the certificate's product freely reduces to `target`.
pub fn verify_certificate(
    p: &Presentation,
    target: &Word,
    cert: &ConsequenceCertificate,
) -> Result<bool, CertificateError> {
    Ok(cert.product(p)? == target.reduce())
}

/// Bounds for [`search_certificate`].
#[derive(Clone, Copy, Debug)]
pub struct SearchBounds {
    /// Maximum number of certificate steps.
    pub max_steps: usize,
    /// Maximum conjugator length considered for a single step.
    pub max_conjugator_length: usize,
    /// Node budget for the underlying best-first search.
    pub max_nodes: usize,
}

impl SearchBounds {
    pub fn new(max_steps: usize, max_conjugator_length: usize) -> Self {
        SearchBounds {
            max_steps,
            max_conjugator_length,
            max_nodes: 20_000,
        }
    }
}

/// Best-effort bounded search for a certificate expressing `target`.
///
/// The search walks the residual word `W = (c₁⋯cⱼ)⁻¹ · target`, shrinking
/// it by left-multiplying with inverses of conjugated relators; a step
/// either inserts a relator after a prefix of `W` (the conjugator is that
/// prefix) or closes immediately when `W` is itself a conjugate of a
/// relator. Only length-non-increasing moves are explored, which keeps
/// failure fast; `None` means "not found within bounds", never
/// "not a consequence".
pub fn search_certificate(
    p: &Presentation,
    target: &Word,
    bounds: SearchBounds,
) -> Option<ConsequenceCertificate> {
    let target = target.reduce();
    let relators = p.relators();
    if target.is_empty() {
        return Some(ConsequenceCertificate::default());
    }
    if relators.is_empty() || bounds.max_steps == 0 {
        return None;
    }

    // Depth-first over strictly length-decreasing moves first, with a
    // visited set to avoid loops on equal-length plateaus.
    let mut visited: BTreeSet<Word> = BTreeSet::new();
    let mut nodes = 0usize;
    search_rec(
        relators,
        &target,
        bounds.max_steps,
        &bounds,
        &mut visited,
        &mut nodes,
    )
}

fn search_rec(
    relators: &[Word],
    w: &Word,
    steps_left: usize,
    bounds: &SearchBounds,
    visited: &mut BTreeSet<Word>,
    nodes: &mut usize,
) -> Option<ConsequenceCertificate> {
    if w.is_empty() {
        return Some(ConsequenceCertificate::default());
    }
    if steps_left == 0 || *nodes >= bounds.max_nodes {
        return None;
    }
    *nodes += 1;

    // Immediate close: w is a conjugate of some relator (or its inverse)
    // exactly when its cyclic core is a rotation of that relator.
    if let Some(step) = close_as_conjugate(relators, w, bounds.max_conjugator_length) {
        return Some(ConsequenceCertificate::new(alloc::vec![step]));
    }

    if !visited.insert(w.clone()) {
        return None;
    }

    // Candidate moves: for each prefix u of w and relator rotation ρ^±,
    // replace w by reduce(u · ρ∓ · u⁻¹ · w); keep non-increasing results.
    let mut moves: Vec<(usize, Word, i8, Word)> = Vec::new();
    let letters = w.letters();
    for cut in 0..=letters.len().min(bounds.max_conjugator_length) {
        let prefix = Word::from_letters(letters[..cut].to_vec());
        for (ri, r) in relators.iter().enumerate() {
            for sign in [1i8, -1i8] {
                let base = if sign == 1 { r.clone() } else { r.inverse() };
                let n = base.len();
                for rot in 0..n {
                    let mut rl = base.letters()[rot..].to_vec();
                    rl.extend_from_slice(&base.letters()[..rot]);
                    let rho = Word::from_letters(rl);
                    // Step factor u·ρ^s·u⁻¹ with product c; the residual
                    // becomes c⁻¹·w. Conjugator for the certificate step
                    // is u·(rotation shift), folded into `rho` directly:
                    // u·ρ·u⁻¹ where ρ is already rotated.
                    let c_inv = prefix.multiply(&rho.inverse()).multiply(&prefix.inverse());
                    let next = c_inv.multiply(w);
                    if next.len() <= w.len() {
                        moves.push((ri, rot_conjugator(&base, rot, &prefix), sign, next));
                    }
                }
            }
        }
    }
    // Shortest residual first; deterministic tie-break on the move data.
    moves.sort_by(|a, b| {
        a.3.len()
            .cmp(&b.3.len())
            .then_with(|| a.0.cmp(&b.0))
            .then_with(|| a.2.cmp(&b.2))
            .then_with(|| a.1.cmp(&b.1))
    });

    for (ri, conj, sign, next) in moves {
        if let Some(rest) = search_rec(relators, &next, steps_left - 1, bounds, visited, nodes) {
            let step = CertificateStep {
                relator: ri,
                conjugator: conj,
                sign,
            };
            let mut steps = alloc::vec![step];
            steps.extend(rest.steps);
            return Some(ConsequenceCertificate::new(steps));
        }
    }
    None
}

/// If the cyclic core of `w` is a rotation of `r^±`, the whole of `w` is
/// `u · r^± · u⁻¹` for a recoverable `u`.
fn close_as_conjugate(relators: &[Word], w: &Word, max_conj: usize) -> Option<CertificateStep> {
    let (core, conj) = w.cyclic_reduce();
    for (ri, r) in relators.iter().enumerate() {
        if r.len() != core.len() || r.is_empty() {
            continue;
        }
        for sign in [1i8, -1i8] {
            let base = if sign == 1 { r.clone() } else { r.inverse() };
            for rot in 0..base.len() {
                let mut rl = base.letters()[rot..].to_vec();
                rl.extend_from_slice(&base.letters()[..rot]);
                if rl == core.letters() {
                    let u = rot_conjugator(&base, rot, &conj);
                    if u.len() <= max_conj {
                        return Some(CertificateStep {
                            relator: ri,
                            conjugator: u,
                            sign,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Conjugator sending `r^±` to `prefix · rotation(r^±, rot) · prefix⁻¹`:
/// the rotation itself is `α⁻¹ r α` for `α` the first `rot` letters, so
/// the step conjugator is `prefix · α⁻¹`.
fn rot_conjugator(base: &Word, rot: usize, prefix: &Word) -> Word {
    let alpha = Word::from_letters(base.letters()[..rot].to_vec());
    prefix.multiply(&alpha.inverse())
}
