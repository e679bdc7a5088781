//! Manifold-family pipelines: build each family from its blocks, verify
//! the fundamental-group claim, and classify the homeomorphism type.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::assemble::{fiber_sum, AssembledManifold, GlueError, GluingMap, KeepNames};
use crate::blocks::{build_gurtas, build_luttinger_family_a, build_luttinger_family_b, BlockError};
use crate::presentation::Presentation;
use crate::snf::{abelianize, AbelianInvariants};
use crate::tietze::{tietze_simplify_traced, TietzeBudget};
use crate::todd_coxeter::{todd_coxeter, CosetTableStatus};

pub const DEFAULT_COSET_CAP: usize = 1_000_000;

/// Index-bookkeeping note for the free-group family with n ≥ 2: the
/// gluing surface has genus 2k+n−1, but the extra c, d generators beyond
/// index 2k are identified with nullhomotopic loops and vanish from the
/// group.
pub const FREE_FAMILY_INDEX_NOTE: &str = "for n >= 2 the gluing surface has genus 2k+n-1 \
and the c,d generators beyond index 2k are identified with nullhomotopic loops; they \
vanish from the assembled group, so the effective index range stops at 2k";

/// Resource caps for verification.
#[derive(Clone, Copy, Debug)]
pub struct VerifyCaps {
    pub coset_cap: usize,
    pub tietze: TietzeBudget,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps {
            coset_cap: DEFAULT_COSET_CAP,
            tietze: TietzeBudget::default(),
        }
    }
}

/// Outcome of a fundamental-group verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1Status {
    /// Coset enumeration closed at index 1 and H₁ = 0.
    Trivial,
    /// Free of rank 1 (ℤ): one generator, no relators, H₁ = ℤ.
    InfiniteCyclic,
    /// Tietze reached r generators and no relators, and H₁ = ℤ^r.
    FreeOfRank(usize),
    /// Only homology-level evidence is available.
    AbelianEvidence,
    /// Enumeration overflowed; nothing is claimed.
    Undecided,
}

impl fmt::Display for Pi1Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1Status::Trivial => write!(f, "Trivial"),
            Pi1Status::InfiniteCyclic => write!(f, "InfiniteCyclic"),
            Pi1Status::FreeOfRank(r) => write!(f, "FreeOfRank({r})"),
            Pi1Status::AbelianEvidence => write!(f, "AbelianEvidence"),
            Pi1Status::Undecided => write!(f, "Undecided"),
        }
    }
}

/// Verification verdict with its evidence trail.
#[derive(Clone, Debug)]
pub struct Pi1Verdict {
    pub status: Pi1Status,
    pub h1: AbelianInvariants,
    /// `[G : 1]` when enumeration closed.
    pub coset_index: Option<usize>,
    /// Total cosets defined during enumeration.
    pub cosets_defined: Option<usize>,
    pub simplified_gens: usize,
    pub simplified_relators: usize,
    /// Surviving generator names of the simplified presentation.
    pub simplified_names: Vec<String>,
    pub tietze_trace: Vec<String>,
}

impl Pi1Verdict {
    pub fn is_trivial(&self) -> bool {
        self.status == Pi1Status::Trivial
    }

    /// ℤ, under either name.
    pub fn is_infinite_cyclic(&self) -> bool {
        matches!(
            self.status,
            Pi1Status::InfiniteCyclic | Pi1Status::FreeOfRank(1)
        )
    }

    pub fn is_free_of_rank(&self, r: usize) -> bool {
        match self.status {
            Pi1Status::FreeOfRank(s) => s == r,
            Pi1Status::InfiniteCyclic => r == 1,
            _ => false,
        }
    }
}

/// Freedman-type classification payload: the standard odd simply
/// connected type `b₂⁺ CP² # b₂⁻ C̄P²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomeoType {
    pub b2plus: i64,
    pub b2minus: i64,
    /// Intersection-form parity; blow-ups make every type here odd.
    pub odd: bool,
}

impl fmt::Display for HomeoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} CP2 # {} CP2bar", self.b2plus, self.b2minus)
    }
}

#[derive(Debug, Clone)]
pub enum BuildError {
    Invalid(String),
    Block(BlockError),
    Glue(GlueError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Invalid(msg) => write!(f, "{msg}"),
            BuildError::Block(e) => write!(f, "{e}"),
            BuildError::Glue(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BuildError {}

impl From<BlockError> for BuildError {
    fn from(e: BlockError) -> Self {
        BuildError::Block(e)
    }
}

impl From<GlueError> for BuildError {
    fn from(e: GlueError) -> Self {
        BuildError::Glue(e)
    }
}

fn check_nk(n: usize, k: usize) -> Result<(), BuildError> {
    if n == 0 || k == 0 {
        return Err(BuildError::Invalid(format!(
            "family parameters need n, k >= 1; got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// The simply connected family X(n,k): fiber sum of the 4n-blowup
/// fibration block with the unit-parameter torus-product block along the
/// genus-(2k+n−1) fiber.
pub fn build_x(n: usize, k: usize) -> Result<AssembledManifold, BuildError> {
    let mut x = build_x_with_torus_block(n, k, 1, format!("X({n},{k})"))?;
    x.provenance = format!("X({n},{k}) = {}", x.provenance);
    Ok(x)
}

/// The infinite family X(n,k,m): same assembly with the 1/m-surgered
/// torus block; nonsymplectic for |m| > 1. `m = 0` is the separate
/// [`build_x0`] construction.
pub fn build_x_m(n: usize, k: usize, m: i64) -> Result<AssembledManifold, BuildError> {
    if m == 0 {
        return Err(BuildError::Invalid(String::from(
            "m = 0 is the X(n,k)_0 variant; use build_x0",
        )));
    }
    let mut x = build_x_with_torus_block(n, k, m, format!("X({n},{k},{m})"))?;
    x.provenance = format!("X({n},{k},{m}) = {}", x.provenance);
    Ok(x)
}

/// The b₁ = 1 variant X(n,k)₀: the d-direction surgery degenerates to
/// the bare meridian relator, leaving d unconstrained; π₁ becomes ℤ.
pub fn build_x0(n: usize, k: usize) -> Result<AssembledManifold, BuildError> {
    let mut x = build_x_with_torus_block(n, k, 0, format!("X({n},{k})_0"))?;
    x.provenance = format!("X({n},{k})_0 = {}", x.provenance);
    Ok(x)
}

fn build_x_with_torus_block(
    n: usize,
    k: usize,
    m: i64,
    label: String,
) -> Result<AssembledManifold, BuildError> {
    check_nk(n, k)?;
    let g = 2 * k + n - 1;
    let a = build_gurtas(n, k)?;
    let b = build_luttinger_family_b(g, 1, m, 1)?;
    let psi = GluingMap::marking_to_marking(&a, &b);
    let mut x = fiber_sum(&a, &b, &psi)?;
    x.label = label;
    Ok(x)
}

/// Default surgery-coefficient pattern for the free-group family:
/// p = (1, 1, 0, …, 0) and q = (1, …, 1), both of length 2k+n−1.
pub fn free_rank_parameters(n: usize, k: usize) -> (Vec<i64>, Vec<i64>) {
    let l = 2 * k + n - 1;
    let mut p = alloc::vec![0i64; l];
    p[0] = 1;
    p[1] = 1;
    let q = alloc::vec![1i64; l];
    (p, q)
}

/// The free-fundamental-group family: fiber sum of the fibration block
/// with the surgered Σ₂×Σ_l product block, l = 2k+n−1. With the
/// [`free_rank_parameters`] pattern and k ≥ 3 the group is free of rank
/// k−2.
pub fn build_x_free(
    n: usize,
    k: usize,
    p: &[i64],
    q: &[i64],
) -> Result<AssembledManifold, BuildError> {
    check_nk(n, k)?;
    let l = 2 * k + n - 1;
    if l < 2 {
        return Err(BuildError::Invalid(String::from(
            "the product block needs genus >= 2",
        )));
    }
    let a = build_gurtas(n, k)?;
    let b = build_luttinger_family_a(l, p, q)?;
    let psi = GluingMap::marking_to_marking(&a, &b);
    let mut x = fiber_sum(&a, &b, &psi)?;
    x.label = format!("X({n},{k},p,q)");
    x.provenance = format!("X({n},{k},p,q) = {}", x.provenance);
    if n >= 2 {
        x.notes.push(FREE_FAMILY_INDEX_NOTE);
    }
    Ok(x)
}

/// The cyclic-products variant: the free-family pattern with the q
/// coefficients free to vary. Only homology evidence is reported for it.
pub fn build_x_cyclic(n: usize, k: usize, q: &[i64]) -> Result<AssembledManifold, BuildError> {
    check_nk(n, k)?;
    if q.iter().any(|&v| v < 1) {
        return Err(BuildError::Invalid(String::from(
            "cyclic-family coefficients need q_i >= 1",
        )));
    }
    let (p, _) = free_rank_parameters(n, k);
    let mut x = build_x_free(n, k, &p, q)?;
    x.label = format!("X({n},{k},q-cyclic)");
    Ok(x)
}

/// Generic π₁ verdict for a presentation: abelianization first (cheap,
/// and a gate: a nonzero H₁ can never verify as trivial), then Tietze
/// simplification for structure evidence, then — only when H₁ vanishes —
/// coset enumeration over the trivial subgroup on the presentation
/// itself.
pub fn verify_pi1(p: &Presentation, caps: &VerifyCaps) -> Pi1Verdict {
    let h1 = abelianize(p);
    let (simplified, trace) = tietze_simplify_traced(p, &caps.tietze);
    let mut verdict = Pi1Verdict {
        status: Pi1Status::AbelianEvidence,
        h1: h1.clone(),
        coset_index: None,
        cosets_defined: None,
        simplified_gens: simplified.ngens(),
        simplified_relators: simplified.relators().len(),
        simplified_names: simplified
            .generator_names()
            .iter()
            .map(|s| String::from(*s))
            .collect(),
        tietze_trace: trace,
    };

    if h1.is_trivial() {
        let table = todd_coxeter(p, &[], caps.coset_cap);
        verdict.cosets_defined = Some(table.cosets_defined());
        match table.status() {
            CosetTableStatus::Complete(1) => {
                verdict.coset_index = Some(1);
                verdict.status = Pi1Status::Trivial;
            }
            CosetTableStatus::Complete(idx) => {
                verdict.coset_index = Some(*idx);
                verdict.status = Pi1Status::AbelianEvidence;
            }
            CosetTableStatus::Overflow(_) => {
                verdict.status = Pi1Status::Undecided;
            }
        }
        return verdict;
    }

    if simplified.relators().is_empty() && h1.is_free_of_rank(simplified.ngens()) {
        verdict.status = if simplified.ngens() == 1 {
            Pi1Status::InfiniteCyclic
        } else {
            Pi1Status::FreeOfRank(simplified.ngens())
        };
    }
    verdict
}

/// Runs the verification pipeline on the identified (merged) form of an
/// assembled manifold. Returns `Trivial` only on a closed index-1 coset
/// table together with vanishing H₁; overflow is `Undecided`, never a
/// claim.
pub fn verify_simply_connected(m: &AssembledManifold, caps: &VerifyCaps) -> Pi1Verdict {
    verify_pi1(&m.identified(KeepNames::A), caps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    NotSimplyConnected,
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "homeomorphism type is only emitted for a Trivial verdict"
        )
    }
}

impl core::error::Error for ClassifyError {}

/// Classification rule for the simply connected members: odd
/// intersection form (blow-ups are present by construction), so the
/// type is `(2χ_h−1) CP² # (2χ_h−1−σ) C̄P²`.
pub fn classify_homeo(
    m: &AssembledManifold,
    verdict: &Pi1Verdict,
) -> Result<HomeoType, ClassifyError> {
    if !verdict.is_trivial() {
        return Err(ClassifyError::NotSimplyConnected);
    }
    let b2plus = 2 * m.char_numbers.chi_h - 1;
    Ok(HomeoType {
        b2plus,
        b2minus: b2plus - m.char_numbers.sigma,
        odd: true,
    })
}
