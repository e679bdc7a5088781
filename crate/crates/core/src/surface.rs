//! Surface groups π₁(Σ_g), a word-problem decision procedure for them,
//! and the named curve words of the genus-2k involution fibrations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::presentation::Presentation;
use crate::word::Word;

/// π₁ of the closed orientable genus-g surface, presented on
/// `a1, b1, …, ag, bg` with the single relator `[a1,b1]⋯[ag,bg]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceGroup {
    pub genus: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidGenus(pub usize);

impl fmt::Display for InvalidGenus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus must be at least 1, got {}", self.0)
    }
}

impl core::error::Error for InvalidGenus {}

impl SurfaceGroup {
    pub fn new(genus: usize) -> Result<Self, InvalidGenus> {
        if genus == 0 {
            return Err(InvalidGenus(0));
        }
        Ok(SurfaceGroup { genus })
    }

    /// Generator index of `a_i` (1-based `i`).
    pub fn a(i: usize) -> Word {
        Word::gen(2 * (i - 1))
    }

    /// Generator index of `b_i` (1-based `i`).
    pub fn b(i: usize) -> Word {
        Word::gen(2 * (i - 1) + 1)
    }

    /// `[a1,b1][a2,b2]⋯[ag,bg]`.
    pub fn relator(&self) -> Word {
        product_of_commutators(1, self.genus)
    }

    pub fn generator_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(2 * self.genus);
        for i in 1..=self.genus {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
        }
        names
    }

    pub fn presentation(&self) -> Presentation {
        let names = self.generator_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Presentation::from_names(
            &refs,
            alloc::vec![self.relator()],
            &format!("pi1(Sigma_{})", self.genus),
        )
        .expect("surface presentation is well-formed")
    }
}

/// `⟨a1,b1,…,ag,bg | [a1,b1]⋯[ag,bg]⟩`.
pub fn standard_presentation(g: usize) -> Result<Presentation, InvalidGenus> {
    Ok(SurfaceGroup::new(g)?.presentation())
}

/// `[a_lo,b_lo]⋯[a_hi,b_hi]` (empty when `lo > hi`).
fn product_of_commutators(lo: usize, hi: usize) -> Word {
    let mut w = Word::empty();
    for i in lo..=hi {
        w = w.multiply(&SurfaceGroup::a(i).commutator(&SurfaceGroup::b(i)));
    }
    w
}

/// Decides `w = 1` in π₁(Σ_g).
///
/// For g ≥ 2 this is Dehn's algorithm: the one-relator surface
/// presentation is C'(1/8), so a nonempty freely reduced word of the
/// normal closure must contain more than half of a cyclic rotation of the
/// relator or its inverse; replacing that subword by the shorter
/// complement terminates, and the word is trivial iff it reaches the
/// empty word. For g = 1 the group is ℤ² and exponent sums decide
/// exactly.
pub fn dehn_is_trivial(w: &Word, g: usize) -> bool {
    assert!(g >= 1, "genus must be at least 1");
    let trivial = if g == 1 {
        w.exponent_sums(2).iter().all(|&s| s == 0)
    } else {
        dehn_reduce(w, g).is_empty()
    };
    if trivial {
        // Sanity: trivial words die in H1.
        debug_assert!(w.exponent_sums(2 * g).iter().all(|&s| s == 0));
    }
    trivial
}

fn dehn_reduce(w: &Word, g: usize) -> Word {
    let relator = SurfaceGroup { genus: g }.relator();
    let m = relator.len(); // 4g
    let half = m / 2; // matches must exceed this
    let mut rotations: Vec<Vec<crate::word::Letter>> = Vec::with_capacity(2 * m);
    for base in [relator.clone(), relator.inverse()] {
        for rot in 0..m {
            let mut v = base.letters()[rot..].to_vec();
            v.extend_from_slice(&base.letters()[..rot]);
            rotations.push(v);
        }
    }

    let mut cur = w.reduce();
    loop {
        if cur.is_empty() {
            return cur;
        }
        let letters = cur.letters();
        // Longest match of a rotation prefix anywhere in the word.
        let mut best: Option<(usize, usize, usize)> = None; // (len, pos, rot idx)
        for (ri, rho) in rotations.iter().enumerate() {
            for pos in 0..letters.len() {
                let mut k = 0;
                while pos + k < letters.len() && k < m && letters[pos + k] == rho[k] {
                    k += 1;
                }
                if k > half && best.is_none_or(|(bl, _, _)| k > bl) {
                    best = Some((k, pos, ri));
                }
            }
        }
        let Some((len, pos, ri)) = best else {
            return cur;
        };
        // rotation = u·v with u matched: replace u by v⁻¹.
        let complement = Word::from_letters(rotations[ri][len..].to_vec()).inverse();
        let head = Word::from_letters(letters[..pos].to_vec());
        let tail = Word::from_letters(letters[pos + len..].to_vec());
        cur = head.multiply(&complement).multiply(&tail);
    }
}

/// The named vanishing-cycle words of the genus-(2k+n−1) involution
/// fibration: `B0 … B2k` and the separating curve `c` as words in the
/// `a_i, b_i` handle generators, and (for n ≥ 2) the extra handle
/// generators `e1 … e_{2n-2}` as single letters.
#[derive(Clone, Debug)]
pub struct CurveWordCatalog {
    pub k: usize,
    pub n: usize,
    /// Ordered `label → word` pairs: B0…B2k, c, e1…e_{2n-2}.
    entries: Vec<(String, Word)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidCurveParams {
    pub k: usize,
    pub n: usize,
}

impl fmt::Display for InvalidCurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "curve parameters need k ≥ 1, n ≥ 1; got k={}, n={}",
            self.k, self.n
        )
    }
}

impl core::error::Error for InvalidCurveParams {}

impl CurveWordCatalog {
    pub fn get(&self, label: &str) -> Option<&Word> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, w)| w)
    }

    /// `B_i` for 0 ≤ i ≤ 2k.
    pub fn b_curve(&self, i: usize) -> &Word {
        self.get(&format!("B{i}")).expect("B-curve index in range")
    }

    /// The separating vanishing cycle `c = c_k`.
    pub fn c_curve(&self) -> &Word {
        self.get("c").expect("catalog always carries c")
    }

    /// `e_j` for 1 ≤ j ≤ 2n−2.
    pub fn e_curve(&self, j: usize) -> &Word {
        self.get(&format!("e{j}")).expect("e-curve index in range")
    }

    /// Label/word pairs in catalog order (B0…B2k, c, e1…).
    pub fn entries(&self) -> impl Iterator<Item = (&String, &Word)> {
        self.entries.iter().map(|(l, w)| (l, w))
    }

    /// Generator names of the ambient genus-(2k+n−1) surface, with the
    /// last n−1 handle pairs named `e1 … e_{2n-2}`.
    pub fn ambient_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for i in 1..=2 * self.k {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
        }
        for j in 1..=2 * (self.n - 1) {
            names.push(format!("e{j}"));
        }
        names
    }

    /// Ambient surface relator `[a1,b1]⋯[a2k,b2k]·[e1,e2]⋯`.
    pub fn ambient_surface_relator(&self) -> Word {
        SurfaceGroup {
            genus: 2 * self.k + self.n - 1,
        }
        .relator()
    }
}

/// Builds the catalog: `c_j` inside the B-words is always expanded to its
/// commutator word, never stored lazily.
pub fn curve_words(k: usize, n: usize) -> Result<CurveWordCatalog, InvalidCurveParams> {
    if k == 0 || n == 0 {
        return Err(InvalidCurveParams { k, n });
    }
    let a = SurfaceGroup::a;
    let b = SurfaceGroup::b;
    let c = |j: usize| product_of_commutators(1, j);
    let b_run = |lo: usize, hi: usize| {
        let mut w = Word::empty();
        for i in lo..=hi {
            w = w.multiply(&b(i));
        }
        w
    };
    let g = 2 * k;

    let mut by_label: BTreeMap<usize, Word> = BTreeMap::new();
    by_label.insert(0, b_run(1, g));
    for i in 1..=k {
        let word = a(i)
            .multiply(&b_run(i, g + 1 - i))
            .multiply(&c(g + 1 - i))
            .multiply(&a(g + 1 - i));
        by_label.insert(2 * i - 1, word);
    }
    for i in 1..=k.saturating_sub(1) {
        let word = a(i)
            .multiply(&b_run(i + 1, g - i))
            .multiply(&c(g - i))
            .multiply(&a(g + 1 - i));
        by_label.insert(2 * i, word);
    }
    by_label.insert(g, a(k).multiply(&c(k)).multiply(&a(k + 1)));

    let mut entries: Vec<(String, Word)> = by_label
        .into_iter()
        .map(|(i, w)| (format!("B{i}"), w))
        .collect();
    entries.push((String::from("c"), c(k)));
    for j in 1..=2 * (n - 1) {
        entries.push((format!("e{j}"), Word::gen(2 * g + j - 1)));
    }
    Ok(CurveWordCatalog { k, n, entries })
}
