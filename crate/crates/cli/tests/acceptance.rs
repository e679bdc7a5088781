//! Acceptance suite: every verification gate of the project, one test
//! per criterion, each printing a PASS/FAIL line. All caps and
//! tolerances are pinned here (integer equalities are exact; timing
//! bounds get a slack factor under unoptimized builds).

use std::time::{Duration, Instant};

use exotic4_core::assemble::KeepNames;
use exotic4_core::blocks::{
    build_gurtas, build_korkmaz, build_luttinger_family_a, build_luttinger_family_b,
    lemma_certificates,
};
use exotic4_core::certificate::{search_certificate, verify_certificate, SearchBounds};
use exotic4_core::constructions::{
    build_x, build_x0, build_x_free, build_x_m, free_rank_parameters, verify_simply_connected,
    VerifyCaps,
};
use exotic4_core::grammar::parse_presentation;
use exotic4_core::presentation::Presentation;
use exotic4_core::snf::{abelianize, smith_normal_form};
use exotic4_core::surface::{dehn_is_trivial, standard_presentation};
use exotic4_core::todd_coxeter::{todd_coxeter, CosetTableStatus};
use exotic4_core::word::{Letter, Word};

/// Timing-bound slack for unoptimized builds; 1 under --release.
fn time_slack() -> u32 {
    if cfg!(debug_assertions) {
        25
    } else {
        1
    }
}

fn report(id: &str, name: &str, ok: bool, detail: &str) {
    println!(
        "[acceptance] criterion {id} ({name}): {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 1: for all (n,k) ∈ {1,2,3}², verify X(n,k) is Trivial with
// a Complete(1) coset table under cap 10⁶, each instance < 120 s.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_1_triviality_grid() {
    let caps = VerifyCaps::default();
    assert_eq!(caps.coset_cap, 1_000_000);
    let budget = Duration::from_secs(120) * time_slack();
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=3 {
        for k in 1..=3 {
            let t0 = Instant::now();
            let x = build_x(n, k).unwrap();
            let v = verify_simply_connected(&x, &caps);
            let elapsed = t0.elapsed();
            let good = v.is_trivial() && v.coset_index == Some(1) && elapsed < budget;
            if !good {
                ok = false;
            }
            detail.push_str(&format!("X({n},{k})={} in {elapsed:?}; ", v.status));
        }
    }

    // The same grid through the CLI front door.
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_exotic4"))
        .args([
            "verify", "X", "--n", "1", "--n", "2", "--n", "3", "--k", "1", "--k", "2", "--k", "3",
            "--jobs", "3",
        ])
        .output()
        .expect("binary runs");
    ok &= out.status.code() == Some(0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    ok &= stdout.matches("Trivial; cosets=1").count() == 9;

    report("1", "triviality grid", ok, &detail);
    assert!(ok, "{detail}");
}

// ────────────────────────────────────────────────────────────────────
// Criterion 2: m-family Trivial verdicts for (n,k) ∈
// {(1,1),(1,2),(2,1)} and m ∈ {2,3} under the same caps.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_2_m_family() {
    let caps = VerifyCaps::default();
    let mut ok = true;
    let mut detail = String::new();
    for (n, k) in [(1, 1), (1, 2), (2, 1)] {
        for m in [2i64, 3] {
            let x = build_x_m(n, k, m).unwrap();
            let v = verify_simply_connected(&x, &caps);
            if !v.is_trivial() || v.coset_index != Some(1) {
                ok = false;
            }
            if x.symplectic {
                ok = false; // |m| > 1 must drop the flag
            }
            detail.push_str(&format!("X({n},{k},{m})={}; ", v.status));
        }
    }
    report("2", "m-family triviality", ok, &detail);
    assert!(ok, "{detail}");
}

// ────────────────────────────────────────────────────────────────────
// Criterion 3: for all n,k ≤ 5, characteristic numbers equal
// (8n+4k−4, −4n, 4n+8k−8, n+k−1) exactly, identities hold, and the
// homeomorphism type is (2n+2k−3, 6n+2k−3); the (1,1) and (1,2)
// instances match (1,5) and (3,7). Runtime < 1 s total.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_3_characteristic_numbers() {
    let t0 = Instant::now();
    let mut ok = true;
    for n in 1..=5usize {
        for k in 1..=5usize {
            let x = build_x(n, k).unwrap();
            let c = x.char_numbers;
            let (ni, ki) = (n as i64, k as i64);
            ok &= c.e == 8 * ni + 4 * ki - 4;
            ok &= c.sigma == -4 * ni;
            ok &= c.c1sq == 4 * ni + 8 * ki - 8;
            ok &= c.chi_h == ni + ki - 1;
            ok &= c.c1sq == 3 * c.sigma + 2 * c.e;
            ok &= 4 * c.chi_h == c.e + c.sigma;
            // Homeo type from the ledger (b1 = 0 for every grid member).
            ok &= c.b1 == 0;
            ok &= c.b2plus == 2 * ni + 2 * ki - 3;
            ok &= c.b2minus == 6 * ni + 2 * ki - 3;
            assert!(ok, "char numbers wrong at ({n},{k}): {c:?}");
        }
    }
    let c11 = build_x(1, 1).unwrap().char_numbers;
    ok &= (c11.b2plus, c11.b2minus) == (1, 5);
    let c12 = build_x(1, 2).unwrap().char_numbers;
    ok &= (c12.b2plus, c12.b2minus) == (3, 7);
    let elapsed = t0.elapsed();
    ok &= elapsed < Duration::from_secs(1) * time_slack();
    report(
        "3",
        "characteristic numbers",
        ok,
        &format!("25 instances exact; (1,1)→(1,5), (1,2)→(3,7); {elapsed:?}"),
    );
    assert!(ok);
}

// ────────────────────────────────────────────────────────────────────
// Criterion 4: free-rank suite — k ∈ {3,4,5}, n ∈ {1,2} with the
// standard coefficient pattern give FreeOfRank(k−2): Tietze reaches
// k−2 generators / 0 relators and H₁ = ℤ^{k−2}; < 60 s per instance.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_4_free_rank() {
    let caps = VerifyCaps::default();
    let budget = Duration::from_secs(60) * time_slack();
    let mut ok = true;
    let mut detail = String::new();
    for k in [3usize, 4, 5] {
        for n in [1usize, 2] {
            let t0 = Instant::now();
            let (p, q) = free_rank_parameters(n, k);
            let x = build_x_free(n, k, &p, &q).unwrap();
            let v = verify_simply_connected(&x, &caps);
            let elapsed = t0.elapsed();
            let good = v.is_free_of_rank(k - 2)
                && v.simplified_gens == k - 2
                && v.simplified_relators == 0
                && v.h1.is_free_of_rank(k - 2)
                && elapsed < budget;
            if !good {
                ok = false;
            }
            detail.push_str(&format!("(n={n},k={k})→{} in {elapsed:?}; ", v.status));
        }
    }
    report("4", "free rank", ok, &detail);
    assert!(ok, "{detail}");
}

// ────────────────────────────────────────────────────────────────────
// Criterion 5: X₀ suite — for (n,k) ∈ {(1,1),(1,2)}, abelianization ℤ
// and a Tietze-reduced presentation ⟨one generator | ⟩.
//
// KNOWN RED, (1,2) instance: the group is provably not ℤ — it surjects
// onto a nonabelian ℤ²⋊ℤ (see `x0_with_k2_has_nonabelian_quotient` in
// the core pipeline tests), so no Tietze sequence can reach one
// generator and zero relators. The criterion is asserted as stated and
// the failure is the honest outcome.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_5_x0() {
    let caps = VerifyCaps::default();
    let mut ok = true;
    let mut detail = String::new();
    for (n, k) in [(1usize, 1usize), (1, 2)] {
        let x0 = build_x0(n, k).unwrap();
        let v = verify_simply_connected(&x0, &caps);
        let good = v.h1.is_free_of_rank(1) && v.simplified_gens == 1 && v.simplified_relators == 0;
        if !good {
            ok = false;
        }
        detail.push_str(&format!(
            "X({n},{k})_0: H1={}, tietze {} gens / {} relators; ",
            v.h1, v.simplified_gens, v.simplified_relators
        ));
    }
    detail.push_str("(the (1,2) failure is expected: that group surjects onto a nonabelian Z^2xZ)");
    report("5", "X0 suite", ok, &detail);
    assert!(ok, "{detail}");
}

// ────────────────────────────────────────────────────────────────────
// Criterion 6: block-relation certificates for k ∈ {1,2}: every
// relation of the fibration relation lemmas is validated by
// verify_certificate (certificates transcribed from the derivations,
// with bounded search covering the short ones), and every single-step
// sign-flip tamper is rejected.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_6_block_relation_certificates() {
    let mut ok = true;
    let mut n_certs = 0usize;
    let mut n_tampered = 0usize;
    for (k, n) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
        let block = if n == 1 {
            build_korkmaz(k).unwrap()
        } else {
            build_gurtas(n, k).unwrap()
        };
        let p = &block.complement_presentation;
        for (name, target, cert) in lemma_certificates(k, n) {
            let verified = verify_certificate(p, &target, &cert).unwrap();
            if !verified {
                ok = false;
                println!("certificate `{name}` failed in {}", block.label);
            }
            n_certs += 1;
            // Tamper every step, one sign flip at a time.
            for i in 0..cert.steps.len() {
                let mut bad = cert.clone();
                bad.steps[i].sign = -bad.steps[i].sign;
                if verify_certificate(p, &target, &bad).unwrap() {
                    ok = false;
                    println!("tampered certificate `{name}` (step {i}) was accepted");
                }
                n_tampered += 1;
            }
        }
    }

    // The b-product witness for k = 2 stays within small bounds, and
    // bounded search finds the single-relator instances by itself.
    let y2 = build_korkmaz(2).unwrap();
    let p2 = &y2.complement_presentation;
    let b_product = lemma_certificates(2, 1)
        .into_iter()
        .find(|(name, _, _)| name.contains("b2..b3"))
        .expect("k=2 b-product present");
    let (_, target, cert) = b_product;
    ok &= verify_certificate(p2, &target, &cert).unwrap();
    ok &= cert.steps.len() <= 5;
    ok &= cert.steps.iter().all(|s| s.conjugator.len() <= 12);

    // search_certificate: a relator and a conjugate of it.
    let b0 = p2.relators()[1].clone(); // B0 after the surface relator
    let found = search_certificate(p2, &b0, SearchBounds::new(3, 4));
    ok &= found
        .map(|c| verify_certificate(p2, &b0, &c).unwrap())
        .unwrap_or(false);
    let conj = b0.conjugated_by(&Word::gen(0));
    let found = search_certificate(p2, &conj, SearchBounds::new(3, 4));
    ok &= found
        .map(|c| verify_certificate(p2, &conj, &c).unwrap())
        .unwrap_or(false);

    report(
        "6",
        "block-relation certificates",
        ok,
        &format!("{n_certs} certificates verified, {n_tampered} tampered variants rejected"),
    );
    assert!(ok);
}

// ────────────────────────────────────────────────────────────────────
// Criterion 7: golden-file structural equality — generated
// presentations for the two surgered product families (n = 2, unit
// parameters) and for the merged X(1,1) match the frozen
// transcriptions up to free/cyclic reduction and relator order.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_7_golden_files() {
    let mut ok = true;
    let mut detail = String::new();

    let golden_a = parse_presentation(include_str!("data/y2_family_a.fp"), "golden A").unwrap();
    let built_a = build_luttinger_family_a(2, &[1, 1], &[1, 1]).unwrap();
    let got_a = &built_a.complement_presentation;
    let same_a = got_a.generator_names() == golden_a.generator_names()
        && got_a.relator_canonical_set() == golden_a.relator_canonical_set();
    ok &= same_a;
    detail.push_str(&format!(
        "family A: {} relators {}; ",
        got_a.relators().len(),
        if same_a { "match" } else { "MISMATCH" }
    ));

    let golden_b = parse_presentation(include_str!("data/y2_family_b.fp"), "golden B").unwrap();
    let built_b = build_luttinger_family_b(2, 1, 1, 1).unwrap();
    let got_b = &built_b.complement_presentation;
    let same_b = got_b.generator_names() == golden_b.generator_names()
        && got_b.relator_canonical_set() == golden_b.relator_canonical_set();
    ok &= same_b;
    detail.push_str(&format!(
        "family B: {} relators {}; ",
        got_b.relators().len(),
        if same_b { "match" } else { "MISMATCH" }
    ));

    let golden_x = parse_presentation(include_str!("data/x_1_1.fp"), "golden X11").unwrap();
    let x = build_x(1, 1).unwrap();
    let merged = x.identified(KeepNames::A);
    let same_x = merged.generator_names() == golden_x.generator_names()
        && merged.relator_canonical_set() == golden_x.relator_canonical_set();
    ok &= same_x;
    detail.push_str(&format!(
        "X(1,1): {} distinct relators {}",
        merged.relator_canonical_set().len(),
        if same_x { "match" } else { "MISMATCH" }
    ));

    // The frozen transcription is itself a usable presentation: its
    // abelianization vanishes and enumeration closes at index 1.
    ok &= abelianize(&golden_x).is_trivial();
    let table = todd_coxeter(&golden_x, &[], 100_000);
    ok &= matches!(table.status(), CosetTableStatus::Complete(1));

    report("7", "golden files", ok, &detail);
    assert!(ok, "{detail}");
}

// ────────────────────────────────────────────────────────────────────
// Criterion 8: engine property suite — 10⁴ randomized word-algebra
// cases; Dehn's algorithm vs bounded certificate search on the
// exhaustive set of freely reduced words of length ≤ 6 in genus 2; SNF
// agreement with two independent oracles on 100 random small matrices.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_8_engine_properties() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0E40_71C5);

    // 1) Word algebra, 10⁴ cases.
    let ngens = 6usize;
    let rand_word = |rng: &mut rand_chacha::ChaCha8Rng, maxlen: usize| {
        let len = rng.gen_range(0..=maxlen);
        Word::from_letters(
            (0..len)
                .map(|_| Letter::new(rng.gen_range(0..ngens), rng.gen_bool(0.5)))
                .collect(),
        )
    };
    for _ in 0..10_000 {
        let u = rand_word(&mut rng, 12);
        let v = rand_word(&mut rng, 12);
        let ru = u.reduce();
        assert_eq!(ru.reduce(), ru, "reduce must be idempotent");
        assert!(ru.len() <= u.len(), "reduce never increases length");
        assert!(u.multiply(&u.inverse()).is_empty(), "u·u⁻¹ = 1");
        assert_eq!(
            u.multiply(&v),
            ru.multiply(&v.reduce()),
            "multiplication respects reduction"
        );
        // map is a homomorphism on reduced words.
        let images: Vec<Word> = (0..ngens).map(|_| rand_word(&mut rng, 3)).collect();
        let lhs = u.multiply(&v).map(&images).unwrap();
        let rhs = u.map(&images).unwrap().multiply(&v.map(&images).unwrap());
        assert_eq!(lhs, rhs.reduce(), "map_word homomorphism law");
        assert!(u.commutator(&u).is_empty(), "[u,u] = 1");
        assert!(u.pow(0).is_empty(), "w^0 = 1");
    }

    // 2) Dehn vs certificate search, exhaustively over freely reduced
    // words of length ≤ 6 in genus 2 (both procedures freely reduce
    // first, so reduced words cover every word of length ≤ 6).
    let surface = standard_presentation(2).unwrap();
    let bounds = SearchBounds {
        max_steps: 2,
        max_conjugator_length: 6,
        max_nodes: 40,
    };
    let letters: Vec<Letter> = (0..4)
        .flat_map(|g| [Letter::gen(g), Letter::inv(g)])
        .collect();
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut checked = 0usize;
    while let Some(cur) = stack.pop() {
        let w = Word::from_letters(cur.clone());
        let dehn = dehn_is_trivial(&w, 2);
        let cert = search_certificate(&surface, &w, bounds);
        if let Some(c) = &cert {
            assert!(
                verify_certificate(&surface, &w, c).unwrap(),
                "search returned an invalid certificate for {w:?}"
            );
        }
        assert_eq!(
            dehn,
            cert.is_some(),
            "Dehn and certificate search disagree on {w:?}"
        );
        checked += 1;
        if cur.len() < 6 {
            for &l in &letters {
                if cur.last() != Some(&l.inverse()) {
                    let mut next = cur.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }
    assert_eq!(checked, 156_865, "exhaustive reduced-word count");

    // 3) SNF vs two independent oracles on 100 random small matrices.
    for case in 0..100 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let got = smith_normal_form(&m);
        let naive = naive_snf(&m);
        assert_eq!(got, naive, "case {case}: naive oracle disagrees on {m:?}");
        if rows <= 4 && cols <= 4 {
            let minors = minor_gcd_snf(&m);
            assert_eq!(got, minors, "case {case}: minor oracle disagrees on {m:?}");
        }
    }

    report(
        "8",
        "engine properties",
        true,
        &format!("10^4 word cases; {checked} reduced words ≤ 6; 100 SNF cases"),
    );
}

/// Textbook elementary-operations SNF, written independently of the
/// library version (no rounding division: repeated subtract-smallest).
#[allow(clippy::needless_range_loop)]
fn naive_snf(matrix: &[Vec<i64>]) -> Vec<i128> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // Find any nonzero entry in the submatrix; smallest |value|.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            if m[t][t] < 0 {
                for j in t..cols {
                    m[t][j] = -m[t][j];
                }
            }
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(p);
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                    if m[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(p);
                    for i in t..rows {
                        m[i][j] -= q * m[i][t];
                    }
                    if m[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Divisibility of the remaining block.
            let mut fixed = true;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % p != 0 {
                        for jj in t..cols {
                            let v = m[i][jj];
                            m[t][jj] += v;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    let mut diag: Vec<i128> = (0..n).map(|t| m[t][t].abs()).collect();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diag[i], diag[j]);
            if a == 0 && b != 0 {
                diag[i] = b;
                diag[j] = 0;
            } else if a != 0 && b % a != 0 {
                let g = gcd128(a, b);
                diag[i] = g;
                diag[j] = a / g * b;
            }
        }
    }
    diag
}

/// Determinantal-divisor oracle: dₖ = Dₖ/Dₖ₋₁ with Dₖ the gcd of all
/// k×k minors. A completely different route to the invariant factors.
fn minor_gcd_snf(matrix: &[Vec<i64>]) -> Vec<i128> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let n = rows.min(cols);
    let mut dk: Vec<i128> = Vec::with_capacity(n + 1);
    dk.push(1);
    for k in 1..=n {
        let mut g: i128 = 0;
        for ri in combinations(rows, k) {
            for ci in combinations(cols, k) {
                let det = minor_det(matrix, &ri, &ci);
                g = gcd128(g, det);
            }
        }
        dk.push(g);
    }
    (1..=n)
        .map(|k| if dk[k] == 0 { 0 } else { dk[k] / dk[k - 1] })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn minor_det(m: &[Vec<i64>], ri: &[usize], ci: &[usize]) -> i128 {
    let k = ri.len();
    if k == 1 {
        return m[ri[0]][ci[0]] as i128;
    }
    let mut det: i128 = 0;
    for (col, &c) in ci.iter().enumerate() {
        let sub_ci: Vec<usize> = ci.iter().copied().filter(|&x| x != c).collect();
        let sub = minor_det(m, &ri[1..], &sub_ci);
        let term = (m[ri[0]][c] as i128) * sub;
        if col % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ────────────────────────────────────────────────────────────────────
// Criterion 9: determinism — repeated runs produce byte-identical
// manifests modulo the timing field, in-process and through the CLI.
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_9_determinism() {
    use exotic4_cli::families::{build_family, Params};
    use exotic4_cli::manifest::{manifold_manifest, strip_timing};
    use exotic4_core::constructions::verify_pi1;

    let mut ok = true;

    // In-process: build + verify twice for several recipes.
    for (family, n, k) in [("X", 1usize, 2usize), ("X0", 1, 1), ("Xfree", 1, 3)] {
        let params = Params {
            n: Some(n),
            k: Some(k),
            ..Default::default()
        };
        let jsons: Vec<String> = (0..2)
            .map(|_| {
                let (recipe, built) = build_family(family, &params).unwrap();
                match built {
                    exotic4_cli::families::Built::Manifold { manifold, keep, .. } => {
                        let v = verify_pi1(&manifold.identified(keep), &VerifyCaps::default());
                        strip_timing(
                            &manifold_manifest(recipe, &manifold, keep, Some(&v), 0).to_json(),
                        )
                    }
                    exotic4_cli::families::Built::Block(_) => unreachable!(),
                }
            })
            .collect();
        if jsons[0] != jsons[1] {
            ok = false;
            println!("in-process nondeterminism for {family}({n},{k})");
        }
    }

    // Through the binary.
    let exe = env!("CARGO_BIN_EXE_exotic4");
    let run = || {
        let out = std::process::Command::new(exe)
            .args(["build", "X", "--n", "1", "--k", "1"])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        strip_timing(&String::from_utf8(out.stdout).unwrap())
    };
    if run() != run() {
        ok = false;
        println!("CLI build output is nondeterministic");
    }

    let verify_run = || {
        let out = std::process::Command::new(exe)
            .args(["verify", "X", "--n", "1", "--k", "1"])
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    if verify_run() != verify_run() {
        ok = false;
        println!("CLI verify output is nondeterministic");
    }

    report(
        "9",
        "determinism",
        ok,
        "manifests byte-identical modulo timing",
    );
    assert!(ok);
}

// ────────────────────────────────────────────────────────────────────
// CLI exit-code contract and format round-trips (External Interfaces).
// ────────────────────────────────────────────────────────────────────
#[test]
fn cli_exit_codes_and_round_trips() {
    let exe = env!("CARGO_BIN_EXE_exotic4");
    let run = |args: &[&str]| {
        std::process::Command::new(exe)
            .args(args)
            .output()
            .expect("binary runs")
    };

    // Usage errors exit 2.
    let out = run(&["build", "X", "--n", "0", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["build", "X", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["build", "nonsense", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Verified claims exit 0 with the stated evidence line.
    let out = run(&["verify", "X", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("Trivial; cosets=1"), "{stdout}");

    let out = run(&["verify", "Xfree", "--n", "1", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FreeOfRank(1)"), "{stdout}");

    let out = run(&["verify", "X0", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("InfiniteCyclic"), "{stdout}");

    // A starved cap is Undecided, exit 1.
    let out = run(&["verify", "X", "--n", "1", "--k", "1", "--coset-cap", "1"]);
    assert_eq!(out.status.code(), Some(1));

    // The environment override behaves like the flag.
    let out = std::process::Command::new(exe)
        .args(["verify", "X", "--n", "1", "--k", "1"])
        .env("EXOTIC4_COSET_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Grid verification with --jobs.
    let out = run(&[
        "verify", "X", "--n", "1", "--n", "2", "--k", "1", "--k", "2", "--jobs", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    for label in ["X(1,1)", "X(1,2)", "X(2,1)", "X(2,2)"] {
        assert!(stdout.contains(label), "missing {label} in {stdout}");
    }

    // Manifest round-trip: build → verify --manifest; then tamper → 3.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x11.json");
    let out = run(&[
        "build",
        "X",
        "--n",
        "1",
        "--k",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let tampered = std::fs::read_to_string(&path)
        .unwrap()
        .replace("b1*b2", "b1*b2^-1");
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, tampered).unwrap();
    let out = run(&["verify", "--manifest", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // Export: fp-text parses back to the same normalized presentation.
    let out = run(&["export", "X", "--n", "1", "--k", "1", "--format", "fp-text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let p = parse_presentation(text.trim(), "exported").unwrap();
    let rebuilt = build_x(1, 1).unwrap().identified(KeepNames::A);
    assert!(presentations_identical(&p, &rebuilt));
    // Relator count matches the frozen transcription's distinct count.
    let golden = parse_presentation(include_str!("data/x_1_1.fp"), "golden").unwrap();
    assert_eq!(
        p.relator_canonical_set().len(),
        golden.relator_canonical_set().len()
    );

    // Unknown export format.
    let out = run(&["export", "X", "--n", "1", "--k", "1", "--format", "xml"]);
    assert_eq!(out.status.code(), Some(2));

    // Curve catalog dump.
    let out = run(&["curves", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("B0 = b1*b2"), "{stdout}");

    // Block verification runs the relation-lemma certificate battery.
    let out = run(&["verify", "block:korkmaz", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("certificate"), "{stdout}");
    assert!(stdout.contains("verified"), "{stdout}");

    // Block manifest carries the expected ledger and discrepancy note.
    let out = run(&["build", "block:gurtas", "--n", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let m = exotic4_cli::manifest::Manifest::from_json(&String::from_utf8(out.stdout).unwrap())
        .unwrap();
    assert_eq!(m.char.e, 8);
    assert_eq!(m.char.sigma, -8);
    assert_eq!(m.sections, Some(8));
    assert!(!m.discrepancies.is_empty());
    assert_eq!(m.boundary.as_ref().map(|b| b.genus), Some(3));
    assert_eq!(m.boundary.as_ref().map(|b| b.meridian.as_str()), Some("1"));

    println!("[acceptance] CLI exit-code contract: PASS");
}

fn presentations_identical(a: &Presentation, b: &Presentation) -> bool {
    a.generator_names() == b.generator_names() && a.relators() == b.relators()
}
