//! Bounded realization of the orbit oracle: per-step exact predicates
//! combined with orbit cycle detection.
//!
//! Each run walks the orbit `u, uφ, uφ², …` (or its conjugacy classes) and
//! evaluates an exact predicate at every step. Three outcomes are possible:
//! `FoundAt(k)` with the *minimal* hit (exact, replayable), `NoNever` when a
//! revisited state proves the orbit periodic with no hit anywhere in the
//! cycle (sound), and `Unknown` when the step or memory budget ran out
//! before either certificate appeared. An aperiodic orbit with no hit can
//! only ever surface as `Unknown` — never as a guessed no.

use std::collections::HashMap;

use crate::endo::Endomorphism;
use crate::stallings::StallingsAutomaton;
use crate::word::Word;

/// Which orbit states feed the cycle detector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CycleMode {
    /// The reduced orbit words themselves.
    ExactWord,
    /// Canonical cyclic forms. The successor of a class is well defined
    /// because conjugate words have conjugate images.
    CyclicClass,
}

/// Step and memory budgets for an oracle run.
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Orbit steps to test before giving up.
    pub max_depth: usize,
    /// Total letters across stored orbit states; exceeding it aborts the
    /// run to `Unknown` with the depth reached.
    pub length_budget: usize,
}

impl Default for OracleConfig {
    fn default() -> OracleConfig {
        OracleConfig { max_depth: 10_000, length_budget: 1_000_000 }
    }
}

impl OracleConfig {
    pub fn with_max_depth(max_depth: usize) -> OracleConfig {
        OracleConfig { max_depth, ..OracleConfig::default() }
    }
}

/// Outcome of an oracle run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleAnswer {
    /// The predicate holds at step `k` and at no smaller step.
    FoundAt(usize),
    /// The orbit closed a cycle with the predicate false everywhere, so no
    /// step can ever satisfy it.
    NoNever,
    /// Neither certificate within the budgets; the payload is the number of
    /// steps that were fully tested.
    Unknown(usize),
}

/// One tested orbit step: the state (exact word or canonical cyclic form),
/// and the predicate value when one was evaluated.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub index: usize,
    pub word: Word,
    pub predicate: Option<bool>,
}

/// Record of an oracle run or a plain orbit walk.
#[derive(Clone, Debug)]
pub struct OrbitTrace {
    pub steps: Vec<TraceStep>,
    /// `(preperiod, period)` when a state repeated.
    pub cycle: Option<(usize, usize)>,
}

/// Walks the orbit of `u` and reports the first state repetition as
/// `(preperiod, period)`, or `None` when no repetition shows up within
/// `max_depth` applications of `phi`.
pub fn detect_orbit_cycle(
    phi: &Endomorphism,
    u: &Word,
    max_depth: usize,
    mode: CycleMode,
) -> Option<(usize, usize)> {
    assert!(max_depth >= 1);
    let project = |w: &Word| match mode {
        CycleMode::ExactWord => w.clone(),
        CycleMode::CyclicClass => w.cyclic_canonical(),
    };
    let mut seen: HashMap<Word, usize> = HashMap::new();
    let mut state = project(u);
    for k in 0..=max_depth {
        if let Some(&j) = seen.get(&state) {
            return Some((j, k - j));
        }
        if k == max_depth {
            break;
        }
        seen.insert(state.clone(), k);
        state = project(&phi.apply(&state));
    }
    None
}

/// Plain orbit walk with no predicate: records up to `max_depth` states
/// (exact words or canonical cyclic forms) and stops early on a repeated
/// state or an exhausted length budget.
pub fn orbit_trace(
    phi: &Endomorphism,
    u: &Word,
    cfg: &OracleConfig,
    mode: CycleMode,
) -> OrbitTrace {
    let project = |w: &Word| match mode {
        CycleMode::ExactWord => w.clone(),
        CycleMode::CyclicClass => w.cyclic_canonical(),
    };
    let mut trace = OrbitTrace { steps: Vec::new(), cycle: None };
    let mut seen: HashMap<Word, usize> = HashMap::new();
    let mut state = project(u);
    let mut spent = 0usize;
    for k in 0..cfg.max_depth {
        spent += state.len() + 1;
        if spent > cfg.length_budget {
            break;
        }
        if let Some(&j) = seen.get(&state) {
            trace.cycle = Some((j, k - j));
            break;
        }
        trace.steps.push(TraceStep { index: k, word: state.clone(), predicate: None });
        seen.insert(state.clone(), k);
        state = project(&phi.apply(&state));
    }
    trace
}

/// Shared runner: cycle detection plus a per-step predicate over the
/// projected orbit.
fn run_oracle(
    phi: &Endomorphism,
    u: &Word,
    cfg: &OracleConfig,
    mode: CycleMode,
    mut pred: impl FnMut(&Word) -> bool,
    want_trace: bool,
) -> (OracleAnswer, OrbitTrace) {
    let project = |w: &Word| match mode {
        CycleMode::ExactWord => w.clone(),
        CycleMode::CyclicClass => w.cyclic_canonical(),
    };
    let mut trace = OrbitTrace { steps: Vec::new(), cycle: None };
    let mut seen: HashMap<Word, usize> = HashMap::new();
    let mut state = project(u);
    let mut spent = 0usize;
    for k in 0..cfg.max_depth {
        spent += state.len() + 1;
        if spent > cfg.length_budget {
            return (OracleAnswer::Unknown(k), trace);
        }
        if let Some(&j) = seen.get(&state) {
            trace.cycle = Some((j, k - j));
            return (OracleAnswer::NoNever, trace);
        }
        let hit = pred(&state);
        if want_trace {
            trace.steps.push(TraceStep { index: k, word: state.clone(), predicate: Some(hit) });
        }
        if hit {
            return (OracleAnswer::FoundAt(k), trace);
        }
        seen.insert(state.clone(), k);
        state = project(&phi.apply(&state));
    }
    (OracleAnswer::Unknown(cfg.max_depth), trace)
}

/// Decides `∃k ≥ 0: uφ^k ∈ v1·ker(φ)` within the budgets. The per-step test
/// `(uφ^k)φ = (v1)φ` is exact; cycle detection runs on the exact orbit
/// words.
pub fn oracle_coset_membership(
    u: &Word,
    v1: &Word,
    phi: &Endomorphism,
    cfg: &OracleConfig,
) -> OracleAnswer {
    oracle_coset_membership_traced(u, v1, phi, cfg, false).0
}

pub fn oracle_coset_membership_traced(
    u: &Word,
    v1: &Word,
    phi: &Endomorphism,
    cfg: &OracleConfig,
    want_trace: bool,
) -> (OracleAnswer, OrbitTrace) {
    assert_eq!(u.rank(), phi.rank(), "rank mismatch");
    assert_eq!(v1.rank(), phi.rank(), "rank mismatch");
    let target = phi.apply(v1);
    run_oracle(
        phi,
        u,
        cfg,
        CycleMode::ExactWord,
        |state| phi.apply(state) == target,
        want_trace,
    )
}

/// Decides `∃k ≥ 0: uφ^k ∼ v·ker(φ)` within the budgets. The per-step test
/// is [`conj_into_coset`]; cycle detection runs on canonical cyclic forms,
/// which is sound because the predicate and the successor both depend only
/// on the conjugacy class.
pub fn oracle_conj_coset(
    u: &Word,
    v: &Word,
    phi: &Endomorphism,
    cfg: &OracleConfig,
) -> OracleAnswer {
    oracle_conj_coset_traced(u, v, phi, cfg, false).0
}

pub fn oracle_conj_coset_traced(
    u: &Word,
    v: &Word,
    phi: &Endomorphism,
    cfg: &OracleConfig,
    want_trace: bool,
) -> (OracleAnswer, OrbitTrace) {
    assert_eq!(u.rank(), phi.rank(), "rank mismatch");
    assert_eq!(v.rank(), phi.rank(), "rank mismatch");
    let image_aut = phi.image_automaton();
    let target = phi.apply(v);
    run_oracle(
        phi,
        u,
        cfg,
        CycleMode::CyclicClass,
        |state| conj_into_coset_inner(state, &target, phi, &image_aut).is_some(),
        want_trace,
    )
}

/// Exact test of `u1 ∼ v·ker(φ)`: does some conjugate of `u1` lie in the
/// kernel coset of `v`?
///
/// Unfolding the definitions: `∃g: (g⁻¹·u1·g)φ = (v)φ`, equivalently
/// `∃h ∈ im(φ): h⁻¹·A·h = B` with `A = (u1)φ`, `B = (v)φ`. When `A` and `B`
/// are nontrivial and conjugate, the conjugators of `A` to `B` form the
/// cyclic coset `⟨root(A)⟩·g₀`, and intersecting it with `im(φ)` is a
/// [`StallingsAutomaton::coset_intersects`] query after rewriting everything
/// against the cyclically reduced core of `A`.
pub fn conj_into_coset(u1: &Word, v: &Word, phi: &Endomorphism) -> bool {
    assert_eq!(u1.rank(), phi.rank(), "rank mismatch");
    assert_eq!(v.rank(), phi.rank(), "rank mismatch");
    let image_aut = phi.image_automaton();
    conj_into_coset_inner(u1, &phi.apply(v), phi, &image_aut).is_some()
}

/// Like [`conj_into_coset`], but returns a witness `g` with
/// `(g⁻¹·u1·g)φ = (v)φ` on success.
pub fn conj_into_coset_witness(u1: &Word, v: &Word, phi: &Endomorphism) -> Option<Word> {
    let image_aut = phi.image_automaton();
    let h = conj_into_coset_inner(u1, &phi.apply(v), phi, &image_aut)?;
    // h ∈ im(φ) conjugates (u1)φ to (v)φ; any φ-preimage of h conjugates u1
    // into the kernel coset of v.
    let g = crate::stallings::preimage(phi, &h).expect("witness lies in the image");
    debug_assert_eq!(phi.apply(&u1.conjugate_by(&g)), phi.apply(v));
    Some(g)
}

/// Core of the coset-conjugacy test against a prebuilt image automaton;
/// `target` is `(v)φ`. Returns `h ∈ im(φ)` with `h⁻¹·(u1)φ·h = target`.
fn conj_into_coset_inner(
    u1: &Word,
    target: &Word,
    phi: &Endomorphism,
    image_aut: &StallingsAutomaton,
) -> Option<Word> {
    let a = phi.apply(u1);
    let b = target;
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Some(Word::identity(phi.rank())),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    // A = c·Â·c⁻¹ with Â cyclically reduced; substituting ĥ = c⁻¹h turns the
    // equation h⁻¹·A·h = B into ĥ⁻¹·Â·ĥ = B with ĥ ranging over c⁻¹·im(φ).
    let cyc = a.cyclically_reduce();
    let a_core = cyc.canonical();
    let c = cyc.conjugator();
    let g0 = a_core.conjugator_to(b)?;
    let (root, _) = a_core.primitive_root();
    // ĥ ranges over ⟨root⟩·g0; ĥ ∈ c⁻¹·H ⟺ ĥ·c ∈ c⁻¹·H·c
    let (k_aut, shifted);
    if c.is_empty() {
        k_aut = None;
        shifted = g0.clone();
    } else {
        let conj_gens: Vec<Word> =
            phi.images().iter().map(|img| img.conjugate_by(c)).collect();
        k_aut = Some(StallingsAutomaton::build(phi.rank(), &conj_gens));
        shifted = g0.multiply(c);
    }
    let aut = k_aut.as_ref().unwrap_or(image_aut);
    let m = aut.coset_intersects(&root, &shifted)?;
    let h_hat = root.pow(m).multiply(&g0);
    let h = c.multiply(&h_hat);
    debug_assert!(image_aut.member(&h));
    debug_assert_eq!(&a.conjugate_by(&h), b);
    Some(h)
}
