//! Freely reduced words over the generators of a free group of runtime rank.
//!
//! A [`Word`] is the unique reduced spelling of an element of `F_n`: no
//! letter is adjacent to its own inverse, and the empty word is the group
//! identity. All operations reduce their results, so a `Word` observed
//! anywhere in this crate is reduced.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// One letter of a word: a generator index (1-based) with an orientation.
///
/// Packed as a nonzero signed integer: `+g` is the generator `x_g`, `-g` is
/// its inverse. Rank is a runtime parameter, so letters carry an index
/// rather than a character.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    /// Letter for generator `generator` (1-based); `inverse` selects x_g⁻¹.
    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(
            generator >= 1 && generator <= i32::MAX as usize,
            "generator index must be in [1, i32::MAX]"
        );
        let g = generator as i32;
        Letter(if inverse { -g } else { g })
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Key for the total order a₁ < a₁⁻¹ < a₂ < a₂⁻¹ < …
    fn order_key(self) -> (usize, bool) {
        (self.generator(), self.is_inverse())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Letter) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Letter) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render_letter(*self))
    }
}

/// A freely reduced word over `rank` generators. The empty word is the
/// identity element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

/// Stack-based free reduction of an arbitrary letter sequence.
fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl Word {
    /// The identity element of `F_rank`.
    pub fn identity(rank: usize) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// The single-letter word x_g.
    pub fn generator(rank: usize, generator: usize) -> Word {
        assert!(generator >= 1 && generator <= rank, "generator out of rank");
        Word { rank, letters: vec![Letter::new(generator, false)] }
    }

    /// Freely reduces `letters` into a word of the given rank.
    ///
    /// This is the only constructor that accepts raw letter sequences; it
    /// rejects letters whose generator index exceeds `rank`.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Word> {
        let raw: Vec<Letter> = letters.into_iter().collect();
        for l in &raw {
            if l.generator() > rank {
                return Err(Error::GeneratorOutOfRank { generator: l.generator(), rank });
            }
        }
        Ok(Word { rank, letters: reduce_letters(raw) })
    }

    /// Internal constructor for sequences already known to be reduced and
    /// within rank.
    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.iter().all(|l| l.generator() <= rank));
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Product in the free group: concatenation followed by free reduction.
    ///
    /// Panics if the ranks differ.
    pub fn multiply(&self, other: &Word) -> Word {
        assert_eq!(self.rank, other.rank, "rank mismatch in multiply");
        let mut out = self.letters.clone();
        for &l in &other.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { rank: self.rank, letters: out }
    }

    /// Reversed sequence with flipped orientations; `u · u⁻¹` is the identity.
    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word { rank: self.rank, letters }
    }

    /// `g⁻¹ · self · g`, reduced.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.inverse().multiply(self).multiply(g)
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..exponent.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Replaces every letter x_g^± by `images[g-1]^±` and reduces.
    ///
    /// `images` must hold exactly `self.rank()` words of one common rank;
    /// the result lives in that rank.
    pub fn substitute(&self, images: &[Word]) -> Word {
        assert_eq!(images.len(), self.rank, "one image per generator required");
        let out_rank = images.first().map_or(0, |w| w.rank);
        assert!(images.iter().all(|w| w.rank == out_rank), "image ranks differ");
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.letters {
            let img = &images[l.generator() - 1];
            if l.is_inverse() {
                for im in img.letters.iter().rev() {
                    let im = im.inverse();
                    if out.last() == Some(&im.inverse()) {
                        out.pop();
                    } else {
                        out.push(im);
                    }
                }
            } else {
                for &im in &img.letters {
                    if out.last() == Some(&im.inverse()) {
                        out.pop();
                    } else {
                        out.push(im);
                    }
                }
            }
        }
        Word { rank: out_rank, letters: out }
    }

    /// Strips conjugating prefixes and rotates to the canonical form.
    ///
    /// The returned parts satisfy `canonical = conjugator⁻¹ · self · conjugator`
    /// with `canonical` cyclically reduced and lexicographically least among
    /// its rotations (under a₁ < a₁⁻¹ < a₂ < a₂⁻¹ < …).
    pub fn cyclically_reduce(&self) -> CyclicWord {
        let ls = &self.letters;
        let mut i = 0;
        let mut j = ls.len();
        while j - i >= 2 && ls[i] == ls[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        // self = p · core · p⁻¹ literally, with p = ls[..i].
        let core = &ls[i..j];
        if core.is_empty() {
            return CyclicWord {
                canonical: Word::identity(self.rank),
                conjugator: Word::identity(self.rank),
            };
        }
        let rot = least_rotation(core);
        let mut canonical = Vec::with_capacity(core.len());
        canonical.extend_from_slice(&core[rot..]);
        canonical.extend_from_slice(&core[..rot]);
        // conjugator = p · core[..rot]; a prefix of the reduced word p·core,
        // hence reduced as written.
        let mut conj = Vec::with_capacity(i + rot);
        conj.extend_from_slice(&ls[..i]);
        conj.extend_from_slice(&core[..rot]);
        CyclicWord {
            canonical: Word::from_reduced_unchecked(self.rank, canonical),
            conjugator: Word::from_reduced_unchecked(self.rank, conj),
        }
    }

    /// Canonical cyclic form alone (conjugacy-class representative).
    pub fn cyclic_canonical(&self) -> Word {
        self.cyclically_reduce().canonical
    }

    /// Whether the two words are conjugate in the free group.
    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        assert_eq!(self.rank, other.rank, "rank mismatch in conjugacy test");
        self.cyclic_canonical() == other.cyclic_canonical()
    }

    /// A conjugator `g` with `g⁻¹ · self · g = other`, if the words are
    /// conjugate. The witness is normalized to the shortest valid choice
    /// (ties broken by the letter order), which keeps reports deterministic.
    pub fn conjugator_to(&self, other: &Word) -> Option<Word> {
        assert_eq!(self.rank, other.rank, "rank mismatch in conjugacy test");
        if self.is_empty() || other.is_empty() {
            return (self.is_empty() && other.is_empty()).then(|| Word::identity(self.rank));
        }
        let cu = self.cyclically_reduce();
        let cv = other.cyclically_reduce();
        if cu.canonical != cv.canonical {
            return None;
        }
        let g = cu.conjugator.multiply(&cv.conjugator.inverse());
        // Every conjugator is root(self)^m · g; the shortest lies in a small
        // window of exponents because |root^m · g| grows linearly in |m|.
        let (root, _) = self.primitive_root();
        let m_bound = 2 * g.len() as i64 + 2;
        let mut best = g.clone();
        for m in -m_bound..=m_bound {
            let cand = root.pow(m).multiply(&g);
            if word_shortlex(&cand, &best) == Ordering::Less {
                best = cand;
            }
        }
        debug_assert_eq!(&self.conjugate_by(&best), other);
        Some(best)
    }

    /// The primitive root: the unique shortest `r` with `self = r^e`, `e`
    /// maximal. Panics on the identity, which is a proper power of
    /// everything.
    pub fn primitive_root(&self) -> (Word, usize) {
        assert!(!self.is_empty(), "the identity has no primitive root");
        let cyc = self.cyclically_reduce();
        let canon = cyc.canonical.letters();
        let n = canon.len();
        let mut period = n;
        for p in 1..=n {
            if n % p == 0 && (p..n).all(|i| canon[i] == canon[i - p]) {
                period = p;
                break;
            }
        }
        let root_core = Word::from_reduced_unchecked(self.rank, canon[..period].to_vec());
        // self = w · canon · w⁻¹ with w the conjugator, so the root of self
        // is the root of canon conjugated back.
        let w = &cyc.conjugator;
        let root = w.multiply(&root_core).multiply(&w.inverse());
        (root, n / period)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}, rank {})", crate::text::render_word(self), self.rank)
    }
}

/// Shortlex order on words: by length, then letterwise.
pub(crate) fn word_shortlex(a: &Word, b: &Word) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| {
            for (x, y) in a.letters().iter().zip(b.letters()) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
}

/// Index of the lexicographically least rotation (Booth's two-pointer
/// tournament, linear time). Ties resolve to the smallest index.
pub(crate) fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i = i + k + 1;
            if i == j {
                i += 1;
            }
        } else {
            j = j + k + 1;
            if j == i {
                j += 1;
            }
        }
        k = 0;
    }
    i.min(j)
}

/// A conjugacy-class representative with its witness.
///
/// `canonical = conjugator⁻¹ · original · conjugator`, so the original word
/// is recovered as `conjugator · canonical · conjugator⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclicWord {
    pub(crate) canonical: Word,
    pub(crate) conjugator: Word,
}

impl CyclicWord {
    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    pub fn conjugator(&self) -> &Word {
        &self.conjugator
    }

    pub fn into_parts(self) -> (Word, Word) {
        (self.canonical, self.conjugator)
    }
}
