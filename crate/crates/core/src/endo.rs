//! Endomorphisms of the free group, given by the tuple of generator images.
//!
//! The action is written on the right throughout: `apply(φ, u)` is `(u)φ`,
//! and `compose(φ, ψ)` is the map `u ↦ ((u)φ)ψ`. Images may be empty or
//! cancel each other; non-injective endomorphisms are first-class.

use crate::error::{Error, Result};
use crate::word::Word;

/// A homomorphism `F_n → F_n`, determined by the images of the generators:
/// `images[i]` is `(x_{i+1})φ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl Endomorphism {
    /// Builds an endomorphism of rank `images.len()`. Every image must be a
    /// word of that same rank.
    pub fn new(images: Vec<Word>) -> Result<Endomorphism> {
        let rank = images.len();
        for img in &images {
            if img.rank() != rank {
                return Err(Error::GeneratorOutOfRank {
                    generator: img.rank(),
                    rank,
                });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    /// The identity endomorphism x_i ↦ x_i.
    pub fn identity(rank: usize) -> Endomorphism {
        Endomorphism {
            rank,
            images: (1..=rank).map(|g| Word::generator(rank, g)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of the generator x_g (1-based).
    pub fn image_of(&self, generator: usize) -> &Word {
        &self.images[generator - 1]
    }

    /// `(u)φ`, freely reduced. Panics if the ranks differ.
    pub fn apply(&self, u: &Word) -> Word {
        assert_eq!(self.rank, u.rank(), "rank mismatch in apply");
        u.substitute(&self.images)
    }

    /// The composite `u ↦ ((u)self)then`.
    pub fn compose(&self, then: &Endomorphism) -> Endomorphism {
        assert_eq!(self.rank, then.rank, "rank mismatch in compose");
        Endomorphism {
            rank: self.rank,
            images: self.images.iter().map(|img| then.apply(img)).collect(),
        }
    }

    /// `(u)φ^k`; `k = 0` returns `u` unchanged.
    ///
    /// Computed by iterated application to the single word: the images of
    /// `φ^k` itself can grow exponentially while the orbit word stays small.
    pub fn iterate_apply(&self, u: &Word, k: usize) -> Word {
        let mut out = u.clone();
        for _ in 0..k {
            out = self.apply(&out);
        }
        out
    }

    /// Membership of `x` in the kernel coset `v1·ker(φ)`, decided by one
    /// application: `x ∈ v1·ker(φ) ⟺ (x)φ = (v1)φ`.
    pub fn coset_of_kernel_eq(&self, x: &Word, v1: &Word) -> bool {
        self.apply(x) == self.apply(v1)
    }
}
