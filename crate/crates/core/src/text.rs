//! Text syntax shared by every front end.
//!
//! Words: lowercase letters `a`, `b`, `c`, … are the generators x₁, x₂, x₃,
//! …; uppercase letters are their inverses; the explicit form `x3` / `x3^-1`
//! works for any rank and accepts integer exponents. `1` or the empty string
//! is the identity. Whitespace and `·` separate syllables. Parsed words are
//! freely reduced and validated against the declared rank.
//!
//! Generator maps: one entry per generator, `a -> a b` (file style, one per
//! line) or `a=ab;b=b` (inline style). Every generator of the rank must get
//! exactly one image.

use std::fmt;

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Parses a word in the shared text syntax.
pub fn parse_word(text: &str, rank: usize) -> Result<Word> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(Word::identity(rank));
    }
    let mut letters: Vec<Letter> = Vec::new();
    let mut chars = trimmed.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_whitespace() || c == '·' {
            continue;
        }
        let explicit = c == 'x' && chars.peek().is_some_and(|d| d.is_ascii_digit());
        let (generator, inverse) = if explicit {
            let mut digits = String::new();
            while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                digits.push(chars.next().unwrap());
            }
            let g: usize = digits
                .parse()
                .map_err(|_| Error::MalformedExponent { text: digits.clone() })?;
            if g == 0 {
                return Err(Error::GeneratorOutOfRank { generator: 0, rank });
            }
            (g, false)
        } else if c.is_ascii_lowercase() {
            (c as usize - 'a' as usize + 1, false)
        } else if c.is_ascii_uppercase() {
            (c as usize - 'A' as usize + 1, true)
        } else {
            return Err(Error::UnknownSymbol { symbol: c });
        };
        if generator > rank {
            return Err(Error::GeneratorOutOfRank { generator, rank });
        }
        let mut exponent: i64 = if inverse { -1 } else { 1 };
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut exp = String::new();
            if matches!(chars.peek(), Some('-') | Some('+')) {
                exp.push(chars.next().unwrap());
            }
            while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                exp.push(chars.next().unwrap());
            }
            let e: i64 = exp
                .parse()
                .map_err(|_| Error::MalformedExponent { text: format!("^{exp}") })?;
            exponent = if inverse { -e } else { e };
        }
        let letter = Letter::new(generator, exponent < 0);
        for _ in 0..exponent.unsigned_abs() {
            letters.push(letter);
        }
    }
    Word::from_letters(rank, letters)
}

/// Renders a single letter; `x`-form is used beyond 26 generators.
pub fn render_letter(l: Letter) -> String {
    let g = l.generator();
    if g <= 26 {
        let c = (b'a' + (g - 1) as u8) as char;
        if l.is_inverse() {
            c.to_ascii_uppercase().to_string()
        } else {
            c.to_string()
        }
    } else if l.is_inverse() {
        format!("x{g}^-1")
    } else {
        format!("x{g}")
    }
}

/// Renders a word in the shared syntax; the identity renders as `1`.
pub fn render_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    if w.rank() <= 26 {
        w.letters().iter().map(|&l| render_letter(l)).collect()
    } else {
        w.letters()
            .iter()
            .map(|&l| render_letter(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(self))
    }
}

/// Renders an abstract word over subgroup-generator symbols as
/// `g1 g2^-1 …`; the empty expression renders as `1`.
pub fn render_expression(expr: &Word) -> String {
    if expr.is_empty() {
        return "1".to_string();
    }
    expr.letters()
        .iter()
        .map(|l| {
            if l.is_inverse() {
                format!("g{}^-1", l.generator())
            } else {
                format!("g{}", l.generator())
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a generator map in either the file style (`a -> a b`, one entry
/// per line) or the inline style (`a=ab;b=b`).
pub fn parse_endomorphism(text: &str, rank: usize) -> Result<Endomorphism> {
    let mut images: Vec<Option<Word>> = vec![None; rank];
    for entry in text.split(|c| c == ';' || c == '\n') {
        let entry = entry.trim();
        if entry.is_empty() || entry.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = entry
            .split_once("->")
            .or_else(|| entry.split_once('='))
            .ok_or_else(|| Error::BadMapEntry { entry: entry.to_string() })?;
        let target = parse_word(lhs, rank)?;
        let generator = match target.letters() {
            [l] if !l.is_inverse() => l.generator(),
            _ => return Err(Error::BadMapEntry { entry: entry.to_string() }),
        };
        if images[generator - 1].is_some() {
            return Err(Error::DuplicateImage { generator });
        }
        images[generator - 1] = Some(parse_word(rhs, rank)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or(Error::MissingImage { generator: i + 1 }))
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_word("aBa", 2).unwrap().to_string(), "aBa");
        assert_eq!(parse_word("a b a^-1", 2).unwrap().to_string(), "abA");
        assert_eq!(
            parse_word("c", 2),
            Err(Error::GeneratorOutOfRank { generator: 3, rank: 2 })
        );
    }

    #[test]
    fn parse_identity_forms() {
        assert!(parse_word("", 2).unwrap().is_empty());
        assert!(parse_word("1", 2).unwrap().is_empty());
        assert!(parse_word("  1  ", 2).unwrap().is_empty());
    }

    #[test]
    fn parse_explicit_form() {
        assert_eq!(parse_word("x1 x2^-1", 2).unwrap().to_string(), "aB");
        assert_eq!(parse_word("x2^3", 2).unwrap().to_string(), "bbb");
        assert_eq!(parse_word("a^2 b^-2", 2).unwrap().to_string(), "aaBB");
        assert_eq!(parse_word("a^0", 2).unwrap().to_string(), "1");
        let big = parse_word("x27 x27^-1 x3", 30).unwrap();
        assert_eq!(big.len(), 1);
    }

    #[test]
    fn parse_reduces_its_output() {
        assert_eq!(parse_word("abB", 2).unwrap().to_string(), "a");
        assert_eq!(parse_word("aA", 2).unwrap().to_string(), "1");
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(matches!(parse_word("a^", 2), Err(Error::MalformedExponent { .. })));
        // bare x is the 24th generator, out of rank here
        assert!(matches!(parse_word("x", 2), Err(Error::GeneratorOutOfRank { generator: 24, .. })));
        assert!(matches!(parse_word("a?b", 2), Err(Error::UnknownSymbol { symbol: '?' })));
        assert!(matches!(parse_word("x0", 2), Err(Error::GeneratorOutOfRank { .. })));
    }

    #[test]
    fn parse_map_styles() {
        let inline = parse_endomorphism("a=ab;b=b", 2).unwrap();
        let file = parse_endomorphism("a -> a b\nb -> b", 2).unwrap();
        assert_eq!(inline, file);
        assert_eq!(inline.image_of(1).to_string(), "ab");
    }

    #[test]
    fn parse_map_rejects_bad_entries() {
        assert!(matches!(
            parse_endomorphism("a=ab", 2),
            Err(Error::MissingImage { generator: 2 })
        ));
        assert!(matches!(
            parse_endomorphism("a=ab;a=b;b=b", 2),
            Err(Error::DuplicateImage { generator: 1 })
        ));
        assert!(matches!(
            parse_endomorphism("ab=ab;b=b", 2),
            Err(Error::BadMapEntry { .. })
        ));
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(ls in prop::collection::vec((1usize..=3, prop::bool::ANY), 0..16)) {
            let word = Word::from_letters(3, ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(parse_word(&render_word(&word), 3).unwrap(), word);
        }

        #[test]
        fn render_parse_round_trip_large_rank(ls in prop::collection::vec((1usize..=30, prop::bool::ANY), 0..10)) {
            let word = Word::from_letters(30, ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(parse_word(&render_word(&word), 30).unwrap(), word);
        }
    }
}
