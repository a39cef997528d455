//! Words over the alphabet `{1, …, d}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_DIM: usize = 255;

/// A finite sequence of letters, each in `1..=d`; the empty word is `e`.
///
/// Words are ordered graded-lexicographically: shorter words first, then
/// lexicographically by letter.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based letters without checking an alphabet.
    ///
    /// # Panics
    /// If a letter is zero or exceeds [`MAX_DIM`].
    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator,
        I::Item: TryInto<u8>,
    {
        Word(
            letters
                .into_iter()
                .map(|l| match l.try_into() {
                    Ok(l) if l >= 1 => l,
                    _ => panic!("letters must lie in 1..=255"),
                })
                .collect(),
        )
    }

    pub(crate) fn from_raw(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letter(i: u8) -> Self {
        assert!(i >= 1, "letters are 1-based");
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Splits `w·i` into `(w, i)`.
    pub fn split_last(&self) -> Option<(Word, u8)> {
        self.0
            .split_last()
            .map(|(&i, rest)| (Word(rest.to_vec()), i))
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn appended(&self, letter: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Largest letter in the word, `0` for `e`.
    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, dim: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l as usize > dim) {
            Some(&l) => Err(Error::LetterOutOfRange {
                letter: l as usize,
                dim,
            }),
            None => Ok(()),
        }
    }

    /// Parses the text syntax: `e` for the empty word, a digit string when
    /// `dim <= 9`, otherwise comma-separated integers.
    pub fn parse(text: &str, dim: usize) -> Result<Word> {
        check_dim(dim)?;
        let s = text.trim();
        if s == "e" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word text; use \"e\"".into()));
        }
        let letters: Vec<usize> = if dim <= 9 && !s.contains(',') {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("invalid letter {c:?} in word {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("invalid letter {part:?} in word {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        let mut word = Vec::with_capacity(letters.len());
        for l in letters {
            if l == 0 || l > dim {
                return Err(Error::LetterOutOfRange { letter: l, dim });
            }
            word.push(l as u8);
        }
        Ok(Word(word))
    }

    /// Renders the word in the text syntax appropriate for alphabet `dim`.
    pub fn to_text(&self, dim: usize) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        if dim <= 9 {
            self.0.iter().map(|l| char::from(b'0' + l)).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            parts.join(",")
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = if self.max_letter() <= 9 { 9 } else { MAX_DIM };
        f.write_str(&self.to_text(dim))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

/// All words of exactly `len` letters over `{1, …, dim}`, in lexicographic order.
pub fn words_of_length(dim: usize, len: usize) -> WordsOfLength {
    WordsOfLength {
        dim: dim as u8,
        current: if dim == 0 && len > 0 {
            None
        } else {
            Some(vec![1; len])
        },
    }
}

/// All words of length at most `max_len`, in graded-lex order.
pub fn words_up_to(dim: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |n| words_of_length(dim, n))
}

pub struct WordsOfLength {
    dim: u8,
    current: Option<Vec<u8>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if next[pos] < self.dim {
                next[pos] += 1;
                self.current = Some(next);
                break;
            }
            next[pos] = 1;
        }
        Some(Word(out))
    }
}
