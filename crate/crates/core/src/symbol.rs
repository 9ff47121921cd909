use std::fmt;

use crate::error::{Error, Result};

/// One letter of the alphabet `{0, 1, b}`. The spacer `b` only occurs in
/// spacer-variant words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Symbol {
    Zero = 0,
    One = 1,
    Spacer = 2,
}

pub const ALPHABET: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Spacer];

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Spacer => 'b',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            'b' => Ok(Symbol::Spacer),
            other => Err(Error::Parse(format!("unexpected symbol {other:?}"))),
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub type Word = Vec<Symbol>;

/// Parses `"0010b1"` style text into symbols.
pub fn parse_word(s: &str) -> Result<Word> {
    s.chars().map(Symbol::from_char).collect()
}

pub fn word_to_string(w: &[Symbol]) -> String {
    w.iter().map(|s| s.as_char()).collect()
}

/// Word text format: one word per line, LF terminated.
pub fn format_word_file<W: AsRef<[Symbol]>>(words: &[W]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&word_to_string(w.as_ref()));
        out.push('\n');
    }
    out
}

pub fn parse_word_file(text: &str) -> Result<Vec<Word>> {
    text.lines()
        .filter(|l| !l.is_empty())
        .map(parse_word)
        .collect()
}
