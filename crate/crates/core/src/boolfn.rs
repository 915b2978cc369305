//! Boolean functions on up to [`MAX_VARS`] variables.
//!
//! An input `x = (x_1, ..., x_n)` is encoded as the integer
//! `enc(x) = sum x_i * 2^(i-1)`, so `x_1` is the least-significant bit.
//! The same convention is used for tables, spectra and masks across the
//! crate.

use std::collections::BTreeSet;
use std::fmt;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest supported variable count.
pub const MAX_VARS: usize = 24;

// For variable j < 6, selects the bit positions inside a word whose j-th
// index bit is zero.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFnError {
    #[error("variable count {0} outside supported range 1..={MAX_VARS}")]
    VariableCount(usize),
    #[error("variable index {index} out of range 1..={n}")]
    VariableIndex { index: usize, n: usize },
    #[error("input has {got} bits, function takes {expected}")]
    Arity { expected: usize, got: usize },
    #[error("input bit at position {0} is not 0 or 1")]
    NonBinary(usize),
    #[error("truth table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("syntax error at column {position}: {message}")]
    Syntax { position: usize, message: String },
}

pub(crate) fn check_arity(n: usize) -> Result<(), BoolFnError> {
    if (1..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(BoolFnError::VariableCount(n))
    }
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<(), BoolFnError> {
    if (1..=n).contains(&i) {
        Ok(())
    } else {
        Err(BoolFnError::VariableIndex { index: i, n })
    }
}

/// Encodes a 0/1 assignment (`x[0]` is `x_1`) as a table index.
pub fn encode(x: &[u8]) -> Result<u32, BoolFnError> {
    check_arity(x.len())?;
    x.iter().enumerate().try_fold(0u32, |acc, (pos, &b)| match b {
        0 => Ok(acc),
        1 => Ok(acc | 1 << pos),
        _ => Err(BoolFnError::NonBinary(pos)),
    })
}

/// Inverse of [`encode`].
pub fn decode(index: u32, n: usize) -> Vec<u8> {
    (0..n).map(|pos| ((index >> pos) & 1) as u8).collect()
}

/// The unit vector `alpha^i`: zero everywhere except position `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointMask {
    n: usize,
    i: usize,
}

impl PointMask {
    pub fn new(n: usize, i: usize) -> Result<Self, BoolFnError> {
        check_arity(n)?;
        check_index(i, n)?;
        Ok(PointMask { n, i })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variable(&self) -> usize {
        self.i
    }

    /// `enc(alpha^i) = 2^(i-1)`.
    pub fn bits(&self) -> u32 {
        1 << (self.i - 1)
    }
}

/// Returns `x XOR alpha^i`.
pub fn flip_input(x: &[u8], i: usize) -> Result<Vec<u8>, BoolFnError> {
    check_index(i, x.len())?;
    let mut out = x.to_vec();
    out[i - 1] ^= 1;
    Ok(out)
}

/// Bit-packed evaluation table of `f` over all `2^n` inputs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    /// The constant-zero function.
    pub fn zeros(n: usize) -> Result<Self, BoolFnError> {
        check_arity(n)?;
        let words = vec![0u64; word_count(n)];
        Ok(TruthTable { n, words })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> bool) -> Result<Self, BoolFnError> {
        let mut table = Self::zeros(n)?;
        for x in 0..table.len() as u32 {
            if f(x) {
                table.words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(table)
    }

    /// Builds a table from its entries in `enc` order.
    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self, BoolFnError> {
        check_arity(n)?;
        if bits.len() != 1 << n {
            return Err(BoolFnError::TableLength { expected: 1 << n, got: bits.len() });
        }
        Self::from_fn(n, |x| bits[x as usize])
    }

    /// Builds a table from packed words; bits beyond `2^n` must be zero.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self, BoolFnError> {
        check_arity(n)?;
        if words.len() != word_count(n) {
            return Err(BoolFnError::TableLength { expected: 1 << n, got: words.len() * 64 });
        }
        let mut table = TruthTable { n, words };
        table.words[0] &= valid_mask(n);
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `f` at the encoded input `x`. Panics if `x >= 2^n`.
    #[inline]
    pub fn eval(&self, x: u32) -> bool {
        assert!((x as usize) < self.len(), "input {x} out of range for n={}", self.n);
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    /// `f(x)` for a 0/1 assignment with `x[0] = x_1`.
    pub fn evaluate(&self, x: &[u8]) -> Result<bool, BoolFnError> {
        if x.len() != self.n {
            return Err(BoolFnError::Arity { expected: self.n, got: x.len() });
        }
        Ok(self.eval(encode(x)?))
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.eval(x))
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// The `(-1)^f(x)` encoding of the table.
    pub fn signs(&self) -> Vec<i64> {
        self.bits().map(|b| if b { -1 } else { 1 }).collect()
    }

    /// `|{x : f(x XOR alpha^i) != f(x)}|`, counted word-parallel.
    pub fn sensitive_count(&self, i: usize) -> Result<u64, BoolFnError> {
        check_index(i, self.n)?;
        let j = i - 1;
        let half: u64 = if j < 6 {
            let shift = 1 << j;
            self.words
                .iter()
                .map(|&w| u64::from(((w ^ (w >> shift)) & LOW_HALF[j]).count_ones()))
                .sum()
        } else {
            let stride = 1 << (j - 6);
            self.words
                .chunks_exact(2 * stride)
                .flat_map(|block| block[..stride].iter().zip(&block[stride..]))
                .map(|(a, b)| u64::from((a ^ b).count_ones()))
                .sum()
        };
        // each sensitive pair {x, x ^ alpha^i} was counted once
        Ok(2 * half)
    }
}

fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

fn valid_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// In-place binary Moebius transform over GF(2) on a packed table.
/// Maps ANF coefficients to truth-table values and back.
fn moebius(n: usize, words: &mut [u64]) {
    for (j, &low) in LOW_HALF.iter().enumerate().take(n) {
        let shift = 1 << j;
        for w in words.iter_mut() {
            *w ^= (*w & low) << shift;
        }
    }
    for j in 6..n {
        let stride = 1 << (j - 6);
        for block in words.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
    }
}

/// A uniformly random function, reproducible from `seed`.
pub fn random_function(n: usize, seed: u64) -> Result<TruthTable, BoolFnError> {
    check_arity(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = (0..word_count(n)).map(|_| rng.next_u64()).collect();
    TruthTable::from_words(n, words)
}

/// Algebraic normal form: XOR of AND-monomials.
///
/// Each monomial is a bitmask over variables (bit `i-1` set when `x_i`
/// appears); the empty mask is the constant term `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    n: usize,
    monomials: BTreeSet<u32>,
}

impl Anf {
    pub fn new(n: usize, monomials: impl IntoIterator<Item = u32>) -> Result<Self, BoolFnError> {
        check_arity(n)?;
        let mut set = BTreeSet::new();
        for m in monomials {
            if m >> n != 0 {
                let index = 32 - m.leading_zeros() as usize;
                return Err(BoolFnError::VariableIndex { index, n });
            }
            toggle(&mut set, m);
        }
        Ok(Anf { n, monomials: set })
    }

    /// Parses terms joined by `+`, each `1`, `0`, or `x<k>` factors joined
    /// by `*`. `+` is addition mod 2, so repeated terms cancel.
    pub fn parse(text: &str, n: usize) -> Result<Self, BoolFnError> {
        check_arity(n)?;
        let mut parser = Parser { src: text.as_bytes(), pos: 0, n };
        let monomials = parser.expression()?;
        Ok(Anf { n, monomials })
    }

    /// The ANF of a truth table.
    pub fn from_truth_table(table: &TruthTable) -> Self {
        let mut words = table.words.clone();
        moebius(table.n, &mut words);
        let monomials = (0..table.len() as u32)
            .filter(|&m| (words[(m >> 6) as usize] >> (m & 63)) & 1 == 1)
            .collect();
        Anf { n: table.n, monomials }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &BTreeSet<u32> {
        &self.monomials
    }

    /// Monomials as sorted lists of 1-based variable indices.
    pub fn terms(&self) -> Vec<Vec<usize>> {
        self.monomials.iter().map(|&m| variables_of(m)).collect()
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Direct evaluation at an encoded input.
    pub fn eval(&self, x: u32) -> bool {
        self.monomials.iter().fold(false, |acc, &m| acc ^ (x & m == m))
    }

    pub fn to_truth_table(&self) -> TruthTable {
        let mut table = TruthTable::zeros(self.n).expect("arity checked at construction");
        for &m in &self.monomials {
            table.words[(m >> 6) as usize] |= 1 << (m & 63);
        }
        moebius(self.n, &mut table.words);
        table
    }
}

fn toggle(set: &mut BTreeSet<u32>, m: u32) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

fn variables_of(m: u32) -> Vec<usize> {
    (0..32).filter(|b| (m >> b) & 1 == 1).map(|b| b as usize + 1).collect()
}

impl fmt::Display for Anf {
    /// Canonical rendering: terms by degree, then by variable indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let mut terms = self.terms();
        terms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for (k, term) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if term.is_empty() {
                f.write_str("1")?;
            }
            for (t, v) in term.iter().enumerate() {
                if t > 0 {
                    f.write_str("*")?;
                }
                write!(f, "x{v}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> BoolFnError {
        BoolFnError::Syntax { position: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<BTreeSet<u32>, BoolFnError> {
        let mut set = BTreeSet::new();
        loop {
            if let Some(m) = self.term()? {
                toggle(&mut set, m);
            }
            match self.peek() {
                None => return Ok(set),
                Some(b'+') => self.pos += 1,
                Some(c) => return Err(self.error(format!("unexpected '{}'", c as char))),
            }
        }
    }

    /// `None` for the constant `0`.
    fn term(&mut self) -> Result<Option<u32>, BoolFnError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                return Ok(Some(0));
            }
            Some(b'0') => {
                self.pos += 1;
                return Ok(None);
            }
            _ => {}
        }
        let mut m = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            m |= self.factor()?;
        }
        Ok(Some(m))
    }

    fn factor(&mut self) -> Result<u32, BoolFnError> {
        match self.peek() {
            Some(b'x') | Some(b'X') => self.pos += 1,
            Some(c) => return Err(self.error(format!("expected a variable, found '{}'", c as char))),
            None => return Err(self.error("expected a variable, found end of input")),
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a variable index"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let index: usize = digits.parse().map_err(|_| self.error("variable index too large"))?;
        check_index(index, self.n)?;
        Ok(1 << (index - 1))
    }
}
