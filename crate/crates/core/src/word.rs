//! Freely reduced words over a finite alphabet.
//!
//! A [`Word`] is always stored reduced: every constructor and every group
//! operation cancels adjacent inverse pairs eagerly, so two words are equal as
//! group elements iff their letter sequences are equal.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Ordered list of distinct generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidAlphabet(format!(
                    "{name:?} is not a valid generator name"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!("generator {name:?} listed twice")));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    /// Parses a comma separated list such as `x,y`.
    pub fn from_list(list: &str) -> Result<Arc<Self>> {
        if list.trim().is_empty() {
            return Alphabet::new(Vec::<String>::new());
        }
        Alphabet::new(list.split(',').map(|s| s.trim().to_string()))
    }

    /// The alphabet `{x, y}` the witness words live in.
    pub fn xy() -> Arc<Self> {
        Alphabet::new(["x", "y"]).expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: false,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: true,
        }
    }

    pub fn index(self) -> usize {
        self.generator as usize
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// An element of the free group on an [`Alphabet`], stored freely reduced.
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.alphabet == other.alphabet
    }
}

impl Eq for Word {}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

/// Pushes `letter` onto an already reduced sequence, cancelling if needed.
fn push_reduced(out: &mut Vec<Letter>, letter: Letter) {
    if out.last() == Some(&letter.inv()) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Word {
            alphabet: Arc::clone(alphabet),
            letters: Vec::new(),
        }
    }

    /// Builds the free reduction of an arbitrary letter sequence.
    pub fn from_letters<I>(alphabet: &Arc<Alphabet>, letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut out = Vec::new();
        for letter in letters {
            if letter.index() >= alphabet.len() {
                return Err(Error::UnknownGenerator(format!("#{}", letter.generator)));
            }
            push_reduced(&mut out, letter);
        }
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            letters: out,
        })
    }

    pub fn generator(alphabet: &Arc<Alphabet>, index: usize) -> Result<Self> {
        Word::from_letters(alphabet, [Letter::pos(index)])
    }

    pub fn generator_named(alphabet: &Arc<Alphabet>, name: &str) -> Result<Self> {
        let index = alphabet
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Word::generator(alphabet, index)
    }

    /// Parses whitespace separated tokens `name` or `name^k` (k a nonzero
    /// integer) and returns the reduced word.
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: i64 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("malformed exponent in token {token:?}")))?;
                    if k == 0 {
                        return Err(Error::Parse(format!("zero exponent in token {token:?}")));
                    }
                    (name, k)
                }
                None => (token, 1),
            };
            let index = alphabet
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            let letter = if exp > 0 {
                Letter::pos(index)
            } else {
                Letter::neg(index)
            };
            for _ in 0..exp.unsigned_abs() {
                push_reduced(&mut letters, letter);
            }
        }
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    fn check_alphabet(&self, other: &Word) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_alphabet(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word {
            alphabet: Arc::clone(&self.alphabet),
            letters,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`, reduced.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.multiply(other)?
            .multiply(&self.inverse())?
            .multiply(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word {
            alphabet: Arc::clone(&self.alphabet),
            letters,
        }
    }

    /// Abelianization image: signed occurrence count per generator.
    pub fn exponent_sums(&self) -> ExponentVector {
        let mut sums = vec![BigInt::zero(); self.alphabet.len()];
        for l in &self.letters {
            sums[l.index()] += l.sign();
        }
        ExponentVector(sums)
    }
}

/// Canonical text: whitespace separated tokens with maximal run-length
/// exponents, e.g. `x^3 y^-1`. The identity prints as the empty string.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(self.alphabet.name(l.index()))?;
            match (run, l.inverse) {
                (1, false) => {}
                (_, false) => write!(f, "^{run}")?,
                (_, true) => write!(f, "^-{run}")?,
            }
            i += run;
        }
        Ok(())
    }
}

/// Per-generator integer vector indexed in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<BigInt>);

impl ExponentVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Left-normed commutator `ω_n = [x, y, x, …, x]` with `n` trailing `x`s,
/// over the alphabet [`Alphabet::xy`]. Its length is `2^{n+2} + 2` for `n ≥ 1`.
pub fn omega(n: usize) -> Word {
    let alphabet = Alphabet::xy();
    omega_in(&alphabet, 0, 1, n)
}

/// `ω_n` built from generators `x` and `y` of an arbitrary alphabet.
pub fn omega_in(alphabet: &Arc<Alphabet>, x: usize, y: usize, n: usize) -> Word {
    let xw = Word::generator(alphabet, x).expect("x in alphabet");
    let yw = Word::generator(alphabet, y).expect("y in alphabet");
    let mut w = xw.commutator(&yw).expect("same alphabet");
    for _ in 0..n {
        w = w.commutator(&xw).expect("same alphabet");
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Alphabet> {
        Alphabet::xy()
    }

    fn w(text: &str) -> Word {
        Word::parse(text, &xy()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("x y^-1").len(), 2);
        assert_eq!(w("x y^-1").to_string(), "x y^-1");
        assert!(w("x x^-1").is_identity());
        let w0 = w("x y x^-1 y^-1");
        assert_eq!(w0.len(), 4);
        assert_eq!(w0, omega(0));
        assert_eq!(w("x^2 x^-3").to_string(), "x^-1");
        assert_eq!(w("x^-2").letters(), &[Letter::neg(0), Letter::neg(0)]);
    }

    #[test]
    fn parse_errors() {
        let a = xy();
        assert!(matches!(Word::parse("z", &a), Err(Error::UnknownGenerator(_))));
        assert!(matches!(Word::parse("x^0", &a), Err(Error::Parse(_))));
        assert!(matches!(Word::parse("x^a", &a), Err(Error::Parse(_))));
        assert!(matches!(Word::parse("x^", &a), Err(Error::Parse(_))));
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(["x", "x"]).is_err());
        assert!(Alphabet::new(["1x"]).is_err());
        assert!(Alphabet::new([""]).is_err());
        let a = Alphabet::new(["x_1", "_b"]).unwrap();
        assert_eq!(a.index_of("_b"), Some(1));
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(w("x y").multiply(&w("y^-1 x")).unwrap(), w("x x"));
        assert_eq!(w("x y").multiply(&w("")).unwrap(), w("x y"));
        assert!(w("x y x^-1").multiply(&w("x y^-1 x^-1")).unwrap().is_identity());
        let other = Alphabet::new(["a", "b"]).unwrap();
        let u = Word::parse("a", &other).unwrap();
        assert!(matches!(w("x").multiply(&u), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(w("x y").inverse(), w("y^-1 x^-1"));
        assert!(w("").inverse().is_identity());
        assert_eq!(omega(0).inverse(), w("y x y^-1 x^-1"));
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(w("x").commutator(&w("y")).unwrap().to_string(), "x y x^-1 y^-1");
        let u = w("x y^2 x");
        assert!(u.commutator(&u).unwrap().is_identity());
        assert!(w("x").commutator(&w("")).unwrap().is_identity());
    }

    #[test]
    fn omega_recursion() {
        let w0 = omega(0);
        let expected = w0
            .multiply(&w("x"))
            .unwrap()
            .multiply(&w0.inverse())
            .unwrap()
            .multiply(&w("x^-1"))
            .unwrap();
        assert_eq!(omega(1), expected);
        let x = w("x");
        for n in 0..=20 {
            let wn = omega(n);
            assert!(wn.exponent_sums().is_zero());
            if n < 20 {
                assert_eq!(omega(n + 1), wn.commutator(&x).unwrap());
            }
        }
    }

    #[test]
    fn exponent_sum_examples() {
        let e = w("x y^-1").exponent_sums();
        assert_eq!(e.0, vec![BigInt::from(1), BigInt::from(-1)]);
        assert!(omega(0).exponent_sums().is_zero());
        assert_eq!(w("x^3").exponent_sums().0, vec![BigInt::from(3), BigInt::zero()]);
    }

    #[test]
    fn pow_and_display_identity() {
        assert_eq!(w("x y").pow(-2), w("y^-1 x^-1 y^-1 x^-1"));
        assert_eq!(w("").to_string(), "");
    }
}
