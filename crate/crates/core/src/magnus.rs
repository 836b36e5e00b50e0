//! Truncated Magnus expansion.
//!
//! The free group embeds in the units of `Z⟨⟨X_1, …, X_k⟩⟩` via
//! `g ↦ 1 + X_g`. A nontrivial word lies in the `m`-th lower central term
//! exactly when its image is `1 + (terms of degree ≥ m)`, so truncating at a
//! degree cap certifies membership up to that cap.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Monomial in noncommuting variables, as the sequence of variable indices.
pub type Monomial = Vec<u32>;

/// Integer series in noncommuting variables with every term of degree above
/// `cap` discarded. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncommSeries {
    cap: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl NoncommSeries {
    pub fn zero(cap: usize) -> Self {
        NoncommSeries {
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = NoncommSeries::zero(cap);
        s.terms.insert(Vec::new(), BigInt::one());
        s
    }

    /// Builds a series from explicit terms, truncating and dropping zeros.
    pub fn from_terms<I>(cap: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut s = NoncommSeries::zero(cap);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    /// `1 + X_g`, or `1 − X_g + X_g² − …` up to the cap for an inverse letter.
    pub fn of_letter(letter: Letter, cap: usize) -> Self {
        let mut s = NoncommSeries::one(cap);
        let top = if letter.inverse { cap } else { cap.min(1) };
        for k in 1..=top {
            let c = if letter.inverse && k % 2 == 1 { -1 } else { 1 };
            s.add_term(vec![letter.generator; k], BigInt::from(c));
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if m.len() > self.cap || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Noncommutative product with terms above the cap discarded.
    pub fn mul(&self, other: &NoncommSeries) -> Result<NoncommSeries> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch(self.cap, other.cap));
        }
        let mut out = NoncommSeries::zero(self.cap);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.len() + m2.len() > self.cap {
                    continue;
                }
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Right multiplication by a single letter's series, without building it.
    fn mul_letter(&self, letter: Letter) -> NoncommSeries {
        let mut out = NoncommSeries::zero(self.cap);
        let g = letter.generator;
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
            let room = self.cap - m.len();
            let top = if letter.inverse { room } else { room.min(1) };
            let mut ext = m.clone();
            for k in 1..=top {
                ext.push(g);
                let neg = letter.inverse && k % 2 == 1;
                out.add_term(ext.clone(), if neg { -c } else { c.clone() });
            }
        }
        out
    }

    /// Lowest degree ≥ 1 carrying a nonzero coefficient.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).filter(|&d| d > 0).min()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&[]).is_one()
    }
}

impl fmt::Display for NoncommSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut by_degree: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        by_degree.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in by_degree.into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let vars: Vec<String> = m.iter().map(|v| format!("X{v}")).collect();
            f.write_str(&vars.join(" "))?;
        }
        Ok(())
    }
}

/// Magnus image of `w` truncated at degree `cap`.
pub fn magnus_expand(w: &Word, cap: usize) -> NoncommSeries {
    w.letters()
        .iter()
        .fold(NoncommSeries::one(cap), |acc, &l| acc.mul_letter(l))
}

/// Lower-central-series weight as far as a truncated expansion can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// The word is the identity, which lies in every term.
    Identity,
    /// The word lies in `F_k` but not `F_{k+1}`.
    Exact(usize),
    /// Expansion is `1` up to the cap; the word lies in `F_k` for this `k`.
    AtLeast(usize),
}

impl Weight {
    /// Whether this weight certifies membership in `F_m`.
    pub fn reaches(self, m: usize) -> bool {
        match self {
            Weight::Identity => true,
            Weight::Exact(k) | Weight::AtLeast(k) => k >= m,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Identity => f.write_str("identity"),
            Weight::Exact(k) => write!(f, "{k}"),
            Weight::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

pub fn lcs_weight(w: &Word, cap: usize) -> Result<Weight> {
    if cap == 0 {
        return Err(Error::InvalidArgument("magnus cap must be at least 1".into()));
    }
    if w.is_identity() {
        return Ok(Weight::Identity);
    }
    Ok(match magnus_expand(w, cap).lowest_nonconstant_degree() {
        Some(k) => Weight::Exact(k),
        None => Weight::AtLeast(cap + 1),
    })
}

/// `w ∈ F_m`, decided from an expansion truncated at `cap ≥ m`.
pub fn in_lcs(w: &Word, m: usize, cap: usize) -> Result<bool> {
    if m == 0 || cap < m {
        return Err(Error::InvalidArgument(format!(
            "need cap ≥ m ≥ 1, got m = {m}, cap = {cap}"
        )));
    }
    Ok(lcs_weight(w, cap)?.reaches(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{omega, Alphabet};

    fn series(cap: usize, terms: &[(&[u32], i64)]) -> NoncommSeries {
        NoncommSeries::from_terms(cap, terms.iter().map(|(m, c)| (m.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn geometric_inverse_truncates_to_one() {
        let s = series(2, &[(&[], 1), (&[0], 1)]);
        let t = series(2, &[(&[], 1), (&[0], -1), (&[0, 0], 1)]);
        assert!(s.mul(&t).unwrap().is_one());
    }

    #[test]
    fn product_examples() {
        let s = series(3, &[(&[], 2), (&[1, 0], -3)]);
        assert_eq!(s.mul(&NoncommSeries::one(3)).unwrap(), s);
        let x = series(2, &[(&[], 1), (&[0], 1)]);
        let y = series(2, &[(&[], 1), (&[1], 1)]);
        let expected = series(2, &[(&[], 1), (&[0], 1), (&[1], 1), (&[0, 1], 1)]);
        assert_eq!(x.mul(&y).unwrap(), expected);
        assert!(matches!(x.mul(&NoncommSeries::one(3)), Err(Error::CapMismatch(2, 3))));
    }

    #[test]
    fn expansion_examples() {
        let xy = Alphabet::xy();
        let x = Word::parse("x", &xy).unwrap();
        assert_eq!(magnus_expand(&x, 3), series(3, &[(&[], 1), (&[0], 1)]));
        let c = magnus_expand(&omega(0), 2);
        assert_eq!(c, series(2, &[(&[], 1), (&[0, 1], 1), (&[1, 0], -1)]));
        assert!(magnus_expand(&Word::identity(&xy), 4).is_one());
        let xinv = Word::parse("x^-1", &xy).unwrap();
        assert_eq!(
            magnus_expand(&xinv, 3),
            series(3, &[(&[], 1), (&[0], -1), (&[0, 0], 1), (&[0, 0, 0], -1)])
        );
    }

    #[test]
    fn weights() {
        let xy = Alphabet::xy();
        let x = Word::parse("x", &xy).unwrap();
        assert_eq!(lcs_weight(&x, 3).unwrap(), Weight::Exact(1));
        assert_eq!(lcs_weight(&omega(0), 3).unwrap(), Weight::Exact(2));
        assert_eq!(lcs_weight(&Word::identity(&xy), 1).unwrap(), Weight::Identity);
        assert_eq!(lcs_weight(&omega(2), 3).unwrap(), Weight::AtLeast(4));
        assert!(lcs_weight(&x, 0).is_err());
    }

    #[test]
    fn membership() {
        let xy = Alphabet::xy();
        assert!(in_lcs(&omega(3), 5, 8).unwrap());
        assert!(!in_lcs(&omega(3), 6, 8).unwrap());
        assert!(!in_lcs(&Word::parse("x", &xy).unwrap(), 2, 4).unwrap());
        assert!(in_lcs(&Word::identity(&xy), 99, 99).unwrap());
        assert!(in_lcs(&omega(0), 3, 2).is_err());
    }

    #[test]
    fn display() {
        let s = series(2, &[(&[], 1), (&[0, 1], 1), (&[1, 0], -2)]);
        assert_eq!(s.to_string(), "1 + X0 X1 - 2*X1 X0");
    }
}
