use crate::error::{Error, Result};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A generator or its inverse, packed as `2·gen + inverse`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(2 * generator as u32 + inverse as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// Column of a coset table.
    pub fn column(self) -> usize {
        self.0 as usize
    }

    pub fn from_column(c: usize) -> Letter {
        Letter(c as u32)
    }

    /// `+(g+1)` for a generator, `-(g+1)` for its inverse.
    pub fn signed(self) -> i64 {
        let g = self.generator() as i64 + 1;
        if self.is_inverse() {
            -g
        } else {
            g
        }
    }

    pub fn from_signed(s: i64) -> Option<Letter> {
        if s == 0 {
            return None;
        }
        Some(Letter::new(s.unsigned_abs() as usize - 1, s < 0))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

/// A freely reduced word.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        FreeWord(alloc::vec![l])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = FreeWord::empty();
        w.extend(letters);
        w
    }

    /// Appends a letter, cancelling against the last one if inverse.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn extend<I: IntoIterator<Item = Letter>>(&mut self, letters: I) {
        for l in letters {
            self.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: usize) -> FreeWord {
        let mut w = FreeWord::empty();
        for _ in 0..k {
            w = w.mul(self);
        }
        w
    }

    /// Exponent sum of each of the first `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; n];
        for l in &self.0 {
            v[l.generator()] += if l.is_inverse() { -1 } else { 1 };
        }
        v
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// A finite presentation `⟨S | R⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        let p = Presentation { generators, relators };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for r in &self.relators {
            for l in r.letters() {
                if l.generator() >= self.generators.len() {
                    return Err(Error::UnknownGenerator(l.generator()));
                }
            }
        }
        Ok(())
    }

    /// Rank of the free part of the abelianisation: the number of
    /// generators minus the rational rank of the exponent-sum matrix.
    pub fn abelian_free_rank(&self) -> usize {
        let n = self.generators.len();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(n)).collect();
        n - rational_rank(rows, n)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Rank over the rationals by integer row reduction with content
/// removal, which keeps entries small for the matrices seen here.
fn rational_rank(rows: Vec<Vec<i64>>, cols: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows.into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[rank][k] * b;
                }
                let g = m[i].iter().fold(0, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn a() -> Letter {
        Letter::new(0, false)
    }

    #[test]
    fn free_reduction() {
        let w = FreeWord::from_letters([a(), a().inverse(), a()]);
        assert_eq!(w.len(), 1);
        assert!(w.mul(&w.inverse()).is_empty());
    }

    #[test]
    fn signed_round_trip() {
        for s in [-3i64, -1, 1, 4] {
            assert_eq!(Letter::from_signed(s).unwrap().signed(), s);
        }
        assert!(Letter::from_signed(0).is_none());
    }

    #[test]
    fn abelian_rank() {
        let p = Presentation::new(vec!["s".into()], vec![]).unwrap();
        assert_eq!(p.abelian_free_rank(), 1);
        let p = Presentation::new(vec!["s".into()], vec![FreeWord::letter(a()).pow(5)]).unwrap();
        assert_eq!(p.abelian_free_rank(), 0);
        let b = Letter::new(1, false);
        let comm = FreeWord::from_letters([a(), b, a().inverse(), b.inverse()]);
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![comm]).unwrap();
        assert_eq!(p.abelian_free_rank(), 2);
    }

    #[test]
    fn unknown_generator_rejected() {
        let r = Presentation::new(vec!["a".into()], vec![FreeWord::letter(Letter::new(1, false))]);
        assert_eq!(r, Err(Error::UnknownGenerator(1)));
    }
}
