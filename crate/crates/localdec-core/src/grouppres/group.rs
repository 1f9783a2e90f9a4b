use super::coset::CosetTable;
use super::words::{FreeWord, Letter};
use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Above this order the multiplication table is not materialised and
/// products are traced through the coset table instead.
const TABLE_LIMIT: usize = 1024;

/// Axioms are re-checked on construction up to this order.
const VERIFY_LIMIT: usize = 10_000;

/// A finite group realised on the cosets of a complete table. Element `0`
/// is the identity; the generators act on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: CosetTable,
    words: Vec<FreeWord>,
    inverses: Vec<usize>,
    products: Option<Vec<u32>>,
}

impl FiniteGroup {
    pub fn from_table(t: &CosetTable) -> Result<Self> {
        if !t.is_complete() {
            return Err(Error::PartialTable);
        }
        let n = t.len();
        let words: Vec<FreeWord> = t
            .representatives()
            .into_iter()
            .map(|w| w.ok_or(Error::Postcondition("coset unreachable from identity".into())))
            .collect::<Result<_>>()?;
        let inverses = words
            .iter()
            .map(|w| t.trace(0, &w.inverse()).expect("complete table"))
            .collect();
        let mut g = FiniteGroup { table: t.clone(), words, inverses, products: None };
        if n <= TABLE_LIMIT {
            let mut products = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    products[a * n + b] = g.trace_product(a, b) as u32;
                }
            }
            g.products = Some(products);
        }
        if n <= VERIFY_LIMIT && !g.verify_axioms() {
            return Err(Error::Postcondition("coset table does not define a group".into()));
        }
        Ok(g)
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        let t = super::coset::todd_coxeter(
            &super::words::Presentation { generators: Vec::new(), relators: Vec::new() },
            1,
        );
        FiniteGroup::from_table(t.table()).expect("trivial table")
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    fn trace_product(&self, a: usize, b: usize) -> usize {
        self.table.trace(a, &self.words[b]).expect("complete table")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.products {
            Some(p) => p[a * self.order() + b] as usize,
            None => self.trace_product(a, b),
        }
    }

    /// Right multiplication by a single letter.
    pub fn mul_letter(&self, a: usize, l: Letter) -> usize {
        self.table.get(a, l).expect("complete table")
    }

    pub fn element_of(&self, w: &FreeWord) -> usize {
        self.table.trace(0, w).expect("complete table")
    }

    pub fn word(&self, a: usize) -> &FreeWord {
        &self.words[a]
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn generator_count(&self) -> usize {
        self.table.generator_count()
    }

    /// Each left multiplication must commute with the right action of
    /// every generator; together with the regularity of the coset action
    /// this gives associativity, identity and inverses.
    fn verify_axioms(&self) -> bool {
        let n = self.order();
        let cols = 2 * self.generator_count();
        for a in 0..n {
            if self.mul(a, self.inverses[a]) != 0 || self.mul(0, a) != a || self.mul(a, 0) != a {
                return false;
            }
        }
        if n > TABLE_LIMIT {
            return true;
        }
        for a in 0..n {
            for b in 0..n {
                for col in 0..cols {
                    let l = Letter::from_column(col);
                    if self.mul(a, self.mul_letter(b, l)) != self.mul_letter(self.mul(a, b), l) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Converts a complete table to the group it presents.
pub fn table_to_group(t: &CosetTable) -> Result<FiniteGroup> {
    FiniteGroup::from_table(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouppres::{todd_coxeter, Presentation};
    use alloc::string::String;

    fn x(i: usize) -> FreeWord {
        FreeWord::letter(Letter::new(i, false))
    }

    fn gens(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("x{i}")).collect()
    }

    #[test]
    fn cyclic_three() {
        let p = Presentation::new(gens(1), vec![x(0).pow(3)]).unwrap();
        let g = table_to_group(todd_coxeter(&p, 100).table()).unwrap();
        assert_eq!(g.order(), 3);
        let a = g.element_of(&x(0));
        assert_eq!(g.mul(a, g.mul(a, a)), 0);
        assert_ne!(g.mul(a, a), 0);
    }

    #[test]
    fn klein_four() {
        let (a, b) = (x(0), x(1));
        let p = Presentation::new(gens(2), vec![a.pow(2), b.pow(2), a.mul(&b).pow(2)]).unwrap();
        let g = table_to_group(todd_coxeter(&p, 100).table()).unwrap();
        assert_eq!(g.order(), 4);
        // oracle: every element is an involution and the group is abelian
        for u in 0..4 {
            assert_eq!(g.mul(u, u), 0);
            for v in 0..4 {
                assert_eq!(g.mul(u, v), g.mul(v, u));
            }
        }
    }

    #[test]
    fn trivial_group() {
        assert_eq!(FiniteGroup::trivial().order(), 1);
    }

    #[test]
    fn partial_table_rejected() {
        let p = Presentation::new(gens(1), vec![]).unwrap();
        assert_eq!(table_to_group(todd_coxeter(&p, 10).table()), Err(Error::PartialTable));
    }

    #[test]
    fn symmetric_group_is_nonabelian() {
        let (a, b) = (x(0), x(1));
        let p = Presentation::new(gens(2), vec![a.pow(3), b.pow(2), a.mul(&b).pow(2)]).unwrap();
        let g = table_to_group(todd_coxeter(&p, 100).table()).unwrap();
        let (ea, eb) = (g.element_of(&a), g.element_of(&b));
        assert_ne!(g.mul(ea, eb), g.mul(eb, ea));
        // associativity by brute force
        for u in 0..6 {
            for v in 0..6 {
                for w in 0..6 {
                    assert_eq!(g.mul(g.mul(u, v), w), g.mul(u, g.mul(v, w)));
                }
            }
        }
    }
}
