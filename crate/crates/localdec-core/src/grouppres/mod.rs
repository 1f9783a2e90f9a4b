//! Free words on spanning-tree chords, finite presentations and coset
//! enumeration.

mod coset;
mod group;
mod words;

pub use coset::{todd_coxeter, word_image, CosetTable, Enumeration, DEFAULT_COSET_LIMIT, UNDEFINED};
pub use group::{table_to_group, FiniteGroup};
pub use words::{FreeWord, Letter, Presentation};

use crate::error::{Error, Result};
use crate::multigraph::{enumerate_short_cycles, spanning_tree, Edge, Multigraph, SpanningTree, Vertex, Walk};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Chords of a spanning tree as the generators of a free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordAlphabet {
    pub tree: SpanningTree,
    pub chords: Vec<Edge>,
    generator: Vec<Option<usize>>,
}

impl ChordAlphabet {
    pub fn new(g: &Multigraph, tree: SpanningTree) -> Self {
        let chords = tree.chords();
        let mut generator = vec![None; g.edge_count()];
        for (i, &e) in chords.iter().enumerate() {
            generator[e] = Some(i);
        }
        ChordAlphabet { tree, chords, generator }
    }

    pub fn generator_of(&self, e: Edge) -> Option<usize> {
        self.generator[e]
    }

    /// The letter of one traversal; tree edges give none.
    pub fn letter(&self, step: crate::multigraph::OrientedEdge) -> Option<Letter> {
        self.generator[step.edge].map(|i| Letter::new(i, !step.forward))
    }

    /// Letters of any walk, freely reduced; no closedness required.
    pub fn word_of(&self, w: &Walk) -> FreeWord {
        FreeWord::from_letters(w.steps.iter().filter_map(|&s| self.letter(s)))
    }

    pub fn generator_names(&self, g: &Multigraph) -> Vec<String> {
        self.chords.iter().map(|&e| g.edge_name(e).into()).collect()
    }
}

/// The image of a closed walk at the root in the free group on chords.
pub fn walk_to_word(g: &Multigraph, alphabet: &ChordAlphabet, w: &Walk) -> Result<FreeWord> {
    w.validate(g)?;
    if w.start != alphabet.tree.root || !w.is_closed(g) {
        return Err(Error::NotClosed);
    }
    Ok(alphabet.word_of(w))
}

/// A presentation of the deck group of the `r`-local cover, with the
/// alphabet it is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckPresentation {
    pub presentation: Presentation,
    pub alphabet: ChordAlphabet,
}

/// Generators are the chords of the breadth-first tree at `x0`; each
/// cycle of length at most `r` contributes one relator, the word of the
/// walk out along the tree to the cycle's least vertex, once around, and
/// back.
pub fn deck_group_presentation(g: &Multigraph, r: usize, x0: Vertex) -> Result<DeckPresentation> {
    let tree = spanning_tree(g, x0)?;
    let alphabet = ChordAlphabet::new(g, tree);
    let mut relators = Vec::new();
    for cycle in enumerate_short_cycles(g, r) {
        let stem = alphabet.tree.path_from_root(g, cycle.vertices[0]);
        let closed = stem.concat(&cycle.once_around(g)).concat(&stem.reversed(g));
        relators.push(walk_to_word(g, &alphabet, &closed)?);
    }
    let presentation = Presentation::new(alphabet.generator_names(g), relators)?;
    Ok(DeckPresentation { presentation, alphabet })
}
