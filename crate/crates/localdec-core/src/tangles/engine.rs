//! Tangles as choices of one component per small separator.
//!
//! Every separation with separator `X` is a bipartition of the components
//! of `G − X`. A tangle points all of them at one component `β(X)`, and
//! it is determined by these choices: `(A, B)` is small iff `β(X) ⊆ B`.
//! The largest small side at `X` is `V ∖ β(X)`, so the triple condition
//! fails exactly for three choices with no common vertex and no edge
//! meeting all three. Improper separations `(Y, V)` with `|Y| < k` are
//! oriented the only way possible and enter the triple condition too: a
//! `k`-tangle also needs that no choice and two sets of size below `k`,
//! and no two choices and one such set, cover `G`. Only choices minimal
//! under inclusion can take part in a first failure, which keeps the
//! incremental check small.

use super::{components_avoiding, OrientedSeparation, Separation};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use alloc::vec;
use alloc::vec::Vec;

/// Cap on the number of separators indexed at once.
pub const SEPARATOR_BUDGET: usize = 2_000_000;

/// Cap on the number of tangles of one order.
pub const TANGLE_BUDGET: usize = 100_000;

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Rank of a sorted set in colexicographic order.
pub(crate) fn colex_rank(x: &[usize]) -> usize {
    x.iter().enumerate().map(|(i, &v)| binom(v, i + 1)).sum()
}

/// All `j`-subsets of `0..n` in colexicographic order.
pub(crate) fn subsets(n: usize, j: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (j <= n).then(|| (0..j).collect());
    core::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = 0;
        loop {
            if i == j {
                cur = None;
                break;
            }
            let limit = if i + 1 < j { c[i + 1] } else { n };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (t, slot) in c.iter_mut().enumerate().take(i) {
                    *slot = t;
                }
                break;
            }
            i += 1;
        }
        Some(out)
    })
}

#[derive(Clone, Debug)]
pub(crate) struct Component {
    pub vertices: BitSet,
    pub nbrs: BitSet,
    pub edges: BitSet,
    pub rep: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct SeparatorInfo {
    pub members: Vec<Vertex>,
    pub comps: Vec<Component>,
}

impl SeparatorInfo {
    /// Separations with this separator exist.
    pub fn is_branching(&self) -> bool {
        self.comps.len() >= 2
    }

    pub fn component_of(&self, v: Vertex) -> Option<&Component> {
        self.comps.iter().find(|c| c.vertices.contains(v))
    }
}

/// The components of `G − X` for every `X` below a size bound.
#[derive(Clone, Debug)]
pub struct Separators {
    n: usize,
    ends: Vec<(Vertex, Vertex)>,
    pub(crate) levels: Vec<Vec<SeparatorInfo>>,
}

impl Separators {
    /// Indexes every separator of size below `max_order`.
    pub fn new(g: &Multigraph, max_order: usize) -> Result<Self> {
        let mut seps = Separators { n: g.vertex_count(), ends: g.edges().map(|e| g.ends(e)).collect(), levels: Vec::new() };
        while seps.levels.len() < max_order.min(seps.n + 1) {
            seps.push_level(g)?;
        }
        Ok(seps)
    }

    /// Indexes the separators of the next size.
    pub fn push_level(&mut self, g: &Multigraph) -> Result<()> {
        let n = self.n;
        let j = self.levels.len();
        if j > n {
            return Err(Error::InvalidParameter("separators cannot exceed the vertex set"));
        }
        let total: usize = (0..=j).map(|i| binom(n, i)).sum();
        if total > SEPARATOR_BUDGET {
            return Err(Error::BudgetExceeded("separator index"));
        }
        let adj = g.adjacency_sets();
        let mut level = Vec::with_capacity(binom(n, j));
        for members in subsets(n, j) {
            let xs = BitSet::from_iter(n, members.iter().copied());
            let comps = components_avoiding(&adj, &xs)
                .into_iter()
                .map(|(vertices, nbrs)| {
                    let mut edges = BitSet::new(g.edge_count());
                    for v in vertices.iter() {
                        for &e in g.incident(v) {
                            edges.insert(e);
                        }
                    }
                    let rep = vertices.first().expect("components are nonempty") as u32;
                    Component { vertices, nbrs, edges, rep }
                })
                .collect();
            level.push(SeparatorInfo { members, comps });
        }
        self.levels.push(level);
        Ok(())
    }

    /// The `k`-tangles from the `(k−1)`-tangles; needs separators of size
    /// below `k` indexed.
    pub fn extend_all(&self, lower: &[Tangle]) -> Result<Vec<Tangle>> {
        let mut next = Vec::new();
        for t in lower {
            if t.order() >= self.levels.len() {
                return Err(Error::InvalidParameter("tangle order exceeds the separator index"));
            }
            self.extend(t, &mut next)?;
        }
        Ok(next)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// One more than the largest separator size indexed.
    pub fn max_order(&self) -> usize {
        self.levels.len()
    }

    pub(crate) fn info(&self, x: &[Vertex]) -> &SeparatorInfo {
        &self.levels[x.len()][colex_rank(x)]
    }

    /// Components of `G − X` for sorted `X`.
    pub fn components(&self, x: &[Vertex]) -> Vec<BitSet> {
        self.info(x).comps.iter().map(|c| c.vertices.clone()).collect()
    }

    /// All `k`-tangles for `k = 1, …, max_order`, by extending each order
    /// to the next.
    pub fn tangles_by_order(&self, max_order: usize) -> Result<Vec<Vec<Tangle>>> {
        if max_order > self.levels.len() {
            return Err(Error::InvalidParameter("tangle order exceeds the separator index"));
        }
        let mut out: Vec<Vec<Tangle>> = Vec::new();
        let mut current = vec![Tangle::empty()];
        for _ in 0..max_order {
            current = self.extend_all(&current)?;
            out.push(current.clone());
        }
        Ok(out)
    }

    /// Whether a choice function is a tangle: every choice a component
    /// and no covering triple.
    pub fn is_tangle(&self, t: &Tangle) -> bool {
        if t.order() > self.levels.len() {
            return false;
        }
        let small = t.order().saturating_sub(1);
        if t.order() == 0 || three_coverable(self.n, &self.ends, small) {
            return t.order() == 0;
        }
        let mut chain = Antichain { sets: Vec::new(), small };
        for (j, lv) in t.levels.iter().enumerate() {
            for (rank, &rep) in lv.iter().enumerate() {
                let info = &self.levels[j][rank];
                let Some(c) = info.component_of(rep as usize) else { return false };
                if c.rep != rep || (info.is_branching() && !chain.insert(c, &self.ends)) {
                    return false;
                }
            }
        }
        true
    }

    /// The choice function pointing at the component containing `pick(X)`.
    pub(crate) fn tangle_from(&self, k: usize, mut pick: impl FnMut(&[Vertex], &[BitSet]) -> Option<usize>) -> Option<Tangle> {
        let mut levels = Vec::with_capacity(k);
        for level in &self.levels[..k] {
            let mut lv = Vec::with_capacity(level.len());
            for info in level {
                let comps: Vec<BitSet> = info.comps.iter().map(|c| c.vertices.clone()).collect();
                lv.push(info.comps[pick(&info.members, &comps)?].rep);
            }
            levels.push(lv);
        }
        Some(Tangle { levels })
    }

    fn candidates(&self, t: &Tangle, info: &SeparatorInfo) -> Vec<u32> {
        let j = info.members.len();
        let mut out = Vec::new();
        'comp: for (ci, c) in info.comps.iter().enumerate() {
            for (skip, &x) in info.members.iter().enumerate() {
                let mut sub = info.members.clone();
                sub.remove(skip);
                let rank = colex_rank(&sub);
                if !self.levels[j - 1][rank].is_branching() {
                    continue;
                }
                let rep = t.levels[j - 1][rank] as usize;
                if c.vertices.contains(rep) {
                    continue;
                }
                let x_in_beta = rep == x || info.component_of(rep).is_some_and(|d| d.nbrs.contains(x));
                if !(x_in_beta && c.nbrs.contains(x)) {
                    continue 'comp;
                }
            }
            out.push(ci as u32);
        }
        out
    }

    /// Pushes every extension of the `j`-tangle `t` to order `j + 1`.
    fn extend(&self, t: &Tangle, out: &mut Vec<Tangle>) -> Result<()> {
        let j = t.order();
        let level = &self.levels[j];
        // improper small sides grow with the order, so earlier choices are rechecked
        if three_coverable(self.n, &self.ends, j) {
            return Ok(());
        }
        let mut base = Antichain { sets: Vec::new(), small: j };
        for (i, lv) in t.levels.iter().enumerate() {
            for (rank, &rep) in lv.iter().enumerate() {
                let info = &self.levels[i][rank];
                if info.is_branching() && !base.insert(info.component_of(rep as usize).expect("rep lies in G − X"), &self.ends) {
                    return Ok(());
                }
            }
        }
        let cands: Vec<Vec<u32>> = level
            .iter()
            .map(|info| if info.is_branching() { self.candidates(t, info) } else { vec![0] })
            .collect();
        if cands.iter().any(|c| c.is_empty()) {
            return Ok(());
        }
        let mut assign: Vec<u32> = level.iter().map(|info| info.comps[0].rep).collect();
        struct Frame {
            pos: usize,
            next: usize,
            chain: Antichain,
        }
        let mut frames: Vec<Frame> = Vec::new();
        let mut chain = base;
        let mut pos = 0;
        loop {
            let mut reached_end = true;
            while pos < level.len() {
                let info = &level[pos];
                if !info.is_branching() {
                    pos += 1;
                    continue;
                }
                if cands[pos].len() > 1 {
                    frames.push(Frame { pos, next: 0, chain: chain.clone() });
                    reached_end = false;
                    break;
                }
                let c = &info.comps[cands[pos][0] as usize];
                if !chain.insert(c, &self.ends) {
                    reached_end = false;
                    break;
                }
                assign[pos] = c.rep;
                pos += 1;
            }
            if reached_end {
                let mut levels = t.levels.clone();
                levels.push(assign.clone());
                out.push(Tangle { levels });
                if out.len() > TANGLE_BUDGET {
                    return Err(Error::BudgetExceeded("tangle enumeration"));
                }
            }
            // resume at the deepest choice with an untried candidate
            loop {
                let Some(f) = frames.last_mut() else { return Ok(()) };
                let info = &level[f.pos];
                let mut advanced = false;
                while f.next < cands[f.pos].len() {
                    let c = &info.comps[cands[f.pos][f.next] as usize];
                    f.next += 1;
                    let mut trial = f.chain.clone();
                    if trial.insert(c, &self.ends) {
                        chain = trial;
                        assign[f.pos] = c.rep;
                        pos = f.pos + 1;
                        advanced = true;
                        break;
                    }
                }
                if advanced {
                    break;
                }
                frames.pop();
            }
        }
    }
}

/// Minimal chosen components, as vertex and edge-hit sets, for a tangle
/// whose improper small sides have at most `small` vertices.
#[derive(Clone, Debug)]
struct Antichain {
    sets: Vec<(BitSet, BitSet)>,
    small: usize,
}

fn meet3_empty(a: &BitSet, b: &BitSet, c: &BitSet) -> bool {
    a.words().iter().zip(b.words()).zip(c.words()).all(|((x, y), z)| x & y & z == 0)
}

fn with_ends(v: &BitSet, e: &BitSet, ends: &[(Vertex, Vertex)]) -> BitSet {
    let mut w = v.clone();
    for f in e.iter() {
        let (a, b) = ends[f];
        w.insert(a);
        w.insert(b);
    }
    w
}

/// Two sets of at most `small` vertices hold every vertex of `v` and
/// between them induce every edge of `e`.
fn two_coverable(v: &BitSet, e: &BitSet, ends: &[(Vertex, Vertex)], small: usize) -> bool {
    let w = with_ends(v, e, ends);
    let m = w.count();
    if m <= small {
        return true;
    }
    if m > 2 * small {
        return false;
    }
    let ws = w.to_vec();
    // the first set may be taken to contain the least vertex of W
    subsets(m - 1, small - 1).any(|rest| {
        let y1 = BitSet::from_iter(v.capacity(), core::iter::once(ws[0]).chain(rest.iter().map(|&i| ws[i + 1])));
        let mut y2 = v.difference(&y1);
        for f in e.iter() {
            let (a, b) = ends[f];
            if !(y1.contains(a) && y1.contains(b)) {
                y2.insert(a);
                y2.insert(b);
            }
        }
        y2.count() <= small
    })
}

/// Three sets of at most `small` vertices induce all of `G`.
fn three_coverable(n: usize, ends: &[(Vertex, Vertex)], small: usize) -> bool {
    if n <= small {
        return true;
    }
    if n > 3 * small {
        return false;
    }
    subsets(n - 1, small - 1).any(|rest| {
        let y1 = BitSet::from_iter(n, core::iter::once(0).chain(rest.iter().map(|&i| i + 1)));
        let outside = BitSet::from_iter(ends.len(), (0..ends.len()).filter(|&f| !(y1.contains(ends[f].0) && y1.contains(ends[f].1))));
        two_coverable(&y1.complement(), &outside, ends, small)
    })
}

impl Antichain {
    fn keep_minimal(&mut self, c: &Component) {
        self.sets.retain(|(v, _)| !c.vertices.is_subset(v));
    }

    /// Adds a choice unless it completes a covering triple.
    fn insert(&mut self, c: &Component, ends: &[(Vertex, Vertex)]) -> bool {
        if self.sets.iter().any(|(v, _)| v.is_subset(&c.vertices)) {
            return true;
        }
        if two_coverable(&c.vertices, &c.edges, ends, self.small) {
            return false;
        }
        for (v, e) in &self.sets {
            let left = with_ends(&v.intersection(&c.vertices), &e.intersection(&c.edges), ends);
            if left.count() <= self.small {
                return false;
            }
        }
        let new = (c.vertices.clone(), c.edges.clone());
        let len = self.sets.len();
        let get = |i: usize| if i == len { &new } else { &self.sets[i] };
        for a in 0..=len {
            for b in a..=len {
                let (x, y) = (get(a), get(b));
                if meet3_empty(&new.0, &x.0, &y.0) && meet3_empty(&new.1, &x.1, &y.1) {
                    return false;
                }
            }
        }
        self.keep_minimal(c);
        self.sets.push(new);
        true
    }
}

/// A `k`-tangle: for each separator `X` with `|X| < k`, in colex order,
/// the least vertex of the component `β(X)` of `G − X` it points to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tangle {
    levels: Vec<Vec<u32>>,
}

impl Tangle {
    /// The tangle of order `0`, orienting nothing.
    pub fn empty() -> Self {
        Tangle { levels: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    /// Least vertex of `β(X)` for sorted `X`, if `|X| < k`.
    pub fn big_component_rep(&self, x: &[Vertex]) -> Option<Vertex> {
        Some(*self.levels.get(x.len())?.get(colex_rank(x))? as Vertex)
    }

    /// `β(X)` itself.
    pub fn big_component(&self, seps: &Separators, x: &[Vertex]) -> Option<BitSet> {
        let rep = self.big_component_rep(x)?;
        Some(seps.info(x).component_of(rep)?.vertices.clone())
    }

    /// The small side of a separation of order below `k`.
    pub fn orient(&self, s: &Separation) -> Option<OrientedSeparation> {
        let x = s.separator().to_vec();
        let rep = self.big_component_rep(&x)?;
        let [ab, ba] = s.orientations();
        Some(if ab.big.contains(rep) { ab } else { ba })
    }

    pub fn restrict(&self, k: usize) -> Tangle {
        Tangle { levels: self.levels[..k.min(self.order())].to_vec() }
    }

    /// Both orient every separation of order below `min(k, k′)` alike.
    pub fn agrees_with(&self, other: &Tangle) -> bool {
        let k = self.order().min(other.order());
        self.levels[..k] == other.levels[..k]
    }

    /// The lowest separator size at which the two choose differently.
    pub fn first_difference(&self, other: &Tangle) -> Option<usize> {
        self.levels.iter().zip(&other.levels).position(|(a, b)| a != b)
    }

    /// The image under a vertex permutation that is an automorphism.
    pub fn map(&self, seps: &Separators, vertex_map: &[Vertex]) -> Tangle {
        let n = seps.vertex_count();
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(j, lv)| {
                let mut out = vec![0u32; lv.len()];
                for (rank, &rep) in lv.iter().enumerate() {
                    let info = &seps.levels[j][rank];
                    let mut image: Vec<Vertex> = info.members.iter().map(|&v| vertex_map[v]).collect();
                    image.sort_unstable();
                    let target = colex_rank(&image);
                    let comp = seps.levels[j][target].component_of(vertex_map[rep as usize]);
                    out[target] = comp.map_or(n as u32, |c| c.rep);
                }
                out
            })
            .collect();
        Tangle { levels }
    }

    /// `(X, β(X))` for every separator with at least two components.
    pub fn choices(&self, seps: &Separators) -> Vec<(Vec<Vertex>, BitSet)> {
        let mut out = Vec::new();
        for (j, lv) in self.levels.iter().enumerate() {
            for (rank, &rep) in lv.iter().enumerate() {
                let info = &seps.levels[j][rank];
                if info.is_branching() {
                    let beta = info.component_of(rep as usize).expect("rep lies in G − X").vertices.clone();
                    out.push((info.members.clone(), beta));
                }
            }
        }
        out
    }
}

/// All `k`-tangles of `g`, for `1 ≤ k ≤ |V|`.
pub fn enumerate_tangles(g: &Multigraph, k: usize) -> Result<Vec<Tangle>> {
    if k == 0 || k > g.vertex_count() {
        return Err(Error::InvalidParameter("tangle order must lie in 1..=|V|"));
    }
    let seps = Separators::new(g, k)?;
    Ok(seps.tangles_by_order(k)?.pop().unwrap_or_default())
}
