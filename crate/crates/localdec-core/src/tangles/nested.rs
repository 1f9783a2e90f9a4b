use super::engine::{SeparatorInfo, Separators, Tangle};
use super::{is_tight, Separation, SEPARATION_BUDGET};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::multigraph::iso::{automorphism_generators, DEFAULT_BUDGET};
use crate::multigraph::Multigraph;
use crate::Verdict;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Separations at `info` with the component of `a` on one side and that
/// of `b` on the other.
fn separations_between(info: &SeparatorInfo, n: usize, a: usize, b: usize) -> Result<Vec<Separation>> {
    let x = BitSet::from_iter(n, info.members.iter().copied());
    let ia = info.comps.iter().position(|c| c.vertices.contains(a)).expect("rep lies in G − X");
    let ib = info.comps.iter().position(|c| c.vertices.contains(b)).expect("rep lies in G − X");
    let others: Vec<usize> = (0..info.comps.len()).filter(|&i| i != ia && i != ib).collect();
    if others.len() >= 30 || 1usize << others.len() > SEPARATION_BUDGET {
        return Err(Error::BudgetExceeded("distinguishing separations"));
    }
    let mut out = Vec::with_capacity(1 << others.len());
    for mask in 0..(1usize << others.len()) {
        let mut sa = x.union(&info.comps[ia].vertices);
        let mut sb = x.union(&info.comps[ib].vertices);
        for (bit, &i) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                sa.union_with(&info.comps[i].vertices);
            } else {
                sb.union_with(&info.comps[i].vertices);
            }
        }
        out.push(Separation::new(sa, sb));
    }
    Ok(out)
}

fn distinguishing_at(seps: &Separators, t1: &Tangle, t2: &Tangle, j: usize) -> Result<Vec<Separation>> {
    let n = seps.vertex_count();
    let mut out = Vec::new();
    for info in &seps.levels[j] {
        let (Some(a), Some(b)) = (t1.big_component_rep(&info.members), t2.big_component_rep(&info.members)) else {
            continue;
        };
        if a != b {
            out.extend(separations_between(info, n, a, b)?);
        }
    }
    Ok(out)
}

/// All separations the two tangles orient differently, and the efficient
/// ones among them, those of least order. Both empty when one tangle
/// extends the other.
pub fn distinguishers(seps: &Separators, t1: &Tangle, t2: &Tangle) -> Result<(Vec<Separation>, Vec<Separation>)> {
    let Some(first) = t1.first_difference(t2) else {
        return Ok((Vec::new(), Vec::new()));
    };
    let mut all = Vec::new();
    for j in first..t1.order().min(t2.order()) {
        all.extend(distinguishing_at(seps, t1, t2, j)?);
    }
    let efficient = distinguishing_at(seps, t1, t2, first)?;
    Ok((all, efficient))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedOptions {
    pub max_tangle_order: usize,
    /// Search-node budget for the automorphism check.
    pub automorphism_budget: usize,
    /// Keep only tangles whose every choice meets this set; the rim
    /// heuristic for truncated balls.
    pub interior: Option<BitSet>,
    /// Stop at the last order within the separator and tangle budgets
    /// instead of failing; recorded in [`NestedSet::budget_capped`].
    pub degrade_on_budget: bool,
}

impl NestedOptions {
    pub fn new(max_tangle_order: usize) -> Self {
        NestedOptions { max_tangle_order, automorphism_budget: DEFAULT_BUDGET, interior: None, degrade_on_budget: false }
    }
}

/// `N(G)` with the evidence behind it.
#[derive(Clone, Debug)]
pub struct NestedSet {
    pub separations: Vec<Separation>,
    /// For each separation, the tangle pairs it distinguishes as one of
    /// their least-crossing efficient distinguishers.
    pub tags: Vec<Vec<(usize, usize)>>,
    /// The tangles that are not restrictions of other tangles found.
    pub tangles: Vec<Tangle>,
    pub max_tangle_order: usize,
    /// The highest order at which tangles exist, at most the cap.
    pub top_order: usize,
    /// Size of the pool `D` of efficient distinguishers.
    pub pool_size: usize,
    /// Tangles dropped by the rim heuristic.
    pub rim_dropped: usize,
    /// The search stopped below the cap on budget.
    pub budget_capped: bool,
    pub automorphism_invariant: Verdict,
}

/// Definition of `N(G)`: for each pair of distinguishable tangles, the
/// efficient distinguishers crossing the fewest members of the pool `D`
/// of all efficient distinguishers; ties keep every minimiser.
pub fn canonical_nested_set(g: &Multigraph, opts: &NestedOptions) -> Result<NestedSet> {
    let k = opts.max_tangle_order.min(g.vertex_count());
    if k == 0 {
        return Err(Error::InvalidParameter("tangle order must be positive"));
    }
    // no j-tangles means none of higher order, so separators are indexed
    // one size at a time and the search stops at the first empty order
    let mut seps = Separators::new(g, 0)?;
    let mut by_order: Vec<Vec<Tangle>> = Vec::new();
    let mut current = vec![Tangle::empty()];
    let mut budget_capped = false;
    while by_order.len() < k && !current.is_empty() {
        match seps.push_level(g).and_then(|()| seps.extend_all(&current)) {
            Ok(next) => current = next,
            Err(Error::BudgetExceeded(_)) if opts.degrade_on_budget => {
                budget_capped = true;
                break;
            }
            Err(e) => return Err(e),
        }
        by_order.push(current.clone());
    }
    let mut rim_dropped = 0;
    let keep = |t: &Tangle| match &opts.interior {
        None => true,
        Some(core) => t.choices(&seps).iter().all(|(_, beta)| beta.intersects(core)),
    };
    let mut tangles = Vec::new();
    for (i, order) in by_order.iter().enumerate() {
        for t in order {
            if !keep(t) {
                rim_dropped += 1;
                continue;
            }
            let extended = by_order.get(i + 1).is_some_and(|next| next.iter().any(|u| u.restrict(i + 1) == *t && keep(u)));
            if !extended {
                tangles.push(t.clone());
            }
        }
    }
    // pool of efficient distinguishers, with each pair's share
    let mut pool: BTreeMap<Separation, usize> = BTreeMap::new();
    let mut pairs: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    for a in 0..tangles.len() {
        for b in a + 1..tangles.len() {
            let Some(j) = tangles[a].first_difference(&tangles[b]) else { continue };
            let eff = distinguishing_at(&seps, &tangles[a], &tangles[b], j)?;
            let ids = eff
                .into_iter()
                .map(|s| {
                    let next = pool.len();
                    *pool.entry(s).or_insert(next)
                })
                .collect();
            pairs.push(((a, b), ids));
        }
    }
    if pool.len() > 20_000 {
        return Err(Error::BudgetExceeded("distinguisher pool"));
    }
    let mut members: Vec<Separation> = Vec::new();
    members.resize(pool.len(), Separation::new(BitSet::new(0), BitSet::new(0)));
    for (s, &i) in &pool {
        members[i] = s.clone();
    }
    let crossings: Vec<usize> = members
        .iter()
        .map(|s| members.iter().filter(|t| s.crosses(t)).count())
        .collect();
    let mut chosen: BTreeMap<Separation, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for (pair, ids) in &pairs {
        let least = ids.iter().map(|&i| crossings[i]).min().expect("distinguishable pairs have distinguishers");
        for &i in ids {
            if crossings[i] == least {
                chosen.entry(members[i].clone()).or_default().insert(*pair);
            }
        }
    }
    let separations: Vec<Separation> = chosen.keys().cloned().collect();
    let tags = chosen.into_values().map(|s| s.into_iter().collect()).collect();
    for (i, s) in separations.iter().enumerate() {
        if !is_tight(g, s) {
            return Err(Error::Postcondition(format!("member {i} of N is not tight")));
        }
        for t in &separations[i + 1..] {
            if s.crosses(t) {
                return Err(Error::Postcondition("N contains crossing separations".into()));
            }
        }
    }
    let automorphism_invariant = invariance(g, &separations, opts.automorphism_budget);
    Ok(NestedSet {
        separations,
        tags,
        tangles,
        max_tangle_order: k,
        top_order: by_order.iter().filter(|o| !o.is_empty()).count(),
        pool_size: pool.len(),
        rim_dropped,
        budget_capped,
        automorphism_invariant,
    })
}

/// Whether every automorphism maps the set onto itself, checked on a
/// generating set.
pub(crate) fn invariance(g: &Multigraph, set: &[Separation], budget: usize) -> Verdict {
    let members: BTreeSet<&Separation> = set.iter().collect();
    match automorphism_generators(g, budget) {
        None => Verdict::Undecided,
        Some(gens) => Verdict::from(
            gens.iter().all(|phi| set.iter().all(|s| members.contains(&s.map(&phi.vertex_map)))),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cliques_in_a_row(count: usize, size: usize) -> Multigraph {
        // consecutive cliques share one vertex
        let mut e = Vec::new();
        for c in 0..count {
            let base = c * (size - 1);
            for a in 0..size {
                for b in a + 1..size {
                    e.push((base + a, base + b));
                }
            }
        }
        Multigraph::from_edges(count * (size - 1) + 1, &e)
    }

    #[test]
    fn k5_has_nothing_to_distinguish() {
        let k5 = cliques_in_a_row(1, 5);
        for k in 1..=5 {
            let n = canonical_nested_set(&k5, &NestedOptions::new(k)).unwrap();
            assert!(n.separations.is_empty());
            assert_eq!(n.tangles.len(), 1);
        }
    }

    #[test]
    fn two_k5s_give_the_cut() {
        let g = cliques_in_a_row(2, 5);
        let n = canonical_nested_set(&g, &NestedOptions::new(4)).unwrap();
        assert_eq!(n.separations.len(), 1);
        assert_eq!(n.separations[0].order(), 1);
        assert_eq!(n.separations[0].separator().to_vec(), [4]);
        assert_eq!(n.pool_size, 1);
        assert_eq!(n.automorphism_invariant, Verdict::True);
    }

    #[test]
    fn three_k5s_give_both_cuts() {
        let g = cliques_in_a_row(3, 5);
        let n = canonical_nested_set(&g, &NestedOptions::new(3)).unwrap();
        let cuts: Vec<_> = n.separations.iter().map(|s| s.separator().to_vec()).collect();
        assert_eq!(cuts, [[4], [8]].map(|c| c.to_vec()));
        assert!(n.separations[0].is_nested_with(&n.separations[1]));
    }

    #[test]
    fn efficient_distinguisher_of_two_k5s() {
        let g = cliques_in_a_row(2, 5);
        let seps = Separators::new(&g, 3).unwrap();
        let ts = seps.tangles_by_order(3).unwrap().pop().unwrap();
        let (all, eff) = distinguishers(&seps, &ts[0], &ts[1]).unwrap();
        assert_eq!(eff.len(), 1);
        assert!(all.len() >= eff.len());
        assert!(all.iter().all(|s| s.order() < 3));
        assert_eq!(distinguishers(&seps, &ts[0], &ts[0]).unwrap().0, []);
        let brute: Vec<_> = super::super::brute::separations(&g, 3)
            .into_iter()
            .filter(|s| s.is_proper() && ts[0].orient(s) != ts[1].orient(s))
            .collect();
        let mut all = all;
        all.sort();
        assert_eq!(all, brute);
    }
}
