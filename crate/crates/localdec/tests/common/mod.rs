#![allow(dead_code)]

use localdec::json::GraphJson;
use localdec_core::multigraph::Multigraph;
use std::path::{Path, PathBuf};

pub fn complete(n: usize) -> Multigraph {
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            e.push((a, b));
        }
    }
    Multigraph::from_edges(n, &e)
}

pub fn cycle(n: usize) -> Multigraph {
    let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Multigraph::from_edges(n, &e)
}

/// `count` copies of `K5`, consecutive ones sharing a vertex; closed up
/// into a necklace when `cyclic`.
pub fn k5s(count: usize, cyclic: bool) -> Multigraph {
    let n = if cyclic { count * 4 } else { count * 4 + 1 };
    let mut e = Vec::new();
    for c in 0..count {
        let vs: Vec<usize> = (0..5).map(|i| (c * 4 + i) % n).collect();
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((vs[a], vs[b]));
            }
        }
    }
    Multigraph::from_edges(n, &e)
}

/// `Cay(Z_n, {1})` with every edge labelled `s`, tail first.
pub fn cyclic_cayley(n: usize) -> GraphJson {
    let mut json = GraphJson::from_graph(&cycle(n));
    for (i, e) in json.edges.iter_mut().enumerate() {
        e.ends = [format!("v{i}"), format!("v{}", (i + 1) % n)];
        e.label = Some("s".into());
    }
    json
}

pub fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

pub fn write_graph(dir: &Path, name: &str, g: &Multigraph) -> PathBuf {
    write_json(dir, name, &GraphJson::from_graph(g))
}

/// Seeded random connected multigraphs: a random spanning tree plus extra
/// edges, now and then a parallel edge or a loop.
pub fn corpus(count: usize, max_vertices: usize, max_edges: usize, seed: u64) -> Vec<Multigraph> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=max_vertices);
        let m = rng.gen_range(n - 1..=max_edges.max(n - 1));
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let mut tries = 0;
        while edges.len() < m && tries < 1000 {
            tries += 1;
            let roll: f64 = rng.gen();
            let a = rng.gen_range(0..n);
            if roll < 0.03 {
                edges.push((a, a));
                continue;
            }
            let b = rng.gen_range(0..n);
            let (a, b) = (a.min(b), a.max(b));
            if a == b {
                continue;
            }
            if roll < 0.1 || !edges.contains(&(a, b)) {
                edges.push((a, b));
            }
        }
        out.push(Multigraph::from_edges(n, &edges));
    }
    out
}

/// The surface of the cube `[0, n]³` cut into unit squares, with antipodal
/// points identified: a quadrangulated projective plane whose 4-local cover
/// is the sphere it came from.
pub fn hemicube(n: usize) -> Multigraph {
    let on_surface = |p: [usize; 3]| p.iter().any(|&x| x == 0 || x == n);
    let antipode = |p: [usize; 3]| p.map(|x| n - x);
    let class = |p: [usize; 3]| p.min(antipode(p));
    let mut reps: Vec<[usize; 3]> = Vec::new();
    for x in 0..=n {
        for y in 0..=n {
            for z in 0..=n {
                let p = [x, y, z];
                if on_surface(p) && class(p) == p {
                    reps.push(p);
                }
            }
        }
    }
    let index = |p: [usize; 3]| reps.binary_search(&class(p)).unwrap();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: Vec<([usize; 3], [usize; 3])> = Vec::new();
    for x in 0..=n {
        for y in 0..=n {
            for z in 0..=n {
                let p = [x, y, z];
                for axis in 0..3 {
                    if p[axis] == n {
                        continue;
                    }
                    let mut q = p;
                    q[axis] += 1;
                    // the unit segment lies on the surface when another
                    // coordinate is extreme
                    let lies = (0..3).any(|i| i != axis && (p[i] == 0 || p[i] == n));
                    if !lies {
                        continue;
                    }
                    let key = (p, q).min((antipode(q), antipode(p)));
                    if !seen.contains(&key) {
                        seen.push(key);
                        edges.push((index(p), index(q)));
                    }
                }
            }
        }
    }
    Multigraph::from_edges(reps.len(), &edges)
}

/// `Cay(Z4³ / ⟨(2,2,2)⟩, {e1, e2, e3})`. Relators of length at most 5 hold
/// in `Z4³` already, so the 4-local cover is `Cay(Z4³)` on two sheets.
pub fn z4_cubed_mod_diagonal() -> Multigraph {
    let canon = |v: [usize; 3]| {
        let w = v.map(|x| (x + 2) % 4);
        v.min(w)
    };
    let mut elems: Vec<[usize; 3]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let v = canon([a, b, c]);
                if !elems.contains(&v) {
                    elems.push(v);
                }
            }
        }
    }
    elems.sort();
    let index = |v: [usize; 3]| elems.binary_search(&canon(v)).unwrap();
    let mut edges = Vec::new();
    for &v in &elems {
        for axis in 0..3 {
            let mut w = v;
            w[axis] = (w[axis] + 1) % 4;
            edges.push((index(v), index(w)));
        }
    }
    Multigraph::from_edges(elems.len(), &edges)
}

/// A hand-built cover of `K4` plus a loop at vertex 0: the loop's voltage
/// generates `Z_order` and every other chord is trivial, giving `order`
/// copies of `K4` hung on a cycle (a parallel pair for two sheets).
pub fn loop_cover(order: usize) -> localdec_core::localcover::Covering {
    use localdec_core::grouppres::{todd_coxeter, ChordAlphabet, FiniteGroup, FreeWord, Letter, Presentation};
    use localdec_core::multigraph::spanning_tree;
    let mut e: Vec<(usize, usize)> = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            e.push((a, b));
        }
    }
    e.push((0, 0));
    let g = Multigraph::from_edges(4, &e);
    let alphabet = ChordAlphabet::new(&g, spanning_tree(&g, 0).unwrap());
    let chords = alphabet.generator_names(&g).len();
    let looped = alphabet.generator_of(6).unwrap();
    let relators = (0..chords)
        .map(|i| {
            let x = FreeWord::letter(Letter::new(i, false));
            if i == looped {
                x.pow(order)
            } else {
                x
            }
        })
        .collect();
    let names = (0..chords).map(|i| format!("x{i}")).collect();
    let pres = Presentation::new(names, relators).unwrap();
    let group = FiniteGroup::from_table(todd_coxeter(&pres, 100).table()).unwrap();
    localdec_core::localcover::Covering::derived(&g, 0, &alphabet, group).unwrap()
}

/// `K6` minus a perfect matching.
pub fn octahedron() -> Multigraph {
    let mut e = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if b != a + 3 {
                e.push((a, b));
            }
        }
    }
    Multigraph::from_edges(6, &e)
}

pub fn petersen() -> Multigraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::from_edges(10, &e)
}

pub fn cube() -> Multigraph {
    let mut e = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                e.push((v, v | bit));
            }
        }
    }
    Multigraph::from_edges(8, &e)
}

pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let mut e = Vec::new();
    for x in 0..a {
        for y in 0..b {
            e.push((x, a + y));
        }
    }
    Multigraph::from_edges(a + b, &e)
}
