//! Seeded k-outerplanar instances and a small set of named fixtures.
//!
//! Generated instances are `k` nested cycles `C_1` (outermost) to `C_k`.
//! Consecutive cycles are joined by non-crossing spokes, and each cycle
//! carries non-crossing chords on its inner side, confined to the cells cut
//! out by the spokes towards the next cycle. Every vertex of `C_l` lies on a
//! face shared with `C_{l-1}` and on no face reaching `C_{l-2}`, so the
//! outerplanarity index is exactly `k`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embedding::Embedding;
use crate::layers::outerplanarity_index;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown fixture name {0:?}")]
    UnknownName(String),
    #[error("need k >= 1 and n >= 3k (got k = {k}, n = {n})")]
    TooSmall { k: usize, n: usize },
    #[error("no instance of index {k} after {attempts} attempts (last had index {achieved})")]
    Unsatisfiable {
        k: usize,
        attempts: usize,
        achieved: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub k: usize,
    pub n_target: usize,
    pub seed: u64,
    /// Probability of placing each candidate chord, in `[0, 1]`.
    pub chord_density: f64,
    /// Spokes between two consecutive cycles, as a fraction of the smaller
    /// cycle; at least one spoke is always placed.
    pub spoke_density: f64,
}

impl GenSpec {
    pub fn new(k: usize, n_target: usize, seed: u64) -> Self {
        GenSpec {
            k,
            n_target,
            seed,
            chord_density: 0.3,
            spoke_density: 0.3,
        }
    }
}

const ATTEMPTS: usize = 8;

pub fn generate(spec: &GenSpec) -> Result<Embedding, GenError> {
    if spec.k == 0 || spec.n_target < 3 * spec.k {
        return Err(GenError::TooSmall {
            k: spec.k,
            n: spec.n_target,
        });
    }
    let mut achieved = 0;
    for attempt in 0..ATTEMPTS as u64 {
        let seed = spec
            .seed
            .wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let emb = nested_cycles(spec, seed);
        achieved = outerplanarity_index(&emb);
        if achieved == spec.k {
            return Ok(emb);
        }
    }
    Err(GenError::Unsatisfiable {
        k: spec.k,
        attempts: ATTEMPTS,
        achieved,
    })
}

// Counterclockwise position classes of the edges around a cycle vertex.
const PREV: u8 = 0;
const OUT_SPOKE: u8 = 1;
const NEXT: u8 = 2;
const FWD_CHORD: u8 = 3;
const IN_SPOKE: u8 = 4;
const BACK_CHORD: u8 = 5;

fn nested_cycles(spec: &GenSpec, seed: u64) -> Embedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = spec.k;
    let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(1.0..2.0)).collect();
    let total: f64 = weights.iter().sum();
    let spare = (spec.n_target - 3 * k) as f64;
    let shares: Vec<f64> = weights.iter().map(|w| spare * w / total).collect();
    let mut sizes: Vec<usize> = shares.iter().map(|s| 3 + s.floor() as usize).collect();
    let mut by_remainder: Vec<usize> = (0..k).collect();
    by_remainder.sort_by(|&a, &b| {
        (shares[b] - shares[b].floor()).total_cmp(&(shares[a] - shares[a].floor()))
    });
    let short = spec.n_target - sizes.iter().sum::<usize>();
    for &l in &by_remainder[..short] {
        sizes[l] += 1;
    }
    let mut offset = vec![0; k + 1];
    for l in 0..k {
        offset[l + 1] = offset[l] + sizes[l];
    }
    let n = offset[k];
    let id = |l: usize, i: usize| offset[l] + i % sizes[l];

    // (ccw class, key, neighbor) per vertex
    let mut slots: Vec<Vec<(u8, i64, usize)>> = vec![Vec::new(); n];
    for l in 0..k {
        for i in 0..sizes[l] {
            let v = id(l, i);
            slots[v].push((PREV, 0, id(l, i + sizes[l] - 1)));
            slots[v].push((NEXT, 0, id(l, i + 1)));
        }
    }

    let mut pairs = std::collections::HashSet::new();
    for l in 0..k {
        let s = sizes[l];
        // Spoke positions on C_l towards C_{l+1}; they bound the chord cells.
        let cuts: Vec<usize> = if l + 1 < k {
            let s2 = sizes[l + 1];
            let t = ((spec.spoke_density * s.min(s2) as f64).round() as usize).clamp(1, s.min(s2));
            let mut outer: Vec<usize> = rand::seq::index::sample(&mut rng, s, t).into_vec();
            let mut inner: Vec<usize> = rand::seq::index::sample(&mut rng, s2, t).into_vec();
            outer.sort_unstable();
            inner.sort_unstable();
            for (&a, &b) in outer.iter().zip(&inner) {
                let (u, v) = (id(l, a), id(l + 1, b));
                slots[u].push((IN_SPOKE, -(b as i64), v));
                slots[v].push((OUT_SPOKE, a as i64, u));
            }
            outer
        } else {
            vec![rng.gen_range(0..s)]
        };
        for c in 0..cuts.len() {
            let start = cuts[c];
            let len = if c + 1 < cuts.len() {
                cuts[c + 1] - start
            } else {
                cuts[0] + s - start
            };
            let mut stack = vec![(0usize, len)];
            while let Some((a, b)) = stack.pop() {
                if b - a < 2 {
                    continue;
                }
                let d = b - a;
                if d <= s - 2 && rng.gen_bool(spec.chord_density) {
                    let (u, v) = (id(l, start + a), id(l, start + b));
                    if pairs.insert((u.min(v), u.max(v))) {
                        slots[u].push((FWD_CHORD, d as i64, v));
                        slots[v].push((BACK_CHORD, -(d as i64), u));
                    }
                }
                let mid = rng.gen_range(a + 1..b);
                stack.push((mid, b));
                stack.push((a, mid));
            }
        }
    }

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut rotations = vec![Vec::new(); n];
    for v in 0..n {
        let mut ring = std::mem::take(&mut slots[v]);
        ring.sort_by_key(|&(class, key, _)| (class, key));
        rotations[perm[v]] = ring.iter().rev().map(|&(_, _, u)| perm[u]).collect();
    }
    let hint = (perm[id(0, 1)], perm[id(0, 0)]);
    Embedding::from_rotations(n, &rotations, &[hint]).expect("generated rotation system is plane")
}

/// Named fixtures: `c{n}` cycles, `p{n}` paths, `star{n}`, `k4`,
/// `grid{r}x{c}`, `nested` (two triangles joined by three spokes) and
/// `fig2` (hexagon with an attached branch, a second wheel and an inner
/// tree).
pub fn canned(name: &str) -> Result<Embedding, GenError> {
    let unknown = || GenError::UnknownName(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if let Some(rest) = name.strip_prefix("grid") {
        let (r, c) = rest.split_once('x').ok_or_else(unknown)?;
        let (r, c) = (num(r)?, num(c)?);
        if r == 0 || c == 0 {
            return Err(unknown());
        }
        return Ok(grid(r, c));
    }
    if let Some(rest) = name.strip_prefix("star") {
        let leaves = num(rest)?;
        let mut coords = vec![(0.0, 0.0)];
        let mut edges = Vec::new();
        for i in 0..leaves {
            coords.push(polar(i, leaves));
            edges.push((0, i + 1));
        }
        let hints: &[(usize, usize)] = if leaves > 0 { &[(0, 1)] } else { &[] };
        return Ok(from_coords(&coords, &edges, hints));
    }
    if let Some(rest) = name.strip_prefix("wheel") {
        let rim = num(rest)?;
        if rim < 3 {
            return Err(unknown());
        }
        let mut coords = vec![(0.0, 0.0)];
        let mut edges = Vec::new();
        for i in 0..rim {
            coords.push(polar(i, rim));
            edges.push((i + 1, (i + 1) % rim + 1));
            edges.push((0, i + 1));
        }
        return Ok(from_coords(&coords, &edges, &[(2, 1)]));
    }
    match name {
        "k4" => {
            let coords = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)];
            let edges = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];
            return Ok(from_coords(&coords, &edges, &[(0, 2)]));
        }
        "nested" => {
            let coords = [
                (0.0, 0.0),
                (4.0, 0.0),
                (2.0, 3.0),
                (1.5, 0.8),
                (2.5, 0.8),
                (2.0, 1.8),
            ];
            let edges = [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ];
            return Ok(from_coords(&coords, &edges, &[(0, 2)]));
        }
        "fig2" => return Ok(fig2()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix('c') {
        let n = num(rest)?;
        if n < 3 {
            return Err(unknown());
        }
        let coords: Vec<_> = (0..n).map(|i| polar(i, n)).collect();
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        return Ok(from_coords(&coords, &edges, &[(1, 0)]));
    }
    if let Some(rest) = name.strip_prefix('p') {
        let n = num(rest)?;
        if n == 0 {
            return Err(unknown());
        }
        let coords: Vec<_> = (0..n).map(|i| (i as f64, 0.0)).collect();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let hints: &[(usize, usize)] = if n > 1 { &[(0, 1)] } else { &[] };
        return Ok(from_coords(&coords, &edges, hints));
    }
    Err(unknown())
}

fn polar(i: usize, n: usize) -> (f64, f64) {
    let a = std::f64::consts::TAU * i as f64 / n as f64;
    (a.cos(), a.sin())
}

fn grid(rows: usize, cols: usize) -> Embedding {
    let mut coords = Vec::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            coords.push((c as f64, -(r as f64)));
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    let hints: &[(usize, usize)] = if rows * cols > 1 { &[(0, 1)] } else { &[] };
    from_coords(&coords, &edges, hints)
}

fn fig2() -> Embedding {
    // w1..w6 = 0..5, b1 = 6, t = 7, x = 8, v1..v3 = 9..11
    let coords = [
        (-2.0, 0.0),
        (-1.0, 1.7),
        (1.0, 1.7),
        (2.0, 0.0),
        (1.0, -1.7),
        (-1.0, -1.7),
        (-3.0, 0.0),
        (0.5, 0.5),
        (0.0, -0.5),
        (-4.0, 0.0),
        (-5.0, 1.0),
        (-5.0, -1.0),
    ];
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([
        (0, 6),
        (6, 9),
        (9, 10),
        (10, 11),
        (11, 9),
        (1, 7),
        (7, 3),
        (7, 8),
    ]);
    from_coords(&coords, &edges, &[(1, 2)])
}

/// Straight-line drawing to rotation system: neighbors in clockwise
/// (decreasing angle) order.
fn from_coords(
    coords: &[(f64, f64)],
    edges: &[(usize, usize)],
    hints: &[(usize, usize)],
) -> Embedding {
    let n = coords.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let rotations: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let (x, y) = coords[u];
            let mut nb: Vec<(f64, usize)> = adj[u]
                .iter()
                .map(|&v| ((coords[v].1 - y).atan2(coords[v].0 - x), v))
                .collect();
            nb.sort_by(|a, b| b.0.total_cmp(&a.0));
            nb.into_iter().map(|(_, v)| v).collect()
        })
        .collect();
    Embedding::from_rotations(n, &rotations, hints).expect("fixture drawing is plane")
}
