//! Graph families used as hosts, patterns and fixtures.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! a counter-based stream cipher with a fixed, platform-independent output
//! stream, so a seed names the same graph everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters for {family}: {reason}")]
    Invalid { family: String, reason: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(
        "pairing model found no simple {d}-regular graph on {n} vertices in {attempts} attempts"
    )]
    PairingExhausted { n: usize, d: usize, attempts: usize },
}

fn invalid(family: &str, reason: impl Into<String>) -> GenError {
    GenError::Invalid {
        family: family.into(),
        reason: reason.into(),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator edges are valid")
}

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    build(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// Fan: a path on `k` vertices plus a hub (vertex `k`) adjacent to all of them.
pub fn fan(k: usize) -> Graph {
    build(
        k + 1,
        (1..k)
            .map(|v| (v - 1, v))
            .chain((0..k).map(|v| (v, k)))
            .collect::<Vec<_>>(),
    )
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>())
}

/// `rows × cols` grid, vertex `(r, c)` at id `r·cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    build(rows * cols, edges)
}

pub fn disjoint_triangles(k: usize) -> Graph {
    build(
        3 * k,
        (0..k).flat_map(|i| {
            [
                (3 * i, 3 * i + 1),
                (3 * i + 1, 3 * i + 2),
                (3 * i, 3 * i + 2),
            ]
        }),
    )
}

/// Disjoint union, ids of `b` shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    build(
        off + b.n(),
        a.edges()
            .chain(b.edges().map(|(u, v)| (u + off, v + off)))
            .collect::<Vec<_>>(),
    )
}

/// Complete multipartite graph with the given part sizes, parts laid out consecutively.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let mut part_of = Vec::new();
    for (i, &s) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let n = part_of.len();
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part_of[u] != part_of[v])
        .collect();
    build(n, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

/// `G(n, p)`: pairs `u < v` are visited lexicographically and kept when the
/// next uniform `f64` from the seeded stream is below `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("gnp", format!("p = {p} is not a probability")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(build(n, edges))
}

/// Random `d`-regular graph on `n` vertices by the pairing model with
/// pair-level rejection: repeatedly draw two of the remaining points
/// uniformly, reject the draw if it would create a loop or a repeated edge,
/// and restart from scratch when no valid pair remains.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    const ATTEMPTS: usize = 1_000;
    if (n * d) % 2 == 1 {
        return Err(invalid("random-regular", format!("n·d = {} is odd", n * d)));
    }
    if d >= n && !(n == 0 && d == 0) {
        return Err(invalid(
            "random-regular",
            format!("degree {d} needs more than {n} vertices"),
        ));
    }
    let mut r = rng(seed);
    'attempt: for _ in 0..ATTEMPTS {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut g = Graph::new(n);
        while !points.is_empty() {
            let mut placed = false;
            for _ in 0..8 * points.len() {
                let i = r.gen_range(0..points.len());
                let j = r.gen_range(0..points.len());
                let (u, v) = (points[i], points[j]);
                if i == j || u == v || g.has_edge(u, v) {
                    continue;
                }
                g.add_edge(u, v).expect("checked above");
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                points.swap_remove(hi);
                points.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(GenError::PairingExhausted {
        n,
        d,
        attempts: ATTEMPTS,
    })
}

fn numbers<T: std::str::FromStr>(
    family: &str,
    args: &str,
    count: usize,
) -> Result<Vec<T>, GenError> {
    let parts: Vec<&str> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',').map(str::trim).collect()
    };
    if parts.len() != count {
        return Err(invalid(
            family,
            format!("expected {count} parameter(s), got {}", parts.len()),
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<T>()
                .map_err(|_| invalid(family, format!("cannot parse `{p}`")))
        })
        .collect()
}

/// Builds a graph from a `family:params` string, e.g. `cycle:5`,
/// `gnp:100,0.5,1`, `complete-bipartite:3,10`, `random-regular:8,4,3`.
pub fn from_spec(spec: &str) -> Result<Graph, GenError> {
    let (family, args) = spec.split_once(':').unwrap_or((spec, ""));
    let family = family.trim();
    let args = args.trim();
    let one = |f: &str| numbers::<usize>(f, args, 1).map(|v| v[0]);
    match family {
        "empty" => Ok(empty(one(family)?)),
        "complete" => Ok(complete(one(family)?)),
        "path" => Ok(path(one(family)?)),
        "cycle" => {
            let n = one(family)?;
            if n < 3 {
                return Err(invalid(family, "needs at least 3 vertices"));
            }
            Ok(cycle(n))
        }
        "star" => Ok(star(one(family)?)),
        "fan" => Ok(fan(one(family)?)),
        "petersen" => {
            numbers::<usize>(family, args, 0)?;
            Ok(petersen())
        }
        "grid" => {
            let v = numbers::<usize>(family, args, 2)?;
            Ok(grid(v[0], v[1]))
        }
        "disjoint-triangles" => Ok(disjoint_triangles(one(family)?)),
        "complete-bipartite" => {
            let v = numbers::<usize>(family, args, 2)?;
            Ok(complete_bipartite(v[0], v[1]))
        }
        "gnp" => {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(invalid(family, "expected n,p,seed"));
            }
            let n = parts[0]
                .parse()
                .map_err(|_| invalid(family, format!("cannot parse `{}`", parts[0])))?;
            let p = parts[1]
                .parse()
                .map_err(|_| invalid(family, format!("cannot parse `{}`", parts[1])))?;
            let seed = parts[2]
                .parse()
                .map_err(|_| invalid(family, format!("cannot parse `{}`", parts[2])))?;
            gnp(n, p, seed)
        }
        "random-regular" => {
            let v = numbers::<u64>(family, args, 3)?;
            random_regular(v[0] as usize, v[1] as usize, v[2])
        }
        other => Err(GenError::UnknownFamily(other.to_string())),
    }
}
