//! Text formats: `.emb` embeddings, PACE `.td` tree decompositions, `.bd`
//! branch decompositions and the forest dump. Vertex and node ids are
//! 1-based in files.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::branch::{BranchComponent, BranchDecomposition};
use crate::embedding::{Embedding, EmbeddingError};
use crate::forest::{SpanningForest, StrippingTrace};
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Meaningful lines as `(1-based line number, tokens)`; blank and `c`
/// lines are skipped.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn number(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a number, found `{tok}`")))
}

/// 1-based id in `1..=n`, returned 0-based.
fn id(line: usize, tok: &str, n: usize, what: &str) -> Result<usize, ParseError> {
    let x = number(line, tok)?;
    if x == 0 || x > n {
        return Err(syntax(line, format!("{what} {x} out of range 1..={n}")));
    }
    Ok(x - 1)
}

fn expect_len(line: usize, toks: &[&str], len: usize) -> Result<(), ParseError> {
    if toks.len() != len {
        return Err(syntax(
            line,
            format!("expected {} fields, found {}", len, toks.len()),
        ));
    }
    Ok(())
}

pub fn parse_emb(text: &str) -> Result<Embedding, ParseError> {
    let mut lines = records(text);
    let (hl, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    if header.len() != 4 || header[0] != "p" || header[1] != "emb" {
        return Err(syntax(hl, "expected `p emb n m`"));
    }
    let n = number(hl, header[2])?;
    let m = number(hl, header[3])?;
    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut hints = Vec::new();
    for (l, toks) in lines {
        match toks[0] {
            "r" => {
                if toks.len() < 2 {
                    return Err(syntax(l, "expected `r v u1 ... ud`"));
                }
                let v = id(l, toks[1], n, "vertex")?;
                if rotations[v].is_some() {
                    return Err(syntax(l, format!("second rotation for vertex {}", v + 1)));
                }
                let rot = toks[2..]
                    .iter()
                    .map(|t| id(l, t, n, "vertex"))
                    .collect::<Result<Vec<_>, _>>()?;
                rotations[v] = Some(rot);
            }
            "o" => {
                expect_len(l, &toks, 3)?;
                hints.push((id(l, toks[1], n, "vertex")?, id(l, toks[2], n, "vertex")?));
            }
            other => return Err(syntax(l, format!("unknown record `{other}`"))),
        }
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(hl, format!("no rotation for vertex {}", v + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let emb = Embedding::from_rotations(n, &rotations, &hints)?;
    if emb.m() != m {
        return Err(syntax(
            hl,
            format!("header says {} edges, rotations give {}", m, emb.m()),
        ));
    }
    Ok(emb)
}

pub fn write_emb(emb: &Embedding) -> String {
    let mut out = format!("p emb {} {}\n", emb.n(), emb.m());
    for (v, rot) in emb.rotations().iter().enumerate() {
        out.push_str(&format!("r {}", v + 1));
        for u in rot {
            write!(out, " {}", u + 1).unwrap();
        }
        out.push('\n');
    }
    for &(u, v) in emb.hints() {
        writeln!(out, "o {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// PACE format: `s td N W n`, `b i v...` per bag, then one `a b` line per
/// tree edge. `W` is the largest bag size.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let max_bag = td.bags().map(<[usize]>::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.node_count(), max_bag, n);
    for (i, bag) in td.bags().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize), ParseError> {
    let mut lines = records(text);
    let (hl, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(syntax(hl, "expected `s td N W n`"));
    }
    let nodes = number(hl, header[2])?;
    let max_bag = number(hl, header[3])?;
    let n = number(hl, header[4])?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nodes];
    let mut edges = Vec::new();
    for (l, toks) in lines {
        if toks[0] == "b" {
            if toks.len() < 2 {
                return Err(syntax(l, "expected `b i v...`"));
            }
            let i = id(l, toks[1], nodes, "bag")?;
            if bags[i].is_some() {
                return Err(syntax(l, format!("bag {} given twice", i + 1)));
            }
            let bag = toks[2..]
                .iter()
                .map(|t| id(l, t, n, "vertex"))
                .collect::<Result<Vec<_>, _>>()?;
            if bag.len() > max_bag {
                return Err(syntax(
                    l,
                    format!("bag {} exceeds declared size {}", i + 1, max_bag),
                ));
            }
            bags[i] = Some(bag);
        } else {
            expect_len(l, &toks, 2)?;
            edges.push((id(l, toks[0], nodes, "bag")?, id(l, toks[1], nodes, "bag")?));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| syntax(hl, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((TreeDecomposition::new(bags, edges), n))
}

/// One block per component: `s bd N L m` with `L` the width and `m` the
/// number of graph edges in the component, then `l node u v` per leaf and
/// `t a b` per tree edge.
pub fn write_bd(bd: &BranchDecomposition, graph: &Graph) -> String {
    let mut out = String::new();
    for part in &bd.components {
        writeln!(
            out,
            "s bd {} {} {}",
            part.node_count,
            part.width,
            part.leaves.len()
        )
        .unwrap();
        for &(x, e) in &part.leaves {
            let (u, v) = graph.edge(e);
            writeln!(out, "l {} {} {}", x + 1, u + 1, v + 1).unwrap();
        }
        for &(a, b) in &part.tree_edges {
            writeln!(out, "t {} {}", a + 1, b + 1).unwrap();
        }
    }
    out
}

pub fn parse_bd(text: &str, graph: &Graph) -> Result<BranchDecomposition, ParseError> {
    let edge_id: HashMap<(usize, usize), usize> = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| ((u.min(v), u.max(v)), e))
        .collect();
    let mut bd = BranchDecomposition::default();
    let mut expected_leaves = 0;
    let finish = |part: &BranchComponent, expected: usize, l: usize| {
        if part.leaves.len() != expected {
            return Err(syntax(
                l,
                format!(
                    "block declares {} edges but lists {}",
                    expected,
                    part.leaves.len()
                ),
            ));
        }
        Ok(())
    };
    let mut last_line = 0;
    for (l, toks) in records(text) {
        last_line = l;
        match toks[0] {
            "s" => {
                if let Some(part) = bd.components.last() {
                    finish(part, expected_leaves, l)?;
                }
                if toks.len() != 5 || toks[1] != "bd" {
                    return Err(syntax(l, "expected `s bd N L m`"));
                }
                let nodes = number(l, toks[2])?;
                let width = number(l, toks[3])?;
                expected_leaves = number(l, toks[4])?;
                bd.components.push(BranchComponent {
                    node_count: nodes,
                    tree_edges: Vec::new(),
                    leaves: Vec::new(),
                    origins: Vec::new(),
                    width,
                });
            }
            "l" | "t" => {
                let part = bd.components.last_mut().ok_or(ParseError::MissingHeader)?;
                let nodes = part.node_count;
                if toks[0] == "l" {
                    expect_len(l, &toks, 4)?;
                    let x = id(l, toks[1], nodes, "node")?;
                    let u = id(l, toks[2], graph.n(), "vertex")?;
                    let v = id(l, toks[3], graph.n(), "vertex")?;
                    let e = *edge_id
                        .get(&(u.min(v), u.max(v)))
                        .ok_or_else(|| syntax(l, format!("{}-{} is not an edge", u + 1, v + 1)))?;
                    part.leaves.push((x, e));
                } else {
                    expect_len(l, &toks, 3)?;
                    part.tree_edges.push((
                        id(l, toks[1], nodes, "node")?,
                        id(l, toks[2], nodes, "node")?,
                    ));
                    part.origins.push(Vec::new());
                }
            }
            other => return Err(syntax(l, format!("unknown record `{other}`"))),
        }
    }
    if let Some(part) = bd.components.last() {
        finish(part, expected_leaves, last_line)?;
    }
    Ok(bd)
}

/// `f u v step` for every forest edge, where `step` is the stripping step
/// that removed the edge and 0 marks the residual forest.
pub fn write_forest(emb: &Embedding, forest: &SpanningForest, trace: &StrippingTrace) -> String {
    let mut out = String::new();
    for e in forest.forest_edges() {
        let (u, v) = emb.edge_endpoints(e);
        writeln!(out, "f {} {} {}", u + 1, v + 1, trace.step_of_edge[e]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{canned, generate, GenSpec};
    use crate::pipeline::{branch_decompose, decompose};

    #[test]
    fn emb_round_trip() {
        for name in ["c5", "k4", "grid3x4", "fig2", "nested", "wheel6"] {
            let emb = canned(name).unwrap();
            let text = write_emb(&emb);
            assert_eq!(write_emb(&parse_emb(&text).unwrap()), text, "{name}");
        }
        let emb = generate(&GenSpec::new(3, 60, 7)).unwrap();
        let text = write_emb(&emb);
        assert_eq!(write_emb(&parse_emb(&text).unwrap()), text);
    }

    #[test]
    fn triangle_text() {
        let text = "c triangle\np emb 3 3\nr 1 2 3\nr 2 3 1\nr 3 1 2\no 1 2\n";
        let emb = parse_emb(text).unwrap();
        assert_eq!((emb.n(), emb.m(), emb.face_count()), (3, 3, 2));
        assert_eq!(
            write_emb(&emb),
            "p emb 3 3\nr 1 2 3\nr 2 3 1\nr 3 1 2\no 1 2\n"
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "p emb 3 3\nr 1 2 3\nr 2 3 x\nr 3 1 2\no 1 2\n";
        assert_eq!(
            parse_emb(bad).unwrap_err(),
            ParseError::Syntax {
                line: 3,
                msg: "expected a number, found `x`".into()
            }
        );
        let bad = "p emb 3 3\nr 1 2 3\nr 2 3 1\nr 3 1 2\nq\n";
        assert!(matches!(
            parse_emb(bad),
            Err(ParseError::Syntax { line: 5, .. })
        ));
        let bad = "p emb 2 1\nr 1 2\nr 2 1 5\n";
        assert!(matches!(
            parse_emb(bad),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert_eq!(
            parse_emb("c only\n").unwrap_err(),
            ParseError::MissingHeader
        );
        let asym = "p emb 3 2\nr 1 2\nr 2 1 3\nr 3\no 1 2\n";
        assert!(matches!(
            parse_emb(asym),
            Err(ParseError::Embedding(
                EmbeddingError::AsymmetricRotation { .. }
            ))
        ));
    }

    #[test]
    fn td_round_trip() {
        let emb = canned("k4").unwrap();
        let td = decompose(&emb).unwrap();
        let text = write_td(&td, emb.n());
        let (back, n) = parse_td(&text).unwrap();
        assert_eq!(n, 4);
        assert_eq!(back, td);
        assert_eq!(write_td(&back, n), text);
    }

    #[test]
    fn bd_round_trip() {
        let rot = vec![vec![1], vec![0], vec![3, 4], vec![4, 2], vec![2, 3]];
        let emb = Embedding::from_rotations(5, &rot, &[(0, 1), (2, 3)]).unwrap();
        let g = emb.to_graph();
        let bd = branch_decompose(&emb).unwrap();
        let text = write_bd(&bd, &g);
        assert!(text.starts_with("s bd 1 0 1\nl 1 1 2\ns bd 4 2 3\n"));
        let back = parse_bd(&text, &g).unwrap();
        assert_eq!(write_bd(&back, &g), text);
        assert_eq!(crate::verify::check_bd(&g, &back), Ok(2));
    }

    #[test]
    fn bd_rejects_non_edges() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]);
        let text = "s bd 3 1 2\nl 1 1 2\nl 2 1 3\nt 1 3\n";
        assert!(matches!(
            parse_bd(text, &g),
            Err(ParseError::Syntax { line: 3, .. })
        ));
    }
}
