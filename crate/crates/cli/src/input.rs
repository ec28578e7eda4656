use std::fs;
use std::io::Read;
use std::path::Path;

use kcut::io::{generate, parse_graph, serialize_graph, GeneratorKind, ProblemInstance};
use kcut::planar::{parse_embedding, serialize_embedding};
use kcut::treewidth::{parse_decomposition, TreeDecomposition};
use kcut::{MultiGraph, VertexId};

use crate::solve::Failure;
use crate::InputArgs;

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn parse_generator(spec: &str) -> Result<GeneratorKind, Failure> {
    let bad = || Failure::Input(format!("bad generator spec {spec:?}"));
    let (kind, params) = spec.split_once(':').ok_or_else(bad)?;
    let nums: Vec<usize> = params
        .split([',', 'x'])
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let kind = match (kind, nums.as_slice()) {
        ("grid", &[w, h]) => GeneratorKind::Grid { w, h },
        ("gridsub", &[w, h, pct]) => GeneratorKind::GridSubgraph {
            w,
            h,
            keep_percent: pct as u32,
        },
        ("cycle", &[n]) => GeneratorKind::Cycle { n },
        ("complete", &[n]) => GeneratorKind::Complete { n },
        ("random", &[n, m]) => GeneratorKind::RandomConnected { n, m },
        ("tree", &[n, extra]) => GeneratorKind::TreePlusEdges { n, extra },
        ("blobs", &[a, b]) => GeneratorKind::TwoBlobsBridged { a, b },
        _ => return Err(bad()),
    };
    Ok(kind)
}

pub fn load(args: &InputArgs) -> Result<ProblemInstance, Failure> {
    let mut inst = match (&args.graph, &args.generate) {
        (_, Some(spec)) => generate(parse_generator(spec)?, args.seed)?,
        (Some(path), None) => ProblemInstance::new(parse_graph(&read_text(path)?)?),
        (None, None) => return Err(Failure::Input("give a graph file or --generate".into())),
    };
    if let Some(path) = &args.embedding {
        inst.embedding = Some(parse_embedding(&inst.graph, &read_text(path)?)?);
    }
    Ok(inst)
}

pub fn load_decomposition(path: &Path) -> Result<TreeDecomposition, Failure> {
    Ok(parse_decomposition(&read_text(path)?)?)
}

fn vertex(g: &MultiGraph, x: u32) -> Result<VertexId, Failure> {
    if x == 0 || x as usize > g.vertex_space() {
        return Err(Failure::Input(format!(
            "vertex {x} out of range 1..={}",
            g.vertex_space()
        )));
    }
    Ok(VertexId(x - 1))
}

pub fn parse_terminals(ts: &[u32], g: &MultiGraph) -> Result<Vec<VertexId>, Failure> {
    ts.iter().map(|&x| vertex(g, x)).collect()
}

pub fn parse_pairs(pairs: &[String], g: &MultiGraph) -> Result<Vec<(VertexId, VertexId)>, Failure> {
    pairs
        .iter()
        .map(|p| {
            let bad = || Failure::Input(format!("bad pair {p:?}, expected `a-b`"));
            let (a, b) = p.split_once('-').ok_or_else(bad)?;
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            Ok((vertex(g, a)?, vertex(g, b)?))
        })
        .collect()
}

pub fn write_generated(
    spec: &str,
    seed: u64,
    out: Option<&Path>,
    embedding_out: Option<&Path>,
) -> Result<(), Failure> {
    let inst = generate(parse_generator(spec)?, seed)?;
    let write = |path: &Path, text: String| {
        fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    };
    let text = serialize_graph(&inst.graph);
    match out {
        Some(path) => write(path, text)?,
        None => print!("{text}"),
    }
    match (embedding_out, &inst.embedding) {
        (Some(path), Some(rot)) => write(path, serialize_embedding(rot))?,
        (Some(_), None) => {
            return Err(Failure::Input(format!(
                "generator {spec:?} has no embedding"
            )));
        }
        _ => {}
    }
    eprintln!(
        "generated {spec} (seed {seed}): {} vertices, {} edges",
        inst.graph.vertex_count(),
        inst.graph.edge_count()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_specs() {
        assert_eq!(
            parse_generator("grid:3x4").unwrap(),
            GeneratorKind::Grid { w: 3, h: 4 }
        );
        assert_eq!(
            parse_generator("gridsub:4x4,70").unwrap(),
            GeneratorKind::GridSubgraph {
                w: 4,
                h: 4,
                keep_percent: 70
            }
        );
        assert_eq!(
            parse_generator("tree:2000,40").unwrap(),
            GeneratorKind::TreePlusEdges { n: 2000, extra: 40 }
        );
        for bad in ["grid", "grid:3", "cycle:x", "mesh:3"] {
            assert!(parse_generator(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn pairs_are_one_based() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let pairs = parse_pairs(&["1-3".to_string()], &g).unwrap();
        assert_eq!(pairs, vec![(VertexId(0), VertexId(2))]);
        assert!(parse_pairs(&["0-2".to_string()], &g).is_err());
        assert!(parse_pairs(&["1:2".to_string()], &g).is_err());
    }
}
