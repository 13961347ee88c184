//! Line-oriented text format for diagrams and tangles.
//!
//! ```text
//! # comment
//! X a b c d        crossing, counterclockwise from the incoming under-strand
//! O [a]            free loop, optionally labelled
//! RAY a n          arc a crosses the puncture ray n times (signed)
//! ANNULAR          annular diagram without any ray crossings
//! SYM p            group order
//! MAP i j          generator sends crossing i to crossing j (1-based)
//! MAPARC a b       generator sends free loop a to free loop b
//! LEFT a1 .. ak    tangle boundary, left side
//! RIGHT b1 .. bk   tangle boundary, right side
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{lift_fundamental_domain, CyclicAction, LinkDiagram, Tangle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrySpec {
    pub p: usize,
    /// 0-based crossing map; crossings not listed are fixed.
    pub crossing_map: BTreeMap<usize, usize>,
    pub loop_map: BTreeMap<u32, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramInput {
    Diagram(LinkDiagram),
    Tangle(Tangle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFile {
    pub input: DiagramInput,
    pub symmetry: Option<SymmetrySpec>,
}

impl ParsedFile {
    /// The diagram described by the file together with its declared action.
    /// Tangles with `SYM p` are lifted to their `p`-fold cover; tangles
    /// without it are closed.
    pub fn build(&self) -> Result<(LinkDiagram, Option<CyclicAction>)> {
        match (&self.input, &self.symmetry) {
            (DiagramInput::Diagram(d), None) => Ok((d.clone(), None)),
            (DiagramInput::Diagram(d), Some(sym)) => {
                let mut perm: Vec<usize> = (0..d.crossing_count()).collect();
                for (&i, &j) in &sym.crossing_map {
                    if i >= perm.len() || j >= perm.len() {
                        return Err(Error::InvalidAction(format!(
                            "MAP {} {} refers to a missing crossing",
                            i + 1,
                            j + 1
                        )));
                    }
                    perm[i] = j;
                }
                let a = CyclicAction::new(d, sym.p, perm, &sym.loop_map)?;
                Ok((d.clone(), Some(a)))
            }
            (DiagramInput::Tangle(t), None) => Ok((t.closure()?, None)),
            (DiagramInput::Tangle(t), Some(sym)) => {
                let (d, a) = lift_fundamental_domain(t, sym.p)?;
                Ok((d, Some(a)))
            }
        }
    }
}

pub fn parse_file(text: &str) -> Result<ParsedFile> {
    let mut crossings: Vec<[u32; 4]> = Vec::new();
    let mut labelled_loops: Vec<u32> = Vec::new();
    let mut anonymous_loops = 0usize;
    let mut rays: BTreeMap<u32, i32> = BTreeMap::new();
    let mut annular = false;
    let mut sym: Option<SymmetrySpec> = None;
    let mut crossing_map = BTreeMap::new();
    let mut loop_map = BTreeMap::new();
    let mut left: Option<Vec<u32>> = None;
    let mut right: Option<Vec<u32>> = None;
    let mut saw_map_line = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let cmd = tok.next().expect("nonempty line");
        let args: Vec<&str> = tok.collect();
        let labels = |args: &[&str]| -> Result<Vec<u32>> {
            args.iter()
                .map(|s| match s.parse::<u32>() {
                    Ok(a) if a > 0 => Ok(a),
                    _ => Err(Error::parse(
                        line_no,
                        format!("expected a positive arc label, got {s:?}"),
                    )),
                })
                .collect()
        };
        let count = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::parse(
                    line_no,
                    format!("{cmd} takes {n} arguments, got {}", args.len()),
                ))
            }
        };
        match cmd {
            "X" => {
                count(4)?;
                let v = labels(&args)?;
                crossings.push([v[0], v[1], v[2], v[3]]);
            }
            "O" => match args.len() {
                0 => anonymous_loops += 1,
                1 => labelled_loops.push(labels(&args)?[0]),
                _ => return Err(Error::parse(line_no, "O takes at most one label")),
            },
            "RAY" => {
                count(2)?;
                let a = labels(&args[..1])?[0];
                let n: i32 = args[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad ray count {:?}", args[1])))?;
                if rays.insert(a, n).is_some() {
                    return Err(Error::parse(line_no, format!("RAY for arc {a} given twice")));
                }
                annular = true;
            }
            "ANNULAR" => {
                count(0)?;
                annular = true;
            }
            "SYM" => {
                count(1)?;
                let p: usize = args[0]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad group order {:?}", args[0])))?;
                if p < 1 {
                    return Err(Error::parse(line_no, "group order must be at least 1"));
                }
                if sym.is_some() {
                    return Err(Error::parse(line_no, "SYM given twice"));
                }
                sym = Some(SymmetrySpec {
                    p,
                    crossing_map: BTreeMap::new(),
                    loop_map: BTreeMap::new(),
                });
            }
            "MAP" => {
                count(2)?;
                let v = labels(&args)?;
                if crossing_map.insert(v[0] as usize - 1, v[1] as usize - 1).is_some() {
                    return Err(Error::parse(line_no, format!("MAP for crossing {} given twice", v[0])));
                }
                saw_map_line.get_or_insert(line_no);
            }
            "MAPARC" => {
                count(2)?;
                let v = labels(&args)?;
                if loop_map.insert(v[0], v[1]).is_some() {
                    return Err(Error::parse(line_no, format!("MAPARC for loop {} given twice", v[0])));
                }
                saw_map_line.get_or_insert(line_no);
            }
            "LEFT" | "RIGHT" => {
                let v = labels(&args)?;
                let slot = if cmd == "LEFT" { &mut left } else { &mut right };
                if slot.replace(v).is_some() {
                    return Err(Error::parse(line_no, format!("{cmd} given twice")));
                }
            }
            _ => return Err(Error::parse(line_no, format!("unknown command {cmd:?}"))),
        }
    }

    if let Some(line) = saw_map_line {
        match sym.as_mut() {
            Some(s) => {
                s.crossing_map = crossing_map;
                s.loop_map = loop_map;
            }
            None => return Err(Error::parse(line, "MAP/MAPARC given without SYM")),
        }
    }

    let max_label = crossings
        .iter()
        .flatten()
        .chain(&labelled_loops)
        .chain(left.iter().flatten())
        .chain(right.iter().flatten())
        .copied()
        .max()
        .unwrap_or(0);
    let mut loops = labelled_loops;
    loops.extend((1..=anonymous_loops as u32).map(|k| max_label + k));

    let input = match (left, right) {
        (None, None) => DiagramInput::Diagram(LinkDiagram::new(crossings, loops, rays, annular)?),
        (Some(l), Some(r)) => {
            if annular {
                return Err(Error::InvalidDiagram(
                    "tangle files take no ray data; it is derived when lifting".into(),
                ));
            }
            if sym
                .as_ref()
                .is_some_and(|s| !s.crossing_map.is_empty() || !s.loop_map.is_empty())
            {
                return Err(Error::InvalidDiagram(
                    "tangle files take SYM only; the action is the rotation".into(),
                ));
            }
            DiagramInput::Tangle(Tangle::new(crossings, loops, l, r)?)
        }
        _ => return Err(Error::InvalidDiagram("a tangle needs both LEFT and RIGHT".into())),
    };
    Ok(ParsedFile { input, symmetry: sym })
}

/// Parses a diagram file; tangle files are rejected.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    match parse_file(text)?.input {
        DiagramInput::Diagram(d) => Ok(d),
        DiagramInput::Tangle(_) => Err(Error::InvalidDiagram("expected a diagram, found a tangle".into())),
    }
}

pub fn parse_tangle(text: &str) -> Result<Tangle> {
    match parse_file(text)?.input {
        DiagramInput::Tangle(t) => Ok(t),
        DiagramInput::Diagram(_) => Err(Error::InvalidDiagram(
            "expected a tangle with LEFT and RIGHT lines".into(),
        )),
    }
}
