//! JSON cube documents.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "top": "D4",
//!   "normal": { "R": ["(0 1 2 3)"], "V": ["(0 2)(1 3)", "(0 1)(2 3)"] },
//!   "vertices": { "{0,1}": "top", "{0}": "top / V", "{1}": "top / R", "{}": "top / R V" }
//! }
//! ```
//!
//! A vertex is a group spec, `top`, or `top / N ...` (the quotient by the
//! subgroup generated by the named normal subgroups). Arrows between vertices
//! derived from `top` default to the canonical projections and arrows into a
//! trivial group to the zero map. Any other arrow is listed as
//! generator/image pairs, elements given as ids or cycle products.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group_spec::{parse_element, parse_group, table_spec};
use super::{DslError, DslResult, ParseError};
use crate::category::Groups;
use crate::cube::Cube;
use crate::group::{FinGroup, Subgroup};
use crate::hom::{factor_through_quotient, quotient, GroupHom, Quotient};
use crate::limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Id(usize),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub normal: BTreeMap<String, Vec<ElementRef>>,
    pub vertices: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arrows: BTreeMap<String, Vec<(ElementRef, ElementRef)>>,
}

/// `"{0,2}"` for the mask `0b101`.
pub fn subset_key(mask: usize) -> String {
    crate::cube::fmt_subset(mask)
}

/// Reads `"{i,j,...}"` (or `"∅"`) as a mask over `0..dim`.
pub fn parse_subset(text: &str, dim: usize) -> Result<usize, ParseError> {
    let t = text.trim();
    if t == "∅" {
        return Ok(0);
    }
    let col = |k: usize| text.len() - text.trim_start().len() + k + 1;
    let inner = t
        .strip_prefix('{')
        .ok_or_else(|| ParseError::at(1, col(0), "'{' opening a subset"))?
        .strip_suffix('}')
        .ok_or_else(|| ParseError::at(1, col(t.len()), "'}' closing the subset"))?;
    let mut mask = 0;
    let mut offset = 1;
    for part in inner.split(',') {
        let item = part.trim();
        let at = col(offset + part.len() - part.trim_start().len());
        offset += part.len() + 1;
        if item.is_empty() {
            if inner.trim().is_empty() {
                break;
            }
            return Err(ParseError::at(1, at, "a direction index"));
        }
        let i: usize = item
            .parse()
            .map_err(|_| ParseError::at(1, at, "a direction index"))?;
        if i >= dim {
            return Err(ParseError::at(1, at, format!("a direction below {dim}")));
        }
        if mask >> i & 1 == 1 {
            return Err(ParseError::at(1, at, "each direction at most once"));
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

fn parse_arrow_key(key: &str, dim: usize) -> Result<(usize, usize), ParseError> {
    let (a, b) = key
        .split_once("->")
        .ok_or_else(|| ParseError::at(1, 1, "an arrow key of the form \"{0,1}->{1}\""))?;
    let t = parse_subset(a, dim)?;
    let s = parse_subset(b, dim).map_err(|mut e| {
        e.column += a.len() + 2;
        e
    })?;
    if s & !t != 0 || (t & !s).count_ones() != 1 {
        return Err(ParseError::at(1, 1, "an arrow removing exactly one direction"));
    }
    Ok((t, s))
}

/// How a vertex was described.
enum Vertex {
    Spec(Arc<FinGroup>),
    Derived(Subgroup, Quotient),
}

impl Vertex {
    fn group(&self) -> &Arc<FinGroup> {
        match self {
            Vertex::Spec(g) => g,
            Vertex::Derived(_, q) => &q.group,
        }
    }
}

struct Named<'a> {
    top: Option<Arc<FinGroup>>,
    normals: BTreeMap<&'a str, Subgroup>,
}

fn parse_vertex(text: &str, named: &Named, context: &str) -> DslResult<Vertex> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let is_top_expr = trimmed
        .strip_prefix("top")
        .is_some_and(|rest| rest.trim().is_empty() || rest.trim_start().starts_with('/'));
    if !is_top_expr {
        return parse_group(text)
            .map(Vertex::Spec)
            .map_err(|e| with_context(e, context));
    }
    let top = named
        .top
        .as_ref()
        .ok_or_else(|| ParseError::at(1, lead + 1, "a \"top\" entry in the document").within(context))?;
    let mut n = Subgroup::trivial(top);
    if let Some(pos) = text.find('/') {
        let rest = &text[pos + 1..];
        let mut start = None;
        let mut names = Vec::new();
        for (k, c) in rest.char_indices().chain([(rest.len(), ' ')]) {
            let sep = c.is_whitespace() || c == ',' || c == '*';
            match (sep, start) {
                (false, None) => start = Some(k),
                (true, Some(s)) => {
                    names.push((s, &rest[s..k]));
                    start = None;
                }
                _ => {}
            }
        }
        if names.is_empty() {
            return Err(ParseError::at(1, text.len() + 1, "a normal subgroup name").within(context).into());
        }
        for (k, name) in names {
            if name == "1" {
                continue;
            }
            let m = named.normals.get(name).ok_or_else(|| {
                ParseError::at(1, pos + 2 + k, format!("a name from \"normal\", found '{name}'")).within(context)
            })?;
            n = n.join(m).map_err(|e| DslError::validation(context, e))?;
        }
    }
    let q = if n.is_trivial() {
        // keep the top group itself, permutation data included
        Quotient {
            group: Arc::clone(top),
            projection: GroupHom::identity(top),
        }
    } else {
        quotient(&n).map_err(|e| DslError::validation(context, e))?
    };
    Ok(Vertex::Derived(n, q))
}

fn with_context(e: DslError, context: &str) -> DslError {
    match e {
        DslError::Parse(p) => DslError::Parse(p.within(context)),
        DslError::Validation { context: c, source } => DslError::validation(format!("{context}, {c}"), source),
    }
}

fn element(g: &FinGroup, r: &ElementRef, context: &str) -> DslResult<usize> {
    match r {
        ElementRef::Id(x) if *x < g.order() => Ok(*x),
        ElementRef::Id(x) => Err(ParseError::at(1, 1, format!("an element id below {}, found {x}", g.order()))
            .within(context)
            .into()),
        ElementRef::Text(t) => parse_element(g, t).map_err(|e| with_context(e, context)),
    }
}

/// Parses a JSON cube document from text.
pub fn parse_cube(text: &str) -> DslResult<Cube<Groups>> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| ParseError::at(e.line(), e.column(), format!("valid JSON ({e})")))?;
    parse_cube_value(&value)
}

pub fn parse_cube_value(value: &serde_json::Value) -> DslResult<Cube<Groups>> {
    let doc: CubeDocument = serde_json::from_value(value.clone())
        .map_err(|e| ParseError::at(1, 1, format!("a cube document ({e})")))?;
    doc.to_cube()
}

impl CubeDocument {
    pub fn to_cube(&self) -> DslResult<Cube<Groups>> {
        let dim = self.dim;
        if dim > limits::dim_cap() {
            return Err(DslError::validation(
                "dim",
                crate::Error::DimCapExceeded { dim, cap: limits::dim_cap() },
            ));
        }
        let full = (1usize << dim) - 1;
        let top = match &self.top {
            Some(t) => Some(parse_group(t).map_err(|e| with_context(e, "top"))?),
            None => None,
        };
        let mut normals = BTreeMap::new();
        if !self.normal.is_empty() {
            let g = top
                .as_ref()
                .ok_or_else(|| ParseError::at(1, 1, "a \"top\" entry to go with \"normal\"").within("normal"))?;
            for (name, gens) in &self.normal {
                let ctx = format!("normal.{name}");
                let ids = gens.iter().map(|r| element(g, r, &ctx)).collect::<DslResult<Vec<_>>>()?;
                let h = Subgroup::generated(g, ids).map_err(|e| DslError::validation(&ctx, e))?;
                if !h.is_normal() {
                    return Err(DslError::validation(ctx, crate::Error::NotNormal));
                }
                normals.insert(name.as_str(), h);
            }
        }
        let named = Named { top, normals };

        let mut slots: Vec<Option<Vertex>> = (0..=full).map(|_| None).collect();
        for (key, text) in &self.vertices {
            let ctx = format!("vertices.{key}");
            let s = parse_subset(key, dim).map_err(|e| e.within(&ctx))?;
            if slots[s].is_some() {
                return Err(ParseError::at(1, 1, "each subset once").within(ctx).into());
            }
            slots[s] = Some(parse_vertex(text, &named, &ctx)?);
        }
        let vertices: Vec<Vertex> = slots
            .into_iter()
            .enumerate()
            .map(|(s, v)| {
                v.ok_or_else(|| {
                    DslError::from(ParseError::at(1, 1, format!("a vertex for {}", subset_key(s))).within("vertices"))
                })
            })
            .collect::<DslResult<_>>()?;

        let mut explicit = BTreeMap::new();
        for (key, pairs) in &self.arrows {
            let ctx = format!("arrows.{key}");
            let (t, s) = parse_arrow_key(key, dim).map_err(|e| e.within(&ctx))?;
            let (src, dst) = (vertices[t].group(), vertices[s].group());
            let images = pairs
                .iter()
                .map(|(x, y)| Ok((element(src, x, &ctx)?, element(dst, y, &ctx)?)))
                .collect::<DslResult<Vec<_>>>()?;
            let f = GroupHom::from_generator_images(Arc::clone(src), Arc::clone(dst), &images)
                .map_err(|e| DslError::validation(&ctx, e))?;
            explicit.insert((t, s), f);
        }

        let groups: Vec<Arc<FinGroup>> = vertices.iter().map(|v| Arc::clone(v.group())).collect();
        let mut failure = None;
        let cube = Cube::new(Groups, dim, groups, |t, i| {
            let s = t & !(1 << i);
            let ctx = format!("arrow {}->{}", subset_key(t), subset_key(s));
            if let Some(f) = explicit.get(&(t, s)) {
                return Ok(f.clone());
            }
            let found = match (&vertices[t], &vertices[s]) {
                (Vertex::Derived(nt, qt), Vertex::Derived(ns, qs)) if nt.is_subset_of(ns) => {
                    factor_through_quotient(&qt.projection, &qs.projection)
                }
                (Vertex::Derived(..), Vertex::Derived(..)) => Err(crate::Error::InvalidHom(
                    "no canonical projection: the source kernel is not inside the target kernel".into(),
                )),
                _ if vertices[s].group().is_trivial() => Ok(GroupHom::zero(vertices[t].group(), vertices[s].group())),
                _ => Err(crate::Error::InvalidHom("missing from \"arrows\"".into())),
            };
            found.inspect_err(|e| {
                failure.get_or_insert((ctx, e.clone()));
            })
        });
        match cube {
            Ok(c) => Ok(c),
            Err(e) => Err(match failure {
                Some((ctx, inner)) => DslError::validation(ctx, inner),
                None => DslError::validation("cube", e),
            }),
        }
    }
}

/// A self-contained document for `cube`: every vertex as a Cayley table and
/// every covering arrow as generator images.
pub fn cube_to_document(cube: &Cube<Groups>) -> CubeDocument {
    let mut vertices = BTreeMap::new();
    let mut arrows = BTreeMap::new();
    for t in 0..=cube.full() {
        vertices.insert(subset_key(t), table_spec(cube.vertex(t)));
        for i in (0..cube.dim()).filter(|&i| t >> i & 1 == 1) {
            let f = cube.edge(t, i);
            let pairs = f
                .domain()
                .generators()
                .iter()
                .map(|&g| (ElementRef::Id(g), ElementRef::Id(f.apply(g))))
                .collect();
            arrows.insert(format!("{}->{}", subset_key(t), subset_key(t & !(1 << i))), pairs);
        }
    }
    CubeDocument {
        dim: cube.dim(),
        top: None,
        normal: BTreeMap::new(),
        vertices,
        arrows,
    }
}
