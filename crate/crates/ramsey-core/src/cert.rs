//! Certificate types produced by the engines, their validators, and the
//! line-oriented text format.
//!
//! Every certificate can be checked on its own (structure, goodness,
//! order-isomorphism) and, when a coloring is supplied, against asserted
//! colors. A second, independently written verifier lives in [`crate::search`];
//! the two share no checking code.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::lattice::{GroundSet, Mask, Partition};
use crate::poset::FinitePoset;
use crate::shrub::{factorial_tree, prefix_compare, OrderedSubset, PrefixRelation};

/// An xPart-good copy of the Boolean lattice over xPart: every subset
/// X of xPart maps to a vertex whose trace on xPart is X, and the map is
/// an order isomorphism onto its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XGoodCopyCert {
    pub partition: Partition,
    /// X ⊆ xPart → full vertex mask.
    pub images: BTreeMap<Mask, Mask>,
    /// Asserted image color, if the copy is claimed monochromatic.
    pub color: Option<Color>,
}

impl XGoodCopyCert {
    pub fn check(&self, coloring: Option<&Coloring>) -> Result<()> {
        let ground = self.partition.ground();
        let xpart = self.partition.x_mask();
        if self.images.len() != 1usize << self.partition.x_size() {
            return Err(Error::NotAnEmbedding(format!(
                "{} images for 2^{} subsets",
                self.images.len(),
                self.partition.x_size()
            )));
        }
        for (&x, &v) in &self.images {
            if x & xpart != x {
                return Err(Error::NotAnEmbedding(format!("key {x:X} outside xPart")));
            }
            if !ground.contains_mask(v) {
                return Err(Error::BadSubset { bits: v, n: ground.size() });
            }
            if v & xpart != x {
                return Err(Error::NotAnEmbedding(format!(
                    "image {v:X} has xPart trace {:X}, key {x:X}",
                    v & xpart
                )));
            }
        }
        // Monotone along covers; with the trace condition this gives the
        // full order isomorphism.
        for (&x, &v) in &self.images {
            let mut rest = xpart & !x;
            while rest != 0 {
                let a = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let w = self.images[&(x | a)];
                if v & w != v {
                    return Err(Error::NotAnEmbedding(format!(
                        "not monotone: image of {x:X} ⊄ image of {:X}",
                        x | a
                    )));
                }
            }
        }
        if let (Some(color), Some(c)) = (self.color, coloring) {
            if c.ground() != ground {
                return Err(Error::HostMismatch(c.ground().size(), ground.size()));
            }
            for (&x, &v) in &self.images {
                if !c.is(v, color) {
                    return Err(Error::NotAnEmbedding(format!(
                        "image of {x:X} is {}, asserted {}",
                        c.get(v).name(),
                        color.name()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A blue chain with one vertex per prefix level of a yPart ordering:
/// (X_0, Y(0)) ⊂ (X_1, Y(1)) ⊂ … ⊂ (X_k, Y(k)), X_i ⊆ xPart nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlueChainCert {
    pub partition: Partition,
    /// Permutation of yPart labels; Y(i) = first i entries.
    pub ordering: Vec<u8>,
    /// Full vertex masks, chain order, length |yPart| + 1.
    pub vertices: Vec<Mask>,
}

impl BlueChainCert {
    /// Prefix mask Y(i) of the ordering.
    pub fn prefix_mask(&self, i: usize) -> Mask {
        self.ordering[..i].iter().fold(0, |m, &l| m | 1 << l)
    }

    pub fn check(&self, coloring: Option<&Coloring>) -> Result<()> {
        let ground = self.partition.ground();
        let (xpart, ypart) = (self.partition.x_mask(), self.partition.y_mask());
        let k = self.partition.y_size();
        let mut sorted = self.ordering.clone();
        sorted.sort_unstable();
        let ylabels: Vec<u8> = ground.subset(ypart).unwrap().labels();
        if sorted != ylabels {
            return Err(Error::NotAnEmbedding("ordering is not a permutation of yPart".into()));
        }
        if self.vertices.len() != k + 1 {
            return Err(Error::NotAnEmbedding(format!(
                "{} vertices for {} prefix levels",
                self.vertices.len(),
                k + 1
            )));
        }
        for (i, &v) in self.vertices.iter().enumerate() {
            if !ground.contains_mask(v) {
                return Err(Error::BadSubset { bits: v, n: ground.size() });
            }
            if v & ypart != self.prefix_mask(i) {
                return Err(Error::NotAnEmbedding(format!(
                    "vertex {i} has yPart trace {:X}, expected prefix {:X}",
                    v & ypart,
                    self.prefix_mask(i)
                )));
            }
        }
        for w in self.vertices.windows(2) {
            let (a, b) = (w[0] & xpart, w[1] & xpart);
            if a & b != a {
                return Err(Error::NotAnEmbedding(format!(
                    "xPart traces not nested: {a:X} ⊄ {b:X}"
                )));
            }
        }
        if let Some(c) = coloring {
            if c.ground() != ground {
                return Err(Error::HostMismatch(c.ground().size(), ground.size()));
            }
            for (i, &v) in self.vertices.iter().enumerate() {
                if !c.is(v, Color::Blue) {
                    return Err(Error::NotAnEmbedding(format!("chain vertex {i} is not blue")));
                }
            }
        }
        Ok(())
    }
}

/// A yPart-good (weak or full) shrub: one vertex per node of the factorial
/// tree over yPart, with the node's underlying set as yPart trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrubCert {
    pub ground: GroundSet,
    pub ypart: Mask,
    /// Factorial-tree order: by prefix length, then lexicographic labels.
    pub nodes: Vec<(OrderedSubset, Mask)>,
    /// Weak shrubs only promise strict growth along prefixes; full shrubs
    /// are order isomorphisms of the whole tree.
    pub weak: bool,
    pub color: Option<Color>,
}

impl ShrubCert {
    pub fn check(&self, coloring: Option<&Coloring>) -> Result<()> {
        if !self.ground.contains_mask(self.ypart) {
            return Err(Error::BadSubset { bits: self.ypart, n: self.ground.size() });
        }
        let expected = factorial_tree(self.ground, self.ypart)?;
        if self.nodes.len() != expected.len() {
            return Err(Error::NotAnEmbedding(format!(
                "{} nodes, factorial tree has {}",
                self.nodes.len(),
                expected.len()
            )));
        }
        let mut have: Vec<&OrderedSubset> = self.nodes.iter().map(|(s, _)| s).collect();
        have.sort_unstable();
        let mut want: Vec<&OrderedSubset> = expected.iter().collect();
        want.sort_unstable();
        if have != want {
            return Err(Error::NotAnEmbedding("node set is not the factorial tree".into()));
        }
        for (s, v) in &self.nodes {
            if !self.ground.contains_mask(*v) {
                return Err(Error::BadSubset { bits: *v, n: self.ground.size() });
            }
            if v & self.ypart != s.underlying() {
                return Err(Error::NotAnEmbedding(format!(
                    "node ({}) has yPart trace {:X}, expected {:X}",
                    s.render(),
                    v & self.ypart,
                    s.underlying()
                )));
            }
        }
        for (i, (s, v)) in self.nodes.iter().enumerate() {
            for (t, w) in &self.nodes[i + 1..] {
                let rel = prefix_compare(s, t);
                let (vw, wv) = (v & w == *v, v & w == *w);
                let ok = if self.weak {
                    match rel {
                        PrefixRelation::Prefix => vw && v != w,
                        PrefixRelation::Extension => wv && v != w,
                        _ => true,
                    }
                } else {
                    match rel {
                        PrefixRelation::Prefix => vw && v != w,
                        PrefixRelation::Extension => wv && v != w,
                        PrefixRelation::Incomparable => !vw && !wv,
                        PrefixRelation::Equal => unreachable!("distinct listed nodes"),
                    }
                };
                if !ok {
                    return Err(Error::NotAnEmbedding(format!(
                        "nodes ({}) and ({}) break the prefix/containment match",
                        s.render(),
                        t.render()
                    )));
                }
            }
        }
        if let (Some(color), Some(c)) = (self.color, coloring) {
            if c.ground() != self.ground {
                return Err(Error::HostMismatch(c.ground().size(), self.ground.size()));
            }
            for (s, v) in &self.nodes {
                if !c.is(*v, color) {
                    return Err(Error::NotAnEmbedding(format!(
                        "shrub vertex at node ({}) is {}, asserted {}",
                        s.render(),
                        c.get(*v).name(),
                        color.name()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A monochromatic induced copy of an arbitrary pattern poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCopyCert {
    pub ground: GroundSet,
    pub pattern: FinitePoset,
    /// Pattern element i → vertex mask.
    pub images: Vec<Mask>,
    pub color: Color,
}

impl PatternCopyCert {
    pub fn check(&self, coloring: Option<&Coloring>) -> Result<()> {
        let em = crate::poset::EmbeddingMap {
            pattern: self.pattern.clone(),
            ground: self.ground,
            images: self.images.clone(),
        };
        em.validate()?;
        if let Some(c) = coloring {
            if c.ground() != self.ground {
                return Err(Error::HostMismatch(c.ground().size(), self.ground.size()));
            }
            for (i, &v) in self.images.iter().enumerate() {
                if !c.is(v, self.color) {
                    return Err(Error::NotAnEmbedding(format!(
                        "image of element {i} is {}, asserted {}",
                        c.get(v).name(),
                        self.color.name()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One sampled framework: ground set split into Y, the block pool A, and
/// Z = everything else, with the shift set X ⊆ Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Framework {
    pub ground: GroundSet,
    pub y: Mask,
    pub a: Mask,
    pub x: Mask,
}

impl Framework {
    pub fn z(&self) -> Mask {
        self.ground.full_mask() & !(self.y | self.a)
    }

    pub fn check(&self) -> Result<()> {
        for m in [self.y, self.a, self.x] {
            if !self.ground.contains_mask(m) {
                return Err(Error::BadSubset { bits: m, n: self.ground.size() });
            }
        }
        if self.y & self.a != 0 {
            return Err(Error::NotAnEmbedding(format!(
                "framework parts overlap: Y {:X}, A {:X}",
                self.y, self.a
            )));
        }
        if self.x & !self.z() != 0 {
            return Err(Error::NotAnEmbedding(format!(
                "shift set {:X} leaves Z {:X}",
                self.x,
                self.z()
            )));
        }
        Ok(())
    }
}

/// The full family of frameworks for every k-subset Y of the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameworkBundle {
    pub ground: GroundSet,
    pub k: usize,
    /// Ascending by Y mask.
    pub frameworks: Vec<Framework>,
}

impl FrameworkBundle {
    pub fn check(&self) -> Result<()> {
        let mut seen: Option<Mask> = None;
        for fw in &self.frameworks {
            if fw.ground != self.ground {
                return Err(Error::HostMismatch(fw.ground.size(), self.ground.size()));
            }
            if fw.y.count_ones() as usize != self.k {
                return Err(Error::NotAnEmbedding(format!(
                    "framework Y {:X} has size {}, bundle k = {}",
                    fw.y,
                    fw.y.count_ones(),
                    self.k
                )));
            }
            fw.check()?;
            if let Some(prev) = seen {
                if fw.y <= prev {
                    return Err(Error::NotAnEmbedding("framework Y masks not ascending".into()));
                }
            }
            seen = Some(fw.y);
        }
        Ok(())
    }
}

/// Any certificate the toolkit can emit or ingest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    XGood(XGoodCopyCert),
    BlueChain(BlueChainCert),
    Shrub(ShrubCert),
    PatternCopy(PatternCopyCert),
    Bundle(FrameworkBundle),
}

impl Certificate {
    pub fn ground(&self) -> GroundSet {
        match self {
            Certificate::XGood(c) => c.partition.ground(),
            Certificate::BlueChain(c) => c.partition.ground(),
            Certificate::Shrub(c) => c.ground,
            Certificate::PatternCopy(c) => c.ground,
            Certificate::Bundle(c) => c.ground,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::XGood(_) => "XGOOD",
            Certificate::BlueChain(_) => "CHAIN",
            Certificate::Shrub(_) => "SHRUB",
            Certificate::PatternCopy(_) => "COPY",
            Certificate::Bundle(_) => "BUNDLE",
        }
    }

    /// Engine-side validation; the independent re-check is
    /// [`crate::search::verify_certificate`].
    pub fn check(&self, coloring: Option<&Coloring>) -> Result<()> {
        match self {
            Certificate::XGood(c) => c.check(coloring),
            Certificate::BlueChain(c) => c.check(coloring),
            Certificate::Shrub(c) => c.check(coloring),
            Certificate::PatternCopy(c) => c.check(coloring),
            Certificate::Bundle(c) => c.check(),
        }
    }

    // ---- text format ----
    //
    // Line 1: `CERT <TYPE> N=<n>`. Masks are uppercase hex. Per type:
    //   XGOOD:  XPART, COLOR, then `MAP <Xhex> <Vhex>` per key ascending
    //   CHAIN:  XPART, ORD (ordering labels), then `V <hex>` in chain order
    //   SHRUB:  YPART, COLOR, WEAK 0|1, then `MAP <node> <Vhex>` in tree order
    //           (node = comma-joined labels, `-` when empty)
    //   COPY:   COLOR, PELEMS, `PREL <a> <b>` strict pairs, `MAP <i> <Vhex>`
    //   BUNDLE: `K <k>`, then `FW <Yhex> <Ahex> <Xhex>` ascending by Y

    pub fn render(&self) -> String {
        let mut out = String::new();
        let n = self.ground().size();
        let _ = writeln!(out, "CERT {} N={}", self.kind(), n);
        match self {
            Certificate::XGood(c) => {
                let _ = writeln!(out, "XPART {:X}", c.partition.x_mask());
                let _ = writeln!(out, "COLOR {}", color_name(c.color));
                for (x, v) in &c.images {
                    let _ = writeln!(out, "MAP {x:X} {v:X}");
                }
            }
            Certificate::BlueChain(c) => {
                let _ = writeln!(out, "XPART {:X}", c.partition.x_mask());
                let labels: Vec<String> =
                    c.ordering.iter().map(|l| l.to_string()).collect();
                let _ = writeln!(out, "ORD {}", labels.join(" "));
                for v in &c.vertices {
                    let _ = writeln!(out, "V {v:X}");
                }
            }
            Certificate::Shrub(c) => {
                let _ = writeln!(out, "YPART {:X}", c.ypart);
                let _ = writeln!(out, "COLOR {}", color_name(c.color));
                let _ = writeln!(out, "WEAK {}", u8::from(c.weak));
                for (s, v) in &c.nodes {
                    let _ = writeln!(out, "MAP {} {v:X}", s.render());
                }
            }
            Certificate::PatternCopy(c) => {
                let _ = writeln!(out, "COLOR {}", c.color.name());
                let _ = writeln!(out, "PELEMS {}", c.pattern.len());
                for a in 0..c.pattern.len() {
                    for b in 0..c.pattern.len() {
                        if c.pattern.lt(a, b) {
                            let _ = writeln!(out, "PREL {a} {b}");
                        }
                    }
                }
                for (i, v) in c.images.iter().enumerate() {
                    let _ = writeln!(out, "MAP {i} {v:X}");
                }
            }
            Certificate::Bundle(c) => {
                let _ = writeln!(out, "K {}", c.k);
                for fw in &c.frameworks {
                    let _ = writeln!(out, "FW {:X} {:X} {:X}", fw.y, fw.a, fw.x);
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lno, header) =
            lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "empty file".into() })?;
        let mut hp = header.split_whitespace();
        if hp.next() != Some("CERT") {
            return Err(Error::Parse { line: lno, msg: "expected `CERT <TYPE> N=<n>`".into() });
        }
        let kind = hp
            .next()
            .ok_or_else(|| Error::Parse { line: lno, msg: "missing certificate type".into() })?;
        let nfield = hp
            .next()
            .and_then(|f| f.strip_prefix("N="))
            .ok_or_else(|| Error::Parse { line: lno, msg: "missing N= field".into() })?;
        let n: usize = nfield
            .parse()
            .map_err(|_| Error::Parse { line: lno, msg: format!("bad ground size `{nfield}`") })?;
        let ground = GroundSet::new(n)?;
        let rest: Vec<(usize, &str)> = lines.collect();
        match kind {
            "XGOOD" => parse_xgood(ground, &rest),
            "CHAIN" => parse_chain(ground, &rest),
            "SHRUB" => parse_shrub(ground, &rest),
            "COPY" => parse_copy(ground, &rest),
            "BUNDLE" => parse_bundle(ground, &rest),
            other => Err(Error::Parse { line: lno, msg: format!("unknown type `{other}`") }),
        }
    }
}

fn color_name(c: Option<Color>) -> &'static str {
    match c {
        Some(c) => c.name(),
        None => "none",
    }
}

fn parse_color(s: &str, line: usize) -> Result<Option<Color>> {
    match s {
        "blue" => Ok(Some(Color::Blue)),
        "red" => Ok(Some(Color::Red)),
        "none" => Ok(None),
        other => Err(Error::Parse { line, msg: format!("bad color `{other}`") }),
    }
}

fn parse_mask(s: &str, ground: GroundSet, line: usize) -> Result<Mask> {
    let bits = Mask::from_str_radix(s, 16)
        .map_err(|_| Error::Parse { line, msg: format!("bad hex mask `{s}`") })?;
    if !ground.contains_mask(bits) {
        return Err(Error::Parse { line, msg: format!("mask {s} outside ground set") });
    }
    Ok(bits)
}

/// Split a body line into its keyword and fields.
fn fields<'a>(line: &'a str, want: &str, lno: usize) -> Result<Vec<&'a str>> {
    let mut it = line.split_whitespace();
    match it.next() {
        Some(kw) if kw == want => Ok(it.collect()),
        _ => Err(Error::Parse { line: lno, msg: format!("expected `{want} …`, got `{line}`") }),
    }
}

fn parse_xgood(ground: GroundSet, body: &[(usize, &str)]) -> Result<Certificate> {
    let mut it = body.iter();
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let xpart = parse_mask(fields(line, "XPART", lno)?.first().copied().unwrap_or(""), ground, lno)?;
    let partition = Partition::from_x(ground, xpart)?;
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let color = parse_color(fields(line, "COLOR", lno)?.first().copied().unwrap_or(""), lno)?;
    let mut images = BTreeMap::new();
    for &(lno, line) in it {
        let f = fields(line, "MAP", lno)?;
        if f.len() != 2 {
            return Err(Error::Parse { line: lno, msg: "MAP wants `<Xhex> <Vhex>`".into() });
        }
        let x = parse_mask(f[0], ground, lno)?;
        let v = parse_mask(f[1], ground, lno)?;
        if images.insert(x, v).is_some() {
            return Err(Error::Parse { line: lno, msg: format!("duplicate MAP key {:X}", x) });
        }
    }
    Ok(Certificate::XGood(XGoodCopyCert { partition, images, color }))
}

fn parse_chain(ground: GroundSet, body: &[(usize, &str)]) -> Result<Certificate> {
    let mut it = body.iter();
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let xpart = parse_mask(fields(line, "XPART", lno)?.first().copied().unwrap_or(""), ground, lno)?;
    let partition = Partition::from_x(ground, xpart)?;
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let ordering = fields(line, "ORD", lno)?
        .iter()
        .map(|s| {
            s.parse::<u8>()
                .map_err(|_| Error::Parse { line: lno, msg: format!("bad label `{s}`") })
        })
        .collect::<Result<Vec<u8>>>()?;
    let mut vertices = Vec::new();
    for &(lno, line) in it {
        let f = fields(line, "V", lno)?;
        if f.len() != 1 {
            return Err(Error::Parse { line: lno, msg: "V wants one mask".into() });
        }
        vertices.push(parse_mask(f[0], ground, lno)?);
    }
    Ok(Certificate::BlueChain(BlueChainCert { partition, ordering, vertices }))
}

fn parse_shrub(ground: GroundSet, body: &[(usize, &str)]) -> Result<Certificate> {
    let mut it = body.iter();
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let ypart = parse_mask(fields(line, "YPART", lno)?.first().copied().unwrap_or(""), ground, lno)?;
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let color = parse_color(fields(line, "COLOR", lno)?.first().copied().unwrap_or(""), lno)?;
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let weak = match fields(line, "WEAK", lno)?.first().copied() {
        Some("0") => false,
        Some("1") => true,
        _ => return Err(Error::Parse { line: lno, msg: "WEAK wants 0 or 1".into() }),
    };
    let mut nodes = Vec::new();
    for &(lno, line) in it {
        let f = fields(line, "MAP", lno)?;
        if f.len() != 2 {
            return Err(Error::Parse { line: lno, msg: "MAP wants `<node> <Vhex>`".into() });
        }
        let s = OrderedSubset::parse(f[0])
            .map_err(|e| Error::Parse { line: lno, msg: e.to_string() })?;
        let v = parse_mask(f[1], ground, lno)?;
        nodes.push((s, v));
    }
    Ok(Certificate::Shrub(ShrubCert { ground, ypart, nodes, weak, color }))
}

fn parse_copy(ground: GroundSet, body: &[(usize, &str)]) -> Result<Certificate> {
    let mut it = body.iter().peekable();
    let &&(lno, line) = it.peek().ok_or_else(|| eof(body))?;
    let color = parse_color(fields(line, "COLOR", lno)?.first().copied().unwrap_or(""), lno)?
        .ok_or_else(|| Error::Parse { line: lno, msg: "pattern copies need a color".into() })?;
    it.next();
    let &&(lno, line) = it.peek().ok_or_else(|| eof(body))?;
    let count: usize = fields(line, "PELEMS", lno)?
        .first()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse { line: lno, msg: "PELEMS wants a count".into() })?;
    it.next();
    let mut pairs = Vec::new();
    while let Some(&&(lno, line)) = it.peek() {
        if !line.starts_with("PREL") {
            break;
        }
        it.next();
        let f = fields(line, "PREL", lno)?;
        let (a, b) = match (f.first().and_then(|s| s.parse().ok()), f.get(1).and_then(|s| s.parse().ok())) {
            (Some(a), Some(b)) if f.len() == 2 => (a, b),
            _ => return Err(Error::Parse { line: lno, msg: "PREL wants `<a> <b>`".into() }),
        };
        pairs.push((a, b));
    }
    let pattern = FinitePoset::from_strict_pairs(count, &pairs)?;
    let mut images = vec![None; count];
    for &(lno, line) in it {
        let f = fields(line, "MAP", lno)?;
        let idx: usize = f
            .first()
            .and_then(|s| s.parse().ok())
            .filter(|&i| i < count)
            .ok_or_else(|| Error::Parse { line: lno, msg: "MAP wants `<elem> <Vhex>`".into() })?;
        if f.len() != 2 {
            return Err(Error::Parse { line: lno, msg: "MAP wants `<elem> <Vhex>`".into() });
        }
        if images[idx].replace(parse_mask(f[1], ground, lno)?).is_some() {
            return Err(Error::Parse { line: lno, msg: format!("duplicate MAP for element {idx}") });
        }
    }
    let images: Vec<Mask> = images
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Parse { line: 0, msg: format!("element {i} unmapped") }))
        .collect::<Result<_>>()?;
    Ok(Certificate::PatternCopy(PatternCopyCert { ground, pattern, images, color }))
}

fn parse_bundle(ground: GroundSet, body: &[(usize, &str)]) -> Result<Certificate> {
    let mut it = body.iter();
    let &(lno, line) = it.next().ok_or_else(|| eof(body))?;
    let k: usize = fields(line, "K", lno)?
        .first()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse { line: lno, msg: "K wants a count".into() })?;
    let mut frameworks = Vec::new();
    for &(lno, line) in it {
        let f = fields(line, "FW", lno)?;
        if f.len() != 3 {
            return Err(Error::Parse { line: lno, msg: "FW wants `<Yhex> <Ahex> <Xhex>`".into() });
        }
        frameworks.push(Framework {
            ground,
            y: parse_mask(f[0], ground, lno)?,
            a: parse_mask(f[1], ground, lno)?,
            x: parse_mask(f[2], ground, lno)?,
        });
    }
    Ok(Certificate::Bundle(FrameworkBundle { ground, k, frameworks }))
}

fn eof(body: &[(usize, &str)]) -> Error {
    Error::Parse { line: body.last().map_or(1, |&(l, _)| l + 1), msg: "unexpected end of file".into() }
}
