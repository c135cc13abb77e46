//! Exhaustive ground truth: complete good-coloring search, exact small
//! Ramsey numbers with stored witnesses, and from-scratch certificate
//! verification that shares no code with the constructing engines.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::iter::{IntoParallelIterator, ParallelIterator};

use crate::cert::{
    BlueChainCert, Certificate, FrameworkBundle, PatternCopyCert, ShrubCert, XGoodCopyCert,
};
use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::lattice::{binomial, GroundSet, Mask};
use crate::poset::{contains_pattern, copy_exists_using, FinitePoset, MAX_PATTERN};

/// Largest ground set the complete searches accept: 4 labels run the flat
/// enumeration of all 2^16 colorings, 5 run the pruned depth-first search.
pub const MAX_SEARCH_GROUND: usize = 5;

/// A coloring of the n-label lattice with no blue copy of one pattern and no
/// red copy of the other, or proof by exhaustion that none exists.  Found
/// witnesses are re-verified against both patterns before they are returned.
pub fn good_coloring_search(
    blue_p: &FinitePoset,
    red_q: &FinitePoset,
    n: usize,
) -> Result<Option<Coloring>> {
    good_coloring_search_opts(blue_p, red_q, n, false)
}

/// As `good_coloring_search`; `canonicalize` additionally prunes colorings
/// that a ground-label permutation maps to something lexicographically
/// smaller.  Only the depth-first regime at 5 labels consults the flag.
pub fn good_coloring_search_opts(
    blue_p: &FinitePoset,
    red_q: &FinitePoset,
    n: usize,
    canonicalize: bool,
) -> Result<Option<Coloring>> {
    if n == 0 || n > MAX_SEARCH_GROUND {
        return Err(Error::CapExceeded(format!(
            "complete search handles 1..={MAX_SEARCH_GROUND} labels, got {n}"
        )));
    }
    for pattern in [blue_p, red_q] {
        if pattern.len() > MAX_PATTERN {
            return Err(Error::PatternTooLarge(pattern.len(), MAX_PATTERN));
        }
        pattern.validate()?;
    }
    let ground = GroundSet::new(n)?;
    let found = if n <= 4 {
        enumerate_search(blue_p, red_q, ground)
    } else {
        dfs_search(blue_p, red_q, ground, canonicalize)
    };
    if let Some(c) = &found {
        assert!(contains_pattern(c, blue_p, Color::Blue)?.is_none());
        assert!(contains_pattern(c, red_q, Color::Red)?.is_none());
    }
    Ok(found)
}

fn coloring_of_code(ground: GroundSet, code: u64) -> Coloring {
    let blues = (0..ground.vertex_count() as Mask).filter(|&v| code >> v & 1 == 1);
    Coloring::from_blue_masks(ground, blues).unwrap()
}

fn is_good(c: &Coloring, blue_p: &FinitePoset, red_q: &FinitePoset) -> bool {
    let no_blue = contains_pattern(c, blue_p, Color::Blue)
        .expect("patterns were validated up front")
        .is_none();
    no_blue
        && contains_pattern(c, red_q, Color::Red)
            .expect("patterns were validated up front")
            .is_none()
}

/// All 2^(2^n) colorings, ascending by blue-set code; the lowest good code
/// wins, so the witness is reproducible under any worker count.
fn enumerate_search(blue_p: &FinitePoset, red_q: &FinitePoset, ground: GroundSet) -> Option<Coloring> {
    let total = 1u64 << ground.vertex_count();
    (0..total)
        .into_par_iter()
        .find_first(|&code| is_good(&coloring_of_code(ground, code), blue_p, red_q))
        .map(|code| coloring_of_code(ground, code))
}

fn color_rank(c: Color) -> u8 {
    match c {
        Color::Blue => 0,
        Color::Red => 1,
    }
}

struct Dfs<'a> {
    blue_p: &'a FinitePoset,
    red_q: &'a FinitePoset,
    /// Vertices in assignment order: by popcount, then mask.
    order: &'a [Mask],
    /// Assigned colors, indexed by position in `order`.
    colors: Vec<Option<Color>>,
    blue: Vec<Mask>,
    red: Vec<Mask>,
    /// Per ground permutation, the position each position's vertex maps to;
    /// empty when canonicalization is off.
    perms: &'a [Vec<usize>],
    forced_first: Option<Color>,
}

impl Dfs<'_> {
    /// True once a full good coloring is on the stack.
    fn run(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        for color in [Color::Blue, Color::Red] {
            if pos == 0 && self.forced_first.is_some_and(|f| f != color) {
                continue;
            }
            self.colors[pos] = Some(color);
            // A new copy must use the vertex just added: everything older
            // was already vetted when its own last vertex arrived.
            let creates = match color {
                Color::Blue => {
                    self.blue.push(v);
                    copy_exists_using(self.blue_p, &self.blue, self.blue.len() - 1)
                }
                Color::Red => {
                    self.red.push(v);
                    copy_exists_using(self.red_q, &self.red, self.red.len() - 1)
                }
            };
            if !creates && self.prefix_canonical(pos + 1) && self.run(pos + 1) {
                return true;
            }
            match color {
                Color::Blue => self.blue.pop(),
                Color::Red => self.red.pop(),
            };
            self.colors[pos] = None;
        }
        false
    }

    /// No ground permutation rewrites the assigned prefix to something
    /// lexicographically smaller (blue before red).  Comparisons stop at the
    /// first position whose permuted image is still uncolored, so at least
    /// one representative of every orbit survives.
    fn prefix_canonical(&self, len: usize) -> bool {
        'perm: for pm in self.perms {
            for (p, &q) in pm.iter().enumerate().take(len) {
                if q >= len {
                    continue 'perm;
                }
                let own = color_rank(self.colors[p].unwrap());
                let img = color_rank(self.colors[q].unwrap());
                match img.cmp(&own) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => continue 'perm,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}

fn assignment_order(ground: GroundSet) -> Vec<Mask> {
    let mut order: Vec<Mask> = (0..ground.vertex_count() as Mask).collect();
    order.sort_unstable_by_key(|&v| (v.count_ones(), v));
    order
}

fn label_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut all = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; n];
    fn step(n: usize, current: &mut Vec<u8>, used: &mut [bool], all: &mut Vec<Vec<u8>>) {
        if current.len() == n {
            all.push(current.clone());
            return;
        }
        for l in 0..n {
            if !used[l] {
                used[l] = true;
                current.push(l as u8);
                step(n, current, used, all);
                current.pop();
                used[l] = false;
            }
        }
    }
    step(n, &mut current, &mut used, &mut all);
    all
}

/// Position maps for every non-identity ground permutation: entry p is the
/// assignment-order position of the permuted image of the vertex at p.
fn position_maps(ground: GroundSet, order: &[Mask]) -> Vec<Vec<usize>> {
    let mut pos_of = vec![0usize; order.len()];
    for (p, &v) in order.iter().enumerate() {
        pos_of[v as usize] = p;
    }
    let relabel = |v: Mask, perm: &[u8]| -> Mask {
        (0..ground.size()).filter(|&l| v >> l & 1 == 1).fold(0, |m, l| m | 1 << perm[l])
    };
    label_permutations(ground.size())
        .into_iter()
        .filter(|perm| perm.iter().enumerate().any(|(i, &l)| l as usize != i))
        .map(|perm| order.iter().map(|&v| pos_of[relabel(v, &perm) as usize]).collect())
        .collect()
}

/// Depth-first search over vertex colors in (popcount, mask) order, pruning
/// a branch the moment its partial blue class contains the blue pattern or
/// its partial red class the red one.  The two top-level branches (color of
/// the bottom vertex) run on separate workers; the blue-first branch wins,
/// matching the sequential trial order.
fn dfs_search(
    blue_p: &FinitePoset,
    red_q: &FinitePoset,
    ground: GroundSet,
    canonicalize: bool,
) -> Option<Coloring> {
    let order = assignment_order(ground);
    let perms = if canonicalize { position_maps(ground, &order) } else { Vec::new() };
    let branch = |first: Color| -> Option<Vec<Mask>> {
        let mut dfs = Dfs {
            blue_p,
            red_q,
            order: &order,
            colors: vec![None; order.len()],
            blue: Vec::new(),
            red: Vec::new(),
            perms: &perms,
            forced_first: Some(first),
        };
        dfs.run(0).then(|| dfs.blue.clone())
    };
    let (blue_first, red_first) = rayon::join(|| branch(Color::Blue), || branch(Color::Red));
    blue_first
        .or(red_first)
        .map(|blues| Coloring::from_blue_masks(ground, blues).unwrap())
}

/// Exact value or honest lower bound for the least dimension at which every
/// coloring contains a blue copy of one pattern or a red copy of the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseyValue {
    Exact(usize),
    LowerBoundOnly(usize),
}

impl RamseyValue {
    pub fn render(&self) -> String {
        match self {
            RamseyValue::Exact(v) => v.to_string(),
            RamseyValue::LowerBoundOnly(b) => format!(">={b}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RamseyResult {
    pub pattern_blue: FinitePoset,
    pub pattern_red: FinitePoset,
    pub value: RamseyValue,
    /// Dimension → good coloring found there; contiguous from 1 up to the
    /// last dimension below the value.
    pub witnesses: BTreeMap<usize, Coloring>,
}

/// Search dimensions 1..=nmax in turn.  The first dimension with no good
/// coloring is the exact value; if every dimension has one, the value is
/// only bounded below, never extrapolated.
pub fn ramsey_number(
    blue_p: &FinitePoset,
    red_q: &FinitePoset,
    nmax: usize,
) -> Result<RamseyResult> {
    if nmax == 0 || nmax > MAX_SEARCH_GROUND {
        return Err(Error::CapExceeded(format!(
            "exact values need 1..={MAX_SEARCH_GROUND} dimensions, got {nmax}"
        )));
    }
    let mut witnesses = BTreeMap::new();
    for n in 1..=nmax {
        match good_coloring_search(blue_p, red_q, n)? {
            Some(c) => {
                witnesses.insert(n, c);
            }
            None => {
                // Restriction to a subcube preserves goodness, so every
                // smaller dimension must have produced a witness.
                assert_eq!(witnesses.len(), n - 1, "a good coloring vanished below an absent one");
                return Ok(RamseyResult {
                    pattern_blue: blue_p.clone(),
                    pattern_red: red_q.clone(),
                    value: RamseyValue::Exact(n),
                    witnesses,
                });
            }
        }
    }
    Ok(RamseyResult {
        pattern_blue: blue_p.clone(),
        pattern_red: red_q.clone(),
        value: RamseyValue::LowerBoundOnly(nmax + 1),
        witnesses,
    })
}

/// Why a certificate was rejected, by the invariant that broke first; checks
/// run structure, then goodness, then injectivity, then order, then colors,
/// then independence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailReason {
    Structure(String),
    Goodness(String),
    Injectivity(String),
    OrderIso(String),
    Colors(String),
    Independence(String),
}

impl FailReason {
    pub fn class(&self) -> &'static str {
        match self {
            FailReason::Structure(_) => "structure",
            FailReason::Goodness(_) => "goodness",
            FailReason::Injectivity(_) => "injectivity",
            FailReason::OrderIso(_) => "order",
            FailReason::Colors(_) => "colors",
            FailReason::Independence(_) => "independence",
        }
    }

    fn message(&self) -> &str {
        match self {
            FailReason::Structure(m)
            | FailReason::Goodness(m)
            | FailReason::Injectivity(m)
            | FailReason::OrderIso(m)
            | FailReason::Colors(m)
            | FailReason::Independence(m) => m,
        }
    }
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.class(), self.message())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(FailReason),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn reason(&self) -> Option<&FailReason> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(r) => Some(r),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(r) => write!(f, "fail({r})"),
        }
    }
}

type Check = std::result::Result<(), FailReason>;

/// Re-check every invariant of a certificate from scratch against the given
/// coloring.  Verdict-style: never errors, never shares checking code with
/// the engines that construct certificates.
pub fn verify_certificate(cert: &Certificate, c: &Coloring) -> Verdict {
    let checked = if cert.ground() != c.ground() {
        Err(FailReason::Structure(format!(
            "certificate ground has {} labels, coloring has {}",
            cert.ground().size(),
            c.ground().size()
        )))
    } else {
        match cert {
            Certificate::XGood(x) => verify_xgood(x, c),
            Certificate::BlueChain(x) => verify_chain(x, c),
            Certificate::Shrub(x) => verify_shrub(x, c),
            Certificate::PatternCopy(x) => verify_pattern_copy(x, c),
            Certificate::Bundle(x) => verify_bundle(x),
        }
    };
    match checked {
        Ok(()) => Verdict::Pass,
        Err(reason) => Verdict::Fail(reason),
    }
}

fn verify_xgood(cert: &XGoodCopyCert, c: &Coloring) -> Check {
    let ground = cert.partition.ground();
    let xpart = cert.partition.x_mask();
    if cert.images.len() != 1usize << cert.partition.x_size() {
        return Err(FailReason::Structure(format!(
            "{} images for a {}-label first part",
            cert.images.len(),
            cert.partition.x_size()
        )));
    }
    for (&x, &v) in &cert.images {
        if x & !xpart != 0 {
            return Err(FailReason::Structure(format!("key {x:X} leaves the first part")));
        }
        if !ground.contains_mask(v) {
            return Err(FailReason::Structure(format!("image {v:X} leaves the ground set")));
        }
    }
    for (&x, &v) in &cert.images {
        if v & xpart != x {
            return Err(FailReason::Goodness(format!(
                "image {v:X} of {x:X} has first-part trace {:X}",
                v & xpart
            )));
        }
    }
    let distinct: BTreeSet<Mask> = cert.images.values().copied().collect();
    if distinct.len() != cert.images.len() {
        return Err(FailReason::Injectivity("not injective: images repeat a vertex".into()));
    }
    for (&a, &va) in &cert.images {
        for (&b, &vb) in &cert.images {
            if (a & b == a) != (va & vb == va) {
                return Err(FailReason::OrderIso(format!(
                    "keys {a:X},{b:X} and images {va:X},{vb:X} disagree on containment"
                )));
            }
        }
    }
    if let Some(color) = cert.color {
        for (&x, &v) in &cert.images {
            if !c.is(v, color) {
                return Err(FailReason::Colors(format!(
                    "image of {x:X} is not {}",
                    color.name()
                )));
            }
        }
    }
    Ok(())
}

fn verify_chain(cert: &BlueChainCert, c: &Coloring) -> Check {
    let ground = cert.partition.ground();
    let ypart = cert.partition.y_mask();
    let k = cert.partition.y_size();
    let mut sorted = cert.ordering.clone();
    sorted.sort_unstable();
    let ylabels: Vec<u8> =
        (0..ground.size() as u8).filter(|&l| ypart >> l & 1 == 1).collect();
    if sorted != ylabels {
        return Err(FailReason::Structure(
            "ordering is not a permutation of the second part".into(),
        ));
    }
    if cert.vertices.len() != k + 1 {
        return Err(FailReason::Structure(format!(
            "{} vertices for {} prefix levels",
            cert.vertices.len(),
            k + 1
        )));
    }
    for &v in &cert.vertices {
        if !ground.contains_mask(v) {
            return Err(FailReason::Structure(format!("vertex {v:X} leaves the ground set")));
        }
    }
    let mut prefix: Mask = 0;
    for (i, &v) in cert.vertices.iter().enumerate() {
        if v & ypart != prefix {
            return Err(FailReason::Goodness(format!(
                "vertex {i} has second-part trace {:X}, expected prefix {prefix:X}",
                v & ypart
            )));
        }
        if i < k {
            prefix |= 1 << cert.ordering[i];
        }
    }
    let distinct: BTreeSet<Mask> = cert.vertices.iter().copied().collect();
    if distinct.len() != cert.vertices.len() {
        return Err(FailReason::Injectivity("not injective: chain repeats a vertex".into()));
    }
    for (i, w) in cert.vertices.windows(2).enumerate() {
        if w[0] & w[1] != w[0] {
            return Err(FailReason::OrderIso(format!(
                "vertices {i} and {} are not nested",
                i + 1
            )));
        }
    }
    for (i, &v) in cert.vertices.iter().enumerate() {
        if !c.is(v, Color::Blue) {
            return Err(FailReason::Colors(format!("chain vertex {i} is not blue")));
        }
    }
    Ok(())
}

/// Every duplicate-free label sequence over `labels`, as sorted label lists
/// for set comparison.
fn all_ordered_sequences(labels: &[u8]) -> Vec<Vec<u8>> {
    let mut all = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for seq in frontier {
            for &l in labels {
                if !seq.contains(&l) {
                    let mut longer = seq.clone();
                    longer.push(l);
                    next.push(longer);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn verify_shrub(cert: &ShrubCert, c: &Coloring) -> Check {
    let ground = cert.ground;
    if !ground.contains_mask(cert.ypart) {
        return Err(FailReason::Structure(format!(
            "second part {:X} leaves the ground set",
            cert.ypart
        )));
    }
    let labels: Vec<u8> =
        (0..ground.size() as u8).filter(|&l| cert.ypart >> l & 1 == 1).collect();
    let mut want = all_ordered_sequences(&labels);
    want.sort_unstable();
    let mut have: Vec<Vec<u8>> = cert.nodes.iter().map(|(s, _)| s.labels().to_vec()).collect();
    have.sort_unstable();
    if have != want {
        return Err(FailReason::Structure(
            "nodes are not exactly the ordered subsets of the second part".into(),
        ));
    }
    for (_, v) in &cert.nodes {
        if !ground.contains_mask(*v) {
            return Err(FailReason::Structure(format!("vertex {v:X} leaves the ground set")));
        }
    }
    for (s, v) in &cert.nodes {
        let underlying = s.labels().iter().fold(0 as Mask, |m, &l| m | 1 << l);
        if v & cert.ypart != underlying {
            return Err(FailReason::Goodness(format!(
                "node ({}) has second-part trace {:X}, expected {underlying:X}",
                s.render(),
                v & cert.ypart
            )));
        }
    }
    let distinct: BTreeSet<Mask> = cert.nodes.iter().map(|(_, v)| *v).collect();
    if distinct.len() != cert.nodes.len() {
        return Err(FailReason::Injectivity("not injective: two nodes share a vertex".into()));
    }
    let is_prefix = |a: &[u8], b: &[u8]| a.len() <= b.len() && a == &b[..a.len()];
    for (i, (s, v)) in cert.nodes.iter().enumerate() {
        for (t, w) in &cert.nodes[i + 1..] {
            let (st, ts) = (is_prefix(s.labels(), t.labels()), is_prefix(t.labels(), s.labels()));
            let (vw, wv) = (v & w == *v, v & w == *w);
            let ok = if st {
                vw
            } else if ts {
                wv
            } else if cert.weak {
                true
            } else {
                !vw && !wv
            };
            if !ok {
                return Err(FailReason::OrderIso(format!(
                    "nodes ({}) and ({}) break the prefix/containment match",
                    s.render(),
                    t.render()
                )));
            }
        }
    }
    if let Some(color) = cert.color {
        for (s, v) in &cert.nodes {
            if !c.is(*v, color) {
                return Err(FailReason::Colors(format!(
                    "vertex at node ({}) is not {}",
                    s.render(),
                    color.name()
                )));
            }
        }
    }
    Ok(())
}

fn verify_pattern_copy(cert: &PatternCopyCert, c: &Coloring) -> Check {
    if cert.pattern.validate().is_err() {
        return Err(FailReason::Structure("pattern relation is not a partial order".into()));
    }
    if cert.images.len() != cert.pattern.len() {
        return Err(FailReason::Structure(format!(
            "{} images for a {}-element pattern",
            cert.images.len(),
            cert.pattern.len()
        )));
    }
    for &v in &cert.images {
        if !cert.ground.contains_mask(v) {
            return Err(FailReason::Structure(format!("image {v:X} leaves the ground set")));
        }
    }
    let distinct: BTreeSet<Mask> = cert.images.iter().copied().collect();
    if distinct.len() != cert.images.len() {
        return Err(FailReason::Injectivity("not injective: images repeat a vertex".into()));
    }
    for i in 0..cert.images.len() {
        for j in 0..cert.images.len() {
            let (vi, vj) = (cert.images[i], cert.images[j]);
            if cert.pattern.leq(i, j) != (vi & vj == vi) {
                return Err(FailReason::OrderIso(format!(
                    "elements {i},{j} and images {vi:X},{vj:X} disagree on order"
                )));
            }
        }
    }
    for (i, &v) in cert.images.iter().enumerate() {
        if !c.is(v, cert.color) {
            return Err(FailReason::Colors(format!(
                "image of element {i} is not {}",
                cert.color.name()
            )));
        }
    }
    Ok(())
}

fn verify_bundle(cert: &FrameworkBundle) -> Check {
    let ground = cert.ground;
    let n = ground.size();
    if cert.k > n {
        return Err(FailReason::Structure(format!(
            "second-part size {} exceeds the {n}-label ground set",
            cert.k
        )));
    }
    let expected = binomial(n as u64, cert.k as u64);
    if cert.frameworks.len() as u64 != expected {
        return Err(FailReason::Structure(format!(
            "{} frameworks for {expected} possible second parts",
            cert.frameworks.len()
        )));
    }
    let mut prev: Option<Mask> = None;
    for fw in &cert.frameworks {
        if fw.ground != ground {
            return Err(FailReason::Structure("framework ground differs from the bundle".into()));
        }
        for m in [fw.y, fw.a, fw.x] {
            if !ground.contains_mask(m) {
                return Err(FailReason::Structure(format!("part {m:X} leaves the ground set")));
            }
        }
        if fw.y.count_ones() as usize != cert.k {
            return Err(FailReason::Structure(format!(
                "framework second part {:X} has size {}, bundle promises {}",
                fw.y,
                fw.y.count_ones(),
                cert.k
            )));
        }
        if fw.y & fw.a != 0 {
            return Err(FailReason::Structure(format!(
                "framework parts overlap: second part {:X}, pool {:X}",
                fw.y, fw.a
            )));
        }
        let z = ground.full_mask() & !(fw.y | fw.a);
        if fw.x & !z != 0 {
            return Err(FailReason::Structure(format!(
                "shift set {:X} leaves the free zone {z:X}",
                fw.x
            )));
        }
        if prev.is_some_and(|p| fw.y <= p) {
            return Err(FailReason::Structure("framework second parts not ascending".into()));
        }
        prev = Some(fw.y);
    }
    for f1 in &cert.frameworks {
        for f2 in &cert.frameworks {
            if f1.y == f2.y {
                continue;
            }
            let free = ground.full_mask() & !(f2.y | f2.a) & !f2.x;
            if f1.x & free == 0 {
                return Err(FailReason::Independence(format!(
                    "frameworks for {:X} and {:X} are not independent",
                    f1.y, f2.y
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::Framework;
    use crate::duality::{duality, DualityOutcome};
    use crate::embedding::{shift_search, ShiftOutcome};
    use crate::lattice::Partition;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(k: usize) -> FinitePoset {
        FinitePoset::cube(k).unwrap()
    }

    #[test]
    fn two_chains_need_three_labels() {
        let r = ramsey_number(&q(1), &q(1), 3).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(2));
        assert_eq!(r.value.render(), "2");
        let witness = &r.witnesses[&1];
        assert!(witness.is(0b0, Color::Blue));
        assert!(witness.is(0b1, Color::Red));
    }

    #[test]
    fn chain_versus_square_needs_four_labels() {
        let r = ramsey_number(&q(1), &q(2), 4).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(3));
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn lambda_versus_chain_value_is_frozen() {
        let r = ramsey_number(&FinitePoset::lambda(), &q(1), 3).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(3));
        let witness = &r.witnesses[&2];
        assert!(contains_pattern(witness, &FinitePoset::lambda(), Color::Blue)
            .unwrap()
            .is_none());
        assert!(contains_pattern(witness, &q(1), Color::Red).unwrap().is_none());
    }

    #[test]
    fn single_label_splits_colors() {
        let found = good_coloring_search(&q(1), &q(1), 1).unwrap().unwrap();
        assert!(found.is(0b0, Color::Blue));
        assert!(found.is(0b1, Color::Red));
        assert!(good_coloring_search(&q(1), &q(1), 2).unwrap().is_none());
    }

    #[test]
    fn lambda_dodged_by_an_antichain_of_reds() {
        let found = good_coloring_search(&FinitePoset::lambda(), &q(1), 2).unwrap().unwrap();
        let reds = found.class(Color::Red);
        for (i, &a) in reds.iter().enumerate() {
            for &b in &reds[i + 1..] {
                assert!(a & b != a && a & b != b, "red class is not an antichain");
            }
        }
    }

    #[test]
    fn search_rejects_oversized_grounds() {
        assert!(matches!(
            good_coloring_search(&q(1), &q(1), 6),
            Err(Error::CapExceeded(_))
        ));
        assert!(matches!(ramsey_number(&q(1), &q(1), 0), Err(Error::CapExceeded(_))));
    }

    /// Random posets on up to four elements, built from acyclic pair sets.
    fn random_pattern(rng: &mut ChaCha8Rng) -> FinitePoset {
        let n = rng.random_range(2..=4);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(0.4) {
                    pairs.push((i, j));
                }
            }
        }
        FinitePoset::from_strict_pairs(n, &pairs).unwrap()
    }

    #[test]
    fn pruned_search_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for round in 0..20 {
            let blue_p = random_pattern(&mut rng);
            let red_q = random_pattern(&mut rng);
            let ground = GroundSet::new(3 + round % 2).unwrap();
            let by_enum = enumerate_search(&blue_p, &red_q, ground);
            let by_dfs = dfs_search(&blue_p, &red_q, ground, false);
            assert_eq!(by_enum.is_some(), by_dfs.is_some(), "round {round}");
            let by_canon = dfs_search(&blue_p, &red_q, ground, true);
            assert_eq!(by_enum.is_some(), by_canon.is_some(), "round {round} canonical");
            for witness in [by_enum, by_dfs, by_canon].into_iter().flatten() {
                assert!(is_good(&witness, &blue_p, &red_q));
            }
        }
    }

    #[test]
    fn five_label_chain_dodge_is_found() {
        let found = good_coloring_search(&FinitePoset::chain(6).unwrap(), &q(1), 5)
            .unwrap()
            .unwrap();
        assert_eq!(found.class(Color::Red).len(), 1);
    }

    #[test]
    fn five_label_lambda_has_no_dodge() {
        assert!(good_coloring_search(&FinitePoset::lambda(), &q(1), 5).unwrap().is_none());
        assert!(good_coloring_search_opts(&FinitePoset::lambda(), &q(1), 5, true)
            .unwrap()
            .is_none());
    }

    #[test]
    fn verdicts_on_engine_outputs() {
        let g = GroundSet::new(3).unwrap();
        let p = Partition::from_x(g, 0b011).unwrap();
        let red = Coloring::constant(g, Color::Red);
        match shift_search(&red, &p, &[2]).unwrap() {
            ShiftOutcome::Red(cert) => {
                assert_eq!(verify_certificate(&Certificate::XGood(cert), &red), Verdict::Pass);
            }
            ShiftOutcome::Chain(_) => panic!("constant red cannot force a chain"),
        }
        let blue = Coloring::constant(g, Color::Blue);
        match shift_search(&blue, &p, &[2]).unwrap() {
            ShiftOutcome::Chain(cert) => {
                assert_eq!(verify_certificate(&Certificate::BlueChain(cert), &blue), Verdict::Pass);
            }
            ShiftOutcome::Red(_) => panic!("constant blue cannot host a red copy"),
        }
        let c = Coloring::from_blue_masks(g, [0b000, 0b100]).unwrap();
        match duality(&c, &p).unwrap() {
            DualityOutcome::BlueBranch(cert) => {
                assert_eq!(verify_certificate(&Certificate::Shrub(cert), &c), Verdict::Pass);
            }
            DualityOutcome::RedBranch(_) => panic!("dead bottom cannot host a red copy"),
        }
    }

    #[test]
    fn recolored_chain_vertex_is_flagged() {
        let g = GroundSet::new(3).unwrap();
        let p = Partition::from_x(g, 0b011).unwrap();
        let blue = Coloring::constant(g, Color::Blue);
        let ShiftOutcome::Chain(cert) = shift_search(&blue, &p, &[2]).unwrap() else {
            panic!("constant blue must force a chain");
        };
        let recolored = blue.set(cert.vertices[1], Color::Red);
        match verify_certificate(&Certificate::BlueChain(cert), &recolored) {
            Verdict::Fail(FailReason::Colors(m)) => assert!(m.contains("not blue")),
            other => panic!("expected a color failure, got {other}"),
        }
    }

    /// Hand-built full shrub over a 2-label second part: the two orderings
    /// of {2,3} land on distinct incomparable vertices.
    fn hand_shrub(g: GroundSet) -> (ShrubCert, Coloring) {
        let seq = |labels: Vec<u8>| crate::shrub::OrderedSubset::new(labels).unwrap();
        let nodes = vec![
            (seq(vec![]), 0b0000),
            (seq(vec![2]), 0b0110),
            (seq(vec![3]), 0b1001),
            (seq(vec![2, 3]), 0b1110),
            (seq(vec![3, 2]), 0b1101),
        ];
        let blues: Vec<Mask> = nodes.iter().map(|(_, v)| *v).collect();
        let cert = ShrubCert {
            ground: g,
            ypart: 0b1100,
            nodes,
            weak: false,
            color: Some(Color::Blue),
        };
        (cert, Coloring::from_blue_masks(g, blues).unwrap())
    }

    #[test]
    fn duplicated_shrub_vertex_is_not_injective() {
        let g = GroundSet::new(4).unwrap();
        let (cert, c) = hand_shrub(g);
        assert_eq!(verify_certificate(&Certificate::Shrub(cert.clone()), &c), Verdict::Pass);
        let mut tampered = cert;
        // Same underlying set on both orderings keeps goodness intact, so
        // the collision is caught as an injectivity failure.
        tampered.nodes[4].1 = tampered.nodes[3].1;
        match verify_certificate(&Certificate::Shrub(tampered), &c) {
            Verdict::Fail(FailReason::Injectivity(m)) => assert!(m.contains("not injective")),
            other => panic!("expected an injectivity failure, got {other}"),
        }
    }

    #[test]
    fn bundle_independence_is_enforced() {
        let g = GroundSet::new(5).unwrap();
        let fw = |i: u32| Framework {
            ground: g,
            y: 1 << i,
            a: 0,
            x: 1 << ((i + 2) % 5) | 1 << ((i + 3) % 5),
        };
        let bundle = FrameworkBundle { ground: g, k: 1, frameworks: (0..5).map(fw).collect() };
        let c = Coloring::constant(g, Color::Blue);
        assert_eq!(verify_certificate(&Certificate::Bundle(bundle.clone()), &c), Verdict::Pass);
        let mut broken = bundle;
        broken.frameworks[0].x = 1 << 2;
        match verify_certificate(&Certificate::Bundle(broken), &c) {
            Verdict::Fail(FailReason::Independence(_)) => {}
            other => panic!("expected an independence failure, got {other}"),
        }
    }

    #[test]
    fn ground_mismatch_is_structural() {
        let g3 = GroundSet::new(3).unwrap();
        let g4 = GroundSet::new(4).unwrap();
        let p = Partition::from_x(g3, 0b011).unwrap();
        let red = Coloring::constant(g3, Color::Red);
        let ShiftOutcome::Red(cert) = shift_search(&red, &p, &[2]).unwrap() else {
            panic!("constant red cannot force a chain");
        };
        let other = Coloring::constant(g4, Color::Red);
        match verify_certificate(&Certificate::XGood(cert), &other) {
            Verdict::Fail(FailReason::Structure(_)) => {}
            other => panic!("expected a structure failure, got {other}"),
        }
    }
}
