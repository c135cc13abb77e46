//! Factorial trees, the canonical near-optimal shrub construction, and the
//! framework-based lower-bound coloring with deterministic verification.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cert::{Framework, FrameworkBundle, ShrubCert};
use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::lattice::{
    binomial, compare_masks, expand, k_subsets, sperner_antichain, GroundSet, Mask, Relation,
};
use crate::poset::{FinitePoset, StructureClass};

/// Cap on |yPart| for factorial trees: node counts grow like k!·e and the
/// shrub validator is quadratic in them.
pub const MAX_TREE_GROUND: usize = 6;

/// A duplicate-free sequence of ground-set labels; the nodes of factorial
/// trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedSubset {
    labels: Vec<u8>,
}

impl OrderedSubset {
    pub fn new(labels: Vec<u8>) -> Result<OrderedSubset> {
        let mut seen = 0u32;
        for &l in &labels {
            if l as usize >= crate::lattice::MAX_GROUND {
                return Err(Error::InvalidParameter(format!("label {l} out of range")));
            }
            if seen >> l & 1 == 1 {
                return Err(Error::InvalidParameter(format!("repeated label {l}")));
            }
            seen |= 1 << l;
        }
        Ok(OrderedSubset { labels })
    }

    pub fn empty() -> OrderedSubset {
        OrderedSubset { labels: Vec::new() }
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The underlying unordered set.
    pub fn underlying(&self) -> Mask {
        self.labels.iter().fold(0, |m, &l| m | 1 << l)
    }

    /// Comma-joined decimal labels; `-` for the empty sequence.
    pub fn render(&self) -> String {
        if self.labels.is_empty() {
            "-".into()
        } else {
            self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    pub fn parse(s: &str) -> Result<OrderedSubset> {
        if s == "-" {
            return Ok(OrderedSubset::empty());
        }
        let labels = s
            .split(',')
            .map(|p| {
                p.parse::<u8>().map_err(|_| {
                    Error::Parse { line: 0, msg: format!("bad ordered-subset entry `{p}`") }
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        OrderedSubset::new(labels)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixRelation {
    /// s is a strict prefix of t.
    Prefix,
    /// t is a strict prefix of s.
    Extension,
    Equal,
    Incomparable,
}

pub fn prefix_compare(s: &OrderedSubset, t: &OrderedSubset) -> PrefixRelation {
    let (a, b) = (s.labels(), t.labels());
    let common = a.len().min(b.len());
    if a[..common] != b[..common] {
        return PrefixRelation::Incomparable;
    }
    match a.len().cmp(&b.len()) {
        std::cmp::Ordering::Less => PrefixRelation::Prefix,
        std::cmp::Ordering::Equal => PrefixRelation::Equal,
        std::cmp::Ordering::Greater => PrefixRelation::Extension,
    }
}

/// Node count of the factorial tree on k labels: Σ_{j=0..k} k!/(k−j)!.
pub fn factorial_tree_count(k: usize) -> u64 {
    let mut total = 0u64;
    let mut falling = 1u64; // k!/(k−j)! at the current j
    for j in 0..=k {
        total += falling;
        falling *= (k - j) as u64;
    }
    total
}

/// All ordered subsets of the given yPart, sorted by (length, lexicographic
/// labels) — the canonical node order used in certificates.
pub fn factorial_tree(ground: GroundSet, ypart: Mask) -> Result<Vec<OrderedSubset>> {
    if !ground.contains_mask(ypart) {
        return Err(Error::BadSubset { bits: ypart, n: ground.size() });
    }
    let k = ypart.count_ones() as usize;
    if k > MAX_TREE_GROUND {
        return Err(Error::CapExceeded(format!(
            "factorial tree over {k} labels (cap {MAX_TREE_GROUND})"
        )));
    }
    let labels = ground.subset(ypart).unwrap().labels();
    let mut all: Vec<OrderedSubset> = vec![OrderedSubset::empty()];
    let mut level: Vec<OrderedSubset> = all.clone();
    for _ in 0..k {
        let mut next = Vec::new();
        for node in &level {
            for &l in &labels {
                if node.underlying() >> l & 1 == 0 {
                    let mut seq = node.labels.clone();
                    seq.push(l);
                    next.push(OrderedSubset { labels: seq });
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

/// Smallest block size ℓ whose middle binomial coefficient reaches k:
/// C(ℓ, ⌊ℓ/2⌋) ≥ k.
pub fn min_block_size(k: usize) -> usize {
    assert!(k >= 1, "block size needs a positive target");
    (0..).find(|&l| binomial(l as u64, (l / 2) as u64) >= k as u64).unwrap()
}

/// The canonical yPart-shrub inside Q(A ∪ Y): blocks A_0..A_{k−1} are the
/// first k·ℓ elements of A in label order chopped consecutively, the
/// within-block antichain member A_i^j is the j-th middle-layer subset in
/// colex order, and the node (y_{i_1},…,y_{i_j}) maps to
/// A_{i_1} ∪ A_{i_1+1}^{i_2} ∪ … ∪ A_{i_1+j−1}^{i_j} ∪ {its labels},
/// block indices mod k. The empty node maps to ∅.
pub fn canonical_shrub(ground: GroundSet, y: Mask, a: Mask) -> Result<ShrubCert> {
    for m in [y, a] {
        if !ground.contains_mask(m) {
            return Err(Error::BadSubset { bits: m, n: ground.size() });
        }
    }
    if y & a != 0 {
        return Err(Error::InvalidParameter(format!(
            "block pool {a:X} meets yPart {y:X}"
        )));
    }
    let k = y.count_ones() as usize;
    let nodes = factorial_tree(ground, y)?;
    let (block_masks, antichains) = if k == 0 {
        (Vec::new(), Vec::new())
    } else {
        let l = min_block_size(k);
        let alabels = ground.subset(a).unwrap().labels();
        if alabels.len() < k * l {
            return Err(Error::InvalidParameter(format!(
                "block pool has {} elements, need {}",
                alabels.len(),
                k * l
            )));
        }
        let block_masks: Vec<Mask> = (0..k)
            .map(|i| alabels[i * l..(i + 1) * l].iter().fold(0, |m, &lb| m | 1 << lb))
            .collect();
        let sperner = sperner_antichain(l, k)?;
        let antichains: Vec<Vec<Mask>> = block_masks
            .iter()
            .map(|&bm| sperner.iter().map(|&s| expand(s, bm)).collect())
            .collect();
        (block_masks, antichains)
    };
    let ylabels = ground.subset(y).unwrap().labels();
    let index_of = |label: u8| ylabels.iter().position(|&l| l == label).unwrap();
    let images: Vec<(OrderedSubset, Mask)> = nodes
        .into_iter()
        .map(|s| {
            let idx: Vec<usize> = s.labels().iter().map(|&l| index_of(l)).collect();
            let mut v = s.underlying();
            if let Some(&first) = idx.first() {
                v |= block_masks[first];
                for (t, &it) in idx.iter().enumerate().skip(1) {
                    v |= antichains[(first + t) % k][it];
                }
            }
            (s, v)
        })
        .collect();
    let cert =
        ShrubCert { ground, ypart: y, nodes: images, weak: false, color: None };
    cert.check(None)?;
    Ok(cert)
}

/// One direction of framework independence: some label of X_{Y1} lies in
/// the other framework's free zone, i.e. X_{Y1} ∩ Z_{Y2} ⊄ X_{Y2}.
pub fn x_meets_free_zone(f1: &Framework, f2: &Framework) -> bool {
    f1.x & f2.z() & !f2.x != 0
}

/// Rebuild the shifted shrub family a framework bundle describes: for each
/// framework, the canonical shrub over (Y, A_Y) with every vertex shifted
/// by X_Y, asserted blue.
pub fn shrubs_from_bundle(bundle: &FrameworkBundle) -> Result<BTreeMap<Mask, ShrubCert>> {
    bundle.check()?;
    let mut out = BTreeMap::new();
    for fw in &bundle.frameworks {
        let base = canonical_shrub(bundle.ground, fw.y, fw.a)?;
        let nodes =
            base.nodes.into_iter().map(|(s, v)| (s, v | fw.x)).collect();
        let cert = ShrubCert {
            ground: bundle.ground,
            ypart: fw.y,
            nodes,
            weak: false,
            color: Some(Color::Blue),
        };
        cert.check(None)?;
        if out.insert(fw.y, cert).is_some() {
            return Err(Error::InvalidParameter(format!("duplicate framework for Y {:X}", fw.y)));
        }
    }
    Ok(out)
}

/// Result of a successful lower-bound construction run.
#[derive(Clone, Debug)]
pub struct LowerBoundOutcome {
    pub coloring: Coloring,
    pub bundle: FrameworkBundle,
    pub shrubs: BTreeMap<Mask, ShrubCert>,
    /// Resampling passes that were needed before the family verified.
    pub passes_used: usize,
}

/// Sample one framework for Y from its dedicated stream: A_Y uniform among
/// (k·blockSize)-subsets of the complement, then X_Y ⊆ Z_Y by fair coins.
fn sample_framework(
    rng: &mut ChaCha8Rng,
    ground: GroundSet,
    y: Mask,
    k: usize,
    block_size: usize,
) -> Framework {
    let comp = ground.full_mask() & !y;
    let mut pool = ground.subset(comp).unwrap().labels();
    let take = k * block_size;
    for i in 0..take {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    let a = pool[..take].iter().fold(0, |m, &l| m | 1 << l);
    let z = comp & !a;
    let mut x = 0;
    for l in ground.subset(z).unwrap().labels() {
        if rng.random_bool(0.5) {
            x |= 1 << l;
        }
    }
    Framework { ground, y, a, x }
}

/// Build the lower-bound coloring: sample a framework per k-subset Y,
/// resample offenders until the cross-framework containment property holds for every
/// ordered pair (up to `budget` resampling passes), then color the union
/// of the shifted canonical shrubs blue.
///
/// Each Y draws from its own seeded stream, persistent across resamples,
/// so one seed reproduces the entire run.
pub fn lower_bound_coloring(
    ground: GroundSet,
    k: usize,
    block_size: usize,
    seed: u64,
    budget: usize,
) -> Result<LowerBoundOutcome> {
    let n = ground.size();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} out of range for N = {n}")));
    }
    if block_size < min_block_size(k) {
        return Err(Error::InvalidParameter(format!(
            "block size {block_size} below minimum {}",
            min_block_size(k)
        )));
    }
    let zsize = n as i64 - k as i64 - (k * block_size) as i64;
    if zsize < 1 {
        return Err(Error::InvalidParameter(format!(
            "no room for shift sets: N = {n}, k = {k}, blocks {}",
            k * block_size
        )));
    }
    let count = binomial(n as u64, k as u64);
    if count > 100_000 {
        return Err(Error::CapExceeded(format!("{count} frameworks")));
    }
    let ys: Vec<Mask> = k_subsets(n, k).collect();
    let mut rngs: BTreeMap<Mask, ChaCha8Rng> = ys
        .iter()
        .map(|&y| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(y as u64);
            (y, r)
        })
        .collect();
    let mut fws: BTreeMap<Mask, Framework> = ys
        .iter()
        .map(|&y| (y, sample_framework(rngs.get_mut(&y).unwrap(), ground, y, k, block_size)))
        .collect();

    let mut passes_used = 0;
    loop {
        let mut offenders: Vec<Mask> = Vec::new();
        let mut first_pair = None;
        for &y1 in &ys {
            for &y2 in &ys {
                if y1 != y2 && !x_meets_free_zone(&fws[&y1], &fws[&y2]) {
                    if first_pair.is_none() {
                        first_pair = Some((y1, y2));
                    }
                    offenders.push(y1);
                    offenders.push(y2);
                }
            }
        }
        if offenders.is_empty() {
            break;
        }
        if passes_used == budget {
            let (y1, y2) = first_pair.unwrap();
            return Err(Error::BudgetExhausted { passes: budget, y1, y2 });
        }
        offenders.sort_unstable();
        offenders.dedup();
        for y in offenders {
            let fw = sample_framework(rngs.get_mut(&y).unwrap(), ground, y, k, block_size);
            fws.insert(y, fw);
        }
        passes_used += 1;
    }

    let bundle = FrameworkBundle {
        ground,
        k,
        frameworks: fws.values().copied().collect(),
    };
    let shrubs = shrubs_from_bundle(&bundle)?;
    let blue = shrubs
        .values()
        .flat_map(|cert| cert.nodes.iter().map(|&(_, v)| v))
        .collect::<std::collections::BTreeSet<Mask>>();
    let coloring = Coloring::from_blue_masks(ground, blue)?;
    Ok(LowerBoundOutcome { coloring, bundle, shrubs, passes_used })
}

/// Verdict of [`verify_lower_bound`]: what was checked and the certified
/// bound.
#[derive(Clone, Debug)]
pub struct LowerBoundReport {
    pub shrubs_checked: usize,
    pub independence_pairs: usize,
    pub blue_class: StructureClass,
    /// The certified statement, e.g. `R(Lambda, Q_10) >= 13`.
    pub bound_line: String,
    /// Whether the direct no-red-cube search ran (tiny ground sets only).
    pub red_cube_searched: bool,
}

/// Re-check a claimed lower-bound witness from scratch: every k-subset Y
/// has a valid all-blue full shrub, the shrubs are pairwise vertexwise
/// incomparable, and the blue class is Λ-free by structure. On tiny ground
/// sets additionally confirm by direct search that no red n-cube exists.
pub fn verify_lower_bound(
    c: &Coloring,
    shrubs: &BTreeMap<Mask, ShrubCert>,
    n: usize,
    k: usize,
) -> Result<LowerBoundReport> {
    let ground = c.ground();
    if n + k != ground.size() {
        return Err(Error::InvalidParameter(format!(
            "n + k = {} does not match N = {}",
            n + k,
            ground.size()
        )));
    }
    for y in k_subsets(ground.size(), k) {
        let cert = shrubs.get(&y).ok_or_else(|| {
            Error::InvalidParameter(format!("no shrub for Y {y:X}"))
        })?;
        if cert.weak {
            return Err(Error::NotAnEmbedding(format!("shrub for Y {y:X} is only weak")));
        }
        if cert.ypart != y || cert.ground != ground {
            return Err(Error::InvalidParameter(format!("shrub keyed {y:X} describes another Y")));
        }
        cert.check(Some(c))?;
        for &(_, v) in &cert.nodes {
            if !c.is(v, Color::Blue) {
                return Err(Error::NotAnEmbedding(format!(
                    "shrub vertex {v:X} for Y {y:X} is not blue"
                )));
            }
        }
    }
    let mut independence_pairs = 0;
    let entries: Vec<(&Mask, &ShrubCert)> = shrubs.iter().collect();
    for (i, (y1, s1)) in entries.iter().enumerate() {
        for (y2, s2) in &entries[i + 1..] {
            independence_pairs += 1;
            for &(_, v1) in &s1.nodes {
                for &(_, v2) in &s2.nodes {
                    if compare_masks(v1, v2) != Relation::Incomparable {
                        return Err(Error::NotAnEmbedding(format!(
                            "shrubs for Y {y1:X} and Y {y2:X} share comparable vertices {v1:X}, {v2:X}"
                        )));
                    }
                }
            }
        }
    }
    let blue = c.class(Color::Blue);
    let blue_class = FinitePoset::from_masks_induced(&blue)?.classify();
    if blue_class.has_lambda() {
        return Err(Error::NotAnEmbedding("blue class contains a Λ".into()));
    }
    let mut red_cube_searched = false;
    if ground.size() <= 4 {
        red_cube_searched = true;
        let cube = FinitePoset::cube(n)?;
        if crate::poset::contains_pattern(c, &cube, Color::Red)?.is_some() {
            return Err(Error::NotAnEmbedding("a red cube copy exists".into()));
        }
    }
    Ok(LowerBoundReport {
        shrubs_checked: shrubs.len(),
        independence_pairs,
        blue_class,
        bound_line: format!("R(Lambda, Q_{n}) >= {}", ground.size() + 1),
        red_cube_searched,
    })
}
