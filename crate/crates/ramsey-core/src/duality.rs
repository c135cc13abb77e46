//! Embeddability tables over a two-part vertex split and the dichotomy they
//! decide: either the red class carries a good copy of the cube on the first
//! part, or every branch of the factorial tree on the second part supports a
//! blue shrub.  The table is filled by a recurrence that looks only upward,
//! the positive side is turned into a checked copy certificate by replaying
//! the recurrence's witnesses, and the negative side is walked into a shrub
//! by climbing to blue dead vertices.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cert::{ShrubCert, XGoodCopyCert};
use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::lattice::{expand, k_subsets, submasks, Mask, Partition};
use crate::poset::{monochrome_lambda, EmbeddingMap, FinitePoset};
use crate::shrub::factorial_tree;

/// Per-split-vertex answer to "can a red good copy of the cube on the first
/// part be anchored here": entry (X, Y) is true when some embedding of the
/// up-set of X lands entirely in the red class, traces X' on every image,
/// and sends X itself above the vertex (X, Y).
#[derive(Clone, Debug)]
pub struct EmbeddabilityTable {
    partition: Partition,
    /// Indexed by the vertex mask X | Y; every vertex splits uniquely.
    flags: Vec<bool>,
}

impl EmbeddabilityTable {
    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn get(&self, x: Mask, y: Mask) -> bool {
        debug_assert_eq!(x & !self.partition.x_mask(), 0);
        debug_assert_eq!(y & !self.partition.y_mask(), 0);
        self.flags[(x | y) as usize]
    }
}

fn ensure_no_blue_lambda(c: &Coloring) -> Result<()> {
    match monochrome_lambda(c, Color::Blue) {
        Some((u, v, w)) => Err(Error::BlueLambda(u, v, w)),
        None => Ok(()),
    }
}

/// Strict supersets of `s` inside `part`, ascending.
fn strict_supersets_within(s: Mask, part: Mask) -> impl Iterator<Item = Mask> {
    submasks(part & !s).filter(|&t| t != 0).map(move |t| s | t)
}

/// Submasks of `part`, largest first and ascending within one size, so that a
/// sweep reads only entries it has already written.
fn by_falling_popcount(part: Mask) -> Vec<Mask> {
    let mut sets: Vec<Mask> = submasks(part).collect();
    sets.sort_unstable_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    sets
}

/// Fill the whole table for one split.  A blue vertex is alive when some
/// strictly larger second-part trace is alive at the same first-part trace; a
/// red vertex is alive when every strictly larger first-part trace is alive
/// at the same second-part trace (vacuously at the full first part).
///
/// Errors with the witnessing triple if the blue class contains a Λ.
pub fn embeddable_table(c: &Coloring, p: &Partition) -> Result<EmbeddabilityTable> {
    if c.ground() != p.ground() {
        return Err(Error::HostMismatch(c.ground().size(), p.ground().size()));
    }
    ensure_no_blue_lambda(c)?;
    let (xpart, ypart) = (p.x_mask(), p.y_mask());
    let mut flags = vec![false; c.ground().vertex_count()];
    for x in by_falling_popcount(xpart) {
        for y in by_falling_popcount(ypart) {
            let v = x | y;
            flags[v as usize] = if c.is(v, Color::Blue) {
                strict_supersets_within(y, ypart).any(|y2| flags[(x | y2) as usize])
            } else {
                strict_supersets_within(x, xpart).all(|x2| flags[(x2 | y) as usize])
            };
        }
    }
    Ok(EmbeddabilityTable { partition: *p, flags })
}

/// Decide one entry from the definition alone: search every assignment of
/// second-part traces to the up-set of `x` for one that is red everywhere,
/// monotone along inclusion, and sends `x` above `y`.  Ground truth for the
/// table, kept deliberately independent of the recurrence; capped at three
/// labels per part because the search is exponential in both.
pub fn embeddable_oracle(c: &Coloring, p: &Partition, x: Mask, y: Mask) -> Result<bool> {
    if c.ground() != p.ground() {
        return Err(Error::HostMismatch(c.ground().size(), p.ground().size()));
    }
    if p.x_size() > 3 || p.y_size() > 3 {
        return Err(Error::CapExceeded(format!(
            "exhaustive embeddability needs parts of at most 3 labels, got {}+{}",
            p.x_size(),
            p.y_size()
        )));
    }
    let (xpart, ypart) = (p.x_mask(), p.y_mask());
    if x & !xpart != 0 || y & !ypart != 0 {
        return Err(Error::InvalidParameter(
            "anchor traces must lie inside their parts".into(),
        ));
    }
    // Ascending masks list subsets before supersets, so each member only
    // needs monotonicity checks against already-assigned members.
    let members: Vec<Mask> = submasks(xpart & !x).map(|t| x | t).collect();
    let mut traces = Vec::with_capacity(members.len());
    Ok(assign_traces(c, ypart, y, &members, &mut traces))
}

fn assign_traces(c: &Coloring, ypart: Mask, anchor: Mask, members: &[Mask], traces: &mut Vec<Mask>) -> bool {
    let idx = traces.len();
    if idx == members.len() {
        return true;
    }
    let v = members[idx];
    'candidates: for t in submasks(ypart) {
        if idx == 0 && t & anchor != anchor {
            continue;
        }
        if c.is(v | t, Color::Blue) {
            continue;
        }
        for j in 0..idx {
            if members[j] & v == members[j] && traces[j] & t != traces[j] {
                continue 'candidates;
            }
        }
        traces.push(t);
        if assign_traces(c, ypart, anchor, members, traces) {
            return true;
        }
        traces.pop();
    }
    false
}

/// Replays the recurrence's constructive side.  For each true entry it can
/// produce the embedding of the up-set of that entry's first-part trace that
/// the recurrence promises, memoized so shared sub-witnesses are built once.
struct WitnessBuilder<'a> {
    c: &'a Coloring,
    table: &'a EmbeddabilityTable,
    memo: BTreeMap<(Mask, Mask), BTreeMap<Mask, Mask>>,
}

impl WitnessBuilder<'_> {
    /// Make the witness map for a true entry available in the memo.
    fn ensure(&mut self, x: Mask, y: Mask) -> Result<()> {
        if self.memo.contains_key(&(x, y)) {
            return Ok(());
        }
        assert!(self.table.get(x, y), "witness requested for a dead entry");
        let p = self.table.partition();
        let (xpart, ypart) = (p.x_mask(), p.y_mask());
        let map = if self.c.is(x | y, Color::Blue) {
            // A live blue entry borrows the witness of a live entry one or
            // more labels higher in the second part; pick the smallest such
            // trace, lowest mask first, so the construction is canonical.
            let y2 = strict_supersets_within(y, ypart)
                .filter(|&y2| self.table.get(x, y2))
                .min_by_key(|&y2| (y2.count_ones(), y2))
                .ok_or_else(|| Error::Internal("live blue entry with no live superset".into()))?;
            self.ensure(x, y2)?;
            self.memo[&(x, y2)].clone()
        } else {
            // A live red entry maps each up-set member according to the blue
            // vertices between the anchor and that member: none keeps the
            // anchor's second-part trace, a unique minimal one delegates to
            // that entry's witness, and two or more force the full trace
            // (which must be red, or the blue class would contain a Λ).
            let mut map = BTreeMap::new();
            for t in submasks(xpart & !x) {
                let xp = x | t;
                let blues: Vec<Mask> = submasks(t)
                    .map(|s| x | s)
                    .filter(|&xs| self.c.is(xs | y, Color::Blue))
                    .collect();
                let minimal: Vec<Mask> = blues
                    .iter()
                    .copied()
                    .filter(|&m| !blues.iter().any(|&b| b != m && b & m == b))
                    .collect();
                let image = match minimal.as_slice() {
                    [] => xp | y,
                    [xstar] => {
                        self.ensure(*xstar, y)?;
                        self.memo[&(*xstar, y)][&xp]
                    }
                    _ => xp | ypart,
                };
                map.insert(xp, image);
            }
            map
        };
        self.memo.insert((x, y), map);
        Ok(())
    }
}

fn red_copy_from_table(c: &Coloring, table: &EmbeddabilityTable) -> Result<Option<XGoodCopyCert>> {
    if !table.get(0, 0) {
        return Ok(None);
    }
    let mut builder = WitnessBuilder { c, table, memo: BTreeMap::new() };
    builder.ensure(0, 0)?;
    let cert = XGoodCopyCert {
        partition: table.partition(),
        images: builder.memo[&(0, 0)].clone(),
        color: Some(Color::Red),
    };
    cert.check(Some(c))?;
    Ok(Some(cert))
}

/// A good copy of the cube on the first part with an all-red image, present
/// exactly when the table's bottom entry is alive.  The returned certificate
/// is re-checked against the coloring before it is handed out.
pub fn red_xgood_copy(c: &Coloring, p: &Partition) -> Result<Option<XGoodCopyCert>> {
    let table = embeddable_table(c, p)?;
    red_copy_from_table(c, &table)
}

fn shrub_from_table(c: &Coloring, table: &EmbeddabilityTable) -> Result<ShrubCert> {
    let p = table.partition();
    if table.get(0, 0) {
        return Err(Error::Precondition(
            "the red class carries a good copy, so no blue shrub is promised".into(),
        ));
    }
    let (xpart, ypart) = (p.x_mask(), p.y_mask());
    // From a dead vertex, some vertex weakly above it in the first part is
    // blue and dead: a dead blue vertex is its own stop, and a dead red
    // vertex has a dead strict superset to climb through.  Take the smallest
    // such trace, lowest mask first, so the walk is canonical.
    let climb = |from: Mask, ymask: Mask| -> Result<Mask> {
        submasks(xpart & !from)
            .map(|t| from | t)
            .filter(|&x2| c.is(x2 | ymask, Color::Blue) && !table.get(x2, ymask))
            .min_by_key(|&x2| (x2.count_ones(), x2))
            .ok_or_else(|| Error::Internal("no blue dead vertex above a dead one".into()))
    };
    let tree = factorial_tree(p.ground(), ypart)?;
    let mut anchor_of: BTreeMap<Vec<u8>, Mask> = BTreeMap::new();
    let mut nodes = Vec::with_capacity(tree.len());
    for node in &tree {
        let labels = node.labels().to_vec();
        let anchor = if labels.is_empty() {
            climb(0, 0)?
        } else {
            let parent = anchor_of[&labels[..labels.len() - 1]];
            // The parent vertex is blue and dead, so its level stays dead
            // after adding one more second-part label.
            assert!(!table.get(parent, node.underlying()), "extension revived a dead level");
            climb(parent, node.underlying())?
        };
        anchor_of.insert(labels, anchor);
        nodes.push((node.clone(), anchor | node.underlying()));
    }
    let cert = ShrubCert {
        ground: p.ground(),
        ypart,
        nodes,
        weak: false,
        color: Some(Color::Blue),
    };
    cert.check(Some(c)).map_err(|e| {
        Error::Internal(format!("shrub walk produced an invalid certificate: {e}"))
    })?;
    Ok(cert)
}

/// A blue shrub over the full factorial tree of the second part, extracted by
/// walking the tree and climbing each extension to a blue dead vertex.  With
/// no blue Λ the walk's weak shrub is automatically a full one; the returned
/// certificate is verified as such before it is handed out.  Errors if the
/// table's bottom entry is alive (the promise is the other branch then).
pub fn blue_shrub_extract(c: &Coloring, p: &Partition) -> Result<ShrubCert> {
    let table = embeddable_table(c, p)?;
    shrub_from_table(c, &table)
}

/// The two mutually exclusive outcomes for one split of one coloring.
#[derive(Clone, Debug)]
pub enum DualityOutcome {
    RedBranch(XGoodCopyCert),
    BlueBranch(ShrubCert),
}

/// Decide one split: a red good copy of the cube on the first part, or a
/// blue shrub over the factorial tree of the second part — never both,
/// never neither (given a blue class with no Λ).
pub fn duality(c: &Coloring, p: &Partition) -> Result<DualityOutcome> {
    let table = embeddable_table(c, p)?;
    match red_copy_from_table(c, &table)? {
        Some(cert) => Ok(DualityOutcome::RedBranch(cert)),
        None => Ok(DualityOutcome::BlueBranch(shrub_from_table(c, &table)?)),
    }
}

/// What a whole-lattice scan settles: one red cube embedding, or a blue
/// shrub for every choice of second part.
#[derive(Clone, Debug)]
pub enum ScanOutcome {
    RedCube(EmbeddingMap),
    Shrubs(BTreeMap<Mask, ShrubCert>),
}

/// Run the duality over every k-label second part.  Any red branch yields a
/// red embedding of the n-cube (the lowest second part wins, so reruns are
/// reproducible); otherwise every second part contributes a blue shrub.
/// The splits are independent and are decided in parallel.
pub fn full_duality_scan(c: &Coloring, n: usize, k: usize) -> Result<ScanOutcome> {
    let ground = c.ground();
    if n + k != ground.size() {
        return Err(Error::InvalidParameter(format!(
            "split {n}+{k} does not cover the {}-label ground set",
            ground.size()
        )));
    }
    ensure_no_blue_lambda(c)?;
    let pattern = FinitePoset::cube(n)?;
    let ys: Vec<Mask> = k_subsets(ground.size(), k).collect();
    let outcomes: Vec<(Mask, DualityOutcome)> = ys
        .par_iter()
        .map(|&y| {
            let p = Partition::new(ground, ground.full_mask() & !y, y)?;
            duality(c, &p).map(|o| (y, o))
        })
        .collect::<Result<_>>()?;
    for (y, outcome) in &outcomes {
        if let DualityOutcome::RedBranch(cert) = outcome {
            let xpart = ground.full_mask() & !y;
            let images = (0..pattern.len() as Mask)
                .map(|i| cert.images[&expand(i, xpart)])
                .collect();
            let em = EmbeddingMap { pattern, ground, images };
            em.validate()?;
            return Ok(ScanOutcome::RedCube(em));
        }
    }
    let shrubs = outcomes
        .into_iter()
        .map(|(y, outcome)| match outcome {
            DualityOutcome::BlueBranch(cert) => (y, cert),
            DualityOutcome::RedBranch(_) => unreachable!("red branches were drained above"),
        })
        .collect();
    Ok(ScanOutcome::Shrubs(shrubs))
}
