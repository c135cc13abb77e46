//! Constructive embedding procedures over two-part vertex splits:
//! renormalizing an arbitrary cube embedding into a good one, the
//! label-shifting search whose outcome is a red good cube or a blue chain,
//! chain-avoiding copies, the ordering-pigeonhole extraction of a blue
//! 2-cube, and the sublattice pipeline trading blue independent chains
//! against a red cube.

use std::collections::BTreeMap;

use crate::cert::{BlueChainCert, PatternCopyCert, XGoodCopyCert};
use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::lattice::{
    binomial, compress, expand, sperner_antichain, submasks, GroundSet, Mask, Partition, Subset,
};
use crate::poset::{EmbeddingMap, FinitePoset};

/// Turn any embedding of the subset-indexed n-cube into an X-good one over
/// the same host: each singleton generator gets a representative label from
/// its image that no image of a complement subset contains (lowest such
/// label), and the embedding is reindexed along those representatives.
///
/// Returns the n-element good set together with the reindexed certificate.
pub fn normalize_to_good(em: &EmbeddingMap) -> Result<(Subset, XGoodCopyCert)> {
    em.validate()?;
    let count = em.pattern.len();
    let n = count.trailing_zeros() as usize;
    if count != 1 << n || em.pattern != FinitePoset::cube(n)? {
        return Err(Error::Precondition("pattern must be a cube indexed by subsets".into()));
    }
    if em.ground.size() <= n {
        return Err(Error::Precondition(format!(
            "host has {} labels, need more than the cube dimension {n}",
            em.ground.size()
        )));
    }
    let full = (count - 1) as Mask;
    let mut xmask: Mask = 0;
    let mut rep = vec![0u8; n];
    for (a, slot) in rep.iter_mut().enumerate() {
        // The union of images over subsets avoiding a is, by monotonicity,
        // the image of the full complement of a.
        let have = em.images[1 << a];
        let avoid = em.images[(full ^ (1 << a)) as usize];
        let cand = have & !avoid;
        assert!(cand != 0, "singleton image inside the image of its complement");
        let b = cand.trailing_zeros() as u8;
        *slot = b;
        xmask |= 1 << b;
    }
    assert_eq!(xmask.count_ones() as usize, n, "representatives collide");
    let partition = Partition::from_x(em.ground, xmask)?;
    let mut images = BTreeMap::new();
    for xs in submasks(xmask) {
        let idx: usize = (0..n).filter(|&a| xs >> rep[a] & 1 == 1).map(|a| 1usize << a).sum();
        images.insert(xs, em.images[idx]);
    }
    let cert = XGoodCopyCert { partition, images, color: None };
    cert.check(None)?;
    Ok((em.ground.subset(xmask)?, cert))
}

/// Outcome of [`shift_search`]: a red xPart-good cube or a blue chain with
/// one vertex per prefix level of the ordering.
#[derive(Clone, Debug)]
pub enum ShiftOutcome {
    Red(XGoodCopyCert),
    Chain(BlueChainCert),
}

/// For each X ⊆ xPart, find the least prefix level at or above every
/// proper subset's level at which (X, Y(level)) is red. If every X gets a
/// level, the map X ↦ (X, Y(level)) is a red xPart-good cube; the first X
/// that runs out of levels instead closes a blue chain through all |yPart|+1
/// prefix levels. Exactly one of the two certificates is returned, validated.
pub fn shift_search(c: &Coloring, p: &Partition, ordering: &[u8]) -> Result<ShiftOutcome> {
    if c.ground() != p.ground() {
        return Err(Error::HostMismatch(c.ground().size(), p.ground().size()));
    }
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable();
    if sorted != p.ground().subset(p.y_mask())?.labels() {
        return Err(Error::Precondition("ordering is not a permutation of yPart".into()));
    }
    let xpart = p.x_mask();
    let k = p.y_size();
    let mut prefix = Vec::with_capacity(k + 1);
    prefix.push(0 as Mask);
    for &lab in ordering {
        prefix.push(prefix.last().unwrap() | 1 << lab);
    }

    let size = 1usize << p.x_size();
    // Per subset X (compressed index): its level, the floor inherited from
    // proper subsets, and a back-pointer to the subset realizing the floor —
    // enough to rebuild the blue chain below any failure point.
    let mut label = vec![0u8; size];
    let mut base = vec![0u8; size];
    let mut back = vec![u32::MAX; size];

    for xi in 0..size {
        let x = expand(xi as Mask, xpart);
        let (mut lo, mut from) = (0usize, u32::MAX);
        let mut bits = x;
        while bits != 0 {
            // Drop the highest label first, so candidate subsets arrive in
            // ascending index order and ties keep the lowest.
            let a = 1u32 << (31 - bits.leading_zeros());
            bits ^= a;
            let ui = compress(x ^ a, xpart);
            if from == u32::MAX || (label[ui as usize] as usize) > lo {
                lo = label[ui as usize] as usize;
                from = ui;
            }
        }
        base[xi] = lo as u8;
        back[xi] = from;
        match (lo..=k).find(|&j| c.is(x | prefix[j], Color::Red)) {
            Some(l) => {
                label[xi] = l as u8;
                // levels grow along inclusion
                let mut bits = x;
                while bits != 0 {
                    let a = bits & bits.wrapping_neg();
                    bits ^= a;
                    assert!(
                        label[compress(x ^ a, xpart) as usize] as usize <= l,
                        "levels not monotone along inclusion"
                    );
                }
            }
            None => {
                // Blue from the floor to the top; the stored chain below the
                // floor is rebuilt by walking back-pointers.
                let mut segs = vec![(x, lo, k + 1)];
                let mut cur = from;
                while cur != u32::MAX {
                    let ci = cur as usize;
                    segs.push((expand(cur, xpart), base[ci] as usize, label[ci] as usize));
                    cur = back[ci];
                }
                let mut vertices = Vec::with_capacity(k + 1);
                for &(xm, s, e) in segs.iter().rev() {
                    vertices.extend(prefix[s..e].iter().map(|&pm| xm | pm));
                }
                let cert =
                    BlueChainCert { partition: *p, ordering: ordering.to_vec(), vertices };
                cert.check(Some(c))?;
                return Ok(ShiftOutcome::Chain(cert));
            }
        }
    }
    let images: BTreeMap<Mask, Mask> = (0..size)
        .map(|xi| {
            let x = expand(xi as Mask, xpart);
            (x, x | prefix[label[xi] as usize])
        })
        .collect();
    let cert = XGoodCopyCert { partition: *p, images, color: Some(Color::Red) };
    cert.check(Some(c))?;
    Ok(ShiftOutcome::Red(cert))
}

/// An xPart-good copy of the cube over xPart avoiding every listed vertex,
/// found by running [`shift_search`] on the derived coloring that paints the
/// avoided set blue. Absent exactly when the avoided set itself holds a
/// chain of |yPart| + 1 vertices.
pub fn avoid_subposet(p: &Partition, bad: &[Subset]) -> Result<Option<XGoodCopyCert>> {
    let ground = p.ground();
    for s in bad {
        if s.ground() != ground {
            return Err(Error::HostMismatch(s.ground().size(), ground.size()));
        }
    }
    let derived = Coloring::from_blue_masks(ground, bad.iter().map(|s| s.bits()))?;
    let ylabels = ground.subset(p.y_mask())?.labels();
    match shift_search(&derived, p, &ylabels)? {
        ShiftOutcome::Red(mut cert) => {
            // The guarantee is avoidance, not a color of the caller's.
            cert.color = None;
            Ok(Some(cert))
        }
        ShiftOutcome::Chain(_) => Ok(None),
    }
}

/// Outcome of [`grosz_q2_witness`]: a red xPart-good cube from some
/// ordering, or a blue 2-cube braided out of two colliding blue chains.
#[derive(Clone, Debug)]
pub enum GroszOutcome {
    Red(XGoodCopyCert),
    BlueSquare(PatternCopyCert),
}

/// Sweep the orderings of yPart lexicographically; each [`shift_search`]
/// either produces a red certificate (returned at once) or a blue chain
/// filed under its endpoint pair (X_0, X_k). Once two chains share
/// endpoints, their vertices at the first level with differing prefix sets
/// are incomparable, and together with the shared bottom and top they form
/// a blue 2-cube. Requires more orderings than endpoint pairs, so one of
/// the two outcomes is forced.
pub fn grosz_q2_witness(c: &Coloring, p: &Partition) -> Result<GroszOutcome> {
    if c.ground() != p.ground() {
        return Err(Error::HostMismatch(c.ground().size(), p.ground().size()));
    }
    let (n, k) = (p.x_size(), p.y_size());
    if k > 8 {
        return Err(Error::Precondition(format!("yPart size {k} over the orderings cap 8")));
    }
    let orderings: u64 = (1..=k as u64).product();
    if orderings <= 1u64 << (2 * n) {
        return Err(Error::Precondition(format!(
            "need k! > 4^|xPart| for the endpoint pigeonhole (k = {k}, |xPart| = {n})"
        )));
    }
    let nsize = c.ground().size();
    let mut ord = c.ground().subset(p.y_mask())?.labels();
    let mut seen: BTreeMap<u64, Vec<Mask>> = BTreeMap::new();
    loop {
        match shift_search(c, p, &ord)? {
            ShiftOutcome::Red(cert) => return Ok(GroszOutcome::Red(cert)),
            ShiftOutcome::Chain(chain) => {
                let x0 = chain.vertices[0] & p.x_mask();
                let xk = chain.vertices[k] & p.x_mask();
                let key = (x0 as u64) << nsize | xk as u64;
                if let Some(first) = seen.get(&key) {
                    return Ok(GroszOutcome::BlueSquare(braid_square(
                        c,
                        first,
                        &chain.vertices,
                        p.y_mask(),
                    )?));
                }
                seen.insert(key, chain.vertices.clone());
            }
        }
        if !next_permutation(&mut ord) {
            return Err(Error::Internal(
                "ordering sweep ended without a red certificate or an endpoint collision".into(),
            ));
        }
    }
}

/// Two blue chains with equal bottoms and tops but different prefix sets at
/// some level: their vertices at the first such level flank a blue 2-cube.
fn braid_square(
    c: &Coloring,
    v1: &[Mask],
    v2: &[Mask],
    ypart: Mask,
) -> Result<PatternCopyCert> {
    let k = v1.len() - 1;
    let level = (1..k).find(|&i| v1[i] & ypart != v2[i] & ypart).ok_or_else(|| {
        Error::Internal("colliding chains share every prefix set".into())
    })?;
    let cert = PatternCopyCert {
        ground: c.ground(),
        pattern: FinitePoset::cube(2)?,
        images: vec![v1[0], v1[level], v2[level], v1[k]],
        color: Color::Blue,
    };
    cert.check(Some(c))?;
    Ok(cert)
}

/// Advance to the next permutation in lexicographic order; false at the last.
fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Outcome of [`chains_vs_cube`]: k independent blue l-vertex chains, or a
/// red n-cube from a sublattice missing its blue chain.
#[derive(Clone, Debug)]
pub enum ChainsVsCubeOutcome {
    BlueChains(PatternCopyCert),
    RedCube(PatternCopyCert),
}

/// Split the ground set into a low block of n + l labels and a block
/// carrying a k-member middle-layer antichain. Beside each antichain
/// member, search the translated sublattice for a blue l-vertex chain; a
/// miss yields a red n-cube there via the avoidance argument, while k hits
/// assemble into independent blue chains (members of distinct sublattices
/// are incomparable because their antichain traces are).
pub fn chains_vs_cube(
    c: &Coloring,
    n: usize,
    k: usize,
    l: usize,
) -> Result<ChainsVsCubeOutcome> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidParameter(
            "need at least one chain of at least one vertex".into(),
        ));
    }
    let cube_pattern = FinitePoset::cube(n)?;
    // smallest even block whose middle binomial covers k
    let mut kk = 0usize;
    while binomial(kk as u64, (kk / 2) as u64) < k as u64 {
        kk += 2;
    }
    let need = n + l + kk;
    if c.ground().size() < need {
        return Err(Error::InvalidParameter(format!(
            "ground set has {} labels, the split needs {need}",
            c.ground().size()
        )));
    }
    let sub = GroundSet::new(n + l)?;
    let yblocks: Vec<Mask> =
        sperner_antichain(kk, k)?.into_iter().map(|m| m << (n + l)).collect();
    let mut found: Vec<Vec<Mask>> = Vec::with_capacity(k);
    for &yb in &yblocks {
        let derived = Coloring::from_blue_masks(
            sub,
            (0..sub.vertex_count() as Mask).filter(|&w| c.is(w | yb, Color::Blue)),
        )?;
        match longest_blue_chain(&derived, l) {
            Some(chain) => found.push(chain.into_iter().map(|w| w | yb).collect()),
            None => {
                // No blue l-chain beside this antichain member: dodge the
                // blue set with the spare l labels of the low block.
                let part = Partition::from_x(sub, (1u32 << n) - 1)?;
                let ylabels = sub.subset(part.y_mask())?.labels();
                return match shift_search(&derived, &part, &ylabels)? {
                    ShiftOutcome::Red(xg) => {
                        let images: Vec<Mask> =
                            (0..1u32 << n).map(|a| xg.images[&a] | yb).collect();
                        let cert = PatternCopyCert {
                            ground: c.ground(),
                            pattern: cube_pattern,
                            images,
                            color: Color::Red,
                        };
                        cert.check(Some(c))?;
                        Ok(ChainsVsCubeOutcome::RedCube(cert))
                    }
                    ShiftOutcome::Chain(_) => Err(Error::Internal(
                        "blue chain outgrew the sublattice search".into(),
                    )),
                };
            }
        }
    }
    let pattern = FinitePoset::independent_chains(k, l)?;
    let images: Vec<Mask> = found.into_iter().flatten().collect();
    let cert = PatternCopyCert { ground: c.ground(), pattern, images, color: Color::Blue };
    cert.check(Some(c))?;
    Ok(ChainsVsCubeOutcome::BlueChains(cert))
}

/// Find `want` pairwise-nested blue vertices by a longest-chain table over
/// the lattice, or report that none exist. Lowest vertex indices win ties,
/// and the first vertex closing a long-enough chain ends the scan.
fn longest_blue_chain(c: &Coloring, want: usize) -> Option<Vec<Mask>> {
    let size = c.ground().vertex_count();
    // end[w]: longest blue chain topping out at w; best[w]: longest in the
    // down-set of w, attained at att[w]; pred links rebuild the chain.
    let mut end = vec![0u8; size];
    let mut best = vec![0u8; size];
    let mut att = vec![u32::MAX; size];
    let mut pred = vec![u32::MAX; size];
    for w in 0..size {
        let wm = w as Mask;
        let (mut b, mut bat) = (0u8, u32::MAX);
        let mut bits = wm;
        while bits != 0 {
            let a = 1u32 << (31 - bits.leading_zeros());
            bits ^= a;
            let u = (wm ^ a) as usize;
            if best[u] > b {
                b = best[u];
                bat = att[u];
            }
        }
        if c.is(wm, Color::Blue) {
            end[w] = b + 1;
            pred[w] = bat;
            if end[w] as usize >= want {
                let mut verts = Vec::with_capacity(want);
                let mut cur = w as u32;
                for _ in 0..want {
                    verts.push(cur as Mask);
                    cur = pred[cur as usize];
                }
                verts.reverse();
                return Some(verts);
            }
        }
        if end[w] > b {
            best[w] = end[w];
            att[w] = w as u32;
        } else {
            best[w] = b;
            att[w] = bat;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coloring_from_code(g: GroundSet, code: u32) -> Coloring {
        Coloring::from_blue_masks(
            g,
            (0..g.vertex_count() as Mask).filter(|&v| code >> v & 1 == 1),
        )
        .unwrap()
    }

    #[test]
    fn normalize_keeps_good_embeddings() {
        let g = GroundSet::new(4).unwrap();
        let q2 = FinitePoset::cube(2).unwrap();
        // identity on labels {0,1}
        let em = EmbeddingMap { pattern: q2.clone(), ground: g, images: (0..4).collect() };
        let (xs, cert) = normalize_to_good(&em).unwrap();
        assert_eq!(xs.bits(), 0b0011);
        assert_eq!(cert.images.values().copied().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        // constant shift by a fresh label
        let em = EmbeddingMap { pattern: q2, ground: g, images: (0..4).map(|a| a | 0b1000).collect() };
        let (xs, cert) = normalize_to_good(&em).unwrap();
        assert_eq!(xs.bits(), 0b0011);
        cert.check(None).unwrap();
        assert_eq!(cert.images[&0b01], 0b1001);
    }

    #[test]
    fn normalize_relocates_representatives() {
        let g = GroundSet::new(2).unwrap();
        let q1 = FinitePoset::cube(1).unwrap();
        // φ(∅) = ∅, φ({0}) = {1}: the good set is {1}, not {0}
        let em = EmbeddingMap { pattern: q1, ground: g, images: vec![0b00, 0b10] };
        let (xs, cert) = normalize_to_good(&em).unwrap();
        assert_eq!(xs.bits(), 0b10);
        cert.check(None).unwrap();
        assert_eq!(cert.images[&0b10], 0b10);
    }

    #[test]
    fn normalize_picks_lowest_label() {
        let g = GroundSet::new(3).unwrap();
        let q1 = FinitePoset::cube(1).unwrap();
        // φ({0}) ∖ φ(∅) = {1,2}: representative is 1
        let em = EmbeddingMap { pattern: q1, ground: g, images: vec![0b000, 0b110] };
        let (xs, _) = normalize_to_good(&em).unwrap();
        assert_eq!(xs.bits(), 0b010);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        let g = GroundSet::new(3).unwrap();
        let q1 = FinitePoset::cube(1).unwrap();
        // two equal images
        let em = EmbeddingMap { pattern: q1.clone(), ground: g, images: vec![1, 1] };
        assert!(normalize_to_good(&em).is_err());
        // wrong element count for a cube
        let em = EmbeddingMap {
            pattern: FinitePoset::lambda(),
            ground: g,
            images: vec![0b001, 0b010, 0b011],
        };
        assert!(matches!(normalize_to_good(&em), Err(Error::Precondition(_))));
        // right count, wrong order: a 4-chain is not the 2-cube
        let em = EmbeddingMap {
            pattern: FinitePoset::chain(4).unwrap(),
            ground: g,
            images: vec![0b000, 0b001, 0b011, 0b111],
        };
        assert!(matches!(normalize_to_good(&em), Err(Error::Precondition(_))));
        // host no larger than the dimension
        let g1 = GroundSet::new(1).unwrap();
        let em = EmbeddingMap { pattern: q1, ground: g1, images: vec![0, 1] };
        assert!(matches!(normalize_to_good(&em), Err(Error::Precondition(_))));
    }

    #[test]
    fn shift_on_constant_colorings() {
        let g = GroundSet::new(3).unwrap();
        let p = Partition::from_x(g, 0b011).unwrap();
        let red = Coloring::constant(g, Color::Red);
        match shift_search(&red, &p, &[2]).unwrap() {
            ShiftOutcome::Red(cert) => {
                // every level lands at 0: the copy is the identity
                for (x, v) in &cert.images {
                    assert_eq!(v, x);
                }
            }
            ShiftOutcome::Chain(_) => panic!("all-red must yield the red certificate"),
        }
        let blue = Coloring::constant(g, Color::Blue);
        match shift_search(&blue, &p, &[2]).unwrap() {
            ShiftOutcome::Chain(cert) => assert_eq!(cert.vertices, vec![0b000, 0b100]),
            ShiftOutcome::Red(_) => panic!("all-blue must yield the chain"),
        }
    }

    /// Exhaustive over Q_3: every coloring, three splits, both orderings of
    /// a two-label yPart — always exactly one certificate, always valid.
    #[test]
    fn shift_total_on_q3() {
        let g = GroundSet::new(3).unwrap();
        let cases: Vec<(Mask, Vec<Vec<u8>>)> = vec![
            (0b011, vec![vec![2]]),
            (0b101, vec![vec![1]]),
            (0b001, vec![vec![1, 2], vec![2, 1]]),
        ];
        for code in 0..256u32 {
            let c = coloring_from_code(g, code);
            for (xm, ords) in &cases {
                let p = Partition::from_x(g, *xm).unwrap();
                for ord in ords {
                    match shift_search(&c, &p, ord).unwrap() {
                        ShiftOutcome::Red(cert) => cert.check(Some(&c)).unwrap(),
                        ShiftOutcome::Chain(cert) => cert.check(Some(&c)).unwrap(),
                    }
                }
            }
        }
    }

    #[test]
    fn shift_rejects_bad_orderings() {
        let g = GroundSet::new(3).unwrap();
        let p = Partition::from_x(g, 0b001).unwrap();
        let c = Coloring::constant(g, Color::Red);
        assert!(shift_search(&c, &p, &[1, 1]).is_err());
        assert!(shift_search(&c, &p, &[1]).is_err());
        assert!(shift_search(&c, &p, &[0, 1]).is_err());
    }

    #[test]
    fn avoid_examples() {
        let g = GroundSet::new(3).unwrap();
        let p = Partition::from_x(g, 0b011).unwrap();
        // nothing to avoid: identity copy
        let cert = avoid_subposet(&p, &[]).unwrap().unwrap();
        for (x, v) in &cert.images {
            assert_eq!(v, x);
        }
        // a 3-element antichain is dodged with one spare label
        let bad: Vec<Subset> =
            [0b001, 0b010, 0b100].iter().map(|&m| g.subset(m).unwrap()).collect();
        let cert = avoid_subposet(&p, &bad).unwrap().unwrap();
        cert.check(None).unwrap();
        for v in cert.images.values() {
            assert!(!bad.iter().any(|s| s.bits() == *v));
        }
        // a chain filling every prefix level cannot be dodged
        let g2 = GroundSet::new(2).unwrap();
        let p2 = Partition::from_x(g2, 0b01).unwrap();
        let chain: Vec<Subset> =
            [0b00, 0b10, 0b11].iter().map(|&m| g2.subset(m).unwrap()).collect();
        assert!(avoid_subposet(&p2, &chain).unwrap().is_none());
    }

    #[test]
    fn grosz_on_constant_colorings() {
        let g = GroundSet::new(4).unwrap();
        let p = Partition::from_x(g, 0b0001).unwrap(); // |X| = 1, k = 3
        let blue = Coloring::constant(g, Color::Blue);
        match grosz_q2_witness(&blue, &p).unwrap() {
            GroszOutcome::BlueSquare(cert) => cert.check(Some(&blue)).unwrap(),
            GroszOutcome::Red(_) => panic!("all-blue must produce the blue square"),
        }
        let red = Coloring::constant(g, Color::Red);
        assert!(matches!(grosz_q2_witness(&red, &p).unwrap(), GroszOutcome::Red(_)));
    }

    #[test]
    fn grosz_rejects_weak_parameters() {
        let g = GroundSet::new(3).unwrap();
        let c = Coloring::constant(g, Color::Blue);
        // k! = 2 does not beat 4^1
        let p = Partition::from_x(g, 0b001).unwrap();
        assert!(matches!(grosz_q2_witness(&c, &p), Err(Error::Precondition(_))));
        // orderings cap
        let g10 = GroundSet::new(10).unwrap();
        let c10 = Coloring::constant(g10, Color::Blue);
        let p10 = Partition::from_x(g10, 0b1).unwrap();
        assert!(matches!(grosz_q2_witness(&c10, &p10), Err(Error::Precondition(_))));
    }

    #[test]
    fn grosz_finds_square_when_no_red_copy_exists() {
        let g = GroundSet::new(4).unwrap();
        let p = Partition::from_x(g, 0b0001).unwrap();
        // only the empty set is red, so no good copy has a red image of {0}
        let c = coloring_from_code(g, !1);
        match grosz_q2_witness(&c, &p).unwrap() {
            GroszOutcome::BlueSquare(cert) => {
                cert.check(Some(&c)).unwrap();
                assert_eq!(cert.pattern, FinitePoset::cube(2).unwrap());
            }
            GroszOutcome::Red(_) => panic!("no red copy exists"),
        }
    }

    #[test]
    fn chains_vs_cube_constant_colorings() {
        let g = GroundSet::new(5).unwrap();
        let blue = Coloring::constant(g, Color::Blue);
        match chains_vs_cube(&blue, 1, 2, 2).unwrap() {
            ChainsVsCubeOutcome::BlueChains(cert) => {
                assert_eq!(cert.pattern, FinitePoset::independent_chains(2, 2).unwrap());
                cert.check(Some(&blue)).unwrap();
            }
            ChainsVsCubeOutcome::RedCube(_) => panic!("all-blue must give the chains"),
        }
        let red = Coloring::constant(g, Color::Red);
        match chains_vs_cube(&red, 1, 2, 2).unwrap() {
            ChainsVsCubeOutcome::RedCube(cert) => {
                assert_eq!(cert.pattern, FinitePoset::cube(1).unwrap());
                cert.check(Some(&red)).unwrap();
            }
            ChainsVsCubeOutcome::BlueChains(_) => panic!("all-red must give the cube"),
        }
    }

    #[test]
    fn chains_vs_cube_rejects_bad_parameters() {
        let g = GroundSet::new(4).unwrap();
        let c = Coloring::constant(g, Color::Red);
        assert!(chains_vs_cube(&c, 1, 2, 2).is_err()); // needs 5 labels
        assert!(chains_vs_cube(&c, 1, 0, 2).is_err());
        assert!(chains_vs_cube(&c, 1, 2, 0).is_err());
    }

    /// Seeded random colorings: the pipeline always lands on a validating
    /// branch. The wider sweep lives in the acceptance suite.
    #[test]
    fn chains_vs_cube_random_sweep() {
        let g = GroundSet::new(6).unwrap();
        for seed in 0..300 {
            let c = Coloring::random(g, seed, 0.5);
            match chains_vs_cube(&c, 1, 2, 1).unwrap() {
                ChainsVsCubeOutcome::BlueChains(cert) => cert.check(Some(&c)).unwrap(),
                ChainsVsCubeOutcome::RedCube(cert) => cert.check(Some(&c)).unwrap(),
            }
        }
    }

    proptest! {
        /// Totality on Q_4: every coloring code and every split yields a
        /// certificate that re-validates.
        #[test]
        fn shift_is_total_on_q4(code in any::<u16>(), xm in 0u32..16) {
            let g = GroundSet::new(4).unwrap();
            let c = coloring_from_code(g, code as u32);
            let p = Partition::from_x(g, xm).unwrap();
            let ord = g.subset(p.y_mask()).unwrap().labels();
            match shift_search(&c, &p, &ord).unwrap() {
                ShiftOutcome::Red(cert) => cert.check(Some(&c)).unwrap(),
                ShiftOutcome::Chain(cert) => cert.check(Some(&c)).unwrap(),
            }
        }
    }
}
