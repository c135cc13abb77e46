//! Ground sets, subsets as bitmasks, partitions, and split vertices.
//!
//! A subset of the ground set {0, .., N-1} is a `u32` with bit i set iff
//! element i is present. The bitmask doubles as the subset's vertex index in
//! the lattice Q_N, so per-vertex tables are flat arrays of length 2^N and
//! inclusion tests are single AND instructions.

use crate::error::{Error, Result};

/// Raw bitmask form of a subset. Bit i <=> element i.
pub type Mask = u32;

/// Largest supported ground set; 2^24 vertex tables still fit in memory.
pub const MAX_GROUND: usize = 24;

/// How two lattice vertices relate under inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Compare two subsets of the same ground set by inclusion.
pub fn compare_masks(a: Mask, b: Mask) -> Relation {
    if a == b {
        Relation::Equal
    } else if a & b == a {
        Relation::Less
    } else if a & b == b {
        Relation::Greater
    } else {
        Relation::Incomparable
    }
}

/// A labelled ground set {0, .., n-1}, 1 <= n <= 24.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u8,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize(n));
        }
        Ok(GroundSet { n: n as u8 })
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    /// Mask with all n element bits set.
    pub fn full_mask(&self) -> Mask {
        (1u32 << self.n) - 1
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.n
    }

    pub fn contains_mask(&self, bits: Mask) -> bool {
        bits & !self.full_mask() == 0
    }

    pub fn subset(&self, bits: Mask) -> Result<Subset> {
        if !self.contains_mask(bits) {
            return Err(Error::BadSubset { bits, n: self.size() });
        }
        Ok(Subset { bits, ground: *self })
    }

    pub fn empty(&self) -> Subset {
        Subset { bits: 0, ground: *self }
    }

    pub fn full(&self) -> Subset {
        Subset { bits: self.full_mask(), ground: *self }
    }

    /// All subsets in vertex-index order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        let g = *self;
        (0..self.vertex_count() as u32).map(move |bits| Subset { bits, ground: g })
    }
}

/// A subset of a specific ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: Mask,
    ground: GroundSet,
}

impl Subset {
    pub fn bits(&self) -> Mask {
        self.bits
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Element labels in ascending order.
    pub fn labels(&self) -> Vec<u8> {
        (0..self.ground.n).filter(|i| self.bits >> i & 1 == 1).collect()
    }

    pub fn compare(&self, other: &Subset) -> Result<Relation> {
        if self.ground != other.ground {
            return Err(Error::HostMismatch(self.ground.size(), other.ground.size()));
        }
        Ok(compare_masks(self.bits, other.bits))
    }
}

impl std::fmt::Display for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// An ordered two-part partition (X, Y) of a ground set. Either part may be
/// empty; together they must cover the ground set exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Partition {
    ground: GroundSet,
    x: Mask,
    y: Mask,
}

impl Partition {
    pub fn new(ground: GroundSet, x: Mask, y: Mask) -> Result<Self> {
        if x & y != 0 || x | y != ground.full_mask() {
            return Err(Error::BadPartition { x, y, n: ground.size() });
        }
        Ok(Partition { ground, x, y })
    }

    /// Partition with the given X part; Y is its complement.
    pub fn from_x(ground: GroundSet, x: Mask) -> Result<Self> {
        if !ground.contains_mask(x) {
            return Err(Error::BadSubset { bits: x, n: ground.size() });
        }
        Ok(Partition { ground, x, y: ground.full_mask() & !x })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn x_mask(&self) -> Mask {
        self.x
    }

    pub fn y_mask(&self) -> Mask {
        self.y
    }

    pub fn x_size(&self) -> usize {
        self.x.count_ones() as usize
    }

    pub fn y_size(&self) -> usize {
        self.y.count_ones() as usize
    }

    /// Split a vertex into its X- and Y-side traces.
    pub fn decompose(&self, v: Mask) -> SplitVertex {
        SplitVertex { x: v & self.x, y: v & self.y }
    }

    /// Rebuild a vertex from per-part traces. Errors if either trace leaves
    /// its part.
    pub fn compose(&self, sv: SplitVertex) -> Result<Mask> {
        if sv.x & !self.x != 0 || sv.y & !self.y != 0 {
            return Err(Error::InvalidParameter(format!(
                "split vertex ({:#x},{:#x}) not within partition ({:#x},{:#x})",
                sv.x, sv.y, self.x, self.y
            )));
        }
        Ok(sv.x | sv.y)
    }
}

/// A vertex viewed through a partition: the pair (v ∩ X, v ∩ Y).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitVertex {
    pub x: Mask,
    pub y: Mask,
}

impl SplitVertex {
    /// Containment law: (X1,Y1) ⊆ (X2,Y2) iff X1 ⊆ X2 and Y1 ⊆ Y2.
    pub fn le(&self, other: &SplitVertex) -> bool {
        self.x & other.x == self.x && self.y & other.y == self.y
    }
}

/// Exact binomial coefficient; callers stay far below overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Scatter the low bits of `idx` into the set positions of `mask`
/// (software PDEP): bit j of idx lands on the j-th lowest set bit of mask.
pub fn expand(idx: Mask, mask: Mask) -> Mask {
    let mut out = 0;
    let mut m = mask;
    let mut i = idx;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if i & 1 == 1 {
            out |= low;
        }
        i >>= 1;
        m ^= low;
    }
    out
}

/// Gather the bits of `bits` at the set positions of `mask` into the low
/// bits of the result (software PEXT). Inverse of [`expand`] on submasks.
pub fn compress(bits: Mask, mask: Mask) -> Mask {
    let mut out = 0;
    let mut m = mask;
    let mut j = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if bits & low != 0 {
            out |= 1 << j;
        }
        j += 1;
        m ^= low;
    }
    out
}

/// All submasks of `mask`, ascending numerically (so ∅ first, mask last).
pub fn submasks(mask: Mask) -> Submasks {
    Submasks { mask, cur: 0, done: false }
}

pub struct Submasks {
    mask: Mask,
    cur: Mask,
    done: bool,
}

impl Iterator for Submasks {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let v = self.cur;
        if v == self.mask {
            self.done = true;
        } else {
            // Next submask in ascending order: propagate a carry through the
            // cleared positions of `mask`.
            self.cur = self.cur.wrapping_sub(self.mask) & self.mask;
        }
        Some(v)
    }
}

/// All k-element subsets of {0..n-1} as masks, ascending numerically —
/// which for fixed popcount is exactly colexicographic order.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    let first = if k == 0 { 0 } else { (1u32 << k) - 1 };
    KSubsets { n, cur: (k <= n).then_some(first) }
}

pub struct KSubsets {
    n: usize,
    cur: Option<Mask>,
}

impl Iterator for KSubsets {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        let v = self.cur?;
        if v == 0 {
            self.cur = None; // only the empty set has popcount 0
            return Some(0);
        }
        // Gosper's hack: next mask with the same popcount.
        let c = v & v.wrapping_neg();
        let r = v + c;
        let next = (((r ^ v) >> 2) / c) | r;
        self.cur = if next < (1u32 << self.n) { Some(next) } else { None };
        Some(v)
    }
}

/// First `m` of the ⌊q/2⌋-element subsets of {0..q-1} in colexicographic
/// order — a Sperner antichain of m pairwise-incomparable masks.
/// Errors when m exceeds the number of such subsets.
pub fn sperner_antichain(q: usize, m: usize) -> Result<Vec<Mask>> {
    let avail = binomial(q as u64, (q / 2) as u64);
    if (m as u64) > avail {
        return Err(Error::InvalidParameter(format!(
            "requested {m} antichain members but C({q},{}) = {avail}",
            q / 2
        )));
    }
    Ok(k_subsets(q, q / 2).take(m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_set_caps() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(25).is_err());
        assert_eq!(GroundSet::new(24).unwrap().full_mask(), 0xff_ffff);
    }

    /// Inclusion comparison is a partial order: checked exhaustively on Q_4.
    #[test]
    fn compare_is_partial_order_on_q4() {
        let verts: Vec<Mask> = (0..16).collect();
        for &a in &verts {
            assert_eq!(compare_masks(a, a), Relation::Equal);
            for &b in &verts {
                let ab = compare_masks(a, b);
                let ba = compare_masks(b, a);
                // Antisymmetry, and Less/Greater are mirror images.
                match ab {
                    Relation::Less => assert_eq!(ba, Relation::Greater),
                    Relation::Greater => assert_eq!(ba, Relation::Less),
                    Relation::Equal => assert_eq!(a, b),
                    Relation::Incomparable => assert_eq!(ba, Relation::Incomparable),
                }
                for &c in &verts {
                    // Transitivity of <=.
                    let le = |r| matches!(r, Relation::Less | Relation::Equal);
                    if le(compare_masks(a, b)) && le(compare_masks(b, c)) {
                        assert!(le(compare_masks(a, c)), "{a:#x} {b:#x} {c:#x}");
                    }
                }
            }
        }
    }

    /// compose(decompose(v)) = v for every vertex and every partition of [4].
    #[test]
    fn decompose_compose_roundtrip_q4() {
        let g = GroundSet::new(4).unwrap();
        for x in 0..16u32 {
            let p = Partition::from_x(g, x).unwrap();
            for v in 0..16u32 {
                let sv = p.decompose(v);
                assert_eq!(sv.x & sv.y, 0);
                assert_eq!(p.compose(sv).unwrap(), v);
            }
        }
    }

    #[test]
    fn split_vertex_containment_law() {
        let g = GroundSet::new(4).unwrap();
        let p = Partition::from_x(g, 0b0011).unwrap();
        for v in 0..16u32 {
            for w in 0..16u32 {
                let sv = p.decompose(v);
                let sw = p.decompose(w);
                assert_eq!(sv.le(&sw), v & w == v);
            }
        }
    }

    #[test]
    fn expand_compress_roundtrip() {
        let mask = 0b1011_0100u32;
        let k = mask.count_ones();
        for idx in 0..(1u32 << k) {
            let bits = expand(idx, mask);
            assert_eq!(bits & !mask, 0);
            assert_eq!(compress(bits, mask), idx);
        }
    }

    #[test]
    fn submask_iteration_is_ascending_and_complete() {
        let mask = 0b10110u32;
        let subs: Vec<Mask> = submasks(mask).collect();
        assert_eq!(subs.len(), 1 << mask.count_ones());
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|s| s & !mask == 0));
    }

    #[test]
    fn k_subsets_colex() {
        let twos: Vec<Mask> = k_subsets(4, 2).collect();
        assert_eq!(twos, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(k_subsets(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 3).collect::<Vec<_>>(), vec![0b111]);
    }

    #[test]
    fn sperner_antichain_examples() {
        // Both 1-subsets of a 2-set.
        assert_eq!(sperner_antichain(2, 2).unwrap(), vec![0b01, 0b10]);
        // All six 2-subsets of [4], colex.
        assert_eq!(
            sperner_antichain(4, 6).unwrap(),
            vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]
        );
        // Degenerate ground: the single empty subset.
        assert_eq!(sperner_antichain(0, 1).unwrap(), vec![0]);
        assert!(sperner_antichain(4, 7).is_err());
        // Pairwise incomparable.
        let a = sperner_antichain(6, 20).unwrap();
        for (i, &s) in a.iter().enumerate() {
            for &t in &a[i + 1..] {
                assert_eq!(compare_masks(s, t), Relation::Incomparable);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(12, 2), 66);
        assert_eq!(binomial(5, 9), 0);
    }

    #[test]
    fn host_mismatch_detected() {
        let g3 = GroundSet::new(3).unwrap();
        let g4 = GroundSet::new(4).unwrap();
        let a = g3.subset(0b101).unwrap();
        let b = g4.subset(0b101).unwrap();
        assert!(matches!(a.compare(&b), Err(Error::HostMismatch(3, 4))));
    }
}
