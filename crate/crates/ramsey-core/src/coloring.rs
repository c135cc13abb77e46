//! Blue/red colorings of a subset lattice, with a stable text format.
//!
//! A coloring stores one bit per vertex (1 = blue) in a flat bitset indexed
//! by the vertex mask, so Q_24 still fits in 2 MB. Colorings are immutable
//! once shared; `set` hands back an updated copy, and the in-place `paint`
//! is for single-owner construction loops.

use crate::error::{Error, Result};
use crate::lattice::{GroundSet, Mask};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

/// 2-coloring of all 2^N vertices of Q_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    ground: GroundSet,
    words: Vec<u64>, // bit v = 1 iff vertex v is blue
}

impl Coloring {
    pub fn constant(ground: GroundSet, color: Color) -> Coloring {
        let words = ground.vertex_count().div_ceil(64);
        let fill = match color {
            Color::Blue => !0u64,
            Color::Red => 0,
        };
        let mut c = Coloring { ground, words: vec![fill; words] };
        c.mask_tail();
        c
    }

    /// Coloring with exactly the given vertices blue.
    pub fn from_blue_masks<I: IntoIterator<Item = Mask>>(
        ground: GroundSet,
        blue: I,
    ) -> Result<Coloring> {
        let mut c = Coloring::constant(ground, Color::Red);
        for v in blue {
            if !ground.contains_mask(v) {
                return Err(Error::BadSubset { bits: v, n: ground.size() });
            }
            c.paint(v, Color::Blue);
        }
        Ok(c)
    }

    /// Independent Bernoulli(p) blue per vertex, in vertex-index order, from
    /// a fixed-stream generator — identical output for identical inputs.
    pub fn random(ground: GroundSet, seed: u64, p: f64) -> Coloring {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = Coloring::constant(ground, Color::Red);
        for v in 0..ground.vertex_count() as Mask {
            if rng.random_bool(p) {
                c.paint(v, Color::Blue);
            }
        }
        c
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn get(&self, v: Mask) -> Color {
        debug_assert!(self.ground.contains_mask(v));
        if self.words[v as usize >> 6] >> (v & 63) & 1 == 1 {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn is(&self, v: Mask, color: Color) -> bool {
        self.get(v) == color
    }

    /// Updated copy with one vertex recolored (value semantics).
    pub fn set(&self, v: Mask, color: Color) -> Coloring {
        let mut c = self.clone();
        c.paint(v, color);
        c
    }

    /// In-place recolor; for construction loops that own the value.
    pub fn paint(&mut self, v: Mask, color: Color) {
        let (w, b) = (v as usize >> 6, v & 63);
        match color {
            Color::Blue => self.words[w] |= 1u64 << b,
            Color::Red => self.words[w] &= !(1u64 << b),
        }
    }

    pub fn count(&self, color: Color) -> usize {
        let blue: u32 = self.words.iter().map(|w| w.count_ones()).sum();
        match color {
            Color::Blue => blue as usize,
            Color::Red => self.ground.vertex_count() - blue as usize,
        }
    }

    /// Vertices of one color, ascending.
    pub fn class(&self, color: Color) -> Vec<Mask> {
        (0..self.ground.vertex_count() as Mask).filter(|&v| self.is(v, color)).collect()
    }

    fn mask_tail(&mut self) {
        let n = self.ground.vertex_count();
        if !n.is_multiple_of(64) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (n % 64)) - 1;
            }
        }
    }

    /// Serialize: header line `PRC1 N=<n>`, then one line of ⌈2^N/4⌉ hex
    /// digits, vertex 0 first and most significant within each digit.
    pub fn to_prc1(&self) -> String {
        let n = self.ground.vertex_count();
        let mut payload = String::with_capacity(n.div_ceil(4));
        for d in 0..n.div_ceil(4) {
            let mut digit = 0u32;
            for b in 0..4 {
                let v = (d * 4 + b) as Mask;
                let bit = if (v as usize) < n && self.is(v, Color::Blue) { 1 } else { 0 };
                digit = digit << 1 | bit;
            }
            payload.push(char::from_digit(digit, 16).unwrap().to_ascii_uppercase());
        }
        format!("PRC1 N={}\n{}\n", self.ground.size(), payload)
    }

    pub fn from_prc1(text: &str) -> Result<Coloring> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
        let n = header
            .strip_prefix("PRC1 N=")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("expected `PRC1 N=<n>`, got `{header}`"),
            })?;
        let ground = GroundSet::new(n)?;
        let payload = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 2, msg: "missing payload".into() })?
            .trim();
        let want = ground.vertex_count().div_ceil(4);
        if payload.len() != want {
            return Err(Error::Parse {
                line: 2,
                msg: format!("payload has {} hex digits, expected {want}", payload.len()),
            });
        }
        let mut c = Coloring::constant(ground, Color::Red);
        for (d, ch) in payload.chars().enumerate() {
            let digit = ch.to_digit(16).ok_or_else(|| Error::Parse {
                line: 2,
                msg: format!("non-hex digit `{ch}`"),
            })?;
            for b in 0..4 {
                let v = (d * 4 + b) as Mask;
                if (v as usize) < ground.vertex_count() && digit >> (3 - b) & 1 == 1 {
                    c.paint(v, Color::Blue);
                }
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_and_counts() {
        let g = GroundSet::new(3).unwrap();
        let c = Coloring::constant(g, Color::Blue);
        assert_eq!(c.count(Color::Blue), 8);
        assert_eq!(c.count(Color::Red), 0);
        let c = c.set(0b101, Color::Red);
        assert_eq!(c.get(0b101), Color::Red);
        assert_eq!(c.count(Color::Red), 1);
    }

    #[test]
    fn prc1_worked_example() {
        // Q_2 with ∅ and the full set blue: bits 1001 -> digit 9.
        let g = GroundSet::new(2).unwrap();
        let c = Coloring::from_blue_masks(g, [0b00, 0b11]).unwrap();
        assert_eq!(c.to_prc1(), "PRC1 N=2\n9\n");
        assert_eq!(Coloring::from_prc1("PRC1 N=2\n9\n").unwrap(), c);
    }

    #[test]
    fn prc1_rejects_malformed() {
        assert!(matches!(Coloring::from_prc1(""), Err(Error::Parse { .. })));
        assert!(matches!(Coloring::from_prc1("PRC2 N=2\n9\n"), Err(Error::Parse { .. })));
        assert!(matches!(Coloring::from_prc1("PRC1 N=2\n99\n"), Err(Error::Parse { .. })));
        assert!(matches!(Coloring::from_prc1("PRC1 N=2\nZ\n"), Err(Error::Parse { .. })));
        assert!(matches!(Coloring::from_prc1("PRC1 N=2\n"), Err(Error::Parse { .. })));
        assert!(matches!(Coloring::from_prc1("PRC1 N=0\n\n"), Err(Error::GroundSize(0))));
    }

    #[test]
    fn random_is_reproducible() {
        let g = GroundSet::new(5).unwrap();
        assert_eq!(Coloring::random(g, 7, 0.5), Coloring::random(g, 7, 0.5));
        assert_ne!(Coloring::random(g, 7, 0.5), Coloring::random(g, 8, 0.5));
        assert_eq!(Coloring::random(g, 3, 0.0), Coloring::constant(g, Color::Red));
        assert_eq!(Coloring::random(g, 3, 1.0), Coloring::constant(g, Color::Blue));
    }

    proptest! {
        /// Any coloring survives a serialization round trip.
        #[test]
        fn prc1_roundtrip(n in 1usize..=6, seed in 0u64..1000) {
            let g = GroundSet::new(n).unwrap();
            let c = Coloring::random(g, seed, 0.5);
            let back = Coloring::from_prc1(&c.to_prc1()).unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
