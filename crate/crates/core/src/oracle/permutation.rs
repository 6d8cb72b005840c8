use std::fmt;

use num_bigint::BigUint;

use crate::numeric::lcm_all;

/// Order in which a product `a · b` applies its factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Composition {
    /// `a · b` applies `a` first, then `b`: `x ↦ b(a(x))`.
    #[default]
    LeftToRight,
    /// `a · b` applies `b` first, then `a`: `x ↦ a(b(x))`.
    RightToLeft,
}

/// A bijection on the points `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[i] is the image of point i + 1, minus one
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// From 1-based images: `images[i - 1]` is the image of point `i`.
    pub fn from_images(images: &[u32]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            let i = (x as usize).checked_sub(1)?;
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
            zero_based.push(i as u32);
        }
        Some(Permutation { images: zero_based })
    }

    /// Builds a permutation of `1..=n` from disjoint cycles of 1-based points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Option<Self> {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let slot = (x as usize).checked_sub(1).filter(|&s| s < n)?;
                if std::mem::replace(&mut touched[slot], true) {
                    return None;
                }
                images[slot] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// The cycle `(1, 2, ..., k)` in `S_n`.
    pub fn standard_cycle(n: usize, k: usize) -> Self {
        assert!(k <= n);
        let mut p = Self::identity(n);
        for i in 0..k {
            p.images[i] = ((i + 1) % k) as u32;
        }
        p
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based `point`.
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self · other` under the given convention.
    pub fn compose(&self, other: &Self, convention: Composition) -> Self {
        assert_eq!(self.degree(), other.degree(), "degrees differ");
        let (first, second) = match convention {
            Composition::LeftToRight => (self, other),
            Composition::RightToLeft => (other, self),
        };
        Permutation {
            images: first.images.iter().map(|&x| second.images[x as usize]).collect(),
        }
    }

    /// `g⁻¹ · self · g`, left to right.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse()
            .compose(self, Composition::LeftToRight)
            .compose(g, Composition::LeftToRight)
    }

    /// Cycle lengths in order of each cycle's smallest point, fixed points
    /// included as 1-cycles.
    pub fn cycle_lengths(&self) -> Vec<u64> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Cycle type as a descending list of cycle lengths.
    pub fn cycle_type(&self) -> Vec<u64> {
        let mut t = self.cycle_lengths();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> BigUint {
        lcm_all(self.cycle_lengths())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Disjoint-cycle notation on 1-based points, fixed points omitted.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x] as usize;
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}
