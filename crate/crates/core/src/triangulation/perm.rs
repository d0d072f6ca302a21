use std::fmt;

/// A permutation of the vertex labels `{0,1,2,3}`; `self.0[i]` is the image of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation, rejecting anything that is not a bijection of `0..4`.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    pub fn is_even(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24u32).map(|mut k| {
            let mut pool = vec![0u8, 1, 2, 3];
            let mut out = [0u8; 4];
            for (slot, radix) in out.iter_mut().zip([6u32, 2, 1, 1]) {
                let idx = (k / radix) as usize;
                k %= radix;
                *slot = pool.remove(idx);
            }
            Perm4(out)
        })
    }

    /// The twelve orientation-preserving relabelings of a tetrahedron.
    pub fn even() -> impl Iterator<Item = Perm4> {
        Self::all().filter(|p| p.is_even())
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}
