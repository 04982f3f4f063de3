//! Permutations of `{0, .., n-1}` with lexicographic ranking.

use crate::partitions::{CycleType, Partition};
use crate::Error;

/// Factorials up to 20! (the largest that fits in a `u64`).
pub const FACTORIALS: [u64; 21] = {
    let mut f = [1u64; 21];
    let mut i = 1;
    while i <= 20 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// A permutation of `{0, .., n-1}`, stored as the image list: `sigma.image(i)
/// = images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from its image list; fails unless it is a
    /// bijection of `{0, .., n-1}`.
    pub fn from_images(images: Vec<u8>) -> Result<Permutation, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Canonical representative of the conjugacy class with the given cycle
    /// type: cycles fill `0, 1, 2, ...` left to right, so `(3,2)` gives
    /// `(0 1 2)(3 4)`.
    pub fn class_representative(cycle_type: &CycleType) -> Permutation {
        let n = cycle_type.partition().size() as usize;
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut pos = 0usize;
        for &len in cycle_type.partition().parts() {
            let len = len as usize;
            for i in 0..len {
                images[pos + i] = (pos + (i + 1) % len) as u8;
            }
            pos += len;
        }
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Composition acting left to right through function application:
    /// `(self.compose(tau)).image(i) = self.image(tau.image(i))`.
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), tau.len());
        Permutation {
            images: tau.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1i64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize;
                len += 1;
            }
            if len.is_multiple_of(2) {
                sign = -sign;
            }
        }
        sign
    }

    /// Cycle lengths, sorted decreasingly, as a partition of `n`.
    pub fn cycle_type(&self) -> CycleType {
        let mut seen = vec![false; self.images.len()];
        let mut lens: Vec<u32> = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        CycleType::new(Partition::new(lens).expect("cycle lengths form a partition"))
    }

    /// Lexicographic rank of the image sequence among all permutations of
    /// `{0, .., n-1}`.
    pub fn lex_rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0usize;
        let mut used = 0u32;
        for (i, &x) in self.images.iter().enumerate() {
            let smaller = (used & ((1u32 << x) - 1)).count_ones() as usize;
            rank += (x as usize - smaller) * FACTORIALS[n - 1 - i] as usize;
            used |= 1 << x;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Permutation {
        let mut avail: Vec<u8> = (0..n as u8).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let f = FACTORIALS[n - 1 - i] as usize;
            let idx = rank / f;
            rank %= f;
            images.push(avail.remove(idx));
        }
        Permutation { images }
    }

    /// True when the permutation maps `{0, .., split-1}` into itself (and
    /// hence the complement into itself).
    pub fn preserves_split(&self, split: usize) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| (i < split) == ((x as usize) < split))
    }

    /// Embeds a pair `(sigma, tau)` of permutations of the first `q` and the
    /// last `m` positions into `S_{q+m}`.
    pub fn from_pair(sigma: &Permutation, tau: &Permutation) -> Permutation {
        let q = sigma.len();
        let mut images = Vec::with_capacity(q + tau.len());
        images.extend(sigma.images.iter().copied());
        images.extend(tau.images.iter().map(|&x| x + q as u8));
        Permutation { images }
    }

    /// The restriction to the first `q` points and to the remainder; fails if
    /// the split is not preserved.
    pub fn split(&self, q: usize) -> Result<(Permutation, Permutation), Error> {
        if !self.preserves_split(q) {
            return Err(Error::ParityMismatch(format!(
                "permutation {:?} does not preserve the first {q} positions",
                self.images
            )));
        }
        let first = self.images[..q].to_vec();
        let second = self.images[q..].iter().map(|&x| x - q as u8).collect();
        Ok((Permutation { images: first }, Permutation { images: second }))
    }
}

/// Iterates over all permutations of `{0, .., n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let count = FACTORIALS[n] as usize;
    (0..count).map(move |r| Permutation::from_lex_rank(n, r))
}
