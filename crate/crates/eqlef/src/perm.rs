//! Permutations on {0, .., n-1} as image arrays.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    pub images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Composition acting left-to-right on points is not used; `a.compose(&b)`
    /// is the function x -> a(b(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Sign of the permutation (+1 or -1), by cycle counting.
    pub fn sign(&self) -> i64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut sign = 1i64;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// Sign of the permutation that sorts `vals` (which must be distinct),
/// or None if there are repeats.
pub fn sort_sign<T: Ord + Clone>(vals: &[T]) -> Option<i64> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].cmp(&vals[b]));
    for w in idx.windows(2) {
        if vals[w[0]] == vals[w[1]] {
            return None;
        }
    }
    Some(Perm { images: idx }.sign())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Perm::new(vec![1, 2, 0]).unwrap(); // 3-cycle
        let b = a.inverse();
        assert!(a.compose(&b).is_identity());
        assert_eq!(a.compose(&a).images, vec![2, 0, 1]);
    }

    #[test]
    fn signs() {
        assert_eq!(Perm::new(vec![1, 0, 2]).unwrap().sign(), -1);
        assert_eq!(Perm::new(vec![1, 2, 0]).unwrap().sign(), 1);
        assert_eq!(Perm::identity(5).sign(), 1);
    }

    #[test]
    fn sort_sign_basics() {
        assert_eq!(sort_sign(&[3, 1, 2]), Some(1));
        assert_eq!(sort_sign(&[2, 1, 3]), Some(-1));
        assert_eq!(sort_sign(&[1, 1, 2]), None);
        assert_eq!(sort_sign::<i32>(&[]), Some(1));
    }
}
