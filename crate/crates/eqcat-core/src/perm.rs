//! Permutations of {0,…,n-1} and the calculus used by operad structure maps:
//! block substitution, block sum, tensor (lexicographic product), the
//! distributivity permutation, and the lexicographic transpose.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation stored as its image vector: `p.apply(i) = images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!(
                    "not a permutation image vector: {images:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Transposition (a b) in Σ_n.
    pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Composition: `(p.compose(q))(i) = p(q(i))`.
    pub fn compose(&self, q: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), q.degree());
        Perm {
            images: q.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    /// Apply to a tuple by index permutation: `result[p(i)] = tuple[i]`,
    /// i.e. the entry at position i moves to position p(i).
    pub fn permute_tuple<T: Clone>(&self, tuple: &[T]) -> Vec<T> {
        debug_assert_eq!(self.degree(), tuple.len());
        let mut out: Vec<T> = tuple.to_vec();
        for (i, t) in tuple.iter().enumerate() {
            out[self.images[i]] = t.clone();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // one-line notation, 1-based to match the file formats
        let v: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", v.join(" "))
    }
}

/// All permutations of degree n in a fixed order: identity first, then the
/// rest sorted by image vector. Multiplication/inverse looked up by index.
pub struct SymmetricGroup {
    pub degree: usize,
    pub elements: Vec<Perm>,
    index: std::collections::HashMap<Vec<usize>, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl SymmetricGroup {
    pub fn new(degree: usize) -> SymmetricGroup {
        let mut elements: Vec<Perm> = permutations_of(degree);
        elements.sort_by(|a, b| a.images.cmp(&b.images));
        // identity is the lex-least image vector, so it is already first
        debug_assert!(elements[0].is_identity());
        let index: std::collections::HashMap<Vec<usize>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images.clone(), i))
            .collect();
        let n = elements.len();
        let mut mul = vec![vec![0; n]; n];
        let mut inv = vec![0; n];
        for (i, p) in elements.iter().enumerate() {
            for (j, q) in elements.iter().enumerate() {
                mul[i][j] = index[&p.compose(q).images];
            }
            inv[i] = index[&p.inverse().images];
        }
        SymmetricGroup {
            degree,
            elements,
            index,
            mul,
            inv,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &Perm) -> usize {
        self.index[&p.images]
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inv[i]
    }
}

/// All permutations of degree n (n! of them), in no particular order.
pub fn permutations_of(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(&mut current, n, &mut out);
    out
}

fn heap_permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(Perm { images: v.clone() });
        return;
    }
    for i in 0..k {
        heap_permute(v, k - 1, out);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

/// σ ⊗ τ ∈ Σ_{jk}: under the lexicographic identification of {0..jk} with
/// pairs (q,r), q < j, r < k, sends (q,r) to (σq, τr).
pub fn tensor_perm(sigma: &Perm, tau: &Perm) -> Perm {
    let j = sigma.degree();
    let k = tau.degree();
    let mut images = vec![0; j * k];
    for q in 0..j {
        for r in 0..k {
            images[q * k + r] = sigma.apply(q) * k + tau.apply(r);
        }
    }
    Perm { images }
}

/// The distributivity permutation for block sizes h = (h_1..h_j) and
/// i = (i_1..i_k). Source: the blocks h_q × i_r laid out in lexicographic
/// (q,r) order, each block ordered lexicographically. Target: the
/// lexicographic order on (⊔h_q) × (⊔i_r). Returns the permutation sending
/// each source position to its target position.
pub fn delta_perm(h: &[usize], i: &[usize]) -> Perm {
    let hsum: usize = h.iter().sum();
    let isum: usize = i.iter().sum();
    let mut images = Vec::with_capacity(hsum * isum);
    let mut hstart = vec![0; h.len()];
    for q in 1..h.len() {
        hstart[q] = hstart[q - 1] + h[q - 1];
    }
    let mut istart = vec![0; i.len()];
    for r in 1..i.len() {
        istart[r] = istart[r - 1] + i[r - 1];
    }
    for (q, &hq) in h.iter().enumerate() {
        for (r, &ir) in i.iter().enumerate() {
            for a in 0..hq {
                for b in 0..ir {
                    images.push((hstart[q] + a) * isum + (istart[r] + b));
                }
            }
        }
    }
    Perm { images }
}

/// τ(j,k) ∈ Σ_{jk}: compares the lexicographic identification of j × k with
/// that of k × j, sending position (q,r) to position (r,q).
pub fn tau_perm(j: usize, k: usize) -> Perm {
    let mut images = vec![0; j * k];
    for q in 0..j {
        for r in 0..k {
            images[q * k + r] = r * j + q;
        }
    }
    Perm { images }
}

/// Block sum σ_1 ⊕ ⋯ ⊕ σ_k: acts as σ_i inside the i-th consecutive block.
pub fn block_sum(sigmas: &[&Perm]) -> Perm {
    let total: usize = sigmas.iter().map(|s| s.degree()).sum();
    let mut images = Vec::with_capacity(total);
    let mut start = 0;
    for s in sigmas {
        for p in 0..s.degree() {
            images.push(start + s.apply(p));
        }
        start += s.degree();
    }
    Perm { images }
}

/// Operadic block substitution γ(c; d_1..d_k): c ∈ Σ_k permutes blocks of
/// sizes (|d_1|,…,|d_k|) — block q lands at block position c(q), with the
/// block sizes rearranged accordingly — and d_q acts inside block q.
pub fn block_substitution(c: &Perm, ds: &[&Perm]) -> Perm {
    let k = c.degree();
    debug_assert_eq!(ds.len(), k);
    let sizes: Vec<usize> = ds.iter().map(|d| d.degree()).collect();
    // target start offset of the block that lands at each target position
    let mut size_at_target = vec![0; k];
    for q in 0..k {
        size_at_target[c.apply(q)] = sizes[q];
    }
    let mut target_start = vec![0; k];
    for t in 1..k {
        target_start[t] = target_start[t - 1] + size_at_target[t - 1];
    }
    let total: usize = sizes.iter().sum();
    let mut images = Vec::with_capacity(total);
    for q in 0..k {
        let ts = target_start[c.apply(q)];
        for p in 0..sizes[q] {
            images.push(ts + ds[q].apply(p));
        }
    }
    Perm { images }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_convention() {
        let a = p(&[1, 2, 0]);
        let b = p(&[0, 2, 1]);
        // (a∘b)(i) = a(b(i))
        let c = a.compose(&b);
        assert_eq!(c.images(), &[1, 0, 2]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn tuple_action_places_entry_at_image() {
        let s = p(&[2, 0, 1]);
        let t = s.permute_tuple(&['a', 'b', 'c']);
        // entry 0 moves to position 2, etc.
        assert_eq!(t, vec!['b', 'c', 'a']);
        // composition compatibility: (pq)·x = p·(q·x)
        let q = p(&[1, 0, 2]);
        assert_eq!(
            s.compose(&q).permute_tuple(&['a', 'b', 'c']),
            s.permute_tuple(&q.permute_tuple(&['a', 'b', 'c']))
        );
    }

    #[test]
    fn symmetric_group_tables() {
        let s3 = SymmetricGroup::new(3);
        assert_eq!(s3.order(), 6);
        assert!(s3.elements[0].is_identity());
        for i in 0..6 {
            assert_eq!(s3.mul_idx(i, s3.inv_idx(i)), 0);
            assert_eq!(s3.mul_idx(0, i), i);
        }
    }

    #[test]
    fn tensor_examples() {
        // id ⊗ id = id
        assert!(tensor_perm(&Perm::identity(2), &Perm::identity(3)).is_identity());
        // (1 2) ⊗ id_2 = (1 3)(2 4) in cycle notation, i.e. images [2,3,0,1]
        let swap = Perm::transposition(2, 0, 1);
        let t = tensor_perm(&swap, &Perm::identity(2));
        assert_eq!(t.images(), &[2, 3, 0, 1]);
        // involution squares to the identity
        assert!(t.compose(&t).is_identity());
    }

    #[test]
    fn tensor_is_homomorphism() {
        let s3 = SymmetricGroup::new(3);
        let s2 = SymmetricGroup::new(2);
        for a in &s3.elements {
            for b in &s3.elements {
                for c in &s2.elements {
                    for d in &s2.elements {
                        let lhs = tensor_perm(&a.compose(b), &c.compose(d));
                        let rhs = tensor_perm(a, c).compose(&tensor_perm(b, d));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        assert!(delta_perm(&[1], &[1]).is_identity());
        // h = (2), i = (1,1): the transposition (2 3) in Σ₄
        assert_eq!(delta_perm(&[2], &[1, 1]).images(), &[0, 2, 1, 3]);
        // h = (1,1), i = (2): identity in Σ₄
        assert!(delta_perm(&[1, 1], &[2]).is_identity());
    }

    #[test]
    fn tau_examples() {
        assert!(tau_perm(1, 4).is_identity());
        assert_eq!(tau_perm(2, 2).images(), &[0, 2, 1, 3]); // (2 3)
        for j in 1..=3 {
            for k in 1..=3 {
                assert!(tau_perm(k, j).compose(&tau_perm(j, k)).is_identity());
            }
        }
    }

    #[test]
    fn block_substitution_examples() {
        let id1 = Perm::identity(1);
        let id2 = Perm::identity(2);
        let swap = Perm::transposition(2, 0, 1);
        // unit-ish laws
        assert!(block_substitution(&id2, &[&id1, &id1]).is_identity());
        assert_eq!(
            block_substitution(&swap, &[&id1, &id1]),
            Perm::transposition(2, 0, 1)
        );
        // γ(id₂; (1 2), id₁) = (1 2) in Σ₃
        assert_eq!(
            block_substitution(&id2, &[&swap, &id1]).images(),
            &[1, 0, 2]
        );
        // block permutation with unequal sizes: c = swap, sizes (2,1):
        // block 0 (positions 0,1) moves after block 1
        assert_eq!(
            block_substitution(&swap, &[&id2, &id1]).images(),
            &[1, 2, 0]
        );
    }

    #[test]
    fn block_substitution_vs_block_sum() {
        // γ(id; d_1..d_k) is the block sum
        let a = p(&[1, 0]);
        let b = p(&[2, 0, 1]);
        assert_eq!(
            block_substitution(&Perm::identity(2), &[&a, &b]),
            block_sum(&[&a, &b])
        );
    }
}
