//! Brute-force reference computations, written without the kernel's
//! constructions so they can cross-check them.

use crate::value::Value;

/// Union-find over `0..len` with path compression and union by size.
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> DisjointSets {
        DisjointSets { parent: (0..len).collect(), size: vec![1; len] }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }

    /// Blocks as sorted index lists, sorted by least member.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = self.find(i);
            by_root[r].push(i);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort();
        blocks
    }
}

/// Partition of `0..n` induced by the related pairs, via union-find.
pub fn partition_of(n: usize, related: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut ds = DisjointSets::new(n);
    for i in 0..n {
        for j in 0..n {
            if related(i, j) {
                ds.union(i, j);
            }
        }
    }
    ds.blocks()
}

/// Reflexive, symmetric and transitive, for the relation `mask` on `0..n`
/// where bit `i * n + j` means `i ∼ j`.
pub fn is_equivalence_mask(n: usize, mask: u64) -> bool {
    let r = |i: usize, j: usize| mask >> (i * n + j) & 1 == 1;
    (0..n).all(|i| r(i, i))
        && (0..n).all(|i| (0..n).all(|j| !r(i, j) || r(j, i)))
        && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r(i, j) && r(j, k)) || r(i, k))))
}

/// All choice tuples from the given fibres: the cartesian product, in order.
pub fn fibre_product(fibres: &[Vec<Value>]) -> Vec<Vec<Value>> {
    let mut out: Vec<Vec<Value>> = vec![Vec::new()];
    for fibre in fibres {
        let mut next = Vec::with_capacity(out.len() * fibre.len());
        for prefix in &out {
            for v in fibre {
                let mut t = prefix.clone();
                t.push(v.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_blocks() {
        let mut ds = DisjointSets::new(5);
        ds.union(0, 3);
        ds.union(4, 3);
        assert_eq!(ds.blocks(), vec![vec![0, 3, 4], vec![1], vec![2]]);
    }

    #[test]
    fn equivalence_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15];
        for (n, want) in bell.into_iter().enumerate() {
            let count = (0..1u64 << (n * n)).filter(|&m| is_equivalence_mask(n, m)).count();
            assert_eq!(count, want);
        }
    }

    #[test]
    fn fibre_product_sizes() {
        let v = |s: &str| Value::atom(s);
        assert_eq!(fibre_product(&[vec![v("a"), v("b")], vec![v("c"), v("d"), v("e")]]).len(), 6);
        assert!(fibre_product(&[vec![v("a")], vec![]]).is_empty());
        assert_eq!(fibre_product(&[]), vec![Vec::<Value>::new()]);
    }
}
