/// Union-find with path halving; roots settle on the smallest member, which
/// keeps component numbering deterministic.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn all_same(&mut self) -> bool {
        if self.parent.is_empty() {
            return false;
        }
        let root = self.find(0);
        (0..self.parent.len()).all(|i| self.find(i) == root)
    }
}
