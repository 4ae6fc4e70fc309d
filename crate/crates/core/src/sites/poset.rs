use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite partial order on labelled elements. Element order is the order
/// the labels were given in; `leq[i][j]` means `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// The order generated by `relations` (pairs `x ≤ y`) under reflexive-transitive closure.
    pub fn new(labels: Vec<String>, relations: &[(String, String)]) -> Result<Self> {
        let n = labels.len();
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::Validation("poset labels are not distinct".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let index = |s: &str| labels.iter().position(|l| l == s).ok_or_else(|| Error::UnknownObject(s.to_string()));
        for (x, y) in relations {
            leq[index(x)?][index(y)?] = true;
        }
        Self::from_relation(labels, leq)
    }

    /// Closes a boolean relation matrix and checks antisymmetry.
    pub fn from_relation(labels: Vec<String>, mut leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("order relation matrix does not match labels".into()));
        }
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Validation(format!("order is not antisymmetric: {} and {}", labels[i], labels[j])));
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    pub fn chain(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Poset { labels, leq }
    }

    pub fn antichain(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Poset { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// Pairs `(i, j)` with `i ≤ j`, including reflexive ones.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).filter(move |&j| self.leq[i][j]).map(move |j| (i, j))).collect()
    }

    /// Covering pairs `i ⋖ j`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All strictly increasing chains `x₀ < … < x_p`, in lexicographic index order.
    pub fn strict_chains(&self, p: usize) -> Vec<Vec<usize>> {
        self.chains(p, true)
    }

    /// All weakly increasing chains `x₀ ≤ … ≤ x_p`.
    pub fn weak_chains(&self, p: usize) -> Vec<Vec<usize>> {
        self.chains(p, false)
    }

    fn chains(&self, p: usize, strict: bool) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for _ in 0..p {
            let mut next = Vec::new();
            for c in &out {
                let last = *c.last().unwrap();
                for j in 0..n {
                    let ok = if strict { self.lt(last, j) } else { self.leq(last, j) };
                    if ok {
                        let mut d = c.clone();
                        d.push(j);
                        next.push(d);
                    }
                }
            }
            out = next;
        }
        out
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[j][i]).collect()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[i][j]).collect()
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[j][i]))
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    /// The induced order on a subset of elements, in the given order.
    pub fn subposet(&self, elems: &[usize]) -> Poset {
        let labels = elems.iter().map(|&i| self.labels[i].clone()).collect();
        let leq = elems.iter().map(|&i| elems.iter().map(|&j| self.leq[i][j]).collect()).collect();
        Poset { labels, leq }
    }

    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
        Poset { labels: self.labels.clone(), leq }
    }

    /// Connected components of the comparability graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..n {
                    if comp[y] == usize::MAX && (self.leq[x][y] || self.leq[y][x]) {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> String {
        v.to_string()
    }

    #[test]
    fn closure_and_chains() {
        let p = Poset::new(vec![s("a"), s("b"), s("c")], &[(s("a"), s("b")), (s("b"), s("c"))]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.strict_chains(2), vec![vec![0, 1, 2]]);
        assert_eq!(p.weak_chains(1).len(), 6);
        assert_eq!(p.greatest(), Some(2));
    }

    #[test]
    fn rejects_cycles() {
        let err = Poset::new(vec![s("a"), s("b")], &[(s("a"), s("b")), (s("b"), s("a"))]).unwrap_err();
        assert!(err.to_string().contains("antisymmetric"));
    }

    #[test]
    fn antichain_components() {
        assert_eq!(Poset::antichain(3).components().len(), 3);
        assert_eq!(Poset::chain(3).components().len(), 1);
    }
}
