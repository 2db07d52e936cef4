//! Finite groups as multiplication tables, and brute-force isomorphism search.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::report::{ValidationReport, Violation};

/// Groups above this order are never searched for isomorphisms.
pub const ISO_SEARCH_MAX_ORDER: usize = 24;

/// A finite group given by its Cayley table. `table[a][b]` is `a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Checks associativity, identity and inverses exhaustively.
    pub fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, ValidationReport> {
        let n = elements.len();
        let mut report = ValidationReport::new();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            report.push(Violation::TableSize {
                context: "group table".into(),
                expected: n,
                found: table.len(),
            });
            return Err(report);
        }
        if table.iter().flatten().any(|&x| x >= n) {
            report.push(Violation::MapOutOfRange {
                context: "group table".into(),
            });
            return Err(report);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        report.push(Violation::GroupAssociativity {
                            a: elements[a].clone(),
                            b: elements[b].clone(),
                            c: elements[c].clone(),
                        });
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a));
        let Some(identity) = identity else {
            for a in 0..n {
                report.push(Violation::GroupIdentity {
                    element: elements[a].clone(),
                });
            }
            if n == 0 {
                report.push(Violation::GroupIdentity {
                    element: "<empty>".into(),
                });
            }
            return Err(report.normalized());
        };
        let mut inverses = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses[a] = b,
                None => report.push(Violation::GroupInverse {
                    element: elements[a].clone(),
                }),
            }
        }
        if !report.is_valid() {
            return Err(report.normalized());
        }
        Ok(FiniteGroup {
            elements,
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(elements, table).expect("cyclic group")
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (n, m) = (a.order(), b.order());
        let mut elements = Vec::with_capacity(n * m);
        for x in 0..n {
            for y in 0..m {
                elements.push(format!("({},{})", a.elements[x], b.elements[y]));
            }
        }
        let table = (0..n * m)
            .map(|p| {
                (0..n * m)
                    .map(|q| a.mul(p / m, q / m) * m + b.mul(p % m, q % m))
                    .collect()
            })
            .collect();
        Self::from_table(elements, table).expect("direct product")
    }

    /// Closure of the given permutations of `0..degree` under composition.
    /// Elements are named by their image lists; the product `p·q` applies `q`
    /// first.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Self {
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next: Vec<usize> = perms[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(next);
                }
            }
        }
        let n = perms.len();
        let table = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| {
                        let pq: Vec<usize> = (0..degree).map(|x| perms[p][perms[q][x]]).collect();
                        index[&pq]
                    })
                    .collect()
            })
            .collect();
        let elements = perms
            .iter()
            .map(|p| {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(" "))
            })
            .collect();
        Self::from_table(elements, table).expect("permutation group")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    /// Dihedral group of order 2n acting on an n-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl])
    }

    pub fn alternating4() -> Self {
        Self::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
    }

    pub fn quaternion() -> Self {
        // regular representation of Q8 on its elements ±1, ±i, ±j, ±k
        // indexed 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
        let mul = |a: usize, b: usize| -> usize {
            let (sa, ua) = (a % 2, a / 2);
            let (sb, ub) = (b % 2, b / 2);
            // unit table over {1,i,j,k}
            let (s, u) = match (ua, ub) {
                (0, x) | (x, 0) => (0, x),
                (x, y) if x == y => (1, 0),
                (1, 2) => (0, 3),
                (2, 1) => (1, 3),
                (2, 3) => (0, 1),
                (3, 2) => (1, 1),
                (3, 1) => (0, 2),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            };
            u * 2 + (sa + sb + s) % 2
        };
        let elements = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let table = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(elements, table).expect("quaternion group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    /// A small generating set, chosen greedily in element order, preferring
    /// elements of larger order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in by_order {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Conjugation `x ↦ g·x·g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }
}

/// An element bijection between two groups preserving multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupIso {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

impl GroupIso {
    pub fn is_valid(&self) -> bool {
        let n = self.source.order();
        if self.target.order() != n || self.map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.map {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        self.map[self.source.identity()] == self.target.identity()
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    self.map[self.source.mul(a, b)] == self.target.mul(self.map[a], self.map[b])
                })
            })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoSearch {
    Found(GroupIso),
    NotIsomorphic,
    /// An operand exceeds [`ISO_SEARCH_MAX_ORDER`].
    Indeterminate,
}

impl IsoSearch {
    pub fn found(&self) -> Option<&GroupIso> {
        match self {
            IsoSearch::Found(iso) => Some(iso),
            _ => None,
        }
    }
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut p: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
    p.sort_unstable();
    p
}

/// Searches for an isomorphism by trying every assignment of generator images
/// with matching element orders.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> IsoSearch {
    if g.order() > ISO_SEARCH_MAX_ORDER || h.order() > ISO_SEARCH_MAX_ORDER {
        return IsoSearch::Indeterminate;
    }
    if g.order() != h.order() || order_profile(g) != order_profile(h) {
        return IsoSearch::NotIsomorphic;
    }
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..h.order())
                .filter(|&y| h.element_order(y) == g.element_order(x))
                .collect()
        })
        .collect();
    let mut images = vec![0usize; gens.len()];

    fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = g.order();
        let mut map = vec![usize::MAX; n];
        map[g.identity()] = h.identity();
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = g.mul(x, s);
                let image = h.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = image;
                    queue.push_back(y);
                } else if map[y] != image {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn go(
        k: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<GroupIso> {
        if k == gens.len() {
            let map = extend(g, h, gens, images)?;
            let iso = GroupIso {
                source: g.clone(),
                target: h.clone(),
                map,
            };
            return iso.is_valid().then_some(iso);
        }
        for &c in &candidates[k] {
            images[k] = c;
            if let Some(iso) = go(k + 1, g, h, gens, candidates, images) {
                return Some(iso);
            }
        }
        None
    }

    match go(0, g, h, &gens, &candidates, &mut images) {
        Some(iso) => IsoSearch::Found(iso),
        None => IsoSearch::NotIsomorphic,
    }
}

/// An element `c` of the target with `second(x) = c·first(x)·c⁻¹` for all `x`.
pub fn find_conjugator(first: &GroupIso, second: &GroupIso) -> Option<usize> {
    let t = &first.target;
    (0..t.order()).find(|&c| {
        (0..first.source.order()).all(|x| second.apply(x) == t.conjugate(c, first.apply(x)))
    })
}
