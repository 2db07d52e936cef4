//! The edge-path group of the nerve of a groupoid, computed from a finite
//! presentation by coset enumeration.
//!
//! Vertices of the nerve are objects, edges are morphisms and 2-simplices are
//! composable pairs. Contracting a spanning tree at the basepoint leaves one
//! generator per remaining non-identity edge and one relator `e_f·e_g = e_{g∘f}`
//! per composable pair.

use std::collections::VecDeque;

use crate::category::{MorId, ObjId};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{pi0, FiniteGroupoid};

/// Default cap on the number of cosets defined during enumeration.
pub const DEFAULT_COSET_CAP: usize = 1 << 16;

/// A letter is `2k` for generator `k` and `2k + 1` for its inverse.
pub type Letter = usize;

fn inv(a: Letter) -> Letter {
    a ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generator_names: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

/// Cancels adjacent inverse pairs, then conjugates away inverse pairs at the
/// two ends.
fn reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for a in word {
        if out.last() == Some(&inv(a)) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == inv(out[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

/// The spanning-tree presentation of the edge-path group at `x`.
pub fn edge_path_presentation(g: &FiniteGroupoid, x: ObjId) -> Result<Presentation> {
    if x.0 >= g.object_count() {
        return Err(Error::UnknownObject(x.to_string()));
    }
    let comps = pi0(g);
    if comps.count() != 1 {
        let other = g
            .object_ids()
            .find(|&o| comps.block(o) != comps.block(x))
            .expect("a second component");
        return Err(Error::NotConnected {
            from: g.object_name(x).to_string(),
            to: g.object_name(other).to_string(),
        });
    }
    // breadth-first spanning tree from x, smallest morphism id first
    let mut in_tree = vec![false; g.morphism_count()];
    let mut seen = vec![false; g.object_count()];
    seen[x.0] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for v in g.object_ids() {
            if !seen[v.0] {
                seen[v.0] = true;
                in_tree[g.hom(u, v)[0].0] = true;
                queue.push_back(v);
            }
        }
    }
    let mut generator_of = vec![None; g.morphism_count()];
    let mut generator_names = Vec::new();
    for m in g.morphism_ids() {
        if !g.is_identity(m) && !in_tree[m.0] {
            generator_of[m.0] = Some(generator_names.len());
            generator_names.push(g.morphism_name(m).to_string());
        }
    }
    let letter = |m: MorId, inverse: bool| generator_of[m.0].map(|k| 2 * k + usize::from(inverse));
    let mut relators = Vec::new();
    for f in g.morphism_ids() {
        for h in g.morphism_ids() {
            if let Some(hf) = g.compose(h, f) {
                let word: Vec<Letter> = [letter(f, false), letter(h, false), letter(hf, true)]
                    .into_iter()
                    .flatten()
                    .collect();
                let word = reduce(word);
                if !word.is_empty() {
                    relators.push(word);
                }
            }
        }
    }
    relators.sort();
    relators.dedup();
    Ok(Presentation {
        generator_names,
        relators,
    })
}

/// Coset table for the trivial subgroup, enumerated HLT-style with
/// coincidence processing.
struct CosetTable {
    columns: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    cap: usize,
}

impl CosetTable {
    fn new(generators: usize, cap: usize) -> Self {
        CosetTable {
            columns: 2 * generators,
            table: vec![vec![None; 2 * generators]],
            parent: vec![0],
            cap,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, a: Letter) -> Result<()> {
        if self.table.len() >= self.cap {
            return Err(Error::CosetCapExceeded { cap: self.cap });
        }
        let d = self.table.len();
        self.table.push(vec![None; self.columns]);
        self.parent.push(d);
        self.table[c][a] = Some(d);
        self.table[d][inv(a)] = Some(c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.columns {
                if let Some(f) = self.table[e][x] {
                    self.table[f][inv(x)] = None;
                    let (e1, f1) = (self.rep(e), self.rep(f));
                    if let Some(v) = self.table[e1][x] {
                        self.merge(f1, v, &mut queue);
                    } else if let Some(v) = self.table[f1][inv(x)] {
                        self.merge(e1, v, &mut queue);
                    } else {
                        self.table[e1][x] = Some(f1);
                        self.table[f1][inv(x)] = Some(e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][w[i]] {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.table[b][inv(w[j as usize])] {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = Some(b);
                self.table[b][inv(w[i])] = Some(f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn enumerate(&mut self, relators: &[Vec<Letter>]) -> Result<()> {
        let mut c = 0;
        while c < self.table.len() {
            for r in relators {
                if !self.live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.live(c) {
                for x in 0..self.columns {
                    if self.table[c][x].is_none() {
                        self.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }
}

/// Enumerates cosets of the trivial subgroup and returns the group as its
/// right regular representation. Elements are named by a shortest word.
pub fn todd_coxeter(p: &Presentation, cap: usize) -> Result<FiniteGroup> {
    let mut t = CosetTable::new(p.generator_names.len(), cap);
    t.enumerate(&p.relators)?;
    let live: Vec<usize> = (0..t.table.len()).filter(|&c| t.live(c)).collect();
    let mut index = vec![usize::MAX; t.table.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let step = |c: usize, a: Letter| index[t.table[live[c]][a].expect("complete table")];
    // shortest words by breadth-first search from the identity coset
    let n = live.len();
    let mut words: Vec<Option<Vec<Letter>>> = vec![None; n];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for a in 0..t.columns {
            let d = step(c, a);
            if words[d].is_none() {
                let mut w = words[c].clone().expect("visited");
                w.push(a);
                words[d] = Some(w);
                queue.push_back(d);
            }
        }
    }
    let words: Vec<Vec<Letter>> = words.into_iter().map(|w| w.expect("connected table")).collect();
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| words[b].iter().fold(a, |c, &l| step(c, l)))
                .collect()
        })
        .collect();
    let name = |w: &[Letter]| {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&l| {
                let g = &p.generator_names[l / 2];
                if l % 2 == 0 {
                    g.clone()
                } else {
                    format!("{g}⁻¹")
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    };
    let elements = words.iter().map(|w| name(w)).collect();
    FiniteGroup::from_table(elements, table).map_err(Error::Invalid)
}

/// The edge-path group of the nerve of `g` at `x`. Fails with
/// [`Error::CosetCapExceeded`] when enumeration does not close within `cap`
/// cosets.
pub fn edge_path_pi1(g: &FiniteGroupoid, x: ObjId, cap: usize) -> Result<FiniteGroup> {
    todd_coxeter(&edge_path_presentation(g, x)?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;
    use crate::groupoid::aut_group;

    fn presentation(gens: &[&str], relators: Vec<Vec<Letter>>) -> Presentation {
        Presentation {
            generator_names: gens.iter().map(|s| s.to_string()).collect(),
            relators,
        }
    }

    #[test]
    fn cyclic_presentation() {
        // <a | a^5>
        let g = todd_coxeter(&presentation(&["a"], vec![vec![0; 5]]), 100).unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.is_abelian());
    }

    #[test]
    fn dihedral_presentation_needs_coincidences() {
        // <r, s | r^4, s^2, (rs)^2>
        let g = todd_coxeter(
            &presentation(&["r", "s"], vec![vec![0; 4], vec![2, 2], vec![0, 2, 0, 2]]),
            1000,
        )
        .unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
    }

    #[test]
    fn infinite_group_hits_the_cap() {
        let err = todd_coxeter(&presentation(&["a"], vec![]), 50).unwrap_err();
        assert_eq!(err, Error::CosetCapExceeded { cap: 50 });
        assert!(err.is_indeterminate());
    }

    #[test]
    fn point_and_chaotic_are_trivial() {
        assert!(edge_path_pi1(&FiniteGroupoid::point(), ObjId(0), 100).unwrap().is_trivial());
        let c = FiniteGroupoid::chaotic(&["p", "q", "r"]);
        assert!(edge_path_pi1(&c, ObjId(1), 100).unwrap().is_trivial());
    }

    #[test]
    fn agrees_with_automorphism_group() {
        let groups = [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::symmetric3(),
            FiniteGroup::quaternion(),
        ];
        for grp in &groups {
            for names in [&["*"][..], &["x", "y"][..]] {
                let g = FiniteGroupoid::thickened(grp, names);
                let e = edge_path_pi1(&g, ObjId(0), DEFAULT_COSET_CAP).unwrap();
                let a = aut_group(&g, ObjId(0)).unwrap();
                assert!(find_isomorphism(&e, &a).found().is_some());
            }
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = FiniteGroupoid::discrete(&["a", "b"]);
        assert!(matches!(
            edge_path_pi1(&g, ObjId(0), 100),
            Err(Error::NotConnected { .. })
        ));
    }
}
