//! Augmented Čech nerve of a functor of groupoids.
//!
//! Level `k` is the homotopy fiber product of `k + 1` copies of `X'` over `X`,
//! presented as chains `(x₀, …, x_k; φ₁, …, φ_k)` with `φᵢ: f(xᵢ₋₁) -> f(xᵢ)`.
//! A morphism is a tuple `(α₀, …, α_k)` of morphisms of `X'` whose images
//! conjugate each link into the link of the target. Level 0 is `X'` itself and
//! the augmentation is `f`.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::category::{validate_functor, FiniteCategory, Functor, MorId, ObjId};
use crate::error::{Budget, Error, Result};
use crate::groupoid::{pi0, FiniteGroupoid};

#[derive(Debug, Clone)]
pub struct CechLevel {
    pub level: usize,
    pub groupoid: FiniteGroupoid,
    /// `(x₀..x_k, φ₁..φ_k)` per object.
    pub chains: Vec<(Vec<ObjId>, Vec<MorId>)>,
    /// `(α₀..α_k)` per morphism.
    pub tuples: Vec<Vec<MorId>>,
    /// Face maps `d₀..d_k` to the previous level; at level 0 the single entry
    /// is the augmentation to `X`.
    pub faces: Vec<Functor>,
}

#[derive(Debug, Clone)]
pub struct CechNerve {
    pub levels: Vec<CechLevel>,
}

/// Levels `0..=n` of the Čech nerve of `f: x_prime -> x`.
pub fn cech_nerve(
    x_prime: &FiniteGroupoid,
    x: &FiniteGroupoid,
    f: &Functor,
    n: usize,
    budget: &mut Budget,
) -> Result<CechNerve> {
    let report = validate_functor(x_prime, x, f);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    let mut levels = vec![CechLevel {
        level: 0,
        groupoid: x_prime.clone(),
        chains: x_prime.object_ids().map(|o| (vec![o], Vec::new())).collect(),
        tuples: x_prime.morphism_ids().map(|m| vec![m]).collect(),
        faces: vec![f.clone()],
    }];
    for k in 1..=n {
        let level = build_level(x_prime, x, f, k, &levels[k - 1], budget)?;
        levels.push(level);
    }
    Ok(CechNerve { levels })
}

fn build_level(
    xp: &FiniteGroupoid,
    x: &FiniteGroupoid,
    f: &Functor,
    k: usize,
    below: &CechLevel,
    budget: &mut Budget,
) -> Result<CechLevel> {
    // extend each chain of level k-1 by one more vertex and link
    let mut chains: Vec<(Vec<ObjId>, Vec<MorId>)> = Vec::new();
    for (verts, links) in &below.chains {
        let last = *verts.last().expect("nonempty chain");
        for v in xp.object_ids() {
            for &phi in x.hom(f.obj(last), f.obj(v)) {
                budget.spend(1)?;
                let mut vs = verts.clone();
                vs.push(v);
                let mut ls = links.clone();
                ls.push(phi);
                chains.push((vs, ls));
            }
        }
    }
    let index: HashMap<&(Vec<ObjId>, Vec<MorId>), usize> =
        chains.iter().enumerate().map(|(i, c)| (c, i)).collect();

    // morphisms out of each chain: one per tuple of morphisms out of its vertices
    let mut tuples: Vec<(usize, Vec<MorId>)> = Vec::new();
    let mut ends: Vec<usize> = Vec::new();
    for (i, (verts, links)) in chains.iter().enumerate() {
        let outs: Vec<Vec<MorId>> = verts
            .iter()
            .map(|&v| xp.morphism_ids().filter(|&m| xp.source(m) == v).collect())
            .collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            budget.spend(1)?;
            let alphas: Vec<MorId> = idx.iter().zip(&outs).map(|(&j, o)| o[j]).collect();
            let new_verts: Vec<ObjId> = alphas.iter().map(|&a| xp.target(a)).collect();
            let new_links: Vec<MorId> = (0..k)
                .map(|j| {
                    let back = f.mor(xp.inverse(alphas[j]));
                    x.comp(x.comp(f.mor(alphas[j + 1]), links[j]), back)
                })
                .collect();
            ends.push(index[&(new_verts, new_links)]);
            tuples.push((i, alphas));
            let mut p = 0;
            while p <= k {
                idx[p] += 1;
                if idx[p] < outs[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p > k {
                break;
            }
        }
    }
    let at: HashMap<(usize, &[MorId]), usize> = tuples
        .iter()
        .enumerate()
        .map(|(m, (i, a))| ((*i, a.as_slice()), m))
        .collect();
    let find = |src: usize, alphas: &[MorId]| MorId(at[&(src, alphas)]);

    let names: Vec<String> = chains
        .iter()
        .map(|(verts, links)| {
            let vs: Vec<&str> = verts.iter().map(|&v| xp.object_name(v)).collect();
            let ls: Vec<&str> = links.iter().map(|&l| x.morphism_name(l)).collect();
            format!("[{}|{}]", vs.join(","), ls.join(","))
        })
        .collect();
    let mor_names = tuples
        .iter()
        .zip(&ends)
        .map(|((i, alphas), &e)| {
            let a: Vec<&str> = alphas.iter().map(|&m| xp.morphism_name(m)).collect();
            (format!("[{}]@{}", a.join(","), names[*i]), ObjId(*i), ObjId(e))
        })
        .collect();
    let identities = chains
        .iter()
        .enumerate()
        .map(|(i, (verts, _))| {
            let ids: Vec<MorId> = verts.iter().map(|&v| xp.identity(v)).collect();
            find(i, &ids)
        })
        .collect();
    let cat = FiniteCategory::from_parts(names, mor_names, identities, |second, first| {
        let (src, a) = &tuples[first.0];
        let (_, b) = &tuples[second.0];
        let ba: Option<Vec<MorId>> = b.iter().zip(a).map(|(&bi, &ai)| xp.compose(bi, ai)).collect();
        at.get(&(*src, ba?.as_slice())).map(|&m| MorId(m))
    });
    let inverses = tuples
        .iter()
        .zip(&ends)
        .map(|((_, alphas), &e)| {
            let inv: Vec<MorId> = alphas.iter().map(|&a| xp.inverse(a)).collect();
            find(e, &inv)
        })
        .collect();
    let groupoid = FiniteGroupoid::new(cat, inverses);

    let below_index: HashMap<&(Vec<ObjId>, Vec<MorId>), usize> =
        below.chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let below_at: HashMap<(usize, &[MorId]), MorId> = below
        .tuples
        .iter()
        .enumerate()
        .map(|(m, t)| ((below.groupoid.source(MorId(m)).0, t.as_slice()), MorId(m)))
        .collect();
    let faces = (0..=k)
        .map(|i| {
            let face_chain = |(verts, links): &(Vec<ObjId>, Vec<MorId>)| {
                let mut vs = verts.clone();
                vs.remove(i);
                let ls: Vec<MorId> = if i == 0 {
                    links[1..].to_vec()
                } else if i == k {
                    links[..k - 1].to_vec()
                } else {
                    let mut ls = links[..i - 1].to_vec();
                    ls.push(x.comp(links[i], links[i - 1]));
                    ls.extend_from_slice(&links[i + 1..]);
                    ls
                };
                (vs, ls)
            };
            let objects: Vec<ObjId> = chains
                .iter()
                .map(|c| ObjId(below_index[&face_chain(c)]))
                .collect();
            let morphisms = tuples
                .iter()
                .map(|(src, alphas)| {
                    let mut a = alphas.clone();
                    a.remove(i);
                    below_at[&(objects[*src].0, a.as_slice())]
                })
                .collect();
            Functor { objects, morphisms }
        })
        .collect();
    Ok(CechLevel {
        level: k,
        groupoid,
        chains,
        tuples: tuples.into_iter().map(|(_, a)| a).collect(),
        faces,
    })
}

/// A failed simplicial identity `dᵢ∘d_j = d_{j-1}∘dᵢ` (`i < j`) between
/// `level` and `level - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialFailure {
    pub level: usize,
    pub i: usize,
    pub j: usize,
}

/// Checks every strict simplicial identity from level 2 upwards.
pub fn simplicial_identity_failures(nerve: &CechNerve) -> Vec<SimplicialFailure> {
    let mut out = Vec::new();
    for k in 2..nerve.levels.len() {
        let top = &nerve.levels[k];
        let mid = &nerve.levels[k - 1];
        for j in 1..=k {
            for i in 0..j {
                let lhs = mid.faces[i].compose(&top.faces[j]);
                let rhs = mid.faces[j - 1].compose(&top.faces[i]);
                if lhs != rhs {
                    out.push(SimplicialFailure { level: k, i, j });
                }
            }
        }
    }
    out
}

/// Components of `X'` modulo the relation generated by level 1, compared with
/// the components of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CechPi0Report {
    /// Classes of the coequalizer of `π₀(d₀), π₀(d₁): π₀(level 1) ⇉ π₀(X')`.
    pub coequalizer_classes: usize,
    /// Components of `X`.
    pub base_components: usize,
    /// The induced map from the coequalizer to `π₀(X)` is injective.
    pub injective: bool,
    /// The induced map is a bijection, i.e. `f` is an effective epimorphism.
    pub bijective: bool,
}

pub fn cech_pi0_check(nerve: &CechNerve, x: &FiniteGroupoid) -> Result<CechPi0Report> {
    let [l0, l1, ..] = nerve.levels.as_slice() else {
        return Err(Error::Precondition("the nerve needs levels 0 and 1".into()));
    };
    let (p0, p1, px) = (pi0(&l0.groupoid), pi0(&l1.groupoid), pi0(x));
    let mut uf = UnionFind::<usize>::new(p0.count());
    for block in &p1.blocks {
        let o = block[0];
        uf.union(p0.block(l1.faces[0].obj(o)), p0.block(l1.faces[1].obj(o)));
    }
    let mut class_image: HashMap<usize, usize> = HashMap::new();
    let mut injective = true;
    for (b, block) in p0.blocks.iter().enumerate() {
        let target = px.block(l0.faces[0].obj(block[0]));
        let class = uf.find(b);
        for (&c, &t) in &class_image {
            if t == target && c != class {
                injective = false;
            }
        }
        class_image.insert(class, target);
    }
    let classes = class_image.len();
    let mut hit: Vec<usize> = class_image.values().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    Ok(CechPi0Report {
        coequalizer_classes: classes,
        base_components: px.count(),
        injective,
        bijective: injective && hit.len() == px.count(),
    })
}
