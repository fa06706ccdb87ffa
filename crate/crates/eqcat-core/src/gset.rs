//! Finite G-sets as homomorphisms G → Σ_j: orbits, isotropy, orbit-type
//! decomposition, products, disjoint unions, restriction, fixed points, and
//! conjugacy classes of homomorphisms between finite groups.

use crate::error::{Error, Result};
use crate::group::{
    centralizer_of_hom, class_of_subgroup, subgroup_classes, FiniteGroup, Subgroup, SubgroupClass,
};
use crate::perm::Perm;
use serde::Deserialize;
use std::collections::BTreeMap;

/// A finite G-set: {0,…,j-1} with G acting through `action`, one permutation
/// per group element, validated to be a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGSet {
    pub group_name: String,
    pub size: usize,
    pub action: Vec<Perm>, // indexed by group element
}

impl FinGSet {
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g].apply(x)
    }

    /// Isotropy subgroup of the point x.
    pub fn isotropy(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        let m: Vec<usize> = (0..group.order()).filter(|&g| self.act(g, x) == x).collect();
        Subgroup { member_indices: m }
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut orbits = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..group.order()).map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }
}

/// Build and validate a G-set from one permutation per group element.
pub fn make_gset(group: &FiniteGroup, size: usize, action: Vec<Perm>) -> Result<FinGSet> {
    if action.len() != group.order() {
        return Err(Error::Parse(format!(
            "need {} permutations, got {}",
            group.order(),
            action.len()
        )));
    }
    for p in &action {
        if p.degree() != size {
            return Err(Error::Parse(format!(
                "permutation degree {} does not match size {size}",
                p.degree()
            )));
        }
    }
    if !action[group.identity_index].is_identity() {
        return Err(Error::NotAHomomorphism("identity acts nontrivially".into()));
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            if action[group.mul(a, b)] != action[a].compose(&action[b]) {
                return Err(Error::NotAHomomorphism(format!(
                    "({}, {})",
                    group.elements[a], group.elements[b]
                )));
            }
        }
    }
    Ok(FinGSet {
        group_name: group.name.clone(),
        size,
        action,
    })
}

/// The empty G-set.
pub fn empty_gset(group: &FiniteGroup) -> FinGSet {
    FinGSet {
        group_name: group.name.clone(),
        size: 0,
        action: vec![Perm::identity(0); group.order()],
    }
}

/// n points with trivial action (n = 1 is the one-point G-set ∗).
pub fn trivial_gset(group: &FiniteGroup, n: usize) -> FinGSet {
    FinGSet {
        group_name: group.name.clone(),
        size: n,
        action: vec![Perm::identity(n); group.order()],
    }
}

/// G acting on itself by left translation.
pub fn regular_gset(group: &FiniteGroup) -> FinGSet {
    let n = group.order();
    let action: Vec<Perm> = (0..n)
        .map(|g| {
            Perm::from_images((0..n).map(|x| group.mul(g, x)).collect()).expect("rows permute")
        })
        .collect();
    FinGSet {
        group_name: group.name.clone(),
        size: n,
        action,
    }
}

/// The orbit G/H: points are the left cosets of H in least-member order.
pub fn coset_gset(group: &FiniteGroup, h: &Subgroup) -> FinGSet {
    let cosets = crate::group::left_cosets(group, h, None);
    let coset_of = |x: usize| -> usize {
        cosets
            .iter()
            .position(|c| c.binary_search(&x).is_ok())
            .expect("cosets cover G")
    };
    let n = cosets.len();
    let action: Vec<Perm> = (0..group.order())
        .map(|g| {
            Perm::from_images(
                (0..n)
                    .map(|c| coset_of(group.mul(g, cosets[c][0])))
                    .collect(),
            )
            .expect("translation permutes cosets")
        })
        .collect();
    FinGSet {
        group_name: group.name.clone(),
        size: n,
        action,
    }
}

#[derive(Deserialize)]
struct GSetFile {
    group: String,
    size: usize,
    action: BTreeMap<String, Vec<usize>>,
}

/// Parse a G-set file: {"group": name, "size": j, "action": {elem: [1-based
/// images]}}. Elements missing from the map default to the identity only if
/// forced (the identity element itself); all others must be present.
pub fn load_gset(group: &FiniteGroup, content: &str) -> Result<FinGSet> {
    let f: GSetFile = serde_json::from_str(content).map_err(|e| Error::Parse(e.to_string()))?;
    if f.group != group.name {
        return Err(Error::GroupMismatch(f.group, group.name.clone()));
    }
    let mut action = Vec::with_capacity(group.order());
    for (i, name) in group.elements.iter().enumerate() {
        let images = match f.action.get(name) {
            Some(v) => {
                let mut zero = Vec::with_capacity(v.len());
                for &x in v {
                    if x == 0 || x > f.size {
                        return Err(Error::Parse(format!("point {x} out of range (1-based)")));
                    }
                    zero.push(x - 1);
                }
                Perm::from_images(zero)?
            }
            None if i == group.identity_index => Perm::identity(f.size),
            None => {
                return Err(Error::Parse(format!("no permutation given for element {name}")));
            }
        };
        action.push(images);
    }
    make_gset(group, f.size, action)
}

/// An equivariant map of G-sets given pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    pub source: FinGSet,
    pub target: FinGSet,
    pub values: Vec<usize>,
}

impl GMap {
    pub fn identity(a: &FinGSet) -> GMap {
        GMap {
            source: a.clone(),
            target: a.clone(),
            values: (0..a.size).collect(),
        }
    }

    pub fn is_equivariant(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| {
            (0..self.source.size)
                .all(|x| self.values[self.source.act(g, x)] == self.target.act(g, self.values[x]))
        })
    }
}

pub fn gmap(group: &FiniteGroup, source: &FinGSet, target: &FinGSet, values: Vec<usize>) -> Result<GMap> {
    if values.len() != source.size || values.iter().any(|&v| v >= target.size) {
        return Err(Error::Parse("map values out of range".into()));
    }
    let m = GMap {
        source: source.clone(),
        target: target.clone(),
        values,
    };
    if !m.is_equivariant(group) {
        return Err(Error::Invalid("map is not equivariant".into()));
    }
    Ok(m)
}

/// Multiset of (subgroup class index, count) for the orbits of A, classified
/// against `classes` = subgroup_classes(G).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTypeDecomposition {
    pub entries: BTreeMap<usize, usize>, // class index → orbit count
}

pub fn orbit_type(
    group: &FiniteGroup,
    classes: &[SubgroupClass],
    a: &FinGSet,
) -> OrbitTypeDecomposition {
    let mut entries = BTreeMap::new();
    for orbit in a.orbits(group) {
        let iso = a.isotropy(group, orbit[0]);
        let cls = class_of_subgroup(group, classes, &iso);
        *entries.entry(cls).or_insert(0) += 1;
    }
    OrbitTypeDecomposition { entries }
}

/// Equivariant bijection A → B if one exists. A ≅ B iff orbit types match;
/// the bijection is assembled orbit-by-orbit (matching isotropy classes and
/// transporting along group elements), so no factorial search is needed.
pub fn gset_iso(group: &FiniteGroup, a: &FinGSet, b: &FinGSet) -> Result<Option<GMap>> {
    if a.group_name != b.group_name {
        return Err(Error::GroupMismatch(a.group_name.clone(), b.group_name.clone()));
    }
    if a.size != b.size {
        return Ok(None);
    }
    let mut values = vec![usize::MAX; a.size];
    let mut b_used = vec![false; b.size];
    let b_orbits = b.orbits(group);
    let mut b_free: Vec<Option<Vec<usize>>> = b_orbits.into_iter().map(Some).collect();
    for orbit in a.orbits(group) {
        let x0 = orbit[0];
        let iso_a = a.isotropy(group, x0);
        // find an unused B-orbit and a base point with the same isotropy
        let mut matched = false;
        'outer: for slot in b_free.iter_mut() {
            let Some(borb) = slot else { continue };
            if borb.len() != orbit.len() {
                continue;
            }
            for &y0 in borb.iter() {
                if b.isotropy(group, y0) == iso_a {
                    // equivariant extension: g·x0 ↦ g·y0 is well defined
                    // because the isotropy groups agree on the nose
                    for g in 0..group.order() {
                        values[a.act(g, x0)] = b.act(g, y0);
                    }
                    for &y in borb.iter() {
                        b_used[y] = true;
                    }
                    *slot = None;
                    matched = true;
                    break 'outer;
                }
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    debug_assert!(values.iter().all(|&v| v != usize::MAX));
    let m = GMap {
        source: a.clone(),
        target: b.clone(),
        values,
    };
    debug_assert!(m.is_equivariant(group));
    Ok(Some(m))
}

pub fn disjoint_union(group: &FiniteGroup, a: &FinGSet, b: &FinGSet) -> Result<FinGSet> {
    if a.group_name != b.group_name {
        return Err(Error::GroupMismatch(a.group_name.clone(), b.group_name.clone()));
    }
    let n = a.size + b.size;
    let action: Vec<Perm> = (0..group.order())
        .map(|g| {
            let mut images = Vec::with_capacity(n);
            images.extend((0..a.size).map(|x| a.act(g, x)));
            images.extend((0..b.size).map(|x| a.size + b.act(g, x)));
            Perm::from_images(images).expect("union of permutations")
        })
        .collect();
    Ok(FinGSet {
        group_name: a.group_name.clone(),
        size: n,
        action,
    })
}

/// Product with diagonal action on lexicographically ordered pairs:
/// the pair (x,y) sits at index x·|B| + y.
pub fn product_gset(group: &FiniteGroup, a: &FinGSet, b: &FinGSet) -> Result<FinGSet> {
    if a.group_name != b.group_name {
        return Err(Error::GroupMismatch(a.group_name.clone(), b.group_name.clone()));
    }
    let n = a.size * b.size;
    let action: Vec<Perm> = (0..group.order())
        .map(|g| {
            let mut images = Vec::with_capacity(n);
            for x in 0..a.size {
                for y in 0..b.size {
                    images.push(a.act(g, x) * b.size + b.act(g, y));
                }
            }
            Perm::from_images(images).expect("product of permutations")
        })
        .collect();
    Ok(FinGSet {
        group_name: a.group_name.clone(),
        size: n,
        action,
    })
}

pub fn fixed_points(group: &FiniteGroup, a: &FinGSet, h: &Subgroup) -> Result<Vec<usize>> {
    if !h.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    Ok((0..a.size)
        .filter(|&x| h.member_indices.iter().all(|&g| a.act(g, x) == x))
        .collect())
}

/// The same points as an H-set, for H ≤ G given with its own group table.
/// `h_members` lists the indices of H inside G, in the element order of
/// `h_group` (so h_group.mul matches multiplication of the listed elements).
pub fn restrict(a: &FinGSet, h_group: &FiniteGroup, h_members: &[usize]) -> FinGSet {
    FinGSet {
        group_name: h_group.name.clone(),
        size: a.size,
        action: h_members.iter().map(|&g| a.action[g].clone()).collect(),
    }
}

/// Present a subgroup H ≤ G as a standalone group whose element i is
/// h.member_indices[i].
pub fn subgroup_as_group(group: &FiniteGroup, h: &Subgroup) -> FiniteGroup {
    let m = &h.member_indices;
    let pos = |x: usize| m.binary_search(&x).expect("closed");
    let table: Vec<Vec<usize>> = m
        .iter()
        .map(|&a| m.iter().map(|&b| pos(group.mul(a, b))).collect())
        .collect();
    let mut g = FiniteGroup {
        name: format!("{}<{}>", group.name, m.len()),
        elements: m.iter().map(|&i| group.elements[i].clone()).collect(),
        table,
        identity_index: pos(group.identity_index),
    };
    // rotate identity to index 0 if needed (identity 0 in G so pos(e) = 0
    // whenever e ∈ H is least, which holds since e = index 0 in G)
    debug_assert_eq!(g.identity_index, 0);
    g.identity_index = 0;
    g
}

/// All homomorphisms H → Π, as value vectors indexed by H's elements.
/// Enumerated by assigning images to a generating sequence and closing, so
/// the cost is |Π|^(#generators), not |Π|^|H|.
pub fn all_homs(h: &FiniteGroup, pi: &FiniteGroup) -> Vec<Vec<usize>> {
    // build a small generating sequence greedily
    let mut gens: Vec<usize> = Vec::new();
    let mut span = crate::group::generated_subgroup(h, &gens);
    while span.order() < h.order() {
        let next = (0..h.order()).find(|&x| !span.contains(x)).unwrap();
        gens.push(next);
        span = crate::group::generated_subgroup(h, &gens);
    }
    let mut out = Vec::new();
    let mut assignment = vec![0usize; gens.len()];
    enumerate_homs(h, pi, &gens, &mut assignment, 0, &mut out);
    out.sort();
    out.dedup();
    out
}

fn enumerate_homs(
    h: &FiniteGroup,
    pi: &FiniteGroup,
    gens: &[usize],
    assignment: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == gens.len() {
        if let Some(values) = close_hom(h, pi, gens, assignment) {
            out.push(values);
        }
        return;
    }
    for v in 0..pi.order() {
        assignment[depth] = v;
        enumerate_homs(h, pi, gens, assignment, depth + 1, out);
    }
}

/// Extend a generator assignment to a full homomorphism by word closure;
/// None if inconsistent.
fn close_hom(h: &FiniteGroup, pi: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut values: Vec<Option<usize>> = vec![None; h.order()];
    values[h.identity_index] = Some(pi.identity_index);
    for (&g, &im) in gens.iter().zip(images) {
        if let Some(prev) = values[g] {
            if prev != im {
                return None;
            }
        }
        values[g] = Some(im);
    }
    loop {
        let mut changed = false;
        for a in 0..h.order() {
            let Some(va) = values[a] else { continue };
            for b in 0..h.order() {
                let Some(vb) = values[b] else { continue };
                let ab = h.mul(a, b);
                let vab = pi.mul(va, vb);
                match values[ab] {
                    None => {
                        values[ab] = Some(vab);
                        changed = true;
                    }
                    Some(prev) if prev != vab => return None,
                    _ => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    let values: Vec<usize> = values.into_iter().collect::<Option<_>>()?;
    // final full verification
    for a in 0..h.order() {
        for b in 0..h.order() {
            if values[h.mul(a, b)] != pi.mul(values[a], values[b]) {
                return None;
            }
        }
    }
    Some(values)
}

/// One entry of H¹(H;Π): a conjugacy class of homomorphisms H → Π.
#[derive(Clone, Debug)]
pub struct HomClass {
    pub representative: Vec<usize>,
    pub class_size: usize,
    pub centralizer_order: usize,
}

/// All homomorphisms H → Π grouped under Π-conjugacy, with centralizer
/// orders |Π^α|. Classes ordered by lexicographic least representative.
pub fn hom_classes(h: &FiniteGroup, pi: &FiniteGroup) -> Vec<HomClass> {
    let homs = all_homs(h, pi);
    let mut remaining: std::collections::BTreeSet<Vec<usize>> = homs.into_iter().collect();
    let mut classes = Vec::new();
    let members: Vec<usize> = (0..h.order()).collect();
    while let Some(rep) = remaining.iter().next().cloned() {
        let mut class: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        for s in 0..pi.order() {
            let conj: Vec<usize> = rep
                .iter()
                .map(|&v| pi.mul(pi.mul(s, v), pi.inv(s)))
                .collect();
            class.insert(conj);
        }
        for c in &class {
            remaining.remove(c);
        }
        let rep_clone = rep.clone();
        let cent = centralizer_of_hom(h, &members, pi, &|x| rep_clone[x])
            .expect("enumerated homs are homomorphisms");
        classes.push(HomClass {
            representative: rep,
            class_size: class.len(),
            centralizer_order: cent.order(),
        });
    }
    classes
}

/// Number of isomorphism classes of j-element H-sets (oracle for |H¹(H;Σ_j)|):
/// counts multisets of orbit types with total size j.
pub fn count_hsets_of_size(group: &FiniteGroup, j: usize) -> usize {
    let classes = subgroup_classes(group);
    let orbit_sizes: Vec<usize> = classes
        .iter()
        .map(|c| group.order() / c.representative.order())
        .collect();
    // count multisets: iterate class by class
    fn rec(sizes: &[usize], remaining: usize) -> usize {
        if sizes.is_empty() {
            return usize::from(remaining == 0);
        }
        let mut total = 0;
        let mut used = 0;
        while used <= remaining {
            total += rec(&sizes[1..], remaining - used);
            used += sizes[0];
        }
        total
    }
    rec(&orbit_sizes, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::preset;

    fn c2() -> FiniteGroup {
        preset("C2").unwrap()
    }

    fn free_c2() -> FinGSet {
        let g = c2();
        make_gset(
            &g,
            2,
            vec![Perm::identity(2), Perm::transposition(2, 0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn make_and_reject() {
        let g = c2();
        assert_eq!(empty_gset(&g).size, 0);
        assert_eq!(free_c2().size, 2);
        // 3-cycle assigned to an order-2 generator is not a homomorphism
        let threecycle = Perm::from_images(vec![1, 2, 0]).unwrap();
        let r = make_gset(&g, 3, vec![Perm::identity(3), threecycle]);
        assert!(matches!(r, Err(Error::NotAHomomorphism(_))));
    }

    #[test]
    fn orbit_types() {
        let g = c2();
        let classes = subgroup_classes(&g);
        let a = disjoint_union(&g, &trivial_gset(&g, 2), &free_c2()).unwrap();
        let t = orbit_type(&g, &classes, &a);
        assert_eq!(t.entries.get(&1), Some(&2)); // two fixed points: class (G)
        assert_eq!(t.entries.get(&0), Some(&1)); // one free orbit: class (e)
        assert!(orbit_type(&g, &classes, &empty_gset(&g)).entries.is_empty());
        let s3 = preset("S3").unwrap();
        let cl3 = subgroup_classes(&s3);
        let t = orbit_type(&s3, &cl3, &regular_gset(&s3));
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.entries.get(&0), Some(&1));
    }

    #[test]
    fn iso_and_noniso() {
        let g = c2();
        let a = free_c2();
        assert!(gset_iso(&g, &a, &a).unwrap().is_some());
        let two_fixed = trivial_gset(&g, 2);
        assert!(gset_iso(&g, &a, &two_fixed).unwrap().is_none());
        // free orbit with the points relabeled: the swap works
        let b = make_gset(
            &g,
            2,
            vec![Perm::identity(2), Perm::transposition(2, 0, 1)],
        )
        .unwrap();
        let m = gset_iso(&g, &a, &b).unwrap().unwrap();
        assert!(m.is_equivariant(&g));
    }

    #[test]
    fn union_product_laws() {
        let g = c2();
        let classes = subgroup_classes(&g);
        let a = free_c2();
        let e = empty_gset(&g);
        let u = disjoint_union(&g, &a, &e).unwrap();
        assert!(gset_iso(&g, &a, &u).unwrap().is_some());
        // free ⊔ free = 2 free orbits
        let ff = disjoint_union(&g, &a, &a).unwrap();
        assert_eq!(orbit_type(&g, &classes, &ff).entries.get(&0), Some(&2));
        // free × free = 2 free orbits; free × fixed = 1 free orbit
        let p = product_gset(&g, &a, &a).unwrap();
        assert_eq!(orbit_type(&g, &classes, &p).entries.get(&0), Some(&2));
        let pf = product_gset(&g, &a, &trivial_gset(&g, 1)).unwrap();
        assert_eq!(orbit_type(&g, &classes, &pf).entries.get(&0), Some(&1));
        // A × ∗ ≅ A
        assert!(gset_iso(&g, &a, &pf).unwrap().is_some());
    }

    #[test]
    fn fixed_and_restrict() {
        let g = c2();
        let a = free_c2();
        assert_eq!(
            fixed_points(&g, &a, &Subgroup::trivial(&g)).unwrap(),
            vec![0, 1]
        );
        assert!(fixed_points(&g, &a, &Subgroup::full(&g)).unwrap().is_empty());
        // S3 on G/C3: C3 fixes both cosets
        let s3 = preset("S3").unwrap();
        let cl = subgroup_classes(&s3);
        let c3 = &cl[2].representative;
        assert_eq!(c3.order(), 3);
        let gc3 = coset_gset(&s3, c3);
        assert_eq!(gc3.size, 2);
        assert_eq!(fixed_points(&s3, &gc3, c3).unwrap().len(), 2);
        // Q8 regular restricted to center: 4 free C2-orbits
        let q8 = preset("Q8").unwrap();
        let qcl = subgroup_classes(&q8);
        let center = &qcl[1].representative;
        let zgrp = subgroup_as_group(&q8, center);
        let r = restrict(&regular_gset(&q8), &zgrp, &center.member_indices);
        let zcl = subgroup_classes(&zgrp);
        let t = orbit_type(&zgrp, &zcl, &r);
        assert_eq!(t.entries.get(&0), Some(&4));
    }

    #[test]
    fn hom_class_examples() {
        let triv = preset("trivial").unwrap();
        let s3 = crate::group::symmetric_group(3);
        let hc = hom_classes(&triv, &s3);
        assert_eq!(hc.len(), 1);
        assert_eq!(hc[0].centralizer_order, 6);

        let c2 = preset("C2").unwrap();
        let s2 = crate::group::symmetric_group(2);
        let hc = hom_classes(&c2, &s2);
        assert_eq!(hc.len(), 2);

        let hc = hom_classes(&c2, &s3);
        assert_eq!(hc.len(), 2);
        let mut cents: Vec<usize> = hc.iter().map(|c| c.centralizer_order).collect();
        cents.sort_unstable();
        assert_eq!(cents, vec![2, 6]);
    }

    #[test]
    fn h1_counts_match_hset_classification() {
        // |H¹(H;Σ_j)| = #iso classes of j-element H-sets
        for gname in ["trivial", "C2", "C3", "C4", "C2xC2", "S3"] {
            let h = preset(gname).unwrap();
            for j in 0..=4 {
                let pi = crate::group::symmetric_group(j);
                assert_eq!(
                    hom_classes(&h, &pi).len(),
                    count_hsets_of_size(&h, j),
                    "group {gname}, j = {j}"
                );
            }
        }
    }

    #[test]
    fn q8_restriction_obstruction() {
        // no 2-element Q8-set restricts to the free 2-element center-set
        let q8 = preset("Q8").unwrap();
        let s2 = crate::group::symmetric_group(2);
        let center = &subgroup_classes(&q8)[1].representative;
        let zgrp = subgroup_as_group(&q8, center);
        let zcl = subgroup_classes(&zgrp);
        for hom in all_homs(&q8, &s2) {
            let action: Vec<Perm> = hom
                .iter()
                .map(|&v| {
                    if v == 0 {
                        Perm::identity(2)
                    } else {
                        Perm::transposition(2, 0, 1)
                    }
                })
                .collect();
            let a = make_gset(&q8, 2, action).unwrap();
            let r = restrict(&a, &zgrp, &center.member_indices);
            let t = orbit_type(&zgrp, &zcl, &r);
            // never a single free orbit
            assert_ne!(t.entries.get(&0), Some(&1));
        }
    }
}
