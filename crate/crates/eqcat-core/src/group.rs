//! Finite groups as validated Cayley tables; subgroup lattice, conjugacy
//! classes of subgroups, normalizers, Weyl groups, and centralizers.

use crate::error::{Error, Result};
use crate::perm::SymmetricGroup;
use serde::Deserialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity_index: usize,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        let e = self.identity_index;
        (0..self.order())
            .find(|&b| self.table[a][b] == e)
            .expect("validated group has inverses")
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity_index {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    fn validate(&self) -> Result<()> {
        let n = self.order();
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("table dimensions do not match element count".into()));
        }
        let mut names = BTreeSet::new();
        for nm in &self.elements {
            if !names.insert(nm) {
                return Err(Error::Parse(format!("duplicate element name {nm}")));
            }
        }
        for row in &self.table {
            for &v in row {
                if v >= n {
                    return Err(Error::Parse(format!("table entry {v} out of range")));
                }
            }
        }
        let e = self.identity_index;
        for a in 0..n {
            if self.table[e][a] != a || self.table[a][e] != a {
                return Err(Error::NotAGroup {
                    axiom: "identity".into(),
                    witness: format!("{a}"),
                });
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.table[a][b] == e) {
                return Err(Error::NotAGroup {
                    axiom: "inverses".into(),
                    witness: format!("{a}"),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::NotAGroup {
                            axiom: "associativity".into(),
                            witness: format!("({a},{b},{c})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct GroupFile {
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

/// Parse and validate a group from its JSON file content.
pub fn load_group(content: &str) -> Result<FiniteGroup> {
    let f: GroupFile =
        serde_json::from_str(content).map_err(|e| Error::Parse(e.to_string()))?;
    let g = FiniteGroup {
        name: f.name,
        elements: f.elements,
        table: f.table,
        identity_index: 0,
    };
    g.validate()?;
    Ok(g)
}

/// Build a validated group directly from a table (identity at index 0).
pub fn group_from_table(name: &str, elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let g = FiniteGroup {
        name: name.into(),
        elements,
        table,
        identity_index: 0,
    };
    g.validate()?;
    Ok(g)
}

fn cyclic(name: &str, n: usize) -> FiniteGroup {
    let elements: Vec<String> = (0..n)
        .map(|i| if i == 0 { "e".into() } else { format!("g{i}") })
        .collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup {
        name: name.into(),
        elements,
        table,
        identity_index: 0,
    }
}

fn klein_four() -> FiniteGroup {
    let elements = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    let table = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    FiniteGroup {
        name: "C2xC2".into(),
        elements,
        table,
        identity_index: 0,
    }
}

fn quaternion8() -> FiniteGroup {
    // elements as (basis 0..4 = 1,i,j,k; sign 0/+ 1/-), index = basis*2 + sign
    // ordered so the identity (+1) is index 0
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    let idx = |basis: usize, neg: bool| basis * 2 + usize::from(neg);
    let mul = |a: usize, b: usize| -> usize {
        let (ba, na) = (a / 2, a % 2 == 1);
        let (bb, nb) = (b / 2, b % 2 == 1);
        // quaternion basis multiplication: (basis, extra sign)
        let table: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let (basis, extra) = table[ba][bb];
        idx(basis, na ^ nb ^ extra)
    };
    let table: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup {
        name: "Q8".into(),
        elements: names.iter().map(|s| s.to_string()).collect(),
        table,
        identity_index: 0,
    }
}

/// The symmetric group Σ_n as a FiniteGroup. The element at index i is the
/// i-th element of `SymmetricGroup::new(n).elements` (identity first, then
/// sorted by image vector) — callers rely on this index correspondence.
pub fn symmetric_group(n: usize) -> FiniteGroup {
    let s = SymmetricGroup::new(n);
    let elements: Vec<String> = s
        .elements
        .iter()
        .map(|p| {
            let v: Vec<String> = p.images().iter().map(|i| (i + 1).to_string()).collect();
            v.join("")
        })
        .collect();
    let m = s.order();
    let table: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).map(|b| s.mul_idx(a, b)).collect())
        .collect();
    FiniteGroup {
        name: format!("S{n}"),
        elements,
        table,
        identity_index: 0,
    }
}

/// Built-in presets by name.
pub fn preset(name: &str) -> Option<FiniteGroup> {
    match name {
        "trivial" => Some(cyclic("trivial", 1)),
        "C2" => Some(cyclic("C2", 2)),
        "C3" => Some(cyclic("C3", 3)),
        "C4" => Some(cyclic("C4", 4)),
        "C2xC2" => Some(klein_four()),
        "S3" => Some(symmetric_group(3)),
        "Q8" => Some(quaternion8()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    pub member_indices: Vec<usize>, // sorted
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.member_indices.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member_indices.binary_search(&x).is_ok()
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup {
            member_indices: vec![g.identity_index],
        }
    }

    pub fn full(g: &FiniteGroup) -> Subgroup {
        Subgroup {
            member_indices: (0..g.order()).collect(),
        }
    }

    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        if !self.contains(g.identity_index) {
            return false;
        }
        for &a in &self.member_indices {
            if !self.contains(g.inv(a)) {
                return false;
            }
            for &b in &self.member_indices {
                if !self.contains(g.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Closure of a generating set under multiplication and inverse.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut members: BTreeSet<usize> = [g.identity_index].into();
    let mut frontier: Vec<usize> = gens.to_vec();
    while let Some(x) = frontier.pop() {
        if members.insert(x) {
            frontier.push(g.inv(x));
            for &m in members.clone().iter() {
                frontier.push(g.mul(x, m));
                frontier.push(g.mul(m, x));
            }
        }
    }
    Subgroup {
        member_indices: members.into_iter().collect(),
    }
}

/// Every subgroup of G: closures of all ≤2-element generating sets, then a
/// fixpoint sweep closing the collection under pairwise joins.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(Subgroup::trivial(g).member_indices);
    for a in 0..n {
        found.insert(generated_subgroup(g, &[a]).member_indices);
        for b in (a + 1)..n {
            found.insert(generated_subgroup(g, &[a, b]).member_indices);
        }
    }
    loop {
        let snapshot: Vec<Vec<usize>> = found.iter().cloned().collect();
        let before = found.len();
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let mut gens = snapshot[i].clone();
                gens.extend_from_slice(&snapshot[j]);
                found.insert(generated_subgroup(g, &gens).member_indices);
            }
        }
        if found.len() == before {
            break;
        }
    }
    found
        .into_iter()
        .map(|member_indices| Subgroup { member_indices })
        .collect()
}

pub fn conjugate_subgroup(g: &FiniteGroup, x: usize, h: &Subgroup) -> Subgroup {
    let mut m: Vec<usize> = h.member_indices.iter().map(|&a| g.conjugate(x, a)).collect();
    m.sort_unstable();
    Subgroup { member_indices: m }
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let m: Vec<usize> = (0..g.order())
        .filter(|&x| conjugate_subgroup(g, x, h) == *h)
        .collect();
    Subgroup { member_indices: m }
}

pub fn centralizer_of_subgroup(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let m: Vec<usize> = (0..g.order())
        .filter(|&x| h.member_indices.iter().all(|&a| g.mul(x, a) == g.mul(a, x)))
        .collect();
    Subgroup { member_indices: m }
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    normalizer(g, h).order() == g.order()
}

/// Left cosets of H in G (or in the subgroup `within` when given), each
/// sorted, listed in order of least member. The identity coset comes first.
pub fn left_cosets(g: &FiniteGroup, h: &Subgroup, within: Option<&Subgroup>) -> Vec<Vec<usize>> {
    let ambient: Vec<usize> = match within {
        Some(s) => s.member_indices.clone(),
        None => (0..g.order()).collect(),
    };
    let mut seen = vec![false; g.order()];
    let mut cosets = Vec::new();
    for &x in &ambient {
        if seen[x] {
            continue;
        }
        let mut coset: Vec<usize> = h.member_indices.iter().map(|&a| g.mul(x, a)).collect();
        coset.sort_unstable();
        for &y in &coset {
            seen[y] = true;
        }
        cosets.push(coset);
    }
    cosets.sort();
    cosets
}

/// Quotient N/H for H normal in the subgroup N of G. Elements are cosets,
/// named after their least representative; the identity coset is index 0.
pub fn quotient_group(g: &FiniteGroup, n_sub: &Subgroup, h: &Subgroup) -> Result<FiniteGroup> {
    for &a in &h.member_indices {
        if !n_sub.contains(a) {
            return Err(Error::NotASubgroup);
        }
    }
    for &x in &n_sub.member_indices {
        if conjugate_subgroup(g, x, h) != *h {
            return Err(Error::Invalid(format!(
                "subgroup not normal in ambient: conjugation by {x} moves it"
            )));
        }
    }
    let cosets = left_cosets(g, h, Some(n_sub));
    let coset_of = |x: usize| -> usize {
        cosets
            .iter()
            .position(|c| c.binary_search(&x).is_ok())
            .expect("element lies in some coset")
    };
    let m = cosets.len();
    let table: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| coset_of(g.mul(cosets[a][0], cosets[b][0])))
                .collect()
        })
        .collect();
    let elements: Vec<String> = cosets
        .iter()
        .map(|c| format!("{}H", g.elements[c[0]]))
        .collect();
    let q = FiniteGroup {
        name: format!("{}/{}", g.name, h.order()),
        elements,
        table,
        identity_index: 0,
    };
    q.validate()?;
    Ok(q)
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
    pub normalizer: Subgroup,
    pub weyl: FiniteGroup,
}

/// Conjugacy classes of subgroups, ordered by subgroup order ascending, ties
/// broken by lexicographic representative. This ordering is part of the
/// public contract: Burnside vectors are indexed by it.
pub fn subgroup_classes(g: &FiniteGroup) -> Vec<SubgroupClass> {
    let subs = all_subgroups(g);
    let mut remaining: BTreeSet<Vec<usize>> = subs.iter().map(|s| s.member_indices.clone()).collect();
    let mut classes = Vec::new();
    while let Some(first) = remaining.iter().next().cloned() {
        let h = Subgroup {
            member_indices: first,
        };
        let mut members: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..g.order() {
            members.insert(conjugate_subgroup(g, x, &h).member_indices);
        }
        for m in &members {
            remaining.remove(m);
        }
        let members: Vec<Subgroup> = members
            .into_iter()
            .map(|member_indices| Subgroup { member_indices })
            .collect();
        let representative = members[0].clone();
        let norm = normalizer(g, &representative);
        let weyl = quotient_group(g, &norm, &representative)
            .expect("representative is normal in its normalizer");
        classes.push(SubgroupClass {
            representative,
            members,
            normalizer: norm,
            weyl,
        });
    }
    classes.sort_by(|a, b| {
        (a.representative.order(), &a.representative.member_indices)
            .cmp(&(b.representative.order(), &b.representative.member_indices))
    });
    classes
}

/// Index of the class containing H (up to conjugacy) in `classes`.
pub fn class_of_subgroup(g: &FiniteGroup, classes: &[SubgroupClass], h: &Subgroup) -> usize {
    for (i, c) in classes.iter().enumerate() {
        if c.members.iter().any(|m| m == h) {
            return i;
        }
    }
    // fall back to explicit conjugation in case h was built independently
    for (i, c) in classes.iter().enumerate() {
        if c.representative.order() == h.order()
            && (0..g.order()).any(|x| conjugate_subgroup(g, x, h) == c.representative)
        {
            return i;
        }
    }
    panic!("subgroup not classified");
}

/// Check that `hom` (element index of H → element index of Pi, on the listed
/// H-elements) is a homomorphism with respect to both tables.
pub fn is_homomorphism(
    h_group: &FiniteGroup,
    h_members: &[usize],
    pi: &FiniteGroup,
    hom: &dyn Fn(usize) -> usize,
) -> Option<(usize, usize)> {
    for &a in h_members {
        for &b in h_members {
            if hom(h_group.mul(a, b)) != pi.mul(hom(a), hom(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Π^α = {σ ∈ Π : σ α(h) = α(h) σ for all h ∈ H}, for a homomorphism α
/// given by its values on the members of H (a subgroup of some group).
pub fn centralizer_of_hom(
    h_group: &FiniteGroup,
    h_members: &[usize],
    pi: &FiniteGroup,
    alpha: &dyn Fn(usize) -> usize,
) -> Result<Subgroup> {
    if let Some((a, b)) = is_homomorphism(h_group, h_members, pi, alpha) {
        return Err(Error::NotAHomomorphism(format!("({a},{b})")));
    }
    let m: Vec<usize> = (0..pi.order())
        .filter(|&s| {
            h_members
                .iter()
                .all(|&h| pi.mul(s, alpha(h)) == pi.mul(alpha(h), s))
        })
        .collect();
    Ok(Subgroup { member_indices: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_and_validate() {
        let g = load_group(r#"{"name":"t","elements":["e"],"table":[[0]]}"#).unwrap();
        assert_eq!(g.order(), 1);
        let g = load_group(r#"{"name":"z2","elements":["e","a"],"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.order(), 2);
        // a magma failing associativity is rejected with the axiom named
        let bad = load_group(
            r#"{"name":"bad","elements":["e","a","b"],"table":[[0,1,2],[1,2,0],[2,1,0]]}"#,
        );
        match bad {
            Err(Error::NotAGroup { axiom, .. }) => {
                assert!(axiom == "associativity" || axiom == "inverses")
            }
            other => panic!("expected NotAGroup, got {other:?}"),
        }
    }

    #[test]
    fn presets_are_groups() {
        for name in ["trivial", "C2", "C3", "C4", "S3", "Q8", "C2xC2"] {
            let g = preset(name).unwrap();
            g.validate().unwrap();
        }
        assert_eq!(preset("Q8").unwrap().element_order(2), 4); // i has order 4
        assert_eq!(preset("Q8").unwrap().element_order(1), 2); // -1 has order 2
    }

    #[test]
    fn subgroup_classes_c2() {
        let g = preset("C2").unwrap();
        let classes = subgroup_classes(&g);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].representative.order(), 1);
        assert_eq!(classes[1].representative.order(), 2);
    }

    #[test]
    fn subgroup_classes_s3() {
        let g = preset("S3").unwrap();
        let classes = subgroup_classes(&g);
        assert_eq!(classes.len(), 4);
        let orders: Vec<usize> = classes.iter().map(|c| c.representative.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        let weyl: Vec<usize> = classes.iter().map(|c| c.weyl.order()).collect();
        assert_eq!(weyl, vec![6, 1, 2, 1]);
    }

    #[test]
    fn subgroup_classes_q8() {
        let g = preset("Q8").unwrap();
        let classes = subgroup_classes(&g);
        assert_eq!(classes.len(), 6);
        let orders: Vec<usize> = classes.iter().map(|c| c.representative.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
        // center is the unique order-2 subgroup; the three order-4 subgroups
        // are each their own class (all normal)
        for c in &classes {
            assert_eq!(c.members.len(), 1);
        }
    }

    #[test]
    fn weyl_and_normalizer_consistency() {
        for name in ["C4", "S3", "Q8", "C2xC2"] {
            let g = preset(name).unwrap();
            for c in subgroup_classes(&g) {
                assert_eq!(g.order() % c.normalizer.order(), 0);
                assert_eq!(
                    c.weyl.order() * c.representative.order(),
                    c.normalizer.order()
                );
                // closure of each class under conjugation
                for m in &c.members {
                    for x in 0..g.order() {
                        let cm = conjugate_subgroup(&g, x, m);
                        assert!(c.members.iter().any(|s| *s == cm));
                    }
                }
            }
        }
    }

    #[test]
    fn centralizers() {
        let pi3 = symmetric_group(3);
        let c2 = preset("C2").unwrap();
        let members = [0usize, 1];
        // trivial hom: centralizer is all of Π
        let triv = centralizer_of_hom(&c2, &members, &pi3, &|_| 0).unwrap();
        assert_eq!(triv.order(), 6);
        // generator ↦ a transposition: centralizer has order 2
        let s = SymmetricGroup::new(3);
        let t = crate::perm::Perm::transposition(3, 0, 1);
        let ti = s.index_of(&t);
        let alpha = move |h: usize| if h == 0 { 0 } else { ti };
        let c = centralizer_of_hom(&c2, &members, &pi3, &alpha).unwrap();
        assert_eq!(c.order(), 2);
        // non-homomorphism rejected
        let pi2 = symmetric_group(2);
        let bad = centralizer_of_hom(&preset("C3").unwrap(), &[0, 1, 2], &pi2, &|h| {
            usize::from(h != 0)
        });
        assert!(matches!(bad, Err(Error::NotAHomomorphism(_))));
    }

    #[test]
    fn quotients() {
        let g = preset("Q8").unwrap();
        let classes = subgroup_classes(&g);
        // Q8 / center ≅ C2 × C2
        let center = &classes[1].representative;
        assert_eq!(center.order(), 2);
        let q = quotient_group(&g, &Subgroup::full(&g), center).unwrap();
        assert_eq!(q.order(), 4);
        assert!((0..4).all(|a| q.mul(a, a) == 0));
    }

    #[test]
    fn deterministic_ordering() {
        let g = preset("S3").unwrap();
        let a = subgroup_classes(&g);
        let b = subgroup_classes(&g);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.representative, y.representative);
            assert_eq!(x.members, y.members);
        }
    }
}
