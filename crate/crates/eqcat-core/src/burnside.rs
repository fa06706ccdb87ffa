//! The Burnside ring A(G): classes of finite G-sets, multiplication via
//! products, the table of marks, and the π₀-level rank bookkeeping of the
//! fixed-point splitting with an independent brute-force oracle.

use crate::error::{Error, Result};
use crate::group::{subgroup_classes, FiniteGroup, SubgroupClass};
use crate::gset::{coset_gset, fixed_points, orbit_type, product_gset, FinGSet};
use crate::report::Report;

/// An element of A(G): integer coefficients in subgroup-class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    pub group_name: String,
    pub coeffs: Vec<i64>,
}

/// The class [A] ∈ A(G): coefficient at (H) = number of orbits of type (H).
pub fn burnside_class(group: &FiniteGroup, classes: &[SubgroupClass], a: &FinGSet) -> BurnsideElement {
    let dec = orbit_type(group, classes, a);
    let mut coeffs = vec![0i64; classes.len()];
    for (&cls, &count) in &dec.entries {
        coeffs[cls] = count as i64;
    }
    BurnsideElement {
        group_name: group.name.clone(),
        coeffs,
    }
}

pub fn burnside_add(a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
    if a.group_name != b.group_name {
        return Err(Error::GroupMismatch(a.group_name.clone(), b.group_name.clone()));
    }
    Ok(BurnsideElement {
        group_name: a.group_name.clone(),
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    })
}

/// Basis products [G/H]·[G/K] = [G/H × G/K], precomputed by orbit sweep.
pub fn basis_products(group: &FiniteGroup, classes: &[SubgroupClass]) -> Result<Vec<Vec<BurnsideElement>>> {
    let orbits: Vec<FinGSet> = classes
        .iter()
        .map(|c| coset_gset(group, &c.representative))
        .collect();
    let mut table = Vec::with_capacity(classes.len());
    for oi in &orbits {
        let mut row = Vec::with_capacity(classes.len());
        for oj in &orbits {
            let prod = product_gset(group, oi, oj)?;
            row.push(burnside_class(group, classes, &prod));
        }
        table.push(row);
    }
    Ok(table)
}

/// Bilinear extension of the basis products.
pub fn burnside_mul(
    group: &FiniteGroup,
    classes: &[SubgroupClass],
    a: &BurnsideElement,
    b: &BurnsideElement,
) -> Result<BurnsideElement> {
    if a.group_name != b.group_name {
        return Err(Error::GroupMismatch(a.group_name.clone(), b.group_name.clone()));
    }
    let table = basis_products(group, classes)?;
    let mut coeffs = vec![0i64; classes.len()];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.coeffs.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            for (k, c) in table[i][j].coeffs.iter().enumerate() {
                coeffs[k] += ai * bj * c;
            }
        }
    }
    Ok(BurnsideElement {
        group_name: a.group_name.clone(),
        coeffs,
    })
}

/// m[(H)][(K)] = |(G/H)^K| in canonical class order.
pub fn table_of_marks(group: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let classes = subgroup_classes(group);
    let mut m = Vec::with_capacity(classes.len());
    for h in &classes {
        let gh = coset_gset(group, &h.representative);
        let mut row = Vec::with_capacity(classes.len());
        for k in &classes {
            row.push(fixed_points(group, &gh, &k.representative)?.len());
        }
        m.push(row);
    }
    Ok(m)
}

/// Mark vector of an element: linear extension of the rows of the table.
pub fn marks_of(
    group: &FiniteGroup,
    classes: &[SubgroupClass],
    a: &BurnsideElement,
) -> Result<Vec<i64>> {
    let table = table_of_marks(group)?;
    let mut out = vec![0i64; classes.len()];
    for (i, &c) in a.coeffs.iter().enumerate() {
        for k in 0..classes.len() {
            out[k] += c * table[i][k] as i64;
        }
    }
    Ok(out)
}

/// π₀-level ranks of the fixed-point splitting over X: rank at (H) =
/// |X^H / WH|, plus an independent oracle that classifies G-orbits over X
/// by brute-force equivariant-automorphism sweeps (no Weyl-group formula).
pub fn tom_dieck_pi0(
    group: &FiniteGroup,
    x: &FinGSet,
) -> Result<(Vec<usize>, usize, Report)> {
    let classes = subgroup_classes(group);
    let mut report = Report::new();

    // rank formula: WH-orbits on X^H, WH realized by normalizer translation
    let mut ranks = Vec::with_capacity(classes.len());
    for class in &classes {
        let fixed = fixed_points(group, x, &class.representative)?;
        let mut seen: Vec<usize> = Vec::new();
        let mut orbit_count = 0usize;
        for &pt in &fixed {
            if seen.contains(&pt) {
                continue;
            }
            orbit_count += 1;
            for &n in &class.normalizer.member_indices {
                let y = x.act(n, pt);
                if !seen.contains(&y) {
                    seen.push(y);
                }
            }
        }
        ranks.push(orbit_count);
    }
    let total: usize = ranks.iter().sum();

    // oracle: classify equivariant maps G/H → X up to isomorphism over X.
    // A map is determined by the H-fixed image point of the base coset;
    // two maps are isomorphic over X iff some equivariant bijection of G/H
    // carries one to the other — enumerated concretely from the G-set.
    let mut oracle_ranks = Vec::with_capacity(classes.len());
    for class in &classes {
        let gh = coset_gset(group, &class.representative);
        let base = 0usize; // the coset eH
        debug_assert!(class
            .representative
            .member_indices
            .iter()
            .all(|&h| gh.act(h, base) == base));
        let maps = fixed_points(group, x, &class.representative)?;
        // equivariant bijections φ: G/H → G/H ↔ H-fixed points b of G/H
        // with g·base ↦ g·b (well defined, bijective by orbit count)
        let autos: Vec<Vec<usize>> = fixed_points(group, &gh, &class.representative)?
            .into_iter()
            .filter_map(|b| {
                let mut values = vec![usize::MAX; gh.size];
                for g in 0..group.order() {
                    values[gh.act(g, base)] = gh.act(g, b);
                }
                let mut hit = vec![false; gh.size];
                for &v in &values {
                    hit[v] = true;
                }
                hit.iter().all(|&h| h).then_some(values)
            })
            .collect();
        // p_b(g·base) = g·x_b; φ with φ(base) = b transports p ↦ p∘φ, so
        // the map classified by x is carried to the one classified by the
        // point p(φ(base))
        let mut remaining: Vec<usize> = maps.clone();
        let mut count = 0usize;
        while let Some(&pt) = remaining.first() {
            count += 1;
            let mut orbit = vec![pt];
            for phi in &autos {
                // the composite map sends base ↦ p(φ(base)); recover the
                // classifying point from φ(base) = g·base via g·x
                let b = phi[base];
                for g in 0..group.order() {
                    if gh.act(g, base) == b {
                        let y = x.act(g, pt);
                        if !orbit.contains(&y) {
                            orbit.push(y);
                        }
                        break;
                    }
                }
            }
            remaining.retain(|p| !orbit.contains(p));
        }
        oracle_ranks.push(count);
    }

    let domain = format!("G = {}, |X| = {}", group.name, x.size);
    if ranks != oracle_ranks {
        report.record(
            "splitting ranks = brute-force classification of orbits over X",
            &domain,
            Some(format!("{ranks:?} vs oracle {oracle_ranks:?}")),
        );
        return Err(Error::CrossCheckFailure(format!(
            "rank formula {ranks:?} disagrees with orbit-over-X oracle {oracle_ranks:?}"
        )));
    }
    report.record(
        "splitting ranks = brute-force classification of orbits over X",
        &domain,
        None,
    );
    Ok((ranks, total, report))
}

/// The center of a group as a subgroup.
pub fn center(group: &FiniteGroup) -> crate::group::Subgroup {
    let members: Vec<usize> = (0..group.order())
        .filter(|&z| (0..group.order()).all(|g| group.mul(z, g) == group.mul(g, z)))
        .collect();
    crate::group::Subgroup {
        member_indices: members,
    }
}

/// No 2-element Q₈-set restricts to the free 2-element set of the center:
/// every action of Q₈ on 2 points kills the center (it lies in the
/// commutator subgroup), while the free center-set exists on its own.
pub fn q8_center_obstruction() -> Result<Report> {
    let g = crate::group::preset("Q8")
        .ok_or_else(|| Error::Invalid("Q8 preset missing".into()))?;
    let z = center(&g);
    let mut report = Report::new();
    if z.order() != 2 {
        return Err(Error::CrossCheckFailure(format!(
            "Q8 center should have order 2, found {}",
            z.order()
        )));
    }
    let z_group = crate::gset::subgroup_as_group(&g, &z);

    // the free center-set on 2 points exists (positive control)
    let free = crate::gset::regular_gset(&z_group);
    let all_free = (0..free.size).all(|p| free.isotropy(&z_group, p).order() == 1);
    report.record(
        "free 2-element center-set exists",
        "regular Z(Q8)-set",
        if all_free { None } else { Some("regular set not free".into()) },
    );

    // every 2-element Q8-set restricts to a non-free center-set
    let s2 = crate::group::symmetric_group(2);
    let homs = crate::gset::all_homs(&g, &s2);
    let mut bad = None;
    let z_pos: Vec<usize> = z.member_indices.clone();
    for hom in &homs {
        let action: Vec<crate::perm::Perm> = (0..g.order())
            .map(|gi| crate::perm::SymmetricGroup::new(2).elements[hom[gi]].clone())
            .collect();
        let a = FinGSet {
            group_name: g.name.clone(),
            size: 2,
            action,
        };
        let restricted = crate::gset::restrict(&a, &z_group, &z_pos);
        let is_free =
            (0..restricted.size).all(|p| restricted.isotropy(&z_group, p).order() == 1);
        if is_free {
            bad = Some(format!("hom with values {hom:?} gives a free restriction"));
            break;
        }
    }
    report.record(
        "no 2-element Q8-set restricts to the free center-set",
        &format!("all {} actions of Q8 on 2 points", homs.len()),
        bad,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::preset;
    use crate::gset::{empty_gset, regular_gset, trivial_gset};

    #[test]
    fn class_examples() {
        let g = preset("C2").unwrap();
        let classes = subgroup_classes(&g);
        assert_eq!(
            burnside_class(&g, &classes, &empty_gset(&g)).coeffs,
            vec![0, 0]
        );
        assert_eq!(
            burnside_class(&g, &classes, &regular_gset(&g)).coeffs,
            vec![1, 0]
        );
        assert_eq!(
            burnside_class(&g, &classes, &trivial_gset(&g, 2)).coeffs,
            vec![0, 2]
        );
    }

    #[test]
    fn mul_examples() {
        let g = preset("C2").unwrap();
        let classes = subgroup_classes(&g);
        let free = burnside_class(&g, &classes, &regular_gset(&g));
        let sq = burnside_mul(&g, &classes, &free, &free).unwrap();
        assert_eq!(sq.coeffs, vec![2, 0]); // [G/e]² = 2[G/e]
        // [G/G] is the unit
        let unit = BurnsideElement {
            group_name: g.name.clone(),
            coeffs: vec![0, 1],
        };
        assert_eq!(burnside_mul(&g, &classes, &unit, &free).unwrap(), free);

        // S3: [G/C2]·[G/C3] = [G/e]
        let s3 = preset("S3").unwrap();
        let cl = subgroup_classes(&s3);
        let i2 = cl.iter().position(|c| c.representative.order() == 2).unwrap();
        let i3 = cl.iter().position(|c| c.representative.order() == 3).unwrap();
        let mut a = BurnsideElement {
            group_name: s3.name.clone(),
            coeffs: vec![0; cl.len()],
        };
        let mut b = a.clone();
        a.coeffs[i2] = 1;
        b.coeffs[i3] = 1;
        let prod = burnside_mul(&s3, &cl, &a, &b).unwrap();
        let mut expect = vec![0; cl.len()];
        expect[0] = 1; // class order: trivial subgroup first
        assert_eq!(prod.coeffs, expect);
    }

    #[test]
    fn mul_ring_axioms_small_groups() {
        for name in ["trivial", "C2", "C3", "C4", "C2xC2", "S3", "Q8"] {
            let g = preset(name).unwrap();
            let classes = subgroup_classes(&g);
            let n = classes.len();
            let basis: Vec<BurnsideElement> = (0..n)
                .map(|i| {
                    let mut coeffs = vec![0; n];
                    coeffs[i] = 1;
                    BurnsideElement {
                        group_name: g.name.clone(),
                        coeffs,
                    }
                })
                .collect();
            let unit = basis
                .iter()
                .find(|_| true)
                .map(|_| {
                    let i = classes
                        .iter()
                        .position(|c| c.representative.order() == g.order())
                        .unwrap();
                    basis[i].clone()
                })
                .unwrap();
            for a in &basis {
                assert_eq!(&burnside_mul(&g, &classes, &unit, a).unwrap(), a);
                assert_eq!(&burnside_mul(&g, &classes, a, &unit).unwrap(), a);
                for b in &basis {
                    let ab = burnside_mul(&g, &classes, a, b).unwrap();
                    let ba = burnside_mul(&g, &classes, b, a).unwrap();
                    assert_eq!(ab, ba);
                    for c in &basis {
                        let l = burnside_mul(&g, &classes, &ab, c).unwrap();
                        let bc = burnside_mul(&g, &classes, b, c).unwrap();
                        let r = burnside_mul(&g, &classes, a, &bc).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn marks_examples_and_shape() {
        let g = preset("trivial").unwrap();
        assert_eq!(table_of_marks(&g).unwrap(), vec![vec![1]]);
        let g = preset("C2").unwrap();
        assert_eq!(table_of_marks(&g).unwrap(), vec![vec![2, 0], vec![1, 1]]);
        for name in ["C3", "C4", "C2xC2", "S3", "Q8"] {
            let g = preset(name).unwrap();
            let classes = subgroup_classes(&g);
            let m = table_of_marks(&g).unwrap();
            for (i, row) in m.iter().enumerate() {
                // lower triangular with diagonal |WH|
                assert_eq!(row[i], classes[i].weyl.order());
                assert!(row[i] > 0);
                for j in i + 1..row.len() {
                    assert_eq!(row[j], 0, "{name} m[{i}][{j}]");
                }
            }
        }
    }

    #[test]
    fn marks_respect_products() {
        for name in ["C2", "C3", "C4", "C2xC2", "S3", "Q8"] {
            let g = preset(name).unwrap();
            let classes = subgroup_classes(&g);
            let n = classes.len();
            for i in 0..n {
                for j in 0..n {
                    let mut a = BurnsideElement {
                        group_name: g.name.clone(),
                        coeffs: vec![0; n],
                    };
                    let mut b = a.clone();
                    a.coeffs[i] = 1;
                    b.coeffs[j] = 1;
                    let prod = burnside_mul(&g, &classes, &a, &b).unwrap();
                    let ma = marks_of(&g, &classes, &a).unwrap();
                    let mb = marks_of(&g, &classes, &b).unwrap();
                    let mp = marks_of(&g, &classes, &prod).unwrap();
                    for k in 0..n {
                        assert_eq!(mp[k], ma[k] * mb[k]);
                    }
                }
            }
        }
    }

    #[test]
    fn tom_dieck_totals() {
        let expected = [
            ("C2", 2usize),
            ("C3", 2),
            ("C4", 3),
            ("C2xC2", 5),
            ("S3", 4),
            ("Q8", 6),
        ];
        for (name, want) in expected {
            let g = preset(name).unwrap();
            let pt = trivial_gset(&g, 1);
            let (_, total, report) = tom_dieck_pi0(&g, &pt).unwrap();
            assert!(report.all_pass(), "{name}: {report}");
            assert_eq!(total, want, "{name}");
            // X = ∗ total = number of subgroup classes
            assert_eq!(total, subgroup_classes(&g).len());
            // X = ∅ → rank 0
            let (_, t0, r0) = tom_dieck_pi0(&g, &empty_gset(&g)).unwrap();
            assert!(r0.all_pass());
            assert_eq!(t0, 0);
            // X = regular orbit: only H = {e} contributes, one WH-orbit
            let (ranks, t1, r1) = tom_dieck_pi0(&g, &regular_gset(&g)).unwrap();
            assert!(r1.all_pass());
            assert_eq!(t1, 1);
            assert_eq!(ranks[0], 1);
        }
    }

    #[test]
    fn q8_obstruction() {
        let r = q8_center_obstruction().unwrap();
        assert!(r.all_pass(), "{r}");
    }
}
