//! Truncated nerves of finite categories, π₀ with vertex groups, small
//! integral homology via Smith normal form on normalized chains, and the
//! fixed-point structure of classifying categories of homomorphism
//! groupoids.

use crate::error::{Error, Result};
use crate::fincat::{fixed_subcategory, group_cat, twisted_hom, with_trivial_action, ExplicitStore, GFinCat, Store};
use crate::group::{FiniteGroup, Subgroup};
use crate::gset::{all_homs, hom_classes, subgroup_as_group};
use crate::report::Report;
use std::collections::HashMap;

/// The nerve of a category stored through dimension qmax. A q-simplex is a
/// chain of q composable morphisms (an object when q = 0).
pub struct SimplicialTruncation {
    pub qmax: usize,
    /// levels[q]: the q-simplices; level 0 holds `[object]`, level q ≥ 1
    /// holds `[f₁, …, f_q]` with tgt(fᵢ) = src(fᵢ₊₁).
    pub levels: Vec<Vec<Vec<usize>>>,
    /// faces[q−1][s][i] = index of dᵢ(s) in level q−1, for 1 ≤ q ≤ qmax.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// degeneracies[q][s][i] = index of sᵢ(s) in level q+1, for q < qmax.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    /// per level, whether the simplex contains an identity morphism.
    pub degenerate: Vec<Vec<bool>>,
}

fn chain_objects(c: &GFinCat, chain: &[usize], q: usize) -> Vec<usize> {
    if q == 0 {
        return chain.to_vec();
    }
    let mut objs = Vec::with_capacity(q + 1);
    objs.push(c.mor_src(chain[0]));
    for &m in chain {
        objs.push(c.mor_tgt(m));
    }
    objs
}

pub fn nerve_truncated(c: &GFinCat, qmax: usize, budget: usize) -> Result<SimplicialTruncation> {
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(qmax + 1);
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(qmax + 1);
    let level0: Vec<Vec<usize>> = (0..c.num_objects()).map(|x| vec![x]).collect();
    let mut total = level0.len();
    index.push(level0.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect());
    levels.push(level0);
    for q in 1..=qmax {
        let mut level: Vec<Vec<usize>> = Vec::new();
        if q == 1 {
            for m in 0..c.num_morphisms() {
                level.push(vec![m]);
            }
        } else {
            for prev in &levels[q - 1] {
                let end = c.mor_tgt(*prev.last().unwrap());
                for y in 0..c.num_objects() {
                    for &m in &c.hom(end, y) {
                        let mut next = prev.clone();
                        next.push(m);
                        level.push(next);
                    }
                }
            }
        }
        total += level.len();
        if total > budget {
            return Err(Error::SizeBudgetExceeded {
                need: total,
                budget,
            });
        }
        index.push(level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect());
        levels.push(level);
    }

    // face tables
    let mut faces = Vec::with_capacity(qmax);
    for q in 1..=qmax {
        let mut table = Vec::with_capacity(levels[q].len());
        for chain in &levels[q] {
            let mut row = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let face: Vec<usize> = if q == 1 {
                    if i == 0 {
                        vec![c.mor_tgt(chain[0])]
                    } else {
                        vec![c.mor_src(chain[0])]
                    }
                } else if i == 0 {
                    chain[1..].to_vec()
                } else if i == q {
                    chain[..q - 1].to_vec()
                } else {
                    let mut f = chain[..i - 1].to_vec();
                    f.push(c.compose(chain[i], chain[i - 1]));
                    f.extend_from_slice(&chain[i + 1..]);
                    f
                };
                row.push(index[q - 1][&face]);
            }
            table.push(row);
        }
        faces.push(table);
    }

    // degeneracy tables
    let mut degeneracies = Vec::with_capacity(qmax);
    for q in 0..qmax {
        let mut table = Vec::with_capacity(levels[q].len());
        for chain in &levels[q] {
            let objs = chain_objects(c, chain, q);
            let mut row = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let mut s: Vec<usize> = if q == 0 { Vec::new() } else { chain.clone() };
                s.insert(i, c.identity(objs[i]));
                row.push(index[q + 1][&s]);
            }
            table.push(row);
        }
        degeneracies.push(table);
    }

    let degenerate: Vec<Vec<bool>> = (0..=qmax)
        .map(|q| {
            levels[q]
                .iter()
                .map(|chain| {
                    q > 0
                        && chain.iter().any(|&m| {
                            let x = c.mor_src(m);
                            m == c.identity(x)
                        })
                })
                .collect()
        })
        .collect();

    Ok(SimplicialTruncation {
        qmax,
        levels,
        faces,
        degeneracies,
        degenerate,
    })
}

/// Connected components of a groupoid, each with the order of the
/// automorphism group of its least object.
pub fn pi0_and_vertex(c: &GFinCat) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    c.is_groupoid()?;
    let n = c.num_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for m in 0..c.num_morphisms() {
        let (a, b) = (c.mor_src(m), c.mor_tgt(m));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut comps: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        comps.entry(r).or_default().push(x);
    }
    let mut keys: Vec<usize> = comps.keys().copied().collect();
    keys.sort_unstable();
    let components: Vec<Vec<usize>> = keys.iter().map(|k| comps[k].clone()).collect();
    let vertex_orders: Vec<usize> = components
        .iter()
        .map(|comp| c.hom(comp[0], comp[0]).len())
        .collect();
    Ok((components, vertex_orders))
}

/// A finitely generated abelian group: ℤ^free_rank ⊕ ⊕ ℤ/tᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// Smith normal form diagonal of an integer matrix (destructive).
pub fn smith_diagonal(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut r = 0;
    let mut c = 0;
    while r < rows && c < cols {
        // find a pivot of minimal nonzero magnitude
        let mut pivot: Option<(usize, usize)> = None;
        for i in r..rows {
            for j in c..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r, pi);
        for row in m.iter_mut() {
            row.swap(c, pj);
        }
        // eliminate; restart if a remainder shrinks the pivot
        loop {
            let p = m[r][c];
            let mut clean = true;
            for i in r + 1..rows {
                if m[i][c] != 0 {
                    let q = m[i][c] / p;
                    for j in c..cols {
                        m[i][j] -= q * m[r][j];
                    }
                    if m[i][c] != 0 {
                        m.swap(r, i);
                        clean = false;
                        break;
                    }
                }
            }
            if !clean {
                continue;
            }
            for j in c + 1..cols {
                if m[r][j] != 0 {
                    let q = m[r][j] / p;
                    for row in m.iter_mut() {
                        let v = row[c];
                        row[j] -= q * v;
                    }
                    if m[r][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(c, j);
                        }
                        clean = false;
                        break;
                    }
                }
            }
            if clean {
                break;
            }
        }
        diag.push(m[r][c].abs());
        r += 1;
        c += 1;
    }
    // enforce the divisibility chain
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            let a = diag[i];
            let b = diag[j];
            let g = gcd(a, b);
            diag[i] = g;
            diag[j] = if g == 0 { 0 } else { a / g * b };
        }
    }
    diag
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Boundary matrix of the normalized chain complex, ∂: C_q → C_{q−1}
/// (degenerate simplices quotiented out).
fn boundary_matrix(n: &SimplicialTruncation, q: usize) -> Vec<Vec<i64>> {
    let nondeg = |lvl: usize| -> Vec<usize> {
        (0..n.levels[lvl].len())
            .filter(|&s| !n.degenerate[lvl][s])
            .collect()
    };
    let rows_ix = nondeg(q - 1);
    let cols_ix = nondeg(q);
    let row_pos: HashMap<usize, usize> = rows_ix.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut mat = vec![vec![0i64; cols_ix.len()]; rows_ix.len()];
    for (j, &s) in cols_ix.iter().enumerate() {
        for i in 0..=q {
            let face = n.faces[q - 1][s][i];
            if n.degenerate[q - 1][face] {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            mat[row_pos[&face]][j] += sign;
        }
    }
    mat
}

/// Integral homology of the truncated normalized complex, degrees
/// 0 … qmax−1 (exact in that range: the level-qmax chains supply all
/// boundaries hitting degree qmax−1).
pub fn homology(c: &GFinCat, qmax: usize, budget: usize) -> Result<Vec<HomologyGroup>> {
    if qmax == 0 {
        return Ok(Vec::new());
    }
    let n = nerve_truncated(c, qmax, budget)?;
    let dims: Vec<usize> = (0..=qmax)
        .map(|q| (0..n.levels[q].len()).filter(|&s| !n.degenerate[q][s]).count())
        .collect();
    // boundary ranks and torsion from SNF of ∂_{q+1}
    let mut rank = vec![0usize; qmax + 1]; // rank[q] = rank ∂_q, ∂_0 = 0
    let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); qmax + 1];
    for q in 1..=qmax {
        let diag = smith_diagonal(boundary_matrix(&n, q));
        rank[q] = diag.iter().filter(|&&d| d != 0).count();
        torsion[q] = diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
    }
    let mut out = Vec::with_capacity(qmax);
    for q in 0..qmax {
        out.push(HomologyGroup {
            free_rank: dims[q] - rank[q] - rank[q + 1],
            torsion: torsion[q + 1].clone(),
        });
    }
    Ok(out)
}

/// CSV dump of a boundary matrix (one row per line) for external checking.
pub fn boundary_csv(c: &GFinCat, qmax: usize, q: usize, budget: usize) -> Result<String> {
    if q == 0 || q > qmax {
        return Err(Error::Invalid(format!(
            "boundary degree {q} outside 1..={qmax}"
        )));
    }
    let n = nerve_truncated(c, qmax, budget)?;
    let mat = boundary_matrix(&n, q);
    let mut s = String::new();
    for row in &mat {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    Ok(s)
}

/// Normalized model of the H-fixed classifying category of homomorphisms
/// into Π: objects = homomorphisms H → Π, morphisms α → β = elements
/// c ∈ Π with cα(h)c⁻¹ = β(h) for all h.
pub fn conjugation_groupoid(h_group: &FiniteGroup, pi: &FiniteGroup) -> GFinCat {
    let homs = all_homs(h_group, pi);
    let names: Vec<String> = (0..homs.len()).map(|i| format!("a{i}")).collect();
    let mut mor: Vec<(usize, usize)> = Vec::new();
    let mut label: Vec<usize> = Vec::new();
    let mut by_triple: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut identities = vec![usize::MAX; homs.len()];
    for (a, alpha) in homs.iter().enumerate() {
        for (b, beta) in homs.iter().enumerate() {
            for cc in 0..pi.order() {
                let conj_ok = (0..h_group.order())
                    .all(|x| pi.mul(pi.mul(cc, alpha[x]), pi.inv(cc)) == beta[x]);
                if conj_ok {
                    let id = mor.len();
                    mor.push((a, b));
                    label.push(cc);
                    by_triple.insert((a, b, cc), id);
                    if a == b && cc == pi.identity_index {
                        identities[a] = id;
                    }
                }
            }
        }
    }
    let mut compose = HashMap::new();
    let mut hom_index: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (f, &(a, b)) in mor.iter().enumerate() {
        hom_index.entry((a, b)).or_default().push(f);
        for (g2, &(b2, c)) in mor.iter().enumerate() {
            if b2 == b {
                compose.insert((g2, f), by_triple[&(a, c, pi.mul(label[g2], label[f]))]);
            }
        }
    }
    GFinCat {
        object_names: names,
        store: Store::Explicit(ExplicitStore {
            mor,
            identities,
            compose,
            hom_index,
        }),
        action: None,
    }
}

/// Fixed-point structure of the classifying category of Π-valued functors:
/// component count must equal |H¹(H;Π)| (conjugacy classes of
/// homomorphisms) and vertex orders the centralizer orders |Π^α|. Verified
/// on the normalized conjugation groupoid, cross-checked against the
/// materialized functor-category route whenever it fits the budget.
pub fn bgpi_fixed_check(
    g: &FiniteGroup,
    pi: &FiniteGroup,
    h: &Subgroup,
    budget: usize,
) -> Result<Report> {
    let mut report = Report::new();
    let h_group = subgroup_as_group(g, h);
    let reduced = conjugation_groupoid(&h_group, pi);
    let (components, mut vertex_orders) = pi0_and_vertex(&reduced)?;
    vertex_orders.sort_unstable();
    let classes = hom_classes(&h_group, pi);
    let mut cents: Vec<usize> = classes.iter().map(|c| c.centralizer_order).collect();
    cents.sort_unstable();
    let domain = format!(
        "G = {}, Π = {}, |H| = {}",
        g.name,
        pi.name,
        h.member_indices.len()
    );
    report.record(
        "components of fixed classifying category = |H¹(H;Π)|",
        &domain,
        if components.len() == classes.len() {
            None
        } else {
            Some(format!(
                "{} components vs {} conjugacy classes",
                components.len(),
                classes.len()
            ))
        },
    );
    report.record(
        "vertex group orders = centralizer orders |Π^α|",
        &domain,
        if vertex_orders == cents {
            None
        } else {
            Some(format!("{vertex_orders:?} vs {cents:?}"))
        },
    );

    // definitional route: materialize the functor category and take actual
    // fixed points, when small enough
    let mut nf: usize = 1;
    for _ in 1..g.order() {
        nf = nf.saturating_mul(pi.order());
    }
    let cost = nf.saturating_mul(nf).saturating_mul(pi.order());
    if cost <= budget {
        let target = with_trivial_action(group_cat(pi), g);
        let (cat, _, _) = twisted_hom(g, &target, budget)?;
        let (fixed, _, _) = fixed_subcategory(&cat, &h.member_indices);
        let (fc, mut fv) = pi0_and_vertex(&fixed)?;
        fv.sort_unstable();
        report.record(
            "normalized model = functor-category fixed points",
            &format!("{domain}; materialized ({nf} functors)"),
            if fc.len() == components.len() && fv == vertex_orders {
                None
            } else {
                Some(format!(
                    "functor route: {} components {fv:?}; normalized: {} components {vertex_orders:?}",
                    fc.len(),
                    components.len()
                ))
            },
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chaotic, coproduct_cat, discrete, terminal};
    use crate::group::{all_subgroups, preset};

    fn group_as_cat(name: &str) -> GFinCat {
        group_cat(&preset(name).unwrap())
    }

    #[test]
    fn nerve_level_counts() {
        let pt = terminal();
        let n = nerve_truncated(&pt, 3, 1000).unwrap();
        for q in 0..=3 {
            assert_eq!(n.levels[q].len(), 1);
        }
        let names: Vec<String> = (0..3).map(|i| format!("x{i}")).collect();
        let ch = chaotic(names, None);
        let n = nerve_truncated(&ch, 3, 10_000).unwrap();
        for q in 0..=3 {
            assert_eq!(n.levels[q].len(), 3usize.pow(q as u32 + 1));
        }
        let n = nerve_truncated(&group_as_cat("C2"), 3, 1000).unwrap();
        let sizes: Vec<usize> = n.levels.iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 8]);
    }

    #[test]
    fn simplicial_identities() {
        let cats = vec![
            terminal(),
            chaotic(vec!["a".into(), "b".into()], None),
            group_as_cat("C2"),
            group_as_cat("S3"),
        ];
        for c in &cats {
            let qmax = 3;
            let n = nerve_truncated(c, qmax, 100_000).unwrap();
            // d_i d_j = d_{j-1} d_i for i < j
            for q in 2..=qmax {
                for s in 0..n.levels[q].len() {
                    for j in 1..=q {
                        for i in 0..j {
                            let a = n.faces[q - 2][n.faces[q - 1][s][j]][i];
                            let b = n.faces[q - 2][n.faces[q - 1][s][i]][j - 1];
                            assert_eq!(a, b);
                        }
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i for i ≤ j
            for q in 0..qmax.saturating_sub(1) {
                for s in 0..n.levels[q].len() {
                    for j in 0..=q {
                        for i in 0..=j {
                            let a = n.degeneracies[q + 1][n.degeneracies[q][s][j]][i];
                            let b = n.degeneracies[q + 1][n.degeneracies[q][s][i]][j + 1];
                            assert_eq!(a, b);
                        }
                    }
                }
            }
            // d_i s_j identities
            for q in 0..qmax {
                for s in 0..n.levels[q].len() {
                    for j in 0..=q {
                        let sj = n.degeneracies[q][s][j];
                        // d_j s_j = d_{j+1} s_j = id
                        assert_eq!(n.faces[q][sj][j], s);
                        assert_eq!(n.faces[q][sj][j + 1], s);
                        if q >= 1 {
                            for i in 0..=q + 1 {
                                if i < j {
                                    // d_i s_j = s_{j-1} d_i
                                    assert_eq!(
                                        n.faces[q][sj][i],
                                        n.degeneracies[q - 1][n.faces[q - 1][s][i]][j - 1]
                                    );
                                } else if i > j + 1 {
                                    // d_i s_j = s_j d_{i-1}
                                    assert_eq!(
                                        n.faces[q][sj][i],
                                        n.degeneracies[q - 1][n.faces[q - 1][s][i - 1]][j]
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pi0_examples() {
        let ch = chaotic(vec!["a".into(), "b".into()], None);
        let (comps, orders) = pi0_and_vertex(&ch).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(orders, vec![1]);
        let s3 = group_as_cat("S3");
        let (comps, orders) = pi0_and_vertex(&s3).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(orders, vec![6]);
        let both = coproduct_cat(&ch, &s3);
        let (comps, orders) = pi0_and_vertex(&both).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(orders, vec![1, 6]);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_diagonal(vec![vec![6, 0], vec![0, 4]]), vec![2, 12]);
    }

    #[test]
    fn homology_examples() {
        // H₀ = ℤ^{#components}
        let h = homology(&discrete((0..3).map(|i| format!("x{i}")).collect()), 3, 1000).unwrap();
        assert_eq!(h[0], HomologyGroup { free_rank: 3, torsion: vec![] });
        assert_eq!(h[1].free_rank, 0);
        // BZ/2: H₀ = ℤ, H₁ = ℤ/2, H₂ = 0 (exact through degree 2)
        let h = homology(&group_as_cat("C2"), 3, 1000).unwrap();
        assert_eq!(h[0], HomologyGroup { free_rank: 1, torsion: vec![] });
        assert_eq!(h[1], HomologyGroup { free_rank: 0, torsion: vec![2] });
        assert_eq!(h[2], HomologyGroup { free_rank: 0, torsion: vec![] });
        // BZ/3: H₁ = ℤ/3
        let h = homology(&group_as_cat("C3"), 3, 10_000).unwrap();
        assert_eq!(h[1], HomologyGroup { free_rank: 0, torsion: vec![3] });
        // chaotic categories are contractible
        let names: Vec<String> = (0..3).map(|i| format!("x{i}")).collect();
        let h = homology(&chaotic(names, None), 3, 100_000).unwrap();
        assert_eq!(h[0], HomologyGroup { free_rank: 1, torsion: vec![] });
        assert_eq!(h[1], HomologyGroup { free_rank: 0, torsion: vec![] });
        assert_eq!(h[2], HomologyGroup { free_rank: 0, torsion: vec![] });
    }

    #[test]
    fn euler_characteristic_at_degenerate_truncation() {
        // categories whose nondegenerate simplices stop below qmax
        for c in [discrete((0..4).map(|i| format!("x{i}")).collect()), terminal(), chaotic(vec!["x".into()], None)] {
            let qmax = 3;
            let n = nerve_truncated(&c, qmax, 10_000).unwrap();
            let chi_simp: i64 = (0..=qmax)
                .map(|q| {
                    let cnt = (0..n.levels[q].len())
                        .filter(|&s| !n.degenerate[q][s])
                        .count() as i64;
                    if q % 2 == 0 {
                        cnt
                    } else {
                        -cnt
                    }
                })
                .sum();
            let h = homology(&c, qmax, 10_000).unwrap();
            let chi_hom: i64 = h
                .iter()
                .enumerate()
                .map(|(q, g)| {
                    let r = g.free_rank as i64;
                    if q % 2 == 0 {
                        r
                    } else {
                        -r
                    }
                })
                .sum();
            assert_eq!(chi_simp, chi_hom);
        }
    }

    #[test]
    fn pi0_invariant_under_equivalence() {
        // chaotic(3) ≃ ∗ certified elsewhere; π₀/vertex data agree
        let names: Vec<String> = (0..3).map(|i| format!("x{i}")).collect();
        let ch = chaotic(names, None);
        let (c1, v1) = pi0_and_vertex(&ch).unwrap();
        let (c2, v2) = pi0_and_vertex(&terminal()).unwrap();
        assert_eq!(c1.len(), c2.len());
        assert_eq!(v1, v2);
    }

    #[test]
    fn bgpi_examples() {
        let g = preset("C2").unwrap();
        let s2 = crate::group::symmetric_group(2);
        let s3 = crate::group::symmetric_group(3);
        let subs = all_subgroups(&g);
        let trivial = subs.iter().find(|s| s.order() == 1).unwrap();
        let full = subs.iter().find(|s| s.order() == 2).unwrap();
        // H = {e}: one component, vertex order |Π|
        let r = bgpi_fixed_check(&g, &s3, trivial, 1_000_000).unwrap();
        assert!(r.all_pass(), "{r}");
        let red = conjugation_groupoid(&subgroup_as_group(&g, trivial), &s3);
        let (comps, orders) = pi0_and_vertex(&red).unwrap();
        assert_eq!((comps.len(), orders), (1, vec![6]));
        // (Z/2, Σ₂, G) → 2 components, vertex orders {2,2}
        let r = bgpi_fixed_check(&g, &s2, full, 1_000_000).unwrap();
        assert!(r.all_pass(), "{r}");
        let red = conjugation_groupoid(&subgroup_as_group(&g, full), &s2);
        let (comps, mut orders) = pi0_and_vertex(&red).unwrap();
        orders.sort_unstable();
        assert_eq!((comps.len(), orders), (2, vec![2, 2]));
        // (Z/2, Σ₃, G) → 2 components, vertex orders {6,2}
        let r = bgpi_fixed_check(&g, &s3, full, 1_000_000).unwrap();
        assert!(r.all_pass(), "{r}");
        let red = conjugation_groupoid(&subgroup_as_group(&g, full), &s3);
        let (comps, mut orders) = pi0_and_vertex(&red).unwrap();
        orders.sort_unstable();
        assert_eq!((comps.len(), orders), (2, vec![2, 6]));
        // the materialized route ran for these sizes
        assert_eq!(r.checks.len(), 3);
    }
}
