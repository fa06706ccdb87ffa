//! The free permutative G-category on a based G-set, at bounded arity.
//!
//! Component j has objects the Σ_j-orbit representatives (α, y) with
//! α: G → Σ_j normalized to α(e) = e and y a j-tuple of generator elements.
//! Morphisms (α,y) → (β,y′) are labels σ ∈ Σ_j with y′ = σ⋆y (entry i moves
//! to position σ(i)); composing σ then τ gives τσ. G acts by
//!   (gα)(h) = α(g⁻¹h)α(g⁻¹)⁻¹,  y′_i = g·y_{α(g⁻¹)⁻¹(i)},  σ ↦ β(g⁻¹)σα(g⁻¹)⁻¹.
//! Fixed-point identifications with categories of pointed G-sets over the
//! generator, transfers along based maps, pairings, and span composition
//! are all computed on explicit object values.

use crate::error::{Error, Result};
use crate::fincat::{coproduct_cat, ExplicitStore, GFinCat, Store};
use crate::group::{normalizer, subgroup_classes, symmetric_group, FiniteGroup};
use crate::gset::{all_homs, fixed_points, FinGSet, GMap};
use crate::operad::SymCache;
use crate::perm::{block_substitution, tensor_perm, Perm, SymmetricGroup};
use crate::report::Report;
use std::collections::HashMap;

/// An explicit object of the free category: α per group element (α[identity]
/// is the identity permutation) and the entry tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeObj {
    pub alpha: Vec<Perm>,
    pub y: Vec<usize>,
}

impl FreeObj {
    pub fn arity(&self) -> usize {
        self.y.len()
    }
}

/// Bounded-arity free category on a generator G-set; objects are enumerated
/// arithmetically (no materialized storage).
pub struct FreeOGCat {
    pub group: FiniteGroup,
    pub x: FinGSet,
    pub jmax: usize,
    pub syms: SymCache,
    counts: Vec<usize>,
}

/// γ degeneracy along a keep-mask: substitute arity 1 at kept positions and
/// arity 0 at dropped ones.
pub fn degenerate(p: &Perm, keep: &[bool]) -> Perm {
    let id0 = Perm::identity(0);
    let id1 = Perm::identity(1);
    let ds: Vec<&Perm> = keep.iter().map(|&k| if k { &id1 } else { &id0 }).collect();
    block_substitution(p, &ds)
}

impl FreeOGCat {
    pub fn count(&self, j: usize) -> usize {
        self.counts[j]
    }

    /// Decode object t of component j: α digits (radix |Σ_j|, one per
    /// non-identity group element) are most significant, tuple digits
    /// (radix |X|) least significant.
    pub fn obj(&self, j: usize, t: usize) -> FreeObj {
        let n = self.group.order();
        let m = self.syms.sym(j).order();
        let xs = self.x.size;
        let mut rem = t;
        let mut y = vec![0usize; j];
        for i in (0..j).rev() {
            y[i] = rem % xs.max(1);
            rem /= xs.max(1);
        }
        let mut alpha = vec![Perm::identity(j); n];
        for g in (1..n).rev() {
            alpha[g] = self.syms.sym(j).elements[rem % m].clone();
            rem /= m;
        }
        FreeObj { alpha, y }
    }

    pub fn index(&self, o: &FreeObj) -> usize {
        let n = self.group.order();
        let j = o.arity();
        let m = self.syms.sym(j).order();
        let mut t = 0;
        for g in 1..n {
            t = t * m + self.syms.sym(j).index_of(&o.alpha[g]);
        }
        for i in 0..j {
            t = t * self.x.size.max(1) + o.y[i];
        }
        t
    }

    pub fn g_act(&self, g: usize, o: &FreeObj) -> FreeObj {
        let gi = self.group.inv(g);
        let n = self.group.order();
        let agi_inv = o.alpha[gi].inverse();
        let alpha: Vec<Perm> = (0..n)
            .map(|h| o.alpha[self.group.mul(gi, h)].compose(&agi_inv))
            .collect();
        let y: Vec<usize> = (0..o.arity())
            .map(|i| self.x.act(g, o.y[agi_inv.apply(i)]))
            .collect();
        FreeObj { alpha, y }
    }

    /// Labels of morphisms a → b (all σ moving a's entries onto b's).
    pub fn hom_labels(&self, a: &FreeObj, b: &FreeObj) -> Vec<Perm> {
        let j = a.arity();
        if b.arity() != j {
            return Vec::new();
        }
        self.syms
            .sym(j)
            .elements
            .iter()
            .filter(|s| tuple_valid(s, a, b))
            .cloned()
            .collect()
    }
}

/// y′ = σ⋆y: entry i of a lands at position σ(i) of b.
pub fn tuple_valid(sigma: &Perm, a: &FreeObj, b: &FreeObj) -> bool {
    (0..a.arity()).all(|i| b.y[sigma.apply(i)] == a.y[i])
}

/// g-image of the label σ: a → b.
pub fn g_act_label(group: &FiniteGroup, g: usize, a: &FreeObj, b: &FreeObj, sigma: &Perm) -> Perm {
    let gi = group.inv(g);
    b.alpha[gi].compose(sigma).compose(&a.alpha[gi].inverse())
}

pub fn free_og(group: &FiniteGroup, x: &FinGSet, jmax: usize, budget: usize) -> Result<FreeOGCat> {
    let syms = SymCache::new(jmax);
    let n = group.order();
    let mut counts = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let m = syms.sym(j).order();
        let mut c: usize = 1;
        for _ in 1..n {
            c = c.checked_mul(m).ok_or(Error::SizeBudgetExceeded {
                need: usize::MAX,
                budget,
            })?;
        }
        for _ in 0..j {
            c = c.checked_mul(x.size).ok_or(Error::SizeBudgetExceeded {
                need: usize::MAX,
                budget,
            })?;
        }
        if c > budget {
            return Err(Error::SizeBudgetExceeded { need: c, budget });
        }
        counts.push(c);
    }
    Ok(FreeOGCat {
        group: group.clone(),
        x: x.clone(),
        jmax,
        syms,
        counts,
    })
}

/// Brute-force H-fixed objects of component j (full scan).
pub fn fixed_objects(f: &FreeOGCat, j: usize, h_members: &[usize]) -> Vec<FreeObj> {
    let mut out = Vec::new();
    for t in 0..f.count(j) {
        let o = f.obj(j, t);
        if h_members.iter().all(|&h| f.g_act(h, &o) == o) {
            out.push(o);
        }
    }
    out
}

/// H-fixed objects via the characterization: α(g⁻¹x) = α(x)α(g⁻¹) for all
/// g ∈ H, x ∈ G (restriction to H is an anti-homomorphism), and
/// y_{α(h⁻¹)(i)} = h·y_i.
pub fn fixed_objects_characterized(f: &FreeOGCat, j: usize, h_members: &[usize]) -> Vec<FreeObj> {
    let mut out = Vec::new();
    for t in 0..f.count(j) {
        let o = f.obj(j, t);
        let alpha_ok = h_members.iter().all(|&g| {
            let gi = f.group.inv(g);
            (0..f.group.order()).all(|x| {
                o.alpha[f.group.mul(gi, x)] == o.alpha[x].compose(&o.alpha[gi])
            })
        });
        if !alpha_ok {
            continue;
        }
        let tuple_ok = h_members.iter().all(|&h| {
            let hi = f.group.inv(h);
            (0..j).all(|i| o.y[o.alpha[hi].apply(i)] == f.x.act(h, o.y[i]))
        });
        if tuple_ok {
            out.push(o);
        }
    }
    out
}

/// Build an explicit groupoid whose morphisms are Σ-labels between listed
/// objects, filtered by `valid`; labels compose as σ then τ ↦ τσ.
fn labeled_groupoid<O>(
    names: Vec<String>,
    objects: &[O],
    sym_of: impl Fn(&O) -> usize,
    syms: &SymCache,
    valid: impl Fn(&O, &O, &Perm) -> bool,
) -> GFinCat {
    let nobj = objects.len();
    let mut mor: Vec<(usize, usize)> = Vec::new();
    let mut label: Vec<usize> = Vec::new(); // Σ-element index per morphism
    let mut by_triple: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut identities = vec![usize::MAX; nobj];
    for a in 0..nobj {
        for b in 0..nobj {
            if sym_of(&objects[a]) != sym_of(&objects[b]) {
                continue;
            }
            let sym = syms.sym(sym_of(&objects[a]));
            for (si, s) in sym.elements.iter().enumerate() {
                if valid(&objects[a], &objects[b], s) {
                    let id = mor.len();
                    mor.push((a, b));
                    label.push(si);
                    by_triple.insert((a, b, si), id);
                    if a == b && s.is_identity() {
                        identities[a] = id;
                    }
                }
            }
        }
    }
    let mut compose = HashMap::new();
    let mut hom_index: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (f_id, &(a, b)) in mor.iter().enumerate() {
        hom_index.entry((a, b)).or_default().push(f_id);
        for (g_id, &(b2, c)) in mor.iter().enumerate() {
            if b2 != b {
                continue;
            }
            let sym = syms.sym(sym_of(&objects[a]));
            let ts = sym.mul_idx(label[g_id], label[f_id]);
            let comp = by_triple[&(a, c, ts)];
            compose.insert((g_id, f_id), comp);
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

/// The H-fixed subcategory of component j as an explicit groupoid, computed
/// by brute force and cross-checked against the anti-homomorphism
/// characterization.
pub fn fixed_free_component(
    f: &FreeOGCat,
    j: usize,
    h_members: &[usize],
) -> Result<(GFinCat, Vec<FreeObj>)> {
    let bf = fixed_objects(f, j, h_members);
    let ch = fixed_objects_characterized(f, j, h_members);
    if bf != ch {
        return Err(Error::MismatchBetweenCharacterizations(format!(
            "component {j}: {} brute-force vs {} characterized fixed objects",
            bf.len(),
            ch.len()
        )));
    }
    let names: Vec<String> = bf.iter().map(|o| format!("j{j}t{}", f.index(o))).collect();
    let group = f.group.clone();
    let cat = labeled_groupoid(
        names,
        &bf,
        |o| o.arity(),
        &f.syms,
        |a, b, s| {
            tuple_valid(s, a, b)
                && h_members
                    .iter()
                    .all(|&h| g_act_label(&group, h, a, b, s) == *s)
        },
    );
    Ok((cat, bf))
}

/// Coproduct of the H-fixed subcategories over all arities ≤ jmax.
pub fn fixed_free(f: &FreeOGCat, h_members: &[usize]) -> Result<GFinCat> {
    let mut acc: Option<GFinCat> = None;
    for j in 0..=f.jmax {
        let (c, _) = fixed_free_component(f, j, h_members)?;
        acc = Some(match acc {
            None => c,
            Some(a) => coproduct_cat(&a, &c),
        });
    }
    Ok(acc.unwrap())
}

/// The whole component j as an explicit category (small generators only).
pub fn free_component_cat(f: &FreeOGCat, j: usize, budget: usize) -> Result<GFinCat> {
    let count = f.count(j);
    if count * count * f.syms.sym(j).order() > budget {
        return Err(Error::SizeBudgetExceeded {
            need: count * count * f.syms.sym(j).order(),
            budget,
        });
    }
    let objs: Vec<FreeObj> = (0..count).map(|t| f.obj(j, t)).collect();
    let names = (0..count).map(|t| format!("t{t}")).collect();
    Ok(labeled_groupoid(
        names,
        &objs,
        |o| o.arity(),
        &f.syms,
        |a, b, s| tuple_valid(s, a, b),
    ))
}

/// An object of the fixed category of pointed G-sets over X: a G-set
/// structure λ on {1..j} together with an equivariant labeling p into X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverObj {
    pub j: usize,
    pub lambda: Vec<usize>, // Σ_j element index per group element
    pub p: Vec<usize>,
}

/// Objects of the arity-j slice of the fixed category over X.
pub fn fgx_objects(group: &FiniteGroup, x: &FinGSet, j: usize) -> Vec<OverObj> {
    let sym = SymmetricGroup::new(j);
    let mut out = Vec::new();
    for lambda in all_homs(group, &symmetric_group(j)) {
        // enumerate equivariant p: p(λ(g)(i)) = g·p(i)
        let mut p = vec![0usize; j];
        if j == 0 {
            out.push(OverObj {
                j,
                lambda: lambda.clone(),
                p: Vec::new(),
            });
            continue;
        }
        if x.size == 0 {
            continue;
        }
        loop {
            let ok = (0..group.order()).all(|g| {
                (0..j).all(|i| p[sym.elements[lambda[g]].apply(i)] == x.act(g, p[i]))
            });
            if ok {
                out.push(OverObj {
                    j,
                    lambda: lambda.clone(),
                    p: p.clone(),
                });
            }
            let mut i = 0;
            loop {
                if i == j {
                    break;
                }
                p[i] += 1;
                if p[i] < x.size {
                    break;
                }
                p[i] = 0;
                i += 1;
            }
            if p.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    out
}

/// The arity-j slice of the fixed category over X as an explicit groupoid:
/// morphisms are equivariant bijections over X.
pub fn fgx_component(group: &FiniteGroup, x: &FinGSet, j: usize) -> (GFinCat, Vec<OverObj>) {
    let objs = fgx_objects(group, x, j);
    let syms = SymCache::new(j);
    let names: Vec<String> = (0..objs.len()).map(|i| format!("j{j}o{i}")).collect();
    let grp = group.clone();
    let cat = labeled_groupoid(names, &objs, |o| o.j, &syms, |a, b, f| {
        let sym = SymmetricGroup::new(a.j);
        (0..grp.order()).all(|g| {
            f.compose(&sym.elements[a.lambda[g]]) == sym.elements[b.lambda[g]].compose(f)
        }) && (0..a.j).all(|i| b.p[f.apply(i)] == a.p[i])
    });
    (cat, objs)
}

/// Coproduct of the fixed category slices over all arities ≤ jmax.
pub fn fgx_over(group: &FiniteGroup, x: &FinGSet, jmax: usize) -> GFinCat {
    let mut acc: Option<GFinCat> = None;
    for j in 0..=jmax {
        let (c, _) = fgx_component(group, x, j);
        acc = Some(match acc {
            None => c,
            Some(a) => coproduct_cat(&a, &c),
        });
    }
    acc.unwrap()
}

/// The explicit comparison functor at arity j: (α, y) ↦ the G-set structure
/// g∙i = α(g⁻¹)(i) labeled by p(i) = y_i, and σ ↦ σ on morphisms. Verifies
/// it is an isomorphism of categories (bijective on objects and morphisms,
/// functorial).
pub fn catone_check(group: &FiniteGroup, x: &FinGSet, j: usize, budget: usize) -> Result<Report> {
    let mut report = Report::new();
    let f = free_og(group, x, j, budget)?;
    let all: Vec<usize> = (0..group.order()).collect();
    let (src, src_objs) = fixed_free_component(&f, j, &all)?;
    let (tgt, tgt_objs) = fgx_component(group, x, j);
    let sym = SymmetricGroup::new(j);

    // object map
    let mut obj_map = Vec::with_capacity(src_objs.len());
    let mut obj_ok = true;
    let mut witness = None;
    for o in &src_objs {
        let lambda: Vec<usize> = (0..group.order())
            .map(|g| sym.index_of(&o.alpha[group.inv(g)]))
            .collect();
        let target = OverObj {
            j,
            lambda,
            p: o.y.clone(),
        };
        match tgt_objs.iter().position(|t| *t == target) {
            Some(i) => obj_map.push(i),
            None => {
                obj_ok = false;
                witness = Some(format!("image of {o:?} not an object over X"));
                obj_map.push(usize::MAX);
                break;
            }
        }
    }
    let mut seen = vec![false; tgt_objs.len()];
    if obj_ok {
        for &i in &obj_map {
            if seen[i] {
                obj_ok = false;
                witness = Some(format!("object map not injective at target {i}"));
                break;
            }
            seen[i] = true;
        }
    }
    if obj_ok && obj_map.len() != tgt_objs.len() {
        obj_ok = false;
        witness = Some(format!(
            "{} fixed objects vs {} objects over X",
            obj_map.len(),
            tgt_objs.len()
        ));
    }
    report.record(
        "fixed objects ↔ pointed G-sets over X (bijective)",
        &format!("arity {j}"),
        if obj_ok { None } else { witness },
    );
    if !obj_ok {
        return Ok(report);
    }

    // morphism map: σ ↦ σ, must biject hom-sets and preserve composition
    let mut mor_witness = None;
    let mut src_mor = 0usize;
    for a in 0..src.num_objects() {
        for b in 0..src.num_objects() {
            let sh = src.hom(a, b);
            let th = tgt.hom(obj_map[a], obj_map[b]);
            src_mor += sh.len();
            if sh.len() != th.len() && mor_witness.is_none() {
                mor_witness = Some(format!(
                    "hom({a},{b}): {} fixed labels vs {} equivariant bijections",
                    sh.len(),
                    th.len()
                ));
            }
        }
    }
    let tgt_mor = tgt.num_morphisms();
    if src_mor != tgt_mor && mor_witness.is_none() {
        mor_witness = Some(format!("{src_mor} vs {tgt_mor} morphisms"));
    }
    // label-for-label: each fixed σ must be a valid equivariant bijection
    'mors: for a in 0..src_objs.len() {
        for b in 0..src_objs.len() {
            if src_objs[a].arity() != src_objs[b].arity() {
                continue;
            }
            for s in &sym.elements {
                let in_src = tuple_valid(s, &src_objs[a], &src_objs[b])
                    && all
                        .iter()
                        .all(|&h| g_act_label(group, h, &src_objs[a], &src_objs[b], s) == *s);
                let ta = &tgt_objs[obj_map[a]];
                let tb = &tgt_objs[obj_map[b]];
                let in_tgt = (0..group.order()).all(|g| {
                    s.compose(&sym.elements[ta.lambda[g]]) == sym.elements[tb.lambda[g]].compose(s)
                }) && (0..j).all(|i| tb.p[s.apply(i)] == ta.p[i]);
                if in_src != in_tgt {
                    mor_witness = Some(format!("label {s} mismatch at pair ({a},{b})"));
                    break 'mors;
                }
            }
        }
    }
    report.record(
        "fixed labels ↔ equivariant bijections over X (label-for-label)",
        &format!("arity {j}"),
        mor_witness,
    );
    // functoriality is automatic: both sides compose labels by τσ — but we
    // verify it on the explicit stores anyway
    let mut comp_witness = None;
    'comp: for f_id in 0..src.num_morphisms() {
        for g_id in 0..src.num_morphisms() {
            if src.mor_tgt(f_id) != src.mor_src(g_id) {
                continue;
            }
            let c = src.compose(g_id, f_id);
            // transport all three to the target by matching (src,tgt,label)
            let lift = |m: usize| -> Option<usize> {
                let (a, b) = (src.mor_src(m), src.mor_tgt(m));
                let sh = src.hom(a, b);
                let pos = sh.iter().position(|&x| x == m)?;
                let th = tgt.hom(obj_map[a], obj_map[b]);
                th.get(pos).copied()
            };
            match (lift(f_id), lift(g_id), lift(c)) {
                (Some(tf), Some(tg), Some(tc)) => {
                    if tgt.compose(tg, tf) != tc {
                        comp_witness = Some(format!("composition not preserved at ({g_id},{f_id})"));
                        break 'comp;
                    }
                }
                _ => {
                    comp_witness = Some("morphism lift missing".into());
                    break 'comp;
                }
            }
        }
    }
    report.record(
        "comparison functor preserves composition",
        &format!("arity {j}"),
        comp_witness,
    );
    Ok(report)
}

/// One isomorphism class of the wreath-product skeleton: a multiset of
/// (subgroup class, Weyl-orbit of fixed generator points) with total size j
/// and automorphism order ∏ k_m! · |Stab_WH(x_m)|^{k_m}.
#[derive(Clone, Debug)]
pub struct WreathClass {
    pub j: usize,
    /// (subgroup class index, orbit representative point, multiplicity)
    pub parts: Vec<(usize, usize, usize)>,
    pub automorphism_order: usize,
}

/// Orbit types available over X: (class index, orbit rep in X^H, orbit size
/// |G/H|, |Stab_WH(rep)|).
fn over_types(group: &FiniteGroup, x: &FinGSet) -> Vec<(usize, usize, usize, usize)> {
    let classes = subgroup_classes(group);
    let mut types = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        let h = &class.representative;
        let fixed = fixed_points(group, x, h).unwrap_or_default();
        let nh = normalizer(group, h);
        // WH-orbits of X^H
        let mut seen: Vec<usize> = Vec::new();
        for &pt in &fixed {
            if seen.contains(&pt) {
                continue;
            }
            let mut orbit: Vec<usize> = nh.member_indices.iter().map(|&n| x.act(n, pt)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            seen.extend(orbit.iter());
            let stab = nh
                .member_indices
                .iter()
                .filter(|&&n| x.act(n, pt) == pt)
                .count()
                / h.order();
            types.push((ci, pt, group.order() / h.order(), stab));
        }
    }
    types
}

/// Enumerate the wreath-skeleton classes of arity exactly j.
pub fn wreath_classes(group: &FiniteGroup, x: &FinGSet, j: usize) -> Vec<WreathClass> {
    let types = over_types(group, x);
    let mut out = Vec::new();
    // choose multiplicity per type with Σ k·size = j
    fn rec(
        types: &[(usize, usize, usize, usize)],
        pos: usize,
        left: usize,
        parts: &mut Vec<(usize, usize, usize)>,
        aut: usize,
        out: &mut Vec<WreathClass>,
        j: usize,
    ) {
        if pos == types.len() {
            if left == 0 {
                out.push(WreathClass {
                    j,
                    parts: parts.clone(),
                    automorphism_order: aut,
                });
            }
            return;
        }
        let (ci, pt, size, stab) = types[pos];
        let mut k = 0;
        loop {
            if k * size > left {
                break;
            }
            let fact: usize = (1..=k).product::<usize>().max(1);
            let aut_k = fact * stab.pow(k as u32);
            if k > 0 {
                parts.push((ci, pt, k));
            }
            rec(types, pos + 1, left - k * size, parts, aut * aut_k, out, j);
            if k > 0 {
                parts.pop();
            }
            if size == 0 {
                break;
            }
            k += 1;
        }
    }
    let mut parts = Vec::new();
    rec(&types, 0, j, &mut parts, 1, &mut out, j);
    out
}

/// Compare the wreath-product skeleton against skeleton(fixed category over
/// X), arity by arity: class counts and automorphism-order multisets.
pub fn cattwo_check(group: &FiniteGroup, x: &FinGSet, jmax: usize) -> Result<Report> {
    let mut report = Report::new();
    for j in 0..=jmax {
        let wreath = wreath_classes(group, x, j);
        let mut wreath_orders: Vec<usize> =
            wreath.iter().map(|c| c.automorphism_order).collect();
        wreath_orders.sort_unstable();
        let (cat, _) = fgx_component(group, x, j);
        let skel = crate::fincat::skeleton(&cat)?;
        let mut cat_orders: Vec<usize> = skel.iter().map(|s| s.automorphism_order).collect();
        cat_orders.sort_unstable();
        let witness = if wreath_orders == cat_orders {
            None
        } else {
            Some(format!(
                "arity {j}: wreath {wreath_orders:?} vs category {cat_orders:?}"
            ))
        };
        report.record(
            "wreath skeleton = skeleton of pointed G-sets over X",
            &format!("arity {j}"),
            witness,
        );
    }
    Ok(report)
}

/// Triple skeleton agreement: fixed free category, wreath skeleton, and the
/// category of pointed G-sets over X, arity by arity.
pub fn ident_check(group: &FiniteGroup, x: &FinGSet, jmax: usize, budget: usize) -> Result<Report> {
    let mut report = Report::new();
    let f = free_og(group, x, jmax, budget)?;
    let all: Vec<usize> = (0..group.order()).collect();
    for j in 0..=jmax {
        let (fixed_cat, _) = fixed_free_component(&f, j, &all)?;
        let mut fixed_orders: Vec<usize> = crate::fincat::skeleton(&fixed_cat)?
            .iter()
            .map(|s| s.automorphism_order)
            .collect();
        fixed_orders.sort_unstable();
        let mut wreath_orders: Vec<usize> = wreath_classes(group, x, j)
            .iter()
            .map(|c| c.automorphism_order)
            .collect();
        wreath_orders.sort_unstable();
        let (over_cat, _) = fgx_component(group, x, j);
        let mut over_orders: Vec<usize> = crate::fincat::skeleton(&over_cat)?
            .iter()
            .map(|s| s.automorphism_order)
            .collect();
        over_orders.sort_unstable();
        let witness = if fixed_orders == wreath_orders && wreath_orders == over_orders {
            None
        } else {
            Some(format!(
                "arity {j}: fixed {fixed_orders:?}, wreath {wreath_orders:?}, over {over_orders:?}"
            ))
        };
        report.record(
            "triple skeleton agreement (fixed / wreath / over-X)",
            &format!("arity {j}"),
            witness,
        );
    }
    Ok(report)
}

/// Apply a G-map to every tuple entry (the induced functor on free
/// categories); α is untouched.
pub fn f_shriek_obj(values: &[usize], o: &FreeObj) -> FreeObj {
    FreeObj {
        alpha: o.alpha.clone(),
        y: o.y.iter().map(|&v| values[v]).collect(),
    }
}

/// Apply a based map (None = basepoint) to an object: entries sent to the
/// basepoint are deleted and α is degenerated accordingly.
pub fn based_map_obj(map: &[Option<usize>], o: &FreeObj) -> FreeObj {
    let keep: Vec<bool> = o.y.iter().map(|&v| map[v].is_some()).collect();
    let alpha: Vec<Perm> = o.alpha.iter().map(|p| degenerate(p, &keep)).collect();
    let y: Vec<usize> = o
        .y
        .iter()
        .filter_map(|&v| map[v])
        .collect();
    FreeObj { alpha, y }
}

/// Morphism-label image under a based map (source object determines the
/// keep-mask; the target mask is its σ-image automatically).
pub fn based_map_label(map: &[Option<usize>], src: &FreeObj, sigma: &Perm) -> Perm {
    let keep: Vec<bool> = src.y.iter().map(|&v| map[v].is_some()).collect();
    degenerate(sigma, &keep)
}

/// The transfer along an inclusion A ⊆ B (given by the A-indexed list of
/// B-indices): the based retraction B₊ → A₊ fixing A.
pub fn i_star_map(b_size: usize, a_in_b: &[usize]) -> Result<Vec<Option<usize>>> {
    let mut map = vec![None; b_size];
    for (ai, &bi) in a_in_b.iter().enumerate() {
        if bi >= b_size || map[bi].is_some() {
            return Err(Error::NotInjective(format!(
                "entry {ai} maps to out-of-range or duplicate index {bi}"
            )));
        }
        map[bi] = Some(ai);
    }
    Ok(map)
}

/// Pairing of free objects: pointwise tensor of α's, lexicographic pair
/// tuple with pairs indexed x·|Y| + y.
pub fn free_pairing_obj(o1: &FreeObj, o2: &FreeObj, y_card: usize) -> FreeObj {
    let alpha: Vec<Perm> = o1
        .alpha
        .iter()
        .zip(&o2.alpha)
        .map(|(p, q)| tensor_perm(p, q))
        .collect();
    let mut y = Vec::with_capacity(o1.arity() * o2.arity());
    for &a in &o1.y {
        for &b in &o2.y {
            y.push(a * y_card + b);
        }
    }
    FreeObj { alpha, y }
}

/// The identity span on B: the object over B×B with entries (i,i) and
/// α(g) the action permutation of g⁻¹ (an anti-homomorphism).
pub fn unit_span(group: &FiniteGroup, b: &FinGSet) -> FreeObj {
    let alpha: Vec<Perm> = (0..group.order())
        .map(|g| b.action[group.inv(g)].clone())
        .collect();
    let y: Vec<usize> = (0..b.size).map(|i| i * b.size + i).collect();
    FreeObj { alpha, y }
}

/// Compose spans: s over C×B with t over B×A, yielding an object over C×A.
/// Pair, delete entries whose two middle B-coordinates differ, project.
pub fn span_compose_obj(
    s: &FreeObj,
    t: &FreeObj,
    c_size: usize,
    b_size: usize,
    a_size: usize,
) -> FreeObj {
    let paired = free_pairing_obj(s, t, b_size * a_size);
    let total = (c_size * b_size) * (b_size * a_size);
    let map: Vec<Option<usize>> = (0..total)
        .map(|v| {
            let cb = v / (b_size * a_size);
            let ba = v % (b_size * a_size);
            let (c, b1) = (cb / b_size, cb % b_size);
            let (b2, a) = (ba / a_size, ba % a_size);
            if b1 == b2 {
                Some(c * a_size + a)
            } else {
                None
            }
        })
        .collect();
    based_map_obj(&map, &paired)
}

/// Objects isomorphic in the free category: same entry multiset (every
/// matching label is an isomorphism since components are label-chaotic).
pub fn free_iso(a: &FreeObj, b: &FreeObj) -> bool {
    if a.arity() != b.arity() {
        return false;
    }
    let mut ya = a.y.clone();
    let mut yb = b.y.clone();
    ya.sort_unstable();
    yb.sort_unstable();
    ya == yb
}

/// Exhaustive span-law report over generator sets A, B, C at bounded arity:
/// unit laws up to isomorphism, associativity strictly. Composition is
/// computed on explicit object values, so no intermediate-arity truncation
/// occurs and no triples are excluded.
pub fn span_laws(
    group: &FiniteGroup,
    a: &FinGSet,
    b: &FinGSet,
    c: &FinGSet,
    arity_cap: usize,
    budget: usize,
) -> Result<Report> {
    let mut report = Report::new();
    let ba = crate::gset::product_gset(group, b, a)?;
    let cb = crate::gset::product_gset(group, c, b)?;
    let ac = crate::gset::product_gset(group, a, c)?;
    let f_ba = free_og(group, &ba, arity_cap, budget)?;
    let f_cb = free_og(group, &cb, arity_cap, budget)?;
    let f_ac = free_og(group, &ac, arity_cap, budget)?;
    let spans = |f: &FreeOGCat| -> Vec<FreeObj> {
        (0..=f.jmax)
            .flat_map(|j| (0..f.count(j)).map(move |t| (j, t)))
            .map(|(j, t)| f.obj(j, t))
            .collect()
    };
    let spans_ba = spans(&f_ba);
    let spans_cb = spans(&f_cb);
    let spans_ac = spans(&f_ac);

    // unit object is G-fixed
    let unit_b = unit_span(group, b);
    let f_bb = free_og(group, &crate::gset::product_gset(group, b, b)?, b.size, budget)?;
    let unit_fixed = (0..group.order()).all(|g| f_bb.g_act(g, &unit_b) == unit_b);
    report.record(
        "identity span is G-fixed",
        &format!("B of size {}", b.size),
        if unit_fixed {
            None
        } else {
            Some("unit moved by the action".into())
        },
    );

    // left and right unit laws, up to isomorphism
    let unit_a = unit_span(group, a);
    let mut witness = None;
    for s in &spans_ba {
        let left = span_compose_obj(&unit_b, s, b.size, b.size, a.size);
        let right = span_compose_obj(s, &unit_a, b.size, a.size, a.size);
        if !free_iso(&left, s) || !free_iso(&right, s) {
            witness = Some(format!("unit law fails at {s:?}"));
            break;
        }
    }
    report.record(
        "span unit laws (up to isomorphism)",
        &format!("all spans of arity ≤ {arity_cap}"),
        witness,
    );

    // associativity: (u∘t)∘s = u∘(t∘s) strictly
    let mut witness = None;
    'assoc: for s in &spans_ba {
        for t in &spans_cb {
            for u in &spans_ac {
                let ts = span_compose_obj(t, s, c.size, b.size, a.size); // over C×A
                let l = span_compose_obj(u, &ts, a.size, c.size, a.size); // over A×A
                let ut = span_compose_obj(u, t, a.size, c.size, b.size); // over A×B
                let r = span_compose_obj(&ut, s, a.size, b.size, a.size); // over A×A
                if l != r {
                    witness = Some(format!("associativity fails at ({s:?}, {t:?}, {u:?})"));
                    break 'assoc;
                }
            }
        }
    }
    report.record(
        "span associativity (strict)",
        &format!("all composable triples of arity ≤ {arity_cap}; excluded triples: 0"),
        witness,
    );
    Ok(report)
}

/// G-equivariance check for f_shriek / based maps on all objects of bounded
/// arity.
pub fn functor_equivariance(
    f_src: &FreeOGCat,
    f_tgt: &FreeOGCat,
    map: &GMap,
) -> Result<()> {
    for j in 0..=f_src.jmax {
        for t in 0..f_src.count(j) {
            let o = f_src.obj(j, t);
            for g in 0..f_src.group.order() {
                let lhs = f_shriek_obj(&map.values, &f_src.g_act(g, &o));
                let rhs = f_tgt.g_act(g, &f_shriek_obj(&map.values, &o));
                if lhs != rhs {
                    return Err(Error::CrossCheckFailure(format!(
                        "f_! not equivariant at arity {j}, object {t}, g={g}"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::preset;
    use crate::gset::{disjoint_union, gmap, product_gset, regular_gset, trivial_gset};

    fn c2() -> FiniteGroup {
        preset("C2").unwrap()
    }

    #[test]
    fn component_counts() {
        let g = c2();
        let x = trivial_gset(&g, 1);
        let f = free_og(&g, &x, 2, 10_000).unwrap();
        assert_eq!(f.count(0), 1);
        assert_eq!(f.count(1), 1); // j = 1 component ≅ X
        assert_eq!(f.count(2), 2);
        let x2 = regular_gset(&g);
        let f2 = free_og(&g, &x2, 2, 10_000).unwrap();
        assert_eq!(f2.count(1), 2);
        assert_eq!(f2.count(2), 8);
    }

    #[test]
    fn index_roundtrip_and_action() {
        let g = preset("S3").unwrap();
        let x = regular_gset(&g);
        let f = free_og(&g, &x, 2, 1_000_000).unwrap();
        for j in 0..=2 {
            for t in (0..f.count(j)).step_by(7) {
                let o = f.obj(j, t);
                assert_eq!(f.index(&o), t);
                // group action is a left action
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        assert_eq!(
                            f.g_act(g.mul(a, b), &o),
                            f.g_act(a, &f.g_act(b, &o))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_component_examples() {
        let g = c2();
        let x = trivial_gset(&g, 1);
        let f = free_og(&g, &x, 2, 10_000).unwrap();
        let all = vec![0, 1];
        let (cat, objs) = fixed_free_component(&f, 2, &all).unwrap();
        assert_eq!(objs.len(), 2);
        let skel = crate::fincat::skeleton(&cat).unwrap();
        let orders: Vec<usize> = skel.iter().map(|s| s.automorphism_order).collect();
        assert_eq!(orders, vec![2, 2]);
        // H = {e} → whole component
        let (full, _) = fixed_free_component(&f, 2, &[0]).unwrap();
        let comp = free_component_cat(&f, 2, 10_000).unwrap();
        assert_eq!(full.num_objects(), comp.num_objects());
        assert_eq!(full.num_morphisms(), comp.num_morphisms());
    }

    #[test]
    fn fixed_matches_gset_classification_c3() {
        // G = Z/3, X = ∗, H = G, j = 3 → iso classes: 3 fixed points; one
        // free orbit
        let g = preset("C3").unwrap();
        let x = trivial_gset(&g, 1);
        let f = free_og(&g, &x, 3, 100_000).unwrap();
        let (cat, _) = fixed_free_component(&f, 3, &[0, 1, 2]).unwrap();
        let skel = crate::fincat::skeleton(&cat).unwrap();
        assert_eq!(skel.len(), 2);
    }

    #[test]
    fn fgx_examples() {
        let g = c2();
        // X = ∗, jmax = 2 → iso classes {∅, 1 fixed pt, 2 fixed pts, free}
        let x = trivial_gset(&g, 1);
        let cat = fgx_over(&g, &x, 2);
        let skel = crate::fincat::skeleton(&cat).unwrap();
        assert_eq!(skel.len(), 4);
        // X = free orbit: no arity-1 fixed objects
        let xf = regular_gset(&g);
        assert!(fgx_objects(&g, &xf, 1).is_empty());
        // X = ∅: only the arity-0 object
        let xe = crate::gset::empty_gset(&g);
        assert_eq!(fgx_objects(&g, &xe, 0).len(), 1);
        assert!(fgx_objects(&g, &xe, 1).is_empty());
        assert!(fgx_objects(&g, &xe, 2).is_empty());
    }

    #[test]
    fn catone_c2_point() {
        let g = c2();
        let x = trivial_gset(&g, 1);
        let r = catone_check(&g, &x, 2, 100_000).unwrap();
        assert!(r.all_pass(), "{r}");
        // 2 objects, 4 morphisms on each side
        let f = free_og(&g, &x, 2, 100_000).unwrap();
        let (src, _) = fixed_free_component(&f, 2, &[0, 1]).unwrap();
        assert_eq!(src.num_objects(), 2);
        assert_eq!(src.num_morphisms(), 4);
    }

    #[test]
    fn catone_s3_point() {
        let g = preset("S3").unwrap();
        let x = trivial_gset(&g, 1);
        for j in 0..=3 {
            let r = catone_check(&g, &x, j, 2_000_000).unwrap();
            assert!(r.all_pass(), "j={j}: {r}");
        }
        // object count at j = 3 both sides = #{3-element S3-sets}
        let expected = crate::gset::count_hsets_of_size(&g, 3);
        assert_eq!(fgx_objects(&g, &x, 3).len() > 0, true);
        let (cat, _) = fgx_component(&g, &x, 3);
        let skel = crate::fincat::skeleton(&cat).unwrap();
        assert_eq!(skel.len(), expected);
    }

    #[test]
    fn cattwo_examples() {
        let g = c2();
        let x = trivial_gset(&g, 1);
        let r = cattwo_check(&g, &x, 3).unwrap();
        assert!(r.all_pass(), "{r}");
        // j = 2: classes {2 fixed pts} aut 2, {free orbit} aut 2
        let mut orders: Vec<usize> = wreath_classes(&g, &x, 2)
            .iter()
            .map(|c| c.automorphism_order)
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 2]);
        // j = 3 slice: orders {6, 2}
        let mut orders: Vec<usize> = wreath_classes(&g, &x, 3)
            .iter()
            .map(|c| c.automorphism_order)
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 6]);
        // X = ∅: only the empty class
        let xe = crate::gset::empty_gset(&g);
        assert_eq!(wreath_classes(&g, &xe, 0).len(), 1);
        assert_eq!(wreath_classes(&g, &xe, 1).len(), 0);
    }

    #[test]
    fn ident_triple_c2_regular() {
        let g = c2();
        let x = regular_gset(&g);
        let r = ident_check(&g, &x, 2, 1_000_000).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn f_shriek_functorial_and_equivariant() {
        let g = c2();
        let x = trivial_gset(&g, 2);
        let y = trivial_gset(&g, 1);
        let f = free_og(&g, &x, 3, 100_000).unwrap();
        let fy = free_og(&g, &y, 3, 100_000).unwrap();
        let collapse = gmap(&g, &x, &y, vec![0, 0]).unwrap();
        functor_equivariance(&f, &fy, &collapse).unwrap();
        // (g∘f)! = g! ∘ f! with f = id
        let idm = gmap(&g, &x, &x, vec![0, 1]).unwrap();
        for j in 0..=3 {
            for t in 0..f.count(j) {
                let o = f.obj(j, t);
                assert_eq!(f_shriek_obj(&idm.values, &o), o);
                assert_eq!(
                    f_shriek_obj(&collapse.values, &f_shriek_obj(&idm.values, &o)),
                    f_shriek_obj(&collapse.values, &o)
                );
            }
        }
    }

    #[test]
    fn i_star_deletion() {
        let g = c2();
        let a = trivial_gset(&g, 1);
        let cpart = regular_gset(&g);
        let b = disjoint_union(&g, &a, &cpart).unwrap(); // A ⊔ C, A first
        let map = i_star_map(b.size, &[0]).unwrap();
        // arity-2 object with one entry in C maps to arity 1
        let fb = free_og(&g, &b, 2, 100_000).unwrap();
        for t in 0..fb.count(2) {
            let o = fb.obj(2, t);
            let image = based_map_obj(&map, &o);
            let expected: usize = o.y.iter().filter(|&&v| v == 0).count();
            assert_eq!(image.arity(), expected);
        }
        // identity inclusion → identity functor
        let idmap = i_star_map(b.size, &[0, 1, 2]).unwrap();
        for t in 0..fb.count(2) {
            let o = fb.obj(2, t);
            assert_eq!(based_map_obj(&idmap, &o), o);
        }
        // based map commutes with the G-action
        let fa = free_og(&g, &a, 2, 100_000).unwrap();
        for j in 0..=2 {
            for t in 0..fb.count(j) {
                let o = fb.obj(j, t);
                for gg in 0..g.order() {
                    assert_eq!(
                        based_map_obj(&map, &fb.g_act(gg, &o)),
                        fa.g_act(gg, &based_map_obj(&map, &o))
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_examples_and_associativity() {
        let g = c2();
        let x = regular_gset(&g);
        let y = trivial_gset(&g, 1);
        let z = regular_gset(&g);
        let fx = free_og(&g, &x, 2, 100_000).unwrap();
        let fy = free_og(&g, &y, 1, 100_000).unwrap();
        let fz = free_og(&g, &z, 2, 100_000).unwrap();
        // zero factor → arity 0
        let o0 = fx.obj(0, 0);
        let o1 = fy.obj(1, 0);
        assert_eq!(free_pairing_obj(&o0, &o1, y.size).arity(), 0);
        // arities (1,1) → arity 1 pair
        let a1 = fx.obj(1, 1);
        let p = free_pairing_obj(&a1, &o1, y.size);
        assert_eq!(p.arity(), 1);
        assert_eq!(p.y, vec![a1.y[0] * y.size + o1.y[0]]);
        // associativity on arities (1,1,2)
        for tx in 0..fx.count(1) {
            for ty in 0..fy.count(1) {
                for tz in 0..fz.count(2) {
                    let ox = fx.obj(1, tx);
                    let oy = fy.obj(1, ty);
                    let oz = fz.obj(2, tz);
                    let l = free_pairing_obj(&free_pairing_obj(&ox, &oy, y.size), &oz, z.size);
                    let r = free_pairing_obj(&ox, &free_pairing_obj(&oy, &oz, z.size), y.size * z.size);
                    assert_eq!(l, r);
                }
            }
        }
        // pairing of G-fixed objects is G-fixed
        let xy = product_gset(&g, &x, &y).unwrap();
        let fxy = free_og(&g, &xy, 4, 1_000_000).unwrap();
        for j in 0..=2 {
            for t in 0..fx.count(j) {
                let ox = fx.obj(j, t);
                if (0..g.order()).any(|gg| fx.g_act(gg, &ox) != ox) {
                    continue;
                }
                for jy in 0..=1 {
                    for ty in 0..fy.count(jy) {
                        let oy = fy.obj(jy, ty);
                        if (0..g.order()).any(|gg| fy.g_act(gg, &oy) != oy) {
                            continue;
                        }
                        let p = free_pairing_obj(&ox, &oy, y.size);
                        for gg in 0..g.order() {
                            assert_eq!(fxy.g_act(gg, &p), p);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn span_unit_for_free_orbit_is_sign() {
        let g = c2();
        let b = regular_gset(&g);
        let u = unit_span(&g, &b);
        assert_eq!(u.arity(), 2);
        assert!(u.alpha[0].is_identity());
        assert_eq!(u.alpha[1], Perm::transposition(2, 0, 1));
        assert_eq!(u.y, vec![0, 3]); // (0,0) and (1,1) as pair indices
    }

    #[test]
    fn span_laws_hold() {
        let g = c2();
        let pt = trivial_gset(&g, 1);
        let fr = regular_gset(&g);
        for a in [&pt, &fr] {
            for b in [&pt, &fr] {
                for c in [&pt, &fr] {
                    let r = span_laws(&g, a, b, c, 2, 2_000_000).unwrap();
                    assert!(r.all_pass(), "A={} B={} C={}: {r}", a.size, b.size, c.size);
                }
            }
        }
    }

    #[test]
    fn component_matches_twisted_hom_counts() {
        // component j of the free category ≅ functors from G̃ into the
        // Σ_j-quotient of the chaotic category on Σ_j × X^j
        let g = c2();
        let x = trivial_gset(&g, 1);
        let f = free_og(&g, &x, 2, 10_000).unwrap();
        let comp = free_component_cat(&f, 2, 10_000).unwrap();
        // quotient model: objects X^j, labels σ valid iff tuples match
        let syms = SymCache::new(2);
        let objs: Vec<FreeObj> = (0..1)
            .map(|_| FreeObj {
                alpha: vec![Perm::identity(2)],
                y: vec![0, 0],
            })
            .collect();
        let d = labeled_groupoid(
            vec!["y".into()],
            &objs,
            |_| 2,
            &syms,
            |a, b, s| tuple_valid(s, a, b),
        );
        let (cat, _, _) = crate::fincat::twisted_hom(&g, &d, 100_000).unwrap();
        assert_eq!(comp.num_objects(), cat.num_objects());
        assert_eq!(comp.num_morphisms(), cat.num_morphisms());
    }
}
