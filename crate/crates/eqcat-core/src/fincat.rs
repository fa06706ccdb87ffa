//! Finite categories with optional strict G-actions. Chaotic categories get
//! an implicit morphism store (one morphism per ordered object pair), since
//! materializing n² morphisms defeats the larger examples.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use serde::Deserialize;
use std::collections::{BTreeMap, HashMap};

/// A strict action of `group` on a category: one object permutation and one
/// morphism permutation per group element, each a functor.
#[derive(Clone, Debug)]
pub struct CatAction {
    pub group: FiniteGroup,
    pub on_objects: Vec<Vec<usize>>,
    /// Per-element morphism permutation; left empty for chaotic stores,
    /// where the action on morphisms is determined by the object action.
    pub on_morphisms: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct ExplicitStore {
    /// (src, tgt) per morphism id.
    pub mor: Vec<(usize, usize)>,
    /// identity morphism id per object.
    pub identities: Vec<usize>,
    /// (g, f) → g∘f for tgt(f) = src(g).
    pub compose: HashMap<(usize, usize), usize>,
    /// morphism ids grouped by (src, tgt).
    pub hom_index: HashMap<(usize, usize), Vec<usize>>,
}

#[derive(Clone, Debug)]
pub enum Store {
    Explicit(ExplicitStore),
    /// Exactly one morphism x → y per ordered pair; id = src·n + tgt.
    Chaotic,
}

#[derive(Clone, Debug)]
pub struct GFinCat {
    pub object_names: Vec<String>,
    pub store: Store,
    pub action: Option<CatAction>,
}

impl GFinCat {
    pub fn num_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        match &self.store {
            Store::Explicit(s) => s.mor.len(),
            Store::Chaotic => self.num_objects() * self.num_objects(),
        }
    }

    pub fn mor_src(&self, m: usize) -> usize {
        match &self.store {
            Store::Explicit(s) => s.mor[m].0,
            Store::Chaotic => m / self.num_objects(),
        }
    }

    pub fn mor_tgt(&self, m: usize) -> usize {
        match &self.store {
            Store::Explicit(s) => s.mor[m].1,
            Store::Chaotic => m % self.num_objects(),
        }
    }

    pub fn identity(&self, x: usize) -> usize {
        match &self.store {
            Store::Explicit(s) => s.identities[x],
            Store::Chaotic => x * self.num_objects() + x,
        }
    }

    /// g∘f, defined when tgt(f) = src(g).
    pub fn compose(&self, g: usize, f: usize) -> usize {
        match &self.store {
            Store::Explicit(s) => s.compose[&(g, f)],
            Store::Chaotic => {
                let n = self.num_objects();
                (f / n) * n + (g % n)
            }
        }
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        match &self.store {
            Store::Explicit(s) => s.hom_index.get(&(x, y)).cloned().unwrap_or_default(),
            Store::Chaotic => vec![x * self.num_objects() + y],
        }
    }

    pub fn act_obj(&self, g: usize, x: usize) -> usize {
        match &self.action {
            Some(a) => a.on_objects[g][x],
            None => x,
        }
    }

    pub fn act_mor(&self, g: usize, m: usize) -> usize {
        match &self.action {
            Some(a) => match &self.store {
                Store::Explicit(_) => a.on_morphisms[g][m],
                Store::Chaotic => {
                    let n = self.num_objects();
                    a.on_objects[g][m / n] * n + a.on_objects[g][m % n]
                }
            },
            None => m,
        }
    }

    pub fn has_action(&self) -> bool {
        self.action.is_some()
    }

    /// All morphisms are invertible?
    pub fn is_groupoid(&self) -> Result<()> {
        match &self.store {
            Store::Chaotic => Ok(()),
            Store::Explicit(s) => {
                for m in 0..s.mor.len() {
                    let (x, y) = s.mor[m];
                    let inv = self
                        .hom(y, x)
                        .into_iter()
                        .find(|&w| s.compose[&(w, m)] == s.identities[x] && s.compose[&(m, w)] == s.identities[y]);
                    if inv.is_none() {
                        return Err(Error::NotAGroupoid(format!("m{m}: {x}→{y}")));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Validate category axioms (and the action, when present). Quadratic in
/// morphism count; meant for user input and small instances.
pub fn validate(c: &GFinCat) -> Result<()> {
    if let Store::Explicit(s) = &c.store {
        let n = c.num_objects();
        if s.identities.len() != n {
            return Err(Error::NotACategory {
                axiom: "identities".into(),
                witness: "missing identity assignment".into(),
            });
        }
        for (x, &i) in s.identities.iter().enumerate() {
            if s.mor[i] != (x, x) {
                return Err(Error::NotACategory {
                    axiom: "identity endpoints".into(),
                    witness: format!("object {x}"),
                });
            }
        }
        let m = s.mor.len();
        for f in 0..m {
            for g in 0..m {
                let composable = s.mor[f].1 == s.mor[g].0;
                match s.compose.get(&(g, f)) {
                    Some(&gf) => {
                        if !composable {
                            return Err(Error::NotACategory {
                                axiom: "composability".into(),
                                witness: format!("({g},{f})"),
                            });
                        }
                        if s.mor[gf] != (s.mor[f].0, s.mor[g].1) {
                            return Err(Error::NotACategory {
                                axiom: "composite endpoints".into(),
                                witness: format!("({g},{f})"),
                            });
                        }
                    }
                    None => {
                        if composable {
                            return Err(Error::NotACategory {
                                axiom: "composition totality".into(),
                                witness: format!("({g},{f})"),
                            });
                        }
                    }
                }
            }
        }
        for f in 0..m {
            let (x, y) = s.mor[f];
            if s.compose[&(f, s.identities[x])] != f || s.compose[&(s.identities[y], f)] != f {
                return Err(Error::NotACategory {
                    axiom: "unit".into(),
                    witness: format!("m{f}"),
                });
            }
        }
        for f in 0..m {
            for g in 0..m {
                if s.mor[f].1 != s.mor[g].0 {
                    continue;
                }
                for h in 0..m {
                    if s.mor[g].1 != s.mor[h].0 {
                        continue;
                    }
                    let left = s.compose[&(h, s.compose[&(g, f)])];
                    let right = s.compose[&(s.compose[&(h, g)], f)];
                    if left != right {
                        return Err(Error::NotACategory {
                            axiom: "associativity".into(),
                            witness: format!("({h},{g},{f})"),
                        });
                    }
                }
            }
        }
    }
    if let Some(a) = &c.action {
        let grp = &a.group;
        for g in 0..grp.order() {
            // functoriality of each g
            for m in 0..c.num_morphisms() {
                let gm = c.act_mor(g, m);
                if c.mor_src(gm) != c.act_obj(g, c.mor_src(m))
                    || c.mor_tgt(gm) != c.act_obj(g, c.mor_tgt(m))
                {
                    return Err(Error::NotACategory {
                        axiom: "action preserves endpoints".into(),
                        witness: format!("g{g}, m{m}"),
                    });
                }
            }
            for x in 0..c.num_objects() {
                if c.act_mor(g, c.identity(x)) != c.identity(c.act_obj(g, x)) {
                    return Err(Error::NotACategory {
                        axiom: "action preserves identities".into(),
                        witness: format!("g{g}, object {x}"),
                    });
                }
            }
            if matches!(c.store, Store::Explicit(_)) {
                for f in 0..c.num_morphisms() {
                    for h in 0..c.num_morphisms() {
                        if c.mor_tgt(f) == c.mor_src(h) {
                            if c.act_mor(g, c.compose(h, f))
                                != c.compose(c.act_mor(g, h), c.act_mor(g, f))
                            {
                                return Err(Error::NotACategory {
                                    axiom: "action preserves composition".into(),
                                    witness: format!("g{g}, ({h},{f})"),
                                });
                            }
                        }
                    }
                }
            }
        }
        // action is a homomorphism to functor composition
        for g in 0..grp.order() {
            for h in 0..grp.order() {
                let gh = grp.mul(g, h);
                for x in 0..c.num_objects() {
                    if c.act_obj(gh, x) != c.act_obj(g, c.act_obj(h, x)) {
                        return Err(Error::NotACategory {
                            axiom: "group action on objects".into(),
                            witness: format!("({g},{h},{x})"),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn explicit_from_parts(
    object_names: Vec<String>,
    mor: Vec<(usize, usize)>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    action: Option<CatAction>,
) -> GFinCat {
    let mut hom_index: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &(s, t)) in mor.iter().enumerate() {
        hom_index.entry((s, t)).or_default().push(i);
    }
    GFinCat {
        object_names,
        store: Store::Explicit(ExplicitStore {
            mor,
            identities,
            compose,
            hom_index,
        }),
        action,
    }
}

/// The terminal category ∗.
pub fn terminal() -> GFinCat {
    let mut compose = HashMap::new();
    compose.insert((0, 0), 0);
    explicit_from_parts(vec!["*".into()], vec![(0, 0)], vec![0], compose, None)
}

/// Discrete category: only identity morphisms.
pub fn discrete(names: Vec<String>) -> GFinCat {
    let n = names.len();
    let mor: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let compose: HashMap<(usize, usize), usize> = (0..n).map(|i| ((i, i), i)).collect();
    explicit_from_parts(names, mor, (0..n).collect(), compose, None)
}

/// One object, morphisms = group elements, composition = multiplication.
pub fn group_cat(g: &FiniteGroup) -> GFinCat {
    let n = g.order();
    let mor: Vec<(usize, usize)> = vec![(0, 0); n];
    let mut compose = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            compose.insert((a, b), g.mul(a, b));
        }
    }
    explicit_from_parts(
        vec!["*".into()],
        mor,
        vec![g.identity_index],
        compose,
        None,
    )
}

/// Endow a category having no action with the trivial G-action.
pub fn with_trivial_action(mut c: GFinCat, g: &FiniteGroup) -> GFinCat {
    let on_objects = vec![(0..c.num_objects()).collect::<Vec<usize>>(); g.order()];
    let on_morphisms = match c.store {
        Store::Explicit(_) => vec![(0..c.num_morphisms()).collect::<Vec<usize>>(); g.order()],
        Store::Chaotic => Vec::new(),
    };
    c.action = Some(CatAction {
        group: g.clone(),
        on_objects,
        on_morphisms,
    });
    c
}

/// Chaotic category on named objects, with an optional object action.
pub fn chaotic(names: Vec<String>, action: Option<(FiniteGroup, Vec<Vec<usize>>)>) -> GFinCat {
    GFinCat {
        object_names: names,
        store: Store::Chaotic,
        action: action.map(|(group, on_objects)| CatAction {
            group,
            on_objects,
            on_morphisms: Vec::new(),
        }),
    }
}

/// G̃: the chaotic category on the elements of G, G acting by left
/// translation on objects.
pub fn g_tilde(g: &FiniteGroup) -> GFinCat {
    let n = g.order();
    let on_objects: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|x| g.mul(a, x)).collect()).collect();
    chaotic(g.elements.clone(), Some((g.clone(), on_objects)))
}

#[derive(Deserialize)]
struct MorSpec {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
struct ActionSpec {
    objects: BTreeMap<String, String>,
    morphisms: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct CatFile {
    objects: Vec<String>,
    morphisms: Vec<MorSpec>,
    identities: BTreeMap<String, String>,
    compose: Vec<[String; 3]>,
    #[serde(default)]
    action: Option<BTreeMap<String, ActionSpec>>,
}

/// Parse and validate a category from its JSON file content; an action, if
/// present, is resolved against `group`.
pub fn build_category(content: &str, group: Option<&FiniteGroup>) -> Result<GFinCat> {
    let f: CatFile = serde_json::from_str(content).map_err(|e| Error::Parse(e.to_string()))?;
    let obj_idx: HashMap<&str, usize> = f
        .objects
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mor_idx: HashMap<&str, usize> = f
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.id.as_str(), i))
        .collect();
    let look_obj = |s: &str| -> Result<usize> {
        obj_idx
            .get(s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown object {s}")))
    };
    let look_mor = |s: &str| -> Result<usize> {
        mor_idx
            .get(s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown morphism {s}")))
    };
    let mut mor = Vec::new();
    for m in &f.morphisms {
        mor.push((look_obj(&m.src)?, look_obj(&m.tgt)?));
    }
    let mut identities = vec![usize::MAX; f.objects.len()];
    for (obj, mid) in &f.identities {
        identities[look_obj(obj)?] = look_mor(mid)?;
    }
    if identities.contains(&usize::MAX) {
        return Err(Error::Parse("identity missing for some object".into()));
    }
    let mut compose = HashMap::new();
    for [g, fm, gf] in &f.compose {
        compose.insert((look_mor(g)?, look_mor(fm)?), look_mor(gf)?);
    }
    let action = match f.action {
        None => None,
        Some(spec) => {
            let group = group.ok_or_else(|| {
                Error::Parse("category file declares an action but no group was supplied".into())
            })?;
            let mut on_objects = vec![Vec::new(); group.order()];
            let mut on_morphisms = vec![Vec::new(); group.order()];
            for g in 0..group.order() {
                let name = &group.elements[g];
                let a = spec.get(name).ok_or_else(|| {
                    Error::Parse(format!("action missing for group element {name}"))
                })?;
                let mut ov = vec![usize::MAX; f.objects.len()];
                for (x, y) in &a.objects {
                    ov[look_obj(x)?] = look_obj(y)?;
                }
                let mut mv = vec![usize::MAX; mor.len()];
                for (x, y) in &a.morphisms {
                    mv[look_mor(x)?] = look_mor(y)?;
                }
                if ov.contains(&usize::MAX) || mv.contains(&usize::MAX) {
                    return Err(Error::Parse(format!("incomplete action for {name}")));
                }
                on_objects[g] = ov;
                on_morphisms[g] = mv;
            }
            Some(CatAction {
                group: group.clone(),
                on_objects,
                on_morphisms,
            })
        }
    };
    let c = explicit_from_parts(f.objects, mor, identities, compose, action);
    validate(&c)?;
    Ok(c)
}

/// A functor between two categories, given pointwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FunctorVal {
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl FunctorVal {
    pub fn identity(c: &GFinCat) -> FunctorVal {
        FunctorVal {
            object_map: (0..c.num_objects()).collect(),
            morphism_map: (0..c.num_morphisms()).collect(),
        }
    }

    pub fn is_functor(&self, a: &GFinCat, b: &GFinCat) -> bool {
        if self.object_map.len() != a.num_objects() || self.morphism_map.len() != a.num_morphisms()
        {
            return false;
        }
        for m in 0..a.num_morphisms() {
            let fm = self.morphism_map[m];
            if b.mor_src(fm) != self.object_map[a.mor_src(m)]
                || b.mor_tgt(fm) != self.object_map[a.mor_tgt(m)]
            {
                return false;
            }
        }
        for x in 0..a.num_objects() {
            if self.morphism_map[a.identity(x)] != b.identity(self.object_map[x]) {
                return false;
            }
        }
        for f in 0..a.num_morphisms() {
            for g in 0..a.num_morphisms() {
                if a.mor_tgt(f) == a.mor_src(g)
                    && self.morphism_map[a.compose(g, f)]
                        != b.compose(self.morphism_map[g], self.morphism_map[f])
                {
                    return false;
                }
            }
        }
        true
    }
}

pub const DEFAULT_FUNCTOR_BUDGET: usize = 100_000;

/// All functors A → B. Uses the chaotic-source shortcut (a functor from a
/// chaotic category is a choice of image objects plus a compatible system of
/// isomorphisms from a base image) and falls back to backtracking otherwise.
pub fn all_functors(a: &GFinCat, b: &GFinCat, budget: usize) -> Result<Vec<FunctorVal>> {
    if a.num_objects() == 0 {
        return Ok(vec![FunctorVal {
            object_map: vec![],
            morphism_map: vec![],
        }]);
    }
    if matches!(a.store, Store::Chaotic) {
        return chaotic_source_functors(a, b, budget);
    }
    // generic backtracking over object maps, then morphism assignments
    let est = b
        .num_objects()
        .checked_pow(a.num_objects() as u32)
        .unwrap_or(usize::MAX);
    if est > budget {
        return Err(Error::SizeBudgetExceeded {
            need: est,
            budget,
        });
    }
    let mut out = Vec::new();
    let mut obj_map = vec![0usize; a.num_objects()];
    loop {
        // enumerate morphism assignments compatible with obj_map
        let mut mor_map = vec![usize::MAX; a.num_morphisms()];
        for x in 0..a.num_objects() {
            mor_map[a.identity(x)] = b.identity(obj_map[x]);
        }
        assign_morphisms(a, b, &obj_map, &mut mor_map, 0, &mut out, budget)?;
        // next object map
        let mut i = 0;
        loop {
            if i == obj_map.len() {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            obj_map[i] += 1;
            if obj_map[i] < b.num_objects() {
                break;
            }
            obj_map[i] = 0;
            i += 1;
        }
    }
}

fn assign_morphisms(
    a: &GFinCat,
    b: &GFinCat,
    obj_map: &[usize],
    mor_map: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<FunctorVal>,
    budget: usize,
) -> Result<()> {
    let next = (from..a.num_morphisms()).find(|&m| mor_map[m] == usize::MAX);
    let Some(m) = next else {
        let f = FunctorVal {
            object_map: obj_map.to_vec(),
            morphism_map: mor_map.clone(),
        };
        if f.is_functor(a, b) {
            if out.len() >= budget {
                return Err(Error::SizeBudgetExceeded {
                    need: out.len() + 1,
                    budget,
                });
            }
            out.push(f);
        }
        return Ok(());
    };
    let candidates = b.hom(obj_map[a.mor_src(m)], obj_map[a.mor_tgt(m)]);
    for c in candidates {
        mor_map[m] = c;
        assign_morphisms(a, b, obj_map, mor_map, m + 1, out, budget)?;
    }
    mor_map[m] = usize::MAX;
    Ok(())
}

fn isos_from(b: &GFinCat, x: usize) -> Vec<(usize, usize, usize)> {
    // (target object, morphism, inverse morphism)
    let mut out = Vec::new();
    for y in 0..b.num_objects() {
        for m in b.hom(x, y) {
            for w in b.hom(y, x) {
                if b.compose(w, m) == b.identity(x) && b.compose(m, w) == b.identity(y) {
                    out.push((y, m, w));
                    break;
                }
            }
        }
    }
    out
}

fn chaotic_source_functors(a: &GFinCat, b: &GFinCat, budget: usize) -> Result<Vec<FunctorVal>> {
    let n = a.num_objects();
    // a functor sends the unique morphism x→y to f_y ∘ f_x⁻¹ where
    // f_x: F(base) → F(x) are isomorphisms with f_base = id
    let mut out = Vec::new();
    for base_img in 0..b.num_objects() {
        let isos = isos_from(b, base_img);
        let count = isos.len().checked_pow((n - 1) as u32).unwrap_or(usize::MAX);
        if out.len().saturating_add(count) > budget {
            return Err(Error::SizeBudgetExceeded {
                need: out.len() + count,
                budget,
            });
        }
        // choose an iso for every object other than the base (object 0)
        let mut choice = vec![0usize; n]; // index into isos; object 0 pinned
        let id_triple = (base_img, b.identity(base_img), b.identity(base_img));
        loop {
            let fx: Vec<(usize, usize, usize)> = (0..n)
                .map(|x| if x == 0 { id_triple } else { isos[choice[x]] })
                .collect();
            let object_map: Vec<usize> = fx.iter().map(|t| t.0).collect();
            let mut morphism_map = vec![0usize; n * n];
            for x in 0..n {
                for y in 0..n {
                    morphism_map[x * n + y] = b.compose(fx[y].1, fx[x].2);
                }
            }
            out.push(FunctorVal {
                object_map,
                morphism_map,
            });
            // advance
            let mut i = 1;
            loop {
                if n == 1 || i == n {
                    break;
                }
                choice[i] += 1;
                if choice[i] < isos.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if n == 1 || choice[1..].iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All natural transformations F ⇒ G between functors A → B.
pub fn natural_transformations(
    a: &GFinCat,
    b: &GFinCat,
    f: &FunctorVal,
    g: &FunctorVal,
) -> Vec<Vec<usize>> {
    let n = a.num_objects();
    let mut out = Vec::new();
    let comps: Vec<Vec<usize>> = (0..n)
        .map(|x| b.hom(f.object_map[x], g.object_map[x]))
        .collect();
    if comps.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut choice = vec![0usize; n];
    loop {
        let eta: Vec<usize> = (0..n).map(|x| comps[x][choice[x]]).collect();
        let natural = (0..a.num_morphisms()).all(|m| {
            let (x, y) = (a.mor_src(m), a.mor_tgt(m));
            b.compose(eta[y], f.morphism_map[m]) == b.compose(g.morphism_map[m], eta[x])
        });
        if natural {
            out.push(eta);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            choice[i] += 1;
            if choice[i] < comps[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The functor category Cat(A, B). When both carry actions of the same
/// group, the result carries the conjugation action (g·F)(x) = g·F(g⁻¹x).
/// Returns the category together with the functor objects in index order.
pub fn functor_category(a: &GFinCat, b: &GFinCat, budget: usize) -> Result<(GFinCat, Vec<FunctorVal>)> {
    let functors = all_functors(a, b, budget)?;
    let names: Vec<String> = (0..functors.len()).map(|i| format!("F{i}")).collect();

    let action = match (&a.action, &b.action) {
        (Some(aa), Some(ba)) if aa.group.name == ba.group.name => {
            let grp = ba.group.clone();
            let mut on_objects = Vec::with_capacity(grp.order());
            for g in 0..grp.order() {
                let ginv = grp.inv(g);
                let mut row = Vec::with_capacity(functors.len());
                for f in &functors {
                    let object_map: Vec<usize> = (0..a.num_objects())
                        .map(|x| b.act_obj(g, f.object_map[a.act_obj(ginv, x)]))
                        .collect();
                    let morphism_map: Vec<usize> = (0..a.num_morphisms())
                        .map(|m| b.act_mor(g, f.morphism_map[a.act_mor(ginv, m)]))
                        .collect();
                    let gf = FunctorVal {
                        object_map,
                        morphism_map,
                    };
                    let pos = functors
                        .binary_search(&gf)
                        .map_err(|_| Error::Invalid("conjugated functor not found".into()))?;
                    row.push(pos);
                }
                on_objects.push(row);
            }
            Some((grp, on_objects))
        }
        _ => None,
    };

    if matches!(b.store, Store::Chaotic) {
        // a functor category into a chaotic category is chaotic
        return Ok((chaotic(names, action), functors));
    }

    // explicit morphisms: natural transformations
    let mut mor: Vec<(usize, usize)> = Vec::new();
    let mut mor_data: Vec<Vec<usize>> = Vec::new(); // components per object
    let mut mor_lookup: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut identities = vec![usize::MAX; functors.len()];
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for eta in natural_transformations(a, b, f, g) {
                let id = mor.len();
                mor.push((i, j));
                mor_lookup.insert((i, j, eta.clone()), id);
                if i == j && (0..a.num_objects()).all(|x| eta[x] == b.identity(f.object_map[x])) {
                    identities[i] = id;
                }
                mor_data.push(eta);
            }
        }
    }
    let mut compose = HashMap::new();
    for f_id in 0..mor.len() {
        for g_id in 0..mor.len() {
            if mor[f_id].1 != mor[g_id].0 {
                continue;
            }
            let composite: Vec<usize> = (0..a.num_objects())
                .map(|x| b.compose(mor_data[g_id][x], mor_data[f_id][x]))
                .collect();
            let key = (mor[f_id].0, mor[g_id].1, composite);
            compose.insert((g_id, f_id), mor_lookup[&key]);
        }
    }
    let cat_action = match action {
        None => None,
        Some((grp, on_objects)) => {
            let mut on_morphisms = Vec::with_capacity(grp.order());
            for g in 0..grp.order() {
                let ginv = grp.inv(g);
                let mut row = Vec::with_capacity(mor.len());
                for m in 0..mor.len() {
                    let (i, j) = mor[m];
                    let gi = on_objects[g][i];
                    let gj = on_objects[g][j];
                    let comps: Vec<usize> = (0..a.num_objects())
                        .map(|x| b.act_mor(g, mor_data[m][a.act_obj(ginv, x)]))
                        .collect();
                    row.push(mor_lookup[&(gi, gj, comps)]);
                }
                on_morphisms.push(row);
            }
            Some(CatAction {
                group: grp,
                on_objects,
                on_morphisms,
            })
        }
    };
    Ok((
        explicit_from_parts(names, mor, identities, compose, cat_action),
        functors,
    ))
}

/// Cat(G̃, A) with the conjugation action, plus the inclusion ι: A → Cat(G̃,A)
/// induced by the projection G̃ → ∗ (constant functors).
pub fn twisted_hom(
    g: &FiniteGroup,
    a: &GFinCat,
    budget: usize,
) -> Result<(GFinCat, Vec<FunctorVal>, Vec<usize>)> {
    let gt = g_tilde(g);
    let (cat, functors) = functor_category(&gt, a, budget)?;
    // ι sends an object x of A to the constant functor at x
    let mut iota = Vec::with_capacity(a.num_objects());
    for x in 0..a.num_objects() {
        let object_map = vec![x; g.order()];
        let morphism_map = vec![a.identity(x); g.order() * g.order()];
        let cf = FunctorVal {
            object_map,
            morphism_map,
        };
        let pos = functors
            .binary_search(&cf)
            .map_err(|_| Error::Invalid("constant functor not enumerated".into()))?;
        iota.push(pos);
    }
    Ok((cat, functors, iota))
}

/// Full subcategory on the H-fixed objects and H-fixed morphisms.
/// Returns the category plus the object and morphism ids kept (explicit
/// stores) — for chaotic stores the morphism id list is empty because every
/// morphism between fixed objects is fixed.
pub fn fixed_subcategory(c: &GFinCat, h_members: &[usize]) -> (GFinCat, Vec<usize>, Vec<usize>) {
    let fixed_objs: Vec<usize> = (0..c.num_objects())
        .filter(|&x| h_members.iter().all(|&g| c.act_obj(g, x) == x))
        .collect();
    let names: Vec<String> = fixed_objs
        .iter()
        .map(|&x| c.object_names[x].clone())
        .collect();
    match &c.store {
        Store::Chaotic => {
            // a morphism x→y between fixed objects is automatically fixed
            (chaotic(names, None), fixed_objs, Vec::new())
        }
        Store::Explicit(_) => {
            let obj_pos: HashMap<usize, usize> =
                fixed_objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let fixed_mors: Vec<usize> = (0..c.num_morphisms())
                .filter(|&m| {
                    obj_pos.contains_key(&c.mor_src(m))
                        && obj_pos.contains_key(&c.mor_tgt(m))
                        && h_members.iter().all(|&g| c.act_mor(g, m) == m)
                })
                .collect();
            let mor_pos: HashMap<usize, usize> =
                fixed_mors.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mor: Vec<(usize, usize)> = fixed_mors
                .iter()
                .map(|&m| (obj_pos[&c.mor_src(m)], obj_pos[&c.mor_tgt(m)]))
                .collect();
            let identities: Vec<usize> = fixed_objs
                .iter()
                .map(|&x| mor_pos[&c.identity(x)])
                .collect();
            let mut compose = HashMap::new();
            for &f in &fixed_mors {
                for &g2 in &fixed_mors {
                    if c.mor_tgt(f) == c.mor_src(g2) {
                        compose.insert((mor_pos[&g2], mor_pos[&f]), mor_pos[&c.compose(g2, f)]);
                    }
                }
            }
            (
                explicit_from_parts(names, mor, identities, compose, None),
                fixed_objs,
                fixed_mors,
            )
        }
    }
}

/// Quotient of C by a free action of Π given by object/morphism permutation
/// tables. Composition is induced and checked well defined.
pub fn orbit_category(
    c: &GFinCat,
    pi: &FiniteGroup,
    on_objects: &[Vec<usize>],
    on_morphisms_opt: Option<&[Vec<usize>]>,
) -> Result<GFinCat> {
    // freeness on objects
    for x in 0..c.num_objects() {
        for g in 0..pi.order() {
            if g != pi.identity_index && on_objects[g][x] == x {
                return Err(Error::ActionNotFree(c.object_names[x].clone()));
            }
        }
    }
    let act_mor = |g: usize, m: usize| -> usize {
        match (on_morphisms_opt, &c.store) {
            (Some(om), _) => om[g][m],
            (None, Store::Chaotic) => {
                let n = c.num_objects();
                on_objects[g][m / n] * n + on_objects[g][m % n]
            }
            (None, Store::Explicit(_)) => panic!("explicit store needs a morphism action"),
        }
    };
    // object orbits
    let mut obj_class = vec![usize::MAX; c.num_objects()];
    let mut obj_reps = Vec::new();
    for x in 0..c.num_objects() {
        if obj_class[x] != usize::MAX {
            continue;
        }
        let k = obj_reps.len();
        for g in 0..pi.order() {
            obj_class[on_objects[g][x]] = k;
        }
        obj_reps.push(x);
    }
    let mut mor_class = vec![usize::MAX; c.num_morphisms()];
    let mut mor_reps = Vec::new();
    for m in 0..c.num_morphisms() {
        if mor_class[m] != usize::MAX {
            continue;
        }
        let k = mor_reps.len();
        for g in 0..pi.order() {
            mor_class[act_mor(g, m)] = k;
        }
        mor_reps.push(m);
    }
    let mor: Vec<(usize, usize)> = mor_reps
        .iter()
        .map(|&m| (obj_class[c.mor_src(m)], obj_class[c.mor_tgt(m)]))
        .collect();
    let identities: Vec<usize> = obj_reps.iter().map(|&x| mor_class[c.identity(x)]).collect();
    // induced composition: translate representatives to a composable pair
    let mut compose = HashMap::new();
    for (fi, &f0) in mor_reps.iter().enumerate() {
        for (gi, &g0) in mor_reps.iter().enumerate() {
            if mor[fi].1 != mor[gi].0 {
                continue;
            }
            let mut value = None;
            for a in 0..pi.order() {
                let ga = act_mor(a, g0);
                if c.mor_src(ga) == c.mor_tgt(f0) {
                    let comp = mor_class[c.compose(ga, f0)];
                    match value {
                        None => value = Some(comp),
                        Some(v) if v != comp => {
                            return Err(Error::Invalid(
                                "orbit composition not well defined".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
            compose.insert(
                (gi, fi),
                value.ok_or_else(|| Error::Invalid("no composable translate".into()))?,
            );
        }
    }
    let names: Vec<String> = obj_reps
        .iter()
        .map(|&x| format!("[{}]", c.object_names[x]))
        .collect();
    let q = explicit_from_parts(names, mor, identities, compose, None);
    validate(&q)?;
    Ok(q)
}

/// One skeleton entry: an isomorphism class of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkelClass {
    pub representative: usize,
    pub class_size: usize,
    pub automorphism_order: usize,
}

/// Isomorphism classes of a finite groupoid with automorphism-group orders,
/// sorted by (automorphism order, class size, representative).
pub fn skeleton(c: &GFinCat) -> Result<Vec<SkelClass>> {
    c.is_groupoid()?;
    let n = c.num_objects();
    if matches!(c.store, Store::Chaotic) {
        return Ok(if n == 0 {
            Vec::new()
        } else {
            vec![SkelClass {
                representative: 0,
                class_size: n,
                automorphism_order: 1,
            }]
        });
    }
    let mut class = vec![usize::MAX; n];
    let mut out = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let k = out.len();
        // connected component by morphism reachability (groupoid ⟹ iso class)
        let mut stack = vec![x];
        let mut members = Vec::new();
        class[x] = k;
        while let Some(y) = stack.pop() {
            members.push(y);
            for z in 0..n {
                if class[z] == usize::MAX && (!c.hom(y, z).is_empty() || !c.hom(z, y).is_empty()) {
                    class[z] = k;
                    stack.push(z);
                }
            }
        }
        out.push(SkelClass {
            representative: x,
            class_size: members.len(),
            automorphism_order: c.hom(x, x).len(),
        });
    }
    out.sort_by_key(|s| (s.automorphism_order, s.class_size, s.representative));
    Ok(out)
}

/// Multiset of automorphism orders across iso classes — the skeleton
/// fingerprint used when comparing two models of the same groupoid.
pub fn skeleton_fingerprint(c: &GFinCat) -> Result<Vec<usize>> {
    Ok(skeleton(c)?.into_iter().map(|s| s.automorphism_order).collect())
}

#[derive(Clone, Debug)]
pub struct EquivalenceVerdict {
    pub essentially_surjective: bool,
    pub fully_faithful: bool,
    pub witness: Option<String>,
}

impl EquivalenceVerdict {
    pub fn is_equivalence(&self) -> bool {
        self.essentially_surjective && self.fully_faithful
    }
}

/// Decide whether F: A → B is an equivalence: essential surjectivity plus
/// full faithfulness, with a witness on failure.
pub fn check_equivalence(a: &GFinCat, b: &GFinCat, f: &FunctorVal) -> EquivalenceVerdict {
    let mut witness = None;
    // essential surjectivity
    let iso_to_image = |y: usize| -> bool {
        (0..a.num_objects()).any(|x| {
            let fx = f.object_map[x];
            b.hom(fx, y).into_iter().any(|m| {
                b.hom(y, fx).into_iter().any(|w| {
                    b.compose(w, m) == b.identity(fx) && b.compose(m, w) == b.identity(y)
                })
            })
        })
    };
    let mut essentially_surjective = true;
    for y in 0..b.num_objects() {
        if !iso_to_image(y) {
            essentially_surjective = false;
            witness = Some(format!("object {} not in essential image", b.object_names[y]));
            break;
        }
    }
    // full faithfulness on each hom set
    let mut fully_faithful = true;
    'outer: for x in 0..a.num_objects() {
        for y in 0..a.num_objects() {
            let dom = a.hom(x, y);
            let mut images: Vec<usize> = dom.iter().map(|&m| f.morphism_map[m]).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            if images.len() != before {
                fully_faithful = false;
                witness = Some(format!("not faithful on hom({x},{y})"));
                break 'outer;
            }
            let codom = b.hom(f.object_map[x], f.object_map[y]);
            if images.len() != codom.len() {
                fully_faithful = false;
                witness = Some(format!("not full on hom({x},{y})"));
                break 'outer;
            }
        }
    }
    EquivalenceVerdict {
        essentially_surjective,
        fully_faithful,
        witness,
    }
}

/// Product category A × B (explicit stores only at the scales we need).
pub fn product_cat(a: &GFinCat, b: &GFinCat) -> GFinCat {
    let na = a.num_objects();
    let nb = b.num_objects();
    let names: Vec<String> = (0..na * nb)
        .map(|i| format!("({},{})", a.object_names[i / nb], b.object_names[i % nb]))
        .collect();
    let ma = a.num_morphisms();
    let mb = b.num_morphisms();
    let mor: Vec<(usize, usize)> = (0..ma * mb)
        .map(|i| {
            let (f, g) = (i / mb, i % mb);
            (
                a.mor_src(f) * nb + b.mor_src(g),
                a.mor_tgt(f) * nb + b.mor_tgt(g),
            )
        })
        .collect();
    let identities: Vec<usize> = (0..na * nb)
        .map(|i| a.identity(i / nb) * mb + b.identity(i % nb))
        .collect();
    let mut compose = HashMap::new();
    for f in 0..ma * mb {
        for g in 0..ma * mb {
            let (fa, fb) = (f / mb, f % mb);
            let (ga, gb) = (g / mb, g % mb);
            if a.mor_tgt(fa) == a.mor_src(ga) && b.mor_tgt(fb) == b.mor_src(gb) {
                compose.insert((g, f), a.compose(ga, fa) * mb + b.compose(gb, fb));
            }
        }
    }
    let action = match (&a.action, &b.action) {
        (Some(aa), Some(ba)) if aa.group.name == ba.group.name => {
            let grp = aa.group.clone();
            let on_objects: Vec<Vec<usize>> = (0..grp.order())
                .map(|g| {
                    (0..na * nb)
                        .map(|i| a.act_obj(g, i / nb) * nb + b.act_obj(g, i % nb))
                        .collect()
                })
                .collect();
            let on_morphisms: Vec<Vec<usize>> = (0..grp.order())
                .map(|g| {
                    (0..ma * mb)
                        .map(|i| a.act_mor(g, i / mb) * mb + b.act_mor(g, i % mb))
                        .collect()
                })
                .collect();
            Some(CatAction {
                group: grp,
                on_objects,
                on_morphisms,
            })
        }
        _ => None,
    };
    let mut c = explicit_from_parts(names, mor, identities, compose, None);
    c.action = action;
    c
}

/// Disjoint union A ⊔ B.
pub fn coproduct_cat(a: &GFinCat, b: &GFinCat) -> GFinCat {
    let na = a.num_objects();
    let ma = a.num_morphisms();
    let mut names = a.object_names.clone();
    names.extend(b.object_names.iter().cloned());
    let mut mor: Vec<(usize, usize)> = (0..ma).map(|m| (a.mor_src(m), a.mor_tgt(m))).collect();
    mor.extend((0..b.num_morphisms()).map(|m| (na + b.mor_src(m), na + b.mor_tgt(m))));
    let mut identities: Vec<usize> = (0..na).map(|x| a.identity(x)).collect();
    identities.extend((0..b.num_objects()).map(|x| ma + b.identity(x)));
    let mut compose = HashMap::new();
    for f in 0..ma {
        for g in 0..ma {
            if a.mor_tgt(f) == a.mor_src(g) {
                compose.insert((g, f), a.compose(g, f));
            }
        }
    }
    for f in 0..b.num_morphisms() {
        for g in 0..b.num_morphisms() {
            if b.mor_tgt(f) == b.mor_src(g) {
                compose.insert((ma + g, ma + f), ma + b.compose(g, f));
            }
        }
    }
    explicit_from_parts(names, mor, identities, compose, None)
}
