use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::groupalgebra::StructAlgebra;
use crate::permgroup::{Perm, PermGroup};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub dom: usize,
    pub cod: usize,
    pub label: String,
}

/// A finite category with an explicit composition table.
///
/// `compose(g, f)` is `g ∘ f` (first `f`, then `g`) and is defined exactly
/// when `cod(f) = dom(g)`.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: usize,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    comp: Vec<u32>,
}

impl FinCategory {
    /// Builds and validates a category. `compose(g, f)` is only called on
    /// composable pairs.
    pub fn new(
        objects: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<Self> {
        let m = morphisms.len();
        let bad = |msg: String| Error::InvalidCategory(msg);
        if identities.len() != objects {
            return Err(bad(format!("{} identities for {objects} objects", identities.len())));
        }
        for mor in &morphisms {
            if mor.dom >= objects || mor.cod >= objects {
                return Err(bad(format!("morphism {} has an endpoint outside 0..{objects}", mor.label)));
            }
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= m || morphisms[i].dom != x || morphisms[i].cod != x {
                return Err(bad(format!("identity of object {x} is not an endomorphism of it")));
            }
        }
        let mut comp = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].cod != morphisms[g].dom {
                    continue;
                }
                let gf = compose(g, f)?;
                if gf >= m || morphisms[gf].dom != morphisms[f].dom || morphisms[gf].cod != morphisms[g].cod {
                    return Err(bad(format!(
                        "{} ∘ {} has the wrong endpoints",
                        morphisms[g].label, morphisms[f].label
                    )));
                }
                comp[g * m + f] = gf as u32;
            }
        }
        let c = FinCategory {
            objects,
            morphisms,
            identities,
            comp,
        };
        c.validate()?;
        Ok(c)
    }

    /// Identity laws and associativity on every composable triple.
    fn validate(&self) -> Result<()> {
        let m = self.morphisms.len();
        for f in 0..m {
            let (d, c) = (self.morphisms[f].dom, self.morphisms[f].cod);
            if self.compose(self.identities[c], f) != Some(f) || self.compose(f, self.identities[d]) != Some(f) {
                return Err(Error::InvalidCategory(format!(
                    "identity law fails for {}",
                    self.morphisms[f].label
                )));
            }
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = self.compose(h, g) else { continue };
                for f in 0..m {
                    let Some(gf) = self.compose(g, f) else { continue };
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return Err(Error::InvalidCategory(format!(
                            "composition is not associative on ({}, {}, {})",
                            self.morphisms[h].label, self.morphisms[g].label, self.morphisms[f].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].dom] == f
    }

    /// `g ∘ f`, if composable.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.comp[g * self.morphisms.len() + f];
        (v != NONE).then_some(v as usize)
    }

    /// Every morphism has a two-sided inverse.
    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|f| {
            let (d, c) = (self.morphisms[f].dom, self.morphisms[f].cod);
            (0..self.num_morphisms())
                .any(|g| self.compose(g, f) == Some(self.identities[d]) && self.compose(f, g) == Some(self.identities[c]))
        })
    }

    /// Number of connected components of the underlying graph.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.objects).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for m in &self.morphisms {
            let (a, b) = (find(&mut parent, m.dom), find(&mut parent, m.cod));
            parent[a.max(b)] = a.min(b);
        }
        (0..self.objects).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// `objects` objects and only identities.
    pub fn discrete(objects: usize) -> Self {
        let morphisms = (0..objects)
            .map(|x| Morphism {
                dom: x,
                cod: x,
                label: format!("1_{x}"),
            })
            .collect();
        FinCategory::new(objects, morphisms, (0..objects).collect(), |g, _| Ok(g)).expect("discrete category")
    }

    /// The group as a one-object category, `g ∘ f` being the group product `g f`.
    pub fn from_group(g: &PermGroup) -> Self {
        let morphisms = g
            .elements()
            .map(|x| Morphism {
                dom: 0,
                cod: 0,
                label: x.to_string(),
            })
            .collect();
        FinCategory::new(1, morphisms, vec![0], |a, b| Ok(g.mul_index(a, b))).expect("group category")
    }

    /// Parses the text format:
    ///
    /// ```text
    /// objects 2
    /// morphism 1a 0 0 identity
    /// morphism 1b 1 1 identity
    /// morphism f 0 1
    /// compose g f gf
    /// ```
    ///
    /// Compositions with identities are implied; every other composable pair
    /// needs a `compose` line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut objects = None;
        let mut morphisms = Vec::new();
        let mut identities: Vec<Option<usize>> = Vec::new();
        let mut by_label: HashMap<String, usize> = HashMap::new();
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: no + 1, msg };
            let tok: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad number `{s}`")));
            match tok[0] {
                "objects" if tok.len() == 2 && objects.is_none() => {
                    let n = num(tok[1])?;
                    objects = Some(n);
                    identities = vec![None; n];
                }
                "morphism" if tok.len() == 4 || tok.len() == 5 => {
                    let n = objects.ok_or_else(|| err("`objects` must come first".into()))?;
                    let (dom, cod) = (num(tok[2])?, num(tok[3])?);
                    if dom >= n || cod >= n {
                        return Err(err(format!("object out of range 0..{n}")));
                    }
                    let id = morphisms.len();
                    if by_label.insert(tok[1].to_string(), id).is_some() {
                        return Err(err(format!("duplicate morphism `{}`", tok[1])));
                    }
                    if tok.len() == 5 {
                        if tok[4] != "identity" || dom != cod || identities[dom].is_some() {
                            return Err(err("bad identity flag".into()));
                        }
                        identities[dom] = Some(id);
                    }
                    morphisms.push(Morphism {
                        dom,
                        cod,
                        label: tok[1].to_string(),
                    });
                }
                "compose" if tok.len() == 4 => {
                    let look = |s: &str| by_label.get(s).copied().ok_or_else(|| err(format!("unknown morphism `{s}`")));
                    let (g, f, gf) = (look(tok[1])?, look(tok[2])?, look(tok[3])?);
                    if table.insert((g, f), gf).is_some() {
                        return Err(err(format!("composition {} ∘ {} given twice", tok[1], tok[2])));
                    }
                }
                _ => return Err(err(format!("unrecognised line `{line}`"))),
            }
        }
        let objects = objects.ok_or(Error::Parse {
            line: 0,
            msg: "missing `objects` line".into(),
        })?;
        let identities: Vec<usize> = identities
            .iter()
            .enumerate()
            .map(|(x, i)| i.ok_or_else(|| Error::InvalidCategory(format!("object {x} has no identity"))))
            .collect::<Result<_>>()?;
        let is_id = |f: usize| identities.contains(&f);
        let labels: Vec<String> = morphisms.iter().map(|m: &Morphism| m.label.clone()).collect();
        FinCategory::new(objects, morphisms, identities.clone(), |g, f| {
            if is_id(g) {
                Ok(f)
            } else if is_id(f) {
                Ok(g)
            } else {
                table
                    .get(&(g, f))
                    .copied()
                    .ok_or_else(|| Error::InvalidCategory(format!("missing composition {} ∘ {}", labels[g], labels[f])))
            }
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Basis the morphisms; `f · g = f ∘ g` when composable, else zero.
pub fn category_algebra(c: &FinCategory, field: &FieldSpec) -> StructAlgebra {
    let labels = c.morphisms.iter().map(|m| m.label.clone()).collect();
    let mut unit = vec![0; c.num_morphisms()];
    for &i in &c.identities {
        unit[i] = field.one();
    }
    StructAlgebra::from_fn(field.clone(), labels, unit, |a, b| match c.compose(a, b) {
        Some(ab) => vec![(ab as u32, field.one())],
        None => Vec::new(),
    })
    .expect("valid shape")
}

/// A finite G-set given by the images of the group's generators.
#[derive(Clone, Debug)]
pub struct GSet {
    pub points: usize,
    pub generator_images: Vec<Perm>,
}

impl GSet {
    pub fn trivial(g: &PermGroup, points: usize) -> Self {
        GSet {
            points,
            generator_images: vec![Perm::identity(points); g.generators().len()],
        }
    }

    /// The natural action of a permutation group on its points.
    pub fn natural(g: &PermGroup) -> Self {
        GSet {
            points: g.degree(),
            generator_images: g.generators().to_vec(),
        }
    }
}

/// The image of every group element in Sym(X), indexed like the group's
/// elements. Fails unless the generator images extend to a homomorphism.
fn action_images(g: &PermGroup, x: &GSet) -> Result<Vec<Perm>> {
    if x.generator_images.len() != g.generators().len() {
        return Err(Error::NotAnAction(format!(
            "{} generator images for {} generators",
            x.generator_images.len(),
            g.generators().len()
        )));
    }
    if x.generator_images.iter().any(|p| p.degree() != x.points) {
        return Err(Error::NotAnAction("image has the wrong degree".into()));
    }
    // the graph of a homomorphism is a subgroup of G × Sym(X) of order |G|
    let n = g.degree();
    let diag: Vec<Perm> = g
        .generators()
        .iter()
        .zip(&x.generator_images)
        .map(|(a, b)| {
            let mut img: Vec<usize> = a.images().iter().map(|&v| v as usize).collect();
            img.extend(b.images().iter().map(|&v| v as usize + n));
            Perm::new(img)
        })
        .collect::<Result<_>>()?;
    let graph = PermGroup::with_cap(n + x.points, diag, g.order())
        .map_err(|_| Error::NotAnAction("generator relations are not respected".into()))?;
    if graph.order() != g.order() {
        return Err(Error::NotAnAction("generator relations are not respected".into()));
    }
    let mut out = vec![Perm::identity(x.points); g.order()];
    for el in graph.elements() {
        let head: Vec<u16> = el.images()[..n].to_vec();
        let tail: Vec<usize> = el.images()[n..].iter().map(|&v| v as usize - n).collect();
        let idx = g.index_of_images(&head).expect("projection lands in G");
        out[idx] = Perm::new(tail)?;
    }
    Ok(out)
}

/// The transporter category of a G-set over the poset with only equalities:
/// objects the points, morphisms `x → g·x` for `g ∈ G`, where `g·x` is the
/// left action `x^(ρ(g)^-1)`. Morphism `(x, g)` has index `x |G| + g`.
pub fn transporter_category(g: &PermGroup, x: &GSet) -> Result<FinCategory> {
    let rho = action_images(g, x)?;
    let order = g.order();
    let act = |gi: usize, pt: usize| rho[gi].inverse().image(pt);
    let mut morphisms = Vec::with_capacity(x.points * order);
    for pt in 0..x.points {
        for gi in 0..order {
            morphisms.push(Morphism {
                dom: pt,
                cod: act(gi, pt),
                label: format!("{}@{pt}", g.element(gi)),
            });
        }
    }
    let identities = (0..x.points).map(|pt| pt * order).collect();
    FinCategory::new(x.points, morphisms, identities, |h, f| {
        // (y, h) ∘ (x, g) = (x, h g)
        let (pt, gi) = (f / order, f % order);
        Ok(pt * order + g.mul_index(h % order, gi))
    })
}

/// A functor given on objects and morphisms.
#[derive(Clone, Debug)]
pub struct CatFunctor<'a> {
    pub source: &'a FinCategory,
    pub target: &'a FinCategory,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl<'a> CatFunctor<'a> {
    pub fn new(
        source: &'a FinCategory,
        target: &'a FinCategory,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        let f = CatFunctor {
            source,
            target,
            object_map,
            morphism_map,
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidCategory(format!("not a functor: {m}")));
        let (s, t) = (self.source, self.target);
        if self.object_map.len() != s.num_objects() || self.morphism_map.len() != s.num_morphisms() {
            return bad("maps have the wrong length");
        }
        if self.object_map.iter().any(|&o| o >= t.num_objects()) || self.morphism_map.iter().any(|&m| m >= t.num_morphisms()) {
            return bad("image out of range");
        }
        for (f, m) in s.morphisms().iter().enumerate() {
            let im = &t.morphisms()[self.morphism_map[f]];
            if im.dom != self.object_map[m.dom] || im.cod != self.object_map[m.cod] {
                return bad("endpoints are not preserved");
            }
        }
        for x in 0..s.num_objects() {
            if self.morphism_map[s.identity(x)] != t.identity(self.object_map[x]) {
                return bad("identities are not preserved");
            }
        }
        for g in 0..s.num_morphisms() {
            for f in 0..s.num_morphisms() {
                if let Some(gf) = s.compose(g, f) {
                    if t.compose(self.morphism_map[g], self.morphism_map[f]) != Some(self.morphism_map[gf]) {
                        return bad("composition is not preserved");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: &'a FinCategory) -> Self {
        CatFunctor {
            source: c,
            target: c,
            object_map: (0..c.num_objects()).collect(),
            morphism_map: (0..c.num_morphisms()).collect(),
        }
    }
}

/// The projection `G∝X → G` sending `(x, g)` to `g`, with `target` built by
/// [`FinCategory::from_group`].
pub fn transporter_projection<'a>(
    g: &PermGroup,
    transporter: &'a FinCategory,
    target: &'a FinCategory,
) -> Result<CatFunctor<'a>> {
    let order = g.order();
    CatFunctor::new(
        transporter,
        target,
        vec![0; transporter.num_objects()],
        (0..transporter.num_morphisms()).map(|f| f % order).collect(),
    )
}

/// χ of the poset with only equalities on `points` elements, and whether it is
/// invertible in characteristic `p`.
pub fn euler_characteristic(points: usize, p: u64) -> (i64, bool) {
    (points as i64, points as u64 % p != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalgebra::group_algebra_over;
    use crate::permgroup::named::{cyclic, symmetric};

    pub(crate) const POSET: &str = "objects 2\nmorphism 1a 0 0 identity\nmorphism 1b 1 1 identity\nmorphism f 0 1\n";

    #[test]
    fn group_category_algebra_is_group_algebra() {
        let g = symmetric(3);
        let k = FieldSpec::new(3, 1).unwrap();
        let c = FinCategory::from_group(&g);
        assert!(c.is_groupoid());
        assert!(category_algebra(&c, &k).same_structure(&group_algebra_over(&g, &k).unwrap()));
    }

    #[test]
    fn discrete_and_poset() {
        let k = FieldSpec::new(2, 1).unwrap();
        let a = category_algebra(&FinCategory::discrete(3), &k);
        assert!(a.is_commutative() && a.dim() == 3 && a.check_unit());
        let c = FinCategory::parse(POSET).unwrap();
        assert!(!c.is_groupoid());
        assert_eq!(c.components(), 1);
        let a = category_algebra(&c, &k);
        assert_eq!(a.dim(), 3);
        assert!(a.check_associative(0, 0) && a.check_unit() && !a.is_commutative());
    }

    #[test]
    fn parse_errors() {
        assert!(FinCategory::parse("morphism a 0 0 identity\n").is_err());
        assert!(matches!(
            FinCategory::parse("objects 1\nmorphism a 0 0\n"),
            Err(Error::InvalidCategory(_))
        ));
        // an idempotent endomorphism without its square
        let missing = "objects 1\nmorphism 1 0 0 identity\nmorphism e 0 0\n";
        assert!(matches!(FinCategory::parse(missing), Err(Error::InvalidCategory(_))));
        let ok = format!("{missing}compose e e e\n");
        assert_eq!(FinCategory::parse(&ok).unwrap().num_morphisms(), 2);
        let bad_target = "objects 2\nmorphism 1a 0 0 identity\nmorphism 1b 1 1 identity\nmorphism f 0 1\nmorphism g 1 0\ncompose f g 1a\ncompose g f 1a\n";
        assert!(FinCategory::parse(bad_target).is_err());
    }

    #[test]
    fn transporter_examples() {
        let c2 = cyclic(2);
        let one = transporter_category(&c2, &GSet::trivial(&c2, 1)).unwrap();
        assert_eq!(one.num_morphisms(), 2);
        let swap = GSet {
            points: 2,
            generator_images: vec![Perm::from_cycles(2, &[&[0, 1]]).unwrap()],
        };
        let t = transporter_category(&c2, &swap).unwrap();
        assert_eq!((t.num_morphisms(), t.components()), (4, 1));
        assert!(t.is_groupoid());
        let triv = transporter_category(&c2, &GSet::trivial(&c2, 3)).unwrap();
        assert_eq!((triv.num_morphisms(), triv.components()), (6, 3));
        let target = FinCategory::from_group(&c2);
        assert!(transporter_projection(&c2, &triv, &target).is_ok());
        assert!(transporter_projection(&c2, &t, &target).is_ok());
        let s3 = symmetric(3);
        let nat = transporter_category(&s3, &GSet::natural(&s3)).unwrap();
        assert_eq!(nat.num_morphisms(), 18);
        assert!(nat.is_groupoid());
    }

    #[test]
    fn non_actions_are_rejected() {
        // S3 → C3 sending both generators to a 3-cycle is not a homomorphism
        let s3 = symmetric(3);
        let r = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let x = GSet {
            points: 3,
            generator_images: vec![r.clone(), r],
        };
        assert!(matches!(transporter_category(&s3, &x), Err(Error::NotAnAction(_))));
    }

    #[test]
    fn euler() {
        assert_eq!(euler_characteristic(3, 2), (3, true));
        assert_eq!(euler_characteristic(3, 3), (3, false));
        assert_eq!(euler_characteristic(1, 7), (1, true));
    }
}
