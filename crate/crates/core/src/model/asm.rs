//! PERs, subsingletons and assemblies, the type formers on assemblies, and
//! tracked morphisms.
//!
//! Realizers are combinator values. Every query that needs to run a realizer
//! is budgeted and three-valued. A universal claim over the realizers of an
//! element is checked on that element's realizer sample; the sample is
//! exhaustive exactly when [`Assembly::exact`] holds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use super::sem::Sem;
use super::ModelError;
use crate::pca::library::{case_table, cfst, cpair, csnd, skk};
use crate::pca::{Comb, EvalOutcome, Machine};
use crate::Tri;

/// Resource limits shared by every query.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Steps per combinator evaluation.
    pub steps: u64,
    /// Realizers tried per element when the realizer set is not finite.
    pub samples: usize,
    /// Brute-force tracker search covers codes `0..codes`.
    pub codes: u64,
    /// Largest domain a construction will enumerate.
    pub elements: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { steps: 20_000, samples: 4, codes: 3_000, elements: 70_000 }
    }
}

/// Outcome of running a realizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Run {
    Value(Comb),
    Undefined,
    OutOfBudget,
}

impl Run {
    pub fn value(self) -> Option<Comb> {
        match self {
            Run::Value(v) => Some(v),
            _ => None,
        }
    }
}

/// `f a`.
pub fn app(f: &Comb, a: &Comb, b: &Budget) -> Run {
    match Machine::new(b.steps).apply(f, a) {
        Ok(EvalOutcome::Value(v)) => Run::Value(v),
        Ok(EvalOutcome::Diverged { .. }) => Run::OutOfBudget,
        Err(_) => Run::Undefined,
    }
}

/// Run `f a` and feed the value to `k`; undefined is `False`, out of budget
/// is `Unknown`.
fn then(run: Run, k: impl FnOnce(&Comb) -> Tri) -> Tri {
    match run {
        Run::Value(v) => k(&v),
        Run::Undefined => Tri::False,
        Run::OutOfBudget => Tri::Unknown,
    }
}

/// The combinatory pair of two realizers, evaluated.
pub fn pair_code(a: &Comb, b: &Comb, budget: &Budget) -> Option<Comb> {
    Machine::new(budget.steps).eval(&Comb::apps(cpair(), [a.clone(), b.clone()])).ok()?.value().cloned()
}

fn all(items: impl IntoIterator<Item = Tri>) -> Tri {
    let mut acc = Tri::True;
    for t in items {
        acc = acc.and(t);
        if acc.is_false() {
            break;
        }
    }
    acc
}

fn any(items: impl IntoIterator<Item = Tri>) -> Tri {
    let mut acc = Tri::False;
    for t in items {
        acc = acc.or(t);
        if acc.is_true() {
            break;
        }
    }
    acc
}

/// Which universe an assembly models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Universe {
    Prop,
    Set,
    Type,
}

/// A set of elements given by a finite window and whether the window is all
/// of it.
#[derive(Clone, Debug)]
pub struct SemSet {
    pub level: u32,
    pub elements: Vec<Sem>,
    pub complete: bool,
}

impl SemSet {
    pub fn finite(level: u32, elements: Vec<Sem>) -> SemSet {
        SemSet { level, elements, complete: true }
    }

    pub fn member(&self, x: &Sem) -> Tri {
        if self.elements.contains(x) {
            Tri::True
        } else if self.complete {
            Tri::False
        } else {
            Tri::Unknown
        }
    }
}

type Relation = Rc<dyn Fn(&Comb, &Comb) -> Tri>;

/// A partial equivalence relation on realizers, observed through a window of
/// candidates.
#[derive(Clone)]
pub struct Per {
    pub name: String,
    relation: Relation,
    window: Vec<Comb>,
    /// Every element of the domain is in the window.
    pub complete: bool,
}

impl fmt::Debug for Per {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Per({})", self.name)
    }
}

impl Per {
    pub fn new(name: &str, window: Vec<Comb>, complete: bool, relation: impl Fn(&Comb, &Comb) -> Tri + 'static) -> Per {
        Per { name: name.to_string(), relation: Rc::new(relation), window, complete }
    }

    pub fn related(&self, a: &Comb, b: &Comb) -> Tri {
        (self.relation)(a, b)
    }

    pub fn window(&self) -> &[Comb] {
        &self.window
    }

    /// `dom(R)` within the window.
    pub fn dom(&self) -> Vec<Comb> {
        self.window.iter().filter(|a| self.related(a, a).is_true()).cloned().collect()
    }

    /// `[a]_R` within the window.
    pub fn class(&self, a: &Comb) -> Sem {
        Sem::Set(self.window.iter().filter(|b| self.related(a, b).is_true()).map(|b| Sem::Ind(b.clone())).collect())
    }

    /// `ℕ/R` within the window, one class per member.
    pub fn quotient(&self) -> Vec<Sem> {
        let mut out: Vec<Sem> = Vec::new();
        for a in self.dom() {
            let c = self.class(&a);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// A triple of window elements breaking symmetry or transitivity.
    pub fn law_violation(&self) -> Option<(Comb, Comb, Option<Comb>)> {
        for a in &self.window {
            for b in &self.window {
                if self.related(a, b).is_true() && self.related(b, a).is_false() {
                    return Some((a.clone(), b.clone(), None));
                }
                if !self.related(a, b).is_true() {
                    continue;
                }
                for c in &self.window {
                    if self.related(b, c).is_true() && self.related(a, c).is_false() {
                        return Some((a.clone(), b.clone(), Some(c.clone())));
                    }
                }
            }
        }
        None
    }
}

fn numerals(n: u64) -> Vec<Comb> {
    (0..n).map(Comb::Num).collect()
}

fn same_numeral(a: &Comb, b: &Comb, below: Option<u64>) -> Tri {
    match (a.as_num(), b.as_num()) {
        (Some(i), Some(j)) => Tri::from_bool(i == j && below.is_none_or(|n| i < n)),
        _ => Tri::False,
    }
}

/// `𝐧 = {⟨i,j⟩ | i = j ∧ i < n}`.
pub fn fin(n: u64) -> Per {
    Per::new(&format!("fin({n})"), numerals(n), true, move |a, b| same_numeral(a, b, Some(n)))
}

/// Default window for [`nat`].
pub const NAT_WINDOW: u64 = 64;

/// `𝐍 = {⟨i,j⟩ | i = j}`, observed on `0..=NAT_WINDOW`.
pub fn nat() -> Per {
    nat_upto(NAT_WINDOW)
}

/// `𝐍` observed on `0..=cutoff`.
pub fn nat_upto(cutoff: u64) -> Per {
    Per::new("nat", numerals(cutoff + 1), false, |a, b| same_numeral(a, b, None))
}

/// Numerals of equal parity, observed on `0..=cutoff`.
pub fn parity(cutoff: u64) -> Per {
    Per::new("parity", numerals(cutoff + 1), false, |a, b| match (a.as_num(), b.as_num()) {
        (Some(i), Some(j)) => Tri::from_bool(i % 2 == j % 2),
        _ => Tri::False,
    })
}

/// A subset of `{∗}` whose inhabitation may be undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subsingleton {
    pub inhabited: Tri,
}

impl Subsingleton {
    pub fn new(inhabited: Tri) -> Subsingleton {
        Subsingleton { inhabited }
    }

    /// As an element of `Subsing`, when decided.
    pub fn to_sem(self) -> Result<Sem, ModelError> {
        match self.inhabited {
            Tri::Unknown => Err(ModelError::Unknown("inhabitation of a subsingleton".into())),
            t => Ok(Sem::subsingleton(t.is_true())),
        }
    }
}

/// `(A =_𝒜 A′) := {∗ | A = A′}`.
pub fn subsing_eq(a: &Sem, a2: &Sem) -> Subsingleton {
    Subsingleton::new(Tri::from_bool(a == a2))
}

/// `‖𝒜‖ := {∗ | ∃A ∈ 𝒜}`.
pub fn trunc(a: &Assembly) -> Subsingleton {
    let inhabited = if !a.elements().is_empty() {
        Tri::True
    } else if a.domain.complete {
        Tri::False
    } else {
        Tri::Unknown
    };
    Subsingleton::new(inhabited)
}

/// `S ↦ {⟨i,j⟩ | ∗ ∈ S}`.
pub fn embed_subsing_to_per(s: Subsingleton) -> Per {
    let window = vec![Comb::Num(0), Comb::Num(1), Comb::K];
    Per::new("subsingleton", window, false, move |_, _| s.inhabited)
}

type Realizes = Rc<dyn Fn(&Comb, &Sem, &Budget) -> Tri>;
type Candidates = Rc<dyn Fn(&Sem, &Budget) -> Vec<Comb>>;
type Membership = Rc<dyn Fn(&Sem, &Budget) -> Tri>;

/// An n-assembly: a domain of elements and a realizability relation.
#[derive(Clone)]
pub struct Assembly {
    pub name: String,
    pub level: u32,
    pub universe: Universe,
    pub domain: SemSet,
    /// The candidate lists returned by `realizers` are every realizer.
    pub exact: bool,
    /// The window was enumerated. A construction refuses to range over a
    /// domain that was too large to list.
    pub enumerated: bool,
    realizes: Realizes,
    candidates: Candidates,
    member: Option<Membership>,
}

impl fmt::Debug for Assembly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assembly({}, level {}, {} elements)", self.name, self.level, self.domain.elements.len())
    }
}

impl Assembly {
    pub fn realizes(&self, a: &Comb, x: &Sem, b: &Budget) -> Tri {
        (self.realizes)(a, x, b)
    }

    /// Realizers to try for `x`, most canonical first.
    pub fn realizers(&self, x: &Sem, b: &Budget) -> Vec<Comb> {
        (self.candidates)(x, b)
    }

    /// The realizers universal claims over `x` are checked on.
    pub fn sample(&self, x: &Sem, b: &Budget) -> Vec<Comb> {
        let all = self.realizers(x, b);
        if self.exact {
            all
        } else {
            all.into_iter().take(b.samples).collect()
        }
    }

    /// A realizer of `x`, if a candidate is confirmed.
    pub fn realizer(&self, x: &Sem, b: &Budget) -> Option<Comb> {
        self.realizers(x, b).into_iter().find(|a| self.realizes(a, x, b).is_true())
    }

    pub fn elements(&self) -> &[Sem] {
        &self.domain.elements
    }

    /// `x ∈ 𝒜`, deciding elements outside the window where possible.
    pub fn contains(&self, x: &Sem, b: &Budget) -> Tri {
        match (self.domain.member(x), &self.member) {
            (Tri::True, _) => Tri::True,
            (_, Some(m)) => m(x, b),
            (t, None) => t,
        }
    }

    fn ranged(&self) -> Result<(), ModelError> {
        if self.enumerated {
            Ok(())
        } else {
            Err(ModelError::Resource { what: format!("domain of {}", self.name), limit: self.domain.elements.len() })
        }
    }

    /// An enumerated element without a confirmed realizer.
    pub fn unrealized(&self, b: &Budget) -> Option<Sem> {
        self.elements().iter().find(|x| self.realizer(x, b).is_none()).cloned()
    }

    /// The subsingleton `{∗ | 𝒜 inhabited}`.
    pub fn inhabited(&self) -> Tri {
        trunc(self).inhabited
    }
}

/// `∇A`: every realizer realizes every element.
pub fn nabla(name: &str, set: SemSet) -> Assembly {
    Assembly {
        name: format!("nabla({name})"),
        level: set.level,
        universe: Universe::Type,
        domain: set,
        exact: false,
        enumerated: true,
        member: None,
        realizes: Rc::new(|a, _, _| Tri::from_bool(a.is_value())),
        candidates: Rc::new(|_, _| vec![Comb::Num(0), Comb::K, skk()]),
    }
}

/// `Subsing = 𝒫({∗})`.
pub fn subsingletons() -> SemSet {
    SemSet::finite(1, vec![Sem::subsingleton(false), Sem::subsingleton(true)])
}

/// `R ↦` the 1-assembly with domain `ℕ/R` and realizability `∈`. The class
/// `[a]` is realized by every `b` with `⟨a, b⟩ ∈ R`.
pub fn embed_per_to_assembly(r: &Per) -> Assembly {
    let classes = r.quotient();
    let reps: BTreeMap<Sem, Comb> = classes
        .iter()
        .map(|c| {
            let rep = match c {
                Sem::Set(xs) => match xs.iter().next() {
                    Some(Sem::Ind(a)) => a.clone(),
                    _ => Comb::Num(0),
                },
                _ => Comb::Num(0),
            };
            (c.clone(), rep)
        })
        .collect();
    let (rel, rel2) = (r.clone(), r.clone());
    // a class beyond the window is judged by its members
    let members = |x: &Sem| -> Vec<Comb> {
        match x {
            Sem::Set(xs) => xs.iter().filter_map(|m| if let Sem::Ind(a) = m { Some(a.clone()) } else { None }).collect(),
            _ => Vec::new(),
        }
    };
    Assembly {
        name: r.name.clone(),
        level: 1,
        universe: Universe::Set,
        domain: SemSet { level: 1, elements: classes, complete: r.complete },
        exact: r.complete,
        enumerated: true,
        realizes: Rc::new(move |a, x, _| match reps.get(x) {
            Some(rep) => rel.related(a, rep),
            None => match members(x).first() {
                Some(m) if x.as_set().is_some_and(|s| s.len() == members(x).len()) => rel.related(a, m),
                _ => Tri::False,
            },
        }),
        candidates: Rc::new(move |x, _| members(x)),
        member: Some(Rc::new(move |x, _| {
            let ms = members(x);
            if ms.is_empty() || x.as_set().is_none_or(|s| s.len() != ms.len()) {
                return Tri::False;
            }
            all(ms.iter().flat_map(|a| ms.iter().map(|b| rel2.related(a, b))))
        })),
    }
}

/// A subsingleton as an assembly: `{∗}` realized by every value, or empty.
pub fn subsing_assembly(s: Subsingleton) -> Assembly {
    let elements = if s.inhabited.is_true() { vec![Sem::star()] } else { Vec::new() };
    Assembly {
        name: "subsingleton".into(),
        level: 1,
        universe: Universe::Prop,
        domain: SemSet { level: 1, elements, complete: s.inhabited.is_known() },
        exact: false,
        enumerated: true,
        member: None,
        realizes: Rc::new(move |a, x, _| {
            if *x == Sem::star() && a.is_value() {
                s.inhabited
            } else {
                Tri::False
            }
        }),
        candidates: Rc::new(|_, _| vec![Comb::Num(0), Comb::K, skk()]),
    }
}

/// Families `A ↦ 𝓑[A]`, computed once per element of the base.
pub type Family = BTreeMap<Sem, Assembly>;

fn family(a: &Assembly, b: &dyn Fn(&Sem) -> Result<Assembly, ModelError>) -> Result<Family, ModelError> {
    a.ranged()?;
    a.elements().iter().map(|x| Ok((x.clone(), b(x)?))).collect()
}

fn join(a: Universe, b: Universe) -> Universe {
    a.max(b)
}

fn fam_level(fam: &Family) -> u32 {
    fam.values().map(|x| x.level).max().unwrap_or(0)
}

fn fam_universe(fam: &Family, empty: Universe) -> Universe {
    fam.values().map(|x| x.universe).max().unwrap_or(empty)
}

fn keep_realized(elements: Vec<Sem>, r: &Realizes, cands: &Candidates, b: &Budget) -> Vec<Sem> {
    elements.into_iter().filter(|x| cands(x, b).iter().any(|a| r(a, x, b).is_true())).collect()
}

/// `Σ(A ∈ 𝒜) 𝓑[A]`: `p ⊩ ⟨A,B⟩` iff `pr₀ p ⊩ A` and `pr₁ p ⊩ B`. The level
/// is that of the inputs.
pub fn sigma(a: &Assembly, b: &dyn Fn(&Sem) -> Result<Assembly, ModelError>, budget: &Budget) -> Result<Assembly, ModelError> {
    let fam = Rc::new(family(a, b)?);
    let mut raw = Vec::new();
    for x in a.elements() {
        for y in fam[x].elements() {
            raw.push(Sem::pair(x.clone(), y.clone()));
            if raw.len() > budget.elements {
                return Err(ModelError::Resource { what: "Σ domain".into(), limit: budget.elements });
            }
        }
    }
    let (base, f1) = (a.clone(), fam.clone());
    let realizes: Realizes = Rc::new(move |p, x, b| {
        let Some((x0, x1)) = x.split() else { return Tri::False };
        let Some(bx) = f1.get(x0) else { return Tri::False };
        then(app(&cfst(), p, b), |p0| base.realizes(p0, x0, b))
            .and(then(app(&csnd(), p, b), |p1| bx.realizes(p1, x1, b)))
    });
    let (base, f2) = (a.clone(), fam.clone());
    let candidates: Candidates = Rc::new(move |x, b| {
        let Some((x0, x1)) = x.split() else { return Vec::new() };
        let Some(bx) = f2.get(x0) else { return Vec::new() };
        let mut out = Vec::new();
        for r0 in base.realizers(x0, b).into_iter().take(b.samples) {
            for r1 in bx.realizers(x1, b).into_iter().take(b.samples) {
                out.extend(pair_code(&r0, &r1, b));
            }
        }
        out
    });
    let complete = a.domain.complete && fam.values().all(|x| x.domain.complete);
    let elements = keep_realized(raw, &realizes, &candidates, budget);
    let level = a.level.max(fam_level(&fam));
    let (base, f3) = (a.clone(), fam.clone());
    let enumerated = fam.values().all(|x| x.enumerated);
    Ok(Assembly {
        name: format!("Sigma({}, ..)", a.name),
        level,
        universe: join(a.universe, fam_universe(&fam, Universe::Prop)),
        domain: SemSet { level, elements, complete },
        exact: false,
        enumerated,
        realizes,
        candidates,
        member: Some(Rc::new(move |x, b| match x.split() {
            Some((x0, x1)) => match f3.get(x0) {
                Some(bx) => base.contains(x0, b).and(bx.contains(x1, b)),
                None => base.contains(x0, b).and(Tri::Unknown),
            },
            None => Tri::False,
        })),
    })
}

/// Tracker candidates for a map out of `a`: constant maps, case tables on
/// numeral realizers, then codes in Gödel order.
fn tracker_candidates(
    a: &Assembly,
    image: &dyn Fn(&Sem) -> Option<Comb>,
    budget: &Budget,
) -> impl Iterator<Item = Comb> {
    let mut out = vec![skk()];
    let images: Vec<Option<Comb>> = a.elements().iter().map(image).collect();
    if let Some(Some(first)) = images.first() {
        if images.iter().all(|i| i.as_ref() == Some(first)) {
            out.push(Comb::app(Comb::K, first.clone()));
        }
    }
    if images.is_empty() {
        out.push(Comb::K);
    }
    // numeral realizers index a case table
    let mut table: BTreeMap<u64, Comb> = BTreeMap::new();
    let mut numeric = true;
    for (x, img) in a.elements().iter().zip(&images) {
        for r in a.sample(x, budget) {
            match (r.as_num(), img) {
                (Some(n), Some(i)) => {
                    table.insert(n, i.clone());
                }
                _ => numeric = false,
            }
        }
    }
    if numeric && !table.is_empty() {
        let top = *table.keys().last().unwrap();
        let filler = table.values().next().unwrap().clone();
        let entries: Vec<Comb> = (0..=top).map(|n| table.get(&n).cloned().unwrap_or_else(|| filler.clone())).collect();
        out.push(case_table(&entries));
    }
    out.into_iter().chain((0..budget.codes).map(Comb::from_code_u64).filter(|c| c.is_value()))
}

/// `Π(A ∈ 𝒜) 𝓑[A]` over a finite `𝒜`: `f ⊩ F` iff for every `A` and
/// `a ⊩ A`, `f a↓` and `f a ⊩ F(A)`. Raises the level by one.
pub fn pi(a: &Assembly, b: &dyn Fn(&Sem) -> Result<Assembly, ModelError>, budget: &Budget) -> Result<Assembly, ModelError> {
    let fam = Rc::new(family(a, b)?);
    // every graph, unless there are too many to list
    let mut graphs: Option<Vec<BTreeMap<Sem, Sem>>> = Some(vec![BTreeMap::new()]);
    for x in a.elements() {
        let Some(gs) = &graphs else { break };
        let choices = fam[x].elements();
        let size = gs.len().saturating_mul(choices.len());
        if size > budget.elements || !fam[x].enumerated {
            graphs = None;
            break;
        }
        let mut next = Vec::with_capacity(size);
        for g in gs {
            for y in choices {
                let mut g2 = g.clone();
                g2.insert(x.clone(), y.clone());
                next.push(g2);
            }
        }
        graphs = Some(next);
    }
    let (base, f1) = (a.clone(), fam.clone());
    let realizes: Realizes = Rc::new(move |f, x, b| {
        let Sem::Fun(g) = x else { return Tri::False };
        if !f.is_value() {
            return Tri::False;
        }
        all(base.elements().iter().map(|ax| {
            let Some(fx) = g.get(ax) else { return Tri::False };
            let bx = &f1[ax];
            all(base.sample(ax, b).iter().map(|r| then(app(f, r, b), |v| bx.realizes(v, fx, b))))
        }))
    });
    let (base, f2, r2) = (a.clone(), fam.clone(), realizes.clone());
    let candidates: Candidates = Rc::new(move |x, b| {
        let Sem::Fun(g) = x else { return Vec::new() };
        let image = |ax: &Sem| g.get(ax).and_then(|y| f2.get(ax)?.realizer(y, b));
        tracker_candidates(&base, &image, b).find(|f| r2(f, x, b).is_true()).into_iter().collect()
    });
    let enumerated = graphs.is_some();
    let elements = graphs.unwrap_or_default().into_iter().map(Sem::Fun).collect();
    let elements = keep_realized(elements, &realizes, &candidates, budget);
    let complete = enumerated && a.domain.complete && fam.values().all(|x| x.domain.complete);
    let level = a.level.max(fam_level(&fam)) + 1;
    let (base, f3) = (a.clone(), fam.clone());
    Ok(Assembly {
        name: format!("Pi({}, ..)", a.name),
        level,
        universe: fam_universe(&fam, Universe::Prop),
        domain: SemSet { level, elements, complete },
        exact: false,
        enumerated,
        realizes,
        candidates,
        member: Some(Rc::new(move |x, b| {
            let Sem::Fun(g) = x else { return Tri::False };
            if g.len() != base.elements().len() {
                return Tri::False;
            }
            all(base.elements().iter().map(|ax| match g.get(ax) {
                Some(y) => f3[ax].contains(y, b),
                None => Tri::False,
            }))
        })),
    })
}

/// Paths of a tree with the given root label and children.
pub(super) fn tree_of(label: &Sem, children: &[(Sem, Sem)]) -> Sem {
    let mut paths: BTreeSet<Vec<Sem>> = [vec![label.clone()]].into();
    for (bl, sub) in children {
        if let Sem::Tree(sp) = sub {
            for p in sp {
                let mut q = vec![label.clone(), bl.clone()];
                q.extend(p.iter().cloned());
                paths.insert(q);
            }
        }
    }
    Sem::Tree(paths)
}

/// The subtree of `t` below the edge `b` from the root.
pub fn subtree(t: &Sem, b: &Sem) -> Option<Sem> {
    let Sem::Tree(paths) = t else { return None };
    let root = t.root()?;
    let sub: BTreeSet<Vec<Sem>> =
        paths.iter().filter(|p| p.len() >= 3 && &p[0] == root && &p[1] == b).map(|p| p[2..].to_vec()).collect();
    if sub.is_empty() {
        None
    } else {
        Some(Sem::Tree(sub))
    }
}

/// The four tree conditions and well-foundedness, for a finite path set.
pub fn is_wellfounded_tree(t: &Sem, labels: &[Sem], edges: &dyn Fn(&Sem) -> Vec<Sem>) -> bool {
    let Sem::Tree(paths) = t else { return false };
    let ok_path = |p: &Vec<Sem>| {
        p.len() % 2 == 1
            && p.iter().step_by(2).all(|a| labels.contains(a))
            && p.chunks(2).all(|c| c.len() < 2 || edges(&c[0]).contains(&c[1]))
    };
    let inhabited = paths.iter().any(|p| p.len() == 1);
    let closed = paths.iter().all(|p| p.len() == 1 || paths.contains(&p[..p.len() - 2].to_vec()));
    let complete = paths.iter().all(|p| {
        edges(&p[p.len() - 1]).iter().all(|b| {
            paths.iter().any(|q| q.len() == p.len() + 2 && q[..p.len()] == p[..] && &q[p.len()] == b)
        })
    });
    let consistent = paths.iter().all(|p| {
        paths.iter().all(|q| p.len() != q.len() || p[..p.len() - 1] != q[..q.len() - 1] || p == q)
    });
    // finitely many paths of bounded length: ⊒ is well-founded
    paths.iter().all(ok_path) && inhabited && closed && complete && consistent
}

/// `W(A ∈ 𝒜) 𝓑[A]` restricted to trees of height at most `depth`. A realizer
/// `t` of `T` satisfies: along every path `⟨A₀,B₀,…,Aₙ⟩` with `bᵢ ⊩ Bᵢ`, the
/// codes `t₀ = t`, `tᵢ₊₁ = (pr₁ tᵢ) bᵢ` are defined and `pr₀ tᵢ ⊩ Aᵢ`.
pub fn wtype(
    a: &Assembly,
    b: &dyn Fn(&Sem) -> Result<Assembly, ModelError>,
    depth: usize,
    budget: &Budget,
) -> Result<Assembly, ModelError> {
    let fam = Rc::new(family(a, b)?);
    // trees[d]: trees of height ≤ d with their realizers
    let mut trees: Vec<(Sem, Option<Comb>)> = Vec::new();
    for _ in 0..=depth {
        let mut next: Vec<(Sem, Option<Comb>)> = Vec::new();
        for x in a.elements() {
            let edges = fam[x].elements().to_vec();
            let mut choices: Vec<Vec<(Sem, Sem, Option<Comb>)>> = vec![Vec::new()];
            for e in &edges {
                let mut grown = Vec::new();
                for c in &choices {
                    for (t, r) in &trees {
                        let mut c2 = c.clone();
                        c2.push((e.clone(), t.clone(), r.clone()));
                        grown.push(c2);
                    }
                }
                choices = grown;
                if choices.len() > budget.elements {
                    return Err(ModelError::Resource { what: "W domain".into(), limit: budget.elements });
                }
            }
            for c in choices {
                let kids: Vec<(Sem, Sem)> = c.iter().map(|(e, t, _)| (e.clone(), t.clone())).collect();
                let t = tree_of(x, &kids);
                let r = tree_realizer(a, &fam[x], x, &c, budget);
                if !next.iter().any(|(u, _)| *u == t) {
                    next.push((t, r));
                }
            }
        }
        trees = next;
    }
    let (base, f1) = (a.clone(), fam.clone());
    let realizes: Realizes = Rc::new(move |t, x, b| {
        let Sem::Tree(paths) = x else { return Tri::False };
        all(paths.iter().map(|p| path_realized(t, p, &base, &f1, b)))
    });
    let found: BTreeMap<Sem, Comb> = trees.iter().filter_map(|(t, r)| r.clone().map(|r| (t.clone(), r))).collect();
    let elements: Vec<Sem> = trees
        .into_iter()
        .filter(|(t, _)| found.get(t).is_some_and(|r| realizes(r, t, budget).is_true()))
        .map(|(t, _)| t)
        .collect();
    let level = a.level.max(fam_level(&fam)) + 1;
    Ok(Assembly {
        name: format!("W({}, ..)", a.name),
        level,
        universe: a.universe,
        domain: SemSet { level, elements, complete: false },
        exact: false,
        enumerated: true,
        realizes,
        candidates: Rc::new(move |x, _| found.get(x).cloned().into_iter().collect()),
        member: None,
    })
}

fn tree_realizer(a: &Assembly, bx: &Assembly, x: &Sem, kids: &[(Sem, Sem, Option<Comb>)], b: &Budget) -> Option<Comb> {
    let label = a.realizer(x, b)?;
    let branch = if kids.is_empty() {
        Comb::K
    } else {
        let mut table: BTreeMap<u64, Comb> = BTreeMap::new();
        for (e, _, r) in kids {
            let r = r.clone()?;
            for br in bx.sample(e, b) {
                table.insert(br.as_num()?, r.clone());
            }
        }
        let top = *table.keys().last()?;
        let filler = table.values().next()?.clone();
        case_table(&(0..=top).map(|n| table.get(&n).cloned().unwrap_or_else(|| filler.clone())).collect::<Vec<_>>())
    };
    pair_code(&label, &branch, b)
}

fn path_realized(t: &Comb, p: &[Sem], a: &Assembly, fam: &Family, b: &Budget) -> Tri {
    let label = |code: &Comb, x: &Sem| then(app(&cfst(), code, b), |l| a.realizes(l, x, b));
    let mut acc = label(t, &p[0]);
    let mut fronts = vec![t.clone()];
    for i in 0..p.len() / 2 {
        let (ai, bi, next) = (&p[2 * i], &p[2 * i + 1], &p[2 * i + 2]);
        let Some(bx) = fam.get(ai) else { return Tri::False };
        let mut grown = Vec::new();
        for ti in &fronts {
            for br in bx.sample(bi, b) {
                let run = match app(&csnd(), ti, b) {
                    Run::Value(f) => app(&f, &br, b),
                    other => other,
                };
                acc = acc.and(then(run.clone(), |tn| label(tn, next)));
                if let Run::Value(tn) = run {
                    grown.push(tn);
                }
            }
        }
        if acc.is_false() {
            return acc;
        }
        fronts = grown;
    }
    acc
}

/// `𝒜/ℛ`: classes of the equivalence relation generated by `ℛ[A,A′]` being
/// inhabited; `q ⊩ Q` iff `q ⊩ A` for some `A ∈ Q`. Raises the level by one.
pub fn quot(
    a: &Assembly,
    r: &dyn Fn(&Sem, &Sem) -> Result<Assembly, ModelError>,
    budget: &Budget,
) -> Result<Assembly, ModelError> {
    let xs = a.elements().to_vec();
    let mut parent: Vec<usize> = (0..xs.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..xs.len() {
        for j in 0..xs.len() {
            match r(&xs[i], &xs[j])?.inhabited() {
                Tri::True => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
                Tri::False => {}
                Tri::Unknown => return Err(ModelError::Unknown("a quotient relation instance".into())),
            }
        }
    }
    let mut classes: BTreeMap<usize, BTreeSet<Sem>> = BTreeMap::new();
    for i in 0..xs.len() {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().insert(xs[i].clone());
    }
    let elements: Vec<Sem> = classes.into_values().map(Sem::Set).collect();
    let base = a.clone();
    let realizes: Realizes = Rc::new(move |q, x, b| match x {
        Sem::Set(members) => any(members.iter().map(|m| base.realizes(q, m, b))),
        _ => Tri::False,
    });
    let base = a.clone();
    let candidates: Candidates = Rc::new(move |x, b| match x {
        Sem::Set(members) => members.iter().flat_map(|m| base.realizers(m, b)).collect(),
        _ => Vec::new(),
    });
    let elements = keep_realized(elements, &realizes, &candidates, budget);
    let level = a.level + 1;
    Ok(Assembly {
        name: format!("Quot({})", a.name),
        level,
        universe: a.universe,
        domain: SemSet { level, elements, complete: a.domain.complete },
        exact: a.exact,
        enumerated: a.enumerated,
        realizes,
        candidates,
        member: None,
    })
}

/// A function between domains together with a code claimed to track it.
#[derive(Clone)]
pub struct Morphism {
    map: Rc<dyn Fn(&Sem) -> Option<Sem>>,
    pub tracker: Comb,
}

impl Morphism {
    pub fn new(tracker: Comb, map: impl Fn(&Sem) -> Option<Sem> + 'static) -> Morphism {
        Morphism { map: Rc::new(map), tracker }
    }

    pub fn apply(&self, x: &Sem) -> Option<Sem> {
        (self.map)(x)
    }

    /// For every element and sampled realizer `a ⊩ A`: `f a↓` and
    /// `f a ⊩ F(A)`.
    pub fn tracks(&self, from: &Assembly, to: &Assembly, b: &Budget) -> Tri {
        tracks(&self.tracker, &*self.map, from, to, b)
    }
}

fn tracks(f: &Comb, map: &dyn Fn(&Sem) -> Option<Sem>, from: &Assembly, to: &Assembly, b: &Budget) -> Tri {
    all(from.elements().iter().map(|x| match map(x) {
        Some(y) => all(from.sample(x, b).iter().map(|a| then(app(f, a, b), |v| to.realizes(v, &y, b)))),
        None => Tri::False,
    }))
}

/// The first candidate code tracking `map`.
pub fn find_tracker(
    from: &Assembly,
    to: &Assembly,
    map: impl Fn(&Sem) -> Option<Sem> + 'static,
    b: &Budget,
) -> Option<Morphism> {
    let image = |x: &Sem| map(x).and_then(|y| to.realizer(&y, b));
    let mut cands = tracker_candidates(from, &image, b);
    let f = cands.find(|f| tracks(f, &map, from, to, b).is_true())?;
    Some(Morphism { map: Rc::new(map), tracker: f })
}

/// An isomorphism `𝒜 ≅ 𝓑` with trackers both ways.
#[derive(Clone, Debug)]
pub struct Iso {
    pub target: Assembly,
    pub forward: Comb,
    pub backward: Comb,
}

/// Search for an isomorphism between `a` and the embedding of a subsingleton.
/// Requires at most one element.
pub fn iso_to_subsingleton(a: &Assembly, b: &Budget) -> Option<Iso> {
    if a.elements().len() > 1 {
        return None;
    }
    let only = a.elements().first().cloned();
    let target = subsing_assembly(Subsingleton::new(Tri::from_bool(only.is_some())));
    let fwd = find_tracker(a, &target, |_| Some(Sem::star()), b)?;
    let back = find_tracker(&target, a, move |_| only.clone(), b)?;
    Some(Iso { target, forward: fwd.tracker, backward: back.tracker })
}

/// Search for an isomorphism between `a` and the embedding of the PER
/// `{⟨p,q⟩ | ∃A. p ⊩ A ∧ q ⊩ A}` built from its sampled realizers. Fails when
/// some sampled realizer realizes two elements.
pub fn iso_to_per(a: &Assembly, b: &Budget) -> Option<Iso> {
    let mut owner: Vec<(Comb, Sem)> = Vec::new();
    for x in a.elements() {
        for r in a.sample(x, b) {
            if a.realizes(&r, x, b).is_true() {
                for y in a.elements() {
                    if y != x && a.realizes(&r, y, b).is_true() {
                        return None;
                    }
                }
                owner.push((r, x.clone()));
            }
        }
    }
    let window: Vec<Comb> = owner.iter().map(|(r, _)| r.clone()).collect();
    let (src, budget) = (a.clone(), b.clone());
    let per = Per::new(&format!("per({})", a.name), window, a.exact, move |p, q| {
        any(src.elements().iter().map(|x| src.realizes(p, x, &budget).and(src.realizes(q, x, &budget))))
    });
    let target = embed_per_to_assembly(&per);
    let class_of: BTreeMap<Sem, Sem> = a
        .elements()
        .iter()
        .filter_map(|x| {
            let rep = owner.iter().find(|(_, y)| y == x)?.0.clone();
            Some((x.clone(), per.class(&rep)))
        })
        .collect();
    let back_map: BTreeMap<Sem, Sem> = class_of.iter().map(|(x, c)| (c.clone(), x.clone())).collect();
    let fwd = find_tracker(a, &target, move |x| class_of.get(x).cloned(), b)?;
    let back = find_tracker(&target, a, move |c| back_map.get(c).cloned(), b)?;
    Some(Iso { target, forward: fwd.tracker, backward: back.tracker })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    fn fin_asm(n: u64) -> Assembly {
        embed_per_to_assembly(&fin(n))
    }

    #[test]
    fn diagonal_pers() {
        let f2 = fin(2);
        assert!(f2.related(&Comb::Num(0), &Comb::Num(0)).is_true());
        assert!(f2.related(&Comb::Num(1), &Comb::Num(1)).is_true());
        assert!(f2.related(&Comb::Num(0), &Comb::Num(1)).is_false());
        assert!(f2.related(&Comb::Num(2), &Comb::Num(2)).is_false());
        assert!(fin(0).dom().is_empty());
        assert!(nat().related(&Comb::Num(40), &Comb::Num(40)).is_true());
        assert_eq!(parity(9).quotient().len(), 2);
    }

    #[test]
    fn nabla_and_embeddings() {
        let star = nabla("one", SemSet::finite(0, vec![Sem::star()]));
        for a in [Comb::Num(0), Comb::Num(7), skk()] {
            assert!(star.realizes(&a, &Sem::star(), &b()).is_true());
        }
        let e = fin_asm(2);
        assert_eq!(e.elements(), &[Sem::Set([Sem::nat(0)].into()), Sem::Set([Sem::nat(1)].into())]);
        assert!(e.realizes(&Comb::Num(1), &e.elements()[1], &b()).is_true());
        assert!(e.realizes(&Comb::Num(0), &e.elements()[1], &b()).is_false());
        let full = embed_subsing_to_per(Subsingleton::new(Tri::True));
        assert!(full.related(&Comb::Num(3), &Comb::K).is_true());
        assert!(embed_subsing_to_per(Subsingleton::new(Tri::False)).dom().is_empty());
    }

    #[test]
    fn sigma_of_finite_types() {
        let s = sigma(&fin_asm(2), &|_| Ok(fin_asm(3)), &b()).unwrap();
        assert_eq!(s.elements().len(), 6);
        assert_eq!(s.level, 1);
        assert!(s.unrealized(&b()).is_none());
    }

    #[test]
    fn pi_over_empty_and_small() {
        let e = pi(&fin_asm(0), &|_| Ok(fin_asm(3)), &b()).unwrap();
        assert_eq!(e.elements().len(), 1);
        assert!(e.realizes(&Comb::K, &e.elements()[0], &b()).is_true());
        let p = pi(&fin_asm(2), &|_| Ok(fin_asm(2)), &b()).unwrap();
        assert_eq!(p.elements().len(), 4);
        assert_eq!(p.level, 2);
        assert!(p.unrealized(&b()).is_none());
    }

    #[test]
    fn single_node_w_type() {
        let w = wtype(&fin_asm(1), &|_| Ok(fin_asm(0)), 2, &b()).unwrap();
        assert_eq!(w.elements().len(), 1);
        let t = &w.elements()[0];
        assert_eq!(t, &Sem::Tree([vec![Sem::Set([Sem::nat(0)].into())]].into()));
        let labels = fin_asm(1).elements().to_vec();
        assert!(is_wellfounded_tree(t, &labels, &|_| Vec::new()));
    }

    #[test]
    fn parity_quotient_of_four() {
        let f4 = fin_asm(4);
        let q = quot(
            &f4,
            &|x, y| {
                let (i, j) = (first_num(x), first_num(y));
                Ok(subsing_assembly(Subsingleton::new(Tri::from_bool(i % 2 == j % 2))))
            },
            &b(),
        )
        .unwrap();
        assert_eq!(q.elements().len(), 2);
        let odd = q.elements().iter().find(|c| c.as_set().unwrap().contains(&Sem::Set([Sem::nat(1)].into()))).unwrap();
        assert!(q.realizes(&Comb::Num(1), odd, &b()).is_true());
        assert_eq!(q.level, 2);
    }

    fn first_num(x: &Sem) -> u64 {
        x.as_set().unwrap().iter().next().unwrap().as_nat().unwrap()
    }

    #[test]
    fn truncation_and_equality() {
        assert!(trunc(&fin_asm(0)).inhabited.is_false());
        assert!(trunc(&fin_asm(2)).inhabited.is_true());
        assert!(subsing_eq(&Sem::nat(3), &Sem::nat(3)).inhabited.is_true());
        assert!(subsing_eq(&Sem::nat(3), &Sem::nat(4)).inhabited.is_false());
    }

    #[test]
    fn isomorphisms() {
        let s = sigma(&fin_asm(2), &|_| Ok(fin_asm(2)), &b()).unwrap();
        assert!(iso_to_per(&s, &b()).is_some());
        let one = sigma(&fin_asm(1), &|_| Ok(fin_asm(1)), &b()).unwrap();
        assert!(iso_to_subsingleton(&one, &b()).is_some());
        assert!(iso_to_subsingleton(&s, &b()).is_none());
        // ∇ of two points is not modest
        let two = nabla("two", SemSet::finite(0, vec![Sem::nat(0), Sem::nat(1)]));
        assert!(iso_to_per(&two, &b()).is_none());
    }
}
