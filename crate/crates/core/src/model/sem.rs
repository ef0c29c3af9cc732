//! Elements of the cumulative hierarchy `𝒫ⁿ(ℕ)`.
//!
//! [`HSet`] is the raw encoding: hereditarily finite sets over naturals, with
//! the inclusions `ι` and the set-level pairing `⟨A,B⟩`. [`Sem`] is the
//! structured form the model computes with; [`Sem::encode`] maps it into
//! `HSet`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use crate::pca::{pair, Comb};
use crate::Code;

/// A hereditarily finite set over naturals. Members of a set all have the
/// same level, so `level` is well defined; the empty set has level 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HSet {
    Atom(Code),
    Set(BTreeSet<HSet>),
}

impl HSet {
    pub fn atom(n: u64) -> HSet {
        HSet::Atom(Code::from(n))
    }

    pub fn level(&self) -> u32 {
        match self {
            HSet::Atom(_) => 0,
            HSet::Set(xs) => 1 + xs.iter().map(HSet::level).max().unwrap_or(0),
        }
    }

    /// `ι₀(x) = {x}`, `ι_{n+1}(X) = {ι_n(x) | x ∈ X}`.
    pub fn iota(&self) -> HSet {
        match self {
            HSet::Atom(_) => HSet::Set([self.clone()].into()),
            HSet::Set(xs) => HSet::Set(xs.iter().map(HSet::iota).collect()),
        }
    }

    /// Apply `ι` until the level is at least `n`. The empty set is fixed by
    /// `ι` and stays as it is.
    pub fn lift(&self, n: u32) -> HSet {
        let mut x = self.clone();
        while x.level() < n && x != HSet::Set(BTreeSet::new()) {
            x = x.iota();
        }
        x
    }

    /// A set whose members are lifted to a common level.
    pub fn set<I: IntoIterator<Item = HSet>>(items: I) -> HSet {
        let items: Vec<HSet> = items.into_iter().collect();
        let top = items.iter().map(HSet::level).max().unwrap_or(0);
        HSet::Set(items.into_iter().map(|x| x.lift(top)).collect())
    }

    /// `x ∈ Y` up to the inclusions.
    pub fn member(x: &HSet, y: &HSet) -> bool {
        match y {
            HSet::Atom(_) => false,
            HSet::Set(ys) => {
                let want = y.level() - 1;
                let empty = *x == HSet::Set(BTreeSet::new());
                (empty || x.level() <= want) && ys.contains(&x.lift(want))
            }
        }
    }

    /// Equality up to the inclusions.
    pub fn same(a: &HSet, b: &HSet) -> bool {
        let n = a.level().max(b.level());
        a.lift(n) == b.lift(n)
    }

    /// `⟨A,B⟩`: Cantor pairing on naturals, and on sets the disjoint union
    /// `{⟨0,a⟩ | a ∈ A} ∪ {⟨1,b⟩ | b ∈ B}` one level down.
    pub fn pair(a: &HSet, b: &HSet) -> HSet {
        let n = a.level().max(b.level());
        match (a.lift(n), b.lift(n)) {
            (HSet::Atom(x), HSet::Atom(y)) => HSet::Atom(pair(&x, &y)),
            (HSet::Set(xs), HSet::Set(ys)) => {
                let tag = |k: u64| HSet::atom(k).lift(n - 1);
                let left = xs.iter().map(|x| HSet::pair(&tag(0), x));
                let right = ys.iter().map(|y| HSet::pair(&tag(1), y));
                HSet::set(left.chain(right).collect::<Vec<_>>())
            }
            _ => unreachable!("lifted to the same level"),
        }
    }
}

/// A structured element of the hierarchy.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sem {
    /// An individual: a combinator value, usually a numeral. `*` is `0`.
    Ind(Comb),
    Set(BTreeSet<Sem>),
    Pair(Rc<Sem>, Rc<Sem>),
    /// A function as its graph.
    Fun(BTreeMap<Sem, Sem>),
    /// A tree as its set of paths `⟨a₀,b₀,a₁,…,aₙ⟩`.
    Tree(BTreeSet<Vec<Sem>>),
}

impl Sem {
    pub fn nat(n: u64) -> Sem {
        Sem::Ind(Comb::Num(n))
    }

    pub fn star() -> Sem {
        Sem::nat(0)
    }

    pub fn pair(a: Sem, b: Sem) -> Sem {
        Sem::Pair(Rc::new(a), Rc::new(b))
    }

    /// `{∗}` when `inhabited`, `∅` otherwise.
    pub fn subsingleton(inhabited: bool) -> Sem {
        Sem::Set(if inhabited { [Sem::star()].into() } else { BTreeSet::new() })
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Sem::Ind(c) => c.as_num(),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&BTreeSet<Sem>> {
        match self {
            Sem::Set(s) => Some(s),
            _ => None,
        }
    }

    /// Whether `*` belongs to this subsingleton.
    pub fn has_star(&self) -> bool {
        self.as_set().is_some_and(|s| s.contains(&Sem::star()))
    }

    /// Components of a pair.
    pub fn split(&self) -> Option<(&Sem, &Sem)> {
        match self {
            Sem::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// `F(A)` for a function graph.
    pub fn call(&self, a: &Sem) -> Option<&Sem> {
        match self {
            Sem::Fun(g) => g.get(a),
            _ => None,
        }
    }

    /// The label at the root of a tree.
    pub fn root(&self) -> Option<&Sem> {
        match self {
            Sem::Tree(paths) => paths.iter().find(|p| p.len() == 1).map(|p| &p[0]),
            _ => None,
        }
    }

    pub fn level(&self) -> u32 {
        self.encode().level()
    }

    /// The element of `𝒫ⁿ(ℕ)` this stands for. Individuals are their Gödel
    /// numbers, pairs use [`HSet::pair`], a function is the set of its
    /// argument/result pairs, and a tree is the set of its paths, each
    /// encoded as `⟨length, ⟨a₀, ⟨b₀, …⟩⟩⟩`.
    pub fn encode(&self) -> HSet {
        match self {
            Sem::Ind(c) => HSet::Atom(c.code()),
            Sem::Set(xs) => HSet::set(xs.iter().map(Sem::encode).collect::<Vec<_>>()),
            Sem::Pair(a, b) => HSet::pair(&a.encode(), &b.encode()),
            Sem::Fun(g) => HSet::set(g.iter().map(|(a, b)| HSet::pair(&a.encode(), &b.encode())).collect::<Vec<_>>()),
            Sem::Tree(paths) => HSet::set(paths.iter().map(|p| encode_path(p)).collect::<Vec<_>>()),
        }
    }
}

fn encode_path(p: &[Sem]) -> HSet {
    let mut items = p.iter().rev().map(Sem::encode);
    let last = items.next().expect("paths are nonempty");
    let nested = items.fold(last, |acc, x| HSet::pair(&x, &acc));
    HSet::pair(&HSet::atom(p.len() as u64), &nested)
}

impl fmt::Display for Sem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sem::Ind(c) => write!(f, "{c}"),
            Sem::Set(xs) => {
                f.write_str("{")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            Sem::Pair(a, b) => write!(f, "<{a}, {b}>"),
            Sem::Fun(g) => {
                f.write_str("[")?;
                for (i, (a, b)) in g.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a} |-> {b}")?;
                }
                f.write_str("]")
            }
            Sem::Tree(paths) => {
                f.write_str("tree{")?;
                for (i, p) in paths.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                    write!(f, "<{}>", parts.join(","))?;
                }
                f.write_str("}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small() -> impl Strategy<Value = HSet> {
        let leaf = (0u64..6).prop_map(HSet::atom);
        leaf.prop_recursive(3, 12, 3, |inner| prop::collection::vec(inner, 0..3).prop_map(HSet::set))
    }

    #[test]
    fn iota_examples() {
        // {0,2} ∈ 𝒫(ℕ) is {{0},{2}} one level up
        let x = HSet::set([HSet::atom(0), HSet::atom(2)]);
        assert_eq!(x.iota(), HSet::set([HSet::set([HSet::atom(0)]), HSet::set([HSet::atom(2)])]));
        assert_eq!(x.iota().level(), 2);
        assert!(HSet::same(&x, &x.iota().iota()));
    }

    #[test]
    fn set_pairs_are_injective_on_samples() {
        let xs: Vec<HSet> = vec![
            HSet::atom(0),
            HSet::atom(3),
            HSet::set([HSet::atom(1)]),
            HSet::set([HSet::atom(1), HSet::atom(2)]),
            HSet::set([]),
        ];
        let mut seen = BTreeSet::new();
        for a in &xs {
            for b in &xs {
                let p = HSet::pair(a, b);
                assert!(p.level() <= a.level().max(b.level()));
                assert!(seen.insert(p), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn structured_levels() {
        let f = Sem::Fun([(Sem::nat(0), Sem::subsingleton(true))].into());
        assert_eq!(Sem::nat(3).level(), 0);
        assert_eq!(Sem::subsingleton(true).level(), 1);
        assert_eq!(f.level(), 2);
        let t = Sem::Tree([vec![Sem::nat(0)]].into());
        assert_eq!(t.root(), Some(&Sem::nat(0)));
        assert_eq!(t.level(), 1);
    }

    proptest! {
        #[test]
        fn iota_preserves_membership(x in small(), y in small()) {
            prop_assert_eq!(HSet::member(&x, &y), HSet::member(&x.iota(), &y.iota()));
        }

        #[test]
        fn iota_is_invisible_to_equality(x in small()) {
            prop_assert!(HSet::same(&x, &x.iota()));
            if x.level() == 0 {
                prop_assert_eq!(x.iota().level(), 1);
            }
        }
    }
}
