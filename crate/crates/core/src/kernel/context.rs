use super::term::{shift, Term};

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub ty: Term,
}

/// An equation `lhs ≡ rhs` usable by conversion. Stored relative to the
/// context length at which it was introduced.
#[derive(Clone, Debug)]
pub struct Hint {
    pub lhs: Term,
    pub rhs: Term,
    pub depth: usize,
}

/// Typing context: variables innermost-last plus equality hints. De Bruijn
/// index 0 is the last entry.
#[derive(Clone, Debug, Default)]
pub struct Ctx {
    entries: Vec<Entry>,
    hints: Vec<Hint>,
}

impl Ctx {
    pub fn new() -> Ctx {
        Ctx::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Extend without any checking; see `Checker::extend` for the version
    /// that registers reflection hints.
    pub fn push(&self, name: &str, ty: Term) -> Ctx {
        let mut out = self.clone();
        out.entries.push(Entry { name: name.to_string(), ty });
        out
    }

    pub(crate) fn push_hint(&self, lhs: Term, rhs: Term) -> Ctx {
        let mut out = self.clone();
        out.hints.push(Hint { lhs, rhs, depth: self.len() });
        out
    }

    /// Name and type of variable `i`, the type shifted into this context.
    pub fn lookup(&self, i: usize) -> Option<(&str, Term)> {
        let n = self.entries.len();
        if i >= n {
            return None;
        }
        let e = &self.entries[n - 1 - i];
        Some((&e.name, shift(&e.ty, i + 1)))
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Names outermost-first, as the printer expects.
    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    /// Hints shifted into this context.
    pub fn hints(&self) -> impl Iterator<Item = (Term, Term)> + '_ {
        let n = self.len();
        self.hints.iter().map(move |h| (shift(&h.lhs, n - h.depth), shift(&h.rhs, n - h.depth)))
    }

    pub fn hint_count(&self) -> usize {
        self.hints.len()
    }
}
