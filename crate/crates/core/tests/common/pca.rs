//! Random combinator values and open bodies, and Kleene equality under a
//! step budget.

use conserv::pca::{Comb, EvalOutcome, Machine, Open};
use rand::Rng;

/// What a closed term does within a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Run {
    Value(Comb),
    /// Stuck or otherwise undefined.
    Undefined,
    OutOfBudget,
}

pub fn run(t: &Comb, budget: u64) -> Run {
    match Machine::new(budget).eval(t) {
        Ok(EvalOutcome::Value(v)) => Run::Value(v),
        Ok(EvalOutcome::Diverged { .. }) => Run::OutOfBudget,
        Err(_) => Run::Undefined,
    }
}

fn has_eps(c: &Comb) -> bool {
    match c {
        Comb::Eps(_) => true,
        Comb::App(f, a) => has_eps(f) || has_eps(a),
        _ => false,
    }
}

/// A value without ε-constants: a small numeral, or a decoded code that
/// happens to be a value.
pub fn value<R: Rng>(rng: &mut R) -> Comb {
    if rng.gen_bool(0.3) {
        return Comb::Num(rng.gen_range(0..50));
    }
    loop {
        let c = Comb::from_code_u64(rng.gen_range(0..1 << 22));
        if c.is_value() && !has_eps(&c) {
            return c;
        }
    }
}

/// An open body whose only variable is `x`.
pub fn body<R: Rng>(rng: &mut R, depth: u32) -> Open {
    let leaf = |rng: &mut R| match rng.gen_range(0..4) {
        0 | 1 => Open::var("x"),
        2 => Open::Const(Comb::Num(rng.gen_range(0..6))),
        _ => Open::Const([Comb::K, Comb::S, Comb::Suc, Comb::Rec][rng.gen_range(0..4)].clone()),
    };
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let (l, r) = (body(rng, depth - 1), body(rng, depth - 1));
    match rng.gen_range(0..6) {
        0 => Open::Succ(Box::new(l)),
        1 => Open::Add(Box::new(l), Box::new(r)),
        2 => Open::Mul(Box::new(l), Box::new(r)),
        _ => Open::app(l, r),
    }
}

/// `a ≃ b`: both undefined or both defined and equal. A side that runs out
/// of budget is retried with a larger one, since the two sides of an axiom
/// differ by a few steps; agreement is then judged on what both reach.
pub fn kleene(a: &Comb, b: &Comb, budget: u64) -> Result<(), String> {
    let (mut ra, mut rb) = (run(a, budget), run(b, budget));
    if (ra == Run::OutOfBudget) != (rb == Run::OutOfBudget) {
        ra = run(a, 4 * budget);
        rb = run(b, 4 * budget);
    }
    match (&ra, &rb) {
        (Run::OutOfBudget, Run::OutOfBudget) => Ok(()),
        _ if ra == rb => Ok(()),
        _ => Err(format!("{a} gives {ra:?} but {b} gives {rb:?}")),
    }
}

/// The six combinator axioms at values `x, y, z` and numeral `n`; one
/// message per failed axiom.
pub fn axioms(x: &Comb, y: &Comb, z: &Comb, n: u64, budget: u64) -> Vec<String> {
    let ap = |h: Comb, args: &[&Comb]| Comb::apps(h, args.iter().map(|c| (*c).clone()));
    let mut bad = Vec::new();
    let mut check = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            bad.push(format!("{name}: {e}"));
        }
    };
    check("k", kleene(&ap(Comb::K, &[x, y]), x, budget));
    check(
        "s value",
        match run(&ap(Comb::S, &[x, y]), budget) {
            Run::Value(_) => Ok(()),
            other => Err(format!("s {x} {y} gives {other:?}")),
        },
    );
    let xz = ap(x.clone(), &[z]);
    let yz = ap(y.clone(), &[z]);
    check("s", kleene(&ap(Comb::S, &[x, y, z]), &Comb::app(xz, yz), budget));
    check("suc", kleene(&Comb::app(Comb::Suc, Comb::Num(n)), &Comb::Num(n + 1), budget));
    check("rec 0", kleene(&ap(Comb::Rec, &[x, y, &Comb::Num(0)]), x, budget));
    let rec_n = ap(Comb::Rec, &[x, y, &Comb::Num(n)]);
    check("rec S", kleene(&ap(Comb::Rec, &[x, y, &Comb::Num(n + 1)]), &ap(y.clone(), &[&Comb::Num(n), &rec_n]), budget));
    bad
}

/// `(λx b) a ≃ b[a/x]`.
pub fn beta(b: &Open, a: &Comb, budget: u64) -> Result<(), String> {
    let lam = conserv::pca::abstract_closed("x", b).map_err(|e| e.to_string())?;
    let direct = conserv::pca::close(&b.subst("x", a)).map_err(|e| e.to_string())?;
    kleene(&Comb::app(lam, a.clone()), &direct, budget).map_err(|e| format!("λx {b} at {a}: {e}"))
}

/// A query-free oracle program `λt. <1, g t>` built from a random body `g`,
/// together with `λx g` itself.
pub fn query_free<R: Rng>(rng: &mut R) -> (Comb, Comb) {
    use conserv::pca::library::num_pair;
    let g = body(rng, 2);
    let program = Open::apps(Open::Const(num_pair()), [Open::Const(Comb::Num(1)), g.clone()]);
    (conserv::pca::abstract_closed("x", &program).unwrap(), conserv::pca::abstract_closed("x", &g).unwrap())
}

/// Run `program` under the empty oracle and `g` directly on `b`. Returns
/// whether the comparison was decided within budget.
pub fn oracle_matches_apply(program: &Comb, g: &Comb, b: u64, budget: u64) -> Result<bool, String> {
    use conserv::pca::{eval_oracle, Undefined};
    let direct = run(&Comb::app(g.clone(), Comb::Num(b)), budget);
    let via = eval_oracle(program, b, &Undefined, budget);
    match (&direct, &via) {
        (Run::OutOfBudget, _) | (_, Ok(EvalOutcome::Diverged { .. })) => Ok(false),
        (Run::Value(Comb::Num(c)), Ok(EvalOutcome::Value(Comb::Num(d)))) if c == d => Ok(true),
        (Run::Value(Comb::Num(_)), _) => Err(format!("{g} on {b} gives {direct:?}, the oracle run {via:?}")),
        (_, Err(_)) => Ok(true),
        _ => Err(format!("{g} on {b} gives {direct:?}, the oracle run {via:?}")),
    }
}
