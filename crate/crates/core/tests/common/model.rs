//! Finite assemblies shared by the model tests.

use conserv::model::*;
use conserv::Tri;

pub fn b() -> Budget {
    Budget::default()
}

pub fn fin_asm(n: u64) -> Assembly {
    embed_per_to_assembly(&fin(n))
}

pub fn subsing(inhabited: bool) -> Assembly {
    subsing_assembly(Subsingleton::new(Tri::from_bool(inhabited)))
}

pub fn class(n: u64) -> Sem {
    Sem::Set([Sem::nat(n)].into())
}

pub fn num_of(x: &Sem) -> u64 {
    x.as_set().unwrap().iter().next().unwrap().as_nat().unwrap()
}

/// Constructions the realizer-existence and level checks range over.
pub fn corpus() -> Vec<(String, Assembly, u32)> {
    let mut out = Vec::new();
    for n in 0..4 {
        for m in 0..4 {
            let s = sigma(&fin_asm(n), &|_| Ok(fin_asm(m)), &b()).unwrap();
            out.push((format!("sigma {n} {m}"), s, 1));
            let p = pi(&fin_asm(n), &|_| Ok(fin_asm(m)), &b()).unwrap();
            out.push((format!("pi {n} {m}"), p, 2));
        }
        let dep = sigma(&fin_asm(n), &|x| Ok(fin_asm(num_of(x) + 1)), &b()).unwrap();
        out.push((format!("sigma dep {n}"), dep, 1));
        let w = wtype(&fin_asm(n.min(2)), &|x| Ok(fin_asm(num_of(x))), 2, &b()).unwrap();
        out.push((format!("w {n}"), w, 2));
        let q = quot(&fin_asm(n), &|x, y| Ok(subsing(num_of(x) % 2 == num_of(y) % 2)), &b()).unwrap();
        out.push((format!("quot {n}"), q, 2));
    }
    let pp = pi(&fin_asm(2), &|_| pi(&fin_asm(2), &|_| Ok(fin_asm(2)), &b()), &b()).unwrap();
    out.push(("pi pi".into(), pp, 3));
    out
}

fn iso_target(a: &Assembly, subsingleton: bool) -> bool {
    if subsingleton {
        iso_to_subsingleton(a, &b()).is_some()
    } else {
        iso_to_per(a, &b()).is_some()
    }
}

/// The Σ/Π/W/quotient micro-suite: each output must be isomorphic to a PER
/// (PER-valued inputs) or a subsingleton (subsingleton-valued inputs).
/// Returns the names of the constructions where no isomorphism was found.
pub fn preservation_failures() -> Vec<String> {
    let mut bad = Vec::new();
    // PER-valued inputs
    for n in 0..4 {
        for m in 0..4 {
            let a = fin_asm(n);
            let s = sigma(&a, &|_| Ok(fin_asm(m)), &b()).unwrap();
            if !iso_target(&s, false) {
                bad.push(format!("sigma {n} {m}"));
            }
            let p = pi(&a, &|_| Ok(fin_asm(m)), &b()).unwrap();
            if !iso_target(&p, false) {
                bad.push(format!("pi {n} {m}"));
            }
        }
        let w = wtype(&fin_asm(n.min(2)), &|x| Ok(fin_asm(num_of(x))), 2, &b()).unwrap();
        if !iso_target(&w, false) {
            bad.push(format!("w {n}"));
        }
        let q = quot(&fin_asm(n), &|x, y| Ok(subsing(num_of(x) % 2 == num_of(y) % 2)), &b()).unwrap();
        if !iso_target(&q, false) {
            bad.push(format!("quot {n}"));
        }
    }
    // subsingleton-valued inputs
    for i in [false, true] {
        for j in [false, true] {
            let s = sigma(&subsing(i), &|_| Ok(subsing(j)), &b()).unwrap();
            if !iso_target(&s, true) {
                bad.push(format!("sigma {i} {j}"));
            }
            for n in 0..4 {
                let p = pi(&fin_asm(n), &|_| Ok(subsing(j)), &b()).unwrap();
                if !iso_target(&p, true) {
                    bad.push(format!("pi {n} {j}"));
                }
            }
            let w = wtype(&subsing(i), &|_| Ok(subsing(j)), 2, &b()).unwrap();
            if !iso_target(&w, true) {
                bad.push(format!("w {i} {j}"));
            }
        }
        let q = quot(&subsing(i), &|_, _| Ok(subsing(true)), &b()).unwrap();
        if !iso_target(&q, true) {
            bad.push(format!("quot {i}"));
        }
    }
    bad
}
