use serde::{Deserialize, Serialize};

use crate::group::DihedralVerdict;

use super::ExactProductGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub diagnostics: Vec<String>,
}

impl Verdict {
    fn from_diagnostics(diagnostics: Vec<String>) -> Self {
        Verdict {
            passed: diagnostics.is_empty(),
            diagnostics,
        }
    }
}

/// One named structural property and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// `H ~ D_2n`, `K ~ D_2m`, `H n K = 1` and `|H| |K| = |X|`.
pub fn verify_exact_product(g: &ExactProductGroup) -> Verdict {
    let grp = &g.group;
    let (m, n) = (g.tuple.m as usize, g.tuple.n as usize);
    let mut diagnostics = Vec::new();
    for (name, sub, degree) in [("H", &g.h, n), ("K", &g.k, m)] {
        match grp.recognize_dihedral(sub) {
            DihedralVerdict::Dihedral { rotation, .. } if grp.element_order(rotation) == degree => {}
            other => diagnostics.push(format!("{name} is not dihedral of order {}: {other:?}", 2 * degree)),
        }
    }
    let meet = g.h.intersection(&g.k);
    if meet != [grp.identity()] {
        diagnostics.push(format!("H and K meet in {} elements", meet.len()));
    }
    if g.h.order() * g.k.order() != grp.order() {
        diagnostics.push(format!("|H| |K| = {} but |X| = {}", g.h.order() * g.k.order(), grp.order()));
    }
    Verdict::from_diagnostics(diagnostics)
}

/// `core(<x>) = <x^n1>` and `core(<z>) = <z^m1>`.
pub fn verify_cores(g: &ExactProductGroup) -> Verdict {
    let grp = &g.group;
    let t = &g.tuple;
    let mut diagnostics = Vec::new();
    for (name, gen, power) in [("x", g.x, t.n1), ("z", g.z, t.m1)] {
        let core = grp.core(&grp.closure(&[gen]));
        let expected = grp.closure(&[grp.pow(gen, power as i64)]);
        if !core.same_elements(&expected) {
            diagnostics.push(format!(
                "core of <{name}> has order {}, expected <{name}^{power}> of order {}",
                core.order(),
                expected.order()
            ));
        }
    }
    Verdict::from_diagnostics(diagnostics)
}

/// The seven structural properties every exact product of two odd dihedral
/// groups is known to have.
pub fn structural_checks(g: &ExactProductGroup) -> Vec<Check> {
    let grp = &g.group;
    let t = &g.tuple;
    let e = grp.identity();
    let (x, y, z, w) = (g.x, g.y, g.z, g.w);
    let z1 = grp.pow(z, t.m1 as i64);
    let x1 = grp.pow(x, t.n1 as i64);
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    for (name, base, complement) in [
        ("(i) X = <H, z> : <w>", [x, y, z], w),
        ("(ii) X = <x, K> : <y>", [x, z, w], y),
    ] {
        let s = grp.closure(&base);
        let index = grp.order() / s.order();
        let normal = grp.is_normal(&s);
        let outside = !s.contains(complement);
        let involution = grp.pow(complement, 2) == e;
        push(
            name,
            index == 2 && normal && outside && involution,
            format!("index={index} normal={normal} complement_outside={outside} complement_involution={involution}"),
        );
    }

    for (name, base) in [("(iii) <z^m1, H> normal", [z1, x, y]), ("(iv) <x^n1, K> normal", [x1, z, w])] {
        let s = grp.closure(&base);
        let normal = grp.is_normal(&s);
        push(name, normal, format!("order={} normal={normal}", s.order()));
    }

    let xz1 = grp.mul(x, z1) == grp.mul(z1, x);
    let zx1 = grp.mul(z, x1) == grp.mul(x1, z);
    push(
        "(v) [x, z^m1] = [z, x^n1] = 1",
        xz1 && zx1,
        format!("x commutes with z^m1: {xz1}; z commutes with x^n1: {zx1}"),
    );

    let xz = grp.commutator(x, z) == e;
    push("(vi) [x, z] = 1", xz, format!("[x,z] = {}", grp.label(grp.commutator(x, z))));

    let q = t.k_modulus();
    let u = t.u();
    let conj = grp.conjugate(z1, y) == grp.pow(z1, u as i64);
    let u_involutive = (u * u) % q == 1 % q;
    push(
        "(vii) (z^m1)^y = (z^m1)^u, u^2 = 1 mod m/m1",
        conj && u_involutive,
        format!("u = {u} (mod {q}); conjugation matches: {conj}; u^2 = 1: {u_involutive}"),
    );
    checks
}
