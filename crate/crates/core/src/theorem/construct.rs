//! Multiplication table of the group presented by a parameter tuple.
//!
//! Every element has a unique normal form `x^i z^j y^e w^d` with
//! `i in Z_n`, `j in Z_m`, `e, d in {0, 1}`, encoded as the index
//! `((i m + j) 2 + e) 2 + d`. The abelian subgroup `N = <x> x <z>` is normal,
//! and `y`, `w` act on it by
//!
//! ```text
//! y (x^i z^j) y = x^(-i + j R) z^(j (1 + a m1))      R = r n1
//! w (x^i z^j) w = x^(i S) z^(i b m1 - j)              S = 1 + s n1
//! ```
//!
//! Moving `w` past `y` uses `w y = y^-1 (x^T z^(c m1)) y . y w` with
//! `T = t n1`, which is `[y, w] = x^T z^(c m1)` rearranged. The finished table
//! is re-validated as a group and every defining relation is evaluated on it.

use crate::group::{ConcreteGroup, Subgroup};

use super::{check_conditions, ParameterTuple, TheoremError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub i: u64,
    pub j: u64,
    pub e: u64,
    pub d: u64,
}

/// The group built from an admissible tuple, with its generators and the two
/// dihedral factors `H = <x, y>` and `K = <z, w>`.
#[derive(Debug, Clone)]
pub struct ExactProductGroup {
    pub group: ConcreteGroup,
    pub tuple: ParameterTuple,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
    pub h: Subgroup,
    pub k: Subgroup,
}

impl ExactProductGroup {
    pub fn index(&self, nf: NormalForm) -> usize {
        encode(self.tuple.m, nf)
    }

    pub fn normal_form(&self, index: usize) -> NormalForm {
        decode(self.tuple.m, index)
    }

    /// Wraps an already validated group whose elements follow the normal-form
    /// encoding for `tuple` (used when re-checking a table loaded from disk).
    pub fn from_encoded_group(tuple: ParameterTuple, mut group: ConcreteGroup) -> Result<Self, TheoremError> {
        let (m, n) = (tuple.m, tuple.n);
        if group.order() as u64 != 4 * m * n {
            return Err(TheoremError::ConstructionInconsistent(format!(
                "table has order {}, expected 4mn = {}",
                group.order(),
                4 * m * n
            )));
        }
        let x = encode(m, NormalForm { i: 1, j: 0, e: 0, d: 0 });
        let z = encode(m, NormalForm { i: 0, j: 1, e: 0, d: 0 });
        let y = encode(m, NormalForm { i: 0, j: 0, e: 1, d: 0 });
        let w = encode(m, NormalForm { i: 0, j: 0, e: 0, d: 1 });
        for (name, g) in [("x", x), ("y", y), ("z", z), ("w", w)] {
            group.set_generator(name, g);
        }
        let h = group.closure(&[x, y]);
        let k = group.closure(&[z, w]);
        Ok(ExactProductGroup { group, tuple, x, y, z, w, h, k })
    }
}

fn encode(m: u64, nf: NormalForm) -> usize {
    (((nf.i * m + nf.j) * 2 + nf.e) * 2 + nf.d) as usize
}

fn decode(m: u64, index: usize) -> NormalForm {
    let v = index as u64;
    NormalForm {
        d: v % 2,
        e: (v / 2) % 2,
        j: (v / 4) % m,
        i: (v / 4) / m,
    }
}

struct Rewriter {
    m: i64,
    n: i64,
    big_r: i64,
    u_full: i64,
    big_s: i64,
    b_m1: i64,
    // y^-1 [y,w] y, the N-part picked up when w moves left past y.
    swap: (i64, i64),
}

impl Rewriter {
    fn new(t: &ParameterTuple) -> Self {
        let as_i = |v: u64| v as i64;
        let mut rw = Rewriter {
            m: as_i(t.m),
            n: as_i(t.n),
            big_r: as_i(t.r * t.n1),
            u_full: as_i(1 + t.a * t.m1),
            big_s: as_i(1 + t.s * t.n1),
            b_m1: as_i(t.b * t.m1),
            swap: (0, 0),
        };
        rw.swap = rw.conj_y((as_i(t.t * t.n1), as_i(t.c * t.m1)));
        rw
    }

    fn conj_y(&self, (i, j): (i64, i64)) -> (i64, i64) {
        ((-i + j * self.big_r).rem_euclid(self.n), (j * self.u_full).rem_euclid(self.m))
    }

    fn conj_w(&self, (i, j): (i64, i64)) -> (i64, i64) {
        ((i * self.big_s).rem_euclid(self.n), (i * self.b_m1 - j).rem_euclid(self.m))
    }

    fn add(&self, p: (i64, i64), q: (i64, i64)) -> (i64, i64) {
        ((p.0 + q.0).rem_euclid(self.n), (p.1 + q.1).rem_euclid(self.m))
    }

    fn mul(&self, lhs: NormalForm, rhs: NormalForm) -> NormalForm {
        // g1 y^e1 w^d1 . g2 y^e2 w^d2
        let mut g2 = (rhs.i as i64, rhs.j as i64);
        if lhs.d == 1 {
            g2 = self.conj_w(g2);
        }
        if lhs.e == 1 {
            g2 = self.conj_y(g2);
        }
        let mut acc = self.add((lhs.i as i64, lhs.j as i64), g2);
        if lhs.d == 1 && rhs.e == 1 {
            let carry = if lhs.e == 1 { self.conj_y(self.swap) } else { self.swap };
            acc = self.add(acc, carry);
        }
        NormalForm {
            i: acc.0 as u64,
            j: acc.1 as u64,
            e: lhs.e ^ rhs.e,
            d: lhs.d ^ rhs.d,
        }
    }
}

fn label(nf: NormalForm) -> String {
    let mut parts = Vec::new();
    match nf.i {
        0 => {}
        1 => parts.push("x".to_string()),
        i => parts.push(format!("x^{i}")),
    }
    match nf.j {
        0 => {}
        1 => parts.push("z".to_string()),
        j => parts.push(format!("z^{j}")),
    }
    if nf.e == 1 {
        parts.push("y".into());
    }
    if nf.d == 1 {
        parts.push("w".into());
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Builds and validates the group presented by an admissible tuple.
pub fn construct_group(tuple: &ParameterTuple) -> Result<ExactProductGroup, TheoremError> {
    let report = check_conditions(tuple)?;
    if !report.passed {
        return Err(TheoremError::InadmissibleTuple(format!("{tuple}: {}", report.describe_failures())));
    }
    let m = tuple.m;
    let order = (4 * tuple.m * tuple.n) as usize;
    let rw = Rewriter::new(tuple);
    let forms: Vec<NormalForm> = (0..order).map(|v| decode(m, v)).collect();
    let mut table = Vec::with_capacity(order * order);
    for &lhs in &forms {
        for &rhs in &forms {
            table.push(encode(m, rw.mul(lhs, rhs)) as u32);
        }
    }
    let labels = forms.iter().map(|&nf| label(nf)).collect();
    let group = ConcreteGroup::from_flat(order, table, Some(labels))
        .map_err(|e| TheoremError::ConstructionInconsistent(format!("group axioms: {e}")))?;
    let built = ExactProductGroup::from_encoded_group(*tuple, group)?;
    if let Some((name, _)) = relation_checks(&built.group, [built.x, built.y, built.z, built.w], tuple)
        .into_iter()
        .find(|(_, ok)| !ok)
    {
        return Err(TheoremError::ConstructionInconsistent(format!("relation {name} fails")));
    }
    Ok(built)
}

/// Evaluates every defining relation of the presentation for `tuple` on the
/// elements `[x, y, z, w]` of `group`.
pub fn relation_checks(group: &ConcreteGroup, [x, y, z, w]: [usize; 4], tuple: &ParameterTuple) -> Vec<(String, bool)> {
    let g = group;
    let e = g.identity();
    let word = |xe: u64, ze: u64| g.mul(g.pow(x, xe as i64), g.pow(z, ze as i64));
    let t = tuple;
    vec![
        ("x^n = 1".to_string(), g.pow(x, t.n as i64) == e),
        ("y^2 = 1".to_string(), g.pow(y, 2) == e),
        ("z^m = 1".to_string(), g.pow(z, t.m as i64) == e),
        ("w^2 = 1".to_string(), g.pow(w, 2) == e),
        ("[x,z] = 1".to_string(), g.commutator(x, z) == e),
        ("x^y = x^-1".to_string(), g.conjugate(x, y) == g.inv(x)),
        ("z^w = z^-1".to_string(), g.conjugate(z, w) == g.inv(z)),
        (
            "[x,w] = x^(s n1) z^(b m1)".to_string(),
            g.commutator(x, w) == word(t.s * t.n1, t.b * t.m1),
        ),
        (
            "[z,y] = x^(r n1) z^(a m1)".to_string(),
            g.commutator(z, y) == word(t.r * t.n1, t.a * t.m1),
        ),
        (
            "[y,w] = x^(t n1) z^(c m1)".to_string(),
            g.commutator(y, w) == word(t.t * t.n1, t.c * t.m1),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_round_trips() {
        for m in [3u64, 5] {
            for v in 0..(4 * m * 7) as usize {
                assert_eq!(encode(m, decode(m, v)), v);
            }
        }
        assert_eq!(encode(3, NormalForm { i: 0, j: 0, e: 0, d: 0 }), 0);
    }

    #[test]
    fn direct_product_tuple_has_commuting_factors() {
        let g = construct_group(&ParameterTuple::zero(3, 3, 1, 1)).unwrap();
        assert_eq!(g.group.order(), 36);
        let e = g.group.identity();
        assert_eq!(g.group.commutator(g.x, g.w), e);
        assert_eq!(g.group.commutator(g.z, g.y), e);
        assert_eq!(g.group.commutator(g.y, g.w), e);
        assert_eq!(g.group.element_order(g.x), 3);
        assert_eq!(g.group.label(g.x), "x");
    }

    #[test]
    fn conjugation_in_the_one_three_stratum() {
        let t = ParameterTuple::from_assignments(3, 3, "m1=1,n1=3,a=1,b=1,c=0").unwrap();
        let g = construct_group(&t).unwrap();
        let grp = &g.group;
        // z^y = x^(r n1) z^(1 + a m1) = z^2
        assert_eq!(grp.conjugate(g.z, g.y), grp.pow(g.z, 2));
        // x^w = x z^(b m1) = x z
        assert_eq!(grp.conjugate(g.x, g.w), grp.mul(g.x, g.z));
    }

    #[test]
    fn three_five_group_orders() {
        for t in super::super::admissible_tuples(3, 5).unwrap() {
            let g = construct_group(&t).unwrap();
            assert_eq!(g.group.order(), 60);
            assert_eq!(g.group.element_order(g.x), 5);
            assert_eq!(g.group.element_order(g.z), 3);
        }
    }

    #[test]
    fn inadmissible_tuple_is_refused() {
        let err = construct_group(&ParameterTuple::zero(3, 3, 3, 3)).unwrap_err();
        assert!(matches!(err, TheoremError::InadmissibleTuple(_)));
        assert!(err.to_string().contains("witness k=1"));
    }
}
