use std::fmt::Write;

use super::ParameterTuple;

/// GAP script that presents the group for `tuple` as a finitely presented
/// group and asserts its order is `4mn`.
pub fn gap_script(tuple: &ParameterTuple) -> String {
    let t = tuple;
    let order = 4 * t.m * t.n;
    let mut out = String::new();
    writeln!(out, "# tuple {}", serde_json::to_string(t).expect("tuple serializes")).unwrap();
    writeln!(out, "F := FreeGroup(\"x\", \"y\", \"z\", \"w\");;").unwrap();
    writeln!(out, "x := F.1;; y := F.2;; z := F.3;; w := F.4;;").unwrap();
    writeln!(out, "rels := [").unwrap();
    let relators = [
        format!("x^{}", t.n),
        "y^2".to_string(),
        format!("z^{}", t.m),
        "w^2".to_string(),
        "Comm(x, z)".to_string(),
        "x^y * x".to_string(),
        "z^w * z".to_string(),
        format!("Comm(x, w) * (x^{} * z^{})^-1", t.s * t.n1, t.b * t.m1),
        format!("Comm(z, y) * (x^{} * z^{})^-1", t.r * t.n1, t.a * t.m1),
        format!("Comm(y, w) * (x^{} * z^{})^-1", t.t * t.n1, t.c * t.m1),
    ];
    let last = relators.len() - 1;
    for (i, rel) in relators.iter().enumerate() {
        writeln!(out, "  {rel}{}", if i < last { "," } else { "" }).unwrap();
    }
    writeln!(out, "];;").unwrap();
    writeln!(out, "G := F / rels;;").unwrap();
    writeln!(out, "Assert(0, Size(G) = {order});").unwrap();
    writeln!(out, "Print(Size(G), \"\\n\");").unwrap();
    out
}
