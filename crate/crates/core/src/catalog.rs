//! Built-in algebras, bases, operator systems and derivations, addressable
//! by stable names from the CLI (`catalog:NAME`) and the C API.

use crate::env::{Derivation, EnvElement};
use crate::lie::LieAlgebra;
use crate::linalg::{unit_vector, zero_vector, Vector};
use crate::products::product;
use crate::scalar::{rat_int, Rational};
use crate::weighted::WeightedBasis;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("bad catalog parameter in `{0}`: {1}")]
    BadParameter(String, String),
}

/// Heisenberg algebra h₁: [X, Y] = Z.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        vec!["X".into(), "Y".into(), "Z".into()],
        vec![(0, 1, unit_vector(3, 2))],
    )
    .expect("h1 is valid")
}

/// Heisenberg algebra h_n: [Xᵢ, Yᵢ] = Z, dimension 2n + 1.
pub fn heisenberg_n(n: usize) -> LieAlgebra {
    assert!(n >= 1);
    let dim = 2 * n + 1;
    let mut names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    names.extend((1..=n).map(|i| format!("Y{i}")));
    names.push("Z".into());
    let brackets = (0..n)
        .map(|i| (i, n + i, unit_vector(dim, dim - 1)))
        .collect();
    LieAlgebra::new(names, brackets).expect("hn is valid")
}

/// sl₂ with basis (H, E, F): [H,E] = 2E, [H,F] = −2F, [E,F] = H.
pub fn sl2() -> LieAlgebra {
    let mut two_e = zero_vector(3);
    two_e[1] = rat_int(2);
    let mut neg_two_f = zero_vector(3);
    neg_two_f[2] = rat_int(-2);
    LieAlgebra::new(
        vec!["H".into(), "E".into(), "F".into()],
        vec![(0, 1, two_e), (0, 2, neg_two_f), (1, 2, unit_vector(3, 0))],
    )
    .expect("sl2 is valid")
}

/// Free 3-step nilpotent algebra on two generators:
/// [X1,X2] = Y, [X1,Y] = T1, [X2,Y] = T2.
pub fn n23() -> LieAlgebra {
    LieAlgebra::new(
        vec![
            "X1".into(),
            "X2".into(),
            "Y".into(),
            "T1".into(),
            "T2".into(),
        ],
        vec![
            (0, 1, unit_vector(5, 2)),
            (0, 2, unit_vector(5, 3)),
            (1, 2, unit_vector(5, 4)),
        ],
    )
    .expect("n23 is valid")
}

/// Adapted weighted basis of N₂,₃ with weights (1,1,2,3,3).
pub fn n23_weighted_basis() -> WeightedBasis {
    WeightedBasis::new(
        n23(),
        vec![
            (unit_vector(5, 0), rat_int(1)),
            (unit_vector(5, 1), rat_int(1)),
            (unit_vector(5, 2), rat_int(2)),
            (unit_vector(5, 3), rat_int(3)),
            (unit_vector(5, 4), rat_int(3)),
        ],
    )
    .expect("adapted basis is valid")
}

/// The weak-but-not-strict basis X1, X2, Y+T1, T1, T2 with weights 1,1,3,3,3.
pub fn footnote_weighted_basis() -> WeightedBasis {
    let mut y_plus_t1 = zero_vector(5);
    y_plus_t1[2] = rat_int(1);
    y_plus_t1[3] = rat_int(1);
    WeightedBasis::new(
        n23(),
        vec![
            (unit_vector(5, 0), rat_int(1)),
            (unit_vector(5, 1), rat_int(1)),
            (y_plus_t1, rat_int(3)),
            (unit_vector(5, 3), rat_int(3)),
            (unit_vector(5, 4), rat_int(3)),
        ],
    )
    .expect("footnote basis is valid")
}

/// The commuting operator systems on N₂,₃: the 3-operator SO₂-invariant one
/// and the 4-operator extension. `count` ∈ {3, 4}.
pub fn n23_system_ops(count: usize) -> (Arc<LieAlgebra>, Vec<EnvElement>) {
    assert!(count == 3 || count == 4);
    let alg = Arc::new(n23());
    let mut ops = Vec::new();
    for expr in n23_system_exprs(count) {
        ops.push(crate::parse::parse_operator(expr, &alg).expect("catalog operator parses"));
    }
    (alg, ops)
}

pub fn n23_system_exprs(count: usize) -> Vec<&'static str> {
    let mut exprs = vec!["-(X1^2 + X2^2)", "2*X2*T1 - 2*X1*T2 - Y^2"];
    if count == 3 {
        exprs.push("-(T1^2 + T2^2)");
    } else {
        exprs.push("-i*T1");
        exprs.push("-i*T2");
    }
    exprs
}

/// Infinitesimal simultaneous rotation of (X1, X2) and (T1, T2) on N₂,₃:
/// J X1 = X2, J X2 = −X1, J Y = 0, J T1 = T2, J T2 = −T1.
pub fn n23_so2_derivation(alg: Arc<LieAlgebra>) -> Derivation {
    let mut images = vec![zero_vector(5); 5];
    images[0] = unit_vector(5, 1);
    images[1] = {
        let mut v = zero_vector(5);
        v[0] = rat_int(-1);
        v
    };
    images[3] = unit_vector(5, 4);
    images[4] = {
        let mut v = zero_vector(5);
        v[3] = rat_int(-1);
        v
    };
    Derivation::new(alg, images).expect("rotation is a derivation of n23")
}

/// A named catalog entry: the algebra plus any canned weighted basis,
/// grading, operator expressions, or derivation it carries.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub algebra: LieAlgebra,
    pub weighted_basis: Option<WeightedBasis>,
    pub grading_degrees: Option<Vec<Rational>>,
    pub operator_exprs: Vec<String>,
    pub derivation_images: Option<Vec<Vector>>,
}

impl CatalogEntry {
    fn plain(name: &str, description: &str, algebra: LieAlgebra) -> Self {
        CatalogEntry {
            name: name.to_string(),
            description: description.to_string(),
            algebra,
            weighted_basis: None,
            grading_degrees: None,
            operator_exprs: Vec::new(),
            derivation_images: None,
        }
    }
}

/// Stable catalog names with one-line descriptions.
pub fn catalog_list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("abelian:n", "abelian algebra of dimension n"),
        ("h1", "Heisenberg algebra: [X,Y] = Z"),
        ("hn", "Heisenberg algebra h_n for n >= 1 (h2, h3, ...)"),
        ("sl2", "sl2 with basis (H,E,F)"),
        ("n23", "free 3-step nilpotent algebra on two generators"),
        (
            "footnote-basis",
            "n23 with the weakly-but-not-strictly reduced basis, weights (1,1,3,3,3)",
        ),
        (
            "n23-system-3",
            "n23 with grading (1,1,2,3,3) and the 3-operator commuting system",
        ),
        (
            "n23-system-4",
            "n23 with grading (1,1,2,3,3) and the 4-operator commuting system",
        ),
        (
            "so2-derivation",
            "n23 with the infinitesimal rotation of (X1,X2) and (T1,T2)",
        ),
        (
            "product(A,B)",
            "direct product of two catalog entries, e.g. product(h1,abelian:1)",
        ),
    ]
}

pub fn catalog_get(name: &str) -> Result<CatalogEntry, CatalogError> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("abelian:") {
        let n: usize = rest
            .parse()
            .map_err(|_| CatalogError::BadParameter(name.into(), "dimension".into()))?;
        if n == 0 || n > 64 {
            return Err(CatalogError::BadParameter(
                name.into(),
                "dimension must be in 1..=64".into(),
            ));
        }
        return Ok(CatalogEntry::plain(
            name,
            "abelian algebra",
            LieAlgebra::abelian(n),
        ));
    }
    if let Some(inner) = name
        .strip_prefix("product(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let (a, b) = split_top_level(inner).ok_or_else(|| {
            CatalogError::BadParameter(name.into(), "expected product(A,B)".into())
        })?;
        let ea = catalog_get(a)?;
        let eb = catalog_get(b)?;
        let pa = product(vec![ea.algebra, eb.algebra])
            .map_err(|e| CatalogError::BadParameter(name.into(), e.to_string()))?;
        return Ok(CatalogEntry::plain(
            name,
            "direct product of catalog entries",
            pa.total().as_ref().clone(),
        ));
    }
    match name {
        "h1" => Ok(CatalogEntry::plain(
            name,
            "Heisenberg algebra",
            heisenberg(),
        )),
        "sl2" => Ok(CatalogEntry::plain(name, "sl2", sl2())),
        "n23" => Ok(CatalogEntry::plain(
            name,
            "free 3-step nilpotent on two generators",
            n23(),
        )),
        "footnote-basis" => {
            let mut e =
                CatalogEntry::plain(name, "weakly reduced but not strictly reduced basis", n23());
            e.weighted_basis = Some(footnote_weighted_basis());
            e.operator_exprs = Vec::new();
            Ok(e)
        }
        "n23-system-3" | "n23-system-4" => {
            let count = if name.ends_with('3') { 3 } else { 4 };
            let mut e = CatalogEntry::plain(name, "commuting system on n23", n23());
            e.grading_degrees = Some([1, 1, 2, 3, 3].iter().map(|&d| rat_int(d)).collect());
            e.operator_exprs = n23_system_exprs(count)
                .into_iter()
                .map(String::from)
                .collect();
            e.weighted_basis = Some(n23_weighted_basis());
            Ok(e)
        }
        "so2-derivation" => {
            let mut e = CatalogEntry::plain(name, "infinitesimal rotation on n23", n23());
            let d = n23_so2_derivation(Arc::new(n23()));
            e.derivation_images = Some(d.images().to_vec());
            Ok(e)
        }
        _ => {
            if let Some(rest) = name.strip_prefix('h') {
                if let Ok(n) = rest.parse::<usize>() {
                    if (1..=16).contains(&n) {
                        return Ok(CatalogEntry::plain(
                            name,
                            "Heisenberg algebra h_n",
                            heisenberg_n(n),
                        ));
                    }
                }
            }
            Err(CatalogError::UnknownName(name.into()))
        }
    }
}

/// Splits `A,B` at the top-level comma (commas inside parentheses bind).
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&s[..k], &s[k + 1..])),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_roundtrip_names() {
        for (pattern, _) in catalog_list() {
            let name = match pattern {
                "abelian:n" => "abelian:3",
                "hn" => "h2",
                "product(A,B)" => "product(h1,abelian:1)",
                other => other,
            };
            let e = catalog_get(name).unwrap();
            assert!(e.algebra.dim() >= 1);
        }
    }

    #[test]
    fn n23_entry_is_verbatim() {
        let e = catalog_get("n23").unwrap();
        assert_eq!(e.algebra.names(), &["X1", "X2", "Y", "T1", "T2"]);
        assert_eq!(e.algebra.basis_bracket(0, 1), unit_vector(5, 2));
        assert_eq!(e.algebra.basis_bracket(0, 2), unit_vector(5, 3));
        assert_eq!(e.algebra.basis_bracket(1, 2), unit_vector(5, 4));
    }

    #[test]
    fn footnote_entry_weights() {
        let e = catalog_get("footnote-basis").unwrap();
        let wb = e.weighted_basis.unwrap();
        assert_eq!(
            wb.weights(),
            vec![rat_int(1), rat_int(1), rat_int(3), rat_int(3), rat_int(3)]
        );
    }

    #[test]
    fn unknown_name_rejected() {
        assert_eq!(
            catalog_get("nope").unwrap_err(),
            CatalogError::UnknownName("nope".into())
        );
        assert!(matches!(
            catalog_get("abelian:0"),
            Err(CatalogError::BadParameter(..))
        ));
    }

    #[test]
    fn nested_products() {
        let e = catalog_get("product(product(h1,abelian:1),sl2)").unwrap();
        assert_eq!(e.algebra.dim(), 7);
    }

    #[test]
    fn heisenberg_n_structure() {
        let h2 = heisenberg_n(2);
        assert_eq!(h2.dim(), 5);
        assert_eq!(h2.guivarch_growth_degree().unwrap(), 6);
    }
}
