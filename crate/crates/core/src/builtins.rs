//! Built-in algebra definitions, loadable without a file.
//!
//! Three families ship with the tool: the worked five-dimensional example
//! (`example5`), the three-dimensional Heisenberg algebra (`heisenberg3`,
//! including a deliberately non-lagrangian configuration as a negative
//! control), and abelian algebras of any small dimension (`abelian:N`).

use crate::dsl::{parse_algebra, AlgebraFile};

/// The worked example: `[U,V] = E`, `[X,U] = V`, `[X,V] = Z`, with
/// `h = span(X, E)`, `λ = E*`, and a generic sample functional.
pub const EXAMPLE5_SRC: &str = "\
algebra example5
basis X U V E Z
bracket [U,V] = E
bracket [X,U] = V
bracket [X,V] = Z
subalgebra h = X; E
character lambda on h: E=1
form f0: U=3, V=5, E=1, Z=2
";

/// The Heisenberg algebra with the calibration configuration
/// (`h = span(Y)`, `λ = Y*`) and a non-lagrangian negative control
/// (`hz = span(Z)`, `μ = Z*`: every f in μ + hz^⊥ has dim h·f = 0 while
/// dim g·f = 2).
pub const HEISENBERG3_SRC: &str = "\
algebra heisenberg3
basis X Y Z
bracket [X,Y] = Z
subalgebra h = Y
character lambda on h: Y=1
subalgebra hz = Z
character mu on hz: Z=1
form f0: Y=1, Z=2
";

pub const MAX_ABELIAN_DIM: usize = 64;

/// Source text for the abelian algebra of dimension `n ≥ 1` with
/// `h = span(e1)` and `λ = e1*` (the lagrangian condition holds trivially).
pub fn abelian_source(n: usize) -> String {
    let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    format!(
        "algebra abelian{n}\nbasis {}\nsubalgebra h = e1\ncharacter lambda on h: e1=1\nform f0: e1=1\n",
        names.join(" ")
    )
}

/// Parses a `--builtin` spec: `example5`, `heisenberg3`, or `abelian:N`.
pub fn load_builtin(spec: &str) -> Result<AlgebraFile, String> {
    let source = match spec {
        "example5" => EXAMPLE5_SRC.to_string(),
        "heisenberg3" => HEISENBERG3_SRC.to_string(),
        _ => match spec.strip_prefix("abelian:") {
            Some(size) => {
                let n: usize = size
                    .parse()
                    .map_err(|_| format!("invalid abelian dimension `{size}`"))?;
                if n == 0 || n > MAX_ABELIAN_DIM {
                    return Err(format!(
                        "abelian dimension must be between 1 and {MAX_ABELIAN_DIM}"
                    ));
                }
                abelian_source(n)
            }
            None => {
                return Err(format!(
                    "unknown builtin `{spec}` (available: example5, heisenberg3, abelian:N)"
                ))
            }
        },
    };
    parse_algebra(&source).map_err(|e| format!("builtin `{spec}` failed to parse: {e}"))
}

/// The builtin configurations exercised by the structural test suites:
/// every `(subalgebra, character)` pair of every shipped file.
pub fn all_builtin_files() -> Vec<AlgebraFile> {
    vec![
        load_builtin("example5").expect("builtin parses"),
        load_builtin("heisenberg3").expect("builtin parses"),
        load_builtin("abelian:3").expect("builtin parses"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::example5_algebra;

    #[test]
    fn example5_matches_the_library_fixture() {
        let file = load_builtin("example5").unwrap();
        assert_eq!(file.algebra, example5_algebra());
        assert_eq!(file.subalgebra("h").unwrap().dim(), 2);
        assert!(file.character("lambda").is_some());
        assert!(file.form("f0").is_some());
        let report = file.algebra.validate();
        assert!(report.antisymmetric && report.jacobi && report.nilpotent);
        assert_eq!(report.nilpotency_class, Some(3));
    }

    #[test]
    fn heisenberg_carries_both_configurations() {
        let file = load_builtin("heisenberg3").unwrap();
        assert_eq!(file.algebra.dim(), 3);
        assert_eq!(file.characters.len(), 2);
        assert_eq!(file.algebra.validate().nilpotency_class, Some(2));
    }

    #[test]
    fn abelian_sizes_parse_and_validate() {
        let file = load_builtin("abelian:4").unwrap();
        assert_eq!(file.algebra.dim(), 4);
        assert_eq!(file.algebra.names()[3], "e4");
        assert_eq!(file.algebra.validate().nilpotency_class, Some(1));
        assert_eq!(load_builtin("abelian:1").unwrap().algebra.dim(), 1);
    }

    #[test]
    fn bad_builtin_specs_are_rejected() {
        assert!(load_builtin("abelian:0").is_err());
        assert!(load_builtin("abelian:banana").is_err());
        assert!(load_builtin("abelian:1000").is_err());
        let err = load_builtin("nope").unwrap_err();
        assert!(err.contains("available"));
    }

    #[test]
    fn all_files_parse_and_pass_validation() {
        for file in all_builtin_files() {
            let report = file.algebra.validate();
            assert!(report.antisymmetric && report.jacobi && report.nilpotent);
        }
    }
}
