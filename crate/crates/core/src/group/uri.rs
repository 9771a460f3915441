//! `builtin:` URIs for the group families, e.g. `builtin:cyclic:12`,
//! `builtin:abelian:2,2,4`, `builtin:product:cyclic:2|dihedral:4`.

use crate::error::{Error, Result};

use super::{builtin, BuiltinFamily, FiniteGroup, DEFAULT_ORDER_CAP};

/// Builds a group from a `builtin:` URI.
pub fn from_uri(uri: &str) -> Result<FiniteGroup> {
    from_uri_capped(uri, DEFAULT_ORDER_CAP)
}

pub fn from_uri_capped(uri: &str, cap: usize) -> Result<FiniteGroup> {
    let spec = uri.strip_prefix("builtin:").ok_or_else(|| Error::UnknownFamily {
        family: uri.to_string(),
    })?;
    let family = parse_family(spec)?;
    builtin::build(family, cap)
}

fn parse_family(spec: &str) -> Result<BuiltinFamily> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    let unknown = || Error::UnknownFamily { family: spec.to_string() };
    let bad_param = |family: &str, detail: String| Error::ParamOutOfRange {
        family: family.to_string(),
        detail,
    };
    match head {
        "cyclic" => Ok(BuiltinFamily::Cyclic(parse_usize("cyclic", rest)?)),
        "dihedral" => Ok(BuiltinFamily::Dihedral(parse_usize("dihedral", rest)?)),
        "symmetric" => Ok(BuiltinFamily::Symmetric(parse_usize("symmetric", rest)?)),
        "abelian" => {
            let rest = rest.ok_or_else(|| bad_param("abelian", "missing factors".into()))?;
            let factors = rest
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| bad_param("abelian", format!("bad factor `{p}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(BuiltinFamily::Abelian(factors))
        }
        "product" => {
            let rest = rest.ok_or_else(|| bad_param("product", "missing operands".into()))?;
            let (a, b) = rest
                .split_once('|')
                .ok_or_else(|| bad_param("product", "expected `<a>|<b>`".into()))?;
            Ok(BuiltinFamily::DirectProduct(
                Box::new(parse_family(a)?),
                Box::new(parse_family(b)?),
            ))
        }
        "paper32" => Ok(BuiltinFamily::Paper32),
        _ => Err(unknown()),
    }
}

fn parse_usize(family: &str, rest: Option<&str>) -> Result<usize> {
    let rest = rest.ok_or_else(|| Error::ParamOutOfRange {
        family: family.to_string(),
        detail: "missing parameter".into(),
    })?;
    rest.trim().parse().map_err(|_| Error::ParamOutOfRange {
        family: family.to_string(),
        detail: format!("bad parameter `{rest}`"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtin_uris() {
        assert_eq!(from_uri("builtin:cyclic:12").unwrap().order(), 12);
        assert_eq!(from_uri("builtin:paper32").unwrap().order(), 32);
        assert_eq!(from_uri("builtin:abelian:2,2,4").unwrap().order(), 16);
        assert_eq!(
            from_uri("builtin:product:cyclic:3|symmetric:3").unwrap().order(),
            18
        );
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(matches!(from_uri("cyclic:3"), Err(Error::UnknownFamily { .. })));
        assert!(matches!(
            from_uri("builtin:quaternion:8"),
            Err(Error::UnknownFamily { .. })
        ));
        assert!(matches!(
            from_uri("builtin:cyclic:x"),
            Err(Error::ParamOutOfRange { .. })
        ));
    }
}
