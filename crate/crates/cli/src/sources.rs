//! Loading groups and endomorphisms from URIs, files, and inline specs.
//!
//! Group files are JSON:
//! `{"name": str, "kind": "cayley"|"permutation", "cayley": [[int]]?,
//!   "degree": int?, "generators": [[[int]]]?}` with generators given as
//! cycle lists on 1-based points.
//!
//! Morphism specs are `id`, `trivial`, `inner:<element>`,
//! `gens:<img,img,...>` (images of the group's default generating set), or
//! a path to a JSON file `{"group": str?, "image": [int]}` /
//! `{"group": str?, "generator_images": [int]}`.

use std::path::Path;

use serde::Deserialize;

use reidemeister::group::{self, cycles_to_permutation};
use reidemeister::morphism;
use reidemeister::{Endomorphism, FiniteGroup};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    name: String,
    kind: String,
    #[serde(default)]
    cayley: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    degree: Option<usize>,
    #[serde(default)]
    generators: Option<Vec<Vec<Vec<usize>>>>,
}

/// Loads a group from a `builtin:` URI or a JSON file path.
pub fn load_group(source: &str, cap: usize) -> Result<FiniteGroup, CliError> {
    if source.starts_with("builtin:") {
        return group::from_uri_capped(source, cap).map_err(|e| CliError::load(source, e));
    }
    load_group_file(Path::new(source), cap)
}

pub fn load_group_file(path: &Path, cap: usize) -> Result<FiniteGroup, CliError> {
    let desc = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::load(&desc, e))?;
    let file: GroupFile =
        serde_json::from_str(&text).map_err(|e| CliError::load(&desc, e))?;
    match file.kind.as_str() {
        "cayley" => {
            let table = file.cayley.ok_or_else(|| {
                CliError::load(&desc, "kind \"cayley\" requires field `cayley`")
            })?;
            FiniteGroup::from_cayley_capped(&table, file.name, cap)
                .map_err(|e| CliError::load(&desc, format!("field `cayley`: {e}")))
        }
        "permutation" => {
            let degree = file.degree.ok_or_else(|| {
                CliError::load(&desc, "kind \"permutation\" requires field `degree`")
            })?;
            let generators = file.generators.ok_or_else(|| {
                CliError::load(&desc, "kind \"permutation\" requires field `generators`")
            })?;
            let perms = generators
                .iter()
                .map(|cycles| cycles_to_permutation(degree, cycles))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::load(&desc, format!("field `generators`: {e}")))?;
            FiniteGroup::from_permutations_capped(degree, &perms, file.name, cap)
                .map_err(|e| CliError::load(&desc, format!("field `generators`: {e}")))
        }
        other => Err(CliError::load(
            &desc,
            format!("field `kind`: expected \"cayley\" or \"permutation\", got \"{other}\""),
        )),
    }
}

#[derive(Debug, Deserialize)]
struct MorphismFile {
    #[serde(default)]
    group: Option<String>,
    #[serde(default)]
    image: Option<Vec<usize>>,
    /// Generator index (as a JSON key) -> image element.
    #[serde(default)]
    generator_images: Option<std::collections::BTreeMap<String, usize>>,
}

/// Resolves a morphism spec against a group.
pub fn load_morphism(
    group: &FiniteGroup,
    group_source: &str,
    spec: &str,
) -> Result<Endomorphism, CliError> {
    if spec == "id" {
        return Ok(Endomorphism::identity(group));
    }
    if spec == "trivial" {
        return Ok(Endomorphism::trivial(group));
    }
    if let Some(h) = spec.strip_prefix("inner:") {
        let h: usize = h
            .parse()
            .map_err(|_| CliError::load(spec, "inner:<element> needs an element index"))?;
        if h >= group.order() {
            return Err(CliError::load(spec, format!("element {h} out of range")));
        }
        return Ok(Endomorphism::inner(group, h));
    }
    if let Some(images) = spec.strip_prefix("gens:") {
        let images: Vec<usize> = images
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| CliError::load(spec, "bad image index")))
            .collect::<Result<_, _>>()?;
        let gens = group.generating_set().to_vec();
        if images.len() != gens.len() {
            return Err(CliError::load(
                spec,
                format!("expected {} images for generators {:?}", gens.len(), gens),
            ));
        }
        return morphism::from_generator_images(group, &gens, &images)
            .map_err(|e| CliError::load(spec, e));
    }
    // Otherwise a file.
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::load(spec, e))?;
    let file: MorphismFile =
        serde_json::from_str(&text).map_err(|e| CliError::load(spec, e))?;
    if let Some(declared) = &file.group {
        if declared != group_source && declared != group.name() {
            return Err(CliError::load(
                spec,
                format!("file targets group `{declared}`, not `{group_source}`"),
            ));
        }
    }
    match (file.image, file.generator_images) {
        (Some(image), _) => {
            Endomorphism::new(group.clone(), image).map_err(|e| CliError::load(spec, e))
        }
        (None, Some(by_index)) => {
            let gens = group.generating_set().to_vec();
            let images = (0..gens.len())
                .map(|i| {
                    by_index.get(&i.to_string()).copied().ok_or_else(|| {
                        CliError::load(spec, format!("missing image for generator {i}"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            morphism::from_generator_images(group, &gens, &images)
                .map_err(|e| CliError::load(spec, e))
        }
        (None, None) => Err(CliError::load(
            spec,
            "morphism file needs `image` or `generator_images`",
        )),
    }
}

/// A reproducible inline spec for an endomorphism: `id`, `trivial`, or its
/// generator images.
pub fn describe_morphism(endo: &Endomorphism) -> String {
    if endo.is_identity() {
        return "id".into();
    }
    let group = endo.group();
    if (0..group.order()).all(|g| endo.apply(g) == 0) {
        return "trivial".into();
    }
    let images: Vec<String> = group
        .generating_set()
        .iter()
        .map(|&g| endo.apply(g).to_string())
        .collect();
    format!("gens:{}", images.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_specs() {
        let g = group::from_uri("builtin:paper32").unwrap();
        assert!(load_morphism(&g, "builtin:paper32", "id").unwrap().is_identity());
        let tau = load_morphism(&g, "builtin:paper32", "trivial").unwrap();
        assert_eq!(tau.apply(5), 0);
        let psi = load_morphism(&g, "builtin:paper32", "gens:1,14,16").unwrap();
        assert!(psi.is_class_preserving());
        assert_eq!(describe_morphism(&psi), "gens:1,14,16");
        let inn = load_morphism(&g, "builtin:paper32", "inner:3").unwrap();
        assert!(inn.is_inner());
    }

    #[test]
    fn spec_roundtrip_through_describe() {
        let g = group::from_uri("builtin:symmetric:4").unwrap();
        let endos: Vec<_> = morphism::endomorphisms(&g).collect();
        for endo in &endos {
            let spec = describe_morphism(endo);
            let back = load_morphism(&g, "builtin:symmetric:4", &spec).unwrap();
            assert_eq!(&back, endo);
        }
    }
}
