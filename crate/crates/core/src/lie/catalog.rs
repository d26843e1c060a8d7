//! Rota–Baxter operators on sl₂ up to conjugation.

use std::collections::BTreeMap;

use super::rb::LinearMap;
use crate::error::Error;
use crate::exact::{parse_vector, Poly, Var};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub weight: Poly,
    pub map: LinearMap,
}

fn sl2_names() -> Vec<String> {
    ["e", "f", "h"].map(String::from).to_vec()
}

/// An operator on sl₂ from the images of (e, f, h), with named scalars
/// substituted afterwards.
pub(crate) fn sl2_map_with(images: [&str; 3], params: &[(&str, Poly)]) -> LinearMap {
    let bind: BTreeMap<Var, Poly> = params
        .iter()
        .map(|(n, p)| (Var::named(n), p.clone()))
        .collect();
    let names = sl2_names();
    let cols = images
        .iter()
        .map(|src| {
            parse_vector(src, &names)
                .unwrap_or_else(|e| panic!("bad built-in image `{src}`: {e}"))
                .iter()
                .map(|p| p.substitute(&bind))
                .collect()
        })
        .collect();
    LinearMap::from_images(cols).expect("3x3")
}

/// An operator on sl₂ from the images of (e, f, h).
pub fn sl2_map(images: [&str; 3]) -> LinearMap {
    sl2_map_with(images, &[])
}

fn entry(name: &str, weight: i64, images: [&str; 3]) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        weight: Poly::int(weight),
        map: sl2_map(images),
    }
}

/// Weight 0: five families (a)–(e). Weight 1: families (a)–(c) and the two
/// trivial operators. The parameter is the variable `t`.
pub fn catalog_sl2(weight: i64) -> Result<Vec<CatalogEntry>, Error> {
    match weight {
        0 => Ok(vec![
            entry("a", 0, ["0", "0", "0"]),
            entry("b", 0, ["0", "t*e - h", "2e"]),
            entry("c", 0, ["0", "0", "h"]),
            entry("d", 0, ["0", "h", "0"]),
            entry("e", 0, ["0", "e", "0"]),
        ]),
        1 => Ok(vec![
            entry("a", 1, ["-e", "0", "0"]),
            entry("b", 1, ["-(e + h)", "0", "0"]),
            entry("c", 1, ["-e", "0", "t*h"]),
            entry("zero", 1, ["0", "0", "0"]),
            entry("minus-id", 1, ["-e", "-f", "-h"]),
        ]),
        k => Err(Error::Catalog(format!(
            "sl2 catalogs exist for weights 0 and 1, not {k}"
        ))),
    }
}
