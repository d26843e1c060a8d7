use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

/// An interned polynomial variable.
///
/// Variables are process-global symbols identified by name. The conformal
/// variables (`λ`, `∂`, `μ`, slot variables `∂1..∂3`) are pre-registered so
/// they have stable ids and sort first in every monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

struct Registry {
    names: Vec<&'static str>,
    index: HashMap<&'static str, u32>,
}

static REGISTRY: LazyLock<RwLock<Registry>> = LazyLock::new(|| {
    let mut reg = Registry {
        names: Vec::new(),
        index: HashMap::new(),
    };
    for name in ["λ", "∂", "μ", "∂1", "∂2", "∂3"] {
        let id = reg.names.len() as u32;
        reg.names.push(name);
        reg.index.insert(name, id);
    }
    RwLock::new(reg)
});

/// ASCII spellings accepted on input.
fn canonical(name: &str) -> &str {
    match name {
        "lambda" | "l" => "λ",
        "d" | "partial" => "∂",
        "mu" => "μ",
        "d1" => "∂1",
        "d2" => "∂2",
        "d3" => "∂3",
        "alpha" => "α",
        "beta" => "β",
        "gamma" => "γ",
        other => other,
    }
}

impl Var {
    pub const LAMBDA: Var = Var(0);
    pub const D: Var = Var(1);
    pub const MU: Var = Var(2);
    pub const D1: Var = Var(3);
    pub const D2: Var = Var(4);
    pub const D3: Var = Var(5);

    /// Looks up or registers a variable by name.
    pub fn named(name: &str) -> Var {
        let name = canonical(name);
        if let Some(&id) = REGISTRY.read().expect("var registry").index.get(name) {
            return Var(id);
        }
        let mut reg = REGISTRY.write().expect("var registry");
        if let Some(&id) = reg.index.get(name) {
            return Var(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = reg.names.len() as u32;
        reg.names.push(leaked);
        reg.index.insert(leaked, id);
        Var(id)
    }

    pub fn name(self) -> &'static str {
        REGISTRY.read().expect("var registry").names[self.0 as usize]
    }

    /// The slot variable `∂_n` for tensor slot `n` (0-based).
    pub fn slot(n: usize) -> Var {
        match n {
            0 => Var::D1,
            1 => Var::D2,
            2 => Var::D3,
            n => Var::named(&format!("∂{}", n + 1)),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predefined_ids_are_stable() {
        assert_eq!(Var::named("λ"), Var::LAMBDA);
        assert_eq!(Var::named("lambda"), Var::LAMBDA);
        assert_eq!(Var::named("d"), Var::D);
        assert_eq!(Var::named("d3"), Var::D3);
        assert_eq!(Var::slot(1), Var::D2);
    }

    #[test]
    fn interning_is_idempotent() {
        let a = Var::named("zz_test_param");
        let b = Var::named("zz_test_param");
        assert_eq!(a, b);
        assert_eq!(a.name(), "zz_test_param");
        assert_eq!(Var::named("alpha").name(), "α");
    }
}
