//! Benchmark fixtures: the modules of the verdict table plus one larger
//! threefold factorization.

use connobs_core::fixtures::builtin_catalog;
use connobs_core::modules::PresentedModule;

const ROWS: [(&str, &str); 5] = [
    ("monomial-curve-345", "p"),
    ("cubic-cone", "M3"),
    ("cubic-cone", "M4"),
    ("threefold-E6", "m"),
    ("threefold-D4", "psi1"),
];

/// `(entry/module, module)` pairs in table order.
pub fn table_modules() -> Vec<(String, PresentedModule)> {
    let cat = builtin_catalog().expect("builtin catalog");
    ROWS.iter()
        .map(|&(id, name)| {
            let e = cat.iter().find(|e| e.id == id).expect("catalog entry");
            let m = e.modules.iter().find(|m| m.name == name).expect("catalog module");
            (format!("{id}/{name}"), m.module.clone())
        })
        .collect()
}
