//! Opt-in checking of every Gröbner basis the engine produces.
//!
//! Auditing is scoped to the calling thread: [`audited`] switches it on,
//! runs the closure, and reports how many bases were completed and how many
//! failed the Buchberger criterion.

use std::cell::RefCell;

use super::engine::Engine;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AuditLog {
    pub checked: usize,
    pub failures: usize,
}

thread_local! {
    static ACTIVE: RefCell<Option<AuditLog>> = const { RefCell::new(None) };
}

/// Runs `f` with auditing on for this thread. Nested calls share the outer
/// log.
pub fn audited<T>(f: impl FnOnce() -> T) -> (T, AuditLog) {
    let outer = ACTIVE.with(|a| a.borrow_mut().replace(AuditLog::default()));
    let out = f();
    let log = ACTIVE.with(|a| {
        let mut a = a.borrow_mut();
        let log = a.take().unwrap_or_default();
        *a = outer.map(|o| AuditLog { checked: o.checked + log.checked, failures: o.failures + log.failures });
        log
    });
    (out, log)
}

pub(crate) fn record(eng: &Engine) {
    if ACTIVE.with(|a| a.borrow().is_none()) {
        return;
    }
    let ok = eng.satisfies_criterion();
    ACTIVE.with(|a| {
        if let Some(log) = a.borrow_mut().as_mut() {
            log.checked += 1;
            log.failures += usize::from(!ok);
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{PolyMatrix, QuotientRing, Submodule};
    use crate::monomial::MonomialOrder;

    #[test]
    fn counts_only_inside_scope() {
        let r = QuotientRing::from_strings(&["x", "y"], MonomialOrder::DegRevLex, &["x^2+y^2"]).unwrap();
        let m = PolyMatrix::parse(&r, "[[x, y], [y, -x]]").unwrap();
        let build = || Submodule::from_columns(&m).groebner_basis().len();
        let (n, log) = audited(|| {
            let (inner, log) = audited(build);
            assert!(log.checked > 0);
            inner
        });
        assert!(n > 0);
        assert!(log.checked > 0 && log.failures == 0);
        let (_, quiet) = audited(|| ());
        assert_eq!(quiet, AuditLog::default());
        build();
        assert!(ACTIVE.with(|a| a.borrow().is_none()));
    }
}
