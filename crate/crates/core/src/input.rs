//! The text format for one ring and a list of modules over it.
//!
//! ```text
//! ring: vars x, y; order dp; ideal x^2+y^2;
//! module M = [[x, y], [y, -x]];
//! module p = ideal(x, y);
//! module F = free(2);
//! stages aclass, lclass;
//! ```

use std::fmt::Write as _;

use crate::error::{AlgebraError, Result};
use crate::groebner::{module_kernel, PolyMatrix, QuotientRing, Ring};
use crate::modules::PresentedModule;
use crate::monomial::MonomialOrder;
use crate::obstructions::Stages;
use crate::parse::{Cursor, ParseError, PolyParser};
use crate::poly::Polynomial;

/// How a module was declared.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleSource {
    /// Cokernel of the matrix; columns are relations.
    Matrix(PolyMatrix),
    /// The ideal generated by these elements, presented by its syzygies.
    Ideal(Vec<Polynomial>),
    Free(usize),
}

impl ModuleSource {
    pub fn build(&self, ring: &Ring) -> Result<PresentedModule> {
        match self {
            ModuleSource::Matrix(m) => PresentedModule::new(ring, m),
            ModuleSource::Free(r) => PresentedModule::free(ring, *r),
            ModuleSource::Ideal(gens) => ideal_module(ring, gens),
        }
    }
}

/// The ideal `(g_1..g_k)` as a module, presented by the pruned relations
/// among the generators.
pub fn ideal_module(ring: &Ring, gens: &[Polynomial]) -> Result<PresentedModule> {
    if gens.is_empty() {
        return Ok(PresentedModule::zero(ring));
    }
    let row = PolyMatrix::from_rows(ring, vec![gens.to_vec()])?;
    let syz = module_kernel(&row).pruned();
    let pres = if syz.generators().is_empty() {
        PolyMatrix::zeros(ring, gens.len(), 0)
    } else {
        syz.generator_matrix()
    };
    PresentedModule::new(ring, &pres)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleDecl {
    pub name: String,
    pub source: ModuleSource,
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub ring: Ring,
    pub modules: Vec<ModuleDecl>,
    pub stages: Option<Stages>,
    pub output: Option<String>,
}

impl PartialEq for InputDocument {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
            && self.ring.ideal_gens() == other.ring.ideal_gens()
            && self.modules == other.modules
            && self.stages == other.stages
            && self.output == other.output
    }
}

/// Why the local order is refused.
pub const LOCAL_ORDER_MESSAGE: &str = "local order `ds` is not supported: for an isolated singularity the \
module is locally free on the punctured spectrum, so the obstructions over the affine ring, its \
localization and its completion agree; use a global order (dp, lp or wp) instead";

fn parse_order(cur: &mut Cursor<'_>) -> Result<MonomialOrder, ParseError> {
    cur.skip_ws();
    let start = cur.pos();
    let name = cur.ident().ok_or_else(|| cur.error("expected a monomial order", &["dp", "lp", "wp(...)"]))?;
    match name {
        "dp" => Ok(MonomialOrder::DegRevLex),
        "lp" => Ok(MonomialOrder::Lex),
        "wp" => {
            cur.expect('(')?;
            let mut w = Vec::new();
            loop {
                let at = cur.pos();
                let v = cur.unsigned()?;
                let v = u32::try_from(v).map_err(|_| cur.error_at(at, "weight too large", &[]))?;
                w.push(v);
                if cur.eat(')') {
                    break;
                }
                cur.expect(',')?;
            }
            MonomialOrder::weighted(&w).map_err(|e| cur.error_at(start, e.to_string(), &[]))
        }
        "ds" | "Ds" | "ls" | "ws" => Err(cur.error_at(start, LOCAL_ORDER_MESSAGE, &["dp", "lp", "wp(...)"])),
        other => Err(cur.error_at(start, format!("unknown monomial order `{other}`"), &["dp", "lp", "wp(...)"])),
    }
}

fn parse_list<T>(
    cur: &mut Cursor<'_>,
    mut item: impl FnMut(&mut Cursor<'_>) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    let mut out = vec![item(cur)?];
    while cur.eat(',') {
        out.push(item(cur)?);
    }
    Ok(out)
}

fn parse_module_source(cur: &mut Cursor<'_>, ring: &Ring) -> Result<ModuleSource, ParseError> {
    let pp = PolyParser::new(ring.vars(), ring.order().clone());
    if cur.peek() == Some('[') {
        let start = cur.pos();
        let rows = pp.parse_matrix(cur)?;
        if rows.is_empty() {
            return Err(cur.error_at(start, "a presentation needs at least one row", &[]));
        }
        let m = PolyMatrix::from_rows(ring, rows).map_err(|e| cur.error_at(start, e.to_string(), &[]))?;
        return Ok(ModuleSource::Matrix(m));
    }
    if cur.keyword("ideal") {
        cur.expect('(')?;
        let gens = parse_list(cur, |c| pp.parse_expr(c))?;
        cur.expect(')')?;
        return Ok(ModuleSource::Ideal(gens));
    }
    if cur.keyword("free") {
        cur.expect('(')?;
        let at = cur.pos();
        let r = cur.unsigned()?;
        if r == 0 {
            return Err(cur.error_at(at, "free rank must be positive", &[]));
        }
        cur.expect(')')?;
        return Ok(ModuleSource::Free(r as usize));
    }
    Err(cur.error("expected a module", &["`[[...]]`", "ideal(...)", "free(r)"]))
}

/// Parses a document; errors carry line and column.
pub fn parse_input(text: &str) -> Result<InputDocument, ParseError> {
    let mut cur = Cursor::new(text);
    if !cur.keyword("ring") {
        return Err(cur.error("document must start with `ring:`", &["ring"]));
    }
    cur.expect(':')?;
    if !cur.keyword("vars") {
        return Err(cur.error("expected the variable list", &["vars"]));
    }
    let mut vars: Vec<String> = Vec::new();
    for v in parse_list(&mut cur, |c| {
        c.skip_ws();
        let at = c.pos();
        c.ident().map(|s| (at, s.to_string())).ok_or_else(|| c.error("expected a variable name", &["identifier"]))
    })? {
        if vars.contains(&v.1) {
            return Err(cur.error_at(v.0, format!("duplicate variable `{}`", v.1), &[]));
        }
        vars.push(v.1);
    }
    cur.expect(';')?;
    let mut order = MonomialOrder::DegRevLex;
    if cur.keyword("order") {
        order = parse_order(&mut cur)?;
        if let MonomialOrder::WeightedDegRevLex(w) = &order {
            if w.len() != vars.len() {
                return Err(cur.error(format!("{} weights for {} variables", w.len(), vars.len()), &[]));
            }
        }
        cur.expect(';')?;
    }
    let mut ideal = Vec::new();
    if cur.keyword("ideal") {
        let pp = PolyParser::new(&vars, order.clone());
        ideal = parse_list(&mut cur, |c| pp.parse_expr(c))?;
        ideal.retain(|p| !p.is_zero());
        cur.expect(';')?;
    }
    let ring_pos = cur.pos();
    let ring = QuotientRing::new(vars, order, ideal).map_err(|e| cur.error_at(ring_pos, e.to_string(), &[]))?;
    let mut modules: Vec<ModuleDecl> = Vec::new();
    let mut stages = None;
    let mut output = None;
    while !cur.at_end() {
        let at = cur.pos();
        match cur.ident() {
            Some("module") => {
                cur.skip_ws();
                let name_at = cur.pos();
                let name = cur.ident().ok_or_else(|| cur.error("expected a module name", &["identifier"]))?;
                if modules.iter().any(|m| m.name == name) {
                    return Err(cur.error_at(name_at, format!("module `{name}` declared twice"), &[]));
                }
                cur.expect('=')?;
                let source = parse_module_source(&mut cur, &ring)?;
                modules.push(ModuleDecl { name: name.to_string(), source });
            }
            Some("stages") => {
                let names = parse_list(&mut cur, |c| {
                    c.skip_ws();
                    let p = c.pos();
                    let w = c.ident().ok_or_else(|| c.error("expected a stage", &["der", "aclass", "kskernel", "lclass"]))?;
                    w.parse::<crate::obstructions::Stage>()
                        .map_err(|e| c.error_at(p, e.to_string(), &["der", "aclass", "kskernel", "lclass"]))
                })?;
                stages = Some(names.into_iter().fold(Stages::none(), Stages::with));
            }
            Some("output") => {
                if !cur.eat('"') {
                    return Err(cur.error("expected a quoted path", &["`\"`"]));
                }
                let rest = cur.rest();
                let end = rest.find('"').ok_or_else(|| cur.error("unterminated string", &["`\"`"]))?;
                output = Some(rest[..end].to_string());
                cur.set_pos(cur.pos() + end + 1);
            }
            Some(other) => {
                return Err(cur.error_at(at, format!("unknown statement `{other}`"), &["module", "stages", "output"]))
            }
            None => return Err(cur.error("expected a statement", &["module", "stages", "output"])),
        }
        cur.expect(';')?;
    }
    Ok(InputDocument { ring, modules, stages, output })
}

fn matrix_text(ring: &Ring, m: &PolyMatrix) -> String {
    let rows: Vec<String> = m
        .rows_vec()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|p| ring.fmt_poly(p)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

impl InputDocument {
    pub fn new(ring: &Ring) -> Self {
        InputDocument { ring: ring.clone(), modules: Vec::new(), stages: None, output: None }
    }

    pub fn push(&mut self, name: &str, source: ModuleSource) {
        self.modules.push(ModuleDecl { name: name.to_string(), source });
    }

    /// Builds every declared module, in declaration order.
    pub fn build_modules(&self) -> Result<Vec<(String, PresentedModule)>> {
        self.modules
            .iter()
            .map(|d| {
                d.source.build(&self.ring).map(|m| (d.name.clone(), m)).map_err(|e| match e {
                    AlgebraError::Parse(p) => AlgebraError::Parse(p),
                    other => AlgebraError::InvalidParameters(format!("module `{}`: {other}", d.name)),
                })
            })
            .collect()
    }

    /// Renders the document in the input syntax; `parse_input` inverts it.
    pub fn to_text(&self) -> String {
        let r = &self.ring;
        let mut s = String::new();
        let _ = writeln!(s, "ring: vars {}; order {};", r.vars().join(", "), r.order().name());
        if !r.ideal_gens().is_empty() {
            let gens: Vec<String> = r.ideal_gens().iter().map(|p| r.fmt_poly(p)).collect();
            let _ = writeln!(s, "  ideal {};", gens.join(", "));
        }
        for d in &self.modules {
            let body = match &d.source {
                ModuleSource::Matrix(m) => matrix_text(r, m),
                ModuleSource::Ideal(g) => {
                    format!("ideal({})", g.iter().map(|p| r.fmt_poly(p)).collect::<Vec<_>>().join(", "))
                }
                ModuleSource::Free(n) => format!("free({n})"),
            };
            let _ = writeln!(s, "module {} = {};", d.name, body);
        }
        if let Some(st) = &self.stages {
            let names: Vec<&str> = [(st.der, "der"), (st.aclass, "aclass"), (st.kskernel, "kskernel"), (st.lclass, "lclass")]
                .iter()
                .filter(|(on, _)| *on)
                .map(|(_, n)| *n)
                .collect();
            if !names.is_empty() {
                let _ = writeln!(s, "stages {};", names.join(", "));
            }
        }
        if let Some(o) = &self.output {
            let _ = writeln!(s, "output \"{o}\";");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_document() {
        let doc = parse_input("ring: vars x,y; order dp; ideal x^2+y^2; module M = [[x,y],[y,-x]];").unwrap();
        assert_eq!(doc.ring.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(doc.modules.len(), 1);
        let again = parse_input(&doc.to_text()).unwrap();
        assert_eq!(again, doc);
        let mods = doc.build_modules().unwrap();
        assert_eq!(mods[0].1.rank0(), 2);
    }

    #[test]
    fn local_order_rejected() {
        let e = parse_input("ring: vars x,y; order ds; ideal x^2+y^2;").unwrap_err();
        assert!(e.message.contains("punctured spectrum"));
        assert_eq!((e.line, e.column), (1, 23));
    }

    #[test]
    fn undeclared_variable_is_positioned() {
        let e = parse_input("ring: vars x,y;\nmodule M = [[x, w]];").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.column, 17);
    }

    #[test]
    fn other_sources_and_options() {
        let text = "ring: vars x, y, z; order wp(3,4,5); ideal x*z-y^2, x^2*y-z^2, x^3-y*z;\n\
                    module p = ideal(x, y);\nmodule F = free(2);\nstages aclass, lclass;\noutput \"out.json\";";
        let doc = parse_input(text).unwrap();
        assert_eq!(doc.stages, Some(Stages::none().with(crate::obstructions::Stage::AClass).with(crate::obstructions::Stage::LClass)));
        assert_eq!(doc.output.as_deref(), Some("out.json"));
        assert_eq!(parse_input(&doc.to_text()).unwrap(), doc);
        let mods = doc.build_modules().unwrap();
        assert_eq!(mods[0].1.rank0(), 2);
        assert!(mods[1].1.has_free_presentation());
    }

    #[test]
    fn structural_errors() {
        assert!(parse_input("vars x;").is_err());
        assert!(parse_input("ring: vars x, x;").is_err());
        assert!(parse_input("ring: vars x; module M = [[x]]; module M = [[x]];").is_err());
        assert!(parse_input("ring: vars x; module M = free(0);").is_err());
        assert!(parse_input("ring: vars x; module M = [[x], [x, x]];").is_err());
    }
}
