//! Theory signatures, user declarations and sort checking.

mod builtins;
mod sortcheck;

use std::collections::{BTreeMap, BTreeSet};

pub use builtins::{builtin_names, is_builtin_name};
pub use sortcheck::{sort_check, Scope};

use crate::diag::{err, Code, DResult};
use crate::syntax::{Constructor, DatatypeDecl, Identifier, Index, Sort, SortedVar, Term};

/// Which background theories contribute symbols.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Theories {
    pub ints: bool,
    pub reals: bool,
    pub bv: bool,
    pub strings: bool,
    pub arrays: bool,
    pub uf: bool,
    pub dt: bool,
}

impl Theories {
    /// Int is a sort whenever integers or strings are present.
    pub fn has_int_sort(&self) -> bool {
        self.ints || self.strings
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SortDef {
    Uninterpreted(u64),
    Datatype,
    Alias(Vec<String>, Sort),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatatypeDef {
    pub name: String,
    pub constructors: Vec<Constructor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymKind {
    /// Universal variable from declare-var.
    Var,
    SynthFun,
    Macro,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserSym {
    pub kind: SymKind,
    pub params: Vec<SortedVar>,
    pub ret: Sort,
    pub body: Option<Term>,
}

impl UserSym {
    /// The sort of the symbol used as a bare identifier.
    pub fn value_sort(&self) -> Sort {
        if self.params.is_empty() {
            self.ret.clone()
        } else {
            Sort::arrow(self.params.iter().map(|p| p.sort.clone()).collect(), self.ret.clone())
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Signature {
    pub theories: Theories,
    pub strict: bool,
    pub permissive: bool,
    pub sorts: BTreeMap<String, SortDef>,
    pub symbols: BTreeMap<String, UserSym>,
    pub datatypes: BTreeMap<String, DatatypeDef>,
    /// constructor name -> (datatype, constructor index)
    pub ctors: BTreeMap<String, (String, usize)>,
    /// selector name -> (datatype, constructor index, field index)
    pub sels: BTreeMap<String, (String, usize, usize)>,
    /// Weight names (keyword without the colon) usable in weight symbols.
    pub weight_names: BTreeSet<String>,
    /// Order in which macros were installed.
    pub macro_order: Vec<String>,
}

impl Signature {
    pub fn new(theories: Theories) -> Signature {
        Signature { theories, ..Signature::default() }
    }

    /// Whether `name` is already taken by a function-level symbol.
    pub fn is_bound(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
            || self.ctors.contains_key(name)
            || self.sels.contains_key(name)
            || is_builtin_name(name, &self.theories)
    }

    pub fn is_sort_bound(&self, name: &str) -> bool {
        self.sorts.contains_key(name) || builtins::is_builtin_sort_name(name, &self.theories)
    }

    pub fn synth_funs(&self) -> impl Iterator<Item = (&String, &UserSym)> {
        self.symbols.iter().filter(|(_, s)| s.kind == SymKind::SynthFun)
    }

    pub fn is_synth_fun(&self, name: &str) -> bool {
        self.symbols.get(name).is_some_and(|s| s.kind == SymKind::SynthFun)
    }

    pub fn is_macro(&self, name: &str) -> bool {
        self.symbols.get(name).is_some_and(|s| s.kind == SymKind::Macro)
    }

    pub fn add_symbol(&mut self, name: &str, sym: UserSym) -> DResult<()> {
        if self.is_bound(name) {
            return err(Code::DupSymbol, format!("symbol `{name}` is already declared"));
        }
        if sym.kind == SymKind::Macro {
            self.macro_order.push(name.to_string());
        }
        self.symbols.insert(name.to_string(), sym);
        Ok(())
    }

    /// Expand aliases and check that the sort exists.
    pub fn resolve_sort(&self, s: &Sort) -> DResult<Sort> {
        let th = &self.theories;
        let args = s.args.iter().map(|a| self.resolve_sort(a)).collect::<DResult<Vec<_>>>()?;
        let name = s.id.symbol.as_str();
        if !s.id.indices.is_empty() {
            if name == "BitVec" && th.bv && args.is_empty() {
                if let [Index::Num(w)] = s.id.indices.as_slice() {
                    if *w > 0 {
                        return Ok(Sort::bitvec(*w));
                    }
                }
            }
            return err(Code::Sort, format!("unknown sort `{s}`"));
        }
        let ok = match (name, args.len()) {
            ("Bool", 0) => true,
            ("Int", 0) => th.has_int_sort(),
            ("Real", 0) => th.reals,
            ("String" | "RegLan", 0) => th.strings,
            ("Array", 2) => th.arrays,
            ("->", n) => n >= 2,
            _ => false,
        };
        if ok {
            return Ok(Sort { id: s.id.clone(), args });
        }
        match self.sorts.get(name) {
            Some(SortDef::Uninterpreted(n)) if *n as usize == args.len() => Ok(Sort { id: s.id.clone(), args }),
            Some(SortDef::Datatype) if args.is_empty() => Ok(s.clone()),
            Some(SortDef::Alias(params, body)) if params.len() == args.len() => {
                let mut out = body.clone();
                substitute_sort_params(&mut out, params, &args);
                self.resolve_sort(&out)
            }
            Some(_) => err(Code::Sort, format!("sort `{name}` applied to the wrong number of arguments")),
            None => err(Code::Sort, format!("unknown sort `{s}`")),
        }
    }

    /// Add the sorts, constructors, selectors and discriminators of a block
    /// of (possibly mutually recursive) datatypes.
    pub fn declare_datatypes(&mut self, decls: &[(String, u64)], bodies: &[DatatypeDecl]) -> DResult<()> {
        if decls.len() != bodies.len() {
            return err(Code::Arity, "datatype predeclaration and definitions differ in length");
        }
        let mut seen = BTreeSet::new();
        for (name, arity) in decls {
            if *arity != 0 {
                return err(Code::Datatype, format!("parametric datatype `{name}` is not supported"));
            }
            if self.is_sort_bound(name) || !seen.insert(name.clone()) {
                return err(Code::DupSymbol, format!("sort `{name}` is already declared"));
            }
        }
        let mut trial = self.clone();
        for (name, _) in decls {
            trial.sorts.insert(name.clone(), SortDef::Datatype);
        }
        let mut new_names = BTreeSet::new();
        for ((dt, _), body) in decls.iter().zip(bodies) {
            let mut ctors = Vec::new();
            for (ci, c) in body.constructors.iter().enumerate() {
                if trial.is_bound(&c.name) || !new_names.insert(c.name.clone()) {
                    return err(Code::DupSymbol, format!("constructor `{}` is already declared", c.name));
                }
                let mut sels = Vec::new();
                for (si, s) in c.selectors.iter().enumerate() {
                    if trial.is_bound(&s.name) || !new_names.insert(s.name.clone()) {
                        return err(Code::DupSymbol, format!("selector `{}` is already declared", s.name));
                    }
                    let sort = trial.resolve_sort(&s.sort)?;
                    trial.sels.insert(s.name.clone(), (dt.clone(), ci, si));
                    sels.push(SortedVar::new(s.name.clone(), sort));
                }
                trial.ctors.insert(c.name.clone(), (dt.clone(), ci));
                ctors.push(Constructor { name: c.name.clone(), selectors: sels });
            }
            trial.datatypes.insert(dt.clone(), DatatypeDef { name: dt.clone(), constructors: ctors });
        }
        for (name, _) in decls {
            if !trial.datatype_inhabited(name, &mut BTreeSet::new()) {
                return err(Code::Datatype, format!("datatype `{name}` has no finite values"));
            }
        }
        *self = trial;
        Ok(())
    }

    fn datatype_inhabited(&self, dt: &str, visiting: &mut BTreeSet<String>) -> bool {
        if !visiting.insert(dt.to_string()) {
            return false;
        }
        let def = &self.datatypes[dt];
        let ok = def.constructors.iter().any(|c| {
            c.selectors.iter().all(|s| match s.sort.as_simple_name() {
                Some(n) if self.datatypes.contains_key(n) => self.datatype_inhabited(n, &mut visiting.clone()),
                _ => true,
            })
        });
        visiting.remove(dt);
        ok
    }

    pub fn datatype_of_sort(&self, s: &Sort) -> Option<&DatatypeDef> {
        s.as_simple_name().and_then(|n| self.datatypes.get(n))
    }

    /// Constructor definition by name.
    pub fn constructor(&self, name: &str) -> Option<(&DatatypeDef, &Constructor)> {
        let (dt, ci) = self.ctors.get(name)?;
        let def = &self.datatypes[dt];
        Some((def, &def.constructors[*ci]))
    }

    /// Whether an identifier is a weight symbol `(_ w f)`.
    pub fn weight_symbol<'a>(&self, id: &'a Identifier) -> Option<(&'a str, &'a str)> {
        match id.indices.as_slice() {
            [Index::Sym(f)] if self.weight_names.contains(&id.symbol) && self.is_synth_fun(f) => {
                Some((id.symbol.as_str(), f.as_str()))
            }
            _ => None,
        }
    }
}

impl Sort {
    pub fn as_simple_name(&self) -> Option<&str> {
        if self.args.is_empty() {
            self.id.as_simple()
        } else {
            None
        }
    }
}

fn substitute_sort_params(s: &mut Sort, params: &[String], args: &[Sort]) {
    if s.args.is_empty() && s.id.is_simple() {
        if let Some(i) = params.iter().position(|p| *p == s.id.symbol) {
            *s = args[i].clone();
            return;
        }
    }
    for a in &mut s.args {
        substitute_sort_params(a, params, args);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_command, Command};

    fn list_sig() -> Signature {
        let mut sig = Signature::new(Theories { ints: true, dt: true, ..Theories::default() });
        let c = parse_command(
            &crate::reader::read_one("(declare-datatype List ((nil) (cons (head Int) (tail List))))").unwrap(),
            &crate::Options::default(),
        )
        .unwrap();
        let Command::DeclareDatatype(n, d) = c else { panic!() };
        sig.declare_datatypes(&[(n, 0)], &[d]).unwrap();
        sig
    }

    #[test]
    fn datatype_symbols() {
        let sig = list_sig();
        assert_eq!(sig.ctors["cons"], ("List".to_string(), 1));
        assert_eq!(sig.sels["tail"], ("List".to_string(), 1, 1));
        let (_, c) = sig.constructor("cons").unwrap();
        assert_eq!(c.selectors[1].sort, Sort::simple("List"));
    }

    #[test]
    fn datatype_redeclaration_rejected() {
        let mut sig = list_sig();
        let d = DatatypeDecl { constructors: vec![Constructor { name: "nil".into(), selectors: vec![] }] };
        assert_eq!(sig.declare_datatypes(&[("Other".into(), 0)], &[d]).unwrap_err().code, Code::DupSymbol);
    }

    #[test]
    fn parametric_rejected() {
        let mut sig = list_sig();
        let d = DatatypeDecl { constructors: vec![Constructor { name: "mk".into(), selectors: vec![] }] };
        assert_eq!(sig.declare_datatypes(&[("P".into(), 1)], &[d]).unwrap_err().code, Code::Datatype);
    }

    #[test]
    fn sort_resolution() {
        let mut sig = Signature::new(Theories { bv: true, ..Theories::default() });
        assert!(sig.resolve_sort(&Sort::bitvec(8)).is_ok());
        assert!(sig.resolve_sort(&Sort::int()).is_err());
        sig.sorts.insert("Byte".into(), SortDef::Alias(vec![], Sort::bitvec(8)));
        assert_eq!(sig.resolve_sort(&Sort::simple("Byte")).unwrap(), Sort::bitvec(8));
    }
}
