//! Two-phase model construction: per-file parsing, then corpus-wide name resolution.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::annotations;
use super::ast::*;
use super::lexer::{tokenize, Token, TokenKind};
use super::lines::{classify_lines, LineKind};
use super::model::*;
use super::{ModelError, SourceUnit};

pub(crate) struct ParsedFile {
    pub path: String,
    pub package: String,
    pub ast: FileAst,
    pub line_kinds: Vec<LineKind>,
    /// Feature tags per (class index, method index).
    pub tags: BTreeMap<(usize, usize), Vec<String>>,
}

pub(crate) fn parse_file(unit: &SourceUnit) -> Result<ParsedFile, ModelError> {
    let path = unit.path.clone();
    let syntax = |line: usize, expected: String| ModelError::Syntax {
        file: path.clone(),
        line,
        expected,
    };
    let lexed = tokenize(&unit.text).map_err(|e| syntax(e.line, e.expected))?;
    let ast = super::parser::parse_tokens(&lexed.tokens).map_err(|e| syntax(e.line, e.expected))?;
    let line_kinds = classify_lines(&unit.text);
    let by_line = annotations::scan(&lexed.comments).map_err(|line| ModelError::MalformedAnnotation {
        file: path.clone(),
        line,
    })?;
    let mut tags = BTreeMap::new();
    for (ci, class) in ast.classes.iter().enumerate() {
        for (mi, method) in class.methods.iter().enumerate() {
            let found = annotations::attached_to(method.start_line, &line_kinds, &by_line);
            if !found.is_empty() {
                tags.insert((ci, mi), found);
            }
        }
    }
    let package = ast.package.clone().unwrap_or_else(|| DEFAULT_PACKAGE.to_string());
    Ok(ParsedFile {
        path,
        package,
        ast,
        line_kinds,
        tags,
    })
}

/// Parse all files, in path order, in parallel. The first error by path wins.
pub(crate) fn parse_all(files: &[SourceUnit]) -> Result<Vec<ParsedFile>, ModelError> {
    let mut sorted: Vec<&SourceUnit> = files.iter().collect();
    sorted.sort_by(|a, b| a.path.cmp(&b.path));
    sorted.into_par_iter().map(parse_file).collect::<Vec<_>>().into_iter().collect()
}

struct ClassInfo<'a> {
    file: &'a ParsedFile,
    ast: &'a ClassAst,
    class_index: usize,
    supertype: Option<ClassId>,
}

struct Symbols<'a> {
    classes: BTreeMap<ClassId, ClassInfo<'a>>,
    by_simple: HashMap<&'a str, Vec<ClassId>>,
    packages: BTreeSet<&'a str>,
    subclasses: HashMap<ClassId, Vec<ClassId>>,
}

impl<'a> Symbols<'a> {
    fn resolve(&self, file: &ParsedFile, name: &str) -> Option<ClassId> {
        if let Some((pkg, simple)) = name.rsplit_once('.') {
            let id = ClassId::new(pkg, simple);
            return self.classes.contains_key(&id).then_some(id);
        }
        let local = ClassId::new(file.package.as_str(), name);
        if self.classes.contains_key(&local) {
            return Some(local);
        }
        for import in file.ast.imports.iter().filter(|i| !i.wildcard) {
            if let Some((pkg, simple)) = import.path.rsplit_once('.') {
                if simple == name {
                    let id = ClassId::new(pkg, simple);
                    if self.classes.contains_key(&id) {
                        return Some(id);
                    }
                    if !self.packages.contains(pkg) {
                        return None;
                    }
                }
            }
        }
        for import in file.ast.imports.iter().filter(|i| i.wildcard) {
            let id = ClassId::new(import.path.as_str(), name);
            if self.classes.contains_key(&id) {
                return Some(id);
            }
        }
        match self.by_simple.get(name).map(Vec::as_slice) {
            Some([only]) => Some(only.clone()),
            _ => None,
        }
    }

    fn resolve_type(&self, file: &ParsedFile, ty: &TypeRef) -> Option<ClassId> {
        if PRIMITIVE_NAMES.contains(&ty.name.as_str()) {
            return None;
        }
        self.resolve(file, &ty.name)
    }

    /// The class itself followed by its model ancestors.
    fn ancestors(&self, id: &ClassId) -> Vec<ClassId> {
        let mut chain = vec![id.clone()];
        let mut cur = id.clone();
        while let Some(sup) = self.classes.get(&cur).and_then(|c| c.supertype.clone()) {
            if chain.contains(&sup) {
                break;
            }
            chain.push(sup.clone());
            cur = sup;
        }
        chain
    }

    fn descendants(&self, id: &ClassId) -> Vec<ClassId> {
        let mut out = Vec::new();
        let mut stack = vec![id.clone()];
        while let Some(c) = stack.pop() {
            for sub in self.subclasses.get(&c).into_iter().flatten() {
                if !out.contains(sub) && sub != id {
                    out.push(sub.clone());
                    stack.push(sub.clone());
                }
            }
        }
        out.sort();
        out
    }

    fn find_field(&self, class: &ClassId, name: &str) -> Option<(ClassId, &'a TypeRef, &'a ParsedFile)> {
        for owner in self.ancestors(class) {
            let info = &self.classes[&owner];
            if let Some(f) = info.ast.fields.iter().find(|f| f.name == name) {
                return Some((owner, &f.ty, info.file));
            }
        }
        None
    }

    /// Methods named `name` in the nearest class of the hierarchy declaring one,
    /// narrowed to matching arity when possible.
    fn find_methods(&self, class: &ClassId, name: &str, arity: usize) -> Vec<(ClassId, &'a MethodAst, &'a ParsedFile)> {
        for owner in self.ancestors(class) {
            let info = &self.classes[&owner];
            let named: Vec<&MethodAst> = info
                .ast
                .methods
                .iter()
                .filter(|m| !m.is_constructor() && m.name == name)
                .collect();
            if named.is_empty() {
                continue;
            }
            let exact: Vec<&MethodAst> = named.iter().copied().filter(|m| m.params.len() == arity).collect();
            let chosen = if exact.is_empty() { named } else { exact };
            return chosen.into_iter().map(|m| (owner.clone(), m, info.file)).collect();
        }
        Vec::new()
    }

    fn find_constructors(&self, class: &ClassId, arity: usize) -> Vec<MethodRef> {
        let Some(info) = self.classes.get(class) else {
            return Vec::new();
        };
        let ctors: Vec<&MethodAst> = info.ast.methods.iter().filter(|m| m.is_constructor()).collect();
        let exact: Vec<&MethodAst> = ctors.iter().copied().filter(|m| m.params.len() == arity).collect();
        let chosen = if exact.is_empty() { ctors } else { exact };
        chosen.into_iter().map(|m| MethodRef::new(class.clone(), m.signature())).collect()
    }
}

pub(crate) fn build_model(parsed: &[ParsedFile]) -> Result<CodeModel, ModelError> {
    let mut classes: BTreeMap<ClassId, ClassInfo> = BTreeMap::new();
    for file in parsed {
        for (ci, class) in file.ast.classes.iter().enumerate() {
            let id = ClassId::new(file.package.as_str(), class.name.as_str());
            if classes.contains_key(&id) {
                return Err(ModelError::DuplicateDefinition(id.to_string()));
            }
            let mut seen = BTreeSet::new();
            for m in &class.methods {
                if !seen.insert(m.signature()) {
                    return Err(ModelError::DuplicateDefinition(MethodRef::new(id.clone(), m.signature()).to_string()));
                }
            }
            let mut fields = BTreeSet::new();
            for f in &class.fields {
                if !fields.insert(f.name.as_str()) {
                    return Err(ModelError::DuplicateDefinition(format!("{id}.{}", f.name)));
                }
            }
            classes.insert(
                id,
                ClassInfo {
                    file,
                    ast: class,
                    class_index: ci,
                    supertype: None,
                },
            );
        }
    }
    let mut by_simple: HashMap<&str, Vec<ClassId>> = HashMap::new();
    for (id, info) in &classes {
        by_simple.entry(info.ast.name.as_str()).or_default().push(id.clone());
    }
    let packages = parsed.iter().map(|f| f.package.as_str()).collect();
    let mut symbols = Symbols {
        classes,
        by_simple,
        packages,
        subclasses: HashMap::new(),
    };
    let supers: Vec<(ClassId, Option<ClassId>)> = symbols
        .classes
        .iter()
        .map(|(id, info)| {
            let sup = info
                .ast
                .extends
                .as_ref()
                .and_then(|t| symbols.resolve_type(info.file, t))
                .filter(|s| s != id);
            (id.clone(), sup)
        })
        .collect();
    for (id, sup) in supers {
        if let Some(s) = &sup {
            symbols.subclasses.entry(s.clone()).or_default().push(id.clone());
        }
        symbols.classes.get_mut(&id).expect("class present").supertype = sup;
    }

    let ids: Vec<&ClassId> = symbols.classes.keys().collect();
    let built: Vec<(ClassDecl, Vec<MethodRef>)> = ids.par_iter().map(|id| resolve_class(&symbols, id)).collect();

    let mut packages: BTreeMap<String, Vec<ClassDecl>> = BTreeMap::new();
    let mut entry_points = BTreeSet::new();
    for (class, entries) in built {
        entry_points.extend(entries);
        packages.entry(class.id.package.clone()).or_default().push(class);
    }
    Ok(CodeModel {
        packages: packages
            .into_iter()
            .map(|(name, classes)| Package { name, classes })
            .collect(),
        entry_points,
    })
}

fn is_main(m: &MethodAst) -> bool {
    m.name == "main"
        && m.modifiers.is_static
        && m.modifiers.public
        && m.return_type.as_ref().is_some_and(|t| t.name == "void" && t.array_dims == 0)
        && m.params.len() == 1
        && m.params[0].ty.name == "String"
        && m.params[0].ty.array_dims == 1
}

fn visibility(m: &Modifiers) -> Visibility {
    if m.public {
        Visibility::Public
    } else if m.private {
        Visibility::Private
    } else if m.protected {
        Visibility::Protected
    } else {
        Visibility::Package
    }
}

fn decision_points(tokens: &[Token]) -> usize {
    tokens
        .iter()
        .filter(|t| match t.kind {
            TokenKind::Keyword => matches!(t.text.as_str(), "if" | "for" | "while" | "case" | "catch"),
            TokenKind::Punct => matches!(t.text.as_str(), "&&" | "||" | "?"),
            _ => false,
        })
        .count()
}

fn resolve_class(symbols: &Symbols, id: &ClassId) -> (ClassDecl, Vec<MethodRef>) {
    let info = &symbols.classes[id];
    let file = info.file;
    let ast = info.ast;
    let mut deps = BTreeSet::new();
    let mut ext = BTreeSet::new();
    let note_type = |ty: &TypeRef, deps: &mut BTreeSet<ClassId>, ext: &mut BTreeSet<String>| {
        match symbols.resolve_type(file, ty) {
            Some(c) => {
                deps.insert(c);
            }
            None if !PRIMITIVE_NAMES.contains(&ty.name.as_str()) => {
                ext.insert(ty.name.clone());
            }
            None => {}
        }
    };
    let supertype = ast.extends.as_ref().map(|t| {
        note_type(t, &mut deps, &mut ext);
        match &info.supertype {
            Some(c) => Reference::Internal(c.clone()),
            None => Reference::External(t.name.clone()),
        }
    });
    let interfaces = ast
        .implements
        .iter()
        .map(|t| {
            note_type(t, &mut deps, &mut ext);
            match symbols.resolve_type(file, t) {
                Some(c) => Reference::Internal(c),
                None => Reference::External(t.name.clone()),
            }
        })
        .collect();
    let fields = ast
        .fields
        .iter()
        .map(|f| {
            note_type(&f.ty, &mut deps, &mut ext);
            FieldDecl {
                name: f.name.clone(),
                type_name: f.ty.render(),
            }
        })
        .collect();

    let mut init_walker = Walker::new(symbols, file, id);
    for f in &ast.fields {
        if let Some(init) = &f.init {
            init_walker.expr(init);
        }
    }
    deps.append(&mut init_walker.deps);
    ext.append(&mut init_walker.ext);
    let initializer_calls = init_walker.calls;

    let mut entries = Vec::new();
    let mut methods = Vec::new();
    for (mi, m) in ast.methods.iter().enumerate() {
        let mref = MethodRef::new(id.clone(), m.signature());
        if is_main(m) {
            entries.push(mref.clone());
        }
        let mut w = Walker::new(symbols, file, id);
        w.push_scope();
        for p in &m.params {
            w.note_type(&p.ty);
            w.declare(&p.name, &p.ty);
        }
        if let Some(rt) = &m.return_type {
            w.note_type(rt);
        }
        for t in &m.throws {
            w.note_type(t);
        }
        if let Some(body) = &m.body {
            w.block(body);
        }
        deps.append(&mut w.deps);
        ext.append(&mut w.ext);
        let sloc = (m.start_line..=m.end_line)
            .filter(|l| file.line_kinds.get(l - 1) == Some(&LineKind::Code))
            .count()
            .max(1);
        methods.push(MethodDecl {
            id: mref,
            name: m.name.clone(),
            params: m
                .params
                .iter()
                .map(|p| ParamDecl {
                    name: p.name.clone(),
                    type_name: p.ty.render(),
                })
                .collect(),
            visibility: visibility(&m.modifiers),
            is_static: m.modifiers.is_static,
            is_abstract: m.body.is_none(),
            is_constructor: m.is_constructor(),
            line: m.start_line,
            sloc,
            decision_points: decision_points(&m.body_tokens),
            body_tokens: m.body_tokens.iter().map(|t| t.normalized().to_string()).collect(),
            own_field_accesses: w.own_fields,
            own_member_accesses: w.own_accesses,
            foreign_accesses: w.foreign,
            calls: w.calls,
            feature_tags: file
                .tags
                .get(&(info.class_index, mi))
                .map(|t| t.iter().cloned().collect())
                .unwrap_or_default(),
        });
    }
    deps.remove(id);
    (
        ClassDecl {
            id: id.clone(),
            file: file.path.clone(),
            line: ast.line,
            fields,
            methods,
            supertype,
            interfaces,
            dependencies: deps,
            external_dependencies: ext,
            initializer_calls,
        },
        entries,
    )
}

const PRIMITIVE_NAMES: &[&str] = &["int", "long", "short", "byte", "char", "boolean", "float", "double", "void"];

#[derive(Clone)]
struct ExprTy {
    class: ClassId,
    dims: usize,
}

/// What a simple name denotes inside a method body.
enum Binding {
    Local(Option<ExprTy>),
    Field(Option<ExprTy>),
    Class(ClassId),
    Unknown,
}

struct Walker<'s, 'a> {
    symbols: &'s Symbols<'a>,
    file: &'a ParsedFile,
    own: &'s ClassId,
    own_chain: Vec<ClassId>,
    scopes: Vec<HashMap<String, TypeRef>>,
    own_fields: BTreeMap<String, usize>,
    own_accesses: usize,
    foreign: BTreeMap<ClassId, BTreeMap<String, usize>>,
    calls: BTreeSet<CallTarget>,
    deps: BTreeSet<ClassId>,
    ext: BTreeSet<String>,
}

impl<'s, 'a> Walker<'s, 'a> {
    fn new(symbols: &'s Symbols<'a>, file: &'a ParsedFile, own: &'s ClassId) -> Self {
        Self {
            symbols,
            file,
            own,
            own_chain: symbols.ancestors(own),
            scopes: Vec::new(),
            own_fields: BTreeMap::new(),
            own_accesses: 0,
            foreign: BTreeMap::new(),
            calls: BTreeSet::new(),
            deps: BTreeSet::new(),
            ext: BTreeSet::new(),
        }
    }

    fn push_scope(&mut self) {
        self.scopes.push(HashMap::new());
    }

    fn pop_scope(&mut self) {
        self.scopes.pop();
    }

    fn declare(&mut self, name: &str, ty: &TypeRef) {
        if self.scopes.is_empty() {
            self.push_scope();
        }
        self.scopes.last_mut().expect("scope").insert(name.to_string(), ty.clone());
    }

    fn lookup_local(&self, name: &str) -> Option<&TypeRef> {
        self.scopes.iter().rev().find_map(|s| s.get(name))
    }

    fn typed(&self, file: &ParsedFile, ty: &TypeRef) -> Option<ExprTy> {
        self.symbols.resolve_type(file, ty).map(|class| ExprTy {
            class,
            dims: ty.array_dims,
        })
    }

    fn note_type(&mut self, ty: &TypeRef) -> Option<ExprTy> {
        match self.typed(self.file, ty) {
            Some(t) => {
                self.deps.insert(t.class.clone());
                Some(t)
            }
            None => {
                if !PRIMITIVE_NAMES.contains(&ty.name.as_str()) {
                    self.ext.insert(ty.name.clone());
                }
                None
            }
        }
    }

    fn is_own(&self, class: &ClassId) -> bool {
        self.own_chain.contains(class)
    }

    fn binding(&self, name: &str) -> Binding {
        if let Some(ty) = self.lookup_local(name) {
            return Binding::Local(self.typed(self.file, ty));
        }
        if let Some((_, ty, decl_file)) = self.symbols.find_field(self.own, name) {
            return Binding::Field(self.typed(decl_file, ty));
        }
        match self.symbols.resolve(self.file, name) {
            Some(c) => Binding::Class(c),
            None => Binding::Unknown,
        }
    }

    fn record_member(&mut self, receiver: &ClassId, member: &str, is_field: bool) {
        if receiver == self.own {
            self.own_accesses += 1;
            if is_field && self.symbols.classes[self.own].ast.fields.iter().any(|f| f.name == member) {
                *self.own_fields.entry(member.to_string()).or_default() += 1;
            }
        } else if self.is_own(receiver) {
            self.own_accesses += 1;
        } else {
            self.deps.insert(receiver.clone());
            *self
                .foreign
                .entry(receiver.clone())
                .or_default()
                .entry(member.to_string())
                .or_default() += 1;
        }
    }

    fn block(&mut self, stmts: &[Stmt]) {
        self.push_scope();
        for s in stmts {
            self.stmt(s);
        }
        self.pop_scope();
    }

    fn stmt(&mut self, s: &Stmt) {
        match s {
            Stmt::Block(b) => self.block(b),
            Stmt::Local { ty, vars } => {
                self.note_type(ty);
                for (name, init) in vars {
                    if let Some(e) = init {
                        self.expr(e);
                    }
                    self.declare(name, ty);
                }
            }
            Stmt::Expr(e) | Stmt::Throw(e) => {
                self.expr(e);
            }
            Stmt::If { cond, then, otherwise } => {
                self.expr(cond);
                self.scoped(then);
                if let Some(o) = otherwise {
                    self.scoped(o);
                }
            }
            Stmt::While { cond, body } => {
                self.expr(cond);
                self.scoped(body);
            }
            Stmt::DoWhile { body, cond } => {
                self.scoped(body);
                self.expr(cond);
            }
            Stmt::For { init, cond, update, body } => {
                self.push_scope();
                for s in init {
                    self.stmt(s);
                }
                if let Some(c) = cond {
                    self.expr(c);
                }
                for u in update {
                    self.expr(u);
                }
                self.scoped(body);
                self.pop_scope();
            }
            Stmt::ForEach { ty, name, iter, body } => {
                self.expr(iter);
                self.push_scope();
                self.note_type(ty);
                self.declare(name, ty);
                self.scoped(body);
                self.pop_scope();
            }
            Stmt::Switch { scrutinee, groups } => {
                self.expr(scrutinee);
                self.push_scope();
                for g in groups {
                    for l in &g.labels {
                        self.expr(l);
                    }
                    for s in &g.body {
                        self.stmt(s);
                    }
                }
                self.pop_scope();
            }
            Stmt::Try { body, catches, finally } => {
                self.block(body);
                for c in catches {
                    self.push_scope();
                    for t in &c.types {
                        self.note_type(t);
                    }
                    self.declare(&c.name, &c.types[0]);
                    self.block(&c.body);
                    self.pop_scope();
                }
                if let Some(f) = finally {
                    self.block(f);
                }
            }
            Stmt::Sync { lock, body } => {
                self.expr(lock);
                self.block(body);
            }
            Stmt::Return(e) => {
                if let Some(e) = e {
                    self.expr(e);
                }
            }
            Stmt::Assert(a, b) => {
                self.expr(a);
                if let Some(b) = b {
                    self.expr(b);
                }
            }
            Stmt::Labeled(s) => self.stmt(s),
            Stmt::Break | Stmt::Continue | Stmt::Empty => {}
        }
    }

    fn scoped(&mut self, s: &Stmt) {
        self.push_scope();
        self.stmt(s);
        self.pop_scope();
    }

    /// Type of a receiver expression; dotted chains that name a class resolve to it.
    fn receiver(&mut self, target: &Expr) -> Option<ExprTy> {
        if let Some(path) = target.as_dotted() {
            let root = path.split('.').next().unwrap_or(&path);
            if path.contains('.') && matches!(self.binding(root), Binding::Unknown) {
                if let Some(c) = self.symbols.resolve(self.file, &path) {
                    self.deps.insert(c.clone());
                    return Some(ExprTy { class: c, dims: 0 });
                }
                self.ext.insert(path);
                return None;
            }
        }
        // A field holding a collaborator: the hop counts for cohesion but is not
        // an own-member access of its own.
        let own_field = match target {
            Expr::Name(n) if self.lookup_local(n).is_none() => Some(n),
            Expr::Field { target: inner, name } if matches!(**inner, Expr::This) => Some(name),
            _ => None,
        };
        if let Some(name) = own_field {
            if let Some((owner, ty, f)) = self.symbols.find_field(self.own, name) {
                let t = self.typed(f, ty);
                if let Some(t) = t.as_ref().filter(|t| t.dims == 0 && !self.is_own(&t.class)) {
                    if owner == *self.own {
                        *self.own_fields.entry(name.clone()).or_default() += 1;
                    }
                    self.deps.insert(t.class.clone());
                    return Some(t.clone());
                }
            }
        }
        self.expr(target)
    }

    fn add_calls(&mut self, targets: Vec<(ClassId, &MethodAst)>) {
        for (owner, m) in targets {
            let sig = m.signature();
            for sub in self.symbols.descendants(&owner) {
                let overrides = self.symbols.classes[&sub].ast.methods.iter().any(|x| x.signature() == sig);
                if overrides {
                    self.calls.insert(Reference::Internal(MethodRef::new(sub, sig.clone())));
                }
            }
            self.calls.insert(Reference::Internal(MethodRef::new(owner, sig)));
        }
    }

    fn call_on(&mut self, receiver: &ClassId, name: &str, arity: usize, fallback: String) -> Option<ExprTy> {
        let found = self.symbols.find_methods(receiver, name, arity);
        if found.is_empty() {
            self.calls.insert(Reference::External(fallback));
            return None;
        }
        let ret = found
            .first()
            .and_then(|(_, m, f)| m.return_type.as_ref().and_then(|t| self.typed(f, t)));
        self.add_calls(found.into_iter().map(|(c, m, _)| (c, m)).collect());
        ret
    }

    fn expr(&mut self, e: &Expr) -> Option<ExprTy> {
        match e {
            Expr::Literal => None,
            Expr::Name(n) => match self.binding(n) {
                Binding::Local(t) => t,
                Binding::Field(t) => {
                    let owner = self.symbols.find_field(self.own, n).map(|(o, _, _)| o).expect("field");
                    self.record_member(&owner, n, true);
                    t
                }
                Binding::Class(c) => {
                    self.deps.insert(c.clone());
                    Some(ExprTy { class: c, dims: 0 })
                }
                Binding::Unknown => {
                    self.ext.insert(n.clone());
                    None
                }
            },
            Expr::This => Some(ExprTy {
                class: self.own.clone(),
                dims: 0,
            }),
            Expr::Super => self.own_chain.get(1).map(|c| ExprTy { class: c.clone(), dims: 0 }),
            Expr::Field { target, name } => {
                let t = self.receiver(target)?;
                if t.dims > 0 {
                    return None;
                }
                let field = self.symbols.find_field(&t.class, name);
                self.record_member(&t.class, name, true);
                field.and_then(|(_, ty, f)| self.typed(f, ty))
            }
            Expr::Call { target: None, name, args } if name == "this" || name == "super" => {
                for a in args {
                    self.expr(a);
                }
                let class = if name == "this" { Some(self.own.clone()) } else { self.own_chain.get(1).cloned() };
                if let Some(c) = class {
                    for ctor in self.symbols.find_constructors(&c, args.len()) {
                        self.calls.insert(Reference::Internal(ctor));
                    }
                }
                None
            }
            Expr::Call { target, name, args } => {
                for a in args {
                    self.expr(a);
                }
                match target {
                    None => {
                        let own = self.own.clone();
                        let found = !self.symbols.find_methods(&own, name, args.len()).is_empty();
                        if found {
                            self.own_accesses += 1;
                        }
                        self.call_on(&own, name, args.len(), name.clone())
                    }
                    Some(t) => {
                        let fallback = match t.as_dotted() {
                            Some(p) => format!("{p}.{name}"),
                            None => name.clone(),
                        };
                        match self.receiver(t) {
                            Some(rt) if rt.dims == 0 => {
                                self.record_member(&rt.class, name, false);
                                self.call_on(&rt.class, name, args.len(), format!("{}.{name}", rt.class))
                            }
                            _ => {
                                self.calls.insert(Reference::External(fallback));
                                None
                            }
                        }
                    }
                }
            }
            Expr::New { ty, args } => {
                for a in args {
                    self.expr(a);
                }
                let t = self.note_type(ty)?;
                for ctor in self.symbols.find_constructors(&t.class, args.len()) {
                    self.calls.insert(Reference::Internal(ctor));
                }
                Some(t)
            }
            Expr::NewArray { ty, dims, init } => {
                for d in dims {
                    self.expr(d);
                }
                for i in init.iter().flatten() {
                    self.expr(i);
                }
                self.note_type(ty)
            }
            Expr::ArrayInit(items) => {
                for i in items {
                    self.expr(i);
                }
                None
            }
            Expr::Index { target, index } => {
                let t = self.expr(target);
                self.expr(index);
                t.filter(|t| t.dims > 0).map(|t| ExprTy {
                    class: t.class,
                    dims: t.dims - 1,
                })
            }
            Expr::Unary(inner) => self.expr(inner),
            Expr::Binary(a, b) => {
                self.expr(a);
                self.expr(b);
                None
            }
            Expr::Assign { target, value } => {
                let t = self.expr(target);
                self.expr(value);
                t
            }
            Expr::Ternary(c, a, b) => {
                self.expr(c);
                let ta = self.expr(a);
                let tb = self.expr(b);
                ta.or(tb)
            }
            Expr::Cast { ty, expr } => {
                self.expr(expr);
                self.note_type(ty)
            }
            Expr::InstanceOf { expr, ty } => {
                self.expr(expr);
                self.note_type(ty);
                None
            }
            Expr::ClassLit(ty) => {
                self.note_type(ty);
                None
            }
        }
    }
}
