//! Per-file syntax tree produced by the parser, before name resolution.

use super::lexer::Token;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRef {
    /// Dotted name as written, e.g. `int`, `String`, `java.util.Map`.
    pub name: String,
    pub array_dims: usize,
}

impl TypeRef {
    pub fn simple(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            array_dims: 0,
        }
    }

    /// The textual form used inside method signatures.
    pub fn render(&self) -> String {
        let mut s = self.name.clone();
        for _ in 0..self.array_dims {
            s.push_str("[]");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Import {
    pub path: String,
    pub wildcard: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Modifiers {
    pub public: bool,
    pub private: bool,
    pub protected: bool,
    pub is_static: bool,
    pub is_abstract: bool,
    /// Line of the first modifier or annotation, if any.
    pub first_line: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct FileAst {
    pub package: Option<String>,
    pub imports: Vec<Import>,
    pub classes: Vec<ClassAst>,
}

#[derive(Debug, Clone)]
pub struct ClassAst {
    pub name: String,
    pub line: usize,
    pub extends: Option<TypeRef>,
    pub implements: Vec<TypeRef>,
    pub fields: Vec<FieldAst>,
    pub methods: Vec<MethodAst>,
}

#[derive(Debug, Clone)]
pub struct FieldAst {
    pub name: String,
    pub ty: TypeRef,
    pub line: usize,
    pub init: Option<Expr>,
}

#[derive(Debug, Clone)]
pub struct Param {
    pub name: String,
    pub ty: TypeRef,
}

#[derive(Debug, Clone)]
pub struct MethodAst {
    pub name: String,
    pub modifiers: Modifiers,
    /// `None` for constructors.
    pub return_type: Option<TypeRef>,
    pub params: Vec<Param>,
    pub throws: Vec<TypeRef>,
    pub body: Option<Vec<Stmt>>,
    /// Tokens strictly inside the body braces.
    pub body_tokens: Vec<Token>,
    pub start_line: usize,
    pub end_line: usize,
}

impl MethodAst {
    pub fn is_constructor(&self) -> bool {
        self.return_type.is_none()
    }

    /// `name(T1,T2)` with parameter types as written.
    pub fn signature(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|p| p.ty.render()).collect();
        format!("{}({})", self.name, params.join(","))
    }
}

#[derive(Debug, Clone)]
pub enum Stmt {
    Block(Vec<Stmt>),
    Local { ty: TypeRef, vars: Vec<(String, Option<Expr>)> },
    Expr(Expr),
    If { cond: Expr, then: Box<Stmt>, otherwise: Option<Box<Stmt>> },
    While { cond: Expr, body: Box<Stmt> },
    DoWhile { body: Box<Stmt>, cond: Expr },
    For { init: Vec<Stmt>, cond: Option<Expr>, update: Vec<Expr>, body: Box<Stmt> },
    ForEach { ty: TypeRef, name: String, iter: Expr, body: Box<Stmt> },
    Switch { scrutinee: Expr, groups: Vec<SwitchGroup> },
    Try { body: Vec<Stmt>, catches: Vec<CatchClause>, finally: Option<Vec<Stmt>> },
    Sync { lock: Expr, body: Vec<Stmt> },
    Return(Option<Expr>),
    Throw(Expr),
    Assert(Expr, Option<Expr>),
    Labeled(Box<Stmt>),
    Break,
    Continue,
    Empty,
}

#[derive(Debug, Clone)]
pub struct SwitchGroup {
    /// Case label expressions; empty for `default`.
    pub labels: Vec<Expr>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub struct CatchClause {
    pub types: Vec<TypeRef>,
    pub name: String,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub enum Expr {
    Literal,
    Name(String),
    This,
    Super,
    Field { target: Box<Expr>, name: String },
    /// `target.name(args)` or, with no target, an unqualified call.
    /// Explicit constructor calls use the names `this` and `super`.
    Call { target: Option<Box<Expr>>, name: String, args: Vec<Expr> },
    New { ty: TypeRef, args: Vec<Expr> },
    NewArray { ty: TypeRef, dims: Vec<Expr>, init: Option<Vec<Expr>> },
    ArrayInit(Vec<Expr>),
    Index { target: Box<Expr>, index: Box<Expr> },
    Unary(Box<Expr>),
    Binary(Box<Expr>, Box<Expr>),
    Assign { target: Box<Expr>, value: Box<Expr> },
    Ternary(Box<Expr>, Box<Expr>, Box<Expr>),
    Cast { ty: TypeRef, expr: Box<Expr> },
    InstanceOf { expr: Box<Expr>, ty: TypeRef },
    ClassLit(TypeRef),
}

impl Expr {
    /// `a.b.c` as a dotted path if the expression is a pure name chain.
    pub fn as_dotted(&self) -> Option<String> {
        match self {
            Expr::Name(n) => Some(n.clone()),
            Expr::Field { target, name } => target.as_dotted().map(|t| format!("{t}.{name}")),
            _ => None,
        }
    }
}
