//! Recursive-descent parser for the supported Java subset.
//!
//! Accepted: package and import declarations, top-level classes with fields,
//! constructors and methods, and statements built from blocks, locals,
//! if/else, for, for-each, while, do-while, switch/case, try/catch/finally,
//! synchronized, return, throw, break, continue and assert. Generics,
//! lambdas, method references, inner/anonymous classes, interfaces, enums,
//! initializer blocks, try-with-resources and arrow-form switches are
//! rejected with a syntax error naming the construct.

use super::ast::*;
use super::lexer::{Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub expected: String,
}

type PResult<T> = Result<T, ParseError>;

const ASSIGN_OPS: &[&str] = &["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="];
const PRIMITIVES: &[&str] = &["boolean", "byte", "char", "double", "float", "int", "long", "short", "void"];

pub fn parse_tokens(tokens: &[Token]) -> PResult<FileAst> {
    Parser { toks: tokens, pos: 0 }.file()
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
}

fn binary_precedence(op: &str) -> Option<u8> {
    Some(match op {
        "||" => 1,
        "&&" => 2,
        "|" => 3,
        "^" => 4,
        "&" => 5,
        "==" | "!=" => 6,
        "<" | ">" | "<=" | ">=" | "instanceof" => 7,
        "<<" | ">>" | ">>>" => 8,
        "+" | "-" => 9,
        "*" | "/" | "%" => 10,
        _ => return None,
    })
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + offset)
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is(text))
    }

    fn at_offset(&self, offset: usize, text: &str) -> bool {
        self.peek_at(offset).is_some_and(|t| t.is(text))
    }

    fn line(&self) -> usize {
        self.peek()
            .or_else(|| self.toks.last())
            .map_or(1, |t| t.line)
    }

    fn error<T>(&self, expected: impl Into<String>) -> PResult<T> {
        let expected = expected.into();
        let expected = match self.peek() {
            Some(t) => format!("{expected}, found `{}`", t.text),
            None => format!("{expected}, found end of file"),
        };
        Err(ParseError {
            line: self.line(),
            expected,
        })
    }

    fn unsupported<T>(&self, what: &str) -> PResult<T> {
        Err(ParseError {
            line: self.line(),
            expected: format!("supported construct ({what} are not supported)"),
        })
    }

    fn bump(&mut self) -> &'a Token {
        let t = &self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, text: &str) -> PResult<&'a Token> {
        if self.at(text) {
            Ok(self.bump())
        } else {
            self.error(format!("`{text}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => Ok(self.bump().text.clone()),
            _ => self.error("identifier"),
        }
    }

    fn at_ident(&self) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Ident)
    }

    fn dotted_name(&mut self) -> PResult<String> {
        let mut name = self.ident()?;
        while self.at(".") && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Ident) {
            self.pos += 1;
            name.push('.');
            name.push_str(&self.ident()?);
        }
        Ok(name)
    }

    fn file(&mut self) -> PResult<FileAst> {
        let mut package = None;
        if self.eat("package") {
            package = Some(self.dotted_name()?);
            self.expect(";")?;
        }
        let mut imports = Vec::new();
        while self.eat("import") {
            self.eat("static");
            let mut path = self.ident()?;
            let mut wildcard = false;
            while self.eat(".") {
                if self.eat("*") {
                    wildcard = true;
                    break;
                }
                path.push('.');
                path.push_str(&self.ident()?);
            }
            self.expect(";")?;
            imports.push(Import { path, wildcard });
        }
        let mut classes = Vec::new();
        while self.peek().is_some() {
            if self.eat(";") {
                continue;
            }
            let mods = self.modifiers()?;
            classes.push(self.class_decl(mods)?);
        }
        Ok(FileAst {
            package,
            imports,
            classes,
        })
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut m = Modifiers::default();
        while let Some(t) = self.peek() {
            if t.is("@") {
                if self.at_offset(1, "interface") {
                    return self.unsupported("annotation type declarations");
                }
                m.first_line.get_or_insert(t.line);
                self.pos += 1;
                self.dotted_name()?;
                if self.at("(") {
                    self.skip_balanced("(", ")")?;
                }
                continue;
            }
            let known = matches!(
                t.text.as_str(),
                "public"
                    | "private"
                    | "protected"
                    | "static"
                    | "abstract"
                    | "final"
                    | "native"
                    | "synchronized"
                    | "transient"
                    | "volatile"
                    | "strictfp"
            );
            if t.kind != TokenKind::Keyword || !known {
                break;
            }
            // `synchronized (` starts a statement, not a modifier.
            if t.text == "synchronized" && self.at_offset(1, "(") {
                break;
            }
            m.first_line.get_or_insert(t.line);
            match t.text.as_str() {
                "public" => m.public = true,
                "private" => m.private = true,
                "protected" => m.protected = true,
                "static" => m.is_static = true,
                "abstract" => m.is_abstract = true,
                _ => {}
            }
            self.pos += 1;
        }
        Ok(m)
    }

    fn skip_balanced(&mut self, open: &str, close: &str) -> PResult<()> {
        self.expect(open)?;
        let mut depth = 1;
        while depth > 0 {
            match self.peek() {
                None => return self.error(format!("`{close}`")),
                Some(t) if t.is(open) => depth += 1,
                Some(t) if t.is(close) => depth -= 1,
                _ => {}
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn class_decl(&mut self, mods: Modifiers) -> PResult<ClassAst> {
        if self.at("interface") {
            return self.unsupported("interfaces");
        }
        if self.at("enum") {
            return self.unsupported("enums");
        }
        let line = mods.first_line.unwrap_or_else(|| self.line());
        self.expect("class")?;
        let name = self.ident()?;
        if self.at("<") {
            return self.unsupported("generics");
        }
        let extends = if self.eat("extends") {
            Some(self.type_ref()?)
        } else {
            None
        };
        let mut implements = Vec::new();
        if self.eat("implements") {
            loop {
                implements.push(self.type_ref()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect("{")?;
        let mut class = ClassAst {
            name,
            line,
            extends,
            implements,
            fields: Vec::new(),
            methods: Vec::new(),
        };
        while !self.eat("}") {
            if self.peek().is_none() {
                return self.error("`}` closing class body");
            }
            self.member(&mut class)?;
        }
        Ok(class)
    }

    fn member(&mut self, class: &mut ClassAst) -> PResult<()> {
        if self.eat(";") {
            return Ok(());
        }
        if self.at("{") || (self.at("static") && self.at_offset(1, "{")) {
            return self.unsupported("initializer blocks");
        }
        let mods = self.modifiers()?;
        if self.at("class") || self.at("interface") || self.at("enum") {
            return self.unsupported("inner classes");
        }
        if self.at("<") {
            return self.unsupported("generics");
        }
        let start_line = mods.first_line.unwrap_or_else(|| self.line());
        let is_ctor = self.peek().is_some_and(|t| t.kind == TokenKind::Ident && t.text == class.name)
            && self.at_offset(1, "(");
        if is_ctor {
            let name = self.ident()?;
            let method = self.method_rest(name, mods, None, start_line)?;
            class.methods.push(method);
            return Ok(());
        }
        let ty = self.type_ref()?;
        let name = self.ident()?;
        if self.at("(") {
            let method = self.method_rest(name, mods, Some(ty), start_line)?;
            class.methods.push(method);
            return Ok(());
        }
        let mut field_name = name;
        loop {
            let line = self.line();
            let mut field_ty = ty.clone();
            while self.at("[") && self.at_offset(1, "]") {
                self.pos += 2;
                field_ty.array_dims += 1;
            }
            let init = if self.eat("=") {
                Some(self.var_init()?)
            } else {
                None
            };
            class.fields.push(FieldAst {
                name: field_name,
                ty: field_ty,
                line,
                init,
            });
            if !self.eat(",") {
                break;
            }
            field_name = self.ident()?;
        }
        self.expect(";")?;
        Ok(())
    }

    fn method_rest(
        &mut self,
        name: String,
        modifiers: Modifiers,
        return_type: Option<TypeRef>,
        start_line: usize,
    ) -> PResult<MethodAst> {
        self.expect("(")?;
        let mut params = Vec::new();
        if !self.eat(")") {
            loop {
                self.modifiers()?;
                let mut ty = self.type_ref()?;
                if self.eat("...") {
                    ty.array_dims += 1;
                }
                let pname = self.ident()?;
                while self.at("[") && self.at_offset(1, "]") {
                    self.pos += 2;
                    ty.array_dims += 1;
                }
                params.push(Param { name: pname, ty });
                if self.eat(")") {
                    break;
                }
                self.expect(",")?;
            }
        }
        let mut return_type = return_type;
        while self.at("[") && self.at_offset(1, "]") {
            self.pos += 2;
            if let Some(rt) = return_type.as_mut() {
                rt.array_dims += 1;
            }
        }
        let mut throws = Vec::new();
        if self.eat("throws") {
            loop {
                throws.push(self.type_ref()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        if self.at(";") {
            let end_line = self.bump().line;
            return Ok(MethodAst {
                name,
                modifiers,
                return_type,
                params,
                throws,
                body: None,
                body_tokens: Vec::new(),
                start_line,
                end_line,
            });
        }
        self.expect("{")?;
        let body_start = self.pos;
        let mut body = Vec::new();
        while !self.at("}") {
            if self.peek().is_none() {
                return self.error("`}` closing method body");
            }
            body.push(self.statement()?);
        }
        let body_tokens = self.toks[body_start..self.pos].to_vec();
        let end_line = self.bump().line;
        Ok(MethodAst {
            name,
            modifiers,
            return_type,
            params,
            throws,
            body: Some(body),
            body_tokens,
            start_line,
            end_line,
        })
    }

    fn type_ref(&mut self) -> PResult<TypeRef> {
        let name = match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.text.as_str()) => {
                self.bump().text.clone()
            }
            Some(t) if t.kind == TokenKind::Ident => self.dotted_name()?,
            _ => return self.error("type"),
        };
        if self.at("<") {
            return self.unsupported("generics");
        }
        let mut ty = TypeRef::simple(name);
        while self.at("[") && self.at_offset(1, "]") {
            self.pos += 2;
            ty.array_dims += 1;
        }
        Ok(ty)
    }

    /// Whether the tokens at the cursor begin a local variable declaration.
    fn at_local_decl(&self) -> PResult<bool> {
        let Some(first) = self.peek() else {
            return Ok(false);
        };
        let mut j = self.pos;
        if first.kind == TokenKind::Keyword && PRIMITIVES.contains(&first.text.as_str()) {
            j += 1;
        } else if first.kind == TokenKind::Ident {
            j += 1;
            while self.toks.get(j).is_some_and(|t| t.is("."))
                && self.toks.get(j + 1).is_some_and(|t| t.kind == TokenKind::Ident)
            {
                j += 2;
            }
            if self.toks.get(j).is_some_and(|t| t.is("<")) && self.looks_like_type_args(j) {
                return Err(ParseError {
                    line: self.toks[j].line,
                    expected: "supported construct (generics are not supported)".into(),
                });
            }
        } else {
            return Ok(false);
        }
        while self.toks.get(j).is_some_and(|t| t.is("[")) && self.toks.get(j + 1).is_some_and(|t| t.is("]")) {
            j += 2;
        }
        let name_follows = self.toks.get(j).is_some_and(|t| t.kind == TokenKind::Ident);
        let then = self.toks.get(j + 1);
        Ok(name_follows && then.is_some_and(|t| t.is("=") || t.is(";") || t.is(",") || t.is(":") || t.is("[")))
    }

    fn looks_like_type_args(&self, open: usize) -> bool {
        let mut depth = 0;
        let mut j = open;
        while let Some(t) = self.toks.get(j) {
            match t.text.as_str() {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                "," | "." | "?" | "[" | "]" | "extends" | "super" => {}
                _ if t.kind == TokenKind::Ident
                    || (t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.text.as_str())) => {}
                _ => return false,
            }
            j += 1;
            if depth <= 0 {
                return depth == 0 && self.toks.get(j).is_some_and(|t| t.kind == TokenKind::Ident || t.is("("));
            }
        }
        false
    }

    fn block(&mut self) -> PResult<Vec<Stmt>> {
        self.expect("{")?;
        let mut stmts = Vec::new();
        while !self.eat("}") {
            if self.peek().is_none() {
                return self.error("`}` closing block");
            }
            stmts.push(self.statement()?);
        }
        Ok(stmts)
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let Some(t) = self.peek() else {
            return self.error("statement");
        };
        if t.kind == TokenKind::Keyword {
            match t.text.as_str() {
                "if" => {
                    self.pos += 1;
                    let cond = self.paren_expr()?;
                    let then = Box::new(self.statement()?);
                    let otherwise = if self.eat("else") {
                        Some(Box::new(self.statement()?))
                    } else {
                        None
                    };
                    return Ok(Stmt::If { cond, then, otherwise });
                }
                "while" => {
                    self.pos += 1;
                    let cond = self.paren_expr()?;
                    let body = Box::new(self.statement()?);
                    return Ok(Stmt::While { cond, body });
                }
                "do" => {
                    self.pos += 1;
                    let body = Box::new(self.statement()?);
                    self.expect("while")?;
                    let cond = self.paren_expr()?;
                    self.expect(";")?;
                    return Ok(Stmt::DoWhile { body, cond });
                }
                "for" => return self.for_statement(),
                "switch" => return self.switch_statement(),
                "try" => return self.try_statement(),
                "synchronized" => {
                    self.pos += 1;
                    let lock = self.paren_expr()?;
                    let body = self.block()?;
                    return Ok(Stmt::Sync { lock, body });
                }
                "return" => {
                    self.pos += 1;
                    let value = if self.at(";") { None } else { Some(self.expr()?) };
                    self.expect(";")?;
                    return Ok(Stmt::Return(value));
                }
                "throw" => {
                    self.pos += 1;
                    let value = self.expr()?;
                    self.expect(";")?;
                    return Ok(Stmt::Throw(value));
                }
                "break" | "continue" => {
                    let is_break = t.text == "break";
                    self.pos += 1;
                    if self.at_ident() {
                        self.pos += 1;
                    }
                    self.expect(";")?;
                    return Ok(if is_break { Stmt::Break } else { Stmt::Continue });
                }
                "assert" => {
                    self.pos += 1;
                    let cond = self.expr()?;
                    let msg = if self.eat(":") { Some(self.expr()?) } else { None };
                    self.expect(";")?;
                    return Ok(Stmt::Assert(cond, msg));
                }
                "class" | "interface" | "enum" => return self.unsupported("inner classes"),
                "final" => {
                    self.pos += 1;
                    let stmt = self.local_decl()?;
                    self.expect(";")?;
                    return Ok(stmt);
                }
                _ => {}
            }
        }
        if t.is("{") {
            return Ok(Stmt::Block(self.block()?));
        }
        if t.is(";") {
            self.pos += 1;
            return Ok(Stmt::Empty);
        }
        if t.is("@") {
            self.modifiers()?;
            let stmt = self.local_decl()?;
            self.expect(";")?;
            return Ok(stmt);
        }
        if t.kind == TokenKind::Ident && self.at_offset(1, ":") {
            self.pos += 2;
            return Ok(Stmt::Labeled(Box::new(self.statement()?)));
        }
        if self.at_local_decl()? {
            let stmt = self.local_decl()?;
            self.expect(";")?;
            return Ok(stmt);
        }
        let e = self.expr()?;
        self.expect(";")?;
        Ok(Stmt::Expr(e))
    }

    fn paren_expr(&mut self) -> PResult<Expr> {
        self.expect("(")?;
        let e = self.expr()?;
        self.expect(")")?;
        Ok(e)
    }

    fn local_decl(&mut self) -> PResult<Stmt> {
        let ty = self.type_ref()?;
        let name = self.ident()?;
        self.declarators(ty, name)
    }

    fn declarators(&mut self, ty: TypeRef, first: String) -> PResult<Stmt> {
        let mut vars = Vec::new();
        let mut name = first;
        loop {
            while self.at("[") && self.at_offset(1, "]") {
                self.pos += 2;
            }
            let init = if self.eat("=") { Some(self.var_init()?) } else { None };
            vars.push((name, init));
            if !self.eat(",") {
                break;
            }
            name = self.ident()?;
        }
        Ok(Stmt::Local { ty, vars })
    }

    fn var_init(&mut self) -> PResult<Expr> {
        if self.at("{") {
            self.array_init()
        } else {
            self.expr()
        }
    }

    fn array_init(&mut self) -> PResult<Expr> {
        self.expect("{")?;
        let mut items = Vec::new();
        while !self.eat("}") {
            items.push(self.var_init()?);
            if !self.eat(",") {
                self.expect("}")?;
                break;
            }
        }
        Ok(Expr::ArrayInit(items))
    }

    fn for_statement(&mut self) -> PResult<Stmt> {
        self.expect("for")?;
        self.expect("(")?;
        let mut init = Vec::new();
        if !self.at(";") {
            self.eat("final");
            if self.at_local_decl()? {
                let ty = self.type_ref()?;
                let name = self.ident()?;
                if self.eat(":") {
                    let iter = self.expr()?;
                    self.expect(")")?;
                    let body = Box::new(self.statement()?);
                    return Ok(Stmt::ForEach { ty, name, iter, body });
                }
                init.push(self.declarators(ty, name)?);
            } else {
                loop {
                    init.push(Stmt::Expr(self.expr()?));
                    if !self.eat(",") {
                        break;
                    }
                }
            }
        }
        self.expect(";")?;
        let cond = if self.at(";") { None } else { Some(self.expr()?) };
        self.expect(";")?;
        let mut update = Vec::new();
        if !self.at(")") {
            loop {
                update.push(self.expr()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        let body = Box::new(self.statement()?);
        Ok(Stmt::For { init, cond, update, body })
    }

    fn switch_statement(&mut self) -> PResult<Stmt> {
        self.expect("switch")?;
        let scrutinee = self.paren_expr()?;
        self.expect("{")?;
        let mut groups: Vec<SwitchGroup> = Vec::new();
        while !self.eat("}") {
            let mut labels = Vec::new();
            let mut saw_label = false;
            loop {
                if self.eat("case") {
                    labels.push(self.ternary()?);
                } else if self.eat("default") {
                } else {
                    break;
                }
                saw_label = true;
                if self.at("->") {
                    return self.unsupported("arrow-form switch cases");
                }
                self.expect(":")?;
            }
            if !saw_label {
                return self.error("`case` or `default`");
            }
            let mut body = Vec::new();
            while !(self.at("case") || self.at("default") || self.at("}")) {
                if self.peek().is_none() {
                    return self.error("`}` closing switch");
                }
                body.push(self.statement()?);
            }
            groups.push(SwitchGroup { labels, body });
        }
        Ok(Stmt::Switch { scrutinee, groups })
    }

    fn try_statement(&mut self) -> PResult<Stmt> {
        self.expect("try")?;
        if self.at("(") {
            return self.unsupported("try-with-resources statements");
        }
        let body = self.block()?;
        let mut catches = Vec::new();
        while self.eat("catch") {
            self.expect("(")?;
            self.modifiers()?;
            let mut types = vec![self.type_ref()?];
            while self.eat("|") {
                types.push(self.type_ref()?);
            }
            let name = self.ident()?;
            self.expect(")")?;
            let body = self.block()?;
            catches.push(CatchClause { types, name, body });
        }
        let finally = if self.eat("finally") { Some(self.block()?) } else { None };
        if catches.is_empty() && finally.is_none() {
            return self.error("`catch` or `finally`");
        }
        Ok(Stmt::Try { body, catches, finally })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let lhs = self.ternary()?;
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Punct && ASSIGN_OPS.contains(&t.text.as_str()) {
                self.pos += 1;
                let value = self.expr()?;
                return Ok(Expr::Assign {
                    target: Box::new(lhs),
                    value: Box::new(value),
                });
            }
        }
        Ok(lhs)
    }

    fn ternary(&mut self) -> PResult<Expr> {
        let cond = self.binary(1)?;
        if self.eat("?") {
            let a = self.expr()?;
            self.expect(":")?;
            let b = self.ternary()?;
            return Ok(Expr::Ternary(Box::new(cond), Box::new(a), Box::new(b)));
        }
        Ok(cond)
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while let Some(t) = self.peek() {
            if !matches!(t.kind, TokenKind::Punct | TokenKind::Keyword) {
                break;
            }
            let Some(prec) = binary_precedence(&t.text) else { break };
            if prec < min_prec {
                break;
            }
            self.pos += 1;
            if t.text == "instanceof" {
                self.eat("final");
                let ty = self.type_ref()?;
                lhs = Expr::InstanceOf { expr: Box::new(lhs), ty };
                continue;
            }
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::Binary(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Punct && matches!(t.text.as_str(), "+" | "-" | "!" | "~" | "++" | "--") {
                self.pos += 1;
                return Ok(Expr::Unary(Box::new(self.unary()?)));
            }
            if t.is("(") {
                if let Some(ty) = self.try_cast()? {
                    let expr = self.unary()?;
                    return Ok(Expr::Cast { ty, expr: Box::new(expr) });
                }
            }
        }
        self.postfix()
    }

    /// Recognize `(Type) operand`; on success the cursor sits after `)`.
    fn try_cast(&mut self) -> PResult<Option<TypeRef>> {
        let mut j = self.pos + 1;
        let first = match self.toks.get(j) {
            Some(t) => t,
            None => return Ok(None),
        };
        let primitive = first.kind == TokenKind::Keyword && PRIMITIVES.contains(&first.text.as_str());
        if primitive {
            j += 1;
        } else if first.kind == TokenKind::Ident {
            j += 1;
            while self.toks.get(j).is_some_and(|t| t.is("."))
                && self.toks.get(j + 1).is_some_and(|t| t.kind == TokenKind::Ident)
            {
                j += 2;
            }
        } else {
            return Ok(None);
        }
        while self.toks.get(j).is_some_and(|t| t.is("[")) && self.toks.get(j + 1).is_some_and(|t| t.is("]")) {
            j += 2;
        }
        if !self.toks.get(j).is_some_and(|t| t.is(")")) {
            return Ok(None);
        }
        let next = self.toks.get(j + 1);
        if next.is_some_and(|t| t.is("->")) {
            return self.unsupported("lambdas");
        }
        let operand_follows = next.is_some_and(|t| match t.kind {
            TokenKind::Ident | TokenKind::IntLit | TokenKind::FloatLit | TokenKind::StrLit | TokenKind::CharLit => true,
            TokenKind::Keyword => matches!(t.text.as_str(), "this" | "super" | "new" | "true" | "false" | "null"),
            TokenKind::Punct => matches!(t.text.as_str(), "(" | "!" | "~") || (primitive && matches!(t.text.as_str(), "-" | "+")),
        });
        if !operand_follows {
            return Ok(None);
        }
        self.pos += 1;
        let ty = self.type_ref()?;
        self.expect(")")?;
        Ok(Some(ty))
    }

    fn args(&mut self) -> PResult<Vec<Expr>> {
        self.expect("(")?;
        let mut args = Vec::new();
        if self.eat(")") {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat(")") {
                return Ok(args);
            }
            self.expect(",")?;
        }
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        loop {
            if self.at("::") {
                return self.unsupported("method references");
            }
            if self.eat(".") {
                if self.at("<") {
                    return self.unsupported("generics");
                }
                if self.eat("class") {
                    let Some(name) = e.as_dotted() else {
                        return self.error("type before `.class`");
                    };
                    e = Expr::ClassLit(TypeRef::simple(name));
                    continue;
                }
                if self.at("this") || self.at("new") {
                    return self.unsupported("inner classes");
                }
                let name = self.ident()?;
                if self.at("(") {
                    let args = self.args()?;
                    e = Expr::Call {
                        target: Some(Box::new(e)),
                        name,
                        args,
                    };
                } else {
                    e = Expr::Field {
                        target: Box::new(e),
                        name,
                    };
                }
            } else if self.at("[") {
                if self.at_offset(1, "]") {
                    // `Type[].class`
                    let Some(name) = e.as_dotted() else {
                        return self.error("expression");
                    };
                    let mut ty = TypeRef::simple(name);
                    while self.at("[") && self.at_offset(1, "]") {
                        self.pos += 2;
                        ty.array_dims += 1;
                    }
                    self.expect(".")?;
                    self.expect("class")?;
                    e = Expr::ClassLit(ty);
                    continue;
                }
                self.pos += 1;
                let index = self.expr()?;
                self.expect("]")?;
                e = Expr::Index {
                    target: Box::new(e),
                    index: Box::new(index),
                };
            } else if self.at("++") || self.at("--") {
                self.pos += 1;
                e = Expr::Unary(Box::new(e));
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let Some(t) = self.peek() else {
            return self.error("expression");
        };
        match t.kind {
            TokenKind::IntLit | TokenKind::FloatLit | TokenKind::StrLit | TokenKind::CharLit => {
                self.pos += 1;
                Ok(Expr::Literal)
            }
            TokenKind::Ident => {
                if self.at_offset(1, "->") {
                    return self.unsupported("lambdas");
                }
                let name = self.bump().text.clone();
                if self.at("(") {
                    let args = self.args()?;
                    Ok(Expr::Call { target: None, name, args })
                } else {
                    Ok(Expr::Name(name))
                }
            }
            TokenKind::Keyword => match t.text.as_str() {
                "true" | "false" | "null" => {
                    self.pos += 1;
                    Ok(Expr::Literal)
                }
                "this" | "super" => {
                    let name = self.bump().text.clone();
                    if self.at("(") {
                        let args = self.args()?;
                        return Ok(Expr::Call { target: None, name, args });
                    }
                    Ok(if name == "this" { Expr::This } else { Expr::Super })
                }
                "new" => self.new_expr(),
                p if PRIMITIVES.contains(&p) => {
                    // `int.class` / `int[].class`
                    let mut ty = self.type_ref()?;
                    while self.at("[") && self.at_offset(1, "]") {
                        self.pos += 2;
                        ty.array_dims += 1;
                    }
                    self.expect(".")?;
                    self.expect("class")?;
                    Ok(Expr::ClassLit(ty))
                }
                "switch" => self.unsupported("switch expressions"),
                _ => self.error("expression"),
            },
            TokenKind::Punct => {
                if t.is("(") {
                    if self.paren_is_lambda() {
                        return self.unsupported("lambdas");
                    }
                    return self.paren_expr();
                }
                self.error("expression")
            }
        }
    }

    fn paren_is_lambda(&self) -> bool {
        let mut depth = 0usize;
        let mut j = self.pos;
        while let Some(t) = self.toks.get(j) {
            if t.is("(") {
                depth += 1;
            } else if t.is(")") {
                depth -= 1;
                if depth == 0 {
                    return self.toks.get(j + 1).is_some_and(|t| t.is("->"));
                }
            }
            j += 1;
        }
        false
    }

    fn new_expr(&mut self) -> PResult<Expr> {
        self.expect("new")?;
        let name = match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.text.as_str()) => self.bump().text.clone(),
            Some(t) if t.kind == TokenKind::Ident => self.dotted_name()?,
            _ => return self.error("type after `new`"),
        };
        if self.at("<") {
            return self.unsupported("generics");
        }
        let mut ty = TypeRef::simple(name);
        if self.at("[") {
            let mut dims = Vec::new();
            while self.eat("[") {
                if self.eat("]") {
                    ty.array_dims += 1;
                    continue;
                }
                dims.push(self.expr()?);
                self.expect("]")?;
                ty.array_dims += 1;
            }
            let init = if self.at("{") {
                match self.array_init()? {
                    Expr::ArrayInit(items) => Some(items),
                    _ => unreachable!(),
                }
            } else {
                None
            };
            return Ok(Expr::NewArray { ty, dims, init });
        }
        let args = self.args()?;
        if self.at("{") {
            return self.unsupported("anonymous classes");
        }
        Ok(Expr::New { ty, args })
    }
}
