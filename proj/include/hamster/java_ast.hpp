// SPDX-License-Identifier: Apache-2.0
//
// Language-neutral syntax model for Java sources. The parser produces this
// model on a best-effort basis; downstream analyzers consume it exclusively
// and never touch raw source text.
#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hamster::java {

struct Pos {
    int line = 0;
    int column = 0;

    friend auto operator<=>(const Pos&, const Pos&) = default;
};

enum class ExprKind {
    Literal,        // name = literal text, aux = literal kind ("string","int","char",...)
    Name,           // name = identifier
    This,
    Super,
    FieldAccess,    // target.name
    MethodCall,     // target? .name(args)
    ObjectCreation, // new type_name(args) [anon_body]
    ArrayCreation,  // new type_name[...]{...}
    MethodRef,      // target::name
    Lambda,         // args = parameter Names; target = expr body, body = block body
    Binary,         // name = operator, target op rhs
    Unary,          // name = operator, target
    Assign,         // name = operator, target = lhs, rhs
    Ternary,        // cond ? target : rhs
    ArrayAccess,    // target[rhs]
    Cast,           // (type_name) target
    ClassLiteral,   // type_name.class
    InstanceOf,     // target instanceof type_name
    ArrayInit,      // { args... }
    SwitchExpr,     // switch expression; body = equivalent switch statement
    Unknown
};

enum class StmtKind {
    Block,     // stmts
    If,        // exprs[0] = cond; stmts[0] = then, stmts[1]? = else
    While,     // exprs[0] = cond; stmts[0] = body
    DoWhile,   // stmts[0] = body; exprs[0] = cond
    For,       // exprs = init/cond/update expressions; stmts[0]? = init decl, last = body
    ForEach,   // name/declared_type = loop var; exprs[0] = iterable; stmts[0] = body
    Switch,    // exprs[0] = selector; stmts = Case nodes
    Case,      // name = "case" or "default"; exprs = label exprs; stmts = body
    Try,       // exprs = plain resource exprs; stmts = resource LocalVars, body Block, Catch nodes, optional finally Block
    Catch,     // declared_type = exception type(s); stmts[0] = body
    Return,    // exprs[0]? = value
    Throw,     // exprs[0]
    ExprStmt,  // exprs[0]
    LocalVar,  // declared_type; one (name, exprs[i] initializer or null) per declarator
    Break,
    Continue,
    Synchronized,  // exprs[0] = monitor; stmts[0] = body
    Assert,        // exprs = condition[, message]
    Yield,         // exprs[0]
    Labeled,       // name = label; stmts[0] = statement
    Empty,
    Unknown
};

struct Stmt;
struct TypeDeclModel;

struct Expr {
    ExprKind kind = ExprKind::Unknown;
    Pos pos;
    std::string name;       // identifier / method name / operator / literal text
    std::string aux;        // literal kind, etc.
    std::string type_name;  // raw type text for creations, casts, class literals, instanceof
    std::unique_ptr<Expr> target;
    std::unique_ptr<Expr> rhs;
    std::unique_ptr<Expr> cond;
    std::vector<std::unique_ptr<Expr>> args;
    std::unique_ptr<Stmt> body;                 // lambda block body / switch-expr body
    std::unique_ptr<TypeDeclModel> anon_body;   // anonymous subclass members
};

struct Stmt {
    StmtKind kind = StmtKind::Unknown;
    Pos pos;
    std::string name;
    std::string declared_type;
    std::vector<std::string> extra_names;  // further declarators of a LocalVar
    std::vector<std::unique_ptr<Expr>> exprs;
    std::vector<std::unique_ptr<Stmt>> stmts;
};

struct AnnotationUse {
    std::string name;       // as written, possibly qualified
    std::string args_text;  // raw text inside (...), empty when absent
    Pos pos;
};

struct ParamModel {
    std::string type;
    std::string name;
};

struct FieldModel {
    std::string name;
    std::string declared_type;
    std::unique_ptr<Expr> initializer;  // may be null
    std::vector<AnnotationUse> annotations;
    std::set<std::string> modifiers;
    Pos pos;
};

struct MethodModel {
    std::string name;
    std::vector<ParamModel> parameters;
    std::set<std::string> modifiers;  // public/protected/private/static/abstract
    std::vector<AnnotationUse> annotations;
    std::string return_type;
    std::unique_ptr<Stmt> body;  // null when abstract or interface-declared
    int start_line = 0;
    int end_line = 0;
    bool is_constructor = false;

    // name(paramType,paramType) with generics erased
    std::string signature() const;
};

enum class TypeKind { Class, Interface, Enum, Record, Annotation };

struct TypeDeclModel {
    std::string simple_name;
    std::string qualified_name;  // package + enclosing names, '$' for nesting
    TypeKind kind = TypeKind::Class;
    std::vector<AnnotationUse> annotations;
    std::set<std::string> modifiers;
    std::string superclass;  // raw extends target, empty when absent
    std::vector<std::string> interfaces;
    std::vector<MethodModel> methods;
    std::vector<FieldModel> fields;
    std::vector<std::unique_ptr<Stmt>> initializer_blocks;
    std::vector<TypeDeclModel> nested;
    Pos pos;
};

struct ImportDecl {
    std::string path;
    bool is_wildcard = false;
    bool is_static = false;
};

struct ParseError {
    Pos pos;
    std::string message;
};

struct CompilationUnitModel {
    std::string source_path;
    std::string package_name;
    std::vector<ImportDecl> imports;
    std::vector<TypeDeclModel> type_decls;
    std::vector<ParseError> parse_errors;
    std::vector<int> token_lines;  // sorted lines carrying at least one non-comment token
};

// Strips generic arguments and array brackets: "Map<K, V>[]" -> "Map".
std::string erase_generics(const std::string& type_text);

// Last dotted segment of a (possibly qualified, generics-erased) type name.
std::string simple_type_name(const std::string& type_text);

// Total over arbitrary input: invalid syntax yields a partial model plus
// parse_errors, never a crash.
CompilationUnitModel parse_source(const std::string& text, const std::string& path);

}  // namespace hamster::java
