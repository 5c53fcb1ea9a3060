// SPDX-License-Identifier: Apache-2.0
//
// Hand-rolled, fault-tolerant Java frontend. It is not a compiler: it
// recovers the declaration structure, statement shapes, and expression
// trees the analyzers need, and degrades to partial models with recorded
// errors on anything it cannot handle.
#include "hamster/java_ast.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace hamster::java {

namespace {

enum class TokKind { Word, Number, Str, CharLit, TextBlock, Punct, Eof };

struct Token {
    TokKind kind = TokKind::Eof;
    std::string text;
    Pos pos;
    int end_line = 0;
    bool adjacent_prev = false;  // no whitespace between this token and the previous one
};

const std::unordered_set<std::string> kKeywords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class",
    "const", "continue", "default", "do", "double", "else", "enum", "extends", "final",
    "finally", "float", "for", "goto", "if", "implements", "import", "instanceof", "int",
    "interface", "long", "native", "new", "package", "private", "protected", "public",
    "return", "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while",
    // contextual keywords are handled as identifiers: var, record, yield, sealed, permits
};

const std::unordered_set<std::string> kModifiers = {
    "public", "protected", "private", "static", "abstract", "final", "native",
    "synchronized", "transient", "volatile", "strictfp", "default", "sealed", "non-sealed",
};

const std::unordered_set<std::string> kPrimitives = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
};

struct Lexer {
    const std::string& src;
    size_t i = 0;
    int line = 1, col = 1;
    std::vector<Token> tokens;
    std::vector<ParseError> errors;
    std::vector<int> token_lines;

    explicit Lexer(const std::string& s) : src(s) {}

    char cur() const { return i < src.size() ? src[i] : '\0'; }
    char at(size_t k) const { return i + k < src.size() ? src[i + k] : '\0'; }

    void advance() {
        if (i >= src.size()) return;
        if (src[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    }

    void mark_lines(int from, int to) {
        for (int l = from; l <= to; ++l)
            if (token_lines.empty() || token_lines.back() != l) token_lines.push_back(l);
    }

    void push(TokKind kind, std::string text, Pos pos, int end_line, bool adjacent) {
        mark_lines(pos.line, end_line);
        tokens.push_back({kind, std::move(text), pos, end_line, adjacent});
    }

    void run() {
        bool adjacent = false;
        while (i < src.size()) {
            char c = cur();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                adjacent = false;
                continue;
            }
            if (c == '/' && at(1) == '/') {
                while (i < src.size() && cur() != '\n') advance();
                adjacent = false;
                continue;
            }
            if (c == '/' && at(1) == '*') {
                advance();
                advance();
                while (i < src.size() && !(cur() == '*' && at(1) == '/')) advance();
                advance();
                advance();
                adjacent = false;
                continue;
            }
            Pos pos{line, col};
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
                std::string w;
                while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_' ||
                       cur() == '$') {
                    w += cur();
                    advance();
                }
                push(TokKind::Word, std::move(w), pos, pos.line, adjacent);
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && std::isdigit(static_cast<unsigned char>(at(1))))) {
                std::string n;
                bool is_float = false;
                while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_' ||
                       cur() == '.' ||
                       ((cur() == '+' || cur() == '-') &&
                        (n.size() && (std::tolower(n.back()) == 'e' ||
                                      std::tolower(n.back()) == 'p')))) {
                    if (cur() == '.') {
                        // stop on "1..2" style ranges (not valid Java anyway)
                        if (!std::isdigit(static_cast<unsigned char>(at(1))) && is_float) break;
                        if (!std::isdigit(static_cast<unsigned char>(at(1))) &&
                            !std::isalpha(static_cast<unsigned char>(at(1))))
                            break;
                        is_float = true;
                    }
                    n += cur();
                    advance();
                }
                push(TokKind::Number, std::move(n), pos, pos.line, adjacent);
            } else if (c == '"' && at(1) == '"' && at(2) == '"') {
                advance();
                advance();
                advance();
                std::string s;
                while (i < src.size() && !(cur() == '"' && at(1) == '"' && at(2) == '"')) {
                    if (cur() == '\\') {
                        s += cur();
                        advance();
                    }
                    if (i < src.size()) {
                        s += cur();
                        advance();
                    }
                }
                if (i >= src.size())
                    errors.push_back({pos, "unterminated text block"});
                advance();
                advance();
                advance();
                push(TokKind::TextBlock, std::move(s), pos, line, adjacent);
            } else if (c == '"') {
                advance();
                std::string s;
                while (i < src.size() && cur() != '"' && cur() != '\n') {
                    if (cur() == '\\') {
                        advance();
                        if (i < src.size()) {
                            s += src[i];
                            advance();
                        }
                    } else {
                        s += cur();
                        advance();
                    }
                }
                if (cur() != '"') errors.push_back({pos, "unterminated string literal"});
                advance();
                push(TokKind::Str, std::move(s), pos, pos.line, adjacent);
            } else if (c == '\'') {
                advance();
                std::string s;
                while (i < src.size() && cur() != '\'' && cur() != '\n') {
                    if (cur() == '\\') {
                        s += cur();
                        advance();
                    }
                    if (i < src.size()) {
                        s += cur();
                        advance();
                    }
                }
                if (cur() != '\'') errors.push_back({pos, "unterminated char literal"});
                advance();
                push(TokKind::CharLit, std::move(s), pos, pos.line, adjacent);
            } else {
                // '>' is always lexed alone so nested generics close cleanly;
                // the parser reassembles shift operators from adjacency.
                static const char* kMulti[] = {
                    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
                    "<=",  ">=",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<",
                };
                std::string op(1, c);
                for (const char* m : kMulti) {
                    size_t len = std::char_traits<char>::length(m);
                    if (src.compare(i, len, m) == 0) {
                        op = m;
                        break;
                    }
                }
                for (size_t k = 0; k < op.size(); ++k) advance();
                push(TokKind::Punct, std::move(op), pos, pos.line, adjacent);
            }
            adjacent = true;
        }
        push(TokKind::Eof, "", {line, col}, line, false);
    }
};

struct Parser {
    std::vector<Token> toks;
    size_t p = 0;
    CompilationUnitModel unit;
    int depth_guard = 0;

    const Token& tk(size_t off = 0) const {
        size_t k = p + off;
        return k < toks.size() ? toks[k] : toks.back();
    }
    bool word(const char* w, size_t off = 0) const {
        return tk(off).kind == TokKind::Word && tk(off).text == w;
    }
    bool punct(const char* s, size_t off = 0) const {
        return tk(off).kind == TokKind::Punct && tk(off).text == s;
    }
    bool is_ident(size_t off = 0) const {
        return tk(off).kind == TokKind::Word && !kKeywords.count(tk(off).text);
    }
    void next() {
        if (p + 1 < toks.size()) ++p;
    }
    bool accept(const char* s) {
        if (punct(s)) {
            next();
            return true;
        }
        return false;
    }
    bool accept_word(const char* w) {
        if (word(w)) {
            next();
            return true;
        }
        return false;
    }
    void error(const std::string& msg) { unit.parse_errors.push_back({tk().pos, msg}); }
    bool expect(const char* s, const char* what) {
        if (accept(s)) return true;
        error(std::string("expected '") + s + "' " + what);
        return false;
    }
    bool eof() const { return tk().kind == TokKind::Eof; }

    // Skips a balanced run starting at the current open token.
    void skip_balanced(const char* open, const char* close) {
        if (!punct(open)) return;
        int depth = 0;
        while (!eof()) {
            if (punct(open)) ++depth;
            else if (punct(close)) {
                if (--depth == 0) {
                    next();
                    return;
                }
            }
            next();
        }
    }

    void skip_to_sync() {
        int brace = 0;
        while (!eof()) {
            if (punct("{")) ++brace;
            if (punct("}")) {
                if (brace == 0) return;
                --brace;
            }
            if (punct(";") && brace == 0) {
                next();
                return;
            }
            next();
        }
    }

    // ---- types ----

    bool looks_like_type_start() const {
        return is_ident() || (tk().kind == TokKind::Word && kPrimitives.count(tk().text)) ||
               punct("@");
    }

    // Parses a type and returns its raw text; empty string on failure
    // (position restored by the caller via save/restore).
    std::string parse_type() {
        std::string out;
        while (punct("@")) {  // type annotations
            next();
            if (is_ident()) next();
            if (punct("(")) skip_balanced("(", ")");
        }
        if (tk().kind == TokKind::Word && kPrimitives.count(tk().text)) {
            out = tk().text;
            next();
        } else if (is_ident()) {
            out = tk().text;
            next();
            while (punct(".") && is_ident(1)) {
                out += ".";
                out += tk(1).text;
                next();
                next();
            }
        } else {
            return "";
        }
        if (punct("<")) out += parse_type_args();
        // qualified generic: a.b.C<T>.D
        while (punct(".") && is_ident(1)) {
            out += "." + tk(1).text;
            next();
            next();
            if (punct("<")) out += parse_type_args();
        }
        while (punct("[") && punct("]", 1)) {
            out += "[]";
            next();
            next();
        }
        if (punct("...")) {
            out += "[]";
            next();
        }
        return out;
    }

    std::string parse_type_args() {
        // '>' tokens are single, so a plain depth counter works.
        std::string out;
        int depth = 0;
        int guard = 0;
        while (!eof() && guard++ < 4000) {
            if (punct("<")) ++depth;
            if (punct(">")) --depth;
            out += tk().text;
            next();
            if (depth == 0) break;
            if (punct(";") || punct("{")) break;  // damaged input
        }
        return out;
    }

    std::vector<AnnotationUse> parse_annotations() {
        std::vector<AnnotationUse> anns;
        while (punct("@") && tk(1).kind == TokKind::Word && tk(1).text != "interface") {
            AnnotationUse a;
            a.pos = tk().pos;
            next();
            a.name = tk().text;
            next();
            while (punct(".") && is_ident(1)) {
                a.name += "." + tk(1).text;
                next();
                next();
            }
            if (punct("(")) {
                size_t start = p;
                skip_balanced("(", ")");
                for (size_t k = start + 1; k + 1 < p; ++k) {
                    if (!a.args_text.empty()) a.args_text += " ";
                    a.args_text += toks[k].text;
                }
            }
            anns.push_back(std::move(a));
        }
        return anns;
    }

    // ---- expressions ----

    std::unique_ptr<Expr> make(ExprKind k, Pos pos) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->pos = pos;
        return e;
    }

    std::unique_ptr<Expr> parse_expression() {
        if (++depth_guard > 400) {
            --depth_guard;
            error("expression nesting too deep");
            auto e = make(ExprKind::Unknown, tk().pos);
            skip_to_sync();
            return e;
        }
        auto e = parse_assignment();
        --depth_guard;
        return e;
    }

    std::unique_ptr<Expr> parse_assignment() {
        auto lhs = parse_ternary();
        static const char* kAssignOps[] = {"=",  "+=", "-=", "*=", "/=", "%=",
                                           "&=", "|=", "^=", "<<="};
        for (const char* op : kAssignOps) {
            if (punct(op)) {
                auto e = make(ExprKind::Assign, tk().pos);
                e->name = op;
                next();
                e->target = std::move(lhs);
                e->rhs = parse_assignment();
                return e;
            }
        }
        // >>= / >>>= reassembled from '>' followed by a greedy '>=' token
        if (punct(">") &&
            ((punct(">=", 1) && tk(1).adjacent_prev) ||
             (punct(">", 1) && tk(1).adjacent_prev && punct(">=", 2) && tk(2).adjacent_prev))) {
            size_t n = punct(">=", 1) ? 2 : 3;
            auto e = make(ExprKind::Assign, tk().pos);
            e->name = n == 2 ? ">>=" : ">>>=";
            for (size_t j = 0; j < n; ++j) next();
            e->target = std::move(lhs);
            e->rhs = parse_assignment();
            return e;
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_ternary() {
        auto c = parse_binary(0);
        if (punct("?")) {
            auto e = make(ExprKind::Ternary, tk().pos);
            next();
            e->cond = std::move(c);
            e->target = parse_expression();
            expect(":", "in conditional expression");
            e->rhs = parse_ternary();
            return e;
        }
        return c;
    }

    // Precedence levels, loosest first.
    int binary_prec(std::string& op_out) {
        static const struct {
            const char* op;
            int prec;
        } kOps[] = {
            {"||", 1}, {"&&", 2}, {"|", 3}, {"^", 4}, {"&", 5}, {"==", 6}, {"!=", 6},
            {"<", 7},  {"<=", 7}, {">=", 7}, {"<<", 8}, {"+", 9}, {"-", 9}, {"*", 10},
            {"/", 10}, {"%", 10},
        };
        if (tk().kind == TokKind::Punct) {
            if (tk().text == ">") {
                if (punct(">=", 1) && tk(1).adjacent_prev) return -1;  // >>= assignment
                if (punct(">", 1) && tk(1).adjacent_prev) {
                    if (punct(">=", 2) && tk(2).adjacent_prev) return -1;  // >>>=
                    op_out = (punct(">", 2) && tk(2).adjacent_prev) ? ">>>" : ">>";
                    return 8;
                }
                op_out = ">";
                return 7;
            }
            for (const auto& o : kOps)
                if (tk().text == o.op) {
                    op_out = o.op;
                    return o.prec;
                }
        }
        if (word("instanceof")) {
            op_out = "instanceof";
            return 7;
        }
        return -1;
    }

    std::unique_ptr<Expr> parse_binary(int min_prec) {
        auto lhs = parse_unary();
        while (true) {
            std::string op;
            int prec = binary_prec(op);
            if (prec < 0 || prec < min_prec) break;
            Pos pos = tk().pos;
            if (op == "instanceof") {
                next();
                accept_word("final");
                auto e = make(ExprKind::InstanceOf, pos);
                e->target = std::move(lhs);
                e->type_name = parse_type();
                if (is_ident()) next();  // pattern variable
                lhs = std::move(e);
                continue;
            }
            for (size_t k = 0; k < (op == ">>>" ? 3u : (op == ">>" ? 2u : 1u)); ++k) next();
            auto e = make(ExprKind::Binary, pos);
            e->name = op;
            e->target = std::move(lhs);
            e->rhs = parse_binary(prec + 1);
            lhs = std::move(e);
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_unary() {
        Pos pos = tk().pos;
        if (punct("!") || punct("~") || punct("+") || punct("-") || punct("++") ||
            punct("--")) {
            auto e = make(ExprKind::Unary, pos);
            e->name = tk().text;
            next();
            e->target = parse_unary();
            return e;
        }
        // cast
        if (punct("(")) {
            size_t save = p;
            next();
            std::string ty = parse_type();
            if (!ty.empty() && punct(")")) {
                next();
                bool castable = is_ident() || tk().kind == TokKind::Number ||
                                tk().kind == TokKind::Str || tk().kind == TokKind::CharLit ||
                                tk().kind == TokKind::TextBlock || punct("(") || punct("!") ||
                                punct("~") || word("new") || word("this") || word("super") ||
                                word("true") || word("false") || word("null");
                // `(name) + x` and `(name) - x` are arithmetic, not casts
                if (castable && !(punct("+") || punct("-"))) {
                    auto e = make(ExprKind::Cast, pos);
                    e->type_name = ty;
                    e->target = parse_unary();
                    return e;
                }
            }
            p = save;
        }
        return parse_postfix();
    }

    std::vector<std::unique_ptr<Expr>> parse_arguments() {
        std::vector<std::unique_ptr<Expr>> args;
        expect("(", "before arguments");
        if (accept(")")) return args;
        int guard = 0;
        while (!eof() && guard++ < 10000) {
            args.push_back(parse_expression());
            if (accept(")")) return args;
            if (!accept(",")) {
                error("expected ',' or ')' in argument list");
                skip_to_sync();
                return args;
            }
        }
        return args;
    }

    std::unique_ptr<Expr> parse_postfix() {
        auto e = parse_primary();
        int guard = 0;
        while (!eof() && guard++ < 10000) {
            Pos pos = tk().pos;
            if (punct(".")) {
                // generic method call: x.<T>foo(...)
                if (punct("<", 1)) {
                    next();
                    parse_type_args();
                    if (is_ident() && punct("(", 1)) {
                        auto call = make(ExprKind::MethodCall, pos);
                        call->name = tk().text;
                        next();
                        call->target = std::move(e);
                        call->args = parse_arguments();
                        e = std::move(call);
                        continue;
                    }
                    continue;
                }
                if (word("class", 1)) {  // Foo.Bar.class
                    auto cl = make(ExprKind::ClassLiteral, pos);
                    cl->type_name = flatten_name(e.get());
                    next();
                    next();
                    e = std::move(cl);
                    continue;
                }
                if (word("this", 1) || word("super", 1)) {
                    auto fa = make(ExprKind::FieldAccess, pos);
                    fa->name = tk(1).text;
                    next();
                    next();
                    fa->target = std::move(e);
                    e = std::move(fa);
                    continue;
                }
                if (word("new", 1)) {  // qualified creation outer.new Inner()
                    next();
                    e = parse_new(pos);
                    continue;
                }
                if (!is_ident(1)) {
                    error("unexpected token after '.'");
                    next();
                    continue;
                }
                std::string nm = tk(1).text;
                if (punct("(", 2)) {
                    auto call = make(ExprKind::MethodCall, pos);
                    call->name = nm;
                    next();
                    next();
                    call->target = std::move(e);
                    call->args = parse_arguments();
                    e = std::move(call);
                } else {
                    auto fa = make(ExprKind::FieldAccess, pos);
                    fa->name = nm;
                    next();
                    next();
                    fa->target = std::move(e);
                    e = std::move(fa);
                }
            } else if (punct("::")) {
                auto mr = make(ExprKind::MethodRef, pos);
                next();
                if (punct("<")) parse_type_args();
                if (word("new"))
                    mr->name = "new";
                else if (tk().kind == TokKind::Word)
                    mr->name = tk().text;
                next();
                mr->target = std::move(e);
                e = std::move(mr);
            } else if (punct("[")) {
                auto ix = make(ExprKind::ArrayAccess, pos);
                next();
                ix->target = std::move(e);
                if (!punct("]")) ix->rhs = parse_expression();
                expect("]", "after array index");
                e = std::move(ix);
            } else if (punct("++") || punct("--")) {
                auto u = make(ExprKind::Unary, pos);
                u->name = "post" + tk().text;
                next();
                u->target = std::move(e);
                e = std::move(u);
            } else {
                break;
            }
        }
        return e;
    }

    static std::string flatten_name(const Expr* e) {
        if (!e) return "";
        if (e->kind == ExprKind::Name) return e->name;
        if (e->kind == ExprKind::FieldAccess) {
            std::string base = flatten_name(e->target.get());
            return base.empty() ? e->name : base + "." + e->name;
        }
        return "";
    }

    // Scans ahead from an opening paren; true when the matching ')' is
    // immediately followed by '->'.
    bool paren_starts_lambda() const {
        size_t k = p;
        int depth = 0;
        while (k < toks.size() && toks[k].kind != TokKind::Eof) {
            const auto& t = toks[k];
            if (t.kind == TokKind::Punct) {
                if (t.text == "(") ++depth;
                else if (t.text == ")") {
                    if (--depth == 0)
                        return k + 1 < toks.size() && toks[k + 1].kind == TokKind::Punct &&
                               toks[k + 1].text == "->";
                } else if (t.text == ";" || t.text == "{") {
                    return false;
                }
            }
            ++k;
        }
        return false;
    }

    std::unique_ptr<Expr> parse_lambda(Pos pos) {
        auto e = make(ExprKind::Lambda, pos);
        if (punct("(")) {
            next();
            while (!eof() && !punct(")")) {
                // typed or untyped parameter; keep the trailing identifier
                std::string last;
                while (!eof() && !punct(",") && !punct(")")) {
                    if (tk().kind == TokKind::Word) last = tk().text;
                    if (punct("<")) {
                        parse_type_args();
                        continue;
                    }
                    next();
                }
                if (!last.empty()) {
                    auto param = make(ExprKind::Name, pos);
                    param->name = last;
                    e->args.push_back(std::move(param));
                }
                accept(",");
            }
            accept(")");
        } else if (is_ident()) {
            auto param = make(ExprKind::Name, tk().pos);
            param->name = tk().text;
            next();
            e->args.push_back(std::move(param));
        }
        expect("->", "in lambda");
        if (punct("{"))
            e->body = parse_block();
        else
            e->target = parse_expression();
        return e;
    }

    std::unique_ptr<Expr> parse_new(Pos pos) {
        next();  // 'new'
        std::string base;
        while (punct("@")) {
            next();
            if (is_ident()) next();
            if (punct("(")) skip_balanced("(", ")");
        }
        if (tk().kind == TokKind::Word) {
            base = tk().text;
            next();
            while (punct(".") && is_ident(1)) {
                base += "." + tk(1).text;
                next();
                next();
            }
        }
        if (punct("<")) parse_type_args();  // includes diamond
        if (punct("[")) {
            auto arr = make(ExprKind::ArrayCreation, pos);
            arr->type_name = base;
            int guard = 0;
            while (punct("[") && guard++ < 255) {
                next();
                if (!punct("]")) arr->args.push_back(parse_expression());
                expect("]", "in array creation");
            }
            if (punct("{")) arr->rhs = parse_array_init();
            return arr;
        }
        auto e = make(ExprKind::ObjectCreation, pos);
        e->type_name = base;
        if (punct("("))
            e->args = parse_arguments();
        else
            error("expected '(' in object creation");
        if (punct("{")) {
            auto anon = std::make_unique<TypeDeclModel>();
            anon->simple_name = "<anonymous>";
            anon->qualified_name = "<anonymous>";
            anon->superclass = erase_generics(base);
            anon->pos = tk().pos;
            parse_class_body(*anon, TypeKind::Class);
            e->anon_body = std::move(anon);
        }
        return e;
    }

    std::unique_ptr<Expr> parse_array_init() {
        auto e = make(ExprKind::ArrayInit, tk().pos);
        expect("{", "in array initializer");
        while (!eof() && !punct("}")) {
            if (punct("{"))
                e->args.push_back(parse_array_init());
            else
                e->args.push_back(parse_expression());
            if (!accept(",") && !punct("}")) {
                error("malformed array initializer");
                skip_to_sync();
                break;
            }
        }
        accept("}");
        return e;
    }

    std::unique_ptr<Expr> parse_primary() {
        Pos pos = tk().pos;
        switch (tk().kind) {
            case TokKind::Number: {
                auto e = make(ExprKind::Literal, pos);
                e->name = tk().text;
                e->aux = (e->name.find('.') != std::string::npos ||
                          e->name.find('e') != std::string::npos ||
                          e->name.find('E') != std::string::npos ||
                          (e->name.size() &&
                           (std::tolower(e->name.back()) == 'f' ||
                            std::tolower(e->name.back()) == 'd') &&
                           e->name.compare(0, 2, "0x") != 0))
                             ? "float"
                             : "int";
                next();
                return e;
            }
            case TokKind::Str:
            case TokKind::TextBlock: {
                auto e = make(ExprKind::Literal, pos);
                e->name = tk().text;
                e->aux = tk().kind == TokKind::Str ? "string" : "textblock";
                next();
                return e;
            }
            case TokKind::CharLit: {
                auto e = make(ExprKind::Literal, pos);
                e->name = tk().text;
                e->aux = "char";
                next();
                return e;
            }
            default:
                break;
        }
        if (word("true") || word("false")) {
            auto e = make(ExprKind::Literal, pos);
            e->name = tk().text;
            e->aux = "bool";
            next();
            return e;
        }
        if (word("null")) {
            auto e = make(ExprKind::Literal, pos);
            e->name = "null";
            e->aux = "null";
            next();
            return e;
        }
        if (word("this")) {
            next();
            if (punct("(")) {  // this(...) constructor delegation
                auto call = make(ExprKind::MethodCall, pos);
                call->name = "this";
                call->args = parse_arguments();
                return call;
            }
            return make(ExprKind::This, pos);
        }
        if (word("super")) {
            next();
            if (punct("(")) {
                auto call = make(ExprKind::MethodCall, pos);
                call->name = "super";
                call->args = parse_arguments();
                return call;
            }
            return make(ExprKind::Super, pos);
        }
        if (word("new")) return parse_new(pos);
        if (word("switch")) {
            auto e = make(ExprKind::SwitchExpr, pos);
            e->body = parse_switch();
            return e;
        }
        if (word("void") && punct(".", 1) && word("class", 2)) {
            auto e = make(ExprKind::ClassLiteral, pos);
            e->type_name = "void";
            next();
            next();
            next();
            return e;
        }
        if (tk().kind == TokKind::Word && kPrimitives.count(tk().text)) {
            // primitive class literal or array-of-primitive literal
            std::string ty = tk().text;
            next();
            while (punct("[") && punct("]", 1)) {
                ty += "[]";
                next();
                next();
            }
            if (punct(".") && word("class", 1)) {
                auto e = make(ExprKind::ClassLiteral, pos);
                e->type_name = ty;
                next();
                next();
                return e;
            }
            auto e = make(ExprKind::Name, pos);
            e->name = ty;
            return e;
        }
        if (punct("(")) {
            if (paren_starts_lambda()) return parse_lambda(pos);
            next();
            auto e = parse_expression();
            expect(")", "after parenthesized expression");
            return e;
        }
        if (is_ident()) {
            if (punct("->", 1)) return parse_lambda(pos);
            std::string nm = tk().text;
            next();
            if (punct("(")) {
                auto call = make(ExprKind::MethodCall, pos);
                call->name = nm;
                call->args = parse_arguments();
                return call;
            }
            auto e = make(ExprKind::Name, pos);
            e->name = nm;
            return e;
        }
        error("unexpected token '" + tk().text + "' in expression");
        auto e = make(ExprKind::Unknown, pos);
        if (!eof()) next();
        return e;
    }

    // ---- statements ----

    std::unique_ptr<Stmt> make_stmt(StmtKind k, Pos pos) {
        auto s = std::make_unique<Stmt>();
        s->kind = k;
        s->pos = pos;
        return s;
    }

    std::unique_ptr<Stmt> parse_block() {
        auto b = make_stmt(StmtKind::Block, tk().pos);
        expect("{", "at block start");
        int guard = 0;
        while (!eof() && !punct("}")) {
            size_t before = p;
            b->stmts.push_back(parse_statement());
            if (p == before) {
                error("parser stuck in block; skipping token '" + tk().text + "'");
                next();
            }
            if (++guard > 100000) break;
        }
        accept("}");
        return b;
    }

    // Local variable declaration attempt: Type ident [= expr] (, ident [= expr])* ;
    std::unique_ptr<Stmt> try_local_var(Pos pos) {
        size_t save = p;
        parse_annotations();
        while (accept_word("final")) {}
        std::string ty = word("var") ? (next(), std::string("var")) : parse_type();
        if (ty.empty() || !is_ident() ||
            !(punct("=", 1) || punct(";", 1) || punct(",", 1) || punct(":", 1))) {
            p = save;
            return nullptr;
        }
        if (punct(":", 1)) {  // actually a foreach header fragment; caller handles
            p = save;
            return nullptr;
        }
        auto s = make_stmt(StmtKind::LocalVar, pos);
        s->declared_type = ty;
        s->name = tk().text;
        next();
        if (accept("=")) {
            if (punct("{"))
                s->exprs.push_back(parse_array_init());
            else
                s->exprs.push_back(parse_expression());
        } else {
            s->exprs.push_back(nullptr);
        }
        while (accept(",")) {
            if (!is_ident()) break;
            s->extra_names.push_back(tk().text);
            next();
            if (accept("=")) {
                if (punct("{"))
                    s->exprs.push_back(parse_array_init());
                else
                    s->exprs.push_back(parse_expression());
            } else {
                s->exprs.push_back(nullptr);
            }
        }
        if (!accept(";")) {
            p = save;
            return nullptr;
        }
        return s;
    }

    std::unique_ptr<Stmt> parse_switch() {
        auto s = make_stmt(StmtKind::Switch, tk().pos);
        next();  // 'switch'
        expect("(", "after switch");
        s->exprs.push_back(parse_expression());
        expect(")", "after switch selector");
        expect("{", "at switch body");
        std::unique_ptr<Stmt> current;
        int guard = 0;
        while (!eof() && !punct("}") && guard++ < 100000) {
            if (word("case") || word("default")) {
                if (current) s->stmts.push_back(std::move(current));
                current = make_stmt(StmtKind::Case, tk().pos);
                current->name = tk().text;
                next();
                if (current->name == "case") {
                    // labels: expressions or type patterns, comma separated
                    while (!eof() && !punct(":") && !punct("->")) {
                        current->exprs.push_back(parse_expression());
                        if (!accept(",")) break;
                    }
                }
                if (!accept(":") && !accept("->")) {
                    error("expected ':' or '->' after switch label");
                    skip_to_sync();
                }
                if (punct("{")) {
                    current->stmts.push_back(parse_block());
                } else if (!word("case") && !word("default") && !punct("}")) {
                    // arrow form takes exactly one statement/expression
                }
                continue;
            }
            if (!current) current = make_stmt(StmtKind::Case, tk().pos);
            size_t before = p;
            current->stmts.push_back(parse_statement());
            if (p == before) next();
        }
        if (current) s->stmts.push_back(std::move(current));
        accept("}");
        return s;
    }

    std::unique_ptr<Stmt> parse_statement() {
        Pos pos = tk().pos;
        if (punct("{")) return parse_block();
        if (accept(";")) return make_stmt(StmtKind::Empty, pos);
        if (word("if")) {
            auto s = make_stmt(StmtKind::If, pos);
            next();
            expect("(", "after if");
            s->exprs.push_back(parse_expression());
            expect(")", "after if condition");
            s->stmts.push_back(parse_statement());
            if (accept_word("else")) s->stmts.push_back(parse_statement());
            return s;
        }
        if (word("while")) {
            auto s = make_stmt(StmtKind::While, pos);
            next();
            expect("(", "after while");
            s->exprs.push_back(parse_expression());
            expect(")", "after while condition");
            s->stmts.push_back(parse_statement());
            return s;
        }
        if (word("do")) {
            auto s = make_stmt(StmtKind::DoWhile, pos);
            next();
            s->stmts.push_back(parse_statement());
            if (accept_word("while")) {
                expect("(", "after do-while");
                s->exprs.push_back(parse_expression());
                expect(")", "after do-while condition");
            }
            accept(";");
            return s;
        }
        if (word("for")) {
            next();
            expect("(", "after for");
            // foreach: [final] Type name : expr
            size_t save = p;
            parse_annotations();
            while (accept_word("final")) {}
            std::string ty = word("var") ? (next(), std::string("var")) : parse_type();
            if (!ty.empty() && is_ident() && punct(":", 1)) {
                auto s = make_stmt(StmtKind::ForEach, pos);
                s->declared_type = ty;
                s->name = tk().text;
                next();
                next();  // ':'
                s->exprs.push_back(parse_expression());
                expect(")", "after foreach header");
                s->stmts.push_back(parse_statement());
                return s;
            }
            p = save;
            auto s = make_stmt(StmtKind::For, pos);
            if (!punct(";")) {
                auto init = try_local_var(pos);
                if (init) {
                    s->stmts.push_back(std::move(init));  // consumed trailing ';'
                } else {
                    s->exprs.push_back(parse_expression());
                    while (accept(",")) s->exprs.push_back(parse_expression());
                    expect(";", "after for-init");
                }
            } else {
                next();
            }
            if (!punct(";")) s->exprs.push_back(parse_expression());
            expect(";", "after for-condition");
            if (!punct(")")) {
                s->exprs.push_back(parse_expression());
                while (accept(",")) s->exprs.push_back(parse_expression());
            }
            expect(")", "after for header");
            s->stmts.push_back(parse_statement());
            return s;
        }
        if (word("switch")) return parse_switch();
        if (word("try")) {
            auto s = make_stmt(StmtKind::Try, pos);
            next();
            if (punct("(")) {
                next();
                while (!eof() && !punct(")")) {
                    size_t save = p;
                    parse_annotations();
                    while (accept_word("final")) {}
                    std::string ty = word("var") ? (next(), std::string("var")) : parse_type();
                    if (!ty.empty() && is_ident() && punct("=", 1)) {
                        auto decl = make_stmt(StmtKind::LocalVar, tk().pos);
                        decl->declared_type = ty;
                        decl->name = tk().text;
                        next();
                        next();  // '='
                        decl->exprs.push_back(parse_expression());
                        s->stmts.push_back(std::move(decl));
                    } else {
                        p = save;
                        s->exprs.push_back(parse_expression());
                    }
                    if (!accept(";")) break;
                }
                accept(")");
            }
            // resource decls were queued before the body
            auto body = parse_block();
            s->stmts.push_back(std::move(body));
            while (word("catch")) {
                auto c = make_stmt(StmtKind::Catch, tk().pos);
                next();
                expect("(", "after catch");
                while (accept_word("final")) {}
                c->declared_type = parse_type();
                while (accept("|")) {
                    std::string more = parse_type();
                    c->declared_type += "|" + more;
                }
                if (is_ident()) {
                    c->name = tk().text;
                    next();
                }
                expect(")", "after catch parameter");
                c->stmts.push_back(parse_block());
                s->stmts.push_back(std::move(c));
            }
            if (accept_word("finally")) s->stmts.push_back(parse_block());
            return s;
        }
        if (word("return")) {
            auto s = make_stmt(StmtKind::Return, pos);
            next();
            if (!punct(";")) s->exprs.push_back(parse_expression());
            accept(";");
            return s;
        }
        if (word("throw")) {
            auto s = make_stmt(StmtKind::Throw, pos);
            next();
            s->exprs.push_back(parse_expression());
            accept(";");
            return s;
        }
        if (word("break") || word("continue")) {
            auto s = make_stmt(word("break") ? StmtKind::Break : StmtKind::Continue, pos);
            next();
            if (is_ident()) next();  // label
            accept(";");
            return s;
        }
        if (word("synchronized") && punct("(", 1)) {
            auto s = make_stmt(StmtKind::Synchronized, pos);
            next();
            next();
            s->exprs.push_back(parse_expression());
            expect(")", "after synchronized monitor");
            s->stmts.push_back(parse_block());
            return s;
        }
        if (word("assert")) {
            auto s = make_stmt(StmtKind::Assert, pos);
            next();
            s->exprs.push_back(parse_expression());
            if (accept(":")) s->exprs.push_back(parse_expression());
            accept(";");
            return s;
        }
        if (word("yield")) {
            auto s = make_stmt(StmtKind::Yield, pos);
            next();
            s->exprs.push_back(parse_expression());
            accept(";");
            return s;
        }
        // local class declaration
        if (word("class") || word("interface") || word("enum") ||
            (word("record") && is_ident(1) && punct("(", 2))) {
            auto s = make_stmt(StmtKind::Unknown, pos);
            TypeDeclModel local;
            parse_type_decl_at(local, "", {});
            return s;
        }
        // labeled statement
        if (is_ident() && punct(":", 1) && !word("default")) {
            auto s = make_stmt(StmtKind::Labeled, pos);
            s->name = tk().text;
            next();
            next();
            s->stmts.push_back(parse_statement());
            return s;
        }
        if (auto lv = try_local_var(pos)) return lv;
        auto s = make_stmt(StmtKind::ExprStmt, pos);
        size_t before = p;
        s->exprs.push_back(parse_expression());
        if (!accept(";")) {
            if (p == before) {
                error("unparseable statement");
                skip_to_sync();
            }
            accept(";");
        }
        return s;
    }

    // ---- declarations ----

    std::set<std::string> parse_modifiers(std::vector<AnnotationUse>& anns) {
        std::set<std::string> mods;
        int guard = 0;
        while (guard++ < 1000) {
            if (punct("@") && tk(1).kind == TokKind::Word && tk(1).text != "interface") {
                auto more = parse_annotations();
                anns.insert(anns.end(), std::make_move_iterator(more.begin()),
                            std::make_move_iterator(more.end()));
                continue;
            }
            if (tk().kind == TokKind::Word && kModifiers.count(tk().text)) {
                mods.insert(tk().text);
                next();
                continue;
            }
            if (word("sealed") || word("non-sealed")) {
                next();
                continue;
            }
            break;
        }
        return mods;
    }

    bool at_type_decl_keyword() const {
        return word("class") || word("interface") || word("enum") ||
               (word("record") && is_ident(1)) || (punct("@") && word("interface", 1));
    }

    void parse_type_decl_at(TypeDeclModel& out, const std::string& qual_prefix,
                            std::vector<AnnotationUse> anns) {
        out.annotations = std::move(anns);
        out.pos = tk().pos;
        if (punct("@") && word("interface", 1)) {
            out.kind = TypeKind::Annotation;
            next();
            next();
        } else if (accept_word("class")) {
            out.kind = TypeKind::Class;
        } else if (accept_word("interface")) {
            out.kind = TypeKind::Interface;
        } else if (accept_word("enum")) {
            out.kind = TypeKind::Enum;
        } else if (accept_word("record")) {
            out.kind = TypeKind::Record;
        }
        if (tk().kind == TokKind::Word) {
            out.simple_name = tk().text;
            next();
        } else {
            error("expected type name");
        }
        out.qualified_name = qual_prefix.empty() ? out.simple_name
                                                 : qual_prefix + out.simple_name;
        if (punct("<")) parse_type_args();
        if (out.kind == TypeKind::Record && punct("(")) {
            // record components become fields
            next();
            while (!eof() && !punct(")")) {
                parse_annotations();
                std::string ty = parse_type();
                if (is_ident()) {
                    FieldModel f;
                    f.declared_type = ty;
                    f.name = tk().text;
                    f.pos = tk().pos;
                    out.fields.push_back(std::move(f));
                    next();
                }
                if (!accept(",")) break;
            }
            accept(")");
        }
        if (accept_word("extends")) {
            std::string first = parse_type();
            if (out.kind == TypeKind::Interface) {
                out.interfaces.push_back(erase_generics(first));
                while (accept(",")) out.interfaces.push_back(erase_generics(parse_type()));
            } else {
                out.superclass = erase_generics(first);
            }
        }
        if (accept_word("implements")) {
            out.interfaces.push_back(erase_generics(parse_type()));
            while (accept(",")) out.interfaces.push_back(erase_generics(parse_type()));
        }
        if (accept_word("permits")) {
            parse_type();
            while (accept(",")) parse_type();
        }
        parse_class_body(out, out.kind);
    }

    void parse_class_body(TypeDeclModel& out, TypeKind kind) {
        if (!expect("{", "at type body")) {
            skip_to_sync();
            return;
        }
        if (kind == TypeKind::Enum) {
            // enum constants first
            int guard = 0;
            while (!eof() && guard++ < 100000) {
                parse_annotations();
                if (is_ident() && (punct(",", 1) || punct(";", 1) || punct("(", 1) ||
                                   punct("{", 1) || punct("}", 1))) {
                    FieldModel f;
                    f.name = tk().text;
                    f.declared_type = out.simple_name;
                    f.pos = tk().pos;
                    f.modifiers = {"public", "static", "final"};
                    next();
                    if (punct("(")) parse_arguments();
                    if (punct("{")) {
                        TypeDeclModel anon;
                        anon.simple_name = "<anonymous>";
                        anon.qualified_name = out.qualified_name + "$" + f.name;
                        parse_class_body(anon, TypeKind::Class);
                        out.nested.push_back(std::move(anon));
                    }
                    out.fields.push_back(std::move(f));
                    if (accept(",")) continue;
                }
                if (accept(";")) break;
                if (punct("}")) break;
                break;
            }
        }
        int guard = 0;
        while (!eof() && !punct("}") && guard++ < 100000) {
            size_t before = p;
            parse_member(out);
            if (p == before) {
                error("parser stuck in type body; skipping '" + tk().text + "'");
                next();
            }
        }
        accept("}");
    }

    void parse_member(TypeDeclModel& out) {
        if (accept(";")) return;
        // initializer blocks
        if (punct("{")) {
            out.initializer_blocks.push_back(parse_block());
            return;
        }
        if (word("static") && punct("{", 1)) {
            next();
            out.initializer_blocks.push_back(parse_block());
            return;
        }
        std::vector<AnnotationUse> anns;
        auto mods = parse_modifiers(anns);
        if (punct("{")) {  // static/instance block after modifiers
            out.initializer_blocks.push_back(parse_block());
            return;
        }
        if (at_type_decl_keyword()) {
            TypeDeclModel nested;
            nested.modifiers = mods;
            parse_type_decl_at(nested, out.qualified_name + "$", std::move(anns));
            out.nested.push_back(std::move(nested));
            return;
        }
        if (punct("<")) parse_type_args();  // method type parameters

        // constructor?
        if (is_ident() && tk().text == out.simple_name && punct("(", 1)) {
            MethodModel m;
            m.is_constructor = true;
            m.name = tk().text;
            m.start_line = tk().pos.line;
            m.modifiers = mods;
            m.annotations = std::move(anns);
            next();
            parse_method_rest(m);
            out.methods.push_back(std::move(m));
            return;
        }

        std::string ty = parse_type();
        if (ty.empty()) {
            error("unrecognized class member");
            skip_to_sync();
            return;
        }
        if (!is_ident()) {
            // compact record constructor: Name { ... }
            if (punct("{") && ty == out.simple_name) {
                MethodModel m;
                m.is_constructor = true;
                m.name = ty;
                m.start_line = tk().pos.line;
                m.modifiers = mods;
                m.annotations = std::move(anns);
                m.body = parse_block();
                m.end_line = toks[p ? p - 1 : 0].pos.line;
                out.methods.push_back(std::move(m));
                return;
            }
            error("expected member name");
            skip_to_sync();
            return;
        }
        std::string name = tk().text;
        Pos name_pos = tk().pos;
        next();
        if (punct("(")) {
            MethodModel m;
            m.name = name;
            m.return_type = ty;
            m.start_line = name_pos.line;
            m.modifiers = mods;
            m.annotations = std::move(anns);
            parse_method_rest(m);
            out.methods.push_back(std::move(m));
            return;
        }
        // field(s)
        FieldModel f;
        f.name = name;
        f.declared_type = ty;
        f.pos = name_pos;
        f.modifiers = mods;
        f.annotations = std::move(anns);
        while (punct("[") && punct("]", 1)) {
            f.declared_type += "[]";
            next();
            next();
        }
        if (accept("=")) {
            if (punct("{"))
                f.initializer = parse_array_init();
            else
                f.initializer = parse_expression();
        }
        out.fields.push_back(std::move(f));
        while (accept(",")) {
            if (!is_ident()) break;
            FieldModel g;
            g.name = tk().text;
            g.declared_type = ty;
            g.pos = tk().pos;
            g.modifiers = out.fields.back().modifiers;
            next();
            while (punct("[") && punct("]", 1)) {
                g.declared_type += "[]";
                next();
                next();
            }
            if (accept("=")) {
                if (punct("{"))
                    g.initializer = parse_array_init();
                else
                    g.initializer = parse_expression();
            }
            out.fields.push_back(std::move(g));
        }
        if (!accept(";")) {
            error("expected ';' after field declaration");
            skip_to_sync();
        }
    }

    void parse_method_rest(MethodModel& m) {
        expect("(", "at parameter list");
        while (!eof() && !punct(")")) {
            parse_annotations();
            while (accept_word("final")) {}
            ParamModel param;
            param.type = parse_type();
            if (param.type.empty()) {
                error("malformed parameter");
                skip_balanced("(", ")");
                break;
            }
            if (is_ident()) {
                param.name = tk().text;
                next();
            }
            while (punct("[") && punct("]", 1)) {
                param.type += "[]";
                next();
                next();
            }
            m.parameters.push_back(std::move(param));
            if (!accept(",")) break;
        }
        accept(")");
        while (punct("[") && punct("]", 1)) {  // archaic trailing dims
            m.return_type += "[]";
            next();
            next();
        }
        if (accept_word("throws")) {
            parse_type();
            while (accept(",")) parse_type();
        }
        if (word("default")) {  // annotation member default
            next();
            if (punct("{"))
                parse_array_init();
            else
                parse_expression();
        }
        if (punct("{")) {
            m.body = parse_block();
            m.end_line = toks[p ? p - 1 : 0].pos.line;
        } else {
            accept(";");
            m.end_line = m.start_line;
        }
        if (m.end_line < m.start_line) m.end_line = m.start_line;
    }

    void parse_unit() {
        // leading annotations (package-info style) are skipped
        if (punct("@")) parse_annotations();
        if (accept_word("package")) {
            std::string pkg;
            while (tk().kind == TokKind::Word) {
                pkg += tk().text;
                next();
                if (punct(".") && tk(1).kind == TokKind::Word) {
                    pkg += ".";
                    next();
                } else {
                    break;
                }
            }
            unit.package_name = pkg;
            accept(";");
        }
        while (word("import")) {
            next();
            ImportDecl imp;
            imp.is_static = accept_word("static");
            std::string path;
            while (tk().kind == TokKind::Word || punct("*")) {
                if (punct("*")) {
                    imp.is_wildcard = true;
                    next();
                    break;
                }
                path += tk().text;
                next();
                if (punct(".")) {
                    next();
                    if (punct("*")) {
                        imp.is_wildcard = true;
                        next();
                        break;
                    }
                    path += ".";
                } else {
                    break;
                }
            }
            if (!path.empty() && path.back() == '.') path.pop_back();
            imp.path = path;
            unit.imports.push_back(std::move(imp));
            accept(";");
        }
        std::string prefix = unit.package_name.empty() ? "" : unit.package_name + ".";
        int guard = 0;
        while (!eof() && guard++ < 100000) {
            if (accept(";")) continue;
            size_t before = p;
            std::vector<AnnotationUse> anns;
            auto mods = parse_modifiers(anns);
            if (at_type_decl_keyword()) {
                TypeDeclModel decl;
                decl.modifiers = mods;
                parse_type_decl_at(decl, prefix, std::move(anns));
                unit.type_decls.push_back(std::move(decl));
            } else if (!eof()) {
                error("unexpected top-level token '" + tk().text + "'");
                next();
            }
            if (p == before && !eof()) next();
        }
    }
};

}  // namespace

std::string MethodModel::signature() const {
    std::string sig = name + "(";
    for (size_t i = 0; i < parameters.size(); ++i) {
        if (i) sig += ",";
        sig += erase_generics(parameters[i].type);
    }
    return sig + ")";
}

std::string erase_generics(const std::string& type_text) {
    std::string out;
    int depth = 0;
    for (char c : type_text) {
        if (c == '<') {
            ++depth;
            continue;
        }
        if (c == '>') {
            if (depth > 0) --depth;
            continue;
        }
        if (depth == 0 && c != '[' && c != ']' && c != ' ') out += c;
        if (depth == 0 && (c == '[' || c == ']')) out += c;
    }
    return out;
}

std::string simple_type_name(const std::string& type_text) {
    std::string t = erase_generics(type_text);
    if (auto b = t.find('['); b != std::string::npos) t = t.substr(0, b);
    if (auto d = t.rfind('.'); d != std::string::npos) t = t.substr(d + 1);
    return t;
}

CompilationUnitModel parse_source(const std::string& text, const std::string& path) {
    Lexer lex(text);
    lex.run();
    Parser parser;
    parser.toks = std::move(lex.tokens);
    parser.unit.source_path = path;
    parser.unit.parse_errors = std::move(lex.errors);
    parser.unit.token_lines = std::move(lex.token_lines);
    try {
        parser.parse_unit();
    } catch (const std::exception& e) {
        parser.unit.parse_errors.push_back({{0, 0}, std::string("internal parse error: ") + e.what()});
    }
    return std::move(parser.unit);
}

}  // namespace hamster::java
