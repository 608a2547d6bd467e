#include "miniats/parser.hpp"

#include <cassert>

namespace miniats {

using namespace ast;

namespace {

class Parser {
public:
    Parser(const std::vector<Token>& tokens, Reporter& reporter)
        : toks_(tokens), rep_(reporter) {}

    Program program() {
        Program decls;
        while (!at_eof())
            decls.push_back(declaration());
        return decls;
    }

private:
    const std::vector<Token>& toks_;
    Reporter& rep_;
    size_t pos_ = 0;

    // ---- token helpers -------------------------------------------------

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.kind != TokKind::Eof)
            ++pos_;
        return t;
    }
    bool at_eof() const { return peek().kind == TokKind::Eof; }

    [[noreturn]] void fail(const std::string& expected) {
        const Token& t = peek();
        std::string found = t.kind == TokKind::Eof ? "end of input" : "'" + t.text + "'";
        rep_.error(t.loc, DiagKind::ParseError, "expected " + expected + ", found " + found);
        throw CheckAbort{};
    }

    bool at_sym(const char* s) const { return peek().is_sym(s); }
    bool at_kw(const char* k) const { return peek().is_kw(k); }

    bool eat_sym(const char* s) {
        if (at_sym(s)) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool eat_kw(const char* k) {
        if (at_kw(k)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_sym(const char* s) {
        if (!eat_sym(s))
            fail("'" + std::string(s) + "'");
    }
    void expect_kw(const char* k) {
        if (!eat_kw(k))
            fail("'" + std::string(k) + "'");
    }
    std::string expect_ident(const char* what) {
        if (peek().kind != TokKind::Ident)
            fail(what);
        return next().text;
    }

    // ---- sorts -----------------------------------------------------------

    SortPtr sort_expr() {
        SortPtr lhs = sort_atom();
        if (eat_sym("->")) {
            auto s = std::make_shared<SortExpr>();
            s->tag = SortExpr::Tag::Arrow;
            s->loc = lhs->loc;
            s->dom = lhs;
            s->cod = sort_expr();
            return s;
        }
        return lhs;
    }

    SortPtr sort_atom() {
        if (eat_sym("(")) {
            SortPtr s = sort_expr();
            expect_sym(")");
            return s;
        }
        if (peek().kind != TokKind::Ident)
            fail("a sort");
        auto s = std::make_shared<SortExpr>();
        s->tag = SortExpr::Tag::Name;
        s->loc = peek().loc;
        s->name = next().text;
        return s;
    }

    // ---- static expressions ----------------------------------------------

    SExpPtr sexp() { return scomparison(); }

    SExpPtr scomparison() {
        SExpPtr lhs = sadditive();
        static const char* ops[] = {"<=", "<", ">=", ">", "=", "<>"};
        for (const char* op : ops) {
            if (at_sym(op)) {
                Loc loc = next().loc;
                SExpPtr rhs = sadditive();
                return make_sbinop(op, lhs, rhs, loc);
            }
        }
        return lhs;
    }

    SExpPtr sadditive() {
        SExpPtr lhs = smultiplicative();
        while (at_sym("+") || at_sym("-")) {
            std::string op = next().text;
            SExpPtr rhs = smultiplicative();
            lhs = make_sbinop(op, lhs, rhs, lhs->loc);
        }
        return lhs;
    }

    SExpPtr smultiplicative() {
        SExpPtr lhs = sunary();
        while (at_sym("*")) {
            Loc loc = next().loc;
            SExpPtr rhs = sunary();
            // Multiplication must stay linear; one operand has to be a literal.
            if (!is_int_literal(lhs) && !is_int_literal(rhs)) {
                rep_.error(loc, DiagKind::ParseError,
                           "nonlinear static multiplication: one operand must be an integer literal");
                throw CheckAbort{};
            }
            lhs = make_sbinop("*", lhs, rhs, loc);
        }
        return lhs;
    }

    static bool is_int_literal(const SExpPtr& e) {
        if (e->tag == SExp::Tag::Int)
            return true;
        return e->tag == SExp::Tag::Neg && e->args[0]->tag == SExp::Tag::Int;
    }

    SExpPtr sunary() {
        if (at_sym("-")) {
            Loc loc = next().loc;
            auto e = std::make_shared<SExp>();
            e->tag = SExp::Tag::Neg;
            e->loc = loc;
            e->args.push_back(sunary());
            return e;
        }
        return satom();
    }

    SExpPtr satom() {
        const Token& t = peek();
        if (t.kind == TokKind::IntLit) {
            next();
            auto e = std::make_shared<SExp>();
            e->tag = SExp::Tag::Int;
            e->loc = t.loc;
            e->value = cpp_int(t.text);
            return e;
        }
        if (t.kind == TokKind::Ident) {
            next();
            auto e = std::make_shared<SExp>();
            e->loc = t.loc;
            e->name = t.text;
            if (at_sym("(")) {
                e->tag = SExp::Tag::App;
                e->args = paren_sexp_list();
            } else {
                e->tag = SExp::Tag::Var;
            }
            return e;
        }
        if (eat_sym("(")) {
            SExpPtr e = sexp();
            expect_sym(")");
            return e;
        }
        fail("a static expression");
    }

    std::vector<SExpPtr> paren_sexp_list() {
        expect_sym("(");
        std::vector<SExpPtr> args;
        if (eat_sym(")"))
            return args;
        args.push_back(sexp());
        while (eat_sym(","))
            args.push_back(sexp());
        expect_sym(")");
        return args;
    }

    SExpPtr make_sbinop(const std::string& op, SExpPtr lhs, SExpPtr rhs, Loc loc) {
        auto e = std::make_shared<SExp>();
        e->tag = SExp::Tag::Binop;
        e->loc = loc;
        e->name = op;
        e->args = {std::move(lhs), std::move(rhs)};
        return e;
    }

    // ---- quantifier groups -------------------------------------------------

    bool at_qgroup() const { return at_sym("{") || at_sym("["); }

    QGroup qgroup() {
        bool universal = at_sym("{");
        Loc loc = peek().loc;
        next(); // consume '{' or '['
        QGroup g;
        g.universal = universal;
        g.loc = loc;
        g.vars.push_back(expect_ident("an index variable"));
        while (eat_sym(","))
            g.vars.push_back(expect_ident("an index variable"));
        expect_sym(":");
        g.sort = sort_expr();
        if (eat_sym("|")) {
            g.guards.push_back(sexp());
            while (eat_sym(","))
                g.guards.push_back(sexp());
        }
        expect_sym(universal ? "}" : "]");
        return g;
    }

    std::vector<QGroup> qgroups() {
        std::vector<QGroup> groups;
        while (at_qgroup())
            groups.push_back(qgroup());
        return groups;
    }

    // ---- types ---------------------------------------------------------------

    TypePtr type_expr() {
        if (at_qgroup()) {
            QGroup g = qgroup();
            auto t = std::make_shared<TypeExpr>();
            t->tag = TypeExpr::Tag::Quant;
            t->loc = g.loc;
            t->group = std::move(g);
            t->body = type_expr();
            return t;
        }
        // A parenthesized group may be a domain list, a tuple type, or plain
        // grouping; the decision is made after the closing paren.
        if (at_sym("(")) {
            Loc loc = peek().loc;
            next();
            std::vector<TypePtr> first, second;
            bool split = false;
            if (!at_sym(")")) {
                first.push_back(type_expr());
                while (eat_sym(","))
                    first.push_back(type_expr());
                if (eat_sym("|")) {
                    split = true;
                    second.push_back(type_expr());
                    while (eat_sym(","))
                        second.push_back(type_expr());
                }
            }
            expect_sym(")");
            if (eat_sym("->")) {
                auto t = std::make_shared<TypeExpr>();
                t->tag = TypeExpr::Tag::Fun;
                t->loc = loc;
                t->doms_split = split;
                if (split) {
                    t->pdoms = std::move(first);
                    t->vdoms = std::move(second);
                } else {
                    t->vdoms = std::move(first);
                }
                t->cod = type_expr();
                return t;
            }
            if (!split && first.size() == 1)
                return first[0];
            auto t = std::make_shared<TypeExpr>();
            t->tag = TypeExpr::Tag::Tuple;
            t->loc = loc;
            t->comps_split = split;
            if (split) {
                t->pcomps = std::move(first);
                t->vcomps = std::move(second);
            } else {
                t->vcomps = std::move(first);
            }
            return t;
        }
        TypePtr atom = type_app();
        if (eat_sym("->")) {
            auto t = std::make_shared<TypeExpr>();
            t->tag = TypeExpr::Tag::Fun;
            t->loc = atom->loc;
            t->vdoms = {atom};
            t->cod = type_expr();
            return t;
        }
        return atom;
    }

    TypePtr type_app() {
        if (peek().kind != TokKind::Ident)
            fail("a type");
        Loc loc = peek().loc;
        std::string head = next().text;
        auto t = std::make_shared<TypeExpr>();
        t->tag = TypeExpr::Tag::App;
        t->loc = loc;
        t->name = head;
        if (at_sym("(")) {
            t->sargs = paren_sexp_list();
        } else if (peek().kind == TokKind::Ident || peek().kind == TokKind::IntLit) {
            // Juxtaposed single index argument: `int n`, `lte a`.
            t->juxt_arg = true;
            const Token& a = next();
            auto e = std::make_shared<SExp>();
            e->loc = a.loc;
            if (a.kind == TokKind::IntLit) {
                e->tag = SExp::Tag::Int;
                e->value = cpp_int(a.text);
            } else {
                e->tag = SExp::Tag::Var;
                e->name = a.text;
            }
            t->sargs.push_back(e);
        }
        return t;
    }

    // ---- patterns ----------------------------------------------------------

    PatPtr pattern() {
        const Token& t = peek();
        if (t.kind == TokKind::Ident) {
            next();
            auto p = std::make_shared<Pattern>();
            p->loc = t.loc;
            if (t.text == "_") {
                p->tag = Pattern::Tag::Any;
                return p;
            }
            p->name = t.text;
            if (at_sym("(")) {
                p->tag = Pattern::Tag::Con;
                p->has_parens = true;
                next();
                if (!at_sym(")")) {
                    p->args.push_back(pattern());
                    while (eat_sym(","))
                        p->args.push_back(pattern());
                }
                expect_sym(")");
            } else {
                p->tag = Pattern::Tag::Var;
            }
            return p;
        }
        if (eat_sym("(")) {
            auto p = std::make_shared<Pattern>();
            p->tag = Pattern::Tag::Tuple;
            p->loc = t.loc;
            std::vector<PatPtr> first, second;
            bool split = false;
            if (!at_sym(")")) {
                first.push_back(pattern());
                while (eat_sym(","))
                    first.push_back(pattern());
                if (eat_sym("|")) {
                    split = true;
                    if (!at_sym(")")) {
                        second.push_back(pattern());
                        while (eat_sym(","))
                            second.push_back(pattern());
                    }
                }
            }
            expect_sym(")");
            p->comps_split = split;
            if (split) {
                p->pcomps = std::move(first);
                p->vcomps = std::move(second);
            } else {
                p->vcomps = std::move(first);
            }
            return p;
        }
        fail("a pattern");
    }

    // ---- dynamic expressions --------------------------------------------------

    DExpPtr dexp() {
        if (at_kw("let"))
            return let_expr();
        if (at_kw("if"))
            return if_expr();
        if (at_kw("case"))
            return case_expr();
        if (at_kw("lam"))
            return lam_expr();
        return dcomparison();
    }

    DExpPtr let_expr() {
        Loc loc = next().loc; // 'let'
        auto e = std::make_shared<DExp>();
        e->tag = DExp::Tag::Let;
        e->loc = loc;
        std::vector<LetDeclPtr> decls;
        while (!at_kw("in"))
            decls.push_back(let_decl());
        expect_kw("in");
        e->decls = std::move(decls);
        e->body = dexp();
        expect_kw("end");
        return e;
    }

    LetDeclPtr let_decl() {
        auto d = std::make_shared<LetDecl>();
        d->loc = peek().loc;
        if (eat_kw("val")) {
            d->tag = LetDecl::Tag::Val;
            d->binds.push_back(val_bind());
            while (eat_kw("and"))
                d->binds.push_back(val_bind());
            return d;
        }
        if (eat_kw("prval")) {
            d->tag = LetDecl::Tag::Prval;
            d->binds.push_back(val_bind());
            return d;
        }
        if (at_kw("fun") || at_kw("prfun")) {
            d->tag = LetDecl::Tag::Fun;
            d->fun = fun_group();
            return d;
        }
        fail("'val', 'prval', 'fun' or 'in'");
    }

    LetDecl::ValBind val_bind() {
        LetDecl::ValBind b;
        b.loc = peek().loc;
        b.pat = pattern();
        expect_sym("=");
        b.rhs = dexp();
        return b;
    }

    DExpPtr if_expr() {
        Loc loc = next().loc; // 'if'
        auto e = std::make_shared<DExp>();
        e->tag = DExp::Tag::If;
        e->loc = loc;
        e->cond = dexp();
        expect_kw("then");
        e->then_e = dexp();
        expect_kw("else");
        e->else_e = dexp();
        return e;
    }

    DExpPtr case_expr() {
        Loc loc = next().loc; // 'case'
        auto e = std::make_shared<DExp>();
        e->tag = DExp::Tag::Case;
        e->loc = loc;
        e->case_plus = eat_sym("+");
        e->scrut = dexp();
        expect_kw("of");
        eat_sym("|");
        while (true) {
            Arm arm;
            arm.loc = peek().loc;
            arm.pat = pattern();
            expect_sym("=>");
            arm.body = dexp();
            e->arms.push_back(std::move(arm));
            if (!eat_sym("|"))
                break;
        }
        return e;
    }

    DExpPtr lam_expr() {
        Loc loc = next().loc; // 'lam'
        auto e = std::make_shared<DExp>();
        e->tag = DExp::Tag::Lam;
        e->loc = loc;
        expect_sym("(");
        if (!at_sym(")")) {
            e->lam_params.push_back(param());
            while (eat_sym(","))
                e->lam_params.push_back(param());
        }
        expect_sym(")");
        expect_sym("=>");
        e->body = dexp();
        return e;
    }

    Param param() {
        Param p;
        p.loc = peek().loc;
        p.name = expect_ident("a parameter name");
        expect_sym(":");
        p.type = type_expr();
        return p;
    }

    DExpPtr dcomparison() {
        DExpPtr lhs = dadditive();
        static const char* ops[] = {"<=", "<", ">=", ">", "=", "<>"};
        for (const char* op : ops) {
            if (at_sym(op)) {
                Loc loc = next().loc;
                DExpPtr rhs = dadditive();
                return make_dbinop(op, lhs, rhs, loc);
            }
        }
        return lhs;
    }

    DExpPtr dadditive() {
        DExpPtr lhs = dmultiplicative();
        while (at_sym("+") || at_sym("-")) {
            std::string op = next().text;
            DExpPtr rhs = dmultiplicative();
            lhs = make_dbinop(op, lhs, rhs, lhs->loc);
        }
        return lhs;
    }

    DExpPtr dmultiplicative() {
        DExpPtr lhs = dunary();
        while (at_sym("*")) {
            Loc loc = next().loc;
            DExpPtr rhs = dunary();
            lhs = make_dbinop("*", lhs, rhs, loc);
        }
        return lhs;
    }

    DExpPtr dunary() {
        if (at_sym("-")) {
            Loc loc = next().loc;
            auto e = std::make_shared<DExp>();
            e->tag = DExp::Tag::Neg;
            e->loc = loc;
            e->vargs.push_back(dunary());
            return e;
        }
        return dpostfix();
    }

    DExpPtr dpostfix() {
        DExpPtr e = datom();
        while (true) {
            if (at_sym("{")) {
                // Explicit static instantiation; may be chained before the args.
                std::vector<SExpPtr> sargs;
                while (eat_sym("{")) {
                    sargs.push_back(sexp());
                    while (eat_sym(","))
                        sargs.push_back(sexp());
                    expect_sym("}");
                }
                auto app = std::make_shared<DExp>();
                app->tag = DExp::Tag::App;
                app->loc = e->loc;
                app->callee = e;
                app->sargs = std::move(sargs);
                parse_call_args(*app);
                e = app;
            } else if (at_sym("(")) {
                auto app = std::make_shared<DExp>();
                app->tag = DExp::Tag::App;
                app->loc = e->loc;
                app->callee = e;
                parse_call_args(*app);
                e = app;
            } else {
                break;
            }
        }
        return e;
    }

    void parse_call_args(DExp& app) {
        expect_sym("(");
        std::vector<DExpPtr> first, second;
        bool split = false;
        if (!at_sym(")")) {
            first.push_back(dexp());
            while (eat_sym(","))
                first.push_back(dexp());
            if (eat_sym("|")) {
                split = true;
                if (!at_sym(")")) {
                    second.push_back(dexp());
                    while (eat_sym(","))
                        second.push_back(dexp());
                }
            }
        }
        expect_sym(")");
        app.args_split = split;
        if (split) {
            app.pargs = std::move(first);
            app.vargs = std::move(second);
        } else {
            app.vargs = std::move(first);
        }
    }

    DExpPtr datom() {
        const Token& t = peek();
        if (t.kind == TokKind::IntLit) {
            next();
            auto e = std::make_shared<DExp>();
            e->tag = DExp::Tag::Int;
            e->loc = t.loc;
            e->value = cpp_int(t.text);
            return e;
        }
        if (t.kind == TokKind::Ident) {
            next();
            auto e = std::make_shared<DExp>();
            e->loc = t.loc;
            if (t.text == "true" || t.text == "false") {
                e->tag = DExp::Tag::Bool;
                e->bvalue = t.text == "true";
            } else {
                e->tag = DExp::Tag::Var;
                e->name = t.text;
            }
            return e;
        }
        if (at_sym("(")) {
            Loc loc = next().loc;
            std::vector<DExpPtr> first, second;
            bool split = false;
            if (!at_sym(")")) {
                first.push_back(dexp());
                while (eat_sym(","))
                    first.push_back(dexp());
                if (eat_sym("|")) {
                    split = true;
                    if (!at_sym(")")) {
                        second.push_back(dexp());
                        while (eat_sym(","))
                            second.push_back(dexp());
                    }
                }
            }
            expect_sym(")");
            if (!split && first.size() == 1)
                return first[0];
            auto e = std::make_shared<DExp>();
            e->tag = DExp::Tag::Tuple;
            e->loc = loc;
            e->comps_split = split;
            if (split) {
                e->pcomps = std::move(first);
                e->vcomps = std::move(second);
            } else {
                e->vcomps = std::move(first);
            }
            return e;
        }
        fail("an expression");
    }

    DExpPtr make_dbinop(const std::string& op, DExpPtr lhs, DExpPtr rhs, Loc loc) {
        auto e = std::make_shared<DExp>();
        e->tag = DExp::Tag::Binop;
        e->loc = loc;
        e->name = op;
        e->vargs = {std::move(lhs), std::move(rhs)};
        return e;
    }

    // ---- declarations -----------------------------------------------------------

    Decl declaration() {
        const Token& t = peek();
        if (t.is_kw("datasort"))
            return datasort_decl();
        if (t.is_kw("datatype") || t.is_kw("dataprop"))
            return data_decl(t.text == "dataprop");
        if (t.is_kw("absprop") || t.is_kw("abstype"))
            return abs_decl(t.text == "absprop");
        if (t.is_kw("typedef"))
            return typedef_decl();
        if (t.is_kw("praxi"))
            return praxi_decl();
        if (t.is_kw("fun") || t.is_kw("prfun"))
            return fun_decl();
        if (t.is_kw("val"))
            return val_decl();
        if (t.is_kw("alias"))
            return alias_decl();
        fail("a declaration");
    }

    Decl datasort_decl() {
        Decl d;
        d.tag = Decl::Tag::Datasort;
        d.loc = next().loc;
        d.name = expect_ident("a datasort name");
        expect_sym("=");
        eat_sym("|");
        while (true) {
            CtorDecl c;
            c.loc = peek().loc;
            c.name = expect_ident("a constructor name");
            if (eat_kw("of")) {
                c.has_of = true;
                expect_sym("(");
                if (!at_sym(")")) {
                    c.arg_sorts.push_back(sort_expr());
                    while (eat_sym(","))
                        c.arg_sorts.push_back(sort_expr());
                }
                expect_sym(")");
            }
            d.ctors.push_back(std::move(c));
            if (!eat_sym("|"))
                break;
        }
        return d;
    }

    Decl data_decl(bool is_prop) {
        Decl d;
        d.tag = is_prop ? Decl::Tag::Dataprop : Decl::Tag::Datatype;
        d.loc = next().loc;
        d.name = expect_ident("a type name");
        d.params = header_params();
        expect_sym("=");
        eat_sym("|");
        while (true) {
            CtorDecl c;
            c.quants = qgroups();
            c.loc = peek().loc;
            c.name = expect_ident("a constructor name");
            if (at_sym("(")) {
                c.has_result_args = true;
                c.result_args = paren_sexp_list();
            }
            if (eat_kw("of")) {
                c.has_of = true;
                expect_sym("(");
                if (!at_sym(")")) {
                    c.arg_types.push_back(type_expr());
                    while (eat_sym(","))
                        c.arg_types.push_back(type_expr());
                }
                expect_sym(")");
            }
            d.ctors.push_back(std::move(c));
            if (!eat_sym("|"))
                break;
        }
        return d;
    }

    std::vector<HParam> header_params() {
        std::vector<HParam> params;
        expect_sym("(");
        if (eat_sym(")"))
            return params;
        params.push_back(header_param());
        while (eat_sym(","))
            params.push_back(header_param());
        expect_sym(")");
        return params;
    }

    HParam header_param() {
        HParam p;
        p.loc = peek().loc;
        if (peek().kind == TokKind::Ident && peek(1).is_sym(":")) {
            p.name = next().text;
            next(); // ':'
        }
        p.sort = sort_expr();
        return p;
    }

    Decl abs_decl(bool is_prop) {
        Decl d;
        d.tag = is_prop ? Decl::Tag::Absprop : Decl::Tag::Abstype;
        d.loc = next().loc;
        d.name = expect_ident("a name");
        if (at_sym("("))
            d.params = header_params();
        return d;
    }

    Decl typedef_decl() {
        Decl d;
        d.tag = Decl::Tag::Typedef;
        d.loc = next().loc;
        d.name = expect_ident("a type name");
        if (at_sym("(")) {
            expect_sym("(");
            while (true) {
                HParam p;
                p.loc = peek().loc;
                p.name = expect_ident("a parameter name");
                expect_sym(":");
                p.sort = sort_expr();
                d.params.push_back(std::move(p));
                if (!eat_sym(","))
                    break;
            }
            expect_sym(")");
        }
        expect_sym("=");
        d.type = type_expr();
        return d;
    }

    Decl praxi_decl() {
        Decl d;
        d.tag = Decl::Tag::Praxi;
        d.loc = next().loc;
        d.name = expect_ident("a lemma name");
        expect_sym(":");
        d.type = type_expr();
        return d;
    }

    Decl fun_decl() {
        Decl d;
        d.tag = Decl::Tag::Fun;
        d.loc = peek().loc;
        d.fun_group = fun_group();
        return d;
    }

    std::shared_ptr<const FunGroup> fun_group() {
        auto g = std::make_shared<FunGroup>();
        g->loc = peek().loc;
        g->is_proof = peek().is_kw("prfun");
        next(); // 'fun' or 'prfun'
        g->shared_quants = qgroups();
        g->defs.push_back(fun_def());
        while (eat_kw("and"))
            g->defs.push_back(fun_def());
        return g;
    }

    FunDef fun_def() {
        FunDef f;
        f.loc = peek().loc;
        f.name = expect_ident("a function name");
        f.quants = qgroups();
        expect_sym("(");
        std::vector<Param> first, second;
        bool split = false;
        if (!at_sym(")")) {
            first.push_back(param());
            while (eat_sym(","))
                first.push_back(param());
            if (eat_sym("|")) {
                split = true;
                second.push_back(param());
                while (eat_sym(","))
                    second.push_back(param());
            }
        }
        expect_sym(")");
        f.params_split = split;
        if (split) {
            f.pparams = std::move(first);
            f.vparams = std::move(second);
        } else {
            f.vparams = std::move(first);
        }
        expect_sym(":");
        f.ret = type_expr();
        expect_sym("=");
        f.body = dexp();
        return f;
    }

    Decl val_decl() {
        Decl d;
        d.tag = Decl::Tag::Val;
        d.loc = next().loc;
        d.val_pat = pattern();
        expect_sym("=");
        d.val_rhs = dexp();
        return d;
    }

    Decl alias_decl() {
        Decl d;
        d.tag = Decl::Tag::Alias;
        d.loc = next().loc;
        d.name = expect_ident("an alias name");
        expect_sym("=");
        d.alias_target = expect_ident("a constructor name");
        return d;
    }
};

} // namespace

ast::Program parse_program(const std::vector<Token>& tokens, Reporter& reporter) {
    return Parser(tokens, reporter).program();
}

ast::Program parse_file(const SourcePtr& file, Reporter& reporter) {
    return parse_program(tokenize(file, reporter), reporter);
}

} // namespace miniats
