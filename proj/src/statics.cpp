#include "miniats/statics.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace miniats {

// ---- sorts ------------------------------------------------------------------

namespace {
SortHdl make_base(Sort::Tag tag) {
    auto s = std::make_shared<Sort>();
    s->tag = tag;
    return s;
}
} // namespace

SortHdl sort_int() {
    static SortHdl s = make_base(Sort::Tag::Int);
    return s;
}
SortHdl sort_bool() {
    static SortHdl s = make_base(Sort::Tag::Bool);
    return s;
}
SortHdl sort_addr() {
    static SortHdl s = make_base(Sort::Tag::Addr);
    return s;
}
SortHdl sort_prop() {
    static SortHdl s = make_base(Sort::Tag::Prop);
    return s;
}
SortHdl sort_type() {
    static SortHdl s = make_base(Sort::Tag::Type);
    return s;
}
SortHdl sort_data(const std::string& name) {
    auto s = std::make_shared<Sort>();
    s->tag = Sort::Tag::Data;
    s->data_name = name;
    return s;
}
SortHdl sort_arrow(SortHdl dom, SortHdl cod) {
    auto s = std::make_shared<Sort>();
    s->tag = Sort::Tag::Arrow;
    s->dom = std::move(dom);
    s->cod = std::move(cod);
    return s;
}

bool sort_equal(const SortHdl& a, const SortHdl& b) {
    if (a.get() == b.get())
        return true;
    if (!a || !b || a->tag != b->tag)
        return false;
    switch (a->tag) {
    case Sort::Tag::Data: return a->data_name == b->data_name;
    case Sort::Tag::Arrow: return sort_equal(a->dom, b->dom) && sort_equal(a->cod, b->cod);
    default: return true;
    }
}

std::string sort_str(const SortHdl& s) {
    if (!s)
        return "?";
    switch (s->tag) {
    case Sort::Tag::Int: return "int";
    case Sort::Tag::Bool: return "bool";
    case Sort::Tag::Addr: return "addr";
    case Sort::Tag::Prop: return "prop";
    case Sort::Tag::Type: return "type";
    case Sort::Tag::Data: return s->data_name;
    case Sort::Tag::Arrow: {
        std::string dom = sort_str(s->dom);
        if (s->dom->tag == Sort::Tag::Arrow)
            dom = "(" + dom + ")";
        return dom + " -> " + sort_str(s->cod);
    }
    }
    return "?";
}

// ---- static term construction -------------------------------------------------

STermHdl st_var(const std::string& uniq, SortHdl sort) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::Var;
    t->name = uniq;
    t->sort = std::move(sort);
    return t;
}

STermHdl st_con(const std::string& name, std::vector<STermHdl> args, SortHdl sort) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::Con;
    t->name = name;
    t->args = std::move(args);
    t->sort = std::move(sort);
    return t;
}

STermHdl st_int(const cpp_int& v) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::IntLit;
    t->ival = v;
    t->sort = sort_int();
    return t;
}

STermHdl st_bool(bool b) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::BoolLit;
    t->bval = b;
    t->sort = sort_bool();
    return t;
}

STermHdl st_lin(cpp_int k, std::vector<std::pair<std::string, cpp_int>> terms) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::Lin;
    t->ival = std::move(k);
    t->lin = std::move(terms);
    t->sort = sort_int();
    return t;
}

STermHdl st_cmp(CmpOp op, STermHdl lin) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::Cmp;
    t->cmp = op;
    t->args = {std::move(lin)};
    t->sort = sort_bool();
    return t;
}

STermHdl st_not(STermHdl arg) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::Not;
    t->args = {std::move(arg)};
    t->sort = sort_bool();
    return t;
}

STermHdl st_lam(const std::string& var, SortHdl var_sort, STermHdl body) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::Lam;
    t->lam_var = var;
    t->lam_sort = std::move(var_sort);
    t->sort = sort_arrow(t->lam_sort, body->sort);
    t->args = {std::move(body)};
    return t;
}

STermHdl st_app(STermHdl f, STermHdl arg) {
    auto t = std::make_shared<STerm>();
    t->tag = STerm::Tag::App;
    t->sort = f->sort && f->sort->tag == Sort::Tag::Arrow ? f->sort->cod : nullptr;
    t->args = {std::move(f), std::move(arg)};
    return t;
}

std::string display_name(const std::string& uniq) {
    auto pos = uniq.find('$');
    return pos == std::string::npos ? uniq : uniq.substr(0, pos);
}

std::string sterm_str(const STermHdl& t) {
    if (!t)
        return "?";
    std::ostringstream os;
    switch (t->tag) {
    case STerm::Tag::Var: os << t->name; break;
    case STerm::Tag::IntLit: os << t->ival; break;
    case STerm::Tag::BoolLit: os << (t->bval ? "true" : "false"); break;
    case STerm::Tag::Con:
        os << t->name;
        if (!t->args.empty()) {
            os << "(";
            for (size_t i = 0; i < t->args.size(); ++i) {
                if (i)
                    os << ", ";
                os << sterm_str(t->args[i]);
            }
            os << ")";
        }
        break;
    case STerm::Tag::Lin: {
        bool first = true;
        if (t->lin.empty() || t->ival != 0) {
            os << t->ival;
            first = false;
        }
        for (const auto& [v, c] : t->lin) {
            if (!first)
                os << (c >= 0 ? " + " : " - ");
            else if (c < 0)
                os << "-";
            cpp_int a = abs(c);
            if (a != 1)
                os << a << "*";
            os << v;
            first = false;
        }
        break;
    }
    case STerm::Tag::Cmp: {
        os << sterm_str(t->args[0]);
        switch (t->cmp) {
        case CmpOp::Le: os << " <= 0"; break;
        case CmpOp::Eq: os << " = 0"; break;
        case CmpOp::Ne: os << " <> 0"; break;
        }
        break;
    }
    case STerm::Tag::Not: os << "~" << sterm_str(t->args[0]); break;
    case STerm::Tag::Lam:
        os << "(lam " << t->lam_var << ":" << sort_str(t->lam_sort) << ". " << sterm_str(t->args[0])
           << ")";
        break;
    case STerm::Tag::App: os << sterm_str(t->args[0]) << "(" << sterm_str(t->args[1]) << ")"; break;
    }
    return os.str();
}

// ---- statics environment ---------------------------------------------------------

StaticsEnv::StaticsEnv() {
    // The plain base types are static constants of sort `type`; they let type
    // variables of sort type be instantiated with int/bool for entry wrappers.
    add_ctor({"int", {}, sort_type()});
    add_ctor({"bool", {}, sort_type()});
}

const DatasortDef* StaticsEnv::datasort(const std::string& name) const {
    auto it = datasorts_.find(name);
    return it == datasorts_.end() ? nullptr : &it->second;
}

const StaticConSig* StaticsEnv::ctor(const std::string& name) const {
    auto it = ctors_.find(resolve(name));
    return it == ctors_.end() ? nullptr : &it->second;
}

void StaticsEnv::add_datasort(DatasortDef def) { datasorts_[def.name] = std::move(def); }
void StaticsEnv::add_ctor(StaticConSig sig) { ctors_[sig.name] = std::move(sig); }
void StaticsEnv::add_alias(const std::string& alias, const std::string& target) {
    aliases_[alias] = target;
}

std::string StaticsEnv::resolve(const std::string& name) const {
    auto it = aliases_.find(name);
    return it == aliases_.end() ? name : it->second;
}

// ---- sort checking ---------------------------------------------------------------

SortHdl sort_of(const StaticsEnv& env, const StaticCtx& ctx, const STermHdl& term,
                Reporter& reporter, const Loc& loc) {
    switch (term->tag) {
    case STerm::Tag::Var: {
        if (const TeleVar* v = ctx.lookup(term->name))
            return v->sort;
        reporter.error(loc, DiagKind::UnboundStaticVar,
                       "unbound static variable '" + display_name(term->name) + "'");
        throw CheckAbort{};
    }
    case STerm::Tag::IntLit:
    case STerm::Tag::Lin: return sort_int();
    case STerm::Tag::BoolLit:
    case STerm::Tag::Cmp: return sort_bool();
    case STerm::Tag::Not: {
        SortHdl s = sort_of(env, ctx, term->args[0], reporter, loc);
        if (s->tag != Sort::Tag::Bool) {
            reporter.error(loc, DiagKind::SortError, "negation needs a bool, found " + sort_str(s));
            throw CheckAbort{};
        }
        return sort_bool();
    }
    case STerm::Tag::Con: {
        const StaticConSig* sig = env.ctor(term->name);
        if (!sig) {
            reporter.error(loc, DiagKind::UnboundStaticVar,
                           "unknown static constructor '" + term->name + "'");
            throw CheckAbort{};
        }
        if (sig->arg_sorts.size() != term->args.size()) {
            reporter.error(loc, DiagKind::SortError,
                           "constructor '" + term->name + "' expects " +
                               std::to_string(sig->arg_sorts.size()) + " arguments, found " +
                               std::to_string(term->args.size()));
            throw CheckAbort{};
        }
        for (size_t i = 0; i < term->args.size(); ++i) {
            SortHdl s = sort_of(env, ctx, term->args[i], reporter, loc);
            if (!sort_equal(s, sig->arg_sorts[i])) {
                reporter.error(loc, DiagKind::SortError,
                               "argument " + std::to_string(i + 1) + " of '" + term->name +
                                   "': expected " + sort_str(sig->arg_sorts[i]) + ", found " +
                                   sort_str(s));
                throw CheckAbort{};
            }
        }
        return sig->result;
    }
    case STerm::Tag::Lam: {
        StaticCtx inner = ctx;
        inner.vars.push_back({term->lam_var, term->lam_sort});
        SortHdl body = sort_of(env, inner, term->args[0], reporter, loc);
        return sort_arrow(term->lam_sort, body);
    }
    case STerm::Tag::App: {
        SortHdl f = sort_of(env, ctx, term->args[0], reporter, loc);
        if (f->tag != Sort::Tag::Arrow) {
            reporter.error(loc, DiagKind::SortError,
                           "application head has sort " + sort_str(f) + ", expected an arrow");
            throw CheckAbort{};
        }
        SortHdl a = sort_of(env, ctx, term->args[1], reporter, loc);
        if (!sort_equal(a, f->dom)) {
            reporter.error(loc, DiagKind::SortError, "application argument: expected " +
                                                         sort_str(f->dom) + ", found " + sort_str(a));
            throw CheckAbort{};
        }
        return f->cod;
    }
    }
    return nullptr;
}

// ---- normalization ----------------------------------------------------------------

namespace {

using LinTerms = std::vector<std::pair<std::string, cpp_int>>;

void lin_add_into(LinTerms& acc, const LinTerms& other, const cpp_int& scale) {
    for (const auto& [v, c] : other) {
        auto it = std::lower_bound(acc.begin(), acc.end(), v,
                                   [](const auto& p, const std::string& key) { return p.first < key; });
        if (it != acc.end() && it->first == v) {
            it->second += c * scale;
            if (it->second == 0)
                acc.erase(it);
        } else {
            acc.insert(it, {v, c * scale});
        }
    }
}

STermHdl lin_combine(const STermHdl& a, const STermHdl& b, const cpp_int& scale_b) {
    LinTerms acc = a->lin;
    lin_add_into(acc, b->lin, scale_b);
    return st_lin(a->ival + b->ival * scale_b, std::move(acc));
}

STermHdl lin_scale(const STermHdl& a, const cpp_int& k) {
    if (k == 0)
        return st_lin(0, {});
    LinTerms acc;
    for (const auto& [v, c] : a->lin)
        acc.push_back({v, c * k});
    return st_lin(a->ival * k, std::move(acc));
}

STermHdl lin_negate(const STermHdl& a) { return lin_scale(a, -1); }

// Canonical sign for eq/ne atoms: first variable coefficient positive, or the
// constant nonnegative when there are no variables.
STermHdl lin_canon_sign(const STermHdl& e) {
    bool flip = e->lin.empty() ? e->ival < 0 : e->lin.front().second < 0;
    return flip ? lin_negate(e) : e;
}

STermHdl normalize_rec(const STermHdl& t, int depth);

STermHdl normalize_bool_not(const STermHdl& inner) {
    switch (inner->tag) {
    case STerm::Tag::BoolLit: return st_bool(!inner->bval);
    case STerm::Tag::Not: return inner->args[0];
    case STerm::Tag::Cmp: {
        const STermHdl& e = inner->args[0];
        switch (inner->cmp) {
        case CmpOp::Le: {
            // not (e <= 0)  <=>  -e + 1 <= 0
            STermHdl neg = lin_negate(e);
            return st_cmp(CmpOp::Le, st_lin(neg->ival + 1, neg->lin));
        }
        case CmpOp::Eq: return st_cmp(CmpOp::Ne, e);
        case CmpOp::Ne: return st_cmp(CmpOp::Eq, e);
        }
        break;
    }
    default: break;
    }
    return st_not(inner);
}

STermHdl make_cmp(const std::string& op, const STermHdl& l, const STermHdl& r) {
    // All comparisons reduce to `lin OP 0`.
    if (op == "<=")
        return st_cmp(CmpOp::Le, lin_combine(l, r, -1));
    if (op == "<") {
        STermHdl d = lin_combine(l, r, -1);
        return st_cmp(CmpOp::Le, st_lin(d->ival + 1, d->lin));
    }
    if (op == ">=")
        return st_cmp(CmpOp::Le, lin_combine(r, l, -1));
    if (op == ">") {
        STermHdl d = lin_combine(r, l, -1);
        return st_cmp(CmpOp::Le, st_lin(d->ival + 1, d->lin));
    }
    if (op == "=")
        return st_cmp(CmpOp::Eq, lin_canon_sign(lin_combine(l, r, -1)));
    if (op == "<>")
        return st_cmp(CmpOp::Ne, lin_canon_sign(lin_combine(l, r, -1)));
    assert(false && "unknown comparison");
    return nullptr;
}

bool is_arith(const std::string& name) { return name == "+" || name == "-" || name == "*"; }
bool is_cmp(const std::string& name) {
    return name == "<=" || name == "<" || name == ">=" || name == ">" || name == "=" ||
           name == "<>";
}

// Constant-folds a Cmp/BoolLit if it is variable-free.
STermHdl fold_cmp(const STermHdl& c) {
    if (c->tag != STerm::Tag::Cmp || !c->args[0]->lin.empty())
        return c;
    const cpp_int& k = c->args[0]->ival;
    switch (c->cmp) {
    case CmpOp::Le: return st_bool(k <= 0);
    case CmpOp::Eq: return st_bool(k == 0);
    case CmpOp::Ne: return st_bool(k != 0);
    }
    return c;
}

STermHdl normalize_rec(const STermHdl& t, int depth) {
    switch (t->tag) {
    case STerm::Tag::Var:
        if (t->sort && t->sort->tag == Sort::Tag::Int)
            return st_lin(0, {{t->name, 1}});
        return t;
    case STerm::Tag::IntLit: return st_lin(t->ival, {});
    case STerm::Tag::BoolLit: return t;
    case STerm::Tag::Lin: {
        // Re-canonicalize (entries may be unsorted after substitution).
        LinTerms acc;
        for (const auto& [v, c] : t->lin)
            lin_add_into(acc, {{v, c}}, 1);
        return st_lin(t->ival, std::move(acc));
    }
    case STerm::Tag::Cmp: {
        STermHdl e = normalize_rec(t->args[0], depth);
        assert(e->tag == STerm::Tag::Lin);
        if (t->cmp != CmpOp::Le)
            e = lin_canon_sign(e);
        return fold_cmp(st_cmp(t->cmp, e));
    }
    case STerm::Tag::Not: return normalize_bool_not(normalize_rec(t->args[0], depth));
    case STerm::Tag::Con: {
        if (is_arith(t->name)) {
            STermHdl l = normalize_rec(t->args[0], depth);
            STermHdl r = normalize_rec(t->args[1], depth);
            if (t->name == "+")
                return lin_combine(l, r, 1);
            if (t->name == "-")
                return lin_combine(l, r, -1);
            // '*': one side is a constant (enforced at parse time)
            if (l->lin.empty())
                return lin_scale(r, l->ival);
            return lin_scale(l, r->ival);
        }
        if (is_cmp(t->name)) {
            STermHdl l = normalize_rec(t->args[0], depth);
            STermHdl r = normalize_rec(t->args[1], depth);
            return fold_cmp(make_cmp(t->name, l, r));
        }
        std::vector<STermHdl> args;
        args.reserve(t->args.size());
        for (const auto& a : t->args)
            args.push_back(normalize_rec(a, depth));
        return st_con(t->name, std::move(args), t->sort);
    }
    case STerm::Tag::Lam: {
        // Alpha-canonical bound name by depth.
        std::string canon = "@" + std::to_string(depth);
        Subst sub;
        sub[t->lam_var] = st_var(canon, t->lam_sort);
        STermHdl body = normalize_rec(subst_static(t->args[0], sub), depth + 1);
        return st_lam(canon, t->lam_sort, body);
    }
    case STerm::Tag::App: {
        STermHdl f = normalize_rec(t->args[0], depth);
        STermHdl a = normalize_rec(t->args[1], depth);
        if (f->tag == STerm::Tag::Lam) {
            Subst sub;
            sub[f->lam_var] = a;
            return normalize_rec(subst_static(f->args[0], sub), depth);
        }
        return st_app(f, a);
    }
    }
    return t;
}

} // namespace

STermHdl normalize_static(const STermHdl& term) { return normalize_rec(term, 0); }

STermHdl subst_static(const STermHdl& term, const Subst& sub) {
    if (sub.empty())
        return term;
    switch (term->tag) {
    case STerm::Tag::Var: {
        auto it = sub.find(term->name);
        return it == sub.end() ? term : it->second;
    }
    case STerm::Tag::IntLit:
    case STerm::Tag::BoolLit: return term;
    case STerm::Tag::Lin: {
        STermHdl acc = st_lin(term->ival, {});
        LinTerms keep;
        for (const auto& [v, c] : term->lin) {
            auto it = sub.find(v);
            if (it == sub.end()) {
                keep.push_back({v, c});
            } else {
                STermHdl repl = normalize_static(it->second);
                assert(repl->tag == STerm::Tag::Lin);
                acc = lin_combine(acc, repl, c);
            }
        }
        LinTerms merged = acc->lin;
        lin_add_into(merged, keep, 1);
        return st_lin(acc->ival, std::move(merged));
    }
    case STerm::Tag::Cmp:
        return normalize_static(st_cmp(term->cmp, subst_static(term->args[0], sub)));
    case STerm::Tag::Not: return st_not(subst_static(term->args[0], sub));
    case STerm::Tag::Con: {
        std::vector<STermHdl> args;
        args.reserve(term->args.size());
        for (const auto& a : term->args)
            args.push_back(subst_static(a, sub));
        return st_con(term->name, std::move(args), term->sort);
    }
    case STerm::Tag::Lam: {
        Subst inner = sub;
        inner.erase(term->lam_var);
        return st_lam(term->lam_var, term->lam_sort, subst_static(term->args[0], inner));
    }
    case STerm::Tag::App:
        return st_app(subst_static(term->args[0], sub), subst_static(term->args[1], sub));
    }
    return term;
}

bool sterm_syntactic_equal(const STermHdl& a, const STermHdl& b) {
    if (a.get() == b.get())
        return true;
    if (a->tag != b->tag)
        return false;
    switch (a->tag) {
    case STerm::Tag::Var: return a->name == b->name;
    case STerm::Tag::IntLit: return a->ival == b->ival;
    case STerm::Tag::BoolLit: return a->bval == b->bval;
    case STerm::Tag::Lin: return a->ival == b->ival && a->lin == b->lin;
    case STerm::Tag::Cmp:
        return a->cmp == b->cmp && sterm_syntactic_equal(a->args[0], b->args[0]);
    case STerm::Tag::Not: return sterm_syntactic_equal(a->args[0], b->args[0]);
    case STerm::Tag::Con: {
        if (a->name != b->name || a->args.size() != b->args.size())
            return false;
        for (size_t i = 0; i < a->args.size(); ++i)
            if (!sterm_syntactic_equal(a->args[i], b->args[i]))
                return false;
        return true;
    }
    case STerm::Tag::Lam:
        return a->lam_var == b->lam_var && sort_equal(a->lam_sort, b->lam_sort) &&
               sterm_syntactic_equal(a->args[0], b->args[0]);
    case STerm::Tag::App:
        return sterm_syntactic_equal(a->args[0], b->args[0]) &&
               sterm_syntactic_equal(a->args[1], b->args[1]);
    }
    return false;
}

void free_static_vars(const STermHdl& t, std::vector<std::string>& out) {
    switch (t->tag) {
    case STerm::Tag::Var: out.push_back(t->name); return;
    case STerm::Tag::Lin:
        for (const auto& [v, c] : t->lin)
            out.push_back(v);
        return;
    case STerm::Tag::Lam: {
        std::vector<std::string> inner;
        free_static_vars(t->args[0], inner);
        for (auto& v : inner)
            if (v != t->lam_var)
                out.push_back(std::move(v));
        return;
    }
    default:
        for (const auto& a : t->args)
            free_static_vars(a, out);
        return;
    }
}

bool static_var_occurs(const std::string& uniq, const STermHdl& t) {
    std::vector<std::string> fv;
    free_static_vars(t, fv);
    return std::find(fv.begin(), fv.end(), uniq) != fv.end();
}

EqResult static_equal(const STermHdl& a0, const STermHdl& b0) {
    STermHdl a = normalize_static(a0);
    STermHdl b = normalize_static(b0);
    EqResult res{EqResult::Verdict::True, {}};

    // Recursive worker; False is sticky, residuals accumulate.
    auto go = [&](auto&& self, const STermHdl& x, const STermHdl& y) -> void {
        if (res.verdict == EqResult::Verdict::False)
            return;
        if (sterm_syntactic_equal(x, y))
            return;
        SortHdl s = x->sort;
        if (s && s->tag == Sort::Tag::Int) {
            res.verdict = EqResult::Verdict::Residual;
            res.residuals.push_back({x, y});
            return;
        }
        if (s && s->tag == Sort::Tag::Bool) {
            res.verdict = EqResult::Verdict::Residual;
            res.residuals.push_back({x, y});
            return;
        }
        if (x->tag == STerm::Tag::Con && y->tag == STerm::Tag::Con) {
            if (x->name != y->name || x->args.size() != y->args.size()) {
                res.verdict = EqResult::Verdict::False;
                return;
            }
            for (size_t i = 0; i < x->args.size(); ++i)
                self(self, x->args[i], y->args[i]);
            return;
        }
        res.verdict = EqResult::Verdict::False;
    };
    go(go, a, b);
    if (res.verdict == EqResult::Verdict::False)
        res.residuals.clear();
    return res;
}

} // namespace miniats
