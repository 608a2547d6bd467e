#include "miniats/types.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace miniats {

namespace {
std::shared_ptr<DType> make(DType::Tag tag) {
    auto t = std::make_shared<DType>();
    t->tag = tag;
    return t;
}
} // namespace

DTypeHdl dt_ints(STermHdl i) {
    auto t = make(DType::Tag::IntS);
    t->index = std::move(i);
    return t;
}
DTypeHdl dt_bools(STermHdl b) {
    auto t = make(DType::Tag::BoolS);
    t->index = std::move(b);
    return t;
}
DTypeHdl dt_ptrs(STermHdl l) {
    auto t = make(DType::Tag::PtrS);
    t->index = std::move(l);
    return t;
}
DTypeHdl dt_stat(STermHdl s) {
    auto t = make(DType::Tag::Stat);
    t->index = std::move(s);
    return t;
}
DTypeHdl dt_data(std::string name, std::vector<STermHdl> sargs) {
    auto t = make(DType::Tag::Data);
    t->name = std::move(name);
    t->sargs = std::move(sargs);
    return t;
}
DTypeHdl dt_prop(std::string name, std::vector<STermHdl> sargs) {
    auto t = make(DType::Tag::Prop);
    t->name = std::move(name);
    t->sargs = std::move(sargs);
    return t;
}
DTypeHdl dt_abst(std::string name, std::vector<STermHdl> sargs) {
    auto t = make(DType::Tag::Abst);
    t->name = std::move(name);
    t->sargs = std::move(sargs);
    return t;
}
DTypeHdl dt_fun(std::vector<DTypeHdl> pdoms, std::vector<DTypeHdl> vdoms, DTypeHdl cod) {
    auto t = make(DType::Tag::Fun);
    t->pdoms = std::move(pdoms);
    t->vdoms = std::move(vdoms);
    t->cod = std::move(cod);
    return t;
}
DTypeHdl dt_tuple(std::vector<DTypeHdl> pcomps, std::vector<DTypeHdl> vcomps) {
    auto t = make(DType::Tag::Tuple);
    t->pcomps = std::move(pcomps);
    t->vcomps = std::move(vcomps);
    return t;
}
DTypeHdl dt_guarded(STermHdl guard, DTypeHdl body) {
    auto t = make(DType::Tag::Guarded);
    t->guard = std::move(guard);
    t->body = std::move(body);
    return t;
}
DTypeHdl dt_asserting(STermHdl guard, DTypeHdl body) {
    auto t = make(DType::Tag::Asserting);
    t->guard = std::move(guard);
    t->body = std::move(body);
    return t;
}
DTypeHdl dt_forall(std::string var, SortHdl sort, DTypeHdl body) {
    auto t = make(DType::Tag::Forall);
    t->var = std::move(var);
    t->var_sort = std::move(sort);
    t->body = std::move(body);
    return t;
}
DTypeHdl dt_exists(std::string var, SortHdl sort, DTypeHdl body) {
    auto t = make(DType::Tag::Exists);
    t->var = std::move(var);
    t->var_sort = std::move(sort);
    t->body = std::move(body);
    return t;
}

DTypeHdl dt_plain_int() {
    static DTypeHdl t = dt_exists("@v", sort_int(), dt_ints(st_var("@v", sort_int())));
    return t;
}
DTypeHdl dt_plain_bool() {
    static DTypeHdl t = dt_exists("@v", sort_bool(), dt_bools(st_var("@v", sort_bool())));
    return t;
}

TKind kind_of(const DTypeHdl& t) {
    switch (t->tag) {
    case DType::Tag::Prop: return TKind::Prop;
    case DType::Tag::Guarded:
    case DType::Tag::Asserting:
    case DType::Tag::Forall:
    case DType::Tag::Exists: return kind_of(t->body);
    case DType::Tag::Fun:
        // A function is a proof function when it produces a proof.
        return kind_of(t->cod);
    case DType::Tag::Tuple:
        if (t->vcomps.empty() && !t->pcomps.empty())
            return TKind::Prop;
        return TKind::Type;
    default: return TKind::Type;
    }
}

std::string type_str(const DTypeHdl& t) {
    std::ostringstream os;
    switch (t->tag) {
    case DType::Tag::IntS: os << "int(" << sterm_str(t->index) << ")"; break;
    case DType::Tag::BoolS: os << "bool(" << sterm_str(t->index) << ")"; break;
    case DType::Tag::PtrS: os << "ptr(" << sterm_str(t->index) << ")"; break;
    case DType::Tag::Stat: os << sterm_str(t->index); break;
    case DType::Tag::Data:
    case DType::Tag::Prop:
    case DType::Tag::Abst: {
        os << t->name;
        if (!t->sargs.empty()) {
            os << "(";
            for (size_t i = 0; i < t->sargs.size(); ++i) {
                if (i)
                    os << ", ";
                os << sterm_str(t->sargs[i]);
            }
            os << ")";
        }
        break;
    }
    case DType::Tag::Fun: {
        os << "(";
        for (size_t i = 0; i < t->pdoms.size(); ++i) {
            if (i)
                os << ", ";
            os << type_str(t->pdoms[i]);
        }
        if (!t->pdoms.empty())
            os << " | ";
        for (size_t i = 0; i < t->vdoms.size(); ++i) {
            if (i)
                os << ", ";
            os << type_str(t->vdoms[i]);
        }
        os << ") -> " << type_str(t->cod);
        break;
    }
    case DType::Tag::Tuple: {
        os << "(";
        for (size_t i = 0; i < t->pcomps.size(); ++i) {
            if (i)
                os << ", ";
            os << type_str(t->pcomps[i]);
        }
        if (!t->pcomps.empty())
            os << " | ";
        for (size_t i = 0; i < t->vcomps.size(); ++i) {
            if (i)
                os << ", ";
            os << type_str(t->vcomps[i]);
        }
        os << ")";
        break;
    }
    case DType::Tag::Guarded:
        os << sterm_str(t->guard) << " => " << type_str(t->body);
        break;
    case DType::Tag::Asserting:
        os << sterm_str(t->guard) << " && " << type_str(t->body);
        break;
    case DType::Tag::Forall:
        os << "{" << t->var << ":" << sort_str(t->var_sort) << "} " << type_str(t->body);
        break;
    case DType::Tag::Exists:
        os << "[" << t->var << ":" << sort_str(t->var_sort) << "] " << type_str(t->body);
        break;
    }
    return os.str();
}

namespace {
std::vector<STermHdl> subst_sargs(const std::vector<STermHdl>& sargs, const Subst& sub) {
    std::vector<STermHdl> out;
    out.reserve(sargs.size());
    for (const auto& s : sargs)
        out.push_back(normalize_static(subst_static(s, sub)));
    return out;
}
std::vector<DTypeHdl> subst_types(const std::vector<DTypeHdl>& ts, const Subst& sub) {
    std::vector<DTypeHdl> out;
    out.reserve(ts.size());
    for (const auto& t : ts)
        out.push_back(subst_type(t, sub));
    return out;
}
} // namespace

DTypeHdl subst_type(const DTypeHdl& t, const Subst& sub) {
    if (sub.empty())
        return t;
    switch (t->tag) {
    case DType::Tag::IntS: return dt_ints(normalize_static(subst_static(t->index, sub)));
    case DType::Tag::BoolS: return dt_bools(normalize_static(subst_static(t->index, sub)));
    case DType::Tag::PtrS: return dt_ptrs(normalize_static(subst_static(t->index, sub)));
    case DType::Tag::Stat:
        return normalize_type(dt_stat(normalize_static(subst_static(t->index, sub))));
    case DType::Tag::Data: return dt_data(t->name, subst_sargs(t->sargs, sub));
    case DType::Tag::Prop: return dt_prop(t->name, subst_sargs(t->sargs, sub));
    case DType::Tag::Abst: return dt_abst(t->name, subst_sargs(t->sargs, sub));
    case DType::Tag::Fun:
        return dt_fun(subst_types(t->pdoms, sub), subst_types(t->vdoms, sub),
                      subst_type(t->cod, sub));
    case DType::Tag::Tuple:
        return dt_tuple(subst_types(t->pcomps, sub), subst_types(t->vcomps, sub));
    case DType::Tag::Guarded:
        return dt_guarded(normalize_static(subst_static(t->guard, sub)), subst_type(t->body, sub));
    case DType::Tag::Asserting:
        return dt_asserting(normalize_static(subst_static(t->guard, sub)),
                            subst_type(t->body, sub));
    case DType::Tag::Forall:
    case DType::Tag::Exists: {
        Subst inner = sub;
        inner.erase(t->var);
        DTypeHdl body = subst_type(t->body, inner);
        return t->tag == DType::Tag::Forall ? dt_forall(t->var, t->var_sort, body)
                                            : dt_exists(t->var, t->var_sort, body);
    }
    }
    return t;
}

DTypeHdl normalize_type(const DTypeHdl& t) {
    switch (t->tag) {
    case DType::Tag::Stat: {
        STermHdl s = normalize_static(t->index);
        if (s->tag == STerm::Tag::Con && s->args.empty()) {
            if (s->name == "int")
                return dt_plain_int();
            if (s->name == "bool")
                return dt_plain_bool();
        }
        return dt_stat(s);
    }
    case DType::Tag::Tuple:
        if (t->pcomps.empty() && t->vcomps.size() == 1)
            return normalize_type(t->vcomps[0]);
        return t;
    default: return t;
    }
}

bool type_mentions_var(const DTypeHdl& t, const std::string& uniq) {
    std::vector<std::string> fv;
    free_type_vars(t, fv);
    return std::find(fv.begin(), fv.end(), uniq) != fv.end();
}

void free_type_vars(const DTypeHdl& t, std::vector<std::string>& out) {
    switch (t->tag) {
    case DType::Tag::IntS:
    case DType::Tag::BoolS:
    case DType::Tag::PtrS:
    case DType::Tag::Stat: free_static_vars(t->index, out); return;
    case DType::Tag::Data:
    case DType::Tag::Prop:
    case DType::Tag::Abst:
        for (const auto& s : t->sargs)
            free_static_vars(s, out);
        return;
    case DType::Tag::Fun:
        for (const auto& d : t->pdoms)
            free_type_vars(d, out);
        for (const auto& d : t->vdoms)
            free_type_vars(d, out);
        free_type_vars(t->cod, out);
        return;
    case DType::Tag::Tuple:
        for (const auto& d : t->pcomps)
            free_type_vars(d, out);
        for (const auto& d : t->vcomps)
            free_type_vars(d, out);
        return;
    case DType::Tag::Guarded:
    case DType::Tag::Asserting:
        free_static_vars(t->guard, out);
        free_type_vars(t->body, out);
        return;
    case DType::Tag::Forall:
    case DType::Tag::Exists: {
        std::vector<std::string> inner;
        free_type_vars(t->body, inner);
        for (auto& v : inner)
            if (v != t->var)
                out.push_back(std::move(v));
        return;
    }
    }
}

// Signature equality up to alpha-renaming: used for idempotent redeclaration
// of identical lemmas.
bool lemma_sig_equal(const LemmaSig& a, const LemmaSig& b) {
    if (a.telescope.size() != b.telescope.size() || a.pargs.size() != b.pargs.size())
        return false;
    Subst rename;
    for (size_t i = 0; i < a.telescope.size(); ++i) {
        if (!sort_equal(a.telescope[i].sort, b.telescope[i].sort))
            return false;
        rename[b.telescope[i].name] = st_var(a.telescope[i].name, a.telescope[i].sort);
    }
    for (size_t i = 0; i < a.telescope.size(); ++i) {
        const auto& ga = a.telescope[i].guards;
        auto gb = b.telescope[i].guards;
        if (ga.size() != gb.size())
            return false;
        for (size_t k = 0; k < ga.size(); ++k)
            if (!sterm_syntactic_equal(normalize_static(ga[k]),
                                       normalize_static(subst_static(gb[k], rename))))
                return false;
    }
    auto type_eq = [&](const DTypeHdl& x, const DTypeHdl& y) {
        return type_str(x) == type_str(subst_type(y, rename));
    };
    for (size_t i = 0; i < a.pargs.size(); ++i)
        if (!type_eq(a.pargs[i], b.pargs[i]))
            return false;
    return type_eq(a.result, b.result);
}

const TypeConInfo* Env::type_con(const std::string& name) const {
    auto it = type_cons.find(name);
    return it == type_cons.end() ? nullptr : &it->second;
}

const ConSig* Env::con_sig(const std::string& name) const {
    auto it = con_sigs.find(resolve_dyn(name));
    return it == con_sigs.end() ? nullptr : &it->second;
}

std::string Env::resolve_dyn(const std::string& name) const {
    auto it = dyn_aliases.find(name);
    return it == dyn_aliases.end() ? name : it->second;
}

const LemmaSig* Env::lemma(const std::string& name) const {
    auto it = lemmas.find(name);
    return it == lemmas.end() ? nullptr : &it->second;
}

const GlobalVal* Env::global(const std::string& name) const {
    auto it = globals.find(name);
    return it == globals.end() ? nullptr : &it->second;
}

} // namespace miniats
