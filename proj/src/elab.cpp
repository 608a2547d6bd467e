#include <algorithm>
#include <cassert>

#include "miniats/checker.hpp"

namespace miniats {

using ast::Decl;

Checker::Checker(Env& env, Reporter& reporter) : env_(env), rep_(reporter) {}

void Checker::fail(const Loc& loc, DiagKind kind, const std::string& msg) {
    rep_.error(loc, kind, msg);
    throw CheckAbort{};
}

Checker::Snapshot Checker::save() const {
    return {sctx_.vars.size(), sscope_.size(), sctx_.hyps, dctx_};
}

void Checker::restore(const Snapshot& s) {
    sctx_.vars.resize(s.svars);
    sscope_.resize(s.sscope);
    sctx_.hyps = s.hyps;
    dctx_ = s.dctx;
}

std::string Checker::fresh(const std::string& base) {
    int& n = name_uses_[base];
    std::string name = n == 0 ? base : base + "$" + std::to_string(n);
    ++n;
    // Guard against collisions with explicit $-suffixed user names.
    while (name_uses_.count(name) && name != base)
        name = base + "$" + std::to_string(n++);
    if (name != base)
        name_uses_[name] = 1;
    return name;
}

std::string Checker::push_svar(const std::string& surface, SortHdl sort) {
    std::string uniq = fresh(surface);
    sscope_.push_back({surface, uniq});
    sctx_.vars.push_back({uniq, std::move(sort)});
    return uniq;
}

std::string Checker::push_skolem(const std::string& base, SortHdl sort) {
    std::string uniq = fresh(base);
    sctx_.vars.push_back({uniq, std::move(sort)});
    return uniq;
}

void Checker::push_hyp(const STermHdl& h) {
    STermHdl n = normalize_static(h);
    if (n->tag == STerm::Tag::BoolLit && n->bval)
        return;
    sctx_.hyps.push_back(n);
}

std::optional<std::string> Checker::lookup_svar(const std::string& surface) const {
    for (auto it = sscope_.rbegin(); it != sscope_.rend(); ++it)
        if (it->first == surface)
            return it->second;
    return std::nullopt;
}

const Checker::DynBind* Checker::lookup_dvar(const std::string& name) const {
    for (auto it = dctx_.rbegin(); it != dctx_.rend(); ++it)
        if (it->name == name)
            return &*it;
    return nullptr;
}

// ---- sorts --------------------------------------------------------------------

SortHdl Checker::elab_sort(const ast::SortPtr& s, bool allow_nat, bool* was_nat) {
    if (was_nat)
        *was_nat = false;
    if (s->tag == ast::SortExpr::Tag::Arrow)
        return sort_arrow(elab_sort(s->dom, false, nullptr), elab_sort(s->cod, false, nullptr));
    const std::string& n = s->name;
    if (n == "int")
        return sort_int();
    if (n == "bool")
        return sort_bool();
    if (n == "addr")
        return sort_addr();
    if (n == "prop")
        return sort_prop();
    if (n == "type")
        return sort_type();
    if (n == "nat") {
        if (!allow_nat)
            fail(s->loc, DiagKind::SortError, "'nat' is binder sugar and not a sort here");
        if (was_nat)
            *was_nat = true;
        return sort_int();
    }
    if (env_.statics.has_datasort(n))
        return sort_data(n);
    fail(s->loc, DiagKind::SortError, "unknown sort '" + n + "'");
}

// ---- static expressions ----------------------------------------------------------

STermHdl Checker::elab_sexp(const ast::SExpPtr& e) {
    switch (e->tag) {
    case ast::SExp::Tag::Int: return st_int(e->value);
    case ast::SExp::Tag::Var: {
        if (e->name == "true")
            return st_bool(true);
        if (e->name == "false")
            return st_bool(false);
        if (auto uniq = lookup_svar(e->name)) {
            const TeleVar* v = sctx_.lookup(*uniq);
            assert(v);
            return st_var(*uniq, v->sort);
        }
        if (const StaticConSig* sig = env_.statics.ctor(e->name)) {
            if (!sig->arg_sorts.empty())
                fail(e->loc, DiagKind::SortError,
                     "static constructor '" + e->name + "' expects arguments");
            return st_con(env_.statics.resolve(e->name), {}, sig->result);
        }
        fail(e->loc, DiagKind::UnboundStaticVar, "unbound static variable '" + e->name + "'");
    }
    case ast::SExp::Tag::App: {
        const StaticConSig* sig = env_.statics.ctor(e->name);
        if (!sig)
            fail(e->loc, DiagKind::UnboundStaticVar,
                 "unknown static constructor '" + e->name + "'");
        if (sig->arg_sorts.size() != e->args.size())
            fail(e->loc, DiagKind::SortError,
                 "constructor '" + e->name + "' expects " + std::to_string(sig->arg_sorts.size()) +
                     " arguments, found " + std::to_string(e->args.size()));
        std::vector<STermHdl> args;
        for (size_t i = 0; i < e->args.size(); ++i) {
            STermHdl a = elab_sexp(e->args[i]);
            if (!sort_equal(a->sort, sig->arg_sorts[i]))
                fail(e->args[i]->loc, DiagKind::SortError,
                     "argument " + std::to_string(i + 1) + " of '" + e->name + "': expected " +
                         sort_str(sig->arg_sorts[i]) + ", found " + sort_str(a->sort));
            args.push_back(std::move(a));
        }
        return st_con(env_.statics.resolve(e->name), std::move(args), sig->result);
    }
    case ast::SExp::Tag::Neg: {
        STermHdl a = elab_sexp(e->args[0]);
        if (a->sort->tag != Sort::Tag::Int)
            fail(e->loc, DiagKind::SortError, "negation needs an int, found " + sort_str(a->sort));
        return st_con("-", {st_int(0), a}, sort_int());
    }
    case ast::SExp::Tag::Binop: {
        STermHdl l = elab_sexp(e->args[0]);
        STermHdl r = elab_sexp(e->args[1]);
        bool arith = e->name == "+" || e->name == "-" || e->name == "*";
        if (l->sort->tag != Sort::Tag::Int || r->sort->tag != Sort::Tag::Int)
            fail(e->loc, DiagKind::SortError,
                 "operator '" + e->name + "' needs int operands, found " + sort_str(l->sort) +
                     " and " + sort_str(r->sort));
        return st_con(e->name, {l, r}, arith ? sort_int() : sort_bool());
    }
    }
    fail(e->loc, DiagKind::InternalError, "unhandled static expression");
}

// ---- quantifier groups --------------------------------------------------------------

// Binds group variables into the current scope and returns the telescope.
// Duplicate binder names within the same telescope are rejected.
std::vector<TeleVarG> Checker::elab_qgroups(const std::vector<ast::QGroup>& groups,
                                            std::vector<std::string>* bound_names) {
    std::vector<TeleVarG> tele;
    std::vector<std::string> seen;
    for (const auto& g : groups) {
        bool was_nat = false;
        SortHdl sort = elab_sort(g.sort, true, &was_nat);
        size_t first = tele.size();
        for (const auto& v : g.vars) {
            if (std::find(seen.begin(), seen.end(), v) != seen.end())
                fail(g.loc, DiagKind::SortError,
                     "static variable '" + v + "' shadows a binder of the same telescope");
            seen.push_back(v);
            std::string uniq = push_svar(v, sort);
            if (bound_names)
                bound_names->push_back(uniq);
            TeleVarG tv;
            tv.name = uniq;
            tv.sort = sort;
            if (was_nat) {
                // n >= 0, i.e. -n <= 0
                tv.guards.push_back(st_cmp(CmpOp::Le, st_lin(0, {{uniq, -1}})));
            }
            tele.push_back(std::move(tv));
        }
        // Explicit guards attach to the last binder of the group.
        if (!g.guards.empty()) {
            for (const auto& ge : g.guards) {
                STermHdl gt = elab_sexp(ge);
                if (gt->sort->tag != Sort::Tag::Bool)
                    fail(ge->loc, DiagKind::SortError, "guard must be bool-sorted");
                tele.back().guards.push_back(normalize_static(gt));
            }
        }
        (void)first;
    }
    return tele;
}

DTypeHdl Checker::wrap_telescope(const std::vector<TeleVarG>& tele, DTypeHdl core) {
    for (auto it = tele.rbegin(); it != tele.rend(); ++it) {
        for (auto g = it->guards.rbegin(); g != it->guards.rend(); ++g)
            core = dt_guarded(*g, core);
        core = dt_forall(it->name, it->sort, core);
    }
    return core;
}

// ---- types ----------------------------------------------------------------------------

DTypeHdl Checker::elab_type(const ast::TypePtr& t) {
    switch (t->tag) {
    case ast::TypeExpr::Tag::Quant: {
        Snapshot snap = save();
        std::vector<TeleVarG> tele = elab_qgroups({t->group}, nullptr);
        DTypeHdl body = elab_type(t->body);
        restore(snap);
        if (t->group.universal)
            return wrap_telescope(tele, body);
        for (auto it = tele.rbegin(); it != tele.rend(); ++it) {
            for (auto g = it->guards.rbegin(); g != it->guards.rend(); ++g)
                body = dt_asserting(*g, body);
            body = dt_exists(it->name, it->sort, body);
        }
        return body;
    }
    case ast::TypeExpr::Tag::App: {
        const std::string& head = t->name;
        auto elab_args = [&](const std::vector<std::pair<std::string, SortHdl>>& params) {
            if (params.size() != t->sargs.size())
                fail(t->loc, DiagKind::SortError,
                     "'" + head + "' expects " + std::to_string(params.size()) +
                         " index arguments, found " + std::to_string(t->sargs.size()));
            std::vector<STermHdl> args;
            for (size_t i = 0; i < t->sargs.size(); ++i) {
                STermHdl a = elab_sexp(t->sargs[i]);
                if (!sort_equal(a->sort, params[i].second))
                    fail(t->sargs[i]->loc, DiagKind::SortError,
                         "index " + std::to_string(i + 1) + " of '" + head + "': expected " +
                             sort_str(params[i].second) + ", found " + sort_str(a->sort));
                args.push_back(normalize_static(a));
            }
            return args;
        };
        if (head == "int" || head == "bool") {
            if (t->sargs.empty())
                return head == "int" ? dt_plain_int() : dt_plain_bool();
            if (t->sargs.size() != 1)
                fail(t->loc, DiagKind::SortError, "'" + head + "' takes one index");
            STermHdl idx = elab_sexp(t->sargs[0]);
            SortHdl want = head == "int" ? sort_int() : sort_bool();
            if (!sort_equal(idx->sort, want))
                fail(t->loc, DiagKind::SortError, "'" + head + "' index must have sort " +
                                                      sort_str(want) + ", found " +
                                                      sort_str(idx->sort));
            return head == "int" ? dt_ints(normalize_static(idx))
                                 : dt_bools(normalize_static(idx));
        }
        if (head == "ptr") {
            if (t->sargs.size() != 1)
                fail(t->loc, DiagKind::SortError, "'ptr' takes one address index");
            STermHdl idx = elab_sexp(t->sargs[0]);
            if (idx->sort->tag != Sort::Tag::Addr)
                fail(t->loc, DiagKind::SortError, "'ptr' index must have sort addr");
            return dt_ptrs(idx);
        }
        if (const TypeConInfo* info = env_.type_con(head)) {
            switch (info->kind) {
            case TypeConInfo::Kind::Typedef: {
                if (info->params.size() != t->sargs.size())
                    fail(t->loc, DiagKind::SortError,
                         "'" + head + "' expects " + std::to_string(info->params.size()) +
                             " arguments");
                Subst sub;
                for (size_t i = 0; i < info->params.size(); ++i) {
                    STermHdl a = elab_sexp(t->sargs[i]);
                    if (!sort_equal(a->sort, info->params[i].second))
                        fail(t->sargs[i]->loc, DiagKind::SortError,
                             "argument " + std::to_string(i + 1) + " of '" + head +
                                 "': expected sort " + sort_str(info->params[i].second));
                    sub[info->params[i].first] = normalize_static(a);
                }
                return subst_type(info->typedef_body, sub);
            }
            case TypeConInfo::Kind::Datatype: return dt_data(head, elab_args(info->params));
            case TypeConInfo::Kind::Dataprop:
            case TypeConInfo::Kind::Absprop: return dt_prop(head, elab_args(info->params));
            case TypeConInfo::Kind::Abstype: return dt_abst(head, elab_args(info->params));
            }
        }
        if (t->sargs.empty()) {
            if (auto uniq = lookup_svar(head)) {
                const TeleVar* v = sctx_.lookup(*uniq);
                if (v->sort->tag != Sort::Tag::Type)
                    fail(t->loc, DiagKind::SortError, "static variable '" + head +
                                                          "' has sort " + sort_str(v->sort) +
                                                          ", not type");
                return dt_stat(st_var(*uniq, v->sort));
            }
        }
        fail(t->loc, DiagKind::SortError, "unknown type '" + head + "'");
    }
    case ast::TypeExpr::Tag::Fun: {
        std::vector<DTypeHdl> pdoms, vdoms;
        for (const auto& d : t->pdoms) {
            DTypeHdl dt = elab_type(d);
            if (kind_of(dt) != TKind::Prop)
                fail(d->loc, DiagKind::SortError, "proof parameter must be a prop");
            pdoms.push_back(dt);
        }
        std::vector<DTypeHdl> unsplit;
        for (const auto& d : t->vdoms)
            unsplit.push_back(elab_type(d));
        if (!t->doms_split && !unsplit.empty()) {
            bool all_prop = true, all_type = true;
            for (const auto& d : unsplit)
                (kind_of(d) == TKind::Prop ? all_type : all_prop) = false;
            if (all_prop) {
                pdoms = std::move(unsplit);
                unsplit.clear();
            } else if (!all_type) {
                fail(t->loc, DiagKind::SortError,
                     "mixed proof/program domains need an explicit '|'");
            }
        }
        vdoms = std::move(unsplit);
        DTypeHdl cod = elab_type(t->cod);
        return dt_fun(std::move(pdoms), std::move(vdoms), cod);
    }
    case ast::TypeExpr::Tag::Tuple: {
        std::vector<DTypeHdl> pcomps, vcomps;
        for (const auto& c : t->pcomps) {
            DTypeHdl dt = elab_type(c);
            if (kind_of(dt) != TKind::Prop)
                fail(c->loc, DiagKind::SortError, "proof component must be a prop");
            pcomps.push_back(dt);
        }
        std::vector<DTypeHdl> unsplit;
        for (const auto& c : t->vcomps)
            unsplit.push_back(elab_type(c));
        if (!t->comps_split && !unsplit.empty()) {
            bool all_prop = true, all_type = true;
            for (const auto& d : unsplit)
                (kind_of(d) == TKind::Prop ? all_type : all_prop) = false;
            if (all_prop) {
                pcomps = std::move(unsplit);
                unsplit.clear();
            } else if (!all_type) {
                fail(t->loc, DiagKind::SortError,
                     "mixed proof/program tuple components need an explicit '|'");
            }
        }
        vcomps = std::move(unsplit);
        return normalize_type(dt_tuple(std::move(pcomps), std::move(vcomps)));
    }
    }
    fail(t->loc, DiagKind::InternalError, "unhandled type expression");
}

// ---- declarations -------------------------------------------------------------------

void Checker::check_duplicate_type_name(const std::string& name, const Loc& loc) {
    if (env_.type_cons.count(name) || name == "int" || name == "bool" || name == "ptr")
        fail(loc, DiagKind::DuplicateName, "type name '" + name + "' is already declared");
}

void Checker::process_decl(const ast::Decl& d, bool from_prelude) {
    switch (d.tag) {
    case Decl::Tag::Datasort: decl_datasort(d); break;
    case Decl::Tag::Datatype: decl_datatype(d, false); break;
    case Decl::Tag::Dataprop: decl_datatype(d, true); break;
    case Decl::Tag::Absprop: decl_abs(d, true); break;
    case Decl::Tag::Abstype: decl_abs(d, false); break;
    case Decl::Tag::Typedef: decl_typedef(d); break;
    case Decl::Tag::Praxi: decl_praxi(d, from_prelude); break;
    case Decl::Tag::Alias: decl_alias(d); break;
    case Decl::Tag::Fun: decl_fun_group(*d.fun_group, true, from_prelude); break;
    case Decl::Tag::Val: decl_val(d, from_prelude); break;
    }
}

void Checker::decl_datasort(const ast::Decl& d) {
    if (env_.statics.has_datasort(d.name) || d.name == "int" || d.name == "bool" ||
        d.name == "addr" || d.name == "prop" || d.name == "type" || d.name == "nat")
        fail(d.loc, DiagKind::DuplicateName, "sort '" + d.name + "' is already declared");
    DatasortDef def;
    def.name = d.name;
    def.loc = d.loc;
    env_.statics.add_datasort(def); // registered first so constructors can recurse
    std::vector<std::string> ctor_names;
    for (const auto& c : d.ctors) {
        if (env_.statics.ctor(c.name))
            fail(c.loc, DiagKind::DuplicateConstructor,
                 "static constructor '" + c.name + "' is already declared");
        StaticConSig sig;
        sig.name = c.name;
        for (const auto& s : c.arg_sorts)
            sig.arg_sorts.push_back(elab_sort(s, false, nullptr));
        sig.result = sort_data(d.name);
        env_.statics.add_ctor(std::move(sig));
        ctor_names.push_back(c.name);
    }
    def.ctor_names = std::move(ctor_names);
    env_.statics.add_datasort(def);
}

void Checker::decl_datatype(const ast::Decl& d, bool is_prop) {
    check_duplicate_type_name(d.name, d.loc);
    TypeConInfo info;
    info.kind = is_prop ? TypeConInfo::Kind::Dataprop : TypeConInfo::Kind::Datatype;
    info.name = d.name;
    info.loc = d.loc;
    for (const auto& p : d.params)
        info.params.push_back({p.name, elab_sort(p.sort, false, nullptr)});
    env_.type_cons[d.name] = info; // visible to recursive constructor fields

    std::vector<std::string> ctor_names;
    for (const auto& c : d.ctors) {
        if (env_.con_sigs.count(c.name))
            fail(c.loc, DiagKind::DuplicateConstructor,
                 "constructor '" + c.name + "' is already declared");
        Snapshot snap = save();
        ConSig sig;
        sig.name = c.name;
        sig.owner = d.name;
        sig.owner_is_prop = is_prop;
        sig.loc = c.loc;

        // Named header parameters are implicitly quantified per constructor.
        std::map<size_t, std::string> named_pos;
        for (size_t i = 0; i < info.params.size(); ++i) {
            if (!info.params[i].first.empty()) {
                std::string uniq = push_svar(info.params[i].first, info.params[i].second);
                named_pos[i] = uniq;
                sig.telescope.push_back({uniq, info.params[i].second, {}});
            }
        }
        for (auto& tv : elab_qgroups(c.quants, nullptr))
            sig.telescope.push_back(std::move(tv));

        if (!c.has_result_args || c.result_args.size() != info.params.size())
            fail(c.loc, DiagKind::SortError,
                 "constructor '" + c.name + "' must instantiate all " +
                     std::to_string(info.params.size()) + " indices of '" + d.name + "'");
        for (size_t i = 0; i < c.result_args.size(); ++i) {
            STermHdl a = elab_sexp(c.result_args[i]);
            if (!sort_equal(a->sort, info.params[i].second))
                fail(c.result_args[i]->loc, DiagKind::SortError,
                     "result index " + std::to_string(i + 1) + " of '" + c.name +
                         "': expected sort " + sort_str(info.params[i].second) + ", found " +
                         sort_str(a->sort));
            if (named_pos.count(i)) {
                STermHdl want = st_var(named_pos[i], info.params[i].second);
                if (!sterm_syntactic_equal(normalize_static(a), normalize_static(want)))
                    fail(c.result_args[i]->loc, DiagKind::SortError,
                         "result index " + std::to_string(i + 1) + " of '" + c.name +
                             "' must be the header parameter '" + info.params[i].first + "'");
            }
            sig.result_args.push_back(normalize_static(a));
        }
        if (c.has_of) {
            for (const auto& at : c.arg_types) {
                DTypeHdl t = elab_type(at);
                TKind k = kind_of(t);
                if (is_prop && k != TKind::Prop)
                    fail(at->loc, DiagKind::SortError,
                         "dataprop constructor fields must be props");
                if (!is_prop && k != TKind::Type)
                    fail(at->loc, DiagKind::SortError,
                         "datatype constructor fields must be program types");
                sig.args.push_back(t);
            }
        }
        restore(snap);

        DTypeHdl result = is_prop ? dt_prop(d.name, sig.result_args)
                                  : dt_data(d.name, sig.result_args);
        DTypeHdl fun = is_prop ? dt_fun(sig.args, {}, result) : dt_fun({}, sig.args, result);
        sig.as_value = wrap_telescope(sig.telescope, fun);

        ctor_names.push_back(c.name);
        env_.con_sigs[c.name] = std::move(sig);
    }
    env_.type_cons[d.name].ctor_names = std::move(ctor_names);
}

void Checker::decl_abs(const ast::Decl& d, bool is_prop) {
    check_duplicate_type_name(d.name, d.loc);
    TypeConInfo info;
    info.kind = is_prop ? TypeConInfo::Kind::Absprop : TypeConInfo::Kind::Abstype;
    info.name = d.name;
    info.loc = d.loc;
    for (const auto& p : d.params)
        info.params.push_back({p.name, elab_sort(p.sort, false, nullptr)});
    env_.type_cons[d.name] = std::move(info);
    maybe_register_builtins();
}

void Checker::decl_typedef(const ast::Decl& d) {
    check_duplicate_type_name(d.name, d.loc);
    TypeConInfo info;
    info.kind = TypeConInfo::Kind::Typedef;
    info.name = d.name;
    info.loc = d.loc;
    Snapshot snap = save();
    for (const auto& p : d.params) {
        SortHdl s = elab_sort(p.sort, false, nullptr);
        std::string uniq = push_svar(p.name, s);
        info.params.push_back({uniq, s});
    }
    info.typedef_body = elab_type(d.type);
    restore(snap);
    env_.type_cons[d.name] = std::move(info);
    maybe_register_builtins();
}

// Registers lte_int once the prelude has declared E and lte: a primitive
// comparison on integer-named elements so monomorphic entries can run.
void Checker::maybe_register_builtins() {
    if (env_.globals.count("lte_int"))
        return;
    const TypeConInfo* e = env_.type_con("E");
    const TypeConInfo* lte = env_.type_con("lte");
    if (!e || !lte || e->kind != TypeConInfo::Kind::Abstype || e->params.size() != 2)
        return;
    STermHdl int_con = st_con("int", {}, sort_type());
    STermHdl x1 = st_var("x1", sort_int());
    STermHdl x2 = st_var("x2", sort_int());
    DTypeHdl ea1 = dt_abst("E", {int_con, x1});
    DTypeHdl ea2 = dt_abst("E", {int_con, x2});
    DTypeHdl cmp = dt_bools(normalize_static(st_con("<=", {x1, x2}, sort_bool())));
    DTypeHdl fun = dt_fun({}, {ea1, ea2}, cmp);
    GlobalVal g;
    g.name = "lte_int";
    g.type = dt_forall("x1", sort_int(), dt_forall("x2", sort_int(), fun));
    g.is_proof = false;
    g.origin = GlobalVal::Origin::Builtin;
    g.from_prelude = true;
    env_.globals["lte_int"] = std::move(g);
}

void Checker::decl_praxi(const ast::Decl& d, bool from_prelude) {
    Snapshot snap = save();
    DTypeHdl full = elab_type(d.type);
    restore(snap);

    LemmaSig sig;
    sig.name = d.name;
    sig.loc = d.loc;
    sig.as_value = full;

    DTypeHdl core = full;
    while (true) {
        if (core->tag == DType::Tag::Forall) {
            sig.telescope.push_back({core->var, core->var_sort, {}});
            core = core->body;
        } else if (core->tag == DType::Tag::Guarded) {
            if (sig.telescope.empty())
                fail(d.loc, DiagKind::SortError, "lemma guard precedes its binders");
            sig.telescope.back().guards.push_back(core->guard);
            core = core->body;
        } else {
            break;
        }
    }
    if (core->tag != DType::Tag::Fun || !core->vdoms.empty())
        fail(d.loc, DiagKind::SortError,
             "a lemma must be a proof function over prop arguments");
    sig.pargs = core->pdoms;
    sig.result = core->cod;
    if (kind_of(sig.result) != TKind::Prop)
        fail(d.loc, DiagKind::SortError, "a lemma must conclude a prop");

    if (const LemmaSig* prev = env_.lemma(d.name)) {
        if (lemma_sig_equal(*prev, sig))
            return; // identical redeclaration is idempotent
        fail(d.loc, DiagKind::DuplicateLemma,
             "lemma '" + d.name + "' is already declared with a different signature");
    }
    env_.lemmas[d.name] = std::move(sig);
    env_.lemma_order.push_back(d.name);
}

void Checker::decl_alias(const ast::Decl& d) {
    bool any = false;
    if (env_.statics.ctor(d.alias_target)) {
        if (env_.statics.ctor(d.name) && env_.statics.resolve(d.name) != d.alias_target)
            fail(d.loc, DiagKind::DuplicateName,
                 "static alias '" + d.name + "' is already taken");
        env_.statics.add_alias(d.name, d.alias_target);
        any = true;
    }
    if (env_.con_sigs.count(d.alias_target)) {
        auto it = env_.dyn_aliases.find(d.name);
        if ((it != env_.dyn_aliases.end() && it->second != d.alias_target) ||
            env_.con_sigs.count(d.name))
            fail(d.loc, DiagKind::DuplicateName, "alias '" + d.name + "' is already taken");
        env_.dyn_aliases[d.name] = d.alias_target;
        any = true;
    }
    if (!any)
        fail(d.loc, DiagKind::UnboundVar,
             "alias target '" + d.alias_target + "' is not a known constructor");
}

void Checker::bind_value(const std::string& name, DTypeHdl type, bool is_proof) {
    dctx_.push_back({name, std::move(type), is_proof});
}

} // namespace miniats
