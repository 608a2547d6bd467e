#include "miniats/erase.hpp"

#include <cassert>
#include <optional>
#include <set>

#include "miniats/printer.hpp"

namespace miniats {

using namespace ast;

namespace {

bool is_prop_name(const Env& env, const std::string& name) {
    const TypeConInfo* info = env.type_con(name);
    return info && (info->kind == TypeConInfo::Kind::Dataprop ||
                    info->kind == TypeConInfo::Kind::Absprop);
}

// Syntactic kind of a surface type: props are prop applications and tuples
// made only of props.
bool surface_is_prop(const Env& env, const TypePtr& t) {
    switch (t->tag) {
    case TypeExpr::Tag::App: return is_prop_name(env, t->name);
    case TypeExpr::Tag::Quant: return surface_is_prop(env, t->body);
    case TypeExpr::Tag::Fun: return surface_is_prop(env, t->cod);
    case TypeExpr::Tag::Tuple: {
        if (!t->vcomps.empty())
            return false;
        for (const auto& c : t->pcomps)
            if (!surface_is_prop(env, c))
                return false;
        return !t->pcomps.empty();
    }
    }
    return false;
}

TypePtr erase_type(const Env& env, const TypePtr& t);

std::vector<TypePtr> erase_value_types(const Env& env, const std::vector<TypePtr>& ts) {
    std::vector<TypePtr> out;
    for (const auto& c : ts)
        if (!surface_is_prop(env, c))
            out.push_back(erase_type(env, c));
    return out;
}

TypePtr erase_type(const Env& env, const TypePtr& t) {
    switch (t->tag) {
    case TypeExpr::Tag::App: return t;
    case TypeExpr::Tag::Quant: {
        auto out = std::make_shared<TypeExpr>(*t);
        out->body = erase_type(env, t->body);
        return out;
    }
    case TypeExpr::Tag::Fun: {
        auto out = std::make_shared<TypeExpr>(*t);
        out->pdoms.clear();
        out->doms_split = false;
        out->vdoms = erase_value_types(env, t->vdoms);
        out->cod = erase_type(env, t->cod);
        return out;
    }
    case TypeExpr::Tag::Tuple: {
        std::vector<TypePtr> vals = erase_value_types(env, t->vcomps);
        if (vals.size() == 1)
            return vals[0];
        auto out = std::make_shared<TypeExpr>(*t);
        out->pcomps.clear();
        out->comps_split = false;
        out->vcomps = std::move(vals);
        return out;
    }
    }
    return t;
}

class Eraser {
public:
    explicit Eraser(const Env& env) : env_(env) {}

    ETermHdl term(const DExpPtr& e) {
        auto out = std::make_shared<ETerm>();
        out->loc = e->loc;
        switch (e->tag) {
        case DExp::Tag::Var:
            out->tag = ETerm::Tag::Var;
            out->name = e->name;
            return out;
        case DExp::Tag::Int:
            out->tag = ETerm::Tag::Int;
            out->value = e->value;
            return out;
        case DExp::Tag::Bool:
            out->tag = ETerm::Tag::Bool;
            out->bvalue = e->bvalue;
            return out;
        case DExp::Tag::App: {
            out->tag = ETerm::Tag::App;
            out->callee = term(e->callee);
            out->sargs = e->sargs;
            for (const auto& a : e->vargs)
                out->args.push_back(term(a));
            return out;
        }
        case DExp::Tag::Binop:
        case DExp::Tag::Neg: {
            out->tag = e->tag == DExp::Tag::Binop ? ETerm::Tag::Binop : ETerm::Tag::Neg;
            out->name = e->name;
            for (const auto& a : e->vargs)
                out->args.push_back(term(a));
            return out;
        }
        case DExp::Tag::Tuple: {
            std::vector<ETermHdl> comps;
            for (const auto& c : e->vcomps)
                comps.push_back(term(c));
            if (comps.size() == 1)
                return comps[0];
            out->tag = ETerm::Tag::Tuple;
            out->comps = std::move(comps);
            return out;
        }
        case DExp::Tag::If:
            out->tag = ETerm::Tag::If;
            out->cond = term(e->cond);
            out->then_e = term(e->then_e);
            out->else_e = term(e->else_e);
            return out;
        case DExp::Tag::Case: {
            out->tag = ETerm::Tag::Case;
            out->case_plus = e->case_plus;
            out->scrut = term(e->scrut);
            for (const auto& arm : e->arms) {
                EArm earm;
                earm.pat.loc = arm.pat->loc;
                switch (arm.pat->tag) {
                case Pattern::Tag::Var:
                    earm.pat.tag = EPat::Tag::Var;
                    earm.pat.name = arm.pat->name;
                    break;
                case Pattern::Tag::Any: earm.pat.tag = EPat::Tag::Any; break;
                case Pattern::Tag::Con:
                    earm.pat.tag = EPat::Tag::Con;
                    earm.pat.name = arm.pat->name;
                    for (const auto& p : arm.pat->args)
                        earm.pat.args.push_back(p->tag == Pattern::Tag::Var ? p->name : "_");
                    break;
                case Pattern::Tag::Tuple: assert(false && "tuple pattern in case");
                }
                earm.body = term(arm.body);
                out->arms.push_back(std::move(earm));
            }
            return out;
        }
        case DExp::Tag::Let: {
            std::vector<ELetDeclHdl> decls;
            for (const auto& d : e->decls)
                if (ELetDeclHdl ed = let_decl(*d))
                    decls.push_back(ed);
            if (decls.empty())
                return term(e->body);
            out->tag = ETerm::Tag::Let;
            out->decls = std::move(decls);
            out->body = term(e->body);
            return out;
        }
        case DExp::Tag::Lam: {
            out->tag = ETerm::Tag::Lam;
            for (const auto& p : e->lam_params)
                out->lam_params.push_back({p.name, erase_type(env_, p.type), p.loc});
            out->body = term(e->body);
            return out;
        }
        }
        assert(false);
        return out;
    }

    // Returns null when the whole declaration is proof-only.
    ELetDeclHdl let_decl(const LetDecl& d) {
        switch (d.tag) {
        case LetDecl::Tag::Prval: return nullptr;
        case LetDecl::Tag::Val: {
            auto out = std::make_shared<ELetDecl>();
            out->tag = ELetDecl::Tag::Val;
            out->loc = d.loc;
            for (const auto& b : d.binds) {
                ELetDecl::Bind bind;
                bind.loc = b.loc;
                bind.rhs = term(b.rhs);
                if (b.pat->tag == Pattern::Tag::Var) {
                    bind.vars.push_back(b.pat->name);
                } else if (b.pat->tag == Pattern::Tag::Any) {
                    bind.vars.push_back("_");
                } else if (b.pat->tag == Pattern::Tag::Tuple) {
                    for (const auto& p : b.pat->vcomps)
                        bind.vars.push_back(p->tag == Pattern::Tag::Var ? p->name : "_");
                    bind.is_tuple = bind.vars.size() != 1;
                    if (bind.vars.empty())
                        continue; // the binding carried proofs only
                }
                out->binds.push_back(std::move(bind));
            }
            if (out->binds.empty())
                return nullptr;
            return out;
        }
        case LetDecl::Tag::Fun: {
            if (d.fun->is_proof)
                return nullptr;
            auto out = std::make_shared<ELetDecl>();
            out->tag = ELetDecl::Tag::Fun;
            out->loc = d.loc;
            out->fun = fun_group(*d.fun);
            return out;
        }
        }
        return nullptr;
    }

    std::shared_ptr<const EFunGroup> fun_group(const FunGroup& g) {
        auto out = std::make_shared<EFunGroup>();
        out->shared_quants = g.shared_quants;
        for (const auto& def : g.defs) {
            EFunDef ef;
            ef.name = def.name;
            ef.loc = def.loc;
            ef.quants = def.quants;
            for (const auto& p : def.vparams)
                ef.params.push_back({p.name, erase_type(env_, p.type), p.loc});
            ef.ret = erase_type(env_, def.ret);
            ef.body = term(def.body);
            out->defs.push_back(std::move(ef));
        }
        return out;
    }

private:
    const Env& env_;
};

void collect_term_names(const ETermHdl& t, std::set<std::string>& out);

void collect_group_names(const EFunGroup& g, std::set<std::string>& out) {
    for (const auto& def : g.defs)
        collect_term_names(def.body, out);
}

void collect_term_names(const ETermHdl& t, std::set<std::string>& out) {
    if (!t)
        return;
    if (t->tag == ETerm::Tag::Var)
        out.insert(t->name);
    collect_term_names(t->callee, out);
    for (const auto& a : t->args)
        collect_term_names(a, out);
    for (const auto& c : t->comps)
        collect_term_names(c, out);
    collect_term_names(t->cond, out);
    collect_term_names(t->then_e, out);
    collect_term_names(t->else_e, out);
    collect_term_names(t->scrut, out);
    for (const auto& arm : t->arms) {
        if (arm.pat.tag == EPat::Tag::Con)
            out.insert(arm.pat.name);
        collect_term_names(arm.body, out);
    }
    for (const auto& d : t->decls) {
        for (const auto& b : d->binds)
            collect_term_names(b.rhs, out);
        if (d->fun)
            collect_group_names(*d->fun, out);
    }
    collect_term_names(t->body, out);
}

} // namespace

EProgram erase_program(const ast::Program& decls, size_t prelude_count, const Env& env) {
    Eraser eraser(env);
    EProgram out;

    auto erase_decl = [&](const Decl& d) -> std::optional<EDecl> {
        EDecl ed;
        ed.loc = d.loc;
        switch (d.tag) {
        case Decl::Tag::Dataprop:
        case Decl::Tag::Absprop:
        case Decl::Tag::Praxi: return std::nullopt;
        case Decl::Tag::Fun: {
            if (d.fun_group->is_proof)
                return std::nullopt;
            ed.tag = EDecl::Tag::Fun;
            ed.fun = eraser.fun_group(*d.fun_group);
            return ed;
        }
        case Decl::Tag::Val: {
            ed.tag = EDecl::Tag::Val;
            ed.val_rhs = eraser.term(d.val_rhs);
            if (d.val_pat->tag == Pattern::Tag::Var) {
                ed.val_vars.push_back(d.val_pat->name);
            } else if (d.val_pat->tag == Pattern::Tag::Tuple) {
                for (const auto& p : d.val_pat->vcomps)
                    ed.val_vars.push_back(p->tag == Pattern::Tag::Var ? p->name : "_");
                ed.val_is_tuple = true;
                if (ed.val_vars.empty())
                    return std::nullopt;
            }
            return ed;
        }
        case Decl::Tag::Datatype: {
            ed.tag = EDecl::Tag::Passthrough;
            Decl copy = d;
            for (auto& c : copy.ctors) {
                std::vector<TypePtr> kept;
                for (const auto& at : c.arg_types)
                    if (!surface_is_prop(env, at))
                        kept.push_back(erase_type(env, at));
                c.arg_types = std::move(kept);
            }
            ed.surface = std::move(copy);
            return ed;
        }
        default:
            ed.tag = EDecl::Tag::Passthrough;
            ed.surface = d;
            return ed;
        }
    };

    // Erase the file's declarations, tracking which names its code reaches.
    std::vector<EDecl> file_decls;
    std::set<std::string> referenced;
    for (size_t i = prelude_count; i < decls.size(); ++i) {
        if (auto ed = erase_decl(decls[i])) {
            if (ed->fun)
                collect_group_names(*ed->fun, referenced);
            if (ed->val_rhs)
                collect_term_names(ed->val_rhs, referenced);
            file_decls.push_back(std::move(*ed));
        }
    }

    // Include erased copies of the prelude functions the file reaches, so the
    // output stays proof-free end to end (they shadow the prelude originals).
    std::vector<std::optional<EDecl>> prelude_erased(prelude_count);
    std::set<size_t> included;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < prelude_count; ++i) {
            if (included.count(i))
                continue;
            const Decl& d = decls[i];
            bool wanted = false;
            if (d.tag == Decl::Tag::Fun && !d.fun_group->is_proof) {
                for (const auto& def : d.fun_group->defs)
                    wanted |= referenced.count(def.name) > 0;
            } else if (d.tag == Decl::Tag::Val && d.val_pat->tag == Pattern::Tag::Var) {
                wanted = referenced.count(d.val_pat->name) > 0;
            }
            if (!wanted)
                continue;
            if (auto ed = erase_decl(d)) {
                if (ed->fun)
                    collect_group_names(*ed->fun, referenced);
                if (ed->val_rhs)
                    collect_term_names(ed->val_rhs, referenced);
                prelude_erased[i] = std::move(*ed);
                included.insert(i);
                changed = true;
            }
        }
    }
    for (size_t i = 0; i < prelude_count; ++i)
        if (prelude_erased[i])
            out.decls.push_back(std::move(*prelude_erased[i]));
    for (auto& d : file_decls)
        out.decls.push_back(std::move(d));
    return out;
}

// ---- printing (via conversion back to surface syntax) -----------------------------

namespace {

DExpPtr to_surface(const ETermHdl& t);

PatPtr surface_pat(const EPat& p) {
    auto out = std::make_shared<Pattern>();
    out->loc = p.loc;
    switch (p.tag) {
    case EPat::Tag::Var:
        out->tag = Pattern::Tag::Var;
        out->name = p.name;
        break;
    case EPat::Tag::Any: out->tag = Pattern::Tag::Any; break;
    case EPat::Tag::Con: {
        out->tag = Pattern::Tag::Con;
        out->name = p.name;
        out->has_parens = true;
        for (const auto& a : p.args) {
            auto v = std::make_shared<Pattern>();
            v->tag = a == "_" ? Pattern::Tag::Any : Pattern::Tag::Var;
            v->name = a;
            out->args.push_back(v);
        }
        break;
    }
    }
    return out;
}

PatPtr surface_bind_pat(const std::vector<std::string>& vars, bool is_tuple) {
    if (!is_tuple && vars.size() == 1) {
        auto out = std::make_shared<Pattern>();
        out->tag = vars[0] == "_" ? Pattern::Tag::Any : Pattern::Tag::Var;
        out->name = vars[0];
        return out;
    }
    auto out = std::make_shared<Pattern>();
    out->tag = Pattern::Tag::Tuple;
    for (const auto& v : vars) {
        auto p = std::make_shared<Pattern>();
        p->tag = v == "_" ? Pattern::Tag::Any : Pattern::Tag::Var;
        p->name = v;
        out->vcomps.push_back(p);
    }
    return out;
}

std::shared_ptr<const FunGroup> surface_group(const EFunGroup& g) {
    auto out = std::make_shared<FunGroup>();
    out->is_proof = false;
    out->shared_quants = g.shared_quants;
    for (const auto& def : g.defs) {
        FunDef f;
        f.name = def.name;
        f.loc = def.loc;
        f.quants = def.quants;
        f.vparams = def.params;
        f.ret = def.ret;
        f.body = to_surface(def.body);
        out->defs.push_back(std::move(f));
    }
    return out;
}

LetDeclPtr surface_let(const ELetDeclHdl& d) {
    auto out = std::make_shared<LetDecl>();
    out->loc = d->loc;
    if (d->tag == ELetDecl::Tag::Fun) {
        out->tag = LetDecl::Tag::Fun;
        out->fun = surface_group(*d->fun);
        return out;
    }
    out->tag = LetDecl::Tag::Val;
    for (const auto& b : d->binds) {
        LetDecl::ValBind vb;
        vb.loc = b.loc;
        vb.pat = surface_bind_pat(b.vars, b.is_tuple);
        vb.rhs = to_surface(b.rhs);
        out->binds.push_back(std::move(vb));
    }
    return out;
}

DExpPtr to_surface(const ETermHdl& t) {
    auto out = std::make_shared<DExp>();
    out->loc = t->loc;
    switch (t->tag) {
    case ETerm::Tag::Var:
        out->tag = DExp::Tag::Var;
        out->name = t->name;
        break;
    case ETerm::Tag::Int:
        out->tag = DExp::Tag::Int;
        out->value = t->value;
        break;
    case ETerm::Tag::Bool:
        out->tag = DExp::Tag::Bool;
        out->bvalue = t->bvalue;
        break;
    case ETerm::Tag::App:
        out->tag = DExp::Tag::App;
        out->callee = to_surface(t->callee);
        out->sargs = t->sargs;
        for (const auto& a : t->args)
            out->vargs.push_back(to_surface(a));
        break;
    case ETerm::Tag::Binop:
        out->tag = DExp::Tag::Binop;
        out->name = t->name;
        for (const auto& a : t->args)
            out->vargs.push_back(to_surface(a));
        break;
    case ETerm::Tag::Neg:
        out->tag = DExp::Tag::Neg;
        for (const auto& a : t->args)
            out->vargs.push_back(to_surface(a));
        break;
    case ETerm::Tag::Tuple:
        out->tag = DExp::Tag::Tuple;
        for (const auto& c : t->comps)
            out->vcomps.push_back(to_surface(c));
        break;
    case ETerm::Tag::If:
        out->tag = DExp::Tag::If;
        out->cond = to_surface(t->cond);
        out->then_e = to_surface(t->then_e);
        out->else_e = to_surface(t->else_e);
        break;
    case ETerm::Tag::Case:
        out->tag = DExp::Tag::Case;
        out->case_plus = t->case_plus;
        out->scrut = to_surface(t->scrut);
        for (const auto& arm : t->arms)
            out->arms.push_back({surface_pat(arm.pat), to_surface(arm.body), arm.pat.loc});
        break;
    case ETerm::Tag::Let:
        out->tag = DExp::Tag::Let;
        for (const auto& d : t->decls)
            out->decls.push_back(surface_let(d));
        out->body = to_surface(t->body);
        break;
    case ETerm::Tag::Lam:
        out->tag = DExp::Tag::Lam;
        out->lam_params = t->lam_params;
        out->body = to_surface(t->body);
        break;
    }
    return out;
}

} // namespace

std::string print_erased(const EProgram& program) {
    ast::Program surface;
    for (const auto& d : program.decls) {
        switch (d.tag) {
        case EDecl::Tag::Passthrough: surface.push_back(d.surface); break;
        case EDecl::Tag::Fun: {
            Decl decl;
            decl.tag = Decl::Tag::Fun;
            decl.loc = d.loc;
            decl.fun_group = surface_group(*d.fun);
            surface.push_back(std::move(decl));
            break;
        }
        case EDecl::Tag::Val: {
            Decl decl;
            decl.tag = Decl::Tag::Val;
            decl.loc = d.loc;
            decl.val_pat = surface_bind_pat(d.val_vars, d.val_is_tuple);
            decl.val_rhs = to_surface(d.val_rhs);
            surface.push_back(std::move(decl));
            break;
        }
        }
    }
    return print_program(surface);
}

std::vector<std::string> erasure_residue(const EProgram& program, const Env& env) {
    std::set<std::string> names;
    for (const auto& d : program.decls) {
        if (d.fun)
            collect_group_names(*d.fun, names);
        if (d.val_rhs)
            collect_term_names(d.val_rhs, names);
    }
    std::vector<std::string> bad;
    for (const auto& n : names) {
        if (const ConSig* c = env.con_sig(n)) {
            if (c->owner_is_prop)
                bad.push_back(n);
            continue;
        }
        if (env.lemma(n)) {
            bad.push_back(n);
            continue;
        }
        if (const GlobalVal* g = env.global(n))
            if (g->is_proof)
                bad.push_back(n);
    }
    return bad;
}

} // namespace miniats
