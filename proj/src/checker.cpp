#include <algorithm>
#include <cassert>

#include "miniats/checker.hpp"

namespace miniats {

using ast::DExp;
using ast::DExpPtr;

namespace {

bool is_meta_name(const std::string& name) { return !name.empty() && name[0] == '?'; }

std::string mode_err_msg(Mode mode, const std::string& what) {
    return mode == Mode::Program ? what + " cannot appear in a program position"
                                 : what + " cannot appear in a proof position";
}

} // namespace

// ---- metavariables -----------------------------------------------------------

STermHdl Checker::new_meta(SortHdl sort, const std::string& display) {
    assert(root_ && "metavariable outside an inference root");
    std::string name = "?" + std::to_string(meta_counter_++);
    root_->metas[name] = Meta{sort, display, nullptr};
    root_->meta_order.push_back(name);
    return st_var(name, sort);
}

bool Checker::is_unresolved_meta(const std::string& name) const {
    if (!is_meta_name(name))
        return false;
    for (const Root* r = root_; r; r = r->outer) {
        auto it = r->metas.find(name);
        if (it != r->metas.end())
            return it->second.bound == nullptr;
    }
    return false;
}

STermHdl Checker::subst_metas(const STermHdl& t) const {
    STermHdl cur = t;
    for (int round = 0; round < 64; ++round) {
        Subst sub;
        std::vector<std::string> fv;
        free_static_vars(cur, fv);
        for (const auto& v : fv) {
            if (!is_meta_name(v))
                continue;
            for (const Root* r = root_; r; r = r->outer) {
                auto it = r->metas.find(v);
                if (it != r->metas.end()) {
                    if (it->second.bound)
                        sub[v] = it->second.bound;
                    break;
                }
            }
        }
        if (sub.empty())
            return cur;
        cur = normalize_static(subst_static(cur, sub));
    }
    return cur;
}

DTypeHdl Checker::subst_metas_type(const DTypeHdl& t) const {
    std::vector<std::string> fv;
    free_type_vars(t, fv);
    Subst sub;
    for (const auto& v : fv) {
        if (!is_meta_name(v))
            continue;
        for (const Root* r = root_; r; r = r->outer) {
            auto it = r->metas.find(v);
            if (it != r->metas.end()) {
                if (it->second.bound)
                    sub[v] = subst_metas(it->second.bound);
                break;
            }
        }
    }
    return sub.empty() ? t : subst_type(t, sub);
}

void Checker::bind_meta(const std::string& name, const STermHdl& term, const Loc& loc) {
    STermHdl value = subst_metas(term);
    if (static_var_occurs(name, value))
        fail(loc, DiagKind::TypeError, "cannot infer a static argument (cyclic constraint on '" +
                                           display_name(name) + "')");
    for (Root* r = root_; r; r = r->outer) {
        auto it = r->metas.find(name);
        if (it != r->metas.end()) {
            assert(!it->second.bound);
            it->second.bound = value;
            return;
        }
    }
    assert(false && "binding an unknown metavariable");
}

void Checker::collect_unresolved(const STermHdl& t, std::vector<std::string>& out) const {
    std::vector<std::string> fv;
    free_static_vars(t, fv);
    for (const auto& v : fv)
        if (is_unresolved_meta(v) && std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
}

// ---- constraint emission --------------------------------------------------------

Constraint Checker::build_constraint(const Atom& goal, const std::vector<Atom>& extra_hyps,
                                     const std::vector<CVar>& extra_vars, const Loc& loc,
                                     const std::string& reason) const {
    Constraint c;
    c.loc = loc;
    c.reason = reason;
    for (const auto& v : sctx_.vars) {
        switch (v.sort->tag) {
        case Sort::Tag::Int: c.vars.push_back({v.uniq, CVar::Kind::Int, ""}); break;
        case Sort::Tag::Bool: c.vars.push_back({v.uniq, CVar::Kind::Bool, ""}); break;
        case Sort::Tag::Data: c.vars.push_back({v.uniq, CVar::Kind::Data, v.sort->data_name}); break;
        default: break; // type/addr/arrow variables cannot occur in atoms
        }
    }
    for (const auto& v : extra_vars)
        c.vars.push_back(v);
    for (const auto& h : sctx_.hyps)
        c.hyps.push_back(atom_of_sterm(h));
    for (const auto& h : extra_hyps)
        c.hyps.push_back(h);
    c.goal = goal;
    return c;
}

SolveResult Checker::solve_logged(Constraint c) {
    log_.push_back(c);
    return solve(c);
}

void Checker::emit_obligation(const STermHdl& goal, const Loc& loc, const std::string& reason) {
    STermHdl g = normalize_static(subst_metas(goal));
    if (g->tag == STerm::Tag::BoolLit && g->bval)
        return;
    Constraint c = build_constraint(atom_of_sterm(g), {}, {}, loc, reason);
    SolveResult r = solve_logged(c);
    if (r.tag == SolveResult::Tag::Valid)
        return;
    if (r.tag == SolveResult::Tag::Invalid)
        fail(loc, DiagKind::UnsolvedConstraint,
             reason + ": " + constraint_str(c) + "  [counterexample: " +
                 r.counterexample.str() + "]");
    fail(loc, DiagKind::UnknownConstraint, reason + ": " + constraint_str(c) + "  [" + r.reason + "]");
}

void Checker::emit_equality(const STermHdl& a, const STermHdl& b, const Loc& loc,
                            const std::string& reason) {
    STermHdl l = normalize_static(subst_metas(a));
    STermHdl r = normalize_static(subst_metas(b));
    if (sterm_syntactic_equal(l, r))
        return;
    if (l->sort && l->sort->tag == Sort::Tag::Int) {
        LinExpr d = lin_of_sterm(st_con("-", {l, r}, sort_int()));
        Constraint c = build_constraint(atom_lin(CmpOp::Eq, d), {}, {}, loc, reason);
        SolveResult res = solve_logged(c);
        if (res.tag == SolveResult::Tag::Valid)
            return;
        if (res.tag == SolveResult::Tag::Invalid)
            fail(loc, DiagKind::UnsolvedConstraint,
                 reason + ": required " + sterm_str(l) + " = " + sterm_str(r) +
                     "  [counterexample: " + res.counterexample.str() + "]");
        fail(loc, DiagKind::UnknownConstraint,
             reason + ": required " + sterm_str(l) + " = " + sterm_str(r) + "  [" + res.reason + "]");
    }
    // Boolean index equality: prove both implications.
    auto implication = [&](const STermHdl& hyp, const STermHdl& goal) {
        Constraint c = build_constraint(atom_of_sterm(goal), {atom_of_sterm(hyp)}, {}, loc, reason);
        SolveResult res = solve_logged(c);
        if (res.tag == SolveResult::Tag::Valid)
            return;
        DiagKind kind = res.tag == SolveResult::Tag::Invalid ? DiagKind::UnsolvedConstraint
                                                             : DiagKind::UnknownConstraint;
        fail(loc, kind,
             reason + ": required " + sterm_str(l) + " <=> " + sterm_str(r));
    };
    implication(l, r);
    implication(r, l);
}

// ---- unification -------------------------------------------------------------------

void Checker::unify_sterm(const STermHdl& a0, const STermHdl& b0, const Loc& loc,
                          const std::string& why) {
    STermHdl a = normalize_static(subst_metas(a0));
    STermHdl b = normalize_static(subst_metas(b0));
    if (sterm_syntactic_equal(a, b))
        return;
    SortHdl sort = a->sort ? a->sort : b->sort;

    if (sort && sort->tag == Sort::Tag::Int) {
        LinExpr d = lin_of_sterm(st_con("-", {a, b}, sort_int()));
        // Try to solve for a single unresolved metavariable with unit coefficient.
        for (const auto& [v, c] : d.terms) {
            if (!is_unresolved_meta(v) || (c != 1 && c != -1))
                continue;
            LinExpr rest;
            rest.k = d.k;
            for (const auto& [w, cw] : d.terms)
                if (w != v)
                    rest.terms.push_back({w, cw});
            // c*v + rest = 0  =>  v = -rest/c
            cpp_int scale = c == 1 ? -1 : 1;
            std::vector<std::pair<std::string, cpp_int>> terms;
            for (const auto& [w, cw] : rest.terms)
                terms.push_back({w, cw * scale});
            bind_meta(v, st_lin(rest.k * scale, std::move(terms)), loc);
            return;
        }
        assert(root_);
        root_->pending_eqs.push_back({a, b});
        return;
    }
    if (sort && sort->tag == Sort::Tag::Bool) {
        if (a->tag == STerm::Tag::Var && is_unresolved_meta(a->name)) {
            bind_meta(a->name, b, loc);
            return;
        }
        if (b->tag == STerm::Tag::Var && is_unresolved_meta(b->name)) {
            bind_meta(b->name, a, loc);
            return;
        }
        assert(root_);
        root_->pending_eqs.push_back({a, b});
        return;
    }
    // datasort / type-sorted terms: first-order syntactic unification
    if (a->tag == STerm::Tag::Var && is_unresolved_meta(a->name)) {
        bind_meta(a->name, b, loc);
        return;
    }
    if (b->tag == STerm::Tag::Var && is_unresolved_meta(b->name)) {
        bind_meta(b->name, a, loc);
        return;
    }
    if (a->tag == STerm::Tag::Con && b->tag == STerm::Tag::Con && a->name == b->name &&
        a->args.size() == b->args.size()) {
        for (size_t i = 0; i < a->args.size(); ++i)
            unify_sterm(a->args[i], b->args[i], loc, why);
        return;
    }
    fail(loc, DiagKind::TypeError,
         why + ": index mismatch, " + sterm_str(a) + " vs " + sterm_str(b));
}

void Checker::unify_type(const DTypeHdl& expected0, const DTypeHdl& actual0, const Loc& loc,
                         const std::string& why) {
    DTypeHdl expected = normalize_type(subst_metas_type(expected0));
    DTypeHdl actual = normalize_type(subst_metas_type(actual0));

    // Quantifiers on one side only.
    if (expected->tag == DType::Tag::Exists && actual->tag != DType::Tag::Exists) {
        STermHdl m = new_meta(expected->var_sort, display_name(expected->var));
        Subst sub;
        sub[expected->var] = m;
        unify_type(subst_type(expected->body, sub), actual, loc, why);
        return;
    }
    if (expected->tag == DType::Tag::Asserting && actual->tag != DType::Tag::Asserting) {
        root_->pending_guards.push_back({expected->guard, loc, why + " (witness guard)"});
        unify_type(expected->body, actual, loc, why);
        return;
    }
    if (actual->tag == DType::Tag::Exists && expected->tag != DType::Tag::Exists) {
        Subst sub;
        std::string sk = push_skolem(display_name(actual->var), actual->var_sort);
        sub[actual->var] = st_var(sk, actual->var_sort);
        unify_type(expected, subst_type(actual->body, sub), loc, why);
        return;
    }
    if (actual->tag == DType::Tag::Asserting && expected->tag != DType::Tag::Asserting) {
        push_hyp(actual->guard);
        unify_type(expected, actual->body, loc, why);
        return;
    }
    if (actual->tag == DType::Tag::Forall && expected->tag != DType::Tag::Forall) {
        STermHdl m = new_meta(actual->var_sort, display_name(actual->var));
        Subst sub;
        sub[actual->var] = m;
        unify_type(expected, subst_type(actual->body, sub), loc, why);
        return;
    }
    if (actual->tag == DType::Tag::Guarded && expected->tag != DType::Tag::Guarded) {
        root_->pending_guards.push_back({actual->guard, loc, why + " (guard)"});
        unify_type(expected, actual->body, loc, why);
        return;
    }

    if (expected->tag != actual->tag)
        fail(loc, DiagKind::TypeError,
             why + ": expected " + type_str(expected) + ", found " + type_str(actual));

    switch (expected->tag) {
    case DType::Tag::IntS:
    case DType::Tag::BoolS:
    case DType::Tag::PtrS:
    case DType::Tag::Stat: unify_sterm(expected->index, actual->index, loc, why); return;
    case DType::Tag::Data:
    case DType::Tag::Prop:
    case DType::Tag::Abst: {
        if (expected->name != actual->name || expected->sargs.size() != actual->sargs.size())
            fail(loc, DiagKind::TypeError,
                 why + ": expected " + type_str(expected) + ", found " + type_str(actual));
        for (size_t i = 0; i < expected->sargs.size(); ++i)
            unify_sterm(expected->sargs[i], actual->sargs[i], loc, why);
        return;
    }
    case DType::Tag::Fun: {
        if (expected->pdoms.size() != actual->pdoms.size() ||
            expected->vdoms.size() != actual->vdoms.size())
            fail(loc, DiagKind::TypeError,
                 why + ": function arity mismatch, expected " + type_str(expected) + ", found " +
                     type_str(actual));
        for (size_t i = 0; i < expected->pdoms.size(); ++i)
            unify_type(expected->pdoms[i], actual->pdoms[i], loc, why);
        for (size_t i = 0; i < expected->vdoms.size(); ++i)
            unify_type(expected->vdoms[i], actual->vdoms[i], loc, why);
        unify_type(expected->cod, actual->cod, loc, why);
        return;
    }
    case DType::Tag::Tuple: {
        if (expected->pcomps.size() != actual->pcomps.size() ||
            expected->vcomps.size() != actual->vcomps.size())
            fail(loc, DiagKind::TypeError,
                 why + ": tuple shape mismatch, expected " + type_str(expected) + ", found " +
                     type_str(actual));
        for (size_t i = 0; i < expected->pcomps.size(); ++i)
            unify_type(expected->pcomps[i], actual->pcomps[i], loc, why);
        for (size_t i = 0; i < expected->vcomps.size(); ++i)
            unify_type(expected->vcomps[i], actual->vcomps[i], loc, why);
        return;
    }
    case DType::Tag::Guarded:
    case DType::Tag::Asserting:
        unify_sterm(expected->guard, actual->guard, loc, why);
        unify_type(expected->body, actual->body, loc, why);
        return;
    case DType::Tag::Forall:
    case DType::Tag::Exists: {
        if (!sort_equal(expected->var_sort, actual->var_sort))
            fail(loc, DiagKind::TypeError,
                 why + ": quantifier sort mismatch, expected " + type_str(expected) + ", found " +
                     type_str(actual));
        std::string r = push_skolem(display_name(expected->var), expected->var_sort);
        Subst se, sa;
        se[expected->var] = st_var(r, expected->var_sort);
        sa[actual->var] = st_var(r, actual->var_sort);
        unify_type(subst_type(expected->body, se), subst_type(actual->body, sa), loc, why);
        return;
    }
    }
}

DTypeHdl Checker::finalize_root(const DTypeHdl& result, const Loc& loc, bool generalize) {
    assert(root_);
    // Re-examine deferred equalities; later bindings may have resolved them.
    for (int round = 0; round < 8; ++round) {
        bool progress = false;
        std::vector<std::pair<STermHdl, STermHdl>> pending = std::move(root_->pending_eqs);
        root_->pending_eqs.clear();
        for (const auto& [a, b] : pending) {
            size_t before = root_->pending_eqs.size();
            size_t metas_before = 0;
            for (const auto& [n, m] : root_->metas)
                metas_before += m.bound != nullptr;
            unify_sterm(a, b, loc, "deferred index equality");
            size_t metas_after = 0;
            for (const auto& [n, m] : root_->metas)
                metas_after += m.bound != nullptr;
            if (metas_after != metas_before || root_->pending_eqs.size() == before)
                progress = true;
        }
        if (!progress)
            break;
    }

    // Any equality still mentioning an unresolved meta cannot be inferred.
    std::vector<std::pair<STermHdl, STermHdl>> eqs = std::move(root_->pending_eqs);
    root_->pending_eqs.clear();
    std::vector<PendingGuard> guards = std::move(root_->pending_guards);
    root_->pending_guards.clear();

    DTypeHdl final_type = subst_metas_type(result);

    // Unresolved metas that survive into the result type are re-generalized.
    std::vector<std::string> leftover;
    if (generalize) {
        std::vector<std::string> fv;
        free_type_vars(final_type, fv);
        for (const auto& g : guards)
            collect_unresolved(subst_metas(g.guard), leftover);
        for (const auto& v : fv)
            if (is_unresolved_meta(v) && std::find(leftover.begin(), leftover.end(), v) == leftover.end())
                leftover.push_back(v);
        // Keep creation order for deterministic binder order.
        std::vector<std::string> ordered;
        for (const auto& m : root_->meta_order)
            if (std::find(leftover.begin(), leftover.end(), m) != leftover.end())
                ordered.push_back(m);
        leftover = std::move(ordered);
    }

    for (const auto& [a, b] : eqs) {
        STermHdl l = subst_metas(a), r = subst_metas(b);
        std::vector<std::string> um;
        collect_unresolved(l, um);
        collect_unresolved(r, um);
        bool deferred_ok = false;
        if (!um.empty() && generalize) {
            // All metas in this equality must be generalized ones; keep it as a
            // guard of the generalized binders.
            deferred_ok = std::all_of(um.begin(), um.end(), [&](const std::string& v) {
                return std::find(leftover.begin(), leftover.end(), v) != leftover.end();
            });
        }
        if (!um.empty() && !deferred_ok)
            fail(loc, DiagKind::TypeError,
                 "cannot infer static argument '" +
                     display_name(um.front()) + "' (unresolved index equality " + sterm_str(l) +
                     " = " + sterm_str(r) + ")");
        if (um.empty()) {
            emit_equality(l, r, loc, "index equality");
        } else {
            STermHdl eq = normalize_static(
                st_con("=", {l, r}, sort_bool()));
            guards.push_back({eq, loc, "deferred index equality"});
        }
    }

    std::vector<PendingGuard> kept;
    for (const auto& g : guards) {
        STermHdl gt = subst_metas(g.guard);
        std::vector<std::string> um;
        collect_unresolved(gt, um);
        if (um.empty()) {
            emit_obligation(gt, g.loc, g.why);
            continue;
        }
        bool all_leftover = generalize && std::all_of(um.begin(), um.end(), [&](const std::string& v) {
                                return std::find(leftover.begin(), leftover.end(), v) != leftover.end();
                            });
        if (!all_leftover)
            fail(g.loc, DiagKind::TypeError,
                 "cannot discharge guard " + sterm_str(gt) + " (uninferred static argument)");
        kept.push_back({gt, g.loc, g.why});
    }

    if (!generalize) {
        std::vector<std::string> fv;
        free_type_vars(final_type, fv);
        for (const auto& v : fv)
            if (is_unresolved_meta(v))
                fail(loc, DiagKind::TypeError,
                     "cannot infer static argument '" +
                         (root_->metas.count(v) ? root_->metas[v].display : v) + "'");
        return final_type;
    }

    // Wrap leftovers: each generalized meta becomes a Forall, with the kept
    // guards placed inside the innermost binder they mention.
    if (!leftover.empty()) {
        Subst rename;
        std::vector<std::pair<std::string, SortHdl>> binders;
        for (const auto& m : leftover) {
            const Meta& meta = root_->metas[m];
            std::string name = fresh(meta.display.empty() ? "x" : meta.display);
            rename[m] = st_var(name, meta.sort);
            binders.push_back({name, meta.sort});
        }
        DTypeHdl wrapped = subst_type(final_type, rename);
        for (size_t i = binders.size(); i-- > 0;) {
            // Guards whose last generalized meta is binder i.
            for (size_t gi = kept.size(); gi-- > 0;) {
                std::vector<std::string> um;
                collect_unresolved(kept[gi].guard, um);
                size_t last = 0;
                for (const auto& v : um) {
                    auto it = std::find(leftover.begin(), leftover.end(), v);
                    last = std::max(last, size_t(it - leftover.begin()));
                }
                if (last == i)
                    wrapped = dt_guarded(normalize_static(subst_static(kept[gi].guard, rename)),
                                         wrapped);
            }
            wrapped = dt_forall(binders[i].first, binders[i].second, wrapped);
        }
        final_type = wrapped;
    }
    return final_type;
}

// ---- synthesis ----------------------------------------------------------------------

DTypeHdl Checker::open_existentials(DTypeHdl t) {
    t = normalize_type(t);
    while (true) {
        if (t->tag == DType::Tag::Exists) {
            std::string sk = push_skolem(display_name(t->var), t->var_sort);
            Subst sub;
            sub[t->var] = st_var(sk, t->var_sort);
            t = normalize_type(subst_type(t->body, sub));
        } else if (t->tag == DType::Tag::Asserting) {
            push_hyp(t->guard);
            t = normalize_type(t->body);
        } else {
            return t;
        }
    }
}

DTypeHdl Checker::instantiate(DTypeHdl t, const std::vector<ast::SExpPtr>& explicit_sargs,
                              const Loc& loc, const std::string& head) {
    t = normalize_type(subst_metas_type(t));
    size_t next_explicit = 0;
    while (true) {
        if (t->tag == DType::Tag::Forall) {
            Subst sub;
            if (next_explicit < explicit_sargs.size()) {
                STermHdl arg = normalize_static(elab_sexp(explicit_sargs[next_explicit]));
                if (!sort_equal(arg->sort, t->var_sort))
                    fail(explicit_sargs[next_explicit]->loc, DiagKind::SortError,
                         "static argument " + std::to_string(next_explicit + 1) + " of '" + head +
                             "': expected sort " + sort_str(t->var_sort) + ", found " +
                             sort_str(arg->sort));
                ++next_explicit;
                sub[t->var] = arg;
            } else {
                sub[t->var] = new_meta(t->var_sort, display_name(t->var));
            }
            t = normalize_type(subst_type(t->body, sub));
        } else if (t->tag == DType::Tag::Guarded) {
            root_->pending_guards.push_back({t->guard, loc, "guard of '" + head + "'"});
            t = normalize_type(t->body);
        } else {
            break;
        }
    }
    if (next_explicit < explicit_sargs.size())
        fail(loc, DiagKind::TypeError,
             "'" + head + "' received more static arguments than it quantifies");
    return t;
}

DTypeHdl Checker::synth_var(const DExp& e, Mode mode) {
    if (const DynBind* b = lookup_dvar(e.name)) {
        if (mode == Mode::Program && b->is_proof)
            fail(e.loc, DiagKind::ProofInProgramPosition,
                 "proof variable '" + e.name + "' used in a program position");
        if (mode == Mode::Proof && !b->is_proof)
            fail(e.loc, DiagKind::ProgramInProofPosition,
                 "program variable '" + e.name + "' used in a proof position");
        return b->type;
    }
    if (const GlobalVal* g = env_.global(e.name)) {
        if (mode == Mode::Program && g->is_proof)
            fail(e.loc, DiagKind::ProofInProgramPosition,
                 "proof function '" + e.name + "' used in a program position");
        if (mode == Mode::Proof && !g->is_proof)
            fail(e.loc, DiagKind::ProgramInProofPosition,
                 "'" + e.name + "' is not a proof");
        return g->type;
    }
    if (const ConSig* c = env_.con_sig(e.name)) {
        if (mode == Mode::Program && c->owner_is_prop)
            fail(e.loc, DiagKind::ProofInProgramPosition,
                 "proof constructor '" + e.name + "' used in a program position");
        if (mode == Mode::Proof && !c->owner_is_prop)
            fail(e.loc, DiagKind::ProgramInProofPosition,
                 "program constructor '" + e.name + "' used in a proof position");
        return c->as_value;
    }
    if (const LemmaSig* l = env_.lemma(e.name)) {
        if (mode == Mode::Program)
            fail(e.loc, DiagKind::ProofInProgramPosition,
                 "lemma '" + e.name + "' used in a program position");
        return l->as_value;
    }
    fail(e.loc, DiagKind::UnboundVar, "unbound variable '" + e.name + "'");
}

bool Checker::synthesizable(const DExpPtr& e) const {
    switch (e->tag) {
    case DExp::Tag::Var:
    case DExp::Tag::Int:
    case DExp::Tag::Bool:
    case DExp::Tag::App:
    case DExp::Tag::Binop:
    case DExp::Tag::Neg: return true;
    case DExp::Tag::Tuple: {
        for (const auto& c : e->pcomps)
            if (!synthesizable(c))
                return false;
        for (const auto& c : e->vcomps)
            if (!synthesizable(c))
                return false;
        return true;
    }
    default: return false;
    }
}

DTypeHdl Checker::synth_binop(const DExp& e, Mode mode) {
    if (mode == Mode::Proof)
        fail(e.loc, DiagKind::ProgramInProofPosition, mode_err_msg(mode, "arithmetic"));
    auto operand = [&](const DExpPtr& x) {
        DTypeHdl t = open_existentials(synth_arg(x, Mode::Program));
        if (t->tag != DType::Tag::IntS)
            fail(x->loc, DiagKind::TypeError,
                 "operator '" + e.name + "' needs int operands, found " + type_str(t));
        return subst_metas(t->index);
    };
    if (e.tag == DExp::Tag::Neg) {
        STermHdl a = operand(e.vargs[0]);
        return dt_ints(normalize_static(st_con("-", {st_int(0), a}, sort_int())));
    }
    STermHdl l = operand(e.vargs[0]);
    STermHdl r = operand(e.vargs[1]);
    if (e.name == "+" || e.name == "-")
        return dt_ints(normalize_static(st_con(e.name, {l, r}, sort_int())));
    if (e.name == "*") {
        STermHdl ln = normalize_static(l), rn = normalize_static(r);
        if ((ln->tag == STerm::Tag::Lin && ln->lin.empty()) ||
            (rn->tag == STerm::Tag::Lin && rn->lin.empty()))
            return dt_ints(normalize_static(st_con("*", {l, r}, sort_int())));
        return dt_plain_int(); // nonlinear result index is not tracked
    }
    return dt_bools(normalize_static(st_con(e.name, {l, r}, sort_bool())));
}

DTypeHdl Checker::synth_arg(const DExpPtr& e, Mode mode) {
    DTypeHdl t = synth_expr(e, mode);
    // Peel binders for use: instantiate leading quantifiers, open packages.
    while (true) {
        t = normalize_type(subst_metas_type(t));
        if (t->tag == DType::Tag::Forall || t->tag == DType::Tag::Guarded) {
            t = instantiate(t, {}, e->loc, "value");
        } else if (t->tag == DType::Tag::Exists || t->tag == DType::Tag::Asserting) {
            t = open_existentials(t);
        } else {
            return t;
        }
    }
}

DTypeHdl Checker::synth_app(const DExp& e, Mode mode) {
    DTypeHdl head_type;
    std::string head_name = "<expression>";
    if (e.callee->tag == DExp::Tag::Var) {
        head_name = e.callee->name;
        head_type = synth_var(*e.callee, mode);
    } else {
        head_type = synth_expr(e.callee, mode);
    }
    DTypeHdl t = instantiate(head_type, e.sargs, e.loc, head_name);
    if (t->tag == DType::Tag::Exists || t->tag == DType::Tag::Asserting) {
        t = open_existentials(t);
        while (t->tag == DType::Tag::Forall || t->tag == DType::Tag::Guarded)
            t = instantiate(t, {}, e.loc, head_name);
    }
    if (t->tag != DType::Tag::Fun)
        fail(e.loc, DiagKind::TypeError, "'" + head_name + "' is not a function: " + type_str(t));
    // Unsplit argument lists route to the proof side when the callee is a
    // pure proof function (lemmas, prop constructors, prfuns).
    std::vector<DExpPtr> pargs = e.pargs, vargs = e.vargs;
    if (!e.args_split && t->vdoms.empty() && !t->pdoms.empty()) {
        pargs = std::move(vargs);
        vargs.clear();
    }
    if (t->pdoms.size() != pargs.size() || t->vdoms.size() != vargs.size())
        fail(e.loc, DiagKind::TypeError,
             "'" + head_name + "' expects " + std::to_string(t->pdoms.size()) + " proof and " +
                 std::to_string(t->vdoms.size()) + " program arguments, found " +
                 std::to_string(pargs.size()) + " and " + std::to_string(vargs.size()));

    for (size_t i = 0; i < pargs.size(); ++i) {
        const std::string why = "proof argument " + std::to_string(i + 1) + " of '" + head_name + "'";
        DTypeHdl at = synth_arg(pargs[i], Mode::Proof);
        unify_type(t->pdoms[i], at, pargs[i]->loc, why);
    }
    for (size_t i = 0; i < vargs.size(); ++i) {
        const std::string why = "argument " + std::to_string(i + 1) + " of '" + head_name + "'";
        if (synthesizable(vargs[i])) {
            DTypeHdl at = synth_arg(vargs[i], Mode::Program);
            unify_type(t->vdoms[i], at, vargs[i]->loc, why);
        } else {
            DTypeHdl dom = subst_metas_type(t->vdoms[i]);
            std::vector<std::string> fv;
            free_type_vars(dom, fv);
            for (const auto& v : fv)
                if (is_unresolved_meta(v))
                    fail(vargs[i]->loc, DiagKind::TypeError,
                         why + ": cannot infer its expected type; pass a synthesizable "
                               "argument first");
            check_expr(vargs[i], dom, Mode::Program);
        }
    }
    return subst_metas_type(t->cod);
}

DTypeHdl Checker::synth_expr(const DExpPtr& e, Mode mode) {
    switch (e->tag) {
    case DExp::Tag::Var: return synth_var(*e, mode);
    case DExp::Tag::Int:
        if (mode == Mode::Proof)
            fail(e->loc, DiagKind::ProgramInProofPosition,
                 mode_err_msg(mode, "an integer literal"));
        return dt_ints(st_lin(e->value, {}));
    case DExp::Tag::Bool:
        if (mode == Mode::Proof)
            fail(e->loc, DiagKind::ProgramInProofPosition,
                 mode_err_msg(mode, "a boolean literal"));
        return dt_bools(st_bool(e->bvalue));
    case DExp::Tag::App: return synth_app(*e, mode);
    case DExp::Tag::Binop:
    case DExp::Tag::Neg: return synth_binop(*e, mode);
    case DExp::Tag::Tuple: {
        if (mode == Mode::Proof && !e->vcomps.empty())
            fail(e->loc, DiagKind::ProgramInProofPosition,
                 "a tuple with program components is not a proof");
        std::vector<DTypeHdl> ps, vs;
        for (const auto& c : e->pcomps)
            ps.push_back(synth_arg(c, Mode::Proof));
        for (const auto& c : e->vcomps)
            vs.push_back(synth_arg(c, mode));
        return dt_tuple(std::move(ps), std::move(vs));
    }
    case DExp::Tag::Let: {
        if (mode == Mode::Proof) {
            for (const auto& d : e->decls)
                if (d->tag == ast::LetDecl::Tag::Val)
                    fail(d->loc, DiagKind::ProgramInProofPosition,
                         "val bindings are not allowed in proof expressions");
        }
        size_t dsave = dctx_.size();
        size_t ssave = sscope_.size();
        for (const auto& d : e->decls)
            process_let_decl(*d);
        DTypeHdl t = synth_expr(e->body, mode);
        // Static variables introduced by opens stay in scope (their values
        // escape through the result type); value bindings do not.
        dctx_.resize(dsave);
        sscope_.resize(ssave);
        return t;
    }
    default:
        fail(e->loc, DiagKind::TypeError,
             "cannot synthesize a type for this expression; it only checks against "
             "an expected type");
    }
}

// ---- checking ------------------------------------------------------------------------

DTypeHdl Checker::peel_expected_binders(DTypeHdl expected) {
    expected = normalize_type(expected);
    while (true) {
        if (expected->tag == DType::Tag::Forall) {
            std::string uniq = push_svar(display_name(expected->var), expected->var_sort);
            Subst sub;
            sub[expected->var] = st_var(uniq, expected->var_sort);
            expected = normalize_type(subst_type(expected->body, sub));
        } else if (expected->tag == DType::Tag::Guarded) {
            push_hyp(expected->guard);
            expected = normalize_type(expected->body);
        } else {
            return expected;
        }
    }
}

void Checker::check_expr(const DExpPtr& e, DTypeHdl expected, Mode mode) {
    expected = peel_expected_binders(normalize_type(expected));
    switch (e->tag) {
    case DExp::Tag::If:
        if (mode == Mode::Proof)
            fail(e->loc, DiagKind::ProgramInProofPosition, "'if' is not a proof expression");
        check_if(*e, expected, mode);
        return;
    case DExp::Tag::Case: check_case(*e, expected, mode); return;
    case DExp::Tag::Let: check_let(*e, expected, mode); return;
    case DExp::Tag::Lam:
        if (mode == Mode::Proof)
            fail(e->loc, DiagKind::ProgramInProofPosition, "'lam' is not a proof expression");
        check_lam(*e, expected, mode);
        return;
    case DExp::Tag::Tuple: check_tuple_against(*e, expected, mode); return;
    default: break;
    }
    // Leaf: open the expected existentials as inference targets, synthesize,
    // match, and discharge everything here, under the current hypotheses.
    Root root;
    root.outer = root_;
    root_ = &root;
    DTypeHdl actual = synth_arg(e, mode);
    unify_type(expected, actual, e->loc, "expression");
    finalize_root(dt_tuple({}, {}), e->loc, false);
    root_ = root.outer;
}

void Checker::check_tuple_against(const ast::DExp& e, const DTypeHdl& expected, Mode mode) {
    Root root;
    root.outer = root_;
    root_ = &root;
    // Peel Exists into metas, then the core must be a tuple.
    DTypeHdl core = normalize_type(expected);
    while (true) {
        if (core->tag == DType::Tag::Exists) {
            STermHdl m = new_meta(core->var_sort, display_name(core->var));
            Subst sub;
            sub[core->var] = m;
            core = normalize_type(subst_type(core->body, sub));
        } else if (core->tag == DType::Tag::Asserting) {
            root_->pending_guards.push_back({core->guard, e.loc, "tuple witness guard"});
            core = normalize_type(core->body);
        } else {
            break;
        }
    }
    if (core->tag != DType::Tag::Tuple) {
        // A parenthesized single value may also check against a scalar type.
        if (e.pcomps.empty() && e.vcomps.size() == 1) {
            root_ = root.outer;
            check_expr(e.vcomps[0], expected, mode);
            return;
        }
        fail(e.loc, DiagKind::TypeError,
             "tuple expression against non-tuple type " + type_str(expected));
    }
    if (core->pcomps.size() != e.pcomps.size() || core->vcomps.size() != e.vcomps.size())
        fail(e.loc, DiagKind::TypeError,
             "tuple shape mismatch: expected " + type_str(core));
    for (size_t i = 0; i < e.pcomps.size(); ++i) {
        DTypeHdl at = synth_arg(e.pcomps[i], Mode::Proof);
        unify_type(core->pcomps[i], at, e.pcomps[i]->loc,
                   "proof component " + std::to_string(i + 1));
    }
    for (size_t i = 0; i < e.vcomps.size(); ++i) {
        if (synthesizable(e.vcomps[i])) {
            DTypeHdl at = synth_arg(e.vcomps[i], mode);
            unify_type(core->vcomps[i], at, e.vcomps[i]->loc,
                       "component " + std::to_string(i + 1));
        } else {
            DTypeHdl want = subst_metas_type(core->vcomps[i]);
            std::vector<std::string> fv;
            free_type_vars(want, fv);
            for (const auto& v : fv)
                if (is_unresolved_meta(v))
                    fail(e.vcomps[i]->loc, DiagKind::TypeError,
                         "cannot infer the type of tuple component " + std::to_string(i + 1));
            check_expr(e.vcomps[i], want, mode);
        }
    }
    finalize_root(dt_tuple({}, {}), e.loc, false);
    root_ = root.outer;
}

void Checker::check_if(const ast::DExp& e, const DTypeHdl& expected, Mode mode) {
    Root root;
    root.outer = root_;
    root_ = &root;
    DTypeHdl ct = open_existentials(synth_arg(e.cond, Mode::Program));
    finalize_root(dt_tuple({}, {}), e.cond->loc, false);
    root_ = root.outer;
    if (ct->tag != DType::Tag::BoolS)
        fail(e.cond->loc, DiagKind::TypeError,
             "if condition must be a bool, found " + type_str(ct));
    STermHdl b = normalize_static(ct->index);

    Snapshot snap = save();
    push_hyp(b);
    check_expr(e.then_e, expected, mode);
    restore(snap);
    push_hyp(normalize_static(st_not(b)));
    check_expr(e.else_e, expected, mode);
    restore(snap);
}

void Checker::check_let(const ast::DExp& e, const DTypeHdl& expected, Mode mode) {
    if (mode == Mode::Proof) {
        for (const auto& d : e.decls)
            if (d->tag == ast::LetDecl::Tag::Val)
                fail(d->loc, DiagKind::ProgramInProofPosition,
                     "val bindings are not allowed in proof expressions");
    }
    size_t dsave = dctx_.size();
    size_t ssave = sscope_.size();
    for (const auto& d : e.decls)
        process_let_decl(*d);
    check_expr(e.body, expected, mode);
    dctx_.resize(dsave);
    sscope_.resize(ssave);
}

void Checker::check_lam(const ast::DExp& e, const DTypeHdl& expected, Mode mode) {
    DTypeHdl core = normalize_type(expected);
    if (core->tag != DType::Tag::Fun)
        fail(e.loc, DiagKind::TypeError,
             "a function literal cannot have type " + type_str(expected));
    if (!core->pdoms.empty() || core->vdoms.size() != e.lam_params.size())
        fail(e.loc, DiagKind::TypeError,
             "function literal arity mismatch against " + type_str(expected));
    size_t dsave = dctx_.size();
    for (size_t i = 0; i < e.lam_params.size(); ++i) {
        DTypeHdl declared = elab_type(e.lam_params[i].type);
        {
            Root root;
            root.outer = root_;
            root_ = &root;
            unify_type(core->vdoms[i], declared, e.lam_params[i].loc,
                       "parameter '" + e.lam_params[i].name + "'");
            finalize_root(dt_tuple({}, {}), e.lam_params[i].loc, false);
            root_ = root.outer;
        }
        bind_value(e.lam_params[i].name, open_existentials(declared), false);
    }
    check_expr(e.body, core->cod, mode);
    dctx_.resize(dsave);
}

// ---- case / match ---------------------------------------------------------------------

Checker::ArmAnalysis Checker::analyze_refinement(const std::vector<STermHdl>& scrut_args,
                                                 const std::vector<STermHdl>& pat_args,
                                                 const Loc& loc) {
    ArmAnalysis out;
    std::vector<std::pair<STermHdl, STermHdl>> work;
    for (size_t i = 0; i < scrut_args.size(); ++i)
        work.push_back({scrut_args[i], pat_args[i]});

    auto add_subst = [&](const std::string& var, STermHdl term) {
        term = normalize_static(term);
        Subst one;
        one[var] = term;
        for (auto& [k, v] : out.sub)
            v = normalize_static(subst_static(v, one));
        out.sub[var] = term;
        for (auto& [l, r] : work) {
            l = normalize_static(subst_static(l, one));
            r = normalize_static(subst_static(r, one));
        }
        for (auto& h : out.int_hyps)
            h = normalize_static(subst_static(h, one));
    };

    size_t idx = 0;
    while (idx < work.size()) {
        STermHdl l = normalize_static(subst_static(work[idx].first, out.sub));
        STermHdl r = normalize_static(subst_static(work[idx].second, out.sub));
        ++idx;
        if (sterm_syntactic_equal(l, r))
            continue;
        SortHdl sort = l->sort ? l->sort : r->sort;
        if (sort && sort->tag == Sort::Tag::Int) {
            LinExpr d = lin_of_sterm(st_con("-", {l, r}, sort_int()));
            if (d.is_const()) {
                if (d.k != 0)
                    out.consistent = false;
                continue;
            }
            // Substitute through a unit-coefficient variable when possible.
            std::string var;
            cpp_int coeff;
            for (const auto& [v, c] : d.terms) {
                if (c == 1 || c == -1) {
                    var = v;
                    coeff = c;
                    break;
                }
            }
            if (var.empty()) {
                out.int_hyps.push_back(st_cmp(CmpOp::Eq, st_lin(d.k, d.terms)));
            } else {
                std::vector<std::pair<std::string, cpp_int>> terms;
                cpp_int scale = coeff == 1 ? -1 : 1;
                for (const auto& [w, cw] : d.terms)
                    if (w != var)
                        terms.push_back({w, cw * scale});
                add_subst(var, st_lin(d.k * scale, std::move(terms)));
            }
            continue;
        }
        if (sort && sort->tag == Sort::Tag::Bool) {
            if (l->tag == STerm::Tag::Var) {
                add_subst(l->name, r);
            } else if (r->tag == STerm::Tag::Var) {
                add_subst(r->name, l);
            } else {
                fail(loc, DiagKind::TypeError, "unsupported boolean index refinement");
            }
            continue;
        }
        // datasort / type-sorted
        if (l->tag == STerm::Tag::Var) {
            if (static_var_occurs(l->name, r)) {
                out.consistent = false;
                continue;
            }
            add_subst(l->name, r);
            continue;
        }
        if (r->tag == STerm::Tag::Var) {
            if (static_var_occurs(r->name, l)) {
                out.consistent = false;
                continue;
            }
            add_subst(r->name, l);
            continue;
        }
        if (l->tag == STerm::Tag::Con && r->tag == STerm::Tag::Con) {
            if (l->name != r->name || l->args.size() != r->args.size()) {
                out.consistent = false;
                continue;
            }
            for (size_t i = 0; i < l->args.size(); ++i)
                work.push_back({l->args[i], r->args[i]});
            continue;
        }
        fail(loc, DiagKind::TypeError, "unsupported index refinement between " + sterm_str(l) +
                                           " and " + sterm_str(r));
    }
    return out;
}

void Checker::check_case(const ast::DExp& e, const DTypeHdl& expected, Mode mode) {
    DTypeHdl st;
    {
        Root root;
        root.outer = root_;
        root_ = &root;
        st = open_existentials(synth_arg(e.scrut, mode));
        finalize_root(dt_tuple({}, {}), e.scrut->loc, false);
        root_ = root.outer;
    }
    if (st->tag != DType::Tag::Data && st->tag != DType::Tag::Prop)
        fail(e.scrut->loc, DiagKind::TypeError,
             "cannot match on a value of type " + type_str(st));
    const TypeConInfo* owner = env_.type_con(st->name);
    assert(owner);

    std::vector<std::string> covered;
    bool has_catch_all = false;

    for (const auto& arm : e.arms) {
        if (arm.pat->tag == ast::Pattern::Tag::Var || arm.pat->tag == ast::Pattern::Tag::Any) {
            Snapshot snap = save();
            if (arm.pat->tag == ast::Pattern::Tag::Var)
                bind_value(arm.pat->name, st, mode == Mode::Proof);
            check_expr(arm.body, expected, mode);
            restore(snap);
            has_catch_all = true;
            continue;
        }
        if (arm.pat->tag != ast::Pattern::Tag::Con)
            fail(arm.pat->loc, DiagKind::ParseError, "unsupported pattern in case arm");
        const ConSig* sig = env_.con_sig(arm.pat->name);
        if (!sig)
            fail(arm.pat->loc, DiagKind::UnboundVar,
                 "unknown constructor '" + arm.pat->name + "'");
        if (sig->owner != st->name)
            fail(arm.pat->loc, DiagKind::TypeError,
                 "constructor '" + arm.pat->name + "' belongs to '" + sig->owner +
                     "', not '" + st->name + "'");
        if (sig->args.size() != arm.pat->args.size())
            fail(arm.pat->loc, DiagKind::TypeError,
                 "constructor '" + arm.pat->name + "' has " + std::to_string(sig->args.size()) +
                     " fields, pattern has " + std::to_string(arm.pat->args.size()));
        covered.push_back(env_.resolve_dyn(arm.pat->name));

        Snapshot snap = save();
        // Freshen the constructor telescope as rigid variables.
        Subst freshen;
        std::vector<STermHdl> guards;
        std::vector<CVar> fresh_vars;
        for (const auto& tv : sig->telescope) {
            std::string uniq = push_skolem(display_name(tv.name), tv.sort);
            freshen[tv.name] = st_var(uniq, tv.sort);
            switch (tv.sort->tag) {
            case Sort::Tag::Int: fresh_vars.push_back({uniq, CVar::Kind::Int, ""}); break;
            case Sort::Tag::Bool: fresh_vars.push_back({uniq, CVar::Kind::Bool, ""}); break;
            case Sort::Tag::Data:
                fresh_vars.push_back({uniq, CVar::Kind::Data, tv.sort->data_name});
                break;
            default: break;
            }
        }
        std::vector<STermHdl> pat_args;
        for (const auto& ra : sig->result_args)
            pat_args.push_back(normalize_static(subst_static(ra, freshen)));
        for (const auto& tv : sig->telescope)
            for (const auto& g : tv.guards)
                guards.push_back(normalize_static(subst_static(g, freshen)));

        // Consistency of the refinement under current hypotheses.
        {
            std::vector<Atom> eq_atoms;
            for (size_t i = 0; i < st->sargs.size(); ++i) {
                SortHdl s = st->sargs[i]->sort;
                if (s && s->tag == Sort::Tag::Int) {
                    LinExpr d = lin_of_sterm(
                        st_con("-", {st->sargs[i], pat_args[i]}, sort_int()));
                    eq_atoms.push_back(atom_lin(CmpOp::Eq, d));
                } else if (s && (s->tag == Sort::Tag::Data)) {
                    eq_atoms.push_back(atom_data_eq(st->sargs[i], pat_args[i]));
                }
            }
            for (const auto& g : guards)
                eq_atoms.push_back(atom_of_sterm(g));
            Constraint c = build_constraint(atom_false(), eq_atoms, fresh_vars, arm.loc,
                                            "reachability of arm '" + arm.pat->name + "'");
            SolveResult r = solve_logged(c);
            if (r.tag == SolveResult::Tag::Valid) {
                rep_.warn(arm.loc, DiagKind::RedundantArm,
                          "arm '" + arm.pat->name + "' can never match here");
                restore(snap);
                continue;
            }
        }

        ArmAnalysis an = analyze_refinement(st->sargs, pat_args, arm.loc);
        if (!an.consistent) {
            rep_.warn(arm.loc, DiagKind::RedundantArm,
                      "arm '" + arm.pat->name + "' can never match here");
            restore(snap);
            continue;
        }
        // Apply the refinement substitution to the whole checking state.
        for (auto& h : sctx_.hyps)
            h = normalize_static(subst_static(h, an.sub));
        for (auto& b : dctx_)
            b.type = subst_type(b.type, an.sub);
        DTypeHdl arm_expected = subst_type(expected, an.sub);
        for (const auto& g : guards)
            push_hyp(normalize_static(subst_static(g, an.sub)));
        for (const auto& h : an.int_hyps)
            push_hyp(h);

        for (size_t i = 0; i < arm.pat->args.size(); ++i) {
            const auto& sub_pat = arm.pat->args[i];
            DTypeHdl ft = subst_type(subst_type(sig->args[i], freshen), an.sub);
            if (sub_pat->tag == ast::Pattern::Tag::Var)
                bind_value(sub_pat->name, ft, sig->owner_is_prop);
            else if (sub_pat->tag != ast::Pattern::Tag::Any)
                fail(sub_pat->loc, DiagKind::ParseError,
                     "nested patterns are not supported; bind a variable instead");
        }
        check_expr(arm.body, arm_expected, mode);
        restore(snap);
    }

    if (has_catch_all)
        return;
    // Exhaustiveness: every uncovered constructor must be impossible.
    std::vector<std::string> missing;
    for (const auto& cname : owner->ctor_names) {
        if (std::find(covered.begin(), covered.end(), cname) != covered.end())
            continue;
        const ConSig* sig = env_.con_sig(cname);
        assert(sig);
        Subst freshen;
        std::vector<CVar> fresh_vars;
        std::vector<Atom> eq_atoms;
        for (const auto& tv : sig->telescope) {
            std::string uniq = fresh(display_name(tv.name));
            freshen[tv.name] = st_var(uniq, tv.sort);
            switch (tv.sort->tag) {
            case Sort::Tag::Int: fresh_vars.push_back({uniq, CVar::Kind::Int, ""}); break;
            case Sort::Tag::Bool: fresh_vars.push_back({uniq, CVar::Kind::Bool, ""}); break;
            case Sort::Tag::Data:
                fresh_vars.push_back({uniq, CVar::Kind::Data, tv.sort->data_name});
                break;
            default: break;
            }
        }
        for (size_t i = 0; i < st->sargs.size(); ++i) {
            STermHdl pa = normalize_static(subst_static(sig->result_args[i], freshen));
            SortHdl s = st->sargs[i]->sort;
            if (s && s->tag == Sort::Tag::Int) {
                LinExpr d = lin_of_sterm(st_con("-", {st->sargs[i], pa}, sort_int()));
                eq_atoms.push_back(atom_lin(CmpOp::Eq, d));
            } else if (s && s->tag == Sort::Tag::Data) {
                eq_atoms.push_back(atom_data_eq(st->sargs[i], pa));
            }
        }
        for (const auto& tv : sig->telescope)
            for (const auto& g : tv.guards)
                eq_atoms.push_back(atom_of_sterm(normalize_static(subst_static(g, freshen))));
        Constraint c = build_constraint(atom_false(), eq_atoms, fresh_vars, e.loc,
                                        "exhaustiveness: constructor '" + cname + "'");
        SolveResult r = solve_logged(c);
        if (r.tag != SolveResult::Tag::Valid)
            missing.push_back(cname);
    }
    if (!missing.empty()) {
        std::string list;
        for (size_t i = 0; i < missing.size(); ++i)
            list += (i ? ", " : "") + missing[i];
        fail(e.loc, DiagKind::NonExhaustiveMatch, "non-exhaustive match; missing: " + list);
    }
}

// ---- let declarations --------------------------------------------------------------------

void Checker::bind_val_pattern(const ast::PatPtr& pat, DTypeHdl rhs_type, const Loc& loc) {
    switch (pat->tag) {
    case ast::Pattern::Tag::Var: bind_value(pat->name, rhs_type, false); return;
    case ast::Pattern::Tag::Any: return;
    case ast::Pattern::Tag::Tuple: {
        DTypeHdl t = open_existentials(rhs_type);
        if (t->tag != DType::Tag::Tuple)
            fail(loc, DiagKind::TypeError,
                 "tuple pattern against non-tuple type " + type_str(t));
        if (t->pcomps.size() != pat->pcomps.size() || t->vcomps.size() != pat->vcomps.size())
            fail(loc, DiagKind::TypeError,
                 "tuple pattern shape mismatch against " + type_str(t));
        for (size_t i = 0; i < pat->pcomps.size(); ++i) {
            const auto& p = pat->pcomps[i];
            if (p->tag == ast::Pattern::Tag::Var)
                bind_value(p->name, t->pcomps[i], true);
            else if (p->tag != ast::Pattern::Tag::Any)
                fail(p->loc, DiagKind::ParseError, "only variables may appear in proof patterns");
        }
        for (size_t i = 0; i < pat->vcomps.size(); ++i) {
            const auto& p = pat->vcomps[i];
            if (p->tag == ast::Pattern::Tag::Var)
                bind_value(p->name, t->vcomps[i], false);
            else if (p->tag != ast::Pattern::Tag::Any)
                fail(p->loc, DiagKind::ParseError,
                     "nested value patterns are not supported in val bindings");
        }
        return;
    }
    case ast::Pattern::Tag::Con:
        fail(pat->loc, DiagKind::ParseError,
             "constructor patterns belong in case expressions, not val bindings");
    }
}

void Checker::process_let_decl(const ast::LetDecl& d) {
    switch (d.tag) {
    case ast::LetDecl::Tag::Val: {
        // Simultaneous bindings: every right-hand side sees the outer scope.
        std::vector<DTypeHdl> types;
        for (const auto& b : d.binds) {
            Root root;
            root.outer = root_;
            root_ = &root;
            DTypeHdl t = synth_expr(b.rhs, Mode::Program);
            types.push_back(finalize_root(t, b.loc, true));
            root_ = root.outer;
        }
        for (size_t i = 0; i < d.binds.size(); ++i)
            bind_val_pattern(d.binds[i].pat, types[i], d.binds[i].loc);
        return;
    }
    case ast::LetDecl::Tag::Prval: {
        const auto& b = d.binds[0];
        Root root;
        root.outer = root_;
        root_ = &root;
        DTypeHdl t = synth_expr(b.rhs, Mode::Proof);
        t = finalize_root(t, b.loc, true);
        root_ = root.outer;
        if (kind_of(t) != TKind::Prop)
            fail(b.loc, DiagKind::ProgramInProofPosition,
                 "prval right-hand side is not a proof: " + type_str(t));
        if (b.pat->tag == ast::Pattern::Tag::Var)
            bind_value(b.pat->name, t, true);
        else if (b.pat->tag != ast::Pattern::Tag::Any)
            fail(b.pat->loc, DiagKind::ParseError, "prval binds a single proof variable");
        return;
    }
    case ast::LetDecl::Tag::Fun: decl_fun_group(*d.fun, false, false); return;
    }
}

// ---- function groups -----------------------------------------------------------------------

void Checker::decl_fun_group(const ast::FunGroup& g, bool top_level, bool from_prelude) {
    struct Elaborated {
        DTypeHdl full;
        const ast::FunDef* def;
    };
    std::vector<Elaborated> sigs;

    for (const auto& def : g.defs) {
        Snapshot snap = save();
        std::vector<TeleVarG> tele = elab_qgroups(g.shared_quants, nullptr);
        std::vector<TeleVarG> own = elab_qgroups(def.quants, nullptr);
        for (auto& tv : own)
            tele.push_back(std::move(tv));

        std::vector<DTypeHdl> pdoms, vdoms;
        auto elab_param = [&](const ast::Param& p, bool is_proof_param) {
            DTypeHdl t = elab_type(p.type);
            TKind k = kind_of(t);
            if (is_proof_param && k != TKind::Prop)
                fail(p.loc, DiagKind::SortError,
                     "proof parameter '" + p.name + "' must have a prop type");
            if (!is_proof_param && k != TKind::Type)
                fail(p.loc, DiagKind::SortError,
                     "parameter '" + p.name + "' must have a program type");
            return t;
        };
        if (g.is_proof) {
            for (const auto& p : def.pparams)
                pdoms.push_back(elab_param(p, true));
            for (const auto& p : def.vparams)
                pdoms.push_back(elab_param(p, true));
        } else {
            for (const auto& p : def.pparams)
                pdoms.push_back(elab_param(p, true));
            for (const auto& p : def.vparams)
                vdoms.push_back(elab_param(p, false));
        }
        DTypeHdl ret = elab_type(def.ret);
        if (g.is_proof && kind_of(ret) != TKind::Prop)
            fail(def.loc, DiagKind::SortError, "prfun must return a prop");
        if (!g.is_proof && kind_of(ret) == TKind::Prop)
            fail(def.loc, DiagKind::SortError,
                 "fun returns a bare proof; use prfun or a proving tuple");
        DTypeHdl full = wrap_telescope(tele, dt_fun(pdoms, vdoms, ret));
        restore(snap);
        sigs.push_back({full, &def});
    }

    // Bind every name first so the bodies can recurse (also mutually).
    for (const auto& s : sigs) {
        if (top_level) {
            auto it = env_.globals.find(s.def->name);
            if (it != env_.globals.end() && !(it->second.from_prelude && !from_prelude))
                fail(s.def->loc, DiagKind::DuplicateName,
                     "'" + s.def->name + "' is already defined");
            GlobalVal gv;
            gv.name = s.def->name;
            gv.type = s.full;
            gv.is_proof = g.is_proof;
            gv.origin = g.is_proof ? GlobalVal::Origin::Prfun : GlobalVal::Origin::Fun;
            gv.from_prelude = from_prelude;
            env_.globals[s.def->name] = gv;
        } else {
            bind_value(s.def->name, s.full, g.is_proof);
        }
    }

    // Check the bodies.
    for (const auto& s : sigs) {
        Snapshot snap = save();
        DTypeHdl t = peel_expected_binders(s.full);
        assert(t->tag == DType::Tag::Fun);
        std::vector<const ast::Param*> pparams, vparams;
        for (const auto& p : s.def->pparams)
            pparams.push_back(&p);
        for (const auto& p : s.def->vparams)
            (g.is_proof ? pparams : vparams).push_back(&p);
        assert(pparams.size() == t->pdoms.size() && vparams.size() == t->vdoms.size());
        for (size_t i = 0; i < pparams.size(); ++i)
            bind_value(pparams[i]->name, open_existentials(t->pdoms[i]), true);
        for (size_t i = 0; i < vparams.size(); ++i)
            bind_value(vparams[i]->name, open_existentials(t->vdoms[i]), false);
        check_expr(s.def->body, t->cod, g.is_proof ? Mode::Proof : Mode::Program);
        restore(snap);
    }
}

void Checker::decl_val(const ast::Decl& d, bool from_prelude) {
    Root root;
    root.outer = root_;
    root_ = &root;
    DTypeHdl t = synth_expr(d.val_rhs, Mode::Program);
    t = finalize_root(t, d.loc, true);
    root_ = root.outer;

    auto bind_global = [&](const std::string& name, DTypeHdl type, bool is_proof) {
        auto it = env_.globals.find(name);
        if (it != env_.globals.end() && !(it->second.from_prelude && !from_prelude))
            fail(d.loc, DiagKind::DuplicateName, "'" + name + "' is already defined");
        GlobalVal gv;
        gv.name = name;
        gv.type = std::move(type);
        gv.is_proof = is_proof;
        gv.origin = GlobalVal::Origin::Val;
        gv.from_prelude = from_prelude;
        env_.globals[name] = std::move(gv);
    };

    const auto& pat = d.val_pat;
    if (pat->tag == ast::Pattern::Tag::Var) {
        bind_global(pat->name, t, false);
        return;
    }
    if (pat->tag == ast::Pattern::Tag::Tuple) {
        Snapshot snap = save();
        DTypeHdl opened = open_existentials(t);
        // Top-level tuple bindings keep their opened component types; the
        // skolems stay in scope for the remainder of the file.
        (void)snap;
        if (opened->tag != DType::Tag::Tuple)
            fail(d.loc, DiagKind::TypeError,
                 "tuple pattern against non-tuple type " + type_str(opened));
        if (opened->pcomps.size() != pat->pcomps.size() ||
            opened->vcomps.size() != pat->vcomps.size())
            fail(d.loc, DiagKind::TypeError, "tuple pattern shape mismatch");
        for (size_t i = 0; i < pat->pcomps.size(); ++i)
            if (pat->pcomps[i]->tag == ast::Pattern::Tag::Var)
                bind_global(pat->pcomps[i]->name, opened->pcomps[i], true);
        for (size_t i = 0; i < pat->vcomps.size(); ++i)
            if (pat->vcomps[i]->tag == ast::Pattern::Tag::Var)
                bind_global(pat->vcomps[i]->name, opened->vcomps[i], false);
        return;
    }
    fail(pat->loc, DiagKind::ParseError, "unsupported top-level val pattern");
}

} // namespace miniats
