#include "miniats/audit.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace miniats {

std::string CVal::str() const {
    switch (tag) {
    case Tag::Int: return std::to_string(i);
    case Tag::Bool: return b ? "true" : "false";
    case Tag::List: {
        std::string out = "[";
        for (size_t k = 0; k < list.size(); ++k)
            out += (k ? "," : "") + std::to_string(list[k]);
        return out + "]";
    }
    }
    return "?";
}

std::string AuditOutcome::line() const {
    switch (tag) {
    case Tag::Pass: return name + " PASS n=" + std::to_string(cases);
    case Tag::Fail: return name + " FAIL " + counterexample;
    case Tag::Error: return name + " ERROR " + error;
    }
    return name;
}

// ---- builtin models ---------------------------------------------------------------

namespace {

bool ord_model(const std::vector<long long>& xs) {
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i - 1] > xs[i])
            return false;
    return true;
}

std::vector<long long> sorted_copy(std::vector<long long> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
}

bool perm_model(const std::vector<long long>& a, const std::vector<long long>& b) {
    return sorted_copy(a) == sorted_copy(b);
}

long long fib_value(long long n) {
    long long a = 0, b = 1;
    for (long long i = 0; i < n; ++i) {
        long long t = a + b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

SemanticModel builtin_models() {
    SemanticModel m;
    m["ORD"] = [](const std::vector<CVal>& a) { return ord_model(a[0].list); };
    m["PERM"] = [](const std::vector<CVal>& a) { return perm_model(a[0].list, a[1].list); };
    m["SORT"] = [](const std::vector<CVal>& a) {
        return ord_model(a[1].list) && perm_model(a[0].list, a[1].list);
    };
    m["LB"] = [](const std::vector<CVal>& a) {
        for (long long e : a[1].list)
            if (a[0].i > e)
                return false;
        return true;
    };
    m["UB"] = [](const std::vector<CVal>& a) {
        for (long long e : a[1].list)
            if (a[0].i < e)
                return false;
        return true;
    };
    m["UNION4"] = [](const std::vector<CVal>& a) {
        std::vector<long long> u;
        u.push_back(a[0].i);
        for (int k = 1; k <= 3; ++k)
            u.insert(u.end(), a[k].list.begin(), a[k].list.end());
        return sorted_copy(u) == sorted_copy(a[4].list);
    };
    m["APPEND"] = [](const std::vector<CVal>& a) {
        std::vector<long long> c = a[0].list;
        c.insert(c.end(), a[1].list.begin(), a[1].list.end());
        return c == a[2].list;
    };
    m["FIB"] = [](const std::vector<CVal>& a) {
        if (a[0].i < 0)
            return false;
        return fib_value(a[0].i) == a[1].i;
    };
    return m;
}

// ---- the auditor ------------------------------------------------------------------

namespace {

struct AuditAbort {
    std::string message;
};

// Shape of an enumerable datasort: a nil-like and a cons-like constructor.
struct ListShape {
    std::string nil_name;
    std::string cons_name;
};

ListShape datasort_shape(const Env& env, const std::string& sort_name) {
    const DatasortDef* def = env.statics.datasort(sort_name);
    if (!def)
        throw AuditAbort{"datasort '" + sort_name + "' is not declared"};
    ListShape shape;
    for (const auto& cname : def->ctor_names) {
        const StaticConSig* sig = env.statics.ctor(cname);
        assert(sig);
        if (sig->arg_sorts.empty()) {
            shape.nil_name = cname;
        } else if (sig->arg_sorts.size() == 2 && sig->arg_sorts[0]->tag == Sort::Tag::Int &&
                   sig->arg_sorts[1]->tag == Sort::Tag::Data &&
                   sig->arg_sorts[1]->data_name == sort_name) {
            shape.cons_name = cname;
        } else {
            throw AuditAbort{"datasort '" + sort_name + "' is not an integer-list shape"};
        }
    }
    if (shape.nil_name.empty() || shape.cons_name.empty())
        throw AuditAbort{"datasort '" + sort_name + "' is not an integer-list shape"};
    return shape;
}

struct Premise {
    std::vector<STermHdl> guards; // from Guarded wrappers on the prop
    std::string prop;
    std::vector<STermHdl> args;
    int depth = -1;     // highest telescope index among free variables
    bool consumed = false;
};

class Enumerator {
public:
    Enumerator(const Env& env, const LemmaSig& lemma, const SemanticModel& model,
               const AuditBounds& bounds)
        : env_(env), lemma_(lemma), model_(model), bounds_(bounds) {}

    AuditOutcome run() {
        AuditOutcome out;
        out.name = lemma_.name;
        try {
            prepare();
            recurse(0);
            out.tag = AuditOutcome::Tag::Pass;
            out.cases = cases_;
        } catch (const Counterexample& cx) {
            out.tag = AuditOutcome::Tag::Fail;
            out.cases = cases_;
            out.counterexample = cx.text;
        } catch (const AuditAbort& err) {
            out.tag = AuditOutcome::Tag::Error;
            out.error = err.message;
        }
        return out;
    }

private:
    struct Counterexample {
        std::string text;
    };

    const Env& env_;
    const LemmaSig& lemma_;
    const SemanticModel& model_;
    AuditBounds bounds_;

    std::map<std::string, int> var_index_;
    std::vector<CVal::Tag> var_kind_;
    std::vector<CVal> assign_;
    std::vector<std::vector<STermHdl>> guards_by_depth_;
    std::vector<Premise> premises_;
    Premise conclusion_;

    enum class PlanKind { Enumerate, Determined, Restricted };
    struct Plan {
        PlanKind kind = PlanKind::Enumerate;
        size_t premise = 0;
    };
    std::vector<Plan> plans_;
    std::vector<std::vector<long long>> all_lists_;
    uint64_t cases_ = 0;

    int term_depth(const STermHdl& t) const {
        std::vector<std::string> fv;
        free_static_vars(t, fv);
        int d = -1;
        for (const auto& v : fv) {
            auto it = var_index_.find(v);
            if (it == var_index_.end())
                throw AuditAbort{"free variable '" + v + "' outside the telescope"};
            d = std::max(d, it->second);
        }
        return d;
    }

    Premise parse_prop(DTypeHdl t) {
        Premise p;
        while (t->tag == DType::Tag::Guarded) {
            p.guards.push_back(t->guard);
            t = t->body;
        }
        if (t->tag != DType::Tag::Prop)
            throw AuditAbort{"unsupported lemma shape: argument/result is not a plain prop"};
        p.prop = t->name;
        p.args = t->sargs;
        if (!model_.count(p.prop))
            throw AuditAbort{"UnmodeledProp: no semantic model for '" + p.prop + "'"};
        int d = -1;
        for (const auto& a : p.args)
            d = std::max(d, term_depth(a));
        for (const auto& g : p.guards)
            d = std::max(d, term_depth(g));
        p.depth = d;
        return p;
    }

    void prepare() {
        int idx = 0;
        guards_by_depth_.assign(lemma_.telescope.size() + 1, {});
        for (const auto& tv : lemma_.telescope) {
            var_index_[tv.name] = idx;
            switch (tv.sort->tag) {
            case Sort::Tag::Int: var_kind_.push_back(CVal::Tag::Int); break;
            case Sort::Tag::Bool: var_kind_.push_back(CVal::Tag::Bool); break;
            case Sort::Tag::Data:
                datasort_shape(env_, tv.sort->data_name); // shape check
                var_kind_.push_back(CVal::Tag::List);
                break;
            default:
                throw AuditAbort{"telescope variable '" + display_name(tv.name) +
                                 "' has unsupported sort " + sort_str(tv.sort)};
            }
            ++idx;
        }
        // Guards become prunable predicates at the depth of their last variable.
        for (size_t i = 0; i < lemma_.telescope.size(); ++i) {
            for (const auto& g : lemma_.telescope[i].guards) {
                int d = term_depth(g);
                guards_by_depth_[d < 0 ? 0 : d].push_back(g);
            }
        }
        for (const auto& parg : lemma_.pargs)
            premises_.push_back(parse_prop(parg));
        conclusion_ = parse_prop(lemma_.result);
        assign_.assign(lemma_.telescope.size(), CVal{});

        // Materialize the list domain: ordered by length, then lexicographic.
        all_lists_.push_back({});
        std::vector<long long> values;
        for (long long v = bounds_.min_val; v <= bounds_.max_val; ++v)
            values.push_back(v);
        if (values.empty())
            throw AuditAbort{"empty value range"};
        size_t start = 0;
        for (int len = 1; len <= bounds_.max_len; ++len) {
            size_t end = all_lists_.size();
            for (size_t k = start; k < end; ++k)
                for (long long v : values) {
                    std::vector<long long> nxt;
                    nxt.reserve(all_lists_[k].size() + 1);
                    nxt.push_back(v);
                    nxt.insert(nxt.end(), all_lists_[k].begin(), all_lists_[k].end());
                    all_lists_.push_back(std::move(nxt));
                }
            start = end;
        }
        std::sort(all_lists_.begin(), all_lists_.end(),
                  [](const std::vector<long long>& a, const std::vector<long long>& b) {
                      if (a.size() != b.size())
                          return a.size() < b.size();
                      return a < b;
                  });

        // Plan: premises can determine or restrict a variable that appears as a
        // bare argument, once every other argument is already available.
        plans_.assign(lemma_.telescope.size(), Plan{});
        for (size_t i = 0; i < lemma_.telescope.size(); ++i) {
            for (size_t pi = 0; pi < premises_.size(); ++pi) {
                Premise& p = premises_[pi];
                if (p.consumed || !p.guards.empty())
                    continue;
                int target = -1; // arg position holding exactly Var(i)
                bool others_ready = true;
                for (size_t ai = 0; ai < p.args.size(); ++ai) {
                    const STermHdl& a = p.args[ai];
                    bool is_var_i = a->tag == STerm::Tag::Var && var_index_.count(a->name) &&
                                    var_index_.at(a->name) == int(i);
                    if (is_var_i && target < 0) {
                        target = int(ai);
                        continue;
                    }
                    if (term_depth(a) >= int(i))
                        others_ready = false;
                }
                if (target < 0 || !others_ready)
                    continue;
                bool determined =
                    (p.prop == "APPEND" && target == 2) || (p.prop == "SORT" && target == 1) ||
                    (p.prop == "FIB" && target == 1);
                bool restricted =
                    (p.prop == "PERM" && (target == 0 || target == 1)) ||
                    (p.prop == "UNION4" && target == 4);
                if (!determined && !restricted)
                    continue;
                plans_[i].kind = determined ? PlanKind::Determined : PlanKind::Restricted;
                plans_[i].premise = pi;
                p.consumed = true;
                break;
            }
        }
    }

    CVal eval_term(const STermHdl& t0) const {
        STermHdl t = normalize_static(t0);
        switch (t->tag) {
        case STerm::Tag::Lin: {
            long long v = static_cast<long long>(t->ival);
            for (const auto& [var, c] : t->lin)
                v += static_cast<long long>(c) * assign_[var_index_.at(var)].i;
            CVal out;
            out.tag = CVal::Tag::Int;
            out.i = v;
            return out;
        }
        case STerm::Tag::BoolLit: {
            CVal out;
            out.tag = CVal::Tag::Bool;
            out.b = t->bval;
            return out;
        }
        case STerm::Tag::Cmp: {
            CVal lin = eval_term(t->args[0]);
            CVal out;
            out.tag = CVal::Tag::Bool;
            switch (t->cmp) {
            case CmpOp::Le: out.b = lin.i <= 0; break;
            case CmpOp::Eq: out.b = lin.i == 0; break;
            case CmpOp::Ne: out.b = lin.i != 0; break;
            }
            return out;
        }
        case STerm::Tag::Not: {
            CVal inner = eval_term(t->args[0]);
            inner.b = !inner.b;
            return inner;
        }
        case STerm::Tag::Var: return assign_[var_index_.at(t->name)];
        case STerm::Tag::Con: {
            const StaticConSig* sig = env_.statics.ctor(t->name);
            if (!sig)
                throw AuditAbort{"unknown static constructor '" + t->name + "'"};
            CVal out;
            out.tag = CVal::Tag::List;
            if (t->args.empty())
                return out; // nil
            if (t->args.size() == 2) {
                CVal head = eval_term(t->args[0]);
                CVal tail = eval_term(t->args[1]);
                out.list.reserve(tail.list.size() + 1);
                out.list.push_back(head.i);
                out.list.insert(out.list.end(), tail.list.begin(), tail.list.end());
                return out;
            }
            throw AuditAbort{"unsupported static constructor shape '" + t->name + "'"};
        }
        default: throw AuditAbort{"unsupported static term in lemma"};
        }
    }

    bool eval_premise(const Premise& p) const {
        for (const auto& g : p.guards)
            if (!eval_term(g).b)
                return true; // vacuously true
        std::vector<CVal> args;
        args.reserve(p.args.size());
        for (const auto& a : p.args)
            args.push_back(eval_term(a));
        return model_.at(p.prop)(args);
    }

    bool conclusion_holds() const { return eval_premise(conclusion_); }

    // Lower bound on the length a determined/restricted list target would get,
    // counting only already-assigned parts: used to clip infeasible branches.
    bool target_infeasible(size_t level) const {
        for (size_t pi = 0; pi < premises_.size(); ++pi) {
            const Premise& p = premises_[pi];
            if (!p.consumed)
                continue;
            // Only APPEND/UNION4/SORT targets can exceed the length bound.
            long long lb = 0;
            bool relevant = false;
            auto arg_len_lb = [&](const STermHdl& a) -> long long {
                STermHdl t = normalize_static(a);
                long long n = 0;
                while (t->tag == STerm::Tag::Con && t->args.size() == 2) {
                    ++n;
                    t = normalize_static(t->args[1]);
                }
                if (t->tag == STerm::Tag::Var) {
                    int vi = var_index_.at(t->name);
                    if (vi <= int(level))
                        n += static_cast<long long>(assign_[vi].list.size());
                }
                return n;
            };
            if (p.prop == "APPEND") {
                lb = arg_len_lb(p.args[0]) + arg_len_lb(p.args[1]);
                relevant = true;
            } else if (p.prop == "UNION4") {
                lb = 1 + arg_len_lb(p.args[1]) + arg_len_lb(p.args[2]) + arg_len_lb(p.args[3]);
                relevant = true;
            } else if (p.prop == "SORT") {
                lb = arg_len_lb(p.args[0]);
                relevant = true;
            }
            if (relevant && lb > bounds_.max_len)
                return true;
        }
        return false;
    }

    void visit_full() {
        ++cases_;
        if (cases_ > bounds_.cap)
            throw AuditAbort{"BoundsTooLarge: more than " + std::to_string(bounds_.cap) +
                             " instantiations"};
        if (!conclusion_holds()) {
            // Verify before reporting: all guards and premises hold, the
            // conclusion does not.
            for (size_t d = 0; d < guards_by_depth_.size(); ++d)
                for (const auto& g : guards_by_depth_[d])
                    if (!eval_term(g).b)
                        throw AuditAbort{"internal: counterexample fails a guard"};
            for (const auto& p : premises_)
                if (!eval_premise(p))
                    throw AuditAbort{"internal: counterexample fails a premise"};
            std::ostringstream os;
            for (size_t i = 0; i < assign_.size(); ++i)
                os << (i ? ", " : "") << display_name(lemma_.telescope[i].name) << "="
                   << assign_[i].str();
            throw Counterexample{os.str()};
        }
    }

    bool prune_at(size_t i) {
        for (const auto& g : guards_by_depth_[i])
            if (!eval_term(g).b)
                return true;
        for (const auto& p : premises_) {
            if (p.consumed || p.depth != int(i))
                continue;
            if (!eval_premise(p))
                return true;
        }
        if (target_infeasible(i))
            return true;
        return false;
    }

    void recurse(size_t i) {
        if (i == assign_.size()) {
            visit_full();
            return;
        }
        const Plan& plan = plans_[i];
        auto try_value = [&](CVal v) {
            assign_[i] = std::move(v);
            if (!prune_at(i))
                recurse(i + 1);
        };
        switch (plan.kind) {
        case PlanKind::Enumerate: {
            switch (var_kind_[i]) {
            case CVal::Tag::Int:
                for (long long v = bounds_.min_val; v <= bounds_.max_val; ++v) {
                    CVal c;
                    c.tag = CVal::Tag::Int;
                    c.i = v;
                    try_value(std::move(c));
                }
                return;
            case CVal::Tag::Bool:
                for (int v = 0; v <= 1; ++v) {
                    CVal c;
                    c.tag = CVal::Tag::Bool;
                    c.b = v == 1;
                    try_value(std::move(c));
                }
                return;
            case CVal::Tag::List:
                for (const auto& xs : all_lists_) {
                    CVal c;
                    c.tag = CVal::Tag::List;
                    c.list = xs;
                    try_value(std::move(c));
                }
                return;
            }
            return;
        }
        case PlanKind::Determined: {
            const Premise& p = premises_[plan.premise];
            CVal v;
            if (p.prop == "APPEND") {
                CVal a = eval_term(p.args[0]);
                CVal b = eval_term(p.args[1]);
                v.tag = CVal::Tag::List;
                v.list = a.list;
                v.list.insert(v.list.end(), b.list.begin(), b.list.end());
                if (int(v.list.size()) > bounds_.max_len)
                    return; // outside the variable's domain
            } else if (p.prop == "SORT") {
                CVal a = eval_term(p.args[0]);
                v.tag = CVal::Tag::List;
                v.list = sorted_copy(a.list);
                if (int(v.list.size()) > bounds_.max_len)
                    return;
            } else { // FIB
                CVal n = eval_term(p.args[0]);
                if (n.i < 0)
                    return;
                v.tag = CVal::Tag::Int;
                v.i = fib_value(n.i);
                if (v.i < bounds_.min_val || v.i > bounds_.max_val)
                    return;
            }
            try_value(std::move(v));
            return;
        }
        case PlanKind::Restricted: {
            const Premise& p = premises_[plan.premise];
            std::vector<long long> base;
            if (p.prop == "PERM") {
                size_t src = p.args[0]->tag == STerm::Tag::Var &&
                                     var_index_.count(p.args[0]->name) &&
                                     var_index_.at(p.args[0]->name) == int(i)
                                 ? 1
                                 : 0;
                base = eval_term(p.args[src]).list;
            } else { // UNION4, target position 4
                base.push_back(eval_term(p.args[0]).i);
                for (int k = 1; k <= 3; ++k) {
                    CVal a = eval_term(p.args[k]);
                    base.insert(base.end(), a.list.begin(), a.list.end());
                }
            }
            if (int(base.size()) > bounds_.max_len)
                return;
            std::sort(base.begin(), base.end());
            do {
                CVal c;
                c.tag = CVal::Tag::List;
                c.list = base;
                try_value(std::move(c));
            } while (std::next_permutation(base.begin(), base.end()));
            return;
        }
        }
    }
};

} // namespace

AuditOutcome audit_lemma(const Env& env, const LemmaSig& lemma, const SemanticModel& model,
                         const AuditBounds& bounds) {
    return Enumerator(env, lemma, model, bounds).run();
}

std::vector<AuditOutcome> audit_all(const Env& env, const std::vector<std::string>& lemma_names,
                                    const SemanticModel& model, const AuditBounds& bounds) {
    std::vector<AuditOutcome> out;
    for (const auto& name : lemma_names) {
        const LemmaSig* sig = env.lemma(name);
        if (!sig) {
            AuditOutcome o;
            o.name = name;
            o.tag = AuditOutcome::Tag::Error;
            o.error = "lemma not registered";
            out.push_back(std::move(o));
            continue;
        }
        out.push_back(audit_lemma(env, *sig, model, bounds));
    }
    return out;
}

} // namespace miniats
