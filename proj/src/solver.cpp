#include "miniats/constraint.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <optional>

namespace miniats {

namespace {

cpp_int floordiv(const cpp_int& a, const cpp_int& b) {
    assert(b > 0);
    cpp_int q = a / b, r = a % b;
    if (r != 0 && a < 0)
        --q;
    return q;
}
cpp_int ceildiv(const cpp_int& a, const cpp_int& b) { return -floordiv(-a, b); }

LinExpr lin_sub(const LinExpr& a, const LinExpr& b) {
    LinExpr out;
    out.k = a.k - b.k;
    out.terms = a.terms;
    for (const auto& [v, c] : b.terms) {
        auto it = std::lower_bound(out.terms.begin(), out.terms.end(), v,
                                   [](const auto& p, const std::string& key) { return p.first < key; });
        if (it != out.terms.end() && it->first == v) {
            it->second -= c;
            if (it->second == 0)
                out.terms.erase(it);
        } else {
            out.terms.insert(it, {v, -c});
        }
    }
    return out;
}

LinExpr lin_scaled_add(const LinExpr& a, const cpp_int& ka, const LinExpr& b, const cpp_int& kb) {
    LinExpr out;
    out.k = a.k * ka + b.k * kb;
    std::map<std::string, cpp_int> acc;
    for (const auto& [v, c] : a.terms)
        acc[v] += c * ka;
    for (const auto& [v, c] : b.terms)
        acc[v] += c * kb;
    for (auto& [v, c] : acc)
        if (c != 0)
            out.terms.push_back({v, c});
    return out;
}

cpp_int lin_coeff(const LinExpr& e, const std::string& var) {
    for (const auto& [v, c] : e.terms)
        if (v == var)
            return c;
    return 0;
}

LinExpr lin_drop_var(const LinExpr& e, const std::string& var) {
    LinExpr out;
    out.k = e.k;
    for (const auto& [v, c] : e.terms)
        if (v != var)
            out.terms.push_back({v, c});
    return out;
}

// Substitute var := repl into e.
LinExpr lin_subst(const LinExpr& e, const std::string& var, const LinExpr& repl) {
    cpp_int c = lin_coeff(e, var);
    if (c == 0)
        return e;
    return lin_scaled_add(lin_drop_var(e, var), 1, repl, c);
}

// gcd-based integer tightening of `e <= 0`.
LinExpr tighten_le(const LinExpr& e) {
    if (e.terms.empty())
        return e;
    cpp_int g = 0;
    for (const auto& [v, c] : e.terms)
        g = gcd(g, abs(c));
    if (g <= 1)
        return e;
    LinExpr out;
    // sum(ci*xi) <= -k  ==>  sum(ci/g*xi) <= floor(-k/g)
    out.k = -floordiv(-e.k, g);
    for (const auto& [v, c] : e.terms)
        out.terms.push_back({v, c / g});
    return out;
}

STermHdl sterm_of_lin(const LinExpr& e) {
    return st_lin(e.k, e.terms);
}

// ---- simplification ---------------------------------------------------------

struct SimpState {
    std::vector<CVar> vars;
    std::vector<Atom> lin_hyps;      // Lin atoms only
    std::vector<Atom> bool_hyps;     // BoolVar atoms
    std::vector<Atom> stuck_data;    // DataEq we could not resolve
    Atom goal;
    bool inconsistent = false;

    // Back-substitutions in application order.
    std::vector<std::pair<std::string, LinExpr>> int_subs;
    std::vector<std::pair<std::string, STermHdl>> data_subs;
    std::map<std::string, bool> forced_bools;

    bool has_var(const std::string& name) const {
        for (const auto& v : vars)
            if (v.name == name)
                return true;
        return false;
    }
    void drop_var(const std::string& name) {
        vars.erase(std::remove_if(vars.begin(), vars.end(),
                                  [&](const CVar& v) { return v.name == name; }),
                   vars.end());
    }
};

void subst_int_into_atom(Atom& a, const std::string& var, const LinExpr& repl) {
    if (a.tag == Atom::Tag::Lin) {
        a.lin = lin_subst(a.lin, var, repl);
    } else if (a.tag == Atom::Tag::DataEq) {
        Subst sub;
        sub[var] = sterm_of_lin(repl);
        a.lhs = normalize_static(subst_static(a.lhs, sub));
        a.rhs = normalize_static(subst_static(a.rhs, sub));
    }
}

void subst_data_into_atom(Atom& a, const std::string& var, const STermHdl& repl) {
    if (a.tag != Atom::Tag::DataEq)
        return;
    Subst sub;
    sub[var] = repl;
    a.lhs = normalize_static(subst_static(a.lhs, sub));
    a.rhs = normalize_static(subst_static(a.rhs, sub));
}

// Eliminates datasort equations by head decomposition and substitution.
void process_data_eqs(SimpState& s, std::vector<Atom> pending) {
    std::vector<Atom> again;
    size_t fuel = 10000;
    while (!pending.empty() && fuel-- > 0) {
        Atom a = pending.back();
        pending.pop_back();
        if (s.inconsistent)
            return;
        STermHdl l = normalize_static(a.lhs), r = normalize_static(a.rhs);
        if (sterm_syntactic_equal(l, r))
            continue;
        auto substitute = [&](const std::string& var, const STermHdl& term) {
            s.data_subs.push_back({var, term});
            s.drop_var(var);
            for (auto& h : pending)
                subst_data_into_atom(h, var, term);
            for (auto& h : s.stuck_data)
                subst_data_into_atom(h, var, term);
            subst_data_into_atom(s.goal, var, term);
        };
        if (l->tag == STerm::Tag::Var && s.has_var(l->name)) {
            if (static_var_occurs(l->name, r)) {
                s.inconsistent = true; // xs = cons(.., xs) has no solution in a free algebra
                return;
            }
            substitute(l->name, r);
            continue;
        }
        if (r->tag == STerm::Tag::Var && s.has_var(r->name)) {
            if (static_var_occurs(r->name, l)) {
                s.inconsistent = true;
                return;
            }
            substitute(r->name, l);
            continue;
        }
        if (l->tag == STerm::Tag::Con && r->tag == STerm::Tag::Con) {
            if (l->name != r->name || l->args.size() != r->args.size()) {
                s.inconsistent = true; // distinct constructors are disjoint
                return;
            }
            for (size_t i = 0; i < l->args.size(); ++i) {
                const STermHdl& x = l->args[i];
                const STermHdl& y = r->args[i];
                if (x->sort && x->sort->tag == Sort::Tag::Int) {
                    LinExpr d = lin_sub(lin_of_sterm(x), lin_of_sterm(y));
                    if (d.is_const()) {
                        if (d.k != 0) {
                            s.inconsistent = true;
                            return;
                        }
                    } else {
                        s.lin_hyps.push_back(atom_lin(CmpOp::Eq, d));
                    }
                } else {
                    pending.push_back(atom_data_eq(x, y));
                }
            }
            continue;
        }
        // Rigid variables not in the telescope, lambdas, applications: give up
        // on this equation but keep it so the caller can report Unknown.
        again.push_back(a);
    }
    s.stuck_data.insert(s.stuck_data.end(), again.begin(), again.end());
}

// Substitutes single-variable integer equalities away.
void process_int_eqs(SimpState& s) {
    bool changed = true;
    while (changed && !s.inconsistent) {
        changed = false;
        for (size_t i = 0; i < s.lin_hyps.size(); ++i) {
            Atom& a = s.lin_hyps[i];
            if (a.tag != Atom::Tag::Lin || a.op != CmpOp::Eq)
                continue;
            if (a.lin.is_const()) {
                if (a.lin.k != 0)
                    s.inconsistent = true;
                s.lin_hyps.erase(s.lin_hyps.begin() + i);
                changed = true;
                break;
            }
            // Find a telescope variable with coefficient +-1.
            std::string var;
            cpp_int coeff;
            for (const auto& [v, c] : a.lin.terms) {
                if ((c == 1 || c == -1) && s.has_var(v)) {
                    var = v;
                    coeff = c;
                    break;
                }
            }
            if (var.empty())
                continue;
            // coeff*var + rest = 0  ==>  var = -rest/coeff
            LinExpr rest = lin_drop_var(a.lin, var);
            LinExpr repl = lin_scaled_add(LinExpr{}, 0, rest, coeff == 1 ? -1 : 1);
            s.lin_hyps.erase(s.lin_hyps.begin() + i);
            s.int_subs.push_back({var, repl});
            s.drop_var(var);
            for (auto& h : s.lin_hyps)
                subst_int_into_atom(h, var, repl);
            for (auto& h : s.stuck_data)
                subst_int_into_atom(h, var, repl);
            subst_int_into_atom(s.goal, var, repl);
            changed = true;
            break;
        }
    }
}

void process_bools(SimpState& s) {
    for (const Atom& a : s.bool_hyps) {
        auto it = s.forced_bools.find(a.var);
        bool val = a.positive;
        if (it != s.forced_bools.end() && it->second != val) {
            s.inconsistent = true;
            return;
        }
        s.forced_bools[a.var] = val;
    }
    s.bool_hyps.clear();
    for (const auto& [v, val] : s.forced_bools) {
        Atom h;
        h.tag = Atom::Tag::BoolVar;
        h.var = v;
        h.positive = val;
        s.bool_hyps.push_back(h);
    }
    if (s.goal.tag == Atom::Tag::BoolVar) {
        auto it = s.forced_bools.find(s.goal.var);
        if (it != s.forced_bools.end())
            s.goal = it->second == s.goal.positive ? atom_true() : atom_false();
    }
}

SimpState simplify_state(const Constraint& c) {
    SimpState s;
    s.vars = c.vars;
    s.goal = c.goal;
    std::vector<Atom> data_eqs;
    for (const Atom& h : c.hyps) {
        switch (h.tag) {
        case Atom::Tag::Lin: s.lin_hyps.push_back(h); break;
        case Atom::Tag::BoolVar: s.bool_hyps.push_back(h); break;
        case Atom::Tag::BoolLit:
            if (!h.lit)
                s.inconsistent = true;
            break;
        case Atom::Tag::DataEq: data_eqs.push_back(h); break;
        }
    }
    if (!s.inconsistent)
        process_data_eqs(s, std::move(data_eqs));
    if (!s.inconsistent)
        process_int_eqs(s);
    if (!s.inconsistent)
        process_bools(s);
    // Fold constant linear hypotheses.
    if (!s.inconsistent) {
        std::vector<Atom> keep;
        for (const Atom& a : s.lin_hyps) {
            if (a.tag == Atom::Tag::Lin && a.lin.is_const()) {
                Assignment empty;
                if (!eval_atom(a, empty)) {
                    s.inconsistent = true;
                    break;
                }
            } else {
                keep.push_back(a);
            }
        }
        s.lin_hyps = std::move(keep);
    }
    return s;
}

// ---- the Fourier-Motzkin core ---------------------------------------------------

struct FMResult {
    enum class Tag { Unsat, Sat, SatUnverified } tag;
    Assignment witness;
    bool exact = true;
};

// Decides satisfiability of a conjunction of `lin <= 0` atoms over the given
// integer variables; tries to build a witness when satisfiable.
FMResult fm_solve(const std::vector<std::string>& vars, std::vector<LinExpr> les) {
    for (auto& e : les)
        e = tighten_le(e);

    size_t n = vars.size();
    std::vector<std::vector<LinExpr>> stages(n + 1);
    stages[n] = std::move(les);
    bool exact = true;

    for (size_t i = n; i-- > 0;) {
        const std::string& v = vars[i];
        std::vector<LinExpr> uppers, lowers, rest;
        for (const auto& e : stages[i + 1]) {
            cpp_int c = lin_coeff(e, v);
            if (c > 0)
                uppers.push_back(e);
            else if (c < 0)
                lowers.push_back(e);
            else
                rest.push_back(e);
        }
        std::vector<LinExpr> next = rest;
        for (const auto& up : uppers) {
            cpp_int a = lin_coeff(up, v);
            for (const auto& lo : lowers) {
                cpp_int b = -lin_coeff(lo, v);
                if (a != 1 && b != 1)
                    exact = false;
                next.push_back(tighten_le(lin_scaled_add(up, b, lo, a)));
            }
        }
        stages[i] = std::move(next);
    }

    for (const auto& e : stages[0]) {
        assert(e.is_const());
        if (e.k > 0)
            return {FMResult::Tag::Unsat, {}, exact};
    }

    // Satisfiable over the rationals; reconstruct an integer witness by
    // assigning variables in telescope order against their stage bounds.
    Assignment asg;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
        const std::string& v = vars[i];
        std::optional<cpp_int> lo, hi;
        for (const auto& e : stages[i + 1]) {
            cpp_int c = lin_coeff(e, v);
            if (c == 0)
                continue;
            // evaluate the rest under the partial assignment
            cpp_int val = e.k;
            for (const auto& [w, cw] : e.terms) {
                if (w == v)
                    continue;
                auto it = asg.ints.find(w);
                assert(it != asg.ints.end());
                val += cw * it->second;
            }
            if (c > 0) {
                cpp_int bound = floordiv(-val, c);
                hi = hi ? std::min(*hi, bound) : bound;
            } else {
                cpp_int bound = ceildiv(val, -c);
                lo = lo ? std::max(*lo, bound) : bound;
            }
        }
        if (lo && hi && *lo > *hi) {
            ok = false; // dark-shadow gap; fall back to search
            break;
        }
        cpp_int pick = 0;
        if (lo && pick < *lo)
            pick = *lo;
        if (hi && pick > *hi)
            pick = *hi;
        asg.ints[v] = pick;
    }
    if (ok) {
        // Double-check the witness against the full system.
        for (const auto& e : stages[n]) {
            Atom a = atom_lin(CmpOp::Le, e);
            if (!eval_atom(a, asg)) {
                ok = false;
                break;
            }
        }
    }
    if (ok)
        return {FMResult::Tag::Sat, asg, exact};
    return {FMResult::Tag::SatUnverified, {}, exact};
}

// Bounded box search for an integer model; used when FM reconstruction fails.
std::optional<Assignment> box_search(const std::vector<std::string>& vars,
                                     const std::vector<LinExpr>& les) {
    long long radius = vars.size() <= 3 ? 64 : (vars.size() == 4 ? 16 : 8);
    std::vector<long long> point(vars.size(), -radius);
    while (true) {
        Assignment asg;
        for (size_t i = 0; i < vars.size(); ++i)
            asg.ints[vars[i]] = point[i];
        bool sat = true;
        for (const auto& e : les) {
            if (!eval_atom(atom_lin(CmpOp::Le, e), asg)) {
                sat = false;
                break;
            }
        }
        if (sat)
            return asg;
        size_t i = 0;
        for (; i < point.size(); ++i) {
            if (point[i] < radius) {
                ++point[i];
                break;
            }
            point[i] = -radius;
        }
        if (i == point.size())
            return std::nullopt;
    }
}

struct Branch {
    std::vector<LinExpr> les;
    std::map<std::string, bool> bools;
};

// Expands Eq/Ne/bool atoms into pure <=-branches (disjunctive normal form).
bool expand_atoms(const std::vector<Atom>& atoms, Branch base, std::vector<Branch>& out, int depth) {
    for (size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        switch (a.tag) {
        case Atom::Tag::Lin:
            if (a.op == CmpOp::Le) {
                base.les.push_back(a.lin);
            } else if (a.op == CmpOp::Eq) {
                base.les.push_back(a.lin);
                base.les.push_back(lin_scaled_add(LinExpr{}, 0, a.lin, -1));
            } else { // Ne: split into < or >
                if (depth > 12)
                    return false;
                std::vector<Atom> rest(atoms.begin() + i + 1, atoms.end());
                Branch left = base;
                LinExpr lt = a.lin;
                lt.k += 1;
                left.les.push_back(lt); // lin + 1 <= 0
                Branch right = base;
                LinExpr gt = lin_scaled_add(LinExpr{}, 0, a.lin, -1);
                gt.k += 1;
                right.les.push_back(gt); // -lin + 1 <= 0
                if (!expand_atoms(rest, std::move(left), out, depth + 1))
                    return false;
                if (!expand_atoms(rest, std::move(right), out, depth + 1))
                    return false;
                return true;
            }
            break;
        case Atom::Tag::BoolVar: {
            auto it = base.bools.find(a.var);
            if (it != base.bools.end()) {
                if (it->second != a.positive)
                    return true; // branch contradictory: contributes nothing
            } else {
                base.bools[a.var] = a.positive;
            }
            break;
        }
        case Atom::Tag::BoolLit:
            if (!a.lit)
                return true; // contradictory branch
            break;
        case Atom::Tag::DataEq: return true; // handled earlier; treat as contradiction
        }
    }
    out.push_back(std::move(base));
    return true;
}

Atom negate_atom(const Atom& a) {
    switch (a.tag) {
    case Atom::Tag::Lin: {
        if (a.op == CmpOp::Le) {
            LinExpr e = lin_scaled_add(LinExpr{}, 0, a.lin, -1);
            e.k += 1;
            return atom_lin(CmpOp::Le, e);
        }
        if (a.op == CmpOp::Eq)
            return atom_lin(CmpOp::Ne, a.lin);
        return atom_lin(CmpOp::Eq, a.lin);
    }
    case Atom::Tag::BoolVar: {
        Atom out = a;
        out.positive = !a.positive;
        return out;
    }
    case Atom::Tag::BoolLit: return a.lit ? atom_false() : atom_true();
    case Atom::Tag::DataEq: break;
    }
    assert(false && "cannot negate a datasort equation goal");
    return atom_true();
}

} // namespace

Constraint simplify(const Constraint& c) {
    SimpState s = simplify_state(c);
    Constraint out;
    out.loc = c.loc;
    out.reason = c.reason;
    out.vars = s.vars;
    out.goal = s.goal;
    if (s.inconsistent) {
        out.hyps.push_back(atom_false());
        return out;
    }
    out.hyps = s.lin_hyps;
    for (const auto& a : s.bool_hyps)
        out.hyps.push_back(a);
    for (const auto& a : s.stuck_data)
        out.hyps.push_back(a);
    return out;
}

SolveResult solve(const Constraint& c) {
    SimpState s = simplify_state(c);
    SolveResult res;

    if (s.inconsistent) {
        res.tag = SolveResult::Tag::Valid; // vacuous truth
        return res;
    }
    if (!s.stuck_data.empty()) {
        res.tag = SolveResult::Tag::Unknown;
        res.reason = "unresolved datasort equation: " + atom_str(s.stuck_data.front());
        return res;
    }
    if (s.goal.tag == Atom::Tag::BoolLit && s.goal.lit) {
        res.tag = SolveResult::Tag::Valid;
        return res;
    }
    if (s.goal.tag == Atom::Tag::DataEq) {
        res.tag = SolveResult::Tag::Unknown;
        res.reason = "datasort goal reached the solver";
        return res;
    }

    // Valid iff hyps /\ not(goal) is unsatisfiable.
    std::vector<Atom> system = s.lin_hyps;
    for (const auto& a : s.bool_hyps)
        system.push_back(a);
    system.push_back(negate_atom(s.goal));

    std::vector<Branch> branches;
    if (!expand_atoms(system, Branch{}, branches, 0)) {
        res.tag = SolveResult::Tag::Unknown;
        res.reason = "too many disequality splits";
        return res;
    }

    std::vector<std::string> int_vars;
    for (const auto& v : s.vars)
        if (v.kind == CVar::Kind::Int)
            int_vars.push_back(v.name);

    bool any_unknown = false;
    std::string unknown_reason;
    for (const auto& br : branches) {
        FMResult fm = fm_solve(int_vars, br.les);
        if (fm.tag == FMResult::Tag::Unsat)
            continue;
        Assignment asg;
        if (fm.tag == FMResult::Tag::Sat) {
            asg = fm.witness;
        } else {
            auto found = box_search(int_vars, br.les);
            if (!found) {
                any_unknown = true;
                unknown_reason = "no integer witness found in the searched box";
                continue;
            }
            asg = *found;
        }
        asg.bools = br.bools;
        // Complete the assignment over the simplified telescope.
        for (const auto& v : s.vars) {
            if (v.kind == CVar::Kind::Int && !asg.ints.count(v.name))
                asg.ints[v.name] = 0;
            if (v.kind == CVar::Kind::Bool && !asg.bools.count(v.name))
                asg.bools[v.name] = false;
        }
        // Reconstruct eliminated integer variables (in reverse order of
        // elimination so later substitutions are available).
        for (auto it = s.int_subs.rbegin(); it != s.int_subs.rend(); ++it) {
            cpp_int val = it->second.k;
            for (const auto& [w, cw] : it->second.terms)
                val += cw * asg.ints[w];
            asg.ints[it->first] = val;
        }
        for (const auto& [v, b] : s.forced_bools)
            if (!asg.bools.count(v))
                asg.bools[v] = b;

        // Verify against the original constraint before reporting Invalid.
        bool hyps_hold = true;
        auto eval_with_data = [&](const Atom& a) {
            if (a.tag != Atom::Tag::DataEq)
                return eval_atom(a, asg);
            Atom copy = a;
            for (const auto& [dv, dt] : s.data_subs)
                subst_data_into_atom(copy, dv, dt);
            Subst ints;
            for (const auto& [var, val] : asg.ints)
                ints[var] = st_int(val);
            copy.lhs = normalize_static(subst_static(copy.lhs, ints));
            copy.rhs = normalize_static(subst_static(copy.rhs, ints));
            return eval_atom(copy, asg);
        };
        for (const Atom& h : c.hyps) {
            if (!eval_with_data(h)) {
                hyps_hold = false;
                break;
            }
        }
        if (!hyps_hold || eval_with_data(c.goal)) {
            any_unknown = true;
            unknown_reason = "candidate counterexample failed verification";
            continue;
        }
        res.tag = SolveResult::Tag::Invalid;
        // Report assignments for the original telescope's int/bool variables.
        for (const auto& v : c.vars) {
            if (v.kind == CVar::Kind::Int)
                res.counterexample.ints[v.name] = asg.ints.count(v.name) ? asg.ints[v.name] : 0;
            else if (v.kind == CVar::Kind::Bool)
                res.counterexample.bools[v.name] =
                    asg.bools.count(v.name) ? asg.bools[v.name] : false;
        }
        return res;
    }
    if (any_unknown) {
        res.tag = SolveResult::Tag::Unknown;
        res.reason = unknown_reason;
        return res;
    }
    res.tag = SolveResult::Tag::Valid;
    return res;
}

} // namespace miniats
