#include "miniats/constraint.hpp"

#include <cassert>
#include <sstream>

namespace miniats {

LinExpr lin_of_sterm(const STermHdl& t) {
    STermHdl n = normalize_static(t);
    assert(n->tag == STerm::Tag::Lin && "expected an int-sorted normal form");
    return LinExpr{n->ival, n->lin};
}

std::string lin_str(const LinExpr& e) {
    std::ostringstream os;
    os << e.k;
    for (const auto& [v, c] : e.terms) {
        os << (c >= 0 ? " + " : " - ") << abs(c) << "*" << v;
    }
    return os.str();
}

Atom atom_of_sterm(const STermHdl& t0) {
    STermHdl t = normalize_static(t0);
    switch (t->tag) {
    case STerm::Tag::Cmp: {
        Atom a;
        a.tag = Atom::Tag::Lin;
        a.op = t->cmp;
        a.lin = LinExpr{t->args[0]->ival, t->args[0]->lin};
        return a;
    }
    case STerm::Tag::BoolLit: return t->bval ? atom_true() : atom_false();
    case STerm::Tag::Var: {
        Atom a;
        a.tag = Atom::Tag::BoolVar;
        a.var = t->name;
        a.positive = true;
        return a;
    }
    case STerm::Tag::Not: {
        assert(t->args[0]->tag == STerm::Tag::Var);
        Atom a;
        a.tag = Atom::Tag::BoolVar;
        a.var = t->args[0]->name;
        a.positive = false;
        return a;
    }
    default: break;
    }
    assert(false && "not a boolean atom");
    return atom_true();
}

Atom atom_lin(CmpOp op, LinExpr e) {
    Atom a;
    a.tag = Atom::Tag::Lin;
    a.op = op;
    a.lin = std::move(e);
    return a;
}

Atom atom_true() {
    Atom a;
    a.tag = Atom::Tag::BoolLit;
    a.lit = true;
    return a;
}

Atom atom_false() {
    Atom a;
    a.tag = Atom::Tag::BoolLit;
    a.lit = false;
    return a;
}

Atom atom_data_eq(STermHdl lhs, STermHdl rhs) {
    Atom a;
    a.tag = Atom::Tag::DataEq;
    a.lhs = std::move(lhs);
    a.rhs = std::move(rhs);
    return a;
}

std::string atom_str(const Atom& a) {
    switch (a.tag) {
    case Atom::Tag::Lin: {
        const char* op = a.op == CmpOp::Le ? " <= 0" : a.op == CmpOp::Eq ? " = 0" : " <> 0";
        return lin_str(a.lin) + op;
    }
    case Atom::Tag::BoolVar: return (a.positive ? "" : "~") + a.var;
    case Atom::Tag::BoolLit: return a.lit ? "true" : "false";
    case Atom::Tag::DataEq: return sterm_str(a.lhs) + " == " + sterm_str(a.rhs);
    }
    return "?";
}

std::string constraint_str(const Constraint& c) {
    std::ostringstream os;
    for (size_t i = 0; i < c.vars.size(); ++i) {
        if (i)
            os << " ";
        os << c.vars[i].name << ":";
        switch (c.vars[i].kind) {
        case CVar::Kind::Int: os << "int"; break;
        case CVar::Kind::Bool: os << "bool"; break;
        case CVar::Kind::Data: os << c.vars[i].data_sort; break;
        }
    }
    os << " | ";
    for (size_t i = 0; i < c.hyps.size(); ++i) {
        if (i)
            os << ", ";
        os << atom_str(c.hyps[i]);
    }
    os << " |- " << atom_str(c.goal);
    return os.str();
}

std::string Assignment::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, n] : ints) {
        if (!first)
            os << ", ";
        os << v << "=" << n;
        first = false;
    }
    for (const auto& [v, b] : bools) {
        if (!first)
            os << ", ";
        os << v << "=" << (b ? "true" : "false");
        first = false;
    }
    return os.str();
}

bool eval_atom(const Atom& a, const Assignment& asg) {
    switch (a.tag) {
    case Atom::Tag::Lin: {
        cpp_int v = a.lin.k;
        for (const auto& [var, c] : a.lin.terms) {
            auto it = asg.ints.find(var);
            v += c * (it == asg.ints.end() ? cpp_int(0) : it->second);
        }
        switch (a.op) {
        case CmpOp::Le: return v <= 0;
        case CmpOp::Eq: return v == 0;
        case CmpOp::Ne: return v != 0;
        }
        return false;
    }
    case Atom::Tag::BoolVar: {
        auto it = asg.bools.find(a.var);
        bool v = it == asg.bools.end() ? false : it->second;
        return a.positive ? v : !v;
    }
    case Atom::Tag::BoolLit: return a.lit;
    case Atom::Tag::DataEq:
        // Data equations with unassigned variables compare structurally.
        return sterm_syntactic_equal(normalize_static(a.lhs), normalize_static(a.rhs));
    }
    return false;
}

} // namespace miniats
