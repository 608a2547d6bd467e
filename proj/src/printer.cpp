#include "miniats/printer.hpp"

#include <sstream>

namespace miniats {

using namespace ast;

namespace {

// Operator precedence for parenthesization: comparisons < additive < multiplicative.
int sprec(const std::string& op) {
    if (op == "+" || op == "-")
        return 2;
    if (op == "*")
        return 3;
    return 1; // comparisons
}

void print_sexp_prec(std::ostream& os, const SExp& e, int prec);

void print_sexp_atom(std::ostream& os, const SExp& e) { print_sexp_prec(os, e, 4); }

void print_sexp_prec(std::ostream& os, const SExp& e, int prec) {
    switch (e.tag) {
    case SExp::Tag::Var: os << e.name; return;
    case SExp::Tag::Int: os << e.value; return;
    case SExp::Tag::App: {
        os << e.name << " (";
        for (size_t i = 0; i < e.args.size(); ++i) {
            if (i)
                os << ", ";
            print_sexp_prec(os, *e.args[i], 0);
        }
        os << ")";
        return;
    }
    case SExp::Tag::Neg:
        os << "-";
        print_sexp_atom(os, *e.args[0]);
        return;
    case SExp::Tag::Binop: {
        int p = sprec(e.name);
        if (p < prec)
            os << "(";
        print_sexp_prec(os, *e.args[0], p);
        os << " " << e.name << " ";
        print_sexp_prec(os, *e.args[1], p + 1);
        if (p < prec)
            os << ")";
        return;
    }
    }
}

void print_qgroup(std::ostream& os, const QGroup& g) {
    os << (g.universal ? "{" : "[");
    for (size_t i = 0; i < g.vars.size(); ++i) {
        if (i)
            os << ",";
        os << g.vars[i];
    }
    os << ":" << print_sort(*g.sort);
    if (!g.guards.empty()) {
        os << " | ";
        for (size_t i = 0; i < g.guards.size(); ++i) {
            if (i)
                os << ", ";
            print_sexp_prec(os, *g.guards[i], 0);
        }
    }
    os << (g.universal ? "}" : "]");
}

void print_type_rec(std::ostream& os, const TypeExpr& t, bool atom_pos);

void print_type_list(std::ostream& os, const std::vector<TypePtr>& ts) {
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i)
            os << ", ";
        print_type_rec(os, *ts[i], false);
    }
}

void print_type_rec(std::ostream& os, const TypeExpr& t, bool atom_pos) {
    switch (t.tag) {
    case TypeExpr::Tag::App:
        os << t.name;
        if (!t.sargs.empty()) {
            os << " (";
            for (size_t i = 0; i < t.sargs.size(); ++i) {
                if (i)
                    os << ", ";
                print_sexp_prec(os, *t.sargs[i], 0);
            }
            os << ")";
        }
        return;
    case TypeExpr::Tag::Quant:
        if (atom_pos)
            os << "(";
        print_qgroup(os, t.group);
        os << " ";
        print_type_rec(os, *t.body, false);
        if (atom_pos)
            os << ")";
        return;
    case TypeExpr::Tag::Fun:
        if (atom_pos)
            os << "(";
        if (t.doms_split || t.vdoms.size() != 1 || t.vdoms[0]->tag == TypeExpr::Tag::Fun ||
            t.vdoms[0]->tag == TypeExpr::Tag::Quant) {
            os << "(";
            print_type_list(os, t.pdoms);
            if (t.doms_split)
                os << " | ";
            print_type_list(os, t.vdoms);
            os << ")";
        } else {
            print_type_rec(os, *t.vdoms[0], true);
        }
        os << " -> ";
        print_type_rec(os, *t.cod, false);
        if (atom_pos)
            os << ")";
        return;
    case TypeExpr::Tag::Tuple:
        os << "(";
        print_type_list(os, t.pcomps);
        if (t.comps_split)
            os << " | ";
        print_type_list(os, t.vcomps);
        os << ")";
        return;
    }
}

int dprec(const std::string& op) { return sprec(op); }

void print_dexp_rec(std::ostream& os, const DExp& e, int prec, int indent);

void print_indent(std::ostream& os, int n) {
    for (int i = 0; i < n; ++i)
        os << "  ";
}

void print_dexp_list(std::ostream& os, const std::vector<DExpPtr>& es, int indent) {
    for (size_t i = 0; i < es.size(); ++i) {
        if (i)
            os << ", ";
        print_dexp_rec(os, *es[i], 0, indent);
    }
}

void print_params(std::ostream& os, const std::vector<Param>& pparams,
                  const std::vector<Param>& vparams, bool split) {
    os << "(";
    for (size_t i = 0; i < pparams.size(); ++i) {
        if (i)
            os << ", ";
        os << pparams[i].name << ": " << print_type(*pparams[i].type);
    }
    if (split)
        os << " | ";
    for (size_t i = 0; i < vparams.size(); ++i) {
        if (i)
            os << ", ";
        os << vparams[i].name << ": " << print_type(*vparams[i].type);
    }
    os << ")";
}

void print_fun_def(std::ostream& os, const FunDef& f, int indent) {
    os << f.name;
    for (const auto& g : f.quants) {
        os << " ";
        print_qgroup(os, g);
    }
    os << " ";
    print_params(os, f.pparams, f.vparams, f.params_split);
    os << ": " << print_type(*f.ret) << " =\n";
    print_indent(os, indent + 1);
    print_dexp_rec(os, *f.body, 0, indent + 1);
}

void print_fun_group(std::ostream& os, const FunGroup& g, int indent) {
    os << (g.is_proof ? "prfun" : "fun");
    for (const auto& q : g.shared_quants) {
        os << " ";
        print_qgroup(os, q);
    }
    os << " ";
    print_fun_def(os, g.defs[0], indent);
    for (size_t i = 1; i < g.defs.size(); ++i) {
        os << "\n";
        print_indent(os, indent);
        os << "and ";
        print_fun_def(os, g.defs[i], indent);
    }
}

void print_let_decl(std::ostream& os, const LetDecl& d, int indent) {
    switch (d.tag) {
    case LetDecl::Tag::Val:
        os << "val ";
        for (size_t i = 0; i < d.binds.size(); ++i) {
            if (i)
                os << " and ";
            os << print_pattern(*d.binds[i].pat) << " = ";
            print_dexp_rec(os, *d.binds[i].rhs, 0, indent);
        }
        return;
    case LetDecl::Tag::Prval:
        os << "prval " << print_pattern(*d.binds[0].pat) << " = ";
        print_dexp_rec(os, *d.binds[0].rhs, 0, indent);
        return;
    case LetDecl::Tag::Fun:
        print_fun_group(os, *d.fun, indent);
        return;
    }
}

void print_dexp_rec(std::ostream& os, const DExp& e, int prec, int indent) {
    switch (e.tag) {
    case DExp::Tag::Var: os << e.name; return;
    case DExp::Tag::Int: os << e.value; return;
    case DExp::Tag::Bool: os << (e.bvalue ? "true" : "false"); return;
    case DExp::Tag::App: {
        print_dexp_rec(os, *e.callee, 4, indent);
        if (!e.sargs.empty()) {
            os << " {";
            for (size_t i = 0; i < e.sargs.size(); ++i) {
                if (i)
                    os << ", ";
                print_sexp_prec(os, *e.sargs[i], 0);
            }
            os << "}";
        }
        os << " (";
        print_dexp_list(os, e.pargs, indent);
        if (e.args_split)
            os << " | ";
        print_dexp_list(os, e.vargs, indent);
        os << ")";
        return;
    }
    case DExp::Tag::Binop: {
        int p = dprec(e.name);
        if (p < prec)
            os << "(";
        print_dexp_rec(os, *e.vargs[0], p, indent);
        os << " " << e.name << " ";
        print_dexp_rec(os, *e.vargs[1], p + 1, indent);
        if (p < prec)
            os << ")";
        return;
    }
    case DExp::Tag::Neg:
        os << "-";
        print_dexp_rec(os, *e.vargs[0], 4, indent);
        return;
    case DExp::Tag::Tuple:
        os << "(";
        print_dexp_list(os, e.pcomps, indent);
        if (e.comps_split)
            os << " | ";
        print_dexp_list(os, e.vcomps, indent);
        os << ")";
        return;
    case DExp::Tag::If:
        if (prec > 0)
            os << "(";
        os << "if ";
        print_dexp_rec(os, *e.cond, 0, indent);
        os << " then\n";
        print_indent(os, indent + 1);
        print_dexp_rec(os, *e.then_e, 0, indent + 1);
        os << "\n";
        print_indent(os, indent);
        os << "else\n";
        print_indent(os, indent + 1);
        print_dexp_rec(os, *e.else_e, 0, indent + 1);
        if (prec > 0)
            os << ")";
        return;
    case DExp::Tag::Case:
        if (prec > 0)
            os << "(";
        os << (e.case_plus ? "case+ " : "case ");
        print_dexp_rec(os, *e.scrut, 0, indent);
        os << " of";
        for (const auto& arm : e.arms) {
            os << "\n";
            print_indent(os, indent + 1);
            os << "| " << print_pattern(*arm.pat) << " => ";
            print_dexp_rec(os, *arm.body, 1, indent + 2);
        }
        if (prec > 0)
            os << ")";
        return;
    case DExp::Tag::Let:
        os << "let\n";
        for (const auto& d : e.decls) {
            print_indent(os, indent + 1);
            print_let_decl(os, *d, indent + 1);
            os << "\n";
        }
        print_indent(os, indent);
        os << "in\n";
        print_indent(os, indent + 1);
        print_dexp_rec(os, *e.body, 0, indent + 1);
        os << "\n";
        print_indent(os, indent);
        os << "end";
        return;
    case DExp::Tag::Lam:
        if (prec > 0)
            os << "(";
        os << "lam (";
        for (size_t i = 0; i < e.lam_params.size(); ++i) {
            if (i)
                os << ", ";
            os << e.lam_params[i].name << ": " << print_type(*e.lam_params[i].type);
        }
        os << ") => ";
        print_dexp_rec(os, *e.body, 1, indent);
        if (prec > 0)
            os << ")";
        return;
    }
}

void print_hparams(std::ostream& os, const std::vector<HParam>& params) {
    os << "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i)
            os << ", ";
        if (!params[i].name.empty())
            os << params[i].name << ":";
        os << print_sort(*params[i].sort);
    }
    os << ")";
}

} // namespace

std::string print_sort(const SortExpr& s) {
    if (s.tag == SortExpr::Tag::Name)
        return s.name;
    std::string dom = print_sort(*s.dom);
    if (s.dom->tag == SortExpr::Tag::Arrow)
        dom = "(" + dom + ")";
    return dom + " -> " + print_sort(*s.cod);
}

std::string print_sexp(const SExp& e) {
    std::ostringstream os;
    print_sexp_prec(os, e, 0);
    return os.str();
}

std::string print_type(const TypeExpr& t) {
    std::ostringstream os;
    print_type_rec(os, t, false);
    return os.str();
}

std::string print_pattern(const Pattern& p) {
    switch (p.tag) {
    case Pattern::Tag::Var: return p.name;
    case Pattern::Tag::Any: return "_";
    case Pattern::Tag::Con: {
        std::string out = p.name + " (";
        for (size_t i = 0; i < p.args.size(); ++i) {
            if (i)
                out += ", ";
            out += print_pattern(*p.args[i]);
        }
        return out + ")";
    }
    case Pattern::Tag::Tuple: {
        std::string out = "(";
        for (size_t i = 0; i < p.pcomps.size(); ++i) {
            if (i)
                out += ", ";
            out += print_pattern(*p.pcomps[i]);
        }
        if (p.comps_split)
            out += " | ";
        for (size_t i = 0; i < p.vcomps.size(); ++i) {
            if (i)
                out += ", ";
            out += print_pattern(*p.vcomps[i]);
        }
        return out + ")";
    }
    }
    return "";
}

std::string print_dexp(const DExp& e) {
    std::ostringstream os;
    print_dexp_rec(os, e, 0, 0);
    return os.str();
}

std::string print_decl(const Decl& d) {
    std::ostringstream os;
    switch (d.tag) {
    case Decl::Tag::Datasort:
        os << "datasort " << d.name << " =";
        for (size_t i = 0; i < d.ctors.size(); ++i) {
            os << (i ? " | " : " ") << d.ctors[i].name;
            if (d.ctors[i].has_of) {
                os << " of (";
                for (size_t k = 0; k < d.ctors[i].arg_sorts.size(); ++k) {
                    if (k)
                        os << ", ";
                    os << print_sort(*d.ctors[i].arg_sorts[k]);
                }
                os << ")";
            }
        }
        break;
    case Decl::Tag::Datatype:
    case Decl::Tag::Dataprop: {
        os << (d.tag == Decl::Tag::Datatype ? "datatype " : "dataprop ") << d.name << " ";
        print_hparams(os, d.params);
        os << " =";
        for (const auto& c : d.ctors) {
            os << "\n  | ";
            for (const auto& q : c.quants) {
                print_qgroup(os, q);
                os << " ";
            }
            os << c.name;
            if (c.has_result_args) {
                os << " (";
                for (size_t k = 0; k < c.result_args.size(); ++k) {
                    if (k)
                        os << ", ";
                    os << print_sexp(*c.result_args[k]);
                }
                os << ")";
            }
            if (c.has_of) {
                os << " of (";
                for (size_t k = 0; k < c.arg_types.size(); ++k) {
                    if (k)
                        os << ", ";
                    os << print_type(*c.arg_types[k]);
                }
                os << ")";
            }
        }
        break;
    }
    case Decl::Tag::Absprop:
    case Decl::Tag::Abstype:
        os << (d.tag == Decl::Tag::Absprop ? "absprop " : "abstype ") << d.name;
        if (!d.params.empty()) {
            os << " ";
            print_hparams(os, d.params);
        }
        break;
    case Decl::Tag::Typedef:
        os << "typedef " << d.name;
        if (!d.params.empty()) {
            os << " (";
            for (size_t i = 0; i < d.params.size(); ++i) {
                if (i)
                    os << ", ";
                os << d.params[i].name << ":" << print_sort(*d.params[i].sort);
            }
            os << ")";
        }
        os << " = " << print_type(*d.type);
        break;
    case Decl::Tag::Praxi:
        os << "praxi " << d.name << " : " << print_type(*d.type);
        break;
    case Decl::Tag::Fun:
        print_fun_group(os, *d.fun_group, 0);
        break;
    case Decl::Tag::Val:
        os << "val " << print_pattern(*d.val_pat) << " = " << print_dexp(*d.val_rhs);
        break;
    case Decl::Tag::Alias:
        os << "alias " << d.name << " = " << d.alias_target;
        break;
    }
    return os.str();
}

std::string print_program(const Program& program) {
    std::string out;
    for (const auto& d : program) {
        out += print_decl(d);
        out += "\n\n";
    }
    return out;
}

} // namespace miniats
