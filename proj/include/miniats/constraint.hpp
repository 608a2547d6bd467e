#ifndef MINIATS_CONSTRAINT_HPP
#define MINIATS_CONSTRAINT_HPP

#include <map>
#include <string>
#include <vector>

#include "miniats/statics.hpp"

namespace miniats {

// Linear expression over integer variables: k + sum of coeff*var.
struct LinExpr {
    cpp_int k;
    std::vector<std::pair<std::string, cpp_int>> terms; // sorted by var name, nonzero coeffs

    bool is_const() const { return terms.empty(); }
};

LinExpr lin_of_sterm(const STermHdl& t); // t must be a normalized int term
std::string lin_str(const LinExpr& e);

struct Atom {
    enum class Tag { Lin, BoolVar, BoolLit, DataEq };
    Tag tag = Tag::BoolLit;
    // Lin: `lin OP 0`
    CmpOp op = CmpOp::Le;
    LinExpr lin;
    // BoolVar (possibly negated)
    std::string var;
    bool positive = true;
    // BoolLit
    bool lit = true;
    // DataEq: structural equation between datasort terms
    STermHdl lhs, rhs;
};

Atom atom_of_sterm(const STermHdl& t); // normalized bool term -> atom
Atom atom_lin(CmpOp op, LinExpr e);
Atom atom_true();
Atom atom_false();
Atom atom_data_eq(STermHdl lhs, STermHdl rhs);
std::string atom_str(const Atom& a);

struct CVar {
    enum class Kind { Int, Bool, Data };
    std::string name;
    Kind kind = Kind::Int;
    std::string data_sort; // Kind::Data
};

struct Constraint {
    std::vector<CVar> vars;
    std::vector<Atom> hyps;
    Atom goal;
    Loc loc;
    std::string reason; // what obligation this is, for diagnostics
};

// One-line serialization: `vars | hyp1, hyp2, ... |- goal`.
std::string constraint_str(const Constraint& c);

struct Assignment {
    std::map<std::string, cpp_int> ints;
    std::map<std::string, bool> bools;

    std::string str() const;
};

struct SolveResult {
    enum class Tag { Valid, Invalid, Unknown };
    Tag tag = Tag::Unknown;
    Assignment counterexample; // Invalid
    std::string reason;        // Unknown
};

// Equivalent constraint with datasort equations decomposed, contradictions
// collapsed to a false hypothesis, and single-variable equalities substituted.
Constraint simplify(const Constraint& c);

// Decides the sequent. Valid only if it holds for all assignments; Invalid
// only with a counterexample that re-verifies; Unknown otherwise.
SolveResult solve(const Constraint& c);

// Evaluates an atom under an assignment; data equations are compared after
// substituting assigned variables. Used for counterexample verification.
bool eval_atom(const Atom& a, const Assignment& asg);

} // namespace miniats

#endif
