#ifndef MINIATS_AST_HPP
#define MINIATS_AST_HPP

#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "miniats/source.hpp"

namespace miniats {
using boost::multiprecision::cpp_int;
}

namespace miniats::ast {

struct SortExpr;
struct SExp;
struct TypeExpr;
struct Pattern;
struct DExp;
struct LetDecl;
struct FunGroup;

using SortPtr = std::shared_ptr<const SortExpr>;
using SExpPtr = std::shared_ptr<const SExp>;
using TypePtr = std::shared_ptr<const TypeExpr>;
using PatPtr = std::shared_ptr<const Pattern>;
using DExpPtr = std::shared_ptr<const DExp>;
using LetDeclPtr = std::shared_ptr<const LetDecl>;

// ---- sorts -----------------------------------------------------------------

struct SortExpr {
    enum class Tag { Name, Arrow };
    Tag tag;
    Loc loc;
    std::string name; // Name
    SortPtr dom, cod; // Arrow
};

// ---- static expressions ----------------------------------------------------

struct SExp {
    enum class Tag { Var, App, Int, Binop, Neg };
    Tag tag;
    Loc loc;
    std::string name;          // Var name, App head, Binop operator
    std::vector<SExpPtr> args; // App args, Binop [lhs, rhs], Neg [arg]
    cpp_int value;             // Int
};

// A quantifier group: {x,y:sort | guard} or [x:sort | guard].
struct QGroup {
    bool universal = true;
    std::vector<std::string> vars;
    SortPtr sort;
    std::vector<SExpPtr> guards;
    Loc loc;
};

// ---- types -----------------------------------------------------------------

struct TypeExpr {
    enum class Tag { App, Fun, Tuple, Quant };
    Tag tag;
    Loc loc;
    // App: head name applied to static index arguments; a bare name has no args
    std::string name;
    std::vector<SExpPtr> sargs;
    bool juxt_arg = false; // `int n` rather than `int (n)`, kept for printing
    // Fun
    std::vector<TypePtr> pdoms, vdoms;
    TypePtr cod;
    bool doms_split = false; // '|' appeared in the domain list
    // Tuple: (P1, ..., Pk | T1, ..., Tm); a plain tuple has no proof components
    std::vector<TypePtr> pcomps, vcomps;
    bool comps_split = false;
    // Quant
    QGroup group;
    TypePtr body;
};

// ---- patterns ---------------------------------------------------------------

struct Pattern {
    enum class Tag { Var, Any, Con, Tuple };
    Tag tag;
    Loc loc;
    std::string name;           // Var, Con head
    std::vector<PatPtr> args;   // Con
    bool has_parens = false;    // Con: distinguishes `nil ()` from bare `nil`
    std::vector<PatPtr> pcomps, vcomps; // Tuple
    bool comps_split = false;
};

// ---- dynamic expressions -----------------------------------------------------

struct Param {
    std::string name;
    TypePtr type;
    Loc loc;
};

struct Arm {
    PatPtr pat;
    DExpPtr body;
    Loc loc;
};

struct DExp {
    enum class Tag { Var, Int, Bool, App, Binop, Neg, Tuple, If, Case, Let, Lam };
    Tag tag;
    Loc loc;
    std::string name; // Var name, Binop operator
    cpp_int value;    // Int
    bool bvalue = false; // Bool
    // App
    DExpPtr callee;
    std::vector<SExpPtr> sargs; // explicit static instantiation `f {s1,s2} (...)`
    std::vector<DExpPtr> pargs, vargs;
    bool args_split = false;
    // Binop/Neg reuse vargs
    // Tuple
    std::vector<DExpPtr> pcomps, vcomps;
    bool comps_split = false;
    // If
    DExpPtr cond, then_e, else_e;
    // Case
    DExpPtr scrut;
    std::vector<Arm> arms;
    bool case_plus = false;
    // Let
    std::vector<LetDeclPtr> decls;
    DExpPtr body;
    // Lam
    std::vector<Param> lam_params;
};

struct FunDef {
    std::string name;
    Loc loc;
    std::vector<QGroup> quants; // groups written after the function name
    std::vector<Param> pparams, vparams;
    bool params_split = false;
    TypePtr ret;
    DExpPtr body;
};

// One `fun ... and ...` group. Quantifier groups written between `fun` and the
// first name scope over every definition in the group.
struct FunGroup {
    bool is_proof = false; // prfun
    std::vector<QGroup> shared_quants;
    std::vector<FunDef> defs;
    Loc loc;
};

struct LetDecl {
    enum class Tag { Val, Prval, Fun };
    struct ValBind {
        PatPtr pat;
        DExpPtr rhs;
        Loc loc;
    };
    Tag tag;
    Loc loc;
    std::vector<ValBind> binds; // Val ('and'-joined) or Prval (single)
    std::shared_ptr<const FunGroup> fun;
};

// ---- declarations -----------------------------------------------------------

// Header parameter of datatype/dataprop/absprop/abstype: `a:type` or bare `ilist`.
struct HParam {
    std::string name; // empty when unnamed
    SortPtr sort;
    Loc loc;
};

struct CtorDecl {
    std::vector<QGroup> quants;
    std::string name;
    Loc loc;
    std::vector<SExpPtr> result_args; // datatype/dataprop result indices
    bool has_result_args = false;
    std::vector<TypePtr> arg_types; // datatype/dataprop `of (...)`
    std::vector<SortPtr> arg_sorts; // datasort `of (...)`
    bool has_of = false;
};

struct Decl {
    enum class Tag { Datasort, Datatype, Dataprop, Absprop, Abstype, Typedef, Praxi, Fun, Val, Alias };
    Tag tag;
    Loc loc;
    std::string name;              // head name (empty for Fun/Val)
    std::vector<HParam> params;    // header params; typedef params are named
    std::vector<CtorDecl> ctors;
    TypePtr type;                  // praxi signature, typedef body
    std::shared_ptr<const FunGroup> fun_group;
    PatPtr val_pat;
    DExpPtr val_rhs;
    std::string alias_target;
};

using Program = std::vector<Decl>;

} // namespace miniats::ast

#endif
