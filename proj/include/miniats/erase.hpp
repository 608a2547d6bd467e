#ifndef MINIATS_ERASE_HPP
#define MINIATS_ERASE_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "miniats/ast.hpp"
#include "miniats/diag.hpp"
#include "miniats/types.hpp"

namespace miniats {

// Proof-free core terms. The node set cannot represent proofs: no prval, no
// proof components, no static instantiations.
struct ETerm;
struct ELetDecl;
using ETermHdl = std::shared_ptr<const ETerm>;
using ELetDeclHdl = std::shared_ptr<const ELetDecl>;

struct EPat {
    enum class Tag { Var, Any, Con };
    Tag tag = Tag::Any;
    std::string name;
    std::vector<std::string> args; // flat constructor patterns
    Loc loc;
};

struct EArm {
    EPat pat;
    ETermHdl body;
};

struct ETerm {
    enum class Tag { Var, Int, Bool, App, Binop, Neg, Tuple, If, Case, Let, Lam };
    Tag tag;
    Loc loc;
    std::string name; // Var, Binop op
    cpp_int value;
    bool bvalue = false;
    ETermHdl callee;
    std::vector<ETermHdl> args;  // App args, Binop [l,r], Neg [x]
    std::vector<ast::SExpPtr> sargs; // kept only for surface printing, never evaluated
    std::vector<ETermHdl> comps; // Tuple
    ETermHdl cond, then_e, else_e;
    ETermHdl scrut;
    std::vector<EArm> arms;
    bool case_plus = false;
    std::vector<ELetDeclHdl> decls;
    ETermHdl body;
    std::vector<ast::Param> lam_params; // types already erased
};

struct EFunDef {
    std::string name;
    Loc loc;
    std::vector<ast::QGroup> quants;
    std::vector<ast::Param> params; // program params, erased types
    ast::TypePtr ret;
    ETermHdl body;
};

struct EFunGroup {
    std::vector<ast::QGroup> shared_quants;
    std::vector<EFunDef> defs;
};

struct ELetDecl {
    enum class Tag { Val, Fun };
    struct Bind {
        std::vector<std::string> vars; // one var, or tuple components
        bool is_tuple = false;
        ETermHdl rhs;
        Loc loc;
    };
    Tag tag = Tag::Val;
    std::vector<Bind> binds;
    std::shared_ptr<const EFunGroup> fun;
    Loc loc;
};

struct EDecl {
    enum class Tag { Passthrough, Fun, Val };
    Tag tag = Tag::Passthrough;
    ast::Decl surface; // datasort/datatype/abstype/typedef/alias, field types erased
    std::shared_ptr<const EFunGroup> fun;
    std::vector<std::string> val_vars;
    bool val_is_tuple = false;
    ETermHdl val_rhs;
    Loc loc;
};

struct EProgram {
    std::vector<EDecl> decls;
};

// Erases an accepted program. `decls` is the full declaration list
// (prelude first); prelude function definitions reachable from the file's code
// are included in erased form so the output is self-contained.
EProgram erase_program(const ast::Program& decls, size_t prelude_count, const Env& env);

// Surface syntax of the erased program (re-parseable and re-checkable).
std::string print_erased(const EProgram& program);

// Residue audit: walks the whole erased program and reports any name that
// still refers to proof machinery (prop constructors, lemmas, prfuns).
// Returns the offending names; empty means clean.
std::vector<std::string> erasure_residue(const EProgram& program, const Env& env);

} // namespace miniats

#endif
