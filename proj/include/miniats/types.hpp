#ifndef MINIATS_TYPES_HPP
#define MINIATS_TYPES_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "miniats/ast.hpp"
#include "miniats/statics.hpp"

namespace miniats {

enum class TKind { Type, Prop };

// Program/proof types. Every embedded static term is normalized and
// well-sorted under the ambient telescope.
struct DType;
using DTypeHdl = std::shared_ptr<const DType>;

struct DType {
    enum class Tag {
        IntS,      // int(I)
        BoolS,     // bool(B)
        PtrS,      // ptr(L); parseable, uninhabited
        Stat,      // a type given by a static term of sort type (variable or constant)
        Data,      // datatype application
        Prop,      // dataprop/absprop application
        Abst,      // abstype application
        Fun,       // (pdoms | vdoms) -> cod
        Tuple,     // (pcomps | vcomps)
        Guarded,   // B => T, usable only when Bholds
        Asserting, // B && T, provides B when opened
        Forall,
        Exists,
    };
    Tag tag;
    STermHdl index; // IntS/BoolS/PtrS/Stat
    std::string name;
    std::vector<STermHdl> sargs;
    std::vector<DTypeHdl> pdoms, vdoms;
    DTypeHdl cod;
    std::vector<DTypeHdl> pcomps, vcomps;
    STermHdl guard;
    DTypeHdl body;
    std::string var; // Forall/Exists bound variable (unique within the type)
    SortHdl var_sort;
};

DTypeHdl dt_ints(STermHdl i);
DTypeHdl dt_bools(STermHdl b);
DTypeHdl dt_ptrs(STermHdl l);
DTypeHdl dt_stat(STermHdl t);
DTypeHdl dt_data(std::string name, std::vector<STermHdl> sargs);
DTypeHdl dt_prop(std::string name, std::vector<STermHdl> sargs);
DTypeHdl dt_abst(std::string name, std::vector<STermHdl> sargs);
DTypeHdl dt_fun(std::vector<DTypeHdl> pdoms, std::vector<DTypeHdl> vdoms, DTypeHdl cod);
DTypeHdl dt_tuple(std::vector<DTypeHdl> pcomps, std::vector<DTypeHdl> vcomps);
DTypeHdl dt_guarded(STermHdl guard, DTypeHdl body);
DTypeHdl dt_asserting(STermHdl guard, DTypeHdl body);
DTypeHdl dt_forall(std::string var, SortHdl sort, DTypeHdl body);
DTypeHdl dt_exists(std::string var, SortHdl sort, DTypeHdl body);

// The plain base types are existentially wrapped singletons.
DTypeHdl dt_plain_int();
DTypeHdl dt_plain_bool();

TKind kind_of(const DTypeHdl& t);
std::string type_str(const DTypeHdl& t);

DTypeHdl subst_type(const DTypeHdl& t, const Subst& sub);

// Canonicalizes: static type constants int/bool become their plain types,
// single-value proof-free tuples collapse.
DTypeHdl normalize_type(const DTypeHdl& t);

bool type_mentions_var(const DTypeHdl& t, const std::string& uniq);
void free_type_vars(const DTypeHdl& t, std::vector<std::string>& out);

// ---- signatures -------------------------------------------------------------

struct TeleVarG {
    std::string name; // binder name as written (unique within the signature)
    SortHdl sort;
    std::vector<STermHdl> guards; // guards attached to this binder (incl. nat)
};

// Constructor of a datatype or dataprop.
struct ConSig {
    std::string name;
    std::string owner;
    bool owner_is_prop = false;
    std::vector<TeleVarG> telescope;
    std::vector<DTypeHdl> args;        // props for dataprop ctors, types for datatype ctors
    std::vector<STermHdl> result_args; // instantiation of the owner's indices
    DTypeHdl as_value;                 // Forall/Guarded-wrapped Fun for application sites
    Loc loc;
};

struct LemmaSig {
    std::string name;
    std::vector<TeleVarG> telescope;
    std::vector<DTypeHdl> pargs;
    DTypeHdl result;
    DTypeHdl as_value;
    Loc loc;
};

bool lemma_sig_equal(const LemmaSig& a, const LemmaSig& b);

// ---- environment ---------------------------------------------------------------

struct TypeConInfo {
    enum class Kind { Datatype, Dataprop, Absprop, Abstype, Typedef };
    Kind kind;
    std::string name;
    std::vector<std::pair<std::string, SortHdl>> params; // name may be empty
    std::vector<std::string> ctor_names;                 // datatype/dataprop
    DTypeHdl typedef_body; // over params as static variables
    Loc loc;
};

struct GlobalVal {
    enum class Origin { Fun, Prfun, Val, Builtin };
    std::string name;
    DTypeHdl type;
    bool is_proof = false;
    Origin origin = Origin::Fun;
    bool from_prelude = false;
};

class Env {
public:
    StaticsEnv statics;
    std::map<std::string, TypeConInfo> type_cons;
    std::map<std::string, ConSig> con_sigs;
    std::map<std::string, std::string> dyn_aliases;
    std::map<std::string, LemmaSig> lemmas;
    std::vector<std::string> lemma_order; // declaration order, prelude first
    std::map<std::string, GlobalVal> globals;

    const TypeConInfo* type_con(const std::string& name) const;
    const ConSig* con_sig(const std::string& name) const; // resolves aliases
    std::string resolve_dyn(const std::string& name) const;
    const LemmaSig* lemma(const std::string& name) const;
    const GlobalVal* global(const std::string& name) const;
};

} // namespace miniats

#endif
