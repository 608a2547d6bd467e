#ifndef MINIATS_STATICS_HPP
#define MINIATS_STATICS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "miniats/diag.hpp"
#include "miniats/source.hpp"

namespace miniats {

using boost::multiprecision::cpp_int;

// ---- sorts ------------------------------------------------------------------

struct Sort;
using SortHdl = std::shared_ptr<const Sort>;

struct Sort {
    enum class Tag { Int, Bool, Addr, Prop, Type, Data, Arrow };
    Tag tag;
    std::string data_name; // Data
    SortHdl dom, cod;      // Arrow
};

SortHdl sort_int();
SortHdl sort_bool();
SortHdl sort_addr();
SortHdl sort_prop();
SortHdl sort_type();
SortHdl sort_data(const std::string& name);
SortHdl sort_arrow(SortHdl dom, SortHdl cod);

bool sort_equal(const SortHdl& a, const SortHdl& b);
std::string sort_str(const SortHdl& s);

// ---- static terms ------------------------------------------------------------

// Index-level terms. Terms built by the elaborator are sort-annotated and kept
// in normal form: integer-sorted subterms are Lin (c0 + sum of coeff*var),
// comparisons are Cmp over a Lin meaning `lin OP 0`.
struct STerm;
using STermHdl = std::shared_ptr<const STerm>;

enum class CmpOp { Le, Eq, Ne };

struct STerm {
    enum class Tag { Var, Con, IntLit, BoolLit, Lam, App, Lin, Cmp, Not };
    Tag tag;
    SortHdl sort;
    std::string name;           // Var: unique name; Con: constructor name
    std::vector<STermHdl> args; // Con args; Lam [body]; App [f, arg]; Not [arg]; Cmp [lin]
    cpp_int ival;               // IntLit value; Lin constant
    bool bval = false;          // BoolLit
    std::vector<std::pair<std::string, cpp_int>> lin; // Lin terms, sorted by var, nonzero
    CmpOp cmp = CmpOp::Le;
    std::string lam_var; // Lam bound variable (canonical)
    SortHdl lam_sort;
};

STermHdl st_var(const std::string& uniq, SortHdl sort);
STermHdl st_con(const std::string& name, std::vector<STermHdl> args, SortHdl sort);
STermHdl st_int(const cpp_int& v);
STermHdl st_bool(bool b);
STermHdl st_lin(cpp_int k, std::vector<std::pair<std::string, cpp_int>> terms);
STermHdl st_cmp(CmpOp op, STermHdl lin);
STermHdl st_not(STermHdl arg);
STermHdl st_lam(const std::string& var, SortHdl var_sort, STermHdl body);
STermHdl st_app(STermHdl f, STermHdl arg);

// Display name of a variable (unique names carry a `$<n>` suffix when renamed).
std::string display_name(const std::string& uniq);

std::string sterm_str(const STermHdl& t);

// ---- static constructor signatures --------------------------------------------

struct StaticConSig {
    std::string name;
    std::vector<SortHdl> arg_sorts;
    SortHdl result; // datasort, or `type` for the builtin type constants
};

struct DatasortDef {
    std::string name;
    std::vector<std::string> ctor_names; // declaration order
    Loc loc;
};

// Statics-side tables: datasorts and static constructors (including the
// builtin type constants `int` and `bool` of sort type).
class StaticsEnv {
public:
    StaticsEnv();

    bool has_datasort(const std::string& name) const { return datasorts_.count(name) > 0; }
    const DatasortDef* datasort(const std::string& name) const;
    const StaticConSig* ctor(const std::string& name) const;

    void add_datasort(DatasortDef def);
    void add_ctor(StaticConSig sig);
    void add_alias(const std::string& alias, const std::string& target);
    // Resolves constructor aliases (`cons` -> `ilist_cons`); identity otherwise.
    std::string resolve(const std::string& name) const;

private:
    std::map<std::string, DatasortDef> datasorts_;
    std::map<std::string, StaticConSig> ctors_;
    std::map<std::string, std::string> aliases_;
};

// ---- telescope contexts ---------------------------------------------------------

struct TeleVar {
    std::string uniq;
    SortHdl sort;
};

// Ordered telescope of static variables plus accumulated boolean hypotheses.
struct StaticCtx {
    std::vector<TeleVar> vars;
    std::vector<STermHdl> hyps; // normalized bool terms

    const TeleVar* lookup(const std::string& uniq) const {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            if (it->uniq == uniq)
                return &*it;
        return nullptr;
    }
};

// ---- operations ------------------------------------------------------------------

// Sort of a term under ctx; reports SortError/UnboundStaticVar and throws
// CheckAbort on failure.
SortHdl sort_of(const StaticsEnv& env, const StaticCtx& ctx, const STermHdl& term,
                Reporter& reporter, const Loc& loc);

// Beta-reduction, arithmetic folding into Lin/Cmp form, alpha-canonical lambdas.
// Total on well-sorted terms and idempotent.
STermHdl normalize_static(const STermHdl& term);

// Capture-avoiding substitution of static variables (by unique name).
using Subst = std::map<std::string, STermHdl>;
STermHdl subst_static(const STermHdl& term, const Subst& sub);

bool sterm_syntactic_equal(const STermHdl& a, const STermHdl& b);

void free_static_vars(const STermHdl& t, std::vector<std::string>& out);
bool static_var_occurs(const std::string& uniq, const STermHdl& t);

// Result of index equality: definitely equal, definitely distinct, or residual
// equalities over int/bool components that the solver has to discharge.
struct EqResult {
    enum class Verdict { True, False, Residual };
    Verdict verdict;
    std::vector<std::pair<STermHdl, STermHdl>> residuals;
};

EqResult static_equal(const STermHdl& a, const STermHdl& b);

} // namespace miniats

#endif
