#ifndef MINIATS_CHECKER_HPP
#define MINIATS_CHECKER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "miniats/ast.hpp"
#include "miniats/constraint.hpp"
#include "miniats/diag.hpp"
#include "miniats/types.hpp"

namespace miniats {

enum class Mode { Program, Proof };

// Bidirectional typechecker. Declarations are processed in order; each one is
// elaborated into the environment and its bodies are checked, emitting
// constraints that are solved eagerly. Errors are reported to the Reporter;
// a declaration that cannot proceed throws CheckAbort (caught by the driver).
class Checker {
public:
    Checker(Env& env, Reporter& reporter);

    void process_decl(const ast::Decl& decl, bool from_prelude);

    const std::vector<Constraint>& constraint_log() const { return log_; }

private:
    Env& env_;
    Reporter& rep_;
    std::vector<Constraint> log_;

    // Ambient telescope and hypotheses. Grows monotonically inside an
    // expression; saved/restored at function, arm and branch boundaries.
    StaticCtx sctx_;
    struct DynBind {
        std::string name;
        DTypeHdl type;
        bool is_proof = false;
    };
    std::vector<DynBind> dctx_;
    // Surface static name -> unique name, as a shadowing stack.
    std::vector<std::pair<std::string, std::string>> sscope_;

    std::map<std::string, int> name_uses_;
    int meta_counter_ = 0;

    // Pattern refinement rewrites hypotheses and binding types in place, so a
    // snapshot keeps full copies of those.
    struct Snapshot {
        size_t svars, sscope;
        std::vector<STermHdl> hyps;
        std::vector<DynBind> dctx;
    };
    Snapshot save() const;
    void restore(const Snapshot& s);

    std::string fresh(const std::string& base);
    std::string push_svar(const std::string& surface, SortHdl sort); // returns unique name
    std::string push_skolem(const std::string& base, SortHdl sort);  // no surface mapping
    void push_hyp(const STermHdl& h);
    std::optional<std::string> lookup_svar(const std::string& surface) const;
    const DynBind* lookup_dvar(const std::string& name) const;

    // ---- one inference root (metavariables + deferred obligations) -----------
    struct Meta {
        SortHdl sort;
        std::string display;
        STermHdl bound; // null when unresolved
    };
    struct PendingGuard {
        STermHdl guard;
        Loc loc;
        std::string why;
    };
    struct Root {
        std::map<std::string, Meta> metas;
        std::vector<std::string> meta_order;
        std::vector<std::pair<STermHdl, STermHdl>> pending_eqs;
        std::vector<PendingGuard> pending_guards;
        Root* outer = nullptr;
    };
    Root* root_ = nullptr;

    STermHdl new_meta(SortHdl sort, const std::string& display);
    bool is_unresolved_meta(const std::string& name) const;
    STermHdl subst_metas(const STermHdl& t) const;
    DTypeHdl subst_metas_type(const DTypeHdl& t) const;
    void bind_meta(const std::string& name, const STermHdl& term, const Loc& loc);
    void collect_unresolved(const STermHdl& t, std::vector<std::string>& out) const;

    void unify_sterm(const STermHdl& a, const STermHdl& b, const Loc& loc, const std::string& why);
    void unify_type(const DTypeHdl& expected, const DTypeHdl& actual, const Loc& loc,
                    const std::string& why);
    // Generalizes leftover metas into Forall binders when `generalize` is set;
    // otherwise leftover metas are an error.
    DTypeHdl finalize_root(const DTypeHdl& result, const Loc& loc, bool generalize);

    // ---- constraint emission ---------------------------------------------------
    Constraint build_constraint(const Atom& goal, const std::vector<Atom>& extra_hyps,
                                const std::vector<CVar>& extra_vars, const Loc& loc,
                                const std::string& reason) const;
    void emit_obligation(const STermHdl& goal, const Loc& loc, const std::string& reason);
    void emit_equality(const STermHdl& a, const STermHdl& b, const Loc& loc,
                       const std::string& reason);
    SolveResult solve_logged(Constraint c);

    // ---- elaboration (elab.cpp) -------------------------------------------------
    SortHdl elab_sort(const ast::SortPtr& s, bool allow_nat, bool* was_nat);
    STermHdl elab_sexp(const ast::SExpPtr& e);
    DTypeHdl elab_type(const ast::TypePtr& t);
    struct SigScope; // RAII for signature scopes
    std::vector<TeleVarG> elab_qgroups(const std::vector<ast::QGroup>& groups,
                                       std::vector<std::string>* bound_names);
    DTypeHdl wrap_telescope(const std::vector<TeleVarG>& tele, DTypeHdl core);

    void decl_datasort(const ast::Decl& d);
    void decl_datatype(const ast::Decl& d, bool is_prop);
    void decl_abs(const ast::Decl& d, bool is_prop);
    void decl_typedef(const ast::Decl& d);
    void decl_praxi(const ast::Decl& d, bool from_prelude);
    void decl_alias(const ast::Decl& d);
    void decl_fun_group(const ast::FunGroup& g, bool top_level, bool from_prelude);
    void decl_val(const ast::Decl& d, bool from_prelude);
    void maybe_register_builtins();

    void check_duplicate_type_name(const std::string& name, const Loc& loc);

    // ---- expression checking (checker.cpp) ---------------------------------------
    void check_expr(const ast::DExpPtr& e, DTypeHdl expected, Mode mode);
    DTypeHdl synth_expr(const ast::DExpPtr& e, Mode mode);
    DTypeHdl synth_arg(const ast::DExpPtr& e, Mode mode);
    bool synthesizable(const ast::DExpPtr& e) const;
    DTypeHdl synth_app(const ast::DExp& e, Mode mode);
    DTypeHdl synth_var(const ast::DExp& e, Mode mode);
    DTypeHdl synth_binop(const ast::DExp& e, Mode mode);
    DTypeHdl instantiate(DTypeHdl t, const std::vector<ast::SExpPtr>& explicit_sargs,
                         const Loc& loc, const std::string& head);
    DTypeHdl open_existentials(DTypeHdl t);
    DTypeHdl peel_expected_binders(DTypeHdl expected); // Forall/Guarded on the checking side

    void check_if(const ast::DExp& e, const DTypeHdl& expected, Mode mode);
    void check_case(const ast::DExp& e, const DTypeHdl& expected, Mode mode);
    void check_let(const ast::DExp& e, const DTypeHdl& expected, Mode mode);
    void check_lam(const ast::DExp& e, const DTypeHdl& expected, Mode mode);
    void check_tuple_against(const ast::DExp& e, const DTypeHdl& expected, Mode mode);
    void process_let_decl(const ast::LetDecl& d);
    void bind_val_pattern(const ast::PatPtr& pat, DTypeHdl rhs_type, const Loc& loc);
    void bind_value(const std::string& name, DTypeHdl type, bool is_proof);

    struct ArmAnalysis {
        bool consistent = true;
        Subst sub;
        std::vector<STermHdl> int_hyps; // leftover component equalities
    };
    ArmAnalysis analyze_refinement(const std::vector<STermHdl>& scrut_args,
                                   const std::vector<STermHdl>& pat_args, const Loc& loc);

    [[noreturn]] void fail(const Loc& loc, DiagKind kind, const std::string& msg);
};

} // namespace miniats

#endif
