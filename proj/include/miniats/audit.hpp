#ifndef MINIATS_AUDIT_HPP
#define MINIATS_AUDIT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "miniats/types.hpp"

namespace miniats {

// Concrete first-order values the auditor enumerates over.
struct CVal {
    enum class Tag { Int, Bool, List };
    Tag tag = Tag::Int;
    long long i = 0;
    bool b = false;
    std::vector<long long> list;

    std::string str() const;
};

// Executable predicate semantics for props, used to validate lemmas.
using PropPredicate = std::function<bool(const std::vector<CVal>&)>;
using SemanticModel = std::map<std::string, PropPredicate>;

// Models for the builtin props: ORD, PERM, SORT, LB, UB, UNION4, APPEND, FIB.
SemanticModel builtin_models();

struct AuditBounds {
    int max_len = 4;
    long long min_val = 0;
    long long max_val = 3;
    uint64_t cap = 10000000; // per-lemma visited-instantiation cap
};

struct AuditOutcome {
    enum class Tag { Pass, Fail, Error };
    std::string name;
    Tag tag = Tag::Pass;
    uint64_t cases = 0;
    std::string counterexample; // Fail: telescope assignment
    std::string error;          // Error: UnmodeledProp / BoundsTooLarge / shape

    std::string line() const;
};

// Exhaustively enumerates the lemma's telescope within bounds (premises that
// determine or restrict a variable steer the enumeration; visit order is
// lexicographic in the telescope). Pass iff no instantiation satisfies all
// guards and premises while falsifying the conclusion.
AuditOutcome audit_lemma(const Env& env, const LemmaSig& lemma, const SemanticModel& model,
                         const AuditBounds& bounds);

// Audits the given lemmas (declaration order).
std::vector<AuditOutcome> audit_all(const Env& env, const std::vector<std::string>& lemma_names,
                                    const SemanticModel& model, const AuditBounds& bounds);

} // namespace miniats

#endif
