#ifndef MINIATS_DIAG_HPP
#define MINIATS_DIAG_HPP

#include <string>
#include <vector>

#include "miniats/source.hpp"

namespace miniats {

enum class DiagKind {
    LexError,
    ParseError,
    SortError,
    UnboundStaticVar,
    UnboundVar,
    DuplicateName,
    DuplicateConstructor,
    DuplicateLemma,
    TypeError,
    ProofInProgramPosition,
    ProgramInProofPosition,
    NonExhaustiveMatch,
    RedundantArm,
    UnsolvedConstraint,
    UnknownConstraint,
    UnmodeledProp,
    BoundsTooLarge,
    IoError,
    InternalError,
};

const char* diag_kind_name(DiagKind kind);

enum class Severity { Error, Warning };

struct Diagnostic {
    Loc loc;
    DiagKind kind;
    Severity severity = Severity::Error;
    std::string message;

    std::string str() const;
};

// Collects diagnostics during a pipeline run. Errors do not stop collection;
// callers that cannot continue throw CheckAbort and the driver moves on.
class Reporter {
public:
    void error(const Loc& loc, DiagKind kind, std::string message) {
        diags_.push_back({loc, kind, Severity::Error, std::move(message)});
        ++error_count_;
    }

    void warn(const Loc& loc, DiagKind kind, std::string message) {
        diags_.push_back({loc, kind, Severity::Warning, std::move(message)});
    }

    bool ok() const { return error_count_ == 0; }
    int error_count() const { return error_count_; }
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
    int error_count_ = 0;
};

// Thrown when a declaration cannot be checked further. The corresponding
// diagnostic has already been reported.
struct CheckAbort {};

} // namespace miniats

#endif
