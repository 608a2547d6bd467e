#ifndef MINIATS_DRIVER_HPP
#define MINIATS_DRIVER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "miniats/checker.hpp"
#include "miniats/erase.hpp"
#include "miniats/eval.hpp"

namespace miniats {

struct DriverOptions {
    bool use_prelude = true;
    // Replacement prelude path (MINIATS_PRELUDE also works); empty = embedded.
    std::string prelude_path;
};

struct CheckedFile {
    std::shared_ptr<Env> env;
    ast::Program decls; // prelude + file
    size_t prelude_count = 0;
    std::vector<Constraint> constraints;
    bool accepted = false;
};

// Prelude sources: embedded segments, or the override file.
std::vector<SourcePtr> prelude_sources(const DriverOptions& opts);

// Parses and typechecks `file` against the prelude. Diagnostics land in the
// reporter; `accepted` is false if any error was reported.
CheckedFile check_source(const SourcePtr& file, const DriverOptions& opts, Reporter& reporter);
CheckedFile check_path(const std::string& path, const DriverOptions& opts, Reporter& reporter);

SourcePtr read_file(const std::string& path); // throws CheckAbort via reporter-less IO

// The lemmas declared by the file itself (not the prelude), declaration order.
std::vector<std::string> file_lemmas(const CheckedFile& checked);

// ---- runtime value codec -----------------------------------------------------

// Parses a command-line literal (integer, true/false, or [1,2,3]) guided by
// the entry's parameter type. Returns null with `error` set on failure.
ValueHdl decode_value(const std::string& text, const DTypeHdl& type, const Env& env,
                      std::string& error);

// Peeled view of an entry's checked signature: parameter types and arity.
struct EntrySig {
    std::vector<DTypeHdl> params;
};
std::optional<EntrySig> entry_signature(const Env& env, const std::string& entry);

} // namespace miniats

#endif
