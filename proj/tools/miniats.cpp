#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "miniats/audit.hpp"
#include "miniats/driver.hpp"
#include "miniats/printer.hpp"

using namespace miniats;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFuel = 3;

bool is_front_end_error(DiagKind kind) {
    return kind == DiagKind::IoError || kind == DiagKind::LexError || kind == DiagKind::ParseError;
}

int severity_exit(const Reporter& reporter) {
    bool any_error = false;
    for (const auto& d : reporter.diagnostics()) {
        if (d.severity != Severity::Error)
            continue;
        if (is_front_end_error(d.kind))
            return kExitUsage;
        any_error = true;
    }
    return any_error ? kExitRejected : kExitOk;
}

std::string render_diags(const Reporter& reporter, bool json) {
    std::ostringstream os;
    if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& d : reporter.diagnostics()) {
            arr.push_back({{"file", d.loc.file ? d.loc.file->name : ""},
                           {"line", d.loc.line},
                           {"col", d.loc.col},
                           {"kind", diag_kind_name(d.kind)},
                           {"message", d.message}});
        }
        os << arr.dump(2) << "\n";
    } else {
        for (const auto& d : reporter.diagnostics())
            os << d.str() << "\n";
    }
    return os.str();
}

struct FileCheckResult {
    std::string output;
    int exit_code = kExitOk;
};

FileCheckResult check_one(const std::string& path, const DriverOptions& opts, bool dump,
                          bool json) {
    Reporter reporter;
    CheckedFile checked = check_path(path, opts, reporter);
    FileCheckResult res;
    std::ostringstream os;
    os << render_diags(reporter, json);
    if (dump)
        for (const auto& c : checked.constraints)
            os << constraint_str(c) << "\n";
    if (!json && checked.accepted)
        os << path << ": accepted\n";
    res.output = os.str();
    res.exit_code = severity_exit(reporter);
    return res;
}

int cmd_check(const std::vector<std::string>& files, const DriverOptions& opts, bool dump,
              bool json, int jobs) {
    std::vector<FileCheckResult> results(files.size());
    if (jobs > 1 && files.size() > 1) {
        std::vector<std::future<FileCheckResult>> futs;
        for (const auto& f : files)
            futs.push_back(
                std::async(std::launch::async, [&, f] { return check_one(f, opts, dump, json); }));
        for (size_t i = 0; i < futs.size(); ++i)
            results[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < files.size(); ++i)
            results[i] = check_one(files[i], opts, dump, json);
    }
    int worst = kExitOk;
    for (const auto& r : results) {
        std::cout << r.output;
        worst = std::max(worst, r.exit_code);
    }
    return worst;
}

int cmd_run(const std::string& file, const std::string& entry,
            const std::vector<std::string>& args, const DriverOptions& opts, uint64_t fuel,
            bool show_steps) {
    Reporter reporter;
    CheckedFile checked = check_path(file, opts, reporter);
    if (!checked.accepted) {
        std::cerr << render_diags(reporter, false);
        return severity_exit(reporter) == kExitUsage ? kExitUsage : kExitRejected;
    }
    auto sig = entry_signature(*checked.env, entry);
    if (!sig) {
        std::cerr << "entry '" << entry << "' is not a program function\n";
        return kExitUsage;
    }
    if (sig->params.size() != args.size()) {
        std::cerr << "entry '" << entry << "' takes " << sig->params.size()
                  << " arguments, got " << args.size() << "\n";
        return kExitUsage;
    }
    std::vector<ValueHdl> values;
    for (size_t i = 0; i < args.size(); ++i) {
        std::string error;
        ValueHdl v = decode_value(args[i], sig->params[i], *checked.env, error);
        if (!v) {
            std::cerr << "argument " << i + 1 << ": " << error << "\n";
            return kExitUsage;
        }
        values.push_back(std::move(v));
    }
    EProgram erased = erase_program(checked.decls, checked.prelude_count, *checked.env);
    try {
        Evaluator ev(erased);
        ev.set_fuel(fuel);
        ValueHdl result = ev.call(entry, values);
        std::cout << value_str(result) << "\n";
        if (show_steps)
            std::cout << "steps: " << ev.steps() << "\n";
        return kExitOk;
    } catch (const FuelExhausted&) {
        std::cerr << "fuel exhausted\n";
        return kExitFuel;
    } catch (const EvalError& e) {
        std::cerr << "evaluation error: " << e.message << "\n";
        return kExitRejected;
    }
}

int cmd_erase(const std::string& file, const std::string& out_path, const DriverOptions& opts) {
    Reporter reporter;
    CheckedFile checked = check_path(file, opts, reporter);
    if (!checked.accepted) {
        std::cerr << render_diags(reporter, false);
        return severity_exit(reporter) == kExitUsage ? kExitUsage : kExitRejected;
    }
    EProgram erased = erase_program(checked.decls, checked.prelude_count, *checked.env);
    std::vector<std::string> residue = erasure_residue(erased, *checked.env);
    if (!residue.empty()) {
        std::cerr << "internal error: proof residue after erasure: " << residue.front() << "\n";
        return kExitRejected;
    }
    std::string text = print_erased(erased);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
        out << text;
    }
    return kExitOk;
}

int cmd_audit(const std::string& file, const DriverOptions& opts, const AuditBounds& bounds,
              const std::string& only_lemma) {
    Reporter reporter;
    CheckedFile checked = check_path(file, opts, reporter);
    bool front_end = severity_exit(reporter) == kExitUsage;
    if (front_end || !checked.accepted) {
        std::cerr << render_diags(reporter, false);
        return front_end ? kExitUsage : kExitRejected;
    }
    std::vector<std::string> names = file_lemmas(checked);
    if (!only_lemma.empty()) {
        if (std::find(names.begin(), names.end(), only_lemma) != names.end() ||
            checked.env->lemma(only_lemma)) {
            names = {only_lemma};
        } else {
            std::cerr << "lemma '" << only_lemma << "' is not declared\n";
            return kExitUsage;
        }
    }
    SemanticModel model = builtin_models();
    std::vector<AuditOutcome> results = audit_all(*checked.env, names, model, bounds);
    bool any_fail = false, any_error = false;
    for (const auto& r : results) {
        std::cout << r.line() << "\n";
        any_fail |= r.tag == AuditOutcome::Tag::Fail;
        any_error |= r.tag == AuditOutcome::Tag::Error;
    }
    if (any_error)
        return kExitUsage;
    return any_fail ? kExitRejected : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"miniats: checker and interpreter for a proof-carrying functional language"};
    app.require_subcommand(1);

    DriverOptions opts;
    bool no_prelude = false;
    app.add_flag("--no-prelude", no_prelude, "do not auto-include the prelude");
    app.add_option("--prelude", opts.prelude_path, "replacement prelude file");

    auto* check = app.add_subcommand("check", "typecheck files");
    std::vector<std::string> check_files;
    bool dump_constraints = false, json_report = false;
    int jobs = 1;
    check->add_option("files", check_files, "source files")->required();
    check->add_flag("--dump-constraints", dump_constraints, "print every solved constraint");
    check->add_flag("--json-report", json_report, "machine-readable diagnostics");
    check->add_option("--jobs", jobs, "check files in parallel");

    auto* run = app.add_subcommand("run", "typecheck, erase, and evaluate an entry");
    std::string run_file, entry = "main";
    std::vector<std::string> run_args;
    uint64_t fuel = 0;
    bool show_steps = false;
    run->add_option("file", run_file, "source file")->required();
    run->add_option("--entry", entry, "entry function (default: main)");
    run->add_option("args", run_args, "entry arguments (ints, true/false, [1,2,3])");
    run->add_option("--fuel", fuel, "cap on function applications (0 = unlimited)");
    run->add_flag("--steps", show_steps, "print the application count");

    auto* erase = app.add_subcommand("erase", "print the proof-erased program");
    std::string erase_file, erase_out;
    erase->add_option("file", erase_file, "source file")->required();
    erase->add_option("-o,--output", erase_out, "write to a file instead of stdout");

    auto* audit = app.add_subcommand("audit", "validate declared lemmas against the models");
    std::string audit_file, only_lemma;
    AuditBounds bounds;
    audit->add_option("file", audit_file, "source file with praxi declarations")->required();
    audit->add_option("--max-len", bounds.max_len, "maximum list length (default 4)");
    audit->add_option("--min-val", bounds.min_val, "smallest element value (default 0)");
    audit->add_option("--max-val", bounds.max_val, "largest element value (default 3)");
    audit->add_option("--cap", bounds.cap, "per-lemma instantiation cap (default 10^7)");
    audit->add_option("--lemma", only_lemma, "audit a single lemma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    opts.use_prelude = !no_prelude;

    if (check->parsed())
        return cmd_check(check_files, opts, dump_constraints, json_report, jobs);
    if (run->parsed())
        return cmd_run(run_file, entry, run_args, opts, fuel, show_steps);
    if (erase->parsed())
        return cmd_erase(erase_file, erase_out, opts);
    if (audit->parsed())
        return cmd_audit(audit_file, opts, bounds, only_lemma);
    return kExitUsage;
}
