#include "miniats/driver.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "miniats/parser.hpp"
#include "miniats/prelude.hpp"

namespace miniats {

SourcePtr read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return nullptr;
    std::ostringstream ss;
    ss << in.rdbuf();
    auto src = std::make_shared<SourceFile>();
    src->name = path;
    src->text = ss.str();
    return src;
}

std::vector<SourcePtr> prelude_sources(const DriverOptions& opts) {
    if (!opts.use_prelude)
        return {};
    std::string override_path = opts.prelude_path;
    if (override_path.empty()) {
        if (const char* env = std::getenv("MINIATS_PRELUDE"))
            override_path = env;
    }
    if (!override_path.empty()) {
        SourcePtr src = read_file(override_path);
        if (!src)
            return {}; // reported by the caller via IoError
        return {src};
    }
    auto mk = [](const char* name, const char* text) {
        auto src = std::make_shared<SourceFile>();
        src->name = name;
        src->text = text;
        return src;
    };
    return {mk("<prelude>", prelude_base_text()),
            mk("<prelude:insort-lemmas>", prelude_insort_lemmas_text()),
            mk("<prelude:qsort-lemmas>", prelude_qsort_lemmas_text())};
}

CheckedFile check_source(const SourcePtr& file, const DriverOptions& opts, Reporter& reporter) {
    CheckedFile out;
    out.env = std::make_shared<Env>();

    std::vector<std::pair<SourcePtr, bool>> inputs;
    for (const auto& p : prelude_sources(opts))
        inputs.push_back({p, true});
    // Avoid double-declaring a prelude segment named directly as the input.
    inputs.push_back({file, false});

    Checker checker(*out.env, reporter);
    for (const auto& [src, from_prelude] : inputs) {
        ast::Program decls;
        try {
            decls = parse_file(src, reporter);
        } catch (const CheckAbort&) {
            out.accepted = false;
            out.constraints = checker.constraint_log();
            return out;
        }
        if (from_prelude)
            out.prelude_count += decls.size();
        for (const auto& d : decls) {
            out.decls.push_back(d);
            try {
                checker.process_decl(d, from_prelude);
            } catch (const CheckAbort&) {
                // Diagnostic already recorded; continue with the next decl.
            }
        }
    }
    out.constraints = checker.constraint_log();
    out.accepted = reporter.ok();
    return out;
}

CheckedFile check_path(const std::string& path, const DriverOptions& opts, Reporter& reporter) {
    SourcePtr src = read_file(path);
    if (!src) {
        reporter.error(Loc{}, DiagKind::IoError, "cannot read '" + path + "'");
        CheckedFile out;
        out.env = std::make_shared<Env>();
        return out;
    }
    return check_source(src, opts, reporter);
}

std::vector<std::string> file_lemmas(const CheckedFile& checked) {
    std::vector<std::string> names;
    for (size_t i = checked.prelude_count; i < checked.decls.size(); ++i)
        if (checked.decls[i].tag == ast::Decl::Tag::Praxi)
            names.push_back(checked.decls[i].name);
    return names;
}

// ---- value codec ---------------------------------------------------------------

namespace {

DTypeHdl peel_for_decode(DTypeHdl t) {
    // Quantifiers and guards are irrelevant for building runtime values.
    while (true) {
        t = normalize_type(t);
        if (t->tag == DType::Tag::Forall || t->tag == DType::Tag::Exists) {
            t = t->body;
        } else if (t->tag == DType::Tag::Guarded || t->tag == DType::Tag::Asserting) {
            t = t->body;
        } else {
            return t;
        }
    }
}

// Element decoding inside list-like datatypes: integer-like fields only.
bool element_is_int(const Env& env, const DTypeHdl& t0) {
    DTypeHdl t = peel_for_decode(t0);
    switch (t->tag) {
    case DType::Tag::IntS: return true;
    case DType::Tag::Abst: return t->name == "E"; // integer-named elements
    case DType::Tag::Stat: {
        STermHdl s = normalize_static(t->index);
        return s->tag == STerm::Tag::Con && s->name == "int";
    }
    default: return false;
    }
}

struct ListLike {
    std::string cons_name;
    std::string nil_name;
};

// A datatype is list-like when it has a nullary constructor and a binary
// constructor whose second field recurses on the same datatype.
std::optional<ListLike> list_like(const Env& env, const std::string& name) {
    const TypeConInfo* info = env.type_con(name);
    if (!info || info->kind != TypeConInfo::Kind::Datatype)
        return std::nullopt;
    ListLike out;
    for (const auto& cname : info->ctor_names) {
        const ConSig* sig = env.con_sig(cname);
        if (!sig)
            continue;
        if (sig->args.empty()) {
            out.nil_name = cname;
            continue;
        }
        if (sig->args.size() == 2) {
            DTypeHdl tail = peel_for_decode(sig->args[1]);
            if (tail->tag == DType::Tag::Data && tail->name == name &&
                element_is_int(env, sig->args[0])) {
                out.cons_name = cname;
                continue;
            }
        }
        return std::nullopt;
    }
    if (out.cons_name.empty() || out.nil_name.empty())
        return std::nullopt;
    return out;
}

bool parse_int_text(const std::string& text, cpp_int& out) {
    std::string s = text;
    if (s.empty())
        return false;
    size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(s[i])))
            return false;
    out = cpp_int(s);
    return true;
}

} // namespace

ValueHdl decode_value(const std::string& text0, const DTypeHdl& type, const Env& env,
                      std::string& error) {
    std::string text;
    for (char c : text0)
        if (!isspace(static_cast<unsigned char>(c)))
            text.push_back(c);
    DTypeHdl t = peel_for_decode(type);

    if (t->tag == DType::Tag::IntS ||
        (t->tag == DType::Tag::Stat && element_is_int(env, t))) {
        cpp_int n;
        if (!parse_int_text(text, n)) {
            error = "expected an integer, got '" + text0 + "'";
            return nullptr;
        }
        return v_int(n);
    }
    if (t->tag == DType::Tag::BoolS) {
        if (text == "true")
            return v_bool(true);
        if (text == "false")
            return v_bool(false);
        error = "expected true/false, got '" + text0 + "'";
        return nullptr;
    }
    if (t->tag == DType::Tag::Data) {
        auto shape = list_like(env, t->name);
        if (!shape) {
            error = "entry parameter type '" + t->name + "' is not decodable";
            return nullptr;
        }
        if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
            error = "expected a bracketed list, got '" + text0 + "'";
            return nullptr;
        }
        std::vector<cpp_int> elems;
        std::string body = text.substr(1, text.size() - 2);
        if (!body.empty()) {
            size_t pos = 0;
            while (pos <= body.size()) {
                size_t comma = body.find(',', pos);
                std::string tok =
                    comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
                cpp_int n;
                if (!parse_int_text(tok, n)) {
                    error = "bad list element '" + tok + "'";
                    return nullptr;
                }
                elems.push_back(n);
                if (comma == std::string::npos)
                    break;
                pos = comma + 1;
            }
        }
        ValueHdl v = v_con(shape->nil_name, {});
        for (size_t i = elems.size(); i-- > 0;)
            v = v_con(shape->cons_name, {v_int(elems[i]), v});
        return v;
    }
    error = "entry parameter type is not decodable: " + type_str(t);
    return nullptr;
}

std::optional<EntrySig> entry_signature(const Env& env, const std::string& entry) {
    const GlobalVal* g = env.global(entry);
    if (!g || g->is_proof)
        return std::nullopt;
    DTypeHdl t = peel_for_decode(g->type);
    if (t->tag != DType::Tag::Fun)
        return std::nullopt;
    EntrySig sig;
    for (const auto& d : t->vdoms)
        sig.params.push_back(d);
    return sig;
}

} // namespace miniats
