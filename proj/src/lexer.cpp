#include "miniats/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace miniats {

const char* diag_kind_name(DiagKind kind) {
    switch (kind) {
    case DiagKind::LexError: return "LexError";
    case DiagKind::ParseError: return "ParseError";
    case DiagKind::SortError: return "SortError";
    case DiagKind::UnboundStaticVar: return "UnboundStaticVar";
    case DiagKind::UnboundVar: return "UnboundVar";
    case DiagKind::DuplicateName: return "DuplicateName";
    case DiagKind::DuplicateConstructor: return "DuplicateConstructor";
    case DiagKind::DuplicateLemma: return "DuplicateLemma";
    case DiagKind::TypeError: return "TypeError";
    case DiagKind::ProofInProgramPosition: return "ProofInProgramPosition";
    case DiagKind::ProgramInProofPosition: return "ProgramInProofPosition";
    case DiagKind::NonExhaustiveMatch: return "NonExhaustiveMatch";
    case DiagKind::RedundantArm: return "RedundantArm";
    case DiagKind::UnsolvedConstraint: return "UnsolvedConstraint";
    case DiagKind::UnknownConstraint: return "UnknownConstraint";
    case DiagKind::UnmodeledProp: return "UnmodeledProp";
    case DiagKind::BoundsTooLarge: return "BoundsTooLarge";
    case DiagKind::IoError: return "IoError";
    case DiagKind::InternalError: return "InternalError";
    }
    return "UnknownDiag";
}

std::string Diagnostic::str() const {
    std::string sev = severity == Severity::Error ? "error" : "warning";
    return loc.str() + ": " + sev + ": " + std::string(diag_kind_name(kind)) + ": " + message;
}

namespace {

const std::unordered_set<std::string>& keyword_set() {
    static const std::unordered_set<std::string> kws = {
        "datasort", "datatype", "dataprop", "absprop", "abstype", "typedef", "praxi",
        "fun", "prfun", "prval", "val", "let", "in", "end",
        "case", "of", "if", "then", "else", "and", "lam", "alias",
    };
    return kws;
}

// Multi-character symbols first; maximal munch.
const std::array<const char*, 5> two_char_syms = {"=>", "->", "<=", ">=", "<>"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

} // namespace

bool is_keyword(const std::string& word) { return keyword_set().count(word) > 0; }

std::vector<Token> tokenize(const SourcePtr& file, Reporter& reporter) {
    const std::string& src = file->text;
    std::vector<Token> tokens;
    size_t i = 0;
    int line = 1, col = 1;

    auto loc_here = [&]() { return Loc{file, line, col}; };
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        Loc loc = loc_here();
        size_t start = i;
        if (is_ident_start(c)) {
            while (i < src.size() && is_ident_char(src[i]))
                advance(1);
            std::string word = src.substr(start, i - start);
            tokens.push_back({is_keyword(word) ? TokKind::Keyword : TokKind::Ident, word, loc, start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                advance(1);
            tokens.push_back({TokKind::IntLit, src.substr(start, i - start), loc, start});
            continue;
        }
        bool matched = false;
        if (i + 1 < src.size()) {
            std::string two = src.substr(i, 2);
            for (const char* sym : two_char_syms) {
                if (two == sym) {
                    advance(2);
                    tokens.push_back({TokKind::Symbol, two, loc, start});
                    matched = true;
                    break;
                }
            }
        }
        if (matched)
            continue;
        static const std::string singles = "(){}[],:|+-*<>=";
        if (singles.find(c) != std::string::npos) {
            advance(1);
            tokens.push_back({TokKind::Symbol, std::string(1, c), loc, start});
            continue;
        }
        reporter.error(loc, DiagKind::LexError, "unrecognized character '" + std::string(1, c) + "'");
        throw CheckAbort{};
    }
    tokens.push_back({TokKind::Eof, "", loc_here(), src.size()});
    return tokens;
}

} // namespace miniats
