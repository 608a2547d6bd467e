#ifndef MINIATS_LEXER_HPP
#define MINIATS_LEXER_HPP

#include <string>
#include <vector>

#include "miniats/diag.hpp"
#include "miniats/source.hpp"

namespace miniats {

enum class TokKind { Keyword, Ident, IntLit, Symbol, Eof };

struct Token {
    TokKind kind;
    std::string text;
    Loc loc;
    size_t offset = 0; // byte offset into the source text

    bool is_kw(const char* kw) const { return kind == TokKind::Keyword && text == kw; }
    bool is_sym(const char* sym) const { return kind == TokKind::Symbol && text == sym; }
};

bool is_keyword(const std::string& word);

// Tokenizes a whole file. Line comments (// ...) are discarded. On an
// unrecognized character a LexError is reported and CheckAbort is thrown.
// The returned vector always ends with an Eof token.
std::vector<Token> tokenize(const SourcePtr& file, Reporter& reporter);

} // namespace miniats

#endif
