#ifndef MINIATS_PARSER_HPP
#define MINIATS_PARSER_HPP

#include "miniats/ast.hpp"
#include "miniats/diag.hpp"
#include "miniats/lexer.hpp"

namespace miniats {

// Parses a token stream into a declaration list. Reports a ParseError and
// throws CheckAbort on the first syntax error; there is no recovery.
ast::Program parse_program(const std::vector<Token>& tokens, Reporter& reporter);

// Convenience: tokenize + parse.
ast::Program parse_file(const SourcePtr& file, Reporter& reporter);

} // namespace miniats

#endif
