#ifndef MINIATS_PRINTER_HPP
#define MINIATS_PRINTER_HPP

#include <string>

#include "miniats/ast.hpp"

namespace miniats {

// Prints surface syntax that parses back to an equal AST (locations aside).
std::string print_program(const ast::Program& program);
std::string print_decl(const ast::Decl& decl);
std::string print_type(const ast::TypeExpr& type);
std::string print_dexp(const ast::DExp& e);
std::string print_sexp(const ast::SExp& e);
std::string print_sort(const ast::SortExpr& s);
std::string print_pattern(const ast::Pattern& p);

} // namespace miniats

#endif
