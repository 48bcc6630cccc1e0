#ifndef HDB_PRINTER_HPP
#define HDB_PRINTER_HPP

#include <string>

#include "hdb/context.hpp"

namespace hdb {

// Deterministic canonical printing; print_expr(parse_expr(s)) round-trips.
std::string print_poly(const SuperPoly& p);
std::string print_operator(const DiffOperator& op);
std::string print_field(const VectorField& x);
std::string print_element(const Element& e);

}  // namespace hdb

#endif
