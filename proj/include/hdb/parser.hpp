#ifndef HDB_PARSER_HPP
#define HDB_PARSER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hdb/context.hpp"

namespace hdb {

struct ParseError : std::runtime_error {
    ParseError(std::string message, int line, int col, std::vector<std::string> expected = {})
        : std::runtime_error(format(message, line, col, expected)),
          line(line),
          col(col),
          expected(std::move(expected)) {}
    int line;
    int col;
    std::vector<std::string> expected;

  private:
    static std::string format(const std::string& message, int line, int col,
                              const std::vector<std::string>& expected);
};

// Grammar: sums/differences of terms; term = factors joined by '*'
// (juxtaposition is not multiplication); factor = primary ['^' nat];
// primary = rational literal `p/q` or integer | declared identifier |
// `d(<base var>)` | parenthesized expression | unary minus. Evaluated in the
// operator algebra and demoted to the context's element type: SuperPoly for
// ham/multivec (no d-atoms), first-order fields for vect, operators for ops.
Element parse_element(const std::string& source, const ContextPtr& ctx);

// parses to a bare operator over the signature, independent of context kind
DiffOperator parse_operator(const std::string& source, const SignaturePtr& sig);

}  // namespace hdb

#endif
