#pragma once

#include <stdexcept>
#include <string>

#include "torusnls/poly.hpp"

namespace torusnls {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int token_index, int offset)
        : std::runtime_error(msg), token_index(token_index), offset(offset) {}
    int token_index;  // 1-based
    int offset;       // character offset in the source string
};

// Grammar for nonlinearities F(u, u_x, conj u, conj u_x):
//   variables u, ux, uc, uxc; imaginary unit i; Gaussian-rational
//   literals (e.g. 2, 3/2, 1i, (3/2+1i)); operators + - * ^; parentheses.
// Example: "i*(2*u*uc*ux + u^2*uxc)".
ComplexPolynomial4 parse_nonlinearity(const std::string& src);

}  // namespace torusnls
