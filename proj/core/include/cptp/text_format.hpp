#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cptp/conic.hpp"
#include "cptp/dense_matrix.hpp"
#include "cptp/polynomial.hpp"
#include "cptp/symmetric_tensor.hpp"

namespace cptp {

// Line-oriented formats. Blank lines and text after '#' are ignored on input; output is
// canonical and deterministic. All readers throw ParseError carrying the 1-based line.

/// `symtensor d n`, then one line per nonzero canonical entry: `i1 ... id p/q`.
std::string write_tensor(const SymmetricTensor& t);
SymmetricTensor read_tensor(std::string_view text);

/// `matrix r c`, then r rows of c rationals.
std::string write_matrix(const DenseMatrix& m);
DenseMatrix read_matrix(std::string_view text);

/// `polynomial n`, then one term per line: `p/q : e1 ... en`.
std::string write_polynomial(const Polynomial& f);
Polynomial read_polynomial(std::string_view text);

/// `cptp-program 1` followed by meta, objective, eq and map blocks.
std::string write_program(const CpTensorProgram& prog);
CpTensorProgram read_program(std::string_view text);

/// `cptp-dual 1` followed by meta, base, scalar and slot blocks.
std::string write_dual(const CopositiveProgram& dual);
CopositiveProgram read_dual(std::string_view text);

}  // namespace cptp
