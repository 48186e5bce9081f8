#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace augsimp {

using Rational = mpq_class;

// Dense exact-rational matrix with optional row/column labels for rendering.
// Immutable by convention once built: every operation below is a pure function.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> entries;  // row-major, length rows*cols
  std::vector<std::string> row_labels;  // empty, or length rows
  std::vector<std::string> col_labels;  // empty, or length cols

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), entries(r * c, Rational(0)) {}

  const Rational& at(int i, int j) const { return entries[i * cols + j]; }
  Rational& at(int i, int j) { return entries[i * cols + j]; }

  static RationalMatrix identity(int n);
  RationalMatrix transposed() const;
};

// Exact rank by fraction-free elimination over arbitrary-precision integers.
// Pivot choice is the first nonzero entry of the working submatrix in
// row-major order, so elimination traces are reproducible.
int rank(const RationalMatrix& a);

// Canonical basis of {v : Av = 0}: one vector per free column of the reduced
// row echelon form, with a 1 in the free coordinate. Empty iff rank = cols.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a);

// Exact membership of v in the span of the given vectors.
// Throws std::invalid_argument on dimension mismatch.
bool in_span(const std::vector<Rational>& v,
             const std::vector<std::vector<Rational>>& basis);

// Render: '%'-prefixed label lines (when labels are present), then one row
// per line with tab-separated entries written as "p" or "p/q".
std::string dump(const RationalMatrix& a);

std::string rational_str(const Rational& q);

// mpq_class's two-argument constructor keeps the fraction as given; this
// helper reduces it so the gcd-1, positive-denominator invariant holds.
Rational make_rational(const mpz_class& num, const mpz_class& den);

}  // namespace augsimp
