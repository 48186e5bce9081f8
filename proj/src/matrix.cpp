#include "augsimp/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace augsimp {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

namespace {

// Scale each row to a common integer form. Row scaling preserves rank, and
// the fraction-free elimination below then stays in mpz arithmetic.
std::vector<std::vector<mpz_class>> integer_rows(const RationalMatrix& a) {
  std::vector<std::vector<mpz_class>> m(a.rows, std::vector<mpz_class>(a.cols));
  for (int i = 0; i < a.rows; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < a.cols; ++j) {
      const mpz_class& d = a.at(i, j).get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      l = l / g * d;
    }
    for (int j = 0; j < a.cols; ++j) {
      const Rational& q = a.at(i, j);
      m[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  return m;
}

}  // namespace

int rank(const RationalMatrix& a) {
  if (a.rows == 0 || a.cols == 0) return 0;
  auto m = integer_rows(a);
  const int rows = a.rows, cols = a.cols;
  std::vector<int> colp(cols);
  for (int j = 0; j < cols; ++j) colp[j] = j;

  mpz_class prev = 1;
  int step = 0;
  while (step < rows && step < cols) {
    // First nonzero of the working submatrix, scanning row-major.
    int pr = -1, pc = -1;
    for (int i = step; i < rows && pr < 0; ++i)
      for (int j = step; j < cols; ++j)
        if (m[i][colp[j]] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    std::swap(m[step], m[pr]);
    std::swap(colp[step], colp[pc]);

    const mpz_class& piv = m[step][colp[step]];
    for (int i = step + 1; i < rows; ++i) {
      for (int j = step + 1; j < cols; ++j) {
        mpz_class num = m[i][colp[j]] * piv - m[i][colp[step]] * m[step][colp[j]];
        if (!mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()))
          throw std::logic_error("fraction-free elimination hit a non-integral intermediate");
        mpz_divexact(m[i][colp[j]].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][colp[step]] = 0;
    }
    prev = piv;
    ++step;
  }
  return step;
}

namespace {

// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<Rational>>& m, int cols) {
  std::vector<int> pivots;
  int row = 0;
  const int rows = static_cast<int>(m.size());
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    for (int i = row; i < rows; ++i)
      if (m[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    Rational inv = m[row][col];
    for (int j = col; j < cols; ++j) m[row][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (int j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a) {
  std::vector<std::vector<Rational>> m(a.rows, std::vector<Rational>(a.cols));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) m[i][j] = a.at(i, j);
  std::vector<int> pivots = rref(m, a.cols);

  std::vector<bool> is_pivot(a.cols, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < a.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(a.cols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_span(const std::vector<Rational>& v,
             const std::vector<std::vector<Rational>>& basis) {
  for (const auto& b : basis)
    if (b.size() != v.size())
      throw std::invalid_argument("in_span: vector dimensions disagree");
  if (basis.empty()) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  const int n = static_cast<int>(v.size());
  const int k = static_cast<int>(basis.size());
  RationalMatrix b(n, k), bv(n, k + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      b.at(i, j) = basis[j][i];
      bv.at(i, j) = basis[j][i];
    }
    bv.at(i, k) = v[i];
  }
  return rank(b) == rank(bv);
}

std::string rational_str(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string dump(const RationalMatrix& a) {
  std::ostringstream out;
  if (!a.col_labels.empty()) {
    out << '%';
    for (int j = 0; j < a.cols; ++j) out << '\t' << a.col_labels[j];
    out << '\n';
  }
  for (int i = 0; i < a.rows; ++i) {
    if (!a.row_labels.empty()) out << '%' << a.row_labels[i] << '\t';
    for (int j = 0; j < a.cols; ++j) {
      if (j) out << '\t';
      out << rational_str(a.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace augsimp
