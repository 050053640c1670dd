#include <algorithm>
#include <cmath>

#include "freespec/rigidity.hpp"

namespace freespec::rigidity {

std::size_t WordPoly::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : coeffs) {
    if (c != Complex(0.0)) d = std::max(d, w.size());
  }
  return d;
}

WordPoly& WordPoly::add(Word w, Complex c) {
  coeffs[std::move(w)] += c;
  return *this;
}

Matrix word_eval(const Word& w, const MatrixTuple& x) {
  Matrix out = Matrix::identity(x.n());
  for (int letter : w) {
    if (letter < 1 || static_cast<std::size_t>(letter) > x.g()) {
      throw Error(ErrorCode::InvalidArgument,
                  "letter x_" + std::to_string(letter) + " outside 1.." + std::to_string(x.g()));
    }
    out = out * x[static_cast<std::size_t>(letter - 1)];
  }
  return out;
}

namespace {

// All words of the given length over g letters, in lexicographic order.
std::vector<Word> words_of_length(std::size_t g, std::size_t len) {
  std::vector<Word> out;
  Word w(len, 1);
  for (;;) {
    out.push_back(w);
    std::size_t i = len;
    while (i > 0 && static_cast<std::size_t>(w[i - 1]) == g) w[--i] = 1;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

}  // namespace

bool is_nilpotent_of_order(const MatrixTuple& x, std::size_t order) {
  if (order == 0) return false;
  double scale = 1.0;
  for (const Matrix& m : x.mats()) scale = std::max(scale, m.max_abs());
  const double cutoff = 1e-12 * std::pow(scale, static_cast<double>(order));
  for (const Word& w : words_of_length(x.g(), order)) {
    if (word_eval(w, x).max_abs() > cutoff) return false;
  }
  return true;
}

Matrix nilpotent_eval(const WordPoly& f, const MatrixTuple& x, std::size_t order) {
  if (!is_nilpotent_of_order(x, order)) {
    throw Error(ErrorCode::NotNilpotent,
                "tuple is not nilpotent of order " + std::to_string(order));
  }
  Matrix out(x.n(), x.n());
  for (const auto& [w, c] : f.coeffs) {
    if (w.size() >= order) continue;
    out += c * word_eval(w, x);
  }
  return out;
}

MatrixTuple tx(Complex t1, Complex t2) {
  return MatrixTuple({Matrix::from_rows({{0, t1}, {0, 0}}), Matrix::from_rows({{0, t2}, {0, 0}})});
}

MatrixTuple t_pair(Complex kappa, Complex lambda, Complex mu, Complex nu) {
  return MatrixTuple({Matrix::from_rows({{0, lambda, 0}, {0, 0, kappa}, {0, 0, 0}}),
                      Matrix::from_rows({{0, nu, 0}, {0, 0, mu}, {0, 0, 0}})});
}

}  // namespace freespec::rigidity
