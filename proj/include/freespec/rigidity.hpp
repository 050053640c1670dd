#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freespec/error.hpp"
#include "freespec/pencil.hpp"

namespace freespec::rigidity {

/// Word in the letters x_1, x_2, ... stored as 1-based indices.
using Word = std::vector<int>;

/// Noncommutative polynomial sum_w f_w w with finitely many terms.
struct WordPoly {
  std::map<Word, Complex> coeffs;

  std::size_t degree() const;
  WordPoly& add(Word w, Complex c);
};

/// X_{j1} X_{j2} ... X_{jk}; the empty word gives I.
Matrix word_eval(const Word& w, const MatrixTuple& x);

/// True when every word of length `order` vanishes on x (entries below
/// 1e-12 times the scale of x).
bool is_nilpotent_of_order(const MatrixTuple& x, std::size_t order);

/// sum_{|w| < order} f_w X^w. Throws NotNilpotent unless x is nilpotent of
/// the given order.
Matrix nilpotent_eval(const WordPoly& f, const MatrixTuple& x, std::size_t order);

/// ((0 t1; 0 0), (0 t2; 0 0))
MatrixTuple tx(Complex t1, Complex t2);
/// T_1 = lambda E12 + kappa E23, T_2 = nu E12 + mu E23.
MatrixTuple t_pair(Complex kappa, Complex lambda, Complex mu, Complex nu);

MembershipVerdict classify_tx(const ETuple& e, Complex t1, Complex t2,
                              double tol = kDefaultTol);
/// |lambda|^2 C1* C1 + |mu|^2 C2 C2* against I.
MembershipVerdict theta_membership(const ETuple& e, Complex lambda, Complex mu,
                                   double tol = kDefaultTol);
/// e_membership at t_pair(kappa, lambda, mu, nu).
MembershipVerdict classify_t(const ETuple& e, Complex kappa, Complex lambda, Complex mu,
                             Complex nu, double tol = kDefaultTol);
/// Same region from the block diagonal
/// diag(|nu|^2 C2C2*, |lambda|^2 C1*C1 + |mu|^2 C2C2*, |kappa|^2 C1*C1).
MembershipVerdict classify_t_block_form(const ETuple& e, Complex kappa, Complex lambda,
                                        Complex mu, Complex nu, double tol = kDefaultTol);

/// e = e^{i theta}(|b|^2 - 1) and f = e^{i theta} conj(b) e.
Complex forced_e(Complex b, double theta);
Complex forced_f(Complex b, double theta);

struct Caratheodory {
  Complex e;
  Complex f;
  Matrix t;                         // b on the diagonal, e above it, f in the corner
  double norm;                      // ||T||
  std::vector<double> defect_eigs;  // eigenvalues of I - T*T, ascending
  std::vector<double> codefect_eigs;// eigenvalues of I - TT*, ascending
  double defect_trace;              // trace(I - T*T)
};

/// Throws NotInDisk when |b| >= 1.
Caratheodory caratheodory_extend(Complex b, double theta);

enum class ConstraintVariant { TopRow, RightColumn };

struct ConstraintForce {
  Complex beta;             // alpha e^{i theta} conj(b)
  double norm;              // ||R(alpha, beta)||
  double perturbed_norm;    // ||R(alpha, beta + 0.01 (1 - |b|^2))||
  bool feasible;            // |alpha| <= 1 - |b|^2, needed for R to be a contraction
  bool norm_one;            // |norm - 1| <= 1e-9
  bool perturbation_breaks; // perturbed_norm > 1 + 1e-12
};

/// TopRow: R = [[b, alpha, beta], [0, b, e], [0, 0, b]].
/// RightColumn: R = [[b, e, beta], [0, b, alpha], [0, 0, b]].
Matrix constraint_matrix(Complex b, double theta, Complex alpha, Complex beta,
                         ConstraintVariant variant);
ConstraintForce constraint_force(Complex b, double theta, Complex alpha,
                                 ConstraintVariant variant);

enum class BoundVariant { XstarX, XXstar, YstarY, YYstar };

/// X = [[b, lam e, lam f], [0, b, e], [0, 0, b]]
Matrix lower_bound_x(Complex b, double theta, double lam);
/// Y = [[b, e, lam f], [0, b, lam e], [0, 0, b]]
Matrix lower_bound_y(Complex b, double theta, double lam);

struct LowerBound {
  std::array<std::vector<Complex>, 2> basis;  // orthonormal, spans c-perp
  std::vector<Complex> c;                     // the excluded direction
  Matrix operator_p = Matrix(3, 3);           // X*X, XX*, Y*Y or YY*
  double min_compressed_eig;
};

/// Two-dimensional subspace on which the chosen product is bounded below by
/// lam^2. Throws NotInDisk or BadLambda.
LowerBound lower_bound_subspace(Complex b, double theta, double lam, BoundVariant variant);

enum class CaseKind { Diagonal, Swap };

struct AutoCandidate {
  std::array<Complex, 2> b{};
  Matrix l = Matrix(2, 2);        // linear coefficients l_{j,k}
  std::array<double, 2> theta{};

  /// Candidate whose L has the forced form of the given case.
  static AutoCandidate forced(std::array<Complex, 2> b, std::array<double, 2> theta,
                              CaseKind kind);
};

/// Degree-two truncations of phi_1, phi_2 with every other coefficient zero.
/// Diagonal: phi_j = b_j + e_j x_j + f_j x_j^2. Swap: phi_1 uses x_2 and
/// phi_2 uses x_1. Both cases use |b_j|^2 - 1 in e_j.
std::array<WordPoly, 2> forced_coefficients(const AutoCandidate& cand, CaseKind kind);

struct CriticalLevel {
  double t;
  double lambda_max;
  std::vector<Complex> gamma;  // unit top eigenvector of C1*C1 + C2C2*
  double c1_gamma_norm;        // ||C1 gamma||
  double c2star_gamma_norm;    // ||C2* gamma||
};

/// t = lambda_max(C1*C1 + C2C2*)^{-1/2}. Throws BidiskCase when
/// lambda_max <= 1 + tol.
CriticalLevel critical_level(const ETuple& e, double tol = kDefaultTol);

struct BoundaryDefect {
  double value;
  double t;
  Matrix r1;
  Matrix r2;
  std::vector<Complex> big_gamma;  // unit vector in the intersection
  std::size_t intersection_dim;
};

/// ||R1 G||^2 ||C1 g||^2 + ||R2* G||^2 ||C2* g||^2 at T(1, t, t, 1). Throws
/// BidiskCase or DegenerateIntersection.
BoundaryDefect boundary_defect(const AutoCandidate& cand, const ETuple& e, CaseKind kind,
                               double tol = kDefaultTol);

/// lambda_max(T2*T2 ⊗ C1*C1 + T1T1* ⊗ C2C2*) for T1 = E23, T2 = E12.
double swap_case_refute(const ETuple& e);

enum class LinearCase { Diagonal, Swap, Inconsistent };

struct LinearCaseTable {
  LinearCase kind;
  std::array<double, 2> norms{};  // ||[[b_j, l], [0, b_j]]|| with the relevant l
  bool norms_one = false;
};

/// Throws SingularL when det L is zero within tol.
LinearCaseTable linear_case_table(const AutoCandidate& cand, double tol = kDefaultTol);

struct DefectRow {
  CaseKind kind;
  std::array<Complex, 2> b;
  std::array<double, 2> theta;
  double value;
  std::size_t intersection_dim;
  bool ok;  // within 1e-8 of 1 for the diagonal case at b = 0, else above 1 + 1e-6
};

enum class RigidityCase { Bidisk, Rigid };

struct RigidityReport {
  RigidityCase kind;
  double gram_sum_max_eig;
  std::optional<CriticalLevel> critical;
  std::vector<DefectRow> defects;
  double swap_violation;
  std::size_t failed_rows = 0;
  bool consistent = false;  // every check behaved as the argument requires
  std::string conclusion;
};

struct RigidityOptions {
  std::vector<double> b_grid;  // moduli used for both b_1 and b_2
  std::vector<double> theta_grid{0.0, 1.0, 2.5};
  std::size_t extra_samples = 8;  // seeded complex b per case
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

/// Default b grid {0, 0.1, ..., 0.9}.
std::vector<double> default_b_grid();

RigidityReport rigidity_report(const ETuple& e, const RigidityOptions& opts);

struct LemmaCheck {
  std::string name;
  bool passed;
  std::size_t cases;
  double worst;  // largest violation seen, 0 when none
  std::string detail;
};

/// Every numeric claim of the rigidity argument on desk-scale grids, for the
/// given pair plus seeded random pairs.
std::vector<LemmaCheck> lemma_suite(const ETuple& e, std::uint64_t seed = 0);

}  // namespace freespec::rigidity
