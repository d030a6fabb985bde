#include "darkgate/quantum.hpp"

#include <set>

#include <Eigen/Eigenvalues>

namespace darkgate {

namespace {

const std::vector<std::string>& control_level_names() {
  static const std::vector<std::string> v = {"0", "1", "r", "a", "a'", "b'"};
  return v;
}

const std::vector<std::string>& target_level_names() {
  static const std::vector<std::string> v = {"0", "1", "r", "b", "b'", "a'"};
  return v;
}

}  // namespace

Basis::Basis(std::vector<std::string> control_levels,
             std::vector<std::string> target_levels,
             std::vector<std::pair<int, int>> states)
    : control_levels_(std::move(control_levels)),
      target_levels_(std::move(target_levels)),
      states_(std::move(states)) {
  std::set<std::pair<int, int>> seen;
  for (const auto& s : states_) {
    if (s.first < 0 || s.first >= static_cast<int>(control_levels_.size()) ||
        s.second < 0 || s.second >= static_cast<int>(target_levels_.size())) {
      throw ConfigError("Basis: state refers to an undefined level index");
    }
    if (!seen.insert(s).second) {
      throw ConfigError("Basis: duplicate state label (" +
                        control_levels_[s.first] + ", " +
                        target_levels_[s.second] + ")");
    }
  }
}

Basis Basis::full_two_atom() {
  std::vector<std::pair<int, int>> states;
  states.reserve(36);
  for (int c = 0; c < 6; ++c)
    for (int t = 0; t < 6; ++t) states.emplace_back(c, t);
  return Basis(control_level_names(), target_level_names(), std::move(states));
}

Basis Basis::dark_chain() {
  return Basis(control_level_names(), target_level_names(),
               {{2, 1}, {2, 2}, {3, 3}});  // r1, rr, ab
}

Basis Basis::leakage_chain() {
  return Basis(control_level_names(), target_level_names(),
               {{2, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}});
}

Basis Basis::blockade_pair() {
  return Basis(control_level_names(), target_level_names(),
               {{2, 1}, {2, 2}});  // r1, rr
}

std::string Basis::label(int i) const {
  const auto& s = states_.at(i);
  return control_levels_[s.first] + target_levels_[s.second];
}

int Basis::index_of(const std::string& control_level,
                    const std::string& target_level) const {
  for (int i = 0; i < dim(); ++i) {
    const auto& s = states_[i];
    if (control_levels_[s.first] == control_level &&
        target_levels_[s.second] == target_level) {
      return i;
    }
  }
  return -1;
}

int Basis::index_of_label(const std::string& pair_label) const {
  for (int i = 0; i < dim(); ++i) {
    if (label(i) == pair_label) return i;
  }
  throw ConfigError("Basis: no state labelled '" + pair_label + "'");
}

int Basis::rydberg_count(int i) const {
  const auto& s = states_.at(i);
  return (s.first >= 2 ? 1 : 0) + (s.second >= 2 ? 1 : 0);
}

OperatorMatrix::OperatorMatrix(Matrix entries, bool hermitian)
    : entries_(std::move(entries)), hermitian_(hermitian) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionError("OperatorMatrix: matrix must be square, got " +
                         std::to_string(entries_.rows()) + "x" +
                         std::to_string(entries_.cols()));
  }
  if (hermitian_) {
    const double scale = entries_.cwiseAbs().maxCoeff();
    const double defect =
        (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-12 * std::max(scale, 1e-300)) {
      throw ConfigError(
          "OperatorMatrix: declared hermitian but max|H - H^dag| = " +
          std::to_string(defect) + " exceeds 1e-12 * max|H|");
    }
  }
}

StateVector matvec(const OperatorMatrix& op, const StateVector& psi) {
  if (op.dim() != psi.size()) {
    throw DimensionError("matvec: operator dimension " +
                         std::to_string(op.dim()) +
                         " does not match state dimension " +
                         std::to_string(psi.size()));
  }
  return op.entries() * psi;
}

EigenSystem eig_hermitian(const OperatorMatrix& op) {
  if (!op.hermitian()) {
    throw ConfigError("eig_hermitian: operator is not declared hermitian");
  }
  if (op.dim() > 36) {
    throw ConfigError("eig_hermitian: dimension " + std::to_string(op.dim()) +
                      " exceeds the supported maximum of 36");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.entries());
  if (solver.info() != Eigen::Success) {
    throw NumericsError("eig_hermitian: eigensolver failed to converge");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace darkgate
