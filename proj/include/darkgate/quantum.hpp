#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "darkgate/types.hpp"

namespace darkgate {

// Product basis of two atoms. Each atom has an ordered list of level
// labels; a basis state is a (control-level, target-level) index pair.
// The full two-atom basis is row-major with the control index major:
// state k = (control k/6, target k%6). Reduced bases (the dark-state
// chain, the leakage chain, the blockade pair) are explicit subsets of
// the same level sets.
//
// Level order, control atom: 0, 1, r, a, a', b'
// Level order, target atom:  0, 1, r, b, b', a'
// Levels with index >= 2 are Rydberg levels (they decay); 0 and 1 are
// the stable qubit levels.
class Basis {
 public:
  Basis(std::vector<std::string> control_levels,
        std::vector<std::string> target_levels,
        std::vector<std::pair<int, int>> states);

  // All 36 product states of the two six-level atoms.
  static Basis full_two_atom();
  // {|r1>, |rr>, |ab>}: the driven exchange chain hosting the dark state.
  static Basis dark_chain();
  // Dark chain plus the leakage pair states {|a'b'>, |b'a'>}.
  static Basis leakage_chain();
  // {|r1>, |rr>}: the two-level blockade system.
  static Basis blockade_pair();

  int dim() const { return static_cast<int>(states_.size()); }
  const std::pair<int, int>& state(int i) const { return states_.at(i); }
  const std::vector<std::string>& control_levels() const {
    return control_levels_;
  }
  const std::vector<std::string>& target_levels() const {
    return target_levels_;
  }

  // Concatenated pair label, e.g. "r1", "ab", "a'b'".
  std::string label(int i) const;
  // Index of the state with the given per-atom levels; -1 if absent.
  int index_of(const std::string& control_level,
               const std::string& target_level) const;
  // Index by concatenated pair label; throws ConfigError if absent.
  int index_of_label(const std::string& pair_label) const;

  // Number of Rydberg (decaying) labels in state i: 0, 1 or 2.
  int rydberg_count(int i) const;

 private:
  std::vector<std::string> control_levels_;
  std::vector<std::string> target_levels_;
  std::vector<std::pair<int, int>> states_;
};

// Dense complex square operator with a constructor-declared hermiticity
// flag. If the flag is set the constructor verifies
// max|H - H^dag| <= 1e-12 * max|H| entrywise and throws otherwise.
class OperatorMatrix {
 public:
  OperatorMatrix(Matrix entries, bool hermitian);

  const Matrix& entries() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  bool hermitian() const { return hermitian_; }

 private:
  Matrix entries_;
  bool hermitian_;
};

// Exact dense matrix-vector product; throws DimensionError on mismatch.
StateVector matvec(const OperatorMatrix& op, const StateVector& psi);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // orthonormal columns, matching order
};

// Eigendecomposition of a Hermitian operator (dimension <= 36).
// Requires the hermitian flag; throws ConfigError otherwise.
EigenSystem eig_hermitian(const OperatorMatrix& op);

}  // namespace darkgate
