// Hamiltonian builders: chain spectra, restriction consistency, decay terms.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "darkgate/hamiltonians.hpp"
#include "darkgate/quantum.hpp"

using namespace darkgate;

namespace {

// Restriction of a full two-atom operator to a labelled sub-basis.
Matrix restrict_to(const Matrix& full, const Basis& full_basis,
                   const std::vector<std::string>& labels) {
  const int n = static_cast<int>(labels.size());
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = full(full_basis.index_of_label(labels[i]),
                       full_basis.index_of_label(labels[j]));
  return out;
}

CouplingSet leakage_couplings() {
  CouplingSet c;
  c.b = 1.0;
  c.b_rr = 0.66;
  c.b_ab = -2.17;
  c.dw_rr = -7.4;
  c.dw_ab = 56.9;
  c.dw = c.b_ab * c.b_ab / c.dw_ab;
  return c;
}

}  // namespace

TEST_CASE("three-state chain: eigenvalues are {-nu, 0, +nu}") {
  const double b = 1.0;
  for (double w : {0.1, 0.5, 2.0}) {
    EigenSystem es = eig_hermitian(build_h3(w, b));
    const double nu = std::sqrt(b * b + 0.25 * w * w);
    CHECK(es.values(0) == doctest::Approx(-nu).epsilon(1e-12));
    CHECK(es.values(1) == doctest::Approx(0.0).scale(nu).epsilon(1e-12));
    CHECK(es.values(2) == doctest::Approx(nu).epsilon(1e-12));
  }
}

TEST_CASE("three-state chain: the zero mode is the dark state (b, 0, -w/2)") {
  const double b = 1.3, w = 0.7;
  EigenSystem es = eig_hermitian(build_h3(w, b));
  StateVector v = es.vectors.col(1);  // eigenvalue 0 sits in the middle
  // No weight on the doubly-excited middle state.
  CHECK(std::abs(v(1)) <= 1e-12);
  // Amplitude ratio between |ab> and |r1> is -w/(2b).
  const Complex ratio = v(2) / v(0);
  CHECK(ratio.real() == doctest::Approx(-0.5 * w / b).epsilon(1e-12));
  CHECK(std::abs(ratio.imag()) <= 1e-12);
}

TEST_CASE("three-state chain: the zero eigenvalue does not move with b") {
  for (double b : {0.5, 1.0, 7.0}) {
    EigenSystem es = eig_hermitian(build_h3(0.9, b));
    CHECK(std::abs(es.values(1)) <= 1e-12 * std::max(1.0, b));
  }
}

TEST_CASE("five-state chain decouples into h3 plus bare defects when the "
          "leakage couplings vanish") {
  CouplingSet c;
  c.b = 1.0;
  c.dw_rr = 2.5;
  c.dw_ab = -1.75;
  const double w = 0.4;
  EigenSystem es5 = eig_hermitian(build_h5(w, c));
  EigenSystem es3 = eig_hermitian(build_h3(w, c.b));
  std::vector<double> expect(es3.values.data(), es3.values.data() + 3);
  expect.push_back(c.dw_rr);
  expect.push_back(c.dw_ab);
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 5; ++i)
    CHECK(es5.values(i) == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("five-state chain entries sit on the documented chain graph") {
  CouplingSet c = leakage_couplings();
  const double w = 0.123;
  Matrix h = build_h5(w, c).entries();
  CHECK(h(0, 1) == Complex(0.5 * w, 0));
  CHECK(h(1, 0) == Complex(0.5 * w, 0));
  CHECK(h(1, 2) == Complex(c.b, 0));
  CHECK(h(2, 2) == Complex(c.dw, 0));
  CHECK(h(1, 3) == Complex(c.b_rr, 0));
  CHECK(h(3, 3) == Complex(c.dw_rr, 0));
  CHECK(h(2, 4) == Complex(c.b_ab, 0));
  CHECK(h(4, 4) == Complex(c.dw_ab, 0));
  // Nothing couples |r1> to the leakage states directly.
  CHECK(h(0, 3) == Complex(0, 0));
  CHECK(h(0, 4) == Complex(0, 0));
  CHECK(h(3, 4) == Complex(0, 0));
}

TEST_CASE("compensating defect zeroes the dressed level of its channel") {
  // The isolated {|ab>, |b'a'>} channel is [[dw, b_ab], [b_ab, dw_ab]].
  // Setting dw = b_ab^2/dw_ab makes its determinant vanish, so the
  // dressed |ab>-like eigenvalue is exactly zero: the defect cancels the
  // second-order shift -b_ab^2/dw_ab that would otherwise drag the dark
  // state away from zero energy.
  const double b_ab = -2.17, dw_ab = 56.9;
  const double dw = b_ab * b_ab / dw_ab;
  Matrix block(2, 2);
  block << dw, b_ab, b_ab, dw_ab;
  EigenSystem es = eig_hermitian(OperatorMatrix(block, true));
  // One eigenvalue at zero (to solver precision on a ~57-scale matrix),
  // the other carries the whole trace.
  CHECK(std::abs(es.values(0)) <= 1e-10 * std::abs(dw_ab));
  CHECK(es.values(1) == doctest::Approx(dw + dw_ab).epsilon(1e-12));
}

TEST_CASE("blockade pair: eigenvalues are (b_sh +- sqrt(b_sh^2 + w^2))/2") {
  const double w = 0.3, b_sh = 1.0;
  EigenSystem es = eig_hermitian(build_h2_blockade(w, b_sh));
  const double bar = std::sqrt(b_sh * b_sh + w * w);
  CHECK(es.values(0) == doctest::Approx(0.5 * (b_sh - bar)).epsilon(1e-12));
  CHECK(es.values(1) == doctest::Approx(0.5 * (b_sh + bar)).epsilon(1e-12));

  EigenSystem off = eig_hermitian(build_h2_blockade(0.0, 2.0));
  CHECK(off.values(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(off.values(1) == doctest::Approx(2.0).epsilon(1e-14));

  EigenSystem res = eig_hermitian(build_h2_blockade(1.0, 0.0));
  CHECK(res.values(0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(res.values(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("full two-atom Hamiltonian restricts to the five-state chain") {
  CouplingSet c = leakage_couplings();
  Segment seg;
  seg.duration = 10.0;
  seg.target_pulse = make_shifted_gaussian(10.0, 2.0, 2.0 * kPi);
  seg.couplings = c;
  Schedule s;
  s.segments.push_back(seg);

  Basis full = Basis::full_two_atom();
  for (double t : {1.0, 5.0, 7.3}) {
    Matrix h36 = build_full(s, t).entries();
    Matrix sub = restrict_to(h36, full, {"r1", "rr", "ab", "a'b'", "b'a'"});
    Matrix h5 = build_h5(seg.target_pulse->value(t), c).entries();
    CHECK((sub - h5).cwiseAbs().maxCoeff() <= 1e-14 * 60.0);
  }
}

TEST_CASE("full two-atom Hamiltonian restricts to the blockade pair") {
  CouplingSet c;
  c.b = 1.0;
  c.b_sh = 1.0;
  Segment seg;
  seg.duration = 4.0;
  seg.target_pulse = make_square(4.0, 2.0 * kPi);
  seg.couplings = c;
  Schedule s;
  s.segments.push_back(seg);

  Basis full = Basis::full_two_atom();
  Matrix sub = restrict_to(build_full(s, 2.0).entries(), full, {"r1", "rr"});
  Matrix h2 = build_h2_blockade(seg.target_pulse->value(2.0), c.b_sh).entries();
  CHECK((sub - h2).cwiseAbs().maxCoeff() <= 1e-14 * 10.0);
}

TEST_CASE("full Hamiltonian with every drive off is identically zero") {
  Segment seg;
  seg.duration = 1.0;
  Schedule s;
  s.segments.push_back(seg);
  CHECK(build_full(s, 0.5).entries().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decay term subtracts i/2 gamma per Rydberg label") {
  Basis full = Basis::full_two_atom();
  Segment seg;
  seg.duration = 1.0;
  Schedule s;
  s.segments.push_back(seg);
  OperatorMatrix h0 = build_full(s, 0.5);

  SUBCASE("gamma = 0 leaves the operator untouched and hermitian") {
    OperatorMatrix h = apply_decay(h0, DecayModel{0.0}, full);
    CHECK(h.hermitian());
    CHECK((h.entries() - h0.entries()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("gamma > 0 shifts diagonals by -i gamma n_ry / 2") {
    const double gamma = 1e-3;
    Matrix h = apply_decay(h0, DecayModel{gamma}, full).entries();
    CHECK(h(full.index_of_label("rr"), full.index_of_label("rr")).imag() ==
          doctest::Approx(-gamma).epsilon(1e-14));
    CHECK(h(full.index_of_label("r1"), full.index_of_label("r1")).imag() ==
          doctest::Approx(-0.5 * gamma).epsilon(1e-14));
    CHECK(h(full.index_of_label("01"), full.index_of_label("01")).imag() ==
          0.0);
    // Four of six levels per atom decay: total imaginary trace is
    // -(gamma/2) * (6*4 + 6*4).
    CHECK(h.trace().imag() == doctest::Approx(-24.0 * gamma).epsilon(1e-12));
  }
}

TEST_CASE("dispersive warnings fire only when a defect is too small") {
  CouplingSet ok = leakage_couplings();
  CHECK(ok.dispersive_warnings().empty());

  CouplingSet bad = ok;
  bad.dw_rr = 0.5 * bad.b_rr;
  auto warnings = bad.dispersive_warnings();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("dw_rr") != std::string::npos);

  bad.dw_ab = 0.0;
  bad.b_ab = 0.1;
  CHECK(bad.dispersive_warnings().size() == 2);

  CouplingSet none;  // no leakage couplings, nothing to warn about
  none.b = 1.0;
  CHECK(none.dispersive_warnings().empty());
}

TEST_CASE("schedule bookkeeping: durations, segment lookup, boundaries") {
  Segment a, b, c;
  a.duration = 1.0;
  b.duration = 2.0;
  c.duration = 0.5;
  Schedule s;
  s.segments = {a, b, c};
  CHECK(s.total_duration() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(s.segment_start(0) == 0.0);
  CHECK(s.segment_start(1) == doctest::Approx(1.0));
  CHECK(s.segment_start(2) == doctest::Approx(3.0));
  CHECK(s.segment_at(0.0) == 0);
  CHECK(s.segment_at(0.999) == 0);
  CHECK(s.segment_at(1.0) == 1);  // boundaries belong to the later segment
  CHECK(s.segment_at(2.9999) == 1);
  CHECK(s.segment_at(3.0) == 2);
  CHECK(s.segment_at(3.5) == 2);  // final boundary belongs to the last
  CHECK_THROWS_AS(s.segment_at(4.0), const ConfigError&);
  Schedule empty;
  CHECK_THROWS_AS(empty.segment_at(0.0), const ConfigError&);
}
