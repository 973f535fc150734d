#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "error.hpp"
#include "fock.hpp"
#include "io.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace qrc;
using fock::Complex;

TEST_CASE("ladder operators") {
  SUBCASE("d=2 annihilation has the single sqrt(1) entry") {
    auto l = fock::build_ladder(2);
    CHECK(l.a.entries(0, 1).real() == doctest::Approx(1.0));
    CHECK(std::abs(l.a.entries(0, 0)) == 0.0);
    CHECK(std::abs(l.a.entries(1, 0)) == 0.0);
    CHECK(std::abs(l.a.entries(1, 1)) == 0.0);
  }

  SUBCASE("d=3 position matrix elements") {
    auto l = fock::build_ladder(3);
    CHECK(l.x.entries(1, 0).real() == doctest::Approx(1.0));
    CHECK(l.x.entries(2, 1).real() == doctest::Approx(std::sqrt(2.0)));
  }

  SUBCASE("number operator is diagonal 0..d-1 exactly") {
    auto l = fock::build_ladder(12);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) {
        if (i == j)
          CHECK(l.n.entries(i, j) == Complex(double(i), 0.0));
        else
          CHECK(l.n.entries(i, j) == Complex(0.0, 0.0));
      }
  }

  SUBCASE("truncated commutator [a, a_dag] from direct multiplication") {
    auto l = fock::build_ladder(10);
    fock::Mat comm = l.a.entries * l.a_dag.entries -
                     l.a_dag.entries * l.a.entries;
    for (int i = 0; i < 9; ++i)
      CHECK(comm(i, i).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(comm(9, 9).real() == doctest::Approx(-9.0).epsilon(1e-14));
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        if (i != j) CHECK(std::abs(comm(i, j)) < 1e-14);
  }

  SUBCASE("dimension below 2 is rejected") {
    CHECK_THROWS_AS(fock::build_ladder(1), Error);
  }
}

TEST_CASE("coherent states") {
  SUBCASE("alpha = 0 is the vacuum") {
    auto psi = fock::coherent_state({0.0, 0.0}, 8);
    CHECK(std::abs(psi.amps(0) - Complex(1.0, 0.0)) < 1e-15);
    for (int n = 1; n < 8; ++n) CHECK(std::abs(psi.amps(n)) == 0.0);
    CHECK_FALSE(psi.truncation_warning);
  }

  SUBCASE("truncation retains the quoted weight for alpha = 1+i") {
    // the first 21 number states (n <= 20) hold all but 6.5e-15 of the
    // state; with one level fewer the leakage is ~6.4e-14
    CHECK(fock::coherent_truncated_weight({1.0, 1.0}, 21) >=
          1.0 - 6.5e-15);
    CHECK(fock::coherent_truncated_weight({1.0, 1.0}, 20) >= 1.0 - 1e-13);
    CHECK(fock::coherent_truncated_weight({1.0, 1.0}, 20) <= 1.0 - 1e-14);
  }

  SUBCASE("returned norm is exactly renormalized") {
    for (auto alpha : {Complex(1.0, 1.0), Complex(-2.5, 0.3)}) {
      auto psi = fock::coherent_state(alpha, 25);
      CHECK(psi.amps.norm() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }

  SUBCASE("populations follow the Poisson law within leakage") {
    Complex alpha(1.0, 1.0);
    double a2 = std::norm(alpha);
    auto psi = fock::coherent_state(alpha, 30);
    double expected = std::exp(-a2);
    for (int n = 0; n < 12; ++n) {
      CHECK(std::norm(psi.amps(n)) ==
            doctest::Approx(expected).epsilon(1e-10));
      expected *= a2 / double(n + 1);
    }
  }

  SUBCASE("poor containment raises the warning flag") {
    auto psi = fock::coherent_state({3.0, 0.0}, 10); // |alpha|^2 = 9 > 5
    CHECK(psi.truncation_warning);
  }
}

TEST_CASE("cat states") {
  SUBCASE("alpha = 0 degenerates to the vacuum with a flag") {
    auto cat = fock::cat_state({0.0, 0.0}, 10);
    CHECK(cat.degenerate);
    CHECK(std::abs(cat.amps(0) - Complex(1.0, 0.0)) < 1e-15);
  }

  SUBCASE("odd Fock levels vanish by parity") {
    auto cat = fock::cat_state({1.0, 1.0}, 24);
    for (int n = 1; n < 24; n += 2) CHECK(std::abs(cat.amps(n)) < 1e-16);
    CHECK(cat.amps.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("mixed cat has unit trace and the even+odd diagonal") {
    Complex alpha(1.0, 1.0);
    auto mixed = fock::mixed_cat(alpha, 24);
    CHECK(mixed.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    mixed.check_valid();

    // |a><a| + |-a><-a| splits into the even and odd cat projectors
    auto even = fock::cat_state(alpha, 24);
    auto plus = fock::coherent_state(alpha, 24);
    auto minus = fock::coherent_state(-alpha, 24);
    fock::Vec odd = plus.amps - minus.amps;
    odd.normalize();
    double w_even = 0.5 * std::norm((plus.amps + minus.amps).norm()) / 2.0;
    double w_odd = 1.0 - w_even;
    for (int n = 0; n < 24; ++n) {
      double diag = mixed.entries(n, n).real();
      double reconstructed = w_even * std::norm(even.amps(n)) +
                             w_odd * std::norm(odd(n));
      CHECK(diag == doctest::Approx(reconstructed).epsilon(1e-9));
    }
  }
}

TEST_CASE("haar random states") {
  SUBCASE("single forced component gives |0>") {
    std::vector<double> zeta = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    auto psi = fock::haar_from_gaussians(zeta, 3, 8);
    CHECK(std::abs(psi.amps(0) - Complex(1.0, 0.0)) < 1e-15);
    for (int n = 1; n < 8; ++n) CHECK(std::abs(psi.amps(n)) == 0.0);
  }

  SUBCASE("unit norm and determinism") {
    auto a = fock::haar_random_state(7, 25, 99);
    auto b = fock::haar_random_state(7, 25, 99);
    CHECK(a.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((a.amps - b.amps).norm() == 0.0);
    auto c = fock::haar_random_state(7, 25, 100);
    CHECK((a.amps - c.amps).norm() > 1e-3);
  }

  SUBCASE("support limited to the first d levels") {
    auto psi = fock::haar_random_state(5, 20, 7);
    for (int n = 5; n < 20; ++n) CHECK(std::abs(psi.amps(n)) == 0.0);
  }

  SUBCASE("d above the truncation is rejected") {
    CHECK_THROWS_AS(fock::haar_random_state(11, 10, 1), Error);
  }

  SUBCASE("population means match the Haar law over 10^4 samples") {
    // E|<n|psi>|^2 = 1/5; Var = (d-1)/(d^2 (d+1)) for d = 5
    const int d = 5, samples = 10000;
    std::vector<double> mean(d, 0.0);
    for (int s = 0; s < samples; ++s) {
      auto psi = fock::haar_random_state(d, d, uint64_t(s) + 1);
      for (int n = 0; n < d; ++n) mean[size_t(n)] += std::norm(psi.amps(n));
    }
    double sigma = std::sqrt(double(d - 1) / (double(d) * d * (d + 1)));
    double tol = 4.0 * sigma / std::sqrt(double(samples));
    for (int n = 0; n < d; ++n)
      CHECK(std::abs(mean[size_t(n)] / samples - 1.0 / d) < tol);
  }
}

TEST_CASE("state serialization round trip") {
  auto psi = fock::haar_random_state(6, 10, 2024);
  auto dir = qrc_test::make_tmp_dir("fock");
  io::write_amplitudes_csv(psi.amps, dir + "/state.csv");
  io::write_amplitudes_json(psi.amps, dir + "/state.json");

  auto csv = qrc_test::slurp(dir + "/state.csv");
  CHECK(csv.rfind("n,re,im\n", 0) == 0);
  // parse back and compare bit-exactly (17 significant digits)
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  int n = 0;
  while (std::getline(ss, line)) {
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    double re = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    double im = std::stod(line.substr(c2 + 1));
    CHECK(re == psi.amps(n).real());
    CHECK(im == psi.amps(n).imag());
    ++n;
  }
  CHECK(n == 10);
  CHECK(qrc_test::slurp(dir + "/state.json").find("\"dim\": 10") !=
        std::string::npos);
}
