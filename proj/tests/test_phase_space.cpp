#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynamics.hpp"
#include "error.hpp"
#include "fock.hpp"
#include "phase_space.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace qrc;
using fock::Complex;
using fock::DensityMatrix;
using phase_space::PhaseSpaceGrid;

namespace {

PhaseSpaceGrid default_grid() { return PhaseSpaceGrid{}; }

PhaseSpaceGrid grid6(int n = 201) {
  PhaseSpaceGrid g;
  g.x_min = g.p_min = -6.0;
  g.x_max = g.p_max = 6.0;
  g.n_x = g.n_p = n;
  return g;
}

DensityMatrix uniform_mixture(int n, int d_t) {
  DensityMatrix rho;
  rho.dim = d_t;
  rho.entries = fock::Mat::Zero(d_t, d_t);
  for (int i = 0; i < n; ++i) rho.entries(i, i) = 1.0 / double(n);
  return rho;
}

} // namespace

TEST_CASE("wigner function values") {
  SUBCASE("vacuum peak is 1/pi") {
    auto rho = DensityMatrix::pure(fock::fock_state(0, 10));
    auto f = phase_space::wigner(rho, default_grid());
    CHECK(f.values(100, 100) == doctest::Approx(1.0 / M_PI).epsilon(1e-10));
  }

  SUBCASE("|1> dips to -1/pi at the origin") {
    auto rho = DensityMatrix::pure(fock::fock_state(1, 10));
    auto f = phase_space::wigner(rho, default_grid());
    CHECK(f.values(100, 100) == doctest::Approx(-1.0 / M_PI).epsilon(1e-10));
  }

  SUBCASE("coherent state is the closed-form Gaussian") {
    // |alpha> sits at (sqrt2 Re alpha, sqrt2 Im alpha) with the vacuum
    // width; see the ledger note on the displaced-center convention
    Complex alpha(1.0, 1.0);
    auto rho = DensityMatrix::pure(fock::coherent_state(alpha, 30));
    auto g = grid6();
    auto f = phase_space::wigner(rho, g);
    double cx = std::sqrt(2.0) * alpha.real();
    double cp = std::sqrt(2.0) * alpha.imag();
    for (int i = 0; i < g.n_x; i += 8)
      for (int j = 0; j < g.n_p; j += 8) {
        double expect =
            std::exp(-((g.x(i) - cx) * (g.x(i) - cx) +
                       (g.p(j) - cp) * (g.p(j) - cp))) /
            M_PI;
        CHECK(std::abs(f.values(i, j) - expect) < 1e-6);
      }
  }

  SUBCASE("kernel agrees with the defining integral (quadrature oracle)") {
    auto psi = fock::haar_random_state(8, 16, 31);
    auto rho = DensityMatrix::pure(psi);
    auto g = default_grid();
    auto f = phase_space::wigner(rho, g);
    for (auto [i, j] : {std::pair{100, 100}, std::pair{120, 84},
                        std::pair{88, 131}}) {
      double oracle = qrc_test::wigner_quadrature(rho, g.x(i), g.p(j));
      CHECK(f.values(i, j) == doctest::Approx(oracle).epsilon(1e-10));
    }
  }

  SUBCASE("normalizes to 1 for contained states") {
    for (int n : {0, 3, 9}) {
      auto rho = DensityMatrix::pure(fock::fock_state(n, 12));
      auto f = phase_space::wigner(rho, default_grid());
      CHECK(phase_space::field_integral(f) ==
            doctest::Approx(1.0).epsilon(1e-3));
    }
  }

  SUBCASE("parallel evaluation matches serial") {
    auto rho = DensityMatrix::pure(fock::haar_random_state(6, 12, 5));
    auto a = phase_space::wigner(rho, grid6(101), 1);
    auto b = phase_space::wigner(rho, grid6(101), 2);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("grid validation") {
    PhaseSpaceGrid g;
    g.n_x = 200; // even
    CHECK_THROWS_AS(g.validate(), Error);
    g.n_x = 201;
    g.x_max = g.x_min;
    CHECK_THROWS_AS(g.validate(), Error);
  }
}

TEST_CASE("lee-jeong trace form") {
  SUBCASE("coherent states have zero measure") {
    auto rho = DensityMatrix::pure(fock::coherent_state({1.0, 1.0}, 30));
    CHECK(std::abs(phase_space::lee_jeong_trace(rho)) < 1e-8);
  }

  SUBCASE("uniform Fock mixtures have zero measure") {
    for (int n = 1; n <= 8; ++n)
      CHECK(std::abs(phase_space::lee_jeong_trace(uniform_mixture(n, 12))) <
            1e-12);
  }

  SUBCASE("number states give I = n") {
    for (int n = 0; n <= 8; ++n) {
      auto rho = DensityMatrix::pure(fock::fock_state(n, 12));
      CHECK(phase_space::lee_jeong_trace(rho) ==
            doctest::Approx(double(n)).epsilon(1e-10));
    }
  }

  SUBCASE("pure states satisfy I = <N> - |<a>|^2") {
    auto ladder = fock::build_ladder(16);
    for (uint64_t seed : {3u, 14u, 15u}) {
      auto rho = DensityMatrix::pure(fock::haar_random_state(9, 16, seed));
      double n_mean = dynamics::expectation(rho, ladder.n).real();
      auto a_mean = dynamics::expectation(rho, ladder.a);
      CHECK(phase_space::lee_jeong_trace(rho) ==
            doctest::Approx(n_mean - std::norm(a_mean)).epsilon(1e-10));
    }
  }

  SUBCASE("invariant under phase-space rotation") {
    auto rho = DensityMatrix::pure(fock::haar_random_state(8, 14, 21));
    double before = phase_space::lee_jeong_trace(rho);
    for (double theta : {0.3, 1.2}) {
      fock::Mat u = fock::Mat::Zero(14, 14);
      for (int n = 0; n < 14; ++n)
        u(n, n) = std::exp(Complex(0.0, -theta * double(n)));
      DensityMatrix rotated;
      rotated.dim = 14;
      rotated.entries = u * rho.entries * u.adjoint();
      CHECK(std::abs(phase_space::lee_jeong_trace(rotated) - before) < 1e-8);
    }
  }

  SUBCASE("non-Hermitian imaginary residue is rejected") {
    DensityMatrix bad;
    bad.dim = 4;
    bad.entries = fock::Mat::Zero(4, 4);
    bad.entries(0, 0) = 0.5;
    bad.entries(1, 1) = 0.5;
    bad.entries(0, 1) = Complex(0.0, 0.4);
    bad.entries(1, 0) = 0.1; // not the conjugate
    CHECK_THROWS_AS(phase_space::lee_jeong_trace(bad), Error);
  }
}

TEST_CASE("lee-jeong integral form") {
  SUBCASE("coherent Gaussian field vanishes within 2e-3") {
    auto rho = DensityMatrix::pure(fock::coherent_state({1.0, 1.0}, 30));
    auto f = phase_space::wigner(rho, grid6());
    CHECK(std::abs(phase_space::lee_jeong_integral(f)) < 2e-3);
  }

  SUBCASE("zero field integrates to zero") {
    phase_space::WignerField f;
    f.grid = grid6(11);
    f.values = Eigen::MatrixXd::Zero(11, 11);
    CHECK(phase_space::lee_jeong_integral(f) == 0.0);
  }

  SUBCASE("agrees with the trace form on a d=8 random state") {
    auto rho = DensityMatrix::pure(fock::haar_random_state(8, 16, 123));
    auto f = phase_space::wigner(rho, default_grid());
    double trace = phase_space::lee_jeong_trace(rho);
    double integral = phase_space::lee_jeong_integral(f);
    CHECK(std::abs(trace - integral) / std::abs(trace) < 1e-3);
  }

  SUBCASE("number states reproduce I = n through the field") {
    for (int n : {1, 4}) {
      auto rho = DensityMatrix::pure(fock::fock_state(n, 12));
      auto f = phase_space::wigner(rho, default_grid());
      CHECK(phase_space::lee_jeong_integral(f) ==
            doctest::Approx(double(n)).epsilon(2e-3));
    }
  }

  SUBCASE("containment violation raises an error") {
    auto rho = DensityMatrix::pure(fock::coherent_state({3.5, 0.0}, 40));
    auto g = grid6();
    auto f = phase_space::wigner(rho, g);
    CHECK_THROWS_AS(phase_space::lee_jeong_integral(f), Error);
  }
}

TEST_CASE("quantumness clamp") {
  SUBCASE("vacuum and coherent states clamp to zero") {
    CHECK(phase_space::quantumness_Q(
              DensityMatrix::pure(fock::fock_state(0, 10))) == 0.0);
    auto coh = DensityMatrix::pure(fock::coherent_state({1.0, 1.0}, 30));
    CHECK(phase_space::quantumness_Q(coh) == 0.0);
  }

  SUBCASE("|6> gives exactly its excitation number") {
    auto rho = DensityMatrix::pure(fock::fock_state(6, 12));
    CHECK(phase_space::quantumness_Q(rho) ==
          doctest::Approx(6.0).epsilon(1e-10));
  }

  SUBCASE("coherent mixtures are never positive (100 random mixtures)") {
    Rng rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
      int k = 1 + int(rng.uniform() * 5.0);
      DensityMatrix rho;
      rho.dim = 35;
      rho.entries = fock::Mat::Zero(35, 35);
      // Dirichlet weights via normalized exponentials
      std::vector<double> w(static_cast<size_t>(k), 0.0);
      double wsum = 0.0;
      for (double &x : w) {
        x = -std::log(1.0 - rng.uniform());
        wsum += x;
      }
      for (int c = 0; c < k; ++c) {
        double r = 2.0 * std::sqrt(rng.uniform());
        double phi = 2.0 * M_PI * rng.uniform();
        auto psi = fock::coherent_state(
            {r * std::cos(phi), r * std::sin(phi)}, 35);
        rho.entries += (w[size_t(c)] / wsum) * psi.amps * psi.amps.adjoint();
      }
      CHECK(phase_space::lee_jeong_trace(rho) <= 1e-9);
    }
  }
}

TEST_CASE("wigner negativity") {
  SUBCASE("nonnegative Gaussians have zero negative volume") {
    auto vac = DensityMatrix::pure(fock::fock_state(0, 10));
    CHECK(phase_space::wigner_negativity(
              phase_space::wigner(vac, default_grid())) == 0.0);
    auto coh = DensityMatrix::pure(fock::coherent_state({1.0, 1.0}, 30));
    CHECK(phase_space::wigner_negativity(
              phase_space::wigner(coh, default_grid())) == 0.0);
  }

  SUBCASE("|1> negativity matches the closed form and is grid-stable") {
    // volume of the negative lobe of W_1: 2 e^{-1/2} - 1
    double analytic = 2.0 * std::exp(-0.5) - 1.0;
    auto rho = DensityMatrix::pure(fock::fock_state(1, 10));
    auto g1 = default_grid();
    double v1 = phase_space::wigner_negativity(phase_space::wigner(rho, g1));
    PhaseSpaceGrid g2 = g1;
    g2.n_x = g2.n_p = 401;
    double v2 = phase_space::wigner_negativity(phase_space::wigner(rho, g2));
    CHECK(std::abs(v1 - v2) / v2 < 0.01);
    CHECK(v2 == doctest::Approx(analytic).epsilon(1e-3));
  }
}

TEST_CASE("average quantumness") {
  SUBCASE("vacuum snapshots average to zero") {
    std::vector<DensityMatrix> snaps(
        4, DensityMatrix::pure(fock::fock_state(0, 8)));
    auto avg = phase_space::average_quantumness(snaps);
    CHECK(avg.mean == 0.0);
    CHECK(avg.per_step.size() == 4);
  }

  SUBCASE("single |6> snapshot averages to 6") {
    std::vector<DensityMatrix> snaps{
        DensityMatrix::pure(fock::fock_state(6, 12))};
    CHECK(phase_space::average_quantumness(snaps).mean ==
          doctest::Approx(6.0).epsilon(1e-10));
  }

  SUBCASE("empty snapshot list is rejected") {
    CHECK_THROWS_AS(phase_space::average_quantumness({}), Error);
  }
}

TEST_CASE("mean quantumness decreases with loss rate on a driven run") {
  auto mg = signals::mackey_glass({}, 1.2, 1000.0, 90.0, 1.0);
  dynamics::ReservoirParams p;
  p.dim = 20;
  p.K = 0.05;
  p.drive_alpha = 1.2;
  dynamics::NoiseConfig noise;
  noise.lambda_pump = 0.1;
  auto rho0 = DensityMatrix::pure(fock::coherent_state({1.0, 1.0}, 20));
  double prev = 1e300;
  for (double kappa : {0.05, 0.2, 0.4}) {
    p.kappa = kappa;
    auto traj = dynamics::propagate_quantum(rho0, mg, p, noise, true);
    double mean = phase_space::average_quantumness(traj.snapshots).mean;
    CHECK(mean < prev);
    prev = mean;
  }
}
