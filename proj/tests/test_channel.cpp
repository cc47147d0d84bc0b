// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "swmimo/channel.hpp"
#include "swmimo/circuit.hpp"
#include "swmimo/constants.hpp"
#include "swmimo/engine.hpp"
#include "swmimo/noise.hpp"

using namespace swmimo;

namespace {

ComplexMatrix random_unit_field(Eigen::Index n_r, Eigen::Index n_t, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix u(n_r, n_t);
  for (Eigen::Index i = 0; i < n_r; ++i)
    for (Eigen::Index j = 0; j < n_t; ++j) u(i, j) = rng.next_cnormal();
  return u;
}

}  // namespace

TEST_CASE("steering vector") {
  const ComplexVector broadside = steering_vector(4, 0.005, 1e9, 0.0);
  for (Eigen::Index m = 0; m < 4; ++m)
    CHECK(std::abs(broadside(m) - Complex(1.0, 0.0)) <= 1e-15);
  // spacing * f / c = 0.5 and sin(theta) = 1 -> alternating signs
  const double f = 0.5 * kSpeedOfLight / 0.005;
  const ComplexVector endfire = steering_vector(2, 0.005, f, kPi / 2.0);
  CHECK(std::abs(endfire(0) - Complex(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(endfire(1) - Complex(-1.0, 0.0)) <= 1e-12);
  const ComplexVector any = steering_vector(7, 0.005, 3e9, 0.3);
  CHECK(any.squaredNorm() == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("path gain") {
  // Friis reduction: gamma = 2, d = 1, f = c / (2 pi)
  const PathGain friis = path_gain(kSpeedOfLight / (2.0 * kPi), 1.0, 1.0, 1.0, 1.0, 2.0);
  CHECK(friis.beta_los == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(friis.beta == doctest::Approx(2.0).epsilon(1e-12));  // K = 1 doubles it
  // LoS-only limit
  const PathGain los = path_gain(1e9, 1e12, 1.0, 1.0, 90.0, 3.5);
  CHECK(los.beta == los.beta_los);
  // reference value for the standard setup at 1 GHz
  const PathGain ref = path_gain(1e9, 1.0, 1.0, 1.0, 90.0, 3.5);
  const double expected =
      std::pow(2.99792458e8 / (2.0 * kPi * 1e9 * std::pow(90.0, 1.75)), 2.0);
  CHECK(ref.beta_los == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ref.beta > ref.beta_los);
  CHECK_THROWS_AS(path_gain(1e9, 0.0, 1.0, 1.0, 90.0, 3.5), std::invalid_argument);
}

TEST_CASE("rician weights") {
  const RicianWeights w = rician_weights(3.0);
  CHECK(w.los == doctest::Approx(std::sqrt(0.75)));
  CHECK(w.scattered == doctest::Approx(0.5));
  CHECK(w.los * w.los + w.scattered * w.scattered == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rician_weights(1e12).los == 1.0);
  CHECK(rician_weights(1e12).scattered == 0.0);
  CHECK(rician_weights(1e-12).los == 0.0);
  CHECK(rician_weights(1e-12).scattered == 1.0);
}

TEST_CASE("assemble_h_mimo limits") {
  const ComplexVector a_r = steering_vector(3, 0.005, 1e9, 0.1);
  const ComplexVector a_t = steering_vector(2, 0.005, 1e9, 0.0);
  const ComplexMatrix sr = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix st = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix u = random_unit_field(3, 2, 5);
  const double beta = 2.5;
  const ComplexMatrix los = assemble_h_mimo(1e12, beta, a_r, a_t, sr, u, st);
  CHECK((los - std::sqrt(beta) * (a_r * a_t.adjoint())).norm() <= 1e-12);
  const ComplexMatrix sc = assemble_h_mimo(1e-12, beta, a_r, a_t, sr, u, st);
  CHECK((sc - std::sqrt(beta) * u).norm() <= 1e-12);
  CHECK_THROWS_AS(assemble_h_mimo(1.0, beta, a_r, a_t, sr, random_unit_field(2, 2, 5), st),
                  std::invalid_argument);
}

TEST_CASE("assemble_h_mimo power normalization") {
  const ComplexVector a_r = steering_vector(2, 0.005, 1e9, 0.0);
  const ComplexVector a_t = steering_vector(2, 0.005, 1e9, 0.0);
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  const double beta = 0.7, k = 2.0;
  const std::size_t m = 10000;
  double acc = 0.0;
  for (std::size_t t = 0; t < m; ++t)
    acc += assemble_h_mimo(k, beta, a_r, a_t, eye, random_unit_field(2, 2, t), eye)
               .squaredNorm();
  acc /= static_cast<double>(m);
  CHECK(acc == doctest::Approx(beta * 4.0).epsilon(0.03));
}

TEST_CASE("equivalent steering in the decoupled white-noise limit is proportional") {
  const Complex p_scalar(0.3, -0.1);
  const ComplexMatrix p = p_scalar * ComplexMatrix::Identity(4, 4);
  const ComplexMatrix w = 2.0 * ComplexMatrix::Identity(4, 4);
  const ComplexVector a = steering_vector(4, 0.005, 2e9, 0.4);
  const ComplexVector w_r = equivalent_rx_steering(w, p, a);
  for (Eigen::Index i = 0; i < 4; ++i)
    CHECK(std::abs(w_r(i) - 2.0 * p_scalar * a(i)) <= 1e-14);
  // normalized profile is flat at 1/sqrt(N)
  for (Eigen::Index i = 0; i < 4; ++i)
    CHECK(std::abs(std::abs(w_r(i)) / w_r.norm() - 0.5) <= 1e-12);
}

TEST_CASE("equivalent steering against an explicit 2x2 computation") {
  const UlaConfig rx{2, 0.005, 0.0025};
  ChuAntennaModel model(0.0025, 1.0, MutualKernel::kChuCoupled, 1.0, 1.0, 0.5);
  const double f = 1e8;
  const ComplexMatrix z_r = array_impedance_matrix(rx, f, model);
  const ComplexMatrix p = coupling_matrix(z_r, 1.0, f);
  NoiseParams np{kBoltzmann, 290.0, 1e7, 1.0, std::pow(10.0, 0.5), 10.0};
  const NoiseModel noise = build_noise_model(p, z_r, np);
  const ComplexVector a = steering_vector(2, 0.005, f, 0.0);
  const ComplexVector w_r = equivalent_rx_steering(noise.whitener, p, a);
  // by hand: P a, then whitener row-by-row
  const ComplexVector pa = p * a;
  ComplexVector ref(2);
  for (int i = 0; i < 2; ++i)
    ref(i) = noise.whitener(i, 0) * pa(0) + noise.whitener(i, 1) * pa(1);
  CHECK((w_r - ref).norm() <= 1e-12 * ref.norm());
  // frequency moves the equivalent vector even at fixed angle
  const ComplexMatrix z_r2 = array_impedance_matrix(rx, 2e8, model);
  const ComplexMatrix p2 = coupling_matrix(z_r2, 1.0, 2e8);
  const NoiseModel noise2 = build_noise_model(p2, z_r2, np);
  const ComplexVector w_r2 =
      equivalent_rx_steering(noise2.whitener, p2, steering_vector(2, 0.005, 2e8, 0.0));
  CHECK((w_r.normalized() - w_r2.normalized()).norm() > 1e-6);
}

TEST_CASE("equivalent spatial correlation") {
  const ComplexMatrix p = Complex(0.5, 0.0) * ComplexMatrix::Identity(3, 3);
  const ComplexMatrix w = 3.0 * ComplexMatrix::Identity(3, 3);
  const ComplexMatrix c_r = equivalent_rx_corr(w, p, ComplexMatrix::Identity(3, 3));
  CHECK((c_r - 2.25 * ComplexMatrix::Identity(3, 3)).norm() <= 1e-12);
  // Hermitianness on a generic case
  ComplexMatrix r(2, 2);
  r << 1.0, Complex(0.5, 0.3), Complex(0.5, -0.3), 1.0;
  ComplexMatrix q(2, 2);
  q << Complex(0.2, 0.1), Complex(0.05, -0.02), Complex(0.03, 0.04), Complex(0.3, -0.2);
  const ComplexMatrix c_t = equivalent_tx_corr(q, r);
  CHECK((c_t - c_t.adjoint()).norm() <= 1e-12 * c_t.norm());
  const HermitianFactor eig = hermitian_eigen(c_t);
  CHECK(eig.eigenvalues(eig.eigenvalues.size() - 1) >= -1e-12 * eig.eigenvalues(0));
}

TEST_CASE("coloring factors reproduce the equivalent correlations") {
  const UlaConfig rx{3, 0.005, 0.0025};
  const UlaConfig tx{2, 0.005, 0.0025};
  ChuAntennaModel model(0.0025, 1.0, MutualKernel::kChuCoupled, 1.0, 1.0, 0.5);
  const double f = 5e9;
  const ImpedanceSet imp = build_impedance_set(tx, rx, f, model, model, 1.0, 1.0, 10.0);
  NoiseParams np{kBoltzmann, 290.0, 1e7, 1.0, std::pow(10.0, 0.5), 10.0};
  const NoiseModel noise = build_noise_model(imp.p, imp.z_r, np);
  SpatialCorrModel corr{0.0, 0.15, 0.005};
  const ComplexMatrix r_r = spatial_correlation_matrix(3, f, corr);
  const ComplexMatrix r_t = spatial_correlation_matrix(2, f, corr);
  const ComplexMatrix b_r = equivalent_rx_factor(noise.whitener, imp.p, hermitian_sqrt(r_r));
  const ComplexMatrix b_t = equivalent_tx_factor(hermitian_sqrt(r_t), imp.q);
  const ComplexMatrix c_r = equivalent_rx_corr(noise.whitener, imp.p, r_r);
  const ComplexMatrix c_t = equivalent_tx_corr(imp.q, r_t);
  CHECK((b_r * b_r.adjoint() - c_r).norm() <= 1e-12 * c_r.norm());
  CHECK((b_t.adjoint() * b_t - c_t).norm() <= 1e-12 * c_t.norm());
}

TEST_CASE("whitened channel forms") {
  const ComplexVector w_r = steering_vector(3, 0.005, 1e9, 0.2);
  const ComplexVector w_t = steering_vector(2, 0.005, 1e9, 0.0);
  const ComplexMatrix b_r = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix b_t = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix u = random_unit_field(3, 2, 9);
  CHECK(whitened_channel(Complex(0.0, 0.0), 1.0, 2.0, w_r, w_t, b_r, u, b_t).norm() == 0.0);
  // LoS-only rank-1 eigenvalue identity
  const Complex alpha(1.5, -0.5);
  const double beta = 3.0;
  const ComplexMatrix h = whitened_channel(alpha, beta, 1e12, w_r, w_t, b_r, u, b_t);
  const HermitianFactor eig = hermitian_eigen((h.adjoint() * h).eval());
  CHECK(eig.eigenvalues(0) ==
        doctest::Approx(std::norm(alpha) * beta * w_r.squaredNorm() * w_t.squaredNorm())
            .epsilon(1e-10));
  CHECK(std::abs(eig.eigenvalues(1)) <= 1e-10 * eig.eigenvalues(0));
}

TEST_CASE("pipeline equivalence on a coupled case") {
  const UlaConfig rx{4, 0.005, 0.0025};
  const UlaConfig tx{4, 0.005, 0.0025};
  ChuAntennaModel model(0.0025, 1.0, MutualKernel::kChuCoupled, 1.0, 1.0, 0.5);
  const double f = 1e9;
  const double lna = 10.0, r_in = 1.0;
  const ImpedanceSet imp = build_impedance_set(tx, rx, f, model, model, 1.0, r_in, lna);
  NoiseParams np{kBoltzmann, 290.0, 1e7, r_in, std::pow(10.0, 0.5), lna};
  const NoiseModel noise = build_noise_model(imp.p, imp.z_r, np);
  SpatialCorrModel corr{0.0, 0.16, 0.005};
  const ComplexMatrix r_r = spatial_correlation_matrix(4, f, corr);
  const ComplexMatrix r_t = spatial_correlation_matrix(4, f, corr);
  const ComplexMatrix sr = hermitian_sqrt(r_r);
  const ComplexMatrix st = hermitian_sqrt(r_t);
  const ComplexVector a_r = steering_vector(4, 0.005, f, 0.0);
  const ComplexVector a_t = steering_vector(4, 0.005, f, 0.0);
  const ComplexVector w_r = equivalent_rx_steering(noise.whitener, imp.p, a_r);
  const ComplexVector w_t = equivalent_tx_steering(imp.q, a_t);
  const ComplexMatrix b_r = equivalent_rx_factor(noise.whitener, imp.p, sr);
  const ComplexMatrix b_t = equivalent_tx_factor(st, imp.q);
  const double k = 4.0, beta = 0.37;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ComplexMatrix u = random_unit_field(4, 4, s);
    const ComplexMatrix h_mimo = assemble_h_mimo(k, beta, a_r, a_t, sr, u, st);
    const ComplexMatrix z_rt = trans_impedance(imp.z_r, imp.z_t, h_mimo, imp.phi);
    const ComplexMatrix raw = noise.whitener * raw_channel(lna, r_in, imp.p, z_rt, imp.q);
    const ComplexMatrix eq = whitened_channel(imp.alpha, beta, k, w_r, w_t, b_r, u, b_t);
    CHECK((raw - eq).norm() <= 1e-9 * raw.norm());
  }
}

TEST_CASE("simulate_output") {
  const ComplexMatrix h = random_unit_field(3, 2, 13);
  ComplexVector v = ComplexVector::Zero(2);
  Rng rng_a(4), rng_b(4);
  const ComplexVector noise_only = simulate_output(h, v, rng_a);
  ComplexVector expected(3);
  for (Eigen::Index i = 0; i < 3; ++i) expected(i) = rng_b.next_cnormal();
  CHECK((noise_only - expected).norm() == 0.0);
  v << Complex(1.0, 0.0), Complex(0.0, 1.0);
  Rng rng_c(4);
  CHECK((simulate_output(h, v, rng_c, true) - h * v).norm() == 0.0);
}

TEST_CASE("decoupled white-noise limit collapses to a scalar times H_MIMO") {
  ScenarioConfig cfg;
  cfg.n_r = 3;
  cfg.n_t = 2;
  cfg.regime = CouplingRegime::kDecoupled;
  cfg.f_start_hz = 1e9;
  cfg.f_stop_hz = 2e9;
  cfg.delta_f_hz = 1e9;
  cfg.trials = 1;
  ScenarioEngine engine(cfg);
  const auto trial = engine.realize_trial(0);
  for (const ChannelRealization& r : trial) {
    const Complex ratio = r.h_tilde(0, 0) / r.h_mimo(0, 0);
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 2; ++j)
        CHECK(std::abs(r.h_tilde(i, j) - ratio * r.h_mimo(i, j)) <=
              1e-9 * r.h_tilde.norm());
  }
}
