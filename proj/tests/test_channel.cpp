#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "satmimo/channel.hpp"
#include "satmimo/errors.hpp"
#include "support.hpp"

using namespace satmimo;

namespace {

std::vector<UtChannelStats> two_ut_stats(double beta, double kappa, double sigma2, int m, int n,
                                         RngStream& rng) {
  std::vector<UtChannelStats> stats;
  for (int k = 0; k < 2; ++k) {
    stats.push_back(make_ut_stats(beta, kappa, test::random_unit(rng, m),
                                  test::random_unit(rng, n), build_sigma(SigmaModel::kUniform, n),
                                  sigma2));
  }
  return stats;
}

// Eq.-(20)-style MSE evaluated from scratch.
double mse_oracle(const PrecoderMatrix& w, int k, const CVec& g, const CVec& d, const CVec& c,
                  double sigma2) {
  const std::complex<double> cd = c.dot(d);  // c^H d
  double acc = 0.0;
  for (int i = 0; i < w.num_uts(); ++i) {
    acc += std::norm(w.columns.col(i).dot(g)) * std::norm(cd);
  }
  acc += sigma2 * c.squaredNorm();
  acc -= 2.0 * std::real(g.dot(w.columns.col(k)) * cd);
  return acc + 1.0;
}

}  // namespace

TEST_CASE("ula_response analytic points") {
  CHECK(ula_response(1, 1.0, 0.73)(0) == std::complex<double>(1.0, 0.0));

  const CVec a4 = ula_response(4, 1.0, 0.0);
  for (int i = 0; i < 4; ++i) CHECK(a4(i) == std::complex<double>(0.5, 0.0));

  const CVec a2 = ula_response(2, 1.0, 0.5);
  CHECK(std::abs(a2(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(a2(1) + 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("upa_response structure and unit norm") {
  const UpaGeometry single{1, 1, 1.0, 1.0};
  CHECK(upa_response(single, {0.3, -0.2})(0) == std::complex<double>(1.0, 0.0));

  const UpaGeometry two{2, 2, 1.0, 1.0};
  const CVec boresight = upa_response(two, {0.0, 0.0});
  for (int i = 0; i < 4; ++i) CHECK(std::abs(boresight(i) - 0.5) < 1e-15);

  const UpaGeometry geom{5, 3, 1.0, 1.0};
  RngStream rng(11);
  for (int i = 0; i < 100; ++i) {
    const SpaceAnglePair p{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    CHECK(std::abs(upa_response(geom, p).norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("upa_response equals kronecker of ula factors") {
  const UpaGeometry geom{3, 4, 1.0, 1.0};
  const SpaceAnglePair p{0.21, -0.34};
  const CVec ax = ula_response(3, 1.0, p.theta_x);
  const CVec ay = ula_response(4, 1.0, p.theta_y);
  const CVec full = upa_response(geom, p);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(full(i * 4 + j) - ax(i) * ay(j)) < 1e-15);
    }
  }
}

TEST_CASE("build_sigma models") {
  const CMat uniform = build_sigma(SigmaModel::kUniform, 4);
  CHECK((uniform - CMat::Identity(4, 4) / 4.0).norm() == 0.0);

  const CMat rho0 = build_sigma(SigmaModel::kExpCorr, 3, 0.0);
  CHECK((rho0 - CMat::Identity(3, 3) / 3.0).norm() == 0.0);

  const CMat corr = build_sigma(SigmaModel::kExpCorr, 2, 0.5);
  CHECK(std::abs(corr(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(corr(0, 1) - 0.25) < 1e-15);
  CHECK(std::abs(corr(1, 0) - 0.25) < 1e-15);
  CHECK(std::abs(corr.trace().real() - 1.0) < 1e-15);

  CHECK_THROWS_AS(build_sigma(SigmaModel::kExpCorr, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_sigma(SigmaModel::kExpCorr, 3, -0.1), std::invalid_argument);
}

TEST_CASE("sample_channel LoS-dominated limit") {
  RngStream gen(5);
  const double beta = 2.5;
  auto stats = two_ut_stats(beta, 1e12, 1.0, 4, 6, gen);
  const ChannelBatch batch = sample_channel(stats, 50, RngStream(99));
  for (int k = 0; k < 2; ++k) {
    const CVec los = std::sqrt(beta) * stats[k].d0;
    for (int s = 0; s < 50; ++s) {
      CHECK((batch.draws[k].col(s) - los).norm() <= 1e-4 * std::sqrt(beta));
    }
  }
}

TEST_CASE("sample_channel mean power matches beta") {
  RngStream gen(6);
  const double beta = 3.7;
  auto stats = two_ut_stats(beta, 1.0, 1.0, 4, 6, gen);
  const int s = 100000;
  const ChannelBatch batch = sample_channel(stats, s, RngStream(1234));
  for (int k = 0; k < 2; ++k) {
    CHECK(batch.norm_sq.row(k).mean() == doctest::Approx(beta).epsilon(0.01));
  }
}

TEST_CASE("sample_channel mean vector matches LoS component") {
  RngStream gen(8);
  const double beta = 1.8;
  const double kappa = 2.0;
  auto stats = two_ut_stats(beta, kappa, 1.0, 4, 6, gen);
  const int s = 20000;
  const ChannelBatch batch = sample_channel(stats, s, RngStream(77));
  const double scatter_amp = std::sqrt(beta / (kappa + 1.0));
  for (int k = 0; k < 2; ++k) {
    CVec mean = CVec::Zero(6);
    for (int i = 0; i < s; ++i) mean += batch.draws[k].col(i);
    mean /= static_cast<double>(s);
    const CVec los = std::sqrt(kappa * beta / (kappa + 1.0)) * stats[k].d0;
    CHECK((mean - los).norm() <= 3.0 * scatter_amp / std::sqrt(static_cast<double>(s)));
  }
}

TEST_CASE("sample_channel is bit-deterministic in the seed") {
  RngStream gen(9);
  auto stats = two_ut_stats(1.0, 1.0, 1.0, 4, 6, gen);
  const ChannelBatch a = sample_channel(stats, 32, RngStream(5150));
  const ChannelBatch b = sample_channel(stats, 32, RngStream(5150));
  for (int k = 0; k < 2; ++k) {
    CHECK((a.draws[k] - b.draws[k]).norm() == 0.0);
  }
  CHECK((a.norm_sq - b.norm_sq).norm() == 0.0);
}

TEST_CASE("non-PSD covariance is rejected") {
  RngStream gen(10);
  CMat bad = CMat::Identity(3, 3);
  bad(0, 0) = 1.5;
  bad(1, 1) = 0.0;
  bad(2, 2) = -0.5;  // trace still 1, eigenvalue -0.5
  CHECK_THROWS_AS(
      make_ut_stats(1.0, 1.0, test::random_unit(gen, 4), test::random_unit(gen, 3), bad, 1.0),
      DataError);

  // Same guard fires inside sample_channel when the cached root is absent.
  UtChannelStats raw;
  raw.beta = 1.0;
  raw.kappa = 1.0;
  raw.g = test::random_unit(gen, 4);
  raw.d0 = test::random_unit(gen, 3);
  raw.sigma_cov = bad;
  raw.sigma2 = 1.0;
  CHECK_THROWS_AS(sample_channel({raw}, 4, RngStream(1)), DataError);
}

TEST_CASE("receivers and instantaneous SINR") {
  RngStream gen(12);
  const int m = 6;
  const int n = 4;
  auto stats = two_ut_stats(2.0, 1.0, 0.3, m, n, gen);
  const ChannelBatch batch = sample_channel(stats, 1, RngStream(3));

  PrecoderMatrix w;
  w.power_budget = 4.0;
  w.columns = test::random_unit_columns(gen, m, 2) * std::sqrt(2.0);

  const CVec d = batch.draws[0].col(0);
  const CVec g = stats[0].g;
  const double sigma2 = stats[0].sigma2;

  SUBCASE("matched filter returns the vector and is scale invariant") {
    CHECK((mf_receiver(d) - d).norm() == 0.0);
    const double s1 = instantaneous_sinr(w, 0, g, d, mf_receiver(d), sigma2);
    const double s2 = instantaneous_sinr(w, 0, g, d, CVec(5.0 * d), sigma2);
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-14));
  }

  SUBCASE("MF achieves the USINR bound") {
    const CVec wh_g = w.columns.adjoint() * g;
    const double usinr = std::norm(wh_g(0)) * d.squaredNorm() /
                         (std::norm(wh_g(1)) * d.squaredNorm() + sigma2);
    CHECK(instantaneous_sinr(w, 0, g, d, mf_receiver(d), sigma2) ==
          doctest::Approx(usinr).epsilon(1e-12));
  }

  SUBCASE("MMSE receiver is collinear with d and matches MF SINR") {
    const CVec c = mmse_receiver(w, 0, g, d, sigma2);
    const std::complex<double> ratio = c(0) / d(0);
    CHECK((c - ratio * d).norm() <= 1e-14 * c.norm());
    CHECK(instantaneous_sinr(w, 0, g, d, c, sigma2) ==
          doctest::Approx(instantaneous_sinr(w, 0, g, d, mf_receiver(d), sigma2)).epsilon(1e-12));
  }

  SUBCASE("MMSE receiver attains MSE = 1/(1+USINR)") {
    const CVec c = mmse_receiver(w, 0, g, d, sigma2);
    const double usinr = instantaneous_sinr(w, 0, g, d, mf_receiver(d), sigma2);
    CHECK(mse_oracle(w, 0, g, d, c, sigma2) == doctest::Approx(1.0 / (1.0 + usinr)).epsilon(1e-12));
  }

  SUBCASE("zero precoder column gives the zero receiver") {
    PrecoderMatrix w0 = w;
    w0.columns.col(0).setZero();
    CHECK(mmse_receiver(w0, 0, g, d, sigma2).norm() == 0.0);
  }

  SUBCASE("random receivers never beat the matched filter") {
    const double best = instantaneous_sinr(w, 0, g, d, mf_receiver(d), sigma2);
    for (int t = 0; t < 20; ++t) {
      const CVec c = test::random_unit(gen, n);
      CHECK(instantaneous_sinr(w, 0, g, d, c, sigma2) <= best * (1.0 + 1e-12));
    }
  }

  SUBCASE("zero receiver is rejected") {
    CHECK_THROWS_AS(instantaneous_sinr(w, 0, g, d, CVec::Zero(n), sigma2), std::invalid_argument);
  }
}
