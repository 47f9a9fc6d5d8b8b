#pragma once

#include <cstdint>
#include <vector>

#include "satmimo/geometry.hpp"
#include "satmimo/precoding.hpp"
#include "satmimo/rng.hpp"

namespace satmimo {

struct UpaGeometry {
  int nx{1};
  int ny{1};
  double spacing_x_wl{1.0};  // element spacing in wavelengths
  double spacing_y_wl{1.0};

  int size() const { return nx * ny; }
};

enum class SigmaModel { kUniform, kExpCorr };

// Per-UT statistical CSI. The only inputs the precoder designs consume.
//
// Invariants: ||g|| = ||d0|| = 1, trace(sigma_cov) = 1, sigma_cov Hermitian
// PSD, kappa >= 0, beta > 0, sigma2 > 0. `sigma_sqrt` caches the Hermitian
// PSD square root used by the sampling hot loop.
struct UtChannelStats {
  double beta{1.0};
  double kappa{0.0};
  CVec g;         // satellite-side array response, length M
  CVec d0;        // UT-side LoS response, length N
  CMat sigma_cov; // N x N scattering covariance
  double sigma2{1.0};
  CMat sigma_sqrt;
};

// Validates invariants, computes and caches the covariance square root.
// Throws DataError when sigma_cov is not PSD within 1e-10, or
// std::invalid_argument on other invariant violations.
UtChannelStats make_ut_stats(double beta, double kappa, CVec g, CVec d0, CMat sigma_cov,
                             double sigma2);

// Hermitian PSD square root via eigendecomposition; eigenvalues below
// -psd_tol raise DataError, small negatives are clamped to zero.
CMat hermitian_sqrt_psd(const CMat& a, double psd_tol = 1e-10);

// Monte-Carlo draws of the receive-side vectors d_k.
// draws[k] is N x S (one column per sample); norm_sq(k, s) caches ||d||^2.
struct ChannelBatch {
  std::vector<CMat> draws;
  RMat norm_sq;
  std::uint64_t seed{0};

  int num_uts() const { return static_cast<int>(draws.size()); }
  int num_samples() const { return static_cast<int>(norm_sq.cols()); }
};

// Unit-norm ULA response: element i = exp(-j 2 pi spacing_wl i phase_arg) / sqrt(n).
CVec ula_response(int n, double spacing_wl, double phase_arg);

// UPA response as the Kronecker product of the two ULA responses evaluated
// at the space-angle coordinates.
CVec upa_response(const UpaGeometry& geom, const SpaceAnglePair& p);

// uniform: I/n. exp_corr: entries rho^|i-j| scaled to unit trace.
CMat build_sigma(SigmaModel model, int n, double rho = 0.0);

// S i.i.d. draws per UT of d = sqrt(kappa beta/(kappa+1)) d0
//                            + sqrt(beta/(kappa+1)) Sigma^{1/2} w,  w ~ CN(0, I).
// Substream per (ut, sample): identical output for any worker count.
ChannelBatch sample_channel(const std::vector<UtChannelStats>& stats, int num_samples,
                            RngStream rng);

// Matched filter for the effective channel d_k: the vector itself.
CVec mf_receiver(const CVec& d);

// MMSE receiver: (g_k^H w_k / (sigma2 + sum_i |w_i^H g_k|^2 ||d_k||^2)) d_k.
CVec mmse_receiver(const PrecoderMatrix& w_all, int k, const CVec& g_k, const CVec& d_k,
                   double sigma2);

// Instantaneous downlink SINR of UT k under receiver c_k.
double instantaneous_sinr(const PrecoderMatrix& w_all, int k, const CVec& g_k, const CVec& d_k,
                          const CVec& c_k, double sigma2);

// M x K matrix whose column k is stats[k].g.
CMat stack_responses(const std::vector<UtChannelStats>& stats);

}  // namespace satmimo
