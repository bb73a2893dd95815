// Copyright 2026 The Utimac Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "utimac/bcd.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "utimac/frame_view.hpp"
#include "utimac/rng.hpp"
#include "utimac/solver.hpp"
#include "utimac/transform.hpp"

namespace utimac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logdet_from_llt(const Eigen::LLT<Matrix>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

/// tr(Sigma^-1) = ||L^-1||_F^2 with Sigma = L L^T. Throws on non-PD input.
double trace_inverse(const Matrix& sigma) {
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("trace_inverse: matrix is not positive definite");
  }
  const Index d = sigma.rows();
  const Matrix linv =
      llt.matrixL().solve(Matrix::Identity(d, d));
  return linv.squaredNorm();
}

Matrix inverse_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("inverse_spd: singular observed block");
  }
  return llt.solve(Matrix::Identity(a.rows(), a.cols()));
}

double frame_term(const FrameView& v, const Matrix& sigma, const Vector& mu, double lambda,
                  const Vector& o) {
  const Index m = static_cast<Index>(v.obs->size());
  if (m == 0) return 0.0;
  const Matrix sig_oo = submatrix(sigma, *v.obs, *v.obs);
  Eigen::LLT<Matrix> llt(sig_oo);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("frame objective: singular observed block");
  }
  const Vector e = v.z_obs - o - subvector(mu, *v.obs);
  return 0.5 * e.dot(llt.solve(e)) + 0.5 * logdet_from_llt(llt) -
         static_cast<double>(m) * std::log(lambda) + lambda * o.lpNorm<1>();
}

double objective_views(const std::vector<FrameView>& views, const WindowParams& params,
                       const DeviationSet& devs) {
  double total = 0.0;
  for (std::size_t tau = 0; tau < views.size(); ++tau) {
    total += frame_term(views[tau], params.sigma, params.mu, params.lambda, devs.o[tau]);
  }
  return total + params.rho * trace_inverse(params.sigma) + params.eta * params.lambda;
}

/// Sigma-restricted part of the objective (lambda terms dropped);
/// +inf when sigma or an observed block is not PD.
double sigma_block_objective(const std::vector<FrameView>& views, const DeviationSet& devs,
                             const Vector& mu, const Matrix& sigma, double rho) {
  double total = 0.0;
  for (std::size_t tau = 0; tau < views.size(); ++tau) {
    const FrameView& v = views[tau];
    if (v.obs->empty()) continue;
    const Matrix sig_oo = submatrix(sigma, *v.obs, *v.obs);
    Eigen::LLT<Matrix> llt(sig_oo);
    if (llt.info() != Eigen::Success) return kInf;
    const Vector e = v.z_obs - devs.o[tau] - subvector(mu, *v.obs);
    total += 0.5 * e.dot(llt.solve(e)) + 0.5 * logdet_from_llt(llt);
  }
  Eigen::LLT<Matrix> full(sigma);
  if (full.info() != Eigen::Success) return kInf;
  const Matrix linv = full.matrixL().solve(Matrix::Identity(sigma.rows(), sigma.cols()));
  return total + rho * linv.squaredNorm();
}

MeanUpdate update_mean_views(const std::vector<FrameView>& views, const Matrix& sigma,
                             const DeviationSet& devs) {
  const Index d = sigma.rows();
  Matrix a = Matrix::Zero(d, d);
  Vector rhs = Vector::Zero(d);
  std::vector<bool> ever(static_cast<std::size_t>(d), false);
  double grand_sum = 0.0;
  Index grand_count = 0;

  for (std::size_t tau = 0; tau < views.size(); ++tau) {
    const FrameView& v = views[tau];
    const Index m = static_cast<Index>(v.obs->size());
    if (m == 0) continue;
    const Matrix k = inverse_spd(submatrix(sigma, *v.obs, *v.obs));
    const Vector ka = k * (v.z_obs - devs.o[tau]);
    for (Index i = 0; i < m; ++i) {
      const Index gi = (*v.obs)[static_cast<std::size_t>(i)];
      ever[static_cast<std::size_t>(gi)] = true;
      rhs[gi] += ka[i];
      for (Index j = 0; j < m; ++j) {
        a(gi, (*v.obs)[static_cast<std::size_t>(j)]) += k(i, j);
      }
    }
    grand_sum += v.z_obs.sum();
    grand_count += m;
  }

  MeanUpdate out;
  out.mu = Vector::Zero(d);
  IndexList ever_idx;
  for (Index j = 0; j < d; ++j) {
    if (ever[static_cast<std::size_t>(j)]) {
      ever_idx.push_back(j);
    } else {
      out.never_observed.push_back(j);
    }
  }
  const double fallback = grand_count > 0 ? grand_sum / static_cast<double>(grand_count) : 0.0;
  for (Index j : out.never_observed) out.mu[j] = fallback;
  if (!ever_idx.empty()) {
    const Matrix a_e = submatrix(a, ever_idx, ever_idx);
    const Vector rhs_e = subvector(rhs, ever_idx);
    const Vector mu_e = Eigen::LDLT<Matrix>(a_e).solve(rhs_e);
    for (std::size_t i = 0; i < ever_idx.size(); ++i) {
      out.mu[ever_idx[i]] = mu_e[static_cast<Index>(i)];
    }
  }
  return out;
}

double update_lambda_views(const std::vector<FrameView>& views, const DeviationSet& devs,
                           double eta) {
  double n_obs = 0.0;
  double l1_sum = 0.0;
  for (std::size_t tau = 0; tau < views.size(); ++tau) {
    n_obs += static_cast<double>(views[tau].obs->size());
    l1_sum += devs.o[tau].lpNorm<1>();
  }
  if (n_obs == 0.0) return 0.0;
  return n_obs / (l1_sum + eta);
}

Matrix update_covariance_views(const std::vector<FrameView>& views, const Vector& mu,
                               const DeviationSet& devs, const Matrix& sigma_current,
                               double rho, double damping, double pd_floor) {
  const Index d = sigma_current.rows();
  Matrix shat = Matrix::Zero(d, d);
  Index contributing = 0;

  for (std::size_t tau = 0; tau < views.size(); ++tau) {
    const FrameView& v = views[tau];
    if (v.obs->empty()) continue;
    ++contributing;
    const Vector e = v.z_obs - devs.o[tau] - subvector(mu, *v.obs);
    const IndexList& obs = *v.obs;
    const IndexList& mis = *v.mis;
    const Index mo = static_cast<Index>(obs.size());
    const Index mm = static_cast<Index>(mis.size());

    // Observed block: the residual outer product itself.
    for (Index i = 0; i < mo; ++i) {
      for (Index j = 0; j < mo; ++j) {
        shat(obs[static_cast<std::size_t>(i)], obs[static_cast<std::size_t>(j)]) +=
            e[i] * e[j];
      }
    }
    if (mm == 0) continue;

    // Missing blocks: conditional moments under the current covariance.
    const Matrix sig_oo = submatrix(sigma_current, obs, obs);
    Eigen::LLT<Matrix> llt(sig_oo);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("update_covariance: singular observed block");
    }
    const Matrix sig_mo = submatrix(sigma_current, mis, obs);
    const Matrix b = llt.solve(sig_mo.transpose()).transpose();  // regression coefficients
    const Vector h = b * e;                                      // conditional mean
    const Matrix vcond = submatrix(sigma_current, mis, mis) - b * sig_mo.transpose();
    for (Index i = 0; i < mm; ++i) {
      const Index gi = mis[static_cast<std::size_t>(i)];
      for (Index j = 0; j < mo; ++j) {
        const double cross = h[i] * e[j];
        shat(gi, obs[static_cast<std::size_t>(j)]) += cross;
        shat(obs[static_cast<std::size_t>(j)], gi) += cross;
      }
      for (Index j = 0; j < mm; ++j) {
        shat(gi, mis[static_cast<std::size_t>(j)]) += vcond(i, j) + h[i] * h[j];
      }
    }
  }

  if (contributing == 0) return sigma_current;

  const Matrix cand =
      (shat + 2.0 * rho * Matrix::Identity(d, d)) / static_cast<double>(contributing);
  const double f_old = sigma_block_objective(views, devs, mu, sigma_current, rho);
  double gamma = damping;
  if (!(gamma > 0.0) || gamma > 1.0) gamma = 1.0;
  const double slack = 1e-10 * std::max(1.0, std::fabs(f_old));
  for (int k = 0; k < 60; ++k) {
    const Matrix trial =
        floor_eigenvalues((1.0 - gamma) * sigma_current + gamma * cand, pd_floor);
    if (sigma_block_objective(views, devs, mu, trial, rho) <= f_old + slack) {
      return trial;
    }
    gamma *= 0.5;
  }
  return sigma_current;
}

}  // namespace

Matrix floor_eigenvalues(const Matrix& sym, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.eigenvalues().minCoeff() >= floor) return sym;
  Vector ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) ev[i] = std::max(ev[i], floor);
  Matrix out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

double frame_neg_log_joint(const TrafficWindow& w, const WindowParams& params, Index tau,
                           const Vector& o_tau) {
  if (tau < 0 || tau >= w.length()) {
    throw std::out_of_range("frame_neg_log_joint: frame index out of range");
  }
  const MaskedFrame& mf = w.frames[static_cast<std::size_t>(tau)];
  FrameView v;
  v.obs = &mf.mask.observed_indices();
  v.mis = &mf.mask.missing_indices();
  v.z_obs = subvector(to_log_domain(mf.frame, w.eps), *v.obs);
  if (o_tau.size() != static_cast<Index>(v.obs->size())) {
    throw std::invalid_argument("frame_neg_log_joint: deviation length mismatch");
  }
  return frame_term(v, params.sigma, params.mu, params.lambda, o_tau);
}

double regularized_objective(const TrafficWindow& w, const WindowParams& params,
                             const DeviationSet& devs) {
  if (devs.o.size() != w.frames.size()) {
    throw std::invalid_argument("regularized_objective: deviation set length mismatch");
  }
  return objective_views(build_frame_views(w), params, devs);
}

MeanUpdate update_mean(const TrafficWindow& w, const Matrix& sigma, const DeviationSet& devs) {
  return update_mean_views(build_frame_views(w), sigma, devs);
}

double update_lambda(const TrafficWindow& w, const DeviationSet& devs, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("update_lambda: eta must be > 0");
  return update_lambda_views(build_frame_views(w), devs, eta);
}

Matrix update_covariance(const TrafficWindow& w, const Vector& mu, const DeviationSet& devs,
                         const Matrix& sigma_current, double rho, double damping,
                         double pd_floor) {
  return update_covariance_views(build_frame_views(w), mu, devs, sigma_current, rho, damping,
                                 pd_floor);
}

FitState fit_window(const TrafficWindow& w, const FitConfig& cfg) {
  if (w.frames.empty()) throw std::invalid_argument("fit_window: empty window");
  const Index d = w.dim();
  for (const auto& mf : w.frames) {
    if (mf.frame.dim() != d || mf.mask.size() != d) {
      throw std::invalid_argument("fit_window: inconsistent frame dimensions");
    }
  }
  const std::vector<FrameView> views = build_frame_views(w);

  // Initialization: observed per-coordinate moments.
  Vector sum = Vector::Zero(d), sumsq = Vector::Zero(d);
  Eigen::VectorXi count = Eigen::VectorXi::Zero(d);
  for (const FrameView& v : views) {
    for (std::size_t i = 0; i < v.obs->size(); ++i) {
      const Index j = (*v.obs)[i];
      const double z = v.z_obs[static_cast<Index>(i)];
      sum[j] += z;
      sumsq[j] += z * z;
      count[j] += 1;
    }
  }
  const Index total_obs = count.sum();
  if (total_obs == 0) throw std::runtime_error("fit_window: window has no observed entries");
  const double grand_mean = sum.sum() / static_cast<double>(total_obs);

  FitState state;
  state.params.eta = cfg.eta;
  state.params.mu = Vector::Zero(d);
  Vector var0(d);
  double std_sum = 0.0;
  double var_sum = 0.0;
  Index std_count = 0;
  for (Index j = 0; j < d; ++j) {
    if (count[j] > 0) {
      const double mean = sum[j] / count[j];
      state.params.mu[j] = mean;
      var0[j] = std::max(sumsq[j] / count[j] - mean * mean, cfg.init_var_floor);
      std_sum += std::sqrt(var0[j]);
      var_sum += var0[j];
      ++std_count;
    } else {
      state.params.mu[j] = grand_mean;
      var0[j] = cfg.init_var_floor;
      state.never_observed.push_back(j);
    }
  }
  state.params.sigma = var0.asDiagonal();
  state.params.rho =
      cfg.rho > 0.0
          ? cfg.rho
          : 0.025 * static_cast<double>(w.frames.size()) * var_sum /
                std::max<double>(1.0, static_cast<double>(std_count));
  // Scale-aware sparsity start: the first deviation update soft-thresholds
  // at lambda * sigma_jj^2, so lambda0 = 3/std puts that cut near three
  // observed standard deviations. A scale-blind start (lambda0 = 1) lets
  // the deviation block swallow the bulk of the residual mass on
  // small-variance data and drives the covariance into the regularizer
  // floor, a much worse local basin of the nonconvex objective.
  const double mean_std = std_count > 0 ? std_sum / static_cast<double>(std_count) : 1.0;
  state.params.lambda = 3.0 / std::max(mean_std, 1e-8);
  state.deviations = DeviationSet::zeros(w);

  state.objective_trace.push_back(objective_views(views, state.params, state.deviations));
  double prev_outer = state.objective_trace.back();

  const auto push_objective = [&](const char* block) {
    const double f = objective_views(views, state.params, state.deviations);
    if (!std::isfinite(f)) {
      throw std::runtime_error(std::string("fit_window: non-finite objective after ") +
                               block + " update at iteration " +
                               std::to_string(state.iterations + 1));
    }
    state.objective_trace.push_back(f);
  };

  for (int iter = 0; iter < cfg.outer_max_iter; ++iter) {
    // Deviation block, one convex subproblem per frame.
    for (std::size_t tau = 0; tau < views.size(); ++tau) {
      const FrameView& v = views[tau];
      if (v.obs->empty()) continue;
      L1QuadProblem prob;
      prob.q = inverse_spd(submatrix(state.params.sigma, *v.obs, *v.obs));
      prob.r = v.z_obs - subvector(state.params.mu, *v.obs);
      prob.lambda = state.params.lambda;
      state.deviations.o[tau] =
          solve_deviation(prob, cfg.inner_tol, cfg.inner_max_sweeps, &state.deviations.o[tau])
              .o;
    }
    push_objective("deviation");

    MeanUpdate mean = update_mean_views(views, state.params.sigma, state.deviations);
    state.params.mu = std::move(mean.mu);
    push_objective("mean");

    const double lambda_new = update_lambda_views(views, state.deviations, cfg.eta);
    if (lambda_new > 0.0) state.params.lambda = lambda_new;
    push_objective("sparsity");

    state.params.sigma =
        update_covariance_views(views, state.params.mu, state.deviations, state.params.sigma,
                                state.params.rho, cfg.damping, cfg.pd_floor);
    push_objective("covariance");

    state.iterations = iter + 1;
    const double f = state.objective_trace.back();
    if (std::fabs(prev_outer - f) < cfg.outer_rel_tol * std::max(1.0, std::fabs(prev_outer))) {
      state.converged = true;
      break;
    }
    prev_outer = f;
  }
  return state;
}

double exact_marginal_loglik_mc(const TrafficWindow& w, const WindowParams& params,
                                std::int64_t n_samples, std::uint64_t seed) {
  if (w.frames.empty()) return 0.0;
  if (w.dim() > 6) {
    throw std::invalid_argument("exact_marginal_loglik_mc: d > 6 (test oracle only)");
  }
  if (n_samples < 1) throw std::invalid_argument("exact_marginal_loglik_mc: n_samples < 1");
  const std::vector<FrameView> views = build_frame_views(w);
  const double b = 1.0 / params.lambda;
  CounterRng rng(derive_stream(seed, 0x6d6cULL));
  double total = 0.0;
  std::vector<double> logs(static_cast<std::size_t>(n_samples));

  for (const FrameView& v : views) {
    const Index m = static_cast<Index>(v.obs->size());
    if (m == 0) continue;
    const Matrix sig_oo = submatrix(params.sigma, *v.obs, *v.obs);
    Eigen::LLT<Matrix> llt(sig_oo);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("exact_marginal_loglik_mc: singular observed block");
    }
    const double log_norm_const =
        -0.5 * static_cast<double>(m) * std::log(2.0 * M_PI) - 0.5 * logdet_from_llt(llt);
    const Vector r = v.z_obs - subvector(params.mu, *v.obs);
    Vector o(m);
    for (std::int64_t i = 0; i < n_samples; ++i) {
      for (Index j = 0; j < m; ++j) o[j] = rng.next_laplace(b);
      const Vector e = r - o;
      logs[static_cast<std::size_t>(i)] = log_norm_const - 0.5 * e.dot(llt.solve(e));
    }
    const double hi = *std::max_element(logs.begin(), logs.end());
    double acc = 0.0;
    for (double lg : logs) acc += std::exp(lg - hi);
    total += hi + std::log(acc / static_cast<double>(n_samples));
  }
  return total;
}

}  // namespace utimac
