// Copyright 2026 The foersim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "foersim/propagate.hpp"

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boost::numeric::odeint {

// The stock Eigen adapter reports a complex infinity norm for complex
// matrices, which the error checker cannot consume.
template <>
struct vector_space_norm_inf<Eigen::VectorXcd> {
  typedef double result_type;
  double operator()(const Eigen::VectorXcd& v) const { return v.cwiseAbs().maxCoeff(); }
};

}  // namespace boost::numeric::odeint

namespace foersim {

namespace {

namespace ode = boost::numeric::odeint;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Stacked ODE state: m pair-space states followed by m running T_R values
// (real parts), so the quadrature shares the stepper's error control.
struct StackedRhs {
  const Eigen::MatrixXcd* h_int = nullptr;
  const Segment* segment = nullptr;
  const LevelScheme* scheme = nullptr;
  const Eigen::VectorXd* pi_diag = nullptr;
  double half_decay_rate = 0.0;  // Gamma/2 in non-Hermitian mode, else 0
  int dim = 0;
  int n_states = 0;
  mutable Eigen::MatrixXcd h_work;

  void operator()(const Eigen::VectorXcd& x, Eigen::VectorXcd& dxdt, double t) const {
    assemble_drive_into(*h_int, *scheme, *segment, t, h_work);
    dxdt.resize(x.size());
    const Eigen::Map<const Eigen::MatrixXcd> psi(x.data(), dim, n_states);
    Eigen::Map<Eigen::MatrixXcd> dpsi(dxdt.data(), dim, n_states);
    dpsi.noalias() = cd(0.0, -1.0) * (h_work * psi);
    if (half_decay_rate != 0.0)
      dpsi -= half_decay_rate * (pi_diag->asDiagonal() * psi);
    for (int k = 0; k < n_states; ++k)
      dxdt(dim * n_states + k) = (pi_diag->array() * psi.col(k).array().abs2()).sum();
  }
};

// integral over [0, T] of exp(i w t) dt, stable for small w T.
cd phase_integral(double w, double T) {
  const double wt = w * T;
  if (std::abs(wt) < 1e-8) return cd(T, 0.5 * w * T * T);
  return (std::exp(cd(0.0, wt)) - 1.0) / cd(0.0, w);
}

class Engine {
 public:
  Engine(const ModelSpec& model, const Schedule& schedule,
         const std::vector<Eigen::VectorXcd>& initial, const PropagationOptions& opts)
      : model_(model),
        schedule_(schedule),
        opts_(opts),
        scheme_(model.scheme()),
        dim_(scheme_.pair_dim()),
        n_states_(static_cast<int>(initial.size())),
        h_int_(build_interaction(model)),
        pi_diag_(rydberg_number_diagonal(scheme_)) {
    check_compatibility(model, schedule);
    if (initial.empty()) throw std::invalid_argument("propagate: no initial states");
    state_.resize(dim_ * n_states_ + n_states_);
    for (int k = 0; k < n_states_; ++k) {
      const auto& psi = initial[static_cast<std::size_t>(k)];
      if (psi.size() != dim_)
        throw std::invalid_argument("propagate: initial state dimension mismatch");
      if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate: initial states must be normalized");
      state_.segment(dim_ * k, dim_) = psi;
      state_(dim_ * n_states_ + k) = 0.0;
    }
    if (opts.sample_points > 0) {
      const int n = std::max(2, opts.sample_points);
      sample_times_.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        sample_times_.push_back(schedule.total_duration() * i / (n - 1));
    }
  }

  Trajectory run() {
    Trajectory out;
    out.total_duration = schedule_.total_duration();
    out.entries.resize(static_cast<std::size_t>(n_states_));
    for (auto& e : out.entries) e.t_r_per_segment.reserve(schedule_.segments().size());

    if (!sample_times_.empty()) record_samples(0.0, out);

    double t_start = 0.0;
    for (const auto& seg : schedule_.segments()) {
      Eigen::VectorXd t_r_before(n_states_);
      for (int k = 0; k < n_states_; ++k) t_r_before(k) = state_(dim_ * n_states_ + k).real();

      const bool exact_ok = seg.is_constant() && !opts_.force_integrator &&
                            opts_.decay != DecayMode::NonHermitian;
      if (exact_ok)
        advance_exact(seg, t_start, out);
      else
        advance_integrator(seg, t_start, out);

      for (int k = 0; k < n_states_; ++k)
        out.entries[static_cast<std::size_t>(k)].t_r_per_segment.push_back(
            state_(dim_ * n_states_ + k).real() - t_r_before(k));
      t_start += seg.duration;
    }

    for (int k = 0; k < n_states_; ++k) {
      auto& entry = out.entries[static_cast<std::size_t>(k)];
      entry.final_state = state_.segment(dim_ * k, dim_);
      entry.t_r = state_(dim_ * n_states_ + k).real();
      entry.survival_norm = entry.final_state.norm();
    }
    return out;
  }

 private:
  // Constant segment: one Hermitian diagonalization gives both the state
  // advance and the exact T_R integral.
  void advance_exact(const Segment& seg, double t_start, Trajectory& out) {
    Eigen::MatrixXcd h;
    assemble_drive_into(h_int_, scheme_, seg, 0.0, h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("propagate: eigendecomposition failed");
    const Eigen::MatrixXcd& u = es.eigenvectors();
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXcd pi_tilde = u.adjoint() * pi_diag_.asDiagonal() * u;

    auto advance_state = [&](const Eigen::VectorXcd& c, double t) -> Eigen::VectorXcd {
      Eigen::VectorXcd phases(dim_);
      for (int i = 0; i < dim_; ++i) phases(i) = std::exp(cd(0.0, -lam(i) * t));
      return u * phases.cwiseProduct(c);
    };

    std::vector<Eigen::VectorXcd> coeffs(static_cast<std::size_t>(n_states_));
    for (int k = 0; k < n_states_; ++k)
      coeffs[static_cast<std::size_t>(k)] = u.adjoint() * state_.segment(dim_ * k, dim_);

    // Samples that fall inside this segment.
    while (next_sample_ < sample_times_.size()) {
      const double ts = sample_times_[next_sample_];
      if (ts > t_start + seg.duration + 1e-15) break;
      const double tl = std::clamp(ts - t_start, 0.0, seg.duration);
      for (int k = 0; k < n_states_; ++k) {
        const Eigen::VectorXcd psi = advance_state(coeffs[static_cast<std::size_t>(k)], tl);
        push_sample(out, k, ts, psi);
      }
      ++next_sample_;
    }

    for (int k = 0; k < n_states_; ++k) {
      const auto& c = coeffs[static_cast<std::size_t>(k)];
      state_.segment(dim_ * k, dim_) = advance_state(c, seg.duration);
      cd t_r_add = 0.0;
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
          const cd weight = std::conj(c(i)) * c(j) * pi_tilde(i, j);
          if (weight != cd(0.0, 0.0))
            t_r_add += weight * phase_integral(lam(i) - lam(j), seg.duration);
        }
      state_(dim_ * n_states_ + k) += t_r_add.real();
    }
  }

  void advance_integrator(const Segment& seg, double t_start, Trajectory& out) {
    StackedRhs rhs;
    rhs.h_int = &h_int_;
    rhs.segment = &seg;
    rhs.scheme = &scheme_;
    rhs.pi_diag = &pi_diag_;
    rhs.half_decay_rate =
        opts_.decay == DecayMode::NonHermitian ? 0.5 * model_.decay_rate() : 0.0;
    rhs.dim = dim_;
    rhs.n_states = n_states_;

    auto stepper = ode::make_controlled(
        opts_.atol, opts_.rtol,
        ode::runge_kutta_fehlberg78<Eigen::VectorXcd, double, Eigen::VectorXcd, double,
                                    ode::vector_space_algebra>());
    const double dt0 = seg.duration / 128.0;

    double t_local = 0.0;
    while (next_sample_ < sample_times_.size()) {
      const double ts = sample_times_[next_sample_];
      if (ts > t_start + seg.duration + 1e-15) break;
      const double tl = std::clamp(ts - t_start, 0.0, seg.duration);
      if (tl > t_local)
        ode::integrate_adaptive(stepper, rhs, state_, t_local, tl, dt0);
      t_local = tl;
      for (int k = 0; k < n_states_; ++k)
        push_sample(out, k, ts, state_.segment(dim_ * k, dim_));
      ++next_sample_;
    }
    if (t_local < seg.duration)
      ode::integrate_adaptive(stepper, rhs, state_, t_local, seg.duration, dt0);
  }

  void record_samples(double t, Trajectory& out) {
    // Initial sample (t = 0) before any segment runs.
    if (next_sample_ < sample_times_.size() && sample_times_[next_sample_] <= t + 1e-15) {
      for (int k = 0; k < n_states_; ++k)
        push_sample(out, k, sample_times_[next_sample_], state_.segment(dim_ * k, dim_));
      ++next_sample_;
    }
  }

  void push_sample(Trajectory& out, int k, double t, const Eigen::VectorXcd& psi) {
    SamplePoint p;
    p.t = t;
    p.populations = psi.cwiseAbs2().real();
    p.p_r = pi_diag_.dot(p.populations);
    out.entries[static_cast<std::size_t>(k)].samples.push_back(std::move(p));
  }

  const ModelSpec& model_;
  const Schedule& schedule_;
  PropagationOptions opts_;
  LevelScheme scheme_;
  int dim_;
  int n_states_;
  Eigen::MatrixXcd h_int_;
  Eigen::VectorXd pi_diag_;
  Eigen::VectorXcd state_;
  std::vector<double> sample_times_;
  std::size_t next_sample_ = 0;
};

}  // namespace

Trajectory propagate(const ModelSpec& model, const Schedule& schedule,
                     const std::vector<Eigen::VectorXcd>& initial_states,
                     const PropagationOptions& opts) {
  Engine engine(model, schedule, initial_states, opts);
  return engine.run();
}

std::vector<Eigen::VectorXcd> computational_states(const LevelScheme& scheme) {
  std::vector<Eigen::VectorXcd> states;
  states.reserve(4);
  for (int qa = 0; qa < 2; ++qa)
    for (int qb = 0; qb < 2; ++qb) {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(scheme.pair_dim());
      psi(scheme.qubit_index(qa, qb)) = 1.0;
      states.push_back(std::move(psi));
    }
  return states;
}

double analytic_blockade_population(double omega, double V, double t) {
  const double rabi2 = omega * omega + V * V;
  if (rabi2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(rabi2) * t);
  return omega * omega / rabi2 * s * s;
}

std::complex<double> analytic_a1_amplitude(double omega, double V, double t) {
  if (V == 0.0) throw std::invalid_argument("analytic_a1_amplitude: V must be nonzero");
  const double eps = omega / (2.0 * V);
  const double lambda = std::sqrt(V * V + 0.25 * omega * omega);
  return {(1.0 + eps * eps * std::cos(lambda * t)) / (1.0 + eps * eps), 0.0};
}

double stark_phase_one_eigenstate(double omega, double V) {
  if (V == 0.0) throw std::invalid_argument("stark_phase: V must be nonzero");
  return kPi * omega / (2.0 * V);
}

}  // namespace foersim
