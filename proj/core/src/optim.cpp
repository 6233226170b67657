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

#include "foersim/optim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "foersim/parallel.hpp"

namespace foersim {

namespace {

using json = nlohmann::json;

void validate_problem(const OptProblem& problem) {
  if (!problem.objective) throw std::invalid_argument("optimization problem has no objective");
  if (problem.lower.size() != problem.upper.size() || problem.lower.size() == 0)
    throw std::invalid_argument("optimization bounds are empty or mismatched");
  for (Eigen::Index i = 0; i < problem.lower.size(); ++i) {
    if (!std::isfinite(problem.lower(i)) || !std::isfinite(problem.upper(i)) ||
        !(problem.lower(i) < problem.upper(i)))
      throw std::invalid_argument("optimization bounds must be finite and ordered");
  }
}

Eigen::VectorXd clip(const Eigen::VectorXd& x, const OptProblem& p) {
  return x.cwiseMax(p.lower).cwiseMin(p.upper);
}

struct BudgetExhausted {};

// Shared across restarts so the whole run honors one budget. Tracks the best
// point actually evaluated, which is what a budget-exhausted run falls back to.
class CountedObjective {
 public:
  CountedObjective(const OptProblem& problem, std::atomic<std::uint64_t>* counter)
      : problem_(problem), counter_(counter) {}

  double operator()(const Eigen::VectorXd& x) const {
    const std::uint64_t n = counter_->fetch_add(1) + 1;
    if (problem_.max_evaluations > 0 && n > problem_.max_evaluations) throw BudgetExhausted{};
    const double value = problem_.objective(x);
    if (std::isnan(value)) {
      std::ostringstream oss;
      oss << "objective returned NaN at x = [" << x.transpose() << "]";
      throw std::runtime_error(oss.str());
    }
    std::lock_guard<std::mutex> lock(best_mutex_);
    if (!have_best_ || value < best_value_) {
      have_best_ = true;
      best_value_ = value;
      best_x_ = x;
    }
    return value;
  }

  bool have_best() const { return have_best_; }
  double best_value() const { return best_value_; }
  const Eigen::VectorXd& best_x() const { return best_x_; }

 private:
  const OptProblem& problem_;
  std::atomic<std::uint64_t>* counter_;
  mutable std::mutex best_mutex_;
  mutable bool have_best_ = false;
  mutable double best_value_ = 0.0;
  mutable Eigen::VectorXd best_x_;
};

Eigen::VectorXd central_gradient(const CountedObjective& f, const OptProblem& p,
                                 const Eigen::VectorXd& x, double step_rel) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd grad(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = step_rel * std::max(std::abs(x(i)), 1.0);
    double hi = std::min(x(i) + h, p.upper(i));
    double lo = std::max(x(i) - h, p.lower(i));
    if (hi <= lo) {
      grad(i) = 0.0;
      continue;
    }
    Eigen::VectorXd xp = x, xm = x;
    xp(i) = hi;
    xm(i) = lo;
    grad(i) = (f(xp) - f(xm)) / (hi - lo);
  }
  return grad;
}

// Projected-gradient norm: the part of -grad that stays feasible.
double projected_gradient_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& grad,
                               const OptProblem& p) {
  double norm = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double g = grad(i);
    if (x(i) <= p.lower(i) && g > 0) g = 0.0;
    if (x(i) >= p.upper(i) && g < 0) g = 0.0;
    norm = std::max(norm, std::abs(g));
  }
  return norm;
}

RestartRecord refine_one(const CountedObjective& f, const OptProblem& p,
                         const Eigen::VectorXd& x0, const LocalRefineOptions& opts,
                         int restart_index) {
  RestartRecord record;
  record.index = restart_index;
  record.start = clip(x0, p);

  const Eigen::Index n = x0.size();
  Eigen::VectorXd x = record.start;
  double fx = f(x);
  Eigen::VectorXd grad = central_gradient(f, p, x, opts.fd_step_rel);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    if (projected_gradient_norm(x, grad, p) < opts.gradient_tol) break;

    Eigen::VectorXd direction = -(h_inv * grad);
    // Drop components that push against an active bound; fall back to
    // steepest descent if the quasi-Newton direction is not a descent one.
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((x(i) <= p.lower(i) && direction(i) < 0) || (x(i) >= p.upper(i) && direction(i) > 0))
        direction(i) = 0.0;
    }
    if (direction.dot(grad) >= 0.0 || direction.norm() == 0.0) {
      h_inv.setIdentity();
      direction = -grad;
      for (Eigen::Index i = 0; i < n; ++i) {
        if ((x(i) <= p.lower(i) && direction(i) < 0) || (x(i) >= p.upper(i) && direction(i) > 0))
          direction(i) = 0.0;
      }
      if (direction.norm() == 0.0) break;
    }

    // Largest feasible step along the direction.
    double alpha_max = 1e30;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (direction(i) > 0) alpha_max = std::min(alpha_max, (p.upper(i) - x(i)) / direction(i));
      else if (direction(i) < 0)
        alpha_max = std::min(alpha_max, (p.lower(i) - x(i)) / direction(i));
    }
    if (!(alpha_max > 0)) break;

    const double slope = direction.dot(grad);
    double alpha = std::min(1.0, alpha_max);
    double f_new = fx;
    Eigen::VectorXd x_new = x;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = clip(x + alpha * direction, p);
      f_new = f(x_new);
      if (f_new <= fx + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted || f_new >= fx) break;

    Eigen::VectorXd grad_new = central_gradient(f, p, x_new, opts.fd_step_rel);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const Eigen::VectorXd hy = h_inv * y;
      const double yhy = y.dot(hy);
      h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
               (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    x = x_new;
    fx = f_new;
    grad = grad_new;
  }

  record.x = x;
  record.value = fx;
  record.iterations = iter;
  return record;
}

json record_to_json(const RestartRecord& r) {
  json j;
  j["index"] = r.index;
  j["value"] = r.value;
  j["iterations"] = r.iterations;
  j["start"] = std::vector<double>(r.start.data(), r.start.data() + r.start.size());
  j["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
  return j;
}

RestartRecord record_from_json(const json& j) {
  RestartRecord r;
  r.index = j.at("index").get<int>();
  r.value = j.at("value").get<double>();
  r.iterations = j.at("iterations").get<int>();
  const auto start = j.at("start").get<std::vector<double>>();
  const auto x = j.at("x").get<std::vector<double>>();
  r.start = Eigen::Map<const Eigen::VectorXd>(start.data(), static_cast<Eigen::Index>(start.size()));
  r.x = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  return r;
}

}  // namespace

OptResult local_refine(const OptProblem& problem, const Eigen::VectorXd& x0,
                       const LocalRefineOptions& opts) {
  validate_problem(problem);
  if (x0.size() != problem.lower.size())
    throw std::invalid_argument("local_refine: start dimension mismatch");

  std::atomic<std::uint64_t> evals{0};
  CountedObjective f(problem, &evals);
  OptResult result;
  try {
    RestartRecord record = refine_one(f, problem, x0, opts, 0);
    result.best_x = record.x;
    result.best_value = record.value;
    result.history.push_back(std::move(record));
  } catch (const BudgetExhausted&) {
    result.budget_exhausted = true;
    if (f.have_best()) {
      result.best_x = f.best_x();
      result.best_value = f.best_value();
    } else {
      throw std::runtime_error("local_refine: evaluation budget too small for a single call");
    }
  }
  result.evaluations = evals.load();
  return result;
}

OptResult multistart(const OptProblem& problem, const MultistartOptions& opts) {
  validate_problem(problem);
  if (opts.n_random + opts.n_gaussian < 1)
    throw std::invalid_argument("multistart: need at least one restart");

  const Eigen::Index n = problem.lower.size();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  std::vector<RestartRecord> done;
  if (!opts.checkpoint_path.empty()) {
    std::ifstream in(opts.checkpoint_path);
    if (in) {
      json j;
      in >> j;
      if (j.value("seed", opts.seed) != opts.seed)
        throw std::runtime_error("checkpoint seed does not match this run");
      for (const auto& rj : j.at("restarts")) done.push_back(record_from_json(rj));
    }
  }
  auto already_done = [&](int index) {
    for (const auto& r : done)
      if (r.index == index) return true;
    return false;
  };

  std::atomic<std::uint64_t> evals{0};
  CountedObjective f(problem, &evals);
  std::atomic<bool> exhausted{false};

  auto run_stage = [&](const std::vector<Eigen::VectorXd>& starts, int index_offset,
                       std::vector<RestartRecord>& out) {
    std::vector<RestartRecord> records(starts.size());
    std::vector<char> computed(starts.size(), 0);
    parallel_for_index(static_cast<int>(starts.size()), opts.threads, [&](int i) {
      const int index = index_offset + i;
      if (already_done(index) || exhausted.load()) return;
      try {
        records[static_cast<std::size_t>(i)] =
            refine_one(f, problem, starts[static_cast<std::size_t>(i)], opts.local, index);
        computed[static_cast<std::size_t>(i)] = 1;
      } catch (const BudgetExhausted&) {
        exhausted.store(true);
      }
    });
    for (std::size_t i = 0; i < starts.size(); ++i)
      if (computed[i]) out.push_back(records[i]);
  };

  // Stage 1: uniform starts, drawn up front so thread scheduling cannot
  // change the sampled points.
  std::vector<Eigen::VectorXd> random_starts;
  random_starts.reserve(static_cast<std::size_t>(opts.n_random));
  for (int i = 0; i < opts.n_random; ++i) {
    Eigen::VectorXd x(n);
    for (Eigen::Index d = 0; d < n; ++d)
      x(d) = problem.lower(d) + (problem.upper(d) - problem.lower(d)) * uniform(rng);
    random_starts.push_back(std::move(x));
  }

  std::vector<RestartRecord> fresh;
  run_stage(random_starts, 0, fresh);

  auto best_of = [](const std::vector<RestartRecord>& records) {
    const RestartRecord* best = nullptr;
    for (const auto& r : records)
      if (!best || r.value < best->value || (r.value == best->value && r.index < best->index))
        best = &r;
    return best;
  };

  std::vector<RestartRecord> all = done;
  for (const auto& r : fresh) all.push_back(r);
  const RestartRecord* stage1_best = best_of(all);
  if (!stage1_best) {
    // Budget died before any restart finished; hand back the best point seen.
    if (!f.have_best()) throw std::runtime_error("multistart: no restart completed");
    OptResult result;
    result.best_x = f.best_x();
    result.best_value = f.best_value();
    result.evaluations = evals.load();
    result.budget_exhausted = true;
    return result;
  }

  // Stage 2: Gaussian cloud around the best point seen so far.
  std::vector<Eigen::VectorXd> gaussian_starts;
  gaussian_starts.reserve(static_cast<std::size_t>(opts.n_gaussian));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < opts.n_gaussian; ++i) {
    Eigen::VectorXd x(n);
    for (Eigen::Index d = 0; d < n; ++d) {
      const double sigma = opts.sigma_rel * (problem.upper(d) - problem.lower(d));
      x(d) = stage1_best->x(d) + sigma * normal(rng);
    }
    gaussian_starts.push_back(clip(x, problem));
  }
  run_stage(gaussian_starts, opts.n_random, all);

  std::sort(all.begin(), all.end(),
            [](const RestartRecord& a, const RestartRecord& b) { return a.index < b.index; });

  OptResult result;
  const RestartRecord* best = best_of(all);
  result.best_x = best->x;
  result.best_value = best->value;
  result.history = all;
  result.evaluations = evals.load();
  result.budget_exhausted = exhausted.load();

  if (!opts.checkpoint_path.empty()) {
    json j;
    j["seed"] = opts.seed;
    j["n_random"] = opts.n_random;
    j["n_gaussian"] = opts.n_gaussian;
    j["best_value"] = result.best_value;
    j["restarts"] = json::array();
    for (const auto& r : all) j["restarts"].push_back(record_to_json(r));
    std::ofstream out(opts.checkpoint_path);
    out << j.dump(2) << "\n";
  }
  return result;
}

std::string serialize_opt_result(const OptResult& result) {
  std::ostringstream oss;
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  oss << "best_value=" << fmt(result.best_value) << "\n";
  oss << "evaluations=" << result.evaluations << "\n";
  oss << "budget_exhausted=" << (result.budget_exhausted ? 1 : 0) << "\n";
  oss << "best_x=";
  for (Eigen::Index i = 0; i < result.best_x.size(); ++i)
    oss << (i ? "," : "") << fmt(result.best_x(i));
  oss << "\n";
  for (const auto& r : result.history) {
    oss << "restart " << r.index << " value=" << fmt(r.value) << " iters=" << r.iterations
        << " x=";
    for (Eigen::Index i = 0; i < r.x.size(); ++i) oss << (i ? "," : "") << fmt(r.x(i));
    oss << "\n";
  }
  return oss.str();
}

}  // namespace foersim
