#include "seqgc/gc_code.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "seqgc/errors.hpp"
#include "seqgc/rng.hpp"

namespace seqgc {
namespace {

// C(n,k), clamped to cap+1 once it exceeds the cap.
std::size_t choose_capped(int n, int k, std::size_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) {
    double next = double(r) * double(n - k + i) / double(i);
    if (next > double(cap) + 1.0) return cap + 1;
    r = r * std::size_t(n - k + i) / std::size_t(i);
  }
  return r;
}

// least-squares combination of the given coefficient rows against all-ones
struct SpanSolve {
  Eigen::VectorXd beta;
  double residual;  // relative to ||1|| = sqrt(n)
};

SpanSolve solve_for_ones(const Eigen::MatrixXd& coeff, const std::vector<int>& rows) {
  const int n = int(coeff.cols());
  Eigen::MatrixXd m(n, rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) m.col(Eigen::Index(k)) = coeff.row(rows[k]).transpose();
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd beta = m.completeOrthogonalDecomposition().solve(ones);
  double residual = (m * beta - ones).norm() / std::sqrt(double(n));
  return {beta, residual};
}

bool spans_ones(const Eigen::MatrixXd& coeff, const std::vector<int>& responders, double tol) {
  return solve_for_ones(coeff, responders).residual <= tol;
}

// all responder sets obtained by deleting one size-s straggler set
bool verify_all(const Eigen::MatrixXd& coeff, int n, int s, double tol) {
  std::vector<int> stragglers(s);
  for (int i = 0; i < s; ++i) stragglers[i] = i;
  while (true) {
    std::vector<int> responders;
    responders.reserve(n - s);
    for (int i = 0, k = 0; i < n; ++i) {
      if (k < s && stragglers[k] == i) {
        ++k;
      } else {
        responders.push_back(i);
      }
    }
    if (!spans_ones(coeff, responders, tol)) return false;
    // next combination
    int i = s - 1;
    while (i >= 0 && stragglers[i] == n - s + i) --i;
    if (i < 0) break;
    ++stragglers[i];
    for (int j = i + 1; j < s; ++j) stragglers[j] = stragglers[j - 1] + 1;
  }
  return true;
}

bool verify_sampled(const Eigen::MatrixXd& coeff, int n, int s, double tol, int samples,
                    std::uint64_t seed) {
  Rng rng(absorb(seed, 0x5e7f));
  for (int it = 0; it < samples; ++it) {
    std::set<int> stragglers;
    while (int(stragglers.size()) < s) stragglers.insert(rng.uniform_int(0, n - 1));
    std::vector<int> responders;
    responders.reserve(n - s);
    for (int i = 0; i < n; ++i)
      if (!stragglers.count(i)) responders.push_back(i);
    if (!spans_ones(coeff, responders, tol)) return false;
  }
  return true;
}

}  // namespace

GcCode::GcCode(int n, int s, Eigen::MatrixXd coeff) : n_(n), s_(s), coeff_(std::move(coeff)) {}

std::vector<int> GcCode::support(int worker) const {
  std::vector<int> chunks(s_ + 1);
  for (int k = 0; k <= s_; ++k) chunks[k] = (worker + k) % n_;
  return chunks;
}

GcCode GcCode::build(int n, int s, std::uint64_t seed, const GcCodeOptions& opts) {
  if (n < 1) throw ParamError("gc code: n must be positive");
  if (s < 0 || s >= n) throw ParamError("gc code: need 0 <= s < n");

  if (s == 0) return GcCode(n, 0, Eigen::MatrixXd::Identity(n, n));

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    Rng rng(absorb(seed, std::uint64_t(attempt)));

    // random s x n matrix whose rows each sum to zero, so its null space contains
    // the all-ones vector; every code row is solved into that null space
    Eigen::MatrixXd h(s, n);
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < n - 1; ++c) h(r, c) = rng.uniform(-1.0, 1.0);
    for (int r = 0; r < s; ++r) {
      double sum = 0;
      for (int c = 0; c < n - 1; ++c) sum += h(r, c);
      h(r, n - 1) = -sum;
    }

    Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(n, n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      Eigen::MatrixXd m(s, s);
      Eigen::VectorXd rhs = -h.col(i);
      for (int k = 1; k <= s; ++k) m.col(k - 1) = h.col((i + k) % n);
      Eigen::VectorXd y = m.partialPivLu().solve(rhs);
      if (!y.allFinite() || (m * y - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm())) {
        ok = false;
        break;
      }
      coeff(i, i) = 1.0;
      for (int k = 1; k <= s; ++k) coeff(i, (i + k) % n) = y[k - 1];
    }
    if (!ok) continue;

    std::size_t sets = choose_capped(n, s, opts.enumerate_cap);
    bool verified = sets <= opts.enumerate_cap
                        ? verify_all(coeff, n, s, opts.residual_tol)
                        : verify_sampled(coeff, n, s, opts.residual_tol, opts.sample_count,
                                         absorb(seed, std::uint64_t(attempt)));
    if (verified) return GcCode(n, s, std::move(coeff));
  }
  throw std::runtime_error("gc code: construction failed verification after " +
                           std::to_string(opts.max_attempts) + " attempts (n=" +
                           std::to_string(n) + ", s=" + std::to_string(s) + ")");
}

DecodeOutput gc_decode(const GcCode& code, const std::vector<WorkerResult>& results,
                       double residual_tol) {
  const int n = code.n();
  if (int(results.size()) < n - code.s())
    throw DecodeError("gc decode: " + std::to_string(results.size()) + " results, need at least " +
                      std::to_string(n - code.s()));

  std::vector<int> workers;
  workers.reserve(results.size());
  std::set<int> seen;
  Eigen::Index dim = results.front().value.size();
  for (const auto& r : results) {
    if (r.worker < 0 || r.worker >= n) throw ParamError("gc decode: worker id out of range");
    if (!seen.insert(r.worker).second) throw ParamError("gc decode: duplicate worker result");
    if (r.value.size() != dim) throw ParamError("gc decode: mismatched result dimensions");
    workers.push_back(r.worker);
  }

  SpanSolve sol = solve_for_ones(code.coefficients(), workers);
  if (sol.residual > residual_tol)
    throw DecodeError("gc decode: combination residual " + std::to_string(sol.residual) +
                      " exceeds tolerance");

  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
  for (std::size_t k = 0; k < results.size(); ++k) g += sol.beta[Eigen::Index(k)] * results[k].value;
  return {g, sol.residual};
}

GcRepCode GcRepCode::build(int n, int s) {
  if (n < 1) throw ParamError("gc-rep code: n must be positive");
  if (s < 0 || s >= n) throw ParamError("gc-rep code: need 0 <= s < n");
  if (n % (s + 1) != 0)
    throw ParamError("gc-rep code: (s+1) must divide n, got n=" + std::to_string(n) +
                     ", s=" + std::to_string(s));
  return GcRepCode(n, s);
}

std::vector<int> GcRepCode::group_chunks(int group) const {
  std::vector<int> chunks(s_ + 1);
  for (int k = 0; k <= s_; ++k) chunks[k] = group * (s_ + 1) + k;
  return chunks;
}

RepDecodeOutput gc_rep_decode(const GcRepCode& code, const std::vector<WorkerResult>& results) {
  std::vector<int> rep(code.groups(), -1);
  Eigen::Index dim = -1;
  std::vector<const Eigen::VectorXd*> values(code.groups(), nullptr);
  for (const auto& r : results) {
    if (r.worker < 0 || r.worker >= code.n()) throw ParamError("gc-rep decode: worker id out of range");
    if (dim < 0) dim = r.value.size();
    if (r.value.size() != dim) throw ParamError("gc-rep decode: mismatched result dimensions");
    int g = code.group_of(r.worker);
    if (rep[g] < 0) {
      rep[g] = r.worker;
      values[g] = &r.value;
    }
  }
  for (int g = 0; g < code.groups(); ++g)
    if (rep[g] < 0)
      throw DecodeError("gc-rep decode: no result from group " + std::to_string(g));

  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
  for (auto* v : values) g += *v;
  return {g, rep};
}

}  // namespace seqgc
