#include "seqgc/bounds.hpp"

#include <variant>

#include "seqgc/errors.hpp"

namespace seqgc {

Rat lb_bursty(int n, const BurstyModel& m) {
  if (n < 1) throw ParamError("lower bound needs n >= 1");
  validate_model(StragglerModel{m}, n);
  const std::int64_t B = m.B, W = m.W, lam = m.lambda, nn = n;
  if (B == W) {
    if (lam >= nn) throw ParamError("bound is infinite: every worker may straggle every round");
    return Rat(1, nn - lam);
  }
  return Rat(W - 1 + B, nn * (W - 1) + B * (nn - lam));
}

Rat lb_arbitrary(int n, const ArbitraryModel& m) {
  if (n < 1) throw ParamError("lower bound needs n >= 1");
  validate_model(StragglerModel{m}, n);
  const std::int64_t N = m.N, W = m.W, lam = m.lambda, nn = n;
  if (N == W) {
    if (lam >= nn) throw ParamError("bound is infinite: every worker may straggle every round");
    return Rat(1, nn - lam);
  }
  return Rat(W, nn * (W - N) + N * (nn - lam));
}

Rat load_lower_bound(int n, const StragglerModel& m) {
  if (const auto* b = std::get_if<BurstyModel>(&m)) return lb_bursty(n, *b);
  if (const auto* a = std::get_if<ArbitraryModel>(&m)) return lb_arbitrary(n, *a);
  const auto& p = std::get<PerRoundModel>(m);
  // per-round s stragglers is the B = W = 1 burst model
  return lb_bursty(n, BurstyModel{1, 1, p.s});
}

}  // namespace seqgc
