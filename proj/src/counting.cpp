#include "rsp/counting.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace rsp {

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace {

void check(const StateCountParams& p) {
  if (p.groups < 0 || p.mixed < 0 || p.tracks < 1 || p.classification < 1 || p.classification > p.tracks)
    throw std::invalid_argument("state count parameters out of range");
  for (int n : p.per_dest)
    if (n < 0) throw std::invalid_argument("negative per-destination group count");
}

}  // namespace

BigInt count_states(const StateCountParams& p) {
  check(p);
  BigInt all = factorial(p.groups) * binomial(p.groups + p.tracks - 1, p.tracks - 1);
  BigInt finals = factorial(p.mixed) * binomial(p.mixed + p.classification - 1, p.classification - 1);
  for (int n : p.per_dest) finals *= factorial(n);
  return all - (finals - 1);
}

std::uint64_t count_states_u64(const StateCountParams& p) {
  BigInt v = count_states(p);
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw Overflow("state count does not fit in 64 bits: " + v.str());
  return v.convert_to<std::uint64_t>();
}

Reduction state_reduction(const StateCountParams& base, const std::vector<int>& q, int p, int r) {
  check(base);
  if (q.size() > base.per_dest.size()) throw InvalidReduction("more q(d) values than departure tracks");
  StateCountParams red = base;
  int qsum = 0;
  for (std::size_t d = 0; d < q.size(); ++d) {
    if (q[d] < 0 || q[d] > base.per_dest[d])
      throw InvalidReduction("q(" + std::to_string(d) + ") must lie in [0, n(d)]");
    red.per_dest[d] -= q[d];
    qsum += q[d];
  }
  if (p < 0 || p > base.mixed) throw InvalidReduction("p must lie in [0, |G_N|]");
  if (r < 0 || r > base.classification - 1) throw InvalidReduction("r must lie in [0, |K_C|-1]");
  red.groups -= p + qsum;
  red.mixed -= p;
  red.tracks -= r;
  red.classification -= r;
  if (red.groups < 0) throw InvalidReduction("reduction removes more groups than exist");

  Reduction out;
  out.before = count_states(base);
  out.after = count_states(red);
  if (out.before == 0) throw InvalidReduction("base state count is zero");
  using boost::multiprecision::cpp_bin_float_50;
  cpp_bin_float_50 ratio = cpp_bin_float_50(out.after) / cpp_bin_float_50(out.before);
  out.ratio = ratio.convert_to<double>();
  out.percent_decrease = ((1 - ratio) * 100).convert_to<double>();
  return out;
}

}  // namespace rsp
