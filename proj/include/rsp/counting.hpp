#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rsp {

using BigInt = boost::multiprecision::cpp_int;

struct StateCountParams {
  int groups = 0;              // total group count
  int mixed = 0;               // |G_N|
  int tracks = 0;              // |K|
  int classification = 0;      // |K_C|
  std::vector<int> per_dest;   // n(d) for each departure track
};

class InvalidReduction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Number of DP vertices: all arrangements of the groups over the tracks minus the duplicate
// final arrangements. Evaluated as written, without requiring groups == mixed + sum(per_dest).
BigInt count_states(const StateCountParams& p);

// Same value narrowed to 64 bits, throwing Overflow when it does not fit.
std::uint64_t count_states_u64(const StateCountParams& p);

struct Reduction {
  BigInt before;
  BigInt after;
  double ratio = 1.0;
  double percent_decrease = 0.0;
};

// q[d] fewer groups per destination, p fewer destination-free groups, r fewer classification tracks.
Reduction state_reduction(const StateCountParams& base, const std::vector<int>& q, int p, int r);

BigInt factorial(int n);
BigInt binomial(int n, int k);

}  // namespace rsp
