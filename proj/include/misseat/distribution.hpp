#pragma once

#include <vector>

#include "misseat/arith.hpp"
#include "misseat/parallel.hpp"

namespace misseat {

/// The two closed-form evaluation routes. They are algebraically equal;
/// keeping both lets every distribution be cross-checked exactly.
enum class Method { theorem1, theorem2 };

const char* to_string(Method method);

/// Dense exact-rational distribution of the misseated count m = 0..n
/// for a boarding with n passengers, the first k absent-minded.
struct ExactPmf {
  int n = 1;
  int k = 0;
  std::vector<Rational> probs;  // indexed by m, size n + 1

  /// Throws InternalConsistencyError unless the masses sum to 1,
  /// probs[1] == 0, every mass is >= 0, and probs[0] == (n-k)!/n!.
  void validate() const;
};

struct MomentSummary {
  Rational mean;
  Rational variance;
};

/// Single-point evaluations. Require 1 <= k <= n; return 0 outside
/// m in [0, n]. Terms whose stirling1 factor vanishes are skipped
/// before any power with a negative exponent could be formed.
Rational pmf_theorem1(int n, int k, long m);
Rational pmf_theorem2(int n, int k, long m);

/// The small-k closed forms (k = 1, 2, 3; n >= 3). Equal to
/// pmf_theorem1 for every m; the k=1 form applies for m >= 2 and
/// delegates m in {0, 1} to the general route.
Rational pmf_special(int n, int k, long m);

/// Full distribution for 0 <= k <= n. k = 0 yields the point mass at
/// m = 0. Validates the ExactPmf invariants before returning.
ExactPmf distribution_full(int n, int k, Method method = Method::theorem1,
                           Execution exec = Execution::parallel);

/// Exact mean and variance of the misseated count.
MomentSummary moments(const ExactPmf& pmf);

/// Direct enumeration of sum over k < i_1 < ... < i_{m-s} <= n of
/// prod_j 1/(n-(i_j-1)). Requires 0 <= m-s <= n-k; the empty sequence
/// contributes the empty product 1.
Rational enumerated_weight_sum(int n, int k, long m, long s);

/// The two sides of the lah/derangement convolution identity:
///   convolution: sum_{r=t}^{s} C(s,r) L(r,t) d_{s-r}
///   alternating: (s!/t!) sum_{j=0}^{s-t} ((-1)^j / j!) C(s-j, t)
enum class LahSumForm { convolution, alternating };
Rational lah_derangement_sum(long s, long t, LahSumForm form);

/// sum_{J=lower}^{upper} (-1)^J C(upper-lower, J-lower); equals
/// (-1)^lower when lower == upper and 0 otherwise. Requires
/// 1 <= lower <= upper.
long alternating_delta(long lower, long upper);

}  // namespace misseat
