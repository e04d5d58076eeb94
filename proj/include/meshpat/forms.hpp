#pragma once

#include <string>

#include "meshpat/distribution.hpp"

namespace meshpat {

// Exact counts beyond 64 bits; c(32,1) = 31! needs ~103 bits.
using BigCount = unsigned __int128;

std::string to_string(BigCount x);

inline constexpr int kStirlingMax = 32;

// Unsigned Stirling numbers of the first kind by
// c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1), c(0,0) = 1. Zero outside the triangle.
BigCount stirling(int n, int k);
BigCount binomial(int n, int k);
BigCount big_factorial(int n);

// C(k+l,k) c(n-1,k+l)
BigCount h_closed(int n, int k, int l);
// (n-1)! C(k+l,k) sum_{i=2}^{n-1} c(i-1,k+l)/i! for (k,l) != (0,0); 2(n-1)! otherwise.
BigCount t_closed(int n, int k, int l);

// Closed forms laid out as distributions over all cells 0 <= k,l <= n.
JointDistribution h_closed_distribution(int n);
JointDistribution t_closed_distribution(int n);

// counts_n(k,l) = (n-2) prev(k,l) + prev(k-1,l) + prev(k,l-1) with n = prev.n + 1.
JointDistribution h_recurrence_step(const JointDistribution& prev);
// Same three-term rule, then +2(n-2)! at (0,0) and -(n-2)! at (1,0) and (0,1).
JointDistribution t_recurrence_x4_step(const JointDistribution& prev, int n);

// sum_{i=0}^{n-1} C(n-1,i) c(i,l) c(n-1-i,k) == C(k+l,k) c(n-1,k+l)
bool chu_vandermonde_check(int n, int k, int l);

}  // namespace meshpat
