#pragma once

// Basis strings of the spin-1 chain read as lattice walks.
//
// Canonical text form: one lowercase character per site, '0' (flat), 'u'
// (up), 'd' (down); the leftmost character is site 1. Packed codes are
// base-3 integers with site 1 as the most significant digit and digit
// values Flat=0 < Up=1 < Down=2, so numeric order of codes equals
// lexicographic order of step sequences under F < U < D.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace motzkin {

enum class Step : std::uint8_t { Flat = 0, Up = 1, Down = 2 };

using Code = std::uint64_t;

inline constexpr int kMaxCodeLength = 40;   // 3^40 < 2^64
inline constexpr int kEnumerationCap = 16;  // enumerate_class / brute force scans

/// 3^n as a code-sized integer; n <= 40.
Code pow3(int n);

class WalkString {
public:
  WalkString() = default;
  explicit WalkString(std::vector<Step> steps);

  /// Parses "u0d..."; throws DomainError on other characters or empty input.
  static WalkString parse(std::string_view text);
  static WalkString decode(Code code, int length);

  Code encode() const;
  std::string str() const;

  int size() const { return static_cast<int>(steps_.size()); }
  Step operator[](int i) const { return steps_[static_cast<std::size_t>(i)]; }
  std::span<const Step> steps() const { return steps_; }

  auto operator<=>(const WalkString&) const = default;

private:
  std::vector<Step> steps_;
};

struct Imbalance {
  int p = 0;  // unbalanced down steps (start height of the minimized walk)
  int q = 0;  // unbalanced up steps (end height of the minimized walk)
  auto operator<=>(const Imbalance&) const = default;
};

/// Raw heights h_0..h_n with h_0 = 0.
struct HeightProfile {
  std::vector<int> heights;
};

HeightProfile heights(const WalkString& w);

Imbalance classify(const WalkString& w);
Imbalance classify_code(Code code, int length);

/// Twice the area under the minimized (minimum height 0) profile, trapezoid rule.
int area2(const WalkString& w);
int area2_code(Code code, int length);

struct Neighbor {
  WalkString walk;
  int area_delta = 0;  // +1 or -1, in units of A (area2 changes by 2x this)
};

/// All strings one local move away: (0u)<->(u0), (0d)<->(d0), (00)<->(ud).
std::vector<Neighbor> local_move_neighbors(const WalkString& w);

/// g_{p,q}: p downs, flats, q ups.
WalkString representative(int length, Imbalance pq);

/// Strings of the given length in class (p,q), ascending code order.
/// Filtered scan of all 3^n strings; throws ResourceError above kEnumerationCap.
std::vector<Code> class_codes(int length, Imbalance pq);
std::vector<WalkString> enumerate_class(int length, Imbalance pq);

/// Number of (p,q) pairs with p,q >= 0, p+q <= n.
inline int sector_count(int n) { return (n + 1) * (n + 2) / 2; }

/// Dense index of (p,q) among sector_count(n) pairs, ordered by p then q.
inline int sector_id(int n, Imbalance pq) {
  return pq.p * (n + 1) - pq.p * (pq.p - 1) / 2 + pq.q;
}
Imbalance sector_pair(int n, int id);

}  // namespace motzkin
