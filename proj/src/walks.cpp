#include "motzkin/walks.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "motzkin/errors.hpp"

namespace motzkin {

namespace {

constexpr int step_delta(Step s) {
  switch (s) {
    case Step::Up: return 1;
    case Step::Down: return -1;
    case Step::Flat: return 0;
  }
  return 0;
}

constexpr int digit_delta(unsigned d) { return d == 1 ? 1 : (d == 2 ? -1 : 0); }

void check_length(int length) {
  if (length < 1 || length > kMaxCodeLength) {
    throw DomainError("walk length must be in [1, 40], got " + std::to_string(length));
  }
}

// Digits of a code, site 1 first.
std::array<unsigned, kMaxCodeLength> digits_of(Code code, int length) {
  std::array<unsigned, kMaxCodeLength> d{};
  for (int i = length - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<unsigned>(code % 3);
    code /= 3;
  }
  return d;
}

}  // namespace

Code pow3(int n) {
  Code r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

WalkString::WalkString(std::vector<Step> steps) : steps_(std::move(steps)) {
  check_length(size());
}

WalkString WalkString::parse(std::string_view text) {
  std::vector<Step> steps;
  steps.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '0': steps.push_back(Step::Flat); break;
      case 'u': steps.push_back(Step::Up); break;
      case 'd': steps.push_back(Step::Down); break;
      default:
        throw DomainError("invalid step character '" + std::string(1, c) + "' in walk string");
    }
  }
  return WalkString(std::move(steps));
}

WalkString WalkString::decode(Code code, int length) {
  check_length(length);
  if (length < kMaxCodeLength && code >= pow3(length)) {
    throw DomainError("code out of range for walk length");
  }
  auto d = digits_of(code, length);
  std::vector<Step> steps(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) steps[static_cast<std::size_t>(i)] = static_cast<Step>(d[static_cast<std::size_t>(i)]);
  return WalkString(std::move(steps));
}

Code WalkString::encode() const {
  Code c = 0;
  for (Step s : steps_) c = c * 3 + static_cast<Code>(s);
  return c;
}

std::string WalkString::str() const {
  std::string out;
  out.reserve(steps_.size());
  for (Step s : steps_) out.push_back(s == Step::Flat ? '0' : (s == Step::Up ? 'u' : 'd'));
  return out;
}

HeightProfile heights(const WalkString& w) {
  HeightProfile hp;
  hp.heights.reserve(static_cast<std::size_t>(w.size()) + 1);
  int h = 0;
  hp.heights.push_back(h);
  for (Step s : w.steps()) {
    h += step_delta(s);
    hp.heights.push_back(h);
  }
  return hp;
}

Imbalance classify(const WalkString& w) { return classify_code(w.encode(), w.size()); }

Imbalance classify_code(Code code, int length) {
  auto d = digits_of(code, length);
  int h = 0, lo = 0;
  for (int i = 0; i < length; ++i) {
    h += digit_delta(d[static_cast<std::size_t>(i)]);
    lo = std::min(lo, h);
  }
  return {-lo, h - lo};
}

int area2(const WalkString& w) { return area2_code(w.encode(), w.size()); }

int area2_code(Code code, int length) {
  auto d = digits_of(code, length);
  int h = 0, lo = 0, sum = 0;
  // sum of (h_{j-1} + h_j) on the raw profile, shifted afterwards
  for (int i = 0; i < length; ++i) {
    int next = h + digit_delta(d[static_cast<std::size_t>(i)]);
    sum += h + next;
    h = next;
    lo = std::min(lo, h);
  }
  return sum - 2 * length * lo;
}

std::vector<Neighbor> local_move_neighbors(const WalkString& w) {
  std::vector<Neighbor> out;
  const int n = w.size();
  std::vector<Step> s(w.steps().begin(), w.steps().end());
  auto emit = [&](int i, Step a, Step b, int delta) {
    auto copy = s;
    copy[static_cast<std::size_t>(i)] = a;
    copy[static_cast<std::size_t>(i) + 1] = b;
    out.push_back({WalkString(std::move(copy)), delta});
  };
  for (int i = 0; i + 1 < n; ++i) {
    const Step a = s[static_cast<std::size_t>(i)], b = s[static_cast<std::size_t>(i) + 1];
    using enum Step;
    if (a == Flat && b == Up) emit(i, Up, Flat, +1);
    else if (a == Up && b == Flat) emit(i, Flat, Up, -1);
    else if (a == Flat && b == Down) emit(i, Down, Flat, -1);
    else if (a == Down && b == Flat) emit(i, Flat, Down, +1);
    else if (a == Flat && b == Flat) emit(i, Up, Down, +1);
    else if (a == Up && b == Down) emit(i, Flat, Flat, -1);
  }
  return out;
}

WalkString representative(int length, Imbalance pq) {
  if (pq.p < 0 || pq.q < 0 || pq.p + pq.q > length) {
    throw DomainError("invalid imbalance for representative walk");
  }
  std::vector<Step> steps(static_cast<std::size_t>(length), Step::Flat);
  for (int i = 0; i < pq.p; ++i) steps[static_cast<std::size_t>(i)] = Step::Down;
  for (int i = 0; i < pq.q; ++i) steps[static_cast<std::size_t>(length - 1 - i)] = Step::Up;
  return WalkString(std::move(steps));
}

std::vector<Code> class_codes(int length, Imbalance pq) {
  check_length(length);
  if (length > kEnumerationCap) {
    throw ResourceError("class enumeration capped at length " + std::to_string(kEnumerationCap));
  }
  if (pq.p < 0 || pq.q < 0 || pq.p + pq.q > length) {
    throw DomainError("invalid imbalance (p,q) for length " + std::to_string(length));
  }
  std::vector<Code> out;
  const Code total = pow3(length);
  for (Code c = 0; c < total; ++c) {
    if (classify_code(c, length) == pq) out.push_back(c);
  }
  return out;
}

std::vector<WalkString> enumerate_class(int length, Imbalance pq) {
  std::vector<WalkString> out;
  for (Code c : class_codes(length, pq)) out.push_back(WalkString::decode(c, length));
  return out;
}

Imbalance sector_pair(int n, int id) {
  for (int p = 0; p <= n; ++p) {
    const int width = n - p + 1;
    if (id < width) return {p, id};
    id -= width;
  }
  throw DomainError("sector id out of range");
}

}  // namespace motzkin
