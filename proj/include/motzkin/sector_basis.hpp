#pragma once

#include <cstdint>
#include <vector>

#include "motzkin/walks.hpp"

namespace motzkin {

inline constexpr int kSectorBasisCap = 16;

/// All 3^n basis codes grouped by imbalance class, with reverse lookup.
class SectorBasis {
public:
  explicit SectorBasis(int n);

  int length() const { return n_; }
  int sectors() const { return sector_count(n_); }
  std::size_t full_dimension() const { return sector_of_.size(); }

  const std::vector<Code>& codes(Imbalance pq) const { return codes_[static_cast<std::size_t>(sector_id(n_, pq))]; }
  const std::vector<Code>& codes(int sector) const { return codes_[static_cast<std::size_t>(sector)]; }
  std::size_t dimension(Imbalance pq) const { return codes(pq).size(); }

  int sector_of(Code code) const { return sector_of_[code]; }
  std::uint32_t index_of(Code code) const { return index_of_[code]; }
  /// Sector id of every code, indexed by code.
  const std::vector<std::uint16_t>& labels() const { return sector_of_; }

private:
  int n_;
  std::vector<std::vector<Code>> codes_;
  std::vector<std::uint16_t> sector_of_;
  std::vector<std::uint32_t> index_of_;
};

}  // namespace motzkin
