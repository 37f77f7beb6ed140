#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "tileforge/error.hpp"

namespace tileforge {

/// Offsets a_1 < a_2 < ... of a barrier family. Offset a puts one horizontal
/// unit barrier at height t + 1/2 spanning x in [t - a, t - a + 1] for every
/// integer t, so all barriers of that offset lie along y = x + a.
class BarrierSet {
 public:
  BarrierSet() = default;

  explicit BarrierSet(std::vector<int> offsets) : offsets_(std::move(offsets)) {
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
      if (offsets_[i] < 0)
        throw precondition_error("barrier offsets must be nonnegative");
      if (i > 0 && offsets_[i] <= offsets_[i - 1])
        throw precondition_error("barrier offsets must be strictly increasing");
    }
  }

  BarrierSet(std::initializer_list<int> offsets)
      : BarrierSet(std::vector<int>(offsets)) {}

  const std::vector<int>& offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  bool empty() const noexcept { return offsets_.empty(); }
  int operator[](std::size_t i) const { return offsets_.at(i); }

  bool contains(int offset) const {
    return std::binary_search(offsets_.begin(), offsets_.end(), offset);
  }

  /// Every offset moved by delta; throws if one would become negative.
  BarrierSet shifted(int delta) const {
    std::vector<int> out(offsets_);
    for (int& v : out) v += delta;
    return BarrierSet(std::move(out));
  }

  /// The set without its smallest offset.
  BarrierSet tail() const {
    if (offsets_.empty()) throw precondition_error("tail of an empty barrier set");
    return BarrierSet(std::vector<int>(offsets_.begin() + 1, offsets_.end()));
  }

  /// first followed by the current offsets.
  BarrierSet prepended(int first) const {
    std::vector<int> out{first};
    out.insert(out.end(), offsets_.begin(), offsets_.end());
    return BarrierSet(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(offsets_[i]);
    }
    return s;
  }

  /// Parses "1,4,7" (whitespace tolerated); the empty string is the empty set.
  static BarrierSet parse(std::string_view text) {
    std::vector<int> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i == text.size()) return {};
    while (true) {
      skip_ws();
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc{}) throw parse_error("bad barrier list: '" + std::string(text) + "'");
      i = static_cast<std::size_t>(ptr - text.data());
      out.push_back(v);
      skip_ws();
      if (i == text.size()) break;
      if (text[i] != ',') throw parse_error("bad barrier list: '" + std::string(text) + "'");
      ++i;
    }
    try {
      return BarrierSet(std::move(out));
    } catch (const precondition_error& e) {
      throw parse_error(e.what());
    }
  }

  friend auto operator<=>(const BarrierSet&, const BarrierSet&) = default;

 private:
  std::vector<int> offsets_;
};

}  // namespace tileforge
