#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "schober/error.hpp"
#include "schober/laurent.hpp"

namespace schober {

/// sigma_index^sign, sign = +1 or -1. Indices are arbitrary integers, so a word
/// lives in the finitary infinite braid group.
struct BraidLetter {
  std::int64_t index = 0;
  int sign = 1;
  friend auto operator<=>(const BraidLetter&, const BraidLetter&) = default;
};
using BraidWord = std::vector<BraidLetter>;

inline BraidWord inverse(const BraidWord& w) {
  BraidWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

inline BraidWord operator*(BraidWord a, const BraidWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Parses whitespace-separated nonzero integers: k means sigma_k, -k means sigma_k^{-1}.
inline BraidWord parse_braid_word(std::string_view text) {
  BraidWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    std::int64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad braid letter '" + tok + "'");
    }
    if (v == 0) throw Error(ErrorCode::Parse, "braid letter 0 is not expressible in signed form");
    w.push_back(v > 0 ? BraidLetter{v, 1} : BraidLetter{-v, -1});
  }
  return w;
}

inline std::string to_string(const BraidWord& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += "s" + std::to_string(l.index) + (l.sign < 0 ? "^-1" : "");
  }
  return s.empty() ? "1" : s;
}

/// x_gen^sign in a free group on integer-indexed generators.
struct FreeLetter {
  std::int64_t gen = 0;
  int sign = 1;
  friend auto operator<=>(const FreeLetter&, const FreeLetter&) = default;
};
using FreeWord = std::vector<FreeLetter>;

namespace detail {
inline void push_reduced(FreeWord& w, const FreeLetter& l) {
  if (!w.empty() && w.back().gen == l.gen && w.back().sign == -l.sign) {
    w.pop_back();
  } else {
    w.push_back(l);
  }
}
}  // namespace detail

inline FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (const auto& l : w) detail::push_reduced(out, l);
  return out;
}

inline FreeWord inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

/// Endomorphism of the free group, stored by its images on the generators it
/// moves. Images are kept freely reduced.
class FreeGroupEndo {
 public:
  FreeWord image(std::int64_t gen) const {
    auto it = images_.find(gen);
    return it == images_.end() ? FreeWord{{gen, 1}} : it->second;
  }

  void set_image(std::int64_t gen, FreeWord w) {
    w = free_reduce(w);
    if (w.size() == 1 && w[0] == FreeLetter{gen, 1}) {
      images_.erase(gen);
    } else {
      images_[gen] = std::move(w);
    }
  }

  FreeWord apply(const FreeWord& w) const {
    FreeWord out;
    for (const auto& l : w) {
      FreeWord img = image(l.gen);
      if (l.sign < 0) img = inverse(img);
      for (const auto& x : img) detail::push_reduced(out, x);
    }
    return out;
  }

  /// Generators whose image differs from themselves.
  const std::map<std::int64_t, FreeWord>& moved() const noexcept { return images_; }
  bool is_identity() const noexcept { return images_.empty(); }

  /// (*this) o other
  FreeGroupEndo compose(const FreeGroupEndo& other) const {
    FreeGroupEndo out = *this;
    for (const auto& [gen, img] : other.images_) out.set_image(gen, apply(img));
    return out;
  }

  friend bool operator==(const FreeGroupEndo&, const FreeGroupEndo&) = default;

 private:
  std::map<std::int64_t, FreeWord> images_;
};

/// Artin action of one generator: sigma_i sends x_i -> x_i x_{i+1} x_i^{-1},
/// x_{i+1} -> x_i; the inverse sends x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}.
inline FreeGroupEndo artin_generator(const BraidLetter& l) {
  const std::int64_t i = l.index;
  const std::int64_t j = checked_add(i, 1);
  FreeGroupEndo e;
  if (l.sign > 0) {
    e.set_image(i, {{i, 1}, {j, 1}, {i, -1}});
    e.set_image(j, {{i, 1}});
  } else {
    e.set_image(i, {{j, 1}});
    e.set_image(j, {{j, -1}, {i, 1}, {j, 1}});
  }
  return e;
}

/// act(l_1 ... l_k) = act(l_1) o ... o act(l_k), so act(w1 w2) = act(w1) o act(w2).
inline FreeGroupEndo braid_act_free(const BraidWord& w) {
  FreeGroupEndo acc;
  for (const auto& l : w) {
    if (l.sign != 1 && l.sign != -1) throw Error(ErrorCode::Parse, "braid letter sign must be +-1");
    const std::int64_t i = l.index;
    const std::int64_t j = checked_add(i, 1);
    const FreeGroupEndo g = artin_generator(l);
    FreeWord new_i = acc.apply(g.image(i));
    FreeWord new_j = acc.apply(g.image(j));
    acc.set_image(i, std::move(new_i));
    acc.set_image(j, std::move(new_j));
  }
  return acc;
}

/// Word problem in the (finitary) braid group via faithfulness of the Artin action.
inline bool braid_equal(const BraidWord& a, const BraidWord& b) { return braid_act_free(a) == braid_act_free(b); }

}  // namespace schober
