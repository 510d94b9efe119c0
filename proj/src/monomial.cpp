#include "bpops/monomial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bpops {

ExponentSeq::ExponentSeq(std::vector<unsigned> entries) : entries_(std::move(entries)) {
  while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
}

ExponentSeq ExponentSeq::generator(std::size_t index, unsigned power) {
  if (index == 0) throw std::invalid_argument("generator indices start at 1");
  std::vector<unsigned> e(index, 0);
  e[index - 1] = power;
  return ExponentSeq(std::move(e));
}

unsigned long ExponentSeq::total_exponent() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0UL);
}

std::strong_ordering operator<=>(const ExponentSeq& a, const ExponentSeq& b) {
  for (std::size_t i = std::max(a.length(), b.length()); i >= 1; --i) {
    if (auto c = a.at(i) <=> b.at(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const ExponentSeq& a, const ExponentSeq& b) { return a <=> b; }

std::string ExponentSeq::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

ExponentSeq add(const ExponentSeq& a, const ExponentSeq& b) {
  std::vector<unsigned> e(std::max(a.length(), b.length()));
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.at(i + 1) + b.at(i + 1);
  return ExponentSeq(std::move(e));
}

ExponentSeq subtract(const ExponentSeq& a, const ExponentSeq& b) {
  std::vector<unsigned> e(a.length());
  for (std::size_t i = 1; i <= std::max(a.length(), b.length()); ++i) {
    if (b.at(i) > a.at(i)) throw std::invalid_argument("subtract: exponent would go negative");
    if (i <= e.size()) e[i - 1] = a.at(i) - b.at(i);
  }
  return ExponentSeq(std::move(e));
}

std::uint64_t generator_weight(std::size_t index, Prime p) {
  std::uint64_t w = 0, pk = 1;
  for (std::size_t i = 0; i < index; ++i) {
    w += pk;
    pk *= p.value();
  }
  return w;
}

std::uint64_t weight(const ExponentSeq& a, Prime p) {
  std::uint64_t w = 0;
  for (std::size_t i = 1; i <= a.length(); ++i) w += a.at(i) * generator_weight(i, p);
  return w;
}

std::size_t max_generator_index(std::uint64_t r, Prime p) {
  std::size_t i = 0;
  while (generator_weight(i + 1, p) <= r) ++i;
  return i;
}

std::vector<ExponentSeq> enumerate_weight(std::uint64_t r, std::size_t max_index, Prime p) {
  std::vector<ExponentSeq> out;
  std::vector<unsigned> e(max_index, 0);
  // Choose exponents from the top generator down; v_1 absorbs the remainder.
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t idx, std::uint64_t left) {
    if (idx == 1) {
      e[0] = static_cast<unsigned>(left);
      out.emplace_back(e);
      return;
    }
    const std::uint64_t w = generator_weight(idx, p);
    for (std::uint64_t k = 0; k * w <= left; ++k) {
      e[idx - 1] = static_cast<unsigned>(k);
      rec(idx - 1, left - k * w);
    }
    e[idx - 1] = 0;
  };
  if (max_index == 0) {
    if (r == 0) out.emplace_back();
    return out;
  }
  rec(max_index, r);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ExponentSeq> enumerate_weight(std::uint64_t r, Prime p) {
  return enumerate_weight(r, max_generator_index(r, p), p);
}

bool in_ideal(const ExponentSeq& a, std::size_t n) { return a.length() > n; }

}  // namespace bpops
