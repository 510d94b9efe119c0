#include "bpops/poly.hpp"

#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bpops {

int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

void append_factors(std::ostringstream& os, const char* name, const ExponentSeq& e, bool& first) {
  for (std::size_t i = 1; i <= e.length(); ++i) {
    if (e.at(i) == 0) continue;
    if (!first) os << "·";
    first = false;
    os << name << '_' << i;
    if (e.at(i) > 1) os << '^' << e.at(i);
  }
}

}  // namespace

std::string MonomialKey::to_string() const {
  std::ostringstream os;
  bool first = true;
  append_factors(os, "v", v, first);
  append_factors(os, "t", t, first);
  append_factors(os, "m", m, first);
  if (first) os << '1';
  return os.str();
}

MonomialKey operator*(const MonomialKey& a, const MonomialKey& b) {
  return {add(a.v, b.v), add(a.t, b.t), add(a.m, b.m)};
}

GradedPoly GradedPoly::constant(const Rational& c, Prime p) { return monomial({}, c, p); }

GradedPoly GradedPoly::monomial(MonomialKey key, const Rational& c, Prime p) {
  GradedPoly out(p);
  out.add_term(key, c);
  return out;
}

void GradedPoly::add_term(const MonomialKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  // Callers may pass an unreduced fraction; GMP arithmetic needs canonical operands.
  if (inserted) {
    it->second.canonicalize();
    return;
  }
  Rational reduced(c);
  reduced.canonicalize();
  it->second += reduced;
  if (it->second == 0) terms_.erase(it);
}

Rational GradedPoly::coefficient(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::uint64_t> GradedPoly::weight() const {
  if (terms_.empty()) return std::nullopt;
  const std::uint64_t w = terms_.begin()->first.weight(prime_);
  for (const auto& [key, c] : terms_)
    if (key.weight(prime_) != w) throw std::logic_error("inhomogeneous polynomial: " + to_string());
  return w;
}

bool GradedPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const std::uint64_t w = terms_.begin()->first.weight(prime_);
  for (const auto& [key, c] : terms_)
    if (key.weight(prime_) != w) return false;
  return true;
}

bool GradedPoly::involves_m() const {
  for (const auto& [key, c] : terms_)
    if (!key.m.empty()) return true;
  return false;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return multiply(a, b, Execution::serial); }

GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, Execution exec) {
  if (!(a.prime() == b.prime())) throw std::invalid_argument("polynomials over different primes");
  GradedPoly out(a.prime());
  if (exec == Execution::serial || a.size() < 2) {
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) out.add_term(ka * kb, ca * cb);
    return out;
  }

  std::vector<const GradedPoly::Terms::value_type*> left;
  left.reserve(a.size());
  for (const auto& term : a.terms()) left.push_back(&term);
  const int threads = available_threads();
  std::vector<GradedPoly> partial(static_cast<std::size_t>(threads), GradedPoly(a.prime()));
  const long n = static_cast<long>(left.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) {
#ifdef _OPENMP
    GradedPoly& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
#else
    GradedPoly& acc = partial[0];
#endif
    const auto& [ka, ca] = *left[static_cast<std::size_t>(i)];
    for (const auto& [kb, cb] : b.terms()) acc.add_term(ka * kb, ca * cb);
  }
  for (const auto& part : partial) out += part;
  return out;
}

GradedPoly power(const GradedPoly& a, unsigned long e, Execution exec) {
  GradedPoly result = GradedPoly::constant(1, a.prime());
  GradedPoly base = a;
  while (e) {
    if (e & 1) result = multiply(result, base, exec);
    e >>= 1;
    if (e) base = multiply(base, base, exec);
  }
  return result;
}

GradedPoly GradedPoly::substitute_m(std::span<const GradedPoly> m_values) const {
  GradedPoly out(prime_);
  std::map<std::pair<std::size_t, unsigned>, GradedPoly> powers;
  for (const auto& [key, c] : terms_) {
    GradedPoly term = monomial({key.v, key.t, {}}, c, prime_);
    for (std::size_t i = 1; i <= key.m.length(); ++i) {
      const unsigned e = key.m.at(i);
      if (e == 0) continue;
      if (i > m_values.size()) throw std::out_of_range("substitute_m: no value for m_" + std::to_string(i));
      auto it = powers.find({i, e});
      if (it == powers.end()) it = powers.emplace(std::pair{i, e}, power(m_values[i - 1], e)).first;
      term = term * it->second;
    }
    out += term;
  }
  return out;
}

GradedPoly GradedPoly::coefficient_of_t(const ExponentSeq& beta) const {
  GradedPoly out(prime_);
  // Terms are ordered by t first, so the β-block is contiguous.
  for (auto it = terms_.lower_bound(MonomialKey{{}, beta, {}}); it != terms_.end() && it->first.t == beta; ++it)
    out.add_term({it->first.v, {}, it->first.m}, it->second);
  return out;
}

GradedPoly GradedPoly::set_t_zero() const { return coefficient_of_t(ExponentSeq{}); }

std::map<ExponentSeq, Rational> GradedPoly::pure_t_part() const {
  std::map<ExponentSeq, Rational> out;
  for (const auto& [key, c] : terms_)
    if (key.v.empty() && key.m.empty()) out.emplace(key.t, c);
  return out;
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    Rational mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    const bool bare = key == MonomialKey{};
    if (mag != 1 || bare) {
      os << mag.get_str();
      if (!bare) os << "·";
    }
    if (!bare) os << key.to_string();
  }
  return os.str();
}

IntegralityReport check_integrality(const GradedPoly& poly) {
  IntegralityReport report;
  for (const auto& [key, c] : poly.terms())
    if (!is_p_integral(c, poly.prime())) {
      report.integral = false;
      report.offenders.emplace_back(key, c);
    }
  return report;
}

}  // namespace bpops
