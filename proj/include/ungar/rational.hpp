#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "ungar/common.hpp"

// Probability parameter handling.  A probability written as a fraction
// ("1/2") selects exact rational arithmetic; a decimal ("0.5") selects double
// arithmetic.  GMP's mpq_class supplies the rational type.

namespace ungar {

using Rat = mpq_class;

template <class Real>
inline Real real_pow(const Real& base, int k) {
  Real out = 1;
  Real b = base;
  int e = k;
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

template <class Real>
inline void check_probability(const Real& p) {
  if (p <= 0 || p > 1) throw invalid_input_error("probability p must satisfy 0 < p <= 1");
}

struct Probability {
  std::variant<double, Rat> value;

  bool is_rational() const { return std::holds_alternative<Rat>(value); }
  double as_double() const {
    if (is_rational()) return std::get<Rat>(value).get_d();
    return std::get<double>(value);
  }
  const Rat& as_rational() const {
    if (!is_rational()) throw invalid_input_error("probability was not given as a fraction");
    return std::get<Rat>(value);
  }
};

// "a/b" -> rational mode; decimal literal -> double mode.
inline Probability parse_probability(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    Rat q;
    try {
      q = Rat(text);
    } catch (const std::invalid_argument&) {
      throw invalid_input_error("cannot parse probability fraction: " + text);
    }
    q.canonicalize();
    check_probability(q);
    return Probability{q};
  }
  std::size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw invalid_input_error("cannot parse probability: " + text);
  }
  if (pos != text.size()) throw invalid_input_error("cannot parse probability: " + text);
  check_probability(d);
  return Probability{d};
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace ungar
