#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace latkit {

// All arithmetic in the library is exact. Int is an arbitrary-precision
// integer; Rat is an arbitrary-precision rational kept in canonical form
// (positive denominator, gcd(num, den) = 1) by the backend.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy. Operations throw the most specific subtype; everything
// derives from Error so callers can catch broadly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };           // non-integer entry where integers required
struct SingularError : Error { using Error::Error; };
struct DefinitenessError : Error { using Error::Error; };
struct ContainmentError : Error { using Error::Error; };
struct NotAnIsometryError : Error { using Error::Error; };
struct NotAnAutomorphismError : Error { using Error::Error; };
struct RootNormError : Error { using Error::Error; };
struct ResourceError : Error { using Error::Error; };
struct PairingError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct LookupError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw DomainError("expected an integer, got " + q.str());
  return num(q);
}

// Floor of an exact rational.
inline Int floor_rat(const Rat& q) {
  Int n = num(q), d = den(q);
  Int f = n / d;
  if (n < 0 && f * d != n) --f;
  return f;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// Largest integer t with t*t <= n (n >= 0).
inline Int isqrt_floor(const Int& n) {
  if (n < 0) throw DomainError("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

// Parses "p/q" or a plain integer string.
Rat parse_rat(const std::string& s);

// Renders as "p/q", or just "p" when the value is integral.
std::string rat_str(const Rat& q);

}  // namespace latkit
