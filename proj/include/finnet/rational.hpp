#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace finnet {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

inline Rat rat_from_double(double x) { return Rat(x); }  // doubles are exact rationals

/// base^e for integer e (e may be negative; base must be nonzero then).
Rat rat_pow(const Rat& base, long e);

/// Parses "3/4", "-1/8", "7", or a decimal like "0.25" (exact).
Rat parse_rat(const std::string& s);

std::string rat_to_string(const Rat& x);

/// If x >= 0 is the square of a rational, returns it.
std::optional<Rat> rat_sqrt_exact(const Rat& x);

/// If x = 2^k for integer k, returns k.
std::optional<long> log2_exact(const Rat& x);

/// lcm of the denominators of a list of rationals (>= 1).
Int lcm_denominators(const RatVec& xs);

// --- small exact linear algebra (Gaussian elimination) ---

/// Rank of a rational matrix.
int rat_rank(RatMat a);

/// Solves the square system A x = b; nullopt if A is singular.
std::optional<RatVec> rat_solve(RatMat a, RatVec b);

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

}  // namespace finnet
